use std::path::{Path, PathBuf};
use std::sync::Arc;

use hochschild_core::extensions::{cocycle_failure, cocycles_cohomologous, enumerate_extension_classes, lift_exists};
use hochschild_core::hochschild::{
    center, derivations, hh1_report, hh_report, hochschild_homology, inner_derivations, prefer_normalized,
};
use hochschild_core::koszul::{
    finite_koszul_tor, global_dimension, graded_koszul_tor, regular_sequence_check, BoundReport, PresentedModule,
};
use hochschild_core::linalg::rank;
use hochschild_core::projectivity::{
    hcdim_scan, is_quasi_free, probe_module, separability_idempotent, CohomologyWitness, ProjectivityCertificate,
};
use hochschild_core::{
    Bimodule, Error, FiniteAlgebra, Integers, KModuleInvariants, Matrix, PrimeField, Rationals, Result, Ring,
    ScalarRing,
};
use serde_json::{json, Value};

use crate::fixtures;
use crate::format::{
    parent_dir, parse_element, parse_matrix, read_json, AlgebraFile, AnyAlgebra, BimoduleFile, CochainFile,
    ExtensionFile, ModuleFile,
};
use crate::with_algebra;

/// A failed command: exit code plus the JSON error object.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub stage: &'static str,
    pub witness: String,
}

impl Failure {
    pub fn new(stage: &'static str, err: Error) -> Self {
        let code = match err {
            Error::SizeGuard { .. } | Error::EnumerationTooLarge { .. } => 3,
            Error::Inconsistent(_) => 4,
            _ => 2,
        };
        Self { code, stage, witness: err.to_string() }
    }

    pub fn to_json(&self) -> Value {
        json!({ "stage": self.stage, "witness": self.witness })
    }
}

pub type Outcome = std::result::Result<Value, Failure>;

fn at<T>(stage: &'static str, r: Result<T>) -> std::result::Result<T, Failure> {
    r.map_err(|e| Failure::new(stage, e))
}

pub fn load_algebra(path: &Path) -> std::result::Result<AnyAlgebra, Failure> {
    let file: AlgebraFile = at("parse", read_json(path))?;
    at("validate", file.load())
}

pub fn invariants_json(inv: &KModuleInvariants) -> Value {
    json!({
        "free_rank": inv.free_rank,
        "torsion": inv.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        "display": inv.to_string(),
    })
}

fn vector_json<R: Ring>(ring: &R, v: &[R::Elem]) -> Value {
    json!(v.iter().map(|x| ring.format(x)).collect::<Vec<_>>())
}

/// A bimodule argument: a JSON file or one of the built-in names.
#[derive(Clone, Debug)]
pub enum BimoduleArg {
    Named(String),
    File(PathBuf),
}

impl BimoduleArg {
    pub fn parse(text: &str) -> Self {
        match text {
            "regular" | "A" => BimoduleArg::Named("A".into()),
            "enveloping" | "A^e" => BimoduleArg::Named("A^e".into()),
            "hom" | "Hom(A,A)" => BimoduleArg::Named("Hom(A,A)".into()),
            "zero" | "Omega^1" | "Omega^2" => BimoduleArg::Named(text.into()),
            _ => BimoduleArg::File(PathBuf::from(text)),
        }
    }

    fn load<R: Ring>(&self, algebra: &Arc<FiniteAlgebra<R>>) -> Result<Bimodule<R>> {
        match self {
            BimoduleArg::Named(n) if n == "zero" => Ok(Bimodule::zero(algebra)),
            BimoduleArg::Named(n) => probe_module(algebra, n),
            BimoduleArg::File(path) => {
                let file: BimoduleFile = read_json(path)?;
                let own = file.algebra_file(&parent_dir(path))?.to_algebra(algebra.ring())?;
                if own != **algebra {
                    return Err(Error::Shape(format!("{} is a bimodule over a different algebra", path.display())));
                }
                file.to_bimodule(algebra)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Complex {
    /// Normalized when the algebra has (or can be moved to) a unital basis.
    Auto,
    Normalized,
    Unnormalized,
}

#[derive(Clone, Debug)]
pub struct HhArgs {
    pub bimodule: Option<BimoduleArg>,
    pub degree: usize,
    pub complex: Complex,
    pub homology: bool,
    pub representatives: bool,
}

pub fn hh(algebra: &AnyAlgebra, args: &HhArgs) -> Outcome {
    with_algebra!(algebra, hh_generic(args))
}

fn hh_generic<R: Ring>(algebra: &Arc<FiniteAlgebra<R>>, args: &HhArgs) -> Outcome {
    let module = match &args.bimodule {
        None => Bimodule::regular(algebra),
        Some(b) => at("validate", b.load(algebra))?,
    };
    if args.homology {
        let inv = at("compute", hochschild_homology(&module, args.degree))?;
        let mut out = invariants_json(&inv);
        out["degree"] = json!(args.degree);
        out["homology"] = json!(true);
        return Ok(out);
    }
    let (module, normalized) = match args.complex {
        Complex::Unnormalized => (module, false),
        Complex::Auto => at("compute", prefer_normalized(&module))?,
        Complex::Normalized => {
            let (m, ok) = at("compute", prefer_normalized(&module))?;
            if !ok {
                return Err(Failure::new("validate", Error::UnitNotUnimodular));
            }
            (m, true)
        }
    };
    let report = at("compute", hh_report(&module, args.degree, normalized, args.representatives))?;
    let mut out = invariants_json(&report.invariants);
    out["degree"] = json!(args.degree);
    out["normalized"] = json!(normalized);
    if let Some(reps) = report.representatives {
        out["basis"] = json!(module.algebra().names());
        out["representatives"] = json!(reps.iter().map(|c| c.values.to_strings()).collect::<Vec<_>>());
    }
    Ok(out)
}

fn certificate_json<R: Ring>(c: &ProjectivityCertificate<R>) -> Value {
    json!({
        "level": c.level,
        "normalized": c.normalized,
        "projective": c.is_projective(),
        "section": c.section.as_ref().map(Matrix::to_strings),
        "obstruction": c.obstruction,
    })
}

fn witness_json<R: Ring>(w: &CohomologyWitness<R>) -> Value {
    json!({
        "probe": w.probe,
        "degree": w.degree,
        "invariants": invariants_json(&w.invariants),
        "cocycle": w.cocycle.as_ref().map(Matrix::to_strings),
    })
}

pub fn analyze(algebra: &AnyAlgebra, cap: usize, seed: u64) -> Outcome {
    with_algebra!(algebra, analyze_generic(cap, seed))
}

fn analyze_generic<R: Ring>(algebra: &Arc<FiniteAlgebra<R>>, cap: usize, seed: u64) -> Outcome {
    let ring = algebra.ring();
    let module = Bimodule::regular(algebra);
    let hh1 = at("compute", hh1_report(&module))?;
    let separability = match at("compute", separability_idempotent(algebra))? {
        Some(e) => json!({ "separable": true, "idempotent": vector_json(ring, &e) }),
        None => json!({ "separable": false }),
    };
    let qf = at("compute", is_quasi_free(algebra, seed))?;
    let scan = at("compute", hcdim_scan(algebra, cap, &[]))?;
    Ok(json!({
        "scalars": ring.kind().to_string(),
        "rank": algebra.rank(),
        "center_dim": rank(&center(&module)),
        "der_dim": rank(&derivations(&module)),
        "inn_dim": rank(&inner_derivations(&module)),
        "hh1": invariants_json(&hh1.invariants),
        "separability": separability,
        "quasi_free": {
            "quasi_free": qf.quasi_free,
            "lifts_checked": qf.lifts_checked,
            "certificate": certificate_json(&qf.certificate),
            "witness": qf.witness.as_ref().map(witness_json),
            "note": (!qf.quasi_free && qf.witness.is_none()).then_some("no witness found"),
        },
        "hcdim": {
            "cap": cap,
            "proved_upper": match scan.upper {
                Some(u) => json!(u),
                None => json!(format!(">{cap}")),
            },
            "witnessed_lower": scan.lower,
            "lower_witness": scan.lower_witness.as_ref().map(witness_json),
            "skipped": scan.skipped.iter().map(|(p, n)| json!({ "probe": p, "degree": n })).collect::<Vec<_>>(),
        },
    }))
}

#[derive(Clone, Debug)]
pub enum ExtensionMode {
    Enumerate,
    Class(PathBuf),
    Lift(PathBuf),
}

pub fn extensions(algebra: &AnyAlgebra, bimodule: Option<&BimoduleArg>, mode: &ExtensionMode) -> Outcome {
    with_algebra!(algebra, extensions_generic(bimodule, mode))
}

fn extensions_generic<R: Ring>(
    algebra: &Arc<FiniteAlgebra<R>>,
    bimodule: Option<&BimoduleArg>,
    mode: &ExtensionMode,
) -> Outcome {
    let ring = algebra.ring();
    let module = || match bimodule {
        Some(b) => at("validate", b.load(algebra)),
        None => Ok(Bimodule::regular(algebra)),
    };
    match mode {
        ExtensionMode::Enumerate => {
            let classes = at("compute", enumerate_extension_classes(&module()?))?;
            Ok(json!({
                "classes": classes.len(),
                "representatives": classes.iter().map(Matrix::to_strings).collect::<Vec<_>>(),
            }))
        }
        ExtensionMode::Class(path) => {
            let module = module()?;
            let file: CochainFile = at("parse", read_json(path))?;
            let d = algebra.rank();
            let b = at("parse", parse_matrix(ring, &file.cochain, module.rank(), d * d, "cochain"))?;
            if let Some((i, j, l)) = at("compute", cocycle_failure(&module, &b))? {
                return Err(Failure::new("validate", Error::NotACocycle { i, j, l }));
            }
            let zero = Matrix::zeros(ring, module.rank(), d * d);
            let eq = at("compute", cocycles_cohomologous(&module, &b, &zero))?;
            Ok(json!({
                "cocycle": true,
                "cohomologous_to_zero": eq.is_some(),
                "zeta": eq.map(|e| e.zeta.to_strings()),
            }))
        }
        ExtensionMode::Lift(path) => {
            let file: ExtensionFile = at("parse", read_json(path))?;
            let ext = at("validate", file.to_extension(algebra))?;
            if let Some(b) = bimodule {
                let given = at("validate", b.load(algebra))?;
                if given.rank() != ext.module.rank() {
                    return Err(Failure::new(
                        "validate",
                        Error::Shape(format!(
                            "extension ideal has rank {}, bimodule {}",
                            ext.module.rank(),
                            given.rank()
                        )),
                    ));
                }
            }
            let class = at("compute", ext.class_from_section())?;
            let lift = at("compute", lift_exists(&ext))?;
            Ok(json!({
                "lift": lift.is_some(),
                "section": lift.as_ref().map(Matrix::to_strings),
                "class": class.to_strings(),
            }))
        }
    }
}

fn tor_json(tor: &[KModuleInvariants]) -> Value {
    json!(tor.iter().map(invariants_json).collect::<Vec<_>>())
}

pub fn koszul_graded(ring: ScalarRing, vars: usize, cap: usize) -> Outcome {
    let report = match ring {
        ScalarRing::Integers => graded_koszul_tor(&Integers, vars, cap),
        ScalarRing::Rationals => graded_koszul_tor(&Rationals, vars, cap),
        ScalarRing::PrimeField(p) => graded_koszul_tor(&at("validate", PrimeField::new(p))?, vars, cap),
    };
    let report = at("compute", report)?;
    Ok(json!({
        "ring": ring.to_string(),
        "variables": report.variables,
        "cap": report.cap,
        "tor": tor_json(&report.tor),
        "ranks": report.tor.iter().map(|t| t.free_rank).collect::<Vec<_>>(),
        "resolution_verified": report.resolution_verified,
        "flat_dimension": report.flat_dimension,
    }))
}

#[derive(Clone, Debug)]
pub struct FiniteKoszulArgs {
    /// Elements separated by `;`, coordinates by `,`.
    pub sequence: String,
    pub module: Option<PathBuf>,
    /// Coefficients `A/(elements)`, same syntax as `sequence`.
    pub quotient: Option<String>,
}

fn parse_elements<R: Ring>(algebra: &FiniteAlgebra<R>, text: &str) -> Result<Vec<Vec<R::Elem>>> {
    text.split(';').map(|e| parse_element(algebra, e.trim())).collect()
}

pub fn koszul_finite(algebra: &AnyAlgebra, args: &FiniteKoszulArgs) -> Outcome {
    with_algebra!(algebra, koszul_finite_generic(args))
}

fn koszul_finite_generic<R: Ring>(algebra: &Arc<FiniteAlgebra<R>>, args: &FiniteKoszulArgs) -> Outcome {
    let sequence = at("parse", parse_elements(algebra, &args.sequence))?;
    let module = match (&args.module, &args.quotient) {
        (Some(_), Some(_)) => {
            return Err(Failure::new("parse", Error::Parse("give at most one of --module and --quotient".into())))
        }
        (Some(path), None) => {
            let file: ModuleFile = at("parse", read_json(path))?;
            at("validate", file.to_module(algebra))?
        }
        (None, Some(q)) => {
            let ideal = at("parse", parse_elements(algebra, q))?;
            at("validate", PresentedModule::cyclic_quotient(algebra, &ideal))?
        }
        (None, None) => at("validate", PresentedModule::regular(algebra))?,
    };
    let on_algebra =
        at("compute", regular_sequence_check(&at("validate", PresentedModule::regular(algebra))?, &sequence))?;
    let mut out = json!({
        "regular": on_algebra.is_none(),
        "fails_at": on_algebra,
        "module": invariants_json(&module.invariants()),
    });
    if on_algebra.is_none() {
        let report = at("compute", finite_koszul_tor(algebra, &sequence, &module))?;
        out["tor"] = tor_json(&report.tor);
        out["flat_dimension"] = json!(report.flat_dimension);
    }
    Ok(out)
}

pub fn bound(fd: usize, dk: Option<usize>, fdk: usize, ring: Option<ScalarRing>) -> Outcome {
    let dk = match (dk, ring) {
        (Some(d), _) => d,
        (None, Some(r)) => global_dimension(r),
        (None, None) => return Err(Failure::new("parse", Error::Parse("give --Dk or --ring".into()))),
    };
    let report = BoundReport::new(fd, dk, fdk);
    Ok(json!({
        "flat_dimension": report.flat_dimension,
        "global_dimension": report.global_dimension,
        "flat_dimension_over_k": report.flat_dimension_over_k,
        "lower": report.lower,
        "bound": format!("HCdim ≥ {}", report.lower),
        "not_quasi_free": report.rules_out_quasi_free(),
        "report": report.to_string(),
    }))
}

pub fn fixtures(dir: &Path, check: bool) -> Outcome {
    if check {
        let stale = at("fixtures", fixtures::check_all(dir))?;
        if !stale.is_empty() {
            return Err(Failure::new("fixtures", Error::Parse(format!("stale fixtures: {}", stale.join(", ")))));
        }
        return Ok(json!({ "checked": at("fixtures", fixtures::corpus())?.len(), "stale": stale }));
    }
    Ok(json!({ "written": at("fixtures", fixtures::write_all(dir))? }))
}

/// Parses `Z`, `Q`, `F5` or `Fp:5`.
pub fn parse_ring(text: &str) -> Result<ScalarRing> {
    match text {
        "Z" => Ok(ScalarRing::Integers),
        "Q" => Ok(ScalarRing::Rationals),
        _ => {
            let p = text.strip_prefix("Fp:").or_else(|| text.strip_prefix('F'));
            let p =
                p.and_then(|p| p.parse::<u64>().ok()).ok_or_else(|| Error::Parse(format!("unknown ring {text:?}")))?;
            PrimeField::new(p)?;
            Ok(ScalarRing::PrimeField(p))
        }
    }
}
