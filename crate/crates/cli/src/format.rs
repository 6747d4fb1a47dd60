//! JSON input files. Scalars are always decimal strings.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use hochschild_core::extensions::ExtensionPresentation;
use hochschild_core::koszul::PresentedModule;
use hochschild_core::{
    Bimodule, Error, FiniteAlgebra, Integers, Matrix, PrimeField, Rationals, Result, Ring, ScalarRing,
};
use serde::{Deserialize, Serialize};

pub type Rows = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalars {
    Named(String),
    Prime {
        #[serde(rename = "Fp")]
        p: u64,
    },
}

impl Scalars {
    pub fn ring(&self) -> Result<ScalarRing> {
        match self {
            Scalars::Named(s) if s == "Z" => Ok(ScalarRing::Integers),
            Scalars::Named(s) if s == "Q" => Ok(ScalarRing::Rationals),
            Scalars::Named(s) => {
                Err(Error::Parse(format!("unknown scalars {s:?}, expected \"Z\", \"Q\" or {{\"Fp\": p}}")))
            }
            Scalars::Prime { p } => Ok(ScalarRing::PrimeField(*p)),
        }
    }

    pub fn of(ring: ScalarRing) -> Self {
        match ring {
            ScalarRing::Integers => Scalars::Named("Z".into()),
            ScalarRing::Rationals => Scalars::Named("Q".into()),
            ScalarRing::PrimeField(p) => Scalars::Prime { p },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub scalars: Scalars,
    pub rank: usize,
    pub basis: Vec<String>,
    pub unit: Vec<String>,
    /// `mul[i][j][k]`: coefficient of `e_k` in `e_i e_j`.
    pub mul: Vec<Vec<Vec<String>>>,
}

/// An algebra over one of the supported rings.
#[derive(Clone, Debug)]
pub enum AnyAlgebra {
    Z(Arc<FiniteAlgebra<Integers>>),
    Q(Arc<FiniteAlgebra<Rationals>>),
    Fp(Arc<FiniteAlgebra<PrimeField>>),
}

/// Runs a function generic over the coefficient ring on an [`AnyAlgebra`].
#[macro_export]
macro_rules! with_algebra {
    ($any:expr, $f:ident ( $($arg:expr),* )) => {
        match $any {
            $crate::format::AnyAlgebra::Z(a) => $f(a, $($arg),*),
            $crate::format::AnyAlgebra::Q(a) => $f(a, $($arg),*),
            $crate::format::AnyAlgebra::Fp(a) => $f(a, $($arg),*),
        }
    };
}

fn parse_all<R: Ring>(ring: &R, v: &[String]) -> Result<Vec<R::Elem>> {
    v.iter().map(|s| ring.parse(s)).collect()
}

pub fn parse_matrix<R: Ring>(ring: &R, rows: &Rows, n_rows: usize, n_cols: usize, what: &str) -> Result<Matrix<R>> {
    if rows.len() != n_rows || rows.iter().any(|r| r.len() != n_cols) {
        return Err(Error::Shape(format!("{what} must be {n_rows}x{n_cols}")));
    }
    let parsed = rows.iter().map(|r| parse_all(ring, r)).collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(ring, parsed, n_cols)
}

impl AlgebraFile {
    pub fn to_algebra<R: Ring>(&self, ring: &R) -> Result<FiniteAlgebra<R>> {
        let d = self.rank;
        if self.basis.len() != d || self.unit.len() != d {
            return Err(Error::Shape(format!("basis and unit must have {d} entries")));
        }
        if self.mul.len() != d || self.mul.iter().any(|m| m.len() != d || m.iter().any(|v| v.len() != d)) {
            return Err(Error::Shape(format!("mul must be {d}x{d}x{d}")));
        }
        let unit = parse_all(ring, &self.unit)?;
        let mut mul = Vec::with_capacity(d * d * d);
        for row in &self.mul {
            for v in row {
                mul.extend(parse_all(ring, v)?);
            }
        }
        FiniteAlgebra::new(ring, self.basis.clone(), unit, mul)
    }

    pub fn load(&self) -> Result<AnyAlgebra> {
        Ok(match self.scalars.ring()? {
            ScalarRing::Integers => AnyAlgebra::Z(Arc::new(self.to_algebra(&Integers)?)),
            ScalarRing::Rationals => AnyAlgebra::Q(Arc::new(self.to_algebra(&Rationals)?)),
            ScalarRing::PrimeField(p) => AnyAlgebra::Fp(Arc::new(self.to_algebra(&PrimeField::new(p)?)?)),
        })
    }

    pub fn from_algebra<R: Ring>(a: &FiniteAlgebra<R>) -> Self {
        let ring = a.ring();
        let d = a.rank();
        let fmt = |v: &[R::Elem]| v.iter().map(|x| ring.format(x)).collect::<Vec<_>>();
        Self {
            scalars: Scalars::of(ring.kind()),
            rank: d,
            basis: a.names().to_vec(),
            unit: fmt(a.unit()),
            mul: (0..d).map(|i| (0..d).map(|j| fmt(a.product(i, j))).collect()).collect(),
        }
    }
}

/// The `algebra` field of a bimodule file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Path(String),
    Inline(AlgebraFile),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleFile {
    pub algebra: AlgebraRef,
    pub rank: usize,
    pub left: Vec<Rows>,
    pub right: Vec<Rows>,
}

impl BimoduleFile {
    /// The referenced algebra, with relative paths taken from `base`.
    pub fn algebra_file(&self, base: &Path) -> Result<AlgebraFile> {
        match &self.algebra {
            AlgebraRef::Inline(a) => Ok(a.clone()),
            AlgebraRef::Path(p) => read_json(&base.join(p)),
        }
    }

    pub fn to_bimodule<R: Ring>(&self, algebra: &Arc<FiniteAlgebra<R>>) -> Result<Bimodule<R>> {
        let ring = algebra.ring();
        let (d, m) = (algebra.rank(), self.rank);
        if self.left.len() != d || self.right.len() != d {
            return Err(Error::Shape(format!("need {d} left and {d} right action matrices")));
        }
        let parse = |ms: &[Rows], side: &str| {
            ms.iter()
                .enumerate()
                .map(|(i, r)| parse_matrix(ring, r, m, m, &format!("{side} action of e{i}")))
                .collect::<Result<Vec<_>>>()
        };
        Bimodule::new(algebra.clone(), parse(&self.left, "left")?, parse(&self.right, "right")?)
    }

    pub fn from_bimodule<R: Ring>(module: &Bimodule<R>, algebra: AlgebraRef) -> Self {
        Self {
            algebra,
            rank: module.rank(),
            left: module.lefts().iter().map(Matrix::to_strings).collect(),
            right: module.rights().iter().map(Matrix::to_strings).collect(),
        }
    }
}

/// A 2-cochain `A ⊗ A → M`: `rank M` rows, column `i·d + j` for `(eᵢ, eⱼ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainFile {
    pub cochain: Rows,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionFile {
    pub total: AlgebraFile,
    /// `d × rank B`
    pub projection: Rows,
    /// `rank B × rank M`
    pub inclusion: Rows,
    /// `rank B × d`
    pub section: Rows,
}

impl ExtensionFile {
    pub fn to_extension<R: Ring>(&self, algebra: &Arc<FiniteAlgebra<R>>) -> Result<ExtensionPresentation<R>> {
        let ring = algebra.ring();
        if self.total.scalars.ring()? != ring.kind() {
            return Err(Error::RingMismatch {
                expected: ring.kind().to_string(),
                found: format!("{:?}", self.total.scalars),
            });
        }
        let total = Arc::new(self.total.to_algebra(ring)?);
        let (d, n) = (algebra.rank(), total.rank());
        let m = self.inclusion.first().map_or(0, Vec::len);
        ExtensionPresentation::new(
            algebra,
            total,
            parse_matrix(ring, &self.projection, d, n, "projection")?,
            parse_matrix(ring, &self.inclusion, n, m, "inclusion")?,
            parse_matrix(ring, &self.section, n, d, "section")?,
        )
    }

    pub fn from_extension<R: Ring>(e: &ExtensionPresentation<R>) -> Self {
        Self {
            total: AlgebraFile::from_algebra(&e.total),
            projection: e.projection.to_strings(),
            inclusion: e.inclusion.to_strings(),
            section: e.section.to_strings(),
        }
    }
}

/// `k^generators / (columns of relations)` with the algebra acting on the generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub generators: usize,
    pub action: Vec<Rows>,
    /// `generators` rows, one column per relation.
    #[serde(default)]
    pub relations: Rows,
}

impl ModuleFile {
    pub fn to_module<R: Ring>(&self, algebra: &Arc<FiniteAlgebra<R>>) -> Result<PresentedModule<R>> {
        let ring = algebra.ring();
        let g = self.generators;
        if self.action.len() != algebra.rank() {
            return Err(Error::Shape(format!("need {} action matrices", algebra.rank())));
        }
        let action = self
            .action
            .iter()
            .enumerate()
            .map(|(i, r)| parse_matrix(ring, r, g, g, &format!("action of e{i}")))
            .collect::<Result<Vec<_>>>()?;
        let cols = self.relations.first().map_or(0, Vec::len);
        let relations = if self.relations.is_empty() {
            Matrix::zeros(ring, g, 0)
        } else {
            parse_matrix(ring, &self.relations, g, cols, "relations")?
        };
        PresentedModule::new(algebra.clone(), action, relations)
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Pretty JSON with a trailing newline, the layout of the bundled fixtures.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn parent_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

/// Parses `"1,0,-1/2"` as an algebra element.
pub fn parse_element<R: Ring>(algebra: &FiniteAlgebra<R>, text: &str) -> Result<Vec<R::Elem>> {
    let ring = algebra.ring();
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != algebra.rank() {
        return Err(Error::Shape(format!("element {text:?} needs {} coordinates", algebra.rank())));
    }
    parts.iter().map(|p| ring.parse(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use hochschild_core::catalog;

    #[test]
    fn scalars_round_trip() {
        for text in ["\"Z\"", "\"Q\"", "{\"Fp\":5}"] {
            let s: Scalars = serde_json::from_str(text).unwrap();
            assert_eq!(serde_json::to_string(&s).unwrap(), text);
        }
        assert!(Scalars::Named("R".into()).ring().is_err());
    }

    #[test]
    fn algebra_file_round_trip() {
        let a = catalog::truncated_polynomial(&Rationals, 3);
        let file = AlgebraFile::from_algebra(&a);
        assert_eq!(file.to_algebra(&Rationals).unwrap(), a);
        let text = to_pretty(&file);
        let back: AlgebraFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, file);
    }

    #[test]
    fn bad_shape_is_reported() {
        let mut file = AlgebraFile::from_algebra(&catalog::scalars(&Integers));
        file.unit.push("0".into());
        assert!(matches!(file.to_algebra(&Integers), Err(Error::Shape(_))));
    }
}
