//! The bundled fixture corpus, regenerated from the catalog.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use hochschild_core::extensions::ExtensionPresentation;
use hochschild_core::{catalog, Bimodule, Error, Integers, Matrix, PrimeField, Rationals, Result, Ring};

use crate::format::{to_pretty, AlgebraFile, AlgebraRef, BimoduleFile, CochainFile, ExtensionFile, ModuleFile};

fn algebra<R: Ring>(a: &hochschild_core::FiniteAlgebra<R>) -> String {
    to_pretty(&AlgebraFile::from_algebra(a))
}

fn f2() -> PrimeField {
    PrimeField::new(2).expect("2 is prime")
}

/// `(file name, contents)` for every bundled fixture.
pub fn corpus() -> Result<Vec<(&'static str, String)>> {
    let f2 = f2();
    let dual_f2 = Arc::new(catalog::truncated_polynomial(&f2, 2));
    let regular_f2 = Bimodule::regular(&dual_f2);

    // 𝔅(x, x) = x; in characteristic 2 every coboundary vanishes on (x, x)
    let mut nontrivial = Matrix::zeros(&f2, 2, 4);
    nontrivial.set(1, 3, f2.one());
    // δζ for ζ(1) = 1
    let mut zeta = Matrix::zeros(&f2, 2, 2);
    zeta.set(0, 0, f2.one());
    let coboundary = hochschild_core::extensions::coboundary_of(&regular_f2, &zeta)?;

    let trivial = ExtensionPresentation::crossed(&regular_f2, &Matrix::zeros(&f2, 2, 4))?;
    let twisted = ExtensionPresentation::crossed(&regular_f2, &nontrivial)?;

    let one = || vec![vec!["1".to_string()]];
    let z_mod_2 = ModuleFile { generators: 1, action: vec![one()], relations: vec![vec!["2".into()]] };

    Ok(vec![
        ("scalar_ring.json", algebra(&catalog::scalars(&Integers))),
        ("scalars_q.json", algebra(&catalog::scalars(&Rationals))),
        ("scalars_f2.json", algebra(&catalog::scalars(&f2))),
        ("dual_numbers_q.json", algebra(&catalog::truncated_polynomial(&Rationals, 2))),
        ("dual_numbers_f2.json", algebra(&dual_f2)),
        ("dual_numbers_Z.json", algebra(&catalog::truncated_polynomial(&Integers, 2))),
        ("truncated_cubic_Z.json", algebra(&catalog::truncated_polynomial(&Integers, 3))),
        ("zxz.json", algebra(&catalog::product_of_copies(&Integers, 2))),
        ("m2_q.json", algebra(&catalog::matrix_algebra(&Rationals, 2))),
        ("upper_triangular_q.json", algebra(&catalog::upper_triangular(&Rationals))),
        ("truncated_free_q.json", algebra(&catalog::truncated_free(&Rationals, 2, 1))),
        (
            "regular_dual_f2.json",
            to_pretty(&BimoduleFile::from_bimodule(&regular_f2, AlgebraRef::Path("dual_numbers_f2.json".into()))),
        ),
        ("cocycle_dual_f2.json", to_pretty(&CochainFile { cochain: nontrivial.to_strings() })),
        ("coboundary_dual_f2.json", to_pretty(&CochainFile { cochain: coboundary.to_strings() })),
        ("trivial_dual_f2.json", to_pretty(&ExtensionFile::from_extension(&trivial))),
        ("nontrivial_dual_f2.json", to_pretty(&ExtensionFile::from_extension(&twisted))),
        ("z_mod_2.json", to_pretty(&z_mod_2)),
    ])
}

pub fn write_all(dir: &Path) -> Result<Vec<String>> {
    fs::create_dir_all(dir).map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?;
    let mut written = Vec::new();
    for (name, text) in corpus()? {
        let path = dir.join(name);
        fs::write(&path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        written.push(name.to_string());
    }
    Ok(written)
}

/// Names of the files in `dir` that are missing or differ from the corpus.
pub fn check_all(dir: &Path) -> Result<Vec<String>> {
    let mut stale = Vec::new();
    for (name, text) in corpus()? {
        if fs::read_to_string(dir.join(name)).ok().as_deref() != Some(text.as_str()) {
            stale.push(name.to_string());
        }
    }
    Ok(stale)
}
