//! Standard small algebras used as fixtures and examples.

use std::sync::Arc;

use crate::algebra::FiniteAlgebra;
use crate::bimodule::Bimodule;
use crate::matrix::Matrix;
use crate::ring::Ring;
use crate::tensor::truncated_tensor_algebra;

fn unit_vector<R: Ring>(ring: &R, d: usize, i: usize) -> Vec<R::Elem> {
    let mut v = vec![ring.zero(); d];
    v[i] = ring.one();
    v
}

/// The base ring `k` as a rank-one algebra.
pub fn scalars<R: Ring>(ring: &R) -> FiniteAlgebra<R> {
    FiniteAlgebra::new(ring, vec!["1".into()], vec![ring.one()], vec![ring.one()]).expect("k is an algebra")
}

/// `k[x]/(xⁿ)` on the basis `1, x, …, xⁿ⁻¹`.
pub fn truncated_polynomial<R: Ring>(ring: &R, n: usize) -> FiniteAlgebra<R> {
    assert!(n >= 1);
    let names = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    FiniteAlgebra::from_products(ring, names, unit_vector(ring, n, 0), |i, j| {
        if i + j < n {
            unit_vector(ring, n, i + j)
        } else {
            vec![ring.zero(); n]
        }
    })
    .expect("truncated polynomial ring is an algebra")
}

/// `kⁿ` with the orthogonal idempotent basis; the unit is `(1, …, 1)`.
pub fn product_of_copies<R: Ring>(ring: &R, n: usize) -> FiniteAlgebra<R> {
    let names = (1..=n).map(|i| format!("e{i}")).collect();
    FiniteAlgebra::from_products(ring, names, vec![ring.one(); n], |i, j| {
        if i == j {
            unit_vector(ring, n, i)
        } else {
            vec![ring.zero(); n]
        }
    })
    .expect("product ring is an algebra")
}

/// `Mₙ(k)` on the matrix units `E_ij`, row-major.
pub fn matrix_algebra<R: Ring>(ring: &R, n: usize) -> FiniteAlgebra<R> {
    let d = n * n;
    let names = (0..d).map(|p| format!("E{}{}", p / n + 1, p % n + 1)).collect();
    let mut unit = vec![ring.zero(); d];
    for i in 0..n {
        unit[i * n + i] = ring.one();
    }
    FiniteAlgebra::from_products(ring, names, unit, |p, q| {
        let (i, j) = (p / n, p % n);
        let (k, l) = (q / n, q % n);
        if j == k {
            unit_vector(ring, d, i * n + l)
        } else {
            vec![ring.zero(); d]
        }
    })
    .expect("matrix algebra is an algebra")
}

/// Upper-triangular 2×2 matrices on `E11, E12, E22`.
pub fn upper_triangular<R: Ring>(ring: &R) -> FiniteAlgebra<R> {
    let units = [(0, 0), (0, 1), (1, 1)];
    let names = vec!["E11".into(), "E12".into(), "E22".into()];
    let mut unit = vec![ring.zero(); 3];
    unit[0] = ring.one();
    unit[2] = ring.one();
    FiniteAlgebra::from_products(ring, names, unit, |p, q| {
        let (i, j) = units[p];
        let (k, l) = units[q];
        match units.iter().position(|&u| j == k && u == (i, l)) {
            Some(r) => unit_vector(ring, 3, r),
            None => vec![ring.zero(); 3],
        }
    })
    .expect("upper triangular matrices form an algebra")
}

/// Free algebra on `letters` generators truncated above `degree`, with
/// basis words over `x, y, z, …`.
pub fn truncated_free<R: Ring>(ring: &R, letters: usize, degree: usize) -> FiniteAlgebra<R> {
    assert!((1..=26).contains(&letters));
    let k = Arc::new(scalars(ring));
    let id = Matrix::identity(ring, letters);
    let m = Bimodule::new(k, vec![id.clone()], vec![id]).expect("free k-bimodule");
    let t = truncated_tensor_algebra(&m, degree).expect("free tensor powers");
    let alphabet: Vec<char> = "xyzuvwabcdefghijklmnopqrst".chars().collect();
    let names = t
        .names()
        .iter()
        .map(|n| {
            if n == "1" {
                return n.clone();
            }
            n.split('⊗').map(|m| alphabet[m.trim_start_matches('m').parse::<usize>().expect("letter index")]).collect()
        })
        .collect();
    t.with_names(names).expect("same rank")
}
