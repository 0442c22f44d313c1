#![allow(dead_code)]

use fcy_core::algebra::{Element, FiniteDimAlgebra, LinearMap};
use fcy_core::analysis::{analyze_full, Analysis, AnalyzeOptions};
use fcy_core::constructions::Family;
use fcy_core::frobenius::{CharSpec, Character, FrobeniusForm};
use fcy_core::linalg::{self, DenseMatrix, Field, Scalar};

pub fn family(name: &str) -> Family {
    name.parse().expect("known family")
}

pub fn run(name: &str, chi: &str, opts: &AnalyzeOptions) -> Analysis {
    let f = family(name);
    let chi: CharSpec = chi.parse().expect("character");
    analyze_full(
        &f.presentation().expect("presentation"),
        &f.source(),
        f.default_d(),
        &chi,
        opts,
    )
    .expect("analysis")
}

pub fn run_default(name: &str, chi: &str) -> Analysis {
    run(name, chi, &AnalyzeOptions::default())
}

/// The full Gram matrix `λ(b_i b_j)`.
pub fn gram(alg: &FiniteDimAlgebra, form: &FrobeniusForm) -> DenseMatrix {
    let n = alg.dim();
    let mut m = DenseMatrix::zeros(alg.field(), n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, form.pair(alg, i, j));
        }
    }
    m
}

pub fn gram_is_nondegenerate(alg: &FiniteDimAlgebra, form: &FrobeniusForm) -> bool {
    linalg::rank(&gram(alg, form)) == alg.dim()
}

/// First basis pair `(x, a)` violating `λ(α^χ(a)·x) = χ(deg a)·λ(x·a)`.
pub fn trace_twist_witness(
    alg: &FiniteDimAlgebra,
    form: &FrobeniusForm,
    alpha: &LinearMap,
    chi: &Character,
) -> Option<(usize, usize)> {
    for a in 0..alg.dim() {
        let scale = chi.eval(&alg.basis()[a].degree);
        for x in 0..alg.dim() {
            let lhs = form.eval(&alg.multiply(&alpha.columns[a], &alg.basis_element(x)));
            let rhs = &scale * &form.pair(alg, x, a);
            if lhs != rhs {
                return Some((x, a));
            }
        }
    }
    None
}

/// First basis triple violating associativity.
pub fn associativity_witness(alg: &FiniteDimAlgebra) -> Option<(usize, usize, usize)> {
    let n = alg.dim();
    for x in 0..n {
        for y in 0..n {
            let xy = alg.basis_product(x, y).cloned().unwrap_or_default();
            for z in 0..n {
                let left = alg.multiply(&xy, &alg.basis_element(z));
                let yz = alg.basis_product(y, z).cloned().unwrap_or_default();
                let right = alg.multiply(&alg.basis_element(x), &yz);
                if left != right {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

pub fn scalar(field: Field, v: i64) -> Scalar {
    field.from_i64(v)
}

pub fn element(alg: &FiniteDimAlgebra, terms: &[(i64, usize)]) -> Element {
    Element::from_terms(terms.iter().map(|&(c, i)| (i, alg.field().from_i64(c))))
}
