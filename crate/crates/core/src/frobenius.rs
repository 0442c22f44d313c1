//! Socles, Frobenius forms, Nakayama automorphisms and degree-adjusted
//! automorphisms.
//!
//! Conventions: `λ(x·a) = λ(α(a)·x)` defines the Nakayama automorphism, and
//! the degree adjuster is `ℓ(e_i) = deg soc(A e_i)`, so that
//! `deg α(a) = deg a + ℓ(target a) − ℓ(source a)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Element, FiniteDimAlgebra, LinearMap};
use crate::error::{FcyError, Result};
use crate::linalg::{self, DenseMatrix, Field, Scalar};
use crate::quiver::{add_degrees, sub_degrees, Degree};

/// A character `Z^r -> k^×`, given by the images of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub images: Vec<Scalar>,
}

impl Character {
    pub fn trivial(field: Field, rank: usize) -> Self {
        Character {
            images: vec![field.one(); rank],
        }
    }

    /// `δ ↦ value^{φ(δ)}` for the projection `φ`.
    pub fn through_projection(value: &Scalar, projection: &[i64]) -> Result<Self> {
        let images = projection
            .iter()
            .map(|&p| {
                value.pow(p).ok_or_else(|| FcyError::Malformed {
                    field: "char".into(),
                    message: "character value must be nonzero".into(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Character { images })
    }

    pub fn eval(&self, degree: &[i64]) -> Scalar {
        let field = self.images[0].field();
        let mut acc = field.one();
        for (img, &e) in self.images.iter().zip(degree) {
            if e != 0 {
                acc = &acc * &img.pow(e).expect("character images are nonzero");
            }
        }
        acc
    }

    pub fn is_trivial(&self) -> bool {
        self.images.iter().all(Scalar::is_one)
    }
}

/// Character selector: `tr`, `sgn`, `sgn^d` or an explicit rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharSpec {
    Tr,
    Sgn,
    SgnPowD,
    Value(BigRational),
}

impl CharSpec {
    /// Image of the generator `1 ∈ Z`.
    pub fn value(&self, d: usize, field: Field) -> Result<Scalar> {
        let value = match self {
            CharSpec::Tr => field.one(),
            CharSpec::Sgn => field.from_i64(-1),
            CharSpec::SgnPowD => field.from_i64(if d.is_multiple_of(2) { 1 } else { -1 }),
            CharSpec::Value(r) => field.from_ratio(r).ok_or_else(|| FcyError::Malformed {
                field: "char".into(),
                message: format!("{r} has no image in {field}"),
            })?,
        };
        if value.is_zero() {
            return Err(FcyError::Malformed {
                field: "char".into(),
                message: "character value must be nonzero".into(),
            });
        }
        Ok(value)
    }

    /// The character `δ ↦ value^{φ(δ)}` on `Z^r`.
    pub fn resolve(&self, d: usize, field: Field, projection: &[i64]) -> Result<Character> {
        Character::through_projection(&self.value(d, field)?, projection)
    }
}

impl fmt::Display for CharSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharSpec::Tr => f.write_str("tr"),
            CharSpec::Sgn => f.write_str("sgn"),
            CharSpec::SgnPowD => f.write_str("sgn^d"),
            CharSpec::Value(r) => f.write_str(&crate::quiver::format_rational(r)),
        }
    }
}

impl FromStr for CharSpec {
    type Err = FcyError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "tr" => Ok(CharSpec::Tr),
            "sgn" => Ok(CharSpec::Sgn),
            "sgn^d" => Ok(CharSpec::SgnPowD),
            other => {
                let r = linalg::parse_rational(other).map_err(|_| FcyError::Malformed {
                    field: "char".into(),
                    message: format!("expected tr, sgn, sgn^d or a rational, got {other:?}"),
                })?;
                if num_traits::Zero::is_zero(&r) {
                    return Err(FcyError::Malformed {
                        field: "char".into(),
                        message: "character value must be nonzero".into(),
                    });
                }
                Ok(CharSpec::Value(r))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct SocleData {
    /// Basis indices of positive-length normal words.
    pub radical: Vec<usize>,
    /// Basis of `{x : x·a = 0 for every arrow a}`.
    pub right_socle: Vec<Element>,
    /// Per vertex `i`, a basis of `soc(A e_i)` made of slice-homogeneous vectors.
    pub left_projective: Vec<Vec<Element>>,
    /// Per vertex `i`, a basis of `soc(e_i A)`.
    pub right_projective: Vec<Vec<Element>>,
}

/// Slices of the basis by `(source, target)` and, for homogeneous
/// presentations, by degree.
fn slices(alg: &FiniteDimAlgebra) -> Vec<Vec<usize>> {
    let mut map: std::collections::BTreeMap<(usize, usize, Degree), Vec<usize>> =
        Default::default();
    let graded = alg.is_homogeneous();
    for (i, b) in alg.basis().iter().enumerate() {
        let deg = if graded { b.degree.clone() } else { Vec::new() };
        map.entry((b.source, b.target, deg)).or_default().push(i);
    }
    map.into_values().collect()
}

/// Kernel of `x ↦ (a·x)_a` (left) or `x ↦ (x·a)_a` (right) on one slice.
fn annihilator(alg: &FiniteDimAlgebra, slice: &[usize], left: bool) -> Vec<Element> {
    let q = &alg.presentation().quiver;
    let b0 = &alg.basis()[slice[0]];
    let arrows: Vec<usize> = (0..q.arrow_count())
        .filter(|&a| {
            if left {
                q.arrows()[a].source == b0.target
            } else {
                q.arrows()[a].target == b0.source
            }
        })
        .map(|a| alg.arrow_index(a))
        .collect();
    let mut rows: HashMap<(usize, usize), usize> = HashMap::new();
    let mut entries = Vec::new();
    for (col, &x) in slice.iter().enumerate() {
        for &a in &arrows {
            let p = if left {
                alg.basis_product(a, x)
            } else {
                alg.basis_product(x, a)
            };
            if let Some(p) = p {
                for (k, c) in p.terms() {
                    let n = rows.len();
                    let r = *rows.entry((a, *k)).or_insert(n);
                    entries.push((r, col, c.clone()));
                }
            }
        }
    }
    let field = alg.field();
    let mut m = DenseMatrix::zeros(field, rows.len(), slice.len());
    for (r, c, v) in entries {
        m.set(r, c, v);
    }
    linalg::kernel(&m)
        .into_iter()
        .map(|v| Element::from_terms(slice.iter().zip(v).map(|(&i, c)| (i, c))))
        .collect()
}

pub fn radical_and_socle(alg: &FiniteDimAlgebra) -> SocleData {
    let nv = alg.vertex_count();
    let radical = (nv..alg.dim()).collect();
    let mut left_projective = vec![Vec::new(); nv];
    let mut right_projective = vec![Vec::new(); nv];
    let mut right_socle = Vec::new();
    for slice in slices(alg) {
        let b0 = &alg.basis()[slice[0]];
        left_projective[b0.source].extend(annihilator(alg, &slice, true));
        let right = annihilator(alg, &slice, false);
        right_projective[b0.target].extend(right.iter().cloned());
        right_socle.extend(right);
    }
    SocleData {
        radical,
        right_socle,
        left_projective,
        right_projective,
    }
}

/// The Nakayama permutation, or the reason the algebra is not self-injective.
pub fn selfinjectivity_test(
    alg: &FiniteDimAlgebra,
    soc: &SocleData,
) -> std::result::Result<Vec<usize>, String> {
    let names = alg.presentation().quiver.vertices();
    let nv = alg.vertex_count();
    let mut nu = vec![0; nv];
    for i in 0..nv {
        let s = &soc.left_projective[i];
        if s.len() != 1 {
            return Err(format!(
                "socle of the projective at {} has dimension {}",
                names[i],
                s.len()
            ));
        }
        nu[i] = alg.basis()[s[0].terms()[0].0].target;
    }
    let mut hit: Vec<Option<usize>> = vec![None; nv];
    for i in 0..nv {
        if let Some(j) = hit[nu[i]] {
            return Err(format!(
                "non-bijective socle: projectives at {} and {} both have socle at {}",
                names[j], names[i], names[nu[i]]
            ));
        }
        hit[nu[i]] = Some(i);
    }
    for i in 0..nv {
        if soc.right_projective[i].len() != 1 {
            return Err(format!(
                "socle of the right projective at {} has dimension {}",
                names[i],
                soc.right_projective[i].len()
            ));
        }
    }
    Ok(nu)
}

/// `λ` as a sparse functional, with the Nakayama permutation and socle generators.
#[derive(Clone, Debug)]
pub struct FrobeniusForm {
    pub lambda: Element,
    pub nu: Vec<usize>,
    pub socle: Vec<Element>,
}

impl FrobeniusForm {
    pub fn eval(&self, x: &Element) -> Scalar {
        let field = x.terms().first().map(|t| t.1.field());
        let mut acc: Option<Scalar> = None;
        let (mut i, mut j) = (0, 0);
        let (a, b) = (x.terms(), self.lambda.terms());
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    let t = &a[i].1 * &b[j].1;
                    acc = Some(match acc {
                        Some(s) => &s + &t,
                        None => t,
                    });
                    i += 1;
                    j += 1;
                }
            }
        }
        acc.or_else(|| field.map(Field::zero))
            .unwrap_or_else(|| Field::Rational.zero())
    }

    /// `λ(b_x · b_y)`.
    pub fn pair(&self, alg: &FiniteDimAlgebra, x: usize, y: usize) -> Scalar {
        match alg.basis_product(x, y) {
            Some(p) => self.eval(p),
            None => alg.field().zero(),
        }
    }
}

/// Seeded nonzero coefficients for the socle generators.
pub fn random_coefficients(field: Field, count: usize, seed: u64) -> Vec<Scalar> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| loop {
            let v: i64 = rng.gen_range(-50..=50);
            let c = field.from_i64(v);
            if !c.is_zero() {
                break c;
            }
        })
        .collect()
}

/// Block of the pairing between `e_{νs} A e_t` (rows) and `e_{νt} A e_{νs}` (columns).
fn pairing_block(
    alg: &FiniteDimAlgebra,
    form: &FrobeniusForm,
    s: usize,
    t: usize,
) -> (Vec<usize>, Vec<usize>, DenseMatrix) {
    let nu = &form.nu;
    let xs = alg.peirce(t, nu[s]).to_vec();
    let ks = alg.peirce(nu[s], nu[t]).to_vec();
    let mut m = DenseMatrix::zeros(alg.field(), xs.len(), ks.len());
    for (r, &x) in xs.iter().enumerate() {
        for (c, &k) in ks.iter().enumerate() {
            m.set(r, c, form.pair(alg, k, x));
        }
    }
    (xs, ks, m)
}

/// Builds `λ` from one socle generator per projective (coefficients default to 1)
/// and checks that `λ(xy)` is nondegenerate.
pub fn frobenius_form(
    alg: &FiniteDimAlgebra,
    soc: &SocleData,
    nu: &[usize],
    coefficients: Option<&[Scalar]>,
) -> Result<FrobeniusForm> {
    let nv = alg.vertex_count();
    let mut lambda = Vec::new();
    let mut socle = Vec::new();
    for i in 0..nv {
        let g = soc.left_projective[i][0].clone();
        let (k, c) = g.terms()[0].clone();
        let coeff = coefficients.map_or_else(|| alg.field().one(), |cs| cs[i].clone());
        lambda.push((
            k,
            &coeff * &c.inv().expect("leading coefficient is nonzero"),
        ));
        socle.push(g);
    }
    let form = FrobeniusForm {
        lambda: Element::from_terms(lambda),
        nu: nu.to_vec(),
        socle,
    };
    for s in 0..nv {
        for t in 0..nv {
            let (xs, ks, m) = pairing_block(alg, &form, s, t);
            if xs.len() != ks.len() || linalg::rank(&m) != xs.len() {
                return Err(FcyError::InternalNondegeneracyFailure(format!(
                    "pairing block ({s}, {t}) is {}x{} of rank {}",
                    xs.len(),
                    ks.len(),
                    linalg::rank(&m)
                )));
            }
        }
    }
    Ok(form)
}

/// Vertex permutation of an automorphism, read from idempotent coefficients.
pub fn vertex_action(alg: &FiniteDimAlgebra, alpha: &LinearMap) -> Option<Vec<usize>> {
    let nv = alg.vertex_count();
    (0..nv)
        .map(|v| {
            let mut hits = alpha.columns[v].support().filter(|&i| i < nv);
            let j = hits.next()?;
            hits.next().is_none().then_some(j)
        })
        .collect()
}

/// Solves `λ(x·a) = λ(α(a)·x)` for `α`.
pub fn nakayama_automorphism(alg: &FiniteDimAlgebra, form: &FrobeniusForm) -> Result<LinearMap> {
    let nv = alg.vertex_count();
    let field = alg.field();
    let mut columns = vec![Element::zero(); alg.dim()];
    for s in 0..nv {
        for t in 0..nv {
            let targets = alg.peirce(s, t);
            if targets.is_empty() {
                continue;
            }
            let (xs, ks, m) = pairing_block(alg, form, s, t);
            let inv = linalg::invert(&m)?.ok_or_else(|| {
                FcyError::InternalNondegeneracyFailure(format!(
                    "pairing block ({s}, {t}) is singular"
                ))
            })?;
            for &a in targets {
                let rhs: Vec<Scalar> = xs.iter().map(|&x| form.pair(alg, x, a)).collect();
                let sol = inv.mul_vec(&rhs)?;
                columns[a] = Element::from_terms(ks.iter().copied().zip(sol));
            }
        }
    }
    let alpha = LinearMap { columns };
    let perm = vertex_action(alg, &alpha);
    for i in 0..nv {
        if alpha.columns[i] != Element::basis(form.nu[i], field) {
            return Err(FcyError::VerificationFailure(format!(
                "α(e_{i}) is not the idempotent at ν({i}) (vertex action {perm:?})"
            )));
        }
    }
    if let Some((x, y)) = multiplicativity_witness(alg, &alpha, false) {
        return Err(FcyError::VerificationFailure(format!(
            "α is not multiplicative on ({}, {})",
            alg.basis()[x].label,
            alg.basis()[y].label
        )));
    }
    Ok(alpha)
}

/// A basis pair on which `α(xy) ≠ α(x)α(y)`. Without `exhaustive`, `y`
/// ranges over arrows and idempotents, which generate the algebra.
pub fn multiplicativity_witness(
    alg: &FiniteDimAlgebra,
    alpha: &LinearMap,
    exhaustive: bool,
) -> Option<(usize, usize)> {
    let n = alg.dim();
    let q = &alg.presentation().quiver;
    let ys: Vec<usize> = if exhaustive {
        (0..n).collect()
    } else {
        (0..alg.vertex_count())
            .chain((0..q.arrow_count()).map(|a| alg.arrow_index(a)))
            .collect()
    };
    for x in 0..n {
        for &y in &ys {
            let lhs = alg
                .basis_product(x, y)
                .map_or_else(Element::zero, |p| alpha.apply(p));
            let rhs = alg.multiply(&alpha.columns[x], &alpha.columns[y]);
            if lhs != rhs {
                return Some((x, y));
            }
        }
    }
    None
}

pub fn is_unital(alg: &FiniteDimAlgebra, alpha: &LinearMap) -> bool {
    alpha.apply(&alg.one()) == alg.one()
}

/// Extends images of arrows (and a vertex permutation) to an algebra map.
pub fn automorphism_from_arrow_images(
    alg: &FiniteDimAlgebra,
    vertex_perm: &[usize],
    images: &[Element],
) -> Result<LinearMap> {
    let field = alg.field();
    let mut columns = Vec::with_capacity(alg.dim());
    for b in alg.basis() {
        let img = match &b.path {
            crate::quiver::Path::Trivial(v) => Element::basis(vertex_perm[*v], field),
            crate::quiver::Path::Arrows(arrows) => {
                let mut e = images[arrows[0]].clone();
                for &a in &arrows[1..] {
                    e = alg.multiply(&images[a], &e);
                }
                e
            }
        };
        columns.push(img);
    }
    let map = LinearMap { columns };
    if let Some((x, y)) = multiplicativity_witness(alg, &map, false) {
        return Err(FcyError::VerificationFailure(format!(
            "arrow images do not respect the relations at ({}, {})",
            alg.basis()[x].label,
            alg.basis()[y].label
        )));
    }
    Ok(map)
}

/// An automorphism with a degree adjuster on vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeAdjusted {
    pub alpha: LinearMap,
    pub ell: Vec<Degree>,
    pub perm: Vec<usize>,
}

/// `ℓ(e_i) = deg soc(A e_i)`.
pub fn degree_adjuster(alg: &FiniteDimAlgebra, form: &FrobeniusForm) -> Result<Vec<Degree>> {
    if !alg.is_homogeneous() {
        return Err(FcyError::NotHomogeneous);
    }
    let names = alg.presentation().quiver.vertices();
    form.socle
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut degs = g.support().map(|k| alg.basis()[k].degree.clone());
            let d = degs.next().expect("socle generator is nonzero");
            if degs.any(|e| e != d) {
                return Err(FcyError::NonHomogeneousSocle(names[i].clone()));
            }
            Ok(d)
        })
        .collect()
}

pub fn graded_nakayama(
    alg: &FiniteDimAlgebra,
    form: &FrobeniusForm,
    alpha: LinearMap,
) -> Result<DegreeAdjusted> {
    let ell = degree_adjuster(alg, form)?;
    Ok(DegreeAdjusted {
        alpha,
        ell,
        perm: form.nu.clone(),
    })
}

/// `α^χ(a) = χ(deg a)·α(a)`; the adjuster is unchanged.
pub fn chi_twist(alg: &FiniteDimAlgebra, da: &DegreeAdjusted, chi: &Character) -> DegreeAdjusted {
    let columns = da
        .alpha
        .columns
        .iter()
        .zip(alg.basis())
        .map(|(c, b)| c.scale(&chi.eval(&b.degree)))
        .collect();
    DegreeAdjusted {
        alpha: LinearMap { columns },
        ell: da.ell.clone(),
        perm: da.perm.clone(),
    }
}

/// `second ∘ first` with adjuster `ℓ₁(e) + ℓ₂(π₁ e)`.
pub fn compose_da(first: &DegreeAdjusted, second: &DegreeAdjusted) -> DegreeAdjusted {
    let nv = first.perm.len();
    DegreeAdjusted {
        alpha: second.alpha.compose(&first.alpha),
        ell: (0..nv)
            .map(|e| add_degrees(&first.ell[e], &second.ell[first.perm[e]]))
            .collect(),
        perm: (0..nv).map(|e| second.perm[first.perm[e]]).collect(),
    }
}

pub fn identity_da(alg: &FiniteDimAlgebra) -> DegreeAdjusted {
    let rank = alg.presentation().grading_rank;
    DegreeAdjusted {
        alpha: LinearMap::identity(alg.field(), alg.dim()),
        ell: vec![vec![0; rank]; alg.vertex_count()],
        perm: (0..alg.vertex_count()).collect(),
    }
}

/// First basis element violating `deg α(a) = deg a + ℓ(target) − ℓ(source)`.
pub fn homogeneity_witness(alg: &FiniteDimAlgebra, da: &DegreeAdjusted) -> Option<usize> {
    for (i, b) in alg.basis().iter().enumerate() {
        let want = add_degrees(
            &b.degree,
            &sub_degrees(&da.ell[b.target], &da.ell[b.source]),
        );
        let col = &da.alpha.columns[i];
        let ok = col.support().all(|k| {
            let bk = &alg.basis()[k];
            bk.degree == want && bk.source == da.perm[b.source] && bk.target == da.perm[b.target]
        });
        if !ok {
            return Some(i);
        }
    }
    None
}

/// Searches for a unit `u` with `α(a)·u = u·β(a)` on generators.
///
/// When both maps send idempotents to idempotents the search is exact:
/// units must then lie in `⊕ e_v A e_v`, and a unit exists iff no
/// idempotent coordinate vanishes on the solution space. `None` is then a
/// certificate. Otherwise `None` means no unit was found.
pub fn intertwining_unit(
    alg: &FiniteDimAlgebra,
    alpha: &LinearMap,
    beta: &LinearMap,
    seed: u64,
) -> Option<Element> {
    let nv = alg.vertex_count();
    let n = alg.dim();
    let field = alg.field();
    let q = &alg.presentation().quiver;
    let pa = exact_vertex_perm(alg, alpha);
    let pb = exact_vertex_perm(alg, beta);
    let (unknowns, generators): (Vec<usize>, Vec<usize>) = match (&pa, &pb) {
        (Some(pa), Some(pb)) => {
            if pa != pb {
                return None;
            }
            let u = (0..nv)
                .flat_map(|v| alg.peirce(v, v).iter().copied())
                .collect();
            (
                u,
                (0..q.arrow_count()).map(|a| alg.arrow_index(a)).collect(),
            )
        }
        _ => (
            (0..n).collect(),
            (0..nv)
                .chain((0..q.arrow_count()).map(|a| alg.arrow_index(a)))
                .collect(),
        ),
    };
    let mut rows: HashMap<(usize, usize), usize> = HashMap::new();
    let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
    for (col, &k) in unknowns.iter().enumerate() {
        let bk = alg.basis_element(k);
        for &g in &generators {
            let lhs = alg.multiply(&alpha.columns[g], &bk);
            let rhs = alg.multiply(&bk, &beta.columns[g]);
            for (i, c) in lhs.sub(&rhs).terms() {
                let r = rows.len();
                let r = *rows.entry((g, *i)).or_insert(r);
                entries.push((r, col, c.clone()));
            }
        }
    }
    let mut m = DenseMatrix::zeros(field, rows.len(), unknowns.len());
    for (r, c, v) in entries {
        m.set(r, c, v);
    }
    let kernel = linalg::kernel(&m);
    let idem_cols: Vec<Option<usize>> = (0..nv)
        .map(|v| unknowns.iter().position(|&k| k == v))
        .collect();
    let is_unit = |v: &[Scalar]| idem_cols.iter().all(|c| c.is_some_and(|c| !v[c].is_zero()));
    for v in 0..nv {
        let Some(c) = idem_cols[v] else {
            return None;
        };
        if kernel.iter().all(|k| k[c].is_zero()) {
            return None;
        }
    }
    let to_element = |v: Vec<Scalar>| Element::from_terms(unknowns.iter().copied().zip(v));
    for k in &kernel {
        if is_unit(k) {
            return Some(to_element(k.clone()));
        }
    }
    let combine = |coeffs: &[Scalar]| -> Vec<Scalar> {
        let mut acc = vec![field.zero(); unknowns.len()];
        for (k, c) in kernel.iter().zip(coeffs) {
            for (a, x) in acc.iter_mut().zip(k) {
                *a = &*a + &(c * x);
            }
        }
        acc
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..32 {
        let coeffs: Vec<Scalar> = kernel
            .iter()
            .map(|_| field.from_i64(rng.gen_range(1..=1000)))
            .collect();
        let v = combine(&coeffs);
        if is_unit(&v) {
            return Some(to_element(v));
        }
    }
    // each idempotent coordinate of Σ t^j v_j is a nonzero polynomial of degree < dim,
    // so some t among the first nv·dim + 1 values avoids all roots
    let bound = (nv * kernel.len() + 1) as i64;
    for t in 1..=bound {
        let tv = field.from_i64(t);
        let mut pow = field.one();
        let coeffs: Vec<Scalar> = kernel
            .iter()
            .map(|_| {
                let c = pow.clone();
                pow = &pow * &tv;
                c
            })
            .collect();
        let v = combine(&coeffs);
        if is_unit(&v) {
            return Some(to_element(v));
        }
    }
    None
}

fn exact_vertex_perm(alg: &FiniteDimAlgebra, alpha: &LinearMap) -> Option<Vec<usize>> {
    let nv = alg.vertex_count();
    (0..nv)
        .map(|v| {
            let c = &alpha.columns[v];
            (c.terms().len() == 1 && c.terms()[0].0 < nv && c.terms()[0].1.is_one())
                .then(|| c.terms()[0].0)
        })
        .collect()
}

/// A unit `u` with `α(a)·u = u·a`, certifying that `α` is inner.
pub fn is_inner(alg: &FiniteDimAlgebra, alpha: &LinearMap, seed: u64) -> Option<Element> {
    let id = LinearMap::identity(alg.field(), alg.dim());
    intertwining_unit(alg, alpha, &id, seed)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderResult {
    pub k: usize,
    pub n: i64,
    pub n_vector: Degree,
    pub used_inner: bool,
    pub alpha_order_strict: Option<usize>,
}

/// Smallest `k ≤ k_max` with `(α, ℓ)^k ≅ (id, N̲)`.
pub fn da_order(
    alg: &FiniteDimAlgebra,
    da: &DegreeAdjusted,
    k_max: usize,
    allow_inner: bool,
    seed: u64,
) -> Result<OrderResult> {
    if !alg.is_connected() {
        return Err(FcyError::NotConnected);
    }
    let names = alg.presentation().quiver.vertices();
    let mut power = da.clone();
    let mut found: Option<OrderResult> = None;
    for k in 1..=k_max {
        if k > 1 {
            power = compose_da(&power, da);
        }
        let strict = power.alpha.is_identity();
        if strict {
            if let Some(i) = (1..power.ell.len()).find(|&i| power.ell[i] != power.ell[0]) {
                return Err(FcyError::InvariantViolation(format!(
                    "α^{k} = id but the {k}-fold adjuster differs at {} and {}",
                    names[0], names[i]
                )));
            }
        }
        if let Some(f) = found.as_mut() {
            if strict {
                f.alpha_order_strict = Some(k);
                break;
            }
            continue;
        }
        let constant = power.ell.iter().all(|l| *l == power.ell[0]);
        let accept = strict
            || (allow_inner
                && constant
                && power.perm.iter().enumerate().all(|(i, &p)| i == p)
                && is_inner(alg, &power.alpha, seed).is_some());
        if accept {
            let n_vector = power.ell.first().cloned().unwrap_or_default();
            found = Some(OrderResult {
                k,
                n: alg.presentation().project(&n_vector),
                n_vector,
                used_inner: !strict,
                alpha_order_strict: strict.then_some(k),
            });
            if strict {
                break;
            }
        }
    }
    found.ok_or(FcyError::NoOrderFound { k_max })
}
