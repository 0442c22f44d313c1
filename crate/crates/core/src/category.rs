//! Hom-graded categories from graded algebras, finite windows of the
//! smash product with `Z`, orbit categories, and graded Serre structures.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::algebra::{Element, FiniteDimAlgebra, LinearMap};
use crate::error::{FcyError, Result};
use crate::frobenius::{DegreeAdjusted, FrobeniusForm};
use crate::linalg::{self, DenseMatrix, Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub source: usize,
    pub target: usize,
    pub degree: i64,
    pub label: String,
}

/// A finite `Z`-hom-graded category with a chosen homogeneous basis of
/// morphisms and structure constants for composition.
#[derive(Clone, Debug)]
pub struct GradedCategory {
    pub field: Field,
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    pub identities: Vec<usize>,
    homs: BTreeMap<(usize, usize, i64), Vec<usize>>,
    /// `(g, f) ↦ g∘f` for composable basis morphisms with nonzero composite.
    composition: HashMap<(usize, usize), Element>,
}

impl GradedCategory {
    pub fn new(
        field: Field,
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        composition: HashMap<(usize, usize), Element>,
    ) -> Self {
        let mut homs: BTreeMap<(usize, usize, i64), Vec<usize>> = BTreeMap::new();
        for (i, m) in morphisms.iter().enumerate() {
            homs.entry((m.source, m.target, m.degree))
                .or_default()
                .push(i);
        }
        GradedCategory {
            field,
            objects,
            morphisms,
            identities,
            homs,
            composition,
        }
    }

    /// Basis of `C^p(x, y)`.
    pub fn hom(&self, x: usize, y: usize, p: i64) -> &[usize] {
        self.homs.get(&(x, y, p)).map_or(&[], Vec::as_slice)
    }

    pub fn hom_dimensions(&self) -> BTreeMap<(usize, usize, i64), usize> {
        self.homs.iter().map(|(k, v)| (*k, v.len())).collect()
    }

    /// `g∘f` (apply `f` first); `None` when not composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<Element> {
        if self.morphisms[f].target != self.morphisms[g].source {
            return None;
        }
        Some(self.composition.get(&(g, f)).cloned().unwrap_or_default())
    }

    /// Bilinear extension of composition.
    pub fn compose_elements(&self, g: &Element, f: &Element) -> Element {
        let mut acc = Element::zero();
        for (j, b) in g.terms() {
            for (i, a) in f.terms() {
                if let Some(c) = self.composition.get(&(*j, *i)) {
                    acc = acc.add(&c.scale(&(b * a)));
                }
            }
        }
        acc
    }

    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let lo = self.morphisms.iter().map(|m| m.degree).min()?;
        let hi = self.morphisms.iter().map(|m| m.degree).max()?;
        Some((lo, hi))
    }
}

/// Objects are vertices and morphisms are basis elements, with the same
/// indices as in the algebra; degrees are projected to `Z`.
pub fn base_category(alg: &FiniteDimAlgebra) -> Result<GradedCategory> {
    if !alg.is_homogeneous() {
        return Err(FcyError::NotHomogeneous);
    }
    let morphisms = alg
        .basis()
        .iter()
        .enumerate()
        .map(|(i, b)| Morphism {
            source: b.source,
            target: b.target,
            degree: alg.z_degree(i),
            label: b.label.clone(),
        })
        .collect();
    let mut composition = HashMap::new();
    for g in 0..alg.dim() {
        for f in 0..alg.dim() {
            if let Some(p) = alg.basis_product(g, f) {
                if !p.is_zero() {
                    composition.insert((g, f), p.clone());
                }
            }
        }
    }
    Ok(GradedCategory::new(
        alg.field(),
        alg.presentation().quiver.vertices().to_vec(),
        morphisms,
        (0..alg.vertex_count()).collect(),
        composition,
    ))
}

/// The full subcategory of `C # Z` on objects `(x, p)` with `lo ≤ p ≤ hi`.
#[derive(Clone, Debug)]
pub struct EquivariantWindow {
    pub base: GradedCategory,
    pub lo: i64,
    pub hi: i64,
    /// `(x, p)` per object.
    pub object_coords: Vec<(usize, i64)>,
    /// `(base morphism, source shift p)` per morphism.
    pub morphism_coords: Vec<(usize, i64)>,
    /// The smash category itself; all morphisms in degree 0.
    pub category: GradedCategory,
    object_index: HashMap<(usize, i64), usize>,
    morphism_index: HashMap<(usize, i64), usize>,
}

impl EquivariantWindow {
    pub fn object(&self, x: usize, p: i64) -> Option<usize> {
        self.object_index.get(&(x, p)).copied()
    }

    pub fn morphism(&self, f: usize, p: i64) -> Option<usize> {
        self.morphism_index.get(&(f, p)).copied()
    }

    /// `F(x, p) = (x, p + 1)`, defined on `[lo, hi − 1]`.
    pub fn shift_object(&self, o: usize) -> Option<usize> {
        let (x, p) = self.object_coords[o];
        self.object(x, p + 1)
    }

    /// `F` on morphisms: same base morphism, both ends shifted.
    pub fn shift_morphism(&self, m: usize) -> Option<usize> {
        let (f, p) = self.morphism_coords[m];
        self.morphism(f, p + 1)
    }
}

pub fn smash_window(c: &GradedCategory, lo: i64, hi: i64) -> Result<EquivariantWindow> {
    if lo > hi {
        return Err(FcyError::Malformed {
            field: "window".into(),
            message: format!("empty window {lo}:{hi}"),
        });
    }
    let mut object_coords = Vec::new();
    let mut object_index = HashMap::new();
    let mut objects = Vec::new();
    for p in lo..=hi {
        for x in 0..c.objects.len() {
            object_index.insert((x, p), object_coords.len());
            object_coords.push((x, p));
            objects.push(format!("{}^{p}", c.objects[x]));
        }
    }
    let mut morphism_coords = Vec::new();
    let mut morphism_index = HashMap::new();
    let mut morphisms = Vec::new();
    for p in lo..=hi {
        for (f, m) in c.morphisms.iter().enumerate() {
            let q = p + m.degree;
            if q < lo || q > hi {
                continue;
            }
            morphism_index.insert((f, p), morphism_coords.len());
            morphism_coords.push((f, p));
            morphisms.push(Morphism {
                source: object_index[&(m.source, p)],
                target: object_index[&(m.target, q)],
                degree: 0,
                label: format!("{}^{p}", m.label),
            });
        }
    }
    let identities = object_coords
        .iter()
        .map(|&(x, p)| morphism_index[&(c.identities[x], p)])
        .collect();
    let mut composition = HashMap::new();
    for (gi, &(g, q)) in morphism_coords.iter().enumerate() {
        for (fi, &(f, p)) in morphism_coords.iter().enumerate() {
            if p + c.morphisms[f].degree != q {
                continue;
            }
            if let Some(gf) = c.compose(g, f) {
                if !gf.is_zero() {
                    let terms = gf
                        .terms()
                        .iter()
                        .map(|(h, v)| (morphism_index[&(*h, p)], v.clone()));
                    composition.insert((gi, fi), Element::from_terms(terms));
                }
            }
        }
    }
    let category = GradedCategory::new(c.field, objects, morphisms, identities, composition);
    Ok(EquivariantWindow {
        base: c.clone(),
        lo,
        hi,
        object_coords,
        morphism_coords,
        category,
        object_index,
        morphism_index,
    })
}

/// The orbit category of a window, with representatives `(x, 0)`.
#[derive(Clone, Debug)]
pub struct OrbitCategory {
    pub category: GradedCategory,
    /// Composable pairs whose composite would leave the window.
    pub skipped: usize,
}

/// `(D/Z)^p(x, y) = D((x, 0), F^p(y, 0))`, computed inside the window.
///
/// Fails with `WindowTooSmall` when a hom degree of the base does not fit;
/// otherwise every skipped composite lands in a degree where the base has
/// no morphisms and is therefore zero.
pub fn orbit_of_window(e: &EquivariantWindow) -> Result<OrbitCategory> {
    let c = &e.base;
    if let Some((dlo, dhi)) = c.degree_range() {
        for degree in [dlo, dhi] {
            if degree < e.lo || degree > e.hi {
                return Err(FcyError::WindowTooSmall {
                    degree,
                    lo: e.lo,
                    hi: e.hi,
                });
            }
        }
    }
    if e.lo > 0 || e.hi < 0 {
        return Err(FcyError::WindowTooSmall {
            degree: 0,
            lo: e.lo,
            hi: e.hi,
        });
    }
    // orbit morphisms are the window morphisms out of degree-0 objects
    let mut morphisms = Vec::new();
    let mut from_window = Vec::new();
    let mut index = HashMap::new();
    for (m, &(f, p)) in e.morphism_coords.iter().enumerate() {
        if p != 0 {
            continue;
        }
        let base = &c.morphisms[f];
        index.insert(f, morphisms.len());
        from_window.push(m);
        morphisms.push(Morphism {
            source: base.source,
            target: base.target,
            degree: base.degree,
            label: base.label.clone(),
        });
    }
    let identities = c.identities.iter().map(|i| index[i]).collect();
    let mut composition = HashMap::new();
    let mut skipped = 0;
    for (gi, &gm) in from_window.iter().enumerate() {
        for (fi, &fm) in from_window.iter().enumerate() {
            let (f, _) = e.morphism_coords[fm];
            let (g, _) = e.morphism_coords[gm];
            let (mf, mg) = (&c.morphisms[f], &c.morphisms[g]);
            if mf.target != mg.source {
                continue;
            }
            // g∘f = F^p(g)∘f with p = deg f
            let Some(shifted) = e.morphism(g, mf.degree) else {
                skipped += 1;
                continue;
            };
            let Some(gf) = e.category.compose(shifted, fm) else {
                continue;
            };
            if gf.is_zero() {
                continue;
            }
            let terms = gf.terms().iter().map(|(h, v)| {
                let (base, p) = e.morphism_coords[*h];
                debug_assert_eq!(p, 0);
                (index[&base], v.clone())
            });
            composition.insert((gi, fi), Element::from_terms(terms));
        }
    }
    Ok(OrbitCategory {
        category: GradedCategory::new(
            c.field,
            c.objects.clone(),
            morphisms,
            identities,
            composition,
        ),
        skipped,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundTripReport {
    pub window: [i64; 2],
    pub objects: usize,
    pub morphisms: usize,
    pub compositions_checked: usize,
    pub skipped_compositions: usize,
    pub shift_pairs_checked: usize,
    pub isomorphic: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<String>,
}

/// Matches `d` against `c` by object and morphism labels and compares all
/// structure constants.
pub fn compare_categories(
    c: &GradedCategory,
    d: &GradedCategory,
) -> std::result::Result<usize, String> {
    if c.objects != d.objects {
        return Err("object lists differ".into());
    }
    if c.hom_dimensions() != d.hom_dimensions() {
        return Err("graded hom dimensions differ".into());
    }
    let key = |m: &Morphism| (m.source, m.target, m.degree, m.label.clone());
    let d_index: HashMap<_, usize> = d
        .morphisms
        .iter()
        .enumerate()
        .map(|(i, m)| (key(m), i))
        .collect();
    let map: Vec<usize> = c
        .morphisms
        .iter()
        .map(|m| {
            d_index
                .get(&key(m))
                .copied()
                .ok_or_else(|| format!("no match for {}", m.label))
        })
        .collect::<std::result::Result<_, _>>()?;
    for (x, (&ic, &id)) in c.identities.iter().zip(&d.identities).enumerate() {
        if map[ic] != id {
            return Err(format!("identity of {} differs", c.objects[x]));
        }
    }
    let mut checked = 0;
    for g in 0..c.morphisms.len() {
        for f in 0..c.morphisms.len() {
            let Some(gf) = c.compose(g, f) else {
                continue;
            };
            let mapped = Element::from_terms(gf.terms().iter().map(|(h, v)| (map[*h], v.clone())));
            let other = d.compose(map[g], map[f]).unwrap_or_default();
            if mapped != other {
                return Err(format!(
                    "composite {} after {} differs",
                    c.morphisms[g].label, c.morphisms[f].label
                ));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// Checks `F(g∘f) = F(g)∘F(f)` on every in-window pair with both shifts defined.
pub fn shift_naturality(e: &EquivariantWindow) -> std::result::Result<usize, String> {
    let cat = &e.category;
    let mut checked = 0;
    for g in 0..cat.morphisms.len() {
        for f in 0..cat.morphisms.len() {
            let Some(gf) = cat.compose(g, f) else {
                continue;
            };
            let (Some(sg), Some(sf)) = (e.shift_morphism(g), e.shift_morphism(f)) else {
                continue;
            };
            let shifted: Option<Vec<(usize, Scalar)>> = gf
                .terms()
                .iter()
                .map(|(h, v)| e.shift_morphism(*h).map(|s| (s, v.clone())))
                .collect();
            let shifted = shifted.map(Element::from_terms);
            if shifted.as_ref() != cat.compose(sg, sf).as_ref() {
                return Err(format!(
                    "shift does not commute with {} after {}",
                    cat.morphisms[g].label, cat.morphisms[f].label
                ));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// Smash window, orbit category and comparison with the original.
pub fn roundtrip(c: &GradedCategory, lo: i64, hi: i64) -> Result<RoundTripReport> {
    let e = smash_window(c, lo, hi)?;
    let orbit = orbit_of_window(&e)?;
    let mut report = RoundTripReport {
        window: [lo, hi],
        objects: c.objects.len(),
        morphisms: c.morphisms.len(),
        compositions_checked: 0,
        skipped_compositions: orbit.skipped,
        shift_pairs_checked: 0,
        isomorphic: false,
        mismatch: None,
    };
    match shift_naturality(&e) {
        Ok(n) => report.shift_pairs_checked = n,
        Err(w) => {
            report.mismatch = Some(w);
            return Ok(report);
        }
    }
    match compare_categories(c, &orbit.category) {
        Ok(n) => {
            report.compositions_checked = n;
            report.isomorphic = true;
        }
        Err(w) => report.mismatch = Some(w),
    }
    Ok(report)
}

/// One slice of the Serre pairing: rows `C^p(x, y)`, columns `C^{ℓ(x)−p}(y, Sx)`.
#[derive(Clone, Debug)]
pub struct PairingSlice {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub matrix: DenseMatrix,
}

#[derive(Clone, Debug)]
pub struct SerreData {
    /// Object permutation.
    pub s: Vec<usize>,
    /// Projected degree adjuster.
    pub ell: Vec<i64>,
    /// The twisted automorphism, acting on morphisms.
    pub functor: LinearMap,
    /// Image of `1 ∈ Z` under the character.
    pub chi: Scalar,
    /// `κ(f)(g) = λ(g∘f)` per `(x, y, p)`.
    pub kappa: BTreeMap<(usize, usize, i64), PairingSlice>,
}

impl SerreData {
    fn pairing(&self, x: usize, y: usize, p: i64, f: &Element, g: &Element) -> Scalar {
        let field = self.chi.field();
        let Some(slice) = self.kappa.get(&(x, y, p)) else {
            return field.zero();
        };
        let mut acc = field.zero();
        for (r, &fr) in slice.rows.iter().enumerate() {
            let Some(a) = f.coeff(fr) else { continue };
            for (c, &gc) in slice.cols.iter().enumerate() {
                let Some(b) = g.coeff(gc) else { continue };
                acc = &acc + &(&(a * b) * slice.matrix.get(r, c));
            }
        }
        acc
    }
}

/// The graded Serre structure induced by a Frobenius form and a twisted
/// degree-adjusted Nakayama automorphism on the base category of its algebra.
pub fn serre_structure(
    alg: &FiniteDimAlgebra,
    c: &GradedCategory,
    form: &FrobeniusForm,
    twisted: &DegreeAdjusted,
    chi: &Scalar,
) -> SerreData {
    let pres = alg.presentation();
    let ell: Vec<i64> = twisted.ell.iter().map(|l| pres.project(l)).collect();
    let n = c.objects.len();
    let mut kappa = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            let degrees: BTreeSet<i64> = c
                .morphisms
                .iter()
                .filter(|m| m.source == x && m.target == y)
                .map(|m| m.degree)
                .collect();
            for p in degrees {
                let rows = c.hom(x, y, p).to_vec();
                let cols = c.hom(y, twisted.perm[x], ell[x] - p).to_vec();
                let mut matrix = DenseMatrix::zeros(c.field, rows.len(), cols.len());
                for (r, &f) in rows.iter().enumerate() {
                    for (k, &g) in cols.iter().enumerate() {
                        matrix.set(r, k, form.pair(alg, g, f));
                    }
                }
                kappa.insert((x, y, p), PairingSlice { rows, cols, matrix });
            }
        }
    }
    SerreData {
        s: twisted.perm.clone(),
        ell,
        functor: twisted.alpha.clone(),
        chi: chi.clone(),
        kappa,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub passed: bool,
    pub checked: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckOutcome {
    fn pass(checked: usize) -> Self {
        CheckOutcome {
            passed: true,
            checked,
            witness: None,
        }
    }

    fn fail(checked: usize, witness: String) -> Self {
        CheckOutcome {
            passed: false,
            checked,
            witness: Some(witness),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerreReport {
    pub nondegenerate: CheckOutcome,
    /// `κ(h∘f)(g) = κ(f)(g∘h)`.
    pub naturality_target: CheckOutcome,
    /// `κ(f∘e)(g) = χ(deg e)^{-1} κ(f)(S(e)∘g)`.
    pub naturality_source: CheckOutcome,
}

impl SerreReport {
    pub fn passed(&self) -> bool {
        self.nondegenerate.passed && self.naturality_target.passed && self.naturality_source.passed
    }
}

/// Exhaustive check of nondegeneracy and both naturality identities.
pub fn verify_serre(c: &GradedCategory, sd: &SerreData) -> SerreReport {
    let field = c.field;
    let n = c.objects.len();
    let basis = |i: usize| Element::basis(i, field);

    let mut nondegenerate = CheckOutcome::pass(0);
    for (&(x, y, p), slice) in &sd.kappa {
        let ok =
            slice.rows.len() == slice.cols.len() && linalg::rank(&slice.matrix) == slice.rows.len();
        if !ok {
            nondegenerate = CheckOutcome::fail(
                nondegenerate.checked,
                format!(
                    "kappa slice ({}, {}, {p}) is singular",
                    c.objects[x], c.objects[y]
                ),
            );
            break;
        }
        nondegenerate.checked += 1;
    }

    let label = |i: usize| c.morphisms[i].label.as_str();
    let chi_pow = |p: i64| sd.chi.pow(p).expect("character value is nonzero");

    let mut target = CheckOutcome::pass(0);
    'outer: for x in 0..n {
        let sx = sd.s[x];
        for (f, mf) in c
            .morphisms
            .iter()
            .enumerate()
            .filter(|(_, m)| m.source == x)
        {
            for (h, mh) in c
                .morphisms
                .iter()
                .enumerate()
                .filter(|(_, m)| m.source == mf.target)
            {
                let z = mh.target;
                let q = mf.degree + mh.degree;
                let hf = c.compose(h, f).unwrap_or_default();
                for &g in c.hom(z, sx, sd.ell[x] - q) {
                    let lhs = sd.pairing(x, z, q, &hf, &basis(g));
                    let gh = c.compose(g, h).unwrap_or_default();
                    let rhs = sd.pairing(x, mf.target, mf.degree, &basis(f), &gh);
                    if lhs != rhs {
                        target = CheckOutcome::fail(
                            target.checked,
                            format!(
                                "f = {}, h = {}, g = {}: {lhs} != {rhs}",
                                label(f),
                                label(h),
                                label(g)
                            ),
                        );
                        break 'outer;
                    }
                    target.checked += 1;
                }
            }
        }
    }

    let mut source = CheckOutcome::pass(0);
    'outer: for (e, me) in c.morphisms.iter().enumerate() {
        let (w, x) = (me.source, me.target);
        let se = &sd.functor.columns[e];
        let scale = chi_pow(me.degree).inv().expect("nonzero");
        for (f, mf) in c
            .morphisms
            .iter()
            .enumerate()
            .filter(|(_, m)| m.source == x)
        {
            let y = mf.target;
            let q = me.degree + mf.degree;
            let fe = c.compose(f, e).unwrap_or_default();
            for &g in c.hom(y, sd.s[w], sd.ell[w] - q) {
                let lhs = sd.pairing(w, y, q, &fe, &basis(g));
                let seg = c.compose_elements(se, &basis(g));
                let rhs = &scale * &sd.pairing(x, y, mf.degree, &basis(f), &seg);
                if lhs != rhs {
                    source = CheckOutcome::fail(
                        source.checked,
                        format!(
                            "e = {}, f = {}, g = {}: {lhs} != {rhs}",
                            label(e),
                            label(f),
                            label(g)
                        ),
                    );
                    break 'outer;
                }
                source.checked += 1;
            }
        }
    }

    SerreReport {
        nondegenerate,
        naturality_target: target,
        naturality_source: source,
    }
}

/// Adds `delta` to one entry of one `κ` slice.
pub fn corrupt_kappa(
    sd: &mut SerreData,
    slice: (usize, usize, i64),
    row: usize,
    col: usize,
    delta: &Scalar,
) -> bool {
    let Some(s) = sd.kappa.get_mut(&slice) else {
        return false;
    };
    if row >= s.rows.len() || col >= s.cols.len() {
        return false;
    }
    let v = s.matrix.get(row, col) + delta;
    s.matrix.set(row, col, v);
    true
}
