//! Finite-dimensional quotients `kQ/I` with a normal-word basis.

use std::collections::{BTreeMap, HashMap};

use crate::error::{FcyError, Result};
use crate::groebner::{self, GroebnerBasis, Poly, Word};
use crate::linalg::{Field, Scalar};
use crate::quiver::{Degree, Path, Presentation};

/// Sparse vector over an algebra basis, sorted by index, without zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: Vec<(usize, Scalar)>,
}

impl Element {
    pub fn zero() -> Self {
        Element { terms: Vec::new() }
    }

    pub fn basis(i: usize, field: Field) -> Self {
        Element {
            terms: vec![(i, field.one())],
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, c) in terms {
            match acc.get_mut(&i) {
                Some(v) => *v = &*v + &c,
                None => {
                    acc.insert(i, c);
                }
            }
        }
        Element {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[(usize, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Option<&Scalar> {
        self.terms
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.terms[k].1)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.iter().map(|(i, _)| *i)
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) if a.0 == b.0 => {
                    let s = &a.1 + &b.1;
                    if !s.is_zero() {
                        out.push((a.0, s));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a.0 < b.0 => {
                    out.push(a.clone());
                    i += 1;
                }
                (Some(_), Some(b)) => {
                    out.push(b.clone());
                    j += 1;
                }
                (Some(a), None) => {
                    out.push(a.clone());
                    i += 1;
                }
                (None, Some(b)) => {
                    out.push(b.clone());
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Element { terms: out }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        Element {
            terms: self.terms.iter().map(|(i, v)| (*i, -v)).collect(),
        }
    }

    /// Dense coordinates over `n` basis elements.
    pub fn to_dense(&self, field: Field, n: usize) -> Vec<Scalar> {
        let mut v = vec![field.zero(); n];
        for (i, c) in &self.terms {
            v[*i] = c.clone();
        }
        v
    }
}

/// A linear endomorphism stored by the images of basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub columns: Vec<Element>,
}

impl LinearMap {
    pub fn identity(field: Field, n: usize) -> Self {
        LinearMap {
            columns: (0..n).map(|i| Element::basis(i, field)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn apply(&self, x: &Element) -> Element {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (j, c) in x.terms() {
            for (i, v) in self.columns[*j].terms() {
                let t = c * v;
                match acc.get_mut(i) {
                    Some(s) => *s = &*s + &t,
                    None => {
                        acc.insert(*i, t);
                    }
                }
            }
        }
        Element {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        LinearMap {
            columns: other.columns.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.columns
            .iter()
            .enumerate()
            .all(|(i, c)| c.terms().len() == 1 && c.terms()[0].0 == i && c.terms()[0].1.is_one())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub path: Path,
    pub source: usize,
    pub target: usize,
    pub degree: Degree,
    pub label: String,
}

/// A finite-dimensional quotient of a path algebra.
///
/// The basis starts with the vertex idempotents `e_v` (index `v`) followed
/// by normal words in length-lexicographic order. The product `x·y` is "`y`
/// then `x`" and is stored sparsely for composable pairs.
#[derive(Clone, Debug)]
pub struct FiniteDimAlgebra {
    presentation: Presentation,
    field: Field,
    basis: Vec<BasisElement>,
    index: HashMap<Vec<usize>, usize>,
    products: HashMap<(usize, usize), Element>,
    by_ends: HashMap<(usize, usize), Vec<usize>>,
}

fn rational_poly(
    field: Field,
    terms: &[(num_rational::BigRational, Vec<usize>)],
    rank: &[u32],
) -> Result<Poly> {
    let mut p = Poly::new();
    for (c, path) in terms {
        let c = field.from_ratio(c).ok_or_else(|| FcyError::Malformed {
            field: "relations".into(),
            message: format!("coefficient {c} has no image in {field}"),
        })?;
        let w = Word(path.iter().map(|&a| rank[a]).collect());
        let e = p.entry(w).or_insert_with(|| field.zero());
        *e = &*e + &c;
    }
    p.retain(|_, c| !c.is_zero());
    Ok(p)
}

/// Computes a Gröbner basis of the relation ideal and the normal-word basis of the quotient.
pub fn quotient_basis(
    pres: &Presentation,
    field: Field,
    max_len: usize,
) -> Result<FiniteDimAlgebra> {
    let q = &pres.quiver;
    let mut order: Vec<usize> = (0..q.arrow_count()).collect();
    order.sort_by(|&a, &b| q.arrows()[a].id.cmp(&q.arrows()[b].id));
    let mut rank = vec![0u32; q.arrow_count()];
    for (r, &a) in order.iter().enumerate() {
        rank[a] = r as u32;
    }
    let generators = pres
        .relations
        .iter()
        .map(|r| rational_poly(field, &r.terms, &rank))
        .collect::<Result<Vec<_>>>()?;
    let gb = groebner::complete(generators, max_len)?;

    let mut words: Vec<Vec<u32>> = Vec::new();
    let mut level: Vec<Vec<u32>> = order
        .iter()
        .map(|&a| vec![rank[a]])
        .filter(|w| gb.is_normal(w))
        .collect();
    let mut len = 1;
    while !level.is_empty() {
        let mut next = Vec::new();
        for w in &level {
            let end = q.arrows()[order[*w.last().unwrap() as usize]].target;
            for &a in &order {
                if q.arrows()[a].source != end {
                    continue;
                }
                let mut x = w.clone();
                x.push(rank[a]);
                if !gb.has_lead_suffix(&x) {
                    next.push(x);
                }
            }
        }
        words.append(&mut level);
        if len == max_len && !next.is_empty() {
            return Err(FcyError::DimensionBoundExceeded { max_len });
        }
        next.sort_by_key(|a| Word(a.clone()));
        level = next;
        len += 1;
    }
    build(pres, field, &gb, &order, &rank, words)
}

fn build(
    pres: &Presentation,
    field: Field,
    gb: &GroebnerBasis,
    order: &[usize],
    rank: &[u32],
    words: Vec<Vec<u32>>,
) -> Result<FiniteDimAlgebra> {
    let q = &pres.quiver;
    let mut basis = Vec::new();
    let mut index = HashMap::new();
    let mut rank_index: HashMap<Vec<u32>, usize> = HashMap::new();
    for v in 0..q.vertex_count() {
        let path = Path::Trivial(v);
        basis.push(BasisElement {
            label: path.label(q),
            path,
            source: v,
            target: v,
            degree: vec![0; pres.grading_rank],
        });
    }
    for w in words {
        let arrows: Vec<usize> = w.iter().map(|&r| order[r as usize]).collect();
        let path = Path::Arrows(arrows.clone());
        index.insert(arrows.clone(), basis.len());
        rank_index.insert(w, basis.len());
        basis.push(BasisElement {
            label: path.label(q),
            source: path.source(q),
            target: path.target(q),
            degree: pres.path_degree(&arrows),
            path,
        });
    }

    let to_element = |p: Poly| -> Element {
        Element::from_terms(p.into_iter().map(|(w, c)| (rank_index[&w.0], c)))
    };

    // left action of arrows: arrow_action[(b, a)] = a·b
    let mut arrow_action: HashMap<(usize, usize), Element> = HashMap::new();
    for (bi, b) in basis.iter().enumerate() {
        for a in 0..q.arrow_count() {
            if q.arrows()[a].source != b.target {
                continue;
            }
            let mut w: Vec<u32> = b.path.arrow_slice().iter().map(|&x| rank[x]).collect();
            w.push(rank[a]);
            let nf = gb.reduce(Poly::from([(Word(w), field.one())]));
            let e = to_element(nf);
            if !e.is_zero() {
                arrow_action.insert((bi, a), e);
            }
        }
    }

    let n = basis.len();
    let mut by_ends: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, b) in basis.iter().enumerate() {
        by_ends.entry((b.source, b.target)).or_default().push(i);
    }
    let mut products: HashMap<(usize, usize), Element> = HashMap::new();
    // x·y for x in basis order; prefixes of normal words are normal and come first
    for x in 0..n {
        let bx = &basis[x];
        let starts: Vec<usize> = (0..n).filter(|&y| basis[y].target == bx.source).collect();
        match &bx.path {
            Path::Trivial(_) => {
                for y in starts {
                    products.insert((x, y), Element::basis(y, field));
                }
            }
            Path::Arrows(arrows) => {
                let last = *arrows.last().unwrap();
                let prefix = if arrows.len() == 1 {
                    q.arrows()[last].source
                } else {
                    index[&arrows[..arrows.len() - 1].to_vec()]
                };
                for y in starts {
                    let Some(py) = products.get(&(prefix, y)) else {
                        continue;
                    };
                    let mut acc = Element::zero();
                    for (i, c) in py.terms() {
                        if let Some(e) = arrow_action.get(&(*i, last)) {
                            acc = acc.add(&e.scale(c));
                        }
                    }
                    if !acc.is_zero() {
                        products.insert((x, y), acc);
                    }
                }
            }
        }
    }
    log::debug!(
        "algebra of dimension {n} with {} nonzero basis products",
        products.len()
    );
    Ok(FiniteDimAlgebra {
        presentation: pres.clone(),
        field,
        basis,
        index,
        products,
        by_ends,
    })
}

impl FiniteDimAlgebra {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.presentation.quiver.vertex_count()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn is_homogeneous(&self) -> bool {
        self.presentation.is_homogeneous()
    }

    /// Basis index of the normal word with these arrows (traversal order).
    pub fn word_index(&self, arrows: &[usize]) -> Option<usize> {
        if arrows.is_empty() {
            return None;
        }
        self.index.get(arrows).copied()
    }

    pub fn arrow_index(&self, arrow: usize) -> usize {
        self.index[&vec![arrow]]
    }

    pub fn idempotent(&self, v: usize) -> usize {
        v
    }

    pub fn one(&self) -> Element {
        Element::from_terms((0..self.vertex_count()).map(|v| (v, self.field.one())))
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element::basis(i, self.field)
    }

    /// Basis indices of `e_target · A · e_source`.
    pub fn peirce(&self, source: usize, target: usize) -> &[usize] {
        self.by_ends
            .get(&(source, target))
            .map_or(&[], Vec::as_slice)
    }

    /// Product of basis elements `b_x · b_y`, `None` when zero.
    pub fn basis_product(&self, x: usize, y: usize) -> Option<&Element> {
        self.products.get(&(x, y))
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Element {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, a) in x.terms() {
            for (j, b) in y.terms() {
                if let Some(p) = self.products.get(&(*i, *j)) {
                    let ab = a * b;
                    for (k, c) in p.terms() {
                        let t = &ab * c;
                        match acc.get_mut(k) {
                            Some(s) => *s = &*s + &t,
                            None => {
                                acc.insert(*k, t);
                            }
                        }
                    }
                }
            }
        }
        Element::from_terms(acc)
    }

    /// Normal form of an arbitrary path (traversal order).
    pub fn path_element(&self, arrows: &[usize]) -> Element {
        let mut e = match arrows.first() {
            None => return Element::zero(),
            Some(&a) => self.basis_element(self.arrow_index(a)),
        };
        for &a in &arrows[1..] {
            e = self.multiply(&self.basis_element(self.arrow_index(a)), &e);
        }
        e
    }

    pub fn is_connected(&self) -> bool {
        self.presentation.quiver.is_connected()
    }

    /// Projected integer degree of a basis element.
    pub fn z_degree(&self, i: usize) -> i64 {
        self.presentation.project(&self.basis[i].degree)
    }

    /// Graded dimensions `dim e_t A^p e_s` keyed by vertex labels and projected degree.
    pub fn graded_dimensions(&self) -> BTreeMap<(String, String, i64), usize> {
        let names = self.presentation.quiver.vertices();
        let mut out = BTreeMap::new();
        for (i, b) in self.basis.iter().enumerate() {
            *out.entry((
                names[b.source].clone(),
                names[b.target].clone(),
                self.z_degree(i),
            ))
            .or_insert(0) += 1;
        }
        out
    }

    /// Labels of the normal words, as paths of arrow identifiers.
    pub fn basis_labels(&self) -> Vec<String> {
        self.basis.iter().map(|b| b.label.clone()).collect()
    }

    pub fn zero_dense(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim()]
    }
}
