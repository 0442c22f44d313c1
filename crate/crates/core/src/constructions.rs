//! Builders for Dynkin preprojective algebras, higher type A algebras and
//! Jacobi algebras of quivers with potential.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{FcyError, Result};
use crate::quiver::{Degree, Presentation, Quiver, Relation};

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DynkinType {
    A,
    D,
    E,
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DynkinType::A => "A",
            DynkinType::D => "D",
            DynkinType::E => "E",
        };
        f.write_str(s)
    }
}

impl FromStr for DynkinType {
    type Err = FcyError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(DynkinType::A),
            "D" | "d" => Ok(DynkinType::D),
            "E" | "e" => Ok(DynkinType::E),
            other => Err(FcyError::InvalidDynkin {
                ty: other.to_string(),
                n: 0,
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynkinData {
    pub ty: DynkinType,
    pub n: usize,
    pub coxeter: usize,
    pub positive_roots: usize,
    /// Diagram automorphism on 0-based vertex indices.
    pub rho: Vec<usize>,
    /// Undirected edges as 0-based vertex pairs, in arrow order.
    pub edges: Vec<(usize, usize)>,
}

impl DynkinData {
    pub fn name(&self) -> String {
        format!("{}{}", self.ty, self.n)
    }

    pub fn rho_is_identity(&self) -> bool {
        self.rho.iter().enumerate().all(|(i, &r)| i == r)
    }
}

fn dynkin_edges(ty: DynkinType, n: usize) -> Option<Vec<(usize, usize)>> {
    let chain = |len: usize| (1..len).map(|i| (i, i + 1)).collect::<Vec<_>>();
    let edges = match ty {
        DynkinType::A if n >= 1 => chain(n),
        DynkinType::D if n >= 4 => {
            let mut e = chain(n - 1);
            e.push((n - 2, n));
            e
        }
        DynkinType::E if (6..=8).contains(&n) => {
            let mut e = chain(n - 1);
            let branch = match n {
                6 => 3,
                7 => 4,
                _ => 5,
            };
            e.push((branch, n));
            e
        }
        _ => return None,
    };
    Some(edges.into_iter().map(|(a, b)| (a - 1, b - 1)).collect())
}

fn dynkin_rho(ty: DynkinType, n: usize) -> Vec<usize> {
    let mut rho: Vec<usize> = (0..n).collect();
    match ty {
        DynkinType::A => {
            for (i, r) in rho.iter_mut().enumerate() {
                *r = n - 1 - i;
            }
        }
        DynkinType::D if n % 2 == 1 => rho.swap(n - 2, n - 1),
        DynkinType::E if n == 6 => {
            rho.swap(0, 4);
            rho.swap(1, 3);
        }
        _ => {}
    }
    rho
}

/// Dynkin quiver with vertices `1..n` and arrows `a1, a2, ...` one per edge.
///
/// `orientation[k]` says whether edge `k` points toward its higher label;
/// by default every edge does.
pub fn dynkin(
    ty: DynkinType,
    n: usize,
    orientation: Option<&[bool]>,
) -> Result<(Quiver, DynkinData)> {
    let edges = dynkin_edges(ty, n).ok_or_else(|| FcyError::InvalidDynkin {
        ty: ty.to_string(),
        n,
    })?;
    if let Some(o) = orientation {
        if o.len() != edges.len() {
            return Err(FcyError::Malformed {
                field: "orientation".into(),
                message: format!("{} entries for {} edges", o.len(), edges.len()),
            });
        }
    }
    let mut q = Quiver::new();
    for v in 1..=n {
        q.add_vertex(v.to_string())?;
    }
    for (k, &(a, b)) in edges.iter().enumerate() {
        let forward = orientation.is_none_or(|o| o[k]);
        let (s, t) = if forward { (a, b) } else { (b, a) };
        q.add_arrow(format!("a{}", k + 1), s, t)?;
    }
    let (positive_roots, coxeter) = match ty {
        DynkinType::A => (n * (n + 1) / 2, n + 1),
        DynkinType::D => (n * (n - 1), 2 * n - 2),
        DynkinType::E => match n {
            6 => (36, 12),
            7 => (63, 18),
            _ => (120, 30),
        },
    };
    Ok((
        q,
        DynkinData {
            ty,
            n,
            coxeter,
            positive_roots,
            rho: dynkin_rho(ty, n),
            edges,
        },
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DoubleGrading {
    /// Original arrows in degree 0, starred arrows in degree 1.
    #[default]
    Tensor,
    /// Every arrow in degree 1.
    PathLength,
}

/// Doubled quiver: arrow `k` of `q` keeps index `k`, its reverse `k*` gets index `m + k`.
pub fn double_quiver(q: &Quiver, grading: DoubleGrading) -> (Quiver, Vec<Degree>) {
    let mut d = Quiver::new();
    for v in q.vertices() {
        d.add_vertex(v.clone()).expect("fresh vertex");
    }
    let mut degrees = Vec::new();
    let (orig, star) = match grading {
        DoubleGrading::Tensor => (0, 1),
        DoubleGrading::PathLength => (1, 1),
    };
    for a in q.arrows() {
        d.add_arrow(a.id.clone(), a.source, a.target)
            .expect("fresh arrow");
        degrees.push(vec![orig]);
    }
    for a in q.arrows() {
        d.add_arrow(format!("{}*", a.id), a.target, a.source)
            .expect("fresh arrow");
        degrees.push(vec![star]);
    }
    (d, degrees)
}

/// Preprojective relations: at each vertex, the component of `Σ (a a* − a* a)`.
pub fn preprojective_relations(q: &Quiver) -> Vec<Relation> {
    let m = q.arrow_count();
    let mut rels = Vec::new();
    for v in 0..q.vertex_count() {
        let mut terms = Vec::new();
        for (k, a) in q.arrows().iter().enumerate() {
            if a.target == v {
                terms.push((int(1), vec![m + k, k]));
            }
            if a.source == v {
                terms.push((int(-1), vec![k, m + k]));
            }
        }
        if !terms.is_empty() {
            rels.push(Relation::normalized(terms));
        }
    }
    rels
}

/// Classical preprojective algebra of an acyclic quiver, tensor graded.
pub fn classical_preprojective(q: &Quiver) -> Result<Presentation> {
    preprojective_with_grading(q, DoubleGrading::Tensor)
}

pub fn preprojective_with_grading(q: &Quiver, grading: DoubleGrading) -> Result<Presentation> {
    if !q.is_acyclic() {
        return Err(FcyError::CyclicQuiver);
    }
    let (d, degrees) = double_quiver(q, grading);
    Presentation::new(d, 1, degrees, preprojective_relations(q))
}

fn type_a_label(x: &[i64]) -> String {
    x.iter().map(i64::to_string).collect::<Vec<_>>().join(".")
}

fn simplex_points(dim: usize, total: i64) -> Vec<Vec<i64>> {
    if dim == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in simplex_points(dim - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Direction vectors `f_1, ..., f_{d+1}` of the higher type A quiver.
pub fn type_a_directions(d: usize) -> Vec<Vec<i64>> {
    (1..=d + 1)
        .map(|i| {
            let mut f = vec![0; d + 1];
            if i <= d {
                f[i] = 1;
                f[i - 1] = -1;
            } else {
                f[0] = 1;
                f[d] = -1;
            }
            f
        })
        .collect()
}

/// Higher type A presentation with vertices `x ∈ Z^{d+1}_{≥0}`, `Σx = s−1`.
///
/// Vertex ids are the coordinates joined by dots; arrow `α_{i,x}` is named
/// `a{i}@{x}` and has degree `e_i`. The attached projection reads the last
/// coordinate.
pub fn higher_type_a(d: usize, s: usize) -> Result<Presentation> {
    if d < 1 || s < 2 {
        return Err(FcyError::Malformed {
            field: "typeA".into(),
            message: format!("need d >= 1 and s >= 2, got d = {d}, s = {s}"),
        });
    }
    let points = simplex_points(d + 1, s as i64 - 1);
    let mut q = Quiver::new();
    for x in &points {
        q.add_vertex(type_a_label(x))?;
    }
    let f = type_a_directions(d);
    let shift = |x: &[i64], v: &[i64]| -> Option<Vec<i64>> {
        let y: Vec<i64> = x.iter().zip(v).map(|(a, b)| a + b).collect();
        y.iter().all(|&c| c >= 0).then_some(y)
    };
    let mut degrees = Vec::new();
    let mut arrow_of = std::collections::HashMap::new();
    for x in &points {
        for i in 0..=d {
            if let Some(y) = shift(x, &f[i]) {
                let src = q.vertex(&type_a_label(x)).unwrap();
                let tgt = q.vertex(&type_a_label(&y)).unwrap();
                let idx = q.add_arrow(format!("a{}@{}", i + 1, type_a_label(x)), src, tgt)?;
                let mut deg = vec![0; d + 1];
                deg[i] = 1;
                degrees.push(deg);
                arrow_of.insert((i, x.clone()), idx);
            }
        }
    }
    let mut relations = Vec::new();
    for x in &points {
        for i in 0..=d {
            for j in 0..=d {
                if i == j {
                    continue;
                }
                let Some(xi) = shift(x, &f[i]) else {
                    continue;
                };
                if shift(&xi, &f[j]).is_none() {
                    continue;
                }
                let first = vec![arrow_of[&(i, x.clone())], arrow_of[&(j, xi)]];
                match shift(x, &f[j]) {
                    Some(xj) => {
                        if i < j {
                            let second = vec![arrow_of[&(j, x.clone())], arrow_of[&(i, xj)]];
                            relations.push(Relation::normalized(vec![
                                (int(1), first),
                                (int(-1), second),
                            ]));
                        }
                    }
                    None => {
                        relations.push(Relation::normalized(vec![(int(1), first)]));
                    }
                }
            }
        }
    }
    Presentation::new(q, d + 1, degrees, relations)
}

/// The rotation `x ↦ (x_{d+1}, x_1, ..., x_d)` on higher type A vertices.
pub fn type_a_rotation(x: &[i64]) -> Vec<i64> {
    let mut y = Vec::with_capacity(x.len());
    y.push(*x.last().unwrap());
    y.extend_from_slice(&x[..x.len() - 1]);
    y
}

/// A formal sum of cycles, each stored at its least rotation.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Potential {
    pub terms: Vec<(BigRational, Vec<usize>)>,
}

fn least_rotation(q: &Quiver, cycle: &[usize]) -> Vec<usize> {
    (0..cycle.len())
        .map(|r| {
            let mut c = cycle[r..].to_vec();
            c.extend_from_slice(&cycle[..r]);
            c
        })
        .min_by(|a, b| {
            let ka: Vec<&str> = a.iter().map(|&i| q.arrows()[i].id.as_str()).collect();
            let kb: Vec<&str> = b.iter().map(|&i| q.arrows()[i].id.as_str()).collect();
            ka.cmp(&kb)
        })
        .unwrap()
}

impl Potential {
    pub fn new(q: &Quiver, cycles: Vec<(BigRational, Vec<usize>)>) -> Result<Self> {
        let mut canon = Vec::new();
        for (k, (c, path)) in cycles.into_iter().enumerate() {
            let closed = q.is_path(&path)
                && q.arrows()[path[0]].source == q.arrows()[*path.last().unwrap()].target;
            if !closed || path.len() < 2 {
                return Err(FcyError::Malformed {
                    field: format!("cycles[{k}].path"),
                    message: "not a cycle of length >= 2".into(),
                });
            }
            canon.push((c, least_rotation(q, &path)));
        }
        let merged = Relation::normalized(canon);
        Ok(Potential {
            terms: merged.terms,
        })
    }

    pub fn from_json(q: &Quiver, text: &str) -> Result<Self> {
        let file: PotentialFile = serde_json::from_str(text)?;
        let mut cycles = Vec::new();
        for (k, c) in file.cycles.iter().enumerate() {
            let coeff =
                crate::linalg::parse_rational(&c.coeff).map_err(|_| FcyError::Malformed {
                    field: format!("cycles[{k}].coeff"),
                    message: format!("cannot parse rational {:?}", c.coeff),
                })?;
            let path = ids_to_arrows(q, &c.path, &format!("cycles[{k}].path"))?;
            cycles.push((coeff, path));
        }
        Potential::new(q, cycles)
    }
}

fn ids_to_arrows(q: &Quiver, ids: &[String], field: &str) -> Result<Vec<usize>> {
    ids.iter()
        .map(|id| {
            q.arrow(id).ok_or_else(|| FcyError::UnknownArrow {
                field: field.to_string(),
                id: id.clone(),
            })
        })
        .collect()
}

#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct CycleSpec {
    pub coeff: String,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct PotentialFile {
    pub cycles: Vec<CycleSpec>,
}

#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct CutFile {
    pub cut: Vec<String>,
}

/// A set of arrow indices.
pub type Cut = BTreeSet<usize>;

pub fn cut_from_json(q: &Quiver, text: &str) -> Result<Cut> {
    let file: CutFile = serde_json::from_str(text)?;
    Ok(ids_to_arrows(q, &file.cut, "cut")?.into_iter().collect())
}

/// Sum over cycles and occurrences of `a` of the cycle opened after `a`.
pub fn cyclic_derivative(w: &Potential, a: usize) -> Relation {
    let mut terms = Vec::new();
    for (c, cycle) in &w.terms {
        for i in 0..cycle.len() {
            if cycle[i] == a {
                let mut p = cycle[i + 1..].to_vec();
                p.extend_from_slice(&cycle[..i]);
                terms.push((c.clone(), p));
            }
        }
    }
    Relation::normalized(terms)
}

/// Jacobi algebra `kQ/(∂_a W)` graded by the cut.
pub fn jacobi_presentation(q: &Quiver, w: &Potential, cut: &Cut) -> Result<Presentation> {
    for (_, cycle) in &w.terms {
        let hits = cycle.iter().filter(|a| cut.contains(a)).count();
        if hits != 1 {
            return Err(FcyError::CutNotConsistent {
                cycle: q.path_label(cycle),
                hits,
            });
        }
    }
    let degrees = (0..q.arrow_count())
        .map(|a| vec![i64::from(cut.contains(&a))])
        .collect();
    let relations = (0..q.arrow_count())
        .map(|a| cyclic_derivative(w, a))
        .collect();
    Presentation::new(q.clone(), 1, degrees, relations)
}

/// Removes the cut arrows and every relation that mentions one.
pub fn cut_subalgebra(p: &Presentation, cut: &Cut) -> Result<Presentation> {
    let old = &p.quiver;
    let mut q = Quiver::new();
    for v in old.vertices() {
        q.add_vertex(v.clone())?;
    }
    let mut remap = vec![None; old.arrow_count()];
    let mut degrees = Vec::new();
    for (k, a) in old.arrows().iter().enumerate() {
        if !cut.contains(&k) {
            remap[k] = Some(q.add_arrow(a.id.clone(), a.source, a.target)?);
            degrees.push(p.degrees[k].clone());
        }
    }
    let relations = p
        .relations
        .iter()
        .filter(|r| {
            !r.is_zero()
                && r.terms
                    .iter()
                    .all(|(_, path)| path.iter().all(|a| remap[*a].is_some()))
        })
        .map(|r| Relation {
            terms: r
                .terms
                .iter()
                .map(|(c, path)| (c.clone(), path.iter().map(|a| remap[*a].unwrap()).collect()))
                .collect(),
        })
        .collect();
    Presentation::new(q, p.grading_rank, degrees, relations)?.with_projection(p.projection.clone())
}

/// The arrows of a higher type A presentation in the last direction.
pub fn type_a_last_direction(p: &Presentation) -> Cut {
    let d = p.grading_rank;
    (0..p.quiver.arrow_count())
        .filter(|&a| p.degrees[a][d - 1] == 1)
        .collect()
}

const COBWEB_VERTICES: [&str; 15] = [
    "c1", "c2", "c3", "c4", "c5", "d1", "d2", "d3", "d4", "d5", "d6", "d7", "d8", "d9", "d10",
];

fn cobweb_arrows() -> Vec<(String, String)> {
    let c = |i: usize| format!("c{}", (i - 1) % 5 + 1);
    let dv = |j: usize| format!("d{}", (j - 1) % 10 + 1);
    let mut arrows = Vec::new();
    for i in 1..=5 {
        arrows.push((c(i), c(i + 1)));
    }
    for i in 1..=5 {
        arrows.push((dv(2 * i - 1), dv(2 * i)));
        arrows.push((dv(2 * i), c(i)));
        arrows.push((c(i), dv(2 * i - 1)));
    }
    for (s, t) in [(1, 10), (9, 8), (7, 6), (5, 4), (3, 2)] {
        arrows.push((dv(s), dv(t)));
    }
    arrows
}

/// The cobweb quiver with potential and its cut.
///
/// Arrows are named `s>t`. The potential is the pentagon plus the five
/// triangles minus the five quadrilaterals.
pub fn cobweb_builtin() -> (Quiver, Potential, Cut) {
    let mut q = Quiver::new();
    for v in COBWEB_VERTICES {
        q.add_vertex(v).expect("fresh vertex");
    }
    for (s, t) in cobweb_arrows() {
        q.add_arrow_between(format!("{s}>{t}"), &s, &t)
            .expect("fresh arrow");
    }
    let walk = |vs: &[&str]| -> Vec<usize> {
        (0..vs.len())
            .map(|i| {
                q.arrow(&format!("{}>{}", vs[i], vs[(i + 1) % vs.len()]))
                    .unwrap()
            })
            .collect()
    };
    let mut cycles = vec![(int(1), walk(&["c1", "c2", "c3", "c4", "c5"]))];
    for i in 1..=5 {
        let (a, b, c) = (
            format!("d{}", 2 * i - 1),
            format!("d{}", 2 * i),
            format!("c{i}"),
        );
        cycles.push((int(1), walk(&[&a, &b, &c])));
    }
    for quad in [
        ["c5", "c1", "d1", "d10"],
        ["c1", "c2", "d3", "d2"],
        ["c2", "c3", "d5", "d4"],
        ["c3", "c4", "d7", "d6"],
        ["c4", "c5", "d9", "d8"],
    ] {
        cycles.push((int(-1), walk(&quad)));
    }
    let w = Potential::new(&q, cycles).expect("cobweb cycles are closed");
    let cut = [
        "c1>c2", "d1>d2", "d3>d4", "d5>d6", "d7>d8", "d9>d10", "d1>d10", "d5>d4", "d7>d6", "d9>d8",
    ]
    .iter()
    .map(|id| q.arrow(id).unwrap())
    .collect();
    (q, w, cut)
}

/// The rotation `c_i ↦ c_{i+2}`, `d_j ↦ d_{j+4}` on cobweb vertex indices.
pub fn cobweb_rotation() -> Vec<usize> {
    let mut perm = Vec::with_capacity(15);
    for i in 0..5 {
        perm.push((i + 2) % 5);
    }
    for j in 0..10 {
        perm.push(5 + (j + 4) % 10);
    }
    perm
}

/// Predicted Nakayama automorphism of a Dynkin preprojective algebra.
///
/// Arrow images refer to the doubled quiver of [`double_quiver`]: each
/// entry is `(sign, arrow)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynkinNakayamaReference {
    pub vertex_perm: Vec<usize>,
    pub arrow_images: Vec<(i64, usize)>,
}

pub fn dynkin_nakayama_reference(q: &Quiver, data: &DynkinData) -> Result<DynkinNakayamaReference> {
    if q.vertex_count() != data.n || q.arrow_count() != data.edges.len() {
        return Err(FcyError::InvalidDynkin {
            ty: data.ty.to_string(),
            n: q.vertex_count(),
        });
    }
    let m = q.arrow_count();
    let rho = &data.rho;
    // ρ̄ on the doubled quiver
    let mut bar = vec![0usize; 2 * m];
    for (k, a) in q.arrows().iter().enumerate() {
        let (s, t) = (rho[a.source], rho[a.target]);
        let image = q
            .arrows()
            .iter()
            .position(|b| (b.source, b.target) == (s, t) || (b.source, b.target) == (t, s))
            .ok_or_else(|| FcyError::InvalidDynkin {
                ty: data.ty.to_string(),
                n: data.n,
            })?;
        let same = (q.arrows()[image].source, q.arrows()[image].target) == (s, t);
        bar[k] = if same { image } else { m + image };
        bar[m + k] = if same { m + image } else { image };
    }
    let mut arrow_images = Vec::with_capacity(2 * m);
    for k in 0..m {
        arrow_images.push((1, bar[k]));
    }
    for k in 0..m {
        let img = bar[m + k];
        let sign = if img >= m { -1 } else { 1 };
        arrow_images.push((sign, img));
    }
    Ok(DynkinNakayamaReference {
        vertex_perm: rho.clone(),
        arrow_images,
    })
}

/// Builtin families by versioned name: `dynkin:A:4`, `typeA:d=2:s=3`, `cobweb`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Dynkin(DynkinType, usize),
    TypeA { d: usize, s: usize },
    Cobweb,
}

pub const FAMILY_VERSION: &str = "v1";

impl Family {
    pub fn presentation(&self) -> Result<Presentation> {
        match self {
            Family::Dynkin(ty, n) => {
                let (q, _) = dynkin(*ty, *n, None)?;
                classical_preprojective(&q)
            }
            Family::TypeA { d, s } => higher_type_a(*d, *s),
            Family::Cobweb => {
                let (q, w, cut) = cobweb_builtin();
                jacobi_presentation(&q, &w, &cut)
            }
        }
    }

    /// The natural `d` of the family.
    pub fn default_d(&self) -> usize {
        match self {
            Family::Dynkin(..) => 1,
            Family::TypeA { d, .. } => *d,
            Family::Cobweb => 2,
        }
    }

    pub fn source(&self) -> String {
        format!("builtin:{FAMILY_VERSION}:{self}")
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Dynkin(ty, n) => write!(f, "dynkin:{ty}:{n}"),
            Family::TypeA { d, s } => write!(f, "typeA:d={d}:s={s}"),
            Family::Cobweb => write!(f, "cobweb"),
        }
    }
}

impl FromStr for Family {
    type Err = FcyError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || FcyError::Malformed {
            field: "family".into(),
            message: format!("unknown family {s:?}"),
        };
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["cobweb"] => Ok(Family::Cobweb),
            ["dynkin", ty, n] => {
                let ty: DynkinType = ty.parse()?;
                let n: usize = n.parse().map_err(|_| bad())?;
                dynkin_edges(ty, n).ok_or(FcyError::InvalidDynkin {
                    ty: ty.to_string(),
                    n,
                })?;
                Ok(Family::Dynkin(ty, n))
            }
            ["typeA", d, s] => {
                let d = d
                    .strip_prefix("d=")
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(bad)?;
                let s = s
                    .strip_prefix("s=")
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(bad)?;
                Ok(Family::TypeA { d, s })
            }
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dynkin_table() {
        let (_, a3) = dynkin(DynkinType::A, 3, None).unwrap();
        assert_eq!((a3.coxeter, a3.positive_roots), (4, 6));
        assert_eq!(a3.rho, vec![2, 1, 0]);
        let (_, d4) = dynkin(DynkinType::D, 4, None).unwrap();
        assert_eq!((d4.coxeter, d4.positive_roots), (6, 12));
        assert!(d4.rho_is_identity());
        let (_, e6) = dynkin(DynkinType::E, 6, None).unwrap();
        assert_eq!((e6.coxeter, e6.positive_roots), (12, 36));
        assert_eq!(e6.rho, vec![4, 3, 2, 1, 0, 5]);
        assert!(dynkin(DynkinType::D, 3, None).is_err());
        assert!(dynkin(DynkinType::E, 9, None).is_err());
    }

    #[test]
    fn coxeter_number_formula() {
        for (ty, n) in [
            (DynkinType::A, 1),
            (DynkinType::A, 5),
            (DynkinType::D, 4),
            (DynkinType::D, 7),
            (DynkinType::E, 6),
            (DynkinType::E, 7),
            (DynkinType::E, 8),
        ] {
            let (_, data) = dynkin(ty, n, None).unwrap();
            assert_eq!(data.coxeter * n, 2 * data.positive_roots, "{}", data.name());
            let twice: Vec<usize> = data.rho.iter().map(|&r| data.rho[r]).collect();
            assert_eq!(twice, (0..n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn doubled_a2() {
        let (q, _) = dynkin(DynkinType::A, 2, None).unwrap();
        let (d, deg) = double_quiver(&q, DoubleGrading::Tensor);
        assert_eq!(d.arrow_count(), 2);
        assert_eq!((d.arrows()[1].source, d.arrows()[1].target), (1, 0));
        assert_eq!(deg, vec![vec![0], vec![1]]);
        let empty = Quiver::new();
        assert_eq!(
            double_quiver(&empty, DoubleGrading::Tensor).0.arrow_count(),
            0
        );
    }

    #[test]
    fn a2_and_a3_relations() {
        let (q, _) = dynkin(DynkinType::A, 2, None).unwrap();
        let p = classical_preprojective(&q).unwrap();
        // vertex 1: −a a*-loop in traversal [a, a*]; vertex 2: [a*, a]
        assert_eq!(p.relations[0].terms, vec![(int(-1), vec![0, 1])]);
        assert_eq!(p.relations[1].terms, vec![(int(1), vec![1, 0])]);
        assert!(p.is_homogeneous());
        let (q, _) = dynkin(DynkinType::A, 3, None).unwrap();
        let p = classical_preprojective(&q).unwrap();
        let lens: Vec<usize> = p.relations.iter().map(|r| r.terms.len()).collect();
        assert_eq!(lens, vec![1, 2, 1]);
        let (q, _) = dynkin(DynkinType::A, 1, None).unwrap();
        assert!(classical_preprojective(&q).unwrap().relations.is_empty());
    }

    #[test]
    fn cyclic_quiver_rejected() {
        let mut q = Quiver::new();
        for v in ["1", "2"] {
            q.add_vertex(v).unwrap();
        }
        q.add_arrow(String::from("x"), 0, 1).unwrap();
        q.add_arrow(String::from("y"), 1, 0).unwrap();
        assert!(matches!(
            classical_preprojective(&q),
            Err(FcyError::CyclicQuiver)
        ));
    }

    #[test]
    fn type_a_triangle() {
        let p = higher_type_a(2, 2).unwrap();
        assert_eq!(p.quiver.vertex_count(), 3);
        assert_eq!(p.quiver.arrow_count(), 3);
        assert!(p.relations.iter().all(|r| r.terms.len() == 1));
        assert_eq!(p.relations.len(), 3);
        assert_eq!(p.projection, vec![0, 0, 1]);
    }

    #[test]
    fn type_a_rotation_is_compatible() {
        for d in 1..=3 {
            let f = type_a_directions(d);
            for x in simplex_points(d + 1, 3) {
                for i in 0..=d {
                    let lhs: Vec<i64> = type_a_rotation(&x)
                        .iter()
                        .zip(&f[(i + 1) % (d + 1)])
                        .map(|(a, b)| a + b)
                        .collect();
                    let shifted: Vec<i64> = x.iter().zip(&f[i]).map(|(a, b)| a + b).collect();
                    assert_eq!(lhs, type_a_rotation(&shifted));
                }
            }
        }
    }

    #[test]
    fn derivatives() {
        let mut q = Quiver::new();
        for v in ["1", "2", "3"] {
            q.add_vertex(v).unwrap();
        }
        let al = q.add_arrow_between("al", "1", "2").unwrap();
        let be = q.add_arrow_between("be", "2", "3").unwrap();
        let ga = q.add_arrow_between("ga", "3", "1").unwrap();
        let w = Potential::new(&q, vec![(int(1), vec![al, be, ga])]).unwrap();
        assert_eq!(
            cyclic_derivative(&w, al).terms,
            vec![(int(1), vec![be, ga])]
        );
        assert_eq!(
            cyclic_derivative(&w, be).terms,
            vec![(int(1), vec![ga, al])]
        );

        let mut q = Quiver::new();
        q.add_vertex("1").unwrap();
        let l = q.add_arrow_between("l", "1", "1").unwrap();
        let w = Potential::new(&q, vec![(int(1), vec![l, l])]).unwrap();
        assert_eq!(cyclic_derivative(&w, l).terms, vec![(int(2), vec![l])]);
    }

    #[test]
    fn potential_canonical_rotation() {
        let mut q = Quiver::new();
        for v in ["1", "2", "3"] {
            q.add_vertex(v).unwrap();
        }
        let x = q.add_arrow_between("x", "1", "2").unwrap();
        let y = q.add_arrow_between("y", "2", "3").unwrap();
        let z = q.add_arrow_between("z", "3", "1").unwrap();
        let w1 = Potential::new(&q, vec![(int(1), vec![y, z, x])]).unwrap();
        let w2 = Potential::new(&q, vec![(int(1), vec![z, x, y])]).unwrap();
        assert_eq!(w1, w2);
        assert_eq!(w1.terms[0].1, vec![x, y, z]);
    }

    #[test]
    fn cobweb_shape() {
        let (q, w, cut) = cobweb_builtin();
        assert_eq!(q.vertex_count(), 15);
        assert_eq!(q.arrow_count(), 25);
        assert_eq!(w.terms.len(), 11);
        assert_eq!(cut.len(), 10);
        for (_, cycle) in &w.terms {
            assert_eq!(cycle.iter().filter(|a| cut.contains(a)).count(), 1);
        }
        let p = jacobi_presentation(&q, &w, &cut).unwrap();
        assert!(p.is_homogeneous());
        assert_eq!(p.relations.len(), 25);
        let sub = cut_subalgebra(&p, &cut).unwrap();
        assert_eq!(sub.quiver.arrow_count(), 15);
        assert!(sub.relations.iter().all(|r| r
            .terms
            .iter()
            .all(|(_, path)| sub.path_degree(path) == vec![0])));
        let sigma = cobweb_rotation();
        let name = |i: usize| q.vertices()[i].as_str();
        assert_eq!(name(sigma[q.vertex("c1").unwrap()]), "c3");
        assert_eq!(name(sigma[q.vertex("d1").unwrap()]), "d5");
        assert_eq!(name(sigma[q.vertex("d2").unwrap()]), "d6");
    }

    #[test]
    fn inconsistent_cut() {
        let (q, w, mut cut) = cobweb_builtin();
        cut.remove(&q.arrow("c1>c2").unwrap());
        assert!(matches!(
            jacobi_presentation(&q, &w, &cut),
            Err(FcyError::CutNotConsistent { hits: 0, .. })
        ));
    }

    #[test]
    fn dynkin_reference_a2() {
        let (q, data) = dynkin(DynkinType::A, 2, None).unwrap();
        let b = dynkin_nakayama_reference(&q, &data).unwrap();
        assert_eq!(b.vertex_perm, vec![1, 0]);
        // a ↦ a*, a* ↦ a (a has tensor degree 0)
        assert_eq!(b.arrow_images, vec![(1, 1), (1, 0)]);
        let (q, data) = dynkin(DynkinType::D, 4, None).unwrap();
        let b = dynkin_nakayama_reference(&q, &data).unwrap();
        assert_eq!(b.vertex_perm, vec![0, 1, 2, 3]);
        assert!(b.arrow_images[3..].iter().all(|&(s, _)| s == -1));
    }

    #[test]
    fn family_names() {
        for name in ["dynkin:A:4", "typeA:d=2:s=3", "cobweb"] {
            let f: Family = name.parse().unwrap();
            assert_eq!(f.to_string(), name);
        }
        assert!("dynkin:D:3".parse::<Family>().is_err());
        assert!("nope".parse::<Family>().is_err());
    }
}
