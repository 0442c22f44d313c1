//! Quivers, paths and graded presentations `kQ/I`.
//!
//! Paths are stored in traversal order: the first arrow applied comes
//! first. Composition follows the usual convention, `g ∘ f` means "`f`
//! then `g`", so composing on the left appends to the traversal sequence.

use std::collections::{HashMap, VecDeque};

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{FcyError, Result};
use crate::linalg::parse_rational;

pub type Degree = Vec<i64>;

pub fn add_degrees(a: &[i64], b: &[i64]) -> Degree {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_degrees(a: &[i64], b: &[i64]) -> Degree {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

impl Quiver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, id: impl Into<String>) -> Result<usize> {
        let id = id.into();
        if self.vertex_index.contains_key(&id) || self.arrow_index.contains_key(&id) {
            return Err(FcyError::DuplicateId(id));
        }
        self.vertex_index.insert(id.clone(), self.vertices.len());
        self.vertices.push(id);
        Ok(self.vertices.len() - 1)
    }

    pub fn add_arrow(
        &mut self,
        id: impl Into<String>,
        source: usize,
        target: usize,
    ) -> Result<usize> {
        let id = id.into();
        if self.vertex_index.contains_key(&id) || self.arrow_index.contains_key(&id) {
            return Err(FcyError::DuplicateId(id));
        }
        assert!(source < self.vertices.len() && target < self.vertices.len());
        self.arrow_index.insert(id.clone(), self.arrows.len());
        self.arrows.push(Arrow { id, source, target });
        Ok(self.arrows.len() - 1)
    }

    pub fn add_arrow_between(
        &mut self,
        id: impl Into<String>,
        source: &str,
        target: &str,
    ) -> Result<usize> {
        let s = self.vertex_or_err(source, "arrow source")?;
        let t = self.vertex_or_err(target, "arrow target")?;
        self.add_arrow(id, s, t)
    }

    fn vertex_or_err(&self, id: &str, field: &str) -> Result<usize> {
        self.vertex(id).ok_or_else(|| FcyError::UnknownVertex {
            field: field.to_string(),
            id: id.to_string(),
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn arrow(&self, id: &str) -> Option<usize> {
        self.arrow_index.get(id).copied()
    }

    pub fn is_acyclic(&self) -> bool {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    queue.push_back(a.target);
                }
            }
        }
        seen == n
    }

    /// Connectivity of the underlying undirected graph.
    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); n];
        for a in &self.arrows {
            adj[a.source].push(a.target);
            adj[a.target].push(a.source);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Checks that consecutive arrows compose.
    pub fn is_path(&self, arrows: &[usize]) -> bool {
        !arrows.is_empty()
            && arrows
                .windows(2)
                .all(|w| self.arrows[w[0]].target == self.arrows[w[1]].source)
    }

    pub fn path_label(&self, arrows: &[usize]) -> String {
        arrows
            .iter()
            .map(|&a| self.arrows[a].id.as_str())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// A trivial path at a vertex or a composable arrow sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Path {
    Trivial(usize),
    Arrows(Vec<usize>),
}

impl Path {
    pub fn arrows(q: &Quiver, arrows: Vec<usize>) -> Option<Path> {
        q.is_path(&arrows).then_some(Path::Arrows(arrows))
    }

    pub fn source(&self, q: &Quiver) -> usize {
        match self {
            Path::Trivial(v) => *v,
            Path::Arrows(a) => q.arrows[a[0]].source,
        }
    }

    pub fn target(&self, q: &Quiver) -> usize {
        match self {
            Path::Trivial(v) => *v,
            Path::Arrows(a) => q.arrows[*a.last().unwrap()].target,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Path::Trivial(_) => 0,
            Path::Arrows(a) => a.len(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, Path::Trivial(_))
    }

    pub fn arrow_slice(&self) -> &[usize] {
        match self {
            Path::Trivial(_) => &[],
            Path::Arrows(a) => a,
        }
    }

    pub fn label(&self, q: &Quiver) -> String {
        match self {
            Path::Trivial(v) => format!("e:{}", q.vertices[*v]),
            Path::Arrows(a) => q.path_label(a),
        }
    }
}

/// `g ∘ f`: traverse `f`, then `g`.
pub fn compose_paths(q: &Quiver, g: &Path, f: &Path) -> Option<Path> {
    if f.target(q) != g.source(q) {
        return None;
    }
    Some(match (g, f) {
        (Path::Trivial(_), _) => f.clone(),
        (_, Path::Trivial(_)) => g.clone(),
        (Path::Arrows(ga), Path::Arrows(fa)) => {
            Path::Arrows(fa.iter().chain(ga).copied().collect())
        }
    })
}

/// A linear combination of parallel paths of length at least two.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Relation {
    pub terms: Vec<(BigRational, Vec<usize>)>,
}

impl Relation {
    /// Merges repeated paths and drops zero coefficients, keeping first-seen order.
    pub fn normalized(terms: Vec<(BigRational, Vec<usize>)>) -> Relation {
        let mut order: Vec<Vec<usize>> = Vec::new();
        let mut acc: HashMap<Vec<usize>, BigRational> = HashMap::new();
        for (c, p) in terms {
            match acc.get_mut(&p) {
                Some(v) => *v += c,
                None => {
                    order.push(p.clone());
                    acc.insert(p, c);
                }
            }
        }
        Relation {
            terms: order
                .into_iter()
                .filter_map(|p| {
                    let c = acc.remove(&p).unwrap();
                    (!c.is_zero()).then_some((c, p))
                })
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `kQ/I` with a `Z^r` grading on arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub quiver: Quiver,
    pub grading_rank: usize,
    pub degrees: Vec<Degree>,
    pub relations: Vec<Relation>,
    /// Linear map `Z^r -> Z` used wherever a single integer degree is needed.
    pub projection: Vec<i64>,
    homogeneous: bool,
}

impl Presentation {
    pub fn new(
        quiver: Quiver,
        grading_rank: usize,
        degrees: Vec<Degree>,
        relations: Vec<Relation>,
    ) -> Result<Self> {
        if grading_rank == 0 {
            return Err(FcyError::Malformed {
                field: "grading_rank".into(),
                message: "grading rank must be at least 1".into(),
            });
        }
        if degrees.len() != quiver.arrow_count() {
            return Err(FcyError::Malformed {
                field: "arrows".into(),
                message: format!(
                    "{} degrees for {} arrows",
                    degrees.len(),
                    quiver.arrow_count()
                ),
            });
        }
        for (i, d) in degrees.iter().enumerate() {
            if d.len() != grading_rank {
                return Err(FcyError::Malformed {
                    field: format!("arrows[{i}].degree"),
                    message: format!("length {} but grading rank is {grading_rank}", d.len()),
                });
            }
        }
        let mut projection = vec![0; grading_rank];
        projection[grading_rank - 1] = 1;
        let mut p = Presentation {
            quiver,
            grading_rank,
            degrees,
            relations: Vec::new(),
            projection,
            homogeneous: true,
        };
        let mut homogeneous = true;
        let mut rels = Vec::with_capacity(relations.len());
        for (ri, rel) in relations.into_iter().enumerate() {
            let rel = Relation::normalized(rel.terms);
            let mut ends = None;
            let mut degree: Option<Degree> = None;
            for (ti, (_, path)) in rel.terms.iter().enumerate() {
                if path.len() < 2 {
                    return Err(FcyError::NonAdmissibleRelation {
                        relation: ri,
                        term: ti,
                        len: path.len(),
                    });
                }
                if path.iter().any(|&a| a >= p.quiver.arrow_count()) || !p.quiver.is_path(path) {
                    return Err(FcyError::Malformed {
                        field: format!("relations[{ri}][{ti}].path"),
                        message: "arrows do not compose".into(),
                    });
                }
                let e = (
                    p.quiver.arrows[path[0]].source,
                    p.quiver.arrows[*path.last().unwrap()].target,
                );
                if *ends.get_or_insert(e) != e {
                    return Err(FcyError::Malformed {
                        field: format!("relations[{ri}][{ti}].path"),
                        message: "terms are not parallel".into(),
                    });
                }
                let d = p.path_degree(path);
                if *degree.get_or_insert_with(|| d.clone()) != d {
                    homogeneous = false;
                }
            }
            rels.push(rel);
        }
        p.relations = rels;
        p.homogeneous = homogeneous;
        Ok(p)
    }

    pub fn with_projection(mut self, projection: Vec<i64>) -> Result<Self> {
        if projection.len() != self.grading_rank {
            return Err(FcyError::Malformed {
                field: "projection".into(),
                message: format!(
                    "length {} but grading rank is {}",
                    projection.len(),
                    self.grading_rank
                ),
            });
        }
        self.projection = projection;
        Ok(self)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn path_degree(&self, path: &[usize]) -> Degree {
        let mut d = vec![0; self.grading_rank];
        for &a in path {
            for (x, y) in d.iter_mut().zip(&self.degrees[a]) {
                *x += y;
            }
        }
        d
    }

    pub fn project(&self, degree: &[i64]) -> i64 {
        degree
            .iter()
            .zip(&self.projection)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PresentationFile = serde_json::from_str(text)?;
        file.into_presentation()
    }

    pub fn to_file(&self) -> PresentationFile {
        let q = &self.quiver;
        PresentationFile {
            vertices: q.vertices.clone(),
            arrows: q
                .arrows
                .iter()
                .zip(&self.degrees)
                .map(|(a, d)| ArrowSpec {
                    id: a.id.clone(),
                    from: q.vertices[a.source].clone(),
                    to: q.vertices[a.target].clone(),
                    degree: d.clone(),
                })
                .collect(),
            grading_rank: self.grading_rank,
            relations: self
                .relations
                .iter()
                .map(|r| {
                    r.terms
                        .iter()
                        .map(|(c, p)| TermSpec {
                            coeff: format_rational(c),
                            path: PathSpec::Arrows(
                                p.iter().map(|&a| q.arrows[a].id.clone()).collect(),
                            ),
                        })
                        .collect()
                })
                .collect(),
            projection: Some(self.projection.clone()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("presentation serializes")
    }
}

pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub id: String,
    pub from: String,
    pub to: String,
    pub degree: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PathSpec {
    Arrows(Vec<String>),
    Vertex { vertex: String },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermSpec {
    pub coeff: String,
    pub path: PathSpec,
}

/// On-disk form of a presentation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresentationFile {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    pub grading_rank: usize,
    #[serde(default)]
    pub relations: Vec<Vec<TermSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projection: Option<Vec<i64>>,
}

impl PresentationFile {
    pub fn into_presentation(self) -> Result<Presentation> {
        let mut q = Quiver::new();
        for v in &self.vertices {
            q.add_vertex(v.clone())?;
        }
        let mut degrees = Vec::new();
        for (i, a) in self.arrows.iter().enumerate() {
            let s = q.vertex(&a.from).ok_or_else(|| FcyError::UnknownVertex {
                field: format!("arrows[{i}].from"),
                id: a.from.clone(),
            })?;
            let t = q.vertex(&a.to).ok_or_else(|| FcyError::UnknownVertex {
                field: format!("arrows[{i}].to"),
                id: a.to.clone(),
            })?;
            q.add_arrow(a.id.clone(), s, t)?;
            degrees.push(a.degree.clone());
        }
        let mut relations = Vec::new();
        for (ri, rel) in self.relations.iter().enumerate() {
            let mut terms = Vec::new();
            for (ti, term) in rel.iter().enumerate() {
                let coeff = parse_rational(&term.coeff).map_err(|_| FcyError::Malformed {
                    field: format!("relations[{ri}][{ti}].coeff"),
                    message: format!("cannot parse rational {:?}", term.coeff),
                })?;
                let path = match &term.path {
                    PathSpec::Vertex { .. } => Vec::new(),
                    PathSpec::Arrows(ids) => ids
                        .iter()
                        .map(|id| {
                            q.arrow(id).ok_or_else(|| FcyError::UnknownArrow {
                                field: format!("relations[{ri}][{ti}].path"),
                                id: id.clone(),
                            })
                        })
                        .collect::<Result<Vec<_>>>()?,
                };
                if path.len() < 2 {
                    return Err(FcyError::NonAdmissibleRelation {
                        relation: ri,
                        term: ti,
                        len: path.len(),
                    });
                }
                terms.push((coeff, path));
            }
            relations.push(Relation { terms });
        }
        let p = Presentation::new(q, self.grading_rank, degrees, relations)?;
        match self.projection {
            Some(proj) => p.with_projection(proj),
            None => Ok(p),
        }
    }
}
