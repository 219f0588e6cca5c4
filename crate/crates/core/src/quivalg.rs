//! Quivers, admissible relations and the path basis of `kQ/I`.
//!
//! Paths are stored in traversal order: `arrows[0]` is applied first. On a
//! representation the path `a_1, ..., a_k` acts as `M(a_k) * ... * M(a_1)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, Weak};

use crate::error::{Error, Result};
use crate::ffld::{Field, Mat};
use crate::limits::Limits;
use crate::modrep::Representation;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// `arrows` are `(name, source label, target label)`.
    pub fn new<S: AsRef<str>, T: AsRef<str>>(vertices: &[S], arrows: &[(T, T, T)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::input(format!("duplicate vertex label `{v}`")));
            }
        }
        let idx = |label: &str| {
            vertices
                .iter()
                .position(|v| v == label)
                .ok_or_else(|| Error::input(format!("arrow endpoint `{label}` is not a vertex")))
        };
        let mut out = Vec::with_capacity(arrows.len());
        for (name, s, t) in arrows {
            let name = name.as_ref().to_string();
            if out.iter().any(|a: &Arrow| a.name == name) {
                return Err(Error::input(format!("duplicate arrow name `{name}`")));
            }
            out.push(Arrow {
                name,
                source: idx(s.as_ref())?,
                target: idx(t.as_ref())?,
            });
        }
        Ok(Quiver {
            vertices,
            arrows: out,
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
    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }
    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
        }
    }
}

/// A path in traversal order. Trivial paths have no arrows and
/// `source == target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Builds a path from arrow indices, checking composability.
    pub fn from_arrows(q: &Quiver, arrows: &[usize]) -> Result<Self> {
        let first = arrows
            .first()
            .ok_or_else(|| Error::input("empty arrow sequence"))?;
        let mut at = q.arrows[*first].source;
        for &a in arrows {
            let arrow = &q.arrows[a];
            if arrow.source != at {
                return Err(Error::input(format!(
                    "arrow `{}` does not start where the previous arrow ends",
                    arrow.name
                )));
            }
            at = arrow.target;
        }
        Ok(Path {
            source: q.arrows[*first].source,
            target: at,
            arrows: arrows.to_vec(),
        })
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: self.source,
            target: other.target,
            arrows,
        })
    }

    pub fn reversed(&self) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path {
            source: self.target,
            target: self.source,
            arrows,
        }
    }

    pub fn label(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e{}", q.vertices[self.source])
        } else {
            self.arrows
                .iter()
                .map(|&a| q.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join(".")
        }
    }
}

/// A linear combination of parallel paths of length at least two.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    terms: Vec<(u32, Path)>,
}

impl Relation {
    /// `terms` are `(coefficient, arrow indices in traversal order)`.
    pub fn new(q: &Quiver, field: Field, terms: &[(i64, Vec<usize>)]) -> Result<Self> {
        let mut merged: Vec<(u32, Path)> = Vec::new();
        for (c, arrows) in terms {
            if arrows.len() < 2 {
                return Err(Error::input(
                    "relation terms must have length at least 2 (admissibility)",
                ));
            }
            let path = Path::from_arrows(q, arrows)?;
            let c = field.reduce(*c);
            match merged.iter_mut().find(|(_, p)| *p == path) {
                Some(entry) => entry.0 = field.add(entry.0, c),
                None => merged.push((c, path)),
            }
        }
        merged.retain(|(c, _)| *c != 0);
        let Some((_, first)) = merged.first() else {
            return Err(Error::input("relation has no nonzero coefficient"));
        };
        let (s, t) = (first.source, first.target);
        if merged.iter().any(|(_, p)| p.source != s || p.target != t) {
            return Err(Error::input("relation terms are not parallel paths"));
        }
        Ok(Relation { terms: merged })
    }

    pub fn terms(&self) -> &[(u32, Path)] {
        &self.terms
    }
    pub fn source(&self) -> usize {
        self.terms[0].1.source
    }
    pub fn target(&self) -> usize {
        self.terms[0].1.target
    }
    pub fn min_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0)
    }

    pub fn reversed(&self) -> Relation {
        Relation {
            terms: self.terms.iter().map(|(c, p)| (*c, p.reversed())).collect(),
        }
    }

    pub fn label(&self, q: &Quiver) -> String {
        self.terms
            .iter()
            .map(|(c, p)| format!("{c}*{}", p.label(q)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `kQ/I` for an admissible ideal `I`, together with a path basis and normal
/// forms for every path up to the nilpotency bound.
pub struct Algebra {
    name: String,
    field: Field,
    quiver: Quiver,
    relations: Vec<Relation>,
    bound: usize,
    stable_length: usize,
    paths: Vec<Path>,
    path_index: HashMap<(usize, Vec<usize>), usize>,
    basis: Vec<usize>,
    normal: Vec<Vec<(usize, u32)>>,
    opposite: OnceLock<Arc<Algebra>>,
    original: Weak<Algebra>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("name", &self.name)
            .field("p", &self.field.p())
            .field("vertices", &self.quiver.vertices)
            .field("dimension", &self.dimension())
            .finish()
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.quiver == other.quiver
            && self.relations == other.relations
            && self.bound == other.bound
    }
}

impl Eq for Algebra {}

pub fn default_bound(q: &Quiver) -> usize {
    q.arrow_count() + 4
}

impl Algebra {
    /// Validates the presentation and computes its path basis. `bound` is the
    /// nilpotency guard `L`; every path of some length `<= L` must lie in the
    /// ideal, otherwise the presentation is rejected as non-admissible.
    pub fn new(
        name: impl Into<String>,
        field: Field,
        quiver: Quiver,
        relations: Vec<Relation>,
        bound: Option<usize>,
        limits: &Limits,
    ) -> Result<Arc<Self>> {
        let bound = bound.unwrap_or_else(|| default_bound(&quiver));
        Self::build(name.into(), field, quiver, relations, bound, limits, Weak::new()).map(Arc::new)
    }

    fn build(
        name: String,
        field: Field,
        quiver: Quiver,
        relations: Vec<Relation>,
        bound: usize,
        limits: &Limits,
        original: Weak<Algebra>,
    ) -> Result<Self> {
        if quiver.vertex_count() == 0 {
            return Err(Error::input("quiver has no vertices"));
        }
        if bound < 1 {
            return Err(Error::input("nilpotency bound must be at least 1"));
        }
        // All paths of length <= bound, grouped by length.
        let mut by_len: Vec<Vec<Path>> = vec![(0..quiver.vertex_count()).map(Path::trivial).collect()];
        let mut total = by_len[0].len();
        for len in 1..=bound {
            let mut next = Vec::new();
            for p in &by_len[len - 1] {
                for (ai, a) in quiver.arrows.iter().enumerate() {
                    if a.source == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(ai);
                        next.push(Path {
                            source: p.source,
                            target: a.target,
                            arrows,
                        });
                    }
                }
            }
            total += next.len();
            if total > limits.path_guard {
                return Err(Error::resource(
                    "path_guard",
                    format!("more than {} paths of length <= {bound}", limits.path_guard),
                ));
            }
            let empty = next.is_empty();
            by_len.push(next);
            if empty {
                break;
            }
        }
        // Column order: longest paths first so that pivots are long paths and
        // normal forms are written in terms of shorter ones.
        let paths: Vec<Path> = by_len.iter().rev().flatten().cloned().collect();
        let path_index: HashMap<(usize, Vec<usize>), usize> = paths
            .iter()
            .enumerate()
            .map(|(i, p)| ((p.source, p.arrows.clone()), i))
            .collect();
        let lookup = |p: &Path| path_index.get(&(p.source, p.arrows.clone())).copied();

        let mut into: Vec<Vec<usize>> = vec![Vec::new(); quiver.vertex_count()];
        let mut out_of: Vec<Vec<usize>> = vec![Vec::new(); quiver.vertex_count()];
        for (i, p) in paths.iter().enumerate() {
            into[p.target].push(i);
            out_of[p.source].push(i);
        }

        // Ideal generators u * r * v truncated at length > bound.
        let ncols = paths.len();
        let mut gens: Vec<Vec<u32>> = Vec::new();
        for r in &relations {
            let room = bound.saturating_sub(r.min_len());
            for &vi in &into[r.source()] {
                let v = &paths[vi];
                if v.len() > room {
                    continue;
                }
                for &ui in &out_of[r.target()] {
                    let u = &paths[ui];
                    if u.len() + v.len() > room {
                        continue;
                    }
                    let mut row = vec![0u32; ncols];
                    let mut any = false;
                    for (c, term) in r.terms() {
                        let full = v.concat(term).and_then(|x| x.concat(u)).expect("composable");
                        if full.len() > bound {
                            continue;
                        }
                        let col = lookup(&full).expect("path enumerated");
                        row[col] = field.add(row[col], *c);
                        any = true;
                    }
                    if any {
                        gens.push(row);
                    }
                }
            }
        }
        let ideal = Mat::from_fn(field, gens.len(), ncols, |i, j| gens[i][j]);
        let ech = ideal.rref();
        let mut pivot_row = vec![None; ncols];
        for (r, &c) in ech.pivots.iter().enumerate() {
            pivot_row[c] = Some(r);
        }

        // Smallest length at which every path lies in the ideal.
        let mut stable_length = None;
        for len in 2..=bound + 1 {
            let in_ideal = |p: &Path| lookup(p).is_none_or(|c| pivot_row[c].is_some());
            let all = by_len.get(len).is_none_or(|ps| ps.iter().all(in_ideal));
            if all {
                stable_length = Some(len);
                break;
            }
        }
        let stable_length = match stable_length {
            Some(l) if l <= bound => l,
            _ => {
                return Err(Error::validation(format!(
                    "ideal is not admissible: paths of every length up to the bound {bound} survive"
                )))
            }
        };

        // Basis: non-pivot paths, shortest first.
        let mut basis: Vec<usize> = (0..ncols).filter(|&c| pivot_row[c].is_none()).collect();
        basis.sort_by(|&a, &b| {
            let (pa, pb) = (&paths[a], &paths[b]);
            (pa.len(), pa.source, pa.target, &pa.arrows).cmp(&(pb.len(), pb.source, pb.target, &pb.arrows))
        });
        let mut basis_pos = vec![None; ncols];
        for (i, &c) in basis.iter().enumerate() {
            basis_pos[c] = Some(i);
        }
        let normal: Vec<Vec<(usize, u32)>> = (0..ncols)
            .map(|c| match pivot_row[c] {
                None => vec![(basis_pos[c].unwrap(), 1)],
                Some(r) => {
                    let mut nf: Vec<(usize, u32)> = (0..ncols)
                        .filter(|&j| j != c && ech.reduced.get(r, j) != 0)
                        .map(|j| {
                            let b = basis_pos[j].expect("rref row touches only free columns");
                            (b, field.neg(ech.reduced.get(r, j)))
                        })
                        .collect();
                    nf.sort();
                    nf
                }
            })
            .collect();

        Ok(Algebra {
            name,
            field,
            quiver,
            relations,
            bound,
            stable_length,
            paths,
            path_index,
            basis,
            normal,
            opposite: OnceLock::new(),
            original,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn field(&self) -> Field {
        self.field
    }
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }
    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }
    pub fn nilpotency_bound(&self) -> usize {
        self.bound
    }
    /// Smallest `L` with every path of length `L` in the ideal.
    pub fn stable_length(&self) -> usize {
        self.stable_length
    }
    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }
    pub fn arrow_count(&self) -> usize {
        self.quiver.arrow_count()
    }
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Residue-class representatives, shortest first.
    pub fn path_basis(&self) -> Vec<&Path> {
        self.basis.iter().map(|&c| &self.paths[c]).collect()
    }

    pub fn basis_path(&self, b: usize) -> &Path {
        &self.paths[self.basis[b]]
    }

    /// Normal form of a path as `(basis index, coefficient)` pairs.
    pub fn normal_form(&self, p: &Path) -> Vec<(usize, u32)> {
        if p.len() > self.bound {
            return Vec::new();
        }
        match self.path_index.get(&(p.source, p.arrows.clone())) {
            Some(&c) => self.normal[c].clone(),
            None => Vec::new(),
        }
    }

    /// Indices of basis paths from `from` to `to`, in basis order.
    pub fn basis_between(&self, from: usize, to: usize) -> Vec<usize> {
        (0..self.basis.len())
            .filter(|&b| {
                let p = self.basis_path(b);
                p.source == from && p.target == to
            })
            .collect()
    }

    /// Same presentation with arrows and relation paths reversed. Cached, and
    /// `opposite(opposite(A))` returns `A` itself while `A` is alive.
    pub fn opposite(self: &Arc<Self>) -> Arc<Algebra> {
        if let Some(orig) = self.original.upgrade() {
            return orig;
        }
        self.opposite
            .get_or_init(|| {
                let name = match self.name.strip_suffix("^op") {
                    Some(base) => base.to_string(),
                    None => format!("{}^op", self.name),
                };
                let rels = self.relations.iter().map(Relation::reversed).collect();
                let limits = Limits {
                    path_guard: usize::MAX,
                    ..Limits::default()
                };
                let op = Algebra::build(
                    name,
                    self.field,
                    self.quiver.opposite(),
                    rels,
                    self.bound,
                    &limits,
                    Arc::downgrade(self),
                )
                .expect("opposite of a valid presentation is valid");
                Arc::new(op)
            })
            .clone()
    }

    pub fn same_as(self: &Arc<Self>, other: &Arc<Algebra>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }
}

/// Indecomposable projective, injective and simple at vertex `v`.
pub fn standard_modules(
    alg: &Arc<Algebra>,
    v: usize,
) -> Result<(Representation, Representation, Representation)> {
    if v >= alg.vertex_count() {
        return Err(Error::input(format!("vertex index {v} out of range")));
    }
    Ok((projective(alg, v), injective(alg, v), simple(alg, v)))
}

pub fn simple(alg: &Arc<Algebra>, v: usize) -> Representation {
    let k = alg.field();
    let dims: Vec<usize> = (0..alg.vertex_count()).map(|w| usize::from(w == v)).collect();
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .map(|a| Mat::zeros(k, dims[a.target], dims[a.source]))
        .collect();
    Representation::new(alg.clone(), dims, maps)
        .expect("simple module shapes")
        .with_name(format!("S({})", alg.quiver().vertices()[v]))
}

/// `P(v)`: basis = path classes starting at `v`, arrows act by post-composition.
pub fn projective(alg: &Arc<Algebra>, v: usize) -> Representation {
    let k = alg.field();
    let n = alg.vertex_count();
    let at: Vec<Vec<usize>> = (0..n).map(|w| alg.basis_between(v, w)).collect();
    let dims: Vec<usize> = at.iter().map(Vec::len).collect();
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let mut m = Mat::zeros(k, dims[a.target], dims[a.source]);
            for (col, &b) in at[a.source].iter().enumerate() {
                let ext = alg
                    .basis_path(b)
                    .concat(&Path {
                        source: a.source,
                        target: a.target,
                        arrows: vec![ai],
                    })
                    .expect("composable");
                for (bi, c) in alg.normal_form(&ext) {
                    let row = at[a.target]
                        .iter()
                        .position(|&x| x == bi)
                        .expect("normal form stays parallel");
                    m.set(row, col, c);
                }
            }
            m
        })
        .collect();
    Representation::new(alg.clone(), dims, maps)
        .expect("projective module shapes")
        .with_name(format!("P({})", alg.quiver().vertices()[v]))
}

/// `I(v)` as the dual of the opposite algebra's projective at `v`.
pub fn injective(alg: &Arc<Algebra>, v: usize) -> Representation {
    let op = alg.opposite();
    projective(&op, v)
        .dual()
        .with_name(format!("I({})", alg.quiver().vertices()[v]))
}

/// The basic regular module `P(1) + ... + P(n)`.
pub fn regular_module(alg: &Arc<Algebra>) -> Representation {
    let ps: Vec<Representation> = (0..alg.vertex_count()).map(|v| projective(alg, v)).collect();
    Representation::direct_sum(alg, &ps).with_name("R")
}

/// The basic injective cogenerator `I(1) + ... + I(n)`.
pub fn injective_cogenerator(alg: &Arc<Algebra>) -> Representation {
    let is: Vec<Representation> = (0..alg.vertex_count()).map(|v| injective(alg, v)).collect();
    Representation::direct_sum(alg, &is).with_name("DR")
}
