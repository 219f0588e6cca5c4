//! Projective resolutions, Ext, class approximations and resolution dimensions.

use serde::Serialize;

use crate::cotor::ModuleClass;
use crate::error::{Error, Result};
use crate::ffld::{Field, Mat};
use crate::limits::Limits;
use crate::modrep::{
    combine, for_each_point, hom_basis, is_isomorphic, kernel_cokernel, projective_cover, Morphism, Representation,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `0 -> C_m -> ... -> C_0 -> D -> 0`
    Resolution,
    /// `0 -> D -> C_0 -> ... -> C_m -> 0`
    Coresolution,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Resolution => "resolution",
            Direction::Coresolution => "coresolution",
        }
    }
}

/// A finite (co)resolution of `object`. For a resolution `maps[0] : C_0 -> D`
/// and `maps[i] : C_i -> C_{i-1}`; for a coresolution `maps[0] : D -> C_0` and
/// `maps[i] : C_{i-1} -> C_i`. A truncated witness is exact everywhere except
/// at its last term.
#[derive(Clone, Debug, Serialize)]
pub struct ResolutionWitness {
    pub direction: Direction,
    pub object: Representation,
    pub terms: Vec<Representation>,
    pub maps: Vec<Morphism>,
    pub truncated: bool,
}

fn exact_at(incoming: &Morphism, outgoing: &Morphism, v: usize, dim: usize) -> bool {
    incoming.block(v).rank() + outgoing.block(v).rank() == dim
}

impl ResolutionWitness {
    pub fn length(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    /// Rank check of exactness at every position, plus endpoint shapes.
    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.terms.len() != self.maps.len() {
            return Err("terms and maps differ in number".into());
        }
        if self.terms.is_empty() {
            return if self.object.is_zero() {
                Ok(())
            } else {
                Err("empty chain for a nonzero object".into())
            };
        }
        let m = self.terms.len() - 1;
        let nv = self.object.algebra().vertex_count();
        for (i, f) in self.maps.iter().enumerate() {
            if let Some(a) = f.intertwining_failure() {
                return Err(format!("map {i} does not commute with `{a}`"));
            }
            let (s, t) = match (self.direction, i) {
                (Direction::Resolution, 0) => (&self.terms[0], &self.object),
                (Direction::Resolution, _) => (&self.terms[i], &self.terms[i - 1]),
                (Direction::Coresolution, 0) => (&self.object, &self.terms[0]),
                (Direction::Coresolution, _) => (&self.terms[i - 1], &self.terms[i]),
            };
            if f.source().dims() != s.dims() || f.target().dims() != t.dims() {
                return Err(format!("map {i} has the wrong endpoints"));
            }
        }
        match self.direction {
            Direction::Resolution => {
                if !self.maps[0].is_surjective() {
                    return Err("augmentation is not surjective".into());
                }
                for i in 0..m {
                    for v in 0..nv {
                        if !exact_at(&self.maps[i + 1], &self.maps[i], v, self.terms[i].dim(v)) {
                            return Err(format!("not exact at term {i}, vertex {v}"));
                        }
                    }
                }
                if !self.truncated && !self.maps[m].is_injective() {
                    return Err(format!("last map into term {} is not injective", m.saturating_sub(1)));
                }
            }
            Direction::Coresolution => {
                if !self.maps[0].is_injective() {
                    return Err("coaugmentation is not injective".into());
                }
                for i in 0..m {
                    for v in 0..nv {
                        if !exact_at(&self.maps[i], &self.maps[i + 1], v, self.terms[i].dim(v)) {
                            return Err(format!("not exact at term {i}, vertex {v}"));
                        }
                    }
                }
                if !self.truncated && !self.maps[m].is_surjective() {
                    return Err("last map is not surjective".into());
                }
            }
        }
        Ok(())
    }

    /// The dual chain over the opposite algebra (direction flips).
    pub fn dual(&self) -> ResolutionWitness {
        ResolutionWitness {
            direction: match self.direction {
                Direction::Resolution => Direction::Coresolution,
                Direction::Coresolution => Direction::Resolution,
            },
            object: self.object.dual(),
            terms: self.terms.iter().map(Representation::dual).collect(),
            maps: self.maps.iter().map(Morphism::dual).collect(),
            truncated: self.truncated,
        }
    }

    /// Prepends an epimorphism `e : A -> D` to a resolution of `ker e`, whose
    /// inclusion into `A` is `inc`.
    fn prepend(e: Morphism, inc: &Morphism, rest: ResolutionWitness) -> ResolutionWitness {
        let mut terms = vec![e.source().clone()];
        let mut maps = vec![e.clone()];
        let mut rest_maps = rest.maps.into_iter();
        if let Some(d0) = rest_maps.next() {
            maps.push(d0.then(inc));
        }
        maps.extend(rest_maps);
        terms.extend(rest.terms);
        ResolutionWitness {
            direction: Direction::Resolution,
            object: e.target().clone(),
            terms,
            maps,
            truncated: rest.truncated,
        }
    }
}

/// Minimal projective resolution, possibly cut off at a given degree.
#[derive(Clone, Debug)]
pub struct ProjResolution {
    pub witness: ResolutionWitness,
    /// Exact projective dimension when the resolution terminated.
    pub pd: Option<usize>,
    /// `syzygies[i]` is the kernel of `P_i -> P_{i-1}` (of `P_0 -> M` for `i = 0`).
    pub syzygies: Vec<Representation>,
}

/// Resolves `m` through degree `k` by iterated projective covers.
pub fn min_proj_resolution(m: &Representation, k: usize) -> ProjResolution {
    let mut terms = Vec::new();
    let mut maps = Vec::new();
    let mut syzygies = Vec::new();
    if m.is_zero() {
        return ProjResolution {
            witness: ResolutionWitness {
                direction: Direction::Resolution,
                object: m.clone(),
                terms,
                maps,
                truncated: false,
            },
            pd: Some(0),
            syzygies,
        };
    }
    let (p0, e0) = projective_cover(m);
    let kc = kernel_cokernel(&e0);
    terms.push(p0);
    maps.push(e0);
    let mut kernel = kc.kernel;
    let mut inc = kc.inclusion;
    syzygies.push(kernel.clone());
    for _ in 1..=k {
        if kernel.is_zero() {
            break;
        }
        let (pi, ei) = projective_cover(&kernel);
        let kc = kernel_cokernel(&ei);
        maps.push(ei.then(&inc));
        terms.push(pi);
        kernel = kc.kernel;
        inc = kc.inclusion;
        syzygies.push(kernel.clone());
    }
    let done = kernel.is_zero();
    ProjResolution {
        pd: done.then(|| terms.len() - 1),
        witness: ResolutionWitness {
            direction: Direction::Resolution,
            object: m.clone(),
            terms,
            maps,
            truncated: !done,
        },
        syzygies,
    }
}

/// Column rank of flattened morphisms.
fn span_rank(k: Field, maps: &[Morphism]) -> usize {
    if maps.is_empty() {
        return 0;
    }
    let cols: Vec<Mat> = maps.iter().map(|f| Mat::column_vector(k, &f.flat())).collect();
    let refs: Vec<&Mat> = cols.iter().collect();
    Mat::hstack(k, cols[0].rows(), &refs).rank()
}

impl ProjResolution {
    /// `dim Ext^i(M, N)` from the complex `Hom(P_*, N)`; needs the resolution
    /// through degree `i + 1` or a terminated one.
    pub fn ext_dim(&self, n: &Representation, i: usize) -> Result<usize> {
        let w = &self.witness;
        w.object.check_same_algebra(n)?;
        if i >= w.terms.len() {
            if w.truncated {
                return Err(Error::input(format!("resolution too short for degree {i}")));
            }
            return Ok(0);
        }
        if w.truncated && i + 1 >= w.terms.len() {
            return Err(Error::input(format!("resolution too short for degree {i}")));
        }
        let k = n.field();
        let psi = hom_basis(&w.terms[i], n)?;
        let h = psi.len();
        let r_out = match w.maps.get(i + 1) {
            Some(d) => span_rank(k, &psi.iter().map(|p| d.then(p)).collect::<Vec<_>>()),
            None => 0,
        };
        let r_in = if i == 0 {
            0
        } else {
            let d = &w.maps[i];
            let phi = hom_basis(&w.terms[i - 1], n)?;
            span_rank(k, &phi.iter().map(|p| d.then(p)).collect::<Vec<_>>())
        };
        Ok(h - r_out - r_in)
    }
}

/// `dim Ext^i(M, N)`; `i = 0` gives `dim Hom(M, N)`.
pub fn ext_dim(m: &Representation, n: &Representation, i: usize) -> Result<usize> {
    m.check_same_algebra(n)?;
    min_proj_resolution(m, i + 1).ext_dim(n, i)
}

/// Projective dimension if it is at most `depth`.
pub fn proj_dim(m: &Representation, depth: usize) -> Option<usize> {
    min_proj_resolution(m, depth).pd
}

/// Evaluation map `⊕_j C_j^{dim Hom(C_j, D)} -> D`.
pub fn right_approximation(class: &[Representation], d: &Representation) -> Result<Morphism> {
    let mut comps = Vec::new();
    for c in class {
        comps.extend(hom_basis(c, d)?);
    }
    if comps.is_empty() {
        return Ok(Morphism::zero(&Representation::zero(d.algebra()), d));
    }
    Ok(Morphism::from_sum(d, &comps))
}

/// Coevaluation map `D -> ⊕_j C_j^{dim Hom(D, C_j)}`.
pub fn left_approximation(class: &[Representation], d: &Representation) -> Result<Morphism> {
    let mut comps = Vec::new();
    for c in class {
        comps.extend(hom_basis(d, c)?);
    }
    if comps.is_empty() {
        return Ok(Morphism::zero(d, &Representation::zero(d.algebra())));
    }
    Ok(Morphism::into_sum(d, &comps))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Greedy,
    Oracle,
    /// Greedy first, then the oracle to confirm minimality or to fill gaps.
    Auto,
}

impl SearchMode {
    pub fn parse(s: &str) -> Result<SearchMode> {
        match s {
            "greedy" => Ok(SearchMode::Greedy),
            "oracle" => Ok(SearchMode::Oracle),
            "auto" => Ok(SearchMode::Auto),
            o => Err(Error::input(format!("unknown search mode `{o}`"))),
        }
    }
}

/// Outcome of a (co)resolution-dimension search.
#[derive(Clone, Debug, Serialize)]
pub struct ResDim {
    /// Smallest certified length, or `None` if none exists within `bound`
    /// (relative to the oracle's multiplicity bound).
    pub value: Option<usize>,
    pub witness: Option<ResolutionWitness>,
    pub bound: usize,
    pub method: &'static str,
}

/// Greedy resolution by iterated right approximations.
pub fn greedy_resolution(
    d: &Representation,
    class: &ModuleClass,
    bound: usize,
    limits: &Limits,
) -> Result<Option<ResolutionWitness>> {
    let members = class.members();
    let mut k = d.clone();
    let mut inc: Option<Morphism> = None;
    let mut terms = Vec::new();
    let mut maps = Vec::new();
    for s in 0..=bound {
        if class.contains(&k, limits)? {
            let last = match &inc {
                None => Morphism::identity(&k),
                Some(i) => i.clone(),
            };
            terms.push(k);
            maps.push(last);
            return Ok(Some(ResolutionWitness {
                direction: Direction::Resolution,
                object: d.clone(),
                terms,
                maps,
                truncated: false,
            }));
        }
        if s == bound {
            break;
        }
        let f = right_approximation(members, &k)?;
        if !f.is_surjective() {
            return Ok(None);
        }
        let kc = kernel_cokernel(&f);
        maps.push(match &inc {
            None => f.clone(),
            Some(i) => f.then(i),
        });
        terms.push(f.source().clone());
        k = kc.kernel;
        inc = Some(kc.inclusion);
    }
    Ok(None)
}

/// All epimorphisms `⊕ C_j^{m_j} -> D` up to automorphisms of the source,
/// with `m_j <= mult`: each copy of `C_j` maps by a projective point of
/// `Hom(C_j, D)`, copies of one member in non-decreasing point order.
/// `visit` returns `Ok(false)` to stop.
pub fn for_each_epi(
    members: &[Representation],
    d: &Representation,
    mult: usize,
    limits: &Limits,
    mut visit: impl FnMut(&Morphism) -> Result<bool>,
) -> Result<()> {
    let k = d.field();
    let mut points: Vec<Vec<Morphism>> = Vec::new();
    for c in members {
        let basis = hom_basis(c, d)?;
        let mut pts = Vec::new();
        if !basis.is_empty() {
            if k.pow_count(basis.len()) > limits.guard {
                return Err(Error::resource("guard", format!("Hom({}, {}) too large to enumerate", c.label(), d.label())));
            }
            for_each_point(k, basis.len(), |c| {
                pts.push(combine(&basis, c));
                true
            });
        }
        points.push(pts);
    }
    // Multisets of size <= mult over each point list.
    fn multisets(n: usize, max: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        let mut frontier = vec![vec![]];
        for _ in 0..max {
            let mut next = Vec::new();
            for s in &frontier {
                let start = s.last().copied().unwrap_or(0);
                for i in start..n {
                    let mut t: Vec<usize> = s.clone();
                    t.push(i);
                    next.push(t);
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }
    let choices: Vec<Vec<Vec<usize>>> = points.iter().map(|p| multisets(p.len(), mult)).collect();
    let total = choices
        .iter()
        .fold(1u64, |acc, c| acc.saturating_mul(c.len() as u64));
    if total > limits.guard {
        return Err(Error::resource(
            "guard",
            format!("{total} candidate maps onto {} exceed the guard {}", d.label(), limits.guard),
        ));
    }
    // Enumerate the product in order of total multiplicity.
    let mut combos: Vec<Vec<usize>> = vec![vec![]];
    for c in &choices {
        combos = combos
            .into_iter()
            .flat_map(|prefix| {
                (0..c.len()).map(move |i| {
                    let mut p = prefix.clone();
                    p.push(i);
                    p
                })
            })
            .collect();
    }
    let size = |combo: &Vec<usize>| -> usize { combo.iter().enumerate().map(|(j, &i)| choices[j][i].len()).sum() };
    combos.sort_by_key(|c| size(c));
    for combo in combos {
        let comps: Vec<Morphism> = combo
            .iter()
            .enumerate()
            .flat_map(|(j, &i)| choices[j][i].iter().map(move |&pt| (j, pt)))
            .map(|(j, pt)| points[j][pt].clone())
            .collect();
        if comps.is_empty() {
            if d.is_zero() && !visit(&Morphism::zero(&Representation::zero(d.algebra()), d))? {
                return Ok(());
            }
            continue;
        }
        let f = Morphism::from_sum(d, &comps);
        if f.is_surjective() && !visit(&f)? {
            return Ok(());
        }
    }
    Ok(())
}

/// Memoised exhaustive search for short `C`-resolutions.
struct Oracle<'a> {
    class: &'a ModuleClass,
    limits: &'a Limits,
    /// `(module, longest length proven impossible, shortest witness found)`.
    memo: Vec<(Representation, Option<usize>, Option<ResolutionWitness>)>,
}

impl Oracle<'_> {
    fn lookup(&self, k: &Representation) -> Result<Option<usize>> {
        for (i, (m, _, _)) in self.memo.iter().enumerate() {
            if m.dims() == k.dims() && is_isomorphic(m, k, self.limits)?.holds() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    fn mult(&self, d: &Representation) -> usize {
        self.limits.mult_bound.unwrap_or(d.max_dim() + 1)
    }

    fn within(&mut self, d: &Representation, len: usize) -> Result<Option<ResolutionWitness>> {
        let slot = match self.lookup(d)? {
            Some(i) => i,
            None => {
                self.memo.push((d.clone(), None, None));
                self.memo.len() - 1
            }
        };
        if let Some(w) = &self.memo[slot].2 {
            if w.length() <= len {
                return Ok(Some(self.reanchor(w.clone(), d)?));
            }
        }
        if matches!(self.memo[slot].1, Some(f) if f >= len) {
            return Ok(None);
        }
        let found = if self.class.contains(d, self.limits)? {
            Some(ResolutionWitness {
                direction: Direction::Resolution,
                object: d.clone(),
                terms: vec![d.clone()],
                maps: vec![Morphism::identity(d)],
                truncated: false,
            })
        } else if len == 0 {
            None
        } else {
            let members = self.class.members().to_vec();
            let mult = self.mult(d);
            let limits = self.limits;
            let mut seen: Vec<Representation> = Vec::new();
            let mut result = None;
            let mut err = None;
            let mut candidates = Vec::new();
            for_each_epi(&members, d, mult, limits, |e| {
                candidates.push(e.clone());
                Ok(true)
            })?;
            for e in candidates {
                let kc = kernel_cokernel(&e);
                let mut dup = false;
                for s in &seen {
                    match is_isomorphic(s, &kc.kernel, limits) {
                        Ok(v) if v.holds() => {
                            dup = true;
                            break;
                        }
                        Ok(_) => {}
                        Err(x) => {
                            err = Some(x);
                            break;
                        }
                    }
                }
                if let Some(x) = err.take() {
                    return Err(x);
                }
                if dup {
                    continue;
                }
                seen.push(kc.kernel.clone());
                if let Some(rest) = self.within(&kc.kernel, len - 1)? {
                    result = Some(ResolutionWitness::prepend(e, &kc.inclusion, rest));
                    break;
                }
            }
            result
        };
        match &found {
            Some(w) => {
                let better = self.memo[slot].2.as_ref().is_none_or(|old| old.length() > w.length());
                if better {
                    self.memo[slot].2 = Some(w.clone());
                }
            }
            None => {
                let f = &mut self.memo[slot].1;
                *f = Some(f.map_or(len, |x| x.max(len)));
            }
        }
        Ok(found)
    }

    /// Transports a witness for an isomorphic module onto `d`.
    fn reanchor(&self, w: ResolutionWitness, d: &Representation) -> Result<ResolutionWitness> {
        if w.object.maps() == d.maps() && w.object.dims() == d.dims() {
            let mut w = w;
            w.object = d.clone();
            return Ok(w);
        }
        let iso = match is_isomorphic(&w.object, d, self.limits)? {
            crate::modrep::IsoVerdict::Isomorphic(f) => f,
            crate::modrep::IsoVerdict::Distinct(r) => {
                return Err(Error::validation(format!("memoised module no longer isomorphic: {r}")))
            }
        };
        let mut w = w;
        w.maps[0] = w.maps[0].then(&iso);
        w.object = d.clone();
        Ok(w)
    }
}

/// Smallest `m' <= bound` such that `d` has an exact `C`-resolution of length
/// `m'`, with a witness.
pub fn resdim_class(
    d: &Representation,
    class: &ModuleClass,
    bound: usize,
    mode: SearchMode,
    limits: &Limits,
) -> Result<ResDim> {
    if !d.algebra().same_as(class.algebra()) {
        return Err(Error::input("module and class live over different algebras"));
    }
    if bound > limits.depth {
        return Err(Error::resource("depth", format!("bound {bound} exceeds the depth guard {}", limits.depth)));
    }
    let greedy = match mode {
        SearchMode::Oracle => None,
        _ => greedy_resolution(d, class, bound, limits)?,
    };
    if mode == SearchMode::Greedy {
        return Ok(ResDim {
            value: greedy.as_ref().map(ResolutionWitness::length),
            witness: greedy,
            bound,
            method: "greedy",
        });
    }
    if let Some(w) = &greedy {
        if w.length() == 0 {
            return Ok(ResDim {
                value: Some(0),
                witness: greedy,
                bound,
                method: "greedy",
            });
        }
    }
    let limit = greedy.as_ref().map_or(bound, |w| w.length() - 1);
    let mut oracle = Oracle {
        class,
        limits,
        memo: Vec::new(),
    };
    for len in 0..=limit {
        if let Some(w) = oracle.within(d, len)? {
            return Ok(ResDim {
                value: Some(len),
                witness: Some(w),
                bound,
                method: "oracle",
            });
        }
    }
    Ok(match greedy {
        Some(w) => ResDim {
            value: Some(w.length()),
            witness: Some(w),
            bound,
            method: "greedy+oracle",
        },
        None => ResDim {
            value: None,
            witness: None,
            bound,
            method: "oracle",
        },
    })
}

/// Coresolution dimension, computed as a resolution dimension over the
/// opposite algebra.
pub fn coresdim_class(
    d: &Representation,
    class: &ModuleClass,
    bound: usize,
    mode: SearchMode,
    limits: &Limits,
) -> Result<ResDim> {
    let r = resdim_class(&d.dual(), &class.dual(), bound, mode, limits)?;
    Ok(ResDim {
        value: r.value,
        witness: r.witness.map(|w| {
            let mut c = w.dual();
            c.object = d.clone();
            if let Some(first) = c.maps.first_mut() {
                *first = first.with_endpoints(d.clone(), first.target().clone());
            }
            c
        }),
        bound: r.bound,
        method: r.method,
    })
}
