//! Module classes and n-cotorsion pair checks.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homap::{
    coresdim_class, for_each_epi, left_approximation, min_proj_resolution, resdim_class, right_approximation,
    ProjResolution, ResDim, SearchMode,
};
use crate::limits::Limits;
use crate::modrep::{decompose, is_isomorphic, kernel_cokernel, Enumeration, Morphism, Representation};
use crate::quivalg::Algebra;
use crate::report::{CheckReport, Verdict, Witness};

/// A finite set of pairwise non-isomorphic indecomposables standing for its
/// additive closure.
#[derive(Clone, Debug)]
pub struct ModuleClass {
    alg: Arc<Algebra>,
    name: String,
    members: Vec<Representation>,
    universe: bool,
}

impl ModuleClass {
    /// Decomposes every module and keeps one representative per summand.
    pub fn from_modules(alg: &Arc<Algebra>, name: impl Into<String>, modules: &[Representation], limits: &Limits) -> Result<Self> {
        let mut members: Vec<Representation> = Vec::new();
        for m in modules {
            if !m.algebra().same_as(alg) {
                return Err(Error::input(format!("class member {} lives over another algebra", m.label())));
            }
            let d = decompose(m, limits)?;
            let single = d.len() == 1;
            for s in d.summands {
                let mut module = s.module;
                if module.name().is_none() {
                    if let Some(n) = crate::modrep::standard_name(&module, limits)? {
                        module = module.with_name(n);
                    } else if single {
                        module = module.with_name(m.label());
                    }
                }
                if !contains_iso(&members, &module, limits)? {
                    members.push(module);
                }
            }
        }
        Ok(ModuleClass {
            alg: alg.clone(),
            name: name.into(),
            members,
            universe: false,
        })
    }

    /// Members are trusted to be indecomposable and pairwise distinct.
    pub fn from_indecomposables(alg: &Arc<Algebra>, name: impl Into<String>, members: Vec<Representation>) -> Self {
        ModuleClass {
            alg: alg.clone(),
            name: name.into(),
            members,
            universe: false,
        }
    }

    /// The class of all modules, represented by a complete enumeration.
    pub fn universe(alg: &Arc<Algebra>, e: &Enumeration) -> Self {
        ModuleClass {
            alg: alg.clone(),
            name: format!("mod {}", alg.name()),
            members: e.modules.clone(),
            universe: true,
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }
    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
    pub fn members(&self) -> &[Representation] {
        &self.members
    }
    pub fn len(&self) -> usize {
        self.members.len()
    }
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
    pub fn is_universe(&self) -> bool {
        self.universe
    }
    pub fn labels(&self) -> Vec<String> {
        self.members.iter().map(Representation::label).collect()
    }

    /// Index of the member isomorphic to the indecomposable `m`.
    pub fn position(&self, m: &Representation, limits: &Limits) -> Result<Option<usize>> {
        for (i, x) in self.members.iter().enumerate() {
            if x.dims() == m.dims() && is_isomorphic(x, m, limits)?.holds() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// `M ∈ add C`: every indecomposable summand of `M` is a member.
    pub fn contains(&self, m: &Representation, limits: &Limits) -> Result<bool> {
        if !m.algebra().same_as(&self.alg) {
            return Err(Error::input("module and class live over different algebras"));
        }
        if m.is_zero() || self.position(m, limits)?.is_some() {
            return Ok(true);
        }
        let d = decompose(m, limits)?;
        if d.len() == 1 {
            return Ok(false);
        }
        for s in &d.summands {
            if self.position(&s.module, limits)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The class of duals over the opposite algebra.
    pub fn dual(&self) -> ModuleClass {
        ModuleClass {
            alg: self.alg.opposite(),
            name: format!("D({})", self.name),
            members: self.members.iter().map(Representation::dual).collect(),
            universe: self.universe,
        }
    }

    /// Members that are in `other` (as iso-classes).
    pub fn intersect(&self, other: &ModuleClass, limits: &Limits) -> Result<ModuleClass> {
        let mut keep = Vec::new();
        for m in &self.members {
            if other.position(m, limits)?.is_some() {
                keep.push(m.clone());
            }
        }
        Ok(ModuleClass::from_indecomposables(&self.alg, format!("{} ∩ {}", self.name, other.name), keep))
    }
}

fn contains_iso(list: &[Representation], m: &Representation, limits: &Limits) -> Result<bool> {
    for x in list {
        if x.dims() == m.dims() && is_isomorphic(x, m, limits)?.holds() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Members of `a` missing from `b` and members of `b` missing from `a`.
pub fn class_difference(
    a: &[Representation],
    b: &[Representation],
    limits: &Limits,
) -> Result<(Vec<Representation>, Vec<Representation>)> {
    let mut missing = Vec::new();
    for x in a {
        if !contains_iso(b, x, limits)? {
            missing.push(x.clone());
        }
    }
    let mut extra = Vec::new();
    for y in b {
        if !contains_iso(a, y, limits)? {
            extra.push(y.clone());
        }
    }
    Ok((missing, extra))
}

pub fn same_class(a: &ModuleClass, b: &ModuleClass, limits: &Limits) -> Result<bool> {
    let (m, e) = class_difference(a.members(), b.members(), limits)?;
    Ok(m.is_empty() && e.is_empty())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `{M : Ext^i(M, C) = 0}`
    Left,
    /// `{N : Ext^i(C, N) = 0}`
    Right,
}

/// Minimal resolutions of class members, reused across many Ext queries.
pub struct ExtCache {
    resolutions: Vec<(Representation, ProjResolution)>,
    depth: usize,
}

impl ExtCache {
    pub fn new(depth: usize) -> Self {
        ExtCache {
            resolutions: Vec::new(),
            depth,
        }
    }

    fn resolution(&mut self, m: &Representation) -> &ProjResolution {
        let pos = self
            .resolutions
            .iter()
            .position(|(x, _)| x.same_algebra(m) && x.dims() == m.dims() && x.maps() == m.maps());
        let i = match pos {
            Some(i) => i,
            None => {
                self.resolutions.push((m.clone(), min_proj_resolution(m, self.depth + 1)));
                self.resolutions.len() - 1
            }
        };
        &self.resolutions[i].1
    }

    pub fn ext(&mut self, m: &Representation, n: &Representation, i: usize) -> Result<usize> {
        if i > self.depth {
            return crate::homap::ext_dim(m, n, i);
        }
        self.resolution(m).ext_dim(n, i)
    }
}

/// Members of `universe` with vanishing `Ext^i` against every member of `c`,
/// for every `i` in `degrees`.
pub fn perp(c: &ModuleClass, side: Side, degrees: &[usize], universe: &ModuleClass) -> Result<ModuleClass> {
    if universe.is_empty() {
        return Err(Error::input("empty universe"));
    }
    let depth = degrees.iter().copied().max().unwrap_or(1);
    let mut cache = ExtCache::new(depth);
    let mut keep = Vec::new();
    'cand: for x in universe.members() {
        for y in c.members() {
            for &i in degrees {
                let e = match side {
                    Side::Right => cache.ext(y, x, i)?,
                    Side::Left => cache.ext(x, y, i)?,
                };
                if e != 0 {
                    continue 'cand;
                }
            }
        }
        keep.push(x.clone());
    }
    let sym = match side {
        Side::Left => format!("⊥{}", c.name()),
        Side::Right => format!("{}⊥", c.name()),
    };
    Ok(ModuleClass::from_indecomposables(universe.algebra(), sym, keep))
}

/// Ext vanishing in the given degrees on member pairs; failures become
/// witnesses on `rep`.
pub(crate) fn ext_vanishing(
    rep: &mut CheckReport,
    label: &str,
    a: &ModuleClass,
    b: &ModuleClass,
    degrees: std::ops::RangeInclusive<usize>,
) -> Result<()> {
    let mut cache = ExtCache::new(*degrees.end());
    let mut ok = true;
    for x in a.members() {
        for y in b.members() {
            for i in degrees.clone() {
                let e = cache.ext(x, y, i)?;
                if e != 0 {
                    ok = false;
                    rep.witness(Witness::ExtNonvanishing {
                        left: x.clone(),
                        right: y.clone(),
                        degree: i,
                        dim: e,
                    });
                }
            }
        }
    }
    let detail = if ok {
        format!("{} x {} member pairs", a.len(), b.len())
    } else {
        String::new()
    };
    rep.claim(label, Verdict::from_bool(ok), detail);
    Ok(())
}

/// A short exact sequence `0 -> K -> A -> D -> 0` found for `D`.
pub struct CoverSequence {
    pub inclusion: Morphism,
    pub epi: Morphism,
    pub kernel_dim: ResDim,
    pub method: &'static str,
}

fn resdim_ok(r: &ResDim, bound: usize) -> bool {
    matches!(r.value, Some(v) if v <= bound)
}

/// Finds `0 -> K -> A_D -> D -> 0` with `A_D ∈ add A` and
/// `resdim_B(K) <= len`: identity if `D ∈ add A`, then the evaluation
/// approximation, then an exhaustive search over epimorphisms.
pub fn find_cover_sequence(
    d: &Representation,
    a: &ModuleClass,
    b: &ModuleClass,
    len: usize,
    limits: &Limits,
) -> Result<Option<CoverSequence>> {
    let zero = Representation::zero(d.algebra());
    let try_epi = |e: &Morphism| -> Result<Option<(Morphism, ResDim)>> {
        let kc = kernel_cokernel(e);
        let r = resdim_class(&kc.kernel, b, len, SearchMode::Auto, limits)?;
        Ok(resdim_ok(&r, len).then_some((kc.inclusion, r)))
    };
    if a.contains(d, limits)? {
        let id = Morphism::identity(d);
        let inc = Morphism::zero(&zero, d);
        let r = resdim_class(&zero, b, len, SearchMode::Auto, limits)?;
        return Ok(Some(CoverSequence {
            inclusion: inc,
            epi: id,
            kernel_dim: r,
            method: "identity",
        }));
    }
    let f = right_approximation(a.members(), d)?;
    if f.is_surjective() {
        if let Some((inc, r)) = try_epi(&f)? {
            return Ok(Some(CoverSequence {
                inclusion: inc,
                epi: f,
                kernel_dim: r,
                method: "approximation",
            }));
        }
    }
    let mult = limits.mult_bound.unwrap_or(d.max_dim() + 1);
    let mut found = None;
    for_each_epi(a.members(), d, mult, limits, |e| {
        if let Some((inc, r)) = try_epi(e)? {
            found = Some(CoverSequence {
                inclusion: inc,
                epi: e.clone(),
                kernel_dim: r,
                method: "oracle",
            });
            return Ok(false);
        }
        Ok(true)
    })?;
    Ok(found)
}

/// Dual of [`find_cover_sequence`]: `0 -> D -> B_D -> Z -> 0` with
/// `B_D ∈ add B` and `coresdim_A(Z) <= len`.
pub struct EnvelopeSequence {
    pub mono: Morphism,
    pub projection: Morphism,
    pub cokernel_dim: ResDim,
    pub method: &'static str,
}

pub fn find_envelope_sequence(
    d: &Representation,
    a: &ModuleClass,
    b: &ModuleClass,
    len: usize,
    limits: &Limits,
) -> Result<Option<EnvelopeSequence>> {
    let zero = Representation::zero(d.algebra());
    let try_mono = |g: &Morphism| -> Result<Option<(Morphism, ResDim)>> {
        let kc = kernel_cokernel(g);
        let r = coresdim_class(&kc.cokernel, a, len, SearchMode::Auto, limits)?;
        Ok(resdim_ok(&r, len).then_some((kc.projection, r)))
    };
    if b.contains(d, limits)? {
        let r = coresdim_class(&zero, a, len, SearchMode::Auto, limits)?;
        return Ok(Some(EnvelopeSequence {
            mono: Morphism::identity(d),
            projection: Morphism::zero(d, &zero),
            cokernel_dim: r,
            method: "identity",
        }));
    }
    let g = left_approximation(b.members(), d)?;
    if g.is_injective() {
        if let Some((q, r)) = try_mono(&g)? {
            return Ok(Some(EnvelopeSequence {
                mono: g,
                projection: q,
                cokernel_dim: r,
                method: "approximation",
            }));
        }
    }
    // Monomorphisms D -> B are dual to epimorphisms DB -> DD.
    let bd = b.dual();
    let dd = d.dual();
    let mult = limits.mult_bound.unwrap_or(d.max_dim() + 1);
    let mut found = None;
    for_each_epi(bd.members(), &dd, mult, limits, |e| {
        let g = e.dual().with_endpoints(d.clone(), e.source().dual());
        if let Some((q, r)) = try_mono(&g)? {
            found = Some(EnvelopeSequence {
                mono: g,
                projection: q,
                cokernel_dim: r,
                method: "oracle",
            });
            return Ok(false);
        }
        Ok(true)
    })?;
    Ok(found)
}

const SUMMAND_NOTE: &str = "closure under direct summands holds by construction: classes stand for their additive closure";
const INDECOMPOSABLE_NOTE: &str =
    "approximation sequences are checked on indecomposable objects of the universe; direct sums of such sequences cover every object";

fn universe_note(universe: &ModuleClass) -> String {
    format!(
        "universe `{}` has {} indecomposables{}",
        universe.name(),
        universe.len(),
        if universe.is_universe() { " (complete for its dimension bound)" } else { "" }
    )
}

fn check_same_algebra(classes: &[&ModuleClass]) -> Result<()> {
    let alg = classes[0].algebra();
    for c in classes {
        if !c.algebra().same_as(alg) {
            return Err(Error::input(format!("class `{}` lives over another algebra", c.name())));
        }
    }
    Ok(())
}

/// Left n-cotorsion pair check.
pub fn check_left_n_cotorsion(
    a: &ModuleClass,
    b: &ModuleClass,
    n: usize,
    universe: &ModuleClass,
    limits: &Limits,
) -> Result<CheckReport> {
    check_same_algebra(&[a, b, universe])?;
    if n == 0 {
        return Err(Error::input("n must be at least 1"));
    }
    let mut rep = CheckReport::new(format!("left {n}-cotorsion ({}, {})", a.name(), b.name()));
    rep.claim("closed under direct summands", Verdict::Pass, "");
    rep.note(SUMMAND_NOTE);
    ext_vanishing(&mut rep, &format!("Ext^1..{n}(A,B) = 0"), a, b, 1..=n)?;
    let mut all = Verdict::Pass;
    let mut detail = Vec::new();
    for d in universe.members() {
        match find_cover_sequence(d, a, b, n - 1, limits) {
            Ok(Some(seq)) => {
                rep.witness(Witness::ShortExact {
                    label: format!("0 -> K -> A -> {} -> 0 ({})", d.label(), seq.method),
                    f: seq.inclusion.clone(),
                    g: seq.epi.clone(),
                });
                if let Some(w) = seq.kernel_dim.witness {
                    if w.length() > 0 {
                        rep.witness(Witness::Resolution {
                            label: format!("kernel for {} in B^_{}", d.label(), n - 1),
                            resolution: w,
                        });
                    }
                }
            }
            Ok(None) => {
                all = all.and(Verdict::Fail);
                detail.push(d.label());
                rep.witness(Witness::Membership {
                    label: format!("objects with a sequence 0 -> K -> A -> D -> 0, K in B^_{}", n - 1),
                    module: d.clone(),
                    expected: true,
                });
                let f = right_approximation(a.members(), d)?;
                if !f.is_surjective() {
                    rep.witness(Witness::ApproximationFails {
                        label: format!("add A -> {}", d.label()),
                        approximation: f,
                        surjective_needed: true,
                    });
                }
            }
            Err(e @ Error::Resource { .. }) => {
                all = all.and(Verdict::Inconclusive);
                rep.guard_hit(e.to_string());
            }
            Err(e) => return Err(e),
        }
    }
    let detail = if detail.is_empty() {
        format!("{} objects", universe.len())
    } else {
        format!("no sequence for {}", detail.join(", "))
    };
    rep.claim("approximation sequences", all, detail);
    rep.note(INDECOMPOSABLE_NOTE);
    rep.note(universe_note(universe));
    if n == 1 {
        rep.note("B^_0 is read as add B");
    }
    Ok(rep.finish())
}

/// Right n-cotorsion pair check.
pub fn check_right_n_cotorsion(
    a: &ModuleClass,
    b: &ModuleClass,
    n: usize,
    universe: &ModuleClass,
    limits: &Limits,
) -> Result<CheckReport> {
    check_same_algebra(&[a, b, universe])?;
    if n == 0 {
        return Err(Error::input("n must be at least 1"));
    }
    let mut rep = CheckReport::new(format!("right {n}-cotorsion ({}, {})", a.name(), b.name()));
    rep.claim("closed under direct summands", Verdict::Pass, "");
    rep.note(SUMMAND_NOTE);
    ext_vanishing(&mut rep, &format!("Ext^1..{n}(A,B) = 0"), a, b, 1..=n)?;
    let mut all = Verdict::Pass;
    let mut detail = Vec::new();
    for d in universe.members() {
        match find_envelope_sequence(d, a, b, n - 1, limits) {
            Ok(Some(seq)) => {
                rep.witness(Witness::ShortExact {
                    label: format!("0 -> {} -> B -> Z -> 0 ({})", d.label(), seq.method),
                    f: seq.mono.clone(),
                    g: seq.projection.clone(),
                });
                if let Some(w) = seq.cokernel_dim.witness {
                    if w.length() > 0 {
                        rep.witness(Witness::Resolution {
                            label: format!("cokernel for {} in A v_{}", d.label(), n - 1),
                            resolution: w,
                        });
                    }
                }
            }
            Ok(None) => {
                all = all.and(Verdict::Fail);
                detail.push(d.label());
                rep.witness(Witness::Membership {
                    label: format!("objects with a sequence 0 -> D -> B -> Z -> 0, Z in Av_{}", n - 1),
                    module: d.clone(),
                    expected: true,
                });
                let g = left_approximation(b.members(), d)?;
                if !g.is_injective() {
                    rep.witness(Witness::ApproximationFails {
                        label: format!("{} -> add B", d.label()),
                        approximation: g,
                        surjective_needed: false,
                    });
                }
            }
            Err(e @ Error::Resource { .. }) => {
                all = all.and(Verdict::Inconclusive);
                rep.guard_hit(e.to_string());
            }
            Err(e) => return Err(e),
        }
    }
    let detail = if detail.is_empty() {
        format!("{} objects", universe.len())
    } else {
        format!("no sequence for {}", detail.join(", "))
    };
    rep.claim("approximation sequences", all, detail);
    rep.note(INDECOMPOSABLE_NOTE);
    rep.note(universe_note(universe));
    if n == 1 {
        rep.note("A v_0 is read as add A");
    }
    Ok(rep.finish())
}

/// Both one-sided checks, plus `Ext^{n+1}(A,B) = 0` when `hereditary`.
pub fn check_n_cotorsion(
    a: &ModuleClass,
    b: &ModuleClass,
    n: usize,
    universe: &ModuleClass,
    hereditary: bool,
    limits: &Limits,
) -> Result<CheckReport> {
    let mut rep = CheckReport::new(format!("{n}-cotorsion ({}, {})", a.name(), b.name()));
    rep.child(check_left_n_cotorsion(a, b, n, universe, limits)?);
    rep.child(check_right_n_cotorsion(a, b, n, universe, limits)?);
    if hereditary {
        ext_vanishing(&mut rep, &format!("hereditary: Ext^{}(A,B) = 0", n + 1), a, b, n + 1..=n + 1)?;
    }
    Ok(rep.finish())
}

fn compare(rep: &mut CheckReport, label: &str, expected: &ModuleClass, computed: &ModuleClass, limits: &Limits) -> Result<()> {
    let (missing, unexpected) = class_difference(expected.members(), computed.members(), limits)?;
    let ok = missing.is_empty() && unexpected.is_empty();
    rep.claim(label, Verdict::from_bool(ok), format!("computed [{}]", computed.labels().join(", ")));
    if !ok {
        rep.witness(Witness::ClassMismatch {
            label: label.to_string(),
            missing,
            unexpected,
        });
    }
    Ok(())
}

/// Recomputes `A = ∩_i ⊥_i B` and `B = ∩_i A^⊥_i` over the universe.
pub fn crosscheck_characterization(
    a: &ModuleClass,
    b: &ModuleClass,
    n: usize,
    universe: &ModuleClass,
    limits: &Limits,
) -> Result<CheckReport> {
    check_same_algebra(&[a, b, universe])?;
    let degrees: Vec<usize> = (1..=n).collect();
    let mut rep = CheckReport::new(format!("characterization ({}, {}), n = {n}", a.name(), b.name()));
    let left = perp(b, Side::Left, &degrees, universe)?;
    let right = perp(a, Side::Right, &degrees, universe)?;
    compare(&mut rep, "A = ∩ ⊥_i B", a, &left, limits)?;
    compare(&mut rep, "B = ∩ A^⊥_i", b, &right, limits)?;
    rep.note(universe_note(universe));
    Ok(rep.finish())
}

/// `A^{⊥_n} = B` and `⊥_m B = A` over the universe.
pub fn check_mn_cotorsion(
    a: &ModuleClass,
    b: &ModuleClass,
    m: usize,
    n: usize,
    universe: &ModuleClass,
    limits: &Limits,
) -> Result<CheckReport> {
    check_same_algebra(&[a, b, universe])?;
    let mut rep = CheckReport::new(format!("({m},{n})-cotorsion ({}, {})", a.name(), b.name()));
    let right = perp(a, Side::Right, &[n], universe)?;
    let left = perp(b, Side::Left, &[m], universe)?;
    compare(&mut rep, &format!("A^⊥_{n} = B"), b, &right, limits)?;
    compare(&mut rep, &format!("⊥_{m} B = A"), a, &left, limits)?;
    rep.note(universe_note(universe));
    Ok(rep.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::ffld::Field;
    use crate::modrep::enumerate_indecomposables;
    use crate::quivalg::{injective_cogenerator, projective, regular_module, simple};

    struct A2 {
        alg: Arc<Algebra>,
        universe: ModuleClass,
        lim: Limits,
    }

    fn a2() -> A2 {
        let lim = Limits::default();
        let alg = builtin::a2(Field::default(), &lim).unwrap();
        let e = enumerate_indecomposables(&alg, 1, &lim).unwrap();
        A2 {
            universe: ModuleClass::universe(&alg, &e),
            alg,
            lim,
        }
    }

    impl A2 {
        fn class(&self, name: &str, ms: &[Representation]) -> ModuleClass {
            ModuleClass::from_modules(&self.alg, name, ms, &self.lim).unwrap()
        }
    }

    #[test]
    fn membership_is_additive() {
        let t = a2();
        let add_r = t.class("add R", &[regular_module(&t.alg)]);
        assert_eq!(add_r.len(), 2);
        let m = Representation::direct_sum(&t.alg, &[projective(&t.alg, 0), projective(&t.alg, 1).power(2)]);
        assert!(add_r.contains(&m, &t.lim).unwrap());
        let s1 = simple(&t.alg, 0);
        assert!(!add_r.contains(&s1, &t.lim).unwrap());
        let mixed = Representation::direct_sum(&t.alg, &[projective(&t.alg, 0), s1]);
        assert!(!add_r.contains(&mixed, &t.lim).unwrap());
    }

    #[test]
    fn perps_over_a2() {
        let t = a2();
        let add_r = t.class("add R", &[regular_module(&t.alg)]);
        assert_eq!(perp(&add_r, Side::Right, &[1], &t.universe).unwrap().len(), 3);
        let left = perp(&t.universe, Side::Left, &[1], &t.universe).unwrap();
        assert!(same_class(&left, &add_r, &t.lim).unwrap());
        let s1 = t.class("S1", &[simple(&t.alg, 0)]);
        let r = perp(&s1, Side::Right, &[1], &t.universe).unwrap();
        assert!(r.position(&simple(&t.alg, 1), &t.lim).unwrap().is_none());
        assert_eq!(r.len(), 2);
    }

    #[test]
    fn projectives_and_everything() {
        let t = a2();
        let add_r = t.class("add R", &[regular_module(&t.alg)]);
        let rep = check_n_cotorsion(&add_r, &t.universe, 1, &t.universe, true, &t.lim).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass, "{}", rep.render());
        for w in rep.all_witnesses() {
            assert!(w.revalidate(&t.lim).unwrap(), "{}", w.summary());
        }
        let c = crosscheck_characterization(&add_r, &t.universe, 1, &t.universe, &t.lim).unwrap();
        assert_eq!(c.verdict, Verdict::Pass, "{}", c.render());
        let mn = check_mn_cotorsion(&add_r, &t.universe, 1, 1, &t.universe, &t.lim).unwrap();
        assert_eq!(mn.verdict, Verdict::Pass);
    }

    #[test]
    fn everything_and_injectives() {
        let t = a2();
        let inj = t.class("inj", &[injective_cogenerator(&t.alg)]);
        let rep = check_right_n_cotorsion(&t.universe, &inj, 1, &t.universe, &t.lim).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass, "{}", rep.render());
        let mn = check_mn_cotorsion(&t.universe, &inj, 1, 1, &t.universe, &t.lim).unwrap();
        assert_eq!(mn.verdict, Verdict::Pass, "{}", mn.render());
    }

    #[test]
    fn simple_pairs_fail() {
        let t = a2();
        let s1 = t.class("{S1}", &[simple(&t.alg, 0)]);
        let s2 = t.class("{S2}", &[simple(&t.alg, 1)]);
        let rep = check_left_n_cotorsion(&s1, &s2, 1, &t.universe, &t.lim).unwrap();
        assert_eq!(rep.verdict, Verdict::Fail);
        assert!(rep.witnesses.iter().any(|w| matches!(w,
            Witness::ExtNonvanishing { left, right, degree: 1, .. }
                if left.dims() == [1, 0] && right.dims() == [0, 1])));
        let rep = check_right_n_cotorsion(&s2, &s1, 1, &t.universe, &t.lim).unwrap();
        assert_eq!(rep.verdict, Verdict::Fail);
        assert!(rep
            .all_witnesses()
            .iter()
            .any(|w| matches!(w, Witness::ApproximationFails { .. }) && w.revalidate(&t.lim).unwrap()));
    }

    #[test]
    fn enlarged_class_is_reported() {
        let t = a2();
        let too_big = t.class("add R + S1", &[regular_module(&t.alg), simple(&t.alg, 0)]);
        let c = crosscheck_characterization(&too_big, &t.universe, 1, &t.universe, &t.lim).unwrap();
        assert_eq!(c.verdict, Verdict::Fail);
        assert!(c.witnesses.iter().all(|w| w.revalidate(&t.lim).unwrap()));
    }

    #[test]
    fn order_does_not_matter() {
        let t = a2();
        let mut members = t.universe.members().to_vec();
        members.reverse();
        let rev = ModuleClass::from_indecomposables(&t.alg, "mod A2", members);
        let add_r = t.class("add R", &[projective(&t.alg, 1), projective(&t.alg, 0)]);
        let a = check_n_cotorsion(&add_r, &t.universe, 1, &t.universe, false, &t.lim).unwrap();
        let b = check_n_cotorsion(&add_r, &rev, 1, &rev, false, &t.lim).unwrap();
        assert_eq!(a.verdict, b.verdict);
    }
}
