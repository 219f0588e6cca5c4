//! Axiom audits, exactness probes and Ext adjunction checks.

use std::sync::Arc;

use serde::Serialize;

use crate::cotor::{class_difference, ExtCache, ModuleClass};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::modrep::{hom_basis, hom_dim, is_isomorphic, kernel_cokernel, projective_cover, syzygy, Morphism, Representation};
use crate::quivalg::{injective, projective, Algebra};
use crate::report::{short_exact_failure, CheckReport, Verdict, Witness};

use super::setting::Setting;
use super::{Functor, SixFunctors};

/// `0 -> A --f--> B --g--> C -> 0`, exact by construction.
#[derive(Clone, Debug)]
pub struct ProbeSequence {
    pub label: String,
    pub f: Morphism,
    pub g: Morphism,
}

/// Projective cover and injective envelope sequences of every member, plus
/// the kernel/image and image/cokernel sequences of every Hom basis element
/// between members. Sequences with a zero end term are skipped.
pub fn probe_sequences(universe: &ModuleClass, _limits: &Limits) -> Result<Vec<ProbeSequence>> {
    let mut out = Vec::new();
    for m in universe.members() {
        let (k, inc, epi) = syzygy(m);
        if !k.is_zero() {
            out.push(ProbeSequence {
                label: format!("projective cover of {}", m.label()),
                f: inc,
                g: epi,
            });
        }
        let (kd, incd, epid) = syzygy(&m.dual());
        if !kd.is_zero() {
            let env = epid.dual().with_endpoints(m.clone(), epid.source().dual());
            out.push(ProbeSequence {
                label: format!("injective envelope of {}", m.label()),
                g: incd.dual(),
                f: env,
            });
        }
    }
    for m in universe.members() {
        for n in universe.members() {
            for (i, h) in hom_basis(m, n)?.iter().enumerate() {
                let kc = kernel_cokernel(h);
                let name = format!("h{i}: {} -> {}", m.label(), n.label());
                if !kc.kernel.is_zero() && !kc.image.is_zero() {
                    out.push(ProbeSequence {
                        label: format!("kernel and image of {name}"),
                        f: kc.inclusion.clone(),
                        g: kc.coimage.clone(),
                    });
                }
                if !kc.image.is_zero() && !kc.cokernel.is_zero() {
                    out.push(ProbeSequence {
                        label: format!("image and cokernel of {name}"),
                        f: kc.image_inclusion.clone(),
                        g: kc.projection.clone(),
                    });
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exactness {
    Exact,
    LeftOnly,
    RightOnly,
    Neither,
}

impl Exactness {
    pub fn as_str(self) -> &'static str {
        match self {
            Exactness::Exact => "exact",
            Exactness::LeftOnly => "left-only",
            Exactness::RightOnly => "right-only",
            Exactness::Neither => "neither",
        }
    }
    pub fn left_exact(self) -> bool {
        matches!(self, Exactness::Exact | Exactness::LeftOnly)
    }
    pub fn right_exact(self) -> bool {
        matches!(self, Exactness::Exact | Exactness::RightOnly)
    }
}

/// Classification of one functor relative to a probe set.
#[derive(Clone, Debug)]
pub struct ProbeOutcome {
    pub functor: Functor,
    pub exactness: Exactness,
    pub probes: usize,
    pub left_failures: usize,
    pub right_failures: usize,
    pub witnesses: Vec<Witness>,
}

const MAX_WITNESSES: usize = 16;

fn middle_exact(a: &Morphism, b: &Morphism) -> bool {
    a.then(b).is_zero()
        && (0..a.blocks().len()).all(|v| a.block(v).rank() + b.block(v).rank() == a.target().dim(v))
}

pub fn exactness_probe<S: SixFunctors + ?Sized>(inst: &S, functor: Functor, probes: &[ProbeSequence]) -> Result<ProbeOutcome> {
    let (mut left_failures, mut right_failures) = (0, 0);
    let mut witnesses = Vec::new();
    for p in probes {
        let a = inst.apply_morphism(functor, &p.f)?;
        let b = inst.apply_morphism(functor, &p.g)?;
        let mid = middle_exact(&a, &b);
        let left = mid && a.is_injective();
        let right = mid && b.is_surjective();
        left_failures += usize::from(!left);
        right_failures += usize::from(!right);
        if !(left && right) && witnesses.len() < MAX_WITNESSES {
            let failure = short_exact_failure(&a, &b).unwrap_or_default();
            witnesses.push(Witness::Inexact {
                functor: functor.symbol().into(),
                f: p.f.clone(),
                g: p.g.clone(),
                image_f: a,
                image_g: b,
                failure: format!("{failure} ({})", p.label),
            });
        }
    }
    let exactness = match (left_failures == 0, right_failures == 0) {
        (true, true) => Exactness::Exact,
        (true, false) => Exactness::LeftOnly,
        (false, true) => Exactness::RightOnly,
        (false, false) => Exactness::Neither,
    };
    Ok(ProbeOutcome {
        functor,
        exactness,
        probes: probes.len(),
        left_failures,
        right_failures,
        witnesses,
    })
}

/// Records an implication `hypothesis => conclusion` as a claim.
fn implication(rep: &mut CheckReport, name: &str, hypothesis: bool, conclusion: bool, detail: &str) {
    let (v, d) = match (hypothesis, conclusion) {
        (true, c) => (Verdict::from_bool(c), detail.to_string()),
        (false, true) => (Verdict::Pass, format!("hypothesis not met; conclusion holds anyway. {detail}")),
        (false, false) => (Verdict::Pass, format!("hypothesis not met; conclusion fails. {detail}")),
    };
    rep.claim(name, v, d.trim().to_string());
}

/// Classifies all six functors and checks the exactness statements that hold
/// in every recollement.
pub fn exactness_report<S: SixFunctors>(setting: &Setting<S>) -> Result<CheckReport> {
    let mut rep = CheckReport::new(format!("exactness of the six functors ({})", setting.instance().name()));
    let class = |f: Functor, rep: &mut CheckReport| -> Result<Exactness> {
        let o = setting.exactness(f)?;
        rep.note(format!(
            "{f}: {} relative to {} probe sequences ({} left, {} right failures)",
            o.exactness.as_str(),
            o.probes,
            o.left_failures,
            o.right_failures
        ));
        for w in &o.witnesses {
            rep.witness(w.clone());
        }
        Ok(o.exactness)
    };
    let mut e = std::collections::BTreeMap::new();
    for f in Functor::ALL {
        e.insert(f, class(f, &mut rep)?);
    }
    let s = |f: Functor| e[&f].as_str();
    rep.claim("i_* exact", Verdict::from_bool(e[&Functor::ILowerStar] == Exactness::Exact), s(Functor::ILowerStar));
    rep.claim("j^* exact", Verdict::from_bool(e[&Functor::JStar] == Exactness::Exact), s(Functor::JStar));
    for f in [Functor::IStar, Functor::JLowerShriek] {
        rep.claim(format!("{f} right exact"), Verdict::from_bool(e[&f].right_exact()), s(f));
    }
    for f in [Functor::IShriek, Functor::JLowerStar] {
        rep.claim(format!("{f} left exact"), Verdict::from_bool(e[&f].left_exact()), s(f));
    }
    implication(
        &mut rep,
        "i^* exact => j_! exact",
        e[&Functor::IStar] == Exactness::Exact,
        e[&Functor::JLowerShriek] == Exactness::Exact,
        "",
    );
    implication(
        &mut rep,
        "i^! exact => j_* exact",
        e[&Functor::IShriek] == Exactness::Exact,
        e[&Functor::JLowerStar] == Exactness::Exact,
        "",
    );
    rep.note("exactness is classified relative to the probe set, not claimed universally");
    Ok(rep.finish())
}

/// A recollement with one functor's action replaced by another functor
/// between the same categories. Used to exercise the audits.
#[derive(Clone, Debug)]
pub struct Corrupted<S> {
    inner: S,
    target: Functor,
    substitute: Functor,
}

impl<S: SixFunctors> Corrupted<S> {
    pub fn new(inner: S, target: Functor, substitute: Functor) -> Result<Self> {
        if !inner.domain(target).same_as(inner.domain(substitute))
            || !inner.codomain(target).same_as(inner.codomain(substitute))
        {
            return Err(Error::input(format!("{substitute} cannot stand in for {target}")));
        }
        Ok(Corrupted {
            inner,
            target,
            substitute,
        })
    }

    fn route(&self, f: Functor) -> Functor {
        if f == self.target {
            self.substitute
        } else {
            f
        }
    }
}

impl<S: SixFunctors> SixFunctors for Corrupted<S> {
    fn closed(&self) -> &Arc<Algebra> {
        self.inner.closed()
    }
    fn total(&self) -> &Arc<Algebra> {
        self.inner.total()
    }
    fn open(&self) -> &Arc<Algebra> {
        self.inner.open()
    }
    fn apply(&self, f: Functor, m: &Representation) -> Result<Representation> {
        self.inner.apply(self.route(f), m)
    }
    fn apply_morphism(&self, f: Functor, g: &Morphism) -> Result<Morphism> {
        self.inner.apply_morphism(self.route(f), g)
    }
    fn name(&self) -> String {
        format!("{} with {} acting as {}", self.inner.name(), self.target, self.substitute)
    }
}

fn is_projective(m: &Representation) -> bool {
    m.is_zero() || projective_cover(m).0.dims() == m.dims()
}

fn is_injective(m: &Representation) -> bool {
    is_projective(&m.dual())
}

fn projectives(alg: &Arc<Algebra>) -> Vec<Representation> {
    (0..alg.vertex_count()).map(|v| projective(alg, v)).collect()
}

fn injectives(alg: &Arc<Algebra>) -> Vec<Representation> {
    (0..alg.vertex_count()).map(|v| injective(alg, v)).collect()
}

const MAX_PAIR_WITNESSES: usize = 64;

/// `dim Hom(F a, b) = dim Hom(a, G b)` for `a`, `b` in the given universes.
fn adjunction<S: SixFunctors>(
    rep: &mut CheckReport,
    inst: &S,
    left: Functor,
    right: Functor,
    us: &[Representation],
    vs: &[Representation],
) -> Result<()> {
    let mut bad = 0;
    let mut pairs = 0;
    for a in us {
        let fa = inst.apply(left, a)?;
        for b in vs {
            let gb = inst.apply(right, b)?;
            let l = hom_dim(&fa, b)?;
            let r = hom_dim(a, &gb)?;
            pairs += 1;
            if l != r {
                bad += 1;
                if bad <= MAX_PAIR_WITNESSES {
                    rep.witness(Witness::HomDimMismatch {
                        label: format!("Hom({left}({}), {}) vs Hom({}, {right}({}))", a.label(), b.label(), a.label(), b.label()),
                        lhs: (fa.clone(), b.clone()),
                        rhs: (a.clone(), gb),
                        lhs_dim: l,
                        rhs_dim: r,
                    });
                }
            }
        }
    }
    rep.claim(
        format!("({left}, {right}) adjoint"),
        Verdict::from_bool(bad == 0),
        format!("{} of {pairs} pairs agree", pairs - bad),
    );
    Ok(())
}

fn fully_faithful<S: SixFunctors>(rep: &mut CheckReport, inst: &S, f: Functor, us: &[Representation]) -> Result<()> {
    let images: Vec<Representation> = us.iter().map(|m| inst.apply(f, m)).collect::<Result<_>>()?;
    let mut bad = 0;
    for (i, a) in us.iter().enumerate() {
        for (j, b) in us.iter().enumerate() {
            let l = hom_dim(&images[i], &images[j])?;
            let r = hom_dim(a, b)?;
            if l != r {
                bad += 1;
                if bad <= MAX_PAIR_WITNESSES {
                    rep.witness(Witness::HomDimMismatch {
                        label: format!("{f} on Hom({}, {})", a.label(), b.label()),
                        lhs: (images[i].clone(), images[j].clone()),
                        rhs: (a.clone(), b.clone()),
                        lhs_dim: l,
                        rhs_dim: r,
                    });
                }
            }
        }
    }
    rep.claim(format!("{f} fully faithful"), Verdict::from_bool(bad == 0), format!("{} pairs", us.len() * us.len()));
    Ok(())
}

/// Composite `outer ∘ inner` vanishes on every member.
fn composite_zero<S: SixFunctors>(inst: &S, outer: Functor, inner: Functor, us: &[Representation]) -> Result<Vec<(Representation, Representation)>> {
    let mut bad = Vec::new();
    for m in us {
        let r = inst.apply(outer, &inst.apply(inner, m)?)?;
        if !r.is_zero() {
            bad.push((m.clone(), r));
        }
    }
    Ok(bad)
}

fn record_zero(rep: &mut CheckReport, label: &str, bad: &[(Representation, Representation)]) {
    for (m, r) in bad {
        rep.witness(Witness::NotIsomorphic {
            label: format!("{label} on {}", m.label()),
            left: r.clone(),
            right: Representation::zero(r.algebra()),
        });
    }
}

/// `outer ∘ inner ≅ id` on every member.
fn round_trip<S: SixFunctors>(
    rep: &mut CheckReport,
    inst: &S,
    outer: Functor,
    inner: Functor,
    us: &[Representation],
    limits: &Limits,
) -> Result<()> {
    let mut bad = Vec::new();
    for m in us {
        let r = inst.apply(outer, &inst.apply(inner, m)?)?;
        if !is_isomorphic(&r, m, limits)?.holds() {
            bad.push(m.label());
            rep.witness(Witness::NotIsomorphic {
                label: format!("{outer}{inner}({})", m.label()),
                left: r,
                right: m.clone(),
            });
        }
    }
    rep.claim(
        format!("{outer}{inner} ≅ id"),
        Verdict::from_bool(bad.is_empty()),
        if bad.is_empty() { format!("{} objects", us.len()) } else { format!("fails on {}", bad.join(", ")) },
    );
    Ok(())
}

/// Every image is projective (or injective) and the images generate all
/// projectives (or injectives) of the codomain.
fn preservation<S: SixFunctors>(
    rep: &mut CheckReport,
    inst: &S,
    f: Functor,
    projective_side: bool,
) -> Result<(bool, String)> {
    let src = inst.domain(f);
    let objs = if projective_side { projectives(src) } else { injectives(src) };
    let kind = if projective_side { "projective" } else { "injective" };
    let mut bad = Vec::new();
    for m in &objs {
        let r = inst.apply(f, m)?;
        let ok = if projective_side { is_projective(&r) } else { is_injective(&r) };
        if !ok {
            bad.push(m.label());
            rep.witness(Witness::Membership {
                label: format!("{kind} objects (image under {f})"),
                module: r,
                expected: true,
            });
        }
    }
    let detail = if bad.is_empty() {
        format!("{} indecomposable {kind}s", objs.len())
    } else {
        format!("{f} of {} is not {kind}", bad.join(", "))
    };
    Ok((bad.is_empty(), detail))
}

/// `add F(proj D) = proj D'` style equality.
fn generates<S: SixFunctors>(rep: &mut CheckReport, inst: &S, f: Functor, projective_side: bool, limits: &Limits) -> Result<bool> {
    let src = inst.domain(f);
    let dst = inst.codomain(f);
    let objs = if projective_side { projectives(src) } else { injectives(src) };
    let targets = if projective_side { projectives(dst) } else { injectives(dst) };
    let images: Vec<Representation> = objs.iter().map(|m| inst.apply(f, m)).collect::<Result<_>>()?;
    let images = ModuleClass::from_modules(dst, "images", &images, limits)?;
    let (missing, unexpected) = class_difference(&targets, images.members(), limits)?;
    let ok = missing.is_empty() && unexpected.is_empty();
    if !ok {
        rep.witness(Witness::ClassMismatch {
            label: format!("add {f}({}) vs {}", if projective_side { "proj" } else { "inj" }, dst.name()),
            missing,
            unexpected,
        });
    }
    Ok(ok)
}

/// Adjunctions, full faithfulness, `Im i_* = Ker j^*`, the composite
/// identities, unit/counit isomorphisms and preservation of projectives and
/// injectives, over the enumerated universes.
pub fn audit_axioms<S: SixFunctors>(setting: &Setting<S>) -> Result<CheckReport> {
    let inst = setting.instance();
    let limits = setting.limits();
    let closed = setting.closed_universe().members();
    let total = setting.total_universe().members();
    let open = setting.open_universe().members();
    let mut top = CheckReport::new(format!("recollement axioms ({})", inst.name()));

    let mut adj = CheckReport::new("adjoint pairs");
    adjunction(&mut adj, inst, Functor::IStar, Functor::ILowerStar, total, closed)?;
    adjunction(&mut adj, inst, Functor::ILowerStar, Functor::IShriek, closed, total)?;
    adjunction(&mut adj, inst, Functor::JLowerShriek, Functor::JStar, open, total)?;
    adjunction(&mut adj, inst, Functor::JStar, Functor::JLowerStar, total, open)?;
    adj.note("compared as Hom dimensions on all pairs of universe objects");
    top.child(adj.finish());

    let mut ff = CheckReport::new("full faithfulness");
    fully_faithful(&mut ff, inst, Functor::ILowerStar, closed)?;
    fully_faithful(&mut ff, inst, Functor::JLowerShriek, open)?;
    fully_faithful(&mut ff, inst, Functor::JLowerStar, open)?;
    top.child(ff.finish());

    let mut imker = CheckReport::new("Im i_* = Ker j^*");
    let images: Vec<Representation> = closed
        .iter()
        .map(|m| inst.apply(Functor::ILowerStar, m))
        .collect::<Result<_>>()?;
    let im = ModuleClass::from_modules(inst.total(), "Im i_*", &images, limits)?;
    let mut ker = Vec::new();
    for m in total {
        if inst.apply(Functor::JStar, m)?.is_zero() {
            ker.push(m.clone());
        }
    }
    let (missing, unexpected) = class_difference(im.members(), &ker, limits)?;
    let ok = missing.is_empty() && unexpected.is_empty();
    imker.claim(
        "Im i_* = Ker j^*",
        Verdict::from_bool(ok),
        format!("{} classes in the image, {} in the kernel", im.len(), ker.len()),
    );
    if !ok {
        imker.witness(Witness::ClassMismatch {
            label: "Im i_* (missing from Ker j^*) vs Ker j^* (missing from Im i_*)".into(),
            missing,
            unexpected,
        });
    }
    top.child(imker.finish());

    let mut comp = CheckReport::new("composite identities");
    let a = composite_zero(inst, Functor::IStar, Functor::JLowerShriek, open)?;
    record_zero(&mut comp, "i^*j_!", &a);
    comp.claim("i^*j_! = 0", Verdict::from_bool(a.is_empty()), "");
    let b = composite_zero(inst, Functor::IShriek, Functor::JLowerStar, open)?;
    record_zero(&mut comp, "i^!j_*", &b);
    comp.claim("i^!j_* = 0", Verdict::from_bool(b.is_empty()), "");
    let istar = setting.exactness(Functor::IStar)?.exactness == Exactness::Exact;
    let ishriek = setting.exactness(Functor::IShriek)?.exactness == Exactness::Exact;
    let c = composite_zero(inst, Functor::IShriek, Functor::JLowerShriek, open)?;
    if istar {
        record_zero(&mut comp, "i^!j_!", &c);
    }
    implication(&mut comp, "i^* exact => i^!j_! = 0", istar, c.is_empty(), "");
    let d = composite_zero(inst, Functor::IStar, Functor::JLowerStar, open)?;
    if ishriek {
        record_zero(&mut comp, "i^*j_*", &d);
    }
    implication(&mut comp, "i^! exact => i^*j_* = 0", ishriek, d.is_empty(), "");
    top.child(comp.finish());

    let mut unit = CheckReport::new("unit and counit isomorphisms");
    round_trip(&mut unit, inst, Functor::IStar, Functor::ILowerStar, closed, limits)?;
    round_trip(&mut unit, inst, Functor::IShriek, Functor::ILowerStar, closed, limits)?;
    round_trip(&mut unit, inst, Functor::JStar, Functor::JLowerShriek, open, limits)?;
    round_trip(&mut unit, inst, Functor::JStar, Functor::JLowerStar, open, limits)?;
    unit.note("checked as object isomorphisms on every universe object");
    top.child(unit.finish());

    let mut pres = CheckReport::new("projectives and injectives");
    for (f, proj) in [
        (Functor::IStar, true),
        (Functor::IShriek, false),
        (Functor::JLowerShriek, true),
        (Functor::JLowerStar, false),
    ] {
        let kind = if proj { "projectives" } else { "injectives" };
        let (ok, detail) = preservation(&mut pres, inst, f, proj)?;
        pres.claim(format!("{f} preserves {kind}"), Verdict::from_bool(ok), detail);
    }
    for (f, proj) in [(Functor::IStar, true), (Functor::IShriek, false)] {
        let kind = if proj { "proj" } else { "inj" };
        let ok = generates(&mut pres, inst, f, proj, limits)?;
        pres.claim(format!("{kind} D' = add {f}({kind} D)"), Verdict::from_bool(ok), "");
    }
    let jl = setting.exactness(Functor::JLowerStar)?.exactness == Exactness::Exact;
    let (ok, detail) = preservation(&mut pres, inst, Functor::JStar, true)?;
    let gen = generates(&mut pres, inst, Functor::JStar, true, limits)?;
    implication(&mut pres, "j_* exact => j^* preserves projectives", jl, ok && gen, &detail);
    let js = setting.exactness(Functor::JLowerShriek)?.exactness == Exactness::Exact;
    let (ok, detail) = preservation(&mut pres, inst, Functor::JStar, false)?;
    let gen = generates(&mut pres, inst, Functor::JStar, false, limits)?;
    implication(&mut pres, "j_! exact => j^* preserves injectives", js, ok && gen, &detail);
    top.child(pres.finish());

    for (c, u) in [
        ("closed", setting.closed_universe()),
        ("total", setting.total_universe()),
        ("open", setting.open_universe()),
    ] {
        top.note(format!("{c} universe `{}`: {} indecomposables", u.name(), u.len()));
    }
    Ok(top.finish())
}

/// Compares Ext dimensions across the four adjunction families up to degree
/// `k_max`. Each family records its exactness hypothesis separately; the
/// comparison is always run.
pub fn ext_adjunction_check<S: SixFunctors>(setting: &Setting<S>, k_max: usize) -> Result<CheckReport> {
    let inst = setting.instance();
    let closed = setting.closed_universe().members();
    let total = setting.total_universe().members();
    let open = setting.open_universe().members();
    let mut top = CheckReport::new(format!("Ext adjunctions up to degree {k_max} ({})", inst.name()));
    // (hypothesis functor, left functor applied to the first argument,
    //  right functor applied to the second, universes)
    let families: [(&str, Functor, Functor, Functor, &[Representation], &[Representation]); 4] = [
        ("(1) Ext^k(i^*X, Y) = Ext^k(X, i_*Y)", Functor::IStar, Functor::IStar, Functor::ILowerStar, total, closed),
        ("(2) Ext^k(i_*X, Y) = Ext^k(X, i^!Y)", Functor::IShriek, Functor::ILowerStar, Functor::IShriek, closed, total),
        ("(3) Ext^k(j_!X, Y) = Ext^k(X, j^*Y)", Functor::JLowerShriek, Functor::JLowerShriek, Functor::JStar, open, total),
        ("(4) Ext^k(j^*X, Y) = Ext^k(X, j_*Y)", Functor::JLowerStar, Functor::JStar, Functor::JLowerStar, total, open),
    ];
    for (name, hyp, lf, rf, xs, ys) in families {
        let mut rep = CheckReport::new(format!("family {name}"));
        let e = setting.exactness(hyp)?;
        rep.hypothesis(
            format!("{hyp} exact"),
            Verdict::from_bool(e.exactness == Exactness::Exact),
            format!("{} relative to {} probe sequences", e.exactness.as_str(), e.probes),
        );
        let mut cache_l = ExtCache::new(k_max);
        let mut cache_r = ExtCache::new(k_max);
        let mut bad = 0;
        let mut pairs = 0;
        for x in xs {
            let fx = inst.apply(lf, x)?;
            for y in ys {
                let gy = inst.apply(rf, y)?;
                for k in 1..=k_max {
                    let l = cache_l.ext(&fx, y, k)?;
                    let r = cache_r.ext(x, &gy, k)?;
                    pairs += 1;
                    if l != r {
                        bad += 1;
                        if bad <= MAX_PAIR_WITNESSES {
                            rep.witness(Witness::ExtDimMismatch {
                                label: format!("X = {}, Y = {}", x.label(), y.label()),
                                lhs: (fx.clone(), y.clone()),
                                rhs: (x.clone(), gy.clone()),
                                degree: k,
                                lhs_dim: l,
                                rhs_dim: r,
                            });
                        }
                    }
                }
            }
        }
        rep.claim(
            format!("Ext dimensions agree for 1 <= k <= {k_max}"),
            Verdict::from_bool(bad == 0),
            format!("{} of {pairs} comparisons agree", pairs - bad),
        );
        if e.exactness != Exactness::Exact {
            rep.note(format!(
                "the hypothesis fails, so disagreement is not excluded; {}",
                if bad == 0 { "none was found" } else { "counterexamples are attached" }
            ));
        }
        top.child(rep.finish());
    }
    Ok(top.finish())
}
