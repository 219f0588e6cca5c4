//! Gluing cotorsion pairs along a recollement and restricting them back.

use serde::Serialize;

use crate::cotor::{
    check_left_n_cotorsion, check_mn_cotorsion, check_n_cotorsion, check_right_n_cotorsion, class_difference, ext_vanishing, ModuleClass,
};
use crate::error::{Error, Result};
use crate::homap::{coresdim_class, resdim_class, ResDim, SearchMode};
use crate::limits::Limits;
use crate::modrep::Representation;
use crate::report::{CheckReport, Verdict, Witness};

use super::audit::Exactness;
use super::setting::{Category, Setting};
use super::{Functor, SixFunctors};

/// A glued pair `(A, B)` over the middle category.
pub struct Glued {
    pub a: ModuleClass,
    pub b: ModuleClass,
    pub report: CheckReport,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RestrictMode {
    Full,
    Left,
    Right,
}

impl RestrictMode {
    pub fn parse(s: &str) -> Result<RestrictMode> {
        match s {
            "full" => Ok(RestrictMode::Full),
            "left" => Ok(RestrictMode::Left),
            "right" => Ok(RestrictMode::Right),
            other => Err(Error::input(format!("unknown restriction mode `{other}` (full|left|right)"))),
        }
    }
}

/// Restricted pairs over the closed and open categories.
pub struct Restricted {
    pub closed: (ModuleClass, ModuleClass),
    pub open: (ModuleClass, ModuleClass),
    pub report: CheckReport,
}

fn expect_over<S: SixFunctors>(setting: &Setting<S>, c: &ModuleClass, cat: Category, what: &str) -> Result<()> {
    if c.algebra().same_as(setting.algebra(cat)) {
        Ok(())
    } else {
        Err(Error::input(format!(
            "{what} `{}` must live over `{}`",
            c.name(),
            setting.algebra(cat).name()
        )))
    }
}

/// `A = {D : j^*D ∈ A'', i^*D ∈ A'}` and `B = {D : j^*D ∈ B'', i^!D ∈ B'}`
/// over the total universe.
pub fn glue_members<S: SixFunctors>(
    setting: &Setting<S>,
    a1: &ModuleClass,
    b1: &ModuleClass,
    a2: &ModuleClass,
    b2: &ModuleClass,
) -> Result<(ModuleClass, ModuleClass)> {
    let inst = setting.instance();
    let limits = setting.limits();
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for d in setting.total_universe().members() {
        let jd = inst.apply(Functor::JStar, d)?;
        if a2.contains(&jd, limits)? && a1.contains(&inst.apply(Functor::IStar, d)?, limits)? {
            a.push(d.clone());
        }
        if b2.contains(&jd, limits)? && b1.contains(&inst.apply(Functor::IShriek, d)?, limits)? {
            b.push(d.clone());
        }
    }
    let total = inst.total();
    Ok((
        ModuleClass::from_indecomposables(total, format!("A[{}, {}]", a1.name(), a2.name()), a),
        ModuleClass::from_indecomposables(total, format!("B[{}, {}]", b1.name(), b2.name()), b),
    ))
}

/// Decomposed images of every member under `f`.
fn image_class<S: SixFunctors>(setting: &Setting<S>, f: Functor, c: &ModuleClass) -> Result<ModuleClass> {
    let inst = setting.instance();
    let images: Vec<Representation> = c.members().iter().map(|m| inst.apply(f, m)).collect::<Result<_>>()?;
    ModuleClass::from_modules(inst.codomain(f), format!("{f}({})", c.name()), &images, setting.limits())
}

fn compare_classes(rep: &mut CheckReport, label: &str, expected: &ModuleClass, got: &ModuleClass, limits: &Limits) -> Result<bool> {
    let (missing, unexpected) = class_difference(expected.members(), got.members(), limits)?;
    let ok = missing.is_empty() && unexpected.is_empty();
    rep.claim(label, Verdict::from_bool(ok), format!("[{}]", got.labels().join(", ")));
    if !ok {
        rep.witness(Witness::ClassMismatch {
            label: label.to_string(),
            missing,
            unexpected,
        });
    }
    Ok(ok)
}

fn exactness_hypotheses<S: SixFunctors>(setting: &Setting<S>, rep: &mut CheckReport) -> Result<(bool, bool)> {
    let mut out = [false; 2];
    for (i, f) in [Functor::IStar, Functor::IShriek].into_iter().enumerate() {
        let e = setting.exactness(f)?;
        out[i] = e.exactness == Exactness::Exact;
        rep.hypothesis(
            format!("{f} exact"),
            Verdict::from_bool(out[i]),
            format!("{} relative to {} probe sequences", e.exactness.as_str(), e.probes),
        );
    }
    Ok((out[0], out[1]))
}

fn hereditary(a: &ModuleClass, b: &ModuleClass, degree: usize) -> Result<bool> {
    let mut scratch = CheckReport::new("");
    ext_vanishing(&mut scratch, "", a, b, degree..=degree)?;
    Ok(scratch.finish().passed())
}

fn within(r: &ResDim, bound: usize) -> bool {
    matches!(r.value, Some(v) if v <= bound)
}

pub const GLUE_CLAIM_IMAGES: &str = "claim (1): image equalities";
pub const GLUE_CLAIM_RESOLUTIONS: &str = "claim (2): resolution classes";
pub const GLUE_CLAIM_PAIR: &str = "claim (3): glued pair";
pub const GLUE_CLAIM_HEREDITARY: &str = "claim (4): hereditary";

/// Glues `(A', B')` over the closed category and `(A'', B'')` over the open
/// one and checks the four conclusions. Hypotheses (exactness of `i^*` and
/// `i^!`, the inputs being n-cotorsion pairs) are audited separately and
/// never stop the conclusion checks.
pub fn glue_classes<S: SixFunctors>(
    setting: &Setting<S>,
    a1: &ModuleClass,
    b1: &ModuleClass,
    a2: &ModuleClass,
    b2: &ModuleClass,
    n: usize,
) -> Result<Glued> {
    if n == 0 {
        return Err(Error::input("n must be at least 1"));
    }
    expect_over(setting, a1, Category::Closed, "A'")?;
    expect_over(setting, b1, Category::Closed, "B'")?;
    expect_over(setting, a2, Category::Open, "A''")?;
    expect_over(setting, b2, Category::Open, "B''")?;
    let inst = setting.instance();
    let limits = setting.limits();
    let (a, b) = glue_members(setting, a1, b1, a2, b2)?;
    let mut rep = CheckReport::new(format!(
        "glue ({}, {}) and ({}, {}) along {}, n = {n}",
        a1.name(),
        b1.name(),
        a2.name(),
        b2.name(),
        inst.name()
    ));
    let (istar, ishriek) = exactness_hypotheses(setting, &mut rep)?;
    let closed_u = setting.closed_universe();
    let open_u = setting.open_universe();
    let c1 = check_n_cotorsion(a1, b1, n, closed_u, false, limits)?;
    rep.hypothesis(format!("({}, {}) is an {n}-cotorsion pair", a1.name(), b1.name()), c1.verdict, "");
    let c2 = check_n_cotorsion(a2, b2, n, open_u, false, limits)?;
    rep.hypothesis(format!("({}, {}) is an {n}-cotorsion pair", a2.name(), b2.name()), c2.verdict, "");
    let inputs_hereditary = hereditary(a1, b1, n + 1)? && hereditary(a2, b2, n + 1)?;
    rep.hypothesis("inputs hereditary", Verdict::from_bool(inputs_hereditary), format!("Ext^{} on member pairs", n + 1));

    let mut c = CheckReport::new(GLUE_CLAIM_IMAGES);
    compare_classes(&mut c, "A' = i^*(A)", a1, &image_class(setting, Functor::IStar, &a)?, limits)?;
    compare_classes(&mut c, "A'' = j^*(A)", a2, &image_class(setting, Functor::JStar, &a)?, limits)?;
    compare_classes(&mut c, "B' = i^!(B)", b1, &image_class(setting, Functor::IShriek, &b)?, limits)?;
    compare_classes(&mut c, "B'' = j^*(B)", b2, &image_class(setting, Functor::JStar, &b)?, limits)?;
    rep.child(c.finish());

    let mut c = CheckReport::new(GLUE_CLAIM_RESOLUTIONS);
    let m = n - 1;
    let mut a_ok = Verdict::Pass;
    let mut b_ok = Verdict::Pass;
    for d in setting.total_universe().members() {
        let run = || -> Result<(bool, bool, bool, bool)> {
            let cores = |x: &Representation, cls: &ModuleClass| -> Result<bool> {
                Ok(within(&coresdim_class(x, cls, m, SearchMode::Auto, limits)?, m))
            };
            let res = |x: &Representation, cls: &ModuleClass| -> Result<bool> {
                Ok(within(&resdim_class(x, cls, m, SearchMode::Auto, limits)?, m))
            };
            let jd = inst.apply(Functor::JStar, d)?;
            let lhs_a = cores(d, &a)?;
            let rhs_a = cores(&jd, a2)? && cores(&inst.apply(Functor::IStar, d)?, a1)?;
            let lhs_b = res(d, &b)?;
            let rhs_b = res(&jd, b2)? && res(&inst.apply(Functor::IShriek, d)?, b1)?;
            Ok((lhs_a, rhs_a, lhs_b, rhs_b))
        };
        match run() {
            Ok((la, ra, lb, rb)) => {
                if la != ra {
                    a_ok = a_ok.and(Verdict::Fail);
                    c.witness(Witness::Membership {
                        label: format!("A v_{m} (j^*D in A'' v_{m} and i^*D in A' v_{m}: {ra})"),
                        module: d.clone(),
                        expected: ra,
                    });
                }
                if lb != rb {
                    b_ok = b_ok.and(Verdict::Fail);
                    c.witness(Witness::Membership {
                        label: format!("B^_{m} (j^*D in B''^_{m} and i^!D in B'^_{m}: {rb})"),
                        module: d.clone(),
                        expected: rb,
                    });
                }
            }
            Err(e @ Error::Resource { .. }) => {
                a_ok = a_ok.and(Verdict::Inconclusive);
                b_ok = b_ok.and(Verdict::Inconclusive);
                c.guard_hit(e.to_string());
            }
            Err(e) => return Err(e),
        }
    }
    c.claim(format!("A v_{m} = {{D : j^*D ∈ A'' v_{m}, i^*D ∈ A' v_{m}}}"), a_ok, "");
    c.claim(format!("B^_{m} = {{D : j^*D ∈ B''^_{m}, i^!D ∈ B'^_{m}}}"), b_ok, "");
    c.note("compared on every object of the total universe");
    rep.child(c.finish());

    let mut c = CheckReport::new(GLUE_CLAIM_PAIR);
    c.child(check_n_cotorsion(&a, &b, n, setting.total_universe(), false, limits)?);
    rep.child(c.finish());

    let mut c = CheckReport::new(GLUE_CLAIM_HEREDITARY);
    if inputs_hereditary {
        ext_vanishing(&mut c, &format!("Ext^{}(A,B) = 0", n + 1), &a, &b, n + 1..=n + 1)?;
    } else {
        c.note("inputs are not hereditary; nothing to conclude");
    }
    rep.child(c.finish());

    if !(istar && ishriek) {
        rep.note("a gluing hypothesis fails (see the hypothesis audit); failed conclusions are attributable to it");
    }
    rep.note(format!("glued A = [{}]", a.labels().join(", ")));
    rep.note(format!("glued B = [{}]", b.labels().join(", ")));
    Ok(Glued {
        a,
        b,
        report: rep.finish(),
    })
}

fn pair_check(
    mode: RestrictMode,
    a: &ModuleClass,
    b: &ModuleClass,
    n: usize,
    universe: &ModuleClass,
    limits: &Limits,
) -> Result<CheckReport> {
    match mode {
        RestrictMode::Full => check_n_cotorsion(a, b, n, universe, false, limits),
        RestrictMode::Left => check_left_n_cotorsion(a, b, n, universe, limits),
        RestrictMode::Right => check_right_n_cotorsion(a, b, n, universe, limits),
    }
}

/// `outer(inner(C)) ⊆ target` on members of `c`.
fn closure<S: SixFunctors>(
    setting: &Setting<S>,
    outer: Functor,
    inner: Functor,
    c: &ModuleClass,
    target: &ModuleClass,
) -> Result<(bool, Vec<Representation>)> {
    let inst = setting.instance();
    let mut bad = Vec::new();
    for m in c.members() {
        let x = inst.apply(outer, &inst.apply(inner, m)?)?;
        if !target.contains(&x, setting.limits())? {
            bad.push(x);
        }
    }
    Ok((bad.is_empty(), bad))
}

fn closure_hypothesis<S: SixFunctors>(
    setting: &Setting<S>,
    rep: &mut CheckReport,
    outer: Functor,
    inner: Functor,
    which: (&str, &ModuleClass),
) -> Result<bool> {
    let (ok, bad) = closure(setting, outer, inner, which.1, which.1)?;
    let detail = if ok {
        String::new()
    } else {
        format!("fails on [{}]", bad.iter().map(Representation::label).collect::<Vec<_>>().join(", "))
    };
    rep.hypothesis(format!("{outer}{inner}({0}) ⊆ {0}", which.0), Verdict::from_bool(ok), detail);
    Ok(ok)
}

pub const RESTRICT_CLAIM_CLOSED: &str = "claim (1): closed restriction";
pub const RESTRICT_CLAIM_OPEN: &str = "claim (2): open restriction";
pub const RESTRICT_CLAIM_ROUND_TRIP: &str = "claim (3): round trip";
pub const RESTRICT_CLAIM_HEREDITARY: &str = "claim (4): hereditary";

/// Restricts `(A, B)` over the middle category to `(i^*A, i^!B)` and
/// `(j^*A, j^*B)`, audits the closure hypotheses and checks both restricted
/// pairs. In full mode the restricted pairs are glued again and compared
/// with `(A, B)`. One-sided modes with `n > 1` also report the restricted
/// pairs at index 1.
pub fn restrict_classes<S: SixFunctors>(
    setting: &Setting<S>,
    a: &ModuleClass,
    b: &ModuleClass,
    n: usize,
    mode: RestrictMode,
) -> Result<Restricted> {
    if n == 0 {
        return Err(Error::input("n must be at least 1"));
    }
    expect_over(setting, a, Category::Total, "A")?;
    expect_over(setting, b, Category::Total, "B")?;
    let limits = setting.limits();
    let a1 = image_class(setting, Functor::IStar, a)?;
    let b1 = image_class(setting, Functor::IShriek, b)?;
    let a2 = image_class(setting, Functor::JStar, a)?;
    let b2 = image_class(setting, Functor::JStar, b)?;
    let kind = match mode {
        RestrictMode::Full => "",
        RestrictMode::Left => "left ",
        RestrictMode::Right => "right ",
    };
    let mut rep = CheckReport::new(format!(
        "restrict {kind}({}, {}) along {}, n = {n}",
        a.name(),
        b.name(),
        setting.instance().name()
    ));
    exactness_hypotheses(setting, &mut rep)?;
    let input = pair_check(mode, a, b, n, setting.total_universe(), limits)?;
    rep.hypothesis(format!("({}, {}) is a {kind}{n}-cotorsion pair", a.name(), b.name()), input.verdict, "");
    let (lower, upper) = (Functor::ILowerStar, Functor::JLowerStar);
    match mode {
        RestrictMode::Full => {
            closure_hypothesis(setting, &mut rep, upper, Functor::JStar, ("B", b))?;
            closure_hypothesis(setting, &mut rep, lower, Functor::IStar, ("A", a))?;
            closure_hypothesis(setting, &mut rep, lower, Functor::IStar, ("B", b))?;
        }
        RestrictMode::Left => {
            closure_hypothesis(setting, &mut rep, lower, Functor::IShriek, ("B", b))?;
            closure_hypothesis(setting, &mut rep, lower, Functor::IStar, ("B", b))?;
            closure_hypothesis(setting, &mut rep, Functor::JLowerShriek, Functor::JStar, ("A", a))?;
            closure_hypothesis(setting, &mut rep, upper, Functor::JStar, ("B", b))?;
        }
        RestrictMode::Right => {
            closure_hypothesis(setting, &mut rep, lower, Functor::IStar, ("A", a))?;
            closure_hypothesis(setting, &mut rep, lower, Functor::IStar, ("B", b))?;
            closure_hypothesis(setting, &mut rep, Functor::JLowerShriek, Functor::JStar, ("A", a))?;
            closure_hypothesis(setting, &mut rep, upper, Functor::JStar, ("B", b))?;
        }
    }

    let extra = (mode != RestrictMode::Full && n > 1).then_some(1);
    for (name, pa, pb, u) in [
        (RESTRICT_CLAIM_CLOSED, &a1, &b1, setting.closed_universe()),
        (RESTRICT_CLAIM_OPEN, &a2, &b2, setting.open_universe()),
    ] {
        let mut c = CheckReport::new(name);
        c.note(format!("restricted pair ([{}], [{}])", pa.labels().join(", "), pb.labels().join(", ")));
        c.child(pair_check(mode, pa, pb, n, u, limits)?);
        if let Some(k) = extra {
            c.child(pair_check(mode, pa, pb, k, u, limits)?);
            c.note(format!(
                "index discrepancy: the restricted pair is also checked at index {k}; both verdicts are reported"
            ));
        }
        rep.child(c.finish());
    }

    if mode == RestrictMode::Full {
        let mut c = CheckReport::new(RESTRICT_CLAIM_ROUND_TRIP);
        let (ga, gb) = glue_members(setting, &a1, &b1, &a2, &b2)?;
        compare_classes(&mut c, "A_1 = A", a, &ga, limits)?;
        compare_classes(&mut c, "B_1 = B", b, &gb, limits)?;
        rep.child(c.finish());

        let mut c = CheckReport::new(RESTRICT_CLAIM_HEREDITARY);
        if hereditary(a, b, n + 1)? {
            ext_vanishing(&mut c, &format!("Ext^{}(i^*A, i^!B) = 0", n + 1), &a1, &b1, n + 1..=n + 1)?;
            ext_vanishing(&mut c, &format!("Ext^{}(j^*A, j^*B) = 0", n + 1), &a2, &b2, n + 1..=n + 1)?;
        } else {
            c.note("(A, B) is not hereditary; nothing to conclude");
        }
        rep.child(c.finish());
    }

    Ok(Restricted {
        closed: (a1, b1),
        open: (a2, b2),
        report: rep.finish(),
    })
}

/// Restriction of an (m,n)-cotorsion pair: both restricted pairs are checked
/// as (m,n)-cotorsion pairs over their universes.
pub fn restrict_mn_classes<S: SixFunctors>(
    setting: &Setting<S>,
    a: &ModuleClass,
    b: &ModuleClass,
    m: usize,
    n: usize,
) -> Result<Restricted> {
    expect_over(setting, a, Category::Total, "A")?;
    expect_over(setting, b, Category::Total, "B")?;
    let limits = setting.limits();
    let a1 = image_class(setting, Functor::IStar, a)?;
    let b1 = image_class(setting, Functor::IShriek, b)?;
    let a2 = image_class(setting, Functor::JStar, a)?;
    let b2 = image_class(setting, Functor::JStar, b)?;
    let mut rep = CheckReport::new(format!(
        "restrict ({m},{n})-pair ({}, {}) along {}",
        a.name(),
        b.name(),
        setting.instance().name()
    ));
    exactness_hypotheses(setting, &mut rep)?;
    let input = check_mn_cotorsion(a, b, m, n, setting.total_universe(), limits)?;
    rep.hypothesis(format!("({}, {}) is a ({m},{n})-cotorsion pair", a.name(), b.name()), input.verdict, "");
    closure_hypothesis(setting, &mut rep, Functor::JLowerStar, Functor::JStar, ("B", b))?;
    closure_hypothesis(setting, &mut rep, Functor::ILowerStar, Functor::IStar, ("A", a))?;
    for (name, pa, pb, u) in [
        (RESTRICT_CLAIM_CLOSED, &a1, &b1, setting.closed_universe()),
        (RESTRICT_CLAIM_OPEN, &a2, &b2, setting.open_universe()),
    ] {
        let mut c = CheckReport::new(name);
        c.child(check_mn_cotorsion(pa, pb, m, n, u, limits)?);
        rep.child(c.finish());
    }
    Ok(Restricted {
        closed: (a1, b1),
        open: (a2, b2),
        report: rep.finish(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::cotor::same_class;
    use crate::ffld::Field;
    use crate::quivalg::regular_module;
    use crate::recol::{Instance, Mode};

    fn setting(mode: Mode) -> Setting {
        let lim = Limits::default();
        let a2 = builtin::a2(Field::default(), &lim).unwrap();
        Setting::new(Instance::build(&a2, mode, &lim).unwrap(), &lim).unwrap()
    }

    fn add_regular<S: SixFunctors>(s: &Setting<S>, cat: Category) -> ModuleClass {
        let alg = s.algebra(cat);
        ModuleClass::from_modules(alg, format!("add {}", alg.name()), &[regular_module(alg)], s.limits()).unwrap()
    }

    #[test]
    fn zero_instance_glues_cleanly() {
        let s = setting(Mode::Zero);
        let r = add_regular(&s, Category::Closed);
        let all = s.closed_universe().clone();
        let g = glue_classes(&s, &r, &all, &r, &all, 1).unwrap();
        assert_eq!(g.report.verdict, Verdict::Pass, "{}", g.report.render());
        let lam = add_regular(&s, Category::Total);
        assert!(same_class(&g.a, &lam, s.limits()).unwrap());
        assert_eq!(g.b.len(), s.total_universe().len());
    }

    #[test]
    fn universes_glue_to_universe() {
        let s = setting(Mode::Regular);
        let all = s.closed_universe().clone();
        let g = glue_classes(&s, &all, &all, &all, &all, 1).unwrap();
        assert_eq!(g.a.len(), s.total_universe().len());
    }

    #[test]
    fn membership_is_idempotent() {
        let s = setting(Mode::Regular);
        let r = add_regular(&s, Category::Closed);
        let all = s.closed_universe().clone();
        let (a, b) = glue_members(&s, &r, &all, &r, &all).unwrap();
        let (a2, b2) = glue_members(&s, &r, &all, &r, &all).unwrap();
        assert_eq!(a.labels(), a2.labels());
        assert_eq!(b.labels(), b2.labels());
    }

    #[test]
    fn zero_instance_round_trip() {
        let s = setting(Mode::Zero);
        let lam = add_regular(&s, Category::Total);
        let all = s.total_universe().clone();
        let r = restrict_classes(&s, &lam, &all, 1, RestrictMode::Full).unwrap();
        assert_eq!(r.report.verdict, Verdict::Pass, "{}", r.report.render());
    }

    #[test]
    fn mn_restriction_on_zero_instance() {
        let s = setting(Mode::Zero);
        let lam = add_regular(&s, Category::Total);
        let all = s.total_universe().clone();
        let r = restrict_mn_classes(&s, &lam, &all, 1, 1).unwrap();
        assert_eq!(r.report.verdict, Verdict::Pass, "{}", r.report.render());
    }
}
