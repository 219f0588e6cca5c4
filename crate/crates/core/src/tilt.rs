//! n-tilting and n-cotilting modules, their induced cotorsion pairs and
//! gluing along a recollement.

use crate::cotor::{check_right_n_cotorsion, ext_vanishing, perp, ExtCache, ModuleClass, Side};
use crate::error::Result;
use crate::homap::{coresdim_class, min_proj_resolution, SearchMode};
use crate::limits::Limits;
use crate::modrep::{decompose, is_isomorphic, Representation};
use crate::quivalg::regular_module;
use crate::recol::{Exactness, Functor, Setting, SixFunctors};
use crate::report::{CheckReport, Verdict, Witness};

pub const T1: &str = "(T1) projective dimension";
pub const T2: &str = "(T2) self-orthogonality";
pub const T3: &str = "(T3) coresolution of the regular module";

/// Checks the three tilting conditions for `t` at index `n`.
pub fn check_n_tilting(t: &Representation, n: usize, limits: &Limits) -> Result<CheckReport> {
    let alg = t.algebra();
    let mut rep = CheckReport::new(format!("{n}-tilting {}", t.label()));

    let res = min_proj_resolution(t, n.max(limits.depth));
    let pd = res.pd;
    let pd_text = pd.map_or(format!("> {}", n.max(limits.depth)), |p| p.to_string());
    rep.claim(T1, Verdict::from_bool(matches!(pd, Some(p) if p <= n)), format!("pd = {pd_text}, n = {n}"));
    if !res.witness.terms.is_empty() {
        rep.witness(Witness::Resolution {
            label: format!("minimal projective resolution of {}", t.label()),
            resolution: res.witness.clone(),
        });
    }

    let summands: Vec<Representation> = decompose(t, limits)?.summands.into_iter().map(|s| s.module).collect();
    let add_t = ModuleClass::from_indecomposables(alg, "add T", summands);
    if n > 0 {
        ext_vanishing(&mut rep, &format!("{T2}: Ext^1..{n}(T,T) = 0"), &add_t, &add_t, 1..=n)?;
    } else {
        rep.claim(format!("{T2}: no degrees for n = 0"), Verdict::Pass, "");
    }
    let top = pd.unwrap_or(n.max(limits.depth)).max(n);
    if top > n {
        let mut cache = ExtCache::new(top);
        let mut nonzero = Vec::new();
        for x in add_t.members() {
            for y in add_t.members() {
                for i in n + 1..=top {
                    if cache.ext(x, y, i)? != 0 {
                        nonzero.push(format!("Ext^{i}({}, {})", x.label(), y.label()));
                    }
                }
            }
        }
        rep.note(format!(
            "degrees {}..{top} beyond n: {}",
            n + 1,
            if nonzero.is_empty() { "all vanish".to_string() } else { format!("nonzero {}", nonzero.join(", ")) }
        ));
    }

    let r = regular_module(alg);
    match coresdim_class(&r, &add_t, n, SearchMode::Auto, limits) {
        Ok(c) => {
            let ok = matches!(c.value, Some(v) if v <= n);
            rep.claim(
                T3,
                Verdict::from_bool(ok),
                match c.value {
                    Some(v) => format!("length {v} ({})", c.method),
                    None => format!("no coresolution of length <= {n} by add T"),
                },
            );
            if let Some(w) = c.witness {
                rep.witness(Witness::Resolution {
                    label: format!("add T-coresolution of {}", r.label()),
                    resolution: w,
                });
            }
        }
        Err(e @ crate::error::Error::Resource { .. }) => rep.inconclusive(T3, &e),
        Err(e) => return Err(e),
    }
    rep.note(format!("add T = [{}]", add_t.labels().join(", ")));
    Ok(rep.finish())
}

/// `C` is n-cotilting iff its dual is n-tilting over the opposite algebra.
pub fn check_n_cotilting(c: &Representation, n: usize, limits: &Limits) -> Result<CheckReport> {
    let mut rep = CheckReport::new(format!("{n}-cotilting {}", c.label()));
    rep.child(check_n_tilting(&c.dual(), n, limits)?);
    rep.note("checked as the tilting property of the dual module over the opposite algebra");
    Ok(rep.finish())
}

/// `(add T, T^⊥)` with its right (n+1)-cotorsion and hereditary checks.
pub struct InducedPair {
    pub add_t: ModuleClass,
    pub perp: ModuleClass,
    pub report: CheckReport,
}

pub fn induced_right_pair(t: &Representation, n: usize, universe: &ModuleClass, limits: &Limits) -> Result<InducedPair> {
    let alg = t.algebra();
    let add_t = ModuleClass::from_modules(alg, format!("add {}", t.label()), std::slice::from_ref(t), limits)?;
    let mut rep = CheckReport::new(format!("(add T, T^⊥) for T = {}, n = {n}", t.label()));
    let tilting = check_n_tilting(t, n, limits)?;
    rep.hypothesis(format!("T is {n}-tilting"), tilting.verdict, "");
    let pd = min_proj_resolution(t, n.max(limits.depth)).pd.unwrap_or(limits.depth);
    let degrees: Vec<usize> = (1..=pd.max(n).max(1)).collect();
    let tp = perp(&add_t, Side::Right, &degrees, universe)?.with_name(format!("{}⊥", t.label()));
    rep.note(format!("T^⊥ over degrees 1..{} = [{}]", degrees.len(), tp.labels().join(", ")));
    rep.child(check_right_n_cotorsion(&add_t, &tp, n + 1, universe, limits)?);
    ext_vanishing(&mut rep, &format!("hereditary: Ext^{}(add T, T^⊥) = 0", n + 2), &add_t, &tp, n + 2..=n + 2)?;
    Ok(InducedPair {
        add_t,
        perp: tp,
        report: rep.finish(),
    })
}

fn exactness_hypotheses<S: SixFunctors>(setting: &Setting<S>, rep: &mut CheckReport) -> Result<()> {
    for f in [Functor::IStar, Functor::IShriek] {
        let e = setting.exactness(f)?;
        rep.hypothesis(
            format!("{f} exact"),
            Verdict::from_bool(e.exactness == Exactness::Exact),
            format!("{} relative to {} probe sequences", e.exactness.as_str(), e.probes),
        );
    }
    Ok(())
}

/// Summands of `glued` match those of the parts, as multisets.
fn summands_match(rep: &mut CheckReport, glued: &Representation, parts: &[Representation], limits: &Limits) -> Result<()> {
    let whole = decompose(glued, limits)?.expanded();
    let mut pieces = Vec::new();
    for p in parts {
        pieces.extend(decompose(p, limits)?.expanded());
    }
    let mut used = vec![false; pieces.len()];
    let mut ok = whole.len() == pieces.len();
    for w in &whole {
        let mut hit = false;
        for (i, p) in pieces.iter().enumerate() {
            if !used[i] && p.dims() == w.dims() && is_isomorphic(w, p, limits)?.holds() {
                used[i] = true;
                hit = true;
                break;
            }
        }
        ok &= hit;
    }
    rep.claim(
        "summands of the glued module are the summands of the parts",
        Verdict::from_bool(ok),
        format!("{} summands", whole.len()),
    );
    Ok(())
}

/// `T = j_!(T'') ⊕ i_*(T')` and its tilting check over the middle category.
pub fn glue_tilting<S: SixFunctors>(
    setting: &Setting<S>,
    t_closed: &Representation,
    t_open: &Representation,
    n: usize,
) -> Result<(Representation, CheckReport)> {
    let inst = setting.instance();
    let limits = setting.limits();
    let a = inst.apply(Functor::JLowerShriek, t_open)?;
    let b = inst.apply(Functor::ILowerStar, t_closed)?;
    let t = Representation::direct_sum(inst.total(), &[a.clone(), b.clone()])
        .with_name(format!("j_!({}) ⊕ i_*({})", t_open.label(), t_closed.label()));
    let mut rep = CheckReport::new(format!("glued {n}-tilting module on {}", inst.name()));
    exactness_hypotheses(setting, &mut rep)?;
    rep.hypothesis(format!("T' = {} is {n}-tilting", t_closed.label()), check_n_tilting(t_closed, n, limits)?.verdict, "");
    rep.hypothesis(format!("T'' = {} is {n}-tilting", t_open.label()), check_n_tilting(t_open, n, limits)?.verdict, "");
    summands_match(&mut rep, &t, &[a, b], limits)?;
    rep.child(check_n_tilting(&t, n, limits)?);
    Ok((t, rep.finish()))
}

/// `C = j_*(C'') ⊕ i_*(C')` and its cotilting check over the middle category.
pub fn glue_cotilting<S: SixFunctors>(
    setting: &Setting<S>,
    c_closed: &Representation,
    c_open: &Representation,
    n: usize,
) -> Result<(Representation, CheckReport)> {
    let inst = setting.instance();
    let limits = setting.limits();
    let a = inst.apply(Functor::JLowerStar, c_open)?;
    let b = inst.apply(Functor::ILowerStar, c_closed)?;
    let c = Representation::direct_sum(inst.total(), &[a.clone(), b.clone()])
        .with_name(format!("j_*({}) ⊕ i_*({})", c_open.label(), c_closed.label()));
    let mut rep = CheckReport::new(format!("glued {n}-cotilting module on {}", inst.name()));
    exactness_hypotheses(setting, &mut rep)?;
    rep.hypothesis(format!("C' = {} is {n}-cotilting", c_closed.label()), check_n_cotilting(c_closed, n, limits)?.verdict, "");
    rep.hypothesis(format!("C'' = {} is {n}-cotilting", c_open.label()), check_n_cotilting(c_open, n, limits)?.verdict, "");
    summands_match(&mut rep, &c, &[a, b], limits)?;
    rep.child(check_n_cotilting(&c, n, limits)?);
    Ok((c, rep.finish()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::ffld::Field;
    use crate::modrep::{enumerate_indecomposables, isomorphic};
    use crate::quivalg::{injective_cogenerator, projective, simple};
    use crate::recol::{Instance, Mode};

    fn a2() -> (std::sync::Arc<crate::quivalg::Algebra>, Limits) {
        let lim = Limits::default();
        (builtin::a2(Field::default(), &lim).unwrap(), lim)
    }

    #[test]
    fn regular_module_is_zero_tilting() {
        let (a, lim) = a2();
        let r = check_n_tilting(&regular_module(&a), 0, &lim).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{}", r.render());
        let lam = builtin::lambda(Field::default(), &lim).unwrap();
        assert!(check_n_tilting(&regular_module(&lam), 0, &lim).unwrap().passed());
    }

    #[test]
    fn apr_tilt() {
        let (a, lim) = a2();
        let t = Representation::direct_sum(&a, &[projective(&a, 0), simple(&a, 0)]);
        let r = check_n_tilting(&t, 1, &lim).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{}", r.render());
        for w in r.all_witnesses() {
            assert!(w.revalidate(&lim).unwrap());
        }
        assert!(!check_n_tilting(&t, 0, &lim).unwrap().passed());
    }

    #[test]
    fn cotilting_examples() {
        let (a, lim) = a2();
        assert!(check_n_cotilting(&injective_cogenerator(&a), 0, &lim).unwrap().passed());
        assert!(check_n_cotilting(&regular_module(&a), 1, &lim).unwrap().passed());
        assert!(!check_n_cotilting(&simple(&a, 1), 0, &lim).unwrap().passed());
    }

    #[test]
    fn induced_pairs() {
        let (a, lim) = a2();
        let u = ModuleClass::universe(&a, &enumerate_indecomposables(&a, 1, &lim).unwrap());
        let p = induced_right_pair(&regular_module(&a), 0, &u, &lim).unwrap();
        assert_eq!(p.report.verdict, Verdict::Pass, "{}", p.report.render());
        assert_eq!(p.perp.len(), 3);
        let t = Representation::direct_sum(&a, &[projective(&a, 0), simple(&a, 0)]);
        let p = induced_right_pair(&t, 1, &u, &lim).unwrap();
        assert_eq!(p.report.verdict, Verdict::Pass, "{}", p.report.render());
    }

    #[test]
    fn gluing_regular_modules() {
        let (a, lim) = a2();
        for mode in [Mode::Regular, Mode::Zero] {
            let s = Setting::new(Instance::build(&a, mode, &lim).unwrap(), &lim).unwrap();
            let r = regular_module(&a);
            let (t, rep) = glue_tilting(&s, &r, &r, 0).unwrap();
            assert!(isomorphic(&t, &regular_module(s.instance().total()), &lim).unwrap());
            assert!(rep.find(&format!("0-tilting {}", t.label())).unwrap().passed());
        }
        let s = Setting::new(Instance::build(&a, Mode::Zero, &lim).unwrap(), &lim).unwrap();
        let dr = injective_cogenerator(&a);
        let (_, rep) = glue_cotilting(&s, &dr, &dr, 0).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass, "{}", rep.render());
        let zero = Representation::zero(&a);
        let (_, rep) = glue_cotilting(&s, &zero, &dr, 0).unwrap();
        assert_eq!(rep.verdict, Verdict::Fail);
    }
}
