//! Randomised invariants. Modules are random direct sums of enumerated
//! indecomposables with a random change of basis at every vertex, so nothing
//! here sees the "nice" block form the enumerator produced.

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use glueco::builtin;
use glueco::cotor::{check_n_cotorsion, crosscheck_characterization, perp, same_class, ModuleClass, Side};
use glueco::homap::{ext_dim, resdim_class, SearchMode};
use glueco::modrep::{decompose, enumerate_indecomposables, hom_dim, isomorphic, syzygy};
use glueco::quivalg::{injective_cogenerator, projective, regular_module, simple, standard_modules};
use glueco::recol::{glue_members, Functor, Instance, Mode, Setting, SixFunctors, TripleRep};
use glueco::tilt::{check_n_cotilting, check_n_tilting, glue_tilting};
use glueco::{Algebra, CheckReport, Field, Limits, Mat, Representation, Verdict, Witness};

struct World {
    lim: Limits,
    reg: Setting,
    zero: Setting,
}

fn world() -> &'static World {
    static W: OnceLock<World> = OnceLock::new();
    W.get_or_init(|| {
        let lim = Limits::default();
        let a2 = builtin::a2(Field::new(2).unwrap(), &lim).unwrap();
        let reg = Setting::new(Instance::build(&a2, Mode::Regular, &lim).unwrap(), &lim).unwrap();
        let zero = Setting::new(Instance::build(&a2, Mode::Zero, &lim).unwrap(), &lim).unwrap();
        World { lim, reg, zero }
    })
}

/// The three universes used below: A2, Λ, and A2 × A2.
fn universe(which: usize) -> &'static ModuleClass {
    let w = world();
    match which {
        0 => w.reg.closed_universe(),
        1 => w.reg.total_universe(),
        _ => w.zero.total_universe(),
    }
}

/// Unit lower times unit upper triangular: always invertible.
fn invertible(field: Field, n: usize, entries: &[u32]) -> Mat {
    let mut it = entries.iter().copied().cycle();
    let mut l = Mat::identity(field, n);
    let mut u = Mat::identity(field, n);
    for i in 0..n {
        for j in 0..i {
            l.set(i, j, field.reduce(it.next().unwrap_or(0) as i64));
            u.set(j, i, field.reduce(it.next().unwrap_or(0) as i64));
        }
    }
    l.mul(&u)
}

fn scramble(m: &Representation, entries: &[u32]) -> Representation {
    let alg = m.algebra();
    let f = alg.field();
    let g: Vec<Mat> = (0..alg.vertex_count())
        .map(|v| invertible(f, m.dim(v), &entries[(v * 7) % entries.len()..]))
        .collect();
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| g[a.target].mul(m.map(i)).mul(&g[a.source].inverse().expect("invertible")))
        .collect();
    Representation::new(alg.clone(), m.dims().to_vec(), maps).unwrap()
}

fn sum_of(u: &ModuleClass, picks: &[usize], entries: &[u32]) -> Representation {
    let parts: Vec<Representation> = picks.iter().map(|&i| u.members()[i % u.len()].clone()).collect();
    scramble(&Representation::direct_sum(u.algebra(), &parts), entries)
}

fn subset(u: &ModuleClass, mask: u32, name: &str) -> ModuleClass {
    let members = u
        .members()
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> (i % 32) & 1 == 1)
        .map(|(_, m)| m.clone())
        .collect();
    ModuleClass::from_indecomposables(u.algebra(), name, members)
}

fn reversed(c: &ModuleClass) -> ModuleClass {
    let mut m = c.members().to_vec();
    m.reverse();
    ModuleClass::from_indecomposables(c.algebra(), c.name(), m)
}

fn all_witnesses_hold(r: &CheckReport, lim: &Limits) -> bool {
    r.all_witnesses().into_iter().all(|w| w.revalidate(lim).unwrap())
}

/// Multiset equality up to isomorphism.
fn same_multiset(a: &[Representation], b: &[Representation], lim: &Limits) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    'outer: for x in a {
        for (j, y) in b.iter().enumerate() {
            if !used[j] && x.dims() == y.dims() && isomorphic(x, y, lim).unwrap() {
                used[j] = true;
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn picks() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..64, 1..=3)
}

fn noise() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..2, 64)
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn hom_from_projective_is_the_vertex_dimension(u in 0usize..3, p in picks(), e in noise()) {
        let m = sum_of(universe(u), &p, &e);
        let alg = m.algebra();
        for v in 0..alg.vertex_count() {
            prop_assert_eq!(hom_dim(&projective(alg, v), &m).unwrap(), m.dim(v));
        }
    }

    #[test]
    fn hom_is_additive(u in 0usize..3, p in picks(), q in picks(), x in 0usize..64, e in noise()) {
        let un = universe(u);
        let (m, n) = (sum_of(un, &p, &e), sum_of(un, &q, &e[3..]));
        let x = &un.members()[x % un.len()];
        let sum = Representation::direct_sum(un.algebra(), &[m.clone(), n.clone()]);
        prop_assert_eq!(hom_dim(&sum, x).unwrap(), hom_dim(&m, x).unwrap() + hom_dim(&n, x).unwrap());
        prop_assert_eq!(hom_dim(x, &sum).unwrap(), hom_dim(x, &m).unwrap() + hom_dim(x, &n).unwrap());
    }

    #[test]
    fn krull_schmidt(u in 0usize..3, p in picks(), e in noise(), e2 in noise()) {
        let w = world();
        let un = universe(u);
        let m = sum_of(un, &p, &e);
        let expected: Vec<Representation> = p.iter().map(|&i| un.members()[i % un.len()].clone()).collect();
        let d1 = decompose(&m, &w.lim).unwrap();
        prop_assert!(d1.certified());
        prop_assert!(same_multiset(&d1.expanded(), &expected, &w.lim));
        // Another basis of the same module decomposes the same way.
        let d2 = decompose(&scramble(&m, &e2), &w.lim).unwrap();
        prop_assert!(same_multiset(&d1.expanded(), &d2.expanded(), &w.lim));
        // Idempotent on summands.
        for s in d1.expanded() {
            let again = decompose(&s, &w.lim).unwrap().expanded();
            prop_assert_eq!(again.len(), 1);
            prop_assert!(isomorphic(&again[0], &s, &w.lim).unwrap());
        }
    }

    #[test]
    fn ext_dimension_shift(u in 0usize..3, p in picks(), q in picks(), e in noise()) {
        let un = universe(u);
        let (m, n) = (sum_of(un, &p, &e), sum_of(un, &q, &e[5..]));
        let (om, _, _) = syzygy(&m);
        for i in 2..=3 {
            let shifted = if om.is_zero() { 0 } else { ext_dim(&om, &n, i - 1).unwrap() };
            prop_assert_eq!(ext_dim(&m, &n, i).unwrap(), shifted);
        }
    }

    #[test]
    fn ext_duality(u in 0usize..3, p in picks(), q in picks(), e in noise()) {
        let un = universe(u);
        let (m, n) = (sum_of(un, &p, &e), sum_of(un, &q, &e[5..]));
        for i in 1..=3 {
            prop_assert_eq!(ext_dim(&m, &n, i).unwrap(), ext_dim(&n.dual(), &m.dual(), i).unwrap());
        }
    }

}

// Searches with exhaustive fallbacks: fewer cases.
proptest! {
    #![proptest_config(config(16))]

    #[test]
    fn greedy_agrees_with_oracle(u in 0usize..3, mask in 1u32..2048, d in 0usize..64) {
        let w = world();
        let un = universe(u);
        let c = subset(un, mask, "C");
        prop_assume!(!c.is_empty());
        let d = &un.members()[d % un.len()];
        let g = resdim_class(d, &c, 3, SearchMode::Greedy, &w.lim).unwrap();
        // A search that hits the guard has no value to compare.
        let o = match resdim_class(d, &c, 3, SearchMode::Oracle, &w.lim) {
            Err(glueco::Error::Resource { .. }) => return Ok(()),
            r => r.unwrap(),
        };
        if let (Some(gv), Some(ov)) = (g.value, o.value) {
            prop_assert_eq!(gv, ov);
        }
        // Greedy never beats the oracle.
        if g.value.is_some() {
            prop_assert!(o.value.is_some());
        }
        for wit in [&g.witness, &o.witness].into_iter().flatten() {
            prop_assert!(wit.validate().is_ok());
        }
    }

    #[test]
    fn class_membership_is_closed_under_summands(u in 0usize..3, mask in 0u32..2048, p in picks(), e in noise()) {
        let w = world();
        let un = universe(u);
        let c = subset(un, mask, "C");
        let m = sum_of(un, &p, &e);
        let inside = c.contains(&m, &w.lim).unwrap();
        let expected = p.iter().all(|&i| mask >> ((i % un.len()) % 32) & 1 == 1);
        prop_assert_eq!(inside, expected);
        if inside {
            for s in decompose(&m, &w.lim).unwrap().expanded() {
                prop_assert!(c.contains(&s, &w.lim).unwrap());
            }
        }
    }

    #[test]
    fn cotorsion_checks_agree_and_witnesses_hold(u in 0usize..3, mask in 0u32..2048, n in 1usize..=2) {
        let w = world();
        let un = universe(u);
        let degrees: Vec<usize> = (1..=n).collect();
        // Closing up a random class makes passing pairs common.
        let a0 = subset(un, mask, "A0");
        let b = perp(&a0, Side::Right, &degrees, un).unwrap().with_name("B");
        let a = perp(&b, Side::Left, &degrees, un).unwrap().with_name("A");
        let rep = check_n_cotorsion(&a, &b, n, un, false, &w.lim).unwrap();
        if rep.passed() {
            prop_assert!(crosscheck_characterization(&a, &b, n, un, &w.lim).unwrap().passed());
        }
        prop_assert!(all_witnesses_hold(&rep, &w.lim));
        let shuffled = check_n_cotorsion(&reversed(&a), &reversed(&b), n, &reversed(un), false, &w.lim).unwrap();
        prop_assert_eq!(shuffled.verdict, rep.verdict);
        // An arbitrary pair: the verdict may go either way, witnesses must hold.
        let (x, y) = (subset(un, mask, "X"), subset(un, mask.rotate_left(5) ^ 0x2a5, "Y"));
        let rep = check_n_cotorsion(&x, &y, n, un, true, &w.lim).unwrap();
        prop_assert!(all_witnesses_hold(&rep, &w.lim));
        if rep.verdict == Verdict::Fail {
            prop_assert!(!rep.all_witnesses().is_empty());
        }
    }

    #[test]
    fn glued_members_do_not_depend_on_order(regular in any::<bool>(), masks in prop::array::uniform4(0u32..8)) {
        let w = world();
        let s = if regular { &w.reg } else { &w.zero };
        let (cu, ou) = (s.closed_universe(), s.open_universe());
        let cls = [subset(cu, masks[0], "A'"), subset(cu, masks[1], "B'"), subset(ou, masks[2], "A''"), subset(ou, masks[3], "B''")];
        let (a, b) = glue_members(s, &cls[0], &cls[1], &cls[2], &cls[3]).unwrap();
        let (a2, b2) = glue_members(s, &reversed(&cls[0]), &reversed(&cls[1]), &reversed(&cls[2]), &reversed(&cls[3])).unwrap();
        prop_assert!(same_class(&a, &a2, &w.lim).unwrap() && same_class(&b, &b2, &w.lim).unwrap());
        let (a3, b3) = glue_members(s, &cls[0], &cls[1], &cls[2], &cls[3]).unwrap();
        prop_assert_eq!(a.labels(), a3.labels());
        prop_assert_eq!(b.labels(), b3.labels());
    }

    #[test]
    fn tilting_and_cotilting_are_dual(p in picks(), n in 0usize..=2, e in noise()) {
        let w = world();
        let t = sum_of(universe(0), &p, &e);
        dual_agrees(&t, n, &w.lim)?;
    }

    #[test]
    fn tilting_and_cotilting_are_dual_over_lambda(regular in any::<bool>(), apr in any::<bool>(), p in picks(), n in 0usize..=2, e in noise()) {
        let w = world();
        let s = if regular { &w.reg } else { &w.zero };
        let (base, extra) = tilting_parts(s, apr);
        let mut parts = vec![base];
        parts.extend(p.iter().map(|&i| extra.members()[i % extra.len()].clone()));
        let t = scramble(&Representation::direct_sum(s.instance().total(), &parts), &e);
        dual_agrees(&t, n, &w.lim)?;
    }

    #[test]
    fn glued_tilting_module_splits_as_its_parts(regular in any::<bool>(), p in picks(), q in picks(), e in noise()) {
        let w = world();
        let s = if regular { &w.reg } else { &w.zero };
        let a2 = s.instance().closed();
        let (tc, to) = (a2_tilting(a2, &p, &e), a2_tilting(a2, &q, &e[9..]));
        let (t, rep) = glue_tilting(s, &tc, &to, 1).unwrap();
        let inst = s.instance();
        let mut parts = decompose(&inst.apply(Functor::JLowerShriek, &to).unwrap(), &w.lim).unwrap().expanded();
        parts.extend(decompose(&inst.apply(Functor::ILowerStar, &tc).unwrap(), &w.lim).unwrap().expanded());
        prop_assert!(same_multiset(&decompose(&t, &w.lim).unwrap().expanded(), &parts, &w.lim));
        // With every functor exact, gluing two 1-tilting modules gives one.
        let both = check_n_tilting(&tc, 1, &w.lim).unwrap().passed() && check_n_tilting(&to, 1, &w.lim).unwrap().passed();
        if !regular && both {
            prop_assert_eq!(rep.verdict, Verdict::Pass);
        }
    }
}

fn dual_agrees(t: &Representation, n: usize, lim: &Limits) -> Result<(), TestCaseError> {
    let rep = check_n_tilting(t, n, lim).unwrap();
    prop_assert_eq!(rep.verdict, check_n_cotilting(&t.dual(), n, lim).unwrap().verdict);
    if rep.passed() {
        let has_resolution = rep.all_witnesses().into_iter().any(|x| matches!(x, Witness::Resolution { .. }));
        prop_assert!(has_resolution);
    }
    prop_assert!(all_witnesses_hold(&rep, lim));
    Ok(())
}

/// R or P1 ⊕ S1 (the two basic 1-tilting A2-modules), each summand repeated
/// once or twice.
fn a2_tilting(a2: &Arc<Algebra>, picks: &[usize], e: &[u32]) -> Representation {
    let summands = if picks[0].is_multiple_of(2) {
        [projective(a2, 0), projective(a2, 1)]
    } else {
        [projective(a2, 0), simple(a2, 0)]
    };
    let mut parts = summands.to_vec();
    parts.extend(picks[1..].iter().map(|&i| summands[i % 2].clone()));
    scramble(&Representation::direct_sum(a2, &parts), e)
}

/// A tilting Λ-module (Λ itself, or the module glued from two copies of
/// P1 ⊕ S1) and a pool of extra summands to pile on top of it.
fn tilting_parts(s: &Setting, apr: bool) -> (Representation, ModuleClass) {
    let w = world();
    let inst = s.instance();
    let lam = inst.total();
    let a2 = inst.closed();
    let apr_a2 = Representation::direct_sum(a2, &[projective(a2, 0), simple(a2, 0)]);
    let glued = Representation::direct_sum(
        lam,
        &[inst.apply(Functor::JLowerShriek, &apr_a2).unwrap(), inst.apply(Functor::ILowerStar, &apr_a2).unwrap()],
    );
    let base = if apr { glued.clone() } else { regular_module(lam) };
    let pool = [regular_module(lam), injective_cogenerator(lam), glued];
    (base, ModuleClass::from_modules(lam, "extra summands", &pool, &w.lim).unwrap())
}

fn check_algebra(alg: &Arc<Algebra>) {
    let total: usize = (0..alg.vertex_count()).map(|v| projective(alg, v).total_dim()).sum();
    assert_eq!(total, alg.dimension(), "{}", alg.name());
    // Path basis grouped by endpoints matches the projectives vertex by vertex.
    for v in 0..alg.vertex_count() {
        for t in 0..alg.vertex_count() {
            assert_eq!(alg.basis_between(v, t).len(), projective(alg, v).dim(t), "{} {v}->{t}", alg.name());
        }
    }
    for v in 0..alg.vertex_count() {
        let (p, i, s) = standard_modules(alg, v).unwrap();
        for m in [p, i, s] {
            assert!(glueco::modrep::validate_rep(&m).passed(), "{}", m.label());
        }
    }
}

#[test]
fn algebra_dimensions_match_projectives() {
    let w = world();
    for s in [&w.reg, &w.zero] {
        check_algebra(s.instance().closed());
        check_algebra(s.instance().total());
        check_algebra(&s.instance().total().opposite());
    }
}

#[test]
fn enumerated_universes_are_certified_and_distinct() {
    let w = world();
    for u in 0..3 {
        let un = universe(u);
        let e = enumerate_indecomposables(un.algebra(), 1, &w.lim).unwrap();
        assert!(e.certified);
        for (i, a) in e.modules.iter().enumerate() {
            for b in &e.modules[i + 1..] {
                assert!(!isomorphic(a, b, &w.lim).unwrap());
            }
        }
    }
    // One vertex, no arrows: only the simple, however large the bound.
    let pt = builtin::point(Field::new(2).unwrap(), &w.lim).unwrap();
    let e = enumerate_indecomposables(&pt, 2, &w.lim).unwrap();
    assert_eq!(e.modules.len(), 1);
    assert!(isomorphic(&e.modules[0], &simple(&pt, 0), &w.lim).unwrap());
}

#[test]
fn triples_round_trip() {
    let w = world();
    for s in [&w.reg, &w.zero] {
        let inst = s.instance();
        for m in s.total_universe().members() {
            let t: TripleRep = inst.from_total(m).unwrap();
            let back = inst.to_total(&t).unwrap();
            assert!(isomorphic(&back, m, &w.lim).unwrap(), "{}", m.label());
        }
    }
}
