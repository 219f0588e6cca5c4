//! The built-in worked example: `A2 = k(1 -> 2)` and the lower triangular
//! matrix algebra `Λ` over it.
//!
//! Every stage records the verdict it is expected to reach together with a
//! few named expectations about the result. A stage is fine when both match;
//! some stages are expected to fail (the regular instance has an inexact
//! `i^*`) and are then checked for failing in the right way.

use std::sync::Arc;

use serde::Serialize;

use crate::builtin;
use crate::cotor::{check_left_n_cotorsion, check_n_cotorsion, class_difference, same_class, ModuleClass};
use crate::error::{Error, Result};
use crate::ffld::Field;
use crate::limits::Limits;
use crate::modrep::{enumerate_indecomposables, hom_basis, isomorphic, Morphism, Representation};
use crate::quivalg::{projective, regular_module, simple, Algebra};
use crate::recol::{
    audit_axioms, exactness_report, ext_adjunction_check, glue_classes, restrict_classes, Category, Exactness, Functor,
    Instance, Mode, RestrictMode, Setting, SixFunctors, TripleRep, GLUE_CLAIM_PAIR, RESTRICT_CLAIM_CLOSED, RESTRICT_CLAIM_OPEN,
    RESTRICT_CLAIM_ROUND_TRIP,
};
use crate::report::{CheckReport, Claim, Verdict, Witness};
use crate::tilt::glue_tilting;

#[derive(Clone, Debug, Serialize)]
pub struct Stage {
    pub name: String,
    pub expected: Verdict,
    pub verdict: Verdict,
    pub ok: bool,
    pub expectations: Vec<Claim>,
    pub report: CheckReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExampleRun {
    pub check: String,
    pub prime: u32,
    pub verdict: Verdict,
    pub stages: Vec<Stage>,
}

impl ExampleRun {
    pub fn stage(&self, name: &str) -> Option<&Stage> {
        self.stages.iter().find(|s| s.name == name)
    }

    pub fn first_unexpected(&self) -> Option<&Stage> {
        self.stages.iter().find(|s| !s.ok)
    }

    pub fn exit_code(&self) -> i32 {
        if self.first_unexpected().is_some() {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// One claim per stage: it passes when the stage behaved as expected.
    pub fn to_report(&self) -> CheckReport {
        let mut r = CheckReport::new(format!("{} over F_{}", self.check, self.prime));
        for s in &self.stages {
            r.claim(
                s.name.clone(),
                Verdict::from_bool(s.ok),
                format!("expected {}, got {}", s.expected.as_str(), s.verdict.as_str()),
            );
            if !s.ok {
                r.witnesses.extend(s.report.all_witnesses().into_iter().cloned());
            }
        }
        r.data = serde_json::to_value(self).ok();
        r.finish()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for s in &self.stages {
            let mark = if s.ok { "ok" } else { "UNEXPECTED" };
            out.push_str(&format!(
                "{mark:>10}  {} (expected {}, got {})\n",
                s.name,
                s.expected.as_str(),
                s.verdict.as_str()
            ));
            for e in &s.expectations {
                out.push_str(&format!("            {}: {}", e.name, e.verdict.as_str()));
                if !e.detail.is_empty() {
                    out.push_str(&format!(" ({})", e.detail));
                }
                out.push('\n');
            }
        }
        out
    }
}

pub const STAGE_A2: &str = "build A2";
pub const STAGE_MOD_R: &str = "enumerate mod R";
pub const STAGE_LAMBDA: &str = "build regular instance";
pub const STAGE_MOD_LAMBDA: &str = "enumerate mod Λ";
pub const STAGE_AXIOMS: &str = "recollement axioms";
pub const STAGE_EXACTNESS: &str = "exactness probes";
pub const STAGE_FAMILIES: &str = "Ext adjunction families";
pub const STAGE_TILTING: &str = "glue tilting modules R and R";
pub const STAGE_PAIR: &str = "(add Λ, mod Λ) is a hereditary 1-cotorsion pair";
pub const STAGE_RESTRICT: &str = "restrict (add Λ, mod Λ)";
pub const STAGE_LEFT2: &str = "(add Λ, add Λ) is a left 2-cotorsion pair";
pub const STAGE_RESTRICT_LEFT: &str = "restrict (add Λ, add Λ) in left mode";
pub const STAGE_NEGATIVE: &str = "glue (add R, mod R) twice on the regular instance";
pub const STAGE_POSITIVE: &str = "glue (add R, mod R) twice on the zero instance";

struct Runner {
    stages: Vec<Stage>,
}

impl Runner {
    fn push(&mut self, name: &str, expected: Verdict, report: CheckReport, expectations: Vec<Claim>) {
        let verdict = report.verdict;
        let ok = verdict == expected && expectations.iter().all(|c| c.verdict == Verdict::Pass);
        self.stages.push(Stage {
            name: name.to_string(),
            expected,
            verdict,
            ok,
            expectations,
            report,
        });
    }
}

fn expect(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Claim {
    Claim {
        name: name.into(),
        verdict: Verdict::from_bool(ok),
        detail: detail.into(),
    }
}

fn in_stage<T>(stage: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Resource { guard, detail } => Error::Resource {
            guard,
            detail: format!("stage `{stage}`: {detail}"),
        },
        other => Error::input(format!("stage `{stage}`: {other}")),
    })
}

fn the_morphism(x: &Representation, y: &Representation) -> Result<Morphism> {
    let b = hom_basis(x, y)?;
    match b.len() {
        1 => Ok(b.into_iter().next().expect("one")),
        d => Err(Error::input(format!("expected a one-dimensional Hom space, got dimension {d}"))),
    }
}

/// The eleven triples `(X, Y)_f` of the Auslander-Reiten quiver of `Λ`, built
/// directly from `S1`, `S2 = P2` and `P1` over `A2`.
pub fn ar_vertices(inst: &Instance) -> Result<Vec<Representation>> {
    let a2 = inst.base();
    let (s1, s2, p1) = (simple(a2, 0), simple(a2, 1), projective(a2, 0));
    let zero = Representation::zero(a2);
    let named = |x: &Representation, xn: &str, y: &Representation, yn: &str, nonzero: bool| -> Result<Representation> {
        let f = if nonzero {
            the_morphism(x, y)?
        } else {
            Morphism::zero(x, y)
        };
        let t = TripleRep::new(x.clone(), y.clone(), Some(f))?;
        Ok(inst.to_total(&t)?.with_name(format!("({xn},{yn})")))
    };
    Ok(vec![
        named(&zero, "0", &s2, "S2", false)?,
        named(&zero, "0", &p1, "P1", false)?,
        named(&s2, "S2", &s2, "S2", true)?,
        named(&s2, "S2", &p1, "P1", true)?,
        named(&s2, "S2", &zero, "0", false)?,
        named(&p1, "P1", &p1, "P1", true)?,
        named(&zero, "0", &s1, "S1", false)?,
        named(&p1, "P1", &s1, "S1", true)?,
        named(&s1, "S1", &s1, "S1", true)?,
        named(&p1, "P1", &zero, "0", false)?,
        named(&s1, "S1", &zero, "0", false)?,
    ])
}

fn add_regular(alg: &Arc<Algebra>, limits: &Limits) -> Result<ModuleClass> {
    ModuleClass::from_modules(alg, format!("add {}", alg.name()), &[regular_module(alg)], limits)
}

fn class_expect(label: &str, got: &ModuleClass, want: &ModuleClass, limits: &Limits) -> Result<Claim> {
    let (missing, extra) = class_difference(want.members(), got.members(), limits)?;
    let names = |v: &[Representation]| v.iter().map(|m| m.label()).collect::<Vec<_>>().join(", ");
    Ok(expect(
        format!("{label} = {}", want.name()),
        missing.is_empty() && extra.is_empty(),
        if missing.is_empty() && extra.is_empty() {
            format!("{} members", got.len())
        } else {
            format!("missing [{}], extra [{}]", names(&missing), names(&extra))
        },
    ))
}

fn is_iso(a: &Representation, b: &Representation, limits: &Limits) -> Result<bool> {
    Ok(a.dims() == b.dims() && isomorphic(a, b, limits)?)
}

/// Runs the whole example over `F_p`. Errors are input problems or exhausted
/// guards; mathematical outcomes are in the stages.
pub fn paper_example(p: u64, limits: &Limits) -> Result<ExampleRun> {
    let field = Field::new(p)?;
    let mut run = Runner { stages: Vec::new() };

    // A2 and its modules.
    let a2 = in_stage(STAGE_A2, builtin::a2(field, limits))?;
    let mut rep = CheckReport::new("the path algebra of 1 -> 2");
    rep.claim("dimension 3", Verdict::from_bool(a2.dimension() == 3), format!("dimension {}", a2.dimension()));
    run.push(STAGE_A2, Verdict::Pass, rep.finish(), vec![]);

    let e = in_stage(STAGE_MOD_R, enumerate_indecomposables(&a2, limits.dim_bound, limits))?;
    let mut rep = CheckReport::new(format!("indecomposable {}-modules", a2.name()));
    for m in &e.modules {
        rep.note(format!("{} {:?}", m.label(), m.dims()));
    }
    rep.claim("3 isomorphism classes", Verdict::from_bool(e.modules.len() == 3), format!("{} found", e.modules.len()));
    let mut dims: Vec<Vec<usize>> = e.modules.iter().map(|m| m.dims().to_vec()).collect();
    dims.sort();
    let dims_ok = dims == vec![vec![0, 1], vec![1, 0], vec![1, 1]];
    run.push(
        STAGE_MOD_R,
        Verdict::Pass,
        rep.finish(),
        vec![expect("dimension vectors S1, S2, P1", dims_ok, format!("{dims:?}"))],
    );

    // Λ and the recollement.
    let inst = in_stage(STAGE_LAMBDA, Instance::build(&a2, Mode::Regular, limits))?;
    let lam = inst.total().clone();
    let mut rep = CheckReport::new(format!("triangular matrix algebra {}", lam.name()));
    rep.claim("dimension 9", Verdict::from_bool(lam.dimension() == 9), format!("dimension {}", lam.dimension()));
    rep.claim(
        "4 vertices, 4 arrows, 1 commutativity relation",
        Verdict::from_bool(lam.vertex_count() == 4 && lam.arrow_count() == 4 && lam.relations().len() == 1),
        format!("{} vertices, {} arrows, {} relations", lam.vertex_count(), lam.arrow_count(), lam.relations().len()),
    );
    for r in lam.relations() {
        rep.note(format!("relation {}", r.label(lam.quiver())));
    }
    run.push(STAGE_LAMBDA, Verdict::Pass, rep.finish(), vec![]);

    let s = in_stage(STAGE_MOD_LAMBDA, Setting::new(inst.clone(), limits))?;
    let total = s.total_universe().clone();
    let mut rep = CheckReport::new(format!("indecomposable {}-modules", lam.name()));
    for m in total.members() {
        let label = in_stage(STAGE_MOD_LAMBDA, inst.triple_label(m, limits))?;
        rep.note(format!("{label} {:?}", m.dims()));
    }
    rep.claim("11 isomorphism classes", Verdict::from_bool(total.len() == 11), format!("{} found", total.len()));
    let ar = ModuleClass::from_indecomposables(&lam, "AR quiver vertices", in_stage(STAGE_MOD_LAMBDA, ar_vertices(&inst))?);
    let ar_ok = in_stage(STAGE_MOD_LAMBDA, class_expect("mod Λ", &total, &ar, limits))?;
    run.push(STAGE_MOD_LAMBDA, Verdict::Pass, rep.finish(), vec![ar_ok]);

    let rep = in_stage(STAGE_AXIOMS, audit_axioms(&s))?;
    run.push(STAGE_AXIOMS, Verdict::Pass, rep, vec![]);

    let rep = in_stage(STAGE_EXACTNESS, exactness_report(&s))?;
    let mut ex = Vec::new();
    let istar = in_stage(STAGE_EXACTNESS, s.exactness(Functor::IStar))?;
    ex.push(expect(
        "i^* is right exact but not exact",
        istar.exactness == Exactness::RightOnly,
        istar.exactness.as_str(),
    ));
    let mut others = Vec::new();
    for f in Functor::ALL.into_iter().filter(|f| *f != Functor::IStar) {
        let o = in_stage(STAGE_EXACTNESS, s.exactness(f))?;
        if o.exactness != Exactness::Exact {
            others.push(format!("{f} is {}", o.exactness.as_str()));
        }
    }
    ex.push(expect("the other five functors are exact", others.is_empty(), others.join(", ")));
    let ar = ar.members();
    let (s2, p1p1, p1s1) = (&ar[0], &ar[5], &ar[7]);
    let mut seen = false;
    for w in &istar.witnesses {
        if let Witness::Inexact { f, g, .. } = w {
            if in_stage(STAGE_EXACTNESS, is_iso(f.source(), s2, limits))?
                && in_stage(STAGE_EXACTNESS, is_iso(f.target(), p1p1, limits))?
                && in_stage(STAGE_EXACTNESS, is_iso(g.target(), p1s1, limits))?
            {
                seen = true;
            }
        }
    }
    ex.push(expect("i^* breaks 0 -> (0,S2) -> (P1,P1) -> (P1,S1) -> 0", seen, ""));
    run.push(STAGE_EXACTNESS, Verdict::Pass, rep, ex);

    let rep = in_stage(STAGE_FAMILIES, ext_adjunction_check(&s, 3))?;
    let mut ex = Vec::new();
    for c in &rep.children {
        let first = c.check.starts_with("family (1)");
        let want = if first { Verdict::Fail } else { Verdict::Pass };
        let mut detail = c.verdict.as_str().to_string();
        let mut ok = c.verdict == want;
        if first {
            let n = c.witnesses.iter().filter(|w| matches!(w, Witness::ExtDimMismatch { .. })).count();
            ok &= n > 0;
            detail = format!("{detail}, {n} counterexamples");
        }
        ex.push(expect(format!("{} is {}", c.check, want.as_str()), ok, detail));
    }
    ex.push(expect("four families checked", rep.children.len() == 4, ""));
    run.push(STAGE_FAMILIES, Verdict::Fail, rep, ex);

    // Tilting.
    let r = regular_module(&a2);
    let (t, rep) = in_stage(STAGE_TILTING, glue_tilting(&s, &r, &r, 0))?;
    let reg = regular_module(&lam);
    let iso = in_stage(STAGE_TILTING, is_iso(&t, &reg, limits))?;
    let projs: Vec<Representation> = (0..lam.vertex_count()).map(|v| projective(&lam, v)).collect();
    let tc = in_stage(STAGE_TILTING, ModuleClass::from_modules(&lam, "summands of T", std::slice::from_ref(&t), limits))?;
    let pc = ModuleClass::from_indecomposables(&lam, "indecomposable projectives", projs);
    let summands = in_stage(STAGE_TILTING, class_expect("summands of T", &tc, &pc, limits))?;
    run.push(
        STAGE_TILTING,
        Verdict::Pass,
        rep,
        vec![expect(format!("{} ≅ Λ", t.label()), iso, ""), summands],
    );

    // Cotorsion pairs over Λ and their restrictions.
    let add_lam = in_stage(STAGE_PAIR, add_regular(&lam, limits))?;
    let add_r = in_stage(STAGE_PAIR, add_regular(&a2, limits))?;
    let mod_r = s.closed_universe().clone();
    let rep = in_stage(STAGE_PAIR, check_n_cotorsion(&add_lam, &total, 1, &total, true, limits))?;
    run.push(STAGE_PAIR, Verdict::Pass, rep, vec![]);

    let res = in_stage(STAGE_RESTRICT, restrict_classes(&s, &add_lam, &total, 1, RestrictMode::Full))?;
    let mut ex = Vec::new();
    for (label, got, want) in [
        ("i^*(add Λ)", &res.closed.0, &add_r),
        ("i^!(mod Λ)", &res.closed.1, &mod_r),
        ("j^*(add Λ)", &res.open.0, &add_r),
        ("j^*(mod Λ)", &res.open.1, &mod_r),
    ] {
        ex.push(in_stage(STAGE_RESTRICT, class_expect(label, got, want, limits))?);
    }
    for name in [RESTRICT_CLAIM_CLOSED, RESTRICT_CLAIM_OPEN] {
        let v = res.report.find(name).map(|c| c.verdict);
        ex.push(expect(format!("{name} passes"), v == Some(Verdict::Pass), format!("{v:?}")));
    }
    // Gluing the restrictions back gives a class strictly larger than add Λ:
    // (P1,S1) has i^* = 0 and j^* = P1. This is the expected failure.
    let rt = res.report.find(RESTRICT_CLAIM_ROUND_TRIP).map(|c| c.verdict);
    ex.push(expect(
        format!("{RESTRICT_CLAIM_ROUND_TRIP} fails because i^* is not exact"),
        rt == Some(Verdict::Fail) && istar.exactness != Exactness::Exact,
        format!("{rt:?}"),
    ));
    run.push(STAGE_RESTRICT, Verdict::Fail, res.report, ex);

    let rep = in_stage(STAGE_LEFT2, check_left_n_cotorsion(&add_lam, &add_lam, 2, &total, limits))?;
    run.push(STAGE_LEFT2, Verdict::Pass, rep, vec![]);

    let res = in_stage(STAGE_RESTRICT_LEFT, restrict_classes(&s, &add_lam, &add_lam, 2, RestrictMode::Left))?;
    let mut ex = Vec::new();
    for (label, got) in [
        ("i^*(add Λ)", &res.closed.0),
        ("i^!(add Λ)", &res.closed.1),
        ("j^*(add Λ)", &res.open.0),
        ("j^*(add Λ) ", &res.open.1),
    ] {
        ex.push(in_stage(STAGE_RESTRICT_LEFT, class_expect(label.trim_end(), got, &add_r, limits))?);
    }
    let flagged = notes_contain(&res.report, "index discrepancy");
    ex.push(expect("index discrepancy is flagged", flagged, ""));
    run.push(STAGE_RESTRICT_LEFT, Verdict::Pass, res.report, ex);

    // Gluing.
    let g = in_stage(STAGE_NEGATIVE, glue_classes(&s, &add_r, &mod_r, &add_r, &mod_r, 1))?;
    let mut ex = Vec::new();
    let h = g.report.hypothesis_status("i^* exact");
    ex.push(expect("hypothesis `i^* exact` is audited as failing", h == Some(Verdict::Fail), format!("{h:?}")));
    let pair = g.report.find(GLUE_CLAIM_PAIR).map(|c| c.verdict);
    ex.push(expect(format!("{GLUE_CLAIM_PAIR} fails"), pair == Some(Verdict::Fail), format!("{pair:?}")));
    let mut hit = false;
    for w in g.report.all_witnesses() {
        if let Witness::ExtNonvanishing { left, right, degree: 1, .. } = w {
            if in_stage(STAGE_NEGATIVE, is_iso(left, p1s1, limits))? && in_stage(STAGE_NEGATIVE, is_iso(right, s2, limits))? {
                hit = true;
            }
        }
    }
    ex.push(expect("Ext^1((P1,S1), (0,S2)) != 0 is witnessed", hit, ""));
    run.push(STAGE_NEGATIVE, Verdict::Fail, g.report, ex);

    let zinst = in_stage(STAGE_POSITIVE, Instance::build(&a2, Mode::Zero, limits))?;
    let zs = in_stage(STAGE_POSITIVE, Setting::new(zinst, limits))?;
    let zr = in_stage(STAGE_POSITIVE, add_regular(zs.algebra(Category::Closed), limits))?;
    let zmod = zs.closed_universe().clone();
    let g = in_stage(STAGE_POSITIVE, glue_classes(&zs, &zr, &zmod, &zr, &zmod, 1))?;
    let zlam = in_stage(STAGE_POSITIVE, add_regular(zs.algebra(Category::Total), limits))?;
    let mut ex = vec![
        in_stage(STAGE_POSITIVE, class_expect("glued A", &g.a, &zlam, limits))?,
        in_stage(STAGE_POSITIVE, class_expect("glued B", &g.b, zs.total_universe(), limits))?,
    ];
    let back = in_stage(STAGE_POSITIVE, restrict_classes(&zs, &g.a, &g.b, 1, RestrictMode::Full))?;
    let rt = back.report.find(RESTRICT_CLAIM_ROUND_TRIP).map(|c| c.verdict);
    ex.push(expect("restricting and gluing again is the identity", rt == Some(Verdict::Pass), format!("{rt:?}")));
    let same = in_stage(STAGE_POSITIVE, same_class(&back.closed.0, &zr, limits))?
        && in_stage(STAGE_POSITIVE, same_class(&back.open.1, &zmod, limits))?;
    ex.push(expect("restrictions recover (add R, mod R)", same, ""));
    let mut rep = g.report;
    rep.child(back.report);
    let rep = rep.finish();
    run.push(STAGE_POSITIVE, Verdict::Pass, rep, ex);

    let verdict = Verdict::from_bool(run.stages.iter().all(|s| s.ok));
    Ok(ExampleRun {
        check: "worked example over A2".into(),
        prime: field.p(),
        verdict,
        stages: run.stages,
    })
}

fn notes_contain(r: &CheckReport, needle: &str) -> bool {
    r.notes.iter().any(|n| n.contains(needle)) || r.children.iter().any(|c| notes_contain(c, needle))
}
