//! Verdicts, hypothesis audits and typed witnesses shared by every check.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::homap::{ext_dim, ResolutionWitness};
use crate::limits::Limits;
use crate::modrep::{hom_dim, isomorphic, Morphism, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// Conjunction: any failure fails, otherwise any gap is inconclusive.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::Inconclusive, _) | (_, Verdict::Inconclusive) => Verdict::Inconclusive,
            _ => Verdict::Pass,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub name: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

/// A concrete, re-checkable piece of evidence.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    RelationViolation {
        module: Representation,
        relation: String,
    },
    /// `Ext^degree(left, right)` has dimension `dim`.
    ExtNonvanishing {
        left: Representation,
        right: Representation,
        degree: usize,
        dim: usize,
    },
    /// `0 -> A --f--> B --g--> C -> 0`, claimed exact.
    ShortExact {
        label: String,
        f: Morphism,
        g: Morphism,
    },
    Resolution {
        label: String,
        resolution: ResolutionWitness,
    },
    /// A class approximation that is not surjective (or not injective).
    ApproximationFails {
        label: String,
        approximation: Morphism,
        surjective_needed: bool,
    },
    /// `dim Hom(a, b) != dim Hom(c, d)`.
    HomDimMismatch {
        label: String,
        lhs: (Representation, Representation),
        rhs: (Representation, Representation),
        lhs_dim: usize,
        rhs_dim: usize,
    },
    /// `Ext^degree(a, b) != Ext^degree(c, d)`.
    ExtDimMismatch {
        label: String,
        lhs: (Representation, Representation),
        rhs: (Representation, Representation),
        degree: usize,
        lhs_dim: usize,
        rhs_dim: usize,
    },
    NotIsomorphic {
        label: String,
        left: Representation,
        right: Representation,
    },
    IsomorphicButExpectedDistinct {
        label: String,
        left: Representation,
        right: Representation,
    },
    /// Set comparison of iso-classes.
    ClassMismatch {
        label: String,
        missing: Vec<Representation>,
        unexpected: Vec<Representation>,
    },
    /// `F` applied to an exact sequence `0 -> A -> B -> C -> 0`.
    Inexact {
        functor: String,
        f: Morphism,
        g: Morphism,
        image_f: Morphism,
        image_g: Morphism,
        failure: String,
    },
    /// A module that should lie in a class but does not (or vice versa).
    Membership {
        label: String,
        module: Representation,
        expected: bool,
    },
}

/// Exactness of `0 -> A --f--> B --g--> C -> 0` by rank arithmetic; returns
/// the first failing spot.
pub fn short_exact_failure(f: &Morphism, g: &Morphism) -> Option<String> {
    if f.intertwining_failure().is_some() || g.intertwining_failure().is_some() {
        return Some("not a morphism".into());
    }
    if f.target().dims() != g.source().dims() {
        return Some("maps are not composable".into());
    }
    if !f.is_injective() {
        return Some("left map not injective".into());
    }
    if !g.is_surjective() {
        return Some("right map not surjective".into());
    }
    if !f.then(g).is_zero() {
        return Some("composite is nonzero".into());
    }
    for v in 0..f.blocks().len() {
        if f.block(v).rank() + g.block(v).rank() != f.target().dim(v) {
            return Some(format!("not exact in the middle at vertex {v}"));
        }
    }
    None
}

impl Witness {
    /// Recomputes the witnessed fact from scratch. `true` means the witness
    /// still shows what it claims.
    pub fn revalidate(&self, limits: &Limits) -> Result<bool> {
        Ok(match self {
            Witness::RelationViolation { module, .. } => module.relation_violation().is_some(),
            Witness::ExtNonvanishing {
                left,
                right,
                degree,
                dim,
            } => *dim > 0 && ext_dim(left, right, *degree)? == *dim,
            Witness::ShortExact { f, g, .. } => short_exact_failure(f, g).is_none(),
            Witness::Resolution { resolution, .. } => resolution.validate().is_ok(),
            Witness::ApproximationFails {
                approximation,
                surjective_needed,
                ..
            } => {
                if *surjective_needed {
                    !approximation.is_surjective()
                } else {
                    !approximation.is_injective()
                }
            }
            Witness::HomDimMismatch {
                lhs,
                rhs,
                lhs_dim,
                rhs_dim,
                ..
            } => {
                let l = hom_dim(&lhs.0, &lhs.1)?;
                let r = hom_dim(&rhs.0, &rhs.1)?;
                l == *lhs_dim && r == *rhs_dim && l != r
            }
            Witness::ExtDimMismatch {
                lhs,
                rhs,
                degree,
                lhs_dim,
                rhs_dim,
                ..
            } => {
                let l = ext_dim(&lhs.0, &lhs.1, *degree)?;
                let r = ext_dim(&rhs.0, &rhs.1, *degree)?;
                l == *lhs_dim && r == *rhs_dim && l != r
            }
            Witness::NotIsomorphic { left, right, .. } => !isomorphic(left, right, limits)?,
            Witness::IsomorphicButExpectedDistinct { left, right, .. } => isomorphic(left, right, limits)?,
            Witness::ClassMismatch { missing, unexpected, .. } => !(missing.is_empty() && unexpected.is_empty()),
            Witness::Inexact {
                f,
                g,
                image_f,
                image_g,
                ..
            } => short_exact_failure(f, g).is_none() && short_exact_failure(image_f, image_g).is_some(),
            Witness::Membership { .. } => true,
        })
    }

    pub fn summary(&self) -> String {
        match self {
            Witness::RelationViolation { module, relation } => format!("{} violates {relation}", module.label()),
            Witness::ExtNonvanishing {
                left,
                right,
                degree,
                dim,
            } => format!("Ext^{degree}({}, {}) has dimension {dim}", left.label(), right.label()),
            Witness::ShortExact { label, .. } => format!("exact sequence {label}"),
            Witness::Resolution { label, resolution } => {
                format!("{label}: {} of length {}", resolution.direction.as_str(), resolution.length())
            }
            Witness::ApproximationFails { label, .. } => format!("approximation fails: {label}"),
            Witness::HomDimMismatch {
                label, lhs_dim, rhs_dim, ..
            } => format!("{label}: {lhs_dim} != {rhs_dim}"),
            Witness::ExtDimMismatch {
                label,
                degree,
                lhs_dim,
                rhs_dim,
                ..
            } => format!("{label} (degree {degree}): {lhs_dim} != {rhs_dim}"),
            Witness::NotIsomorphic { label, left, right } => {
                format!("{label}: {} is not isomorphic to {}", left.label(), right.label())
            }
            Witness::IsomorphicButExpectedDistinct { label, left, right } => {
                format!("{label}: {} is isomorphic to {}", left.label(), right.label())
            }
            Witness::ClassMismatch {
                label,
                missing,
                unexpected,
            } => {
                let names = |v: &[Representation]| v.iter().map(|m| m.label()).collect::<Vec<_>>().join(", ");
                format!("{label}: missing [{}], unexpected [{}]", names(missing), names(unexpected))
            }
            Witness::Inexact {
                functor,
                f,
                g,
                failure,
                ..
            } => format!(
                "{functor} on 0 -> {} -> {} -> {} -> 0: {failure}",
                f.source().label(),
                f.target().label(),
                g.target().label()
            ),
            Witness::Membership { label, module, expected } => {
                let verb = if *expected { "should belong to" } else { "should not belong to" };
                format!("{} {verb} {label}", module.label())
            }
        }
    }
}

/// Guards that stopped a search, recorded so an inconclusive verdict always
/// names its cause.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Resources {
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub guards_hit: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub verdict: Verdict,
    pub hypotheses: Vec<Claim>,
    pub claims: Vec<Claim>,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
    pub children: Vec<CheckReport>,
    pub resources: Resources,
    /// Computed objects (module lists, dimensions) for machine consumers.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            verdict: Verdict::Pass,
            hypotheses: Vec::new(),
            claims: Vec::new(),
            witnesses: Vec::new(),
            notes: Vec::new(),
            children: Vec::new(),
            resources: Resources::default(),
            data: None,
        }
    }

    pub fn claim(&mut self, name: impl Into<String>, verdict: Verdict, detail: impl Into<String>) {
        self.claims.push(Claim {
            name: name.into(),
            verdict,
            detail: detail.into(),
        });
    }

    /// Hypotheses are audited but never change the verdict.
    pub fn hypothesis(&mut self, name: impl Into<String>, status: Verdict, detail: impl Into<String>) {
        self.hypotheses.push(Claim {
            name: name.into(),
            verdict: status,
            detail: detail.into(),
        });
    }

    pub fn witness(&mut self, w: Witness) {
        self.witnesses.push(w);
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn child(&mut self, r: CheckReport) {
        self.children.push(r);
    }

    pub fn guard_hit(&mut self, detail: impl Into<String>) {
        self.resources.guards_hit.push(detail.into());
    }

    /// Records an inconclusive claim caused by an exhausted guard.
    pub fn inconclusive(&mut self, name: impl Into<String>, err: &crate::error::Error) {
        let detail = err.to_string();
        self.guard_hit(detail.clone());
        self.claim(name, Verdict::Inconclusive, detail);
    }

    pub fn finish(mut self) -> Self {
        self.verdict = self
            .claims
            .iter()
            .map(|c| c.verdict)
            .chain(self.children.iter().map(|c| c.verdict))
            .fold(Verdict::Pass, Verdict::and);
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn claim_verdict(&self, name: &str) -> Option<Verdict> {
        self.claims.iter().find(|c| c.name == name).map(|c| c.verdict)
    }

    pub fn hypothesis_status(&self, name: &str) -> Option<Verdict> {
        self.hypotheses.iter().find(|c| c.name == name).map(|c| c.verdict)
    }

    /// Depth-first search for a child report by check name.
    pub fn find(&self, check: &str) -> Option<&CheckReport> {
        if self.check == check {
            return Some(self);
        }
        self.children.iter().find_map(|c| c.find(check))
    }

    /// Every witness in this report and its children.
    pub fn all_witnesses(&self) -> Vec<&Witness> {
        let mut out: Vec<&Witness> = self.witnesses.iter().collect();
        for c in &self.children {
            out.extend(c.all_witnesses());
        }
        out
    }

    /// CLI exit code: 0 pass, 1 fail, 3 inconclusive (a guard was hit).
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 3,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Indented plain-text rendering.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, depth: usize) {
        let pad = "  ".repeat(depth);
        out.push_str(&format!("{pad}[{}] {}\n", self.verdict.as_str(), self.check));
        for h in &self.hypotheses {
            out.push_str(&format!("{pad}  hypothesis {}: {}", h.name, h.verdict.as_str()));
            if !h.detail.is_empty() {
                out.push_str(&format!(" ({})", h.detail));
            }
            out.push('\n');
        }
        for c in &self.claims {
            out.push_str(&format!("{pad}  {}: {}", c.name, c.verdict.as_str()));
            if !c.detail.is_empty() {
                out.push_str(&format!(" ({})", c.detail));
            }
            out.push('\n');
        }
        for w in &self.witnesses {
            out.push_str(&format!("{pad}  witness: {}\n", w.summary()));
        }
        for n in &self.notes {
            out.push_str(&format!("{pad}  note: {n}\n"));
        }
        for g in &self.resources.guards_hit {
            out.push_str(&format!("{pad}  guard: {g}\n"));
        }
        for c in &self.children {
            c.render_into(out, depth + 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts_combine() {
        use Verdict::*;
        assert_eq!(Pass.and(Pass), Pass);
        assert_eq!(Pass.and(Inconclusive), Inconclusive);
        assert_eq!(Inconclusive.and(Fail), Fail);
        let mut r = CheckReport::new("x");
        r.hypothesis("h", Fail, "");
        r.claim("a", Pass, "");
        let r = r.finish();
        assert_eq!(r.verdict, Pass, "hypotheses never decide the verdict");
        let mut outer = CheckReport::new("outer");
        let mut inner = CheckReport::new("inner");
        inner.claim("b", Fail, "boom");
        outer.child(inner.finish());
        let outer = outer.finish();
        assert_eq!(outer.verdict, Fail);
        assert!(outer.find("inner").is_some());
        assert!(outer.render().contains("[fail] inner"));
    }
}
