//! Recollements of module categories over triangular matrix algebras.
//!
//! For a base algebra `R` the total algebra `Λ` has two copies of the quiver
//! of `R` (vertices `X*` and `Y*`). In regular mode a connecting arrow
//! `c_v : Xv -> Yv` is added for every vertex together with the commutativity
//! relations `c_w X_a = Y_a c_u`; a `Λ`-module is then a triple `(X, Y, f)`
//! with `f : X -> Y` a morphism of `R`-modules. In zero mode there are no
//! connecting arrows and `Λ = R x R`.

mod audit;
mod glue;
mod setting;

pub use audit::{
    audit_axioms, exactness_probe, exactness_report, ext_adjunction_check, probe_sequences, Corrupted, Exactness, ProbeOutcome,
    ProbeSequence,
};
pub use glue::{
    glue_classes, glue_members, restrict_classes, restrict_mn_classes, Glued, RestrictMode, Restricted, GLUE_CLAIM_HEREDITARY, GLUE_CLAIM_IMAGES,
    GLUE_CLAIM_PAIR, GLUE_CLAIM_RESOLUTIONS, RESTRICT_CLAIM_CLOSED, RESTRICT_CLAIM_HEREDITARY, RESTRICT_CLAIM_OPEN,
    RESTRICT_CLAIM_ROUND_TRIP,
};
pub use setting::{Category, Setting};

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffld::Mat;
use crate::limits::Limits;
use crate::modrep::{induced_on_cokernels, kernel_cokernel, standard_name, Morphism, Representation};
use crate::quivalg::{Algebra, Quiver, Relation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Regular,
    Zero,
}

impl Mode {
    pub fn parse(s: &str) -> Result<Mode> {
        match s {
            "regular" => Ok(Mode::Regular),
            "zero" => Ok(Mode::Zero),
            other => Err(Error::input(format!("unknown instance mode `{other}` (regular|zero)"))),
        }
    }
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Regular => "regular",
            Mode::Zero => "zero",
        }
    }
}

/// The doubled presentation of `base`.
pub fn total_algebra(base: &Arc<Algebra>, mode: Mode, limits: &Limits) -> Result<Arc<Algebra>> {
    let bq = base.quiver();
    let n = bq.vertex_count();
    let m = bq.arrow_count();
    let mut vertices: Vec<String> = bq.vertices().iter().map(|v| format!("X{v}")).collect();
    vertices.extend(bq.vertices().iter().map(|v| format!("Y{v}")));
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    for (side, off) in [("X", 0), ("Y", n)] {
        for a in bq.arrows() {
            arrows.push((
                format!("{side}{}", a.name),
                vertices[a.source + off].clone(),
                vertices[a.target + off].clone(),
            ));
        }
    }
    if mode == Mode::Regular {
        for (v, label) in bq.vertices().iter().enumerate() {
            arrows.push((format!("c{label}"), vertices[v].clone(), vertices[v + n].clone()));
        }
    }
    let q = Quiver::new(&vertices, &arrows)?;
    let k = base.field();
    let mut rels = Vec::new();
    for shift in [0, m] {
        for r in base.relations() {
            let terms: Vec<(i64, Vec<usize>)> = r
                .terms()
                .iter()
                .map(|(c, p)| (*c as i64, p.arrows.iter().map(|a| a + shift).collect()))
                .collect();
            rels.push(Relation::new(&q, k, &terms)?);
        }
    }
    if mode == Mode::Regular {
        for (ai, a) in bq.arrows().iter().enumerate() {
            let (u, w) = (a.source, a.target);
            rels.push(Relation::new(&q, k, &[(1, vec![ai, 2 * m + w]), (-1, vec![2 * m + u, m + ai])])?);
        }
    }
    let name = format!("{}-{}", base.name(), mode.as_str());
    Algebra::new(name, k, q, rels, None, limits)
}

/// A module over the total algebra in the form `(X, Y, f)`.
#[derive(Clone, Debug)]
pub struct TripleRep {
    pub x: Representation,
    pub y: Representation,
    /// Present exactly in regular mode.
    pub f: Option<Morphism>,
}

impl TripleRep {
    pub fn new(x: Representation, y: Representation, f: Option<Morphism>) -> Result<Self> {
        x.check_same_algebra(&y)?;
        if let Some(f) = &f {
            if f.source().dims() != x.dims() || f.target().dims() != y.dims() {
                return Err(Error::input("connecting map has the wrong endpoints"));
            }
            if let Some(a) = f.intertwining_failure() {
                return Err(Error::input(format!("connecting map does not commute with `{a}`")));
            }
        }
        Ok(TripleRep { x, y, f })
    }
}

/// One of the six functors of a recollement
/// `D' --i_*--> D --j^*--> D''`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Functor {
    #[serde(rename = "i^*")]
    IStar,
    #[serde(rename = "i_*")]
    ILowerStar,
    #[serde(rename = "i^!")]
    IShriek,
    #[serde(rename = "j_!")]
    JLowerShriek,
    #[serde(rename = "j^*")]
    JStar,
    #[serde(rename = "j_*")]
    JLowerStar,
}

impl Functor {
    pub const ALL: [Functor; 6] = [
        Functor::IStar,
        Functor::ILowerStar,
        Functor::IShriek,
        Functor::JLowerShriek,
        Functor::JStar,
        Functor::JLowerStar,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Functor::IStar => "i^*",
            Functor::ILowerStar => "i_*",
            Functor::IShriek => "i^!",
            Functor::JLowerShriek => "j_!",
            Functor::JStar => "j^*",
            Functor::JLowerStar => "j_*",
        }
    }

    pub fn parse(s: &str) -> Result<Functor> {
        Functor::ALL
            .into_iter()
            .find(|f| f.symbol() == s)
            .ok_or_else(|| Error::input(format!("unknown functor `{s}`")))
    }

    /// Whether the functor starts in the middle category.
    pub fn from_total(self) -> bool {
        matches!(self, Functor::IStar | Functor::IShriek | Functor::JStar)
    }

    /// Whether the functor's other end is the closed side `D'`.
    pub fn closed_side(self) -> bool {
        matches!(self, Functor::IStar | Functor::ILowerStar | Functor::IShriek)
    }
}

impl fmt::Display for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// The functor surface of a recollement; audits and gluing only use this.
pub trait SixFunctors: Sync {
    /// `D'`, reached by `i^*` and `i^!`.
    fn closed(&self) -> &Arc<Algebra>;
    /// `D`.
    fn total(&self) -> &Arc<Algebra>;
    /// `D''`, reached by `j^*`.
    fn open(&self) -> &Arc<Algebra>;
    fn apply(&self, f: Functor, m: &Representation) -> Result<Representation>;
    fn apply_morphism(&self, f: Functor, g: &Morphism) -> Result<Morphism>;
    fn name(&self) -> String;

    /// The algebra the functor's argument lives over.
    fn domain(&self, f: Functor) -> &Arc<Algebra> {
        if f.from_total() {
            self.total()
        } else if f.closed_side() {
            self.closed()
        } else {
            self.open()
        }
    }

    fn codomain(&self, f: Functor) -> &Arc<Algebra> {
        if !f.from_total() {
            self.total()
        } else if f.closed_side() {
            self.closed()
        } else {
            self.open()
        }
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    base: Arc<Algebra>,
    total: Arc<Algebra>,
    mode: Mode,
}

impl Instance {
    pub fn build(base: &Arc<Algebra>, mode: Mode, limits: &Limits) -> Result<Self> {
        let total = total_algebra(base, mode, limits)?;
        Ok(Instance {
            base: base.clone(),
            total,
            mode,
        })
    }

    pub fn base(&self) -> &Arc<Algebra> {
        &self.base
    }
    pub fn mode(&self) -> Mode {
        self.mode
    }

    fn n(&self) -> usize {
        self.base.vertex_count()
    }
    fn m(&self) -> usize {
        self.base.arrow_count()
    }

    pub fn to_total(&self, t: &TripleRep) -> Result<Representation> {
        if !t.x.algebra().same_as(&self.base) {
            return Err(Error::input("triple components must be modules over the base algebra"));
        }
        if t.f.is_some() != (self.mode == Mode::Regular) {
            return Err(Error::input(format!(
                "a connecting map is required exactly in regular mode (mode is {})",
                self.mode.as_str()
            )));
        }
        let mut dims = t.x.dims().to_vec();
        dims.extend_from_slice(t.y.dims());
        let mut maps: Vec<Mat> = t.x.maps().to_vec();
        maps.extend_from_slice(t.y.maps());
        if let Some(f) = &t.f {
            maps.extend_from_slice(f.blocks());
        }
        Representation::new(self.total.clone(), dims, maps)
    }

    pub fn from_total(&self, m: &Representation) -> Result<TripleRep> {
        if !m.algebra().same_as(&self.total) {
            return Err(Error::input(format!(
                "expected a module over `{}`, got one over `{}`",
                self.total.name(),
                m.algebra().name()
            )));
        }
        let (n, a) = (self.n(), self.m());
        let x = Representation::new(self.base.clone(), m.dims()[..n].to_vec(), m.maps()[..a].to_vec())?;
        let y = Representation::new(self.base.clone(), m.dims()[n..].to_vec(), m.maps()[a..2 * a].to_vec())?;
        let f = match self.mode {
            Mode::Regular => Some(Morphism::new_unchecked(x.clone(), y.clone(), m.maps()[2 * a..].to_vec())),
            Mode::Zero => None,
        };
        Ok(TripleRep { x, y, f })
    }

    /// Total morphism with components `alpha` on `X` and `beta` on `Y`.
    fn total_morphism(&self, s: &Representation, t: &Representation, alpha: &[Mat], beta: &[Mat]) -> Morphism {
        let blocks = alpha.iter().chain(beta).cloned().collect();
        Morphism::new_unchecked(s.clone(), t.clone(), blocks)
    }

    fn split(&self, g: &Morphism) -> Result<(TripleRep, TripleRep, Morphism, Morphism)> {
        let s = self.from_total(g.source())?;
        let t = self.from_total(g.target())?;
        let n = self.n();
        let alpha = Morphism::new_unchecked(s.x.clone(), t.x.clone(), g.blocks()[..n].to_vec());
        let beta = Morphism::new_unchecked(s.y.clone(), t.y.clone(), g.blocks()[n..].to_vec());
        Ok((s, t, alpha, beta))
    }

    fn check_domain(&self, f: Functor, m: &Representation) -> Result<()> {
        let want = self.domain(f);
        if m.algebra().same_as(want) {
            Ok(())
        } else {
            Err(Error::input(format!(
                "{f} expects a module over `{}`, got one over `{}`",
                want.name(),
                m.algebra().name()
            )))
        }
    }

    fn zero_base(&self) -> Representation {
        Representation::zero(&self.base)
    }

    fn triple(&self, x: Representation, y: Representation, f: impl FnOnce(&Representation, &Representation) -> Morphism) -> Representation {
        let f = match self.mode {
            Mode::Regular => Some(f(&x, &y)),
            Mode::Zero => None,
        };
        self.to_total(&TripleRep { x, y, f }).expect("components over the base")
    }

    /// Label `(A,B)` naming each component by a standard module when possible.
    pub fn triple_label(&self, m: &Representation, limits: &Limits) -> Result<String> {
        let t = self.from_total(m)?;
        let short = |r: &Representation| -> Result<String> {
            if r.is_zero() {
                return Ok("0".into());
            }
            Ok(match standard_name(r, limits)? {
                Some(s) => s.replace(['(', ')'], ""),
                None => format!("M{:?}", r.dims()),
            })
        };
        Ok(format!("({},{})", short(&t.x)?, short(&t.y)?))
    }
}

impl SixFunctors for Instance {
    fn closed(&self) -> &Arc<Algebra> {
        &self.base
    }
    fn total(&self) -> &Arc<Algebra> {
        &self.total
    }
    fn open(&self) -> &Arc<Algebra> {
        &self.base
    }

    fn name(&self) -> String {
        self.total.name().to_string()
    }

    fn apply(&self, f: Functor, m: &Representation) -> Result<Representation> {
        self.check_domain(f, m)?;
        let zero_mode = self.mode == Mode::Zero;
        Ok(match f {
            Functor::IStar if !zero_mode => {
                let t = self.from_total(m)?;
                kernel_cokernel(t.f.as_ref().expect("regular mode")).cokernel
            }
            Functor::IStar | Functor::IShriek => self.from_total(m)?.y,
            Functor::JStar => self.from_total(m)?.x,
            Functor::ILowerStar => self.triple(self.zero_base(), m.clone(), Morphism::zero),
            Functor::JLowerShriek if !zero_mode => {
                self.triple(m.clone(), m.clone(), |x, y| Morphism::identity(x).with_endpoints(x.clone(), y.clone()))
            }
            Functor::JLowerShriek | Functor::JLowerStar => {
                self.triple(m.clone(), self.zero_base(), Morphism::zero)
            }
        })
    }

    fn apply_morphism(&self, f: Functor, g: &Morphism) -> Result<Morphism> {
        self.check_domain(f, g.source())?;
        let zero_mode = self.mode == Mode::Zero;
        let n = self.n();
        let k = self.base.field();
        Ok(match f {
            Functor::IStar if !zero_mode => {
                let (s, t, _, beta) = self.split(g)?;
                let qs = kernel_cokernel(s.f.as_ref().expect("regular")).projection;
                let qt = kernel_cokernel(t.f.as_ref().expect("regular")).projection;
                induced_on_cokernels(&qs, &qt, &beta)
            }
            Functor::IStar | Functor::IShriek => self.split(g)?.3,
            Functor::JStar => self.split(g)?.2,
            Functor::ILowerStar => {
                let (s, t) = (self.apply(f, g.source())?, self.apply(f, g.target())?);
                let zero: Vec<Mat> = (0..n).map(|_| Mat::zeros(k, 0, 0)).collect();
                self.total_morphism(&s, &t, &zero, g.blocks())
            }
            Functor::JLowerShriek if !zero_mode => {
                let (s, t) = (self.apply(f, g.source())?, self.apply(f, g.target())?);
                self.total_morphism(&s, &t, g.blocks(), g.blocks())
            }
            Functor::JLowerShriek | Functor::JLowerStar => {
                let (s, t) = (self.apply(f, g.source())?, self.apply(f, g.target())?);
                let zero: Vec<Mat> = (0..n).map(|_| Mat::zeros(k, 0, 0)).collect();
                self.total_morphism(&s, &t, g.blocks(), &zero)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::ffld::Field;
    use crate::modrep::{decompose, isomorphic};
    use crate::quivalg::{projective, regular_module, simple};

    fn setup(mode: Mode) -> (Instance, Limits) {
        let lim = Limits::default();
        let a2 = builtin::a2(Field::default(), &lim).unwrap();
        (Instance::build(&a2, mode, &lim).unwrap(), lim)
    }

    #[test]
    fn build_dimensions() {
        let (reg, _) = setup(Mode::Regular);
        assert_eq!(reg.total().dimension(), 9);
        assert_eq!(reg.total().vertex_count(), 4);
        assert_eq!(reg.total().relations().len(), 1);
        let (zero, _) = setup(Mode::Zero);
        assert_eq!(zero.total().dimension(), 6);
        assert_eq!(zero.total().arrow_count(), 2);
        let lim = Limits::default();
        let k = builtin::point(Field::default(), &lim).unwrap();
        assert_eq!(Instance::build(&k, Mode::Regular, &lim).unwrap().total().dimension(), 3);
    }

    #[test]
    fn triple_roundtrip() {
        let (inst, lim) = setup(Mode::Regular);
        let r = regular_module(inst.total());
        let t = inst.from_total(&r).unwrap();
        let back = inst.to_total(&t).unwrap();
        assert!(isomorphic(&r, &back, &lim).unwrap());
        assert_eq!(back.maps(), r.maps());
    }

    #[test]
    fn functor_formulas() {
        let (inst, lim) = setup(Mode::Regular);
        let a2 = inst.base().clone();
        let p1 = projective(&a2, 0);
        let idt = inst.apply(Functor::JLowerShriek, &p1).unwrap();
        assert!(inst.apply(Functor::IStar, &idt).unwrap().is_zero());
        let r = regular_module(&a2);
        let sum = Representation::direct_sum(
            inst.total(),
            &[inst.apply(Functor::JLowerShriek, &r).unwrap(), inst.apply(Functor::ILowerStar, &r).unwrap()],
        );
        assert!(isomorphic(&sum, &regular_module(inst.total()), &lim).unwrap());
        assert_eq!(decompose(&sum, &lim).unwrap().len(), 4);
        // Functors must reject modules from the wrong category.
        assert!(inst.apply(Functor::JStar, &p1).is_err());
        assert!(inst.apply(Functor::ILowerStar, &idt).is_err());
    }

    #[test]
    fn i_star_on_morphisms() {
        let (inst, _) = setup(Mode::Regular);
        let a2 = inst.base().clone();
        let (p1, s1) = (projective(&a2, 0), simple(&a2, 0));
        let f = crate::modrep::hom_basis(&p1, &s1).unwrap().remove(0);
        let m = inst
            .to_total(&TripleRep::new(p1.clone(), s1.clone(), Some(f)).unwrap())
            .unwrap();
        let id = Morphism::identity(&m);
        let g = inst.apply_morphism(Functor::IStar, &id).unwrap();
        assert!(g.is_iso());
        assert_eq!(g.source().dims(), inst.apply(Functor::IStar, &m).unwrap().dims());
        assert_eq!(inst.triple_label(&m, &Limits::default()).unwrap(), "(P1,S1)");
    }
}
