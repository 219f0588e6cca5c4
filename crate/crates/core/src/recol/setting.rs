use std::sync::{Arc, OnceLock};

use crate::cotor::ModuleClass;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::modrep::enumerate_indecomposables;
use crate::quivalg::Algebra;

use super::audit::{exactness_probe, probe_sequences, ProbeOutcome, ProbeSequence};
use super::{Functor, Instance, SixFunctors};

/// The three categories of a recollement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Category {
    Closed,
    Total,
    Open,
}

/// A recollement together with enumerated universes for its three
/// categories. Probe sequences and exactness classifications are computed
/// once and shared by every check run in the setting.
pub struct Setting<S: SixFunctors = Instance> {
    inst: S,
    universes: [ModuleClass; 3],
    limits: Limits,
    probes: [OnceLock<Vec<ProbeSequence>>; 3],
    exactness: [OnceLock<ProbeOutcome>; 6],
}

impl<S: SixFunctors> Setting<S> {
    /// Enumerates all three universes up to `limits.dim_bound`.
    pub fn new(inst: S, limits: &Limits) -> Result<Self> {
        let closed = enumerate_indecomposables(inst.closed(), limits.dim_bound, limits)?;
        let closed = ModuleClass::universe(inst.closed(), &closed);
        let total = enumerate_indecomposables(inst.total(), limits.dim_bound, limits)?;
        let total = ModuleClass::universe(inst.total(), &total);
        let open = if inst.open().same_as(inst.closed()) {
            closed.clone()
        } else {
            let e = enumerate_indecomposables(inst.open(), limits.dim_bound, limits)?;
            ModuleClass::universe(inst.open(), &e)
        };
        Self::with_universes(inst, closed, total, open, limits)
    }

    pub fn with_universes(
        inst: S,
        closed: ModuleClass,
        total: ModuleClass,
        open: ModuleClass,
        limits: &Limits,
    ) -> Result<Self> {
        for (u, alg) in [(&closed, inst.closed()), (&total, inst.total()), (&open, inst.open())] {
            if !u.algebra().same_as(alg) {
                return Err(Error::input(format!("universe `{}` does not live over `{}`", u.name(), alg.name())));
            }
        }
        Ok(Setting {
            inst,
            universes: [closed, total, open],
            limits: limits.clone(),
            probes: Default::default(),
            exactness: Default::default(),
        })
    }

    pub fn instance(&self) -> &S {
        &self.inst
    }
    pub fn limits(&self) -> &Limits {
        &self.limits
    }
    pub fn universe(&self, c: Category) -> &ModuleClass {
        &self.universes[c as usize]
    }
    pub fn closed_universe(&self) -> &ModuleClass {
        self.universe(Category::Closed)
    }
    pub fn total_universe(&self) -> &ModuleClass {
        self.universe(Category::Total)
    }
    pub fn open_universe(&self) -> &ModuleClass {
        self.universe(Category::Open)
    }

    pub fn domain_category(f: Functor) -> Category {
        if f.from_total() {
            Category::Total
        } else if f.closed_side() {
            Category::Closed
        } else {
            Category::Open
        }
    }

    /// Short exact sequences used to classify functors in category `c`.
    pub fn probes(&self, c: Category) -> Result<&[ProbeSequence]> {
        let slot = &self.probes[c as usize];
        if slot.get().is_none() {
            let p = probe_sequences(self.universe(c), &self.limits)?;
            let _ = slot.set(p);
        }
        Ok(slot.get().expect("initialised"))
    }

    pub fn exactness(&self, f: Functor) -> Result<&ProbeOutcome> {
        let i = Functor::ALL.iter().position(|g| *g == f).expect("listed");
        let slot = &self.exactness[i];
        if slot.get().is_none() {
            let probes = self.probes(Self::domain_category(f))?;
            let o = exactness_probe(&self.inst, f, probes)?;
            let _ = slot.set(o);
        }
        Ok(slot.get().expect("initialised"))
    }

    pub fn algebra(&self, c: Category) -> &Arc<Algebra> {
        match c {
            Category::Closed => self.inst.closed(),
            Category::Total => self.inst.total(),
            Category::Open => self.inst.open(),
        }
    }
}
