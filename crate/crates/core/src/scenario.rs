//! Scenario files and the operations shared with the command line.
//!
//! ```json
//! {
//!   "algebras": {"R": "A2"},
//!   "instances": {"L": {"base": "R", "mode": "regular"}},
//!   "tasks": [
//!     {"id": "axioms", "op": "audit", "instance": "L"},
//!     {"id": "pair", "op": "cotorsion", "after": ["axioms"], "n": 1, "hereditary": true,
//!      "a": {"algebra": "L.total", "members": ["R"]}, "b": "all"}
//!   ]
//! }
//! ```
//!
//! Algebra references are aliases from `algebras`, built-in names, files, or
//! `INSTANCE.closed|total|open`. A task may list earlier tasks in `after`; it
//! is skipped when one of them missed its expected verdict. Tasks without
//! pending prerequisites run in parallel and are reported in file order.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::cotor::{check_left_n_cotorsion, check_mn_cotorsion, check_n_cotorsion, check_right_n_cotorsion, ModuleClass};
use crate::error::{Error, Result};
use crate::example::paper_example;
use crate::homap::min_proj_resolution;
use crate::io::{module_to_file, AlgebraFile, Context, InstanceFile};
use crate::limits::Limits;
use crate::modrep::{decompose, enumerate_indecomposables, standard_name, Representation};
use crate::quivalg::Algebra;
use crate::recol::{
    audit_axioms, exactness_report, ext_adjunction_check, glue_classes, restrict_classes, restrict_mn_classes, Category,
    Instance, RestrictMode, Setting, SixFunctors,
};
use crate::report::{CheckReport, Verdict, Witness};
use crate::tilt::{check_n_cotilting, check_n_tilting, glue_cotilting, glue_tilting};

/// A module: a standard name (`P(1)`, `R`, ...) over a named algebra, or a
/// bare string that is a module file or a standard name over the algebra the
/// operation expects.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum ModuleRef {
    Named { algebra: String, name: String },
    Plain(String),
}

/// `"all"` for the enumerated universe, a class file, or inline members.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum ClassRef {
    Inline {
        algebra: String,
        members: Vec<String>,
        #[serde(default)]
        name: Option<String>,
    },
    Tag(String),
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum InstanceRef {
    Inline(InstanceFile),
    Name(String),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairSide {
    Left,
    Right,
    #[default]
    Both,
}

fn three() -> usize {
    3
}
fn one() -> usize {
    1
}
fn full() -> String {
    "full".into()
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum Op {
    ValidateAlgebra {
        algebra: String,
    },
    Enumerate {
        algebra: String,
        #[serde(default)]
        dim_bound: Option<usize>,
    },
    Decompose {
        module: ModuleRef,
    },
    Ext {
        left: ModuleRef,
        right: ModuleRef,
        #[serde(default)]
        algebra: Option<String>,
        #[serde(default = "three")]
        max_degree: usize,
        /// Turn the listing into a vanishing check.
        #[serde(default)]
        vanish: bool,
    },
    Cotorsion {
        a: ClassRef,
        b: ClassRef,
        n: usize,
        #[serde(default)]
        side: PairSide,
        #[serde(default)]
        hereditary: bool,
        #[serde(default)]
        universe: Option<ClassRef>,
    },
    MnCotorsion {
        a: ClassRef,
        b: ClassRef,
        m: usize,
        n: usize,
        #[serde(default)]
        universe: Option<ClassRef>,
    },
    Recollement {
        instance: InstanceRef,
    },
    Audit {
        instance: InstanceRef,
        /// Also check the Ext adjunction families up to this degree.
        #[serde(default)]
        families: Option<usize>,
    },
    Exactness {
        instance: InstanceRef,
    },
    ExtFamilies {
        instance: InstanceRef,
        #[serde(default = "three")]
        k_max: usize,
    },
    Glue {
        instance: InstanceRef,
        closed_a: ClassRef,
        closed_b: ClassRef,
        open_a: ClassRef,
        open_b: ClassRef,
        #[serde(default = "one")]
        n: usize,
    },
    Restrict {
        instance: InstanceRef,
        a: ClassRef,
        b: ClassRef,
        #[serde(default = "one")]
        n: usize,
        #[serde(default = "full")]
        mode: String,
    },
    RestrictMn {
        instance: InstanceRef,
        a: ClassRef,
        b: ClassRef,
        m: usize,
        n: usize,
    },
    Tilting {
        module: ModuleRef,
        #[serde(default)]
        algebra: Option<String>,
        n: usize,
        #[serde(default)]
        cotilting: bool,
    },
    GlueTilting {
        instance: InstanceRef,
        closed: ModuleRef,
        open: ModuleRef,
        n: usize,
        #[serde(default)]
        cotilting: bool,
    },
    PaperExample {
        #[serde(default)]
        prime: Option<u64>,
    },
}

impl Op {
    pub fn name(&self) -> &'static str {
        match self {
            Op::ValidateAlgebra { .. } => "validate-algebra",
            Op::Enumerate { .. } => "enumerate",
            Op::Decompose { .. } => "decompose",
            Op::Ext { .. } => "ext",
            Op::Cotorsion { .. } => "cotorsion",
            Op::MnCotorsion { .. } => "mn-cotorsion",
            Op::Recollement { .. } => "recollement",
            Op::Audit { .. } => "audit",
            Op::Exactness { .. } => "exactness",
            Op::ExtFamilies { .. } => "ext-families",
            Op::Glue { .. } => "glue",
            Op::Restrict { .. } => "restrict",
            Op::RestrictMn { .. } => "restrict-mn",
            Op::Tilting { .. } => "tilting",
            Op::GlueTilting { .. } => "glue-tilting",
            Op::PaperExample { .. } => "paper-example",
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct TaskSpec {
    #[serde(default)]
    pub id: Option<String>,
    #[serde(default)]
    pub after: Vec<String>,
    #[serde(default)]
    pub expect: Option<Verdict>,
    #[serde(flatten)]
    pub op: Op,
}

#[derive(Clone, Debug, Deserialize)]
pub struct ScenarioFile {
    #[serde(default)]
    pub algebras: BTreeMap<String, String>,
    #[serde(default)]
    pub instances: BTreeMap<String, InstanceFile>,
    pub tasks: Vec<TaskSpec>,
}

type SharedSetting = Arc<Setting<Instance>>;

/// An operation with every reference resolved.
pub enum Job {
    ValidateAlgebra(Arc<Algebra>),
    Enumerate(Arc<Algebra>, usize),
    Decompose(Representation),
    Ext {
        left: Representation,
        right: Representation,
        max_degree: usize,
        vanish: bool,
    },
    Cotorsion {
        a: ModuleClass,
        b: ModuleClass,
        n: usize,
        side: PairSide,
        hereditary: bool,
        universe: ModuleClass,
    },
    MnCotorsion {
        a: ModuleClass,
        b: ModuleClass,
        m: usize,
        n: usize,
        universe: ModuleClass,
    },
    Recollement(SharedSetting),
    Audit(SharedSetting, Option<usize>),
    Exactness(SharedSetting),
    ExtFamilies(SharedSetting, usize),
    Glue {
        setting: SharedSetting,
        classes: [ModuleClass; 4],
        n: usize,
    },
    Restrict {
        setting: SharedSetting,
        a: ModuleClass,
        b: ModuleClass,
        n: usize,
        mode: RestrictMode,
    },
    RestrictMn {
        setting: SharedSetting,
        a: ModuleClass,
        b: ModuleClass,
        m: usize,
        n: usize,
    },
    Tilting {
        module: Representation,
        n: usize,
        cotilting: bool,
    },
    GlueTilting {
        setting: SharedSetting,
        closed: Representation,
        open: Representation,
        n: usize,
        cotilting: bool,
    },
    PaperExample(u64),
}

/// Turns references into algebras, modules, classes and settings. Settings
/// and universes are built once and shared.
pub struct Resolver {
    ctx: Context,
    dir: PathBuf,
    aliases: BTreeMap<String, String>,
    instances: BTreeMap<String, InstanceFile>,
    settings: BTreeMap<String, SharedSetting>,
    universes: Vec<ModuleClass>,
}

impl Resolver {
    pub fn new(ctx: Context, dir: impl Into<PathBuf>) -> Self {
        Resolver {
            ctx,
            dir: dir.into(),
            aliases: BTreeMap::new(),
            instances: BTreeMap::new(),
            settings: BTreeMap::new(),
            universes: Vec::new(),
        }
    }

    pub fn limits(&self) -> &Limits {
        &self.ctx.limits
    }

    fn for_scenario(ctx: Context, dir: PathBuf, file: &ScenarioFile) -> Self {
        let mut r = Resolver::new(ctx, dir);
        r.aliases = file.algebras.clone();
        r.instances = file.instances.clone();
        r
    }

    pub fn algebra(&mut self, name: &str) -> Result<Arc<Algebra>> {
        if let Some((inst, cat)) = name.rsplit_once('.') {
            let cat = match cat {
                "closed" => Some(Category::Closed),
                "total" => Some(Category::Total),
                "open" => Some(Category::Open),
                _ => None,
            };
            if let Some(cat) = cat {
                if self.instances.contains_key(inst) {
                    let s = self.setting(&InstanceRef::Name(inst.to_string()))?;
                    return Ok(s.algebra(cat).clone());
                }
            }
        }
        let target = self.aliases.get(name).cloned().unwrap_or_else(|| name.to_string());
        let dir = self.dir.clone();
        let alg = self.ctx.algebra(&target, &dir)?;
        if target != name {
            self.ctx.register(alg.clone());
        }
        Ok(alg)
    }

    pub fn module(&mut self, m: &ModuleRef, over: Option<&Arc<Algebra>>) -> Result<Representation> {
        let dir = self.dir.clone();
        match m {
            ModuleRef::Named { algebra, name } => {
                let alg = self.algebra(algebra)?;
                if let Some(want) = over {
                    if !alg.same_as(want) {
                        return Err(Error::input(format!("`{name}` lives over `{}`, expected `{}`", alg.name(), want.name())));
                    }
                }
                self.ctx.module(&alg, name, &dir)
            }
            ModuleRef::Plain(s) => match over {
                Some(alg) => self.ctx.module(alg, s, &dir),
                None => {
                    let path = dir.join(s);
                    let path = if path.is_file() { path } else { PathBuf::from(s) };
                    self.ctx.load_module_file(&path)
                }
            },
        }
    }

    /// Enumerated universe over `alg`, cached.
    pub fn universe(&mut self, alg: &Arc<Algebra>) -> Result<ModuleClass> {
        if let Some(u) = self.universes.iter().find(|u| u.algebra().same_as(alg)) {
            return Ok(u.clone());
        }
        let limits = self.ctx.limits.clone();
        let e = enumerate_indecomposables(alg, limits.dim_bound, &limits)?;
        let u = ModuleClass::universe(alg, &e);
        self.universes.push(u.clone());
        Ok(u)
    }

    /// A class; `over` is the algebra the operation needs (required for
    /// `"all"`).
    pub fn class(&mut self, c: &ClassRef, over: Option<&Arc<Algebra>>) -> Result<ModuleClass> {
        let limits = self.ctx.limits.clone();
        let dir = self.dir.clone();
        let class = match c {
            ClassRef::Tag(t) if t == "all" => {
                let alg = over.ok_or_else(|| Error::input("`all` needs an algebra from context"))?;
                return self.universe(alg);
            }
            ClassRef::Tag(path) => {
                let p = dir.join(path);
                let p = if p.is_file() { p } else { PathBuf::from(path) };
                match self.ctx.load_class_file(&p)? {
                    None => {
                        let alg = over.ok_or_else(|| Error::input("a universe class needs an algebra from context"))?;
                        return self.universe(alg);
                    }
                    Some((alg, ms)) => {
                        let stem = p.file_stem().and_then(|s| s.to_str()).unwrap_or("C").to_string();
                        ModuleClass::from_modules(&alg, stem, &ms, &limits)?
                    }
                }
            }
            ClassRef::Inline { algebra, members, name } => {
                let alg = self.algebra(algebra)?;
                let ms = members
                    .iter()
                    .map(|m| self.ctx.module(&alg, m, &dir))
                    .collect::<Result<Vec<_>>>()?;
                let name = name.clone().unwrap_or_else(|| format!("add {{{}}}", members.join(", ")));
                ModuleClass::from_modules(&alg, name, &ms, &limits)?
            }
        };
        if let Some(want) = over {
            if !class.algebra().same_as(want) {
                return Err(Error::input(format!(
                    "class `{}` lives over `{}`, expected `{}`",
                    class.name(),
                    class.algebra().name(),
                    want.name()
                )));
            }
        }
        Ok(class)
    }

    pub fn setting(&mut self, r: &InstanceRef) -> Result<SharedSetting> {
        let (key, file) = match r {
            InstanceRef::Inline(f) => (format!("{}:{}", f.base, f.mode), f.clone()),
            InstanceRef::Name(n) => match self.instances.get(n) {
                Some(f) => (n.clone(), f.clone()),
                None => {
                    let p = self.dir.join(n);
                    let p = if p.is_file() { p } else { PathBuf::from(n) };
                    let text = std::fs::read_to_string(&p).map_err(|source| Error::Io {
                        path: p.display().to_string(),
                        source,
                    })?;
                    let f: InstanceFile =
                        serde_json::from_str(&text).map_err(|e| Error::input(format!("{}: {e}", p.display())))?;
                    (n.clone(), f)
                }
            },
        };
        if let Some(s) = self.settings.get(&key) {
            return Ok(s.clone());
        }
        let base = self.algebra(&file.base)?;
        let limits = self.ctx.limits.clone();
        let inst = Instance::build(&base, crate::recol::Mode::parse(&file.mode)?, &limits)?;
        let closed = self.universe(inst.closed())?;
        let total = self.universe(inst.total())?;
        let open = self.universe(inst.open())?;
        let s = Arc::new(Setting::with_universes(inst, closed, total, open, &limits)?);
        self.settings.insert(key, s.clone());
        Ok(s)
    }

    pub fn resolve(&mut self, op: &Op) -> Result<Job> {
        Ok(match op {
            Op::ValidateAlgebra { algebra } => Job::ValidateAlgebra(self.algebra(algebra)?),
            Op::Enumerate { algebra, dim_bound } => {
                let alg = self.algebra(algebra)?;
                Job::Enumerate(alg, dim_bound.unwrap_or(self.ctx.limits.dim_bound))
            }
            Op::Decompose { module } => Job::Decompose(self.module(module, None)?),
            Op::Ext {
                left,
                right,
                algebra,
                max_degree,
                vanish,
            } => {
                let over = algebra.as_deref().map(|a| self.algebra(a)).transpose()?;
                let left = self.module(left, over.as_ref())?;
                let right = self.module(right, Some(over.as_ref().unwrap_or(left.algebra())))?;
                Job::Ext {
                    left,
                    right,
                    max_degree: *max_degree,
                    vanish: *vanish,
                }
            }
            Op::Cotorsion {
                a,
                b,
                n,
                side,
                hereditary,
                universe,
            } => {
                let (a, b, universe) = self.pair(a, b, universe.as_ref())?;
                Job::Cotorsion {
                    a,
                    b,
                    n: *n,
                    side: *side,
                    hereditary: *hereditary,
                    universe,
                }
            }
            Op::MnCotorsion { a, b, m, n, universe } => {
                let (a, b, universe) = self.pair(a, b, universe.as_ref())?;
                Job::MnCotorsion {
                    a,
                    b,
                    m: *m,
                    n: *n,
                    universe,
                }
            }
            Op::Recollement { instance } => Job::Recollement(self.setting(instance)?),
            Op::Audit { instance, families } => Job::Audit(self.setting(instance)?, *families),
            Op::Exactness { instance } => Job::Exactness(self.setting(instance)?),
            Op::ExtFamilies { instance, k_max } => Job::ExtFamilies(self.setting(instance)?, *k_max),
            Op::Glue {
                instance,
                closed_a,
                closed_b,
                open_a,
                open_b,
                n,
            } => {
                let s = self.setting(instance)?;
                let (c, o) = (s.algebra(Category::Closed).clone(), s.algebra(Category::Open).clone());
                let classes = [
                    self.class(closed_a, Some(&c))?,
                    self.class(closed_b, Some(&c))?,
                    self.class(open_a, Some(&o))?,
                    self.class(open_b, Some(&o))?,
                ];
                Job::Glue {
                    setting: s,
                    classes,
                    n: *n,
                }
            }
            Op::Restrict { instance, a, b, n, mode } => {
                let s = self.setting(instance)?;
                let t = s.algebra(Category::Total).clone();
                Job::Restrict {
                    a: self.class(a, Some(&t))?,
                    b: self.class(b, Some(&t))?,
                    setting: s,
                    n: *n,
                    mode: RestrictMode::parse(mode)?,
                }
            }
            Op::RestrictMn { instance, a, b, m, n } => {
                let s = self.setting(instance)?;
                let t = s.algebra(Category::Total).clone();
                Job::RestrictMn {
                    a: self.class(a, Some(&t))?,
                    b: self.class(b, Some(&t))?,
                    setting: s,
                    m: *m,
                    n: *n,
                }
            }
            Op::Tilting {
                module,
                algebra,
                n,
                cotilting,
            } => {
                let over = algebra.as_deref().map(|a| self.algebra(a)).transpose()?;
                Job::Tilting {
                    module: self.module(module, over.as_ref())?,
                    n: *n,
                    cotilting: *cotilting,
                }
            }
            Op::GlueTilting {
                instance,
                closed,
                open,
                n,
                cotilting,
            } => {
                let s = self.setting(instance)?;
                let (c, o) = (s.algebra(Category::Closed).clone(), s.algebra(Category::Open).clone());
                Job::GlueTilting {
                    closed: self.module(closed, Some(&c))?,
                    open: self.module(open, Some(&o))?,
                    setting: s,
                    n: *n,
                    cotilting: *cotilting,
                }
            }
            Op::PaperExample { prime } => Job::PaperExample(prime.unwrap_or(self.ctx.field.p() as u64)),
        })
    }

    fn pair(
        &mut self,
        a: &ClassRef,
        b: &ClassRef,
        universe: Option<&ClassRef>,
    ) -> Result<(ModuleClass, ModuleClass, ModuleClass)> {
        // The first explicit class fixes the algebra for `all`.
        let (a, b) = match (a, b) {
            (ClassRef::Tag(t), other) if t == "all" => {
                let b = self.class(other, None)?;
                let alg = b.algebra().clone();
                (self.class(a, Some(&alg))?, b)
            }
            _ => {
                let a = self.class(a, None)?;
                let alg = a.algebra().clone();
                let b = self.class(b, Some(&alg))?;
                (a, b)
            }
        };
        let alg = a.algebra().clone();
        let universe = match universe {
            Some(u) => self.class(u, Some(&alg))?,
            None => self.universe(&alg)?,
        };
        Ok((a, b, universe))
    }
}

fn module_list(ms: &[Representation], limits: &Limits) -> Result<serde_json::Value> {
    let mut out = Vec::new();
    for m in ms {
        let mut v = serde_json::to_value(module_to_file(m))?;
        v["standard_name"] = json!(standard_name(m, limits)?);
        out.push(v);
    }
    Ok(serde_json::Value::Array(out))
}

impl Job {
    pub fn run(&self, limits: &Limits) -> Result<CheckReport> {
        match self.run_inner(limits) {
            Err(e @ Error::Resource { .. }) => {
                let mut r = CheckReport::new("guard exceeded");
                r.inconclusive("computation finished", &e);
                Ok(r.finish())
            }
            other => other,
        }
    }

    fn run_inner(&self, limits: &Limits) -> Result<CheckReport> {
        Ok(match self {
            Job::ValidateAlgebra(alg) => {
                let mut r = CheckReport::new(format!("algebra {}", alg.name()));
                r.claim(
                    "admissible presentation",
                    Verdict::Pass,
                    format!(
                        "{} vertices, {} arrows, {} relations, dimension {} over F_{}",
                        alg.vertex_count(),
                        alg.arrow_count(),
                        alg.relations().len(),
                        alg.dimension(),
                        alg.field().p()
                    ),
                );
                for rel in alg.relations() {
                    r.note(format!("relation {}", rel.label(alg.quiver())));
                }
                r.data = Some(json!({
                    "dimension": alg.dimension(),
                    "presentation": AlgebraFile::from_algebra(alg),
                }));
                r.finish()
            }
            Job::Enumerate(alg, bound) => {
                let e = enumerate_indecomposables(alg, *bound, limits)?;
                let mut r = CheckReport::new(format!("indecomposable {}-modules, dimension bound {bound}", alg.name()));
                r.claim(
                    "every listed module is certified indecomposable",
                    Verdict::from_bool(e.certified),
                    format!("{} classes, {} configurations", e.modules.len(), e.configurations),
                );
                for m in &e.modules {
                    r.note(format!("{} {:?}", m.label(), m.dims()));
                }
                r.data = Some(json!({"count": e.modules.len(), "modules": module_list(&e.modules, limits)?}));
                r.finish()
            }
            Job::Decompose(m) => {
                let d = decompose(m, limits)?;
                let mut r = CheckReport::new(format!("decomposition of {}", m.label()));
                let sum: usize = d.summands.iter().map(|s| s.module.total_dim() * s.multiplicity).sum();
                r.claim(
                    "summands add up to the module",
                    Verdict::from_bool(sum == m.total_dim()),
                    format!("{} summands", d.len()),
                );
                r.claim("every summand is certified indecomposable", Verdict::from_bool(d.certified()), "");
                let mut items = Vec::new();
                for s in &d.summands {
                    let label = standard_name(&s.module, limits)?.unwrap_or_else(|| s.module.label());
                    r.note(format!("{} x {label} {:?}", s.multiplicity, s.module.dims()));
                    items.push(json!({"multiplicity": s.multiplicity}));
                }
                let mods: Vec<Representation> = d.summands.iter().map(|s| s.module.clone()).collect();
                let list = module_list(&mods, limits)?;
                for (item, m) in items.iter_mut().zip(list.as_array().expect("array")) {
                    item["module"] = m.clone();
                }
                r.data = Some(json!({"summands": items}));
                r.finish()
            }
            Job::Ext {
                left,
                right,
                max_degree,
                vanish,
            } => {
                let mut r = CheckReport::new(format!("Ext^*({}, {})", left.label(), right.label()));
                let res = min_proj_resolution(left, *max_degree + 1);
                let mut dims = Vec::new();
                for i in 0..=*max_degree {
                    let d = res.ext_dim(right, i)?;
                    dims.push(d);
                    r.note(format!("dim Ext^{i} = {d}"));
                    if *vanish && i > 0 && d > 0 {
                        r.witness(Witness::ExtNonvanishing {
                            left: left.clone(),
                            right: right.clone(),
                            degree: i,
                            dim: d,
                        });
                    }
                }
                if *vanish {
                    let ok = dims.iter().skip(1).all(|&d| d == 0);
                    r.claim(format!("Ext^i = 0 for 1 <= i <= {max_degree}"), Verdict::from_bool(ok), "");
                }
                r.data = Some(json!({"dimensions": dims, "projective_dimension": res.pd}));
                r.finish()
            }
            Job::Cotorsion {
                a,
                b,
                n,
                side,
                hereditary,
                universe,
            } => match side {
                PairSide::Left => check_left_n_cotorsion(a, b, *n, universe, limits)?,
                PairSide::Right => check_right_n_cotorsion(a, b, *n, universe, limits)?,
                PairSide::Both => check_n_cotorsion(a, b, *n, universe, *hereditary, limits)?,
            },
            Job::MnCotorsion { a, b, m, n, universe } => check_mn_cotorsion(a, b, *m, *n, universe, limits)?,
            Job::Recollement(s) => {
                let inst = s.instance();
                let mut r = CheckReport::new(format!("recollement {}", inst.name()));
                let t = inst.total();
                r.claim(
                    "universes enumerated",
                    Verdict::Pass,
                    format!(
                        "{} closed, {} total, {} open indecomposables",
                        s.closed_universe().len(),
                        s.total_universe().len(),
                        s.open_universe().len()
                    ),
                );
                r.note(format!("total algebra {} of dimension {}", t.name(), t.dimension()));
                let mut labels = Vec::new();
                for m in s.total_universe().members() {
                    let l = inst.triple_label(m, limits)?;
                    r.note(format!("{l} {:?}", m.dims()));
                    labels.push(l);
                }
                r.data = Some(json!({
                    "mode": inst.mode(),
                    "total": AlgebraFile::from_algebra(t),
                    "total_modules": labels,
                }));
                r.finish()
            }
            Job::Audit(s, families) => {
                let mut r = CheckReport::new(format!("audit of {}", s.instance().name()));
                r.child(audit_axioms(s)?);
                r.child(exactness_report(s)?);
                if let Some(k) = families {
                    r.child(ext_adjunction_check(s, *k)?);
                }
                r.finish()
            }
            Job::Exactness(s) => exactness_report(s)?,
            Job::ExtFamilies(s, k) => ext_adjunction_check(s, *k)?,
            Job::Glue { setting, classes, n } => {
                let [a1, b1, a2, b2] = classes;
                let g = glue_classes(setting, a1, b1, a2, b2, *n)?;
                let mut r = g.report;
                r.data = Some(json!({
                    "a": module_list(g.a.members(), limits)?,
                    "b": module_list(g.b.members(), limits)?,
                }));
                r
            }
            Job::Restrict {
                setting,
                a,
                b,
                n,
                mode,
            } => {
                let res = restrict_classes(setting, a, b, *n, *mode)?;
                restricted_report(res, limits)?
            }
            Job::RestrictMn { setting, a, b, m, n } => {
                let res = restrict_mn_classes(setting, a, b, *m, *n)?;
                restricted_report(res, limits)?
            }
            Job::Tilting { module, n, cotilting } => {
                if *cotilting {
                    check_n_cotilting(module, *n, limits)?
                } else {
                    check_n_tilting(module, *n, limits)?
                }
            }
            Job::GlueTilting {
                setting,
                closed,
                open,
                n,
                cotilting,
            } => {
                let (m, mut r) = if *cotilting {
                    glue_cotilting(setting, closed, open, *n)?
                } else {
                    glue_tilting(setting, closed, open, *n)?
                };
                r.data = Some(json!({"module": module_to_file(&m)}));
                r
            }
            Job::PaperExample(p) => {
                let mut l = limits.clone();
                l.dim_bound = l.dim_bound.max(1);
                paper_example(*p, &l)?.to_report()
            }
        })
    }
}

fn restricted_report(res: crate::recol::Restricted, limits: &Limits) -> Result<CheckReport> {
    let mut r = res.report;
    r.data = Some(json!({
        "closed": {"a": module_list(res.closed.0.members(), limits)?, "b": module_list(res.closed.1.members(), limits)?},
        "open": {"a": module_list(res.open.0.members(), limits)?, "b": module_list(res.open.1.members(), limits)?},
    }));
    Ok(r)
}

#[derive(Clone, Debug, Serialize)]
pub struct TaskOutcome {
    pub index: usize,
    pub id: String,
    pub op: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub after: Vec<String>,
    pub expected: Verdict,
    pub verdict: Verdict,
    pub ok: bool,
    pub report: CheckReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScenarioRun {
    pub check: String,
    pub verdict: Verdict,
    pub tasks: Vec<TaskOutcome>,
}

impl ScenarioRun {
    /// 0 when every task met its expectation, 1 when some task reached the
    /// wrong verdict, 3 when the only misses are inconclusive.
    pub fn exit_code(&self) -> i32 {
        let missed: Vec<&TaskOutcome> = self.tasks.iter().filter(|t| !t.ok).collect();
        if missed.is_empty() {
            0
        } else if missed.iter().any(|t| t.verdict != Verdict::Inconclusive) {
            1
        } else {
            3
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for t in &self.tasks {
            let mark = if t.ok { "ok" } else { "UNEXPECTED" };
            out.push_str(&format!(
                "{mark:>10}  {} [{}] expected {}, got {}\n",
                t.id,
                t.op,
                t.expected.as_str(),
                t.verdict.as_str()
            ));
            for line in t.report.render().lines() {
                out.push_str(&format!("            {line}\n"));
            }
        }
        out
    }
}

pub fn load_scenario(path: &Path) -> Result<ScenarioFile> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| Error::input(format!("{}: {e}", path.display())))
}

/// Checks references, resolves every task, then runs them wave by wave.
pub fn run_scenario(file: &ScenarioFile, ctx: Context, dir: &Path) -> Result<ScenarioRun> {
    let ids: Vec<String> = file
        .tasks
        .iter()
        .enumerate()
        .map(|(i, t)| t.id.clone().unwrap_or_else(|| format!("task{}", i + 1)))
        .collect();
    let mut deps = Vec::with_capacity(file.tasks.len());
    for (i, t) in file.tasks.iter().enumerate() {
        if ids[..i].contains(&ids[i]) {
            return Err(Error::input(format!("duplicate task id `{}`", ids[i])));
        }
        let mut d = Vec::new();
        for a in &t.after {
            match ids[..i].iter().position(|x| x == a) {
                Some(j) => d.push(j),
                None if ids.contains(a) => {
                    return Err(Error::input(format!("task `{}` depends on the later task `{a}`", ids[i])))
                }
                None => return Err(Error::input(format!("task `{}` depends on unknown task `{a}`", ids[i]))),
            }
        }
        deps.push(d);
    }
    if let Some(name) = file.instances.keys().find(|n| file.algebras.contains_key(*n)) {
        return Err(Error::input(format!("`{name}` names both an algebra and an instance")));
    }

    let limits = ctx.limits.clone();
    let mut resolver = Resolver::for_scenario(ctx, dir.to_path_buf(), file);
    let jobs = file
        .tasks
        .iter()
        .zip(&ids)
        .map(|(t, id)| resolver.resolve(&t.op).map_err(|e| annotate(id, e)))
        .collect::<Result<Vec<Job>>>()?;

    // Wave k holds the tasks whose longest prerequisite chain has length k.
    let mut wave = vec![0usize; jobs.len()];
    for i in 0..jobs.len() {
        wave[i] = deps[i].iter().map(|&j| wave[j] + 1).max().unwrap_or(0);
    }
    let waves = wave.iter().copied().max().map_or(0, |w| w + 1);
    let mut outcomes: Vec<Option<TaskOutcome>> = vec![None; jobs.len()];
    for w in 0..waves {
        let members: Vec<usize> = (0..jobs.len()).filter(|&i| wave[i] == w).collect();
        let results: Vec<(usize, Result<CheckReport>)> = members
            .par_iter()
            .map(|&i| {
                let blocked: Vec<&str> = deps[i]
                    .iter()
                    .filter(|&&j| !outcomes[j].as_ref().is_some_and(|o| o.ok))
                    .map(|&j| ids[j].as_str())
                    .collect();
                if blocked.is_empty() {
                    (i, jobs[i].run(&limits))
                } else {
                    let mut r = CheckReport::new(format!("{} (skipped)", ids[i]));
                    let reason = format!("prerequisite {} missed its expectation", blocked.join(", "));
                    r.guard_hit(reason.clone());
                    r.claim("ran", Verdict::Inconclusive, reason);
                    (i, Ok(r.finish()))
                }
            })
            .collect();
        for (i, r) in results {
            let report = r.map_err(|e| annotate(&ids[i], e))?;
            let t = &file.tasks[i];
            let expected = t.expect.unwrap_or(Verdict::Pass);
            outcomes[i] = Some(TaskOutcome {
                index: i,
                id: ids[i].clone(),
                op: t.op.name().to_string(),
                after: t.after.clone(),
                expected,
                verdict: report.verdict,
                ok: report.verdict == expected,
                report,
            });
        }
    }
    let tasks: Vec<TaskOutcome> = outcomes.into_iter().map(|o| o.expect("every wave ran")).collect();
    let verdict = Verdict::from_bool(tasks.iter().all(|t| t.ok));
    Ok(ScenarioRun {
        check: "scenario".into(),
        verdict,
        tasks,
    })
}

fn annotate(id: &str, e: Error) -> Error {
    match e {
        Error::Resource { guard, detail } => Error::Resource {
            guard,
            detail: format!("task `{id}`: {detail}"),
        },
        Error::Validation(m) => Error::Validation(format!("task `{id}`: {m}")),
        other => Error::input(format!("task `{id}`: {other}")),
    }
}
