//! JSON input formats and name resolution.
//!
//! * algebra: `{"vertices":[..], "arrows":[{"name","from","to"}],
//!   "relations":[[{"coeff":int,"path":[arrow,..]}, ..]], "nilpotency_bound":int}`
//! * module: `{"algebra":name, "dims":{vertex:int}, "maps":{arrow:[[int,..],..]}}`
//! * class: `{"algebra":name, "members":[module,..]}` or `{"universe":"all"}`
//! * instance: `{"base":name, "mode":"regular"|"zero"}`
//!
//! Paths in relations list arrows in the order they are traversed.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::sync::Arc;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Deserialize, Serialize, Serializer};

use crate::builtin;
use crate::error::{Error, Result};
use crate::ffld::{Field, Mat};
use crate::limits::Limits;
use crate::modrep::{Morphism, Representation};
use crate::quivalg::{injective, injective_cogenerator, projective, regular_module, simple, Algebra, Quiver, Relation};
use crate::recol::{Instance, Mode};

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct ArrowSpec {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct TermSpec {
    pub coeff: i64,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct AlgebraFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<Vec<TermSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nilpotency_bound: Option<usize>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct ModuleFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub algebra: String,
    #[serde(default)]
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub maps: BTreeMap<String, Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ClassFile {
    Members {
        algebra: String,
        members: Vec<String>,
    },
    Universe {
        universe: String,
    },
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct InstanceFile {
    pub base: String,
    pub mode: String,
}

fn read(path: &FsPath) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse<T: for<'de> Deserialize<'de>>(path: &FsPath) -> Result<T> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| Error::input(format!("{}: {e}", path.display())))
}

impl AlgebraFile {
    pub fn build(&self, default_name: &str, field: Field, limits: &Limits) -> Result<Arc<Algebra>> {
        let arrows: Vec<(&str, &str, &str)> = self
            .arrows
            .iter()
            .map(|a| (a.name.as_str(), a.from.as_str(), a.to.as_str()))
            .collect();
        let q = Quiver::new(&self.vertices, &arrows)?;
        let mut rels = Vec::new();
        for (ri, r) in self.relations.iter().enumerate() {
            let mut terms = Vec::new();
            for t in r {
                let path = t
                    .path
                    .iter()
                    .map(|a| {
                        q.arrow_index(a)
                            .ok_or_else(|| Error::input(format!("relation #{ri}: unknown arrow `{a}`")))
                    })
                    .collect::<Result<Vec<usize>>>()?;
                terms.push((t.coeff, path));
            }
            rels.push(Relation::new(&q, field, &terms)?);
        }
        let name = self.name.clone().unwrap_or_else(|| default_name.to_string());
        Algebra::new(name, field, q, rels, self.nilpotency_bound, limits)
    }

    pub fn from_algebra(alg: &Algebra) -> Self {
        let q = alg.quiver();
        AlgebraFile {
            name: Some(alg.name().to_string()),
            vertices: q.vertices().to_vec(),
            arrows: q
                .arrows()
                .iter()
                .map(|a| ArrowSpec {
                    name: a.name.clone(),
                    from: q.vertices()[a.source].clone(),
                    to: q.vertices()[a.target].clone(),
                })
                .collect(),
            relations: alg
                .relations()
                .iter()
                .map(|r| {
                    r.terms()
                        .iter()
                        .map(|(c, p)| TermSpec {
                            coeff: *c as i64,
                            path: p.arrows.iter().map(|&a| q.arrows()[a].name.clone()).collect(),
                        })
                        .collect()
                })
                .collect(),
            nilpotency_bound: Some(alg.nilpotency_bound()),
        }
    }
}

impl ModuleFile {
    pub fn build(&self, alg: &Arc<Algebra>) -> Result<Representation> {
        let q = alg.quiver();
        let k = alg.field();
        for v in self.dims.keys() {
            if q.vertex_index(v).is_none() {
                return Err(Error::input(format!("module: unknown vertex `{v}`")));
            }
        }
        for a in self.maps.keys() {
            if q.arrow_index(a).is_none() {
                return Err(Error::input(format!("module: unknown arrow `{a}`")));
            }
        }
        let dims: Vec<usize> = q
            .vertices()
            .iter()
            .map(|v| self.dims.get(v).copied().unwrap_or(0))
            .collect();
        let maps = q
            .arrows()
            .iter()
            .map(|a| {
                let (r, c) = (dims[a.target], dims[a.source]);
                match self.maps.get(&a.name) {
                    None => Ok(Mat::zeros(k, r, c)),
                    Some(rows) if rows.is_empty() && (r == 0 || c == 0) => Ok(Mat::zeros(k, r, c)),
                    Some(rows) => {
                        if rows.len() != r {
                            return Err(Error::input(format!(
                                "arrow `{}` needs {r} rows, got {}",
                                a.name,
                                rows.len()
                            )));
                        }
                        Mat::from_rows(k, rows, c)
                    }
                }
            })
            .collect::<Result<Vec<Mat>>>()?;
        let m = Representation::new(alg.clone(), dims, maps)?;
        if let Some(rel) = m.relation_violation() {
            return Err(Error::validation(format!("module violates {rel}")));
        }
        Ok(match &self.name {
            Some(n) => m.with_name(n.clone()),
            None => m,
        })
    }
}

fn matrix_rows(m: &Mat) -> Vec<Vec<u32>> {
    m.to_rows()
}

impl Serialize for Representation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Dims<'a>(&'a Representation);
        impl Serialize for Dims<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let q = self.0.algebra().quiver();
                let mut m = s.serialize_map(Some(q.vertex_count()))?;
                for (v, label) in q.vertices().iter().enumerate() {
                    m.serialize_entry(label, &self.0.dim(v))?;
                }
                m.end()
            }
        }
        struct Maps<'a>(&'a Representation);
        impl Serialize for Maps<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let q = self.0.algebra().quiver();
                let mut m = s.serialize_map(Some(q.arrow_count()))?;
                for (ai, a) in q.arrows().iter().enumerate() {
                    m.serialize_entry(&a.name, &matrix_rows(self.0.map(ai)))?;
                }
                m.end()
            }
        }
        let mut st = s.serialize_struct("Module", 4)?;
        st.serialize_field("name", &self.label())?;
        st.serialize_field("algebra", self.algebra().name())?;
        st.serialize_field("dims", &Dims(self))?;
        st.serialize_field("maps", &Maps(self))?;
        st.end()
    }
}

impl Serialize for Morphism {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Blocks<'a>(&'a Morphism);
        impl Serialize for Blocks<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let q = self.0.source().algebra().quiver();
                let mut m = s.serialize_map(Some(q.vertex_count()))?;
                for (v, label) in q.vertices().iter().enumerate() {
                    m.serialize_entry(label, &matrix_rows(self.0.block(v)))?;
                }
                m.end()
            }
        }
        let mut st = s.serialize_struct("Morphism", 3)?;
        st.serialize_field("source", self.source())?;
        st.serialize_field("target", self.target())?;
        st.serialize_field("blocks", &Blocks(self))?;
        st.end()
    }
}

/// Module in the input file format, with `algebra` set to the algebra name.
pub fn module_to_file(m: &Representation) -> ModuleFile {
    let q = m.algebra().quiver();
    ModuleFile {
        name: m.name().map(str::to_string),
        algebra: m.algebra().name().to_string(),
        dims: q
            .vertices()
            .iter()
            .enumerate()
            .map(|(v, l)| (l.clone(), m.dim(v)))
            .collect(),
        maps: q
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let rows = m.map(ai).to_rows().into_iter().map(|r| r.into_iter().map(i64::from).collect()).collect();
                (a.name.clone(), rows)
            })
            .collect(),
    }
}

/// Standard modules by name: `R`, `DR`, `0`, `P(v)`, `S(v)`, `I(v)` (the
/// parentheses are optional).
pub fn standard_module(alg: &Arc<Algebra>, name: &str) -> Option<Representation> {
    match name {
        "R" => return Some(regular_module(alg)),
        "DR" => return Some(injective_cogenerator(alg)),
        "0" => return Some(Representation::zero(alg)),
        _ => {}
    }
    let mut chars = name.chars();
    let kind = chars.next()?;
    let rest = chars.as_str();
    let label = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(rest);
    let v = alg.quiver().vertex_index(label)?;
    match kind {
        'P' => Some(projective(alg, v)),
        'S' => Some(simple(alg, v)),
        'I' => Some(injective(alg, v)),
        _ => None,
    }
}

/// Resolves algebra and module names relative to a working directory.
#[derive(Clone, Debug)]
pub struct Context {
    pub field: Field,
    pub limits: Limits,
    algebras: BTreeMap<String, Arc<Algebra>>,
}

impl Context {
    pub fn new(field: Field, limits: Limits) -> Self {
        Context {
            field,
            limits,
            algebras: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, alg: Arc<Algebra>) {
        self.algebras.insert(alg.name().to_string(), alg);
    }

    /// A built-in name, a previously loaded algebra, or a JSON file (tried as
    /// given and with `.json` appended, relative to `dir`).
    pub fn algebra(&mut self, name: &str, dir: &FsPath) -> Result<Arc<Algebra>> {
        if let Some(a) = self.algebras.get(name) {
            return Ok(a.clone());
        }
        if let Some(a) = builtin::by_name(name, self.field, &self.limits) {
            let a = a?;
            self.algebras.insert(name.to_string(), a.clone());
            return Ok(a);
        }
        let path = locate(name, dir).ok_or_else(|| Error::input(format!("unknown algebra `{name}`")))?;
        let file: AlgebraFile = parse(&path)?;
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(name).to_string();
        let alg = file.build(&stem, self.field, &self.limits)?;
        self.algebras.insert(name.to_string(), alg.clone());
        self.algebras.insert(alg.name().to_string(), alg.clone());
        Ok(alg)
    }

    pub fn load_algebra_file(&mut self, path: &FsPath) -> Result<Arc<Algebra>> {
        let s = path.to_string_lossy().to_string();
        self.algebra(&s, FsPath::new("."))
    }

    pub fn load_module_file(&mut self, path: &FsPath) -> Result<Representation> {
        let file: ModuleFile = parse(path)?;
        let dir = parent(path);
        let alg = self.algebra(&file.algebra, &dir)?;
        let m = file.build(&alg)?;
        if m.name().is_none() {
            let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("M").to_string();
            return Ok(m.with_name(stem));
        }
        Ok(m)
    }

    /// Module named by a standard name over `alg` or by a module file.
    pub fn module(&mut self, alg: &Arc<Algebra>, name: &str, dir: &FsPath) -> Result<Representation> {
        if let Some(m) = standard_module(alg, name) {
            return Ok(m);
        }
        let path = locate(name, dir).ok_or_else(|| Error::input(format!("unknown module `{name}`")))?;
        let m = self.load_module_file(&path)?;
        if !m.algebra().same_as(alg) {
            return Err(Error::input(format!(
                "module `{name}` lives over `{}`, expected `{}`",
                m.algebra().name(),
                alg.name()
            )));
        }
        Ok(m)
    }

    /// A class file: `Some((algebra, members))`, or `None` for the universe.
    pub fn load_class_file(&mut self, path: &FsPath) -> Result<Option<(Arc<Algebra>, Vec<Representation>)>> {
        let file: ClassFile = parse(path)?;
        let dir = parent(path);
        match file {
            ClassFile::Universe { universe } if universe == "all" => Ok(None),
            ClassFile::Universe { universe } => Err(Error::input(format!("unknown universe tag `{universe}`"))),
            ClassFile::Members { algebra, members } => {
                let alg = self.algebra(&algebra, &dir)?;
                let ms = members
                    .iter()
                    .map(|m| self.module(&alg, m, &dir))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Some((alg, ms)))
            }
        }
    }

    pub fn load_instance_file(&mut self, path: &FsPath) -> Result<Instance> {
        let file: InstanceFile = parse(path)?;
        self.instance(&file, &parent(path))
    }

    pub fn instance(&mut self, file: &InstanceFile, dir: &FsPath) -> Result<Instance> {
        let base = self.algebra(&file.base, dir)?;
        Instance::build(&base, Mode::parse(&file.mode)?, &self.limits)
    }
}

fn parent(path: &FsPath) -> PathBuf {
    path.parent().map(FsPath::to_path_buf).unwrap_or_else(|| PathBuf::from("."))
}

fn locate(name: &str, dir: &FsPath) -> Option<PathBuf> {
    let candidates = [
        PathBuf::from(name),
        dir.join(name),
        dir.join(format!("{name}.json")),
        PathBuf::from(format!("{name}.json")),
    ];
    candidates.into_iter().find(|p| p.is_file())
}
