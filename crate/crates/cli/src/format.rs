//! The JSON structure-constant file format and its loader.

use std::collections::BTreeMap;
use std::path::Path;

use hopfcat::descent::Extension;
use hopfcat::galois::ComoduleCat;
use hopfcat::graded::{Grading, Groupoid};
use hopfcat::hopfcat::{HopfCat, SemiHopfCat};
use hopfcat::lincat::{Algebra, DiagAlgebra, LinCat, ObjSet, RightModule, XFam};
use hopfcat::{Field, Mat, Scalar};
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub format: u32,
    pub field: FieldSpec,
    pub objects: Vec<String>,
    #[serde(default)]
    pub spaces: BTreeMap<String, usize>,
    #[serde(default)]
    pub tensors: BTreeMap<String, Tensor>,
    #[serde(default)]
    pub roles: Vec<Role>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Named(String),
    Prime {
        #[serde(rename = "Fp")]
        p: u64,
    },
}

impl FieldSpec {
    pub fn parse_flag(s: &str) -> Result<FieldSpec, String> {
        if s == "Q" {
            return Ok(FieldSpec::Named("Q".into()));
        }
        match s.strip_prefix("Fp:").map(str::parse::<u64>) {
            Some(Ok(p)) => Ok(FieldSpec::Prime { p }),
            _ => Err(format!("field must be Q or Fp:<prime>, got {}", s)),
        }
    }

    pub fn field(&self) -> Result<Field, LoadError> {
        match self {
            FieldSpec::Named(s) if s == "Q" => Ok(Field::Rational),
            FieldSpec::Named(s) => Err(LoadError::Invalid { location: "field".into(), message: format!("unknown field {}", s) }),
            FieldSpec::Prime { p } => Field::prime(*p).map_err(|e| LoadError::Invalid { location: "field".into(), message: e.to_string() }),
        }
    }
}

/// A linear map between tensor products of named spaces. Each entry lists
/// one index per `from` space, one per `to` space, then the numerator and,
/// over `Q`, the denominator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tensor {
    pub from: Vec<String>,
    pub to: Vec<String>,
    pub entries: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Arrow {
    pub label: String,
    pub src: String,
    pub dst: String,
}

/// Component maps are keyed by space-separated object labels, e.g. `"x y"`.
/// A missing hom key means a zero space; a missing map key means the zero map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "lowercase", deny_unknown_fields)]
pub enum Role {
    Lincat {
        name: String,
        hom: BTreeMap<String, String>,
        #[serde(default)]
        mult: BTreeMap<String, String>,
        #[serde(default)]
        unit: BTreeMap<String, String>,
    },
    Hopf {
        name: String,
        algebra: String,
        #[serde(default)]
        comult: BTreeMap<String, String>,
        #[serde(default)]
        counit: BTreeMap<String, String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        antipode: Option<BTreeMap<String, String>>,
    },
    Comodule {
        name: String,
        algebra: String,
        hopf: String,
        #[serde(default)]
        coaction: BTreeMap<String, String>,
    },
    Module {
        name: String,
        algebra: String,
        hom: BTreeMap<String, String>,
        #[serde(default)]
        action: BTreeMap<String, String>,
    },
    Extension {
        name: String,
        base: String,
        algebra: String,
        #[serde(default)]
        inclusion: BTreeMap<String, String>,
    },
    Groupoid {
        name: String,
        arrows: Vec<Arrow>,
        compose: Vec<[String; 3]>,
        inverse: BTreeMap<String, String>,
        identity: BTreeMap<String, String>,
    },
    Grading {
        name: String,
        algebra: String,
        groupoid: String,
        #[serde(default)]
        parts: BTreeMap<String, String>,
    },
}

impl Role {
    pub fn name(&self) -> &str {
        match self {
            Role::Lincat { name, .. }
            | Role::Hopf { name, .. }
            | Role::Comodule { name, .. }
            | Role::Module { name, .. }
            | Role::Extension { name, .. }
            | Role::Groupoid { name, .. }
            | Role::Grading { name, .. } => name,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unresolved {kind} '{name}' referenced from {location}")]
    Unresolved { kind: &'static str, name: String, location: String },
    #[error("invalid {location}: {message}")]
    Invalid { location: String, message: String },
}

fn invalid(location: impl Into<String>, message: impl Into<String>) -> LoadError {
    LoadError::Invalid { location: location.into(), message: message.into() }
}

#[derive(Clone, Debug)]
pub enum HopfKind {
    Semi(SemiHopfCat),
    Full(HopfCat),
}

impl HopfKind {
    pub fn semi(&self) -> &SemiHopfCat {
        match self {
            HopfKind::Semi(s) => s,
            HopfKind::Full(h) => &h.base,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    pub name: String,
    pub algebra: String,
    pub groupoid: String,
    pub grading: Grading,
}

/// Every structure declared in a file, in role order.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub field: Field,
    pub objs: ObjSet,
    pub lincats: Vec<(String, LinCat)>,
    pub hopfs: Vec<(String, HopfKind)>,
    pub comodules: Vec<(String, ComoduleCat)>,
    pub modules: Vec<(String, String, RightModule)>,
    pub extensions: Vec<(String, Extension)>,
    pub groupoids: Vec<(String, Groupoid)>,
    pub gradings: Vec<GradedAlgebra>,
}

impl Loaded {
    pub fn lincat(&self, name: &str) -> Option<&LinCat> {
        self.lincats.iter().find(|(n, _)| n == name).map(|(_, l)| l)
    }
    pub fn groupoid(&self, name: &str) -> Option<&Groupoid> {
        self.groupoids.iter().find(|(n, _)| n == name).map(|(_, g)| g)
    }
}

pub fn parse(text: &str) -> Result<StructureFile, LoadError> {
    serde_json::from_str(text).map_err(|e| LoadError::Parse { line: e.line(), column: e.column(), message: e.to_string() })
}

pub fn read(path: &Path) -> Result<StructureFile, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|e| LoadError::Io { path: path.display().to_string(), source: e })?;
    parse(&text)
}

pub fn to_json(file: &StructureFile) -> String {
    serde_json::to_string_pretty(file).expect("structure files serialize") + "\n"
}

struct Ctx<'a> {
    file: &'a StructureFile,
    field: Field,
    objs: ObjSet,
}

impl<'a> Ctx<'a> {
    fn obj(&self, label: &str, location: &str) -> Result<usize, LoadError> {
        self.objs.index(label).ok_or_else(|| LoadError::Unresolved { kind: "object", name: label.into(), location: location.into() })
    }

    fn key(&self, key: &str, arity: usize, location: &str) -> Result<Vec<usize>, LoadError> {
        let parts: Vec<&str> = key.split_whitespace().collect();
        if parts.len() != arity {
            return Err(invalid(location, format!("key '{}' should name {} objects", key, arity)));
        }
        parts.iter().map(|p| self.obj(p, location)).collect()
    }

    fn space(&self, name: &str, location: &str) -> Result<usize, LoadError> {
        self.file.spaces.get(name).copied().ok_or_else(|| LoadError::Unresolved {
            kind: "space",
            name: name.into(),
            location: location.into(),
        })
    }

    /// Hom spaces keyed by object pairs; absent pairs are `None`.
    fn homs(&self, hom: &BTreeMap<String, String>, location: &str) -> Result<Vec<Option<String>>, LoadError> {
        let n = self.objs.len();
        let mut out = vec![None; n * n];
        for (k, s) in hom {
            let xy = self.key(k, 2, location)?;
            self.space(s, location)?;
            out[xy[0] * n + xy[1]] = Some(s.clone());
        }
        Ok(out)
    }

    fn scalar(&self, num: i64, den: Option<i64>, location: &str) -> Result<Scalar, LoadError> {
        let f = self.field;
        let n = f.int(num);
        match den {
            None => Ok(n),
            Some(0) => Err(invalid(location, "zero denominator")),
            Some(d) => {
                let d = f.int(d);
                let inv = f.inv(&d).ok_or_else(|| invalid(location, "denominator not invertible in the field"))?;
                Ok(f.mul(&n, &inv))
            }
        }
    }

    /// The matrix of tensor `name`, required to map `from` to `to` (space
    /// names, `None` for a zero space). `None` as the name gives zero.
    fn tensor(&self, name: Option<&String>, from: &[Option<&String>], to: &[Option<&String>], location: &str) -> Result<Mat, LoadError> {
        let dim = |s: &Option<&String>| s.map(|s| self.file.spaces.get(s).copied().unwrap_or(0)).unwrap_or(0);
        let fd: Vec<usize> = from.iter().map(dim).collect();
        let td: Vec<usize> = to.iter().map(dim).collect();
        let (cols, rows) = (fd.iter().product::<usize>(), td.iter().product::<usize>());
        let mut m = Mat::zeros(self.field, rows, cols);
        let Some(name) = name else { return Ok(m) };
        let loc = format!("{} (tensor {})", location, name);
        let t = self.file.tensors.get(name).ok_or_else(|| LoadError::Unresolved {
            kind: "tensor",
            name: name.clone(),
            location: location.into(),
        })?;
        for s in t.from.iter().chain(&t.to) {
            self.space(s, &loc)?;
        }
        let same = |decl: &[String], want: &[Option<&String>]| {
            let want: Vec<&String> = want.iter().flatten().copied().collect();
            decl.len() == want.len() && decl.iter().zip(&want).all(|(a, b)| a == *b)
        };
        if rows * cols > 0 && !(same(&t.from, from) && same(&t.to, to)) {
            return Err(invalid(&loc, format!("expected {:?} -> {:?}, declared {:?} -> {:?}", from, to, t.from, t.to)));
        }
        let legs = t.from.len() + t.to.len();
        let rational = self.field == Field::Rational;
        for (k, e) in t.entries.iter().enumerate() {
            let want = legs + if rational { 2 } else { 1 };
            // rational data read over F_p keeps its denominators
            let fp_with_den = !rational && e.len() == legs + 2;
            if e.len() != want && !fp_with_den {
                return Err(invalid(&loc, format!("entry {} has {} numbers, expected {}", k, e.len(), want)));
            }
            let idx = &e[..legs];
            let (fi, ti) = idx.split_at(t.from.len());
            let flat = |ix: &[i64], dims: &[usize]| -> Option<usize> {
                let mut acc = 0usize;
                for (&i, &d) in ix.iter().zip(dims) {
                    if i < 0 || i as usize >= d {
                        return None;
                    }
                    acc = acc * d + i as usize;
                }
                Some(acc)
            };
            let decl_dims = |names: &[String]| names.iter().map(|s| self.file.spaces[s]).collect::<Vec<_>>();
            let (c, r) = match (flat(fi, &decl_dims(&t.from)), flat(ti, &decl_dims(&t.to))) {
                (Some(c), Some(r)) => (c, r),
                _ => return Err(invalid(&loc, format!("entry {} index out of range", k))),
            };
            let den = if e.len() == legs + 2 { Some(e[legs + 1]) } else { None };
            let v = self.scalar(e[legs], den, &loc)?;
            let cur = m.get(r, c).clone();
            m.set(r, c, self.field.add(&cur, &v));
        }
        Ok(m)
    }
}

fn lookup<'m>(map: &'m BTreeMap<String, String>, objs: &ObjSet, ix: &[usize]) -> Option<&'m String> {
    let key: Vec<&str> = ix.iter().map(|&i| objs.label(i)).collect();
    map.get(&key.join(" "))
}

/// Parses roles into library structures. Constructors check shapes; axioms
/// are left to the validate suite.
pub fn resolve(file: &StructureFile) -> Result<Loaded, LoadError> {
    if file.format != FORMAT_VERSION {
        return Err(invalid("format", format!("unsupported format {}", file.format)));
    }
    let field = file.field.field()?;
    let objs = ObjSet::new(file.objects.clone()).map_err(|e| invalid("objects", e.to_string()))?;
    let cx = Ctx { file, field, objs: objs.clone() };
    let n = objs.len();
    let mut names = std::collections::BTreeSet::new();
    for r in &file.roles {
        if !names.insert(r.name()) {
            return Err(invalid(format!("role {}", r.name()), "duplicate role name"));
        }
    }
    for (name, t) in &file.tensors {
        for s in t.from.iter().chain(&t.to) {
            cx.space(s, &format!("tensor {}", name))?;
        }
    }
    let mut out = Loaded {
        field,
        objs: objs.clone(),
        lincats: vec![],
        hopfs: vec![],
        comodules: vec![],
        modules: vec![],
        extensions: vec![],
        groupoids: vec![],
        gradings: vec![],
    };
    let mut lincat_homs: BTreeMap<String, Vec<Option<String>>> = BTreeMap::new();

    for r in &file.roles {
        if let Role::Groupoid { name, arrows, compose, inverse, identity } = r {
            let loc = format!("groupoid {}", name);
            let m = arrows.len();
            let arrow = |l: &str| {
                arrows.iter().position(|a| a.label == l).ok_or_else(|| LoadError::Unresolved {
                    kind: "arrow",
                    name: l.into(),
                    location: loc.clone(),
                })
            };
            let src = arrows.iter().map(|a| cx.obj(&a.src, &loc)).collect::<Result<Vec<_>, _>>()?;
            let dst = arrows.iter().map(|a| cx.obj(&a.dst, &loc)).collect::<Result<Vec<_>, _>>()?;
            let mut table = vec![vec![None; m]; m];
            for [a, b, c] in compose {
                table[arrow(a)?][arrow(b)?] = Some(arrow(c)?);
            }
            let mut inv = vec![usize::MAX; m];
            for (a, b) in inverse {
                inv[arrow(a)?] = arrow(b)?;
            }
            let mut ids = vec![usize::MAX; n];
            for (x, a) in identity {
                ids[cx.obj(x, &loc)?] = arrow(a)?;
            }
            let labels = arrows.iter().map(|a| a.label.clone()).collect();
            let g = Groupoid::new(objs.clone(), labels, src, dst, table, inv, ids).map_err(|e| invalid(&loc, e.to_string()))?;
            out.groupoids.push((name.clone(), g));
        }
    }

    for r in &file.roles {
        if let Role::Lincat { name, hom, mult, unit } = r {
            let loc = format!("lincat {}", name);
            let homs = cx.homs(hom, &loc)?;
            let h = |x: usize, y: usize| homs[x * n + y].as_ref();
            let dims = XFam::from_fn(n, |x, y| h(x, y).map(|s| file.spaces[s]).unwrap_or(0));
            let mut ms = Vec::with_capacity(n * n * n);
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        ms.push(cx.tensor(lookup(mult, &objs, &[x, y, z]), &[h(x, y), h(y, z)], &[h(x, z)], &loc)?);
                    }
                }
            }
            let us = (0..n).map(|x| cx.tensor(lookup(unit, &objs, &[x]), &[], &[h(x, x)], &loc)).collect::<Result<Vec<_>, _>>()?;
            for k in mult.keys().chain(unit.keys()) {
                let arity = k.split_whitespace().count();
                cx.key(k, arity, &loc)?;
            }
            let l = LinCat::new(field, objs.clone(), dims, ms, us).map_err(|e| invalid(&loc, e.to_string()))?;
            lincat_homs.insert(name.clone(), homs);
            out.lincats.push((name.clone(), l));
        }
    }

    let lincats = out.lincats.clone();
    let lincat_of = |name: &str, location: &str| -> Result<(LinCat, Vec<Option<String>>), LoadError> {
        match (lincats.iter().find(|(n, _)| n == name), lincat_homs.get(name)) {
            (Some((_, l)), Some(h)) => Ok((l.clone(), h.clone())),
            _ => Err(LoadError::Unresolved { kind: "lincat", name: name.into(), location: location.into() }),
        }
    };

    let mut hopf_homs: BTreeMap<String, Vec<Option<String>>> = BTreeMap::new();
    let mut hopfs = Vec::new();
    for r in &file.roles {
        if let Role::Hopf { name, algebra, comult, counit, antipode } = r {
            let loc = format!("hopf {}", name);
            let (alg, homs) = lincat_of(algebra, &loc)?;
            let h = |x: usize, y: usize| homs[x * n + y].as_ref();
            let mut cm = Vec::with_capacity(n * n);
            let mut cu = Vec::with_capacity(n * n);
            for x in 0..n {
                for y in 0..n {
                    cm.push(cx.tensor(lookup(comult, &objs, &[x, y]), &[h(x, y)], &[h(x, y), h(x, y)], &loc)?);
                    cu.push(cx.tensor(lookup(counit, &objs, &[x, y]), &[h(x, y)], &[], &loc)?);
                }
            }
            let semi = SemiHopfCat::new(alg, cm, cu).map_err(|e| invalid(&loc, e.to_string()))?;
            let kind = match antipode {
                None => HopfKind::Semi(semi),
                Some(s) => {
                    let mut ss = Vec::with_capacity(n * n);
                    for x in 0..n {
                        for y in 0..n {
                            ss.push(cx.tensor(lookup(s, &objs, &[x, y]), &[h(x, y)], &[h(y, x)], &loc)?);
                        }
                    }
                    HopfKind::Full(HopfCat::new(semi, ss).map_err(|e| invalid(&loc, e.to_string()))?)
                }
            };
            hopf_homs.insert(name.clone(), homs);
            hopfs.push((name.clone(), kind));
        }
    }
    out.hopfs = hopfs;

    for r in &file.roles {
        match r {
            Role::Comodule { name, algebra, hopf, coaction } => {
                let loc = format!("comodule {}", name);
                let (a, ahoms) = lincat_of(algebra, &loc)?;
                let hk = out.hopfs.iter().find(|(n, _)| n == hopf).map(|(_, h)| h.clone()).ok_or_else(|| LoadError::Unresolved {
                    kind: "hopf",
                    name: hopf.clone(),
                    location: loc.clone(),
                })?;
                let hh = &hopf_homs[hopf];
                let mut rho = Vec::with_capacity(n * n);
                for x in 0..n {
                    for y in 0..n {
                        let (ax, hx) = (ahoms[x * n + y].as_ref(), hh[x * n + y].as_ref());
                        rho.push(cx.tensor(lookup(coaction, &objs, &[x, y]), &[ax], &[ax, hx], &loc)?);
                    }
                }
                let c = match hk {
                    HopfKind::Full(h) => ComoduleCat::over_hopf(a, &h, rho),
                    HopfKind::Semi(s) => ComoduleCat::new(a, s, rho),
                }
                .map_err(|e| invalid(&loc, e.to_string()))?;
                out.comodules.push((name.clone(), c));
            }
            Role::Module { name, algebra, hom, action } => {
                let loc = format!("module {}", name);
                let (_, ahoms) = lincat_of(algebra, &loc)?;
                let mh = cx.homs(hom, &loc)?;
                let dims = XFam::from_fn(n, |x, y| mh[x * n + y].as_ref().map(|s| file.spaces[s]).unwrap_or(0));
                let mut act = Vec::with_capacity(n * n * n);
                for x in 0..n {
                    for y in 0..n {
                        for z in 0..n {
                            act.push(cx.tensor(
                                lookup(action, &objs, &[x, y, z]),
                                &[mh[x * n + y].as_ref(), ahoms[y * n + z].as_ref()],
                                &[mh[x * n + z].as_ref()],
                                &loc,
                            )?);
                        }
                    }
                }
                out.modules.push((name.clone(), algebra.clone(), RightModule { dims, act }));
            }
            Role::Extension { name, base, algebra, inclusion } => {
                let loc = format!("extension {}", name);
                let (a, ahoms) = lincat_of(algebra, &loc)?;
                let (b, bhoms) = lincat_of(base, &loc)?;
                let mut algs = Vec::with_capacity(n);
                let mut incl = Vec::with_capacity(n);
                for x in 0..n {
                    algs.push(
                        Algebra::new(b.dim(x, x), b.mult(x, x, x).clone(), b.unit(x).clone()).map_err(|e| invalid(&loc, e.to_string()))?,
                    );
                    incl.push(cx.tensor(
                        lookup(inclusion, &objs, &[x]),
                        &[bhoms[x * n + x].as_ref()],
                        &[ahoms[x * n + x].as_ref()],
                        &loc,
                    )?);
                }
                let e = Extension::new(DiagAlgebra { objs: objs.clone(), algs }, a, incl).map_err(|e| invalid(&loc, e.to_string()))?;
                out.extensions.push((name.clone(), e));
            }
            Role::Grading { name, algebra, groupoid, parts } => {
                let loc = format!("grading {}", name);
                let (a, ahoms) = lincat_of(algebra, &loc)?;
                let g = out.groupoid(groupoid).ok_or_else(|| LoadError::Unresolved {
                    kind: "groupoid",
                    name: groupoid.clone(),
                    location: loc.clone(),
                })?;
                for l in parts.keys() {
                    if !g.labels.contains(l) {
                        return Err(LoadError::Unresolved { kind: "arrow", name: l.clone(), location: loc.clone() });
                    }
                }
                let mut ps = Vec::with_capacity(n * n);
                for x in 0..n {
                    for y in 0..n {
                        let mut comp = Vec::new();
                        for s in g.hom(x, y) {
                            let m = match parts.get(&g.labels[s]) {
                                None => Mat::zeros(field, a.dim(x, y), 0),
                                Some(t) => {
                                    let tl = format!("{} (tensor {})", loc, t);
                                    let ten = file.tensors.get(t).ok_or_else(|| LoadError::Unresolved {
                                        kind: "tensor",
                                        name: t.clone(),
                                        location: loc.clone(),
                                    })?;
                                    if ten.from.len() != 1 {
                                        return Err(invalid(&tl, "a grading part maps one degree space into a hom space"));
                                    }
                                    cx.tensor(Some(t), &[Some(&ten.from[0])], &[ahoms[x * n + y].as_ref()], &loc)?
                                }
                            };
                            comp.push(m);
                        }
                        ps.push(comp);
                    }
                }
                out.gradings.push(GradedAlgebra {
                    name: name.clone(),
                    algebra: algebra.clone(),
                    groupoid: groupoid.clone(),
                    grading: Grading { parts: ps },
                });
            }
            _ => {}
        }
    }
    Ok(out)
}

/// Reads and resolves a file, optionally reinterpreting its entries over another field.
pub fn load(path: &Path, field: Option<&FieldSpec>) -> Result<Loaded, LoadError> {
    let mut file = read(path)?;
    if let Some(f) = field {
        file.field = f.clone();
    }
    resolve(&file)
}

/// Writes matrices back into a file: builder used by fixtures and generators.
pub struct Builder {
    pub file: StructureFile,
}

fn entry_parts(field: Field, v: &Scalar) -> (i64, Option<i64>) {
    let (num, den) = v.parts();
    let num: i64 = num.parse().expect("fixture entries fit in i64");
    match field {
        Field::Rational => (num, Some(den.parse().expect("fixture entries fit in i64"))),
        _ => (num, None),
    }
}

impl Builder {
    pub fn new(field: Field, objects: &[&str]) -> Builder {
        let spec = match field {
            Field::Rational => FieldSpec::Named("Q".into()),
            Field::Prime(p) => FieldSpec::Prime { p },
        };
        Builder {
            file: StructureFile {
                format: FORMAT_VERSION,
                field: spec,
                objects: objects.iter().map(|s| s.to_string()).collect(),
                spaces: BTreeMap::new(),
                tensors: BTreeMap::new(),
                roles: vec![],
            },
        }
    }

    fn label(&self, i: usize) -> &str {
        &self.file.objects[i]
    }

    fn key(&self, ix: &[usize]) -> String {
        ix.iter().map(|&i| self.label(i).to_string()).collect::<Vec<_>>().join(" ")
    }

    fn keyname(&self, prefix: &str, ix: &[usize]) -> String {
        format!("{}[{}]", prefix, ix.iter().map(|&i| self.label(i).to_string()).collect::<Vec<_>>().join(","))
    }

    /// Stores a matrix as a tensor; zero matrices are omitted.
    pub fn tensor(&mut self, name: &str, from: Vec<String>, to: Vec<String>, m: &Mat) -> Option<String> {
        let f = m.field();
        let dims = |v: &[String]| v.iter().map(|s| self.file.spaces[s]).collect::<Vec<_>>();
        let (fd, td) = (dims(&from), dims(&to));
        let mut entries = vec![];
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let v = m.get(r, c);
                if v.is_zero() {
                    continue;
                }
                let mut e: Vec<i64> = split(c, &fd).into_iter().chain(split(r, &td)).map(|i| i as i64).collect();
                let (num, den) = entry_parts(f, v);
                e.push(num);
                if let Some(d) = den {
                    e.push(d);
                }
                entries.push(e);
            }
        }
        if entries.is_empty() {
            return None;
        }
        self.file.tensors.insert(name.into(), Tensor { from, to, entries });
        Some(name.into())
    }

    fn homs(&mut self, prefix: &str, dims: &XFam) -> BTreeMap<String, String> {
        let n = dims.n();
        let mut hom = BTreeMap::new();
        for x in 0..n {
            for y in 0..n {
                if dims.dim(x, y) > 0 {
                    let s = self.keyname(prefix, &[x, y]);
                    self.file.spaces.insert(s.clone(), dims.dim(x, y));
                    hom.insert(self.key(&[x, y]), s);
                }
            }
        }
        hom
    }

    fn space_of(&self, hom: &BTreeMap<String, String>, x: usize, y: usize) -> Vec<String> {
        hom.get(&self.key(&[x, y])).cloned().into_iter().collect()
    }

    pub fn lincat(&mut self, name: &str, a: &LinCat) -> BTreeMap<String, String> {
        let n = a.n();
        let hom = self.homs(name, a.dims());
        let mut mult = BTreeMap::new();
        let mut unit = BTreeMap::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let from = [self.space_of(&hom, x, y), self.space_of(&hom, y, z)].concat();
                    let to = self.space_of(&hom, x, z);
                    let tn = self.keyname(&format!("{}.mult", name), &[x, y, z]);
                    if let Some(t) = self.tensor(&tn, from, to, a.mult(x, y, z)) {
                        mult.insert(self.key(&[x, y, z]), t);
                    }
                }
            }
            let tn = self.keyname(&format!("{}.unit", name), &[x]);
            let to = self.space_of(&hom, x, x);
            if let Some(t) = self.tensor(&tn, vec![], to, a.unit(x)) {
                unit.insert(self.key(&[x]), t);
            }
        }
        self.file.roles.push(Role::Lincat { name: name.into(), hom: hom.clone(), mult, unit });
        hom
    }

    pub fn hopf(&mut self, name: &str, h: &HopfKind) -> BTreeMap<String, String> {
        let s = h.semi();
        let alg = format!("{}.alg", name);
        let hom = self.lincat(&alg, &s.alg);
        let n = s.n();
        let (mut comult, mut counit, mut anti) = (BTreeMap::new(), BTreeMap::new(), BTreeMap::new());
        for x in 0..n {
            for y in 0..n {
                let sp = self.space_of(&hom, x, y);
                let k = self.key(&[x, y]);
                let tn = self.keyname(&format!("{}.comult", name), &[x, y]);
                if let Some(t) = self.tensor(&tn, sp.clone(), [sp.clone(), sp.clone()].concat(), s.comult(x, y)) {
                    comult.insert(k.clone(), t);
                }
                let tn = self.keyname(&format!("{}.counit", name), &[x, y]);
                if let Some(t) = self.tensor(&tn, sp.clone(), vec![], s.counit(x, y)) {
                    counit.insert(k.clone(), t);
                }
                if let HopfKind::Full(hc) = h {
                    let tn = self.keyname(&format!("{}.antipode", name), &[x, y]);
                    let to = self.space_of(&hom, y, x);
                    if let Some(t) = self.tensor(&tn, sp, to, hc.antipode(x, y)) {
                        anti.insert(k, t);
                    }
                }
            }
        }
        let antipode = matches!(h, HopfKind::Full(_)).then_some(anti);
        self.file.roles.push(Role::Hopf { name: name.into(), algebra: alg, comult, counit, antipode });
        hom
    }

    /// Writes the coacting category, the algebra and the coaction.
    pub fn comodule(&mut self, name: &str, c: &ComoduleCat) {
        let hk = match c.hopf() {
            Some(h) => HopfKind::Full(h),
            None => HopfKind::Semi(c.h.clone()),
        };
        let hname = format!("{}.H", name);
        let aname = format!("{}.A", name);
        let hh = self.hopf(&hname, &hk);
        let ah = self.lincat(&aname, &c.a);
        let n = c.n();
        let mut coaction = BTreeMap::new();
        for x in 0..n {
            for y in 0..n {
                let sa = self.space_of(&ah, x, y);
                let to = [sa.clone(), self.space_of(&hh, x, y)].concat();
                let tn = self.keyname(&format!("{}.coaction", name), &[x, y]);
                if let Some(t) = self.tensor(&tn, sa, to, c.rho(x, y)) {
                    coaction.insert(self.key(&[x, y]), t);
                }
            }
        }
        self.file.roles.push(Role::Comodule { name: name.into(), algebra: aname, hopf: hname, coaction });
    }

    pub fn extension(&mut self, name: &str, e: &Extension) {
        let aname = format!("{}.A", name);
        let bname = format!("{}.B", name);
        let ah = self.lincat(&aname, &e.a);
        let bh = self.lincat(&bname, &e.b.as_lincat());
        let mut inclusion = BTreeMap::new();
        for x in 0..e.n() {
            let tn = self.keyname(&format!("{}.inclusion", name), &[x]);
            if let Some(t) = self.tensor(&tn, self.space_of(&bh, x, x), self.space_of(&ah, x, x), &e.i[x]) {
                inclusion.insert(self.key(&[x]), t);
            }
        }
        self.file.roles.push(Role::Extension { name: name.into(), base: bname, algebra: aname, inclusion });
    }

    pub fn groupoid(&mut self, name: &str, g: &Groupoid) {
        let arrows = (0..g.size())
            .map(|s| Arrow { label: g.labels[s].clone(), src: self.label(g.src[s]).into(), dst: self.label(g.dst[s]).into() })
            .collect();
        let mut compose = vec![];
        for s in 0..g.size() {
            for t in 0..g.size() {
                if let Some(u) = g.comp(s, t) {
                    compose.push([g.labels[s].clone(), g.labels[t].clone(), g.labels[u].clone()]);
                }
            }
        }
        let inverse = (0..g.size()).map(|s| (g.labels[s].clone(), g.labels[g.inverse[s]].clone())).collect();
        let identity = (0..g.n()).map(|x| (self.label(x).to_string(), g.labels[g.identity[x]].clone())).collect();
        self.file.roles.push(Role::Groupoid { name: name.into(), arrows, compose, inverse, identity });
    }

    /// A grading of an algebra already written under `algebra`.
    pub fn grading(&mut self, name: &str, algebra: &str, groupoid: &str, g: &Groupoid, gr: &Grading) {
        let hom = match self.file.roles.iter().find(|r| r.name() == algebra) {
            Some(Role::Lincat { hom, .. }) => hom.clone(),
            _ => panic!("grading refers to an unwritten algebra"),
        };
        let mut parts = BTreeMap::new();
        for s in 0..g.size() {
            let m = gr.part(g, s);
            if m.cols() == 0 {
                continue;
            }
            let deg = format!("{}.deg[{}]", name, g.labels[s]);
            self.file.spaces.insert(deg.clone(), m.cols());
            let to = self.space_of(&hom, g.src[s], g.dst[s]);
            if let Some(t) = self.tensor(&format!("{}.part[{}]", name, g.labels[s]), vec![deg], to, m) {
                parts.insert(g.labels[s].clone(), t);
            }
        }
        self.file.roles.push(Role::Grading { name: name.into(), algebra: algebra.into(), groupoid: groupoid.into(), parts });
    }

    pub fn finish(self) -> StructureFile {
        self.file
    }
}

fn split(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (k, &d) in dims.iter().enumerate().rev() {
        out[k] = index % d;
        index /= d;
    }
    out
}
