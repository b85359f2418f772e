//! The named fixture structures shipped with the tool.

use hopfcat::descent::Extension;
use hopfcat::galois::ComoduleCat;
use hopfcat::graded::{build_kg, cyclic_table, grading_to_coaction, Grading, Groupoid};
use hopfcat::lincat::{Algebra, DiagAlgebra, LinCat, ObjSet, XFam};
use hopfcat::{Field, Mat};

use crate::format::{Builder, StructureFile};

pub const NAMES: [&str; 6] = ["trivial", "c2", "gpd2", "bad", "degenerate", "dual-numbers"];

fn labels(n: usize) -> Vec<&'static str> {
    ["x", "y", "z", "w"][..n].to_vec()
}

/// `Z/m` on one object with arrows `e, g, g2, ...`.
pub fn cyclic_group(m: usize) -> Groupoid {
    let mut g = Groupoid::assemble(&[0], &[cyclic_table(m)]).expect("cyclic groups are groupoids");
    g.labels = (0..m)
        .map(|i| match i {
            0 => "e".to_string(),
            1 => "g".to_string(),
            _ => format!("g{}", i),
        })
        .collect();
    g.objs = ObjSet::new(vec!["x".into()]).expect("one label");
    g
}

/// The indiscrete groupoid on `n` objects with arrows `s_xy`.
pub fn indiscrete(n: usize) -> Groupoid {
    let mut g = Groupoid::cyclic_indiscrete(n, 1).expect("indiscrete groupoids are groupoids");
    let l = labels(n);
    g.labels = (0..g.size()).map(|s| format!("s_{}{}", l[g.src[s]], l[g.dst[s]])).collect();
    g.objs = ObjSet::new(l.iter().map(|s| s.to_string()).collect()).expect("distinct labels");
    g
}

/// `A` graded by itself: each arrow spans its own degree.
pub fn self_grading(g: &Groupoid, a: &LinCat) -> Grading {
    let f = a.field();
    let n = g.n();
    let parts = (0..n * n)
        .map(|i| {
            let d = a.dim(i / n, i % n);
            (0..d).map(|p| Mat::unit(f, d, p)).collect()
        })
        .collect();
    Grading { parts }
}

/// A groupoid algebra graded by itself, with its regular coaction.
pub fn graded_file(g: &Groupoid, a: &LinCat, gr: &Grading) -> StructureFile {
    let c = grading_to_coaction(a, g, gr).expect("fixture gradings are multiplicative");
    let objs: Vec<&str> = g.objs.labels().iter().map(String::as_str).collect();
    let mut b = Builder::new(a.field(), &objs);
    b.groupoid("G", g);
    b.comodule("C", &c);
    b.grading("grading", "C.A", "G", g, gr);
    b.finish()
}

pub fn groupoid_kg_file(g: &Groupoid, f: Field) -> StructureFile {
    let kg = build_kg(f, g).expect("valid groupoid");
    let a = kg.base.alg.clone();
    graded_file(g, &a, &self_grading(g, &a))
}

/// One object, the trivial group, `A = k`.
pub fn trivial(f: Field) -> StructureFile {
    groupoid_kg_file(&cyclic_group(1), f)
}

/// `kC2` graded by itself.
pub fn c2(f: Field) -> StructureFile {
    groupoid_kg_file(&cyclic_group(2), f)
}

/// `kG` for the indiscrete groupoid on two objects.
pub fn gpd2(f: Field) -> StructureFile {
    groupoid_kg_file(&indiscrete(2), f)
}

fn single(f: Field, alg: &Algebra) -> LinCat {
    LinCat::new(
        f,
        ObjSet::new(vec!["x".into()]).expect("label"),
        XFam::from_fn(1, |_, _| alg.dim),
        vec![alg.mult.clone()],
        vec![alg.unit.clone()],
    )
    .expect("one-object category")
}

/// `k` in the neutral degree of `C2`: graded but not strongly graded.
pub fn bad(f: Field) -> StructureFile {
    let g = cyclic_group(2);
    let a = single(f, &Algebra::scalars(f));
    let gr = Grading::trivial(&g, f, a.dims());
    graded_file(&g, &a, &gr)
}

/// `k[t]/(t²)` graded by `C2` with `t` odd.
pub fn dual_numbers(f: Field) -> StructureFile {
    let g = cyclic_group(2);
    let alg = Algebra::new(2, Mat::from_i64(f, 2, 4, &[1, 0, 0, 0, 0, 1, 1, 0]), Mat::from_i64(f, 2, 1, &[1, 0])).expect("dual numbers");
    let a = single(f, &alg);
    let gr = Grading { parts: vec![vec![Mat::unit(f, 2, 0), Mat::unit(f, 2, 1)]] };
    graded_file(&g, &a, &gr)
}

/// `B = k` over the zero category: `A_xx = 0`.
pub fn degenerate(f: Field) -> StructureFile {
    let objs = ObjSet::new(vec!["x".into()]).expect("label");
    let a = LinCat::new(f, objs.clone(), XFam::from_fn(1, |_, _| 0), vec![Mat::zeros(f, 0, 0)], vec![Mat::zeros(f, 0, 1)])
        .expect("zero category");
    let e = Extension::new(DiagAlgebra { objs, algs: vec![Algebra::scalars(f)] }, a, vec![Mat::zeros(f, 0, 1)]).expect("zero extension");
    let mut b = Builder::new(f, &["x"]);
    b.extension("E", &e);
    b.finish()
}

pub fn by_name(name: &str, f: Field) -> Option<StructureFile> {
    Some(match name {
        "trivial" => trivial(f),
        "c2" => c2(f),
        "gpd2" => gpd2(f),
        "bad" => bad(f),
        "degenerate" => degenerate(f),
        "dual-numbers" => dual_numbers(f),
        _ => return None,
    })
}

/// The comodule category of a fixture, for callers that skip the file layer.
pub fn comodule(file: &StructureFile) -> Option<ComoduleCat> {
    crate::format::resolve(file).ok()?.comodules.into_iter().next().map(|(_, c)| c)
}
