//! One PASS/FAIL line per acceptance criterion; exits nonzero on any failure.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use hopfcat::clusters::{endocluster_of, equivalence_f1g1, functor_h, functor_k, right_mult_check};
use hopfcat::descent::{
    descent_equivalence_report, descent_morphism_check, functor_f, functor_f_map, regular_datum, DiagModule, Extension,
};
use hopfcat::galois::{
    check_translation_map, functor_p, functor_q, galois_check, gamma_from_can, gamma_identities, induced_relhopf, relhopf_morphism_check,
    ComoduleCat,
};
use hopfcat::graded::{build_kg, graded_galois_report, round_trips, strong_grading_check};
use hopfcat::hopfcat::double_dual_compare;
use hopfcat::lincat::{BModule, Side};
use hopfcat::smash::{primed_smash_galois_report, smash_galois_report};
use hopfcat::{Field, Mat};
use hopfcat_cli::fixtures::{by_name, cyclic_group, indiscrete, NAMES};
use hopfcat_cli::format::{resolve, GradedAlgebra, Loaded, StructureFile};
use hopfcat_cli::gen::{gen_crossed_product, gen_perturbed, random_groupoid, Params};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const Q: Field = Field::Rational;

type Outcome = Result<String, String>;
type Criterion<'a> = (usize, Option<Duration>, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn named(name: &str) -> Loaded {
    resolve(&by_name(name, Q).expect("fixture")).expect("fixtures load")
}

fn crossed_params(seed: u64) -> Params {
    let s = seed as usize;
    let base_dim = 1 + (s / 2) % 2;
    let order = if base_dim == 2 { 1 + (s / 4) % 2 } else { 1 + (s / 4) % 3 };
    Params { objects: 1 + s % 2, order, indiscrete: true, base_dim }
}

fn crossed(seed: u64) -> StructureFile {
    gen_crossed_product(&crossed_params(seed), seed).expect("crossed product within bounds")
}

fn valid(c: &ComoduleCat) -> bool {
    c.validate().is_ok() && c.a.validate().is_ok() && c.h.validate().is_ok()
}

/// Fixtures, ten crossed products and ten perturbations, as named comodule categories.
fn comodule_set() -> (Vec<(String, ComoduleCat)>, usize) {
    let mut out = vec![];
    for name in ["trivial", "c2", "gpd2", "bad", "dual-numbers"] {
        out.push((name.to_string(), named(name).comodules[0].1.clone()));
    }
    for seed in 0..10 {
        out.push((format!("crossed-product seed {}", seed), resolve(&crossed(seed)).unwrap().comodules[0].1.clone()));
    }
    let mut invalid = 0;
    for seed in 0..10u64 {
        let base = match seed % 3 {
            0 => by_name("c2", Q).unwrap(),
            1 => by_name("gpd2", Q).unwrap(),
            _ => crossed(seed),
        };
        let target = if seed % 2 == 0 { "" } else { "C.coaction" };
        let file = gen_perturbed(&base, target, seed).unwrap();
        match resolve(&file).ok().and_then(|l| l.comodules.first().map(|(_, c)| c.clone())).filter(valid) {
            Some(c) => out.push((format!("perturbed seed {}", seed), c)),
            None => invalid += 1,
        }
    }
    (out, invalid)
}

fn graded_set() -> Vec<(String, Loaded)> {
    let mut out: Vec<(String, Loaded)> =
        ["trivial", "c2", "gpd2", "bad", "dual-numbers"].iter().map(|n| (n.to_string(), named(n))).collect();
    for seed in 0..20 {
        out.push((format!("crossed-product seed {}", seed), resolve(&crossed(seed)).unwrap()));
    }
    out
}

fn graded_parts(l: &Loaded) -> (&hopfcat::lincat::LinCat, &hopfcat::graded::Groupoid, &GradedAlgebra) {
    let gd = &l.gradings[0];
    (l.lincat(&gd.algebra).unwrap(), l.groupoid(&gd.groupoid).unwrap(), gd)
}

fn criterion1() -> Outcome {
    let mut gs =
        vec![("trivial group".to_string(), cyclic_group(1)), ("C2".into(), cyclic_group(2)), ("pair groupoid".into(), indiscrete(2))];
    for seed in 0..20u64 {
        let p = Params { objects: 1 + (seed % 3) as usize, order: 1 + (seed / 3 % 2) as usize, indiscrete: false, base_dim: 1 };
        gs.push((format!("random seed {}", seed), random_groupoid(&p, seed).map_err(|e| e.to_string())?));
    }
    for (name, g) in &gs {
        ensure(g.n() <= 3 && (0..g.n()).all(|x| (0..g.n()).all(|y| g.hom(x, y).len() <= 2)), || {
            format!("{} exceeds the size bounds", name)
        })?;
        let h = build_kg(Q, g).map_err(|e| e.to_string())?;
        let r = h.base.validate();
        ensure(r.is_ok(), || format!("{}: {:?}", name, r))?;
        let a = h.validate_antipode();
        ensure(a.report.is_ok(), || format!("{}: {:?}", name, a.report))?;
        let d = double_dual_compare(&h);
        ensure(d.is_ok(), || format!("{}: {:?}", name, d))?;
    }
    Ok(format!("{} groupoid algebras", gs.len()))
}

fn criterion2(set: &[(String, ComoduleCat)], invalid: usize) -> Outcome {
    let mut galois = 0;
    for (name, c) in set {
        let v = galois_check(c).map_err(|e| format!("{}: {}", name, e))?;
        ensure(v.agree, || format!("{}: conditions disagree {:?}", name, (v.cond1, v.cond2, v.cond3)))?;
        galois += v.cond1 as usize;
    }
    Ok(format!("{} comodule categories ({} Galois), {} invalid perturbations excluded", set.len(), galois, invalid))
}

fn criterion3(set: &[(String, ComoduleCat)]) -> Outcome {
    let mut n = 0;
    for (name, c) in set {
        let e = c.coinvariants().map_err(|e| e.to_string())?;
        if let Ok(g) = gamma_from_can(c, &e) {
            let r = gamma_identities(c, &e, &g);
            ensure(r.is_ok(), || format!("{}: {:?}", name, r))?;
            let r = check_translation_map(c, &e, &g);
            ensure(r.is_ok(), || format!("{}: {:?}", name, r))?;
            n += 1;
        }
    }
    ensure(n > 0, || "no translation maps".into())?;
    Ok(format!("translation map identities on {} categories", n))
}

/// A random right `B_x`-module isomorphic to `B²`.
fn conjugated_free(e: &Extension, r: &mut ChaCha8Rng) -> DiagModule {
    let free = DiagModule::free(&e.b, Side::Right, 2);
    let mut mods = vec![];
    for m in &free.mods {
        let p = loop {
            let p = Mat::from_fn(Q, m.dim, m.dim, |_, _| Q.int(r.gen_range(-2..=2)));
            if p.is_bijective() {
                break p;
            }
        };
        let pinv = p.inverse().expect("bijective");
        mods.push(BModule { side: Side::Right, dim: m.dim, actions: m.actions.iter().map(|a| p.mul(a).mul(&pinv)).collect() });
    }
    DiagModule { mods }
}

/// The `B`-linear map `B² -> N` sending generator `i` to `gens[i]`.
fn from_generators(n: &BModule, gens: &[Mat]) -> Mat {
    let d = n.actions.len();
    let mut cols = Mat::zeros(Q, n.dim, gens.len() * d);
    for (i, m) in gens.iter().enumerate() {
        for j in 0..d {
            let v = n.actions[j].mul(m);
            for row in 0..n.dim {
                cols.set(row, i * d + j, v.get(row, 0).clone());
            }
        }
    }
    cols
}

fn criterion4(set: &[(String, ComoduleCat)]) -> Outcome {
    let mut r = ChaCha8Rng::seed_from_u64(4);
    let mut count = 0;
    for (name, c) in set {
        let e = c.coinvariants().map_err(|e| e.to_string())?;
        let Ok(g) = gamma_from_can(c, &e) else { continue };
        let rand_mod = conjugated_free(&e, &mut r);
        let probes = [DiagModule::regular(&e.b, Side::Right), DiagModule::free(&e.b, Side::Right, 2), rand_mod.clone()];
        for (k, nmod) in probes.iter().enumerate() {
            ensure(nmod.validate(&e.b).is_ok(), || format!("{}: probe {} is not a module", name, k))?;
            let fd = functor_f(&e, nmod).map_err(|e| e.to_string())?.datum;
            let p = functor_p(c, &fd);
            ensure(functor_q(c, &e, &p, &g).map_err(|e| e.to_string())? == fd, || format!("{}: Q after P on probe {}", name, k))?;
            let m = induced_relhopf(c, &e, nmod).map_err(|e| e.to_string())?;
            let pq = functor_p(c, &functor_q(c, &e, &m, &g).map_err(|e| e.to_string())?);
            ensure(pq == m, || format!("{}: P after Q on probe {}", name, k))?;
        }
        let free = DiagModule::free(&e.b, Side::Right, 2);
        let (src, dst) = (functor_f(&e, &free).map_err(|e| e.to_string())?, functor_f(&e, &rand_mod).map_err(|e| e.to_string())?);
        for _ in 0..3 {
            let maps: Vec<Mat> = rand_mod
                .mods
                .iter()
                .map(|n| {
                    let gens: Vec<Mat> = (0..2).map(|_| Mat::from_fn(Q, n.dim, 1, |_, _| Q.int(r.gen_range(-3..=3)))).collect();
                    from_generators(n, &gens)
                })
                .collect();
            let fg = functor_f_map(&e, &src, &dst, &maps);
            let rep = descent_morphism_check(&e, &src.datum, &dst.datum, &fg);
            ensure(rep.is_ok(), || format!("{}: {:?}", name, rep))?;
            let rep = relhopf_morphism_check(c, &functor_p(c, &src.datum), &functor_p(c, &dst.datum), &fg);
            ensure(rep.is_ok(), || format!("{}: {:?}", name, rep))?;
        }
        count += 1;
    }
    ensure(count > 0, || "no Galois fixtures".into())?;
    Ok(format!("{} Galois categories, 3 probes and 3 random maps each", count))
}

fn criterion5(set: &[(String, ComoduleCat)]) -> Outcome {
    let mut exts: Vec<(String, Extension)> = set.iter().map(|(n, c)| (n.clone(), c.coinvariants().unwrap())).collect();
    exts.extend(named("degenerate").extensions);
    let mut flat = 0;
    let mut degenerate = false;
    for (name, e) in &exts {
        let diag = [DiagModule::regular(&e.b, Side::Right), DiagModule::free(&e.b, Side::Right, 2)];
        let data = [regular_datum(e).map_err(|e| e.to_string())?];
        if e.first_non_flat().is_some() {
            continue;
        }
        let r = descent_equivalence_report(e, &diag, &data).map_err(|e| e.to_string())?;
        ensure(r.agree && r.report.is_ok(), || format!("{}: {:?}", name, r.report))?;
        if r.faithfully_flat {
            ensure(r.probes_bijective, || format!("{}: faithfully flat but {:?}", name, r.witnesses))?;
            flat += 1;
        } else if name == "E" {
            ensure(!r.witnesses.is_empty(), || "degenerate fixture without witness".into())?;
            degenerate = true;
        }
    }
    ensure(degenerate, || "degenerate fixture not reached".into())?;
    Ok(format!("{} faithfully flat extensions bijective; degenerate witness produced", flat))
}

fn criterion6(set: &[(String, ComoduleCat)]) -> Outcome {
    let mut count = 0;
    for (name, c) in set {
        let e = c.coinvariants().map_err(|e| e.to_string())?;
        let endo = endocluster_of(&e).map_err(|e| e.to_string())?;
        let diag = [DiagModule::regular(&e.b, Side::Right)];
        let eq = equivalence_f1g1(&e, &diag, &[endo.canonical_module(e.a.dims())]).map_err(|e| e.to_string())?;
        if !eq.locally_finite {
            continue;
        }
        let data = [
            regular_datum(&e).map_err(|e| e.to_string())?,
            functor_f(&e, &DiagModule::free(&e.b, Side::Right, 2)).map_err(|e| e.to_string())?.datum,
        ];
        for d in &data {
            let h = functor_h(&e, &endo, d);
            ensure(h.validate(&endo.cluster).is_ok(), || format!("{}: H(M) is not a cluster module", name))?;
            let rm = right_mult_check(&e, &endo, &h, &d.m).map_err(|e| e.to_string())?;
            ensure(rm.is_ok(), || format!("{}: {:?}", name, rm))?;
            let back = functor_k(&e, &endo, &h).map_err(|e| e.to_string())?;
            ensure(&back == d, || format!("{}: K after H", name))?;
            ensure(functor_h(&e, &endo, &back) == h, || format!("{}: H after K", name))?;
        }
        count += 1;
    }
    ensure(count > 0, || "no locally finite fixtures".into())?;
    Ok(format!("{} locally finite extensions", count))
}

fn criterion7(set: &[(String, ComoduleCat)]) -> Outcome {
    let mut galois = 0;
    for (name, c) in set {
        let t = smash_galois_report(c).map_err(|e| e.to_string())?;
        ensure(t.report.is_ok(), || format!("{}: {:?}", name, t.report))?;
        let t2 = primed_smash_galois_report(c).map_err(|e| e.to_string())?;
        ensure(t2.report.is_ok(), || format!("{}: {:?}", name, t2.report))?;
        galois += t.conditions[0] as usize;
    }
    Ok(format!("{} categories, inverse round trips on {} Galois ones", set.len(), galois))
}

fn criterion8(set: &[(String, ComoduleCat)]) -> Outcome {
    let mut compared = 0;
    for (name, c) in set {
        let t = smash_galois_report(c).map_err(|e| e.to_string())?;
        let t2 = primed_smash_galois_report(c).map_err(|e| e.to_string())?;
        ensure(t.agree, || format!("{}: unprimed conditions {:?} {:?}", name, t.conditions, t.twisted))?;
        ensure(t2.agree, || format!("{}: primed conditions {:?} {:?}", name, t2.conditions, t2.twisted))?;
        if c.hopf().is_some_and(|h| h.validate_antipode().all_invertible()) {
            ensure(t.conditions[0] == t2.conditions[0], || format!("{}: verdicts differ", name))?;
            compared += 1;
        }
    }
    Ok(format!("{} categories agree; verdicts compared on {}", set.len(), compared))
}

fn criterion9(set: &[(String, Loaded)]) -> Outcome {
    let mut bad_probe = false;
    for (name, l) in set.iter().filter(|(n, _)| n != "trivial" && n != "dual-numbers") {
        let (a, g, gd) = graded_parts(l);
        let s = strong_grading_check(a, g, &gd.grading);
        let r = graded_galois_report(a, g, &gd.grading, &[]).map_err(|e| e.to_string())?;
        ensure(r.agree && s.strong == s.cond2 && s.cond2 == r.galois, || {
            format!("{}: strong {} cond2 {} galois {}", name, s.strong, s.cond2, r.galois)
        })?;
        if name.starts_with("crossed") {
            ensure(r.strong.strong, || format!("{}: crossed product not strongly graded", name))?;
        }
        if name == "bad" {
            ensure(!r.strong.strong, || "bad fixture is strongly graded".into())?;
            bad_probe = r.failing_probe.is_some();
        }
    }
    ensure(bad_probe, || "no failing probe on the bad fixture".into())?;
    Ok(format!("{} graded categories; bad fixture has a failing probe", set.len() - 2))
}

fn criterion10(set: &[(String, Loaded)]) -> Outcome {
    for (name, l) in set {
        let (a, g, gd) = graded_parts(l);
        let r = round_trips(a, g, &gd.grading).map_err(|e| e.to_string())?;
        ensure(r.is_ok(), || format!("{}: {:?}", name, r))?;
        let t = graded_galois_report(a, g, &gd.grading, &[]).map_err(|e| e.to_string())?;
        ensure(t.neutral_is_coinvariant, || format!("{}: neutral degree differs from coinvariants", name))?;
    }
    Ok(format!("{} graded categories", set.len()))
}

fn criterion11() -> Outcome {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    let run = || Command::new(env!("CARGO_BIN_EXE_hopfcat")).args(["check", "all", dir, "--json"]).output().map_err(|e| e.to_string());
    let (a, b) = (run()?, run()?);
    ensure(a.status.code() == Some(1) || a.status.code() == Some(0), || {
        format!("unexpected exit {:?}: {}", a.status, String::from_utf8_lossy(&a.stderr))
    })?;
    ensure(!a.stdout.is_empty() && a.stdout == b.stdout, || "reports differ between runs".into())?;
    ensure(NAMES.iter().all(|n| String::from_utf8_lossy(&a.stdout).contains(&format!("\"{}.json\"", n))), || {
        "missing fixture reports".into()
    })?;
    Ok(format!("{} bytes identical across two runs", a.stdout.len()))
}

fn main() -> ExitCode {
    let (set, invalid) = comodule_set();
    let graded = graded_set();
    let criteria: Vec<Criterion> = vec![
        (1, Some(Duration::from_secs(5)), Box::new(criterion1)),
        (2, Some(Duration::from_secs(10)), Box::new(|| criterion2(&set, invalid))),
        (3, None, Box::new(|| criterion3(&set))),
        (4, None, Box::new(|| criterion4(&set))),
        (5, None, Box::new(|| criterion5(&set))),
        (6, None, Box::new(|| criterion6(&set))),
        (7, Some(Duration::from_secs(10)), Box::new(|| criterion7(&set))),
        (8, None, Box::new(|| criterion8(&set))),
        (9, Some(Duration::from_secs(10)), Box::new(|| criterion9(&graded))),
        (10, None, Box::new(|| criterion10(&graded))),
        (11, None, Box::new(criterion11)),
    ];
    let mut failed = 0;
    for (n, limit, f) in criteria {
        let start = Instant::now();
        let mut out = f();
        let took = start.elapsed();
        if let (Ok(_), Some(l)) = (&out, limit) {
            if took > l {
                out = Err(format!("took {:.2?}, limit {:?}", took, l));
            }
        }
        match out {
            Ok(msg) => println!("criterion {}: PASS ({:.2?}) {}", n, took, msg),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL ({:.2?}) {}", n, took, msg);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
