//! Check suites run over a loaded structure file.

use std::collections::BTreeMap;
use std::time::Instant;

use hopfcat::clusters::{endocluster_of, equivalence_f1g1, functor_h, functor_k, right_mult_check};
use hopfcat::descent::{descent_equivalence_report, functor_f, regular_datum, DiagModule, Extension};
use hopfcat::galois::{
    antipode_comparison, check_translation_map, functor_p, functor_q, galois_check, gamma_from_can, gamma_identities, induced_relhopf,
    probe_module, relhopf_adjunction, ComoduleCat, RelHopfModule,
};
use hopfcat::graded::{graded_galois_report, round_trips, strong_grading_check, Groupoid};
use hopfcat::hopfcat::double_dual_compare;
use hopfcat::lincat::{ObjSet, Side};
use hopfcat::smash::{primed_smash_galois_report, smash_galois_report};
use hopfcat::{Error, Report};
use serde::Serialize;
use serde_json::{json, Value};

use crate::format::{GradedAlgebra, HopfKind, Loaded};

pub const SUITES: [&str; 6] = ["validate", "galois", "descent", "duality", "graded", "all"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub identity: String,
    pub at: Vec<usize>,
    pub labels: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: String,
    pub subject: String,
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
    /// Wall time; kept out of JSON so reports are reproducible.
    #[serde(skip)]
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub input: String,
    pub suite: String,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn find(&self, subject: &str, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.subject == subject && c.name == name)
    }
}

/// Only the first few witnesses of each check are kept.
const MAX_WITNESSES: usize = 8;

struct Run<'a> {
    suite: &'static str,
    objs: &'a ObjSet,
    checks: Vec<Check>,
}

impl<'a> Run<'a> {
    fn check(&mut self, subject: &str, name: &str, f: impl FnOnce(&mut Check) -> Result<(), Error>) {
        let start = Instant::now();
        let mut c = Check {
            suite: self.suite.into(),
            subject: subject.into(),
            name: name.into(),
            status: Status::Pass,
            reason: None,
            values: BTreeMap::new(),
            witnesses: vec![],
            millis: 0,
        };
        if let Err(e) = f(&mut c) {
            c.status = Status::Fail;
            c.reason = Some(e.to_string());
        }
        c.witnesses.truncate(MAX_WITNESSES);
        c.millis = start.elapsed().as_millis();
        self.checks.push(c);
    }

    fn skip(&mut self, subject: &str, name: &str, reason: &str) {
        self.check(subject, name, |c| {
            c.status = Status::Skipped;
            c.reason = Some(reason.into());
            Ok(())
        });
    }

    fn report(&mut self, subject: &str, name: &str, r: &Report) {
        let objs = self.objs;
        self.check(subject, name, |c| {
            report_into(objs, c, r);
            Ok(())
        });
    }
}

fn witness(objs: &ObjSet, identity: &str, at: &[usize]) -> Witness {
    let labels = at.iter().map(|&i| if i < objs.len() { objs.label(i).to_string() } else { i.to_string() }).collect();
    Witness { identity: identity.into(), at: at.to_vec(), labels, witness: vec![] }
}

fn fail(c: &mut Check) {
    c.status = Status::Fail;
}

/// Fails the check with every violation of `r` as a witness.
fn report_into(objs: &ObjSet, c: &mut Check, r: &Report) {
    if !r.is_ok() {
        fail(c);
    }
    for v in &r.violations {
        let mut w = witness(objs, &v.identity, &v.at);
        w.witness = v.witness.clone();
        c.witnesses.push(w);
    }
}

fn arrow_witness(g: &Groupoid, identity: &str, at: &[usize]) -> Witness {
    Witness { identity: identity.into(), at: at.to_vec(), labels: at.iter().map(|&s| g.labels[s].clone()).collect(), witness: vec![] }
}

fn set(c: &mut Check, key: &str, v: impl Into<Value>) {
    c.values.insert(key.into(), v.into());
}

fn validate(run: &mut Run, l: &Loaded) {
    let objs = run.objs;
    for (name, a) in &l.lincats {
        let r = a.validate();
        run.report(name, "linear category axioms", &r);
    }
    for (name, h) in &l.hopfs {
        let r = h.semi().validate();
        run.report(name, "semi-Hopf axioms", &r);
        if let HopfKind::Full(h) = h {
            let a = h.validate_antipode();
            run.check(name, "antipode axioms", |c| {
                set(c, "invertible", a.all_invertible());
                report_into(objs, c, &a.report);
                Ok(())
            });
        }
    }
    for (name, cm) in &l.comodules {
        let r = cm.validate();
        run.report(name, "comodule axioms", &r);
    }
    for (name, alg, m) in &l.modules {
        let a = l.lincat(alg).expect("resolved modules have algebras");
        let r = m.validate(a);
        run.report(name, "module axioms", &r);
    }
    for (name, e) in &l.extensions {
        let r = e.validate();
        run.report(name, "extension axioms", &r);
    }
    for (name, g) in &l.groupoids {
        run.check(name, "groupoid axioms", |c| {
            set(c, "arrows", g.size());
            Ok(())
        });
    }
    for gd in &l.gradings {
        let (a, g) = graded_parts(l, gd);
        let r = gd.grading.validate_multiplicative(g, a);
        run.check(&gd.name, "graded category axioms", |c| {
            if !r.is_ok() {
                fail(c);
            }
            for v in &r.violations {
                c.witnesses.push(arrow_witness(g, &v.identity, &v.at));
            }
            Ok(())
        });
    }
}

fn graded_parts<'l>(l: &'l Loaded, gd: &GradedAlgebra) -> (&'l hopfcat::lincat::LinCat, &'l Groupoid) {
    (l.lincat(&gd.algebra).expect("resolved gradings have algebras"), l.groupoid(&gd.groupoid).expect("resolved gradings have groupoids"))
}

fn valid_comodules(l: &Loaded) -> impl Iterator<Item = (&String, &ComoduleCat, bool)> {
    l.comodules.iter().map(|(n, c)| (n, c, c.validate().is_ok() && c.a.validate().is_ok() && c.h.validate().is_ok()))
}

fn galois(run: &mut Run, l: &Loaded) {
    for (name, cm, ok) in valid_comodules(l) {
        if !ok {
            for check in ["Galois condition", "translation map identities", "smash characterization", "primed smash characterization"] {
                run.skip(name, check, "the comodule structure is invalid");
            }
            continue;
        }
        let objs = run.objs;
        let mut galois = false;
        run.check(name, "Galois condition", |c| {
            let v = galois_check(cm)?;
            set(c, "cond1", v.cond1);
            set(c, "cond2", v.cond2);
            set(c, "cond3", v.cond3);
            set(c, "agree", v.agree);
            galois = v.cond1;
            if !v.cond1 || !v.agree {
                fail(c);
            }
            for &(z, x, y) in &v.failures {
                c.witnesses.push(witness(objs, "canonical map bijective", &[z, x, y]));
            }
            Ok(())
        });
        if galois {
            run.check(name, "translation map identities", |c| {
                let e = cm.coinvariants()?;
                let g = gamma_from_can(cm, &e)?;
                report_into(objs, c, &gamma_identities(cm, &e, &g));
                report_into(objs, c, &check_translation_map(cm, &e, &g));
                Ok(())
            });
        } else {
            run.skip(name, "translation map identities", "not Galois");
        }
        run.check(name, "probe adjunction", |c| {
            let diag = [DiagModule::regular(&cm.coinvariants()?.b, Side::Right)];
            let mut probes = vec![RelHopfModule::regular(cm)];
            probes.extend((0..cm.n()).map(|z| probe_module(cm, z)));
            let r = relhopf_adjunction(cm, &diag, &probes)?;
            let counits = r.counits.iter().all(|m| m.all_bijective());
            set(c, "counits bijective", counits);
            set(c, "canonical maps bijective", r.can_bijective);
            report_into(objs, c, &r.probe_identities);
            if counits != r.can_bijective {
                fail(c);
            }
            Ok(())
        });
        if cm.hopf().is_some() {
            run.check(name, "antipode comparison", |c| {
                let r = antipode_comparison(cm)?;
                set(c, "galois", r.galois.cond1);
                set(c, "primed galois", r.galois_prime.cond1);
                set(c, "agree", r.agree);
                report_into(objs, c, &r.report);
                if !r.agree {
                    fail(c);
                }
                Ok(())
            });
        } else {
            run.skip(name, "antipode comparison", "no antipode");
        }
        let mut verdicts = [None, None];
        for (k, (check, f)) in [
            ("smash characterization", smash_galois_report as fn(&ComoduleCat) -> Result<_, Error>),
            ("primed smash characterization", primed_smash_galois_report),
        ]
        .into_iter()
        .enumerate()
        {
            run.check(name, check, |c| {
                let r = f(cm)?;
                set(c, "conditions", r.conditions.to_vec());
                set(c, "locally finite", r.locally_finite);
                if let Some(t) = r.twisted {
                    set(c, "twisted", t.to_vec());
                }
                set(c, "agree", r.agree);
                report_into(objs, c, &r.report);
                if !r.agree {
                    fail(c);
                }
                verdicts[k] = Some(r.conditions[0]);
                Ok(())
            });
        }
        if let Some(h) = cm.hopf() {
            if h.validate_antipode().all_invertible() {
                run.check(name, "primed and unprimed verdicts", |c| {
                    set(c, "verdicts", json!(verdicts));
                    if verdicts[0] != verdicts[1] {
                        fail(c);
                    }
                    Ok(())
                });
            }
        }
    }
}

/// Extensions to test for descent: the declared ones and the coinvariants of every valid comodule.
fn extensions(l: &Loaded) -> Vec<(String, Extension, Option<&ComoduleCat>)> {
    let mut out: Vec<_> = l.extensions.iter().map(|(n, e)| (n.clone(), e.clone(), None)).collect();
    for (name, cm, ok) in valid_comodules(l) {
        if ok {
            if let Ok(e) = cm.coinvariants() {
                out.push((format!("{} (coinvariants)", name), e, Some(cm)));
            }
        }
    }
    out
}

fn descent(run: &mut Run, l: &Loaded) {
    let objs = run.objs;
    for (name, e, cm) in extensions(l) {
        if !e.validate().is_ok() {
            run.skip(&name, "descent equivalence", "the extension is invalid");
            continue;
        }
        let flat = e.first_non_flat().is_none();
        let ff = e.diagonal_faithfully_flat();
        let diag = [DiagModule::regular(&e.b, Side::Right), DiagModule::free(&e.b, Side::Right, 2)];
        if flat {
            run.check(&name, "descent equivalence", |c| {
                let data = [regular_datum(&e)?];
                let r = descent_equivalence_report(&e, &diag, &data)?;
                set(c, "faithfully flat", r.faithfully_flat);
                set(c, "probes bijective", r.probes_bijective);
                set(c, "agree", r.agree);
                report_into(objs, c, &r.report);
                if !r.probes_bijective || !r.agree {
                    fail(c);
                }
                for (kind, probe, at) in &r.witnesses {
                    let mut w = witness(objs, &format!("{} bijective", kind), at);
                    w.witness = vec![*probe];
                    c.witnesses.push(w);
                }
                Ok(())
            });
        } else {
            let (x, y) = e.first_non_flat().expect("not flat");
            run.check(&name, "descent equivalence", |c| {
                c.status = Status::Skipped;
                c.reason = Some(format!("A_{}{} is not flat over B", objs.label(x), objs.label(y)));
                c.witnesses.push(witness(objs, "flat", &[x, y]));
                Ok(())
            });
        }
        run.check(&name, "cluster modules", |c| {
            set(c, "faithfully flat", ff);
            let endo = endocluster_of(&e)?;
            let reg = regular_datum(&e)?;
            let ind = functor_f(&e, &diag[1])?.datum;
            for (k, d) in [reg, ind].iter().enumerate() {
                let h = functor_h(&e, &endo, d);
                report_into(objs, c, &h.validate(&endo.cluster));
                report_into(objs, c, &right_mult_check(&e, &endo, &h, &d.m)?);
                let back = functor_k(&e, &endo, &h)?;
                if &back != d || functor_h(&e, &endo, &back) != h {
                    fail(c);
                    let mut w = witness(objs, "cluster module round trip", &[]);
                    w.witness = vec![k];
                    c.witnesses.push(w);
                }
            }
            Ok(())
        });
        run.check(&name, "cluster equivalence", |c| {
            let endo = endocluster_of(&e)?;
            let modules = [endo.canonical_module(e.a.dims())];
            let r = equivalence_f1g1(&e, &diag, &modules)?;
            set(c, "locally finite", r.locally_finite);
            set(c, "locally faithfully projective", r.locally_faithfully_projective);
            set(c, "bijective", r.all_bijective());
            report_into(objs, c, &r.report);
            Ok(())
        });
        let Some(cm) = cm else { continue };
        match gamma_from_can(cm, &e) {
            Err(_) => run.skip(&name, "descent data and relative Hopf modules", "not Galois"),
            Ok(g) => run.check(&name, "descent data and relative Hopf modules", |c| {
                for (k, nmod) in diag.iter().enumerate() {
                    let fd = functor_f(&e, nmod)?.datum;
                    let m = induced_relhopf(cm, &e, nmod)?;
                    let qp = functor_q(cm, &e, &functor_p(cm, &fd), &g)?;
                    let pq = functor_p(cm, &functor_q(cm, &e, &m, &g)?);
                    for (ok, what) in [(qp == fd, "Q after P is the identity"), (pq == m, "P after Q is the identity")] {
                        if !ok {
                            fail(c);
                            let mut w = witness(objs, what, &[]);
                            w.witness = vec![k];
                            c.witnesses.push(w);
                        }
                    }
                }
                Ok(())
            }),
        }
    }
}

fn duality(run: &mut Run, l: &Loaded) {
    let objs = run.objs;
    for (name, h) in &l.hopfs {
        if !h.semi().validate().is_ok() {
            run.skip(name, "dual axioms", "the structure is invalid");
            continue;
        }
        run.check(name, "dual axioms", |c| {
            report_into(objs, c, &h.semi().dualize().validate());
            Ok(())
        });
        match h {
            HopfKind::Full(h) if h.validate_antipode().report.is_ok() => run.check(name, "double dual", |c| {
                report_into(objs, c, &double_dual_compare(h));
                Ok(())
            }),
            HopfKind::Full(_) => run.skip(name, "double dual", "the antipode is invalid"),
            HopfKind::Semi(_) => run.skip(name, "double dual", "no antipode"),
        }
    }
}

fn graded(run: &mut Run, l: &Loaded) {
    let objs = run.objs;
    for gd in &l.gradings {
        let (a, g) = graded_parts(l, gd);
        let name = gd.name.as_str();
        let checks = ["grading round trips", "strongly graded", "inverse degree condition", "graded Galois"];
        if !(a.validate().is_ok() && gd.grading.validate_multiplicative(g, a).is_ok()) {
            for check in checks {
                run.skip(name, check, "the graded structure is invalid");
            }
            continue;
        }
        run.check(name, checks[0], |c| {
            report_into(objs, c, &round_trips(a, g, &gd.grading)?);
            Ok(())
        });
        let s = strong_grading_check(a, g, &gd.grading);
        run.check(name, checks[1], |c| {
            if !s.strong {
                fail(c);
            }
            for &(x, y) in &s.witnesses {
                c.witnesses.push(arrow_witness(g, "product of degrees spans", &[x, y]));
            }
            Ok(())
        });
        run.check(name, checks[2], |c| {
            if !s.cond2 {
                fail(c);
            }
            for &x in &s.cond2_witnesses {
                c.witnesses.push(arrow_witness(g, "unit in product with inverse degree", &[x]));
            }
            Ok(())
        });
        run.check(name, checks[3], |c| {
            let r = graded_galois_report(a, g, &gd.grading, &[])?;
            set(c, "strong", r.strong.strong);
            set(c, "galois", r.galois);
            set(c, "probe adjunction", r.adjunction);
            set(c, "neutral degree is coinvariant", r.neutral_is_coinvariant);
            set(c, "agree", r.agree);
            if let Some((p, x, y)) = r.failing_probe {
                let mut w = witness(objs, "probe counit bijective", &[x, y]);
                w.witness = vec![p];
                c.witnesses.push(w);
            }
            if !(r.agree && r.neutral_is_coinvariant && r.galois) {
                fail(c);
            }
            Ok(())
        });
    }
}

pub fn run_suite(suite: &str, input: &str, l: &Loaded) -> Result<SuiteReport, String> {
    let parts: Vec<&'static str> = match suite {
        "all" => SUITES[..5].to_vec(),
        s => vec![*SUITES[..5]
            .iter()
            .find(|&&n| n == s)
            .ok_or_else(|| format!("unknown suite {}; expected one of {}", s, SUITES.join(", ")))?],
    };
    let mut checks = vec![];
    for p in parts {
        let mut run = Run { suite: p, objs: &l.objs, checks: vec![] };
        match p {
            "validate" => validate(&mut run, l),
            "galois" => galois(&mut run, l),
            "descent" => descent(&mut run, l),
            "duality" => duality(&mut run, l),
            _ => graded(&mut run, l),
        }
        checks.extend(run.checks);
    }
    let count = |s| checks.iter().filter(|c: &&Check| c.status == s).count();
    Ok(SuiteReport {
        input: input.into(),
        suite: suite.into(),
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skipped),
        checks,
    })
}

pub fn human(r: &SuiteReport) -> String {
    let mut s = format!("{} [{}]\n", r.input, r.suite);
    for c in &r.checks {
        let tag = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        s += &format!("  {} {}/{}: {} ({} ms)", tag, c.suite, c.subject, c.name, c.millis);
        if let Some(reason) = &c.reason {
            s += &format!(" - {}", reason);
        }
        s += "\n";
        for w in &c.witnesses {
            s += &format!("      {} at ({})", w.identity, w.labels.join(", "));
            if !w.witness.is_empty() {
                s += &format!(" witness {:?}", w.witness);
            }
            s += "\n";
        }
    }
    s += &format!("  {} passed, {} failed, {} skipped\n", r.passed, r.failed, r.skipped);
    s
}
