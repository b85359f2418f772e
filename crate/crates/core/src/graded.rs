//! Finite groupoids, the Hopf category `kG`, gradings and strongly graded
//! categories.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::descent::DiagModule;
use crate::error::Error;
use crate::galois::{galois_check, probe_module, relhopf_adjunction, ComoduleCat, RelHopfModule};
use crate::hopfcat::{HopfCat, SemiHopfCat};
use crate::linalg::Mat;
use crate::lincat::{i2, Algebra, LinCat, ObjSet, Side, XFam};
use crate::report::Report;
use crate::scalar::Field;

/// A finite groupoid given by an explicit composition table. Morphisms are
/// numbered globally; `compose[s][t]` is `st` for `s: x -> y`, `t: y -> z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Groupoid {
    pub objs: ObjSet,
    pub labels: Vec<String>,
    pub src: Vec<usize>,
    pub dst: Vec<usize>,
    pub compose: Vec<Vec<Option<usize>>>,
    pub inverse: Vec<usize>,
    pub identity: Vec<usize>,
}

impl Groupoid {
    pub fn new(
        objs: ObjSet,
        labels: Vec<String>,
        src: Vec<usize>,
        dst: Vec<usize>,
        compose: Vec<Vec<Option<usize>>>,
        inverse: Vec<usize>,
        identity: Vec<usize>,
    ) -> Result<Groupoid, Error> {
        let g = Groupoid { objs, labels, src, dst, compose, inverse, identity };
        g.check()?;
        Ok(g)
    }

    fn check(&self) -> Result<(), Error> {
        let m = self.labels.len();
        let n = self.objs.len();
        let bad = |what: &str| Err(Error::Invalid(format!("groupoid: {}", what)));
        if self.src.len() != m || self.dst.len() != m || self.inverse.len() != m || self.compose.len() != m {
            return bad("table sizes");
        }
        if self.identity.len() != n {
            return bad("identity count");
        }
        if self.src.iter().chain(&self.dst).any(|&x| x >= n) || self.inverse.iter().chain(&self.identity).any(|&s| s >= m) {
            return bad("index out of range");
        }
        for (x, &e) in self.identity.iter().enumerate() {
            if self.src[e] != x || self.dst[e] != x {
                return bad(&format!("identity of {} is not a loop", self.objs.label(x)));
            }
        }
        for s in 0..m {
            if self.compose[s].len() != m {
                return bad("table sizes");
            }
            for t in 0..m {
                let c = self.compose[s][t];
                match (self.dst[s] == self.src[t], c) {
                    (true, Some(u)) if u < m && self.src[u] == self.src[s] && self.dst[u] == self.dst[t] => {}
                    (false, None) => {}
                    _ => return bad(&format!("composite of {} and {}", self.labels[s], self.labels[t])),
                }
            }
            if self.compose[self.identity[self.src[s]]][s] != Some(s) || self.compose[s][self.identity[self.dst[s]]] != Some(s) {
                return bad(&format!("unit law at {}", self.labels[s]));
            }
            let i = self.inverse[s];
            if self.compose[s][i] != Some(self.identity[self.src[s]]) || self.compose[i][s] != Some(self.identity[self.dst[s]]) {
                return bad(&format!("inverse of {}", self.labels[s]));
            }
        }
        for s in 0..m {
            for t in 0..m {
                for u in 0..m {
                    if let (Some(st), Some(tu)) = (self.compose[s][t], self.compose[t][u]) {
                        if self.compose[st][u] != self.compose[s][tu] {
                            return bad(&format!("associativity at ({},{},{})", self.labels[s], self.labels[t], self.labels[u]));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Connected components `comp_of[x]`, each carrying the group with
    /// multiplication table `groups[c]` (element 0 the identity). Arrows
    /// `x -> y` in one component are labelled by group elements `g` and
    /// compose as `(x,y,g)(y,z,h) = (x,z,gh)`.
    pub fn assemble(comp_of: &[usize], groups: &[Vec<Vec<usize>>]) -> Result<Groupoid, Error> {
        let n = comp_of.len();
        if comp_of.iter().any(|&c| c >= groups.len()) {
            return Err(Error::Invalid("groupoid: component index out of range".into()));
        }
        let mut keys = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if comp_of[x] == comp_of[y] {
                    for g in 0..groups[comp_of[x]].len() {
                        keys.push((x, y, g));
                    }
                }
            }
        }
        let find = |k: (usize, usize, usize)| keys.iter().position(|&q| q == k);
        let labels = keys.iter().map(|&(x, y, g)| format!("{}>{}:{}", x, y, g)).collect();
        let src = keys.iter().map(|k| k.0).collect();
        let dst = keys.iter().map(|k| k.1).collect();
        let mut compose = Vec::with_capacity(keys.len());
        let mut inverse = Vec::with_capacity(keys.len());
        for &(x, y, g) in &keys {
            let table = &groups[comp_of[x]];
            let row = keys.iter().map(|&(y2, z, h)| if y2 == y { find((x, z, table[g][h])) } else { None }).collect();
            compose.push(row);
            let gi = (0..table.len()).find(|&h| table[g][h] == 0).ok_or_else(|| Error::Invalid("group without inverses".into()))?;
            inverse.push(find((y, x, gi)).unwrap_or(usize::MAX));
        }
        let identity = (0..n).map(|x| find((x, x, 0)).unwrap_or(usize::MAX)).collect();
        Groupoid::new(ObjSet::indexed(n), labels, src, dst, compose, inverse, identity)
    }

    /// The indiscrete groupoid on `n` objects times `Z/m`.
    pub fn cyclic_indiscrete(n: usize, m: usize) -> Result<Groupoid, Error> {
        Groupoid::assemble(&vec![0; n], &[cyclic_table(m)])
    }

    pub fn n(&self) -> usize {
        self.objs.len()
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    /// The arrows `x -> y` in increasing global order.
    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.size()).filter(|&s| self.src[s] == x && self.dst[s] == y).collect()
    }

    /// Position of `s` within its hom-set.
    pub fn position(&self, s: usize) -> usize {
        self.hom(self.src[s], self.dst[s]).iter().position(|&t| t == s).unwrap_or(0)
    }

    pub fn comp(&self, s: usize, t: usize) -> Option<usize> {
        self.compose[s][t]
    }
}

/// Multiplication table of `Z/m`.
pub fn cyclic_table(m: usize) -> Vec<Vec<usize>> {
    (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect()
}

/// The groupoid Hopf category: `kG_xy` has basis `G_xy`, `Δσ = σ ⊗ σ`,
/// `ε(σ) = 1` and `S(σ) = σ⁻¹`.
pub fn build_kg(f: Field, g: &Groupoid) -> Result<HopfCat, Error> {
    g.check()?;
    let n = g.n();
    let homs: Vec<Vec<usize>> = (0..n * n).map(|i| g.hom(i / n, i % n)).collect();
    let dims = XFam::from_fn(n, |x, y| homs[i2(n, x, y)].len());
    let alg = LinCat::from_fn(
        f,
        g.objs.clone(),
        dims.clone(),
        |x, y, z| {
            let (hxy, hyz) = (&homs[i2(n, x, y)], &homs[i2(n, y, z)]);
            let d = dims.dim(x, z);
            let mut m = Mat::zeros(f, d, hxy.len() * hyz.len());
            for (i, &s) in hxy.iter().enumerate() {
                for (j, &t) in hyz.iter().enumerate() {
                    if let Some(st) = g.comp(s, t) {
                        m.set(g.position(st), i * hyz.len() + j, f.one());
                    }
                }
            }
            m
        },
        |x| Mat::unit(f, dims.dim(x, x), g.position(g.identity[x])),
    )?;
    let mut comult = Vec::with_capacity(n * n);
    let mut counit = Vec::with_capacity(n * n);
    let mut antipode = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let d = dims.dim(x, y);
            comult.push(Mat::from_fn(f, d * d, d, |r, c| if r == c * d + c { f.one() } else { f.zero() }));
            counit.push(Mat::from_fn(f, 1, d, |_, _| f.one()));
            let mut s = Mat::zeros(f, dims.dim(y, x), d);
            for (i, &a) in homs[i2(n, x, y)].iter().enumerate() {
                s.set(g.position(g.inverse[a]), i, f.one());
            }
            antipode.push(s);
        }
    }
    HopfCat::new(SemiHopfCat::new(alg, comult, counit)?, antipode)
}

/// A direct sum decomposition of every `M_xy` indexed by `G_xy`: one basis
/// matrix per arrow, in the order of [`Groupoid::hom`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub parts: Vec<Vec<Mat>>,
}

impl Grading {
    pub fn part(&self, g: &Groupoid, s: usize) -> &Mat {
        &self.parts[i2(g.n(), g.src[s], g.dst[s])][g.position(s)]
    }

    /// The parts span `M_xy` and meet pairwise in zero.
    pub fn validate(&self, g: &Groupoid, dims: &XFam) -> Report {
        let n = g.n();
        let mut r = Report::new();
        if self.parts.len() != n * n {
            r.push("grading shape", &[], &[]);
            return r;
        }
        for x in 0..n {
            for y in 0..n {
                let ps = &self.parts[i2(n, x, y)];
                let d = dims.dim(x, y);
                if ps.len() != g.hom(x, y).len() || ps.iter().any(|p| p.rows() != d) {
                    r.push("grading shape", &[x, y], &[]);
                    continue;
                }
                let total: usize = ps.iter().map(Mat::cols).sum();
                let all = Mat::hstack(dims_field(ps), d, ps);
                if total != d || all.rank() != d {
                    r.push("grading is a direct sum decomposition", &[x, y], &[]);
                }
            }
        }
        r
    }

    /// `1_x ∈ A_{e_x}` and `A_σ A_τ ⊆ A_στ`; witnesses are arrow indices.
    pub fn validate_multiplicative(&self, g: &Groupoid, a: &LinCat) -> Report {
        let mut r = self.validate(g, a.dims());
        if !r.is_ok() {
            return r;
        }
        for x in 0..g.n() {
            if !self.part(g, g.identity[x]).spans(a.unit(x)) {
                r.push("unit in neutral degree", &[x], &[g.identity[x]]);
            }
        }
        for s in 0..g.size() {
            for t in 0..g.size() {
                if let Some(st) = g.comp(s, t) {
                    let (x, y, z) = (g.src[s], g.dst[s], g.dst[t]);
                    let prod = a.mult(x, y, z).mul(&self.part(g, s).kron(self.part(g, t)));
                    if !self.part(g, st).spans(&prod) {
                        r.push("grading multiplicative", &[x, y, z], &[s, t]);
                    }
                }
            }
        }
        r
    }

    /// Equality of the decompositions as subspaces.
    pub fn same_as(&self, o: &Grading) -> bool {
        self.parts.len() == o.parts.len()
            && self
                .parts
                .iter()
                .zip(&o.parts)
                .all(|(p, q)| p.len() == q.len() && p.iter().zip(q).all(|(a, b)| a.cols() == b.cols() && a.spans(b) && b.spans(a)))
    }

    /// Everything in the neutral degree; zero elsewhere.
    pub fn trivial(g: &Groupoid, f: Field, dims: &XFam) -> Grading {
        let n = g.n();
        let parts = (0..n * n)
            .map(|i| {
                let (x, y) = (i / n, i % n);
                g.hom(x, y)
                    .iter()
                    .map(|&s| if s == g.identity[x] { Mat::identity(f, dims.dim(x, y)) } else { Mat::zeros(f, dims.dim(x, y), 0) })
                    .collect()
            })
            .collect();
        Grading { parts }
    }
}

fn dims_field(ps: &[Mat]) -> Field {
    ps.first().map(Mat::field).unwrap_or(Field::Rational)
}

/// `ρ(m) = m ⊗ σ` for `m` of degree `σ`, on an object of `M_k(X)`.
pub fn grading_coaction(f: Field, g: &Groupoid, dims: &XFam, gr: &Grading) -> Result<Vec<Mat>, Error> {
    let r = gr.validate(g, dims);
    if !r.is_ok() {
        return Err(Error::Invalid(format!("grading: {:?}", r.identities())));
    }
    let n = g.n();
    let mut rho = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let ps = &gr.parts[i2(n, x, y)];
            let d = dims.dim(x, y);
            let k = ps.len();
            let coords = Mat::hstack(f, d, ps).inverse().ok_or_else(|| Error::Invalid("grading not a basis".into()))?;
            let mut acc = Mat::zeros(f, d * k, d);
            let mut row = 0;
            for (i, p) in ps.iter().enumerate() {
                let sel: Vec<usize> = (row..row + p.cols()).collect();
                row += p.cols();
                let proj = p.mul(&coords.select_rows(&sel));
                acc = acc.add(&proj.kron(&Mat::unit(f, k, i)));
            }
            rho.push(acc);
        }
    }
    Ok(rho)
}

/// `M_σ = {m | ρ(m) = m ⊗ σ}`.
pub fn coaction_grading(f: Field, g: &Groupoid, dims: &XFam, rho: &[Mat]) -> Result<Grading, Error> {
    let n = g.n();
    let mut parts = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let d = dims.dim(x, y);
            let k = g.hom(x, y).len();
            let ps: Vec<Mat> =
                (0..k).map(|i| rho[i2(n, x, y)].sub(&Mat::identity(f, d).kron(&Mat::unit(f, k, i))).kernel_basis()).collect();
            let total: usize = ps.iter().map(Mat::cols).sum();
            if total != d {
                return Err(Error::Invalid(format!("coaction at ({},{}) is not a grading", x, y)));
            }
            parts.push(ps);
        }
    }
    Ok(Grading { parts })
}

/// The `kG`-comodule category of a graded linear category.
pub fn grading_to_coaction(a: &LinCat, g: &Groupoid, gr: &Grading) -> Result<ComoduleCat, Error> {
    let r = gr.validate_multiplicative(g, a);
    if let Some(v) = r.violations.first() {
        let w: Vec<&str> = v.witness.iter().map(|&s| g.labels.get(s).map(String::as_str).unwrap_or("?")).collect();
        return Err(Error::Invalid(format!("{} at {:?}, witness {:?}", v.identity, v.at, w)));
    }
    let kg = build_kg(a.field(), g)?;
    let rho = grading_coaction(a.field(), g, a.dims(), gr)?;
    ComoduleCat::over_hopf(a.clone(), &kg, rho)
}

pub fn coaction_to_grading(c: &ComoduleCat, g: &Groupoid) -> Result<Grading, Error> {
    coaction_grading(c.field(), g, c.a.dims(), c.rho_all())
}

/// Both round trips of the grading/coaction correspondence.
pub fn round_trips(a: &LinCat, g: &Groupoid, gr: &Grading) -> Result<Report, Error> {
    let mut r = Report::new();
    let c = grading_to_coaction(a, g, gr)?;
    let back = coaction_to_grading(&c, g)?;
    if !back.same_as(gr) {
        r.push("grading to coaction to grading", &[], &[]);
    }
    let c2 = grading_to_coaction(a, g, &back)?;
    let n = g.n();
    for x in 0..n {
        for y in 0..n {
            let d = a.dim(x, y);
            r.check_eq("coaction to grading to coaction", &[x, y], c2.rho(x, y), c.rho(x, y), &[d]);
        }
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongGrading {
    /// `A_σ A_τ = A_στ` for all composable pairs.
    pub strong: bool,
    /// `A_{σ⁻¹} A_σ = A_{e_y}` for all `σ: x -> y`.
    pub cond2: bool,
    /// Composable pairs `(σ, τ)` where the product is too small.
    pub witnesses: Vec<(usize, usize)>,
    /// Arrows `σ` failing the second condition.
    pub cond2_witnesses: Vec<usize>,
}

fn product_rank(a: &LinCat, g: &Groupoid, gr: &Grading, s: usize, t: usize) -> usize {
    let (x, y, z) = (g.src[s], g.dst[s], g.dst[t]);
    a.mult(x, y, z).mul(&gr.part(g, s).kron(gr.part(g, t))).rank()
}

pub fn strong_grading_check(a: &LinCat, g: &Groupoid, gr: &Grading) -> StrongGrading {
    let mut witnesses = Vec::new();
    for s in 0..g.size() {
        for t in 0..g.size() {
            if let Some(st) = g.comp(s, t) {
                if product_rank(a, g, gr, s, t) != gr.part(g, st).cols() {
                    witnesses.push((s, t));
                }
            }
        }
    }
    let cond2_witnesses: Vec<usize> =
        (0..g.size()).filter(|&s| product_rank(a, g, gr, g.inverse[s], s) != gr.part(g, g.identity[g.dst[s]]).cols()).collect();
    StrongGrading { strong: witnesses.is_empty(), cond2: cond2_witnesses.is_empty(), witnesses, cond2_witnesses }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedGalois {
    pub strong: StrongGrading,
    /// Units and counits bijective on the probes; empirical.
    pub adjunction: bool,
    /// First probe whose counit is not bijective, with the failing component.
    pub failing_probe: Option<(usize, usize, usize)>,
    pub galois: bool,
    /// `B_x = A_{e_x}` as subspaces.
    pub neutral_is_coinvariant: bool,
    /// Strong grading, the inverse condition and the Galois condition coincide.
    pub agree: bool,
}

/// Strong grading against the Galois condition for the induced coaction.
/// The probes are the regular module and the modules `A_z• ⊗ kG`, plus
/// `extra` relative Hopf modules.
pub fn graded_galois_report(a: &LinCat, g: &Groupoid, gr: &Grading, extra: &[RelHopfModule]) -> Result<GradedGalois, Error> {
    let c = grading_to_coaction(a, g, gr)?;
    let strong = strong_grading_check(a, g, gr);
    let e = c.coinvariants()?;
    let neutral_is_coinvariant = (0..g.n()).all(|x| {
        let p = gr.part(g, g.identity[x]);
        p.cols() == e.i[x].cols() && p.spans(&e.i[x]) && e.i[x].spans(p)
    });
    let mut modules = vec![RelHopfModule::regular(&c)];
    modules.extend((0..g.n()).map(|z| probe_module(&c, z)));
    modules.extend(extra.iter().cloned());
    let diag = [DiagModule::regular(&e.b, Side::Right), DiagModule::free(&e.b, Side::Right, 2)];
    let adj = relhopf_adjunction(&c, &diag, &modules)?;
    let n = g.n();
    let mut failing_probe = None;
    for (p, cu) in adj.counits.iter().enumerate() {
        if let Some(i) = cu.bijective.iter().position(|&b| !b) {
            failing_probe = Some((p, i / n, i % n));
            break;
        }
    }
    let adjunction = failing_probe.is_none() && adj.units.iter().all(|u| u.all_bijective());
    let galois = galois_check(&c)?.cond1;
    let agree = strong.strong == strong.cond2 && strong.cond2 == galois;
    Ok(GradedGalois { strong, adjunction, failing_probe, galois, neutral_is_coinvariant, agree })
}

/// Crossed-product-style category over a commutative algebra `R`: `A_xy` is
/// `⊕_{σ ∈ G_xy} R u_σ` with `(r u_σ)(r' u_τ) = c(σ,τ) r r' u_στ`, where
/// `c(σ,τ) = t_σ t_τ t_στ⁻¹` for invertible `t` (columns in `R`, `t_{e_x} = 1`).
/// Strongly graded by construction.
pub fn crossed_product(g: &Groupoid, r: &Algebra, twist: &[Mat]) -> Result<(LinCat, Grading), Error> {
    let f = r.field();
    let d = r.dim;
    if twist.len() != g.size() {
        return Err(Error::Shape("one twist per arrow".into()));
    }
    if !r.mult.sub(&r.mult.mul(&Mat::swap(f, d, d))).is_zero() {
        return Err(Error::Invalid("crossed product base must be commutative".into()));
    }
    let mut t: Vec<Mat> = twist.to_vec();
    for &e in &g.identity {
        t[e] = r.unit.clone();
    }
    let mut tinv = Vec::with_capacity(t.len());
    for (s, ts) in t.iter().enumerate() {
        let inv = r.lmul(ts).inverse().ok_or_else(|| Error::Invalid(format!("twist at {} not invertible", g.labels[s])))?;
        tinv.push(inv.mul(&r.unit));
    }
    let prod = |p: &Mat, q: &Mat| r.mult.mul(&p.kron(q));
    let n = g.n();
    let homs: Vec<Vec<usize>> = (0..n * n).map(|i| g.hom(i / n, i % n)).collect();
    let dims = XFam::from_fn(n, |x, y| homs[i2(n, x, y)].len() * d);
    let a = LinCat::from_fn(
        f,
        g.objs.clone(),
        dims.clone(),
        |x, y, z| {
            let (hxy, hyz) = (&homs[i2(n, x, y)], &homs[i2(n, y, z)]);
            let mut cols = Vec::new();
            for &s in hxy {
                for j in 0..d {
                    for &u in hyz {
                        for l in 0..d {
                            let st = g.comp(s, u).unwrap_or(0);
                            let c = prod(&prod(&t[s], &t[u]), &tinv[st]);
                            let v = prod(&c, &prod(&Mat::unit(f, d, j), &Mat::unit(f, d, l)));
                            let mut col = Mat::zeros(f, dims.dim(x, z), 1);
                            let off = g.position(st) * d;
                            for i in 0..d {
                                col.set(off + i, 0, v.get(i, 0).clone());
                            }
                            cols.push(col);
                        }
                    }
                }
            }
            Mat::hstack(f, dims.dim(x, z), &cols)
        },
        |x| {
            let mut u = Mat::zeros(f, dims.dim(x, x), 1);
            let off = g.position(g.identity[x]) * d;
            for i in 0..d {
                u.set(off + i, 0, r.unit.get(i, 0).clone());
            }
            u
        },
    )?;
    let parts = (0..n * n)
        .map(|i| {
            let total = dims.dim(i / n, i % n);
            (0..homs[i].len()).map(|p| Mat::from_fn(f, total, d, |row, col| if row == p * d + col { f.one() } else { f.zero() })).collect()
        })
        .collect();
    Ok((a, Grading { parts }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{cyclic_indiscrete, dual_numbers, q, single};
    use crate::hopfcat::double_dual_compare;

    fn c2() -> Groupoid {
        Groupoid::cyclic_indiscrete(1, 2).unwrap()
    }

    fn self_graded(g: &Groupoid) -> (LinCat, Grading) {
        let kg = build_kg(q(), g).unwrap();
        let f = q();
        let n = g.n();
        let parts = (0..n * n)
            .map(|i| {
                let d = kg.base.alg.dim(i / n, i % n);
                (0..d).map(|p| Mat::unit(f, d, p)).collect()
            })
            .collect();
        (kg.base.alg.clone(), Grading { parts })
    }

    #[test]
    fn groupoid_algebras_are_hopf_categories() {
        let gs = [
            Groupoid::cyclic_indiscrete(1, 1).unwrap(),
            c2(),
            Groupoid::cyclic_indiscrete(2, 1).unwrap(),
            Groupoid::cyclic_indiscrete(2, 2).unwrap(),
            Groupoid::assemble(&[0, 1, 0], &[cyclic_table(2), cyclic_table(1)]).unwrap(),
        ];
        for g in &gs {
            let h = build_kg(q(), g).unwrap();
            assert!(h.base.validate().is_ok());
            assert!(h.validate_antipode().report.is_ok());
            assert!(double_dual_compare(&h).is_ok());
        }
        assert_eq!(build_kg(q(), &c2()).unwrap(), cyclic_indiscrete(1, 2));
        let h = build_kg(q(), &gs[2]).unwrap();
        assert_eq!(h.antipode(0, 1), &Mat::identity(q(), 1));
    }

    #[test]
    fn bad_groupoid_rejected() {
        let mut g = c2();
        g.inverse[1] = 0;
        assert!(Groupoid::new(g.objs, g.labels, g.src, g.dst, g.compose, g.inverse, g.identity).is_err());
    }

    #[test]
    fn self_grading_gives_diagonal_coaction() {
        let g = Groupoid::cyclic_indiscrete(2, 1).unwrap();
        let (a, gr) = self_graded(&g);
        let c = grading_to_coaction(&a, &g, &gr).unwrap();
        let kg = build_kg(q(), &g).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(c.rho(x, y), kg.base.comult(x, y));
            }
        }
        assert!(round_trips(&a, &g, &gr).unwrap().is_ok());
    }

    #[test]
    fn strong_grading_and_galois_agree() {
        for g in [c2(), Groupoid::cyclic_indiscrete(2, 1).unwrap(), Groupoid::cyclic_indiscrete(2, 2).unwrap()] {
            let (a, gr) = self_graded(&g);
            let t = graded_galois_report(&a, &g, &gr, &[]).unwrap();
            assert!(t.strong.strong && t.strong.cond2 && t.galois && t.adjunction && t.agree, "{:?}", t);
            assert!(t.neutral_is_coinvariant);
        }
    }

    #[test]
    fn trivially_graded_scalars_not_strong() {
        let g = c2();
        let a = single(&Algebra::scalars(q()));
        let gr = Grading::trivial(&g, q(), a.dims());
        let t = graded_galois_report(&a, &g, &gr, &[]).unwrap();
        assert!(!t.strong.strong && !t.strong.cond2 && !t.galois && t.agree);
        assert_eq!(t.strong.witnesses, vec![(1, 1)]);
        assert_eq!(g.labels[1], "0>0:1");
        assert!(t.failing_probe.is_some() && !t.adjunction);
        assert!(round_trips(&a, &g, &gr).unwrap().is_ok());
    }

    #[test]
    fn dual_numbers_with_odd_generator() {
        let g = c2();
        let a = single(&dual_numbers());
        let f = q();
        let gr = Grading { parts: vec![vec![Mat::unit(f, 2, 0), Mat::unit(f, 2, 1)]] };
        let t = graded_galois_report(&a, &g, &gr, &[]).unwrap();
        assert!(!t.strong.strong && t.agree);
        assert!(round_trips(&a, &g, &gr).unwrap().is_ok());
    }

    #[test]
    fn non_multiplicative_grading_rejected() {
        let g = c2();
        let a = single(&dual_numbers());
        let f = q();
        // t placed in the neutral degree and 1 in the odd one
        let gr = Grading { parts: vec![vec![Mat::unit(f, 2, 1), Mat::unit(f, 2, 0)]] };
        assert!(grading_to_coaction(&a, &g, &gr).is_err());
    }

    #[test]
    fn crossed_products_are_strongly_graded() {
        let f = q();
        let r = Algebra::new(2, Mat::from_i64(f, 2, 4, &[1, 0, 0, 0, 0, 1, 1, 0]), Mat::from_i64(f, 2, 1, &[1, 0])).unwrap();
        let g = Groupoid::cyclic_indiscrete(2, 2).unwrap();
        let twist: Vec<Mat> = (0..g.size()).map(|s| Mat::from_i64(f, 2, 1, &[(s as i64) + 2, 1])).collect();
        let (a, gr) = crossed_product(&g, &r, &twist).unwrap();
        assert!(a.validate().is_ok());
        assert!(gr.validate_multiplicative(&g, &a).is_ok());
        let t = graded_galois_report(&a, &g, &gr, &[]).unwrap();
        assert!(t.strong.strong && t.galois && t.agree && t.adjunction, "{:?}", t);
        assert!(round_trips(&a, &g, &gr).unwrap().is_ok());
    }

    #[test]
    fn disconnected_groupoid() {
        let g = Groupoid::assemble(&[0, 1], &[cyclic_table(2), cyclic_table(1)]).unwrap();
        let (a, gr) = self_graded(&g);
        let t = graded_galois_report(&a, &g, &gr, &[]).unwrap();
        assert!(t.agree && t.strong.strong && t.galois);
    }
}
