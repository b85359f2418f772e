//! Descent data along a functor `i: B -> A` from a diagonal category, the
//! adjunction between diagonal modules and descent data, and its unit and
//! counit.

use alloc::format;
use alloc::vec::Vec;

use crate::error::Error;
use crate::linalg::{Mat, Quotient};
use crate::lincat::{
    classify_module, i2, tensor_chain, tensor_over_diag, Algebra, BModule, Classification, DiagAlgebra, LeftModule, LinCat, RightModule,
    Side, XFam,
};
use crate::report::Report;
use crate::scalar::Field;

/// A functor from a diagonal category: algebra maps `i_x: B_x -> A_xx`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    pub b: DiagAlgebra,
    pub a: LinCat,
    /// `i_x` as a `dim A_xx x dim B_x` matrix.
    pub i: Vec<Mat>,
}

impl Extension {
    pub fn new(b: DiagAlgebra, a: LinCat, i: Vec<Mat>) -> Result<Extension, Error> {
        let n = a.n();
        if b.n() != n || i.len() != n {
            return Err(Error::Shape("extension object count".into()));
        }
        for x in 0..n {
            if i[x].shape() != (a.dim(x, x), b.dim(x)) {
                return Err(Error::Shape(format!("inclusion at {}", x)));
            }
        }
        Ok(Extension { b, a, i })
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn alg(&self, x: usize) -> &Algebra {
        &self.b.algs[x]
    }

    /// `i_x` is unital and multiplicative.
    pub fn validate(&self) -> Report {
        let mut r = self.b.validate();
        r.extend(self.a.validate());
        for x in 0..self.n() {
            let b = self.alg(x);
            let i = &self.i[x];
            r.check_eq("inclusion unital", &[x], &i.mul(&b.unit), self.a.unit(x), &[1]);
            let lhs = i.mul(&b.mult);
            let rhs = self.a.mult(x, x, x).mul(&i.kron(i));
            r.check_eq("inclusion multiplicative", &[x], &lhs, &rhs, &[b.dim, b.dim]);
        }
        r
    }

    /// The same functor between opposite categories.
    pub fn op(&self) -> Extension {
        Extension { b: self.b.op(), a: self.a.op(), i: self.i.clone() }
    }

    /// `i_x(b_k)` for the `k`-th basis element of `B_x`.
    pub fn image(&self, x: usize, k: usize) -> Mat {
        self.i[x].col(k)
    }

    /// `A_xy` as a left `B_x`-module.
    pub fn left_on(&self, x: usize, y: usize) -> BModule {
        let actions = (0..self.b.dim(x)).map(|k| self.a.left_mul(x, x, y, &self.image(x, k))).collect();
        BModule { side: Side::Left, dim: self.a.dim(x, y), actions }
    }

    /// `A_xy` as a right `B_y`-module.
    pub fn right_on(&self, x: usize, y: usize) -> BModule {
        let actions = (0..self.b.dim(y)).map(|k| self.a.right_mul(x, y, y, &self.image(y, k))).collect();
        BModule { side: Side::Right, dim: self.a.dim(x, y), actions }
    }

    /// `M_xy` as a right `B_y`-module, through the `A`-action.
    pub fn restrict_right(&self, m: &RightModule, x: usize, y: usize) -> BModule {
        let id = Mat::identity(self.field(), m.dim(x, y));
        let actions = (0..self.b.dim(y)).map(|k| m.act(x, y, y).mul(&id.kron(&self.image(y, k)))).collect();
        BModule { side: Side::Right, dim: m.dim(x, y), actions }
    }

    /// `M_xy` as a left `B_x`-module, through the `A`-action.
    pub fn restrict_left(&self, m: &LeftModule, x: usize, y: usize) -> BModule {
        let id = Mat::identity(self.field(), m.dim(x, y));
        let actions = (0..self.b.dim(x)).map(|k| m.act(x, x, y).mul(&self.image(x, k).kron(&id))).collect();
        BModule { side: Side::Left, dim: m.dim(x, y), actions }
    }

    pub fn classify_left(&self, x: usize, y: usize) -> Classification {
        classify_module(self.field(), self.alg(x), &self.left_on(x, y))
    }

    pub fn classify_right(&self, x: usize, y: usize) -> Classification {
        classify_module(self.field(), self.alg(y), &self.right_on(x, y))
    }

    /// First `(x,y)` where `A_xy` fails to be flat as a left `B_x`-module.
    pub fn first_non_flat(&self) -> Option<(usize, usize)> {
        let n = self.n();
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).find(|&(x, y)| !self.classify_left(x, y).flat)
    }

    /// Every diagonal `A_xx` is faithfully flat as a left `B_x`-module.
    pub fn diagonal_faithfully_flat(&self) -> bool {
        (0..self.n()).all(|x| self.classify_left(x, x).faithfully_flat)
    }

    /// `M_xx ⊗_{B_x} A_xy`.
    pub fn carrier(&self, m: &RightModule, x: usize, y: usize) -> Quotient {
        tensor_over_diag(self.field(), &self.restrict_right(m, x, x), &self.left_on(x, y))
    }

    /// `M_xx ⊗_{B_x} A_xx ⊗_{B_x} A_xy`.
    pub fn carrier3(&self, m: &RightModule, x: usize, y: usize) -> Quotient {
        let mr = self.restrict_right(m, x, x);
        let al = self.left_on(x, x);
        let ar = self.right_on(x, x);
        let bl = self.left_on(x, y);
        let j0 = mr.actions.into_iter().zip(al.actions).collect();
        let j1 = ar.actions.into_iter().zip(bl.actions).collect();
        tensor_chain(self.field(), &[m.dim(x, x), self.a.dim(x, x), self.a.dim(x, y)], &[j0, j1])
    }
}

/// A family `N_x` of right (or left) `B_x`-modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagModule {
    pub mods: Vec<BModule>,
}

impl DiagModule {
    /// `B` acting on itself.
    pub fn regular(b: &DiagAlgebra, side: Side) -> DiagModule {
        DiagModule { mods: b.algs.iter().map(|a| a.regular(side)).collect() }
    }

    /// `B^r`.
    pub fn free(b: &DiagAlgebra, side: Side, r: usize) -> DiagModule {
        let f = b.field();
        let mods = b
            .algs
            .iter()
            .map(|a| {
                let reg = a.regular(side);
                let mut out = BModule { side, dim: 0, actions: alloc::vec![Mat::zeros(f, 0, 0); a.dim] };
                for _ in 0..r {
                    out = out.direct_sum(&reg, f);
                }
                out
            })
            .collect();
        DiagModule { mods }
    }

    pub fn dim(&self, x: usize) -> usize {
        self.mods[x].dim
    }

    pub fn validate(&self, b: &DiagAlgebra) -> Report {
        let mut r = Report::new();
        for (x, m) in self.mods.iter().enumerate() {
            for mut v in m.validate(&b.algs[x]).violations {
                v.at.insert(0, x);
                r.violations.push(v);
            }
        }
        r
    }

    /// The same operators read over the opposite algebras.
    pub fn flip(&self) -> DiagModule {
        let mods = self
            .mods
            .iter()
            .map(|m| BModule { side: if m.side == Side::Left { Side::Right } else { Side::Left }, dim: m.dim, actions: m.actions.clone() })
            .collect();
        DiagModule { mods }
    }
}

/// A right `A`-module with maps `σ_xy: M_xy -> M_xx ⊗_{B_x} A_xy`, stored in
/// the quotient coordinates of `tensors[(x,y)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentDatum {
    pub m: RightModule,
    pub sigma: Vec<Mat>,
    pub tensors: Vec<Quotient>,
}

impl DescentDatum {
    pub fn new(e: &Extension, m: RightModule, sigma: Vec<Mat>) -> Result<DescentDatum, Error> {
        let n = e.n();
        if sigma.len() != n * n || m.dims.n() != n {
            return Err(Error::Shape("descent datum component count".into()));
        }
        let mut tensors = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let t = e.carrier(&m, x, y);
                if sigma[i2(n, x, y)].shape() != (t.dim(), m.dim(x, y)) {
                    return Err(Error::Shape(format!("descent map at ({},{})", x, y)));
                }
                tensors.push(t);
            }
        }
        Ok(DescentDatum { m, sigma, tensors })
    }

    pub fn n(&self) -> usize {
        self.m.dims.n()
    }
    pub fn sigma(&self, x: usize, y: usize) -> &Mat {
        &self.sigma[i2(self.n(), x, y)]
    }
    pub fn tensor(&self, x: usize, y: usize) -> &Quotient {
        &self.tensors[i2(self.n(), x, y)]
    }

    /// `σ_xy` followed by the section, landing in `M_xx ⊗ A_xy`.
    pub fn sigma_ambient(&self, x: usize, y: usize) -> Mat {
        self.tensor(x, y).section.mul(self.sigma(x, y))
    }

    /// The descent identities, each evaluated in the ambient tensor space and
    /// then projected to the balanced tensor product.
    pub fn validate(&self, e: &Extension) -> Report {
        let f = e.field();
        let n = self.n();
        let a = &e.a;
        let mut r = self.m.validate(a);
        for x in 0..n {
            let dxx = self.m.dim(x, x);
            let ixx = Mat::identity(f, dxx);
            for y in 0..n {
                let dxy = self.m.dim(x, y);
                let s_xy = self.sigma_ambient(x, y);
                for z in 0..n {
                    let lhs = self.sigma(x, z).mul(self.m.act(x, y, z));
                    let amb = ixx.kron(a.mult(x, y, z)).mul(&s_xy.kron(&a.id(y, z)));
                    let rhs = self.tensor(x, z).projection.mul(&amb);
                    r.check_eq("descent map linear", &[x, y, z], &lhs, &rhs, &[dxy, a.dim(y, z)]);
                }
                let t3 = e.carrier3(&self.m, x, y);
                let lhs = t3.projection.mul(&self.sigma_ambient(x, x).kron(&a.id(x, y))).mul(&s_xy);
                let ins = ixx.kron(a.unit(x)).kron(&a.id(x, y));
                let rhs = t3.projection.mul(&ins).mul(&s_xy);
                r.check_eq("descent map coassociative", &[x, y], &lhs, &rhs, &[dxy]);
                let back = self.m.act(x, x, y).mul(&s_xy);
                r.check_eq("descent map counital", &[x, y], &back, &Mat::identity(f, dxy), &[dxy]);
            }
        }
        r
    }
}

/// Checks that `f` is a morphism of descent data: right `A`-linear and
/// compatible with the descent maps.
pub fn descent_morphism_check(e: &Extension, d: &DescentDatum, d2: &DescentDatum, f: &[Mat]) -> Report {
    let n = e.n();
    let a = &e.a;
    let mut r = Report::new();
    for x in 0..n {
        for y in 0..n {
            let fxy = &f[i2(n, x, y)];
            for z in 0..n {
                let lhs = f[i2(n, x, z)].mul(d.m.act(x, y, z));
                let rhs = d2.m.act(x, y, z).mul(&fxy.kron(&a.id(y, z)));
                r.check_eq("morphism A-linear", &[x, y, z], &lhs, &rhs, &[d.m.dim(x, y), a.dim(y, z)]);
            }
            let amb = f[i2(n, x, x)].kron(&a.id(x, y)).mul(&d.sigma_ambient(x, y));
            let lhs = d2.tensor(x, y).projection.mul(&amb);
            let rhs = d2.sigma(x, y).mul(fxy);
            r.check_eq("morphism compatible with descent maps", &[x, y], &lhs, &rhs, &[d.m.dim(x, y)]);
        }
    }
    r
}

/// `F(N)_xy = N_x ⊗_{B_x} A_xy` together with its balanced-tensor presentation.
#[derive(Clone, Debug)]
pub struct Induced {
    pub datum: DescentDatum,
    /// `N_x ⊗_{B_x} A_xy` for each `(x,y)`.
    pub tensors: Vec<Quotient>,
}

/// `F(N)` with `σ_xy(n ⊗ a) = n ⊗ 1_x ⊗ a`.
pub fn functor_f(e: &Extension, nmod: &DiagModule) -> Result<Induced, Error> {
    let f = e.field();
    let n = e.n();
    let a = &e.a;
    let mut qs = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            qs.push(tensor_over_diag(f, &nmod.mods[x], &e.left_on(x, y)));
        }
    }
    let dims = XFam::from_fn(n, |x, y| qs[i2(n, x, y)].dim());
    let mut act = Vec::with_capacity(n * n * n);
    for x in 0..n {
        let idn = Mat::identity(f, nmod.dim(x));
        for y in 0..n {
            for z in 0..n {
                let amb = idn.kron(a.mult(x, y, z)).mul(&qs[i2(n, x, y)].section.kron(&a.id(y, z)));
                act.push(qs[i2(n, x, z)].projection.mul(&amb));
            }
        }
    }
    let m = RightModule { dims, act };
    let mut sigma = Vec::with_capacity(n * n);
    for x in 0..n {
        let idn = Mat::identity(f, nmod.dim(x));
        let one = qs[i2(n, x, x)].projection.mul(&idn.kron(a.unit(x)));
        for y in 0..n {
            let t = e.carrier(&m, x, y);
            let q = &qs[i2(n, x, y)];
            sigma.push(t.projection.mul(&one.kron(&a.id(x, y))).mul(&q.section));
        }
    }
    let datum = DescentDatum::new(e, m, sigma)?;
    Ok(Induced { datum, tensors: qs })
}

/// `F(g)_xy = g_x ⊗_{B_x} A_xy`.
pub fn functor_f_map(e: &Extension, src: &Induced, dst: &Induced, g: &[Mat]) -> Vec<Mat> {
    let n = e.n();
    let mut out = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let (qs, qd) = (&src.tensors[i2(n, x, y)], &dst.tensors[i2(n, x, y)]);
            out.push(qd.projection.mul(&g[x].kron(&e.a.id(x, y))).mul(&qs.section));
        }
    }
    out
}

/// `A` itself with `σ_xy(a) = 1_x ⊗ a`.
pub fn regular_datum(e: &Extension) -> Result<DescentDatum, Error> {
    let a = &e.a;
    let n = e.n();
    let m = RightModule::regular(a);
    let mut sigma = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let t = e.carrier(&m, x, y);
            sigma.push(t.projection.mul(&a.unit(x).kron(&a.id(x, y))));
        }
    }
    DescentDatum::new(e, m, sigma)
}

/// `G(M)_x = {m ∈ M_xx | σ_xx(m) = m ⊗ 1_x}` with the `B_x`-action
/// restricted from `A` along `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub module: DiagModule,
    /// Basis of `G(M)_x` inside `M_xx`, as columns.
    pub inclusion: Vec<Mat>,
}

pub fn functor_g(e: &Extension, d: &DescentDatum) -> Result<Invariants, Error> {
    let f = e.field();
    let n = e.n();
    let mut mods = Vec::with_capacity(n);
    let mut inclusion = Vec::with_capacity(n);
    for x in 0..n {
        let dxx = d.m.dim(x, x);
        let ins = d.tensor(x, x).projection.mul(&Mat::identity(f, dxx).kron(e.a.unit(x)));
        let k = d.sigma(x, x).sub(&ins).kernel_basis();
        let mut actions = Vec::with_capacity(e.b.dim(x));
        for kk in 0..e.b.dim(x) {
            let img = d.m.act(x, x, x).mul(&Mat::identity(f, dxx).kron(&e.image(x, kk))).mul(&k);
            let c = k.solve(&img)?.ok_or_else(|| Error::IllDefined(format!("invariants at {} not closed under B", x)))?;
            actions.push(c);
        }
        mods.push(BModule { side: Side::Right, dim: k.cols(), actions });
        inclusion.push(k);
    }
    Ok(Invariants { module: DiagModule { mods }, inclusion })
}

/// Per-component matrices with bijectivity flags; `report` lists components
/// where a hypothesis guaranteed bijectivity but it failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapFamily {
    pub maps: Vec<Mat>,
    pub bijective: Vec<bool>,
    pub report: Report,
}

impl MapFamily {
    pub fn all_bijective(&self) -> bool {
        self.bijective.iter().all(|&b| b)
    }
}

/// `ε^M_xy: G(M)_x ⊗_{B_x} A_xy -> M_xy`, `m ⊗ a ↦ ma`.
pub fn counit_eps(e: &Extension, d: &DescentDatum) -> Result<MapFamily, Error> {
    let f = e.field();
    let n = e.n();
    let g = functor_g(e, d)?;
    let mut maps = Vec::with_capacity(n * n);
    let mut bijective = Vec::with_capacity(n * n);
    let mut report = Report::new();
    for x in 0..n {
        for y in 0..n {
            let q = tensor_over_diag(f, &g.module.mods[x], &e.left_on(x, y));
            let amb = d.m.act(x, x, y).mul(&g.inclusion[x].kron(&e.a.id(x, y)));
            let eps = q.descend(&amb)?;
            let bij = eps.is_bijective();
            if !bij && e.classify_left(x, y).flat {
                report.push("counit bijective over a flat component", &[x, y], &[]);
            }
            maps.push(eps);
            bijective.push(bij);
        }
    }
    Ok(MapFamily { maps, bijective, report })
}

/// `η^N_x: N_x -> GF(N)_x`, `n ↦ n ⊗ 1_x`, in the basis of `GF(N)_x`.
pub fn unit_eta(e: &Extension, nmod: &DiagModule) -> Result<MapFamily, Error> {
    let f = e.field();
    let fn_ = functor_f(e, nmod)?;
    let g = functor_g(e, &fn_.datum)?;
    let mut maps = Vec::new();
    let mut bijective = Vec::new();
    let mut report = Report::new();
    for x in 0..e.n() {
        let q = &fn_.tensors[i2(e.n(), x, x)];
        let ins = q.projection.mul(&Mat::identity(f, nmod.dim(x)).kron(e.a.unit(x)));
        let eta = g.inclusion[x].solve(&ins)?.ok_or_else(|| Error::IllDefined(format!("unit image outside invariants at {}", x)))?;
        let bij = eta.is_bijective();
        if !bij && e.classify_left(x, x).faithfully_flat {
            report.push("unit bijective over a faithfully flat diagonal", &[x], &[]);
        }
        maps.push(eta);
        bijective.push(bij);
    }
    Ok(MapFamily { maps, bijective, report })
}

/// Outcome of the faithfully flat descent comparison on a probe list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentEquivalence {
    /// Every `A_xx` is faithfully flat over `B_x`.
    pub faithfully_flat: bool,
    /// Every probe unit and counit is bijective (empirical).
    pub probes_bijective: bool,
    pub agree: bool,
    /// Failed probes: `(probe kind, probe index, object indices)`.
    pub witnesses: Vec<(&'static str, usize, Vec<usize>)>,
    pub report: Report,
}

pub fn descent_equivalence_report(e: &Extension, diag: &[DiagModule], data: &[DescentDatum]) -> Result<DescentEquivalence, Error> {
    if let Some((x, y)) = e.first_non_flat() {
        return Err(Error::Invalid(format!("A_{}{} is not flat over B_{}", x, y, x)));
    }
    let n = e.n();
    let faithfully_flat = e.diagonal_faithfully_flat();
    let mut witnesses = Vec::new();
    let mut report = Report::new();
    for (p, nm) in diag.iter().enumerate() {
        let u = unit_eta(e, nm)?;
        for x in 0..n {
            if !u.bijective[x] {
                witnesses.push(("unit", p, alloc::vec![x]));
            }
        }
        report.extend(u.report);
    }
    for (p, d) in data.iter().enumerate() {
        let c = counit_eps(e, d)?;
        for x in 0..n {
            for y in 0..n {
                if !c.bijective[i2(n, x, y)] {
                    witnesses.push(("counit", p, alloc::vec![x, y]));
                }
            }
        }
        report.extend(c.report);
    }
    let probes_bijective = witnesses.is_empty();
    Ok(DescentEquivalence { faithfully_flat, probes_bijective, agree: faithfully_flat == probes_bijective, witnesses, report })
}

/// A left `A`-module with `τ_xy: M_xy -> A_xy ⊗_{B_y} M_yy`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftDescentDatum {
    pub m: LeftModule,
    pub tau: Vec<Mat>,
    pub tensors: Vec<Quotient>,
}

impl LeftDescentDatum {
    pub fn new(e: &Extension, m: LeftModule, tau: Vec<Mat>) -> Result<LeftDescentDatum, Error> {
        let n = e.n();
        if tau.len() != n * n || m.dims.n() != n {
            return Err(Error::Shape("left descent datum component count".into()));
        }
        let mut tensors = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let t = left_carrier(e, &m, x, y);
                if tau[i2(n, x, y)].shape() != (t.dim(), m.dim(x, y)) {
                    return Err(Error::Shape(format!("left descent map at ({},{})", x, y)));
                }
                tensors.push(t);
            }
        }
        Ok(LeftDescentDatum { m, tau, tensors })
    }

    pub fn n(&self) -> usize {
        self.m.dims.n()
    }
    pub fn tau(&self, x: usize, y: usize) -> &Mat {
        &self.tau[i2(self.n(), x, y)]
    }

    /// The equivalent right descent datum over the opposite extension:
    /// `σ^op_xy = swap ∘ τ_yx`.
    pub fn to_op(&self, e: &Extension) -> Result<DescentDatum, Error> {
        let f = e.field();
        let n = self.n();
        let eo = e.op();
        let mo = self.m.to_right_op(&e.a);
        let mut sigma = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let t = eo.carrier(&mo, x, y);
                let src = &self.tensors[i2(n, y, x)];
                let amb = Mat::swap(f, e.a.dim(y, x), self.m.dim(x, x)).mul(&src.section).mul(self.tau(y, x));
                sigma.push(t.projection.mul(&amb));
            }
        }
        DescentDatum::new(&eo, mo, sigma)
    }

    /// Inverse of [`LeftDescentDatum::to_op`]; `d` lives over `e.op()`.
    pub fn from_op(e: &Extension, d: &DescentDatum) -> Result<LeftDescentDatum, Error> {
        let f = e.field();
        let n = e.n();
        let eo = e.op();
        let m = d.m.to_left_op(&eo.a);
        let mut tau = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let t = left_carrier(e, &m, x, y);
                let amb = Mat::swap(f, d.m.dim(y, y), eo.a.dim(y, x)).mul(&d.sigma_ambient(y, x));
                tau.push(t.projection.mul(&amb));
            }
        }
        LeftDescentDatum::new(e, m, tau)
    }

    pub fn validate(&self, e: &Extension) -> Report {
        match self.to_op(e) {
            Ok(d) => d.validate(&e.op()),
            Err(_) => {
                let mut r = Report::new();
                r.push("left descent shape", &[], &[]);
                r
            }
        }
    }
}

/// `A_xy ⊗_{B_y} M_yy`.
pub fn left_carrier(e: &Extension, m: &LeftModule, x: usize, y: usize) -> Quotient {
    tensor_over_diag(e.field(), &e.right_on(x, y), &e.restrict_left(m, y, y))
}

/// `A` as a left module with `τ_xy(a) = a ⊗ 1_y`.
pub fn regular_left_datum(e: &Extension) -> Result<LeftDescentDatum, Error> {
    let a = &e.a;
    let n = e.n();
    let m = LeftModule::regular(a);
    let mut tau = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let t = left_carrier(e, &m, x, y);
            tau.push(t.projection.mul(&a.id(x, y).kron(a.unit(y))));
        }
    }
    LeftDescentDatum::new(e, m, tau)
}

/// `A_xy ⊗_{B_y} N_y` for left diagonal modules, built through the opposite extension.
pub fn functor_f_left(e: &Extension, nmod: &DiagModule) -> Result<LeftDescentDatum, Error> {
    let ind = functor_f(&e.op(), &nmod.flip())?;
    LeftDescentDatum::from_op(e, &ind.datum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{cyclic_indiscrete, q, scalar_ext};
    use crate::lincat::ObjSet;
    use alloc::vec;

    fn gpd2() -> Extension {
        scalar_ext(&cyclic_indiscrete(2, 1).base.alg)
    }

    fn c2() -> Extension {
        scalar_ext(&cyclic_indiscrete(1, 2).base.alg)
    }

    /// `k -> 0`: the object has a zero endomorphism algebra.
    fn degenerate() -> Extension {
        let f = q();
        let a = LinCat::from_fn(f, ObjSet::indexed(1), XFam::from_fn(1, |_, _| 0), |_, _, _| Mat::zeros(f, 0, 0), |_| Mat::zeros(f, 0, 1))
            .unwrap();
        let b = DiagAlgebra { objs: ObjSet::indexed(1), algs: vec![Algebra::scalars(f)] };
        Extension::new(b, a, vec![Mat::zeros(f, 0, 1)]).unwrap()
    }

    #[test]
    fn regular_datum_is_valid() {
        for e in [gpd2(), c2(), degenerate()] {
            assert!(e.validate().is_ok());
            let d = regular_datum(&e).unwrap();
            assert!(d.validate(&e).is_ok());
        }
    }

    #[test]
    fn induced_data_are_valid() {
        let e = gpd2();
        let ind = functor_f(&e, &DiagModule::regular(&e.b, Side::Right)).unwrap();
        assert!(ind.datum.validate(&e).is_ok());
        assert_eq!(ind.datum.m.dims, e.a.dims().clone());
        let e2 = c2();
        let ind2 = functor_f(&e2, &DiagModule::free(&e2.b, Side::Right, 2)).unwrap();
        assert!(ind2.datum.validate(&e2).is_ok());
        assert_eq!(ind2.datum.m.dim(0, 0), 4);
    }

    #[test]
    fn zero_descent_map_is_not_counital() {
        let e = c2();
        let d = regular_datum(&e).unwrap();
        let sigma = d.sigma.iter().map(|s| Mat::zeros(q(), s.rows(), s.cols())).collect();
        let bad = DescentDatum::new(&e, d.m.clone(), sigma).unwrap();
        assert!(bad.validate(&e).has("descent map counital"));
    }

    #[test]
    fn invariants_of_group_algebra() {
        let e = gpd2();
        let g = functor_g(&e, &regular_datum(&e).unwrap()).unwrap();
        for x in 0..2 {
            assert_eq!(g.inclusion[x], e.a.unit(x).clone());
        }
        let e = c2();
        let g = functor_g(&e, &regular_datum(&e).unwrap()).unwrap();
        assert_eq!(g.inclusion[0].cols(), 1);
    }

    #[test]
    fn unit_and_counit_on_group_algebras() {
        for e in [gpd2(), c2()] {
            let b = DiagModule::regular(&e.b, Side::Right);
            let u = unit_eta(&e, &b).unwrap();
            assert!(u.all_bijective() && u.report.is_ok());
            let c = counit_eps(&e, &functor_f(&e, &b).unwrap().datum).unwrap();
            assert!(c.all_bijective() && c.report.is_ok());
            let r = descent_equivalence_report(&e, &[b.clone(), DiagModule::free(&e.b, Side::Right, 2)], &[regular_datum(&e).unwrap()])
                .unwrap();
            assert!(r.faithfully_flat && r.probes_bijective && r.agree);
        }
    }

    #[test]
    fn degenerate_object_breaks_the_unit() {
        let e = degenerate();
        assert!(!e.diagonal_faithfully_flat());
        let u = unit_eta(&e, &DiagModule::regular(&e.b, Side::Right)).unwrap();
        assert!(!u.bijective[0]);
        let r = descent_equivalence_report(&e, &[DiagModule::regular(&e.b, Side::Right)], &[]).unwrap();
        assert!(!r.faithfully_flat && !r.probes_bijective && r.agree);
        assert_eq!(r.witnesses[0].0, "unit");
    }

    #[test]
    fn induced_maps_are_morphisms() {
        let e = c2();
        let n1 = DiagModule::regular(&e.b, Side::Right);
        let n2 = DiagModule::free(&e.b, Side::Right, 2);
        let (f1, f2) = (functor_f(&e, &n1).unwrap(), functor_f(&e, &n2).unwrap());
        let g = vec![Mat::from_i64(q(), 2, 1, &[3, -1])];
        let fg = functor_f_map(&e, &f1, &f2, &g);
        assert!(descent_morphism_check(&e, &f1.datum, &f2.datum, &fg).is_ok());
        let wrong = vec![fg[0].scale(&q().int(2)).add(&Mat::from_i64(q(), 4, 2, &[1, 0, 0, 0, 0, 0, 0, 0]))];
        assert!(!descent_morphism_check(&e, &f1.datum, &f2.datum, &wrong).is_ok());
    }

    #[test]
    fn left_data() {
        for e in [gpd2(), c2()] {
            let l = regular_left_datum(&e).unwrap();
            assert!(l.validate(&e).is_ok());
            let back = LeftDescentDatum::from_op(&e, &l.to_op(&e).unwrap()).unwrap();
            assert_eq!(back, l);
            let fl = functor_f_left(&e, &DiagModule::free(&e.b, Side::Left, 2)).unwrap();
            assert!(fl.validate(&e).is_ok());
            let zero = l.tau.iter().map(|t| Mat::zeros(q(), t.rows(), t.cols())).collect();
            let bad = LeftDescentDatum::new(&e, l.m.clone(), zero).unwrap();
            assert!(bad.validate(&e).has("descent map counital"));
        }
    }

    /// Upper triangular 2x2 matrices over `k[t]/(t²)` with `t ↦ E12`; as a
    /// left module this is `k ⊕ B`, which is not flat.
    #[test]
    fn non_flat_counit_is_recorded_not_asserted() {
        use crate::fixtures::{dual_numbers, single};
        let f = q();
        let mut m = Mat::zeros(f, 3, 9);
        for (i, j, k) in [(0, 0, 0), (0, 1, 1), (1, 2, 1), (2, 2, 2)] {
            m.set(k, i * 3 + j, f.one());
        }
        let t2 = Algebra::new(3, m, Mat::from_i64(f, 3, 1, &[1, 0, 1])).unwrap();
        let b = DiagAlgebra { objs: ObjSet::indexed(1), algs: vec![dual_numbers()] };
        let e = Extension::new(b, single(&t2), vec![Mat::from_i64(f, 3, 2, &[1, 0, 0, 1, 1, 0])]).unwrap();
        assert!(e.validate().is_ok());
        assert!(!e.classify_left(0, 0).flat);
        assert!(descent_equivalence_report(&e, &[], &[]).is_err());
        let simple = BModule { side: Side::Right, dim: 1, actions: vec![Mat::identity(f, 1), Mat::zeros(f, 1, 1)] };
        let ind = functor_f(&e, &DiagModule { mods: vec![simple] }).unwrap();
        assert!(ind.datum.validate(&e).is_ok());
        let eps = counit_eps(&e, &ind.datum).unwrap();
        assert_eq!(eps.bijective.len(), 1);
        assert!(eps.report.is_ok());
    }
}
