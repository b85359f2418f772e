//! Linear categories over a finite object set, diagonal algebras, modules,
//! balanced tensor products and projectivity tests.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::linalg::{quotient_by, Mat, Quotient};
use crate::report::Report;
use crate::scalar::Field;

#[inline]
pub(crate) fn i2(n: usize, x: usize, y: usize) -> usize {
    x * n + y
}

#[inline]
pub(crate) fn i3(n: usize, x: usize, y: usize, z: usize) -> usize {
    (x * n + y) * n + z
}

/// Ordered, duplicate-free object labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjSet {
    labels: Vec<String>,
}

impl ObjSet {
    pub fn new(labels: Vec<String>) -> Result<ObjSet, Error> {
        if labels.is_empty() {
            return Err(Error::Invalid("empty object set".into()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Invalid(format!("duplicate object {}", l)));
            }
        }
        Ok(ObjSet { labels })
    }

    /// Objects named `0, 1, ..., n-1`.
    pub fn indexed(n: usize) -> ObjSet {
        ObjSet { labels: (0..n).map(|i| format!("{}", i)).collect() }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name)
    }
}

/// Dimensions of a family `(M_xy)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XFam {
    n: usize,
    dims: Vec<usize>,
}

impl XFam {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> usize) -> XFam {
        let mut dims = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                dims.push(f(x, y));
            }
        }
        XFam { n, dims }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self, x: usize, y: usize) -> usize {
        self.dims[i2(self.n, x, y)]
    }

    pub fn transpose(&self) -> XFam {
        XFam::from_fn(self.n, |x, y| self.dim(y, x))
    }
}

/// Dimensions of a family `(N_x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagFam {
    pub dims: Vec<usize>,
}

/// A k-linear category: spaces `A_xy`, compositions `m_xyz: A_xy ⊗ A_yz -> A_xz`
/// and units `1_x ∈ A_xx`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinCat {
    field: Field,
    objs: ObjSet,
    dims: XFam,
    mult: Vec<Mat>,
    unit: Vec<Mat>,
}

impl LinCat {
    pub fn new(field: Field, objs: ObjSet, dims: XFam, mult: Vec<Mat>, unit: Vec<Mat>) -> Result<LinCat, Error> {
        let n = objs.len();
        if dims.n() != n || mult.len() != n * n * n || unit.len() != n {
            return Err(Error::Shape("linear category component count".into()));
        }
        for x in 0..n {
            if unit[x].shape() != (dims.dim(x, x), 1) {
                return Err(Error::Shape(format!("unit at {}", x)));
            }
            for y in 0..n {
                for z in 0..n {
                    let m = &mult[i3(n, x, y, z)];
                    if m.shape() != (dims.dim(x, z), dims.dim(x, y) * dims.dim(y, z)) {
                        return Err(Error::Shape(format!("composition at ({},{},{})", x, y, z)));
                    }
                }
            }
        }
        Ok(LinCat { field, objs, dims, mult, unit })
    }

    pub fn from_fn(
        field: Field,
        objs: ObjSet,
        dims: XFam,
        mut mult: impl FnMut(usize, usize, usize) -> Mat,
        mut unit: impl FnMut(usize) -> Mat,
    ) -> Result<LinCat, Error> {
        let n = objs.len();
        let mut ms = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    ms.push(mult(x, y, z));
                }
            }
        }
        let us = (0..n).map(&mut unit).collect();
        LinCat::new(field, objs, dims, ms, us)
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn objs(&self) -> &ObjSet {
        &self.objs
    }
    pub fn n(&self) -> usize {
        self.objs.len()
    }
    pub fn dims(&self) -> &XFam {
        &self.dims
    }
    pub fn dim(&self, x: usize, y: usize) -> usize {
        self.dims.dim(x, y)
    }
    pub fn mult(&self, x: usize, y: usize, z: usize) -> &Mat {
        &self.mult[i3(self.n(), x, y, z)]
    }
    pub fn unit(&self, x: usize) -> &Mat {
        &self.unit[x]
    }

    pub fn id(&self, x: usize, y: usize) -> Mat {
        Mat::identity(self.field, self.dim(x, y))
    }

    /// `a' ↦ a a'` as a map `A_yz -> A_xz`, for `a ∈ A_xy`.
    pub fn left_mul(&self, x: usize, y: usize, z: usize, a: &Mat) -> Mat {
        self.mult(x, y, z).mul(&a.kron(&self.id(y, z)))
    }

    /// `a ↦ a b` as a map `A_xy -> A_xz`, for `b ∈ A_yz`.
    pub fn right_mul(&self, x: usize, y: usize, z: usize, b: &Mat) -> Mat {
        self.mult(x, y, z).mul(&self.id(x, y).kron(b))
    }

    pub fn validate(&self) -> Report {
        let n = self.n();
        let mut r = Report::new();
        for x in 0..n {
            for y in 0..n {
                let d = self.dim(x, y);
                let id = self.id(x, y);
                let left = self.mult(x, x, y).mul(&self.unit(x).kron(&id));
                r.check_eq("left unit", &[x, y], &left, &id, &[d]);
                let right = self.mult(x, y, y).mul(&id.kron(self.unit(y)));
                r.check_eq("right unit", &[x, y], &right, &id, &[d]);
                for z in 0..n {
                    for u in 0..n {
                        let lhs = self.mult(x, z, u).mul(&self.mult(x, y, z).kron(&self.id(z, u)));
                        let rhs = self.mult(x, y, u).mul(&self.id(x, y).kron(self.mult(y, z, u)));
                        r.check_eq("associativity", &[x, y, z, u], &lhs, &rhs, &[d, self.dim(y, z), self.dim(z, u)]);
                    }
                }
            }
        }
        r
    }

    /// The opposite category: `A^op_xy = A_yx`, `a ·op b = b a`.
    pub fn op(&self) -> LinCat {
        let f = self.field;
        LinCat::from_fn(
            f,
            self.objs.clone(),
            self.dims.transpose(),
            |x, y, z| self.mult(z, y, x).mul(&Mat::swap(f, self.dim(y, x), self.dim(z, y))),
            |x| self.unit(x).clone(),
        )
        .expect("opposite of a well-shaped category")
    }

    /// Replace one composition tensor; used to build perturbed instances.
    pub fn with_mult(&self, x: usize, y: usize, z: usize, m: Mat) -> Result<LinCat, Error> {
        let mut mult = self.mult.clone();
        mult[i3(self.n(), x, y, z)] = m;
        LinCat::new(self.field, self.objs.clone(), self.dims.clone(), mult, self.unit.clone())
    }
}

/// A finite-dimensional unital algebra given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    pub dim: usize,
    pub mult: Mat,
    pub unit: Mat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Algebra {
    pub fn new(dim: usize, mult: Mat, unit: Mat) -> Result<Algebra, Error> {
        if mult.shape() != (dim, dim * dim) || unit.shape() != (dim, 1) {
            return Err(Error::Shape("algebra structure constants".into()));
        }
        Ok(Algebra { dim, mult, unit })
    }

    /// The ground field as an algebra.
    pub fn scalars(field: Field) -> Algebra {
        Algebra { dim: 1, mult: Mat::identity(field, 1), unit: Mat::identity(field, 1) }
    }

    pub fn field(&self) -> Field {
        self.mult.field()
    }

    pub fn validate(&self) -> Report {
        let f = self.field();
        let id = Mat::identity(f, self.dim);
        let mut r = Report::new();
        r.check_eq("left unit", &[], &self.mult.mul(&self.unit.kron(&id)), &id, &[self.dim]);
        r.check_eq("right unit", &[], &self.mult.mul(&id.kron(&self.unit)), &id, &[self.dim]);
        let lhs = self.mult.mul(&self.mult.kron(&id));
        let rhs = self.mult.mul(&id.kron(&self.mult));
        r.check_eq("associativity", &[], &lhs, &rhs, &[self.dim; 3]);
        r
    }

    pub fn op(&self) -> Algebra {
        let f = self.field();
        Algebra { dim: self.dim, mult: self.mult.mul(&Mat::swap(f, self.dim, self.dim)), unit: self.unit.clone() }
    }

    /// Left multiplication by the element `b`.
    pub fn lmul(&self, b: &Mat) -> Mat {
        self.mult.mul(&b.kron(&Mat::identity(self.field(), self.dim)))
    }

    /// Right multiplication by the element `b`.
    pub fn rmul(&self, b: &Mat) -> Mat {
        self.mult.mul(&Mat::identity(self.field(), self.dim).kron(b))
    }

    /// The algebra acting on itself from the given side.
    pub fn regular(&self, side: Side) -> BModule {
        let f = self.field();
        let actions = (0..self.dim)
            .map(|k| {
                let e = Mat::unit(f, self.dim, k);
                match side {
                    Side::Left => self.lmul(&e),
                    Side::Right => self.rmul(&e),
                }
            })
            .collect();
        BModule { side, dim: self.dim, actions }
    }
}

/// A module over one algebra `B_x`, given by the operators of its basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BModule {
    pub side: Side,
    pub dim: usize,
    pub actions: Vec<Mat>,
}

impl BModule {
    /// From an action map `V ⊗ B -> V` (right) or `B ⊗ V -> V` (left).
    pub fn from_action(alg: &Algebra, side: Side, dim: usize, act: &Mat) -> BModule {
        let f = alg.field();
        let id = Mat::identity(f, dim);
        let actions = (0..alg.dim)
            .map(|k| {
                let e = Mat::unit(f, alg.dim, k);
                match side {
                    Side::Left => act.mul(&e.kron(&id)),
                    Side::Right => act.mul(&id.kron(&e)),
                }
            })
            .collect();
        BModule { side, dim, actions }
    }

    /// The operator of an arbitrary element `b = Σ b_k e_k`.
    pub fn op_of(&self, field: Field, b: &Mat) -> Mat {
        let mut out = Mat::zeros(field, self.dim, self.dim);
        for (k, a) in self.actions.iter().enumerate() {
            let c = b.get(k, 0);
            if !c.is_zero() {
                out = out.add(&a.scale(c));
            }
        }
        out
    }

    pub fn zero(field: Field, alg: &Algebra, side: Side) -> BModule {
        BModule { side, dim: 0, actions: vec![Mat::zeros(field, 0, 0); alg.dim] }
    }

    /// Direct sum of two modules on the same side.
    pub fn direct_sum(&self, o: &BModule, field: Field) -> BModule {
        let d = self.dim + o.dim;
        let actions = self
            .actions
            .iter()
            .zip(&o.actions)
            .map(|(a, b)| {
                let mut m = Mat::zeros(field, d, d);
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        m.set(i, j, a.get(i, j).clone());
                    }
                }
                for i in 0..o.dim {
                    for j in 0..o.dim {
                        m.set(self.dim + i, self.dim + j, b.get(i, j).clone());
                    }
                }
                m
            })
            .collect();
        BModule { side: self.side, dim: d, actions }
    }

    pub fn validate(&self, alg: &Algebra) -> Report {
        let f = alg.field();
        let mut r = Report::new();
        r.check_eq("module unit", &[], &self.op_of(f, &alg.unit), &Mat::identity(f, self.dim), &[self.dim]);
        for j in 0..alg.dim {
            for k in 0..alg.dim {
                let prod = alg.mult.mul(&Mat::unit(f, alg.dim * alg.dim, j * alg.dim + k));
                let lhs = self.op_of(f, &prod);
                let rhs = match self.side {
                    Side::Left => self.actions[j].mul(&self.actions[k]),
                    Side::Right => self.actions[k].mul(&self.actions[j]),
                };
                r.check_eq("module associativity", &[j, k], &lhs, &rhs, &[self.dim]);
            }
        }
        r
    }
}

/// `V_0 ⊗_{B} V_1 ⊗_{B'} ... ` where junction `j` lists pairs
/// (right operator on factor `j`, left operator on factor `j+1`), one pair per
/// basis element of the algebra balanced over. An empty junction is a plain `⊗`.
pub fn tensor_chain(field: Field, dims: &[usize], junctions: &[Vec<(Mat, Mat)>]) -> Quotient {
    assert_eq!(junctions.len() + 1, dims.len(), "junction count");
    let total: usize = dims.iter().product();
    let mut rels = Vec::new();
    for (j, pairs) in junctions.iter().enumerate() {
        let before: usize = dims[..j].iter().product();
        let after: usize = dims[j + 2..].iter().product();
        let ib = Mat::identity(field, before);
        let ia = Mat::identity(field, after);
        for (r, l) in pairs {
            let local = r.kron(&Mat::identity(field, dims[j + 1])).sub(&Mat::identity(field, dims[j]).kron(l));
            let full = ib.kron(&local).kron(&ia);
            rels.push(full.transpose());
        }
    }
    let relations = Mat::vstack(field, total, &rels);
    quotient_by(field, total, &relations)
}

/// `M ⊗_{B} N` for a right module `M` and a left module `N` over the same algebra.
pub fn tensor_over_diag(field: Field, m: &BModule, n: &BModule) -> Quotient {
    let pairs = m.actions.iter().cloned().zip(n.actions.iter().cloned()).collect();
    tensor_chain(field, &[m.dim, n.dim], &[pairs])
}

/// Basis of the maps `f: M -> N` commuting with the algebra action.
pub fn hom_b_linear(field: Field, m: &BModule, n: &BModule) -> Vec<Mat> {
    let (dm, dn) = (m.dim, n.dim);
    if dm == 0 || dn == 0 {
        return Vec::new();
    }
    let mut rows = Vec::new();
    for (lm, ln) in m.actions.iter().zip(&n.actions) {
        let a = Mat::identity(field, dn).kron(&lm.transpose());
        let b = ln.kron(&Mat::identity(field, dm));
        rows.push(a.sub(&b));
    }
    let c = Mat::vstack(field, dn * dm, &rows);
    let k = c.kernel_basis();
    (0..k.cols()).map(|j| k.col(j).reshape(dn, dm)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub finite_projective: bool,
    pub flat: bool,
    pub generator: bool,
    pub faithfully_flat: bool,
}

fn submodule_span(field: Field, m: &BModule, gens: &[Mat]) -> Mat {
    let mut cols = Vec::new();
    for g in gens {
        for a in &m.actions {
            cols.push(a.mul(g));
        }
        cols.push(g.clone());
    }
    Mat::hstack(field, m.dim, &cols)
}

/// A small generating set, chosen greedily among basis vectors and 0/1 sums of them.
pub fn generators(field: Field, m: &BModule) -> Vec<Mat> {
    let d = m.dim;
    let mut candidates: Vec<Mat> = (0..d).map(|i| Mat::unit(field, d, i)).collect();
    if d <= 8 {
        let mut masks: Vec<u32> = (1u32..(1 << d)).filter(|x| x.count_ones() >= 2).collect();
        masks.sort_by_key(|x| (core::cmp::Reverse(x.count_ones()), *x));
        for mask in masks {
            candidates.push(Mat::from_fn(field, d, 1, |i, _| if mask & (1 << i) != 0 { field.one() } else { field.zero() }));
        }
    }
    let mut gens: Vec<Mat> = Vec::new();
    let mut current = 0;
    while current < d {
        let mut best = None;
        for (ci, c) in candidates.iter().enumerate() {
            let mut trial = gens.clone();
            trial.push(c.clone());
            let r = submodule_span(field, m, &trial).rank();
            if r > current && best.is_none_or(|(_, br)| r > br) {
                best = Some((ci, r));
            }
        }
        let (ci, r) = best.expect("basis vectors generate");
        gens.push(candidates[ci].clone());
        current = r;
    }
    gens
}

/// The cover `B^n -> M` sending the `j`-th copy of `b` to `b·g_j` (or `g_j·b`).
fn free_cover(field: Field, alg: &Algebra, m: &BModule, gens: &[Mat]) -> (Mat, BModule) {
    let n = gens.len();
    let db = alg.dim;
    let mut cols = Vec::with_capacity(n * db);
    for g in gens {
        for a in &m.actions {
            cols.push(a.mul(g));
        }
    }
    let pi = Mat::hstack(field, m.dim, &cols);
    let reg = alg.regular(m.side);
    let free = BModule { side: m.side, dim: n * db, actions: reg.actions.iter().map(|a| Mat::identity(field, n).kron(a)).collect() };
    (pi, free)
}

/// A module map `s: M -> B^n` with `π s = id`, if one exists.
fn splitting(field: Field, alg: &Algebra, m: &BModule, gens: &[Mat]) -> Option<Mat> {
    let (pi, free) = free_cover(field, alg, m, gens);
    let (dm, df) = (m.dim, free.dim);
    let mut rows = vec![pi.kron(&Mat::identity(field, dm))];
    let mut rhs = vec![Mat::identity(field, dm).vectorize()];
    for (lm, lf) in m.actions.iter().zip(&free.actions) {
        rows.push(Mat::identity(field, df).kron(&lm.transpose()).sub(&lf.kron(&Mat::identity(field, dm))));
        rhs.push(Mat::zeros(field, df * dm, 1));
    }
    let c = Mat::vstack(field, df * dm, &rows);
    let v = Mat::vstack(field, 1, &rhs);
    c.solve(&v).ok().flatten().map(|s| s.reshape(df, dm))
}

/// Decide projectivity and the generator property of a module over `alg`.
pub fn classify_module(field: Field, alg: &Algebra, m: &BModule) -> Classification {
    let finite_projective = m.dim == 0 || splitting(field, alg, m, &generators(field, m)).is_some();
    let reg = alg.regular(m.side);
    let duals = hom_b_linear(field, m, &reg);
    let mut images = Vec::new();
    for f in &duals {
        images.push(f.clone());
    }
    let span = Mat::hstack(field, alg.dim, &images);
    let generator = span.rank() == alg.dim;
    Classification { finite_projective, flat: finite_projective, generator, faithfully_flat: finite_projective && generator }
}

/// Pairs `(e_i*, e_i)` with `Σ e_i*(m) e_i = m`; functionals are `dim B x dim M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualBasis {
    pub pairs: Vec<(Mat, Mat)>,
}

impl DualBasis {
    /// `m ↦ Σ_i e_i*(m)·e_i` (left) or `Σ_i e_i·e_i*(m)` (right) as a matrix.
    pub fn reconstruction(&self, field: Field, m: &BModule) -> Mat {
        let mut out = Mat::zeros(field, m.dim, m.dim);
        for (fun, e) in &self.pairs {
            for (t, a) in m.actions.iter().enumerate() {
                let row = fun.select_rows(&[t]);
                out = out.add(&a.mul(e).mul(&row));
            }
        }
        out
    }
}

/// Extract a dual basis from a splitting of a free cover; both identities
/// of the dual-basis lemma are checked before returning.
pub fn dual_basis(field: Field, alg: &Algebra, m: &BModule) -> Result<DualBasis, Error> {
    if m.dim == 0 {
        return Ok(DualBasis { pairs: Vec::new() });
    }
    let gens = generators(field, m);
    let s = splitting(field, alg, m, &gens)
        .ok_or_else(|| Error::NotProjective(format!("no splitting of the free cover on {} generators", gens.len())))?;
    let db = alg.dim;
    let pairs: Vec<(Mat, Mat)> =
        gens.iter().enumerate().map(|(i, g)| (s.select_rows(&(i * db..(i + 1) * db).collect::<Vec<_>>()), g.clone())).collect();
    let basis = DualBasis { pairs };
    if basis.reconstruction(field, m) != Mat::identity(field, m.dim) {
        return Err(Error::NotProjective("dual basis does not reconstruct".into()));
    }
    let reg = alg.regular(m.side);
    for mstar in hom_b_linear(field, m, &reg) {
        let mut acc = Mat::zeros(field, db, m.dim);
        for (fun, e) in &basis.pairs {
            let c = mstar.mul(e);
            let mul = match m.side {
                Side::Left => alg.rmul(&c),
                Side::Right => alg.lmul(&c),
            };
            acc = acc.add(&mul.mul(fun));
        }
        if acc != mstar {
            return Err(Error::NotProjective("dual basis fails on a functional".into()));
        }
    }
    Ok(basis)
}

/// The evaluation isomorphism `P ⊗_B M -> Hom_B(M*, P)` for a right module
/// `P` and a finitely generated projective left module `M`.
#[derive(Clone, Debug)]
pub struct EvalIso {
    field: Field,
    pub tensor: Quotient,
    /// Basis of `M* = _B Hom(M, B)`.
    pub duals: Vec<Mat>,
    pub basis: DualBasis,
    p_dim: usize,
    m_dim: usize,
    forward: Mat,
}

impl EvalIso {
    pub fn new(field: Field, alg: &Algebra, p: &BModule, m: &BModule) -> Result<EvalIso, Error> {
        if p.side != Side::Right || m.side != Side::Left {
            return Err(Error::Invalid("evaluation needs a right and a left module".into()));
        }
        let basis = dual_basis(field, alg, m)?;
        let duals = hom_b_linear(field, m, &alg.regular(Side::Left));
        let tensor = tensor_over_diag(field, p, m);
        let r = duals.len();
        let mut amb = Mat::zeros(field, p.dim * r, p.dim * m.dim);
        for (s, f) in duals.iter().enumerate() {
            let mut block = Mat::zeros(field, p.dim, p.dim * m.dim);
            for (t, a) in p.actions.iter().enumerate() {
                block = block.add(&a.kron(&f.select_rows(&[t])));
            }
            for i in 0..p.dim {
                for j in 0..p.dim * m.dim {
                    amb.set(i * r + s, j, block.get(i, j).clone());
                }
            }
        }
        let forward = tensor.descend(&amb)?;
        Ok(EvalIso { field, tensor, duals, basis, p_dim: p.dim, m_dim: m.dim, forward })
    }

    /// `α(ξ)` as a `dim P x dim M*` matrix in the basis of `M*`.
    pub fn apply(&self, xi: &Mat) -> Mat {
        self.forward.mul(xi).reshape(self.p_dim, self.duals.len())
    }

    /// `α(ξ)(m*) = p·m*(m)` for a functional given as a `dim B x dim M` matrix.
    pub fn evaluate(&self, xi: &Mat, mstar: &Mat) -> Result<Mat, Error> {
        let coords = self.coords(mstar)?;
        Ok(self.apply(xi).mul(&coords))
    }

    fn coords(&self, mstar: &Mat) -> Result<Mat, Error> {
        let f = self.field;
        let cols: Vec<Mat> = self.duals.iter().map(Mat::vectorize).collect();
        let b = Mat::hstack(f, mstar.rows() * mstar.cols(), &cols);
        b.solve(&mstar.vectorize())?.ok_or_else(|| Error::Invalid("not a module map".into()))
    }

    /// `α⁻¹(g) = Σ_i g(e_i*) ⊗ e_i`.
    pub fn inverse(&self, g: &Mat) -> Result<Mat, Error> {
        let mut amb = Mat::zeros(self.field, self.p_dim * self.m_dim, 1);
        for (fun, e) in &self.basis.pairs {
            let c = self.coords(fun)?;
            amb = amb.add(&g.mul(&c).kron(e));
        }
        Ok(self.tensor.projection.mul(&amb))
    }
}

/// A diagonal category: one algebra per object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagAlgebra {
    pub objs: ObjSet,
    pub algs: Vec<Algebra>,
}

impl DiagAlgebra {
    pub fn field(&self) -> Field {
        self.algs[0].field()
    }

    pub fn n(&self) -> usize {
        self.objs.len()
    }

    pub fn dim(&self, x: usize) -> usize {
        self.algs[x].dim
    }

    pub fn validate(&self) -> Report {
        let mut r = Report::new();
        for (x, a) in self.algs.iter().enumerate() {
            for mut v in a.validate().violations {
                v.at.insert(0, x);
                r.violations.push(v);
            }
        }
        r
    }

    pub fn op(&self) -> DiagAlgebra {
        DiagAlgebra { objs: self.objs.clone(), algs: self.algs.iter().map(Algebra::op).collect() }
    }

    /// The diagonal linear category with zero off-diagonal spaces.
    pub fn as_lincat(&self) -> LinCat {
        let f = self.field();
        let n = self.n();
        let dims = XFam::from_fn(n, |x, y| if x == y { self.dim(x) } else { 0 });
        LinCat::from_fn(
            f,
            self.objs.clone(),
            dims.clone(),
            |x, y, z| {
                if x == y && y == z {
                    self.algs[x].mult.clone()
                } else {
                    Mat::zeros(f, dims.dim(x, z), dims.dim(x, y) * dims.dim(y, z))
                }
            },
            |x| self.algs[x].unit.clone(),
        )
        .expect("diagonal category shapes")
    }
}

/// A right module `ψ_xyz: M_xy ⊗ A_yz -> M_xz` over a linear category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightModule {
    pub dims: XFam,
    pub act: Vec<Mat>,
}

/// A left module `A_xy ⊗ M_yz -> M_xz` over a linear category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftModule {
    pub dims: XFam,
    pub act: Vec<Mat>,
}

impl RightModule {
    pub fn act(&self, x: usize, y: usize, z: usize) -> &Mat {
        &self.act[i3(self.dims.n(), x, y, z)]
    }

    pub fn dim(&self, x: usize, y: usize) -> usize {
        self.dims.dim(x, y)
    }

    /// `A` as a right module over itself.
    pub fn regular(a: &LinCat) -> RightModule {
        let n = a.n();
        let mut act = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    act.push(a.mult(x, y, z).clone());
                }
            }
        }
        RightModule { dims: a.dims().clone(), act }
    }

    pub fn validate(&self, a: &LinCat) -> Report {
        let n = a.n();
        let f = a.field();
        let mut r = Report::new();
        for x in 0..n {
            for y in 0..n {
                let d = self.dim(x, y);
                let id = Mat::identity(f, d);
                r.check_eq("module unit", &[x, y], &self.act(x, y, y).mul(&id.kron(a.unit(y))), &id, &[d]);
                for z in 0..n {
                    for u in 0..n {
                        let lhs = self.act(x, z, u).mul(&self.act(x, y, z).kron(&a.id(z, u)));
                        let rhs = self.act(x, y, u).mul(&id.kron(a.mult(y, z, u)));
                        r.check_eq("module associativity", &[x, y, z, u], &lhs, &rhs, &[d, a.dim(y, z), a.dim(z, u)]);
                    }
                }
            }
        }
        r
    }

    /// The same data read as a left module over `A^op`.
    pub fn to_left_op(&self, a: &LinCat) -> LeftModule {
        let n = a.n();
        let f = a.field();
        let mut act = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    // A^op_xy ⊗ M^op_yz = A_yx ⊗ M_zy -> M_zx = M^op_xz
                    act.push(self.act(z, y, x).mul(&Mat::swap(f, a.dim(y, x), self.dim(z, y))));
                }
            }
        }
        LeftModule { dims: self.dims.transpose(), act }
    }
}

impl LeftModule {
    pub fn act(&self, x: usize, y: usize, z: usize) -> &Mat {
        &self.act[i3(self.dims.n(), x, y, z)]
    }

    pub fn dim(&self, x: usize, y: usize) -> usize {
        self.dims.dim(x, y)
    }

    pub fn regular(a: &LinCat) -> LeftModule {
        let r = RightModule::regular(a);
        LeftModule { dims: r.dims, act: r.act }
    }

    pub fn validate(&self, a: &LinCat) -> Report {
        let n = a.n();
        let f = a.field();
        let mut r = Report::new();
        for x in 0..n {
            for y in 0..n {
                let d = self.dim(x, y);
                let id = Mat::identity(f, d);
                r.check_eq("module unit", &[x, y], &self.act(x, x, y).mul(&a.unit(x).kron(&id)), &id, &[d]);
                for z in 0..n {
                    for u in 0..n {
                        // (ab)m = a(bm) for a ∈ A_xy, b ∈ A_yz, m ∈ M_zu
                        let lhs = self.act(x, z, u).mul(&a.mult(x, y, z).kron(&Mat::identity(f, self.dim(z, u))));
                        let rhs = self.act(x, y, u).mul(&a.id(x, y).kron(self.act(y, z, u)));
                        r.check_eq("module associativity", &[x, y, z, u], &lhs, &rhs, &[a.dim(x, y), a.dim(y, z), self.dim(z, u)]);
                    }
                }
            }
        }
        r
    }

    /// The same data read as a right module over `A^op`.
    pub fn to_right_op(&self, a: &LinCat) -> RightModule {
        let n = a.n();
        let f = a.field();
        let mut act = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    // M^op_xy ⊗ A^op_yz = M_yx ⊗ A_zy -> M_zx = M^op_xz
                    act.push(self.act(z, y, x).mul(&Mat::swap(f, self.dim(y, x), a.dim(z, y))));
                }
            }
        }
        RightModule { dims: self.dims.transpose(), act }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    /// k × k with idempotent basis e1, e2.
    fn kxk() -> Algebra {
        let f = q();
        let mut m = Mat::zeros(f, 2, 4);
        m.set(0, 0, f.one());
        m.set(1, 3, f.one());
        Algebra::new(2, m, Mat::from_i64(f, 2, 1, &[1, 1])).unwrap()
    }

    /// k[t]/(t²) with basis 1, t.
    fn dual_numbers() -> Algebra {
        let f = q();
        let m = Mat::from_i64(f, 2, 4, &[1, 0, 0, 0, 0, 1, 1, 0]);
        Algebra::new(2, m, Mat::from_i64(f, 2, 1, &[1, 0])).unwrap()
    }

    #[test]
    fn algebras_are_valid() {
        assert!(kxk().validate().is_ok());
        assert!(dual_numbers().validate().is_ok());
        assert!(kxk().regular(Side::Left).validate(&kxk()).is_ok());
        assert!(dual_numbers().regular(Side::Right).validate(&dual_numbers()).is_ok());
    }

    #[test]
    fn tensor_examples() {
        let f = q();
        let k = Algebra::scalars(f);
        let m = k.regular(Side::Right).direct_sum(&k.regular(Side::Right), f);
        let n = k.regular(Side::Left).direct_sum(&k.regular(Side::Left), f);
        assert_eq!(tensor_over_diag(f, &m, &n).dim(), 4);
        let b = kxk();
        let q2 = tensor_over_diag(f, &b.regular(Side::Right), &b.regular(Side::Left));
        assert_eq!(q2.dim(), 2);
        let d = dual_numbers();
        let t = tensor_over_diag(f, &d.regular(Side::Right), &d.regular(Side::Left));
        assert_eq!(t.dim(), 2);
    }

    #[test]
    fn hom_examples() {
        let f = q();
        let k = Algebra::scalars(f);
        let m = k.regular(Side::Left).direct_sum(&k.regular(Side::Left), f);
        let n = BModule { side: Side::Left, dim: 3, actions: vec![Mat::identity(f, 3)] };
        assert_eq!(hom_b_linear(f, &m, &n).len(), 6);
        let b = kxk();
        assert_eq!(hom_b_linear(f, &b.regular(Side::Left), &b.regular(Side::Left)).len(), 2);
        assert!(hom_b_linear(f, &m, &BModule::zero(f, &k, Side::Left)).is_empty());
    }

    #[test]
    fn classify_examples() {
        let f = q();
        let b = kxk();
        let c = classify_module(f, &b, &b.regular(Side::Left));
        assert!(c.finite_projective && c.flat && c.generator && c.faithfully_flat);
        let k = Algebra::scalars(f);
        let z = classify_module(f, &k, &BModule::zero(f, &k, Side::Left));
        assert!(z.finite_projective && z.flat && !z.generator);
        let d = dual_numbers();
        let simple = BModule { side: Side::Left, dim: 1, actions: vec![Mat::identity(f, 1), Mat::zeros(f, 1, 1)] };
        assert!(simple.validate(&d).is_ok());
        assert!(!classify_module(f, &d, &simple).finite_projective);
        assert!(dual_basis(f, &d, &simple).is_err());
    }

    #[test]
    fn dual_basis_examples() {
        let f = q();
        let k = Algebra::scalars(f);
        let m = k.regular(Side::Left).direct_sum(&k.regular(Side::Left), f);
        let db = dual_basis(f, &k, &m).unwrap();
        assert_eq!(db.pairs.len(), 2);
        assert_eq!(db.pairs[0].1, Mat::unit(f, 2, 0));
        assert_eq!(db.pairs[0].0, Mat::from_i64(f, 1, 2, &[1, 0]));
        let b = kxk();
        let reg = dual_basis(f, &b, &b.regular(Side::Left)).unwrap();
        assert_eq!(reg.pairs.len(), 1);
        assert_eq!(reg.pairs[0].1, b.unit);
        assert_eq!(reg.pairs[0].0, Mat::identity(f, 2));
        let first = BModule { side: Side::Left, dim: 1, actions: vec![Mat::identity(f, 1), Mat::zeros(f, 1, 1)] };
        let one = dual_basis(f, &b, &first).unwrap();
        assert_eq!(one.pairs.len(), 1);
    }

    #[test]
    fn eval_iso_examples() {
        let f = q();
        let k = Algebra::scalars(f);
        let p = BModule { side: Side::Right, dim: 2, actions: vec![Mat::identity(f, 2)] };
        let m1 = k.regular(Side::Left);
        let iso = EvalIso::new(f, &k, &p, &m1).unwrap();
        let xi = Mat::from_i64(f, 2, 1, &[3, 5]);
        assert_eq!(iso.evaluate(&xi, &Mat::identity(f, 1)).unwrap(), xi);
        let m2 = m1.direct_sum(&m1, f);
        let iso2 = EvalIso::new(f, &k, &p, &m2).unwrap();
        let p_e1 = iso2.tensor.projection.mul(&Mat::from_i64(f, 2, 1, &[1, 0]).kron(&Mat::unit(f, 2, 0)));
        let e2star = Mat::from_i64(f, 1, 2, &[0, 1]);
        assert!(iso2.evaluate(&p_e1, &e2star).unwrap().is_zero());
        let xi = Mat::from_i64(f, 4, 1, &[1, -2, 7, 4]);
        assert_eq!(iso2.inverse(&iso2.apply(&xi)).unwrap(), xi);
    }
}
