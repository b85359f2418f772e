//! Clusters (families of linear categories on a common object set), their
//! modules, endoclusters, and the comparison with descent data.

use alloc::format;
use alloc::vec::Vec;

use crate::descent::{DescentDatum, DiagModule, Extension, Invariants, LeftDescentDatum, MapFamily};
use crate::error::Error;
use crate::linalg::{Mat, Quotient};
use crate::lincat::{dual_basis, hom_b_linear, i2, i3, tensor_over_diag, BModule, LinCat, ObjSet, RightModule, Side, XFam};
use crate::report::Report;
use crate::scalar::Field;

/// One linear category `A^x` per object `x`, all on the same objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cluster {
    pub cats: Vec<LinCat>,
}

impl Cluster {
    pub fn n(&self) -> usize {
        self.cats.len()
    }
    pub fn field(&self) -> Field {
        self.cats[0].field()
    }
    pub fn at(&self, x: usize) -> &LinCat {
        &self.cats[x]
    }

    /// Category laws of every `A^x`; violation indices are prefixed by `x`.
    pub fn validate(&self) -> Report {
        let mut r = Report::new();
        for (x, c) in self.cats.iter().enumerate() {
            if c.n() != self.n() {
                r.push("cluster object count", &[x], &[]);
                continue;
            }
            for mut v in c.validate().violations {
                v.at.insert(0, x);
                r.violations.push(v);
            }
        }
        r
    }

    pub fn op(&self) -> Cluster {
        Cluster { cats: self.cats.iter().map(LinCat::op).collect() }
    }
}

/// A right cluster module `M_xy ⊗ A^x_yz -> M_xz`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterModule {
    pub dims: XFam,
    pub act: Vec<Mat>,
}

impl ClusterModule {
    pub fn n(&self) -> usize {
        self.dims.n()
    }
    pub fn dim(&self, x: usize, y: usize) -> usize {
        self.dims.dim(x, y)
    }
    pub fn act(&self, x: usize, y: usize, z: usize) -> &Mat {
        &self.act[i3(self.n(), x, y, z)]
    }

    pub fn validate(&self, c: &Cluster) -> Report {
        let f = c.field();
        let n = c.n();
        let mut r = Report::new();
        for x in 0..n {
            let a = c.at(x);
            for y in 0..n {
                let d = self.dim(x, y);
                let id = Mat::identity(f, d);
                r.check_eq("cluster module unit", &[x, y], &self.act(x, y, y).mul(&id.kron(a.unit(y))), &id, &[d]);
                for z in 0..n {
                    for u in 0..n {
                        let lhs = self.act(x, z, u).mul(&self.act(x, y, z).kron(&a.id(z, u)));
                        let rhs = self.act(x, y, u).mul(&id.kron(a.mult(y, z, u)));
                        r.check_eq("cluster module associativity", &[x, y, z, u], &lhs, &rhs, &[d, a.dim(y, z), a.dim(z, u)]);
                    }
                }
            }
        }
        r
    }
}

/// `A`-linearity of a family `φ_xy: M_xy -> M'_xy`.
pub fn cluster_morphism_check(c: &Cluster, m: &ClusterModule, m2: &ClusterModule, phi: &[Mat]) -> Report {
    let n = c.n();
    let mut r = Report::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = phi[i2(n, x, z)].mul(m.act(x, y, z));
                let rhs = m2.act(x, y, z).mul(&phi[i2(n, x, y)].kron(&c.at(x).id(y, z)));
                r.check_eq("cluster morphism linear", &[x, y, z], &lhs, &rhs, &[m.dim(x, y), c.at(x).dim(y, z)]);
            }
        }
    }
    r
}

/// An endocluster with its components presented by bases of linear maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoCluster {
    pub cluster: Cluster,
    pub side: Side,
    /// Component `(x,y,z)`: vectorized basis maps as columns.
    basis: Vec<Mat>,
    /// Shape of the maps in component `(x,y,z)`.
    shapes: Vec<(usize, usize)>,
}

impl EndoCluster {
    pub fn n(&self) -> usize {
        self.cluster.n()
    }

    /// Basis element `k` of `A^x_yz` as a matrix.
    pub fn element(&self, x: usize, y: usize, z: usize, k: usize) -> Mat {
        let i = i3(self.n(), x, y, z);
        let (r, c) = self.shapes[i];
        self.basis[i].col(k).reshape(r, c)
    }

    /// The map with coordinates `v` (a column) in `A^x_yz`.
    pub fn map_of(&self, x: usize, y: usize, z: usize, v: &Mat) -> Mat {
        let i = i3(self.n(), x, y, z);
        let (r, c) = self.shapes[i];
        self.basis[i].mul(v).reshape(r, c)
    }

    /// Coordinates of a linear map in `A^x_yz`, `None` if it is not in the component.
    pub fn coords(&self, x: usize, y: usize, z: usize, f: &Mat) -> Result<Option<Mat>, Error> {
        self.basis[i3(self.n(), x, y, z)].solve(&f.vectorize())
    }

    fn coords_or(&self, x: usize, y: usize, z: usize, f: &Mat, what: &str) -> Result<Mat, Error> {
        self.coords(x, y, z, f)?.ok_or_else(|| Error::IllDefined(format!("{} not in component ({},{},{})", what, x, y, z)))
    }

    /// For the left variant, `M` as a right cluster module: `m f = f(m)`.
    pub fn canonical_module(&self, dims: &XFam) -> ClusterModule {
        let n = self.n();
        let f = self.cluster.field();
        let mut act = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let h = self.cluster.at(x).dim(y, z);
                    let dm = dims.dim(x, y);
                    let mut cols = Vec::with_capacity(dm * h);
                    for i in 0..dm {
                        for k in 0..h {
                            cols.push(self.element(x, y, z, k).col(i));
                        }
                    }
                    act.push(Mat::hstack(f, dims.dim(x, z), &cols));
                }
            }
        }
        ClusterModule { dims: dims.clone(), act }
    }
}

/// `A^x_yz = Hom(M_xy, M_xz)` commuting with `B_x`, multiplied by opposite
/// composition. `mods[(x,y)]` is `M_xy` as a left `B_x`-module.
pub fn left_endocluster(field: Field, objs: &ObjSet, mods: &[BModule]) -> Result<EndoCluster, Error> {
    let n = objs.len();
    endocluster(field, objs, Side::Left, |x, y, z| (&mods[i2(n, x, y)], &mods[i2(n, x, z)]))
}

/// `A'^x_yz = Hom(M_zx, M_yx)` commuting with `B_x`, multiplied by
/// composition. `mods[(z,x)]` is `M_zx` as a right `B_x`-module.
pub fn right_endocluster(field: Field, objs: &ObjSet, mods: &[BModule]) -> Result<EndoCluster, Error> {
    let n = objs.len();
    endocluster(field, objs, Side::Right, |x, y, z| (&mods[i2(n, z, x)], &mods[i2(n, y, x)]))
}

fn endocluster<'a>(
    field: Field,
    objs: &ObjSet,
    side: Side,
    src_dst: impl Fn(usize, usize, usize) -> (&'a BModule, &'a BModule),
) -> Result<EndoCluster, Error> {
    let n = objs.len();
    let mut basis = Vec::with_capacity(n * n * n);
    let mut shapes = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (s, t) = src_dst(x, y, z);
                let homs = hom_b_linear(field, s, t);
                let cols: Vec<Mat> = homs.iter().map(Mat::vectorize).collect();
                basis.push(Mat::hstack(field, t.dim * s.dim, &cols));
                shapes.push((t.dim, s.dim));
            }
        }
    }
    let mut e = EndoCluster { cluster: Cluster { cats: Vec::new() }, side, basis, shapes };
    let mut cats = Vec::with_capacity(n);
    for x in 0..n {
        let dims = XFam::from_fn(n, |y, z| e.basis[i3(n, x, y, z)].cols());
        let mut mult = Vec::with_capacity(n * n * n);
        for y in 0..n {
            for z in 0..n {
                for u in 0..n {
                    let (h1, h2) = (dims.dim(y, z), dims.dim(z, u));
                    let mut cols = Vec::with_capacity(h1 * h2);
                    for i in 0..h1 {
                        let fi = e.element(x, y, z, i);
                        for j in 0..h2 {
                            let gj = e.element(x, z, u, j);
                            let prod = match side {
                                Side::Left => gj.mul(&fi),
                                Side::Right => fi.mul(&gj),
                            };
                            cols.push(e.coords_or(x, y, u, &prod, "product")?);
                        }
                    }
                    mult.push(Mat::hstack(field, dims.dim(y, u), &cols));
                }
            }
        }
        let mut unit = Vec::with_capacity(n);
        for y in 0..n {
            let (r, _) = e.shapes[i3(n, x, y, y)];
            unit.push(e.coords_or(x, y, y, &Mat::identity(field, r), "identity")?);
        }
        cats.push(LinCat::new(field, objs.clone(), dims, mult, unit)?);
    }
    e.cluster = Cluster { cats };
    Ok(e)
}

/// The left endocluster of `A` as a left `B`-module.
pub fn endocluster_of(e: &Extension) -> Result<EndoCluster, Error> {
    let n = e.n();
    let mods: Vec<BModule> = (0..n * n).map(|k| e.left_on(k / n, k % n)).collect();
    left_endocluster(e.field(), e.a.objs(), &mods)
}

/// The right endocluster of `A` as a right `B`-module.
pub fn right_endocluster_of(e: &Extension) -> Result<EndoCluster, Error> {
    let n = e.n();
    let mods: Vec<BModule> = (0..n * n).map(|k| e.right_on(k / n, k % n)).collect();
    right_endocluster(e.field(), e.a.objs(), &mods)
}

/// Coordinates of `r_a: a' ↦ a' a` in `A^x_yz`, as a map `A_yz -> A^x_yz`.
pub fn right_mult_coords(e: &Extension, endo: &EndoCluster, x: usize, y: usize, z: usize) -> Result<Mat, Error> {
    let f = e.field();
    let d = e.a.dim(y, z);
    let mut cols = Vec::with_capacity(d);
    for k in 0..d {
        let r = e.a.right_mul(x, y, z, &Mat::unit(f, d, k));
        cols.push(endo.coords_or(x, y, z, &r, "right multiplication")?);
    }
    Ok(Mat::hstack(f, endo.cluster.at(x).dim(y, z), &cols))
}

/// `m f = m_<0> f(m_<1>)`.
pub fn functor_h(e: &Extension, endo: &EndoCluster, d: &DescentDatum) -> ClusterModule {
    let f = e.field();
    let n = e.n();
    let mut act = Vec::with_capacity(n * n * n);
    for x in 0..n {
        let idm = Mat::identity(f, d.m.dim(x, x));
        for y in 0..n {
            let s = d.sigma_ambient(x, y);
            let dm = d.m.dim(x, y);
            for z in 0..n {
                let h = endo.cluster.at(x).dim(y, z);
                let per: Vec<Mat> = (0..h).map(|k| d.m.act(x, x, z).mul(&idm.kron(&endo.element(x, y, z, k))).mul(&s)).collect();
                let mut cols = Vec::with_capacity(dm * h);
                for i in 0..dm {
                    for p in &per {
                        cols.push(p.col(i));
                    }
                }
                act.push(Mat::hstack(f, d.m.dim(x, z), &cols));
            }
        }
    }
    ClusterModule { dims: d.m.dims.clone(), act }
}

/// The right `A`-module underlying a cluster module: `m a = m r_a`.
pub fn underlying_module(e: &Extension, endo: &EndoCluster, m: &ClusterModule) -> Result<RightModule, Error> {
    let f = e.field();
    let n = e.n();
    let mut act = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let r = right_mult_coords(e, endo, x, y, z)?;
                act.push(m.act(x, y, z).mul(&Mat::identity(f, m.dim(x, y)).kron(&r)));
            }
        }
    }
    Ok(RightModule { dims: m.dims.clone(), act })
}

/// `a' r_a = a' a` on the module `m`, compared against the right action `psi`.
pub fn right_mult_check(e: &Extension, endo: &EndoCluster, m: &ClusterModule, psi: &RightModule) -> Result<Report, Error> {
    let under = underlying_module(e, endo, m)?;
    let n = e.n();
    let mut r = Report::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                r.check_eq(
                    "right multiplication acts as A",
                    &[x, y, z],
                    under.act(x, y, z),
                    psi.act(x, y, z),
                    &[m.dim(x, y), e.a.dim(y, z)],
                );
            }
        }
    }
    Ok(r)
}

/// `σ_xy(m) = Σ_i m(i_x ∘ e_i*) ⊗ e_i` for a dual basis of `A_xy` over `B_x`.
pub fn functor_k(e: &Extension, endo: &EndoCluster, m: &ClusterModule) -> Result<DescentDatum, Error> {
    let f = e.field();
    let n = e.n();
    let under = underlying_module(e, endo, m)?;
    let mut sigma = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let db = dual_basis(f, e.alg(x), &e.left_on(x, y)).map_err(|err| Error::NotProjective(format!("({},{}): {}", x, y, err)))?;
            let t = e.carrier(&under, x, y);
            let dm = m.dim(x, y);
            let idm = Mat::identity(f, dm);
            let mut amb = Mat::zeros(f, m.dim(x, x) * e.a.dim(x, y), dm);
            for (fun, el) in &db.pairs {
                let phi = e.i[x].mul(fun);
                let c = endo.coords_or(x, y, x, &phi, "i_x composed with a dual basis functional")?;
                amb = amb.add(&m.act(x, y, x).mul(&idm.kron(&c)).kron(el));
            }
            sigma.push(t.projection.mul(&amb));
        }
    }
    DescentDatum::new(e, under, sigma)
}

/// `F1(N)_xy = N_x ⊗_{B_x} A_xy` with `(n ⊗ a) f = n ⊗ f(a)`.
pub fn functor_f1(e: &Extension, endo: &EndoCluster, nmod: &DiagModule) -> (ClusterModule, Vec<Quotient>) {
    let f = e.field();
    let n = e.n();
    let qs: Vec<Quotient> = (0..n * n).map(|k| tensor_over_diag(f, &nmod.mods[k / n], &e.left_on(k / n, k % n))).collect();
    let dims = XFam::from_fn(n, |x, y| qs[i2(n, x, y)].dim());
    let mut act = Vec::with_capacity(n * n * n);
    for x in 0..n {
        let idn = Mat::identity(f, nmod.dim(x));
        for y in 0..n {
            let src = &qs[i2(n, x, y)];
            for z in 0..n {
                let dst = &qs[i2(n, x, z)];
                let h = endo.cluster.at(x).dim(y, z);
                let per: Vec<Mat> = (0..h).map(|k| dst.projection.mul(&idn.kron(&endo.element(x, y, z, k))).mul(&src.section)).collect();
                let mut cols = Vec::with_capacity(src.dim() * h);
                for i in 0..src.dim() {
                    for p in &per {
                        cols.push(p.col(i));
                    }
                }
                act.push(Mat::hstack(f, dst.dim(), &cols));
            }
        }
    }
    (ClusterModule { dims, act }, qs)
}

/// `G1(M)_x = {m ∈ M_xx | m(i_x ∘ a*) = m a*(1_x) for all a* ∈ A_xx*}`,
/// with `B_x` acting through `r_{i_x(b)}`.
pub fn functor_g1(e: &Extension, endo: &EndoCluster, m: &ClusterModule) -> Result<Invariants, Error> {
    let f = e.field();
    let n = e.n();
    let mut mods = Vec::with_capacity(n);
    let mut inclusion = Vec::with_capacity(n);
    for x in 0..n {
        let dm = m.dim(x, x);
        let idm = Mat::identity(f, dm);
        let act = m.act(x, x, x);
        let r = right_mult_coords(e, endo, x, x, x)?;
        let reg = e.alg(x).regular(Side::Left);
        let mut rows = Vec::new();
        for astar in hom_b_linear(f, &e.left_on(x, x), &reg) {
            let c = endo.coords_or(x, x, x, &e.i[x].mul(&astar), "i_x composed with a functional")?;
            let at_one = e.i[x].mul(&astar).mul(e.a.unit(x));
            rows.push(act.mul(&idm.kron(&c.sub(&r.mul(&at_one)))));
        }
        let k = Mat::vstack(f, dm, &rows).kernel_basis();
        let mut actions = Vec::with_capacity(e.b.dim(x));
        for b in 0..e.b.dim(x) {
            let img = act.mul(&idm.kron(&r.mul(&e.image(x, b)))).mul(&k);
            actions.push(k.solve(&img)?.ok_or_else(|| Error::IllDefined(format!("G1 at {} not B-stable", x)))?);
        }
        mods.push(BModule { side: Side::Right, dim: k.cols(), actions });
        inclusion.push(k);
    }
    Ok(Invariants { module: DiagModule { mods }, inclusion })
}

/// `η_x: N_x -> G1 F1(N)_x`, `n ↦ n ⊗ 1_x`.
pub fn f1g1_unit(e: &Extension, endo: &EndoCluster, nmod: &DiagModule) -> Result<MapFamily, Error> {
    let f = e.field();
    let n = e.n();
    let (fm, qs) = functor_f1(e, endo, nmod);
    let g = functor_g1(e, endo, &fm)?;
    let mut maps = Vec::with_capacity(n);
    let mut bijective = Vec::with_capacity(n);
    for x in 0..n {
        let ins = qs[i2(n, x, x)].projection.mul(&Mat::identity(f, nmod.dim(x)).kron(e.a.unit(x)));
        let eta = g.inclusion[x].solve(&ins)?.ok_or_else(|| Error::IllDefined(format!("unit image outside G1 at {}", x)))?;
        bijective.push(eta.is_bijective());
        maps.push(eta);
    }
    Ok(MapFamily { maps, bijective, report: Report::new() })
}

/// `ε_xy: G1(M)_x ⊗_{B_x} A_xy -> M_xy`, `m ⊗ a ↦ m r_a`.
pub fn f1g1_counit(e: &Extension, endo: &EndoCluster, m: &ClusterModule) -> Result<MapFamily, Error> {
    let f = e.field();
    let n = e.n();
    let g = functor_g1(e, endo, m)?;
    let mut maps = Vec::with_capacity(n * n);
    let mut bijective = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let q = tensor_over_diag(f, &g.module.mods[x], &e.left_on(x, y));
            let r = right_mult_coords(e, endo, x, x, y)?;
            let amb = m.act(x, x, y).mul(&g.inclusion[x].kron(&r));
            let eps = q.descend(&amb)?;
            bijective.push(eps.is_bijective());
            maps.push(eps);
        }
    }
    Ok(MapFamily { maps, bijective, report: Report::new() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    /// Every `A_xy` is finitely generated projective over `B_x`.
    pub locally_finite: bool,
    /// Locally finite, and every `A_xx` is moreover a generator.
    pub locally_faithfully_projective: bool,
    pub units: Vec<MapFamily>,
    pub counits: Vec<MapFamily>,
    /// Hypotheses that held while the map they guarantee was not bijective.
    pub report: Report,
}

impl EquivalenceReport {
    pub fn all_bijective(&self) -> bool {
        self.units.iter().chain(&self.counits).all(MapFamily::all_bijective)
    }
}

pub fn equivalence_f1g1(e: &Extension, diag: &[DiagModule], modules: &[ClusterModule]) -> Result<EquivalenceReport, Error> {
    let n = e.n();
    let endo = endocluster_of(e)?;
    let locally_finite = (0..n).all(|x| (0..n).all(|y| e.classify_left(x, y).finite_projective));
    let locally_faithfully_projective = locally_finite && (0..n).all(|x| e.classify_left(x, x).generator);
    let mut report = Report::new();
    let mut units = Vec::with_capacity(diag.len());
    for (p, d) in diag.iter().enumerate() {
        let u = f1g1_unit(e, &endo, d)?;
        if locally_faithfully_projective {
            for (x, &b) in u.bijective.iter().enumerate() {
                if !b {
                    report.push("unit bijective when locally faithfully projective", &[p, x], &[]);
                }
            }
        }
        units.push(u);
    }
    let mut counits = Vec::with_capacity(modules.len());
    for (p, m) in modules.iter().enumerate() {
        let c = f1g1_counit(e, &endo, m)?;
        if locally_finite {
            for (k, &b) in c.bijective.iter().enumerate() {
                if !b {
                    report.push("counit bijective when locally finite", &[p, k / n, k % n], &[]);
                }
            }
        }
        counits.push(c);
    }
    Ok(EquivalenceReport { locally_finite, locally_faithfully_projective, units, counits, report })
}

/// Left descent data as modules over the left endocluster of `A^op`, which
/// is the right endocluster of `A` read in the opposite direction.
pub fn functor_h_left(e: &Extension, d: &LeftDescentDatum) -> Result<(EndoCluster, ClusterModule), Error> {
    let eo = e.op();
    let endo = endocluster_of(&eo)?;
    let m = functor_h(&eo, &endo, &d.to_op(e)?);
    Ok((endo, m))
}

pub fn functor_k_left(e: &Extension, endo: &EndoCluster, m: &ClusterModule) -> Result<LeftDescentDatum, Error> {
    let d = functor_k(&e.op(), endo, m)?;
    LeftDescentDatum::from_op(e, &d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descent::{functor_f, functor_f_left, regular_datum, regular_left_datum};
    use crate::fixtures::{cyclic_graded, cyclic_indiscrete, q, scalar_ext};
    use crate::lincat::{Algebra, DiagAlgebra};
    use alloc::vec;

    fn examples() -> Vec<Extension> {
        vec![
            scalar_ext(&cyclic_indiscrete(1, 1).base.alg),
            scalar_ext(&cyclic_indiscrete(1, 2).base.alg),
            scalar_ext(&cyclic_indiscrete(2, 1).base.alg),
            cyclic_graded(1, 4, 2).coinvariants().unwrap(),
            cyclic_graded(2, 2, 2).coinvariants().unwrap(),
        ]
    }

    #[test]
    fn endoclusters_are_clusters() {
        for e in examples() {
            let endo = endocluster_of(&e).unwrap();
            assert!(endo.cluster.validate().is_ok());
            let m = endo.canonical_module(e.a.dims());
            assert!(m.validate(&endo.cluster).is_ok());
            let right = right_endocluster_of(&e).unwrap();
            assert!(right.cluster.validate().is_ok());
            let mirrored = endocluster_of(&e.op()).unwrap();
            assert_eq!(mirrored.cluster, right.cluster.op());
        }
    }

    #[test]
    fn scalar_endocluster() {
        let f = q();
        let objs = ObjSet::indexed(2);
        let k = Algebra::scalars(f);
        let one = k.regular(Side::Left);
        let endo = left_endocluster(f, &objs, &vec![one; 4]).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    assert_eq!(endo.cluster.at(x).dim(y, z), 1);
                }
            }
        }
        let zero = BModule::zero(f, &k, Side::Left);
        let endo = left_endocluster(f, &objs, &vec![zero; 4]).unwrap();
        assert!(endo.cluster.validate().is_ok());
        assert_eq!(endo.cluster.at(0).dim(0, 1), 0);
    }

    #[test]
    fn groupoid_endocluster_is_one_dimensional() {
        let e = scalar_ext(&cyclic_indiscrete(2, 1).base.alg);
        let endo = endocluster_of(&e).unwrap();
        for x in 0..2 {
            assert!((0..2).all(|y| (0..2).all(|z| endo.cluster.at(x).dim(y, z) == 1)));
        }
    }

    #[test]
    fn descent_data_are_cluster_modules() {
        for e in examples() {
            let endo = endocluster_of(&e).unwrap();
            let reg = regular_datum(&e).unwrap();
            let h = functor_h(&e, &endo, &reg);
            assert!(h.validate(&endo.cluster).is_ok());
            assert_eq!(h, endo.canonical_module(e.a.dims()));
            assert!(right_mult_check(&e, &endo, &h, &reg.m).unwrap().is_ok());
            assert_eq!(functor_k(&e, &endo, &h).unwrap(), reg);
            let ind = functor_f(&e, &DiagModule::free(&e.b, Side::Right, 2)).unwrap().datum;
            let h = functor_h(&e, &endo, &ind);
            assert!(h.validate(&endo.cluster).is_ok());
            assert!(right_mult_check(&e, &endo, &h, &ind.m).unwrap().is_ok());
            let back = functor_k(&e, &endo, &h).unwrap();
            assert_eq!(back, ind);
            assert_eq!(functor_h(&e, &endo, &back), h);
        }
    }

    #[test]
    fn f1g1_is_an_equivalence() {
        for e in examples() {
            let endo = endocluster_of(&e).unwrap();
            let diag = [DiagModule::regular(&e.b, Side::Right), DiagModule::free(&e.b, Side::Right, 2)];
            let mods = [endo.canonical_module(e.a.dims())];
            let r = equivalence_f1g1(&e, &diag, &mods).unwrap();
            assert!(r.locally_faithfully_projective);
            assert!(r.report.is_ok() && r.all_bijective(), "{:?}", r);
        }
    }

    #[test]
    fn zero_diagonal_breaks_the_equivalence() {
        let f = q();
        let a = LinCat::from_fn(f, ObjSet::indexed(1), XFam::from_fn(1, |_, _| 0), |_, _, _| Mat::zeros(f, 0, 0), |_| Mat::zeros(f, 0, 1))
            .unwrap();
        let b = DiagAlgebra { objs: ObjSet::indexed(1), algs: vec![Algebra::scalars(f)] };
        let e = Extension::new(b, a, vec![Mat::zeros(f, 0, 1)]).unwrap();
        let r = equivalence_f1g1(&e, &[DiagModule::regular(&e.b, Side::Right)], &[]).unwrap();
        assert!(!r.locally_faithfully_projective);
        assert!(!r.units[0].bijective[0]);
        assert!(r.report.is_ok());
    }

    #[test]
    fn left_data_round_trip() {
        for e in examples() {
            let d = regular_left_datum(&e).unwrap();
            let (endo, m) = functor_h_left(&e, &d).unwrap();
            assert!(m.validate(&endo.cluster).is_ok());
            assert_eq!(functor_k_left(&e, &endo, &m).unwrap(), d);
            let d2 = functor_f_left(&e, &DiagModule::free(&e.b, Side::Left, 2)).unwrap();
            let (_, m2) = functor_h_left(&e, &d2).unwrap();
            assert!(m2.validate(&endo.cluster).is_ok());
            assert_eq!(functor_k_left(&e, &endo, &m2).unwrap(), d2);
        }
    }
}
