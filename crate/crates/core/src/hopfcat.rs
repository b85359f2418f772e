//! Semi-Hopf and Hopf categories and their duals.

use alloc::format;
use alloc::vec::Vec;

use crate::error::Error;
use crate::linalg::{tensor_permutation, Mat};
use crate::lincat::{i2, i3, LinCat, ObjSet, XFam};
use crate::report::Report;
use crate::scalar::Field;

/// A linear category whose hom spaces are coalgebras, `Δ_xy: H_xy -> H_xy ⊗ H_xy`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiHopfCat {
    pub alg: LinCat,
    comult: Vec<Mat>,
    counit: Vec<Mat>,
}

impl SemiHopfCat {
    pub fn new(alg: LinCat, comult: Vec<Mat>, counit: Vec<Mat>) -> Result<SemiHopfCat, Error> {
        let n = alg.n();
        if comult.len() != n * n || counit.len() != n * n {
            return Err(Error::Shape("coalgebra component count".into()));
        }
        for x in 0..n {
            for y in 0..n {
                let d = alg.dim(x, y);
                if comult[i2(n, x, y)].shape() != (d * d, d) || counit[i2(n, x, y)].shape() != (1, d) {
                    return Err(Error::Shape(format!("coalgebra at ({},{})", x, y)));
                }
            }
        }
        Ok(SemiHopfCat { alg, comult, counit })
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }
    pub fn n(&self) -> usize {
        self.alg.n()
    }
    pub fn dim(&self, x: usize, y: usize) -> usize {
        self.alg.dim(x, y)
    }
    pub fn comult(&self, x: usize, y: usize) -> &Mat {
        &self.comult[i2(self.n(), x, y)]
    }
    pub fn counit(&self, x: usize, y: usize) -> &Mat {
        &self.counit[i2(self.n(), x, y)]
    }

    pub fn validate(&self) -> Report {
        let f = self.field();
        let n = self.n();
        let a = &self.alg;
        let mut r = a.validate();
        for x in 0..n {
            for y in 0..n {
                let d = self.dim(x, y);
                let id = a.id(x, y);
                let del = self.comult(x, y);
                let lhs = del.kron(&id).mul(del);
                let rhs = id.kron(del).mul(del);
                r.check_eq("coassociativity", &[x, y], &lhs, &rhs, &[d]);
                r.check_eq("left counit", &[x, y], &self.counit(x, y).kron(&id).mul(del), &id, &[d]);
                r.check_eq("right counit", &[x, y], &id.kron(self.counit(x, y)).mul(del), &id, &[d]);
                for z in 0..n {
                    let (dyz, dxz) = (self.dim(y, z), self.dim(x, z));
                    let m = a.mult(x, y, z);
                    let lhs = self.comult(x, z).mul(m);
                    let shuffle = tensor_permutation(f, &[d, d, dyz, dyz], &[0, 2, 1, 3]);
                    let rhs = m.kron(m).mul(&shuffle).mul(&del.kron(self.comult(y, z)));
                    r.check_eq("comultiplication multiplicative", &[x, y, z], &lhs, &rhs, &[d, dyz]);
                    let lhs = self.counit(x, z).mul(m);
                    let rhs = self.counit(x, y).kron(self.counit(y, z));
                    r.check_eq("counit multiplicative", &[x, y, z], &lhs, &rhs, &[d, dyz]);
                    let _ = dxz;
                }
            }
            let u = a.unit(x);
            r.check_eq("comultiplication unital", &[x], &self.comult(x, x).mul(u), &u.kron(u), &[1]);
            r.check_eq("counit unital", &[x], &self.counit(x, x).mul(u), &Mat::identity(f, 1), &[1]);
        }
        r
    }

    /// The dual in the dual basis, `K_xy = H*_yx`, without antipode.
    pub fn dualize(&self) -> DualHopfCat {
        let f = self.field();
        let h = self;
        let n = self.n();
        let dims = XFam::from_fn(n, |x, y| h.dim(y, x));
        let mut mult = Vec::new();
        let mut unit = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let d = h.dim(y, x);
                mult.push(Mat::swap(f, d, d).mul(h.comult(y, x)).transpose());
                unit.push(h.counit(y, x).transpose());
            }
        }
        let mut comult = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let m = h.alg.mult(z, y, x).mul(&Mat::swap(f, h.dim(y, x), h.dim(z, y)));
                    comult.push(m.transpose());
                }
            }
        }
        let counit = (0..n).map(|x| h.alg.unit(x).transpose()).collect();
        DualHopfCat { field: f, objs: h.alg.objs().clone(), dims, mult, unit, comult, counit, antipode: None }
    }

    /// `H^op_xy = H_yx` with reversed multiplication and the same coalgebras.
    pub fn op(&self) -> SemiHopfCat {
        let n = self.n();
        let mut comult = Vec::with_capacity(n * n);
        let mut counit = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                comult.push(self.comult(y, x).clone());
                counit.push(self.counit(y, x).clone());
            }
        }
        SemiHopfCat { alg: self.alg.op(), comult, counit }
    }
}

/// A semi-Hopf category with antipodes `S_xy: H_xy -> H_yx`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfCat {
    pub base: SemiHopfCat,
    antipode: Vec<Mat>,
}

/// Result of the antipode check: violations plus per-`(x,y)` invertibility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntipodeReport {
    pub report: Report,
    pub invertible: Vec<bool>,
}

impl AntipodeReport {
    pub fn all_invertible(&self) -> bool {
        self.invertible.iter().all(|&b| b)
    }
}

impl HopfCat {
    pub fn new(base: SemiHopfCat, antipode: Vec<Mat>) -> Result<HopfCat, Error> {
        let n = base.n();
        if antipode.len() != n * n {
            return Err(Error::Shape("antipode component count".into()));
        }
        for x in 0..n {
            for y in 0..n {
                if antipode[i2(n, x, y)].shape() != (base.dim(y, x), base.dim(x, y)) {
                    return Err(Error::Shape(format!("antipode at ({},{})", x, y)));
                }
            }
        }
        Ok(HopfCat { base, antipode })
    }

    pub fn field(&self) -> Field {
        self.base.field()
    }
    pub fn n(&self) -> usize {
        self.base.n()
    }
    pub fn antipode(&self, x: usize, y: usize) -> &Mat {
        &self.antipode[i2(self.n(), x, y)]
    }

    pub fn validate_antipode(&self) -> AntipodeReport {
        let n = self.n();
        let h = &self.base;
        let a = &h.alg;
        let mut r = Report::new();
        let mut invertible = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let d = h.dim(x, y);
                let s = self.antipode(x, y);
                let del = h.comult(x, y);
                let lhs = a.mult(x, y, x).mul(&a.id(x, y).kron(s)).mul(del);
                let rhs = a.unit(x).mul(h.counit(x, y));
                r.check_eq("antipode left", &[x, y], &lhs, &rhs, &[d]);
                let lhs = a.mult(y, x, y).mul(&s.kron(&a.id(x, y))).mul(del);
                let rhs = a.unit(y).mul(h.counit(x, y));
                r.check_eq("antipode right", &[x, y], &lhs, &rhs, &[d]);
                invertible.push(s.is_bijective());
            }
        }
        AntipodeReport { report: r, invertible }
    }

    pub fn with_antipode(&self, x: usize, y: usize, s: Mat) -> Result<HopfCat, Error> {
        let mut antipode = self.antipode.clone();
        antipode[i2(self.n(), x, y)] = s;
        HopfCat::new(self.base.clone(), antipode)
    }

    /// The dual Hopf category in the dual basis: `K_xy = H*_yx`.
    pub fn dualize(&self) -> DualHopfCat {
        let n = self.n();
        let mut k = self.base.dualize();
        k.antipode = Some((0..n * n).map(|i| self.antipode(i % n, i / n).transpose()).collect());
        k
    }
}

/// A dual Hopf category: an algebra on each `K_xy`, comultiplications
/// `Δ_xyz: K_xz -> K_xy ⊗ K_yz`, counits `ε_x: K_xx -> k`, antipodes
/// `T_xy: K_yx -> K_xy`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualHopfCat {
    field: Field,
    objs: ObjSet,
    dims: XFam,
    mult: Vec<Mat>,
    unit: Vec<Mat>,
    comult: Vec<Mat>,
    counit: Vec<Mat>,
    antipode: Option<Vec<Mat>>,
}

impl DualHopfCat {
    pub fn field(&self) -> Field {
        self.field
    }
    pub fn n(&self) -> usize {
        self.objs.len()
    }
    pub fn objs(&self) -> &ObjSet {
        &self.objs
    }
    pub fn dim(&self, x: usize, y: usize) -> usize {
        self.dims.dim(x, y)
    }
    pub fn mult(&self, x: usize, y: usize) -> &Mat {
        &self.mult[i2(self.n(), x, y)]
    }
    pub fn unit(&self, x: usize, y: usize) -> &Mat {
        &self.unit[i2(self.n(), x, y)]
    }
    pub fn comult(&self, x: usize, y: usize, z: usize) -> &Mat {
        &self.comult[i3(self.n(), x, y, z)]
    }
    pub fn counit(&self, x: usize) -> &Mat {
        &self.counit[x]
    }
    pub fn antipode(&self, x: usize, y: usize) -> Option<&Mat> {
        self.antipode.as_ref().map(|t| &t[i2(self.n(), x, y)])
    }
    pub fn id(&self, x: usize, y: usize) -> Mat {
        Mat::identity(self.field, self.dim(x, y))
    }

    /// Left multiplication by `k ∈ K_xy` on `K_xy`.
    pub fn left_mul(&self, x: usize, y: usize, k: &Mat) -> Mat {
        self.mult(x, y).mul(&k.kron(&self.id(x, y)))
    }

    pub fn validate(&self) -> Report {
        let f = self.field;
        let n = self.n();
        let mut r = Report::new();
        for x in 0..n {
            for y in 0..n {
                let d = self.dim(x, y);
                let id = self.id(x, y);
                let m = self.mult(x, y);
                let u = self.unit(x, y);
                r.check_eq("algebra left unit", &[x, y], &m.mul(&u.kron(&id)), &id, &[d]);
                r.check_eq("algebra right unit", &[x, y], &m.mul(&id.kron(u)), &id, &[d]);
                r.check_eq("algebra associativity", &[x, y], &m.mul(&m.kron(&id)), &m.mul(&id.kron(m)), &[d, d, d]);
                let lc = self.counit(x).kron(&id).mul(self.comult(x, x, y));
                r.check_eq("dual left counit", &[x, y], &lc, &id, &[d]);
                let rc = id.kron(self.counit(y)).mul(self.comult(x, y, y));
                r.check_eq("dual right counit", &[x, y], &rc, &id, &[d]);
                for z in 0..n {
                    let (a, b) = (self.dim(x, y), self.dim(y, z));
                    let del = self.comult(x, y, z);
                    let lhs = del.mul(self.mult(x, z));
                    let shuffle = tensor_permutation(f, &[a, b, a, b], &[0, 2, 1, 3]);
                    let rhs = self.mult(x, y).kron(self.mult(y, z)).mul(&shuffle).mul(&del.kron(del));
                    r.check_eq("dual comultiplication multiplicative", &[x, y, z], &lhs, &rhs, &[self.dim(x, z), self.dim(x, z)]);
                    let lhs = del.mul(self.unit(x, z));
                    let rhs = self.unit(x, y).kron(self.unit(y, z));
                    r.check_eq("dual comultiplication unital", &[x, y, z], &lhs, &rhs, &[1]);
                    for u in 0..n {
                        let lhs = del.kron(&self.id(z, u)).mul(self.comult(x, z, u));
                        let rhs = self.id(x, y).kron(self.comult(y, z, u)).mul(self.comult(x, y, u));
                        r.check_eq("dual coassociativity", &[x, y, z, u], &lhs, &rhs, &[self.dim(x, u)]);
                    }
                }
                if let (Some(t_xy), Some(t_yx)) = (self.antipode(x, y), self.antipode(y, x)) {
                    let del = self.comult(x, y, x);
                    let dxx = self.dim(x, x);
                    let lhs = self.mult(x, y).mul(&self.id(x, y).kron(t_xy)).mul(del);
                    let rhs = self.unit(x, y).mul(self.counit(x));
                    r.check_eq("dual antipode left", &[x, y], &lhs, &rhs, &[dxx]);
                    let lhs = self.mult(y, x).mul(&t_yx.kron(&self.id(y, x))).mul(del);
                    let rhs = self.unit(y, x).mul(self.counit(x));
                    r.check_eq("dual antipode right", &[x, y], &lhs, &rhs, &[dxx]);
                }
            }
            let e = self.counit(x);
            let d = self.dim(x, x);
            r.check_eq("dual counit multiplicative", &[x], &e.mul(self.mult(x, x)), &e.kron(e), &[d, d]);
            r.check_eq("dual counit unital", &[x], &e.mul(self.unit(x, x)), &Mat::identity(f, 1), &[1]);
        }
        r
    }

    /// Same coalgebra data with every component algebra replaced by its
    /// opposite. The antipode is dropped.
    pub fn op_alg(&self) -> DualHopfCat {
        let mut out = self.clone();
        out.antipode = None;
        let n = self.n();
        for x in 0..n {
            for y in 0..n {
                let d = self.dim(x, y);
                out.mult[i2(n, x, y)] = self.mult(x, y).mul(&Mat::swap(self.field, d, d));
            }
        }
        out
    }

    /// Dualize back to a Hopf category with `H_xy = K*_yx`.
    pub fn dualize(&self) -> Result<HopfCat, Error> {
        let f = self.field;
        let n = self.n();
        let dims = XFam::from_fn(n, |x, y| self.dim(y, x));
        let alg = LinCat::from_fn(
            f,
            self.objs.clone(),
            dims.clone(),
            |a, b, c| self.comult(c, b, a).transpose().mul(&Mat::swap(f, dims.dim(a, b), dims.dim(b, c))),
            |x| self.counit(x).transpose(),
        )?;
        let mut comult = Vec::new();
        let mut counit = Vec::new();
        let mut antipode = Vec::new();
        let ts = self.antipode.as_ref().ok_or(Error::MissingAntipode)?;
        for a in 0..n {
            for b in 0..n {
                let d = dims.dim(a, b);
                comult.push(Mat::swap(f, d, d).mul(&self.mult(b, a).transpose()));
                counit.push(self.unit(b, a).transpose());
                antipode.push(ts[i2(n, b, a)].transpose());
            }
        }
        HopfCat::new(SemiHopfCat::new(alg, comult, counit)?, antipode)
    }
}

/// Dualize twice and compare every structure map with the original.
pub fn double_dual_compare(h: &HopfCat) -> Report {
    let mut r = Report::new();
    let back = match h.dualize().dualize() {
        Ok(b) => b,
        Err(_) => {
            r.push("double dual construction", &[], &[]);
            return r;
        }
    };
    let n = h.n();
    let (a, b) = (&h.base, &back.base);
    for x in 0..n {
        r.check_eq("double dual unit", &[x], b.alg.unit(x), a.alg.unit(x), &[1]);
        for y in 0..n {
            let d = a.dim(x, y);
            r.check_eq("double dual comultiplication", &[x, y], b.comult(x, y), a.comult(x, y), &[d]);
            r.check_eq("double dual counit", &[x, y], b.counit(x, y), a.counit(x, y), &[d]);
            r.check_eq("double dual antipode", &[x, y], back.antipode(x, y), h.antipode(x, y), &[d]);
            for z in 0..n {
                r.check_eq("double dual multiplication", &[x, y, z], b.alg.mult(x, y, z), a.alg.mult(x, y, z), &[d, a.dim(y, z)]);
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn q() -> Field {
        Field::Rational
    }

    /// Group algebra of C2 on basis (e, g) with grouplike coalgebra.
    fn kc2(s: &[i64]) -> HopfCat {
        let f = q();
        let alg = LinCat::from_fn(
            f,
            ObjSet::indexed(1),
            XFam::from_fn(1, |_, _| 2),
            |_, _, _| Mat::from_i64(f, 2, 4, &[1, 0, 0, 1, 0, 1, 1, 0]),
            |_| Mat::from_i64(f, 2, 1, &[1, 0]),
        )
        .unwrap();
        let comult = Mat::from_i64(f, 4, 2, &[1, 0, 0, 0, 0, 0, 0, 1]);
        let counit = Mat::from_i64(f, 1, 2, &[1, 1]);
        let base = SemiHopfCat::new(alg, vec![comult], vec![counit]).unwrap();
        HopfCat::new(base, vec![Mat::from_i64(f, 2, 2, s)]).unwrap()
    }

    fn trivial() -> HopfCat {
        let f = q();
        let alg =
            LinCat::from_fn(f, ObjSet::indexed(1), XFam::from_fn(1, |_, _| 1), |_, _, _| Mat::identity(f, 1), |_| Mat::identity(f, 1))
                .unwrap();
        let base = SemiHopfCat::new(alg, vec![Mat::identity(f, 1)], vec![Mat::identity(f, 1)]).unwrap();
        HopfCat::new(base, vec![Mat::identity(f, 1)]).unwrap()
    }

    #[test]
    fn trivial_is_hopf_and_self_dual() {
        let h = trivial();
        assert!(h.base.validate().is_ok());
        let a = h.validate_antipode();
        assert!(a.report.is_ok() && a.all_invertible());
        let k = h.dualize();
        assert!(k.validate().is_ok());
        assert_eq!(k.dim(0, 0), 1);
        assert!(double_dual_compare(&h).is_ok());
    }

    #[test]
    fn kc2_antipode() {
        let good = kc2(&[1, 0, 0, 1]);
        assert!(good.base.validate().is_ok());
        let a = good.validate_antipode();
        assert!(a.report.is_ok() && a.all_invertible());
        // S(g) = e
        let bad = kc2(&[1, 1, 0, 0]);
        let a = bad.validate_antipode();
        assert!(!a.report.is_ok());
        assert_eq!(a.report.violations[0].at, vec![0, 0]);
        assert!(!a.all_invertible());
    }

    #[test]
    fn counit_violation_reported() {
        let h = kc2(&[1, 0, 0, 1]);
        let mut counit = h.base.counit(0, 0).clone();
        counit.set(0, 1, q().zero());
        let bad = SemiHopfCat::new(h.base.alg.clone(), vec![h.base.comult(0, 0).clone()], vec![counit]).unwrap();
        let r = bad.validate();
        assert!(r.has("left counit") || r.has("right counit"));
    }

    #[test]
    fn kc2_dual_is_function_algebra() {
        let k = kc2(&[1, 0, 0, 1]).dualize();
        assert!(k.validate().is_ok());
        // dual basis vectors are orthogonal idempotents, unit is their sum
        let m = k.mult(0, 0);
        let d0 = Mat::unit(q(), 2, 0);
        let d1 = Mat::unit(q(), 2, 1);
        assert_eq!(m.mul(&d0.kron(&d0)), d0);
        assert_eq!(m.mul(&d1.kron(&d1)), d1);
        assert!(m.mul(&d0.kron(&d1)).is_zero());
        assert_eq!(k.unit(0, 0), &Mat::from_i64(q(), 2, 1, &[1, 1]));
        assert!(double_dual_compare(&kc2(&[1, 0, 0, 1])).is_ok());
    }

    #[test]
    fn op_is_semi_hopf() {
        let h = kc2(&[1, 0, 0, 1]);
        assert!(h.base.op().validate().is_ok());
        assert!(h.dualize().op_alg().validate().is_ok());
    }
}
