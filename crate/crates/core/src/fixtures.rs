//! Small structures shared by the unit tests.

use alloc::vec;
use alloc::vec::Vec;

use crate::descent::Extension;
use crate::hopfcat::{HopfCat, SemiHopfCat};
use crate::linalg::Mat;
use crate::lincat::{Algebra, DiagAlgebra, LinCat, ObjSet, XFam};
use crate::scalar::Field;

pub fn q() -> Field {
    Field::Rational
}

/// `kG` for the groupoid with `n` objects, one arrow `x -> y` per element
/// of `Z/m` for every pair, composing by addition.
pub fn cyclic_indiscrete(n: usize, m: usize) -> HopfCat {
    let f = q();
    let alg = LinCat::from_fn(
        f,
        ObjSet::indexed(n),
        XFam::from_fn(n, |_, _| m),
        |_, _, _| Mat::from_fn(f, m, m * m, |r, c| if (c / m + c % m) % m == r { f.one() } else { f.zero() }),
        |_| Mat::unit(f, m, 0),
    )
    .unwrap();
    let mut comult = Vec::new();
    let mut counit = Vec::new();
    let mut antipode = Vec::new();
    for _ in 0..n * n {
        comult.push(Mat::from_fn(f, m * m, m, |r, c| if r == c * m + c { f.one() } else { f.zero() }));
        counit.push(Mat::from_fn(f, 1, m, |_, _| f.one()));
        antipode.push(Mat::from_fn(f, m, m, |r, c| if (r + c) % m == 0 { f.one() } else { f.zero() }));
    }
    HopfCat::new(SemiHopfCat::new(alg, comult, counit).unwrap(), antipode).unwrap()
}

/// `B_x = k` mapped to the units of `a`.
pub fn scalar_ext(a: &LinCat) -> Extension {
    let f = a.field();
    let b = DiagAlgebra { objs: a.objs().clone(), algs: vec![Algebra::scalars(f); a.n()] };
    let i = (0..a.n()).map(|x| a.unit(x).clone()).collect();
    Extension::new(b, a.clone(), i).unwrap()
}

/// `k[t]/(t²)` on the basis `1, t`.
pub fn dual_numbers() -> Algebra {
    let f = q();
    Algebra::new(2, Mat::from_i64(f, 2, 4, &[1, 0, 0, 0, 0, 1, 1, 0]), Mat::from_i64(f, 2, 1, &[1, 0])).unwrap()
}

/// One-object category with `A_xx = alg`.
pub fn single(alg: &Algebra) -> LinCat {
    LinCat::from_fn(alg.field(), ObjSet::indexed(1), XFam::from_fn(1, |_, _| alg.dim), |_, _, _| alg.mult.clone(), |_| alg.unit.clone())
        .unwrap()
}

/// `kG` for `G` = `cyclic_indiscrete(n, m)` coacted on by `cyclic_indiscrete(n, k)`
/// through reduction mod `k`, with `k | m`.
pub fn cyclic_graded(n: usize, m: usize, k: usize) -> crate::galois::ComoduleCat {
    let f = q();
    let a = cyclic_indiscrete(n, m);
    let h = cyclic_indiscrete(n, k);
    let rho = (0..n * n).map(|_| Mat::from_fn(f, m * k, m, |r, c| if r == c * k + c % k { f.one() } else { f.zero() })).collect();
    crate::galois::ComoduleCat::over_hopf(a.base.alg, &h, rho).unwrap()
}

/// `k[t]/(t²)` graded by `C2` with `t` odd.
pub fn graded_dual_numbers() -> crate::galois::ComoduleCat {
    let f = q();
    let h = cyclic_indiscrete(1, 2);
    let rho = vec![Mat::from_i64(f, 4, 2, &[1, 0, 0, 0, 0, 0, 0, 1])];
    crate::galois::ComoduleCat::over_hopf(single(&dual_numbers()), &h, rho).unwrap()
}

/// `k` sitting in the neutral degree of `kC2`.
pub fn trivially_graded_scalars() -> crate::galois::ComoduleCat {
    let f = q();
    let h = cyclic_indiscrete(1, 2);
    let rho = vec![Mat::from_i64(f, 2, 1, &[1, 0])];
    crate::galois::ComoduleCat::over_hopf(single(&Algebra::scalars(f)), &h, rho).unwrap()
}
