//! Polynomial derivations of the Fourier algebra of `Z^d`.
//!
//! A derivation is stored through its generating function `p`, which on
//! `Z^d` is one polynomial used at every exponential. It acts on a transform
//! at the base `c` by the moment sum `D(μ̂)(c) = Σ_x μ(x)·p(x)·c^{−x}`.

use std::fmt;

use num_traits::Zero;

use crate::algebra::{convolve, delta, Exponential, GroupElement, Measure};
use crate::error::{check_dim, Result};
use crate::fourier::transform;
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// A derivation with polynomial generating function. Positive-order
/// derivations are normalized to `p(0) = 0` on construction; the constant
/// multiples of the identity are the order-zero derivations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Derivation {
    p: Polynomial,
}

impl Derivation {
    pub fn new(p: Polynomial) -> Self {
        let p = match p.degree() {
            Some(d) if d >= 1 => {
                let c = p.constant_term();
                &p - &Polynomial::constant(p.dim(), c)
            }
            _ => p,
        };
        Derivation { p }
    }

    pub fn identity(dim: usize) -> Self {
        Derivation {
            p: Polynomial::one(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.p.dim()
    }

    pub fn generating_function(&self) -> &Polynomial {
        &self.p
    }

    /// `deg p`; `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.p.degree().map(|d| d as usize)
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Derivation({})", self.p)
    }
}

/// The moment `Σ_x μ(x)·q(x)·c^{−x}`, i.e. the operator with generating
/// function `q` applied to `μ̂` at `c`.
pub fn moment(mu: &Measure, q: &Polynomial, c: &Exponential) -> Result<Scalar> {
    check_dim(mu.dim(), q.dim())?;
    check_dim(mu.dim(), c.dim())?;
    Ok(mu
        .support()
        .map(|(x, w)| w * &q.eval(x.coords()) * c.inverse_eval(x))
        .sum())
}

pub fn apply(d: &Derivation, mu: &Measure, c: &Exponential) -> Result<Scalar> {
    moment(mu, &d.p, c)
}

/// Composition; its generating function is the product `p1·p2`.
pub fn compose(d1: &Derivation, d2: &Derivation) -> Derivation {
    Derivation::new(&d1.p * &d2.p)
}

/// Whether `d` has order at most `n`, i.e. `Δ_{y_1,…,y_{n+1}} p ≡ 0`.
pub fn order_check(d: &Derivation, n: usize) -> bool {
    let symbolic = d.p.symbolic_difference(n + 1).is_zero();
    debug_assert_eq!(
        symbolic,
        d.p.degree().is_none_or(|deg| deg as usize <= n),
        "symbolic order disagrees with the degree of {:?}",
        d.p
    );
    symbolic
}

/// `D(μ̂·ν̂)(c) − D(μ̂)(c)·ν̂(c) − μ̂(c)·D(ν̂)(c)`.
pub fn leibniz_defect(d: &Derivation, mu: &Measure, nu: &Measure, c: &Exponential) -> Result<Scalar> {
    let prod = convolve(mu, nu)?;
    let mu_c = transform(mu).eval(c)?;
    let nu_c = transform(nu).eval(c)?;
    Ok(apply(d, &prod, c)? - apply(d, mu, c)? * nu_c - mu_c * apply(d, nu, c)?)
}

/// The operator `μ̂ ↦ D(μ̂·δ̂_y) − D(μ̂)·δ̂_y(c) − μ̂(c)·D(δ̂_y)` evaluated at
/// `c`.
pub fn shifted_defect(d: &Derivation, mu: &Measure, y: &GroupElement, c: &Exponential) -> Result<Scalar> {
    let dy = delta(y);
    leibniz_defect(d, mu, &dy, c)
}

/// Generating function of [`shifted_defect`]:
/// `x ↦ [p(x + y) − p(x) − p(y)]·c^{−y}`. Its degree is below `deg p`.
pub fn shifted_defect_generating_function(d: &Derivation, y: &GroupElement, c: &Exponential) -> Result<Polynomial> {
    check_dim(d.dim(), y.dim())?;
    let p = &d.p;
    let py = Polynomial::constant(p.dim(), p.eval(y.coords()));
    Ok((&p.difference(y.coords()) - &py).scale(&c.inverse_eval(y)))
}

/// Recovers `p(x)` from the action on a point mass: `D(δ̂_x)(c)·c^x`.
pub fn generating_value(d: &Derivation, x: &GroupElement, c: &Exponential) -> Result<Scalar> {
    let v = apply(d, &delta(x), c)?;
    Ok(if v.is_zero() { v } else { v * c.eval(x)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::eval;

    fn x1() -> Polynomial {
        Polynomial::var(1, 0)
    }

    fn e(c: i64) -> Exponential {
        Exponential::from_ints(&[c]).unwrap()
    }

    fn g(v: i64) -> GroupElement {
        GroupElement::new(vec![v])
    }

    fn double_root() -> Measure {
        Measure::from_ints(1, &[(&[-2], 1), (&[-1], -2), (&[0], 1)]).unwrap()
    }

    #[test]
    fn apply_examples() {
        let mu = double_root();
        for c in [1, 2, -3] {
            let id = apply(&Derivation::identity(1), &mu, &e(c)).unwrap();
            assert_eq!(id, eval(&transform(&mu), &e(c)).unwrap());
        }
        assert_eq!(apply(&Derivation::new(x1()), &mu, &e(1)).unwrap(), Scalar::zero());
        assert_eq!(
            apply(&Derivation::new(x1().pow(2)), &mu, &e(1)).unwrap(),
            Scalar::from_int(2)
        );
    }

    #[test]
    fn compose_examples() {
        let d = Derivation::new(&x1().pow(3) + &x1());
        assert_eq!(compose(&Derivation::identity(1), &d), d);
        let x = Derivation::new(x1());
        assert_eq!(compose(&x, &x).generating_function(), &x1().pow(2));
        let y = Derivation::new(x1().pow(2));
        assert_eq!(compose(&d, &y), compose(&y, &d));
    }

    #[test]
    fn order_check_examples() {
        let sq = Derivation::new(x1().pow(2));
        assert!(order_check(&sq, 2));
        assert!(!order_check(&sq, 1));
        let seven = Derivation::new(Polynomial::constant(1, Scalar::from_int(7)));
        assert!(order_check(&seven, 0));
        let xy = Derivation::new(&Polynomial::var(2, 0) * &Polynomial::var(2, 1));
        assert!(order_check(&xy, 2));
        assert!(!order_check(&xy, 1));
    }

    #[test]
    fn normalization_drops_constant_of_positive_order() {
        let d = Derivation::new(&x1() + &Polynomial::constant(1, Scalar::from_int(5)));
        assert_eq!(d.generating_function(), &x1());
        assert_eq!(apply(&d, &delta(&g(0)), &e(3)).unwrap(), Scalar::zero());
        let k = Derivation::new(Polynomial::constant(1, Scalar::from_int(5)));
        assert_eq!(k.order(), Some(0));
    }

    #[test]
    fn leibniz_defect_examples() {
        let mu = Measure::from_ints(1, &[(&[-1], 3), (&[2], -1)]).unwrap();
        let nu = Measure::from_ints(1, &[(&[0], 2), (&[1], 5)]).unwrap();
        let additive = Derivation::new(x1().scale(&Scalar::from_int(4)));
        for c in [1, 2, -1] {
            assert!(leibniz_defect(&additive, &mu, &nu, &e(c)).unwrap().is_zero());
            let id = leibniz_defect(&Derivation::identity(1), &mu, &nu, &e(c)).unwrap();
            let expected = -(eval(&transform(&mu), &e(c)).unwrap() * eval(&transform(&nu), &e(c)).unwrap());
            assert_eq!(id, expected);
        }
        let sq = Derivation::new(x1().pow(2));
        let d1 = delta(&g(1));
        assert_eq!(leibniz_defect(&sq, &d1, &d1, &e(1)).unwrap(), Scalar::from_int(2));
    }

    #[test]
    fn generating_function_is_recovered_from_point_masses() {
        let p = &(&x1().pow(3) - &x1().scale(&Scalar::from_int(2))) + &x1().pow(2);
        let d = Derivation::new(p.clone());
        for x in -3..=3 {
            assert_eq!(generating_value(&d, &g(x), &e(2)).unwrap(), p.eval(&[x]));
        }
    }

    #[test]
    fn shifted_defect_lowers_order() {
        let d = Derivation::new(&x1().pow(3) + &x1());
        let mu = Measure::from_ints(1, &[(&[-1], 3), (&[2], -1), (&[4], 7)]).unwrap();
        for y in [-2, 1, 3] {
            let f = shifted_defect_generating_function(&d, &g(y), &e(2)).unwrap();
            assert!(f.degree().unwrap() <= 2);
            assert_eq!(
                shifted_defect(&d, &mu, &g(y), &e(2)).unwrap(),
                moment(&mu, &f, &e(2)).unwrap()
            );
        }
    }
}
