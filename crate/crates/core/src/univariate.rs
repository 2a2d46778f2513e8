//! Univariate polynomials over Gaussian rationals: gcd, square-free part,
//! and root isolation into exact Gaussian-rational roots plus numerically
//! enclosed approximate roots.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// Default enclosure radius below which an approximate root is certified.
pub const DEFAULT_ENCLOSURE_RADIUS: f64 = 1.0 / (1u64 << 40) as f64;

/// Coefficients from the constant term upward; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly(Vec<Scalar>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.0
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| acc * x + c)
    }

    pub fn monic(&self) -> Self {
        match self.0.last() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.inv().unwrap();
                UniPoly(self.0.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Scalar::from_int(i as i64))
                .collect(),
        )
    }

    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc_inv = d.0[dd].inv().unwrap();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (UniPoly(Vec::new()), self.clone());
        }
        let mut q = vec![Scalar::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let f = &r[i] * &lc_inv;
            if f.is_zero() {
                continue;
            }
            for (j, c) in d.0.iter().enumerate() {
                r[i - dd + j] -= &(&f * c);
            }
            q[i - dd] = f;
        }
        r.truncate(dd);
        (UniPoly::new(q), UniPoly::new(r))
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Removes repeated factors.
    pub fn square_free(&self) -> UniPoly {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Number of times `(z − r)` divides `self`.
    pub fn multiplicity(&self, r: &Scalar) -> usize {
        let lin = UniPoly(vec![-r, Scalar::one()]);
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() && p.eval(r).is_zero() {
            p = p.div_rem(&lin).0;
            m += 1;
        }
        m
    }

    fn to_complex(&self) -> Vec<Complex64> {
        self.0.iter().map(Scalar::to_complex).collect()
    }
}

/// A root known only numerically.
#[derive(Clone, Debug, PartialEq)]
pub struct ApproxRoot {
    pub value: Complex64,
    /// Radius of a disc around `value` containing a root.
    pub radius: f64,
    pub certified: bool,
}

#[derive(Clone, Debug, Default)]
pub struct RootReport {
    /// Exact roots with their multiplicities in the input.
    pub exact: Vec<(Scalar, usize)>,
    pub approximate: Vec<ApproxRoot>,
}

fn horner(p: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut dv = Complex64::new(0.0, 0.0);
    for c in p.iter().rev() {
        dv = dv * x + v;
        v = v * x + c;
    }
    (v, dv)
}

/// Aberth–Ehrlich simultaneous iteration followed by Newton polishing.
fn numeric_roots(p: &[Complex64]) -> Vec<Complex64> {
    let n = p.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = p[n];
    let monic: Vec<Complex64> = p.iter().map(|c| c / lead).collect();
    // Cauchy bound
    let bound = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(0.5 * bound, theta)
        })
        .collect();
    for _ in 0..500 {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (v, dv) = horner(&monic, z[k]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / dv;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| Complex64::new(1.0, 0.0) / (z[k] - z[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    for r in &mut z {
        for _ in 0..4 {
            let (v, dv) = horner(&monic, *r);
            if dv.norm() == 0.0 {
                break;
            }
            let step = v / dv;
            if !step.is_finite() {
                break;
            }
            *r -= step;
        }
    }
    z
}

/// Scales `p` to Gaussian-integer coefficients.
fn clear_denominators(p: &UniPoly) -> UniPoly {
    let l = p
        .0
        .iter()
        .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, &c.denom_lcm()));
    let s = Scalar::from(l);
    UniPoly(p.0.iter().map(|c| c * &s).collect())
}

fn round_to_int(x: f64) -> Option<BigInt> {
    if !x.is_finite() {
        return None;
    }
    num_traits::FromPrimitive::from_f64(x.round())
}

/// Gaussian-rational candidate for an approximate root of `p` (which has
/// Gaussian-integer coefficients): the numerator `lead·r` of any such root
/// is a Gaussian integer.
fn rational_candidate(p: &UniPoly, r: Complex64) -> Option<Scalar> {
    let lead = p.0.last()?;
    let scaled = lead.to_complex() * r;
    let re = round_to_int(scaled.re)?;
    let im = round_to_int(scaled.im)?;
    let num = Scalar::new(BigRational::from_integer(re), BigRational::from_integer(im));
    Some(num / lead)
}

/// Roots of `p`: exact Gaussian-rational roots with multiplicity, and the
/// remaining roots as numeric enclosures.
pub fn roots(p: &UniPoly) -> RootReport {
    let mut report = RootReport::default();
    if p.degree().unwrap_or(0) == 0 {
        return report;
    }
    let mut sf = clear_denominators(&p.square_free());
    loop {
        let approx = numeric_roots(&sf.to_complex());
        let mut found = false;
        for r in &approx {
            let Some(cand) = rational_candidate(&sf, *r) else { continue };
            if sf.eval(&cand).is_zero() {
                let lin = UniPoly(vec![-&cand, Scalar::one()]);
                sf = clear_denominators(&sf.div_rem(&lin).0);
                report.exact.push((cand.clone(), p.multiplicity(&cand)));
                found = true;
            }
        }
        if !found || sf.degree().unwrap_or(0) == 0 {
            if !found {
                let c = sf.to_complex();
                let n = sf.degree().unwrap_or(0) as f64;
                report.approximate = approx
                    .into_iter()
                    .map(|z| {
                        let (v, dv) = horner(&c, z);
                        let radius = if v.norm() == 0.0 {
                            0.0
                        } else {
                            n * v.norm() / dv.norm()
                        };
                        ApproxRoot {
                            value: z,
                            radius,
                            certified: radius <= DEFAULT_ENCLOSURE_RADIUS,
                        }
                    })
                    .collect();
            }
            break;
        }
    }
    report.exact.sort();
    report.approximate.sort_by(|a, b| {
        (a.value.re, a.value.im)
            .partial_cmp(&(b.value.re, b.value.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&x| Scalar::from_int(x)).collect())
    }

    fn from_roots(rs: &[Scalar]) -> UniPoly {
        rs.iter().fold(poly(&[1]), |acc, r| {
            let lin = UniPoly::new(vec![-r, Scalar::one()]);
            let mut out = vec![Scalar::zero(); acc.0.len() + 1];
            for (i, a) in acc.0.iter().enumerate() {
                for (j, b) in lin.0.iter().enumerate() {
                    out[i + j] += &(a * b);
                }
            }
            UniPoly::new(out)
        })
    }

    #[test]
    fn exact_integer_roots() {
        let rep = roots(&poly(&[2, -3, 1]));
        assert_eq!(rep.exact, vec![(Scalar::from_int(1), 1), (Scalar::from_int(2), 1)]);
        assert!(rep.approximate.is_empty());
    }

    #[test]
    fn golden_ratio_roots_are_approximate() {
        let rep = roots(&poly(&[-1, -1, 1]));
        assert!(rep.exact.is_empty());
        assert_eq!(rep.approximate.len(), 2);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((rep.approximate[1].value.re - phi).abs() < 1e-12);
        assert!(rep.approximate.iter().all(|r| r.certified));
    }

    #[test]
    fn gaussian_rational_roots_with_multiplicity() {
        let a = Scalar::new(BigRational::new(1.into(), 2.into()), BigRational::new((-2).into(), 3.into()));
        let b = Scalar::gaussian(-1, 1);
        let p = from_roots(&[a.clone(), a.clone(), a.clone(), b.clone()]);
        let rep = roots(&p);
        let mut expected = vec![(a, 3), (b, 1)];
        expected.sort();
        assert_eq!(rep.exact, expected);
    }

    #[test]
    fn mixed_exact_and_irrational() {
        // (z − 3)(z² − 2)
        let p = poly(&[6, -2, -3, 1]);
        let rep = roots(&p);
        assert_eq!(rep.exact, vec![(Scalar::from_int(3), 1)]);
        assert_eq!(rep.approximate.len(), 2);
    }

    #[test]
    fn gcd_and_square_free() {
        let p = from_roots(&[Scalar::from_int(1), Scalar::from_int(1), Scalar::from_int(2)]);
        let q = from_roots(&[Scalar::from_int(1), Scalar::from_int(3)]);
        assert_eq!(p.gcd(&q), poly(&[-1, 1]));
        assert_eq!(p.square_free(), poly(&[2, -3, 1]));
        assert_eq!(p.multiplicity(&Scalar::from_int(1)), 2);
    }
}
