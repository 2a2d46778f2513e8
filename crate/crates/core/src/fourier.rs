//! Fourier–Laplace transforms of measures on `Z^d`, represented as Laurent
//! polynomials in `z1, …, zd`: `μ̂(c) = Σ_x μ(x)·c^{−x}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::algebra::{Exponential, GroupElement, Measure};
use crate::error::{check_dim, Result};
use crate::poly::{format_terms, Polynomial};
use crate::scalar::Scalar;

/// Finitely supported map from exponent vectors in `Z^d` to scalars.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    dim: usize,
    terms: BTreeMap<Vec<i64>, Scalar>,
}

impl LaurentPoly {
    pub fn zero(dim: usize) -> Self {
        LaurentPoly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::monomial(vec![0; dim], Scalar::one())
    }

    pub fn constant(dim: usize, c: Scalar) -> Self {
        Self::monomial(vec![0; dim], c)
    }

    pub fn monomial(exponent: Vec<i64>, c: Scalar) -> Self {
        let mut p = LaurentPoly::zero(exponent.len());
        p.add_term(exponent, &c);
        p
    }

    /// The variable `z_{i+1}`.
    pub fn var(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        Self::monomial(e, Scalar::one())
    }

    pub fn from_terms<I>(dim: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<i64>, Scalar)>,
    {
        let mut p = LaurentPoly::zero(dim);
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    /// Reads an ordinary polynomial in `z` as a Laurent polynomial.
    pub fn from_polynomial(p: &Polynomial) -> Self {
        LaurentPoly::from_terms(
            p.dim(),
            p.terms()
                .map(|(a, c)| (a.iter().map(|&e| e as i64).collect(), c.clone())),
        )
    }

    fn add_term(&mut self, e: Vec<i64>, c: &Scalar) {
        assert_eq!(e.len(), self.dim, "exponent length");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<i64>, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[i64]) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        LaurentPoly::from_terms(self.dim, self.terms.iter().map(|(e, x)| (e.clone(), x * c)))
    }

    /// Multiplication by the monomial `z^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        LaurentPoly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(LaurentPoly::one(self.dim), |acc, _| &acc * self)
    }

    /// Inverse of a single-term Laurent polynomial.
    pub fn monomial_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        Some(LaurentPoly::monomial(
            e.iter().map(|a| -a).collect(),
            c.inv()?,
        ))
    }

    /// Componentwise minimum exponent; zeros for the zero polynomial.
    pub fn min_exponents(&self) -> Vec<i64> {
        let mut lo = vec![0i64; self.dim];
        for (k, e) in self.terms.keys().enumerate() {
            for i in 0..self.dim {
                lo[i] = if k == 0 { e[i] } else { lo[i].min(e[i]) };
            }
        }
        lo
    }

    /// Multiplies by the unit monomial that makes every exponent nonnegative
    /// with some exponent zero in each coordinate, and returns the result as
    /// an ordinary polynomial in `z`.
    pub fn normalized_polynomial(&self) -> Polynomial {
        let lo = self.min_exponents();
        Polynomial::from_terms(
            self.dim,
            self.terms.iter().map(|(e, c)| {
                (
                    e.iter().zip(&lo).map(|(a, b)| (a - b) as u32).collect(),
                    c.clone(),
                )
            }),
        )
    }

    /// `Σ L(α)·c^α`.
    pub fn eval(&self, c: &Exponential) -> Result<Scalar> {
        check_dim(self.dim, c.dim())?;
        Ok(self
            .terms
            .iter()
            .map(|(e, x)| x * &c.eval_coords(e))
            .sum())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| {
            let (da, db): (i64, i64) = (a.iter().sum(), b.iter().sum());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        f.write_str(&format_terms(ordered.into_iter().map(|(e, c)| {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        format!("z{}", i + 1)
                    } else {
                        format!("z{}^{k}", i + 1)
                    }
                })
                .collect();
            (mono.join("*"), c)
        })))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[d={}]({})", self.dim, self)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.dim, rhs.dim, "Laurent polynomial dimension");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &-rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Scalar::one())
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.dim, rhs.dim, "Laurent polynomial dimension");
        let mut out = LaurentPoly::zero(self.dim);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.iter().zip(b).map(|(i, j)| i + j).collect(), &(x * y));
            }
        }
        out
    }
}

/// `μ ↦ μ̂`: the mass at `x` becomes the coefficient of `z^{−x}`.
pub fn transform(mu: &Measure) -> LaurentPoly {
    LaurentPoly::from_terms(
        mu.dim(),
        mu.support()
            .map(|(x, c)| (x.coords().iter().map(|v| -v).collect(), c.clone())),
    )
}

pub fn inverse_transform(l: &LaurentPoly) -> Measure {
    Measure::from_masses(
        l.dim(),
        l.terms()
            .map(|(e, c)| (GroupElement::new(e.iter().map(|v| -v).collect()), c.clone())),
    )
    .expect("exponent vectors share the polynomial's dimension")
}

/// Evaluation of a Laurent polynomial at an exponential base.
pub fn eval(l: &LaurentPoly, c: &Exponential) -> Result<Scalar> {
    l.eval(c)
}
