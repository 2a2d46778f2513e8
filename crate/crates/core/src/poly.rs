//! Multivariate polynomials over [`Scalar`] in the coordinate functions
//! `x1, …, xd` of `Z^d`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::Scalar;

pub type MultiIndex = Vec<u32>;

/// Sparse polynomial; never stores a zero coefficient. The zero polynomial
/// is the empty map and has no degree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<MultiIndex, Scalar>,
}

pub(crate) fn binomial(n: u32, k: u32) -> Scalar {
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
    }
    Scalar::from(num_bigint::BigInt::from(acc))
}

/// All multi-indices `t` with `0 ≤ t ≤ bound` componentwise.
pub(crate) fn box_indices(bound: &[u32]) -> Vec<MultiIndex> {
    let mut out = vec![Vec::with_capacity(bound.len())];
    for &b in bound {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=b).map(move |t| {
                    let mut v = prefix.clone();
                    v.push(t);
                    v
                })
            })
            .collect();
    }
    out
}

/// All multi-indices of total degree at most `deg`, sorted by degree and
/// then lexicographically.
pub fn monomials_up_to(dim: usize, deg: u32) -> Vec<MultiIndex> {
    fn rec(dim: usize, left: u32, prefix: &mut MultiIndex, out: &mut Vec<MultiIndex>) {
        if prefix.len() == dim {
            out.push(prefix.clone());
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(dim, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(dim, deg, &mut Vec::with_capacity(dim), &mut out);
    out.sort_by(|a, b| {
        let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
        da.cmp(&db).then_with(|| a.cmp(b))
    });
    out
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        Polynomial {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Scalar) -> Self {
        Self::monomial(dim, vec![0; dim], c)
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Scalar::one())
    }

    /// The coordinate function `x_{i+1}`.
    pub fn var(dim: usize, i: usize) -> Self {
        let mut alpha = vec![0; dim];
        alpha[i] = 1;
        Self::monomial(dim, alpha, Scalar::one())
    }

    pub fn monomial(dim: usize, alpha: MultiIndex, c: Scalar) -> Self {
        assert_eq!(alpha.len(), dim, "multi-index length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(alpha, c);
        }
        Polynomial { dim, terms }
    }

    /// Builds a polynomial, merging repeated multi-indices and pruning zeros.
    pub fn from_terms<I>(dim: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (MultiIndex, Scalar)>,
    {
        let mut p = Polynomial::zero(dim);
        for (alpha, c) in terms {
            p.add_term(alpha, &c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, alpha: MultiIndex, c: &Scalar) {
        assert_eq!(alpha.len(), self.dim, "multi-index length");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(alpha) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&MultiIndex, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, alpha: &[u32]) -> Scalar {
        self.terms.get(alpha).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|a| a.iter().sum()).max()
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&vec![0; self.dim])
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Polynomial::zero(self.dim);
        }
        Polynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(a, x)| (a.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Polynomial::one(self.dim), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: &[i64]) -> Scalar {
        assert_eq!(x.len(), self.dim, "evaluation point dimension");
        self.terms
            .iter()
            .map(|(alpha, c)| {
                let m: i128 = alpha
                    .iter()
                    .zip(x)
                    .map(|(&e, &xi)| (xi as i128).pow(e))
                    .product();
                c * &Scalar::from(num_bigint::BigInt::from(m))
            })
            .sum()
    }

    pub fn eval_scalars(&self, x: &[Scalar]) -> Scalar {
        assert_eq!(x.len(), self.dim, "evaluation point dimension");
        self.terms
            .iter()
            .map(|(alpha, c)| {
                alpha
                    .iter()
                    .zip(x)
                    .fold(c.clone(), |acc, (&e, xi)| acc * xi.pow(e as i64).unwrap())
            })
            .sum()
    }

    /// `x ↦ p(x + a)`.
    pub fn translate(&self, a: &[i64]) -> Self {
        assert_eq!(a.len(), self.dim, "shift dimension");
        let shift: Vec<Scalar> = a.iter().map(|&v| Scalar::from_int(v)).collect();
        self.translate_scalar(&shift)
    }

    /// `x ↦ p(x + a)` for a scalar shift vector.
    pub fn translate_scalar(&self, a: &[Scalar]) -> Self {
        let mut out = Polynomial::zero(self.dim);
        for (alpha, c) in &self.terms {
            for t in box_indices(alpha) {
                let mut coef = c.clone();
                for i in 0..self.dim {
                    coef = coef
                        * binomial(alpha[i], t[i])
                        * a[i].pow((alpha[i] - t[i]) as i64).unwrap();
                }
                out.add_term(t, &coef);
            }
        }
        out
    }

    /// `x ↦ p(−x)`.
    pub fn reflect(&self) -> Self {
        Polynomial {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| {
                    let odd = a.iter().sum::<u32>() % 2 == 1;
                    (a.clone(), if odd { -c } else { c.clone() })
                })
                .collect(),
        }
    }

    /// Forward difference `Δ_y p (x) = p(x + y) − p(x)`.
    pub fn difference(&self, y: &[i64]) -> Self {
        &self.translate(y) - self
    }

    /// Places the variables of `self` at positions `offset..offset+dim` of a
    /// polynomial ring in `new_dim` variables.
    pub fn embed(&self, new_dim: usize, offset: usize) -> Self {
        assert!(offset + self.dim <= new_dim);
        Polynomial {
            dim: new_dim,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| {
                    let mut b = vec![0; new_dim];
                    b[offset..offset + self.dim].copy_from_slice(a);
                    (b, c.clone())
                })
                .collect(),
        }
    }

    /// Substitutes `x_a ↦ x_a + x_b` for every pair `(a, b)`; the targets `b`
    /// must not themselves be substituted.
    pub fn add_vars(&self, pairs: &[(usize, usize)]) -> Self {
        let mut out = Polynomial::zero(self.dim);
        for (alpha, c) in &self.terms {
            let bound: Vec<u32> = pairs.iter().map(|&(a, _)| alpha[a]).collect();
            for t in box_indices(&bound) {
                let mut beta = alpha.clone();
                let mut coef = c.clone();
                for (k, &(a, b)) in pairs.iter().enumerate() {
                    coef = coef * binomial(alpha[a], t[k]);
                    beta[a] = t[k];
                    beta[b] += alpha[a] - t[k];
                }
                out.add_term(beta, &coef);
            }
        }
        out
    }

    /// Substitutes each variable `x_i` by `images[i]`; all images share one
    /// ambient dimension.
    pub fn compose(&self, images: &[Polynomial]) -> Self {
        assert_eq!(images.len(), self.dim, "one image per variable");
        let target = images.first().map_or(0, |p| p.dim);
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(p.dim), p.clone()])
            .collect();
        let mut out = Polynomial::zero(target);
        for (alpha, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in alpha.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            out = &out + &term;
        }
        out
    }

    /// The iterated difference `Δ_{y_1,…,y_k} p (x)` as a polynomial in the
    /// `d·(k+1)` variables `(x, y_1, …, y_k)`, block `j` holding `y_j`.
    pub fn symbolic_difference(&self, k: usize) -> Self {
        let d = self.dim;
        let total = d * (k + 1);
        let mut acc = self.embed(total, 0);
        for j in 1..=k {
            let pairs: Vec<(usize, usize)> = (0..d).map(|i| (i, j * d + i)).collect();
            acc = &acc.add_vars(&pairs) - &acc;
        }
        acc
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        Polynomial::from_terms(
            self.dim,
            self.terms.iter().map(|(a, c)| (a.clone(), f(c))),
        )
    }

    /// Coefficient vector over the given list of multi-indices.
    pub fn coefficients_on(&self, basis: &[MultiIndex]) -> Vec<Scalar> {
        basis.iter().map(|a| self.coeff(a)).collect()
    }

    pub fn from_coefficients(dim: usize, basis: &[MultiIndex], coeffs: &[Scalar]) -> Self {
        Polynomial::from_terms(dim, basis.iter().cloned().zip(coeffs.iter().cloned()))
    }

    pub fn fmt_with(&self, var: &str) -> String {
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        format_terms(
            ordered.into_iter().map(|(a, c)| {
                let mono: Vec<String> = a
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| power(&format!("{var}{}", i + 1), e as i64))
                    .collect();
                (mono.join("*"), c)
            }),
        )
    }
}

fn power(base: &str, e: i64) -> String {
    if e == 1 {
        base.to_string()
    } else {
        format!("{base}^{e}")
    }
}

/// Renders `Σ c·m` with monomial strings `m` (empty for the constant) in a
/// form the script parser reads back.
pub(crate) fn format_terms<'a, I>(terms: I) -> String
where
    I: IntoIterator<Item = (String, &'a Scalar)>,
{
    let mut out = String::new();
    for (mono, c) in terms {
        let complex = !c.is_real() && !c.re().is_zero();
        let neg = !complex
            && if c.is_real() {
                num_traits::Signed::is_negative(c.re())
            } else {
                num_traits::Signed::is_negative(c.im())
            };
        let mag = if neg { -c } else { c.clone() };
        let body = if mono.is_empty() {
            if complex {
                format!("({mag})")
            } else {
                mag.to_string()
            }
        } else if mag.is_one() {
            mono
        } else if complex {
            format!("({mag})*{mono}")
        } else {
            format!("{mag}*{mono}")
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with("x"))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[d={}]({})", self.dim, self)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.dim, rhs.dim, "polynomial dimension");
        let mut out = self.clone();
        for (a, c) in &rhs.terms {
            out.add_term(a.clone(), c);
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.dim, rhs.dim, "polynomial dimension");
        let mut out = self.clone();
        for (a, c) in &rhs.terms {
            out.add_term(a.clone(), &-c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.dim, rhs.dim, "polynomial dimension");
        let mut out = Polynomial::zero(self.dim);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let ab: MultiIndex = a.iter().zip(b).map(|(i, j)| i + j).collect();
                out.add_term(ab, &(x * y));
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Scalar::one())
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
