//! Exponential polynomials `f(x) = Σ_j p_j(x)·c_j^x` on `Z^d`, the action
//! `μ*f`, Fréchet order of exponential monomials, and the dimension of the
//! translate span (the variety of `f`).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::Zero;

use crate::algebra::{difference_product, Exponential, GroupElement, Measure};
use crate::error::{check_dim, Error, Result};
use crate::linalg;
use crate::poly::{box_indices, MultiIndex, Polynomial};
use crate::scalar::Scalar;

/// Canonical exponential polynomial: one polynomial per distinct base, no
/// zero polynomials stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExpPolynomial {
    dim: usize,
    terms: BTreeMap<Exponential, Polynomial>,
}

impl ExpPolynomial {
    pub fn zero(dim: usize) -> Self {
        ExpPolynomial {
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// The exponential monomial `p(x)·c^x`.
    pub fn monomial(c: Exponential, p: Polynomial) -> Result<Self> {
        check_dim(c.dim(), p.dim())?;
        let mut f = ExpPolynomial::zero(p.dim());
        f.add_term(c, p);
        Ok(f)
    }

    /// A plain polynomial, i.e. the `1`-exponential monomial `p·1^x`.
    pub fn polynomial(p: Polynomial) -> Self {
        let c = Exponential::one(p.dim());
        ExpPolynomial::monomial(c, p).expect("matching dimensions")
    }

    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponential, Polynomial)>,
    {
        let mut f = ExpPolynomial::zero(dim);
        for (c, p) in terms {
            check_dim(dim, c.dim())?;
            check_dim(dim, p.dim())?;
            f.add_term(c, p);
        }
        Ok(f)
    }

    fn add_term(&mut self, c: Exponential, p: Polynomial) {
        if p.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&c) {
            Some(q) => &q + &p,
            None => p,
        };
        if !sum.is_zero() {
            self.terms.insert(c, sum);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponential, &Polynomial)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut f = ExpPolynomial::zero(self.dim);
        for (c, p) in &self.terms {
            f.add_term(c.clone(), p.scale(s));
        }
        f
    }

    /// `x ↦ f(x + a)`.
    pub fn translate(&self, a: &GroupElement) -> Result<Self> {
        check_dim(self.dim, a.dim())?;
        let mut f = ExpPolynomial::zero(self.dim);
        for (c, p) in &self.terms {
            f.add_term(c.clone(), p.translate(a.coords()).scale(&c.eval(a)?));
        }
        Ok(f)
    }

    /// Coordinates of `self` over a list of `(base, multi-index)` keys.
    fn coefficients_on(&self, keys: &[(Exponential, MultiIndex)]) -> Vec<Scalar> {
        keys.iter()
            .map(|(c, a)| self.terms.get(c).map(|p| p.coeff(a)).unwrap_or_default())
            .collect()
    }

    /// Every `(base, multi-index)` that can occur in a translate of `self`.
    fn translate_keys(&self) -> Vec<(Exponential, MultiIndex)> {
        self.terms
            .iter()
            .flat_map(|(c, p)| {
                let lower: BTreeSet<MultiIndex> =
                    p.terms().flat_map(|(a, _)| box_indices(a)).collect();
                lower.into_iter().map(move |a| (c.clone(), a))
            })
            .collect()
    }
}

impl fmt::Display for ExpPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, p)| format!("({p})·{c}^x"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for ExpPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExpPolynomial[d={}]({})", self.dim, self)
    }
}

impl Add for &ExpPolynomial {
    type Output = ExpPolynomial;
    fn add(self, rhs: &ExpPolynomial) -> ExpPolynomial {
        assert_eq!(self.dim, rhs.dim, "exponential polynomial dimension");
        let mut f = self.clone();
        for (c, p) in &rhs.terms {
            f.add_term(c.clone(), p.clone());
        }
        f
    }
}

impl Sub for &ExpPolynomial {
    type Output = ExpPolynomial;
    fn sub(self, rhs: &ExpPolynomial) -> ExpPolynomial {
        self + &rhs.scale(&-Scalar::from_int(1))
    }
}

/// Pointwise product: `(p·c^x)(q·e^x) = (pq)·(ce)^x`.
impl Mul for &ExpPolynomial {
    type Output = ExpPolynomial;
    fn mul(self, rhs: &ExpPolynomial) -> ExpPolynomial {
        assert_eq!(self.dim, rhs.dim, "exponential polynomial dimension");
        let mut f = ExpPolynomial::zero(self.dim);
        for (c, p) in &self.terms {
            for (e, q) in &rhs.terms {
                let base = c.base().iter().zip(e.base()).map(|(a, b)| a * b).collect();
                let ce = Exponential::new(base).expect("product of nonzero bases");
                f.add_term(ce, p * q);
            }
        }
        f
    }
}

/// `Σ_j p_j(x)·c_j^x`, exact for negative coordinates as well.
pub fn evaluate(f: &ExpPolynomial, x: &GroupElement) -> Result<Scalar> {
    check_dim(f.dim, x.dim())?;
    f.terms
        .iter()
        .map(|(c, p)| Ok(p.eval(x.coords()) * c.eval(x)?))
        .sum()
}

/// The module action `(μ*f)(x) = Σ_y μ(y)·f(x − y)` in closed form.
pub fn act(mu: &Measure, f: &ExpPolynomial) -> Result<ExpPolynomial> {
    check_dim(mu.dim(), f.dim)?;
    let mut out = ExpPolynomial::zero(f.dim);
    for (c, p) in &f.terms {
        let mut q = Polynomial::zero(f.dim);
        for (y, w) in mu.support() {
            let neg: Vec<i64> = y.coords().iter().map(|v| -v).collect();
            q = &q + &p.translate(&neg).scale(&(w * &c.inverse_eval(y)));
        }
        out.add_term(c.clone(), q);
    }
    Ok(out)
}

/// Multisets of size `k` drawn from the unit vectors of `Z^d`.
pub(crate) fn unit_tuples(dim: usize, k: usize) -> Vec<Vec<GroupElement>> {
    fn rec(dim: usize, k: usize, start: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        for i in start..dim {
            acc.push(i);
            rec(dim, k, i, acc, out);
            acc.pop();
        }
    }
    let mut idx = Vec::new();
    rec(dim, k, 0, &mut Vec::new(), &mut idx);
    idx.into_iter()
        .map(|t| t.into_iter().map(|i| GroupElement::unit(dim, i)).collect())
        .collect()
}

/// Deterministic spread-out shift tuples used to cross-check symbolic answers.
fn sample_tuples(dim: usize, k: usize) -> Vec<Vec<GroupElement>> {
    (0..3i64)
        .map(|s| {
            (0..k as i64)
                .map(|j| {
                    GroupElement::new(
                        (0..dim as i64)
                            .map(|i| ((s + 2) * (j + 1) + 3 * i) % 5 - 2 + (i + j + s) % 2)
                            .collect(),
                    )
                })
                .collect()
        })
        .collect()
}

fn single_term(f: &ExpPolynomial) -> Result<(&Exponential, &Polynomial)> {
    if f.terms.len() != 1 {
        return Err(Error::MultiTermInput(f.terms.len()));
    }
    Ok(f.terms.iter().next().unwrap())
}

/// A shift tuple of length `deg p` on which `Δ_{c;ys}` does not kill `p·c^x`.
pub fn frechet_witness(f: &ExpPolynomial) -> Result<Vec<GroupElement>> {
    let (c, p) = single_term(f)?;
    let n = p.degree().expect("stored polynomials are nonzero") as usize;
    if n == 0 {
        return Ok(Vec::new());
    }
    for ys in unit_tuples(f.dim, n) {
        if !act(&difference_product(c, &ys)?, f)?.is_zero() {
            return Ok(ys);
        }
    }
    Err(Error::Consistency(format!(
        "no unit-shift witness of length {n} for {f}"
    )))
}

/// Fréchet order (degree) of an exponential monomial `p·c^x`: the least `n`
/// with `Δ_{c;y_1,…,y_{n+1}} * f = 0` for all shifts.
///
/// The answer is `deg p`, certified symbolically by the vanishing of
/// `Δ_{y_1,…,y_{n+1}} p` as a polynomial in `x` and the `y`'s. The action of
/// the difference measures on sampled shift tuples is checked as well.
pub fn frechet_order(f: &ExpPolynomial) -> Result<usize> {
    let (c, p) = single_term(f)?;
    let n = p.degree().expect("stored polynomials are nonzero") as usize;
    if !p.symbolic_difference(n + 1).is_zero() || p.symbolic_difference(n).is_zero() {
        return Err(Error::Consistency(format!("symbolic order of {p} is not {n}")));
    }
    let mut tuples = unit_tuples(f.dim, n + 1);
    tuples.extend(sample_tuples(f.dim, n + 1));
    for ys in &tuples {
        if !act(&difference_product(c, ys)?, f)?.is_zero() {
            return Err(Error::Consistency(format!(
                "difference product over {ys:?} does not annihilate {f}"
            )));
        }
    }
    frechet_witness(f)?;
    Ok(n)
}

/// Shifts whose translates span the whole translate space of `f`.
///
/// For a single base the lower set generated by the support is unisolvent
/// for the polynomials in the shift variable. With several bases each
/// coordinate gets a run of consecutive integers long enough for the
/// one-dimensional exponential polynomials appearing in that coordinate.
fn spanning_shifts(f: &ExpPolynomial) -> Vec<GroupElement> {
    if f.terms.len() == 1 {
        let (_, p) = f.terms.iter().next().unwrap();
        let set: BTreeSet<MultiIndex> = p.terms().flat_map(|(a, _)| box_indices(a)).collect();
        return set
            .into_iter()
            .map(|a| GroupElement::new(a.into_iter().map(i64::from).collect()))
            .collect();
    }
    let bound: Vec<u32> = (0..f.dim)
        .map(|i| {
            let distinct: BTreeSet<&Scalar> = f.terms.keys().map(|c| &c.base()[i]).collect();
            let max_deg = f
                .terms
                .values()
                .flat_map(|p| p.terms().map(move |(a, _)| a[i]))
                .max()
                .unwrap_or(0);
            distinct.len() as u32 * (max_deg + 1) - 1
        })
        .collect();
    box_indices(&bound)
        .into_iter()
        .map(|a| GroupElement::new(a.into_iter().map(i64::from).collect()))
        .collect()
}

/// A basis (reduced echelon form) of the span of all translates of `f`.
pub fn translate_basis(f: &ExpPolynomial) -> Vec<ExpPolynomial> {
    if f.is_zero() {
        return Vec::new();
    }
    let keys = f.translate_keys();
    let rows: Vec<Vec<Scalar>> = spanning_shifts(f)
        .iter()
        .map(|a| f.translate(a).expect("matching dimension").coefficients_on(&keys))
        .collect();
    linalg::span_basis(&rows, keys.len())
        .into_iter()
        .map(|row| {
            let mut g = ExpPolynomial::zero(f.dim);
            for ((c, a), v) in keys.iter().zip(row) {
                if !v.is_zero() {
                    g.add_term(c.clone(), Polynomial::monomial(f.dim, a.clone(), v));
                }
            }
            g
        })
        .collect()
}

/// Dimension of the variety `τ(f)`, i.e. of the span of all translates.
pub fn translate_span_dim(f: &ExpPolynomial) -> usize {
    translate_basis(f).len()
}
