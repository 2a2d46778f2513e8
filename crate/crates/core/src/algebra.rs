//! Group elements of `Z^d`, exponentials, and finitely supported measures
//! with convolution.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{check_dim, Error, Result};
use crate::poly::{format_terms, Polynomial};
use crate::scalar::Scalar;

/// A point of `Z^d`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Vec<i64>);

impl GroupElement {
    pub fn new(coords: Vec<i64>) -> Self {
        GroupElement(coords)
    }

    pub fn zero(dim: usize) -> Self {
        GroupElement(vec![0; dim])
    }

    /// The unit vector `e_{i+1}`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![0; dim];
        v[i] = 1;
        GroupElement(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl From<Vec<i64>> for GroupElement {
    fn from(v: Vec<i64>) -> Self {
        GroupElement(v)
    }
}

impl Add for &GroupElement {
    type Output = GroupElement;
    fn add(self, rhs: &GroupElement) -> GroupElement {
        GroupElement(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &GroupElement {
    type Output = GroupElement;
    fn sub(self, rhs: &GroupElement) -> GroupElement {
        GroupElement(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        GroupElement(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// The exponential `m(x) = ∏ c_i^{x_i}` with a base of nonzero scalars.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponential {
    base: Vec<Scalar>,
}

impl Exponential {
    pub fn new(base: Vec<Scalar>) -> Result<Self> {
        if base.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if let Some(i) = base.iter().position(Zero::is_zero) {
            return Err(Error::ZeroExponentialCoordinate(i));
        }
        Ok(Exponential { base })
    }

    /// The trivial exponential `m ≡ 1`.
    pub fn one(dim: usize) -> Self {
        Exponential {
            base: vec![Scalar::one(); dim],
        }
    }

    pub fn from_ints(base: &[i64]) -> Result<Self> {
        Exponential::new(base.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    pub fn base(&self) -> &[Scalar] {
        &self.base
    }

    pub fn eval(&self, x: &GroupElement) -> Result<Scalar> {
        check_dim(self.dim(), x.dim())?;
        Ok(self.eval_coords(x.coords()))
    }

    pub(crate) fn eval_coords(&self, x: &[i64]) -> Scalar {
        self.base
            .iter()
            .zip(x)
            .map(|(c, &e)| c.pow(e).expect("nonzero base"))
            .product()
    }

    /// `m̌(x) = m(−x)`.
    pub fn inverse_eval(&self, x: &GroupElement) -> Scalar {
        self.base
            .iter()
            .zip(x.coords())
            .map(|(c, &e)| c.pow(-e).expect("nonzero base"))
            .product()
    }
}

impl fmt::Display for Exponential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.base.iter().map(Scalar::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for Exponential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finitely supported measure on `Z^d`, i.e. an element of the group
/// algebra. Zero masses are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Measure {
    dim: usize,
    support: BTreeMap<GroupElement, Scalar>,
}

impl Measure {
    pub fn zero(dim: usize) -> Self {
        Measure {
            dim,
            support: BTreeMap::new(),
        }
    }

    pub fn from_masses<I>(dim: usize, masses: I) -> Result<Self>
    where
        I: IntoIterator<Item = (GroupElement, Scalar)>,
    {
        let mut m = Measure::zero(dim);
        for (x, c) in masses {
            check_dim(dim, x.dim())?;
            m.add_mass(x, &c);
        }
        Ok(m)
    }

    /// Convenience constructor from integer coordinates and masses.
    pub fn from_ints(dim: usize, masses: &[(&[i64], i64)]) -> Result<Self> {
        Measure::from_masses(
            dim,
            masses
                .iter()
                .map(|(x, c)| (GroupElement::new(x.to_vec()), Scalar::from_int(*c))),
        )
    }

    fn add_mass(&mut self, x: GroupElement, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.support.entry(x) {
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

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn mass(&self, x: &GroupElement) -> Scalar {
        self.support.get(x).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> impl Iterator<Item = (&GroupElement, &Scalar)> + '_ {
        self.support.iter()
    }

    pub fn support_size(&self) -> usize {
        self.support.len()
    }

    pub fn scale(&self, c: &Scalar) -> Measure {
        let mut m = Measure::zero(self.dim);
        for (x, v) in &self.support {
            m.add_mass(x.clone(), &(v * c));
        }
        m
    }

    pub fn add(&self, other: &Measure) -> Result<Measure> {
        check_dim(self.dim, other.dim)?;
        let mut m = self.clone();
        for (x, v) in &other.support {
            m.add_mass(x.clone(), v);
        }
        Ok(m)
    }

    pub fn sub(&self, other: &Measure) -> Result<Measure> {
        self.add(&other.scale(&-Scalar::one()))
    }

    /// The reweighted measure `x ↦ p(x)·μ(x)`.
    pub fn weighted(&self, p: &Polynomial) -> Result<Measure> {
        check_dim(self.dim, p.dim())?;
        let mut m = Measure::zero(self.dim);
        for (x, v) in &self.support {
            m.add_mass(x.clone(), &(v * &p.eval(x.coords())));
        }
        Ok(m)
    }

    /// Per-coordinate `(min, max)` of the support; `None` for the zero measure.
    pub fn bounding_box(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let mut it = self.support.keys();
        let first = it.next()?;
        let mut lo = first.coords().to_vec();
        let mut hi = lo.clone();
        for x in it {
            for (i, &c) in x.coords().iter().enumerate() {
                lo[i] = lo[i].min(c);
                hi[i] = hi[i].max(c);
            }
        }
        Some((lo, hi))
    }

    pub fn is_canonical(&self) -> bool {
        self.support
            .iter()
            .all(|(x, c)| !c.is_zero() && x.dim() == self.dim)
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(
            self.support.iter().map(|(x, c)| (format!("d[{x}]"), c)),
        ))
    }
}

impl fmt::Debug for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Measure[d={}]({})", self.dim, self)
    }
}

/// The point mass `δ_x`.
pub fn delta(x: &GroupElement) -> Measure {
    let mut m = Measure::zero(x.dim());
    m.add_mass(x.clone(), &Scalar::one());
    m
}

/// `(μ*ν)(z) = Σ_{x+y=z} μ(x)ν(y)`.
pub fn convolve(mu: &Measure, nu: &Measure) -> Result<Measure> {
    check_dim(mu.dim, nu.dim)?;
    let mut out = Measure::zero(mu.dim);
    for (x, a) in &mu.support {
        for (y, b) in &nu.support {
            out.add_mass(x + y, &(a * b));
        }
    }
    Ok(out)
}

/// `Δ_{m;y} = δ_{−y} − m(y)·δ_0`.
pub fn difference_measure(m: &Exponential, y: &GroupElement) -> Result<Measure> {
    check_dim(m.dim(), y.dim())?;
    let mut out = delta(&-y);
    out.add_mass(GroupElement::zero(y.dim()), &-m.eval(y)?);
    Ok(out)
}

/// `Δ_{m;y_1,…,y_n} = Δ_{m;y_1} * ⋯ * Δ_{m;y_n}`.
pub fn difference_product(m: &Exponential, ys: &[GroupElement]) -> Result<Measure> {
    let (first, rest) = ys.split_first().ok_or(Error::EmptyShiftList)?;
    rest.iter().try_fold(difference_measure(m, first)?, |acc, y| {
        convolve(&acc, &difference_measure(m, y)?)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(v: &[i64]) -> GroupElement {
        GroupElement::new(v.to_vec())
    }

    fn m1(masses: &[(i64, i64)]) -> Measure {
        Measure::from_masses(
            1,
            masses.iter().map(|&(x, c)| (g(&[x]), Scalar::from_int(c))),
        )
        .unwrap()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&g(&[0])), m1(&[(0, 1)]));
        let d = delta(&g(&[2, -1]));
        assert_eq!(d.support_size(), 1);
        assert_eq!(d.mass(&g(&[2, -1])), Scalar::one());
        assert_eq!(convolve(&delta(&g(&[1])), &delta(&g(&[3]))).unwrap(), m1(&[(4, 1)]));
    }

    #[test]
    fn convolve_examples() {
        let d = m1(&[(-1, 1), (0, -1)]);
        assert_eq!(convolve(&d, &d).unwrap(), m1(&[(-2, 1), (-1, -2), (0, 1)]));
        assert_eq!(convolve(&d, &delta(&g(&[0]))).unwrap(), d);
        assert!(convolve(&d, &delta(&g(&[0, 0]))).is_err());
    }

    #[test]
    fn difference_measure_examples() {
        let one = Exponential::from_ints(&[1]).unwrap();
        let two = Exponential::from_ints(&[2]).unwrap();
        assert_eq!(difference_measure(&one, &g(&[1])).unwrap(), m1(&[(-1, 1), (0, -1)]));
        assert_eq!(difference_measure(&two, &g(&[1])).unwrap(), m1(&[(-1, 1), (0, -2)]));
        assert!(difference_measure(&two, &g(&[0])).unwrap().is_zero());
    }

    #[test]
    fn difference_product_examples() {
        let one = Exponential::from_ints(&[1]).unwrap();
        assert_eq!(
            difference_product(&one, &[g(&[1]), g(&[1])]).unwrap(),
            m1(&[(-2, 1), (-1, -2), (0, 1)])
        );
        assert_eq!(
            difference_product(&one, &[g(&[1]), g(&[2])]).unwrap(),
            m1(&[(-3, 1), (-2, -1), (-1, -1), (0, 1)])
        );
        let three = Exponential::from_ints(&[3]).unwrap();
        assert!(difference_product(&three, &[g(&[4]), g(&[0])]).unwrap().is_zero());
        assert_eq!(difference_product(&one, &[]), Err(Error::EmptyShiftList));
    }

    #[test]
    fn zero_base_rejected() {
        assert_eq!(
            Exponential::from_ints(&[1, 0]),
            Err(Error::ZeroExponentialCoordinate(1))
        );
    }
}
