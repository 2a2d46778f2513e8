//! Ideals of the Laurent polynomial ring (the Fourier algebra of `Z^d`):
//! membership, vanishing orders at exponentials, zero sets, local dual
//! spaces, and the derivation-defined ideals `I_{D,m}`.
//!
//! Membership in the Laurent ring is decided in the polynomial ring
//! `Q(i)[z_1, …, z_d, t]`: each generator is multiplied by a monomial to
//! clear negative exponents and the relation `t·z_1⋯z_d − 1` is adjoined,
//! which saturates by the coordinate product. Local questions at a base
//! `c` (whose coordinates are nonzero) only need the cleared generators,
//! since monomials are units near `c`.

use std::sync::OnceLock;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::algebra::{Exponential, GroupElement, Measure};
use crate::derivations::moment;
use crate::error::{check_dim, Error, Result};
use crate::exppoly::{act, evaluate, translate_basis, unit_tuples, ExpPolynomial};
use crate::fourier::{inverse_transform, transform, LaurentPoly};
use crate::groebner::GroebnerBasis;
use crate::linalg;
use crate::poly::{monomials_up_to, MultiIndex, Polynomial};
use crate::scalar::Scalar;
use crate::univariate::{self, ApproxRoot, UniPoly};

/// Largest order tried when searching for the local multiplicity.
pub const MULTIPLICITY_SEARCH_LIMIT: usize = 24;

/// An ideal given by Laurent generators, with a lazily computed Gröbner
/// basis of its saturated polynomial model.
#[derive(Debug)]
pub struct IdealHandle {
    dim: usize,
    generators: Vec<LaurentPoly>,
    saturated: OnceLock<GroebnerBasis>,
}

impl Clone for IdealHandle {
    fn clone(&self) -> Self {
        IdealHandle {
            dim: self.dim,
            generators: self.generators.clone(),
            saturated: self.saturated.clone(),
        }
    }
}

impl IdealHandle {
    pub fn new(dim: usize, generators: Vec<LaurentPoly>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        for g in &generators {
            check_dim(dim, g.dim())?;
        }
        Ok(IdealHandle {
            dim,
            generators,
            saturated: OnceLock::new(),
        })
    }

    /// The ideal generated by the transforms of `measures`.
    pub fn from_measures(dim: usize, measures: &[Measure]) -> Result<Self> {
        IdealHandle::new(dim, measures.iter().map(transform).collect())
    }

    /// `⟨M_c⟩^k`, generated by the products `(z − c)^β` with `|β| = k`.
    pub fn max_ideal_power(c: &Exponential, k: u32) -> Self {
        let d = c.dim();
        let gens = monomials_up_to(d, k)
            .into_iter()
            .filter(|b| b.iter().sum::<u32>() == k)
            .map(|b| LaurentPoly::from_polynomial(&point_power(c, &b)))
            .collect();
        IdealHandle::new(d, gens).expect("consistent dimensions")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[LaurentPoly] {
        &self.generators
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.iter().all(LaurentPoly::is_zero)
    }

    fn cleared_generators(&self) -> Vec<Polynomial> {
        self.generators
            .iter()
            .filter(|g| !g.is_zero())
            .map(LaurentPoly::normalized_polynomial)
            .collect()
    }

    /// Gröbner basis of the saturated model in `z_1, …, z_d, t`. Computed on
    /// first use; concurrent first uses block until one computation finishes.
    pub fn saturated_basis(&self) -> &GroebnerBasis {
        self.saturated.get_or_init(|| {
            let n = self.dim + 1;
            let mut gens: Vec<Polynomial> = self
                .cleared_generators()
                .iter()
                .map(|g| g.embed(n, 0))
                .collect();
            gens.push(&Polynomial::monomial(n, vec![1; n], Scalar::one()) - &Polynomial::one(n));
            GroebnerBasis::new(n, &gens)
        })
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.saturated_basis().is_unit()
    }

    /// Dimension of the quotient of the Laurent ring by the ideal, when finite.
    pub fn quotient_dimension(&self) -> Option<usize> {
        self.saturated_basis().standard_monomials().map(|s| s.len())
    }
}

/// `∏ (z_i − c_i)^{β_i}` as a polynomial in `z`.
fn point_power(c: &Exponential, beta: &[u32]) -> Polynomial {
    let d = c.dim();
    beta.iter()
        .enumerate()
        .fold(Polynomial::one(d), |acc, (i, &b)| {
            let lin = &Polynomial::var(d, i) - &Polynomial::constant(d, c.base()[i].clone());
            &acc * &lin.pow(b)
        })
}

/// Whether `l` lies in the Laurent ideal `I`.
pub fn member(ideal: &IdealHandle, l: &LaurentPoly) -> Result<bool> {
    check_dim(ideal.dim, l.dim())?;
    if l.is_zero() {
        return Ok(true);
    }
    let p = l.normalized_polynomial().embed(ideal.dim + 1, 0);
    Ok(ideal.saturated_basis().contains(&p))
}

/// Taylor expansion of `p(z)` at `z = c`, as a polynomial in `w = z − c`.
fn taylor_at(p: &Polynomial, c: &Exponential) -> Polynomial {
    p.translate_scalar(c.base())
}

/// Order of vanishing of `l` at `c`: the least total degree in its Taylor
/// expansion. `0` when `l(c) ≠ 0`.
pub fn vanishing_order(l: &LaurentPoly, c: &Exponential) -> Result<usize> {
    check_dim(l.dim(), c.dim())?;
    if l.is_zero() {
        return Err(Error::InfiniteOrder);
    }
    let t = taylor_at(&l.normalized_polynomial(), c);
    Ok(t.terms()
        .map(|(a, _)| a.iter().sum::<u32>() as usize)
        .min()
        .expect("nonzero Taylor expansion"))
}

/// `l ∈ M_c^{n+1}`, i.e. every derivation of order at most `n` annihilates
/// `l` at `c`.
pub fn max_ideal_power_member(l: &LaurentPoly, c: &Exponential, n: usize) -> Result<bool> {
    match vanishing_order(l, c) {
        Ok(k) => Ok(k > n),
        Err(Error::InfiniteOrder) => Ok(true),
        Err(e) => Err(e),
    }
}

/// Largest `n` with `c ∈ Z_n(I)`; `0` when `c` is not a root.
pub fn root_order(ideal: &IdealHandle, c: &Exponential) -> Result<usize> {
    check_dim(ideal.dim, c.dim())?;
    let mut best: Option<usize> = None;
    for g in ideal.generators.iter().filter(|g| !g.is_zero()) {
        let k = vanishing_order(g, c)?;
        best = Some(best.map_or(k, |b| b.min(k)));
    }
    best.ok_or(Error::InfiniteOrder)
}

/// A root given numerically, one enclosure per coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct ApproxPoint {
    pub coords: Vec<Complex64>,
    pub radius: f64,
    pub certified: bool,
}

#[derive(Clone, Debug, Default)]
pub struct ZeroSet {
    pub exact: Vec<Exponential>,
    pub approximate: Vec<ApproxPoint>,
}

fn to_unipoly(p: &Polynomial, var: usize) -> UniPoly {
    let deg = p.terms().map(|(a, _)| a[var]).max().unwrap_or(0) as usize;
    let mut coeffs = vec![Scalar::zero(); deg + 1];
    for (a, c) in p.terms() {
        coeffs[a[var] as usize] += c;
    }
    UniPoly::new(coeffs)
}

/// Strips the factor `z^k` (zero is not in the torus).
fn strip_origin(p: UniPoly) -> UniPoly {
    let k = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    UniPoly::new(p.coeffs()[k..].to_vec())
}

/// Minimal polynomial of the variable `var` in a finite-dimensional quotient.
fn minimal_polynomial(gb: &GroebnerBasis, var: usize) -> UniPoly {
    let n = gb.nvars();
    let std = gb.standard_monomials().expect("zero-dimensional");
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut power = Polynomial::one(n);
    loop {
        let nf = gb.normal_form(&power);
        rows.push(nf.coefficients_on(&std));
        // columns of the transposed system are the normal forms of powers
        let cols: Vec<Vec<Scalar>> = (0..std.len())
            .map(|r| rows.iter().map(|v| v[r].clone()).collect())
            .collect();
        let kernel = linalg::null_space(&cols, rows.len());
        if let Some(v) = kernel.into_iter().next() {
            return UniPoly::new(v).monic();
        }
        power = gb.normal_form(&(&power * &Polynomial::var(n, var)));
    }
}

fn numeric_eval(l: &LaurentPoly, z: &[Complex64]) -> (Complex64, f64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    for (e, c) in l.terms() {
        let m: Complex64 = e.iter().zip(z).map(|(&k, zi)| zi.powi(k as i32)).product();
        let t = c.to_complex() * m;
        v += t;
        scale += t.norm();
    }
    (v, scale)
}

/// The zero set `Z(I)`. Exact Gaussian-rational roots are verified by exact
/// evaluation; roots outside `Q(i)` are reported as numeric enclosures.
pub fn zero_set(ideal: &IdealHandle) -> Result<ZeroSet> {
    if ideal.is_zero_ideal() {
        return Err(Error::InfiniteZeroSet);
    }
    let d = ideal.dim;
    if d == 1 {
        let g = ideal
            .cleared_generators()
            .iter()
            .map(|p| to_unipoly(p, 0))
            .fold(UniPoly::new(Vec::new()), |acc, p| acc.gcd(&p));
        let report = univariate::roots(&strip_origin(g));
        return Ok(ZeroSet {
            exact: report
                .exact
                .into_iter()
                .map(|(r, _)| Exponential::new(vec![r]).expect("nonzero root"))
                .collect(),
            approximate: report
                .approximate
                .into_iter()
                .map(|a| ApproxPoint {
                    coords: vec![a.value],
                    radius: a.radius,
                    certified: a.certified,
                })
                .collect(),
        });
    }

    let gb = ideal.saturated_basis();
    if gb.is_unit() {
        return Ok(ZeroSet::default());
    }
    if !gb.is_zero_dimensional() {
        return Err(Error::InfiniteZeroSet);
    }
    // per-coordinate candidates: (exact value, or numeric value with radius)
    let per_coord: Vec<Vec<(Option<Scalar>, Complex64, f64)>> = (0..d)
        .map(|i| {
            let rep = univariate::roots(&minimal_polynomial(gb, i));
            let mut out: Vec<(Option<Scalar>, Complex64, f64)> = rep
                .exact
                .into_iter()
                .map(|(r, _)| {
                    let z = r.to_complex();
                    (Some(r), z, 0.0)
                })
                .collect();
            out.extend(
                rep.approximate
                    .into_iter()
                    .map(|a: ApproxRoot| (None, a.value, a.radius)),
            );
            out
        })
        .collect();

    let mut result = ZeroSet::default();
    let gens: Vec<&LaurentPoly> = ideal.generators.iter().filter(|g| !g.is_zero()).collect();
    let mut index = vec![0usize; d];
    if per_coord.iter().any(Vec::is_empty) {
        return Ok(result);
    }
    loop {
        let pick: Vec<&(Option<Scalar>, Complex64, f64)> =
            index.iter().enumerate().map(|(i, &k)| &per_coord[i][k]).collect();
        if pick.iter().all(|p| p.0.is_some()) {
            let c = Exponential::new(pick.iter().map(|p| p.0.clone().unwrap()).collect())
                .expect("roots of a saturated ideal are nonzero");
            if gens.iter().all(|g| g.eval(&c).map(|v| v.is_zero()).unwrap_or(false)) {
                result.exact.push(c);
            }
        } else {
            let z: Vec<Complex64> = pick.iter().map(|p| p.1).collect();
            let ok = gens.iter().all(|g| {
                let (v, scale) = numeric_eval(g, &z);
                v.norm() <= 1e-9 * scale.max(1.0)
            });
            if ok {
                let radius = pick.iter().map(|p| p.2).fold(0.0, f64::max);
                result.approximate.push(ApproxPoint {
                    coords: z,
                    radius,
                    certified: radius <= univariate::DEFAULT_ENCLOSURE_RADIUS,
                });
            }
        }
        // odometer
        let mut i = 0;
        loop {
            if i == d {
                result.exact.sort();
                return Ok(result);
            }
            index[i] += 1;
            if index[i] < per_coord[i].len() {
                break;
            }
            index[i] = 0;
            i += 1;
        }
    }
}

/// Gröbner basis of `I + M_c^{n+1}` in `z` (no saturation needed locally).
fn local_truncation(ideal: &IdealHandle, c: &Exponential, n: usize) -> GroebnerBasis {
    let d = ideal.dim;
    let mut gens = ideal.cleared_generators();
    gens.extend(
        monomials_up_to(d, n as u32 + 1)
            .into_iter()
            .filter(|b| b.iter().sum::<u32>() == n as u32 + 1)
            .map(|b| point_power(c, &b)),
    );
    GroebnerBasis::new(d, &gens)
}

fn local_length(ideal: &IdealHandle, c: &Exponential, n: usize) -> usize {
    local_truncation(ideal, c, n)
        .standard_monomials()
        .expect("truncation by a power of a maximal ideal is zero-dimensional")
        .len()
}

/// Dimension of the local quotient at `c` (the multiplicity of the root),
/// found by the first `n` with `dim R/(I + M^n) = dim R/(I + M^{n+1})`.
/// `None` when this does not happen up to [`MULTIPLICITY_SEARCH_LIMIT`],
/// e.g. on positive-dimensional components.
pub fn local_multiplicity(ideal: &IdealHandle, c: &Exponential) -> Result<Option<usize>> {
    check_dim(ideal.dim, c.dim())?;
    if ideal.is_zero_ideal() {
        return Ok(None);
    }
    if root_order(ideal, c)? == 0 {
        return Ok(Some(0));
    }
    let mut prev = local_length(ideal, c, 0);
    for n in 1..=MULTIPLICITY_SEARCH_LIMIT {
        let cur = local_length(ideal, c, n);
        if cur == prev {
            return Ok(Some(cur));
        }
        prev = cur;
    }
    Ok(None)
}

/// Generating polynomials of the derivations annihilating an ideal at an
/// exponential, truncated at a total degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualSpaceBasis {
    pub base: Exponential,
    pub polynomials: Vec<Polynomial>,
    pub cutoff: usize,
    /// No new elements appear when the cutoff grows past this one, so the
    /// basis spans the whole dual space.
    pub stabilized: bool,
}

/// Monomials of degree `≤ n`, highest degree first.
pub(crate) fn descending_monomials(d: usize, n: usize) -> Vec<MultiIndex> {
    let mut m = monomials_up_to(d, n as u32);
    m.reverse();
    m
}

/// Canonical basis of a space of polynomials: reduced echelon form with
/// high-degree pivots, listed from low to high degree.
pub(crate) fn canonical_polynomial_basis(d: usize, n: usize, polys: &[Polynomial]) -> Vec<Polynomial> {
    let cols = descending_monomials(d, n);
    let rows: Vec<Vec<Scalar>> = polys.iter().map(|p| p.coefficients_on(&cols)).collect();
    let mut basis: Vec<Polynomial> = linalg::span_basis(&rows, cols.len())
        .iter()
        .map(|r| Polynomial::from_coefficients(d, &cols, r))
        .collect();
    basis.reverse();
    basis
}

fn dual_basis_at(ideal: &IdealHandle, c: &Exponential, n: usize) -> Vec<Polynomial> {
    let d = ideal.dim;
    let gb = local_truncation(ideal, c, n);
    let std = gb.standard_monomials().expect("zero-dimensional truncation");
    let monos = monomials_up_to(d, n as u32);
    // values of the moment functional of x^α on the local basis (z − c)^β
    let local: Vec<Polynomial> = monos.iter().map(|b| point_power(c, b)).collect();
    let t: Vec<Vec<Scalar>> = local
        .iter()
        .map(|lp| {
            let mu = inverse_transform(&LaurentPoly::from_polynomial(lp));
            monos
                .iter()
                .map(|a| moment(&mu, &Polynomial::monomial(d, a.clone(), Scalar::one()), c).unwrap())
                .collect()
        })
        .collect();
    // functional "coefficient of s in the normal form", for each standard s
    let rhs: Vec<Vec<Scalar>> = local
        .iter()
        .map(|lp| gb.normal_form(lp).coefficients_on(&std))
        .collect();
    let q = linalg::solve(&t, &rhs).expect("moment functionals form a basis of the local dual");
    let polys: Vec<Polynomial> = (0..std.len())
        .map(|s| {
            let coeffs: Vec<Scalar> = q.iter().map(|row| row[s].clone()).collect();
            Polynomial::from_coefficients(d, &monos, &coeffs)
        })
        .collect();
    canonical_polynomial_basis(d, n, &polys)
}

/// Basis of `{q : deg q ≤ cutoff, Σ_x μ(x)·q(x)·c^{−x} = 0 for every μ̂ ∈ I}`.
///
/// Each coordinate functional of the normal form modulo `I + M_c^{cutoff+1}`
/// is a functional of order at most `cutoff` vanishing on `I`; it is turned
/// into a generating polynomial by inverting the moment matrix on the local
/// basis `(z − c)^β`. The default cutoff is the local multiplicity.
pub fn local_dual_space(ideal: &IdealHandle, c: &Exponential, cutoff: Option<usize>) -> Result<DualSpaceBasis> {
    check_dim(ideal.dim, c.dim())?;
    let d = ideal.dim;
    let cutoff = match cutoff {
        Some(n) => n,
        None => match local_multiplicity(ideal, c)? {
            Some(m) => m,
            None => return Err(Error::BoundRequired(c.to_string())),
        },
    };
    if ideal.is_zero_ideal() {
        let polynomials = monomials_up_to(d, cutoff as u32)
            .into_iter()
            .map(|a| Polynomial::monomial(d, a, Scalar::one()))
            .collect();
        return Ok(DualSpaceBasis {
            base: c.clone(),
            polynomials,
            cutoff,
            stabilized: false,
        });
    }
    if root_order(ideal, c)? == 0 {
        return Ok(DualSpaceBasis {
            base: c.clone(),
            polynomials: Vec::new(),
            cutoff,
            stabilized: true,
        });
    }
    let polynomials = dual_basis_at(ideal, c, cutoff);
    let stabilized = if cutoff >= 1 {
        local_length(ideal, c, cutoff - 1) == polynomials.len()
    } else {
        local_length(ideal, c, 1) == polynomials.len()
    };
    Ok(DualSpaceBasis {
        base: c.clone(),
        polynomials,
        cutoff,
        stabilized,
    })
}

/// Iterated unit-step differences `Δ_{e_{i_1},…,e_{i_k}} p` for
/// `1 ≤ k ≤ deg p`; together with `p` they span its translates. Longer
/// tuples only give zero.
pub fn difference_closure(p: &Polynomial) -> Vec<Polynomial> {
    let d = p.dim();
    let deg = p.degree().unwrap_or(0) as usize;
    let mut out = Vec::new();
    for k in 1..=deg {
        for ys in unit_tuples(d, k) {
            let q = ys.iter().fold(p.clone(), |acc, y| acc.difference(y.coords()));
            if !q.is_zero() {
                out.push(q);
            }
        }
    }
    out
}

/// `L ∈ I_{D,c}` for the derivation with generating polynomial `p`: `L(c) = 0`,
/// `D(L)(c) = 0`, and `Σ_x μ(x)·[Δ_{y_1,…,y_k} p](x)·c^{−x} = 0` for all
/// difference tuples.
pub fn derivation_ideal_member(p: &Polynomial, c: &Exponential, l: &LaurentPoly) -> Result<bool> {
    check_dim(p.dim(), c.dim())?;
    check_dim(p.dim(), l.dim())?;
    if !l.eval(c)?.is_zero() {
        return Ok(false);
    }
    let mu = inverse_transform(l);
    if !moment(&mu, p, c)?.is_zero() {
        return Ok(false);
    }
    for q in difference_closure(p) {
        if !moment(&mu, &q, c)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The same membership with the base-point-zero conditions
/// `Σ_x μ(x)·[Δ_{x,y_1,…,y_k} p](0)·c^{−x} = 0`, where the differences are
/// expanded symbolically in the free variable `x`.
pub fn derivation_ideal_member_base_point(p: &Polynomial, c: &Exponential, l: &LaurentPoly) -> Result<bool> {
    check_dim(p.dim(), c.dim())?;
    check_dim(p.dim(), l.dim())?;
    if !l.eval(c)?.is_zero() {
        return Ok(false);
    }
    let mu = inverse_transform(l);
    if !moment(&mu, p, c)?.is_zero() {
        return Ok(false);
    }
    let d = p.dim();
    let deg = p.degree().unwrap_or(0) as usize;
    for k in 1..=deg {
        // variables: (x', y_0, y_1, …, y_k); x' = 0, y_0 = x, y_j unit vectors
        let sym = p.symbolic_difference(k + 1);
        for ys in unit_tuples(d, k) {
            let mut images = Vec::with_capacity(d * (k + 2));
            images.extend((0..d).map(|_| Polynomial::zero(d)));
            images.extend((0..d).map(|i| Polynomial::var(d, i)));
            for y in &ys {
                images.extend(
                    y.coords()
                        .iter()
                        .map(|&v| Polynomial::constant(d, Scalar::from_int(v))),
                );
            }
            let q = sym.compose(&images);
            if !moment(&mu, &q, c)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `L(c) = 0` and `μ` annihilates every function in the translate span of
/// `p̌·c^x`, i.e. `(μ * g)(0) = 0` on a basis of that span.
pub fn annihilates_translates(p: &Polynomial, c: &Exponential, l: &LaurentPoly) -> Result<bool> {
    check_dim(p.dim(), c.dim())?;
    check_dim(p.dim(), l.dim())?;
    if !l.eval(c)?.is_zero() {
        return Ok(false);
    }
    let mu = inverse_transform(l);
    let f = ExpPolynomial::monomial(c.clone(), p.reflect())?;
    let origin = GroupElement::zero(p.dim());
    for g in translate_basis(&f) {
        if !evaluate(&act(&mu, &g)?, &origin)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(d: usize, i: usize) -> LaurentPoly {
        LaurentPoly::var(d, i)
    }

    fn k(d: usize, c: i64) -> LaurentPoly {
        LaurentPoly::constant(d, Scalar::from_int(c))
    }

    fn e(c: &[i64]) -> Exponential {
        Exponential::from_ints(c).unwrap()
    }

    fn ideal(d: usize, gens: Vec<LaurentPoly>) -> IdealHandle {
        IdealHandle::new(d, gens).unwrap()
    }

    fn lin(d: usize, i: usize, c: i64) -> LaurentPoly {
        &z(d, i) - &k(d, c)
    }

    fn x(d: usize, i: usize) -> Polynomial {
        Polynomial::var(d, i)
    }

    #[test]
    fn member_examples() {
        let i1 = ideal(1, vec![lin(1, 0, 1)]);
        assert!(member(&i1, &(&z(1, 0).pow(2) - &k(1, 1))).unwrap());
        assert!(!member(&i1, &lin(1, 0, 2)).unwrap());
        let i2 = ideal(2, vec![lin(2, 0, 1), lin(2, 1, 1)]);
        assert!(member(&i2, &(&lin(2, 0, 1) * &lin(2, 1, 1))).unwrap());
    }

    #[test]
    fn laurent_units_do_not_matter() {
        // z^-3·(z − 1) generates the same ideal as z − 1; z itself is a unit
        let shifted = lin(1, 0, 1).shift(&[-3]);
        let i = ideal(1, vec![shifted]);
        assert!(member(&i, &lin(1, 0, 1).shift(&[5])).unwrap());
        let unit = ideal(1, vec![z(1, 0)]);
        assert!(unit.is_unit_ideal());
        assert!(member(&unit, &k(1, 1)).unwrap());
    }

    #[test]
    fn zero_and_unit_ideals() {
        let zero = ideal(2, vec![]);
        assert!(zero.is_zero_ideal());
        assert!(!member(&zero, &z(2, 0)).unwrap());
        assert!(member(&zero, &LaurentPoly::zero(2)).unwrap());
        assert_eq!(root_order(&zero, &e(&[1, 1])), Err(Error::InfiniteOrder));
        assert_eq!(zero_set(&zero).unwrap_err(), Error::InfiniteZeroSet);
    }

    #[test]
    fn vanishing_order_examples() {
        let sq = lin(1, 0, 1).pow(2);
        assert_eq!(vanishing_order(&sq, &e(&[1])).unwrap(), 2);
        let quad = &lin(1, 0, 1) * &lin(1, 0, 2);
        assert_eq!(vanishing_order(&quad, &e(&[2])).unwrap(), 1);
        assert_eq!(vanishing_order(&quad, &e(&[3])).unwrap(), 0);
        assert_eq!(vanishing_order(&LaurentPoly::zero(1), &e(&[1])), Err(Error::InfiniteOrder));
    }

    #[test]
    fn max_ideal_power_examples() {
        let sq = lin(1, 0, 1).pow(2);
        assert!(max_ideal_power_member(&sq, &e(&[1]), 1).unwrap());
        assert!(!max_ideal_power_member(&sq, &e(&[1]), 2).unwrap());
        assert!(!max_ideal_power_member(&k(1, 1), &e(&[5]), 0).unwrap());
        let prod = &lin(2, 0, 1) * &lin(2, 1, 1);
        assert!(max_ideal_power_member(&prod, &e(&[1, 1]), 1).unwrap());
    }

    #[test]
    fn root_order_examples() {
        let i = ideal(1, vec![&lin(1, 0, 1).pow(2) * &lin(1, 0, 2)]);
        assert_eq!(root_order(&i, &e(&[1])).unwrap(), 2);
        assert_eq!(root_order(&i, &e(&[2])).unwrap(), 1);
        let unit = ideal(1, vec![lin(1, 0, 1), lin(1, 0, 2)]);
        for c in [1, 2, 3, -1] {
            assert_eq!(root_order(&unit, &e(&[c])).unwrap(), 0);
        }
    }

    #[test]
    fn zero_set_examples() {
        let i = ideal(1, vec![&lin(1, 0, 1) * &lin(1, 0, 2)]);
        let zs = zero_set(&i).unwrap();
        assert_eq!(zs.exact, vec![e(&[1]), e(&[2])]);
        assert!(zs.approximate.is_empty());

        let golden = &(&z(1, 0).pow(2) - &z(1, 0)) - &k(1, 1);
        let zs = zero_set(&ideal(1, vec![golden])).unwrap();
        assert!(zs.exact.is_empty());
        assert_eq!(zs.approximate.len(), 2);

        let zs = zero_set(&ideal(2, vec![lin(2, 0, 1), lin(2, 1, 2)])).unwrap();
        assert_eq!(zs.exact, vec![e(&[1, 2])]);
    }

    #[test]
    fn zero_set_ignores_origin_and_positive_dimension() {
        let i = ideal(1, vec![&z(1, 0).pow(3) * &lin(1, 0, 4)]);
        assert_eq!(zero_set(&i).unwrap().exact, vec![e(&[4])]);
        let line = ideal(2, vec![lin(2, 0, 1)]);
        assert_eq!(zero_set(&line).unwrap_err(), Error::InfiniteZeroSet);
    }

    #[test]
    fn dual_space_examples() {
        let i = ideal(1, vec![lin(1, 0, 1).pow(2)]);
        let ds = local_dual_space(&i, &e(&[1]), Some(3)).unwrap();
        assert_eq!(ds.polynomials, vec![Polynomial::one(1), x(1, 0)]);
        assert!(ds.stabilized);

        let i = ideal(1, vec![lin(1, 0, 2)]);
        let ds = local_dual_space(&i, &e(&[2]), Some(2)).unwrap();
        assert_eq!(ds.polynomials, vec![Polynomial::one(1)]);

        let i = ideal(2, vec![lin(2, 0, 1).pow(2), lin(2, 1, 1), &lin(2, 0, 1) * &lin(2, 1, 1)]);
        let ds = local_dual_space(&i, &e(&[1, 1]), Some(2)).unwrap();
        assert_eq!(ds.polynomials, vec![Polynomial::one(2), x(2, 0)]);
        assert_eq!(local_multiplicity(&i, &e(&[1, 1])).unwrap(), Some(2));
    }

    #[test]
    fn dual_space_edge_cases() {
        let i = ideal(1, vec![lin(1, 0, 1).pow(3)]);
        let ds = local_dual_space(&i, &e(&[1]), Some(0)).unwrap();
        assert_eq!(ds.polynomials, vec![Polynomial::one(1)]);
        assert!(!ds.stabilized);
        let off = local_dual_space(&i, &e(&[2]), Some(2)).unwrap();
        assert!(off.polynomials.is_empty());
        let default = local_dual_space(&i, &e(&[1]), None).unwrap();
        assert_eq!(default.cutoff, 3);
        assert_eq!(default.polynomials.len(), 3);
    }

    #[test]
    fn dual_space_at_non_integer_root() {
        // (z − 1/2 − i)^2 at its root: {1, x}
        let c = Exponential::new(vec![&Scalar::from_ratio(1, 2) + &Scalar::i()]).unwrap();
        let l = &z(1, 0) - &LaurentPoly::constant(1, c.base()[0].clone());
        let i = ideal(1, vec![l.pow(2)]);
        let ds = local_dual_space(&i, &c, None).unwrap();
        assert_eq!(ds.polynomials, vec![Polynomial::one(1), x(1, 0)]);
    }

    #[test]
    fn derivation_ideal_examples() {
        let sq = lin(1, 0, 1).pow(2);
        assert!(derivation_ideal_member(&x(1, 0), &e(&[1]), &sq).unwrap());
        assert!(!derivation_ideal_member(&x(1, 0), &e(&[1]), &lin(1, 0, 1)).unwrap());
        let zero = Polynomial::zero(1);
        assert!(derivation_ideal_member(&zero, &e(&[1]), &lin(1, 0, 1)).unwrap());
        assert!(!derivation_ideal_member(&zero, &e(&[1]), &lin(1, 0, 2)).unwrap());
        for (p, l) in [(x(1, 0), sq.clone()), (x(1, 0), lin(1, 0, 1)), (zero, lin(1, 0, 2))] {
            let a = derivation_ideal_member(&p, &e(&[1]), &l).unwrap();
            assert_eq!(a, annihilates_translates(&p, &e(&[1]), &l).unwrap());
            assert_eq!(a, derivation_ideal_member_base_point(&p, &e(&[1]), &l).unwrap());
        }
    }

    #[test]
    fn difference_closure_stabilizes_at_degree() {
        let p = &(&x(2, 0).pow(2) * &x(2, 1)) + &x(2, 1);
        let deg = p.degree().unwrap() as usize;
        for ys in unit_tuples(2, deg + 1) {
            let q = ys.iter().fold(p.clone(), |acc, y| acc.difference(y.coords()));
            assert!(q.is_zero());
        }
        assert!(difference_closure(&p).iter().any(|q| q.degree() == Some(0)));
    }
}
