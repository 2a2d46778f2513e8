//! Solution spaces of systems of convolution equations `μ_i * f = 0` on
//! `Z^d`, spanned by exponential monomials `p(x)·c^x` at the roots of the
//! ideal, together with a brute-force window oracle and localizability
//! witnesses.

use num_traits::{One, Zero};

use crate::algebra::{Exponential, GroupElement, Measure};
use crate::derivations::moment;
use crate::error::{check_dim, Error, Result};
use crate::exppoly::{evaluate, translate_span_dim, ExpPolynomial};
use crate::fourier::{inverse_transform, LaurentPoly};
use crate::ideals::{self, canonical_polynomial_basis, ApproxPoint, IdealHandle};
use crate::linalg;
use crate::poly::{binomial, monomials_up_to, MultiIndex, Polynomial};
use crate::scalar::Scalar;

/// Polynomials `p` such that `p(x)·c^x` solves the system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionBasis {
    pub root: Exponential,
    pub polys: Vec<Polynomial>,
    /// Dimension of the local quotient at the root, when it is finite.
    pub multiplicity: Option<usize>,
    pub degbound: usize,
    /// Some basis element reaches the degree bound, so a larger bound may
    /// give more solutions.
    pub truncated: bool,
}

impl SolutionBasis {
    pub fn dimension(&self) -> usize {
        self.polys.len()
    }

    pub fn solutions(&self) -> Vec<ExpPolynomial> {
        self.polys
            .iter()
            .map(|p| ExpPolynomial::monomial(self.root.clone(), p.clone()).expect("matching dimension"))
            .collect()
    }
}

fn common_dim(measures: &[Measure], c: &Exponential) -> Result<usize> {
    for mu in measures {
        check_dim(c.dim(), mu.dim())?;
    }
    Ok(c.dim())
}

/// `Σ_x μ(x)·c^{−x}·(−x)^β` for every `β` in `monos`.
fn reflected_moments(mu: &Measure, c: &Exponential, monos: &[MultiIndex]) -> Vec<Scalar> {
    let d = c.dim();
    monos
        .iter()
        .map(|b| {
            let q = Polynomial::monomial(d, b.clone(), Scalar::one()).reflect();
            moment(mu, &q, c).expect("matching dimension")
        })
        .collect()
}

fn multi_binomial(a: &[u32], g: &[u32]) -> Scalar {
    a.iter().zip(g).map(|(&x, &y)| binomial(x, y)).product()
}

/// Basis of `{p : deg p ≤ degbound, μ_i * (p·c^x) = 0 for all i}`.
///
/// Writing `p(y − x) = Σ_γ y^γ·r_γ(x)`, the condition is
/// `Σ_x μ(x)·c^{−x}·r_γ(x) = 0` for every generator and every `γ`.
pub fn solve_at_root(measures: &[Measure], c: &Exponential, degbound: usize) -> Result<SolutionBasis> {
    let d = common_dim(measures, c)?;
    let monos = monomials_up_to(d, degbound as u32);
    let index: std::collections::BTreeMap<&MultiIndex, usize> =
        monos.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for mu in measures.iter().filter(|m| !m.is_zero()) {
        let m = reflected_moments(mu, c, &monos);
        for g in &monos {
            let mut row = vec![Scalar::zero(); monos.len()];
            for (j, a) in monos.iter().enumerate() {
                if a.iter().zip(g).all(|(x, y)| x >= y) {
                    let rest: MultiIndex = a.iter().zip(g).map(|(x, y)| x - y).collect();
                    row[j] = multi_binomial(a, g) * &m[index[&rest]];
                }
            }
            if row.iter().any(|v| !v.is_zero()) {
                rows.push(row);
            }
        }
    }
    let polys: Vec<Polynomial> = linalg::null_space(&rows, monos.len())
        .iter()
        .map(|v| Polynomial::from_coefficients(d, &monos, v))
        .collect();
    let polys = canonical_polynomial_basis(d, degbound, &polys);
    let truncated = polys.iter().any(|p| p.degree() == Some(degbound as u32));
    let multiplicity = if measures.iter().all(Measure::is_zero) {
        None
    } else {
        ideals::local_multiplicity(&IdealHandle::from_measures(d, measures)?, c)?
    };
    Ok(SolutionBasis {
        root: c.clone(),
        polys,
        multiplicity,
        degbound,
        truncated,
    })
}

#[derive(Clone, Debug)]
pub struct SystemSolution {
    /// One basis per exact root, in root order.
    pub bases: Vec<SolutionBasis>,
    /// Roots outside `Q(i)`; not solved exactly.
    pub approximate: Vec<ApproxPoint>,
}

impl SystemSolution {
    pub fn total_dimension(&self) -> usize {
        self.bases.iter().map(SolutionBasis::dimension).sum()
    }

    pub fn truncated(&self) -> bool {
        self.bases.iter().any(|b| b.truncated)
    }
}

/// Solution bases at every exact root (computed, or the supplied ones).
///
/// The degree bound defaults to the local multiplicity at each root, which
/// exceeds the degree of every solution polynomial there.
pub fn solve_system(
    dim: usize,
    measures: &[Measure],
    roots: Option<&[Exponential]>,
    degbound: Option<usize>,
) -> Result<SystemSolution> {
    let ideal = IdealHandle::from_measures(dim, measures)?;
    let (roots, approximate) = match roots {
        Some(rs) => {
            for c in rs {
                if ideals::root_order(&ideal, c) == Ok(0) {
                    return Err(Error::NotARoot(c.to_string()));
                }
            }
            (rs.to_vec(), Vec::new())
        }
        None => {
            let zs = ideals::zero_set(&ideal)?;
            (zs.exact, zs.approximate)
        }
    };
    let bounds: Vec<usize> = roots
        .iter()
        .map(|c| match degbound {
            Some(n) => Ok(n),
            None => ideals::local_multiplicity(&ideal, c)?.ok_or_else(|| Error::BoundRequired(c.to_string())),
        })
        .collect::<Result<_>>()?;
    let bases = std::thread::scope(|s| {
        let handles: Vec<_> = roots
            .iter()
            .zip(&bounds)
            .map(|(c, &n)| s.spawn(move || solve_at_root(measures, c, n)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("solver thread"))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(SystemSolution { bases, approximate })
}

/// An inclusive integer box `lo ≤ x ≤ hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowBox {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl WindowBox {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        check_dim(lo.len(), hi.len())?;
        if lo.is_empty() {
            return Err(Error::ZeroDimension);
        }
        Ok(WindowBox { lo, hi })
    }

    /// The cube `{lo, …, hi}^d`.
    pub fn cube(dim: usize, lo: i64, hi: i64) -> Self {
        WindowBox {
            lo: vec![lo; dim],
            hi: vec![hi; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        x.iter().zip(&self.lo).zip(&self.hi).all(|((v, l), h)| l <= v && v <= h)
    }

    /// Lattice points, last coordinate fastest.
    pub fn points(&self) -> Vec<GroupElement> {
        let mut out = vec![Vec::new()];
        for (l, h) in self.lo.iter().zip(&self.hi) {
            out = out
                .into_iter()
                .flat_map(|p: Vec<i64>| {
                    (*l..=*h).map(move |v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        out.into_iter().map(GroupElement::new).collect()
    }

    pub fn volume(&self) -> usize {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| (h - l + 1).max(0) as usize)
            .product()
    }
}

/// Cube `{0, …, n}^d` with side `degbound + max support diameter + 2`.
pub fn default_window(dim: usize, measures: &[Measure], degbound: usize) -> WindowBox {
    let diameter = measures
        .iter()
        .filter_map(Measure::bounding_box)
        .flat_map(|(lo, hi)| lo.into_iter().zip(hi).map(|(l, h)| h - l))
        .max()
        .unwrap_or(0);
    let side = degbound as i64 + diameter + 2;
    WindowBox::cube(dim, 0, side - 1)
}

/// Functions on a window killed by every translate of the system that fits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowSolution {
    pub window: WindowBox,
    pub points: Vec<GroupElement>,
    /// Null-space basis; entries follow `points`.
    pub basis: Vec<Vec<Scalar>>,
}

impl WindowSolution {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Solves `(μ_i * f)(y) = 0` for all `y` with `y − supp μ_i` inside the box,
/// with `f` unknown on the box.
pub fn window_oracle(dim: usize, measures: &[Measure], window: &WindowBox) -> Result<WindowSolution> {
    check_dim(dim, window.dim())?;
    for mu in measures {
        check_dim(dim, mu.dim())?;
    }
    let points = window.points();
    let index: std::collections::BTreeMap<&GroupElement, usize> =
        points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut rows = Vec::new();
    for (i, mu) in measures.iter().enumerate().filter(|(_, m)| !m.is_zero()) {
        let (lo, hi) = mu.bounding_box().expect("nonzero measure");
        // y ranges over the box shrunk so that y − x stays inside
        let inner = WindowBox {
            lo: window.lo.iter().zip(&hi).map(|(a, h)| a + h).collect(),
            hi: window.hi.iter().zip(&lo).map(|(b, l)| b + l).collect(),
        };
        if inner.volume() == 0 {
            return Err(Error::BoxTooSmall(i));
        }
        for y in inner.points() {
            let mut row = vec![Scalar::zero(); points.len()];
            for (x, w) in mu.support() {
                row[index[&(&y - x)]] += w;
            }
            rows.push(row);
        }
    }
    Ok(WindowSolution {
        window: window.clone(),
        basis: linalg::null_space(&rows, points.len()),
        points,
    })
}

/// Values of `f` on the points of a window.
pub fn restrict(f: &ExpPolynomial, points: &[GroupElement]) -> Result<Vec<Scalar>> {
    points.iter().map(|x| evaluate(f, x)).collect()
}

/// Comparison of restricted exponential-monomial solutions with the window
/// null space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanCheck {
    pub window_dimension: usize,
    pub restricted_rank: usize,
    /// Every restricted solution lies in the window null space.
    pub contained: bool,
}

impl SpanCheck {
    pub fn spans(&self) -> bool {
        self.contained && self.restricted_rank == self.window_dimension
    }
}

pub fn check_window_span(solution: &SystemSolution, window: &WindowSolution) -> Result<SpanCheck> {
    let n = window.points.len();
    let restricted: Vec<Vec<Scalar>> = solution
        .bases
        .iter()
        .flat_map(SolutionBasis::solutions)
        .map(|f| restrict(&f, &window.points))
        .collect::<Result<_>>()?;
    let restricted_rank = linalg::rank(&restricted, n);
    let base_rank = window.basis.len();
    let contained = restricted.iter().all(|v| {
        let mut rows = window.basis.clone();
        rows.push(v.clone());
        linalg::rank(&rows, n) == base_rank
    });
    Ok(SpanCheck {
        window_dimension: base_rank,
        restricted_rank,
        contained,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub root: Exponential,
    /// Generating polynomial of an annihilating derivation at `root`.
    pub q: Polynomial,
    /// `Σ_x ν(x)·q(x)·root^{−x}`, nonzero.
    pub moment: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Localization {
    pub member: bool,
    pub witness: Option<Witness>,
    /// Not a member, but no witness was found up to the cutoff.
    pub inconclusive: bool,
}

/// Decides `L ∈ I`, and otherwise looks for a derivation annihilating `I`
/// at one of `roots` that does not annihilate `L`.
pub fn localizability_witness(
    ideal: &IdealHandle,
    l: &LaurentPoly,
    roots: &[Exponential],
    cutoff: Option<usize>,
) -> Result<Localization> {
    check_dim(ideal.dim(), l.dim())?;
    for c in roots {
        if ideals::root_order(ideal, c) == Ok(0) {
            return Err(Error::NotARoot(c.to_string()));
        }
    }
    if ideals::member(ideal, l)? {
        return Ok(Localization {
            member: true,
            witness: None,
            inconclusive: false,
        });
    }
    let nu = inverse_transform(l);
    for c in roots {
        let ds = ideals::local_dual_space(ideal, c, cutoff)?;
        for q in ds.polynomials {
            let m = moment(&nu, &q, c)?;
            if !m.is_zero() {
                return Ok(Localization {
                    member: false,
                    witness: Some(Witness {
                        root: c.clone(),
                        q,
                        moment: m,
                    }),
                    inconclusive: false,
                });
            }
        }
    }
    Ok(Localization {
        member: false,
        witness: None,
        inconclusive: true,
    })
}

/// `dim τ(Σ_{i≤k} x_i²)` on `Z^k`, which is `k + 2`.
pub fn biadditive_demo(k: usize) -> Result<usize> {
    if k == 0 {
        return Err(Error::ZeroDimension);
    }
    let f = (0..k).fold(Polynomial::zero(k), |acc, i| &acc + &Polynomial::var(k, i).pow(2));
    Ok(translate_span_dim(&ExpPolynomial::polynomial(f)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivations::{apply, Derivation};
    use crate::exppoly::act;
    use crate::fourier::{eval, transform};

    fn e(c: &[i64]) -> Exponential {
        Exponential::from_ints(c).unwrap()
    }

    fn x(d: usize, i: usize) -> Polynomial {
        Polynomial::var(d, i)
    }

    fn quadratic() -> Measure {
        Measure::from_ints(1, &[(&[-2], 1), (&[-1], -3), (&[0], 2)]).unwrap()
    }

    fn double_root() -> Measure {
        Measure::from_ints(1, &[(&[-2], 1), (&[-1], -2), (&[0], 1)]).unwrap()
    }

    fn plane_system() -> Vec<Measure> {
        vec![
            Measure::from_ints(2, &[(&[-2, 0], 1), (&[-1, 0], -2), (&[0, 0], 1)]).unwrap(),
            Measure::from_ints(2, &[(&[0, -1], 1), (&[0, 0], -1)]).unwrap(),
            Measure::from_ints(2, &[(&[-1, -1], 1), (&[-1, 0], -1), (&[0, -1], -1), (&[0, 0], 1)]).unwrap(),
        ]
    }

    fn check_solutions(measures: &[Measure], b: &SolutionBasis) {
        for f in b.solutions() {
            for mu in measures {
                assert!(act(mu, &f).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn solve_at_root_examples() {
        let b = solve_at_root(&[quadratic()], &e(&[2]), 3).unwrap();
        assert_eq!(b.polys, vec![Polynomial::one(1)]);
        assert!(!b.truncated);
        check_solutions(&[quadratic()], &b);

        let b = solve_at_root(&[double_root()], &e(&[1]), 3).unwrap();
        assert_eq!(b.polys, vec![Polynomial::one(1), x(1, 0)]);
        assert_eq!(b.multiplicity, Some(2));

        let sys = plane_system();
        let b = solve_at_root(&sys, &e(&[1, 1]), 2).unwrap();
        assert_eq!(b.polys, vec![Polynomial::one(2), x(2, 0)]);
        check_solutions(&sys, &b);
        let ideal = IdealHandle::from_measures(2, &sys).unwrap();
        let ds = ideals::local_dual_space(&ideal, &e(&[1, 1]), Some(2)).unwrap();
        assert_eq!(ds.polynomials, b.polys);
    }

    #[test]
    fn truncation_is_flagged() {
        let b = solve_at_root(&[double_root()], &e(&[1]), 1).unwrap();
        assert!(b.truncated);
        let b = solve_at_root(&[double_root()], &e(&[1]), 0).unwrap();
        assert_eq!(b.polys, vec![Polynomial::one(1)]);
        assert!(b.truncated);
        let b = solve_at_root(&[], &e(&[3]), 1).unwrap();
        assert_eq!(b.dimension(), 2);
        assert!(b.truncated);
    }

    #[test]
    fn solve_system_examples() {
        let s = solve_system(1, &[quadratic()], None, None).unwrap();
        assert_eq!(s.bases.len(), 2);
        assert_eq!(s.bases[0].root, e(&[1]));
        assert_eq!(s.bases[1].root, e(&[2]));
        assert_eq!(s.total_dimension(), 2);

        let s = solve_system(1, &[double_root()], None, None).unwrap();
        assert_eq!(s.bases[0].polys, vec![Polynomial::one(1), x(1, 0)]);
        assert_eq!(s.total_dimension(), 2);

        let golden = Measure::from_ints(1, &[(&[-2], 1), (&[-1], -1), (&[0], -1)]).unwrap();
        let s = solve_system(1, &[golden], None, None).unwrap();
        assert!(s.bases.is_empty());
        assert_eq!(s.approximate.len(), 2);
    }

    #[test]
    fn solve_system_checks_supplied_roots() {
        let err = solve_system(1, &[quadratic()], Some(&[e(&[3])]), None).unwrap_err();
        assert_eq!(err.code(), "E_NOT_A_ROOT");
        let line = vec![Measure::from_ints(2, &[(&[-1, 0], 1), (&[0, 0], -1)]).unwrap()];
        assert_eq!(
            solve_system(2, &line, None, None).unwrap_err(),
            Error::InfiniteZeroSet
        );
        let s = solve_system(2, &line, Some(&[e(&[1, 5])]), Some(1)).unwrap();
        assert_eq!(s.bases[0].polys, vec![Polynomial::one(2), x(2, 1)]);
    }

    #[test]
    fn window_oracle_examples() {
        let w = WindowBox::cube(1, 0, 7);
        for mu in [quadratic(), double_root()] {
            let ws = window_oracle(1, std::slice::from_ref(&mu), &w).unwrap();
            assert_eq!(ws.dimension(), 2);
            let s = solve_system(1, &[mu], None, None).unwrap();
            assert!(check_window_span(&s, &ws).unwrap().spans());
        }
        assert_eq!(window_oracle(1, &[], &w).unwrap().dimension(), 8);
        let tiny = WindowBox::cube(1, 0, 1);
        assert_eq!(window_oracle(1, &[quadratic()], &tiny).unwrap_err(), Error::BoxTooSmall(0));
    }

    #[test]
    fn window_on_plane_system() {
        let sys = plane_system();
        let w = default_window(2, &sys, 2);
        let ws = window_oracle(2, &sys, &w).unwrap();
        let s = solve_system(2, &sys, None, None).unwrap();
        let check = check_window_span(&s, &ws).unwrap();
        assert_eq!(check.window_dimension, 2);
        assert!(check.spans());
    }

    #[test]
    fn localizability_examples() {
        let z = LaurentPoly::var(1, 0);
        let one = LaurentPoly::one(1);
        let lin1 = &z - &one;
        let sq = IdealHandle::new(1, vec![lin1.pow(2)]).unwrap();
        let loc = localizability_witness(&sq, &lin1, &[e(&[1])], None).unwrap();
        let w = loc.witness.unwrap();
        assert_eq!(w.q, x(1, 0));
        assert_eq!(w.moment, Scalar::from_int(-1));

        let loc = localizability_witness(&sq, &lin1.pow(2), &[e(&[1])], None).unwrap();
        assert!(loc.member && loc.witness.is_none());

        let q = IdealHandle::from_measures(1, &[quadratic()]).unwrap();
        let loc = localizability_witness(&q, &lin1, &[e(&[1]), e(&[2])], None).unwrap();
        let w = loc.witness.unwrap();
        assert_eq!((w.root.clone(), w.q.clone()), (e(&[2]), Polynomial::one(1)));
        // the witness moment splits into an identity part and a derivation
        let nu = inverse_transform(&lin1);
        let expected = w.q.constant_term() * eval(&transform(&nu), &w.root).unwrap()
            + apply(&Derivation::new(&w.q - &Polynomial::constant(1, w.q.constant_term())), &nu, &w.root).unwrap();
        assert_eq!(w.moment, expected);
    }

    #[test]
    fn biadditive_growth() {
        assert_eq!(biadditive_demo(1).unwrap(), 3);
        assert_eq!(biadditive_demo(2).unwrap(), 4);
        assert_eq!(biadditive_demo(6).unwrap(), 8);
    }
}
