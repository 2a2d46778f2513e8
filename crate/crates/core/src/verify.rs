//! Randomized property suites over the whole library, driven by a seeded
//! ChaCha generator so that every run with the same seed is identical.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{convolve, difference_product, Exponential, GroupElement, Measure};
use crate::derivations::{apply, compose, moment, Derivation};
use crate::error::Result;
use crate::exppoly::{act, frechet_order, frechet_witness, ExpPolynomial};
use crate::fourier::{inverse_transform, transform, LaurentPoly};
use crate::ideals::{self, IdealHandle};
use crate::poly::{monomials_up_to, Polynomial};
use crate::scalar::Scalar;
use crate::synthesis::{self, check_window_span, default_window, window_oracle};

pub const DEFAULT_SEED: u64 = 20_240_517;

/// Seed from `SYNTHKIT_SEED`, or [`DEFAULT_SEED`].
pub fn seed_from_env() -> u64 {
    std::env::var("SYNTHKIT_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random inputs of desk-scale size.
pub mod gen {
    use super::*;

    pub fn rational(rng: &mut impl Rng) -> Scalar {
        Scalar::from_ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3))
    }

    /// A Gaussian rational; purely real two times out of three.
    pub fn scalar(rng: &mut impl Rng) -> Scalar {
        let re = rational(rng);
        if rng.gen_range(0..3) == 0 {
            re + rational(rng) * Scalar::i()
        } else {
            re
        }
    }

    pub fn nonzero_scalar(rng: &mut impl Rng) -> Scalar {
        loop {
            let s = scalar(rng);
            if !s.is_zero() {
                return s;
            }
        }
    }

    pub fn point(rng: &mut impl Rng, dim: usize, r: i64) -> GroupElement {
        GroupElement::new((0..dim).map(|_| rng.gen_range(-r..=r)).collect())
    }

    /// Up to `max_support` point masses with coordinates in `[-3, 3]`.
    pub fn measure(rng: &mut impl Rng, dim: usize, max_support: usize) -> Measure {
        let n = rng.gen_range(1..=max_support);
        Measure::from_masses(dim, (0..n).map(|_| (point(rng, dim, 3), scalar(rng)))).expect("dimension")
    }

    pub fn exponential(rng: &mut impl Rng, dim: usize) -> Exponential {
        Exponential::new((0..dim).map(|_| nonzero_scalar(rng)).collect()).expect("nonzero base")
    }

    /// Small integer-friendly bases, so that roots stay readable.
    pub fn small_exponential(rng: &mut impl Rng, dim: usize) -> Exponential {
        let pool = [-2i64, -1, 1, 2, 3];
        Exponential::from_ints(&(0..dim).map(|_| *pool.choose(rng).unwrap()).collect::<Vec<_>>())
            .expect("nonzero base")
    }

    /// A polynomial of degree at most `max_deg` with a few terms.
    pub fn polynomial(rng: &mut impl Rng, dim: usize, max_deg: u32) -> Polynomial {
        let monos = monomials_up_to(dim, max_deg);
        let n = rng.gen_range(1..=4);
        Polynomial::from_terms(
            dim,
            (0..n).map(|_| (monos.choose(rng).unwrap().clone(), nonzero_scalar(rng))),
        )
    }

    /// A nonzero polynomial of degree exactly `deg`.
    pub fn polynomial_of_degree(rng: &mut impl Rng, dim: usize, deg: u32) -> Polynomial {
        let top: Vec<_> = monomials_up_to(dim, deg)
            .into_iter()
            .filter(|a| a.iter().sum::<u32>() == deg)
            .collect();
        let lead = Polynomial::monomial(dim, top.choose(rng).unwrap().clone(), nonzero_scalar(rng));
        if deg == 0 {
            return lead;
        }
        &lead + &polynomial(rng, dim, deg - 1)
    }

    pub fn laurent(rng: &mut impl Rng, dim: usize) -> LaurentPoly {
        let n = rng.gen_range(1..=3);
        LaurentPoly::from_terms(
            dim,
            (0..n).map(|_| {
                (
                    (0..dim).map(|_| rng.gen_range(-2..=2)).collect(),
                    nonzero_scalar(rng),
                )
            }),
        )
    }

    /// `∏ (z_i − c_i)^{β_i}`.
    pub fn point_power(c: &Exponential, beta: &[u32]) -> LaurentPoly {
        let d = c.dim();
        beta.iter().enumerate().fold(LaurentPoly::one(d), |acc, (i, &b)| {
            let lin = &LaurentPoly::var(d, i) - &LaurentPoly::constant(d, c.base()[i].clone());
            &acc * &lin.pow(b)
        })
    }

    /// A Laurent polynomial vanishing to order about `order` at `c`: a random
    /// combination of local products `(z − c)^β` with `|β| = order`, plus
    /// occasionally a lower-order perturbation.
    pub fn vanishing_at(rng: &mut impl Rng, c: &Exponential, order: u32) -> LaurentPoly {
        let d = c.dim();
        let top: Vec<_> = monomials_up_to(d, order)
            .into_iter()
            .filter(|a| a.iter().sum::<u32>() == order)
            .collect();
        let mut l = LaurentPoly::zero(d);
        for _ in 0..rng.gen_range(1..=2) {
            let b = top.choose(rng).unwrap();
            l = &l + &(&point_power(c, b) * &laurent(rng, d));
        }
        if l.is_zero() {
            l = point_power(c, top.choose(rng).unwrap());
        }
        l
    }

    /// Distinct roots in `Q(i) ∖ {0}` with exponents summing to at most `max_total`.
    pub fn root_multiset(rng: &mut impl Rng, max_total: u32) -> Vec<(Scalar, u32)> {
        let total = rng.gen_range(1..=max_total);
        let mut roots: Vec<(Scalar, u32)> = Vec::new();
        let mut left = total;
        while left > 0 {
            let c = nonzero_scalar(rng);
            if roots.iter().any(|(r, _)| *r == c) {
                continue;
            }
            let e = rng.gen_range(1..=left);
            roots.push((c, e));
            left -= e;
        }
        roots
    }

    /// The measure whose transform is `∏ (z − c_j)^{e_j}`.
    pub fn product_measure(roots: &[(Scalar, u32)]) -> Measure {
        let l = roots.iter().fold(LaurentPoly::one(1), |acc, (c, e)| {
            let lin = &LaurentPoly::var(1, 0) - &LaurentPoly::constant(1, c.clone());
            &acc * &lin.pow(*e)
        });
        inverse_transform(&l)
    }
}

/// Outcome of one property suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub trials: usize,
    pub failures: usize,
    /// First failing input, rendered as text.
    pub counterexample: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

struct Tally {
    report: SuiteReport,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            report: SuiteReport {
                name,
                trials: 0,
                failures: 0,
                counterexample: None,
            },
        }
    }

    fn record(&mut self, ok: Result<bool>, describe: impl FnOnce() -> String) {
        self.report.trials += 1;
        let ok = match ok {
            Ok(b) => b,
            Err(e) => {
                self.fail(format!("{} [error {}: {e}]", describe(), e.code()));
                return;
            }
        };
        if !ok {
            self.fail(describe());
        }
    }

    fn fail(&mut self, what: String) {
        self.report.failures += 1;
        if self.report.counterexample.is_none() {
            self.report.counterexample = Some(what);
        }
    }
}

pub type Suite = fn(&mut ChaCha8Rng, usize) -> SuiteReport;

/// Every suite with its default trial count.
pub const SUITES: &[(&str, Suite, usize)] = &[
    ("transform-homomorphism", transform_homomorphism, 200),
    ("frechet-order", frechet_characterization, 100),
    ("product-identity", product_identity, 100),
    ("derivation-algebra", derivation_algebra, 100),
    ("max-ideal-power", max_ideal_power, 100),
    ("derivation-ideal", derivation_ideal, 100),
    ("lefranc", lefranc, 50),
    ("zero-dimensional", zero_dimensional, 1),
    ("localizability", localizability, 50),
    ("duality", duality, 30),
    ("inclusion", inclusion, 30),
    ("rank-growth", rank_growth, 8),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.0).collect()
}

/// Runs the named suites (all when empty) with `trials` overriding defaults.
pub fn run_suites(names: &[&str], seed: u64, trials: Option<usize>) -> Vec<SuiteReport> {
    SUITES
        .iter()
        .filter(|(n, _, _)| names.is_empty() || names.contains(n))
        .map(|(n, f, t)| {
            // one stream per suite, so subsets reproduce the full run
            let mut r = rng(seed ^ name_hash(n));
            f(&mut r, trials.unwrap_or(*t))
        })
        .collect()
}

/// FNV-1a.
fn name_hash(name: &str) -> u64 {
    name.bytes()
        .fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

pub fn transform_homomorphism(rng: &mut ChaCha8Rng, trials: usize) -> SuiteReport {
    let mut t = Tally::new("transform-homomorphism");
    for _ in 0..trials {
        let d = rng.gen_range(1..=3);
        let mu = gen::measure(rng, d, 6);
        let nu = gen::measure(rng, d, 6);
        let ok = convolve(&mu, &nu).map(|p| transform(&p) == &transform(&mu) * &transform(&nu));
        t.record(ok, || format!("mu = {mu}; nu = {nu}"));
    }
    t.report
}

pub fn frechet_characterization(rng: &mut ChaCha8Rng, trials: usize) -> SuiteReport {
    let mut t = Tally::new("frechet-order");
    for _ in 0..trials {
        let d = rng.gen_range(1..=3);
        let deg = rng.gen_range(0..=4);
        let p = gen::polynomial_of_degree(rng, d, deg);
        let c = gen::small_exponential(rng, d);
        let ok = (|| {
            let f = ExpPolynomial::monomial(c.clone(), p.clone())?;
            let killed = p.symbolic_difference(deg as usize + 1).is_zero();
            let witness = frechet_witness(&f)?;
            let alive = if witness.is_empty() {
                !f.is_zero()
            } else {
                !act(&difference_product(&c, &witness)?, &f)?.is_zero()
            };
            Ok(killed && alive && frechet_order(&f)? == deg as usize)
        })();
        t.record(ok, || format!("p = {p}; c = {c}"));
    }
    t.report
}

pub fn product_identity(rng: &mut ChaCha8Rng, trials: usize) -> SuiteReport {
    let mut t = Tally::new("product-identity");
    for _ in 0..trials {
        let d = rng.gen_range(1..=3);
        let f = gen::polynomial(rng, d, 3);
        let g = gen::polynomial(rng, d, 3);
        let y = gen::point(rng, d, 3);
        let fg = &f * &g;
        let lhs = fg.difference(y.coords());
        let rhs = &(&f.difference(y.coords()) * &g.translate(y.coords())) + &(&f * &g.difference(y.coords()));
        let k = f.degree().unwrap_or(0) + g.degree().unwrap_or(0);
        let additive = fg.symbolic_difference(k as usize + 1).is_zero();
        t.record(Ok(lhs == rhs && additive), || format!("f = {f}; g = {g}; y = {y}"));
    }
    t.report
}

pub fn derivation_algebra(rng: &mut ChaCha8Rng, trials: usize) -> SuiteReport {
    let mut t = Tally::new("derivation-algebra");
    for _ in 0..trials {
        let d = rng.gen_range(1..=2);
        let d1 = Derivation::new(gen::polynomial(rng, d, 3));
        let d2 = Derivation::new(gen::polynomial(rng, d, 3));
        let mu = gen::measure(rng, d, 6);
        let c = gen::exponential(rng, d);
        let ok = (|| {
            let reweighted = mu.weighted(d2.generating_function())?;
            let lhs = apply(&compose(&d1, &d2), &mu, &c)?;
            let rhs = apply(&d1, &reweighted, &c)?;
            Ok(lhs == rhs && compose(&d1, &d2) == compose(&d2, &d1))
        })();
        t.record(ok, || format!("p1 = {}; p2 = {}; mu = {mu}; c = {c}", d1.generating_function(), d2.generating_function()));
    }
    t.report
}

pub fn max_ideal_power(rng: &mut ChaCha8Rng, trials: usize) -> SuiteReport {
    let mut t = Tally::new("max-ideal-power");
    for _ in 0..trials {
        let d = rng.gen_range(1..=2);
        let c = gen::small_exponential(rng, d);
        let n = rng.gen_range(0..=3u32);
        let order = rng.gen_range(0..=4);
        let l = gen::vanishing_at(rng, &c, order);
        let ok = (|| {
            let a = ideals::max_ideal_power_member(&l, &c, n as usize)?;
            let b = ideals::member(&IdealHandle::max_ideal_power(&c, n + 1), &l)?;
            let mu = inverse_transform(&l);
            let mut all = true;
            for alpha in monomials_up_to(d, n) {
                let q = Polynomial::monomial(d, alpha, Scalar::one());
                all &= moment(&mu, &q, &c)?.is_zero();
            }
            Ok(a == b && b == all)
        })();
        t.record(ok, || format!("L = {l}; c = {c}; n = {n}"));
    }
    t.report
}

pub fn derivation_ideal(rng: &mut ChaCha8Rng, trials: usize) -> SuiteReport {
    let mut t = Tally::new("derivation-ideal");
    for _ in 0..trials {
        let d = rng.gen_range(1..=2);
        let c = gen::small_exponential(rng, d);
        let p = gen::polynomial(rng, d, 3);
        let order = rng.gen_range(0..=4);
        let l = gen::vanishing_at(rng, &c, order);
        let ok = (|| {
            let a = ideals::derivation_ideal_member(&p, &c, &l)?;
            let b = ideals::annihilates_translates(&p, &c, &l)?;
            let e = ideals::derivation_ideal_member_base_point(&p, &c, &l)?;
            Ok(a == b && b == e)
        })();
        t.record(ok, || format!("p = {p}; c = {c}; L = {l}"));
    }
    t.report
}

fn lefranc_instance(roots: &[(Scalar, u32)]) -> Result<bool> {
    let mu = gen::product_measure(roots);
    let total: u32 = roots.iter().map(|r| r.1).sum();
    let sol = synthesis::solve_system(1, std::slice::from_ref(&mu), None, None)?;
    if sol.total_dimension() != total as usize || !sol.approximate.is_empty() || sol.truncated() {
        return Ok(false);
    }
    let max_e = roots.iter().map(|r| r.1).max().unwrap_or(0) as usize;
    let window = window_oracle(1, std::slice::from_ref(&mu), &default_window(1, std::slice::from_ref(&mu), max_e))?;
    let check = check_window_span(&sol, &window)?;
    Ok(check.spans() && check.window_dimension == total as usize)
}

fn describe_roots(roots: &[(Scalar, u32)]) -> String {
    roots
        .iter()
        .map(|(c, e)| format!("({c})^{e}"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn lefranc(rng: &mut ChaCha8Rng, trials: usize) -> SuiteReport {
    let mut t = Tally::new("lefranc");
    for _ in 0..trials {
        let roots = gen::root_multiset(rng, 6);
        t.record(lefranc_instance(&roots), || format!("roots {}", describe_roots(&roots)));
    }
    t.report
}

/// `⟨(z1 − 1)², z2 − 1, (z1 − 1)(z2 − 1)⟩`.
pub fn plane_instance() -> IdealHandle {
    let c = Exponential::from_ints(&[1, 1]).unwrap();
    IdealHandle::new(
        2,
        vec![
            gen::point_power(&c, &[2, 0]),
            gen::point_power(&c, &[0, 1]),
            gen::point_power(&c, &[1, 1]),
        ],
    )
    .unwrap()
}

pub fn zero_dimensional(_rng: &mut ChaCha8Rng, trials: usize) -> SuiteReport {
    let mut t = Tally::new("zero-dimensional");
    for _ in 0..trials.max(1) {
        let ok = (|| {
            let ideal = plane_instance();
            let c = Exponential::from_ints(&[1, 1])?;
            let measures: Vec<Measure> = ideal.generators().iter().map(inverse_transform).collect();
            let sol = synthesis::solve_system(2, &measures, None, None)?;
            let expected = vec![Polynomial::one(2), Polynomial::var(2, 0)];
            let ds = ideals::local_dual_space(&ideal, &c, Some(2))?;
            Ok(sol.bases.len() == 1
                && sol.bases[0].root == c
                && sol.bases[0].polys == expected
                && sol.total_dimension() == 2
                && ds.polynomials == expected)
        })();
        t.record(ok, || "plane instance".to_string());
    }
    t.report
}

/// Non-members of `I`: the generator with one root factor removed, and a
/// random Laurent polynomial.
fn localizability_case(ideal: &IdealHandle, roots: &[Exponential], l: &LaurentPoly) -> Result<bool> {
    let loc = synthesis::localizability_witness(ideal, l, roots, None)?;
    if loc.member {
        return ideals::member(ideal, l);
    }
    let Some(w) = loc.witness else { return Ok(false) };
    let nu = inverse_transform(l);
    let d = l.dim();
    let q0 = w.q.constant_term();
    let d_q = Derivation::new(&w.q - &Polynomial::constant(d, q0.clone()));
    let reproduced = q0 * nu_eval(&nu, &w.root)? + apply(&d_q, &nu, &w.root)?;
    let annihilates = ideal
        .generators()
        .iter()
        .map(|g| moment(&inverse_transform(g), &w.q, &w.root))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .all(Scalar::is_zero);
    Ok(!w.moment.is_zero() && reproduced == w.moment && annihilates)
}

fn nu_eval(nu: &Measure, c: &Exponential) -> Result<Scalar> {
    transform(nu).eval(c)
}

pub fn localizability(rng: &mut ChaCha8Rng, trials: usize) -> SuiteReport {
    let mut t = Tally::new("localizability");
    for k in 0..trials {
        if k == 0 {
            let ideal = plane_instance();
            let c = Exponential::from_ints(&[1, 1]).unwrap();
            for l in [
                gen::point_power(&c, &[1, 0]),
                &gen::point_power(&c, &[1, 0]) + &gen::point_power(&c, &[0, 2]),
                gen::laurent(rng, 2),
            ] {
                t.record(localizability_case(&ideal, std::slice::from_ref(&c), &l), || format!("plane instance; L = {l}"));
            }
            continue;
        }
        let roots = gen::root_multiset(rng, 6);
        let mu = gen::product_measure(&roots);
        let ideal = IdealHandle::from_measures(1, &[mu]).expect("dimension");
        let exps: Vec<Exponential> = roots
            .iter()
            .map(|(c, _)| Exponential::new(vec![c.clone()]).unwrap())
            .collect();
        let mut reduced = roots.clone();
        let j = rng.gen_range(0..reduced.len());
        reduced[j].1 -= 1;
        let l = transform(&gen::product_measure(&reduced));
        t.record(localizability_case(&ideal, &exps, &l), || {
            format!("roots {}; L = {l}", describe_roots(&roots))
        });
        let l = gen::laurent(rng, 1);
        t.record(localizability_case(&ideal, &exps, &l), || {
            format!("roots {}; L = {l}", describe_roots(&roots))
        });
    }
    t.report
}

fn reflected_span_equal(a: &[Polynomial], b: &[Polynomial], d: usize, n: usize) -> bool {
    let reflected: Vec<Polynomial> = b.iter().map(Polynomial::reflect).collect();
    ideals::canonical_polynomial_basis(d, n, a) == ideals::canonical_polynomial_basis(d, n, &reflected)
}

pub fn duality(rng: &mut ChaCha8Rng, trials: usize) -> SuiteReport {
    let mut t = Tally::new("duality");
    for k in 0..trials {
        let (d, gens, roots): (usize, Vec<LaurentPoly>, Vec<Exponential>) = if k % 3 == 2 {
            let c = gen::small_exponential(rng, 2);
            let a = rng.gen_range(1..=3);
            let b = rng.gen_range(1..=2);
            let gens = vec![
                gen::point_power(&c, &[a, 0]),
                gen::point_power(&c, &[0, b]),
                &gen::point_power(&c, &[1, 1]) + &gen::point_power(&c, &[a, 0]).scale(&gen::nonzero_scalar(rng)),
            ];
            (2, gens, vec![c])
        } else {
            let roots = gen::root_multiset(rng, 5);
            let exps = roots
                .iter()
                .map(|(c, _)| Exponential::new(vec![c.clone()]).unwrap())
                .collect();
            (1, vec![transform(&gen::product_measure(&roots))], exps)
        };
        let n = rng.gen_range(0..=4);
        let ok = (|| {
            let ideal = IdealHandle::new(d, gens.clone())?;
            let measures: Vec<Measure> = gens.iter().map(inverse_transform).collect();
            for c in &roots {
                let s = synthesis::solve_at_root(&measures, c, n)?;
                let ds = ideals::local_dual_space(&ideal, c, Some(n))?;
                if !reflected_span_equal(&s.polys, &ds.polynomials, d, n) {
                    return Ok(false);
                }
            }
            Ok(true)
        })();
        t.record(ok, || format!("generators {:?}; n = {n}", gens.iter().map(|g| g.to_string()).collect::<Vec<_>>()));
    }
    t.report
}

pub fn inclusion(rng: &mut ChaCha8Rng, trials: usize) -> SuiteReport {
    let mut t = Tally::new("inclusion");
    for _ in 0..trials {
        let roots = gen::root_multiset(rng, 5);
        let g = transform(&gen::product_measure(&roots));
        let l = &g * &gen::laurent(rng, 1);
        let ok = (|| {
            let ideal = IdealHandle::new(1, vec![g.clone()])?;
            for (c, _) in &roots {
                let c = Exponential::new(vec![c.clone()])?;
                for q in ideals::local_dual_space(&ideal, &c, None)?.polynomials {
                    if !ideals::derivation_ideal_member(&q, &c, &l)? {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        })();
        t.record(ok, || format!("roots {}; L = {l}", describe_roots(&roots)));
    }
    t.report
}

pub fn rank_growth(_rng: &mut ChaCha8Rng, trials: usize) -> SuiteReport {
    let mut t = Tally::new("rank-growth");
    let mut prev = 0;
    for k in 1..=trials.max(1) {
        let ok = synthesis::biadditive_demo(k).map(|dim| {
            let good = dim == k + 2 && dim > prev;
            prev = dim;
            good
        });
        t.record(ok, || format!("k = {k}"));
    }
    t.report
}
