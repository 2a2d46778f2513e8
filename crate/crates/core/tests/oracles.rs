//! Checks against oracles written here without the library's algorithms.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use synthkit::algebra::convolve;
use synthkit::exppoly::evaluate;
use synthkit::fourier::{inverse_transform, transform};
use synthkit::ideals::{self, local_dual_space, local_multiplicity, vanishing_order, zero_set};
use synthkit::synthesis::{solve_system, window_oracle, WindowBox};
use synthkit::verify::{gen, rng};
use synthkit::{Exponential, GroupElement, IdealHandle, LaurentPoly, Measure, Polynomial, Scalar};

type Terms = BTreeMap<Vec<i64>, Scalar>;

fn naive_convolution(mu: &Measure, nu: &Measure) -> Terms {
    let mut out = Terms::new();
    for (x, a) in mu.support() {
        for (y, b) in nu.support() {
            let s: Vec<i64> = x.coords().iter().zip(y.coords()).map(|(p, q)| p + q).collect();
            *out.entry(s).or_insert_with(Scalar::zero) += &(a * b);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn naive_laurent_product(a: &LaurentPoly, b: &LaurentPoly) -> Terms {
    let mut out = Terms::new();
    for (e, x) in a.terms() {
        for (f, y) in b.terms() {
            let s: Vec<i64> = e.iter().zip(f).map(|(p, q)| p + q).collect();
            *out.entry(s).or_insert_with(Scalar::zero) += &(x * y);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn measure_terms(m: &Measure) -> Terms {
    m.support().map(|(x, v)| (x.coords().to_vec(), v.clone())).collect()
}

fn laurent_terms(l: &LaurentPoly) -> Terms {
    l.terms().map(|(e, v)| (e.clone(), v.clone())).collect()
}

#[test]
fn convolution_and_transform_against_naive_sums() {
    let mut r = rng(101);
    for k in 0..60 {
        let d = 1 + k % 3;
        let mu = gen::measure(&mut r, d, 6);
        let nu = gen::measure(&mut r, d, 6);
        let conv = convolve(&mu, &nu).unwrap();
        assert_eq!(measure_terms(&conv), naive_convolution(&mu, &nu));
        let lhs = laurent_terms(&transform(&conv));
        let rhs = naive_laurent_product(&transform(&mu), &transform(&nu));
        assert_eq!(lhs, rhs);
        let negated: Terms = measure_terms(&conv).into_iter().map(|(x, v)| (x.iter().map(|c| -c).collect(), v)).collect();
        assert_eq!(lhs, negated);
    }
}

/// `∂^α L` term by term.
fn partial(l: &Terms, alpha: &[u32]) -> Terms {
    let mut out = Terms::new();
    for (e, c) in l {
        let mut coeff = c.clone();
        let mut e2 = e.clone();
        for (i, &k) in alpha.iter().enumerate() {
            for _ in 0..k {
                coeff = &coeff * &Scalar::from_int(e2[i]);
                e2[i] -= 1;
            }
        }
        if !coeff.is_zero() {
            *out.entry(e2).or_insert_with(Scalar::zero) += &coeff;
        }
    }
    out
}

fn eval_terms(l: &Terms, c: &[Scalar]) -> Scalar {
    l.iter()
        .map(|(e, v)| {
            e.iter()
                .zip(c)
                .fold(v.clone(), |acc, (k, ci)| &acc * &ci.pow(*k).unwrap())
        })
        .sum()
}

fn multi_indices(d: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v| (0..=max).map(move |k| [v.clone(), vec![k]].concat()))
            .collect();
    }
    out.into_iter().filter(|a| a.iter().sum::<u32>() <= max).collect()
}

fn naive_order(l: &LaurentPoly, c: &Exponential) -> usize {
    let terms = laurent_terms(l);
    let d = l.dim();
    (0..12)
        .find(|&n| {
            multi_indices(d, n as u32)
                .iter()
                .filter(|a| a.iter().sum::<u32>() == n as u32)
                .any(|a| !eval_terms(&partial(&terms, a), c.base()).is_zero())
        })
        .unwrap()
}

#[test]
fn vanishing_order_matches_partial_derivatives() {
    let mut r = rng(202);
    for k in 0..60 {
        let d = 1 + k % 2;
        let c = gen::small_exponential(&mut r, d);
        let order = (k % 5) as u32;
        let l = gen::vanishing_at(&mut r, &c, order);
        if l.is_zero() {
            continue;
        }
        let n = vanishing_order(&l, &c).unwrap();
        assert_eq!(n, naive_order(&l, &c), "L = {l}, c = {c}");
        assert!(n >= order as usize);
    }
}

/// Rank of a matrix over Q(i) by plain elimination.
fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let mut rank = 0;
    let cols = rows.first().map_or(0, |r| r.len());
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][col].inv().unwrap();
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && !row[col].is_zero() {
                let f = &row[col] * &inv;
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x = &*x - &(&f * p);
                }
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn recurrence_solutions_fill_the_solution_space() {
    let mut r = rng(303);
    for _ in 0..25 {
        let roots = gen::root_multiset(&mut r, 6);
        let total: u32 = roots.iter().map(|x| x.1).sum();
        let mu = gen::product_measure(&roots);
        let sol = solve_system(1, std::slice::from_ref(&mu), None, None).unwrap();
        let fs: Vec<_> = sol.bases.iter().flat_map(|b| b.solutions()).collect();
        assert_eq!(fs.len(), total as usize);
        for f in &fs {
            for x in -4..5 {
                let s: Scalar = mu
                    .support()
                    .map(|(y, m)| m * &evaluate(f, &GroupElement::new(vec![x - y.coords()[0]])).unwrap())
                    .sum();
                assert!(s.is_zero());
            }
        }
        let rows: Vec<Vec<Scalar>> = fs
            .iter()
            .map(|f| (0..total as i64).map(|x| evaluate(f, &GroupElement::new(vec![x])).unwrap()).collect())
            .collect();
        assert_eq!(rank(rows), total as usize);
    }
}

#[test]
fn window_oracle_dimension_is_the_recurrence_order() {
    let mu = Measure::from_ints(1, &[(&[-3], 1), (&[-2], -3), (&[-1], 3), (&[0], -1)]).unwrap();
    let w = window_oracle(1, &[mu], &WindowBox::cube(1, 0, 9)).unwrap();
    assert_eq!(w.dimension(), 3);
}

fn box_ideal(a: &Scalar, b: &Scalar, p: u32, q: u32) -> IdealHandle {
    let c = Exponential::new(vec![a.clone(), b.clone()]).unwrap();
    IdealHandle::new(2, vec![gen::point_power(&c, &[p, 0]), gen::point_power(&c, &[0, q])]).unwrap()
}

#[test]
fn box_ideals_have_rectangular_dual_spaces() {
    for (p, q) in [(1, 1), (2, 1), (3, 2), (2, 3)] {
        let a = Scalar::from_ratio(1, 2);
        let b = Scalar::gaussian(0, -1);
        let ideal = box_ideal(&a, &b, p, q);
        let c = Exponential::new(vec![a, b]).unwrap();
        assert_eq!(local_multiplicity(&ideal, &c).unwrap(), Some((p * q) as usize));
        let ds = local_dual_space(&ideal, &c, None).unwrap();
        let mut expected: Vec<Polynomial> = (0..p)
            .flat_map(|i| (0..q).map(move |j| Polynomial::monomial(2, vec![i, j], Scalar::one())))
            .collect();
        expected.sort_by_key(|m| m.degree());
        assert_eq!(ds.polynomials.len(), (p * q) as usize);
        for m in &expected {
            assert!(ds.polynomials.contains(m), "{m} missing for {p}x{q}");
        }
        assert!(ds.stabilized);
    }
}

#[test]
fn plane_instance_by_hand() {
    let ideal = synthkit::verify::plane_instance();
    let c = Exponential::from_ints(&[1, 1]).unwrap();
    let ds = local_dual_space(&ideal, &c, None).unwrap();
    assert_eq!(ds.polynomials, vec![Polynomial::one(2), Polynomial::var(2, 0)]);
    let measures: Vec<Measure> = ideal.generators().iter().map(inverse_transform).collect();
    let sol = solve_system(2, &measures, None, None).unwrap();
    assert_eq!(sol.total_dimension(), 2);
    assert_eq!(sol.bases[0].polys, ds.polynomials);
}

#[test]
fn zero_set_of_products() {
    let mut r = rng(404);
    for _ in 0..20 {
        let roots = gen::root_multiset(&mut r, 6);
        let l = transform(&gen::product_measure(&roots));
        let zs = zero_set(&IdealHandle::new(1, vec![l]).unwrap()).unwrap();
        let mut got: Vec<String> = zs.exact.iter().map(|c| c.base()[0].to_string()).collect();
        let mut want: Vec<String> = roots.iter().map(|(c, _)| c.to_string()).collect();
        got.sort();
        want.sort();
        assert_eq!(got, want);
        assert!(zs.approximate.is_empty());
    }
}

#[test]
fn membership_of_multiples() {
    let mut r = rng(505);
    for _ in 0..20 {
        let g1 = gen::laurent(&mut r, 2);
        let g2 = gen::laurent(&mut r, 2);
        let ideal = IdealHandle::new(2, vec![g1.clone(), g2.clone()]).unwrap();
        let l = &(&g1 * &gen::laurent(&mut r, 2)) + &(&g2 * &gen::laurent(&mut r, 2));
        assert!(ideals::member(&ideal, &l).unwrap());
    }
}
