//! Buchberger's algorithm over Gaussian rationals with the graded reverse
//! lexicographic order.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

use num_traits::{One, Zero};

use crate::poly::{MultiIndex, Polynomial};
use crate::scalar::Scalar;

/// Graded reverse lexicographic comparison, variables in index order
/// (`x1 > x2 > … > xn`).
pub fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> MultiIndex {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn quotient(b: &[u32], a: &[u32]) -> MultiIndex {
    b.iter().zip(a).map(|(x, y)| x - y).collect()
}

/// Polynomial with terms sorted ascending, so the leading term is last.
#[derive(Clone, PartialEq, Eq)]
struct SortedPoly {
    terms: Vec<(MultiIndex, Scalar)>,
}

impl SortedPoly {
    fn from_polynomial(p: &Polynomial) -> Self {
        let mut terms: Vec<(MultiIndex, Scalar)> =
            p.terms().map(|(a, c)| (a.clone(), c.clone())).collect();
        terms.sort_by(|x, y| grevlex(&x.0, &y.0));
        SortedPoly { terms }
    }

    fn to_polynomial(&self, nvars: usize) -> Polynomial {
        Polynomial::from_terms(nvars, self.terms.iter().cloned())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &MultiIndex {
        &self.terms.last().unwrap().0
    }

    fn lc(&self) -> &Scalar {
        &self.terms.last().unwrap().1
    }

    fn make_monic(&mut self) {
        let inv = self.lc().inv().expect("nonzero leading coefficient");
        if !inv.is_one() {
            for (_, c) in &mut self.terms {
                *c = &*c * &inv;
            }
        }
    }

    /// `self − coef·x^mono·other`.
    fn sub_scaled(&self, coef: &Scalar, mono: &[u32], other: &SortedPoly) -> SortedPoly {
        let shifted = other.terms.iter().map(|(a, c)| {
            let m: MultiIndex = a.iter().zip(mono).map(|(x, y)| x + y).collect();
            (m, c * coef)
        });
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut left = self.terms.iter().cloned().peekable();
        let mut right = shifted.peekable();
        loop {
            let ord = match (left.peek(), right.peek()) {
                (Some(l), Some(r)) => grevlex(&l.0, &r.0),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => break,
            };
            match ord {
                Ordering::Less => out.push(left.next().unwrap()),
                Ordering::Greater => {
                    let (m, c) = right.next().unwrap();
                    out.push((m, -c));
                }
                Ordering::Equal => {
                    let (m, a) = left.next().unwrap();
                    let (_, b) = right.next().unwrap();
                    let c = a - b;
                    if !c.is_zero() {
                        out.push((m, c));
                    }
                }
            }
        }
        SortedPoly { terms: out }
    }
}

/// Full reduction of `p` modulo `basis`.
fn normal_form(p: &SortedPoly, basis: &[SortedPoly]) -> SortedPoly {
    let mut p = p.clone();
    let mut rem: Vec<(MultiIndex, Scalar)> = Vec::new();
    while !p.is_zero() {
        let lm = p.lm().clone();
        match basis.iter().find(|g| divides(g.lm(), &lm)) {
            Some(g) => {
                let coef = p.lc() / g.lc();
                p = p.sub_scaled(&coef, &quotient(&lm, g.lm()), g);
            }
            None => rem.push(p.terms.pop().unwrap()),
        }
    }
    rem.reverse();
    SortedPoly { terms: rem }
}

fn s_polynomial(f: &SortedPoly, g: &SortedPoly) -> SortedPoly {
    let l = lcm(f.lm(), g.lm());
    let fm = SortedPoly {
        terms: Vec::new(),
    }
    .sub_scaled(&(-Scalar::one() / f.lc()), &quotient(&l, f.lm()), f);
    fm.sub_scaled(&(Scalar::one() / g.lc()), &quotient(&l, g.lm()), g)
}

/// A reduced Gröbner basis of a polynomial ideal in `nvars` variables.
#[derive(Clone)]
pub struct GroebnerBasis {
    nvars: usize,
    polys: Vec<SortedPoly>,
}

impl std::fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroebnerBasis({} elements)", self.polys.len())
    }
}

impl GroebnerBasis {
    pub fn new(nvars: usize, generators: &[Polynomial]) -> Self {
        let gens: Vec<SortedPoly> = generators
            .iter()
            .inspect(|g| assert_eq!(g.dim(), nvars, "generator ring"))
            .map(SortedPoly::from_polynomial)
            .filter(|g| !g.is_zero())
            .collect();
        GroebnerBasis {
            nvars,
            polys: reduce_basis(buchberger(gens)),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].lm().iter().all(|&e| e == 0)
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.polys.iter().map(|g| g.to_polynomial(self.nvars)).collect()
    }

    pub fn leading_monomials(&self) -> Vec<MultiIndex> {
        self.polys.iter().map(|g| g.lm().clone()).collect()
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        assert_eq!(p.dim(), self.nvars, "polynomial ring");
        normal_form(&SortedPoly::from_polynomial(p), &self.polys).to_polynomial(self.nvars)
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Every variable has a pure power among the leading monomials.
    pub fn is_zero_dimensional(&self) -> bool {
        (0..self.nvars).all(|i| {
            self.polys.iter().any(|g| {
                g.lm()
                    .iter()
                    .enumerate()
                    .all(|(j, &e)| (j == i) == (e > 0))
            })
        })
    }

    /// Monomials outside the leading-term ideal, in grevlex order; `None`
    /// when there are infinitely many.
    pub fn standard_monomials(&self) -> Option<Vec<MultiIndex>> {
        if !self.is_zero_dimensional() {
            return None;
        }
        let lms = self.leading_monomials();
        let mut seen: BTreeSet<MultiIndex> = BTreeSet::new();
        let mut frontier = vec![vec![0u32; self.nvars]];
        while let Some(m) = frontier.pop() {
            if seen.contains(&m) || lms.iter().any(|l| divides(l, &m)) {
                continue;
            }
            for i in 0..self.nvars {
                let mut next = m.clone();
                next[i] += 1;
                frontier.push(next);
            }
            seen.insert(m);
        }
        let mut out: Vec<MultiIndex> = seen.into_iter().collect();
        out.sort_by(|a, b| grevlex(a, b));
        Some(out)
    }
}

fn buchberger(gens: Vec<SortedPoly>) -> Vec<SortedPoly> {
    let mut basis: Vec<SortedPoly> = Vec::new();
    let mut pending: BTreeSet<(MultiIndex, usize, usize)> = BTreeSet::new();
    let mut pending_set: HashSet<(usize, usize)> = HashSet::new();

    let insert = |h: SortedPoly,
                      basis: &mut Vec<SortedPoly>,
                      pending: &mut BTreeSet<(MultiIndex, usize, usize)>,
                      pending_set: &mut HashSet<(usize, usize)>| {
        let k = basis.len();
        for (i, g) in basis.iter().enumerate() {
            let l = lcm(g.lm(), h.lm());
            pending.insert((l, i, k));
            pending_set.insert((i, k));
        }
        basis.push(h);
    };

    for g in gens {
        let mut h = normal_form(&g, &basis);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        insert(h, &mut basis, &mut pending, &mut pending_set);
    }

    // pop pairs by smallest lcm in grevlex order (normal strategy)
    while let Some(key) = pending
        .iter()
        .min_by(|a, b| grevlex(&a.0, &b.0).then_with(|| (a.1, a.2).cmp(&(b.1, b.2))))
        .cloned()
    {
        pending.remove(&key);
        let (l, i, j) = key;
        pending_set.remove(&(i, j));
        let (fi, fj) = (&basis[i], &basis[j]);
        let coprime = fi.lm().iter().zip(fj.lm()).all(|(a, b)| *a == 0 || *b == 0);
        if coprime {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(basis[k].lm(), &l)
                && !pending_set.contains(&(i.min(k), i.max(k)))
                && !pending_set.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(fi, fj);
        let mut h = normal_form(&s, &basis);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        if h.lm().iter().all(|&e| e == 0) {
            return vec![h];
        }
        insert(h, &mut basis, &mut pending, &mut pending_set);
    }
    basis
}

fn reduce_basis(basis: Vec<SortedPoly>) -> Vec<SortedPoly> {
    // drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<SortedPoly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            j != i && divides(h.lm(), g.lm()) && (h.lm() != g.lm() || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<SortedPoly> = (0..minimal.len())
        .map(|i| {
            let others: Vec<SortedPoly> = minimal
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let mut r = normal_form(&minimal[i], &others);
            r.make_monic();
            r
        })
        .collect();
    reduced.sort_by(|a, b| grevlex(a.lm(), b.lm()));
    reduced
}
