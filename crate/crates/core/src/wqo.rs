//! The product order on `ℕ^k`, minimal bases and the finite basis property
//! on finite prefixes of streams.

use crate::bm_model::BilinearForm;
use crate::free_jordan::{left_normed, Cofactor, GradedPolynomial};
use crate::identities::is_identity;
use crate::tableaux::{hwv_generator, ExponentVector};
use crate::{Error, Result};

pub type NatVector = Vec<usize>;

/// A quasi-order. `leq` may refuse incomparable *shapes* (e.g. vectors of
/// different lengths) with an error.
pub trait QuasiOrder<T: ?Sized> {
    fn leq(&self, a: &T, b: &T) -> Result<bool>;
}

/// `(ℕ, ≤)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Naturals;

impl QuasiOrder<usize> for Naturals {
    fn leq(&self, a: &usize, b: &usize) -> Result<bool> {
        Ok(a <= b)
    }
}

/// The product of `k` copies of a quasi-order: `a <= b` iff `a_i <= b_i`
/// for every `i`.
#[derive(Debug, Clone)]
pub struct ProductOrder<Q> {
    factors: Vec<Q>,
}

impl<Q: Clone> ProductOrder<Q> {
    pub fn power(q: Q, k: usize) -> Self {
        ProductOrder { factors: vec![q; k] }
    }
}

impl<Q> ProductOrder<Q> {
    pub fn new(factors: Vec<Q>) -> Self {
        ProductOrder { factors }
    }
}

impl<T, Q: QuasiOrder<T>> QuasiOrder<[T]> for ProductOrder<Q> {
    fn leq(&self, a: &[T], b: &[T]) -> Result<bool> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch(a.len(), b.len()));
        }
        if a.len() != self.factors.len() {
            return Err(Error::LengthMismatch(a.len(), self.factors.len()));
        }
        for ((q, x), y) in self.factors.iter().zip(a).zip(b) {
            if !q.leq(x, y)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Coordinatewise `<=` on `ℕ^k`.
pub fn leq(a: &[usize], b: &[usize]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    Ok(a.iter().zip(b).all(|(x, y)| x <= y))
}

fn dominated(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x <= y)
}

/// The `<=`-minimal elements of `s`, deduplicated and sorted.
pub fn minimal_basis(s: &[NatVector]) -> Vec<NatVector> {
    let mut v: Vec<NatVector> = s.to_vec();
    v.sort();
    v.dedup();
    let out: Vec<NatVector> = v
        .iter()
        .filter(|a| !v.iter().any(|b| b != *a && dominated(b, a)))
        .cloned()
        .collect();
    out
}

/// Whether some basis element is `<= v`.
pub fn closure_contains(basis: &[NatVector], v: &[usize]) -> bool {
    basis.iter().any(|b| dominated(b, v))
}

/// Incremental finite basis: `v` is kept unless already in the closure of
/// the kept set, and kept elements above `v` are dropped.
pub fn finite_basis_from_stream(seq: impl IntoIterator<Item = NatVector>) -> Vec<NatVector> {
    let mut basis: Vec<NatVector> = Vec::new();
    for v in seq {
        if closure_contains(&basis, &v) {
            continue;
        }
        basis.retain(|b| !dominated(&v, b));
        basis.push(v);
    }
    basis
}

pub fn is_antichain(s: &[NatVector]) -> bool {
    s.iter()
        .enumerate()
        .all(|(i, a)| s.iter().enumerate().all(|(j, b)| i == j || !dominated(a, b)))
}

fn strictly_less(a: &[usize], b: &[usize]) -> bool {
    dominated(a, b) && a != b
}

/// Indices of a longest strictly ascending subsequence. Ties are broken
/// towards smaller indices.
pub fn ascending_subsequence(seq: &[NatVector]) -> Vec<usize> {
    if seq.is_empty() {
        return Vec::new();
    }
    let n = seq.len();
    let mut best = vec![1usize; n];
    let mut prev = vec![usize::MAX; n];
    for j in 0..n {
        for i in 0..j {
            if strictly_less(&seq[i], &seq[j]) && best[i] + 1 > best[j] {
                best[j] = best[i] + 1;
                prev[j] = i;
            }
        }
    }
    let (mut end, _) = best
        .iter()
        .enumerate()
        .fold((0, 0), |(bi, bv), (i, &v)| if v > bv { (i, v) } else { (bi, bv) });
    let mut out = vec![end];
    while prev[end] != usize::MAX {
        end = prev[end];
        out.push(end);
    }
    out.reverse();
    out
}

/// The quotient `q` with `hwv(e') ≡ q · hwv(e)`: the left-normed product of
/// the factors in the exponent difference, or the empty product.
pub fn quotient(e: &ExponentVector, e2: &ExponentVector) -> Result<Cofactor> {
    if e.m() != e2.m() {
        return Err(Error::LengthMismatch(e.m(), e2.m()));
    }
    let (a, b) = (e.to_nat(), e2.to_nat());
    if !leq(&a, &b)? {
        return Err(Error::NotComparable);
    }
    let diff: Vec<usize> = a.iter().zip(&b).map(|(x, y)| y - x).collect();
    let d = ExponentVector::from_nat(&diff, e.m())?;
    Ok(match left_normed(&d.factors()) {
        Some(q) => Cofactor::Poly(q),
        None => Cofactor::unit(),
    })
}

/// Checks that `hwv(e') - q · hwv(e)` is an identity of `B_m`.
pub fn consequence_check(e: &ExponentVector, e2: &ExponentVector, f: &BilinearForm, degree_bound: usize) -> Result<bool> {
    let degree = e2.degree();
    if degree > degree_bound {
        return Err(Error::DegreeBound { degree, bound: degree_bound });
    }
    let q = quotient(e, e2)?;
    let base = hwv_generator(e)?;
    let target = hwv_generator(e2)?;
    let product: GradedPolynomial = match q {
        Cofactor::EmptyProduct(c) => base.scale(&c),
        Cofactor::Poly(q) => q.product(&base),
    };
    is_identity(&(target - product), f)
}
