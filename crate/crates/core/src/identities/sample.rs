use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::free_jordan::{GradedPolynomial, Monomial, Variable};
use crate::rational;

fn random_tree<R: Rng>(rng: &mut R, leaves: &[Variable]) -> Monomial {
    if leaves.len() == 1 {
        return Monomial::leaf(leaves[0]);
    }
    let cut = rng.gen_range(1..leaves.len());
    let l = random_tree(rng, &leaves[..cut]);
    let r = random_tree(rng, &leaves[cut..]);
    Monomial::mul_owned(l, r)
}

/// A random polynomial in the odd variables with the given multidegree:
/// `terms` random monomials with coefficients in `-3..=3`.
pub fn random_odd_polynomial<R: Rng>(rng: &mut R, multidegree: &BTreeMap<usize, usize>, terms: usize) -> GradedPolynomial {
    let mut leaves: Vec<Variable> = multidegree
        .iter()
        .flat_map(|(&i, &d)| std::iter::repeat_n(Variable::y(i), d))
        .collect();
    let mut out = GradedPolynomial::zero();
    if leaves.is_empty() {
        return out;
    }
    for _ in 0..terms {
        leaves.shuffle(rng);
        let c = rng.gen_range(-3i64..=3);
        out = out + GradedPolynomial::term(rational::int(c), random_tree(rng, &leaves));
    }
    out
}

/// A random multidegree on `y_1..y_vars` of the given total degree, every
/// variable present.
pub fn random_multidegree<R: Rng>(rng: &mut R, total: usize, vars: usize) -> BTreeMap<usize, usize> {
    assert!(vars >= 1 && vars <= total);
    let mut d = vec![1usize; vars];
    for _ in vars..total {
        d[rng.gen_range(0..vars)] += 1;
    }
    d.into_iter().enumerate().map(|(i, v)| (i + 1, v)).collect()
}
