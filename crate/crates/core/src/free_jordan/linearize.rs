use std::collections::BTreeMap;

use num_traits::One;

use super::monomial::{all_trees, Kind, Monomial, Variable};
use super::polynomial::GradedPolynomial;
use crate::rational::Rational;
use crate::{Error, Result};

/// Result of a complete linearization together with the fresh copies that
/// replaced each original variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multilinearization {
    pub poly: GradedPolynomial,
    pub copies: BTreeMap<Variable, Vec<Variable>>,
}

impl Multilinearization {
    /// Sends every fresh copy back to its original variable.
    pub fn identify_copies(&self) -> GradedPolynomial {
        let back: BTreeMap<Variable, Variable> = self
            .copies
            .iter()
            .flat_map(|(orig, cs)| cs.iter().map(move |c| (*c, *orig)))
            .collect();
        self.poly.rename(&|v| back[&v])
    }
}

/// Complete polarization: every variable of degree `d` is replaced by the sum
/// of `d` fresh variables of the same kind and the multilinear part is kept.
///
/// Fresh copies are numbered consecutively per kind in variable order, so
/// `y1^2 y2` linearizes into the variables `y1, y2` (copies of `y1`) and `y3`.
pub fn multilinearize(p: &GradedPolynomial) -> Result<Multilinearization> {
    let profile = p.multidegree().ok_or(Error::NotMultihomogeneous)?;
    let mut copies: BTreeMap<Variable, Vec<Variable>> = BTreeMap::new();
    let (mut next_x, mut next_y) = (1usize, 1usize);
    for (v, d) in profile.variables() {
        let fresh = (0..d)
            .map(|_| match v.kind {
                Kind::Even => {
                    next_x += 1;
                    Variable::x(next_x - 1)
                }
                Kind::Odd => {
                    next_y += 1;
                    Variable::y(next_y - 1)
                }
            })
            .collect();
        copies.insert(v, fresh);
    }

    let mut out = GradedPolynomial::zero();
    for (m, c) in p.terms() {
        let leaves = m.leaves();
        let mut positions: BTreeMap<Variable, Vec<usize>> = BTreeMap::new();
        for (i, v) in leaves.iter().enumerate() {
            positions.entry(*v).or_default().push(i);
        }
        let groups: Vec<(Vec<usize>, &Vec<Variable>)> = positions
            .into_iter()
            .map(|(v, pos)| (pos, &copies[&v]))
            .collect();
        let mut labels = leaves.clone();
        assign_copies(&groups, 0, &mut labels, &mut |labels| {
            let mut it = labels.iter().copied();
            out.add_term(relabel(m, &mut it), c.clone());
        });
    }
    Ok(Multilinearization { poly: out, copies })
}

fn assign_copies(
    groups: &[(Vec<usize>, &Vec<Variable>)],
    g: usize,
    labels: &mut Vec<Variable>,
    emit: &mut impl FnMut(&[Variable]),
) {
    if g == groups.len() {
        emit(labels);
        return;
    }
    let (pos, fresh) = &groups[g];
    let mut perm: Vec<usize> = (0..pos.len()).collect();
    for_each_permutation(&mut perm, 0, &mut |perm| {
        for (slot, &choice) in pos.iter().zip(perm.iter()) {
            labels[*slot] = fresh[choice];
        }
        assign_copies(groups, g + 1, labels, emit);
    });
}

pub(crate) fn for_each_permutation(perm: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        for_each_permutation(perm, k + 1, f);
        perm.swap(k, i);
    }
}

fn relabel(m: &Monomial, labels: &mut impl Iterator<Item = Variable>) -> Monomial {
    match m {
        Monomial::Leaf(_) => Monomial::Leaf(labels.next().expect("one label per leaf")),
        Monomial::Node { left, right, .. } => {
            let l = relabel(left, labels);
            let r = relabel(right, labels);
            Monomial::mul_owned(l, r)
        }
    }
}

/// All canonical monomials multilinear in exactly `x_1..x_k, y_1..y_n`.
pub fn multilinear_basis(k: usize, n: usize) -> Result<Vec<Monomial>> {
    if k + n == 0 {
        return Err(Error::EmptyVariableSet);
    }
    let leaves: Vec<Variable> = (1..=k).map(Variable::x).chain((1..=n).map(Variable::y)).collect();
    let mut trees = all_trees(&leaves);
    trees.sort();
    Ok(trees)
}

/// `(2t - 3)!!`, the number of unordered binary trees on `t >= 1` labelled
/// leaves. Saturates instead of overflowing.
pub fn tree_count(t: usize) -> u128 {
    if t <= 1 {
        return 1;
    }
    (1..=(2 * t - 3) as u128).step_by(2).fold(1u128, |acc, f| acc.saturating_mul(f))
}

/// Scalar `∏ d_i!` relating a polynomial to its linearization.
pub fn linearization_factor(p: &GradedPolynomial) -> Option<Rational> {
    let profile = p.multidegree()?;
    let mut f = Rational::one();
    for (_, d) in profile.variables() {
        for i in 2..=d {
            f *= Rational::from_integer((i as i64).into());
        }
    }
    Some(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn y(i: usize) -> GradedPolynomial {
        GradedPolynomial::y(i)
    }

    #[test]
    fn square_polarizes_to_twice_the_product() {
        let lin = multilinearize(&y(1).product(&y(1))).unwrap();
        assert_eq!(lin.poly, y(1).product(&y(2)).scale(&int(2)));
        assert_eq!(lin.copies[&Variable::y(1)], vec![Variable::y(1), Variable::y(2)]);
    }

    #[test]
    fn square_times_variable() {
        let p = y(1).product(&y(1)).product(&y(2));
        let lin = multilinearize(&p).unwrap();
        // copies of y1 are y1, y2; y2 becomes y3
        let expected = y(1).product(&y(2)).product(&y(3)).scale(&int(2));
        assert_eq!(lin.poly, expected);
    }

    #[test]
    fn multilinear_input_is_unchanged_up_to_renaming() {
        let p = GradedPolynomial::x(2).product(&y(3)) + GradedPolynomial::x(2).product(&y(3)).scale(&int(4));
        let lin = multilinearize(&p).unwrap();
        assert_eq!(lin.poly, GradedPolynomial::x(1).product(&y(1)).scale(&int(5)));
        assert_eq!(lin.identify_copies(), p);
    }

    #[test]
    fn rejects_inhomogeneous_input() {
        assert_eq!(multilinearize(&(y(1) + y(1).product(&y(1)))), Err(Error::NotMultihomogeneous));
    }

    #[test]
    fn basis_examples() {
        let b = multilinear_basis(0, 2).unwrap();
        assert_eq!(b, vec![Monomial::mul(&Monomial::y(1), &Monomial::y(2))]);
        let b = multilinear_basis(0, 3).unwrap();
        let names: Vec<String> = b.iter().map(|m| m.to_string()).collect();
        assert_eq!(names.len(), 3);
        for s in ["(y1*(y2*y3))", "(y2*(y1*y3))", "(y3*(y1*y2))"] {
            assert!(names.contains(&s.to_string()), "{s} missing from {names:?}");
        }
        assert_eq!(multilinear_basis(1, 2).unwrap().len(), 3);
        assert_eq!(multilinear_basis(0, 0), Err(Error::EmptyVariableSet));
    }

    #[test]
    fn tree_count_values() {
        assert_eq!(tree_count(1), 1);
        assert_eq!(tree_count(2), 1);
        assert_eq!(tree_count(3), 3);
        assert_eq!(tree_count(6), 945);
        assert_eq!(tree_count(500), u128::MAX);
    }
}
