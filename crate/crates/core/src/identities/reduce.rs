//! Reductions modulo the identities of `B_m`. Every result is certified by
//! an identity check of the difference before it is returned.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{is_identity, EvalSpace, EvaluationMatrix};
use crate::bm_model::BilinearForm;
use crate::free_jordan::{left_normed, Cofactor, GradedPolynomial, Kind, Monomial, Parity};
use crate::linalg::solve_combination;
use crate::rational::Rational;
use crate::tableaux::{
    doubly_standard_tableaux, make_tn, make_tn0, tableau_polynomial, transvection_invariant, DoubleTableau,
};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XPrefix {
    /// `α_i`, the degree of `x_i`.
    pub exponents: BTreeMap<usize, usize>,
    /// The odd part `g`; `EmptyProduct(c)` when `p` has no odd variables.
    pub g: Cofactor,
}

impl XPrefix {
    /// `x_1^{α_1} ⋯ x_k^{α_k}` as a left-normed product.
    pub fn prefix(&self) -> Option<GradedPolynomial> {
        let xs: Vec<GradedPolynomial> = self
            .exponents
            .iter()
            .flat_map(|(&i, &a)| std::iter::repeat_n(GradedPolynomial::x(i), a))
            .collect();
        left_normed(&xs)
    }

    pub fn recombine(&self) -> GradedPolynomial {
        self.g.times_prefix(self.prefix().as_ref()).expect("p is nonzero")
    }
}

fn strip_even(m: &Monomial) -> Option<Monomial> {
    match m {
        Monomial::Leaf(v) if v.kind == Kind::Even => None,
        Monomial::Leaf(_) => Some(m.clone()),
        Monomial::Node { left, right, .. } => match (strip_even(left), strip_even(right)) {
            (None, None) => None,
            (Some(a), None) | (None, Some(a)) => Some(a),
            (Some(a), Some(b)) => Some(Monomial::mul_owned(a, b)),
        },
    }
}

/// `p ≡ x_1^{α_1} ⋯ x_k^{α_k} · g(y)`: even variables act as the unit, so
/// `g` is obtained by deleting every `x`-leaf.
pub fn reduce_x_prefix(p: &GradedPolynomial, f: &BilinearForm) -> Result<XPrefix> {
    let profile = p.multidegree().ok_or(Error::NotMultihomogeneous)?;
    if p.is_zero() {
        return Err(Error::ParityUndefined);
    }
    let exponents: BTreeMap<usize, usize> = profile.even_degrees.clone();
    let g = if profile.odd_total() == 0 {
        Cofactor::EmptyProduct(p.terms().map(|(_, c)| c.clone()).sum())
    } else {
        Cofactor::Poly(GradedPolynomial::from_terms(
            p.terms().map(|(m, c)| (c.clone(), strip_even(m).expect("odd leaves remain"))),
        ))
    };
    let out = XPrefix { exponents, g };
    if !is_identity(&(p.clone() - out.recombine()), f)? {
        return Err(Error::CertificateFailed("p - x^α g is not an identity".into()));
    }
    Ok(out)
}

fn odd_only(g: &GradedPolynomial) -> Result<()> {
    if g.has_even_variables() {
        return Err(Error::EvenVariablesPresent);
    }
    Ok(())
}

fn odd_multidegree(g: &GradedPolynomial) -> Result<BTreeMap<usize, usize>> {
    let profile = g.multidegree().ok_or(Error::NotMultihomogeneous)?;
    Ok(profile.odd_degrees)
}

/// Solves `target ≡ Σ c_i rows_i` modulo identities in the evaluation
/// coordinates. Returns `None` when `target` is not in the span.
fn solve_mod_identities(
    rows: Vec<GradedPolynomial>,
    target: &GradedPolynomial,
    f: &BilinearForm,
) -> Result<(Option<Vec<Rational>>, usize)> {
    let space = EvalSpace::for_polys(rows.iter().chain([target]), f)?;
    let mat = EvaluationMatrix::build_in(rows, space)?;
    let rank = mat.rank();
    let Some(coords) = mat.project(target)? else {
        return Ok((None, rank));
    };
    Ok((solve_combination(&mat.entries, &coords), rank))
}

/// Expresses an odd-variable polynomial in the doubly standard tableau basis
/// (0-tableaux for odd `g`), modulo the identities of `B_m`.
pub fn straighten(g: &GradedPolynomial, f: &BilinearForm) -> Result<Vec<(Rational, DoubleTableau)>> {
    odd_only(g)?;
    let degrees = odd_multidegree(g)?;
    if g.is_zero() {
        return Ok(Vec::new());
    }
    let zero = match g.parity()? {
        Parity::Even => false,
        Parity::Odd => true,
        Parity::Mixed => return Err(Error::MixedParity),
    };
    let tabs = doubly_standard_tableaux(&degrees, f.dim(), zero);
    let rows: Vec<GradedPolynomial> = tabs.iter().map(tableau_polynomial).collect();
    let (sol, rank) = solve_mod_identities(rows.clone(), g, f)?;
    if rank != tabs.len() {
        return Err(Error::BasisViolated(format!(
            "{} doubly standard tableaux of multidegree {degrees:?} have rank {rank}",
            tabs.len()
        )));
    }
    let sol = sol.ok_or_else(|| Error::BasisViolated(format!("polynomial is outside the span of {} tableaux", tabs.len())))?;
    let out: Vec<(Rational, DoubleTableau)> = sol.into_iter().zip(tabs).filter(|(c, _)| !c.is_zero()).collect();
    let combo = out
        .iter()
        .fold(GradedPolynomial::zero(), |acc, (c, t)| acc + tableau_polynomial(t).scale(c));
    if !is_identity(&(g.clone() - combo), f)? {
        return Err(Error::CertificateFailed("g - Σ c_i T_i is not an identity".into()));
    }
    Ok(out)
}

/// `g ≡ (T_m)^k h` or `g ≡ (T_m)^k T_m^0 h` with `h` free of `y_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantDecomposition {
    pub k: usize,
    pub uses_t0: bool,
    pub h: Cofactor,
}

impl InvariantDecomposition {
    pub fn prefix(&self, m: usize) -> Option<GradedPolynomial> {
        let mut factors = vec![tableau_polynomial(&make_tn(m)); self.k];
        if self.uses_t0 {
            factors.push(tableau_polynomial(&make_tn0(m)));
        }
        left_normed(&factors)
    }

    pub fn recombine(&self, m: usize) -> Option<GradedPolynomial> {
        self.h.times_prefix(self.prefix(m).as_ref())
    }
}

/// Decomposes a polynomial in `y_1..y_m` that is invariant under
/// `y_1 ↦ y_1 + Σ_{i>=2} λ_i y_i`.
pub fn decompose_invariant(g: &GradedPolynomial, f: &BilinearForm) -> Result<InvariantDecomposition> {
    let m = f.dim();
    odd_only(g)?;
    let degrees = odd_multidegree(g)?;
    let parity = g.parity()?;
    if let Some((&i, _)) = degrees.iter().find(|(&i, _)| i > m) {
        return Err(Error::InvarianceFailed(format!("y{i} is outside y1..y{m}")));
    }
    for i in 2..=m {
        if !transvection_invariant(g, 1, i, f)? {
            return Err(Error::InvarianceFailed(format!("g is not invariant under y1 -> y1 + λ y{i}")));
        }
    }
    let d1 = degrees.get(&1).copied().unwrap_or(0);
    let (k, uses_t0) = match parity {
        Parity::Even if d1 % 2 == 1 => {
            return Err(Error::InvarianceFailed("even g with odd degree in y1".into()));
        }
        Parity::Even => (d1 / 2, false),
        Parity::Odd => (d1 / 2, d1 % 2 == 1),
        Parity::Mixed => return Err(Error::MixedParity),
    };
    let mut residual: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 1..=m {
        let used = 2 * k + if uses_t0 { usize::from(i > 1) * 2 + usize::from(i == 1) } else { 0 };
        let have = degrees.get(&i).copied().unwrap_or(0);
        let left = have
            .checked_sub(used)
            .ok_or_else(|| Error::CertificateFailed(format!("y{i} has degree {have}, the prefix needs {used}")))?;
        if left > 0 {
            residual.insert(i, left);
        }
    }
    debug_assert!(!residual.contains_key(&1));
    let out = InvariantDecomposition { k, uses_t0, h: Cofactor::unit() };
    let prefix = out.prefix(m);
    let h = match prefix {
        None => Cofactor::Poly(g.clone()),
        Some(prefix) if residual.is_empty() => {
            let (sol, _) = solve_mod_identities(vec![prefix], g, f)?;
            let c = sol
                .and_then(|s| s.into_iter().next())
                .ok_or_else(|| Error::CertificateFailed("g is not a multiple of the prefix".into()))?;
            Cofactor::EmptyProduct(c)
        }
        Some(prefix) => {
            let h_odd = parity == Parity::Odd && !uses_t0;
            let tabs = doubly_standard_tableaux(&residual, m, h_odd);
            let polys: Vec<GradedPolynomial> = tabs.iter().map(tableau_polynomial).collect();
            let rows = polys.iter().map(|t| prefix.product(t)).collect();
            let (sol, _) = solve_mod_identities(rows, g, f)?;
            let sol = sol.ok_or_else(|| Error::CertificateFailed("no h with g = prefix · h".into()))?;
            let h = polys
                .iter()
                .zip(&sol)
                .fold(GradedPolynomial::zero(), |acc, (t, c)| acc + t.scale(c));
            Cofactor::Poly(h)
        }
    };
    let out = InvariantDecomposition { h, ..out };
    let back = out.recombine(m).expect("nonempty");
    if !is_identity(&(g.clone() - back), f)? {
        return Err(Error::CertificateFailed("g - prefix · h is not an identity".into()));
    }
    Ok(out)
}

/// For even `h` of degree 1 in `y_j`, finds odd `h'` with `h ≡ h' · y_j`.
pub fn factor_linear_variable(h: &GradedPolynomial, j: usize, f: &BilinearForm) -> Result<GradedPolynomial> {
    odd_only(h)?;
    let mut degrees = odd_multidegree(h)?;
    if h.parity()? != Parity::Even {
        return Err(Error::ParityViolation("h must be even".into()));
    }
    if degrees.get(&j) != Some(&1) {
        return Err(Error::CertificateFailed(format!("h must have degree 1 in y{j}")));
    }
    degrees.remove(&j);
    let yj = GradedPolynomial::y(j);
    let polys: Vec<GradedPolynomial> = doubly_standard_tableaux(&degrees, f.dim(), true)
        .iter()
        .map(tableau_polynomial)
        .collect();
    let rows = polys.iter().map(|t| t.product(&yj)).collect();
    let (sol, _) = solve_mod_identities(rows, h, f)?;
    let sol = sol.ok_or_else(|| Error::CertificateFailed(format!("h is not of the form h' · y{j}")))?;
    let out = polys
        .iter()
        .zip(&sol)
        .fold(GradedPolynomial::zero(), |acc, (t, c)| acc + t.scale(c));
    if !is_identity(&(h.clone() - out.product(&yj)), f)? {
        return Err(Error::CertificateFailed("h - h' y_j is not an identity".into()));
    }
    Ok(out)
}

/// Ranks of the multilinear quotient in `y_1..y_n` and of its image under
/// `h ↦ h · y_{n+1}`. Equal ranks mean the map is injective.
pub fn cancellation_ranks(n: usize, f: &BilinearForm) -> Result<(usize, usize)> {
    let basis: Vec<GradedPolynomial> = crate::free_jordan::multilinear_basis(0, n)?
        .into_iter()
        .map(GradedPolynomial::from_monomial)
        .collect();
    let y = GradedPolynomial::y(n + 1);
    let image: Vec<GradedPolynomial> = basis.iter().map(|b| b.product(&y)).collect();
    let source = EvaluationMatrix::build(basis, f)?.rank();
    let target = EvaluationMatrix::build(image, f)?.rank();
    Ok((source, target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::tableaux::DoubleTableau;

    fn x(i: usize) -> GradedPolynomial {
        GradedPolynomial::x(i)
    }

    fn y(i: usize) -> GradedPolynomial {
        GradedPolynomial::y(i)
    }

    #[test]
    fn x_prefix_examples() {
        let f = BilinearForm::identity(2).unwrap();
        let r = reduce_x_prefix(&x(1).product(&y(1)).product(&y(2)), &f).unwrap();
        assert_eq!(r.exponents, BTreeMap::from([(1, 1)]));
        assert_eq!(r.g, Cofactor::Poly(y(1).product(&y(2))));

        let r = reduce_x_prefix(&x(1).product(&x(2)), &f).unwrap();
        assert_eq!(r.exponents, BTreeMap::from([(1, 1), (2, 1)]));
        assert_eq!(r.g, Cofactor::EmptyProduct(int(1)));

        let p = y(1).product(&x(1)).product(&y(2)).product(&x(2));
        let r = reduce_x_prefix(&p, &f).unwrap();
        assert_eq!(r.exponents, BTreeMap::from([(1, 1), (2, 1)]));
        assert_eq!(r.g, Cofactor::Poly(y(1).product(&y(2))));
        assert!(is_identity(&(p - r.recombine()), &f).unwrap());
    }

    #[test]
    fn straighten_examples() {
        let f = BilinearForm::identity(2).unwrap();
        let t2 = make_tn(2);
        assert_eq!(straighten(&tableau_polynomial(&t2), &f).unwrap(), vec![(int(1), t2.clone())]);
        assert_eq!(straighten(&y(1).product(&y(1)), &f).unwrap(), vec![(int(1), make_tn(1))]);

        let g = y(1).product(&y(2)).product(&y(1).product(&y(2)));
        let res = straighten(&g, &f).unwrap();
        let split = DoubleTableau::from_rows(&[(&[1], &[1]), (&[2], &[2])], false).unwrap();
        // (y1y2)^2 = (y1y1)(y2y2) - T_2 in B_2
        assert_eq!(res, vec![(int(-1), t2), (int(1), split)]);
    }

    #[test]
    fn straighten_rejects_bad_input() {
        let f = BilinearForm::identity(2).unwrap();
        assert_eq!(straighten(&x(1).product(&y(1)), &f), Err(Error::EvenVariablesPresent));
        assert_eq!(straighten(&(y(1) + y(1).product(&y(1))), &f), Err(Error::NotMultihomogeneous));
        assert_eq!(straighten(&GradedPolynomial::zero(), &f), Ok(vec![]));
    }

    #[test]
    fn decomposition_examples() {
        let f = BilinearForm::identity(2).unwrap();
        let t2 = tableau_polynomial(&make_tn(2));
        let d = decompose_invariant(&t2, &f).unwrap();
        assert_eq!(d, InvariantDecomposition { k: 1, uses_t0: false, h: Cofactor::EmptyProduct(int(1)) });

        let g = t2.product(&y(2).product(&y(2)));
        let d = decompose_invariant(&g, &f).unwrap();
        assert_eq!((d.k, d.uses_t0), (1, false));
        assert_eq!(d.h, Cofactor::Poly(y(2).product(&y(2))));

        let d = decompose_invariant(&tableau_polynomial(&make_tn0(2)), &f).unwrap();
        assert_eq!(d, InvariantDecomposition { k: 0, uses_t0: true, h: Cofactor::EmptyProduct(int(1)) });

        assert!(matches!(
            decompose_invariant(&y(1).product(&y(2)), &f),
            Err(Error::InvarianceFailed(_))
        ));
    }

    #[test]
    fn odd_decomposition_with_cofactor() {
        let f = BilinearForm::identity(3).unwrap();
        // T_3 · T_3^0 · (y2 y2) is invariant and odd
        let g = tableau_polynomial(&make_tn(3))
            .product(&tableau_polynomial(&make_tn0(3)))
            .product(&y(2).product(&y(2)));
        let d = decompose_invariant(&g, &f).unwrap();
        assert_eq!((d.k, d.uses_t0), (1, true));
        assert!(!d.h.is_empty_product());
    }

    #[test]
    fn factoring_a_linear_variable() {
        let f = BilinearForm::identity(2).unwrap();
        let h = tableau_polynomial(&make_tn(2));
        // T_2 has degree 2 in y1; use a multilinear even polynomial instead
        let g = y(1).product(&y(2)).product(&y(3).product(&y(4)));
        let hp = factor_linear_variable(&g, 3, &f).unwrap();
        assert!(is_identity(&(g - hp.product(&y(3))), &f).unwrap());
        assert!(factor_linear_variable(&h, 1, &f).is_err());
    }

    #[test]
    fn multiplication_by_a_fresh_variable_is_injective() {
        for m in [2, 3] {
            let f = BilinearForm::identity(m).unwrap();
            for n in 1..=3 {
                let (s, t) = cancellation_ranks(n, &f).unwrap();
                assert_eq!(s, t, "m={m} n={n}");
            }
        }
    }
}
