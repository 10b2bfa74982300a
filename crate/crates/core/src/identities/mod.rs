//! Graded identities of `B_m`: testing, the identity basis, dimensions of
//! `P_{k,n}(B_m)`, and reduction into the doubly standard tableau basis.

mod eval;
mod reduce;
mod sample;

use std::collections::BTreeMap;

use serde_json::json;

use crate::bm_model::BilinearForm;
use crate::free_jordan::{
    for_each_permutation, left_normed, multilinear_basis, multilinearize, tree_count, GradedPolynomial, Variable,
};
use crate::rational;
use crate::{Error, Result};

pub use eval::{Coord, EvalColumn, EvalSpace, EvaluationMatrix, Key, Substitution};
pub use reduce::{
    cancellation_ranks, decompose_invariant, factor_linear_variable, reduce_x_prefix, straighten, InvariantDecomposition,
    XPrefix,
};
pub use sample::{random_multidegree, random_odd_polynomial};

/// Default bound on evaluation-matrix entries.
pub const DEFAULT_CAP: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub holds: bool,
    /// A basis substitution with nonzero value, in the variables of the
    /// polynomial that was actually checked.
    pub witness: Option<Substitution>,
}

/// Checks a multilinear polynomial on every substitution `x_i ↦ 1`,
/// `y_i ↦ e_j`, returning the first nonzero one as witness.
pub fn check_multilinear_identity(p: &GradedPolynomial, f: &BilinearForm) -> Result<IdentityCheck> {
    if !p.is_multilinear() {
        return Err(Error::NotMultilinear);
    }
    let space = EvalSpace::for_polys([p], f)?;
    let coords = space.coordinates(p)?;
    let witness = coords.keys().next().map(|&(code, _)| {
        let mut images: BTreeMap<Variable, usize> = p
            .variables()
            .into_iter()
            .filter(|v| !v.is_odd())
            .map(|v| (v, 0))
            .collect();
        for (v, counts) in space.decode(code) {
            let j = counts.iter().position(|&c| c == 1).expect("multilinear code") + 1;
            images.insert(v, j);
        }
        Substitution { images }
    });
    Ok(IdentityCheck { holds: witness.is_none(), witness })
}

pub fn is_multilinear_identity(p: &GradedPolynomial, f: &BilinearForm) -> Result<bool> {
    Ok(check_multilinear_identity(p, f)?.holds)
}

/// Identity test for a multihomogeneous polynomial.
///
/// Equivalent to `is_multilinear_identity(multilinearize(p))` in
/// characteristic zero; computed on the evaluation coordinates of `p`
/// directly, which avoids the `∏ d_i!` blow-up of the linearization.
pub fn is_identity(p: &GradedPolynomial, f: &BilinearForm) -> Result<bool> {
    if !p.is_multihomogeneous() {
        return Err(Error::NotMultihomogeneous);
    }
    let space = EvalSpace::for_polys([p], f)?;
    space.vanishes(p)
}

/// Identity test that first splits `p` into multihomogeneous components.
pub fn is_identity_any(p: &GradedPolynomial, f: &BilinearForm) -> Result<bool> {
    for part in p.multihomogeneous_components() {
        if !is_identity(&part, f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Identity check through the literal linearization, reporting a witness on
/// the linearized variables.
pub fn check_identity(p: &GradedPolynomial, f: &BilinearForm) -> Result<IdentityCheck> {
    let lin = multilinearize(p)?;
    check_multilinear_identity(&lin.poly, f)
}

/// `(x_1 z_1) z_2 - x_1 (z_1 z_2)` with `z_1 ∈ {x_1, y_1}`, `z_2 ∈ {x_2, y_2}`.
pub fn associator_identity(z1_odd: bool, z2_odd: bool) -> GradedPolynomial {
    let x1 = GradedPolynomial::x(1);
    let z1 = if z1_odd { GradedPolynomial::y(1) } else { GradedPolynomial::x(1) };
    let z2 = if z2_odd { GradedPolynomial::y(2) } else { GradedPolynomial::x(2) };
    x1.product(&z1).product(&z2) - x1.product(&z1.product(&z2))
}

/// `Σ_σ sgn(σ) y_{σ(1)} (a_1 y_{σ(2)}) ⋯ (a_r y_{σ(r+1)})`, left-normed, with
/// `σ` permuting `permuted` and the partners `a_i` fixed.
pub fn alternating_polynomial(permuted: &[usize], partners: &[usize]) -> GradedPolynomial {
    assert_eq!(permuted.len(), partners.len() + 1);
    let mut out = GradedPolynomial::zero();
    let mut perm: Vec<usize> = (0..permuted.len()).collect();
    for_each_permutation(&mut perm, 0, &mut |perm| {
        let mut factors = vec![GradedPolynomial::y(permuted[perm[0]])];
        for (a, &i) in partners.iter().zip(&perm[1..]) {
            factors.push(GradedPolynomial::y(*a).product(&GradedPolynomial::y(permuted[i])));
        }
        let term = left_normed(&factors).expect("nonempty");
        out = std::mem::take(&mut out) + term.scale(&rational::int(sign(perm)));
    });
    out
}

/// The alternating identity of `B_m`: `y_1..y_{m+1}` permuted against the
/// fixed partners `y_{m+2}..y_{2m+1}`.
pub fn alternating_identity(m: usize) -> GradedPolynomial {
    let permuted: Vec<usize> = (1..=m + 1).collect();
    let partners: Vec<usize> = (m + 2..=2 * m + 1).collect();
    alternating_polynomial(&permuted, &partners)
}

pub(crate) fn sign(perm: &[usize]) -> i64 {
    let mut seen = vec![false; perm.len()];
    let mut s = 1;
    for i in 0..perm.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        if len % 2 == 0 {
            s = -s;
        }
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisIdentityReport {
    pub name: String,
    pub polynomial: GradedPolynomial,
    pub check: IdentityCheck,
}

impl BasisIdentityReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "identity": self.name,
            "holds": self.check.holds,
            "witness": self.check.witness.as_ref().map(Substitution::to_json),
        })
    }
}

/// The five generators of the identities of `B_m`, in report order.
pub fn basis_identities(m: usize) -> Vec<(String, GradedPolynomial)> {
    let mut out = Vec::new();
    for z1 in [false, true] {
        for z2 in [false, true] {
            let n1 = if z1 { "y1" } else { "x1" };
            let n2 = if z2 { "y2" } else { "x2" };
            out.push((format!("(x1*{n1})*{n2} - x1*({n1}*{n2})"), associator_identity(z1, z2)));
        }
    }
    out.push((format!("alternating(m={m})"), alternating_identity(m)));
    out
}

/// Checks the identity basis against the form `f` (of dimension `m`).
pub fn verify_basis_identities(f: &BilinearForm) -> Result<Vec<BasisIdentityReport>> {
    basis_identities(f.dim())
        .into_iter()
        .map(|(name, p)| {
            let check = check_identity(&p, f)?;
            Ok(BasisIdentityReport { name, polynomial: p, check })
        })
        .collect()
}

/// `(2(k+n) - 3)!! · m^n`, the entry budget of the `P_{k,n}` matrix.
pub fn pkn_cost(k: usize, n: usize, m: usize) -> u128 {
    let pow = (0..n).fold(1u128, |acc, _| acc.saturating_mul(m as u128));
    tree_count(k + n).saturating_mul(pow)
}

/// `dim P_{k,n}(B_m)`: the rank of the evaluation matrix of all multilinear
/// monomials in `x_1..x_k, y_1..y_n`.
pub fn dim_pkn(k: usize, n: usize, f: &BilinearForm, cap: u128) -> Result<usize> {
    if k + n == 0 {
        return Err(Error::EmptyVariableSet);
    }
    let needed = pkn_cost(k, n, f.dim());
    if needed > cap {
        return Err(Error::ResourceCap { needed, cap });
    }
    let rows = multilinear_basis(k, n)?
        .into_iter()
        .map(GradedPolynomial::from_monomial)
        .collect();
    Ok(EvaluationMatrix::build(rows, f)?.rank())
}
