//! Double tableaux, 0-tableaux and their polynomial realizations.
//!
//! A double tableau `(p|q)` is realized as the left-normed product over its
//! rows of the determinants `det |y_{p_i} · y_{q_j}|`, each expanded by the
//! Leibniz formula with factors in row order. In a 0-tableau the first
//! `p`-entry is the symbol `0` and the first row is realized as
//! `Σ_σ sgn(σ) y_{q_σ(1)} (y_{p_2} y_{q_σ(2)}) ⋯`, times the remaining rows.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bm_model::BilinearForm;
use crate::free_jordan::{for_each_permutation, left_normed, GradedPolynomial, Variable};
use crate::identities::{is_identity, is_identity_any, sign};
use crate::rational::{self, Rational};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TableauRow {
    pub p: Vec<usize>,
    pub q: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTableau")]
pub struct DoubleTableau {
    zero: bool,
    rows: Vec<TableauRow>,
}

#[derive(Deserialize)]
struct RawTableau {
    zero: bool,
    rows: Vec<TableauRow>,
}

impl TryFrom<RawTableau> for DoubleTableau {
    type Error = Error;
    fn try_from(raw: RawTableau) -> Result<Self> {
        DoubleTableau::new(raw.rows, raw.zero)
    }
}

impl DoubleTableau {
    /// For a 0-tableau the first `p`-entry must be the reserved `0`.
    pub fn new(rows: Vec<TableauRow>, zero: bool) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidTableau("no rows".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.p.is_empty() || row.p.len() != row.q.len() {
                return Err(Error::InvalidTableau(format!("row {} has mismatched or empty sides", i + 1)));
            }
            if i > 0 && row.p.len() > rows[i - 1].p.len() {
                return Err(Error::InvalidTableau("row lengths must weakly decrease".into()));
            }
            for (j, &v) in row.p.iter().enumerate() {
                let reserved = zero && i == 0 && j == 0;
                if reserved != (v == 0) {
                    return Err(Error::InvalidTableau(if reserved {
                        "a 0-tableau must start with 0".into()
                    } else {
                        "entries must be positive".into()
                    }));
                }
            }
            if row.q.contains(&0) {
                return Err(Error::InvalidTableau("entries must be positive".into()));
            }
        }
        Ok(DoubleTableau { zero, rows })
    }

    /// Convenience constructor from `(p, q)` row pairs.
    pub fn from_rows(rows: &[(&[usize], &[usize])], zero: bool) -> Result<Self> {
        let rows = rows.iter().map(|(p, q)| TableauRow { p: p.to_vec(), q: q.to_vec() }).collect();
        Self::new(rows, zero)
    }

    pub fn rows(&self) -> &[TableauRow] {
        &self.rows
    }

    pub fn is_zero_tableau(&self) -> bool {
        self.zero
    }

    /// Number of occurrences of each positive entry, i.e. the multidegree
    /// of the realization.
    pub fn multidegree(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for row in &self.rows {
            for &v in row.p.iter().chain(&row.q).filter(|&&v| v > 0) {
                *out.entry(v).or_insert(0) += 1;
            }
        }
        out
    }

    pub fn to_single(&self) -> SingleTableau {
        SingleTableau {
            rows: self.rows.iter().flat_map(|r| [r.p.clone(), r.q.clone()]).collect(),
        }
    }

    /// Inverse of [`DoubleTableau::to_single`].
    pub fn from_single(a: &SingleTableau, zero: bool) -> Result<Self> {
        if !a.rows.len().is_multiple_of(2) {
            return Err(Error::InvalidTableau("odd number of rows".into()));
        }
        let rows = a
            .rows
            .chunks(2)
            .map(|c| TableauRow { p: c[0].clone(), q: c[1].clone() })
            .collect();
        Self::new(rows, zero)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("tableau serializes")
    }
}

impl fmt::Display for DoubleTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.rows.iter().flat_map(|r| r.p.iter().chain(&r.q)).any(|&v| v > 9);
        let sep = if wide { "," } else { "" };
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(sep);
        let parts: Vec<String> = self.rows.iter().map(|r| format!("{}|{}", join(&r.p), join(&r.q))).collect();
        write!(f, "({})", parts.join("; "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SingleTableau {
    pub rows: Vec<Vec<usize>>,
}

impl SingleTableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Self {
        SingleTableau { rows }
    }
}

/// Rows strictly increasing, columns weakly increasing, shape weakly
/// decreasing.
pub fn is_standard(a: &SingleTableau) -> bool {
    for (i, row) in a.rows.iter().enumerate() {
        if row.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
        if i > 0 {
            let above = &a.rows[i - 1];
            if row.len() > above.len() || row.iter().zip(above).any(|(b, t)| b < t) {
                return false;
            }
        }
    }
    true
}

/// The reserved 0 is the smallest entry, so it needs no special casing.
pub fn is_doubly_standard(t: &DoubleTableau) -> bool {
    is_standard(&t.to_single())
}

fn pair(a: usize, b: usize) -> GradedPolynomial {
    GradedPolynomial::y(a).product(&GradedPolynomial::y(b))
}

fn determinant(p: &[usize], q: &[usize]) -> GradedPolynomial {
    let mut out = GradedPolynomial::zero();
    let mut perm: Vec<usize> = (0..q.len()).collect();
    for_each_permutation(&mut perm, 0, &mut |perm| {
        let factors: Vec<GradedPolynomial> = p.iter().zip(perm).map(|(&a, &j)| pair(a, q[j])).collect();
        let term = left_normed(&factors).expect("nonempty row");
        out = std::mem::take(&mut out) + term.scale(&rational::int(sign(perm)));
    });
    out
}

fn zero_row(p: &[usize], q: &[usize]) -> GradedPolynomial {
    crate::identities::alternating_polynomial(q, &p[1..])
}

pub fn tableau_polynomial(t: &DoubleTableau) -> GradedPolynomial {
    let dets: Vec<GradedPolynomial> = t
        .rows
        .iter()
        .enumerate()
        .filter(|(i, _)| !(t.zero && *i == 0))
        .map(|(_, r)| determinant(&r.p, &r.q))
        .collect();
    let rest = left_normed(&dets);
    if t.zero {
        let head = zero_row(&t.rows[0].p, &t.rows[0].q);
        match rest {
            Some(r) => head.product(&r),
            None => head,
        }
    } else {
        rest.expect("at least one row")
    }
}

/// `(12…n|12…n)`.
pub fn make_tn(n: usize) -> DoubleTableau {
    assert!(n >= 1);
    let r: Vec<usize> = (1..=n).collect();
    DoubleTableau::new(vec![TableauRow { p: r.clone(), q: r }], false).expect("valid")
}

/// `(02…n|12…n)`.
pub fn make_tn0(n: usize) -> DoubleTableau {
    assert!(n >= 1);
    let mut p: Vec<usize> = (1..=n).collect();
    p[0] = 0;
    DoubleTableau::new(vec![TableauRow { p, q: (1..=n).collect() }], true).expect("valid")
}

/// `(012…n-1|12…n)`.
pub fn make_sn(n: usize) -> DoubleTableau {
    assert!(n >= 1);
    DoubleTableau::new(vec![TableauRow { p: (0..n).collect(), q: (1..=n).collect() }], true).expect("valid")
}

/// `(h_2, …, h_n)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HStats {
    pub values: Vec<usize>,
}

impl HStats {
    /// `h_i` for `2 <= i <= n`.
    pub fn get(&self, i: usize) -> usize {
        self.values[i - 2]
    }
}

/// Length `k` of the initial run `1, 2, …, k` of a row.
fn initial_run(row: &[usize]) -> usize {
    row.iter().enumerate().take_while(|&(i, &v)| v == i + 1).count()
}

fn check_prefix_form(a: &SingleTableau) -> Result<()> {
    if !is_standard(a) {
        return Err(Error::NotPrefixForm("tableau is not standard".into()));
    }
    if a.rows.iter().flatten().any(|&v| v == 0) {
        return Err(Error::NotPrefixForm("tableau contains the 0 symbol".into()));
    }
    Ok(())
}

/// `h_i(A)` for `i = 2..=n`: the number of rows that begin `1, 2, …, i-1`
/// and do not continue with `i`. With `n` variables, a row whose run reaches
/// `n` cannot move under `y_1 ↦ y_1 + Σ λ_i y_i` and is not counted.
pub fn h_stats(a: &SingleTableau, n: usize) -> Result<HStats> {
    check_prefix_form(a)?;
    let mut values = vec![0; n.saturating_sub(1)];
    for row in &a.rows {
        let k = initial_run(row);
        if k >= 1 && k < n {
            values[k - 1] += 1;
        }
    }
    Ok(HStats { values })
}

/// `F(A)`: every row counted by `h_i` has its leading 1 replaced by `i`, and
/// rows are re-sorted.
pub fn f_map(a: &SingleTableau, n: usize) -> Result<SingleTableau> {
    check_prefix_form(a)?;
    let rows = a
        .rows
        .iter()
        .map(|row| {
            let k = initial_run(row);
            let mut r = row.clone();
            if k >= 1 && k < n {
                r[0] = k + 1;
                r.sort_unstable();
            }
            r
        })
        .collect();
    let out = SingleTableau { rows };
    if !is_standard(&out) {
        return Err(Error::NotPrefixForm("F(A) is not standard".into()));
    }
    Ok(out)
}

/// `F(T)` for a double tableau, through its single tableau.
pub fn f_image(t: &DoubleTableau, n: usize) -> Result<DoubleTableau> {
    DoubleTableau::from_single(&f_map(&t.to_single(), n)?, t.zero)
}

/// All doubly standard tableaux (or 0-tableaux) of the given multidegree
/// with rows of length at most `max_row`, in a fixed order.
pub fn doubly_standard_tableaux(
    multidegree: &BTreeMap<usize, usize>,
    max_row: usize,
    zero: bool,
) -> Vec<DoubleTableau> {
    let values: Vec<usize> = multidegree.iter().filter(|(_, &d)| d > 0).map(|(&v, _)| v).collect();
    let mut counts: Vec<usize> = values.iter().map(|v| multidegree[v]).collect();
    let total: usize = counts.iter().sum();
    let mut out = Vec::new();
    if total == 0 || max_row == 0 {
        return out;
    }
    let mut search = Search { values: &values, max_row, zero, out: &mut out };
    search.rows(&mut Vec::new(), &mut counts, total);
    out
}

struct Search<'a> {
    values: &'a [usize],
    max_row: usize,
    zero: bool,
    out: &'a mut Vec<DoubleTableau>,
}

impl Search<'_> {
    fn rows(&mut self, rows: &mut Vec<Vec<usize>>, counts: &mut [usize], left: usize) {
        let t = rows.len();
        if left == 0 {
            if t.is_multiple_of(2) && t > 0 {
                let single = SingleTableau { rows: rows.clone() };
                self.out.push(DoubleTableau::from_single(&single, self.zero).expect("valid shape"));
            }
            return;
        }
        let lengths: Vec<usize> = if t % 2 == 1 {
            vec![rows[t - 1].len()]
        } else {
            let cap = rows.last().map_or(self.max_row, Vec::len);
            // the pair of rows consumes 2L entries, or 2L - 1 when it carries the 0
            let reserved = usize::from(self.zero && t == 0);
            (1..=cap).rev().filter(|&l| 2 * l - reserved <= left).collect()
        };
        for len in lengths {
            let mut row = Vec::with_capacity(len);
            if self.zero && t == 0 {
                row.push(0);
            }
            self.fill(rows, &mut row, len, counts, left);
        }
    }

    fn fill(&mut self, rows: &mut Vec<Vec<usize>>, row: &mut Vec<usize>, len: usize, counts: &mut [usize], left: usize) {
        if row.len() == len {
            let used = row.iter().filter(|&&v| v > 0).count();
            rows.push(row.clone());
            self.rows(rows, counts, left - used);
            rows.pop();
            return;
        }
        let c = row.len();
        let above = rows.last().and_then(|r| r.get(c)).copied().unwrap_or(0);
        let after = row.last().map_or(0, |&v| v + 1);
        let lo = above.max(after);
        for i in 0..self.values.len() {
            let v = self.values[i];
            if v < lo || counts[i] == 0 {
                continue;
            }
            counts[i] -= 1;
            row.push(v);
            self.fill(rows, row, len, counts, left);
            row.pop();
            counts[i] += 1;
        }
    }
}

/// Result of the leading-term analysis of `Σ c_j T_j` under
/// `y_1 ↦ y_1 + Σ_{i>=2} λ_i y_i`.
#[derive(Debug, Clone)]
pub struct LeadingComponent {
    /// `P_h` for every `h = (h_2, …, h_n)` that occurs, with the `λ^h`
    /// factor divided out.
    pub expansion: BTreeMap<Vec<usize>, GradedPolynomial>,
    pub h_max: Vec<usize>,
    /// `(ε_j c_j, F(T_j))` for the tableaux of maximal h-vector.
    pub leading: Vec<(Rational, DoubleTableau)>,
    /// The computed signs `ε_j`, aligned with `leading`.
    pub signs: Vec<i64>,
}

/// Expands `p = Σ c_j T_j` under `y_1 ↦ y_1 + Σ λ_i y_i` (`λ = (λ_2, …, λ_n)`,
/// all nonzero), groups by λ-multidegree and checks that the top component
/// is `Σ ε_j c_j F(T_j)` modulo identities, with computed signs
/// `ε_j = ±1` and pairwise distinct `F(T_j)`. Any failure is reported as
/// `LeadingTermMismatch`.
pub fn leading_component(
    p: &[(Rational, DoubleTableau)],
    lambda: &[Rational],
    f: &BilinearForm,
) -> Result<LeadingComponent> {
    let n = lambda.len() + 1;
    if lambda.iter().any(Zero::is_zero) {
        return Err(Error::InvalidTableau("λ values must be nonzero".into()));
    }
    let distinct: BTreeSet<&DoubleTableau> = p.iter().map(|(_, t)| t).collect();
    if distinct.len() != p.len() {
        return Err(Error::InvalidTableau("tableaux must be distinct".into()));
    }
    for (_, t) in p {
        if t.zero || !is_doubly_standard(t) {
            return Err(Error::InvalidTableau(format!("{t} is not an even doubly standard tableau")));
        }
    }
    let hs: Vec<Vec<usize>> = p
        .iter()
        .map(|(_, t)| h_stats(&t.to_single(), n).map(|h| h.values))
        .collect::<Result<_>>()?;
    let h_max = hs.iter().max().cloned().unwrap_or_default();

    let combined = p
        .iter()
        .fold(GradedPolynomial::zero(), |acc, (c, t)| acc + tableau_polynomial(t).scale(c));
    let expansion = lambda_expansion(&combined, lambda)?;
    for (h, part) in expansion.range(h_max.clone()..) {
        if *h != h_max && !is_identity(part, f)? {
            return Err(Error::LeadingTermMismatch(format!("component {h:?} above the maximum {h_max:?} is nonzero")));
        }
    }

    let mut leading = Vec::new();
    let mut signs = Vec::new();
    for ((c, t), h) in p.iter().zip(&hs) {
        if *h != h_max {
            continue;
        }
        let image = f_image(t, n)?;
        let own = lambda_expansion(&tableau_polynomial(t), lambda)?
            .remove(&h_max)
            .unwrap_or_default();
        let fp = tableau_polynomial(&image);
        let eps = if is_identity(&(own.clone() - fp.clone()), f)? {
            1
        } else if is_identity(&(own + fp), f)? {
            -1
        } else {
            return Err(Error::LeadingTermMismatch(format!("top component of {t} is not ±F(T) = ±{image}")));
        };
        signs.push(eps);
        leading.push((c * rational::int(eps), image));
    }
    let images: BTreeSet<&DoubleTableau> = leading.iter().map(|(_, t)| t).collect();
    if images.len() != leading.len() {
        return Err(Error::LeadingTermMismatch("F-images are not pairwise distinct".into()));
    }
    let predicted = leading
        .iter()
        .fold(GradedPolynomial::zero(), |acc, (c, t)| acc + tableau_polynomial(t).scale(c));
    let top = expansion.get(&h_max).cloned().unwrap_or_default();
    if !is_identity_any(&(top - predicted), f)? {
        return Err(Error::LeadingTermMismatch("top component differs from Σ ε_j c_j F(T_j)".into()));
    }
    Ok(LeadingComponent { expansion, h_max, leading, signs })
}

/// Components of `g(y_1 + Σ λ_i y_i, y_2, …)` indexed by the λ-multidegree,
/// each divided by its `λ^h`. The λ-multidegree of a term is read off its
/// change in multidegree, so no symbolic λ is needed.
fn lambda_expansion(g: &GradedPolynomial, lambda: &[Rational]) -> Result<BTreeMap<Vec<usize>, GradedPolynomial>> {
    let n = lambda.len() + 1;
    let image = lambda
        .iter()
        .enumerate()
        .fold(GradedPolynomial::y(1), |acc, (i, l)| acc + GradedPolynomial::y(i + 2).scale(l));
    let sub = g.substitute(&BTreeMap::from([(Variable::y(1), image)]))?;
    let base = g.multidegree().ok_or(Error::NotMultihomogeneous)?;
    let mut out = BTreeMap::new();
    for part in sub.multihomogeneous_components() {
        let prof = part.multidegree().expect("component");
        let h: Vec<usize> = (2..=n)
            .map(|i| prof.degree_of(Variable::y(i)) - base.degree_of(Variable::y(i)))
            .collect();
        let scale = h
            .iter()
            .zip(lambda)
            .fold(Rational::one(), |acc, (&e, l)| acc * num_traits::pow(l.clone(), e));
        out.insert(h, part.scale(&scale.recip()));
    }
    Ok(out)
}

/// `(δ_1, …, δ_m; k_0, …, k_m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawExponents")]
pub struct ExponentVector {
    deltas: Vec<u8>,
    ks: Vec<usize>,
}

#[derive(Deserialize)]
struct RawExponents {
    deltas: Vec<u8>,
    ks: Vec<usize>,
}

impl TryFrom<RawExponents> for ExponentVector {
    type Error = Error;
    fn try_from(raw: RawExponents) -> Result<Self> {
        ExponentVector::new(raw.deltas, raw.ks)
    }
}

impl ExponentVector {
    pub fn new(deltas: Vec<u8>, ks: Vec<usize>) -> Result<Self> {
        if deltas.is_empty() {
            return Err(Error::InvalidExponentVector("m must be at least 1".into()));
        }
        if ks.len() != deltas.len() + 1 {
            return Err(Error::InvalidExponentVector(format!(
                "expected {} k-values for {} deltas, got {}",
                deltas.len() + 1,
                deltas.len(),
                ks.len()
            )));
        }
        if deltas.iter().any(|&d| d > 1) {
            return Err(Error::InvalidExponentVector("deltas must be 0 or 1".into()));
        }
        if deltas.iter().filter(|&&d| d == 1).count() > 1 {
            return Err(Error::InvalidExponentVector("at most one delta may be 1".into()));
        }
        Ok(ExponentVector { deltas, ks })
    }

    pub fn m(&self) -> usize {
        self.deltas.len()
    }

    pub fn deltas(&self) -> &[u8] {
        &self.deltas
    }

    pub fn ks(&self) -> &[usize] {
        &self.ks
    }

    pub fn is_zero(&self) -> bool {
        self.deltas.iter().all(|&d| d == 0) && self.ks.iter().all(|&k| k == 0)
    }

    /// Coordinates in `ℕ^{2m+1}`.
    pub fn to_nat(&self) -> Vec<usize> {
        self.deltas.iter().map(|&d| d as usize).chain(self.ks.iter().copied()).collect()
    }

    pub fn from_nat(v: &[usize], m: usize) -> Result<Self> {
        if v.len() != 2 * m + 1 {
            return Err(Error::LengthMismatch(v.len(), 2 * m + 1));
        }
        let deltas = v[..m]
            .iter()
            .map(|&d| u8::try_from(d).map_err(|_| Error::InvalidExponentVector("deltas must be 0 or 1".into())))
            .collect::<Result<_>>()?;
        Self::new(deltas, v[m..].to_vec())
    }

    /// Degree of the generated polynomial.
    pub fn degree(&self) -> usize {
        let s: usize = self
            .deltas
            .iter()
            .enumerate()
            .map(|(i, &d)| d as usize * (2 * (i + 1) - 1))
            .sum();
        let t: usize = self.ks[1..].iter().enumerate().map(|(i, &k)| 2 * (i + 1) * k).sum();
        self.ks[0] + s + t
    }

    /// The factors `x_1^{k_0} S_m^{δ_m} ⋯ S_1^{δ_1} T_m^{k_m} ⋯ T_1^{k_1}` in
    /// order.
    pub fn factors(&self) -> Vec<GradedPolynomial> {
        let m = self.m();
        let mut out = vec![GradedPolynomial::x(1); self.ks[0]];
        for l in (1..=m).rev() {
            if self.deltas[l - 1] == 1 {
                out.push(tableau_polynomial(&make_sn(l)));
            }
        }
        for l in (1..=m).rev() {
            if self.ks[l] > 0 {
                let t = tableau_polynomial(&make_tn(l));
                out.extend(std::iter::repeat_n(t, self.ks[l]));
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializes")
    }
}

/// The left-normed product `x_1^{k_0} (S_m)^{δ_m} ⋯ (S_1)^{δ_1} (T_m)^{k_m} ⋯ (T_1)^{k_1}`.
pub fn hwv_generator(e: &ExponentVector) -> Result<GradedPolynomial> {
    left_normed(&e.factors())
        .ok_or_else(|| Error::InvalidExponentVector("all exponents are zero (empty product)".into()))
}

/// `g(y_m, …, y_1)`: `y_i ↦ y_{m+1-i}` for `i <= m`.
pub fn reverse_variables(g: &GradedPolynomial, m: usize) -> GradedPolynomial {
    g.rename(&|v| {
        if v.is_odd() && v.index <= m {
            Variable::y(m + 1 - v.index)
        } else {
            v
        }
    })
}

/// Whether `g` is invariant modulo identities under `y_target ↦ y_target + λ y_source`
/// for all λ. Sampled at `λ = 1, …, D + 1` with `D = deg_{y_target} g`;
/// each difference is checked component by component.
pub fn transvection_invariant(g: &GradedPolynomial, target: usize, source: usize, f: &BilinearForm) -> Result<bool> {
    let d = g.degree_in(Variable::y(target));
    if d == 0 {
        return Ok(true);
    }
    for lambda in 1..=(d as i64 + 1) {
        let image = GradedPolynomial::y(target) + GradedPolynomial::y(source).scale(&rational::int(lambda));
        let moved = g.substitute(&BTreeMap::from([(Variable::y(target), image)]))?;
        if !is_identity_any(&(moved - g.clone()), f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Invariance under `y_j ↦ y_j + Σ_{i<j} λ_ij y_i`, checked on the
/// elementary transvections `y_j ↦ y_j + λ y_i`, which generate the
/// unitriangular group.
pub fn is_unitriangular_invariant(g: &GradedPolynomial, m: usize, f: &BilinearForm) -> Result<bool> {
    for j in 2..=m {
        for i in 1..j {
            if !transvection_invariant(g, j, i, f)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
