//! Exact evaluation of polynomials in `B_m` on all basis substitutions.
//!
//! Even variables go to the unit and each odd variable `y_i` to a generic
//! vector `Σ_j t_ij e_j`. The value of a multihomogeneous polynomial is then
//! an `(m + 1)`-component vector of polynomials in the `t_ij`; its
//! coefficients are the *evaluation coordinates*. For multilinear input the
//! coefficient of `t_{1 j_1} ⋯ t_{n j_n}` is exactly the value at the
//! substitution `y_s ↦ e_{j_s}`. In general it is the value of the complete
//! linearization at the matching basis tuple divided by `∏ c_ij!`, so both
//! describe the same zero set, rank and linear relations.
//!
//! Arithmetic runs on integers: coefficients are scaled by a common
//! denominator and the Gram diagonal by `L`, which rescales every monomial of
//! a fixed odd degree `o` uniformly by `L^{⌊o/2⌋}`. Machine `i128` is tried
//! first with a `BigInt` fallback on overflow.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::bm_model::BilinearForm;
use crate::free_jordan::{GradedPolynomial, Kind, Monomial, Variable};
use crate::linalg;
use crate::rational::Rational;
use crate::{Error, Result};

/// Output coordinate: 0 for the scalar part, `j` for `e_j`.
pub type Coord = u8;

/// `(encoded t-monomial, output coordinate)`.
pub type Key = (u128, Coord);

trait Coef: Clone + Zero {
    fn from_big(b: &BigInt) -> Option<Self>;
    fn mul_c(&self, o: &Self) -> Option<Self>;
    fn add_c(&self, o: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Coef for i128 {
    fn from_big(b: &BigInt) -> Option<Self> {
        b.to_i128()
    }
    fn mul_c(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn add_c(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coef for BigInt {
    fn from_big(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
    fn mul_c(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn add_c(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// The odd variables being evaluated and the encoding of `t`-monomials.
#[derive(Debug, Clone)]
pub struct EvalSpace {
    m: usize,
    /// `L · d_j`
    diag: Vec<BigInt>,
    /// common denominator `L` of the Gram diagonal
    diag_scale: BigInt,
    /// odd variable index -> slot
    slots: BTreeMap<usize, usize>,
    /// per slot, the largest degree the encoding must hold
    slot_degree: Vec<usize>,
    /// weight of `t_{slot, j}` in the mixed-radix code, at `slot * m + (j - 1)`
    radix: Vec<u128>,
}

impl EvalSpace {
    /// A space able to hold every polynomial in `polys`.
    pub fn for_polys<'a>(polys: impl IntoIterator<Item = &'a GradedPolynomial>, f: &BilinearForm) -> Result<Self> {
        let mut degrees: BTreeMap<usize, usize> = BTreeMap::new();
        for p in polys {
            for (m, _) in p.terms() {
                let mut local: BTreeMap<usize, usize> = BTreeMap::new();
                for v in m.leaves().into_iter().filter(Variable::is_odd) {
                    *local.entry(v.index).or_insert(0) += 1;
                }
                for (i, d) in local {
                    let e = degrees.entry(i).or_insert(0);
                    *e = (*e).max(d);
                }
            }
        }
        Self::new(degrees, f)
    }

    fn new(degrees: BTreeMap<usize, usize>, f: &BilinearForm) -> Result<Self> {
        let m = f.dim();
        let diag_scale = f.diag().iter().fold(BigInt::one(), |acc, d| acc.lcm(d.denom()));
        let diag = f.diag().iter().map(|d| d.numer() * (&diag_scale / d.denom())).collect();
        let mut radix = Vec::with_capacity(degrees.len() * m);
        let mut weight: u128 = 1;
        for &d in degrees.values() {
            for _ in 0..m {
                radix.push(weight);
                weight = weight
                    .checked_mul(d as u128 + 1)
                    .ok_or(Error::ResourceCap { needed: u128::MAX, cap: u128::MAX })?;
            }
        }
        Ok(EvalSpace {
            m,
            diag,
            diag_scale,
            slots: degrees.keys().enumerate().map(|(s, &i)| (i, s)).collect(),
            slot_degree: degrees.into_values().collect(),
            radix,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn odd_variables(&self) -> impl Iterator<Item = Variable> + '_ {
        self.slots.keys().map(|&i| Variable::y(i))
    }

    /// Decodes a key into per-variable counts of each basis vector:
    /// `result[v][j - 1]` copies of `e_j` were used for `v`.
    pub fn decode(&self, code: u128) -> BTreeMap<Variable, Vec<usize>> {
        let mut out = BTreeMap::new();
        for (&i, &s) in &self.slots {
            let d = self.slot_degree[s] as u128 + 1;
            let counts = (0..self.m)
                .map(|j| ((code / self.radix[s * self.m + j]) % d) as usize)
                .collect();
            out.insert(Variable::y(i), counts);
        }
        out
    }

    /// Evaluation coordinates of a multihomogeneous polynomial. Only nonzero
    /// coordinates are returned.
    pub fn coordinates(&self, p: &GradedPolynomial) -> Result<BTreeMap<Key, Rational>> {
        let profile = p.multidegree().ok_or(Error::NotMultihomogeneous)?;
        if p.is_zero() {
            return Ok(BTreeMap::new());
        }
        for (v, d) in profile.variables().filter(|(v, _)| v.is_odd()) {
            match self.slots.get(&v.index) {
                Some(&s) if self.slot_degree[s] >= d => {}
                _ => return Err(Error::UnassignedVariable(v.to_string())),
            }
        }
        let coef_scale = p.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let ints: Vec<(&Monomial, BigInt)> = p
            .terms()
            .map(|(m, c)| (m, c.numer() * (&coef_scale / c.denom())))
            .collect();
        let raw = match self.accumulate::<i128>(&ints) {
            Some(v) => v,
            None => self
                .accumulate::<BigInt>(&ints)
                .expect("big integer arithmetic cannot overflow"),
        };
        let pairs = profile.odd_total() / 2;
        let denom = coef_scale * num_traits::pow(self.diag_scale.clone(), pairs);
        Ok(raw
            .into_iter()
            .map(|(k, v)| (k, Rational::new(v, denom.clone())))
            .collect())
    }

    /// `true` iff every coordinate vanishes, without rescaling back.
    pub fn vanishes(&self, p: &GradedPolynomial) -> Result<bool> {
        Ok(self.coordinates(p)?.is_empty())
    }

    fn accumulate<C: Coef>(&self, terms: &[(&Monomial, BigInt)]) -> Option<BTreeMap<Key, BigInt>> {
        let diag: Vec<C> = self.diag.iter().map(C::from_big).collect::<Option<_>>()?;
        let mut memo: HashMap<Monomial, Rc<Vec<(Key, C)>>> = HashMap::new();
        let mut acc: HashMap<Key, C> = HashMap::new();
        for (m, c) in terms {
            let c = C::from_big(c)?;
            let value = self.eval_monomial(m, &diag, &mut memo)?;
            for (k, v) in value.iter() {
                let add = v.mul_c(&c)?;
                let slot = acc.entry(*k).or_insert_with(C::zero);
                *slot = slot.add_c(&add)?;
            }
        }
        Some(
            acc.into_iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(k, v)| (k, v.to_big()))
                .collect(),
        )
    }

    fn eval_monomial<C: Coef>(
        &self,
        m: &Monomial,
        diag: &[C],
        memo: &mut HashMap<Monomial, Rc<Vec<(Key, C)>>>,
    ) -> Option<Rc<Vec<(Key, C)>>> {
        if let Some(v) = memo.get(m) {
            return Some(v.clone());
        }
        let one = C::from_big(&BigInt::one())?;
        let value: Vec<(Key, C)> = match m {
            Monomial::Leaf(v) => match v.kind {
                Kind::Even => vec![((0, 0), one)],
                Kind::Odd => {
                    let s = self.slots[&v.index];
                    (1..=self.m)
                        .map(|j| ((self.radix[s * self.m + j - 1], j as Coord), one.clone()))
                        .collect()
                }
            },
            Monomial::Node { left, right, .. } => {
                let l = self.eval_monomial(left, diag, memo)?;
                let r = self.eval_monomial(right, diag, memo)?;
                let mut out: HashMap<Key, C> = HashMap::with_capacity(l.len().max(r.len()));
                for ((ka, oa), ca) in l.iter() {
                    for ((kb, ob), cb) in r.iter() {
                        let (coord, c) = match (*oa, *ob) {
                            (0, o) | (o, 0) => (o, ca.mul_c(cb)?),
                            (i, j) if i == j => (0, ca.mul_c(cb)?.mul_c(&diag[i as usize - 1])?),
                            _ => continue,
                        };
                        let slot = out.entry((ka + kb, coord)).or_insert_with(C::zero);
                        *slot = slot.add_c(&c)?;
                    }
                }
                out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
            }
        };
        let value = Rc::new(value);
        memo.insert(m.clone(), value.clone());
        Some(value)
    }
}

/// A basis substitution: even variables to the unit, odd variables to basis
/// vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    pub images: BTreeMap<Variable, usize>,
}

impl Substitution {
    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        for (v, &j) in &self.images {
            let img = if v.is_odd() { format!("e{j}") } else { "1".to_string() };
            obj.insert(v.to_string(), serde_json::Value::String(img));
        }
        serde_json::Value::Object(obj)
    }
}

/// Column of an [`EvaluationMatrix`]: a basis substitution (for multilinear
/// rows) or a `t`-monomial (in general) paired with an output coordinate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EvalColumn {
    pub code: u128,
    pub coord: Coord,
}

/// Rows are polynomials, columns the evaluation coordinates on which at
/// least one row is nonzero (all-zero columns do not affect rank).
#[derive(Debug, Clone)]
pub struct EvaluationMatrix {
    pub rows: Vec<GradedPolynomial>,
    pub columns: Vec<EvalColumn>,
    pub entries: Vec<Vec<Rational>>,
    pub space: EvalSpace,
}

impl EvaluationMatrix {
    pub fn build(rows: Vec<GradedPolynomial>, f: &BilinearForm) -> Result<Self> {
        let space = EvalSpace::for_polys(&rows, f)?;
        Self::build_in(rows, space)
    }

    pub fn build_in(rows: Vec<GradedPolynomial>, space: EvalSpace) -> Result<Self> {
        let coords: Vec<BTreeMap<Key, Rational>> =
            rows.iter().map(|p| space.coordinates(p)).collect::<Result<_>>()?;
        let mut columns: Vec<EvalColumn> = coords
            .iter()
            .flat_map(|c| c.keys().map(|&(code, coord)| EvalColumn { code, coord }))
            .collect();
        columns.sort();
        columns.dedup();
        let index: HashMap<&EvalColumn, usize> = columns.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let entries = coords
            .iter()
            .map(|c| {
                let mut row = vec![Rational::zero(); columns.len()];
                for (&(code, coord), v) in c {
                    row[index[&EvalColumn { code, coord }]] = v.clone();
                }
                row
            })
            .collect();
        Ok(EvaluationMatrix { rows, columns, entries, space })
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.entries)
    }

    /// Coordinates of `p` aligned with this matrix's columns, or `None` when
    /// `p` is nonzero somewhere outside them (so it is not in the row span).
    pub fn project(&self, p: &GradedPolynomial) -> Result<Option<Vec<Rational>>> {
        let coords = self.space.coordinates(p)?;
        let index: HashMap<&EvalColumn, usize> = self.columns.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut row = vec![Rational::zero(); self.columns.len()];
        for ((code, coord), v) in coords {
            match index.get(&EvalColumn { code, coord }) {
                Some(&i) => row[i] = v,
                None => return Ok(None),
            }
        }
        Ok(Some(row))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bm_model::{evaluate, Assignment, BmElement};
    use crate::free_jordan::multilinearize;
    use crate::rational::{int, ratio};

    fn y(i: usize) -> GradedPolynomial {
        GradedPolynomial::y(i)
    }

    #[test]
    fn multilinear_coordinates_are_basis_values() {
        let f = BilinearForm::new(vec![int(2), ratio(1, 3)]).unwrap();
        let p = y(1).product(&y(2)).product(&y(3)).scale(&ratio(3, 5)) + y(1).product(&y(2).product(&y(3)));
        let space = EvalSpace::for_polys([&p], &f).unwrap();
        let coords = space.coordinates(&p).unwrap();
        for j1 in 1..=2 {
            for j2 in 1..=2 {
                for j3 in 1..=2 {
                    let theta = Assignment::new()
                        .with(Variable::y(1), BmElement::basis(j1, 2))
                        .with(Variable::y(2), BmElement::basis(j2, 2))
                        .with(Variable::y(3), BmElement::basis(j3, 2));
                    let direct = evaluate(&p, &theta, &f).unwrap();
                    for (coord, value) in std::iter::once(&direct.scalar).chain(direct.vec.iter()).enumerate() {
                        let found = coords
                            .iter()
                            .find(|((code, c), _)| {
                                *c as usize == coord && {
                                    let d = space.decode(*code);
                                    d[&Variable::y(1)][j1 - 1] == 1
                                        && d[&Variable::y(2)][j2 - 1] == 1
                                        && d[&Variable::y(3)][j3 - 1] == 1
                                }
                            })
                            .map(|(_, v)| v.clone())
                            .unwrap_or_else(Rational::zero);
                        assert_eq!(&found, value);
                    }
                }
            }
        }
    }

    #[test]
    fn vanishing_agrees_with_linearization() {
        let f = BilinearForm::identity(2).unwrap();
        // (y1 y1)(y2 y2) - (y1 y2)(y1 y2) is nonzero; y1 (y1 y1) - (y1 y1) y1 is zero
        let t2 = y(1).product(&y(1)).product(&y(2).product(&y(2))) - y(1).product(&y(2)).product(&y(1).product(&y(2)));
        let assoc = y(1).product(&y(1).product(&y(1))) - y(1).product(&y(1)).product(&y(1));
        for (p, zero) in [(t2, false), (assoc, true)] {
            let space = EvalSpace::for_polys([&p], &f).unwrap();
            assert_eq!(space.vanishes(&p).unwrap(), zero);
            let lin = multilinearize(&p).unwrap().poly;
            let lspace = EvalSpace::for_polys([&lin], &f).unwrap();
            assert_eq!(lspace.vanishes(&lin).unwrap(), zero);
        }
    }

    #[test]
    fn rejects_inhomogeneous() {
        let f = BilinearForm::identity(2).unwrap();
        let p = y(1) + y(1).product(&y(1));
        let space = EvalSpace::for_polys([&p], &f).unwrap();
        assert_eq!(space.coordinates(&p), Err(Error::NotMultihomogeneous));
    }

    #[test]
    fn matrix_rank_of_three_odd_variables() {
        let f = BilinearForm::identity(2).unwrap();
        let rows = crate::free_jordan::multilinear_basis(0, 3)
            .unwrap()
            .into_iter()
            .map(GradedPolynomial::from_monomial)
            .collect();
        let mat = EvaluationMatrix::build(rows, &f).unwrap();
        assert_eq!(mat.rank(), 3);
    }
}
