use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::monomial::{Kind, Monomial, MultidegreeProfile, Variable};
use crate::rational::{self, Rational};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

/// A finite rational linear combination of canonical monomials.
///
/// Zero coefficients are never stored; the empty map is the zero polynomial.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GradedPolynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl GradedPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Self::term(Rational::one(), m)
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn var(v: Variable) -> Self {
        Self::from_monomial(Monomial::Leaf(v))
    }

    pub fn x(i: usize) -> Self {
        Self::var(Variable::x(i))
    }

    pub fn y(i: usize) -> Self {
        Self::var(Variable::y(i))
    }

    /// Builds a polynomial from arbitrary (possibly non-canonical) monomials.
    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, Monomial)>) -> Self {
        let mut p = Self::zero();
        for (c, m) in terms {
            p.add_term(m.canonicalize(), c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        GradedPolynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Bilinear extension of the monomial product.
    pub fn product(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(Monomial::mul(a, b), ca * cb);
            }
        }
        out
    }

    /// Left-normed power `((p p) p) ... p`; `None` for the empty power.
    pub fn power(&self, k: usize) -> Option<Self> {
        left_normed(std::iter::repeat_n(self, k))
    }

    pub fn parity(&self) -> Result<Parity> {
        let mut odd = false;
        let mut even = false;
        for m in self.terms.keys() {
            if m.is_odd() {
                odd = true;
            } else {
                even = true;
            }
        }
        match (even, odd) {
            (false, false) => Err(Error::ParityUndefined),
            (true, false) => Ok(Parity::Even),
            (false, true) => Ok(Parity::Odd),
            (true, true) => Ok(Parity::Mixed),
        }
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        self.terms.keys().flat_map(|m| m.leaves()).collect()
    }

    pub fn has_even_variables(&self) -> bool {
        self.variables().iter().any(|v| v.kind == Kind::Even)
    }

    /// The common profile of all monomials, or `None` for inhomogeneous input.
    /// The zero polynomial has the empty profile.
    pub fn multidegree(&self) -> Option<MultidegreeProfile> {
        let mut it = self.terms.keys().map(Monomial::profile);
        let first = match it.next() {
            Some(p) => p,
            None => return Some(MultidegreeProfile::default()),
        };
        it.all(|p| p == first).then_some(first)
    }

    pub fn is_multihomogeneous(&self) -> bool {
        self.multidegree().is_some()
    }

    pub fn is_multilinear(&self) -> bool {
        self.multidegree().is_some_and(|p| p.is_multilinear())
    }

    pub fn degree_in(&self, v: Variable) -> usize {
        self.terms.keys().map(|m| m.degree_in(v)).max().unwrap_or(0)
    }

    /// Groups the terms by multidegree.
    pub fn multihomogeneous_components(&self) -> Vec<GradedPolynomial> {
        let mut groups: BTreeMap<MultidegreeProfile, GradedPolynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            groups.entry(m.profile()).or_default().add_term(m.clone(), c.clone());
        }
        groups.into_values().collect()
    }

    /// Image under the graded endomorphism determined by `sigma`; variables
    /// missing from `sigma` are fixed.
    pub fn substitute(&self, sigma: &BTreeMap<Variable, GradedPolynomial>) -> Result<Self> {
        for (v, image) in sigma {
            if image.is_zero() {
                continue;
            }
            let ok = matches!(
                (v.kind, image.parity()?),
                (Kind::Even, Parity::Even) | (Kind::Odd, Parity::Odd)
            );
            if !ok {
                return Err(Error::NonGradedSubstitution(format!(
                    "{v} cannot be sent to {image}"
                )));
            }
        }
        let mut cache: BTreeMap<Monomial, GradedPolynomial> = BTreeMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let img = substitute_monomial(m, sigma, &mut cache);
            out = out + img.scale(c);
        }
        Ok(out)
    }

    pub fn rename(&self, f: &impl Fn(Variable) -> Variable) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.rename(f), c.clone());
        }
        out
    }
}

fn substitute_monomial(
    m: &Monomial,
    sigma: &BTreeMap<Variable, GradedPolynomial>,
    cache: &mut BTreeMap<Monomial, GradedPolynomial>,
) -> GradedPolynomial {
    if let Some(p) = cache.get(m) {
        return p.clone();
    }
    let img = match m {
        Monomial::Leaf(v) => sigma
            .get(v)
            .cloned()
            .unwrap_or_else(|| GradedPolynomial::var(*v)),
        Monomial::Node { left, right, .. } => {
            let l = substitute_monomial(left, sigma, cache);
            let r = substitute_monomial(right, sigma, cache);
            l.product(&r)
        }
    };
    cache.insert(m.clone(), img.clone());
    img
}

/// Left-normed product of polynomials; `None` when there are no factors.
pub fn left_normed<'a>(factors: impl IntoIterator<Item = &'a GradedPolynomial>) -> Option<GradedPolynomial> {
    let mut it = factors.into_iter();
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, f| acc.product(f)))
}

impl Add for GradedPolynomial {
    type Output = GradedPolynomial;
    fn add(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for GradedPolynomial {
    type Output = GradedPolynomial;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for GradedPolynomial {
    type Output = GradedPolynomial;
    fn neg(self) -> Self {
        GradedPolynomial {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Mul for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn mul(self, rhs: Self) -> GradedPolynomial {
        self.product(rhs)
    }
}

impl fmt::Display for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({})*{m}", rational::format(c))?;
            }
        }
        Ok(())
    }
}

/// A factor that may be the empty product.
///
/// The free algebra has no unit, so decompositions that leave nothing behind
/// return `EmptyProduct(c)`: the scalar `c` times the multiplicative no-op.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cofactor {
    EmptyProduct(Rational),
    Poly(GradedPolynomial),
}

impl Cofactor {
    pub fn unit() -> Self {
        Cofactor::EmptyProduct(Rational::one())
    }

    pub fn is_empty_product(&self) -> bool {
        matches!(self, Cofactor::EmptyProduct(_))
    }

    /// `prefix · self`, where a missing prefix is also the empty product.
    /// Returns `None` when both sides are empty.
    pub fn times_prefix(&self, prefix: Option<&GradedPolynomial>) -> Option<GradedPolynomial> {
        match (prefix, self) {
            (None, Cofactor::EmptyProduct(_)) => None,
            (None, Cofactor::Poly(h)) => Some(h.clone()),
            (Some(p), Cofactor::EmptyProduct(c)) => Some(p.scale(c)),
            (Some(p), Cofactor::Poly(h)) => Some(p.product(h)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn y(i: usize) -> GradedPolynomial {
        GradedPolynomial::y(i)
    }

    #[test]
    fn zero_annihilates() {
        assert!(GradedPolynomial::zero().product(&y(1)).is_zero());
        assert!(y(1).product(&GradedPolynomial::zero()).is_zero());
    }

    #[test]
    fn parity_examples() {
        assert_eq!(y(1).product(&y(2)).parity(), Ok(Parity::Even));
        assert_eq!(y(1).product(&y(2)).product(&y(3)).parity(), Ok(Parity::Odd));
        assert_eq!((y(1) + y(1).product(&y(2))).parity(), Ok(Parity::Mixed));
        assert_eq!(GradedPolynomial::zero().parity(), Err(Error::ParityUndefined));
    }

    #[test]
    fn substitution_is_linear() {
        let p = y(1).product(&y(2));
        let sigma = BTreeMap::from([(Variable::y(1), y(1) + y(2))]);
        let got = p.substitute(&sigma).unwrap();
        assert_eq!(got, y(1).product(&y(2)) + y(2).product(&y(2)));
    }

    #[test]
    fn substitution_respects_grading() {
        let sigma = BTreeMap::from([(Variable::y(1), GradedPolynomial::x(1))]);
        assert!(matches!(
            y(1).substitute(&sigma),
            Err(Error::NonGradedSubstitution(_))
        ));
        let p = y(1).product(&y(2)).scale(&int(3));
        assert_eq!(p.substitute(&BTreeMap::new()).unwrap(), p);
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = y(1).product(&y(2));
        assert!((p.clone() - p).is_zero());
    }

    #[test]
    fn components_split_by_multidegree() {
        let p = y(1) + y(1).product(&y(1)) + y(2).scale(&int(2));
        assert!(!p.is_multihomogeneous());
        let parts = p.multihomogeneous_components();
        assert_eq!(parts.len(), 3);
        assert!(parts.iter().all(GradedPolynomial::is_multihomogeneous));
    }
}
