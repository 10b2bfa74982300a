//! The superalgebra `B_m = K ⊕ V_m` with product
//! `(α + u)(β + v) = (αβ + f(u, v)) + (αv + βu)`.
//!
//! The form `f` is stored through its diagonal Gram matrix. Over a field of
//! characteristic zero every nondegenerate symmetric form diagonalizes, so
//! this loses nothing.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::free_jordan::{GradedPolynomial, Kind, Monomial, Variable};
use crate::rational::{self, Rational};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearForm {
    diag: Vec<Rational>,
}

impl BilinearForm {
    pub fn new(diag: Vec<Rational>) -> Result<Self> {
        if diag.len() < 2 {
            return Err(Error::InvalidForm(format!("dimension must be at least 2, got {}", diag.len())));
        }
        if diag.iter().any(Zero::is_zero) {
            return Err(Error::InvalidForm("diagonal entries must be nonzero".into()));
        }
        Ok(BilinearForm { diag })
    }

    /// The form with identity Gram matrix.
    pub fn identity(m: usize) -> Result<Self> {
        Self::new(vec![Rational::one(); m])
    }

    /// `diag = (1, 2, ..., m)`.
    pub fn staircase(m: usize) -> Result<Self> {
        Self::new((1..=m as i64).map(rational::int).collect())
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[Rational] {
        &self.diag
    }

    pub fn apply(&self, u: &[Rational], v: &[Rational]) -> Rational {
        self.diag
            .iter()
            .zip(u.iter().zip(v))
            .fold(Rational::zero(), |acc, (d, (a, b))| acc + d * a * b)
    }
}

#[derive(Serialize, Deserialize)]
struct FormJson {
    m: usize,
    diag: Vec<String>,
}

impl Serialize for BilinearForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FormJson {
            m: self.dim(),
            diag: self.diag.iter().map(rational::format).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BilinearForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = FormJson::deserialize(d)?;
        if raw.diag.len() != raw.m {
            return Err(D::Error::custom(format!("diag has {} entries, m = {}", raw.diag.len(), raw.m)));
        }
        let diag = raw
            .diag
            .iter()
            .map(|s| rational::parse(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        BilinearForm::new(diag).map_err(D::Error::custom)
    }
}

/// An element `α + u` of `B_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BmElement {
    pub scalar: Rational,
    pub vec: Vec<Rational>,
}

impl BmElement {
    pub fn zero(m: usize) -> Self {
        BmElement { scalar: Rational::zero(), vec: vec![Rational::zero(); m] }
    }

    pub fn scalar(alpha: Rational, m: usize) -> Self {
        BmElement { scalar: alpha, vec: vec![Rational::zero(); m] }
    }

    pub fn unit(m: usize) -> Self {
        Self::scalar(Rational::one(), m)
    }

    pub fn vector(vec: Vec<Rational>) -> Self {
        BmElement { scalar: Rational::zero(), vec }
    }

    /// The basis vector `e_i`, `1 <= i <= m`.
    pub fn basis(i: usize, m: usize) -> Self {
        let mut e = Self::zero(m);
        e.vec[i - 1] = Rational::one();
        e
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero() && self.vec.iter().all(Zero::is_zero)
    }

    pub fn is_even(&self) -> bool {
        self.vec.iter().all(Zero::is_zero)
    }

    pub fn is_odd(&self) -> bool {
        self.scalar.is_zero()
    }

    pub fn add(&self, other: &BmElement) -> BmElement {
        BmElement {
            scalar: &self.scalar + &other.scalar,
            vec: self.vec.iter().zip(&other.vec).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> BmElement {
        BmElement {
            scalar: &self.scalar * c,
            vec: self.vec.iter().map(|a| a * c).collect(),
        }
    }
}

pub fn multiply(a: &BmElement, b: &BmElement, f: &BilinearForm) -> Result<BmElement> {
    for x in [a, b] {
        if x.vec.len() != f.dim() {
            return Err(Error::DimensionMismatch { expected: f.dim(), found: x.vec.len() });
        }
    }
    let scalar = &a.scalar * &b.scalar + f.apply(&a.vec, &b.vec);
    let vec = a
        .vec
        .iter()
        .zip(&b.vec)
        .map(|(u, v)| &a.scalar * v + &b.scalar * u)
        .collect();
    Ok(BmElement { scalar, vec })
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    scalar: String,
    vec: Vec<String>,
}

impl Serialize for BmElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementJson {
            scalar: rational::format(&self.scalar),
            vec: self.vec.iter().map(rational::format).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BmElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ElementJson::deserialize(d)?;
        let scalar = rational::parse(&raw.scalar).map_err(D::Error::custom)?;
        let vec = raw
            .vec
            .iter()
            .map(|s| rational::parse(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(BmElement { scalar, vec })
    }
}

/// A graded assignment of the free variables: even variables go to
/// `(B_m)_0 = K`, odd variables to `(B_m)_1 = V_m`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment {
    pub even_map: BTreeMap<usize, BmElement>,
    pub odd_map: BTreeMap<usize, BmElement>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, v: Variable, value: BmElement) -> &mut Self {
        match v.kind {
            Kind::Even => self.even_map.insert(v.index, value),
            Kind::Odd => self.odd_map.insert(v.index, value),
        };
        self
    }

    pub fn with(mut self, v: Variable, value: BmElement) -> Self {
        self.set(v, value);
        self
    }

    pub fn get(&self, v: Variable) -> Option<&BmElement> {
        match v.kind {
            Kind::Even => self.even_map.get(&v.index),
            Kind::Odd => self.odd_map.get(&v.index),
        }
    }

    fn check(&self, f: &BilinearForm) -> Result<()> {
        for (i, e) in &self.even_map {
            check_dim(e, f)?;
            if !e.is_even() {
                return Err(Error::ParityViolation(format!("x{i}")));
            }
        }
        for (i, e) in &self.odd_map {
            check_dim(e, f)?;
            if !e.is_odd() {
                return Err(Error::ParityViolation(format!("y{i}")));
            }
        }
        Ok(())
    }
}

fn check_dim(e: &BmElement, f: &BilinearForm) -> Result<()> {
    if e.vec.len() != f.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), found: e.vec.len() });
    }
    Ok(())
}

/// Image of `p` under the graded homomorphism extending `theta`.
pub fn evaluate(p: &GradedPolynomial, theta: &Assignment, f: &BilinearForm) -> Result<BmElement> {
    theta.check(f)?;
    let mut acc = BmElement::zero(f.dim());
    for (m, c) in p.terms() {
        acc = acc.add(&evaluate_monomial(m, theta, f)?.scale(c));
    }
    Ok(acc)
}

fn evaluate_monomial(m: &Monomial, theta: &Assignment, f: &BilinearForm) -> Result<BmElement> {
    match m {
        Monomial::Leaf(v) => theta
            .get(*v)
            .cloned()
            .ok_or_else(|| Error::UnassignedVariable(v.to_string())),
        Monomial::Node { left, right, .. } => {
            let l = evaluate_monomial(left, theta, f)?;
            let r = evaluate_monomial(right, theta, f)?;
            multiply(&l, &r, f)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    fn e(i: usize) -> BmElement {
        BmElement::basis(i, 2)
    }

    #[test]
    fn product_examples() {
        let f = BilinearForm::identity(2).unwrap();
        assert_eq!(multiply(&BmElement::unit(2), &e(1), &f).unwrap(), e(1));
        assert_eq!(multiply(&e(1), &e(1), &f).unwrap(), BmElement::unit(2));
        assert_eq!(multiply(&e(1), &e(2), &f).unwrap(), BmElement::zero(2));
    }

    #[test]
    fn dimension_mismatch() {
        let f = BilinearForm::identity(2).unwrap();
        assert!(matches!(
            multiply(&BmElement::basis(1, 3), &e(1), &f),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn form_validation() {
        assert!(BilinearForm::identity(1).is_err());
        assert!(BilinearForm::new(vec![int(1), int(0)]).is_err());
        let f = BilinearForm::staircase(3).unwrap();
        for i in 1..=3 {
            let b = BmElement::basis(i, 3);
            assert_ne!(multiply(&b, &b, &f).unwrap().scalar, int(0));
        }
    }

    #[test]
    fn evaluation_examples() {
        let f = BilinearForm::identity(2).unwrap();
        let y = GradedPolynomial::y;
        let theta = Assignment::new().with(Variable::y(1), e(1)).with(Variable::y(2), e(2));
        assert_eq!(evaluate(&y(1).product(&y(2)), &theta, &f).unwrap(), BmElement::zero(2));

        // (y1 y2) y3 at e1, e1, e2: f(e1, e1) e2 = e2
        let theta = Assignment::new()
            .with(Variable::y(1), e(1))
            .with(Variable::y(2), e(1))
            .with(Variable::y(3), e(2));
        let p = y(1).product(&y(2)).product(&y(3));
        assert_eq!(evaluate(&p, &theta, &f).unwrap(), e(2));

        let theta = Assignment::new()
            .with(Variable::x(1), BmElement::unit(2))
            .with(Variable::y(1), e(1));
        let p = GradedPolynomial::x(1).product(&y(1));
        assert_eq!(evaluate(&p, &theta, &f).unwrap(), e(1));
    }

    #[test]
    fn evaluation_errors() {
        let f = BilinearForm::identity(2).unwrap();
        let p = GradedPolynomial::y(1);
        assert!(matches!(evaluate(&p, &Assignment::new(), &f), Err(Error::UnassignedVariable(_))));
        let bad = Assignment::new().with(Variable::y(1), BmElement::unit(2));
        assert!(matches!(evaluate(&p, &bad, &f), Err(Error::ParityViolation(_))));
    }

    #[test]
    fn json_forms() {
        let f: BilinearForm = serde_json::from_str(r#"{"m": 2, "diag": ["1", "3/2"]}"#).unwrap();
        assert_eq!(f.diag(), &[int(1), ratio(3, 2)]);
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"m":2,"diag":["1","3/2"]}"#);
        assert!(serde_json::from_str::<BilinearForm>(r#"{"m": 3, "diag": ["1", "1"]}"#).is_err());
        let el: BmElement = serde_json::from_str(r#"{"scalar": "-1/3", "vec": ["0", "2"]}"#).unwrap();
        assert_eq!(el.scalar, ratio(-1, 3));
        assert_eq!(serde_json::to_string(&el).unwrap(), r#"{"scalar":"-1/3","vec":["0","2"]}"#);
    }

    fn small() -> impl Strategy<Value = Rational> {
        (-4i64..=4, 1i64..=3).prop_map(|(a, b)| ratio(a, b))
    }

    fn element(m: usize) -> impl Strategy<Value = BmElement> {
        (small(), proptest::collection::vec(small(), m)).prop_map(|(s, v)| BmElement { scalar: s, vec: v })
    }

    fn form(m: usize) -> impl Strategy<Value = BilinearForm> {
        proptest::collection::vec((1i64..=5, prop::bool::ANY), m).prop_map(|d| {
            BilinearForm::new(d.into_iter().map(|(a, neg)| int(if neg { -a } else { a })).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn commutative(f in form(3), a in element(3), b in element(3)) {
            prop_assert_eq!(multiply(&a, &b, &f).unwrap(), multiply(&b, &a, &f).unwrap());
        }

        #[test]
        fn graded(f in form(3), a in element(3), b in element(3)) {
            let oa = BmElement::vector(a.vec.clone());
            let ob = BmElement::vector(b.vec.clone());
            let ea = BmElement::scalar(a.scalar.clone(), 3);
            prop_assert!(multiply(&oa, &ob, &f).unwrap().is_even());
            prop_assert!(multiply(&oa, &ea, &f).unwrap().is_odd());
        }

        #[test]
        fn jordan_identity(f in form(3), a in element(3), b in element(3)) {
            let a2 = multiply(&a, &a, &f).unwrap();
            let lhs = multiply(&multiply(&a2, &b, &f).unwrap(), &a, &f).unwrap();
            let rhs = multiply(&a2, &multiply(&b, &a, &f).unwrap(), &f).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
