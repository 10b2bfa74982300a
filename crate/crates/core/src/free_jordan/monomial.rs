use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Grading of a free variable: `Even` variables are the `x_i`, `Odd` the `y_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable {
    pub kind: Kind,
    pub index: usize,
}

impl Variable {
    pub fn x(index: usize) -> Self {
        assert!(index >= 1, "variable indices start at 1");
        Variable { kind: Kind::Even, index }
    }

    pub fn y(index: usize) -> Self {
        assert!(index >= 1, "variable indices start at 1");
        Variable { kind: Kind::Odd, index }
    }

    pub fn is_odd(&self) -> bool {
        self.kind == Kind::Odd
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::Even => write!(f, "x{}", self.index),
            Kind::Odd => write!(f, "y{}", self.index),
        }
    }
}

/// A monomial of the free commutative nonassociative algebra: a binary tree
/// whose leaves are variables.
///
/// Values built through [`Monomial::leaf`] and [`Monomial::mul`] are always
/// canonical: at every internal node the left child is `<=` the right child.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Monomial {
    Leaf(Variable),
    Node {
        degree: usize,
        left: Arc<Monomial>,
        right: Arc<Monomial>,
    },
}

impl Monomial {
    pub fn leaf(v: Variable) -> Self {
        Monomial::Leaf(v)
    }

    pub fn x(index: usize) -> Self {
        Monomial::Leaf(Variable::x(index))
    }

    pub fn y(index: usize) -> Self {
        Monomial::Leaf(Variable::y(index))
    }

    /// Commutative product; the result is canonical when both factors are.
    pub fn mul(a: &Monomial, b: &Monomial) -> Monomial {
        Self::mul_owned(a.clone(), b.clone())
    }

    pub fn mul_owned(a: Monomial, b: Monomial) -> Monomial {
        let degree = a.degree() + b.degree();
        let (left, right) = if a <= b { (a, b) } else { (b, a) };
        Monomial::Node {
            degree,
            left: Arc::new(left),
            right: Arc::new(right),
        }
    }

    /// Builds a node without reordering the children. Only used to represent
    /// trees read from external input before [`Monomial::canonicalize`].
    pub fn raw_node(left: Monomial, right: Monomial) -> Monomial {
        Monomial::Node {
            degree: left.degree() + right.degree(),
            left: Arc::new(left),
            right: Arc::new(right),
        }
    }

    /// Left-normed product `((f_1 f_2) f_3) ... f_r`.
    pub fn left_normed<'a>(factors: impl IntoIterator<Item = &'a Monomial>) -> Option<Monomial> {
        let mut it = factors.into_iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, f| Monomial::mul_owned(acc, f.clone())))
    }

    pub fn canonicalize(&self) -> Monomial {
        match self {
            Monomial::Leaf(_) => self.clone(),
            Monomial::Node { left, right, .. } => {
                Monomial::mul_owned(left.canonicalize(), right.canonicalize())
            }
        }
    }

    pub fn is_canonical(&self) -> bool {
        match self {
            Monomial::Leaf(_) => true,
            Monomial::Node { left, right, .. } => {
                left <= right && left.is_canonical() && right.is_canonical()
            }
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Monomial::Leaf(_) => 1,
            Monomial::Node { degree, .. } => *degree,
        }
    }

    pub fn leaves(&self) -> Vec<Variable> {
        let mut out = Vec::with_capacity(self.degree());
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Variable>) {
        match self {
            Monomial::Leaf(v) => out.push(*v),
            Monomial::Node { left, right, .. } => {
                left.collect_leaves(out);
                right.collect_leaves(out);
            }
        }
    }

    pub fn odd_degree(&self) -> usize {
        self.leaves().iter().filter(|v| v.is_odd()).count()
    }

    /// `true` iff the number of odd leaves is odd.
    pub fn is_odd(&self) -> bool {
        self.odd_degree() % 2 == 1
    }

    pub fn profile(&self) -> MultidegreeProfile {
        let mut p = MultidegreeProfile::default();
        for v in self.leaves() {
            p.bump(v, 1);
        }
        p
    }

    pub fn degree_in(&self, v: Variable) -> usize {
        self.leaves().iter().filter(|&&w| w == v).count()
    }

    /// Applies a variable renaming to every leaf and re-canonicalizes.
    pub fn rename(&self, f: &impl Fn(Variable) -> Variable) -> Monomial {
        match self {
            Monomial::Leaf(v) => Monomial::Leaf(f(*v)),
            Monomial::Node { left, right, .. } => {
                Monomial::mul_owned(left.rename(f), right.rename(f))
            }
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| match (self, other) {
                (Monomial::Leaf(a), Monomial::Leaf(b)) => a.cmp(b),
                (
                    Monomial::Node { left: l1, right: r1, .. },
                    Monomial::Node { left: l2, right: r2, .. },
                ) => l1.cmp(l2).then_with(|| r1.cmp(r2)),
                // equal degree rules out leaf vs node
                (Monomial::Leaf(_), Monomial::Node { .. }) => Ordering::Less,
                (Monomial::Node { .. }, Monomial::Leaf(_)) => Ordering::Greater,
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Monomial::Leaf(v) => write!(f, "{v}"),
            Monomial::Node { left, right, .. } => write!(f, "({left}*{right})"),
        }
    }
}

/// Per-variable degrees of a monomial.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultidegreeProfile {
    pub even_degrees: BTreeMap<usize, usize>,
    pub odd_degrees: BTreeMap<usize, usize>,
}

impl MultidegreeProfile {
    fn bump(&mut self, v: Variable, by: usize) {
        let map = match v.kind {
            Kind::Even => &mut self.even_degrees,
            Kind::Odd => &mut self.odd_degrees,
        };
        *map.entry(v.index).or_insert(0) += by;
    }

    pub fn total_degree(&self) -> usize {
        self.even_degrees.values().sum::<usize>() + self.odd_degrees.values().sum::<usize>()
    }

    pub fn odd_total(&self) -> usize {
        self.odd_degrees.values().sum()
    }

    pub fn degree_of(&self, v: Variable) -> usize {
        let map = match v.kind {
            Kind::Even => &self.even_degrees,
            Kind::Odd => &self.odd_degrees,
        };
        map.get(&v.index).copied().unwrap_or(0)
    }

    pub fn is_multilinear(&self) -> bool {
        self.even_degrees.values().chain(self.odd_degrees.values()).all(|&d| d == 1)
    }

    pub fn variables(&self) -> impl Iterator<Item = (Variable, usize)> + '_ {
        self.even_degrees
            .iter()
            .map(|(&i, &d)| (Variable::x(i), d))
            .chain(self.odd_degrees.iter().map(|(&i, &d)| (Variable::y(i), d)))
    }
}

/// Splits a set of labelled leaves into all unordered binary trees.
///
/// The smallest leaf always goes to the left part of the root split, so each
/// unordered tree is produced exactly once.
pub(crate) fn all_trees(leaves: &[Variable]) -> Vec<Monomial> {
    match leaves.len() {
        0 => vec![],
        1 => vec![Monomial::Leaf(leaves[0])],
        n => {
            let first = leaves[0];
            let rest = &leaves[1..];
            let mut out = Vec::new();
            // bitmask over `rest` selecting companions of `first`; the full
            // mask would leave the right part empty
            for mask in 0u64..(1u64 << (n - 1)) - 1 {
                let mut left = vec![first];
                let mut right = Vec::new();
                for (i, &v) in rest.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        left.push(v);
                    } else {
                        right.push(v);
                    }
                }
                let lts = all_trees(&left);
                let rts = all_trees(&right);
                for l in &lts {
                    for r in &rts {
                        out.push(Monomial::mul(l, r));
                    }
                }
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_is_commutative() {
        let a = Monomial::mul(&Monomial::y(2), &Monomial::y(1));
        let b = Monomial::mul(&Monomial::y(1), &Monomial::y(2));
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "(y1*y2)");
    }

    #[test]
    fn product_is_not_associative() {
        let (y1, y2, y3) = (Monomial::y(1), Monomial::y(2), Monomial::y(3));
        let left = Monomial::mul(&Monomial::mul(&y1, &y2), &y3);
        let right = Monomial::mul(&y1, &Monomial::mul(&y2, &y3));
        assert_ne!(left, right);
    }

    #[test]
    fn even_before_odd_and_lower_degree_first() {
        assert!(Monomial::x(5) < Monomial::y(1));
        assert!(Monomial::y(9) < Monomial::mul(&Monomial::x(1), &Monomial::x(1)));
    }

    #[test]
    fn canonicalize_raw_trees() {
        let raw = Monomial::raw_node(
            Monomial::raw_node(Monomial::y(3), Monomial::y(1)),
            Monomial::x(1),
        );
        assert!(!raw.is_canonical());
        let c = raw.canonicalize();
        assert!(c.is_canonical());
        assert_eq!(c.to_string(), "(x1*(y1*y3))");
        assert_eq!(c.canonicalize(), c);
    }

    #[test]
    fn tree_counts_are_double_factorials() {
        let expected = [1usize, 1, 3, 15, 105, 945];
        for (t, &count) in (1..=6).zip(expected.iter()) {
            let leaves: Vec<_> = (1..=t).map(Variable::y).collect();
            let trees = all_trees(&leaves);
            assert_eq!(trees.len(), count, "t = {t}");
            let mut sorted = trees.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), count);
        }
    }
}
