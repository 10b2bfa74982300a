//! Partitions, hook lengths and the predicted graded cocharacter of `B_m`.

use std::fmt;

/// A weakly decreasing list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Normalizes any order of positive parts (zeros are dropped).
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn odd_parts(&self) -> usize {
        self.parts.iter().filter(|&&p| p % 2 == 1).count()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Partitions of `n` with at most `max_parts` parts, in reverse
/// lexicographic order: `(n)` first.
pub fn partitions(n: usize, max_parts: usize) -> Vec<Partition> {
    fn go(n: usize, largest: usize, parts_left: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        if parts_left == 0 {
            return;
        }
        for p in (1..=largest.min(n)).rev() {
            cur.push(p);
            go(n - p, p, parts_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, max_parts, &mut Vec::new(), &mut out);
    out
}

/// `n! / ∏ hooks`. Exact while `n! < 2^128` (`n <= 34`).
pub fn irreducible_dim(mu: &Partition) -> u128 {
    let n = mu.weight();
    let num: u128 = (1..=n as u128).product();
    let mut hooks: u128 = 1;
    let conj: Vec<usize> = (0..mu.parts.first().copied().unwrap_or(0))
        .map(|c| mu.parts.iter().filter(|&&p| p > c).count())
        .collect();
    for (i, &row) in mu.parts.iter().enumerate() {
        for (j, &col) in conj.iter().enumerate().take(row) {
            let hook = (row - j - 1) + (col - i - 1) + 1;
            hooks *= hook as u128;
        }
    }
    num / hooks
}

/// `μ ⊢ n` with at most `m` parts, at most one of them odd.
pub fn admissible_mu(n: usize, m: usize) -> Vec<Partition> {
    partitions(n, m).into_iter().filter(|p| p.odd_parts() <= 1).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocharEntry {
    pub lambda: Partition,
    pub mu: Partition,
    pub multiplicity: u8,
}

/// Every pair `λ ⊢ k`, `μ ⊢ n`; the multiplicity is 1 exactly when
/// `λ = (k)` and `μ` is admissible.
pub fn cocharacter_table(k: usize, n: usize, m: usize) -> Vec<CocharEntry> {
    let top = Partition::new(vec![k]);
    let admissible = admissible_mu(n, m);
    let mut out = Vec::new();
    for lambda in partitions(k, k.max(1)) {
        for mu in partitions(n, n.max(1)) {
            let multiplicity = u8::from(lambda == top && admissible.contains(&mu));
            out.push(CocharEntry { lambda: lambda.clone(), mu, multiplicity });
        }
    }
    out
}

/// `Σ_{μ admissible} dim χ_μ`; the `λ = (k)` factor has dimension 1.
pub fn predicted_dim(_k: usize, n: usize, m: usize) -> u128 {
    admissible_mu(n, m).iter().map(irreducible_dim).sum()
}

pub fn table_tsv(entries: &[CocharEntry], k: usize, n: usize, m: usize) -> String {
    let mut s = String::from("k\tn\tm\tlambda\tmu\tmultiplicity\n");
    for e in entries {
        s.push_str(&format!("{k}\t{n}\t{m}\t{}\t{}\t{}\n", e.lambda, e.mu, e.multiplicity));
    }
    s
}
