use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{1..n}` in one-line notation: `self.0[k-1] = σ(k)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn from_one_line(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n || seen[v] {
                return Err(Error::Parse(format!("not a permutation: {values:?}")));
            }
            seen[v] = true;
        }
        Ok(Permutation(values))
    }

    /// Accepts `"132"` (single digits) or `"1,3,2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let values: Result<Vec<usize>> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
                .collect()
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("bad permutation digit {c:?}")))
                })
                .collect()
        };
        Self::from_one_line(values?)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn one_line(&self) -> &[usize] {
        &self.0
    }

    /// `σ(k)` for `k` in `1..=n`.
    pub fn apply(&self, k: usize) -> usize {
        self.0[k - 1]
    }

    /// Position `k` with `σ(k) = v`.
    pub fn position_of(&self, v: usize) -> usize {
        self.0.iter().position(|&x| x == v).expect("value in range") + 1
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let n = self.n();
        (0..n).map(|a| (a + 1..n).filter(|&b| self.0[a] > self.0[b]).count()).sum()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&k| self.apply(k)).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (k, &v) in self.0.iter().enumerate() {
            inv[v - 1] = k + 1;
        }
        Permutation(inv)
    }

    /// `t_ij ∘ σ`: exchanges the values `i` and `j`.
    pub fn swap_values(&self, i: usize, j: usize) -> Permutation {
        Permutation(
            self.0
                .iter()
                .map(|&v| if v == i { j } else if v == j { i } else { v })
                .collect(),
        )
    }

    /// `σ ∘ s_a`: exchanges the entries at positions `a` and `a+1`.
    pub fn swap_positions(&self, a: usize) -> Permutation {
        let mut v = self.0.clone();
        v.swap(a - 1, a);
        Permutation(v)
    }

    /// A reduced word `(a_1, ..., a_l)` with `σ = s_{a_1} ⋯ s_{a_l}`,
    /// obtained by stripping right descents.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::new();
        while let Some(a) = (1..w.n()).find(|&a| w.apply(a) > w.apply(a + 1)) {
            w = w.swap_positions(a);
            word.push(a);
        }
        word.reverse();
        word
    }

    /// All of `S_n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        let mut used = vec![false; n + 1];
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if cur.len() == n {
                out.push(Permutation(cur.clone()));
                return;
            }
            for v in 1..=n {
                if !used[v] {
                    used[v] = true;
                    cur.push(v);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[v] = false;
                }
            }
        }
        rec(n, &mut cur, &mut used, &mut out);
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_word_multiplies_back() {
        for w in Permutation::all(4) {
            let word = w.reduced_word();
            assert_eq!(word.len(), w.length());
            let prod = word
                .iter()
                .fold(Permutation::identity(4), |acc, &a| acc.swap_positions(a));
            assert_eq!(prod, w);
        }
    }

    #[test]
    fn parse_and_display() {
        let p = Permutation::parse("321").unwrap();
        assert_eq!(p.length(), 3);
        assert_eq!(p.to_string(), "321");
        assert_eq!(Permutation::parse("3,2,1").unwrap(), p);
        assert!(Permutation::parse("331").is_err());
        assert_eq!(p.compose(&p.inverse()), Permutation::identity(3));
    }

    #[test]
    fn swap_values_is_left_multiplication() {
        let s = Permutation::parse("231").unwrap();
        let t = Permutation::parse("213").unwrap();
        assert_eq!(s.swap_values(1, 2), t.compose(&s));
    }
}
