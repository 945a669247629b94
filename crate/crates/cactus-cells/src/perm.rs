//! Permutations of `{1, ..., n}` with the interval reversals `w_{p,q}` used
//! throughout the cell and group modules.

use crate::error::{Error, Result};
use std::fmt;

/// A permutation of `{1, ..., n}` in one-line notation.
///
/// `images[k]` is the image of `k + 1`. Composition follows the convention
/// `(g * h)(x) = g(h(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm {
            images: (1..=n).collect(),
        }
    }

    /// Builds a permutation from its one-line notation (1-indexed images).
    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::Domain(format!(
                    "not a permutation of 1..={n}: {images:?}"
                )));
            }
            seen[v] = true;
        }
        Ok(Perm { images })
    }

    /// The interval reversal `w_{p,q}`: maps `i` to `p + q - i` on `[p, q]`.
    pub fn interval_reversal(p: usize, q: usize, n: usize) -> Result<Perm> {
        if !(1 <= p && p < q && q <= n) {
            return Err(Error::Domain(format!(
                "interval reversal needs 1 <= p < q <= n, got p={p} q={q} n={n}"
            )));
        }
        let images = (1..=n)
            .map(|i| if p <= i && i <= q { p + q - i } else { i })
            .collect();
        Ok(Perm { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn one_line(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    /// `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.n(), other.n());
        Perm {
            images: (1..=self.n()).map(|i| self.apply(other.apply(i))).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.n()];
        for (k, &v) in self.images.iter().enumerate() {
            images[v - 1] = k + 1;
        }
        Perm { images }
    }

    /// If this permutation is an interval reversal `w_{p,q}` with `p < q`,
    /// returns `(p, q)`.
    pub fn as_interval_reversal(&self) -> Option<(usize, usize)> {
        let n = self.n();
        let p = (1..=n).find(|&i| self.apply(i) != i)?;
        let q = (1..=n).rev().find(|&i| self.apply(i) != i)?;
        for i in 1..=n {
            let expect = if p <= i && i <= q { p + q - i } else { i };
            if self.apply(i) != expect {
                return None;
            }
        }
        Some((p, q))
    }

    /// All permutations of `{1, ..., n}` in lexicographic order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut images: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Perm {
                images: images.clone(),
            });
            // next_permutation on the one-line form
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| images[i] < images[i + 1])
            else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| images[j] > images[i]).unwrap();
            images.swap(i, j);
            images[i + 1..].reverse();
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", strs.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reversal_is_involution() {
        let w = Perm::interval_reversal(2, 5, 6).unwrap();
        assert_eq!(w.compose(&w), Perm::identity(6));
        assert_eq!(w.as_interval_reversal(), Some((2, 5)));
    }

    #[test]
    fn compose_right_to_left() {
        // (w12 ∘ w23)(3) = w12(w23(3)) = w12(2) = 1
        let w12 = Perm::interval_reversal(1, 2, 3).unwrap();
        let w23 = Perm::interval_reversal(2, 3, 3).unwrap();
        assert_eq!(w12.compose(&w23).apply(3), 1);
    }

    #[test]
    fn reversal_conjugation() {
        // w_{1,3} w_{1,2} w_{2,3} w_{1,2} = e in S_4
        let n = 4;
        let w13 = Perm::interval_reversal(1, 3, n).unwrap();
        let w12 = Perm::interval_reversal(1, 2, n).unwrap();
        let w23 = Perm::interval_reversal(2, 3, n).unwrap();
        let prod = w13.compose(&w12).compose(&w23).compose(&w12);
        assert!(prod.is_identity());
    }

    #[test]
    fn all_perms_count_and_order() {
        let all = Perm::all(4);
        assert_eq!(all.len(), 24);
        assert_eq!(all[0], Perm::identity(4));
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
    }

    #[test]
    fn non_reversal_detected() {
        let g = Perm::from_images(vec![2, 3, 1]).unwrap();
        assert_eq!(g.as_interval_reversal(), None);
    }
}
