//! Finitely supported exponent vectors indexed by positions `1, 2, ...`,
//! with the weight and the orders used for leading terms.

use crate::error::{Error, Result};
use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ExpVec {
    /// `entries[p - 1]` is the exponent at position `p`; no trailing zeros.
    entries: Vec<u32>,
}

impl ExpVec {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit vector at position `p >= 1`.
    pub fn unit(p: usize) -> Self {
        let mut v = Self::zero();
        v.bump(p, 1);
        v
    }

    pub fn from_entries(entries: &[u32]) -> Self {
        let mut v = ExpVec { entries: entries.to_vec() };
        v.trim();
        v
    }

    fn trim(&mut self) {
        while self.entries.last() == Some(&0) {
            self.entries.pop();
        }
    }

    pub fn get(&self, p: usize) -> u32 {
        assert!(p >= 1, "positions start at 1");
        self.entries.get(p - 1).copied().unwrap_or(0)
    }

    pub fn bump(&mut self, p: usize, by: u32) {
        assert!(p >= 1, "positions start at 1");
        if self.entries.len() < p {
            self.entries.resize(p, 0);
        }
        self.entries[p - 1] += by;
        self.trim();
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Smallest position with a nonzero entry.
    pub fn min_position(&self) -> Option<usize> {
        self.entries.iter().position(|&e| e != 0).map(|i| i + 1)
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn add(&self, other: &ExpVec) -> ExpVec {
        let n = self.entries.len().max(other.entries.len());
        let entries = (1..=n).map(|p| self.get(p) + other.get(p)).collect::<Vec<_>>();
        ExpVec::from_entries(&entries)
    }

    /// Partial subtraction; fails if an entry would go negative.
    pub fn checked_sub(&self, other: &ExpVec) -> Result<ExpVec> {
        let n = self.entries.len().max(other.entries.len());
        let mut entries = Vec::with_capacity(n);
        for p in 1..=n {
            let (a, b) = (self.get(p), other.get(p));
            if b > a {
                return Err(Error::Unsupported(format!("{self} - {other} leaves the monoid")));
            }
            entries.push(a - b);
        }
        Ok(ExpVec::from_entries(&entries))
    }
}

/// `w(i) = sum_p p * i_p`.
pub fn weight(i: &ExpVec) -> u64 {
    i.entries.iter().enumerate().map(|(k, &e)| (k as u64 + 1) * e as u64).sum()
}

/// Compares entries from position 1 upward; the first difference decides.
pub fn cmp_revlex(i: &ExpVec, j: &ExpVec) -> Ordering {
    let n = i.entries.len().max(j.entries.len());
    for p in 1..=n {
        match i.get(p).cmp(&j.get(p)) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

pub type Pair = (ExpVec, ExpVec);

/// Total weight, then weight of the second component, then the second
/// component, then the first.
pub fn cmp_pair(a: &Pair, b: &Pair) -> Ordering {
    (weight(&a.0) + weight(&a.1))
        .cmp(&(weight(&b.0) + weight(&b.1)))
        .then_with(|| weight(&a.1).cmp(&weight(&b.1)))
        .then_with(|| cmp_revlex(&a.1, &b.1))
        .then_with(|| cmp_revlex(&a.0, &b.0))
}

/// The same order with the two components swapped.
pub fn cmp_pair_prime(a: &Pair, b: &Pair) -> Ordering {
    cmp_pair(&(a.1.clone(), a.0.clone()), &(b.1.clone(), b.0.clone()))
}

impl fmt::Display for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &e) in self.entries.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            if e == 1 {
                write!(f, "e{}", k + 1)?;
            } else {
                write!(f, "{}e{}", e, k + 1)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ExpVec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(p: usize) -> ExpVec {
        ExpVec::unit(p)
    }

    #[test]
    fn weights() {
        assert_eq!(weight(&ExpVec::zero()), 0);
        assert_eq!(weight(&e(3)), 3);
        assert_eq!(weight(&e(1).add(&e(1)).add(&e(2))), 4);
    }

    #[test]
    fn revlex_examples() {
        assert_eq!(cmp_revlex(&ExpVec::zero(), &e(1)), Ordering::Less);
        assert_eq!(cmp_revlex(&e(2), &e(1)), Ordering::Less);
        assert_eq!(cmp_revlex(&e(4), &e(4)), Ordering::Equal);
    }

    #[test]
    fn pair_examples() {
        let z = ExpVec::zero;
        assert_eq!(cmp_pair(&(z(), z()), &(z(), e(1))), Ordering::Less);
        assert_eq!(cmp_pair(&(e(1), z()), &(z(), e(1))), Ordering::Less);
        assert_eq!(cmp_pair_prime(&(e(1), z()), &(z(), e(1))), Ordering::Greater);
    }

    #[test]
    fn partial_subtraction() {
        let a = e(1).add(&e(2));
        assert_eq!(a.checked_sub(&e(2)).unwrap(), e(1));
        assert!(e(1).checked_sub(&e(2)).is_err());
    }
}
