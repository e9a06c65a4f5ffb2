//! Arithmetic in the commutative ring Z[w] = {a + b*w : a, b integers},
//! where w = (1 + e2 + ... + e8)/2 satisfies w^2 = w - 2 and N(w) = 2.
//!
//! The ring is norm-Euclidean: `divmod` always produces a remainder of
//! strictly smaller norm than the divisor. Rational primes p = 7k + 1
//! split as p = pi * conj(pi) with N(pi) = p; `find_prime` locates a
//! canonical such pi by bounded search.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// An element a + b*w of Z[w], in exact integer coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZwInt {
    pub a: i64,
    pub b: i64,
}

impl ZwInt {
    pub const ZERO: ZwInt = ZwInt { a: 0, b: 0 };
    pub const ONE: ZwInt = ZwInt { a: 1, b: 0 };
    pub const OMEGA: ZwInt = ZwInt { a: 0, b: 1 };

    pub fn new(a: i64, b: i64) -> Self {
        ZwInt { a, b }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn add(&self, other: &ZwInt) -> Result<ZwInt> {
        Ok(ZwInt {
            a: self.a.checked_add(other.a).ok_or(Error::Overflow)?,
            b: self.b.checked_add(other.b).ok_or(Error::Overflow)?,
        })
    }

    pub fn sub(&self, other: &ZwInt) -> Result<ZwInt> {
        Ok(ZwInt {
            a: self.a.checked_sub(other.a).ok_or(Error::Overflow)?,
            b: self.b.checked_sub(other.b).ok_or(Error::Overflow)?,
        })
    }

    pub fn neg(&self) -> Result<ZwInt> {
        Ok(ZwInt {
            a: self.a.checked_neg().ok_or(Error::Overflow)?,
            b: self.b.checked_neg().ok_or(Error::Overflow)?,
        })
    }

    /// (a + bw)(c + dw) = (ac - 2bd) + (ad + bc + bd)w, using w^2 = w - 2.
    pub fn mul(&self, other: &ZwInt) -> Result<ZwInt> {
        let (a, b) = (self.a as i128, self.b as i128);
        let (c, d) = (other.a as i128, other.b as i128);
        let ra = a * c - 2 * b * d;
        let rb = a * d + b * c + b * d;
        Ok(ZwInt {
            a: i64::try_from(ra).map_err(|_| Error::Overflow)?,
            b: i64::try_from(rb).map_err(|_| Error::Overflow)?,
        })
    }

    /// conj(a + bw) = (a + b) - bw, since conj(w) = 1 - w.
    pub fn conj(&self) -> Result<ZwInt> {
        Ok(ZwInt {
            a: self.a.checked_add(self.b).ok_or(Error::Overflow)?,
            b: self.b.checked_neg().ok_or(Error::Overflow)?,
        })
    }

    /// N(a + bw) = a^2 + ab + 2b^2, always nonnegative.
    pub fn norm(&self) -> Result<i64> {
        i64::try_from(self.norm_wide()).map_err(|_| Error::Overflow)
    }

    fn norm_wide(&self) -> i128 {
        let (a, b) = (self.a as i128, self.b as i128);
        a * a + a * b + 2 * b * b
    }

    /// The units of Z[w] are exactly +1 and -1 (the only norm-1 elements).
    pub fn is_unit(&self) -> bool {
        self.norm_wide() == 1
    }

    /// Euclidean division: returns (q, v) with self = q*other + v and
    /// N(v) < N(other).
    ///
    /// The quotient is x*conj(y)/N(y) with both coordinates rounded half
    /// away from zero. When that lands on the boundary of the fundamental
    /// cell (possible only at double half-ties, where the cell reaches
    /// norm exactly 1), the eight neighboring quotients are probed and
    /// the minimal-norm remainder wins, ties broken lexicographically on
    /// the remainder's (a, b).
    pub fn divmod(&self, other: &ZwInt) -> Result<(ZwInt, ZwInt)> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let den = other.norm_wide();
        let (a, b) = (self.a as i128, self.b as i128);
        let (c, d) = (other.a as i128, other.b as i128);
        // x * conj(y) with conj(y) = (c + d, -d)
        let num_a = a * (c + d) + 2 * b * d;
        let num_b = -a * d + b * (c + d) - b * d;
        let qa = round_half_away(num_a, den);
        let qb = round_half_away(num_b, den);

        let residue = |qa: i128, qb: i128| -> (i128, i128) {
            // v = x - q*y in wide arithmetic
            let va = a - (qa * c - 2 * qb * d);
            let vb = b - (qa * d + qb * c + qb * d);
            (va, vb)
        };
        let wide_norm = |va: i128, vb: i128| va * va + va * vb + 2 * vb * vb;

        let (va, vb) = residue(qa, qb);
        let (mut best_q, mut best_v, mut best_n) = ((qa, qb), (va, vb), wide_norm(va, vb));
        if best_n >= den {
            for dqa in -1..=1i128 {
                for dqb in -1..=1i128 {
                    if dqa == 0 && dqb == 0 {
                        continue;
                    }
                    let cand_q = (qa + dqa, qb + dqb);
                    let (va, vb) = residue(cand_q.0, cand_q.1);
                    let n = wide_norm(va, vb);
                    if n < best_n || (n == best_n && (va, vb) < best_v) {
                        best_q = cand_q;
                        best_v = (va, vb);
                        best_n = n;
                    }
                }
            }
            // Z[w] is norm-Euclidean, so a valid quotient always sits in
            // the probed neighborhood.
            assert!(best_n < den, "no Euclidean quotient near the rounded point");
        }
        let q = ZwInt {
            a: i64::try_from(best_q.0).map_err(|_| Error::Overflow)?,
            b: i64::try_from(best_q.1).map_err(|_| Error::Overflow)?,
        };
        let v = ZwInt {
            a: i64::try_from(best_v.0).map_err(|_| Error::Overflow)?,
            b: i64::try_from(best_v.1).map_err(|_| Error::Overflow)?,
        };
        Ok((q, v))
    }
}

/// Round num/den to the nearest integer, halves away from zero. den > 0.
fn round_half_away(num: i128, den: i128) -> i128 {
    debug_assert!(den > 0);
    let r = num.rem_euclid(den);
    let floor = (num - r) / den;
    match (2 * r).cmp(&den) {
        std::cmp::Ordering::Less => floor,
        std::cmp::Ordering::Greater => floor + 1,
        std::cmp::Ordering::Equal => {
            if num >= 0 {
                floor + 1
            } else {
                floor
            }
        }
    }
}

/// Deterministic trial-division primality check, adequate at desk scale.
pub(crate) fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3i64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Finds pi = a + bw with N(pi) = p for a prime p = 7k + 1.
///
/// The search uses 4p = (2a + b)^2 + 7b^2, so |b| <= sqrt(4p/7). Among
/// all representations the canonical one has smallest |b|, then smallest
/// |a|, then positive b, then positive a.
pub fn find_prime(p: i64) -> Result<ZwInt> {
    if !is_prime(p) || p % 7 != 1 {
        return Err(Error::NotSplitPrime { p });
    }
    let bmax = ((4 * p / 7) as f64).sqrt() as i64 + 1;
    let mut candidates = Vec::new();
    for b in -bmax..=bmax {
        // a^2 + ab + (2b^2 - p) = 0
        let disc = b * b - 4 * (2 * b * b - p);
        if disc < 0 {
            continue;
        }
        let root = (disc as f64).sqrt() as i64;
        for r in [root - 1, root, root + 1] {
            if r >= 0 && r * r == disc {
                for sign in [1, -1] {
                    let num = -b + sign * r;
                    if num % 2 == 0 {
                        let a = num / 2;
                        let cand = ZwInt::new(a, b);
                        if cand.norm()? == p {
                            candidates.push(cand);
                        }
                    }
                }
            }
        }
    }
    candidates.sort_by_key(|z| (z.b.abs(), z.a.abs(), z.b < 0, z.a < 0));
    candidates.dedup();
    candidates
        .first()
        .copied()
        .ok_or(Error::NotSplitPrime { p })
}

impl fmt::Display for ZwInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (0, 0) => write!(f, "0"),
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "w"),
            (0, -1) => write!(f, "-w"),
            (0, b) => write!(f, "{b}w"),
            (a, 1) => write!(f, "{a}+w"),
            (a, -1) => write!(f, "{a}-w"),
            (a, b) if b > 0 => write!(f, "{a}+{b}w"),
            (a, b) => write!(f, "{a}-{}w", -b),
        }
    }
}
