//! Exact arithmetic in the real octonion algebra on half-integer
//! coordinates.
//!
//! An element (d1 + d2*e2 + ... + d8*e8)/2 stores its doubled coordinates
//! d1..d8 as integers, so no floating point appears anywhere. The product
//! is built by Cayley-Dickson doubling from the complex numbers,
//! (a, b)(c, d) = (ac - conj(d)b, da + b conj(c)), with e_{i+1} mapped to
//! the i-th doubled basis element. Any consistent sign convention
//! satisfies the identities used here (norm multiplicativity,
//! w^2 = w - 2, the XOR index law up to sign); one convention is fixed
//! for reproducibility.

use crate::error::{Error, Result};
use crate::zw::ZwInt;
use num::rational::Ratio;
use std::fmt;

/// An octonion with half-integer coordinates, stored doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Octonion {
    d: [i64; 8],
}

impl Octonion {
    pub const ZERO: Octonion = Octonion { d: [0; 8] };
    pub const ONE: Octonion = Octonion {
        d: [2, 0, 0, 0, 0, 0, 0, 0],
    };

    /// w = (1 + e2 + ... + e8)/2: every doubled coordinate is 1.
    pub fn omega() -> Octonion {
        Octonion { d: [1; 8] }
    }

    /// Builds an element from doubled coordinates.
    pub fn from_doubled(d: [i64; 8]) -> Octonion {
        Octonion { d }
    }

    /// Builds an element with integer coordinates.
    pub fn from_integers(coords: [i64; 8]) -> Result<Octonion> {
        let mut d = [0i64; 8];
        for (slot, c) in d.iter_mut().zip(coords) {
            *slot = c.checked_mul(2).ok_or(Error::Overflow)?;
        }
        Ok(Octonion { d })
    }

    /// The basis element e_i for i in 2..=8; i = 1 gives the unit.
    pub fn basis(i: usize) -> Octonion {
        assert!((1..=8).contains(&i), "basis index must be in 1..=8");
        let mut d = [0i64; 8];
        d[i - 1] = 2;
        Octonion { d }
    }

    /// Embeds a + bw into the octonions.
    pub fn embed_zw(a: i64, b: i64) -> Result<Octonion> {
        let d1 = a
            .checked_mul(2)
            .and_then(|t| t.checked_add(b))
            .ok_or(Error::Overflow)?;
        Ok(Octonion {
            d: [d1, b, b, b, b, b, b, b],
        })
    }

    pub fn doubled(&self) -> &[i64; 8] {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.d.iter().all(|&c| c == 0)
    }

    /// True when the element lies in the image of `embed_zw`.
    pub fn to_zw(&self) -> Option<ZwInt> {
        let b = self.d[1];
        if self.d[2..].iter().any(|&c| c != b) {
            return None;
        }
        let two_a = self.d[0].checked_sub(b)?;
        if two_a % 2 != 0 {
            return None;
        }
        Some(ZwInt::new(two_a / 2, b))
    }

    pub fn add(&self, other: &Octonion) -> Result<Octonion> {
        let mut d = [0i64; 8];
        for (slot, (x, y)) in d.iter_mut().zip(self.d.iter().zip(&other.d)) {
            *slot = x.checked_add(*y).ok_or(Error::Overflow)?;
        }
        Ok(Octonion { d })
    }

    pub fn sub(&self, other: &Octonion) -> Result<Octonion> {
        let mut d = [0i64; 8];
        for (slot, (x, y)) in d.iter_mut().zip(self.d.iter().zip(&other.d)) {
            *slot = x.checked_sub(*y).ok_or(Error::Overflow)?;
        }
        Ok(Octonion { d })
    }

    pub fn neg(&self) -> Result<Octonion> {
        let mut d = [0i64; 8];
        for (slot, x) in d.iter_mut().zip(&self.d) {
            *slot = x.checked_neg().ok_or(Error::Overflow)?;
        }
        Ok(Octonion { d })
    }

    /// Conjugation: the real part is kept, all seven imaginary
    /// coordinates are negated, so x * conj(x) = N(x).
    pub fn conj(&self) -> Result<Octonion> {
        let mut d = self.d;
        for c in d.iter_mut().skip(1) {
            *c = c.checked_neg().ok_or(Error::Overflow)?;
        }
        Ok(Octonion { d })
    }

    /// The octonion product.
    ///
    /// Products of half-integer octonions generally have quarter-integer
    /// coordinates; those outside the half-integer lattice are rejected
    /// rather than silently rounded. Every element of the subring
    /// generated by the integer octonions and w stays representable.
    pub fn mul(&self, other: &Octonion) -> Result<Octonion> {
        let x = self.d.map(i128::from);
        let y = other.d.map(i128::from);
        let quad = mul8(&x, &y).ok_or(Error::Overflow)?;
        let mut d = [0i64; 8];
        for (slot, q) in d.iter_mut().zip(&quad) {
            if q % 2 != 0 {
                return Err(Error::NotHalfInteger);
            }
            *slot = i64::try_from(q / 2).map_err(|_| Error::Overflow)?;
        }
        Ok(Octonion { d })
    }

    /// N(x) = sum of the squared coordinates, as an exact rational.
    pub fn norm(&self) -> Result<Ratio<i64>> {
        let mut quad: i128 = 0;
        for &c in &self.d {
            let c = c as i128;
            quad = quad.checked_add(c * c).ok_or(Error::Overflow)?;
        }
        let quad = i64::try_from(quad).map_err(|_| Error::Overflow)?;
        Ok(Ratio::new(quad, 4))
    }

    /// Left-associated power; the algebra is power-associative, so the
    /// bracketing does not matter.
    pub fn pow(&self, e: u32) -> Result<Octonion> {
        let mut acc = Octonion::ONE;
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

// One Cayley-Dickson doubling per level: reals -> complex -> quaternions
// -> octonions, with (a, b)(c, d) = (ac - conj(d)b, da + b conj(c)) and
// conj(a, b) = (conj(a), -b).

fn conj2(x: &[i128; 2]) -> [i128; 2] {
    [x[0], -x[1]]
}

fn conj4(x: &[i128; 4]) -> [i128; 4] {
    [x[0], -x[1], -x[2], -x[3]]
}

fn mul2(x: &[i128; 2], y: &[i128; 2]) -> Option<[i128; 2]> {
    let re = x[0]
        .checked_mul(y[0])?
        .checked_sub(y[1].checked_mul(x[1])?)?;
    let im = y[1]
        .checked_mul(x[0])?
        .checked_add(x[1].checked_mul(y[0])?)?;
    Some([re, im])
}

fn mul4(x: &[i128; 4], y: &[i128; 4]) -> Option<[i128; 4]> {
    let (a, b) = ([x[0], x[1]], [x[2], x[3]]);
    let (c, d) = ([y[0], y[1]], [y[2], y[3]]);
    let lo = sub2(&mul2(&a, &c)?, &mul2(&conj2(&d), &b)?)?;
    let hi = add2(&mul2(&d, &a)?, &mul2(&b, &conj2(&c))?)?;
    Some([lo[0], lo[1], hi[0], hi[1]])
}

fn mul8(x: &[i128; 8], y: &[i128; 8]) -> Option<[i128; 8]> {
    let a = [x[0], x[1], x[2], x[3]];
    let b = [x[4], x[5], x[6], x[7]];
    let c = [y[0], y[1], y[2], y[3]];
    let d = [y[4], y[5], y[6], y[7]];
    let lo = sub4(&mul4(&a, &c)?, &mul4(&conj4(&d), &b)?)?;
    let hi = add4(&mul4(&d, &a)?, &mul4(&b, &conj4(&c))?)?;
    Some([lo[0], lo[1], lo[2], lo[3], hi[0], hi[1], hi[2], hi[3]])
}

fn add2(x: &[i128; 2], y: &[i128; 2]) -> Option<[i128; 2]> {
    Some([x[0].checked_add(y[0])?, x[1].checked_add(y[1])?])
}

fn sub2(x: &[i128; 2], y: &[i128; 2]) -> Option<[i128; 2]> {
    Some([x[0].checked_sub(y[0])?, x[1].checked_sub(y[1])?])
}

fn add4(x: &[i128; 4], y: &[i128; 4]) -> Option<[i128; 4]> {
    let mut out = [0i128; 4];
    for i in 0..4 {
        out[i] = x[i].checked_add(y[i])?;
    }
    Some(out)
}

fn sub4(x: &[i128; 4], y: &[i128; 4]) -> Option<[i128; 4]> {
    let mut out = [0i128; 4];
    for i in 0..4 {
        out[i] = x[i].checked_sub(y[i])?;
    }
    Some(out)
}

impl fmt::Display for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.d.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if c % 2 == 0 {
                write!(f, "{}", c / 2)?;
            } else {
                write!(f, "{c}/2")?;
            }
        }
        write!(f, ")")
    }
}
