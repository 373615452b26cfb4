//! Packed finite-field scalars.
//!
//! The matrix kernel is generic over a [`Felt`], which couples ordinary
//! element arithmetic with kernels operating on packed 64-bit words.  GF(2)
//! uses one bit per entry; GF(3) uses two parallel bit planes per row (plane
//! 0 flags entries equal to 1, plane 1 entries equal to 2), so that addition
//! and negation work on whole words without unpacking.

use std::fmt::Debug;
use std::hash::Hash;

/// A prime-field scalar with packed-row kernels.
///
/// A packed row consists of `PLANES` consecutive groups of `w` words; the
/// bit for column `c` sits at word `c / 64`, bit `c % 64` of each plane.
/// Kernels must keep padding bits (columns `>= cols`) zero.
pub trait Felt: Copy + Eq + Ord + Hash + Debug + Send + Sync + 'static {
    const Q: u64;
    const PLANES: usize;

    fn from_u8(v: u8) -> Self;
    fn to_u8(self) -> u8;
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(self) -> bool;
    fn add(self, o: Self) -> Self;
    fn sub(self, o: Self) -> Self;
    fn mul(self, o: Self) -> Self;
    fn neg(self) -> Self;
    /// Multiplicative inverse of a nonzero element.
    fn inv(self) -> Self;

    fn row_get(row: &[u64], w: usize, col: usize) -> Self;
    fn row_set(row: &mut [u64], w: usize, col: usize, v: Self);
    /// `dst += s * src` over packed rows.
    fn row_addmul(dst: &mut [u64], src: &[u64], w: usize, s: Self);
    /// `row *= s` in place.
    fn row_scale(row: &mut [u64], w: usize, s: Self);
}

/// The field with two elements.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Gf2(pub u8);

impl Felt for Gf2 {
    const Q: u64 = 2;
    const PLANES: usize = 1;

    fn from_u8(v: u8) -> Self {
        Gf2(v & 1)
    }
    fn to_u8(self) -> u8 {
        self.0
    }
    fn zero() -> Self {
        Gf2(0)
    }
    fn one() -> Self {
        Gf2(1)
    }
    fn is_zero(self) -> bool {
        self.0 == 0
    }
    fn add(self, o: Self) -> Self {
        Gf2(self.0 ^ o.0)
    }
    fn sub(self, o: Self) -> Self {
        Gf2(self.0 ^ o.0)
    }
    fn mul(self, o: Self) -> Self {
        Gf2(self.0 & o.0)
    }
    fn neg(self) -> Self {
        self
    }
    fn inv(self) -> Self {
        debug_assert_ne!(self.0, 0);
        self
    }

    fn row_get(row: &[u64], _w: usize, col: usize) -> Self {
        Gf2(((row[col / 64] >> (col % 64)) & 1) as u8)
    }
    fn row_set(row: &mut [u64], _w: usize, col: usize, v: Self) {
        let mask = 1u64 << (col % 64);
        if v.0 == 1 {
            row[col / 64] |= mask;
        } else {
            row[col / 64] &= !mask;
        }
    }
    fn row_addmul(dst: &mut [u64], src: &[u64], _w: usize, s: Self) {
        if s.0 == 1 {
            for (d, s) in dst.iter_mut().zip(src) {
                *d ^= s;
            }
        }
    }
    fn row_scale(row: &mut [u64], _w: usize, s: Self) {
        if s.0 == 0 {
            row.fill(0);
        }
    }
}

/// The field with three elements, bit-sliced over two planes.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Gf3(pub u8);

/// Word-level mod-3 add on one-hot planes: inputs (a1, a2), (b1, b2) where
/// plane 1 marks value 1 and plane 2 marks value 2 and the planes of a valid
/// row are disjoint.  Output planes stay disjoint.
#[inline]
fn gf3_word_add(a1: u64, a2: u64, b1: u64, b2: u64) -> (u64, u64) {
    let na = !(a1 | a2);
    let nb = !(b1 | b2);
    let c1 = (a1 & nb) | (b1 & na) | (a2 & b2);
    let c2 = (a2 & nb) | (b2 & na) | (a1 & b1);
    (c1, c2)
}

impl Felt for Gf3 {
    const Q: u64 = 3;
    const PLANES: usize = 2;

    fn from_u8(v: u8) -> Self {
        Gf3(v % 3)
    }
    fn to_u8(self) -> u8 {
        self.0
    }
    fn zero() -> Self {
        Gf3(0)
    }
    fn one() -> Self {
        Gf3(1)
    }
    fn is_zero(self) -> bool {
        self.0 == 0
    }
    fn add(self, o: Self) -> Self {
        Gf3((self.0 + o.0) % 3)
    }
    fn sub(self, o: Self) -> Self {
        Gf3((self.0 + 3 - o.0) % 3)
    }
    fn mul(self, o: Self) -> Self {
        Gf3((self.0 * o.0) % 3)
    }
    fn neg(self) -> Self {
        Gf3((3 - self.0) % 3)
    }
    fn inv(self) -> Self {
        debug_assert_ne!(self.0, 0);
        // 1 and 2 are self-inverse mod 3
        self
    }

    fn row_get(row: &[u64], w: usize, col: usize) -> Self {
        let word = col / 64;
        let bit = col % 64;
        let lo = (row[word] >> bit) & 1;
        let hi = (row[w + word] >> bit) & 1;
        Gf3((lo + 2 * hi) as u8)
    }
    fn row_set(row: &mut [u64], w: usize, col: usize, v: Self) {
        let word = col / 64;
        let mask = 1u64 << (col % 64);
        row[word] &= !mask;
        row[w + word] &= !mask;
        match v.0 {
            1 => row[word] |= mask,
            2 => row[w + word] |= mask,
            _ => {}
        }
    }
    fn row_addmul(dst: &mut [u64], src: &[u64], w: usize, s: Self) {
        match s.0 {
            0 => {}
            1 => {
                for i in 0..w {
                    let (c1, c2) = gf3_word_add(dst[i], dst[w + i], src[i], src[w + i]);
                    dst[i] = c1;
                    dst[w + i] = c2;
                }
            }
            _ => {
                // scaling src by 2 swaps its planes
                for i in 0..w {
                    let (c1, c2) = gf3_word_add(dst[i], dst[w + i], src[w + i], src[i]);
                    dst[i] = c1;
                    dst[w + i] = c2;
                }
            }
        }
    }
    fn row_scale(row: &mut [u64], w: usize, s: Self) {
        match s.0 {
            0 => row.fill(0),
            1 => {}
            _ => {
                for i in 0..w {
                    row.swap(i, w + i);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf3_word_add_matches_scalar_add() {
        // exhaustive over the 9 valid per-bit combinations in parallel lanes
        for a in 0u8..3 {
            for b in 0u8..3 {
                let a1 = if a == 1 { !0u64 } else { 0 };
                let a2 = if a == 2 { !0u64 } else { 0 };
                let b1 = if b == 1 { !0u64 } else { 0 };
                let b2 = if b == 2 { !0u64 } else { 0 };
                let (c1, c2) = gf3_word_add(a1, a2, b1, b2);
                let s = (a + b) % 3;
                assert_eq!(c1, if s == 1 { !0 } else { 0 });
                assert_eq!(c2, if s == 2 { !0 } else { 0 });
                assert_eq!(c1 & c2, 0, "planes must stay disjoint");
            }
        }
    }

    #[test]
    fn field_axioms_small() {
        for a in 0u8..3 {
            for b in 0u8..3 {
                let x = Gf3(a);
                let y = Gf3(b);
                assert_eq!(x.add(y).sub(y), x);
                if !y.is_zero() {
                    assert_eq!(x.mul(y).mul(y.inv()), x);
                }
            }
        }
        assert_eq!(Gf2(1).add(Gf2(1)), Gf2(0));
    }
}
