//! Bit-packed linear algebra over small prime fields and MeatAxe-style
//! module chopping.
//!
//! Matrices act on row vectors from the right: the image of basis vector
//! `i` under a matrix is its row `i`, and the matrix of "apply `a`, then
//! `b`" is `a * b`.

mod meataxe;

pub use meataxe::{
    chop, chop_with_budget, fixed_space, isomorphic, random_algebra_element, spin_up, split,
    standard_basis,
    ChopEntry, ChopError, ChopOutcome, ChopResult, Module, MtxError, Rng, SplitOutcome,
};

use std::fmt;
use std::io::{Read, Write};
use std::marker::PhantomData;

use rayon::prelude::*;

use crate::field::Felt;

/// A dense matrix over `F`, rows packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PackedMatrix<F: Felt> {
    rows: usize,
    cols: usize,
    /// words per plane
    w: usize,
    data: Vec<u64>,
    _field: PhantomData<F>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("bad matrix header: {0}")]
    Header(String),
    #[error("field mismatch: file has q={found}, expected q={expected}")]
    Field { found: u64, expected: u64 },
    #[error("bad matrix body at row {0}")]
    Body(usize),
    #[error("io error: {0}")]
    Io(String),
}

impl<F: Felt> PackedMatrix<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        let w = cols.div_ceil(64).max(1);
        PackedMatrix {
            rows,
            cols,
            w,
            data: vec![0; rows * w * F::PLANES],
            _field: PhantomData,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn stride(&self) -> usize {
        self.w * F::PLANES
    }

    pub fn row(&self, i: usize) -> &[u64] {
        let s = self.stride();
        &self.data[i * s..(i + 1) * s]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u64] {
        let s = self.stride();
        &mut self.data[i * s..(i + 1) * s]
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        F::row_get(self.row(i), self.w, j)
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        let w = self.w;
        F::row_set(self.row_mut(i), w, j, v);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row(i).iter().all(|&x| x == 0)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut m = Self::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                if !v.is_zero() {
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    /// `dst_row += s * src_row` where `src` is a packed row of matching width.
    pub fn row_addmul_from(&mut self, i: usize, src: &[u64], s: F) {
        let w = self.w;
        F::row_addmul(self.row_mut(i), src, w, s);
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let mut out = self.clone();
        for i in 0..self.rows {
            out.row_addmul_from(i, other.row(i), F::one());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let mut out = self.clone();
        for i in 0..self.rows {
            out.row_addmul_from(i, other.row(i), F::one().neg());
        }
        out
    }

    pub fn scale(&self, s: F) -> Self {
        let mut out = self.clone();
        let w = out.w;
        for i in 0..out.rows {
            F::row_scale(out.row_mut(i), w, s);
        }
        out
    }

    pub fn mat_mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = Self::zero(self.rows, other.cols);
        let s = out.stride();
        let w = out.w;
        let mut buf = std::mem::take(&mut out.data);
        let fill_row = |i: usize, dst: &mut [u64]| {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if !a.is_zero() {
                    F::row_addmul(dst, other.row(k), w, a);
                }
            }
        };
        if self.rows >= 256 {
            buf.par_chunks_mut(s)
                .enumerate()
                .for_each(|(i, dst)| fill_row(i, dst));
        } else {
            for (i, dst) in buf.chunks_mut(s).enumerate() {
                fill_row(i, dst);
            }
        }
        out.data = buf;
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if !v.is_zero() {
                    out.set(j, i, v);
                }
            }
        }
        out
    }

    pub fn vstack(blocks: &[&Self]) -> Self {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let mut out = Self::zero(rows, cols);
        let mut at = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            for i in 0..b.rows {
                out.row_mut(at).copy_from_slice(b.row(i));
                at += 1;
            }
        }
        out
    }

    pub fn submatrix_rows(&self, rows: &[usize]) -> Self {
        let mut out = Self::zero(rows.len(), self.cols);
        for (k, &i) in rows.iter().enumerate() {
            out.row_mut(k).copy_from_slice(self.row(i));
        }
        out
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    /// Deterministic: leftmost pivot, first available row, full reduction.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let mut pivot = None;
            for i in r..self.rows {
                if !self.get(i, c).is_zero() {
                    pivot = Some(i);
                    break;
                }
            }
            let Some(p) = pivot else { continue };
            self.swap_rows(r, p);
            let inv = self.get(r, c).inv();
            let w = self.w;
            F::row_scale(self.row_mut(r), w, inv);
            let src = self.row(r).to_vec();
            for i in 0..self.rows {
                if i != r {
                    let v = self.get(i, c);
                    if !v.is_zero() {
                        self.row_addmul_from(i, &src, v.neg());
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let s = self.stride();
        let (lo, hi) = (a.min(b), a.max(b));
        let (left, right) = self.data.split_at_mut(hi * s);
        left[lo * s..(lo + 1) * s].swap_with_slice(&mut right[..s]);
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Right kernel: rows of the result are a basis of `{x : self * x^T = 0}`.
    pub fn nullspace(&self) -> Self {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = Self::zero(free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, F::one());
            for (r, &pc) in pivots.iter().enumerate() {
                let v = m.get(r, fc);
                if !v.is_zero() {
                    out.set(k, pc, v.neg());
                }
            }
        }
        out
    }

    /// Left nullspace: rows of the result are a basis of `{v : v * self = 0}`.
    pub fn left_nullspace(&self) -> Self {
        self.transpose().nullspace()
    }

    /// Inverse of a square invertible matrix, or None if singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Self::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                let v = self.get(i, j);
                if !v.is_zero() {
                    aug.set(i, j, v);
                }
            }
            aug.set(i, n + i, F::one());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut out = Self::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = aug.get(i, n + j);
                if !v.is_zero() {
                    out.set(i, j, v);
                }
            }
        }
        Some(out)
    }

    pub fn trace(&self) -> F {
        assert_eq!(self.rows, self.cols);
        let mut t = F::zero();
        for i in 0..self.rows {
            t = t.add(self.get(i, i));
        }
        t
    }

    /// Matrix text format: header `MTX q rows cols`, then one row per line
    /// written as digits without separators.
    pub fn write_text(&self, out: &mut impl Write) -> Result<(), FormatError> {
        let io = |e: std::io::Error| FormatError::Io(e.to_string());
        writeln!(out, "MTX {} {} {}", F::Q, self.rows, self.cols).map_err(io)?;
        let mut line = String::with_capacity(self.cols + 1);
        for i in 0..self.rows {
            line.clear();
            for j in 0..self.cols {
                line.push((b'0' + self.get(i, j).to_u8()) as char);
            }
            writeln!(out, "{line}").map_err(io)?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_text(&mut buf).expect("write to Vec cannot fail");
        String::from_utf8(buf).expect("ascii")
    }

    pub fn read_text(input: &str) -> Result<Self, FormatError> {
        let mut lines = input.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| FormatError::Header("empty".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 4 || fields[0] != "MTX" {
            return Err(FormatError::Header(header.into()));
        }
        let q: u64 = fields[1].parse().map_err(|_| FormatError::Header(header.into()))?;
        if q != F::Q {
            return Err(FormatError::Field { found: q, expected: F::Q });
        }
        let rows: usize = fields[2].parse().map_err(|_| FormatError::Header(header.into()))?;
        let cols: usize = fields[3].parse().map_err(|_| FormatError::Header(header.into()))?;
        let mut m = Self::zero(rows, cols);
        for i in 0..rows {
            let line = lines.next().ok_or(FormatError::Body(i))?;
            let line = line.trim();
            if line.len() != cols {
                return Err(FormatError::Body(i));
            }
            for (j, ch) in line.bytes().enumerate() {
                let v = ch.wrapping_sub(b'0');
                if u64::from(v) >= F::Q {
                    return Err(FormatError::Body(i));
                }
                if v != 0 {
                    m.set(i, j, F::from_u8(v));
                }
            }
        }
        Ok(m)
    }

    /// Binary format: magic `MTXB`, little-endian u64 header (q, rows, cols),
    /// then each row packed little-endian at 1 bit (GF2) or 2 bits (GF3) per
    /// entry, padded to a byte boundary.
    pub fn write_binary(&self, out: &mut impl Write) -> Result<(), FormatError> {
        let io = |e: std::io::Error| FormatError::Io(e.to_string());
        out.write_all(b"MTXB").map_err(io)?;
        for v in [F::Q, self.rows as u64, self.cols as u64] {
            out.write_all(&v.to_le_bytes()).map_err(io)?;
        }
        let bits = if F::Q == 2 { 1 } else { 2 };
        let bytes_per_row = (self.cols * bits).div_ceil(8);
        let mut buf = vec![0u8; bytes_per_row];
        for i in 0..self.rows {
            buf.fill(0);
            for j in 0..self.cols {
                let v = self.get(i, j).to_u8();
                let bit = j * bits;
                buf[bit / 8] |= v << (bit % 8);
            }
            out.write_all(&buf).map_err(io)?;
        }
        Ok(())
    }

    pub fn read_binary(input: &mut impl Read) -> Result<Self, FormatError> {
        let io = |e: std::io::Error| FormatError::Io(e.to_string());
        let mut magic = [0u8; 4];
        input.read_exact(&mut magic).map_err(io)?;
        if &magic != b"MTXB" {
            return Err(FormatError::Header("bad magic".into()));
        }
        let mut word = [0u8; 8];
        let mut next = |input: &mut dyn Read| -> Result<u64, FormatError> {
            input.read_exact(&mut word).map_err(|e| FormatError::Io(e.to_string()))?;
            Ok(u64::from_le_bytes(word))
        };
        let q = next(input)?;
        if q != F::Q {
            return Err(FormatError::Field { found: q, expected: F::Q });
        }
        let rows = next(input)? as usize;
        let cols = next(input)? as usize;
        let bits = if F::Q == 2 { 1 } else { 2 };
        let bytes_per_row = (cols * bits).div_ceil(8);
        let mut m = Self::zero(rows, cols);
        let mut buf = vec![0u8; bytes_per_row];
        for i in 0..rows {
            input.read_exact(&mut buf).map_err(io)?;
            for j in 0..cols {
                let bit = j * bits;
                let v = (buf[bit / 8] >> (bit % 8)) & ((1 << bits) - 1);
                if u64::from(v) >= F::Q {
                    return Err(FormatError::Body(i));
                }
                if v != 0 {
                    m.set(i, j, F::from_u8(v));
                }
            }
        }
        Ok(m)
    }
}

impl<F: Felt> fmt::Debug for PackedMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PackedMatrix(q={}, {}x{})", F::Q, self.rows, self.cols)?;
        for i in 0..self.rows.min(32) {
            for j in 0..self.cols.min(64) {
                write!(f, "{}", self.get(i, j).to_u8())?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
