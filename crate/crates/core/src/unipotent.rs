//! Arithmetic in the full unipotent subgroup U over F2 via collection.
//!
//! An element is a bit vector over the positive roots in the fixed root
//! order: bit `r` set means the normal form contains the root element
//! `x_r`, and the normal form is the product of the set bits in ascending
//! order.  Collection moves letters into this order using the commutator
//! table; commutators raise height, so the process terminates.

use crate::rootdata::{RootError, RootSystem, WeylElement};

/// A unipotent element in normal form (bit vector over the positive roots).
pub type UElt = u64;

pub struct UGroup<'a> {
    pub rs: &'a RootSystem,
    /// optional left-multiplication tables per simple root, indexed by
    /// element; built only when 2^nroots is below the gate
    left_tables: Option<Vec<Vec<u32>>>,
}

impl<'a> UGroup<'a> {
    pub fn new(rs: &'a RootSystem) -> Self {
        UGroup {
            rs,
            left_tables: None,
        }
    }

    /// Precompute left multiplication by each simple root element for all of
    /// U.  Falls back silently when 2^nroots exceeds the gate.
    pub fn with_tables(rs: &'a RootSystem, gate: u64) -> Self {
        let mut g = UGroup::new(rs);
        if rs.nroots < 32 && (1u64 << rs.nroots) <= gate {
            let size = 1usize << rs.nroots;
            let mut tables = Vec::with_capacity(rs.rank);
            for i in 0..rs.rank {
                let alpha = rs.simple_index(i);
                let mut t = vec![0u32; size];
                for (u, slot) in t.iter_mut().enumerate() {
                    *slot = g.mul(1 << alpha, u as UElt) as u32;
                }
                tables.push(t);
            }
            g.left_tables = Some(tables);
        }
        g
    }

    pub fn identity(&self) -> UElt {
        0
    }

    /// Multiply `a` (normal form) on the right by the single letter `x_r`.
    fn mul_letter(&self, a: UElt, r: usize) -> UElt {
        let above = a >> (r + 1) << (r + 1);
        if above == 0 {
            return a ^ (1 << r);
        }
        // a = head * tail with tail the letters above r;
        // a x_r = (head x_r) * prod over t in tail of x_t [x_t, x_r]
        let mut acc = (a ^ above) ^ (1 << r);
        let mut tail = above;
        while tail != 0 {
            let t = tail.trailing_zeros() as usize;
            tail &= tail - 1;
            acc = self.mul_letter(acc, t);
            for letter in self.rs.commutator_letters(t, r) {
                acc = self.mul_letter(acc, letter);
            }
        }
        acc
    }

    /// Product of two normal forms.
    pub fn mul(&self, a: UElt, b: UElt) -> UElt {
        let mut acc = a;
        let mut rest = b;
        while rest != 0 {
            let r = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            acc = self.mul_letter(acc, r);
        }
        acc
    }

    pub fn inverse(&self, a: UElt) -> UElt {
        // letters are involutions; the inverse is the reversed product
        let mut acc = 0;
        let mut rest = a;
        while rest != 0 {
            let r = 63 - rest.leading_zeros() as usize;
            rest &= !(1u64 << r);
            acc = self.mul_letter(acc, r);
        }
        acc
    }

    /// Left multiplication by the simple root element `x_{alpha_i}`.
    pub fn left_mul_simple(&self, i: usize, u: UElt) -> UElt {
        if let Some(tables) = &self.left_tables {
            return u64::from(tables[i][u as usize]);
        }
        let alpha = self.rs.simple_index(i);
        self.mul(1 << alpha, u)
    }

    /// Conjugate `u` by a Weyl element: every support root is sent through
    /// the permutation and the result re-collected.  Errors if any support
    /// root goes negative.
    pub fn weyl_conjugate(&self, u: UElt, w: &WeylElement) -> Result<UElt, RootError> {
        let mut acc = 0;
        let mut rest = u;
        while rest != 0 {
            let r = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let img = w.apply(r);
            if img >= self.rs.nroots {
                return Err(RootError::SupportGoesNegative);
            }
            acc = self.mul_letter(acc, img);
        }
        Ok(acc)
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum TransversalError {
    #[error("coset map is not constant on cosets at element {0:#x}")]
    NotConstant(UElt),
    #[error("subgroup roots do not commute pairwise")]
    NotAbelian,
}

/// Coset representatives for U/V where V is spanned by a root subset that
/// commutes pairwise and is closed under commutation with U: the
/// representative of `u` zeroes out the V positions of its normal form.
pub struct CosetTransversal {
    pub v_mask: u64,
    pub v_roots: Vec<usize>,
    pub free_positions: Vec<usize>,
}

impl CosetTransversal {
    /// Build and validate: the zeroing map must be constant on cosets,
    /// checked exhaustively for small U and on 100k random pairs otherwise.
    pub fn build(u: &UGroup, v_roots: &[usize]) -> Result<Self, TransversalError> {
        let mut v_mask = 0u64;
        for &r in v_roots {
            v_mask |= 1 << r;
        }
        for &a in v_roots {
            for &b in v_roots {
                if a != b && u.rs.commutator_letters(a, b).next().is_some() {
                    return Err(TransversalError::NotAbelian);
                }
            }
        }
        let free_positions: Vec<usize> =
            (0..u.rs.nroots).filter(|r| v_mask & (1 << r) == 0).collect();
        let t = CosetTransversal {
            v_mask,
            v_roots: v_roots.to_vec(),
            free_positions,
        };
        t.validate(u)?;
        Ok(t)
    }

    fn validate(&self, u: &UGroup) -> Result<(), TransversalError> {
        let n = u.rs.nroots;
        let k = self.v_roots.len();
        if n <= 14 {
            for elt in 0..(1u64 << n) {
                for vbits in 0..(1u64 << k) {
                    let v = self.spread_v(vbits);
                    if self.rep(u.mul(elt, v)) != self.rep(elt) {
                        return Err(TransversalError::NotConstant(elt));
                    }
                }
            }
        } else {
            let mut state = 0x853c49e6748fea9bu64;
            let mut next = move || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                state
            };
            for _ in 0..100_000 {
                let elt = next() & ((1u64 << n) - 1);
                let v = self.spread_v(next() & ((1u64 << k) - 1));
                if self.rep(u.mul(elt, v)) != self.rep(elt) {
                    return Err(TransversalError::NotConstant(elt));
                }
            }
        }
        Ok(())
    }

    fn spread_v(&self, vbits: u64) -> UElt {
        let mut v = 0;
        for (i, &r) in self.v_roots.iter().enumerate() {
            if vbits & (1 << i) != 0 {
                v |= 1 << r;
            }
        }
        v
    }

    pub fn rep(&self, u: UElt) -> UElt {
        u & !self.v_mask
    }

    pub fn count(&self) -> u64 {
        1u64 << self.free_positions.len()
    }

    /// Dense index of a representative.
    pub fn index(&self, rep: UElt) -> usize {
        let mut out = 0usize;
        for (i, &r) in self.free_positions.iter().enumerate() {
            if rep & (1 << r) != 0 {
                out |= 1 << i;
            }
        }
        out
    }

    pub fn element(&self, index: usize) -> UElt {
        let mut out = 0u64;
        for (i, &r) in self.free_positions.iter().enumerate() {
            if index & (1 << i) != 0 {
                out |= 1 << r;
            }
        }
        out
    }

    /// Iterate over the elements of V.
    pub fn v_elements(&self) -> impl Iterator<Item = UElt> + '_ {
        (0..(1u64 << self.v_roots.len())).map(|bits| self.spread_v(bits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{center_of_radical, RsType};

    #[test]
    fn letters_are_involutions() {
        let rs = RootSystem::build(RsType::G2);
        let g = UGroup::new(&rs);
        for r in 0..rs.nroots {
            let x = 1u64 << r;
            assert_eq!(g.mul(x, x), 0, "x_{r}^2 = 1");
        }
    }

    #[test]
    fn a2_commutator_relation() {
        let rs = RootSystem::build(RsType::A2);
        let g = UGroup::new(&rs);
        let a = 1u64 << rs.simple_index(0);
        let b = 1u64 << rs.simple_index(1);
        // x_a x_b x_a x_b = x_{a+b} in characteristic 2
        let prod = g.mul(g.mul(g.mul(a, b), a), b);
        let sum_root = rs.index_of(&[1, 1]).unwrap();
        assert_eq!(prod, 1u64 << sum_root);
    }

    #[test]
    fn exhaustive_associativity_small_rank() {
        for ty in [RsType::A2, RsType::B2, RsType::G2] {
            let rs = RootSystem::build(ty);
            let g = UGroup::new(&rs);
            let n = 1u64 << rs.nroots;
            for a in 0..n {
                for b in 0..n {
                    let ab = g.mul(a, b);
                    for c in 0..n {
                        assert_eq!(
                            g.mul(ab, c),
                            g.mul(a, g.mul(b, c)),
                            "{ty}: associativity at ({a:#x},{b:#x},{c:#x})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn sampled_associativity_f4() {
        let rs = RootSystem::build(RsType::F4);
        let g = UGroup::new(&rs);
        let mask = (1u64 << rs.nroots) - 1;
        let mut state = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..20_000 {
            let a = next() & mask;
            let b = next() & mask;
            let c = next() & mask;
            assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        }
    }

    #[test]
    fn inverses() {
        let rs = RootSystem::build(RsType::G2);
        let g = UGroup::new(&rs);
        assert_eq!(g.inverse(0), 0);
        for r in 0..rs.nroots {
            assert_eq!(g.inverse(1 << r), 1 << r);
        }
        for a in 0..(1u64 << rs.nroots) {
            assert_eq!(g.mul(a, g.inverse(a)), 0);
        }
    }

    #[test]
    fn left_tables_agree_with_collection() {
        let rs = RootSystem::build(RsType::G2);
        let plain = UGroup::new(&rs);
        let fast = UGroup::with_tables(&rs, 1 << 10);
        for i in 0..rs.rank {
            let mut seen = vec![false; 1 << rs.nroots];
            for u in 0..(1u64 << rs.nroots) {
                let img = fast.left_mul_simple(i, u);
                assert_eq!(img, plain.left_mul_simple(i, u));
                // applying twice gives the identity permutation
                assert_eq!(fast.left_mul_simple(i, img), u);
                assert!(!seen[img as usize], "bijective");
                seen[img as usize] = true;
            }
        }
    }

    #[test]
    fn weyl_conjugation() {
        let rs = RootSystem::build(RsType::A2);
        let g = UGroup::new(&rs);
        let s0 = WeylElement::from_word(&rs, &[0]);
        // conjugating x_{alpha_2} by s_1 gives x_{alpha_1 + alpha_2}
        let b = 1u64 << rs.simple_index(1);
        let img = g.weyl_conjugate(b, &s0).unwrap();
        assert_eq!(img, 1u64 << rs.index_of(&[1, 1]).unwrap());
        // conjugating x_{alpha_1} by s_1 violates the positivity precondition
        let a = 1u64 << rs.simple_index(0);
        assert_eq!(
            g.weyl_conjugate(a, &s0),
            Err(RootError::SupportGoesNegative)
        );
    }

    #[test]
    fn transversal_b2_center() {
        let rs = RootSystem::build(RsType::B2);
        let g = UGroup::new(&rs);
        let data = center_of_radical(&rs, &[0]).unwrap();
        let t = CosetTransversal::build(&g, &data.central_roots).unwrap();
        assert_eq!(t.count() << data.central_roots.len(), 1 << rs.nroots);
        for i in 0..t.count() as usize {
            assert_eq!(t.index(t.element(i)), i);
        }
    }

    #[test]
    fn b2_center_matches_brute_force() {
        // brute-force center of the radical subgroup vs the root criterion
        let rs = RootSystem::build(RsType::B2);
        let g = UGroup::new(&rs);
        let data = center_of_radical(&rs, &[0]).unwrap();
        let mut radical_mask = 0u64;
        for &r in &data.radical_roots {
            radical_mask |= 1 << r;
        }
        let radical: Vec<UElt> = (0..(1u64 << rs.nroots))
            .filter(|u| u & !radical_mask == 0)
            .collect();
        let center: Vec<UElt> = radical
            .iter()
            .copied()
            .filter(|&z| radical.iter().all(|&u| g.mul(z, u) == g.mul(u, z)))
            .collect();
        assert_eq!(center.len(), 1 << data.central_roots.len());
        for &r in &data.central_roots {
            assert!(center.contains(&(1u64 << r)));
        }
    }

    #[test]
    fn trivial_transversal() {
        let rs = RootSystem::build(RsType::A2);
        let g = UGroup::new(&rs);
        let t = CosetTransversal::build(&g, &[]).unwrap();
        assert_eq!(t.count(), 1 << rs.nroots);
    }

    #[test]
    fn v_commutes_with_radical_elements() {
        let rs = RootSystem::build(RsType::F4);
        let g = UGroup::new(&rs);
        let data = center_of_radical(&rs, &[1, 2, 3]).unwrap();
        let t = CosetTransversal::build(&g, &data.central_roots).unwrap();
        let mut radical_mask = 0u64;
        for &r in &data.radical_roots {
            radical_mask |= 1 << r;
        }
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..2000 {
            let p = next() & radical_mask;
            for v in t.v_elements().take(8) {
                assert_eq!(g.mul(v, p), g.mul(p, v), "V is central in the radical");
            }
        }
    }

    #[test]
    fn f4_transversal_has_2_to_17_cosets() {
        let rs = RootSystem::build(RsType::F4);
        let g = UGroup::new(&rs);
        let data = center_of_radical(&rs, &[1, 2, 3]).unwrap();
        let t = CosetTransversal::build(&g, &data.central_roots).unwrap();
        assert_eq!(t.count(), 1 << 17);
    }
}
