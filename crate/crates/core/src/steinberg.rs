//! The Steinberg module of a char-2 Chevalley group over GF(3), and its
//! fixed-point condensation.
//!
//! The module has basis `{e u | u in U}`.  A simple reflection acts on a
//! basis vector by at most two terms with signs; unipotent elements permute
//! the basis.  Condensing at a subgroup V (the center of a parabolic
//! radical) replaces the basis by coset representatives of U/V and the
//! action of `a` by that of `iota a iota` with `iota = [V]/|V|`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::field::Gf3;
use crate::mtx::PackedMatrix;
use crate::rootdata::{
    center_of_radical, distinguished_double_coset_reps, RootError, WeylElement,
};
use crate::unipotent::{CosetTransversal, TransversalError, UElt, UGroup};
use crate::MatGf3;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StError {
    #[error("dimension 2^{0} exceeds the desk-scale gate 2^{1}")]
    GateExceeded(usize, u32),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Transversal(#[from] TransversalError),
}

/// A sparse vector on the Steinberg basis with GF(3) coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StVec {
    terms: BTreeMap<UElt, u8>,
}

impl StVec {
    pub fn basis(u: UElt) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(u, 1);
        StVec { terms }
    }

    pub fn zero() -> Self {
        StVec {
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, u: UElt, coeff: u8) {
        if coeff % 3 == 0 {
            return;
        }
        let slot = self.terms.entry(u).or_insert(0);
        *slot = (*slot + coeff) % 3;
        if *slot == 0 {
            self.terms.remove(&u);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (UElt, u8)> + '_ {
        self.terms.iter().map(|(u, c)| (*u, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// A letter of a generator word: a unipotent element or a simple reflection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Letter {
    U(UElt),
    S(usize),
}

/// A generator as a labeled word.
#[derive(Clone, Debug)]
pub struct GeneratorWord {
    pub label: String,
    pub letters: Vec<Letter>,
}

impl GeneratorWord {
    pub fn unipotent(label: impl Into<String>, u: UElt) -> Self {
        GeneratorWord {
            label: label.into(),
            letters: vec![Letter::U(u)],
        }
    }

    pub fn reflection(label: impl Into<String>, i: usize) -> Self {
        GeneratorWord {
            label: label.into(),
            letters: vec![Letter::S(i)],
        }
    }

    pub fn weyl(label: impl Into<String>, w: &WeylElement) -> Self {
        GeneratorWord {
            label: label.into(),
            letters: w.word.iter().map(|&i| Letter::S(i as usize)).collect(),
        }
    }
}

pub struct StModule<'a> {
    pub u: &'a UGroup<'a>,
    /// cached s_alpha permutations as Weyl elements, one per simple root
    simple: Vec<WeylElement>,
}

impl<'a> StModule<'a> {
    pub fn new(u: &'a UGroup<'a>) -> Self {
        let simple = (0..u.rs.rank)
            .map(|i| WeylElement::from_word(u.rs, &[i as u8]))
            .collect();
        StModule { u, simple }
    }

    pub fn dim_log2(&self) -> usize {
        self.u.rs.nroots
    }

    /// Action of the simple reflection `s_i` on the basis vector `e u`.
    ///
    /// Decompose `u = x_alpha^t * u'` with `u'` free of the alpha letter;
    /// then `e u s = e(x_alpha * (s u' s)) - e(s u' s)` if `t = 1`, and
    /// `-e(s u' s)` if `t = 0`.
    pub fn act_reflection_on_basis(&self, u: UElt, i: usize) -> StVec {
        let rs = self.u.rs;
        let alpha = rs.simple_index(i);
        let has_alpha = u & (1 << alpha) != 0;
        let u_prime = if has_alpha {
            self.u.left_mul_simple(i, u)
        } else {
            u
        };
        debug_assert_eq!(u_prime & (1 << alpha), 0);
        let conj = self
            .u
            .weyl_conjugate(u_prime, &self.simple[i])
            .expect("reflection keeps the complement of alpha positive");
        let mut out = StVec::zero();
        if has_alpha {
            out.add_term(self.u.left_mul_simple(i, conj), 1);
            out.add_term(conj, 2);
        } else {
            out.add_term(conj, 2);
        }
        out
    }

    pub fn act_letter(&self, v: &StVec, letter: Letter) -> StVec {
        let mut out = StVec::zero();
        match letter {
            Letter::U(a) => {
                for (u, c) in v.terms() {
                    out.add_term(self.u.mul(u, a), c);
                }
            }
            Letter::S(i) => {
                for (u, c) in v.terms() {
                    for (w, d) in self.act_reflection_on_basis(u, i).terms() {
                        out.add_term(w, c * d % 3);
                    }
                }
            }
        }
        out
    }

    pub fn act_word(&self, v: &StVec, word: &[Letter]) -> StVec {
        let mut cur = v.clone();
        for &l in word {
            cur = self.act_letter(&cur, l);
        }
        cur
    }

    /// Full matrix of a generator word on the 2^nroots basis, gated.
    pub fn full_matrix(&self, word: &[Letter], gate_log2: u32) -> Result<MatGf3, StError> {
        let n = self.u.rs.nroots;
        if n as u32 > gate_log2 {
            return Err(StError::GateExceeded(n, gate_log2));
        }
        let dim = 1usize << n;
        let mut m = PackedMatrix::zero(dim, dim);
        for u in 0..dim as u64 {
            let img = self.act_word(&StVec::basis(u), word);
            for (w, c) in img.terms() {
                m.set(u as usize, w as usize, Gf3(c));
            }
        }
        Ok(m)
    }

    /// Integer trace of a unipotent element acting on the full module: the
    /// action permutes the basis, so the trace is the fixed-point count.
    pub fn unipotent_trace(&self, a: UElt) -> u64 {
        let n = self.u.rs.nroots;
        (0..(1u64 << n)).filter(|&u| self.u.mul(u, a) == u).count() as u64
    }

    /// The standard generating set of the full module: all simple-root
    /// unipotent elements and all simple reflections.
    pub fn full_generators(&self) -> Vec<GeneratorWord> {
        let rs = self.u.rs;
        let mut gens = Vec::new();
        for i in 0..rs.rank {
            gens.push(GeneratorWord::unipotent(
                format!("u{}", i + 1),
                1 << rs.simple_index(i),
            ));
        }
        for i in 0..rs.rank {
            gens.push(GeneratorWord::reflection(format!("s{}", i + 1), i));
        }
        gens
    }

    /// For each root, a word over the full generator list evaluating to its
    /// root element: `x_r = w x_alpha w^{-1}` for a simple root alpha with
    /// `w(alpha) = r`.  Returned words index into [`Self::full_generators`].
    pub fn root_element_words(&self) -> Vec<Vec<usize>> {
        let rs = self.u.rs;
        let elements = crate::rootdata::weyl_enumerate(rs);
        let mut out = vec![None; rs.nroots];
        for w in &elements {
            for i in 0..rs.rank {
                let img = w.apply(rs.simple_index(i));
                if img < rs.nroots && out[img].is_none() {
                    // generator indices: u_k at k, s_k at rank + k
                    let mut word: Vec<usize> =
                        w.word.iter().map(|&l| rs.rank + l as usize).collect();
                    word.push(i);
                    word.extend(w.word.iter().rev().map(|&l| rs.rank + l as usize));
                    out[img] = Some(word);
                }
            }
        }
        out.into_iter().map(|w| w.expect("every root reachable")).collect()
    }
}

/// The condensation setup for V = Z(U_P) at a standard parabolic P_J.
pub struct CondensationContext<'a> {
    pub st: &'a StModule<'a>,
    pub j_set: Vec<usize>,
    pub transversal: CosetTransversal,
    /// 1/|V| in GF(3): |V| = 2^k, so this is 2 for odd k and 1 for even k
    pub inv_v: u8,
}

impl<'a> CondensationContext<'a> {
    pub fn new(st: &'a StModule<'a>, j_set: &[usize]) -> Result<Self, StError> {
        let data = center_of_radical(st.u.rs, j_set)?;
        let transversal = CosetTransversal::build(st.u, &data.central_roots)?;
        let inv_v = if data.central_roots.len() % 2 == 0 { 1 } else { 2 };
        Ok(CondensationContext {
            st,
            j_set: j_set.to_vec(),
            transversal,
            inv_v,
        })
    }

    pub fn dim(&self) -> usize {
        self.transversal.count() as usize
    }

    /// Does the word normalize V?  Unipotent letters always do (U is inside
    /// the parabolic); reflection letters do iff they lie in J.
    fn normalizes_v(&self, word: &[Letter]) -> bool {
        word.iter().all(|l| match l {
            Letter::U(_) => true,
            Letter::S(i) => self.j_set.contains(i),
        })
    }

    /// Matrix of `iota a iota` on the condensed basis.
    ///
    /// For words inside the parabolic the coset fold needs a single orbit
    /// representative per row; otherwise the full sum over V is taken and
    /// scaled by 1/|V|.
    pub fn condense_word(&self, word: &[Letter]) -> MatGf3 {
        let dim = self.dim();
        let shortcut = self.normalizes_v(word);
        let rows: Vec<Vec<(usize, u8)>> = (0..dim)
            .into_par_iter()
            .map(|row| {
                let rep = self.transversal.element(row);
                let mut acc: BTreeMap<usize, u8> = BTreeMap::new();
                if shortcut {
                    let img = self.st.act_word(&StVec::basis(rep), word);
                    for (u, c) in img.terms() {
                        let col = self.transversal.index(self.transversal.rep(u));
                        let slot = acc.entry(col).or_insert(0);
                        *slot = (*slot + c) % 3;
                    }
                } else {
                    for v in self.transversal.v_elements() {
                        let start = self.st.u.mul(rep, v);
                        let img = self.st.act_word(&StVec::basis(start), word);
                        for (u, c) in img.terms() {
                            let col = self.transversal.index(self.transversal.rep(u));
                            let slot = acc.entry(col).or_insert(0);
                            *slot = (*slot + c) % 3;
                        }
                    }
                    for c in acc.values_mut() {
                        *c = *c * self.inv_v % 3;
                    }
                }
                acc.into_iter().filter(|&(_, c)| c != 0).collect()
            })
            .collect();
        let mut m = PackedMatrix::zero(dim, dim);
        for (row, entries) in rows.into_iter().enumerate() {
            for (col, c) in entries {
                m.set(row, col, Gf3(c));
            }
        }
        m
    }

    /// The generating set of the condensation algebra: simple-root unipotent
    /// elements, the reflections of J, and the distinguished (P, P) double
    /// coset representatives.
    pub fn generator_words(&self) -> Result<Vec<GeneratorWord>, StError> {
        let rs = self.st.u.rs;
        let mut gens = Vec::new();
        for i in 0..rs.rank {
            gens.push(GeneratorWord::unipotent(
                format!("u{}", i + 1),
                1 << rs.simple_index(i),
            ));
        }
        for &j in &self.j_set {
            gens.push(GeneratorWord::reflection(format!("s{}", j + 1), j));
        }
        let reps = distinguished_double_coset_reps(rs, &self.j_set, &self.j_set)?;
        for (k, w) in reps.iter().enumerate() {
            gens.push(GeneratorWord::weyl(format!("b{}", k + 1), w));
        }
        Ok(gens)
    }

    /// Condense every generator word.
    pub fn condensed_generators(&self) -> Result<Vec<(GeneratorWord, MatGf3)>, StError> {
        let gens = self.generator_words()?;
        Ok(gens
            .into_iter()
            .map(|g| {
                let m = self.condense_word(&g.letters);
                (g, m)
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Felt;
    use crate::mtx;
    use crate::rootdata::{RootSystem, RsType};

    fn setup(ty: RsType) -> (&'static RootSystem, &'static UGroup<'static>, StModule<'static>) {
        let rs: &'static RootSystem = Box::leak(Box::new(RootSystem::build(ty)));
        let u: &'static UGroup = Box::leak(Box::new(UGroup::with_tables(rs, 1 << 10)));
        let st = StModule::new(u);
        (rs, u, st)
    }

    #[test]
    fn a1_matrices_generate_sl2_f2() {
        let (_rs, _u, st) = setup(RsType::A1);
        // basis (e, e u); the reflection acts by [[-1, 0], [-1, 1]]
        let s = st.full_matrix(&[Letter::S(0)], 10).unwrap();
        assert_eq!(s.get(0, 0), Gf3(2));
        assert_eq!(s.get(0, 1), Gf3(0));
        assert_eq!(s.get(1, 0), Gf3(2));
        assert_eq!(s.get(1, 1), Gf3(1));
        let u_mat = st.full_matrix(&[Letter::U(1)], 10).unwrap();
        // closure of {s, u} should have 6 elements (the group SL2(F2))
        let mut seen = vec![s.clone(), u_mat.clone()];
        loop {
            let mut new = Vec::new();
            for a in &seen {
                for b in [&s, &u_mat] {
                    let c = a.mat_mul(b);
                    if !seen.contains(&c) && !new.contains(&c) {
                        new.push(c);
                    }
                }
            }
            if new.is_empty() {
                break;
            }
            seen.extend(new);
        }
        assert_eq!(seen.len(), 6);
    }

    #[test]
    fn reflection_rows_have_at_most_two_terms() {
        let (rs, _u, st) = setup(RsType::B2);
        for i in 0..rs.rank {
            for u in 0..(1u64 << rs.nroots) {
                let img = st.act_reflection_on_basis(u, i);
                assert!(img.len() <= 2);
                assert!(!img.is_empty());
            }
        }
    }

    #[test]
    fn unipotent_actions_are_permutations() {
        let (rs, _u, st) = setup(RsType::B2);
        let dim = 1usize << rs.nroots;
        for r in 0..rs.nroots {
            let m = st.full_matrix(&[Letter::U(1 << r)], 10).unwrap();
            for row in 0..dim {
                let nonzero: Vec<usize> = (0..dim).filter(|&c| !m.get(row, c).is_zero()).collect();
                assert_eq!(nonzero.len(), 1);
                assert_eq!(m.get(row, nonzero[0]), Gf3(1));
            }
            // char 2: squares to the identity
            assert_eq!(m.mat_mul(&m), PackedMatrix::identity(dim));
        }
    }

    #[test]
    fn quadratic_and_braid_relations_hold_at_desk_scale() {
        for ty in [RsType::A1, RsType::A2, RsType::B2, RsType::G2] {
            let (rs, _u, st) = setup(ty);
            let dim = 1usize << rs.nroots;
            let id = PackedMatrix::identity(dim);
            let mats: Vec<MatGf3> = (0..rs.rank)
                .map(|i| st.full_matrix(&[Letter::S(i)], 10).unwrap())
                .collect();
            for (i, m) in mats.iter().enumerate() {
                assert_eq!(m.mat_mul(m), id, "{ty}: s_{i}^2 = 1");
            }
            for i in 0..rs.rank {
                for j in (i + 1)..rs.rank {
                    let m = rs.coxeter_m(i, j);
                    let mut left = id.clone();
                    let mut right = id.clone();
                    for k in 0..m {
                        let (a, b) = if k % 2 == 0 { (i, j) } else { (j, i) };
                        left = left.mat_mul(&mats[a]);
                        right = right.mat_mul(&mats[b]);
                    }
                    assert_eq!(left, right, "{ty}: braid ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn word_action_matches_matrix_product() {
        let (rs, _u, st) = setup(RsType::A2);
        let word = [Letter::S(0), Letter::U(1 << rs.simple_index(1)), Letter::S(1)];
        let m = st.full_matrix(&word, 10).unwrap();
        let mut prod = PackedMatrix::identity(1 << rs.nroots);
        for l in word {
            prod = prod.mat_mul(&st.full_matrix(&[l], 10).unwrap());
        }
        assert_eq!(m, prod);
    }

    #[test]
    fn empty_word_is_identity() {
        let (rs, _u, st) = setup(RsType::B2);
        let id = st.full_matrix(&[], 10).unwrap();
        assert_eq!(id, PackedMatrix::identity(1 << rs.nroots));
    }

    #[test]
    fn gate_is_enforced() {
        let (_rs, _u, st) = setup(RsType::B2);
        assert_eq!(
            st.full_matrix(&[Letter::S(0)], 3).unwrap_err(),
            StError::GateExceeded(4, 3)
        );
    }

    #[test]
    fn trivial_condensation_is_the_full_module() {
        // V = {1} arises for J = all simple roots... which has empty radical;
        // instead build the context by hand with no central roots
        let (rs, u, st) = setup(RsType::A2);
        let transversal = CosetTransversal::build(u, &[]).unwrap();
        let ctx = CondensationContext {
            st: &st,
            j_set: (0..rs.rank).collect(),
            transversal,
            inv_v: 1,
        };
        for i in 0..rs.rank {
            let full = st.full_matrix(&[Letter::S(i)], 10).unwrap();
            let cond = ctx.condense_word(&[Letter::S(i)]);
            assert_eq!(full, cond);
        }
    }

    #[test]
    fn condensed_reflections_square_to_identity() {
        let (_rs, _u, st) = setup(RsType::B2);
        let ctx = CondensationContext::new(&st, &[0]).unwrap();
        let dim = ctx.dim();
        for &j in &ctx.j_set.clone() {
            let m = ctx.condense_word(&[Letter::S(j)]);
            assert_eq!(m.mat_mul(&m), PackedMatrix::identity(dim), "(iota s iota)^2 = iota");
        }
    }

    #[test]
    fn condensation_is_multiplicative_inside_the_parabolic() {
        let (rs, _u, st) = setup(RsType::G2);
        let ctx = CondensationContext::new(&st, &[1]).unwrap();
        let a = [Letter::S(1), Letter::U(1 << rs.simple_index(0))];
        let b = [Letter::U(1 << rs.simple_index(1)), Letter::S(1)];
        let ab: Vec<Letter> = a.iter().chain(b.iter()).copied().collect();
        let ca = ctx.condense_word(&a);
        let cb = ctx.condense_word(&b);
        let cab = ctx.condense_word(&ab);
        assert_eq!(ca.mat_mul(&cb), cab);
    }

    #[test]
    fn generator_count_matches_noeske_set() {
        let (_rs, _u, st) = setup(RsType::A2);
        let ctx = CondensationContext::new(&st, &[0]).unwrap();
        let gens = ctx.generator_words().unwrap();
        // 2 unipotent + 1 reflection + 2 double coset reps
        assert_eq!(gens.len(), 5);
    }

    #[test]
    fn condensed_dimension_is_index_of_v() {
        let (rs, u, st) = setup(RsType::B2);
        for j in [vec![0usize], vec![1usize]] {
            let ctx = CondensationContext::new(&st, &j).unwrap();
            let data = center_of_radical(rs, &j).unwrap();
            assert_eq!(ctx.dim(), 1 << (rs.nroots - data.central_roots.len()));
            let _ = u;
        }
    }

    #[test]
    fn steinberg_trace_counts_fixed_points() {
        let (rs, _u, st) = setup(RsType::B2);
        assert_eq!(st.unipotent_trace(0), 1 << rs.nroots);
        // right multiplication by a nontrivial element is fixed-point free
        for r in 0..rs.nroots {
            assert_eq!(st.unipotent_trace(1 << r), 0);
        }
    }

    #[test]
    fn root_element_words_evaluate_correctly() {
        let (rs, _u, st) = setup(RsType::B2);
        let gens = st.full_generators();
        let mats: Vec<MatGf3> = gens
            .iter()
            .map(|g| st.full_matrix(&g.letters, 10).unwrap())
            .collect();
        for (r, word) in st.root_element_words().iter().enumerate() {
            let mut prod = PackedMatrix::identity(1 << rs.nroots);
            for &gi in word {
                prod = prod.mat_mul(&mats[gi]);
            }
            let direct = st.full_matrix(&[Letter::U(1 << r)], 10).unwrap();
            assert_eq!(prod, direct, "word for root {r}");
        }
    }

    #[test]
    fn condensation_dimension_counts_v_fixed_space() {
        // dim St iota equals the V-fixed-space dimension of the full module,
        // and both equal [U:V]
        let (rs, _u, st) = setup(RsType::B2);
        let ctx = CondensationContext::new(&st, &[0]).unwrap();
        let gens = st.full_generators();
        let mats: Vec<MatGf3> = gens
            .iter()
            .map(|g| st.full_matrix(&g.letters, 10).unwrap())
            .collect();
        let words = st.root_element_words();
        let v_mats: Vec<MatGf3> = ctx
            .transversal
            .v_roots
            .iter()
            .map(|&r| {
                let mut prod = PackedMatrix::identity(1 << rs.nroots);
                for &gi in &words[r] {
                    prod = prod.mat_mul(&mats[gi]);
                }
                prod
            })
            .collect();
        let fs = mtx::fixed_space(1 << rs.nroots, &v_mats);
        assert_eq!(fs.rows(), ctx.dim());
    }
}
