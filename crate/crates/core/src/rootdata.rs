//! Root systems of rank at most 4, their Weyl groups, characteristic-2
//! commutator structure constants, and parabolic data.
//!
//! Positive roots are kept in a fixed total order (height, then
//! lexicographic on coefficient tuples); root index `i < nroots` is the
//! `i`-th positive root and `nroots + i` its negative.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RootError {
    #[error("unsupported root system type `{0}`")]
    UnsupportedType(String),
    #[error("simple root index {0} out of range")]
    BadSimpleIndex(usize),
    #[error("conjugation sends a support root negative")]
    SupportGoesNegative,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, Hash)]
pub enum RsType {
    A1,
    A2,
    B2,
    G2,
    B3,
    C3,
    F4,
}

impl RsType {
    pub fn parse(s: &str) -> Result<Self, RootError> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "A1" => RsType::A1,
            "A2" => RsType::A2,
            "B2" | "C2" => RsType::B2,
            "G2" => RsType::G2,
            "B3" => RsType::B3,
            "C3" => RsType::C3,
            "F4" => RsType::F4,
            other => return Err(RootError::UnsupportedType(other.into())),
        })
    }

    pub fn rank(self) -> usize {
        match self {
            RsType::A1 => 1,
            RsType::A2 | RsType::B2 | RsType::G2 => 2,
            RsType::B3 | RsType::C3 => 3,
            RsType::F4 => 4,
        }
    }

    /// Cartan matrix with entries `a[i][j] = <alpha_j, alpha_i^vee>`.
    fn cartan(self) -> Vec<Vec<i64>> {
        match self {
            RsType::A1 => vec![vec![2]],
            RsType::A2 => vec![vec![2, -1], vec![-1, 2]],
            // alpha_1 long, alpha_2 short
            RsType::B2 => vec![vec![2, -1], vec![-2, 2]],
            // alpha_1 long, alpha_2 short
            RsType::G2 => vec![vec![2, -1], vec![-3, 2]],
            RsType::B3 => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]],
            RsType::C3 => vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]],
            RsType::F4 => vec![
                vec![2, -1, 0, 0],
                vec![-1, 2, -1, 0],
                vec![0, -2, 2, -1],
                vec![0, 0, -1, 2],
            ],
        }
    }
}

impl fmt::Display for RsType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RsType::A1 => "A1",
            RsType::A2 => "A2",
            RsType::B2 => "B2",
            RsType::G2 => "G2",
            RsType::B3 => "B3",
            RsType::C3 => "C3",
            RsType::F4 => "F4",
        };
        write!(f, "{s}")
    }
}

/// A commutator term: `[x_a, x_b]` contains `x_root` for the combination
/// `i*a + j*b`, with the given coefficient mod 2.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct CommTerm {
    pub i: u8,
    pub j: u8,
    pub root: usize,
    pub coeff: u8,
}

pub struct RootSystem {
    pub ty: RsType,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    /// positive roots in height-then-lex order, as coefficient vectors
    pub pos_roots: Vec<Vec<i64>>,
    pub nroots: usize,
    /// `refl[i][r]` = image of root `r` under the simple reflection `s_i`
    pub refl: Vec<Vec<usize>>,
    /// `comm[a * nroots + b]` = terms of `[x_a, x_b]` for positive roots a, b
    comm: Vec<Vec<CommTerm>>,
    root_index: BTreeMap<Vec<i64>, usize>,
}

fn height(r: &[i64]) -> i64 {
    r.iter().sum()
}

impl RootSystem {
    pub fn build(ty: RsType) -> Self {
        let rank = ty.rank();
        let cartan = ty.cartan();
        // close the simple roots under simple reflections
        let mut all: BTreeMap<Vec<i64>, ()> = BTreeMap::new();
        let mut queue: Vec<Vec<i64>> = Vec::new();
        for i in 0..rank {
            let mut alpha = vec![0i64; rank];
            alpha[i] = 1;
            all.insert(alpha.clone(), ());
            queue.push(alpha);
        }
        let pairing = |beta: &[i64], i: usize| -> i64 {
            (0..rank).map(|k| beta[k] * cartan[i][k]).sum()
        };
        while let Some(beta) = queue.pop() {
            for i in 0..rank {
                let c = pairing(&beta, i);
                let mut img = beta.clone();
                img[i] -= c;
                if !all.contains_key(&img) {
                    all.insert(img.clone(), ());
                    queue.push(img);
                }
            }
        }
        let mut pos_roots: Vec<Vec<i64>> = all.keys().filter(|r| height(r) > 0).cloned().collect();
        pos_roots.sort_by(|a, b| (height(a), a.clone()).cmp(&(height(b), b.clone())));
        let nroots = pos_roots.len();

        let mut root_index = BTreeMap::new();
        for (i, r) in pos_roots.iter().enumerate() {
            root_index.insert(r.clone(), i);
            root_index.insert(r.iter().map(|c| -c).collect::<Vec<_>>(), nroots + i);
        }

        let mut refl = vec![vec![0usize; 2 * nroots]; rank];
        for (i, table) in refl.iter_mut().enumerate() {
            for (idx, slot) in table.iter_mut().enumerate() {
                let r: Vec<i64> = if idx < nroots {
                    pos_roots[idx].clone()
                } else {
                    pos_roots[idx - nroots].iter().map(|c| -c).collect()
                };
                let c = pairing(&r, i);
                let mut img = r.clone();
                img[i] -= c;
                *slot = *root_index.get(&img).expect("reflection image is a root");
            }
        }

        let mut rs = RootSystem {
            ty,
            rank,
            cartan,
            pos_roots,
            nroots,
            refl,
            comm: Vec::new(),
            root_index,
        };
        rs.comm = rs.build_commutators();
        rs
    }

    pub fn index_of(&self, r: &[i64]) -> Option<usize> {
        self.root_index.get(r).copied()
    }

    /// Index of the simple root `alpha_i` in the positive-root order.
    pub fn simple_index(&self, i: usize) -> usize {
        let mut alpha = vec![0i64; self.rank];
        alpha[i] = 1;
        self.index_of(&alpha).expect("simple root present")
    }

    pub fn negate(&self, idx: usize) -> usize {
        if idx < self.nroots {
            idx + self.nroots
        } else {
            idx - self.nroots
        }
    }

    /// Largest `k >= 0` with `b - k*a` a root.
    fn string_down(&self, a: &[i64], b: &[i64]) -> u32 {
        let mut k = 0;
        loop {
            let probe: Vec<i64> = b
                .iter()
                .zip(a)
                .map(|(x, y)| x - i64::from(k + 1) * y)
                .collect();
            if self.index_of(&probe).is_none() {
                return k;
            }
            k += 1;
        }
    }

    fn binom_mod2(n: u32, k: u32) -> u8 {
        // Lucas: C(n, k) is odd iff k's bits are a subset of n's
        u8::from(n & k == k)
    }

    /// Chevalley commutator coefficients mod 2 for `[x_a, x_b]`, terms in
    /// increasing height of the combination root.
    fn build_commutators(&self) -> Vec<Vec<CommTerm>> {
        let n = self.nroots;
        let mut out = vec![Vec::new(); n * n];
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                let ra = &self.pos_roots[a];
                let rb = &self.pos_roots[b];
                let mut terms: Vec<CommTerm> = Vec::new();
                for i in 1u8..=3 {
                    for j in 1u8..=3 {
                        if i + j > 5 {
                            continue;
                        }
                        let comb: Vec<i64> = ra
                            .iter()
                            .zip(rb)
                            .map(|(x, y)| i64::from(i) * x + i64::from(j) * y)
                            .collect();
                        let Some(root) = self.index_of(&comb) else { continue };
                        if root >= n {
                            continue;
                        }
                        let coeff = self.coefficient_mod2(ra, rb, i, j);
                        terms.push(CommTerm { i, j, root, coeff });
                    }
                }
                terms.sort_by_key(|t| (height(&self.pos_roots[t.root]), t.i, t.j));
                out[a * n + b] = terms;
            }
        }
        out
    }

    /// |C_{ij}| mod 2 for the term `x_{i*a + j*b}` of `[x_a, x_b]`, from
    /// root-string binomials.
    fn coefficient_mod2(&self, ra: &[i64], rb: &[i64], i: u8, j: u8) -> u8 {
        let sum: Vec<i64> = ra.iter().zip(rb).map(|(x, y)| x + y).collect();
        match (i, j) {
            (ii, 1) => {
                let p = self.string_down(ra, rb);
                Self::binom_mod2(p + u32::from(ii), u32::from(ii))
            }
            (1, jj) => {
                let p = self.string_down(rb, ra);
                Self::binom_mod2(p + u32::from(jj), u32::from(jj))
            }
            (3, 2) => {
                // (2/3) * C(p(a+b, a)+2, 2)
                let p = self.string_down(&sum, ra);
                let m = (p + 2) * (p + 1) / 2;
                debug_assert_eq!(m % 3, 0);
                ((2 * m / 3) % 2) as u8
            }
            (2, 3) => {
                // (1/3) * C(p(a+b, b)+2, 2)
                let p = self.string_down(&sum, rb);
                let m = (p + 2) * (p + 1) / 2;
                debug_assert_eq!(m % 3, 0);
                ((m / 3) % 2) as u8
            }
            _ => 0,
        }
    }

    /// Terms of `[x_a, x_b]`, in collection order.
    pub fn commutator(&self, a: usize, b: usize) -> &[CommTerm] {
        &self.comm[a * self.nroots + b]
    }

    /// Roots of the terms of `[x_a, x_b]` with nonzero coefficient.
    pub fn commutator_letters(&self, a: usize, b: usize) -> impl Iterator<Item = usize> + '_ {
        self.commutator(a, b)
            .iter()
            .filter(|t| t.coeff == 1)
            .map(|t| t.root)
    }

    /// Coxeter exponent m(i, j) from the Cartan matrix.
    pub fn coxeter_m(&self, i: usize, j: usize) -> u32 {
        match self.cartan[i][j] * self.cartan[j][i] {
            0 => 2,
            1 => 3,
            2 => 4,
            3 => 6,
            _ => unreachable!("crystallographic rank-2 products are 0..3"),
        }
    }
}

/// A Weyl group element: a reduced word plus its action on all roots.
#[derive(Clone, PartialEq, Eq)]
pub struct WeylElement {
    pub word: Vec<u8>,
    pub perm: Vec<u32>,
    pub length: u32,
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            write!(f, "1")
        } else {
            let w: Vec<String> = self.word.iter().map(|i| format!("s{}", i + 1)).collect();
            write!(f, "{}", w.join(""))
        }
    }
}

impl WeylElement {
    pub fn identity(rs: &RootSystem) -> Self {
        WeylElement {
            word: Vec::new(),
            perm: (0..2 * rs.nroots as u32).collect(),
            length: 0,
        }
    }

    /// Build from a word in simple reflections; the stored word is reduced
    /// to a canonical expression.
    pub fn from_word(rs: &RootSystem, word: &[u8]) -> Self {
        let mut perm: Vec<u32> = (0..2 * rs.nroots as u32).collect();
        // w = s_{i1} ... s_{ik} acts as w(beta) = s_{i1}(... s_{ik}(beta))
        for &i in word.iter().rev() {
            let table = &rs.refl[i as usize];
            for slot in perm.iter_mut() {
                *slot = table[*slot as usize] as u32;
            }
        }
        Self::from_perm(rs, perm)
    }

    pub fn from_perm(rs: &RootSystem, perm: Vec<u32>) -> Self {
        let length = (0..rs.nroots)
            .filter(|&r| perm[r] as usize >= rs.nroots)
            .count() as u32;
        let word = Self::canonical_word(rs, &perm);
        debug_assert_eq!(word.len() as u32, length);
        WeylElement { word, perm, length }
    }

    /// Canonical reduced word: repeatedly strip the smallest right descent.
    fn canonical_word(rs: &RootSystem, perm: &[u32]) -> Vec<u8> {
        let mut p = perm.to_vec();
        let mut rev: Vec<u8> = Vec::new();
        loop {
            let mut descent = None;
            for i in 0..rs.rank {
                let alpha = rs.simple_index(i);
                if p[alpha] as usize >= rs.nroots {
                    descent = Some(i);
                    break;
                }
            }
            let Some(i) = descent else { break };
            // replace w by w * s_i
            let table = &rs.refl[i];
            let q: Vec<u32> = (0..p.len()).map(|slot| p[table[slot]]).collect();
            p = q;
            rev.push(i as u8);
        }
        rev.reverse();
        rev
    }

    pub fn apply(&self, root: usize) -> usize {
        self.perm[root] as usize
    }

    pub fn compose(&self, rs: &RootSystem, other: &WeylElement) -> WeylElement {
        // (self * other)(beta) = self(other(beta))
        let perm: Vec<u32> = (0..2 * rs.nroots)
            .map(|r| self.perm[other.perm[r] as usize])
            .collect();
        WeylElement::from_perm(rs, perm)
    }

    pub fn inverse(&self, rs: &RootSystem) -> WeylElement {
        let mut perm = vec![0u32; 2 * rs.nroots];
        for (r, &img) in self.perm.iter().enumerate() {
            perm[img as usize] = r as u32;
        }
        WeylElement::from_perm(rs, perm)
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

/// Enumerate the whole Weyl group; the result is sorted by (length, word).
pub fn weyl_enumerate(rs: &RootSystem) -> Vec<WeylElement> {
    let mut seen: BTreeMap<Vec<u32>, WeylElement> = BTreeMap::new();
    let id = WeylElement::identity(rs);
    let mut queue = vec![id.clone()];
    seen.insert(id.perm.clone(), id);
    while let Some(w) = queue.pop() {
        for i in 0..rs.rank {
            let table = &rs.refl[i];
            // w * s_i
            let perm: Vec<u32> = (0..2 * rs.nroots).map(|r| w.perm[table[r]]).collect();
            if !seen.contains_key(&perm) {
                let elt = WeylElement::from_perm(rs, perm.clone());
                seen.insert(perm, elt.clone());
                queue.push(elt);
            }
        }
    }
    let mut out: Vec<WeylElement> = seen.into_values().collect();
    out.sort_by(|a, b| (a.length, a.word.clone()).cmp(&(b.length, b.word.clone())));
    out
}

/// The longest element.
pub fn longest_element(rs: &RootSystem) -> WeylElement {
    weyl_enumerate(rs)
        .into_iter()
        .max_by_key(|w| w.length)
        .expect("nonempty group")
}

/// Minimal-length (W_J, W_K)-double-coset representatives, compared as
/// group elements.
pub fn distinguished_double_coset_reps(
    rs: &RootSystem,
    j_set: &[usize],
    k_set: &[usize],
) -> Result<Vec<WeylElement>, RootError> {
    for &i in j_set.iter().chain(k_set) {
        if i >= rs.rank {
            return Err(RootError::BadSimpleIndex(i));
        }
    }
    let all = weyl_enumerate(rs);
    let mut out = Vec::new();
    for w in all {
        let inv = w.inverse(rs);
        let j_ok = j_set
            .iter()
            .all(|&j| inv.apply(rs.simple_index(j)) < rs.nroots);
        let k_ok = k_set
            .iter()
            .all(|&k| w.apply(rs.simple_index(k)) < rs.nroots);
        if j_ok && k_ok {
            out.push(w);
        }
    }
    out.sort_by(|a, b| (a.length, a.word.clone()).cmp(&(b.length, b.word.clone())));
    Ok(out)
}

/// Parabolic data for a subset J of the simple roots.
#[derive(Clone, Debug)]
pub struct ParabolicData {
    pub j_set: Vec<usize>,
    /// positive roots of the standard Levi (support inside J)
    pub levi_roots: Vec<usize>,
    /// positive roots of the unipotent radical
    pub radical_roots: Vec<usize>,
    /// roots spanning the center of the radical
    pub central_roots: Vec<usize>,
}

/// Center of the unipotent radical of the standard parabolic P_J over F2:
/// a radical root is central iff its commutator with every radical root has
/// no term with odd coefficient.
pub fn center_of_radical(rs: &RootSystem, j_set: &[usize]) -> Result<ParabolicData, RootError> {
    for &i in j_set {
        if i >= rs.rank {
            return Err(RootError::BadSimpleIndex(i));
        }
    }
    let in_j = |k: usize| j_set.contains(&k);
    let mut levi = Vec::new();
    let mut radical = Vec::new();
    for (idx, r) in rs.pos_roots.iter().enumerate() {
        let support_in_j = r.iter().enumerate().all(|(k, &c)| c == 0 || in_j(k));
        if support_in_j {
            levi.push(idx);
        } else {
            radical.push(idx);
        }
    }
    let central: Vec<usize> = radical
        .iter()
        .copied()
        .filter(|&g| {
            radical
                .iter()
                .all(|&d| g == d || rs.commutator_letters(g, d).next().is_none())
        })
        .collect();
    Ok(ParabolicData {
        j_set: j_set.to_vec(),
        levi_roots: levi,
        radical_roots: radical,
        central_roots: central,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_root_counts() {
        for (ty, n) in [
            (RsType::A1, 1),
            (RsType::A2, 3),
            (RsType::B2, 4),
            (RsType::G2, 6),
            (RsType::B3, 9),
            (RsType::C3, 9),
            (RsType::F4, 24),
        ] {
            let rs = RootSystem::build(ty);
            assert_eq!(rs.nroots, n, "{ty}");
        }
    }

    #[test]
    fn reflections_are_involutions_and_braid() {
        for ty in [RsType::A2, RsType::B2, RsType::G2, RsType::B3, RsType::C3, RsType::F4] {
            let rs = RootSystem::build(ty);
            for i in 0..rs.rank {
                let si = WeylElement::from_word(&rs, &[i as u8]);
                assert_eq!(si.compose(&rs, &si), WeylElement::identity(&rs));
                // s_i permutes the positive roots other than alpha_i
                let alpha = rs.simple_index(i);
                for r in 0..rs.nroots {
                    let img = rs.refl[i][r];
                    if r == alpha {
                        assert_eq!(img, rs.negate(alpha));
                    } else {
                        assert!(img < rs.nroots, "{ty} s_{i} sends root {r} negative");
                    }
                }
                for j in 0..rs.rank {
                    if i == j {
                        continue;
                    }
                    let m = rs.coxeter_m(i, j);
                    let word_ij: Vec<u8> = (0..m)
                        .map(|k| if k % 2 == 0 { i as u8 } else { j as u8 })
                        .collect();
                    let word_ji: Vec<u8> = (0..m)
                        .map(|k| if k % 2 == 0 { j as u8 } else { i as u8 })
                        .collect();
                    let a = WeylElement::from_word(&rs, &word_ij);
                    let b = WeylElement::from_word(&rs, &word_ji);
                    assert_eq!(a.perm, b.perm, "braid relation {ty} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn weyl_group_orders() {
        assert_eq!(weyl_enumerate(&RootSystem::build(RsType::A1)).len(), 2);
        assert_eq!(weyl_enumerate(&RootSystem::build(RsType::A2)).len(), 6);
        assert_eq!(weyl_enumerate(&RootSystem::build(RsType::B2)).len(), 8);
        assert_eq!(weyl_enumerate(&RootSystem::build(RsType::G2)).len(), 12);
        assert_eq!(weyl_enumerate(&RootSystem::build(RsType::F4)).len(), 1152);
    }

    #[test]
    fn longest_element_length_is_root_count() {
        for ty in [RsType::A1, RsType::A2, RsType::B2, RsType::G2, RsType::B3, RsType::C3, RsType::F4] {
            let rs = RootSystem::build(ty);
            assert_eq!(longest_element(&rs).length as usize, rs.nroots, "{ty}");
        }
    }

    #[test]
    fn word_length_consistency() {
        let rs = RootSystem::build(RsType::F4);
        for w in weyl_enumerate(&rs).iter().step_by(17) {
            assert_eq!(w.word.len() as u32, w.length);
            let rebuilt = WeylElement::from_word(&rs, &w.word);
            assert_eq!(rebuilt.perm, w.perm);
        }
    }

    #[test]
    fn a2_commutator_is_single_term() {
        let rs = RootSystem::build(RsType::A2);
        let a = rs.simple_index(0);
        let b = rs.simple_index(1);
        let letters: Vec<usize> = rs.commutator_letters(a, b).collect();
        let sum = rs.index_of(&[1, 1]).unwrap();
        assert_eq!(letters, vec![sum]);
    }

    #[test]
    fn orthogonal_roots_commute() {
        let rs = RootSystem::build(RsType::B3);
        // alpha_1 and alpha_3 are not adjacent
        let a = rs.simple_index(0);
        let c = rs.simple_index(2);
        assert!(rs.commutator_letters(a, c).next().is_none());
    }

    #[test]
    fn b2_short_string_commutator_vanishes() {
        // in B2 with a long, b short: [x_b, x_{a+b}] has coefficient
        // C(p+1, 1) with p = 1, hence vanishes mod 2
        let rs = RootSystem::build(RsType::B2);
        let b = rs.simple_index(1);
        let ab = rs.index_of(&[1, 1]).unwrap();
        assert!(rs.commutator_letters(b, ab).next().is_none());
        assert!(rs.commutator_letters(ab, b).next().is_none());
        // while [x_a, x_b] = x_{a+b} x_{a+2b}
        let a = rs.simple_index(0);
        let letters: Vec<usize> = rs.commutator_letters(a, b).collect();
        assert_eq!(letters.len(), 2);
    }

    #[test]
    fn f4_distinguished_double_cosets_match_known_words() {
        let rs = RootSystem::build(RsType::F4);
        let j = vec![1, 2, 3];
        let reps = distinguished_double_coset_reps(&rs, &j, &j).unwrap();
        assert_eq!(reps.len(), 5);
        let lengths: Vec<u32> = reps.iter().map(|w| w.length).collect();
        assert_eq!(lengths, vec![0, 1, 5, 8, 15]);
        let expect: Vec<Vec<u8>> = vec![
            vec![],
            vec![0],
            vec![0, 1, 2, 1, 0],
            vec![0, 1, 2, 1, 3, 2, 1, 0],
            vec![0, 1, 2, 1, 0, 3, 2, 1, 0, 2, 1, 3, 2, 1, 0],
        ];
        for word in &expect {
            let w = WeylElement::from_word(&rs, word);
            assert!(
                reps.iter().any(|r| r.perm == w.perm),
                "missing representative for word {word:?}"
            );
        }
    }

    #[test]
    fn trivial_double_coset_cases() {
        let rs = RootSystem::build(RsType::B2);
        let all: Vec<usize> = (0..rs.rank).collect();
        let reps = distinguished_double_coset_reps(&rs, &all, &all).unwrap();
        assert_eq!(reps.len(), 1);
        assert!(reps[0].is_identity());
        let none: Vec<usize> = vec![];
        let reps = distinguished_double_coset_reps(&rs, &none, &none).unwrap();
        assert_eq!(reps.len(), weyl_enumerate(&rs).len());
    }

    #[test]
    fn double_cosets_partition_the_group() {
        for ty in [RsType::A2, RsType::B2, RsType::G2, RsType::B3, RsType::F4] {
            let rs = RootSystem::build(ty);
            let j: Vec<usize> = (1..rs.rank).collect();
            let k: Vec<usize> = (0..rs.rank.saturating_sub(1)).collect();
            let reps = distinguished_double_coset_reps(&rs, &j, &k).unwrap();
            let all = weyl_enumerate(&rs);
            let wj: Vec<&WeylElement> = all
                .iter()
                .filter(|w| w.word.iter().all(|l| j.contains(&(*l as usize))))
                .collect();
            let wk: Vec<&WeylElement> = all
                .iter()
                .filter(|w| w.word.iter().all(|l| k.contains(&(*l as usize))))
                .collect();
            let mut covered: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
            for rep in &reps {
                for a in &wj {
                    let ar = a.compose(&rs, rep);
                    for b in &wk {
                        let arb = ar.compose(&rs, b);
                        covered.insert(arb.perm, 0);
                    }
                }
            }
            assert_eq!(covered.len(), all.len(), "{ty}: double cosets cover W");
        }
    }

    #[test]
    fn f4_center_of_c3_parabolic_has_seven_roots() {
        let rs = RootSystem::build(RsType::F4);
        let data = center_of_radical(&rs, &[1, 2, 3]).unwrap();
        assert_eq!(data.levi_roots.len(), 9, "C3 Levi has 9 positive roots");
        assert_eq!(data.radical_roots.len(), 15);
        assert_eq!(data.central_roots.len(), 7);
    }

    #[test]
    fn full_parabolic_has_empty_radical() {
        let rs = RootSystem::build(RsType::F4);
        let data = center_of_radical(&rs, &[0, 1, 2, 3]).unwrap();
        assert!(data.radical_roots.is_empty());
        assert!(data.central_roots.is_empty());
    }
}
