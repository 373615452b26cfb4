//! MeatAxe primitives: spin-up, the Norton irreducibility test, recursive
//! chopping into composition factors, and isomorphism testing by standard
//! bases.

use std::collections::BTreeMap;

use crate::field::Felt;
use crate::mtx::PackedMatrix;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MtxError {
    #[error("generator matrices must be square of equal dimension")]
    BadModule,
    #[error("isomorphism test requires irreducible modules")]
    NotIrreducible,
    #[error("no distinguishing algebra element found within budget")]
    BudgetExhausted,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ChopError {
    #[error("random element budget exhausted at dimension {0}")]
    Budget(usize),
    #[error(transparent)]
    Module(#[from] MtxError),
}

/// A module presentation: square generator actions of a common dimension.
#[derive(Clone, Debug)]
pub struct Module<F: Felt> {
    pub gens: Vec<PackedMatrix<F>>,
    pub dim: usize,
}

impl<F: Felt> Module<F> {
    pub fn new(gens: Vec<PackedMatrix<F>>) -> Result<Self, MtxError> {
        let dim = gens.first().map_or(0, |g| g.rows());
        for g in &gens {
            if g.rows() != dim || g.cols() != dim {
                return Err(MtxError::BadModule);
            }
        }
        Ok(Module { gens, dim })
    }

    fn transposed(&self) -> Self {
        Module {
            gens: self.gens.iter().map(|g| g.transpose()).collect(),
            dim: self.dim,
        }
    }
}

/// Deterministic splitmix64 stream.
#[derive(Clone, Debug)]
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

/// Echelonized basis (rows, pivot columns) kept fully reduced.
struct Echelon<F: Felt> {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    w: usize,
    cols: usize,
    _f: PhantomDataHack<F>,
}

struct PhantomDataHack<F>(std::marker::PhantomData<F>);

impl<F: Felt> Echelon<F> {
    fn new(cols: usize) -> Self {
        Echelon {
            rows: Vec::new(),
            pivots: Vec::new(),
            w: cols.div_ceil(64).max(1),
            cols,
            _f: PhantomDataHack(std::marker::PhantomData),
        }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the basis in place; returns the pivot column if a
    /// nonzero remainder was inserted.
    fn insert(&mut self, v: &mut [u64]) -> Option<usize> {
        self.reduce(v);
        let pivot = (0..self.cols).find(|&c| !F::row_get(v, self.w, c).is_zero())?;
        let inv = F::row_get(v, self.w, pivot).inv();
        F::row_scale(v, self.w, inv);
        // back-substitute into existing rows
        for i in 0..self.rows.len() {
            let c = F::row_get(&self.rows[i], self.w, pivot);
            if !c.is_zero() {
                F::row_addmul(&mut self.rows[i], v, self.w, c.neg());
            }
        }
        let at = self.pivots.partition_point(|&p| p < pivot);
        self.pivots.insert(at, pivot);
        self.rows.insert(at, v.to_vec());
        Some(pivot)
    }

    fn reduce(&self, v: &mut [u64]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = F::row_get(v, self.w, p);
            if !c.is_zero() {
                F::row_addmul(v, row, self.w, c.neg());
            }
        }
    }

    fn to_matrix(&self) -> PackedMatrix<F> {
        let mut m = PackedMatrix::zero(self.rows.len(), self.cols);
        for (i, r) in self.rows.iter().enumerate() {
            m.row_mut(i).copy_from_slice(r);
        }
        m
    }
}

/// Smallest generator-invariant subspace containing the seed rows, returned
/// as an echelonized basis.
pub fn spin_up<F: Felt>(seeds: &PackedMatrix<F>, gens: &[PackedMatrix<F>]) -> PackedMatrix<F> {
    let cols = seeds.cols();
    let mut ech = Echelon::<F>::new(cols);
    // queue holds raw vectors that entered the span and still need their
    // generator images processed; span(queue history) = span(echelon)
    let mut queue: Vec<Vec<u64>> = Vec::new();
    for i in 0..seeds.rows() {
        let raw = seeds.row(i).to_vec();
        let mut copy = raw.clone();
        if ech.insert(&mut copy).is_some() {
            queue.push(raw);
        }
    }
    let mut at = 0;
    while at < queue.len() && ech.dim() < cols {
        let v = queue[at].clone();
        at += 1;
        for g in gens {
            let mut img = vec![0u64; ech.w * F::PLANES];
            for c in 0..cols {
                let coeff = F::row_get(&v, ech.w, c);
                if !coeff.is_zero() {
                    F::row_addmul(&mut img, g.row(c), ech.w, coeff);
                }
            }
            let mut copy = img.clone();
            if ech.insert(&mut copy).is_some() {
                queue.push(img);
                if ech.dim() == cols {
                    break;
                }
            }
        }
    }
    ech.to_matrix()
}

/// Outcome of one split attempt.
pub enum SplitOutcome<F: Felt> {
    /// Norton's criterion certified irreducibility.
    Irreducible,
    /// A proper invariant subspace was found.
    Split {
        sub: Module<F>,
        quot: Module<F>,
        sub_basis: PackedMatrix<F>,
    },
    /// The candidate had trivial kernel; try another.
    NoDecision,
}

/// Express each row of `vs` over the echelonized invariant basis `basis`;
/// returns None if some row is not in the span.
fn express_over_basis<F: Felt>(
    vs: &PackedMatrix<F>,
    basis: &PackedMatrix<F>,
    pivots: &[usize],
) -> Option<PackedMatrix<F>> {
    let mut out = PackedMatrix::zero(vs.rows(), basis.rows());
    for i in 0..vs.rows() {
        let mut v = vs.row(i).to_vec();
        for (j, &p) in pivots.iter().enumerate() {
            let c = F::row_get(&v, vs_w(vs), p);
            if !c.is_zero() {
                out.set(i, j, c);
                F::row_addmul(&mut v, basis.row(j), vs_w(vs), c.neg());
            }
        }
        if v.iter().any(|&x| x != 0) {
            return None;
        }
    }
    Some(out)
}

fn vs_w<F: Felt>(m: &PackedMatrix<F>) -> usize {
    m.cols().div_ceil(64).max(1)
}

fn pivot_columns<F: Felt>(basis: &PackedMatrix<F>) -> Vec<usize> {
    let mut pivots = Vec::with_capacity(basis.rows());
    for i in 0..basis.rows() {
        let p = (0..basis.cols())
            .find(|&c| !basis.get(i, c).is_zero())
            .expect("echelon basis has no zero rows");
        pivots.push(p);
    }
    pivots
}

/// Build the (restricted, quotient) actions from an invariant echelonized
/// basis.  Invariance is re-verified; a non-invariant basis panics.
fn carve<F: Felt>(m: &Module<F>, basis: &PackedMatrix<F>) -> (Module<F>, Module<F>) {
    let pivots = pivot_columns(basis);
    let mut is_pivot = vec![false; m.dim];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..m.dim).filter(|&c| !is_pivot[c]).collect();
    let w = basis.cols().div_ceil(64).max(1);

    let mut sub_gens = Vec::with_capacity(m.gens.len());
    let mut quot_gens = Vec::with_capacity(m.gens.len());
    for g in &m.gens {
        let imgs = basis.mat_mul(g);
        let sub = express_over_basis(&imgs, basis, &pivots)
            .expect("spin_up returned a non-invariant subspace");
        sub_gens.push(sub);

        let mut quot = PackedMatrix::zero(free.len(), free.len());
        for (qi, &c) in free.iter().enumerate() {
            let mut v = g.row(c).to_vec();
            for (j, &p) in pivots.iter().enumerate() {
                let coeff = F::row_get(&v, w, p);
                if !coeff.is_zero() {
                    F::row_addmul(&mut v, basis.row(j), w, coeff.neg());
                }
            }
            for (qj, &fc) in free.iter().enumerate() {
                let coeff = F::row_get(&v, w, fc);
                if !coeff.is_zero() {
                    quot.set(qi, qj, coeff);
                }
            }
        }
        quot_gens.push(quot);
    }
    (
        Module { gens: sub_gens, dim: basis.rows() },
        Module { gens: quot_gens, dim: free.len() },
    )
}

/// Nullities above this bound make enumerating all kernel lines expensive;
/// the caller retries with a fresh candidate instead.
const MAX_NULLITY: usize = 8;

/// All 1-dimensional subspaces of the row space of `kernel`, one normalized
/// representative each (leading coefficient 1).
fn kernel_lines<F: Felt>(kernel: &PackedMatrix<F>) -> Vec<Vec<u64>> {
    let k = kernel.rows();
    let w = kernel.cols().div_ceil(64).max(1);
    let q = F::Q as usize;
    let mut out = Vec::new();
    let mut coeffs = vec![0u8; k];
    loop {
        // next tuple
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            coeffs[i] += 1;
            if (coeffs[i] as usize) < q {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
        // keep one representative per line: last nonzero coefficient is 1
        let last = coeffs.iter().rposition(|&c| c != 0).expect("nonzero tuple");
        if coeffs[last] != 1 {
            continue;
        }
        let mut v = vec![0u64; w * F::PLANES];
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                F::row_addmul(&mut v, kernel.row(i), w, F::from_u8(c));
            }
        }
        out.push(v);
    }
}

/// One Norton split attempt with the given algebra element.
///
/// Every kernel line of the candidate must spin to the full module, and
/// every kernel line of the transposed candidate to the full transposed
/// module, before irreducibility is certified.
pub fn split<F: Felt>(m: &Module<F>, candidate: &PackedMatrix<F>) -> SplitOutcome<F> {
    let kernel = candidate.left_nullspace();
    if kernel.rows() == 0 || kernel.rows() > MAX_NULLITY {
        return SplitOutcome::NoDecision;
    }
    let w = kernel.cols().div_ceil(64).max(1);
    for line in kernel_lines(&kernel) {
        let mut seed = PackedMatrix::<F>::zero(1, m.dim);
        seed.row_mut(0).copy_from_slice(&line[..w * F::PLANES]);
        let basis = spin_up(&seed, &m.gens);
        if basis.rows() < m.dim {
            let (sub, quot) = carve(m, &basis);
            return SplitOutcome::Split { sub, quot, sub_basis: basis };
        }
    }
    // dual side
    let mt = m.transposed();
    let kernel_t = candidate.transpose().left_nullspace();
    if kernel_t.rows() > MAX_NULLITY {
        return SplitOutcome::NoDecision;
    }
    for line in kernel_lines(&kernel_t) {
        let mut seed = PackedMatrix::<F>::zero(1, m.dim);
        seed.row_mut(0).copy_from_slice(&line[..w * F::PLANES]);
        let basis = spin_up(&seed, &mt.gens);
        if basis.rows() < m.dim {
            // a proper submodule of the dual; its annihilator (the vectors
            // orthogonal to it) is a proper invariant subspace of the
            // original module
            let ann = basis.nullspace();
            let closed = spin_up(&ann, &m.gens);
            assert!(
                closed.rows() < m.dim,
                "dual annihilator must be a proper submodule"
            );
            let (sub, quot) = carve(m, &closed);
            return SplitOutcome::Split { sub, quot, sub_basis: closed };
        }
    }
    SplitOutcome::Irreducible
}

/// A random element of the enveloping algebra: a small linear combination of
/// short random words in the generators.  Deterministic per RNG state.
pub fn random_algebra_element<F: Felt>(
    gens: &[PackedMatrix<F>],
    rng: &mut Rng,
    max_word_len: usize,
) -> PackedMatrix<F> {
    let dim = gens.first().map_or(0, |g| g.rows());
    let mut acc = PackedMatrix::<F>::zero(dim, dim);
    let words = 2 + rng.below(3) as usize;
    for _ in 0..words {
        let len = 1 + rng.below(max_word_len.max(1) as u64) as usize;
        let mut word = gens[rng.below(gens.len() as u64) as usize].clone();
        for _ in 1..len {
            word = word.mat_mul(&gens[rng.below(gens.len() as u64) as usize]);
        }
        let coeff = F::from_u8(1 + rng.below(F::Q - 1) as u8);
        acc = acc.add(&word.scale(coeff));
    }
    acc
}

/// One composition factor class in a chop report.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ChopEntry {
    pub dim: usize,
    pub mult: usize,
    pub fingerprint: String,
}

/// Multiset of composition factors, sorted by (dim, fingerprint).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChopResult {
    pub entries: Vec<ChopEntry>,
}

impl ChopResult {
    pub fn total_dim(&self) -> usize {
        self.entries.iter().map(|e| e.dim * e.mult).sum()
    }

    pub fn dim_multiset(&self) -> Vec<(usize, usize)> {
        let mut m: BTreeMap<usize, usize> = BTreeMap::new();
        for e in &self.entries {
            *m.entry(e.dim).or_default() += e.mult;
        }
        m.into_iter().collect()
    }

    /// Report format: one line `dim mult fingerprint` per factor class.
    pub fn to_report(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            s.push_str(&format!("{} {} {}\n", e.dim, e.mult, e.fingerprint));
        }
        s
    }
}

pub struct ChopOutcome<F: Felt> {
    /// One representative module per isomorphism class, with multiplicity.
    pub factors: Vec<(Module<F>, usize)>,
    pub result: ChopResult,
}

/// Chop a module into composition factors, grouping them by isomorphism.
///
/// The retry budget bounds the number of random algebra elements tried per
/// recursion node; exhaustion is an explicit error, never a wrong answer.
pub fn chop<F: Felt>(m: &Module<F>, seed: u64) -> Result<ChopOutcome<F>, ChopError> {
    chop_with_budget(m, seed, 200)
}

pub fn chop_with_budget<F: Felt>(
    m: &Module<F>,
    seed: u64,
    budget: usize,
) -> Result<ChopOutcome<F>, ChopError> {
    let mut rng = Rng::new(seed ^ 0xc2b2ae3d27d4eb4f);
    let mut leaves: Vec<Module<F>> = Vec::new();
    let mut stack = vec![m.clone()];
    while let Some(node) = stack.pop() {
        if node.dim == 0 {
            continue;
        }
        if node.dim == 1 {
            leaves.push(node);
            continue;
        }
        let mut decision = None;
        for attempt in 0..budget {
            let max_len = 2 + attempt / 20;
            let cand = random_algebra_element(&node.gens, &mut rng, max_len);
            match split(&node, &cand) {
                SplitOutcome::NoDecision => continue,
                outcome => {
                    decision = Some(outcome);
                    break;
                }
            }
        }
        match decision {
            None => return Err(ChopError::Budget(node.dim)),
            Some(SplitOutcome::Irreducible) => leaves.push(node),
            Some(SplitOutcome::Split { sub, quot, .. }) => {
                stack.push(sub);
                stack.push(quot);
            }
            Some(SplitOutcome::NoDecision) => unreachable!(),
        }
    }

    // group leaves by isomorphism
    let mut classes: Vec<(Module<F>, usize)> = Vec::new();
    let mut iso_rng = Rng::new(seed ^ 0xa0761d6478bd642f);
    for leaf in leaves {
        let mut matched = false;
        for (rep, mult) in classes.iter_mut() {
            if leaf.dim == rep.dim && isomorphic(&leaf, rep, &mut iso_rng)? {
                *mult += 1;
                matched = true;
                break;
            }
        }
        if !matched {
            classes.push((leaf, 1));
        }
    }

    let mut entries: Vec<ChopEntry> = classes
        .iter()
        .map(|(rep, mult)| ChopEntry {
            dim: rep.dim,
            mult: *mult,
            fingerprint: fingerprint(rep),
        })
        .collect();
    let mut order: Vec<usize> = (0..entries.len()).collect();
    order.sort_by(|&a, &b| (entries[a].dim, &entries[a].fingerprint).cmp(&(entries[b].dim, &entries[b].fingerprint)));
    let factors: Vec<(Module<F>, usize)> = order.iter().map(|&i| classes[i].clone()).collect();
    entries.sort();
    Ok(ChopOutcome {
        factors,
        result: ChopResult { entries },
    })
}

/// The fixed public word list used for fingerprints: with generators
/// `g0..g{k-1}` and `h = g_{1 mod k}`, the words are
/// `g0`, `h`, `g0+h`, `g0*h`, `g0*h + g0`, `(g0+h)*h`.
/// The fingerprint is `dim` together with the ranks of these words, folded
/// through FNV-1a and printed in hex.
pub fn fingerprint<F: Felt>(m: &Module<F>) -> String {
    if m.gens.is_empty() {
        return format!("{:016x}", fnv(&[m.dim as u64]));
    }
    let g0 = &m.gens[0];
    let h = &m.gens[1 % m.gens.len()];
    let words = [
        g0.clone(),
        h.clone(),
        g0.add(h),
        g0.mat_mul(h),
        g0.mat_mul(h).add(g0),
        g0.add(h).mat_mul(h),
    ];
    let mut acc = vec![m.dim as u64, F::Q];
    for wrd in &words {
        acc.push(wrd.rank() as u64);
    }
    format!("{:016x}", fnv(&acc))
}

fn fnv(xs: &[u64]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &x in xs {
        for b in x.to_le_bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    h
}

/// Standard basis from a seed vector: breadth-first images under the
/// generators in order, keeping each new vector that is independent.
/// Canonical given the seed and generator order.
pub fn standard_basis<F: Felt>(
    seed: &PackedMatrix<F>,
    gens: &[PackedMatrix<F>],
) -> PackedMatrix<F> {
    let cols = seed.cols();
    let mut ech = Echelon::<F>::new(cols);
    let mut basis: Vec<Vec<u64>> = Vec::new();
    let mut probe = seed.row(0).to_vec();
    if ech.insert(&mut probe).is_some() {
        basis.push(seed.row(0).to_vec());
    }
    let w = cols.div_ceil(64).max(1);
    let mut at = 0;
    while at < basis.len() && basis.len() < cols {
        let v = basis[at].clone();
        for g in gens {
            let mut img = vec![0u64; w * F::PLANES];
            for c in 0..cols {
                let coeff = F::row_get(&v, w, c);
                if !coeff.is_zero() {
                    F::row_addmul(&mut img, g.row(c), w, coeff);
                }
            }
            let mut copy = img.clone();
            if ech.insert(&mut copy).is_some() {
                basis.push(img);
                if basis.len() == cols {
                    break;
                }
            }
        }
        at += 1;
    }
    let mut out = PackedMatrix::zero(basis.len(), cols);
    for (i, r) in basis.iter().enumerate() {
        out.row_mut(i).copy_from_slice(r);
    }
    out
}

/// Decide whether two irreducible modules are isomorphic, by the standard
/// basis method on a distinguishing algebra element of nullity one.
pub fn isomorphic<F: Felt>(a: &Module<F>, b: &Module<F>, rng: &mut Rng) -> Result<bool, MtxError> {
    if a.dim != b.dim || a.gens.len() != b.gens.len() {
        return Ok(false);
    }
    if a.dim == 0 {
        return Ok(true);
    }
    if a.dim == 1 {
        return Ok(a.gens.iter().zip(&b.gens).all(|(x, y)| x == y));
    }
    for _attempt in 0..400 {
        // the same formal word evaluated in both modules
        let len = 2 + rng.below(6) as usize;
        let terms = 2 + rng.below(3) as usize;
        let mut wa = PackedMatrix::<F>::zero(a.dim, a.dim);
        let mut wb = PackedMatrix::<F>::zero(b.dim, b.dim);
        for _ in 0..terms {
            let mut idx = vec![rng.below(a.gens.len() as u64) as usize];
            for _ in 1..len {
                idx.push(rng.below(a.gens.len() as u64) as usize);
            }
            let coeff = F::from_u8(1 + rng.below(F::Q - 1) as u8);
            let mut pa = a.gens[idx[0]].clone();
            let mut pb = b.gens[idx[0]].clone();
            for &i in &idx[1..] {
                pa = pa.mat_mul(&a.gens[i]);
                pb = pb.mat_mul(&b.gens[i]);
            }
            wa = wa.add(&pa.scale(coeff));
            wb = wb.add(&pb.scale(coeff));
        }
        let ka = wa.left_nullspace();
        let kb = wb.left_nullspace();
        if ka.rows() != kb.rows() {
            return Ok(false);
        }
        if ka.rows() != 1 {
            continue;
        }
        let sa = standard_basis(&ka, &a.gens);
        let sb = standard_basis(&kb, &b.gens);
        if sa.rows() < a.dim || sb.rows() < b.dim {
            return Err(MtxError::NotIrreducible);
        }
        let sa_inv = sa.inverse().expect("standard basis is invertible");
        let sb_inv = sb.inverse().expect("standard basis is invertible");
        for (ga, gb) in a.gens.iter().zip(&b.gens) {
            let ta = sa.mat_mul(ga).mat_mul(&sa_inv);
            let tb = sb.mat_mul(gb).mat_mul(&sb_inv);
            if ta != tb {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    Err(MtxError::BudgetExhausted)
}

/// Common 1-eigenspace of the given algebra elements, as an echelonized
/// basis inside the module's row space.
pub fn fixed_space<F: Felt>(dim: usize, elements: &[PackedMatrix<F>]) -> PackedMatrix<F> {
    let mut basis = PackedMatrix::<F>::identity(dim);
    for m in elements {
        let shifted = m.sub(&PackedMatrix::identity(dim));
        let constrained = basis.mat_mul(&shifted);
        let kernel = constrained.left_nullspace();
        basis = kernel.mat_mul(&basis);
        if basis.rows() == 0 {
            return basis;
        }
    }
    let mut b = basis.clone();
    b.rref();
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Gf3;
    use crate::MatGf3;

    /// The natural 3-dimensional permutation module of S3 over GF(3),
    /// generated by the transposition (1 2) and the 3-cycle (1 2 3).
    fn s3_permutation_module() -> Module<Gf3> {
        let transposition = MatGf3::from_fn(3, 3, |i, j| {
            let img = [1, 0, 2][i];
            Gf3(u8::from(j == img))
        });
        let cycle = MatGf3::from_fn(3, 3, |i, j| {
            let img = [1, 2, 0][i];
            Gf3(u8::from(j == img))
        });
        Module::new(vec![transposition, cycle]).unwrap()
    }

    #[test]
    fn spin_up_basics() {
        let m = s3_permutation_module();
        let full = MatGf3::identity(3);
        assert_eq!(spin_up(&full, &m.gens).rows(), 3);
        let zero = MatGf3::zero(1, 3);
        assert_eq!(spin_up(&zero, &m.gens).rows(), 0);
        // the all-ones vector spans an invariant line
        let ones = MatGf3::from_fn(1, 3, |_, _| Gf3(1));
        let basis = spin_up(&ones, &m.gens);
        assert_eq!(basis.rows(), 1);
        for g in &m.gens {
            let img = basis.mat_mul(g);
            let stacked = MatGf3::vstack(&[&basis, &img]);
            assert_eq!(stacked.rank(), basis.rank(), "invariance");
        }
    }

    #[test]
    fn s3_permutation_module_chops_to_three_lines() {
        let m = s3_permutation_module();
        let out = chop(&m, 1).unwrap();
        assert_eq!(out.result.total_dim(), 3);
        assert_eq!(out.result.dim_multiset(), vec![(1, 3)]);
        // brute-force oracle at dimension 3: the invariant lines are exactly
        // span(1,1,1) (trivial) and span(1,-1,0)+... the sign line; the
        // composition factors are trivial x2 (top and socle around sign? in
        // char 3 the permutation module is uniserial triv-sign-triv? verify
        // multiplicities instead by Brauer character: 2 trivial + 1 sign)
        let trivial_count: usize = out
            .factors
            .iter()
            .filter(|(rep, _)| rep.gens.iter().all(|g| g == &MatGf3::identity(1)))
            .map(|(_, m)| *m)
            .sum();
        let sign_count: usize = out
            .factors
            .iter()
            .filter(|(rep, _)| {
                rep.gens[0] == MatGf3::from_fn(1, 1, |_, _| Gf3(2))
                    && rep.gens[1] == MatGf3::identity(1)
            })
            .map(|(_, m)| *m)
            .sum();
        assert_eq!(trivial_count, 2, "trivial factor multiplicity");
        assert_eq!(sign_count, 1, "sign factor multiplicity");
    }

    #[test]
    fn chop_multiset_stable_across_seeds() {
        let m = s3_permutation_module();
        let reference = chop(&m, 0).unwrap().result;
        for seed in 1..5 {
            let r = chop(&m, seed).unwrap().result;
            assert_eq!(r, reference, "seed {seed}");
        }
    }

    #[test]
    fn direct_sum_splits() {
        let m = s3_permutation_module();
        // A (+) A for the 3-dim module: 6-dimensional, factors double up
        let gens: Vec<MatGf3> = m
            .gens
            .iter()
            .map(|g| {
                MatGf3::from_fn(6, 6, |i, j| {
                    if i < 3 && j < 3 {
                        g.get(i, j)
                    } else if i >= 3 && j >= 3 {
                        g.get(i - 3, j - 3)
                    } else {
                        Gf3(0)
                    }
                })
            })
            .collect();
        let sum = Module::new(gens).unwrap();
        let out = chop(&sum, 3).unwrap();
        assert_eq!(out.result.dim_multiset(), vec![(1, 6)]);
    }

    #[test]
    fn one_dimensional_modules() {
        let triv = Module::new(vec![MatGf3::identity(1), MatGf3::identity(1)]).unwrap();
        let sign = Module::new(vec![MatGf3::from_fn(1, 1, |_, _| Gf3(2)), MatGf3::identity(1)]).unwrap();
        let out = chop(&triv, 0).unwrap();
        assert_eq!(out.result.entries.len(), 1);
        assert_eq!(out.result.entries[0].mult, 1);
        let mut rng = Rng::new(0);
        assert!(isomorphic(&triv, &triv.clone(), &mut rng).unwrap());
        assert!(!isomorphic(&triv, &sign, &mut rng).unwrap());
        assert!(!isomorphic(&sign, &triv, &mut rng).unwrap());
    }

    #[test]
    fn fixed_space_of_identity_is_everything() {
        let id = MatGf3::identity(4);
        let fs = fixed_space(4, &[id]);
        assert_eq!(fs.rows(), 4);
        // fixed space of the 3-cycle inside the permutation module is the
        // line of constant vectors plus... over GF(3) the matrix P - I has
        // rank 2 so the fixed space is 1-dimensional
        let m = s3_permutation_module();
        let fs = fixed_space(3, &[m.gens[1].clone()]);
        assert_eq!(fs.rows(), 1);
    }

    #[test]
    fn random_algebra_element_is_deterministic() {
        let m = s3_permutation_module();
        let a = random_algebra_element(&m.gens, &mut Rng::new(42), 4);
        let b = random_algebra_element(&m.gens, &mut Rng::new(42), 4);
        assert_eq!(a, b);
    }
}
