//! The exact integer engine behind the workbench: unitriangular
//! certificates, PIM certification by feasible-subtraction search,
//! possibility enumeration under nonnegativity, relation and automorphism
//! constraints, Brauer basic sets and condensation resolution.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::decomp::{BlockData, DecompError, Relation};
use crate::{Integer, Rational};

/// Node budget for the feasible-value search.
const SEARCH_BUDGET: usize = 200_000;

/// A unitriangular certificate for a basic set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cert {
    /// positions into the basic-label list, in certified order
    pub order: Vec<usize>,
    /// leading row (table order) of each certified position
    pub leading_rows: Vec<usize>,
}

/// One uncertified column with its tail variables.
#[derive(Clone, Debug)]
pub struct UncertifiedColumn {
    /// position in the basic-label list
    pub pos: usize,
    pub label: String,
    /// index into the certified order
    pub cert_index: usize,
    /// (basic-label position of the tail column, upper bound)
    pub vars: Vec<(usize, i64)>,
}

#[derive(Clone, Debug)]
pub struct PossibilitySpace {
    pub uncertified: Vec<UncertifiedColumn>,
    /// feasible assignments; variables flattened in uncertified order
    pub assignments: Vec<Vec<i64>>,
}

impl PossibilitySpace {
    /// Bounds text: per uncertified column, the parameterized expression.
    pub fn render(&self, labels: &[String]) -> String {
        let mut out = String::new();
        for u in &self.uncertified {
            let vars: Vec<String> = u
                .vars
                .iter()
                .map(|&(tail, bound)| format!("{}<={}", labels[tail], bound))
                .collect();
            out.push_str(&format!("{}: {}\n", u.label, vars.join(" ")));
        }
        out.push_str(&format!("{} assignments\n", self.assignments.len()));
        out
    }
}

/// Find the unitriangular certificate of a set of columns against the
/// degree-sorted rows, or a witness that none exists.
pub fn check_unitriangular(
    vectors: &[&[i64]],
    row_order: &[usize],
) -> Result<Cert, String> {
    let mut leads: Vec<(usize, usize)> = Vec::with_capacity(vectors.len());
    for (pos, v) in vectors.iter().enumerate() {
        let mut lead = None;
        for (s, &row) in row_order.iter().enumerate() {
            if v[row] != 0 {
                lead = Some((s, row));
                break;
            }
        }
        let Some((s, row)) = lead else {
            return Err(format!("column {pos} is zero"));
        };
        if v[row] != 1 {
            return Err(format!("column {pos} has leading entry {} != 1", v[row]));
        }
        leads.push((s, pos));
    }
    let mut sorted = leads.clone();
    sorted.sort();
    for pair in sorted.windows(2) {
        if pair[0].0 == pair[1].0 {
            return Err(format!(
                "columns {} and {} share the leading row",
                pair[0].1, pair[1].1
            ));
        }
    }
    let order: Vec<usize> = sorted.iter().map(|&(_, pos)| pos).collect();
    let leading_rows: Vec<usize> = sorted.iter().map(|&(s, _)| row_order[s]).collect();
    Ok(Cert {
        order,
        leading_rows,
    })
}

/// Check that the square submatrix over the given rows is unimodular.
pub fn check_unimodular(vectors: &[&[i64]], rows: &[usize]) -> Result<(), String> {
    if rows.len() != vectors.len() {
        return Err(format!(
            "need {} rows for a square submatrix, got {}",
            vectors.len(),
            rows.len()
        ));
    }
    let n = rows.len();
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|&r| vectors.iter().map(|v| i128::from(v[r])).collect())
        .collect();
    // fraction-free Gaussian elimination (Bareiss)
    let mut prev: i128 = 1;
    for k in 0..n {
        if m[k][k] == 0 {
            let swap = (k + 1..n).find(|&i| m[i][k] != 0);
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    prev = -prev;
                }
                None => return Err("submatrix is singular".into()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    let det = m[n - 1][n - 1];
    if det == 1 || det == -1 {
        Ok(())
    } else {
        Err(format!("determinant {det} is not a unit"))
    }
}

/// All feasible values of the PIM hiding in certified position `c`,
/// ignoring cross-column coupling (a sound over-approximation): the column
/// value minus any nonnegative combination of feasible later values that
/// stays nonnegative.
fn feasible_values(
    cols: &[Vec<i64>],
    budget: &mut usize,
) -> Result<Vec<Vec<Vec<i64>>>, DecompError> {
    let m = cols.len();
    let mut feas: Vec<Vec<Vec<i64>>> = vec![Vec::new(); m];
    for c in (0..m).rev() {
        let mut set: BTreeSet<Vec<i64>> = BTreeSet::new();
        set.insert(cols[c].clone());
        for l in c + 1..m {
            let mut next: BTreeSet<Vec<i64>> = BTreeSet::new();
            for p in &set {
                next.insert(p.clone());
                for g in &feas[l] {
                    let mut acc = p.clone();
                    'mult: loop {
                        for (a, b) in acc.iter_mut().zip(g) {
                            *a -= b;
                            if *a < 0 {
                                break 'mult;
                            }
                        }
                        if *budget == 0 {
                            return Err(DecompError::SearchBudget(SEARCH_BUDGET));
                        }
                        *budget -= 1;
                        next.insert(acc.clone());
                    }
                }
            }
            set = next;
        }
        feas[c] = set.into_iter().collect();
    }
    Ok(feas)
}

fn leq(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Certify PIMs among a unitriangular basic set: a column is a PIM iff no
/// feasible value of a later column can be subtracted from it without
/// breaking nonnegativity.
pub fn certify_by_feasible_subtraction(
    vectors: &[Vec<i64>],
    _row_order: &[usize],
    cert: &Cert,
) -> Result<Vec<bool>, DecompError> {
    let m = cert.order.len();
    let cols: Vec<Vec<i64>> = cert.order.iter().map(|&p| vectors[p].clone()).collect();
    let mut budget = SEARCH_BUDGET;
    let feas = feasible_values(&cols, &mut budget)?;
    let mut certified_by_cert_index = vec![true; m];
    for c in 0..m {
        'search: for l in c + 1..m {
            for g in &feas[l] {
                if leq(g, &cols[c]) {
                    certified_by_cert_index[c] = false;
                    break 'search;
                }
            }
        }
    }
    let mut out = vec![false; vectors.len()];
    for (ci, &pos) in cert.order.iter().enumerate() {
        out[pos] = certified_by_cert_index[ci];
    }
    Ok(out)
}

/// Certify PIMs via a unimodular row set: a basic column is a PIM iff its
/// restriction to those rows is a unit vector.
pub fn certify_by_unimodular_rows(vectors: &[Vec<i64>], rows: &[usize]) -> Vec<bool> {
    vectors
        .iter()
        .map(|v| {
            let nonzero: Vec<i64> = rows.iter().map(|&r| v[r]).filter(|&x| x != 0).collect();
            nonzero == [1]
        })
        .collect()
}

/// Express `theta` over a unitriangular basic set by back-substitution;
/// None if it is not in the integer span.
pub fn express_by_back_substitution(
    vectors: &[Vec<i64>],
    _row_order: &[usize],
    cert: &Cert,
    theta: &[i64],
) -> Option<Vec<i64>> {
    let mut residual = theta.to_vec();
    let mut coeffs = vec![0i64; vectors.len()];
    for (ci, &pos) in cert.order.iter().enumerate() {
        let r = cert.leading_rows[ci];
        let c = residual[r];
        if c != 0 {
            coeffs[pos] = c;
            for (x, y) in residual.iter_mut().zip(&vectors[pos]) {
                *x -= c * y;
            }
        }
    }
    if residual.iter().all(|&x| x == 0) {
        Some(coeffs)
    } else {
        None
    }
}

/// Express `theta` over an arbitrary basic set by exact rational
/// elimination; None unless the solution is unique, integral and exact.
pub fn express_by_solve(vectors: &[Vec<i64>], theta: &[i64]) -> Option<Vec<i64>> {
    let n = theta.len();
    let m = vectors.len();
    // augmented system over the rationals: columns are the basic vectors
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|r| {
            let mut row: Vec<Rational> = (0..m)
                .map(|c| Rational::from_integer(Integer::from(vectors[c][r])))
                .collect();
            row.push(Rational::from_integer(Integer::from(theta[r])));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rr = 0;
    for c in 0..m {
        let Some(p) = (rr..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rr, p);
        let inv = a[rr][c].recip();
        for x in a[rr].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != rr && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..=m {
                    let sub = &f * &a[rr][j];
                    a[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        rr += 1;
    }
    if pivots.len() < m {
        // columns are dependent; the expression would not be unique
        return None;
    }
    // consistency: zero rows must have zero rhs
    for row in a.iter().skip(rr) {
        if !row[m].is_zero() {
            return None;
        }
    }
    let mut coeffs = vec![0i64; m];
    for (i, &c) in pivots.iter().enumerate() {
        let v = &a[i][m];
        if !v.is_integer() {
            return None;
        }
        coeffs[c] = num_traits::ToPrimitive::to_i64(&v.to_integer())?;
    }
    // exactness check
    for r in 0..n {
        let mut acc = 0i64;
        for c in 0..m {
            acc += coeffs[c] * vectors[c][r];
        }
        if acc != theta[r] {
            return None;
        }
    }
    Some(coeffs)
}

/// Verify a relation-justified subtraction: the relation target expands
/// over the basic set with a negative coefficient at each subtracted PIM,
/// and interval bounds force the claimed multiplicity into the source.
pub fn verify_relation_rule(
    labels: &[String],
    vectors: &[Vec<i64>],
    certified: &[bool],
    rel: &Relation,
    source: &str,
    terms: &[(i64, String)],
) -> Result<(), String> {
    let t = labels
        .iter()
        .position(|l| l == source)
        .ok_or_else(|| format!("`{source}` is not in the basic set"))?;
    let rt = rel.coeffs[t];
    if rt <= 0 {
        return Err(format!(
            "relation {} has no positive coefficient at `{source}`",
            rel.target
        ));
    }
    for (mult, pim) in terms {
        let p = labels
            .iter()
            .position(|l| l == pim)
            .ok_or_else(|| format!("`{pim}` is not in the basic set"))?;
        let rp = rel.coeffs[p];
        if rp >= 0 {
            return Err(format!(
                "relation {} has no negative coefficient at `{pim}`",
                rel.target
            ));
        }
        // lower bound on the multiplicity of the pim inside the source:
        // sum over the relation of r_j * content_j >= 0, with content
        // bounded above by the pointwise max subtraction for positive terms
        let mut slack: i64 = -rp;
        for (j, &rj) in rel.coeffs.iter().enumerate() {
            if j == t || rj <= 0 {
                continue;
            }
            let maxsub = if certified[j] {
                0
            } else {
                pointwise_max_subtraction(&vectors[j], &vectors[p])
            };
            slack -= rj * maxsub;
        }
        let lower = slack.div_euclid(rt) + i64::from(slack.rem_euclid(rt) != 0);
        if lower < *mult {
            return Err(format!(
                "relation {} only forces multiplicity {lower} of `{pim}` in `{source}`, claimed {mult}",
                rel.target
            ));
        }
    }
    Ok(())
}

fn pointwise_max_subtraction(theta: &[i64], phi: &[i64]) -> i64 {
    let mut m = i64::MAX;
    for (&t, &p) in theta.iter().zip(phi) {
        if p > 0 {
            m = m.min(t / p);
        }
    }
    if m == i64::MAX {
        0
    } else {
        m
    }
}

/// Determine which certified positions carry a provably automorphism-fixed
/// irreducible Brauer character: the leading row's degree group contains no
/// other leading row.
fn alpha_fixed_columns(block: &BlockData, cert: &Cert) -> Vec<bool> {
    cert.leading_rows
        .iter()
        .map(|&r| {
            let d = &block.degrees[r];
            cert.leading_rows
                .iter()
                .filter(|&&r2| &block.degrees[r2] == d)
                .count()
                == 1
        })
        .collect()
}

fn push_forward(alpha: &[usize], v: &[i64]) -> Vec<i64> {
    (0..v.len()).map(|r| v[alpha[r]]).collect()
}

/// Verify an automorphism-justified subtraction: the source's PIM is
/// provably alpha-invariant, and in every feasible tail assignment the
/// subtracted multiplicities are forced.
#[allow(clippy::too_many_arguments)]
pub fn verify_alpha_rule(
    labels: &[String],
    vectors: &[Vec<i64>],
    block: &BlockData,
    cert: &Cert,
    certified: &[bool],
    alpha: &[usize],
    source: &str,
    terms: &[(i64, String)],
) -> Result<(), String> {
    let t = labels
        .iter()
        .position(|l| l == source)
        .ok_or_else(|| format!("`{source}` is not in the basic set"))?;
    let ct = cert
        .order
        .iter()
        .position(|&p| p == t)
        .expect("basic column is in the certificate");
    let fixed = alpha_fixed_columns(block, cert);
    if !fixed[ct] {
        return Err(format!(
            "the leading Brauer character of `{source}` is not provably alpha-invariant"
        ));
    }
    // tail variables of the source column
    let mut vars: Vec<(usize, i64)> = Vec::new();
    for l in ct + 1..cert.order.len() {
        let pos = cert.order[l];
        let bound = vectors[t][cert.leading_rows[l]];
        if bound > 0 {
            if !certified[pos] {
                return Err(format!(
                    "tail column `{}` of `{source}` is not certified; cannot verify",
                    labels[pos]
                ));
            }
            vars.push((pos, bound));
        }
    }
    // enumerate the box; a tail assignment is feasible if the candidate PIM
    // stays nonnegative and is alpha-invariant
    let mut feasible: Vec<Vec<i64>> = Vec::new();
    let mut assignment = vec![0i64; vars.len()];
    loop {
        let mut cand = vectors[t].clone();
        let mut ok = true;
        for (k, &(pos, _)) in vars.iter().enumerate() {
            for (x, y) in cand.iter_mut().zip(&vectors[pos]) {
                *x -= assignment[k] * y;
                if *x < 0 {
                    ok = false;
                }
            }
        }
        if ok && push_forward(alpha, &cand) == cand {
            feasible.push(assignment.clone());
        }
        // next assignment in the box
        let mut k = 0;
        loop {
            if k == vars.len() {
                if feasible.is_empty() {
                    return Err("no feasible alpha-invariant decomposition exists".into());
                }
                for (mult, pim) in terms {
                    let vk = vars
                        .iter()
                        .position(|&(pos, _)| &labels[pos] == pim)
                        .ok_or_else(|| format!("`{pim}` does not occur in the tail of `{source}`"))?;
                    let forced = feasible.iter().map(|a| a[vk]).min().expect("nonempty");
                    if forced < *mult {
                        return Err(format!(
                            "alpha symmetry only forces multiplicity {forced} of `{pim}` in `{source}`, claimed {mult}"
                        ));
                    }
                }
                return Ok(());
            }
            assignment[k] += 1;
            if assignment[k] <= vars[k].1 {
                break;
            }
            assignment[k] = 0;
            k += 1;
        }
    }
}

/// Concrete PIM column values (in certified order) for one assignment.
pub fn phi_columns(
    vectors: &[Vec<i64>],
    cert: &Cert,
    space: &PossibilitySpace,
    assignment: &[i64],
) -> Option<Vec<Vec<i64>>> {
    let m = cert.order.len();
    let mut phi: Vec<Option<Vec<i64>>> = vec![None; m];
    // map basic position -> cert index
    let cert_index_of = |pos: usize| cert.order.iter().position(|&p| p == pos).expect("in cert");
    for ci in (0..m).rev() {
        let pos = cert.order[ci];
        let uncert = space.uncertified.iter().position(|u| u.pos == pos);
        let value = match uncert {
            None => vectors[pos].clone(),
            Some(ui) => {
                let offset: usize = space.uncertified[..ui].iter().map(|u| u.vars.len()).sum();
                let mut v = vectors[pos].clone();
                for (k, &(tail_pos, _)) in space.uncertified[ui].vars.iter().enumerate() {
                    let y = assignment[offset + k];
                    if y == 0 {
                        continue;
                    }
                    let tail_ci = cert_index_of(tail_pos);
                    let tail_val = phi[tail_ci].as_ref().expect("evaluated later tail first");
                    for (x, g) in v.iter_mut().zip(tail_val) {
                        *x -= y * g;
                        if *x < 0 {
                            return None;
                        }
                    }
                }
                v
            }
        };
        phi[ci] = Some(value);
    }
    Some(phi.into_iter().map(|v| v.expect("all filled")).collect())
}

/// Enumerate feasible assignments for the uncertified columns under
/// nonnegativity, relation expansions and automorphism symmetry.
pub fn enumerate_possibilities(
    labels: &[String],
    vectors: &[Vec<i64>],
    block: &BlockData,
    cert: &Cert,
    certified: &[bool],
    relations: &[(String, Vec<i64>)],
) -> Result<PossibilitySpace, DecompError> {
    let m = cert.order.len();
    let fixed = alpha_fixed_columns(block, cert);
    let mut uncertified = Vec::new();
    for (ci, &pos) in cert.order.iter().enumerate() {
        if certified[pos] {
            continue;
        }
        let mut vars = Vec::new();
        for l in ci + 1..m {
            let tail_pos = cert.order[l];
            let bound = vectors[pos][cert.leading_rows[l]];
            if bound > 0 {
                vars.push((tail_pos, bound));
            }
        }
        uncertified.push(UncertifiedColumn {
            pos,
            label: labels[pos].clone(),
            cert_index: ci,
            vars,
        });
    }
    let space_proto = PossibilitySpace {
        uncertified,
        assignments: Vec::new(),
    };
    let total_vars: usize = space_proto.uncertified.iter().map(|u| u.vars.len()).sum();
    let mut assignments = Vec::new();
    let mut current = vec![0i64; total_vars];
    let bounds: Vec<i64> = space_proto
        .uncertified
        .iter()
        .flat_map(|u| u.vars.iter().map(|&(_, b)| b))
        .collect();
    let mut nodes = 0usize;
    loop {
        nodes += 1;
        if nodes > SEARCH_BUDGET {
            return Err(DecompError::SearchBudget(SEARCH_BUDGET));
        }
        if let Some(phi) = phi_columns(vectors, cert, &space_proto, &current) {
            let mut ok = true;
            // automorphism symmetry on the provably fixed uncertified columns
            if let Some(alpha) = &block.alpha_rows {
                for u in &space_proto.uncertified {
                    if fixed[u.cert_index] {
                        let v = &phi[u.cert_index];
                        if &push_forward(alpha, v) != v {
                            ok = false;
                            break;
                        }
                    }
                }
            }
            // relation targets must expand nonnegatively over the PIMs
            if ok {
                for (label, target) in relations {
                    let _ = label;
                    match expand_over(&phi, cert, target) {
                        Some(coeffs) if coeffs.iter().all(|&c| c >= 0) => {}
                        _ => {
                            ok = false;
                            break;
                        }
                    }
                }
            }
            if ok {
                assignments.push(current.clone());
            }
        }
        // advance
        let mut k = 0;
        loop {
            if k == total_vars {
                let mut space = space_proto;
                space.assignments = assignments;
                return Ok(space);
            }
            current[k] += 1;
            if current[k] <= bounds[k] {
                break;
            }
            current[k] = 0;
            k += 1;
        }
    }
}

/// Back-substitute a vector over concrete PIM columns (in certified order).
fn expand_over(phi: &[Vec<i64>], cert: &Cert, target: &[i64]) -> Option<Vec<i64>> {
    let mut residual = target.to_vec();
    let mut coeffs = vec![0i64; phi.len()];
    for ci in 0..phi.len() {
        let r = cert.leading_rows[ci];
        let c = residual[r];
        if c != 0 {
            coeffs[ci] = c;
            for (x, y) in residual.iter_mut().zip(&phi[ci]) {
                *x -= c * y;
            }
        }
    }
    if residual.iter().all(|&x| x == 0) {
        Some(coeffs)
    } else {
        None
    }
}

/// The Brauer basic set attached to a certified basic set of projectives.
#[derive(Clone, Debug)]
pub struct BrauerBasicSet {
    /// basic labels in certified order
    pub labels: Vec<String>,
    /// degree of each beta, in certified order
    pub degrees: Vec<Integer>,
    /// beta-to-phi content per feasible assignment: [pi][j][k]
    pub content: Vec<Vec<Vec<i64>>>,
    /// the full decomposition matrix candidate per assignment:
    /// rows in table order, columns in certified order
    pub d_matrices: Vec<Vec<Vec<i64>>>,
    /// the recurrence: beta_j = hat(chi at leading row j) - sum over
    /// j' < j of k_table[j][j'] * beta_j'
    pub k_table: Vec<Vec<i64>>,
}

/// Derive the Brauer basic set: each beta is the hat of the leading
/// irreducible minus the largest certified multiples of earlier betas that
/// keep the remainder a genuine character across the whole possibility
/// space.
pub fn derive_brauer_basic_set(
    labels: &[String],
    vectors: &[Vec<i64>],
    block: &BlockData,
    cert: &Cert,
    space: &PossibilitySpace,
) -> Result<BrauerBasicSet, DecompError> {
    let m = cert.order.len();
    let n_assign = space.assignments.len();
    if n_assign == 0 {
        return Err(DecompError::EmptyPossibilities);
    }
    // full D matrix per assignment
    let mut d_matrices = Vec::with_capacity(n_assign);
    for a in &space.assignments {
        let phi = phi_columns(vectors, cert, space, a)
            .ok_or(DecompError::EmptyPossibilities)?;
        let rows = block.size();
        let mut d = vec![vec![0i64; m]; rows];
        for (ci, col) in phi.iter().enumerate() {
            for (r, &v) in col.iter().enumerate() {
                d[r][ci] = v;
            }
        }
        d_matrices.push(d);
    }
    // content of the leading-row hats, then greedy subtraction
    let mut content: Vec<Vec<Vec<i64>>> = vec![Vec::new(); n_assign];
    let mut degrees: Vec<Integer> = Vec::with_capacity(m);
    let mut k_table: Vec<Vec<i64>> = Vec::with_capacity(m);
    for j in 0..m {
        let r = cert.leading_rows[j];
        let mut rows: Vec<Vec<i64>> = d_matrices.iter().map(|d| d[r].clone()).collect();
        let mut degree = block.degrees[r].clone();
        let mut ks = vec![0i64; j];
        for jp in 0..j {
            // largest k with row - k * beta_jp >= 0 in every assignment
            let mut k = i64::MAX;
            for (pi, row) in rows.iter().enumerate() {
                let beta = &content[pi][jp];
                let mut this = i64::MAX;
                for (x, y) in row.iter().zip(beta) {
                    if *y > 0 {
                        this = this.min(x / y);
                    }
                }
                k = k.min(this);
            }
            if k == i64::MAX || k == 0 {
                continue;
            }
            for (pi, row) in rows.iter_mut().enumerate() {
                for (x, y) in row.iter_mut().zip(&content[pi][jp]) {
                    *x -= k * y;
                }
            }
            degree -= Integer::from(k) * &degrees[jp];
            ks[jp] = k;
        }
        for (pi, row) in rows.into_iter().enumerate() {
            content[pi].push(row);
        }
        degrees.push(degree);
        k_table.push(ks);
    }
    Ok(BrauerBasicSet {
        labels: cert.order.iter().map(|&p| labels[p].clone()).collect(),
        degrees,
        content,
        d_matrices,
        k_table,
    })
}

/// Filter assignments by the condensation facts: the predicted multiset of
/// (condensed dimension, multiplicity) of the distinguished row must equal
/// the observed chop multiset exactly.
#[allow(clippy::too_many_arguments)]
pub fn resolve_with_condensation(
    _labels: &[String],
    _vectors: &[Vec<i64>],
    _block: &BlockData,
    cert: &Cert,
    space: &PossibilitySpace,
    bbs: &BrauerBasicSet,
    cond_degrees: &std::collections::BTreeMap<String, i64>,
    chop: &[(i64, usize)],
    st_row: usize,
) -> Result<Vec<usize>, DecompError> {
    let m = cert.order.len();
    let mut cond_beta = Vec::with_capacity(m);
    for label in &bbs.labels {
        let v = cond_degrees
            .get(label)
            .ok_or_else(|| DecompError::MissingData(format!("condensed degree of {label}")))?;
        cond_beta.push(*v);
    }
    let mut observed: std::collections::BTreeMap<i64, usize> = std::collections::BTreeMap::new();
    for &(dim, mult) in chop {
        *observed.entry(dim).or_default() += mult;
    }
    let mut survivors = Vec::new();
    for (pi, _a) in space.assignments.iter().enumerate() {
        // cond(phi) by forward substitution through the beta content
        let mut cond_phi = vec![0i64; m];
        let mut ok = true;
        for j in 0..m {
            let mut v = cond_beta[j];
            for k in 0..j {
                v -= bbs.content[pi][j][k] * cond_phi[k];
            }
            if v < 0 {
                ok = false;
                break;
            }
            cond_phi[j] = v;
        }
        if !ok {
            continue;
        }
        let mut predicted: std::collections::BTreeMap<i64, usize> =
            std::collections::BTreeMap::new();
        for j in 0..m {
            let mult = bbs.d_matrices[pi][st_row][j];
            if cond_phi[j] > 0 && mult > 0 {
                *predicted.entry(cond_phi[j]).or_default() += mult as usize;
            }
        }
        if predicted == observed {
            survivors.push(pi);
        }
    }
    Ok(survivors)
}

/// Assemble the final decomposition matrix for one assignment.
pub fn emit_matrix(
    labels: &[String],
    vectors: &[Vec<i64>],
    block: &BlockData,
    cert: &Cert,
    space: &PossibilitySpace,
    assignment: usize,
) -> Result<crate::decomp::DecompositionMatrix, DecompError> {
    let a = &space.assignments[assignment];
    let phi = phi_columns(vectors, cert, space, a).ok_or(DecompError::EmptyPossibilities)?;
    let m = cert.order.len();
    let rows = block.size();
    let mut entries = vec![vec![0i64; m]; rows];
    for (ci, col) in phi.iter().enumerate() {
        for (r, &v) in col.iter().enumerate() {
            entries[r][ci] = v;
        }
    }
    // Brauer degrees from the leading rows
    let mut degrees: Vec<Integer> = Vec::with_capacity(m);
    for j in 0..m {
        let r = cert.leading_rows[j];
        let mut d = block.degrees[r].clone();
        for (k, dk) in degrees.iter().enumerate().take(j) {
            d -= Integer::from(entries[r][k]) * dk;
        }
        degrees.push(d);
    }
    Ok(crate::decomp::DecompositionMatrix {
        block: block.name.clone(),
        col_labels: cert.order.iter().map(|&p| labels[p].clone()).collect(),
        entries,
        brauer_degrees: degrees,
    })
}
