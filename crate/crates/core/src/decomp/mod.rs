//! The decomposition-matrix workbench: projective-character sets, gram
//! matrices, relations, PIM certification, Brauer basic sets, possibility
//! enumeration and resolution against condensation facts, driven by a
//! runbook and recorded in an auditable proof log.
//!
//! All vectors live over the ordinary irreducibles of one block, in table
//! order; the engine sorts rows by (degree, index) internally.

mod engine;
mod runbook;

pub use engine::{Cert, PossibilitySpace, UncertifiedColumn};
pub use runbook::{Runbook, RunbookError, RunbookOutputs, Step};

use std::collections::BTreeMap;
use std::fmt;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::Integer;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecompError {
    #[error("label `{0}` already defined")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("column `{label}` is not divisible by {k}: entry {value} at row {row}")]
    NotDivisible {
        label: String,
        k: i64,
        row: String,
        value: i64,
    },
    #[error("subtraction refused: entry would be negative at row {row}")]
    NegativeEntry { row: String },
    #[error("no basic set declared")]
    NoBasicSet,
    #[error("basic set is not unitriangular: {0}")]
    NotUnitriangular(String),
    #[error("`{0}` is not in the integer span of the basic set")]
    NotInSpan(String),
    #[error("rule not verified: {0}")]
    RuleFailed(String),
    #[error("no PIM certification available")]
    NotCertified,
    #[error("possibility space not computed")]
    NoPossibilities,
    #[error("possibility space is empty: constraints are contradictory")]
    EmptyPossibilities,
    #[error("resolution failed: {0} surviving assignments")]
    ResolutionAmbiguous(usize),
    #[error("missing data for resolve: {0}")]
    MissingData(String),
    #[error("search space exceeded the budget ({0} nodes)")]
    SearchBudget(usize),
    #[error("vector length {got} does not match block size {want}")]
    BadVectorLength { got: usize, want: usize },
    #[error("block has no automorphism data")]
    NoAlpha,
}

/// The block a workbench operates on.
#[derive(Clone, Debug)]
pub struct BlockData {
    pub name: String,
    pub prime: u64,
    /// degrees of the block's ordinary irreducibles, in table order
    pub degrees: Vec<Integer>,
    /// display labels per row
    pub row_labels: Vec<String>,
    /// row positions sorted by (degree, index)
    pub row_order: Vec<usize>,
    /// automorphism action on block rows (table order), if known
    pub alpha_rows: Option<Vec<usize>>,
}

impl BlockData {
    pub fn new(
        name: &str,
        prime: u64,
        degrees: Vec<Integer>,
        alpha_rows: Option<Vec<usize>>,
    ) -> Self {
        let mut row_order: Vec<usize> = (0..degrees.len()).collect();
        row_order.sort_by(|&a, &b| (&degrees[a], a).cmp(&(&degrees[b], b)));
        let mut counts: BTreeMap<&Integer, usize> = BTreeMap::new();
        let mut row_labels = Vec::with_capacity(degrees.len());
        for d in &degrees {
            let n = counts.entry(d).or_insert(0);
            *n += 1;
            if *n == 1 {
                row_labels.push(format!("{d}"));
            } else {
                row_labels.push(format!("{d}#{n}"));
            }
        }
        BlockData {
            name: name.into(),
            prime,
            degrees,
            row_labels,
            row_order,
            alpha_rows,
        }
    }

    pub fn size(&self) -> usize {
        self.degrees.len()
    }
}

/// How a projective column came to be.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Seeded,
    Induced(String),
    Tensor(String, String),
    Conjugate(String),
    Divided { source: String, by: i64 },
    Subtracted { source: String, rule: String },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Seeded => write!(f, "seeded"),
            Provenance::Induced(s) => write!(f, "induced({s})"),
            Provenance::Tensor(a, b) => write!(f, "tensor({a},{b})"),
            Provenance::Conjugate(s) => write!(f, "alpha({s})"),
            Provenance::Divided { source, by } => write!(f, "{source}/{by}"),
            Provenance::Subtracted { source, rule } => write!(f, "{source} - ... [{rule}]"),
        }
    }
}

/// A projective character as an integer vector over the block's rows.
#[derive(Clone, Debug)]
pub struct Projective {
    pub label: String,
    pub provenance: Provenance,
    pub vec: Vec<i64>,
}

/// An expression of a target column over the basic set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub target: String,
    /// coefficients per basic-set label, in basic order
    pub coeffs: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct BasicSet {
    pub labels: Vec<String>,
    pub cert: Option<Cert>,
    /// rows making the square basic submatrix unimodular, when declared
    pub unimodular_rows: Option<Vec<usize>>,
}

/// The outcome: a full decomposition matrix plus the Brauer degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionMatrix {
    pub block: String,
    /// column labels in certified order
    pub col_labels: Vec<String>,
    /// rows in table order, columns in certified order
    pub entries: Vec<Vec<i64>>,
    pub brauer_degrees: Vec<Integer>,
}

/// The workbench state machine.
pub struct Workbench {
    pub block: BlockData,
    pub cols: Vec<Projective>,
    pub basic: Option<BasicSet>,
    pub relations: Vec<Relation>,
    pub certified: Option<Vec<bool>>,
    pub possibilities: Option<PossibilitySpace>,
    /// condensed degree of the basic-set Brauer character per basic label
    pub cond_degrees: Option<BTreeMap<String, i64>>,
    pub chop_facts: Option<Vec<(i64, usize)>>,
    pub resolved: Option<usize>,
    pub log: Vec<String>,
}

impl Workbench {
    pub fn new(block: BlockData) -> Self {
        Workbench {
            block,
            cols: Vec::new(),
            basic: None,
            relations: Vec::new(),
            certified: None,
            possibilities: None,
            cond_degrees: None,
            chop_facts: None,
            resolved: None,
            log: Vec::new(),
        }
    }

    fn log(&mut self, line: String) {
        self.log.push(line);
    }

    pub fn col_by_label(&self, label: &str) -> Result<usize, DecompError> {
        self.cols
            .iter()
            .position(|c| c.label == label)
            .ok_or_else(|| DecompError::UnknownLabel(label.into()))
    }

    /// Register a new projective column.
    pub fn add_column(
        &mut self,
        label: &str,
        provenance: Provenance,
        vec: Vec<i64>,
    ) -> Result<(), DecompError> {
        if self.cols.iter().any(|c| c.label == label) {
            return Err(DecompError::DuplicateLabel(label.into()));
        }
        if vec.len() != self.block.size() {
            return Err(DecompError::BadVectorLength {
                got: vec.len(),
                want: self.block.size(),
            });
        }
        self.log(format!("define {label} [{provenance}]"));
        self.cols.push(Projective {
            label: label.into(),
            provenance,
            vec,
        });
        Ok(())
    }

    /// Divide a column by `k`; every entry must be divisible.
    pub fn divide(&mut self, label: &str, source: &str, k: i64) -> Result<(), DecompError> {
        let idx = self.col_by_label(source)?;
        let vec = self.cols[idx].vec.clone();
        for (row, &v) in vec.iter().enumerate() {
            if v % k != 0 {
                return Err(DecompError::NotDivisible {
                    label: source.into(),
                    k,
                    row: self.block.row_labels[row].clone(),
                    value: v,
                });
            }
        }
        let vec = vec.into_iter().map(|v| v / k).collect();
        self.add_column(
            label,
            Provenance::Divided {
                source: source.into(),
                by: k,
            },
            vec,
        )
    }

    /// Apply the block automorphism to a column.
    pub fn conjugate(&mut self, label: &str, source: &str) -> Result<(), DecompError> {
        let alpha = self
            .block
            .alpha_rows
            .clone()
            .ok_or(DecompError::NoAlpha)?;
        let idx = self.col_by_label(source)?;
        let src = self.cols[idx].vec.clone();
        let vec: Vec<i64> = (0..src.len()).map(|r| src[alpha[r]]).collect();
        self.add_column(label, Provenance::Conjugate(source.into()), vec)
    }

    /// Declare the current basic set; a unitriangular certificate is
    /// computed if one exists.
    pub fn declare_basic(&mut self, labels: &[String]) -> Result<(), DecompError> {
        let mut ids = Vec::with_capacity(labels.len());
        for l in labels {
            ids.push(self.col_by_label(l)?);
        }
        let vectors: Vec<&[i64]> = ids.iter().map(|&i| self.cols[i].vec.as_slice()).collect();
        let cert = engine::check_unitriangular(&vectors, &self.block.row_order);
        match &cert {
            Ok(c) => self.log(format!(
                "basic-set {} [unitriangular, leading rows {:?}]",
                labels.join(" "),
                c.leading_rows
                    .iter()
                    .map(|&r| self.block.row_labels[r].clone())
                    .collect::<Vec<_>>()
            )),
            Err(w) => self.log(format!("basic-set {} [no unitriangular certificate: {w}]", labels.join(" "))),
        }
        self.basic = Some(BasicSet {
            labels: labels.to_vec(),
            cert: cert.ok(),
            unimodular_rows: None,
        });
        self.certified = None;
        self.possibilities = None;
        self.relations.clear();
        Ok(())
    }

    /// Declare the rows over which the basic square submatrix is unimodular.
    pub fn declare_unimodular_rows(&mut self, rows: Vec<usize>) -> Result<(), DecompError> {
        let basic = self.basic.as_mut().ok_or(DecompError::NoBasicSet)?;
        basic.unimodular_rows = Some(rows.clone());
        let labels: Vec<String> = rows
            .iter()
            .map(|&r| self.block.row_labels[r].clone())
            .collect();
        self.log(format!("unimodular-rows {}", labels.join(" ")));
        // verify unimodularity right away
        let basic = self.basic.as_ref().expect("just set");
        let ids: Vec<usize> = basic
            .labels
            .iter()
            .map(|l| self.col_by_label(l).expect("validated on declare"))
            .collect();
        let vectors: Vec<&[i64]> = ids.iter().map(|&i| self.cols[i].vec.as_slice()).collect();
        engine::check_unimodular(&vectors, &rows)
            .map_err(|e| DecompError::NotUnitriangular(e))?;
        Ok(())
    }

    fn basic_vectors(&self) -> Result<(Vec<String>, Vec<Vec<i64>>), DecompError> {
        let basic = self.basic.as_ref().ok_or(DecompError::NoBasicSet)?;
        let mut vectors = Vec::with_capacity(basic.labels.len());
        for l in &basic.labels {
            let idx = self.col_by_label(l)?;
            vectors.push(self.cols[idx].vec.clone());
        }
        Ok((basic.labels.clone(), vectors))
    }

    /// Certify PIMs among the basic columns.
    pub fn certify(&mut self) -> Result<Vec<String>, DecompError> {
        let (labels, vectors) = self.basic_vectors()?;
        let basic = self.basic.as_ref().expect("basic_vectors checked");
        let certified = if let Some(cert) = &basic.cert {
            engine::certify_by_feasible_subtraction(&vectors, &self.block.row_order, cert)?
        } else if let Some(rows) = &basic.unimodular_rows {
            engine::certify_by_unimodular_rows(&vectors, rows)
        } else {
            return Err(DecompError::NotCertified);
        };
        let names: Vec<String> = labels
            .iter()
            .zip(&certified)
            .filter(|(_, &c)| c)
            .map(|(l, _)| l.clone())
            .collect();
        self.log(format!("certify -> PIMs: {}", names.join(" ")));
        self.certified = Some(certified);
        Ok(names)
    }

    /// Express a column over the current basic set.
    pub fn relate(&mut self, target: &str) -> Result<Relation, DecompError> {
        let (labels, vectors) = self.basic_vectors()?;
        let basic = self.basic.as_ref().expect("basic_vectors checked");
        let idx = self.col_by_label(target)?;
        let theta = self.cols[idx].vec.clone();
        let coeffs = if let Some(cert) = &basic.cert {
            engine::express_by_back_substitution(&vectors, &self.block.row_order, cert, &theta)
        } else {
            engine::express_by_solve(&vectors, &theta)
        }
        .ok_or_else(|| DecompError::NotInSpan(target.into()))?;
        let rel = Relation {
            target: target.into(),
            coeffs,
        };
        let pretty: Vec<String> = rel
            .coeffs
            .iter()
            .zip(&labels)
            .filter(|(&c, _)| c != 0)
            .map(|(&c, l)| format!("{c:+}*{l}"))
            .collect();
        self.log(format!("relate {target} = {}", pretty.join(" ")));
        self.relations.retain(|r| r.target != target);
        self.relations.push(rel.clone());
        Ok(rel)
    }

    /// Subtract a combination of certified PIMs from a column, with a
    /// verified justification rule.
    pub fn subtract(
        &mut self,
        label: &str,
        source: &str,
        terms: &[(i64, String)],
        rule: &str,
    ) -> Result<(), DecompError> {
        let src_idx = self.col_by_label(source)?;
        let mut vec = self.cols[src_idx].vec.clone();
        for (mult, pim) in terms {
            let p_idx = self.col_by_label(pim)?;
            for (row, v) in vec.iter_mut().enumerate() {
                *v -= mult * self.cols[p_idx].vec[row];
                if *v < 0 {
                    return Err(DecompError::NegativeEntry {
                        row: self.block.row_labels[row].clone(),
                    });
                }
            }
        }
        self.verify_subtraction_rule(source, terms, rule)?;
        let pretty: Vec<String> = terms
            .iter()
            .map(|(m, p)| format!("{m}*{p}"))
            .collect();
        self.log(format!(
            "subtract {label} := {source} - {} [rule {rule}]",
            pretty.join(" - ")
        ));
        self.add_column(
            label,
            Provenance::Subtracted {
                source: source.into(),
                rule: rule.into(),
            },
            vec,
        )
    }

    fn verify_subtraction_rule(
        &self,
        source: &str,
        terms: &[(i64, String)],
        rule: &str,
    ) -> Result<(), DecompError> {
        let basic = self.basic.as_ref().ok_or(DecompError::NoBasicSet)?;
        let certified = self.certified.as_ref().ok_or(DecompError::NotCertified)?;
        // every subtracted column must be a certified PIM of the basic set
        for (_, pim) in terms {
            let pos = basic
                .labels
                .iter()
                .position(|l| l == pim)
                .ok_or_else(|| DecompError::RuleFailed(format!("`{pim}` is not in the basic set")))?;
            if !certified[pos] {
                return Err(DecompError::RuleFailed(format!(
                    "`{pim}` is not a certified PIM"
                )));
            }
        }
        let (labels, vectors) = self.basic_vectors()?;
        if let Some(rest) = rule.strip_prefix("relation:") {
            let rel = self
                .relations
                .iter()
                .find(|r| r.target == rest)
                .ok_or_else(|| DecompError::RuleFailed(format!("no relation for `{rest}`")))?;
            engine::verify_relation_rule(
                &labels,
                &vectors,
                certified,
                rel,
                source,
                terms,
            )
            .map_err(DecompError::RuleFailed)
        } else if rule == "alpha" {
            let cert = basic
                .cert
                .as_ref()
                .ok_or_else(|| DecompError::RuleFailed("alpha rule needs a unitriangular certificate".into()))?;
            let alpha = self
                .block
                .alpha_rows
                .as_ref()
                .ok_or(DecompError::NoAlpha)?;
            engine::verify_alpha_rule(
                &labels,
                &vectors,
                &self.block,
                cert,
                certified,
                alpha,
                source,
                terms,
            )
            .map_err(DecompError::RuleFailed)
        } else {
            Err(DecompError::RuleFailed(format!("unknown rule `{rule}`")))
        }
    }

    /// Enumerate the possibility space of the uncertified columns under
    /// nonnegativity, recorded relations and automorphism symmetry.
    pub fn enumerate(&mut self) -> Result<&PossibilitySpace, DecompError> {
        let (labels, vectors) = self.basic_vectors()?;
        let basic = self.basic.as_ref().expect("basic_vectors checked");
        let cert = basic
            .cert
            .as_ref()
            .ok_or(DecompError::NotCertified)?
            .clone();
        let certified = self.certified.as_ref().ok_or(DecompError::NotCertified)?;
        let mut rel_targets: Vec<(String, Vec<i64>)> = Vec::new();
        for rel in &self.relations {
            let idx = self.col_by_label(&rel.target)?;
            rel_targets.push((rel.target.clone(), self.cols[idx].vec.clone()));
        }
        let space = engine::enumerate_possibilities(
            &labels,
            &vectors,
            &self.block,
            &cert,
            certified,
            &rel_targets,
        )?;
        if space.assignments.is_empty() {
            return Err(DecompError::EmptyPossibilities);
        }
        self.log(format!(
            "enumerate -> {} uncertified columns, {} feasible assignments",
            space.uncertified.len(),
            space.assignments.len()
        ));
        self.possibilities = Some(space);
        Ok(self.possibilities.as_ref().expect("just set"))
    }

    pub fn inject_cond_degrees(&mut self, degrees: BTreeMap<String, i64>) {
        self.log(format!(
            "inject-cond {}",
            degrees
                .iter()
                .map(|(l, d)| format!("{l}={d}"))
                .collect::<Vec<_>>()
                .join(" ")
        ));
        self.cond_degrees = Some(degrees);
    }

    pub fn inject_chop(&mut self, facts: Vec<(i64, usize)>) {
        self.log(format!(
            "inject-chop {}",
            facts
                .iter()
                .map(|(d, m)| format!("{d}x{m}"))
                .collect::<Vec<_>>()
                .join(" ")
        ));
        self.chop_facts = Some(facts);
    }

    /// Brauer basic-set degrees and the beta-to-phi content for every
    /// feasible assignment.
    pub fn brauer_basic_set(&self) -> Result<engine::BrauerBasicSet, DecompError> {
        let (labels, vectors) = self.basic_vectors()?;
        let basic = self.basic.as_ref().expect("basic_vectors checked");
        let cert = basic.cert.as_ref().ok_or(DecompError::NotCertified)?;
        let space = self
            .possibilities
            .as_ref()
            .ok_or(DecompError::NoPossibilities)?;
        engine::derive_brauer_basic_set(&labels, &vectors, &self.block, cert, space)
    }

    /// Filter the possibility space against the injected chop facts.
    pub fn resolve(&mut self, steinberg_degree: &Integer) -> Result<(), DecompError> {
        let (labels, vectors) = self.basic_vectors()?;
        let basic = self.basic.as_ref().expect("basic_vectors checked");
        let cert = basic
            .cert
            .as_ref()
            .ok_or(DecompError::NotCertified)?
            .clone();
        let space = self
            .possibilities
            .as_ref()
            .ok_or(DecompError::NoPossibilities)?;
        if space.uncertified.is_empty() {
            self.log("resolve -> no free parameters".into());
            self.resolved = Some(0);
            return Ok(());
        }
        if space.assignments.len() == 1 {
            self.log("resolve -> unique assignment without condensation facts".into());
            self.resolved = Some(0);
            return Ok(());
        }
        let cond = self
            .cond_degrees
            .as_ref()
            .ok_or_else(|| DecompError::MissingData("condensed degrees".into()))?;
        let chop = self
            .chop_facts
            .as_ref()
            .ok_or_else(|| DecompError::MissingData("chop facts".into()))?;
        let bbs = engine::derive_brauer_basic_set(&labels, &vectors, &self.block, &cert, space)?;
        let st_row = self
            .block
            .degrees
            .iter()
            .position(|d| d == steinberg_degree)
            .ok_or_else(|| {
                DecompError::MissingData(format!("no block row of degree {steinberg_degree}"))
            })?;
        let survivors = engine::resolve_with_condensation(
            &labels, &vectors, &self.block, &cert, space, &bbs, cond, chop, st_row,
        )?;
        if survivors.len() != 1 {
            return Err(DecompError::ResolutionAmbiguous(survivors.len()));
        }
        let chosen = survivors[0];
        let desc: Vec<String> = space
            .uncertified
            .iter()
            .flat_map(|u| {
                u.vars
                    .iter()
                    .map(|&(tail, _)| format!("{}<-{}", u.label, labels[tail]))
            })
            .zip(space.assignments[chosen].iter())
            .map(|(name, v)| format!("{name}={v}"))
            .collect();
        self.log(format!("resolve -> unique assignment: {}", desc.join(" ")));
        self.resolved = Some(chosen);
        Ok(())
    }

    /// Emit the final decomposition matrix and Brauer degrees.
    pub fn emit(&mut self) -> Result<DecompositionMatrix, DecompError> {
        let (labels, vectors) = self.basic_vectors()?;
        let basic = self.basic.as_ref().expect("basic_vectors checked");
        let cert = basic
            .cert
            .as_ref()
            .ok_or(DecompError::NotCertified)?
            .clone();
        let space = self
            .possibilities
            .as_ref()
            .ok_or(DecompError::NoPossibilities)?;
        let assignment = match (space.assignments.len(), self.resolved) {
            (_, Some(i)) => i,
            (1, None) => 0,
            (n, None) => return Err(DecompError::ResolutionAmbiguous(n)),
        };
        let matrix = engine::emit_matrix(
            &labels,
            &vectors,
            &self.block,
            &cert,
            space,
            assignment,
        )?;
        // consistency: every ordinary degree is the d-weighted sum of the
        // Brauer degrees
        for (row, degree) in self.block.degrees.iter().enumerate() {
            let mut acc = Integer::from(0);
            for (k, bd) in matrix.brauer_degrees.iter().enumerate() {
                acc += bd * Integer::from(matrix.entries[row][k]);
            }
            if &acc != degree {
                return Err(DecompError::RuleFailed(format!(
                    "degree consistency fails at row {}",
                    self.block.row_labels[row]
                )));
            }
        }
        self.log(format!(
            "emit -> {} x {} decomposition matrix, degrees {}",
            matrix.entries.len(),
            matrix.col_labels.len(),
            matrix
                .brauer_degrees
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        ));
        Ok(matrix)
    }

    /// The gram matrix of the current basic set: rows sorted by degree,
    /// formatted as a labeled text table.
    pub fn gram_table(&self) -> Result<String, DecompError> {
        let (labels, vectors) = self.basic_vectors()?;
        let mut out = String::new();
        out.push_str(&format!("rows {} cols {}\n", self.block.size(), labels.len()));
        out.push_str(&format!("labels {}\n", labels.join(" ")));
        for &row in &self.block.row_order {
            let entries: Vec<String> = vectors.iter().map(|v| v[row].to_string()).collect();
            out.push_str(&format!(
                "{} {}\n",
                self.block.row_labels[row],
                entries.join(" ")
            ));
        }
        Ok(out)
    }
}

/// Little helper: i64 from Integer degrees for display-limited uses.
pub fn integer_to_i64(v: &Integer) -> Option<i64> {
    v.to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bench() -> Workbench {
        // four rows of degrees 1, 2, 2, 5 with the automorphism swapping
        // the two degree-2 rows
        let block = BlockData::new(
            "T",
            3,
            vec![1.into(), 2.into(), 2.into(), 5.into()],
            Some(vec![0, 2, 1, 3]),
        );
        Workbench::new(block)
    }

    #[test]
    fn divide_refuses_with_witness() {
        let mut b = bench();
        b.add_column("a", Provenance::Seeded, vec![2, 4, 1, 0]).unwrap();
        let err = b.divide("a2", "a", 2).unwrap_err();
        match err {
            DecompError::NotDivisible { row, value, .. } => {
                assert_eq!(row, "2#2");
                assert_eq!(value, 1);
            }
            other => panic!("unexpected {other:?}"),
        }
        b.add_column("u", Provenance::Seeded, vec![1, 0, 0, 0]).unwrap();
        assert!(matches!(
            b.divide("u2", "u", 2),
            Err(DecompError::NotDivisible { .. })
        ));
    }

    #[test]
    fn unitriangular_failure_witness() {
        let mut b = bench();
        b.add_column("x", Provenance::Seeded, vec![1, 1, 0, 0]).unwrap();
        b.add_column("y", Provenance::Seeded, vec![1, 1, 0, 0]).unwrap();
        b.declare_basic(&["x".into(), "y".into()]).unwrap();
        // identical columns share a leading row: no certificate
        assert!(b.basic.as_ref().unwrap().cert.is_none());
        assert!(matches!(b.certify(), Err(DecompError::NotCertified)));
    }

    #[test]
    fn subtract_refuses_on_negative_entry() {
        let mut b = bench();
        b.add_column("x", Provenance::Seeded, vec![1, 0, 0, 0]).unwrap();
        b.add_column("y", Provenance::Seeded, vec![0, 1, 0, 1]).unwrap();
        b.declare_basic(&["x".into(), "y".into()]).unwrap();
        b.certify().unwrap();
        let err = b
            .subtract("z", "x", &[(1, "y".into())], "relation:none")
            .unwrap_err();
        assert!(matches!(err, DecompError::NegativeEntry { .. }));
    }

    #[test]
    fn relate_rejects_vectors_outside_the_span() {
        let mut b = bench();
        b.add_column("x", Provenance::Seeded, vec![1, 0, 0, 2]).unwrap();
        b.add_column("y", Provenance::Seeded, vec![0, 1, 0, 1]).unwrap();
        b.add_column("t", Provenance::Seeded, vec![0, 0, 1, 0]).unwrap();
        b.declare_basic(&["x".into(), "y".into()]).unwrap();
        assert!(matches!(b.relate("t"), Err(DecompError::NotInSpan(_))));
        // a basic element expresses with a unit coefficient vector
        let rel = b.relate("x").unwrap();
        assert_eq!(rel.coeffs, vec![1, 0]);
    }

    #[test]
    fn alpha_requires_block_data() {
        let block = BlockData::new("T", 3, vec![1.into(), 2.into()], None);
        let mut b = Workbench::new(block);
        b.add_column("x", Provenance::Seeded, vec![1, 0]).unwrap();
        assert!(matches!(b.conjugate("y", "x"), Err(DecompError::NoAlpha)));
    }
}
