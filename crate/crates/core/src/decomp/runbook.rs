//! Runbook parsing and execution: an ordered list of workbench steps with
//! file-based inputs, producing decomposition matrices, degree tables,
//! possibility tables and the proof log.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::chartab::{CharacterTable, ClassFunction, TableError};
use crate::decomp::{BlockData, DecompError, DecompositionMatrix, Provenance, Workbench};
use crate::Integer;

#[derive(Debug, Error)]
pub enum RunbookError {
    #[error("step {step}: {source}")]
    Step { step: usize, source: DecompError },
    #[error("step {step}: {source}")]
    Table { step: usize, source: TableError },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("step {step}: {msg}")]
    Other { step: usize, msg: String },
    #[error("io error reading `{path}`: {msg}")]
    Io { path: String, msg: String },
}

/// One runbook step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// load a character table from a file path
    Table { path: String },
    /// select the working block from a loaded table
    UseBlock {
        table: String,
        prime: u64,
        label: String,
        alpha: Option<String>,
    },
    /// desk-scale block description from a fixture file
    Block { path: String },
    /// seed labeled columns from a fixture matrix file
    SeedMatrix { path: String },
    /// seed one column inline
    Seed { label: String, vec: Vec<i64> },
    /// induce from a subgroup table: sum of 1-based character indices
    Induce {
        label: String,
        table: String,
        chars: Vec<(i64, usize)>,
    },
    /// tensor product of two 1-based characters of the block's table
    Tensor { label: String, i: usize, j: usize },
    Conjugate { label: String, source: String },
    Divide { label: String, source: String, k: i64 },
    Basic { labels: Vec<String> },
    UnimodularRows { rows: Vec<usize> },
    Certify,
    Relate { target: String },
    Subtract {
        label: String,
        source: String,
        terms: Vec<(i64, String)>,
        rule: String,
    },
    Enumerate,
    /// compute the condensed degrees of the Brauer basic set from table
    /// data, along the fusion of the named subgroup table
    CondFrom { vtable: String },
    InjectCond { degrees: Vec<(String, i64)> },
    InjectChop { facts: Vec<(i64, usize)> },
    Resolve { steinberg_degree: Integer },
    Emit,
}

#[derive(Clone, Debug, Default)]
pub struct Runbook {
    pub steps: Vec<Step>,
}

/// Everything a run produces.
pub struct RunbookOutputs {
    pub matrix: Option<DecompositionMatrix>,
    pub gram_tables: Vec<String>,
    pub relations: Vec<(String, Vec<i64>)>,
    pub possibilities: Option<String>,
    pub proof_log: String,
    pub certified: Vec<Vec<String>>,
    /// Brauer basic-set labels and degrees (certified order), when the
    /// possibility space has been enumerated
    pub basic_set_degrees: Option<(Vec<String>, Vec<Integer>)>,
}

impl Runbook {
    pub fn parse(input: &str) -> Result<Runbook, RunbookError> {
        let mut steps = Vec::new();
        let perr = |line: usize, msg: String| RunbookError::Parse { line, msg };
        for (ln, raw) in input.lines().enumerate() {
            let line = ln + 1;
            let text = raw.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            let fields: Vec<&str> = text.split_whitespace().collect();
            let step = match fields[0] {
                "table" => Step::Table {
                    path: fields
                        .get(1)
                        .ok_or_else(|| perr(line, "table needs a path".into()))?
                        .to_string(),
                },
                "use-block" => {
                    if fields.len() < 4 {
                        return Err(perr(line, "use-block needs: table prime label [alpha]".into()));
                    }
                    Step::UseBlock {
                        table: fields[1].into(),
                        prime: fields[2]
                            .parse()
                            .map_err(|_| perr(line, "bad prime".into()))?,
                        label: fields[3].into(),
                        alpha: fields.get(4).map(|s| s.to_string()),
                    }
                }
                "block" => Step::Block {
                    path: fields
                        .get(1)
                        .ok_or_else(|| perr(line, "block needs a path".into()))?
                        .to_string(),
                },
                "seed-matrix" => Step::SeedMatrix {
                    path: fields
                        .get(1)
                        .ok_or_else(|| perr(line, "seed-matrix needs a path".into()))?
                        .to_string(),
                },
                "seed" => {
                    if fields.len() < 3 {
                        return Err(perr(line, "seed needs: label v1 v2 ...".into()));
                    }
                    let vec = fields[2..]
                        .iter()
                        .map(|s| s.parse::<i64>().map_err(|_| perr(line, format!("bad entry `{s}`"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    Step::Seed {
                        label: fields[1].into(),
                        vec,
                    }
                }
                "induce" => {
                    if fields.len() != 4 {
                        return Err(perr(line, "induce needs: label table sum".into()));
                    }
                    Step::Induce {
                        label: fields[1].into(),
                        table: fields[2].into(),
                        chars: parse_char_sum(fields[3]).map_err(|m| perr(line, m))?,
                    }
                }
                "tensor" => {
                    if fields.len() != 4 {
                        return Err(perr(line, "tensor needs: label i j".into()));
                    }
                    Step::Tensor {
                        label: fields[1].into(),
                        i: fields[2].parse().map_err(|_| perr(line, "bad index".into()))?,
                        j: fields[3].parse().map_err(|_| perr(line, "bad index".into()))?,
                    }
                }
                "conjugate" => {
                    if fields.len() != 3 {
                        return Err(perr(line, "conjugate needs: label source".into()));
                    }
                    Step::Conjugate {
                        label: fields[1].into(),
                        source: fields[2].into(),
                    }
                }
                "divide" => {
                    if fields.len() != 4 {
                        return Err(perr(line, "divide needs: label source k".into()));
                    }
                    Step::Divide {
                        label: fields[1].into(),
                        source: fields[2].into(),
                        k: fields[3].parse().map_err(|_| perr(line, "bad divisor".into()))?,
                    }
                }
                "basic" => Step::Basic {
                    labels: fields[1..].iter().map(|s| s.to_string()).collect(),
                },
                "unimodular-rows" => {
                    let rows = fields
                        .get(1)
                        .ok_or_else(|| perr(line, "unimodular-rows needs a comma list".into()))?
                        .split(',')
                        .map(|s| s.parse::<usize>().map_err(|_| perr(line, format!("bad row `{s}`"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    Step::UnimodularRows { rows }
                }
                "certify" => Step::Certify,
                "relate" => Step::Relate {
                    target: fields
                        .get(1)
                        .ok_or_else(|| perr(line, "relate needs a label".into()))?
                        .to_string(),
                },
                "subtract" => {
                    // subtract <label> <source> <m>*<pim> [<m>*<pim> ...] rule <rule>
                    if fields.len() < 6 || fields[fields.len() - 2] != "rule" {
                        return Err(perr(
                            line,
                            "subtract needs: label source m*pim... rule <rule>".into(),
                        ));
                    }
                    let terms = fields[3..fields.len() - 2]
                        .iter()
                        .map(|s| {
                            let (m, p) = s
                                .split_once('*')
                                .ok_or_else(|| perr(line, format!("bad term `{s}`")))?;
                            Ok((
                                m.parse::<i64>()
                                    .map_err(|_| perr(line, format!("bad multiplicity `{m}`")))?,
                                p.to_string(),
                            ))
                        })
                        .collect::<Result<Vec<_>, RunbookError>>()?;
                    Step::Subtract {
                        label: fields[1].into(),
                        source: fields[2].into(),
                        terms,
                        rule: fields[fields.len() - 1].into(),
                    }
                }
                "enumerate" => Step::Enumerate,
                "cond-from" => Step::CondFrom {
                    vtable: fields
                        .get(1)
                        .ok_or_else(|| perr(line, "cond-from needs a table name".into()))?
                        .to_string(),
                },
                "inject-cond" => {
                    let degrees = fields[1..]
                        .iter()
                        .map(|s| {
                            let (l, d) = s
                                .split_once('=')
                                .ok_or_else(|| perr(line, format!("bad pair `{s}`")))?;
                            Ok((
                                l.to_string(),
                                d.parse::<i64>()
                                    .map_err(|_| perr(line, format!("bad degree `{d}`")))?,
                            ))
                        })
                        .collect::<Result<Vec<_>, RunbookError>>()?;
                    Step::InjectCond { degrees }
                }
                "inject-chop" => {
                    let facts = fields[1..]
                        .iter()
                        .map(|s| {
                            let (d, m) = s
                                .split_once('x')
                                .ok_or_else(|| perr(line, format!("bad fact `{s}`")))?;
                            Ok((
                                d.parse::<i64>()
                                    .map_err(|_| perr(line, format!("bad dimension `{d}`")))?,
                                m.parse::<usize>()
                                    .map_err(|_| perr(line, format!("bad multiplicity `{m}`")))?,
                            ))
                        })
                        .collect::<Result<Vec<_>, RunbookError>>()?;
                    Step::InjectChop { facts }
                }
                "resolve" => {
                    let arg = fields
                        .get(1)
                        .and_then(|s| s.strip_prefix("steinberg="))
                        .ok_or_else(|| perr(line, "resolve needs steinberg=<degree>".into()))?;
                    Step::Resolve {
                        steinberg_degree: arg
                            .parse()
                            .map_err(|_| perr(line, "bad degree".into()))?,
                    }
                }
                "emit" => Step::Emit,
                other => return Err(perr(line, format!("unknown verb `{other}`"))),
            };
            steps.push(step);
        }
        Ok(Runbook { steps })
    }

    /// Execute against the filesystem, resolving relative paths against
    /// `base`.
    pub fn run(&self, base: &std::path::Path) -> Result<RunbookOutputs, RunbookError> {
        let mut tables: BTreeMap<String, CharacterTable> = BTreeMap::new();
        let mut bench: Option<Workbench> = None;
        let mut block_table: Option<String> = None;
        let mut block_chars: Vec<usize> = Vec::new();
        let mut out = RunbookOutputs {
            matrix: None,
            gram_tables: Vec::new(),
            relations: Vec::new(),
            possibilities: None,
            proof_log: String::new(),
            certified: Vec::new(),
            basic_set_degrees: None,
        };

        let read = |path: &str| -> Result<String, RunbookError> {
            let full = base.join(path);
            std::fs::read_to_string(&full).map_err(|e| RunbookError::Io {
                path: full.display().to_string(),
                msg: e.to_string(),
            })
        };
        fn need_bench(
            bench: &mut Option<Workbench>,
            step: usize,
        ) -> Result<&mut Workbench, RunbookError> {
            bench.as_mut().ok_or(RunbookError::Other {
                step,
                msg: "no block selected yet".into(),
            })
        }

        for (step_no, step) in self.steps.iter().enumerate() {
            let step = step.clone();
            let wrap = |e: DecompError| RunbookError::Step {
                step: step_no,
                source: e,
            };
            let wrap_t = |e: TableError| RunbookError::Table {
                step: step_no,
                source: e,
            };
            match step {
                Step::Table { path } => {
                    let text = read(&path)?;
                    let t = CharacterTable::parse(&text).map_err(wrap_t)?;
                    tables.insert(t.name.clone(), t);
                }
                Step::UseBlock {
                    table,
                    prime,
                    label,
                    alpha,
                } => {
                    let t = tables.get(&table).ok_or(RunbookError::Other {
                        step: step_no,
                        msg: format!("table `{table}` not loaded"),
                    })?;
                    let blocks = t.blocks.get(&prime).ok_or(RunbookError::Other {
                        step: step_no,
                        msg: format!("no block data for p={prime}"),
                    })?;
                    let id = blocks.id_by_label(&label).ok_or(RunbookError::Other {
                        step: step_no,
                        msg: format!("no block labeled `{label}`"),
                    })?;
                    let members = blocks.block_members(id);
                    let degrees: Vec<Integer> = members
                        .iter()
                        .map(|&i| {
                            t.irreducibles[i][0]
                                .as_integer()
                                .expect("character degrees are integers")
                        })
                        .collect();
                    let alpha_rows = match alpha {
                        None => None,
                        Some(name) => {
                            let auto =
                                t.automorphisms.get(&name).ok_or(RunbookError::Other {
                                    step: step_no,
                                    msg: format!("no automorphism `{name}`"),
                                })?;
                            // restrict the character permutation to the block
                            let perm: Option<Vec<usize>> = members
                                .iter()
                                .map(|&i| {
                                    members
                                        .iter()
                                        .position(|&j| j == auto.char_perm[i])
                                })
                                .collect();
                            Some(perm.ok_or(RunbookError::Other {
                                step: step_no,
                                msg: "automorphism does not preserve the block".into(),
                            })?)
                        }
                    };
                    bench = Some(Workbench::new(BlockData::new(
                        &label, prime, degrees, alpha_rows,
                    )));
                    block_table = Some(table);
                    block_chars = members;
                }
                Step::Block { path } => {
                    let text = read(&path)?;
                    let block = parse_block_fixture(&text)
                        .map_err(|msg| RunbookError::Other { step: step_no, msg })?;
                    bench = Some(Workbench::new(block));
                }
                Step::SeedMatrix { path } => {
                    let text = read(&path)?;
                    let b = need_bench(&mut bench, step_no)?;
                    let cols = parse_seed_matrix(&text, b.block.size())
                        .map_err(|msg| RunbookError::Other { step: step_no, msg })?;
                    for (label, vec) in cols {
                        b.add_column(&label, Provenance::Seeded, vec).map_err(wrap)?;
                    }
                }
                Step::Seed { label, vec } => {
                    need_bench(&mut bench, step_no)?
                        .add_column(&label, Provenance::Seeded, vec)
                        .map_err(wrap)?;
                }
                Step::Induce {
                    label,
                    table,
                    chars,
                } => {
                    let big_name = block_table.clone().ok_or(RunbookError::Other {
                        step: step_no,
                        msg: "induce requires a table-backed block".into(),
                    })?;
                    let sub = tables.get(&table).ok_or(RunbookError::Other {
                        step: step_no,
                        msg: format!("table `{table}` not loaded"),
                    })?;
                    let big = tables.get(&big_name).expect("block table is loaded");
                    let mut f = sub.zero_function();
                    for &(mult, idx) in &chars {
                        // 1-based indices in runbooks
                        f = f.add(&sub.character(idx - 1).scale_int(mult));
                    }
                    let ind = big.induce(sub, &f).map_err(wrap_t)?;
                    let vec = block_vector(big, &block_chars, &ind).map_err(wrap_t)?;
                    need_bench(&mut bench, step_no)?
                        .add_column(&label, Provenance::Induced(format!("{table}")), vec)
                        .map_err(wrap)?;
                }
                Step::Tensor { label, i, j } => {
                    let big_name = block_table.clone().ok_or(RunbookError::Other {
                        step: step_no,
                        msg: "tensor requires a table-backed block".into(),
                    })?;
                    let big = tables.get(&big_name).expect("block table is loaded");
                    let prod = big
                        .tensor(&big.character(i - 1), &big.character(j - 1))
                        .map_err(wrap_t)?;
                    let vec = block_vector(big, &block_chars, &prod).map_err(wrap_t)?;
                    need_bench(&mut bench, step_no)?
                        .add_column(&label, Provenance::Tensor(i.to_string(), j.to_string()), vec)
                        .map_err(wrap)?;
                }
                Step::Conjugate { label, source } => {
                    need_bench(&mut bench, step_no)?
                        .conjugate(&label, &source)
                        .map_err(wrap)?;
                }
                Step::Divide { label, source, k } => {
                    need_bench(&mut bench, step_no)?
                        .divide(&label, &source, k)
                        .map_err(wrap)?;
                }
                Step::Basic { labels } => {
                    let b = need_bench(&mut bench, step_no)?;
                    b.declare_basic(&labels).map_err(wrap)?;
                    out.gram_tables.push(b.gram_table().map_err(wrap)?);
                }
                Step::UnimodularRows { rows } => {
                    need_bench(&mut bench, step_no)?
                        .declare_unimodular_rows(rows)
                        .map_err(wrap)?;
                }
                Step::Certify => {
                    let names = need_bench(&mut bench, step_no)?.certify().map_err(wrap)?;
                    out.certified.push(names);
                }
                Step::Relate { target } => {
                    let rel = need_bench(&mut bench, step_no)?
                        .relate(&target)
                        .map_err(wrap)?;
                    out.relations.push((rel.target.clone(), rel.coeffs.clone()));
                }
                Step::Subtract {
                    label,
                    source,
                    terms,
                    rule,
                } => {
                    need_bench(&mut bench, step_no)?
                        .subtract(&label, &source, &terms, &rule)
                        .map_err(wrap)?;
                }
                Step::Enumerate => {
                    let b = need_bench(&mut bench, step_no)?;
                    b.enumerate().map_err(wrap)?;
                    let labels = b.basic.as_ref().expect("enumerate checked").labels.clone();
                    out.possibilities = Some(
                        b.possibilities
                            .as_ref()
                            .expect("just computed")
                            .render(&labels),
                    );
                    let bbs = b.brauer_basic_set().map_err(wrap)?;
                    out.basic_set_degrees = Some((bbs.labels.clone(), bbs.degrees.clone()));
                }
                Step::CondFrom { vtable } => {
                    let big_name = block_table.clone().ok_or(RunbookError::Other {
                        step: step_no,
                        msg: "cond-from requires a table-backed block".into(),
                    })?;
                    let vt = tables.get(&vtable).ok_or(RunbookError::Other {
                        step: step_no,
                        msg: format!("table `{vtable}` not loaded"),
                    })?;
                    let big = tables.get(&big_name).expect("block table is loaded");
                    let b = need_bench(&mut bench, step_no)?;
                    let bbs = b.brauer_basic_set().map_err(wrap)?;
                    let cert = b
                        .basic
                        .as_ref()
                        .and_then(|bs| bs.cert.clone())
                        .ok_or(RunbookError::Other {
                            step: step_no,
                            msg: "cond-from needs a unitriangular certificate".into(),
                        })?;
                    let p = b.block.prime;
                    // beta_j = hat(chi at leading row j) - sum k * beta_j'
                    let mut betas: Vec<crate::chartab::BrauerDomainFunction> = Vec::new();
                    for (j, &row) in cert.leading_rows.iter().enumerate() {
                        let chi = big.character(block_chars[row]);
                        let mut beta = big.regular_restriction(&chi, p).map_err(wrap_t)?;
                        for (jp, &k) in bbs.k_table[j].iter().enumerate() {
                            if k == 0 {
                                continue;
                            }
                            let factor = crate::Rational::from_integer(Integer::from(k));
                            for (v, w) in beta.values.iter_mut().zip(&betas[jp].values) {
                                *v = v.sub(&w.scale(&factor));
                            }
                        }
                        betas.push(beta);
                    }
                    let mut degrees = Vec::new();
                    for (j, beta) in betas.iter().enumerate() {
                        let d = big.condensed_degree(vt, beta).map_err(wrap_t)?;
                        let d = num_traits::ToPrimitive::to_i64(&d).ok_or(RunbookError::Other {
                            step: step_no,
                            msg: "condensed degree exceeds i64".into(),
                        })?;
                        degrees.push((bbs.labels[j].clone(), d));
                    }
                    need_bench(&mut bench, step_no)?
                        .inject_cond_degrees(degrees.into_iter().collect());
                }
                Step::InjectCond { degrees } => {
                    need_bench(&mut bench, step_no)?
                        .inject_cond_degrees(degrees.into_iter().collect());
                }
                Step::InjectChop { facts } => {
                    need_bench(&mut bench, step_no)?.inject_chop(facts);
                }
                Step::Resolve { steinberg_degree } => {
                    need_bench(&mut bench, step_no)?
                        .resolve(&steinberg_degree)
                        .map_err(wrap)?;
                }
                Step::Emit => {
                    let b = need_bench(&mut bench, step_no)?;
                    out.matrix = Some(b.emit().map_err(wrap)?);
                }
            }
        }
        if let Some(b) = &bench {
            out.proof_log = b.log.join("\n");
            if !out.proof_log.is_empty() {
                out.proof_log.push('\n');
            }
        }
        Ok(out)
    }
}

fn parse_char_sum(s: &str) -> Result<Vec<(i64, usize)>, String> {
    // e.g. "72+92" or "36+37+48+49+2.68+70" (2.68 meaning 2 copies of 68)
    s.split('+')
        .map(|part| {
            let part = part.trim();
            if let Some((m, i)) = part.split_once('.') {
                Ok((
                    m.parse::<i64>().map_err(|_| format!("bad multiplicity `{m}`"))?,
                    i.parse::<usize>().map_err(|_| format!("bad index `{i}`"))?,
                ))
            } else {
                Ok((
                    1,
                    part.parse::<usize>()
                        .map_err(|_| format!("bad index `{part}`"))?,
                ))
            }
        })
        .collect()
}

fn block_vector(
    table: &CharacterTable,
    members: &[usize],
    f: &ClassFunction,
) -> Result<Vec<i64>, TableError> {
    let mut out = Vec::with_capacity(members.len());
    for &i in members {
        let ip = table.inner_product(f, &table.character(i))?;
        let v = ip
            .as_integer()
            .map_err(|_| TableError::NotInteger(format!("<theta, chi_{i}> = {ip}")))?;
        out.push(num_traits::ToPrimitive::to_i64(&v).ok_or_else(|| {
            TableError::NotInteger("inner product exceeds i64".into())
        })?);
    }
    Ok(out)
}

/// Block fixture: `name <label>`, `prime <p>`, `row <degree>` per row in
/// table order, optional `alpha <indices>` (row permutation).
pub fn parse_block_fixture(input: &str) -> Result<BlockData, String> {
    let mut name = String::from("B");
    let mut prime = 0u64;
    let mut degrees: Vec<Integer> = Vec::new();
    let mut alpha: Option<Vec<usize>> = None;
    for raw in input.lines() {
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let (verb, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
        let rest = rest.trim();
        match verb {
            "name" => name = rest.into(),
            "prime" => prime = rest.parse().map_err(|_| format!("bad prime `{rest}`"))?,
            "row" => degrees.push(rest.parse().map_err(|_| format!("bad degree `{rest}`"))?),
            "alpha" => {
                alpha = Some(
                    rest.split_whitespace()
                        .map(|s| s.parse::<usize>().map_err(|_| format!("bad index `{s}`")))
                        .collect::<Result<Vec<_>, _>>()?,
                );
            }
            other => return Err(format!("unknown block directive `{other}`")),
        }
    }
    if let Some(a) = &alpha {
        if a.len() != degrees.len() {
            return Err("alpha length does not match row count".into());
        }
        for (r, &img) in a.iter().enumerate() {
            if img >= degrees.len() || degrees[img] != degrees[r] {
                return Err(format!("alpha does not preserve degrees at row {r}"));
            }
        }
    }
    Ok(BlockData::new(&name, prime, degrees, alpha))
}

/// Seed matrix fixture: `columns <labels...>`, then one `row` line per
/// block row in table order: `row <entries...>`.
pub fn parse_seed_matrix(input: &str, rows: usize) -> Result<Vec<(String, Vec<i64>)>, String> {
    let mut labels: Vec<String> = Vec::new();
    let mut data: Vec<Vec<i64>> = Vec::new();
    for raw in input.lines() {
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let (verb, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
        let rest = rest.trim();
        match verb {
            "columns" => {
                labels = rest.split_whitespace().map(String::from).collect();
            }
            "row" => {
                let entries = rest
                    .split_whitespace()
                    .map(|s| s.parse::<i64>().map_err(|_| format!("bad entry `{s}`")))
                    .collect::<Result<Vec<_>, _>>()?;
                if entries.len() != labels.len() {
                    return Err(format!(
                        "row has {} entries, expected {}",
                        entries.len(),
                        labels.len()
                    ));
                }
                data.push(entries);
            }
            other => return Err(format!("unknown seed directive `{other}`")),
        }
    }
    if data.len() != rows {
        return Err(format!("matrix has {} rows, block has {rows}", data.len()));
    }
    Ok(labels
        .iter()
        .enumerate()
        .map(|(c, l)| (l.clone(), data.iter().map(|r| r[c]).collect()))
        .collect())
}
