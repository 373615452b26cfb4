//! Subcommand implementations.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Args, Subcommand};

use decmat_core::chartab::CharacterTable;
use decmat_core::decomp::{DecompositionMatrix, Runbook, RunbookError};
use decmat_core::mtx::{self, Module};
use decmat_core::refdata;
use decmat_core::rootdata::{
    center_of_radical, distinguished_double_coset_reps, RootSystem, RsType,
};
use decmat_core::steinberg::{CondensationContext, StModule};
use decmat_core::unipotent::UGroup;
use decmat_core::MatGf3;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_MATH: i32 = 3;
pub const EXIT_GATE: i32 = 4;

fn fail(code: i32, msg: impl std::fmt::Display) -> i32 {
    eprintln!("error: {msg}");
    code
}

fn parse_type(s: &str) -> Result<RsType, i32> {
    RsType::parse(s).map_err(|e| fail(EXIT_USAGE, e))
}

/// Parabolic subsets are given 1-based on the command line, matching the
/// usual numbering of the simple roots.
fn parse_parabolic(s: &str, rank: usize) -> Result<Vec<usize>, i32> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let i: usize = part
            .trim()
            .parse()
            .map_err(|_| fail(EXIT_USAGE, format!("bad simple root index `{part}`")))?;
        if i == 0 || i > rank {
            return Err(fail(EXIT_USAGE, format!("simple root index {i} out of range 1..{rank}")));
        }
        out.push(i - 1);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[derive(Subcommand)]
pub enum GrpCmd {
    /// Print the positive roots in the fixed order
    Roots {
        #[arg(long = "type")]
        ty: String,
    },
    /// Print the distinguished double coset representatives
    Dcreps {
        #[arg(long = "type")]
        ty: String,
        /// left subset of simple roots, 1-based, comma separated
        #[arg(long)]
        left: String,
        /// right subset of simple roots
        #[arg(long)]
        right: String,
    },
    /// Print the radical and center of a standard parabolic
    Center {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        parabolic: String,
    },
}

pub fn run_grp(cmd: GrpCmd) -> i32 {
    match cmd {
        GrpCmd::Roots { ty } => {
            let ty = match parse_type(&ty) {
                Ok(t) => t,
                Err(c) => return c,
            };
            let rs = RootSystem::build(ty);
            println!("type {ty} rank {} positive-roots {}", rs.rank, rs.nroots);
            for (i, r) in rs.pos_roots.iter().enumerate() {
                let coeffs: Vec<String> = r.iter().map(|c| c.to_string()).collect();
                println!("{i:3}  {}", coeffs.join(" "));
            }
            EXIT_OK
        }
        GrpCmd::Dcreps { ty, left, right } => {
            let ty = match parse_type(&ty) {
                Ok(t) => t,
                Err(c) => return c,
            };
            let rs = RootSystem::build(ty);
            let l = match parse_parabolic(&left, rs.rank) {
                Ok(v) => v,
                Err(c) => return c,
            };
            let r = match parse_parabolic(&right, rs.rank) {
                Ok(v) => v,
                Err(c) => return c,
            };
            match distinguished_double_coset_reps(&rs, &l, &r) {
                Ok(reps) => {
                    println!("{} representatives", reps.len());
                    for w in reps {
                        let word: Vec<String> =
                            w.word.iter().map(|i| format!("s{}", i + 1)).collect();
                        println!(
                            "length {:2}  {}",
                            w.length,
                            if word.is_empty() { "1".into() } else { word.join(" ") }
                        );
                    }
                    EXIT_OK
                }
                Err(e) => fail(EXIT_USAGE, e),
            }
        }
        GrpCmd::Center { ty, parabolic } => {
            let ty = match parse_type(&ty) {
                Ok(t) => t,
                Err(c) => return c,
            };
            let rs = RootSystem::build(ty);
            let j = match parse_parabolic(&parabolic, rs.rank) {
                Ok(v) => v,
                Err(c) => return c,
            };
            match center_of_radical(&rs, &j) {
                Ok(data) => {
                    println!(
                        "levi {} radical {} center {}",
                        data.levi_roots.len(),
                        data.radical_roots.len(),
                        data.central_roots.len()
                    );
                    let idx: Vec<String> =
                        data.central_roots.iter().map(|r| r.to_string()).collect();
                    println!("center-root-indices {}", idx.join(" "));
                    EXIT_OK
                }
                Err(e) => fail(EXIT_USAGE, e),
            }
        }
    }
}

#[derive(Subcommand)]
pub enum StCmd {
    /// Write the full Steinberg generator matrices
    Build {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        out: PathBuf,
        /// largest log2 dimension to materialize
        #[arg(long, default_value_t = 10)]
        gate: u32,
        #[arg(long, default_value_t = 3)]
        field: u64,
    },
    /// Write the condensed Steinberg generator matrices
    Condense {
        #[arg(long = "type")]
        ty: String,
        /// simple roots of the parabolic, 1-based, comma separated
        #[arg(long)]
        parabolic: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 3)]
        field: u64,
        /// opt-in log2 bound for precomputed left-multiplication tables
        /// (4 tables of 2^n entries each; 24 needs about 256 MiB)
        #[arg(long, default_value_t = 10)]
        table_gate: u32,
    },
}

pub fn run_st(cmd: StCmd) -> i32 {
    match cmd {
        StCmd::Build { ty, out, gate, field } => {
            if field != 3 {
                return fail(EXIT_USAGE, "only the field with three elements is supported");
            }
            let ty = match parse_type(&ty) {
                Ok(t) => t,
                Err(c) => return c,
            };
            let rs = RootSystem::build(ty);
            let u = UGroup::with_tables(&rs, 1 << 10);
            let st = StModule::new(&u);
            if let Err(e) = fs::create_dir_all(&out) {
                return fail(EXIT_DATA, e);
            }
            let mut manifest = format!("type {ty}\ndim {}\nfield 3\n", 1u64 << rs.nroots);
            for g in st.full_generators() {
                match st.full_matrix(&g.letters, gate) {
                    Ok(m) => {
                        let path = out.join(format!("{}.mtx", g.label));
                        if let Err(e) = fs::write(&path, m.to_text()) {
                            return fail(EXIT_DATA, e);
                        }
                        manifest.push_str(&format!("generator {}\n", g.label));
                    }
                    Err(e) => return fail(EXIT_GATE, e),
                }
            }
            if let Err(e) = fs::write(out.join("manifest.txt"), manifest) {
                return fail(EXIT_DATA, e);
            }
            EXIT_OK
        }
        StCmd::Condense {
            ty,
            parabolic,
            out,
            field,
            table_gate,
        } => {
            if field != 3 {
                return fail(EXIT_USAGE, "only the field with three elements is supported");
            }
            if table_gate > 24 {
                return fail(EXIT_GATE, "table gate above 2^24 is not supported");
            }
            let ty = match parse_type(&ty) {
                Ok(t) => t,
                Err(c) => return c,
            };
            let rs = RootSystem::build(ty);
            let j = match parse_parabolic(&parabolic, rs.rank) {
                Ok(v) => v,
                Err(c) => return c,
            };
            let u = UGroup::with_tables(&rs, 1u64 << table_gate);
            let st = StModule::new(&u);
            let ctx = match CondensationContext::new(&st, &j) {
                Ok(c) => c,
                Err(e) => return fail(EXIT_MATH, e),
            };
            if let Err(e) = fs::create_dir_all(&out) {
                return fail(EXIT_DATA, e);
            }
            let gens = match ctx.condensed_generators() {
                Ok(g) => g,
                Err(e) => return fail(EXIT_MATH, e),
            };
            let v_idx: Vec<String> = ctx
                .transversal
                .v_roots
                .iter()
                .map(|r| r.to_string())
                .collect();
            let mut manifest = format!(
                "type {ty}\nparabolic {}\ndim {}\nfield 3\nv-roots {}\n",
                parabolic,
                ctx.dim(),
                v_idx.join(" ")
            );
            for (g, m) in gens {
                let path = out.join(format!("{}.mtx", g.label));
                if let Err(e) = fs::write(&path, m.to_text()) {
                    return fail(EXIT_DATA, e);
                }
                manifest.push_str(&format!("generator {}\n", g.label));
            }
            if let Err(e) = fs::write(out.join("manifest.txt"), manifest) {
                return fail(EXIT_DATA, e);
            }
            EXIT_OK
        }
    }
}

#[derive(Subcommand)]
pub enum CtCmd {
    /// Load a character table and run all consistency checks
    Validate { path: PathBuf },
}

pub fn run_ct(cmd: CtCmd) -> i32 {
    match cmd {
        CtCmd::Validate { path } => {
            let text = match fs::read_to_string(&path) {
                Ok(t) => t,
                Err(e) => return fail(EXIT_DATA, format!("{}: {e}", path.display())),
            };
            match CharacterTable::parse(&text) {
                Ok(t) => {
                    println!(
                        "ok: table {} with |G| = {}, {} classes, {} characters",
                        t.name,
                        t.order,
                        t.class_count(),
                        t.char_count()
                    );
                    EXIT_OK
                }
                Err(e) => fail(EXIT_DATA, e),
            }
        }
    }
}

#[derive(Subcommand)]
pub enum MtxCmd {
    /// Chop a module given by generator matrix files into composition factors
    Chop {
        /// generator matrix files (text or binary format)
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        budget: usize,
        /// report file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_matrix(path: &Path) -> Result<MatGf3, String> {
    let mut bytes = Vec::new();
    fs::File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| format!("{}: {e}", path.display()))?;
    if bytes.starts_with(b"MTXB") {
        MatGf3::read_binary(&mut bytes.as_slice()).map_err(|e| e.to_string())
    } else {
        let text = String::from_utf8(bytes).map_err(|e| e.to_string())?;
        MatGf3::read_text(&text).map_err(|e| e.to_string())
    }
}

pub fn run_mtx(cmd: MtxCmd) -> i32 {
    match cmd {
        MtxCmd::Chop {
            files,
            seed,
            budget,
            out,
        } => {
            if files.is_empty() {
                return fail(EXIT_USAGE, "chop needs at least one generator file");
            }
            let mut gens = Vec::new();
            for f in &files {
                match read_matrix(f) {
                    Ok(m) => gens.push(m),
                    Err(e) => return fail(EXIT_DATA, e),
                }
            }
            let module = match Module::new(gens) {
                Ok(m) => m,
                Err(e) => return fail(EXIT_DATA, e),
            };
            match mtx::chop_with_budget(&module, seed, budget) {
                Ok(outcome) => {
                    let report = outcome.result.to_report();
                    match out {
                        Some(p) => {
                            if let Err(e) = fs::write(&p, report) {
                                return fail(EXIT_DATA, e);
                            }
                        }
                        None => print!("{report}"),
                    }
                    EXIT_OK
                }
                Err(e) => fail(EXIT_GATE, e),
            }
        }
    }
}

#[derive(Subcommand)]
pub enum DecompCmd {
    /// Execute a runbook and write its outputs
    Run {
        runbook: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// directory against which input paths resolve (default: the
        /// runbook's directory)
        #[arg(long)]
        data: Option<PathBuf>,
    },
}

fn matrix_files(out: &Path, m: &DecompositionMatrix) -> std::io::Result<()> {
    // integer matrix format: header, then space-separated rows
    let mut z = format!("MTXZ {} {}\n", m.entries.len(), m.col_labels.len());
    for row in &m.entries {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        z.push_str(&cells.join(" "));
        z.push('\n');
    }
    fs::write(out.join("decmat.mtxz"), z)?;
    let mut table = format!("block {}\ncolumns {}\n", m.block, m.col_labels.join(" "));
    for row in &m.entries {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        table.push_str(&cells.join(" "));
        table.push('\n');
    }
    let degrees: Vec<String> = m.brauer_degrees.iter().map(|d| d.to_string()).collect();
    table.push_str(&format!("brauer-degrees {}\n", degrees.join(" ")));
    fs::write(out.join("decmat.txt"), table)?;
    Ok(())
}

fn runbook_exit(e: &RunbookError) -> i32 {
    use decmat_core::chartab::TableError;
    match e {
        RunbookError::Io { .. } | RunbookError::Parse { .. } => EXIT_DATA,
        // a fusion the runbook relies on but the tables lack
        RunbookError::Table {
            source: TableError::MissingFusion { .. },
            ..
        } => EXIT_MATH,
        RunbookError::Table { .. } => EXIT_DATA,
        RunbookError::Other { .. } => EXIT_USAGE,
        RunbookError::Step { .. } => EXIT_MATH,
    }
}

pub fn run_decomp(cmd: DecompCmd) -> i32 {
    match cmd {
        DecompCmd::Run { runbook, out, data } => {
            let text = match fs::read_to_string(&runbook) {
                Ok(t) => t,
                Err(e) => return fail(EXIT_DATA, format!("{}: {e}", runbook.display())),
            };
            let rb = match Runbook::parse(&text) {
                Ok(r) => r,
                Err(e) => return fail(EXIT_DATA, e),
            };
            let base = data.unwrap_or_else(|| {
                runbook
                    .parent()
                    .map(Path::to_path_buf)
                    .unwrap_or_else(|| PathBuf::from("."))
            });
            let outputs = match rb.run(&base) {
                Ok(o) => o,
                Err(e) => {
                    let code = runbook_exit(&e);
                    return fail(code, e);
                }
            };
            if let Err(e) = fs::create_dir_all(&out) {
                return fail(EXIT_DATA, e);
            }
            let mut manifest = String::new();
            if let Some(m) = &outputs.matrix {
                if let Err(e) = matrix_files(&out, m) {
                    return fail(EXIT_DATA, e);
                }
                manifest.push_str("decmat.mtxz\ndecmat.txt\n");
            }
            for (i, gram) in outputs.gram_tables.iter().enumerate() {
                let name = format!("gram_{}.txt", i + 1);
                if let Err(e) = fs::write(out.join(&name), gram) {
                    return fail(EXIT_DATA, e);
                }
                manifest.push_str(&name);
                manifest.push('\n');
            }
            if let Some(p) = &outputs.possibilities {
                if let Err(e) = fs::write(out.join("possibilities.txt"), p) {
                    return fail(EXIT_DATA, e);
                }
                manifest.push_str("possibilities.txt\n");
            }
            if let Some((labels, degrees)) = &outputs.basic_set_degrees {
                let mut s = String::new();
                for (l, d) in labels.iter().zip(degrees) {
                    s.push_str(&format!("{l} {d}\n"));
                }
                if let Err(e) = fs::write(out.join("basic_degrees.txt"), s) {
                    return fail(EXIT_DATA, e);
                }
                manifest.push_str("basic_degrees.txt\n");
            }
            if !outputs.relations.is_empty() {
                let mut s = String::new();
                for (t, coeffs) in &outputs.relations {
                    let cells: Vec<String> = coeffs.iter().map(|v| v.to_string()).collect();
                    s.push_str(&format!("target {t} {}\n", cells.join(" ")));
                }
                if let Err(e) = fs::write(out.join("relations.txt"), s) {
                    return fail(EXIT_DATA, e);
                }
                manifest.push_str("relations.txt\n");
            }
            if let Err(e) = fs::write(out.join("prooflog.txt"), &outputs.proof_log) {
                return fail(EXIT_DATA, e);
            }
            manifest.push_str("prooflog.txt\n");
            if let Err(e) = fs::write(out.join("manifest.txt"), &manifest) {
                return fail(EXIT_DATA, e);
            }
            println!("wrote outputs to {}", out.display());
            EXIT_OK
        }
    }
}

#[derive(Args)]
pub struct VerifyPaperArgs {
    /// directory holding externally exported character tables; the
    /// table-backed runs are skipped when absent
    #[arg(long)]
    data: Option<PathBuf>,
}

pub fn run_verify(args: VerifyPaperArgs) -> i32 {
    let tmp = std::env::temp_dir().join(format!("decmat-verify-{}", std::process::id()));
    if let Err(e) = refdata::materialize(&tmp) {
        return fail(EXIT_DATA, e);
    }
    let mut failures = 0;
    let mut check = |name: &str, ok: bool| {
        println!("{} {name}", if ok { "ok  " } else { "FAIL" });
        if !ok {
            failures += 1;
        }
    };

    // appendix-sum identity: the published chop outcome fills dimension 2^17,
    // and the transversal index computed from root data agrees
    let factors = refdata::chop_factors();
    let total: u64 = factors.iter().map(|&(d, m)| d * m as u64).sum();
    check("chop-outcome-fills-131072", total == 131072);
    let rs = RootSystem::build(RsType::F4);
    let data_f4 = center_of_radical(&rs, &[1, 2, 3]).expect("parabolic");
    check(
        "index-of-condensation-subgroup",
        rs.nroots == 24
            && data_f4.central_roots.len() == 7
            && 1u64 << (rs.nroots - data_f4.central_roots.len()) == total,
    );

    // the bundled desk runs reproduce every reference table
    for (runbook, decmat, degrees, label) in [
        (
            "b1_desk.run",
            "b1_decmat_expected.txt",
            "b1_brauer_degrees_expected.txt",
            "principal-block",
        ),
        (
            "b6_desk.run",
            "b6_decmat_expected.txt",
            "b6_brauer_degrees_expected.txt",
            "faithful-block",
        ),
    ] {
        let rb = Runbook::parse(refdata::get(runbook).unwrap()).expect("bundled runbook parses");
        match rb.run(&tmp) {
            Ok(out) => {
                let matrix = out.matrix.expect("matrix emitted");
                let expected = parse_matrix_fixture(refdata::get(decmat).unwrap());
                check(&format!("{label}-matrix"), matrix.entries == expected);
                let expected_deg: Vec<String> = refdata::get(degrees)
                    .unwrap()
                    .split_whitespace()
                    .map(String::from)
                    .collect();
                let got_deg: Vec<String> =
                    matrix.brauer_degrees.iter().map(|d| d.to_string()).collect();
                check(&format!("{label}-degrees"), got_deg == expected_deg);
            }
            Err(e) => {
                eprintln!("error running {runbook}: {e}");
                check(&format!("{label}-matrix"), false);
            }
        }
    }

    // table-backed runs need externally exported tables
    match args.data {
        Some(dir) if dir.join("f4_2.ct").exists() => {
            for name in ["b1_tables.run", "b6_tables.run"] {
                let text = refdata::get(name).unwrap();
                let rb = Runbook::parse(text).expect("bundled runbook parses");
                match rb.run(&dir) {
                    Ok(out) => {
                        let which = if name.starts_with("b1") {
                            "b1_decmat_expected.txt"
                        } else {
                            "b6_decmat_expected.txt"
                        };
                        let expected = parse_matrix_fixture(refdata::get(which).unwrap());
                        let ok = out.matrix.map(|m| m.entries == expected).unwrap_or(false);
                        check(&format!("table-backed-{name}"), ok);
                    }
                    Err(e) => {
                        eprintln!("error running {name}: {e}");
                        check(&format!("table-backed-{name}"), false);
                    }
                }
            }
        }
        _ => {
            println!("skip external table-backed runs (no --data directory with f4_2.ct)");
        }
    }

    let _ = fs::remove_dir_all(&tmp);
    if failures == 0 {
        EXIT_OK
    } else {
        EXIT_MATH
    }
}

fn parse_matrix_fixture(text: &str) -> Vec<Vec<i64>> {
    text.lines()
        .filter_map(|l| l.strip_prefix("row "))
        .map(|rest| {
            rest.split_whitespace()
                .map(|s| s.parse().unwrap())
                .collect()
        })
        .collect()
}
