//! Bundled reference data: the published decomposition tables, the chop
//! outcome of the condensed Steinberg module, runbooks reproducing them,
//! and small worked character tables.

/// Name/content pairs of every bundled fixture file.
pub const FILES: &[(&str, &str)] = &[
    ("b1_block.txt", include_str!("../fixtures/b1_block.txt")),
    ("b1_seed.txt", include_str!("../fixtures/b1_seed.txt")),
    ("b1_first_basic.txt", include_str!("../fixtures/b1_first_basic.txt")),
    (
        "b1_second_basic_expected.txt",
        include_str!("../fixtures/b1_second_basic_expected.txt"),
    ),
    (
        "b1_decmat_expected.txt",
        include_str!("../fixtures/b1_decmat_expected.txt"),
    ),
    (
        "b1_relations_expected.txt",
        include_str!("../fixtures/b1_relations_expected.txt"),
    ),
    (
        "b1_basic_degrees_expected.txt",
        include_str!("../fixtures/b1_basic_degrees_expected.txt"),
    ),
    (
        "b1_brauer_degrees_expected.txt",
        include_str!("../fixtures/b1_brauer_degrees_expected.txt"),
    ),
    ("b1_cond_degrees.txt", include_str!("../fixtures/b1_cond_degrees.txt")),
    ("b6_block.txt", include_str!("../fixtures/b6_block.txt")),
    ("b6_seed.txt", include_str!("../fixtures/b6_seed.txt")),
    ("b6_approx.txt", include_str!("../fixtures/b6_approx.txt")),
    (
        "b6_asterisk_rows.txt",
        include_str!("../fixtures/b6_asterisk_rows.txt"),
    ),
    (
        "b6_relations1_expected.txt",
        include_str!("../fixtures/b6_relations1_expected.txt"),
    ),
    (
        "b6_relations2_expected.txt",
        include_str!("../fixtures/b6_relations2_expected.txt"),
    ),
    (
        "b6_decmat_expected.txt",
        include_str!("../fixtures/b6_decmat_expected.txt"),
    ),
    (
        "b6_brauer_degrees_expected.txt",
        include_str!("../fixtures/b6_brauer_degrees_expected.txt"),
    ),
    ("chop_factors.txt", include_str!("../fixtures/chop_factors.txt")),
    ("b1_desk.run", include_str!("../fixtures/b1_desk.run")),
    ("b6_desk.run", include_str!("../fixtures/b6_desk.run")),
    ("b1_tables.run", include_str!("../fixtures/b1_tables.run")),
    ("b6_tables.run", include_str!("../fixtures/b6_tables.run")),
    ("s3.ct", include_str!("../fixtures/s3.ct")),
    ("s4.ct", include_str!("../fixtures/s4.ct")),
    ("v4.ct", include_str!("../fixtures/v4.ct")),
    ("s4_b1.run", include_str!("../fixtures/s4_b1.run")),
];

pub fn get(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, c)| *c)
}

/// Write every bundled fixture into a directory.
pub fn materialize(dir: &std::path::Path) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    for (name, content) in FILES {
        std::fs::write(dir.join(name), content)?;
    }
    Ok(())
}

/// The published chop outcome of the condensed Steinberg module, as
/// (dimension, multiplicity) pairs.
pub fn chop_factors() -> Vec<(u64, usize)> {
    get("chop_factors.txt")
        .expect("bundled")
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let mut it = l.split_whitespace();
            (
                it.next().unwrap().parse().unwrap(),
                it.next().unwrap().parse().unwrap(),
            )
        })
        .collect()
}
