//! Helpers shared by the integration suites.

use std::collections::BTreeMap;

use decmat_core::chartab::{BlockPartition, CharacterTable, ClassFunction, ClassInfo};
use decmat_core::cyclo::Cyclotomic;
use decmat_core::mtx::{self, Module};
use decmat_core::rootdata::{RootSystem, RsType};
use decmat_core::steinberg::{CondensationContext, StModule};
use decmat_core::unipotent::UGroup;
use decmat_core::{Integer, MatGf3};

/// Character table of an elementary abelian 2-group of rank k, with an
/// identity fusion registered on itself.
pub fn elementary_abelian_table(k: usize) -> CharacterTable {
    let n = 1usize << k;
    let classes: Vec<ClassInfo> = (0..n)
        .map(|i| ClassInfo {
            name: format!("e{i}"),
            size: Integer::from(1),
            centralizer: Integer::from(n as u64),
        })
        .collect();
    let irreducibles: Vec<Vec<Cyclotomic>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    let sign = (i & j).count_ones() % 2;
                    Cyclotomic::from_i64(if sign == 0 { 1 } else { -1 })
                })
                .collect()
        })
        .collect();
    let mut fusions = BTreeMap::new();
    fusions.insert("V".to_string(), (0..n).collect());
    CharacterTable::build(
        "V",
        Integer::from(n as u64),
        classes,
        BTreeMap::new(),
        irreducibles,
        BTreeMap::<u64, BlockPartition>::new(),
        fusions,
        BTreeMap::new(),
    )
    .expect("elementary abelian table is consistent")
}

pub fn multiset(entries: impl IntoIterator<Item = (usize, usize)>) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for (dim, mult) in entries {
        *m.entry(dim).or_insert(0) += mult;
    }
    m
}

/// The condensation cross-check for one desk-scale case; panics on any
/// disagreement.
pub fn oracle_case(ty: RsType, j_set: &[usize], seed: u64) {
    let rs = RootSystem::build(ty);
    let u = UGroup::with_tables(&rs, 1 << 10);
    let st = StModule::new(&u);
    let ctx = CondensationContext::new(&st, j_set).expect("condensation context");

    // side A: chop the condensed module built from the parabolic generators
    let cond: Vec<MatGf3> = ctx
        .condensed_generators()
        .expect("generators condense")
        .into_iter()
        .map(|(_, m)| m)
        .collect();
    let cond_module = Module::new(cond).unwrap();
    assert_eq!(cond_module.dim, ctx.dim());
    let chop_cond = mtx::chop(&cond_module, seed).expect("condensed chop");
    let side_a = multiset(chop_cond.result.entries.iter().map(|e| (e.dim, e.mult)));

    // side B: chop the full module and measure V-fixed spaces per factor
    let full_gens = st.full_generators();
    let full_mats: Vec<MatGf3> = full_gens
        .iter()
        .map(|g| st.full_matrix(&g.letters, 10).unwrap())
        .collect();
    let full_module = Module::new(full_mats).unwrap();
    let chop_full = mtx::chop(&full_module, seed ^ 0x5bd1e995).expect("full chop");
    let words = st.root_element_words();
    let mut side_b: BTreeMap<usize, usize> = BTreeMap::new();
    for (factor, mult) in &chop_full.factors {
        let v_mats: Vec<MatGf3> = ctx
            .transversal
            .v_roots
            .iter()
            .map(|&r| {
                let mut prod = MatGf3::identity(factor.dim);
                for &gi in &words[r] {
                    prod = prod.mat_mul(&factor.gens[gi]);
                }
                prod
            })
            .collect();
        let fdim = mtx::fixed_space(factor.dim, &v_mats).rows();
        if fdim > 0 {
            *side_b.entry(fdim).or_insert(0) += mult;
        }
    }
    assert_eq!(
        side_a, side_b,
        "{ty} J={j_set:?}: condensed chop vs fixed-space multiset"
    );

    // character side: dim St-iota = <Res_V St, 1_V> via a brute-force V table
    let k = ctx.transversal.v_roots.len();
    let vtable = elementary_abelian_table(k);
    let values: Vec<Cyclotomic> = (0..(1usize << k))
        .map(|bits| {
            let mut v = 0u64;
            for (i, &r) in ctx.transversal.v_roots.iter().enumerate() {
                if bits & (1 << i) != 0 {
                    v |= 1 << r;
                }
            }
            Cyclotomic::from_i64(st.unipotent_trace(v) as i64)
        })
        .collect();
    let st_on_v = ClassFunction {
        table: "V".into(),
        values,
    };
    let cond_degree = vtable
        .condensed_degree(&vtable, &st_on_v)
        .expect("integer condensed degree");
    assert_eq!(
        cond_degree,
        Integer::from(ctx.dim() as u64),
        "{ty} J={j_set:?}: character-side condensed degree"
    );
}
