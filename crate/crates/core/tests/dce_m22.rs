use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symgen_core::dce::{collapsed_graph, decompose, DoubleCosetDecomposition};
use symgen_core::progenitor::Progenitor;
use symgen_core::toddcoxeter::{enumerate, EnumerationOptions};
use symgen_core::wordlang::parse_presentation_file;
use symgen_core::Permutation;

const M22: &str = include_str!("../../../m22.pres");

fn decomposition() -> DoubleCosetDecomposition {
    let file = parse_presentation_file(M22).unwrap();
    let prog = Progenitor::from_file(&file).unwrap();
    let table = enumerate(
        &prog.full,
        prog.full.subgroup("M").unwrap(),
        &EnumerationOptions::default(),
    )
    .unwrap();
    decompose(&table, &prog.action, &prog.map).unwrap()
}

/// Words naming the eight double cosets, shortest first.
const NAMED: [&[usize]; 8] = [
    &[],
    &[7],
    &[7, 1],
    &[7, 1, 2],
    &[7, 1, 3],
    &[7, 1, 2, 3],
    &[7, 1, 2, 4],
    &[7, 1, 3, 9],
];

fn named(d: &DoubleCosetDecomposition) -> Vec<usize> {
    NAMED
        .iter()
        .map(|w| d.double_coset_of(w).unwrap())
        .collect()
}

#[test]
fn counts_and_stabilizers() {
    let d = decomposition();
    assert_eq!(d.double_cosets.len(), 8);
    let ids = named(&d);
    let mut distinct = ids.clone();
    distinct.sort_unstable();
    distinct.dedup();
    assert_eq!(distinct.len(), 8);
    let counts: Vec<usize> = ids.iter().map(|&k| d.double_cosets[k].count).collect();
    assert_eq!(counts, [1, 7, 42, 84, 84, 84, 14, 14]);
    let orders: Vec<u64> = ids
        .iter()
        .map(|&k| d.double_cosets[k].stabilizer_order)
        .collect();
    assert_eq!(orders, [168, 24, 4, 2, 2, 2, 12, 12]);
    assert_eq!(d.double_cosets.iter().map(|c| c.count).sum::<usize>(), 330);
    for dc in &d.double_cosets {
        assert_eq!(dc.count as u64 * dc.stabilizer_order, 168);
    }
}

#[test]
fn representatives_are_shortlex() {
    let d = decomposition();
    let reps: Vec<Vec<usize>> = d
        .double_cosets
        .iter()
        .map(|c| c.representative.clone())
        .collect();
    for pair in reps.windows(2) {
        let key = |w: &Vec<usize>| (w.len(), w.clone());
        assert!(key(&pair[0]) < key(&pair[1]));
    }
    for (k, dc) in d.double_cosets.iter().enumerate() {
        assert_eq!(d.double_coset_of(&dc.representative).unwrap(), k);
    }
}

#[test]
fn collapsed_graph_edges() {
    let d = decomposition();
    let g = collapsed_graph(&d);
    let ids = named(&d);
    let expected: [&[(usize, usize)]; 8] = [
        &[(1, 14)],
        &[(0, 2), (2, 12)],
        &[(1, 2), (2, 4), (3, 4), (4, 4)],
        &[(2, 2), (3, 3), (4, 1), (5, 6), (6, 2)],
        &[(2, 2), (3, 1), (4, 3), (5, 6), (7, 2)],
        &[(3, 6), (4, 6), (5, 2)],
        &[(3, 12), (6, 1), (7, 1)],
        &[(4, 12), (6, 1), (7, 1)],
    ];
    for (src, edges) in expected.iter().enumerate() {
        let mut total = 0;
        for &(dst, m) in edges.iter() {
            assert_eq!(g.multiplicity(ids[src], ids[dst]), m, "{src} -> {dst}");
            total += m;
        }
        assert_eq!(total, 14);
        assert_eq!(g.out_degree(ids[src]), 14);
    }
    let label = |s: usize, t: usize| {
        g.edges
            .iter()
            .find(|e| e.source == ids[s] && e.destination == ids[t])
            .unwrap()
            .label()
    };
    assert_eq!(label(2, 2), "2+2");
    assert_eq!(label(5, 5), "1+1");
    assert!(g.is_connected());
}

#[test]
fn edges_are_constant_on_double_cosets() {
    let d = decomposition();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (k, dc) in d.double_cosets.iter().enumerate() {
        let reference: BTreeMap<usize, usize> = d.edge_profile(dc.coset);
        let members = d.cosets_in(k);
        for _ in 0..3 {
            let c = members[rng.random_range(0..members.len())];
            assert_eq!(d.edge_profile(c), reference);
        }
    }
}

#[test]
fn coset_equivalences() {
    let d = decomposition();
    let holds: &[(&[usize], &[usize])] = &[
        (&[7], &[14]),
        (&[7, 1], &[7, 8]),
        (&[7, 1], &[14, 1]),
        (&[7, 1, 8], &[14]),
        (&[7, 1, 2], &[5, 1, 9]),
        (&[7, 1, 2, 1], &[4, 1, 2]),
        (&[7, 1, 2, 5], &[8, 5, 11, 3]),
        (&[7, 1, 2, 6], &[11, 2, 1]),
        (&[7, 1, 2, 8], &[5, 1, 9]),
        (&[7, 1, 3], &[12, 1, 10]),
        (&[7, 1, 3, 1], &[6, 1, 3]),
        (&[7, 1, 3, 2], &[2, 6, 3, 7]),
        (&[7, 1, 3, 4], &[9, 10, 1]),
        (&[7, 1, 3, 5], &[2, 4, 6, 1]),
        (&[7, 1, 3, 8], &[7, 1, 3]),
        (&[7, 1, 2, 3], &[14, 6, 2, 10]),
        (&[7, 1, 2, 3, 2], &[3, 13, 2, 7]),
        (&[7, 1, 2, 3, 4], &[7, 6, 5]),
        (&[7, 1, 2, 3, 5], &[6, 3, 4]),
        (&[7, 1, 2, 3, 6], &[6, 7, 1]),
        (&[7, 1, 2, 3, 7], &[3, 5, 2]),
        (&[7, 1, 2, 3, 8], &[8, 4, 13]),
        (&[7, 1, 2, 3, 9], &[14, 6, 2, 10]),
        (&[7, 1, 3, 9], &[14, 11, 3, 2]),
        (&[7, 1, 3, 9], &[9, 12, 10, 1]),
        (&[7, 1, 3, 9], &[12, 1, 10, 9]),
        (&[7, 1, 3, 9, 10], &[7, 8, 10, 6]),
        (&[7, 1, 2, 4], &[4, 10, 2, 13]),
        (&[7, 1, 2, 4], &[3, 13, 2, 11]),
        (&[7, 1, 2, 4, 2], &[3, 6, 9, 7]),
        (&[7, 1, 2, 4, 9], &[3, 13, 2, 11]),
        (&[7, 1, 2, 12], &[13, 5, 8, 10]),
        (&[12, 8, 3], &[7, 8, 10]),
    ];
    for (a, b) in holds {
        assert!(d.words_equivalent(a, b).unwrap(), "{a:?} ~ {b:?}");
    }
    assert!(!d.words_equivalent(&[7], &[7, 1]).unwrap());
    // Printed as t3t7t2t12; the corrected spelling is listed above.
    assert!(!d.words_equivalent(&[7, 1, 2, 4], &[3, 7, 2, 12]).unwrap());
}

#[test]
fn stated_stabilizer_elements() {
    let d = decomposition();
    let p = |s| Permutation::from_cycles(14, s).unwrap();
    let n7 = d.stabilizer_of(&[7]).unwrap();
    assert_eq!(n7.order().unwrap(), 24);
    assert!(n7
        .contains(&p("(2,13)(3,4)(5,12)(6,9)(7,14)(10,11)"))
        .unwrap());
    let n7139 = d.stabilizer_of(&[7, 1, 3, 9]).unwrap();
    assert_eq!(n7139.order().unwrap(), 12);
    assert!(n7139
        .contains(&p("(1,11)(2,9)(4,8)(5,6)(7,14)(12,13)"))
        .unwrap());
    let n7124 = d.stabilizer_of(&[7, 1, 2, 4]).unwrap();
    assert!(n7124
        .contains(&p("(1,13)(3,7)(4,11)(5,12)(6,8)(10,14)"))
        .unwrap());
}
