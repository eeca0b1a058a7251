use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unknot::corpus::{random_chord_system, random_tower_script};
use unknot::dissect::{dissect, ChordSystem};
use unknot::tower::{descend, provenance};

/// Binary-decimal value of a subscript: "01" is 0.01 in base 2.
fn dyadic(s: &str) -> f64 {
    s.bytes().enumerate().map(|(i, b)| if b == b'1' { 0.5f64.powi(i as i32 + 1) } else { 0.0 }).sum()
}

/// Any two chords of a valid system are nested or disjoint.
fn crossing_free(s: &ChordSystem) -> bool {
    let inside = |c: [usize; 2], p: usize| p > c[0].min(c[1]) && p < c[0].max(c[1]);
    s.chords.iter().all(|&a| s.chords.iter().all(|&b| inside(a, b[0]) == inside(a, b[1]) || a == b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn random_systems_are_valid(seed in any::<u64>(), m in 0usize..=12) {
        let s = random_chord_system(&mut ChaCha8Rng::seed_from_u64(seed), m);
        prop_assert!(s.validate().is_empty());
        prop_assert!(crossing_free(&s));
        prop_assert_eq!(ChordSystem::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn dissection_invariants(seed in any::<u64>(), m in 0usize..=12) {
        let s = random_chord_system(&mut ChaCha8Rng::seed_from_u64(seed), m);
        let (tree, seq) = dissect(&s).unwrap();

        for node in &tree.nodes {
            if let Some(children) = node.children {
                for c in children {
                    prop_assert!(tree.nodes[c].system.pairs.len() < node.system.pairs.len());
                }
            }
            prop_assert!(node.system.validate().is_empty());
        }
        for &l in &seq.leaves {
            prop_assert!(tree.nodes[l].system.chords.is_empty());
        }

        let values: Vec<f64> = seq.leaves.iter().map(|&l| dyadic(&tree.nodes[l].subscript)).collect();
        prop_assert!(values.windows(2).all(|w| w[0] < w[1]), "{:?}", values);
        prop_assert!(seq.leaves.len() <= 1 << m);
        prop_assert!(tree.depth() <= m);

        // Count decisions per crossing across every step.
        let mut seen: BTreeMap<String, usize> = BTreeMap::new();
        for step in tree.steps() {
            for (label, _) in &step.resolved {
                *seen.entry(label.clone()).or_default() += 1;
            }
        }
        let crossings = s.crossings();
        prop_assert_eq!(crossings.len(), 2 * m);
        for (label, ends) in &crossings {
            prop_assert_eq!(seen.get(label), Some(&1));
            let p = seq.resolution.over_position(label).unwrap();
            prop_assert!(ends.contains(&p));
        }
        prop_assert_eq!(seen.len(), crossings.len());

        let last = &tree.nodes[*seq.leaves.last().unwrap()];
        prop_assert!(last.subscript.bytes().all(|b| b == b'1'));
        prop_assert!(last.carries_basepoint());

        prop_assert_eq!(dissect(&s).unwrap(), (tree, seq));
    }

    #[test]
    fn tower_laws(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let levels = rng.gen_range(0..=3);
        let top = rng.gen_range(1..=5);
        let script = random_tower_script(&mut rng, levels, top, 5, 6);
        let r = descend(&script).unwrap();

        // Length law, level by level.
        prop_assert_eq!(r.lengths.len(), script.levels.len() + 1);
        prop_assert_eq!(r.lengths[0], top);
        for (l, systems) in script.levels.iter().enumerate() {
            prop_assert_eq!(systems.len(), r.lengths[l]);
            let sum: usize = systems.iter().map(|s| dissect(s).unwrap().1.leaves.len()).sum();
            prop_assert_eq!(r.lengths[l + 1], sum);
        }
        prop_assert_eq!(r.sequence.len(), *r.lengths.last().unwrap());

        // Order preservation: top cells appear in blocks, in order, so
        // removing one block leaves the others' order untouched.
        prop_assert!(r.sequence.windows(2).all(|w| w[0].top <= w[1].top));
        let mut paths: Vec<_> = r.sequence.iter().map(|p| (p.top, p.path.clone())).collect();
        paths.dedup();
        prop_assert_eq!(paths.len(), r.sequence.len());

        // Replay: each level's subscript is a leaf of the disk it came from.
        for i in 0..r.sequence.len() {
            let p = provenance(&r, i).unwrap();
            prop_assert_eq!(p.path.len(), script.levels.len());
            let mut live: Vec<(usize, Vec<String>)> = (1..=top).map(|t| (t, vec![])).collect();
            for (l, sub) in p.path.iter().enumerate() {
                let g = live.iter().position(|(t, path)| *t == p.top && path[..] == p.path[..l]).unwrap();
                let (tree, seq) = dissect(&script.levels[l][g]).unwrap();
                prop_assert!(seq.leaves.iter().any(|&x| tree.nodes[x].subscript == *sub));
                live = live
                    .iter()
                    .zip(&script.levels[l])
                    .flat_map(|((t, path), s)| {
                        let (tree, seq) = dissect(s).unwrap();
                        seq.leaves
                            .iter()
                            .map(|&x| {
                                let mut q = path.clone();
                                q.push(tree.nodes[x].subscript.clone());
                                (*t, q)
                            })
                            .collect::<Vec<_>>()
                    })
                    .collect();
            }
        }
        prop_assert_eq!(descend(&script).unwrap(), r);
    }
}
