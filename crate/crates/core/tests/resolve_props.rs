use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unknot::corpus::random_polygon_shadow;
use unknot::diagram::{ResolvedDiagram, ShadowDiagram};
use unknot::resolve::{descending_resolution, loop_erasure_resolution, min_extrema};
use unknot::verify::{kauffman_bracket, reidemeister_reduce, Reduction, SearchBudget};

/// Random polygon shadow with between 1 and `max_crossings` crossings.
fn shadow(seed: u64, max_crossings: usize) -> ShadowDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let v = rng.gen_range(4..=9);
        let s = random_polygon_shadow(&mut rng, v, 30);
        if (1..=max_crossings).contains(&s.crossing_count()) {
            return s;
        }
    }
}

fn random_resolution(s: ShadowDiagram, seed: u64) -> ResolvedDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ResolvedDiagram::from_choice(s, |c| if rng.gen_bool(0.5) { c.first } else { c.second })
}

/// Every height order over the loop with the basepoint lowest; keeps the
/// least number of cyclic maxima among orders with over above under.
fn extrema_oracle(d: &ResolvedDiagram) -> usize {
    let s = &d.shadow;
    let len = s.len();
    if len == 0 {
        return 1;
    }
    let over = d.over_flags();
    let walk: Vec<usize> = s.walk().collect();
    let mut best = usize::MAX;
    let mut ranks: Vec<usize> = (1..=len).collect();
    permute(&mut ranks, 0, &mut |h| {
        // h[w] is the height at walk index w; the basepoint has height 0.
        for c in s.crossings() {
            let (o, u) = if over[c.first] { (c.first, c.second) } else { (c.second, c.first) };
            let (wo, wu) = (walk.iter().position(|&p| p == o).unwrap(), walk.iter().position(|&p| p == u).unwrap());
            if h[wo] < h[wu] {
                return;
            }
        }
        let mut vals = vec![0];
        vals.extend_from_slice(h);
        let n = vals.len();
        let peaks = (0..n).filter(|&i| vals[i] > vals[(i + n - 1) % n] && vals[i] > vals[(i + 1) % n]).count();
        best = best.min(peaks);
    });
    best
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

fn certified(d: &ResolvedDiagram) -> bool {
    let reduced = matches!(reidemeister_reduce(d, &SearchBudget::default()).unwrap(), Reduction::Reduced(t) if t.is_valid());
    reduced && kauffman_bracket(d).unwrap().is_one()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn descending_unknots(seed in any::<u64>()) {
        let s = shadow(seed, 8);
        let (d, profile) = descending_resolution(&s);
        prop_assert!(profile.is_compatible(&d));
        prop_assert_eq!((profile.maxima(), profile.minima()), (1, 1));
        prop_assert!(certified(&d));
    }

    #[test]
    fn loop_erasure_unknots(seed in any::<u64>()) {
        let s = shadow(seed, 8);
        let le = loop_erasure_resolution(&s);
        prop_assert!(le.cells.len() <= s.crossing_count().max(1));
        prop_assert_eq!(le.resolution().len(), s.crossing_count());
        prop_assert!(certified(&le.resolved));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn min_extrema_matches_permutations(seed in any::<u64>()) {
        let s = shadow(seed, 4);
        let d = random_resolution(s, seed);
        let (m, profile) = min_extrema(&d, 8).unwrap();
        prop_assert!(m >= 1);
        prop_assert_eq!(m, extrema_oracle(&d));
        prop_assert!(profile.is_compatible(&d));
        prop_assert_eq!(profile.maxima(), m);
    }

    #[test]
    fn min_extrema_of_descending_is_one(seed in any::<u64>()) {
        let s = shadow(seed, 8);
        prop_assert_eq!(min_extrema(&descending_resolution(&s).0, 8).unwrap().0, 1);
    }

    #[test]
    fn min_extrema_ignores_word_rotation(seed in any::<u64>(), k in 0usize..20) {
        let s = shadow(seed, 6);
        let d = random_resolution(s, seed);
        prop_assert_eq!(min_extrema(&d.rotated(k), 8).unwrap().0, min_extrema(&d, 8).unwrap().0);
    }
}

