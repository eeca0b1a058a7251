//! Acceptance run: one PASS/FAIL line per criterion. Exits non-zero when
//! any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unknot::corpus::{self, alternating_resolution, random_chord_system, random_polygon_shadow, random_tower_script, CorpusEntry, RATIONAL_KNOTS};
use unknot::diagram::{parse_resolved, ResolvedDiagram};
use unknot::dissect::dissect;
use unknot::resolve::{descending_resolution, loop_erasure_resolution, min_extrema};
use unknot::tower::{descend, provenance};
use unknot::verify::{canonical_resolved_code, kauffman_bracket, normalized_bracket, reidemeister_reduce, PlanarKnot, Reduction, SearchBudget};

// Pinned limits.
const CORPUS_TIME: Duration = Duration::from_secs(300);
const FOXARTIN_K: usize = 4;
const EXTREMA_BOUND: usize = 8;
const CHORD_SYSTEMS: usize = 1000;
const MAX_PAIRS: usize = 12;
const DISSECT_TIME: Duration = Duration::from_secs(30);
const TOWER_SCRIPTS: usize = 500;
const TOWER_LEVELS: usize = 3;
const TOWER_DISKS: usize = 5;
const TOWER_PAIRS: usize = 6;
const RANDOM_MOVES: usize = 500;
const SEED: u64 = 20_240_601;

struct Report {
    failed: usize,
}

impl Report {
    fn line(&mut self, id: u32, name: &str, errors: &[String], detail: &str) {
        if errors.is_empty() {
            println!("PASS {id} {name}: {detail}");
        } else {
            self.failed += 1;
            println!("FAIL {id} {name}: {detail}; {} problem(s), first: {}", errors.len(), errors[0]);
        }
    }
}

fn corpus_entries() -> Vec<CorpusEntry> {
    let mut v = corpus::standard();
    v.extend((1..=FOXARTIN_K).map(corpus::foxartin));
    v
}

fn reduces(d: &ResolvedDiagram) -> Result<Reduction, String> {
    reidemeister_reduce(d, &SearchBudget::default()).map_err(|e| e.to_string())
}

/// Numerator of the continued fraction: the determinant of the knot.
fn cf_numerator(cf: &[u32]) -> u64 {
    let (mut p, mut q) = (1u64, 0u64);
    for &a in cf.iter().rev() {
        (p, q) = (a as u64 * p + q, p);
    }
    p
}

fn criterion_1(r: &mut Report, traces: &mut Vec<(String, Reduction)>) {
    let start = Instant::now();
    let mut errors = Vec::new();
    let mut count = 0;
    for e in corpus_entries() {
        let le = loop_erasure_resolution(&e.shadow).resolved;
        for (strategy, d) in [("descending", descending_resolution(&e.shadow).0), ("loop-erasure", le)] {
            count += 1;
            match reduces(&d) {
                Ok(Reduction::Reduced(t)) => traces.push((format!("{} {strategy}", e.name), Reduction::Reduced(t))),
                Ok(other) => errors.push(format!("{} {strategy}: {other:?}", e.name)),
                Err(msg) => errors.push(format!("{} {strategy}: {msg}", e.name)),
            }
            if !kauffman_bracket(&d).is_ok_and(|b| b.is_one()) {
                errors.push(format!("{} {strategy}: bracket is not 1", e.name));
            }
        }
    }
    let took = start.elapsed();
    if took > CORPUS_TIME {
        errors.push(format!("took {took:?}, limit {CORPUS_TIME:?}"));
    }
    r.line(1, "unknotting completeness", &errors, &format!("{count} resolutions reduced to 0 crossings with bracket 1 in {:.2?}", took));
}

fn criterion_2(r: &mut Report) {
    let mut errors = Vec::new();
    let mut checked = 0;
    for e in corpus_entries() {
        let (d, profile) = descending_resolution(&e.shadow);
        if !profile.is_compatible(&d) {
            errors.push(format!("{}: profile not compatible", e.name));
        }
        if (profile.maxima(), profile.minima()) != (1, 1) {
            errors.push(format!("{}: {} maxima, {} minima", e.name, profile.maxima(), profile.minima()));
        }
        if e.shadow.crossing_count() <= EXTREMA_BOUND {
            checked += 1;
            match min_extrema(&d, EXTREMA_BOUND) {
                Ok((1, _)) => {}
                Ok((m, _)) => errors.push(format!("{}: min_extrema {m}", e.name)),
                Err(err) => errors.push(format!("{}: {err}", e.name)),
            }
        }
    }
    r.line(2, "descending profile", &errors, &format!("one maximum and one minimum on every shadow; min_extrema = 1 on {checked} shadows with n <= {EXTREMA_BOUND}"));
}

fn criterion_3(r: &mut Report) {
    let mut errors = Vec::new();
    let d = parse_resolved("X 1 5 2 4\nX 3 1 4 6\nX 5 3 6 2\n").unwrap();
    let word = parse_resolved("O1 U2 O3 U1 O2 U3").unwrap();
    if canonical_resolved_code(&d) != canonical_resolved_code(&word) {
        errors.push(format!("planar code is {d}, not the alternating trefoil"));
    }
    let reduction = reduces(&d);
    if !matches!(reduction, Ok(Reduction::NotReduced { budget_exceeded: false, .. })) {
        errors.push(format!("search gave {reduction:?}"));
    }
    let b = kauffman_bracket(&d).unwrap();
    if b.is_one() {
        errors.push("bracket is 1".into());
    }
    let m = min_extrema(&word, EXTREMA_BOUND).unwrap().0;
    if m != 2 {
        errors.push(format!("min_extrema {m}"));
    }
    r.line(3, "trefoil negative control", &errors, &format!("not reduced, bracket {b}, min_extrema {m}"));
}

fn criterion_4(r: &mut Report) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut errors = Vec::new();
    let mut max_leaves = 0;
    for i in 0..CHORD_SYSTEMS {
        let m = rng.gen_range(0..=MAX_PAIRS);
        let s = random_chord_system(&mut rng, m);
        let (tree, seq) = match dissect(&s) {
            Ok(x) => x,
            Err(e) => {
                errors.push(format!("system {i}: {e}"));
                continue;
            }
        };
        let mut err = |msg: String| errors.push(format!("system {i} (m={m}): {msg}"));
        for node in &tree.nodes {
            if let Some(children) = node.children {
                if children.iter().any(|&c| tree.nodes[c].system.pairs.len() >= node.system.pairs.len()) {
                    err(format!("step at {:?} does not shrink", node.subscript));
                }
            }
        }
        if seq.leaves.iter().any(|&l| !tree.nodes[l].system.chords.is_empty()) {
            err("leaf with chords".into());
        }
        let dyadic = |s: &str| s.bytes().enumerate().map(|(k, b)| if b == b'1' { 0.5f64.powi(k as i32 + 1) } else { 0.0 }).sum::<f64>();
        let values: Vec<f64> = seq.leaves.iter().map(|&l| dyadic(&tree.nodes[l].subscript)).collect();
        if values.windows(2).any(|w| w[0] >= w[1]) {
            err("leaves out of dyadic order".into());
        }
        let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
        for step in tree.steps() {
            for (label, _) in &step.resolved {
                *seen.entry(label).or_default() += 1;
            }
        }
        let crossings = s.crossings();
        if seen.len() != crossings.len() || crossings.iter().any(|(l, _)| seen.get(l.as_str()) != Some(&1)) {
            err("crossings not resolved exactly once".into());
        }
        if seq.leaves.len() > 1 << m {
            err(format!("{} leaves", seq.leaves.len()));
        }
        let last = &tree.nodes[*seq.leaves.last().unwrap()];
        if !last.subscript.bytes().all(|b| b == b'1') {
            err(format!("basepoint leaf is {:?}", last.subscript));
        }
        max_leaves = max_leaves.max(seq.leaves.len());
    }
    let took = start.elapsed();
    if took > DISSECT_TIME {
        errors.push(format!("took {took:?}, limit {DISSECT_TIME:?}"));
    }
    r.line(4, "dissection invariants", &errors, &format!("{CHORD_SYSTEMS} systems with m <= {MAX_PAIRS} in {took:.2?}, at most {max_leaves} leaves"));
}

fn criterion_5(r: &mut Report) {
    let mut errors = Vec::new();
    let mut cells = 0;
    for e in corpus_entries() {
        let s = &e.shadow;
        let le = loop_erasure_resolution(s);
        let mut err = |msg: String| errors.push(format!("{}: {msg}", e.name));
        if le.cells.len() > s.crossing_count() {
            err(format!("{} cells for {} crossings", le.cells.len(), s.crossing_count()));
        }
        if le.hemisphere != le.cells.len() + 1 {
            err(format!("hemisphere {} after {} cells", le.hemisphere, le.cells.len()));
        }
        let mut decided: BTreeMap<&str, usize> = BTreeMap::new();
        for c in &le.cells {
            let [a, b] = c.ends;
            if s.word[a] != c.crossing || s.word[b] != c.crossing || a == b {
                err(format!("cell {} ends are not the two passes of {}", c.ordinal, c.crossing));
            }
            let (wa, wb) = (s.walk_index(a), s.walk_index(b));
            // The basepoint sits before walk index 0, so it is outside the
            // loop exactly when the loop does not wrap.
            let inside: Vec<usize> = c.alpha.iter().map(|&p| s.walk_index(p)).collect();
            if wa >= wb || inside.iter().any(|&w| w <= wa || w >= wb) {
                err(format!("cell {} loop contains the basepoint", c.ordinal));
            }
            let labels: BTreeSet<&String> = c.alpha.iter().map(|&p| &s.word[p]).collect();
            if labels.len() != c.alpha.len() {
                err(format!("cell {} loop repeats a label", c.ordinal));
            }
            for (l, _) in &c.decisions {
                *decided.entry(l).or_default() += 1;
            }
        }
        cells += le.cells.len();
        if decided.len() != s.crossing_count() || decided.values().any(|&n| n != 1) {
            err("crossings not decided exactly once".into());
        }
    }
    r.line(5, "loop-erasure structure", &errors, &format!("{cells} cells over the corpus, each loop simple and free of the basepoint"));
}

fn criterion_6(r: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let mut errors = Vec::new();
    let mut longest = 0;
    for i in 0..TOWER_SCRIPTS {
        let levels = rng.gen_range(1..=TOWER_LEVELS);
        let top = rng.gen_range(1..=TOWER_DISKS);
        let script = random_tower_script(&mut rng, levels, top, TOWER_DISKS, TOWER_PAIRS);
        let res = match descend(&script) {
            Ok(res) => res,
            Err(e) => {
                errors.push(format!("script {i}: {e}"));
                continue;
            }
        };
        let mut err = |msg: String| errors.push(format!("script {i}: {msg}"));
        // Length law, recomputed from independent dissections.
        let mut live = top;
        for systems in &script.levels {
            if systems.len() != live {
                err("arity".into());
            }
            live = systems.iter().map(|s| dissect(s).unwrap().1.leaves.len()).sum();
        }
        if res.sequence.len() != live {
            err(format!("length {} != {live}", res.sequence.len()));
        }
        if res.sequence.windows(2).any(|w| w[0].top > w[1].top) {
            err("top cells out of order".into());
        }
        let unique: BTreeSet<_> = res.sequence.iter().collect();
        if unique.len() != res.sequence.len() {
            err("provenance repeats".into());
        }
        // Replay each provenance path from the top.
        for k in 0..res.sequence.len() {
            let p = provenance(&res, k).unwrap();
            let mut disks: Vec<(usize, Vec<String>)> = (1..=top).map(|t| (t, vec![])).collect();
            for (l, sub) in p.path.iter().enumerate() {
                let Some(g) = disks.iter().position(|(t, path)| *t == p.top && path[..] == p.path[..l]) else {
                    err(format!("path {p} lost at level {l}"));
                    break;
                };
                let (tree, seq) = dissect(&script.levels[l][g]).unwrap();
                if !seq.leaves.iter().any(|&x| tree.nodes[x].subscript == *sub) {
                    err(format!("path {p} names no leaf at level {l}"));
                }
                disks = disks
                    .iter()
                    .zip(&script.levels[l])
                    .flat_map(|((t, path), s)| {
                        let (tree, seq) = dissect(s).unwrap();
                        seq.leaves.iter().map(|&x| (*t, [path.clone(), vec![tree.nodes[x].subscript.clone()]].concat())).collect::<Vec<_>>()
                    })
                    .collect();
            }
        }
        longest = longest.max(res.sequence.len());
    }
    r.line(6, "concatenation law", &errors, &format!("{TOWER_SCRIPTS} scripts, <= {TOWER_LEVELS} levels, <= {TOWER_DISKS} disks, m <= {TOWER_PAIRS}; longest sequence {longest}"));
}

fn criterion_7(r: &mut Report, traces: &[(String, Reduction)]) {
    let mut errors = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let mut moves = 0;
    while moves < RANDOM_MOVES {
        let v = rng.gen_range(4..=9);
        let s = random_polygon_shadow(&mut rng, v, 30);
        if s.crossing_count() > 8 {
            continue;
        }
        let d = ResolvedDiagram::from_choice(s, |c| if rng.gen_bool(0.5) { c.first } else { c.second });
        let k = PlanarKnot::from_resolved(&d).unwrap();
        let before = normalized_bracket(&k).unwrap();
        let options = k.moves(Some(k.crossing_count() + 2));
        let Some(m) = options.choose(&mut rng) else { continue };
        moves += 1;
        match k.apply(m) {
            Some(after) if normalized_bracket(&after).unwrap() == before => {}
            Some(_) => errors.push(format!("{m} changed the bracket of {d}")),
            None => errors.push(format!("{m} was offered but does not apply")),
        }
    }
    for (name, t) in traces {
        if let Reduction::Reduced(t) = t {
            if !t.is_valid() {
                errors.push(format!("{name}: trace does not replay"));
            }
        }
    }
    // Cross-consistency over every corpus resolution, alternating included.
    let mut pairs = 0;
    for e in corpus_entries() {
        let mut ds = vec![descending_resolution(&e.shadow).0, loop_erasure_resolution(&e.shadow).resolved];
        if e.determinant.is_some() {
            ds.push(alternating_resolution(&e.shadow));
        }
        for d in ds {
            pairs += 1;
            let one = kauffman_bracket(&d).unwrap().is_one();
            let reduced = matches!(reduces(&d), Ok(Reduction::Reduced(_)));
            // On the corpus both directions hold.
            if reduced != one {
                errors.push(format!("{}: reduced {reduced}, bracket one {one}", e.name));
            }
        }
        if let Some(det) = e.determinant {
            let got = kauffman_bracket(&alternating_resolution(&e.shadow)).unwrap().determinant();
            let cf = RATIONAL_KNOTS.iter().find(|k| k.0 == e.name).unwrap().1;
            if got != det || det != cf_numerator(cf) {
                errors.push(format!("{}: determinant {got}, table {det}, fraction {}", e.name, cf_numerator(cf)));
            }
        }
    }
    r.line(
        7,
        "verification self-consistency",
        &errors,
        &format!("{moves} random moves kept the bracket; {} traces replay; {pairs} corpus resolutions consistent", traces.len()),
    );
}

fn main() {
    let mut r = Report { failed: 0 };
    let mut traces = Vec::new();
    criterion_1(&mut r, &mut traces);
    criterion_2(&mut r);
    criterion_3(&mut r);
    criterion_4(&mut r);
    criterion_5(&mut r);
    criterion_6(&mut r);
    criterion_7(&mut r, &traces);
    if r.failed > 0 {
        println!("{} criterion(s) failed", r.failed);
        std::process::exit(1);
    }
}
