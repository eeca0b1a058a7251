//! Diagram generators: rational knots as 4-plats, shadows traced from
//! integer polygons, the curl-chain family, and random inputs for tests.

use std::cmp::Ordering;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::diagram::{parse_pd_shadow, ResolvedDiagram, ShadowDiagram};
use crate::dissect::ChordSystem;
use crate::error::{Error, Result};
use crate::tower::TowerScript;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub shadow: ShadowDiagram,
    /// Properties the entry is expected to have, as short tags.
    pub expected: Vec<String>,
    /// Determinant of the alternating resolution, when known.
    pub determinant: Option<u64>,
}

/// Conway notation of the prime knots up to seven crossings, with
/// determinants.
pub const RATIONAL_KNOTS: [(&str, &[u32], u64); 14] = [
    ("3_1", &[3], 3),
    ("4_1", &[2, 2], 5),
    ("5_1", &[5], 5),
    ("5_2", &[3, 2], 7),
    ("6_1", &[4, 2], 9),
    ("6_2", &[3, 1, 2], 11),
    ("6_3", &[2, 1, 1, 2], 13),
    ("7_1", &[7], 7),
    ("7_2", &[5, 2], 11),
    ("7_3", &[4, 3], 13),
    ("7_4", &[3, 1, 3], 15),
    ("7_5", &[3, 2, 2], 17),
    ("7_6", &[2, 2, 1, 2], 19),
    ("7_7", &[2, 1, 1, 1, 2], 21),
];

/// Same continued fraction with an odd number of terms: a trailing `a`
/// becomes `a - 1, 1`.
pub fn odd_length(cf: &[u32]) -> Vec<u32> {
    let mut out = cf.to_vec();
    if out.len().is_multiple_of(2) {
        let last = out.pop().expect("even length and nonempty");
        if last > 1 {
            out.push(last - 1);
            out.push(1);
        } else {
            // [.., a, 1] equals [.., a + 1].
            let prev = out.pop().expect("at least two terms");
            out.push(prev + 1);
        }
    }
    out
}

/// Shadow of the 4-plat closure of a rational tangle.
///
/// Four strands run left to right at levels 0 (top) to 3. Term `i` of the
/// continued fraction twists levels 1 and 2 when `i` is even and levels 0
/// and 1 when odd. Caps join levels 0-1 and 2-3 at both ends. Crossing slots
/// are listed counterclockwise from the upper right.
pub fn plat(cf: &[u32]) -> Result<ShadowDiagram> {
    let n: usize = cf.iter().map(|&a| a as usize).sum();
    if n == 0 {
        return Ok(ShadowDiagram::empty());
    }
    let slots = 4 * n;
    let left = |l: usize| slots + l;
    let right = |l: usize| slots + 4 + l;
    let mut link = vec![usize::MAX; slots + 8];
    let connect = |a: usize, b: usize, link: &mut Vec<usize>| {
        link[a] = b;
        link[b] = a;
    };
    let mut open = [left(0), left(1), left(2), left(3)];
    let mut c = 0;
    for (i, &a) in cf.iter().enumerate() {
        let top = if i % 2 == 0 { 1 } else { 0 };
        for _ in 0..a {
            connect(open[top], 4 * c + 1, &mut link);
            connect(open[top + 1], 4 * c + 2, &mut link);
            open[top] = 4 * c;
            open[top + 1] = 4 * c + 3;
            c += 1;
        }
    }
    for (l, &end) in open.iter().enumerate() {
        connect(end, right(l), &mut link);
    }
    let cap = |e: usize| {
        let base = e - (e - slots) % 4;
        let l = e - base;
        base + (l ^ 1)
    };
    let mut edge = vec![0i64; slots];
    let mut next_edge = 1;
    let mut caps_seen = [false; 8];
    for s in 0..slots {
        if edge[s] != 0 {
            continue;
        }
        let mut x = link[s];
        while x >= slots {
            caps_seen[x - slots] = true;
            caps_seen[cap(x) - slots] = true;
            x = link[cap(x)];
        }
        edge[s] = next_edge;
        edge[x] = next_edge;
        next_edge += 1;
    }
    if caps_seen.iter().any(|&v| !v) {
        return Err(Error::InvalidDiagram("plat closure has a component without crossings".into()));
    }
    let text: String = (0..n)
        .map(|c| format!("P {} {} {} {}\n", edge[4 * c], edge[4 * c + 1], edge[4 * c + 2], edge[4 * c + 3]))
        .collect();
    parse_pd_shadow(&text)
}

/// Walking from the basepoint, passes alternate over and under.
pub fn alternating_resolution(shadow: &ShadowDiagram) -> ResolvedDiagram {
    ResolvedDiagram::from_choice(shadow.clone(), |c| {
        if shadow.walk_index(c.first).is_multiple_of(2) {
            c.first
        } else {
            c.second
        }
    })
}

const UNKNOTS: &str = "descending and loop-erasure resolutions reduce to 0 crossings";

pub fn standard() -> Vec<CorpusEntry> {
    RATIONAL_KNOTS
        .iter()
        .map(|&(name, cf, det)| CorpusEntry {
            name: name.to_string(),
            shadow: plat(&odd_length(cf)).expect("rational knots close up"),
            expected: vec![UNKNOTS.into(), format!("alternating resolution has determinant {det}")],
            determinant: Some(det),
        })
        .collect()
}

fn orient(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> i128 {
    let (ax, ay, bx, by, cx, cy) = (a.0 as i128, a.1 as i128, b.0 as i128, b.1 as i128, c.0 as i128, c.1 as i128);
    (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
}

/// A crossing of two segments: parameters along each as fractions.
struct Hit {
    seg: [usize; 2],
    t: [(i128, i128); 2],
    first_over_sign: i8,
}

fn frac_cmp(a: (i128, i128), b: (i128, i128)) -> Ordering {
    (a.0 * b.1).cmp(&(b.0 * a.1))
}

/// Shadow of a closed integer polygon in general position. Vertices are
/// visited in order and the polygon closes back to the first; the basepoint
/// sits at the first vertex.
pub fn polyline_shadow(points: &[(i64, i64)]) -> Result<ShadowDiagram> {
    let m = points.len();
    if m < 3 {
        return Err(Error::DegeneratePolygon("fewer than three vertices".into()));
    }
    let seg = |i: usize| (points[i], points[(i + 1) % m]);
    for i in 0..m {
        let (a, b) = seg(i);
        if a == b {
            return Err(Error::DegeneratePolygon(format!("segment {i} has zero length")));
        }
        let (_, c) = seg((i + 1) % m);
        if orient(a, b, c) == 0 {
            let back = (b.0 - a.0) * (c.0 - b.0) + (b.1 - a.1) * (c.1 - b.1);
            if back < 0 {
                return Err(Error::DegeneratePolygon(format!("segment {} doubles back", (i + 1) % m)));
            }
        }
    }
    let mut hits = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let adjacent = j == i + 1 || (i == 0 && j == m - 1);
            let (a, b) = seg(i);
            let (c, d) = seg(j);
            let (o1, o2) = (orient(a, b, c), orient(a, b, d));
            let (o3, o4) = (orient(c, d, a), orient(c, d, b));
            if adjacent {
                // Only the shared vertex may be common.
                let shared_ok = if j == i + 1 { o1 != 0 || o2 != 0 } else { o3 != 0 || o4 != 0 };
                let far = if j == i + 1 { (orient(c, d, a), d) } else { (orient(a, b, d), c) };
                if !shared_ok && far.0 == 0 {
                    return Err(Error::DegeneratePolygon(format!("segments {i} and {j} overlap")));
                }
                continue;
            }
            if [o1, o2, o3, o4].contains(&0) {
                let touches = |o: i128, p: (i64, i64), s: ((i64, i64), (i64, i64))| {
                    o == 0
                        && p.0 >= s.0 .0.min(s.1 .0)
                        && p.0 <= s.0 .0.max(s.1 .0)
                        && p.1 >= s.0 .1.min(s.1 .1)
                        && p.1 <= s.0 .1.max(s.1 .1)
                };
                if touches(o1, c, (a, b)) || touches(o2, d, (a, b)) || touches(o3, a, (c, d)) || touches(o4, b, (c, d)) {
                    return Err(Error::DegeneratePolygon(format!("segments {i} and {j} touch")));
                }
                continue;
            }
            if (o1 > 0) == (o2 > 0) || (o3 > 0) == (o4 > 0) {
                continue;
            }
            // a + t (b - a) = c + s (d - c)
            let den = o3 - o4;
            let t = if den < 0 { (-o3, -den) } else { (o3, den) };
            let den2 = o1 - o2;
            let s = if den2 < 0 { (-o1, -den2) } else { (o1, den2) };
            let da = (b.0 - a.0, b.1 - a.1);
            let db = (d.0 - c.0, d.1 - c.1);
            let cross = da.0 as i128 * db.1 as i128 - da.1 as i128 * db.0 as i128;
            hits.push(Hit { seg: [i, j], t: [t, s], first_over_sign: if cross > 0 { 1 } else { -1 } });
        }
    }
    // Passes along the loop: (segment, parameter, hit, which side).
    let mut passes: Vec<(usize, (i128, i128), usize, usize)> = Vec::with_capacity(2 * hits.len());
    for (h, hit) in hits.iter().enumerate() {
        passes.push((hit.seg[0], hit.t[0], h, 0));
        passes.push((hit.seg[1], hit.t[1], h, 1));
    }
    passes.sort_by(|x, y| x.0.cmp(&y.0).then(frac_cmp(x.1, y.1)));
    for w in passes.windows(2) {
        if w[0].0 == w[1].0 && frac_cmp(w[0].1, w[1].1) == Ordering::Equal {
            return Err(Error::DegeneratePolygon(format!("three strands meet on segment {}", w[0].0)));
        }
    }
    let mut label = vec![0usize; hits.len()];
    let mut next = 1;
    let mut word = Vec::with_capacity(passes.len());
    for &(_, _, h, _) in &passes {
        if label[h] == 0 {
            label[h] = next;
            next += 1;
        }
        word.push(label[h].to_string());
    }
    // Side 0 lies on the earlier segment, so it is the crossing's first
    // stored pass.
    let shadow = ShadowDiagram::from_word(&word)?;
    let signs: Vec<i8> = shadow
        .crossings()
        .iter()
        .map(|c| {
            let h = label.iter().position(|&l| l.to_string() == c.label).expect("label from a hit");
            hits[h].first_over_sign
        })
        .collect();
    ShadowDiagram::from_first_over_signs(word, 0, &signs)
}

/// Polygon of a chain of `k` curls, each threaded through the one before.
///
/// Curl `j` rises from the baseline `y = 0` along a diagonal, runs around a
/// box `[20 j - 15, 20 j + 15] x [20 + 10 j, 50 + 10 j]` and comes back down a
/// second diagonal that crosses the first. Neighbouring boxes overlap and
/// step upward, so the loop of curl `j + 1` crosses the loop of curl `j`
/// twice. A path below the baseline closes the curve. There are `3k - 2`
/// crossings.
pub fn foxartin_polygon(k: usize) -> Vec<(i64, i64)> {
    let mut pts = Vec::new();
    for j in 0..k as i64 {
        let (x, y0, y1) = (20 * j, 20 + 10 * j, 50 + 10 * j);
        pts.extend([(x - 5, 0), (x + 15, y0), (x + 15, y1), (x - 15, y1), (x - 15, y0), (x + 5, 0)]);
    }
    let last = 20 * (k as i64 - 1).max(0);
    pts.extend([(last + 30, 0), (last + 30, -20), (-40, -20), (-40, 0)]);
    pts
}

pub fn foxartin(k: usize) -> CorpusEntry {
    let shadow = polyline_shadow(&foxartin_polygon(k)).expect("the curl chain is in general position");
    CorpusEntry {
        name: format!("foxartin_{k}"),
        shadow,
        expected: vec![UNKNOTS.into(), format!("{} crossings", (3 * k).saturating_sub(2))],
        determinant: None,
    }
}

/// Random closed polygon with vertices in `[0, size)^2`, retried until it
/// is in general position.
pub fn random_polygon_shadow<R: Rng>(rng: &mut R, vertices: usize, size: i64) -> ShadowDiagram {
    loop {
        let pts: Vec<(i64, i64)> = (0..vertices).map(|_| (rng.gen_range(0..size), rng.gen_range(0..size))).collect();
        if let Ok(s) = polyline_shadow(&pts) {
            return s;
        }
    }
}

/// Random valid chord system with `m` pairs and a random basepoint.
pub fn random_chord_system<R: Rng>(rng: &mut R, m: usize) -> ChordSystem {
    let points = 4 * m;
    // Random balanced bracket word; matching brackets become chords.
    let mut chords = Vec::with_capacity(2 * m);
    let mut stack = Vec::new();
    let mut opened = 0;
    for p in 0..points {
        let can_open = opened < 2 * m;
        let open = can_open && (stack.is_empty() || rng.gen_bool(0.5));
        if open {
            stack.push(p);
            opened += 1;
        } else {
            let q = stack.pop().expect("balanced");
            chords.push(if rng.gen_bool(0.5) { [q, p] } else { [p, q] });
        }
    }
    let mut order: Vec<usize> = (0..2 * m).collect();
    order.shuffle(rng);
    let pairs = order.chunks(2).map(|c| [c[0], c[1]]).collect();
    let basepoint = if points == 0 { 0 } else { rng.gen_range(0..points) };
    ChordSystem { points, basepoint, chords, pairs }
}

/// Random tower script, generated level by level so arities match. Each
/// level supplies at most `max_disks` systems; when more disks are live the
/// script stops early.
pub fn random_tower_script<R: Rng>(
    rng: &mut R,
    levels: usize,
    top_cells: usize,
    max_disks: usize,
    max_pairs: usize,
) -> TowerScript {
    let mut script = TowerScript { top_cells, levels: vec![] };
    let mut live = top_cells;
    for _ in 0..levels {
        if live > max_disks {
            break;
        }
        let systems: Vec<ChordSystem> = (0..live)
            .map(|_| {
                let m = rng.gen_range(0..=max_pairs);
                random_chord_system(rng, m)
            })
            .collect();
        live = systems
            .iter()
            .map(|s| crate::dissect::dissect(s).expect("generated systems are valid").1.leaves.len())
            .sum();
        script.levels.push(systems);
    }
    script
}
