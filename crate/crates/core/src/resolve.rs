//! Crossing choices that unknot a shadow, and extrema of compatible height
//! functions.

use std::fmt;

use crate::diagram::{HeightProfile, Resolution, ResolvedDiagram, ShadowDiagram};
use crate::error::{Error, Result};

pub const DEFAULT_EXTREMA_BOUND: usize = 8;

/// Walking from the basepoint, every crossing is first met on the over
/// strand. The profile falls steadily from just below 1 towards 0.
pub fn descending_resolution(shadow: &ShadowDiagram) -> (ResolvedDiagram, HeightProfile) {
    let resolved = ResolvedDiagram::from_choice(shadow.clone(), |c| {
        if shadow.walk_index(c.first) < shadow.walk_index(c.second) {
            c.first
        } else {
            c.second
        }
    });
    let len = shadow.len();
    let mut heights = vec![0.0; len];
    for (w, p) in shadow.walk().enumerate() {
        heights[p] = 1.0 - (w + 1) as f64 / (len + 1) as f64;
    }
    (resolved, HeightProfile { heights, basepoint: shadow.basepoint })
}

/// One erased loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellRecord {
    /// 1-based cell number.
    pub ordinal: usize,
    /// The crossing closing the loop.
    pub crossing: String,
    /// Stored positions of the crossing's two passes, in walk order. They
    /// bound the loop.
    pub ends: [usize; 2],
    /// Interior of the loop: stored positions in walk order.
    pub alpha: Vec<usize>,
    /// Length of the remaining word outside the loop at this step; the
    /// complementary arc runs through the basepoint.
    pub beta_len: usize,
    /// Crossing label and the stored position chosen over, in the order
    /// decided.
    pub decisions: Vec<(String, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopErasureResult {
    pub resolved: ResolvedDiagram,
    pub cells: Vec<CellRecord>,
    /// Ordinal of the final cell, the one holding the basepoint.
    pub hemisphere: usize,
}

impl LoopErasureResult {
    pub fn resolution(&self) -> &Resolution {
        &self.resolved.resolution
    }

    /// One line per cell, then the hemisphere line.
    pub fn trace(&self) -> String {
        let mut out = String::new();
        for c in &self.cells {
            out.push_str(&c.to_string());
            out.push('\n');
        }
        out.push_str(&format!("hemisphere {}\n", self.hemisphere));
        out
    }
}

impl fmt::Display for CellRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",");
        let decisions: Vec<String> = self.decisions.iter().map(|(l, p)| format!("{l}:{p}")).collect();
        write!(
            f,
            "cell {} c={} ends={} alpha=[{}] decisions={}",
            self.ordinal,
            self.crossing,
            list(&self.ends),
            list(&self.alpha),
            decisions.join(",")
        )
    }
}

/// Repeatedly erases the shortest loop not containing the basepoint.
///
/// Interior crossings of the loop go over on the loop; the closing crossing
/// goes over on its earlier pass. Ties prefer the loop starting earliest
/// after the basepoint.
pub fn loop_erasure_resolution(shadow: &ShadowDiagram) -> LoopErasureResult {
    let mut remaining: Vec<usize> = shadow.walk().collect();
    let mut resolution = Resolution::new();
    let mut cells = Vec::new();
    while !remaining.is_empty() {
        // Indices into `remaining` of the two passes of each live label.
        let mut best: Option<(usize, usize, usize)> = None;
        for i in 0..remaining.len() {
            let label = &shadow.word[remaining[i]];
            let Some(j) = (i + 1..remaining.len()).find(|&j| &shadow.word[remaining[j]] == label) else {
                continue;
            };
            let gap = j - i - 1;
            if best.is_none_or(|(g, _, _)| gap < g) {
                best = Some((gap, i, j));
            }
        }
        let (_, i, j) = best.expect("every live label occurs twice");
        let crossing = shadow.word[remaining[i]].clone();
        let alpha: Vec<usize> = remaining[i + 1..j].to_vec();
        let mut decisions = Vec::with_capacity(alpha.len() + 1);
        for &p in &alpha {
            decisions.push((shadow.word[p].clone(), p));
        }
        decisions.push((crossing.clone(), remaining[i]));
        for (label, p) in &decisions {
            resolution.set(label, *p);
        }
        let gone: Vec<&String> = decisions.iter().map(|(l, _)| l).collect();
        let ends = [remaining[i], remaining[j]];
        remaining.retain(|&p| !gone.contains(&&shadow.word[p]));
        cells.push(CellRecord {
            ordinal: cells.len() + 1,
            crossing,
            ends,
            alpha,
            beta_len: remaining.len(),
            decisions,
        });
    }
    let hemisphere = cells.len() + 1;
    LoopErasureResult { resolved: ResolvedDiagram { shadow: shadow.clone(), resolution }, cells, hemisphere }
}

/// Least number of local maxima over height functions compatible with the
/// resolution, together with a profile attaining it.
///
/// Every up/down pattern of the steps around the loop is tried; a pattern
/// is feasible when its order constraints plus over-above-under form an
/// acyclic relation. The step leaving the basepoint rises and the step
/// returning to it falls.
pub fn min_extrema(resolved: &ResolvedDiagram, bound: usize) -> Result<(usize, HeightProfile)> {
    let shadow = &resolved.shadow;
    let n = shadow.crossing_count();
    if n > bound {
        return Err(Error::TooLarge { what: "min_extrema brute force", size: n, bound });
    }
    let len = shadow.len();
    if len == 0 {
        return Ok((1, HeightProfile { heights: vec![], basepoint: shadow.basepoint }));
    }
    // Crossing constraints as (higher, lower) walk indices.
    let mut fixed = Vec::with_capacity(n);
    for c in shadow.crossings() {
        let o = resolved
            .resolution
            .over_position(&c.label)
            .ok_or_else(|| Error::InvalidDiagram(format!("crossing {} is unresolved", c.label)))?;
        fixed.push((shadow.walk_index(o), shadow.walk_index(c.other(o))));
    }
    let mut best: Option<(usize, Vec<usize>)> = None;
    // Bit w of `pattern` says whether the step from walk index w to w + 1
    // rises.
    for pattern in 0u32..(1u32 << (len - 1)) {
        let rises = |w: usize| pattern >> w & 1 == 1;
        let mut peaks = 0;
        for w in 0..len {
            let up_before = w == 0 || rises(w - 1);
            let up_after = w + 1 < len && rises(w);
            if up_before && !up_after {
                peaks += 1;
            }
        }
        if best.as_ref().is_some_and(|(b, _)| peaks >= *b) {
            continue;
        }
        let mut edges = fixed.clone();
        for w in 0..len - 1 {
            edges.push(if rises(w) { (w + 1, w) } else { (w, w + 1) });
        }
        if let Some(order) = topological_order(len, &edges) {
            best = Some((peaks, order));
        }
    }
    let (peaks, order) = best.expect("the descending pattern is always feasible");
    let mut heights = vec![0.0; len];
    // `order` lists walk indices from lowest to highest.
    for (rank, &w) in order.iter().enumerate() {
        heights[(shadow.basepoint + w) % len] = (rank + 1) as f64 / (len + 1) as f64;
    }
    Ok((peaks, HeightProfile { heights, basepoint: shadow.basepoint }))
}

/// Nodes ordered so that every `(higher, lower)` pair has `lower` first.
fn topological_order(nodes: usize, edges: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut indegree = vec![0; nodes];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    for &(hi, lo) in edges {
        out[lo].push(hi);
        indegree[hi] += 1;
    }
    let mut ready: Vec<usize> = (0..nodes).filter(|&v| indegree[v] == 0).collect();
    let mut order = Vec::with_capacity(nodes);
    while let Some(v) = ready.pop() {
        order.push(v);
        for &w in &out[v] {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                ready.push(w);
            }
        }
    }
    (order.len() == nodes).then_some(order)
}
