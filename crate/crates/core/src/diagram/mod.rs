//! Immersed loop diagrams (shadows), crossing resolutions and height
//! profiles.
//!
//! A word of length `2n` lists crossing labels in traversal order. The
//! basepoint is a gap index: gap `g` sits immediately before word position
//! `g`, so walking from the basepoint visits positions `g, g + 1, ...`
//! cyclically.
//!
//! Planar data, when present, is one tuple of four edge numbers per
//! crossing, listed counterclockwise. Edges are numbered `1..=2n` along the
//! stored word: position `p` is entered by edge `p + 1` and left by edge
//! `p + 2` (wrapping to 1). A shadow tuple starts with the incoming edge of
//! the crossing's earlier pass; tuples are stored in the order of the
//! crossings' first positions.

pub(crate) mod planar;
mod text;

use std::collections::BTreeMap;
use std::fmt;

pub use text::{parse_gauss_shadow, parse_pd_resolved, parse_pd_shadow, parse_resolved, parse_shadow};

use crate::error::{Error, Result};

/// An immersed loop with undecided crossings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShadowDiagram {
    pub word: Vec<String>,
    pub planar: Option<Vec<[u32; 4]>>,
    pub basepoint: usize,
}

/// A crossing together with its two word positions, `first < second`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub label: String,
    pub first: usize,
    pub second: usize,
}

impl Crossing {
    pub fn other(&self, position: usize) -> usize {
        if position == self.first {
            self.second
        } else {
            self.first
        }
    }
}

/// A broken invariant, reported as data by the validators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    LabelCount { label: String, count: usize },
    BasepointOutOfRange { basepoint: usize, len: usize },
    PlanarCrossingCount { expected: usize, found: usize },
    PlanarEdgeCount { edge: u32, count: usize },
    PlanarDisagrees { crossings: Vec<String> },
    NonPlanar { faces: usize, crossings: usize },
    ResolutionMissing { label: String },
    ResolutionUnknown { label: String },
    ResolutionBadPosition { label: String, position: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LabelCount { label, count } => {
                write!(f, "label {label} occurs {count} times")
            }
            Violation::BasepointOutOfRange { basepoint, len } => {
                write!(f, "basepoint gap {basepoint} outside word of length {len}")
            }
            Violation::PlanarCrossingCount { expected, found } => {
                write!(f, "planar code has {found} crossings, word has {expected}")
            }
            Violation::PlanarEdgeCount { edge, count } => {
                write!(f, "planar edge {edge} occurs {count} times")
            }
            Violation::PlanarDisagrees { crossings } => {
                write!(f, "planar code disagrees with the word at {}", crossings.join(", "))
            }
            Violation::NonPlanar { faces, crossings } => {
                write!(f, "planar code has {faces} faces for {crossings} crossings")
            }
            Violation::ResolutionMissing { label } => write!(f, "crossing {label} is unresolved"),
            Violation::ResolutionUnknown { label } => {
                write!(f, "resolution names unknown crossing {label}")
            }
            Violation::ResolutionBadPosition { label, position } => {
                write!(f, "position {position} is not a pass of crossing {label}")
            }
        }
    }
}

impl ShadowDiagram {
    /// The 0-crossing loop.
    pub fn empty() -> Self {
        ShadowDiagram { word: vec![], planar: Some(vec![]), basepoint: 0 }
    }

    /// Builds and validates a diagram.
    pub fn new(word: Vec<String>, planar: Option<Vec<[u32; 4]>>, basepoint: usize) -> Result<Self> {
        let planar = if word.is_empty() { Some(vec![]) } else { planar };
        let d = ShadowDiagram { word, planar, basepoint };
        d.check()?;
        Ok(d)
    }

    pub fn from_word<S: AsRef<str>>(word: &[S]) -> Result<Self> {
        Self::new(word.iter().map(|s| s.as_ref().to_string()).collect(), None, 0)
    }

    pub(crate) fn check(&self) -> Result<()> {
        match self.validate().into_iter().next() {
            None => Ok(()),
            Some(Violation::LabelCount { label, count }) => Err(Error::MalformedWord { label, count }),
            Some(Violation::NonPlanar { faces, crossings }) => Err(Error::NonPlanar { faces, crossings }),
            Some(other) => Err(Error::InvalidDiagram(other.to_string())),
        }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn crossing_count(&self) -> usize {
        self.word.len() / 2
    }

    pub fn has_planar(&self) -> bool {
        self.planar.is_some()
    }

    /// Crossings ordered by their first stored position. Labels that do not
    /// occur exactly twice are skipped.
    pub fn crossings(&self) -> Vec<Crossing> {
        let mut positions: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
        for (p, label) in self.word.iter().enumerate() {
            positions.entry(label).or_default().push(p);
        }
        let mut out: Vec<Crossing> = positions
            .into_iter()
            .filter(|(_, ps)| ps.len() == 2)
            .map(|(label, ps)| Crossing { label: label.to_string(), first: ps[0], second: ps[1] })
            .collect();
        out.sort_by_key(|c| c.first);
        out
    }

    /// Distinct labels in order of first stored occurrence.
    pub fn labels(&self) -> Vec<String> {
        let mut seen = Vec::<&str>::new();
        for l in &self.word {
            if !seen.contains(&l.as_str()) {
                seen.push(l);
            }
        }
        seen.into_iter().map(str::to_string).collect()
    }

    /// Stored positions in walk order from the basepoint.
    pub fn walk(&self) -> impl Iterator<Item = usize> + '_ {
        let len = self.len();
        (0..len).map(move |w| (self.basepoint + w) % len)
    }

    /// Walk index (distance from the basepoint) of a stored position.
    pub fn walk_index(&self, position: usize) -> usize {
        let len = self.len();
        (position + len - self.basepoint % len.max(1)) % len
    }

    /// Per crossing (in `crossings()` order), the sign the crossing takes
    /// when its first stored pass goes over. `None` without planar data.
    pub fn first_over_signs(&self) -> Option<Vec<i8>> {
        let planar = self.planar.as_ref()?;
        let len = self.len();
        Some(
            self.crossings()
                .iter()
                .zip(planar)
                .map(|(c, t)| {
                    if t[1] == planar::in_edge(c.second, len) {
                        1
                    } else {
                        -1
                    }
                })
                .collect(),
        )
    }

    /// Shadow with planar data given by the sign each crossing (in
    /// `crossings()` order) takes when its first stored pass goes over.
    pub fn from_first_over_signs(word: Vec<String>, basepoint: usize, signs: &[i8]) -> Result<Self> {
        let mut d = ShadowDiagram { word, planar: None, basepoint };
        d.check()?;
        if signs.len() != d.crossing_count() {
            return Err(Error::InvalidDiagram(format!(
                "{} signs for {} crossings",
                signs.len(),
                d.crossing_count()
            )));
        }
        d.planar = Some(d.tuples_from_signs(signs));
        d.check()?;
        Ok(d)
    }

    /// Rebuilds planar tuples from per-crossing first-over signs.
    pub(crate) fn tuples_from_signs(&self, signs: &[i8]) -> Vec<[u32; 4]> {
        let len = self.len();
        self.crossings()
            .iter()
            .zip(signs)
            .map(|(c, &s)| planar::shadow_tuple(c.first, c.second, len, s))
            .collect()
    }

    /// The same diagram with the stored word rotated left by `k`; the
    /// basepoint stays on the same gap of the loop.
    pub fn rotated(&self, k: usize) -> Self {
        let len = self.len();
        if len == 0 {
            return self.clone();
        }
        let k = k % len;
        let signs_by_label: Option<BTreeMap<String, (usize, i8)>> = self.first_over_signs().map(|s| {
            self.crossings()
                .into_iter()
                .zip(s)
                .map(|(c, s)| (c.label, (c.first, s)))
                .collect()
        });
        let word: Vec<String> = (0..len).map(|i| self.word[(i + k) % len].clone()).collect();
        let mut out = ShadowDiagram { word, planar: None, basepoint: (self.basepoint + len - k) % len };
        if let Some(map) = signs_by_label {
            let signs: Vec<i8> = out
                .crossings()
                .iter()
                .map(|c| {
                    let (old_first, s) = map[&c.label];
                    // Still the same physical pass first? Then the sign holds.
                    if (c.first + k) % len == old_first {
                        s
                    } else {
                        -s
                    }
                })
                .collect();
            out.planar = Some(out.tuples_from_signs(&signs));
        }
        out
    }

    /// Same diagram with labels replaced by `1..=n` in walk order from the
    /// basepoint.
    pub fn renumbered(&self) -> Self {
        let mut names: BTreeMap<&str, String> = BTreeMap::new();
        for p in self.walk() {
            let next = (names.len() + 1).to_string();
            names.entry(&self.word[p]).or_insert(next);
        }
        ShadowDiagram {
            word: self.word.iter().map(|l| names[l.as_str()].clone()).collect(),
            planar: self.planar.clone(),
            basepoint: self.basepoint,
        }
    }

    /// Type invariants as a list of violations; empty iff valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut counts: Vec<(&str, usize)> = Vec::new();
        for l in &self.word {
            match counts.iter_mut().find(|(k, _)| *k == l) {
                Some((_, c)) => *c += 1,
                None => counts.push((l, 1)),
            }
        }
        for (label, count) in &counts {
            if *count != 2 {
                out.push(Violation::LabelCount { label: label.to_string(), count: *count });
            }
        }
        let len = self.len();
        if (len == 0 && self.basepoint != 0) || (len > 0 && self.basepoint >= len) {
            out.push(Violation::BasepointOutOfRange { basepoint: self.basepoint, len });
        }
        if !out.is_empty() {
            return out;
        }
        if let Some(planar) = &self.planar {
            out.extend(self.validate_planar(planar));
        }
        out
    }

    fn validate_planar(&self, planar: &[[u32; 4]]) -> Vec<Violation> {
        let len = self.len();
        let n = self.crossing_count();
        if planar.len() != n {
            return vec![Violation::PlanarCrossingCount { expected: n, found: planar.len() }];
        }
        let mut out = Vec::new();
        let mut counts = vec![0usize; len + 1];
        for &e in planar.iter().flatten() {
            if e == 0 || e as usize > len {
                out.push(Violation::PlanarEdgeCount { edge: e, count: 1 });
            } else {
                counts[e as usize] += 1;
            }
        }
        for (e, &c) in counts.iter().enumerate().skip(1) {
            if c != 2 {
                out.push(Violation::PlanarEdgeCount { edge: e as u32, count: c });
            }
        }
        if !out.is_empty() {
            return out;
        }
        let bad: Vec<String> = self
            .crossings()
            .iter()
            .zip(planar)
            .filter(|(c, t)| {
                let (a, cc) = (planar::in_edge(c.first, len), planar::out_edge(c.first, len));
                let (b_in, b_out) = (planar::in_edge(c.second, len), planar::out_edge(c.second, len));
                let ok = t[0] == a
                    && t[2] == cc
                    && ((t[1] == b_in && t[3] == b_out) || (t[1] == b_out && t[3] == b_in));
                !ok
            })
            .map(|(c, _)| c.label.clone())
            .collect();
        if !bad.is_empty() {
            return vec![Violation::PlanarDisagrees { crossings: bad }];
        }
        let tuples: Vec<[i64; 4]> =
            planar.iter().map(|t| [t[0] as i64, t[1] as i64, t[2] as i64, t[3] as i64]).collect();
        if let Ok(graph) = planar::SlotGraph::from_tuples(&tuples) {
            let faces = graph.face_count();
            if faces != n + 2 {
                out.push(Violation::NonPlanar { faces, crossings: n });
            }
        }
        out
    }
}

/// Which pass of each crossing goes over, as a stored word position.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Resolution {
    pub over: BTreeMap<String, usize>,
}

impl Resolution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, label: &str, over_position: usize) {
        self.over.insert(label.to_string(), over_position);
    }

    pub fn over_position(&self, label: &str) -> Option<usize> {
        self.over.get(label).copied()
    }

    pub fn len(&self) -> usize {
        self.over.len()
    }

    pub fn is_empty(&self) -> bool {
        self.over.is_empty()
    }
}

/// A shadow with an over/under choice at every crossing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedDiagram {
    pub shadow: ShadowDiagram,
    pub resolution: Resolution,
}

impl ResolvedDiagram {
    pub fn new(shadow: ShadowDiagram, resolution: Resolution) -> Result<Self> {
        let d = ResolvedDiagram { shadow, resolution };
        if let Some(v) = d.validate().into_iter().next() {
            return Err(match v {
                Violation::LabelCount { label, count } => Error::MalformedWord { label, count },
                Violation::NonPlanar { faces, crossings } => Error::NonPlanar { faces, crossings },
                other => Error::InvalidDiagram(other.to_string()),
            });
        }
        Ok(d)
    }

    /// Resolves each crossing with `over(crossing)` choosing the over pass.
    pub fn from_choice(shadow: ShadowDiagram, mut over: impl FnMut(&Crossing) -> usize) -> Self {
        let mut resolution = Resolution::new();
        for c in shadow.crossings() {
            let p = over(&c);
            resolution.set(&c.label, p);
        }
        ResolvedDiagram { shadow, resolution }
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = self.shadow.validate();
        let crossings = self.shadow.crossings();
        for c in &crossings {
            match self.resolution.over_position(&c.label) {
                None => out.push(Violation::ResolutionMissing { label: c.label.clone() }),
                Some(p) if p != c.first && p != c.second => {
                    out.push(Violation::ResolutionBadPosition { label: c.label.clone(), position: p })
                }
                Some(_) => {}
            }
        }
        for label in self.resolution.over.keys() {
            if !crossings.iter().any(|c| &c.label == label) {
                out.push(Violation::ResolutionUnknown { label: label.clone() });
            }
        }
        out
    }

    /// Over flag for every stored position.
    pub fn over_flags(&self) -> Vec<bool> {
        let mut flags = vec![false; self.shadow.len()];
        for c in self.shadow.crossings() {
            if let Some(p) = self.resolution.over_position(&c.label) {
                flags[p] = true;
            }
        }
        flags
    }

    /// Crossing signs (in `crossings()` order), available with planar data.
    pub fn signs(&self) -> Option<Vec<i8>> {
        let first = self.shadow.first_over_signs()?;
        Some(
            self.shadow
                .crossings()
                .iter()
                .zip(first)
                .map(|(c, s)| if self.resolution.over_position(&c.label) == Some(c.first) { s } else { -s })
                .collect(),
        )
    }

    pub fn rotated(&self, k: usize) -> Self {
        let len = self.shadow.len();
        let shadow = self.shadow.rotated(k);
        let mut resolution = Resolution::new();
        for (label, &p) in &self.resolution.over {
            resolution.set(label, (p + len - k % len.max(1)) % len.max(1));
        }
        ResolvedDiagram { shadow, resolution }
    }
}

/// Heights of the loop at each stored word position; the basepoint sits at
/// height 0 below everything. Only the relative order matters.
#[derive(Debug, Clone, PartialEq)]
pub struct HeightProfile {
    pub heights: Vec<f64>,
    pub basepoint: usize,
}

impl HeightProfile {
    /// Values around the loop starting with the basepoint's 0.
    pub fn walk_values(&self) -> Vec<f64> {
        let len = self.heights.len();
        let mut v = Vec::with_capacity(len + 1);
        v.push(0.0);
        v.extend((0..len).map(|w| self.heights[(self.basepoint + w) % len]));
        v
    }

    pub fn maxima(&self) -> usize {
        cyclic_extrema(&self.walk_values()).0
    }

    pub fn minima(&self) -> usize {
        cyclic_extrema(&self.walk_values()).1
    }

    /// True when heights are distinct values in (0, 1) with the over pass
    /// above the under pass at every crossing.
    pub fn is_compatible(&self, resolved: &ResolvedDiagram) -> bool {
        if self.heights.len() != resolved.shadow.len() || self.basepoint != resolved.shadow.basepoint {
            return false;
        }
        if self.heights.iter().any(|&h| !(h > 0.0 && h < 1.0)) {
            return false;
        }
        let mut sorted = self.heights.clone();
        sorted.sort_by(f64::total_cmp);
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        resolved.shadow.crossings().iter().all(|c| match resolved.resolution.over_position(&c.label) {
            Some(o) => self.heights[o] > self.heights[c.other(o)],
            None => false,
        })
    }
}

/// Counts strict local maxima and minima of a cyclic sequence of distinct
/// values. A sequence of one value counts as one of each.
pub fn cyclic_extrema(values: &[f64]) -> (usize, usize) {
    let n = values.len();
    if n < 2 {
        return (1, 1);
    }
    let mut maxima = 0;
    let mut minima = 0;
    for i in 0..n {
        let prev = values[(i + n - 1) % n];
        let next = values[(i + 1) % n];
        if values[i] > prev && values[i] > next {
            maxima += 1;
        }
        if values[i] < prev && values[i] < next {
            minima += 1;
        }
    }
    (maxima, minima)
}

impl fmt::Display for ShadowDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::serialize_shadow(self))
    }
}

impl fmt::Display for ResolvedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::serialize_resolved(self))
    }
}
