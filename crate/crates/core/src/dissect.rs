//! Dissection of disks with double arcs.
//!
//! A singular disk is described in its domain: marked points on the
//! boundary circle, non-crossing chords joining them, and chords partnered
//! in pairs (the two preimages of one double arc). Matched ends of a pair
//! are one crossing of the boundary loop. Dissection splits along an
//! outermost chord and its partner until every piece is embedded.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::{Resolution, ResolvedDiagram, ShadowDiagram};
use crate::error::{Error, Result};

/// Marked points are numbered `0..points` around the circle; gap `g` sits
/// just before point `g`. Chord `i` has ordered ends `chords[i]`; a pair
/// `[a, b]` matches `chords[a][e]` with `chords[b][e]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordSystem {
    pub points: usize,
    pub basepoint: usize,
    pub chords: Vec<[usize; 2]>,
    pub pairs: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChordViolation {
    PointCount { points: usize, chords: usize },
    PointOutOfRange { chord: usize, point: usize },
    PointReused { point: usize },
    Crossing { chords: [usize; 2] },
    ChordUnpaired { chord: usize },
    ChordPairedTwice { chord: usize },
    SelfPartner { chord: usize },
    BasepointOutOfRange { basepoint: usize },
}

impl fmt::Display for ChordViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChordViolation::PointCount { points, chords } => {
                write!(f, "{points} marked points do not match {chords} chords")
            }
            ChordViolation::PointOutOfRange { chord, point } => write!(f, "chord {chord} uses missing point {point}"),
            ChordViolation::PointReused { point } => write!(f, "point {point} is not on exactly one chord"),
            ChordViolation::Crossing { chords } => write!(f, "chords {} and {} cross", chords[0], chords[1]),
            ChordViolation::ChordUnpaired { chord } => write!(f, "chord {chord} has no partner"),
            ChordViolation::ChordPairedTwice { chord } => write!(f, "chord {chord} is in more than one pair"),
            ChordViolation::SelfPartner { chord } => write!(f, "chord {chord} is partnered with itself"),
            ChordViolation::BasepointOutOfRange { basepoint } => write!(f, "basepoint gap {basepoint} out of range"),
        }
    }
}

impl ChordSystem {
    pub fn empty() -> Self {
        ChordSystem { points: 0, basepoint: 0, chords: vec![], pairs: vec![] }
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let s: ChordSystem = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        s.checked()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serialises")
    }

    pub fn checked(self) -> Result<Self> {
        match self.validate().first() {
            None => Ok(self),
            Some(v) => Err(Error::InvalidChordSystem(v.to_string())),
        }
    }

    pub fn validate(&self) -> Vec<ChordViolation> {
        let mut out = Vec::new();
        if self.points != 2 * self.chords.len() {
            out.push(ChordViolation::PointCount { points: self.points, chords: self.chords.len() });
        }
        let mut uses = vec![0usize; self.points];
        for (i, c) in self.chords.iter().enumerate() {
            for &p in c {
                match uses.get_mut(p) {
                    Some(u) => *u += 1,
                    None => out.push(ChordViolation::PointOutOfRange { chord: i, point: p }),
                }
            }
        }
        for (p, &u) in uses.iter().enumerate() {
            if u != 1 {
                out.push(ChordViolation::PointReused { point: p });
            }
        }
        let span = |c: &[usize; 2]| (c[0].min(c[1]), c[0].max(c[1]));
        for i in 0..self.chords.len() {
            for j in i + 1..self.chords.len() {
                let (a, b) = span(&self.chords[i]);
                let (c, d) = span(&self.chords[j]);
                let inside = |x: usize| a < x && x < b;
                if inside(c) != inside(d) && ![a, b].contains(&c) && ![a, b].contains(&d) {
                    out.push(ChordViolation::Crossing { chords: [i, j] });
                }
            }
        }
        let mut paired = vec![0usize; self.chords.len()];
        for pair in &self.pairs {
            if pair[0] == pair[1] {
                out.push(ChordViolation::SelfPartner { chord: pair[0] });
            }
            for &c in pair {
                if let Some(k) = paired.get_mut(c) {
                    *k += 1;
                }
            }
        }
        for (c, &k) in paired.iter().enumerate() {
            match k {
                0 => out.push(ChordViolation::ChordUnpaired { chord: c }),
                1 => {}
                _ => out.push(ChordViolation::ChordPairedTwice { chord: c }),
            }
        }
        if self.basepoint >= self.points.max(1) {
            out.push(ChordViolation::BasepointOutOfRange { basepoint: self.basepoint });
        }
        out
    }

    /// Label of the crossing made by end `end` of pair `pair`.
    pub fn crossing_label(pair: usize, end: usize) -> String {
        (2 * pair + end + 1).to_string()
    }

    /// Crossings of the boundary loop: label and its two marked points.
    pub fn crossings(&self) -> Vec<(String, [usize; 2])> {
        let mut out = Vec::with_capacity(2 * self.pairs.len());
        for (k, &[a, b]) in self.pairs.iter().enumerate() {
            for e in 0..2 {
                out.push((Self::crossing_label(k, e), [self.chords[a][e], self.chords[b][e]]));
            }
        }
        out
    }

    /// The boundary loop as a shadow: its word lists the crossing at each
    /// marked point.
    pub fn boundary_shadow(&self) -> ShadowDiagram {
        let mut word = vec![String::new(); self.points];
        for (label, [p, q]) in self.crossings() {
            word[p] = label.clone();
            word[q] = label;
        }
        ShadowDiagram { word, planar: None, basepoint: if self.points == 0 { 0 } else { self.basepoint } }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    /// The cut-off sides of the chord and its partner are disjoint.
    Disjoint,
    /// The chord lies inside its partner's side.
    Nested,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::Disjoint => "case-1",
            Case::Nested => "case-2",
        })
    }
}

/// One splitting step. Points are given as marked points of the root
/// system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    /// Outermost chord, ends in end order.
    pub beta: [usize; 2],
    /// Its partner, ends in matching order.
    pub beta_prime: [usize; 2],
    /// Marked points on the side of the partner away from the basepoint.
    pub d1_prime: Vec<usize>,
    pub case: Case,
    /// Crossing label and the marked point chosen over.
    pub resolved: Vec<(String, usize)>,
    /// Pairs (root indices) lost because their chords fell on both sides.
    pub split_pairs: Vec<usize>,
}

/// A good map in the tree. `origin[i]` is the root marked point behind
/// local point `i`, and `pair_origin[k]` the root pair behind local pair
/// `k`. Local points start at the node's basepoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DissectionNode {
    pub subscript: String,
    pub system: ChordSystem,
    pub origin: Vec<usize>,
    pub pair_origin: Vec<usize>,
    pub step: Option<Step>,
    pub children: Option<[usize; 2]>,
}

impl DissectionNode {
    pub fn is_leaf(&self) -> bool {
        self.children.is_none()
    }

    /// True for the root and every node reached through `1` subscripts:
    /// these keep the original basepoint.
    pub fn carries_basepoint(&self) -> bool {
        !self.subscript.contains('0')
    }
}

/// Nodes in depth-first order, children `0` before `1`; the root is node 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DissectionTree {
    pub root: ChordSystem,
    pub nodes: Vec<DissectionNode>,
}

/// One step of the collapsing isotopy, supported near one leaf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotopyStep {
    pub index: usize,
    pub subscript: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreatSequence {
    /// Node indices of the leaves, in dyadic order.
    pub leaves: Vec<usize>,
    pub resolution: Resolution,
    pub trace: Vec<IsotopyStep>,
}

impl DissectionTree {
    pub fn leaves(&self) -> impl Iterator<Item = &DissectionNode> {
        self.nodes.iter().filter(|n| n.is_leaf())
    }

    pub fn depth(&self) -> usize {
        self.nodes.iter().map(|n| n.subscript.len()).max().unwrap_or(0)
    }

    pub fn steps(&self) -> impl Iterator<Item = &Step> {
        self.nodes.iter().filter_map(|n| n.step.as_ref())
    }
}

/// Rotates a system so its basepoint sits at gap 0.
fn normalized(system: &ChordSystem) -> (ChordSystem, Vec<usize>) {
    let n = system.points;
    if n == 0 {
        return (ChordSystem::empty(), vec![]);
    }
    let shift = |p: usize| (p + n - system.basepoint) % n;
    let chords = system.chords.iter().map(|c| [shift(c[0]), shift(c[1])]).collect();
    let origin = (0..n).map(|i| (i + system.basepoint) % n).collect();
    (ChordSystem { points: n, basepoint: 0, chords, pairs: system.pairs.clone() }, origin)
}

/// Restriction of a normalised system to the given points (listed in the
/// child's boundary order) and pairs. The child's basepoint is gap 0.
fn restrict(system: &ChordSystem, points: &[usize], pairs: &[usize]) -> ChordSystem {
    let mut local = BTreeMap::new();
    for (i, &p) in points.iter().enumerate() {
        local.insert(p, i);
    }
    let mut chords = Vec::new();
    let mut new_pairs = Vec::new();
    for &k in pairs {
        let mut ids = [0; 2];
        for (slot, &c) in system.pairs[k].iter().enumerate() {
            let [a, b] = system.chords[c];
            ids[slot] = chords.len();
            chords.push([local[&a], local[&b]]);
        }
        new_pairs.push(ids);
    }
    let used: usize = 4 * pairs.len();
    debug_assert_eq!(used, points.len());
    ChordSystem { points: points.len(), basepoint: 0, chords, pairs: new_pairs }
}

fn split(node: &DissectionNode) -> (Step, [DissectionNode; 2]) {
    let s = &node.system;
    let n = s.points;
    let chord_at: BTreeMap<usize, usize> =
        s.chords.iter().enumerate().flat_map(|(i, c)| [(c[0], i), (c[1], i)]).collect();
    let pair_of: BTreeMap<usize, (usize, usize)> = s
        .pairs
        .iter()
        .enumerate()
        .flat_map(|(k, p)| [(p[0], (k, 1)), (p[1], (k, 0))])
        .collect();
    // Outermost chord cutting off a point-free side away from the basepoint:
    // adjacent ends a, a + 1. Every such side is empty, so the earliest wins.
    let a = (0..n - 1)
        .find(|&a| chord_at[&a] == chord_at[&(a + 1)])
        .expect("a non-crossing matching with two or more chords has an ear away from any gap");
    let beta = chord_at[&a];
    let (k, slot) = pair_of[&beta];
    let beta_prime = s.pairs[k][slot];
    let [c, d] = {
        let [x, y] = s.chords[beta_prime];
        [x.min(y), x.max(y)]
    };
    let inside = |p: usize| c < p && p < d;
    let case = if inside(a) { Case::Nested } else { Case::Disjoint };
    let root = |p: usize| node.origin[p];

    let mut resolved = Vec::new();
    let root_pair = node.pair_origin[k];
    for e in 0..2 {
        resolved.push((ChordSystem::crossing_label(root_pair, e), root(s.chords[beta][e])));
    }
    let mut inner_pairs = Vec::new();
    let mut outer_pairs = Vec::new();
    let mut split_pairs = Vec::new();
    for (j, &[x, y]) in s.pairs.iter().enumerate() {
        if j == k {
            continue;
        }
        let (ix, iy) = (inside(s.chords[x][0]), inside(s.chords[y][0]));
        match (ix, iy) {
            (true, true) => inner_pairs.push(j),
            (false, false) => outer_pairs.push(j),
            _ => {
                // The end on the partner's inner side lies over.
                let inner = if ix { x } else { y };
                for e in 0..2 {
                    resolved.push((ChordSystem::crossing_label(node.pair_origin[j], e), root(s.chords[inner][e])));
                }
                split_pairs.push(node.pair_origin[j]);
            }
        }
    }
    let used = |pairs: &[usize], p: usize| pairs.iter().any(|&j| s.pairs[j].iter().any(|&ch| s.chords[ch].contains(&p)));
    let inner_points: Vec<usize> = (c + 1..d).filter(|&p| used(&inner_pairs, p)).collect();
    let outer_points: Vec<usize> = (0..n).filter(|&p| !inside(p) && used(&outer_pairs, p)).collect();
    let make = |bit: char, points: &[usize], pairs: &[usize]| DissectionNode {
        subscript: format!("{}{}", node.subscript, bit),
        system: restrict(s, points, pairs),
        origin: points.iter().map(|&p| root(p)).collect(),
        pair_origin: pairs.iter().map(|&j| node.pair_origin[j]).collect(),
        step: None,
        children: None,
    };
    let f0 = make('0', &inner_points, &inner_pairs);
    let f1 = make('1', &outer_points, &outer_pairs);
    let step = Step {
        beta: [root(s.chords[beta][0]), root(s.chords[beta][1])],
        beta_prime: [root(s.chords[beta_prime][0]), root(s.chords[beta_prime][1])],
        d1_prime: (c + 1..d).map(root).collect(),
        case,
        resolved,
        split_pairs,
    };
    (step, [f0, f1])
}

/// Splits the system down to embedded pieces.
pub fn dissect(system: &ChordSystem) -> Result<(DissectionTree, GreatSequence)> {
    let system = system.clone().checked()?;
    let (local, origin) = normalized(&system);
    let root = DissectionNode {
        subscript: String::new(),
        pair_origin: (0..local.pairs.len()).collect(),
        system: local,
        origin,
        step: None,
        children: None,
    };
    let mut nodes = Vec::new();
    build(root, &mut nodes);
    let tree = DissectionTree { root: system, nodes };
    let leaves: Vec<usize> = (0..tree.nodes.len()).filter(|&i| tree.nodes[i].is_leaf()).collect();
    let resolution = induced_resolution(&tree)?;
    let trace = leaves
        .iter()
        .enumerate()
        .map(|(i, &l)| IsotopyStep { index: i + 1, subscript: tree.nodes[l].subscript.clone() })
        .collect();
    Ok((tree, GreatSequence { leaves, resolution, trace }))
}

fn build(mut node: DissectionNode, nodes: &mut Vec<DissectionNode>) {
    let id = nodes.len();
    if node.system.pairs.is_empty() {
        nodes.push(node);
        return;
    }
    let (step, [f0, f1]) = split(&node);
    node.step = Some(step);
    nodes.push(node);
    let left = nodes.len();
    build(f0, nodes);
    let right = nodes.len();
    build(f1, nodes);
    nodes[id].children = Some([left, right]);
}

pub fn case_classify(node: &DissectionNode) -> Result<Case> {
    node.step.as_ref().map(|s| s.case).ok_or(Error::NotAStep)
}

/// Collects every step's crossing decisions; each crossing of the root's
/// boundary loop must be decided exactly once.
pub fn induced_resolution(tree: &DissectionTree) -> Result<Resolution> {
    let mut resolution = Resolution::new();
    for step in tree.steps() {
        for (label, p) in &step.resolved {
            if resolution.over_position(label).is_some() {
                return Err(Error::IncompleteTree(format!("crossing {label} decided twice")));
            }
            resolution.set(label, *p);
        }
    }
    for node in &tree.nodes {
        if node.is_leaf() && !node.system.pairs.is_empty() {
            return Err(Error::IncompleteTree(format!("leaf {:?} still has chords", node.subscript)));
        }
    }
    for (label, _) in tree.root.crossings() {
        if resolution.over_position(&label).is_none() {
            return Err(Error::IncompleteTree(format!("crossing {label} undecided")));
        }
    }
    Ok(resolution)
}

impl GreatSequence {
    /// The boundary loop with the induced crossing choices.
    pub fn resolved_boundary(&self, tree: &DissectionTree) -> ResolvedDiagram {
        ResolvedDiagram { shadow: tree.root.boundary_shadow(), resolution: self.resolution.clone() }
    }

    /// Text report: leaves, resolution table and isotopy trace.
    pub fn report(&self, tree: &DissectionTree) -> String {
        let mut out = String::new();
        for &l in &self.leaves {
            let node = &tree.nodes[l];
            let name = if node.subscript.is_empty() { "-" } else { &node.subscript };
            out.push_str(&format!("leaf {name} points {}\n", node.system.points));
        }
        let mut table: Vec<(usize, &String, &usize)> =
            self.resolution.over.iter().map(|(l, p)| (l.parse().unwrap_or(usize::MAX), l, p)).collect();
        table.sort();
        for (_, label, p) in table {
            out.push_str(&format!("over {label} {p}\n"));
        }
        for step in &self.trace {
            let name = if step.subscript.is_empty() { "-" } else { &step.subscript };
            out.push_str(&format!("I{} {name}\n", step.index));
        }
        out
    }
}
