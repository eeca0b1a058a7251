//! Four-valent planar graphs given as crossings with four counterclockwise
//! slots, and the conversions between them and per-crossing tuple codes.
//!
//! Slot `4 * c + s` is slot `s` of crossing `c`. Slots `s` and `s + 2` are
//! opposite, so a strand entering at `s` leaves at `s + 2`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Incoming edge (1-based) of word position `p` in a word of length `len`.
pub(crate) fn in_edge(p: usize, len: usize) -> u32 {
    (p % len + 1) as u32
}

/// Outgoing edge (1-based) of word position `p`.
pub(crate) fn out_edge(p: usize, len: usize) -> u32 {
    ((p + 1) % len + 1) as u32
}

/// Shadow tuple for a crossing passed at word positions `first < second`.
///
/// `first_over_sign` is the sign the crossing acquires when the first pass
/// is made the over-strand.
pub(crate) fn shadow_tuple(first: usize, second: usize, len: usize, first_over_sign: i8) -> [u32; 4] {
    let (a, c) = (in_edge(first, len), out_edge(first, len));
    let (b_in, b_out) = (in_edge(second, len), out_edge(second, len));
    if first_over_sign > 0 {
        [a, b_in, c, b_out]
    } else {
        [a, b_out, c, b_in]
    }
}

/// Resolved tuple: first slot is the incoming under-strand edge.
pub(crate) fn resolved_tuple(under: usize, over: usize, len: usize, sign: i8) -> [u32; 4] {
    let (a, c) = (in_edge(under, len), out_edge(under, len));
    let (o_in, o_out) = (in_edge(over, len), out_edge(over, len));
    if sign > 0 {
        [a, o_out, c, o_in]
    } else {
        [a, o_in, c, o_out]
    }
}

#[derive(Debug, Clone)]
pub(crate) struct SlotGraph {
    partner: Vec<usize>,
}

/// One pass of the traversal through a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Visit {
    pub crossing: usize,
    pub entry: usize,
}

/// Word and chirality data recovered from a traversal.
#[derive(Debug, Clone)]
pub(crate) struct Traversal {
    /// Crossing index (renumbered by first visit) at each word position.
    pub word: Vec<usize>,
    /// Per renumbered crossing: the entry slot of each of its two passes.
    pub entries: Vec<[usize; 2]>,
}

impl Traversal {
    /// Sign a crossing gets when its first pass is the over-strand.
    pub fn first_over_sign(&self, crossing: usize) -> i8 {
        let [a, b] = self.entries[crossing];
        if b == (a + 1) % 4 {
            1
        } else {
            -1
        }
    }

    /// Sign of a crossing whose under-strand enters at slots 0/2.
    pub fn sign_with_under_at_even_slots(&self, crossing: usize) -> (usize, i8) {
        let [a, b] = self.entries[crossing];
        let (under_pass, su, so) = if a % 2 == 0 { (0, a, b) } else { (1, b, a) };
        let sign = if so == (su + 3) % 4 { 1 } else { -1 };
        (under_pass, sign)
    }
}

impl SlotGraph {
    pub fn crossing_count(&self) -> usize {
        self.partner.len() / 4
    }

    /// Builds the graph from tuples of edge identifiers, joining the two
    /// slots that carry the same identifier.
    pub fn from_tuples(tuples: &[[i64; 4]]) -> Result<Self> {
        let mut seen: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (c, t) in tuples.iter().enumerate() {
            for (s, &e) in t.iter().enumerate() {
                seen.entry(e).or_default().push(4 * c + s);
            }
        }
        let mut partner = vec![usize::MAX; 4 * tuples.len()];
        for (&edge, slots) in &seen {
            if slots.len() != 2 {
                return Err(Error::InconsistentEdges { edge, count: slots.len() });
            }
            partner[slots[0]] = slots[1];
            partner[slots[1]] = slots[0];
        }
        Ok(SlotGraph { partner })
    }

    /// Follows the strand from `start` (an entry slot) until it closes up.
    pub fn traverse(&self, start: usize) -> Result<Traversal> {
        let total = self.partner.len();
        let mut visits = Vec::new();
        let mut entry = start;
        loop {
            visits.push(Visit { crossing: entry / 4, entry: entry % 4 });
            let exit = 4 * (entry / 4) + (entry % 4 + 2) % 4;
            entry = self.partner[exit];
            if entry == start || visits.len() > total {
                break;
            }
        }
        if 2 * visits.len() != total || entry != start {
            return Err(Error::DisconnectedTraversal {
                visited: 2 * visits.len().min(total),
                total,
            });
        }
        let mut renumber = vec![usize::MAX; total / 4];
        let mut original = Vec::new();
        let mut entries: Vec<Vec<usize>> = Vec::new();
        let mut word = Vec::with_capacity(visits.len());
        for v in &visits {
            if renumber[v.crossing] == usize::MAX {
                renumber[v.crossing] = original.len();
                original.push(v.crossing);
                entries.push(Vec::new());
            }
            let id = renumber[v.crossing];
            entries[id].push(v.entry);
            word.push(id);
        }
        let mut fixed = Vec::with_capacity(entries.len());
        for (id, e) in entries.iter().enumerate() {
            // Both passes of one crossing must use the two different strands.
            if e.len() != 2 || e[0] % 2 == e[1] % 2 {
                return Err(Error::InvalidDiagram(format!(
                    "crossing {} is not passed once along each strand",
                    original[id] + 1
                )));
            }
            fixed.push([e[0], e[1]]);
        }
        Ok(Traversal { word, entries: fixed })
    }

    /// Number of faces of the cellular embedding given by the slot order.
    pub fn face_count(&self) -> usize {
        if self.partner.is_empty() {
            return 2;
        }
        let n = self.partner.len();
        let mut seen = vec![false; n];
        let mut faces = 0;
        for d in 0..n {
            if seen[d] {
                continue;
            }
            faces += 1;
            let mut x = d;
            while !seen[x] {
                seen[x] = true;
                let t = self.partner[x];
                x = 4 * (t / 4) + (t % 4 + 1) % 4;
            }
        }
        faces
    }
}

/// Parses tuples, reconstructs the traversal and checks genus zero.
///
/// The traversal starts on the smallest edge identifier, entering the
/// crossing where that edge occupies the first slot when there is one.
pub(crate) fn traverse_tuples(tuples: &[[i64; 4]]) -> Result<(SlotGraph, Traversal)> {
    let graph = SlotGraph::from_tuples(tuples)?;
    let min_edge = tuples.iter().flat_map(|t| t.iter().copied()).min();
    let Some(min_edge) = min_edge else {
        return Ok((
            graph,
            Traversal { word: vec![], entries: vec![] },
        ));
    };
    let occurrences: Vec<usize> = tuples
        .iter()
        .enumerate()
        .flat_map(|(c, t)| (0..4).filter(move |&s| t[s] == min_edge).map(move |s| 4 * c + s))
        .collect();
    let start = occurrences
        .iter()
        .copied()
        .find(|slot| slot % 4 == 0)
        .unwrap_or(occurrences[0]);
    let traversal = graph.traverse(start)?;
    let faces = graph.face_count();
    let n = graph.crossing_count();
    if faces != n + 2 {
        return Err(Error::NonPlanar { faces, crossings: n });
    }
    Ok((graph, traversal))
}
