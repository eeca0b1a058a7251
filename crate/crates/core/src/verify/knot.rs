//! Working representation for move search: a signed Gauss code.
//!
//! Passes are listed along the knot; each crossing has one over and one
//! under pass and a sign. Signs and over flags fix the counterclockwise
//! order of the four half-edges at every crossing, so the code carries the
//! full planar embedding on the sphere.
//!
//! Half-edges ("darts") are numbered `2p` for the incoming and `2p + 1` for
//! the outgoing half-edge at position `p`. Edge `p` runs from position `p`
//! to position `p + 1`.

use crate::diagram::{Resolution, ResolvedDiagram, ShadowDiagram};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pass {
    pub crossing: u16,
    pub over: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlanarKnot {
    pub(crate) passes: Vec<Pass>,
    pub(crate) signs: Vec<i8>,
}

impl PlanarKnot {
    pub fn unknot() -> Self {
        PlanarKnot { passes: vec![], signs: vec![] }
    }

    pub fn new(passes: Vec<Pass>, signs: Vec<i8>) -> Self {
        PlanarKnot { passes, signs }
    }

    pub fn from_resolved(d: &ResolvedDiagram) -> Result<Self> {
        let signs = d.signs().ok_or(Error::MissingPlanarData)?;
        let crossings = d.shadow.crossings();
        let mut id = vec![0u16; d.shadow.len()];
        for (i, c) in crossings.iter().enumerate() {
            id[c.first] = i as u16;
            id[c.second] = i as u16;
        }
        let flags = d.over_flags();
        // Start the code at the basepoint.
        let passes = d
            .shadow
            .walk()
            .map(|p| Pass { crossing: id[p], over: flags[p] })
            .collect();
        Ok(PlanarKnot { passes, signs }.compact())
    }

    /// Resolved diagram with labels `1..=n` by first visit and planar data.
    pub fn to_resolved(&self) -> ResolvedDiagram {
        let k = self.clone().compact();
        let word: Vec<String> = k.passes.iter().map(|p| (p.crossing + 1).to_string()).collect();
        let mut shadow = ShadowDiagram { word, planar: None, basepoint: 0 };
        let mut resolution = Resolution::new();
        let mut first_signs = Vec::new();
        for c in shadow.crossings() {
            let id: usize = c.label.parse::<usize>().expect("numeric label") - 1;
            let over = if k.passes[c.first].over { c.first } else { c.second };
            resolution.set(&c.label, over);
            let s = k.signs[id];
            first_signs.push(if over == c.first { s } else { -s });
        }
        if shadow.word.is_empty() {
            shadow.planar = Some(vec![]);
        } else {
            shadow.planar = Some(shadow.tuples_from_signs(&first_signs));
        }
        ResolvedDiagram { shadow, resolution }
    }

    pub fn len(&self) -> usize {
        self.passes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.passes.is_empty()
    }

    pub fn crossing_count(&self) -> usize {
        self.signs.len()
    }

    pub fn passes(&self) -> &[Pass] {
        &self.passes
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn writhe(&self) -> i32 {
        self.signs.iter().map(|&s| s as i32).sum()
    }

    /// Word positions of each crossing.
    pub fn positions(&self) -> Vec<[usize; 2]> {
        let mut out = vec![[usize::MAX; 2]; self.signs.len()];
        for (p, pass) in self.passes.iter().enumerate() {
            let slot = &mut out[pass.crossing as usize];
            if slot[0] == usize::MAX {
                slot[0] = p;
            } else {
                slot[1] = p;
            }
        }
        out
    }

    /// Relabels crossings `0..n` by first visit, dropping unused signs.
    pub(crate) fn compact(self) -> Self {
        let mut map = vec![u16::MAX; self.signs.len()];
        let mut signs = Vec::with_capacity(self.signs.len());
        let mut passes = Vec::with_capacity(self.passes.len());
        for p in &self.passes {
            let c = p.crossing as usize;
            if map[c] == u16::MAX {
                map[c] = signs.len() as u16;
                signs.push(self.signs[c]);
            }
            passes.push(Pass { crossing: map[c], over: p.over });
        }
        PlanarKnot { passes, signs }
    }

    pub(crate) fn twin(&self, dart: usize) -> usize {
        let len = self.passes.len();
        let p = dart / 2;
        if dart % 2 == 1 {
            2 * ((p + 1) % len)
        } else {
            2 * ((p + len - 1) % len) + 1
        }
    }

    /// Counterclockwise successor of every dart around its crossing.
    pub(crate) fn rotation(&self) -> Vec<usize> {
        let mut next = vec![0; 2 * self.passes.len()];
        for (c, [p, q]) in self.positions().into_iter().enumerate() {
            let (u, o) = if self.passes[p].over { (q, p) } else { (p, q) };
            let order = if self.signs[c] > 0 {
                [2 * u, 2 * o + 1, 2 * u + 1, 2 * o]
            } else {
                [2 * u, 2 * o, 2 * u + 1, 2 * o + 1]
            };
            for i in 0..4 {
                next[order[i]] = order[(i + 1) % 4];
            }
        }
        next
    }

    /// Faces as dart cycles. Following a dart keeps its face on the right.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        if self.passes.is_empty() {
            return vec![vec![], vec![]];
        }
        let rot = self.rotation();
        let n = rot.len();
        let mut seen = vec![false; n];
        let mut faces = Vec::new();
        for d in 0..n {
            if seen[d] {
                continue;
            }
            let mut face = Vec::new();
            let mut x = d;
            while !seen[x] {
                seen[x] = true;
                face.push(x);
                x = rot[self.twin(x)];
            }
            faces.push(face);
        }
        faces
    }

    /// Edge a dart runs along, and whether the face it bounds lies to the
    /// left of that edge's direction.
    pub(crate) fn dart_edge(&self, dart: usize) -> (usize, bool) {
        let len = self.passes.len();
        let p = dart / 2;
        if dart % 2 == 1 {
            (p, false)
        } else {
            ((p + len - 1) % len, true)
        }
    }

    /// True when the sign data describe a diagram on the sphere.
    pub fn is_spherical(&self) -> bool {
        self.faces().len() == self.crossing_count() + 2
    }

    /// Minimal code over rotations, reversal and relabelling, together with
    /// the representative that realises it.
    pub fn canonical(&self) -> (PlanarKnot, Vec<u8>) {
        let len = self.passes.len();
        if len == 0 {
            return (PlanarKnot::unknot(), Vec::new());
        }
        let n = self.signs.len();
        let mut best: Option<(Vec<u8>, usize, bool)> = None;
        let mut code = Vec::with_capacity(len);
        let mut map = vec![u8::MAX; n];
        for reverse in [false, true] {
            for start in 0..len {
                code.clear();
                map.iter_mut().for_each(|m| *m = u8::MAX);
                let mut next_id = 0u8;
                let mut state = std::cmp::Ordering::Equal;
                let mut worse = false;
                for k in 0..len {
                    let p = if reverse { (start + len - k) % len } else { (start + k) % len };
                    let pass = self.passes[p];
                    let c = pass.crossing as usize;
                    if map[c] == u8::MAX {
                        map[c] = next_id;
                        next_id += 1;
                    }
                    let byte = (map[c] << 2) | ((pass.over as u8) << 1) | (self.signs[c] > 0) as u8;
                    code.push(byte);
                    if let (Some((b, _, _)), std::cmp::Ordering::Equal) = (&best, state) {
                        state = byte.cmp(&b[k]);
                        if state == std::cmp::Ordering::Greater {
                            worse = true;
                            break;
                        }
                    }
                }
                if worse {
                    continue;
                }
                if best.is_none() || state == std::cmp::Ordering::Less {
                    best = Some((code.clone(), start, reverse));
                }
            }
        }
        let (code, start, reverse) = best.expect("nonempty");
        let passes: Vec<Pass> = (0..len)
            .map(|k| {
                let p = if reverse { (start + len - k) % len } else { (start + k) % len };
                self.passes[p]
            })
            .collect();
        let knot = PlanarKnot { passes, signs: self.signs.clone() }.compact();
        (knot, code)
    }

    pub fn code(&self) -> Vec<u8> {
        self.canonical().1
    }
}
