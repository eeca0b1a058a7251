//! Reidemeister moves on [`PlanarKnot`]s.
//!
//! Removal moves and R3 are located through faces: a bigon face whose one
//! side runs over both its corners, or a triangle face with one side over
//! both of its corners. Insertions work on an edge (R1) or on two sides of
//! a common face (R2).

use std::fmt;

use super::knot::{Pass, PlanarKnot};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveKind {
    R1,
    R2,
    R3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Move {
    /// Remove the kink whose passes sit at `position` and `position + 1`.
    R1Remove { position: usize },
    /// Remove the bigon bounded by the two edges.
    R2Remove { edges: [usize; 2] },
    /// Slide the strand across the triangle bounded by the three edges.
    R3 { edges: [usize; 3] },
    /// Add a kink on `edge`; `first_over` says whether its first pass goes
    /// over.
    R1Add { edge: usize, first_over: bool, sign: i8 },
    /// Push the edge of `darts[0]` across a face over (`first_over`) or
    /// under the edge of `darts[1]`.
    R2Add { darts: [usize; 2], first_over: bool },
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::R1Remove { .. } | Move::R1Add { .. } => MoveKind::R1,
            Move::R2Remove { .. } | Move::R2Add { .. } => MoveKind::R2,
            Move::R3 { .. } => MoveKind::R3,
        }
    }

    /// Change in crossing number.
    pub fn delta(&self) -> i32 {
        match self {
            Move::R1Remove { .. } => -1,
            Move::R2Remove { .. } => -2,
            Move::R3 { .. } => 0,
            Move::R1Add { .. } => 1,
            Move::R2Add { .. } => 2,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::R1Remove { position } => write!(f, "R1- at positions {position},{}", position + 1),
            Move::R2Remove { edges } => write!(f, "R2- on edges {},{}", edges[0], edges[1]),
            Move::R3 { edges } => write!(f, "R3 on edges {},{},{}", edges[0], edges[1], edges[2]),
            Move::R1Add { edge, first_over, sign } => write!(
                f,
                "R1+ on edge {edge} ({} first, sign {})",
                if *first_over { "over" } else { "under" },
                if *sign > 0 { '+' } else { '-' }
            ),
            Move::R2Add { darts, first_over } => write!(
                f,
                "R2+ pushing edge at dart {} {} dart {}",
                darts[0],
                if *first_over { "over" } else { "under" },
                darts[1]
            ),
        }
    }
}

impl PlanarKnot {
    fn bigon_ok(&self, face: &[usize]) -> Option<[usize; 2]> {
        if face.len() != 2 {
            return None;
        }
        let len = self.len();
        let (e1, _) = self.dart_edge(face[0]);
        let (e2, _) = self.dart_edge(face[1]);
        let corners = |e: usize| (self.passes[e].crossing, self.passes[(e + 1) % len].crossing);
        let (a, b) = corners(e1);
        if e1 == e2 || a == b {
            return None;
        }
        if self.passes[e1].over != self.passes[(e1 + 1) % len].over {
            return None;
        }
        Some(if e1 < e2 { [e1, e2] } else { [e2, e1] })
    }

    fn triangle_ok(&self, face: &[usize]) -> Option<[usize; 3]> {
        if face.len() != 3 {
            return None;
        }
        let len = self.len();
        let mut edges = [0; 3];
        for (i, &d) in face.iter().enumerate() {
            edges[i] = self.dart_edge(d).0;
        }
        edges.sort_unstable();
        let mut touched = Vec::with_capacity(6);
        for &e in &edges {
            touched.push(e);
            touched.push((e + 1) % len);
        }
        let mut sorted = touched.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != 6 {
            return None;
        }
        let mut corners: Vec<u16> = touched.iter().map(|&p| self.passes[p].crossing).collect();
        corners.sort_unstable();
        corners.dedup();
        if corners.len() != 3 {
            return None;
        }
        let top = edges.iter().any(|&e| self.passes[e].over && self.passes[(e + 1) % len].over);
        top.then_some(edges)
    }

    /// Every legal move, in a fixed order. Increasing moves are listed only
    /// if the result stays within `ceiling` crossings.
    pub fn moves(&self, ceiling: Option<usize>) -> Vec<Move> {
        let len = self.len();
        let n = self.crossing_count();
        let mut out = Vec::new();
        for p in 0..len {
            if self.passes[p].crossing == self.passes[(p + 1) % len].crossing {
                out.push(Move::R1Remove { position: p });
            }
        }
        let faces = self.faces();
        let mut bigons: Vec<[usize; 2]> = faces.iter().filter_map(|f| self.bigon_ok(f)).collect();
        bigons.sort_unstable();
        bigons.dedup();
        out.extend(bigons.into_iter().map(|edges| Move::R2Remove { edges }));
        let mut triangles: Vec<[usize; 3]> = faces.iter().filter_map(|f| self.triangle_ok(f)).collect();
        triangles.sort_unstable();
        triangles.dedup();
        out.extend(triangles.into_iter().map(|edges| Move::R3 { edges }));
        let Some(ceiling) = ceiling else {
            return out;
        };
        if n < ceiling {
            for edge in 0..len.max(1) {
                for first_over in [true, false] {
                    for sign in [1, -1] {
                        out.push(Move::R1Add { edge, first_over, sign });
                    }
                }
            }
        }
        if n + 2 <= ceiling && len > 0 {
            for face in &faces {
                let mut darts = face.clone();
                darts.sort_unstable();
                for (i, &d1) in darts.iter().enumerate() {
                    for &d2 in &darts[i + 1..] {
                        if self.dart_edge(d1).0 == self.dart_edge(d2).0 {
                            continue;
                        }
                        for first_over in [true, false] {
                            out.push(Move::R2Add { darts: [d1, d2], first_over });
                        }
                    }
                }
            }
        }
        out
    }

    /// Applies a move, returning `None` when it is not legal here. The
    /// result is compacted but not canonicalised.
    pub fn apply(&self, m: &Move) -> Option<PlanarKnot> {
        let len = self.len();
        match *m {
            Move::R1Remove { position } => {
                if len < 2 || position >= len {
                    return None;
                }
                let q = (position + 1) % len;
                let c = self.passes[position].crossing;
                if self.passes[q].crossing != c {
                    return None;
                }
                Some(self.without(&[c]))
            }
            Move::R2Remove { edges } => {
                let face = self.faces().into_iter().find(|f| self.bigon_ok(f) == Some(edges))?;
                let (e, _) = self.dart_edge(face[0]);
                let a = self.passes[e].crossing;
                let b = self.passes[(e + 1) % len].crossing;
                Some(self.without(&[a, b]))
            }
            Move::R3 { edges } => {
                self.faces().iter().find(|f| self.triangle_ok(f) == Some(edges))?;
                let mut passes = self.passes.clone();
                for e in edges {
                    passes.swap(e, (e + 1) % len);
                }
                Some(PlanarKnot::new(passes, self.signs.clone()).compact())
            }
            Move::R1Add { edge, first_over, sign } => {
                if edge >= len.max(1) || sign == 0 {
                    return None;
                }
                let c = self.crossing_count() as u16;
                let kink = [Pass { crossing: c, over: first_over }, Pass { crossing: c, over: !first_over }];
                let mut passes = self.passes.clone();
                let at = if len == 0 { 0 } else { edge + 1 };
                passes.splice(at..at, kink);
                let mut signs = self.signs.clone();
                signs.push(sign.signum());
                Some(PlanarKnot::new(passes, signs).compact())
            }
            Move::R2Add { darts, first_over } => self.push_finger(darts, first_over),
        }
    }

    fn without(&self, crossings: &[u16]) -> PlanarKnot {
        let passes = self.passes.iter().copied().filter(|p| !crossings.contains(&p.crossing)).collect();
        PlanarKnot::new(passes, self.signs.clone()).compact()
    }

    /// Pushes a finger of one face side across the face and over or under
    /// another side of the same face.
    fn push_finger(&self, darts: [usize; 2], first_over: bool) -> Option<PlanarKnot> {
        let len = self.len();
        if len == 0 || darts.iter().any(|&d| d >= 2 * len) {
            return None;
        }
        let faces = self.faces();
        if !faces.iter().any(|f| f.contains(&darts[0]) && f.contains(&darts[1])) {
            return None;
        }
        let (e1, left1) = self.dart_edge(darts[0]);
        let (e2, left2) = self.dart_edge(darts[1]);
        if e1 == e2 {
            return None;
        }
        let side1: i8 = if left1 { 1 } else { -1 };
        let side2: i8 = if left2 { 1 } else { -1 };
        // Direction of the second edge relative to the finger's travel.
        let along = -side1 * side2;
        let sign_a = side1 * if first_over { -along } else { along };
        let n = self.crossing_count() as u16;
        let (a, b) = (n, n + 1);
        let on_first = [Pass { crossing: a, over: first_over }, Pass { crossing: b, over: first_over }];
        let on_second = if along > 0 {
            [Pass { crossing: a, over: !first_over }, Pass { crossing: b, over: !first_over }]
        } else {
            [Pass { crossing: b, over: !first_over }, Pass { crossing: a, over: !first_over }]
        };
        let mut passes = Vec::with_capacity(len + 4);
        for (p, &pass) in self.passes.iter().enumerate() {
            passes.push(pass);
            if p == e1 {
                passes.extend(on_first);
            }
            if p == e2 {
                passes.extend(on_second);
            }
        }
        let mut signs = self.signs.clone();
        signs.push(sign_a);
        signs.push(-sign_a);
        Some(PlanarKnot::new(passes, signs).compact())
    }
}
