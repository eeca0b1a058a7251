//! Breadth-first Reidemeister reduction.
//!
//! The search runs in stages. The first stage uses only moves that do not
//! add crossings; later stages raise the crossing ceiling one at a time up
//! to `max_crossings`. Each stage is a fresh breadth-first search over
//! canonical codes; the state budget is shared across stages.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use super::knot::PlanarKnot;
use super::moves::Move;
use crate::diagram::ResolvedDiagram;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_STATES: usize = 500_000;
pub const DEFAULT_CROSSING_BOUND: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Total distinct diagrams the search may visit.
    pub max_states: usize,
    /// Crossing ceiling for increasing moves; `None` means `n + 2`.
    pub max_crossings: Option<usize>,
    /// Largest input crossing count accepted.
    pub crossing_bound: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_states: DEFAULT_MAX_STATES, max_crossings: None, crossing_bound: DEFAULT_CROSSING_BOUND }
    }
}

/// One applied move and the crossing count after it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub mv: Move,
    pub crossings: usize,
}

/// Moves taking `start` to the 0-crossing diagram. Every move applies to
/// the canonical representative of the diagram before it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveTrace {
    pub start: PlanarKnot,
    pub steps: Vec<TraceStep>,
}

impl MoveTrace {
    /// Replays the trace and returns the final diagram, or `None` if some
    /// step is illegal.
    pub fn replay(&self) -> Option<PlanarKnot> {
        let mut k = self.start.canonical().0;
        for step in &self.steps {
            k = k.apply(&step.mv)?.canonical().0;
            if k.crossing_count() != step.crossings {
                return None;
            }
        }
        Some(k)
    }

    /// True when the trace replays legally to the 0-crossing diagram.
    pub fn is_valid(&self) -> bool {
        self.replay().is_some_and(|k| k.crossing_count() == 0)
    }
}

impl fmt::Display for MoveTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(f, "{} {} -> {} crossings", i + 1, s.mv, s.crossings)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reduction {
    Reduced(MoveTrace),
    NotReduced { states: usize, budget_exceeded: bool },
}

impl Reduction {
    pub fn is_reduced(&self) -> bool {
        matches!(self, Reduction::Reduced(_))
    }
}

struct Node {
    parent: usize,
    mv: Option<Move>,
    crossings: usize,
}

/// Outcome of one stage.
enum Stage {
    Found(Vec<TraceStep>),
    Exhausted,
    OutOfBudget,
}

fn stage(start: &PlanarKnot, ceiling: Option<usize>, states: &mut usize, max_states: usize) -> Stage {
    let (rep, code) = start.canonical();
    let mut nodes = vec![Node { parent: usize::MAX, mv: None, crossings: rep.crossing_count() }];
    let mut seen: HashMap<Vec<u8>, usize> = HashMap::from([(code, 0)]);
    let mut queue = VecDeque::from([(0usize, rep)]);
    *states += 1;
    while let Some((id, knot)) = queue.pop_front() {
        if knot.crossing_count() == 0 {
            let mut steps = Vec::new();
            let mut at = id;
            while let Some(mv) = nodes[at].mv {
                steps.push(TraceStep { mv, crossings: nodes[at].crossings });
                at = nodes[at].parent;
            }
            steps.reverse();
            return Stage::Found(steps);
        }
        for mv in knot.moves(ceiling) {
            let Some(next) = knot.apply(&mv) else { continue };
            let (rep, code) = next.canonical();
            if seen.contains_key(&code) {
                continue;
            }
            if *states >= max_states {
                return Stage::OutOfBudget;
            }
            *states += 1;
            let nid = nodes.len();
            nodes.push(Node { parent: id, mv: Some(mv), crossings: rep.crossing_count() });
            seen.insert(code, nid);
            queue.push_back((nid, rep));
        }
    }
    Stage::Exhausted
}

/// Searches for a sequence of Reidemeister moves ending at 0 crossings.
pub fn reduce_knot(knot: &PlanarKnot, budget: &SearchBudget) -> Reduction {
    let n = knot.crossing_count();
    let top = budget.max_crossings.unwrap_or(n + 2);
    let mut states = 0;
    let mut ceilings = vec![None];
    ceilings.extend((n + 1..=top).map(Some));
    for ceiling in ceilings {
        match stage(knot, ceiling, &mut states, budget.max_states) {
            Stage::Found(steps) => {
                return Reduction::Reduced(MoveTrace { start: knot.canonical().0, steps });
            }
            Stage::Exhausted => {}
            Stage::OutOfBudget => return Reduction::NotReduced { states, budget_exceeded: true },
        }
    }
    Reduction::NotReduced { states, budget_exceeded: false }
}

pub fn reidemeister_reduce(resolved: &ResolvedDiagram, budget: &SearchBudget) -> Result<Reduction> {
    let knot = PlanarKnot::from_resolved(resolved)?;
    let n = knot.crossing_count();
    if n > budget.crossing_bound {
        return Err(Error::TooLarge { what: "reidemeister search input", size: n, bound: budget.crossing_bound });
    }
    Ok(reduce_knot(&knot, budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd_resolved;
    use crate::verify::knot::Pass;

    #[test]
    fn kink_takes_one_move() {
        let k = PlanarKnot::new(vec![Pass { crossing: 0, over: true }, Pass { crossing: 0, over: false }], vec![1]);
        let Reduction::Reduced(t) = reduce_knot(&k, &SearchBudget::default()) else { panic!() };
        assert_eq!(t.steps.len(), 1);
        assert!(t.is_valid());
    }

    #[test]
    fn trefoil_is_not_reduced() {
        let d = parse_pd_resolved("X 1 5 2 4\nX 3 1 4 6\nX 5 3 6 2").unwrap();
        let r = reidemeister_reduce(&d, &SearchBudget::default()).unwrap();
        assert!(matches!(r, Reduction::NotReduced { budget_exceeded: false, .. }), "{r:?}");
    }

    #[test]
    fn tight_budget_is_flagged() {
        let d = parse_pd_resolved("X 1 5 2 4\nX 3 1 4 6\nX 5 3 6 2").unwrap();
        let budget = SearchBudget { max_states: 10, ..SearchBudget::default() };
        let r = reidemeister_reduce(&d, &budget).unwrap();
        assert!(matches!(r, Reduction::NotReduced { budget_exceeded: true, .. }));
    }
}
