//! The l-reduction calculus: removing l-disjoint maximal lines or pairs of
//! l-adjacent maximal lines until the line l itself becomes maximal in the
//! shrunken set, which certifies l-properness of X_l.

use crate::geom::{incident, intersection_point, Line};
use crate::gc::{GcAnalysis, GcError};
use crate::nodeset::NodeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error(transparent)]
    Gc(#[from] GcError),
    #[error("line is maximal (k = n+1); nothing to reduce")]
    LineIsMaximal,
    #[error("adjacent pairs need 3 <= k <= n, got k = {0}")]
    KOutOfRange(usize),
    #[error("step is not valid for this set")]
    InvalidStep,
    #[error("shrunken set failed re-certification: {0}")]
    Recertification(String),
}

/// One elimination step of a reduction chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepKind {
    /// A maximal line meeting l at no node of the running set.
    DisjointMax(Line),
    /// Two maximal lines whose common point is a node of the running set on l.
    AdjacentPair(Line, Line),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub kind: StepKind,
    /// Indices (into the set the step was applied to) of the removed nodes.
    pub removed_nodes: Vec<usize>,
}

impl StepKind {
    pub fn degree_drop(&self) -> usize {
        match self {
            StepKind::DisjointMax(_) => 1,
            StepKind::AdjacentPair(_, _) => 2,
        }
    }

    pub fn lines(&self) -> Vec<Line> {
        match self {
            StepKind::DisjointMax(l) => vec![l.clone()],
            StepKind::AdjacentPair(a, b) => vec![a.clone(), b.clone()],
        }
    }
}

/// A certified chain X -> ... -> Y; `proper` records whether l ended up
/// maximal in the final set.
#[derive(Debug, Clone)]
pub struct ReductionChain {
    pub line: Line,
    pub steps: Vec<ReductionStep>,
    pub final_set: NodeSet,
    pub proper: bool,
}

impl ReductionChain {
    /// s = |l ∩ Y|; when proper this drives |X_l| = C(s,2).
    pub fn final_line_count(&self) -> usize {
        self.final_set.nodes_on_line(&self.line).len()
    }
}

/// All maximal lines of X meeting l at no node of X (parallel included).
pub fn find_disjoint_maximal(an: &GcAnalysis, l: &Line) -> Result<Vec<Line>, ReductionError> {
    let k = an.line_node_count(l)?;
    if k == an.set().degree() + 1 {
        return Err(ReductionError::LineIsMaximal);
    }
    Ok(disjoint_candidates(an, l))
}

fn disjoint_candidates(an: &GcAnalysis, l: &Line) -> Vec<Line> {
    an.maximal_lines()
        .iter()
        .filter(|lam| *lam != l)
        .filter(|lam| match intersection_point(lam, l) {
            None => true, // parallel
            Some(p) => an.set().index_of(&p).is_none(),
        })
        .cloned()
        .collect()
}

/// All unordered pairs of maximal lines whose common point is a node of X on l.
pub fn find_adjacent_pairs(
    an: &GcAnalysis,
    l: &Line,
) -> Result<Vec<(Line, Line)>, ReductionError> {
    let k = an.line_node_count(l)?;
    if k < 3 || k > an.set().degree() {
        return Err(ReductionError::KOutOfRange(k));
    }
    Ok(adjacent_candidates(an, l))
}

fn adjacent_candidates(an: &GcAnalysis, l: &Line) -> Vec<(Line, Line)> {
    let maxl = an.maximal_lines();
    let mut out = Vec::new();
    for i in 0..maxl.len() {
        for j in 0..i {
            if maxl[i] == *l || maxl[j] == *l {
                continue;
            }
            if let Some(p) = intersection_point(&maxl[j], &maxl[i]) {
                if incident(l, &p) && an.set().index_of(&p).is_some() {
                    out.push((maxl[j].clone(), maxl[i].clone()));
                }
            }
        }
    }
    out
}

/// Applies a single validated step, returning the shrunken set re-wrapped
/// at its lower degree. The result is re-certified poised; a failure there
/// would mean a bug, so it is a hard error.
pub fn apply_step(an: &GcAnalysis, step: &StepKind) -> Result<NodeSet, ReductionError> {
    let set = an.set();
    let lines = step.lines();
    match step {
        StepKind::DisjointMax(lam) => {
            if !an.maximal_lines().contains(lam) {
                return Err(ReductionError::InvalidStep);
            }
        }
        StepKind::AdjacentPair(a, b) => {
            if !an.maximal_lines().contains(a) || !an.maximal_lines().contains(b) || a == b {
                return Err(ReductionError::InvalidStep);
            }
        }
    }
    let new_degree = set
        .degree()
        .checked_sub(step.degree_drop())
        .ok_or(ReductionError::InvalidStep)?;
    let shrunk = set
        .remove_lines(&lines, new_degree)
        .map_err(|e| ReductionError::Recertification(e.to_string()))?;
    if !shrunk.is_poised() {
        return Err(ReductionError::Recertification(
            "shrunken set is not poised".into(),
        ));
    }
    Ok(shrunk)
}

fn removed_indices(set: &NodeSet, lines: &[Line]) -> Vec<usize> {
    (0..set.len())
        .filter(|&i| lines.iter().any(|l| incident(l, set.node(i))))
        .collect()
}

/// Valid steps for the running set, disjoint maximal lines first, canonical
/// order within each kind. A step must leave at least 2 nodes on l.
fn candidate_steps(an: &GcAnalysis, l: &Line) -> Vec<StepKind> {
    let k = an.set().nodes_on_line(l).len();
    let n = an.set().degree();
    if k < 2 || k > n {
        return Vec::new();
    }
    let mut steps: Vec<StepKind> = disjoint_candidates(an, l)
        .into_iter()
        .map(StepKind::DisjointMax)
        .collect();
    if k >= 3 {
        // an adjacent pair removes exactly one node of l
        steps.extend(
            adjacent_candidates(an, l)
                .into_iter()
                .map(|(a, b)| StepKind::AdjacentPair(a, b)),
        );
    }
    // degree bookkeeping: never drop below degree 1
    steps.retain(|s| n >= s.degree_drop() + 1);
    steps
}

/// Greedy reduction: repeatedly applies the first available step until l is
/// maximal in the running set or no step exists. A zero-step chain is valid.
pub fn reduce_fully(an: &GcAnalysis, l: &Line) -> Result<ReductionChain, ReductionError> {
    an.line_node_count(l)?;
    let mut current = an.clone();
    let mut steps = Vec::new();
    loop {
        let k = current.set().nodes_on_line(l).len();
        if k == current.set().degree() + 1 {
            return Ok(ReductionChain {
                line: l.clone(),
                steps,
                final_set: current.set().clone(),
                proper: true,
            });
        }
        let cands = candidate_steps(&current, l);
        match cands.into_iter().next() {
            None => {
                return Ok(ReductionChain {
                    line: l.clone(),
                    steps,
                    final_set: current.set().clone(),
                    proper: false,
                });
            }
            Some(kind) => {
                let removed = removed_indices(current.set(), &kind.lines());
                let shrunk = apply_step(&current, &kind)?;
                steps.push(ReductionStep {
                    kind,
                    removed_nodes: removed,
                });
                current = GcAnalysis::new(shrunk)?;
            }
        }
    }
}

/// Exhaustive backtracking over step choices; returns the first chain that
/// ends with l maximal, or None if no chain does. Greedy success is always
/// found first since candidates are tried in the greedy order.
pub fn check_proper(an: &GcAnalysis, l: &Line) -> Result<Option<ReductionChain>, ReductionError> {
    an.line_node_count(l)?;
    let mut steps = Vec::new();
    let found = search_proper(an, l, &mut steps)?;
    Ok(found.map(|final_set| ReductionChain {
        line: l.clone(),
        steps,
        proper: true,
        final_set,
    }))
}

fn search_proper(
    an: &GcAnalysis,
    l: &Line,
    steps: &mut Vec<ReductionStep>,
) -> Result<Option<NodeSet>, ReductionError> {
    let k = an.set().nodes_on_line(l).len();
    if k == an.set().degree() + 1 {
        return Ok(Some(an.set().clone()));
    }
    for kind in candidate_steps(an, l) {
        let removed = removed_indices(an.set(), &kind.lines());
        let shrunk = apply_step(an, &kind)?;
        let next = GcAnalysis::new(shrunk)?;
        steps.push(ReductionStep {
            kind,
            removed_nodes: removed,
        });
        if let Some(final_set) = search_proper(&next, l, steps)? {
            return Ok(Some(final_set));
        }
        steps.pop();
    }
    Ok(None)
}
