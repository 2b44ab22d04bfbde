//! Constructors and validators for the node-set families: Chung-Yao,
//! Carnicer-Gasca, principal and generalized principal lattices, the n- and
//! (n-1)-maximal-line characterizations, the Y* and X* configurations with
//! their unused distinguished lines, and m-modifications.

pub mod fixtures;

use crate::geom::{
    collinear, general_position, incident, intersection_point, line_through, Line, Point, Rat,
};
use crate::gc::GcAnalysis;
use crate::nodeset::{space_dimension, NodeSet};
use num_traits::Zero;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("construction lines are not in general position")]
    NotGeneralPosition,
    #[error("expected {expected} lines, got {got}")]
    WrongLineCount { expected: usize, got: usize },
    #[error("free node {0} does not lie on its construction line")]
    FreeNodeOffLine(usize),
    #[error("free node {0} lies on a second construction line")]
    FreeNodeOnSecondLine(usize),
    #[error("free nodes are collinear")]
    CollinearFreeNodes,
    #[error("free node {0} coincides with an intersection node")]
    FreeNodeCoincidence(usize),
    #[error("pencil lines {i}^0, {j}^1, {k}^2 with i+j+k=n are not concurrent at a common point")]
    TripleIntersectionFailure { i: usize, j: usize, k: usize },
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("set has mu = {got}, expected {expected}")]
    WrongMu { expected: usize, got: usize },
    #[error("structural mismatch: {0}")]
    Mismatch(String),
    #[error("invalid node set: {0}")]
    NodeSet(String),
}

fn degenerate(msg: impl Into<String>) -> LatticeError {
    LatticeError::Degenerate(msg.into())
}

/// Three ordered pencils of n+1 lines whose triple intersections carve out
/// a generalized principal lattice.
#[derive(Debug, Clone)]
pub struct PencilTriple {
    pub pencils: [Vec<Line>; 3],
}

impl PencilTriple {
    pub fn degree(&self) -> usize {
        self.pencils[0].len() - 1
    }
}

/// Which family a blueprint describes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyTag {
    ChungYao,
    CarnicerGasca,
    Principal,
    GeneralizedPrincipal,
    NMax,
    NMinus1Max,
    YStar,
    XStar,
    Modified(Box<FamilyTag>),
}

impl FamilyTag {
    pub fn name(&self) -> String {
        match self {
            FamilyTag::ChungYao => "chung-yao".into(),
            FamilyTag::CarnicerGasca => "carnicer-gasca".into(),
            FamilyTag::Principal => "principal".into(),
            FamilyTag::GeneralizedPrincipal => "gpl".into(),
            FamilyTag::NMax => "n-max".into(),
            FamilyTag::NMinus1Max => "n-minus-1-max".into(),
            FamilyTag::YStar => "y-star".into(),
            FamilyTag::XStar => "x-star".into(),
            FamilyTag::Modified(base) => format!("modified-{}", base.name()),
        }
    }
}

/// Construction annex: the lines and distinguished nodes that explain how a
/// lattice was assembled or recognized.
#[derive(Debug, Clone)]
pub struct LatticeBlueprint {
    pub family: FamilyTag,
    pub construction_lines: Vec<Line>,
    pub free_nodes: Vec<Point>,
    pub outside_nodes: Vec<Point>,
    /// The lines l_i^o through the single outside node, or the OO lines
    /// l_i^oo through pairs of outside nodes.
    pub o_lines: Vec<Line>,
    pub special_nodes: Vec<Point>,
    pub distinguished_line: Option<Line>,
    pub modification_count: usize,
}

impl LatticeBlueprint {
    fn bare(family: FamilyTag, construction_lines: Vec<Line>) -> Self {
        LatticeBlueprint {
            family,
            construction_lines,
            free_nodes: Vec::new(),
            outside_nodes: Vec::new(),
            o_lines: Vec::new(),
            special_nodes: Vec::new(),
            distinguished_line: None,
            modification_count: 0,
        }
    }
}

fn dedupe_check(points: &[Point]) -> Result<(), LatticeError> {
    for i in 0..points.len() {
        for j in 0..i {
            if points[i] == points[j] {
                return Err(degenerate(format!(
                    "coincident construction points {} and {}",
                    points[j], points[i]
                )));
            }
        }
    }
    Ok(())
}

fn meet(l1: &Line, l2: &Line, what: &str) -> Result<Point, LatticeError> {
    intersection_point(l1, l2).ok_or_else(|| degenerate(format!("{what}: lines do not meet")))
}

/// All (n+2 choose 2) pairwise intersections of n+2 general-position lines.
pub fn chung_yao(lines: &[Line]) -> Result<(NodeSet, LatticeBlueprint), LatticeError> {
    if lines.len() < 3 {
        return Err(LatticeError::WrongLineCount {
            expected: 3,
            got: lines.len(),
        });
    }
    if !general_position(lines).map_err(|_| LatticeError::NotGeneralPosition)? {
        return Err(LatticeError::NotGeneralPosition);
    }
    let n = lines.len() - 2;
    let mut nodes = Vec::new();
    for i in 0..lines.len() {
        for j in 0..i {
            nodes.push(meet(&lines[j], &lines[i], "chung-yao")?);
        }
    }
    let set = NodeSet::new(n, nodes).map_err(|e| LatticeError::NodeSet(e.to_string()))?;
    Ok((
        set,
        LatticeBlueprint::bare(FamilyTag::ChungYao, lines.to_vec()),
    ))
}

/// Intersections of n+1 general-position lines plus one free node per line.
pub fn carnicer_gasca(
    lines: &[Line],
    free: &[Point],
) -> Result<(NodeSet, LatticeBlueprint), LatticeError> {
    if lines.len() < 3 || free.len() != lines.len() {
        return Err(LatticeError::WrongLineCount {
            expected: lines.len().max(3),
            got: free.len(),
        });
    }
    if !general_position(lines).map_err(|_| LatticeError::NotGeneralPosition)? {
        return Err(LatticeError::NotGeneralPosition);
    }
    let n = lines.len() - 1;
    let mut crossings = Vec::new();
    for i in 0..lines.len() {
        for j in 0..i {
            crossings.push(meet(&lines[j], &lines[i], "carnicer-gasca")?);
        }
    }
    for (idx, f) in free.iter().enumerate() {
        if !incident(&lines[idx], f) {
            return Err(LatticeError::FreeNodeOffLine(idx));
        }
        if lines
            .iter()
            .enumerate()
            .any(|(j, l)| j != idx && incident(l, f))
        {
            return Err(LatticeError::FreeNodeOnSecondLine(idx));
        }
        if crossings.contains(f) {
            return Err(LatticeError::FreeNodeCoincidence(idx));
        }
    }
    if collinear(free) {
        return Err(LatticeError::CollinearFreeNodes);
    }
    let mut nodes = crossings;
    nodes.extend_from_slice(free);
    let set = NodeSet::new(n, nodes).map_err(|e| LatticeError::NodeSet(e.to_string()))?;
    let mut bp = LatticeBlueprint::bare(FamilyTag::CarnicerGasca, lines.to_vec());
    bp.free_nodes = free.to_vec();
    Ok((set, bp))
}

/// The standard triangular integer lattice PL_n.
pub fn principal_lattice(n: usize) -> NodeSet {
    NodeSet::pl(n)
}

/// The three standard pencils {x=i}, {y=j}, {x+y=n-k} that intersect at PL_n.
pub fn principal_pencils(n: usize) -> PencilTriple {
    let vertical = (0..=n)
        .map(|i| Line::new(1, 0, -(i as i64)).unwrap())
        .collect();
    let horizontal = (0..=n)
        .map(|j| Line::new(0, 1, -(j as i64)).unwrap())
        .collect();
    let diagonal = (0..=n)
        .map(|k| Line::new(1, 1, (k as i64) - (n as i64)).unwrap())
        .collect();
    PencilTriple {
        pencils: [vertical, horizontal, diagonal],
    }
}

/// The (n+1)(n+2)/2 triple-intersection nodes of a pencil triple, with the
/// certificate that each node lies on exactly one line of each pencil.
pub fn generalized_principal(
    pencils: &PencilTriple,
) -> Result<(NodeSet, LatticeBlueprint), LatticeError> {
    let n = pencils.degree();
    for p in &pencils.pencils {
        if p.len() != n + 1 {
            return Err(LatticeError::WrongLineCount {
                expected: n + 1,
                got: p.len(),
            });
        }
    }
    let all: Vec<&Line> = pencils.pencils.iter().flatten().collect();
    for i in 0..all.len() {
        for j in 0..i {
            if all[i] == all[j] {
                return Err(degenerate("the 3n+3 pencil lines are not distinct"));
            }
        }
    }
    let mut nodes = Vec::new();
    for i in 0..=n {
        for j in 0..=(n - i) {
            let k = n - i - j;
            let p = intersection_point(&pencils.pencils[0][i], &pencils.pencils[1][j])
                .ok_or(LatticeError::TripleIntersectionFailure { i, j, k })?;
            if !incident(&pencils.pencils[2][k], &p) {
                return Err(LatticeError::TripleIntersectionFailure { i, j, k });
            }
            nodes.push(p);
        }
    }
    let set = NodeSet::new(n, nodes).map_err(|e| LatticeError::NodeSet(e.to_string()))?;
    // each node must belong to exactly one line of each pencil
    for node in set.nodes() {
        for pencil in &pencils.pencils {
            let hits = pencil.iter().filter(|l| incident(l, node)).count();
            if hits != 1 {
                return Err(degenerate(format!(
                    "node {node} lies on {hits} lines of one pencil"
                )));
            }
        }
    }
    let mut bp = LatticeBlueprint::bare(FamilyTag::GeneralizedPrincipal, Vec::new());
    bp.o_lines = all.into_iter().cloned().collect();
    Ok((set, bp))
}

fn split_by_maximal(set: &NodeSet, maximal: &[Line]) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let mut crossings = Vec::new();
    let mut free = Vec::new();
    let mut outside = Vec::new();
    for idx in 0..set.len() {
        let hits = maximal
            .iter()
            .filter(|l| incident(l, set.node(idx)))
            .count();
        match hits {
            0 => outside.push(idx),
            1 => free.push(idx),
            _ => crossings.push(idx),
        }
    }
    (crossings, free, outside)
}

/// Recognizes the structure of a GC_n set with exactly n maximal lines:
/// intersection nodes, 2n free nodes on three lines concurrent at a single
/// outside node, with no covering line containing n+1 nodes.
pub fn verify_n_max(set: &NodeSet) -> Result<LatticeBlueprint, LatticeError> {
    let n = set.degree();
    let maximal = set.maximal_lines();
    if n < 3 || maximal.len() != n {
        return Err(LatticeError::WrongMu {
            expected: n,
            got: maximal.len(),
        });
    }
    let (crossings, free, outside) = split_by_maximal(set, &maximal);
    if outside.len() != 1 {
        return Err(LatticeError::Mismatch(format!(
            "expected 1 outside node, found {}",
            outside.len()
        )));
    }
    if free.len() != 2 * n || crossings.len() != n * (n - 1) / 2 {
        return Err(LatticeError::Mismatch(format!(
            "expected {} free and {} intersection nodes, found {} and {}",
            2 * n,
            n * (n - 1) / 2,
            free.len(),
            crossings.len()
        )));
    }
    let o = set.node(outside[0]).clone();
    // group the free nodes by the line joining them to O
    let mut cover: Vec<(Line, Vec<usize>)> = Vec::new();
    for &f in &free {
        let l = line_through(&o, set.node(f))
            .map_err(|_| LatticeError::Mismatch("free node coincides with O".into()))?;
        match cover.iter_mut().find(|(cl, _)| *cl == l) {
            Some((_, v)) => v.push(f),
            None => cover.push((l, vec![f])),
        }
    }
    if cover.len() != 3 {
        return Err(LatticeError::Mismatch(format!(
            "free nodes lie on {} lines through the outside node, expected 3",
            cover.len()
        )));
    }
    for (l, _) in &cover {
        if set.nodes_on_line(l).len() >= n + 1 {
            return Err(LatticeError::Mismatch(
                "a covering line through O contains n+1 nodes".into(),
            ));
        }
    }
    let mut bp = LatticeBlueprint::bare(FamilyTag::NMax, maximal);
    bp.free_nodes = free.iter().map(|&i| set.node(i).clone()).collect();
    bp.outside_nodes = vec![o];
    bp.o_lines = cover.into_iter().map(|(l, _)| l).collect();
    Ok(bp)
}

/// Recognizes the structure of a GC_n set with exactly n-1 maximal lines
/// under some permutation of outside-node and special-node indices.
pub fn verify_n_minus_1_max(set: &NodeSet) -> Result<LatticeBlueprint, LatticeError> {
    let n = set.degree();
    let maximal = set.maximal_lines();
    if n < 4 || maximal.len() != n - 1 {
        return Err(LatticeError::WrongMu {
            expected: n.saturating_sub(1),
            got: maximal.len(),
        });
    }
    let (crossings, free, outside) = split_by_maximal(set, &maximal);
    if outside.len() != 3 {
        return Err(LatticeError::Mismatch(format!(
            "expected 3 outside nodes, found {}",
            outside.len()
        )));
    }
    if free.len() != 3 * (n - 1) || crossings.len() != (n - 1) * (n - 2) / 2 {
        return Err(LatticeError::Mismatch("node-count pattern mismatch".into()));
    }
    let outs: Vec<Point> = outside.iter().map(|&i| set.node(i).clone()).collect();
    if collinear(&outs) {
        return Err(LatticeError::Mismatch("outside nodes are collinear".into()));
    }
    // try every labeling O_1,O_2,O_3 of the outside nodes
    let perms3 = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut last_reason = String::from("no labeling satisfied the conditions");
    for perm in perms3 {
        let o: Vec<&Point> = perm.iter().map(|&i| &outs[i]).collect();
        // l_i^oo joins the two outside nodes other than O_i
        let oo: Vec<Line> = (0..3)
            .map(|i| {
                let others: Vec<&&Point> = o
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, p)| p)
                    .collect();
                line_through(others[0], others[1]).expect("outside nodes distinct")
            })
            .collect();
        match try_n_minus_1_labeling(set, &maximal, &free, &o, &oo, n) {
            Ok(mut bp) => {
                bp.free_nodes = free.iter().map(|&i| set.node(i).clone()).collect();
                return Ok(bp);
            }
            Err(reason) => last_reason = reason,
        }
    }
    Err(LatticeError::Mismatch(last_reason))
}

fn try_n_minus_1_labeling(
    set: &NodeSet,
    maximal: &[Line],
    free: &[usize],
    o: &[&Point],
    oo: &[Line],
    n: usize,
) -> Result<LatticeBlueprint, String> {
    // special nodes: free nodes on no OO line
    let specials: Vec<usize> = free
        .iter()
        .copied()
        .filter(|&f| !oo.iter().any(|l| incident(l, set.node(f))))
        .collect();
    if specials.len() != 3 {
        return Err(format!(
            "found {} free nodes off the OO lines, expected 3",
            specials.len()
        ));
    }
    // condition (ii), first half: each OO line through exactly n-2 free nodes
    for l in oo {
        let on = free
            .iter()
            .filter(|&&f| incident(l, set.node(f)))
            .count();
        if on != n - 2 {
            return Err(format!("an OO line passes through {on} free nodes"));
        }
    }
    // assign special nodes to indices: A_i^i on lambda_i with
    // l_i^oo /\ lambda_i not a node, and the three triples collinear
    let perms3 = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    'outer: for perm in perms3 {
        let a: Vec<&Point> = perm.iter().map(|&i| set.node(specials[i])).collect();
        let mut lambdas = Vec::new();
        for ai in &a {
            match maximal.iter().find(|l| incident(l, ai)) {
                Some(l) => lambdas.push(l.clone()),
                None => continue 'outer,
            }
        }
        // condition (ii), second half
        for i in 0..3 {
            match intersection_point(&oo[i], &lambdas[i]) {
                Some(p) => {
                    if set.index_of(&p).is_some() {
                        continue 'outer;
                    }
                }
                None => {} // parallel: empty intersection satisfies the condition
            }
        }
        // condition (iii): {O_i, A_j^j, A_k^k} collinear for {i,j,k} = {1,2,3}
        for i in 0..3 {
            let j = (i + 1) % 3;
            let k = (i + 2) % 3;
            if !collinear(&[o[i].clone(), a[j].clone(), a[k].clone()]) {
                continue 'outer;
            }
        }
        let mut bp = LatticeBlueprint::bare(FamilyTag::NMinus1Max, maximal.to_vec());
        bp.outside_nodes = o.iter().map(|p| (*p).clone()).collect();
        bp.o_lines = oo.to_vec();
        bp.special_nodes = a.into_iter().cloned().collect();
        return Ok(bp);
    }
    Err("no special-node assignment satisfied conditions (ii)-(iii)".into())
}

/// A line through `p` with direction vector (dx, dy).
pub fn line_with_direction(p: &Point, dx: &Rat, dy: &Rat) -> Result<Line, LatticeError> {
    if dx.is_zero() && dy.is_zero() {
        return Err(degenerate("zero direction vector"));
    }
    let a = dy.clone();
    let b = -dx.clone();
    let c = -(a.clone() * &p.x + b.clone() * &p.y);
    Line::from_rationals(&a, &b, &c).map_err(|e| degenerate(e.to_string()))
}

/// Parameters realizing the Y* recipe: three lines through an outside node
/// O, two maximal lines, and a direction for the third maximal line through
/// the derived point A_3.
#[derive(Debug, Clone)]
pub struct YStarParams {
    pub o_lines: [Line; 3],
    pub lambda1: Line,
    pub lambda2: Line,
    pub lambda3_direction: (Rat, Rat),
}

/// Builds the 10-node GC_3 set Y* carrying an unused 3-node line l_3*.
pub fn construct_y_star(
    params: &YStarParams,
) -> Result<(NodeSet, Line, LatticeBlueprint), LatticeError> {
    let [l1o, l2o, l3o] = &params.o_lines;
    if l1o == l2o || l1o == l3o || l2o == l3o {
        return Err(degenerate("the three O-lines are not distinct"));
    }
    let o = meet(l1o, l2o, "O-lines")?;
    if !incident(l3o, &o) {
        return Err(degenerate("the three O-lines are not concurrent"));
    }
    let lam1 = params.lambda1.clone();
    let lam2 = params.lambda2.clone();
    if incident(&lam1, &o) || incident(&lam2, &o) {
        return Err(degenerate("a maximal line passes through O"));
    }
    let a1 = meet(&lam1, l1o, "lambda_1 and l_1^o")?;
    let a2 = meet(&lam2, l2o, "lambda_2 and l_2^o")?;
    if a1 == a2 {
        return Err(degenerate("A_1 and A_2 coincide"));
    }
    let l3star = line_through(&a1, &a2).map_err(|e| degenerate(e.to_string()))?;
    let a3 = meet(&l3star, l3o, "l_3^* and l_3^o")?;
    let (dx, dy) = &params.lambda3_direction;
    let lam3 = line_with_direction(&a3, dx, dy)?;
    if lam3 == lam1 || lam3 == lam2 || incident(&lam3, &o) {
        return Err(degenerate("lambda_3 degenerates"));
    }
    let lambdas = [lam1.clone(), lam2.clone(), lam3.clone()];
    if !general_position(&lambdas).map_err(|_| degenerate("maximal lines coincide"))? {
        return Err(degenerate(
            "maximal lines are parallel or concurrent",
        ));
    }
    // the three maximal lines must meet the three O-lines at nine distinct points
    let mut on_olines = Vec::new();
    for lam in &lambdas {
        for lo in &params.o_lines {
            on_olines.push(meet(lam, lo, "maximal line and O-line")?);
        }
    }
    dedupe_check(&on_olines)?;
    if on_olines.contains(&o) {
        return Err(degenerate("a maximal line passes through O"));
    }
    let vertices = [
        meet(&lam1, &lam2, "vertices")?,
        meet(&lam1, &lam3, "vertices")?,
        meet(&lam2, &lam3, "vertices")?,
    ];
    // free-node matching: besides A_1, A_2, A_3, each maximal line takes one
    // more intersection with an O-line; the two balanced assignments give
    // each O-line two free nodes. Take the first that certifies.
    let matchings = [[1usize, 2, 0], [2, 0, 1]];
    let mut last_err = degenerate("no free-node matching certified");
    for matching in matchings {
        let mut free = vec![a1.clone(), a2.clone(), a3.clone()];
        let mut ok = true;
        for (li, &oi) in matching.iter().enumerate() {
            match intersection_point(&lambdas[li], &params.o_lines[oi]) {
                Some(p) => free.push(p),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let mut nodes = vec![o.clone()];
        nodes.extend(vertices.iter().cloned());
        nodes.extend(free.iter().cloned());
        let set = match NodeSet::new(3, nodes) {
            Ok(s) => s,
            Err(e) => {
                last_err = degenerate(e.to_string());
                continue;
            }
        };
        match validate_star(&set, &l3star, 3, &lambdas) {
            Ok(()) => {
                let mut bp = LatticeBlueprint::bare(FamilyTag::YStar, lambdas.to_vec());
                bp.free_nodes = free;
                bp.outside_nodes = vec![o];
                bp.o_lines = params.o_lines.to_vec();
                bp.special_nodes = vec![a1, a2, a3];
                bp.distinguished_line = Some(l3star.clone());
                return Ok((set, l3star, bp));
            }
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}

/// Shared post-validation for the counterexample families: poised, GC,
/// expected maximal-line set, and the distinguished line hitting each
/// maximal line at a node.
fn validate_star(
    set: &NodeSet,
    distinguished: &Line,
    expected_k: usize,
    lambdas: &[Line],
) -> Result<(), LatticeError> {
    if !set.is_poised() {
        return Err(degenerate("constructed set is not poised"));
    }
    let mut maximal = set.maximal_lines();
    maximal.sort();
    let mut expected = lambdas.to_vec();
    expected.sort();
    if maximal != expected {
        return Err(degenerate(format!(
            "maximal lines are not exactly the construction lines (mu = {})",
            maximal.len()
        )));
    }
    let k = set.nodes_on_line(distinguished).len();
    if k != expected_k {
        return Err(degenerate(format!(
            "distinguished line passes through {k} nodes, expected {expected_k}"
        )));
    }
    let an = GcAnalysis::new(set.clone()).map_err(|e| degenerate(e.to_string()))?;
    if !an.is_gc_set() {
        return Err(degenerate("constructed set is not GC"));
    }
    Ok(())
}

/// Parameters realizing the Remark-style X* recipe.
#[derive(Debug, Clone)]
pub struct XStarParams {
    pub lambda1: Line,
    pub lambda2: Line,
    pub lambda3: Line,
    pub o2: Point,
    pub oo1_direction: (Rat, Rat),
    pub oo3_direction: (Rat, Rat),
    /// The freely chosen "free node" A_2^2 on lambda_2.
    pub a22: Point,
    pub lambda4_direction: (Rat, Rat),
}

/// Builds the 21-node GC_5 set X* carrying an unused 4-node line l_4*.
pub fn construct_x_star(
    params: &XStarParams,
) -> Result<(NodeSet, Line, LatticeBlueprint), LatticeError> {
    let lam = [
        params.lambda1.clone(),
        params.lambda2.clone(),
        params.lambda3.clone(),
    ];
    if !general_position(&lam).map_err(|_| degenerate("maximal lines coincide"))? {
        return Err(degenerate("lambda_1..3 are parallel or concurrent"));
    }
    let o2 = params.o2.clone();
    if lam.iter().any(|l| incident(l, &o2)) {
        return Err(degenerate("O_2 lies on a maximal line"));
    }
    let oo1 = line_with_direction(&o2, &params.oo1_direction.0, &params.oo1_direction.1)?;
    let oo3 = line_with_direction(&o2, &params.oo3_direction.0, &params.oo3_direction.1)?;
    if oo1 == oo3 {
        return Err(degenerate("the two chosen OO lines coincide"));
    }
    // the two OO lines meet the three maximal lines at six distinct points
    let mut six = Vec::new();
    for oo in [&oo1, &oo3] {
        for l in &lam {
            six.push(meet(oo, l, "OO line and maximal line")?);
        }
    }
    dedupe_check(&six)?;
    let b = six[2].clone(); // oo1 /\ lambda_3
    let c = six[4].clone(); // oo3 /\ lambda_2
    let l4star = line_through(&b, &c).map_err(|e| degenerate(e.to_string()))?;
    let a11 = meet(&l4star, &lam[0], "l_4^* and lambda_1")?;
    let o2_a11 = line_through(&o2, &a11).map_err(|e| degenerate(e.to_string()))?;
    let a33 = meet(&o2_a11, &lam[2], "line(O_2, A_1^1) and lambda_3")?;
    let a22 = params.a22.clone();
    if !incident(&lam[1], &a22) {
        return Err(degenerate("A_2^2 does not lie on lambda_2"));
    }
    let o1 = meet(
        &line_through(&a22, &a33).map_err(|e| degenerate(e.to_string()))?,
        &oo3,
        "O_1",
    )?;
    let o3 = meet(
        &line_through(&a22, &a11).map_err(|e| degenerate(e.to_string()))?,
        &oo1,
        "O_3",
    )?;
    if o1 == o3 || o1 == o2 || o3 == o2 {
        return Err(degenerate("outside nodes coincide"));
    }
    let oo2 = line_through(&o1, &o3).map_err(|e| degenerate(e.to_string()))?;
    let d = meet(&oo2, &l4star, "D")?;
    let lam4 = line_with_direction(&d, &params.lambda4_direction.0, &params.lambda4_direction.1)?;
    let lambdas = [lam[0].clone(), lam[1].clone(), lam[2].clone(), lam4.clone()];
    if !general_position(&lambdas).map_err(|_| degenerate("maximal lines coincide"))? {
        return Err(degenerate("lambda_4 breaks general position"));
    }
    let oo = [oo1.clone(), oo2.clone(), oo3.clone()];
    // assemble the 21 nodes
    let mut nodes = Vec::new();
    for i in 0..4 {
        for j in 0..i {
            nodes.push(meet(&lambdas[j], &lambdas[i], "maximal crossings")?);
        }
    }
    let free: Vec<Point> = vec![
        a11.clone(),
        meet(&lam[0], &oo2, "lambda_1 free")?,
        meet(&lam[0], &oo3, "lambda_1 free")?,
        a22.clone(),
        meet(&lam[1], &oo1, "lambda_2 free")?,
        c.clone(),
        a33.clone(),
        b.clone(),
        meet(&lam[2], &oo2, "lambda_3 free")?,
        meet(&lam4, &oo1, "lambda_4 free")?,
        d.clone(),
        meet(&lam4, &oo3, "lambda_4 free")?,
    ];
    nodes.extend(free.iter().cloned());
    nodes.extend([o1.clone(), o2.clone(), o3.clone()]);
    let set = NodeSet::new(5, nodes).map_err(|e| degenerate(e.to_string()))?;
    validate_star(&set, &l4star, 4, &lambdas)?;
    // each node of l_4^* must lie on exactly one maximal line
    for idx in set.nodes_on_line(&l4star) {
        let hits = lambdas
            .iter()
            .filter(|l| incident(l, set.node(idx)))
            .count();
        if hits != 1 {
            return Err(degenerate(
                "a node of l_4^* lies on several maximal lines",
            ));
        }
    }
    let mut bp = LatticeBlueprint::bare(FamilyTag::XStar, lambdas.to_vec());
    bp.free_nodes = free;
    bp.outside_nodes = vec![o1, o2, o3];
    bp.o_lines = oo.to_vec();
    bp.special_nodes = vec![a11, a22, a33];
    bp.distinguished_line = Some(l4star.clone());
    Ok((set, l4star, bp))
}

/// Parameters for the degenerate i=1 probe: two collinear point triples
/// feeding the Pappus configuration, plus directions for the two deleted
/// maximal lines.
#[derive(Debug, Clone)]
pub struct DegenerateProbeParams {
    /// A_1^1, E, F — must be collinear (they sit on the would-be 4-node line).
    pub first_triple: [Point; 3],
    /// O_1, A_2^2, A_3^3 — must be collinear.
    pub second_triple: [Point; 3],
    pub lambda1_direction: (Rat, Rat),
    pub lambda4_direction: (Rat, Rat),
}

/// Outcome of the degenerate probe: the derived points and the exact
/// collinearity fact that forces the rejection.
#[derive(Debug, Clone)]
pub struct DegenerateProbe {
    pub d: Point,
    pub o2: Point,
    pub o3: Point,
    pub triple_collinear: bool,
    /// What the constructor reports when asked to assemble the node set.
    pub rejection: String,
}

/// Probes the impossible i=1 variant of the X* configuration. Deriving the
/// outside nodes from the stated collinearity conditions forces the line
/// through O_2 and O_3 to pass through D = lambda_2 /\ lambda_3 (a Pappus
/// instance), which collapses the node count; assembling the set must fail.
pub fn degenerate_i1_probe(
    params: &DegenerateProbeParams,
) -> Result<DegenerateProbe, LatticeError> {
    let [a11, e, f] = &params.first_triple;
    let [o1, a22, a33] = &params.second_triple;
    if !collinear(&[a11.clone(), e.clone(), f.clone()]) {
        return Err(degenerate("first triple is not collinear"));
    }
    if !collinear(&[o1.clone(), a22.clone(), a33.clone()]) {
        return Err(degenerate("second triple is not collinear"));
    }
    let ell = line_through(a11, e).map_err(|ge| degenerate(ge.to_string()))?;
    let lam2 = line_through(f, a22).map_err(|ge| degenerate(ge.to_string()))?;
    let lam3 = line_through(e, a33).map_err(|ge| degenerate(ge.to_string()))?;
    let d = meet(&lam2, &lam3, "lambda_2 and lambda_3")?;
    let o3 = meet(
        &line_through(a11, a22).map_err(|ge| degenerate(ge.to_string()))?,
        &line_through(e, o1).map_err(|ge| degenerate(ge.to_string()))?,
        "O_3",
    )?;
    let o2 = meet(
        &line_through(a11, a33).map_err(|ge| degenerate(ge.to_string()))?,
        &line_through(f, o1).map_err(|ge| degenerate(ge.to_string()))?,
        "O_2",
    )?;
    let triple_collinear = collinear(&[d.clone(), o2.clone(), o3.clone()]);
    // assemble the full i=1 node list; with OO_1 = line(O_2, O_3) through D
    // the free nodes lambda_2 /\ OO_1 and lambda_3 /\ OO_1 both collapse
    // onto the intersection node D
    let rejection = match assemble_i1_nodes(params, &ell, &lam2, &lam3, o1, &o2, &o3, a11, a22, a33)
    {
        Ok(_) => {
            return Err(degenerate(
                "probe unexpectedly assembled a valid node set",
            ))
        }
        Err(msg) => msg,
    };
    Ok(DegenerateProbe {
        d,
        o2,
        o3,
        triple_collinear,
        rejection,
    })
}

#[allow(clippy::too_many_arguments)]
fn assemble_i1_nodes(
    params: &DegenerateProbeParams,
    ell: &Line,
    lam2: &Line,
    lam3: &Line,
    o1: &Point,
    o2: &Point,
    o3: &Point,
    a11: &Point,
    a22: &Point,
    a33: &Point,
) -> Result<NodeSet, String> {
    let oo1 = line_through(o2, o3).map_err(|e| e.to_string())?;
    let oo2 = line_through(o1, o3).map_err(|e| e.to_string())?;
    let oo3 = line_through(o1, o2).map_err(|e| e.to_string())?;
    let lam1 = line_with_direction(a11, &params.lambda1_direction.0, &params.lambda1_direction.1)
        .map_err(|e| e.to_string())?;
    let b = intersection_point(ell, &oo1).ok_or("l and OO_1 parallel")?;
    let lam4 = line_with_direction(&b, &params.lambda4_direction.0, &params.lambda4_direction.1)
        .map_err(|e| e.to_string())?;
    let lambdas = [lam1, lam2.clone(), lam3.clone(), lam4.clone()];
    let mut nodes = Vec::new();
    for i in 0..4 {
        for j in 0..i {
            nodes.push(intersection_point(&lambdas[j], &lambdas[i]).ok_or("parallel maximal lines")?);
        }
    }
    let oo = [oo1, oo2, oo3];
    for (li, special) in [(0usize, a11), (1, a22), (2, a33)] {
        nodes.push(special.clone());
        // lambda_i skips the OO line of the same index; its special node
        // stands in for that intersection
        for (oi, oline) in oo.iter().enumerate() {
            if oi == li {
                continue;
            }
            nodes.push(intersection_point(&lambdas[li], oline).ok_or("parallel to an OO line")?);
        }
    }
    for oline in &oo {
        nodes.push(intersection_point(&lam4, oline).ok_or("lambda_4 parallel to an OO line")?);
    }
    nodes.extend([o1.clone(), o2.clone(), o3.clone()]);
    NodeSet::new(5, nodes).map_err(|e| e.to_string())
}

/// Extends Y* or X* (or an already-modified descendant) by m pairs of
/// maximal lines meeting on the distinguished line, preserving its
/// non-usage while raising sigma back to 2 at the larger degree.
pub fn m_modification(
    base_set: &NodeSet,
    base_blueprint: &LatticeBlueprint,
    pairs: &[(Line, Line)],
) -> Result<(NodeSet, Line, LatticeBlueprint), LatticeError> {
    let distinguished = base_blueprint
        .distinguished_line
        .clone()
        .ok_or_else(|| degenerate("base blueprint has no distinguished line"))?;
    let y_family = matches!(
        root_family(&base_blueprint.family),
        FamilyTag::YStar
    );
    if !matches!(
        root_family(&base_blueprint.family),
        FamilyTag::YStar | FamilyTag::XStar
    ) {
        return Err(degenerate("base must be a Y* or X* family set"));
    }
    let m = pairs.len();
    if m == 0 {
        return Ok((
            base_set.clone(),
            distinguished,
            base_blueprint.clone(),
        ));
    }
    let old_maximal = base_blueprint.construction_lines.clone();
    let o_lines = base_blueprint.o_lines.clone();
    let mut all_maximal = old_maximal.clone();
    let mut meet_points = Vec::new();
    for (p, q) in pairs {
        let b = meet(p, q, "pair lines")?;
        if !incident(&distinguished, &b) {
            return Err(degenerate(
                "pair lines do not meet on the distinguished line",
            ));
        }
        if base_set.index_of(&b).is_some() || meet_points.contains(&b) {
            return Err(degenerate("pair meeting point collides with a node"));
        }
        meet_points.push(b);
        all_maximal.push(p.clone());
        all_maximal.push(q.clone());
    }
    // condition (i): strict general position of all maximal lines
    if !general_position(&all_maximal).map_err(|_| degenerate("duplicate maximal line"))? {
        return Err(degenerate(
            "maximal lines are parallel or concurrent (condition i)",
        ));
    }
    // condition (ii): the maximal lines hit the O/OO lines at distinct points
    let mut hits = Vec::new();
    for lam in &all_maximal {
        for ol in &o_lines {
            hits.push(meet(lam, ol, "maximal line and O-line")?);
        }
    }
    dedupe_check(&hits).map_err(|_| {
        degenerate("coincident intersections with the O/OO lines (condition ii)")
    })?;

    let new_degree = base_set.degree() + 2 * m;
    let mut nodes = Vec::new();
    for i in 0..all_maximal.len() {
        for j in 0..i {
            nodes.push(meet(&all_maximal[j], &all_maximal[i], "maximal crossings")?);
        }
    }
    // outside nodes survive unchanged
    nodes.extend(base_blueprint.outside_nodes.iter().cloned());
    // old free nodes survive unchanged
    let mut free = base_blueprint.free_nodes.clone();
    // each new line takes free nodes on the O/OO lines: two of the three for
    // the Y* family, all three for the X* family
    for (pi, (p, q)) in pairs.iter().enumerate() {
        for (which, l) in [p, q].into_iter().enumerate() {
            let skip = if y_family {
                Some((2 * pi + which) % 3)
            } else {
                None
            };
            for (oi, ol) in o_lines.iter().enumerate() {
                if Some(oi) == skip {
                    continue;
                }
                free.push(meet(l, ol, "new free node")?);
            }
        }
    }
    nodes.extend(free.iter().cloned());
    let set =
        NodeSet::new(new_degree, nodes).map_err(|e| degenerate(e.to_string()))?;
    let expected_k = base_set.nodes_on_line(&distinguished).len() + meet_points.len();
    validate_star(&set, &distinguished, expected_k, &all_maximal)?;
    let mut bp = LatticeBlueprint::bare(
        FamilyTag::Modified(Box::new(base_blueprint.family.clone())),
        all_maximal,
    );
    bp.free_nodes = free;
    bp.outside_nodes = base_blueprint.outside_nodes.clone();
    bp.o_lines = o_lines;
    bp.special_nodes = base_blueprint.special_nodes.clone();
    bp.distinguished_line = Some(distinguished.clone());
    bp.modification_count = base_blueprint.modification_count + m;
    Ok((set, distinguished, bp))
}

fn root_family(f: &FamilyTag) -> &FamilyTag {
    match f {
        FamilyTag::Modified(inner) => root_family(inner),
        other => other,
    }
}

/// Sanity helper shared by tests: the expected node-set size at a degree.
pub fn expected_size(n: usize) -> usize {
    space_dimension(n)
}

/// Distinct intersection points of a line with a set of lines, as a set.
pub fn distinct_hits(l: &Line, lines: &[Line]) -> BTreeSet<Point> {
    lines
        .iter()
        .filter_map(|other| intersection_point(l, other))
        .collect()
}
