//! GC certification and line-usage queries.
//!
//! A node uses a line when the line's linear form divides the node's
//! fundamental polynomial; a set is GC when every fundamental polynomial
//! splits into linear factors. Usage is always decided by divisibility of
//! the exactly-solved fundamental polynomial; the reduction calculus is a
//! separate, independent oracle.

use crate::geom::{incident, Line, Rat};
use crate::nodeset::{NodeLine, NodeSet, NodeSetError};
use crate::poly::BivariatePolynomial;
use num_traits::One;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GcError {
    #[error(transparent)]
    NodeSet(#[from] NodeSetError),
    #[error("line passes through {got} nodes; not a node line")]
    NotANodeLine { got: usize },
    #[error("node {node} has no node-line split")]
    NotSplit { node: usize },
}

/// A complete linear factorization of one fundamental polynomial:
/// scale * product(lines) equals the polynomial exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub node: usize,
    pub lines: Vec<Line>,
    pub scale: Rat,
}

impl Factorization {
    pub fn product(&self) -> BivariatePolynomial {
        let mut p = BivariatePolynomial::constant(self.scale.clone());
        for l in &self.lines {
            p = p.multiply_by_line(l);
        }
        p
    }
}

/// X_l: the node indices whose fundamental polynomial the line divides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageSet {
    pub line: Line,
    pub users: BTreeSet<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeTag {
    GeneralizedPrincipal,
    NMinus1Max,
    NMax,
    CarnicerGasca,
    ChungYao,
    Unclassified,
}

/// mu-based classification; `all_tags` records every family whose
/// characteristic count coincides with mu at this degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeClass {
    pub mu: usize,
    pub tag: LatticeTag,
    pub all_tags: Vec<LatticeTag>,
}

/// Cached per-set analysis: fundamental polynomials, node lines and maximal
/// lines computed once, shared by every usage query.
#[derive(Debug, Clone)]
pub struct GcAnalysis {
    set: NodeSet,
    fundamentals: Vec<BivariatePolynomial>,
    node_lines: Vec<NodeLine>,
    maximal_lines: Vec<Line>,
}

impl GcAnalysis {
    pub fn new(set: NodeSet) -> Result<Self, GcError> {
        let fundamentals = set.fundamental_polynomials()?;
        let node_lines = set.node_lines();
        let maximal_lines = node_lines
            .iter()
            .filter(|nl| nl.node_count == set.degree() + 1)
            .map(|nl| nl.line.clone())
            .collect();
        Ok(GcAnalysis {
            set,
            fundamentals,
            node_lines,
            maximal_lines,
        })
    }

    pub fn set(&self) -> &NodeSet {
        &self.set
    }

    pub fn fundamental(&self, node: usize) -> &BivariatePolynomial {
        &self.fundamentals[node]
    }

    pub fn node_lines(&self) -> &[NodeLine] {
        &self.node_lines
    }

    pub fn maximal_lines(&self) -> &[Line] {
        &self.maximal_lines
    }

    pub fn mu(&self) -> usize {
        self.maximal_lines.len()
    }

    pub fn node_line(&self, l: &Line) -> Option<&NodeLine> {
        self.node_lines.iter().find(|nl| &nl.line == l)
    }

    /// k, the number of nodes the line passes through; errors unless k >= 2.
    pub fn line_node_count(&self, l: &Line) -> Result<usize, GcError> {
        let k = self.set.nodes_on_line(l).len();
        if k < 2 {
            Err(GcError::NotANodeLine { got: k })
        } else {
            Ok(k)
        }
    }

    /// True iff node A uses the line (divisibility of the fundamental polynomial).
    pub fn uses_line(&self, node: usize, l: &Line) -> bool {
        self.fundamentals[node].divide_by_line(l).is_ok()
    }

    /// X_l by testing every node.
    pub fn used_nodes(&self, l: &Line) -> UsageSet {
        let users = (0..self.set.len())
            .filter(|&a| self.uses_line(a, l))
            .collect();
        UsageSet {
            line: l.clone(),
            users,
        }
    }

    /// sigma = 2k - n - 1 for a k-node line (may be negative).
    pub fn sigma(&self, l: &Line) -> Result<i64, GcError> {
        let k = self.line_node_count(l)? as i64;
        Ok(2 * k - self.set.degree() as i64 - 1)
    }

    /// Greedy-complete recursive split of one fundamental polynomial into
    /// node-line factors. Candidate factors are lines through at least two
    /// nodes, tried in canonical order; the final linear factor (if any) is
    /// absorbed directly from the residual quotient, so it need not be a
    /// node line. First complete split wins.
    pub fn factor_fundamental(&self, node: usize) -> Result<Factorization, GcError> {
        let p = &self.fundamentals[node];
        let mut chosen = Vec::new();
        if self.split_rec(node, p, &mut chosen) {
            // normalize the scale from the reassembled product
            let mut prod = BivariatePolynomial::constant(Rat::one());
            for l in &chosen {
                prod = prod.multiply_by_line(l);
            }
            let scale = leading_ratio(p, &prod);
            let f = Factorization {
                node,
                lines: chosen,
                scale,
            };
            debug_assert_eq!(f.product(), *p);
            debug_assert!(f.lines.iter().all(|l| !incident(l, self.set.node(node))));
            Ok(f)
        } else {
            Err(GcError::NotSplit { node })
        }
    }

    fn split_rec(&self, node: usize, q: &BivariatePolynomial, chosen: &mut Vec<Line>) -> bool {
        let deg = q.degree_bound();
        if deg == 0 {
            return true;
        }
        if deg == 1 {
            if let Some((line, _)) = q.as_line() {
                chosen.push(line);
                return true;
            }
            return false;
        }
        let pt = self.set.node(node);
        for nl in &self.node_lines {
            // a factor of p_A cannot pass through A, where p_A = 1
            if incident(&nl.line, pt) {
                continue;
            }
            if let Ok(rest) = q.divide_by_line(&nl.line) {
                chosen.push(nl.line.clone());
                if self.split_rec(node, &rest, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    /// True with a full certificate iff every node's fundamental polynomial
    /// splits. A NotSplit outcome certifies only "no node-line split"; lines
    /// through fewer than two nodes are not searched.
    pub fn certify_gc(&self) -> Result<Vec<Factorization>, GcError> {
        (0..self.set.len())
            .map(|a| self.factor_fundamental(a))
            .collect()
    }

    pub fn is_gc_set(&self) -> bool {
        self.certify_gc().is_ok()
    }

    /// mu-based classification per the five-family theorem. When counts
    /// coincide at small n, every consistent tag is recorded and the
    /// largest-mu family wins as primary.
    pub fn classify(&self) -> LatticeClass {
        let n = self.set.degree();
        let mu = self.mu();
        let mut all_tags = Vec::new();
        if n >= 1 && mu == n + 2 {
            all_tags.push(LatticeTag::ChungYao);
        }
        if n >= 2 && mu == n + 1 {
            all_tags.push(LatticeTag::CarnicerGasca);
        }
        if mu == 3 {
            all_tags.push(LatticeTag::GeneralizedPrincipal);
        }
        if n >= 3 && mu == n {
            all_tags.push(LatticeTag::NMax);
        }
        if n >= 4 && mu == n - 1 {
            all_tags.push(LatticeTag::NMinus1Max);
        }
        let tag = all_tags.first().copied().unwrap_or(LatticeTag::Unclassified);
        LatticeClass { mu, tag, all_tags }
    }
}

/// Ratio of the leading grlex coefficients of two proportional polynomials.
fn leading_ratio(target: &BivariatePolynomial, base: &BivariatePolynomial) -> Rat {
    let n = target.degree_bound();
    for (i, j) in crate::poly::monomials(n) {
        let b = base.coeff(i, j);
        if !num_traits::Zero::is_zero(&b) {
            return target.coeff(i, j) / b;
        }
    }
    Rat::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{rat, Point};
    use crate::nodeset::binomial2;

    fn pl(n: usize) -> NodeSet {
        let mut nodes = Vec::new();
        for i in 0..=(n as i64) {
            for j in 0..=(n as i64 - i) {
                nodes.push(Point::from_ints(i, j));
            }
        }
        NodeSet::new(n, nodes).unwrap()
    }

    fn line(a: i64, b: i64, c: i64) -> Line {
        Line::new(a, b, c).unwrap()
    }

    #[test]
    fn usage_in_pl2() {
        let an = GcAnalysis::new(pl(2)).unwrap();
        let origin = an.set().index_of(&Point::from_ints(0, 0)).unwrap();
        let center = an.set().index_of(&Point::from_ints(1, 1)).unwrap();
        assert!(an.uses_line(origin, &line(1, 1, -1)));
        assert!(!an.uses_line(center, &line(1, 1, -1)));

        // maximal line x+y=2: used by all three off-line nodes
        let u = an.used_nodes(&line(1, 1, -2));
        let coords: Vec<&Point> = u.users.iter().map(|&i| an.set().node(i)).collect();
        assert_eq!(
            coords,
            vec![
                &Point::from_ints(0, 0),
                &Point::from_ints(0, 1),
                &Point::from_ints(1, 0),
            ]
        );
        assert_eq!(u.users.len(), binomial2(3));

        // 2-node line x+y=1: only the origin
        let u = an.used_nodes(&line(1, 1, -1));
        assert_eq!(u.users.len(), 1);
        assert!(u.users.contains(&origin));
    }

    #[test]
    fn factorization_pl2() {
        let an = GcAnalysis::new(pl(2)).unwrap();
        let center = an.set().index_of(&Point::from_ints(1, 1)).unwrap();
        let f = an.factor_fundamental(center).unwrap();
        let mut ls = f.lines.clone();
        ls.sort();
        assert_eq!(ls, vec![line(0, 1, 0), line(1, 0, 0)]);
        assert_eq!(f.scale, rat(1, 1));
        assert_eq!(f.product(), *an.fundamental(center));
    }

    #[test]
    fn gc_certification() {
        for n in 1..=4 {
            let an = GcAnalysis::new(pl(n)).unwrap();
            let cert = an.certify_gc().unwrap();
            for f in &cert {
                assert_eq!(f.product(), *an.fundamental(f.node));
                assert_eq!(f.lines.len(), n);
            }
        }
    }

    #[test]
    fn generic_poised_set_is_not_gc() {
        // six generic rational points, poised but with an irreducible
        // degree-2 fundamental polynomial somewhere
        let x = NodeSet::new(
            2,
            vec![
                Point::from_ints(0, 0),
                Point::from_ints(1, 0),
                Point::from_ints(0, 1),
                Point::from_ints(2, 3),
                Point::from_ints(3, 1),
                Point::from_ints(5, 7),
            ],
        )
        .unwrap();
        assert!(x.is_poised());
        let an = GcAnalysis::new(x).unwrap();
        assert!(!an.is_gc_set());
    }

    #[test]
    fn sigma_arithmetic() {
        let an = GcAnalysis::new(pl(2)).unwrap();
        // maximal line, k = n+1 = 3 in degree 2: sigma = 3
        assert_eq!(an.sigma(&line(1, 1, -2)).unwrap(), 3);
        assert_eq!(an.sigma(&line(1, 1, -1)).unwrap(), 1);
        // line through fewer than 2 nodes
        assert!(matches!(
            an.sigma(&line(1, 1, -7)),
            Err(GcError::NotANodeLine { .. })
        ));
    }

    #[test]
    fn classify_pl() {
        let an = GcAnalysis::new(pl(3)).unwrap();
        let c = an.classify();
        assert_eq!(c.mu, 3);
        assert_eq!(c.tag, LatticeTag::GeneralizedPrincipal);
        // n=2: mu=3 coincides with GPL only (n+1=3 also matches CG)
        let an2 = GcAnalysis::new(pl(2)).unwrap();
        let c2 = an2.classify();
        assert_eq!(c2.mu, 3);
        assert_eq!(c2.tag, LatticeTag::CarnicerGasca);
        assert!(c2.all_tags.contains(&LatticeTag::GeneralizedPrincipal));
    }
}
