//! Node sets of degree n: validation, poisedness, exact fundamental
//! polynomials, and node-line / maximal-line enumeration.

use crate::geom::{incident, line_through, Line, Point, Rat};
use crate::matrix::{bareiss_determinant, invert};
use crate::poly::{monomials, BivariatePolynomial};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NodeSetError {
    #[error("degree {degree} needs {expected} nodes, got {got}")]
    WrongCardinality {
        degree: usize,
        expected: usize,
        got: usize,
    },
    #[error("duplicate node at index {0}")]
    DuplicatePoint(usize),
    #[error("node set is not poised")]
    NotPoised,
}

/// dim Pi_n = (n+2 choose 2)
pub fn space_dimension(n: usize) -> usize {
    (n + 2) * (n + 1) / 2
}

pub fn binomial2(s: usize) -> usize {
    if s < 2 {
        0
    } else {
        s * (s - 1) / 2
    }
}

/// An ordered set of (n+2 choose 2) distinct nodes with degree n.
/// Node identity is by index in the ordered sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeSet {
    degree: usize,
    nodes: Vec<Point>,
}

/// A line through at least two nodes, with its exact incidence record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeLine {
    pub line: Line,
    pub node_count: usize,
    pub incident_nodes: Vec<usize>,
}

impl NodeSet {
    pub fn new(degree: usize, nodes: Vec<Point>) -> Result<Self, NodeSetError> {
        let expected = space_dimension(degree);
        if nodes.len() != expected {
            return Err(NodeSetError::WrongCardinality {
                degree,
                expected,
                got: nodes.len(),
            });
        }
        for i in 0..nodes.len() {
            for j in 0..i {
                if nodes[i] == nodes[j] {
                    return Err(NodeSetError::DuplicatePoint(i));
                }
            }
        }
        Ok(NodeSet { degree, nodes })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, idx: usize) -> &Point {
        &self.nodes[idx]
    }

    pub fn nodes(&self) -> &[Point] {
        &self.nodes
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.nodes.iter().position(|q| q == p)
    }

    /// Indices of the nodes lying on the given line.
    pub fn nodes_on_line(&self, l: &Line) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&i| incident(l, &self.nodes[i]))
            .collect()
    }

    /// The collocation matrix: rows are nodes, columns are the graded-lex
    /// monomials x^i y^j, i+j <= n.
    fn collocation_matrix(&self) -> Vec<Vec<Rat>> {
        let mons = monomials(self.degree);
        self.nodes
            .iter()
            .map(|p| {
                mons.iter()
                    .map(|&(i, j)| p.x.clone().pow(i as i32) * p.y.clone().pow(j as i32))
                    .collect()
            })
            .collect()
    }

    /// Poisedness via a fraction-free determinant of the integer-cleared
    /// collocation matrix.
    pub fn is_poised(&self) -> bool {
        let m = self.collocation_matrix();
        let cleared: Vec<Vec<BigInt>> = m
            .iter()
            .map(|row| {
                let lcm = row
                    .iter()
                    .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                row.iter()
                    .map(|v| (v * Rat::from(lcm.clone())).to_integer())
                    .collect()
            })
            .collect();
        !bareiss_determinant(cleared).is_zero()
    }

    /// All fundamental polynomials at once, by inverting the collocation
    /// matrix: column A of the inverse holds the grlex coefficients of the
    /// fundamental polynomial of node A.
    pub fn fundamental_polynomials(&self) -> Result<Vec<BivariatePolynomial>, NodeSetError> {
        let inv = invert(&self.collocation_matrix()).ok_or(NodeSetError::NotPoised)?;
        let n = self.nodes.len();
        Ok((0..n)
            .map(|a| {
                let col: Vec<Rat> = (0..n).map(|m| inv[m][a].clone()).collect();
                BivariatePolynomial::from_grlex(self.degree, &col)
            })
            .collect())
    }

    pub fn fundamental_polynomial(&self, idx: usize) -> Result<BivariatePolynomial, NodeSetError> {
        Ok(self.fundamental_polynomials()?.remove(idx))
    }

    /// Every distinct line through at least two nodes, with exact incidence
    /// counts, in canonical line order.
    pub fn node_lines(&self) -> Vec<NodeLine> {
        let mut seen: BTreeMap<Line, ()> = BTreeMap::new();
        for i in 0..self.nodes.len() {
            for j in 0..i {
                let l = line_through(&self.nodes[i], &self.nodes[j]).expect("nodes distinct");
                seen.entry(l).or_insert(());
            }
        }
        seen.into_keys()
            .map(|line| {
                let incident_nodes = self.nodes_on_line(&line);
                NodeLine {
                    node_count: incident_nodes.len(),
                    line,
                    incident_nodes,
                }
            })
            .collect()
    }

    /// All (n+1)-node lines; their count is mu(X).
    pub fn maximal_lines(&self) -> Vec<Line> {
        self.node_lines()
            .into_iter()
            .filter(|nl| nl.node_count == self.degree + 1)
            .map(|nl| nl.line)
            .collect()
    }

    pub fn mu(&self) -> usize {
        self.maximal_lines().len()
    }

    /// Removes all nodes on the given lines and re-wraps the remainder as a
    /// node set of the given lower degree.
    pub fn remove_lines(&self, lines: &[Line], new_degree: usize) -> Result<NodeSet, NodeSetError> {
        let remaining: Vec<Point> = self
            .nodes
            .iter()
            .filter(|p| !lines.iter().any(|l| incident(l, p)))
            .cloned()
            .collect();
        NodeSet::new(new_degree, remaining)
    }

    /// The principal lattice PL_n on the integer triangle i + j <= n.
    pub fn pl(n: usize) -> NodeSet {
        let mut nodes = Vec::new();
        for i in 0..=(n as i64) {
            for j in 0..=(n as i64 - i) {
                nodes.push(Point::from_ints(i, j));
            }
        }
        NodeSet::new(n, nodes).expect("PL_n is always a valid node set")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{rat, rat_int};
    use num_traits::Zero;

    pub fn pl(n: usize) -> NodeSet {
        NodeSet::pl(n)
    }

    fn triangle() -> NodeSet {
        NodeSet::new(
            1,
            vec![
                Point::from_ints(0, 0),
                Point::from_ints(2, 0),
                Point::from_ints(0, 2),
            ],
        )
        .unwrap()
    }

    #[test]
    fn construction_validation() {
        assert!(triangle().is_poised());
        assert_eq!(pl(2).len(), 6);
        let err = NodeSet::new(2, vec![Point::from_ints(0, 0); 5]).unwrap_err();
        assert!(matches!(err, NodeSetError::WrongCardinality { .. }));
        let err = NodeSet::new(
            1,
            vec![
                Point::from_ints(0, 0),
                Point::from_ints(0, 0),
                Point::from_ints(1, 0),
            ],
        )
        .unwrap_err();
        assert_eq!(err, NodeSetError::DuplicatePoint(1));
    }

    #[test]
    fn poisedness() {
        assert!(pl(2).is_poised());
        assert!(triangle().is_poised());
        // degree 2 with 4 collinear nodes is not poised
        let bad = NodeSet::new(
            2,
            vec![
                Point::from_ints(0, 0),
                Point::from_ints(1, 0),
                Point::from_ints(2, 0),
                Point::from_ints(3, 0),
                Point::from_ints(0, 1),
                Point::from_ints(0, 2),
            ],
        )
        .unwrap();
        assert!(!bad.is_poised());
    }

    #[test]
    fn fundamental_polynomials_pl2() {
        let x = pl(2);
        let fps = x.fundamental_polynomials().unwrap();
        // Kronecker property
        for (a, fp) in fps.iter().enumerate() {
            for (b, node) in x.nodes().iter().enumerate() {
                let expect = if a == b { rat_int(1) } else { rat_int(0) };
                assert_eq!(fp.evaluate(node), expect);
            }
        }
        // node (0,0): (x+y-1)(x+y-2)/2
        let idx = x.index_of(&Point::from_ints(0, 0)).unwrap();
        let expected = BivariatePolynomial::from_line(&Line::new(1, 1, -1).unwrap())
            .multiply_by_line(&Line::new(1, 1, -2).unwrap())
            .scale(&rat(1, 2));
        assert_eq!(fps[idx], expected);
        // node (1,0): -x(x+y-2)
        let idx = x.index_of(&Point::from_ints(1, 0)).unwrap();
        let expected = BivariatePolynomial::from_line(&Line::new(1, 0, 0).unwrap())
            .multiply_by_line(&Line::new(1, 1, -2).unwrap())
            .scale(&rat_int(-1));
        assert_eq!(fps[idx], expected);
    }

    #[test]
    fn fundamental_polynomial_triangle() {
        let t = triangle();
        let idx = t.index_of(&Point::from_ints(0, 0)).unwrap();
        let fp = t.fundamental_polynomial(idx).unwrap();
        // 1 - x/2 - y/2
        assert_eq!(fp.coeff(0, 0), rat_int(1));
        assert_eq!(fp.coeff(1, 0), rat(-1, 2));
        assert_eq!(fp.coeff(0, 1), rat(-1, 2));
    }

    #[test]
    fn partition_of_unity() {
        let x = pl(3);
        let sum = x
            .fundamental_polynomials()
            .unwrap()
            .into_iter()
            .fold(BivariatePolynomial::zero(), |acc, p| acc.add(&p));
        assert_eq!(sum, BivariatePolynomial::constant(rat_int(1)));
    }

    #[test]
    fn node_lines_pl2() {
        let x = pl(2);
        let nls = x.node_lines();
        let three: Vec<_> = nls.iter().filter(|nl| nl.node_count == 3).collect();
        let two: Vec<_> = nls.iter().filter(|nl| nl.node_count == 2).collect();
        assert_eq!(three.len(), 3);
        assert_eq!(two.len(), 6);
        let mut maxl = x.maximal_lines();
        maxl.sort();
        assert_eq!(
            maxl,
            vec![
                Line::new(0, 1, 0).unwrap(),
                Line::new(1, 0, 0).unwrap(),
                Line::new(1, 1, -2).unwrap(),
            ]
        );
        assert_eq!(x.mu(), 3);
    }

    #[test]
    fn no_overloaded_lines_when_poised() {
        let x = pl(3);
        assert!(x
            .node_lines()
            .iter()
            .all(|nl| nl.node_count <= x.degree() + 1));
    }

    #[test]
    fn remove_maximal_line() {
        let x = pl(2);
        let y = x
            .remove_lines(&[Line::new(1, 1, -2).unwrap()], 1)
            .unwrap();
        assert_eq!(y.len(), 3);
        assert!(y.is_poised());
        assert!(y.index_of(&Point::from_ints(2, 0)).is_none());
    }

    #[test]
    fn dimension_helpers() {
        assert_eq!(space_dimension(1), 3);
        assert_eq!(space_dimension(5), 21);
        assert_eq!(binomial2(0), 0);
        assert_eq!(binomial2(1), 0);
        assert_eq!(binomial2(4), 6);
        assert!(BigInt::zero().is_zero());
    }
}
