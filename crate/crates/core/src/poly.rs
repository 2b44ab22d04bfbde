//! Dense bivariate polynomials of bounded total degree over the rationals.
//!
//! Storage is a triangular coefficient table c_ij for i+j <= degree_bound.
//! Instances stay tiny (degree <= 7 means at most 36 coefficients), so
//! everything is plain exact arithmetic with no sparsity tricks.

use crate::geom::{rat_to_string, Line, Point, Rat};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("the line does not divide the polynomial")]
    NotDivisible,
    #[error("cannot divide the zero polynomial")]
    ZeroPolynomial,
}

/// Monomial exponents (i, j) for x^i y^j with i+j <= n, in graded
/// lexicographic order (by total degree, then by descending x-exponent).
/// This fixed order underlies collocation matrices and textual rendering.
pub fn monomials(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity((n + 1) * (n + 2) / 2);
    for d in 0..=n {
        for i in (0..=d).rev() {
            out.push((i, d - i));
        }
    }
    out
}

/// A bivariate polynomial with rational coefficients, total degree bounded
/// by `degree_bound`. The stored bound is trimmed to the actual degree.
#[derive(Debug, Clone)]
pub struct BivariatePolynomial {
    degree_bound: usize,
    /// coeffs[i][j] is the coefficient of x^i y^j; row i has degree_bound+1-i entries.
    coeffs: Vec<Vec<Rat>>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        BivariatePolynomial {
            degree_bound: 0,
            coeffs: vec![vec![Rat::zero()]],
        }
    }

    pub fn constant(c: Rat) -> Self {
        BivariatePolynomial {
            degree_bound: 0,
            coeffs: vec![vec![c]],
        }
    }

    pub fn with_bound(n: usize) -> Self {
        let coeffs = (0..=n).map(|i| vec![Rat::zero(); n + 1 - i]).collect();
        BivariatePolynomial {
            degree_bound: n,
            coeffs,
        }
    }

    /// Builds a polynomial from coefficients listed in graded-lex monomial order.
    pub fn from_grlex(n: usize, values: &[Rat]) -> Self {
        let mons = monomials(n);
        assert_eq!(mons.len(), values.len());
        let mut p = Self::with_bound(n);
        for ((i, j), v) in mons.into_iter().zip(values.iter()) {
            p.coeffs[i][j] = v.clone();
        }
        p.trim();
        p
    }

    /// The degree-1 polynomial a x + b y + c of a line.
    pub fn from_line(l: &Line) -> Self {
        let mut p = Self::with_bound(1);
        p.coeffs[1][0] = Rat::from(l.a().clone());
        p.coeffs[0][1] = Rat::from(l.b().clone());
        p.coeffs[0][0] = Rat::from(l.c().clone());
        p.trim();
        p
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn coeff(&self, i: usize, j: usize) -> Rat {
        if i + j <= self.degree_bound {
            self.coeffs[i][j].clone()
        } else {
            Rat::zero()
        }
    }

    pub fn set_coeff(&mut self, i: usize, j: usize, v: Rat) {
        assert!(i + j <= self.degree_bound, "exponent outside degree bound");
        self.coeffs[i][j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|row| row.iter().all(|c| c.is_zero()))
    }

    /// Shrinks the stored bound to the max total degree of a nonzero term.
    pub fn trim(&mut self) {
        let mut deg = 0;
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    deg = deg.max(i + j);
                }
            }
        }
        if deg < self.degree_bound {
            self.coeffs.truncate(deg + 1);
            for (i, row) in self.coeffs.iter_mut().enumerate() {
                row.truncate(deg + 1 - i);
            }
            self.degree_bound = deg;
        }
    }

    pub fn evaluate(&self, pt: &Point) -> Rat {
        // Horner in x over Horner-in-y row values.
        let mut acc = Rat::zero();
        for row in self.coeffs.iter().rev() {
            let mut row_val = Rat::zero();
            for c in row.iter().rev() {
                row_val = row_val * &pt.y + c;
            }
            acc = acc * &pt.x + row_val;
        }
        acc
    }

    pub fn scale(&self, s: &Rat) -> Self {
        let mut out = self.clone();
        for row in out.coeffs.iter_mut() {
            for c in row.iter_mut() {
                *c = c.clone() * s;
            }
        }
        out.trim();
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.degree_bound.max(other.degree_bound);
        let mut out = Self::with_bound(n);
        for i in 0..=n {
            for j in 0..=(n - i) {
                out.coeffs[i][j] = self.coeff(i, j) + other.coeff(i, j);
            }
        }
        out.trim();
        out
    }

    /// Product with the linear form of a line; raises the bound by one.
    pub fn multiply_by_line(&self, l: &Line) -> Self {
        let n = self.degree_bound + 1;
        let a = Rat::from(l.a().clone());
        let b = Rat::from(l.b().clone());
        let c = Rat::from(l.c().clone());
        let mut out = Self::with_bound(n);
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                out.coeffs[i + 1][j] = out.coeffs[i + 1][j].clone() + v * &a;
                out.coeffs[i][j + 1] = out.coeffs[i][j + 1].clone() + v * &b;
                out.coeffs[i][j] = out.coeffs[i][j].clone() + v * &c;
            }
        }
        out.trim();
        out
    }

    /// Exact division by the linear form of a line.
    ///
    /// Univariate long division in x when a != 0 (coefficients in Q[y]),
    /// otherwise in y; divisible iff the remainder vanishes identically.
    pub fn divide_by_line(&self, l: &Line) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if !l.a().is_zero() {
            self.divide_main_x(l)
        } else {
            // a = 0, so b != 0: swap the roles of x and y
            let swapped = self.swap_vars();
            let lswap = Line::from_bigints(l.b().clone(), l.a().clone(), l.c().clone())
                .expect("b nonzero");
            let q = swapped.divide_main_x(&lswap)?;
            Ok(q.swap_vars())
        }
    }

    fn swap_vars(&self) -> Self {
        let n = self.degree_bound;
        let mut out = Self::with_bound(n);
        for i in 0..=n {
            for j in 0..=(n - i) {
                out.coeffs[j][i] = self.coeffs[i][j].clone();
            }
        }
        out.trim();
        out
    }

    /// Division by a x + (b y + c), a != 0, treating y as a parameter.
    fn divide_main_x(&self, l: &Line) -> Result<Self, PolyError> {
        let n = self.degree_bound;
        let a = Rat::from(l.a().clone());
        let b = Rat::from(l.b().clone());
        let c = Rat::from(l.c().clone());
        if n == 0 {
            return Err(PolyError::NotDivisible);
        }
        // rows[i] = P_i(y), generous width so the L(y)*Q_i products fit
        let width = n + 2;
        let mut rows: Vec<Vec<Rat>> = (0..=n)
            .map(|i| {
                let mut r = vec![Rat::zero(); width];
                for (j, v) in self.coeffs[i].iter().enumerate() {
                    r[j] = v.clone();
                }
                r
            })
            .collect();
        let mut quot: Vec<Vec<Rat>> = vec![vec![Rat::zero(); width]; n];
        for i in (1..=n).rev() {
            for j in 0..width {
                quot[i - 1][j] = &rows[i][j] / &a;
            }
            // rows[i-1] -= (b y + c) * quot[i-1]
            for j in 0..width {
                let q = quot[i - 1][j].clone();
                if q.is_zero() {
                    continue;
                }
                rows[i - 1][j] = &rows[i - 1][j] - &q * &c;
                if j + 1 < width {
                    rows[i - 1][j + 1] = &rows[i - 1][j + 1] - &q * &b;
                }
            }
        }
        if rows[0].iter().any(|r| !r.is_zero()) {
            return Err(PolyError::NotDivisible);
        }
        let mut out = Self::with_bound(n - 1);
        for i in 0..n {
            for (j, v) in quot[i].iter().enumerate() {
                if !v.is_zero() {
                    assert!(i + j <= n - 1, "quotient exceeds expected degree");
                    out.coeffs[i][j] = v.clone();
                }
            }
        }
        out.trim();
        Ok(out)
    }

    /// If the polynomial is linear (degree exactly 1), returns its canonical
    /// line and the rational scale such that scale * line = self.
    pub fn as_line(&self) -> Option<(Line, Rat)> {
        let mut t = self.clone();
        t.trim();
        if t.degree_bound != 1 {
            return None;
        }
        let a = t.coeff(1, 0);
        let b = t.coeff(0, 1);
        let c = t.coeff(0, 0);
        let line = Line::from_rationals(&a, &b, &c).ok()?;
        // recover the scale from the leading nonzero coefficient
        let scale = if !line.a().is_zero() {
            a / Rat::from(line.a().clone())
        } else {
            b / Rat::from(line.b().clone())
        };
        Some((line, scale))
    }
}

impl PartialEq for BivariatePolynomial {
    fn eq(&self, other: &Self) -> bool {
        let n = self.degree_bound.max(other.degree_bound);
        for i in 0..=n {
            for j in 0..=(n - i) {
                if self.coeff(i, j) != other.coeff(i, j) {
                    return false;
                }
            }
        }
        true
    }
}

impl Eq for BivariatePolynomial {}

impl fmt::Display for BivariatePolynomial {
    /// Terms in graded-lexicographic order, rationals as "p/q".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, j) in monomials(self.degree_bound) {
            let c = self.coeff(i, j);
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mon = match (i, j) {
                (0, 0) => String::new(),
                (i, 0) if i == 1 => "x".to_string(),
                (i, 0) => format!("x^{}", i),
                (0, j) if j == 1 => "y".to_string(),
                (0, j) => format!("y^{}", j),
                (i, j) => {
                    let xs = if i == 1 { "x".to_string() } else { format!("x^{}", i) };
                    let ys = if j == 1 { "y".to_string() } else { format!("y^{}", j) };
                    format!("{}*{}", xs, ys)
                }
            };
            if mon.is_empty() {
                write!(f, "{}", rat_to_string(&c))?;
            } else if c == BigRational::one() {
                write!(f, "{}", mon)?;
            } else {
                write!(f, "{}*{}", rat_to_string(&c), mon)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{rat, rat_int, Point};

    fn line(a: i64, b: i64, c: i64) -> Line {
        Line::new(a, b, c).unwrap()
    }

    #[test]
    fn evaluate_basic() {
        // x + y - 2 at (1,1)
        let p = BivariatePolynomial::from_line(&line(1, 1, -2));
        assert_eq!(p.evaluate(&Point::from_ints(1, 1)), rat_int(0));
        // (x+y-1)(x+y-2)/2 at (0,0) = 1
        let q = BivariatePolynomial::from_line(&line(1, 1, -1))
            .multiply_by_line(&line(1, 1, -2))
            .scale(&rat(1, 2));
        assert_eq!(q.evaluate(&Point::from_ints(0, 0)), rat_int(1));
        assert_eq!(
            BivariatePolynomial::zero().evaluate(&Point::from_ints(7, -3)),
            rat_int(0)
        );
    }

    #[test]
    fn multiply_basic() {
        let one = BivariatePolynomial::constant(rat_int(1));
        let p = one.multiply_by_line(&line(1, -1, 0));
        assert_eq!(p, BivariatePolynomial::from_line(&line(1, -1, 0)));

        let x = BivariatePolynomial::from_line(&line(1, 0, 0));
        let xy = x.multiply_by_line(&line(0, 1, 0));
        assert_eq!(xy.coeff(1, 1), rat_int(1));
        assert_eq!(xy.degree_bound(), 2);

        // (x+y-1)(x+y-2) = x^2 + 2xy + y^2 - 3x - 3y + 2
        let p = BivariatePolynomial::from_line(&line(1, 1, -1)).multiply_by_line(&line(1, 1, -2));
        assert_eq!(p.coeff(2, 0), rat_int(1));
        assert_eq!(p.coeff(1, 1), rat_int(2));
        assert_eq!(p.coeff(0, 2), rat_int(1));
        assert_eq!(p.coeff(1, 0), rat_int(-3));
        assert_eq!(p.coeff(0, 1), rat_int(-3));
        assert_eq!(p.coeff(0, 0), rat_int(2));
    }

    #[test]
    fn divide_basic() {
        let p = BivariatePolynomial::from_line(&line(1, 1, -1)).multiply_by_line(&line(1, 1, -2));
        let q = p.divide_by_line(&line(1, 1, -1)).unwrap();
        assert_eq!(q, BivariatePolynomial::from_line(&line(1, 1, -2)));

        // x^2 + y^2 not divisible by x + y (remainder 2y^2)
        let mut s = BivariatePolynomial::with_bound(2);
        s.set_coeff(2, 0, rat_int(1));
        s.set_coeff(0, 2, rat_int(1));
        assert_eq!(s.divide_by_line(&line(1, 1, 0)), Err(PolyError::NotDivisible));

        // xy / x = y
        let x = BivariatePolynomial::from_line(&line(1, 0, 0));
        let xy = x.multiply_by_line(&line(0, 1, 0));
        let y = xy.divide_by_line(&line(1, 0, 0)).unwrap();
        assert_eq!(y, BivariatePolynomial::from_line(&line(0, 1, 0)));

        assert_eq!(
            BivariatePolynomial::zero().divide_by_line(&line(1, 0, 0)),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn divide_by_horizontal_line() {
        // (y - 3)(x + 2y - 1) split off y - 3 (a = 0 path)
        let p = BivariatePolynomial::from_line(&line(0, 1, -3)).multiply_by_line(&line(1, 2, -1));
        let q = p.divide_by_line(&line(0, 1, -3)).unwrap();
        assert_eq!(q, BivariatePolynomial::from_line(&line(1, 2, -1)));
    }

    #[test]
    fn as_line_recovers_scale() {
        let p = BivariatePolynomial::from_line(&line(1, 1, -2)).scale(&rat(-3, 4));
        let (l, s) = p.as_line().unwrap();
        assert_eq!(l, line(1, 1, -2));
        assert_eq!(s, rat(-3, 4));
    }

    #[test]
    fn display_grlex() {
        let p = BivariatePolynomial::from_line(&line(1, 1, -1)).multiply_by_line(&line(1, 1, -2));
        assert_eq!(p.to_string(), "2 + -3*x + -3*y + x^2 + 2*x*y + y^2");
    }
}
