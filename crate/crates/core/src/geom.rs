//! Exact planar primitives: rational points and integer-coefficient lines
//! in canonical form, with incidence, intersection and position tests.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

/// Arbitrary-precision rational, always stored reduced with positive denominator.
pub type Rat = BigRational;

/// Shorthand for building a rational from machine integers.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(num: i64) -> Rat {
    Rat::from(BigInt::from(num))
}

/// Canonical "p/q" rendering; integers print without the denominator.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses "p" or "p/q" with arbitrary-precision components.
pub fn rat_from_str(s: &str) -> Result<Rat, GeomError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| GeomError::BadRational(s.to_string()))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| GeomError::BadRational(s.to_string()))?;
    if den.is_zero() {
        return Err(GeomError::BadRational(s.to_string()));
    }
    Ok(Rat::new(num, den))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeomError {
    #[error("cannot parse rational from {0:?}")]
    BadRational(String),
    #[error("the two points coincide")]
    IdenticalPoints,
    #[error("the two lines coincide")]
    IdenticalLines,
    #[error("line coefficients a and b are both zero")]
    DegenerateLine,
    #[error("duplicate line in input")]
    DuplicateLine,
}

/// A planar point with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Rat,
    pub y: Rat,
}

impl Point {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(rat_int(x), rat_int(y))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", rat_to_string(&self.x), rat_to_string(&self.y))
    }
}

/// The line a*x + b*y + c = 0 with integer coefficients in canonical form:
/// gcd(|a|,|b|,|c|) = 1 and the first nonzero coefficient positive.
/// Canonical form makes equal lines compare and hash equal, so lines can
/// serve as map keys.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Line {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl Line {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Self, GeomError> {
        Self::from_bigints(a.into(), b.into(), c.into())
    }

    pub fn from_bigints(a: BigInt, b: BigInt, c: BigInt) -> Result<Self, GeomError> {
        if a.is_zero() && b.is_zero() {
            return Err(GeomError::DegenerateLine);
        }
        let mut g = a.gcd(&b).gcd(&c);
        // sign fix: first nonzero of (a,b,c) must come out positive
        let lead = if !a.is_zero() { &a } else { &b };
        if lead.is_negative() {
            g = -g;
        }
        Ok(Line {
            a: &a / &g,
            b: &b / &g,
            c: &c / &g,
        })
    }

    /// Builds the canonical line from rational coefficients by clearing denominators.
    pub fn from_rationals(a: &Rat, b: &Rat, c: &Rat) -> Result<Self, GeomError> {
        let lcm = a.denom().lcm(b.denom()).lcm(c.denom());
        let scale = Rat::from(lcm);
        let ai = (a * &scale).to_integer();
        let bi = (b * &scale).to_integer();
        let ci = (c * &scale).to_integer();
        Self::from_bigints(ai, bi, ci)
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }
    pub fn b(&self) -> &BigInt {
        &self.b
    }
    pub fn c(&self) -> &BigInt {
        &self.c
    }

    /// a*x + b*y + c at the given point.
    pub fn eval(&self, p: &Point) -> Rat {
        Rat::from(self.a.clone()) * &p.x + Rat::from(self.b.clone()) * &p.y + Rat::from(self.c.clone())
    }

    pub fn coeff_triple(&self) -> (String, String, String) {
        (self.a.to_string(), self.b.to_string(), self.c.to_string())
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.a, self.b, self.c)
    }
}

/// The unique canonical line through two distinct points.
pub fn line_through(p: &Point, q: &Point) -> Result<Line, GeomError> {
    if p == q {
        return Err(GeomError::IdenticalPoints);
    }
    // (y_q - y_p) x - (x_q - x_p) y + (x_q y_p - x_p y_q) = 0
    let a = &q.y - &p.y;
    let b = &p.x - &q.x;
    let c = &q.x * &p.y - &p.x * &q.y;
    Line::from_rationals(&a, &b, &c)
}

pub fn incident(l: &Line, p: &Point) -> bool {
    l.eval(p).is_zero()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Intersection {
    Point(Point),
    Parallel,
}

/// Intersection of two distinct lines; `Parallel` when the direction
/// determinant vanishes.
pub fn intersect(l1: &Line, l2: &Line) -> Result<Intersection, GeomError> {
    if l1 == l2 {
        return Err(GeomError::IdenticalLines);
    }
    let det = l1.a() * l2.b() - l2.a() * l1.b();
    if det.is_zero() {
        return Ok(Intersection::Parallel);
    }
    // Cramer on  a1 x + b1 y = -c1 ;  a2 x + b2 y = -c2
    let x = Rat::new(l1.b() * l2.c() - l2.b() * l1.c(), det.clone());
    let y = Rat::new(l2.a() * l1.c() - l1.a() * l2.c(), det);
    Ok(Intersection::Point(Point::new(x, y)))
}

/// Intersection point of two lines known to be non-parallel; None if parallel
/// or identical. Convenience for lattice constructors.
pub fn intersection_point(l1: &Line, l2: &Line) -> Option<Point> {
    match intersect(l1, l2) {
        Ok(Intersection::Point(p)) => Some(p),
        _ => None,
    }
}

/// True iff no two lines are parallel and no three are concurrent.
pub fn general_position(lines: &[Line]) -> Result<bool, GeomError> {
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            if lines[i] == lines[j] {
                return Err(GeomError::DuplicateLine);
            }
        }
    }
    let mut points: Vec<Point> = Vec::new();
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            match intersect(&lines[i], &lines[j]).expect("distinct lines") {
                Intersection::Parallel => return Ok(false),
                Intersection::Point(p) => {
                    if points.contains(&p) {
                        // a repeated intersection point means three concurrent lines
                        return Ok(false);
                    }
                    points.push(p);
                }
            }
        }
    }
    Ok(true)
}

/// True iff all points lie on a single line. Fewer than three points are
/// trivially collinear.
pub fn collinear(points: &[Point]) -> bool {
    if points.len() < 3 {
        return true;
    }
    let mut it = points.iter();
    let first = it.next().unwrap();
    let second = match points.iter().skip(1).find(|p| *p != first) {
        Some(p) => p,
        None => return true,
    };
    let l = line_through(first, second).expect("distinct points");
    points.iter().all(|p| incident(&l, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_through_canonical() {
        let l = line_through(&Point::from_ints(0, 0), &Point::from_ints(1, 1)).unwrap();
        assert_eq!(l, Line::new(1, -1, 0).unwrap());
        let l = line_through(&Point::from_ints(1, 0), &Point::from_ints(0, 1)).unwrap();
        assert_eq!(l, Line::new(1, 1, -1).unwrap());
        let l = line_through(&Point::from_ints(0, 0), &Point::from_ints(0, 2)).unwrap();
        assert_eq!(l, Line::new(1, 0, 0).unwrap());
    }

    #[test]
    fn line_through_identical_points() {
        let p = Point::from_ints(2, 3);
        assert_eq!(line_through(&p, &p.clone()), Err(GeomError::IdenticalPoints));
    }

    #[test]
    fn incidence() {
        let l = Line::new(1, 1, -1).unwrap();
        assert!(incident(&l, &Point::from_ints(1, 0)));
        assert!(!incident(&l, &Point::from_ints(0, 0)));
        let v = Line::new(1, 0, 0).unwrap();
        assert!(incident(&v, &Point::new(rat_int(0), rat(5, 3))));
    }

    #[test]
    fn intersections() {
        let x_axis = Line::new(0, 1, 0).unwrap();
        let y_axis = Line::new(1, 0, 0).unwrap();
        assert_eq!(
            intersect(&y_axis, &x_axis).unwrap(),
            Intersection::Point(Point::from_ints(0, 0))
        );
        let l1 = Line::new(1, 1, -1).unwrap();
        let l2 = Line::new(1, 1, -2).unwrap();
        assert_eq!(intersect(&l1, &l2).unwrap(), Intersection::Parallel);
        let l3 = Line::new(1, -1, 0).unwrap();
        assert_eq!(
            intersect(&l2, &l3).unwrap(),
            Intersection::Point(Point::from_ints(1, 1))
        );
        assert_eq!(intersect(&l1, &l1.clone()), Err(GeomError::IdenticalLines));
    }

    #[test]
    fn general_position_cases() {
        let x0 = Line::new(1, 0, 0).unwrap();
        let y0 = Line::new(0, 1, 0).unwrap();
        let diag2 = Line::new(1, 1, -2).unwrap();
        let diag0 = Line::new(1, 1, 0).unwrap();
        let x1 = Line::new(1, 0, -1).unwrap();
        assert!(general_position(&[x0.clone(), y0.clone(), diag2]).unwrap());
        assert!(!general_position(&[x0.clone(), y0.clone(), diag0]).unwrap());
        assert!(!general_position(&[x0.clone(), x1, y0]).unwrap());
        assert_eq!(
            general_position(&[x0.clone(), x0]),
            Err(GeomError::DuplicateLine)
        );
    }

    #[test]
    fn collinearity() {
        assert!(collinear(&[
            Point::from_ints(0, 0),
            Point::from_ints(1, 1),
            Point::from_ints(2, 2)
        ]));
        assert!(!collinear(&[
            Point::from_ints(0, 0),
            Point::from_ints(1, 0),
            Point::from_ints(0, 1)
        ]));
        assert!(collinear(&[
            Point::from_ints(0, 0),
            Point::from_ints(1, 2),
            Point::from_ints(2, 4),
            Point::from_ints(3, 6)
        ]));
    }

    #[test]
    fn canonical_scaling() {
        let l1 = Line::new(2, -2, 4).unwrap();
        let l2 = Line::new(-1, 1, -2).unwrap();
        assert_eq!(l1, l2);
        let l3 = Line::from_rationals(&rat(1, 3), &rat(-1, 3), &rat(2, 3)).unwrap();
        assert_eq!(l1, l3);
    }

    #[test]
    fn rational_strings() {
        assert_eq!(rat_to_string(&rat(4, 6)), "2/3");
        assert_eq!(rat_to_string(&rat(-8, 2)), "-4");
        assert_eq!(rat_from_str("2/3").unwrap(), rat(2, 3));
        assert_eq!(rat_from_str("-7").unwrap(), rat_int(-7));
        assert!(rat_from_str("1/0").is_err());
        assert!(rat_from_str("x").is_err());
    }
}
