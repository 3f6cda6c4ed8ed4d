//! Piecewise-linear homeomorphisms of the unit interval.
//!
//! A [`PlMap`] is stored as its list of breakpoints in normal form: the graph
//! starts at `(0, 0)`, ends at `(1, 1)`, both coordinates strictly increase,
//! and no three consecutive points are collinear. Slopes are derived from the
//! breakpoints on demand.
//!
//! [`Polyline`] is the same representation over an arbitrary closed interval.
//! It is used for restrictions of maps to sub-intervals (fundamental domains,
//! stair pieces) and for the decreasing germ data of the Mather invariant.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{is_unit_interval, Rat};

pub type Point = (Rat, Rat);

/// A continuous piecewise-linear function on `[x_first, x_last]`, given by
/// its breakpoints with strictly increasing `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polyline {
    points: Vec<Point>,
}

fn interpolate(a: &Point, b: &Point, t: &Rat) -> Rat {
    if t == &a.0 {
        return a.1.clone();
    }
    if t == &b.0 {
        return b.1.clone();
    }
    &a.1 + (&b.1 - &a.1) * (t - &a.0) / (&b.0 - &a.0)
}

fn collinear(a: &Point, b: &Point, c: &Point) -> bool {
    (&b.1 - &a.1) * (&c.0 - &b.0) == (&c.1 - &b.1) * (&b.0 - &a.0)
}

impl Polyline {
    /// Builds a polyline, rejecting fewer than two points or non-increasing `x`.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidMap("need at least two points".into()));
        }
        if points.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidMap(
                "x-coordinates must strictly increase".into(),
            ));
        }
        Ok(Self::from_sorted(points))
    }

    /// Callers guarantee at least two points with strictly increasing `x`.
    pub(crate) fn from_sorted(points: Vec<Point>) -> Self {
        debug_assert!(points.len() >= 2);
        debug_assert!(points.windows(2).all(|w| w[0].0 < w[1].0));
        let mut out: Vec<Point> = Vec::with_capacity(points.len());
        for p in points {
            while out.len() >= 2 && collinear(&out[out.len() - 2], &out[out.len() - 1], &p) {
                out.pop();
            }
            out.push(p);
        }
        Self { points: out }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }

    pub fn start(&self) -> &Point {
        &self.points[0]
    }

    pub fn end(&self) -> &Point {
        &self.points[self.points.len() - 1]
    }

    /// Number of listed points, endpoints included.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index of the segment `[p_i, p_{i+1}]` containing `t` (the left one at a breakpoint).
    fn segment_index(&self, t: &Rat) -> usize {
        let idx = self.points.partition_point(|p| &p.0 <= t);
        idx.saturating_sub(1).min(self.points.len() - 2)
    }

    /// Value at `t`, or `None` outside the domain.
    pub fn eval(&self, t: &Rat) -> Option<Rat> {
        if t < &self.start().0 || t > &self.end().0 {
            return None;
        }
        let i = self.segment_index(t);
        Some(interpolate(&self.points[i], &self.points[i + 1], t))
    }

    pub fn slopes(&self) -> impl Iterator<Item = Rat> + '_ {
        self.points
            .windows(2)
            .map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0))
    }

    pub fn first_slope(&self) -> Rat {
        let (a, b) = (&self.points[0], &self.points[1]);
        (&b.1 - &a.1) / (&b.0 - &a.0)
    }

    pub fn last_slope(&self) -> Rat {
        let n = self.points.len();
        let (a, b) = (&self.points[n - 2], &self.points[n - 1]);
        (&b.1 - &a.1) / (&b.0 - &a.0)
    }

    /// Restriction to `[a, b]`, which must lie inside the domain with `a < b`.
    pub fn restrict(&self, a: &Rat, b: &Rat) -> Polyline {
        debug_assert!(a < b && a >= &self.start().0 && b <= &self.end().0);
        let i = self.segment_index(a);
        let j = self.points.partition_point(|p| &p.0 < b);
        let mut pts = Vec::with_capacity(j.saturating_sub(i) + 2);
        pts.push((
            a.clone(),
            interpolate(&self.points[i], &self.points[i + 1], a),
        ));
        for p in &self.points[i + 1..j] {
            if &p.0 > a {
                pts.push(p.clone());
            }
        }
        let k = j.max(1) - 1;
        pts.push((
            b.clone(),
            interpolate(&self.points[k], &self.points[k + 1], b),
        ));
        Polyline::from_sorted(pts)
    }

    /// `outer ∘ inner`. `inner` must be strictly increasing with its range
    /// inside the domain of `outer`.
    ///
    /// Single merged sweep over the inner breakpoints and the inner-preimages
    /// of the outer breakpoints. Output slopes are products of input slopes,
    /// so collinear points are dropped by comparing them.
    pub fn compose(outer: &Polyline, inner: &Polyline) -> Polyline {
        debug_assert!(inner.points.windows(2).all(|w| w[0].1 < w[1].1));
        debug_assert!(inner.start().1 >= outer.start().0 && inner.end().1 <= outer.end().0);
        let op = &outer.points;
        let ip = &inner.points;
        let os: Vec<Rat> = outer.slopes().collect();
        let inv: Vec<Rat> = inner.slopes().map(|s| s.recip()).collect();
        let mut out: Vec<Point> = Vec::with_capacity(op.len() + ip.len());
        let mut last: Option<Rat> = None;
        let mut emit = |p: Point, slope: Rat| {
            if last.as_ref() != Some(&slope) {
                out.push(p);
                last = Some(slope);
            }
        };
        let mut j = outer.segment_index(&ip[0].1);
        for i in 0..ip.len() - 1 {
            let (x, y) = &ip[i];
            let y_next = &ip[i + 1].1;
            while j + 2 < op.len() && &op[j + 1].0 <= y {
                j += 1;
            }
            let value = &op[j].1 + &os[j] * (y - &op[j].0);
            emit((x.clone(), value), &os[j] / &inv[i]);
            while j + 2 < op.len() && &op[j + 1].0 < y_next {
                j += 1;
                let pre = x + (&op[j].0 - y) * &inv[i];
                emit((pre, op[j].1.clone()), &os[j] / &inv[i]);
            }
        }
        let (x, y) = inner.end();
        let value = if y == &op[j + 1].0 {
            op[j + 1].1.clone()
        } else {
            &op[j].1 + &os[j] * (y - &op[j].0)
        };
        out.push((x.clone(), value));
        Polyline { points: out }
    }

    /// Inverse of a strictly increasing polyline.
    pub fn inverse(&self) -> Polyline {
        debug_assert!(self.points.windows(2).all(|w| w[0].1 < w[1].1));
        Polyline {
            points: self
                .points
                .iter()
                .map(|(x, y)| (y.clone(), x.clone()))
                .collect(),
        }
    }

    /// Joins `self` on `[a, b]` with `next` on `[b, c]`; the shared point must agree.
    pub fn concat(&self, next: &Polyline) -> Polyline {
        debug_assert_eq!(self.end(), next.start());
        let mut pts = self.points.clone();
        pts.extend(next.points[1..].iter().cloned());
        Polyline::from_sorted(pts)
    }
}

/// An orientation-preserving piecewise-linear homeomorphism of `[0, 1]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlMap {
    line: Polyline,
}

/// Position of a map relative to the diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BumpClass {
    Identity,
    /// `f(t) > t` on `(0, 1)`.
    AboveDiagonal,
    /// `f(t) < t` on `(0, 1)`.
    BelowDiagonal,
    /// The graph meets the diagonal inside `(0, 1)`, or runs along it on some interval.
    Crossing(Vec<FixedSet>),
}

impl BumpClass {
    pub fn is_one_bump(&self) -> bool {
        matches!(self, BumpClass::AboveDiagonal | BumpClass::BelowDiagonal)
    }
}

/// A component of the fixed-point set other than the endpoints `0` and `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedSet {
    Point(Rat),
    Interval(Rat, Rat),
}

impl PlMap {
    /// Validates and normalizes a breakpoint list.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidMap("need at least the two endpoints".into()));
        }
        let (first, last) = (&points[0], &points[points.len() - 1]);
        if !first.0.is_zero() || !first.1.is_zero() {
            return Err(Error::InvalidMap("first point must be (0, 0)".into()));
        }
        if !last.0.is_one() || !last.1.is_one() {
            return Err(Error::InvalidMap("last point must be (1, 1)".into()));
        }
        for (i, w) in points.windows(2).enumerate() {
            if w[0].0 >= w[1].0 {
                return Err(Error::InvalidMap(format!(
                    "x-coordinates must strictly increase (points {} and {})",
                    i,
                    i + 1
                )));
            }
            if w[0].1 >= w[1].1 {
                return Err(Error::InvalidMap(format!(
                    "y-coordinates must strictly increase (points {} and {})",
                    i,
                    i + 1
                )));
            }
        }
        Ok(Self {
            line: Polyline::from_sorted(points),
        })
    }

    pub fn identity() -> Self {
        Self {
            line: Polyline {
                points: vec![(Rat::zero(), Rat::zero()), (Rat::one(), Rat::one())],
            },
        }
    }

    /// Callers guarantee the polyline runs from (0,0) to (1,1), increasing, normalized.
    pub(crate) fn from_line(line: Polyline) -> Self {
        debug_assert!(line.start().0.is_zero() && line.start().1.is_zero());
        debug_assert!(line.end().0.is_one() && line.end().1.is_one());
        Self { line }
    }

    pub fn as_polyline(&self) -> &Polyline {
        &self.line
    }

    pub fn breakpoints(&self) -> &[Point] {
        self.line.points()
    }

    /// Interior breakpoints, i.e. the genuine slope changes.
    pub fn interior_breakpoints(&self) -> &[Point] {
        let p = self.line.points();
        &p[1..p.len() - 1]
    }

    /// Number of listed points, endpoints included.
    pub fn breakpoint_count(&self) -> usize {
        self.line.len()
    }

    pub fn is_identity(&self) -> bool {
        self.line.len() == 2
    }

    pub fn evaluate(&self, t: &Rat) -> Result<Rat> {
        if !is_unit_interval(t) {
            return Err(Error::OutOfDomain(t.clone()));
        }
        Ok(self.line.eval(t).expect("t inside [0,1]"))
    }

    /// Evaluation for points already known to lie in `[0, 1]`.
    pub(crate) fn at(&self, t: &Rat) -> Rat {
        self.line.eval(t).expect("t inside [0,1]")
    }

    pub fn invert(&self) -> PlMap {
        Self {
            line: self.line.inverse(),
        }
    }

    /// `outer ∘ inner`.
    pub fn compose(outer: &PlMap, inner: &PlMap) -> PlMap {
        Self {
            line: Polyline::compose(&outer.line, &inner.line),
        }
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &PlMap) -> PlMap {
        Self::compose(self, inner)
    }

    /// `f^n` by iterated composition; negative `n` iterates the inverse.
    pub fn power(&self, n: i64) -> PlMap {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut acc = PlMap::identity();
        for _ in 0..n.unsigned_abs() {
            acc = Self::compose(&base, &acc);
        }
        acc
    }

    /// Conjugate `g⁻¹ ∘ self ∘ g`.
    pub fn conjugate_by(&self, g: &PlMap) -> PlMap {
        Self::compose(&g.invert(), &Self::compose(self, g))
    }

    pub fn initial_slope(&self) -> Rat {
        self.line.first_slope()
    }

    pub fn final_slope(&self) -> Rat {
        self.line.last_slope()
    }

    /// Right end of the first linear segment.
    pub fn initial_linear_end(&self) -> &Rat {
        &self.line.points()[1].0
    }

    /// Left end of the last linear segment.
    pub fn final_linear_start(&self) -> &Rat {
        let p = self.line.points();
        &p[p.len() - 2].0
    }

    /// Exact position relative to the diagonal, by solving `f(t) = t` on each segment.
    pub fn classify(&self) -> BumpClass {
        let pts = self.line.points();
        if pts.len() == 2 {
            return BumpClass::Identity;
        }
        let d: Vec<Rat> = pts.iter().map(|(x, y)| y - x).collect();
        let interior = &d[1..d.len() - 1];
        if interior.iter().all(|v| v.is_positive()) {
            return BumpClass::AboveDiagonal;
        }
        if interior.iter().all(|v| v.is_negative()) {
            return BumpClass::BelowDiagonal;
        }
        let mut fixed = Vec::new();
        let n = pts.len();
        let mut i = 0;
        while i < n {
            if d[i].is_zero() {
                let start = i;
                while i + 1 < n && d[i + 1].is_zero() {
                    i += 1;
                }
                if i > start {
                    fixed.push(FixedSet::Interval(pts[start].0.clone(), pts[i].0.clone()));
                } else if i != 0 && i != n - 1 {
                    fixed.push(FixedSet::Point(pts[i].0.clone()));
                }
            } else if i + 1 < n
                && !d[i + 1].is_zero()
                && d[i].is_positive() != d[i + 1].is_positive()
            {
                let (a, b) = (&pts[i], &pts[i + 1]);
                let t = &a.0 + &d[i] / (&d[i] - &d[i + 1]) * (&b.0 - &a.0);
                fixed.push(FixedSet::Point(t));
            }
            i += 1;
        }
        BumpClass::Crossing(fixed)
    }

    /// Restriction of `self` to `[0, cut]` continued by the straight line to `(1, 1)`.
    pub(crate) fn truncate_linear(&self, cut: &Rat) -> PlMap {
        debug_assert!(cut.is_positive() && cut < &Rat::one());
        let head = self.line.restrict(&Rat::zero(), cut);
        let mut pts = head.into_points();
        pts.push((Rat::one(), Rat::one()));
        Self::from_line(Polyline::from_sorted(pts))
    }
}

impl fmt::Debug for PlMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("PlMap")?;
        f.debug_list()
            .entries(
                self.line
                    .points()
                    .iter()
                    .map(|(x, y)| format!("({x}, {y})")),
            )
            .finish()
    }
}

impl fmt::Display for PlMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, y)) in self.line.points().iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "({x},{y})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn map(pts: &[(i64, i64, i64, i64)]) -> PlMap {
        PlMap::new(
            pts.iter()
                .map(|&(a, b, c, d)| (rat(a, b), rat(c, d)))
                .collect(),
        )
        .unwrap()
    }

    fn f() -> PlMap {
        map(&[(0, 1, 0, 1), (1, 2, 3, 4), (1, 1, 1, 1)])
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(PlMap::identity().evaluate(&rat(1, 2)).unwrap(), rat(1, 2));
        assert_eq!(f().evaluate(&rat(1, 4)).unwrap(), rat(3, 8));
        assert_eq!(f().evaluate(&rat(3, 4)).unwrap(), rat(7, 8));
        assert_eq!(f().evaluate(&int(1)).unwrap(), int(1));
        assert!(matches!(
            f().evaluate(&rat(5, 4)),
            Err(Error::OutOfDomain(_))
        ));
        assert!(matches!(
            f().evaluate(&rat(-1, 4)),
            Err(Error::OutOfDomain(_))
        ));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(PlMap::identity().invert(), PlMap::identity());
        assert_eq!(
            f().invert(),
            map(&[(0, 1, 0, 1), (3, 4, 1, 2), (1, 1, 1, 1)])
        );
        assert_eq!(f().invert().invert(), f());
    }

    #[test]
    fn compose_examples() {
        assert_eq!(PlMap::compose(&f(), &f().invert()), PlMap::identity());
        assert_eq!(
            PlMap::compose(&f(), &f()),
            map(&[(0, 1, 0, 1), (1, 3, 3, 4), (1, 2, 7, 8), (1, 1, 1, 1)])
        );
        assert_eq!(PlMap::compose(&PlMap::identity(), &f()), f());
    }

    #[test]
    fn power_examples() {
        assert_eq!(f().power(0), PlMap::identity());
        assert_eq!(f().power(2), PlMap::compose(&f(), &f()));
        assert_eq!(f().power(-1), f().invert());
        assert_eq!(f().power(-3), f().invert().power(3));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(PlMap::identity().classify(), BumpClass::Identity);
        assert_eq!(f().classify(), BumpClass::AboveDiagonal);
        assert_eq!(f().invert().classify(), BumpClass::BelowDiagonal);
        let c = map(&[(0, 1, 0, 1), (1, 4, 1, 2), (5, 8, 9, 16), (1, 1, 1, 1)]);
        assert_eq!(
            c.classify(),
            BumpClass::Crossing(vec![FixedSet::Point(rat(11, 20))])
        );
    }

    #[test]
    fn classify_fixed_intervals_and_touching() {
        // identity on [0, 1/4], then above
        let m = map(&[(0, 1, 0, 1), (1, 4, 1, 4), (1, 2, 3, 4), (1, 1, 1, 1)]);
        assert_eq!(
            m.classify(),
            BumpClass::Crossing(vec![FixedSet::Interval(int(0), rat(1, 4))])
        );
        // touches the diagonal at an interior breakpoint
        let m = map(&[
            (0, 1, 0, 1),
            (1, 4, 3, 8),
            (1, 2, 1, 2),
            (3, 4, 7, 8),
            (1, 1, 1, 1),
        ]);
        assert_eq!(
            m.classify(),
            BumpClass::Crossing(vec![FixedSet::Point(rat(1, 2))])
        );
        // on the diagonal in the middle
        let m = map(&[
            (0, 1, 0, 1),
            (1, 4, 1, 8),
            (1, 2, 1, 2),
            (5, 8, 5, 8),
            (3, 4, 7, 8),
            (1, 1, 1, 1),
        ]);
        assert_eq!(
            m.classify(),
            BumpClass::Crossing(vec![FixedSet::Interval(rat(1, 2), rat(5, 8))])
        );
    }

    #[test]
    fn slopes() {
        assert_eq!(PlMap::identity().initial_slope(), int(1));
        assert_eq!(PlMap::identity().final_slope(), int(1));
        assert_eq!(f().initial_slope(), rat(3, 2));
        assert_eq!(f().final_slope(), rat(1, 2));
        assert_eq!(f().invert().initial_slope(), rat(2, 3));
        assert_eq!(f().invert().final_slope(), int(2));
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert!(PlMap::new(vec![(int(0), int(0))]).is_err());
        assert!(PlMap::new(vec![(int(0), rat(1, 2)), (int(1), int(1))]).is_err());
        assert!(PlMap::new(vec![
            (int(0), int(0)),
            (rat(1, 2), rat(1, 2)),
            (rat(1, 2), rat(3, 4)),
            (int(1), int(1))
        ])
        .is_err());
        assert!(PlMap::new(vec![
            (int(0), int(0)),
            (rat(1, 4), rat(1, 2)),
            (rat(1, 2), rat(1, 2)),
            (int(1), int(1))
        ])
        .is_err());
    }

    #[test]
    fn collinear_points_are_dropped() {
        let m = map(&[
            (0, 1, 0, 1),
            (1, 4, 3, 8),
            (1, 2, 3, 4),
            (3, 4, 7, 8),
            (1, 1, 1, 1),
        ]);
        assert_eq!(m, f());
        let id = map(&[(0, 1, 0, 1), (1, 3, 1, 3), (1, 1, 1, 1)]);
        assert!(id.is_identity());
    }

    #[test]
    fn restrict_and_concat() {
        let line = f().as_polyline().clone();
        let left = line.restrict(&rat(1, 4), &rat(1, 2));
        assert_eq!(
            left.points(),
            &[(rat(1, 4), rat(3, 8)), (rat(1, 2), rat(3, 4))]
        );
        let right = line.restrict(&rat(1, 2), &rat(3, 4));
        let joined = left.concat(&right);
        assert_eq!(joined.points().len(), 3);
        let whole = line.restrict(&int(0), &int(1));
        assert_eq!(whole, line);
    }
}
