//! Random map generators for tests and benchmarks.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rand::Rng;

use crate::pl::{PlMap, Point};
use crate::rat::{rat, Rat};

/// `count` distinct sorted values in `(0, 1)` with common denominator `den`.
fn interior_grid<R: Rng + ?Sized>(rng: &mut R, count: usize, den: i64) -> Vec<Rat> {
    let count = count.min((den - 1) as usize);
    let mut picks = BTreeSet::new();
    while picks.len() < count {
        picks.insert(rng.gen_range(1..den));
    }
    picks.into_iter().map(|n| rat(n, den)).collect()
}

fn with_endpoints(inner: Vec<Point>) -> PlMap {
    let mut pts = Vec::with_capacity(inner.len() + 2);
    pts.push((Rat::zero(), Rat::zero()));
    pts.extend(inner);
    pts.push((Rat::one(), Rat::one()));
    PlMap::new(pts).expect("generated points are increasing")
}

/// Arbitrary element with at most `max_interior` interior breakpoints and
/// denominators at most `max_den`.
pub fn random_map<R: Rng + ?Sized>(rng: &mut R, max_interior: usize, max_den: i64) -> PlMap {
    let k = rng.gen_range(0..=max_interior);
    let dx = rng.gen_range((k as i64 + 1).max(2)..=max_den.max(k as i64 + 1));
    let dy = rng.gen_range((k as i64 + 1).max(2)..=max_den.max(k as i64 + 1));
    let xs = interior_grid(rng, k, dx);
    let ys = interior_grid(rng, xs.len(), dy);
    let n = xs.len().min(ys.len());
    with_endpoints(xs.into_iter().take(n).zip(ys.into_iter().take(n)).collect())
}

/// Above-diagonal map with exactly `interior` interior points before
/// normalization: each grid point `x_i` is sent into `(x_i, x_{i+1})`.
pub fn random_staircase<R: Rng + ?Sized>(
    rng: &mut R,
    interior: usize,
    den: i64,
    lift_den: i64,
) -> PlMap {
    let xs = interior_grid(rng, interior.max(1), den);
    let mut pts = Vec::with_capacity(xs.len());
    for (i, x) in xs.iter().enumerate() {
        let next = xs.get(i + 1).cloned().unwrap_or_else(Rat::one);
        let theta = rat(rng.gen_range(1..lift_den), lift_den);
        pts.push((x.clone(), x + theta * (next - x)));
    }
    with_endpoints(pts)
}

/// Above-diagonal one-bump map: a staircase, sometimes composed with a second one.
pub fn random_above<R: Rng + ?Sized>(rng: &mut R, max_interior: usize, den: i64) -> PlMap {
    let k = rng.gen_range(1..=max_interior.max(1));
    let a = random_staircase(rng, k, den, 5);
    if k > 2 && rng.gen_bool(0.3) {
        let b = random_staircase(rng, 1, den, 3);
        PlMap::compose(&a, &b)
    } else {
        a
    }
}

pub fn random_below<R: Rng + ?Sized>(rng: &mut R, max_interior: usize, den: i64) -> PlMap {
    random_above(rng, max_interior, den).invert()
}

/// A random element of small complexity, suitable as a conjugator.
pub fn random_conjugator<R: Rng + ?Sized>(rng: &mut R, max_interior: usize, den: i64) -> PlMap {
    loop {
        let h = random_map(rng, max_interior, den);
        if !h.is_identity() || max_interior == 0 {
            return h;
        }
    }
}
