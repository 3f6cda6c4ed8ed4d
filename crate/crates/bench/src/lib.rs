//! Fixed workloads for the benchmarks in `benches/`.

use plconj::random::{random_above, random_conjugator, random_map};
use plconj::{rat, PlMap, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random maps with up to `interior` interior breakpoints.
pub fn maps(seed: u64, count: usize, interior: usize) -> Vec<PlMap> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| random_map(&mut r, interior, 1_000_000))
        .collect()
}

/// A one-bump map and a random conjugate of it.
pub fn conjugate_pair(seed: u64, interior: usize) -> (PlMap, PlMap) {
    let mut r = rng(seed);
    let y = random_above(&mut r, interior, 40);
    let z = y.conjugate_by(&random_conjugator(&mut r, 3, 20));
    (y, z)
}

/// An above-diagonal map on a grid of `points` breakpoints that moves each
/// point by at most `1/den`, so the stair crosses many fundamental domains.
pub fn slow_map(seed: u64, points: i64, den: i64) -> PlMap {
    let mut r = rng(seed);
    let last = points - 1;
    let mut pts = vec![(rat(0, 1), rat(0, 1))];
    for i in 1..last {
        let x = rat(i, last);
        let bump: Rat = rat(r.gen_range(24..=48), 48 * den);
        pts.push((x.clone(), x + bump));
    }
    pts.push((rat(1, 1), rat(1, 1)));
    PlMap::new(pts).expect("increasing grid")
}

/// Conjugates of one slow map by two single-breakpoint maps.
pub fn slow_pair(seed: u64, points: i64, den: i64) -> (PlMap, PlMap) {
    let w = slow_map(seed, points, den);
    let mut r = rng(seed ^ 0x5eed);
    let mut bend = || {
        let x = rat(r.gen_range(3..8), 10);
        let y = &x + rat(r.gen_range(-15..15), 100);
        PlMap::new(vec![(rat(0, 1), rat(0, 1)), (x, y), (rat(1, 1), rat(1, 1))]).unwrap()
    };
    (w.conjugate_by(&bend()), w.conjugate_by(&bend()))
}
