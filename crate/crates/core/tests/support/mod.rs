#![allow(dead_code)]

use plconj::{conjugator_with_slope, rat, PlMap, Rat, Side};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn map(pts: &[(i64, i64, i64, i64)]) -> PlMap {
    PlMap::new(
        pts.iter()
            .map(|&(a, b, c, d)| (rat(a, b), rat(c, d)))
            .collect(),
    )
    .unwrap()
}

/// {(0,0),(1/2,3/4),(1,1)}
pub fn f() -> PlMap {
    map(&[(0, 1, 0, 1), (1, 2, 3, 4), (1, 1, 1, 1)])
}

/// {(0,0),(1/2,1/4),(1,1)}
pub fn h() -> PlMap {
    map(&[(0, 1, 0, 1), (1, 2, 1, 4), (1, 1, 1, 1)])
}

/// {(0,0),(1/4,3/8),(5/8,13/16),(1,1)}: same endpoint slopes as `f`.
pub fn z3() -> PlMap {
    map(&[(0, 1, 0, 1), (1, 4, 3, 8), (5, 8, 13, 16), (1, 1, 1, 1)])
}

/// Orbit representatives of the interior breakpoints of an above-diagonal
/// map in the fundamental domain `[a0 / m0, a0)`.
fn orbit_representatives(f: &PlMap) -> Vec<Rat> {
    let a0 = f.initial_linear_end().clone();
    let m0 = f.initial_slope();
    let t0 = &a0 / &m0;
    let finv = f.invert();
    let mut reps = Vec::new();
    for (p, _) in f.interior_breakpoints() {
        let mut s = p.clone();
        while s >= a0 {
            s = finv.evaluate(&s).unwrap();
        }
        while s < t0 {
            s *= &m0;
        }
        reps.push(s);
    }
    reps
}

/// Exhaustive stair search: tries every breakpoint-ratio initial slope (one
/// orbit representative per breakpoint, three period shifts) and reports
/// whether any yields a verified conjugator. Uses no Mather machinery.
pub fn oracle_conjugator(y: &PlMap, z: &PlMap) -> Option<PlMap> {
    let (sy, sz) = (Side::of(y).ok()?, Side::of(z).ok()?);
    if sy != sz || y.initial_slope() != z.initial_slope() || y.final_slope() != z.final_slope() {
        return None;
    }
    let (ya, za) = match sy {
        Side::Above => (y.clone(), z.clone()),
        Side::Below => (y.invert(), z.invert()),
    };
    let m0 = ya.initial_slope();
    let shifts = [m0.recip(), Rat::from_integer(1.into()), m0.clone()];
    for u in orbit_representatives(&ya) {
        for v in orbit_representatives(&za) {
            for s in &shifts {
                let q = &u / &v * s;
                if let Some(g) = conjugator_with_slope(y, z, &q).unwrap() {
                    return Some(g);
                }
            }
        }
    }
    None
}
