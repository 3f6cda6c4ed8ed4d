//! Mather invariants of above-diagonal one-bump maps.
//!
//! Near 0 an above-diagonal map `z` is `t ↦ m₀ t` and near 1 it is
//! `s ↦ 1 − m₁ (1 − s)`. Quotienting `(0, ε)` by `t ~ m₀ t` and the
//! coordinate `u = 1 − s` near 1 by `u ~ m₁ u` gives two circles, and a high
//! power `zᴺ` induces a circle map between them.
//!
//! Everything is kept multiplicative: a [`MatherGerm`] stores `u = 1 − zᴺ(t)`
//! on one fundamental domain `[t₀, m₀ t₀]`, and the equivariant extension
//! `Û(m₀ t) = m₁ Û(t)` recovers the lift everywhere on `(0, ∞)`. Rotations of
//! the circles become multiplications modulo `m₀^ℤ` and `m₁^ℤ`, so every
//! quantity stays rational.

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::pl::{BumpClass, PlMap, Polyline};
use crate::rat::{reduce_mod_above, reduce_mod_below, Rat};

/// Upper bound on the number of `m₀` reductions in [`germ_eval`].
pub const MAX_PERIODS: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatherGerm {
    /// Initial slope of the map (scale of the domain circle), `> 1`.
    pub m0: Rat,
    /// Final slope of the map (scale of the range circle), `< 1`.
    pub m1: Rat,
    /// Left end of the fundamental domain `[t0, m0·t0]`.
    pub t0: Rat,
    /// `u = 1 − zᴺ(t)` on `[t0, m0·t0]`; strictly decreasing.
    pub v: Polyline,
    /// The power `N` used.
    pub power: usize,
}

/// Rotation pair relating two germs: `Û_y(k t) = l Û_z(t)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RotationPair {
    /// Representative in `[1, m0)`.
    pub k: Rat,
    /// Representative in `(m1, 1]`.
    pub l: Rat,
}

/// Mather germ with the default anchor `t0 = a0 / m0` (`a0` the end of the
/// first linear segment) and the minimal power `N`.
pub fn mather_invariant(z: &PlMap) -> Result<MatherGerm> {
    mather_invariant_with(z, None, None)
}

/// Mather germ with an explicit anchor and/or power.
///
/// The anchor must satisfy `0 < t0` and `m0·t0 ≤ a0`; the power must carry
/// `[t0, m0·t0]` into the final linear segment of `z`.
pub fn mather_invariant_with(
    z: &PlMap,
    anchor: Option<Rat>,
    power: Option<usize>,
) -> Result<MatherGerm> {
    if z.classify() != BumpClass::AboveDiagonal {
        return Err(Error::NotAboveDiagonal);
    }
    let m0 = z.initial_slope();
    let m1 = z.final_slope();
    let a0 = z.initial_linear_end().clone();
    let t0 = match anchor {
        Some(t) => {
            if !t.is_positive() || &t * &m0 > a0 {
                return Err(Error::InvalidParameter(format!(
                    "anchor {t} must satisfy 0 < t0 and m0*t0 <= {a0}"
                )));
            }
            t
        }
        None => &a0 / &m0,
    };
    let top = &t0 * &m0;
    let final_start = z.final_linear_start();

    // minimal N with z^N(t0) in the final linear segment
    let mut minimal = 0usize;
    let mut s = t0.clone();
    while &s < final_start {
        s = z.at(&s);
        minimal += 1;
    }
    let n = match power {
        Some(p) if p < minimal => {
            return Err(Error::InvalidParameter(format!(
                "power {p} does not reach the final linear segment (need at least {minimal})"
            )))
        }
        Some(p) => p,
        None => minimal,
    };

    let mut image = z.as_polyline().restrict(&t0, &top);
    for _ in 1..n {
        image = Polyline::compose(z.as_polyline(), &image);
    }
    let one = Rat::one();
    let v = Polyline::from_sorted(
        image
            .into_points()
            .into_iter()
            .map(|(x, y)| (x, &one - y))
            .collect(),
    );
    let germ = MatherGerm {
        m0,
        m1,
        t0,
        v,
        power: n,
    };
    debug_assert_eq!(germ.v.end().1, &germ.m1 * &germ.v.start().1);
    Ok(germ)
}

impl MatherGerm {
    /// Right end `m0·t0` of the fundamental domain.
    pub fn top(&self) -> Rat {
        &self.t0 * &self.m0
    }

    /// `V(m0·t0) = m1·V(t0)`.
    pub fn seam_holds(&self) -> bool {
        self.v.end().1 == &self.m1 * &self.v.start().1
    }
}

/// Equivariant extension `Û` of the germ at `t > 0`.
pub fn germ_eval(g: &MatherGerm, t: &Rat) -> Result<Rat> {
    if !t.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "germ argument {t} must be positive"
        )));
    }
    let top = g.top();
    let (s, periods) = if t > &top {
        let (s, e) = scale_into(t, &top, &g.m0, true)?;
        (s, e as i64)
    } else if t < &g.t0 {
        let (s, e) = scale_into(t, &g.t0, &g.m0, false)?;
        (s, -(e as i64))
    } else {
        (t.clone(), 0)
    };
    let base = g.v.eval(&s).expect("reduced into the fundamental domain");
    Ok(base * crate::rat::powi(&g.m1, periods))
}

/// Divides (`down`) or multiplies `t` by the least power `m^e` that brings it
/// to the other side of `bound`, by repeated squaring. Returns the scaled value and `e`.
fn scale_into(t: &Rat, bound: &Rat, m: &Rat, down: bool) -> Result<(Rat, usize)> {
    let outside = |v: &Rat| if down { v > bound } else { v < bound };
    let apply = |v: &Rat, p: &Rat| if down { v / p } else { v * p };
    let mut pows = vec![m.clone()];
    while outside(&apply(t, pows.last().unwrap())) {
        if 1usize << pows.len() > MAX_PERIODS {
            return Err(Error::OutOfRange(MAX_PERIODS));
        }
        let last = pows.last().unwrap();
        pows.push(last * last);
    }
    // greedy: stay outside, then take one final step
    let mut v = t.clone();
    let mut e = 0usize;
    for (i, p) in pows.iter().enumerate().rev() {
        let next = apply(&v, p);
        if outside(&next) {
            v = next;
            e += 1 << i;
        }
    }
    let v = apply(&v, m);
    e += 1;
    if e > MAX_PERIODS {
        return Err(Error::OutOfRange(MAX_PERIODS));
    }
    Ok((v, e))
}

/// Points of `[t0, m0·t0)` where the extended germ changes slope.
///
/// The interior breakpoints of `V`, plus `t0` itself when the slope of `Û`
/// jumps across the seam. Never empty: a germ without breakpoints would be
/// affine and equivariant, which forces `m0 = m1`.
pub fn germ_breakpoint_classes(g: &MatherGerm) -> Vec<Rat> {
    let right = g.v.first_slope();
    // slope of Û just left of t0 is (m0 / m1) V'(m0 t0⁻)
    let left = &g.m0 / &g.m1 * g.v.last_slope();
    let mut classes = Vec::with_capacity(g.v.len());
    if left != right {
        classes.push(g.t0.clone());
    }
    let pts = g.v.points();
    classes.extend(pts[1..pts.len() - 1].iter().map(|p| p.0.clone()));
    assert!(!classes.is_empty(), "germ without breakpoints");
    classes
}

/// Reduce `t > 0` into `[t0, m0·t0)`.
fn reduce_into_domain(g: &MatherGerm, t: &Rat) -> Rat {
    let top = g.top();
    let mut s = t.clone();
    while s >= top {
        s /= &g.m0;
    }
    while s < g.t0 {
        s *= &g.m0;
    }
    s
}

fn check_scales(gy: &MatherGerm, gz: &MatherGerm) -> Result<()> {
    if gy.m0 != gz.m0 || gy.m1 != gz.m1 {
        return Err(Error::ScaleMismatch);
    }
    Ok(())
}

/// Tests whether `Û_y(k t) = l Û_z(t)` holds for some `l`, and returns it.
///
/// `l` is fixed by one sample; the identity is then checked at every point of
/// the period where either side can change slope, which proves it on the
/// whole period because both sides are linear in between.
pub fn rotation_for_k(gy: &MatherGerm, gz: &MatherGerm, k: &Rat) -> Result<Option<Rat>> {
    check_scales(gy, gz)?;
    let top = gz.top();
    let l = germ_eval(gy, &(k * &gz.t0))? / germ_eval(gz, &gz.t0)?;

    let mut nodes: Vec<Rat> = gz.v.points().iter().map(|p| p.0.clone()).collect();
    for c in germ_breakpoint_classes(gy) {
        nodes.push(reduce_into_domain(gz, &(c / k)));
    }
    debug_assert!(nodes.iter().all(|t| t >= &gz.t0 && t <= &top));
    nodes.sort();
    nodes.dedup();
    for t in &nodes {
        if germ_eval(gy, &(k * t))? != &l * germ_eval(gz, t)? {
            return Ok(None);
        }
    }
    Ok(Some(l))
}

fn candidate_ks(gy: &MatherGerm, gz: &MatherGerm) -> Option<Vec<Rat>> {
    let cy = germ_breakpoint_classes(gy);
    let cz = germ_breakpoint_classes(gz);
    if cy.len() != cz.len() {
        return None;
    }
    let anchor = &cz[0];
    let mut ks: Vec<Rat> = cy
        .iter()
        .map(|c| reduce_mod_above(&(c / anchor), &gy.m0))
        .collect();
    ks.sort();
    ks.dedup();
    Some(ks)
}

/// All rotation pairs relating the two germs, sorted by `k`.
pub fn rotation_equivalences(gy: &MatherGerm, gz: &MatherGerm) -> Result<Vec<RotationPair>> {
    check_scales(gy, gz)?;
    let Some(ks) = candidate_ks(gy, gz) else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for k in ks {
        if let Some(l) = rotation_for_k(gy, gz, &k)? {
            out.push(RotationPair {
                l: reduce_mod_below(&l, &gy.m1),
                k,
            });
        }
    }
    Ok(out)
}

/// A rotation pair with `Û_y(k t) = l Û_z(t)` if the germs represent the same
/// invariant up to rotations. The smallest valid `k` is returned.
pub fn rotation_equivalent(gy: &MatherGerm, gz: &MatherGerm) -> Result<Option<RotationPair>> {
    check_scales(gy, gz)?;
    let Some(ks) = candidate_ks(gy, gz) else {
        return Ok(None);
    };
    for k in ks {
        if let Some(l) = rotation_for_k(gy, gz, &k)? {
            return Ok(Some(RotationPair {
                l: reduce_mod_below(&l, &gy.m1),
                k,
            }));
        }
    }
    Ok(None)
}
