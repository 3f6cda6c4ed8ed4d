//! Linearity boxes, the identification trick and the stair algorithm.
//!
//! For a pair `y, z` below the diagonal with matching endpoint slopes, any
//! conjugator `g` (with `g⁻¹ y g = z`) is linear near both endpoints and is
//! determined by its initial slope. The stair algorithm builds the only
//! possible candidate for a prescribed initial slope `q`, one fundamental
//! domain of `z` at a time, until the graph enters the final linearity box.

use num_traits::{One, Signed};

use crate::error::{EndSlopes, Error, Result};
use crate::pl::{BumpClass, PlMap, Polyline};
use crate::rat::Rat;

/// Which side of the diagonal a one-bump pair lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Above,
    Below,
}

impl Side {
    pub fn of(f: &PlMap) -> Result<Side> {
        match f.classify() {
            BumpClass::AboveDiagonal => Ok(Side::Above),
            BumpClass::BelowDiagonal => Ok(Side::Below),
            _ => Err(Error::NotOneBump),
        }
    }
}

/// Classifies a pair, requiring both maps one-bump on the same side.
pub fn pair_side(y: &PlMap, z: &PlMap) -> Result<Side> {
    let sy = Side::of(y)?;
    let sz = Side::of(z)?;
    if sy != sz {
        return Err(Error::ClassMismatch);
    }
    Ok(sy)
}

pub(crate) fn check_slopes(y: &PlMap, z: &PlMap) -> Result<()> {
    let (yi, zi, yf, zf) = (
        y.initial_slope(),
        z.initial_slope(),
        y.final_slope(),
        z.final_slope(),
    );
    if yi != zi || yf != zf {
        return Err(Error::SlopeMismatch(Box::new(EndSlopes {
            y_initial: yi,
            z_initial: zi,
            y_final: yf,
            z_final: zf,
        })));
    }
    Ok(())
}

/// The common boxes `[0, alpha]²` and `[beta, 1]²` where both maps are linear.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearityBoxes {
    pub alpha: Rat,
    pub beta: Rat,
    /// Common initial slope.
    pub c0: Rat,
    /// Common final slope.
    pub c1: Rat,
}

/// Maximal common linearity boxes of a one-bump pair.
///
/// Accepts pairs on either side of the diagonal.
pub fn linearity_boxes(y: &PlMap, z: &PlMap) -> Result<LinearityBoxes> {
    pair_side(y, z)?;
    check_slopes(y, z)?;
    let alpha = y.initial_linear_end().min(z.initial_linear_end()).clone();
    let beta = y.final_linear_start().max(z.final_linear_start()).clone();
    Ok(LinearityBoxes {
        alpha,
        beta,
        c0: y.initial_slope(),
        c1: y.final_slope(),
    })
}

fn require_below(y: &PlMap, z: &PlMap) -> Result<()> {
    match pair_side(y, z)? {
        Side::Below => Ok(()),
        Side::Above => Err(Error::NotBelowDiagonal),
    }
}

/// True if `y` and `z` coincide on `[0, alpha]`.
fn agree_on_prefix(y: &PlMap, z: &PlMap, alpha: &Rat) -> bool {
    let zero = Rat::from_integer(0.into());
    y.as_polyline().restrict(&zero, alpha) == z.as_polyline().restrict(&zero, alpha)
}

/// The identification trick: given `y = z` on `[0, alpha]`, the map that is
/// the identity on `[0, alpha]`, equals `y⁻¹ z` on `[alpha, z⁻¹(alpha)]` and
/// runs straight to `(1, 1)` afterwards. It conjugates `y` to `z` on
/// `[0, z⁻¹(alpha)]`.
pub fn identification_step(y: &PlMap, z: &PlMap, alpha: &Rat) -> Result<PlMap> {
    require_below(y, z)?;
    if !alpha.is_positive() || alpha >= &Rat::one() {
        return Err(Error::InvalidParameter(format!(
            "prefix end {alpha} must lie in (0, 1)"
        )));
    }
    if !agree_on_prefix(y, z, alpha) {
        return Err(Error::PrefixMismatch);
    }
    let upper = z.invert().at(alpha);
    let z_part = z.as_polyline().restrict(alpha, &upper);
    let piece = Polyline::compose(y.invert().as_polyline(), &z_part);
    let zero = Rat::from_integer(0.into());
    let mut pts = vec![(zero.clone(), zero), (alpha.clone(), alpha.clone())];
    pts.extend(piece.into_points().into_iter().skip(1));
    pts.push((Rat::one(), Rat::one()));
    PlMap::new(pts)
}

/// Smallest `N` with `min(z⁻ᴺ(alpha), y⁻ᴺ(q·alpha)) > beta`.
///
/// Both orbits increase strictly toward 1 for below-diagonal maps, so the
/// loop terminates.
pub fn stair_steps(y: &PlMap, z: &PlMap, q: &Rat, boxes: &LinearityBoxes) -> usize {
    let y_inv = y.invert();
    let z_inv = z.invert();
    let mut a = boxes.alpha.clone();
    let mut b = q * &boxes.alpha;
    let mut n = 0;
    while a <= boxes.beta || b <= boxes.beta {
        a = z_inv.at(&a);
        b = y_inv.at(&b);
        n += 1;
    }
    n
}

/// Parameters and diagnostics of one stair construction.
#[derive(Clone, Debug)]
pub struct StairRun {
    pub candidate: PlMap,
    pub boxes: LinearityBoxes,
    /// The number `N` of fundamental domains crossed.
    pub steps: usize,
    pub slope: Rat,
    /// Breakpoint count of the candidate restricted to each fundamental domain.
    pub piece_breakpoints: Vec<usize>,
}

fn check_stair_input(y: &PlMap, z: &PlMap, q: &Rat) -> Result<LinearityBoxes> {
    require_below(y, z)?;
    let boxes = linearity_boxes(y, z)?;
    if !q.is_positive() || q > &Rat::one() {
        return Err(Error::InvalidSlope(q.clone()));
    }
    Ok(boxes)
}

/// Runs the stair algorithm for `0 < q ≤ 1`.
///
/// On `[0, alpha]` the candidate is `t ↦ q t`; on each later fundamental
/// domain `[z⁻ʲ(α), z⁻ʲ⁻¹(α)]` it is `y⁻¹ ∘ g ∘ z` built from the previous
/// piece. After `N` pieces this equals `y⁻ᴺ g₀ zᴺ` on `[0, z⁻ᴺ(α)]`.
pub fn stair_run(y: &PlMap, z: &PlMap, q: &Rat) -> Result<StairRun> {
    let boxes = check_stair_input(y, z, q)?;
    let steps = stair_steps(y, z, q, &boxes);
    let y_inv = y.invert();
    let z_inv = z.invert();

    let alpha = &boxes.alpha;
    let z_alpha = z.at(alpha);
    let mut piece = Polyline::from_sorted(vec![
        (z_alpha.clone(), q * &z_alpha),
        (alpha.clone(), q * alpha),
    ]);
    let zero = Rat::from_integer(0.into());
    let mut pts = vec![(zero.clone(), zero), (alpha.clone(), q * alpha)];
    let mut piece_breakpoints = Vec::with_capacity(steps);
    let mut left = alpha.clone();
    for _ in 0..steps {
        let right = z_inv.at(&left);
        let z_part = z.as_polyline().restrict(&left, &right);
        let mid = Polyline::compose(&piece, &z_part);
        let lo = &mid.start().1;
        let hi = &mid.end().1;
        let y_part = y_inv.as_polyline().restrict(lo, hi);
        piece = Polyline::compose(&y_part, &mid);
        piece_breakpoints.push(piece.len());
        pts.extend(piece.points().iter().skip(1).cloned());
        left = right;
    }
    pts.push((Rat::one(), Rat::one()));
    let candidate = PlMap::new(pts)?;
    Ok(StairRun {
        candidate,
        boxes,
        steps,
        slope: q.clone(),
        piece_breakpoints,
    })
}

/// The unique candidate conjugator of initial slope `q` (`0 < q ≤ 1`) for a
/// below-diagonal pair.
pub fn stair_candidate(y: &PlMap, z: &PlMap, q: &Rat) -> Result<PlMap> {
    stair_run(y, z, q).map(|r| r.candidate)
}

/// The canonical seed: slope `q` on `[0, alpha]`, then straight to `(1, 1)`.
pub fn canonical_seed(alpha: &Rat, q: &Rat) -> PlMap {
    let zero = Rat::from_integer(0.into());
    PlMap::new(vec![
        (zero.clone(), zero),
        (alpha.clone(), q * alpha),
        (Rat::one(), Rat::one()),
    ])
    .expect("0 < alpha < 1 and 0 < q <= 1")
}

/// The closed form `y⁻ᴺ ∘ seed ∘ zᴺ` on `[0, z⁻ᴺ(alpha)]`, linear afterwards.
///
/// `seed` must be linear on `[0, alpha]`; its slope there is the prescribed
/// initial slope. Computes full powers, so it is slower than [`stair_run`].
pub fn stair_candidate_with_seed(y: &PlMap, z: &PlMap, seed: &PlMap) -> Result<PlMap> {
    let q = seed.initial_slope();
    let boxes = check_stair_input(y, z, &q)?;
    if seed.initial_linear_end() < &boxes.alpha {
        return Err(Error::InvalidParameter(
            "seed must be linear on the initial box".into(),
        ));
    }
    let n = stair_steps(y, z, &q, &boxes) as i64;
    let closed = PlMap::compose(&y.power(-n), &PlMap::compose(seed, &z.power(n)));
    let cut = z.power(-n).at(&boxes.alpha);
    Ok(closed.truncate_linear(&cut))
}

/// Exact certificate check of `g⁻¹ y g = z`, tested as `y ∘ g = g ∘ z`.
pub fn verify_conjugator(g: &PlMap, y: &PlMap, z: &PlMap) -> bool {
    PlMap::compose(y, g) == PlMap::compose(g, z)
}

/// The conjugator `g` with `g⁻¹ y g = z` and `g'(0) = q`, if one exists.
///
/// Above-diagonal pairs are handled through their inverses (same
/// conjugators). For `q > 1` the swapped problem `(z, y, 1/q)` is solved
/// and its answer inverted.
pub fn conjugator_with_slope(y: &PlMap, z: &PlMap, q: &Rat) -> Result<Option<PlMap>> {
    let side = pair_side(y, z)?;
    check_slopes(y, z)?;
    if !q.is_positive() {
        return Err(Error::InvalidSlope(q.clone()));
    }
    let (yb, zb) = match side {
        Side::Below => (y.clone(), z.clone()),
        Side::Above => (y.invert(), z.invert()),
    };
    let candidate = if q <= &Rat::one() {
        stair_candidate(&yb, &zb, q)?
    } else {
        stair_candidate(&zb, &yb, &q.recip())?.invert()
    };
    Ok(verify_conjugator(&candidate, y, z).then_some(candidate))
}

/// `g` conjugates `yⁿ` to `zⁿ`. Equivalent to conjugating `y` to `z`.
pub fn conjugates_powers(g: &PlMap, y: &PlMap, z: &PlMap, n: u32) -> Result<bool> {
    pair_side(y, z)?;
    if n == 0 {
        return Err(Error::InvalidParameter("power must be positive".into()));
    }
    Ok(verify_conjugator(g, &y.power(n as i64), &z.power(n as i64)))
}
