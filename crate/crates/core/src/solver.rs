//! Conjugacy decisions with certificates, centralizers and roots.

use num_traits::One;

use crate::error::{EndSlopes, Error, Result};
use crate::mather::{
    germ_breakpoint_classes, mather_invariant, rotation_equivalences, rotation_equivalent,
    RotationPair,
};
use crate::pl::PlMap;
use crate::rat::{nth_root as rat_nth_root, Rat};
use crate::stair::{conjugator_with_slope, verify_conjugator, Side};

/// Why two one-bump maps are not conjugate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonConjugacy {
    /// Endpoint slopes differ, so no conjugator can be linear near 0 and 1.
    SlopeMismatch(Box<EndSlopes>),
    /// The Mather invariants differ; the breakpoint-class counts of both germs.
    InvariantMismatch { y_classes: usize, z_classes: usize },
    /// One map lies above the diagonal and the other below.
    ClassMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConjugacyOutcome {
    /// `conjugator⁻¹ ∘ y ∘ conjugator = z`.
    Conjugate {
        conjugator: PlMap,
        rotation: RotationPair,
    },
    NotConjugate(NonConjugacy),
}

impl ConjugacyOutcome {
    pub fn conjugator(&self) -> Option<&PlMap> {
        match self {
            ConjugacyOutcome::Conjugate { conjugator, .. } => Some(conjugator),
            ConjugacyOutcome::NotConjugate(_) => None,
        }
    }

    pub fn is_conjugate(&self) -> bool {
        matches!(self, ConjugacyOutcome::Conjugate { .. })
    }
}

/// The above-diagonal representative of a one-bump map.
fn above_form(f: &PlMap, side: Side) -> PlMap {
    match side {
        Side::Above => f.clone(),
        Side::Below => f.invert(),
    }
}

/// Decides conjugacy of two one-bump maps.
///
/// Below-diagonal pairs are decided through their inverses. The rotation
/// pair is expressed relative to the above-diagonal germs. Every
/// `Conjugate` certificate has been checked exactly.
pub fn are_conjugate(y: &PlMap, z: &PlMap) -> Result<ConjugacyOutcome> {
    let sy = Side::of(y)?;
    let sz = Side::of(z)?;
    if sy != sz {
        return Ok(ConjugacyOutcome::NotConjugate(NonConjugacy::ClassMismatch));
    }
    let (yi, zi, yf, zf) = (
        y.initial_slope(),
        z.initial_slope(),
        y.final_slope(),
        z.final_slope(),
    );
    if yi != zi || yf != zf {
        return Ok(ConjugacyOutcome::NotConjugate(NonConjugacy::SlopeMismatch(
            Box::new(EndSlopes {
                y_initial: yi,
                z_initial: zi,
                y_final: yf,
                z_final: zf,
            }),
        )));
    }
    let (ya, za) = (above_form(y, sy), above_form(z, sz));
    let (gy, gz) = std::thread::scope(|s| {
        let other = s.spawn(|| mather_invariant(&za));
        let gy = mather_invariant(&ya);
        (gy, other.join().expect("germ computation panicked"))
    });
    let (gy, gz) = (gy?, gz?);
    let Some(rotation) = rotation_equivalent(&gy, &gz)? else {
        return Ok(ConjugacyOutcome::NotConjugate(
            NonConjugacy::InvariantMismatch {
                y_classes: germ_breakpoint_classes(&gy).len(),
                z_classes: germ_breakpoint_classes(&gz).len(),
            },
        ));
    };
    let conjugator = conjugator_with_slope(y, z, &rotation.k)?.ok_or_else(|| {
        Error::Internal(format!(
            "rotation class {} admits no conjugator",
            rotation.k
        ))
    })?;
    if !verify_conjugator(&conjugator, y, z) {
        return Err(Error::Internal("certificate failed verification".into()));
    }
    Ok(ConjugacyOutcome::Conjugate {
        conjugator,
        rotation,
    })
}

/// Generator of the (infinite cyclic) centralizer of a one-bump map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerDescription {
    /// The root `g` of `z` with `gᵈ = z` of maximal order `d`.
    pub generator: PlMap,
    /// Initial slope of the generator.
    pub k_star: Rat,
    /// `k_star^d = z'(0)`.
    pub d: u32,
}

impl CentralizerDescription {
    /// The exponent `j` with `g = generatorʲ`, given that `g` centralizes the map.
    fn exponent_of_slope(&self, slope: &Rat) -> Result<i64> {
        let one = Rat::one();
        if slope == &one {
            return Ok(0);
        }
        let grows = (slope > &one) == (self.k_star > one);
        let step = if grows {
            self.k_star.clone()
        } else {
            self.k_star.recip()
        };
        let away = |p: &Rat| if step > one { p < slope } else { p > slope };
        let mut p = step.clone();
        let mut j: i64 = 1;
        while away(&p) {
            p *= &step;
            j += 1;
        }
        if &p != slope {
            return Err(Error::Internal(format!(
                "slope {slope} is not a power of {}",
                self.k_star
            )));
        }
        Ok(if grows { j } else { -j })
    }
}

/// Centralizer generator of a one-bump map.
///
/// The valid initial slopes of centralizing elements are found among the
/// rotation self-equivalences of the germ; they form a cyclic group
/// containing `z'(0)`, generated by the smallest one beyond 1.
pub fn centralizer_generator(z: &PlMap) -> Result<CentralizerDescription> {
    let side = Side::of(z)?;
    let germ = mather_invariant(&above_form(z, side))?;
    let m0 = germ.m0.clone();
    let one = Rat::one();
    let valid = rotation_equivalences(&germ, &germ)?;
    if !valid.iter().any(|r| r.k == one) {
        return Err(Error::Internal("identity rotation not found".into()));
    }
    let k_min = valid
        .iter()
        .map(|r| r.k.clone())
        .find(|k| k > &one)
        .unwrap_or_else(|| m0.clone());

    let mut d: u32 = 1;
    let mut p = k_min.clone();
    let bound = valid.len() as u32;
    while p != m0 {
        if d >= bound || p > m0 {
            return Err(Error::Internal(format!(
                "{k_min} has no power equal to {m0}"
            )));
        }
        p *= &k_min;
        d += 1;
    }
    let k_star = match side {
        Side::Above => k_min,
        Side::Below => k_min.recip(),
    };
    let generator = conjugator_with_slope(z, z, &k_star)?
        .ok_or_else(|| Error::Internal(format!("no centralizing element of slope {k_star}")))?;
    if generator.power(d as i64) != *z {
        return Err(Error::Internal(
            "generator power differs from the map".into(),
        ));
    }
    Ok(CentralizerDescription {
        generator,
        k_star,
        d,
    })
}

/// The exponent `j` with `g = generatorʲ` when `g` centralizes `z`.
pub fn slope_exponent(z: &PlMap, g: &PlMap) -> Result<Option<i64>> {
    Side::of(z)?;
    if !verify_conjugator(g, z, z) {
        return Ok(None);
    }
    let c = centralizer_generator(z)?;
    c.exponent_of_slope(&g.initial_slope()).map(Some)
}

/// Result of a root search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootOutcome {
    Root(PlMap),
    /// The initial slope has no rational `n`-th root.
    IrrationalSlope {
        slope: Rat,
        n: u32,
    },
    /// The required slope exists but is not in the centralizer's slope group.
    NotInCentralizer {
        slope: Rat,
        d: u32,
    },
}

impl RootOutcome {
    pub fn root(&self) -> Option<&PlMap> {
        match self {
            RootOutcome::Root(r) => Some(r),
            _ => None,
        }
    }

    pub fn into_root(self) -> Option<PlMap> {
        match self {
            RootOutcome::Root(r) => Some(r),
            _ => None,
        }
    }
}

/// The `n`-th root of a one-bump map, if it exists with rational data.
///
/// A root centralizes `z`, so it is a power of the centralizer generator;
/// it exists exactly when `n` divides the generator's order `d`.
pub fn nth_root(z: &PlMap, n: u32) -> Result<RootOutcome> {
    Side::of(z)?;
    if n == 0 {
        return Err(Error::InvalidParameter(
            "root order must be positive".into(),
        ));
    }
    if n == 1 {
        return Ok(RootOutcome::Root(z.clone()));
    }
    let slope = z.initial_slope();
    let Some(q) = rat_nth_root(&slope, n) else {
        return Ok(RootOutcome::IrrationalSlope { slope, n });
    };
    let c = centralizer_generator(z)?;
    if c.d % n != 0 {
        return Ok(RootOutcome::NotInCentralizer { slope: q, d: c.d });
    }
    let root = conjugator_with_slope(z, z, &q)?
        .ok_or_else(|| Error::Internal(format!("no centralizing element of slope {q}")))?;
    if root.power(n as i64) != *z {
        return Err(Error::Internal("root construction failed".into()));
    }
    Ok(RootOutcome::Root(root))
}
