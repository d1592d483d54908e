//! Construction and verification of special sequences: injective point
//! sequences that preserve, at every step, the disagreements the
//! enumerated maps exhibit at the base point.
//!
//! For a closure enumeration `g_0, g_1, ...` and points `x_0, x_1, ...`,
//! a sequence is special when for every step `a` and all earlier map
//! indices `i, j` and point indices `d`:
//!
//! 1. `g_i(x_0) != g_j(x_0)` implies `g_i(x_a) != g_j(x_a)`;
//! 2. `g_i(x_0) != g_j(x_d)` implies `g_i(x_a) != g_j(x_d)`.
//!
//! Map indices range below `min(a, closure size)`; point indices range
//! below `a`. When the sequence outruns the closure the missing map
//! constraints are vacuous, and the sequence flags that.

use crate::acts::{MapSpec, MonoidClosure};
use crate::error::{Error, Result};
use crate::sets::KSet;
use crate::Point;
use serde::Serialize;

/// Which of the two defining conditions broke.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Condition {
    BasePointDisagreement,
    EarlierValueDisagreement,
}

/// First failing index combination, in scan order (step, then first map,
/// then second map, then earlier point).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: Condition,
    pub step: usize,
    pub map_a: usize,
    pub map_b: usize,
    pub point: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Pass,
    Fail(Violation),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

/// A finite prefix of a special sequence, paired with the enumeration it
/// was verified against.
#[derive(Clone, Debug)]
pub struct SpecialSequence {
    closure: MonoidClosure,
    points: Vec<Point>,
    verified: bool,
}

impl SpecialSequence {
    /// Wraps candidate points without verifying them.
    pub fn new(closure: MonoidClosure, points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidCarrier(
                "sequence needs at least one point".into(),
            ));
        }
        for &p in &points {
            if !closure.carrier().contains(p) {
                return Err(Error::PointOutsideCarrier(p));
            }
        }
        let mut dedup = points.clone();
        dedup.sort_unstable();
        dedup.dedup();
        if dedup.len() != points.len() {
            return Err(Error::InvalidCarrier(
                "sequence points must be distinct".into(),
            ));
        }
        Ok(SpecialSequence {
            closure,
            points,
            verified: false,
        })
    }

    pub fn closure(&self) -> &MonoidClosure {
        &self.closure
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires at least one point
    }

    pub fn base_point(&self) -> Point {
        self.points[0]
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// True when the sequence is longer than the closure, so some map
    /// constraints were vacuous.
    pub fn constraints_padded(&self) -> bool {
        self.points.len() > self.closure.len()
    }

    /// The support as a set.
    pub fn support_set(&self) -> KSet {
        KSet::finite(self.closure.carrier(), self.points.clone())
            .expect("points validated on construction")
    }

    /// Runs the quadruple scan and records the outcome on the sequence.
    pub fn verify(&mut self) -> Result<Verdict> {
        let verdict = verify_special(&self.closure, &self.points)?;
        self.verified = verdict.passed();
        Ok(verdict)
    }

    pub fn to_file(&self) -> SequenceFile {
        SequenceFile {
            enumeration: self.closure.specs(),
            points: self.points.clone(),
            verified: self.verified,
            constraints_padded: self.constraints_padded(),
        }
    }
}

/// Serialized form of a sequence.
#[derive(Clone, Debug, Serialize, serde::Deserialize)]
pub struct SequenceFile {
    pub enumeration: Vec<MapSpec>,
    pub points: Vec<Point>,
    pub verified: bool,
    pub constraints_padded: bool,
}

/// Checks both defining conditions for every index combination and
/// returns the first violation in scan order.
pub fn verify_special(closure: &MonoidClosure, points: &[Point]) -> Result<Verdict> {
    let value = |map: usize, point: Point| closure.element(map).apply(point);
    for step in 1..points.len() {
        let map_limit = step.min(closure.len());
        for map_a in 0..map_limit {
            let a_at_base = value(map_a, points[0])?;
            let a_at_step = value(map_a, points[step])?;
            for map_b in 0..map_limit {
                let b_at_base = value(map_b, points[0])?;
                if a_at_base != b_at_base && a_at_step == value(map_b, points[step])? {
                    return Ok(Verdict::Fail(Violation {
                        condition: Condition::BasePointDisagreement,
                        step,
                        map_a,
                        map_b,
                        point: None,
                    }));
                }
                for (earlier, &point) in points.iter().enumerate().take(step) {
                    let b_at_earlier = value(map_b, point)?;
                    if a_at_base != b_at_earlier && a_at_step == b_at_earlier {
                        return Ok(Verdict::Fail(Violation {
                            condition: Condition::EarlierValueDisagreement,
                            step,
                            map_a,
                            map_b,
                            point: Some(earlier),
                        }));
                    }
                }
            }
        }
    }
    Ok(Verdict::Pass)
}

/// Greedy construction: at each step, intersect the agreement-preserving
/// constraint sets (each one full or a difference set, hence exactly
/// representable), drop used points, and take the least remaining point
/// of the search window. The result is re-verified before it is
/// returned.
pub fn build_special(
    closure: &MonoidClosure,
    base_point: Point,
    length: usize,
    search_window: (Point, Point),
) -> Result<SpecialSequence> {
    if length == 0 {
        return Err(Error::InvalidCarrier(
            "sequence length must be positive".into(),
        ));
    }
    if !closure.carrier().contains(base_point) {
        return Err(Error::PointOutsideCarrier(base_point));
    }
    let carrier = closure.carrier();
    let mut points = vec![base_point];

    for step in 1..length {
        let map_limit = step.min(closure.len());
        let mut allowed = KSet::full(carrier);
        let mut all_constraints_cofinite = true;
        for map_a in 0..map_limit {
            let a_at_base = closure.element(map_a).apply(points[0])?;
            for map_b in 0..map_limit {
                let b_at_base = closure.element(map_b).apply(points[0])?;
                if a_at_base != b_at_base {
                    // keep points where the two maps still disagree
                    let keep = closure.element(map_a).diff(closure.element(map_b))?;
                    all_constraints_cofinite &= !keep.is_finite();
                    allowed = allowed.intersect(&keep)?;
                }
                for &earlier in points.iter().take(step) {
                    let b_at_earlier = closure.element(map_b).apply(earlier)?;
                    if a_at_base != b_at_earlier {
                        // keep points whose map_a value avoids that value
                        let keep = closure.element(map_a).diff_const(b_at_earlier)?;
                        all_constraints_cofinite &= !keep.is_finite();
                        allowed = allowed.intersect(&keep)?;
                    }
                }
            }
        }
        // cofinite constraints can only exclude finitely many candidates
        debug_assert!(!all_constraints_cofinite || !allowed.is_finite() || carrier.is_finite());
        let pick = (search_window.0..search_window.1)
            .filter(|&p| carrier.contains(p))
            .find(|&p| allowed.contains(p) && !points.contains(&p))
            .ok_or(Error::WindowTooSmall { step })?;
        points.push(pick);
    }

    let mut seq = SpecialSequence::new(closure.clone(), points)?;
    match seq.verify()? {
        Verdict::Pass => Ok(seq),
        Verdict::Fail(v) => Err(Error::InvalidCarrier(format!(
            "construction produced an invalid sequence at {v:?}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acts::{closure, EndoMap};
    use crate::carrier::Carrier;
    use crate::CarrierRef;

    fn int_carrier() -> CarrierRef {
        Carrier::int_line(-64, 64).unwrap()
    }

    fn shift_closure(word_len: usize, max_elements: usize) -> crate::acts::MonoidClosure {
        let z = int_carrier();
        closure(
            &z,
            &[EndoMap::affine(&z, 1, 1).unwrap()],
            word_len,
            max_elements,
        )
        .unwrap()
    }

    #[test]
    fn identity_closure_accepts_any_injective_sequence() {
        let z = int_carrier();
        let cl = closure(&z, &[], 2, 4).unwrap();
        let verdict = verify_special(&cl, &[5, -3, 7, 0]).unwrap();
        assert_eq!(verdict, Verdict::Pass);
    }

    #[test]
    fn consecutive_integers_fail_for_shift_closures() {
        // With shifts 0, +1, +2 the step-2 point collides: x_2 = x_1 + 1.
        let cl = shift_closure(2, 8);
        let verdict = verify_special(&cl, &[0, 1, 2, 3]).unwrap();
        assert_eq!(
            verdict,
            Verdict::Fail(Violation {
                condition: Condition::EarlierValueDisagreement,
                step: 2,
                map_a: 0,
                map_b: 1,
                point: Some(1),
            })
        );
    }

    #[test]
    fn greedy_construction_passes_its_own_scan() {
        let cl = shift_closure(19, 32);
        assert_eq!(cl.len(), 20);
        let seq = build_special(&cl, 0, 24, (0, 4096)).unwrap();
        assert!(seq.is_verified());
        assert_eq!(seq.len(), 24);
        assert_eq!(
            verify_special(seq.closure(), seq.points()).unwrap(),
            Verdict::Pass
        );
    }

    #[test]
    fn greedy_construction_is_deterministic_and_prefix_closed() {
        let cl = shift_closure(9, 16);
        let a = build_special(&cl, 0, 12, (0, 1024)).unwrap();
        let b = build_special(&cl, 0, 12, (0, 1024)).unwrap();
        assert_eq!(a.points(), b.points());
        for cut in 1..a.len() {
            let prefix = a.points()[..cut].to_vec();
            assert_eq!(verify_special(&cl, &prefix).unwrap(), Verdict::Pass);
        }
    }

    #[test]
    fn doubling_maps_leave_room_in_a_large_window() {
        let z = int_carrier();
        let cl = closure(&z, &[EndoMap::affine(&z, 2, 0).unwrap()], 4, 8).unwrap();
        assert_eq!(cl.len(), 5); // x, 2x, 4x, 8x, 16x
        let seq = build_special(&cl, 1, 8, (0, 1 << 20)).unwrap();
        assert!(seq.is_verified());
    }

    #[test]
    fn too_small_window_reports_the_failing_step() {
        let cl = shift_closure(9, 16);
        let err = build_special(&cl, 0, 12, (0, 4)).unwrap_err();
        assert!(matches!(err, Error::WindowTooSmall { step } if step >= 1));
    }

    #[test]
    fn padded_sequences_flag_the_short_enumeration() {
        let z = int_carrier();
        let cl = closure(&z, &[], 1, 2).unwrap();
        let seq = build_special(&cl, 0, 5, (0, 64)).unwrap();
        // no constraints: the least-point rule walks the window
        assert_eq!(seq.points(), &[0, 1, 2, 3, 4]);
        assert!(seq.constraints_padded());
        assert!(seq.to_file().constraints_padded);
    }

    #[test]
    fn duplicate_points_are_rejected() {
        let cl = shift_closure(2, 8);
        assert!(SpecialSequence::new(cl, vec![0, 1, 0]).is_err());
    }
}
