//! Prebuilt scenarios with expected verdicts, and the coordinate-preimage
//! identity check for powers of a finite group with trivial center.

use crate::acts::{closure, EndoMap, MonoidClosure};
use crate::carrier::{Carrier, CarrierRef, CayleyTable};
use crate::error::{Error, Result};
use crate::sets::KSet;
use crate::zariski::{build_subbase, Subbase, Tag, TruncationParams, DEFAULT_RAW_SET_BUDGET};
use crate::Point;
use serde::Serialize;
use std::collections::HashMap;

/// Optional overrides for the built-in scenario parameters.
#[derive(Clone, Debug, Default)]
pub struct ScenarioParams {
    /// Largest max-shift generator (nat-max).
    pub max_shift: Option<i64>,
    /// Number of adjacent transpositions (finitary-perms).
    pub transpositions: Option<usize>,
    /// Largest translation in either direction (int-shifts).
    pub shift_bound: Option<i64>,
    /// Power of the base group (group-power).
    pub exponent: Option<u32>,
    /// Generator family of the group-power scenario.
    pub family: GeneratorFamily,
    pub max_word_len: Option<usize>,
    pub max_elements: Option<usize>,
    pub const_window: Option<(Point, Point)>,
    pub probe: Option<(Point, Point)>,
}

/// Which self-maps of a group power generate the monoid.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GeneratorFamily {
    /// Left and right translations by every element.
    #[default]
    TwoSidedShifts,
    /// Translations plus componentwise inversion; the closure holds all
    /// maps `x -> a * x * b` and `x -> a * x^-1 * b`.
    ShiftsWithInversion,
    /// Translations and inversion closed under pointwise products as
    /// well as composition, enumerated up to a budget.
    Polynomials,
}

/// A fully materialized scenario: carrier, generators, truncation
/// bounds, and the checks its verdicts are expected to satisfy.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub carrier: CarrierRef,
    pub generators: Vec<EndoMap>,
    pub max_word_len: usize,
    pub max_elements: usize,
    pub const_window: Vec<Point>,
    pub probe: Vec<Point>,
    pub expectations: Vec<Expectation>,
}

/// One expected verdict with a human-readable reason.
#[derive(Clone, Debug)]
pub struct Expectation {
    pub check: Check,
    pub note: String,
}

#[derive(Clone, Debug)]
pub enum Check {
    IsolatedWithCertSize {
        point: Point,
        size: usize,
    },
    IsolationCertTags {
        point: Point,
        members: Vec<Tag>,
    },
    NotIsolated {
        point: Point,
    },
    /// Exhaustive scan: no single subbasic set equals the singleton.
    NoSingleSetIsolates {
        point: Point,
    },
    PsiExact {
        point: Point,
        value: usize,
    },
    PsiInfinite {
        point: Point,
    },
    AllNonemptySubbasicCofinite,
    SummaryDiscreteOnProbe,
    SummaryNonDiscrete,
    /// Every smallest subbase neighborhood is the point itself.
    AllMinNeighborhoodsSingleton,
    /// Every coordinate preimage belongs to the generated topology.
    ProjectionPreimagesOpen,
    /// The coordinate preimage equals the intersection of its two-sided
    /// shift difference sets, for every coordinate and group element.
    CoordinateIdentity,
}

pub fn scenario_names() -> &'static [&'static str] {
    &["nat-max", "finitary-perms", "int-shifts", "group-power"]
}

/// Builds a named scenario with defaults tuned so that every expectation
/// is decidable at desk scale.
pub fn build_scenario(name: &str, params: &ScenarioParams) -> Result<Scenario> {
    match name {
        "nat-max" => nat_max(params),
        "finitary-perms" => finitary_perms(params),
        "int-shifts" | "int-shifts-left" => int_shifts(params),
        "group-power" => group_power(params),
        other => Err(Error::UnknownScenario(other.to_string())),
    }
}

fn range_points(range: (Point, Point)) -> Vec<Point> {
    (range.0..range.1).collect()
}

/// Max-shift monoid on the naturals. Isolating a probe point `n` needs
/// the shift past it, so the generator bound sits one above the probe.
fn nat_max(params: &ScenarioParams) -> Result<Scenario> {
    let probe = params.probe.unwrap_or((0, 9));
    let max_shift = params.max_shift.unwrap_or(probe.1);
    let const_window = params.const_window.unwrap_or((0, 16));
    let carrier = Carrier::nat_line(0, 32.max(const_window.1))?;
    let generators: Vec<EndoMap> = (1..=max_shift)
        .map(|c| EndoMap::max_shift(&carrier, c))
        .collect::<Result<_>>()?;
    let mut expectations = vec![Expectation {
        check: Check::SummaryDiscreteOnProbe,
        note: "every probed point is cut out by finitely many inequalities".into(),
    }];
    for n in range_points(probe) {
        expectations.push(Expectation {
            check: Check::IsolatedWithCertSize {
                point: n,
                size: n as usize + 1,
            },
            note: format!(
                "the singleton at {n} is the shift difference below {} minus the {n} smaller constants",
                n + 1
            ),
        });
        let mut members = vec![Tag::Diff {
            f: 0,
            g: n as usize + 1,
        }];
        members.extend((0..n).map(|k| Tag::DiffConst { f: 0, c: k }));
        expectations.push(Expectation {
            check: Check::IsolationCertTags { point: n, members },
            note: format!("certificate tags at {n} follow the singleton formula"),
        });
    }
    Ok(Scenario {
        name: "nat-max".into(),
        carrier,
        generators,
        max_word_len: params.max_word_len.unwrap_or(2),
        max_elements: params.max_elements.unwrap_or(64),
        const_window: range_points(const_window),
        probe: range_points(probe),
        expectations,
    })
}

/// Adjacent transpositions acting on the naturals: every point falls to
/// exactly two inequalities, never one.
fn finitary_perms(params: &ScenarioParams) -> Result<Scenario> {
    let span = params.transpositions.unwrap_or(8);
    let carrier = Carrier::nat_line(0, 16)?;
    let generators: Vec<EndoMap> = (0..span as Point)
        .map(|i| EndoMap::transposition(&carrier, i, i + 1))
        .collect::<Result<_>>()?;
    let probe = params.probe.unwrap_or((0, span as Point + 1));
    let mut expectations = vec![Expectation {
        check: Check::SummaryDiscreteOnProbe,
        note: "finite-support permutations isolate every probed point".into(),
    }];
    for x in range_points(probe) {
        expectations.push(Expectation {
            check: Check::IsolatedWithCertSize { point: x, size: 2 },
            note: format!("two inequalities suffice at {x}"),
        });
        expectations.push(Expectation {
            check: Check::NoSingleSetIsolates { point: x },
            note: format!("no single difference set equals the singleton at {x}"),
        });
        expectations.push(Expectation {
            check: Check::PsiExact { point: x, value: 2 },
            note: format!("the subbase pseudocharacter at {x} is exactly two"),
        });
    }
    Ok(Scenario {
        name: "finitary-perms".into(),
        carrier,
        generators,
        max_word_len: params.max_word_len.unwrap_or(6),
        max_elements: params.max_elements.unwrap_or(4096),
        const_window: range_points(params.const_window.unwrap_or((0, 16))),
        probe: range_points(probe),
        expectations,
    })
}

/// Pure translations of the integers: all nonempty subbasic sets are
/// cofinite, so nothing is isolated anywhere.
fn int_shifts(params: &ScenarioParams) -> Result<Scenario> {
    let bound = params.shift_bound.unwrap_or(8);
    let carrier = Carrier::int_line(-32, 32)?;
    let generators: Vec<EndoMap> = (-bound..=bound)
        .filter(|&b| b != 0)
        .map(|b| EndoMap::affine(&carrier, 1, b))
        .collect::<Result<_>>()?;
    let probe = params.probe.unwrap_or((-8, 9));
    let mut expectations = vec![
        Expectation {
            check: Check::AllNonemptySubbasicCofinite,
            note: "translations only ever disagree on cofinite sets".into(),
        },
        Expectation {
            check: Check::SummaryNonDiscrete,
            note: "cofinite sets never intersect down to a singleton".into(),
        },
    ];
    for x in range_points(probe) {
        expectations.push(Expectation {
            check: Check::NotIsolated { point: x },
            note: format!("{x} has no finite subbasic neighborhood"),
        });
        expectations.push(Expectation {
            check: Check::PsiInfinite { point: x },
            note: format!("no finite subfamily pins down {x}"),
        });
    }
    Ok(Scenario {
        name: "int-shifts".into(),
        carrier,
        generators,
        max_word_len: params.max_word_len.unwrap_or(1),
        max_elements: params.max_elements.unwrap_or(64),
        const_window: range_points(params.const_window.unwrap_or((-8, 9))),
        probe: range_points(probe),
        expectations,
    })
}

/// Two-sided translations of a power of the six-element symmetric group:
/// the difference sets alone recover every coordinate preimage.
fn group_power(params: &ScenarioParams) -> Result<Scenario> {
    let exponent = params.exponent.unwrap_or(2);
    let group = CayleyTable::symmetric_3();
    let carrier = Carrier::group_power(group, exponent)?;
    let size = carrier.size().unwrap() as Point;
    let generators = family_generators(&carrier, params.family)?;
    let expectations = vec![
        Expectation {
            check: Check::CoordinateIdentity,
            note: "coordinate preimages are intersections of two-sided shift difference sets"
                .into(),
        },
        Expectation {
            check: Check::ProjectionPreimagesOpen,
            note: "every coordinate preimage lies in the generated topology".into(),
        },
        Expectation {
            check: Check::AllMinNeighborhoodsSingleton,
            note: "the subbase already separates every pair of points".into(),
        },
    ];
    Ok(Scenario {
        name: "group-power".into(),
        carrier,
        generators,
        // the inversion layer saturates one word later than the shifts
        max_word_len: params.max_word_len.unwrap_or(match params.family {
            GeneratorFamily::TwoSidedShifts => 3,
            _ => 4,
        }),
        max_elements: params.max_elements.unwrap_or(match params.family {
            GeneratorFamily::TwoSidedShifts => 2048,
            _ => 3072,
        }),
        const_window: range_points(params.const_window.unwrap_or((0, size))),
        probe: range_points(params.probe.unwrap_or((0, size.min(6)))),
        expectations,
    })
}

/// Budget for the pointwise-product enumeration of the polynomial
/// family; saturation past it is reported through the closure flags.
const POLYNOMIAL_BUDGET: usize = 1024;

fn family_generators(carrier: &CarrierRef, family: GeneratorFamily) -> Result<Vec<EndoMap>> {
    let size = carrier.size().unwrap() as Point;
    let mut generators = Vec::with_capacity(2 * size as usize + 1);
    for g in 0..size {
        generators.push(translation(carrier, g, Side::Left)?);
    }
    for g in 0..size {
        generators.push(translation(carrier, g, Side::Right)?);
    }
    match family {
        GeneratorFamily::TwoSidedShifts => {}
        GeneratorFamily::ShiftsWithInversion => {
            generators.push(inversion(carrier)?);
        }
        GeneratorFamily::Polynomials => {
            generators.push(inversion(carrier)?);
            generators = product_closure(carrier, generators, POLYNOMIAL_BUDGET)?;
        }
    }
    Ok(generators)
}

#[derive(Clone, Copy)]
enum Side {
    Left,
    Right,
}

fn translation(carrier: &CarrierRef, g: Point, side: Side) -> Result<EndoMap> {
    let size = carrier.size().unwrap() as Point;
    let images = (0..size)
        .map(|x| match side {
            Side::Left => carrier.power_product(g, x),
            Side::Right => carrier.power_product(x, g),
        })
        .collect::<Result<Vec<_>>>()?;
    EndoMap::table(carrier, images)
}

fn inversion(carrier: &CarrierRef) -> Result<EndoMap> {
    let size = carrier.size().unwrap() as Point;
    let images = (0..size)
        .map(|x| carrier.power_inverse(x))
        .collect::<Result<Vec<_>>>()?;
    EndoMap::table(carrier, images)
}

/// The pointwise product `x -> f(x) * g(x)` of two table maps.
fn pointwise_product(carrier: &CarrierRef, f: &EndoMap, g: &EndoMap) -> Result<EndoMap> {
    let size = carrier.size().unwrap() as Point;
    let images = (0..size)
        .map(|x| carrier.power_product(f.apply(x)?, g.apply(x)?))
        .collect::<Result<Vec<_>>>()?;
    EndoMap::table(carrier, images)
}

/// Fixed point of the seeds under composition and pointwise product,
/// breadth-first and deduplicated, cut off at the budget.
fn product_closure(
    carrier: &CarrierRef,
    seeds: Vec<EndoMap>,
    max_elements: usize,
) -> Result<Vec<EndoMap>> {
    let size = carrier.size().unwrap() as Point;
    let key = |m: &EndoMap| -> Result<Vec<Point>> { (0..size).map(|x| m.apply(x)).collect() };
    let mut elements: Vec<EndoMap> = Vec::new();
    let mut seen: HashMap<Vec<Point>, ()> = HashMap::new();
    for seed in seeds {
        if seen.insert(key(&seed)?, ()).is_none() {
            elements.push(seed);
        }
    }
    let mut frontier_start = 0;
    'grow: loop {
        let end = elements.len();
        if frontier_start == end {
            break;
        }
        for i in 0..end {
            // every pair with a new element, self-pairs included
            let fresh = if i >= frontier_start {
                i
            } else {
                frontier_start
            };
            for j in fresh..end {
                let (a, b) = (elements[i].clone(), elements[j].clone());
                for candidate in [
                    a.compose(&b)?,
                    b.compose(&a)?,
                    pointwise_product(carrier, &a, &b)?,
                    pointwise_product(carrier, &b, &a)?,
                ] {
                    let k = key(&candidate)?;
                    if seen.contains_key(&k) {
                        continue;
                    }
                    if elements.len() >= max_elements {
                        break 'grow;
                    }
                    seen.insert(k, ());
                    elements.push(candidate);
                }
            }
        }
        frontier_start = end;
    }
    Ok(elements)
}

impl Scenario {
    pub fn closure(&self) -> Result<MonoidClosure> {
        closure(
            &self.carrier,
            &self.generators,
            self.max_word_len,
            self.max_elements,
        )
    }

    pub fn subbase(&self) -> Result<Subbase> {
        build_subbase(&self.closure()?, &self.const_window, DEFAULT_RAW_SET_BUDGET)
    }
}

/// Checks the coordinate-preimage identity on a power of a finite group
/// with trivial center: the preimage of `h` under the given coordinate
/// equals the intersection, over all pairs `(a, b)` with `a h != h b`,
/// of the difference sets between left translation by the embedded `a`
/// and right translation by the embedded `b`.
pub fn verify_coordinate_identity(
    group: &CayleyTable,
    exponent: u32,
    coordinate: u32,
    element: usize,
) -> Result<bool> {
    if !group.has_trivial_center() {
        return Err(Error::HypothesisViolated(
            "the base group must have trivial center".into(),
        ));
    }
    if element >= group.order() {
        return Err(Error::InvalidCarrier(format!(
            "group element {element} out of range"
        )));
    }
    let carrier = Carrier::group_power(group.clone(), exponent)?;
    let size = carrier.size().unwrap() as Point;

    let mut intersection = KSet::full(&carrier);
    for a in 0..group.order() {
        for b in 0..group.order() {
            if group.mul(a, element) == group.mul(element, b) {
                continue;
            }
            let left = translation(&carrier, carrier.power_embed(coordinate, a)?, Side::Left)?;
            let right = translation(&carrier, carrier.power_embed(coordinate, b)?, Side::Right)?;
            intersection = intersection.intersect(&left.diff(&right)?)?;
        }
    }

    let preimage_points: Vec<Point> = (0..size)
        .filter(|&x| carrier.power_coordinate(x, coordinate).unwrap() == element)
        .collect();
    let preimage = KSet::finite(&carrier, preimage_points)?;
    Ok(intersection == preimage)
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub note: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogReport {
    pub scenario: String,
    pub parameters: TruncationParams,
    pub checks: Vec<CheckResult>,
    pub all_pass: bool,
}

/// Runs every expectation of a scenario against freshly computed
/// verdicts. Mismatches are results, not errors.
pub fn run_expectations(scenario: &Scenario) -> Result<CatalogReport> {
    let subbase = scenario.subbase()?;
    let mut checks = Vec::new();
    for expectation in &scenario.expectations {
        let (name, pass, detail) = evaluate(&expectation.check, scenario, &subbase)?;
        checks.push(CheckResult {
            name,
            note: expectation.note.clone(),
            pass,
            detail,
        });
    }
    let all_pass = checks.iter().all(|c| c.pass);
    Ok(CatalogReport {
        scenario: scenario.name.clone(),
        parameters: subbase.truncation_params(&scenario.probe),
        checks,
        all_pass,
    })
}

fn evaluate(
    check: &Check,
    scenario: &Scenario,
    subbase: &Subbase,
) -> Result<(String, bool, String)> {
    Ok(match check {
        Check::IsolatedWithCertSize { point, size } => {
            let cert = subbase.isolation(*point)?;
            let (pass, detail) = match &cert {
                Some(c) if c.members.len() == *size && c.verify(subbase)? => {
                    (true, format!("{} members", c.members.len()))
                }
                Some(c) => (false, format!("{} members, wanted {size}", c.members.len())),
                None => (false, "not isolated".into()),
            };
            (
                format!("isolated({point}) with {size} members"),
                pass,
                detail,
            )
        }
        Check::IsolationCertTags { point, members } => {
            let cert = subbase.isolation(*point)?;
            let (pass, detail) = match &cert {
                Some(c) if c.members == *members => (true, "tags match".into()),
                Some(c) => (
                    false,
                    format!(
                        "got [{}]",
                        c.members
                            .iter()
                            .map(|t| t.to_string())
                            .collect::<Vec<_>>()
                            .join(", ")
                    ),
                ),
                None => (false, "not isolated".into()),
            };
            (format!("certificate tags at {point}"), pass, detail)
        }
        Check::NotIsolated { point } => {
            let pass = subbase.isolation(*point)?.is_none();
            (format!("not isolated({point})"), pass, String::new())
        }
        Check::NoSingleSetIsolates { point } => {
            let pass = !subbase
                .sets()
                .iter()
                .any(|s| s.set.is_singleton() == Some(*point));
            (
                format!("no one-set certificate at {point}"),
                pass,
                String::new(),
            )
        }
        Check::PsiExact { point, value } => {
            let psi = subbase.pseudocharacter(*point)?;
            let pass = psi.value == crate::zariski::PsiValue::Exact(*value);
            (
                format!("psi({point}) = {value}"),
                pass,
                format!("{:?}", psi.value),
            )
        }
        Check::PsiInfinite { point } => {
            let psi = subbase.pseudocharacter(*point)?;
            let pass = psi.value == crate::zariski::PsiValue::Infinite;
            (
                format!("psi({point}) infinite"),
                pass,
                format!("{:?}", psi.value),
            )
        }
        Check::AllNonemptySubbasicCofinite => {
            let pass = subbase
                .sets()
                .iter()
                .all(|s| s.set.is_empty() || !s.set.is_finite());
            (
                "all nonempty subbasic sets cofinite".into(),
                pass,
                String::new(),
            )
        }
        Check::SummaryDiscreteOnProbe => {
            let pass = scenario
                .probe
                .iter()
                .map(|&x| subbase.isolation(x))
                .collect::<Result<Vec<_>>>()?
                .iter()
                .all(|c| c.is_some());
            ("discrete on probe".into(), pass, String::new())
        }
        Check::SummaryNonDiscrete => {
            let pass = scenario
                .probe
                .iter()
                .map(|&x| subbase.isolation(x))
                .collect::<Result<Vec<_>>>()?
                .iter()
                .any(|c| c.is_none());
            ("non-discrete witness on probe".into(), pass, String::new())
        }
        Check::AllMinNeighborhoodsSingleton => {
            let size = scenario.carrier.size().ok_or(Error::InfiniteCarrier)? as Point;
            let mut pass = true;
            for x in 0..size {
                if subbase.min_neighborhood(x)?.is_singleton() != Some(x) {
                    pass = false;
                    break;
                }
            }
            (
                "smallest neighborhoods are singletons".into(),
                pass,
                String::new(),
            )
        }
        Check::ProjectionPreimagesOpen => {
            let (group, exponent) = scenario.carrier.group()?;
            let order = group.order();
            let size = scenario.carrier.size().unwrap() as Point;
            let mut pass = true;
            let mut detail = String::new();
            for coordinate in 0..exponent {
                for element in 0..order {
                    let points: Vec<Point> = (0..size)
                        .filter(|&x| {
                            scenario.carrier.power_coordinate(x, coordinate).unwrap() == element
                        })
                        .collect();
                    let preimage = KSet::finite(&scenario.carrier, points)?;
                    if !subbase.generated_contains(&preimage)? {
                        pass = false;
                        detail = format!("coordinate {coordinate}, element {element}");
                        break;
                    }
                }
            }
            ("coordinate preimages open".into(), pass, detail)
        }
        Check::CoordinateIdentity => {
            let (group, exponent) = scenario.carrier.group()?;
            let order = group.order();
            let mut pass = true;
            let mut detail = String::new();
            for coordinate in 0..exponent {
                for element in 0..order {
                    if !verify_coordinate_identity(group, exponent, coordinate, element)? {
                        pass = false;
                        detail = format!("coordinate {coordinate}, element {element}");
                        break;
                    }
                }
            }
            (
                format!(
                    "coordinate identity over {} pairs",
                    exponent as usize * order
                ),
                pass,
                detail,
            )
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nat_max_scenario_counts() {
        let s = build_scenario("nat-max", &ScenarioParams::default()).unwrap();
        assert_eq!(s.generators.len(), 9);
        let cl = s.closure().unwrap();
        assert_eq!(cl.len(), 10);
        assert!(cl.is_complete());
    }

    #[test]
    fn finitary_perms_scenario_counts() {
        let s = build_scenario("finitary-perms", &ScenarioParams::default()).unwrap();
        assert_eq!(s.generators.len(), 8);
    }

    #[test]
    fn group_power_scenario_counts() {
        let s = build_scenario(
            "group-power",
            &ScenarioParams {
                exponent: Some(2),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(s.carrier.size(), Some(36));
        assert_eq!(s.generators.len(), 72);
        let cl = s.closure().unwrap();
        // two-sided shifts: one per pair of group elements
        assert_eq!(cl.len(), 36 * 36);
        assert!(cl.is_complete());
    }

    #[test]
    fn unknown_scenarios_are_rejected() {
        assert!(matches!(
            build_scenario("nope", &ScenarioParams::default()),
            Err(Error::UnknownScenario(_))
        ));
    }

    #[test]
    fn coordinate_identity_holds_for_sym3() {
        let group = CayleyTable::symmetric_3();
        for coordinate in 0..2 {
            for element in 0..6 {
                assert!(
                    verify_coordinate_identity(&group, 2, coordinate, element).unwrap(),
                    "failed at ({coordinate}, {element})"
                );
            }
        }
    }

    #[test]
    fn coordinate_identity_rejects_abelian_groups() {
        let group = CayleyTable::cyclic(2).unwrap();
        assert!(matches!(
            verify_coordinate_identity(&group, 1, 0, 0),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn coordinate_identity_single_power() {
        let group = CayleyTable::symmetric_3();
        assert!(verify_coordinate_identity(&group, 1, 0, 0).unwrap());
    }

    #[test]
    fn generator_families_refine_each_other() {
        let subbase_for = |family: GeneratorFamily| {
            let scenario = build_scenario(
                "group-power",
                &ScenarioParams {
                    exponent: Some(1),
                    family,
                    ..Default::default()
                },
            )
            .unwrap();
            scenario.subbase().unwrap()
        };
        let shifts = subbase_for(GeneratorFamily::TwoSidedShifts);
        let with_inversion = subbase_for(GeneratorFamily::ShiftsWithInversion);
        let polynomials = subbase_for(GeneratorFamily::Polynomials);

        // richer families only ever add subbasic sets
        let family_sets =
            |sb: &Subbase| -> Vec<KSet> { sb.sets().iter().map(|s| s.set.clone()).collect() };
        let contains_all = |big: &Subbase, small: &Subbase| {
            let big_sets = family_sets(big);
            family_sets(small).iter().all(|s| big_sets.contains(s))
        };
        assert!(contains_all(&with_inversion, &shifts));
        assert!(contains_all(&polynomials, &with_inversion));
        assert!(with_inversion.len() > shifts.len());

        // the inversion closure holds both map shapes
        let scenario = build_scenario(
            "group-power",
            &ScenarioParams {
                exponent: Some(1),
                family: GeneratorFamily::ShiftsWithInversion,
                ..Default::default()
            },
        )
        .unwrap();
        let cl = scenario.closure().unwrap();
        assert_eq!(cl.len(), 72); // a*x*b and a*x^-1*b
        assert!(cl.is_complete());

        // coordinate preimages stay open under every family
        for sb in [&shifts, &with_inversion, &polynomials] {
            for element in 0..6 {
                let preimage = KSet::singleton(sb.closure().carrier(), element).unwrap();
                assert!(sb.generated_contains(&preimage).unwrap());
            }
        }
    }

    #[test]
    fn abelian_left_and_right_shift_subbases_coincide() {
        let carrier = Carrier::group_power(CayleyTable::cyclic(6).unwrap(), 1).unwrap();
        let size = carrier.size().unwrap() as Point;
        let lefts: Vec<EndoMap> = (0..size)
            .map(|g| translation(&carrier, g, Side::Left).unwrap())
            .collect();
        let rights: Vec<EndoMap> = (0..size)
            .map(|g| translation(&carrier, g, Side::Right).unwrap())
            .collect();
        let window: Vec<Point> = (0..size).collect();
        let left_subbase = build_subbase(
            &closure(&carrier, &lefts, 2, 64).unwrap(),
            &window,
            DEFAULT_RAW_SET_BUDGET,
        )
        .unwrap();
        let right_subbase = build_subbase(
            &closure(&carrier, &rights, 2, 64).unwrap(),
            &window,
            DEFAULT_RAW_SET_BUDGET,
        )
        .unwrap();
        let two_sided = build_subbase(
            &closure(&carrier, &[lefts, rights].concat(), 2, 128).unwrap(),
            &window,
            DEFAULT_RAW_SET_BUDGET,
        )
        .unwrap();
        let family = |sb: &Subbase| {
            let mut sets: Vec<KSet> = sb.sets().iter().map(|s| s.set.clone()).collect();
            sets.sort_by_key(|s| s.points().unwrap());
            sets.sort_by_key(|s| s.points().unwrap().len());
            sets
        };
        assert_eq!(family(&left_subbase), family(&right_subbase));
        assert_eq!(family(&left_subbase), family(&two_sided));
    }

    #[test]
    fn int_shift_expectations_all_pass() {
        let s = build_scenario("int-shifts", &ScenarioParams::default()).unwrap();
        let report = run_expectations(&s).unwrap();
        assert!(report.all_pass, "{:#?}", report.checks);
    }

    #[test]
    fn nat_max_expectations_all_pass() {
        let s = build_scenario("nat-max", &ScenarioParams::default()).unwrap();
        let report = run_expectations(&s).unwrap();
        assert!(report.all_pass, "{:#?}", report.checks);
    }
}
