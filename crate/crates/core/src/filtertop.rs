//! The finite-depth realization of the largest topology for which a
//! filter over a special sequence converges to the base point: the
//! openness oracle, neighborhood chains, the two-sided separation
//! recursion, T1 witnesses, and filter pseudocharacter.
//!
//! The filter itself is never materialized as an infinite object.
//! Openness reduces to traces on the support: a candidate open set is
//! tested through `g^{-1}(U) . X_0` against the finite base.

use crate::acts::MonoidClosure;
use crate::error::{Error, Result};
use crate::sets::KSet;
use crate::special::SpecialSequence;
use crate::zariski::PsiValue;
use crate::Point;
use serde::Serialize;

/// Cap on the number of distinct finite intersections a refined base may
/// generate for the openness test.
const MEET_BUDGET: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FilterKind {
    /// All proper tails of the sequence.
    Tail,
    /// Tails intersected with user-supplied support subsets.
    Refined,
}

/// A finite base for a filter on the support of a special sequence.
/// Every base set contains the base point.
#[derive(Clone, Debug)]
pub struct FilterBase {
    seq: SpecialSequence,
    kind: FilterKind,
    base: Vec<KSet>,
    /// All distinct finite intersections of base sets; equals the base
    /// for tail filters, which are nested.
    meets: Vec<KSet>,
    /// The meet enumeration hit its budget; openness tests that fail on
    /// the stored meets are indeterminate rather than negative.
    meets_truncated: bool,
}

/// The tail filter of a verified sequence: base sets
/// `{x_0} + {x_b : b > a}` for each `a` below the last index. The
/// degenerate tail `{x_0}` is not included: the object being emulated
/// never contains it, and with it every set through the base point would
/// test open.
pub fn tail_filter(seq: &SpecialSequence) -> Result<FilterBase> {
    if !seq.is_verified() {
        return Err(Error::UnverifiedSequence);
    }
    let carrier = seq.closure().carrier();
    let points = seq.points();
    let mut base = Vec::new();
    for cut in 0..points.len().saturating_sub(1) {
        let mut tail = vec![points[0]];
        tail.extend_from_slice(&points[cut + 1..]);
        base.push(KSet::finite(carrier, tail)?);
    }
    if base.is_empty() {
        // a one-point sequence leaves only the base point itself
        base.push(KSet::finite(carrier, vec![points[0]])?);
    }
    Ok(FilterBase {
        seq: seq.clone(),
        kind: FilterKind::Tail,
        meets: base.clone(),
        base,
        meets_truncated: false,
    })
}

impl FilterBase {
    pub fn sequence(&self) -> &SpecialSequence {
        &self.seq
    }

    pub fn kind(&self) -> FilterKind {
        self.kind
    }

    pub fn base(&self) -> &[KSet] {
        &self.base
    }

    pub fn base_point(&self) -> Point {
        self.seq.base_point()
    }

    /// Adjoins user-supplied support subsets to the tail base; the
    /// generated filter is the one whose sets contain some intersection
    /// of tails and supports. Supports must live on the sequence support
    /// and contain the base point.
    pub fn refine(&self, supports: &[KSet]) -> Result<FilterBase> {
        if supports.is_empty() {
            return Err(Error::NotInFilter);
        }
        let support = self.seq.support_set();
        let mut base = self.base.clone();
        for s in supports {
            if !s.contains(self.base_point()) {
                return Err(Error::NotInFilter);
            }
            if !s.is_subset(&support)? {
                return Err(Error::InvalidCarrier(
                    "refinement supports must lie on the sequence support".into(),
                ));
            }
            if !base.contains(s) {
                base.push(s.clone());
            }
        }
        let (meets, meets_truncated) = close_under_intersection(&base, MEET_BUDGET)?;
        Ok(FilterBase {
            seq: self.seq.clone(),
            kind: FilterKind::Refined,
            base,
            meets,
            meets_truncated,
        })
    }

    /// True when the meet enumeration was cut off by its budget.
    pub fn meets_truncated(&self) -> bool {
        self.meets_truncated
    }

    /// True when the set meets every base set.
    pub fn meets_filter(&self, e: &KSet) -> Result<bool> {
        for f in &self.base {
            if f.intersect(e)?.is_empty() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True when the set contains some finite intersection of base sets,
    /// i.e. its trace belongs to the generated filter.
    fn contains_a_meet(&self, trace: &KSet) -> Result<bool> {
        for m in &self.meets {
            if m.is_subset(trace)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Closes the family under pairwise intersection; on hitting the budget
/// the partial family is returned with a truncation flag.
fn close_under_intersection(base: &[KSet], budget: usize) -> Result<(Vec<KSet>, bool)> {
    let mut family: Vec<KSet> = Vec::new();
    for s in base {
        if !family.contains(s) {
            family.push(s.clone());
        }
    }
    let mut frontier_start = 0;
    loop {
        let end = family.len();
        if frontier_start == end {
            return Ok((family, false));
        }
        for i in 0..end {
            for j in frontier_start.max(i + 1)..end {
                let meet = family[i].intersect(&family[j])?;
                if !family.contains(&meet) {
                    if family.len() >= budget {
                        return Ok((family, true));
                    }
                    family.push(meet);
                }
            }
        }
        frontier_start = end;
    }
}

/// Outcome of the openness test, relative to the checked closure.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum OpennessVerdict {
    Open { checked_maps: usize },
    NotOpen { map_index: usize, trace: KSet },
    Indeterminate { reason: String },
}

impl OpennessVerdict {
    pub fn is_open(&self) -> bool {
        matches!(self, OpennessVerdict::Open { .. })
    }
}

/// Tests whether a set belongs to the filter topology at this
/// truncation: for every closure map sending the base point into the
/// set, the preimage trace on the support must contain a finite
/// intersection of base sets. The first failing map is reported with its
/// trace.
pub fn is_open(u: &KSet, fb: &FilterBase, closure: &MonoidClosure) -> Result<OpennessVerdict> {
    if u.carrier() != closure.carrier() {
        return Err(Error::CarrierMismatch);
    }
    let carrier = closure.carrier();
    let base_point = fb.base_point();
    let support_points: Vec<Point> = fb.sequence().points().to_vec();
    for (index, map) in closure.elements().iter().enumerate() {
        if !u.contains(map.apply(base_point)?) {
            continue;
        }
        let trace_points: Vec<Point> = support_points
            .iter()
            .copied()
            .filter(|&p| u.contains(map.apply(p).expect("support point in carrier")))
            .collect();
        let trace = KSet::finite(carrier, trace_points)?;
        if !fb.contains_a_meet(&trace)? {
            if fb.meets_truncated {
                return Ok(OpennessVerdict::Indeterminate {
                    reason: format!(
                        "map {index}: no stored meet fits the trace, and the meet \
                         enumeration was truncated at {} sets",
                        fb.meets.len()
                    ),
                });
            }
            return Ok(OpennessVerdict::NotOpen {
                map_index: index,
                trace,
            });
        }
    }
    Ok(OpennessVerdict::Open {
        checked_maps: closure.len(),
    })
}

/// The neighborhood chain of a filter set: level 0 is the base point
/// alone, and each level adds `g_a(x_b)` for closure indices `a` below
/// sequence indices `b` with `x_b` in the set and `g_a(x_0)` already in
/// the previous level.
pub fn neighborhood_chain(
    f: &KSet,
    fb: &FilterBase,
    closure: &MonoidClosure,
    depth: usize,
) -> Result<Vec<KSet>> {
    let carrier = closure.carrier();
    if f.carrier() != carrier {
        return Err(Error::CarrierMismatch);
    }
    let mut in_filter = false;
    for b in fb.base() {
        if b.is_subset(f)? {
            in_filter = true;
            break;
        }
    }
    if !in_filter {
        return Err(Error::NotInFilter);
    }

    let points = fb.sequence().points();
    let base_point = fb.base_point();
    let mut chain = vec![KSet::singleton(carrier, base_point)?];
    for _ in 0..depth {
        let level = chain.last().unwrap();
        let mut grown = level.points().expect("levels are finite");
        for (seq_index, &x) in points.iter().enumerate() {
            if !f.contains(x) {
                continue;
            }
            for map_index in 0..seq_index.min(closure.len()) {
                let map = closure.element(map_index);
                if level.contains(map.apply(base_point)?) {
                    grown.push(map.apply(x)?);
                }
            }
        }
        chain.push(KSet::finite(carrier, grown)?);
    }
    Ok(chain)
}

/// Separation chains grown from two disjoint seed sets, and whether they
/// stayed disjoint at the final depth.
#[derive(Clone, Debug, Serialize)]
pub struct SeparationReport {
    pub a_chain: Vec<KSet>,
    pub b_chain: Vec<KSet>,
    pub disjoint: bool,
    pub warnings: Vec<String>,
}

/// Grows the two-sided separation recursion: each level adds `g_a(x_c)`
/// to a side when `g_a(x_0)` already lies on that side and the candidate
/// point is not on the other side, both sides advancing together.
/// Closedness of the seeds is checked through the openness of their
/// complements; failures are reported as warnings, not errors.
pub fn separate(
    seed_a: &KSet,
    seed_b: &KSet,
    fb: &FilterBase,
    closure: &MonoidClosure,
    depth: usize,
) -> Result<SeparationReport> {
    if !seed_a.intersect(seed_b)?.is_empty() {
        return Err(Error::NotDisjoint);
    }
    let mut warnings = Vec::new();
    for (name, seed) in [("a", seed_a), ("b", seed_b)] {
        match is_open(&seed.complement(), fb, closure)? {
            OpennessVerdict::Open { .. } => {}
            OpennessVerdict::NotOpen { map_index, .. } => warnings.push(format!(
                "seed {name} is not closed at this truncation (map {map_index})"
            )),
            OpennessVerdict::Indeterminate { reason } => {
                warnings.push(format!("seed {name} closedness indeterminate: {reason}"))
            }
        }
    }

    let points = fb.sequence().points();
    let base_point = fb.base_point();
    let mut a_chain = vec![seed_a.clone()];
    let mut b_chain = vec![seed_b.clone()];
    for _ in 0..depth {
        let a_level = a_chain.last().unwrap();
        let b_level = b_chain.last().unwrap();
        let mut next_a = a_level.clone();
        let mut next_b = b_level.clone();
        for (seq_index, &x) in points.iter().enumerate() {
            for map_index in 0..seq_index.min(closure.len()) {
                let map = closure.element(map_index);
                let image = map.apply(x)?;
                let at_base = map.apply(base_point)?;
                if a_level.contains(at_base) && !b_level.contains(image) {
                    next_a = next_a.union(&KSet::singleton(closure.carrier(), image)?)?;
                }
                if b_level.contains(at_base) && !a_level.contains(image) {
                    next_b = next_b.union(&KSet::singleton(closure.carrier(), image)?)?;
                }
            }
        }
        let stabilized = *a_chain.last().unwrap() == next_a && *b_chain.last().unwrap() == next_b;
        a_chain.push(next_a);
        b_chain.push(next_b);
        if stabilized {
            // pad deterministically to the requested depth
            while a_chain.len() <= depth {
                a_chain.push(a_chain.last().unwrap().clone());
                b_chain.push(b_chain.last().unwrap().clone());
            }
            break;
        }
    }
    let disjoint = a_chain
        .last()
        .unwrap()
        .intersect(b_chain.last().unwrap())?
        .is_empty();
    Ok(SeparationReport {
        a_chain,
        b_chain,
        disjoint,
        warnings,
    })
}

/// Cutoff witness for one map: past this sequence index the map never
/// hits the excluded point. `vacuous` marks a cutoff at the last index,
/// where nothing remains to witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CutoffWitness {
    pub map_index: usize,
    pub cutoff: usize,
    pub vacuous: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct T1Report {
    pub point: Point,
    pub witnesses: Vec<CutoffWitness>,
    /// Maps sending the base point onto the probe, which do not
    /// participate.
    pub skipped_maps: usize,
}

/// For each closure map with `g(x_0) != x`, the least cutoff `a` such
/// that `g(x_b) != x` for every `b > a` within the sequence; together
/// these witness that the complement of `{x}` is open at this
/// truncation.
pub fn t1_witness(x: Point, fb: &FilterBase, closure: &MonoidClosure) -> Result<T1Report> {
    if !closure.carrier().contains(x) {
        return Err(Error::PointOutsideCarrier(x));
    }
    let points = fb.sequence().points();
    let last = points.len() - 1;
    let mut witnesses = Vec::new();
    let mut skipped = 0;
    for (map_index, map) in closure.elements().iter().enumerate() {
        if map.apply(fb.base_point())? == x {
            skipped += 1;
            continue;
        }
        let mut cutoff = 0;
        for (seq_index, &p) in points.iter().enumerate().skip(1) {
            if map.apply(p)? == x {
                cutoff = seq_index;
            }
        }
        witnesses.push(CutoffWitness {
            map_index,
            cutoff,
            vacuous: cutoff == last,
        });
    }
    Ok(T1Report {
        point: x,
        witnesses,
        skipped_maps: skipped,
    })
}

/// Image of a finite set under every closure element.
pub fn orbit(f: &KSet, closure: &MonoidClosure) -> Result<KSet> {
    if f.carrier() != closure.carrier() {
        return Err(Error::CarrierMismatch);
    }
    let points = f
        .points()
        .ok_or(Error::InfiniteSet("orbit of an infinite set"))?;
    let mut image = Vec::new();
    for map in closure.elements() {
        for &p in &points {
            image.push(map.apply(p)?);
        }
    }
    KSet::finite(closure.carrier(), image)
}

/// Minimum-size subfamily of the base whose intersection equals the
/// intersection of the whole base, found by increasing size in index
/// order; exact relative to the truncated base.
pub fn filter_pseudocharacter(fb: &FilterBase) -> Result<(PsiValue, Vec<usize>)> {
    let base = fb.base();
    let mut target = base[0].clone();
    for s in &base[1..] {
        target = target.intersect(s)?;
    }
    // iterative deepening over subfamilies, first hit is index-lex least
    let node_budget = 2_000_000usize;
    let mut nodes = 0usize;
    for size in 1..=base.len() {
        let mut chosen: Vec<usize> = Vec::with_capacity(size);
        if let Some(found) = subfamily_search(
            base,
            &target,
            0,
            size,
            &KSet::full(target.carrier()),
            &mut chosen,
            &mut nodes,
            node_budget,
        )? {
            return Ok((PsiValue::Exact(size), found));
        }
        if nodes > node_budget {
            // greedy fallback: take the whole base as the trivial bound
            return Ok((PsiValue::AtMost(base.len()), (0..base.len()).collect()));
        }
    }
    unreachable!("the full base reproduces its own intersection")
}

#[allow(clippy::too_many_arguments)]
fn subfamily_search(
    base: &[KSet],
    target: &KSet,
    start: usize,
    left: usize,
    acc: &KSet,
    chosen: &mut Vec<usize>,
    nodes: &mut usize,
    budget: usize,
) -> Result<Option<Vec<usize>>> {
    *nodes += 1;
    if *nodes > budget {
        return Ok(None);
    }
    if left == 0 {
        if *acc == *target {
            return Ok(Some(chosen.clone()));
        }
        return Ok(None);
    }
    for pick in start..=base.len().saturating_sub(left) {
        let next = acc.intersect(&base[pick])?;
        chosen.push(pick);
        if let Some(found) = subfamily_search(
            base,
            target,
            pick + 1,
            left - 1,
            &next,
            chosen,
            nodes,
            budget,
        )? {
            return Ok(Some(found));
        }
        chosen.pop();
    }
    Ok(None)
}

/// Openness verdicts and chains serialize with this scenario framing.
#[derive(Clone, Debug, Serialize)]
pub struct OpennessReport {
    pub closure_size: usize,
    pub sequence_length: usize,
    pub base_size: usize,
    pub kind: FilterKind,
    pub verdict: OpennessVerdict,
}

impl OpennessReport {
    pub fn new(fb: &FilterBase, closure: &MonoidClosure, verdict: OpennessVerdict) -> Self {
        OpennessReport {
            closure_size: closure.len(),
            sequence_length: fb.sequence().len(),
            base_size: fb.base().len(),
            kind: fb.kind(),
            verdict,
        }
    }
}
