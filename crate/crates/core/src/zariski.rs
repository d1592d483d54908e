//! The difference-set subbase of a monoid closure, point isolation with
//! re-verifiable certificates, pseudocharacter, and (on finite carriers)
//! the generated topology.
//!
//! Verdicts are relative to the enumerated fragment of the monoid: a
//! "not isolated" answer means "not isolated within this word length and
//! constant window", and reports echo those parameters.

use crate::acts::MonoidClosure;
use crate::error::{Error, Result};
use crate::sets::{Cardinality, KSet};
use crate::Point;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::HashMap;
use std::fmt;

/// Default cap on the number of raw (pre-deduplication) subbasic sets.
pub const DEFAULT_RAW_SET_BUDGET: usize = 8_000_000;

/// Default cap on the number of open sets a generated topology may hold.
pub const DEFAULT_TOPOLOGY_BUDGET: usize = 1 << 16;

/// Node budget for the exact pseudocharacter search before it falls back
/// to a flagged greedy upper bound.
const PSI_NODE_BUDGET: usize = 5_000_000;

/// Provenance of a subbasic set: a difference set of two closure
/// elements, or of one element against a constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    Diff { f: usize, g: usize },
    DiffConst { f: usize, c: Point },
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::Diff { f: a, g } => write!(f, "diff({a},{g})"),
            Tag::DiffConst { f: a, c } => write!(f, "diff_const({a},{c})"),
        }
    }
}

impl Serialize for Tag {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Tag::Diff { f, g } => {
                let mut s = serializer.serialize_struct("Tag", 3)?;
                s.serialize_field("kind", "diff")?;
                s.serialize_field("f", f)?;
                s.serialize_field("g", g)?;
                s.end()
            }
            Tag::DiffConst { f, c } => {
                let mut s = serializer.serialize_struct("Tag", 3)?;
                s.serialize_field("kind", "diff_const")?;
                s.serialize_field("f", f)?;
                s.serialize_field("c", c)?;
                s.end()
            }
        }
    }
}

/// A tagged subbasic set.
#[derive(Clone, Debug)]
pub struct SubbasicSet {
    pub tag: Tag,
    pub set: KSet,
}

/// The deduplicated family of difference sets of a monoid closure over a
/// constant window, in tag order.
#[derive(Clone, Debug)]
pub struct Subbase {
    closure: MonoidClosure,
    const_window: Vec<Point>,
    sets: Vec<SubbasicSet>,
}

/// Materializes every `Diff(i, j)` for `i < j` and `DiffConst(i, c)` for
/// `c` in the window, deduplicating equal sets onto their least tag.
pub fn build_subbase(
    closure: &MonoidClosure,
    const_window: &[Point],
    max_raw_sets: usize,
) -> Result<Subbase> {
    if const_window.is_empty() {
        return Err(Error::InvalidCarrier("empty constant window".into()));
    }
    let mut window: Vec<Point> = const_window.to_vec();
    window.sort_unstable();
    window.dedup();
    for &c in &window {
        if !closure.carrier().contains(c) {
            return Err(Error::PointOutsideCarrier(c));
        }
    }

    let m = closure.len();
    let raw = m * (m - 1) / 2 + m * window.len();
    if raw > max_raw_sets {
        return Err(Error::BudgetExceeded {
            what: "raw subbasic sets",
            needed: raw,
            limit: max_raw_sets,
        });
    }

    let mut sets: Vec<SubbasicSet> = Vec::new();
    let mut seen: HashMap<crate::sets::SetRepr, ()> = HashMap::new();

    // Tag order equals generation order, so first-kept is least-tag.
    for f in 0..m {
        for g in (f + 1)..m {
            let set = closure.element(f).diff(closure.element(g))?;
            if !seen.contains_key(set.repr()) {
                seen.insert(set.repr().clone(), ());
                sets.push(SubbasicSet {
                    tag: Tag::Diff { f, g },
                    set,
                });
            }
        }
    }
    for f in 0..m {
        for &c in &window {
            let set = closure.element(f).diff_const(c)?;
            if !seen.contains_key(set.repr()) {
                seen.insert(set.repr().clone(), ());
                sets.push(SubbasicSet {
                    tag: Tag::DiffConst { f, c },
                    set,
                });
            }
        }
    }

    Ok(Subbase {
        closure: closure.clone(),
        const_window: window,
        sets,
    })
}

/// Whether a singleton was certified open, or a pseudocharacter witness
/// was assembled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertKind {
    Isolation,
    Pseudocharacter,
}

/// A finite list of tagged subbasic sets whose intersection witnesses a
/// verdict; re-verifiable from the tags alone.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub point: Point,
    pub kind: CertKind,
    pub members: Vec<Tag>,
}

impl Certificate {
    /// Recomputes every member from its tag and checks the defining
    /// intersection property, independently of how the certificate was
    /// found. Stays valid against any subbase whose closure and window
    /// extend the original ones.
    pub fn verify(&self, subbase: &Subbase) -> Result<bool> {
        let mut intersection = KSet::full(subbase.closure.carrier());
        for tag in &self.members {
            let set = subbase.recompute_tag_set(*tag)?;
            if !set.contains(self.point) {
                return Ok(false);
            }
            intersection = intersection.intersect(&set)?;
        }
        match self.kind {
            CertKind::Isolation => Ok(intersection.is_singleton() == Some(self.point)),
            CertKind::Pseudocharacter => {
                let target = subbase.neighborhood_intersection(self.point)?;
                Ok(intersection == target)
            }
        }
    }
}

/// Pseudocharacter value relative to the enumerated subbase.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PsiValue {
    /// Exact minimum.
    Exact(usize),
    /// Best-known upper bound; the search budget ran out.
    AtMost(usize),
    /// No finite subfamily of the enumerated subbase has finite
    /// intersection at this point (every member through the point is
    /// cofinite over an infinite carrier).
    Infinite,
}

impl PsiValue {
    pub fn is_exact(&self) -> bool {
        !matches!(self, PsiValue::AtMost(_))
    }
}

#[derive(Clone, Debug)]
pub struct PsiOutcome {
    pub value: PsiValue,
    pub certificate: Option<Certificate>,
}

impl Subbase {
    pub fn closure(&self) -> &MonoidClosure {
        &self.closure
    }

    pub fn const_window(&self) -> &[Point] {
        &self.const_window
    }

    pub fn sets(&self) -> &[SubbasicSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// The set a tag denotes, recomputed from the closure; works for any
    /// valid tag, kept or deduplicated away.
    pub fn recompute_tag_set(&self, tag: Tag) -> Result<KSet> {
        match tag {
            Tag::Diff { f, g } => {
                if f >= self.closure.len() || g >= self.closure.len() {
                    return Err(Error::InvalidMap(format!("tag {tag} outside closure")));
                }
                self.closure.element(f).diff(self.closure.element(g))
            }
            Tag::DiffConst { f, c } => {
                if f >= self.closure.len() || !self.const_window.contains(&c) {
                    return Err(Error::InvalidMap(format!("tag {tag} outside subbase")));
                }
                self.closure.element(f).diff_const(c)
            }
        }
    }

    /// Indices of the subbasic sets containing `x`, in tag order.
    pub fn members_containing(&self, x: Point) -> Vec<usize> {
        self.sets
            .iter()
            .enumerate()
            .filter(|(_, s)| s.set.contains(x))
            .map(|(i, _)| i)
            .collect()
    }

    /// Intersection of every subbasic set containing `x` (the whole
    /// carrier when none does).
    pub fn neighborhood_intersection(&self, x: Point) -> Result<KSet> {
        if !self.closure.carrier().contains(x) {
            return Err(Error::PointOutsideCarrier(x));
        }
        let mut acc = KSet::full(self.closure.carrier());
        for s in &self.sets {
            if s.set.contains(x) {
                acc = acc.intersect(&s.set)?;
            }
        }
        Ok(acc)
    }

    /// Decides whether `{x}` is open in the generated topology, and if so
    /// returns the canonical certificate: the smallest finite member
    /// through `x` (ties by least tag), then for each remaining point of
    /// it, in increasing order, the least-tag member excluding that
    /// point. The certificate re-verifies exactly; the minimum possible
    /// member count is what [`Subbase::pseudocharacter`] reports.
    pub fn isolation(&self, x: Point) -> Result<Option<Certificate>> {
        if !self.closure.carrier().contains(x) {
            return Err(Error::PointOutsideCarrier(x));
        }
        let members = self.members_containing(x);
        if self.neighborhood_intersection(x)?.is_singleton() != Some(x) {
            return Ok(None);
        }

        // A singleton intersection over this algebra forces a finite
        // member through x; start from the tightest one.
        let seed = members
            .iter()
            .copied()
            .filter_map(|i| match self.sets[i].set.cardinality() {
                Cardinality::Finite(n) => Some((n, i)),
                Cardinality::Infinite => None,
            })
            .min()
            .map(|(_, i)| i)
            .expect("singleton intersection requires a finite member");

        let mut chosen = vec![seed];
        let mut intersection = self.sets[seed].set.clone();
        loop {
            let residual = intersection.minus(&KSet::singleton(self.closure.carrier(), x)?)?;
            let points = residual.points().expect("residual of a finite member");
            let Some(&y) = points.first() else {
                break;
            };
            let next = members
                .iter()
                .copied()
                .find(|&i| !self.sets[i].set.contains(y))
                .expect("singleton intersection covers every residual point");
            chosen.push(next);
            intersection = intersection.intersect(&self.sets[next].set)?;
        }

        Ok(Some(Certificate {
            point: x,
            kind: CertKind::Isolation,
            members: chosen.into_iter().map(|i| self.sets[i].tag).collect(),
        }))
    }

    /// Minimum size of a subfamily of the sets through `x` (plus the full
    /// carrier, by convention) whose intersection equals the intersection
    /// of all of them. Exact via iterative-deepening search with a node
    /// budget; ties break to the lexicographically least tag sequence.
    pub fn pseudocharacter(&self, x: Point) -> Result<PsiOutcome> {
        if !self.closure.carrier().contains(x) {
            return Err(Error::PointOutsideCarrier(x));
        }
        let members = self.members_containing(x);
        let target = self.neighborhood_intersection(x)?;

        if members.is_empty() || target.is_full() {
            // The full carrier (an implicit member) already witnesses it.
            let full_member = members
                .iter()
                .copied()
                .find(|&i| self.sets[i].set.is_full());
            return Ok(PsiOutcome {
                value: PsiValue::Exact(1),
                certificate: Some(Certificate {
                    point: x,
                    kind: CertKind::Pseudocharacter,
                    members: full_member
                        .map(|i| vec![self.sets[i].tag])
                        .unwrap_or_default(),
                }),
            });
        }

        if !target.is_finite() {
            // Every member through x is cofinite; no finite subfamily of
            // cofinite sets has finite intersection, at any truncation.
            return Ok(PsiOutcome {
                value: PsiValue::Infinite,
                certificate: None,
            });
        }

        let mut search = PsiSearch {
            subbase: self,
            members: &members,
            target: &target,
            nodes: 0,
        };
        for size in 1..=members.len() {
            match search.find_lex_first(size) {
                Ok(Some(chosen)) => {
                    return Ok(PsiOutcome {
                        value: PsiValue::Exact(size),
                        certificate: Some(Certificate {
                            point: x,
                            kind: CertKind::Pseudocharacter,
                            members: chosen.into_iter().map(|i| self.sets[i].tag).collect(),
                        }),
                    });
                }
                Ok(None) => continue,
                Err(()) => {
                    let chosen = search.greedy()?;
                    return Ok(PsiOutcome {
                        value: PsiValue::AtMost(chosen.len()),
                        certificate: Some(Certificate {
                            point: x,
                            kind: CertKind::Pseudocharacter,
                            members: chosen.into_iter().map(|i| self.sets[i].tag).collect(),
                        }),
                    });
                }
            }
        }
        unreachable!("the full member list always reproduces the target")
    }

    /// Per-point isolation and pseudocharacter over the probe, plus the
    /// summary verdict and the truncation parameters.
    pub fn discreteness_report(&self, probe: &[Point]) -> Result<DiscretenessReport> {
        let mut points = Vec::with_capacity(probe.len());
        let mut witness = None;
        for &x in probe {
            let certificate = self.isolation(x)?;
            let psi = self.pseudocharacter(x)?;
            if certificate.is_none() && witness.is_none() {
                witness = Some(x);
            }
            points.push(PointRecord {
                point: x,
                isolated: certificate.is_some(),
                certificate: certificate.map(|c| c.members),
                psi: PsiRecord::of(&psi),
            });
        }
        Ok(DiscretenessReport {
            parameters: self.truncation_params(probe),
            points,
            summary: match witness {
                None => Summary::DiscreteOnProbe,
                Some(point) => Summary::NonDiscreteWitness { point },
            },
        })
    }

    pub fn truncation_params(&self, probe: &[Point]) -> TruncationParams {
        TruncationParams {
            carrier: self.closure.carrier().to_string(),
            generator_count: self.closure.generators().len(),
            closure_size: self.closure.len(),
            closure_complete: self.closure.is_complete(),
            max_word_len: self.closure.max_word_len(),
            const_window: self.const_window.clone(),
            probe: probe.to_vec(),
            subbase_size: self.sets.len(),
        }
    }

    /// Smallest subbase neighborhood of `x`: the intersection of every
    /// subbasic set containing `x`. On a finite carrier a set belongs to
    /// the generated topology iff it contains this neighborhood at each
    /// of its points.
    pub fn min_neighborhood(&self, x: Point) -> Result<KSet> {
        self.neighborhood_intersection(x)
    }

    /// Exact membership test for the generated topology on a finite
    /// carrier, without enumerating it.
    pub fn generated_contains(&self, u: &KSet) -> Result<bool> {
        if !self.closure.carrier().is_finite() {
            return Err(Error::InfiniteCarrier);
        }
        if u.carrier() != self.closure.carrier() {
            return Err(Error::CarrierMismatch);
        }
        for x in u.points().expect("finite carrier set") {
            if !self.min_neighborhood(x)?.is_subset(u)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The full generated topology on a finite carrier: subbasic sets
    /// closed under intersection, then under union. Errors when the open
    /// family would exceed `max_opens`.
    pub fn generate_topology(&self, max_opens: usize) -> Result<Topology> {
        let carrier = self.closure.carrier();
        if !carrier.is_finite() {
            return Err(Error::InfiniteCarrier);
        }
        let mut family: Vec<KSet> = vec![KSet::full(carrier)];
        let mut seen: HashMap<crate::sets::SetRepr, ()> = HashMap::new();
        seen.insert(family[0].repr().clone(), ());
        for s in &self.sets {
            if !seen.contains_key(s.set.repr()) {
                seen.insert(s.set.repr().clone(), ());
                family.push(s.set.clone());
            }
        }
        close_under(&mut family, &mut seen, max_opens, |a, b| a.intersect(b))?;
        let empty = KSet::empty(carrier);
        if !seen.contains_key(empty.repr()) {
            seen.insert(empty.repr().clone(), ());
            family.push(empty);
        }
        close_under(&mut family, &mut seen, max_opens, |a, b| a.union(b))?;
        let mut opens = family;
        opens.sort_by_key(|s| s.points().expect("finite carrier set"));
        opens.sort_by_key(|s| s.points().expect("finite carrier set").len());
        Ok(Topology { opens })
    }
}

fn close_under(
    family: &mut Vec<KSet>,
    seen: &mut HashMap<crate::sets::SetRepr, ()>,
    budget: usize,
    op: impl Fn(&KSet, &KSet) -> Result<KSet>,
) -> Result<()> {
    let mut frontier_start = 0;
    loop {
        let end = family.len();
        if frontier_start == end {
            return Ok(());
        }
        for i in 0..end {
            for j in frontier_start.max(i + 1)..end {
                let combined = op(&family[i], &family[j])?;
                if !seen.contains_key(combined.repr()) {
                    if family.len() >= budget {
                        return Err(Error::BudgetExceeded {
                            what: "generated topology",
                            needed: family.len() + 1,
                            limit: budget,
                        });
                    }
                    seen.insert(combined.repr().clone(), ());
                    family.push(combined);
                }
            }
        }
        frontier_start = end;
    }
}

/// All open sets of a generated topology on a finite carrier.
#[derive(Clone, Debug)]
pub struct Topology {
    opens: Vec<KSet>,
}

impl Topology {
    pub fn opens(&self) -> &[KSet] {
        &self.opens
    }

    pub fn len(&self) -> usize {
        self.opens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.opens.is_empty()
    }

    pub fn contains(&self, u: &KSet) -> bool {
        self.opens.iter().any(|o| o == u)
    }

    /// Pseudocharacter of the topology at `x`: least number of open
    /// neighborhoods of `x` whose intersection equals the intersection of
    /// all of them. Exhaustive; intended for small carriers.
    pub fn pseudocharacter_at(&self, x: Point) -> Option<usize> {
        let nbhds: Vec<&KSet> = self.opens.iter().filter(|o| o.contains(x)).collect();
        let first = nbhds.first()?;
        let mut target = (*first).clone();
        for n in &nbhds[1..] {
            target = target.intersect(n).ok()?;
        }
        (1..=nbhds.len()).find(|&size| covers_exactly(&nbhds, size, &target))
    }
}

fn covers_exactly(nbhds: &[&KSet], size: usize, target: &KSet) -> bool {
    fn rec(nbhds: &[&KSet], target: &KSet, start: usize, left: usize, acc: &KSet) -> bool {
        if left == 0 {
            return *acc == *target;
        }
        for i in start..=nbhds.len().saturating_sub(left) {
            let next = acc.intersect(nbhds[i]).expect("same carrier");
            if rec(nbhds, target, i + 1, left - 1, &next) {
                return true;
            }
        }
        false
    }
    let full = KSet::full(target.carrier());
    rec(nbhds, target, 0, size, &full)
}

struct PsiSearch<'a> {
    subbase: &'a Subbase,
    members: &'a [usize],
    target: &'a KSet,
    nodes: usize,
}

impl PsiSearch<'_> {
    /// Lexicographically first subfamily of exactly `size` members whose
    /// intersection equals the target; `Err(())` when the node budget is
    /// exhausted.
    fn find_lex_first(&mut self, size: usize) -> std::result::Result<Option<Vec<usize>>, ()> {
        let mut chosen = Vec::with_capacity(size);
        let full = KSet::full(self.target.carrier());
        let found = self.descend(0, size, &full, &mut chosen)?;
        Ok(found.then_some(chosen))
    }

    fn descend(
        &mut self,
        start: usize,
        left: usize,
        acc: &KSet,
        chosen: &mut Vec<usize>,
    ) -> std::result::Result<bool, ()> {
        self.nodes += 1;
        if self.nodes > PSI_NODE_BUDGET {
            return Err(());
        }
        if left == 0 {
            return Ok(*acc == *self.target);
        }
        let remaining = &self.members[start..];
        if remaining.len() < left {
            return Ok(false);
        }
        // Feasibility: every point that still must go can be excluded by
        // some remaining member; an infinite accumulator needs a finite
        // member ahead.
        match acc.minus(self.target).expect("same carrier").points() {
            Some(points) => {
                for y in &points {
                    if !remaining
                        .iter()
                        .any(|&i| !self.subbase.sets[i].set.contains(*y))
                    {
                        return Ok(false);
                    }
                }
            }
            None => {
                if !remaining
                    .iter()
                    .any(|&i| self.subbase.sets[i].set.is_finite())
                {
                    return Ok(false);
                }
            }
        }
        for pick in start..=self.members.len().saturating_sub(left) {
            let idx = self.members[pick];
            let next = acc
                .intersect(&self.subbase.sets[idx].set)
                .expect("same carrier");
            chosen.push(idx);
            if self.descend(pick + 1, left - 1, &next, chosen)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }

    /// Greedy upper bound: tightest finite member first, then whichever
    /// member removes the most residual points (ties to least tag).
    fn greedy(&self) -> Result<Vec<usize>> {
        let seed = self
            .members
            .iter()
            .copied()
            .filter_map(|i| match self.subbase.sets[i].set.cardinality() {
                Cardinality::Finite(n) => Some((n, i)),
                Cardinality::Infinite => None,
            })
            .min()
            .map(|(_, i)| i)
            .unwrap_or(self.members[0]);
        let mut chosen = vec![seed];
        let mut acc = self.subbase.sets[seed].set.clone();
        while acc != *self.target {
            let residual = acc.minus(self.target)?;
            let best = self
                .members
                .iter()
                .copied()
                .filter(|i| !chosen.contains(i))
                .max_by_key(|&i| {
                    let kept = residual
                        .intersect(&self.subbase.sets[i].set)
                        .expect("same carrier");
                    match (residual.cardinality(), kept.cardinality()) {
                        (Cardinality::Finite(r), Cardinality::Finite(k)) => r - k,
                        _ => 0,
                    }
                })
                .expect("target is reachable with all members");
            chosen.push(best);
            acc = acc.intersect(&self.subbase.sets[best].set)?;
        }
        Ok(chosen)
    }
}

/// Truncation parameters echoed into every report.
#[derive(Clone, Debug, Serialize)]
pub struct TruncationParams {
    pub carrier: String,
    pub generator_count: usize,
    pub closure_size: usize,
    pub closure_complete: bool,
    pub max_word_len: usize,
    pub const_window: Vec<Point>,
    pub probe: Vec<Point>,
    pub subbase_size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PsiRecord {
    pub value: PsiValueRecord,
    pub exact: bool,
    pub certificate: Option<Vec<Tag>>,
}

impl PsiRecord {
    pub fn of(outcome: &PsiOutcome) -> Self {
        PsiRecord {
            value: match outcome.value {
                PsiValue::Exact(k) | PsiValue::AtMost(k) => PsiValueRecord::Finite(k),
                PsiValue::Infinite => PsiValueRecord::Infinite("infinite".into()),
            },
            exact: outcome.value.is_exact(),
            certificate: outcome.certificate.as_ref().map(|c| c.members.clone()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum PsiValueRecord {
    Finite(usize),
    Infinite(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct PointRecord {
    pub point: Point,
    pub isolated: bool,
    pub certificate: Option<Vec<Tag>>,
    pub psi: PsiRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Summary {
    DiscreteOnProbe,
    NonDiscreteWitness { point: Point },
}

#[derive(Clone, Debug, Serialize)]
pub struct DiscretenessReport {
    pub parameters: TruncationParams,
    pub points: Vec<PointRecord>,
    pub summary: Summary,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acts::{closure, EndoMap};
    use crate::carrier::Carrier;
    use crate::CarrierRef;

    fn nat_carrier() -> CarrierRef {
        Carrier::nat_line(0, 32).unwrap()
    }

    fn max_shift_subbase(top_shift: i64, consts: std::ops::Range<Point>) -> Subbase {
        let n = nat_carrier();
        let gens: Vec<EndoMap> = (1..=top_shift)
            .map(|c| EndoMap::max_shift(&n, c).unwrap())
            .collect();
        let cl = closure(&n, &gens, 2, 64).unwrap();
        build_subbase(&cl, &consts.collect::<Vec<_>>(), DEFAULT_RAW_SET_BUDGET).unwrap()
    }

    #[test]
    fn identity_closure_subbase_is_cofinite_constants() {
        let n = nat_carrier();
        let cl = closure(&n, &[], 2, 8).unwrap();
        let sb = build_subbase(&cl, &[0, 1], DEFAULT_RAW_SET_BUDGET).unwrap();
        assert_eq!(sb.len(), 2);
        assert_eq!(sb.sets()[0].set, KSet::cofinite(&n, vec![0]).unwrap());
        assert_eq!(sb.sets()[1].set, KSet::cofinite(&n, vec![1]).unwrap());
        // cofinite sets alone isolate nothing
        let report = sb.discreteness_report(&[0, 1, 2]).unwrap();
        assert_eq!(report.summary, Summary::NonDiscreteWitness { point: 0 });
    }

    #[test]
    fn transposition_diff_is_its_support() {
        let n = nat_carrier();
        let t = EndoMap::transposition(&n, 0, 1).unwrap();
        let cl = closure(&n, &[t], 2, 8).unwrap();
        let sb = build_subbase(&cl, &[1], DEFAULT_RAW_SET_BUDGET).unwrap();
        let diff = sb
            .sets()
            .iter()
            .find(|s| matches!(s.tag, Tag::Diff { .. }))
            .unwrap();
        assert_eq!(diff.set, KSet::finite(&n, vec![0, 1]).unwrap());
    }

    #[test]
    fn max_shift_diffs_are_initial_segments() {
        let sb = max_shift_subbase(2, 0..1);
        let diff = sb.recompute_tag_set(Tag::Diff { f: 1, g: 2 }).unwrap();
        assert_eq!(diff, KSet::finite(&nat_carrier(), vec![0, 1]).unwrap());
    }

    #[test]
    fn max_shift_isolation_follows_the_singleton_formula() {
        // Shifts through 4 isolate 3 as {0..3} minus the three smaller
        // points.
        let sb = max_shift_subbase(4, 0..4);
        let cert = sb.isolation(3).unwrap().expect("3 is isolated");
        assert_eq!(
            cert.members,
            vec![
                Tag::Diff { f: 0, g: 4 },
                Tag::DiffConst { f: 0, c: 0 },
                Tag::DiffConst { f: 0, c: 1 },
                Tag::DiffConst { f: 0, c: 2 },
            ]
        );
        assert!(cert.verify(&sb).unwrap());
        // The exact minimum is smaller: {0..3} meets {x : max(x,2) != 2}.
        let psi = sb.pseudocharacter(3).unwrap();
        assert_eq!(psi.value, PsiValue::Exact(2));
        assert!(psi.certificate.unwrap().verify(&sb).unwrap());
    }

    #[test]
    fn single_transposition_isolates_with_two_members() {
        let n = nat_carrier();
        let t = EndoMap::transposition(&n, 0, 1).unwrap();
        let cl = closure(&n, &[t], 2, 8).unwrap();
        let sb = build_subbase(&cl, &(0..4).collect::<Vec<_>>(), DEFAULT_RAW_SET_BUDGET).unwrap();
        let cert = sb.isolation(0).unwrap().expect("0 is isolated");
        assert_eq!(
            cert.members,
            vec![Tag::Diff { f: 0, g: 1 }, Tag::DiffConst { f: 0, c: 1 }]
        );
        assert!(cert.verify(&sb).unwrap());
    }

    #[test]
    fn pure_shifts_never_isolate() {
        let z = Carrier::int_line(-32, 32).unwrap();
        let gens: Vec<EndoMap> = (-4..=4)
            .filter(|&b| b != 0)
            .map(|b| EndoMap::affine(&z, 1, b).unwrap())
            .collect();
        let cl = closure(&z, &gens, 1, 32).unwrap();
        let sb = build_subbase(&cl, &(-4..4).collect::<Vec<_>>(), DEFAULT_RAW_SET_BUDGET).unwrap();
        for s in sb.sets() {
            assert!(s.set.is_empty() || !s.set.is_finite());
        }
        for x in -4..4 {
            assert!(sb.isolation(x).unwrap().is_none());
            assert_eq!(sb.pseudocharacter(x).unwrap().value, PsiValue::Infinite);
        }
        let report = sb
            .discreteness_report(&(-4..4).collect::<Vec<_>>())
            .unwrap();
        assert_eq!(report.summary, Summary::NonDiscreteWitness { point: -4 });
    }

    #[test]
    fn psi_on_small_finite_carrier_counts_exclusions() {
        let c = Carrier::finite_set(4).unwrap();
        let cl = closure(&c, &[], 1, 4).unwrap();
        let sb = build_subbase(&cl, &[0, 1, 2, 3], DEFAULT_RAW_SET_BUDGET).unwrap();
        let psi = sb.pseudocharacter(0).unwrap();
        assert_eq!(psi.value, PsiValue::Exact(3));
        let cert = psi.certificate.unwrap();
        assert_eq!(
            cert.members,
            vec![
                Tag::DiffConst { f: 0, c: 1 },
                Tag::DiffConst { f: 0, c: 2 },
                Tag::DiffConst { f: 0, c: 3 },
            ]
        );
        assert!(cert.verify(&sb).unwrap());
    }

    #[test]
    fn discreteness_report_on_max_shifts() {
        let sb = max_shift_subbase(9, 0..16);
        let probe: Vec<Point> = (0..9).collect();
        let report = sb.discreteness_report(&probe).unwrap();
        assert_eq!(report.summary, Summary::DiscreteOnProbe);
        for (n, record) in report.points.iter().enumerate() {
            assert!(record.isolated);
            assert_eq!(record.certificate.as_ref().unwrap().len(), n + 1);
        }
    }

    #[test]
    fn certificates_survive_enlarging_the_truncation() {
        let small = max_shift_subbase(4, 0..4);
        let cert = small.isolation(3).unwrap().unwrap();
        let large = max_shift_subbase(9, 0..16);
        assert!(cert.verify(&large).unwrap());
    }

    #[test]
    fn t1_separation_within_the_window() {
        let sb = max_shift_subbase(6, 0..8);
        for x in 0..8 {
            for y in 0..8 {
                if x == y {
                    continue;
                }
                assert!(
                    sb.sets()
                        .iter()
                        .any(|s| s.set.contains(x) && !s.set.contains(y)),
                    "no subbasic set separates {x} from {y}"
                );
            }
        }
    }

    #[test]
    fn cosingleton_subbase_generates_the_discrete_topology() {
        let c = Carrier::finite_set(3).unwrap();
        let cl = closure(&c, &[], 1, 4).unwrap();
        let sb = build_subbase(&cl, &[0, 1, 2], DEFAULT_RAW_SET_BUDGET).unwrap();
        let topo = sb.generate_topology(64).unwrap();
        assert_eq!(topo.len(), 8);
        for u in topo.opens() {
            assert!(sb.generated_contains(u).unwrap());
        }
        // the membership test agrees with enumeration on every subset
        for mask in 0..8u32 {
            let pts: Vec<Point> = (0..3).filter(|&i| mask >> i & 1 == 1).collect();
            let set = KSet::finite(&c, pts).unwrap();
            assert_eq!(topo.contains(&set), sb.generated_contains(&set).unwrap());
        }
    }

    #[test]
    fn partial_window_topology_is_coarse() {
        let c = Carrier::finite_set(4).unwrap();
        let cl = closure(&c, &[], 1, 4).unwrap();
        let sb = build_subbase(&cl, &[1], DEFAULT_RAW_SET_BUDGET).unwrap();
        let topo = sb.generate_topology(64).unwrap();
        // empty, full, and the cosingleton of 1
        assert_eq!(topo.len(), 3);
        assert!(!topo.contains(&KSet::singleton(&c, 0).unwrap()));
    }

    #[test]
    fn full_set_subbase_generates_the_indiscrete_topology() {
        let c = Carrier::finite_set(3).unwrap();
        let cl = closure(&c, &[], 1, 4).unwrap();
        let sb = Subbase {
            closure: cl,
            const_window: vec![0],
            sets: vec![SubbasicSet {
                tag: Tag::DiffConst { f: 0, c: 0 },
                set: KSet::full(&c),
            }],
        };
        let topo = sb.generate_topology(64).unwrap();
        assert_eq!(topo.len(), 2);
        assert!(topo.contains(&KSet::empty(&c)));
        assert!(topo.contains(&KSet::full(&c)));
    }

    #[test]
    fn topology_budget_is_enforced() {
        let c = Carrier::finite_set(12).unwrap();
        let cl = closure(&c, &[], 1, 4).unwrap();
        let sb = build_subbase(&cl, &(0..12).collect::<Vec<_>>(), DEFAULT_RAW_SET_BUDGET).unwrap();
        assert!(matches!(
            sb.generate_topology(256),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn topology_psi_matches_subbase_psi_at_non_isolated_points() {
        let c = Carrier::finite_set(4).unwrap();
        let cl = closure(&c, &[], 1, 4).unwrap();
        let sb = build_subbase(&cl, &[1], DEFAULT_RAW_SET_BUDGET).unwrap();
        let topo = sb.generate_topology(64).unwrap();
        for x in [0, 2, 3] {
            assert!(sb.isolation(x).unwrap().is_none());
            let subbase_psi = match sb.pseudocharacter(x).unwrap().value {
                PsiValue::Exact(k) => k,
                other => panic!("unexpected psi {other:?}"),
            };
            assert_eq!(topo.pseudocharacter_at(x), Some(subbase_psi));
        }
    }
}
