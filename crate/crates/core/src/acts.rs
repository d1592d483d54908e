//! Endomaps of a carrier in five decidable closed-form classes, their
//! composition and difference sets, and breadth-first monoid closure
//! from generators.
//!
//! The classes are chosen so that extensional equality is decidable and
//! every difference set `{x : f(x) != g(x)}` is exactly finite or
//! cofinite. One non-constant class per carrier per run; constant maps
//! compose with everything.

use crate::carrier::CarrierRef;
use crate::error::{Error, Result};
use crate::sets::{Bits, KSet};
use crate::Point;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// The five supported map classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapClass {
    Affine,
    MaxShift,
    FinSuppPerm,
    Table,
    Const,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum MapKind {
    /// `x -> a*x + b` on the integer line.
    Affine { a: i64, b: i64 },
    /// `x -> max(x, c)` on the natural line.
    MaxShift { c: i64 },
    /// Bijection with finite support on the natural line; the table
    /// holds only moved points.
    FinSuppPerm { moves: BTreeMap<Point, Point> },
    /// Arbitrary self-map of a finite carrier, given pointwise.
    Table { images: Vec<Point> },
    /// Constant map on any carrier.
    Const { value: Point },
}

/// A self-map of one carrier.
#[derive(Clone, Debug, PartialEq)]
pub struct EndoMap {
    carrier: CarrierRef,
    kind: MapKind,
}

impl EndoMap {
    pub fn affine(carrier: &CarrierRef, a: i64, b: i64) -> Result<EndoMap> {
        match carrier.as_ref() {
            crate::Carrier::IntLine { .. } => Ok(EndoMap {
                carrier: carrier.clone(),
                kind: MapKind::Affine { a, b },
            }),
            _ => Err(Error::InvalidMap(
                "affine maps live on the integer line".into(),
            )),
        }
    }

    pub fn max_shift(carrier: &CarrierRef, c: i64) -> Result<EndoMap> {
        match carrier.as_ref() {
            crate::Carrier::NatLine { .. } if c >= 0 => Ok(EndoMap {
                carrier: carrier.clone(),
                kind: MapKind::MaxShift { c },
            }),
            crate::Carrier::NatLine { .. } => Err(Error::InvalidMap(
                "max-shift parameter must be natural".into(),
            )),
            _ => Err(Error::InvalidMap(
                "max-shift maps live on the natural line".into(),
            )),
        }
    }

    /// Builds a finitely supported permutation from (point, image)
    /// pairs; fixed points may be included and are dropped.
    pub fn fin_supp_perm(carrier: &CarrierRef, pairs: Vec<(Point, Point)>) -> Result<EndoMap> {
        if !matches!(carrier.as_ref(), crate::Carrier::NatLine { .. }) {
            return Err(Error::InvalidMap(
                "finitely supported permutations live on the natural line".into(),
            ));
        }
        let mut moves = BTreeMap::new();
        for (from, to) in pairs {
            if from < 0 || to < 0 {
                return Err(Error::InvalidMap("support must be natural".into()));
            }
            if moves.insert(from, to).is_some() {
                return Err(Error::InvalidMap(format!("point {from} mapped twice")));
            }
        }
        moves.retain(|k, v| k != v);
        let mut domain: Vec<Point> = moves.keys().copied().collect();
        let mut image: Vec<Point> = moves.values().copied().collect();
        domain.sort_unstable();
        image.sort_unstable();
        image.dedup();
        if domain != image {
            return Err(Error::InvalidMap(
                "support table is not a bijection of its domain".into(),
            ));
        }
        Ok(EndoMap {
            carrier: carrier.clone(),
            kind: MapKind::FinSuppPerm { moves },
        })
    }

    /// Convenience: the transposition swapping `i` and `j`.
    pub fn transposition(carrier: &CarrierRef, i: Point, j: Point) -> Result<EndoMap> {
        EndoMap::fin_supp_perm(carrier, vec![(i, j), (j, i)])
    }

    pub fn table(carrier: &CarrierRef, images: Vec<Point>) -> Result<EndoMap> {
        let size = carrier.size().ok_or(Error::InfiniteCarrier)?;
        if images.len() != size {
            return Err(Error::InvalidMap(format!(
                "table length {} does not match carrier size {size}",
                images.len()
            )));
        }
        for &y in &images {
            if !carrier.contains(y) {
                return Err(Error::PointOutsideCarrier(y));
            }
        }
        Ok(EndoMap {
            carrier: carrier.clone(),
            kind: MapKind::Table { images },
        })
    }

    pub fn constant(carrier: &CarrierRef, value: Point) -> Result<EndoMap> {
        if !carrier.contains(value) {
            return Err(Error::PointOutsideCarrier(value));
        }
        Ok(EndoMap {
            carrier: carrier.clone(),
            kind: MapKind::Const { value },
        })
    }

    /// The identity map, represented in the class natural to the carrier.
    pub fn identity(carrier: &CarrierRef) -> EndoMap {
        let kind = match carrier.as_ref() {
            crate::Carrier::IntLine { .. } => MapKind::Affine { a: 1, b: 0 },
            crate::Carrier::NatLine { .. } => MapKind::FinSuppPerm {
                moves: BTreeMap::new(),
            },
            _ => MapKind::Table {
                images: (0..carrier.size().unwrap() as Point).collect(),
            },
        };
        EndoMap {
            carrier: carrier.clone(),
            kind,
        }
    }

    /// The identity represented in the same class as `self`.
    fn identity_like(&self) -> EndoMap {
        let kind = match &self.kind {
            MapKind::Affine { .. } => MapKind::Affine { a: 1, b: 0 },
            MapKind::MaxShift { .. } => MapKind::MaxShift { c: 0 },
            MapKind::FinSuppPerm { .. } => MapKind::FinSuppPerm {
                moves: BTreeMap::new(),
            },
            MapKind::Table { .. } | MapKind::Const { .. } => MapKind::Table {
                images: (0..self.carrier.size().unwrap() as Point).collect(),
            },
        };
        EndoMap {
            carrier: self.carrier.clone(),
            kind,
        }
    }

    pub fn carrier(&self) -> &CarrierRef {
        &self.carrier
    }

    pub fn class(&self) -> MapClass {
        match &self.kind {
            MapKind::Affine { .. } => MapClass::Affine,
            MapKind::MaxShift { .. } => MapClass::MaxShift,
            MapKind::FinSuppPerm { .. } => MapClass::FinSuppPerm,
            MapKind::Table { .. } => MapClass::Table,
            MapKind::Const { .. } => MapClass::Const,
        }
    }

    pub fn apply(&self, x: Point) -> Result<Point> {
        if !self.carrier.contains(x) {
            return Err(Error::PointOutsideCarrier(x));
        }
        Ok(match &self.kind {
            MapKind::Affine { a, b } => a
                .checked_mul(x)
                .and_then(|ax| ax.checked_add(*b))
                .ok_or(Error::Overflow)?,
            MapKind::MaxShift { c } => x.max(*c),
            MapKind::FinSuppPerm { moves } => moves.get(&x).copied().unwrap_or(x),
            MapKind::Table { images } => images[x as usize],
            MapKind::Const { value } => *value,
        })
    }

    /// Closed-form composite `self . other` (apply `other` first).
    pub fn compose(&self, other: &EndoMap) -> Result<EndoMap> {
        if self.carrier != other.carrier {
            return Err(Error::CarrierMismatch);
        }
        let kind = match (&self.kind, &other.kind) {
            (MapKind::Const { value }, _) => MapKind::Const { value: *value },
            (_, MapKind::Const { value }) => MapKind::Const {
                value: self.apply(*value)?,
            },
            (MapKind::Affine { a: a1, b: b1 }, MapKind::Affine { a: a2, b: b2 }) => {
                let a = a1.checked_mul(*a2).ok_or(Error::Overflow)?;
                let b = a1
                    .checked_mul(*b2)
                    .and_then(|t| t.checked_add(*b1))
                    .ok_or(Error::Overflow)?;
                MapKind::Affine { a, b }
            }
            (MapKind::MaxShift { c: c1 }, MapKind::MaxShift { c: c2 }) => {
                MapKind::MaxShift { c: (*c1).max(*c2) }
            }
            (MapKind::FinSuppPerm { moves: m1 }, MapKind::FinSuppPerm { moves: m2 }) => {
                let mut moves = BTreeMap::new();
                for &p in m1.keys().chain(m2.keys()) {
                    let through = m2.get(&p).copied().unwrap_or(p);
                    let image = m1.get(&through).copied().unwrap_or(through);
                    moves.insert(p, image);
                }
                moves.retain(|k, v| k != v);
                MapKind::FinSuppPerm { moves }
            }
            (MapKind::Table { images: t1 }, MapKind::Table { images: t2 }) => MapKind::Table {
                images: t2.iter().map(|&y| t1[y as usize]).collect(),
            },
            _ => return Err(Error::HeterogeneousMapClasses),
        };
        Ok(EndoMap {
            carrier: self.carrier.clone(),
            kind,
        })
    }

    /// The exact set `{x : self(x) != other(x)}`.
    pub fn diff(&self, other: &EndoMap) -> Result<KSet> {
        if self.carrier != other.carrier {
            return Err(Error::CarrierMismatch);
        }
        let carrier = &self.carrier;
        match (&self.kind, &other.kind) {
            (MapKind::Const { value }, _) => other.diff_const(*value),
            (_, MapKind::Const { value }) => self.diff_const(*value),
            (MapKind::Affine { a: a1, b: b1 }, MapKind::Affine { a: a2, b: b2 }) => {
                if a1 == a2 {
                    if b1 == b2 {
                        Ok(KSet::empty(carrier))
                    } else {
                        Ok(KSet::full(carrier))
                    }
                } else {
                    // a1*x + b1 = a2*x + b2 at x = (b2 - b1) / (a1 - a2).
                    let num = b2.checked_sub(*b1).ok_or(Error::Overflow)?;
                    let den = a1.checked_sub(*a2).ok_or(Error::Overflow)?;
                    if num % den == 0 {
                        KSet::cofinite(carrier, vec![num / den])
                    } else {
                        Ok(KSet::full(carrier))
                    }
                }
            }
            (MapKind::MaxShift { c: c1 }, MapKind::MaxShift { c: c2 }) => {
                if c1 == c2 {
                    Ok(KSet::empty(carrier))
                } else {
                    // The maps agree exactly from max(c1, c2) on.
                    KSet::finite(carrier, (0..(*c1).max(*c2)).collect())
                }
            }
            (MapKind::FinSuppPerm { moves: m1 }, MapKind::FinSuppPerm { moves: m2 }) => {
                let points = m1
                    .keys()
                    .chain(m2.keys())
                    .copied()
                    .filter(|&p| {
                        m1.get(&p).copied().unwrap_or(p) != m2.get(&p).copied().unwrap_or(p)
                    })
                    .collect();
                KSet::finite(carrier, points)
            }
            (MapKind::Table { images: t1 }, MapKind::Table { images: t2 }) => {
                let mut bits = Bits::empty(t1.len());
                for (i, (a, b)) in t1.iter().zip(t2).enumerate() {
                    if a != b {
                        bits.set(i, true);
                    }
                }
                KSet::from_bits(carrier, bits)
            }
            _ => Err(Error::HeterogeneousMapClasses),
        }
    }

    /// The exact set `{x : self(x) != c}`.
    pub fn diff_const(&self, c: Point) -> Result<KSet> {
        if !self.carrier.contains(c) {
            return Err(Error::PointOutsideCarrier(c));
        }
        let carrier = &self.carrier;
        match &self.kind {
            MapKind::Affine { a, b } => {
                if *a == 0 {
                    if *b == c {
                        Ok(KSet::empty(carrier))
                    } else {
                        Ok(KSet::full(carrier))
                    }
                } else {
                    let num = c.checked_sub(*b).ok_or(Error::Overflow)?;
                    if num % a == 0 {
                        KSet::cofinite(carrier, vec![num / a])
                    } else {
                        Ok(KSet::full(carrier))
                    }
                }
            }
            MapKind::MaxShift { c: m } => {
                if c < *m {
                    // max(x, m) >= m > c everywhere.
                    Ok(KSet::full(carrier))
                } else if c == *m {
                    // max(x, m) = m exactly on 0..=m.
                    KSet::cofinite(carrier, (0..=*m).collect())
                } else {
                    KSet::cofinite(carrier, vec![c])
                }
            }
            MapKind::FinSuppPerm { moves } => {
                let preimage = moves
                    .iter()
                    .find(|(_, &v)| v == c)
                    .map(|(&k, _)| k)
                    .unwrap_or(c);
                KSet::cofinite(carrier, vec![preimage])
            }
            MapKind::Table { images } => {
                let mut bits = Bits::empty(images.len());
                for (i, &y) in images.iter().enumerate() {
                    if y != c {
                        bits.set(i, true);
                    }
                }
                KSet::from_bits(carrier, bits)
            }
            MapKind::Const { value } => {
                if *value == c {
                    Ok(KSet::empty(carrier))
                } else {
                    Ok(KSet::full(carrier))
                }
            }
        }
    }

    /// Extensional equality, decided through the difference set.
    pub fn ext_eq(&self, other: &EndoMap) -> Result<bool> {
        Ok(self.diff(other)?.is_empty())
    }

    /// Canonical key for deduplication; extensionally equal maps of
    /// compatible classes share a key.
    fn canonical_key(&self) -> MapKey {
        match &self.kind {
            MapKind::Affine { a: 0, b } => MapKey::Const(*b),
            MapKind::Affine { a, b } => MapKey::Affine(*a, *b),
            MapKind::MaxShift { c } => MapKey::MaxShift(*c),
            MapKind::FinSuppPerm { moves } => {
                MapKey::Perm(moves.iter().map(|(&k, &v)| (k, v)).collect())
            }
            MapKind::Table { images } => match images.first().copied() {
                Some(first) if images.iter().all(|&y| y == first) => MapKey::Const(first),
                _ => MapKey::Table(images.clone()),
            },
            MapKind::Const { value } => MapKey::Const(*value),
        }
    }

    /// Serializable descriptor of this map.
    pub fn spec(&self) -> MapSpec {
        match &self.kind {
            MapKind::Affine { a, b } => MapSpec::Affine { a: *a, b: *b },
            MapKind::MaxShift { c } => MapSpec::MaxShift { c: *c },
            MapKind::FinSuppPerm { moves } => MapSpec::FinSuppPerm {
                map: moves.iter().map(|(&k, &v)| (k, v)).collect(),
            },
            MapKind::Table { images } => MapSpec::Table {
                images: images.clone(),
            },
            MapKind::Const { value } => MapSpec::Const { value: *value },
        }
    }
}

impl fmt::Display for EndoMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            MapKind::Affine { a, b } => write!(f, "x->{a}x+{b}"),
            MapKind::MaxShift { c } => write!(f, "x->max(x,{c})"),
            MapKind::FinSuppPerm { moves } => {
                if moves.is_empty() {
                    write!(f, "id")
                } else {
                    write!(f, "perm{:?}", moves.iter().collect::<Vec<_>>())
                }
            }
            MapKind::Table { .. } => write!(f, "table"),
            MapKind::Const { value } => write!(f, "const({value})"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum MapKey {
    Affine(i64, i64),
    MaxShift(i64),
    Perm(Vec<(Point, Point)>),
    Table(Vec<Point>),
    Const(Point),
}

/// Tagged map descriptor used in configs, sequence files, and reports.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum MapSpec {
    Affine { a: i64, b: i64 },
    MaxShift { c: i64 },
    FinSuppPerm { map: Vec<(Point, Point)> },
    Table { images: Vec<Point> },
    Const { value: Point },
}

impl MapSpec {
    pub fn build(&self, carrier: &CarrierRef) -> Result<EndoMap> {
        match self {
            MapSpec::Affine { a, b } => EndoMap::affine(carrier, *a, *b),
            MapSpec::MaxShift { c } => EndoMap::max_shift(carrier, *c),
            MapSpec::FinSuppPerm { map } => EndoMap::fin_supp_perm(carrier, map.clone()),
            MapSpec::Table { images } => EndoMap::table(carrier, images.clone()),
            MapSpec::Const { value } => EndoMap::constant(carrier, *value),
        }
    }
}

/// Deduplicated breadth-first enumeration of the submonoid generated by
/// a list of maps, with the identity as element 0.
#[derive(Clone, Debug)]
pub struct MonoidClosure {
    carrier: CarrierRef,
    elements: Vec<EndoMap>,
    generators: Vec<EndoMap>,
    max_word_len: usize,
    complete: bool,
}

impl MonoidClosure {
    pub fn carrier(&self) -> &CarrierRef {
        &self.carrier
    }

    pub fn elements(&self) -> &[EndoMap] {
        &self.elements
    }

    pub fn generators(&self) -> &[EndoMap] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false // always holds the identity
    }

    pub fn element(&self, index: usize) -> &EndoMap {
        &self.elements[index]
    }

    pub fn max_word_len(&self) -> usize {
        self.max_word_len
    }

    /// True when the enumeration saturated below the word-length bound
    /// and the element budget was not hit.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn specs(&self) -> Vec<MapSpec> {
        self.elements.iter().map(EndoMap::spec).collect()
    }
}

/// Breadth-first closure of the generators under composition, words
/// ordered by length, then by the enumeration order of the shorter word,
/// then by generator index; duplicates removed by extensional equality.
pub fn closure(
    carrier: &CarrierRef,
    generators: &[EndoMap],
    max_word_len: usize,
    max_elements: usize,
) -> Result<MonoidClosure> {
    if max_word_len == 0 || max_elements == 0 {
        return Err(Error::BudgetExceeded {
            what: "closure bounds",
            needed: 1,
            limit: 0,
        });
    }
    let mut base_class: Option<MapClass> = None;
    for g in generators {
        if g.carrier() != carrier {
            return Err(Error::CarrierMismatch);
        }
        let class = g.class();
        if class == MapClass::Const {
            continue;
        }
        match base_class {
            None => base_class = Some(class),
            Some(c) if c == class => {}
            Some(_) => return Err(Error::HeterogeneousMapClasses),
        }
    }

    let identity = match generators.iter().find(|g| g.class() != MapClass::Const) {
        Some(g) => g.identity_like(),
        None => EndoMap::identity(carrier),
    };

    let mut elements = vec![identity.clone()];
    let mut seen: HashMap<MapKey, usize> = HashMap::new();
    seen.insert(identity.canonical_key(), 0);
    let mut level: Vec<EndoMap> = vec![identity];
    let mut complete = false;
    let mut budget_hit = false;

    'grow: for _ in 1..=max_word_len {
        let mut next: Vec<EndoMap> = Vec::new();
        for word in &level {
            for g in generators {
                let candidate = word.compose(g)?;
                let key = candidate.canonical_key();
                if seen.contains_key(&key) {
                    continue;
                }
                if elements.len() >= max_elements {
                    budget_hit = true;
                    break 'grow;
                }
                seen.insert(key, elements.len());
                elements.push(candidate.clone());
                next.push(candidate);
            }
        }
        if next.is_empty() {
            complete = true;
            break;
        }
        level = next;
    }

    Ok(MonoidClosure {
        carrier: carrier.clone(),
        elements,
        generators: generators.to_vec(),
        max_word_len,
        complete: complete && !budget_hit,
    })
}
