//! Exact algebra of finite, cofinite, and bit-vector subsets of a
//! carrier, closed under the Boolean operations.
//!
//! Canonical form: over a finite carrier every set is a bit vector;
//! over an infinite carrier a set is stored as a sorted list of its
//! points (finite) or of its excluded points (cofinite), never both.
//! Equality of canonical forms is extensional equality.

use crate::carrier::CarrierRef;
use crate::error::{Error, Result};
use crate::Point;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

/// Packed bit vector over a finite carrier.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bits {
    len: usize,
    words: Vec<u64>,
}

impl Bits {
    pub fn empty(len: usize) -> Self {
        Bits {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut b = Self::empty(len);
        for w in &mut b.words {
            *w = !0;
        }
        b.trim();
        b
    }

    fn trim(&mut self) {
        let spare = self.words.len() * 64 - self.len;
        if spare > 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= !0 >> spare;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn and(&self, other: &Bits) -> Bits {
        Bits {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn or(&self, other: &Bits) -> Bits {
        Bits {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn not(&self) -> Bits {
        let mut b = Bits {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        b.trim();
        b
    }

    pub fn is_subset(&self, other: &Bits) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }
}

/// Representation of a [`KSet`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SetRepr {
    /// Sorted, duplicate-free list of the points.
    Finite(Vec<Point>),
    /// Sorted, duplicate-free list of the excluded points; only over
    /// infinite carriers.
    Cofinite(Vec<Point>),
    /// Bit vector over a finite carrier.
    Bitset(Bits),
}

/// Cardinality of a set; cofinite sets over infinite carriers are the
/// only infinite case.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cardinality {
    Finite(usize),
    Infinite,
}

/// An exactly represented subset of a carrier.
#[derive(Clone, Debug, PartialEq)]
pub struct KSet {
    carrier: CarrierRef,
    repr: SetRepr,
}

fn normalize_points(carrier: &CarrierRef, mut points: Vec<Point>) -> Result<Vec<Point>> {
    points.sort_unstable();
    points.dedup();
    for &p in &points {
        if !carrier.contains(p) {
            return Err(Error::PointOutsideCarrier(p));
        }
    }
    Ok(points)
}

impl KSet {
    /// The finite set of the given points, canonicalized.
    pub fn finite(carrier: &CarrierRef, points: Vec<Point>) -> Result<KSet> {
        let points = normalize_points(carrier, points)?;
        if let Some(size) = carrier.size() {
            let mut bits = Bits::empty(size);
            for &p in &points {
                bits.set(p as usize, true);
            }
            return Ok(KSet {
                carrier: carrier.clone(),
                repr: SetRepr::Bitset(bits),
            });
        }
        Ok(KSet {
            carrier: carrier.clone(),
            repr: SetRepr::Finite(points),
        })
    }

    /// The complement of a finite set of points, canonicalized.
    pub fn cofinite(carrier: &CarrierRef, excluded: Vec<Point>) -> Result<KSet> {
        let excluded = normalize_points(carrier, excluded)?;
        if let Some(size) = carrier.size() {
            let mut bits = Bits::full(size);
            for &p in &excluded {
                bits.set(p as usize, false);
            }
            return Ok(KSet {
                carrier: carrier.clone(),
                repr: SetRepr::Bitset(bits),
            });
        }
        Ok(KSet {
            carrier: carrier.clone(),
            repr: SetRepr::Cofinite(excluded),
        })
    }

    pub fn empty(carrier: &CarrierRef) -> KSet {
        KSet::finite(carrier, Vec::new()).expect("empty set is always valid")
    }

    pub fn full(carrier: &CarrierRef) -> KSet {
        KSet::cofinite(carrier, Vec::new()).expect("full set is always valid")
    }

    pub fn singleton(carrier: &CarrierRef, x: Point) -> Result<KSet> {
        KSet::finite(carrier, vec![x])
    }

    pub fn from_bits(carrier: &CarrierRef, bits: Bits) -> Result<KSet> {
        match carrier.size() {
            Some(size) if size == bits.len() => Ok(KSet {
                carrier: carrier.clone(),
                repr: SetRepr::Bitset(bits),
            }),
            Some(_) => Err(Error::InvalidCarrier("bit vector length mismatch".into())),
            None => Err(Error::InfiniteCarrier),
        }
    }

    pub fn carrier(&self) -> &CarrierRef {
        &self.carrier
    }

    pub fn repr(&self) -> &SetRepr {
        &self.repr
    }

    fn check_same(&self, other: &KSet) -> Result<()> {
        if self.carrier == other.carrier {
            Ok(())
        } else {
            Err(Error::CarrierMismatch)
        }
    }

    pub fn contains(&self, x: Point) -> bool {
        if !self.carrier.contains(x) {
            return false;
        }
        match &self.repr {
            SetRepr::Finite(points) => points.binary_search(&x).is_ok(),
            SetRepr::Cofinite(excluded) => excluded.binary_search(&x).is_err(),
            SetRepr::Bitset(bits) => bits.get(x as usize),
        }
    }

    pub fn cardinality(&self) -> Cardinality {
        match &self.repr {
            SetRepr::Finite(points) => Cardinality::Finite(points.len()),
            SetRepr::Cofinite(_) => Cardinality::Infinite,
            SetRepr::Bitset(bits) => Cardinality::Finite(bits.count()),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.cardinality() == Cardinality::Finite(0)
    }

    pub fn is_full(&self) -> bool {
        match &self.repr {
            SetRepr::Finite(_) => false,
            SetRepr::Cofinite(excluded) => excluded.is_empty(),
            SetRepr::Bitset(bits) => bits.count() == bits.len(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.cardinality() != Cardinality::Infinite
    }

    /// The unique element, if the set is a singleton.
    pub fn is_singleton(&self) -> Option<Point> {
        match &self.repr {
            SetRepr::Finite(points) if points.len() == 1 => Some(points[0]),
            SetRepr::Bitset(bits) if bits.count() == 1 => bits.ones().next().map(|i| i as Point),
            _ => None,
        }
    }

    /// Sorted points of a finite set; `None` when the set is infinite.
    pub fn points(&self) -> Option<Vec<Point>> {
        match &self.repr {
            SetRepr::Finite(points) => Some(points.clone()),
            SetRepr::Cofinite(_) => None,
            SetRepr::Bitset(bits) => Some(bits.ones().map(|i| i as Point).collect()),
        }
    }

    /// Excluded points of a cofinite set; `None` otherwise.
    pub fn excluded(&self) -> Option<Vec<Point>> {
        match &self.repr {
            SetRepr::Cofinite(excluded) => Some(excluded.clone()),
            _ => None,
        }
    }

    pub fn intersect(&self, other: &KSet) -> Result<KSet> {
        self.check_same(other)?;
        let repr = match (&self.repr, &other.repr) {
            (SetRepr::Finite(a), _) => {
                SetRepr::Finite(a.iter().copied().filter(|p| other.contains(*p)).collect())
            }
            (SetRepr::Cofinite(_), SetRepr::Finite(b)) => {
                SetRepr::Finite(b.iter().copied().filter(|p| self.contains(*p)).collect())
            }
            (SetRepr::Cofinite(a), SetRepr::Cofinite(b)) => {
                let mut excluded = a.clone();
                excluded.extend_from_slice(b);
                excluded.sort_unstable();
                excluded.dedup();
                SetRepr::Cofinite(excluded)
            }
            (SetRepr::Bitset(a), SetRepr::Bitset(b)) => SetRepr::Bitset(a.and(b)),
            _ => unreachable!("canonical form is uniform per carrier"),
        };
        Ok(KSet {
            carrier: self.carrier.clone(),
            repr,
        })
    }

    pub fn union(&self, other: &KSet) -> Result<KSet> {
        self.check_same(other)?;
        // De Morgan keeps the case analysis in one place.
        Ok(self
            .complement()
            .intersect(&other.complement())?
            .complement())
    }

    pub fn complement(&self) -> KSet {
        let repr = match &self.repr {
            SetRepr::Finite(points) => SetRepr::Cofinite(points.clone()),
            SetRepr::Cofinite(excluded) => SetRepr::Finite(excluded.clone()),
            SetRepr::Bitset(bits) => SetRepr::Bitset(bits.not()),
        };
        KSet {
            carrier: self.carrier.clone(),
            repr,
        }
    }

    /// Set difference `self \ other`.
    pub fn minus(&self, other: &KSet) -> Result<KSet> {
        self.intersect(&other.complement())
    }

    pub fn is_subset(&self, other: &KSet) -> Result<bool> {
        self.check_same(other)?;
        Ok(match (&self.repr, &other.repr) {
            (SetRepr::Finite(a), _) => a.iter().all(|&p| other.contains(p)),
            (SetRepr::Cofinite(_), SetRepr::Finite(_)) => false,
            (SetRepr::Cofinite(a), SetRepr::Cofinite(b)) => {
                b.iter().all(|&p| a.binary_search(&p).is_ok())
            }
            (SetRepr::Bitset(a), SetRepr::Bitset(b)) => a.is_subset(b),
            _ => unreachable!("canonical form is uniform per carrier"),
        })
    }
}

impl Serialize for KSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("KSet", 2)?;
        match &self.repr {
            SetRepr::Finite(points) => {
                s.serialize_field("kind", "finite")?;
                s.serialize_field("points", points)?;
            }
            SetRepr::Cofinite(excluded) => {
                s.serialize_field("kind", "cofinite")?;
                s.serialize_field("points", excluded)?;
            }
            SetRepr::Bitset(bits) => {
                s.serialize_field("kind", "bitset")?;
                let points: Vec<Point> = bits.ones().map(|i| i as Point).collect();
                s.serialize_field("points", &points)?;
            }
        }
        s.end()
    }
}

/// Carrier-free set description, bound to a carrier with [`KSetSpec::bind`].
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct KSetSpec {
    pub kind: String,
    pub points: Vec<Point>,
}

impl KSetSpec {
    pub fn bind(&self, carrier: &CarrierRef) -> Result<KSet> {
        match self.kind.as_str() {
            "finite" | "bitset" => KSet::finite(carrier, self.points.clone()),
            "cofinite" => KSet::cofinite(carrier, self.points.clone()),
            other => Err(Error::InvalidCarrier(format!("unknown set kind `{other}`"))),
        }
    }

    pub fn of(set: &KSet) -> Self {
        match set.repr() {
            SetRepr::Finite(points) => KSetSpec {
                kind: "finite".into(),
                points: points.clone(),
            },
            SetRepr::Cofinite(excluded) => KSetSpec {
                kind: "cofinite".into(),
                points: excluded.clone(),
            },
            SetRepr::Bitset(bits) => KSetSpec {
                kind: "bitset".into(),
                points: bits.ones().map(|i| i as Point).collect(),
            },
        }
    }
}
