//! Carriers the monoids act on: the integer and natural lines, plain
//! finite sets, and finite powers of a finite group given by its Cayley
//! table.

use crate::error::{Error, Result};
use crate::Point;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

/// Hard cap on the size of a finite carrier.
pub const MAX_FINITE_CARRIER: usize = 1 << 20;

/// Shared handle to a carrier. Values compare by content, so two
/// independently built handles to the same carrier are interchangeable.
pub type CarrierRef = Arc<Carrier>;

/// Multiplication table of a finite group, validated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    order: usize,
    /// Row-major products: `table[a * order + b] = a * b`.
    table: Vec<usize>,
    identity: usize,
}

impl CayleyTable {
    /// Builds a table from rows, checking closure, associativity,
    /// a two-sided identity, and inverses.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::InvalidCarrier("empty multiplication table".into()));
        }
        let mut table = Vec::with_capacity(order * order);
        for row in &rows {
            if row.len() != order {
                return Err(Error::InvalidCarrier("table is not square".into()));
            }
            for &v in row {
                if v >= order {
                    return Err(Error::InvalidCarrier("table entry out of range".into()));
                }
                table.push(v);
            }
        }
        let mul = |a: usize, b: usize| table[a * order + b];
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| mul(e, a) == a && mul(a, e) == a))
            .ok_or_else(|| Error::InvalidCarrier("no two-sided identity".into()))?;
        for a in 0..order {
            if !(0..order).any(|b| mul(a, b) == identity && mul(b, a) == identity) {
                return Err(Error::InvalidCarrier(format!("element {a} has no inverse")));
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::InvalidCarrier(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(Self {
            order,
            table,
            identity,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order)
            .find(|&b| self.mul(a, b) == self.identity)
            .expect("validated group has inverses")
    }

    /// Elements commuting with everything.
    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
            .collect()
    }

    pub fn has_trivial_center(&self) -> bool {
        self.center() == vec![self.identity]
    }

    /// The symmetric group on three letters, elements being the six
    /// permutations of `[0,1,2]` in lexicographic order of their tables.
    pub fn symmetric_3() -> Self {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let index_of = |p: &[usize; 3]| perms.iter().position(|q| q == p).unwrap();
        let rows = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    // (a*b)(x) = a(b(x))
                    .map(|b| index_of(&[a[b[0]], a[b[1]], a[b[2]]]))
                    .collect()
            })
            .collect();
        Self::new(rows).expect("symmetric group table is a group")
    }

    /// Cyclic group of the given order (addition mod n).
    pub fn cyclic(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidCarrier("cyclic group of order 0".into()));
        }
        let rows = (0..order)
            .map(|a| (0..order).map(|b| (a + b) % order).collect())
            .collect();
        Self::new(rows)
    }
}

/// A set acted upon. Infinite carriers carry a half-open display window
/// used by reports and pointwise oracles; it does not bound the carrier
/// itself.
#[derive(Clone, Debug, PartialEq)]
pub enum Carrier {
    IntLine { window: (Point, Point) },
    NatLine { window: (Point, Point) },
    FiniteSet { size: usize },
    GroupPower { group: CayleyTable, exponent: u32 },
}

impl Carrier {
    pub fn int_line(lo: Point, hi: Point) -> Result<CarrierRef> {
        if lo >= hi {
            return Err(Error::InvalidCarrier("empty display window".into()));
        }
        Ok(Arc::new(Carrier::IntLine { window: (lo, hi) }))
    }

    pub fn nat_line(lo: Point, hi: Point) -> Result<CarrierRef> {
        if lo < 0 || lo >= hi {
            return Err(Error::InvalidCarrier(
                "window must be a nonempty range of naturals".into(),
            ));
        }
        Ok(Arc::new(Carrier::NatLine { window: (lo, hi) }))
    }

    pub fn finite_set(size: usize) -> Result<CarrierRef> {
        if size == 0 || size > MAX_FINITE_CARRIER {
            return Err(Error::InvalidCarrier(format!(
                "finite carrier size {size} out of range"
            )));
        }
        Ok(Arc::new(Carrier::FiniteSet { size }))
    }

    pub fn group_power(group: CayleyTable, exponent: u32) -> Result<CarrierRef> {
        if exponent == 0 {
            return Err(Error::InvalidCarrier("exponent must be positive".into()));
        }
        let size = group
            .order()
            .checked_pow(exponent)
            .filter(|&s| s <= MAX_FINITE_CARRIER)
            .ok_or(Error::BudgetExceeded {
                what: "group power carrier",
                needed: usize::MAX,
                limit: MAX_FINITE_CARRIER,
            })?;
        let _ = size;
        Ok(Arc::new(Carrier::GroupPower { group, exponent }))
    }

    /// Number of elements, `None` for the infinite lines.
    pub fn size(&self) -> Option<usize> {
        match self {
            Carrier::IntLine { .. } | Carrier::NatLine { .. } => None,
            Carrier::FiniteSet { size } => Some(*size),
            Carrier::GroupPower { group, exponent } => Some(group.order().pow(*exponent)),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.size().is_some()
    }

    pub fn contains(&self, x: Point) -> bool {
        match self {
            Carrier::IntLine { .. } => true,
            Carrier::NatLine { .. } => x >= 0,
            _ => x >= 0 && (x as usize) < self.size().unwrap(),
        }
    }

    /// Display window as a half-open range; for finite carriers this is
    /// the whole carrier.
    pub fn window(&self) -> (Point, Point) {
        match self {
            Carrier::IntLine { window } | Carrier::NatLine { window } => *window,
            _ => (0, self.size().unwrap() as Point),
        }
    }

    pub fn window_points(&self) -> Vec<Point> {
        let (lo, hi) = self.window();
        (lo..hi).collect()
    }

    /// Group-power accessor; errors on other carriers.
    pub fn group(&self) -> Result<(&CayleyTable, u32)> {
        match self {
            Carrier::GroupPower { group, exponent } => Ok((group, *exponent)),
            _ => Err(Error::InvalidCarrier("not a group power carrier".into())),
        }
    }

    /// Componentwise product of two group-power elements, identified by
    /// their lexicographic tuple indices (leftmost coordinate most
    /// significant).
    pub fn power_product(&self, x: Point, y: Point) -> Result<Point> {
        let (group, exponent) = self.group()?;
        if !self.contains(x) {
            return Err(Error::PointOutsideCarrier(x));
        }
        if !self.contains(y) {
            return Err(Error::PointOutsideCarrier(y));
        }
        let xs = decode(group.order(), exponent, x);
        let ys = decode(group.order(), exponent, y);
        let zs: Vec<usize> = xs.iter().zip(&ys).map(|(&a, &b)| group.mul(a, b)).collect();
        Ok(encode(group.order(), &zs))
    }

    /// The element with `h` in the given coordinate and the identity
    /// elsewhere.
    pub fn power_embed(&self, coordinate: u32, h: usize) -> Result<Point> {
        let (group, exponent) = self.group()?;
        if coordinate >= exponent {
            return Err(Error::InvalidCarrier(format!(
                "coordinate {coordinate} out of range"
            )));
        }
        if h >= group.order() {
            return Err(Error::InvalidCarrier(format!(
                "group element {h} out of range"
            )));
        }
        let mut digits = vec![group.identity(); exponent as usize];
        digits[coordinate as usize] = h;
        Ok(encode(group.order(), &digits))
    }

    /// Componentwise inverse of a group-power element.
    pub fn power_inverse(&self, x: Point) -> Result<Point> {
        let (group, exponent) = self.group()?;
        if !self.contains(x) {
            return Err(Error::PointOutsideCarrier(x));
        }
        let digits: Vec<usize> = decode(group.order(), exponent, x)
            .into_iter()
            .map(|d| group.inverse(d))
            .collect();
        Ok(encode(group.order(), &digits))
    }

    /// Coordinate projection of a group-power element.
    pub fn power_coordinate(&self, x: Point, coordinate: u32) -> Result<usize> {
        let (group, exponent) = self.group()?;
        if !self.contains(x) {
            return Err(Error::PointOutsideCarrier(x));
        }
        if coordinate >= exponent {
            return Err(Error::InvalidCarrier(format!(
                "coordinate {coordinate} out of range"
            )));
        }
        Ok(decode(group.order(), exponent, x)[coordinate as usize])
    }
}

fn decode(order: usize, exponent: u32, x: Point) -> Vec<usize> {
    let mut rest = x as usize;
    let mut digits = vec![0usize; exponent as usize];
    for slot in digits.iter_mut().rev() {
        *slot = rest % order;
        rest /= order;
    }
    digits
}

fn encode(order: usize, digits: &[usize]) -> Point {
    digits
        .iter()
        .fold(0i64, |acc, &d| acc * order as i64 + d as i64)
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Carrier::IntLine { window } => write!(f, "int_line[{},{})", window.0, window.1),
            Carrier::NatLine { window } => write!(f, "nat_line[{},{})", window.0, window.1),
            Carrier::FiniteSet { size } => write!(f, "finite_set({size})"),
            Carrier::GroupPower { group, exponent } => {
                write!(
                    f,
                    "group_power(order={}, exponent={})",
                    group.order(),
                    exponent
                )
            }
        }
    }
}

/// Serializable carrier description used in configs and reports.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CarrierSpec {
    IntLine { window: (Point, Point) },
    NatLine { window: (Point, Point) },
    FiniteSet { size: usize },
    GroupPower { group: GroupSpec, exponent: u32 },
}

/// Group description: a named builtin or an explicit table.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum GroupSpec {
    Named(String),
    Table { table: Vec<Vec<usize>> },
}

impl CarrierSpec {
    pub fn build(&self) -> Result<CarrierRef> {
        match self {
            CarrierSpec::IntLine { window } => Carrier::int_line(window.0, window.1),
            CarrierSpec::NatLine { window } => Carrier::nat_line(window.0, window.1),
            CarrierSpec::FiniteSet { size } => Carrier::finite_set(*size),
            CarrierSpec::GroupPower { group, exponent } => {
                let table = match group {
                    GroupSpec::Named(name) => match name.as_str() {
                        "sym3" => CayleyTable::symmetric_3(),
                        other => {
                            if let Some(n) = other.strip_prefix("cyclic") {
                                let order: usize = n.parse().map_err(|_| {
                                    Error::InvalidCarrier(format!("unknown group `{other}`"))
                                })?;
                                CayleyTable::cyclic(order)?
                            } else {
                                return Err(Error::InvalidCarrier(format!(
                                    "unknown group `{other}`"
                                )));
                            }
                        }
                    },
                    GroupSpec::Table { table } => CayleyTable::new(table.clone())?,
                };
                Carrier::group_power(table, *exponent)
            }
        }
    }

    pub fn of(carrier: &Carrier) -> Self {
        match carrier {
            Carrier::IntLine { window } => CarrierSpec::IntLine { window: *window },
            Carrier::NatLine { window } => CarrierSpec::NatLine { window: *window },
            Carrier::FiniteSet { size } => CarrierSpec::FiniteSet { size: *size },
            Carrier::GroupPower { group, exponent } => CarrierSpec::GroupPower {
                group: GroupSpec::Table {
                    table: (0..group.order())
                        .map(|a| (0..group.order()).map(|b| group.mul(a, b)).collect())
                        .collect(),
                },
                exponent: *exponent,
            },
        }
    }
}
