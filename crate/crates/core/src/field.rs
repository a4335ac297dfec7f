//! Multi-quadratic fields as finite subgroups of `Q^x / (Q^x)^2`.
//!
//! A square class is an F2 vector over the coordinates `-1`, `2` and the odd
//! primes. A field `Q(sqrt(a_1), ..., sqrt(a_k))` is the span of the classes of
//! its radicands, kept in reduced row-echelon form so equal fields compare equal.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};

/// Coordinate of a square class, ordered `-1 < 2 < 3 < 5 < ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coord {
    Sign,
    Two,
    Odd(u64),
}

/// An element of `Q^x / (Q^x)^2`, identified with a signed squarefree integer.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SquareClass {
    negative: bool,
    two: bool,
    odd: BTreeSet<u64>,
}

impl SquareClass {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn minus_one() -> Self {
        SquareClass {
            negative: true,
            ..Self::default()
        }
    }

    pub fn two() -> Self {
        SquareClass {
            two: true,
            ..Self::default()
        }
    }

    pub fn odd_prime(p: u64) -> Self {
        SquareClass {
            odd: BTreeSet::from([p]),
            ..Self::default()
        }
    }

    /// Class of an arbitrary nonzero integer (square factors are dropped).
    pub fn from_integer(n: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroRadicand);
        }
        let fac = arith::factorize(n.unsigned_abs())?;
        let mut class = SquareClass {
            negative: n < 0,
            ..Self::default()
        };
        for &(p, e) in fac.factors() {
            if e % 2 == 1 {
                if p == 2 {
                    class.two = true;
                } else {
                    class.odd.insert(p);
                }
            }
        }
        Ok(class)
    }

    /// Class of a squarefree integer; rejects non-squarefree input.
    pub fn from_squarefree(n: i64) -> Result<Self> {
        if !arith::is_squarefree(n)? {
            return Err(Error::NotSquarefree(n));
        }
        Self::from_integer(n)
    }

    pub fn is_one(&self) -> bool {
        !self.negative && !self.two && self.odd.is_empty()
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn has_two(&self) -> bool {
        self.two
    }

    pub fn odd_primes(&self) -> &BTreeSet<u64> {
        &self.odd
    }

    pub fn contains_coord(&self, c: Coord) -> bool {
        match c {
            Coord::Sign => self.negative,
            Coord::Two => self.two,
            Coord::Odd(p) => self.odd.contains(&p),
        }
    }

    /// Smallest nonzero coordinate.
    pub fn leading(&self) -> Option<Coord> {
        if self.negative {
            Some(Coord::Sign)
        } else if self.two {
            Some(Coord::Two)
        } else {
            self.odd.first().map(|&p| Coord::Odd(p))
        }
    }

    /// Group law: coordinate-wise XOR.
    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        SquareClass {
            negative: self.negative ^ other.negative,
            two: self.two ^ other.two,
            odd: self.odd.symmetric_difference(&other.odd).copied().collect(),
        }
    }

    /// The class with the sign coordinate cleared.
    pub fn abs(&self) -> SquareClass {
        SquareClass {
            negative: false,
            ..self.clone()
        }
    }

    pub fn negate(&self) -> SquareClass {
        SquareClass {
            negative: !self.negative,
            ..self.clone()
        }
    }

    /// The squarefree integer representing this class.
    pub fn radicand(&self) -> Result<i64> {
        let mut acc: i64 = if self.two { 2 } else { 1 };
        for &p in &self.odd {
            let p = i64::try_from(p).map_err(|_| Error::Overflow)?;
            acc = acc.checked_mul(p).ok_or(Error::Overflow)?;
        }
        Ok(if self.negative { -acc } else { acc })
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.radicand() {
            Ok(n) => write!(f, "{n}"),
            Err(_) => {
                // too large for i64: print as a product
                let mut parts: Vec<String> = Vec::new();
                if self.negative {
                    parts.push("-1".into());
                }
                if self.two {
                    parts.push("2".into());
                }
                parts.extend(self.odd.iter().map(|p| p.to_string()));
                write!(f, "{}", parts.join("*"))
            }
        }
    }
}

/// A multi-quadratic field, stored as the reduced row-echelon basis of its
/// subgroup of square classes. Rows are sorted by leading coordinate and each
/// leading coordinate is zero in every other row.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiQuadField {
    basis: Vec<SquareClass>,
}

impl MultiQuadField {
    pub fn rationals() -> Self {
        Self::default()
    }

    pub fn from_classes<I>(classes: I) -> Self
    where
        I: IntoIterator<Item = SquareClass>,
    {
        let mut basis: Vec<SquareClass> = Vec::new();
        for class in classes {
            let reduced = reduce_against(&basis, class);
            let Some(lead) = reduced.leading() else {
                continue;
            };
            for row in basis.iter_mut() {
                if row.contains_coord(lead) {
                    *row = row.mul(&reduced);
                }
            }
            let pos = basis
                .iter()
                .position(|row| row.leading() > Some(lead))
                .unwrap_or(basis.len());
            basis.insert(pos, reduced);
        }
        MultiQuadField { basis }
    }

    /// Field generated by square roots of squarefree nonzero integers.
    pub fn from_radicands(rads: &[i64]) -> Result<Self> {
        let classes = rads
            .iter()
            .map(|&d| SquareClass::from_squarefree(d))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_classes(classes))
    }

    /// Like [`from_radicands`](Self::from_radicands) but reduces each radicand
    /// to its squarefree kernel first.
    pub fn from_integers(rads: &[i64]) -> Result<Self> {
        let classes = rads
            .iter()
            .map(|&d| SquareClass::from_integer(d))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_classes(classes))
    }

    pub fn basis(&self) -> &[SquareClass] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// `[K : Q] = 2^rank`.
    pub fn degree(&self) -> u128 {
        1u128 << self.rank()
    }

    /// Reduce a class modulo the subgroup; the result is `1` iff the class is in it.
    pub fn reduce(&self, class: &SquareClass) -> SquareClass {
        reduce_against(&self.basis, class.clone())
    }

    pub fn contains(&self, class: &SquareClass) -> bool {
        self.reduce(class).is_one()
    }

    /// Whether `sqrt(d)` lies in the field.
    pub fn contains_sqrt(&self, d: i64) -> Result<bool> {
        Ok(self.contains(&SquareClass::from_integer(d)?))
    }

    /// Subgroup inclusion.
    pub fn is_subfield_of(&self, other: &MultiQuadField) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn adjoin(&self, class: &SquareClass) -> MultiQuadField {
        Self::from_classes(self.basis.iter().cloned().chain([class.clone()]))
    }

    pub fn compositum(&self, other: &MultiQuadField) -> MultiQuadField {
        Self::from_classes(self.basis.iter().chain(other.basis.iter()).cloned())
    }

    pub fn is_imaginary(&self) -> bool {
        self.basis.iter().any(|b| b.is_negative())
    }

    pub fn is_real(&self) -> bool {
        !self.is_imaginary()
    }

    /// All `2^rank` elements of the subgroup.
    pub fn elements(&self) -> Vec<SquareClass> {
        let mut out = vec![SquareClass::one()];
        for b in &self.basis {
            let more: Vec<_> = out.iter().map(|x| x.mul(b)).collect();
            out.extend(more);
        }
        out
    }

    /// `K^+`: the kernel of the sign functional on the subgroup.
    pub fn maximal_real_subfield(&self) -> MultiQuadField {
        self.kernel_of(Coord::Sign)
    }

    /// The subfield of classes with 2-coordinate zero. When `sqrt(2)` is in
    /// the field this is the index-2 subfield with `sqrt(2)` stripped.
    pub fn odd_part(&self) -> MultiQuadField {
        self.kernel_of(Coord::Two)
    }

    /// Elements whose `coord` coordinate is zero.
    pub fn kernel_of(&self, coord: Coord) -> MultiQuadField {
        let mut kernel = Vec::with_capacity(self.rank());
        let mut first_hit: Option<&SquareClass> = None;
        for b in &self.basis {
            if !b.contains_coord(coord) {
                kernel.push(b.clone());
            } else if let Some(h) = first_hit {
                kernel.push(b.mul(h));
            } else {
                first_hit = Some(b);
            }
        }
        Self::from_classes(kernel)
    }

    /// Odd primes ramified in the field: the union of the basis supports.
    pub fn odd_ramified_primes(&self) -> BTreeSet<u64> {
        self.basis
            .iter()
            .flat_map(|b| b.odd_primes().iter().copied())
            .collect()
    }

    /// Whether `8` divides the conductor, i.e. some element has 2-coordinate 1.
    pub fn conductor_two_part_exceeds_4(&self) -> bool {
        self.basis.iter().any(|b| b.has_two())
    }

    /// Signed squarefree radicands of the canonical basis.
    pub fn radicands(&self) -> Result<Vec<i64>> {
        self.basis.iter().map(|b| b.radicand()).collect()
    }

    /// Normalize an imaginary field to `Q(sqrt(d_1), ..., sqrt(d_r), sqrt(-d))`
    /// with an admissible ordering when one exists.
    pub fn canonical_presentation(&self) -> Result<Presentation> {
        if self.is_real() {
            return Err(Error::RealField);
        }
        let real = self.maximal_real_subfield();
        // The unique row led by the sign coordinate; its absolute value is `d`.
        let imag = self
            .basis
            .iter()
            .find(|b| b.is_negative())
            .cloned()
            .ok_or_else(|| Error::Internal("imaginary field without sign row".into()))?;
        let mut d = imag.abs();
        let theta = self.contains(&SquareClass::two());
        let mut d_list: Vec<SquareClass> = real.basis.clone();

        // Search for an odd prime dividing exactly one radicand and not d.
        // Prefer leading coordinates of odd rows, then any odd prime in the support.
        let candidates: Vec<u64> = {
            let mut v: Vec<u64> = d_list
                .iter()
                .rev()
                .filter_map(|b| match b.leading() {
                    Some(Coord::Odd(p)) => Some(p),
                    _ => None,
                })
                .collect();
            v.extend(real.odd_ramified_primes());
            v
        };
        let mut admissible = d_list.is_empty();
        for p in candidates {
            let coord = Coord::Odd(p);
            let Some(pivot_idx) = d_list.iter().position(|b| b.contains_coord(coord)) else {
                continue;
            };
            let pivot = d_list.remove(pivot_idx);
            for b in d_list.iter_mut() {
                if b.contains_coord(coord) {
                    *b = b.mul(&pivot);
                }
            }
            if d.contains_coord(coord) {
                d = d.mul(&pivot);
            }
            d_list.push(pivot);
            admissible = true;
            break;
        }
        if theta {
            // Put sqrt(2) first and strip 2 from everything else.
            let two = SquareClass::two();
            let mut rest: Vec<SquareClass> = d_list
                .into_iter()
                .filter(|b| *b != two)
                .map(|b| if b.has_two() { b.mul(&two) } else { b })
                .collect();
            if d.has_two() {
                d = d.mul(&two);
            }
            rest.insert(0, two);
            d_list = rest;
        }
        let presentation = Presentation {
            d_list,
            d,
            theta,
            admissible,
        };
        debug_assert_eq!(presentation.field(), *self);
        Ok(presentation)
    }

    /// Narrow genus field `F(sqrt(p*))` over the odd ramified primes, with
    /// `p* = (-1)^((p-1)/2) p`, and its real part.
    pub fn narrow_genus_field(&self) -> GenusFieldResult {
        let narrow_generators: Vec<SquareClass> = self
            .odd_ramified_primes()
            .into_iter()
            .map(|p| {
                let c = SquareClass::odd_prime(p);
                if p % 4 == 3 {
                    c.negate()
                } else {
                    c
                }
            })
            .collect();
        let narrow = Self::from_classes(
            self.basis
                .iter()
                .cloned()
                .chain(narrow_generators.iter().cloned()),
        );
        let genus = if self.is_real() {
            narrow.maximal_real_subfield()
        } else {
            narrow.clone()
        };
        GenusFieldResult {
            base: self.clone(),
            narrow_generators,
            narrow,
            genus,
        }
    }
}

fn reduce_against(basis: &[SquareClass], mut class: SquareClass) -> SquareClass {
    for row in basis {
        let lead = row.leading().expect("basis rows are nonzero");
        if class.contains_coord(lead) {
            class = class.mul(row);
        }
    }
    class
}

impl fmt::Display for MultiQuadField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.basis.iter().map(|b| b.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Parse a comma-separated list of nonzero integers.
pub fn parse_radicands(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            let n: i64 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("invalid radicand {tok:?}")))?;
            if n == 0 {
                return Err(Error::ZeroRadicand);
            }
            Ok(n)
        })
        .collect()
}

impl FromStr for MultiQuadField {
    type Err = Error;

    /// Parses a comma-separated radicand list; each entry is reduced to its
    /// squarefree kernel with sign preserved, dependent entries collapse.
    fn from_str(s: &str) -> Result<Self> {
        Self::from_integers(&parse_radicands(s)?)
    }
}

impl Serialize for MultiQuadField {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for MultiQuadField {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Serialize for SquareClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SquareClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let n: i64 = s.trim().parse().map_err(serde::de::Error::custom)?;
        SquareClass::from_integer(n).map_err(serde::de::Error::custom)
    }
}

/// `K = Q(sqrt(d_1), ..., sqrt(d_r), sqrt(-d))` with positive squarefree
/// `d_i`, `d` and `[K : Q] = 2^(r+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    d_list: Vec<SquareClass>,
    d: SquareClass,
    theta: bool,
    admissible: bool,
}

impl Presentation {
    /// An explicit ordered presentation; radicands must be positive,
    /// squarefree and independent together with `-d`.
    pub fn new(d_list: &[i64], d: i64) -> Result<Self> {
        let mut classes = Vec::with_capacity(d_list.len());
        for &x in d_list.iter().chain(std::iter::once(&d)) {
            if x <= 0 {
                return Err(Error::Parse(format!("radicand {x} must be positive")));
            }
            classes.push(SquareClass::from_squarefree(x)?);
        }
        let d_class = classes.pop().expect("d was pushed");
        Self::from_classes(classes, d_class)
    }

    pub fn from_classes(d_list: Vec<SquareClass>, d: SquareClass) -> Result<Self> {
        if d.is_negative() || d_list.iter().any(|c| c.is_negative()) {
            return Err(Error::Parse("presentation radicands must be positive".into()));
        }
        let real = MultiQuadField::from_classes(d_list.iter().cloned());
        if real.rank() != d_list.len() {
            let rads = d_list.iter().map(|c| c.radicand().unwrap_or(0)).collect();
            return Err(Error::DependentRadicands(rads));
        }
        let field = real.adjoin(&d.negate());
        let theta = field.contains(&SquareClass::two());
        let admissible = ordered_admissible(&d_list, &d);
        Ok(Presentation {
            d_list,
            d,
            theta,
            admissible,
        })
    }

    pub fn d_list(&self) -> &[SquareClass] {
        &self.d_list
    }

    pub fn d(&self) -> &SquareClass {
        &self.d
    }

    pub fn r(&self) -> usize {
        self.d_list.len()
    }

    /// Whether `sqrt(2)` lies in the field.
    pub fn theta(&self) -> bool {
        self.theta
    }

    /// Whether some odd prime divides `d_r` but not `d * d_1 ... d_{r-1}`.
    pub fn admissible(&self) -> bool {
        self.admissible
    }

    pub fn real_subfield(&self) -> MultiQuadField {
        MultiQuadField::from_classes(self.d_list.iter().cloned())
    }

    pub fn field(&self) -> MultiQuadField {
        self.real_subfield().adjoin(&self.d.negate())
    }

    /// Whether `sqrt(d)` lies in `K^+(sqrt(2))`.
    pub fn delta(&self) -> bool {
        self.real_subfield().adjoin(&SquareClass::two()).contains(&self.d)
    }

    pub fn d_list_radicands(&self) -> Result<Vec<i64>> {
        self.d_list.iter().map(|c| c.radicand()).collect()
    }

    /// The same field with the radicand order permuted.
    pub fn permuted(&self, order: &[usize]) -> Result<Presentation> {
        let d_list = order.iter().map(|&i| self.d_list[i].clone()).collect();
        Self::from_classes(d_list, self.d.clone())
    }
}

fn ordered_admissible(d_list: &[SquareClass], d: &SquareClass) -> bool {
    let Some((last, earlier)) = d_list.split_last() else {
        return true;
    };
    last.odd_primes().iter().any(|p| {
        !d.odd_primes().contains(p) && earlier.iter().all(|e| !e.odd_primes().contains(p))
    })
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.d_list.iter().map(|c| format!("sqrt({c})")).collect();
        let mut all = parts;
        all.push(format!("sqrt(-{})", self.d));
        write!(f, "Q({})", all.join(", "))
    }
}

/// Narrow genus field and genus field of a multi-quadratic field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusFieldResult {
    pub base: MultiQuadField,
    /// The classes `p*` adjoined to the base.
    pub narrow_generators: Vec<SquareClass>,
    pub narrow: MultiQuadField,
    /// Real part of the narrow genus field when the base is real; the narrow
    /// genus field otherwise.
    pub genus: MultiQuadField,
}
