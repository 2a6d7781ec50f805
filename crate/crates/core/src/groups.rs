//! The three kinds of connected one-dimensional algebraic groups, restricted
//! to their rational points: `G_a(Q)` under addition, `G_m(Q)` under
//! multiplication, and `E(Q)` for a short Weierstrass curve
//! `y² = x³ + ax + b` under the chord-tangent law.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::{Error, Rational, Result};

/// A nonsingular short Weierstrass curve `y² = x³ + ax + b` over `Q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Curve {
    a: Rational,
    b: Rational,
}

impl Curve {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        let four_a3 = Rational::from(4) * &a * &a * &a;
        let twenty_seven_b2 = Rational::from(27) * &b * &b;
        if (four_a3 + twenty_seven_b2).is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(Curve { a, b })
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// `x³ + ax + b`.
    pub fn rhs(&self, x: &Rational) -> Rational {
        x * x * x + &self.a * x + &self.b
    }

    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        y * y == self.rhs(x)
    }
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + ({})x + ({})", self.a, self.b)
    }
}

/// Which group a set of elements lives in, together with its law.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum GroupDescriptor {
    Additive,
    Multiplicative,
    Elliptic(Curve),
}

impl fmt::Debug for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Additive => f.write_str("Ga"),
            GroupDescriptor::Multiplicative => f.write_str("Gm"),
            GroupDescriptor::Elliptic(c) => write!(f, "E[{c:?}]"),
        }
    }
}

/// A rational point of one of the groups.
///
/// Elements do not carry their curve; the descriptor passed to each
/// operation supplies it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum GroupElement {
    Add(Rational),
    Mul(Rational),
    Infinity,
    Affine { x: Rational, y: Rational },
}

impl GroupElement {
    pub fn affine(x: Rational, y: Rational) -> Self {
        GroupElement::Affine { x, y }
    }

    /// The underlying rational of an additive or multiplicative element.
    pub fn value(&self) -> Option<&Rational> {
        match self {
            GroupElement::Add(v) | GroupElement::Mul(v) => Some(v),
            _ => None,
        }
    }

    fn tag(&self) -> u8 {
        match self {
            GroupElement::Infinity => 0,
            GroupElement::Add(_) => 1,
            GroupElement::Mul(_) => 2,
            GroupElement::Affine { .. } => 3,
        }
    }
}

/// Canonical order: variant first (the point at infinity before everything),
/// then lexicographic on `(numerator, denominator)` of each coordinate.
impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        use GroupElement::*;
        match (self, other) {
            (Add(a), Add(b)) | (Mul(a), Mul(b)) => a.canonical_cmp(b),
            (Affine { x: x1, y: y1 }, Affine { x: x2, y: y2 }) => {
                x1.canonical_cmp(x2).then_with(|| y1.canonical_cmp(y2))
            }
            _ => self.tag().cmp(&other.tag()),
        }
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Add(v) | GroupElement::Mul(v) => write!(f, "{v}"),
            GroupElement::Infinity => f.write_str("O"),
            GroupElement::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

impl GroupDescriptor {
    pub fn identity(&self) -> GroupElement {
        match self {
            GroupDescriptor::Additive => GroupElement::Add(Rational::zero()),
            GroupDescriptor::Multiplicative => GroupElement::Mul(Rational::one()),
            GroupDescriptor::Elliptic(_) => GroupElement::Infinity,
        }
    }

    pub fn curve(&self) -> Option<&Curve> {
        match self {
            GroupDescriptor::Elliptic(c) => Some(c),
            _ => None,
        }
    }

    /// Wraps a rational as an element of `G_a` or `G_m`.
    pub fn element(&self, v: Rational) -> Result<GroupElement> {
        let e = match self {
            GroupDescriptor::Additive => GroupElement::Add(v),
            GroupDescriptor::Multiplicative => GroupElement::Mul(v),
            GroupDescriptor::Elliptic(_) => {
                return Err(Error::InvalidArgument(
                    "elliptic elements need two coordinates".into(),
                ))
            }
        };
        self.check(&e)?;
        Ok(e)
    }

    /// Membership: variant matches, `G_m` values are nonzero, and affine
    /// points satisfy the curve equation exactly.
    pub fn on_group(&self, p: &GroupElement) -> bool {
        match (self, p) {
            (GroupDescriptor::Additive, GroupElement::Add(_)) => true,
            (GroupDescriptor::Multiplicative, GroupElement::Mul(v)) => !v.is_zero(),
            (GroupDescriptor::Elliptic(_), GroupElement::Infinity) => true,
            (GroupDescriptor::Elliptic(c), GroupElement::Affine { x, y }) => c.contains(x, y),
            _ => false,
        }
    }

    pub fn check(&self, p: &GroupElement) -> Result<()> {
        if self.on_group(p) {
            Ok(())
        } else {
            Err(Error::NotMember(format!("{self:?}: {p:?}")))
        }
    }

    fn same_kind(&self, p: &GroupElement) -> bool {
        matches!(
            (self, p),
            (GroupDescriptor::Additive, GroupElement::Add(_))
                | (GroupDescriptor::Multiplicative, GroupElement::Mul(_))
                | (GroupDescriptor::Elliptic(_), GroupElement::Infinity)
                | (GroupDescriptor::Elliptic(_), GroupElement::Affine { .. })
        )
    }

    /// The group law. Only the variant is checked here; curve membership of
    /// the inputs is the caller's precondition (`FiniteSet` validates it on
    /// construction).
    pub fn op(&self, p: &GroupElement, q: &GroupElement) -> Result<GroupElement> {
        if !self.same_kind(p) || !self.same_kind(q) {
            return Err(Error::MixedGroups);
        }
        use GroupElement::*;
        Ok(match (p, q) {
            (Add(a), Add(b)) => Add(a + b),
            (Mul(a), Mul(b)) => Mul(a * b),
            (Infinity, r) | (r, Infinity) => r.clone(),
            (Affine { x: x1, y: y1 }, Affine { x: x2, y: y2 }) => {
                let curve = self.curve().ok_or(Error::MixedGroups)?;
                let slope = if x1 == x2 {
                    if y1 != y2 || y1.is_zero() {
                        // P + (-P), or doubling a 2-torsion point.
                        return Ok(Infinity);
                    }
                    let three_x2 = Rational::from(3) * x1 * x1;
                    (three_x2 + curve.a()) / (Rational::from(2) * y1)
                } else {
                    (y2 - y1) / (x2 - x1)
                };
                let x3 = &slope * &slope - x1 - x2;
                let y3 = slope * (x1 - &x3) - y1;
                Affine { x: x3, y: y3 }
            }
            _ => return Err(Error::MixedGroups),
        })
    }

    pub fn inverse(&self, p: &GroupElement) -> Result<GroupElement> {
        if !self.same_kind(p) {
            return Err(Error::MixedGroups);
        }
        use GroupElement::*;
        Ok(match p {
            Add(v) => Add(-v),
            Mul(v) => Mul(v.recip()?),
            Infinity => Infinity,
            Affine { x, y } => Affine {
                x: x.clone(),
                y: -y,
            },
        })
    }

    /// `p - q`.
    pub fn sub(&self, p: &GroupElement, q: &GroupElement) -> Result<GroupElement> {
        self.op(p, &self.inverse(q)?)
    }

    /// `n·p` by double-and-add; negative `n` goes through the inverse.
    pub fn scalar_mul(&self, n: i64, p: &GroupElement) -> Result<GroupElement> {
        let base = if n < 0 { self.inverse(p)? } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = self.identity();
        let mut doubling = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.op(&acc, &doubling)?;
            }
            k >>= 1;
            if k > 0 {
                doubling = self.op(&doubling, &doubling)?;
            }
        }
        Ok(acc)
    }

    /// `Σ coeffs[i]·points[i]`.
    pub fn linear_combination(&self, coeffs: &[i64], points: &[GroupElement]) -> Result<GroupElement> {
        if coeffs.len() != points.len() {
            return Err(Error::DimensionMismatch {
                expected: points.len(),
                got: coeffs.len(),
            });
        }
        coeffs
            .iter()
            .zip(points)
            .try_fold(self.identity(), |acc, (&n, p)| self.op(&acc, &self.scalar_mul(n, p)?))
    }

    /// The multiples `-l·p, …, l·p` in order, computed incrementally.
    pub fn multiples(&self, p: &GroupElement, l: u32) -> Result<Vec<GroupElement>> {
        let neg = self.inverse(p)?;
        let mut positive = Vec::with_capacity(l as usize);
        let mut negative = Vec::with_capacity(l as usize);
        let (mut up, mut down) = (self.identity(), self.identity());
        for _ in 0..l {
            up = self.op(&up, p)?;
            down = self.op(&down, &neg)?;
            positive.push(up.clone());
            negative.push(down.clone());
        }
        negative.reverse();
        negative.push(self.identity());
        negative.extend(positive);
        Ok(negative)
    }
}
