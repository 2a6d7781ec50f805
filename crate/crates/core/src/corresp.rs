//! Algebraic correspondences between one-dimensional groups.
//!
//! A correspondence is a curve in `G × H` projecting dominantly to both
//! factors. Fibers are evaluated over `Q` only: [`Correspondence::fiber`]
//! returns the rational points of the fiber that lie in the target group and
//! silently omits irrational ones. Graphs of polynomials, coordinate
//! projections of rational points and square shifts of squares all have
//! rational fibers by construction.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{divisors, FactorBudget, Factorizer};
use crate::finsets::FiniteSet;
use crate::groups::{GroupDescriptor, GroupElement};
use crate::linalg::integer_row;
use crate::poly::MultiPoly;
use crate::{Error, Rational, Result};

/// Cap on the number of divisors enumerated for one coefficient during
/// rational-root search.
pub const DIVISOR_CAP: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorrespondenceKind {
    /// Closure of the graph `{(x, φ(x))}` of a univariate polynomial.
    Graph { phi: MultiPoly },
    /// `(x, y) ↦ x` or `(x, y) ↦ y` from a Weierstrass curve to `G_a`.
    CoordProj { axis: Axis },
    /// Fiber over `x` is `{ z : (u + z)² = x }`.
    SquareShift { u: Rational },
    /// Zero set of `P(x, y)`, `x` on the source side and `y` on the target.
    Implicit { p: MultiPoly },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correspondence {
    source: GroupDescriptor,
    target: GroupDescriptor,
    kind: CorrespondenceKind,
    d_source: u32,
    d_target: u32,
}

fn is_line(g: &GroupDescriptor) -> bool {
    matches!(g, GroupDescriptor::Additive | GroupDescriptor::Multiplicative)
}

fn require_lines(source: &GroupDescriptor, target: &GroupDescriptor) -> Result<()> {
    if is_line(source) && is_line(target) {
        Ok(())
    } else {
        Err(Error::InvalidCorrespondence(format!(
            "expected G_a or G_m on both sides, got {source:?} -> {target:?}"
        )))
    }
}

impl Correspondence {
    pub fn graph(source: GroupDescriptor, target: GroupDescriptor, phi: MultiPoly) -> Result<Self> {
        require_lines(&source, &target)?;
        if phi.num_vars() != 1 {
            return Err(Error::InvalidCorrespondence("graph needs a univariate polynomial".into()));
        }
        if phi.is_constant() {
            return Err(Error::InvalidCorrespondence("constant map is not dominant".into()));
        }
        let d = phi.degree_in(0);
        Ok(Correspondence {
            source,
            target,
            kind: CorrespondenceKind::Graph { phi },
            d_source: 1,
            d_target: d,
        })
    }

    /// Coordinate projection from an elliptic curve to `G_a`. The `x`
    /// coordinate has degree 2 on the curve and `y` degree 3.
    pub fn coord_proj(source: GroupDescriptor, axis: Axis) -> Result<Self> {
        if source.curve().is_none() {
            return Err(Error::InvalidCorrespondence("coordinate projection needs an elliptic source".into()));
        }
        let d_target = match axis {
            Axis::X => 2,
            Axis::Y => 3,
        };
        Ok(Correspondence {
            source,
            target: GroupDescriptor::Additive,
            kind: CorrespondenceKind::CoordProj { axis },
            d_source: 1,
            d_target,
        })
    }

    pub fn square_shift(source: GroupDescriptor, target: GroupDescriptor, u: Rational) -> Result<Self> {
        require_lines(&source, &target)?;
        Ok(Correspondence {
            source,
            target,
            kind: CorrespondenceKind::SquareShift { u },
            d_source: 2,
            d_target: 1,
        })
    }

    pub fn implicit(source: GroupDescriptor, target: GroupDescriptor, p: MultiPoly) -> Result<Self> {
        require_lines(&source, &target)?;
        if p.num_vars() != 2 {
            return Err(Error::InvalidCorrespondence("implicit curve needs a bivariate polynomial".into()));
        }
        if !p.depends_on(0) || !p.depends_on(1) {
            return Err(Error::InvalidCorrespondence("P must depend on both variables".into()));
        }
        let (d_source, d_target) = (p.degree_in(1), p.degree_in(0));
        Ok(Correspondence {
            source,
            target,
            kind: CorrespondenceKind::Implicit { p },
            d_source,
            d_target,
        })
    }

    pub fn source(&self) -> &GroupDescriptor {
        &self.source
    }

    pub fn target(&self) -> &GroupDescriptor {
        &self.target
    }

    pub fn kind(&self) -> &CorrespondenceKind {
        &self.kind
    }

    /// Generic number of points above a source point.
    pub fn d_source(&self) -> u32 {
        self.d_source
    }

    /// Generic number of points above a target point.
    pub fn d_target(&self) -> u32 {
        self.d_target
    }

    /// Degree with respect to the pulled-back line bundles. Both closures
    /// (`P¹` for `G_a`/`G_m`, the curve itself for `E`) have degree 1.
    pub fn degree(&self) -> u32 {
        let closure_degree = 1;
        self.d_source * closure_degree + self.d_target * closure_degree
    }

    /// Rational fiber over `p` using the default factoring budget.
    pub fn fiber(&self, p: &GroupElement) -> Result<FiniteSet> {
        self.fiber_with(p, &self.default_factorizer())
    }

    // Only implicit fibers factor anything; skip building the prime table otherwise.
    fn default_factorizer(&self) -> Factorizer {
        match self.kind {
            CorrespondenceKind::Implicit { .. } => Factorizer::default(),
            _ => Factorizer::new(FactorBudget {
                trial_limit: 0,
                rho_steps: 0,
            }),
        }
    }

    pub fn fiber_with(&self, p: &GroupElement, factorizer: &Factorizer) -> Result<FiniteSet> {
        self.source.check(p)?;
        let values: Vec<GroupElement> = match &self.kind {
            CorrespondenceKind::Graph { phi } => {
                let x = p.value().expect("line group element");
                let y = phi.eval(core::slice::from_ref(x))?;
                self.lift_target(y).into_iter().collect()
            }
            CorrespondenceKind::CoordProj { axis } => match (p, axis) {
                (GroupElement::Affine { x, .. }, Axis::X) => [GroupElement::Add(x.clone())].into(),
                (GroupElement::Affine { y, .. }, Axis::Y) => [GroupElement::Add(y.clone())].into(),
                // The point at infinity has no affine coordinate.
                _ => Vec::new(),
            },
            CorrespondenceKind::SquareShift { u } => {
                let x = p.value().expect("line group element");
                match x.sqrt_exact() {
                    Some(r) => [&r - u, -&r - u]
                        .into_iter()
                        .filter_map(|z| self.lift_target(z))
                        .collect(),
                    None => Vec::new(),
                }
            }
            CorrespondenceKind::Implicit { p: poly } => {
                let x = p.value().expect("line group element");
                let restricted = poly.partial_eval(&[(0, x.clone())])?;
                if restricted.is_zero() {
                    return Err(Error::InfiniteFiber(x.to_string()));
                }
                let coeffs = restricted.univariate_coeffs(1)?;
                rational_roots(&coeffs, factorizer)?
                    .into_iter()
                    .filter_map(|z| self.lift_target(z))
                    .collect()
            }
        };
        FiniteSet::new(self.target.clone(), values)
    }

    fn lift_target(&self, v: Rational) -> Option<GroupElement> {
        self.target.element(v).ok()
    }

    /// `C(A)`, the union of the fibers over `A`.
    pub fn image(&self, a: &FiniteSet) -> Result<FiniteSet> {
        self.image_with(a, &self.default_factorizer())
    }

    pub fn image_with(&self, a: &FiniteSet, factorizer: &Factorizer) -> Result<FiniteSet> {
        if a.group() != &self.source {
            return Err(Error::MixedGroups);
        }
        let mut acc: Vec<GroupElement> = Vec::new();
        for p in a.iter() {
            acc.extend(self.fiber_with(p, factorizer)?.elements().iter().cloned());
        }
        FiniteSet::new(self.target.clone(), acc)
    }

    /// Whether the correspondence is a translate of an algebraic subgroup of
    /// `source × target`.
    pub fn is_subgroup_translate(&self) -> Result<bool> {
        use GroupDescriptor::*;
        match &self.kind {
            CorrespondenceKind::Graph { phi } => Ok(match (&self.source, &self.target) {
                (Multiplicative, Multiplicative) => phi.num_terms() == 1,
                (Additive, Additive) => phi.degree_in(0) == 1,
                // Connected subgroups of G_m × G_a are the two factors, and a
                // dominant graph is neither.
                _ => false,
            }),
            CorrespondenceKind::CoordProj { .. } | CorrespondenceKind::SquareShift { .. } => Ok(false),
            CorrespondenceKind::Implicit { .. } => Err(Error::Unsupported(
                "no decision procedure for cosets among implicit curves".into(),
            )),
        }
    }
}

/// All rational roots of `Σ coeffs[i]·y^i`, sorted and without repetition.
///
/// Candidates come from the rational root theorem on the primitive integer
/// form; the constant and leading coefficients are factored under the
/// factorizer's budget.
pub fn rational_roots(coeffs: &[Rational], factorizer: &Factorizer) -> Result<Vec<Rational>> {
    let mut ints = integer_row(coeffs);
    while ints.last().is_some_and(|c| c.is_zero()) {
        ints.pop();
    }
    if ints.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let mut roots = Vec::new();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if low > 0 {
        roots.push(Rational::zero());
        ints.drain(..low);
    }
    if ints.len() == 1 {
        return Ok(roots);
    }
    let constant = ints[0].magnitude().clone();
    let leading = ints[ints.len() - 1].magnitude().clone();
    let factor = |n: &BigUint| -> Result<Vec<BigUint>> {
        let f = factorizer
            .factor(n)
            .map_err(|_| Error::FactorizationBudgetExceeded(n.to_string()))?;
        divisors(&f, DIVISOR_CAP).map_err(|_| Error::FactorizationBudgetExceeded(n.to_string()))
    };
    let ps = factor(&constant)?;
    let qs = factor(&leading)?;
    for p in &ps {
        for q in &qs {
            if !p.gcd(q).is_one() {
                continue;
            }
            for sign in [Sign::Plus, Sign::Minus] {
                let num = BigInt::from_biguint(sign, p.clone());
                let den = BigInt::from_biguint(Sign::Plus, q.clone());
                if is_root(&ints, &num, &den) {
                    roots.push(Rational::new(num, den)?);
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// `Σ c_i p^i q^(n-i) = 0`, the root test for `p/q` without fractions.
fn is_root(ints: &[BigInt], p: &BigInt, q: &BigInt) -> bool {
    let mut coeffs = ints.iter().rev();
    let mut acc = coeffs.next().cloned().unwrap_or_default();
    let mut q_pow = BigInt::one();
    for c in coeffs {
        q_pow *= q;
        acc = acc * p + c * &q_pow;
    }
    acc.is_zero()
}
