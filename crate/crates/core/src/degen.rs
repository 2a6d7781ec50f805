//! Degeneracy criteria for a polynomial `P(x_1, …, x_g)` with respect to
//! `G_a^g` and `G_m^g`, and the hypersurface degree convention.
//!
//! `G_a`: `P` is treated as degenerate exactly when some nonzero `v` makes
//! `v · ∇P` vanish identically. The implication degenerate ⇒ such `v` exists
//! is the classical direction; the converse used here holds because a
//! nonzero `v` with `v · ∇P ≡ 0` makes `P` constant along `v`, so after a
//! linear change of coordinates `P` omits one variable.
//! [`translation_invariance_certificate`] checks that constancy directly.
//!
//! `G_m`: `P` is degenerate exactly when the exponent vectors of its support
//! fail to span `Q^g`.
//!
//! No criterion is offered for elliptic `G`.

use alloc::vec::Vec;

use crate::linalg;
use crate::poly::MultiPoly;
use crate::{Error, Rational, Result};

/// A nonzero `v` with `v · ∇P ≡ 0`, or `None` when `P` is non-degenerate
/// with respect to `G_a^g`. The vector is primitive integral with a positive
/// first nonzero entry.
pub fn ga_degeneracy(p: &MultiPoly) -> Result<Option<Vec<Rational>>> {
    if p.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let g = p.num_vars();
    let grad = p.gradient();
    // One row per monomial occurring in any partial; column l holds that
    // monomial's coefficient in ∂P/∂x_l.
    let mut monomials: Vec<&Vec<u32>> = grad.iter().flat_map(|d| d.terms().map(|(e, _)| e)).collect();
    monomials.sort();
    monomials.dedup();
    let rows: Vec<Vec<Rational>> = monomials
        .iter()
        .map(|m| grad.iter().map(|d| d.coefficient(m)).collect())
        .collect();
    Ok(linalg::nullspace(&rows, g).into_iter().next())
}

/// Whether the exponent vectors of the support of `P` span less than `Q^g`.
pub fn gm_degeneracy(p: &MultiPoly) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(exponent_rank(p) < p.num_vars())
}

/// Rank over `Q` of the matrix whose rows are the support's exponent vectors.
pub fn exponent_rank(p: &MultiPoly) -> usize {
    let rows: Vec<Vec<Rational>> = p
        .terms()
        .map(|(e, _)| e.iter().map(|&k| Rational::from(k as i64)).collect())
        .collect();
    linalg::rank(&rows, p.num_vars())
}

/// `j_1 + … + j_g`, with `j_i` the largest power of `x_i` in the support.
pub fn hypersurface_degree(p: &MultiPoly) -> u32 {
    (0..p.num_vars()).map(|i| p.degree_in(i)).sum()
}

/// Whether `P(x + t·v) − P(x)` is the zero polynomial in `g + 1` variables.
pub fn translation_invariance_certificate(p: &MultiPoly, v: &[Rational]) -> Result<bool> {
    let g = p.num_vars();
    if v.len() != g {
        return Err(Error::DimensionMismatch {
            expected: g,
            got: v.len(),
        });
    }
    if v.iter().all(Rational::is_zero) {
        return Err(Error::InvalidArgument("direction vector must be nonzero".into()));
    }
    let t = MultiPoly::var(g + 1, g);
    let shifted_vars: Vec<MultiPoly> = (0..g)
        .map(|i| &MultiPoly::var(g + 1, i) + &t.scale(&v[i]))
        .collect();
    let shifted = p.compose(&shifted_vars)?;
    let original = p.with_num_vars(g + 1)?;
    Ok((&shifted - &original).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s, None).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn ga_examples() {
        assert_eq!(ga_degeneracy(&p("xy+yz+zx")).unwrap(), None);
        assert_eq!(ga_degeneracy(&p("x+y")).unwrap(), Some(ints(&[1, -1])));
        // -v1 + v2·x3 + v3·x2 ≡ 0 forces v = 0.
        assert_eq!(ga_degeneracy(&p("X2X3 - X1 + 1")).unwrap(), None);
        // (x - 2y)^2 + 3(x - 2y) is constant along (2, 1).
        assert_eq!(ga_degeneracy(&p("x^2 - 4xy + 4y^2 + 3x - 6y")).unwrap(), Some(ints(&[2, 1])));
        // A polynomial not involving x3 is degenerate along e3.
        assert_eq!(ga_degeneracy(&MultiPoly::parse("x1*x2", Some(3)).unwrap()).unwrap(), Some(ints(&[0, 0, 1])));
        assert_eq!(ga_degeneracy(&p("5")), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn gm_examples() {
        // rows (0,1,1), (1,0,0), (0,0,0)
        assert!(gm_degeneracy(&p("X2X3 - X1 + 1")).unwrap());
        // rows (1,1,0), (0,1,1), (1,0,1)
        assert!(!gm_degeneracy(&p("xy+yz+zx")).unwrap());
        assert!(gm_degeneracy(&p("x1*x2")).unwrap());
        assert_eq!(gm_degeneracy(&MultiPoly::zero(2)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn degrees() {
        assert_eq!(hypersurface_degree(&p("X2X3 - X1 + 1")), 3);
        assert_eq!(hypersurface_degree(&p("x^3*y + y^2")), 5);
        assert_eq!(hypersurface_degree(&MultiPoly::constant(2, Rational::from(4))), 0);
        // Larger than the total degree 4.
        assert_eq!(hypersurface_degree(&p("x^3*y + x*y^3")), 6);
    }

    #[test]
    fn certificates() {
        assert!(translation_invariance_certificate(&p("x+y"), &ints(&[1, -1])).unwrap());
        assert!(!translation_invariance_certificate(&p("xy+yz+zx"), &ints(&[1, 0, 0])).unwrap());
        assert!(translation_invariance_certificate(&p("x+y"), &ints(&[1])).is_err());
        assert!(translation_invariance_certificate(&p("x+y"), &ints(&[0, 0])).is_err());
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec((prop::collection::vec(0u32..3, 3), -3i64..=3), 1..6).prop_filter_map(
            "nonconstant",
            |terms| {
                let p = MultiPoly::from_terms(3, terms.into_iter().map(|(e, c)| (e, Rational::from(c)))).ok()?;
                (!p.is_constant()).then_some(p)
            },
        )
    }

    proptest! {
        #[test]
        fn returned_vectors_are_certified(p in arb_poly()) {
            if let Some(v) = ga_degeneracy(&p).unwrap() {
                prop_assert!(translation_invariance_certificate(&p, &v).unwrap());
            }
        }

        #[test]
        fn composites_of_fewer_forms_are_degenerate(a in -3i64..=3, b in -3i64..=3, c in 1i64..=3) {
            // F(L) with a single linear form L = a·x + b·y + c·z.
            let l = MultiPoly::from_terms(3, [
                (vec![1, 0, 0], Rational::from(a)),
                (vec![0, 1, 0], Rational::from(b)),
                (vec![0, 0, 1], Rational::from(c)),
            ]).unwrap();
            let f = &l.pow(2) + &l.scale(&Rational::from(5));
            let v = ga_degeneracy(&f).unwrap();
            prop_assert!(v.is_some());
            prop_assert!(translation_invariance_certificate(&f, &v.unwrap()).unwrap());
        }
    }
}
