//! Orbifold side: the orbifold Euler number, the twisted-sector Poincare
//! polynomial and the orbifold E-function in mirror coordinates.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::efunction::EFunction;
use crate::error::{Error, Result};
use crate::exact::{BiPoly, FracPoly, FracRational, Poly, RationalT};
use crate::scalar::Scalar;
use crate::weights::{OrbifoldElement, WeightVector};
use crate::Q;

/// `chi_orb = (1/w) sum_{l, r} prod_{theta~_i(l) = theta~_i(r) = 0} (1 - 1/q_i)`.
pub fn vafa_euler(wv: &WeightVector) -> Q {
    let mut fixed: BTreeMap<u32, u64> = BTreeMap::new();
    for e in wv.elements() {
        *fixed.entry(e.fixed().0).or_insert(0) += 1;
    }
    let w = wv.degree();
    let factor = |mask: u32| {
        (0..wv.len())
            .filter(|i| mask >> i & 1 == 1)
            .fold(Q::from_integer(1.into()), |acc, i| {
                let wi = wv.weights()[i];
                acc * Q::new(BigInt::from(wi as i64 - w as i64), BigInt::from(wi))
            })
    };
    let mut total = Q::from_integer(0.into());
    for (&a, &na) in &fixed {
        for (&b, &nb) in &fixed {
            total += factor(a & b) * Q::from_integer(BigInt::from(na * nb));
        }
    }
    total / Q::from_integer(BigInt::from(w))
}

/// `prod_{theta~_i(l) = 0} (s^{w_i} - s^w) / (1 - s^{w_i})` before projection.
fn untwisted_product<T: Scalar>(wv: &WeightVector, e: &OrbifoldElement) -> FracRational<T> {
    let w = wv.degree();
    let mut acc = FracRational::from_frac_poly(FracPoly::one(w));
    for i in e.fixed().indices() {
        let wi = wv.weights()[i];
        let top = FracPoly::from_terms(w, [(wi as i64, T::one()), (w as i64, -T::one())]);
        acc = &acc * &FracRational::inv_one_minus(w, wi).mul_frac_poly(&top);
    }
    acc
}

/// `[prod_{theta~_i(l) = 0} ((uv)^{q_i} - uv) / (1 - (uv)^{q_i})]_int`.
pub fn untwisted_bracket<T: Scalar>(wv: &WeightVector, l: u64) -> Result<RationalT<T>> {
    let e = wv.element(l)?;
    Ok(untwisted_product(wv, e).project())
}

fn sign<T: Scalar>(n: u32) -> T {
    if n % 2 == 0 {
        T::one()
    } else {
        -T::one()
    }
}

/// `P^{(l)} = (1/uv) [..]_int (-v)^{size(l)} (u/v)^{age(l)}`.
pub fn orbifold_term<T: Scalar>(wv: &WeightVector, l: u64) -> Result<EFunction<T>> {
    let e = wv.element(l)?;
    let b = untwisted_bracket::<T>(wv, l)?.scale(&sign(e.size));
    Ok(EFunction::monomial(
        e.age as i64 - 1,
        (e.size - e.age) as i64 - 1,
        b,
    ))
}

/// The orbifold E-function of `X_w` written in the mirror variables,
/// `(-u)^{d-1} E_orb(X_w; 1/u, v)`, together with its pieces.
#[derive(Clone, Debug)]
pub struct OrbifoldEResult<T: Scalar> {
    pub value: EFunction<T>,
    pub euler: T,
    pub per_l_terms: Vec<EFunction<T>>,
    /// Set when the weight vector is not transverse: the formula is still
    /// evaluated but carries no orbifold interpretation.
    pub formal: bool,
}

pub fn mirror_orbifold_e<T: Scalar>(wv: &WeightVector) -> Result<OrbifoldEResult<T>> {
    let per_l_terms: Vec<EFunction<T>> = (0..wv.degree())
        .into_par_iter()
        .map(|l| orbifold_term(wv, l))
        .collect::<Result<_>>()?;
    let value: EFunction<T> = per_l_terms.iter().cloned().sum();
    let euler = value.value_at_one()?;
    Ok(OrbifoldEResult {
        value,
        euler,
        per_l_terms,
        formal: !wv.transverse(),
    })
}

/// The `l`-th summand of the Poincare polynomial in its original shape:
/// each twisted coordinate contributes `(t tbar)^{1/2 - q_i} (t/tbar)^{theta~_i - 1/2}
/// = t^{theta~_i - q_i} tbar^{1 - q_i - theta~_i}` and the projector keeps the
/// monomials whose `t` and `tbar` exponents are both integers. The result is
/// an E-function in `(u, v) = (t, tbar)`.
pub fn vafa_term<T: Scalar>(wv: &WeightVector, l: u64) -> Result<EFunction<T>> {
    let e = wv.element(l)?;
    let w = wv.degree() as i64;
    let (mut a_shift, mut b_shift) = (0i64, 0i64);
    for i in e.support().indices() {
        let wi = wv.weights()[i] as i64;
        let th = e.theta_numerators()[i] as i64;
        a_shift += th - wi;
        b_shift += w - wi - th;
    }
    let mut product = FracRational::from_frac_poly(FracPoly::one(w as u64));
    for i in e.fixed().indices() {
        let wi = wv.weights()[i];
        let top = FracPoly::from_terms(w as u64, [(0, T::one()), (w - wi as i64, -T::one())]);
        product = &product * &FracRational::inv_one_minus(w as u64, wi).mul_frac_poly(&top);
    }
    let num = product.numerator().rescale(w as u64);
    // group surviving monomials t^a tbar^b by a - b, as Laurent polynomials in t tbar
    let mut groups: BTreeMap<i64, BTreeMap<i64, T>> = BTreeMap::new();
    for (s, c) in num.terms() {
        let (a, b) = (s + a_shift, s + b_shift);
        if a.rem_euclid(w) != 0 || b.rem_euclid(w) != 0 {
            continue;
        }
        let (a, b) = (a / w, b / w);
        let slot = groups.entry(a - b).or_default().entry(a.min(b)).or_insert_with(T::zero);
        *slot = slot.clone() + c.clone();
    }
    let mut out = EFunction::zero();
    for (diff, laurent) in groups {
        let low = *laurent.keys().next().unwrap();
        let coeffs: Vec<T> = (low..=*laurent.keys().last().unwrap())
            .map(|k| laurent.get(&k).cloned().unwrap_or_else(T::zero))
            .collect();
        let r = RationalT::from_factored(Poly::from_coeffs(coeffs), low, product.denominator());
        out.add_term(diff.max(0), (-diff).max(0), r);
    }
    Ok(out)
}

/// The `l`-th summand in the restated shape
/// `(1/uv) [..]_int v^{size(l)} (u/v)^{age(l)}`.
pub fn restated_term<T: Scalar>(wv: &WeightVector, l: u64) -> Result<EFunction<T>> {
    let e = wv.element(l)?;
    let b = untwisted_bracket::<T>(wv, l)?;
    Ok(EFunction::monomial(
        e.age as i64 - 1,
        (e.size - e.age) as i64 - 1,
        b,
    ))
}

/// True iff the two shapes of every summand agree.
pub fn q_identity_check(wv: &WeightVector) -> bool {
    (0..wv.degree()).into_par_iter().all(|l| {
        matches!(
            (vafa_term::<Q>(wv, l), restated_term::<Q>(wv, l)),
            (Ok(a), Ok(b)) if a == b
        )
    })
}

/// `P(t, tbar) = sum_l [..]_int`, the generating polynomial of the Hodge
/// numbers of the mirror, as a polynomial in `(t, tbar)`.
pub fn vafa_poincare<T: Scalar>(wv: &WeightVector) -> Result<BiPoly<T>> {
    Ok(vafa_poincare_terms::<T>(wv)?
        .into_iter()
        .fold(BiPoly::zero(), |acc, p| &acc + &p))
}

/// The summands of [`vafa_poincare`], indexed by `l`.
pub fn vafa_poincare_terms<T: Scalar>(wv: &WeightVector) -> Result<Vec<BiPoly<T>>> {
    (0..wv.degree())
        .into_par_iter()
        .map(|l| {
            let p = vafa_term::<T>(wv, l)?.to_bipoly()?;
            if let Some(((a, b), c)) = p.terms().find(|(_, c)| !c.is_integral()) {
                return Err(Error::NonIntegerCoefficient {
                    p: a,
                    q: b,
                    coeff: c.to_string(),
                });
            }
            Ok(p)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wv(w: &[u64]) -> WeightVector {
        WeightVector::new(w).unwrap()
    }

    fn int(x: i64) -> Q {
        Q::from_integer(x.into())
    }

    fn tt(k: u32) -> ((u32, u32), i64) {
        ((k, k), 1)
    }

    #[test]
    fn euler_numbers() {
        assert_eq!(vafa_euler(&wv(&[1, 1, 1, 1, 1])), int(-200));
        assert_eq!(vafa_euler(&wv(&[1, 1, 2, 2, 2])), int(-168));
        assert_eq!(vafa_euler(&wv(&[1, 5, 12, 18])), int(24));
    }

    #[test]
    fn quintic_poincare() {
        let q = wv(&[1, 1, 1, 1, 1]);
        let terms = vafa_poincare_terms::<Q>(&q).unwrap();
        assert_eq!(
            terms[0],
            BiPoly::from_ints(&[tt(0), ((1, 1), 101), ((2, 2), 101), tt(3)])
        );
        let twisted: BiPoly<Q> = terms[1..].iter().fold(BiPoly::zero(), |a, p| &a + p);
        assert_eq!(
            twisted,
            BiPoly::from_ints(&[((3, 0), 1), ((2, 1), 1), ((1, 2), 1), ((0, 3), 1)])
        );
    }

    #[test]
    fn octic_pieces() {
        let o = wv(&[1, 1, 2, 2, 2]);
        let terms = vafa_poincare_terms::<Q>(&o).unwrap();
        assert_eq!(
            terms[0],
            BiPoly::from_ints(&[tt(0), ((1, 1), 83), ((2, 2), 83), tt(3)])
        );
        assert_eq!(terms[4], BiPoly::from_ints(&[((1, 1), 3), ((2, 2), 3)]));
        let e = mirror_orbifold_e::<Q>(&o).unwrap();
        assert_eq!(
            e.value.to_bipoly().unwrap(),
            BiPoly::from_ints(&[
                tt(0),
                ((1, 1), 86),
                ((0, 3), -1),
                ((1, 2), -2),
                ((2, 1), -2),
                ((3, 0), -1),
                ((2, 2), 86),
                tt(3),
            ])
        );
        assert_eq!(e.euler, int(168));
        assert!(!e.formal);
    }

    #[test]
    fn k3_orbifold() {
        let k3 = wv(&[1, 5, 12, 18]);
        let e = mirror_orbifold_e::<Q>(&k3).unwrap();
        assert_eq!(
            e.value.to_bipoly().unwrap(),
            BiPoly::from_ints(&[((0, 0), 1), ((2, 0), 1), ((1, 1), 20), ((0, 2), 1), ((2, 2), 1)])
        );
        assert_eq!(
            e.per_l_terms[0].to_bipoly().unwrap(),
            BiPoly::from_ints(&[tt(0), ((1, 1), 10), tt(2)])
        );
    }

    #[test]
    fn non_transverse_twisted_sector() {
        let v = wv(&[1, 1, 2, 4, 5]);
        let e = mirror_orbifold_e::<Q>(&v).unwrap();
        assert!(e.formal);
        let size5: EFunction<Q> = (1..v.degree())
            .filter(|&l| v.element(l).unwrap().size == 5)
            .map(|l| e.per_l_terms[l as usize].clone())
            .sum();
        assert_eq!(
            size5.to_bipoly().unwrap(),
            BiPoly::from_ints(&[((0, 3), -1), ((1, 2), -5), ((2, 1), -5), ((3, 0), -1)])
        );
    }

    #[test]
    fn shapes_agree() {
        for w in [&[1u64, 1, 1, 1, 1][..], &[1, 1, 2, 2, 2], &[1, 5, 12, 18], &[1, 1, 2, 4, 5]] {
            assert!(q_identity_check(&wv(w)), "{w:?}");
        }
    }
}
