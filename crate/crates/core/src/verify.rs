//! End-to-end check of `E_str(X^v; u, v) = (-u)^{d-1} E_orb(X_w; 1/u, v)`:
//! globally, for each `l`, and on Hodge numbers.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::efunction::EFunction;
use crate::error::Result;
use crate::exact::{mirror_transform, BiPoly};
use crate::orbifold::{mirror_orbifold_e, orbifold_term, vafa_euler, vafa_poincare};
use crate::stringy::{stringy_decomposition, stringy_e, stringy_e_per_l, HodgeTable};
use crate::weights::WeightVector;
use crate::Q;

/// `h_str^{p,q}(X^v)` against `h_orb^{d-1-p,q}(X)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgePair {
    pub stringy: (u32, u32),
    pub orbifold: (u32, u32),
    pub stringy_value: u64,
    pub orbifold_value: u64,
}

impl HodgePair {
    pub fn holds(&self) -> bool {
        self.stringy_value == self.orbifold_value
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub weights: Vec<u64>,
    pub ip: bool,
    pub transverse: bool,
    /// The face-sum and the `l`-sum agree as E-functions.
    pub global_identity: bool,
    pub per_l_failures: Vec<u64>,
    pub stringy_polynomial: bool,
    pub stringy: EFunction<Q>,
    pub orbifold: EFunction<Q>,
    /// Stringy Hodge numbers of the mirror, when polynomial.
    pub hodge: Option<HodgeTable>,
    /// Orbifold Hodge numbers of `X_w`, when polynomial.
    pub orbifold_hodge: Option<HodgeTable>,
    pub hodge_mirror_pairs: Vec<HodgePair>,
    /// Hodge numbers read off the Poincare polynomial agree with `hodge`.
    pub poincare_agrees: Option<bool>,
    /// `(chi_str(X^v), chi_orb(X))`; the first is a limit of the assembled
    /// E-function, the second comes from the orbifold Euler sum.
    pub euler_pair: (Q, Q),
}

impl VerificationReport {
    /// `chi_str(X^v) = (-1)^{d-1} chi_orb(X)`.
    pub fn euler_consistent(&self) -> bool {
        let d = self.weights.len() - 1;
        let sign = if (d - 1) % 2 == 0 { Q::one() } else { -Q::one() };
        self.euler_pair.0 == sign * self.euler_pair.1.clone()
    }

    pub fn no_mirror(&self) -> bool {
        !self.stringy_polynomial
    }

    pub fn passed(&self) -> bool {
        let base = self.ip && self.global_identity && self.per_l_failures.is_empty();
        if !self.transverse {
            return base;
        }
        base && self.stringy_polynomial
            && self.hodge_mirror_pairs.iter().all(HodgePair::holds)
            && self.poincare_agrees == Some(true)
            && self.euler_consistent()
    }
}

/// Exact equality of `E^{(l)}` and `P^{(l)}`.
pub fn per_l_check(wv: &WeightVector, l: u64) -> Result<bool> {
    Ok(stringy_e_per_l::<Q>(wv, l)? == orbifold_term::<Q>(wv, l)?)
}

pub fn verify(wv: &WeightVector) -> Result<VerificationReport> {
    wv.require_ip()?;
    let dim = wv.dim() as u32 - 1;
    let stringy = stringy_e::<Q>(wv)?;
    let orb = mirror_orbifold_e::<Q>(wv)?;
    let pieces = stringy_decomposition::<Q>(wv)?;
    let per_l_failures: Vec<u64> = pieces
        .par_iter()
        .zip(orb.per_l_terms.par_iter())
        .enumerate()
        .filter(|(_, (s, o))| s != o)
        .map(|(l, _)| l as u64)
        .collect();
    let stringy_polynomial = stringy.is_polynomial();

    let mut hodge = None;
    let mut orbifold_hodge = None;
    let mut pairs = Vec::new();
    let mut poincare_agrees = None;
    if let (Ok(sp), Ok(op)) = (stringy.to_bipoly(), orb.value.to_bipoly()) {
        let e_orb: Option<BiPoly<Q>> = mirror_transform(&op, dim).ok();
        let hs = HodgeTable::from_e_polynomial(&sp, dim).ok();
        let ho = e_orb.and_then(|p| HodgeTable::from_e_polynomial(&p, dim).ok());
        if let (Some(hs), Some(ho)) = (&hs, &ho) {
            for p in 0..=dim {
                for q in 0..=dim {
                    pairs.push(HodgePair {
                        stringy: (p, q),
                        orbifold: (dim - p, q),
                        stringy_value: hs.get(p, q),
                        orbifold_value: ho.get(dim - p, q),
                    });
                }
            }
        }
        if let Some(hs) = &hs {
            poincare_agrees = Some(
                vafa_poincare::<Q>(wv)
                    .and_then(|p| HodgeTable::from_poincare(&p, dim))
                    .is_ok_and(|t| &t == hs),
            );
        }
        hodge = hs;
        orbifold_hodge = ho;
    }

    let chi_str = stringy.value_at_one().unwrap_or_else(|_| Q::zero());
    Ok(VerificationReport {
        weights: wv.weights().to_vec(),
        ip: true,
        transverse: wv.transverse(),
        global_identity: stringy == orb.value,
        per_l_failures,
        stringy_polynomial,
        stringy,
        orbifold: orb.value,
        hodge,
        orbifold_hodge,
        hodge_mirror_pairs: pairs,
        poincare_agrees,
        euler_pair: (chi_str, vafa_euler(wv)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn wv(w: &[u64]) -> WeightVector {
        WeightVector::new(w).unwrap()
    }

    #[test]
    fn k3_passes() {
        let r = verify(&wv(&[1, 5, 12, 18])).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.hodge.as_ref().unwrap().get(1, 1), 20);
        assert_eq!(r.euler_pair, (Q::from_integer(24.into()), Q::from_integer(24.into())));
    }

    #[test]
    fn octic_passes() {
        let r = verify(&wv(&[1, 1, 2, 2, 2])).unwrap();
        assert!(r.passed());
        assert_eq!(r.euler_pair.1, Q::from_integer((-168).into()));
        let h = r.hodge.unwrap();
        assert_eq!((h.get(1, 1), h.get(2, 1)), (86, 2));
    }

    #[test]
    fn non_mirror_reported() {
        let r = verify(&wv(&[1, 1, 2, 4, 5])).unwrap();
        assert!(r.global_identity && r.per_l_failures.is_empty());
        assert!(r.no_mirror() && !r.transverse);
        assert!(r.hodge.is_none());
        assert!(r.passed());
    }

    #[test]
    fn per_l_cases() {
        let k3 = wv(&[1, 5, 12, 18]);
        assert!(per_l_check(&k3, 0).unwrap());
        // l = 1 has full support
        assert_eq!(k3.element(1).unwrap().size, 4);
        assert!(per_l_check(&k3, 1).unwrap());
        assert!(matches!(per_l_check(&k3, 36), Err(Error::OutOfRange { .. })));
        assert!(matches!(verify(&wv(&[1, 2, 5])), Err(Error::NotIP(_))));
    }
}
