//! Rational functions in one variable `t` whose denominators are products of
//! cyclotomic polynomials.
//!
//! Every denominator that arises from weighted lattice counting is a product
//! of factors `1 - t^m`, so the reduced denominator is always a product of
//! cyclotomic polynomials `Phi_k`. Storing it as the multiset `{k: e}` makes
//! the canonical form cheap: cancelling the gcd amounts to trial division of
//! the numerator by each `Phi_k`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exact::cyclotomic::{cyclotomic, cyclotomic_at_one, divisors};
use crate::exact::poly::{push_term, Poly};
use crate::scalar::Scalar;

/// `t^shift * numerator / prod_k Phi_k(t)^{e_k}` in canonical form.
///
/// Canonical means: the numerator is zero (and then everything else is
/// trivial) or has a nonzero constant term, and no `Phi_k` occurring in the
/// denominator divides the numerator. The expanded denominator is monic, so
/// two values are equal as rational functions iff they are structurally
/// equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalT<T> {
    num: Poly<T>,
    shift: i64,
    den: BTreeMap<u64, u32>,
}

impl<T: Scalar> RationalT<T> {
    pub fn zero() -> Self {
        RationalT {
            num: Poly::zero(),
            shift: 0,
            den: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::from_laurent(Poly::constant(c), 0)
    }

    /// `c * t^k`, `k` possibly negative.
    pub fn monomial(c: T, k: i64) -> Self {
        Self::from_laurent(Poly::constant(c), k)
    }

    /// `t^shift * p(t)`.
    pub fn from_laurent(p: Poly<T>, shift: i64) -> Self {
        Self::from_parts(p, shift, BTreeMap::new())
    }

    pub fn from_poly(p: Poly<T>) -> Self {
        Self::from_laurent(p, 0)
    }

    /// `t^shift * num / prod (1 - t^m)^e`.
    pub fn from_factored(num: Poly<T>, shift: i64, factors: &[(u64, u32)]) -> Self {
        let mut den = BTreeMap::new();
        let mut sign_flips = 0u32;
        for &(m, e) in factors {
            assert!(m >= 1, "factor 1 - t^0 is identically zero");
            if e == 0 {
                continue;
            }
            // 1 - t^m = -(t^m - 1) = -prod_{k | m} Phi_k
            sign_flips += e;
            for k in divisors(m) {
                *den.entry(k).or_insert(0) += e;
            }
        }
        let num = if sign_flips % 2 == 1 { -num } else { num };
        Self::from_parts(num, shift, den)
    }

    fn from_parts(num: Poly<T>, shift: i64, den: BTreeMap<u64, u32>) -> Self {
        let mut r = RationalT { num, shift, den };
        r.normalize();
        r
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.shift = 0;
            self.den.clear();
            return;
        }
        let low = self.num.low_order();
        if low > 0 {
            self.num = self.num.shift_down(low);
            self.shift += low as i64;
        }
        let keys: Vec<u64> = self.den.keys().copied().collect();
        for k in keys {
            let phi = cyclotomic::<T>(k);
            let e = self.den.get_mut(&k).unwrap();
            while *e > 0 {
                match self.num.exact_div(&phi) {
                    Some(q) => {
                        self.num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|_, e| *e > 0);
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True iff the reduced form has no denominator and no negative powers.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty() && (self.num.is_zero() || self.shift >= 0)
    }

    /// True iff the reduced denominator is trivial (negative powers allowed).
    pub fn is_laurent(&self) -> bool {
        self.den.is_empty()
    }

    /// The value as a polynomial, if it is one.
    pub fn to_poly(&self) -> Option<Poly<T>> {
        self.is_polynomial()
            .then(|| self.num.shift_up(self.shift.max(0) as usize))
    }

    pub fn numerator(&self) -> &Poly<T> {
        &self.num
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// Cyclotomic exponents `{k: e}` of the reduced denominator.
    pub fn cyclotomic_denominator(&self) -> &BTreeMap<u64, u32> {
        &self.den
    }

    pub fn expanded_denominator(&self) -> Poly<T> {
        self.den.iter().fold(Poly::one(), |acc, (&k, &e)| {
            &acc * &cyclotomic::<T>(k).pow(e)
        })
    }

    pub fn pole_order_at_one(&self) -> u32 {
        self.den.get(&1).copied().unwrap_or(0)
    }

    /// Exact value of `lim_{t -> 1}`.
    pub fn limit_at_one(&self) -> Result<T> {
        if self.pole_order_at_one() > 0 {
            return Err(Error::PoleAtOne);
        }
        let num = self.num.eval(&T::one());
        let den = self.den.iter().fold(T::one(), |acc, (&k, &e)| {
            let v = T::from_u64(cyclotomic_at_one(k)).unwrap();
            (0..e).fold(acc, |a, _| a * v.clone())
        });
        Ok(num / den)
    }

    /// Power-series coefficients at `t = 0` of degrees `0..=n`.
    ///
    /// Panics when the value has a pole at `t = 0`.
    pub fn series(&self, n: usize) -> Vec<T> {
        assert!(self.shift >= 0 || self.is_zero(), "pole at t = 0");
        let den = self.expanded_denominator();
        let d0 = den.coeff(0);
        let shift = self.shift.max(0) as usize;
        let mut out = vec![T::zero(); n + 1];
        for k in 0..=n {
            if k < shift {
                continue;
            }
            let mut acc = self.num.coeff(k - shift);
            for j in 1..=k.min(den.degree().unwrap_or(0)) {
                acc = acc - den.coeff(j) * out[k - j].clone();
            }
            out[k] = acc / d0.clone();
        }
        out
    }

    /// Equality decided by cross-multiplication of the expanded forms,
    /// independent of the canonical reduction.
    pub fn eq_by_cross_multiplication(&self, other: &Self) -> bool {
        let base = self.shift.min(other.shift);
        let a = self.num.shift_up((self.shift - base) as usize);
        let b = other.num.shift_up((other.shift - base) as usize);
        &a * &other.expanded_denominator() == &b * &self.expanded_denominator()
    }

    /// `p(t) -> p(1/t)`.
    pub fn invert_variable(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        // Phi_k(1/t) = t^{-phi(k)} Phi_k(t) for k >= 2; Phi_1(1/t) = -t^{-1} Phi_1(t).
        let deg = self.num.degree().unwrap();
        let mut num = self.num.reversed(deg);
        let mut shift = -self.shift - deg as i64;
        for (&k, &e) in &self.den {
            let phi_deg = cyclotomic::<T>(k).degree().unwrap() as i64;
            shift += phi_deg * e as i64;
            if k == 1 && e % 2 == 1 {
                num = -num;
            }
        }
        Self::from_parts(num, shift, self.den.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_parts(self.num.scale(c), self.shift, self.den.clone())
    }

    pub fn mul_monomial(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        RationalT {
            num: self.num.clone(),
            shift: self.shift + k,
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Numerator (with its power of the variable) and expanded denominator,
    /// rendered separately.
    pub fn display_parts(&self, var: &str) -> (String, String) {
        (
            laurent_string(&self.num, self.shift, var),
            self.expanded_denominator().display_with(var),
        )
    }

    /// Renders as `numerator / denominator` in the given variable.
    pub fn display_with(&self, var: &str) -> String {
        let num = laurent_string(&self.num, self.shift, var);
        if self.den.is_empty() {
            return num;
        }
        let den = self.expanded_denominator().display_with(var);
        format!("({num})/({den})")
    }
}

fn laurent_string<T: Scalar>(p: &Poly<T>, shift: i64, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = k as i64 + shift;
        let mono = match e {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{e}"),
        };
        push_term(&mut out, c, &mono);
    }
    out
}

impl<T: Scalar> fmt::Debug for RationalT<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalT({})", self.display_with("t"))
    }
}

impl<T: Scalar> fmt::Display for RationalT<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

impl<T: Scalar> Add for &RationalT<T> {
    type Output = RationalT<T>;
    fn add(self, rhs: &RationalT<T>) -> RationalT<T> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let base = self.shift.min(rhs.shift);
        let mut den = self.den.clone();
        for (&k, &e) in &rhs.den {
            let slot = den.entry(k).or_insert(0);
            *slot = (*slot).max(e);
        }
        let cofactor = |own: &BTreeMap<u64, u32>| {
            den.iter().fold(Poly::<T>::one(), |acc, (&k, &e)| {
                let have = own.get(&k).copied().unwrap_or(0);
                if e > have {
                    &acc * &cyclotomic::<T>(k).pow(e - have)
                } else {
                    acc
                }
            })
        };
        let a = &self.num.shift_up((self.shift - base) as usize) * &cofactor(&self.den);
        let b = &rhs.num.shift_up((rhs.shift - base) as usize) * &cofactor(&rhs.den);
        RationalT::from_parts(&a + &b, base, den)
    }
}

impl<T: Scalar> Neg for &RationalT<T> {
    type Output = RationalT<T>;
    fn neg(self) -> RationalT<T> {
        RationalT {
            num: -&self.num,
            shift: self.shift,
            den: self.den.clone(),
        }
    }
}

impl<T: Scalar> Sub for &RationalT<T> {
    type Output = RationalT<T>;
    fn sub(self, rhs: &RationalT<T>) -> RationalT<T> {
        self + &(-rhs)
    }
}

impl<T: Scalar> Mul for &RationalT<T> {
    type Output = RationalT<T>;
    fn mul(self, rhs: &RationalT<T>) -> RationalT<T> {
        if self.is_zero() || rhs.is_zero() {
            return RationalT::zero();
        }
        let mut den = self.den.clone();
        for (&k, &e) in &rhs.den {
            *den.entry(k).or_insert(0) += e;
        }
        RationalT::from_parts(&self.num * &rhs.num, self.shift + rhs.shift, den)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl<T: Scalar> $tr for RationalT<T> {
            type Output = RationalT<T>;
            fn $m(self, rhs: RationalT<T>) -> RationalT<T> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl<T: Scalar> Neg for RationalT<T> {
    type Output = RationalT<T>;
    fn neg(self) -> RationalT<T> {
        -&self
    }
}

impl<T: Scalar> std::iter::Sum for RationalT<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| &acc + &x)
    }
}

/// Rebuilds `P(t) / prod (1 - t^m)^e` from the coefficients `N(1..=K)` of
/// its power series, given a denominator known in advance.
///
/// The numerator degree is bounded by `D = sum m*e`; the coefficients of the
/// product in degrees `D+1 ..= K` form a guard band that must vanish, which
/// certifies the denominator. `guard` defaults to `D`.
pub fn rational_from_counts<T: Scalar>(
    counts: &[T],
    denom: &[(u64, u32)],
    guard: Option<usize>,
) -> Result<RationalT<T>> {
    let degree: usize = denom.iter().map(|&(m, e)| m as usize * e as usize).sum();
    let guard = guard.unwrap_or(degree);
    let need = degree + 1 + guard;
    if counts.len() < need {
        return Err(Error::InsufficientTerms {
            have: counts.len(),
            need,
        });
    }
    let k_max = counts.len();
    // series coefficients s_0 = 0, s_k = N(k)
    let mut prod: Vec<T> = std::iter::once(T::zero())
        .chain(counts.iter().cloned())
        .collect();
    for &(m, e) in denom {
        let m = m as usize;
        for _ in 0..e {
            for k in (m..=k_max).rev() {
                if !prod[k - m].is_zero() {
                    prod[k] = prod[k].clone() - prod[k - m].clone();
                }
            }
        }
    }
    if let Some(k) = (degree + 1..=k_max).find(|&k| !prod[k].is_zero()) {
        return Err(Error::ReconstructionFailure { degree: k });
    }
    prod.truncate(degree + 1);
    Ok(RationalT::from_factored(Poly::from_coeffs(prod), 0, denom))
}
