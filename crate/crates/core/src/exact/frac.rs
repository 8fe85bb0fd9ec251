//! Polynomials in `s = t^{1/w}` and the integral projector `[.]_int`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;

use crate::exact::poly::{push_term, Poly};
use crate::exact::rational::RationalT;
use crate::scalar::Scalar;

/// A finite sum of terms `c * t^{e/w}` with integer `e` (possibly negative).
///
/// Values with different `w` are compared and combined after rescaling to a
/// common denominator; [`FracPoly::normalized`] gives the smallest one.
#[derive(Clone)]
pub struct FracPoly<T> {
    denom: u64,
    terms: BTreeMap<i64, T>,
}

impl<T: Scalar> FracPoly<T> {
    pub fn zero(denom: u64) -> Self {
        assert!(denom >= 1);
        FracPoly {
            denom,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(denom: u64) -> Self {
        Self::monomial(denom, 0, T::one())
    }

    /// `c * t^{e/denom}`.
    pub fn monomial(denom: u64, e: i64, c: T) -> Self {
        let mut p = Self::zero(denom);
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn from_terms(denom: u64, terms: impl IntoIterator<Item = (i64, T)>) -> Self {
        let mut p = Self::zero(denom);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Embeds an ordinary polynomial in `t` (exponents scaled by `denom`).
    pub fn from_poly(denom: u64, poly: &Poly<T>) -> Self {
        Self::from_terms(
            denom,
            poly.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| (k as i64 * denom as i64, c.clone())),
        )
    }

    /// `1 + s^a + s^{2a} + ... + s^{(n-1)a}`.
    pub fn geometric(denom: u64, a: i64, n: u64) -> Self {
        Self::from_terms(denom, (0..n as i64).map(|i| (i * a, T::one())))
    }

    fn add_term(&mut self, e: i64, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn denom(&self) -> u64 {
        self.denom
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &T)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, e: i64) -> T {
        self.terms.get(&e).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same value over denominator `new_denom`, which must be a multiple.
    pub fn rescale(&self, new_denom: u64) -> Self {
        assert!(new_denom % self.denom == 0, "{new_denom} is not a multiple of {}", self.denom);
        let f = (new_denom / self.denom) as i64;
        FracPoly {
            denom: new_denom,
            terms: self.terms.iter().map(|(&e, c)| (e * f, c.clone())).collect(),
        }
    }

    /// Same value over the smallest possible denominator.
    pub fn normalized(&self) -> Self {
        let g = self
            .terms
            .keys()
            .fold(self.denom as i64, |g, &e| g.gcd(&e)) as u64;
        FracPoly {
            denom: self.denom / g,
            terms: self.terms.iter().map(|(&e, c)| (e / g as i64, c.clone())).collect(),
        }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let l = self.denom.lcm(&other.denom);
        (self.rescale(l), other.rescale(l))
    }

    /// True iff every exponent is an integer.
    pub fn is_integral(&self) -> bool {
        let w = self.denom as i64;
        self.terms.keys().all(|e| e.rem_euclid(w) == 0)
    }

    /// The projector `[.]_int`: keeps exactly the terms with integral exponent.
    pub fn integral_project(&self) -> Self {
        let w = self.denom as i64;
        FracPoly {
            denom: self.denom,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.rem_euclid(w) == 0)
                .map(|(&e, c)| (e, c.clone()))
                .collect(),
        }
    }

    /// For an integral value: `(k, p)` with value `t^k p(t)`, `p(0) != 0`.
    pub fn to_laurent(&self) -> Option<(i64, Poly<T>)> {
        if !self.is_integral() {
            return None;
        }
        let w = self.denom as i64;
        let Some(&low) = self.terms.keys().next() else {
            return Some((0, Poly::zero()));
        };
        let low = low / w;
        let high = *self.terms.keys().next_back().unwrap() / w;
        let mut coeffs = vec![T::zero(); (high - low + 1) as usize];
        for (&e, c) in &self.terms {
            coeffs[(e / w - low) as usize] = c.clone();
        }
        Some((low, Poly::from_coeffs(coeffs)))
    }

    /// As a Laurent polynomial in `s` itself: `(k, p)` with value `s^k p(s)`.
    pub fn to_s_laurent(&self) -> (i64, Poly<T>) {
        let Some(&low) = self.terms.keys().next() else {
            return (0, Poly::zero());
        };
        let high = *self.terms.keys().next_back().unwrap();
        let mut coeffs = vec![T::zero(); (high - low + 1) as usize];
        for (&e, c) in &self.terms {
            coeffs[(e - low) as usize] = c.clone();
        }
        (low, Poly::from_coeffs(coeffs))
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_terms(self.denom, self.terms.iter().map(|(&e, x)| (e, x.clone() * c.clone())))
    }

    pub fn mul_monomial(&self, e: i64) -> Self {
        FracPoly {
            denom: self.denom,
            terms: self.terms.iter().map(|(&k, c)| (k + e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(self.denom), |acc, _| &acc * self)
    }

    /// Value at `t = 1`.
    pub fn eval_at_one(&self) -> T {
        self.terms.values().fold(T::zero(), |acc, c| acc + c.clone())
    }
}

/// Value equality, independent of the stored denominator.
impl<T: Scalar> PartialEq for FracPoly<T> {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.terms == b.terms
    }
}

impl<T: Scalar> fmt::Debug for FracPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FracPoly[w={}]({self})", self.denom)
    }
}

impl<T: Scalar> fmt::Display for FracPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (&e, c) in &self.terms {
            let g = e.gcd(&(self.denom as i64));
            let (n, d) = (e / g, self.denom as i64 / g);
            let mono = match (n, d) {
                (0, _) => String::new(),
                (1, 1) => "t".into(),
                (n, 1) => format!("t^{n}"),
                (n, d) => format!("t^({n}/{d})"),
            };
            push_term(&mut out, c, &mono);
        }
        f.write_str(&out)
    }
}

impl<T: Scalar> Add for &FracPoly<T> {
    type Output = FracPoly<T>;
    fn add(self, rhs: &FracPoly<T>) -> FracPoly<T> {
        let (mut a, b) = self.aligned(rhs);
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        a
    }
}

impl<T: Scalar> Neg for &FracPoly<T> {
    type Output = FracPoly<T>;
    fn neg(self) -> FracPoly<T> {
        FracPoly {
            denom: self.denom,
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

impl<T: Scalar> Sub for &FracPoly<T> {
    type Output = FracPoly<T>;
    fn sub(self, rhs: &FracPoly<T>) -> FracPoly<T> {
        self + &(-rhs)
    }
}

impl<T: Scalar> Mul for &FracPoly<T> {
    type Output = FracPoly<T>;
    fn mul(self, rhs: &FracPoly<T>) -> FracPoly<T> {
        let (a, b) = self.aligned(rhs);
        let mut out = FracPoly::zero(a.denom);
        for (&ea, ca) in &a.terms {
            for (&eb, cb) in &b.terms {
                out.add_term(ea + eb, ca.clone() * cb.clone());
            }
        }
        out
    }
}

/// The projector as a free function.
pub fn integral_project<T: Scalar>(f: &FracPoly<T>) -> FracPoly<T> {
    f.integral_project()
}

/// Checks `[p q]_int == p [q]_int` for integral `p`.
pub fn reynolds_factor_property<T: Scalar>(p: &FracPoly<T>, q: &FracPoly<T>) -> bool {
    assert!(p.is_integral(), "left factor must have integral exponents");
    (p * q).integral_project() == p * &q.integral_project()
}

/// `num / prod (1 - t^m)^e` where `num` may carry fractional exponents and
/// every denominator factor is integral in `t`.
///
/// Because the denominator is integral, `[num/den]_int = [num]_int / den`,
/// which is how [`FracRational::project`] evaluates the projector on a
/// rational function.
#[derive(Clone)]
pub struct FracRational<T> {
    num: FracPoly<T>,
    den: Vec<(u64, u32)>,
}

impl<T: Scalar> fmt::Debug for FracRational<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FracRational({:?} / {:?})", self.num, self.den)
    }
}

impl<T: Scalar> FracRational<T> {
    pub fn new(num: FracPoly<T>, den: Vec<(u64, u32)>) -> Self {
        let mut r = FracRational { num, den };
        r.den.retain(|&(_, e)| e > 0);
        r.den.sort_unstable();
        r
    }

    pub fn from_frac_poly(num: FracPoly<T>) -> Self {
        Self::new(num, Vec::new())
    }

    /// `1 / (1 - s^a)` with `s = t^{1/denom}`, `a > 0`.
    ///
    /// Multiplies through by `1 + s^a + ... + s^{a(n-1)}` where `n a` is the
    /// first multiple of `a` divisible by `denom`.
    pub fn inv_one_minus(denom: u64, a: u64) -> Self {
        assert!(a > 0);
        let g = a.gcd(&denom);
        let n = denom / g;
        let m = a / g;
        Self::new(FracPoly::geometric(denom, a as i64, n), vec![(m, 1)])
    }

    pub fn numerator(&self) -> &FracPoly<T> {
        &self.num
    }

    pub fn denominator(&self) -> &[(u64, u32)] {
        &self.den
    }

    pub fn mul_frac_poly(&self, p: &FracPoly<T>) -> Self {
        Self::new(&self.num * p, self.den.clone())
    }

    /// `[self]_int` as a rational function of `t`.
    pub fn project(&self) -> RationalT<T> {
        let (shift, poly) = self
            .num
            .integral_project()
            .to_laurent()
            .expect("projection is integral");
        RationalT::from_factored(poly, shift, &self.den)
    }

    /// The same function as a rational function of `s = t^{1/w}`, `w` the
    /// numerator's denominator.
    pub fn in_root_variable(&self) -> RationalT<T> {
        let w = self.num.denom();
        let (shift, poly) = self.num.to_s_laurent();
        let den: Vec<(u64, u32)> = self.den.iter().map(|&(m, e)| (m * w, e)).collect();
        RationalT::from_factored(poly, shift, &den)
    }

    /// The value as a fractional polynomial, if the denominator cancels.
    pub fn to_frac_poly(&self) -> Option<FracPoly<T>> {
        let r = self.in_root_variable();
        let w = self.num.denom();
        r.is_laurent().then(|| {
            FracPoly::from_terms(
                w,
                r.numerator()
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(k, c)| (k as i64 + r.shift(), c.clone())),
            )
        })
    }
}

impl<T: Scalar> Mul for &FracRational<T> {
    type Output = FracRational<T>;
    fn mul(self, rhs: &FracRational<T>) -> FracRational<T> {
        let mut den = self.den.clone();
        den.extend(rhs.den.iter().copied());
        FracRational::new(&self.num * &rhs.num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn projector_examples() {
        // integral input is unchanged
        let f = FracPoly::from_terms(3, [(0, q(1)), (6, q(2))]);
        assert_eq!(f.integral_project(), f);
        // [(uv)^{5/6} (1 + (uv)^{1/3})]_int = 0
        let g = &FracPoly::monomial(6, 5, q(1)) * &FracPoly::from_terms(3, [(0, q(1)), (1, q(1))]);
        assert!(g.integral_project().is_zero());
        // [(1 + s + s^2 + s^3)^5]_int with s = t^{1/5}
        let h = FracPoly::<Q>::geometric(5, 1, 4).pow(5).integral_project();
        let expected = FracPoly::from_poly(1, &Poly::from_ints(&[1, 101, 101, 1]));
        assert_eq!(h, expected);
    }

    #[test]
    fn reynolds_examples() {
        let q12 = FracPoly::from_terms(12, [(1, q(3)), (12, q(1)), (-7, q(2))]);
        assert!(reynolds_factor_property(&FracPoly::one(1), &q12));
        let one_plus_t = FracPoly::from_poly(1, &Poly::from_ints(&[1, 1]));
        let half = FracPoly::monomial(2, 1, q(1));
        assert!((&one_plus_t * &half).integral_project().is_zero());
        assert!(reynolds_factor_property(&one_plus_t, &half));
    }

    #[test]
    fn rescaling_preserves_value() {
        let f = FracPoly::from_terms(4, [(2, q(1)), (4, q(-1))]);
        assert_eq!(f.normalized().denom(), 2);
        assert_eq!(f.rescale(12), f);
        assert!(!f.is_integral());
    }

    #[test]
    fn inverse_geometric_factor() {
        // 1/(1 - s^5), s = t^{1/36}: numerator has 36 terms, denominator 1 - t^5
        let r = FracRational::<Q>::inv_one_minus(36, 5);
        assert_eq!(r.denominator(), &[(5, 1)]);
        assert_eq!(r.numerator().len(), 36);
        // times (1 - s^5) is one
        let back = r.mul_frac_poly(&FracPoly::from_terms(36, [(0, q(1)), (5, q(-1))]));
        assert_eq!(back.to_frac_poly().unwrap(), FracPoly::one(36));
    }
}
