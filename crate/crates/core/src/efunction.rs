//! E-functions: finite sums `sum u^a v^b R_ab(uv)` with `min(a, b) = 0` and
//! each `R_ab` a rational function of `t = uv`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exact::{BiPoly, Poly, RationalT};
use crate::scalar::Scalar;

/// Canonical E-function. Grouping by `a - b` is unique, so structural
/// equality of the term maps is equality of functions.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct EFunction<T> {
    terms: BTreeMap<(u32, u32), RationalT<T>>,
}

impl<T: Scalar> EFunction<T> {
    pub fn zero() -> Self {
        EFunction {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(RationalT::one())
    }

    /// A function of `uv` alone.
    pub fn from_rational(r: RationalT<T>) -> Self {
        Self::monomial(0, 0, r)
    }

    /// `u^a v^b r(uv)`, with `a`, `b` possibly negative.
    pub fn monomial(a: i64, b: i64, r: RationalT<T>) -> Self {
        let mut e = Self::zero();
        e.add_term(a, b, r);
        e
    }

    pub fn from_bipoly(p: &BiPoly<T>) -> Self {
        let mut e = Self::zero();
        for ((a, b), c) in p.terms() {
            e.add_term(a as i64, b as i64, RationalT::constant(c.clone()));
        }
        e
    }

    pub fn add_term(&mut self, a: i64, b: i64, r: RationalT<T>) {
        if r.is_zero() {
            return;
        }
        let m = a.min(b);
        let key = ((a - m) as u32, (b - m) as u32);
        let r = r.mul_monomial(m);
        let sum = match self.terms.remove(&key) {
            Some(old) => &old + &r,
            None => r,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &RationalT<T>)> {
        self.terms.iter().map(|(&k, r)| (k, r))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.values().all(RationalT::is_polynomial)
    }

    pub fn to_bipoly(&self) -> Result<BiPoly<T>> {
        let mut out = BiPoly::zero();
        for (&(a, b), r) in &self.terms {
            let p = r.to_poly().ok_or(Error::NotPolynomial)?;
            for (k, c) in p.coeffs().iter().enumerate() {
                out.add_term(a + k as u32, b + k as u32, c.clone());
            }
        }
        Ok(out)
    }

    /// `lim_{u, v -> 1}`.
    pub fn value_at_one(&self) -> Result<T> {
        self.terms
            .values()
            .try_fold(T::zero(), |acc, r| Ok(acc + r.limit_at_one()?))
    }

    pub fn scale(&self, c: &T) -> Self {
        EFunction {
            terms: self
                .terms
                .iter()
                .filter(|_| !c.is_zero())
                .map(|(&k, r)| (k, r.scale(c)))
                .collect(),
        }
    }

    pub fn mul_rational(&self, r: &RationalT<T>) -> Self {
        let mut out = Self::zero();
        for (&(a, b), x) in &self.terms {
            out.add_term(a as i64, b as i64, x * r);
        }
        out
    }

    /// Renders polynomials as such, otherwise as a sum of
    /// `u^a*v^b*(R(uv))` terms.
    pub fn render(&self) -> String {
        if let Ok(p) = self.to_bipoly() {
            return p.to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(a, b), r)| {
                let mono = [(a, "u"), (b, "v")]
                    .into_iter()
                    .filter(|&(e, _)| e > 0)
                    .map(|(e, x)| if e == 1 { x.to_string() } else { format!("{x}^{e}") })
                    .collect::<Vec<_>>()
                    .join("*");
                let r = r.display_with("(u*v)");
                if mono.is_empty() {
                    format!("[{r}]")
                } else {
                    format!("{mono}*[{r}]")
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl<T: Scalar> fmt::Display for EFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<T: Scalar> fmt::Debug for EFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EFunction({})", self.render())
    }
}

impl<T: Scalar> Add for &EFunction<T> {
    type Output = EFunction<T>;
    fn add(self, rhs: &EFunction<T>) -> EFunction<T> {
        let mut out = self.clone();
        for (&(a, b), r) in &rhs.terms {
            out.add_term(a as i64, b as i64, r.clone());
        }
        out
    }
}

impl<T: Scalar> Neg for &EFunction<T> {
    type Output = EFunction<T>;
    fn neg(self) -> EFunction<T> {
        EFunction {
            terms: self.terms.iter().map(|(&k, r)| (k, -r)).collect(),
        }
    }
}

impl<T: Scalar> Sub for &EFunction<T> {
    type Output = EFunction<T>;
    fn sub(self, rhs: &EFunction<T>) -> EFunction<T> {
        self + &(-rhs)
    }
}

impl<T: Scalar> Mul for &EFunction<T> {
    type Output = EFunction<T>;
    fn mul(self, rhs: &EFunction<T>) -> EFunction<T> {
        let mut out = EFunction::zero();
        for (&(a1, b1), r1) in &self.terms {
            for (&(a2, b2), r2) in &rhs.terms {
                out.add_term((a1 + a2) as i64, (b1 + b2) as i64, r1 * r2);
            }
        }
        out
    }
}

impl<T: Scalar> std::iter::Sum for EFunction<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| &acc + &x)
    }
}

/// `(t - 1)^n` as a rational function.
pub(crate) fn t_minus_one_pow<T: Scalar>(n: u32) -> RationalT<T> {
    RationalT::from_poly(Poly::t_minus_one_pow(n))
}
