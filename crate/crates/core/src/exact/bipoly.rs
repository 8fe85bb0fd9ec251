use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exact::poly::push_term;
use crate::scalar::Scalar;

/// Polynomial in `u, v` with non-negative exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly<T> {
    terms: BTreeMap<(u32, u32), T>,
}

impl<T: Scalar> BiPoly<T> {
    pub fn zero() -> Self {
        BiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, T::one())
    }

    /// `c u^p v^q`.
    pub fn monomial(p: u32, q: u32, c: T) -> Self {
        let mut b = Self::zero();
        b.add_term(p, q, c);
        b
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), T)>) -> Self {
        let mut b = Self::zero();
        for ((p, q), c) in terms {
            b.add_term(p, q, c);
        }
        b
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_ints(terms: &[((u32, u32), i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(k, c)| (k, T::int(c))))
    }

    pub fn add_term(&mut self, p: u32, q: u32, c: T) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((p, q)).or_insert_with(T::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&(p, q));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &T)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn coeff(&self, p: u32, q: u32) -> T {
        self.terms.get(&(p, q)).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_u(&self) -> Option<u32> {
        self.terms.keys().map(|&(p, _)| p).max()
    }

    pub fn degree_v(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, q)| q).max()
    }

    pub fn eval(&self, u: &T, v: &T) -> T {
        self.terms.iter().fold(T::zero(), |acc, (&(p, q), c)| {
            acc + c.clone() * pow(u, p) * pow(v, q)
        })
    }

    pub fn swap(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(p, q), c)| ((q, p), c.clone())))
    }

    /// Exact division by `u^a v^b`.
    pub fn div_monomial(&self, a: u32, b: u32) -> Result<Self> {
        if self.terms.keys().any(|&(p, q)| p < a || q < b) {
            return Err(Error::DivisionNotExact);
        }
        Ok(Self::from_terms(
            self.terms.iter().map(|(&(p, q), c)| ((p - a, q - b), c.clone())),
        ))
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_terms(self.terms.iter().map(|(&k, x)| (k, x.clone() * c.clone())))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `p(-u, -v)`.
    pub fn alternate(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(p, q), c)| {
            let c = if (p + q) % 2 == 1 { -c.clone() } else { c.clone() };
            ((p, q), c)
        }))
    }

    /// Monomials in graded lexicographic order: total degree ascending, then
    /// the `u` exponent descending.
    pub fn graded_lex(&self) -> Vec<((u32, u32), &T)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by_key(|&((p, q), _)| (p + q, std::cmp::Reverse(p)));
        v
    }
}

fn pow<T: Scalar>(x: &T, n: u32) -> T {
    (0..n).fold(T::one(), |acc, _| acc * x.clone())
}

fn monomial_string(p: u32, q: u32) -> String {
    let var = |name: &str, e: u32| match e {
        0 => None,
        1 => Some(name.to_string()),
        e => Some(format!("{name}^{e}")),
    };
    if p == q && p >= 2 {
        return format!("(u*v)^{p}");
    }
    [var("u", p), var("v", q)]
        .into_iter()
        .flatten()
        .collect::<Vec<_>>()
        .join("*")
}

impl<T: Scalar> fmt::Display for BiPoly<T> {
    /// Graded lexicographic order, e.g. `1 + u^2 + 20*u*v + v^2 + (u*v)^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for ((p, q), c) in self.graded_lex() {
            push_term(&mut out, c, &monomial_string(p, q));
        }
        f.write_str(&out)
    }
}

impl<T: Scalar> fmt::Debug for BiPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

impl<T: Scalar> Add for &BiPoly<T> {
    type Output = BiPoly<T>;
    fn add(self, rhs: &BiPoly<T>) -> BiPoly<T> {
        let mut out = self.clone();
        for (&(p, q), c) in &rhs.terms {
            out.add_term(p, q, c.clone());
        }
        out
    }
}

impl<T: Scalar> Neg for &BiPoly<T> {
    type Output = BiPoly<T>;
    fn neg(self) -> BiPoly<T> {
        self.scale(&-T::one())
    }
}

impl<T: Scalar> Sub for &BiPoly<T> {
    type Output = BiPoly<T>;
    fn sub(self, rhs: &BiPoly<T>) -> BiPoly<T> {
        self + &(-rhs)
    }
}

impl<T: Scalar> Mul for &BiPoly<T> {
    type Output = BiPoly<T>;
    fn mul(self, rhs: &BiPoly<T>) -> BiPoly<T> {
        let mut out = BiPoly::zero();
        for (&(p1, q1), a) in &self.terms {
            for (&(p2, q2), b) in &rhs.terms {
                out.add_term(p1 + p2, q1 + q2, a.clone() * b.clone());
            }
        }
        out
    }
}

/// `(-u)^dim * p(1/u, v)`, the exchange of `h^{p,q}` with `h^{dim-p,q}`.
pub fn mirror_transform<T: Scalar>(p: &BiPoly<T>, dim: u32) -> Result<BiPoly<T>> {
    if let Some(deg) = p.degree_u().filter(|&deg| deg > dim) {
        return Err(Error::NegativeExponent {
            degree: deg as i64,
            dim,
        });
    }
    let sign = if dim % 2 == 0 { T::one() } else { -T::one() };
    Ok(BiPoly::from_terms(
        p.terms().map(|((a, b), c)| ((dim - a, b), c.clone() * sign.clone())),
    ))
}
