//! Cyclotomic polynomials, the irreducible factors of `1 - t^m`.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::exact::poly::Poly;
use crate::scalar::Scalar;

thread_local! {
    static CACHE: RefCell<HashMap<u64, Vec<i64>>> = RefCell::new(HashMap::new());
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = 1;
    while k * k <= n {
        if n % k == 0 {
            small.push(k);
            if k * k != n {
                large.push(n / k);
            }
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn mobius(mut n: u64) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Integer coefficients of the n-th cyclotomic polynomial, low degree first.
pub fn cyclotomic_coeffs(n: u64) -> Vec<i64> {
    assert!(n >= 1);
    if let Some(c) = CACHE.with(|c| c.borrow().get(&n).cloned()) {
        return c;
    }
    // Phi_n = prod_{d | n} (1 - t^d)^{mu(n/d)}, up to the sign (-1)^{[n = 1]}.
    // Multiplications first, then exact divisions, so every step stays integral.
    let mut acc = vec![1i64];
    let mut divide_by = Vec::new();
    for d in divisors(n) {
        match mobius(n / d) {
            1 => acc = mul_one_minus(&acc, d as usize),
            -1 => divide_by.push(d as usize),
            _ => {}
        }
    }
    for d in divide_by {
        acc = div_one_minus(&acc, d);
    }
    if n == 1 {
        acc = acc.into_iter().map(|c| -c).collect();
    }
    CACHE.with(|c| c.borrow_mut().insert(n, acc.clone()));
    acc
}

fn mul_one_minus(p: &[i64], d: usize) -> Vec<i64> {
    let mut out = vec![0i64; p.len() + d];
    for (k, &c) in p.iter().enumerate() {
        out[k] += c;
        out[k + d] -= c;
    }
    out
}

fn div_one_minus(p: &[i64], d: usize) -> Vec<i64> {
    // q (1 - t^d) = p  =>  q_k = p_k + q_{k-d}
    let len = p.len() - d;
    let mut q = vec![0i64; len];
    for k in 0..len {
        q[k] = p[k] + if k >= d { q[k - d] } else { 0 };
    }
    debug_assert!((len..p.len()).all(|k| p[k] == -(if k >= d { q[k - d] } else { 0 })));
    q
}

pub fn cyclotomic<T: Scalar>(n: u64) -> Poly<T> {
    Poly::from_ints(&cyclotomic_coeffs(n))
}

/// `Phi_n(1)`: zero for n = 1, p when n is a power of the prime p, else 1.
pub fn cyclotomic_at_one(n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            return if m == 1 { p } else { 1 };
        }
        p += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_coeffs(1), vec![-1, 1]);
        assert_eq!(cyclotomic_coeffs(2), vec![1, 1]);
        assert_eq!(cyclotomic_coeffs(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_coeffs(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_coeffs(5), vec![1, 1, 1, 1, 1]);
        // first coefficient of absolute value 2
        assert!(cyclotomic_coeffs(105).contains(&-2));
    }

    #[test]
    fn product_over_divisors_is_t_pow_minus_one() {
        for m in 1..=60u64 {
            let prod = divisors(m)
                .into_iter()
                .fold(Poly::<crate::Q>::one(), |acc, d| &acc * &cyclotomic(d));
            assert_eq!(prod, -Poly::one_minus_power(m as usize), "m = {m}");
        }
    }

    #[test]
    fn values_at_one() {
        assert_eq!(cyclotomic_at_one(1), 0);
        assert_eq!(cyclotomic_at_one(8), 2);
        assert_eq!(cyclotomic_at_one(9), 3);
        assert_eq!(cyclotomic_at_one(6), 1);
        assert_eq!(cyclotomic_at_one(7), 7);
        for n in 1..40u64 {
            let v: i64 = cyclotomic_coeffs(n).iter().sum();
            assert_eq!(v as u64, cyclotomic_at_one(n));
        }
    }
}
