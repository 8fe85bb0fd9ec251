//! Weight-vector populations shared by the integration tests.

#![allow(dead_code)]

use mirror_stringy::WeightVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Nondecreasing `len`-tuples of positive integers with sum at most `max_sum`.
pub fn sorted_tuples(len: usize, max_sum: u64) -> Vec<Vec<u64>> {
    fn rec(len: usize, min: u64, rest: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let left = (len - cur.len()) as u64;
        let mut x = min;
        while x * left <= rest {
            cur.push(x);
            rec(len, x, rest - x, cur, out);
            cur.pop();
            x += 1;
        }
    }
    let mut out = Vec::new();
    rec(len, 1, max_sum, &mut Vec::new(), &mut out);
    out
}

/// Every well-formed IP weight vector of the given length and `w <= max_sum`.
pub fn all_ip(len: usize, max_sum: u64) -> Vec<WeightVector> {
    sorted_tuples(len, max_sum)
        .into_iter()
        .filter_map(|w| WeightVector::new(&w).ok())
        .filter(WeightVector::ip)
        .collect()
}

/// `count` distinct random IP weight vectors, drawn with a fixed seed.
pub fn random_ip(len: usize, max_sum: u64, count: usize, seed: u64) -> Vec<WeightVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<WeightVector> = Vec::new();
    while out.len() < count {
        let mut w: Vec<u64> = (0..len).map(|_| rng.gen_range(1..=max_sum / 2)).collect();
        w.sort_unstable();
        if w.iter().sum::<u64>() > max_sum {
            continue;
        }
        let Ok(v) = WeightVector::new(&w) else {
            continue;
        };
        if v.ip() && !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// All IP vectors with `d = 3`, `w <= 40`, then 20 random ones with
/// `d = 4`, `w <= 60`.
pub fn population() -> Vec<WeightVector> {
    let mut v = all_ip(4, 40);
    v.extend(random_ip(5, 60, 20, 0x5eed));
    v
}
