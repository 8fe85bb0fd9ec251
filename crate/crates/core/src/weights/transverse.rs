//! Combinatorial transversality test for a generic quasi-homogeneous
//! polynomial of degree `w`.

use super::{FaceSet, WeightVector};

/// Whether `target` is a nonnegative integer combination of `coins`.
fn representable(target: u64, coins: &[u64]) -> bool {
    let mut ok = vec![false; target as usize + 1];
    ok[0] = true;
    for &c in coins {
        for x in c as usize..=target as usize {
            if ok[x - c as usize] {
                ok[x] = true;
            }
        }
    }
    ok[target as usize]
}

/// For every nonempty `I`, either `w` is representable by the weights in
/// `I`, or there are at least `|I|` distinct indices `e` outside `I` with
/// `w - w_e` representable by the weights in `I`.
pub fn transverse(wv: &WeightVector) -> bool {
    let n = wv.len();
    let w = wv.degree();
    let weights = wv.weights();
    FaceSet::all(n).filter(|s| !s.is_empty()).all(|set| {
        let coins: Vec<u64> = set.indices().map(|i| weights[i]).collect();
        if representable(w, &coins) {
            return true;
        }
        let movers = (0..n)
            .filter(|&e| !set.contains(e) && representable(w - weights[e], &coins))
            .count();
        movers >= set.len()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tr(w: &[u64]) -> bool {
        transverse(&WeightVector::new(w).unwrap())
    }

    #[test]
    fn examples() {
        assert!(tr(&[1, 1, 1, 1, 1]));
        assert!(tr(&[1, 1, 2, 2, 2]));
        assert!(tr(&[1, 5, 12, 18]));
        assert!(tr(&[1, 1, 1]));
        // x^a y + ... fails: (1,1,2,4,5) has no monomial for x_4 alone
        assert!(!tr(&[1, 1, 2, 4, 5]));
    }

    #[test]
    fn representability() {
        assert!(representable(0, &[]));
        assert!(!representable(5, &[]));
        assert!(!representable(7, &[3, 5]));
        assert!(representable(8, &[3, 5]));
    }
}
