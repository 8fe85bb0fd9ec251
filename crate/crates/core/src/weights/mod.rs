//! Weight vectors and the data of the cyclic group `Z/wZ` acting on
//! `C^{d+1}` with charges `q_i = w_i / w`.

mod ip;
mod transverse;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{FracPoly, FracRational};
use crate::scalar::Scalar;
use crate::Q;

pub use ip::{affine_rank, ip_property, newton_points};
pub use transverse::transverse;

/// Subset of the coordinate indices `0..=d`, as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct FaceSet(pub u32);

impl FaceSet {
    pub fn empty() -> Self {
        FaceSet(0)
    }

    /// All of `0..n`.
    pub fn full(n: usize) -> Self {
        FaceSet(if n >= 32 { u32::MAX } else { (1u32 << n) - 1 })
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        FaceSet(indices.iter().fold(0, |m, &i| m | (1 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn complement(self, n: usize) -> Self {
        FaceSet(!self.0 & Self::full(n).0)
    }

    pub fn is_subset_of(self, other: FaceSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    /// Every subset of `0..n`, in increasing mask order.
    pub fn all(n: usize) -> impl Iterator<Item = FaceSet> {
        (0..=Self::full(n).0).map(FaceSet)
    }
}

impl fmt::Debug for FaceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.indices()).finish()
    }
}

/// An element `l` of `Z/wZ` with its fractional charges, age and size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbifoldElement {
    pub l: u64,
    w: u64,
    /// `theta~_i(l) = theta_num[i] / w`.
    theta_num: Vec<u64>,
    pub age: u32,
    pub size: u32,
}

impl OrbifoldElement {
    fn new(weights: &[u64], w: u64, l: u64) -> Self {
        let theta_num: Vec<u64> = weights.iter().map(|&wi| (l * wi) % w).collect();
        let total: u64 = theta_num.iter().sum();
        debug_assert_eq!(total % w, 0);
        let size = theta_num.iter().filter(|&&t| t != 0).count() as u32;
        OrbifoldElement {
            l,
            w,
            age: (total / w) as u32,
            size,
            theta_num,
        }
    }

    pub fn theta(&self, i: usize) -> Q {
        Q::new(BigInt::from(self.theta_num[i]), BigInt::from(self.w))
    }

    pub fn theta_tilde(&self) -> Vec<Q> {
        (0..self.theta_num.len()).map(|i| self.theta(i)).collect()
    }

    /// Numerators of `theta~(l)` over the common denominator `w`.
    pub fn theta_numerators(&self) -> &[u64] {
        &self.theta_num
    }

    /// `J(l)`: indices with nonzero fractional charge.
    pub fn support(&self) -> FaceSet {
        FaceSet(
            self.theta_num
                .iter()
                .enumerate()
                .filter(|(_, &t)| t != 0)
                .fold(0, |m, (i, _)| m | 1 << i),
        )
    }

    /// Indices `i` with `theta~_i(l) = 0`.
    pub fn fixed(&self) -> FaceSet {
        self.support().complement(self.theta_num.len())
    }
}

/// The subgroup `G_J = { l : theta~_j(l) = 0 for all j not in J }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSubgroup {
    pub face: FaceSet,
    pub members: Vec<u64>,
}

/// Validated, well-formed weight vector `(w_0, ..., w_d)`.
///
/// The group elements of `Z/wZ` are computed once at construction; the IP
/// and transversality flags are computed on first use and cached.
#[derive(Clone)]
pub struct WeightVector {
    weights: Vec<u64>,
    w: u64,
    elements: Vec<OrbifoldElement>,
    ip: OnceLock<bool>,
    transverse: OnceLock<bool>,
}

impl WeightVector {
    pub fn new(weights: &[u64]) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptyInput);
        }
        if weights.len() < 2 {
            return Err(Error::TooFewWeights(weights.len()));
        }
        if weights.len() > 32 {
            return Err(Error::TooManyWeights(weights.len()));
        }
        if weights.contains(&0) {
            return Err(Error::NonPositiveWeight);
        }
        // well-formed: every d-element subset has gcd 1
        for skip in 0..weights.len() {
            let subset: Vec<u64> = weights
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &x)| x)
                .collect();
            let g = subset.iter().fold(0u64, |g, &x| g.gcd(&x));
            if g != 1 {
                return Err(Error::NotWellFormed {
                    weights: weights.to_vec(),
                    subset,
                    gcd: g,
                });
            }
        }
        let w: u64 = weights.iter().sum();
        let elements = (0..w).map(|l| OrbifoldElement::new(weights, w, l)).collect();
        Ok(WeightVector {
            weights: weights.to_vec(),
            w,
            elements,
            ip: OnceLock::new(),
            transverse: OnceLock::new(),
        })
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// Degree `w = sum w_i`.
    pub fn degree(&self) -> u64 {
        self.w
    }

    /// `d`: the number of weights minus one.
    pub fn dim(&self) -> usize {
        self.weights.len() - 1
    }

    /// Number of coordinates, `d + 1`.
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn charges(&self) -> Vec<Q> {
        self.weights
            .iter()
            .map(|&wi| Q::new(BigInt::from(wi), BigInt::from(self.w)))
            .collect()
    }

    pub fn full_face(&self) -> FaceSet {
        FaceSet::full(self.len())
    }

    pub fn element(&self, l: u64) -> Result<&OrbifoldElement> {
        self.elements.get(l as usize).ok_or(Error::OutOfRange {
            what: "l",
            value: l as i64,
            bound: self.w as i64,
        })
    }

    pub fn elements(&self) -> &[OrbifoldElement] {
        &self.elements
    }

    /// Histogram of `(size, age)` over all of `Z/wZ`.
    pub fn census(&self) -> BTreeMap<(u32, u32), usize> {
        let mut hist = BTreeMap::new();
        for e in &self.elements {
            *hist.entry((e.size, e.age)).or_insert(0) += 1;
        }
        hist
    }

    pub fn subgroup(&self, face: FaceSet) -> Result<FaceSubgroup> {
        self.check_face(face)?;
        let outside = face.complement(self.len());
        let members = self
            .elements
            .iter()
            .filter(|e| outside.is_subset_of(e.fixed()))
            .map(|e| e.l)
            .collect();
        Ok(FaceSubgroup { face, members })
    }

    pub(crate) fn check_face(&self, face: FaceSet) -> Result<()> {
        if face.is_subset_of(self.full_face()) {
            Ok(())
        } else {
            Err(Error::SubsetOutOfRange {
                mask: face.0,
                len: self.len(),
            })
        }
    }

    pub fn ip(&self) -> bool {
        *self.ip.get_or_init(|| ip_property(self))
    }

    pub fn transverse(&self) -> bool {
        *self.transverse.get_or_init(|| transverse(self))
    }

    /// Overrides the transversality flag (e.g. from a command-line
    /// assertion). Has no effect if the flag was already computed.
    pub fn assume_transverse(&self) {
        let _ = self.transverse.set(true);
    }

    pub fn require_ip(&self) -> Result<()> {
        if self.ip() {
            Ok(())
        } else {
            Err(Error::NotIP(self.weights.clone()))
        }
    }
}

impl PartialEq for WeightVector {
    fn eq(&self, other: &Self) -> bool {
        self.weights == other.weights
    }
}

impl Eq for WeightVector {}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightVector{:?}", self.weights)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Validates a weight vector.
pub fn validate(weights: &[u64]) -> Result<WeightVector> {
    WeightVector::new(weights)
}

/// Formal Milnor number `prod (w - w_i) / w_i`.
pub fn milnor_number(wv: &WeightVector) -> Q {
    wv.weights.iter().fold(Q::from_integer(1.into()), |acc, &wi| {
        acc * Q::new(BigInt::from(wv.w - wi), BigInt::from(wi))
    })
}

/// Milnor number, asserted integral when the weight vector is transverse.
pub fn milnor_number_checked(wv: &WeightVector) -> Result<Q> {
    let mu = milnor_number(wv);
    if wv.transverse() && !mu.is_integer() {
        return Err(Error::NonIntegerMilnor(mu.to_string()));
    }
    Ok(mu)
}

/// `P(W^{(l)}, t) = prod_{theta~_j(l) = 0} (1 - t^{(w - w_j)/w}) / (1 - t^{w_j/w})`.
pub fn poincare_series<T: Scalar>(wv: &WeightVector, l: u64) -> Result<FracRational<T>> {
    let e = wv.element(l)?;
    let w = wv.w;
    let mut acc = FracRational::from_frac_poly(FracPoly::one(w));
    for j in e.fixed().indices() {
        let wj = wv.weights[j];
        let top = FracPoly::from_terms(w, [(0, T::one()), ((w - wj) as i64, -T::one())]);
        acc = &acc * &FracRational::inv_one_minus(w, wj).mul_frac_poly(&top);
    }
    Ok(acc)
}

/// `N_J(k)` for `k = 1..=k_max`: solutions of `sum w_i u_i = k w` with
/// `u_j = 0` exactly for `j` in `J`.
pub fn lattice_counts(wv: &WeightVector, face: FaceSet, k_max: usize) -> Result<Vec<u128>> {
    wv.check_face(face)?;
    let coins: Vec<u64> = face
        .complement(wv.len())
        .indices()
        .map(|j| wv.weights[j])
        .collect();
    // strictly positive parts: u_j = 1 + u'_j
    let base: u64 = coins.iter().sum();
    let top = k_max as u64 * wv.w;
    let mut ways = vec![0u128; top as usize + 1];
    ways[0] = 1;
    for &c in &coins {
        for x in c as usize..=top as usize {
            ways[x] = ways[x]
                .checked_add(ways[x - c as usize])
                .expect("lattice count overflow");
        }
    }
    Ok((1..=k_max as u64)
        .map(|k| {
            let target = k * wv.w;
            if coins.is_empty() || target < base {
                0
            } else {
                ways[(target - base) as usize]
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wv(w: &[u64]) -> WeightVector {
        WeightVector::new(w).unwrap()
    }

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn validation() {
        assert_eq!(wv(&[1, 1, 1, 1, 1]).degree(), 5);
        assert_eq!(wv(&[1, 5, 12, 18]).degree(), 36);
        assert!(matches!(WeightVector::new(&[2, 2, 4]), Err(Error::NotWellFormed { gcd: 2, .. })));
        assert_eq!(WeightVector::new(&[]), Err(Error::EmptyInput));
        assert_eq!(WeightVector::new(&[1, 0, 1]), Err(Error::NonPositiveWeight));
        let sum: Q = wv(&[1, 5, 12, 18]).charges().into_iter().sum();
        assert_eq!(sum, q(1, 1));
    }

    #[test]
    fn elements() {
        let k3 = wv(&[1, 5, 12, 18]);
        let zero = k3.element(0).unwrap();
        assert_eq!((zero.age, zero.size), (0, 0));
        let six = k3.element(6).unwrap();
        assert_eq!(six.theta_tilde(), vec![q(1, 6), q(5, 6), q(0, 1), q(0, 1)]);
        assert_eq!((six.age, six.size), (1, 2));
        let octic = wv(&[1, 1, 2, 2, 2]);
        let four = octic.element(4).unwrap();
        assert_eq!(four.theta_tilde(), vec![q(1, 2), q(1, 2), q(0, 1), q(0, 1), q(0, 1)]);
        assert_eq!((four.age, four.size), (1, 2));
        assert!(matches!(k3.element(36), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn age_pairing() {
        for w in [&[1u64, 5, 12, 18][..], &[1, 1, 2, 2, 2], &[1, 1, 2, 4, 5], &[2, 3, 5, 7]] {
            let v = wv(w);
            for e in v.elements() {
                let inv = v.element((v.degree() - e.l) % v.degree()).unwrap();
                assert_eq!(e.age + inv.age, e.size);
                assert_eq!(e.size, e.support().len() as u32);
            }
            assert_eq!(v.census().values().sum::<usize>() as u64, v.degree());
        }
    }

    #[test]
    fn census_examples() {
        let k3 = wv(&[1, 5, 12, 18]).census();
        assert_eq!(k3.get(&(4, 1)), Some(&1));
        assert_eq!(k3.get(&(4, 2)), Some(&10));
        assert_eq!(k3.get(&(4, 3)), Some(&1));
        let octic = wv(&[1, 1, 2, 2, 2]).census();
        let size5: Vec<usize> = (1..=4).map(|a| octic.get(&(5, a)).copied().unwrap_or(0)).collect();
        assert_eq!(size5, vec![1, 2, 2, 1]);
        let c = wv(&[1, 1, 2, 4, 5]).census();
        assert_eq!(c.iter().filter(|((s, _), _)| *s == 5).map(|(_, n)| n).sum::<usize>(), 12);
    }

    #[test]
    fn subgroups() {
        let k3 = wv(&[1, 5, 12, 18]);
        assert_eq!(k3.subgroup(k3.full_face()).unwrap().members.len(), 36);
        assert_eq!(k3.subgroup(FaceSet::from_indices(&[2, 3])).unwrap().members, vec![0]);
        assert_eq!(
            k3.subgroup(FaceSet::from_indices(&[0, 1])).unwrap().members,
            vec![0, 6, 12, 18, 24, 30]
        );
        assert!(k3.subgroup(FaceSet::from_indices(&[4])).is_err());
    }

    #[test]
    fn milnor_numbers() {
        assert_eq!(milnor_number(&wv(&[1, 1, 1, 1, 1])), q(1024, 1));
        assert_eq!(milnor_number(&wv(&[1, 1, 2, 2, 2])), q(1323, 1));
        assert_eq!(milnor_number(&wv(&[1, 5, 12, 18])), q(434, 1));
        assert_eq!(milnor_number_checked(&wv(&[1, 5, 12, 18])).unwrap(), q(434, 1));
    }

    #[test]
    fn poincare_examples() {
        let quintic = wv(&[1, 1, 1, 1, 1]);
        let p0 = poincare_series::<Q>(&quintic, 0).unwrap();
        let expected = FracPoly::<Q>::geometric(5, 1, 4).pow(5);
        assert_eq!(p0.to_frac_poly().unwrap(), expected);
        // size(l) = d+1 gives the empty product
        let p1 = poincare_series::<Q>(&quintic, 1).unwrap();
        assert_eq!(p1.to_frac_poly().unwrap(), FracPoly::one(5));
        let octic = wv(&[1, 1, 2, 2, 2]);
        let p4 = poincare_series::<Q>(&octic, 4).unwrap();
        assert_eq!(p4.to_frac_poly().unwrap(), FracPoly::<Q>::geometric(8, 2, 3).pow(3));
        // P(W, 1) is the Milnor number
        for w in [&[1u64, 5, 12, 18][..], &[1, 1, 2, 2, 2]] {
            let v = wv(w);
            let p = poincare_series::<Q>(&v, 0).unwrap().to_frac_poly().unwrap();
            assert_eq!(p.eval_at_one(), milnor_number(&v));
        }
    }

    #[test]
    fn lattice_count_examples() {
        let k3 = wv(&[1, 5, 12, 18]);
        let all = lattice_counts(&k3, k3.full_face(), 10).unwrap();
        assert!(all.iter().all(|&n| n == 0));
        // complement {1}: 5 u = 36 k
        let only5 = lattice_counts(&k3, FaceSet::from_indices(&[0, 2, 3]), 20).unwrap();
        for (k, n) in (1..=20).zip(only5) {
            assert_eq!(n, (k % 5 == 0) as u128);
        }
        let quintic = wv(&[1, 1, 1, 1, 1]);
        assert_eq!(lattice_counts(&quintic, FaceSet::empty(), 1).unwrap(), vec![1]);
    }
}
