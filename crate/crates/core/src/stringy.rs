//! The stringy E-function of the mirror `X^v` assembled from face
//! E-polynomials and lattice-point brackets.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::efunction::{t_minus_one_pow, EFunction};
use crate::error::{Error, Result};
use crate::exact::{rational_from_counts, BiPoly, FracPoly, FracRational, RationalT};
use crate::face::face_e;
use crate::scalar::{from_u128, to_i64, Scalar};
use crate::weights::{lattice_counts, FaceSet, WeightVector};

const NO_GUARD: usize = usize::MAX;
static GUARD: AtomicUsize = AtomicUsize::new(NO_GUARD);

/// Overrides the guard band used when reconstructing brackets from lattice
/// counts (`None` restores the default, the numerator degree bound).
pub fn set_guard_band(guard: Option<usize>) {
    GUARD.store(guard.unwrap_or(NO_GUARD), Ordering::Relaxed);
}

fn guard_band() -> Option<usize> {
    match GUARD.load(Ordering::Relaxed) {
        NO_GUARD => None,
        g => Some(g),
    }
}

fn sign<T: Scalar>(n: usize) -> T {
    if n % 2 == 0 {
        T::one()
    } else {
        -T::one()
    }
}

/// Denominator exponents `m_j = w_j / gcd(w_j, w)` for `j` outside the face.
fn bracket_denominator(wv: &WeightVector, face: FaceSet) -> Vec<(u64, u32)> {
    face.complement(wv.len())
        .indices()
        .map(|j| {
            let wj = wv.weights()[j];
            (wj / wj.gcd(&wv.degree()), 1)
        })
        .collect()
}

/// `[prod_{j not in J} 1 / ((uv)^{q_j} - 1)]_int` as a function of `t = uv`.
///
/// Its expansion at `t = infinity` is `sum_k N_J(k) t^{-k}`; the counts are
/// taken up to the certified degree plus a guard band and the rational
/// function in `x = 1/t` rebuilt, then `x` is replaced by `1/t`.
pub fn bracket<T: Scalar>(wv: &WeightVector, face: FaceSet) -> Result<RationalT<T>> {
    bracket_with_guard(wv, face, guard_band())
}

/// [`bracket`] with an explicit guard band (`None`: the numerator degree bound).
pub fn bracket_with_guard<T: Scalar>(
    wv: &WeightVector,
    face: FaceSet,
    guard: Option<usize>,
) -> Result<RationalT<T>> {
    wv.check_face(face)?;
    if face == wv.full_face() {
        return Ok(RationalT::one());
    }
    let den = bracket_denominator(wv, face);
    let degree: usize = den.iter().map(|&(m, _)| m as usize).sum();
    let guard = guard.unwrap_or(degree);
    let counts: Vec<T> = lattice_counts(wv, face, degree + 1 + guard)?
        .into_iter()
        .map(from_u128)
        .collect();
    let in_x = rational_from_counts(&counts, &den, Some(guard))?;
    let out = in_x.invert_variable();
    if cfg!(debug_assertions) && projection_is_cheap(wv, face) {
        assert_eq!(out, bracket_by_projection(wv, face), "bracket routes disagree");
    }
    Ok(out)
}

fn projection_is_cheap(wv: &WeightVector, face: FaceSet) -> bool {
    let w = wv.degree();
    let work: u64 = face
        .complement(wv.len())
        .indices()
        .map(|j| w / wv.weights()[j].gcd(&w))
        .product();
    work <= 20_000
}

/// The same bracket computed by applying the projector to the product of
/// `-1 / (1 - s^{w_j})`, `s = t^{1/w}`. Independent of lattice counting.
pub fn bracket_by_projection<T: Scalar>(wv: &WeightVector, face: FaceSet) -> RationalT<T> {
    let w = wv.degree();
    let mut acc = FracRational::from_frac_poly(FracPoly::one(w));
    for j in face.complement(wv.len()).indices() {
        let f = FracRational::inv_one_minus(w, wv.weights()[j]).mul_frac_poly(&FracPoly::monomial(w, 0, -T::one()));
        acc = &acc * &f;
    }
    acc.project()
}

/// One summand `face_e(J) * (uv - 1)^{d+1-|J|} * bracket(J)`.
#[derive(Clone, Debug)]
pub struct StringyTerm<T: Scalar> {
    pub face: FaceSet,
    pub face_e: BiPoly<T>,
    pub bracket: RationalT<T>,
    pub value: EFunction<T>,
}

fn faces_of_size_two(wv: &WeightVector) -> Vec<FaceSet> {
    FaceSet::all(wv.len()).filter(|f| f.len() >= 2).collect()
}

/// All summands, in increasing face-mask order.
pub fn stringy_terms<T: Scalar>(wv: &WeightVector) -> Result<Vec<StringyTerm<T>>> {
    wv.require_ip()?;
    let d1 = wv.len() as u32;
    faces_of_size_two(wv)
        .into_par_iter()
        .map(|face| {
            let fe = face_e::<T>(wv, face)?.value;
            let bracket = bracket::<T>(wv, face)?;
            let factor = &t_minus_one_pow::<T>(d1 - face.len() as u32) * &bracket;
            let value = EFunction::from_bipoly(&fe).mul_rational(&factor);
            Ok(StringyTerm {
                face,
                face_e: fe,
                bracket,
                value,
            })
        })
        .collect()
}

/// `E_str(X^v; u, v)`, summed over all faces with at least two vertices and
/// reduced once at the end.
pub fn stringy_e<T: Scalar>(wv: &WeightVector) -> Result<EFunction<T>> {
    Ok(stringy_terms::<T>(wv)?.into_iter().map(|t| t.value).sum())
}

/// Brackets for every face with at least two vertices, keyed by face.
pub fn all_brackets<T: Scalar>(wv: &WeightVector) -> Result<BTreeMap<FaceSet, RationalT<T>>> {
    faces_of_size_two(wv)
        .into_par_iter()
        .map(|f| Ok((f, bracket::<T>(wv, f)?)))
        .collect()
}

fn per_l_from<T: Scalar>(
    wv: &WeightVector,
    l: u64,
    brackets: &BTreeMap<FaceSet, RationalT<T>>,
) -> Result<EFunction<T>> {
    let e = wv.element(l)?;
    let d1 = wv.len() as u32;
    let mut sum = RationalT::zero();
    if l == 0 {
        // ((t-1)^{|J|-1} - (-1)^{|J|-1}) / t * (t-1)^{d+1-|J|} * bracket(J)
        for (face, b) in brackets {
            let n = face.len() as u32;
            let head = &t_minus_one_pow::<T>(n - 1) - &RationalT::constant(sign(n as usize - 1));
            let term = &(&head * &t_minus_one_pow(d1 - n)) * b;
            sum = &sum + &term.mul_monomial(-1);
        }
        return Ok(EFunction::from_rational(sum));
    }
    let support = e.support();
    for (face, b) in brackets.iter().filter(|(f, _)| support.is_subset_of(**f)) {
        let n = face.len();
        let term = (&t_minus_one_pow::<T>(d1 - n as u32) * b).scale(&sign(n));
        sum = &sum + &term;
    }
    Ok(EFunction::monomial(
        e.age as i64 - 1,
        (e.size - e.age) as i64 - 1,
        sum,
    ))
}

/// The `l`-th piece `E^{(l)}` of the decomposition `E_str = sum_l E^{(l)}`.
pub fn stringy_e_per_l<T: Scalar>(wv: &WeightVector, l: u64) -> Result<EFunction<T>> {
    wv.require_ip()?;
    let e = wv.element(l)?;
    let support = e.support();
    let brackets = faces_of_size_two(wv)
        .into_iter()
        .filter(|f| l == 0 || support.is_subset_of(*f))
        .map(|f| Ok((f, bracket::<T>(wv, f)?)))
        .collect::<Result<_>>()?;
    per_l_from(wv, l, &brackets)
}

/// Every piece `E^{(l)}`, `l = 0..w`.
pub fn stringy_decomposition<T: Scalar>(wv: &WeightVector) -> Result<Vec<EFunction<T>>> {
    wv.require_ip()?;
    let brackets = all_brackets::<T>(wv)?;
    (0..wv.degree())
        .into_par_iter()
        .map(|l| per_l_from(wv, l, &brackets))
        .collect()
}

/// `E_str(X^v; 1, 1)`, the sum of the limits of all terms.
pub fn stringy_euler<T: Scalar>(wv: &WeightVector) -> Result<T> {
    stringy_e::<T>(wv)?.value_at_one()
}

/// Value at `u = v = 1` of the untwisted piece `E^{(0)}`.
pub fn untwisted_euler<T: Scalar>(wv: &WeightVector) -> Result<T> {
    stringy_e_per_l::<T>(wv, 0)?.value_at_one()
}

pub fn is_polynomial<T: Scalar>(e: &EFunction<T>) -> bool {
    e.is_polynomial()
}

pub fn to_polynomial<T: Scalar>(e: &EFunction<T>) -> Result<BiPoly<T>> {
    e.to_bipoly()
}

/// Hodge numbers `h^{p,q}`, `0 <= p, q <= dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeTable {
    pub dim: u32,
    pub grid: Vec<Vec<u64>>,
}

impl HodgeTable {
    fn from_signed<T: Scalar>(p: &BiPoly<T>, dim: u32, signed: bool) -> Result<Self> {
        let n = dim as usize + 1;
        let mut grid = vec![vec![0u64; n]; n];
        for ((a, b), c) in p.terms() {
            if a > dim || b > dim {
                return Err(Error::DimensionMismatch { p: a, q: b, dim });
            }
            let c = if signed && (a + b) % 2 == 1 { -c.clone() } else { c.clone() };
            let value = to_i64(&c).ok_or_else(|| Error::NonIntegerCoefficient {
                p: a,
                q: b,
                coeff: c.to_string(),
            })?;
            if value < 0 {
                return Err(Error::SignPatternViolation {
                    p: a,
                    q: b,
                    coeff: c.to_string(),
                });
            }
            grid[a as usize][b as usize] = value as u64;
        }
        Ok(HodgeTable { dim, grid })
    }

    /// From `E(u, v) = sum (-1)^{p+q} h^{p,q} u^p v^q`.
    pub fn from_e_polynomial<T: Scalar>(p: &BiPoly<T>, dim: u32) -> Result<Self> {
        Self::from_signed(p, dim, true)
    }

    /// From a Poincare polynomial `sum h^{p,q} t^p tbar^q`.
    pub fn from_poincare<T: Scalar>(p: &BiPoly<T>, dim: u32) -> Result<Self> {
        Self::from_signed(p, dim, false)
    }

    pub fn get(&self, p: u32, q: u32) -> u64 {
        self.grid
            .get(p as usize)
            .and_then(|row| row.get(q as usize))
            .copied()
            .unwrap_or(0)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.grid.len();
        (0..n).all(|p| (0..n).all(|q| self.grid[p][q] == self.grid[q][p]))
    }

    /// `h^{p,q} = h^{dim-p, dim-q}`.
    pub fn is_poincare_dual(&self) -> bool {
        let n = self.grid.len();
        (0..n).all(|p| (0..n).all(|q| self.grid[p][q] == self.grid[n - 1 - p][n - 1 - q]))
    }

    /// The table with `p` replaced by `dim - p`.
    pub fn mirror(&self) -> Self {
        let mut grid = self.grid.clone();
        grid.reverse();
        HodgeTable { dim: self.dim, grid }
    }

    pub fn to_e_polynomial<T: Scalar>(&self) -> BiPoly<T> {
        let mut out = BiPoly::zero();
        for (p, row) in self.grid.iter().enumerate() {
            for (q, &h) in row.iter().enumerate() {
                let s = if (p + q) % 2 == 0 { 1 } else { -1 };
                out.add_term(p as u32, q as u32, T::int(s * h as i64));
            }
        }
        out
    }

    pub fn euler(&self) -> i64 {
        self.grid
            .iter()
            .enumerate()
            .flat_map(|(p, row)| {
                row.iter()
                    .enumerate()
                    .map(move |(q, &h)| if (p + q) % 2 == 0 { h as i64 } else { -(h as i64) })
            })
            .sum()
    }
}

pub fn hodge_table<T: Scalar>(p: &BiPoly<T>, dim: u32) -> Result<HodgeTable> {
    HodgeTable::from_e_polynomial(p, dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Poly;
    use crate::Q;

    fn wv(w: &[u64]) -> WeightVector {
        WeightVector::new(w).unwrap()
    }

    fn int(x: i64) -> Q {
        Q::from_integer(x.into())
    }

    fn k3_poly() -> BiPoly<Q> {
        BiPoly::from_ints(&[((0, 0), 1), ((2, 0), 1), ((1, 1), 20), ((0, 2), 1), ((2, 2), 1)])
    }

    #[test]
    fn bracket_examples() {
        let k3 = wv(&[1, 5, 12, 18]);
        assert_eq!(bracket::<Q>(&k3, k3.full_face()).unwrap(), RationalT::one());
        // complement {5}: 1/(t^5 - 1)
        let b = bracket::<Q>(&k3, FaceSet::from_indices(&[0, 2, 3])).unwrap();
        let expected = RationalT::from_factored(Poly::from_ints(&[-1]), 0, &[(5, 1)]);
        assert_eq!(b, expected);
        let quintic = wv(&[1, 1, 1, 1, 1]);
        let b = bracket::<Q>(&quintic, FaceSet::from_indices(&[0, 1, 2, 3])).unwrap();
        assert_eq!(b, RationalT::from_factored(Poly::from_ints(&[-1]), 0, &[(1, 1)]));
    }

    #[test]
    fn bracket_routes_agree() {
        for w in [&[1u64, 5, 12, 18][..], &[1, 1, 2, 4, 5], &[1, 1, 2, 2, 2]] {
            let v = wv(w);
            for face in FaceSet::all(v.len()) {
                assert_eq!(
                    bracket::<Q>(&v, face).unwrap(),
                    bracket_by_projection::<Q>(&v, face),
                    "{w:?} {face:?}"
                );
            }
        }
    }

    #[test]
    fn k3_stringy() {
        let k3 = wv(&[1, 5, 12, 18]);
        let e = stringy_e::<Q>(&k3).unwrap();
        assert_eq!(e.to_bipoly().unwrap(), k3_poly());
        assert_eq!(stringy_euler::<Q>(&k3).unwrap(), int(24));
        let total: EFunction<Q> = stringy_decomposition::<Q>(&k3).unwrap().into_iter().sum();
        assert_eq!(total, e);
    }

    #[test]
    fn k3_terms_through_weight_five() {
        let k3 = wv(&[1, 5, 12, 18]);
        let sub: EFunction<Q> = stringy_terms::<Q>(&k3)
            .unwrap()
            .into_iter()
            .filter(|t| !t.face.contains(1))
            .map(|t| t.value)
            .sum();
        assert_eq!(sub.to_bipoly().unwrap(), BiPoly::from_ints(&[((0, 0), 1), ((1, 1), 7)]));
    }

    #[test]
    fn non_mirror_example() {
        let v = wv(&[1, 1, 2, 4, 5]);
        let e = stringy_e::<Q>(&v).unwrap();
        assert!(!is_polynomial(&e));
        assert!(to_polynomial(&e).is_err());
        assert_eq!(untwisted_euler::<Q>(&v).unwrap(), Q::new(1092.into(), 5.into()));
    }

    #[test]
    fn requires_ip() {
        let v = wv(&[1, 2, 5]);
        assert_eq!(stringy_e::<Q>(&v), Err(Error::NotIP(vec![1, 2, 5])));
    }

    #[test]
    fn octic_euler() {
        assert_eq!(stringy_euler::<Q>(&wv(&[1, 1, 2, 2, 2])).unwrap(), int(168));
    }

    #[test]
    fn hodge_tables() {
        let t = hodge_table(&k3_poly(), 2).unwrap();
        assert_eq!(t.get(1, 1), 20);
        assert_eq!((t.get(0, 0), t.get(2, 2), t.get(2, 0), t.get(0, 2)), (1, 1, 1, 1));
        assert!(t.is_symmetric() && t.is_poincare_dual());
        assert_eq!(t.euler(), 24);
        assert_eq!(t.to_e_polynomial::<Q>(), k3_poly());
        let one = hodge_table(&BiPoly::<Q>::one(), 0).unwrap();
        assert_eq!(one.grid, vec![vec![1]]);
        let bad = BiPoly::<Q>::from_ints(&[((1, 0), 1)]);
        assert!(matches!(hodge_table(&bad, 2), Err(Error::SignPatternViolation { .. })));
        assert!(matches!(hodge_table(&bad, 0), Err(Error::DimensionMismatch { .. })));
    }
}
