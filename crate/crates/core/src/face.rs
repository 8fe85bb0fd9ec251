//! E-polynomials of the affine face hypersurfaces `Z_{f, Delta_J}`.

use crate::error::{Error, Result};
use crate::exact::BiPoly;
use crate::scalar::Scalar;
use crate::weights::{FaceSet, WeightVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceEPolynomial<T: Scalar> {
    pub face: FaceSet,
    pub value: BiPoly<T>,
}

/// `(uv - 1)^n` as a polynomial in `u, v`.
pub(crate) fn uv_minus_one_pow<T: Scalar>(n: u32) -> BiPoly<T> {
    BiPoly::from_ints(&[((1, 1), 1), ((0, 0), -1)]).pow(n)
}

fn sign<T: Scalar>(n: usize) -> T {
    if n % 2 == 0 {
        T::one()
    } else {
        -T::one()
    }
}

/// `((uv-1)^{|J|-1} - (-1)^{|J|-1}) / uv
///   + (-1)^{|J|} / uv * sum_{0 != l in G_J} u^{age(l)} v^{size(l) - age(l)}`.
pub fn face_e<T: Scalar>(wv: &WeightVector, face: FaceSet) -> Result<FaceEPolynomial<T>> {
    wv.check_face(face)?;
    let n = face.len();
    if n < 2 {
        return Err(Error::SubsetTooSmall(n));
    }
    let mut num = &uv_minus_one_pow::<T>(n as u32 - 1) - &BiPoly::monomial(0, 0, sign(n - 1));
    let group = wv.subgroup(face)?;
    for &l in group.members.iter().filter(|&&l| l != 0) {
        let e = wv.element(l)?;
        num.add_term(e.age, e.size - e.age, sign(n));
    }
    Ok(FaceEPolynomial {
        face,
        value: num.div_monomial(1, 1)?,
    })
}

/// `psi_i = #{ l : age(l) = i }` for `i = 0..=d`.
pub fn psi(wv: &WeightVector) -> Vec<usize> {
    let mut out = vec![0; wv.len()];
    for e in wv.elements() {
        out[e.age as usize] += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    fn wv(w: &[u64]) -> WeightVector {
        WeightVector::new(w).unwrap()
    }

    #[test]
    fn two_vertex_face_is_one() {
        let k3 = wv(&[1, 5, 12, 18]);
        let f = face_e::<Q>(&k3, FaceSet::from_indices(&[2, 3])).unwrap();
        assert_eq!(f.value, BiPoly::one());
    }

    #[test]
    fn k3_full_face() {
        let k3 = wv(&[1, 5, 12, 18]);
        let f = face_e::<Q>(&k3, k3.full_face()).unwrap();
        let expected = BiPoly::from_ints(&[
            ((2, 2), 1),
            ((2, 0), 1),
            ((1, 1), 7),
            ((0, 2), 1),
            ((1, 0), 9),
            ((0, 1), 9),
            ((0, 0), 8),
        ]);
        assert_eq!(f.value, expected);
    }

    #[test]
    fn k3_edge_counts_group() {
        // complement weights 12, 18: G_J = {0, 6, ..., 30}, each twisted
        // element contributes 1
        let k3 = wv(&[1, 5, 12, 18]);
        let face = FaceSet::from_indices(&[0, 1]);
        let f = face_e::<Q>(&k3, face).unwrap();
        assert_eq!(f.value, BiPoly::from_ints(&[((0, 0), 6)]));
    }

    #[test]
    fn small_faces_rejected() {
        let k3 = wv(&[1, 5, 12, 18]);
        assert_eq!(
            face_e::<Q>(&k3, FaceSet::from_indices(&[1])),
            Err(Error::SubsetTooSmall(1))
        );
    }

    #[test]
    fn psi_counts() {
        assert_eq!(psi(&wv(&[1, 1, 1, 1, 1])), vec![1, 1, 1, 1, 1]);
        let k3 = psi(&wv(&[1, 5, 12, 18]));
        assert_eq!(k3.iter().sum::<usize>(), 36);
        assert_eq!(k3[0], 1);
    }

    #[test]
    fn v_equals_one_specialisation() {
        // E(Z; u, 1) = ((u-1)^d - (-1)^d)/u + sum_{i>=1} (-1)^{d+1} psi_i u^{i-1}
        for w in [&[1u64, 5, 12, 18][..], &[1, 1, 2, 2, 2], &[1, 1, 1, 1, 1]] {
            let v = wv(w);
            let d = v.dim() as i64;
            let f = face_e::<Q>(&v, v.full_face()).unwrap().value;
            let ps = psi(&v);
            for u in [2i64, 3, -5] {
                let uq = Q::from_integer(u.into());
                let lhs = f.eval(&uq, &Q::from_integer(1.into()));
                let mut rhs = Q::new(((u - 1).pow(d as u32) - (-1i64).pow(d as u32)).into(), u.into());
                for (i, &p) in ps.iter().enumerate().skip(1) {
                    let s = if (d + 1) % 2 == 0 { 1 } else { -1 };
                    rhs += Q::from_integer((s * p as i64 * u.pow(i as u32 - 1)).into());
                }
                assert_eq!(lhs, rhs, "{w:?} at u = {u}");
            }
        }
    }
}
