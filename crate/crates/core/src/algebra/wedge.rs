use super::{suffix_parity, CodeVector, Extensor};
use crate::error::{Error, Result};
use crate::ring::Ring;

/// Above this dimension the characteristic-2 product switches from submask
/// enumeration (`3^D`) to ranked transforms (`2^D * D^2`).
const RANKED_THRESHOLD: u32 = 10;

fn same_dims<E>(x: &Extensor<E>, y: &Extensor<E>) -> Result<()> {
    if x.dims != y.dims {
        Err(Error::DimensionMismatch(x.dims, y.dims))
    } else {
        Ok(())
    }
}

pub fn ext_add<R: Ring>(ring: &R, x: &Extensor<R::Elem>, y: &Extensor<R::Elem>) -> Result<Extensor<R::Elem>> {
    same_dims(x, y)?;
    let mut out = x.clone();
    out.add_assign(ring, y);
    Ok(out)
}

pub fn ext_sub<R: Ring>(ring: &R, x: &Extensor<R::Elem>, y: &Extensor<R::Elem>) -> Result<Extensor<R::Elem>> {
    same_dims(x, y)?;
    let mut out = x.clone();
    out.sub_assign(ring, y);
    Ok(out)
}

/// `acc += c * x`
pub fn add_scaled_assign<R: Ring>(ring: &R, acc: &mut Extensor<R::Elem>, x: &Extensor<R::Elem>, c: &R::Elem) {
    assert_eq!(acc.dims, x.dims, "extensor dimension mismatch");
    if ring.is_zero(c) {
        return;
    }
    for (a, b) in acc.coeffs.iter_mut().zip(&x.coeffs) {
        if !ring.is_zero(b) {
            ring.mul_add_assign(a, b, c);
        }
    }
}

/// `x ^ v` for a degree-one `v`.
pub fn skew_mul<R: Ring>(ring: &R, x: &Extensor<R::Elem>, v: &CodeVector<R::Elem>) -> Result<Extensor<R::Elem>> {
    if x.dims != v.dims() {
        return Err(Error::DimensionMismatch(x.dims, v.dims()));
    }
    let mut out = Extensor::zero_unchecked(ring, x.dims);
    skew_mul_acc(ring, &mut out, x, v);
    Ok(out)
}

/// `acc += x ^ v`. Moving `e_j` past the generators of `I` above `j` costs
/// one sign flip each.
pub fn skew_mul_acc<R: Ring>(ring: &R, acc: &mut Extensor<R::Elem>, x: &Extensor<R::Elem>, v: &CodeVector<R::Elem>) {
    assert_eq!(acc.dims, x.dims, "extensor dimension mismatch");
    assert_eq!(x.dims, v.dims(), "code vector dimension mismatch");
    let entries: Vec<(usize, &R::Elem)> = v
        .entries()
        .iter()
        .enumerate()
        .filter(|(_, c)| !ring.is_zero(c))
        .collect();
    if entries.is_empty() {
        return;
    }
    for (i, xi) in x.coeffs.iter().enumerate() {
        if ring.is_zero(xi) {
            continue;
        }
        for &(j, vj) in &entries {
            let bit = 1usize << j;
            if i & bit != 0 {
                continue;
            }
            let target = &mut acc.coeffs[i | bit];
            if (i >> (j + 1)).count_ones() & 1 == 1 {
                ring.mul_sub_assign(target, xi, vj);
            } else {
                ring.mul_add_assign(target, xi, vj);
            }
        }
    }
}

/// Signed product by direct expansion over disjoint mask pairs. Cost is
/// proportional to the nonzero coefficients of `x`, so a sparse left
/// operand is cheap.
pub fn wedge_naive<R: Ring>(ring: &R, x: &Extensor<R::Elem>, y: &Extensor<R::Elem>) -> Result<Extensor<R::Elem>> {
    same_dims(x, y)?;
    let mut out = Extensor::zero_unchecked(ring, x.dims);
    wedge_naive_acc(ring, &mut out, x, y);
    Ok(out)
}

/// `acc += x ^ y` by direct expansion.
pub fn wedge_naive_acc<R: Ring>(ring: &R, acc: &mut Extensor<R::Elem>, x: &Extensor<R::Elem>, y: &Extensor<R::Elem>) {
    assert_eq!(x.dims, y.dims, "extensor dimension mismatch");
    assert_eq!(acc.dims, x.dims, "extensor dimension mismatch");
    let full = (1usize << x.dims) - 1;
    let y_support: Vec<usize> = y.support(ring).collect();
    if y_support.is_empty() {
        return;
    }
    for (i, xi) in x.coeffs.iter().enumerate() {
        if ring.is_zero(xi) {
            continue;
        }
        let comp = full ^ i;
        let parity = suffix_parity(i);
        let mut term = |j: usize, yj: &R::Elem| {
            let target = &mut acc.coeffs[i | j];
            if (j & parity).count_ones() & 1 == 1 {
                ring.mul_sub_assign(target, xi, yj);
            } else {
                ring.mul_add_assign(target, xi, yj);
            }
        };
        if (y_support.len() as u64) < (1u64 << comp.count_ones()) {
            for &j in &y_support {
                if j & i == 0 {
                    term(j, &y.coeffs[j]);
                }
            }
        } else {
            let mut j = comp;
            loop {
                let yj = &y.coeffs[j];
                if !ring.is_zero(yj) {
                    term(j, yj);
                }
                if j == 0 {
                    break;
                }
                j = (j - 1) & comp;
            }
        }
    }
}

/// Characteristic-2 product as a subset convolution, evaluated with ranked
/// zeta and Moebius transforms.
pub fn wedge_char2<R: Ring>(ring: &R, x: &Extensor<R::Elem>, y: &Extensor<R::Elem>) -> Result<Extensor<R::Elem>> {
    if !ring.is_char2() {
        return Err(Error::NotCharacteristicTwo);
    }
    same_dims(x, y)?;
    let d = x.dims as usize;
    let n = 1usize << d;
    let fx = ranked_zeta(ring, x);
    let fy = ranked_zeta(ring, y);
    let mut h = vec![ring.zero(); (d + 1) * n];
    for s in 0..n {
        let pop = s.count_ones() as usize;
        for a in 0..=pop {
            let xa = &fx[a * n + s];
            if ring.is_zero(xa) {
                continue;
            }
            for b in 0..=(d - a) {
                let yb = &fy[b * n + s];
                if !ring.is_zero(yb) {
                    ring.mul_add_assign(&mut h[(a + b) * n + s], xa, yb);
                }
            }
        }
    }
    for r in 0..=d {
        let layer = &mut h[r * n..(r + 1) * n];
        for bit in 0..d {
            let step = 1usize << bit;
            for s in 0..n {
                if s & step != 0 {
                    let (lo, hi) = layer.split_at_mut(s);
                    ring.sub_assign(&mut hi[0], &lo[s ^ step]);
                }
            }
        }
    }
    let coeffs = (0..n)
        .map(|s| h[s.count_ones() as usize * n + s].clone())
        .collect();
    Ok(Extensor { dims: x.dims, coeffs })
}

fn ranked_zeta<R: Ring>(ring: &R, x: &Extensor<R::Elem>) -> Vec<R::Elem> {
    let d = x.dims as usize;
    let n = 1usize << d;
    let mut f = vec![ring.zero(); (d + 1) * n];
    for (s, c) in x.coeffs.iter().enumerate() {
        f[s.count_ones() as usize * n + s] = c.clone();
    }
    for r in 0..=d {
        let layer = &mut f[r * n..(r + 1) * n];
        for bit in 0..d {
            let step = 1usize << bit;
            for s in 0..n {
                if s & step != 0 {
                    let (lo, hi) = layer.split_at_mut(s);
                    ring.add_assign(&mut hi[0], &lo[s ^ step]);
                }
            }
        }
    }
    f
}

/// The product `x ^ y` with the cheapest exact method for the ring.
pub fn wedge<R: Ring>(ring: &R, x: &Extensor<R::Elem>, y: &Extensor<R::Elem>) -> Result<Extensor<R::Elem>> {
    if ring.is_char2() && x.dims > RANKED_THRESHOLD {
        wedge_char2(ring, x, y)
    } else {
        wedge_naive(ring, x, y)
    }
}

/// `acc += x ^ y`
pub fn wedge_acc<R: Ring>(ring: &R, acc: &mut Extensor<R::Elem>, x: &Extensor<R::Elem>, y: &Extensor<R::Elem>) {
    if ring.is_char2() && x.dims > RANKED_THRESHOLD {
        let p = wedge_char2(ring, x, y).expect("checked characteristic");
        acc.add_assign(ring, &p);
    } else {
        wedge_naive_acc(ring, acc, x, y);
    }
}

/// `v_1 ^ ... ^ v_m`; for `m = D` this is `det(v_1 | ... | v_D) e_[D]`.
pub fn wedge_vectors<R: Ring>(ring: &R, vs: &[CodeVector<R::Elem>]) -> Result<Extensor<R::Elem>> {
    let dims = match vs.first() {
        Some(v) => v.dims(),
        None => return Err(Error::InvalidParameter("empty vector list".into())),
    };
    let mut acc = Extensor::one(ring, dims)?;
    for v in vs {
        acc = skew_mul(ring, &acc, v)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{BigInteger, Gf2m, Gf2mElement, Integers};
    use proptest::prelude::*;

    fn int(v: i64) -> BigInteger {
        BigInteger::from(v)
    }

    fn cv(entries: &[i64]) -> CodeVector<BigInteger> {
        CodeVector::new(entries.iter().map(|&v| int(v)).collect())
    }

    /// Quadratic reference: every pair of masks, sign by counting inversions.
    fn product_by_pairs(x: &Extensor<BigInteger>, y: &Extensor<BigInteger>) -> Extensor<BigInteger> {
        let z = Integers;
        let mut out = Extensor::zero(&z, x.dims()).unwrap();
        for i in 0..x.len() {
            for j in 0..y.len() {
                if i & j != 0 {
                    continue;
                }
                let mut inversions = 0;
                for a in 0..x.dims() {
                    for b in 0..a {
                        if i >> a & 1 == 1 && j >> b & 1 == 1 {
                            inversions += 1;
                        }
                    }
                }
                let p = z.mul(x.coeff(i), y.coeff(j));
                let p = if inversions % 2 == 1 { -p } else { p };
                z.add_assign(&mut out.coeffs_mut()[i | j], &p);
            }
        }
        out
    }

    #[test]
    fn worked_example_three_factor_expansion() {
        // e_1 ^ (e_5 - e_2 + 3) ^ e_3 = -e_{1,3,5} - e_{1,2,3} + 3 e_{1,3}
        let z = Integers;
        let e1 = Extensor::basis(&z, 5, 0b00001).unwrap();
        let mid = Extensor::from_terms(&z, 5, &[(0b10000, int(1)), (0b00010, int(-1)), (0, int(3))]).unwrap();
        let e3 = Extensor::basis(&z, 5, 0b00100).unwrap();
        let got = wedge_naive(&z, &wedge_naive(&z, &e1, &mid).unwrap(), &e3).unwrap();
        let want =
            Extensor::from_terms(&z, 5, &[(0b10101, int(-1)), (0b00111, int(-1)), (0b00101, int(3))]).unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn worked_example_square_of_mixed_extensor() {
        // x = e_1 + e_2 ^ e_3, x ^ x = 2 e_1 ^ e_2 ^ e_3
        let z = Integers;
        let x = Extensor::from_terms(&z, 3, &[(0b001, int(1)), (0b110, int(1))]).unwrap();
        let got = wedge_naive(&z, &x, &x).unwrap();
        assert_eq!(got, Extensor::from_terms(&z, 3, &[(0b111, int(2))]).unwrap());
    }

    #[test]
    fn vector_squares_vanish() {
        let z = Integers;
        let v = cv(&[3, -1, 4, 1]);
        let x = v.to_extensor(&z);
        assert!(skew_mul(&z, &x, &v).unwrap().is_zero(&z));
        let one = Extensor::one(&z, 4).unwrap();
        assert_eq!(skew_mul(&z, &one, &v).unwrap(), x);
    }

    #[test]
    fn char2_rejects_integers_and_handles_units() {
        let z = Integers;
        let x = Extensor::one(&z, 2).unwrap();
        assert_eq!(wedge_char2(&z, &x, &x), Err(Error::NotCharacteristicTwo));
        let f = Gf2m::new(8).unwrap();
        let e1 = Extensor::basis(&f, 3, 0b001).unwrap();
        let e2 = Extensor::basis(&f, 3, 0b010).unwrap();
        assert_eq!(wedge_char2(&f, &e1, &e2).unwrap(), Extensor::basis(&f, 3, 0b011).unwrap());
        let one = Extensor::one(&f, 3).unwrap();
        let y = Extensor::from_terms(&f, 3, &[(0b101, Gf2mElement(7)), (0, Gf2mElement(3))]).unwrap();
        assert_eq!(wedge_char2(&f, &y, &one).unwrap(), y);
    }

    #[test]
    fn wedge_vectors_small_determinants() {
        let z = Integers;
        let id = wedge_vectors(&z, &[cv(&[1, 0]), cv(&[0, 1])]).unwrap();
        assert_eq!(id, Extensor::basis(&z, 2, 0b11).unwrap());
        let m = wedge_vectors(&z, &[cv(&[1, 1]), cv(&[1, 2])]).unwrap();
        assert_eq!(*m.top(), int(1));
        let rep = wedge_vectors(&z, &[cv(&[1, 2, 3]), cv(&[0, 1, 0]), cv(&[1, 2, 3])]).unwrap();
        assert!(rep.is_zero(&z));
        assert!(wedge_vectors(&z, &[cv(&[1]), cv(&[1, 2])]).is_err());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let z = Integers;
        let a = Extensor::one(&z, 2).unwrap();
        let b = Extensor::one(&z, 3).unwrap();
        assert_eq!(ext_add(&z, &a, &b), Err(Error::DimensionMismatch(2, 3)));
        assert!(wedge_naive(&z, &a, &b).is_err());
        assert!(skew_mul(&z, &a, &cv(&[1, 2, 3])).is_err());
    }

    fn int_extensor(dims: u32) -> impl Strategy<Value = Extensor<BigInteger>> {
        proptest::collection::vec(-3i64..=3, 1usize << dims)
            .prop_map(move |c| Extensor::from_coeffs(dims, c.into_iter().map(int).collect()).unwrap())
    }

    fn field_extensor(dims: u32) -> impl Strategy<Value = Extensor<Gf2mElement>> {
        proptest::collection::vec(0u64..256, 1usize << dims)
            .prop_map(move |c| Extensor::from_coeffs(dims, c.into_iter().map(Gf2mElement).collect()).unwrap())
    }

    fn homogeneous(x: Extensor<BigInteger>, degree: u32) -> Extensor<BigInteger> {
        let dims = x.dims();
        let coeffs = x
            .into_coeffs()
            .into_iter()
            .enumerate()
            .map(|(m, c)| if m.count_ones() == degree { c } else { int(0) })
            .collect();
        Extensor::from_coeffs(dims, coeffs).unwrap()
    }

    proptest! {
        #[test]
        fn naive_matches_pairwise_expansion(x in int_extensor(5), y in int_extensor(5)) {
            prop_assert_eq!(wedge_naive(&Integers, &x, &y).unwrap(), product_by_pairs(&x, &y));
        }

        #[test]
        fn ranked_matches_naive_in_char2(x in field_extensor(7), y in field_extensor(7)) {
            let f = Gf2m::new(8).unwrap();
            prop_assert_eq!(wedge_char2(&f, &x, &y).unwrap(), wedge_naive(&f, &x, &y).unwrap());
        }

        #[test]
        fn associativity_integers(x in int_extensor(4), y in int_extensor(4), w in int_extensor(4)) {
            let z = Integers;
            let left = wedge_naive(&z, &wedge_naive(&z, &x, &y).unwrap(), &w).unwrap();
            let right = wedge_naive(&z, &x, &wedge_naive(&z, &y, &w).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn associativity_field(x in field_extensor(5), y in field_extensor(5), w in field_extensor(5)) {
            let f = Gf2m::new(8).unwrap();
            let left = wedge_char2(&f, &wedge_char2(&f, &x, &y).unwrap(), &w).unwrap();
            let right = wedge_char2(&f, &x, &wedge_char2(&f, &y, &w).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn even_extensors_are_central(x in int_extensor(5), y in int_extensor(5)) {
            let z = Integers;
            let coeffs = x.into_coeffs().into_iter().enumerate()
                .map(|(m, c)| if m.count_ones() % 2 == 0 { c } else { int(0) }).collect();
            let even = Extensor::from_coeffs(5, coeffs).unwrap();
            prop_assert_eq!(wedge_naive(&z, &even, &y).unwrap(), wedge_naive(&z, &y, &even).unwrap());
        }

        #[test]
        fn degrees_add(x in int_extensor(6), y in int_extensor(6), a in 0u32..=3, b in 0u32..=3) {
            let z = Integers;
            let p = wedge_naive(&z, &homogeneous(x, a), &homogeneous(y, b)).unwrap();
            prop_assert!(p.is_homogeneous(&z, a + b));
        }

        #[test]
        fn vectors_anticommute(u in proptest::collection::vec(-5i64..=5, 4), v in proptest::collection::vec(-5i64..=5, 4)) {
            let z = Integers;
            let (u, v) = (cv(&u), cv(&v));
            let uv = skew_mul(&z, &u.to_extensor(&z), &v).unwrap();
            let vu = skew_mul(&z, &v.to_extensor(&z), &u).unwrap();
            prop_assert_eq!(uv, vu.neg(&z));
        }

        #[test]
        fn skew_matches_general_product(x in int_extensor(5), v in proptest::collection::vec(-4i64..=4, 5)) {
            let z = Integers;
            let v = cv(&v);
            prop_assert_eq!(skew_mul(&z, &x, &v).unwrap(), wedge_naive(&z, &x, &v.to_extensor(&z)).unwrap());
        }
    }
}
