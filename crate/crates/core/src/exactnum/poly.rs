//! Dense univariate polynomials over the rationals, just enough for
//! cyclotomic reduction and inversion in `Q(zeta_m)`.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Zero};

pub type Rat = Ratio<BigInt>;

/// Coefficients in ascending degree, no trailing zeros.
pub type Poly = Vec<Rat>;

pub fn trim(p: &mut Poly) {
    while let Some(last) = p.last() {
        if last.is_zero() {
            p.pop();
        } else {
            break;
        }
    }
}

pub fn deg(p: &Poly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            out[i + j] += ca * cb;
        }
    }
    trim(&mut out);
    out
}

/// Exact division with remainder over the field of rationals.
pub fn divmod(num: &Poly, den: &Poly) -> (Poly, Poly) {
    assert!(!den.is_empty(), "polynomial division by zero");
    let lead = den.last().unwrap().clone();
    let mut rem = num.clone();
    let mut quo: Poly = Vec::new();
    while rem.len() >= den.len() {
        let shift = rem.len() - den.len();
        let coef = rem.last().unwrap() / &lead;
        if quo.len() < shift + 1 {
            quo.resize(shift + 1, Rat::zero());
        }
        quo[shift] = coef.clone();
        for (j, cd) in den.iter().enumerate() {
            let t = cd * &coef;
            rem[shift + j] -= t;
        }
        trim(&mut rem);
    }
    trim(&mut quo);
    (quo, rem)
}

/// Extended gcd: returns monic `g` and `(u, v)` with `u*a + v*b = g`.
pub fn ext_gcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    let mut u0: Poly = vec![Rat::one()];
    let mut u1: Poly = Vec::new();
    let mut v0: Poly = Vec::new();
    let mut v1: Poly = vec![Rat::one()];
    while !r1.is_empty() {
        let (q, r) = divmod(&r0, &r1);
        let nu = sub(&u0, &mul(&q, &u1));
        let nv = sub(&v0, &mul(&q, &v1));
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = nu;
        v0 = v1;
        v1 = nv;
    }
    if let Some(lead) = r0.last().cloned() {
        if !lead.is_one() {
            let inv = Rat::one() / lead;
            for c in r0.iter_mut() {
                *c *= &inv;
            }
            for c in u0.iter_mut() {
                *c *= &inv;
            }
            for c in v0.iter_mut() {
                *c *= &inv;
            }
        }
    }
    (r0, u0, v0)
}

#[cfg(test)]
pub fn add(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    if out.len() < b.len() {
        out.resize(b.len(), Rat::zero());
    }
    for (j, cb) in b.iter().enumerate() {
        out[j] += cb;
    }
    trim(&mut out);
    out
}

pub fn sub(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    if out.len() < b.len() {
        out.resize(b.len(), Rat::zero());
    }
    for (j, cb) in b.iter().enumerate() {
        out[j] -= cb;
    }
    trim(&mut out);
    out
}

/// Euler totient.
pub fn totient(m: u32) -> u32 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn x_pow_minus_one(d: u32) -> Poly {
    let mut p = vec![Rat::zero(); d as usize + 1];
    p[0] = -Rat::one();
    p[d as usize] = Rat::one();
    p
}

/// The `m`-th cyclotomic polynomial, computed by dividing `x^m - 1` by the
/// cyclotomic polynomials of the proper divisors of `m`.
pub fn cyclotomic(m: u32) -> Poly {
    assert!(m >= 1);
    if m == 1 {
        return x_pow_minus_one(1);
    }
    let mut num = x_pow_minus_one(m);
    for d in 1..m {
        if m.is_multiple_of(d) {
            let (q, r) = divmod(&num, &cyclotomic(d));
            debug_assert!(r.is_empty());
            num = q;
        }
    }
    num
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_poly(cs: &[i64]) -> Poly {
        let mut p: Poly = cs.iter().map(|&c| Rat::from_integer(c.into())).collect();
        trim(&mut p);
        p
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), int_poly(&[-1, 1]));
        assert_eq!(cyclotomic(2), int_poly(&[1, 1]));
        assert_eq!(cyclotomic(3), int_poly(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), int_poly(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), int_poly(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), int_poly(&[1, 0, -1, 0, 1]));
        assert_eq!(deg(&cyclotomic(105)), Some(48));
    }

    #[test]
    fn divmod_roundtrip() {
        let a = int_poly(&[2, 0, 3, 1]);
        let b = int_poly(&[1, 1]);
        let (q, r) = divmod(&a, &b);
        let back = sub(&a, &mul(&q, &b));
        assert_eq!(back, r);
        assert!(deg(&r) < deg(&b));
    }

    #[test]
    fn ext_gcd_coprime() {
        let a = cyclotomic(4);
        let b = int_poly(&[0, 1]); // x
        let (g, u, v) = ext_gcd(&a, &b);
        assert_eq!(g, int_poly(&[1]));
        let lhs = add(&mul(&u, &a), &mul(&v, &b));
        assert_eq!(lhs, int_poly(&[1]));
    }
}
