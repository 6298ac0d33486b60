//! Exact elements of cyclotomic fields `Q(zeta_m)`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{self, Poly, Rat};

/// An element of `Q(zeta_m)`, stored as a polynomial in `zeta_m` reduced
/// modulo the `m`-th cyclotomic polynomial.
///
/// The map `coeffs` carries no explicit zeros and all exponents are below
/// `phi(m)`. A purely rational value always has `order == 1`, so the
/// representation at a fixed conductor is canonical and mixed-conductor
/// equality reduces to comparison after coercion into the least common
/// conductor. Roots of unity at different conductors are compatible under
/// `zeta_m -> zeta_M^(M/m)`.
#[derive(Clone, Debug)]
pub struct Scalar {
    order: u32,
    coeffs: BTreeMap<u32, Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NumError {
    DivisionByZero,
}

impl fmt::Display for NumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumError::DivisionByZero => write!(f, "division by zero"),
        }
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { order: 1, coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rat(Rat::from_integer(BigInt::from(n)))
    }

    pub fn from_rat(r: Rat) -> Self {
        let mut coeffs = BTreeMap::new();
        if !r.is_zero() {
            coeffs.insert(0, r);
        }
        Scalar { order: 1, coeffs }
    }

    pub fn rational(num: i64, den: i64) -> Self {
        Scalar::from_rat(Rat::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `zeta_m^j` in canonical form.
    pub fn root_of_unity(m: u32, j: i64) -> Self {
        assert!(m >= 1, "conductor must be positive");
        let jm = j.rem_euclid(m as i64) as u32;
        let mut coeffs = BTreeMap::new();
        coeffs.insert(jm, Rat::one());
        let mut s = Scalar { order: m, coeffs };
        s.canonicalize();
        s
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.order == 1 && self.coeffs.len() == 1 && self.coeffs.get(&0).map(|c| c.is_one()) == Some(true)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// The rational part if the value is rational, else `None`.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.coeffs.is_empty() {
            return Some(Rat::zero());
        }
        if self.order == 1 {
            return self.coeffs.get(&0).cloned();
        }
        None
    }

    fn to_poly(&self) -> Poly {
        let deg = self.coeffs.keys().next_back().map(|&k| k as usize + 1).unwrap_or(0);
        let mut p = alloc::vec![Rat::zero(); deg];
        for (&e, c) in &self.coeffs {
            p[e as usize] = c.clone();
        }
        p
    }

    fn from_poly(order: u32, p: Poly) -> Self {
        let mut coeffs = BTreeMap::new();
        for (e, c) in p.into_iter().enumerate() {
            if !c.is_zero() {
                coeffs.insert(e as u32, c);
            }
        }
        let mut s = Scalar { order, coeffs };
        s.canonicalize();
        s
    }

    /// Reduce exponents below `phi(order)` and shrink rational values to
    /// conductor one.
    fn canonicalize(&mut self) {
        if self.order == 1 {
            return;
        }
        let phi = poly::totient(self.order);
        if self.coeffs.keys().next_back().map(|&k| k >= phi) == Some(true) {
            let p = self.to_poly();
            let (_, rem) = poly::divmod(&p, &poly::cyclotomic(self.order));
            self.coeffs.clear();
            for (e, c) in rem.into_iter().enumerate() {
                if !c.is_zero() {
                    self.coeffs.insert(e as u32, c);
                }
            }
        }
        if self.coeffs.keys().next_back().map(|&k| k == 0).unwrap_or(true) {
            self.order = 1;
        }
    }

    /// Ring embedding into the conductor `target`, which must be a multiple
    /// of the current order. Sends `zeta_m` to `zeta_target^(target/m)`.
    pub fn coerced(&self, target: u32) -> Self {
        assert!(target.is_multiple_of(self.order), "conductor {} does not divide {}", self.order, target);
        if target == self.order {
            return self.clone();
        }
        let step = target / self.order;
        let mut coeffs = BTreeMap::new();
        for (&e, c) in &self.coeffs {
            coeffs.insert(e * step, c.clone());
        }
        let mut s = Scalar { order: target, coeffs };
        s.canonicalize();
        s
    }

    fn unify(a: &Scalar, b: &Scalar) -> (Scalar, Scalar, u32) {
        if a.order == b.order {
            return (a.clone(), b.clone(), a.order);
        }
        let m = a.order.lcm(&b.order);
        (a.coerced(m), b.coerced(m), m)
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        if self.order == 1 && other.order == 1 {
            let a = self.coeffs.get(&0).cloned().unwrap_or_else(Rat::zero);
            let b = other.coeffs.get(&0).cloned().unwrap_or_else(Rat::zero);
            return Scalar::from_rat(a + b);
        }
        let (a, b, m) = Scalar::unify(self, other);
        let mut coeffs = a.coeffs;
        for (e, c) in b.coeffs {
            let entry = coeffs.entry(e).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                coeffs.remove(&e);
            }
        }
        let mut s = Scalar { order: m, coeffs };
        s.canonicalize();
        s
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        let coeffs = self.coeffs.iter().map(|(&e, c)| (e, -c.clone())).collect();
        Scalar { order: self.order, coeffs }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        if self.order == 1 && other.order == 1 {
            let a = self.coeffs.get(&0).unwrap();
            let b = other.coeffs.get(&0).unwrap();
            return Scalar::from_rat(a * b);
        }
        let (a, b, m) = Scalar::unify(self, other);
        // Multiply with exponents taken mod m (zeta^m = 1), then reduce.
        let mut coeffs: BTreeMap<u32, Rat> = BTreeMap::new();
        for (&ea, ca) in &a.coeffs {
            for (&eb, cb) in &b.coeffs {
                let e = (ea + eb) % m;
                let entry = coeffs.entry(e).or_insert_with(Rat::zero);
                *entry += ca * cb;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        let mut s = Scalar { order: m, coeffs };
        s.canonicalize();
        s
    }

    pub fn scale_int(&self, n: i64) -> Scalar {
        self.mul(&Scalar::from_int(n))
    }

    pub fn inv(&self) -> Result<Scalar, NumError> {
        if self.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        if self.order == 1 {
            let c = self.coeffs.get(&0).unwrap();
            return Ok(Scalar::from_rat(Rat::one() / c));
        }
        let phi_m = poly::cyclotomic(self.order);
        let (g, u, _) = poly::ext_gcd(&self.to_poly(), &phi_m);
        debug_assert_eq!(poly::deg(&g), Some(0));
        Ok(Scalar::from_poly(self.order, u))
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, NumError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, mut n: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b, _) = Scalar::unify(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Scalar {}

fn fmt_rat(r: &Rat, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Canonical string form: terms over ascending exponents, the exponent-0
/// term printed as `p/q`, higher terms as `c*z(m)^j` (coefficient omitted
/// when `1`). Examples: `0`, `-1/2`, `z(4)^1`, `1/3+2*z(6)^1`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let a = c.abs();
            if e == 0 {
                fmt_rat(&a, f)?;
            } else {
                if !a.is_one() {
                    fmt_rat(&a, f)?;
                    write!(f, "*")?;
                }
                write!(f, "z({})^{}", self.order, e)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseScalarError(pub String);

impl fmt::Display for ParseScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid scalar literal: {}", self.0)
    }
}

fn parse_rat(s: &str) -> Result<Rat, ParseScalarError> {
    let bad = || ParseScalarError(String::from(s));
    if let Some((n, d)) = s.split_once('/') {
        let num: BigInt = n.parse().map_err(|_| bad())?;
        let den: BigInt = d.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Rat::new(num, den))
    } else {
        let num: BigInt = s.parse().map_err(|_| bad())?;
        Ok(Rat::from_integer(num))
    }
}

/// One term of the grammar: `p/q`, `z(m)^j`, or `p/q*z(m)^j`.
fn parse_term(s: &str) -> Result<Scalar, ParseScalarError> {
    let bad = || ParseScalarError(String::from(s));
    let (coef, root) = match s.split_once('*') {
        Some((c, r)) => (parse_rat(c)?, r),
        None if s.contains('z') => (Rat::one(), s),
        None => return Ok(Scalar::from_rat(parse_rat(s)?)),
    };
    let rest = root.strip_prefix("z(").ok_or_else(bad)?;
    let (m_str, tail) = rest.split_once(')').ok_or_else(bad)?;
    let m: u32 = m_str.parse().map_err(|_| bad())?;
    if m == 0 {
        return Err(bad());
    }
    let j: i64 = match tail.strip_prefix('^') {
        Some(j_str) => j_str.parse().map_err(|_| bad())?,
        None if tail.is_empty() => 1,
        None => return Err(bad()),
    };
    Ok(Scalar::from_rat(coef).mul(&Scalar::root_of_unity(m, j)))
}

impl core::str::FromStr for Scalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseScalarError(String::from(s)));
        }
        let mut total = Scalar::zero();
        let mut term = String::new();
        let mut sign = 1i64;
        let mut chars = s.chars().peekable();
        // Leading sign.
        if let Some(&c) = chars.peek() {
            if c == '-' {
                sign = -1;
                chars.next();
            } else if c == '+' {
                chars.next();
            }
        }
        let flush = |term: &mut String, sign: i64, total: &mut Scalar| -> Result<(), ParseScalarError> {
            if term.is_empty() {
                return Err(ParseScalarError(String::from(s)));
            }
            let t = parse_term(term).map(|t| t.scale_int(sign))?;
            *total = total.add(&t);
            term.clear();
            Ok(())
        };
        for c in chars {
            match c {
                '+' => {
                    flush(&mut term, sign, &mut total)?;
                    sign = 1;
                }
                '-' => {
                    flush(&mut term, sign, &mut total)?;
                    sign = -1;
                }
                ' ' => {}
                _ => term.push(c),
            }
        }
        flush(&mut term, sign, &mut total)?;
        Ok(total)
    }
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        let conductor = prop::sample::select(vec![1u32, 2, 3, 4, 6, 12]);
        (conductor, prop::collection::vec((0u32..4, -6i64..=6, 1i64..=4), 0..3)).prop_map(
            |(m, terms)| {
                let mut acc = Scalar::zero();
                for (j, num, den) in terms {
                    let t = Scalar::rational(num, den).mul(&Scalar::root_of_unity(m, j as i64));
                    acc = acc.add(&t);
                }
                acc
            },
        )
    }

    proptest! {
        #[test]
        fn field_axioms_hold_exactly(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.sub(&a), Scalar::zero());
            if !a.is_zero() {
                prop_assert_eq!(a.mul(&a.inv().unwrap()), Scalar::one());
            }
        }

        #[test]
        fn coercion_is_a_ring_embedding(a in arb_scalar(), b in arb_scalar()) {
            // 12 is a common multiple of every sampled conductor.
            let target = 12u32;
            prop_assert_eq!(a.mul(&b), a.coerced(target).mul(&b.coerced(target)));
            prop_assert_eq!(a.add(&b), a.coerced(target).add(&b.coerced(target)));
        }

        #[test]
        fn parse_roundtrip(a in arb_scalar()) {
            let text = alloc::string::ToString::to_string(&a);
            let back: Scalar = text.parse().unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
