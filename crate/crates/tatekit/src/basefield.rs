//! Exact arithmetic over the coefficient fields serving as the last residue
//! field: arbitrary-precision rationals and finite fields `F_p[x]/(f)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use thiserror::Error;

/// Errors raised by field construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("operands belong to different field specs")]
    SpecMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus polynomial is not monic of degree >= 1")]
    BadModulus,
    #[error("modulus polynomial is reducible over F_p")]
    NotIrreducible,
}

/// Description of a coefficient field: `Q`, `F_p`, or `F_p[x]/(f)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FieldSpec {
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "Fp")]
    FinitePrime { p: u64 },
    /// `f` is the dense coefficient list `c0, c1, ..., 1` of a monic
    /// irreducible polynomial over `F_p`.
    #[serde(rename = "Fq")]
    FiniteExt { p: u64, f: Vec<u64> },
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec::Rationals
    }

    /// Prime field `F_p`. Primality is checked by trial division (p < 2^31).
    pub fn finite_prime(p: u64) -> Result<Self, FieldError> {
        if !is_prime31(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldSpec::FinitePrime { p })
    }

    /// Extension field `F_p[x]/(f)` for monic irreducible `f`.
    pub fn finite_ext(p: u64, f: Vec<u64>) -> Result<Self, FieldError> {
        if !is_prime31(p) {
            return Err(FieldError::NotPrime(p));
        }
        let f: Vec<u64> = f.into_iter().map(|c| c % p).collect();
        if f.len() < 2 || *f.last().unwrap() != 1 {
            return Err(FieldError::BadModulus);
        }
        if !poly_is_irreducible(&f, p) {
            return Err(FieldError::NotIrreducible);
        }
        Ok(FieldSpec::FiniteExt { p, f })
    }

    /// Field characteristic (0 for the rationals).
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::FinitePrime { p } | FieldSpec::FiniteExt { p, .. } => *p,
        }
    }

    pub fn zero(&self) -> FieldScalar {
        FieldScalar::from_integer(self.clone(), 0)
    }

    pub fn one(&self) -> FieldScalar {
        FieldScalar::from_integer(self.clone(), 1)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(out, "Q"),
            FieldSpec::FinitePrime { p } => write!(out, "F{}", p),
            FieldSpec::FiniteExt { p, f } => write!(out, "F{}[x]/{}", p, PolyFp::display(f)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Value {
    Rat(BigRational),
    /// Residue mod p, or residue polynomial of degree < deg f (trailing
    /// zeros trimmed; the empty vector is zero).
    Mod(Vec<u64>),
}

/// An exact element of a coefficient field, always in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldScalar {
    spec: FieldSpec,
    value: Value,
}

impl FieldScalar {
    pub fn from_integer(spec: FieldSpec, n: i64) -> Self {
        match &spec {
            FieldSpec::Rationals => FieldScalar {
                spec,
                value: Value::Rat(BigRational::from(BigInt::from(n))),
            },
            FieldSpec::FinitePrime { p } | FieldSpec::FiniteExt { p, .. } => {
                let r = n.rem_euclid(*p as i64) as u64;
                FieldScalar {
                    spec,
                    value: Value::Mod(trim(vec![r])),
                }
            }
        }
    }

    pub fn from_rational(num: i64, den: i64) -> Self {
        FieldScalar {
            spec: FieldSpec::Rationals,
            value: Value::Rat(BigRational::new(BigInt::from(num), BigInt::from(den))),
        }
    }

    pub fn from_big_rational(r: BigRational) -> Self {
        FieldScalar {
            spec: FieldSpec::Rationals,
            value: Value::Rat(r),
        }
    }

    /// Residue-polynomial element of `F_p` or `F_p[x]/(f)` from a dense
    /// coefficient list (reduced mod `(p, f)`).
    pub fn from_coeffs(spec: FieldSpec, coeffs: &[i64]) -> Result<Self, FieldError> {
        match &spec {
            FieldSpec::Rationals => Err(FieldError::SpecMismatch),
            FieldSpec::FinitePrime { p } => {
                if coeffs.len() > 1 {
                    return Err(FieldError::BadModulus);
                }
                let c = coeffs.first().copied().unwrap_or(0).rem_euclid(*p as i64) as u64;
                Ok(FieldScalar {
                    spec,
                    value: Value::Mod(trim(vec![c])),
                })
            }
            FieldSpec::FiniteExt { p, f } => {
                let raw: Vec<u64> = coeffs.iter().map(|c| c.rem_euclid(*p as i64) as u64).collect();
                let reduced = PolyFp::rem(&raw, f, *p);
                Ok(FieldScalar {
                    spec,
                    value: Value::Mod(reduced),
                })
            }
        }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Rat(r) => r.is_zero(),
            Value::Mod(c) => c.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.value {
            Value::Rat(r) => r.is_one(),
            Value::Mod(c) => c == &[1],
        }
    }

    fn same_spec(&self, other: &FieldScalar) -> Result<(), FieldError> {
        if self.spec != other.spec {
            return Err(FieldError::SpecMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &FieldScalar) -> Result<FieldScalar, FieldError> {
        self.same_spec(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a + b),
            (Value::Mod(a), Value::Mod(b)) => {
                Value::Mod(PolyFp::add(a, b, self.spec.characteristic()))
            }
            _ => return Err(FieldError::SpecMismatch),
        };
        Ok(FieldScalar {
            spec: self.spec.clone(),
            value,
        })
    }

    pub fn neg(&self) -> FieldScalar {
        let value = match &self.value {
            Value::Rat(a) => Value::Rat(-a),
            Value::Mod(a) => Value::Mod(PolyFp::neg(a, self.spec.characteristic())),
        };
        FieldScalar {
            spec: self.spec.clone(),
            value,
        }
    }

    pub fn sub(&self, other: &FieldScalar) -> Result<FieldScalar, FieldError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FieldScalar) -> Result<FieldScalar, FieldError> {
        self.same_spec(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a * b),
            (Value::Mod(a), Value::Mod(b)) => {
                let p = self.spec.characteristic();
                let prod = PolyFp::mul(a, b, p);
                match &self.spec {
                    FieldSpec::FiniteExt { f, .. } => Value::Mod(PolyFp::rem(&prod, f, p)),
                    _ => Value::Mod(prod),
                }
            }
            _ => return Err(FieldError::SpecMismatch),
        };
        Ok(FieldScalar {
            spec: self.spec.clone(),
            value,
        })
    }

    /// Multiplicative inverse; extended Euclid in the extension case.
    pub fn inv(&self) -> Result<FieldScalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let value = match &self.value {
            Value::Rat(a) => Value::Rat(a.recip()),
            Value::Mod(a) => {
                let p = self.spec.characteristic();
                match &self.spec {
                    FieldSpec::FinitePrime { .. } => Value::Mod(vec![mod_inv(a[0], p)]),
                    FieldSpec::FiniteExt { f, .. } => Value::Mod(PolyFp::inv_mod(a, f, p)?),
                    FieldSpec::Rationals => unreachable!(),
                }
            }
        };
        Ok(FieldScalar {
            spec: self.spec.clone(),
            value,
        })
    }

    pub fn div(&self, other: &FieldScalar) -> Result<FieldScalar, FieldError> {
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Result<FieldScalar, FieldError> {
        let mut acc = self.spec.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Text form: `a/b` for rationals, `[c0,c1,...]` for finite fields.
    pub fn to_text(&self) -> String {
        match &self.value {
            Value::Rat(r) => {
                if r.denom().is_one() {
                    format!("{}", r.numer())
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Value::Mod(c) => {
                let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("[{}]", body.join(","))
            }
        }
    }

    /// Parse the text form against a given spec.
    pub fn parse(spec: &FieldSpec, text: &str) -> Result<FieldScalar, FieldError> {
        let text = text.trim();
        match spec {
            FieldSpec::Rationals => {
                let (num, den) = match text.split_once('/') {
                    Some((a, b)) => (a, b),
                    None => (text, "1"),
                };
                let num: BigInt = num.trim().parse().map_err(|_| FieldError::SpecMismatch)?;
                let den: BigInt = den.trim().parse().map_err(|_| FieldError::SpecMismatch)?;
                if den.is_zero() {
                    return Err(FieldError::DivisionByZero);
                }
                Ok(FieldScalar {
                    spec: spec.clone(),
                    value: Value::Rat(BigRational::new(num, den)),
                })
            }
            _ => {
                let inner = text.trim_start_matches('[').trim_end_matches(']');
                let coeffs: Result<Vec<i64>, _> = if inner.trim().is_empty() {
                    Ok(Vec::new())
                } else {
                    inner.split(',').map(|s| s.trim().parse::<i64>()).collect()
                };
                let coeffs = coeffs.map_err(|_| FieldError::SpecMismatch)?;
                FieldScalar::from_coeffs(spec.clone(), &coeffs)
            }
        }
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{}", self.to_text())
    }
}

impl Serialize for FieldScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

/// Deserialization needs the spec from context, so scalars round-trip via
/// text inside their parent structures (see the series JSON schema).
pub fn scalar_from_text<'de, D: Deserializer<'de>>(
    spec: &FieldSpec,
    d: D,
) -> Result<FieldScalar, D::Error> {
    let text = String::deserialize(d)?;
    FieldScalar::parse(spec, &text).map_err(D::Error::custom)
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Deterministic trial-division primality for p < 2^31.
pub fn is_prime31(p: u64) -> bool {
    if !(2..1 << 31).contains(&p) {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a != 0.
    mod_pow(a, p - 2, p)
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Dense polynomial arithmetic over `F_p` (coefficients ascending, trailing
/// zeros trimmed). Shared by the extension field and the Hensel module.
pub struct PolyFp;

impl PolyFp {
    pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0u64; a.len().max(b.len())];
        for (i, slot) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *slot = (x + y) % p;
        }
        trim(out)
    }

    pub fn neg(a: &[u64], p: u64) -> Vec<u64> {
        trim(a.iter().map(|&c| (p - c % p) % p).collect())
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        Self::add(a, &Self::neg(b, p), p)
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    pub fn scale(a: &[u64], c: u64, p: u64) -> Vec<u64> {
        trim(a.iter().map(|&x| x * (c % p) % p).collect())
    }

    /// Remainder of `a` modulo `m` (m monic).
    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        Self::divrem(a, m, p).1
    }

    /// Division with remainder by a monic-leading (after normalization)
    /// divisor; returns `(quotient, remainder)`.
    pub fn divrem(a: &[u64], m: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let m = trim(m.to_vec());
        assert!(!m.is_empty(), "division by zero polynomial");
        let lead_inv = mod_inv(*m.last().unwrap(), p);
        let mut rem = trim(a.to_vec());
        let deg_m = m.len() - 1;
        if rem.len() <= deg_m {
            return (Vec::new(), rem);
        }
        let mut quo = vec![0u64; rem.len() - deg_m];
        while rem.len() > deg_m {
            let shift = rem.len() - 1 - deg_m;
            let coef = *rem.last().unwrap() * lead_inv % p;
            quo[shift] = coef;
            for (i, &mc) in m.iter().enumerate() {
                let idx = shift + i;
                let sub = mc * coef % p;
                rem[idx] = (rem[idx] + p - sub) % p;
            }
            rem = trim(rem);
        }
        (trim(quo), rem)
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = Self::rem(&a, &b, p);
            a = b;
            b = r;
        }
        if let Some(&lead) = a.last() {
            a = Self::scale(&a, mod_inv(lead, p), p);
        }
        a
    }

    /// Inverse of `a` modulo the monic irreducible `f`, by extended Euclid.
    pub fn inv_mod(a: &[u64], f: &[u64], p: u64) -> Result<Vec<u64>, FieldError> {
        let (mut r0, mut r1) = (trim(f.to_vec()), trim(a.to_vec()));
        let (mut s0, mut s1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = Self::divrem(&r0, &r1, p);
            let s = Self::sub(&s0, &Self::mul(&q, &s1, p), p);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.len() != 1 {
            return Err(FieldError::DivisionByZero);
        }
        let scale = mod_inv(r0[0], p);
        Ok(Self::rem(&Self::scale(&s0, scale, p), f, p))
    }

    pub fn pow_mod(a: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut base = Self::rem(a, f, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = Self::rem(&Self::mul(&acc, &base, p), f, p);
            }
            base = Self::rem(&Self::mul(&base, &base, p), f, p);
            e >>= 1;
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(a: &[u64], p: u64) -> Vec<u64> {
        if a.len() <= 1 {
            return Vec::new();
        }
        trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| (i as u64 % p) * c % p)
                .collect(),
        )
    }

    pub fn display(f: &[u64]) -> String {
        if f.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, &c) in f.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let term = match i {
                0 => format!("{}", c),
                1 if c == 1 => "x".into(),
                1 => format!("{}x", c),
                _ if c == 1 => format!("x^{}", i),
                _ => format!("{}x^{}", c, i),
            };
            parts.push(term);
        }
        format!("({})", parts.join("+"))
    }
}

/// Irreducibility over `F_p` by gcd with Frobenius powers:
/// `f` (monic, deg d) is irreducible iff `gcd(f, x^(p^i) - x) = 1` for all
/// `i <= d/2`.
pub fn poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let f = trim(f.to_vec());
    if f.len() < 2 {
        return false;
    }
    let deg = f.len() - 1;
    if deg == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let mut frob = x.clone();
    for _ in 1..=deg / 2 {
        frob = PolyFp::pow_mod(&frob, p, &f, p);
        let diff = PolyFp::sub(&frob, &x, p);
        let g = PolyFp::gcd(&f, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5_ext() -> FieldSpec {
        // x^2 - 2 over F_5, written x^2 + 3.
        FieldSpec::finite_ext(5, vec![3, 0, 1]).unwrap()
    }

    #[test]
    fn rational_add_mul() {
        let a = FieldScalar::from_rational(1, 2);
        let b = FieldScalar::from_rational(1, 3);
        assert_eq!(a.add(&b).unwrap(), FieldScalar::from_rational(5, 6));
        let c = FieldScalar::from_rational(2, 3);
        let d = FieldScalar::from_rational(3, 2);
        assert!(c.mul(&d).unwrap().is_one());
        assert_eq!(
            FieldScalar::from_rational(-3, 7).inv().unwrap(),
            FieldScalar::from_rational(-7, 3)
        );
    }

    #[test]
    fn ext_field_arithmetic() {
        let spec = f5_ext();
        let x = FieldScalar::from_coeffs(spec.clone(), &[0, 1]).unwrap();
        // x + (4x + 2) = 2 since 5x = 0 mod 5
        let other = FieldScalar::from_coeffs(spec.clone(), &[2, 4]).unwrap();
        assert_eq!(
            x.add(&other).unwrap(),
            FieldScalar::from_integer(spec.clone(), 2)
        );
        // x * x = 2 by reduction mod x^2 - 2
        assert_eq!(
            x.mul(&x).unwrap(),
            FieldScalar::from_integer(spec.clone(), 2)
        );
        // inv(2x) = 4x: 2x * 4x = 8x^2 = 16 = 1 mod 5
        let two_x = FieldScalar::from_coeffs(spec.clone(), &[0, 2]).unwrap();
        let inv = two_x.inv().unwrap();
        assert_eq!(inv, FieldScalar::from_coeffs(spec.clone(), &[0, 4]).unwrap());
        assert!(two_x.mul(&inv).unwrap().is_one());
    }

    #[test]
    fn identity_cases() {
        let spec = f5_ext();
        let a = FieldScalar::from_coeffs(spec.clone(), &[3, 2]).unwrap();
        assert_eq!(a.add(&spec.zero()).unwrap(), a);
        assert_eq!(a.mul(&spec.one()).unwrap(), a);
        assert!(spec.one().inv().unwrap().is_one());
    }

    #[test]
    fn spec_mismatch_rejected() {
        let a = FieldScalar::from_rational(1, 2);
        let b = FieldSpec::finite_prime(5).unwrap().one();
        assert_eq!(a.add(&b), Err(FieldError::SpecMismatch));
    }

    #[test]
    fn irreducibility_checks() {
        assert!(FieldSpec::finite_ext(5, vec![3, 0, 1]).is_ok());
        // x^2 - 1 = (x-1)(x+1) is reducible
        assert_eq!(
            FieldSpec::finite_ext(5, vec![4, 0, 1]),
            Err(FieldError::NotIrreducible)
        );
        assert_eq!(FieldSpec::finite_prime(6), Err(FieldError::NotPrime(6)));
        // x^4 + x + 1 over F_2 is irreducible
        assert!(FieldSpec::finite_ext(2, vec![1, 1, 0, 0, 1]).is_ok());
        // x^4 + x^2 + 1 = (x^2+x+1)^2 over F_2
        assert_eq!(
            FieldSpec::finite_ext(2, vec![1, 0, 1, 0, 1]),
            Err(FieldError::NotIrreducible)
        );
    }

    #[test]
    fn frobenius_additivity() {
        let spec = f5_ext();
        for seed in 0..20u64 {
            let a = FieldScalar::from_coeffs(spec.clone(), &[(seed % 5) as i64, (seed % 3) as i64])
                .unwrap();
            let b = FieldScalar::from_coeffs(
                spec.clone(),
                &[((seed * 7 + 1) % 5) as i64, ((seed * 11 + 2) % 5) as i64],
            )
            .unwrap();
            let lhs = a.add(&b).unwrap().pow(5).unwrap();
            let rhs = a.pow(5).unwrap().add(&b.pow(5).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn text_round_trip() {
        let spec = f5_ext();
        let a = FieldScalar::from_coeffs(spec.clone(), &[3, 2]).unwrap();
        assert_eq!(FieldScalar::parse(&spec, &a.to_text()).unwrap(), a);
        let q = FieldScalar::from_rational(-7, 3);
        assert_eq!(
            FieldScalar::parse(&FieldSpec::Rationals, &q.to_text()).unwrap(),
            q
        );
    }
}
