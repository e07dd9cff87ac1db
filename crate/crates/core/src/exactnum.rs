//! Exact arithmetic in the real multi-quadratic field: finite sums
//! `q_1*sqrt(d_1) + q_2*sqrt(d_2) + ...` with rational coefficients and
//! distinct square-free positive radicands. The radicand 1 carries the
//! rational part.
//!
//! The representation is canonical, so equality of values is equality of
//! term maps and every identity can be asserted exactly.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

/// Error type for the partial operations of [`ExactReal`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumError {
    #[error("square root of a non-positive rational {0}")]
    NonPositiveSqrt(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse `{0}` as an exact real")]
    Parse(String),
}

/// An element of the real field Q(sqrt(2), sqrt(3), sqrt(5), ...).
///
/// Stored as a map radicand -> coefficient with every radicand square-free
/// and >= 1 and every stored coefficient nonzero.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactReal {
    terms: BTreeMap<u64, BigRational>,
}

/// Largest factor `s` with `s*s | n`, returned as `(s, n / s^2)`.
///
/// Trial division; the radicands in this crate stay tiny.
fn square_free_split(n: &BigInt) -> (BigInt, BigInt) {
    let mut rest = n.clone();
    let mut square = BigInt::one();
    let mut p = BigInt::from(2u32);
    while &p * &p <= rest {
        let p2 = &p * &p;
        while (&rest % &p2).is_zero() {
            rest /= &p2;
            square *= &p;
        }
        p += 1;
    }
    (square, rest)
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl ExactReal {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// The rational `p/q` as an exact real.
    pub fn rational(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Self::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(1, q);
        }
        Self { terms }
    }

    /// The single term `q * sqrt(d)`; `d` is reduced to square-free form.
    pub fn radical(q: BigRational, d: u64) -> Self {
        assert!(d >= 1, "radicand must be positive");
        let (s, rest) = square_free_split(&BigInt::from(d));
        let coeff = q * BigRational::from_integer(s);
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            let d = u64::try_from(&rest).expect("radicand fits in u64");
            terms.insert(d, coeff);
        }
        Self { terms }
    }

    /// Integer multiple of a square root: `c * sqrt(d)`.
    pub fn sqrt_mult(c: i64, d: u64) -> Self {
        Self::radical(BigRational::from_integer(BigInt::from(c)), d)
    }

    /// Exact positive square root of a positive rational: the unique
    /// single-term value `r` with `r*r = q`.
    pub fn sqrt_rational(q: &BigRational) -> Result<Self, NumError> {
        if !q.is_positive() {
            return Err(NumError::NonPositiveSqrt(format_rational(q)));
        }
        // sqrt(p/r) = sqrt(p*r) / r
        let pr = q.numer() * q.denom();
        let (s, d) = square_free_split(&pr);
        let coeff = BigRational::new(s, q.denom().clone());
        let d = u64::try_from(&d).expect("radicand fits in u64");
        let mut terms = BTreeMap::new();
        terms.insert(d, coeff);
        Ok(Self { terms })
    }

    /// `sqrt(p/q)` for positive `p/q`.
    pub fn sqrt_ratio(p: i64, q: i64) -> Self {
        Self::sqrt_rational(&BigRational::new(BigInt::from(p), BigInt::from(q)))
            .expect("positive rational")
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&1)
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    /// The purely rational value, if this is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&1) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    fn insert_term(&mut self, d: u64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(d) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(d, c)| (*d, c * q)).collect(),
        }
    }

    /// Exact multiplicative inverse.
    ///
    /// Single terms invert directly: `(q*sqrt(d))^-1 = sqrt(d)/(q*d)`.
    /// Multi-term values are cleared one radicand prime at a time by
    /// multiplying with the conjugate that flips every term containing
    /// that prime; the product has strictly fewer primes under radicals.
    pub fn invert(&self) -> Result<Self, NumError> {
        if self.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        if self.terms.len() == 1 {
            let (d, c) = self.terms.iter().next().expect("nonempty");
            let inv = BigRational::one() / (c * BigRational::from_integer(BigInt::from(*d)));
            return Ok(Self::radical(inv, *d));
        }
        // Pick any prime dividing some radicand (one exists: len > 1 means
        // some radicand is > 1).
        let d = *self
            .terms
            .keys()
            .find(|d| **d > 1)
            .expect("multi-term value has a nontrivial radicand");
        let mut p = 2u64;
        while d % p != 0 {
            p += 1;
        }
        let conj = Self {
            terms: self
                .terms
                .iter()
                .map(|(d, c)| (*d, if d % p == 0 { -c.clone() } else { c.clone() }))
                .collect(),
        };
        let reduced = self * &conj;
        Ok(&conj * &reduced.invert()?)
    }

    /// Provably correct sign of the value: -1, 0 or +1.
    ///
    /// Zero is decided by canonical form. Otherwise each `sqrt(d)` is
    /// bracketed by rational bounds from integer square roots, refined
    /// until the enclosing interval excludes zero.
    pub fn signum(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        if let Some(q) = self.as_rational() {
            return if q.is_positive() { 1 } else { -1 };
        }
        let mut bits: u32 = 8;
        loop {
            let scale = BigInt::one() << bits;
            let mut lo = BigRational::zero();
            let mut hi = BigRational::zero();
            for (d, c) in &self.terms {
                // isqrt of d * 4^bits gives sqrt(d) to 2^-bits.
                let n = BigInt::from(*d) * (&scale * &scale);
                let root = n.sqrt();
                let lo_d = BigRational::new(root.clone(), scale.clone());
                let hi_d = BigRational::new(root + 1, scale.clone());
                if c.is_positive() {
                    lo += c * &lo_d;
                    hi += c * &hi_d;
                } else {
                    lo += c * &hi_d;
                    hi += c * &lo_d;
                }
            }
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            bits *= 2;
            assert!(bits <= 1 << 16, "sign refinement failed to converge");
        }
    }

    /// Deterministic floating point approximation (for diagram output).
    pub fn approx(&self) -> f64 {
        let mut acc = 0.0;
        for (d, c) in &self.terms {
            let c = rational_to_f64(c);
            acc += c * (*d as f64).sqrt();
        }
        acc
    }

    /// JSON-friendly canonical form: `[numerator, denominator, radicand]`
    /// triples as decimal strings plus the radicand, sorted by radicand.
    pub fn to_triples(&self) -> Vec<(String, String, u64)> {
        self.terms
            .iter()
            .map(|(d, c)| (c.numer().to_string(), c.denom().to_string(), *d))
            .collect()
    }
}

fn rational_to_f64(q: &BigRational) -> f64 {
    // Exact for the small values used here; falls back to a quotient of
    // approximations otherwise.
    let n = q.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
    let d = q.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
    n / d
}

pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for ExactReal {
    /// Canonical text form, e.g. `3/2*sqrt(2) + 1` or `-sqrt(6)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if *d == 1 {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "sqrt({d})")?;
            } else {
                write!(f, "{}*sqrt({})", format_rational(&mag), d)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for ExactReal {
    type Err = NumError;

    /// Parses the canonical text form produced by `Display`.
    fn from_str(s: &str) -> Result<Self, NumError> {
        let err = || NumError::Parse(s.to_string());
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        // Normalize "a - b" to "a + -b", keeping leading sign attached.
        let mut prepared = String::new();
        for (i, ch) in s.chars().enumerate() {
            if ch == '-' && i > 0 && s[..i].ends_with(' ') {
                prepared.push_str("+ -");
            } else {
                prepared.push(ch);
            }
        }
        for part in prepared.split('+') {
            let part = part.trim().replace(' ', "");
            if part.is_empty() {
                continue;
            }
            let (neg, body) = match part.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, part.as_str()),
            };
            let (coeff_str, rad_str) = match body.find("sqrt(") {
                Some(pos) => {
                    let coeff = body[..pos].trim_end_matches('*');
                    let rad = body[pos + 5..].strip_suffix(')').ok_or_else(err)?;
                    (coeff, rad)
                }
                None => (body, ""),
            };
            let coeff = if coeff_str.is_empty() {
                BigRational::one()
            } else {
                parse_rational(coeff_str).ok_or_else(err)?
            };
            let coeff = if neg { -coeff } else { coeff };
            let d: u64 = if rad_str.is_empty() {
                1
            } else {
                rad_str.parse().map_err(|_| err())?
            };
            if d == 0 {
                return Err(err());
            }
            out += &Self::radical(coeff, d);
        }
        Ok(out)
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.parse().ok()?;
            let q: BigInt = q.parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().ok()?;
            Some(BigRational::from_integer(p))
        }
    }
}

impl Add for &ExactReal {
    type Output = ExactReal;
    fn add(self, rhs: &ExactReal) -> ExactReal {
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            out.insert_term(*d, c.clone());
        }
        out
    }
}

impl AddAssign<&ExactReal> for ExactReal {
    fn add_assign(&mut self, rhs: &ExactReal) {
        for (d, c) in &rhs.terms {
            self.insert_term(*d, c.clone());
        }
    }
}

impl Sub for &ExactReal {
    type Output = ExactReal;
    fn sub(self, rhs: &ExactReal) -> ExactReal {
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            out.insert_term(*d, -c.clone());
        }
        out
    }
}

impl Neg for &ExactReal {
    type Output = ExactReal;
    fn neg(self) -> ExactReal {
        ExactReal {
            terms: self.terms.iter().map(|(d, c)| (*d, -c.clone())).collect(),
        }
    }
}

impl Neg for ExactReal {
    type Output = ExactReal;
    fn neg(self) -> ExactReal {
        -&self
    }
}

impl Mul for &ExactReal {
    type Output = ExactReal;
    fn mul(self, rhs: &ExactReal) -> ExactReal {
        let mut out = ExactReal::zero();
        for (d1, c1) in &self.terms {
            for (d2, c2) in &rhs.terms {
                // sqrt(d1)*sqrt(d2) = g*sqrt(d1*d2/g^2), g = gcd(d1, d2);
                // both inputs square-free, so the result radicand is too.
                let g = gcd_u64(*d1, *d2);
                let d = (d1 / g) * (d2 / g);
                let c = c1 * c2 * BigRational::from_integer(BigInt::from(g));
                out.insert_term(d, c);
            }
        }
        out
    }
}

impl Add for ExactReal {
    type Output = ExactReal;
    fn add(self, rhs: ExactReal) -> ExactReal {
        &self + &rhs
    }
}

impl Sub for ExactReal {
    type Output = ExactReal;
    fn sub(self, rhs: ExactReal) -> ExactReal {
        &self - &rhs
    }
}

impl Mul for ExactReal {
    type Output = ExactReal;
    fn mul(self, rhs: ExactReal) -> ExactReal {
        &self * &rhs
    }
}

impl serde::Serialize for ExactReal {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = ser.serialize_seq(Some(self.terms.len()))?;
        for (d, c) in &self.terms {
            seq.serialize_element(&(c.numer().to_string(), c.denom().to_string(), *d))?;
        }
        seq.end()
    }
}

impl<'de> serde::Deserialize<'de> for ExactReal {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let triples: Vec<(String, String, u64)> = serde::Deserialize::deserialize(de)?;
        let mut out = ExactReal::zero();
        for (n, d, rad) in triples {
            let n: BigInt = n.parse().map_err(serde::de::Error::custom)?;
            let d: BigInt = d.parse().map_err(serde::de::Error::custom)?;
            out += &ExactReal::radical(BigRational::new(n, d), rad);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn like_terms_merge() {
        let v = ExactReal::sqrt_mult(1, 2) + ExactReal::sqrt_mult(1, 2);
        assert_eq!(v, ExactReal::sqrt_mult(2, 2));
    }

    #[test]
    fn cancellation_empties_the_map() {
        let v = ExactReal::sqrt_mult(1, 2) + ExactReal::sqrt_mult(-1, 2);
        assert!(v.is_zero());
    }

    #[test]
    fn rational_part_merges() {
        let v = ExactReal::rational(1, 2) + ExactReal::sqrt_mult(1, 3) + ExactReal::rational(1, 2);
        assert_eq!(v, ExactReal::one() + ExactReal::sqrt_mult(1, 3));
    }

    #[test]
    fn products_reduce_radicands() {
        assert_eq!(
            ExactReal::sqrt_mult(1, 2) * ExactReal::sqrt_mult(1, 3),
            ExactReal::sqrt_mult(1, 6)
        );
        assert_eq!(
            ExactReal::sqrt_mult(1, 2) * ExactReal::sqrt_mult(1, 2),
            ExactReal::from_integer(2)
        );
        // gcd extraction: sqrt(6)*sqrt(2) = 2*sqrt(3)
        assert_eq!(
            ExactReal::sqrt_mult(1, 6) * ExactReal::sqrt_mult(1, 2),
            ExactReal::sqrt_mult(2, 3)
        );
    }

    #[test]
    fn sqrt_rational_examples() {
        // 9/2 = (3/2)^2 * 2
        assert_eq!(
            ExactReal::sqrt_ratio(9, 2),
            ExactReal::radical(r(3, 2), 2)
        );
        assert_eq!(ExactReal::sqrt_ratio(24, 1), ExactReal::sqrt_mult(2, 6));
        assert_eq!(ExactReal::sqrt_ratio(1, 1), ExactReal::one());
        assert!(ExactReal::sqrt_rational(&r(0, 1)).is_err());
        assert!(ExactReal::sqrt_rational(&r(-3, 2)).is_err());
    }

    #[test]
    fn single_term_inverse() {
        let v = ExactReal::sqrt_mult(1, 2);
        assert_eq!(v.invert().unwrap(), ExactReal::radical(r(1, 2), 2));
        let two = ExactReal::from_integer(2);
        assert_eq!(two.invert().unwrap(), ExactReal::rational(1, 2));
        assert!(ExactReal::zero().invert().is_err());
    }

    #[test]
    fn conjugation_inverse() {
        // (1 + sqrt(2))^-1 = -1 + sqrt(2), checked by multiplication
        let v = ExactReal::one() + ExactReal::sqrt_mult(1, 2);
        let inv = v.invert().unwrap();
        assert_eq!(&v * &inv, ExactReal::one());
        assert_eq!(inv, ExactReal::from_integer(-1) + ExactReal::sqrt_mult(1, 2));
    }

    #[test]
    fn signum_is_exact() {
        assert_eq!(ExactReal::zero().signum(), 0);
        // sqrt(2) + sqrt(3) - sqrt(5) > 0 but close to 0.9; the interval
        // refinement must still decide it.
        let v = ExactReal::sqrt_mult(1, 2) + ExactReal::sqrt_mult(1, 3) - ExactReal::sqrt_mult(1, 5);
        assert_eq!(v.signum(), 1);
        // 3 - sqrt(2) - sqrt(3) > 0 barely (3 - 1.414 - 1.732 = -0.146): negative.
        let w = ExactReal::from_integer(3) - ExactReal::sqrt_mult(1, 2) - ExactReal::sqrt_mult(1, 3);
        assert_eq!(w.signum(), -1);
    }

    fn arb_exact() -> impl Strategy<Value = ExactReal> {
        let term = (any::<i8>(), 1..6i64, prop::sample::select(vec![1u64, 2, 3, 5, 6, 10]));
        prop::collection::vec(term, 0..4).prop_map(|ts| {
            let mut v = ExactReal::zero();
            for (p, q, d) in ts {
                v += &ExactReal::radical(r(p as i64, q), d);
            }
            v
        })
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_exact(), b in arb_exact(), c in arb_exact()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a - &a, ExactReal::zero());
        }

        #[test]
        fn inverse_roundtrip(a in arb_exact()) {
            if !a.is_zero() {
                let inv = a.invert().unwrap();
                prop_assert_eq!(&a * &inv, ExactReal::one());
            }
        }

        #[test]
        fn sqrt_squares_back(p in 1..400i64, q in 1..40i64) {
            let v = r(p, q);
            let root = ExactReal::sqrt_rational(&v).unwrap();
            prop_assert_eq!(&root * &root, ExactReal::from_rational(v));
        }

        #[test]
        fn display_parse_roundtrip(a in arb_exact()) {
            let text = a.to_string();
            let back: ExactReal = text.parse().unwrap();
            prop_assert_eq!(back, a);
        }

        #[test]
        fn signum_matches_float(a in arb_exact()) {
            let approx = a.approx();
            if approx.abs() > 1e-6 {
                prop_assert_eq!(a.signum() as f64, approx.signum());
            }
        }
    }
}
