use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::Error;

/// Largest modulus accepted for prime fields; keeps products of residues inside `u64`.
pub const MAX_MODULUS: u64 = (1 << 31) - 1;

/// The base ring of every object in the crate: ℚ or 𝔽_p with p ≥ 5 prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Rational,
    PrimeField(u64),
}

impl Ring {
    pub fn prime_field(p: u64) -> Result<Ring, Error> {
        if p < 5 {
            return Err(Error::InvalidRing(format!(
                "modulus {p} is below 5; 2 and 3 must be invertible"
            )));
        }
        if p > MAX_MODULUS {
            return Err(Error::InvalidRing(format!("modulus {p} exceeds {MAX_MODULUS}")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("modulus {p} is not prime")));
        }
        Ok(Ring::PrimeField(p))
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            Ring::Rational => None,
            Ring::PrimeField(p) => Some(*p),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Ring::PrimeField(_))
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Ring::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Ring::PrimeField(p) => Scalar::Residue {
                value: v.rem_euclid(*p as i64) as u64,
                modulus: *p,
            },
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        match self {
            Ring::Rational => Scalar::Rational(BigRational::new(num.into(), den.into())),
            Ring::PrimeField(_) => {
                let d = self.from_i64(den).inv().expect("denominator divisible by p");
                self.from_i64(num) * d
            }
        }
    }

    /// The element 1/2, available in every supported ring.
    pub fn half(&self) -> Scalar {
        self.from_ratio(1, 2)
    }

    pub fn zeros(&self, n: usize) -> Vec<Scalar> {
        vec![self.zero(); n]
    }

    /// Standard basis vector `e_i` of length `n`.
    pub fn unit_vector(&self, n: usize, i: usize) -> Vec<Scalar> {
        let mut v = self.zeros(n);
        v[i] = self.one();
        v
    }

    /// Parses an integer or `a/b` literal into this ring.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, Error> {
        let text = text.trim();
        let bad = || Error::InvalidScalar(text.to_string());
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (
                BigInt::from_str(n.trim()).map_err(|_| bad())?,
                BigInt::from_str(d.trim()).map_err(|_| bad())?,
            ),
            None => (BigInt::from_str(text).map_err(|_| bad())?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(bad());
        }
        match self {
            Ring::Rational => Ok(Scalar::Rational(BigRational::new(num, den))),
            Ring::PrimeField(p) => {
                let pb = BigInt::from(*p);
                let n = num.mod_floor(&pb).to_u64().unwrap();
                let d = den.mod_floor(&pb).to_u64().unwrap();
                if d == 0 {
                    return Err(bad());
                }
                let n = Scalar::Residue { value: n, modulus: *p };
                let d = Scalar::Residue { value: d, modulus: *p };
                Ok(n * d.inv().unwrap())
            }
        }
    }

    /// Checks that a scalar lives in this ring.
    pub fn owns(&self, s: &Scalar) -> bool {
        match (self, s) {
            (Ring::Rational, Scalar::Rational(_)) => true,
            (Ring::PrimeField(p), Scalar::Residue { modulus, .. }) => p == modulus,
            _ => false,
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Rational => write!(f, "q"),
            Ring::PrimeField(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Ring, Error> {
        let t = s.trim().to_ascii_lowercase();
        if t == "q" || t == "rational" {
            return Ok(Ring::Rational);
        }
        if let Some(p) = t.strip_prefix("fp:") {
            let p: u64 = p.parse().map_err(|_| Error::InvalidRing(s.to_string()))?;
            return Ring::prime_field(p);
        }
        Err(Error::InvalidRing(s.to_string()))
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact ring element in canonical form: reduced fraction with positive
/// denominator, or a residue in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn ring(&self) -> Ring {
        match self {
            Scalar::Rational(_) => Ring::Rational,
            Scalar::Residue { modulus, .. } => Ring::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: inv_mod(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// Integer representative when the value is integral (always for residues).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(r) if r.is_integer() => r.to_integer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Residue { value, .. } => Some(*value as i64),
        }
    }

    fn expect_same(&self, other: &Scalar) -> u64 {
        match (self, other) {
            (Scalar::Residue { modulus: p, .. }, Scalar::Residue { modulus: q, .. }) if p == q => *p,
            (Scalar::Rational(_), Scalar::Rational(_)) => 0,
            _ => panic!("mixed-ring arithmetic: {} vs {}", self.ring(), other.ring()),
        }
    }
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "{a} not invertible mod {p}");
    t.rem_euclid(p as i64) as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let p = self.expect_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, .. }, Scalar::Residue { value: b, .. }) => Scalar::Residue {
                value: (a + b) % p,
                modulus: p,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let p = self.expect_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Residue { value: a, .. }, Scalar::Residue { value: b, .. }) => Scalar::Residue {
                value: (a + p - b) % p,
                modulus: p,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let p = self.expect_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, .. }, Scalar::Residue { value: b, .. }) => Scalar::Residue {
                value: (a * b) % p,
                modulus: p,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: &Scalar) -> Scalar {
                (&self).$f(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                self.$f(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a += b,
            (Scalar::Residue { value, modulus }, Scalar::Residue { value: b, modulus: q }) => {
                assert_eq!(modulus, q, "mixed-ring arithmetic");
                *value = (*value + b) % *modulus;
            }
            (a, b) => panic!("mixed-ring arithmetic: {} vs {}", a.ring(), b.ring()),
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self += &(-rhs);
    }
}

/// `y += c * x` on coordinate vectors.
pub fn axpy(y: &mut [Scalar], c: &Scalar, x: &[Scalar]) {
    debug_assert_eq!(y.len(), x.len());
    if c.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += &(c * xi);
        }
    }
}

pub fn vec_add(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn vec_sub(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn vec_scale(c: &Scalar, x: &[Scalar]) -> Vec<Scalar> {
    x.iter().map(|a| c * a).collect()
}

pub fn is_zero_vec(x: &[Scalar]) -> bool {
    x.iter().all(Scalar::is_zero)
}

/// `[a, b, c]` with scalars in their text form.
pub fn format_vec(x: &[Scalar]) -> String {
    let parts: Vec<String> = x.iter().map(Scalar::to_string).collect();
    format!("[{}]", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_parsing() {
        assert_eq!("q".parse::<Ring>().unwrap(), Ring::Rational);
        assert_eq!("fp:5".parse::<Ring>().unwrap(), Ring::PrimeField(5));
        assert!("fp:3".parse::<Ring>().is_err());
        assert!("fp:9".parse::<Ring>().is_err());
        assert!("z".parse::<Ring>().is_err());
        assert_eq!(Ring::PrimeField(7).to_string(), "fp:7");
    }

    #[test]
    fn canonical_forms() {
        let q = Ring::Rational;
        assert_eq!(q.parse_scalar("4/-6").unwrap().to_string(), "-2/3");
        assert_eq!(q.parse_scalar("10/5").unwrap().to_string(), "2");
        let f = Ring::PrimeField(5);
        assert_eq!(f.parse_scalar("-1").unwrap().to_string(), "4");
        assert_eq!(f.parse_scalar("1/2").unwrap().to_string(), "3");
        assert!(f.parse_scalar("1/5").is_err());
        assert!(q.parse_scalar("x").is_err());
    }

    #[test]
    fn residue_arithmetic() {
        let f = Ring::PrimeField(5);
        let two = f.from_i64(2);
        assert_eq!(two.inv().unwrap(), f.from_i64(3));
        assert_eq!(&two * &f.from_i64(3), f.one());
        assert_eq!(-&two, f.from_i64(3));
        assert_eq!(&two - &f.from_i64(4), f.from_i64(3));
        assert!(f.zero().inv().is_none());
        assert_eq!(f.half(), f.from_i64(3));
    }

    #[test]
    fn large_prime_inverse() {
        let f = Ring::prime_field(MAX_MODULUS).unwrap();
        let a = f.from_i64(123_456_789);
        assert!((&a * &a.inv().unwrap()).is_one());
    }

    #[test]
    #[should_panic(expected = "mixed-ring")]
    fn mixed_rings_panic() {
        let _ = Ring::Rational.one() + Ring::PrimeField(5).one();
    }
}
