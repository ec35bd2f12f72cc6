//! Exact arithmetic in `Z[phi]` and its fraction field `Q(phi)`, where
//! `phi = (1 + sqrt 5) / 2` satisfies `phi^2 = phi + 1`.
//!
//! Elements are stored in the basis `(1, phi)`, so ring elements always have
//! integer coordinates. `sqrt 5` is `2*phi - 1`. The nontrivial Galois
//! automorphism `tau` sends `phi` to `phibar = 1 - phi`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `phi` as a double, used only when exact values are handed to the simulator.
pub const PHI_F64: f64 = 1.618_033_988_749_895;

/// An element `a + b*phi` of `Z[phi]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GoldenInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl GoldenInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Self {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn from_int(a: impl Into<BigInt>) -> Self {
        Self::new(a, 0)
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn phi() -> Self {
        Self::new(0, 1)
    }

    /// `phibar = tau(phi) = 1 - phi`.
    pub fn phibar() -> Self {
        Self::new(1, -1)
    }

    /// `sqrt 5 = 2*phi - 1`.
    pub fn sqrt5() -> Self {
        Self::new(-1, 2)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// True when the `phi` coordinate vanishes.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugation: `a + b*phi -> (a + b) - b*phi`.
    pub fn conj(&self) -> Self {
        Self {
            a: &self.a + &self.b,
            b: -&self.b,
        }
    }

    /// `u * tau(u) = a^2 + ab - b^2`.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Membership in `A = {0, ±1, ±2, ±phi, ±phibar}`.
    pub fn in_a(&self) -> bool {
        a_index(self).is_some()
    }

    pub fn to_f64(&self) -> f64 {
        big_to_f64(&self.a) + big_to_f64(&self.b) * PHI_F64
    }

    /// Exact sign of the real number `a + b*phi`.
    pub fn signum(&self) -> Ordering {
        // a + b*phi = (s + t*sqrt 5) / 2 with s = 2a + b, t = b
        let s: BigInt = BigInt::from(2) * &self.a + &self.b;
        let t = &self.b;
        let zero = BigInt::zero();
        match (s.cmp(&zero), t.cmp(&zero)) {
            (Ordering::Equal, Ordering::Equal) => Ordering::Equal,
            (Ordering::Greater | Ordering::Equal, Ordering::Greater | Ordering::Equal) => Ordering::Greater,
            (Ordering::Less | Ordering::Equal, Ordering::Less | Ordering::Equal) => Ordering::Less,
            (Ordering::Greater, Ordering::Less) => (&s * &s).cmp(&(BigInt::from(5) * t * t)),
            (Ordering::Less, Ordering::Greater) => (BigInt::from(5) * t * t).cmp(&(&s * &s)),
        }
    }
}

impl From<i64> for GoldenInt {
    fn from(a: i64) -> Self {
        Self::from_int(a)
    }
}

fn big_to_f64(n: &BigInt) -> f64 {
    n.to_f64().unwrap_or(if n.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

impl<'a> Add<&'a GoldenInt> for &'a GoldenInt {
    type Output = GoldenInt;
    fn add(self, rhs: &GoldenInt) -> GoldenInt {
        GoldenInt {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl<'a> Sub<&'a GoldenInt> for &'a GoldenInt {
    type Output = GoldenInt;
    fn sub(self, rhs: &GoldenInt) -> GoldenInt {
        GoldenInt {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl<'a> Mul<&'a GoldenInt> for &'a GoldenInt {
    type Output = GoldenInt;
    fn mul(self, rhs: &GoldenInt) -> GoldenInt {
        let bb = &self.b * &rhs.b;
        GoldenInt {
            a: &self.a * &rhs.a + &bb,
            b: &self.a * &rhs.b + &rhs.a * &self.b + bb,
        }
    }
}

impl Neg for &GoldenInt {
    type Output = GoldenInt;
    fn neg(self) -> GoldenInt {
        GoldenInt {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl Neg for GoldenInt {
    type Output = GoldenInt;
    fn neg(self) -> GoldenInt {
        GoldenInt {
            a: -self.a,
            b: -self.b,
        }
    }
}

macro_rules! forward_owned_binop {
    ($t:ty, $tr:ident, $m:ident) => {
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a $t> for $t {
            type Output = $t;
            fn $m(self, rhs: &'a $t) -> $t {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned_binop!(GoldenInt, Add, add);
forward_owned_binop!(GoldenInt, Sub, sub);
forward_owned_binop!(GoldenInt, Mul, mul);

impl fmt::Display for GoldenInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        GoldenRational::from(self.clone()).fmt(f)
    }
}

/// The nine elements of `A`, in the fixed order used for report keys.
pub fn a_set() -> [GoldenInt; 9] {
    [
        GoldenInt::from_int(0),
        GoldenInt::from_int(1),
        GoldenInt::from_int(-1),
        GoldenInt::from_int(2),
        GoldenInt::from_int(-2),
        GoldenInt::phi(),
        -GoldenInt::phi(),
        GoldenInt::phibar(),
        -GoldenInt::phibar(),
    ]
}

/// Report labels, aligned with [`a_set`].
pub const A_LABELS: [&str; 9] = ["0", "1", "-1", "2", "-2", "phi", "-phi", "phibar", "-phibar"];

/// Position of `u` in [`a_set`], if any.
pub fn a_index(u: &GoldenInt) -> Option<usize> {
    let a = u.a.to_i64()?;
    let b = u.b.to_i64()?;
    match (a, b) {
        (0, 0) => Some(0),
        (1, 0) => Some(1),
        (-1, 0) => Some(2),
        (2, 0) => Some(3),
        (-2, 0) => Some(4),
        (0, 1) => Some(5),
        (0, -1) => Some(6),
        (1, -1) => Some(7),
        (-1, 1) => Some(8),
        _ => None,
    }
}

/// Label of an element of `A` (`"phibar"` rather than `"1 - phi"`).
pub fn a_label(u: &GoldenInt) -> Result<&'static str> {
    a_index(u)
        .map(|i| A_LABELS[i])
        .ok_or_else(|| Error::NotInA(u.to_string()))
}

/// An element `(a + b*phi) / den` of `Q(phi)` with one shared denominator.
///
/// Canonical form: `den > 0` and `gcd(a, b, den) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RationalRepr", into = "RationalRepr")]
pub struct GoldenRational {
    num: GoldenInt,
    den: BigInt,
}

impl GoldenRational {
    pub fn new(num: GoldenInt, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(mut num: GoldenInt, mut den: BigInt) -> Self {
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        let g = num.a.gcd(&num.b).gcd(&den);
        if !g.is_zero() && !g.is_one() {
            num.a /= &g;
            num.b /= &g;
            den /= &g;
        }
        if num.is_zero() {
            den = BigInt::one();
        }
        Self { num, den }
    }

    pub fn from_parts(a: i64, b: i64, den: i64) -> Result<Self> {
        Self::new(GoldenInt::new(a, b), den)
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self {
            num: GoldenInt::from_int(n),
            den: BigInt::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn phi() -> Self {
        GoldenInt::phi().into()
    }

    pub fn phibar() -> Self {
        GoldenInt::phibar().into()
    }

    pub fn numer(&self) -> &GoldenInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.a.is_one() && self.num.b.is_zero() && self.den.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.num.is_rational()
    }

    /// The value as an element of `Z`, when it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        (self.num.is_rational() && self.den.is_one()).then(|| self.num.a.clone())
    }

    /// The value as an element of `Z[phi]`, when it is one.
    pub fn to_golden_int(&self) -> Option<GoldenInt> {
        self.den.is_one().then(|| self.num.clone())
    }

    pub fn conj(&self) -> Self {
        Self {
            num: self.num.conj(),
            den: self.den.clone(),
        }
    }

    /// `u * tau(u)`, a rational number.
    pub fn norm(&self) -> Self {
        Self::normalized(GoldenInt::from_int(self.num.norm()), &self.den * &self.den)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // 1/u = tau(u) / N(u)
        let n = self.num.norm();
        let num = &self.num.conj() * &GoldenInt::from_int(self.den.clone());
        Ok(Self::normalized(num, n))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, exp: u32) -> Self {
        Self {
            num: self.num.pow(exp),
            den: self.den.pow(exp),
        }
    }

    pub fn signum(&self) -> Ordering {
        self.num.signum()
    }

    pub fn to_f64(&self) -> f64 {
        // Divide each coordinate first to keep large numerators finite.
        let (qa, ra) = self.num.a.div_rem(&self.den);
        let (qb, rb) = self.num.b.div_rem(&self.den);
        let d = big_to_f64(&self.den);
        let a = big_to_f64(&qa) + big_to_f64(&ra) / d;
        let b = big_to_f64(&qb) + big_to_f64(&rb) / d;
        a + b * PHI_F64
    }
}

impl From<GoldenInt> for GoldenRational {
    fn from(num: GoldenInt) -> Self {
        Self {
            num,
            den: BigInt::one(),
        }
    }
}

impl From<i64> for GoldenRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<'a> Add<&'a GoldenRational> for &'a GoldenRational {
    type Output = GoldenRational;
    fn add(self, rhs: &GoldenRational) -> GoldenRational {
        if self.den == rhs.den {
            return GoldenRational::normalized(&self.num + &rhs.num, self.den.clone());
        }
        let l = GoldenInt::from_int(rhs.den.clone());
        let r = GoldenInt::from_int(self.den.clone());
        GoldenRational::normalized(&(&self.num * &l) + &(&rhs.num * &r), &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a GoldenRational> for &'a GoldenRational {
    type Output = GoldenRational;
    fn sub(self, rhs: &GoldenRational) -> GoldenRational {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a GoldenRational> for &'a GoldenRational {
    type Output = GoldenRational;
    fn mul(self, rhs: &GoldenRational) -> GoldenRational {
        GoldenRational::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &GoldenRational {
    type Output = GoldenRational;
    fn neg(self) -> GoldenRational {
        GoldenRational {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for GoldenRational {
    type Output = GoldenRational;
    fn neg(self) -> GoldenRational {
        GoldenRational {
            num: -self.num,
            den: self.den,
        }
    }
}

forward_owned_binop!(GoldenRational, Add, add);
forward_owned_binop!(GoldenRational, Sub, sub);
forward_owned_binop!(GoldenRational, Mul, mul);

fn fmt_fraction(n: &BigInt, d: &BigInt) -> String {
    let g = n.gcd(d);
    let (n, d) = (n / &g, d / &g);
    if d.is_one() {
        n.to_string()
    } else {
        format!("{n}/{d}")
    }
}

/// Printed as `a/d + b/d*phi`, each part reduced, zero parts suppressed.
impl fmt::Display for GoldenRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let GoldenInt { a, b } = &self.num;
        let phi_part = |b: &BigInt| -> String {
            match fmt_fraction(b, &self.den).as_str() {
                "1" => "phi".to_string(),
                "-1" => "-phi".to_string(),
                s => format!("{s}*phi"),
            }
        };
        if b.is_zero() {
            return f.write_str(&fmt_fraction(a, &self.den));
        }
        if a.is_zero() {
            return f.write_str(&phi_part(b));
        }
        let lead = fmt_fraction(a, &self.den);
        if b.is_negative() {
            write!(f, "{lead} - {}", phi_part(&-b))
        } else {
            write!(f, "{lead} + {}", phi_part(b))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    a: String,
    b: String,
    den: String,
}

impl From<GoldenRational> for RationalRepr {
    fn from(v: GoldenRational) -> Self {
        Self {
            a: v.num.a.to_string(),
            b: v.num.b.to_string(),
            den: v.den.to_string(),
        }
    }
}

impl TryFrom<RationalRepr> for GoldenRational {
    type Error = Error;

    fn try_from(r: RationalRepr) -> Result<Self> {
        let int = |s: &str| {
            s.parse::<BigInt>()
                .map_err(|_| Error::Invalid(format!("not a decimal integer: {s:?}")))
        };
        let den = int(&r.den)?;
        if !den.is_positive() {
            return Err(Error::Invalid(format!("denominator must be positive, got {den}")));
        }
        GoldenRational::new(GoldenInt::new(int(&r.a)?, int(&r.b)?), den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gi(a: i64, b: i64) -> GoldenInt {
        GoldenInt::new(a, b)
    }

    #[test]
    fn phi_squared() {
        assert_eq!(&GoldenInt::phi() * &GoldenInt::phi(), gi(1, 1));
        assert_eq!(&GoldenInt::phi() * &GoldenInt::phibar(), gi(-1, 0));
        assert_eq!(gi(2, 0) * gi(2, 0), gi(4, 0));
    }

    #[test]
    fn conjugation() {
        assert_eq!(GoldenInt::phi().conj(), gi(1, -1));
        assert_eq!(gi(5, 0).conj(), gi(5, 0));
        let u = gi(3, 2);
        assert_eq!(u.conj().conj(), u);
        assert_eq!(GoldenInt::sqrt5().conj(), -GoldenInt::sqrt5());
    }

    #[test]
    fn norms() {
        assert_eq!(GoldenInt::phi().norm(), BigInt::from(-1));
        assert_eq!(gi(2, 0).norm(), BigInt::from(4));
        assert_eq!(gi(-2, 0).norm(), BigInt::from(4));
        assert_eq!(GoldenInt::zero().norm(), BigInt::from(0));
        let mut norms: Vec<i64> = a_set().iter().map(|u| u.norm().to_i64().unwrap()).collect();
        norms.sort();
        assert_eq!(norms, vec![-1, -1, -1, -1, 0, 1, 1, 4, 4]);
    }

    #[test]
    fn membership() {
        assert!((-GoldenInt::phi()).in_a());
        assert!(!gi(3, 0).in_a());
        assert!(gi(1, -1).in_a());
        assert!(!gi(1, 1).in_a());
        for u in a_set() {
            assert!(u.conj().in_a());
            assert!((-&u).in_a());
        }
        assert_eq!(a_label(&GoldenInt::phibar()).unwrap(), "phibar");
        assert!(matches!(a_label(&gi(7, 0)), Err(Error::NotInA(_))));
    }

    #[test]
    fn division() {
        let one = GoldenRational::one();
        let four = GoldenRational::from(4);
        assert_eq!(
            one.checked_div(&four).unwrap(),
            GoldenRational::from_parts(1, 0, 4).unwrap()
        );
        let u = GoldenRational::from(gi(2, 1));
        assert_eq!(u.checked_div(&u).unwrap(), one);
        // phi * (phi - 1) = phi^2 - phi = 1
        assert_eq!(
            one.checked_div(&GoldenRational::phi()).unwrap(),
            GoldenRational::from(gi(-1, 1))
        );
        assert_eq!(
            one.checked_div(&GoldenRational::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn canonical_form() {
        let v = GoldenRational::from_parts(4, 6, -8).unwrap();
        assert_eq!(v.numer(), &gi(-2, -3));
        assert_eq!(v.denom(), &BigInt::from(4));
        assert_eq!(
            GoldenRational::from_parts(0, 0, 7).unwrap().denom(),
            &BigInt::from(1)
        );
        assert_eq!(GoldenRational::from_parts(1, 1, 0), Err(Error::DivisionByZero));
    }

    #[test]
    fn display() {
        let show = |a, b, d| GoldenRational::from_parts(a, b, d).unwrap().to_string();
        assert_eq!(show(0, 0, 1), "0");
        assert_eq!(show(3, 0, 1), "3");
        assert_eq!(show(1, 0, 4), "1/4");
        assert_eq!(show(0, 1, 1), "phi");
        assert_eq!(show(0, -1, 1), "-phi");
        assert_eq!(show(1, -1, 1), "1 - phi");
        assert_eq!(show(1, 3, 2), "1/2 + 3/2*phi");
        assert_eq!(show(2, 1, 2), "1 + 1/2*phi");
    }

    #[test]
    fn signs() {
        assert_eq!(GoldenInt::phi().signum(), Ordering::Greater);
        assert_eq!(GoldenInt::phibar().signum(), Ordering::Less);
        assert_eq!(gi(-1, 1).signum(), Ordering::Greater);
        assert_eq!(gi(2, -1).signum(), Ordering::Greater);
        assert_eq!(gi(1, -1).signum(), Ordering::Less);
        assert_eq!(gi(0, 0).signum(), Ordering::Equal);
    }

    #[test]
    fn json_shape() {
        let v = GoldenRational::from_parts(1, -3, 2).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"a":"1","b":"-3","den":"2"}"#);
        let back: GoldenRational = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        let unreduced: GoldenRational = serde_json::from_str(r#"{"a":"2","b":"4","den":"6"}"#).unwrap();
        assert_eq!(unreduced, GoldenRational::from_parts(1, 2, 3).unwrap());
        assert!(serde_json::from_str::<GoldenRational>(r#"{"a":"1","b":"0","den":"0"}"#).is_err());
    }
}
