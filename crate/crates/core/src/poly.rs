//! Exact integer polynomials in one variable `z`.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Polynomial with arbitrary-precision integer coefficients, ascending by
/// degree. Trailing zeros are always trimmed, so the zero polynomial has no
/// coefficients at all.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c·z^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Non-negative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content, keeping the sign of every coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * k).collect())
    }

    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// `p(−z)`
    pub fn reflect(&self) -> IntPoly {
        IntPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// Exact Horner evaluation at an integer.
    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    /// Exact Horner evaluation at a rational.
    pub fn eval_rational(&self, t: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * t + BigRational::from_integer(c.clone())
            })
    }

    /// Sign of `p(num/den)` for `den > 0`, computed without rationals through
    /// the homogenized sum `Σ c_k num^k den^(n−k)`.
    pub fn sign_at(&self, num: &BigInt, den: &BigInt) -> Sign {
        debug_assert!(den.is_positive());
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &den_pow;
            den_pow *= den;
        }
        acc.sign()
    }

    pub fn sign_at_rational(&self, t: &BigRational) -> Sign {
        self.sign_at(t.numer(), t.denom())
    }

    /// Sign as `z → +∞` (`positive == true`) or `z → −∞`.
    pub fn sign_at_infinity(&self, positive: bool) -> Sign {
        match (self.leading(), self.degree()) {
            (None, _) => Sign::NoSign,
            (Some(lc), Some(d)) => {
                if positive || d % 2 == 0 {
                    lc.sign()
                } else {
                    -lc.sign()
                }
            }
            _ => unreachable!(),
        }
    }

    /// Exact division by an integer; `None` if some coefficient is not divisible.
    pub fn div_exact_scalar(&self, k: &BigInt) -> Option<IntPoly> {
        if k.is_zero() {
            return None;
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            coeffs.push(q);
        }
        Some(IntPoly { coeffs })
    }

    /// Exact division in `Z[z]`; `None` when `divisor` does not divide `self`
    /// with an integer quotient.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let dd = divisor.degree()?;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if dd == 0 {
            return self.div_exact_scalar(&divisor.coeffs[0]);
        }
        let lc = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let n = self.degree().unwrap();
        if n < dd {
            return None;
        }
        let mut quot = vec![BigInt::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * d;
            }
            quot[k] = q;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(IntPoly::new(quot))
        } else {
            None
        }
    }

    /// Pseudo-remainder: `lc(b)^(deg a − deg b + 1) · a mod b`.
    pub fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        let db = b.degree().expect("pseudo-remainder by the zero polynomial");
        let Some(da) = self.degree() else {
            return IntPoly::zero();
        };
        if da < db {
            return self.clone();
        }
        let lc = b.leading().unwrap();
        let mut r = self.clone();
        let mut e = da - db + 1;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let s = IntPoly::monomial(r.leading().unwrap().clone(), dr - db);
            r = &r.scale(lc) - &(&s * b);
            e -= 1;
        }
        r.scale(&num_traits::pow(lc.clone(), e))
    }

    /// Primitive gcd over `Z[z]` with positive leading coefficient; content is
    /// ignored. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            core::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        if a.leading().is_some_and(Signed::is_negative) {
            a = -a;
        }
        a
    }

    /// True iff `p(−z) = ±p(z)`, i.e. every coefficient whose index has the
    /// opposite parity to the degree vanishes.
    pub fn has_definite_parity(&self) -> bool {
        let Some(n) = self.degree() else {
            return true;
        };
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, c)| (k + n) % 2 == 0 || c.is_zero())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -self.clone()
    }
}

impl fmt::Display for IntPoly {
    /// Highest degree first, e.g. `-12z^3+5z`; the zero polynomial prints `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            let mag = c.abs();
            if k == 0 || !mag.is_one() {
                write!(f, "{}", mag)?;
            }
            match k {
                0 => {}
                1 => f.write_str("z")?,
                _ => write!(f, "z^{}", k)?,
            }
        }
        Ok(())
    }
}

impl FromStr for IntPoly {
    type Err = Error;

    /// Parses sums of terms `c`, `cz`, `cz^k` in any order, e.g. `-12z^3+5z`.
    /// Both `-` and the Unicode minus sign are accepted; like terms add up.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '−' { '-' } else { c })
            .collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let bytes = cleaned.as_bytes();
        let mut pos = 0;
        let mut acc: Vec<BigInt> = Vec::new();
        let err = |msg: &str| Error::Parse(alloc::format!("{msg} in {s:?}"));
        while pos < bytes.len() {
            let mut negative = false;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                negative = bytes[pos] == b'-';
                pos += 1;
            } else if pos != 0 {
                return Err(err("expected sign between terms"));
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let mut coeff = if pos > start {
                BigInt::from_str(&cleaned[start..pos]).map_err(|_| err("bad coefficient"))?
            } else {
                BigInt::one()
            };
            let mut power = 0usize;
            if pos < bytes.len() && bytes[pos] == b'z' {
                pos += 1;
                power = 1;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let estart = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if pos == estart {
                        return Err(err("missing exponent"));
                    }
                    power = cleaned[estart..pos]
                        .parse()
                        .map_err(|_| err("bad exponent"))?;
                }
            } else if pos == start {
                return Err(err("empty term"));
            }
            if pos < bytes.len() && bytes[pos] != b'+' && bytes[pos] != b'-' {
                return Err(err("unexpected character"));
            }
            if negative {
                coeff = -coeff;
            }
            if acc.len() <= power {
                acc.resize(power + 1, BigInt::zero());
            }
            acc[power] += coeff;
        }
        Ok(IntPoly::new(acc))
    }
}

/// Primitive polynomial with positive leading coefficient: the representative
/// of a polynomial's class under multiplication by nonzero constants.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalizedPoly(IntPoly);

impl NormalizedPoly {
    pub fn as_poly(&self) -> &IntPoly {
        &self.0
    }

    pub fn into_poly(self) -> IntPoly {
        self.0
    }

    pub fn degree(&self) -> usize {
        self.0.degree().unwrap()
    }
}

impl Ord for NormalizedPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.coeffs.iter().rev().cmp(other.0.coeffs.iter().rev()))
    }
}

impl PartialOrd for NormalizedPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for NormalizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Divides by the content and fixes the sign so the leading coefficient is
/// positive.
pub fn normalize(poly: &IntPoly) -> Result<NormalizedPoly> {
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut p = poly.primitive_part();
    if p.leading().unwrap().is_negative() {
        p = -p;
    }
    Ok(NormalizedPoly(p))
}

/// Decimal strings, ascending by degree.
pub fn coeff_strings(poly: &IntPoly) -> Vec<String> {
    poly.coeffs().iter().map(ToString::to_string).collect()
}
