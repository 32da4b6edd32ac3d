//! Exact real-root counting and isolation with Sturm sequences.
//!
//! Sequences are built from pseudo-remainders over `Z[z]` with the sign
//! corrected so that each member agrees in sign with the classical
//! (rational) Sturm chain; only signs are ever inspected.

use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::poly::IntPoly;

/// Endpoint of a counting interval.
#[derive(Clone, Debug, PartialEq)]
pub enum Bound {
    NegInfinity,
    At(BigRational),
    PosInfinity,
}

#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<IntPoly>,
}

impl SturmSequence {
    pub fn new(p: &IntPoly) -> SturmSequence {
        let mut chain = Vec::new();
        if p.is_zero() {
            return SturmSequence { chain };
        }
        chain.push(p.primitive_part());
        let d = p.derivative();
        if d.is_zero() {
            return SturmSequence { chain };
        }
        chain.push(d.primitive_part());
        loop {
            let n = chain.len();
            let (a, b) = (&chain[n - 2], &chain[n - 1]);
            let r = a.pseudo_rem(b);
            if r.is_zero() {
                break;
            }
            // r = lc(b)^e · rem(a, b) with e = deg a − deg b + 1
            let e = a.degree().unwrap() - b.degree().unwrap() + 1;
            let multiplier_negative = b.leading().unwrap().is_negative() && e % 2 == 1;
            let next = if multiplier_negative { r } else { -r };
            chain.push(next.primitive_part());
        }
        SturmSequence { chain }
    }

    pub fn variations(&self, at: &Bound) -> usize {
        let mut count = 0;
        let mut prev = Sign::NoSign;
        for q in &self.chain {
            let s = match at {
                Bound::NegInfinity => q.sign_at_infinity(false),
                Bound::PosInfinity => q.sign_at_infinity(true),
                Bound::At(t) => q.sign_at_rational(t),
            };
            if s == Sign::NoSign {
                continue;
            }
            if prev != Sign::NoSign && s != prev {
                count += 1;
            }
            prev = s;
        }
        count
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &Bound, hi: &Bound) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }
}

/// Number of distinct real roots in `(lo, hi]`.
pub fn count_distinct_roots(p: &IntPoly, lo: &Bound, hi: &Bound) -> usize {
    SturmSequence::new(p).count(lo, hi)
}

/// Number of distinct real roots in the closed interval `[a, b]`.
pub fn count_distinct_roots_closed(p: &IntPoly, a: &BigRational, b: &BigRational) -> usize {
    let at_a = usize::from(p.sign_at_rational(a) == Sign::NoSign);
    count_distinct_roots(p, &Bound::At(a.clone()), &Bound::At(b.clone())) + at_a
}

/// `p / gcd(p, p')`, primitive with positive leading coefficient.
pub fn squarefree_part(p: &IntPoly) -> IntPoly {
    let g = p.gcd(&p.derivative());
    let s = p
        .primitive_part()
        .div_exact(&g)
        .expect("gcd divides its argument");
    if s.leading().is_some_and(Signed::is_negative) {
        -s
    } else {
        s
    }
}

/// Integer `B` with every real root strictly inside `(−B, B)` (Cauchy bound).
pub fn root_bound(p: &IntPoly) -> BigInt {
    let lc = p.leading().expect("nonzero polynomial").abs();
    let max = p.coeffs().iter().map(Signed::abs).max().unwrap();
    BigInt::one() + (max + &lc - BigInt::one()) / lc + BigInt::one()
}

/// A real root known to lie in `(lo, hi]`, with its multiplicity in the
/// original polynomial.
#[derive(Clone, Debug)]
pub struct IsolatedRoot {
    pub lo: BigRational,
    pub hi: BigRational,
    pub multiplicity: usize,
}

impl IsolatedRoot {
    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn approx(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

fn half(a: &BigRational, b: &BigRational) -> BigRational {
    (a + b) / BigRational::from_integer(BigInt::from(2))
}

/// Disjoint intervals `(lo, hi]`, increasing, each holding exactly one
/// distinct real root of `p`, narrowed to width at most `width`.
pub fn isolate_real_roots(p: &IntPoly, width: &BigRational) -> Vec<IsolatedRoot> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let s = squarefree_part(p);
    let seq = SturmSequence::new(&s);
    let b = BigRational::from_integer(root_bound(&s));
    let mut work = alloc::vec![(-b.clone(), b)];
    let mut found = Vec::new();
    while let Some((lo, hi)) = work.pop() {
        let n = seq.count(&Bound::At(lo.clone()), &Bound::At(hi.clone()));
        match n {
            0 => {}
            1 => found.push((lo, hi)),
            _ => {
                let mid = half(&lo, &hi);
                work.push((mid.clone(), hi));
                work.push((lo, mid));
            }
        }
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    found
        .into_iter()
        .map(|(mut lo, mut hi)| {
            while &(&hi - &lo) > width {
                if s.sign_at_rational(&hi) == Sign::NoSign {
                    lo = hi.clone();
                    break;
                }
                let mid = half(&lo, &hi);
                if seq.count(&Bound::At(lo.clone()), &Bound::At(mid.clone())) == 1 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let multiplicity = multiplicity_in(p, &s, &lo, &hi);
            IsolatedRoot {
                lo,
                hi,
                multiplicity,
            }
        })
        .collect()
}

/// Multiplicity in `p` of the single root of its squarefree part `s` lying in
/// `(lo, hi]`: the first derivative order that no longer shares it.
fn multiplicity_in(p: &IntPoly, s: &IntPoly, lo: &BigRational, hi: &BigRational) -> usize {
    let mut deriv = p.derivative();
    let mut k = 1;
    loop {
        if deriv.is_zero() {
            return k;
        }
        let g = s.gcd(&deriv);
        let shares = g.degree().unwrap_or(0) > 0
            && (lo == hi && g.sign_at_rational(hi) == Sign::NoSign
                || lo != hi
                    && count_distinct_roots(&g, &Bound::At(lo.clone()), &Bound::At(hi.clone()))
                        > 0);
        if !shares {
            return k;
        }
        deriv = deriv.derivative();
        k += 1;
    }
}

/// Real roots as `(value, multiplicity)`, increasing, each accurate to well
/// below `f64` resolution for roots of modest size.
pub fn real_roots(p: &IntPoly) -> Vec<(f64, usize)> {
    let width = BigRational::new(BigInt::one(), BigInt::one() << 64);
    isolate_real_roots(p, &width)
        .into_iter()
        .map(|r| (r.approx(), r.multiplicity))
        .collect()
}

/// Real roots counted with multiplicity.
pub fn count_real_roots_with_multiplicity(p: &IntPoly) -> usize {
    let width = BigRational::from_integer(BigInt::one());
    isolate_real_roots(p, &width)
        .iter()
        .map(|r| r.multiplicity)
        .sum()
}

/// `true` when every complex root is real and lies strictly inside `(−1, 1)`.
pub fn all_roots_in_open_unit_interval(p: &IntPoly) -> bool {
    let Some(deg) = p.degree() else {
        return false;
    };
    let one = BigRational::one();
    if p.sign_at_rational(&one) == Sign::NoSign || p.sign_at_rational(&-one.clone()) == Sign::NoSign
    {
        return false;
    }
    let inside = count_distinct_roots(p, &Bound::At(-one.clone()), &Bound::At(one));
    let total = count_distinct_roots(p, &Bound::NegInfinity, &Bound::PosInfinity);
    inside == total && count_real_roots_with_multiplicity(p) == deg
}
