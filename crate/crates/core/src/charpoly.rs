//! The pencil determinant `P(z) = det(z·D̂ − Â)` over the integers.
//!
//! Two exact routes are provided. [`dirichlet_poly`] runs fraction-free
//! (Bareiss) elimination directly on the matrix of polynomials;
//! [`dirichlet_poly_interpolated`] evaluates integer determinants at
//! `z = 0, 1, …, n` and rebuilds the coefficients from forward differences.
//! They share nothing beyond the interior subgraph, so agreement is a real
//! check.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::graph::{BoundaryConfig, Graph, InteriorSubgraph};
use crate::poly::IntPoly;

/// Integral domain with exact division, enough for Bareiss elimination.
pub trait ExactRing: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Quotient when `divisor` divides `self` exactly.
    fn div_exact(&self, divisor: &Self) -> Self;
}

impl ExactRing for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, divisor: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % divisor)));
        self / divisor
    }
}

impl ExactRing for IntPoly {
    fn zero() -> Self {
        IntPoly::zero()
    }
    fn one() -> Self {
        IntPoly::one()
    }
    fn is_zero(&self) -> bool {
        IntPoly::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, divisor: &Self) -> Self {
        IntPoly::div_exact(self, divisor).expect("Bareiss step divides exactly")
    }
}

/// Fraction-free Gaussian elimination with row pivoting. Every intermediate
/// entry is a minor of the input, so all divisions are exact.
pub fn bareiss_det<T: ExactRing>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    if n == 0 {
        return T::one();
    }
    let mut prev = T::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// `z·D̂ − Â` as a matrix of integer polynomials.
pub fn pencil_matrix(s: &InteriorSubgraph) -> Vec<Vec<IntPoly>> {
    let n = s.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        IntPoly::monomial(BigInt::from(s.weights[i]), 1)
                    } else if s.adjacency[i][j] {
                        IntPoly::constant(BigInt::from(-1))
                    } else {
                        IntPoly::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// `t·D̂ − Â` at an integer `t`.
pub fn pencil_at(s: &InteriorSubgraph, t: &BigInt) -> Vec<Vec<BigInt>> {
    let n = s.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        t * BigInt::from(s.weights[i])
                    } else if s.adjacency[i][j] {
                        BigInt::from(-1)
                    } else {
                        <BigInt as Zero>::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// `det(z·D̂_G − Â)` for the interior subgraph of `g` under `b`, by Bareiss
/// elimination over `Z[z]`.
pub fn dirichlet_poly(g: &Graph, b: &BoundaryConfig) -> Result<IntPoly> {
    let s = g.interior_subgraph(b)?;
    Ok(bareiss_det(pencil_matrix(&s)))
}

/// Same polynomial through integer determinants at `0..=n` and Newton forward
/// differences: `P(z) = Σ_k (Δ^k P(0) / k!) · z(z−1)…(z−k+1)`.
pub fn dirichlet_poly_interpolated(g: &Graph, b: &BoundaryConfig) -> Result<IntPoly> {
    let s = g.interior_subgraph(b)?;
    let n = s.len();
    let mut diffs: Vec<BigInt> = (0..=n)
        .map(|t| bareiss_det(pencil_at(&s, &BigInt::from(t))))
        .collect();
    // diffs[k] becomes Δ^k P(0)
    for k in 1..=n {
        for i in (k..=n).rev() {
            diffs[i] = &diffs[i] - &diffs[i - 1];
        }
    }
    let mut result = IntPoly::zero();
    let mut falling = IntPoly::one();
    let mut factorial = <BigInt as One>::one();
    for (k, d) in diffs.iter().enumerate() {
        if k > 0 {
            factorial *= BigInt::from(k);
            falling = &falling * &IntPoly::from_i64s(&[-(k as i64 - 1), 1]);
        }
        let c = d / &factorial;
        debug_assert!(Zero::is_zero(&(d % &factorial)));
        result = &result + &falling.scale(&c);
    }
    Ok(result)
}

/// Exponent `g − p + r` of the sine factor in the factorized characteristic
/// function; `p_pen − 1` for a tree with every pendant Dirichlet.
pub fn sine_exponent(g: &Graph, b: &BoundaryConfig) -> i64 {
    g.edge_count() as i64 - g.vertex_count() as i64 + b.r() as i64
}
