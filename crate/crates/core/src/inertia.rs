//! Exact inertia of adjacency matrices.
//!
//! The characteristic polynomial is computed with Berkowitz's division-free
//! recurrence, first in checked `i128` and, on overflow, in `BigInt`. Since an
//! adjacency matrix is real symmetric, every root of its characteristic
//! polynomial is real and Descartes' rule of signs counts the positive and
//! negative eigenvalues exactly.
//!
//! Two independent oracles are kept for cross-validation: a floating-point
//! symmetric eigensolver and a rational symmetric congruence reduction.

use std::cmp::Ordering;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order accepted by the spectral routines.
pub const MAX_ORDER: usize = 64;

/// Counts of positive, negative and zero adjacency eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct Inertia {
    pub p: usize,
    pub n: usize,
    pub eta: usize,
}

impl Inertia {
    pub fn order(&self) -> usize {
        self.p + self.n + self.eta
    }

    pub fn rank(&self) -> usize {
        self.p + self.n
    }

    pub fn signature(&self) -> i64 {
        self.p as i64 - self.n as i64
    }
}

impl std::ops::Add for Inertia {
    type Output = Inertia;

    fn add(self, rhs: Inertia) -> Inertia {
        Inertia {
            p: self.p + rhs.p,
            n: self.n + rhs.n,
            eta: self.eta + rhs.eta,
        }
    }
}

/// Monic characteristic polynomial `det(xI - A)`, coefficients in
/// ascending degree: `coefficients()[i]` multiplies `x^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPoly {
    coeffs: Vec<BigInt>,
}

impl CharPoly {
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn inertia(&self) -> Inertia {
        let signs: Vec<Ordering> = self.coeffs.iter().map(|c| c.sign_ordering()).collect();
        descartes(&signs)
    }
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

fn check_order(g: &Graph) -> Result<Vec<u64>> {
    if g.order() > MAX_ORDER {
        return Err(Error::TooLarge {
            order: g.order(),
            limit: MAX_ORDER,
        });
    }
    Ok(g.bit_rows().expect("order within 64"))
}

/// Berkowitz recurrence on a zero-diagonal 0/1 symmetric matrix given by
/// bit rows. Returns coefficients in descending degree, or `None` if the
/// arithmetic overflowed.
fn berkowitz<T>(rows: &[u64]) -> Option<Vec<T>>
where
    T: Clone + Zero + One + CheckedAdd + CheckedSub + CheckedMul,
{
    let n = rows.len();
    let mut poly: Vec<T> = vec![T::one()];
    for r in 0..n {
        // Border the leading r x r block M with row/column r (zero diagonal).
        let low = if r == 0 { 0 } else { rows[r] & ((1u64 << r) - 1) };
        let mut toeplitz: Vec<T> = Vec::with_capacity(r + 2);
        toeplitz.push(T::one());
        toeplitz.push(T::zero());
        // v = M^k C, starting from C = column r restricted to 0..r.
        let mut v: Vec<T> = (0..r)
            .map(|i| if low >> i & 1 == 1 { T::one() } else { T::zero() })
            .collect();
        for k in 0..r {
            let mut dot = T::zero();
            for (i, vi) in v.iter().enumerate() {
                if low >> i & 1 == 1 {
                    dot = dot.checked_add(vi)?;
                }
            }
            toeplitz.push(T::zero().checked_sub(&dot)?);
            if k + 1 < r {
                let mut next = Vec::with_capacity(r);
                for i in 0..r {
                    let mut acc = T::zero();
                    let mut mask = rows[i] & ((1u64 << r) - 1);
                    while mask != 0 {
                        let j = mask.trailing_zeros() as usize;
                        acc = acc.checked_add(&v[j])?;
                        mask &= mask - 1;
                    }
                    next.push(acc);
                }
                v = next;
            }
        }
        let mut next = Vec::with_capacity(r + 2);
        for i in 0..r + 2 {
            let mut acc = T::zero();
            for j in i.saturating_sub(r + 1)..=i.min(r) {
                if toeplitz[i - j].is_zero() || poly[j].is_zero() {
                    continue;
                }
                acc = acc.checked_add(&toeplitz[i - j].checked_mul(&poly[j])?)?;
            }
            next.push(acc);
        }
        poly = next;
    }
    Some(poly)
}

pub fn char_poly(g: &Graph) -> Result<CharPoly> {
    let rows = check_order(g)?;
    let descending: Vec<BigInt> = match berkowitz::<i128>(&rows) {
        Some(small) => small.into_iter().map(BigInt::from).collect(),
        None => berkowitz::<BigInt>(&rows).expect("BigInt arithmetic does not overflow"),
    };
    Ok(CharPoly {
        coeffs: descending.into_iter().rev().collect(),
    })
}

/// Inertia from the signs of an ascending coefficient list of a polynomial
/// whose roots are all real.
fn descartes(signs: &[Ordering]) -> Inertia {
    let eta = signs.iter().take_while(|s| s.is_eq()).count();
    let changes = |flip: bool| {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for (i, &s) in signs.iter().enumerate().skip(eta) {
            let s = if flip && i % 2 == 1 { s.reverse() } else { s };
            if s.is_eq() {
                continue;
            }
            if !last.is_eq() && s != last {
                count += 1;
            }
            last = s;
        }
        count
    };
    Inertia {
        p: changes(false),
        n: changes(true),
        eta,
    }
}

pub fn inertia(g: &Graph) -> Result<Inertia> {
    let rows = check_order(g)?;
    let signs: Vec<Ordering> = match berkowitz::<i128>(&rows) {
        Some(small) => small.iter().rev().map(|c| c.cmp(&0)).collect(),
        None => berkowitz::<BigInt>(&rows)
            .expect("BigInt arithmetic does not overflow")
            .iter()
            .rev()
            .map(SignOrdering::sign_ordering)
            .collect(),
    };
    Ok(descartes(&signs))
}

pub fn signature(g: &Graph) -> Result<i64> {
    inertia(g).map(|i| i.signature())
}

pub fn rank(g: &Graph) -> Result<usize> {
    inertia(g).map(|i| i.rank())
}

pub fn nullity(g: &Graph) -> Result<usize> {
    inertia(g).map(|i| i.eta)
}

/// Default zero threshold for [`float_inertia_oracle`].
pub fn default_zero_tolerance(g: &Graph) -> f64 {
    1e-9 * g.order().max(1) as f64
}

/// Inertia from floating-point eigenvalues. `Ok(None)` means the
/// eigensolver did not converge; the exact routines are authoritative.
pub fn float_inertia_oracle(g: &Graph, zero_tolerance: f64) -> Result<Option<Inertia>> {
    check_order(g)?;
    if zero_tolerance.is_nan() || zero_tolerance <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "zero tolerance must be positive, got {zero_tolerance}"
        )));
    }
    let n = g.order();
    if n == 0 {
        return Ok(Some(Inertia::default()));
    }
    let a = DMatrix::from_fn(n, n, |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 });
    let Some(eigen) = a.try_symmetric_eigen(f64::EPSILON, 10_000) else {
        return Ok(None);
    };
    let mut out = Inertia::default();
    for &lambda in eigen.eigenvalues.iter() {
        let lambda: f64 = lambda;
        if lambda.abs() < zero_tolerance {
            out.eta += 1;
        } else if lambda > 0.0 {
            out.p += 1;
        } else {
            out.n += 1;
        }
    }
    Ok(Some(out))
}

/// Inertia by symmetric Gaussian congruence over the rationals, using 1x1
/// pivots on nonzero diagonal entries and 2x2 pivots `[[0, b], [b, 0]]`
/// otherwise. Sylvester's law of inertia makes the tally exact.
pub fn congruence_inertia(g: &Graph) -> Result<Inertia> {
    check_order(g)?;
    let n = g.order();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if g.has_edge(i, j) {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut live: Vec<usize> = (0..n).collect();
    let mut out = Inertia::default();

    loop {
        if let Some(pos) = live.iter().position(|&i| !m[i][i].is_zero()) {
            let i = live.swap_remove(pos);
            let d = m[i][i].clone();
            if d.is_positive() {
                out.p += 1;
            } else {
                out.n += 1;
            }
            for &k in &live {
                if m[k][i].is_zero() {
                    continue;
                }
                let factor = &m[k][i] / &d;
                for &l in &live {
                    if !m[i][l].is_zero() {
                        let delta = &factor * &m[i][l];
                        m[k][l] -= delta;
                    }
                }
            }
            continue;
        }
        let pair = live.iter().enumerate().find_map(|(a, &i)| {
            live[a + 1..]
                .iter()
                .find(|&&j| !m[i][j].is_zero())
                .map(|&j| (i, j))
        });
        let Some((i, j)) = pair else {
            out.eta += live.len();
            break;
        };
        live.retain(|&k| k != i && k != j);
        out.p += 1;
        out.n += 1;
        let b = m[i][j].clone();
        let snapshot: Vec<(usize, BigRational, BigRational)> = live
            .iter()
            .map(|&k| (k, m[k][i].clone(), m[k][j].clone()))
            .collect();
        for (k, ki, kj) in &snapshot {
            for (l, li, lj) in &snapshot {
                let cross = ki * lj + kj * li;
                if !cross.is_zero() {
                    m[*k][*l] -= cross / &b;
                }
            }
        }
    }
    Ok(out)
}
