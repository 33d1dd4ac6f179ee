//! Integer polynomials and truncated power series for height-bounded path
//! counting.
//!
//! `q_h(x) = x^{h/2} U_h(1/(2 sqrt x))` and `p_h(x) = 2 x^{h/2} T_h(1/(2 sqrt x))`
//! (Chebyshev polynomials of the second and first kind) are never evaluated
//! through that substitution. They are defined here by the recurrence
//! `f_{h+1} = f_h - x f_{h-1}` that `U` and `T` induce, with
//! `q_0 = q_1 = 1` and `p_0 = 2, p_1 = 1`.

use std::ops::{Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::paths::{ballot, binomial, BallotValue};

/// Polynomial with exact integer coefficients, lowest degree first, with no
/// trailing zero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntPolynomial {
    #[serde(with = "bigint_vec")]
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: i64) -> Self {
        IntPolynomial::from_i64(&[c])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Multiplication by `x`.
    pub fn shift(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigInt::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

/// Coefficients of `x^0 ..= x^order` of a formal power series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPowerSeries {
    coeffs: Vec<BigInt>,
}

impl IntPowerSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    /// Expansion of `num / den` to `x^order`. The constant term of `den`
    /// must be a unit (`±1`) so that every coefficient is an integer.
    pub fn quotient(num: &IntPolynomial, den: &IntPolynomial, order: usize) -> Self {
        let d0 = den.coeff(0);
        assert!(
            d0.abs().is_one(),
            "series division needs a unit constant term, got {d0}"
        );
        let mut out: Vec<BigInt> = Vec::with_capacity(order + 1);
        for i in 0..=order {
            let mut acc = num.coeff(i);
            for j in 1..=i.min(den.coeffs.len().saturating_sub(1)) {
                acc -= &den.coeffs[j] * &out[i - j];
            }
            let (q, r) = acc.div_rem(&d0);
            assert!(r.is_zero());
            out.push(q);
        }
        IntPowerSeries { coeffs: out }
    }
}

fn recurrence(h: usize, f0: i64, f1: i64) -> IntPolynomial {
    let mut prev = IntPolynomial::constant(f0);
    let mut cur = IntPolynomial::constant(f1);
    if h == 0 {
        return prev;
    }
    for _ in 1..h {
        let next = &cur - &prev.shift();
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `q_0 = q_1 = 1`, `q_{h+1} = q_h - x q_{h-1}`; degree `floor(h/2)`.
pub fn chebyshev_q(h: usize) -> IntPolynomial {
    recurrence(h, 1, 1)
}

/// `p_0 = 2`, `p_1 = 1`, `p_{h+1} = p_h - x p_{h-1}`.
pub fn chebyshev_p(h: usize) -> IntPolynomial {
    recurrence(h, 2, 1)
}

/// Number of Dyck `n`-paths of height at most `h`: `[x^n] q_h / q_{h+1}`.
pub fn bounded_height_count(n: usize, h: usize) -> BallotValue {
    IntPowerSeries::quotient(&chebyshev_q(h), &chebyshev_q(h + 1), n)
        .coeff(n)
        .clone()
}

/// Paths of `n + h - 1` upsteps and `n` downsteps from the origin that stay
/// weakly between `y = -r` and `y = s + h - 1`: `[x^n] q_r q_s / q_{r+s+h}`.
pub fn corridor_count(n: usize, h: usize, r: usize, s: usize) -> BallotValue {
    assert!(h >= 1, "corridor_count needs h >= 1");
    let num = &chebyshev_q(r) * &chebyshev_q(s);
    IntPowerSeries::quotient(&num, &chebyshev_q(r + s + h), n)
        .coeff(n)
        .clone()
}

pub type Matrix = Vec<Vec<BigInt>>;

/// `(C^(k)_{n-k})` for `0 <= n, k <= nmax`, zero above the diagonal.
pub fn catalan_triangle(nmax: usize) -> Matrix {
    (0..=nmax as i64)
        .map(|n| (0..=nmax as i64).map(|k| if k <= n { ballot(k, n - k) } else { BigInt::zero() }).collect())
        .collect()
}

/// `((-1)^{n-k} binom(k, n-k))`, the inverse of [`catalan_triangle`].
pub fn catalan_triangle_inverse(nmax: usize) -> Matrix {
    (0..=nmax as i64)
        .map(|n| {
            (0..=nmax as i64)
                .map(|k| {
                    let v = binomial(k, n - k);
                    if (n - k).is_odd() {
                        -v
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect()
}

pub fn matrix_product(a: &Matrix, b: &Matrix) -> Matrix {
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum())
                .collect()
        })
        .collect()
}

pub fn is_identity(m: &Matrix) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
    })
}

mod bigint_vec {
    use std::str::FromStr;

    use num_bigint::BigInt;
    use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
    use serde_json::Number;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|x| Number::from_str(&x.to_string()).map_err(serde::ser::Error::custom))
            .collect::<Result<Vec<_>, _>>()?
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Number>::deserialize(d)?
            .into_iter()
            .map(|n| BigInt::from_str(&n.to_string()).map_err(de::Error::custom))
            .collect()
    }
}
