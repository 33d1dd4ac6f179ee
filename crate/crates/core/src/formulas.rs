//! Closed-form counts of permutations with a prescribed number of copies of
//! a pattern, in terms of ballot numbers, binomials and powers of two.
//!
//! Every formula is total for `n >= 1`: ballot numbers with a negative
//! subscript and out-of-range binomials vanish, so small `n` need no
//! special cases.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::paths::{ballot, binomial, BallotValue};

/// Restrictions on 321-avoiders with a ballot-number count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassConstraint {
    /// `pi_1 = k`.
    FirstEntryEq(usize),
    /// `pi_1 >= m`.
    FirstEntryGe(usize),
    /// `1` occurs at position `>= m`.
    OneNotBeforePos(usize),
    /// `n` occurs no later than the `m`-th position from the end, i.e. at
    /// position `<= n + 1 - m`.
    MaxNotAfterPosFromEnd(usize),
    /// Last entry `<= v`.
    LastEntryLe(usize),
    /// `pi_1 >= 2` and last entry `<= n - 1`.
    FirstGe2AndLastLeNminus1,
    /// The last `i` entries increase.
    LastIIncreasing(usize),
}

/// The counting problems with a closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CountFamily {
    /// Exactly one 132.
    P132One,
    /// Exactly `k` copies of 321, `k` in `1..=4`.
    P321(u8),
    /// Exactly one 321 and the last two entries increasing.
    P321OneLast2Up,
    /// Exactly two 321s and the last two entries increasing.
    P321TwoLast2Up,
    /// Avoiding both 123 and 132.
    SimionSchmidt,
    /// Avoiding 123 with exactly `k` copies of 132, `k` in `1..=4`.
    Avoid123With132(u8),
    /// 321-avoiders subject to a constraint.
    Avoider321(ClassConstraint),
}

impl CountFamily {
    /// The families with a stable command-line name.
    pub fn named() -> Vec<CountFamily> {
        use CountFamily::*;
        let mut out = vec![P132One];
        out.extend((1..=4).map(P321));
        out.extend([P321OneLast2Up, P321TwoLast2Up, SimionSchmidt]);
        out.extend((1..=4).map(Avoid123With132));
        out
    }

    /// Smallest `n` at which the family is nonempty. Used only to pick
    /// sensible table ranges.
    pub fn first_nonzero(&self) -> usize {
        use CountFamily::*;
        match self {
            P132One => 3,
            P321(k) => [0, 3, 4, 5, 4][*k as usize],
            P321OneLast2Up => 4,
            P321TwoLast2Up => 4,
            SimionSchmidt => 1,
            Avoid123With132(k) => [0, 3, 4, 4, 5][*k as usize],
            Avoider321(_) => 1,
        }
    }
}

impl fmt::Display for CountFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use CountFamily::*;
        match self {
            P132One => write!(f, "p132-1"),
            P321(k) => write!(f, "p321-{k}"),
            P321OneLast2Up => write!(f, "p321-1-last2up"),
            P321TwoLast2Up => write!(f, "p321-2-last2up"),
            SimionSchmidt => write!(f, "simion-schmidt"),
            Avoid123With132(k) => write!(f, "p123avoid-132-{k}"),
            Avoider321(c) => write!(f, "avoider321:{c:?}"),
        }
    }
}

impl FromStr for CountFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CountFamily::named()
            .into_iter()
            .find(|f| f.to_string() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown family `{s}`")))
    }
}

fn c(k: i64, n: i64) -> BigInt {
    ballot(k, n)
}

/// `binom(a, b) * 2^e`, zero whenever the binomial is.
fn binom_pow2(a: i64, b: i64, e: i64) -> BigInt {
    let v = binomial(a, b);
    if v.is_zero() {
        return v;
    }
    assert!(e >= 0, "2^{e} paired with nonzero binom({a}, {b})");
    v << e as usize
}

pub fn count(family: CountFamily, n: i64) -> Result<BallotValue> {
    use CountFamily::*;
    if n < 1 {
        return Err(Error::InvalidInput(format!("n must be at least 1, got {n}")));
    }
    let v = match family {
        P132One => binomial(2 * n - 3, n - 3),
        P321(1) => c(6, n - 3),
        P321(2) => 3 * c(8, n - 4) + c(11, n - 6),
        P321(3) => 7 * c(10, n - 5) + 6 * c(13, n - 7) + c(16, n - 9),
        P321(4) => {
            13 * c(12, n - 6)
                + 19 * c(15, n - 8)
                + 9 * c(18, n - 10)
                + c(21, n - 12)
                + 4 * c(14, n - 7)
                + 5 * c(10, n - 5)
                + c(6, n - 4)
                - 2 * c(8, n - 5)
        }
        P321(k) => {
            return Err(Error::Unsupported(format!(
                "no closed form for {k} copies of 321"
            )))
        }
        P321OneLast2Up => 2 * c(6, n - 4) + c(9, n - 6),
        P321TwoLast2Up => {
            4 * c(8, n - 5) + 3 * c(11, n - 7) + c(14, n - 9) + 2 * c(10, n - 6) + 2 * c(6, n - 4)
                - c(4, n - 4)
        }
        SimionSchmidt => BigInt::from(1) << (n - 1) as usize,
        Avoid123With132(1) => binom_pow2(n - 2, 1, n - 3),
        Avoid123With132(2) => binom_pow2(n - 3, 1, n - 4) + binom_pow2(n - 3, 2, n - 5),
        Avoid123With132(3) => {
            binom_pow2(n - 3, 1, n - 4) + binom_pow2(n - 3, 2, n - 5) + binom_pow2(n - 4, 3, n - 7)
        }
        Avoid123With132(4) => {
            2 * binom_pow2(n - 4, 1, n - 5)
                + 3 * binom_pow2(n - 4, 2, n - 6)
                + binom_pow2(n - 4, 3, n - 7)
                + binom_pow2(n - 5, 3, n - 8)
                + binom_pow2(n - 5, 4, n - 9)
        }
        Avoid123With132(k) => {
            return Err(Error::Unsupported(format!(
                "no closed form for 123-avoiders with {k} copies of 132"
            )))
        }
        Avoider321(constraint) => return count_avoider_class(n, constraint),
    };
    Ok(v)
}

pub fn count_avoider_class(n: i64, constraint: ClassConstraint) -> Result<BallotValue> {
    use ClassConstraint::*;
    let in_range = |m: usize| {
        if m >= 1 && m as i64 <= n {
            Ok(m as i64)
        } else {
            Err(Error::InvalidInput(format!(
                "constraint parameter {m} outside [1, {n}]"
            )))
        }
    };
    Ok(match constraint {
        FirstEntryEq(k) => {
            let k = in_range(k)?;
            c(k, n - k)
        }
        FirstEntryGe(m) | OneNotBeforePos(m) | MaxNotAfterPosFromEnd(m) => {
            let m = in_range(m)?;
            c(m + 1, n - m)
        }
        LastEntryLe(v) => {
            let m = n + 1 - in_range(v)?;
            c(m + 1, n - m)
        }
        FirstGe2AndLastLeNminus1 => c(2, n - 2) + c(5, n - 4),
        LastIIncreasing(i) => {
            let i = i as i64;
            if i == 0 || i > n {
                return Err(Error::InvalidInput(format!(
                    "last-increasing length {i} outside [1, {n}]"
                )));
            }
            c(i + 1, n - i)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::catalan;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn documented_values() {
        use CountFamily::*;
        assert_eq!(count(P132One, 3).unwrap(), big(1));
        assert_eq!(count(P321(1), 3).unwrap(), big(1));
        assert_eq!(count(P321(1), 4).unwrap(), big(6));
        assert_eq!(count(P321(1), 5).unwrap(), big(27));
        assert_eq!(count(P321(2), 6).unwrap(), big(133));
        assert_eq!(count(P321(3), 4).unwrap(), big(0));
        assert_eq!(count(P321(4), 4).unwrap(), big(1));
        assert_eq!(count(SimionSchmidt, 3).unwrap(), big(4));
        assert_eq!(count(SimionSchmidt, 1).unwrap(), big(1));
        assert_eq!(count(Avoid123With132(1), 4).unwrap(), big(4));
        assert_eq!(count(P132One, 10).unwrap(), big(19448));
        assert_eq!(count(P132One, 20).unwrap(), binomial(37, 17));
    }

    #[test]
    fn small_n_vanish() {
        for f in CountFamily::named() {
            for n in 1..f.first_nonzero() as i64 {
                assert_eq!(count(f, n).unwrap(), big(0), "{f} at n = {n}");
            }
            let n = f.first_nonzero() as i64;
            assert!(count(f, n).unwrap() > big(0), "{f} at n = {n}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(count(CountFamily::P321(5), 6).is_err());
        assert!(count(CountFamily::P132One, 0).is_err());
        assert!(count_avoider_class(3, ClassConstraint::FirstEntryEq(4)).is_err());
    }

    #[test]
    fn family_names_round_trip() {
        for f in CountFamily::named() {
            assert_eq!(f.to_string().parse::<CountFamily>().unwrap(), f);
        }
        assert!("p321-9".parse::<CountFamily>().is_err());
    }

    #[test]
    fn avoider_classes() {
        use ClassConstraint::*;
        assert_eq!(count_avoider_class(3, FirstEntryEq(2)).unwrap(), big(2));
        assert_eq!(count_avoider_class(4, FirstGe2AndLastLeNminus1).unwrap(), big(6));
        for n in 1..12 {
            assert_eq!(count_avoider_class(n, FirstEntryGe(1)).unwrap(), catalan(n));
            for m in 1..=n as usize {
                let v = count_avoider_class(n, FirstEntryGe(m)).unwrap();
                assert_eq!(count_avoider_class(n, OneNotBeforePos(m)).unwrap(), v);
                assert_eq!(count_avoider_class(n, MaxNotAfterPosFromEnd(m)).unwrap(), v);
                assert_eq!(
                    count_avoider_class(n, LastEntryLe(n as usize + 1 - m)).unwrap(),
                    v
                );
            }
        }
    }

    #[test]
    fn two_copies_recombine() {
        for n in 1..=20 {
            let split = 2 * c(8, n - 4) + (c(8, n - 4) + c(11, n - 6));
            assert_eq!(count(CountFamily::P321(2), n).unwrap(), split);
        }
    }
}
