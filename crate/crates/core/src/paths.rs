//! Up/down lattice paths, ballot numbers, and closed-form counts of
//! constrained Dyck path classes.
//!
//! Ballot numbers are `C^(k)_n = [x^n] C(x)^k`, where `C(x)` is the Catalan
//! generating function. They are total: `ballot(k, n) = 0` for `n < 0` and
//! `ballot(0, n) = [n == 0]`, which lets every closed form be evaluated at
//! small `n` without special cases.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact count produced by ballot-number and binomial arithmetic.
pub type BallotValue = BigInt;

/// `Down` sorts before `Up`, so step sequences order like their `D`/`U`
/// strings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Step {
    #[serde(rename = "D")]
    Down,
    #[serde(rename = "U")]
    Up,
}

impl Step {
    pub fn delta(self) -> i64 {
        match self {
            Step::Up => 1,
            Step::Down => -1,
        }
    }

    pub fn flipped(self) -> Step {
        match self {
            Step::Up => Step::Down,
            Step::Down => Step::Up,
        }
    }
}

/// A path from the origin made of upsteps `(1,1)` and downsteps `(1,-1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePath {
    steps: Vec<Step>,
}

/// Statistics of a path, all computed in one pass.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathStats {
    pub height: i64,
    /// Downsteps landing on the x-axis.
    pub returns: usize,
    /// Returns strictly before the final point.
    pub interior_returns: usize,
    pub ascent_seq: Vec<usize>,
    pub descent_seq: Vec<usize>,
    /// Length of the initial run of upsteps (0 if the path starts down or is empty).
    pub first_ascent: usize,
    /// Length of the final run of downsteps (0 if the path ends up or is empty).
    pub last_descent: usize,
}

impl LatticePath {
    pub fn new(steps: Vec<Step>) -> Self {
        LatticePath { steps }
    }

    pub fn empty() -> Self {
        LatticePath::default()
    }

    /// `U^a1 D^d1 U^a2 D^d2 ...`; `descents` may be one shorter than
    /// `ascents` for a path that ends with an upstep run.
    pub fn from_runs(ascents: &[usize], descents: &[usize]) -> Result<Self> {
        if ascents.iter().chain(descents).any(|&x| x == 0) {
            return Err(Error::InvalidInput("run lengths must be positive".into()));
        }
        if !(descents.len() == ascents.len() || descents.len() + 1 == ascents.len()) {
            return Err(Error::InvalidInput(
                "ascent and descent sequences do not interleave".into(),
            ));
        }
        let mut steps = Vec::with_capacity(ascents.iter().sum::<usize>() + descents.iter().sum::<usize>());
        for (i, &a) in ascents.iter().enumerate() {
            steps.extend(std::iter::repeat_n(Step::Up, a));
            if let Some(&d) = descents.get(i) {
                steps.extend(std::iter::repeat_n(Step::Down, d));
            }
        }
        Ok(LatticePath { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn into_steps(self) -> Vec<Step> {
        self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn ups(&self) -> usize {
        self.steps.iter().filter(|&&s| s == Step::Up).count()
    }

    pub fn downs(&self) -> usize {
        self.steps.len() - self.ups()
    }

    /// Heights after each step (not including the starting 0).
    pub fn heights(&self) -> Vec<i64> {
        self.steps
            .iter()
            .scan(0i64, |h, s| {
                *h += s.delta();
                Some(*h)
            })
            .collect()
    }

    pub fn end_height(&self) -> i64 {
        self.steps.iter().map(|s| s.delta()).sum()
    }

    pub fn min_height(&self) -> i64 {
        self.heights().into_iter().min().unwrap_or(0).min(0)
    }

    pub fn max_height(&self) -> i64 {
        self.heights().into_iter().max().unwrap_or(0).max(0)
    }

    pub fn is_first_quadrant(&self) -> bool {
        self.min_height() >= 0
    }

    pub fn is_dyck(&self) -> bool {
        self.is_first_quadrant() && self.end_height() == 0
    }

    /// The path read backwards: reversed order, each step flipped. On Dyck
    /// paths this swaps ascents with descents.
    pub fn read_backwards(&self) -> LatticePath {
        LatticePath {
            steps: self.steps.iter().rev().map(|s| s.flipped()).collect(),
        }
    }

    pub fn stats(&self) -> PathStats {
        let mut height = 0i64;
        let mut h = 0i64;
        let mut returns = 0;
        let mut ascent_seq = Vec::new();
        let mut descent_seq = Vec::new();
        let mut prev: Option<Step> = None;
        for &s in &self.steps {
            h += s.delta();
            height = height.max(h);
            if s == Step::Down && h == 0 {
                returns += 1;
            }
            let runs = match s {
                Step::Up => &mut ascent_seq,
                Step::Down => &mut descent_seq,
            };
            if prev == Some(s) {
                *runs.last_mut().unwrap() += 1;
            } else {
                runs.push(1);
            }
            prev = Some(s);
        }
        let interior_returns = if h == 0 && self.steps.last() == Some(&Step::Down) {
            returns - 1
        } else {
            returns
        };
        let first_ascent = if self.steps.first() == Some(&Step::Up) {
            ascent_seq[0]
        } else {
            0
        };
        let last_descent = if self.steps.last() == Some(&Step::Down) {
            *descent_seq.last().unwrap()
        } else {
            0
        };
        PathStats {
            height,
            returns,
            interior_returns,
            ascent_seq,
            descent_seq,
            first_ascent,
            last_descent,
        }
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                Step::Up => "U",
                Step::Down => "D",
            })?;
        }
        Ok(())
    }
}

/// Parses a string over `{U, D}` (case-insensitive, whitespace ignored).
impl FromStr for LatticePath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'U' | 'u' => Ok(Step::Up),
                'D' | 'd' => Ok(Step::Down),
                other => Err(Error::InvalidInput(format!("bad path step {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LatticePath { steps })
    }
}

/// How `binomial` treats a negative upper argument.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BinomialConvention {
    /// Zero whenever `a < 0`, `b < 0` or `b > a`.
    #[default]
    Standard,
    /// As `Standard`, except `binom(-1, -1) = 1` (and `binom(-1, 0) = 0`),
    /// which keeps Pascal's rule valid at `a = -1, b = 0`.
    Extended,
}

pub fn binomial(a: i64, b: i64) -> BigInt {
    binomial_with(a, b, BinomialConvention::Standard)
}

pub fn binomial_with(a: i64, b: i64, convention: BinomialConvention) -> BigInt {
    if convention == BinomialConvention::Extended && a == -1 && b == -1 {
        return BigInt::one();
    }
    if a < 0 || b < 0 || b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// `C^(k)_n = k/(2n+k) * binom(2n+k, n)`, computed as an exact division.
pub fn ballot(k: i64, n: i64) -> BallotValue {
    assert!(k >= 0, "ballot numbers are defined here for k >= 0, got {k}");
    if n < 0 {
        return BigInt::zero();
    }
    if k == 0 {
        return if n == 0 { BigInt::one() } else { BigInt::zero() };
    }
    let numer = binomial(2 * n + k, n) * k;
    let (q, r) = numer.div_rem(&BigInt::from(2 * n + k));
    assert!(r.is_zero(), "ballot({k}, {n}) is not integral");
    q
}

/// The same value through `binom(2n+k-1, n) - binom(2n+k-1, n-1)`.
pub fn ballot_difference_form(k: i64, n: i64) -> BallotValue {
    assert!(k >= 0);
    if n < 0 {
        return BigInt::zero();
    }
    if k == 0 {
        return if n == 0 { BigInt::one() } else { BigInt::zero() };
    }
    binomial(2 * n + k - 1, n) - binomial(2 * n + k - 1, n - 1)
}

pub fn catalan(n: i64) -> BallotValue {
    ballot(1, n)
}

/// First-quadrant paths of `ups` upsteps and `downs` downsteps.
pub fn count_first_quadrant(ups: i64, downs: i64) -> BallotValue {
    if ups < downs || downs < 0 {
        return BigInt::zero();
    }
    ballot(ups - downs + 1, downs)
}

/// Classes of Dyck `n`-paths with a closed-form count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DyckClassConstraint {
    FirstAscentEq(usize),
    FirstAscentGe(usize),
    /// First ascent `>= r`, last descent `>= s`, optionally with at least
    /// one interior return.
    FirstAscentLastDescent {
        r: usize,
        s: usize,
        require_interior_return: bool,
    },
    /// First ascent `>= r` and there are at least `s` nonfinal descents, the
    /// first `s` of which all have length 1.
    FirstAscentNonfinalDescentsOne { r: usize, s: usize },
    /// First ascent `>= r` and there are at least `s - 1` noninitial
    /// ascents, the last `s - 1` of which all have length 1.
    FirstAscentLastAscentsOne { r: usize, s: usize },
}

pub fn count_dyck_class(n: i64, c: DyckClassConstraint) -> Result<BallotValue> {
    use DyckClassConstraint::*;
    let i = |x: usize| x as i64;
    match c {
        FirstAscentEq(k) => Ok(ballot(i(k), n - i(k))),
        FirstAscentGe(k) => Ok(ballot(i(k) + 1, n - i(k))),
        FirstAscentLastDescent { r, s, .. } if r == 0 || s == 0 => Err(Error::Unsupported(
            "first ascent / last descent bounds must be at least 1".into(),
        )),
        FirstAscentLastDescent {
            r,
            s,
            require_interior_return: true,
        } => Ok(ballot(i(r + s) + 1, n - i(r + s))),
        FirstAscentLastDescent {
            r,
            s,
            require_interior_return: false,
        } => Ok((0..=i(r.min(s)))
            .map(|j| ballot(i(r + s) + 1 - 2 * j, n - i(r + s) + j))
            .sum()),
        FirstAscentNonfinalDescentsOne { r, s } => Ok(ballot(i(r + s) + 1, n - i(r + s))),
        FirstAscentLastAscentsOne { r, s } if r == 0 || s == 0 => Err(Error::Unsupported(
            "last-ascents class needs r, s >= 1".into(),
        )),
        FirstAscentLastAscentsOne { r, s } => Ok(count_lastascents_g(n, r, s)),
    }
}

/// Dyck `n`-paths with first ascent `>= r` whose last `s - 1` noninitial
/// ascents all equal 1, by the subtraction formula
/// `sum_{j=0}^{m} C^(r+s+1-2j)_{n-r-s+j} - sum_{j=2}^{m} binom(r+s-2j, r-j) C^(0)_{n-r-s+j}`
/// with `m = min(r, s)`.
pub fn count_lastascents_g(n: i64, r: usize, s: usize) -> BallotValue {
    assert!(r >= 1 && s >= 1, "count_lastascents_g needs r, s >= 1");
    let (r, s) = (r as i64, s as i64);
    let m = r.min(s);
    let main: BigInt = (0..=m)
        .map(|j| ballot(r + s + 1 - 2 * j, n - r - s + j))
        .sum();
    let correction: BigInt = (2..=m)
        .map(|j| {
            binomial_with(r + s - 2 * j, r - j, BinomialConvention::Extended)
                * ballot(0, n - r - s + j)
        })
        .sum();
    main - correction
}

/// The same count without subtraction:
/// `C^(r+s)_{n+1-r-s} + sum_{k=0}^{r+s-4} sum_{j=0}^{r+s-4-k} binom(k, r-2-j) C^(r+s-2-k)_{n-r-s+1}`.
pub fn count_lastascents_f(n: i64, r: usize, s: usize) -> BallotValue {
    assert!(r >= 1 && s >= 1, "count_lastascents_f needs r, s >= 1");
    let (r, s) = (r as i64, s as i64);
    let mut total = ballot(r + s, n + 1 - r - s);
    for k in 0..=(r + s - 4) {
        let tail = ballot(r + s - 2 - k, n - r - s + 1);
        if tail.is_zero() {
            continue;
        }
        let weight: BigInt = (0..=(r + s - 4 - k)).map(|j| binomial(k, r - 2 - j)).sum();
        total += weight * tail;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn binomial_conventions() {
        assert_eq!(binomial(5, 2), big(10));
        assert_eq!(binomial(3, 5), big(0));
        assert_eq!(binomial(4, -1), big(0));
        assert_eq!(binomial(0, 0), big(1));
        assert_eq!(binomial(-1, -1), big(0));
        assert_eq!(binomial_with(-1, -1, BinomialConvention::Extended), big(1));
        assert_eq!(binomial_with(-1, 0, BinomialConvention::Extended), big(0));
        assert_eq!(binomial(60, 30).to_string(), "118264581564861424");
    }

    #[test]
    fn ballot_examples() {
        assert_eq!(ballot(3, 2), big(9));
        assert_eq!(ballot(1, 4), big(14));
        assert_eq!(ballot(6, 1), big(6));
        assert_eq!(ballot_difference_form(6, 1), big(6));
        for k in 0..6 {
            assert_eq!(ballot(k, 0), big(1));
            assert_eq!(ballot(k, -3), big(0));
        }
        assert_eq!(ballot(0, 2), big(0));
        assert_eq!(catalan(0), big(1));
        assert_eq!(catalan(4), big(14));
        assert_eq!(catalan(7), big(429));
        assert_eq!(catalan(-1), big(0));
    }

    #[test]
    fn first_quadrant_counts() {
        assert_eq!(count_first_quadrant(6, 4), big(90));
        assert_eq!(count_first_quadrant(4, 4), big(14));
        assert_eq!(count_first_quadrant(3, 5), big(0));
    }

    #[test]
    fn stats_of_displayed_paths() {
        let quadrant: LatticePath = "UUDUDDUUUD".parse().unwrap();
        let st = quadrant.stats();
        assert_eq!(st.height, 3);
        assert_eq!(st.returns, 1);
        assert_eq!(st.interior_returns, 1);
        assert_eq!(st.ascent_seq, vec![2, 1, 3]);
        assert_eq!(st.descent_seq, vec![1, 2, 1]);
        assert_eq!(quadrant.ups(), 6);
        assert_eq!(quadrant.downs(), 4);

        let dyck: LatticePath = "UUUDDUDUDD".parse().unwrap();
        let st = dyck.stats();
        assert_eq!(st.height, 3);
        assert_eq!(st.returns, 1);
        assert_eq!(st.interior_returns, 0);
        assert_eq!(st.ascent_seq, vec![3, 1, 1]);
        assert_eq!(st.descent_seq, vec![2, 1, 2]);
        assert_eq!(LatticePath::from_runs(&st.ascent_seq, &st.descent_seq).unwrap(), dyck);

        let ud: LatticePath = "UD".parse().unwrap();
        let st = ud.stats();
        assert_eq!((st.height, st.returns, st.interior_returns), (1, 1, 0));
        assert_eq!((st.ascent_seq, st.descent_seq), (vec![1], vec![1]));
    }

    #[test]
    fn empty_path_stats() {
        let st = LatticePath::empty().stats();
        assert_eq!(st.height, 0);
        assert!(st.ascent_seq.is_empty() && st.descent_seq.is_empty());
        assert_eq!((st.first_ascent, st.last_descent), (0, 0));
        assert!(LatticePath::empty().is_dyck());
    }

    #[test]
    fn path_parse_and_json() {
        assert!("UXD".parse::<LatticePath>().is_err());
        let p: LatticePath = "UUDD".parse().unwrap();
        assert_eq!(p.to_string(), "UUDD");
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"["U","U","D","D"]"#);
        let q: LatticePath = serde_json::from_str(r#"["U","D"]"#).unwrap();
        assert_eq!(q.to_string(), "UD");
        assert!(LatticePath::from_runs(&[1, 2], &[3]).is_ok());
        assert!(LatticePath::from_runs(&[1], &[1, 1]).is_err());
    }

    #[test]
    fn dyck_class_examples() {
        use DyckClassConstraint::*;
        assert_eq!(count_dyck_class(4, FirstAscentEq(2)).unwrap(), big(5));
        assert_eq!(count_dyck_class(4, FirstAscentGe(1)).unwrap(), big(14));
        let c = |req| FirstAscentLastDescent {
            r: 1,
            s: 1,
            require_interior_return: req,
        };
        assert_eq!(count_dyck_class(3, c(true)).unwrap(), big(3));
        assert_eq!(count_dyck_class(3, c(false)).unwrap(), big(5));
        assert!(count_dyck_class(
            3,
            FirstAscentLastDescent {
                r: 0,
                s: 1,
                require_interior_return: false
            }
        )
        .is_err());
    }

    #[test]
    fn lastascents_formulas_agree_on_small_cases() {
        // s = 1 imposes nothing beyond the first ascent
        assert_eq!(count_lastascents_g(4, 1, 1), big(14));
        assert_eq!(count_lastascents_f(4, 1, 1), big(14));
        assert_eq!(count_lastascents_g(4, 2, 2), count_lastascents_f(4, 2, 2));
        // n = 2, r = s = 2: only UUDD has first ascent >= 2 and it has no
        // noninitial ascent, so the correction term must cancel it
        assert_eq!(count_lastascents_g(2, 2, 2), big(0));
    }
}
