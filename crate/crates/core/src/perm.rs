//! Permutations as words of distinct positive letters, and pattern occurrences.
//!
//! Positions are 1-indexed throughout, both in the API and in serialized
//! output.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Letter = u32;

/// A word of distinct positive integers.
///
/// Words need not use exactly the letters `1..=n`; operations that need that
/// (e.g. [`Permutation::complement`]) check it and fail otherwise.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Permutation(Vec<Letter>);

impl Permutation {
    /// Validates that letters are positive and pairwise distinct.
    pub fn new(word: Vec<Letter>) -> Result<Self> {
        if word.contains(&0) {
            return Err(Error::InvalidInput("letters must be positive".into()));
        }
        let mut sorted = word.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(format!(
                "duplicate letters in {}",
                Permutation(word)
            )));
        }
        Ok(Permutation(word))
    }

    /// Caller guarantees distinct positive letters.
    pub(crate) fn from_vec_unchecked(word: Vec<Letter>) -> Self {
        debug_assert!(Permutation::new(word.clone()).is_ok());
        Permutation(word)
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as Letter).collect())
    }

    pub fn empty() -> Self {
        Permutation(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    /// Letter at 1-indexed `position`.
    pub fn at(&self, position: usize) -> Letter {
        self.0[position - 1]
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn max_letter(&self) -> Option<Letter> {
        self.0.iter().copied().max()
    }

    pub fn min_letter(&self) -> Option<Letter> {
        self.0.iter().copied().min()
    }

    /// 1-indexed position of `letter`, if present.
    pub fn position_of(&self, letter: Letter) -> Option<usize> {
        self.0.iter().position(|&x| x == letter).map(|i| i + 1)
    }

    /// True when the letters are exactly `1..=n`.
    pub fn is_on_n(&self) -> bool {
        let n = self.0.len();
        let mut seen = vec![false; n];
        for &x in &self.0 {
            let i = x as usize;
            if i == 0 || i > n || seen[i - 1] {
                return false;
            }
            seen[i - 1] = true;
        }
        true
    }

    /// Order-isomorphic relabelling onto `1..=n`.
    pub fn reduced(&self) -> Permutation {
        Permutation(reduce_distinct(&self.0))
    }

    pub fn reverse(&self) -> Permutation {
        Permutation(self.0.iter().rev().copied().collect())
    }

    /// Termwise `n + 1 - letter`; requires letters `1..=n`.
    pub fn complement(&self) -> Result<Permutation> {
        if !self.is_on_n() {
            return Err(Error::InvalidInput(format!(
                "complement needs a permutation on [n], got {self}"
            )));
        }
        let n1 = self.0.len() as Letter + 1;
        Ok(Permutation(self.0.iter().map(|&x| n1 - x).collect()))
    }

    pub fn reverse_complement(&self) -> Result<Permutation> {
        self.complement().map(|p| p.reverse())
    }

    /// True when the last `i` letters are increasing (vacuous for `i <= 1`).
    pub fn last_increasing(&self, i: usize) -> bool {
        let n = self.0.len();
        if i > n {
            return false;
        }
        self.0[n - i..].windows(2).all(|w| w[0] < w[1])
    }

    pub fn last_decreasing(&self, i: usize) -> bool {
        let n = self.0.len();
        if i > n {
            return false;
        }
        self.0[n - i..].windows(2).all(|w| w[0] > w[1])
    }

    /// Positions and values of the left-to-right maxima.
    pub fn record_highs(&self) -> (Vec<usize>, Vec<Letter>) {
        let mut positions = Vec::new();
        let mut values = Vec::new();
        let mut best = 0;
        for (i, &x) in self.0.iter().enumerate() {
            if x > best {
                best = x;
                positions.push(i + 1);
                values.push(x);
            }
        }
        (positions, values)
    }

    pub fn occurrences(&self, pattern: &Pattern) -> Vec<Occurrence> {
        occurrences(self, pattern)
    }

    pub fn count(&self, pattern: &Pattern) -> usize {
        count_occurrences(self, pattern)
    }

    pub fn avoids(&self, pattern: &Pattern) -> bool {
        count_occurrences_capped(self, pattern, 0) == 0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for x in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
            first = false;
        }
        Ok(())
    }
}

/// Accepts space- and/or comma-separated positive integers, e.g. `"2 1 4"`
/// or `"2,1,4"`. The empty string is the empty permutation.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let word = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<Letter>()
                    .map_err(|_| Error::InvalidInput(format!("not a positive integer: {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(word)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let word = Vec::<Letter>::deserialize(d)?;
        Permutation::new(word).map_err(serde::de::Error::custom)
    }
}

impl TryFrom<Vec<Letter>> for Permutation {
    type Error = Error;

    fn try_from(word: Vec<Letter>) -> Result<Self> {
        Permutation::new(word)
    }
}

/// Order-isomorphic relabelling of a word with distinct entries onto `1..=n`.
pub fn reduce(word: &[Letter]) -> Result<Permutation> {
    let mut sorted = word.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidInput("reduce needs distinct entries".into()));
    }
    Ok(Permutation(reduce_distinct(word)))
}

fn reduce_distinct(word: &[Letter]) -> Vec<Letter> {
    let mut order: Vec<usize> = (0..word.len()).collect();
    order.sort_unstable_by_key(|&i| word[i]);
    let mut out = vec![0; word.len()];
    for (rank, i) in order.into_iter().enumerate() {
        out[i] = rank as Letter + 1;
    }
    out
}

/// A permutation on `[k]` with `1 <= k <= 4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Letter>", into = "Vec<Letter>")]
pub struct Pattern(Permutation);

impl From<Pattern> for Vec<Letter> {
    fn from(p: Pattern) -> Self {
        p.0.into_letters()
    }
}

impl TryFrom<Vec<Letter>> for Pattern {
    type Error = Error;

    fn try_from(word: Vec<Letter>) -> Result<Self> {
        Pattern::new(word)
    }
}

impl Pattern {
    pub const MAX_LEN: usize = 4;

    pub fn new(word: Vec<Letter>) -> Result<Self> {
        let p = Permutation::new(word)?;
        if p.is_empty() || p.len() > Self::MAX_LEN || !p.is_on_n() {
            return Err(Error::InvalidInput(format!(
                "a pattern must be a permutation of [k] with 1 <= k <= {}, got {p}",
                Self::MAX_LEN
            )));
        }
        Ok(Pattern(p))
    }

    fn known(word: &[Letter]) -> Self {
        Pattern(Permutation(word.to_vec()))
    }

    pub fn p123() -> Self {
        Self::known(&[1, 2, 3])
    }

    pub fn p132() -> Self {
        Self::known(&[1, 3, 2])
    }

    pub fn p321() -> Self {
        Self::known(&[3, 2, 1])
    }

    pub fn p21() -> Self {
        Self::known(&[2, 1])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_permutation(&self) -> &Permutation {
        &self.0
    }

    pub fn reverse(&self) -> Pattern {
        Pattern(self.0.reverse())
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for Pattern {
    type Err = Error;

    /// Besides the permutation syntax, a bare digit string such as `"132"`
    /// is read letter by letter.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if !t.is_empty() && t.len() <= Self::MAX_LEN && t.chars().all(|c| c.is_ascii_digit()) {
            return Pattern::new(t.bytes().map(|b| (b - b'0') as Letter).collect());
        }
        Pattern::new(t.parse::<Permutation>()?.into_letters())
    }
}

/// One letter of a 3-letter occurrence together with its position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Role {
    pub position: usize,
    pub letter: Letter,
}

/// A subword whose reduced form equals the pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Occurrence {
    /// Strictly increasing 1-indexed positions.
    pub positions: Vec<usize>,
    pub letters: Vec<Letter>,
}

impl Occurrence {
    /// `[a, b, c]` for a 3-letter occurrence, labelled by value: `a` is the
    /// smallest letter, `b` the middle one, `c` the largest. For 321 the
    /// letters read `c b a` left to right, for 132 they read `a c b`.
    pub fn roles(&self) -> Option<[Role; 3]> {
        if self.letters.len() != 3 {
            return None;
        }
        let mut idx = [0usize, 1, 2];
        idx.sort_unstable_by_key(|&i| self.letters[i]);
        Some(idx.map(|i| Role {
            position: self.positions[i],
            letter: self.letters[i],
        }))
    }

    pub fn a(&self) -> Option<Role> {
        self.roles().map(|r| r[0])
    }

    pub fn b(&self) -> Option<Role> {
        self.roles().map(|r| r[1])
    }

    pub fn c(&self) -> Option<Role> {
        self.roles().map(|r| r[2])
    }
}

fn matches_at(word: &[Letter], idx: &[usize], pattern: &[Letter]) -> bool {
    let k = idx.len();
    for x in 0..k {
        for y in x + 1..k {
            if (word[idx[x]] < word[idx[y]]) != (pattern[x] < pattern[y]) {
                return false;
            }
        }
    }
    true
}

/// All occurrences of `pattern` in `p`, ordered lexicographically by position
/// tuple.
pub fn occurrences(p: &Permutation, pattern: &Pattern) -> Vec<Occurrence> {
    let word = p.letters();
    let pat = pattern.0.letters();
    let k = pat.len();
    let n = word.len();
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    // odometer over increasing k-subsets of 0..n
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if matches_at(word, &idx, pat) {
            out.push(Occurrence {
                positions: idx.iter().map(|&i| i + 1).collect(),
                letters: idx.iter().map(|&i| word[i]).collect(),
            });
        }
        let mut j = k;
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            if idx[j] < n - k + j {
                break;
            }
        }
        idx[j] += 1;
        for t in j + 1..k {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

pub fn count_occurrences(p: &Permutation, pattern: &Pattern) -> usize {
    count_occurrences_capped(p, pattern, usize::MAX - 1)
}

/// Counts occurrences but stops as soon as the count exceeds `limit`, so the
/// result is `min(count, limit + 1)`.
pub fn count_occurrences_capped(p: &Permutation, pattern: &Pattern, limit: usize) -> usize {
    let word = p.letters();
    let pat = pattern.0.letters();
    match pat {
        [1, 2, 3] => count_monotone3(word, true, limit),
        [3, 2, 1] => count_monotone3(word, false, limit),
        _ => count_generic(word, pat, limit),
    }
}

/// 123 / 321 counts: the middle letter of each occurrence splits it into an
/// independent left and right choice.
fn count_monotone3(word: &[Letter], increasing: bool, limit: usize) -> usize {
    let n = word.len();
    let mut total = 0usize;
    for j in 1..n.saturating_sub(1) {
        let m = word[j];
        let left = word[..j]
            .iter()
            .filter(|&&x| (x < m) == increasing)
            .count();
        if left == 0 {
            continue;
        }
        let right = word[j + 1..]
            .iter()
            .filter(|&&x| (x > m) == increasing)
            .count();
        total += left * right;
        if total > limit {
            return limit + 1;
        }
    }
    total
}

fn count_generic(word: &[Letter], pat: &[Letter], limit: usize) -> usize {
    let k = pat.len();
    let n = word.len();
    if k > n {
        return 0;
    }
    let mut total = 0usize;
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if matches_at(word, &idx, pat) {
            total += 1;
            if total > limit {
                return limit + 1;
            }
        }
        let mut j = k;
        loop {
            if j == 0 {
                return total;
            }
            j -= 1;
            if idx[j] < n - k + j {
                break;
            }
        }
        idx[j] += 1;
        for t in j + 1..k {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(&[9, 8, 2, 4, 6]).unwrap(), perm("5 4 1 2 3"));
        assert_eq!(reduce(&[1, 2, 3]).unwrap(), perm("1 2 3"));
        assert_eq!(reduce(&[10, 20]).unwrap(), perm("1 2"));
        assert!(matches!(reduce(&[3, 1, 3]), Err(Error::InvalidInput(_))));
        assert_eq!(reduce(&[]).unwrap(), Permutation::empty());
    }

    #[test]
    fn reverse_and_complement() {
        assert_eq!(perm("1 3 2").reverse(), perm("2 3 1"));
        assert_eq!(perm("1 3 2").complement().unwrap(), perm("3 1 2"));
        assert!(perm("1 5 2").complement().is_err());
        assert_eq!(Permutation::empty().complement().unwrap(), Permutation::empty());
    }

    #[test]
    fn parse_formats() {
        assert_eq!(perm("2,1, 4"), Permutation::new(vec![2, 1, 4]).unwrap());
        assert!("2 0".parse::<Permutation>().is_err());
        assert!("2 x".parse::<Permutation>().is_err());
        assert!("2 2".parse::<Permutation>().is_err());
        assert_eq!("132".parse::<Pattern>().unwrap(), Pattern::p132());
        assert_eq!("1 3 2".parse::<Pattern>().unwrap(), Pattern::p132());
        assert!("12345".parse::<Pattern>().is_err());
        assert!("1 4".parse::<Pattern>().is_err());
    }

    #[test]
    fn occurrences_of_321_in_4312() {
        let occ = perm("4 3 1 2").occurrences(&Pattern::p321());
        let letters: Vec<_> = occ.iter().map(|o| o.letters.clone()).collect();
        assert_eq!(letters, vec![vec![4, 3, 1], vec![4, 3, 2]]);
        assert_eq!(occ[0].positions, vec![1, 2, 3]);
        let [a, b, c] = occ[0].roles().unwrap();
        assert_eq!((a.letter, b.letter, c.letter), (1, 3, 4));
        assert_eq!((a.position, b.position, c.position), (3, 2, 1));
        assert!(perm("4 3 1 2").avoids(&Pattern::p132()));
        assert!(perm("1 2 3 4 5").avoids(&Pattern::p321()));
    }

    #[test]
    fn roles_for_132() {
        let occ = perm("2 5 3").occurrences(&Pattern::p132());
        let [a, b, c] = occ[0].roles().unwrap();
        assert_eq!((a.position, c.position, b.position), (1, 2, 3));
    }

    #[test]
    fn counts() {
        assert_eq!(perm("4 3 1 2").count(&Pattern::p321()), 2);
        assert_eq!(perm("4 3 2 1").count(&Pattern::p321()), 4);
        assert_eq!(perm("1 3 2").count(&Pattern::p21()), 1);
        assert_eq!(perm("2 1 3").count(&Pattern::p21()), 1);
        assert_eq!(Permutation::empty().count(&Pattern::p321()), 0);
        assert_eq!(
            count_occurrences_capped(&perm("5 4 3 2 1"), &Pattern::p321(), 2),
            3
        );
    }

    #[test]
    fn record_highs_examples() {
        assert_eq!(
            perm("2 1 4 7 3 5 6").record_highs(),
            (vec![1, 3, 4], vec![2, 4, 7])
        );
        assert_eq!(perm("1 2 3").record_highs(), (vec![1, 2, 3], vec![1, 2, 3]));
        assert_eq!(perm("3 2 1").record_highs(), (vec![1], vec![3]));
    }

    #[test]
    fn json_is_plain_array() {
        let p = perm("2 1 3");
        assert_eq!(serde_json::to_string(&p).unwrap(), "[2,1,3]");
        let back: Permutation = serde_json::from_str("[2,1,3]").unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<Permutation>("[2,2]").is_err());
    }
}
