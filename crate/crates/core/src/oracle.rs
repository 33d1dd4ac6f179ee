//! Brute-force ground truth by exhaustive enumeration.
//!
//! Permutations of `[n]` are produced in lexicographic order of their
//! letter sequences; lattice paths in lexicographic order of their step
//! strings, with `D < U`. Parallel scans split the search space by prefix
//! and merge in prefix order, so their output does not depend on the
//! number of worker threads.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formulas::{ClassConstraint, CountFamily};
use crate::paths::{BallotValue, DyckClassConstraint, LatticePath, Step};
use crate::perm::{count_occurrences_capped, Letter, Pattern, Permutation};

pub const PERM_CAP: usize = 11;
pub const DYCK_CAP: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Cmp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl Cmp {
    pub fn holds<T: Ord>(self, lhs: T, rhs: T) -> bool {
        match self {
            Cmp::Eq => lhs == rhs,
            Cmp::Ne => lhs != rhs,
            Cmp::Lt => lhs < rhs,
            Cmp::Le => lhs <= rhs,
            Cmp::Gt => lhs > rhs,
            Cmp::Ge => lhs >= rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Cmp::Eq => "==",
            Cmp::Ne => "!=",
            Cmp::Lt => "<",
            Cmp::Le => "<=",
            Cmp::Gt => ">",
            Cmp::Ge => ">=",
        }
    }
}

/// A single condition on a permutation. Positions are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PermPredicate {
    /// Number of occurrences of `pattern` compared with `value`.
    PatternCount {
        pattern: Pattern,
        cmp: Cmp,
        value: usize,
    },
    First(Cmp, usize),
    Last(Cmp, usize),
    /// Last `i` letters increasing.
    LastInc(usize),
    /// Last `i` letters decreasing.
    LastDec(usize),
    /// Position of the largest letter.
    PosOfMax(Cmp, usize),
    /// Position of the largest letter counted from the end (the last
    /// position is 1).
    PosOfMaxFromEnd(Cmp, usize),
    /// Position of the smallest letter.
    PosOfMin(Cmp, usize),
}

impl PermPredicate {
    pub fn pattern_count(pattern: Pattern, value: usize) -> Self {
        PermPredicate::PatternCount {
            pattern,
            cmp: Cmp::Eq,
            value,
        }
    }

    fn is_pattern(&self) -> bool {
        matches!(self, PermPredicate::PatternCount { .. })
    }

    pub fn test(&self, p: &Permutation) -> bool {
        use PermPredicate::*;
        let n = p.len();
        let val = |x: Option<Letter>| x.map_or(0, |v| v as usize);
        match self {
            PatternCount {
                pattern,
                cmp,
                value,
            } => cmp.holds(count_occurrences_capped(p, pattern, *value), *value),
            First(cmp, v) => cmp.holds(val(p.first()), *v),
            Last(cmp, v) => cmp.holds(val(p.last()), *v),
            LastInc(i) => p.last_increasing(*i),
            LastDec(i) => p.last_decreasing(*i),
            PosOfMax(cmp, v) => {
                cmp.holds(p.max_letter().and_then(|m| p.position_of(m)).unwrap_or(0), *v)
            }
            PosOfMaxFromEnd(cmp, v) => cmp.holds(
                p.max_letter()
                    .and_then(|m| p.position_of(m))
                    .map_or(0, |j| n + 1 - j),
                *v,
            ),
            PosOfMin(cmp, v) => {
                cmp.holds(p.min_letter().and_then(|m| p.position_of(m)).unwrap_or(0), *v)
            }
        }
    }
}

/// Conjunction of permutation predicates. Cheap positional predicates are
/// tested before pattern counts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermFilter {
    preds: Vec<PermPredicate>,
}

impl PermFilter {
    pub fn all() -> Self {
        PermFilter::default()
    }

    pub fn new(preds: Vec<PermPredicate>) -> Self {
        let mut f = PermFilter::default();
        for p in preds {
            f = f.and(p);
        }
        f
    }

    pub fn and(mut self, pred: PermPredicate) -> Self {
        let at = if pred.is_pattern() {
            self.preds.len()
        } else {
            self.preds.iter().take_while(|p| !p.is_pattern()).count()
        };
        self.preds.insert(at, pred);
        self
    }

    pub fn with_pattern(self, pattern: Pattern, count: usize) -> Self {
        self.and(PermPredicate::pattern_count(pattern, count))
    }

    pub fn predicates(&self) -> &[PermPredicate] {
        &self.preds
    }

    pub fn test(&self, p: &Permutation) -> bool {
        self.preds.iter().all(|q| q.test(p))
    }
}

/// Rearranges `w[from..]` into the next larger arrangement; `false` when it
/// was already the largest.
fn next_permutation(w: &mut [Letter], from: usize) -> bool {
    let tail = &mut w[from..];
    if tail.len() < 2 {
        return false;
    }
    let mut i = tail.len() - 1;
    while i > 0 && tail[i - 1] >= tail[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = tail.len() - 1;
    while tail[j] <= tail[i - 1] {
        j -= 1;
    }
    tail.swap(i - 1, j);
    tail[i..].reverse();
    true
}

/// All permutations of `[n]` beginning with `prefix`, in lexicographic
/// order.
struct PrefixPerms {
    word: Vec<Letter>,
    fixed: usize,
    started: bool,
    done: bool,
}

impl PrefixPerms {
    fn new(n: usize, prefix: &[Letter]) -> Self {
        let mut word = prefix.to_vec();
        word.extend((1..=n as Letter).filter(|x| !prefix.contains(x)));
        PrefixPerms {
            word,
            fixed: prefix.len(),
            started: false,
            done: false,
        }
    }
}

impl Iterator for PrefixPerms {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        if self.started && !next_permutation(&mut self.word, self.fixed) {
            self.done = true;
            return None;
        }
        self.started = true;
        Some(Permutation::from_vec_unchecked(self.word.clone()))
    }
}

fn check_cap(what: &'static str, requested: usize, cap: usize) -> Result<()> {
    if requested > cap {
        Err(Error::ResourceLimit {
            what,
            requested,
            cap,
        })
    } else {
        Ok(())
    }
}

/// Lazy lexicographic stream of the members of `S_n` passing `f`.
pub fn enumerate_perms(
    n: usize,
    f: &PermFilter,
) -> Result<impl Iterator<Item = Permutation> + '_> {
    enumerate_perms_with_cap(n, f, PERM_CAP)
}

pub fn enumerate_perms_with_cap(
    n: usize,
    f: &PermFilter,
    cap: usize,
) -> Result<impl Iterator<Item = Permutation> + '_> {
    check_cap("permutation", n, cap)?;
    Ok(PrefixPerms::new(n, &[]).filter(move |p| f.test(p)))
}

/// Length-2 prefixes (length 1 or 0 for tiny `n`), in lexicographic order.
fn prefixes(n: usize) -> Vec<Vec<Letter>> {
    let n = n as Letter;
    match n {
        0 => vec![vec![]],
        1 => vec![vec![1]],
        _ => (1..=n)
            .flat_map(|a| (1..=n).filter(move |&b| b != a).map(move |b| vec![a, b]))
            .collect(),
    }
}

pub fn count_perms(n: usize, f: &PermFilter) -> Result<u64> {
    count_perms_with_cap(n, f, PERM_CAP)
}

pub fn count_perms_with_cap(n: usize, f: &PermFilter, cap: usize) -> Result<u64> {
    check_cap("permutation", n, cap)?;
    Ok(prefixes(n)
        .par_iter()
        .map(|pre| PrefixPerms::new(n, pre).filter(|p| f.test(p)).count() as u64)
        .sum())
}

/// Same members and order as [`enumerate_perms`], computed in parallel.
pub fn collect_perms(n: usize, f: &PermFilter) -> Result<Vec<Permutation>> {
    collect_perms_with_cap(n, f, PERM_CAP)
}

pub fn collect_perms_with_cap(n: usize, f: &PermFilter, cap: usize) -> Result<Vec<Permutation>> {
    check_cap("permutation", n, cap)?;
    let chunks: Vec<Vec<Permutation>> = prefixes(n)
        .par_iter()
        .map(|pre| PrefixPerms::new(n, pre).filter(|p| f.test(p)).collect())
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// Largest `n` for [`collect_avoiders`].
pub const AVOIDER_CAP: usize = 14;

/// Whether some occurrence of `pattern` in `word` uses its last letter.
fn ends_occurrence(word: &[Letter], pattern: &[Letter]) -> bool {
    fn pick(word: &[Letter], pattern: &[Letter], chosen: &mut Vec<Letter>, from: usize) -> bool {
        let k = pattern.len();
        if chosen.len() == k - 1 {
            chosen.push(*word.last().unwrap());
            let ok = (0..k).all(|i| {
                (0..k).all(|j| (chosen[i] < chosen[j]) == (pattern[i] < pattern[j]))
            });
            chosen.pop();
            return ok;
        }
        let need = k - 1 - chosen.len();
        for t in from..word.len() - need {
            chosen.push(word[t]);
            let hit = pick(word, pattern, chosen, t + 1);
            chosen.pop();
            if hit {
                return true;
            }
        }
        false
    }
    word.len() >= pattern.len() && pick(word, pattern, &mut Vec::new(), 0)
}

/// All permutations of `[n]` avoiding `pattern`, lexicographically, built
/// letter by letter and pruned as soon as a prefix contains the pattern.
/// Reaches larger `n` than [`collect_perms`] because only avoiders and
/// their prefixes are visited.
pub fn collect_avoiders(n: usize, pattern: &Pattern) -> Result<Vec<Permutation>> {
    fn grow(
        n: usize,
        pattern: &[Letter],
        word: &mut Vec<Letter>,
        used: &mut [bool],
        out: &mut Vec<Permutation>,
    ) {
        if word.len() == n {
            out.push(Permutation::from_vec_unchecked(word.clone()));
            return;
        }
        for x in 1..=n {
            if used[x] {
                continue;
            }
            word.push(x as Letter);
            if !ends_occurrence(word, pattern) {
                used[x] = true;
                grow(n, pattern, word, used, out);
                used[x] = false;
            }
            word.pop();
        }
    }
    check_cap("avoider", n, AVOIDER_CAP)?;
    let mut out = Vec::new();
    let letters = pattern.as_permutation().letters();
    grow(n, letters, &mut Vec::with_capacity(n), &mut vec![false; n + 1], &mut out);
    Ok(out)
}

// ---------------------------------------------------------------------------
// Paths

/// A single condition on a lattice path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PathPredicate {
    FirstAscent(Cmp, usize),
    LastDescent(Cmp, usize),
    InteriorReturns(Cmp, usize),
    Height(Cmp, usize),
    /// At least `i` nonfinal descents, the first `i` of length 1.
    NonfinalDescentsOne(usize),
    /// At least `j` noninitial ascents, the last `j` of length 1.
    LastNoninitialAscentsOne(usize),
}

impl PathPredicate {
    pub fn test(&self, p: &LatticePath) -> bool {
        use PathPredicate::*;
        let st = p.stats();
        match *self {
            FirstAscent(c, v) => c.holds(st.first_ascent, v),
            LastDescent(c, v) => c.holds(st.last_descent, v),
            InteriorReturns(c, v) => c.holds(st.interior_returns, v),
            Height(c, v) => c.holds(st.height, v as i64),
            NonfinalDescentsOne(0) | LastNoninitialAscentsOne(0) => true,
            NonfinalDescentsOne(i) => {
                st.descent_seq.len() > i && st.descent_seq[..i].iter().all(|&d| d == 1)
            }
            LastNoninitialAscentsOne(j) => {
                let a = &st.ascent_seq;
                a.len() > j && a[a.len() - j..].iter().all(|&x| x == 1)
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathFilter {
    preds: Vec<PathPredicate>,
}

impl PathFilter {
    pub fn all() -> Self {
        PathFilter::default()
    }

    pub fn new(preds: Vec<PathPredicate>) -> Self {
        PathFilter { preds }
    }

    pub fn and(mut self, pred: PathPredicate) -> Self {
        self.preds.push(pred);
        self
    }

    pub fn predicates(&self) -> &[PathPredicate] {
        &self.preds
    }

    pub fn test(&self, p: &LatticePath) -> bool {
        self.preds.iter().all(|q| q.test(p))
    }

    /// Tightest upper height bound implied by the height predicates.
    fn height_bound(&self) -> Option<i64> {
        self.preds
            .iter()
            .filter_map(|p| match *p {
                PathPredicate::Height(Cmp::Le, h) => Some(h as i64),
                PathPredicate::Height(Cmp::Lt, h) => Some(h as i64 - 1),
                PathPredicate::Height(Cmp::Eq, h) => Some(h as i64),
                _ => None,
            })
            .min()
    }
}

/// Paths with a fixed number of up and down steps from height 0 that stay
/// weakly inside the band `[lo, hi]`, in lexicographic order.
pub struct BandPaths {
    ups: usize,
    downs: usize,
    lo: i64,
    hi: i64,
    steps: Vec<Step>,
    state: BandState,
}

#[derive(PartialEq, Eq)]
enum BandState {
    Fresh,
    Running,
    Done,
}

impl BandPaths {
    pub fn new(ups: usize, downs: usize, lo: i64, hi: i64) -> Self {
        BandPaths {
            ups,
            downs,
            lo,
            hi,
            steps: Vec::with_capacity(ups + downs),
            state: BandState::Fresh,
        }
    }

    fn feasible(&self, h: i64, ups_left: usize, downs_left: usize) -> bool {
        let end = h + ups_left as i64 - downs_left as i64;
        self.lo <= h
            && h <= self.hi
            && self.lo <= end
            && end <= self.hi
            && (self.hi > self.lo || ups_left + downs_left == 0)
    }

    fn prefix_state(&self) -> (i64, usize, usize) {
        let ups = self.steps.iter().filter(|&&s| s == Step::Up).count();
        let downs = self.steps.len() - ups;
        (
            ups as i64 - downs as i64,
            self.ups - ups,
            self.downs - downs,
        )
    }

    /// Extends the current prefix by the smallest feasible completion.
    fn complete(&mut self) {
        let (mut h, mut u, mut d) = self.prefix_state();
        while u + d > 0 {
            if d > 0 && self.feasible(h - 1, u, d - 1) {
                self.steps.push(Step::Down);
                h -= 1;
                d -= 1;
            } else {
                self.steps.push(Step::Up);
                h += 1;
                u -= 1;
            }
        }
    }
}

impl Iterator for BandPaths {
    type Item = LatticePath;

    fn next(&mut self) -> Option<LatticePath> {
        match self.state {
            BandState::Done => return None,
            BandState::Fresh => {
                self.state = BandState::Running;
                if !self.feasible(0, self.ups, self.downs) {
                    self.state = BandState::Done;
                    return None;
                }
                self.complete();
            }
            BandState::Running => loop {
                let Some(last) = self.steps.pop() else {
                    self.state = BandState::Done;
                    return None;
                };
                if last == Step::Down {
                    let (h, u, d) = self.prefix_state();
                    if u > 0 && self.feasible(h + 1, u - 1, d) {
                        self.steps.push(Step::Up);
                        self.complete();
                        break;
                    }
                }
            },
        }
        Some(LatticePath::new(self.steps.clone()))
    }
}

/// Dyck `n`-paths passing `f`.
pub fn enumerate_dyck(n: usize, f: &PathFilter) -> Result<impl Iterator<Item = LatticePath> + '_> {
    check_cap("Dyck path", n, DYCK_CAP)?;
    let hi = f.height_bound().unwrap_or(n as i64).min(n as i64);
    Ok(BandPaths::new(n, n, 0, hi).filter(move |p| f.test(p)))
}

/// First-quadrant paths of `ups` upsteps and `downs` downsteps passing `f`.
pub fn enumerate_quadrant(
    ups: usize,
    downs: usize,
    f: &PathFilter,
) -> Result<impl Iterator<Item = LatticePath> + '_> {
    check_cap("first-quadrant path", ups + downs, 2 * DYCK_CAP)?;
    let hi = f.height_bound().unwrap_or(ups as i64).min(ups as i64);
    Ok(BandPaths::new(ups, downs, 0, hi).filter(move |p| f.test(p)))
}

/// Paths of `ups` upsteps and `downs` downsteps from the origin staying
/// weakly between `lo` and `hi`.
pub fn enumerate_paths(ups: usize, downs: usize, lo: i64, hi: i64) -> Result<BandPaths> {
    check_cap("lattice path", ups + downs, 2 * DYCK_CAP)?;
    Ok(BandPaths::new(ups, downs, lo, hi))
}

// ---------------------------------------------------------------------------
// Adapters

/// The permutation filter defining a class of 321-avoiders of `[n]`.
pub fn avoider_filter(n: usize, c: ClassConstraint) -> PermFilter {
    use ClassConstraint::*;
    use PermPredicate::*;
    let base = PermFilter::all().with_pattern(Pattern::p321(), 0);
    match c {
        FirstEntryEq(k) => base.and(First(Cmp::Eq, k)),
        FirstEntryGe(m) => base.and(First(Cmp::Ge, m)),
        OneNotBeforePos(m) => base.and(PosOfMin(Cmp::Ge, m)),
        MaxNotAfterPosFromEnd(m) => base.and(PosOfMaxFromEnd(Cmp::Ge, m)),
        LastEntryLe(v) => base.and(Last(Cmp::Le, v)),
        FirstGe2AndLastLeNminus1 => base
            .and(First(Cmp::Ge, 2))
            .and(Last(Cmp::Le, n.saturating_sub(1))),
        LastIIncreasing(i) => base.and(LastInc(i)),
    }
}

/// The permutation filter whose members on `[n]` the family counts.
pub fn family_filter(family: CountFamily, n: usize) -> PermFilter {
    use CountFamily::*;
    let f = PermFilter::all();
    match family {
        P132One => f.with_pattern(Pattern::p132(), 1),
        P321(k) => f.with_pattern(Pattern::p321(), k as usize),
        P321OneLast2Up => f
            .and(PermPredicate::LastInc(2))
            .with_pattern(Pattern::p321(), 1),
        P321TwoLast2Up => f
            .and(PermPredicate::LastInc(2))
            .with_pattern(Pattern::p321(), 2),
        SimionSchmidt => f
            .with_pattern(Pattern::p123(), 0)
            .with_pattern(Pattern::p132(), 0),
        Avoid123With132(k) => f
            .with_pattern(Pattern::p123(), 0)
            .with_pattern(Pattern::p132(), k as usize),
        Avoider321(c) => avoider_filter(n, c),
    }
}

pub fn oracle_count(family: CountFamily, n: usize) -> Result<BallotValue> {
    count_perms(n, &family_filter(family, n)).map(BigInt::from)
}

pub fn oracle_count_filter(n: usize, f: &PermFilter) -> Result<BallotValue> {
    count_perms(n, f).map(BigInt::from)
}

/// The path filter defining a class of Dyck paths.
pub fn dyck_class_filter(c: DyckClassConstraint) -> PathFilter {
    use DyckClassConstraint::*;
    use PathPredicate::*;
    match c {
        FirstAscentEq(k) => PathFilter::new(vec![FirstAscent(Cmp::Eq, k)]),
        FirstAscentGe(k) => PathFilter::new(vec![FirstAscent(Cmp::Ge, k)]),
        FirstAscentLastDescent {
            r,
            s,
            require_interior_return,
        } => {
            let f = PathFilter::new(vec![FirstAscent(Cmp::Ge, r), LastDescent(Cmp::Ge, s)]);
            if require_interior_return {
                f.and(InteriorReturns(Cmp::Ge, 1))
            } else {
                f
            }
        }
        FirstAscentNonfinalDescentsOne { r, s } => {
            PathFilter::new(vec![FirstAscent(Cmp::Ge, r), NonfinalDescentsOne(s)])
        }
        FirstAscentLastAscentsOne { r, s } => PathFilter::new(vec![
            FirstAscent(Cmp::Ge, r),
            LastNoninitialAscentsOne(s.saturating_sub(1)),
        ]),
    }
}

pub fn oracle_count_dyck(n: usize, c: DyckClassConstraint) -> Result<BallotValue> {
    let f = dyck_class_filter(c);
    let count = enumerate_dyck(n, &f)?.count();
    Ok(BigInt::from(count))
}

/// Largest `n + k` for [`marked_highpoint_histogram`].
pub const HISTOGRAM_CAP: usize = 12;

/// For every path of `n + k` upsteps and `n` downsteps and each of its `k`
/// high points (the leftmost points at heights `h, h-1, ..., h-k+1`, where
/// `h` is the maximum height), tallies the x-coordinate of that point.
/// Bins are `1..=2n+k`.
pub fn marked_highpoint_histogram(n: usize, k: usize) -> Result<BTreeMap<usize, u64>> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    check_cap("marked path", n + k, HISTOGRAM_CAP)?;
    let len = 2 * n + k;
    let mut hist: BTreeMap<usize, u64> = (1..=len).map(|x| (x, 0)).collect();
    let mut first_at = vec![0usize; n + k + 1];
    for path in enumerate_paths(n + k, n, -(n as i64), (n + k) as i64)? {
        first_at.iter_mut().for_each(|x| *x = usize::MAX);
        let mut h = 0i64;
        let mut top = 0i64;
        for (t, s) in path.steps().iter().enumerate() {
            h += s.delta();
            if h > top {
                top = h;
                first_at[h as usize] = t + 1;
            }
        }
        for level in (top - k as i64 + 1)..=top {
            *hist.get_mut(&first_at[level as usize]).unwrap() += 1;
        }
    }
    Ok(hist)
}
