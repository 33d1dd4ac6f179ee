//! Explicit bijections between pattern-constrained permutations, Dyck paths
//! and products of smaller classes.
//!
//! Every map comes as a forward/inverse pair. Both directions check domain
//! membership up front and return [`Error::Domain`] naming the violated
//! predicate; nothing is computed from out-of-domain input.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::paths::{LatticePath, Step};
use crate::perm::{count_occurrences_capped, Letter, Occurrence, Pattern, Permutation};

/// Output of a decomposing bijection: `rho`, an optional `sigma`, and an
/// integer parameter (a position, a middle letter, or a separation).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Decomposition {
    pub rho: Permutation,
    pub sigma: Option<Permutation>,
    pub param: i64,
}

impl Decomposition {
    fn pair(rho: Permutation, sigma: Permutation, param: i64) -> Self {
        Decomposition {
            rho,
            sigma: Some(sigma),
            param,
        }
    }

    fn sigma_or(&self, map: &'static str) -> Result<&Permutation> {
        self.sigma
            .as_ref()
            .ok_or_else(|| Error::domain(map, "decomposition carries a sigma"))
    }
}

fn ensure(cond: bool, map: &'static str, predicate: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::domain(map, predicate))
    }
}

fn exact_count(p: &Permutation, pattern: &Pattern, count: usize) -> bool {
    count_occurrences_capped(p, pattern, count) == count
}

fn reduced(word: Vec<Letter>) -> Permutation {
    Permutation::from_vec_unchecked(word).reduced()
}

fn perm_unchecked(word: Vec<Letter>) -> Permutation {
    Permutation::from_vec_unchecked(word)
}

fn only_occurrence(p: &Permutation, pattern: &Pattern) -> Occurrence {
    let mut occ = p.occurrences(pattern);
    debug_assert_eq!(occ.len(), 1);
    occ.remove(0)
}

// ---------------------------------------------------------------------------
// 321-avoiders and Dyck paths

/// Sends a 321-avoider on `[n]` to the Dyck `n`-path whose ascent sequence is
/// the sequence of differences of `(0, record-high values)` and whose descent
/// sequence is the differences of `(record-high positions, n + 1)`. The first
/// letter becomes the first ascent.
pub fn kratt_forward(p: &Permutation) -> Result<LatticePath> {
    const MAP: &str = "kratt";
    ensure(p.is_on_n(), MAP, "permutation on [n]")?;
    ensure(p.avoids(&Pattern::p321()), MAP, "avoids 321")?;
    if p.is_empty() {
        return Ok(LatticePath::empty());
    }
    let (positions, values) = p.record_highs();
    let ascents: Vec<usize> = values
        .iter()
        .scan(0, |prev, &v| {
            let d = (v - *prev) as usize;
            *prev = v;
            Some(d)
        })
        .collect();
    let mut descents: Vec<usize> = positions.windows(2).map(|w| w[1] - w[0]).collect();
    descents.push(p.len() + 1 - positions.last().unwrap());
    LatticePath::from_runs(&ascents, &descents)
}

/// Record highs are read off the runs of the path; the remaining letters
/// fill the remaining positions in increasing order, which is the only
/// 321-avoiding completion.
pub fn kratt_inverse(d: &LatticePath) -> Result<Permutation> {
    const MAP: &str = "kratt-inv";
    ensure(d.is_dyck(), MAP, "Dyck path")?;
    let n = d.len() / 2;
    if n == 0 {
        return Ok(Permutation::empty());
    }
    let st = d.stats();
    let mut word: Vec<Letter> = vec![0; n];
    let mut is_record = vec![false; n + 1];
    let (mut value, mut pos) = (0usize, 1usize);
    for (a, dd) in st.ascent_seq.iter().zip(&st.descent_seq) {
        value += a;
        word[pos - 1] = value as Letter;
        is_record[value] = true;
        pos += dd;
    }
    let mut rest = (1..=n).filter(|&v| !is_record[v]);
    for slot in word.iter_mut().filter(|x| **x == 0) {
        *slot = rest.next().unwrap() as Letter;
    }
    Ok(perm_unchecked(word))
}

// ---------------------------------------------------------------------------
// Path surgery

/// Deletes the initial upstep and every downstep that returns the path to
/// the x-axis. Returns the shorter path and the number `j` of returns
/// removed.
pub fn returns_deletion(path: &LatticePath) -> Result<(LatticePath, usize)> {
    const MAP: &str = "returns";
    ensure(path.is_first_quadrant(), MAP, "first-quadrant path")?;
    ensure(
        path.steps().first() == Some(&Step::Up),
        MAP,
        "path starts with an upstep",
    )?;
    let mut h = 0i64;
    let mut j = 0;
    let mut out = Vec::with_capacity(path.len());
    for (t, &s) in path.steps().iter().enumerate() {
        h += s.delta();
        if t == 0 {
            continue;
        }
        if s == Step::Down && h == 0 {
            j += 1;
        } else {
            out.push(s);
        }
    }
    Ok((LatticePath::new(out), j))
}

/// Inverse of [`returns_deletion`]: prepend an upstep, then for each level
/// `i = 1..=j` insert a downstep at the last point where the path is at
/// level `i`. Away from the final level that point is followed by the
/// rightmost upstep leaving level `i`; at the final level it is the end of
/// the path (the balanced case).
pub fn returns_insertion(path: &LatticePath, j: usize) -> Result<LatticePath> {
    const MAP: &str = "returns-inv";
    ensure(path.is_first_quadrant(), MAP, "first-quadrant path")?;
    ensure(
        (j as i64) <= path.end_height() + 1,
        MAP,
        "j is at most the final height plus one",
    )?;
    let mut steps = Vec::with_capacity(path.len() + 1 + j);
    steps.push(Step::Up);
    steps.extend_from_slice(path.steps());
    // last_visit[i] = index of the last point at height i
    let mut last_visit = vec![0usize; j + 1];
    let mut h = 0i64;
    for (t, s) in steps.iter().enumerate() {
        h += s.delta();
        if (1..=j as i64).contains(&h) {
            last_visit[h as usize] = t + 1;
        }
    }
    let mut cuts: Vec<usize> = last_visit[1..].to_vec();
    cuts.sort_unstable_by(|a, b| b.cmp(a));
    for cut in cuts {
        steps.insert(cut, Step::Down);
    }
    Ok(LatticePath::new(steps))
}

/// For a Dyck `n`-path whose first `i` nonfinal descents all have length 1
/// and whose last descent `d` satisfies `n > i + d`, moves the upstep
/// following each of the first `i` downsteps to the start. The first ascent
/// grows by `i` and the last descent is kept. At `n = i + d` the moved
/// upsteps can fuse descents into the last one, so that case is excluded.
pub fn nonfinal_transfer(d: &LatticePath, i: usize) -> Result<LatticePath> {
    const MAP: &str = "nonfinal";
    ensure(d.is_dyck(), MAP, "Dyck path")?;
    if i == 0 {
        return Ok(d.clone());
    }
    let st = d.stats();
    ensure(
        st.descent_seq.len() > i && st.descent_seq[..i].iter().all(|&x| x == 1),
        MAP,
        "first i nonfinal descents all equal 1",
    )?;
    ensure(d.ups() > i + st.last_descent, MAP, "n > i + last descent")?;
    let mut out = vec![Step::Up; i];
    let mut downs = 0;
    let mut skip_next = false;
    for &s in d.steps() {
        if skip_next {
            debug_assert_eq!(s, Step::Up);
            skip_next = false;
            continue;
        }
        out.push(s);
        if s == Step::Down {
            downs += 1;
            skip_next = downs <= i;
        }
    }
    Ok(LatticePath::new(out))
}

/// Removes `i` upsteps from the start and reinserts them one apiece right
/// after each of the first `i` downsteps. Needs first ascent `> i` and
/// `n > i + d` for the last descent `d`.
pub fn nonfinal_transfer_inverse(d: &LatticePath, i: usize) -> Result<LatticePath> {
    const MAP: &str = "nonfinal-inv";
    ensure(d.is_dyck(), MAP, "Dyck path")?;
    if i == 0 {
        return Ok(d.clone());
    }
    let st = d.stats();
    ensure(st.first_ascent > i, MAP, "first ascent at least i + 1")?;
    ensure(d.ups() > i + st.last_descent, MAP, "n > i + last descent")?;
    let mut out = Vec::with_capacity(d.len());
    let mut downs = 0;
    for &s in &d.steps()[i..] {
        out.push(s);
        if s == Step::Down {
            downs += 1;
            if downs <= i {
                out.push(Step::Up);
            }
        }
    }
    let out = LatticePath::new(out);
    debug_assert!(out.is_dyck());
    Ok(out)
}

// ---------------------------------------------------------------------------
// Position of the maximum in 321-avoiders

/// On 321-avoiders of `[n]` whose last `i` letters increase: the identity
/// when `n` sits at position `<= n - i`; otherwise `n` is the last letter
/// and it is moved to position `n - i + 1`, the letters it passes shifting
/// right by one. The image is the set of 321-avoiders with `n` outside the
/// last `i - 1` positions, with the first letter unchanged.
///
/// For `i <= 2` the move is the transposition of the last letter with the
/// letter at position `n - i + 1`.
pub fn phi_last_increasing(p: &Permutation, i: usize) -> Result<Permutation> {
    const MAP: &str = "phi";
    ensure(p.is_on_n(), MAP, "permutation on [n]")?;
    let n = p.len();
    ensure(i >= 1 && n > i, MAP, "n > i >= 1")?;
    ensure(p.avoids(&Pattern::p321()), MAP, "avoids 321")?;
    ensure(p.last_increasing(i), MAP, "last i letters increasing")?;
    let j = p.position_of(n as Letter).unwrap();
    if j <= n - i {
        return Ok(p.clone());
    }
    let mut word = p.letters().to_vec();
    let max = word.pop().unwrap();
    word.insert(n - i, max);
    Ok(perm_unchecked(word))
}

pub fn phi_last_increasing_inverse(p: &Permutation, i: usize) -> Result<Permutation> {
    const MAP: &str = "phi-inv";
    ensure(p.is_on_n(), MAP, "permutation on [n]")?;
    let n = p.len();
    ensure(i >= 1 && n > i, MAP, "n > i >= 1")?;
    ensure(p.avoids(&Pattern::p321()), MAP, "avoids 321")?;
    let j = p.position_of(n as Letter).unwrap();
    ensure(j <= n + 1 - i, MAP, "n not among the last i - 1 letters")?;
    if j < n + 1 - i {
        return Ok(p.clone());
    }
    let mut word = p.letters().to_vec();
    let max = word.remove(j - 1);
    word.push(max);
    Ok(perm_unchecked(word))
}

// ---------------------------------------------------------------------------
// One 132 pattern

/// `p` on `[n]` has exactly one 132 and it occupies consecutive positions.
pub fn is_one132_consecutive(p: &Permutation) -> bool {
    p.is_on_n()
        && exact_count(p, &Pattern::p132(), 1)
        && {
            let o = only_occurrence(p, &Pattern::p132());
            o.positions[2] == o.positions[0] + 2
        }
}

/// `p` on `[n]` has exactly one 132 and it occupies the first, second and
/// last positions.
pub fn is_one132_first_second_last(p: &Permutation) -> bool {
    p.is_on_n()
        && exact_count(p, &Pattern::p132(), 1)
        && only_occurrence(p, &Pattern::p132()).positions == [1, 2, p.len()]
}

/// `W1 a c b W2 -> (reduce(W1 c W2), k)` where `k` is the position of `a`.
pub fn one132_consecutive_decompose(p: &Permutation) -> Result<Decomposition> {
    ensure(
        is_one132_consecutive(p),
        "one132-consecutive",
        "exactly one 132, in consecutive positions",
    )?;
    let o = only_occurrence(p, &Pattern::p132());
    let k = o.positions[0];
    let word: Vec<Letter> = p
        .letters()
        .iter()
        .enumerate()
        .filter(|&(t, _)| t + 1 != k && t + 1 != k + 2)
        .map(|(_, &x)| x)
        .collect();
    Ok(Decomposition {
        rho: reduced(word),
        sigma: None,
        param: k as i64,
    })
}

/// Recovers `a` as one more than the number of later letters of `rho` that
/// are smaller than `rho_k`, lifts every letter `>= a` by two and reinserts
/// `a`, `a + 1` around position `k`.
pub fn one132_consecutive_compose(d: &Decomposition) -> Result<Permutation> {
    const MAP: &str = "one132-consecutive-inv";
    let rho = &d.rho;
    let m = rho.len();
    ensure(rho.is_on_n(), MAP, "rho is a permutation on [m]")?;
    ensure(rho.avoids(&Pattern::p132()), MAP, "rho avoids 132")?;
    ensure(
        d.param >= 1 && d.param as usize <= m,
        MAP,
        "k in [1, len(rho)]",
    )?;
    let k = d.param as usize;
    let c = rho.at(k);
    let a = rho.letters()[k..].iter().filter(|&&x| x < c).count() as Letter + 1;
    let lift = |x: Letter| if x >= a { x + 2 } else { x };
    let mut word = Vec::with_capacity(m + 2);
    word.extend(rho.letters()[..k - 1].iter().map(|&x| lift(x)));
    word.extend([a, lift(c), a + 1]);
    word.extend(rho.letters()[k..].iter().map(|&x| lift(x)));
    Ok(perm_unchecked(word))
}

/// `(n-2) n W2 (n-1) -> W2`.
pub fn one132_first_second_last_decompose(p: &Permutation) -> Result<Permutation> {
    ensure(
        is_one132_first_second_last(p),
        "one132-ends",
        "exactly one 132, at the first, second and last positions",
    )?;
    let n = p.len();
    Ok(perm_unchecked(p.letters()[2..n - 1].to_vec()))
}

pub fn one132_first_second_last_compose(w2: &Permutation) -> Result<Permutation> {
    const MAP: &str = "one132-ends-inv";
    ensure(w2.is_on_n(), MAP, "permutation on [m]")?;
    ensure(w2.avoids(&Pattern::p132()), MAP, "avoids 132")?;
    let m = w2.len() as Letter;
    let mut word = vec![m + 1, m + 3];
    word.extend_from_slice(w2.letters());
    word.push(m + 2);
    Ok(perm_unchecked(word))
}

/// `W1 a c W2 b W3 -> (reduce(W1 a c b W3), reduce(a c W2 b))` with
/// `param = |W2|`.
pub fn one132_split(p: &Permutation) -> Result<Decomposition> {
    const MAP: &str = "one132-split";
    ensure(p.is_on_n(), MAP, "permutation on [n]")?;
    ensure(exact_count(p, &Pattern::p132(), 1), MAP, "exactly one 132")?;
    let o = only_occurrence(p, &Pattern::p132());
    let (pa, pc, pb) = (o.positions[0], o.positions[1], o.positions[2]);
    debug_assert_eq!(pc, pa + 1);
    let k = pb - pc - 1;
    let word = p.letters();
    let outer: Vec<Letter> = word
        .iter()
        .enumerate()
        .filter(|&(t, _)| t < pc || t + 1 >= pb)
        .map(|(_, &x)| x)
        .collect();
    let inner = word[pa - 1..pb].to_vec();
    Ok(Decomposition::pair(reduced(outer), reduced(inner), k as i64))
}

pub fn one132_join(d: &Decomposition) -> Result<Permutation> {
    const MAP: &str = "one132-split-inv";
    let rho = &d.rho;
    let sigma = d.sigma_or(MAP)?;
    ensure(
        is_one132_consecutive(rho),
        MAP,
        "rho has one 132, in consecutive positions",
    )?;
    ensure(
        is_one132_first_second_last(sigma),
        MAP,
        "sigma has one 132, at the first, second and last positions",
    )?;
    let k = sigma.len() - 3;
    ensure(
        d.param < 0 || d.param as usize == k,
        MAP,
        "param equals len(sigma) - 3",
    )?;
    let o = only_occurrence(rho, &Pattern::p132());
    let (q, a_red) = (o.positions[0], o.letters[0]);
    let shift = k as Letter;
    let lift = |x: Letter| if x >= a_red { x + shift } else { x };
    let mut word = Vec::with_capacity(rho.len() + k);
    word.extend(rho.letters()[..q + 1].iter().map(|&x| lift(x)));
    word.extend(sigma.letters()[2..2 + k].iter().map(|&x| x + a_red - 1));
    word.extend(rho.letters()[q + 1..].iter().map(|&x| lift(x)));
    Ok(perm_unchecked(word))
}

// ---------------------------------------------------------------------------
// One and two 321 patterns

fn occurrences_321(p: &Permutation) -> Vec<Occurrence> {
    p.occurrences(&Pattern::p321())
}

/// `W1 b W2 -> (reduce(W1 a), reduce(c W2))` for the unique 321 `c b a`,
/// with `param = b`.
pub fn one321_decompose(p: &Permutation) -> Result<Decomposition> {
    const MAP: &str = "one321";
    ensure(p.is_on_n(), MAP, "permutation on [n]")?;
    ensure(exact_count(p, &Pattern::p321(), 1), MAP, "exactly one 321")?;
    let [a, b, c] = only_occurrence(p, &Pattern::p321()).roles().unwrap();
    let word = p.letters();
    let mut left = word[..b.position - 1].to_vec();
    left.push(a.letter);
    let mut right = vec![c.letter];
    right.extend_from_slice(&word[b.position..]);
    Ok(Decomposition::pair(
        reduced(left),
        reduced(right),
        b.letter as i64,
    ))
}

pub fn one321_compose(d: &Decomposition) -> Result<Permutation> {
    const MAP: &str = "one321-inv";
    let rho = &d.rho;
    let sigma = d.sigma_or(MAP)?;
    ensure(rho.is_on_n() && sigma.is_on_n(), MAP, "rho and sigma on [m]")?;
    ensure(
        rho.avoids(&Pattern::p321()) && sigma.avoids(&Pattern::p321()),
        MAP,
        "rho and sigma avoid 321",
    )?;
    let b = rho.len() as Letter;
    ensure(b >= 2 && rho.last() < Some(b), MAP, "rho has last letter <= len(rho) - 1")?;
    ensure(
        sigma.len() >= 2 && sigma.first() >= Some(2),
        MAP,
        "sigma has first letter >= 2",
    )?;
    ensure(d.param < 0 || d.param == b as i64, MAP, "param equals len(rho)")?;
    let a = rho.last().unwrap();
    let c = sigma.at(1) + b - 1;
    let mut word: Vec<Letter> = rho.letters()[..b as usize - 1]
        .iter()
        .map(|&x| if x == b { c } else { x })
        .collect();
    word.push(b);
    word.extend(
        sigma.letters()[1..]
            .iter()
            .map(|&x| if x == 1 { a } else { x + b - 1 }),
    );
    Ok(perm_unchecked(word))
}

/// Two 321s `c1 b a`, `c2 b a` sharing the middle and the last letter.
pub fn is_two321_common_b_last(p: &Permutation) -> bool {
    if !p.is_on_n() || !exact_count(p, &Pattern::p321(), 2) {
        return false;
    }
    let occ = occurrences_321(p);
    let (r1, r2) = (occ[0].roles().unwrap(), occ[1].roles().unwrap());
    r1[1] == r2[1] && r1[0] == r2[0]
}

/// Two 321s sharing the middle and the first letter: the reverse-complement
/// mirror of [`is_two321_common_b_last`].
pub fn is_two321_common_b_first(p: &Permutation) -> bool {
    if !p.is_on_n() || !exact_count(p, &Pattern::p321(), 2) {
        return false;
    }
    let occ = occurrences_321(p);
    let (r1, r2) = (occ[0].roles().unwrap(), occ[1].roles().unwrap());
    r1[1] == r2[1] && r1[2] == r2[2]
}

/// Two 321s with different middle letters.
pub fn is_two321_distinct_b(p: &Permutation) -> bool {
    if !p.is_on_n() || !exact_count(p, &Pattern::p321(), 2) {
        return false;
    }
    let occ = occurrences_321(p);
    occ[0].b() != occ[1].b()
}

/// `W1 b W2 -> (reduce(W1 a), reduce(c1 c2 W2))` with `param = b`.
pub fn two321_common_b_decompose(p: &Permutation) -> Result<Decomposition> {
    ensure(
        is_two321_common_b_last(p),
        "two321-b",
        "exactly two 321s with a common middle and a common last letter \
         (apply reverse-complement for the common-first-letter case)",
    )?;
    let occ = occurrences_321(p);
    let [a, b, c1] = occ[0].roles().unwrap();
    let c2 = occ[1].c().unwrap();
    let (c1, c2) = if c1.position < c2.position { (c1, c2) } else { (c2, c1) };
    let word = p.letters();
    let mut left = word[..b.position - 1].to_vec();
    left.push(a.letter);
    let mut right = vec![c1.letter, c2.letter];
    right.extend_from_slice(&word[b.position..]);
    Ok(Decomposition::pair(
        reduced(left),
        reduced(right),
        b.letter as i64,
    ))
}

pub fn two321_common_b_compose(d: &Decomposition) -> Result<Permutation> {
    const MAP: &str = "two321-b-inv";
    let rho = &d.rho;
    let sigma = d.sigma_or(MAP)?;
    ensure(rho.is_on_n() && sigma.is_on_n(), MAP, "rho and sigma on [m]")?;
    ensure(
        rho.avoids(&Pattern::p321()) && sigma.avoids(&Pattern::p321()),
        MAP,
        "rho and sigma avoid 321",
    )?;
    let top = rho.len() as Letter;
    ensure(
        top >= 3 && rho.last().unwrap() + 2 <= top,
        MAP,
        "rho has last letter <= len(rho) - 2",
    )?;
    ensure(
        sigma.len() >= 3 && sigma.position_of(1).unwrap() >= 3,
        MAP,
        "sigma has 1 at position >= 3",
    )?;
    let b = top - 1;
    ensure(d.param < 0 || d.param == b as i64, MAP, "param equals len(rho) - 1")?;
    let a = rho.last().unwrap();
    let (c1, c2) = (sigma.at(1) + b - 1, sigma.at(2) + b - 1);
    let mut word: Vec<Letter> = rho.letters()[..b as usize]
        .iter()
        .map(|&x| match x {
            x if x == b => c1,
            x if x == b + 1 => c2,
            x => x,
        })
        .collect();
    word.push(b);
    word.extend(
        sigma.letters()[2..]
            .iter()
            .map(|&x| if x == 1 { a } else { x + b - 1 }),
    );
    Ok(perm_unchecked(word))
}

/// `W1 b1 W2 b2 W3 -> (reduce(W1' b1 W3'), reduce(c1 W2 a2))`, where `W1'`
/// has `c1` replaced by `c2` and `W3'` has `a2` replaced by `a1`;
/// `param = |W2|`.
pub fn two321_distinct_b_decompose(p: &Permutation) -> Result<Decomposition> {
    ensure(
        is_two321_distinct_b(p),
        "two321-k",
        "exactly two 321s with distinct middle letters",
    )?;
    let mut occ: Vec<[crate::perm::Role; 3]> =
        occurrences_321(p).iter().map(|o| o.roles().unwrap()).collect();
    occ.sort_by_key(|r| r[1].position);
    let [a1, b1, c1] = occ[0];
    let [a2, b2, c2] = occ[1];
    let word = p.letters();
    let mut outer = Vec::with_capacity(word.len());
    for (t, &x) in word.iter().enumerate() {
        let pos = t + 1;
        if pos < b1.position {
            outer.push(if pos == c1.position { c2.letter } else { x });
        } else if pos == b1.position {
            outer.push(x);
        } else if pos > b2.position {
            outer.push(if pos == a2.position { a1.letter } else { x });
        }
    }
    let mut inner = vec![c1.letter];
    inner.extend_from_slice(&word[b1.position..b2.position - 1]);
    inner.push(a2.letter);
    let k = b2.position - b1.position - 1;
    Ok(Decomposition::pair(reduced(outer), reduced(inner), k as i64))
}

pub fn two321_distinct_b_compose(d: &Decomposition) -> Result<Permutation> {
    const MAP: &str = "two321-k-inv";
    let rho = &d.rho;
    let sigma = d.sigma_or(MAP)?;
    ensure(rho.is_on_n() && sigma.is_on_n(), MAP, "rho and sigma on [m]")?;
    ensure(exact_count(rho, &Pattern::p321(), 1), MAP, "rho has exactly one 321")?;
    ensure(sigma.avoids(&Pattern::p321()), MAP, "sigma avoids 321")?;
    let top = sigma.len() as Letter;
    ensure(
        top >= 2 && sigma.first().unwrap() >= 2 && sigma.last().unwrap() < top,
        MAP,
        "sigma has first letter > min and last letter < max",
    )?;
    let k = top - 2;
    ensure(d.param < 0 || d.param == k as i64, MAP, "param equals len(sigma) - 2")?;
    let [a, b, c] = only_occurrence(rho, &Pattern::p321()).roles().unwrap();
    let b1 = b.letter;
    let b2 = b1 + k + 1;
    let lift = |x: Letter| if x <= b1 { x } else { x + k + 1 };
    let c2 = c.letter + k + 1;
    let a1 = a.letter;
    let c1 = if sigma.at(1) == k + 2 { c2 } else { sigma.at(1) + b1 - 1 };
    let a2 = if sigma.last() == Some(1) { a1 } else { sigma.last().unwrap() + b1 - 1 };
    let mut word = Vec::with_capacity(rho.len() + k as usize + 1);
    for pos in 1..b.position {
        word.push(if pos == c.position { c1 } else { lift(rho.at(pos)) });
    }
    word.push(b1);
    word.extend(sigma.letters()[1..=k as usize].iter().map(|&x| match x {
        1 => a1,
        x if x == k + 2 => c2,
        x => x + b1 - 1,
    }));
    word.push(b2);
    for pos in b.position + 1..=rho.len() {
        word.push(if pos == a.position { a2 } else { lift(rho.at(pos)) });
    }
    Permutation::new(word).map_err(|_| Error::domain(MAP, "rho's 321 has its middle letter at the position of its value"))
}
