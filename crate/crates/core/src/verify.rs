//! Named invariant suites comparing closed forms, bijections and the
//! brute-force oracle.
//!
//! `nmax` sets the oracle sizes: permutation counts run to `nmax`, the
//! permutation bijections to `nmax - 1` (Krattenthaler's to `nmax`), and
//! path bijections to paths with up to `nmax + 1` upsteps. The identities
//! suite involves no permutations and accepts `nmax` up to
//! [`IDENTITY_NMAX_CAP`].

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bijections::*;
use crate::error::{Error, Result};
use crate::formulas::{count, count_avoider_class, ClassConstraint, CountFamily};
use crate::oracle::{
    avoider_filter, collect_avoiders, collect_perms, enumerate_dyck, enumerate_paths,
    enumerate_quadrant, marked_highpoint_histogram, HISTOGRAM_CAP, oracle_count, oracle_count_dyck, Cmp,
    PathFilter, PathPredicate, PermFilter, PermPredicate, DYCK_CAP,
};
use crate::paths::*;
use crate::perm::{Pattern, Permutation};
use crate::series::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Formulas,
    Bijections,
    Identities,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "formulas" => Ok(Suite::Formulas),
            "bijections" => Ok(Suite::Bijections),
            "identities" => Ok(Suite::Identities),
            "all" => Ok(Suite::All),
            _ => Err(Error::InvalidInput(format!("unknown suite `{s}`"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Formulas => "formulas",
            Suite::Bijections => "bijections",
            Suite::Identities => "identities",
            Suite::All => "all",
        };
        f.write_str(s)
    }
}

/// What a check exercises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckGroup {
    /// Closed forms against the oracle.
    Formulas,
    /// Round trips and images of the bijections.
    Bijections,
    /// Ballot-number identities.
    Ballot,
    /// Generating-function and triangle identities.
    Series,
    /// Uniformity of the marked high point.
    Histogram,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub group: CheckGroup,
    pub passed: bool,
    /// First counterexample or mismatch; empty on success.
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub nmax: usize,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }
}

type Outcome = std::result::Result<(), String>;
type Check = (String, Box<dyn Fn() -> Outcome + Send + Sync>);

fn check<F>(name: impl Into<String>, f: F) -> Check
where
    F: Fn() -> Outcome + Send + Sync + 'static,
{
    (name.into(), Box::new(f))
}

fn eq<T: PartialEq + fmt::Debug>(what: impl fmt::Display, got: T, want: T) -> Outcome {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn tag(group: CheckGroup, checks: Vec<Check>) -> Vec<(CheckGroup, Check)> {
    checks.into_iter().map(|c| (group, c)).collect()
}

fn run(suite: Suite, nmax: usize, checks: Vec<(CheckGroup, Check)>) -> VerifyReport {
    let checks = checks
        .into_par_iter()
        .map(|(group, (name, f))| {
            let outcome = f();
            CheckResult {
                name,
                group,
                passed: outcome.is_ok(),
                detail: outcome.err().unwrap_or_default(),
            }
        })
        .collect();
    VerifyReport {
        suite,
        nmax,
        checks,
    }
}

/// Largest `nmax` for the identities suite.
pub const IDENTITY_NMAX_CAP: usize = 13;

pub fn run_suite(suite: Suite, nmax: usize) -> Result<VerifyReport> {
    if nmax < 4 {
        return Err(Error::InvalidInput("nmax must be at least 4".into()));
    }
    let cap = match suite {
        Suite::Identities => IDENTITY_NMAX_CAP,
        _ => crate::oracle::PERM_CAP,
    };
    if nmax > cap {
        return Err(Error::ResourceLimit {
            what: "verification",
            requested: nmax,
            cap,
        });
    }
    let mut checks = Vec::new();
    if matches!(suite, Suite::Formulas | Suite::All) {
        checks.extend(tag(CheckGroup::Formulas, formula_checks(nmax)));
    }
    if matches!(suite, Suite::Bijections | Suite::All) {
        checks.extend(tag(CheckGroup::Bijections, bijection_checks(nmax)));
    }
    if matches!(suite, Suite::Identities | Suite::All) {
        checks.extend(tag(CheckGroup::Ballot, ballot_identity_checks()));
        checks.extend(tag(CheckGroup::Series, series_checks(nmax)));
        checks.extend(tag(CheckGroup::Histogram, histogram_checks(nmax)));
    }
    Ok(run(suite, nmax, checks))
}

// ---------------------------------------------------------------------------
// Formulas against the oracle

/// Closed form against the oracle for `lo <= n <= hi`.
pub fn family_matches_oracle(family: CountFamily, lo: usize, hi: usize) -> Outcome {
    for n in lo..=hi {
        let f = lift(count(family, n as i64))?;
        let o = lift(oracle_count(family, n))?;
        eq(format_args!("{family} at n = {n}"), f, o)?;
    }
    Ok(())
}

fn avoider_constraints(n: usize) -> Vec<ClassConstraint> {
    use ClassConstraint::*;
    let mut out = vec![FirstGe2AndLastLeNminus1];
    for m in 1..=n {
        out.extend([
            FirstEntryEq(m),
            FirstEntryGe(m),
            OneNotBeforePos(m),
            MaxNotAfterPosFromEnd(m),
            LastEntryLe(m),
            LastIIncreasing(m),
        ]);
    }
    out
}

fn dyck_constraints() -> Vec<DyckClassConstraint> {
    use DyckClassConstraint::*;
    let mut out = Vec::new();
    for k in 0..=5 {
        out.extend([FirstAscentEq(k), FirstAscentGe(k)]);
    }
    for r in 1..=5 {
        for s in 1..=5 {
            out.extend([
                FirstAscentLastDescent {
                    r,
                    s,
                    require_interior_return: true,
                },
                FirstAscentLastDescent {
                    r,
                    s,
                    require_interior_return: false,
                },
                FirstAscentNonfinalDescentsOne { r, s },
                FirstAscentLastAscentsOne { r, s },
            ]);
        }
    }
    out
}

fn formula_checks(nmax: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    for family in CountFamily::named() {
        checks.push(check(format!("formula {family} = oracle, n <= {nmax}"), move || {
            family_matches_oracle(family, 1, nmax)
        }));
    }
    let avoider_max = nmax.min(9);
    checks.push(check(
        format!("321-avoider classes = oracle, n <= {avoider_max}"),
        move || {
            for n in 1..=avoider_max {
                let all = lift(collect_perms(n, &PermFilter::all().with_pattern(Pattern::p321(), 0)))?;
                for c in avoider_constraints(n) {
                    let f = lift(count_avoider_class(n as i64, c))?;
                    let filter = avoider_filter(n, c);
                    let o = all.iter().filter(|p| filter.test(p)).count();
                    eq(format_args!("{c:?} at n = {n}"), f, BigInt::from(o))?;
                }
            }
            Ok(())
        },
    ));
    let dyck_max = (nmax + 1).min(DYCK_CAP);
    checks.push(check(
        format!("Dyck classes = oracle, n <= {dyck_max}, parameters <= 5"),
        move || {
            for n in 0..=dyck_max {
                let paths: Vec<LatticePath> = lift(enumerate_dyck(n, &PathFilter::all()))?.collect();
                for c in dyck_constraints() {
                    let f = lift(count_dyck_class(n as i64, c))?;
                    let filter = crate::oracle::dyck_class_filter(c);
                    let o = paths.iter().filter(|p| filter.test(p)).count();
                    eq(format_args!("{c:?} at n = {n}"), f, BigInt::from(o))?;
                }
            }
            Ok(())
        },
    ));
    checks.push(check(
        format!("last-ascents F and G = oracle, n <= {dyck_max}, r, s <= 5"),
        move || {
            for n in 0..=dyck_max {
                for r in 1..=5 {
                    for s in 1..=5 {
                        let c = DyckClassConstraint::FirstAscentLastAscentsOne { r, s };
                        let o = lift(oracle_count_dyck(n, c))?;
                        let what = format!("n = {n}, r = {r}, s = {s}");
                        eq(format!("G {what}"), count_lastascents_g(n as i64, r, s), o.clone())?;
                        eq(format!("F {what}"), count_lastascents_f(n as i64, r, s), o)?;
                    }
                }
            }
            Ok(())
        },
    ));
    let noonan_max = nmax;
    checks.push(check(
        format!("one 321 on [n] = 321-avoiders of [n+3] starting with 6, n <= {noonan_max}"),
        move || {
            for n in 1..=noonan_max {
                let lhs = lift(count(CountFamily::P321(1), n as i64))?;
                let rhs = lift(collect_avoiders(n + 3, &Pattern::p321()))?
                    .iter()
                    .filter(|p| p.first() == Some(6))
                    .count();
                let rhs = BigInt::from(rhs);
                eq(format_args!("n = {n}"), lhs, rhs)?;
            }
            Ok(())
        },
    ));
    checks.push(check(
        format!("counts of 0..4 copies of 321 sum to at most n!, n <= {nmax}"),
        move || {
            let mut fact = BigInt::one();
            for n in 1..=nmax {
                fact *= n;
                let mut total = count_avoider_class(n as i64, ClassConstraint::FirstEntryGe(1))
                    .map_err(|e| e.to_string())?;
                for k in 1..=4 {
                    let v = lift(count(CountFamily::P321(k), n as i64))?;
                    if v < BigInt::zero() {
                        return Err(format!("negative count for k = {k}, n = {n}"));
                    }
                    total += v;
                }
                if total > fact {
                    return Err(format!("sum {total} exceeds {n}! = {fact}"));
                }
            }
            Ok(())
        },
    ));
    checks.push(check(
        "one 132 reassembled from consecutive blocks, n <= 15",
        || {
            for n in 3..=15i64 {
                let sum: BigInt = (0..=n - 3)
                    .map(|k| binomial(2 * n - 2 * k - 4, n - k - 3) * catalan(k))
                    .sum();
                eq(format_args!("n = {n}"), sum, binomial(2 * n - 3, n - 3))?;
            }
            Ok(())
        },
    ));
    checks.push(check("two 321s recombine from both decompositions, n <= 20", || {
        for n in 1..=20 {
            let split = 2 * ballot(8, n - 4) + ballot(8, n - 4) + ballot(11, n - 6);
            eq(format_args!("n = {n}"), lift(count(CountFamily::P321(2), n))?, split)?;
        }
        Ok(())
    }));
    checks
}

// ---------------------------------------------------------------------------
// Bijections

fn perms(n: usize, f: PermFilter) -> std::result::Result<Vec<Permutation>, String> {
    lift(collect_perms(n, &f))
}

fn avoiders(n: usize, pattern: Pattern) -> std::result::Result<Vec<Permutation>, String> {
    perms(n, PermFilter::all().with_pattern(pattern, 0))
}

/// Applies `forward` to every element of `domain`, checks `inverse` undoes
/// it, and compares the image with `codomain` as sets.
fn bijection_on<A, B, F, G>(
    name: &str,
    domain: &[A],
    codomain: impl IntoIterator<Item = B>,
    forward: F,
    inverse: G,
) -> Outcome
where
    A: Clone + PartialEq + fmt::Debug,
    B: Clone + Eq + Hash + fmt::Debug,
    F: Fn(&A) -> Result<B> + Sync,
    G: Fn(&B) -> Result<A> + Sync,
    A: Sync,
    B: Send,
{
    let images: Vec<B> = domain
        .par_iter()
        .map(|x| {
            let y = forward(x).map_err(|e| format!("{name} forward on {x:?}: {e}"))?;
            let back = inverse(&y).map_err(|e| format!("{name} inverse on {y:?}: {e}"))?;
            if back != *x {
                return Err(format!("{name}: {x:?} -> {y:?} -> {back:?}"));
            }
            Ok(y)
        })
        .collect::<std::result::Result<_, String>>()?;
    let image: HashSet<B> = images.into_iter().collect();
    if image.len() != domain.len() {
        return Err(format!("{name}: not injective"));
    }
    let codomain: HashSet<B> = codomain.into_iter().collect();
    if image != codomain {
        let extra = image.difference(&codomain).next();
        let missing = codomain.difference(&image).next();
        return Err(format!(
            "{name}: image differs from codomain (outside: {extra:?}, missed: {missing:?})"
        ));
    }
    Ok(())
}

fn pair_key(d: &Decomposition) -> (Permutation, Permutation) {
    (d.rho.clone(), d.sigma.clone().unwrap_or_default())
}

fn decomposition(rho: &Permutation, sigma: &Permutation, param: i64) -> Decomposition {
    Decomposition {
        rho: rho.clone(),
        sigma: Some(sigma.clone()),
        param,
    }
}

fn check_kratt(nmax: usize) -> Outcome {
    for n in 0..=nmax {
        let domain = avoiders(n, Pattern::p321())?;
        let dyck: Vec<LatticePath> = lift(enumerate_dyck(n, &PathFilter::all()))?.collect();
        bijection_on("kratt", &domain, dyck.clone(), kratt_forward, kratt_inverse)?;
        for d in &dyck {
            let p = lift(kratt_inverse(d))?;
            eq(format_args!("kratt-inv then kratt on {d}"), lift(kratt_forward(&p))?, d.clone())?;
        }
        for p in &domain {
            let st = lift(kratt_forward(p))?.stats();
            eq(
                format_args!("first letter vs first ascent for {p}"),
                p.first().unwrap_or(0) as usize,
                st.first_ascent,
            )?;
            let pos_max = p.position_of(n as u32).unwrap_or(0);
            for i in 1..=n {
                eq(
                    format_args!("max position vs last descent for {p}, i = {i}"),
                    pos_max + i <= n + 1,
                    st.last_descent >= i,
                )?;
            }
        }
    }
    Ok(())
}

fn check_phi(nmax: usize) -> Outcome {
    for n in 2..=nmax {
        let all = avoiders(n, Pattern::p321())?;
        for i in 1..n {
            let domain: Vec<_> = all.iter().filter(|p| p.last_increasing(i)).cloned().collect();
            let codomain = all
                .iter()
                .filter(|p| p.position_of(n as u32).unwrap() + i <= n + 1)
                .cloned();
            bijection_on(
                "phi",
                &domain,
                codomain,
                |p| phi_last_increasing(p, i),
                |p| phi_last_increasing_inverse(p, i),
            )?;
            for p in &domain {
                eq("phi keeps the first letter", lift(phi_last_increasing(p, i))?.first(), p.first())?;
            }
        }
    }
    Ok(())
}

fn one132(n: usize) -> std::result::Result<Vec<Permutation>, String> {
    perms(n, PermFilter::all().with_pattern(Pattern::p132(), 1))
}

fn check_one132_consecutive(nmax: usize) -> Outcome {
    for n in 3..=nmax {
        let domain: Vec<_> = one132(n)?
            .into_iter()
            .filter(is_one132_consecutive)
            .collect();
        let small = avoiders(n - 2, Pattern::p132())?;
        let codomain = small.iter().flat_map(|rho| {
            (1..=(n - 2) as i64).map(move |k| Decomposition {
                rho: rho.clone(),
                sigma: None,
                param: k,
            })
        });
        bijection_on(
            "one132-consecutive",
            &domain,
            codomain,
            one132_consecutive_decompose,
            one132_consecutive_compose,
        )?;
        eq(
            format_args!("consecutive class size at n = {n}"),
            BigInt::from(domain.len()),
            binomial(2 * n as i64 - 4, n as i64 - 3),
        )?;
    }
    Ok(())
}

fn check_one132_fsl(nmax: usize) -> Outcome {
    for n in 3..=nmax {
        let domain: Vec<_> = one132(n)?
            .into_iter()
            .filter(is_one132_first_second_last)
            .collect();
        let codomain = avoiders(n - 3, Pattern::p132())?;
        bijection_on(
            "one132-ends",
            &domain,
            codomain,
            one132_first_second_last_decompose,
            one132_first_second_last_compose,
        )?;
    }
    Ok(())
}

fn check_one132_split(nmax: usize) -> Outcome {
    for n in 3..=nmax {
        let domain = one132(n)?;
        let mut codomain = Vec::new();
        for k in 0..=n - 3 {
            let rhos: Vec<_> = one132(n - k)?
                .into_iter()
                .filter(is_one132_consecutive)
                .collect();
            let sigmas: Vec<_> = one132(k + 3)?
                .into_iter()
                .filter(is_one132_first_second_last)
                .collect();
            for rho in &rhos {
                for sigma in &sigmas {
                    codomain.push((rho.clone(), sigma.clone()));
                }
            }
        }
        bijection_on(
            "one132-split",
            &domain,
            codomain,
            |p| one132_split(p).map(|d| pair_key(&d)),
            |(rho, sigma)| one132_join(&decomposition(rho, sigma, -1)),
        )?;
    }
    Ok(())
}

fn check_one321(nmax: usize) -> Outcome {
    for n in 3..=nmax {
        let domain = perms(n, PermFilter::all().with_pattern(Pattern::p321(), 1))?;
        let mut codomain = Vec::new();
        for b in 2..n {
            let rhos = perms(
                b,
                PermFilter::all()
                    .and(PermPredicate::Last(Cmp::Le, b - 1))
                    .with_pattern(Pattern::p321(), 0),
            )?;
            let sigmas = perms(
                n - b + 1,
                PermFilter::all()
                    .and(PermPredicate::First(Cmp::Ge, 2))
                    .with_pattern(Pattern::p321(), 0),
            )?;
            for rho in &rhos {
                for sigma in &sigmas {
                    codomain.push((rho.clone(), sigma.clone()));
                }
            }
        }
        bijection_on(
            "one321",
            &domain,
            codomain,
            |p| one321_decompose(p).map(|d| pair_key(&d)),
            |(rho, sigma)| one321_compose(&decomposition(rho, sigma, -1)),
        )?;
    }
    Ok(())
}

fn check_two321_common_b(nmax: usize) -> Outcome {
    for n in 4..=nmax {
        let two = perms(n, PermFilter::all().with_pattern(Pattern::p321(), 2))?;
        let domain: Vec<_> = two.iter().filter(|p| is_two321_common_b_last(p)).cloned().collect();
        let mut codomain = Vec::new();
        for b in 2..n - 1 {
            let rhos = perms(
                b + 1,
                PermFilter::all()
                    .and(PermPredicate::Last(Cmp::Le, b - 1))
                    .with_pattern(Pattern::p321(), 0),
            )?;
            let sigmas = perms(
                n - b + 1,
                PermFilter::all()
                    .and(PermPredicate::PosOfMin(Cmp::Ge, 3))
                    .with_pattern(Pattern::p321(), 0),
            )?;
            for rho in &rhos {
                for sigma in &sigmas {
                    codomain.push((rho.clone(), sigma.clone()));
                }
            }
        }
        bijection_on(
            "two321-b",
            &domain,
            codomain,
            |p| two321_common_b_decompose(p).map(|d| pair_key(&d)),
            |(rho, sigma)| two321_common_b_compose(&decomposition(rho, sigma, -1)),
        )?;
        let mirrored: Vec<_> = two
            .iter()
            .filter(|p| is_two321_common_b_first(p))
            .map(|p| p.reverse_complement().unwrap())
            .collect();
        let mirrored: BTreeSet<_> = mirrored.into_iter().collect();
        let direct: BTreeSet<_> = domain.into_iter().collect();
        eq(format_args!("reverse-complement mirror at n = {n}"), mirrored, direct)?;
    }
    Ok(())
}

fn check_two321_distinct_b(nmax: usize) -> Outcome {
    for n in 4..=nmax {
        let domain: Vec<_> = perms(n, PermFilter::all().with_pattern(Pattern::p321(), 2))?
            .into_iter()
            .filter(is_two321_distinct_b)
            .collect();
        let mut codomain = Vec::new();
        for k in 0..=n - 4 {
            let rhos = perms(n - k - 1, PermFilter::all().with_pattern(Pattern::p321(), 1))?;
            let top = k + 2;
            let sigmas = perms(
                top,
                PermFilter::all()
                    .and(PermPredicate::First(Cmp::Ge, 2))
                    .and(PermPredicate::Last(Cmp::Lt, top))
                    .with_pattern(Pattern::p321(), 0),
            )?;
            for rho in &rhos {
                for sigma in &sigmas {
                    codomain.push((rho.clone(), sigma.clone()));
                }
            }
        }
        bijection_on(
            "two321-k",
            &domain,
            codomain,
            |p| two321_distinct_b_decompose(p).map(|d| pair_key(&d)),
            |(rho, sigma)| two321_distinct_b_compose(&decomposition(rho, sigma, -1)),
        )?;
    }
    Ok(())
}

fn check_returns(max_ups: usize) -> Outcome {
    for ups in 1..=max_ups {
        for downs in 0..=ups {
            let domain: Vec<LatticePath> = lift(enumerate_quadrant(ups, downs, &PathFilter::all()))?
                .filter(|p| p.steps()[0] == Step::Up)
                .collect();
            let mut codomain = Vec::new();
            for j in 0..=downs {
                for q in lift(enumerate_quadrant(ups - 1, downs - j, &PathFilter::all()))? {
                    if j as i64 <= q.end_height() + 1 {
                        codomain.push((q, j));
                    }
                }
            }
            bijection_on(
                "returns",
                &domain,
                codomain,
                returns_deletion,
                |(q, j)| returns_insertion(q, *j),
            )?;
        }
    }
    Ok(())
}

fn check_nonfinal(nmax: usize) -> Outcome {
    for n in 0..=nmax {
        let dyck: Vec<LatticePath> = lift(enumerate_dyck(n, &PathFilter::all()))?.collect();
        for i in 0..=n {
            let pred = PathPredicate::NonfinalDescentsOne(i);
            let room = |d: &LatticePath| i == 0 || n > i + d.stats().last_descent;
            let domain: Vec<_> = dyck.iter().filter(|d| pred.test(d) && room(d)).cloned().collect();
            let codomain = dyck
                .iter()
                .filter(|d| room(d) && (i == 0 || d.stats().first_ascent > i))
                .cloned();
            bijection_on(
                "nonfinal",
                &domain,
                codomain,
                |d| nonfinal_transfer(d, i),
                |d| nonfinal_transfer_inverse(d, i),
            )?;
            for d in &domain {
                let (before, after) = (d.stats(), lift(nonfinal_transfer(d, i))?.stats());
                eq("first ascent grows by i", after.first_ascent, before.first_ascent + i)?;
                eq(format_args!("last descent of {d}"), after.last_descent, before.last_descent)?;
            }
        }
    }
    Ok(())
}

fn bijection_checks(nmax: usize) -> Vec<Check> {
    let pmax = nmax - 1;
    let path_max = (nmax + 1).min(DYCK_CAP);
    vec![
        check(format!("kratt round trip, image and statistics, n <= {nmax}"), move || {
            check_kratt(nmax)
        }),
        check(format!("phi round trip and image, n <= {pmax}"), move || check_phi(pmax)),
        check(format!("one132-consecutive round trip and image, n <= {pmax}"), move || {
            check_one132_consecutive(pmax)
        }),
        check(format!("one132-ends round trip and image, n <= {pmax}"), move || {
            check_one132_fsl(pmax)
        }),
        check(format!("one132-split round trip and image, n <= {pmax}"), move || {
            check_one132_split(pmax)
        }),
        check(format!("one321 round trip and image, n <= {pmax}"), move || check_one321(pmax)),
        check(format!("two321-b round trip and image, n <= {pmax}"), move || {
            check_two321_common_b(pmax)
        }),
        check(format!("two321-k round trip and image, n <= {pmax}"), move || {
            check_two321_distinct_b(pmax)
        }),
        check(
            format!("returns deletion round trip and image, up to {path_max} upsteps"),
            move || check_returns(path_max),
        ),
        check(
            format!("nonfinal transfer round trip and image, n <= {path_max}"),
            move || check_nonfinal(path_max),
        ),
    ]
}

// ---------------------------------------------------------------------------
// Identities

fn ballot_identity_checks() -> Vec<Check> {
    vec![
        check("ballot closed forms agree, n <= 50, k <= 25", || {
            for n in 0..=50 {
                for k in 0..=25 {
                    eq(format_args!("C^({k})_{n}"), ballot(k, n), ballot_difference_form(k, n))?;
                }
            }
            Ok(())
        }),
        check("ballot convolution, r + s <= 12, n <= 20", || {
            for r in 0..=12 {
                for s in 0..=12 - r {
                    for n in 0..=20 {
                        let sum: BigInt = (0..=n).map(|k| ballot(r, k) * ballot(s, n - k)).sum();
                        eq(format_args!("r = {r}, s = {s}, n = {n}"), sum, ballot(r + s, n))?;
                    }
                }
            }
            Ok(())
        }),
        check("alternating ballot sums give binomials, m <= 10, k <= 21", || {
            for m in 0..=10i64 {
                for k in 1..=21i64 {
                    let top = m.min(k - m - 1);
                    let sum: BigInt = (0..=top).map(|j| ballot(k - 2 * j, j)).sum();
                    eq(format_args!("m = {m}, k = {k}"), sum, binomial(k - 1, m))?;
                }
            }
            Ok(())
        }),
        check("ballot recurrences (i)-(iii), n <= 20, k <= 12", || {
            for n in 0..=20 {
                for k in 1..=12 {
                    eq(
                        format_args!("(i) k = {k}, n = {n}"),
                        ballot(k, n) - ballot(k - 1, n),
                        ballot(k + 1, n - 1),
                    )?;
                    if k >= 2 {
                        eq(
                            format_args!("(ii) k = {k}, n = {n}"),
                            ballot(k, n) - ballot(k, n - 1),
                            ballot(k - 2, n) + ballot(k + 1, n - 1),
                        )?;
                    }
                }
                for k in 0..=12 {
                    let sum: BigInt = (0..=n).map(|j| ballot(k + j, n - j)).sum();
                    eq(format_args!("(iii) k = {k}, n = {n}"), sum, ballot(k + 1, n))?;
                }
            }
            Ok(())
        }),
        check("central binomial convolution with Catalan numbers, m <= 15", || {
            for m in 1..=15i64 {
                let sum: BigInt = (0..m)
                    .map(|k| binomial(2 * m - 2 * k, m - 1 - k) * catalan(k))
                    .sum();
                eq(format_args!("m = {m}"), sum, binomial(2 * m + 1, m - 1))?;
            }
            Ok(())
        }),
        check("last-ascents F = G, n <= 12, r, s <= 5", || {
            for n in 0..=12 {
                for r in 1..=5 {
                    for s in 1..=5 {
                        eq(
                            format_args!("n = {n}, r = {r}, s = {s}"),
                            count_lastascents_f(n, r, s),
                            count_lastascents_g(n, r, s),
                        )?;
                    }
                }
            }
            Ok(())
        }),
        check("F(n, r, 1) = C^(r+1)_(n-r) and F symmetric, n <= 10, r, s <= 4", || {
            for n in 0..=10 {
                for r in 1..=4 {
                    eq(
                        format_args!("n = {n}, r = {r}"),
                        count_lastascents_f(n, r, 1),
                        ballot(r as i64 + 1, n - r as i64),
                    )?;
                    for s in 1..=4 {
                        eq(
                            format_args!("n = {n}, r = {r}, s = {s}"),
                            count_lastascents_f(n, r, s),
                            count_lastascents_f(n, s, r),
                        )?;
                    }
                }
            }
            Ok(())
        }),
    ]
}

fn series_checks(nmax: usize) -> Vec<Check> {
    let bounded_max = (nmax + 3).min(DYCK_CAP);
    let corridor_max = nmax - 1;
    vec![
        check(
            format!("bounded-height counts = enumeration, n <= {bounded_max}, h <= 6"),
            move || {
                for n in 0..=bounded_max {
                    let mut by_height = vec![0u64; n + 1];
                    for d in lift(enumerate_dyck(n, &PathFilter::all()))? {
                        by_height[d.max_height() as usize] += 1;
                    }
                    for h in 0..=6 {
                        let want: u64 = by_height.iter().take(h + 1).sum();
                        eq(
                            format_args!("n = {n}, h = {h}"),
                            bounded_height_count(n, h),
                            BigInt::from(want),
                        )?;
                    }
                }
                Ok(())
            },
        ),
        check(
            format!("corridor counts = enumeration, n <= {corridor_max}, h <= 4, r, s <= 3"),
            move || {
                for n in 0..=corridor_max {
                    for h in 1..=4 {
                        for r in 0..=3 {
                            for s in 0..=3 {
                                let paths = lift(enumerate_paths(
                                    n + h - 1,
                                    n,
                                    -(r as i64),
                                    (s + h - 1) as i64,
                                ))?;
                                eq(
                                    format_args!("n = {n}, h = {h}, r = {r}, s = {s}"),
                                    corridor_count(n, h, r, s),
                                    BigInt::from(paths.count()),
                                )?;
                            }
                        }
                    }
                }
                Ok(())
            },
        ),
        check("Catalan triangle times its inverse is the identity, nmax = 10", || {
            let prod = matrix_product(&catalan_triangle(10), &catalan_triangle_inverse(10));
            if is_identity(&prod) {
                Ok(())
            } else {
                Err("product is not the identity".into())
            }
        }),
        check("Catalan triangle row sums from column k give column k + 1, nmax = 10", || {
            let t = catalan_triangle(11);
            for n in 0..=10 {
                for k in 0..=n {
                    let sum: BigInt = t[n][k..].iter().sum();
                    eq(format_args!("row {n}, column {k}"), sum, t[n + 1][k + 1].clone())?;
                }
            }
            Ok(())
        }),
        check("inverse triangle rows are the coefficients of q_n, n <= 10", || {
            let inv = catalan_triangle_inverse(10);
            for n in 0..=10 {
                let q = chebyshev_q(n);
                for j in 0..=n {
                    eq(format_args!("n = {n}, j = {j}"), q.coeff(j), inv[n][n - j].clone())?;
                }
            }
            Ok(())
        }),
        check("q_(2h-1) = p_h q_(h-1), h <= 8", || {
            for h in 1..=8 {
                eq(format_args!("h = {h}"), chebyshev_q(2 * h - 1), &chebyshev_p(h) * &chebyshev_q(h - 1))?;
            }
            Ok(())
        }),
    ]
}

fn histogram_checks(nmax: usize) -> Vec<Check> {
    let total = (nmax + 1).min(HISTOGRAM_CAP);
    vec![check(
        format!("marked high point is uniform, n + k <= {total}"),
        move || {
            for k in 1..=total {
                for n in 0..=total - k {
                    let h = lift(marked_highpoint_histogram(n, k))?;
                    let want = ballot(k as i64, n as i64);
                    for (x, v) in &h {
                        eq(format_args!("n = {n}, k = {k}, bin {x}"), BigInt::from(*v), want.clone())?;
                    }
                }
            }
            Ok(())
        },
    )]
}
