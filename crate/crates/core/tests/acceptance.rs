//! Acceptance criteria, one PASS/FAIL line each. Every comparison is an
//! exact integer equality.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use patcount::formulas::{count, CountFamily};
use patcount::oracle::oracle_count;
use patcount::paths::binomial;
use patcount::verify::{family_matches_oracle, run_suite, CheckGroup, Suite, VerifyReport};

type Outcome = Result<(), String>;

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Outcome {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn formula_value(family: CountFamily, n: i64) -> Result<BigInt, String> {
    count(family, n).map_err(|e| e.to_string())
}

fn matches(families: &[CountFamily], hi: usize) -> Outcome {
    families
        .iter()
        .try_for_each(|&f| family_matches_oracle(f, 1, hi))
}

fn group_passes(report: &VerifyReport, groups: &[CheckGroup]) -> Outcome {
    let mut seen = 0;
    for c in report.checks.iter().filter(|c| groups.contains(&c.group)) {
        seen += 1;
        if !c.passed {
            return Err(format!("{}: {}", c.name, c.detail));
        }
    }
    if seen == 0 {
        return Err("no checks ran".into());
    }
    Ok(())
}

fn named_check(report: &VerifyReport, needle: &str) -> Outcome {
    let hits: Vec<_> = report.checks.iter().filter(|c| c.name.contains(needle)).collect();
    if hits.is_empty() {
        return Err(format!("no check named like `{needle}`"));
    }
    match hits.iter().find(|c| !c.passed) {
        Some(c) => Err(format!("{}: {}", c.name, c.detail)),
        None => Ok(()),
    }
}

fn timed_suite(nmax: usize, limit: Duration) -> Result<(VerifyReport, Duration), String> {
    let start = Instant::now();
    let report = run_suite(Suite::All, nmax).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    if took >= limit {
        return Err(format!("nmax {nmax} took {took:?}, limit {limit:?}"));
    }
    Ok((report, took))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let oracle = oracle_count(CountFamily::P132One, 10).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    expect("oracle at n = 10", oracle, binomial(17, 7))?;
    expect("binom(17, 7)", binomial(17, 7), BigInt::from(19448))?;
    if took >= Duration::from_secs(60) {
        return Err(format!("oracle at n = 10 took {took:?}"));
    }
    family_matches_oracle(CountFamily::P132One, 1, 10)?;
    for n in 3..=10 {
        expect(
            &format!("closed form at n = {n}"),
            formula_value(CountFamily::P132One, n)?,
            binomial(2 * n - 3, n - 3),
        )?;
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    expect("n = 4", formula_value(CountFamily::P321(1), 4)?, BigInt::from(6))?;
    matches(&[CountFamily::P321(1)], 10)
}

fn criterion_3() -> Outcome {
    expect("n = 6", formula_value(CountFamily::P321(2), 6)?, BigInt::from(133))?;
    matches(&[CountFamily::P321(2)], 10)
}

fn criterion_4() -> Outcome {
    expect("three copies, n = 4", formula_value(CountFamily::P321(3), 4)?, BigInt::from(0))?;
    expect("four copies, n = 4", formula_value(CountFamily::P321(4), 4)?, BigInt::from(1))?;
    matches(&[CountFamily::P321(3), CountFamily::P321(4)], 10)
}

fn criterion_5() -> Outcome {
    matches(&[CountFamily::P321OneLast2Up, CountFamily::P321TwoLast2Up], 10)
}

fn criterion_6() -> Outcome {
    for n in 1..=10 {
        expect(
            &format!("2^(n-1) at n = {n}"),
            formula_value(CountFamily::SimionSchmidt, n)?,
            BigInt::from(1) << (n - 1),
        )?;
    }
    let mut families = vec![CountFamily::SimionSchmidt];
    families.extend((1..=4).map(CountFamily::Avoid123With132));
    matches(&families, 10)
}

fn criterion_7(r: &VerifyReport) -> Outcome {
    group_passes(r, &[CheckGroup::Bijections])?;
    named_check(r, "kratt round trip, image and statistics, n <= 9")?;
    for map in ["phi", "one132-consecutive", "one132-ends", "one132-split", "one321", "two321-b", "two321-k"] {
        named_check(r, &format!("{map} round trip and image, n <= 8"))?;
    }
    named_check(r, "returns deletion round trip and image, up to 10 upsteps")?;
    named_check(r, "nonfinal transfer round trip and image, n <= 10")
}

fn criterion_8(r: &VerifyReport) -> Outcome {
    group_passes(r, &[CheckGroup::Ballot])?;
    for name in [
        "ballot closed forms agree, n <= 50, k <= 25",
        "ballot convolution, r + s <= 12, n <= 20",
        "alternating ballot sums",
        "ballot recurrences (i)-(iii)",
        "central binomial convolution with Catalan numbers, m <= 15",
        "last-ascents F = G, n <= 12, r, s <= 5",
    ] {
        named_check(r, name)?;
    }
    Ok(())
}

fn criterion_9(r: &VerifyReport) -> Outcome {
    group_passes(r, &[CheckGroup::Series])?;
    for name in [
        "bounded-height counts = enumeration, n <= 12, h <= 6",
        "corridor counts = enumeration, n <= 8, h <= 4",
        "Catalan triangle times its inverse is the identity, nmax = 10",
        "inverse triangle rows are the coefficients of q_n, n <= 10",
        "q_(2h-1) = p_h q_(h-1), h <= 8",
    ] {
        named_check(r, name)?;
    }
    Ok(())
}

fn criterion_10(r: &VerifyReport) -> Outcome {
    group_passes(r, &[CheckGroup::Histogram])?;
    named_check(r, "marked high point is uniform, n + k <= 10")
}

fn report(no: usize, title: &str, outcome: &Outcome) -> bool {
    match outcome {
        Ok(()) => println!("PASS criterion {no:>2}: {title}"),
        Err(e) => println!("FAIL criterion {no:>2}: {title}: {e}"),
    }
    outcome.is_ok()
}

fn main() -> ExitCode {
    let mut ok = true;
    ok &= report(1, "one 132, n <= 10", &criterion_1());
    ok &= report(2, "one 321, n <= 10", &criterion_2());
    ok &= report(3, "two 321s, n <= 10", &criterion_3());
    ok &= report(4, "three and four 321s, n <= 10", &criterion_4());
    ok &= report(5, "321 counts with last two ascending, n <= 10", &criterion_5());
    ok &= report(6, "123-avoiders with 0..4 copies of 132, n <= 10", &criterion_6());

    let nine = timed_suite(9, Duration::from_secs(5 * 60));
    let suite_outcome = |f: fn(&VerifyReport) -> Outcome| match &nine {
        Ok((r, _)) => f(r),
        Err(e) => Err(e.clone()),
    };
    ok &= report(7, "bijection round trips and images", &suite_outcome(criterion_7));
    ok &= report(8, "ballot identities", &suite_outcome(criterion_8));
    ok &= report(9, "bounded paths, corridors and the Catalan triangle", &suite_outcome(criterion_9));
    ok &= report(10, "marked high point uniformity", &suite_outcome(criterion_10));

    let perf = nine.and_then(|(r9, t9)| {
        if !r9.all_passed() {
            return Err(format!("{} checks failed at nmax 9", r9.failed()));
        }
        let (r10, t10) = timed_suite(10, Duration::from_secs(30 * 60))?;
        if !r10.all_passed() {
            return Err(format!("{} checks failed at nmax 10", r10.failed()));
        }
        println!("verify all: nmax 9 in {t9:.1?}, nmax 10 in {t10:.1?}");
        Ok(())
    });
    ok &= report(11, "verify all within 5 min (nmax 9) and 30 min (nmax 10)", &perf);

    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
