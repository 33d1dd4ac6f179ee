use proptest::prelude::*;

use patcount::bijections::*;
use patcount::oracle::{count_perms, PermFilter};
use patcount::paths::{ballot, ballot_difference_form, catalan, count_first_quadrant};
use patcount::perm::{count_occurrences, reduce};
use patcount::series::{chebyshev_p, chebyshev_q};
use patcount::{LatticePath, Pattern, Permutation, Step};

fn perm_strategy(max_n: u32) -> impl Strategy<Value = Permutation> {
    (0..=max_n)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<u32>>()).prop_shuffle())
        .prop_map(|w| Permutation::new(w).unwrap())
}

/// Steers coin flips into a Dyck path of semilength `n`.
fn dyck_from_coins(n: usize, coins: &[bool]) -> LatticePath {
    let (mut ups, mut h) = (0usize, 0usize);
    let mut steps = Vec::with_capacity(2 * n);
    for &up in coins.iter().chain(std::iter::repeat(&false)).take(2 * n) {
        if (up && ups < n) || h == 0 {
            steps.push(Step::Up);
            ups += 1;
            h += 1;
        } else {
            steps.push(Step::Down);
            h -= 1;
        }
    }
    LatticePath::new(steps)
}

fn dyck_strategy(max_n: usize) -> impl Strategy<Value = LatticePath> {
    (0..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), 2 * n).prop_map(move |c| dyck_from_coins(n, &c))
    })
}

/// First-quadrant paths: a Dyck path with extra upsteps spliced in.
fn quadrant_strategy() -> impl Strategy<Value = LatticePath> {
    (dyck_strategy(8), prop::collection::vec(any::<prop::sample::Index>(), 0..5)).prop_map(
        |(d, extra)| {
            let mut steps = d.into_steps();
            for ix in extra {
                let at = ix.index(steps.len() + 1);
                steps.insert(at, Step::Up);
            }
            LatticePath::new(steps)
        },
    )
}

fn avoider_strategy(max_n: usize) -> impl Strategy<Value = Permutation> {
    dyck_strategy(max_n).prop_map(|d| kratt_inverse(&d).unwrap())
}

/// 321-avoiders of `[n]`, `2 <= n <= max_n`, with first letter at least 2.
fn tall_start_avoider(max_n: usize) -> impl Strategy<Value = Permutation> {
    (2..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), 2 * n).prop_map(move |mut c| {
            c[0] = true;
            c[1] = true;
            kratt_inverse(&dyck_from_coins(n, &c)).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn reverse_and_complement_are_involutions(p in perm_strategy(12)) {
        prop_assert_eq!(p.reverse().reverse(), p.clone());
        prop_assert_eq!(p.complement().unwrap().complement().unwrap(), p.clone());
        prop_assert_eq!(
            p.reverse_complement().unwrap(),
            p.reverse().complement().unwrap()
        );
    }

    #[test]
    fn reduce_is_idempotent(w in prop::collection::hash_set(1u32..200, 0..10)) {
        let w: Vec<u32> = w.into_iter().collect();
        let r = reduce(&w).unwrap();
        prop_assert!(r.is_on_n());
        prop_assert_eq!(reduce(r.letters()).unwrap(), r.clone());
        for i in 0..w.len() {
            for j in 0..w.len() {
                prop_assert_eq!(w[i] < w[j], r.letters()[i] < r.letters()[j]);
            }
        }
    }

    #[test]
    fn occurrence_counts_respect_symmetries(p in perm_strategy(9)) {
        for (t, rc) in [("132", "213"), ("321", "321"), ("123", "123"), ("231", "312")] {
            let t: Pattern = t.parse().unwrap();
            let rc: Pattern = rc.parse().unwrap();
            let c = count_occurrences(&p, &t);
            prop_assert_eq!(count_occurrences(&p.reverse_complement().unwrap(), &rc), c);
            prop_assert_eq!(count_occurrences(&p.reverse(), &t.reverse()), c);
            prop_assert_eq!(p.occurrences(&t).len(), c);
        }
    }

    #[test]
    fn kratt_round_trips(d in dyck_strategy(14)) {
        let p = kratt_inverse(&d).unwrap();
        prop_assert!(p.avoids(&Pattern::p321()));
        prop_assert_eq!(kratt_forward(&p).unwrap(), d.clone());
        if !d.is_empty() {
            let st = d.stats();
            prop_assert_eq!(p.first().unwrap() as usize, st.first_ascent);
        }
    }

    #[test]
    fn returns_deletion_round_trips(path in quadrant_strategy()) {
        prop_assume!(path.steps().first() == Some(&Step::Up));
        let (q, j) = returns_deletion(&path).unwrap();
        prop_assert!(q.is_first_quadrant());
        prop_assert_eq!(j, path.stats().returns);
        prop_assert_eq!(q.ups() + 1, path.ups());
        prop_assert_eq!(q.downs() + j, path.downs());
        prop_assert_eq!(returns_insertion(&q, j).unwrap(), path);
    }

    #[test]
    fn nonfinal_transfer_round_trips(d in dyck_strategy(12), i in 0usize..4) {
        let st = d.stats();
        prop_assume!(i == 0 || (st.first_ascent > i && d.ups() > i + st.last_descent));
        let back = nonfinal_transfer_inverse(&d, i).unwrap();
        prop_assert_eq!(nonfinal_transfer(&back, i).unwrap(), d.clone());
        let bs = back.stats();
        prop_assert_eq!(bs.last_descent, st.last_descent);
        if i > 0 {
            prop_assert!(bs.descent_seq[..i].iter().all(|&x| x == 1));
            prop_assert_eq!(bs.first_ascent + i, st.first_ascent);
        }
    }

    #[test]
    fn phi_round_trips(p in avoider_strategy(11), i in 1usize..5) {
        prop_assume!(p.len() > i && p.last_increasing(i));
        let q = phi_last_increasing(&p, i).unwrap();
        prop_assert_eq!(q.first(), p.first());
        let n = p.len();
        prop_assert!(q.position_of(n as u32).unwrap() <= n + 1 - i);
        prop_assert_eq!(phi_last_increasing_inverse(&q, i).unwrap(), p);
    }

    #[test]
    fn one321_round_trips(
        rho in tall_start_avoider(7).prop_map(|p| p.reverse_complement().unwrap()),
        sigma in tall_start_avoider(7),
    ) {
        let m = rho.len() as u32;
        let d = Decomposition { rho, sigma: Some(sigma), param: m as i64 };
        let p = one321_compose(&d).unwrap();
        prop_assert_eq!(count_occurrences(&p, &Pattern::p321()), 1);
        prop_assert_eq!(one321_decompose(&p).unwrap(), d);
    }

    #[test]
    fn ballot_forms_agree(k in 0i64..40, n in -3i64..60) {
        prop_assert_eq!(ballot(k, n), ballot_difference_form(k, n));
        if k >= 1 {
            prop_assert_eq!(ballot(k, n) - ballot(k - 1, n), ballot(k + 1, n - 1));
        }
        if n >= 0 {
            prop_assert_eq!(count_first_quadrant(n + k, n), ballot(k + 1, n));
        }
    }

    #[test]
    fn chebyshev_recurrence(h in 1usize..20) {
        let x = patcount::series::IntPolynomial::from_i64(&[0, 1]);
        prop_assert_eq!(chebyshev_q(h + 1), &chebyshev_q(h) - &(&x * &chebyshev_q(h - 1)));
        prop_assert_eq!(chebyshev_q(2 * h - 1), &chebyshev_p(h) * &chebyshev_q(h - 1));
    }
}

#[test]
fn copies_of_321_partition_sn() {
    for n in 0..=7usize {
        let max_copies = n * n.saturating_sub(1) * n.saturating_sub(2) / 6;
        let total: u64 = (0..=max_copies)
            .map(|k| count_perms(n, &PermFilter::all().with_pattern(Pattern::p321(), k)).unwrap())
            .sum();
        assert_eq!(total, (1..=n as u64).product::<u64>(), "n = {n}");
    }
}

#[test]
fn avoiders_are_counted_by_catalan() {
    for n in 0..=9usize {
        for t in ["123", "132", "321", "231"] {
            let f = PermFilter::all().with_pattern(t.parse().unwrap(), 0);
            let got = count_perms(n, &f).unwrap();
            assert_eq!(num_bigint::BigInt::from(got), catalan(n as i64), "{t}, n = {n}");
        }
    }
}
