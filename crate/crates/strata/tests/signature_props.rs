use std::collections::BTreeSet;

use num_integer::Integer;
use proptest::prelude::*;
use strata::signature::{enumerate_signatures, parity_count, parity_count_closed, Signature};

fn arb_orders() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(0i64..=12, 1..=5)
        .prop_filter("even total", |v| v.iter().sum::<i64>() % 2 == 0)
}

proptest! {
    #[test]
    fn weights_times_order_is_ell(orders in arb_orders()) {
        let sig = Signature::derive(&orders).unwrap();
        for (a, m) in sig.weights().iter().zip(sig.orders()) {
            prop_assert_eq!(a * (m + 1), sig.ell());
        }
        let mut sorted = orders.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        prop_assert_eq!(sig.orders(), sorted.as_slice());
        prop_assert_eq!(sig.genus(), orders.iter().sum::<i64>() / 2 + 1);
    }

    #[test]
    fn ladder_is_monotone_and_periodic(orders in arb_orders(), lambda in 0i64..200) {
        let sig = Signature::derive(&orders).unwrap();
        let here = sig.ladder(lambda);
        let next = sig.ladder(lambda + 1);
        let shifted = sig.ladder(lambda + sig.ell());
        for i in 0..sig.len() {
            prop_assert!(here[i] <= next[i]);
            prop_assert_eq!(shifted[i], here[i] + sig.orders()[i] + 1);
        }
    }
}

#[test]
fn ladder_sums_exhaustive() {
    for m in 0..=30i64 {
        for other in [0i64, 2, 4, 6, 8] {
            let o2 = if (m + other) % 2 == 0 {
                other
            } else {
                other + 1
            };
            let sig = Signature::derive(&[m, o2]).unwrap();
            let i = sig.orders().iter().position(|&x| x == m).unwrap();
            let brute: i64 = (1..=sig.ell())
                .map(|l| (l + sig.weights()[i] - 1) / sig.weights()[i])
                .sum();
            assert_eq!(sig.ladder_sum(i), brute);
            assert_eq!(2 * brute, (m + 2) * sig.ell(), "m = {m}, signature {sig}");
        }
    }
}

#[test]
fn parity_counts_match_brute_force() {
    let mut checked = 0;
    for k2 in 1..=600i64 {
        for k1 in k2 + 1..=600 / k2 {
            if k1.gcd(&k2) != 1 {
                continue;
            }
            let mut even = 0;
            for l in 1..=k1 * k2 {
                let s = (l + k2 - 1) / k2 + (l + k1 - 1) / k1;
                if s % 2 == 0 {
                    even += 1;
                }
            }
            assert_eq!(parity_count(k1, k2).unwrap(), even, "({k1}, {k2})");
            assert_eq!(parity_count_closed(k1, k2).unwrap(), even, "({k1}, {k2})");
            checked += 1;
        }
    }
    assert!(checked > 1000);
}

fn brute_partitions(total: i64, n_max: usize, zeros: bool) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    let top = if zeros {
        n_max
    } else {
        n_max.min(total.max(1) as usize)
    };
    for len in 1..=top {
        let mut v = vec![0i64; len];
        loop {
            if v.iter().sum::<i64>() == total
                && v.windows(2).all(|w| w[0] >= w[1])
                && (zeros || v.iter().all(|&x| x > 0))
            {
                out.insert(v.clone());
            }
            let mut i = 0;
            loop {
                if i == len {
                    break;
                }
                v[i] += 1;
                if v[i] <= total {
                    break;
                }
                v[i] = 0;
                i += 1;
            }
            if i == len {
                break;
            }
        }
    }
    out
}

#[test]
fn signature_enumeration_is_complete() {
    for g in 1..=8 {
        for n_max in 1..=5 {
            for zeros in [false, true] {
                let listed: Vec<Vec<i64>> = enumerate_signatures(g, n_max, zeros)
                    .iter()
                    .map(|s| s.orders().to_vec())
                    .collect();
                let unique: BTreeSet<Vec<i64>> = listed.iter().cloned().collect();
                assert_eq!(unique.len(), listed.len(), "duplicates at g = {g}");
                assert_eq!(
                    unique,
                    brute_partitions(2 * g - 2, n_max, zeros),
                    "g = {g}, n_max = {n_max}"
                );
            }
        }
    }
}
