use multiknap::smawk::{
    equality_profiles, row_maxima, Counting, FnView, MongeView, SignedItem, NEG_INF,
};
use proptest::prelude::*;

fn naive<V: MongeView>(m: &V) -> Vec<(usize, V::Entry)> {
    (0..m.rows())
        .map(|i| {
            let mut best = (0, m.entry(i, 0));
            for j in 1..m.cols() {
                let v = m.entry(i, j);
                if v > best.1 {
                    best = (j, v);
                }
            }
            best
        })
        .collect()
}

/// `a_i + b_j + c·min(i, j) − f(i − j)` with convex `f`, which is
/// inverse-Monge.
fn matrix(rows: usize, cols: usize, a: &[i64], b: &[i64], c: i64, curv: i64) -> Vec<Vec<i128>> {
    (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| {
                    let d = i as i128 - j as i128;
                    (a[i] + b[j]) as i128 + c as i128 * i.min(j) as i128 - curv as i128 * d * d
                })
                .collect()
        })
        .collect()
}

fn equality_dp(items: &[SignedItem], t: usize) -> Vec<i128> {
    let mut best = vec![NEG_INF; t + 1];
    best[0] = 0;
    for it in items {
        for _ in 0..it.multiplicity {
            for c in (it.size as usize..=t).rev() {
                let prev = best[c - it.size as usize];
                if prev != NEG_INF && prev + it.value > best[c] {
                    best[c] = prev + it.value;
                }
            }
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn random_monge_matches_naive(
        rows in 1usize..=60,
        cols in 1usize..=60,
        seed_a in prop::collection::vec(-50i64..50, 60),
        seed_b in prop::collection::vec(-50i64..50, 60),
        c in 0i64..5,
        curv in 0i64..3,
    ) {
        let m = matrix(rows, cols, &seed_a, &seed_b, c, curv);
        let view = Counting::new(FnView::new(rows, cols, |i, j| m[i][j]));
        let fast = row_maxima(&view);
        prop_assert!(view.evaluations() <= 8 * (rows + cols));
        prop_assert_eq!(fast, naive(&FnView::new(rows, cols, |i, j| m[i][j])));
    }

    #[test]
    fn lower_triangular_neg_inf(n in 1usize..=40, seed in prop::collection::vec(-20i64..20, 40)) {
        // finite only for j ≤ i, concave in i − j
        let f = |i: usize, j: usize| {
            if j > i { NEG_INF } else {
                let d = (i - j) as i128;
                seed[j] as i128 + 10 * d - d * d
            }
        };
        let view = FnView::new(n, n, f);
        let fast = row_maxima(&view);
        for (i, &(j, v)) in fast.iter().enumerate() {
            prop_assert!(j <= i);
            prop_assert!(v != NEG_INF);
        }
    }

    #[test]
    fn profiles_match_equality_dp(
        items in prop::collection::vec((1u64..=8, -9i128..=9, 0u64..=5), 0..=6),
        t in 0u64..=50,
    ) {
        let items: Vec<SignedItem> = items.into_iter().map(|(s, v, u)| SignedItem::new(s, v, u)).collect();
        let p = equality_profiles(&items, t);
        prop_assert_eq!(p.values(), &equality_dp(&items, t as usize)[..]);
        for c in 0..=t {
            let v = p.values()[c as usize];
            if v == NEG_INF {
                prop_assert!(p.recover_counts(c).is_err());
                continue;
            }
            let x = p.recover_counts(c).unwrap();
            let size: u64 = x.iter().zip(&items).map(|(&x, it)| x * it.size).sum();
            let value: i128 = x.iter().zip(&items).map(|(&x, it)| x as i128 * it.value).sum();
            prop_assert!(x.iter().zip(&items).all(|(&x, it)| x <= it.multiplicity));
            prop_assert_eq!(size, c);
            prop_assert_eq!(value, v);
        }
    }
}

#[test]
fn evaluations_grow_linearly() {
    for d in [16usize, 64, 256, 1024] {
        let view = Counting::new(FnView::new(d, d, |i, j| {
            let x = i as i128 - j as i128;
            -x * x
        }));
        row_maxima(&view);
        assert!(view.evaluations() <= 8 * 2 * d, "d = {d}: {}", view.evaluations());
    }
}

#[test]
fn rows_entirely_neg_inf() {
    // the first two rows have no finite entry
    let f = |i: usize, j: usize| if i < 2 || j > i { NEG_INF } else { (i * 10 + j) as i128 };
    let view = FnView::new(5, 5, f);
    let got = row_maxima(&view);
    assert_eq!(got[2], (2, 22));
    assert_eq!(got[4], (4, 44));
    assert_eq!(got[0].1, NEG_INF);
    assert_eq!(got[1].1, NEG_INF);
}
