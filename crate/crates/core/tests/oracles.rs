mod common;

use monomial_canon::bench::random_factor;
use monomial_canon::depth::depth_with_bound;
use monomial_canon::{
    depth, homology_dims, join_exponents, matrix_rank, sdepth, DepthOptions, FieldChoice,
    IntMatrix, Limits,
};
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{exhaustive_sdepth, factor, in_quotient};

/// Gaussian elimination over exact rationals.
fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect()
        })
        .collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(p, rank);
        for r in rank + 1..a.len() {
            let factor = &a[r][c] / &a[rank][c];
            let pivot_row = a[rank].clone();
            for (x, y) in a[r][c..].iter_mut().zip(&pivot_row[c..]) {
                *x -= &factor * y;
            }
        }
        rank += 1;
    }
    rank
}

fn matrices() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..7, 1usize..7)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

proptest! {
    #[test]
    fn rank_matches_rational_elimination(rows in matrices()) {
        let m = IntMatrix::from_rows(&rows);
        prop_assert_eq!(matrix_rank(&m, FieldChoice::Rationals), rational_rank(&rows));
    }

    #[test]
    fn rank_survives_big_entries(rows in matrices(), scale in 1i64..1_000_000_000) {
        let big: Vec<Vec<i64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| x * scale + x.signum()).collect())
            .collect();
        let m = IntMatrix::from_rows(&big);
        prop_assert_eq!(matrix_rank(&m, FieldChoice::Rationals), rational_rank(&big));
    }
}

#[test]
fn prime_field_rank_can_drop() {
    // rank over F_p never exceeds the rank over Q
    let rows = vec![vec![2, 4], vec![6, 8]];
    let m = IntMatrix::from_rows(&rows);
    assert_eq!(matrix_rank(&m, FieldChoice::Rationals), 2);
    assert_eq!(matrix_rank(&m, FieldChoice::PrimeField(2)), 0);
    assert_eq!(matrix_rank(&m, FieldChoice::PrimeField(3)), 2);
}

#[test]
fn homology_is_field_independent_on_monomial_slices() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let q = FieldChoice::Rationals;
    let p = FieldChoice::prime(32003).unwrap();
    for _ in 0..60 {
        let f = random_factor(&mut rng, 3, 3);
        let g: Vec<u32> = join_exponents(&f).iter().map(|x| x + 1).collect();
        let mut a = vec![0u32; g.len()];
        loop {
            assert_eq!(
                homology_dims(&f, &a, q).unwrap(),
                homology_dims(&f, &a, p).unwrap()
            );
            let Some(j) = (0..a.len()).rev().find(|&j| a[j] < g[j]) else {
                break;
            };
            a[j] += 1;
            a[j + 1..].iter_mut().for_each(|x| *x = 0);
        }
        let dq = depth(
            &f,
            &DepthOptions {
                field: q,
                ..Default::default()
            },
        )
        .unwrap();
        let dp = depth(
            &f,
            &DepthOptions {
                field: p,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(dq.depth, dp.depth);
    }
}

#[test]
fn euler_characteristic_counts_present_cells() {
    // Σ (-1)^i dim H_i = Σ (-1)^|F| over present subsets F
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..40 {
        let f = random_factor(&mut rng, 3, 3);
        let n = f.nvars();
        let g = join_exponents(&f);
        let mut a = vec![0u32; n];
        loop {
            let h = homology_dims(&f, &a, FieldChoice::Rationals).unwrap();
            let lhs: i64 = h.iter().enumerate().map(|(i, &d)| sign(i) * d as i64).sum();
            let rhs: i64 = (0..1usize << n)
                .filter(|&mask| {
                    (0..n).all(|j| mask >> j & 1 == 0 || a[j] > 0) && {
                        let b: Vec<u32> = (0..n).map(|j| a[j] - (mask >> j & 1) as u32).collect();
                        in_quotient(&f, &b)
                    }
                })
                .map(|mask| sign(mask.count_ones() as usize))
                .sum();
            assert_eq!(lhs, rhs, "{a:?}");
            let Some(j) = (0..n).rev().find(|&j| a[j] < g[j] + 1) else {
                break;
            };
            a[j] += 1;
            a[j + 1..].iter_mut().for_each(|x| *x = 0);
        }
    }
}

fn sign(i: usize) -> i64 {
    if i.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[test]
fn sdepth_matches_exhaustive_cover() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..80 {
        let f = random_factor(&mut rng, 3, 3);
        let s = sdepth(&f, &Limits::default()).unwrap();
        assert_eq!(s.value, exhaustive_sdepth(&f));
    }
}

#[test]
fn depth_is_stable_under_a_larger_box() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let opts = DepthOptions::default();
    for _ in 0..40 {
        let f = random_factor(&mut rng, 3, 3);
        let g = join_exponents(&f);
        let wider: Vec<u32> = g.iter().map(|x| x + 2).collect();
        assert_eq!(
            depth(&f, &opts).unwrap().depth,
            depth_with_bound(&f, &wider, &opts).unwrap().depth
        );
    }
}

#[test]
fn squarefree_monomial_ideals_with_known_depth() {
    // S/(xy, zt) is a complete intersection; (xy, yz) = y(x, z) has pd 2
    let opts = DepthOptions::default();
    let ci = factor("ring x, y, z, t; I = 1; J = x*y, z*t;");
    assert_eq!(depth(&ci, &opts).unwrap().depth, 2);
    let path = factor("ring x, y, z; I = 1; J = x*y, y*z;");
    assert_eq!(depth(&path, &opts).unwrap().depth, 1);
    // sdepth of the maximal ideal is ⌈n/2⌉
    let m4 = factor("ring x, y, z, t; I = x, y, z, t;");
    assert_eq!(sdepth(&m4, &Limits::default()).unwrap().value, 2);
}

#[test]
#[ignore = "stretch: 10 variables, canonical box of 57,624 points"]
fn ten_variable_depth() {
    let text = include_str!("../inputs/timings_ten_vars.txt");
    let f = monomial_canon::canonicalize(&factor(text)).unwrap();
    let r = depth(
        &f,
        &DepthOptions {
            parallel: true,
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(r.depth, 6);
}
