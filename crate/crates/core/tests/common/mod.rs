//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use monomial_canon::{parse_factor, Factor};

pub fn factor(text: &str) -> Factor {
    parse_factor(text).expect("test input parses").1
}

fn divides(u: &[u32], a: &[u32]) -> bool {
    u.iter().zip(a).all(|(x, y)| x <= y)
}

/// `x^a ∈ I \ J`, straight from the generator exponents.
pub fn in_quotient(f: &Factor, a: &[u32]) -> bool {
    let hit = |gens: &[monomial_canon::Monomial]| gens.iter().any(|g| divides(g.exponents(), a));
    hit(f.numerator().gens()) && !hit(f.denominator().gens())
}

fn join(f: &Factor) -> Vec<u32> {
    let mut g = vec![0; f.nvars()];
    for m in f.all_gens() {
        for (j, e) in m.exponents().iter().enumerate() {
            g[j] = g[j].max(*e);
        }
    }
    g
}

/// Stanley depth by exhaustive exact cover over every interval of the
/// characteristic poset. Only for boxes with at most 64 points.
pub fn exhaustive_sdepth(f: &Factor) -> usize {
    let g = join(f);
    let n = g.len();
    let mut points: Vec<Vec<u32>> = vec![vec![]];
    for &gj in &g {
        points = points
            .into_iter()
            .flat_map(|p| {
                (0..=gj).map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    assert!(points.len() <= 64, "oracle box too large");
    let poset: u64 = points
        .iter()
        .enumerate()
        .filter(|(_, p)| in_quotient(f, p))
        .fold(0, |m, (i, _)| m | 1 << i);
    let index = |p: &[u32]| points.iter().position(|q| q == p).unwrap();
    let rho = |b: &[u32]| (0..n).filter(|&j| b[j] == g[j]).count();

    // every interval [a, b] inside the poset, as (bottom, mask, ρ(top))
    let mut intervals = Vec::new();
    for a in &points {
        for b in &points {
            if !divides(a, b) {
                continue;
            }
            let mask = points
                .iter()
                .enumerate()
                .filter(|(_, c)| divides(a, c) && divides(c, b))
                .fold(0u64, |m, (i, _)| m | 1 << i);
            if mask & !poset == 0 {
                intervals.push((index(a), mask, rho(b)));
            }
        }
    }

    fn cover(
        rest: u64,
        d: usize,
        intervals: &[(usize, u64, usize)],
        memo: &mut HashMap<u64, bool>,
    ) -> bool {
        if rest == 0 {
            return true;
        }
        if let Some(&v) = memo.get(&rest) {
            return v;
        }
        // the lowest remaining point can only be the bottom of its interval
        let low = rest.trailing_zeros() as usize;
        let ok = intervals.iter().any(|&(bottom, mask, r)| {
            bottom == low && r >= d && mask & !rest == 0 && cover(rest & !mask, d, intervals, memo)
        });
        memo.insert(rest, ok);
        ok
    }

    (0..=n)
        .rev()
        .find(|&d| cover(poset, d, &intervals, &mut HashMap::new()))
        .expect("singletons always cover")
}
