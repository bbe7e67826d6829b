//! Stanley depth through interval partitions of the characteristic poset.
//!
//! For a bound `g` dominating every generator exponent, the characteristic
//! poset of `I/J` is `P = { a ≤ g : x^a ∈ I \ J }`. A partition of `P` into
//! intervals `[a, b]` yields a Stanley decomposition whose spaces have
//! dimension `ρ(b) = #{ j : b_j = g_j }`, and the Stanley depth is the best
//! achievable `min ρ(b)` over all such partitions.
//!
//! The decision procedure only needs intervals of a restricted shape. Slicing
//! an interval along a coordinate `j` with `b_j < g_j` gives pieces with the
//! same `ρ`, and slicing along a saturated coordinate `j` with `a_j < g_j`
//! gives pieces whose `ρ` drops by at most one. Repeating both, any partition
//! with `min ρ ≥ d` refines to one made of intervals `[a, a ∨ g_Z]`: the
//! coordinates in `Z` are raised to `g`, the others stay at `a`, and
//! `|Z| = max(0, d − #{ j : a_j = g_j })` with `Z` drawn from the
//! unsaturated coordinates of `a`. These are exactly the Stanley spaces
//! `x^a K[Z ∪ sat(a)]`.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::time::Instant;

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::BoxGrid;
use crate::limits::Limits;
use crate::monomial::{join_exponents, Factor, Ring};

#[derive(Clone, Debug)]
pub struct CharacteristicPoset {
    grid: BoxGrid,
    members: FixedBitSet,
    len: usize,
}

impl CharacteristicPoset {
    pub fn bound(&self) -> &[u32] {
        self.grid.bound()
    }

    pub fn nvars(&self) -> usize {
        self.grid.nvars()
    }

    pub fn box_volume(&self) -> usize {
        self.grid.volume()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, a: &[u32]) -> bool {
        self.grid.contains(a) && self.members.contains(self.grid.index(a))
    }

    /// Elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        self.members.ones().map(|i| self.grid.decode(i))
    }
}

pub fn char_poset(f: &Factor, limits: &Limits) -> Result<CharacteristicPoset> {
    char_poset_with_bound(f, &join_exponents(f), limits)
}

/// Poset for an explicit bound `g`, which must dominate every generator.
pub fn char_poset_with_bound(
    f: &Factor,
    g: &[u32],
    limits: &Limits,
) -> Result<CharacteristicPoset> {
    let join = join_exponents(f);
    if g.len() != join.len() || g.iter().zip(&join).any(|(a, b)| a < b) {
        return Err(Error::InvalidArgument(format!(
            "bound {g:?} does not dominate the generator exponents {join:?}"
        )));
    }
    let grid = BoxGrid::new(g, limits.box_cap)?;
    let mut members = FixedBitSet::with_capacity(grid.volume());
    let origin = vec![0u32; g.len()];
    let mut a = origin.clone();
    let mut len = 0;
    for idx in 0..grid.volume() {
        if f.supports(&a) {
            members.insert(idx);
            len += 1;
        }
        crate::grid::next_in_interval(&mut a, &origin, g);
    }
    Ok(CharacteristicPoset { grid, members, len })
}

/// Number of coordinates of `b` that reach the bound.
pub fn rho(b: &[u32], g: &[u32]) -> usize {
    b.iter().zip(g).filter(|(x, y)| x == y).count()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub bottom: Vec<u32>,
    pub top: Vec<u32>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalPartition {
    pub intervals: Vec<Interval>,
}

/// Visits every box index of `[a, b]`; stops early when `visit` returns false.
fn scan_interval(
    grid: &BoxGrid,
    a: &[u32],
    b: &[u32],
    mut visit: impl FnMut(usize) -> bool,
) -> bool {
    let free: Vec<(usize, u32)> = (0..a.len())
        .filter(|&j| b[j] > a[j])
        .map(|j| (grid.stride(j), b[j] - a[j]))
        .collect();
    let mut counters = vec![0u32; free.len()];
    let mut idx = grid.index(a);
    loop {
        if !visit(idx) {
            return false;
        }
        let mut k = free.len();
        loop {
            if k == 0 {
                return true;
            }
            k -= 1;
            let (stride, len) = free[k];
            if counters[k] < len {
                counters[k] += 1;
                idx += stride;
                break;
            }
            idx -= stride * counters[k] as usize;
            counters[k] = 0;
        }
    }
}

struct Candidate {
    top: Vec<u32>,
    size: u128,
}

struct Frame {
    bottom_idx: usize,
    bottom: Vec<u32>,
    candidates: Vec<Candidate>,
    next: usize,
    chosen: Option<usize>,
}

/// Bits of covered-state kept for refuted states, per search.
const MEMO_BITS: usize = 1 << 29;

struct Search<'a> {
    poset: &'a CharacteristicPoset,
    d: usize,
    covered: FixedBitSet,
    stack: Vec<Frame>,
    /// Covered sets from which no completion exists. The next element to
    /// cover is a function of the covered set, so the refutation is exact.
    refuted: HashSet<FixedBitSet>,
    memo_capacity: usize,
}

impl Search<'_> {
    fn candidates(&self, a: &[u32]) -> Vec<Candidate> {
        let g = self.poset.bound();
        let unsat: Vec<usize> = (0..a.len()).filter(|&j| a[j] < g[j]).collect();
        let need = self.d.saturating_sub(a.len() - unsat.len());
        let mut out: Vec<Candidate> = unsat
            .iter()
            .copied()
            .combinations(need)
            .filter_map(|z| {
                let mut top = a.to_vec();
                let mut size = 1u128;
                for &j in &z {
                    top[j] = g[j];
                    size *= u128::from(g[j] - a[j]) + 1;
                }
                // a ∈ I and top ∉ J put the whole interval inside P
                if !self.poset.members.contains(self.poset.grid.index(&top)) {
                    return None;
                }
                let free = scan_interval(&self.poset.grid, a, &top, |i| !self.covered.contains(i));
                free.then_some(Candidate { top, size })
            })
            .collect();
        // larger intervals first; the sort is stable so ties keep combination order
        out.sort_by_key(|c| std::cmp::Reverse(c.size));
        out
    }

    fn set_interval(&mut self, a: &[u32], b: &[u32], value: bool) {
        let covered = &mut self.covered;
        scan_interval(&self.poset.grid, a, b, |i| {
            covered.set(i, value);
            true
        });
    }

    /// Moves the top frame to its next candidate, popping exhausted frames.
    /// Returns false when the whole search space is exhausted.
    fn advance(&mut self) -> bool {
        while let Some(frame) = self.stack.last_mut() {
            if let Some(c) = frame.chosen.take() {
                let (a, b) = (frame.bottom.clone(), frame.candidates[c].top.clone());
                self.set_interval(&a, &b, false);
            }
            let frame = self.stack.last_mut().expect("frame");
            if frame.next < frame.candidates.len() {
                let c = frame.next;
                frame.next += 1;
                frame.chosen = Some(c);
                let (a, b) = (frame.bottom.clone(), frame.candidates[c].top.clone());
                self.set_interval(&a, &b, true);
                return true;
            }
            self.stack.pop();
            if self.refuted.len() < self.memo_capacity {
                self.refuted.insert(self.covered.clone());
            }
        }
        false
    }

    fn run(mut self, limits: &Limits, started: Instant) -> Result<Option<IntervalPartition>> {
        let mut nodes: u64 = 0;
        loop {
            let from = self.stack.last().map_or(0, |f| f.bottom_idx + 1);
            let next = (from..self.poset.box_volume())
                .find(|&i| self.poset.members.contains(i) && !self.covered.contains(i));
            let Some(idx) = next else {
                let intervals = self
                    .stack
                    .into_iter()
                    .map(|f| Interval {
                        top: f.candidates[f.chosen.expect("chosen")].top.clone(),
                        bottom: f.bottom,
                    })
                    .collect();
                return Ok(Some(IntervalPartition { intervals }));
            };
            nodes += 1;
            if nodes > limits.node_budget {
                return Err(Error::NodeBudget {
                    budget: limits.node_budget,
                    d: self.d,
                });
            }
            if nodes.is_multiple_of(1024) {
                limits.check_deadline(started)?;
            }
            let bottom = self.poset.grid.decode(idx);
            let candidates = if self.refuted.contains(&self.covered) {
                Vec::new()
            } else {
                self.candidates(&bottom)
            };
            self.stack.push(Frame {
                bottom_idx: idx,
                bottom,
                candidates,
                next: 0,
                chosen: None,
            });
            if !self.advance() {
                return Ok(None);
            }
        }
    }
}

/// Searches for an interval partition of `poset` whose tops all have
/// `ρ ≥ d`. `Ok(None)` means no such partition exists.
pub fn exists_partition(
    poset: &CharacteristicPoset,
    d: usize,
    limits: &Limits,
) -> Result<Option<IntervalPartition>> {
    if d > poset.nvars() {
        return Err(Error::InvalidArgument(format!(
            "d = {d} exceeds the number of variables {}",
            poset.nvars()
        )));
    }
    let search = Search {
        poset,
        d,
        covered: FixedBitSet::with_capacity(poset.box_volume()),
        stack: Vec::new(),
        refuted: HashSet::new(),
        memo_capacity: MEMO_BITS / poset.box_volume().max(64),
    };
    search.run(limits, Instant::now())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sdepth {
    pub value: usize,
    pub bound: Vec<u32>,
    pub certificate: IntervalPartition,
}

pub fn sdepth(f: &Factor, limits: &Limits) -> Result<Sdepth> {
    sdepth_with_bound(f, &join_exponents(f), limits)
}

pub fn sdepth_with_bound(f: &Factor, g: &[u32], limits: &Limits) -> Result<Sdepth> {
    let started = Instant::now();
    let poset = char_poset_with_bound(f, g, limits)?;
    for d in (0..=poset.nvars()).rev() {
        limits.check_deadline(started)?;
        if let Some(certificate) = exists_partition(&poset, d, limits)? {
            return Ok(Sdepth {
                value: d,
                bound: g.to_vec(),
                certificate,
            });
        }
    }
    Err(Error::Internal("no partition even into singletons".into()))
}

pub fn verify_decomposition(f: &Factor, part: &IntervalPartition, d: usize) -> bool {
    verify_decomposition_with_bound(f, &join_exponents(f), part, d)
}

/// Checks that `part` partitions `{ a ≤ g : x^a ∈ I \ J }` exactly and that
/// every top has `ρ ≥ d`. Membership is tested directly against the factor.
pub fn verify_decomposition_with_bound(
    f: &Factor,
    g: &[u32],
    part: &IntervalPartition,
    d: usize,
) -> bool {
    let n = f.nvars();
    let Ok(grid) = BoxGrid::new(g, crate::grid::DEFAULT_BOX_CAP) else {
        return false;
    };
    let mut seen = FixedBitSet::with_capacity(grid.volume());
    let mut count = 0usize;
    for Interval { bottom, top } in &part.intervals {
        if bottom.len() != n || top.len() != n || !grid.contains(top) {
            return false;
        }
        if bottom.iter().zip(top).any(|(a, b)| a > b) || rho(top, g) < d {
            return false;
        }
        let mut cur = bottom.clone();
        loop {
            let idx = grid.index(&cur);
            if !f.supports(&cur) || seen.put(idx) {
                return false;
            }
            count += 1;
            if !crate::grid::next_in_interval(&mut cur, bottom, top) {
                break;
            }
        }
    }
    let expected = grid.points().filter(|a| f.supports(a)).count();
    count == expected
}

/// A Stanley space `x^a · K[vars]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StanleySpace {
    pub monomial: Vec<u32>,
    pub vars: Vec<usize>,
}

/// Expands each interval `[a, b]` into the Stanley spaces `x^c K[Z_b]`, where
/// `Z_b = { j : b_j = g_j }`, `c_j = a_j` on `Z_b` and `c` ranges over
/// `[a_j, b_j]` elsewhere. Intervals found by [`sdepth`] expand to one space.
pub fn stanley_spaces(part: &IntervalPartition, g: &[u32]) -> Vec<StanleySpace> {
    let mut out = Vec::new();
    for Interval { bottom, top } in &part.intervals {
        let vars: Vec<usize> = (0..g.len()).filter(|&j| top[j] == g[j]).collect();
        let mut hi = top.clone();
        for &j in &vars {
            hi[j] = bottom[j];
        }
        let mut c = bottom.clone();
        loop {
            out.push(StanleySpace {
                monomial: c.clone(),
                vars: vars.clone(),
            });
            if !crate::grid::next_in_interval(&mut c, bottom, &hi) {
                break;
            }
        }
    }
    out
}

/// One `x^a * K[vars]` line per Stanley space.
pub fn format_decomposition(ring: &Ring, part: &IntervalPartition, g: &[u32]) -> String {
    let mut s = String::new();
    for space in stanley_spaces(part, g) {
        let m = crate::monomial::Monomial::new(space.monomial).expect("exponents within bound");
        let vars = space
            .vars
            .iter()
            .map(|&j| ring.names()[j].as_str())
            .join(", ");
        let _ = writeln!(s, "{} * K[{}]", ring.monomial(&m), vars);
    }
    s
}
