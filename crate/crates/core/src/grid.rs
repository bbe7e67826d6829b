//! Lexicographic indexing of the multidegree box `[0, g]`.

use crate::error::{Error, Result};

/// Default cap on `∏ (g_j + 1)`.
pub const DEFAULT_BOX_CAP: u128 = 100_000_000;

/// Exact volume of `[0, g]`, saturating at `u128::MAX`.
pub fn box_volume(g: &[u32]) -> u128 {
    g.iter()
        .try_fold(1u128, |acc, &e| acc.checked_mul(u128::from(e) + 1))
        .unwrap_or(u128::MAX)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxGrid {
    g: Vec<u32>,
    strides: Vec<usize>,
    volume: usize,
}

impl BoxGrid {
    pub fn new(g: &[u32], cap: u128) -> Result<Self> {
        let volume = box_volume(g);
        if volume > cap || volume > usize::MAX as u128 {
            return Err(Error::BoxTooLarge { volume, cap });
        }
        let mut strides = vec![1usize; g.len()];
        for j in (0..g.len().saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * (g[j + 1] as usize + 1);
        }
        Ok(BoxGrid {
            g: g.to_vec(),
            strides,
            volume: volume as usize,
        })
    }

    pub fn bound(&self) -> &[u32] {
        &self.g
    }

    pub fn nvars(&self) -> usize {
        self.g.len()
    }

    pub fn volume(&self) -> usize {
        self.volume
    }

    pub fn stride(&self, j: usize) -> usize {
        self.strides[j]
    }

    pub fn index(&self, a: &[u32]) -> usize {
        a.iter()
            .zip(&self.strides)
            .map(|(&e, &s)| e as usize * s)
            .sum()
    }

    pub fn decode_into(&self, mut idx: usize, out: &mut [u32]) {
        for (o, &s) in out.iter_mut().zip(&self.strides) {
            *o = (idx / s) as u32;
            idx %= s;
        }
    }

    pub fn decode(&self, idx: usize) -> Vec<u32> {
        let mut a = vec![0; self.g.len()];
        self.decode_into(idx, &mut a);
        a
    }

    pub fn contains(&self, a: &[u32]) -> bool {
        a.len() == self.g.len() && a.iter().zip(&self.g).all(|(x, g)| x <= g)
    }

    /// Every point of the box in lexicographic (index) order.
    pub fn points(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        (0..self.volume).map(move |i| self.decode(i))
    }
}

/// Steps `cur` to the next point of `[lo, hi]` in lexicographic order.
/// Returns `false` once the interval is exhausted.
pub fn next_in_interval(cur: &mut [u32], lo: &[u32], hi: &[u32]) -> bool {
    for j in (0..cur.len()).rev() {
        if cur[j] < hi[j] {
            cur[j] += 1;
            return true;
        }
        cur[j] = lo[j];
    }
    false
}
