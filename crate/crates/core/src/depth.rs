//! Depth of `I/J` from multigraded Koszul homology.
//!
//! In multidegree `a` the Koszul complex of `x_1, …, x_n` on `I/J` has one
//! basis vector `e_F` for every subset `F` with `x^{a - ε_F} ∈ I \ J`, and
//! `∂ e_F = Σ_{j ∈ F} ± e_{F \ j}` restricted to the present subsets. The
//! depth is `n` minus the largest homological index that is nonzero in some
//! multidegree of the box `[0, g]`.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::BoxGrid;
use crate::limits::Limits;
use crate::linalg::{matrix_rank, FieldChoice, IntMatrix};
use crate::monomial::{join_exponents, Factor};

/// Subsets are bitmasks, so slices are limited to this many variables.
pub const MAX_KOSZUL_VARS: usize = 24;

#[derive(Clone, Copy, Debug, Default)]
pub struct DepthOptions {
    pub field: FieldChoice,
    pub parallel: bool,
    pub limits: Limits,
    /// Record every nonempty slice in the report.
    pub trace: bool,
}

/// `x^a ∈ I` and `x^a ∉ J`.
pub fn support(f: &Factor, a: &[u32]) -> bool {
    f.supports(a)
}

/// The multidegree-`a` strand of the Koszul complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulSlice {
    a: Vec<u32>,
    /// `present[mask]` for every subset of `[n]`.
    present: Vec<bool>,
}

impl KoszulSlice {
    pub fn new(f: &Factor, a: &[u32]) -> Result<Self> {
        let n = a.len();
        if n != f.nvars() {
            return Err(Error::Dimension {
                expected: f.nvars(),
                found: n,
            });
        }
        if n > MAX_KOSZUL_VARS {
            return Err(Error::InvalidArgument(format!(
                "{n} variables exceed the Koszul limit of {MAX_KOSZUL_VARS}"
            )));
        }
        let mut b = a.to_vec();
        let present = (0..1usize << n)
            .map(|mask| {
                for (j, bj) in b.iter_mut().enumerate() {
                    let drop = (mask >> j) & 1 == 1;
                    if drop && a[j] == 0 {
                        return false;
                    }
                    *bj = a[j] - u32::from(drop);
                }
                f.supports(&b)
            })
            .collect();
        Ok(KoszulSlice {
            a: a.to_vec(),
            present,
        })
    }

    /// Cheap test that some subset is present, without building the slice.
    /// `I` and `J` are closed under multiplication, so the slice is empty
    /// unless `x^a ∈ I` and `x^{a - ε_supp(a)} ∉ J`.
    pub fn may_be_nonempty(f: &Factor, a: &[u32]) -> bool {
        if !f.numerator().contains_exponents(a) {
            return false;
        }
        let low: Vec<u32> = a.iter().map(|&e| e.saturating_sub(1)).collect();
        !f.denominator().contains_exponents(&low)
    }

    pub fn multidegree(&self) -> &[u32] {
        &self.a
    }

    pub fn nvars(&self) -> usize {
        self.a.len()
    }

    pub fn is_present(&self, mask: usize) -> bool {
        self.present[mask]
    }

    pub fn present_count(&self) -> usize {
        self.present.iter().filter(|&&p| p).count()
    }

    /// Present subsets of size `i`, in increasing bitmask order.
    pub fn basis(&self, i: usize) -> Vec<usize> {
        (0..self.present.len())
            .filter(|&m| self.present[m] && m.count_ones() as usize == i)
            .collect()
    }

    /// Matrix of `∂_i : C_i → C_{i-1}`, rows indexed by `basis(i - 1)` and
    /// columns by `basis(i)`. The sign of `e_{F \ j}` in `∂ e_F` is
    /// `(-1)^k` where `j` is the `k`-th smallest element of `F` (from 0).
    pub fn boundary(&self, i: usize) -> IntMatrix {
        let cols = self.basis(i);
        if i == 0 {
            return IntMatrix::zeros(0, cols.len());
        }
        let rows = self.basis(i - 1);
        let mut m = IntMatrix::zeros(rows.len(), cols.len());
        for (c, &mask) in cols.iter().enumerate() {
            let mut pos = 0;
            for j in 0..self.nvars() {
                if (mask >> j) & 1 == 0 {
                    continue;
                }
                let face = mask & !(1 << j);
                if let Ok(r) = rows.binary_search(&face) {
                    m.set(r, c, if pos % 2 == 0 { 1 } else { -1 });
                }
                pos += 1;
            }
        }
        m
    }

    /// `∂_{i} ∘ ∂_{i+1} = 0` for every `i`.
    pub fn boundaries_compose_to_zero(&self) -> bool {
        (1..self.nvars()).all(|i| {
            self.boundary(i)
                .checked_mul(&self.boundary(i + 1))
                .is_some_and(|p| p.is_zero())
        })
    }

    /// `dim H_i` for `i = 0, …, n`.
    pub fn homology(&self, field: FieldChoice) -> Vec<usize> {
        let n = self.nvars();
        // ranks[i] = rank ∂_i, with ∂_0 = ∂_{n+1} = 0
        let mut ranks = vec![0usize; n + 2];
        for (i, r) in ranks.iter_mut().enumerate().take(n + 1).skip(1) {
            *r = matrix_rank(&self.boundary(i), field);
        }
        (0..=n)
            .map(|i| self.basis(i).len() - ranks[i] - ranks[i + 1])
            .collect()
    }
}

pub fn homology_dims(f: &Factor, a: &[u32], field: FieldChoice) -> Result<Vec<usize>> {
    Ok(KoszulSlice::new(f, a)?.homology(field))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceRecord {
    pub multidegree: Vec<u32>,
    pub present: usize,
    pub homology: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthReport {
    pub depth: usize,
    /// Largest nonzero homological index, which equals `n - depth`.
    pub pd: usize,
    pub nvars: usize,
    pub bound: Vec<u32>,
    pub field: FieldChoice,
    /// `nonzero[i]`: some multidegree has `H_i ≠ 0`.
    pub nonzero: Vec<bool>,
    /// Nonempty slices examined; each had `∂∘∂ = 0` checked in debug builds.
    pub slices: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<SliceRecord>,
}

pub fn depth(f: &Factor, opts: &DepthOptions) -> Result<DepthReport> {
    depth_with_bound(f, &join_exponents(f), opts)
}

pub fn pd(f: &Factor, opts: &DepthOptions) -> Result<usize> {
    let r = depth(f, opts)?;
    Ok(r.nvars - r.depth)
}

const CHUNK: usize = 4096;

/// Depth from the Koszul homology over the box `[0, g]`; `g` must dominate
/// every generator exponent.
pub fn depth_with_bound(f: &Factor, g: &[u32], opts: &DepthOptions) -> Result<DepthReport> {
    let started = Instant::now();
    let n = f.nvars();
    let join = join_exponents(f);
    if g.len() != n || g.iter().zip(&join).any(|(a, b)| a < b) {
        return Err(Error::InvalidArgument(format!(
            "bound {g:?} does not dominate the generator exponents {join:?}"
        )));
    }
    let grid = BoxGrid::new(g, opts.limits.box_cap)?;
    if n > MAX_KOSZUL_VARS {
        return Err(Error::InvalidArgument(format!(
            "{n} variables exceed the Koszul limit of {MAX_KOSZUL_VARS}"
        )));
    }

    let slice_at = |idx: usize| -> Result<Option<SliceRecord>> {
        let a = grid.decode(idx);
        if !KoszulSlice::may_be_nonempty(f, &a) {
            return Ok(None);
        }
        let slice = KoszulSlice::new(f, &a)?;
        let present = slice.present_count();
        if present == 0 {
            return Ok(None);
        }
        if cfg!(debug_assertions) && !slice.boundaries_compose_to_zero() {
            return Err(Error::Internal(format!("∂∘∂ ≠ 0 in multidegree {a:?}")));
        }
        let homology = slice.homology(opts.field);
        Ok(Some(SliceRecord {
            multidegree: a,
            present,
            homology,
        }))
    };

    let mut nonzero = vec![false; n + 1];
    let mut slices = 0usize;
    let mut trace = Vec::new();
    let mut start = 0;
    while start < grid.volume() {
        opts.limits.check_deadline(started)?;
        let end = (start + CHUNK).min(grid.volume());
        let records: Vec<SliceRecord> = if opts.parallel {
            (start..end)
                .into_par_iter()
                .map(slice_at)
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect()
        } else {
            (start..end)
                .map(slice_at)
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect()
        };
        for rec in records {
            slices += 1;
            for (nz, &h) in nonzero.iter_mut().zip(&rec.homology) {
                *nz |= h > 0;
            }
            if opts.trace {
                trace.push(rec);
            }
        }
        start = end;
    }

    let pd = nonzero
        .iter()
        .rposition(|&b| b)
        .ok_or_else(|| Error::Internal("Koszul homology vanishes everywhere".into()))?;
    // rigidity: once H_i vanishes, every higher H_j vanishes too
    if nonzero[..=pd].iter().any(|&b| !b) {
        return Err(Error::Internal(format!(
            "Koszul homology not rigid: nonzero pattern {nonzero:?}"
        )));
    }
    Ok(DepthReport {
        depth: n - pd,
        pd,
        nvars: n,
        bound: g.to_vec(),
        field: opts.field,
        nonzero,
        slices,
        trace,
    })
}
