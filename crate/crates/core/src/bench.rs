//! Invariance checks, random instances and raw-vs-canonical benchmarks.

use std::time::{Duration, Instant};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::canonical::{canonicalize, shift_transform};
use crate::depth::{depth, DepthOptions};
use crate::error::{Error, Result};
use crate::grid::box_volume;
use crate::limits::Limits;
use crate::monomial::{join_exponents, Factor, Monomial, MonomialIdeal};
use crate::stanley::{sdepth, verify_decomposition};

/// Draws a factor in `1..=max_vars` variables with exponents in `0..=gmax`.
///
/// `I` gets one to five random generators. `J` is generated by up to three
/// multiples of generators of `I`, with the multipliers chosen so no exponent
/// exceeds `gmax`. Draws with `J = I` are rejected.
pub fn random_factor<R: Rng + ?Sized>(rng: &mut R, max_vars: usize, gmax: u32) -> Factor {
    assert!(max_vars >= 1, "need at least one variable");
    loop {
        let n = rng.gen_range(1..=max_vars);
        let count = rng.gen_range(1..=5);
        let gens: Vec<Monomial> = (0..count).map(|_| exponent_vec(rng, n, |_| gmax)).collect();
        let i = MonomialIdeal::new(n, gens).expect("dimensions agree");
        let jcount = rng.gen_range(0..=3);
        let jgens: Vec<Monomial> = (0..jcount)
            .map(|_| {
                let base = &i.gens()[rng.gen_range(0..i.gens().len())];
                let mult = exponent_vec(rng, n, |v| gmax - base.exponent(v));
                base.mul(&mult).expect("bounded by gmax")
            })
            .collect();
        let j = MonomialIdeal::new(n, jgens).expect("dimensions agree");
        if let Ok(f) = Factor::new(i, j) {
            return f;
        }
    }
}

fn exponent_vec<R: Rng + ?Sized>(rng: &mut R, n: usize, hi: impl Fn(usize) -> u32) -> Monomial {
    let e = (0..n).map(|v| rng.gen_range(0..=hi(v))).collect();
    Monomial::new(e).expect("small exponents")
}

/// Random ideal with `c` pairwise coprime generators in `n ≥ c` variables.
pub fn random_complete_intersection<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    c: usize,
    gmax: u32,
) -> MonomialIdeal {
    assert!(c <= n && c >= 1 && gmax >= 1);
    let mut vars: Vec<usize> = (0..n).collect();
    // shuffle, then hand each generator a disjoint nonempty block of variables
    for k in (1..n).rev() {
        vars.swap(k, rng.gen_range(0..=k));
    }
    let mut cuts: Vec<usize> = (1..n).collect();
    for k in (1..cuts.len()).rev() {
        cuts.swap(k, rng.gen_range(0..=k));
    }
    let mut cuts: Vec<usize> = cuts.into_iter().take(c - 1).collect();
    cuts.sort_unstable();
    let mut bounds = vec![0];
    bounds.extend(cuts);
    bounds.push(n);
    let gens = bounds.windows(2).map(|w| {
        let mut e = vec![0u32; n];
        // a generator may use only part of its block
        let block = &vars[w[0]..w[1]];
        let used = rng.gen_range(1..=block.len());
        for &v in &block[..used] {
            e[v] = rng.gen_range(1..=gmax);
        }
        Monomial::new(e).expect("small exponents")
    });
    MonomialIdeal::new(n, gens.collect::<Vec<_>>()).expect("dimensions agree")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub depth: usize,
    pub sdepth: usize,
}

impl Invariants {
    /// The Stanley inequality `sdepth ≥ depth`.
    pub fn stanley_holds(&self) -> bool {
        self.sdepth >= self.depth
    }
}

/// Depth and Stanley depth; the Stanley depth certificate is verified.
pub fn invariants(f: &Factor, opts: &DepthOptions) -> Result<Invariants> {
    let d = depth(f, opts)?;
    let s = sdepth(f, &opts.limits)?;
    if !verify_decomposition(f, &s.certificate, s.value) {
        return Err(Error::Internal(
            "Stanley depth certificate failed verification".into(),
        ));
    }
    Ok(Invariants {
        depth: d.depth,
        sdepth: s.value,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "detail", rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail(String),
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub label: String,
    pub verdict: Verdict,
    /// Invariants of the original followed by each variant, when computed.
    pub values: Vec<(String, Invariants)>,
}

/// Compares depth, Stanley depth and the Stanley predicate of `original`
/// with each variant. Resource errors skip the instance.
pub fn check_variants(
    label: &str,
    original: &Factor,
    variants: &[(String, Factor)],
    opts: &DepthOptions,
) -> CheckOutcome {
    let mut values = Vec::new();
    let mut failures = Vec::new();
    let base = match invariants(original, opts) {
        Ok(v) => v,
        Err(e) => return error_outcome(label, e, values),
    };
    values.push(("original".to_string(), base));
    for (name, f) in variants {
        let v = match invariants(f, opts) {
            Ok(v) => v,
            Err(e) => return error_outcome(label, e, values),
        };
        if v.depth != base.depth {
            failures.push(format!(
                "depth {} on original, {} on {name}",
                base.depth, v.depth
            ));
        }
        if v.sdepth != base.sdepth {
            failures.push(format!(
                "sdepth {} on original, {} on {name}",
                base.sdepth, v.sdepth
            ));
        }
        if v.stanley_holds() != base.stanley_holds() {
            failures.push(format!("Stanley inequality differs on {name}"));
        }
        values.push((name.clone(), v));
    }
    let verdict = if failures.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Fail(failures.join("; "))
    };
    CheckOutcome {
        label: label.to_string(),
        verdict,
        values,
    }
}

fn error_outcome(label: &str, e: Error, values: Vec<(String, Invariants)>) -> CheckOutcome {
    let verdict = if e.is_resource() {
        Verdict::Skipped(e.to_string())
    } else {
        Verdict::Fail(e.to_string())
    };
    CheckOutcome {
        label: label.to_string(),
        verdict,
        values,
    }
}

/// Checks `f` against its canonical form and one random shift transform.
pub fn check_factor<R: Rng + ?Sized>(
    rng: &mut R,
    label: &str,
    f: &Factor,
    opts: &DepthOptions,
) -> CheckOutcome {
    let canon = match canonicalize(f) {
        Ok(c) => c,
        Err(e) => return error_outcome(label, e, Vec::new()),
    };
    let var = rng.gen_range(0..f.nvars());
    let top = f.all_gens().map(|g| g.exponent(var)).max().unwrap_or(0);
    let k = rng.gen_range(1..=top + 1);
    let mut variants = vec![("canonical".to_string(), canon)];
    match shift_transform(f, var, k) {
        Ok(s) => variants.push((format!("shift(v={var},k={k})"), s)),
        Err(e) => return error_outcome(label, e, Vec::new()),
    }
    check_variants(label, f, &variants, opts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Ok,
    Timeout,
    ResourceExhausted,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub value: Option<usize>,
    /// Median wall time over the repetitions, in milliseconds.
    pub ms: f64,
    pub status: RunStatus,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Measurement {
    pub computation: Computation,
    pub raw: Timing,
    pub canonical: Timing,
    /// raw / canonical; `None` when the canonical side did not finish.
    pub speedup: Option<f64>,
    /// The raw side did not finish, so `speedup` only bounds the true ratio
    /// from below.
    pub speedup_is_lower_bound: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Computation {
    Depth,
    Sdepth,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub input: String,
    pub raw_bound: Vec<u32>,
    pub canonical_bound: Vec<u32>,
    pub raw_box_volume: u128,
    pub canonical_box_volume: u128,
    pub box_ratio: f64,
    pub canonicalize_ms: f64,
    pub repeat: usize,
    pub measurements: Vec<Measurement>,
}

#[derive(Clone, Debug)]
pub struct BenchOptions {
    pub computations: Vec<Computation>,
    pub repeat: usize,
    pub timeout: Duration,
    pub parallel: bool,
    pub field: crate::linalg::FieldChoice,
    pub limits: Limits,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            computations: vec![Computation::Depth, Computation::Sdepth],
            repeat: 1,
            timeout: Duration::from_secs(300),
            parallel: false,
            field: Default::default(),
            // the deadline governs, not the search budget
            limits: Limits {
                node_budget: u64::MAX,
                ..Limits::default()
            },
        }
    }
}

fn median(xs: &mut [f64]) -> f64 {
    xs.sort_by(|a, b| a.total_cmp(b));
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        (xs[m - 1] + xs[m]) / 2.0
    }
}

fn time_one(f: &Factor, what: Computation, opts: &BenchOptions) -> Result<Timing> {
    let mut times = Vec::with_capacity(opts.repeat);
    let mut value = None;
    for _ in 0..opts.repeat.max(1) {
        let limits = opts.limits.with_timeout(opts.timeout);
        let started = Instant::now();
        let outcome = match what {
            Computation::Depth => depth(
                f,
                &DepthOptions {
                    field: opts.field,
                    parallel: opts.parallel,
                    limits,
                    trace: false,
                },
            )
            .map(|r| r.depth),
            Computation::Sdepth => sdepth(f, &limits).map(|s| s.value),
        };
        let ms = started.elapsed().as_secs_f64() * 1e3;
        match outcome {
            Ok(v) => {
                value = Some(v);
                times.push(ms);
            }
            Err(e) if e.is_resource() => {
                let status = if matches!(e, Error::Timeout { .. }) {
                    RunStatus::Timeout
                } else {
                    RunStatus::ResourceExhausted
                };
                return Ok(Timing {
                    value: None,
                    ms,
                    status,
                });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Timing {
        value,
        ms: median(&mut times),
        status: RunStatus::Ok,
    })
}

/// Times every requested computation on `f` and on its canonical form.
///
/// Fails with [`Error::Violation`] when both sides finish with different
/// values.
pub fn bench(input: &str, f: &Factor, opts: &BenchOptions) -> Result<BenchReport> {
    let started = Instant::now();
    let canon = canonicalize(f)?;
    let canonicalize_ms = started.elapsed().as_secs_f64() * 1e3;
    let (raw_bound, canonical_bound) = (join_exponents(f), join_exponents(&canon));
    let raw_box_volume = box_volume(&raw_bound);
    let canonical_box_volume = box_volume(&canonical_bound);
    let mut measurements = Vec::new();
    for &what in &opts.computations {
        let canonical = time_one(&canon, what, opts)?;
        let raw = time_one(f, what, opts)?;
        if let (Some(a), Some(b)) = (raw.value, canonical.value) {
            if a != b {
                return Err(Error::Violation(format!(
                    "{what:?} is {a} on the input but {b} on its canonical form"
                )));
            }
        }
        // an unfinished raw run still took at least `raw.ms`
        let speedup = (canonical.status == RunStatus::Ok).then(|| raw.ms / canonical.ms.max(1e-6));
        measurements.push(Measurement {
            computation: what,
            speedup_is_lower_bound: raw.status != RunStatus::Ok,
            raw,
            canonical,
            speedup,
        });
    }
    Ok(BenchReport {
        input: input.to_string(),
        raw_bound,
        canonical_bound,
        raw_box_volume,
        canonical_box_volume,
        box_ratio: raw_box_volume as f64 / canonical_box_volume as f64,
        canonicalize_ms,
        repeat: opts.repeat.max(1),
        measurements,
    })
}
