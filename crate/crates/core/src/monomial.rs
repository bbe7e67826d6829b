//! Monomials, monomial ideals and factors `I/J` of monomial ideals.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest exponent accepted anywhere in the crate.
pub const MAX_EXPONENT: u32 = i32::MAX as u32;

/// A monomial `x^a`, stored as its exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Result<Self> {
        if let Some(&e) = exponents.iter().find(|&&e| e > MAX_EXPONENT) {
            return Err(Error::ExponentTooLarge(u64::from(e)));
        }
        Ok(Monomial(exponents))
    }

    /// The monomial `1` in `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    /// Replaces every exponent of `var` through `f`.
    pub(crate) fn map_exponent(&self, var: usize, f: impl Fn(u32) -> u32) -> Self {
        let mut e = self.0.clone();
        e[var] = f(e[var]);
        Monomial(e)
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        check_dims(self.nvars(), other.nvars())?;
        let e = self
            .0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| {
                a.checked_add(b)
                    .filter(|&s| s <= MAX_EXPONENT)
                    .ok_or(Error::ExponentTooLarge(u64::from(a) + u64::from(b)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial(e))
    }
}

/// Degree-lexicographic order: ascending total degree, ties broken so that
/// `x^2 < x*y < y^2` (larger leading exponents first).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::Dimension {
            expected: a,
            found: b,
        })
    }
}

/// `u | v`: componentwise comparison of exponent vectors.
pub fn divides(u: &Monomial, v: &Monomial) -> Result<bool> {
    check_dims(u.nvars(), v.nvars())?;
    Ok(divides_unchecked(u.exponents(), v.exponents()))
}

#[inline]
pub(crate) fn divides_unchecked(u: &[u32], v: &[u32]) -> bool {
    u.iter().zip(v).all(|(a, b)| a <= b)
}

/// Keeps only the divisibility-minimal elements, deduplicated and sorted
/// degree-lexicographically.
pub fn minimalize(gens: impl IntoIterator<Item = Monomial>) -> Vec<Monomial> {
    let mut gens: Vec<Monomial> = gens.into_iter().collect();
    // A divisor never has larger degree than its multiple, so after sorting
    // every potential divisor of gens[i] sits before it.
    gens.sort();
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| divides_unchecked(&k.0, &g.0)) {
            kept.push(g);
        }
    }
    kept
}

/// A monomial ideal, held as its minimal generating set `G(I)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let gens: Vec<Monomial> = gens.into_iter().collect();
        for g in &gens {
            check_dims(nvars, g.nvars())?;
        }
        Ok(MonomialIdeal {
            nvars,
            gens: minimalize(gens),
        })
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: Vec::new(),
        }
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: vec![Monomial::one(nvars)],
        }
    }

    /// Build from exponent rows; convenient in tests and examples.
    pub fn from_exponents(nvars: usize, rows: &[&[u32]]) -> Result<Self> {
        let gens = rows
            .iter()
            .map(|r| Monomial::new(r.to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(nvars, gens)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    pub fn contains(&self, m: &Monomial) -> Result<bool> {
        check_dims(self.nvars, m.nvars())?;
        Ok(self.contains_exponents(m.exponents()))
    }

    #[inline]
    pub(crate) fn contains_exponents(&self, a: &[u32]) -> bool {
        self.gens.iter().any(|g| divides_unchecked(&g.0, a))
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &MonomialIdeal) -> bool {
        self.nvars == other.nvars && self.gens.iter().all(|g| other.contains_exponents(&g.0))
    }
}

/// The module `I/J` for monomial ideals `J ⊊ I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    i: MonomialIdeal,
    j: MonomialIdeal,
}

impl Factor {
    /// Validates `J ⊊ I`. This is the only place the containment is checked.
    pub fn new(i: MonomialIdeal, j: MonomialIdeal) -> Result<Self> {
        check_dims(i.nvars(), j.nvars())?;
        if !j.is_subset_of(&i) {
            return Err(Error::NotContained);
        }
        if i.is_subset_of(&j) {
            return Err(Error::EqualIdeals);
        }
        Ok(Factor { i, j })
    }

    /// `I/0`.
    pub fn ideal(i: MonomialIdeal) -> Result<Self> {
        let n = i.nvars();
        Factor::new(i, MonomialIdeal::zero(n))
    }

    pub fn nvars(&self) -> usize {
        self.i.nvars()
    }

    pub fn numerator(&self) -> &MonomialIdeal {
        &self.i
    }

    pub fn denominator(&self) -> &MonomialIdeal {
        &self.j
    }

    /// Generators of `G(I) ∪ G(J)`, numerator first.
    pub fn all_gens(&self) -> impl Iterator<Item = &Monomial> {
        self.i.gens().iter().chain(self.j.gens())
    }

    /// `x^a ∈ I \ J`.
    #[inline]
    pub fn supports(&self, a: &[u32]) -> bool {
        self.i.contains_exponents(a) && !self.j.contains_exponents(a)
    }

    pub fn is_squarefree(&self) -> bool {
        self.i.is_squarefree() && self.j.is_squarefree()
    }
}

/// Componentwise maximum of all generator exponents of `I` and `J`.
pub fn join_exponents(f: &Factor) -> Vec<u32> {
    let mut g = vec![0; f.nvars()];
    for m in f.all_gens() {
        for (gj, &e) in g.iter_mut().zip(m.exponents()) {
            *gj = (*gj).max(e);
        }
    }
    g
}

/// Variable names used for display and parsing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    names: Vec<String>,
}

impl Ring {
    pub fn new(names: Vec<String>) -> Result<Self> {
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::DuplicateVariable(a.clone()));
            }
        }
        Ok(Ring { names })
    }

    /// `x, y, z, t` for up to four variables, `x1, …, xn` beyond.
    pub fn standard(n: usize) -> Self {
        let names = if n <= 4 {
            ["x", "y", "z", "t"][..n]
                .iter()
                .map(|s| s.to_string())
                .collect()
        } else {
            (1..=n).map(|i| format!("x{i}")).collect()
        };
        Ring { names }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn monomial<'a>(&'a self, m: &'a Monomial) -> MonomialDisplay<'a> {
        MonomialDisplay { ring: self, m }
    }

    /// `x^2, x*y`, or `0` for the zero ideal.
    pub fn gens_list(&self, ideal: &MonomialIdeal) -> String {
        if ideal.is_zero() {
            return "0".to_string();
        }
        ideal
            .gens()
            .iter()
            .map(|g| self.monomial(g).to_string())
            .collect::<Vec<_>>()
            .join(", ")
    }

    /// `(x^2, x*y)` for an ideal, `(…) / (…)` when `J ≠ 0`.
    pub fn factor_string(&self, f: &Factor) -> String {
        let num = format!("({})", self.gens_list(f.numerator()));
        if f.denominator().is_zero() {
            num
        } else {
            format!("{num} / ({})", self.gens_list(f.denominator()))
        }
    }

    /// The factor in the input file grammar.
    pub fn factor_file(&self, f: &Factor) -> String {
        format!(
            "ring {};\nI = {};\nJ = {};\n",
            self.names.join(", "),
            self.gens_list(f.numerator()),
            self.gens_list(f.denominator())
        )
    }
}

pub struct MonomialDisplay<'a> {
    ring: &'a Ring,
    m: &'a Monomial,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, &e) in self.ring.names.iter().zip(self.m.exponents()) {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}
