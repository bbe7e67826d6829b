//! Exponent compression of a factor `I/J`.
//!
//! For a variable `x_v`, the *type* of `I/J` is the sorted list
//! `k_1 < … < k_s` of positive `x_v`-exponents occurring in `G(I) ∪ G(J)`.
//! The canonical form replaces `k_i` by `i` in every generator, for every
//! variable. Depth and Stanley depth are unchanged by this.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::monomial::{Factor, Monomial, MonomialIdeal};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableType {
    pub var: usize,
    /// Strictly increasing, all ≥ 1.
    pub powers: Vec<u32>,
}

impl VariableType {
    /// Type `(1, 2, …, s)`, including the empty type.
    pub fn is_canonical(&self) -> bool {
        self.powers
            .iter()
            .enumerate()
            .all(|(i, &k)| k as usize == i + 1)
    }

    /// 1-based rank of a positive power; 0 stays 0.
    fn rank(&self, e: u32) -> u32 {
        if e == 0 {
            return 0;
        }
        match self.powers.binary_search(&e) {
            Ok(i) => i as u32 + 1,
            Err(_) => unreachable!("exponent {e} missing from type"),
        }
    }
}

fn check_var(f: &Factor, var: usize) -> Result<()> {
    if var < f.nvars() {
        Ok(())
    } else {
        Err(Error::VariableIndex {
            index: var,
            nvars: f.nvars(),
        })
    }
}

pub fn type_wrt(f: &Factor, var: usize) -> Result<VariableType> {
    check_var(f, var)?;
    let powers: BTreeSet<u32> = f
        .all_gens()
        .map(|g| g.exponent(var))
        .filter(|&e| e > 0)
        .collect();
    Ok(VariableType {
        var,
        powers: powers.into_iter().collect(),
    })
}

/// Rewrites the `var`-exponent of every generator of `I` and `J` through `map`
/// and rebuilds the factor. `map` must be strictly increasing on the occurring
/// exponents, which keeps both generating sets minimal and `J ⊊ I` intact; a
/// failure here is reported as an internal error.
fn remap(f: &Factor, var: usize, map: impl Fn(u32) -> u32) -> Result<Factor> {
    let apply = |ideal: &MonomialIdeal| -> Result<MonomialIdeal> {
        let gens: Vec<Monomial> = ideal
            .gens()
            .iter()
            .map(|g| g.map_exponent(var, &map))
            .collect();
        let out = MonomialIdeal::new(ideal.nvars(), gens)?;
        if out.gens().len() != ideal.gens().len() {
            return Err(Error::Internal(format!(
                "exponent map on variable {var} merged generators"
            )));
        }
        Ok(out)
    };
    let i = apply(f.numerator())?;
    let j = apply(f.denominator())?;
    Factor::new(i, j).map_err(|e| Error::Internal(format!("exponent map broke J ⊊ I: {e}")))
}

/// Canonical form with respect to one variable.
pub fn canonicalize_var(f: &Factor, var: usize) -> Result<Factor> {
    let ty = type_wrt(f, var)?;
    if ty.is_canonical() {
        return Ok(f.clone());
    }
    remap(f, var, |e| ty.rank(e))
}

/// Canonical form with respect to every variable, processed in index order.
pub fn canonicalize(f: &Factor) -> Result<Factor> {
    (0..f.nvars()).try_fold(f.clone(), |acc, v| canonicalize_var(&acc, v))
}

pub fn is_canonical(f: &Factor) -> bool {
    (0..f.nvars()).all(|v| type_wrt(f, v).map(|t| t.is_canonical()).unwrap_or(false))
}

/// Positions `j` (with `k_0 = 0`) where `k_j + 1 < k_{j+1}`.
pub fn gaps(f: &Factor, var: usize) -> Result<Vec<usize>> {
    let ty = type_wrt(f, var)?;
    let mut prev = 0;
    let mut out = Vec::new();
    for (j, &k) in ty.powers.iter().enumerate() {
        if prev + 1 < k {
            out.push(j);
        }
        prev = k;
    }
    Ok(out)
}

/// Lowers every power `k_i` with `i > j` by one, given a gap
/// `k_j + 1 < k_{j+1}` (`k_0 = 0`, `0 ≤ j < s`).
pub fn collapse_gap_step(f: &Factor, var: usize, j: usize) -> Result<Factor> {
    let ty = type_wrt(f, var)?;
    let below = if j == 0 {
        Some(0)
    } else {
        ty.powers.get(j - 1).copied()
    };
    let above = ty.powers.get(j).copied();
    let threshold = match (below, above) {
        (Some(lo), Some(hi)) if lo + 1 < hi => hi,
        _ => {
            return Err(Error::NoGap {
                j,
                powers: ty.powers,
            })
        }
    };
    remap(f, var, |e| if e >= threshold { e - 1 } else { e })
}

/// Multiplies by `x_var` every generator (of `I` and `J`) whose
/// `x_var`-degree is at least `k`.
pub fn shift_transform(f: &Factor, var: usize, k: u32) -> Result<Factor> {
    check_var(f, var)?;
    if k == 0 {
        return Err(Error::InvalidArgument(
            "shift threshold must be positive".into(),
        ));
    }
    if f.all_gens()
        .any(|g| g.exponent(var) >= crate::monomial::MAX_EXPONENT)
    {
        return Err(Error::ExponentTooLarge(
            u64::from(crate::monomial::MAX_EXPONENT) + 1,
        ));
    }
    remap(f, var, |e| if e >= k { e + 1 } else { e })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Ring;
    use crate::parse::parse_factor;

    fn factor(text: &str) -> (Ring, Factor) {
        parse_factor(text).unwrap()
    }

    fn ideal2(rows: &[&[u32]]) -> Factor {
        Factor::ideal(MonomialIdeal::from_exponents(rows[0].len(), rows).unwrap()).unwrap()
    }

    const EX_2_5_2: &str = "ring x,y,z; I = x^10*y^5, x^4*y*z^7, z^7*y^3; \
                            J = x^10*y^20*z^2, x^3*y^4*z^13, x^9*y^2*z^7;";

    #[test]
    fn type_examples() {
        let f = ideal2(&[&[4, 0], &[3, 7]]);
        assert_eq!(type_wrt(&f, 0).unwrap().powers, vec![3, 4]);
        let (_, f) = factor(EX_2_5_2);
        assert_eq!(type_wrt(&f, 2).unwrap().powers, vec![2, 7, 13]);
        let sq = ideal2(&[&[1, 1, 0], &[0, 1, 1]]);
        for v in 0..3 {
            assert_eq!(type_wrt(&sq, v).unwrap().powers, vec![1]);
        }
        assert!(type_wrt(&sq, 3).is_err());
    }

    #[test]
    fn canonicalize_var_examples() {
        let f = ideal2(&[&[4, 0], &[3, 7]]);
        assert_eq!(
            canonicalize_var(&f, 0).unwrap(),
            ideal2(&[&[2, 0], &[1, 7]])
        );

        let c = ideal2(&[&[2, 0], &[1, 1]]);
        assert_eq!(canonicalize_var(&c, 0).unwrap(), c);

        let f = ideal2(&[&[100, 1, 1], &[50, 1, 50], &[50, 50, 1]]);
        assert_eq!(
            canonicalize_var(&f, 0).unwrap(),
            ideal2(&[&[2, 1, 1], &[1, 1, 50], &[1, 50, 1]])
        );
    }

    #[test]
    fn canonicalize_examples() {
        let f = ideal2(&[&[4, 0], &[3, 7]]);
        let c = canonicalize(&f).unwrap();
        assert_eq!(c, ideal2(&[&[2, 0], &[1, 1]]));
        assert!(is_canonical(&c));
        assert!(!is_canonical(&f));

        let (ring, f) = factor(EX_2_5_2);
        let (_, want) = factor(
            "ring x,y,z; I = x^4*y^5, x^2*y*z^2, y^3*z^2; J = x^4*y^6*z, x*y^4*z^3, x^3*y^2*z^2;",
        );
        let c = canonicalize(&f).unwrap();
        assert_eq!(c, want, "{}", ring.factor_string(&c));

        let (_, f) = factor("ring x,y; I = x^4, y^10, x^2*y^7; J = x^20, y^30;");
        let (_, want) = factor("ring x,y; I = x^2, y^2, x*y; J = x^3, y^3;");
        assert_eq!(canonicalize(&f).unwrap(), want);

        let f = ideal2(&[&[100, 1, 1], &[50, 1, 50], &[50, 50, 1]]);
        assert_eq!(
            canonicalize(&f).unwrap(),
            ideal2(&[&[2, 1, 1], &[1, 1, 2], &[1, 2, 1]])
        );
    }

    #[test]
    fn squarefree_is_fixed() {
        let sq = ideal2(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert!(is_canonical(&sq));
        assert_eq!(canonicalize(&sq).unwrap(), sq);
    }

    #[test]
    fn collapse_examples() {
        let f = ideal2(&[&[4, 0], &[3, 7]]);
        assert_eq!(gaps(&f, 0).unwrap(), vec![0]);
        assert_eq!(
            collapse_gap_step(&f, 0, 0).unwrap(),
            ideal2(&[&[3, 0], &[2, 7]])
        );
        // k_1 = 3, k_2 = 4: no gap between them
        assert!(matches!(
            collapse_gap_step(&f, 0, 1),
            Err(Error::NoGap { .. })
        ));
        assert!(matches!(
            collapse_gap_step(&f, 0, 2),
            Err(Error::NoGap { .. })
        ));

        let c = ideal2(&[&[2, 0], &[1, 1]]);
        for j in 0..3 {
            assert!(collapse_gap_step(&c, 0, j).is_err());
        }
    }

    #[test]
    fn collapse_iterated_reaches_canonical_form() {
        let (_, f) = factor(EX_2_5_2);
        let mut cur = f.clone();
        loop {
            let step =
                (0..cur.nvars()).find_map(|v| gaps(&cur, v).unwrap().first().map(|&j| (v, j)));
            match step {
                Some((v, j)) => cur = collapse_gap_step(&cur, v, j).unwrap(),
                None => break,
            }
        }
        assert_eq!(cur, canonicalize(&f).unwrap());
    }

    #[test]
    fn shift_examples() {
        let f = ideal2(&[&[2, 0], &[1, 1]]);
        assert_eq!(
            shift_transform(&f, 0, 2).unwrap(),
            ideal2(&[&[3, 0], &[1, 1]])
        );
        assert_eq!(
            shift_transform(&f, 0, 1).unwrap(),
            ideal2(&[&[3, 0], &[2, 1]])
        );
        assert_eq!(shift_transform(&f, 0, 3).unwrap(), f);
        assert!(shift_transform(&f, 0, 0).is_err());
    }
}
