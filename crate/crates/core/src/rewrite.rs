//! Normal-form monomials, the map into `>`-magma terms, the der-lex order,
//! and the constructive expression of weight-(-1) elements with an underived
//! last factor as combinations of `>`-terms.

use crate::term::succ_membership_error;
use crate::{DiffPoly, Error, Generator, MagmaPoly, MagmaTerm, PermMonomial, Rational, Result};
use num::Zero;
use std::cmp::Ordering;

/// Der-lex comparison with deterministic tie-breaking: the sorted sequences
/// of positive derivation orders are compared lexicographically, ties are
/// broken on degree and then on the full canonical factor sequence.  This is
/// the canonical `Ord` of [`PermMonomial`].
pub fn der_lex_compare(a: &PermMonomial, b: &PermMonomial) -> Ordering {
    a.cmp(b)
}

/// Normal-form predicate: weight -1 with an underived last factor.  The
/// commutative prefix is sorted on construction, so any monomial in the
/// `>`-subalgebra is stored in normal form.
pub fn is_normal(m: &PermMonomial) -> bool {
    m.is_succ_member()
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All multilinear normal-form monomials in the variables `x1..xn`: each
/// variable occurs exactly once, the derivation orders sum to `n - 1`, and
/// the last factor is underived.  Returned in canonical order.
pub fn enumerate_normal_monomials(n: u32) -> Result<Vec<PermMonomial>> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let mut out = Vec::new();
    for last in 1..=n {
        let others: Vec<u32> = (1..=n).filter(|&v| v != last).collect();
        for ks in compositions(n - 1, others.len()) {
            let prefix: Vec<Generator> = others
                .iter()
                .zip(&ks)
                .map(|(&v, &k)| Generator::new(v, k))
                .collect();
            out.push(PermMonomial::new(prefix, Generator::new(last, 0)));
        }
    }
    out.sort();
    Ok(out)
}

/// All normal-form monomials of the given total degree over the variables
/// `x1..x{max_var}` (repetitions allowed), in canonical order.
pub fn enumerate_normal_monomials_by_degree(degree: u32, max_var: u32) -> Result<Vec<PermMonomial>> {
    if degree == 0 || max_var == 0 {
        return Err(Error::EmptyInput);
    }
    // pool of candidate prefix generators, ascending
    let mut pool = Vec::new();
    for der in 0..degree {
        for var in 1..=max_var {
            pool.push(Generator::new(var, der));
        }
    }
    pool.sort();

    let mut out = Vec::new();
    let mut chosen: Vec<Generator> = Vec::new();
    fn go(
        pool: &[Generator],
        from: usize,
        left: u32,
        der_budget: u32,
        chosen: &mut Vec<Generator>,
        max_var: u32,
        out: &mut Vec<PermMonomial>,
    ) {
        if left == 0 {
            if der_budget == 0 {
                for last in 1..=max_var {
                    out.push(PermMonomial::new(chosen.clone(), Generator::new(last, 0)));
                }
            }
            return;
        }
        for i in from..pool.len() {
            if pool[i].der() > der_budget {
                continue;
            }
            chosen.push(pool[i]);
            go(pool, i, left - 1, der_budget - pool[i].der(), chosen, max_var, out);
            chosen.pop();
        }
    }
    go(&pool, 0, degree - 1, degree - 1, &mut chosen, max_var, &mut out);
    out.sort();
    out.dedup();
    Ok(out)
}

/// The der-lex-maximal monomial of a nonzero polynomial, with its
/// coefficient.
pub fn leading_monomial(p: &DiffPoly) -> Result<(&PermMonomial, &Rational)> {
    // terms iterate in ascending canonical order
    p.terms().last().ok_or(Error::ZeroPolynomial)
}

/// Working factor for the recursive `>`-term construction.  A `block` is an
/// already-built inner term that behaves like an underived generator larger
/// than every variable.
#[derive(Clone)]
struct Factor {
    der: u32,
    // (0, var) for a bare generator, (1, creation index) for a block
    key: (u8, u32),
    term: MagmaTerm,
}

/// Maps a normal-form monomial to its pure-`>` magma term.
///
/// The highest-derivative factor `x^(r)` is repeatedly peeled off together
/// with the `r` largest underived factors into an inner left-associated
/// chain, which then acts as a new maximal underived generator.  Once only
/// first-derivative factors remain they are applied as left factors, the
/// smallest variable outermost.
pub fn phi(m: &PermMonomial) -> Result<MagmaTerm> {
    if m.last().der() != 0 {
        return Err(Error::NotNormalForm {
            monomial: m.to_string(),
            clause: format!("last factor has derivation order {}, expected 0", m.last().der()),
        });
    }
    if m.weight() != -1 {
        return Err(Error::NotNormalForm {
            monomial: m.to_string(),
            clause: format!("weight is {}, expected -1", m.weight()),
        });
    }

    let mut factors: Vec<Factor> = m
        .prefix()
        .iter()
        .map(|g| Factor {
            der: g.der(),
            key: (0, g.var()),
            term: MagmaTerm::leaf(g.var()),
        })
        .collect();
    let mut tail = MagmaTerm::leaf(m.last().var());
    let mut blocks = 0u32;

    // peel higher-derivative factors, largest first
    while let Some(hi) = factors
        .iter()
        .enumerate()
        .filter(|(_, f)| f.der >= 2)
        .max_by_key(|(_, f)| (f.der, f.key))
        .map(|(i, _)| i)
    {
        let h = factors.remove(hi);
        let need = h.der as usize;
        let mut und: Vec<usize> = (0..factors.len()).filter(|&i| factors[i].der == 0).collect();
        und.sort_by_key(|&i| std::cmp::Reverse(factors[i].key));

        if und.len() >= need {
            let mut chain = h.term;
            let mut taken: Vec<usize> = und[..need].to_vec();
            for &i in &taken {
                chain = MagmaTerm::succ(chain, factors[i].term.clone());
            }
            taken.sort_unstable_by(|a, b| b.cmp(a));
            for i in taken {
                factors.remove(i);
            }
            blocks += 1;
            factors.push(Factor {
                der: 0,
                key: (1, blocks),
                term: chain,
            });
        } else {
            // exactly r-1 underived factors remain: the last factor closes
            // the chain (this is the final peel)
            debug_assert_eq!(und.len() + 1, need);
            let mut chain = h.term;
            for &i in &und {
                chain = MagmaTerm::succ(chain, factors[i].term.clone());
            }
            chain = MagmaTerm::succ(chain, tail);
            und.sort_unstable_by(|a, b| b.cmp(a));
            for i in und {
                factors.remove(i);
            }
            tail = chain;
        }
    }

    // only first-derivative factors can remain
    debug_assert!(factors.iter().all(|f| f.der == 1));
    factors.sort_by_key(|f| std::cmp::Reverse(f.key));
    for f in factors {
        tail = MagmaTerm::succ(f.term, tail);
    }
    Ok(tail)
}

/// Expresses a polynomial whose monomials all satisfy the `>`-membership
/// criterion as a pure-`>` magma polynomial: the der-lex leading monomial is
/// repeatedly eliminated through its normal-form term.
pub fn to_succ_combination(p: &DiffPoly) -> Result<MagmaPoly> {
    for (m, _) in p.terms() {
        if !m.is_succ_member() {
            return Err(succ_membership_error(m));
        }
    }
    let mut rem = p.clone();
    let mut out = MagmaPoly::zero();
    while !rem.is_zero() {
        let (m, c) = {
            let (m, c) = leading_monomial(&rem)?;
            (m.clone(), c.clone())
        };
        let t = phi(&m)?;
        out.add_term(t.clone(), c.clone());
        rem = rem.sub(&MagmaPoly::term(t, c).eval());
        // the leading term has coefficient 1 in its own expansion
        assert!(
            rem.coeff(&m).is_zero(),
            "leading monomial {} survived its own elimination",
            m
        );
    }
    Ok(out)
}
