//! The dialgebra view: splitting weight-(-1) elements by the derivation
//! order of the last factor, dimension accounting, and the dialgebra axiom
//! report.

use crate::identities::{builtin_identity, verify_vanishes, IdentityTemplate};
use crate::term::rat;
use crate::{DiffPoly, Error, Generator, MagmaOp, MagmaPoly, MagmaTerm, PermMonomial, Result};

/// A weight-(-1) polynomial split into the part expressible through `>`
/// (underived last factor) and the part expressible through `<` (derived
/// last factor).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub succ_part: DiffPoly,
    pub prec_part: DiffPoly,
}

/// Splits a weight-(-1) polynomial by the predicate `last.der == 0`.
pub fn decompose(p: &DiffPoly) -> Result<Decomposition> {
    let mut succ_part = DiffPoly::zero();
    let mut prec_part = DiffPoly::zero();
    for (m, c) in p.terms() {
        if m.weight() != -1 {
            return Err(Error::NotInDialgebra {
                monomial: m.to_string(),
                weight: m.weight(),
            });
        }
        if m.last().der() == 0 {
            succ_part.add_term(m.clone(), c.clone());
        } else {
            prec_part.add_term(m.clone(), c.clone());
        }
    }
    Ok(Decomposition { succ_part, prec_part })
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// `n * C(2n-3, n-1)`, the dimension of the arity-`n` multilinear component
/// of the `>`-subalgebra; fixed to 1 at `n = 1` (the bare generator).
pub fn dim_succ_formula(n: u32) -> u64 {
    if n == 1 {
        return 1;
    }
    let n = n as u64;
    n * binomial(2 * n - 3, n - 1)
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

/// All multilinear weight-(-1) monomials in `x1..xn` (both halves of the
/// decomposition), in canonical order.
pub fn enumerate_weight_minus_one(n: u32) -> Result<Vec<PermMonomial>> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let mut out = Vec::new();
    for last in 1..=n {
        let others: Vec<u32> = (1..=n).filter(|&v| v != last).collect();
        // derivation orders over all n factors sum to n - 1
        for ks in compositions(n - 1, n as usize) {
            let prefix: Vec<Generator> = others
                .iter()
                .zip(&ks)
                .map(|(&v, &k)| Generator::new(v, k))
                .collect();
            out.push(PermMonomial::new(
                prefix,
                Generator::new(last, ks[n as usize - 1]),
            ));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Enumerated dimension of the full multilinear weight-(-1) space.
pub fn dim_di_nov_enumerated(n: u32) -> Result<u64> {
    Ok(enumerate_weight_minus_one(n)?.len() as u64)
}

/// Result of checking one dialgebra axiom.
#[derive(Clone, Debug)]
pub struct AxiomCheck {
    pub name: String,
    pub passes: bool,
    pub witness: DiffPoly,
}

const AXIOM_NAMES: &[&str] = &["zero1", "zero2", "diLSym1", "diLSym2", "diRCom1", "diRCom2"];

/// Checks all six dialgebra axioms under the evaluation embedding and
/// reports pass/fail per axiom.
pub fn verify_dialgebra_axioms() -> Vec<AxiomCheck> {
    AXIOM_NAMES
        .iter()
        .map(|name| {
            let t = builtin_identity(name).expect("axiom names are built in");
            let (passes, witness) = verify_vanishes(&t);
            AxiomCheck {
                name: name.to_string(),
                passes,
                witness,
            }
        })
        .collect()
}

/// A deliberately broken axiom used as a negative control:
/// `(x1 -| x2) -| x3 - (x2 -| x3) -| x1`.
pub fn mutated_axiom() -> IdentityTemplate {
    let l = MagmaTerm::leaf;
    let body = {
        let mut p = MagmaPoly::monomial(MagmaTerm::node(
            MagmaOp::Dashv,
            MagmaTerm::node(MagmaOp::Dashv, l(1), l(2)),
            l(3),
        ));
        p.add_term(
            MagmaTerm::node(
                MagmaOp::Dashv,
                MagmaTerm::node(MagmaOp::Dashv, l(2), l(3)),
                l(1),
            ),
            -rat(1, 1),
        );
        p
    };
    IdentityTemplate::new("mutated", 3, body).expect("control template is multilinear")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(var: u32, der: u32) -> Generator {
        Generator::new(var, der)
    }

    #[test]
    fn decompose_basic() {
        // x1'x2 -> (x1'x2, 0)
        let a = DiffPoly::monomial(PermMonomial::new(vec![g(1, 1)], g(2, 0)));
        let d = decompose(&a).unwrap();
        assert_eq!(d.succ_part, a);
        assert!(d.prec_part.is_zero());

        // x1x2' -> (0, x1x2')
        let b = DiffPoly::monomial(PermMonomial::new(vec![g(1, 0)], g(2, 1)));
        let d2 = decompose(&b).unwrap();
        assert!(d2.succ_part.is_zero());
        assert_eq!(d2.prec_part, b);

        // linearity
        let p = a.add(&b.scale(&rat(2, 1)));
        let d3 = decompose(&p).unwrap();
        assert_eq!(d3.succ_part, a);
        assert_eq!(d3.prec_part, b.scale(&rat(2, 1)));
        assert_eq!(d3.succ_part.add(&d3.prec_part), p);
    }

    #[test]
    fn decompose_rejects_wrong_weight() {
        let bad = DiffPoly::monomial(PermMonomial::new(vec![g(1, 1)], g(2, 1)));
        assert!(matches!(
            decompose(&bad),
            Err(Error::NotInDialgebra { .. })
        ));
    }

    #[test]
    fn formula_values() {
        assert_eq!(dim_succ_formula(1), 1);
        assert_eq!(dim_succ_formula(2), 2);
        assert_eq!(dim_succ_formula(3), 9);
        assert_eq!(dim_succ_formula(4), 40);
        assert_eq!(dim_succ_formula(5), 175);
        assert_eq!(dim_succ_formula(6), 756);
    }

    #[test]
    fn enumerated_total_space() {
        assert_eq!(dim_di_nov_enumerated(3).unwrap(), 18);
        for n in 2..=5 {
            assert_eq!(dim_di_nov_enumerated(n).unwrap(), 2 * dim_succ_formula(n));
        }
    }

    #[test]
    fn axioms_pass_and_control_fails() {
        for check in verify_dialgebra_axioms() {
            assert!(check.passes, "axiom {} failed: {}", check.name, check.witness);
        }
        let (ok, witness) = verify_vanishes(&mutated_axiom());
        assert!(!ok);
        assert!(!witness.is_zero());
    }

    #[test]
    fn translation_between_signatures() {
        // tau(x1 > x2) = tau(x2 -| x1)
        let a = MagmaTerm::succ(MagmaTerm::leaf(1), MagmaTerm::leaf(2));
        let b = MagmaTerm::node(MagmaOp::Dashv, MagmaTerm::leaf(2), MagmaTerm::leaf(1));
        assert_eq!(a.eval(), b.eval());
    }
}
