//! Multilinear identity templates, vanishing checks under evaluation, and
//! operadic consequence-space dimension computations.

use crate::linalg::{rank, MonomialIndexer, RatMatrix};
use crate::{
    dialgebra, DiffPoly, Error, MagmaOp, MagmaPoly, MagmaTerm, Rational, Result,
};
use num::One;
use std::collections::BTreeMap;

/// A named multilinear identity, stored as "left side minus right side".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityTemplate {
    name: String,
    arity: u32,
    body: MagmaPoly,
}

impl IdentityTemplate {
    /// Builds a template, checking that every term uses the variables
    /// `x1..x{arity}` exactly once.
    pub fn new(name: impl Into<String>, arity: u32, body: MagmaPoly) -> Result<Self> {
        if arity < 2 {
            return Err(Error::EmptyInput);
        }
        let expected: Vec<u32> = (1..=arity).collect();
        for (t, _) in body.terms() {
            let mut vars = t.vars();
            vars.sort_unstable();
            if vars != expected {
                return Err(Error::NotNormalForm {
                    monomial: t.to_string(),
                    clause: format!("template term is not multilinear in x1..x{}", arity),
                });
            }
        }
        Ok(IdentityTemplate {
            name: name.into(),
            arity,
            body,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn body(&self) -> &MagmaPoly {
        &self.body
    }
}

/// `<a, b, c> = (a > b) > c - a > (b > c)`.
pub fn associator(a: &MagmaTerm, b: &MagmaTerm, c: &MagmaTerm) -> MagmaPoly {
    let mut p = MagmaPoly::monomial(MagmaTerm::succ(
        MagmaTerm::succ(a.clone(), b.clone()),
        c.clone(),
    ));
    p.add_term(
        MagmaTerm::succ(a.clone(), MagmaTerm::succ(b.clone(), c.clone())),
        -Rational::one(),
    );
    p
}

pub const BUILTIN_IDENTITY_NAMES: &[&str] = &[
    "id1", "id2", "id3", "zero1", "zero2", "diLSym1", "diLSym2", "diRCom1", "diRCom2",
    "id2deg5", "albert7",
];

fn l(v: u32) -> MagmaTerm {
    MagmaTerm::leaf(v)
}

fn s(a: MagmaTerm, b: MagmaTerm) -> MagmaTerm {
    MagmaTerm::succ(a, b)
}

fn op(o: MagmaOp, a: MagmaTerm, b: MagmaTerm) -> MagmaTerm {
    MagmaTerm::node(o, a, b)
}

fn poly(terms: Vec<(i64, MagmaTerm)>) -> MagmaPoly {
    let mut p = MagmaPoly::zero();
    for (c, t) in terms {
        p.add_term(t, Rational::from_integer(c.into()));
    }
    p
}

/// The built-in templates: the three defining identities of the
/// `>`-subalgebra variety, the dialgebra axioms, the arity-5 rearrangement of
/// the second identity, and the long seven-term consequence used in the
/// arity-5 certification.
pub fn builtin_identity(name: &str) -> Result<IdentityTemplate> {
    use MagmaOp::{Dashv, Vdash};
    let (arity, body) = match name {
        // x1>(x2>x3) - x2>(x1>x3)
        "id1" => (3, poly(vec![(1, s(l(1), s(l(2), l(3)))), (-1, s(l(2), s(l(1), l(3))))])),
        // <x1, x2>x3, x4> - <x1, x3, x2>x4>
        "id2" => {
            let a = associator(&l(1), &s(l(2), l(3)), &l(4));
            let b = associator(&l(1), &l(3), &s(l(2), l(4)));
            (4, a.sub(&b))
        }
        // <x1,x2,x3>x4 - <x1,x3,x2>x4
        "id3" => {
            let a = MagmaPoly::apply(
                MagmaOp::Succ,
                &associator(&l(1), &l(2), &l(3)),
                &MagmaPoly::var(4),
            );
            let b = MagmaPoly::apply(
                MagmaOp::Succ,
                &associator(&l(1), &l(3), &l(2)),
                &MagmaPoly::var(4),
            );
            (4, a.sub(&b))
        }
        // (x1 -| x2) |- x3 - (x1 |- x2) |- x3
        "zero1" => (
            3,
            poly(vec![
                (1, op(Vdash, op(Dashv, l(1), l(2)), l(3))),
                (-1, op(Vdash, op(Vdash, l(1), l(2)), l(3))),
            ]),
        ),
        // x1 -| (x2 |- x3) - x1 -| (x2 -| x3)
        "zero2" => (
            3,
            poly(vec![
                (1, op(Dashv, l(1), op(Vdash, l(2), l(3)))),
                (-1, op(Dashv, l(1), op(Dashv, l(2), l(3)))),
            ]),
        ),
        // (x1|-x2)|-x3 - x1|-(x2|-x3) - (x2|-x1)|-x3 + x2|-(x1|-x3)
        "diLSym1" => (
            3,
            poly(vec![
                (1, op(Vdash, op(Vdash, l(1), l(2)), l(3))),
                (-1, op(Vdash, l(1), op(Vdash, l(2), l(3)))),
                (-1, op(Vdash, op(Vdash, l(2), l(1)), l(3))),
                (1, op(Vdash, l(2), op(Vdash, l(1), l(3)))),
            ]),
        ),
        // (x1-|x2)-|x3 - (x1-|x3)-|x2
        "diLSym2" => (
            3,
            poly(vec![
                (1, op(Dashv, op(Dashv, l(1), l(2)), l(3))),
                (-1, op(Dashv, op(Dashv, l(1), l(3)), l(2))),
            ]),
        ),
        // (x1-|x2)-|x3 - x1-|(x2-|x3) - (x2|-x1)-|x3 + x2|-(x1-|x3)
        "diRCom1" => (
            3,
            poly(vec![
                (1, op(Dashv, op(Dashv, l(1), l(2)), l(3))),
                (-1, op(Dashv, l(1), op(Dashv, l(2), l(3)))),
                (-1, op(Dashv, op(Vdash, l(2), l(1)), l(3))),
                (1, op(Vdash, l(2), op(Dashv, l(1), l(3)))),
            ]),
        ),
        // (x1|-x2)-|x3 - (x1|-x3)|-x2
        "diRCom2" => (
            3,
            poly(vec![
                (1, op(Dashv, op(Vdash, l(1), l(2)), l(3))),
                (-1, op(Vdash, op(Vdash, l(1), l(3)), l(2))),
            ]),
        ),
        // (x1>x2)>((x3>x4)>x5) - ((x1>x2)>(x3>x4))>x5
        //   + ((x1>x2)>x4)>(x3>x5) - x4>((x1>x2)>(x3>x5))
        "id2deg5" => (
            5,
            poly(vec![
                (1, s(s(l(1), l(2)), s(s(l(3), l(4)), l(5)))),
                (-1, s(s(s(l(1), l(2)), s(l(3), l(4))), l(5))),
                (1, s(s(s(l(1), l(2)), l(4)), s(l(3), l(5)))),
                (-1, s(l(4), s(s(l(1), l(2)), s(l(3), l(5))))),
            ]),
        ),
        // (x1>((x2>x3)>x4))>x5 rewritten through seven terms
        "albert7" => (
            5,
            poly(vec![
                (1, s(s(l(1), s(s(l(2), l(3)), l(4))), l(5))),
                (-1, s(s(l(2), s(s(l(1), l(3)), l(4))), l(5))),
                (1, s(l(2), s(s(s(l(1), l(3)), l(4)), l(5)))),
                (1, s(l(1), s(s(l(2), s(l(3), l(4))), l(5)))),
                (-1, s(l(1), s(l(2), s(s(l(3), l(4)), l(5))))),
                (-1, s(l(1), s(s(s(l(2), l(3)), l(4)), l(5)))),
                (-1, s(l(2), s(s(l(1), s(l(3), l(4))), l(5)))),
                (1, s(l(2), s(l(1), s(s(l(3), l(4)), l(5))))),
            ]),
        ),
        other => return Err(Error::UnknownIdentity(other.to_string())),
    };
    IdentityTemplate::new(name, arity, body)
}

/// Evaluates the template body; returns `(true, 0)` when it vanishes, or
/// `(false, witness)` with the nonzero evaluation otherwise.  Multilinearity
/// over a characteristic-0 field makes the distinct-variable check complete.
pub fn verify_vanishes(t: &IdentityTemplate) -> (bool, DiffPoly) {
    let witness = t.body().eval();
    (witness.is_zero(), witness)
}

fn monomials_on(vars: &[u32]) -> Vec<MagmaTerm> {
    debug_assert!(vars.windows(2).all(|w| w[0] < w[1]));
    if vars.len() == 1 {
        return vec![MagmaTerm::leaf(vars[0])];
    }
    let n = vars.len();
    let mut out = Vec::new();
    for mask in 1u32..((1 << n) - 1) {
        let left: Vec<u32> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| vars[i]).collect();
        let right: Vec<u32> = (0..n).filter(|i| mask >> i & 1 == 0).map(|i| vars[i]).collect();
        for lt in monomials_on(&left) {
            for rt in monomials_on(&right) {
                out.push(MagmaTerm::succ(lt.clone(), rt));
            }
        }
    }
    out
}

/// All pure-`>` binary trees with `n` leaves labeled bijectively by
/// `x1..xn`; there are `n! * Catalan(n-1)` of them.
pub fn multilinear_magma_monomials(n: u32) -> Vec<MagmaTerm> {
    assert!(n >= 1, "arity must be at least 1");
    let vars: Vec<u32> = (1..=n).collect();
    monomials_on(&vars)
}

/// Ordered set partitions of `items` into exactly `k` nonempty blocks.
fn ordered_set_partitions(items: &[u32], k: usize) -> Vec<Vec<Vec<u32>>> {
    let n = items.len();
    if k == 0 || k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut assign = vec![0usize; n];
    loop {
        let mut blocks: Vec<Vec<u32>> = vec![Vec::new(); k];
        for (i, &b) in assign.iter().enumerate() {
            blocks[b].push(items[i]);
        }
        if blocks.iter().all(|b| !b.is_empty()) {
            out.push(blocks);
        }
        // next assignment in base k
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            assign[i] += 1;
            if assign[i] < k {
                break;
            }
            assign[i] = 0;
        }
    }
}

fn substitute_poly(body: &MagmaPoly, map: &BTreeMap<u32, MagmaTerm>) -> MagmaPoly {
    let mut out = MagmaPoly::zero();
    for (t, c) in body.terms() {
        out.add_term(t.substitute(map), c.clone());
    }
    out
}

/// Direct instances of the templates at arity `n`: template variables range
/// over all multilinear `>`-monomials on the blocks of every ordered set
/// partition of `{1..n}`.
fn direct_instances(ids: &[IdentityTemplate], n: u32) -> Vec<MagmaPoly> {
    let items: Vec<u32> = (1..=n).collect();
    let mut rows = Vec::new();
    for t in ids {
        if t.arity() > n {
            continue;
        }
        for blocks in ordered_set_partitions(&items, t.arity() as usize) {
            let choices: Vec<Vec<MagmaTerm>> = blocks.iter().map(|b| monomials_on(b)).collect();
            let mut pick = vec![0usize; choices.len()];
            loop {
                let map: BTreeMap<u32, MagmaTerm> = pick
                    .iter()
                    .enumerate()
                    .map(|(i, &j)| (i as u32 + 1, choices[i][j].clone()))
                    .collect();
                rows.push(substitute_poly(t.body(), &map));
                let mut i = choices.len();
                let done = loop {
                    if i == 0 {
                        break true;
                    }
                    i -= 1;
                    pick[i] += 1;
                    if pick[i] < choices[i].len() {
                        break false;
                    }
                    pick[i] = 0;
                };
                if done {
                    break;
                }
            }
        }
    }
    rows
}

fn matrix_from_polys(polys: &[MagmaPoly], ix: &MonomialIndexer<MagmaTerm>) -> RatMatrix {
    let mut m = RatMatrix::new(ix.len());
    for p in polys {
        let row: Vec<(usize, Rational)> = p
            .terms()
            .map(|(t, c)| (ix.position(t).expect("term outside ambient space"), c.clone()))
            .collect();
        m.push_sparse_row(row);
    }
    m
}

/// Keeps an independent spanning subset of `polys`, in order.
fn independent_subset(polys: Vec<MagmaPoly>, ix: &MonomialIndexer<MagmaTerm>) -> Vec<MagmaPoly> {
    let mut kept: Vec<MagmaPoly> = Vec::new();
    let mut m = RatMatrix::new(ix.len());
    let mut r = 0;
    for p in polys {
        let row: Vec<(usize, Rational)> = p
            .terms()
            .map(|(t, c)| (ix.position(t).unwrap(), c.clone()))
            .collect();
        m.push_sparse_row(row);
        let nr = rank(&m);
        if nr > r {
            kept.push(p);
            r = nr;
        }
    }
    kept
}

fn relabel(t: &MagmaTerm, map: &BTreeMap<u32, u32>) -> MagmaTerm {
    match t {
        MagmaTerm::Leaf(v) => MagmaTerm::leaf(map[v]),
        MagmaTerm::Node(o, a, b) => MagmaTerm::node(*o, relabel(a, map), relabel(b, map)),
    }
}

fn relabel_poly(p: &MagmaPoly, map: &BTreeMap<u32, u32>) -> MagmaPoly {
    let mut out = MagmaPoly::zero();
    for (t, c) in p.terms() {
        out.add_term(relabel(t, map), c.clone());
    }
    out
}

fn subsets(items: &[u32], k: usize) -> Vec<Vec<u32>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for with in subsets(&items[1..], k - 1) {
        let mut v = vec![items[0]];
        v.extend(with);
        out.push(v);
    }
    out.extend(subsets(&items[1..], k));
    out
}

/// All arity-`n` multilinear consequences of the templates, as magma
/// polynomials: direct instances plus one-sided multiplications of
/// lower-arity consequences by monomials on the complementary variables.
pub fn consequence_polys(ids: &[IdentityTemplate], n: u32) -> Vec<MagmaPoly> {
    // independent spanning sets per intermediate arity, built bottom-up
    let mut bases: BTreeMap<u32, Vec<MagmaPoly>> = BTreeMap::new();
    let mut result = Vec::new();
    for m in 2..=n {
        let mut rows = direct_instances(ids, m);
        let items: Vec<u32> = (1..=m).collect();
        for k in 2..m {
            let base = bases.get(&k).cloned().unwrap_or_default();
            if base.is_empty() {
                continue;
            }
            for sub in subsets(&items, k as usize) {
                let map: BTreeMap<u32, u32> =
                    (1..=k).map(|i| (i, sub[i as usize - 1])).collect();
                let comp: Vec<u32> = items.iter().copied().filter(|v| !sub.contains(v)).collect();
                let ws = monomials_on(&comp);
                for c0 in &base {
                    let c = relabel_poly(c0, &map);
                    for w in &ws {
                        rows.push(MagmaPoly::apply(
                            MagmaOp::Succ,
                            &MagmaPoly::monomial(w.clone()),
                            &c,
                        ));
                        rows.push(MagmaPoly::apply(
                            MagmaOp::Succ,
                            &c,
                            &MagmaPoly::monomial(w.clone()),
                        ));
                    }
                }
            }
        }
        rows.retain(|p| !p.is_zero());
        rows.sort();
        rows.dedup();
        if m == n {
            result = rows;
        } else {
            let ix = MonomialIndexer::new(multilinear_magma_monomials(m));
            bases.insert(m, independent_subset(rows, &ix));
        }
    }
    result
}

/// Coordinate matrix of the arity-`n` consequence space over the
/// multilinear-magma monomial indexer.
pub fn consequence_space(ids: &[IdentityTemplate], n: u32) -> RatMatrix {
    let ix = MonomialIndexer::new(multilinear_magma_monomials(n));
    matrix_from_polys(&consequence_polys(ids, n), &ix)
}

/// Dimension of the arity-`n` multilinear component of the quotient by the
/// templates' consequences.
pub fn operad_dim(ids: &[IdentityTemplate], n: u32) -> usize {
    let ambient = multilinear_magma_monomials(n).len();
    ambient - rank(&consequence_space(ids, n))
}

/// Rank of the evaluation images of all multilinear `>`-monomials, in
/// coordinates over the multilinear weight-(-1) perm monomials.
pub fn evaluation_span_dim(n: u32) -> usize {
    let perm_ix = MonomialIndexer::new(
        dialgebra::enumerate_weight_minus_one(n).expect("arity must be at least 1"),
    );
    let mut m = RatMatrix::new(perm_ix.len());
    for t in multilinear_magma_monomials(n) {
        let p = t.eval();
        let row: Vec<(usize, Rational)> = p
            .terms()
            .map(|(mm, c)| (perm_ix.position(mm).expect("image outside ambient"), c.clone()))
            .collect();
        m.push_sparse_row(row);
    }
    rank(&m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::rat;
    use crate::{Generator, PermMonomial};

    #[test]
    fn associator_shape() {
        let a = associator(&l(1), &l(2), &l(3));
        assert_eq!(a.num_terms(), 2);
        // tau(<x,y,z>) = x''yz
        let expect = DiffPoly::monomial(PermMonomial::new(
            vec![Generator::new(1, 2), Generator::new(2, 0)],
            Generator::new(3, 0),
        ));
        assert_eq!(a.eval(), expect);
    }

    #[test]
    fn associator_repeated_argument_stays_structural() {
        let a = associator(&l(1), &l(1), &l(1));
        assert_eq!(a.num_terms(), 2);
    }

    #[test]
    fn builtin_identities_vanish() {
        for name in BUILTIN_IDENTITY_NAMES {
            let t = builtin_identity(name).unwrap();
            let (ok, witness) = verify_vanishes(&t);
            assert!(ok, "{} left a nonzero witness: {}", name, witness);
        }
        assert!(matches!(
            builtin_identity("nope"),
            Err(Error::UnknownIdentity(_))
        ));
    }

    #[test]
    fn fake_identity_fails_with_witness() {
        // naked associativity of `>` does not hold
        let t = IdentityTemplate::new("fake", 3, associator(&l(1), &l(2), &l(3))).unwrap();
        let (ok, witness) = verify_vanishes(&t);
        assert!(!ok);
        let expect = DiffPoly::monomial(PermMonomial::new(
            vec![Generator::new(1, 2), Generator::new(2, 0)],
            Generator::new(3, 0),
        ));
        assert_eq!(witness, expect);
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(multilinear_magma_monomials(1).len(), 1);
        assert_eq!(multilinear_magma_monomials(2).len(), 2);
        assert_eq!(multilinear_magma_monomials(3).len(), 12);
        assert_eq!(multilinear_magma_monomials(4).len(), 120);
        assert_eq!(multilinear_magma_monomials(5).len(), 1680);
    }

    #[test]
    fn id1_consequences_at_three() {
        let ids = vec![builtin_identity("id1").unwrap()];
        let m = consequence_space(&ids, 3);
        assert_eq!(m.ncols(), 12);
        assert_eq!(rank(&m), 3);
        assert_eq!(operad_dim(&ids, 3), 9);
    }

    #[test]
    fn empty_identity_set_has_zero_rank() {
        let m = consequence_space(&[], 4);
        assert_eq!(m.nrows(), 0);
        assert_eq!(rank(&m), 0);
    }

    #[test]
    fn evaluation_span_small() {
        assert_eq!(evaluation_span_dim(2), 2);
        assert_eq!(evaluation_span_dim(3), 9);
    }

    #[test]
    fn template_rejects_non_multilinear() {
        let body = poly(vec![(1, s(l(1), s(l(1), l(2))))]);
        assert!(IdentityTemplate::new("bad", 2, body).is_err());
    }

    #[test]
    fn id2_has_four_terms() {
        let t = builtin_identity("id2deg5").unwrap();
        assert_eq!(t.body().num_terms(), 4);
        assert_eq!(t.arity(), 5);
        let t2 = builtin_identity("albert7").unwrap();
        assert_eq!(t2.body().num_terms(), 8);
    }

    #[test]
    fn partitions_and_subsets() {
        assert_eq!(ordered_set_partitions(&[1, 2, 3], 3).len(), 6);
        assert_eq!(ordered_set_partitions(&[1, 2, 3, 4], 3).len(), 36);
        assert_eq!(subsets(&[1, 2, 3, 4], 2).len(), 6);
    }

    #[test]
    fn coefficients_stay_rational() {
        let t = builtin_identity("id1").unwrap();
        for (_, c) in t.body().terms() {
            assert!(c == &rat(1, 1) || c == &rat(-1, 1));
        }
    }
}
