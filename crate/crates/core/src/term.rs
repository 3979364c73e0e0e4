//! Canonical arithmetic in the free perm algebra with derivation.
//!
//! A perm algebra is an associative algebra satisfying the left-commutative
//! identity `xyz = yxz`: every factor of a product except the last one
//! commutes with the others.  Monomials therefore have a canonical form
//! consisting of a sorted commutative prefix and a distinguished last factor.

use crate::Error;
use num::BigRational;
use num::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Exact coefficient field: arbitrary-precision rationals.
pub type Rational = BigRational;

/// Convenience constructor for small rational constants.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// A generator `x_i^(k)`: variable `var = i` with derivation order `der = k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Generator {
    var: u32,
    der: u32,
}

impl Generator {
    pub fn new(var: u32, der: u32) -> Self {
        assert!(var >= 1, "variable indices start at 1");
        Generator { var, der }
    }

    pub fn var(&self) -> u32 {
        self.var
    }

    pub fn der(&self) -> u32 {
        self.der
    }

    /// One derivation step: `x^(k)` becomes `x^(k+1)`.
    pub fn derived(&self) -> Self {
        Generator {
            var: self.var,
            der: self.der + 1,
        }
    }

    /// wt(x^(j)) = j - 1.
    pub fn weight(&self) -> i64 {
        self.der as i64 - 1
    }
}

/// Generators compare by derivation order first, then by variable index.
impl Ord for Generator {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.der, self.var).cmp(&(other.der, other.var))
    }
}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.var)?;
        if self.der <= 3 {
            for _ in 0..self.der {
                write!(f, "'")?;
            }
            Ok(())
        } else {
            write!(f, "^({})", self.der)
        }
    }
}

/// A monomial of the free perm algebra with derivation: a sorted commutative
/// prefix and a distinguished last factor.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PermMonomial {
    prefix: Vec<Generator>,
    last: Generator,
}

impl PermMonomial {
    /// Builds the canonical monomial; the prefix is sorted on construction.
    pub fn new(prefix: impl Into<Vec<Generator>>, last: Generator) -> Self {
        let mut prefix = prefix.into();
        prefix.sort();
        PermMonomial { prefix, last }
    }

    pub fn generator(g: Generator) -> Self {
        PermMonomial {
            prefix: Vec::new(),
            last: g,
        }
    }

    pub fn prefix(&self) -> &[Generator] {
        &self.prefix
    }

    pub fn last(&self) -> Generator {
        self.last
    }

    /// All factors, prefix first, last factor at the end.
    pub fn factors(&self) -> impl Iterator<Item = Generator> + '_ {
        self.prefix.iter().copied().chain(std::iter::once(self.last))
    }

    pub fn degree(&self) -> usize {
        self.prefix.len() + 1
    }

    /// wt(m) = sum of (der - 1) over all factors.
    pub fn weight(&self) -> i64 {
        self.factors().map(|g| g.weight()).sum()
    }

    /// Membership criterion for the `>`-subalgebra: weight -1 and an
    /// underived last factor.
    pub fn is_succ_member(&self) -> bool {
        self.weight() == -1 && self.last.der == 0
    }

    /// The sorted sequence of positive derivation orders of the factors.
    pub fn der_lex_key(&self) -> Vec<u32> {
        let mut key: Vec<u32> = self.factors().map(|g| g.der).filter(|&d| d > 0).collect();
        key.sort_unstable();
        key
    }

    /// True when every variable index occurs exactly once.
    pub fn is_multilinear(&self) -> bool {
        let mut vars: Vec<u32> = self.factors().map(|g| g.var).collect();
        vars.sort_unstable();
        vars.windows(2).all(|w| w[0] != w[1])
    }

    /// Product of two monomials: the left operand dissolves entirely into the
    /// commutative prefix, the right operand keeps its last factor.
    pub fn mul(&self, other: &Self) -> Self {
        let mut prefix = Vec::with_capacity(self.degree() + other.prefix.len());
        prefix.extend(self.factors());
        prefix.extend_from_slice(&other.prefix);
        PermMonomial::new(prefix, other.last)
    }
}

/// Canonical total order: der-lex key, then degree, then the full factor
/// sequence compared lexicographically.  Doubles as the der-lex order with
/// deterministic tie-breaking.
impl Ord for PermMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.der_lex_key()
            .cmp(&other.der_lex_key())
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| {
                self.factors()
                    .collect::<Vec<_>>()
                    .cmp(&other.factors().collect::<Vec<_>>())
            })
    }
}

impl PartialOrd for PermMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PermMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.prefix {
            write!(f, "{}*", g)?;
        }
        write!(f, "{}", self.last)
    }
}

/// A finite linear combination of perm monomials with exact rational
/// coefficients.  Zero coefficients are never stored; iteration follows the
/// canonical monomial order.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DiffPoly {
    terms: BTreeMap<PermMonomial, Rational>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn monomial(m: PermMonomial) -> Self {
        Self::term(m, Rational::one())
    }

    pub fn term(m: PermMonomial, c: Rational) -> Self {
        let mut p = DiffPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn generator(g: Generator) -> Self {
        Self::monomial(PermMonomial::generator(g))
    }

    pub fn var(i: u32) -> Self {
        Self::generator(Generator::new(i, 0))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&PermMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &PermMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: PermMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return DiffPoly::zero();
        }
        DiffPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    /// Perm product, extended bilinearly.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = DiffPoly::zero();
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    /// The derivation `d`, extended by the Leibniz rule.
    pub fn derive(&self) -> Self {
        let mut out = DiffPoly::zero();
        for (m, c) in self.terms() {
            let factors: Vec<Generator> = m.factors().collect();
            for i in 0..factors.len() {
                let mut fs = factors.clone();
                fs[i] = fs[i].derived();
                let last = fs.pop().unwrap();
                out.add_term(PermMonomial::new(fs, last), c.clone());
            }
        }
        out
    }

    /// a > b = d(a) b
    pub fn succ(&self, other: &Self) -> Self {
        self.derive().mul(other)
    }

    /// a < b = a d(b)
    pub fn prec(&self, other: &Self) -> Self {
        self.mul(&other.derive())
    }

    /// a |- b = a d(b)
    pub fn vdash(&self, other: &Self) -> Self {
        self.prec(other)
    }

    /// a -| b = d(b) a
    pub fn dashv(&self, other: &Self) -> Self {
        other.derive().mul(self)
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Leading (largest) term first.
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if !abs.is_one() {
                if abs.is_integer() {
                    write!(f, "{}*", abs.numer())?;
                } else {
                    write!(f, "{}/{}*", abs.numer(), abs.denom())?;
                }
            }
            write!(f, "{}", m)?;
        }
        Ok(())
    }
}

/// Binary operations of the magma / dialgebra signature.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum MagmaOp {
    /// `>` : a > b = d(a) b
    Succ,
    /// `<` : a < b = a d(b)
    Prec,
    /// `|-` : a |- b = a d(b)
    Vdash,
    /// `-|` : a -| b = d(b) a
    Dashv,
}

impl MagmaOp {
    pub fn symbol(&self) -> &'static str {
        match self {
            MagmaOp::Succ => ">",
            MagmaOp::Prec => "<",
            MagmaOp::Vdash => "|-",
            MagmaOp::Dashv => "-|",
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MagmaOp::Succ => "succ",
            MagmaOp::Prec => "prec",
            MagmaOp::Vdash => "vdash",
            MagmaOp::Dashv => "dashv",
        }
    }
}

/// A binary tree over the magma operations with variable leaves.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum MagmaTerm {
    Leaf(u32),
    Node(MagmaOp, Box<MagmaTerm>, Box<MagmaTerm>),
}

impl MagmaTerm {
    pub fn leaf(var: u32) -> Self {
        assert!(var >= 1, "variable indices start at 1");
        MagmaTerm::Leaf(var)
    }

    pub fn node(op: MagmaOp, left: MagmaTerm, right: MagmaTerm) -> Self {
        MagmaTerm::Node(op, Box::new(left), Box::new(right))
    }

    pub fn succ(left: MagmaTerm, right: MagmaTerm) -> Self {
        Self::node(MagmaOp::Succ, left, right)
    }

    pub fn arity(&self) -> usize {
        match self {
            MagmaTerm::Leaf(_) => 1,
            MagmaTerm::Node(_, l, r) => l.arity() + r.arity(),
        }
    }

    /// Variable indices in leaf order (with multiplicity).
    pub fn vars(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<u32>) {
        match self {
            MagmaTerm::Leaf(v) => out.push(*v),
            MagmaTerm::Node(_, l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    pub fn uses_only(&self, op: MagmaOp) -> bool {
        match self {
            MagmaTerm::Leaf(_) => true,
            MagmaTerm::Node(o, l, r) => *o == op && l.uses_only(op) && r.uses_only(op),
        }
    }

    /// Replaces each leaf through `map`.
    pub fn substitute(&self, map: &BTreeMap<u32, MagmaTerm>) -> MagmaTerm {
        match self {
            MagmaTerm::Leaf(v) => match map.get(v) {
                Some(t) => t.clone(),
                None => MagmaTerm::Leaf(*v),
            },
            MagmaTerm::Node(op, l, r) => {
                MagmaTerm::node(*op, l.substitute(map), r.substitute(map))
            }
        }
    }

    /// The evaluation map into the perm algebra with derivation: leaves go to
    /// generators, each operation to its defining product.
    pub fn eval(&self) -> DiffPoly {
        match self {
            MagmaTerm::Leaf(v) => DiffPoly::var(*v),
            MagmaTerm::Node(op, l, r) => {
                let a = l.eval();
                let b = r.eval();
                match op {
                    MagmaOp::Succ => a.succ(&b),
                    MagmaOp::Prec => a.prec(&b),
                    MagmaOp::Vdash => a.vdash(&b),
                    MagmaOp::Dashv => a.dashv(&b),
                }
            }
        }
    }
}

impl fmt::Display for MagmaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MagmaTerm::Leaf(v) => write!(f, "x{}", v),
            MagmaTerm::Node(op, l, r) => {
                match l.as_ref() {
                    MagmaTerm::Leaf(_) => write!(f, "{}", l)?,
                    _ => write!(f, "({})", l)?,
                }
                write!(f, " {} ", op.symbol())?;
                match r.as_ref() {
                    MagmaTerm::Leaf(_) => write!(f, "{}", r),
                    _ => write!(f, "({})", r),
                }
            }
        }
    }
}

/// A rational linear combination of magma terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct MagmaPoly {
    terms: BTreeMap<MagmaTerm, Rational>,
}

impl MagmaPoly {
    pub fn zero() -> Self {
        MagmaPoly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(t: MagmaTerm, c: Rational) -> Self {
        let mut p = MagmaPoly::zero();
        p.add_term(t, c);
        p
    }

    pub fn monomial(t: MagmaTerm) -> Self {
        Self::term(t, Rational::one())
    }

    pub fn var(i: u32) -> Self {
        Self::monomial(MagmaTerm::leaf(i))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MagmaTerm, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, t: &MagmaTerm) -> Rational {
        self.terms.get(t).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, t: MagmaTerm, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in other.terms() {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in other.terms() {
            out.add_term(t.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return MagmaPoly::zero();
        }
        MagmaPoly {
            terms: self
                .terms
                .iter()
                .map(|(t, k)| (t.clone(), k * c))
                .collect(),
        }
    }

    /// Bilinear extension of a magma operation to polynomials.
    pub fn apply(op: MagmaOp, a: &Self, b: &Self) -> Self {
        let mut out = MagmaPoly::zero();
        for (t1, c1) in a.terms() {
            for (t2, c2) in b.terms() {
                out.add_term(MagmaTerm::node(op, t1.clone(), t2.clone()), c1 * c2);
            }
        }
        out
    }

    /// Linear extension of the evaluation map.
    pub fn eval(&self) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (t, c) in self.terms() {
            out = out.add(&t.eval().scale(c));
        }
        out
    }
}

impl fmt::Display for MagmaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (t, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if !abs.is_one() {
                if abs.is_integer() {
                    write!(f, "{}*", abs.numer())?;
                } else {
                    write!(f, "{}/{}*", abs.numer(), abs.denom())?;
                }
                match t {
                    MagmaTerm::Leaf(_) => write!(f, "{}", t)?,
                    _ => write!(f, "({})", t)?,
                }
            } else {
                write!(f, "{}", t)?;
            }
        }
        Ok(())
    }
}

/// Not-expressible error for a monomial failing the `>`-membership criterion.
pub(crate) fn succ_membership_error(m: &PermMonomial) -> Error {
    Error::NotSuccExpressible {
        monomial: m.to_string(),
        weight: m.weight(),
        last_der: m.last().der(),
    }
}
