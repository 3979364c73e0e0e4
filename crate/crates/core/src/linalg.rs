//! Exact rational linear algebra over monomial-indexed coordinates.
//!
//! Rank and span membership run on integer rows (denominators cleared,
//! gcd-reduced) through fraction-free elimination with a deterministic
//! first-nonzero pivot rule.  Arithmetic is attempted in `i128` and the
//! computation restarts on arbitrary-precision integers if any product
//! overflows, so results are always exact.

use crate::{Error, Rational, Result};
use num::bigint::BigInt;
use num::traits::{CheckedMul, CheckedSub};
use num::{Integer, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Stable bijection between canonical basis objects and column indices.
#[derive(Clone, Debug)]
pub struct MonomialIndexer<T: Ord> {
    items: Vec<T>,
    index: BTreeMap<T, usize>,
}

impl<T: Ord + Clone + fmt::Display> MonomialIndexer<T> {
    /// Builds the indexer; items are sorted into canonical order and
    /// deduplicated.
    pub fn new(mut items: Vec<T>) -> Self {
        items.sort();
        items.dedup();
        let index = items
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        MonomialIndexer { items, index }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[T] {
        &self.items
    }

    pub fn item(&self, i: usize) -> &T {
        &self.items[i]
    }

    pub fn position(&self, t: &T) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Coordinate vector of a term list; unknown terms are an error.
    pub fn coordinates<'a, I>(&self, terms: I) -> Result<Vec<Rational>>
    where
        I: Iterator<Item = (&'a T, &'a Rational)>,
        T: 'a,
    {
        let mut v = vec![Rational::zero(); self.items.len()];
        for (t, c) in terms {
            let i = self
                .position(t)
                .ok_or_else(|| Error::UnknownBasisElement { term: t.to_string() })?;
            v[i] += c;
        }
        Ok(v)
    }
}

/// A rectangular matrix of exact rationals, stored as sparse rows.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RatMatrix {
    cols: usize,
    rows: Vec<Vec<(usize, Rational)>>,
}

impl RatMatrix {
    pub fn new(cols: usize) -> Self {
        RatMatrix { cols, rows: Vec::new() }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    /// Appends a dense row.
    pub fn push_row(&mut self, row: &[Rational]) {
        assert_eq!(row.len(), self.cols, "row length must match column count");
        self.rows.push(
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        );
    }

    /// Appends a sparse row given as (column, value) pairs.
    pub fn push_sparse_row(&mut self, mut row: Vec<(usize, Rational)>) {
        row.retain(|(_, c)| !c.is_zero());
        row.sort_by_key(|(i, _)| *i);
        assert!(row.iter().all(|(i, _)| *i < self.cols));
        assert!(row.windows(2).all(|w| w[0].0 != w[1].0));
        self.rows.push(row);
    }

    pub fn sparse_rows(&self) -> &[Vec<(usize, Rational)>] {
        &self.rows
    }

    pub fn row_dense(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.cols];
        for (j, c) in &self.rows[i] {
            v[*j] = c.clone();
        }
        v
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut out = RatMatrix::new(self.rows.len());
        let mut cols: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.cols];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, c) in row {
                cols[*j].push((i, c.clone()));
            }
        }
        out.rows = cols;
        out
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        rank(self)
    }
}

/// Clears denominators and divides out the content of one rational row.
fn integer_row(row: &[(usize, Rational)]) -> Vec<(usize, BigInt)> {
    if row.is_empty() {
        return Vec::new();
    }
    let mut lcm = BigInt::one();
    for (_, c) in row {
        lcm = lcm.lcm(c.denom());
    }
    let mut out: Vec<(usize, BigInt)> = row
        .iter()
        .map(|(i, c)| (*i, c.numer() * (&lcm / c.denom())))
        .collect();
    let mut g = BigInt::zero();
    for (_, v) in &out {
        g = g.gcd(v);
    }
    if !g.is_one() {
        for (_, v) in &mut out {
            *v = &*v / &g;
        }
    }
    if out[0].1.is_negative() {
        for (_, v) in &mut out {
            *v = -&*v;
        }
    }
    out
}

/// Integer arithmetic usable by the elimination: exact, with explicit
/// overflow signalling.
trait ElimInt: Clone + Ord + Integer + Signed {
    fn cmul(&self, other: &Self) -> Option<Self>;
    fn csub(&self, other: &Self) -> Option<Self>;
    fn from_bigint(b: &BigInt) -> Option<Self>;
    fn to_bigint(&self) -> BigInt;
}

impl ElimInt for i128 {
    fn cmul(&self, other: &Self) -> Option<Self> {
        CheckedMul::checked_mul(self, other)
    }
    fn csub(&self, other: &Self) -> Option<Self> {
        CheckedSub::checked_sub(self, other)
    }
    fn from_bigint(b: &BigInt) -> Option<Self> {
        i128::try_from(b).ok()
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ElimInt for BigInt {
    fn cmul(&self, other: &Self) -> Option<Self> {
        CheckedMul::checked_mul(self, other)
    }
    fn csub(&self, other: &Self) -> Option<Self> {
        CheckedSub::checked_sub(self, other)
    }
    fn from_bigint(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// pv * row - v * b, merged sparsely; `None` on overflow.
fn combine<T: ElimInt>(
    pv: &T,
    row: &[(usize, T)],
    v: &T,
    b: &[(usize, T)],
) -> Option<Vec<(usize, T)>> {
    let mut out = Vec::with_capacity(row.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < b.len() {
        let ci = row.get(i).map(|e| e.0);
        let cj = b.get(j).map(|e| e.0);
        match (ci, cj) {
            (Some(a), Some(c)) if a == c => {
                let val = pv.cmul(&row[i].1)?.csub(&v.cmul(&b[j].1)?)?;
                if !val.is_zero() {
                    out.push((a, val));
                }
                i += 1;
                j += 1;
            }
            (Some(a), Some(c)) if a < c => {
                out.push((a, pv.cmul(&row[i].1)?));
                i += 1;
            }
            (Some(_), Some(c)) => {
                out.push((c, T::zero().csub(&v.cmul(&b[j].1)?)?));
                j += 1;
            }
            (Some(a), None) => {
                out.push((a, pv.cmul(&row[i].1)?));
                i += 1;
            }
            (None, Some(c)) => {
                out.push((c, T::zero().csub(&v.cmul(&b[j].1)?)?));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    Some(out)
}

fn normalize_row<T: ElimInt>(row: &mut [(usize, T)]) {
    if row.is_empty() {
        return;
    }
    let mut g = T::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = v.div_floor(&g);
        }
    }
    if row[0].1.is_negative() {
        for (_, v) in row.iter_mut() {
            *v = -v.clone();
        }
    }
}

/// Incremental integer echelon form.  Pivots are chosen as the first nonzero
/// column of each incoming row (after reduction), columns at or beyond
/// `real_cols` never pivot.
struct Echelon<T> {
    real_cols: usize,
    basis: Vec<(usize, Vec<(usize, T)>)>,
}

impl<T: ElimInt> Echelon<T> {
    fn new(real_cols: usize) -> Self {
        Echelon { real_cols, basis: Vec::new() }
    }

    /// Reduces `row` against the basis; `None` signals overflow.
    fn reduce(&self, mut row: Vec<(usize, T)>) -> Option<Vec<(usize, T)>> {
        loop {
            let Some((col, val)) = row.first().map(|(c, v)| (*c, v.clone())) else {
                return Some(row);
            };
            if col >= self.real_cols {
                return Some(row);
            }
            match self.basis.binary_search_by_key(&col, |(p, _)| *p) {
                Ok(k) => {
                    let pv = self.basis[k].1[0].1.clone();
                    row = combine(&pv, &row, &val, &self.basis[k].1)?;
                    normalize_row(&mut row);
                }
                Err(_) => return Some(row),
            }
        }
    }

    /// Reduces and inserts; returns whether the rank grew.  `None` on
    /// overflow.
    fn insert(&mut self, row: Vec<(usize, T)>) -> Option<bool> {
        let mut row = self.reduce(row)?;
        match row.first() {
            Some(&(col, _)) if col < self.real_cols => {
                normalize_row(&mut row);
                let k = self
                    .basis
                    .binary_search_by_key(&col, |(p, _)| *p)
                    .unwrap_err();
                self.basis.insert(k, (col, row));
                Some(true)
            }
            _ => Some(false),
        }
    }

    fn rank(&self) -> usize {
        self.basis.len()
    }
}

fn convert_rows<T: ElimInt>(rows: &[Vec<(usize, BigInt)>]) -> Option<Vec<Vec<(usize, T)>>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|(i, v)| T::from_bigint(v).map(|t| (*i, t)))
                .collect()
        })
        .collect()
}

fn try_rank<T: ElimInt>(rows: &[Vec<(usize, BigInt)>], cols: usize) -> Option<usize> {
    let rows: Vec<Vec<(usize, T)>> = convert_rows(rows)?;
    let mut ech = Echelon::<T>::new(cols);
    for row in rows {
        ech.insert(row)?;
    }
    Some(ech.rank())
}

/// Exact rank by fraction-free elimination.
pub fn rank(m: &RatMatrix) -> usize {
    let int_rows: Vec<Vec<(usize, BigInt)>> =
        m.sparse_rows().iter().map(|r| integer_row(r)).collect();
    if let Some(r) = try_rank::<i128>(&int_rows, m.ncols()) {
        return r;
    }
    try_rank::<BigInt>(&int_rows, m.ncols()).expect("BigInt elimination cannot overflow")
}

fn try_solve<T: ElimInt>(
    rows: &[Vec<(usize, BigInt)>],
    target: &[(usize, BigInt)],
    cols: usize,
) -> Option<Option<Vec<Rational>>> {
    // augmented columns cols..cols+n record the provenance of each row;
    // column cols+n tracks the scale applied to the target
    let n = rows.len();
    let mut ech = Echelon::<T>::new(cols);
    for (i, row) in rows.iter().enumerate() {
        let mut aug: Vec<(usize, T)> = row
            .iter()
            .map(|(c, v)| T::from_bigint(v).map(|t| (*c, t)))
            .collect::<Option<_>>()?;
        aug.push((cols + i, T::one()));
        ech.insert(aug)?;
    }
    let mut t_row: Vec<(usize, T)> = target
        .iter()
        .map(|(c, v)| T::from_bigint(v).map(|t| (*c, t)))
        .collect::<Option<_>>()?;
    t_row.push((cols + n, T::one()));
    let reduced = ech.reduce(t_row)?;
    match reduced.first() {
        Some(&(col, _)) if col < cols => Some(None),
        _ => {
            // 0 = sum aug_i * row_i + s * target
            let scale = reduced
                .iter()
                .find(|(c, _)| *c == cols + n)
                .map(|(_, v)| v.to_bigint())
                .expect("target scale column cannot vanish");
            let mut coeffs = vec![Rational::zero(); n];
            for (c, v) in &reduced {
                if *c >= cols && *c < cols + n {
                    coeffs[*c - cols] = -Rational::new(v.to_bigint(), scale.clone());
                }
            }
            Some(Some(coeffs))
        }
    }
}

/// Exact coefficients expressing `target` in the row span of `rows`, or
/// `None` when the target is provably outside the span.
pub fn solve_in_span(rows: &RatMatrix, target: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if target.len() != rows.ncols() {
        return Err(Error::DimensionMismatch {
            cols: rows.ncols(),
            len: target.len(),
        });
    }
    let int_rows: Vec<Vec<(usize, BigInt)>> =
        rows.sparse_rows().iter().map(|r| integer_row(r)).collect();

    // clear the target's denominators, remembering the factor
    let sparse_t: Vec<(usize, Rational)> = target
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect();
    let mut lcm = BigInt::one();
    for (_, c) in &sparse_t {
        lcm = lcm.lcm(c.denom());
    }
    let int_target: Vec<(usize, BigInt)> = sparse_t
        .iter()
        .map(|(i, c)| (*i, c.numer() * (&lcm / c.denom())))
        .collect();

    let sol = match try_solve::<i128>(&int_rows, &int_target, rows.ncols()) {
        Some(s) => s,
        None => try_solve::<BigInt>(&int_rows, &int_target, rows.ncols())
            .expect("BigInt elimination cannot overflow"),
    };
    // coefficients were computed for lcm * target; rescale, and also undo the
    // content removed from each row by integer_row
    Ok(sol.map(|coeffs| {
        coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if c.is_zero() {
                    return Rational::zero();
                }
                // factor between the original rational row and its integer form
                let orig = &rows.sparse_rows()[i];
                let int = &int_rows[i];
                let ratio = Rational::new(int[0].1.clone(), BigInt::one())
                    / orig[0].1.clone();
                c * ratio / Rational::new(lcm.clone(), BigInt::one())
            })
            .collect()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::rat;

    fn dense(m: &mut RatMatrix, rows: &[Vec<i64>]) {
        for r in rows {
            let rr: Vec<Rational> = r.iter().map(|&x| rat(x, 1)).collect();
            m.push_row(&rr);
        }
    }

    #[test]
    fn rank_identity_and_zero() {
        let mut m = RatMatrix::new(3);
        dense(&mut m, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(m.rank(), 3);

        let mut z = RatMatrix::new(4);
        dense(&mut z, &[vec![0, 0, 0, 0], vec![0, 0, 0, 0]]);
        assert_eq!(z.rank(), 0);
    }

    #[test]
    fn rank_with_dependencies() {
        let mut m = RatMatrix::new(3);
        dense(&mut m, &[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rank_equals_transpose_rank() {
        let mut m = RatMatrix::new(4);
        dense(
            &mut m,
            &[vec![1, 2, 0, -1], vec![3, 0, 1, 2], vec![4, 2, 1, 1], vec![0, 0, 0, 0]],
        );
        assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn solve_first_row() {
        let mut m = RatMatrix::new(3);
        dense(&mut m, &[vec![1, 2, 3], vec![0, 1, 1]]);
        let t = vec![rat(1, 1), rat(2, 1), rat(3, 1)];
        let c = solve_in_span(&m, &t).unwrap().unwrap();
        assert_eq!(c, vec![rat(1, 1), rat(0, 1)]);
    }

    #[test]
    fn solve_combination_with_fractions() {
        let mut m = RatMatrix::new(2);
        m.push_row(&[rat(1, 2), rat(1, 3)]);
        m.push_row(&[rat(0, 1), rat(1, 1)]);
        // target = 3*row0 + 2*row1 = (3/2, 3)
        let t = vec![rat(3, 2), rat(3, 1)];
        let c = solve_in_span(&m, &t).unwrap().unwrap();
        assert_eq!(c, vec![rat(3, 1), rat(2, 1)]);
    }

    #[test]
    fn solve_outside_span() {
        let mut m = RatMatrix::new(3);
        dense(&mut m, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let t = vec![rat(0, 1), rat(0, 1), rat(1, 1)];
        assert_eq!(solve_in_span(&m, &t).unwrap(), None);
    }

    #[test]
    fn solve_dimension_mismatch() {
        let m = RatMatrix::new(3);
        let t = vec![rat(1, 1)];
        assert!(matches!(
            solve_in_span(&m, &t),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn indexer_coordinates() {
        let ix = MonomialIndexer::new(vec!["b".to_string(), "a".to_string()]);
        assert_eq!(ix.len(), 2);
        assert_eq!(ix.position(&"a".to_string()), Some(0));
        let terms = [("b".to_string(), rat(2, 1)), ("a".to_string(), rat(-3, 1))];
        let v = ix
            .coordinates(terms.iter().map(|(t, c)| (t, c)))
            .unwrap();
        assert_eq!(v, vec![rat(-3, 1), rat(2, 1)]);
        assert!(ix
            .coordinates([(&"z".to_string(), &rat(1, 1))].into_iter())
            .is_err());
    }
}
