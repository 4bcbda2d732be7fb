//! Smith normal form over the integers.
//!
//! Two engines sit behind [`smith_normal_form`]:
//!
//! * a dense engine that tracks the unimodular transforms `U`, `V` with
//!   `U*A*V = S`, pivoting on the nonzero entry of minimal absolute value
//!   (ties: smallest row, then column);
//! * a sparse engine for the diagonal alone, which prefers unit pivots with
//!   the lowest Markowitz fill cost and falls back to the minimal-absolute-
//!   value rule when no unit entry remains. It runs over i128 with checked
//!   arithmetic and reruns over arbitrary-precision integers on overflow.
//!
//! Both produce the same canonical diagonal: non-negative, each entry
//! dividing the next.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntegerMatrix;

#[derive(Clone, Debug)]
pub struct SmithNormalForm {
    /// The nonzero diagonal entries, in divisibility order.
    pub diagonal: Vec<BigInt>,
    pub u: Option<IntegerMatrix>,
    pub v: Option<IntegerMatrix>,
    rows: usize,
    cols: usize,
}

impl SmithNormalForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Diagonal entries greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| **d > BigInt::one()).cloned().collect()
    }

    /// The diagonal matrix `S` with the full original shape.
    pub fn matrix(&self) -> IntegerMatrix {
        let mut s = IntegerMatrix::zero(self.rows, self.cols);
        for (i, d) in self.diagonal.iter().enumerate() {
            s.set(i, i, d.clone());
        }
        s
    }

    pub fn is_divisibility_chain(&self) -> bool {
        self.diagonal.iter().all(|d| d.is_positive())
            && self
                .diagonal
                .windows(2)
                .all(|w| (&w[1] % &w[0]).is_zero())
    }
}

/// Compute the Smith normal form. With `with_transforms` the result carries
/// unimodular `U`, `V` satisfying `U*A*V = S` (dense computation; intended
/// for small matrices). Without, only the diagonal is computed, sparsely.
pub fn smith_normal_form(a: &IntegerMatrix, with_transforms: bool) -> SmithNormalForm {
    if with_transforms {
        dense_snf(a)
    } else {
        SmithNormalForm {
            diagonal: sparse_diagonal(a),
            u: None,
            v: None,
            rows: a.rows(),
            cols: a.cols(),
        }
    }
}

// ---------------------------------------------------------------------------
// Dense engine with transforms.
// ---------------------------------------------------------------------------

struct Dense {
    b: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
}

impl Dense {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.b.swap(i, j);
            self.u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in &mut self.b {
                row.swap(i, j);
            }
            for row in &mut self.v {
                row.swap(i, j);
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.b[i] {
            if !x.is_zero() {
                *x = -&*x;
            }
        }
        for x in &mut self.u[i] {
            if !x.is_zero() {
                *x = -&*x;
            }
        }
    }

    /// row_dst -= q * row_src
    fn row_sub_mul(&mut self, dst: usize, q: &BigInt, src: usize) {
        for j in 0..self.cols {
            if !self.b[src][j].is_zero() {
                let delta = q * &self.b[src][j];
                self.b[dst][j] -= delta;
            }
        }
        for j in 0..self.rows {
            if !self.u[src][j].is_zero() {
                let delta = q * &self.u[src][j];
                self.u[dst][j] -= delta;
            }
        }
    }

    /// col_dst -= q * col_src
    fn col_sub_mul(&mut self, dst: usize, q: &BigInt, src: usize) {
        for i in 0..self.rows {
            if !self.b[i][src].is_zero() {
                let delta = q * &self.b[i][src];
                self.b[i][dst] -= delta;
            }
        }
        for i in 0..self.cols {
            if !self.v[i][src].is_zero() {
                let delta = q * &self.v[i][src];
                self.v[i][dst] -= delta;
            }
        }
    }
}

fn dense_snf(a: &IntegerMatrix) -> SmithNormalForm {
    let rows = a.rows();
    let cols = a.cols();
    let mut w = Dense {
        b: a.to_dense(),
        u: IntegerMatrix::identity(rows).to_dense(),
        v: IntegerMatrix::identity(cols).to_dense(),
        rows,
        cols,
    };

    let steps = rows.min(cols);
    let mut diag = Vec::new();
    for k in 0..steps {
        'stage: loop {
            // Pivot: minimal |value| in the active submatrix, ties by
            // smallest row then column.
            let mut pivot: Option<(BigInt, usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if w.b[i][j].is_zero() {
                        continue;
                    }
                    let abs = w.b[i][j].abs();
                    let better = match &pivot {
                        None => true,
                        Some((best, _, _)) => abs < *best,
                    };
                    if better {
                        pivot = Some((abs, i, j));
                    }
                }
            }
            let Some((_, pi, pj)) = pivot else {
                break 'stage;
            };
            w.swap_rows(k, pi);
            w.swap_cols(k, pj);
            if w.b[k][k].is_negative() {
                w.negate_row(k);
            }
            let p = w.b[k][k].clone();

            // Clear the column below the pivot.
            let mut dirty = false;
            for i in (k + 1)..rows {
                if w.b[i][k].is_zero() {
                    continue;
                }
                let q = div_nearest_big(&w.b[i][k], &p);
                if !q.is_zero() {
                    w.row_sub_mul(i, &q, k);
                }
                if !w.b[i][k].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'stage;
            }

            // Clear the row to the right of the pivot.
            let mut dirty = false;
            for j in (k + 1)..cols {
                if w.b[k][j].is_zero() {
                    continue;
                }
                let q = div_nearest_big(&w.b[k][j], &p);
                if !q.is_zero() {
                    w.col_sub_mul(j, &q, k);
                }
                if !w.b[k][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'stage;
            }

            // The pivot must divide everything that remains; if not, fold the
            // offending row into the pivot row and reduce again.
            let offender = (k + 1..rows)
                .flat_map(|i| (k + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !w.b[i][j].is_zero() && !(&w.b[i][j] % &p).is_zero());
            if let Some((i, _)) = offender {
                let minus_one = -BigInt::one();
                w.row_sub_mul(k, &minus_one, i); // row_k += row_i
                continue 'stage;
            }
            break 'stage;
        }
        if w.b[k][k].is_zero() {
            break;
        }
        diag.push(w.b[k][k].clone());
    }

    let u = IntegerMatrix::from_triples(
        rows,
        rows,
        w.u.iter()
            .enumerate()
            .flat_map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(move |(j, v)| (i, j, v.clone()))
            }),
    )
    .expect("indices in range");
    let v = IntegerMatrix::from_triples(
        cols,
        cols,
        w.v.iter()
            .enumerate()
            .flat_map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(move |(j, v)| (i, j, v.clone()))
            }),
    )
    .expect("indices in range");

    SmithNormalForm { diagonal: diag, u: Some(u), v: Some(v), rows, cols }
}

/// Nearest-integer quotient for positive divisor.
fn div_nearest_big(a: &BigInt, p: &BigInt) -> BigInt {
    debug_assert!(p.is_positive());
    let two_a: BigInt = a * 2i32;
    let two_p: BigInt = p * 2i32;
    (two_a + p).div_floor(&two_p)
}

// ---------------------------------------------------------------------------
// Sparse diagonal-only engine.
// ---------------------------------------------------------------------------

trait Scalar: Clone + Eq + Ord + std::fmt::Debug {
    fn is_zero_val(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn checked_sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    /// `-(q*b)`.
    fn checked_neg_mul(q: &Self, b: &Self) -> Option<Self>;
    /// Nearest-integer quotient by a nonzero divisor.
    fn div_nearest(&self, p: &Self) -> Option<Self>;
    fn abs_key(&self) -> Self;
    fn to_bigint(&self) -> BigInt;
}

impl Scalar for i128 {
    fn is_zero_val(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn checked_sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn checked_neg_mul(q: &Self, b: &Self) -> Option<Self> {
        q.checked_mul(*b)?.checked_neg()
    }
    fn div_nearest(&self, p: &Self) -> Option<Self> {
        let p_abs = p.checked_abs()?;
        let two_a = self.checked_mul(2)?;
        let q = two_a.checked_add(p_abs)?.div_euclid(p_abs.checked_mul(2)?);
        if p.is_negative() {
            q.checked_neg()
        } else {
            Some(q)
        }
    }
    fn abs_key(&self) -> Self {
        self.saturating_abs()
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn is_zero_val(&self) -> bool {
        self.is_zero()
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn checked_sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn checked_neg_mul(q: &Self, b: &Self) -> Option<Self> {
        Some(-(q * b))
    }
    fn div_nearest(&self, p: &Self) -> Option<Self> {
        let p_abs = p.abs();
        let two_self: BigInt = self * 2i32;
        let two_p: BigInt = &p_abs * 2i32;
        let q = (two_self + &p_abs).div_floor(&two_p);
        if p.is_negative() {
            Some(-q)
        } else {
            Some(q)
        }
    }
    fn abs_key(&self) -> Self {
        self.abs()
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

struct Sparse<T> {
    rows: Vec<BTreeMap<usize, T>>,
    col_rows: Vec<BTreeSet<usize>>,
    row_active: Vec<bool>,
    col_active: Vec<bool>,
    /// Candidate unit pivots: (fill cost, row, col), revalidated on pop.
    unit_heap: BinaryHeap<Reverse<(u64, usize, usize)>>,
}

struct Overflow;

impl<T: Scalar> Sparse<T> {
    fn new(rows: usize, cols: usize) -> Self {
        Sparse {
            rows: vec![BTreeMap::new(); rows],
            col_rows: vec![BTreeSet::new(); cols],
            row_active: vec![true; rows],
            col_active: vec![true; cols],
            unit_heap: BinaryHeap::new(),
        }
    }

    fn insert(&mut self, r: usize, c: usize, v: T) {
        if v.is_zero_val() {
            return;
        }
        if v.is_unit() {
            self.push_unit(r, c);
        }
        self.rows[r].insert(c, v);
        self.col_rows[c].insert(r);
    }

    fn cost(&self, r: usize, c: usize) -> u64 {
        let rn = self.rows[r].len().saturating_sub(1) as u64;
        let cn = self.col_rows[c].len().saturating_sub(1) as u64;
        rn * cn
    }

    fn push_unit(&mut self, r: usize, c: usize) {
        // Cost recorded now, checked again at pop.
        let rn = self.rows[r].len() as u64;
        let cn = self.col_rows[c].len() as u64;
        self.unit_heap.push(Reverse((rn * cn, r, c)));
    }

    fn write(&mut self, r: usize, c: usize, v: Option<T>) -> Result<(), Overflow> {
        let v = v.ok_or(Overflow)?;
        if v.is_zero_val() {
            if self.rows[r].remove(&c).is_some() {
                self.col_rows[c].remove(&r);
            }
        } else {
            if v.is_unit() {
                self.push_unit(r, c);
            }
            if self.rows[r].insert(c, v).is_none() {
                self.col_rows[c].insert(r);
            }
        }
        Ok(())
    }

    /// row_dst -= q * row_src
    fn row_sub_mul(&mut self, dst: usize, q: &T, src: usize) -> Result<(), Overflow> {
        let src_entries: Vec<(usize, T)> =
            self.rows[src].iter().map(|(&c, v)| (c, v.clone())).collect();
        for (c, v) in src_entries {
            let next = match self.rows[dst].get(&c) {
                Some(x) => x.checked_sub_mul(q, &v),
                None => T::checked_neg_mul(q, &v),
            };
            self.write(dst, c, next)?;
        }
        Ok(())
    }

    /// col_dst -= q * col_src
    fn col_sub_mul(&mut self, dst: usize, q: &T, src: usize) -> Result<(), Overflow> {
        let src_rows: Vec<usize> = self.col_rows[src].iter().copied().collect();
        for r in src_rows {
            let v = self.rows[r].get(&src).cloned().expect("occupancy in sync");
            let next = match self.rows[r].get(&dst) {
                Some(x) => x.checked_sub_mul(q, &v),
                None => T::checked_neg_mul(q, &v),
            };
            self.write(r, dst, next)?;
        }
        Ok(())
    }

    /// Pop a live unit pivot, if any.
    fn pop_unit(&mut self) -> Option<(usize, usize)> {
        while let Some(Reverse((cost, r, c))) = self.unit_heap.pop() {
            if !self.row_active[r] || !self.col_active[c] {
                continue;
            }
            let Some(v) = self.rows[r].get(&c) else { continue };
            if !v.is_unit() {
                continue;
            }
            let current = self.cost(r, c);
            if current != cost {
                self.unit_heap.push(Reverse((current, r, c)));
                continue;
            }
            return Some((r, c));
        }
        None
    }

    /// Full scan for the entry of minimal absolute value (ties: row, col).
    fn scan_min_abs(&self) -> Option<(usize, usize)> {
        let mut best: Option<(T, usize, usize)> = None;
        for (r, row) in self.rows.iter().enumerate() {
            if !self.row_active[r] {
                continue;
            }
            for (&c, v) in row {
                let key = v.abs_key();
                let better = match &best {
                    None => true,
                    Some((b, _, _)) => key < *b,
                };
                if better {
                    best = Some((key, r, c));
                }
            }
        }
        best.map(|(_, r, c)| (r, c))
    }

    fn run(&mut self) -> Result<Vec<BigInt>, Overflow> {
        let mut diag: Vec<BigInt> = Vec::new();
        while let Some((mut r, mut c)) = self.pop_unit().or_else(|| self.scan_min_abs()) {
            'reduce: loop {
                let p = self.rows[r].get(&c).expect("pivot present").clone();
                // Clear the pivot column.
                let others: Vec<usize> =
                    self.col_rows[c].iter().copied().filter(|&r2| r2 != r).collect();
                for r2 in others {
                    let v = self.rows[r2].get(&c).expect("occupancy in sync").clone();
                    let q = v.div_nearest(&p).ok_or(Overflow)?;
                    if !q.is_zero_val() {
                        self.row_sub_mul(r2, &q, r)?;
                    }
                }
                if self.col_rows[c].len() > 1 {
                    // Remainders survive; the smallest entry in this column
                    // becomes the new pivot.
                    let r_new = self.min_abs_in_col(c);
                    r = r_new;
                    continue 'reduce;
                }
                // Clear the pivot row.
                let row_others: Vec<usize> =
                    self.rows[r].keys().copied().filter(|&c2| c2 != c).collect();
                for c2 in row_others {
                    let v = self.rows[r].get(&c2).expect("key just read").clone();
                    let q = v.div_nearest(&p).ok_or(Overflow)?;
                    if !q.is_zero_val() {
                        self.col_sub_mul(c2, &q, c)?;
                    }
                }
                if self.rows[r].len() > 1 {
                    let c_new = self.min_abs_in_row(r);
                    c = c_new;
                    continue 'reduce;
                }
                break 'reduce;
            }
            let p = self.rows[r].get(&c).expect("pivot survived").clone();
            diag.push(p.to_bigint().abs());
            self.rows[r].clear();
            self.col_rows[c].clear();
            self.row_active[r] = false;
            self.col_active[c] = false;
        }
        Ok(divisibility_chain(diag))
    }

    fn min_abs_in_col(&self, c: usize) -> usize {
        self.col_rows[c]
            .iter()
            .copied()
            .min_by_key(|&r| (self.rows[r].get(&c).expect("occupancy").abs_key(), r))
            .expect("column non-empty")
    }

    fn min_abs_in_row(&self, r: usize) -> usize {
        self.rows[r]
            .iter()
            .min_by_key(|&(&c, v)| (v.abs_key(), c))
            .map(|(&c, _)| c)
            .expect("row non-empty")
    }
}

fn sparse_diagonal(a: &IntegerMatrix) -> Vec<BigInt> {
    // Fast path over i128 when every entry fits; otherwise, or on overflow,
    // arbitrary precision.
    let mut fits = true;
    let mut small: Vec<(usize, usize, i128)> = Vec::with_capacity(a.nnz());
    for (i, j, v) in a.iter() {
        match i128::try_from(v.clone()) {
            Ok(x) => small.push((i, j, x)),
            Err(_) => {
                fits = false;
                break;
            }
        }
    }
    if fits {
        let mut w: Sparse<i128> = Sparse::new(a.rows(), a.cols());
        for (i, j, v) in small {
            w.insert(i, j, v);
        }
        if let Ok(diag) = w.run() {
            return diag;
        }
    }
    let mut w: Sparse<BigInt> = Sparse::new(a.rows(), a.cols());
    for (i, j, v) in a.iter() {
        w.insert(i, j, v.clone());
    }
    w.run().unwrap_or_else(|_| unreachable!("BigInt arithmetic cannot overflow"))
}

/// Fold a positive diagonal into the canonical divisibility chain.
fn divisibility_chain(mut d: Vec<BigInt>) -> Vec<BigInt> {
    loop {
        let mut changed = false;
        for i in 0..d.len() {
            for j in (i + 1)..d.len() {
                if (&d[j] % &d[i]).is_zero() {
                    continue;
                }
                let g = d[i].gcd(&d[j]);
                let l = (&d[i] / &g) * &d[j];
                d[i] = g;
                d[j] = l;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    debug_assert!(d.windows(2).all(|w| w[0] <= w[1]));
    d
}
