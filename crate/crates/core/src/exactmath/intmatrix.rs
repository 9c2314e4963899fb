use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Sparse integer matrix; zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::new(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, delta: i64) {
        let v = self.get(r, c) + delta;
        self.set(r, c, v);
    }

    /// Appends a row given as sparse `(column, value)` pairs; repeated
    /// columns accumulate.
    pub fn push_row(&mut self, row: &[(usize, i64)]) {
        let r = self.rows;
        self.rows += 1;
        for &(c, v) in row {
            self.add_to(r, c, v);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }
}

/// Invariant factors `d1 | d2 | ... | d_rank` (all positive) of a matrix.
///
/// Read as a relation matrix (rows are relations among `cols` generators),
/// the cokernel is `⊕ Z/d_i ⊕ Z^(cols - rank)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    pub cols: usize,
}

impl SmithForm {
    /// Invariant factors different from 1.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn free_rank(&self) -> usize {
        self.cols - self.rank
    }

    /// Order of the torsion part of the cokernel.
    pub fn torsion_order(&self) -> BigInt {
        self.diagonal.iter().product()
    }
}

struct Elimination {
    rows: Vec<BTreeMap<usize, BigInt>>,
    col_index: Vec<BTreeSet<usize>>,
}

impl Elimination {
    fn new(m: &IntegerMatrix) -> Self {
        let mut rows = vec![BTreeMap::new(); m.rows];
        let mut col_index = vec![BTreeSet::new(); m.cols];
        for (r, c, v) in m.entries() {
            rows[r].insert(c, v.clone());
            col_index[c].insert(r);
        }
        Elimination { rows, col_index }
    }

    fn set(&mut self, r: usize, c: usize, v: BigInt) {
        if v.is_zero() {
            self.rows[r].remove(&c);
            self.col_index[c].remove(&r);
        } else {
            self.rows[r].insert(c, v);
            self.col_index[c].insert(r);
        }
    }

    /// Entry of least absolute value; ties broken by shorter row, then
    /// position.
    fn pick_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize, usize)> = None;
        for (r, row) in self.rows.iter().enumerate() {
            for (&c, v) in row {
                let key = (v.abs(), row.len());
                let better = match &best {
                    None => true,
                    Some((a, len, _, _)) => (&key.0, key.1) < (a, *len),
                };
                if better {
                    let unit = key.0.is_one() && key.1 == 1;
                    best = Some((key.0, key.1, r, c));
                    if unit {
                        return Some((r, c));
                    }
                }
            }
        }
        best.map(|(_, _, r, c)| (r, c))
    }

    /// `row[target] -= q * row[source]`.
    fn row_axpy(&mut self, target: usize, source: usize, q: &BigInt) {
        let src: Vec<(usize, BigInt)> = self.rows[source].iter().map(|(&c, v)| (c, v.clone())).collect();
        for (c, v) in src {
            let cur = self.rows[target].get(&c).cloned().unwrap_or_else(BigInt::zero);
            self.set(target, c, cur - q * v);
        }
    }

    /// Quotient rounding to nearest, so the remainder is at most |p|/2.
    fn round_div(a: &BigInt, p: &BigInt) -> BigInt {
        let (q, r) = a.div_mod_floor(p);
        // r has the sign of p, so one more step of p always shrinks it
        if (BigInt::from(2) * r.abs()) > p.abs() {
            q + 1
        } else {
            q
        }
    }

    fn run(mut self) -> Vec<BigInt> {
        let mut diag = Vec::new();
        while let Some((mut r, mut c)) = self.pick_pivot() {
            loop {
                let p = self.rows[r][&c].clone();
                let others: Vec<usize> = self.col_index[c].iter().copied().filter(|&i| i != r).collect();
                let mut smaller: Option<(BigInt, usize)> = None;
                for i in others {
                    let q = Self::round_div(&self.rows[i][&c], &p);
                    self.row_axpy(i, r, &q);
                    if let Some(v) = self.rows[i].get(&c) {
                        if smaller.as_ref().is_none_or(|(a, _)| v.abs() < *a) {
                            smaller = Some((v.abs(), i));
                        }
                    }
                }
                if let Some((_, i)) = smaller {
                    r = i;
                    continue;
                }
                // column c now holds only the pivot, so column operations
                // touch row r alone
                let row_cols: Vec<usize> = self.rows[r].keys().copied().filter(|&j| j != c).collect();
                let mut smaller_col: Option<(BigInt, usize)> = None;
                for j in row_cols {
                    let v = self.rows[r][&j].clone();
                    let q = Self::round_div(&v, &p);
                    let rem = v - &q * &p;
                    if !rem.is_zero() && smaller_col.as_ref().is_none_or(|(a, _)| rem.abs() < *a) {
                        smaller_col = Some((rem.abs(), j));
                    }
                    self.set(r, j, rem);
                }
                match smaller_col {
                    Some((_, j)) => c = j,
                    None => break,
                }
            }
            let p = self.rows[r][&c].abs();
            self.set(r, c, BigInt::zero());
            diag.push(p);
        }
        diag
    }
}

/// Invariant factors by sparse elimination with least-absolute-value pivots.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let raw = Elimination::new(m).run();
    let rank = raw.len();
    let mut ones = 0usize;
    let mut rest: Vec<BigInt> = Vec::new();
    for d in raw {
        if d.is_one() {
            ones += 1;
        } else {
            rest.push(d);
        }
    }
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            let g = rest[i].gcd(&rest[j]);
            let l = rest[i].lcm(&rest[j]);
            rest[i] = g;
            rest[j] = l;
        }
    }
    let mut diagonal = vec![BigInt::one(); ones];
    diagonal.extend(rest);
    diagonal.sort();
    SmithForm { diagonal, rank, cols: m.cols }
}
