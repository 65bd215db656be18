//! Exact linear algebra over a prime field `F_p`.
//!
//! Two representations live here. [`Matrix`] is a plain dense row-major
//! matrix used for module actions and small systems. [`Echelon`] is an
//! incremental sparse row-echelon form used by the resolution engine,
//! where the free modules get large but stay very sparse.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The prime field `F_p` with `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

/// Default characteristic.
pub const DEFAULT_PRIME: u32 = 32003;

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p >= (1 << 31) || !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + (self.p - b) as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn pow(&self, a: u32, mut e: u32) -> u32 {
        let mut base = a as u64 % self.p as u64;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p as u64;
            }
            base = base * base % self.p as u64;
            e >>= 1;
        }
        acc as u32
    }

    pub fn from_i64(&self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    /// Symmetric representative in `(-p/2, p/2]`, handy for display.
    pub fn to_signed(&self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    /// Whether `u64` accumulators may skip reduction between updates.
    #[inline]
    fn lazy(&self) -> bool {
        self.p < (1 << 16)
    }
}

/// Sparse vector: strictly increasing indices, nonzero values.
pub type SparseVec = Vec<(u32, u32)>;

pub fn sparse_from_dense(v: &[u32]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| (i as u32, x))
        .collect()
}

pub fn sparse_to_dense(v: &[(u32, u32)], n: usize) -> Vec<u32> {
    let mut out = vec![0; n];
    for &(i, x) in v {
        out[i as usize] = x;
    }
    out
}

/// `a + c·b` for sparse vectors.
pub fn sparse_axpy(f: &PrimeField, a: &[(u32, u32)], c: u32, b: &[(u32, u32)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            let x = f.mul(c, b[j].1);
            if x != 0 {
                out.push((b[j].0, x));
            }
            j += 1;
        } else {
            let x = f.add(a[i].1, f.mul(c, b[j].1));
            if x != 0 {
                out.push((a[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sparse_scale(f: &PrimeField, c: u32, v: &[(u32, u32)]) -> SparseVec {
    if c == 0 {
        return Vec::new();
    }
    v.iter().map(|&(i, x)| (i, f.mul(c, x))).collect()
}

/// Accumulates a linear combination of sparse vectors in a dense buffer.
pub struct Accumulator {
    field: PrimeField,
    acc: Vec<u64>,
    touched: Vec<u32>,
    mark: Vec<bool>,
    adds: u32,
}

impl Accumulator {
    pub fn new(field: PrimeField, n: usize) -> Self {
        Accumulator {
            field,
            acc: vec![0; n],
            touched: Vec::new(),
            mark: vec![false; n],
            adds: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.acc.len()
    }

    pub fn is_empty(&self) -> bool {
        self.acc.is_empty()
    }

    #[inline]
    pub fn add(&mut self, i: u32, x: u64) {
        let iu = i as usize;
        if !self.mark[iu] {
            self.mark[iu] = true;
            self.touched.push(i);
        }
        self.acc[iu] += x;
    }

    /// Adds `c·v`.
    pub fn add_scaled(&mut self, c: u32, v: &[(u32, u32)]) {
        if c == 0 {
            return;
        }
        let p = self.field.p as u64;
        for &(i, x) in v {
            self.add(i, c as u64 * x as u64 % p);
        }
        self.adds += 1;
        if self.adds > 1 << 20 {
            self.normalize();
        }
    }

    fn normalize(&mut self) {
        let p = self.field.p as u64;
        for &i in &self.touched {
            self.acc[i as usize] %= p;
        }
        self.adds = 0;
    }

    /// Drains the accumulated vector, leaving the buffer zeroed.
    pub fn take(&mut self) -> SparseVec {
        let p = self.field.p as u64;
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            let x = (self.acc[i as usize] % p) as u32;
            if x != 0 {
                out.push((i, x));
            }
            self.acc[i as usize] = 0;
            self.mark[i as usize] = false;
        }
        self.touched.clear();
        self.adds = 0;
        out
    }
}

/// Dense row-major matrix over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from signed integer rows, reducing mod `p`.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Matrix::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has length {}, expected {}",
                    i,
                    row.len(),
                    c
                )));
            }
            for (j, &x) in row.iter().enumerate() {
                m.data[i * c + j] = field.from_i64(x);
            }
        }
        Ok(m)
    }

    /// Builds a matrix whose columns are the given sparse vectors.
    pub fn from_sparse_columns(field: PrimeField, rows: usize, cols: &[SparseVec]) -> Self {
        let mut m = Matrix::zeros(field, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for &(i, x) in col {
                m.data[i as usize * cols.len() + j] = x;
            }
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn sparse_column(&self, j: usize) -> SparseVec {
        (0..self.rows)
            .filter_map(|i| {
                let x = self.get(i, j);
                (x != 0).then_some((i as u32, x))
            })
            .collect()
    }

    pub fn sparse_columns(&self) -> Vec<SparseVec> {
        (0..self.cols).map(|j| self.sparse_column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.field.p as u64;
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (x, &b) in acc.iter_mut().zip(brow) {
                    *x = (*x + a * b as u64) % p;
                }
            }
            for (j, &x) in acc.iter().enumerate() {
                out.data[i * other.cols + j] = x as u32;
            }
        }
        Ok(out)
    }

    /// Matrix-vector product on a sparse vector.
    pub fn apply_sparse(&self, v: &[(u32, u32)]) -> SparseVec {
        let p = self.field.p as u64;
        let mut acc = vec![0u64; self.rows];
        for &(j, x) in v {
            for (i, a) in acc.iter_mut().enumerate() {
                let m = self.data[i * self.cols + j as usize] as u64;
                if m != 0 {
                    *a = (*a + m * x as u64) % p;
                }
            }
        }
        acc.iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| (i as u32, x as u32))
            .collect()
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let p = self.field.p as u64;
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                (row.iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64 % p)
                    .sum::<u64>()
                    % p) as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// Reduced row echelon form with first-nonzero pivoting.
    /// Returns the reduced matrix and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c));
            for j in c..m.cols {
                let x = m.get(r, j);
                m.set(r, j, f.mul(x, inv));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let x = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns form a basis of the right null space.
    pub fn kernel_basis(&self) -> Matrix {
        let f = self.field;
        let (red, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = Matrix::zeros(f, self.cols, free.len());
        for (t, &fc) in free.iter().enumerate() {
            k.set(fc, t, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                k.set(pc, t, f.neg(red.get(r, fc)));
            }
        }
        k
    }

    /// Some `x` with `self · x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: A has {} rows but b has {}",
                self.rows, b.rows
            )));
        }
        let n = self.cols;
        let mut aug = Matrix::zeros(self.field, self.rows, n + b.cols);
        for i in 0..self.rows {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            for j in 0..b.cols {
                aug.set(i, n + j, b.get(i, j));
            }
        }
        let (red, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= n) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.field, n, b.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, red.get(r, n + j));
            }
        }
        Ok(Some(x))
    }
}

/// Incremental sparse row echelon form.
///
/// Rows are stored with leading coefficient one. Each inserted row is
/// reduced against all earlier pivots, so an earlier row may still carry
/// entries in pivot columns created later; [`Echelon::into_rref`] cleans
/// those up.
pub struct Echelon {
    field: PrimeField,
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<u32>,
    acc: Vec<u64>,
    mark: Vec<bool>,
    heap: BinaryHeap<Reverse<u32>>,
}

const NONE: u32 = u32::MAX;

impl Echelon {
    pub fn new(field: PrimeField, ncols: usize) -> Self {
        Echelon {
            field,
            ncols,
            rows: Vec::new(),
            pivot_row: vec![NONE; ncols],
            acc: vec![0; ncols],
            mark: vec![false; ncols],
            heap: BinaryHeap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col] != NONE
    }

    /// Reduces `v` against every pivot. The remainder has no entries in
    /// pivot columns and is zero exactly when `v` lies in the row space.
    pub fn reduce(&mut self, v: &[(u32, u32)]) -> SparseVec {
        let f = self.field;
        let p = f.p as u64;
        let lazy = f.lazy();
        for &(i, x) in v {
            let iu = i as usize;
            self.acc[iu] = (self.acc[iu] + x as u64) % p;
            if !self.mark[iu] {
                self.mark[iu] = true;
                self.heap.push(Reverse(i));
            }
        }
        let mut rem = Vec::new();
        while let Some(Reverse(c)) = self.heap.pop() {
            let cu = c as usize;
            self.mark[cu] = false;
            let val = (self.acc[cu] % p) as u32;
            self.acc[cu] = 0;
            if val == 0 {
                continue;
            }
            let pr = self.pivot_row[cu];
            if pr == NONE {
                rem.push((c, val));
                continue;
            }
            let row = &self.rows[pr as usize];
            for &(j, x) in &row[1..] {
                let ju = j as usize;
                let add = val as u64 * (p - x as u64);
                if lazy {
                    self.acc[ju] += add;
                } else {
                    self.acc[ju] = (self.acc[ju] + add) % p;
                }
                if !self.mark[ju] {
                    self.mark[ju] = true;
                    self.heap.push(Reverse(j));
                }
            }
        }
        rem
    }

    pub fn contains(&mut self, v: &[(u32, u32)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &[(u32, u32)]) -> bool {
        let rem = self.reduce(v);
        self.push_reduced(rem)
    }

    fn push_reduced(&mut self, mut rem: SparseVec) -> bool {
        let Some(&(lead, lv)) = rem.first() else {
            return false;
        };
        if lv != 1 {
            let inv = self.field.inv(lv);
            for e in rem.iter_mut() {
                e.1 = self.field.mul(e.1, inv);
            }
        }
        self.pivot_row[lead as usize] = self.rows.len() as u32;
        self.rows.push(rem);
        true
    }

    /// Fully reduced row echelon form, rows sorted by pivot column.
    pub fn into_rref(self) -> Rref {
        let f = self.field;
        let p = f.p as u64;
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_unstable_by_key(|&r| self.rows[r][0].0);
        let mut is_pivot = vec![false; self.ncols];
        for r in &self.rows {
            is_pivot[r[0].0 as usize] = true;
        }
        let mut done: Vec<Option<SparseVec>> = vec![None; self.ncols];
        let mut acc = Accumulator::new(f, self.ncols);
        let mut out: Vec<SparseVec> = vec![Vec::new(); order.len()];
        for (slot, &r) in order.iter().enumerate().rev() {
            let row = &self.rows[r];
            let lead = row[0].0;
            let needs_work = row[1..].iter().any(|&(c, _)| is_pivot[c as usize]);
            let reduced = if needs_work {
                for &(c, x) in &row[1..] {
                    if is_pivot[c as usize] {
                        let other = done[c as usize].as_ref().expect("processed in order");
                        let coef = ((p - x as u64) % p) as u32;
                        acc.add_scaled(coef, &other[1..]);
                    } else {
                        acc.add(c, x as u64);
                    }
                }
                let mut v = vec![(lead, 1)];
                v.extend(acc.take());
                v
            } else {
                row.clone()
            };
            done[lead as usize] = Some(reduced.clone());
            out[slot] = reduced;
        }
        let pivots = out.iter().map(|r| r[0].0).collect();
        Rref {
            field: f,
            ncols: self.ncols,
            rows: out,
            pivots,
        }
    }
}

/// A fully reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Rref {
    field: PrimeField,
    ncols: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<u32>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<SparseVec> {
        self.rows
    }

    pub fn pivots(&self) -> &[u32] {
        &self.pivots
    }

    pub fn free_columns(&self) -> Vec<u32> {
        let mut is_pivot = vec![false; self.ncols];
        for &c in &self.pivots {
            is_pivot[c as usize] = true;
        }
        (0..self.ncols as u32)
            .filter(|&c| !is_pivot[c as usize])
            .collect()
    }

    /// Basis of `{x : row · x = 0 for every row}`, one vector per free
    /// column. The vector for free column `f` has a 1 at `f` and zeros at
    /// every other free column.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        let f = self.field;
        let free = self.free_columns();
        let mut slot = vec![NONE; self.ncols];
        for (t, &c) in free.iter().enumerate() {
            slot[c as usize] = t as u32;
        }
        let mut ker: Vec<SparseVec> = free.iter().map(|_| Vec::new()).collect();
        for (r, row) in self.rows.iter().enumerate() {
            let pc = self.pivots[r];
            for &(c, x) in &row[1..] {
                ker[slot[c as usize] as usize].push((pc, f.neg(x)));
            }
        }
        for (t, &c) in free.iter().enumerate() {
            let v = &mut ker[t];
            v.push((c, 1));
            v.sort_unstable_by_key(|e| e.0);
        }
        ker
    }

    /// Coordinates of a row-space vector in the RREF basis.
    pub fn coords(&self, v: &[(u32, u32)]) -> SparseVec {
        let mut slot = std::collections::HashMap::new();
        for (r, &c) in self.pivots.iter().enumerate() {
            slot.insert(c, r as u32);
        }
        v.iter()
            .filter_map(|&(c, x)| slot.get(&c).map(|&r| (r, x)))
            .collect()
    }
}

/// Rank of a family of sparse vectors in `F_p^n`.
pub fn rank_of(field: PrimeField, n: usize, vecs: &[SparseVec]) -> usize {
    let mut e = Echelon::new(field, n);
    for v in vecs {
        e.insert(v);
    }
    e.rank()
}

/// Transposes a list of sparse columns of a `rows × cols.len()` matrix
/// into its sparse rows.
pub fn transpose_sparse(rows: usize, cols: &[SparseVec]) -> Vec<SparseVec> {
    let mut out: Vec<SparseVec> = vec![Vec::new(); rows];
    for (j, col) in cols.iter().enumerate() {
        for &(i, x) in col {
            out[i as usize].push((j as u32, x));
        }
    }
    out
}

/// Kernel of the linear map whose columns are `cols` (each in `F_p^rows`),
/// in the free-column normal form of [`Rref::kernel_basis`].
pub fn kernel_of_columns(field: PrimeField, rows: usize, cols: &[SparseVec]) -> Vec<SparseVec> {
    kernel_with_free_columns(field, rows, cols).0
}

/// Like [`kernel_of_columns`], also returning the free column of each
/// kernel vector. Coordinates of a kernel element in this basis are its
/// entries at the free columns.
pub fn kernel_with_free_columns(
    field: PrimeField,
    rows: usize,
    cols: &[SparseVec],
) -> (Vec<SparseVec>, Vec<u32>) {
    let mut e = Echelon::new(field, cols.len());
    for r in transpose_sparse(rows, cols) {
        if !r.is_empty() {
            e.insert(&r);
        }
    }
    let rref = e.into_rref();
    (rref.kernel_basis(), rref.free_columns())
}

/// A subspace of `F_p^n` kept in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: PrimeField,
    n: usize,
    basis: Vec<SparseVec>,
    pivots: Vec<u32>,
}

impl Subspace {
    pub fn zero(field: PrimeField, n: usize) -> Self {
        Subspace {
            field,
            n,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, n: usize) -> Self {
        Subspace {
            field,
            n,
            basis: (0..n as u32).map(|i| vec![(i, 1)]).collect(),
            pivots: (0..n as u32).collect(),
        }
    }

    pub fn span(field: PrimeField, n: usize, vecs: &[SparseVec]) -> Self {
        let mut e = Echelon::new(field, n);
        for v in vecs {
            e.insert(v);
        }
        Self::from_echelon(e)
    }

    pub fn from_echelon(e: Echelon) -> Self {
        let n = e.ncols();
        let field = e.field;
        let r = e.into_rref();
        let pivots = r.pivots().to_vec();
        Subspace {
            field,
            n,
            basis: r.into_rows(),
            pivots,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[u32] {
        &self.pivots
    }

    fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.field, self.n);
        for v in &self.basis {
            e.insert(v);
        }
        e
    }

    pub fn contains(&self, v: &[(u32, u32)]) -> bool {
        self.echelon().contains(v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        let mut e = self.echelon();
        other.basis.iter().all(|v| e.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.n, other.n);
        let mut e = self.echelon();
        for v in &other.basis {
            e.insert(v);
        }
        Self::from_echelon(e)
    }

    /// Intersection through the kernel of `[A | -B]`.
    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.n, other.n);
        let f = self.field;
        let a = self.dim();
        let mut cols: Vec<SparseVec> = self.basis.clone();
        cols.extend(other.basis.iter().map(|v| sparse_scale(&f, f.neg(1), v)));
        let ker = kernel_of_columns(f, self.n, &cols);
        let mut acc = Accumulator::new(f, self.n);
        let vecs: Vec<SparseVec> = ker
            .iter()
            .map(|k| {
                for &(j, x) in k {
                    if (j as usize) < a {
                        acc.add_scaled(x, &self.basis[j as usize]);
                    }
                }
                acc.take()
            })
            .collect();
        Subspace::span(f, self.n, &vecs)
    }

    /// Coordinates of `v` in the RREF basis, or `None` when `v` is not in
    /// the subspace.
    pub fn coords(&self, v: &[(u32, u32)]) -> Option<Vec<u32>> {
        let f = self.field;
        let mut coords = vec![0; self.dim()];
        let mut slot = std::collections::HashMap::with_capacity(self.dim());
        for (r, &c) in self.pivots.iter().enumerate() {
            slot.insert(c, r);
        }
        for &(c, x) in v {
            if let Some(&r) = slot.get(&c) {
                coords[r] = x;
            }
        }
        let mut acc = Accumulator::new(f, self.n);
        for (r, &c) in coords.iter().enumerate() {
            acc.add_scaled(c, &self.basis[r]);
        }
        let back = acc.take();
        (back.as_slice() == v).then_some(coords)
    }

    /// Standard basis vectors spanning a complement: the non-pivot columns.
    pub fn complement_columns(&self) -> Vec<u32> {
        let mut is_pivot = vec![false; self.n];
        for &c in &self.pivots {
            is_pivot[c as usize] = true;
        }
        (0..self.n as u32)
            .filter(|&c| !is_pivot[c as usize])
            .collect()
    }

    /// Reduces `v` modulo the subspace; the result is supported on
    /// [`Subspace::complement_columns`].
    pub fn reduce(&self, v: &[(u32, u32)]) -> SparseVec {
        self.echelon().reduce(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(PrimeField::new(15).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(32003).is_ok());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(f(5), 3).rank(), 3);
        assert_eq!(Matrix::zeros(f(5), 2, 4).rank(), 0);
        let m = Matrix::from_rows(f(5), &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(f(5), 4).kernel_basis().cols(), 0);
        assert_eq!(Matrix::zeros(f(5), 3, 3).kernel_basis().cols(), 3);
        let m = Matrix::from_rows(f(5), &[vec![1, 2], vec![2, 4]]).unwrap();
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).unwrap().is_zero());
        // (2, -1) up to scale: the ratio of the entries is -2
        let (a, b) = (k.get(0, 0), k.get(1, 0));
        assert_eq!(a, f(5).mul(b, f(5).from_i64(-2)));
    }

    #[test]
    fn solve_examples() {
        let fl = f(7);
        let a = Matrix::from_rows(fl, &[vec![1, 1], vec![0, 1]]).unwrap();
        let b = Matrix::from_rows(fl, &[vec![3], vec![2]]).unwrap();
        let x = a.solve(&b).unwrap().unwrap();
        assert_eq!(x.column(0), vec![1, 2]);
        assert_eq!(a.mul(&x).unwrap(), b);

        let z = Matrix::zeros(fl, 2, 2);
        assert_eq!(z.solve(&b).unwrap(), None);

        let id = Matrix::identity(fl, 2);
        assert_eq!(id.solve(&b).unwrap().unwrap(), b);

        let short = Matrix::zeros(fl, 3, 1);
        assert!(a.solve(&short).is_err());
    }

    #[test]
    fn echelon_kernel_matches_dense() {
        let fl = f(11);
        let m = Matrix::from_rows(
            fl,
            &[vec![1, 2, 0, 3], vec![2, 4, 1, 1], vec![3, 6, 1, 4]],
        )
        .unwrap();
        let ker = kernel_of_columns(fl, 3, &m.sparse_columns());
        assert_eq!(ker.len(), m.kernel_basis().cols());
        for k in &ker {
            assert!(m.apply_sparse(k).is_empty());
        }
    }

    #[test]
    fn subspace_intersection() {
        let fl = f(7);
        let a = Subspace::span(fl, 3, &[vec![(0, 1)], vec![(1, 1)]]);
        let b = Subspace::span(fl, 3, &[vec![(1, 1)], vec![(2, 1)]]);
        let i = a.intersection(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[(1, 3)]));
        assert_eq!(a.sum(&b).dim(), 3);
        assert_eq!(a.coords(&[(0, 2), (1, 5)]), Some(vec![2, 5]));
        assert_eq!(a.coords(&[(2, 1)]), None);
    }
}
