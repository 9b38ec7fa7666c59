//! Dense matrices over a [`Field`], reduced row-echelon bases of subspaces,
//! Gaussian binomials and lexicographic subspace enumeration.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{check_cap, Error, Result, DEFAULT_SUBSPACE_CAP};
use crate::field::Field;

/// Row-major dense matrix; entries are field element codes.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}]", self.to_text())
    }
}

/// Rank of a GF(2) matrix whose rows are packed into words.
pub(crate) fn rank_bits(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    let n = rows.len();
    for i in 0..n {
        let r = rows[i];
        if r == 0 {
            continue;
        }
        rank += 1;
        let low = r & r.wrapping_neg();
        for row in rows.iter_mut().skip(i + 1) {
            if *row & low != 0 {
                *row ^= r;
            }
        }
    }
    rank
}

/// In-place rank of a `rows x cols` buffer of field codes.
pub(crate) fn rank_in_place(field: &Field, buf: &mut [u32], rows: usize, cols: usize) -> usize {
    if field.size() == 2 && cols <= 64 {
        let mut packed = [0u64; 64];
        if rows <= 64 {
            for i in 0..rows {
                let mut w = 0u64;
                for j in 0..cols {
                    w |= (buf[i * cols + j] as u64) << j;
                }
                packed[i] = w;
            }
            return rank_bits(&mut packed[..rows]);
        }
    }
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| buf[r * cols + c] != 0) else {
            continue;
        };
        if piv != rank {
            for j in c..cols {
                buf.swap(piv * cols + j, rank * cols + j);
            }
        }
        let inv = field.inv(buf[rank * cols + c]).expect("nonzero pivot");
        for r in rank + 1..rows {
            let x = buf[r * cols + c];
            if x == 0 {
                continue;
            }
            let f = field.mul(x, inv);
            for j in c..cols {
                let t = field.mul(f, buf[rank * cols + j]);
                buf[r * cols + j] = field.sub(buf[r * cols + j], t);
            }
        }
        rank += 1;
    }
    rank
}

/// Reduce a list of row vectors to reduced row-echelon form in place and
/// return the pivot columns. Zero rows are dropped.
pub(crate) fn rref_rows(field: &Field, rows: &mut Vec<Vec<u32>>) -> Vec<usize> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(piv, rank);
        let inv = field.inv(rows[rank][c]).expect("nonzero pivot");
        if inv != 1 {
            for x in rows[rank].iter_mut().skip(c) {
                *x = field.mul(*x, inv);
            }
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for j in c..cols {
                let t = field.mul(f, pivot_row[j]);
                row[j] = field.sub(row[j], t);
            }
        }
        pivots.push(c);
        rank += 1;
    }
    rows.truncate(rank);
    pivots
}

impl Matrix {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_vec(field: &Field, rows: usize, cols: usize, data: Vec<u32>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::Structural(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&x| !field.contains(x)) {
            return Err(Error::Argument(format!("entry {bad} outside the field")));
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: &Field, rows: &[Vec<u32>]) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Structural("ragged rows".into()));
        }
        Matrix::from_vec(field, r, c, rows.concat())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn into_data(self) -> Vec<u32> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn same_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::Structural("matrices over different fields".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Structural("shape mismatch in addition".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Ok(Matrix {
            data,
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        self.map(|x| self.field.neg(x))
    }

    pub fn scale(&self, c: u32) -> Matrix {
        self.map(|x| self.field.mul(c, x))
    }

    /// Entrywise map, e.g. a field automorphism.
    pub fn map(&self, f: impl Fn(u32) -> u32) -> Matrix {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::Structural(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let idx = i * other.cols + j;
                        out.data[idx] = f.add(out.data[idx], f.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::Structural("vector length mismatch".into()));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect())
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> Result<u32> {
        if !self.is_square() {
            return Err(Error::Structural("trace of a non-square matrix".into()));
        }
        Ok((0..self.rows).fold(0, |acc, i| self.field.add(acc, self.get(i, i))))
    }

    pub fn rank(&self) -> usize {
        let mut buf = self.data.clone();
        rank_in_place(&self.field, &mut buf, self.rows, self.cols)
    }

    /// Reduced row-echelon form (zero rows kept at the bottom) and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows = self.row_vectors();
        let pivots = rref_rows(&self.field, &mut rows);
        let mut out = Matrix::zero(&self.field, self.rows, self.cols);
        for (i, r) in rows.iter().enumerate() {
            out.data[i * self.cols..(i + 1) * self.cols].copy_from_slice(r);
        }
        (out, pivots)
    }

    /// `{x : A x = 0}`.
    pub fn right_kernel(&self) -> SubspaceBasis {
        let mut rows = self.row_vectors();
        let pivots = rref_rows(&self.field, &mut rows);
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let vecs = free
            .iter()
            .map(|&fc| {
                let mut v = vec![0u32; self.cols];
                v[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(rows[r][fc]);
                }
                v
            })
            .collect();
        SubspaceBasis::from_vectors(f, self.cols, vecs)
    }

    /// `{y : y^T A = 0}`.
    pub fn left_kernel(&self) -> SubspaceBasis {
        self.transpose().right_kernel()
    }

    /// Right image `{A v}` (the column space).
    pub fn right_image(&self) -> SubspaceBasis {
        SubspaceBasis::from_vectors(&self.field, self.rows, self.transpose().row_vectors())
    }

    /// Left image `{v^T A}` (the row space).
    pub fn left_image(&self) -> SubspaceBasis {
        SubspaceBasis::from_vectors(&self.field, self.cols, self.row_vectors())
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Structural("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let rows: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| u32::from(i == j)));
                r
            })
            .collect();
        let mut rows = rows;
        let pivots = rref_rows(&self.field, &mut rows);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::domain("matrix is singular"));
        }
        let data = rows.iter().flat_map(|r| r[n..].to_vec()).collect();
        Matrix::from_vec(&self.field, n, n, data)
    }

    pub fn determinant(&self) -> Result<u32> {
        if !self.is_square() {
            return Err(Error::Structural("determinant of a non-square matrix".into()));
        }
        let f = &self.field;
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| a[r * n + c] != 0) else {
                return Ok(0);
            };
            if p != c {
                for j in 0..n {
                    a.swap(p * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let pivot = a[c * n + c];
            det = f.mul(det, pivot);
            let inv = f.inv(pivot)?;
            for r in c + 1..n {
                let factor = f.mul(a[r * n + c], inv);
                if factor != 0 {
                    for j in c..n {
                        a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[c * n + j]));
                    }
                }
            }
        }
        Ok(det)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Some `x` with `A x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>> {
        if b.len() != self.rows {
            return Err(Error::Structural("right-hand side length mismatch".into()));
        }
        let mut rows: Vec<Vec<u32>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i]);
                r
            })
            .collect();
        let pivots = rref_rows(&self.field, &mut rows);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u32; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = rows[r][self.cols];
        }
        Ok(Some(x))
    }

    /// Text form: rows separated by `;`, entries by `,`.
    pub fn to_text(&self) -> String {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn parse(field: &Field, text: &str) -> Result<Matrix> {
        let rows: Vec<Vec<u32>> = text
            .trim()
            .split(';')
            .map(|r| {
                r.split(',')
                    .map(|c| {
                        c.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad matrix entry '{c}'")))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<_>>()?;
        Matrix::from_rows(field, &rows)
    }
}

/// A subspace of `F^ambient` stored as its unique reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubspaceBasis {
    ambient: usize,
    rows: Vec<Vec<u32>>,
}

impl fmt::Debug for SubspaceBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}: {:?})", self.rows.len(), self.ambient, self.rows)
    }
}

impl SubspaceBasis {
    /// Span of arbitrary vectors, reduced to RREF.
    pub fn from_vectors(field: &Field, ambient: usize, vectors: Vec<Vec<u32>>) -> SubspaceBasis {
        let mut rows: Vec<Vec<u32>> = vectors.into_iter().filter(|v| v.iter().any(|&x| x != 0)).collect();
        debug_assert!(rows.iter().all(|r| r.len() == ambient));
        rref_rows(field, &mut rows);
        SubspaceBasis { ambient, rows }
    }

    /// Wrap rows that are already in reduced row-echelon form.
    pub(crate) fn from_rref_unchecked(ambient: usize, rows: Vec<Vec<u32>>) -> SubspaceBasis {
        SubspaceBasis { ambient, rows }
    }

    pub fn zero(ambient: usize) -> SubspaceBasis {
        SubspaceBasis {
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn full(field: &Field, ambient: usize) -> SubspaceBasis {
        SubspaceBasis::from_vectors(field, ambient, Matrix::identity(field, ambient).row_vectors())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).expect("nonzero row"))
            .collect()
    }

    pub fn as_matrix(&self, field: &Field) -> Matrix {
        if self.rows.is_empty() {
            return Matrix::zero(field, 0, self.ambient);
        }
        Matrix::from_rows(field, &self.rows).expect("consistent rows")
    }

    pub fn contains(&self, field: &Field, v: &[u32]) -> bool {
        self.coordinates(field, v).is_some()
    }

    /// Coordinates of `v` with respect to the RREF rows, if `v` lies in the span.
    pub fn coordinates(&self, field: &Field, v: &[u32]) -> Option<Vec<u32>> {
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rows.len());
        for (row, piv) in self.rows.iter().zip(self.pivots()) {
            let c = rest[piv];
            coords.push(c);
            if c != 0 {
                for (x, &r) in rest.iter_mut().zip(row) {
                    *x = field.sub(*x, field.mul(c, r));
                }
            }
        }
        rest.iter().all(|&x| x == 0).then_some(coords)
    }

    /// `U^* = {v : v . u = 0 for all u in U}`.
    pub fn perp(&self, field: &Field) -> SubspaceBasis {
        if self.rows.is_empty() {
            return SubspaceBasis::full(field, self.ambient);
        }
        self.as_matrix(field).right_kernel()
    }

    pub fn sum(&self, field: &Field, other: &SubspaceBasis) -> SubspaceBasis {
        let mut v = self.rows.clone();
        v.extend(other.rows.iter().cloned());
        SubspaceBasis::from_vectors(field, self.ambient, v)
    }

    pub fn intersection_dim(&self, field: &Field, other: &SubspaceBasis) -> usize {
        self.dim() + other.dim() - self.sum(field, other).dim()
    }

    pub fn is_subspace_of(&self, field: &Field, other: &SubspaceBasis) -> bool {
        self.rows.iter().all(|r| other.contains(field, r))
    }
}

/// Number of `i`-dimensional subspaces of `F_q^m`.
pub fn gaussian_binomial(m: u32, i: u32, q: u64) -> Result<BigUint> {
    if i > m {
        return Err(Error::Argument(format!("subspace dimension {i} exceeds {m}")));
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for j in 0..i {
        num *= q.pow(m - j) - 1u32;
        den *= q.pow(i - j) - 1u32;
    }
    Ok(num / den)
}

/// Lexicographic enumeration of RREF bases of `k`-dimensional subspaces:
/// pivot sets in lexicographic order, then free entries as a base-`q` counter
/// with the first free entry (row-major) most significant.
#[derive(Clone)]
pub struct SubspaceEnumerator {
    field: Field,
    ambient: usize,
    k: usize,
    total: u64,
}

impl SubspaceEnumerator {
    pub fn new(field: &Field, ambient: usize, k: usize) -> Result<Self> {
        Self::with_cap(field, ambient, k, DEFAULT_SUBSPACE_CAP)
    }

    pub fn with_cap(field: &Field, ambient: usize, k: usize, cap: u64) -> Result<Self> {
        let total = gaussian_binomial(ambient as u32, k as u32, field.size())?;
        let t: u128 = total
            .to_string()
            .parse::<u128>()
            .unwrap_or(u128::MAX);
        check_cap("subspace enumeration", t, cap)?;
        Ok(SubspaceEnumerator {
            field: field.clone(),
            ambient,
            k,
            total: t as u64,
        })
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn iter(&self) -> SubspaceIter {
        self.range(0, self.total)
    }

    /// The subspaces with enumeration index in `start..end`.
    pub fn range(&self, start: u64, end: u64) -> SubspaceIter {
        let end = end.min(self.total);
        let mut it = SubspaceIter {
            field: self.field.clone(),
            ambient: self.ambient,
            k: self.k,
            pivots: (0..self.k).collect(),
            free: Vec::new(),
            counter: Vec::new(),
            in_block: 0,
            block_len: 0,
            remaining: end.saturating_sub(start),
            exhausted: self.k > self.ambient,
        };
        if it.remaining == 0 {
            return it;
        }
        it.load_block();
        let mut skip = start;
        while skip >= it.block_len {
            skip -= it.block_len;
            if !it.next_pivots() {
                it.remaining = 0;
                return it;
            }
            it.load_block();
        }
        it.in_block = skip;
        let q = self.field.size();
        let mut x = skip;
        for d in it.counter.iter_mut().rev() {
            *d = (x % q) as u32;
            x /= q;
        }
        it
    }
}

pub struct SubspaceIter {
    field: Field,
    ambient: usize,
    k: usize,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    counter: Vec<u32>,
    in_block: u64,
    block_len: u64,
    remaining: u64,
    exhausted: bool,
}

impl SubspaceIter {
    fn load_block(&mut self) {
        self.free.clear();
        for (r, &p) in self.pivots.iter().enumerate() {
            for c in p + 1..self.ambient {
                if !self.pivots.contains(&c) {
                    self.free.push((r, c));
                }
            }
        }
        self.counter = vec![0; self.free.len()];
        self.block_len = self.field.size().pow(self.free.len() as u32);
        self.in_block = 0;
    }

    fn next_pivots(&mut self) -> bool {
        let (k, n) = (self.k, self.ambient);
        if k == 0 {
            return false;
        }
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.pivots[i] < n - k + i {
                self.pivots[i] += 1;
                for j in i + 1..k {
                    self.pivots[j] = self.pivots[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }

    fn current(&self) -> Vec<Vec<u32>> {
        let mut rows = vec![vec![0u32; self.ambient]; self.k];
        for (r, &p) in self.pivots.iter().enumerate() {
            rows[r][p] = 1;
        }
        for (&(r, c), &v) in self.free.iter().zip(&self.counter) {
            rows[r][c] = v;
        }
        rows
    }

    fn advance(&mut self) {
        self.in_block += 1;
        if self.in_block < self.block_len {
            let q = self.field.size() as u32;
            for d in self.counter.iter_mut().rev() {
                *d += 1;
                if *d < q {
                    break;
                }
                *d = 0;
            }
        } else if self.next_pivots() {
            self.load_block();
        } else {
            self.exhausted = true;
        }
    }
}

impl Iterator for SubspaceIter {
    type Item = SubspaceBasis;

    fn next(&mut self) -> Option<SubspaceBasis> {
        if self.remaining == 0 || self.exhausted {
            return None;
        }
        let rows = self.current();
        self.remaining -= 1;
        self.advance();
        Some(SubspaceBasis::from_rref_unchecked(self.ambient, rows))
    }
}

/// Stream of all `sub_dim`-dimensional subspaces of `F_q^ambient_dim`.
pub fn enumerate_subspaces(field: &Field, ambient_dim: usize, sub_dim: usize) -> Result<SubspaceIter> {
    if sub_dim > ambient_dim {
        return Err(Error::Argument(format!(
            "subspace dimension {sub_dim} exceeds ambient {ambient_dim}"
        )));
    }
    Ok(SubspaceEnumerator::new(field, ambient_dim, sub_dim)?.iter())
}

/// Rank, right/left kernels and images in one pass.
pub struct RankKernelImage {
    pub rank: usize,
    pub right_kernel: SubspaceBasis,
    pub right_image: SubspaceBasis,
    pub left_kernel: SubspaceBasis,
    pub left_image: SubspaceBasis,
}

pub fn rank_kernel_image(a: &Matrix) -> RankKernelImage {
    RankKernelImage {
        rank: a.rank(),
        right_kernel: a.right_kernel(),
        right_image: a.right_image(),
        left_kernel: a.left_kernel(),
        left_image: a.left_image(),
    }
}

/// `|GL(n, q)|`.
pub fn general_linear_order(n: u32, q: u64) -> BigUint {
    let q = BigUint::from(q);
    let qn = q.pow(n);
    (0..n).fold(BigUint::one(), |acc, i| acc * (&qn - q.pow(i)))
}

/// All invertible `n x n` matrices, in lexicographic order of their entry codes.
pub fn general_linear_group(field: &Field, n: usize, cap: u64) -> Result<Vec<Matrix>> {
    let total = (field.size() as u128).checked_pow((n * n) as u32).unwrap_or(u128::MAX);
    check_cap("GL enumeration (all n x n matrices)", total, cap)?;
    let q = field.size();
    let mut out = Vec::new();
    let mut buf = vec![0u32; n * n];
    for t in 0..total as u64 {
        let mut x = t;
        for slot in buf.iter_mut().rev() {
            *slot = (x % q) as u32;
            x /= q;
        }
        let mut tmp = buf.clone();
        if rank_in_place(field, &mut tmp, n, n) == n {
            out.push(Matrix::from_vec(field, n, n, buf.clone())?);
        }
    }
    Ok(out)
}

/// A generating set of `GL(n, q)`: the transvections `I + E_ij` and `diag(g, 1, ..)`.
pub fn general_linear_generators(field: &Field, n: usize) -> Vec<Matrix> {
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut m = Matrix::identity(field, n);
                m.set(i, j, 1);
                gens.push(m);
            }
        }
    }
    if field.size() > 2 && n > 0 {
        let mut m = Matrix::identity(field, n);
        m.set(0, 0, field.primitive_element());
        gens.push(m);
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let f = gf2();
        let r = rank_kernel_image(&Matrix::zero(&f, 2, 3));
        assert_eq!(r.rank, 0);
        assert_eq!(r.right_kernel.dim(), 3);
        assert_eq!(r.left_kernel.dim(), 2);
    }

    #[test]
    fn identity_has_trivial_kernels() {
        let f = Field::prime(3).unwrap();
        let r = rank_kernel_image(&Matrix::identity(&f, 4));
        assert_eq!(r.rank, 4);
        assert_eq!(r.right_kernel.dim(), 0);
        assert_eq!(r.left_image.dim(), 4);
    }

    #[test]
    fn all_ones_2x2_over_gf2() {
        let f = gf2();
        let a = Matrix::parse(&f, "1,1;1,1").unwrap();
        let r = rank_kernel_image(&a);
        assert_eq!(r.rank, 1);
        assert_eq!(r.right_kernel.rows(), &[vec![1, 1]]);
    }

    #[test]
    fn gaussian_binomial_examples() {
        assert_eq!(gaussian_binomial(2, 1, 2).unwrap(), BigUint::from(3u32));
        assert_eq!(gaussian_binomial(9, 3, 2).unwrap(), BigUint::from(788_035u32));
        assert_eq!(gaussian_binomial(7, 0, 5).unwrap(), BigUint::one());
        assert!(gaussian_binomial(2, 3, 2).is_err());
    }

    #[test]
    fn enumeration_small_cases() {
        let f = gf2();
        assert_eq!(enumerate_subspaces(&f, 2, 1).unwrap().count(), 3);
        let all: Vec<_> = enumerate_subspaces(&f, 4, 4).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0], SubspaceBasis::full(&f, 4));
        assert_eq!(enumerate_subspaces(&f, 3, 0).unwrap().count(), 1);
    }

    #[test]
    fn enumeration_cap_reports_refused_count() {
        let f = gf2();
        match SubspaceEnumerator::with_cap(&f, 9, 3, 1000) {
            Err(Error::Resource { requested, cap, .. }) => {
                assert_eq!(requested, "788035");
                assert_eq!(cap, 1000);
            }
            _ => panic!("expected resource error"),
        }
    }

    #[test]
    fn ranges_partition_the_stream() {
        let f = Field::prime(3).unwrap();
        let e = SubspaceEnumerator::new(&f, 5, 2).unwrap();
        let whole: Vec<_> = e.iter().collect();
        let mut pieces = Vec::new();
        let mut s = 0;
        while s < e.total() {
            pieces.extend(e.range(s, s + 17));
            s += 17;
        }
        assert_eq!(whole, pieces);
        assert_eq!(whole.len() as u64, e.total());
    }

    #[test]
    fn inverse_and_solve() {
        let f = Field::new(2, 2).unwrap();
        let a = Matrix::parse(&f, "1,2;2,1").unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(&f, 2));
        let x = a.solve(&[1, 0]).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), vec![1, 0]);
        assert!(Matrix::parse(&f, "1,1;1,1").unwrap().inverse().is_err());
    }

    #[test]
    fn gl_sizes() {
        let f = gf2();
        assert_eq!(general_linear_group(&f, 3, 1 << 20).unwrap().len(), 168);
        assert_eq!(general_linear_order(3, 2), BigUint::from(168u32));
    }
}
