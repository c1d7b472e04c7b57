//! Sparse exact matrices and the elimination toolkit built on them.
//!
//! Storage is row-major: each row is a list of `(column, value)` pairs sorted
//! by column with no zero values. Equality is therefore structural.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use thiserror::Error;

use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is not idempotent")]
    NotIdempotent,
    #[error("map is not surjective (rank {rank} < {rows})")]
    NotSurjective { rank: usize, rows: usize },
    #[error("map does not factor: it does not vanish on the kernel of the surjection")]
    NotWellDefined,
    #[error("linear system has no solution")]
    NoSolution,
    #[error("linear system has a {0}-dimensional solution space")]
    NonUnique(usize),
}

pub type Row<F> = Vec<(usize, F)>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<Row<F>>,
}

/// First differing entry between two equally shaped matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryDiff<F> {
    pub row: usize,
    pub col: usize,
    pub left: F,
    pub right: F,
}

impl<F: fmt::Debug> fmt::Debug for ExactMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        if self.rows <= 16 && self.cols <= 16 {
            for r in &self.data {
                let mut line = vec!["0".to_string(); self.cols];
                for (j, v) in r {
                    line[*j] = format!("{v:?}");
                }
                writeln!(f, "  [{}]", line.join(", "))?;
            }
        } else {
            for (i, r) in self.data.iter().enumerate() {
                for (j, v) in r {
                    writeln!(f, "  ({i},{j}) = {v:?}")?;
                }
            }
        }
        write!(f, "]")
    }
}

fn add_scaled_row<F: Field>(acc: &[(usize, F)], other: &[(usize, F)], s: &F) -> Row<F> {
    // acc + s * other
    let mut out = Vec::with_capacity(acc.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < acc.len() || j < other.len() {
        if j >= other.len() || (i < acc.len() && acc[i].0 < other[j].0) {
            out.push(acc[i].clone());
            i += 1;
        } else if i >= acc.len() || other[j].0 < acc[i].0 {
            let v = s.clone() * other[j].1.clone();
            if !v.is_zero() {
                out.push((other[j].0, v));
            }
            j += 1;
        } else {
            let v = acc[i].1.clone() + s.clone() * other[j].1.clone();
            if !v.is_zero() {
                out.push((acc[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl<F: Field> ExactMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        ExactMatrix {
            rows: n,
            cols: n,
            data: (0..n).map(|i| vec![(i, F::one())]).collect(),
        }
    }

    /// Builds a matrix from `(row, col, value)` triples; repeated positions are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, F)>,
    ) -> Result<Self, LinalgError> {
        let mut tmp: Vec<std::collections::BTreeMap<usize, F>> = vec![Default::default(); rows];
        for (i, j, v) in triplets {
            if i >= rows || j >= cols {
                return Err(LinalgError::Shape(format!(
                    "entry ({i},{j}) outside {rows}x{cols}"
                )));
            }
            let e = tmp[i].entry(j).or_insert_with(F::zero);
            *e = e.clone() + v;
        }
        let data = tmp
            .into_iter()
            .map(|r| r.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Ok(ExactMatrix { rows, cols, data })
    }

    pub fn from_dense(dense: &[Vec<F>]) -> Self {
        let rows = dense.len();
        let cols = dense.first().map_or(0, |r| r.len());
        let data = dense
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged dense matrix");
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j, v.clone()))
                    .collect()
            })
            .collect();
        ExactMatrix { rows, cols, data }
    }

    pub fn from_i64_rows(dense: &[&[i64]]) -> Self {
        let d: Vec<Vec<F>> = dense
            .iter()
            .map(|r| r.iter().map(|&x| F::from_i64(x)).collect())
            .collect();
        Self::from_dense(&d)
    }

    pub(crate) fn from_rows(rows: usize, cols: usize, data: Vec<Row<F>>) -> Self {
        debug_assert_eq!(data.len(), rows);
        ExactMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn row(&self, i: usize) -> &[(usize, F)] {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        match self.data[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => F::zero(),
        }
    }

    /// Iterates nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &F)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, j.to_owned(), v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        let mut d = vec![vec![F::zero(); self.cols]; self.rows];
        for (i, j, v) in self.entries() {
            d[i][j] = v.clone();
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<Row<F>> = vec![Vec::new(); self.cols];
        for (i, r) in self.data.iter().enumerate() {
            for (j, v) in r {
                data[*j].push((i, v.clone()));
            }
        }
        ExactMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let data = self
            .data
            .iter()
            .map(|r| r.iter().map(|(j, v)| (*j, s.clone() * v.clone())).collect())
            .collect();
        ExactMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.combine(other, &F::one())
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.combine(other, &(-F::one()))
    }

    fn combine(&self, other: &Self, s: &F) -> Result<Self, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::Shape(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| add_scaled_row(a, b, s))
            .collect();
        Ok(ExactMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// `self · other`.
    pub fn matmul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let n = other.cols;
        let mut acc: Vec<Option<F>> = vec![None; n];
        let mut touched: Vec<usize> = Vec::new();
        let mut data = Vec::with_capacity(self.rows);
        for r in &self.data {
            for (k, a) in r {
                for (j, b) in &other.data[*k] {
                    let p = a.clone() * b.clone();
                    match &mut acc[*j] {
                        Some(v) => *v = v.clone() + p,
                        slot @ None => {
                            *slot = Some(p);
                            touched.push(*j);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let mut row = Vec::with_capacity(touched.len());
            for &j in &touched {
                if let Some(v) = acc[j].take() {
                    if !v.is_zero() {
                        row.push((j, v));
                    }
                }
            }
            touched.clear();
            data.push(row);
        }
        Ok(ExactMatrix { rows: self.rows, cols: n, data })
    }

    /// Kronecker product; block `(i, j)` of the result is `self[i][j] · other`.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut data = Vec::with_capacity(rows);
        for ra in &self.data {
            for rb in &other.data {
                let mut row = Vec::with_capacity(ra.len() * rb.len());
                for (ja, a) in ra {
                    for (jb, b) in rb {
                        row.push((ja * other.cols + jb, a.clone() * b.clone()));
                    }
                }
                data.push(row);
            }
        }
        ExactMatrix { rows, cols, data }
    }

    /// Direct sum (block diagonal).
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut data = self.data.clone();
        for r in &other.data {
            data.push(r.iter().map(|(j, v)| (j + self.cols, v.clone())).collect());
        }
        ExactMatrix { rows: self.rows + other.rows, cols: self.cols + other.cols, data }
    }

    /// Stacks `self` above `other`.
    pub fn vstack(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::Shape("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(ExactMatrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Places `self` left of `other`.
    pub fn hstack(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::Shape("hstack row mismatch".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut r = a.clone();
                r.extend(b.iter().map(|(j, v)| (j + self.cols, v.clone())));
                r
            })
            .collect();
        Ok(ExactMatrix { rows: self.rows, cols: self.cols + other.cols, data })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        ExactMatrix {
            rows: idx.len(),
            cols: self.cols,
            data: idx.iter().map(|&i| self.data[i].clone()).collect(),
        }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.cols];
        for (k, &j) in idx.iter().enumerate() {
            pos[j] = k;
        }
        let data = self
            .data
            .iter()
            .map(|r| {
                let mut row: Row<F> = r
                    .iter()
                    .filter(|(j, _)| pos[*j] != usize::MAX)
                    .map(|(j, v)| (pos[*j], v.clone()))
                    .collect();
                row.sort_by_key(|(j, _)| *j);
                row
            })
            .collect();
        ExactMatrix { rows: self.rows, cols: idx.len(), data }
    }

    /// Matrix with columns given as sparse vectors.
    pub fn from_columns(rows: usize, columns: &[Row<F>]) -> Self {
        let mut data: Vec<Row<F>> = vec![Vec::new(); rows];
        for (j, c) in columns.iter().enumerate() {
            for (i, v) in c {
                data[*i].push((j, v.clone()));
            }
        }
        ExactMatrix { rows, cols: columns.len(), data }
    }

    /// Applies a row/column relabeling: result`[rmap(i)][cmap(j)] = self[i][j]`.
    pub fn permute(&self, rmap: &[usize], cmap: &[usize]) -> Self {
        let mut data: Vec<Row<F>> = vec![Vec::new(); self.rows];
        for (i, r) in self.data.iter().enumerate() {
            let mut row: Row<F> = r.iter().map(|(j, v)| (cmap[*j], v.clone())).collect();
            row.sort_by_key(|(j, _)| *j);
            data[rmap[i]] = row;
        }
        ExactMatrix { rows: self.rows, cols: self.cols, data }
    }

    /// The lexicographically first entry where `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<EntryDiff<F>> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for i in 0..self.rows {
            if self.data[i] == other.data[i] {
                continue;
            }
            let (a, b) = (&self.data[i], &other.data[i]);
            let (mut x, mut y) = (0, 0);
            loop {
                let ca = a.get(x).map(|e| e.0).unwrap_or(usize::MAX);
                let cb = b.get(y).map(|e| e.0).unwrap_or(usize::MAX);
                let col = ca.min(cb);
                let va = if ca == col { a[x].1.clone() } else { F::zero() };
                let vb = if cb == col { b[y].1.clone() } else { F::zero() };
                if va != vb {
                    return Some(EntryDiff { row: i, col, left: va, right: vb });
                }
                if ca == col {
                    x += 1;
                }
                if cb == col {
                    y += 1;
                }
            }
        }
        None
    }

    /// Reduced row echelon form. Pivot = first nonzero in column order.
    pub fn rref(&self) -> Rref<F> {
        let n = self.cols;
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
        let mut prow: Vec<Row<F>> = Vec::new();
        let mut pcol: Vec<usize> = Vec::new();
        let mut acc: Vec<F> = vec![F::zero(); n];
        let mut live: Vec<bool> = vec![false; n];
        let mut touched: Vec<usize> = Vec::new();
        for r in &self.data {
            if r.is_empty() {
                continue;
            }
            for (j, v) in r {
                acc[*j] = v.clone();
                live[*j] = true;
                touched.push(*j);
            }
            let mut pending: BinaryHeap<Reverse<usize>> = touched.iter().map(|&j| Reverse(j)).collect();
            // eliminate known pivots in increasing column order, stopping at the first free column
            let mut lead: Option<usize> = None;
            while let Some(Reverse(c)) = pending.pop() {
                if acc[c].is_zero() {
                    continue;
                }
                match pivot_of_col[c] {
                    Some(p) => {
                        let s = -acc[c].clone();
                        for (j, v) in &prow[p] {
                            if !live[*j] {
                                live[*j] = true;
                                acc[*j] = F::zero();
                                touched.push(*j);
                                pending.push(Reverse(*j));
                            }
                            acc[*j] = acc[*j].clone() + s.clone() * v.clone();
                        }
                    }
                    None => {
                        lead = Some(c);
                        break;
                    }
                }
            }
            touched.sort_unstable();
            if let Some(c0) = lead {
                let inv = acc[c0].inv().expect("nonzero pivot");
                let row: Row<F> = touched
                    .iter()
                    .filter(|&&j| !acc[j].is_zero())
                    .map(|&j| (j, acc[j].clone() * inv.clone()))
                    .collect();
                pivot_of_col[c0] = Some(prow.len());
                prow.push(row);
                pcol.push(c0);
            }
            for &j in &touched {
                acc[j] = F::zero();
                live[j] = false;
            }
            touched.clear();
        }
        // sort pivots by column and back-substitute
        let mut order: Vec<usize> = (0..prow.len()).collect();
        order.sort_by_key(|&i| pcol[i]);
        let mut rows: Vec<Row<F>> = order.iter().map(|&i| std::mem::take(&mut prow[i])).collect();
        let pivots: Vec<usize> = order.iter().map(|&i| pcol[i]).collect();
        let mut pos_of_col: Vec<Option<usize>> = vec![None; n];
        for (i, &c) in pivots.iter().enumerate() {
            pos_of_col[c] = Some(i);
        }
        for i in (0..rows.len()).rev() {
            // rows below i are already reduced
            loop {
                let hit = rows[i]
                    .iter()
                    .skip(1)
                    .find_map(|(j, v)| pos_of_col[*j].map(|p| (p, v.clone())));
                match hit {
                    Some((p, v)) => {
                        let other = rows[p].clone();
                        rows[i] = add_scaled_row(&rows[i], &other, &(-v));
                    }
                    None => break,
                }
            }
        }
        Rref { cols: n, rows, pivots }
    }

    pub fn rank(&self) -> usize {
        if self.rows <= self.cols {
            self.rref().pivots.len()
        } else {
            self.transpose().rref().pivots.len()
        }
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows
    }

    /// Basis of the null space; empty iff the matrix is injective.
    pub fn kernel_basis(&self) -> Vec<Row<F>> {
        self.rref().kernel_basis()
    }

    /// Solves `self · X = b`. Returns a particular solution (free variables zero)
    /// together with the dimension of the homogeneous solution space.
    pub fn solve(&self, b: &Self) -> Result<(Self, usize), LinalgError> {
        if self.rows != b.rows {
            return Err(LinalgError::Shape("solve: row mismatch".into()));
        }
        let n = self.cols;
        let aug = self.hstack(b)?;
        let r = aug.rref();
        if r.pivots.iter().any(|&c| c >= n) {
            return Err(LinalgError::NoSolution);
        }
        let mut data: Vec<Row<F>> = vec![Vec::new(); n];
        for (row, &c) in r.rows.iter().zip(&r.pivots) {
            data[c] = row
                .iter()
                .filter(|(j, _)| *j >= n)
                .map(|(j, v)| (j - n, v.clone()))
                .collect();
        }
        Ok((ExactMatrix { rows: n, cols: b.cols, data }, n - r.pivots.len()))
    }

    /// Solves `self · X = b`, requiring a unique solution.
    pub fn solve_unique(&self, b: &Self) -> Result<Self, LinalgError> {
        let (x, free) = self.solve(b)?;
        if free > 0 {
            return Err(LinalgError::NonUnique(free));
        }
        Ok(x)
    }

    /// A right inverse `s` with `self · s = id`; requires surjectivity.
    pub fn right_inverse(&self) -> Result<Self, LinalgError> {
        let r = self.rref();
        if r.pivots.len() < self.rows {
            return Err(LinalgError::NotSurjective { rank: r.pivots.len(), rows: self.rows });
        }
        let (x, _) = self.solve(&Self::identity(self.rows))?;
        Ok(x)
    }

    /// Projection onto the cokernel of `self`: `proj · self = 0`, `proj` surjective.
    /// Rows of `proj` are the RREF kernel basis of the transpose.
    pub fn cokernel_projection(&self) -> (Self, usize) {
        let ker = self.transpose().kernel_basis();
        let dim = ker.len();
        (ExactMatrix { rows: dim, cols: self.rows, data: ker }, dim)
    }

    /// Splits an idempotent `e` as `check · hat` with `hat · check = id`.
    /// `check` consists of the pivot columns of `e`, `hat` of the nonzero RREF rows.
    pub fn split_idempotent(&self) -> Result<(Self, Self), LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::Shape("idempotent must be square".into()));
        }
        if self.matmul(self)? != *self {
            return Err(LinalgError::NotIdempotent);
        }
        let r = self.rref();
        let check = self.select_cols(&r.pivots);
        let hat = ExactMatrix { rows: r.rows.len(), cols: self.cols, data: r.rows };
        Ok((hat, check))
    }

    /// The unique `g` with `g · self = f`, where `self` is surjective.
    pub fn solve_along_surjection(&self, f: &Self) -> Result<Self, LinalgError> {
        if f.cols != self.cols {
            return Err(LinalgError::Shape(format!(
                "factorization: map has {} columns, surjection has {}",
                f.cols, self.cols
            )));
        }
        let s = self.right_inverse()?;
        let g = f.matmul(&s)?;
        if g.matmul(self)? != *f {
            return Err(LinalgError::NotWellDefined);
        }
        Ok(g)
    }

    /// Solves `x · self = f` for `x` when `self` is injective (factorization through a mono).
    pub fn solve_along_injection(&self, f: &Self) -> Result<Self, LinalgError> {
        // self: n -> m injective, f: n -> k; find x: m -> k with x self = f
        let xt = self.transpose().solve(&f.transpose())?.0;
        let x = xt.transpose();
        if x.matmul(self)? != *f {
            return Err(LinalgError::NoSolution);
        }
        Ok(x)
    }
}

/// Result of row reduction.
#[derive(Debug, Clone)]
pub struct Rref<F> {
    pub cols: usize,
    pub rows: Vec<Row<F>>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Rref<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn kernel_basis(&self) -> Vec<Row<F>> {
        let mut is_pivot = vec![false; self.cols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        let mut out = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v: Row<F> = Vec::new();
            for (row, &c) in self.rows.iter().zip(&self.pivots) {
                if let Ok(k) = row.binary_search_by_key(&f, |(j, _)| *j) {
                    v.push((c, -row[k].1.clone()));
                }
            }
            v.push((f, F::one()));
            v.sort_by_key(|(j, _)| *j);
            out.push(v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;
    use crate::F7;

    fn q(rows: &[&[i64]]) -> ExactMatrix<Q> {
        ExactMatrix::from_i64_rows(rows)
    }

    #[test]
    fn null_product() {
        let a = q(&[&[1, 1], &[2, 2]]);
        let b = q(&[&[1], &[-1]]);
        assert!(a.matmul(&b).unwrap().is_zero());
    }

    #[test]
    fn kernel_of_rank_one() {
        let k = q(&[&[1, 1], &[2, 2]]).kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![(0, Q::from_i64(-1)), (1, Q::from_i64(1))]);
        assert!(ExactMatrix::<Q>::identity(4).kernel_basis().is_empty());
    }

    #[test]
    fn cokernel_of_diagonal_vector() {
        let v = q(&[&[1], &[1], &[1]]);
        let (p, d) = v.cokernel_projection();
        assert_eq!(d, 2);
        assert!(p.matmul(&v).unwrap().is_zero());
        assert_eq!(p.rank(), 2);
        let (p0, d0) = ExactMatrix::<Q>::zeros(3, 3).cokernel_projection();
        assert_eq!((p0, d0), (ExactMatrix::identity(3), 3));
        assert_eq!(ExactMatrix::<Q>::identity(3).cokernel_projection().1, 0);
    }

    #[test]
    fn split_half_projector() {
        let h = Q::parse_scalar("1/2").unwrap();
        let e = ExactMatrix::from_dense(&[vec![h.clone(), h.clone()], vec![h.clone(), h]]);
        let (hat, check) = e.split_idempotent().unwrap();
        assert_eq!(hat.rows(), 1);
        assert_eq!(check.matmul(&hat).unwrap(), e);
        assert_eq!(hat.matmul(&check).unwrap(), ExactMatrix::identity(1));
        let d = q(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 1]]);
        let (_, c) = d.split_idempotent().unwrap();
        assert_eq!(c, q(&[&[1, 0], &[0, 0], &[0, 1]]));
        assert_eq!(q(&[&[1, 1], &[0, 1]]).split_idempotent(), Err(LinalgError::NotIdempotent));
    }

    #[test]
    fn factor_through_surjection() {
        let p = q(&[&[1, 1]]);
        let f = q(&[&[2, 2]]);
        assert_eq!(p.solve_along_surjection(&f).unwrap(), q(&[&[2]]));
        let bad = q(&[&[1, 0]]);
        assert_eq!(p.solve_along_surjection(&bad), Err(LinalgError::NotWellDefined));
    }

    #[test]
    fn kron_of_identities_and_scalar() {
        let a = ExactMatrix::<F7>::identity(2).kron(&ExactMatrix::identity(3));
        assert_eq!(a, ExactMatrix::identity(6));
        let m = ExactMatrix::<F7>::from_i64_rows(&[&[1, 2], &[3, 4]]);
        assert_eq!(ExactMatrix::from_i64_rows(&[&[2]]).kron(&m), m.scale(&F7::from_i64(2)));
    }
}
