//! Dense generator matrices over a finite field and incremental span tests.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

/// Hard cap on the code length; subset masks are `u64`.
pub const MAX_LENGTH: usize = 64;

/// A rank-`k` matrix in `F_q^{k x n}`. Columns are stored contiguously.
#[derive(Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    field: Field,
    k: usize,
    n: usize,
    cols: Vec<u32>,
}

impl fmt::Debug for GeneratorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:?} {}x{}", self.field, self.k, self.n)?;
        for row in self.rows() {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

fn check_rows(field: &Field, rows: &[Vec<u32>]) -> Result<(usize, usize)> {
    let k = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::RaggedMatrix);
    }
    for &v in rows.iter().flatten() {
        if v as u64 >= field.q() {
            return Err(Error::ElementOutOfRange {
                value: v as u64,
                q: field.q(),
            });
        }
    }
    Ok((k, n))
}

/// Reduced row echelon form; returns the reduced rows and pivot columns.
pub fn rref(field: &Field, rows: &[Vec<u32>]) -> Result<(Vec<Vec<u32>>, Vec<usize>)> {
    let (k, n) = check_rows(field, rows)?;
    let mut a = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == k {
            break;
        }
        let Some(pr) = (r..k).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, pr);
        let inv = field.inv(a[r][c]).expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let factor = row[c];
                for (x, &pv) in row.iter_mut().zip(&pivot) {
                    *x = field.sub(*x, field.mul(factor, pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok((a, pivots))
}

/// Rank of an arbitrary rectangular array over `field`.
pub fn rank(field: &Field, rows: &[Vec<u32>]) -> Result<usize> {
    Ok(rref(field, rows)?.1.len())
}

impl GeneratorMatrix {
    /// Validates shape, entries and full row rank.
    pub fn new(field: Field, rows: Vec<Vec<u32>>) -> Result<GeneratorMatrix> {
        let (k, n) = check_rows(&field, &rows)?;
        if k == 0 || n == 0 {
            return Err(Error::BadShape {
                k,
                n,
                reason: "empty matrix",
            });
        }
        if k > n {
            return Err(Error::BadShape {
                k,
                n,
                reason: "more rows than columns",
            });
        }
        if n > MAX_LENGTH {
            return Err(Error::BadShape {
                k,
                n,
                reason: "length exceeds 64",
            });
        }
        let r = rank(&field, &rows)?;
        if r != k {
            return Err(Error::RankDeficient { rank: r, k });
        }
        let mut cols = Vec::with_capacity(k * n);
        for j in 0..n {
            cols.extend(rows.iter().map(|row| row[j]));
        }
        Ok(GeneratorMatrix { field, k, n, cols })
    }

    /// Builds from column vectors of length `k`.
    pub fn from_columns(field: Field, k: usize, columns: &[Vec<u32>]) -> Result<GeneratorMatrix> {
        if let Some(c) = columns.iter().find(|c| c.len() != k) {
            return Err(Error::LengthMismatch {
                expected: k,
                got: c.len(),
            });
        }
        let rows = (0..k)
            .map(|i| columns.iter().map(|c| c[i]).collect())
            .collect();
        GeneratorMatrix::new(field, rows)
    }

    pub fn identity(field: Field, n: usize) -> Result<GeneratorMatrix> {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
            .collect();
        GeneratorMatrix::new(field, rows)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Column `j`, zero-based.
    #[inline]
    pub fn column(&self, j: usize) -> &[u32] {
        &self.cols[j * self.k..(j + 1) * self.k]
    }

    pub fn entry(&self, row: usize, col: usize) -> u32 {
        self.cols[col * self.k + row]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        (0..self.k)
            .map(|i| (0..self.n).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    pub fn rank(&self) -> usize {
        rank(&self.field, &self.rows()).expect("validated matrix")
    }

    /// Whether `v` lies in the span of the columns with the given one-based
    /// indices. Repeated indices are harmless.
    pub fn span_contains(&self, cols: &[usize], v: &[u32]) -> Result<bool> {
        if v.len() != self.k {
            return Err(Error::LengthMismatch {
                expected: self.k,
                got: v.len(),
            });
        }
        let mut state = SpanState::new(self.field.clone(), self.k);
        for &c in cols {
            if c == 0 || c > self.n {
                return Err(Error::IndexOutOfRange {
                    index: c,
                    bound: self.n,
                });
            }
            state.insert(self.column(c - 1));
        }
        Ok(state.contains(v))
    }

    /// Row-reduces to `[I_k | A]`. Returns the matrix and the applied column
    /// permutation: column `j` of the result is column `perm[j]` (zero-based)
    /// of the input.
    pub fn systematic_form(
        &self,
        allow_column_permutation: bool,
    ) -> Result<(GeneratorMatrix, Vec<usize>)> {
        let (reduced, pivots) = rref(&self.field, &self.rows())?;
        let leading: Vec<usize> = (0..self.k).collect();
        let perm: Vec<usize> = if pivots == leading {
            (0..self.n).collect()
        } else if allow_column_permutation {
            let mut p = pivots.clone();
            p.extend((0..self.n).filter(|j| !pivots.contains(j)));
            p
        } else {
            return Err(Error::DependentLeadingColumns(self.k));
        };
        let rows = reduced
            .iter()
            .map(|row| perm.iter().map(|&j| row[j]).collect())
            .collect();
        Ok((GeneratorMatrix::new(self.field.clone(), rows)?, perm))
    }

    /// Whether the first `k` columns form the identity.
    pub fn is_systematic(&self) -> bool {
        (0..self.k).all(|j| {
            self.column(j)
                .iter()
                .enumerate()
                .all(|(i, &x)| x == u32::from(i == j))
        })
    }
}

/// Incremental Gaussian elimination over inserted columns.
///
/// The basis is kept fully reduced: every stored vector is 1 at its pivot and
/// every other stored vector is 0 there. Under that invariant `e_i` is in the
/// span exactly when some stored vector equals `e_i`.
#[derive(Clone)]
pub struct SpanState {
    field: Field,
    k: usize,
    basis: Vec<u32>,
    pivots: Vec<usize>,
    // pivot_row[c] = index into `pivots` of the vector pivoting at coordinate c
    pivot_row: Vec<usize>,
    scratch: Vec<u32>,
}

const NO_PIVOT: usize = usize::MAX;

impl SpanState {
    pub fn new(field: Field, k: usize) -> SpanState {
        SpanState {
            field,
            k,
            basis: Vec::with_capacity(k * k),
            pivots: Vec::with_capacity(k),
            pivot_row: vec![NO_PIVOT; k],
            scratch: vec![0; k],
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Resets to the empty span without releasing storage.
    pub fn clear(&mut self) {
        self.basis.clear();
        self.pivots.clear();
        self.pivot_row.fill(NO_PIVOT);
    }

    /// Overwrites `self` with `other`, reusing allocations.
    pub fn copy_from(&mut self, other: &SpanState) {
        self.basis.clone_from(&other.basis);
        self.pivots.clone_from(&other.pivots);
        self.pivot_row.clone_from(&other.pivot_row);
    }

    fn reduce_into_scratch(&mut self, v: &[u32]) {
        let f = &self.field;
        self.scratch.copy_from_slice(v);
        for (b, &p) in self.pivots.iter().enumerate() {
            let c = self.scratch[p];
            if c == 0 {
                continue;
            }
            let row = &self.basis[b * self.k..(b + 1) * self.k];
            for (x, &y) in self.scratch.iter_mut().zip(row) {
                if y != 0 {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
    }

    /// Adds a column; returns whether the rank grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        debug_assert_eq!(v.len(), self.k);
        if self.pivots.len() == self.k {
            return false;
        }
        self.reduce_into_scratch(v);
        let Some(p) = self.scratch.iter().position(|&x| x != 0) else {
            return false;
        };
        let f = self.field.clone();
        let inv = f.inv(self.scratch[p]).expect("nonzero");
        for x in self.scratch.iter_mut() {
            *x = f.mul(*x, inv);
        }
        let k = self.k;
        for b in 0..self.pivots.len() {
            let c = self.basis[b * k + p];
            if c == 0 {
                continue;
            }
            for j in 0..k {
                let y = self.scratch[j];
                if y != 0 {
                    let t = f.mul(c, y);
                    self.basis[b * k + j] = f.sub(self.basis[b * k + j], t);
                }
            }
        }
        self.basis.extend_from_slice(&self.scratch);
        self.pivot_row[p] = self.pivots.len();
        self.pivots.push(p);
        true
    }

    /// Whether the standard basis vector `e_i` (zero-based) is in the span.
    #[inline]
    pub fn contains_unit(&self, i: usize) -> bool {
        let b = self.pivot_row[i];
        if b == NO_PIVOT {
            return false;
        }
        let row = &self.basis[b * self.k..(b + 1) * self.k];
        row.iter().enumerate().all(|(j, &x)| j == i || x == 0)
    }

    pub fn contains(&mut self, v: &[u32]) -> bool {
        self.reduce_into_scratch(v);
        self.scratch.iter().all(|&x| x == 0)
    }
}
