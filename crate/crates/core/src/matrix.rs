//! Matrices of polynomials: fraction-free determinants, minors, rank.
//!
//! The production determinant is Bareiss elimination with fewest-terms
//! pivoting (exact division keeps entries small). A memoized Laplace
//! expansion is kept alongside as an independent cross-check oracle.

use crate::field::Field;
use crate::poly::Polynomial;
use crate::ring::PolyRing;
use std::collections::HashMap;

/// A dense `rows x cols` matrix over a polynomial ring.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMatrix<F: Field> {
    ring: PolyRing<F>,
    nrows: usize,
    ncols: usize,
    entries: Vec<Polynomial<F>>, // row-major
}

impl<F: Field> PolyMatrix<F> {
    pub fn new(
        ring: PolyRing<F>,
        nrows: usize,
        ncols: usize,
        entries: Vec<Polynomial<F>>,
    ) -> Self {
        assert_eq!(entries.len(), nrows * ncols, "entry count mismatch");
        PolyMatrix {
            ring,
            nrows,
            ncols,
            entries,
        }
    }

    pub fn from_fn(
        ring: PolyRing<F>,
        nrows: usize,
        ncols: usize,
        mut f: impl FnMut(usize, usize) -> Polynomial<F>,
    ) -> Self {
        let mut entries = Vec::with_capacity(nrows * ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                entries.push(f(i, j));
            }
        }
        Self::new(ring, nrows, ncols, entries)
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Entry at 0-based `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> &Polynomial<F> {
        &self.entries[i * self.ncols + j]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ring.clone(), self.ncols, self.nrows, |i, j| {
            self.entry(j, i).clone()
        })
    }

    /// Submatrix on the given row and column indices (0-based, in order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(self.ring.clone(), rows.len(), cols.len(), |i, j| {
            self.entry(rows[i], cols[j]).clone()
        })
    }

    /// Copy of the matrix with row `i` deleted.
    pub fn delete_row(&self, i: usize) -> Self {
        let rows: Vec<usize> = (0..self.nrows).filter(|&r| r != i).collect();
        let cols: Vec<usize> = (0..self.ncols).collect();
        self.submatrix(&rows, &cols)
    }

    /// Matrix product; panics on shape mismatch.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows, "shape mismatch in product");
        let field = self.ring.field();
        Self::from_fn(self.ring.clone(), self.nrows, other.ncols, |i, j| {
            let mut acc = Polynomial::zero();
            for k in 0..self.ncols {
                acc = acc.add(field, &self.entry(i, k).mul(field, other.entry(k, j)));
            }
            acc
        })
    }

    /// Transplants every entry into `target` (variables matched by name).
    pub fn map_into(&self, target: &PolyRing<F>) -> PolyMatrix<F> {
        PolyMatrix {
            ring: target.clone(),
            nrows: self.nrows,
            ncols: self.ncols,
            entries: self
                .entries
                .iter()
                .map(|p| self.ring.map_into(target, p))
                .collect(),
        }
    }

    /// Determinant by fraction-free Bareiss elimination with full pivoting
    /// on the fewest-terms entry. This is the production path.
    pub fn det(&self) -> Polynomial<F> {
        assert_eq!(self.nrows, self.ncols, "determinant of non-square matrix");
        let n = self.nrows;
        if n == 0 {
            return self.ring.one();
        }
        let field = self.ring.field();
        let mut a: Vec<Vec<Polynomial<F>>> = (0..n)
            .map(|i| (0..n).map(|j| self.entry(i, j).clone()).collect())
            .collect();
        let mut negate = false;
        let mut prev = self.ring.one();
        for k in 0..n {
            // fewest-terms nonzero pivot in the trailing submatrix
            let mut pivot: Option<(usize, usize, usize)> = None;
            for i in k..n {
                for j in k..n {
                    let t = a[i][j].num_terms();
                    if t > 0 && pivot.map_or(true, |(_, _, bt)| t < bt) {
                        pivot = Some((i, j, t));
                    }
                }
            }
            let Some((pi, pj, _)) = pivot else {
                return Polynomial::zero();
            };
            if pi != k {
                a.swap(pi, k);
                negate = !negate;
            }
            if pj != k {
                for row in a.iter_mut() {
                    row.swap(pj, k);
                }
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = a[k][k]
                        .mul(field, &a[i][j])
                        .sub(field, &a[i][k].mul(field, &a[k][j]));
                    a[i][j] = if k == 0 { t } else { t.div_exact(field, &prev) };
                }
                a[i][k] = Polynomial::zero();
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        if negate {
            det.neg(field)
        } else {
            det
        }
    }

    /// Determinant by Laplace expansion with memoization on row subsets.
    /// Slower than [`PolyMatrix::det`]; kept as an independent oracle.
    pub fn det_laplace(&self) -> Polynomial<F> {
        assert_eq!(self.nrows, self.ncols, "determinant of non-square matrix");
        assert!(self.nrows <= 20, "Laplace oracle capped at 20x20");
        let mut memo: HashMap<u32, Polynomial<F>> = HashMap::new();
        let full: u32 = if self.nrows == 32 {
            u32::MAX
        } else {
            (1u32 << self.nrows) - 1
        };
        self.laplace_rec(full, &mut memo)
    }

    /// Determinant of the submatrix on rows in `mask` and the first
    /// `mask.count_ones()` columns.
    fn laplace_rec(&self, mask: u32, memo: &mut HashMap<u32, Polynomial<F>>) -> Polynomial<F> {
        if mask == 0 {
            return self.ring.one();
        }
        if let Some(hit) = memo.get(&mask) {
            return hit.clone();
        }
        let field = self.ring.field();
        let col = mask.count_ones() as usize - 1;
        let mut acc = Polynomial::zero();
        // cofactor sign along column `col` starts at (-1)^col
        let mut sign_neg = col % 2 == 1;
        for i in 0..self.nrows {
            if mask & (1 << i) == 0 {
                continue;
            }
            let e = self.entry(i, col);
            if !e.is_zero() {
                let sub = self.laplace_rec(mask & !(1 << i), memo);
                let term = e.mul(field, &sub);
                acc = if sign_neg {
                    acc.sub(field, &term)
                } else {
                    acc.add(field, &term)
                };
            }
            sign_neg = !sign_neg;
        }
        memo.insert(mask, acc.clone());
        acc
    }

    /// All `t x t` minors, ordered lexicographically by (row set, column
    /// set). Returned minors may be zero; callers filter as needed.
    pub fn minors(&self, t: usize) -> Vec<Polynomial<F>> {
        let mut out = Vec::new();
        for rows in combinations(self.nrows, t) {
            for cols in combinations(self.ncols, t) {
                out.push(self.submatrix(&rows, &cols).det());
            }
        }
        out
    }

    /// For an `m x (m-1)` matrix, the signed maximal minors
    /// `Δ_i = (-1)^{i+1} det(M with row i deleted)` (1-based `i`), so that
    /// the row vector `(Δ_1, ..., Δ_m)` annihilates the matrix.
    pub fn signed_maximal_minors(&self) -> Vec<Polynomial<F>> {
        assert_eq!(
            self.nrows,
            self.ncols + 1,
            "signed maximal minors need an m x (m-1) matrix"
        );
        let field = self.ring.field();
        (0..self.nrows)
            .map(|i| {
                let d = self.delete_row(i).det();
                if i % 2 == 0 {
                    d
                } else {
                    d.neg(field)
                }
            })
            .collect()
    }

    /// Rank over the fraction field, by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let field = self.ring.field();
        let mut a: Vec<Vec<Polynomial<F>>> = (0..self.nrows)
            .map(|i| (0..self.ncols).map(|j| self.entry(i, j).clone()).collect())
            .collect();
        let mut prev: Polynomial<F> = self.ring.one();
        let mut rank = 0;
        let steps = self.nrows.min(self.ncols);
        for k in 0..steps {
            let mut pivot: Option<(usize, usize, usize)> = None;
            for i in k..self.nrows {
                for j in k..self.ncols {
                    let t = a[i][j].num_terms();
                    if t > 0 && pivot.map_or(true, |(_, _, bt)| t < bt) {
                        pivot = Some((i, j, t));
                    }
                }
            }
            let Some((pi, pj, _)) = pivot else { break };
            a.swap(pi, k);
            if pj != k {
                for row in a.iter_mut() {
                    row.swap(pj, k);
                }
            }
            rank += 1;
            for i in k + 1..self.nrows {
                for j in k + 1..self.ncols {
                    let t = a[k][k]
                        .mul(field, &a[i][j])
                        .sub(field, &a[i][k].mul(field, &a[k][j]));
                    a[i][j] = if k == 0 { t } else { t.div_exact(field, &prev) };
                }
                a[i][k] = Polynomial::zero();
            }
            prev = a[k][k].clone();
        }
        rank
    }

    /// Entries rendered as canonical text, row by row.
    pub fn display_rows(&self) -> Vec<Vec<String>> {
        (0..self.nrows)
            .map(|i| {
                (0..self.ncols)
                    .map(|j| self.entry(i, j).display(&self.ring))
                    .collect()
            })
            .collect()
    }
}

/// The Jacobian matrix of `polys`: entry `(i, j)` is `d polys[i] / d x_j`.
pub fn jacobian<F: Field>(ring: &PolyRing<F>, polys: &[Polynomial<F>]) -> PolyMatrix<F> {
    let field = ring.field();
    PolyMatrix::from_fn(ring.clone(), polys.len(), ring.nvars(), |i, j| {
        polys[i].partial(field, j)
    })
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // rightmost slot that can still advance
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
