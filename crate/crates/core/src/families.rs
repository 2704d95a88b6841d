//! The three matrix families: r-leap catalecticant, sub-Hankel, and
//! semi-Hankel, together with the Hankel augmentation and seeded random
//! linear forms.
//!
//! All families are m x (m-1) matrices of linear forms (or zeros) in
//! `k[X1..Xn]`, 1-based variable indexing throughout.

use crate::field::Field;
use crate::matrix::PolyMatrix;
use crate::parse::{parse_poly, ParseError};
use crate::poly::Polynomial;
use crate::ring::PolyRing;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("invalid family parameters: {0}")]
    Constraint(String),
    #[error("bad linear forms: {0}")]
    Forms(String),
    #[error("form does not parse: {0}")]
    Parse(#[from] ParseError),
}

/// Which structured family a spec describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Catalecticant,
    SubHankel,
    SemiHankel,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::Catalecticant => "catalecticant",
            FamilyKind::SubHankel => "sub_hankel",
            FamilyKind::SemiHankel => "semi_hankel",
        })
    }
}

/// Serializable description of one family instance (the CLI config shape).
///
/// `n` is derived for catalecticant (`n = (m-1)(r+1)`); `forms` holds
/// semi-Hankel linear forms as canonical text, and an empty list means
/// "generate `2(m-1)-n` seeded random ones".
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: FamilyKind,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub forms: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl FamilySpec {
    pub fn catalecticant(m: usize, r: usize) -> Self {
        FamilySpec {
            family: FamilyKind::Catalecticant,
            m,
            n: None,
            r: Some(r),
            forms: Vec::new(),
            seed: None,
        }
    }

    pub fn sub_hankel(m: usize, n: usize) -> Self {
        FamilySpec {
            family: FamilyKind::SubHankel,
            m,
            n: Some(n),
            r: None,
            forms: Vec::new(),
            seed: None,
        }
    }

    pub fn semi_hankel(m: usize, n: usize, seed: u64) -> Self {
        FamilySpec {
            family: FamilyKind::SemiHankel,
            m,
            n: Some(n),
            r: None,
            forms: Vec::new(),
            seed: Some(seed),
        }
    }

    pub fn with_forms(mut self, forms: Vec<String>) -> Self {
        self.forms = forms;
        self
    }

    /// The ambient variable count, after validating the shape constraints.
    pub fn ambient_n(&self) -> Result<usize, FamilyError> {
        let m = self.m;
        match self.family {
            FamilyKind::Catalecticant => {
                let r = self
                    .r
                    .ok_or_else(|| FamilyError::Constraint("catalecticant needs r".into()))?;
                if !(1 <= r && r <= m.saturating_sub(1)) {
                    return Err(FamilyError::Constraint(format!(
                        "catalecticant needs 1 <= r <= m-1, got m={m}, r={r}"
                    )));
                }
                let derived = (m - 1) * (r + 1);
                if let Some(n) = self.n {
                    if n != derived {
                        return Err(FamilyError::Constraint(format!(
                            "catalecticant fixes n=(m-1)(r+1)={derived}, got n={n}"
                        )));
                    }
                }
                Ok(derived)
            }
            FamilyKind::SubHankel => {
                let n = self
                    .n
                    .ok_or_else(|| FamilyError::Constraint("sub_hankel needs n".into()))?;
                if n == m {
                    return Err(FamilyError::Constraint(format!(
                        "sub_hankel needs n >= m+1; n = m = {m} is the semi_hankel regime \
                         (use --family semi_hankel)"
                    )));
                }
                if !(4 <= m + 1 && m + 1 <= n && n <= 2 * (m - 1)) {
                    return Err(FamilyError::Constraint(format!(
                        "sub_hankel needs 4 <= m+1 <= n <= 2(m-1), got m={m}, n={n}"
                    )));
                }
                Ok(n)
            }
            FamilyKind::SemiHankel => {
                let n = self
                    .n
                    .ok_or_else(|| FamilyError::Constraint("semi_hankel needs n".into()))?;
                if !(3 <= m && m <= n && n <= 2 * (m - 1)) {
                    return Err(FamilyError::Constraint(format!(
                        "semi_hankel needs 3 <= m <= n <= 2(m-1), got m={m}, n={n}"
                    )));
                }
                Ok(n)
            }
        }
    }

    /// Builds the instance over `field`: the ring `k[X1..Xn]`, the matrix,
    /// and (for semi-Hankel) the resolved linear forms.
    pub fn build<F: Field>(&self, field: F) -> Result<Family<F>, FamilyError> {
        let n = self.ambient_n()?;
        let ring = PolyRing::with_x_vars(field, n);
        let (matrix, forms) = match self.family {
            FamilyKind::Catalecticant => (
                build_catalecticant(ring.field().clone(), self.m, self.r.unwrap())?,
                Vec::new(),
            ),
            FamilyKind::SubHankel => (
                build_sub_hankel(ring.field().clone(), self.m, n)?,
                Vec::new(),
            ),
            FamilyKind::SemiHankel => {
                let want = 2 * (self.m - 1) - n;
                let forms: Vec<Polynomial<F>> = if self.forms.is_empty() {
                    random_linear_forms(&ring, want, self.seed.unwrap_or(0))?
                } else {
                    self.forms
                        .iter()
                        .map(|s| parse_poly(&ring, s))
                        .collect::<Result<_, _>>()?
                };
                (build_semi_hankel(&ring, self.m, n, &forms)?, forms)
            }
        };
        Ok(Family {
            spec: self.clone(),
            ring,
            matrix,
            forms,
        })
    }
}

/// A built family instance: ring, matrix, and resolved forms.
#[derive(Debug, Clone)]
pub struct Family<F: Field> {
    pub spec: FamilySpec,
    pub ring: PolyRing<F>,
    pub matrix: PolyMatrix<F>,
    pub forms: Vec<Polynomial<F>>,
}

/// The r-leap catalecticant: m x (m-1), entry(i,j) = X_{(i-1)r+j}
/// (1-based), in `k[X1..X_{(m-1)(r+1)}]`. `r = 1` is the ordinary Hankel
/// matrix; `r = m-1` is the generic matrix.
pub fn build_catalecticant<F: Field>(
    field: F,
    m: usize,
    r: usize,
) -> Result<PolyMatrix<F>, FamilyError> {
    if m < 2 || r < 1 || r > m - 1 {
        return Err(FamilyError::Constraint(format!(
            "catalecticant needs m >= 2 and 1 <= r <= m-1, got m={m}, r={r}"
        )));
    }
    let n = (m - 1) * (r + 1);
    let ring = PolyRing::with_x_vars(field, n);
    Ok(PolyMatrix::from_fn(ring.clone(), m, m - 1, |i, j| {
        ring.var(i * r + j)
    }))
}

/// The sub-Hankel matrix: m x (m-1), entry(i,j) = X_{i+j-1} when
/// i+j-1 <= n and 0 past the corner, in `k[X1..Xn]`.
pub fn build_sub_hankel<F: Field>(
    field: F,
    m: usize,
    n: usize,
) -> Result<PolyMatrix<F>, FamilyError> {
    FamilySpec::sub_hankel(m, n).ambient_n()?;
    let ring = PolyRing::with_x_vars(field, n);
    Ok(PolyMatrix::from_fn(ring.clone(), m, m - 1, |i, j| {
        if i + j < n {
            ring.var(i + j)
        } else {
            ring.zero()
        }
    }))
}

/// The semi-Hankel matrix: like sub-Hankel, but the corner past `X_n`
/// holds the given independent linear forms instead of zeros.
pub fn build_semi_hankel<F: Field>(
    ring: &PolyRing<F>,
    m: usize,
    n: usize,
    forms: &[Polynomial<F>],
) -> Result<PolyMatrix<F>, FamilyError> {
    if !(3 <= m && m <= n && n <= 2 * (m - 1)) {
        return Err(FamilyError::Constraint(format!(
            "semi_hankel needs 3 <= m <= n <= 2(m-1), got m={m}, n={n}"
        )));
    }
    assert_eq!(ring.nvars(), n, "semi_hankel ring must be k[X1..Xn]");
    let want = 2 * (m - 1) - n;
    if forms.len() != want {
        return Err(FamilyError::Forms(format!(
            "need exactly 2(m-1)-n = {want} forms, got {}",
            forms.len()
        )));
    }
    let coeffs: Vec<Vec<F::Elem>> = forms
        .iter()
        .map(|f| {
            linear_form_coeffs(ring, f)
                .ok_or_else(|| FamilyError::Forms(format!("{} is not linear", f.display(ring))))
        })
        .collect::<Result<_, _>>()?;
    if linear_rank(ring.field(), &coeffs) != want {
        return Err(FamilyError::Forms(
            "forms are linearly dependent".to_string(),
        ));
    }
    Ok(PolyMatrix::from_fn(ring.clone(), m, m - 1, |i, j| {
        if i + j < n {
            ring.var(i + j)
        } else {
            forms[i + j - n].clone()
        }
    }))
}

/// Augments an r-leap catalecticant to a Hankel matrix by filling in the
/// skipped variable windows: for each gap between consecutive rows the
/// missing row starts `(i-1)r+2 .. ir` are appended. The original rows
/// come first; some row permutation of the output is the
/// `((v-1)r+1) x w` Hankel matrix (see [`permutes_to_hankel`]).
pub fn augment_to_hankel<F: Field>(
    c: &PolyMatrix<F>,
    r: usize,
) -> Result<PolyMatrix<F>, FamilyError> {
    let (v, w) = (c.nrows(), c.ncols());
    let ring = c.ring().clone();
    // verify catalecticant shape entrywise
    for i in 0..v {
        for j in 0..w {
            let want = ring.var(i * r + j);
            if c.entry(i, j) != &want {
                return Err(FamilyError::Constraint(format!(
                    "input is not an r-leap catalecticant at entry ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let mut rows: Vec<Polynomial<F>> = Vec::new();
    for i in 0..v {
        for j in 0..w {
            rows.push(c.entry(i, j).clone());
        }
    }
    // missing starts: everything strictly between consecutive leaps
    for gap in 0..v.saturating_sub(1) {
        for start in (gap * r + 1)..(gap + 1) * r {
            for j in 0..w {
                rows.push(ring.var(start + j));
            }
        }
    }
    let v_out = rows.len() / w;
    Ok(PolyMatrix::new(ring, v_out, w, rows))
}

/// The m x t submatrix on the first `t` columns.
pub fn leading_columns<F: Field>(m: &PolyMatrix<F>, t: usize) -> PolyMatrix<F> {
    assert!(1 <= t && t <= m.ncols(), "column count out of range");
    let rows: Vec<usize> = (0..m.nrows()).collect();
    let cols: Vec<usize> = (0..t).collect();
    m.submatrix(&rows, &cols)
}

/// True when some row permutation of `m` realizes entry(i,j) = X_{i+j-1}:
/// every entry must be a single variable and sorting rows by their first
/// entry's index must produce consecutive overlapping windows.
pub fn permutes_to_hankel<F: Field>(m: &PolyMatrix<F>) -> bool {
    let ring = m.ring();
    let var_of = |p: &Polynomial<F>| -> Option<usize> {
        let terms = p.terms();
        if terms.len() != 1 || !ring.field().is_one(&terms[0].1) {
            return None;
        }
        let mono = &terms[0].0;
        if mono.degree() != 1 {
            return None;
        }
        mono.support().next()
    };
    let mut starts = Vec::with_capacity(m.nrows());
    for i in 0..m.nrows() {
        let Some(s) = var_of(m.entry(i, 0)) else {
            return false;
        };
        for j in 0..m.ncols() {
            if var_of(m.entry(i, j)) != Some(s + j) {
                return false;
            }
        }
        starts.push(s);
    }
    starts.sort_unstable();
    starts == (0..m.nrows()).collect::<Vec<_>>()
}

/// Coefficient vector of a homogeneous linear form; `None` otherwise.
pub fn linear_form_coeffs<F: Field>(
    ring: &PolyRing<F>,
    f: &Polynomial<F>,
) -> Option<Vec<F::Elem>> {
    if f.is_zero() || f.degree() != Some(1) || !f.is_homogeneous() {
        return None;
    }
    let field = ring.field();
    let mut coeffs = vec![field.zero(); ring.nvars()];
    for (m, c) in f.terms() {
        let i = m.support().next().unwrap();
        coeffs[i] = c.clone();
    }
    Some(coeffs)
}

/// Rank of a small dense matrix of field elements (Gaussian elimination).
pub fn linear_rank<F: Field>(field: &F, rows: &[Vec<F::Elem>]) -> usize {
    let mut a: Vec<Vec<F::Elem>> = rows.to_vec();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..a.len()).find(|&i| !field.is_zero(&a[i][col])) else {
            continue;
        };
        a.swap(rank, pivot);
        let inv = field.inv(&a[rank][col].clone());
        for i in rank + 1..a.len() {
            if !field.is_zero(&a[i][col]) {
                let factor = field.mul(&a[i][col], &inv);
                for j in col..ncols {
                    let s = field.mul(&factor, &a[rank][j]);
                    a[i][j] = field.sub(&a[i][j], &s);
                }
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

/// `count` linearly independent random linear forms in `ring`,
/// deterministic in `seed` (redrawn in full until independent).
pub fn random_linear_forms<F: Field>(
    ring: &PolyRing<F>,
    count: usize,
    seed: u64,
) -> Result<Vec<Polynomial<F>>, FamilyError> {
    let n = ring.nvars();
    if count > n {
        return Err(FamilyError::Forms(format!(
            "cannot pick {count} independent forms in {n} variables"
        )));
    }
    let field = ring.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut forms = Vec::with_capacity(count);
        let mut coeffs = Vec::with_capacity(count);
        for _ in 0..count {
            let cs: Vec<F::Elem> = (0..n).map(|_| field.random(&mut rng)).collect();
            let mut f = ring.zero();
            for (i, c) in cs.iter().enumerate() {
                f = f.add(field, &ring.var(i).scale(field, c));
            }
            forms.push(f);
            coeffs.push(cs);
        }
        if linear_rank(field, &coeffs) == count {
            return Ok(forms);
        }
    }
}
