//! Exact linear algebra over the rationals.
//!
//! Everything else in the crate reduces its questions to rank, membership and
//! quotient computations performed here. Elimination is fraction-free: rows are
//! kept as primitive integer vectors while the echelon form is built, and only
//! the final reduced row-echelon form is normalized back to rationals.
//!
//! Vectors are rows throughout; a [`Matrix`] acting on a vector `v` means `v * M`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar, always in lowest terms with positive denominator.
pub type Scalar = BigRational;

/// Integer-valued [`Scalar`].
pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

/// `num / den` in lowest terms. Panics when `den == 0`.
pub fn frac(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero_vec(len: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); len]
}

pub fn unit_vec(len: usize, index: usize) -> Vec<Scalar> {
    let mut v = zero_vec(len);
    v[index] = Scalar::one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    debug_assert_eq!(acc.len(), v.len());
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: zero_vec(rows * cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Builds a matrix from explicit rows; every row must have `cols` entries.
    pub fn from_rows<I>(cols: usize, rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let mut entries = Vec::new();
        let mut count = 0;
        for row in rows {
            if row.len() != cols {
                return Err(Error::Dimension {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row);
            count += 1;
        }
        Ok(Matrix {
            rows: count,
            cols,
            entries,
        })
    }

    /// Integer matrix from a flat row-major slice. Panics on a length mismatch.
    pub fn from_i64(rows: usize, cols: usize, values: &[i64]) -> Self {
        assert_eq!(values.len(), rows * cols, "entry count must be rows * cols");
        Matrix {
            rows,
            cols,
            entries: values.iter().map(|&v| int(v)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Scalar]> + '_ {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.entries)
    }

    pub fn push_row(&mut self, row: &[Scalar]) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::Dimension {
                expected: self.cols,
                found: row.len(),
            });
        }
        self.entries.extend_from_slice(row);
        self.rows += 1;
        Ok(())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let mut acc = zero_vec(other.cols);
            for (k, a) in self.row(r).iter().enumerate() {
                axpy(&mut acc, a, other.row(k));
            }
            out.entries[r * other.cols..(r + 1) * other.cols].clone_from_slice(&acc);
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.rows {
            return Err(Error::Dimension {
                expected: self.rows,
                found: v.len(),
            });
        }
        let mut acc = zero_vec(self.cols);
        for (k, a) in v.iter().enumerate() {
            axpy(&mut acc, a, self.row(k));
        }
        Ok(acc)
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut ech = Echelon::new(2 * n);
        for r in 0..n {
            let mut row = self.row(r).to_vec();
            row.extend(unit_vec(n, r));
            ech.insert(&row);
        }
        let rref = ech.to_rref();
        if rref.pivots().iter().take(n).copied().ne(0..n) || rref.rank() < n {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for (r, row) in rref.rows.iter().enumerate() {
            for (c, x) in row {
                if *c >= n {
                    inv.set(r, c - n, x.clone());
                }
            }
        }
        Some(inv)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.row_iter() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

type IntRow = Vec<(usize, BigInt)>;

fn primitive(mut row: IntRow) -> IntRow {
    let mut g = BigInt::zero();
    for (_, x) in &row {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    if row.first().is_some_and(|(_, x)| x.is_negative()) {
        g = -g;
    }
    if !g.is_one() && !g.is_zero() {
        for (_, x) in row.iter_mut() {
            *x = &*x / &g;
        }
    }
    row
}

fn to_int_row<I>(entries: I) -> IntRow
where
    I: IntoIterator<Item = (usize, Scalar)>,
{
    let entries: Vec<(usize, Scalar)> = entries.into_iter().filter(|(_, x)| !x.is_zero()).collect();
    let mut den = BigInt::one();
    for (_, x) in &entries {
        den = den.lcm(x.denom());
    }
    let row = entries
        .into_iter()
        .map(|(c, x)| (c, x.numer() * (&den / x.denom())))
        .collect();
    primitive(row)
}

/// `a * v - b * p` for sparse sorted rows.
fn combine(a: &BigInt, v: &IntRow, b: &BigInt, p: &IntRow) -> IntRow {
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (0, 0);
    let scale = |x: &BigInt, k: &BigInt| if k.is_one() { x.clone() } else { x * k };
    while i < v.len() || j < p.len() {
        let take_v = j == p.len() || (i < v.len() && v[i].0 < p[j].0);
        let take_p = i == v.len() || (j < p.len() && p[j].0 < v[i].0);
        if take_v {
            out.push((v[i].0, scale(&v[i].1, a)));
            i += 1;
        } else if take_p {
            out.push((p[j].0, -scale(&p[j].1, b)));
            j += 1;
        } else {
            let x = scale(&v[i].1, a) - scale(&p[j].1, b);
            if !x.is_zero() {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incrementally built row-echelon form with primitive integer rows.
///
/// Rows are reduced only on their leading entry as they arrive, which is enough
/// for rank and membership. [`Echelon::to_rref`] produces the canonical form.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    rows: Vec<IntRow>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon {
            cols,
            rows: Vec::new(),
            pivot_row: vec![None; cols],
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut row: IntRow) -> IntRow {
        while let Some((lead, coeff)) = row.first() {
            let Some(p) = self.pivot_row[*lead] else {
                break;
            };
            let pivot = &self.rows[p];
            let a = &pivot[0].1;
            let g = a.gcd(coeff);
            let (a, b) = (a / &g, coeff / &g);
            row = primitive(combine(&a, &row, &b, pivot));
        }
        row
    }

    fn insert_int(&mut self, row: IntRow) -> bool {
        let row = self.reduce(row);
        match row.first() {
            None => false,
            Some((lead, _)) => {
                self.pivot_row[*lead] = Some(self.rows.len());
                self.rows.push(row);
                true
            }
        }
    }

    /// Adds a dense row; returns whether the rank grew. Panics on a length mismatch.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.cols, "row length must match the ambient dimension");
        self.insert_int(to_int_row(v.iter().cloned().enumerate()))
    }

    /// Adds a sparse row given as `(column, value)` pairs with distinct columns.
    pub fn insert_sparse<I>(&mut self, entries: I) -> bool
    where
        I: IntoIterator<Item = (usize, Scalar)>,
    {
        let mut row = to_int_row(entries);
        row.sort_by_key(|(c, _)| *c);
        debug_assert!(row.iter().all(|(c, _)| *c < self.cols));
        self.insert_int(row)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(to_int_row(v.iter().cloned().enumerate())).is_empty()
    }

    pub fn contains_sparse<I>(&self, entries: I) -> bool
    where
        I: IntoIterator<Item = (usize, Scalar)>,
    {
        let mut row = to_int_row(entries);
        row.sort_by_key(|(c, _)| *c);
        self.reduce(row).is_empty()
    }

    /// Canonical reduced row-echelon form of the rows inserted so far.
    pub fn to_rref(&self) -> Rref {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.rows[r][0].0);
        let mut rows: Vec<Vec<(usize, Scalar)>> = order
            .iter()
            .map(|&r| {
                let row = &self.rows[r];
                let lead = row[0].1.clone();
                row.iter()
                    .map(|(c, x)| (*c, Scalar::new(x.clone(), lead.clone())))
                    .collect()
            })
            .collect();
        let pivots: Vec<usize> = rows.iter().map(|r| r[0].0).collect();
        for i in (0..rows.len()).rev() {
            let pc = pivots[i];
            let (upper, lower) = rows.split_at_mut(i);
            let pivot_row = &lower[0];
            for row in upper.iter_mut() {
                let Ok(pos) = row.binary_search_by_key(&pc, |(c, _)| *c) else {
                    continue;
                };
                let factor = row[pos].1.clone();
                *row = sub_scaled(row, &factor, pivot_row);
            }
        }
        Rref::from_parts(self.cols, rows, pivots)
    }
}

/// `v - c * p` on sparse sorted rational rows.
fn sub_scaled(v: &[(usize, Scalar)], c: &Scalar, p: &[(usize, Scalar)]) -> Vec<(usize, Scalar)> {
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < p.len() {
        if j == p.len() || (i < v.len() && v[i].0 < p[j].0) {
            out.push(v[i].clone());
            i += 1;
        } else if i == v.len() || p[j].0 < v[i].0 {
            out.push((p[j].0, -(c * &p[j].1)));
            j += 1;
        } else {
            let x = &v[i].1 - c * &p[j].1;
            if !x.is_zero() {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Reduced row-echelon form, stored sparsely, together with the pivot and
/// free (non-pivot) columns. The free columns index a complement basis of the
/// row space, which is how quotients by a relation space are coordinatized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    cols: usize,
    rows: Vec<Vec<(usize, Scalar)>>,
    pivots: Vec<usize>,
    free: Vec<usize>,
    free_pos: Vec<Option<usize>>,
    pivot_pos: Vec<Option<usize>>,
}

impl Rref {
    fn from_parts(cols: usize, rows: Vec<Vec<(usize, Scalar)>>, pivots: Vec<usize>) -> Self {
        let mut pivot_pos = vec![None; cols];
        for (i, &p) in pivots.iter().enumerate() {
            pivot_pos[p] = Some(i);
        }
        let free: Vec<usize> = (0..cols).filter(|c| pivot_pos[*c].is_none()).collect();
        let mut free_pos = vec![None; cols];
        for (i, &f) in free.iter().enumerate() {
            free_pos[f] = Some(i);
        }
        Rref {
            cols,
            rows,
            pivots,
            free,
            free_pos,
            pivot_pos,
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Non-pivot columns in increasing order.
    pub fn free_columns(&self) -> &[usize] {
        &self.free
    }

    pub fn quotient_dim(&self) -> usize {
        self.free.len()
    }

    pub fn sparse_rows(&self) -> &[Vec<(usize, Scalar)>] {
        &self.rows
    }

    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows.len(), self.cols);
        for (r, row) in self.rows.iter().enumerate() {
            for (c, x) in row {
                m.set(r, *c, x.clone());
            }
        }
        m
    }

    /// Coordinates of the coset `v + rowspace` in the complement basis given by
    /// the free columns.
    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length must match the ambient dimension");
        self.project_sparse(
            v.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(c, x)| (c, x.clone())),
        )
    }

    pub fn project_sparse<I>(&self, entries: I) -> Vec<Scalar>
    where
        I: IntoIterator<Item = (usize, Scalar)>,
    {
        let mut out = zero_vec(self.free.len());
        for (c, x) in entries {
            if x.is_zero() {
                continue;
            }
            match (self.free_pos[c], self.pivot_pos[c]) {
                (Some(f), _) => out[f] += x,
                (None, Some(r)) => {
                    for (cc, y) in &self.rows[r][1..] {
                        if let Some(f) = self.free_pos[*cc] {
                            out[f] -= &x * y;
                        }
                    }
                }
                (None, None) => unreachable!("every column is either a pivot or free"),
            }
        }
        out
    }

    /// Lifts complement coordinates back to the ambient space (free columns only).
    pub fn lift(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let mut v = zero_vec(self.cols);
        for (f, x) in self.free.iter().zip(coords) {
            v[*f] = x.clone();
        }
        v
    }

    /// Basis of the right kernel `{x : A x = 0}` of the matrix these rows span.
    pub fn right_kernel_basis(&self) -> Vec<Vec<Scalar>> {
        self.free
            .iter()
            .map(|&f| {
                let mut x = unit_vec(self.cols, f);
                for (r, row) in self.rows.iter().enumerate() {
                    if let Ok(pos) = row.binary_search_by_key(&f, |(c, _)| *c) {
                        x[self.pivots[r]] = -row[pos].1.clone();
                    }
                }
                x
            })
            .collect()
    }
}

/// Reduced row-echelon form of `m` (same shape, zero rows last) and its rank.
pub fn rref(m: &Matrix) -> (Matrix, usize) {
    let mut ech = Echelon::new(m.cols());
    for row in m.row_iter() {
        ech.insert(row);
    }
    let reduced = ech.to_rref();
    let rank = reduced.rank();
    let mut out = Matrix::zeros(m.rows(), m.cols());
    for (r, row) in reduced.rows.iter().enumerate() {
        for (c, x) in row {
            out.set(r, *c, x.clone());
        }
    }
    (out, rank)
}

pub fn rank(m: &Matrix) -> usize {
    let mut ech = Echelon::new(m.cols());
    for row in m.row_iter() {
        ech.insert(row);
    }
    ech.rank()
}

/// Quotient of the coordinate space `F^ambient` by the row space of `relations`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub rref: Rref,
}

impl Quotient {
    pub fn new(ambient: usize, relations: &Matrix) -> Result<Self> {
        if relations.cols() != ambient {
            return Err(Error::Dimension {
                expected: ambient,
                found: relations.cols(),
            });
        }
        let mut ech = Echelon::new(ambient);
        for row in relations.row_iter() {
            ech.insert(row);
        }
        Ok(Quotient { rref: ech.to_rref() })
    }

    pub fn dim(&self) -> usize {
        self.rref.quotient_dim()
    }

    /// Ambient coordinates whose cosets form a basis of the quotient.
    pub fn representatives(&self) -> &[usize] {
        self.rref.free_columns()
    }
}

/// `ambient - rank(relations)`.
pub fn quotient_dim(ambient: usize, relations: &Matrix) -> Result<usize> {
    Ok(Quotient::new(ambient, relations)?.dim())
}

/// Linear subspace of `F^ambient_dim`, stored as its canonical rref basis.
///
/// Two subspaces are equal exactly when their stored bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(0, ambient_dim),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
        }
    }

    pub fn span<I>(ambient_dim: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let mut ech = Echelon::new(ambient_dim);
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::Dimension {
                    expected: ambient_dim,
                    found: v.len(),
                });
            }
            ech.insert(&v);
        }
        Ok(Self::from_echelon(&ech))
    }

    pub fn from_echelon(ech: &Echelon) -> Self {
        Subspace {
            ambient_dim: ech.cols(),
            basis: ech.to_rref().to_matrix(),
        }
    }

    pub fn row_space(m: &Matrix) -> Self {
        let mut ech = Echelon::new(m.cols());
        for row in m.row_iter() {
            ech.insert(row);
        }
        Self::from_echelon(&ech)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[Scalar]> + '_ {
        self.basis.row_iter()
    }

    /// Leading column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .row_iter()
            .map(|r| {
                r.iter()
                    .position(|x| !x.is_zero())
                    .expect("rref basis has no zero rows")
            })
            .collect()
    }

    fn check(&self, len: usize) -> Result<()> {
        if len != self.ambient_dim {
            return Err(Error::Dimension {
                expected: self.ambient_dim,
                found: len,
            });
        }
        Ok(())
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        self.check(v.len())?;
        let mut w = v.to_vec();
        for (row, p) in self.basis.row_iter().zip(self.pivots()) {
            if !w[p].is_zero() {
                let c = -w[p].clone();
                axpy(&mut w, &c, row);
            }
        }
        Ok(is_zero_vec(&w))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other.ambient_dim)?;
        Subspace::span(
            self.ambient_dim,
            self.basis_vectors()
                .chain(other.basis_vectors())
                .map(<[Scalar]>::to_vec),
        )
    }

    /// `self ⊆ other`
    pub fn le(&self, other: &Subspace) -> Result<bool> {
        self.check(other.ambient_dim)?;
        Ok(self.sum(other)?.dim() == other.dim())
    }

    /// Image under a linear map given as a matrix acting on row vectors.
    pub fn image(&self, map: &Matrix) -> Result<Subspace> {
        self.check(map.rows())?;
        let images = self.basis_vectors().map(|v| map.apply(v)).collect::<Result<Vec<_>>>()?;
        Subspace::span(map.cols(), images)
    }
}

pub fn contains(s: &Subspace, v: &[Scalar]) -> Result<bool> {
    s.contains(v)
}

pub fn subspace_sum(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.sum(b)
}

pub fn subspace_le(a: &Subspace, b: &Subspace) -> Result<bool> {
    a.le(b)
}

/// `{x : A x = 0}` for the column vector convention.
pub fn right_kernel(a: &Matrix) -> Subspace {
    let mut ech = Echelon::new(a.cols());
    for row in a.row_iter() {
        ech.insert(row);
    }
    let basis = ech.to_rref().right_kernel_basis();
    Subspace::span(a.cols(), basis).expect("kernel vectors have the ambient length")
}

/// `{v : v M = 0}`, the kernel of `M` acting on row vectors.
pub fn left_kernel(m: &Matrix) -> Subspace {
    right_kernel(&m.transpose())
}
