//! Lie algebras given by structure constants.
//!
//! Only the brackets `[e_i, e_j]` with `i < j` are stored; antisymmetry supplies
//! the rest. Every [`LieAlgebra`] has passed [`validate`], so it satisfies the
//! Jacobi identity and is nilpotent.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactlin::{axpy, int, is_zero_vec, left_kernel, zero_vec, Echelon, Matrix, Scalar, Subspace};

fn pair_index(dim: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < dim);
    // row-major index into the strict upper triangle
    i * dim - i * (i + 1) / 2 + (j - i - 1)
}

/// `(i, j, [(k, c), …])`: `[e_i, e_j] = Σ c·e_k` with integer coefficients.
pub type IntBracket<'a> = (usize, usize, &'a [(usize, i64)]);

/// Raw bracket table, not yet checked against the Lie axioms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StructureConstants {
    dim: usize,
    upper: Vec<Vec<Scalar>>,
}

impl StructureConstants {
    pub fn new(dim: usize) -> Self {
        StructureConstants {
            dim,
            upper: vec![zero_vec(dim); dim * dim.saturating_sub(1) / 2],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sets `[e_i, e_j] = value` (and implicitly `[e_j, e_i] = -value`).
    pub fn set(&mut self, i: usize, j: usize, value: Vec<Scalar>) -> Result<()> {
        for idx in [i, j] {
            if idx >= self.dim {
                return Err(Error::BadIndex {
                    index: idx,
                    dim: self.dim,
                });
            }
        }
        if value.len() != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                found: value.len(),
            });
        }
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.upper[pair_index(self.dim, i, j)] = value,
            std::cmp::Ordering::Greater => {
                self.upper[pair_index(self.dim, j, i)] = value.into_iter().map(|x| -x).collect()
            }
            std::cmp::Ordering::Equal if is_zero_vec(&value) => {}
            std::cmp::Ordering::Equal => return Err(Error::JacobiViolation(i, i, i)),
        }
        Ok(())
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<Scalar> {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.upper[pair_index(self.dim, i, j)].clone(),
            std::cmp::Ordering::Greater => self.upper[pair_index(self.dim, j, i)].iter().map(|x| -x).collect(),
            std::cmp::Ordering::Equal => zero_vec(self.dim),
        }
    }

    /// Stored `[e_i, e_j]` for `i < j`.
    pub fn upper(&self, i: usize, j: usize) -> &[Scalar] {
        &self.upper[pair_index(self.dim, i, j)]
    }

    /// Nonzero brackets `(i, j, [e_i, e_j])` with `i < j`, lexicographically.
    pub fn nonzero_brackets(&self) -> impl Iterator<Item = (usize, usize, &[Scalar])> + '_ {
        (0..self.dim)
            .flat_map(move |i| (i + 1..self.dim).map(move |j| (i, j)))
            .map(move |(i, j)| (i, j, self.upper(i, j)))
            .filter(|(_, _, v)| !is_zero_vec(v))
    }

    fn check_len(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_len(x)?;
        self.check_len(y)?;
        let mut out = zero_vec(self.dim);
        for (i, j, v) in self.nonzero_brackets() {
            // x_i y_j - x_j y_i
            let c = &x[i] * &y[j] - &x[j] * &y[i];
            axpy(&mut out, &c, v);
        }
        Ok(out)
    }

    /// Lower central series `γ_1 ⊇ γ_2 ⊇ …`, ending at the first zero term
    /// (which is not included). Fails when the series stabilizes above zero.
    fn lower_central_series(&self) -> Result<Vec<Subspace>> {
        let n = self.dim;
        let mut series = Vec::new();
        let mut current = Subspace::full(n);
        while !current.is_zero() {
            let mut ech = Echelon::new(n);
            for v in current.basis_vectors() {
                for j in 0..n {
                    let w = self.bracket(v, &crate::exactlin::unit_vec(n, j))?;
                    if !is_zero_vec(&w) {
                        ech.insert(&w);
                    }
                }
            }
            let next = Subspace::from_echelon(&ech);
            if next.dim() == current.dim() {
                return Err(Error::NotNilpotent {
                    stable_dim: current.dim(),
                });
            }
            series.push(current);
            current = next;
        }
        Ok(series)
    }

    fn jacobi(&self) -> Result<()> {
        let n = self.dim;
        let e = |i| crate::exactlin::unit_vec(n, i);
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut sum = self.bracket(&self.basis_bracket(i, j), &e(k))?;
                    for w in [
                        self.bracket(&self.basis_bracket(j, k), &e(i))?,
                        self.bracket(&self.basis_bracket(k, i), &e(j))?,
                    ] {
                        axpy(&mut sum, &int(1), &w);
                    }
                    if !is_zero_vec(&sum) {
                        return Err(Error::JacobiViolation(i + 1, j + 1, k + 1));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Checks nilpotency and then the Jacobi identity on every basis triple.
/// Triples in the error are reported 1-based.
pub fn validate(sc: &StructureConstants) -> Result<()> {
    sc.lower_central_series()?;
    sc.jacobi()
}

/// A validated nilpotent Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    sc: StructureConstants,
    labels: Option<Vec<String>>,
    lcs: Vec<Subspace>,
}

impl LieAlgebra {
    pub fn new(sc: StructureConstants) -> Result<Self> {
        let lcs = sc.lower_central_series()?;
        sc.jacobi()?;
        Ok(LieAlgebra { sc, labels: None, lcs })
    }

    /// Abelian algebra `A(n)`.
    pub fn abelian(n: usize) -> Self {
        LieAlgebra::new(StructureConstants::new(n)).expect("abelian algebras are nilpotent")
    }

    /// Builds from integer brackets `(i, j, [(k, c), …])`, 0-based.
    pub fn from_int_brackets(dim: usize, brackets: &[IntBracket]) -> Result<Self> {
        let mut sc = StructureConstants::new(dim);
        for &(i, j, terms) in brackets {
            let mut v = zero_vec(dim);
            for &(k, c) in terms {
                if k >= dim {
                    return Err(Error::BadIndex { index: k, dim });
                }
                v[k] += int(c);
            }
            sc.set(i, j, v)?;
        }
        LieAlgebra::new(sc)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.sc.dim
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        &self.sc
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<Scalar> {
        self.sc.basis_bracket(i, j)
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        self.sc.bracket(x, y)
    }

    pub fn is_abelian(&self) -> bool {
        self.sc.nonzero_brackets().next().is_none()
    }

    /// Index of the last nonzero term of the lower central series (0 for the zero algebra).
    pub fn nilpotency_class(&self) -> usize {
        self.lcs.len()
    }

    /// Nonzero terms `γ_1 = L ⊇ γ_2 ⊇ … ⊇ γ_c`.
    pub fn lower_central_series(&self) -> Vec<Ideal> {
        self.lcs.iter().cloned().map(|space| Ideal { space }).collect()
    }

    /// `γ_k(L)` for `k ≥ 1`; zero past the class.
    pub fn gamma(&self, k: usize) -> Ideal {
        let space = self
            .lcs
            .get(k.saturating_sub(1))
            .cloned()
            .unwrap_or_else(|| Subspace::zero(self.dim()));
        Ideal { space }
    }

    pub fn derived_subalgebra(&self) -> Ideal {
        self.gamma(2)
    }

    pub fn center(&self) -> Ideal {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n * n);
        for i in 0..n {
            for j in 0..n {
                for (k, x) in self.basis_bracket(i, j).into_iter().enumerate() {
                    m.set(i, j * n + k, x);
                }
            }
        }
        Ideal { space: left_kernel(&m) }
    }

    /// `Some(dim L²)` when `L² = Z(L)` and `L` is nonabelian.
    pub fn generalized_heisenberg_rank(&self) -> Option<usize> {
        let derived = self.derived_subalgebra();
        (!self.is_abelian() && derived == self.center()).then(|| derived.dim())
    }

    pub fn quotient(&self, ideal: &Ideal) -> Result<(LieAlgebra, Morphism)> {
        let n = self.dim();
        if ideal.space.ambient_dim() != n {
            return Err(Error::Dimension {
                expected: n,
                found: ideal.space.ambient_dim(),
            });
        }
        let mut ech = Echelon::new(n);
        for v in ideal.space.basis_vectors() {
            ech.insert(v);
        }
        let rref = ech.to_rref();
        let free = rref.free_columns().to_vec();
        let q = free.len();
        let mut projection = Matrix::zeros(n, q);
        for i in 0..n {
            for (c, x) in rref.project_sparse([(i, int(1))]).into_iter().enumerate() {
                projection.set(i, c, x);
            }
        }
        let mut sc = StructureConstants::new(q);
        for (a, &fa) in free.iter().enumerate() {
            for (b, &fb) in free.iter().enumerate().skip(a + 1) {
                sc.set(a, b, rref.project(&self.basis_bracket(fa, fb)))?;
            }
        }
        let mut quotient = LieAlgebra::new(sc)?;
        if let Some(labels) = &self.labels {
            quotient.labels = Some(free.iter().map(|&f| labels[f].clone()).collect());
        }
        Ok((quotient, Morphism { matrix: projection }))
    }

    /// Wraps `space` as an ideal after checking `[L, space] ⊆ space`.
    pub fn ideal(&self, space: Subspace) -> Result<Ideal> {
        Ideal::new(self, space)
    }

    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let (a, b) = (self.dim(), other.dim());
        let mut sc = StructureConstants::new(a + b);
        let embed = |v: &[Scalar], offset: usize| {
            let mut w = zero_vec(a + b);
            for (k, x) in v.iter().enumerate() {
                w[offset + k] = x.clone();
            }
            w
        };
        for (i, j, v) in self.sc.nonzero_brackets() {
            sc.set(i, j, embed(v, 0)).expect("indices in range");
        }
        for (i, j, v) in other.sc.nonzero_brackets() {
            sc.set(a + i, a + j, embed(v, a)).expect("indices in range");
        }
        let mut sum = LieAlgebra::new(sc).expect("direct sums of nilpotent algebras are nilpotent");
        if let (Some(x), Some(y)) = (&self.labels, &other.labels) {
            sum.labels = Some(x.iter().chain(y).cloned().collect());
        }
        sum
    }

    /// Rewrites the structure constants in the basis `f_i = Σ_k change[i][k] e_k`.
    pub fn change_basis(&self, change: &Matrix) -> Result<LieAlgebra> {
        let n = self.dim();
        if change.rows() != n || change.cols() != n {
            return Err(Error::Dimension {
                expected: n,
                found: change.rows(),
            });
        }
        let inverse = change.inverse().ok_or(Error::Dimension { expected: n, found: 0 })?;
        let mut sc = StructureConstants::new(n);
        for i in 0..n {
            for j in i + 1..n {
                let w = self.bracket(change.row(i), change.row(j))?;
                sc.set(i, j, inverse.apply(&w)?)?;
            }
        }
        LieAlgebra::new(sc)
    }

    /// Conjugates by a pseudo-random invertible integer matrix (entries in `-2..=2`).
    pub fn random_basis_change(&self, seed: u64) -> LieAlgebra {
        let n = self.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let values: Vec<i64> = (0..n * n).map(|_| rng.gen_range(-2..=2)).collect();
            let change = Matrix::from_i64(n, n, &values);
            if change.inverse().is_some() {
                return self
                    .change_basis(&change)
                    .expect("invertible change of basis preserves the axioms");
            }
        }
    }

    /// Display name of basis element `i` (0-based).
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("e{}", i + 1),
        }
    }
}

/// Ideal of a Lie algebra, stored in the parent's coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ideal {
    space: Subspace,
}

impl Ideal {
    pub fn new(alg: &LieAlgebra, space: Subspace) -> Result<Self> {
        let n = alg.dim();
        if space.ambient_dim() != n {
            return Err(Error::Dimension {
                expected: n,
                found: space.ambient_dim(),
            });
        }
        for (vi, v) in space.basis_vectors().enumerate() {
            for j in 0..n {
                let w = alg.bracket(&crate::exactlin::unit_vec(n, j), v)?;
                if !space.contains(&w)? {
                    return Err(Error::NotAnIdeal {
                        basis: j + 1,
                        vector: vi + 1,
                    });
                }
            }
        }
        Ok(Ideal { space })
    }

    pub fn zero(alg: &LieAlgebra) -> Self {
        Ideal {
            space: Subspace::zero(alg.dim()),
        }
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn le(&self, other: &Ideal) -> Result<bool> {
        self.space.le(&other.space)
    }
}

impl PartialEq<Subspace> for Ideal {
    fn eq(&self, other: &Subspace) -> bool {
        &self.space == other
    }
}

/// Linear map between coordinate spaces; row `i` of `matrix` is the image of `e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub matrix: Matrix,
}

impl Morphism {
    pub fn identity(n: usize) -> Self {
        Morphism {
            matrix: Matrix::identity(n),
        }
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.matrix.apply(v)
    }

    pub fn image(&self) -> Subspace {
        Subspace::row_space(&self.matrix)
    }

    /// Bracket compatibility on basis pairs.
    pub fn is_lie_morphism(&self, source: &LieAlgebra, target: &LieAlgebra) -> Result<bool> {
        if self.source_dim() != source.dim() || self.target_dim() != target.dim() {
            return Ok(false);
        }
        for i in 0..source.dim() {
            for j in i + 1..source.dim() {
                let lhs = self.apply(&source.basis_bracket(i, j))?;
                let rhs = target.bracket(self.matrix.row(i), self.matrix.row(j))?;
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::unit_vec;

    fn heisenberg1() -> LieAlgebra {
        LieAlgebra::from_int_brackets(3, &[(0, 1, &[(2, 1)])]).unwrap()
    }

    fn raw(dim: usize, brackets: &[IntBracket]) -> StructureConstants {
        let mut sc = StructureConstants::new(dim);
        for &(i, j, terms) in brackets {
            let mut v = zero_vec(dim);
            for &(k, c) in terms {
                v[k] = int(c);
            }
            sc.set(i, j, v).unwrap();
        }
        sc
    }

    #[test]
    fn pair_index_is_a_bijection() {
        let n = 6;
        let mut seen = vec![false; n * (n - 1) / 2];
        for i in 0..n {
            for j in i + 1..n {
                let k = pair_index(n, i, j);
                assert!(!seen[k]);
                seen[k] = true;
            }
        }
        assert!(seen.into_iter().all(|s| s));
    }

    #[test]
    fn validate_accepts_heisenberg() {
        assert_eq!(validate(heisenberg1().structure_constants()), Ok(()));
    }

    #[test]
    fn validate_rejects_non_nilpotent() {
        let sc = raw(3, &[(0, 1, &[(2, 1)]), (0, 2, &[(0, 1)])]);
        assert!(matches!(validate(&sc), Err(Error::NotNilpotent { stable_dim: 2 })));
        let so3 = raw(3, &[(0, 1, &[(2, 1)]), (1, 2, &[(0, 1)]), (2, 0, &[(1, 1)])]);
        assert!(matches!(validate(&so3), Err(Error::NotNilpotent { stable_dim: 3 })));
    }

    #[test]
    fn validate_reports_jacobi_violation() {
        let sc = raw(4, &[(0, 1, &[(2, 1)]), (1, 2, &[(3, 1)]), (0, 2, &[(3, 1)])]);
        assert!(validate(&sc).is_ok());
        // nilpotent as a table, but [[e1,e2],e3] = -e5 with the other two terms zero
        let sc = raw(5, &[(0, 1, &[(3, 1)]), (2, 3, &[(4, 1)])]);
        assert_eq!(validate(&sc), Err(Error::JacobiViolation(1, 2, 3)));
    }

    #[test]
    fn bracket_is_bilinear_and_alternating() {
        let h = heisenberg1();
        assert_eq!(h.bracket(&unit_vec(3, 0), &unit_vec(3, 1)).unwrap(), unit_vec(3, 2));
        let v = vec![int(2), int(-3), int(5)];
        assert!(is_zero_vec(&h.bracket(&v, &v).unwrap()));
        assert!(h.bracket(&v, &[int(1)]).is_err());
    }

    #[test]
    fn heisenberg_invariants() {
        let h = heisenberg1();
        assert_eq!(h.nilpotency_class(), 2);
        assert_eq!(h.derived_subalgebra(), h.center());
        assert_eq!(h.center().dim(), 1);
        assert_eq!(h.generalized_heisenberg_rank(), Some(1));
    }

    #[test]
    fn abelian_invariants() {
        let a = LieAlgebra::abelian(4);
        assert_eq!(a.nilpotency_class(), 1);
        assert!(a.derived_subalgebra().space().is_zero());
        assert_eq!(a.center().dim(), 4);
        assert_eq!(a.generalized_heisenberg_rank(), None);
        assert_eq!(LieAlgebra::abelian(0).nilpotency_class(), 0);
    }

    #[test]
    fn class_three_series() {
        // filiform: [e1,e2]=e3, [e1,e3]=e4
        let f = LieAlgebra::from_int_brackets(4, &[(0, 1, &[(2, 1)]), (0, 2, &[(3, 1)])]).unwrap();
        let lcs = f.lower_central_series();
        assert_eq!(lcs.iter().map(Ideal::dim).collect::<Vec<_>>(), vec![4, 2, 1]);
        assert_eq!(f.nilpotency_class(), 3);
        assert_eq!(f.gamma(3).dim(), 1);
        assert_eq!(f.gamma(4).dim(), 0);
    }

    #[test]
    fn quotients() {
        let h = heisenberg1();
        let (q, proj) = h.quotient(&h.derived_subalgebra()).unwrap();
        assert_eq!(q.dim(), 2);
        assert!(q.is_abelian());
        assert!(proj.is_lie_morphism(&h, &q).unwrap());
        let (same, id) = h.quotient(&Ideal::zero(&h)).unwrap();
        assert_eq!(same.structure_constants(), h.structure_constants());
        assert_eq!(id, Morphism::identity(3));
    }

    #[test]
    fn not_an_ideal() {
        let h = heisenberg1();
        let x = Subspace::span(3, [unit_vec(3, 0)]).unwrap();
        assert!(matches!(h.ideal(x), Err(Error::NotAnIdeal { .. })));
    }

    #[test]
    fn direct_sums() {
        let s = heisenberg1().direct_sum(&LieAlgebra::abelian(2));
        assert_eq!(s.dim(), 5);
        assert_eq!(s.derived_subalgebra().dim(), 1);
        assert_eq!(s.nilpotency_class(), 2);
        let a = LieAlgebra::abelian(2).direct_sum(&LieAlgebra::abelian(3));
        assert_eq!(a, LieAlgebra::abelian(5));
        let hh = heisenberg1().direct_sum(&heisenberg1());
        assert_eq!(hh.generalized_heisenberg_rank(), Some(2));
    }

    #[test]
    fn basis_changes() {
        let h = heisenberg1();
        assert_eq!(h.change_basis(&Matrix::identity(3)).unwrap(), h);
        assert_eq!(LieAlgebra::abelian(3).random_basis_change(7), LieAlgebra::abelian(3));
        for seed in 0..5 {
            let g = h.random_basis_change(seed);
            assert_eq!(g.nilpotency_class(), 2);
            assert_eq!(g.derived_subalgebra().dim(), 1);
        }
    }
}
