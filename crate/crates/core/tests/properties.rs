use lietensor_core::catalog::{self, AlgebraSpec};
use lietensor_core::exactlin::{int, is_zero_vec, left_kernel, quotient_dim, rank, right_kernel, rref, Matrix, Scalar};
use lietensor_core::tensorcalc::{
    exact_sequence_audit, exterior_center, exterior_square, left_bracket_relation, right_bracket_relation,
    square_submodule, tensor_square, triple_exterior_recipe, triple_tensor_recipe, triple_tensor_structural,
};
use lietensor_core::theorems::{is_capable, schur_multiplier_dim, verify_bound};
use lietensor_core::{LieAlgebra, StructureConstants, Subspace};
use proptest::prelude::*;

const PRIMES: [u64; 3] = [1_000_000_007, 998_244_353, 2_147_483_647];

fn rank_mod(rows: &[Vec<i64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let inv = |a: u64| {
        let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc
    };
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pivot);
        let s = inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = *x * s % p;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        r += 1;
    }
    r
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-5i64..=5, c), r))
}

fn to_matrix(rows: &[Vec<i64>]) -> Matrix {
    let cols = rows[0].len();
    Matrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| int(x)).collect())).unwrap()
}

/// `V ⊕ W` with `[v_i, v_j] ∈ W` and `W` central: class at most two.
fn class_two() -> impl Strategy<Value = LieAlgebra> {
    (2usize..=4, 1usize..=3).prop_flat_map(|(nv, nw)| {
        let pairs = nv * (nv - 1) / 2;
        prop::collection::vec(prop::collection::vec(-2i64..=2, nw), pairs).prop_map(move |coeffs| {
            let n = nv + nw;
            let mut sc = StructureConstants::new(n);
            let mut it = coeffs.into_iter();
            for i in 0..nv {
                for j in i + 1..nv {
                    let mut v = vec![int(0); n];
                    for (k, c) in it.next().unwrap().into_iter().enumerate() {
                        v[nv + k] = int(c);
                    }
                    sc.set(i, j, v).unwrap();
                }
            }
            LieAlgebra::new(sc).unwrap()
        })
    })
}

fn dims(alg: &LieAlgebra) -> Vec<usize> {
    vec![
        tensor_square(alg).unwrap().quotient_dim(),
        exterior_square(alg).unwrap().quotient_dim(),
        triple_tensor_structural(alg).unwrap().quotient_dim(),
        triple_tensor_recipe(alg).unwrap(),
        triple_exterior_recipe(alg).unwrap(),
        schur_multiplier_dim(alg).unwrap(),
        is_capable(alg).unwrap() as usize,
    ]
}

proptest! {
    #[test]
    fn rref_is_idempotent(rows in small_matrix()) {
        let (once, r) = rref(&to_matrix(&rows));
        let (twice, r2) = rref(&once);
        prop_assert_eq!(once, twice);
        prop_assert_eq!(r, r2);
    }

    #[test]
    fn rref_ignores_row_order_and_scaling(rows in small_matrix(), shift in 0usize..6, scale in prop::sample::select(vec![-3i64, -1, 2, 5])) {
        let mut moved = rows.clone();
        let len = moved.len();
        moved.rotate_left(shift % len);
        for x in moved[0].iter_mut() {
            *x *= scale;
        }
        prop_assert_eq!(rref(&to_matrix(&rows)).0, rref(&to_matrix(&moved)).0);
    }

    #[test]
    fn rank_agrees_with_modular_elimination(rows in small_matrix()) {
        let r = rank(&to_matrix(&rows));
        for p in PRIMES {
            prop_assert_eq!(r, rank_mod(&rows, p));
        }
    }

    #[test]
    fn quotient_and_kernels_complement_rank(rows in small_matrix()) {
        let m = to_matrix(&rows);
        let r = rank(&m);
        prop_assert_eq!(quotient_dim(m.cols(), &m).unwrap() + r, m.cols());
        prop_assert_eq!(right_kernel(&m).dim() + r, m.cols());
        prop_assert_eq!(left_kernel(&m).dim() + r, m.rows());
        for v in right_kernel(&m).basis_vectors() {
            prop_assert!(is_zero_vec(&m.transpose().apply(v).unwrap()));
        }
        for v in left_kernel(&m).basis_vectors() {
            prop_assert!(is_zero_vec(&m.apply(v).unwrap()));
        }
    }

    #[test]
    fn subspace_contains_its_spanning_rows(rows in small_matrix()) {
        let m = to_matrix(&rows);
        let s = Subspace::row_space(&m);
        for row in m.row_iter() {
            prop_assert!(s.contains(row).unwrap());
        }
        prop_assert_eq!(s.dim(), rank(&m));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn parse_emit_round_trip(alg in class_two()) {
        let back = catalog::parse(&catalog::emit(&alg)).unwrap();
        prop_assert_eq!(back.structure_constants(), alg.structure_constants());
    }

    #[test]
    fn class_two_identities(alg in class_two()) {
        let t = tensor_square(&alg).unwrap();
        let w = exterior_square(&alg).unwrap();
        let sq = square_submodule(&alg, &t).unwrap();
        let m = alg.derived_subalgebra().dim();
        prop_assert_eq!(t.quotient_dim(), w.quotient_dim() + sq.dim());
        let derived = alg.derived_subalgebra();
        prop_assert_eq!(&t.lambda().image(), derived.space());
        prop_assert!(t.is_abelian());
        prop_assert_eq!(w.quotient_dim(), schur_multiplier_dim(&alg).unwrap() + m);
        let cube = triple_tensor_structural(&alg).unwrap();
        prop_assert!(cube.is_abelian());
        prop_assert!(cube.quotient_dim() <= triple_tensor_recipe(&alg).unwrap());
    }

    #[test]
    fn audit_and_bound_hold(alg in class_two()) {
        prop_assert!(exact_sequence_audit(&alg).unwrap().passed());
        if !alg.is_abelian() {
            let report = verify_bound("random", &alg).unwrap();
            prop_assert!(report.all_passed(), "{}", report.render_text());
            let n = alg.dim();
            let m = alg.derived_subalgebra().dim();
            prop_assert!(triple_tensor_structural(&alg).unwrap().quotient_dim() <= n * (n - m) * (n - m));
        }
    }

    #[test]
    fn exterior_center_is_central(alg in class_two()) {
        let z = exterior_center(&alg).unwrap();
        prop_assert!(z.le(alg.center().space()).unwrap());
        prop_assert!(alg.ideal(z).is_ok());
    }

    #[test]
    fn exterior_quotient_is_antisymmetric(alg in class_two()) {
        let w = exterior_square(&alg).unwrap();
        let n = alg.dim();
        for i in 0..n {
            for j in 0..n {
                let a = w.project_symbol(w.symbols().index(i, j));
                let b: Vec<Scalar> = w.project_symbol(w.symbols().index(j, i)).into_iter().map(|x| -x).collect();
                prop_assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn relations_on_arbitrary_elements_follow_from_basis(
        alg in class_two(),
        coeffs in prop::collection::vec(-3i64..=3, 21),
    ) {
        let n = alg.dim();
        let vec_at = |k: usize| -> Vec<Scalar> { (0..n).map(|i| int(coeffs[(k * n + i) % coeffs.len()])).collect() };
        let (x, y, z) = (vec_at(0), vec_at(1), vec_at(2));
        let t = tensor_square(&alg).unwrap();
        prop_assert!(is_zero_vec(&t.project(&left_bracket_relation(&alg, &x, &y, &z).unwrap())));
        prop_assert!(is_zero_vec(&t.project(&right_bracket_relation(&alg, &x, &y, &z).unwrap())));
    }

    #[test]
    fn basis_change_preserves_dimensions(alg in class_two(), seed in any::<u64>()) {
        prop_assert_eq!(dims(&alg), dims(&alg.random_basis_change(seed)));
    }

    #[test]
    fn heisenberg_quotients_respect_the_bound(
        a in 1usize..=2,
        b in 1usize..=2,
        extra in 0usize..=1,
        c in (-2i64..=2, -2i64..=2),
    ) {
        let base = AlgebraSpec::Sum(Box::new(AlgebraSpec::Heisenberg(a)), Box::new(AlgebraSpec::Heisenberg(b)))
            .build()
            .unwrap()
            .direct_sum(&LieAlgebra::abelian(extra));
        let derived = base.derived_subalgebra();
        let z: Vec<&[Scalar]> = derived.space().basis_vectors().collect();
        let v: Vec<Scalar> = z[0].iter().zip(z[1]).map(|(p, q)| p * int(c.0) + q * int(c.1)).collect();
        let ideal = base.ideal(Subspace::span(base.dim(), [v]).unwrap()).unwrap();
        let (quotient, _) = base.quotient(&ideal).unwrap();
        prop_assert!(quotient.nilpotency_class() <= 2);
        if !quotient.is_abelian() {
            let report = verify_bound("quotient", &quotient).unwrap();
            prop_assert!(report.all_passed(), "{}", report.render_text());
        }
    }
}

#[test]
fn abelian_baselines() {
    for n in 1..=8 {
        let a = LieAlgebra::abelian(n);
        let t = tensor_square(&a).unwrap();
        assert_eq!(t.quotient_dim(), n * n);
        assert_eq!(exterior_square(&a).unwrap().quotient_dim(), n * (n - 1) / 2);
        assert_eq!(square_submodule(&a, &t).unwrap().dim(), n * (n + 1) / 2);
        assert_eq!(schur_multiplier_dim(&a).unwrap(), n * (n - 1) / 2);
    }
}

#[test]
fn catalog_is_basis_independent() {
    for spec in ["H:1", "L5_8", "L6_7_2:0"] {
        let alg = spec.parse::<AlgebraSpec>().unwrap().build().unwrap();
        let base = dims(&alg);
        for seed in 10..15 {
            assert_eq!(dims(&alg.random_basis_change(seed)), base, "{spec} seed {seed}");
        }
    }
}
