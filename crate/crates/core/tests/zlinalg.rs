mod common;

use common::*;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use semifact::zlinalg::{
    coker_invariants, congruence_lattice, image_lattice, kernel, rank, snf, solve_diophantine, Congruence, IntMatrix,
    Modulus,
};

fn matrix_strategy(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, c), r)
    })
}

fn int(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(rows)
}

fn bigs(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn snf_examples() {
    let n = IntMatrix::from_rows(&[[3, 2, -6, 0, 0], [0, 0, 6, 15, 10]]);
    assert_eq!(snf(&n).diagonal, bigs(&[1, 1]));
    let id = snf(&IntMatrix::identity(3));
    assert_eq!(id.diagonal, bigs(&[1, 1, 1]));
    assert_eq!(id.left, IntMatrix::identity(3));
    assert_eq!(id.right, IntMatrix::identity(3));
    assert_eq!(snf(&IntMatrix::from_rows(&[[2, 0], [0, 4]])).diagonal, bigs(&[2, 4]));
    assert_eq!(snf(&IntMatrix::from_rows(&[[4, 0], [0, 6]])).diagonal, bigs(&[2, 12]));
    assert_eq!(snf(&IntMatrix::zeros(2, 3)).diagonal, bigs(&[0, 0]));
}

#[test]
fn rank_examples() {
    assert_eq!(rank(&IntMatrix::zeros(3, 4)), 0);
    // a product of 4x3 and 3x6 factors of full rank
    let a = IntMatrix::from_rows(&[[1, 0, 2], [0, 1, 1], [3, 1, 0], [1, 1, 1]]);
    let b = IntMatrix::from_rows(&[[1, 2, 0, 1, 0, 3], [0, 1, 1, 0, 2, 1], [2, 0, 1, 1, 1, 0]]);
    assert_eq!(rank(&a.mul(&b)), 3);
}

#[test]
fn diophantine_examples() {
    let n = IntMatrix::from_rows(&[[3, 2, -6, 0, 0], [0, 0, 6, 15, 10]]);
    let b = bigs(&[1, 0]);
    let x = solve_diophantine(&n, &b).unwrap().unwrap();
    assert_eq!(n.mul_vec(&x), b);
    assert_eq!(n.mul_vec(&bigs(&[1, -1, 0, 0, 0])), b);
    let zero = solve_diophantine(&n, &bigs(&[0, 0])).unwrap().unwrap();
    assert!(is_zero_vec(&zero));
    assert_eq!(solve_diophantine(&IntMatrix::from_rows(&[[2]]), &bigs(&[1])).unwrap(), None);
    assert!(solve_diophantine(&n, &bigs(&[1])).is_err());
}

#[test]
fn lattice_examples() {
    let l = image_lattice(&IntMatrix::from_rows(&[[2, 0], [0, 3]]));
    assert_eq!(l.vectors(), [bigs(&[2, 0]), bigs(&[0, 3])]);
    let l = image_lattice(&IntMatrix::from_rows(&[[1, 1], [1, 1]]));
    assert_eq!(l.vectors(), [bigs(&[1, 1])]);
    // the triangle Laplacian spans an index-3 sublattice of the sum-zero plane
    let lap = IntMatrix::from_rows(&[[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]);
    assert_eq!(snf(&lap).diagonal, bigs(&[1, 3, 0]));
    let img = image_lattice(&lap);
    assert_eq!(img.rank(), 2);
    assert!(img.contains(&bigs(&[3, -3, 0])));
    assert!(!img.contains(&bigs(&[1, -1, 0])));

    let eq = |m: Modulus| congruence_lattice(2, &[Congruence { row: bigs(&[1, -1]), modulus: m }]).unwrap();
    assert_eq!(eq(Modulus::Finite(BigInt::from(4))).vectors(), [bigs(&[1, 1]), bigs(&[0, 4])]);
    assert_eq!(eq(Modulus::Infinite).vectors(), [bigs(&[1, 1])]);
    let free = congruence_lattice(3, &[]).unwrap();
    assert_eq!(free.vectors(), [bigs(&[1, 0, 0]), bigs(&[0, 1, 0]), bigs(&[0, 0, 1])]);
    assert!(congruence_lattice(3, &[Congruence { row: bigs(&[1]), modulus: Modulus::Infinite }]).is_err());
}

#[test]
fn cokernel_examples() {
    let lap = IntMatrix::from_rows(&[[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]);
    assert_eq!(coker_invariants(&lap), (1, bigs(&[3])));
    assert_eq!(coker_invariants(&IntMatrix::identity(3)), (0, vec![]));
    assert_eq!(coker_invariants(&IntMatrix::zeros(2, 2)), (2, vec![]));
}

#[test]
fn matrix_text_format() {
    let m: IntMatrix = "2 3\n1 -2 3\n0 4 5\n".parse().unwrap();
    assert_eq!(m, IntMatrix::from_rows(&[[1, -2, 3], [0, 4, 5]]));
    assert_eq!(m.to_string().parse::<IntMatrix>().unwrap(), m);
    assert!("2 2\n1 2 3".parse::<IntMatrix>().is_err());
}

/// Every `x` in `[-r, r]^n`.
fn boxed(n: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| (-r..=r).map(move |x| {
                let mut w = v.clone();
                w.push(x);
                w
            }))
            .collect();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn snf_contract_and_minors(m in matrix_strategy(6, 6, 30)) {
        let a = int(&m);
        let d = snf(&a);
        prop_assert_eq!(d.verify(&a), Ok(()));
        prop_assert!(d.left.det().abs().is_one() && d.right.det().abs().is_one());
        let oracle: Vec<BigInt> = invariant_factors_by_minors(&to_i128(&a)).into_iter().map(big).collect();
        prop_assert_eq!(d.diagonal, oracle);
    }

    #[test]
    fn snf_of_structured_matrices(m in matrix_strategy(5, 5, 3), k in 1i64..40) {
        // scaled and duplicated rows stress divisibility and rank deficiency
        let mut rows: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|x| x * k).collect()).collect();
        rows.push(rows[0].clone());
        let a = int(&rows);
        let d = snf(&a);
        prop_assert_eq!(d.verify(&a), Ok(()));
        prop_assert!(d.rank() < rows.len());
        prop_assert!(d.diagonal.iter().all(|x| (x % BigInt::from(k)).is_zero()));
    }

    #[test]
    fn rank_is_invariant_under_transpose(m in matrix_strategy(6, 6, 5)) {
        let a = int(&m);
        prop_assert_eq!(rank(&a), rank(&a.transpose()));
        let k = kernel(&a);
        prop_assert_eq!(k.rows(), a.cols() - rank(&a));
        prop_assert!(a.mul(&k.transpose()).is_zero());
    }

    #[test]
    fn diophantine_agrees_with_box_search(m in matrix_strategy(3, 4, 3), b in prop::collection::vec(-4i64..=4, 3)) {
        let a = int(&m);
        let b = bigs(&b[..a.rows()]);
        match solve_diophantine(&a, &b).unwrap() {
            Some(x) => prop_assert_eq!(a.mul_vec(&x), b),
            None => {
                for x in boxed(a.cols(), 4) {
                    prop_assert_ne!(a.mul_vec(&bigs(&x)), b.clone());
                }
            }
        }
    }

    #[test]
    fn solvable_right_hand_sides_are_solved(m in matrix_strategy(3, 4, 5), x in prop::collection::vec(-5i64..=5, 4)) {
        let a = int(&m);
        let b = a.mul_vec(&bigs(&x[..a.cols()]));
        let y = solve_diophantine(&a, &b).unwrap().expect("b lies in the image");
        prop_assert_eq!(a.mul_vec(&y), b);
    }

    #[test]
    fn congruence_lattice_membership(
        rows in prop::collection::vec((prop::collection::vec(-2i64..=2, 3), 0u64..6), 0..3)
    ) {
        let constraints: Vec<Congruence> = rows
            .iter()
            .map(|(r, m)| Congruence {
                row: bigs(r),
                modulus: if *m == 0 { Modulus::Infinite } else { Modulus::Finite(BigInt::from(*m)) },
            })
            .collect();
        let holds = |x: &[i64]| {
            rows.iter().all(|(r, m)| {
                let s: i64 = r.iter().zip(x).map(|(a, b)| a * b).sum();
                if *m == 0 { s == 0 } else { s % *m as i64 == 0 }
            })
        };
        let l = congruence_lattice(3, &constraints).unwrap();
        prop_assert_eq!(rank(l.matrix()), l.rank());
        for v in l.vectors() {
            let small: Vec<i64> = v.iter().map(|x| i64::try_from(x).unwrap()).collect();
            prop_assert!(holds(&small));
        }
        for x in boxed(3, 4) {
            prop_assert_eq!(l.contains(&bigs(&x)), holds(&x), "{:?}", x);
        }
        // with only finite moduli the lattice has full rank and index dividing their product
        if rows.iter().all(|(_, m)| *m > 0) {
            let product: u64 = rows.iter().map(|(_, m)| m).product();
            let index = l.index().unwrap();
            prop_assert!((BigInt::from(product) % &index).is_zero());
        }
    }

    #[test]
    fn image_lattice_spans_columns(m in matrix_strategy(4, 4, 6)) {
        let a = int(&m);
        let l = image_lattice(&a);
        prop_assert_eq!(l.rank(), rank(&a));
        for j in 0..a.cols() {
            prop_assert!(l.contains(&a.col_vector(j)));
        }
        for v in l.vectors() {
            prop_assert!(solve_diophantine(&a, &v).unwrap().is_some());
        }
    }

    #[test]
    fn cokernel_counts(m in matrix_strategy(5, 5, 8)) {
        let a = int(&m);
        let (free, torsion) = coker_invariants(&a);
        prop_assert_eq!(free, a.rows() - rank(&a));
        prop_assert!(torsion.iter().all(|t| *t > BigInt::one()));
        prop_assert!(torsion.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
    }
}

#[test]
fn big_entries_stay_exact() {
    let big: BigInt = BigInt::one() << 100u32;
    let mut m = IntMatrix::zeros(2, 2);
    m[(0, 0)] = big.clone() * 6;
    m[(0, 1)] = big.clone() * 4;
    m[(1, 0)] = big.clone() * 10;
    m[(1, 1)] = BigInt::from(7);
    let d = snf(&m);
    assert_eq!(d.verify(&m), Ok(()));
    assert_eq!(d.diagonal[0], BigInt::from(1));
    assert_eq!(d.diagonal[1].abs(), m.det().abs());
}
