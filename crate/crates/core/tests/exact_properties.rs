use fdim_core::exact::{integer_kernel, semibasis_of, IntMatrix, Lattice};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn small_matrix() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1..=4usize, 1..=4usize).prop_flat_map(|(r, c)| {
        (Just(c), prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
    })
}

/// Determinant by cofactor expansion; fine for the 4×4 sizes used here.
fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> =
                    m[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect()).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    (0..n)
        .flat_map(|last| {
            subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

/// gcd of all `k × k` minors.
fn minor_gcd(a: &[Vec<i64>], k: usize) -> i128 {
    let cols = a[0].len();
    let mut g = 0i128;
    for rs in subsets(a.len(), k) {
        for cs in subsets(cols, k) {
            let m: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| a[i][j] as i128).collect()).collect();
            g = g.gcd(&det(&m));
        }
    }
    g
}

fn entry(m: &IntMatrix, i: usize, j: usize) -> BigInt {
    m.row(i)[j].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn smith_form_diagonalizes((cols, rows) in small_matrix()) {
        let a = IntMatrix::from_i64_rows(cols, &rows).unwrap();
        let snf = a.smith_normal_form();
        let prod = snf.left.mul(&a).unwrap().mul(&snf.right).unwrap();
        for i in 0..prod.rows() {
            for j in 0..prod.cols() {
                let expect = if i == j { snf.diagonal[i].clone() } else { BigInt::zero() };
                prop_assert_eq!(entry(&prod, i, j), expect);
            }
        }
        prop_assert!(snf.left.det().unwrap().abs() == BigInt::from(1));
        prop_assert!(snf.right.det().unwrap().abs() == BigInt::from(1));
        for w in snf.diagonal.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
        }
        // d_1 ... d_k is the gcd of the k × k minors
        let mut running = BigInt::from(1);
        for k in 1..=snf.diagonal.len() {
            running *= &snf.diagonal[k - 1];
            prop_assert_eq!(running.clone(), BigInt::from(minor_gcd(&rows, k)));
        }
    }

    #[test]
    fn integer_kernel_is_a_saturated_kernel((cols, rows) in small_matrix()) {
        let a = IntMatrix::from_i64_rows(cols, &rows).unwrap();
        let ker = integer_kernel(&a);
        prop_assert_eq!(ker.len(), cols - a.rank());
        for v in &ker {
            for row in &rows {
                let dot: BigInt = row.iter().zip(v).map(|(&x, y)| BigInt::from(x) * y).sum();
                prop_assert!(dot.is_zero());
            }
        }
        let lat = Lattice::from_generators(cols, &ker).unwrap();
        prop_assert!(lat.is_saturated());
    }

    #[test]
    fn semibasis_lifts_quotient((cols, rows) in small_matrix()) {
        // the row lattice inside Z^cols: a semibasis of the quotient completes a basis of
        // the saturation of the rows to a basis of Z^cols
        let gens: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let sub = Lattice::from_generators(cols, &gens).unwrap();
        let full = Lattice::full(cols);
        let sb = semibasis_of(&full, &sub).unwrap();
        prop_assert_eq!(sb.vectors.len(), cols - sub.rank());
        let mut all = sub.saturation().basis().to_vec();
        all.extend(sb.vectors.iter().cloned());
        let m = IntMatrix::from_rows(cols, &all).unwrap();
        prop_assert_eq!(m.det().unwrap().abs(), BigInt::from(1));
    }
}
