//! Hermite and Smith normal forms, saturated kernels, integer solving.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

type Rows = Vec<Vec<BigInt>>;

/// Replaces rows `p` and `q` by `(a·p + b·q, c·p + d·q)`.
fn combine_rows(m: &mut Rows, p: usize, q: usize, coeffs: [&BigInt; 4]) {
    let [a, b, c, d] = coeffs;
    for j in 0..m[p].len() {
        let x = m[p][j].clone();
        let y = m[q][j].clone();
        m[p][j] = a * &x + b * &y;
        m[q][j] = c * &x + d * &y;
    }
}

fn sub_multiple(m: &mut Rows, target: usize, source: usize, factor: &BigInt) {
    for j in 0..m[target].len() {
        let delta = factor * &m[source][j];
        m[target][j] -= delta;
    }
}

fn negate_row(m: &mut Rows, i: usize) {
    for v in m[i].iter_mut() {
        *v = -&*v;
    }
}

fn identity_rows(n: usize) -> Rows {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Row-style Hermite normal form.
///
/// Returns `(H, U)` with `U` unimodular and `U·M = H`. Pivots are positive,
/// entries above a pivot lie in `[0, pivot)`, zero rows come last.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let rows = m.rows();
    let cols = m.cols();
    let mut h = m.to_rows();
    let mut u = identity_rows(rows);
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        for i in pivot_row + 1..rows {
            if h[i][col].is_zero() {
                continue;
            }
            if h[pivot_row][col].is_zero() {
                h.swap(pivot_row, i);
                u.swap(pivot_row, i);
                continue;
            }
            let a = h[pivot_row][col].clone();
            let b = h[i][col].clone();
            let ext = a.extended_gcd(&b);
            let p = &a / &ext.gcd;
            let q = &b / &ext.gcd;
            let neg_q = -q;
            combine_rows(&mut h, pivot_row, i, [&ext.x, &ext.y, &neg_q, &p]);
            combine_rows(&mut u, pivot_row, i, [&ext.x, &ext.y, &neg_q, &p]);
        }
        if h[pivot_row][col].is_zero() {
            continue;
        }
        if h[pivot_row][col].is_negative() {
            negate_row(&mut h, pivot_row);
            negate_row(&mut u, pivot_row);
        }
        let pivot = h[pivot_row][col].clone();
        for i in 0..pivot_row {
            let f = h[i][col].div_floor(&pivot);
            if !f.is_zero() {
                sub_multiple(&mut h, i, pivot_row, &f);
                sub_multiple(&mut u, i, pivot_row, &f);
            }
        }
        pivot_row += 1;
    }
    let h = IntMatrix::from_rows(cols, h).expect("row lengths preserved");
    let u = IntMatrix::from_rows(rows, u).expect("row lengths preserved");
    (h, u)
}

/// Invariant factors `d₁ | d₂ | …` of `M`, `min(rows, cols)` of them, zeros last.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    let rows = m.rows();
    let cols = m.cols();
    let k = rows.min(cols);
    let mut a = m.to_rows();
    let mut factors = Vec::with_capacity(k);
    for t in 0..k {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => a[i][j].abs() < a[bi][bj].abs(),
                    };
                    if better {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                factors.resize(k, BigInt::zero());
                return factors;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let pivot = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &pivot;
                sub_multiple(&mut a, i, t, &q);
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &pivot;
                for row in a.iter_mut() {
                    let delta = &q * &row[t];
                    row[j] -= delta;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &pivot).is_zero()));
            match offender {
                Some(i) => {
                    for j in 0..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        factors.push(a[t][t].abs());
    }
    factors
}

/// HNF-canonical basis (as rows) of the saturated lattice `{ w : M·w = 0 }`.
pub fn integer_kernel_basis(m: &IntMatrix) -> IntMatrix {
    let n = m.cols();
    let (h, u) = hermite_normal_form(&m.transpose());
    let kernel_rows: Vec<Vec<BigInt>> = (0..n)
        .filter(|&i| h.row(i).iter().all(Zero::is_zero))
        .map(|i| u.row(i).to_vec())
        .collect();
    let basis = IntMatrix::from_rows(n, kernel_rows).expect("rows of U have length n");
    let (canonical, _) = hermite_normal_form(&basis);
    canonical
}

/// Some integer solution of `A·x = b`, or `None` when there is none.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    if b.len() != a.rows() {
        return None;
    }
    let n = a.cols();
    let m = a.rows();
    // U·Aᵀ = H, so x = yᵀ·U solves A·x = b whenever yᵀ·H = bᵀ.
    let (h, u) = hermite_normal_form(&a.transpose());
    let mut y = vec![BigInt::zero(); n];
    let mut row = 0;
    for col in 0..m {
        if row == n {
            break;
        }
        if h.get(row, col).is_zero() {
            continue;
        }
        let partial: BigInt = (0..row).map(|k| &y[k] * h.get(k, col)).sum();
        let rest = &b[col] - partial;
        let (q, r) = rest.div_rem(h.get(row, col));
        if !r.is_zero() {
            return None;
        }
        y[row] = q;
        row += 1;
    }
    let x: Vec<BigInt> = (0..n)
        .map(|j| (0..n).map(|k| &y[k] * u.get(k, j)).sum())
        .collect();
    if a.apply(&x).ok()? == b {
        Some(x)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int_vec;
    use proptest::prelude::*;

    fn is_hermite(h: &IntMatrix) -> bool {
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero = false;
        for i in 0..h.rows() {
            let pivot = (0..h.cols()).find(|&j| !h.get(i, j).is_zero());
            match pivot {
                None => seen_zero = true,
                Some(p) => {
                    if seen_zero || last_pivot.is_some_and(|lp| lp >= p) {
                        return false;
                    }
                    let pv = h.get(i, p);
                    if !pv.is_positive() {
                        return false;
                    }
                    for k in 0..i {
                        let v = h.get(k, p);
                        if v.is_negative() || v >= pv {
                            return false;
                        }
                    }
                    last_pivot = Some(p);
                }
            }
        }
        true
    }

    /// gcd of all k×k minors, by brute-force enumeration.
    fn minor_gcd(m: &IntMatrix, k: usize) -> BigInt {
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if n < k {
                return vec![];
            }
            let mut out = subsets(n - 1, k);
            for mut s in subsets(n - 1, k - 1) {
                s.push(n - 1);
                out.push(s);
            }
            out
        }
        let mut g = BigInt::zero();
        for rs in subsets(m.rows(), k) {
            for cs in subsets(m.cols(), k) {
                let entries: Vec<BigInt> = rs
                    .iter()
                    .flat_map(|&i| cs.iter().map(move |&j| m.get(i, j).clone()))
                    .collect();
                let minor = IntMatrix::new(k, k, entries)
                    .unwrap()
                    .determinant()
                    .unwrap();
                g = g.gcd(&minor);
            }
        }
        g
    }

    #[test]
    fn hnf_identity_is_fixed() {
        let id = IntMatrix::identity(2);
        let (h, u) = hermite_normal_form(&id);
        assert_eq!(h, id);
        assert_eq!(u, id);
    }

    #[test]
    fn hnf_small_example() {
        let m = IntMatrix::from_i64(2, 2, &[2, 4, 1, 3]);
        let (h, u) = hermite_normal_form(&m);
        // [[1,3],[0,2]] spans the same row lattice; reducing 3 into [0, 2) gives 1.
        assert_eq!(h, IntMatrix::from_i64(2, 2, &[1, 1, 0, 2]));
        assert_eq!(
            hermite_normal_form(&IntMatrix::from_i64(2, 2, &[1, 3, 0, 2])).0,
            h
        );
        assert_eq!(u.mul(&m).unwrap(), h);
        assert!(u.is_unimodular());
    }

    #[test]
    fn hnf_zero_matrix() {
        let z = IntMatrix::zeros(2, 3);
        let (h, u) = hermite_normal_form(&z);
        assert_eq!(h, z);
        assert_eq!(u, IntMatrix::identity(2));
    }

    #[test]
    fn smith_examples() {
        let diag = IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]);
        assert_eq!(smith_normal_form(&diag), int_vec(&[1, 6]));
        assert_eq!(smith_normal_form(&IntMatrix::identity(2)), int_vec(&[1, 1]));
        let m = IntMatrix::from_i64(2, 4, &[6, 0, 3, 2, 1, -1, 0, 0]);
        assert_eq!(smith_normal_form(&m), int_vec(&[1, 1]));
        assert_eq!(
            smith_normal_form(&IntMatrix::from_i64(1, 2, &[2, 4])),
            int_vec(&[2])
        );
        assert_eq!(smith_normal_form(&IntMatrix::zeros(2, 2)), int_vec(&[0, 0]));
    }

    #[test]
    fn kernel_examples() {
        let m = IntMatrix::from_i64(2, 4, &[1, 1, -2, 0, 1, 1, 0, -3]);
        let k = integer_kernel_basis(&m);
        assert_eq!(k.rows(), 2);
        for row in k.to_rows() {
            assert!(m.apply(&row).unwrap().iter().all(Zero::is_zero));
        }
        assert_eq!(smith_normal_form(&k), int_vec(&[1, 1]));
        // Same lattice as the one spanned by (6,0,3,2) and (1,-1,0,0).
        let other = IntMatrix::from_i64(2, 4, &[6, 0, 3, 2, 1, -1, 0, 0]);
        assert_eq!(hermite_normal_form(&other).0, k);
        assert_eq!(k, IntMatrix::from_i64(2, 4, &[1, 5, 3, 2, 0, 6, 3, 2]));

        assert_eq!(integer_kernel_basis(&IntMatrix::identity(2)).rows(), 0);
        assert_eq!(
            integer_kernel_basis(&IntMatrix::zeros(1, 2)),
            IntMatrix::identity(2)
        );
    }

    #[test]
    fn solve_integer_examples() {
        let a = IntMatrix::from_i64(1, 3, &[6, 10, 15]);
        let x = solve_integer(&a, &int_vec(&[1])).unwrap();
        assert_eq!(a.apply(&x).unwrap(), int_vec(&[1]));
        let even = IntMatrix::from_i64(1, 2, &[2, 4]);
        assert!(solve_integer(&even, &int_vec(&[3])).is_none());
        assert!(solve_integer(&even, &int_vec(&[6])).is_some());
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..4, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-6i64..7, r * c)
                .prop_map(move |v| IntMatrix::from_i64(r, c, &v))
        })
    }

    proptest! {
        #[test]
        fn hnf_is_canonical_and_unimodular(m in small_matrix()) {
            let (h, u) = hermite_normal_form(&m);
            prop_assert_eq!(u.mul(&m).unwrap(), h.clone());
            prop_assert!(u.is_unimodular());
            prop_assert!(is_hermite(&h));
        }

        #[test]
        fn smith_matches_minor_gcds(m in small_matrix()) {
            let d = smith_normal_form(&m);
            prop_assert_eq!(d.len(), m.rows().min(m.cols()));
            for i in 1..d.len() {
                if !d[i - 1].is_zero() {
                    prop_assert!((&d[i] % &d[i - 1]).is_zero());
                } else {
                    prop_assert!(d[i].is_zero());
                }
            }
            let mut prod = BigInt::one();
            for (k, f) in d.iter().enumerate() {
                prod *= f;
                prop_assert_eq!(&prod, &minor_gcd(&m, k + 1));
            }
        }

        #[test]
        fn kernel_is_saturated(m in small_matrix()) {
            let k = integer_kernel_basis(&m);
            for row in k.to_rows() {
                prop_assert!(m.apply(&row).unwrap().iter().all(Zero::is_zero));
            }
            prop_assert!(smith_normal_form(&k).iter().all(One::is_one));
            let rank = crate::lattice::rank(
                &m.to_rows().iter().map(|r| r.iter().map(|v| num_rational::BigRational::from_integer(v.clone())).collect()).collect::<Vec<_>>()
            );
            prop_assert_eq!(k.rows(), m.cols() - rank);
        }

        #[test]
        fn solve_integer_finds_image_points(m in small_matrix(), x in proptest::collection::vec(-4i64..5, 4)) {
            let x = int_vec(&x[..m.cols()]);
            let b = m.apply(&x).unwrap();
            let y = solve_integer(&m, &b).unwrap();
            prop_assert_eq!(m.apply(&y).unwrap(), b);
        }
    }
}
