use std::sync::Arc;

use delone_core::catalog::{an, zn};
use delone_core::delaunay::{delaunay_cell, PolytopeFile};
use delone_core::lattice::Lattice;
use delone_core::linalg::{elementary_divisors, hnf, kernel_integer, lll_reduce, rank_certified, rank_exact, smith};
use delone_core::matrix::{IntMatrix, RatMatrix};
use delone_core::rational::{rat, RatVec, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn int_matrix(rows: usize, cols: usize, range: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(proptest::collection::vec(-range..=range, cols), rows)
}

fn nonsingular(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    int_matrix(n, n, 6).prop_filter("singular", |m| !IntMatrix::from_i64_rows(m).determinant().is_zero())
}

/// Textbook Gram–Schmidt on a Gram matrix: `(μ, ‖b*_i‖²)`.
fn gso(g: &RatMatrix) -> (Vec<Vec<Rational>>, Vec<Rational>) {
    let n = g.rows();
    let mut mu = vec![vec![Rational::zero(); n]; n];
    let mut b = vec![Rational::zero(); n];
    for i in 0..n {
        for j in 0..i {
            let s: Rational = (0..j).map(|k| &mu[j][k] * &mu[i][k] * &b[k]).sum();
            mu[i][j] = (&g[(i, j)] - s) / &b[j];
        }
        let s: Rational = (0..i).map(|k| &mu[i][k] * &mu[i][k] * &b[k]).sum();
        b[i] = &g[(i, i)] - s;
    }
    (mu, b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hnf_is_unimodular_echelon(m in int_matrix(4, 5, 9)) {
        let a = IntMatrix::from_i64_rows(&m);
        let (h, u) = hnf(&a);
        prop_assert_eq!(u.mul(&a), h.clone());
        prop_assert!(u.determinant().abs().is_one());
        let mut last: Option<usize> = None;
        for i in 0..h.rows() {
            match (0..h.cols()).find(|&j| !h[(i, j)].is_zero()) {
                Some(p) => {
                    prop_assert!(last.is_none_or(|q| p > q));
                    prop_assert!(h[(i, p)].is_positive());
                    for k in 0..i {
                        prop_assert!(!h[(k, p)].is_negative() && h[(k, p)] < h[(i, p)]);
                    }
                    last = Some(p);
                }
                None => {
                    for k in i..h.rows() {
                        prop_assert!(h.is_zero_row(k));
                    }
                    break;
                }
            }
        }
    }

    #[test]
    fn smith_divisibility_chain(m in int_matrix(3, 4, 9)) {
        let a = IntMatrix::from_i64_rows(&m);
        let (d, u, v) = smith(&a);
        prop_assert_eq!(u.mul(&a).mul(&v), d.clone());
        prop_assert!(u.determinant().abs().is_one());
        prop_assert!(v.determinant().abs().is_one());
        let ds = elementary_divisors(&a);
        for w in ds.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn kernel_is_saturated(m in int_matrix(2, 5, 5)) {
        let a = IntMatrix::from_i64_rows(&m);
        let k = kernel_integer(&a);
        let r = rank_exact(&RatMatrix::from_int_matrix(&a));
        prop_assert_eq!(k.rows(), 5 - r);
        prop_assert!(a.mul(&k.transpose()).entries().iter().all(Zero::is_zero));
        if k.rows() > 0 {
            // Saturated: the elementary divisors of the kernel basis are all 1.
            prop_assert!(elementary_divisors(&k).iter().all(|d| *d == BigInt::one()));
        }
    }

    #[test]
    fn certified_rank_agrees(m in int_matrix(5, 4, 3)) {
        let a = IntMatrix::from_i64_rows(&m);
        let exact = rank_exact(&RatMatrix::from_int_matrix(&a));
        if let Some(r) = rank_certified(&a) {
            prop_assert_eq!(r, exact);
        }
    }

    #[test]
    fn lll_preserves_the_lattice(b in nonsingular(4)) {
        let l = Lattice::from_i64_basis(&b).unwrap();
        let (g2, t) = lll_reduce(l.gram()).unwrap();
        let tr = RatMatrix::from_int_matrix(&t);
        prop_assert_eq!(tr.mul(l.gram()).unwrap().mul(&tr.transpose()).unwrap(), g2.clone());
        prop_assert!(t.determinant().abs().is_one());
        prop_assert_eq!(g2.determinant().unwrap(), l.gram().determinant().unwrap());
        let (mu, b) = gso(&g2);
        for i in 0..4 {
            for j in 0..i {
                prop_assert!(mu[i][j].abs() <= rat(1, 2));
            }
            if i > 0 {
                prop_assert!(b[i] >= (rat(3, 4) - &mu[i][i - 1] * &mu[i][i - 1]) * &b[i - 1]);
            }
        }
        let (l2, _) = l.lll().unwrap();
        prop_assert_eq!(l2.squared_determinant(), l.squared_determinant());
    }

    #[test]
    fn lattice_text_round_trip(b in nonsingular(3), den in 1i64..5) {
        let basis = RatMatrix::from_i64_rows(&b).scale(&rat(1, den));
        let l = Lattice::new(basis).unwrap();
        let back = Lattice::from_text(&l.to_text()).unwrap();
        prop_assert_eq!(back, l);
    }

    #[test]
    fn polytope_text_round_trip(x in proptest::collection::vec((-30i64..30, 1i64..9), 2)) {
        let l = Arc::new(an(2).unwrap());
        let c: RatVec = x.iter().map(|&(p, q)| rat(p, q)).collect();
        let cell = delaunay_cell(&l, &c).unwrap();
        let file = PolytopeFile::from_cell(&cell, "an:2");
        let parsed = PolytopeFile::parse(&file.to_text()).unwrap();
        prop_assert_eq!(&parsed, &file);
        prop_assert_eq!(parsed.into_cell(l.clone()).unwrap(), cell);
    }

    #[test]
    fn cells_are_empty_and_cospherical(x in proptest::collection::vec((-40i64..40, 1i64..13), 3)) {
        let l = Arc::new(zn(3).unwrap());
        let c: RatVec = x.iter().map(|&(p, q)| rat(p, q)).collect();
        let cell = delaunay_cell(&l, &c).unwrap();
        prop_assert!(cell.verify().unwrap().is_empty());
        for v in &cell.vertices {
            let d: RatVec = v.iter().zip(&cell.center).map(|(&a, b)| rat(a, 1) - b).collect();
            prop_assert_eq!(l.norm(&d), cell.radius_sq.clone());
        }
    }
}
