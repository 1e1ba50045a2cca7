#![allow(dead_code)]

use delone_core::delaunay::{delaunay_cell, DelaunayCell};
use delone_core::lattice::Lattice;
use delone_core::matrix::{IntMatrix, RatMatrix};
use delone_core::rational::{int, rat, RatVec, Rational};
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

pub fn quad(g: &RatMatrix, z: &[i64], x: &[Rational]) -> Rational {
    let d: RatVec = z.iter().zip(x).map(|(&a, b)| int(a) - b).collect();
    g.bilinear(&d, &d)
}

/// Minimum of the quadratic form over every integer point with `|z_i − x_i| ≤ r_i`.
pub fn box_min(g: &RatMatrix, x: &[Rational], r: &[i64]) -> (Rational, Vec<Vec<i64>>) {
    let n = x.len();
    let lo: Vec<i64> = x.iter().zip(r).map(|(a, &ri)| a.floor().to_integer().to_i64().unwrap() - ri).collect();
    let mut z = lo.clone();
    let mut best: Option<Rational> = None;
    let mut arg = Vec::new();
    loop {
        let d = quad(g, &z, x);
        match &best {
            Some(b) if d > *b => {}
            Some(b) if d == *b => arg.push(z.clone()),
            _ => {
                best = Some(d);
                arg = vec![z.clone()];
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                arg.sort();
                return (best.unwrap(), arg);
            }
            z[i] += 1;
            if z[i] <= lo[i] + 2 * r[i] + 1 {
                break;
            }
            z[i] = lo[i];
            i += 1;
        }
    }
}

/// Exhaustive closest vectors for a lattice with integer Euclidean basis `b`.
/// Any coordinate of a closest point differs from `x` by at most `‖col_i(B⁻¹)‖·dist`.
pub fn cvp_oracle(b: &[Vec<i64>], l: &Lattice, x: &[Rational]) -> (Rational, Vec<Vec<i64>>) {
    let n = b.len();
    let binv = RatMatrix::from_i64_rows(b).inverse().unwrap();
    let rounded: Vec<i64> = x.iter().map(|a| a.round().to_integer().to_i64().unwrap()).collect();
    let d0 = quad(l.gram(), &rounded, x).to_f64().unwrap();
    let r: Vec<i64> = (0..n)
        .map(|i| {
            let col: f64 = (0..n).map(|j| binv[(j, i)].to_f64().unwrap().powi(2)).sum();
            (col * d0).sqrt().ceil() as i64 + 1
        })
        .collect();
    box_min(l.gram(), x, &r)
}

pub fn random_basis(rng: &mut ChaCha8Rng, n: usize, range: i64) -> Vec<Vec<i64>> {
    loop {
        let b: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-range..=range)).collect()).collect();
        if !IntMatrix::from_i64_rows(&b).determinant().is_zero() {
            return b;
        }
    }
}

/// Largest distance to the lattice over the grid `(1/den)·Zⁿ ∩ [0, 1)ⁿ`.
pub fn grid_covering(l: &Lattice, den: i64) -> Rational {
    let n = l.rank();
    let mut best = Rational::zero();
    let mut z = vec![0i64; n];
    loop {
        let x: RatVec = z.iter().map(|&a| rat(a, den)).collect();
        let (d, _) = box_min(l.gram(), &x, &vec![2; n]);
        if d > best {
            best = d;
        }
        let mut i = 0;
        loop {
            if i == n {
                return best;
            }
            z[i] += 1;
            if z[i] < den {
                break;
            }
            z[i] = 0;
            i += 1;
        }
    }
}

fn double_factorial_odd(k: i64) -> i64 {
    // (k − 1)!! for even k.
    (1..k).step_by(2).product::<i64>().max(1)
}

/// Mean of `xᵃ·yᵇ` over the unit circle: `(a−1)!!(b−1)!!/(a+b)!!` for even `a`, `b`.
pub fn circle_moment(a: i64, b: i64) -> Rational {
    if a % 2 == 1 || b % 2 == 1 {
        return Rational::zero();
    }
    let num = double_factorial_odd(a) * double_factorial_odd(b);
    let den: i64 = (2..=a + b).step_by(2).product::<i64>().max(1);
    rat(num, den)
}

/// Largest `t` such that every monomial of degree ≤ t averages like on the circle.
/// Points are `(u/s, w·√q/s)`; odd powers of √q only meet zero moments.
pub fn circle_strength(pts: &[(i64, i64)], s: i64, q: i64, t_max: i64) -> i64 {
    for t in 1..=t_max {
        for a in 0..=t {
            let b = t - a;
            let mut sum = Rational::zero();
            for &(u, w) in pts {
                sum += rat(u.pow(a as u32) * w.pow(b as u32), s.pow(t as u32));
            }
            let mean = sum / int(pts.len() as i64);
            let scale = if b % 2 == 0 { int(q.pow(b as u32 / 2)) } else { int(1) };
            if mean * scale != circle_moment(a, b) {
                return t - 1;
            }
        }
    }
    t_max
}

/// Random unimodular `U` with its inverse, built from elementary row operations.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    let mut v = u.clone();
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let f = rng.gen_range(-1..=1);
        // U ← E·U with E = I + f·e_ij; then U⁻¹ ← U⁻¹·E⁻¹.
        for k in 0..n {
            u[i][k] += f * u[j][k];
        }
        for row in v.iter_mut() {
            row[j] -= f * row[i];
        }
    }
    (u, v)
}

pub fn conjugate(cell: &DelaunayCell, u: &[Vec<i64>], uinv: &[Vec<i64>]) -> DelaunayCell {
    let n = u.len();
    let um = RatMatrix::from_i64_rows(u);
    let basis = um.mul(cell.lattice.basis()).unwrap();
    let l = Arc::new(Lattice::with_metric(basis, cell.lattice.metric().clone()).unwrap());
    // Same ambient point: new coordinates are old ones times U⁻¹.
    let c: RatVec = (0..n).map(|j| (0..n).map(|i| &cell.center[i] * int(uinv[i][j])).sum()).collect();
    let cell2 = delaunay_cell(&l, &c).unwrap();
    assert_eq!(cell2.vertices.len(), cell.vertices.len());
    assert_eq!(cell2.radius_sq, cell.radius_sq);
    cell2
}
