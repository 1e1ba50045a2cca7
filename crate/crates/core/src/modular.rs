//! Word-size modular arithmetic used to speed up exact rank computations.
//! Results obtained here are only ever lower bounds on rational ranks; callers
//! certify anything they claim exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::matrix::IntMatrix;
use crate::rational::Rational;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The `count` largest primes below 2³¹, in decreasing order.
pub fn primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = (1u64 << 31) - 1;
    while out.len() < count {
        if is_prime(n) {
            out.push(n);
        }
        n -= 2;
    }
    out
}

pub fn reduce_i64(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

pub fn reduce_big(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("reduced")
}

/// Dense matrix over `F_p`.
#[derive(Clone, Debug)]
pub struct ModMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
    pivots: Vec<usize>,
}

impl ModMatrix {
    pub fn from_int_matrix(a: &IntMatrix, p: u64) -> Self {
        ModMatrix {
            p,
            rows: a.rows(),
            cols: a.cols(),
            data: a.entries().iter().map(|x| reduce_big(x, p)).collect(),
            pivots: Vec::new(),
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>], cols: usize, p: u64) -> Self {
        ModMatrix {
            p,
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().map(|&x| reduce_i64(x, p)).collect(),
            pivots: Vec::new(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// In-place reduced row echelon form.
    pub fn rref(&mut self) {
        let p = self.p;
        let cols = self.cols;
        let mut r = 0;
        self.pivots.clear();
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = inv_mod(self.data[r * cols + c], p);
            for j in c..cols {
                self.data[r * cols + j] = mul_mod(self.data[r * cols + j], inv, p);
            }
            let pivot_row: Vec<u64> = self.data[r * cols..(r + 1) * cols].to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.data[i * cols + c];
                if f == 0 {
                    continue;
                }
                let row = &mut self.data[i * cols..(i + 1) * cols];
                for j in c..cols {
                    let t = mul_mod(f, pivot_row[j], p);
                    row[j] = (row[j] + p - t) % p;
                }
            }
            self.pivots.push(c);
            r += 1;
        }
    }
}

/// Incremental row echelon basis over `F_p`, for greedy selection of independent rows.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    p: u64,
    dim: usize,
    rows: Vec<(usize, Vec<u64>)>,
}

impl EchelonBasis {
    pub fn new(dim: usize, p: u64) -> Self {
        EchelonBasis {
            p,
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Inserts a vector; returns true when it was independent of the basis.
    pub fn insert_i64(&mut self, v: &[i64]) -> bool {
        let p = self.p;
        let mut w: Vec<u64> = v.iter().map(|&x| reduce_i64(x, p)).collect();
        for (c, row) in &self.rows {
            let f = w[*c];
            if f != 0 {
                for j in 0..self.dim {
                    let t = mul_mod(f, row[j], p);
                    w[j] = (w[j] + p - t) % p;
                }
            }
        }
        let Some(c) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(w[c], p);
        for x in w.iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        self.rows.push((c, w));
        true
    }
}

/// Solution of `x ≡ r1 (mod m1)`, `x ≡ r2 (mod m2)` in `[0, m1·m2)`.
pub fn crt_pair(r1: &BigInt, m1: &BigInt, r2: &BigInt, m2: &BigInt) -> BigInt {
    if m1.is_one() {
        return r2.mod_floor(m2);
    }
    let e = m1.extended_gcd(m2);
    let m = m1 * m2;
    let diff = r2 - r1;
    let t = (&diff * &e.x).mod_floor(m2);
    (r1 + m1 * t).mod_floor(&m)
}

/// Rational number `a/b` with `a ≡ b·x (mod m)` and `|a|, b ≤ √(m/2)`, if any.
pub fn rational_reconstruct(x: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), x.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}
