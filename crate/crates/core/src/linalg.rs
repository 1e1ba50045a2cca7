//! Exact integer and rational linear algebra: Hermite and Smith normal forms,
//! certified rank, saturated integer kernels and Gram-matrix LLL.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, RatMatrix};
use crate::modular::{self, ModMatrix};
use crate::rational::{rat, Rational};

/// Row Hermite normal form `H = U·M` with `U` unimodular.
///
/// Pivots are positive, entries above a pivot lie in `[0, pivot)`, zero rows are last.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let rows = m.rows();
    let cols = m.cols();
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            // Smallest nonzero magnitude in column c at or below row r.
            let piv = (r..rows)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&a, &b| h[(a, c)].abs().cmp(&h[(b, c)].abs()));
            let Some(p) = piv else { break };
            h.swap_rows(p, r);
            u.swap_rows(p, r);
            let mut done = true;
            for i in r + 1..rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = -h[(i, c)].div_floor(&h[(r, c)]);
                h.add_row_multiple(i, r, &q);
                u.add_row_multiple(i, r, &q);
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = -h[(i, c)].div_floor(&h[(r, c)]);
            h.add_row_multiple(i, r, &q);
            u.add_row_multiple(i, r, &q);
        }
        r += 1;
    }
    (h, u)
}

/// Nonzero rows of the HNF: a basis of the row lattice of `m`.
///
/// Tall inputs are folded in chunks so the transform never exceeds a few times `cols²`.
pub fn row_lattice_basis(m: &IntMatrix) -> IntMatrix {
    let cols = m.cols();
    let chunk = 2 * cols.max(1);
    if m.rows() > 2 * chunk {
        let mut basis = IntMatrix::from_big_rows(Vec::new(), cols);
        for start in (0..m.rows()).step_by(chunk) {
            let mut rows: Vec<Vec<BigInt>> = (0..basis.rows()).map(|i| basis.row(i).to_vec()).collect();
            rows.extend((start..(start + chunk).min(m.rows())).map(|i| m.row(i).to_vec()));
            basis = row_lattice_basis(&IntMatrix::from_big_rows(rows, cols));
        }
        return basis;
    }
    let (h, _) = hnf(m);
    let rank = (0..h.rows()).filter(|&i| !h.is_zero_row(i)).count();
    let rows = (0..rank).map(|i| h.row(i).to_vec()).collect();
    IntMatrix::from_big_rows(rows, m.cols())
}

/// Smith normal form `D = U·M·V` with `U`, `V` unimodular and `d₁ | d₂ | …` on the diagonal.
pub fn smith(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[(i, j)].is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let piv = a[(t, t)].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[(i, j)] % &piv).is_zero()));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    (a, u, v)
}

/// Diagonal of the Smith normal form with zeros dropped.
pub fn elementary_divisors(m: &IntMatrix) -> Vec<BigInt> {
    if m.rows() > m.cols() {
        return elementary_divisors(&row_lattice_basis(m));
    }
    let (d, _, _) = smith(m);
    (0..d.rows().min(d.cols()))
        .map(|i| d[(i, i)].clone())
        .filter(|x| !x.is_zero())
        .collect()
}

/// Fraction-free (Bareiss) rank over the rationals.
pub fn rank_bareiss(m: &RatMatrix) -> usize {
    let (mut a, _) = integer_rows(m);
    let rows = a.rows();
    let cols = a.cols();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(p, r);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let x = &a[(r, c)] * &a[(i, j)] - &a[(i, c)] * &a[(r, j)];
                a[(i, j)] = x / &prev;
            }
            a[(i, c)] = BigInt::zero();
        }
        prev = a[(r, c)].clone();
        r += 1;
    }
    r
}

/// Scales each row by the lcm of its denominators.
fn integer_rows(m: &RatMatrix) -> (IntMatrix, Vec<BigInt>) {
    let mut out = IntMatrix::zeros(m.rows(), m.cols());
    let mut scales = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let d = crate::rational::lcm_denominators(m.row(i).iter());
        for j in 0..m.cols() {
            let x = &m[(i, j)];
            out[(i, j)] = x.numer() * (&d / x.denom());
        }
        scales.push(d);
    }
    (out, scales)
}

const BAREISS_LIMIT: usize = 4096;

/// Rank over the rationals.
///
/// Small matrices use Bareiss elimination. Larger ones take the maximum rank
/// over two word-size primes (a lower bound), then certify the upper bound by
/// reconstructing the rational kernel and checking `M·k = 0` exactly.
pub fn rank_exact(m: &RatMatrix) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    if m.rows() * m.cols() <= BAREISS_LIMIT {
        return rank_bareiss(m);
    }
    let (a, _) = integer_rows(m);
    match rank_certified(&a) {
        Some(r) => r,
        None => rank_bareiss(m),
    }
}

/// Modular rank with exact certification; `None` when certification gave up.
pub fn rank_certified(a: &IntMatrix) -> Option<usize> {
    let primes = modular::primes(64);
    let mut reductions: Vec<(u64, ModMatrix)> = Vec::new();
    for &p in primes.iter().take(2) {
        let mut mm = ModMatrix::from_int_matrix(a, p);
        mm.rref();
        reductions.push((p, mm));
    }
    let best = reductions.iter().map(|(_, m)| m.rank()).max().unwrap_or(0);
    if best == a.cols() {
        return Some(best);
    }
    let pivots = reductions
        .iter()
        .find(|(_, m)| m.rank() == best)
        .map(|(_, m)| m.pivots().to_vec())?;
    reductions.retain(|(_, m)| m.pivots() == pivots.as_slice());
    let mut next = 2;
    loop {
        if let Some(kernel) = reconstruct_kernel(&reductions, &pivots, a.cols()) {
            if kernel.iter().all(|k| is_kernel_vector(a, k)) {
                return Some(best);
            }
        }
        if next >= primes.len() {
            return None;
        }
        // Add primes in pairs to let reconstruction stabilise.
        for &p in &primes[next..(next + 2).min(primes.len())] {
            let mut mm = ModMatrix::from_int_matrix(a, p);
            mm.rref();
            if mm.pivots() == pivots.as_slice() {
                reductions.push((p, mm));
            } else if mm.rank() > best {
                // The first two primes were unlucky; restart with a fresh lower bound.
                return None;
            }
        }
        next += 2;
    }
}

fn reconstruct_kernel(
    reductions: &[(u64, ModMatrix)],
    pivots: &[usize],
    cols: usize,
) -> Option<Vec<Vec<Rational>>> {
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut modulus = BigInt::one();
    let mut residues = vec![vec![BigInt::zero(); pivots.len()]; free.len()];
    for (p, mm) in reductions {
        let pb = BigInt::from(*p);
        for (fi, &f) in free.iter().enumerate() {
            for (ri, res) in residues[fi].iter_mut().enumerate() {
                let val = (*p - mm.get(ri, f)) % *p;
                *res = modular::crt_pair(res, &modulus, &BigInt::from(val), &pb);
            }
        }
        modulus *= &pb;
    }
    let mut out = Vec::with_capacity(free.len());
    for (fi, &f) in free.iter().enumerate() {
        let mut k = vec![Rational::zero(); cols];
        k[f] = Rational::one();
        for (ri, &pc) in pivots.iter().enumerate() {
            k[pc] = modular::rational_reconstruct(&residues[fi][ri], &modulus)?;
        }
        out.push(k);
    }
    Some(out)
}

fn is_kernel_vector(a: &IntMatrix, k: &[Rational]) -> bool {
    let d = crate::rational::lcm_denominators(k.iter());
    let ki: Vec<BigInt> = k.iter().map(|x| x.numer() * (&d / x.denom())).collect();
    (0..a.rows()).all(|i| {
        a.row(i)
            .iter()
            .zip(&ki)
            .fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
            .is_zero()
    })
}

/// Saturated integer basis of `{x ∈ Zᶜᵒˡˢ : M·x = 0}`, one vector per row.
pub fn kernel_rational(m: &RatMatrix) -> IntMatrix {
    let (a, _) = integer_rows(m);
    kernel_integer(&a)
}

pub fn kernel_integer(a: &IntMatrix) -> IntMatrix {
    let (h, u) = hnf(&a.transpose());
    let rows: Vec<Vec<BigInt>> = (0..h.rows())
        .filter(|&i| h.is_zero_row(i))
        .map(|i| u.row(i).to_vec())
        .collect();
    // Reduce the kernel basis so the vectors stay short.
    let k = IntMatrix::from_big_rows(rows, a.cols());
    if k.rows() == 0 {
        return k;
    }
    let gram = RatMatrix::from_int_matrix(&k.mul(&k.transpose()));
    match lll_reduce(&gram) {
        Ok((_, t)) => t.mul(&k),
        Err(_) => k,
    }
}

/// LLL reduction (δ = 3/4) acting on a Gram matrix.
///
/// Returns `(G', T)` with `G' = T·G·Tᵀ`; the rows of `T` are the reduced basis
/// expressed in the input basis.
pub fn lll_reduce(g: &RatMatrix) -> Result<(RatMatrix, IntMatrix)> {
    if !g.is_symmetric() {
        return Err(Error::NotPositiveDefinite);
    }
    let n = g.rows();
    let mut g = g.clone();
    let mut t = IntMatrix::identity(n);
    if n == 0 {
        return Ok((g, t));
    }
    let delta = rat(3, 4);
    let half = rat(1, 2);
    let (mut mu, mut b) = gram_schmidt(&g)?;
    let mut k = 1;
    while k < n {
        size_reduce(&mut g, &mut t, &mut mu, k, k - 1, &half);
        let lhs = &b[k];
        let m = &mu[k][k - 1];
        let rhs = (&delta - m * m) * &b[k - 1];
        if *lhs >= rhs {
            for l in (0..k.saturating_sub(1)).rev() {
                size_reduce(&mut g, &mut t, &mut mu, k, l, &half);
            }
            k += 1;
        } else {
            swap_basis(&mut g, &mut t, k);
            swap_gso(&mut mu, &mut b, k);
            k = (k - 1).max(1);
        }
    }
    Ok((g, t))
}

type Gso = (Vec<Vec<Rational>>, Vec<Rational>);

fn gram_schmidt(g: &RatMatrix) -> Result<Gso> {
    let n = g.rows();
    let mut mu = vec![vec![Rational::zero(); n]; n];
    let mut b = vec![Rational::zero(); n];
    for i in 0..n {
        for j in 0..i {
            let mut s = g[(i, j)].clone();
            for k in 0..j {
                s -= &mu[j][k] * &mu[i][k] * &b[k];
            }
            mu[i][j] = s / &b[j];
        }
        let mut s = g[(i, i)].clone();
        for k in 0..i {
            s -= &mu[i][k] * &mu[i][k] * &b[k];
        }
        if !s.is_positive() {
            return Err(Error::NotPositiveDefinite);
        }
        b[i] = s;
    }
    Ok((mu, b))
}

fn size_reduce(
    g: &mut RatMatrix,
    t: &mut IntMatrix,
    mu: &mut [Vec<Rational>],
    k: usize,
    l: usize,
    half: &Rational,
) {
    if mu[k][l].abs() <= *half {
        return;
    }
    let q = mu[k][l].round();
    let qi = q.to_integer();
    let n = g.rows();
    // b_k <- b_k - q b_l
    let gkk = &g[(k, k)] - &q * &g[(k, l)] * rat(2, 1) + &q * &q * &g[(l, l)];
    for j in 0..n {
        if j == k {
            continue;
        }
        let v = &g[(k, j)] - &q * &g[(l, j)];
        g[(k, j)] = v.clone();
        g[(j, k)] = v;
    }
    g[(k, k)] = gkk;
    t.add_row_multiple(k, l, &-qi);
    for j in 0..l {
        let v = &q * &mu[l][j];
        mu[k][j] -= v;
    }
    mu[k][l] -= q;
}

/// Updates the Gram–Schmidt data after exchanging basis vectors `k − 1` and `k`.
fn swap_gso(mu: &mut [Vec<Rational>], b: &mut [Rational], k: usize) {
    let m = mu[k][k - 1].clone();
    let big = &b[k] + &m * &m * &b[k - 1];
    mu[k][k - 1] = &m * &b[k - 1] / &big;
    b[k] = &b[k - 1] * &b[k] / &big;
    b[k - 1] = big;
    for j in 0..k - 1 {
        let a = std::mem::take(&mut mu[k - 1][j]);
        mu[k - 1][j] = std::mem::replace(&mut mu[k][j], a);
    }
    for i in k + 1..mu.len() {
        let t = mu[i][k].clone();
        mu[i][k] = &mu[i][k - 1] - &m * &t;
        mu[i][k - 1] = t + &mu[k][k - 1] * &mu[i][k];
    }
}

fn swap_basis(g: &mut RatMatrix, t: &mut IntMatrix, k: usize) {
    let n = g.rows();
    g.swap_rows(k, k - 1);
    for r in 0..n {
        let a = g[(r, k)].clone();
        g[(r, k)] = g[(r, k - 1)].clone();
        g[(r, k - 1)] = a;
    }
    t.swap_rows(k, k - 1);
}

/// Cholesky-free positive-definiteness test.
pub fn is_positive_definite(g: &RatMatrix) -> bool {
    g.is_symmetric() && gram_schmidt(g).is_ok()
}

/// `|det|` of an integer square matrix as a nonnegative integer.
pub fn abs_det(m: &IntMatrix) -> BigInt {
    m.determinant().abs()
}

pub fn bigint_to_u64(x: &BigInt) -> Option<u64> {
    x.to_u64()
}
