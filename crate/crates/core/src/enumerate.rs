//! Fincke–Pohst enumeration of lattice points in ellipsoids.
//!
//! Pruning runs in `f64` on an LLL-reduced Gram matrix with a slightly inflated
//! radius, so the visited set is a superset of the true one. Every candidate is
//! then measured exactly (integer arithmetic on the scaled Gram matrix), and only
//! exact comparisons decide membership.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::lll_reduce;
use crate::matrix::RatMatrix;
use crate::rational::{rat_to_f64, to_i64, IntVec, RatVec, Rational, ScaledVec};

const REL_SLACK: f64 = 1e-9;
const ABS_SLACK: f64 = 1e-9;

/// Precomputed state for repeated enumeration in one lattice.
#[derive(Clone, Debug)]
pub struct Enumerator {
    n: usize,
    /// Reduced Gram matrix times `gram_den`, row-major.
    gram_int: Vec<i128>,
    gram_den: i128,
    /// Rows: reduced basis in original coordinates.
    to_orig: Vec<Vec<i64>>,
    /// Inverse transform: original coordinates to reduced ones.
    to_reduced: Vec<Vec<i64>>,
    q: Vec<f64>,
    /// `mu[i][j]` for `j > i`.
    mu: Vec<Vec<f64>>,
}

/// A squared distance kept as an exact fraction `num / den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct ExactDist {
    num: i128,
    den: i128,
}

impl Enumerator {
    pub fn new(lattice: &Lattice) -> Result<Self> {
        Self::from_gram(lattice.gram())
    }

    pub fn from_gram(gram: &RatMatrix) -> Result<Self> {
        let n = gram.rows();
        let (red, t) = lll_reduce(gram)?;
        let (gi, gd) = red.clear_denominators();
        let gram_int = gi.entries().iter().map(|x| to_i64(x).map(|v| v as i128)).collect::<Result<Vec<_>>>()?;
        let gram_den = to_i64(&gd)? as i128;
        let to_orig = t.to_i64_rows()?;
        let tinv = RatMatrix::from_int_matrix(&t).inverse()?;
        let to_reduced = tinv
            .to_int_matrix()?
            .to_i64_rows()?;
        let gf: Vec<f64> = red.entries().iter().map(rat_to_f64).collect();
        let (q, mu) = ldl(&gf, n)?;
        Ok(Enumerator { n, gram_int, gram_den, to_orig, to_reduced, q, mu })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    fn to_reduced_coords(&self, x: &ScaledVec) -> ScaledVec {
        let n = self.n;
        let mut y = vec![0i64; n];
        for (i, &xi) in x.num.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for j in 0..n {
                y[j] += xi * self.to_reduced[i][j];
            }
        }
        ScaledVec { num: y, den: x.den }
    }

    fn to_orig_coords(&self, y: &[i64]) -> IntVec {
        let n = self.n;
        let mut x = vec![0i64; n];
        for (i, &yi) in y.iter().enumerate() {
            if yi == 0 {
                continue;
            }
            for j in 0..n {
                x[j] += yi * self.to_orig[i][j];
            }
        }
        x
    }

    /// Exact `(den·y − X)ᵀ G (den·y − X)` in reduced coordinates, as a fraction.
    fn exact_dist(&self, y: &[i64], target: &ScaledVec) -> Result<ExactDist> {
        let n = self.n;
        let d = target.den as i128;
        let diff: Vec<i128> = (0..n).map(|i| d * y[i] as i128 - target.num[i] as i128).collect();
        let mut acc: i128 = 0;
        for i in 0..n {
            if diff[i] == 0 {
                continue;
            }
            let mut row: i128 = 0;
            for j in 0..n {
                let t = self.gram_int[i * n + j]
                    .checked_mul(diff[j])
                    .ok_or(Error::Overflow("exact distance"))?;
                row = row.checked_add(t).ok_or(Error::Overflow("exact distance"))?;
            }
            let t = row.checked_mul(diff[i]).ok_or(Error::Overflow("exact distance"))?;
            acc = acc.checked_add(t).ok_or(Error::Overflow("exact distance"))?;
        }
        Ok(ExactDist { num: acc, den: self.gram_den * d * d })
    }

    /// Babai nearest-plane point in reduced coordinates.
    fn babai(&self, t: &[f64]) -> Vec<i64> {
        let n = self.n;
        let mut y = vec![0i64; n];
        for i in (0..n).rev() {
            let mut c = t[i];
            for j in i + 1..n {
                c -= self.mu[i][j] * (y[j] as f64 - t[j]);
            }
            y[i] = c.round() as i64;
        }
        y
    }

    /// Visits every `y` (reduced coords) with float distance² to `t` at most `bound`;
    /// `visit` may return a tighter bound.
    fn search(&self, t: &[f64], bound: f64, visit: &mut dyn FnMut(&[i64]) -> Result<Option<f64>>) -> Result<()> {
        let n = self.n;
        if n == 0 {
            visit(&[])?;
            return Ok(());
        }
        let mut bound = inflate(bound);
        let mut y = vec![0i64; n];
        let mut hi = vec![0i64; n];
        let mut partial = vec![0f64; n + 1];
        let mut centers = vec![0f64; n];
        // Start at the top level.
        let mut level = n - 1;
        let mut fresh = true;
        loop {
            if fresh {
                let mut c = t[level];
                for j in level + 1..n {
                    c -= self.mu[level][j] * (y[j] as f64 - t[j]);
                }
                centers[level] = c;
                let rem = bound - partial[level + 1];
                if rem < 0.0 {
                    // No room at this level: climb.
                    if level == n - 1 {
                        return Ok(());
                    }
                    level += 1;
                    fresh = false;
                    continue;
                }
                let w = (rem / self.q[level]).sqrt();
                y[level] = (c - w).ceil() as i64;
                hi[level] = (c + w).floor() as i64;
            } else {
                y[level] += 1;
            }
            if y[level] > hi[level] {
                if level == n - 1 {
                    return Ok(());
                }
                level += 1;
                fresh = false;
                continue;
            }
            let diff = y[level] as f64 - centers[level];
            partial[level] = partial[level + 1] + self.q[level] * diff * diff;
            if level == 0 {
                if let Some(b) = visit(&y)? {
                    bound = inflate(b);
                }
                fresh = false;
            } else {
                level -= 1;
                fresh = true;
            }
        }
    }

    /// All lattice points within exact squared distance `bound` of `target`
    /// (original coordinates), with their exact squared distances.
    pub fn points_within(&self, target: &[Rational], bound: &Rational) -> Result<Vec<(IntVec, Rational)>> {
        let tr = self.to_reduced_coords(&ScaledVec::from_rats(target)?);
        let tf: Vec<f64> = tr.num.iter().map(|&x| x as f64 / tr.den as f64).collect();
        let mut out = Vec::new();
        let bf = rat_to_f64(bound);
        self.search(&tf, bf, &mut |y| {
            let d = self.exact_dist(y, &tr)?;
            let r = Rational::new(BigInt::from(d.num), BigInt::from(d.den));
            if &r <= bound {
                out.push((self.to_orig_coords(y), r));
            }
            Ok(None)
        })?;
        out.sort();
        Ok(out)
    }

    /// Closest lattice points to `target` (original coordinates) with the exact squared distance.
    pub fn closest_vectors(&self, target: &[Rational]) -> Result<(Rational, Vec<IntVec>)> {
        if target.len() != self.n {
            return Err(Error::OutsideSpan);
        }
        let tr = self.to_reduced_coords(&ScaledVec::from_rats(target)?);
        let tf: Vec<f64> = tr.num.iter().map(|&x| x as f64 / tr.den as f64).collect();
        let start = self.babai(&tf);
        let mut best = self.exact_dist(&start, &tr)?;
        let mut points: Vec<Vec<i64>> = Vec::new();
        let to_f = |d: &ExactDist| d.num as f64 / d.den as f64;
        self.search(&tf, to_f(&best), &mut |y| {
            let d = self.exact_dist(y, &tr)?;
            // Same denominator throughout, so numerators compare directly.
            if d.num < best.num {
                best = d;
                points.clear();
                points.push(y.to_vec());
                Ok(Some(to_f(&best)))
            } else if d.num == best.num {
                points.push(y.to_vec());
                Ok(None)
            } else {
                Ok(None)
            }
        })?;
        let mut out: Vec<IntVec> = points.iter().map(|y| self.to_orig_coords(y)).collect();
        out.sort();
        out.dedup();
        Ok((Rational::new(BigInt::from(best.num), BigInt::from(best.den)), out))
    }

    /// All lattice vectors of norm exactly `q`.
    pub fn vectors_of_norm(&self, q: &Rational) -> Result<Vec<IntVec>> {
        let zero = vec![Rational::zero(); self.n];
        Ok(self
            .points_within(&zero, q)?
            .into_iter()
            .filter(|(_, r)| r == q)
            .map(|(v, _)| v)
            .collect())
    }

    /// Minimal nonzero norm and all vectors attaining it.
    pub fn shortest_vectors(&self) -> Result<(Rational, Vec<IntVec>)> {
        let n = self.n;
        if n == 0 {
            return Err(Error::Empty);
        }
        let zero = ScaledVec { num: vec![0; n], den: 1 };
        let tf = vec![0f64; n];
        // The shortest reduced basis vector bounds the minimum.
        let mut best = (0..n)
            .map(|i| self.gram_int[i * n + i])
            .min()
            .expect("nonempty");
        let den = self.gram_den;
        let mut points: Vec<Vec<i64>> = Vec::new();
        self.search(&tf, best as f64 / den as f64, &mut |y| {
            if y.iter().all(|&v| v == 0) {
                return Ok(None);
            }
            let d = self.exact_dist(y, &zero)?;
            if d.num < best {
                best = d.num;
                points.clear();
                points.push(y.to_vec());
                Ok(Some(best as f64 / den as f64))
            } else {
                if d.num == best {
                    points.push(y.to_vec());
                }
                Ok(None)
            }
        })?;
        let mut out: Vec<IntVec> = points.iter().map(|y| self.to_orig_coords(y)).collect();
        out.sort();
        Ok((Rational::new(BigInt::from(best), BigInt::from(den)), out))
    }
}

fn inflate(b: f64) -> f64 {
    b * (1.0 + REL_SLACK) + ABS_SLACK
}

/// `G = Rᵀ D R` with unit upper-triangular `R`; returns `D` and the strict upper part of `R`.
fn ldl(g: &[f64], n: usize) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let mut q = vec![0f64; n];
    let mut mu = vec![vec![0f64; n]; n];
    for i in 0..n {
        let mut s = g[i * n + i];
        for k in 0..i {
            s -= mu[k][i] * mu[k][i] * q[k];
        }
        if s <= 0.0 {
            return Err(Error::NotPositiveDefinite);
        }
        q[i] = s;
        for j in i + 1..n {
            let mut s = g[i * n + j];
            for k in 0..i {
                s -= mu[k][i] * mu[k][j] * q[k];
            }
            mu[i][j] = s / q[i];
        }
    }
    Ok((q, mu))
}

pub fn shortest_vectors(l: &Lattice) -> Result<(Rational, Vec<IntVec>)> {
    Enumerator::new(l)?.shortest_vectors()
}

pub fn vectors_of_norm(l: &Lattice, q: &Rational) -> Result<Vec<IntVec>> {
    if !q.is_positive() {
        return Ok(Vec::new());
    }
    Enumerator::new(l)?.vectors_of_norm(q)
}

pub fn closest_vectors(l: &Lattice, x: &[Rational]) -> Result<(Rational, Vec<IntVec>)> {
    Enumerator::new(l)?.closest_vectors(x)
}

/// Exhaustive box search; a slow independent reference for small lattices.
pub fn closest_vectors_box(gram: &RatMatrix, x: &RatVec, radius: i64) -> (Rational, Vec<IntVec>) {
    let n = gram.rows();
    let mut best: Option<Rational> = None;
    let mut pts = Vec::new();
    let mut y = vec![-radius; n];
    loop {
        let diff: RatVec = y.iter().zip(x).map(|(&a, b)| Rational::from_integer(a.into()) - b).collect();
        let d = gram.bilinear(&diff, &diff);
        match &best {
            Some(b) if &d > b => {}
            Some(b) if &d == b => pts.push(y.clone()),
            _ => {
                best = Some(d);
                pts = vec![y.clone()];
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                pts.sort();
                return (best.expect("nonempty box"), pts);
            }
            y[i] += 1;
            if y[i] > radius {
                y[i] = -radius;
                i += 1;
            } else {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn zn(n: usize) -> Lattice {
        Lattice::new(RatMatrix::identity(n)).unwrap()
    }

    #[test]
    fn shortest_in_z2() {
        let (norm, v) = shortest_vectors(&zn(2)).unwrap();
        assert_eq!(norm, int(1));
        assert_eq!(v.len(), 4);
    }

    #[test]
    fn norm_two_in_z2() {
        let v = vectors_of_norm(&zn(2), &int(2)).unwrap();
        assert_eq!(v, vec![vec![-1, -1], vec![-1, 1], vec![1, -1], vec![1, 1]]);
    }

    #[test]
    fn closest_to_square_center() {
        let (d, pts) = closest_vectors(&zn(2), &[rat(1, 2), rat(1, 2)]).unwrap();
        assert_eq!(d, rat(1, 2));
        assert_eq!(pts.len(), 4);
    }

    #[test]
    fn a2_barycenter_matches_box_search() {
        let g = RatMatrix::from_i64_rows(&[vec![2, 1], vec![1, 2]]);
        let l = Lattice::from_gram(g.clone()).unwrap();
        let x = vec![rat(1, 3), rat(1, 3)];
        let (d, pts) = closest_vectors(&l, &x).unwrap();
        let (bd, bpts) = closest_vectors_box(&g, &x, 2);
        assert_eq!(pts.len(), 3);
        assert_eq!((d, pts), (bd, bpts));
    }

    #[test]
    fn e8_like_skewed_basis_still_finds_minimum() {
        // Z^3 in a skewed basis.
        let l = Lattice::from_i64_basis(&[vec![1, 0, 0], vec![5, 1, 0], vec![7, 3, 1]]).unwrap();
        let (norm, v) = shortest_vectors(&l).unwrap();
        assert_eq!(norm, int(1));
        assert_eq!(v.len(), 6);
    }
}
