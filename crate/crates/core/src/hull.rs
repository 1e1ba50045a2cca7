//! Facets of the convex hull of a full-dimensional set of integer points.
//!
//! Gift wrapping: one facet is found by repeated tilting, then every ridge of a
//! known facet (computed recursively inside the facet's hyperplane) is rotated
//! to the neighbouring facet. All arithmetic is exact.

use std::collections::{BTreeMap, VecDeque};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::linalg::{kernel_integer, rank_bareiss};
use crate::matrix::{IntMatrix, RatMatrix};

/// Halfspace `a·x ≤ b` in coordinates (plain dot product).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Halfspace {
    pub a: Vec<i64>,
    pub b: i64,
}

impl Halfspace {
    /// Slack `b − a·x`, nonnegative on the hull.
    pub fn slack(&self, x: &[i64]) -> i128 {
        self.b as i128 - self.a.iter().zip(x).map(|(&a, &x)| a as i128 * x as i128).sum::<i128>()
    }

    fn from_i128(a: &[i128], b: i128) -> Result<Self> {
        let g = a.iter().fold(b.abs(), |g, &x| g.gcd(&x.abs()));
        let g = if g == 0 { 1 } else { g };
        let conv = |x: i128| i64::try_from(x / g).map_err(|_| Error::Overflow("halfspace"));
        Ok(Halfspace { a: a.iter().map(|&x| conv(x)).collect::<Result<_>>()?, b: conv(b)? })
    }
}

/// A facet as indices into the input point list plus its supporting halfspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullFacet {
    pub vertices: Vec<usize>,
    pub halfspace: Halfspace,
}

pub fn affine_rank(points: &[Vec<i64>], idx: &[usize]) -> usize {
    if idx.len() <= 1 {
        return 0;
    }
    let x0 = &points[idx[0]];
    let rows: Vec<Vec<i64>> = idx[1..]
        .iter()
        .map(|&i| points[i].iter().zip(x0).map(|(a, b)| a - b).collect())
        .collect();
    rank_bareiss(&RatMatrix::from_i64_rows(&rows))
}

fn tight(points: &[Vec<i64>], h: &Halfspace) -> Vec<usize> {
    (0..points.len()).filter(|&i| h.slack(&points[i]) == 0).collect()
}

/// Rotates `h` (zero on a face, nonnegative on `face`) about that face using the
/// supporting halfspace `f` until it touches another point; returns the new support.
fn rotate(points: &[Vec<i64>], f: &Halfspace, h_a: &[i128], h_b: i128) -> Result<Halfspace> {
    let hval = |x: &[i64]| h_b - h_a.iter().zip(x).map(|(&a, &x)| a * x as i128).sum::<i128>();
    // μ* = max over points off f of −h(p)/f(p), as a fraction num/den with den > 0.
    let mut best: Option<(i128, i128)> = None;
    for p in points {
        let fp = f.slack(p);
        if fp == 0 {
            continue;
        }
        let num = -hval(p);
        match best {
            Some((bn, bd)) if num * bd <= bn * fp => {}
            _ => best = Some((num, fp)),
        }
    }
    let (num, den) = best.ok_or(Error::DegenerateFacet)?;
    let a: Vec<i128> = h_a.iter().zip(&f.a).map(|(&h, &fa)| den * h + num * fa as i128).collect();
    let b = den * h_b + num * f.b as i128;
    if a.iter().all(|&x| x == 0) {
        return Err(Error::DegenerateFacet);
    }
    Halfspace::from_i128(&a, b)
}

fn initial_facet(points: &[Vec<i64>], d: usize) -> Result<Halfspace> {
    let max0 = points.iter().map(|p| p[0]).max().ok_or(Error::Empty)?;
    let mut a = vec![0i64; d];
    a[0] = 1;
    let mut f = Halfspace { a, b: max0 };
    loop {
        let face = tight(points, &f);
        if affine_rank(points, &face) + 1 >= d {
            return Ok(f);
        }
        // A direction orthogonal to the face and to f's normal.
        let x0 = &points[face[0]];
        let mut rows: Vec<Vec<i64>> = face[1..]
            .iter()
            .map(|&i| points[i].iter().zip(x0).map(|(a, b)| a - b).collect())
            .collect();
        rows.push(f.a.clone());
        let k = kernel_integer(&IntMatrix::from_i64_rows_with_cols(&rows, d));
        let l = k.row_i64(0)?;
        let h_a: Vec<i128> = l.iter().map(|&x| x as i128).collect();
        let h_b: i128 = l.iter().zip(x0).map(|(&a, &x)| a as i128 * x as i128).sum();
        f = rotate(points, &f, &h_a, h_b)?;
    }
}

/// Affine chart of a facet hyperplane `a·x = b`: `y = ((x − x0)·V)[1..]`, where
/// `V = U⁻¹` and `U` is unimodular with `U·a = (g, 0, …, 0)`. Rows `2..` of `U`
/// span the integer points of `a^⊥`.
struct Chart {
    x0: Vec<i64>,
    v: Vec<Vec<i128>>,
}

impl Chart {
    fn new(h: &Halfspace, x0: &[i64]) -> Result<Self> {
        let d = h.a.len();
        let mut w: Vec<i128> = h.a.iter().map(|&x| x as i128).collect();
        let mut v: Vec<Vec<i128>> = (0..d).map(|i| (0..d).map(|j| i128::from(i == j)).collect()).collect();
        // Row operations on U mirror column operations on V.
        loop {
            let Some(p) = (0..d).filter(|&i| w[i] != 0).min_by_key(|&i| w[i].abs()) else {
                return Err(Error::DegenerateFacet);
            };
            if p != 0 {
                w.swap(0, p);
                for row in v.iter_mut() {
                    row.swap(0, p);
                }
            }
            let mut done = true;
            for i in 1..d {
                if w[i] == 0 {
                    continue;
                }
                let q = w[i].div_euclid(w[0]);
                w[i] -= q * w[0];
                for row in v.iter_mut() {
                    row[0] += q * row[i];
                }
                if w[i] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        Ok(Chart { x0: x0.to_vec(), v })
    }

    fn local(&self, x: &[i64]) -> Result<Vec<i64>> {
        let d = x.len();
        (1..d)
            .map(|j| {
                let s: i128 = (0..d).map(|i| (x[i] - self.x0[i]) as i128 * self.v[i][j]).sum();
                i64::try_from(s).map_err(|_| Error::Overflow("facet chart"))
            })
            .collect()
    }

    /// Lifts a local halfspace to an ambient affine function.
    fn lift(&self, r: &Halfspace) -> (Vec<i128>, i128) {
        let d = self.x0.len();
        let a: Vec<i128> = (0..d)
            .map(|i| (1..d).map(|j| self.v[i][j] * r.a[j - 1] as i128).sum())
            .collect();
        let b = r.b as i128 + a.iter().zip(&self.x0).map(|(&a, &x)| a * x as i128).sum::<i128>();
        (a, b)
    }
}

/// Determinant of a small integer matrix by fraction-free elimination.
fn det_i128(mut m: Vec<Vec<i128>>) -> Result<i128> {
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| m[i][k] != 0) else {
            return Ok(0);
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j]
                    .checked_mul(m[k][k])
                    .and_then(|x| x.checked_sub(m[i][k].checked_mul(m[k][j])?))
                    .ok_or(Error::Overflow("determinant"))?;
                m[i][j] = t / prev;
            }
        }
        prev = m[k][k];
    }
    Ok(sign * m[n - 1][n - 1])
}

/// Facets of a simplex given by `d + 1` affinely independent points in `Z^d`.
fn simplex_facets(points: &[Vec<i64>]) -> Result<Vec<HullFacet>> {
    let d = points[0].len();
    let mut out = Vec::with_capacity(d + 1);
    for skip in 0..=d {
        let idx: Vec<usize> = (0..=d).filter(|&i| i != skip).collect();
        let x0 = &points[idx[0]];
        let rows: Vec<Vec<i128>> = idx[1..]
            .iter()
            .map(|&i| points[i].iter().zip(x0).map(|(a, b)| (a - b) as i128).collect())
            .collect();
        // Normal by cofactor expansion of the (d−1) × d difference matrix.
        let mut a = vec![0i128; d];
        for (c, ac) in a.iter_mut().enumerate() {
            let minor: Vec<Vec<i128>> = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &x)| x).collect())
                .collect();
            let m = if minor.is_empty() { 1 } else { det_i128(minor)? };
            *ac = if c % 2 == 0 { m } else { -m };
        }
        let mut b: i128 = a.iter().zip(x0).map(|(&a, &x)| a * x as i128).sum();
        let other: i128 = a.iter().zip(&points[skip]).map(|(&a, &x)| a * x as i128).sum();
        if other > b {
            a.iter_mut().for_each(|x| *x = -*x);
            b = -b;
        }
        out.push(HullFacet { vertices: idx, halfspace: Halfspace::from_i128(&a, b)? });
    }
    Ok(out)
}

/// All facets of the convex hull of `points`, which must span `Z^d` affinely.
pub fn facets(points: &[Vec<i64>]) -> Result<Vec<HullFacet>> {
    let d = points.first().ok_or(Error::Empty)?.len();
    let all: Vec<usize> = (0..points.len()).collect();
    let r = affine_rank(points, &all);
    if r != d {
        return Err(Error::NotFullDimensional(r, d));
    }
    facets_full(points, d)
}

/// As [`facets`], for points already known to be full-dimensional.
fn facets_full(points: &[Vec<i64>], d: usize) -> Result<Vec<HullFacet>> {
    if points.len() == d + 1 {
        return simplex_facets(points);
    }
    if d == 1 {
        let lo = points.iter().map(|p| p[0]).min().expect("nonempty");
        let hi = points.iter().map(|p| p[0]).max().expect("nonempty");
        let out = vec![Halfspace { a: vec![-1], b: -lo }, Halfspace { a: vec![1], b: hi }];
        return Ok(out
            .into_iter()
            .map(|h| HullFacet { vertices: tight(points, &h), halfspace: h })
            .collect());
    }
    let first = initial_facet(points, d)?;
    let mut seen: BTreeMap<Vec<usize>, Halfspace> = BTreeMap::new();
    let mut queue = VecDeque::new();
    let fv = tight(points, &first);
    seen.insert(fv.clone(), first.clone());
    queue.push_back((fv, first));
    while let Some((fv, f)) = queue.pop_front() {
        let chart = Chart::new(&f, &points[fv[0]])?;
        let local: Vec<Vec<i64>> = fv.iter().map(|&i| chart.local(&points[i])).collect::<Result<_>>()?;
        for ridge in facets_full(&local, d - 1)? {
            let (h_a, h_b) = chart.lift(&ridge.halfspace);
            let g = rotate(points, &f, &h_a, h_b)?;
            let gv = tight(points, &g);
            if !seen.contains_key(&gv) {
                seen.insert(gv.clone(), g.clone());
                queue.push_back((gv, g));
            }
        }
    }
    Ok(seen.into_iter().map(|(vertices, halfspace)| HullFacet { vertices, halfspace }).collect())
}

/// Pulling triangulation: simplices (as index lists) covering the hull of
/// full-dimensional `points`, each containing the first vertex.
pub fn triangulate(points: &[Vec<i64>]) -> Result<Vec<Vec<usize>>> {
    let d = points.first().ok_or(Error::Empty)?.len();
    let all: Vec<usize> = (0..points.len()).collect();
    let r = affine_rank(points, &all);
    if r != d {
        return Err(Error::NotFullDimensional(r, d));
    }
    triangulate_full(points, d)
}

fn triangulate_full(points: &[Vec<i64>], d: usize) -> Result<Vec<Vec<usize>>> {
    if points.len() == d + 1 {
        return Ok(vec![(0..=d).collect()]);
    }
    let mut out = Vec::new();
    for f in facets_full(points, d)? {
        if f.vertices.contains(&0) {
            continue;
        }
        let chart = Chart::new(&f.halfspace, &points[f.vertices[0]])?;
        let local: Vec<Vec<i64>> = f.vertices.iter().map(|&i| chart.local(&points[i])).collect::<Result<_>>()?;
        for s in triangulate_full(&local, d - 1)? {
            let mut simplex = vec![0];
            simplex.extend(s.iter().map(|&j| f.vertices[j]));
            out.push(simplex);
        }
    }
    Ok(out)
}

/// `d!` times the volume of the hull, in coordinate units.
pub fn normalized_volume(points: &[Vec<i64>]) -> Result<i128> {
    let mut total = 0i128;
    for s in triangulate(points)? {
        let x0 = &points[s[0]];
        let m: Vec<Vec<i128>> = s[1..]
            .iter()
            .map(|&i| points[i].iter().zip(x0).map(|(a, b)| (a - b) as i128).collect())
            .collect();
        total += det_i128(m)?.abs();
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube(n: usize) -> Vec<Vec<i64>> {
        (0..1u32 << n).map(|m| (0..n).map(|i| ((m >> i) & 1) as i64).collect()).collect()
    }

    #[test]
    fn interval_has_two_facets() {
        let f = facets(&[vec![0], vec![1], vec![3]]).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f[0].vertices, vec![0]);
        assert_eq!(f[1].vertices, vec![2]);
    }

    #[test]
    fn cubes() {
        for n in 2..=5 {
            let f = facets(&cube(n)).unwrap();
            assert_eq!(f.len(), 2 * n);
            assert!(f.iter().all(|x| x.vertices.len() == 1 << (n - 1)));
        }
    }

    #[test]
    fn simplex_and_cross_polytope() {
        let mut s = vec![vec![0, 0, 0]];
        for i in 0..3 {
            let mut e = vec![0; 3];
            e[i] = 1;
            s.push(e);
        }
        assert_eq!(facets(&s).unwrap().len(), 4);
        let mut c = Vec::new();
        for i in 0..3 {
            for sgn in [-1, 1] {
                let mut e = vec![0; 3];
                e[i] = sgn;
                c.push(e);
            }
        }
        let f = facets(&c).unwrap();
        assert_eq!(f.len(), 8);
        for x in &f {
            assert!(c.iter().all(|p| x.halfspace.slack(p) >= 0));
        }
    }

    #[test]
    fn interior_points_ignored() {
        let pts = vec![vec![0, 0], vec![2, 0], vec![0, 2], vec![2, 2], vec![1, 1], vec![1, 0]];
        let f = facets(&pts).unwrap();
        assert_eq!(f.len(), 4);
        assert!(f.iter().any(|x| x.vertices == vec![0, 1, 5]));
    }

    #[test]
    fn volumes() {
        assert_eq!(normalized_volume(&cube(3)).unwrap(), 6);
        assert_eq!(normalized_volume(&cube(4)).unwrap(), 24);
        let tri = vec![vec![0, 0], vec![2, 0], vec![0, 2], vec![1, 1]];
        assert_eq!(normalized_volume(&tri).unwrap(), 4);
    }

    #[test]
    fn lower_dimensional_rejected() {
        assert!(facets(&[vec![0, 0], vec![1, 1], vec![2, 2]]).is_err());
    }
}
