//! Empty spheres, Delaunay cells, facet adjacency and tessellations up to translation.

use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::enumerate::Enumerator;
use crate::error::{Error, Result};
use crate::hull::{self, Halfspace};
use crate::lattice::Lattice;
use crate::linalg::kernel_integer;
use crate::matrix::{IntMatrix, RatMatrix};
use crate::modular::{primes, EchelonBasis};
use crate::rational::{dot, fmt_rational, ints_to_rats, parse_rational, rat, to_i64, IntVec, RatVec, Rational, ScaledVec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmptySphere {
    pub center: RatVec,
    pub radius_sq: Rational,
}

/// Lattice points on or inside a sphere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmptinessCertificate {
    pub boundary: Vec<IntVec>,
    pub interior: Vec<IntVec>,
}

impl EmptinessCertificate {
    pub fn is_empty(&self) -> bool {
        self.interior.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct DelaunayCell {
    pub lattice: Arc<Lattice>,
    pub center: RatVec,
    pub radius_sq: Rational,
    /// Lattice coordinates, sorted lexicographically.
    pub vertices: Vec<IntVec>,
    pub full_dim: bool,
}

impl PartialEq for DelaunayCell {
    fn eq(&self, other: &Self) -> bool {
        self.center == other.center
            && self.radius_sq == other.radius_sq
            && self.vertices == other.vertices
            && self.lattice.gram() == other.lattice.gram()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    /// Indices into the cell's vertex list.
    pub vertices: Vec<usize>,
    /// `a·x ≤ b` on the cell, with equality exactly on the facet.
    pub halfspace: Halfspace,
}

/// Squared distances `|p − c|²_G` for integer `p` and a fixed rational `c`,
/// computed in `i128` against an integer-scaled Gram matrix.
#[derive(Clone, Debug)]
pub struct DistanceKernel {
    n: usize,
    g: Vec<i128>,
    center: ScaledVec,
    /// Common denominator of every value: gram scale times center denominator².
    den: i128,
}

impl DistanceKernel {
    pub fn new(gram: &RatMatrix, center: &[Rational]) -> Result<Self> {
        let (gi, gd) = gram.clear_denominators();
        let g = gi.entries().iter().map(|x| to_i64(x).map(|v| v as i128)).collect::<Result<_>>()?;
        let center = ScaledVec::from_rats(center)?;
        let gd = to_i64(&gd)? as i128;
        let den = gd * center.den as i128 * center.den as i128;
        Ok(DistanceKernel { n: gram.rows(), g, center, den })
    }

    /// Numerator of the squared distance; divide by [`DistanceKernel::den`].
    pub fn num(&self, p: &[i64]) -> Result<i128> {
        let n = self.n;
        let d = self.center.den as i128;
        let diff: Vec<i128> = (0..n).map(|i| d * p[i] as i128 - self.center.num[i] as i128).collect();
        let mut acc: i128 = 0;
        for i in 0..n {
            if diff[i] == 0 {
                continue;
            }
            let mut row: i128 = 0;
            for j in 0..n {
                row = self.g[i * n + j]
                    .checked_mul(diff[j])
                    .and_then(|t| row.checked_add(t))
                    .ok_or(Error::Overflow("distance"))?;
            }
            acc = row.checked_mul(diff[i]).and_then(|t| acc.checked_add(t)).ok_or(Error::Overflow("distance"))?;
        }
        Ok(acc)
    }

    pub fn den(&self) -> i128 {
        self.den
    }

    pub fn dist(&self, p: &[i64]) -> Result<Rational> {
        Ok(Rational::new(BigInt::from(self.num(p)?), BigInt::from(self.den)))
    }

    /// Numerator matching `r` exactly, or `None` if `r` is not a multiple of `1/den`.
    pub fn scaled(&self, r: &Rational) -> Option<i128> {
        let s = r * Rational::from_integer(BigInt::from(self.den));
        if s.is_integer() {
            i128::try_from(s.numer().clone()).ok()
        } else {
            None
        }
    }
}

fn diff(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Indices (into `points`) of an affine basis `p₀, p_{i₁}, …`: the first point
/// plus points whose differences are linearly independent, with exact span certification.
pub fn affine_basis(points: &[IntVec]) -> Result<Vec<usize>> {
    let p0 = points.first().ok_or(Error::Empty)?;
    let n = p0.len();
    let mut chosen = vec![0usize];
    let mut ech = EchelonBasis::new(n, primes(1)[0]);
    for (i, p) in points.iter().enumerate().skip(1) {
        if ech.is_full() {
            break;
        }
        if ech.insert_i64(&diff(p, p0)) {
            chosen.push(i);
        }
    }
    // The modular rank is a lower bound; make sure every difference lies in the span.
    loop {
        if chosen.len() == n + 1 {
            return Ok(chosen);
        }
        let rows: Vec<Vec<i64>> = chosen[1..].iter().map(|&i| diff(&points[i], p0)).collect();
        let kernel = if rows.is_empty() {
            IntMatrix::identity(n)
        } else {
            kernel_integer(&IntMatrix::from_i64_rows_with_cols(&rows, n))
        };
        let k = kernel.to_i64_rows()?;
        let outside = points.iter().position(|p| {
            let d = diff(p, p0);
            k.iter().any(|w| w.iter().zip(&d).map(|(a, b)| *a as i128 * *b as i128).sum::<i128>() != 0)
        });
        match outside {
            None => return Ok(chosen),
            Some(i) => chosen.push(i),
        }
    }
}

/// Circumcenter (inside the affine span) and squared radius of a co-spherical point set.
/// Returns the sphere and the affine dimension of the points.
pub fn circumsphere(points: &[IntVec], gram: &RatMatrix) -> Result<(EmptySphere, usize)> {
    let basis = affine_basis(points)?;
    let p0 = &points[basis[0]];
    let k = basis.len() - 1;
    let d = RatMatrix::from_i64_rows(&basis[1..].iter().map(|&i| diff(&points[i], p0)).collect::<Vec<_>>());
    let p0r = ints_to_rats(p0);
    let center = if k == 0 {
        p0r.clone()
    } else {
        let dg = d.mul(gram)?.mul(&d.transpose())?;
        let rhs: Vec<Rational> = (0..k).map(|i| dg[(i, i)].clone() / rat(2, 1)).collect();
        let lam = RatMatrix::from_rows(vec![rhs])?.transpose();
        let lam = dg.inverse()?.mul(&lam)?;
        let lam: Vec<Rational> = (0..k).map(|i| lam[(i, 0)].clone()).collect();
        let shift = d.vec_mul(&lam);
        p0r.iter().zip(shift).map(|(a, b)| a + b).collect()
    };
    let kern = DistanceKernel::new(gram, &center)?;
    let r0 = kern.num(p0)?;
    for p in points {
        if kern.num(p)? != r0 {
            return Err(Error::NotCospherical);
        }
    }
    let radius_sq = Rational::new(BigInt::from(r0), BigInt::from(kern.den()));
    Ok((EmptySphere { center, radius_sq }, k))
}

/// Lattice points at squared distance at most `radius_sq` from `c`, split into
/// boundary and strict interior.
pub fn verify_empty_sphere(l: &Lattice, c: &[Rational], radius_sq: &Rational) -> Result<EmptinessCertificate> {
    verify_with(&Enumerator::new(l)?, c, radius_sq)
}

pub fn verify_with(en: &Enumerator, c: &[Rational], radius_sq: &Rational) -> Result<EmptinessCertificate> {
    if c.len() != en.rank() {
        return Err(Error::OutsideSpan);
    }
    let mut cert = EmptinessCertificate { boundary: Vec::new(), interior: Vec::new() };
    for (p, d) in en.points_within(c, radius_sq)? {
        if &d == radius_sq {
            cert.boundary.push(p);
        } else {
            cert.interior.push(p);
        }
    }
    Ok(cert)
}

/// The Delaunay cell `D_L(x)`: the closest lattice points to `x`, recentred at their circumcenter.
pub fn delaunay_cell(l: &Arc<Lattice>, x: &[Rational]) -> Result<DelaunayCell> {
    cell_with(&Enumerator::new(l)?, l, x)
}

pub fn cell_with(en: &Enumerator, l: &Arc<Lattice>, x: &[Rational]) -> Result<DelaunayCell> {
    let (_, vertices) = en.closest_vectors(x)?;
    let (sphere, dim) = circumsphere(&vertices, l.gram())?;
    Ok(DelaunayCell {
        lattice: l.clone(),
        center: sphere.center,
        radius_sq: sphere.radius_sq,
        vertices,
        full_dim: dim == l.rank(),
    })
}

/// Builds a cell from a vertex set, certifying co-sphericity and emptiness; the
/// returned vertex list is every lattice point on the sphere, which may be larger.
pub fn cell_from_vertices(l: &Arc<Lattice>, en: &Enumerator, vertices: &[IntVec]) -> Result<DelaunayCell> {
    let (sphere, _) = circumsphere(vertices, l.gram())?;
    let cert = verify_with(en, &sphere.center, &sphere.radius_sq)?;
    if !cert.is_empty() {
        return Err(Error::Verification(format!(
            "sphere through the given points contains {} lattice points",
            cert.interior.len()
        )));
    }
    let (_, dim) = circumsphere(&cert.boundary, l.gram())?;
    Ok(DelaunayCell {
        lattice: l.clone(),
        center: sphere.center,
        radius_sq: sphere.radius_sq,
        vertices: cert.boundary,
        full_dim: dim == l.rank(),
    })
}

impl DelaunayCell {
    pub fn dim(&self) -> usize {
        self.lattice.rank()
    }

    pub fn facets(&self) -> Result<Vec<Facet>> {
        if !self.full_dim {
            return Err(Error::NotFullDimensional(affine_basis(&self.vertices)?.len() - 1, self.dim()));
        }
        Ok(hull::facets(&self.vertices)?
            .into_iter()
            .map(|f| Facet { vertices: f.vertices, halfspace: f.halfspace })
            .collect())
    }

    pub fn sphere(&self) -> EmptySphere {
        EmptySphere { center: self.center.clone(), radius_sq: self.radius_sq.clone() }
    }

    pub fn verify(&self) -> Result<EmptinessCertificate> {
        verify_empty_sphere(&self.lattice, &self.center, &self.radius_sq)
    }

    /// The cell moved by an integer vector.
    pub fn translate(&self, t: &[i64]) -> DelaunayCell {
        let mut vertices: Vec<IntVec> =
            self.vertices.iter().map(|v| v.iter().zip(t).map(|(a, b)| a + b).collect()).collect();
        vertices.sort();
        DelaunayCell {
            lattice: self.lattice.clone(),
            center: self.center.iter().zip(t).map(|(c, &x)| c + Rational::from_integer(x.into())).collect(),
            radius_sq: self.radius_sq.clone(),
            vertices,
            full_dim: self.full_dim,
        }
    }

    /// Translate of the cell whose sorted vertex list is lexicographically smallest.
    pub fn canonical(&self) -> DelaunayCell {
        let best = self
            .vertices
            .iter()
            .map(|v| {
                let mut w: Vec<IntVec> = self.vertices.iter().map(|u| diff(u, v)).collect();
                w.sort();
                (w, v)
            })
            .min()
            .map(|(_, v)| v.clone())
            .unwrap_or_default();
        let neg: Vec<i64> = best.iter().map(|x| -x).collect();
        self.translate(&neg)
    }
}

/// The neighbouring cell across `facet`.
pub fn adjacent_cell(cell: &DelaunayCell, facet: &Facet) -> Result<DelaunayCell> {
    adjacent_with(&Enumerator::new(&cell.lattice)?, cell, facet)
}

pub fn adjacent_with(en: &Enumerator, cell: &DelaunayCell, facet: &Facet) -> Result<DelaunayCell> {
    let a = &facet.halfspace.a;
    if a.iter().all(|&x| x == 0) || facet.vertices.is_empty() {
        return Err(Error::DegenerateFacet);
    }
    // n = G⁻¹a is Gram-orthogonal to the facet and points out of the cell.
    let dir = cell.lattice.gram().inverse()?.mul_vec(&ints_to_rats(a));
    let vf = &cell.vertices[facet.vertices[0]];
    let w = cell
        .vertices
        .iter()
        .find(|v| facet.halfspace.slack(v) > 0)
        .ok_or(Error::DegenerateFacet)?;
    let start: IntVec = vf.iter().zip(w).map(|(x, y)| 2 * x - y).collect();
    let next = pivot(en, cell, vf, &dir, &start)?;
    if facet.vertices.iter().any(|&i| next.vertices.binary_search(&cell.vertices[i]).is_err()) {
        return Err(Error::Verification("adjacent cell lost facet vertices".into()));
    }
    Ok(next)
}

/// Moves the center of `cell` along `dir` (Gram-orthogonal to the affine span of
/// its vertices) to the first position where a new lattice point joins the sphere.
/// `start` is any lattice point ahead of the vertices in direction `dir`.
fn pivot(en: &Enumerator, cell: &DelaunayCell, anchor: &[i64], dir: &[Rational], start: &[i64]) -> Result<DelaunayCell> {
    let l = &cell.lattice;
    let g = l.gram();
    let gdir = g.mul_vec(dir);
    let dir_norm = dot(dir, &gdir);
    let anchor_r = ints_to_rats(anchor);
    let ac: Vec<Rational> = cell.center.iter().zip(&anchor_r).map(|(c, v)| c - v).collect();
    let s = dot(&ac, &gdir);
    let two = rat(2, 1);
    // A point p enters the sphere at t_p = (|c−p|² − r²) / (2⟨p − anchor, dir⟩).
    let t_of = |p: &[i64]| -> Option<Rational> {
        let pr = ints_to_rats(p);
        let pv: Vec<Rational> = pr.iter().zip(&anchor_r).map(|(x, y)| x - y).collect();
        let gp = dot(&pv, &gdir);
        if !gp.is_positive() {
            return None;
        }
        let dc: Vec<Rational> = pr.iter().zip(&cell.center).map(|(x, y)| x - y).collect();
        Some((g.bilinear(&dc, &dc) - &cell.radius_sq) / (&two * gp))
    };
    let mut t = t_of(start).ok_or(Error::DegenerateFacet)?;
    loop {
        let center: RatVec = cell.center.iter().zip(dir).map(|(c, d)| c + &t * d).collect();
        let r2 = &cell.radius_sq + &two * &t * &s + &t * &t * &dir_norm;
        let (d2, pts) = en.closest_vectors(&center)?;
        if d2 == r2 {
            let (_, dim) = circumsphere(&pts, g)?;
            return Ok(DelaunayCell { lattice: l.clone(), center, radius_sq: r2, vertices: pts, full_dim: dim == l.rank() });
        }
        if d2 > r2 {
            return Err(Error::Verification("vertices moved off the pivoted sphere".into()));
        }
        let next = pts.iter().filter_map(|p| t_of(p)).min().ok_or(Error::DegenerateFacet)?;
        if next >= t {
            return Err(Error::Verification("center pivot did not decrease".into()));
        }
        t = next;
    }
}

/// Enlarges a lower-dimensional cell until it is full-dimensional, each step
/// moving the center Gram-orthogonally to the current vertex span.
pub fn grow_to_full(en: &Enumerator, mut cell: DelaunayCell) -> Result<DelaunayCell> {
    let n = cell.dim();
    while !cell.full_dim {
        let g = cell.lattice.gram();
        let v0 = cell.vertices[0].clone();
        let basis = affine_basis(&cell.vertices)?;
        let dir: RatVec = if basis.len() == 1 {
            let mut e = zero_vec(n);
            e[0] = rat(1, 1);
            e
        } else {
            let d = RatMatrix::from_i64_rows(&basis[1..].iter().map(|&i| diff(&cell.vertices[i], &v0)).collect::<Vec<_>>());
            let k = crate::linalg::kernel_rational(&d.mul(g)?);
            ints_to_rats(&k.row_i64(0)?)
        };
        let gdir = g.mul_vec(&dir);
        let i = gdir.iter().position(|x| !x.is_zero()).ok_or(Error::DegenerateFacet)?;
        let mut start = v0.clone();
        start[i] += if gdir[i].is_positive() { 1 } else { -1 };
        cell = pivot(en, &cell, &v0, &dir, &start)?;
    }
    Ok(cell)
}

#[derive(Clone, Debug)]
pub struct TessellateOptions {
    pub max_rank_guard: usize,
    pub seed: u64,
}

impl Default for TessellateOptions {
    fn default() -> Self {
        TessellateOptions { max_rank_guard: 8, seed: 0x5eed }
    }
}

/// A full-dimensional cell grown from the cell of a pseudo-random point with denominator `3·2^10`.
pub fn generic_cell(en: &Enumerator, l: &Arc<Lattice>, seed: u64) -> Result<DelaunayCell> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let den = 3 * 1024;
    let x: RatVec = (0..l.rank()).map(|_| rat(rng.gen_range(0..den), den)).collect();
    grow_to_full(en, cell_with(en, l, &x)?)
}

/// Representatives of all translation classes of full-dimensional Delaunay cells,
/// each in canonical position, sorted by vertex list.
pub fn tessellate(l: &Arc<Lattice>, opts: &TessellateOptions) -> Result<Vec<DelaunayCell>> {
    if l.rank() > opts.max_rank_guard {
        return Err(Error::RankGuard(l.rank(), opts.max_rank_guard));
    }
    let en = Enumerator::new(l)?;
    let start = generic_cell(&en, l, opts.seed)?.canonical();
    let mut classes: BTreeMap<Vec<IntVec>, DelaunayCell> = BTreeMap::new();
    let mut queue = VecDeque::new();
    classes.insert(start.vertices.clone(), start.clone());
    queue.push_back(start);
    while let Some(cell) = queue.pop_front() {
        for f in cell.facets()? {
            let next = adjacent_with(&en, &cell, &f)?.canonical();
            if !classes.contains_key(&next.vertices) {
                classes.insert(next.vertices.clone(), next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(classes.into_values().collect())
}

/// Squared covering radius: the largest squared circumradius over all cells.
pub fn covering_radius(l: &Arc<Lattice>, opts: &TessellateOptions) -> Result<Rational> {
    tessellate(l, opts)?
        .into_iter()
        .map(|c| c.radius_sq)
        .max()
        .ok_or(Error::Empty)
}

/// The polytope text format: a lattice file reference, center, radius and vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeFile {
    pub lattice_file: String,
    pub center: RatVec,
    pub radius_sq: Rational,
    pub vertices: Vec<IntVec>,
}

impl PolytopeFile {
    pub fn from_cell(cell: &DelaunayCell, lattice_file: &str) -> Self {
        PolytopeFile {
            lattice_file: lattice_file.to_string(),
            center: cell.center.clone(),
            radius_sq: cell.radius_sq.clone(),
            vertices: cell.vertices.clone(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("lattice-file {}\n", self.lattice_file);
        s += &format!("delaunay {} {}\n", self.center.len(), self.vertices.len());
        s += "center";
        for c in &self.center {
            s += " ";
            s += &fmt_rational(c);
        }
        s += &format!("\nradius_sq {}\n", fmt_rational(&self.radius_sq));
        for v in &self.vertices {
            let line: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            s += &line.join(" ");
            s += "\n";
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let err = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
        let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
        let head = |i: usize, key: &str| -> Result<Vec<&str>> {
            let l = lines.get(i).ok_or_else(|| err(i + 1, "unexpected end of file"))?;
            let mut it = l.split_whitespace();
            if it.next() != Some(key) {
                return Err(err(i + 1, &format!("expected `{key}`")));
            }
            Ok(it.collect())
        };
        let lf = head(0, "lattice-file")?;
        if lf.len() != 1 {
            return Err(err(1, "expected one path"));
        }
        let dims = head(1, "delaunay")?;
        let nums: Vec<usize> = dims.iter().map(|x| x.parse().map_err(|_| err(2, "bad count"))).collect::<Result<_>>()?;
        let [rank, nv] = nums[..] else {
            return Err(err(2, "expected rank and vertex count"));
        };
        let center: RatVec = head(2, "center")?
            .iter()
            .map(|x| parse_rational(x).ok_or_else(|| err(3, "bad rational")))
            .collect::<Result<_>>()?;
        if center.len() != rank {
            return Err(err(3, "center length does not match rank"));
        }
        let r = head(3, "radius_sq")?;
        let radius_sq = match r[..] {
            [x] => parse_rational(x).ok_or_else(|| err(4, "bad rational"))?,
            _ => return Err(err(4, "expected one rational")),
        };
        if lines.len() != 4 + nv {
            return Err(err(lines.len(), "vertex count mismatch"));
        }
        let mut vertices = Vec::with_capacity(nv);
        for (i, l) in lines[4..].iter().enumerate() {
            let v: IntVec = l
                .split_whitespace()
                .map(|x| x.parse().map_err(|_| err(i + 5, "bad integer")))
                .collect::<Result<_>>()?;
            if v.len() != rank {
                return Err(err(i + 5, "vertex length does not match rank"));
            }
            vertices.push(v);
        }
        Ok(PolytopeFile { lattice_file: lf[0].to_string(), center, radius_sq, vertices })
    }

    /// Attaches the lattice and checks that every vertex lies on the stated sphere.
    pub fn into_cell(self, l: Arc<Lattice>) -> Result<DelaunayCell> {
        if self.center.len() != l.rank() {
            return Err(Error::Dimension("polytope rank does not match lattice".into()));
        }
        let kern = DistanceKernel::new(l.gram(), &self.center)?;
        for v in &self.vertices {
            if kern.dist(v)? != self.radius_sq {
                return Err(Error::NotCospherical);
            }
        }
        let mut vertices = self.vertices;
        vertices.sort();
        let dim = if vertices.is_empty() { 0 } else { affine_basis(&vertices)?.len() - 1 };
        Ok(DelaunayCell {
            full_dim: dim == l.rank(),
            lattice: l,
            center: self.center,
            radius_sq: self.radius_sq,
            vertices,
        })
    }
}

/// Rational vector with all-zero entries.
pub fn zero_vec(n: usize) -> RatVec {
    vec![Rational::zero(); n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn zn(n: usize) -> Arc<Lattice> {
        Arc::new(Lattice::new(RatMatrix::identity(n)).unwrap())
    }

    fn a2() -> Arc<Lattice> {
        Arc::new(Lattice::from_gram(RatMatrix::from_i64_rows(&[vec![2, 1], vec![1, 2]])).unwrap())
    }

    #[test]
    fn circumsphere_small() {
        let g = RatMatrix::identity(1);
        let (s, k) = circumsphere(&[vec![0], vec![1]], &g).unwrap();
        assert_eq!((s.center, s.radius_sq, k), (vec![rat(1, 2)], rat(1, 4), 1));
        let g = RatMatrix::identity(2);
        let sq = vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]];
        let (s, _) = circumsphere(&sq, &g).unwrap();
        assert_eq!((s.center, s.radius_sq), (vec![rat(1, 2), rat(1, 2)], rat(1, 2)));
        assert!(circumsphere(&[vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 2]], &g).is_err());
    }

    #[test]
    fn square_sphere_certificates() {
        let l = zn(2);
        let c = [rat(1, 2), rat(1, 2)];
        let cert = verify_empty_sphere(&l, &c, &rat(1, 2)).unwrap();
        assert!(cert.is_empty());
        assert_eq!(cert.boundary.len(), 4);
        let cert = verify_empty_sphere(&l, &c, &rat(3, 4)).unwrap();
        assert!(!cert.is_empty());
        assert!(cert.boundary.is_empty());
        assert_eq!(cert.interior.len(), 4);
    }

    #[test]
    fn square_cell_and_neighbour() {
        let l = zn(2);
        let cell = delaunay_cell(&l, &[rat(1, 2), rat(1, 2)]).unwrap();
        assert!(cell.full_dim);
        let facets = cell.facets().unwrap();
        assert_eq!(facets.len(), 4);
        for f in &facets {
            let next = adjacent_cell(&cell, f).unwrap();
            assert_eq!(next.canonical().vertices, cell.canonical().vertices);
            assert_eq!(next.radius_sq, rat(1, 2));
        }
    }

    #[test]
    fn a2_triangles_alternate() {
        let l = a2();
        let cell = delaunay_cell(&l, &[rat(1, 3), rat(1, 3)]).unwrap();
        assert_eq!(cell.vertices.len(), 3);
        for f in cell.facets().unwrap() {
            let next = adjacent_cell(&cell, &f).unwrap();
            assert_eq!(next.vertices.len(), 3);
            assert_ne!(next.canonical().vertices, cell.canonical().vertices);
        }
    }

    #[test]
    fn tessellations() {
        let opts = TessellateOptions::default();
        assert_eq!(tessellate(&zn(3), &opts).unwrap().len(), 1);
        assert_eq!(tessellate(&a2(), &opts).unwrap().len(), 2);
        assert_eq!(covering_radius(&a2(), &opts).unwrap(), rat(2, 3));
        for n in 1..=4 {
            assert_eq!(covering_radius(&zn(n), &opts).unwrap(), rat(n as i64, 4));
        }
    }

    #[test]
    fn rank_guard() {
        let opts = TessellateOptions { max_rank_guard: 2, ..Default::default() };
        assert!(matches!(tessellate(&zn(3), &opts), Err(Error::RankGuard(3, 2))));
    }

    #[test]
    fn polytope_text_round_trip() {
        let l = zn(2);
        let cell = delaunay_cell(&l, &[rat(1, 2), rat(1, 2)]).unwrap();
        let text = PolytopeFile::from_cell(&cell, "z2.lat").to_text();
        let back = PolytopeFile::parse(&text).unwrap().into_cell(l).unwrap();
        assert_eq!(back, cell);
        assert_eq!(back.radius_sq, rat(1, 2));
        assert!(PolytopeFile::parse("delaunay 1 1\n").is_err());
        let _ = int(0);
    }
}
