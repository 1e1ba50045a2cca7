//! Invariants of Delaunay polytopes: the quadratic function `f_D`, perfection
//! rank, design strength, center denominators, symmetry, the affinely generated
//! lattice and lamination structure.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::delaunay::{affine_basis, DelaunayCell, DistanceKernel};
use crate::enumerate::Enumerator;
use crate::error::{Error, Result};
use crate::lattice::{f2_vector, index2_sub_coeffs, CoordinateSolver, Lattice, SublatticePair};
use crate::linalg::{elementary_divisors, kernel_integer, kernel_rational, rank_exact, row_lattice_basis};
use crate::matrix::{IntMatrix, RatMatrix};
use crate::modular::{primes, EchelonBasis};
use crate::rational::{dot, ints_to_rats, lcm_denominators, rat, IntVec, RatVec, Rational, ScaledVec};

/// `f(x) = xᵀQx + bᵀx + c0` on lattice coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticFunction {
    pub q: RatMatrix,
    pub b: RatVec,
    pub c0: Rational,
}

impl QuadraticFunction {
    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.q.bilinear(x, x) + dot(&self.b, x) + &self.c0
    }

    pub fn eval_int(&self, x: &[i64]) -> Rational {
        self.eval(&ints_to_rats(x))
    }

    /// Coefficients on the monomials `xᵢxⱼ (i ≤ j)`, then `xᵢ`, then `1`.
    pub fn monomial_coeffs(&self) -> RatVec {
        let n = self.b.len();
        let mut out = Vec::with_capacity(n * (n + 3) / 2 + 1);
        for i in 0..n {
            for j in i..n {
                out.push(if i == j { self.q[(i, i)].clone() } else { &self.q[(i, j)] * rat(2, 1) });
            }
        }
        out.extend(self.b.iter().cloned());
        out.push(self.c0.clone());
        out
    }
}

/// `f_D(x) = |x − c|² − r²`, which vanishes exactly on the sphere.
pub fn build_fd(cell: &DelaunayCell) -> QuadraticFunction {
    let g = cell.lattice.gram().clone();
    let gc = g.mul_vec(&cell.center);
    let b = gc.iter().map(|x| x * rat(-2, 1)).collect();
    let c0 = dot(&cell.center, &gc) - &cell.radius_sq;
    QuadraticFunction { q: g, b, c0 }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectionReport {
    pub dim_quadratics: usize,
    pub constraint_rank: usize,
    pub perfection_rank: usize,
    pub is_perfect: bool,
}

fn monomial_row(x: &[i64]) -> Vec<i64> {
    let n = x.len();
    let mut r = Vec::with_capacity(n * (n + 3) / 2 + 1);
    for i in 0..n {
        for j in i..n {
            r.push(x[i] * x[j]);
        }
    }
    r.extend_from_slice(x);
    r.push(1);
    r
}

/// Rank of the vertex-evaluation matrix, given one known nonzero kernel vector
/// (so the rank is at most `cols − 1`). The modular rank is a lower bound; the
/// upper bound comes from exact kernel vectors checked against every row.
fn evaluation_rank(rows: &[Vec<i64>], cols: usize) -> usize {
    let mut ech = EchelonBasis::new(cols, primes(1)[0]);
    let mut chosen = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        if ech.insert_i64(r) {
            chosen.push(i);
            if ech.rank() + 1 == cols {
                return ech.rank();
            }
        }
    }
    let sel = RatMatrix::from_i64_rows(&chosen.iter().map(|&i| rows[i].clone()).collect::<Vec<_>>());
    let kernel = kernel_rational(&sel);
    let certified = kernel.rows() + chosen.len() == cols
        && (0..kernel.rows()).all(|k| {
            let kv = kernel.row(k);
            rows.iter().all(|r| {
                r.iter().zip(kv).fold(BigInt::zero(), |acc, (&a, b)| acc + b * a).is_zero()
            })
        });
    if certified {
        chosen.len()
    } else {
        rank_exact(&RatMatrix::from_i64_rows(rows))
    }
}

/// Perfection rank of a full-dimensional cell. Also checks that `f_D` vanishes
/// on every vertex, which places it in the computed span.
pub fn perfection_rank(cell: &DelaunayCell) -> Result<PerfectionReport> {
    if !cell.full_dim {
        return Err(Error::NotFullDimensional(affine_basis(&cell.vertices)?.len() - 1, cell.dim()));
    }
    let n = cell.dim();
    let dim_quadratics = n * (n + 3) / 2 + 1;
    let fd = build_fd(cell);
    let coeffs = fd.monomial_coeffs();
    let rows: Vec<Vec<i64>> = cell.vertices.iter().map(|v| monomial_row(v)).collect();
    for r in &rows {
        let v: Rational = r.iter().zip(&coeffs).map(|(&a, c)| c * Rational::from_integer(a.into())).sum();
        if !v.is_zero() {
            return Err(Error::Verification("f_D does not vanish on a vertex".into()));
        }
    }
    let constraint_rank = evaluation_rank(&rows, dim_quadratics);
    let perfection_rank = dim_quadratics - constraint_rank;
    Ok(PerfectionReport { dim_quadratics, constraint_rank, perfection_rank, is_perfect: perfection_rank == 1 })
}

/// `m_k(n)`: the `k`-th moment `⟨x, y⟩^k` averaged over pairs on the unit sphere in `Rⁿ`.
pub fn sphere_moment(k: usize, n: usize) -> Rational {
    if k % 2 == 1 {
        return Rational::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    let mut j = 1;
    while j < k {
        num *= j;
        j += 2;
    }
    let mut j = 0;
    while j < k {
        den *= n + j;
        j += 2;
    }
    Rational::new(num, den)
}

/// Largest `t ≤ t_max` with `Σ_{x,y} ⟨x−c, y−c⟩^k = N²·r^{2k}·m_k(n)` for `k = 1..t`,
/// where `n` is the affine dimension of the points.
pub fn design_strength_points(points: &[IntVec], center: &[Rational], gram: &RatMatrix, t_max: usize) -> Result<usize> {
    if points.is_empty() {
        return Err(Error::Empty);
    }
    let n = affine_basis(points)?.len() - 1;
    if n == 0 {
        return Ok(t_max);
    }
    let (gi, _) = gram.clear_denominators();
    let g: Vec<i64> = gi.to_i64_rows()?.concat();
    let c = ScaledVec::from_rats(center)?;
    let dim = center.len();
    let ys: Vec<Vec<i64>> = points
        .iter()
        .map(|p| p.iter().zip(&c.num).map(|(&x, &cn)| c.den * x - cn).collect())
        .collect();
    let zs: Vec<Vec<i64>> = ys
        .iter()
        .map(|y| (0..dim).map(|i| (0..dim).map(|j| g[i * dim + j] * y[j]).sum()).collect())
        .collect();
    let inner = |a: &[i64], b: &[i64]| -> i64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    let rho = inner(&ys[0], &zs[0]);
    // Histogram of scaled pair inner products, merged in key order. All points lie
    // on one sphere, so |⟨y_a, y_b⟩| ≤ rho and a dense table works when rho is small.
    let hist: Vec<(i64, u64)> = if rho.unsigned_abs() <= 1 << 20 {
        let width = 2 * rho as usize + 1;
        let table = (0..ys.len())
            .into_par_iter()
            .fold(
                || vec![0u64; width],
                |mut h, a| {
                    for z in &zs {
                        h[(inner(&ys[a], z) + rho) as usize] += 1;
                    }
                    h
                },
            )
            .reduce(
                || vec![0u64; width],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            );
        table
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .map(|(i, c)| (i as i64 - rho, c))
            .collect()
    } else {
        (0..ys.len())
            .into_par_iter()
            .fold(std::collections::BTreeMap::new, |mut h, a| {
                for z in &zs {
                    *h.entry(inner(&ys[a], z)).or_insert(0u64) += 1;
                }
                h
            })
            .reduce(std::collections::BTreeMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
                a
            })
            .into_iter()
            .collect()
    };
    let nn = BigInt::from(points.len()) * BigInt::from(points.len());
    for k in 1..=t_max {
        let lhs: BigInt = hist.iter().map(|&(v, cnt)| BigInt::from(v).pow(k as u32) * cnt).sum();
        let rhs = Rational::from_integer(&nn * BigInt::from(rho).pow(k as u32)) * sphere_moment(k, n);
        if Rational::from_integer(lhs) != rhs {
            return Ok(k - 1);
        }
    }
    Ok(t_max)
}

pub fn design_strength(cell: &DelaunayCell, t_max: usize) -> Result<usize> {
    design_strength_points(&cell.vertices, &cell.center, cell.lattice.gram(), t_max)
}

/// Least `d > 0` with `d·c` in the lattice, for `c` in lattice coordinates.
pub fn tden(c: &[Rational]) -> BigInt {
    lcm_denominators(c.iter())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetryKind {
    CentrallySymmetric,
    Antisymmetric,
}

/// Whether the vertex set is closed under `v ↦ 2c − v`; cross-checked against `tden(c) = 2`.
pub fn symmetry_kind(cell: &DelaunayCell) -> Result<SymmetryKind> {
    let two_c: RatVec = cell.center.iter().map(|x| x * rat(2, 1)).collect();
    let kind = if two_c.iter().all(|x| x.is_integer()) {
        let tc: Vec<i64> = two_c.iter().map(|x| x.to_integer().to_i64().unwrap_or(i64::MAX)).collect();
        let hits = cell
            .vertices
            .iter()
            .filter(|v| {
                let w: IntVec = tc.iter().zip(v.iter()).map(|(a, b)| a - b).collect();
                cell.vertices.binary_search(&w).is_ok()
            })
            .count();
        if hits == cell.vertices.len() {
            SymmetryKind::CentrallySymmetric
        } else if hits == 0 {
            SymmetryKind::Antisymmetric
        } else {
            return Err(Error::MixedSymmetry(hits, cell.vertices.len()));
        }
    } else {
        SymmetryKind::Antisymmetric
    };
    let t = tden(&cell.center);
    if (kind == SymmetryKind::CentrallySymmetric) != (t == BigInt::from(2)) && cell.full_dim {
        return Err(Error::Verification(format!("symmetry {kind:?} disagrees with tden {t}")));
    }
    Ok(kind)
}

/// The lattice `L(D)` generated by vertex differences, as a sublattice of the
/// vertices' saturated span (`L` itself for a full-dimensional cell), with its index.
pub fn affine_lattice(cell: &DelaunayCell) -> Result<SublatticePair> {
    let v0 = cell.vertices.first().ok_or(Error::Empty)?;
    if cell.vertices.len() < 2 {
        return Err(Error::Degenerate(2));
    }
    let n = cell.dim();
    let diffs: Vec<IntVec> = cell.vertices[1..].iter().map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect()).collect();
    let sub = row_lattice_basis(&IntMatrix::from_i64_rows_with_cols(&diffs, n));
    let sat = if sub.rows() == n {
        IntMatrix::identity(n)
    } else {
        let k = kernel_integer(&sub);
        kernel_integer(&k)
    };
    let l = &cell.lattice;
    SublatticePair::new(l.from_int_coeffs(&sub)?, l.from_int_coeffs(&sat)?)
}

/// Index of `L(D)` in the saturated span of the vertex differences.
pub fn generating_index(vertices: &[IntVec]) -> Result<BigInt> {
    let v0 = vertices.first().ok_or(Error::Empty)?;
    let diffs: Vec<IntVec> = vertices[1..].iter().map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect()).collect();
    let m = IntMatrix::from_i64_rows_with_cols(&diffs, v0.len());
    Ok(elementary_divisors(&m).into_iter().filter(|d| !d.is_zero()).product())
}

/// A split of the vertex set into the two laminae `h = k` and `h = k + 1`.
#[derive(Clone, Debug)]
pub struct LaminationPartition {
    /// Primitive integral functional in lattice coordinates.
    pub functional: IntVec,
    /// The primitive sublattice `ker h` of rank `n − 1`.
    pub sublattice: Lattice,
    pub offsets: Vec<i64>,
    /// Vertex indices per offset.
    pub slices: Vec<Vec<usize>>,
}

fn values(points: &[IntVec], h: &[i64]) -> Vec<i64> {
    points.iter().map(|p| p.iter().zip(h).map(|(a, b)| a * b).sum()).collect()
}

fn width(points: &[IntVec], h: &[i64]) -> i64 {
    let v = values(points, h);
    v.iter().max().copied().unwrap_or(0) - v.iter().min().copied().unwrap_or(0)
}

fn normalize_sign(mut h: IntVec) -> IntVec {
    if h.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        h.iter_mut().for_each(|x| *x = -*x);
    }
    h
}

/// `N²·Cov = N·Σxxᵀ − s·sᵀ` for the points, and `N`.
fn scaled_covariance(points: &[IntVec]) -> Result<(RatMatrix, i128)> {
    let n = points.first().ok_or(Error::Empty)?.len();
    let big_n = points.len() as i128;
    let mut s = vec![0i128; n];
    let mut m = vec![0i128; n * n];
    for p in points {
        for i in 0..n {
            s[i] += p[i] as i128;
            for j in 0..n {
                m[i * n + j] += p[i] as i128 * p[j] as i128;
            }
        }
    }
    let rows: Vec<RatVec> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Rational::from_integer(BigInt::from(big_n * m[i * n + j] - s[i] * s[j])))
                .collect()
        })
        .collect();
    Ok((RatMatrix::from_rows(rows)?, big_n))
}

fn width_bound(big_n: i128, w: i64) -> Rational {
    Rational::new(BigInt::from(big_n * big_n * (w as i128) * (w as i128)), BigInt::from(4))
}

/// Gaussian-heuristic estimate of the number of integer points in `{h : hᵀGh ≤ bound}`.
fn ellipsoid_count_estimate(gram: &RatMatrix, bound: &Rational) -> f64 {
    let n = gram.rows();
    let g: Vec<f64> = gram.entries().iter().map(crate::rational::rat_to_f64).collect();
    // log det by Cholesky.
    let mut l = vec![0f64; n * n];
    let mut log_det = 0.0;
    for j in 0..n {
        let mut d = g[j * n + j];
        for k in 0..j {
            d -= l[j * n + k] * l[j * n + k];
        }
        if d <= 0.0 {
            return f64::INFINITY;
        }
        let d = d.sqrt();
        l[j * n + j] = d;
        log_det += 2.0 * d.ln();
        for i in j + 1..n {
            let mut x = g[i * n + j];
            for k in 0..j {
                x -= l[i * n + k] * l[j * n + k];
            }
            l[i * n + j] = x / d;
        }
    }
    let nf = n as f64;
    let log_ball = nf / 2.0 * std::f64::consts::PI.ln() - ln_gamma(nf / 2.0 + 1.0);
    (log_ball + nf / 2.0 * crate::rational::rat_to_f64(bound).ln() - log_det / 2.0).exp()
}

fn ln_gamma(x: f64) -> f64 {
    // Stirling series; x ≥ 1 here.
    let mut x = x;
    let mut shift = 0.0;
    while x < 8.0 {
        shift -= x.ln();
        x += 1.0;
    }
    shift + (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + 1.0 / (12.0 * x) - 1.0 / (360.0 * x.powi(3))
}

/// Every nonzero integral functional (up to sign) whose width on the points is
/// at most `max_width`, found by enumerating `hᵀ·Cov·h ≤ max_width²/4`: a
/// functional of width `w` has variance at most `w²/4`.
pub fn functionals_up_to_width(points: &[IntVec], max_width: i64) -> Result<Vec<IntVec>> {
    let n = points.first().ok_or(Error::Empty)?.len();
    let (cov, big_n) = scaled_covariance(points)?;
    let en = Enumerator::from_gram(&cov).map_err(|_| Error::NotFullDimensional(0, n))?;
    let zero = vec![Rational::zero(); n];
    let mut out: Vec<IntVec> = en
        .points_within(&zero, &width_bound(big_n, max_width))?
        .into_iter()
        .map(|(h, _)| h)
        .filter(|h| h.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0))
        .filter(|h| width(points, h) <= max_width)
        .collect();
    out.sort();
    Ok(out)
}

/// Width-one functionals by the covariance ellipsoid.
pub fn two_lamination_functionals_ellipsoid(points: &[IntVec]) -> Result<Vec<IntVec>> {
    Ok(functionals_up_to_width(points, 1)?.into_iter().filter(|h| width(points, h) == 1).collect())
}

/// Width-one functionals by subsets of a fixed affine basis `S`: each 2-lamination
/// is determined by which points of `S` lie on the lower lamina.
pub fn two_lamination_functionals_subsets(points: &[IntVec]) -> Result<Vec<IntVec>> {
    let basis = affine_basis(points)?;
    let n = points[0].len();
    if basis.len() != n + 1 {
        return Err(Error::NotFullDimensional(basis.len() - 1, n));
    }
    let s0 = &points[basis[0]];
    let d = RatMatrix::from_i64_rows(
        &basis[1..].iter().map(|&i| points[i].iter().zip(s0).map(|(a, b)| a - b).collect()).collect::<Vec<_>>(),
    );
    let dinv = d.inverse()?;
    let mut out = Vec::new();
    // Bit i set: the (i+1)-th basis point is on the upper lamina.
    for mask in 1u64..(1u64 << n) {
        let e: RatVec = (0..n).map(|i| Rational::from_integer(BigInt::from((mask >> i) & 1))).collect();
        let h = dinv.mul_vec(&e);
        if !h.iter().all(|x| x.is_integer()) {
            continue;
        }
        let h: IntVec = match h.iter().map(|x| x.to_integer().to_i64()).collect::<Option<_>>() {
            Some(h) => h,
            None => continue,
        };
        let base: i64 = s0.iter().zip(&h).map(|(a, b)| a * b).sum();
        if values(points, &h).iter().all(|&v| v == base || v == base + 1) {
            out.push(normalize_sign(h));
        }
    }
    out.sort();
    Ok(out)
}

/// All 2-laminations of a full-dimensional cell. Small ranks use the subset
/// method; larger ones the covariance ellipsoid, which yields the same set.
pub fn two_laminations(cell: &DelaunayCell) -> Result<Vec<LaminationPartition>> {
    if !cell.full_dim {
        return Err(Error::NotFullDimensional(affine_basis(&cell.vertices)?.len() - 1, cell.dim()));
    }
    let hs = if cell.dim() <= 12 {
        two_lamination_functionals_subsets(&cell.vertices)?
    } else {
        two_lamination_functionals_ellipsoid(&cell.vertices)?
    };
    hs.into_iter().map(|h| partition(cell, h)).collect()
}

fn partition(cell: &DelaunayCell, h: IntVec) -> Result<LaminationPartition> {
    let vals = values(&cell.vertices, &h);
    let lo = *vals.iter().min().ok_or(Error::Empty)?;
    let hi = *vals.iter().max().ok_or(Error::Empty)?;
    let offsets: Vec<i64> = (lo..=hi).filter(|k| vals.contains(k)).collect();
    let slices = offsets
        .iter()
        .map(|k| (0..vals.len()).filter(|&i| vals[i] == *k).collect())
        .collect();
    let k = kernel_integer(&IntMatrix::from_i64_rows(&[h.clone()]));
    Ok(LaminationPartition { sublattice: cell.lattice.from_int_coeffs(&k)?, functional: h, offsets, slices })
}

/// Upper bound on the lamination number (width + 1) with a witness functional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaminationBound {
    pub value: usize,
    pub functional: IntVec,
    /// True when every functional of width below `value − 1` was excluded.
    pub exact: bool,
}

/// Ellipsoid enumerations are skipped when they would visit more points than this.
const ELLIPSOID_BUDGET: f64 = 2.0e6;

/// Smallest width found over candidate functionals, with `exact` set when the
/// covariance ellipsoid excluded every smaller width.
///
/// The ellipsoid search runs for the largest width `≤ max_width` whose point count
/// fits the budget. Other candidates are coordinate functionals and short vectors of
/// the dual lattice, whose width is at most `2·r·|h|`.
pub fn lamination_number_upper(cell: &DelaunayCell, max_width: i64) -> Result<LaminationBound> {
    if !cell.full_dim {
        return Err(Error::NotFullDimensional(affine_basis(&cell.vertices)?.len() - 1, cell.dim()));
    }
    let pts = &cell.vertices;
    let n = cell.dim();
    let (cov, big_n) = scaled_covariance(pts)?;
    let searched = (1..=max_width)
        .rev()
        .find(|&w| ellipsoid_count_estimate(&cov, &width_bound(big_n, w)) <= ELLIPSOID_BUDGET)
        .unwrap_or(0);
    if searched > 0 {
        let found = functionals_up_to_width(pts, searched)?.into_iter().map(|h| (width(pts, &h), h)).min();
        if let Some((w, h)) = found {
            return Ok(LaminationBound { value: w as usize + 1, functional: h, exact: true });
        }
    }
    let mut candidates: Vec<IntVec> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    let dual = cell.lattice.gram().inverse()?;
    let dual_en = Enumerator::from_gram(&dual)?;
    let (m, _) = dual_en.shortest_vectors()?;
    let zero = vec![Rational::zero(); n];
    let mut bound = m.clone();
    for _ in 0..8 {
        let next = &bound * rat(5, 4);
        if ellipsoid_count_estimate(&dual, &next) > 2.0e4 {
            break;
        }
        bound = next;
    }
    candidates.extend(dual_en.points_within(&zero, &bound)?.into_iter().map(|(h, _)| h).filter(|h| h.iter().any(|&x| x != 0)));
    let (w, h) = candidates
        .into_par_iter()
        .map(|h| (width(pts, &h), normalize_sign(h)))
        .min()
        .ok_or(Error::Empty)?;
    Ok(LaminationBound { value: w as usize + 1, functional: h, exact: w == searched + 1 })
}

/// Why the index-2 schema failed for one sublattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Index2Witness {
    /// A parity class spans only `rank` affine dimensions.
    LowDimensionalClass { mask: u128, class: usize, rank: usize },
    /// A 2-lamination of one class induces fewer than 3 laminae on the other.
    FewLaminae { mask: u128, class: usize, functional: IntVec, laminae: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Index2Certificate {
    pub sublattices: u128,
    pub laminations_checked: u64,
    pub min_other_laminae: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Index2Outcome {
    /// The lamination number is at least 5.
    Certified(Index2Certificate),
    Failed(Index2Witness),
}

struct MaskStats {
    laminations: u64,
    min_other: usize,
}

fn check_mask(cell: &DelaunayCell, odd_bits: &[u128], mask: u128) -> std::result::Result<MaskStats, Index2Witness> {
    let n = cell.dim();
    let verts = &cell.vertices;
    let mut classes: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for (i, &b) in odd_bits.iter().enumerate() {
        classes[((b & mask).count_ones() & 1) as usize].push(i);
    }
    for (ci, cls) in classes.iter().enumerate() {
        let pts: Vec<IntVec> = cls.iter().map(|&i| verts[i].clone()).collect();
        let rank = if pts.is_empty() { 0 } else { affine_basis(&pts).map(|b| b.len() - 1).unwrap_or(0) };
        if rank < n {
            return Err(Index2Witness::LowDimensionalClass { mask, class: ci, rank });
        }
    }
    let f = f2_vector(mask, n);
    let b = index2_sub_coeffs(&f);
    let solver = CoordinateSolver::new(&b).expect("index-2 basis is nonsingular");
    let binv = RatMatrix::from_int_matrix(&b).inverse().expect("nonsingular");
    let mut stats = MaskStats { laminations: 0, min_other: usize::MAX };
    for ci in 0..2 {
        let cls = &classes[ci];
        let other = &classes[1 - ci];
        let p0 = &verts[cls[0]];
        let ys: Vec<IntVec> = cls
            .iter()
            .map(|&i| {
                let d: IntVec = verts[i].iter().zip(p0).map(|(a, b)| a - b).collect();
                solver.solve_int(&d).expect("class lies in a coset of the sublattice")
            })
            .collect();
        let lams = two_lamination_functionals_ellipsoid(&ys).expect("class is full-dimensional");
        for g in lams {
            stats.laminations += 1;
            let gl = binv.mul_vec(&ints_to_rats(&g));
            let vals: BTreeSet<Rational> = other.iter().map(|&i| dot(&gl, &ints_to_rats(&verts[i]))).collect();
            stats.min_other = stats.min_other.min(vals.len());
            if vals.len() < 3 {
                return Err(Index2Witness::FewLaminae { mask, class: ci, functional: g, laminae: vals.len() });
            }
        }
    }
    Ok(stats)
}

/// Replays the index-2 schema: for every index-2 sublattice both parity classes
/// must be full-dimensional, and every 2-lamination of one class must cut the
/// other class into at least 3 laminae. Success proves lamination number ≥ 5.
pub fn width_lower_bound_index2(cell: &DelaunayCell) -> Result<Index2Outcome> {
    let n = cell.dim();
    if n > 100 {
        return Err(Error::Dimension("rank too large for the index-2 scan".into()));
    }
    index2_scan(cell, 1..1u128 << n)
}

/// The index-2 schema restricted to the sublattices whose masks lie in `masks`,
/// so a long scan can be split into resumable pieces.
pub fn index2_scan(cell: &DelaunayCell, masks: std::ops::Range<u128>) -> Result<Index2Outcome> {
    if !cell.full_dim {
        return Err(Error::NotFullDimensional(affine_basis(&cell.vertices)?.len() - 1, cell.dim()));
    }
    let n = cell.dim();
    if n > 100 {
        return Err(Error::Dimension("rank too large for the index-2 scan".into()));
    }
    let ind = generating_index(&cell.vertices)?;
    if !ind.is_one() {
        return Err(Error::NotGenerating(ind.to_string()));
    }
    let odd_bits: Vec<u128> = cell
        .vertices
        .iter()
        .map(|v| v.iter().enumerate().fold(0u128, |acc, (i, &x)| acc | (((x & 1) as u128) << (n - 1 - i))))
        .collect();
    let start = masks.start.max(1);
    let end = masks.end.min(1u128 << n);
    type Acc = std::result::Result<(u128, u64, usize), Index2Witness>;
    let res: Acc = (start..end.max(start))
        .into_par_iter()
        .map(|m| check_mask(cell, &odd_bits, m).map(|s| (1u128, s.laminations, s.min_other)))
        .reduce(
            || Ok((0, 0, usize::MAX)),
            |a, b| match (a, b) {
                (Ok(x), Ok(y)) => Ok((x.0 + y.0, x.1 + y.1, x.2.min(y.2))),
                (Err(e), Ok(_)) | (Ok(_), Err(e)) => Err(e),
                (Err(e1), Err(e2)) => Err(if witness_mask(&e1) <= witness_mask(&e2) { e1 } else { e2 }),
            },
        );
    Ok(match res {
        Ok((count, lams, min_other)) => Index2Outcome::Certified(Index2Certificate {
            sublattices: count,
            laminations_checked: lams,
            min_other_laminae: min_other,
        }),
        Err(w) => Index2Outcome::Failed(w),
    })
}

fn witness_mask(w: &Index2Witness) -> u128 {
    match w {
        Index2Witness::LowDimensionalClass { mask, .. } | Index2Witness::FewLaminae { mask, .. } => *mask,
    }
}

/// Squared distance helper used by reports: `|x − c|²` for a lattice point.
pub fn squared_distance(cell: &DelaunayCell, x: &[i64]) -> Result<Rational> {
    DistanceKernel::new(cell.lattice.gram(), &cell.center)?.dist(x)
}
