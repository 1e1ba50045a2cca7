//! The Leech lattice, its sections orthogonal to a vector, and the main Delaunay
//! polytopes cut out of its minimal vectors.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analysis::{design_strength, generating_index, tden};
use crate::delaunay::{cell_with, circumsphere, verify_with, DelaunayCell, EmptinessCertificate};
use crate::enumerate::Enumerator;
use crate::error::{Error, Result};
use crate::lattice::{CoordinateSolver, Lattice};
use crate::linalg::kernel_integer;
use crate::matrix::{IntMatrix, RatMatrix};
use crate::rational::{gcd_slice, rat, IntVec, RatVec, Rational, ScaledVec};

/// Generator matrix of the Leech lattice in √8-scaled coordinates (rows, Hermite form).
pub const LEECH_SCALED: [[i64; 24]; 24] = [
    [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 5],
    [0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 2, 2, 2, 2, 0, 0, 2, 0, 0, 2, 0],
    [0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 2, 2, 2, 2, 0, 0, 2, 0, 0, 2],
    [0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 2, 2, 0, 0, 0, 2, 2, 2, 0, 2, 2, 0],
    [0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 2, 2, 0, 0, 0, 2, 2, 2, 0, 2, 2],
    [0, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 2, 2, 0, 0, 2, 0, 0, 0, 2, 2, 2, 2],
    [0, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 2, 0, 0, 2, 2, 2, 0, 2, 0, 2, 0, 2],
    [0, 0, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0, 2, 0, 2, 2, 0, 2, 2, 2, 2, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0, 2, 0, 2, 2, 0, 2, 2, 2, 2, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0, 2, 0, 2, 2, 0, 2, 2, 2, 2, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0, 2, 0, 2, 2, 0, 2, 2, 2, 2],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 2, 2, 2, 2, 0, 0, 2, 0, 0, 2, 0, 2],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 4],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 4],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 4, 0, 0, 0, 0, 0, 0, 0, 0, 4],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 4, 0, 0, 0, 0, 0, 0, 0, 4],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 4, 0, 0, 0, 0, 0, 0, 4],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 4, 0, 0, 0, 0, 0, 4],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 4, 0, 0, 0, 0, 4],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 4, 0, 0, 0, 4],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 4, 0, 0, 4],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 4, 0, 4],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 4, 4],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 8],
];

pub const LEECH_KISSING: usize = 196560;

/// Maps a √8-scaled vector to rational coordinates with the standard inner product:
/// each pair `(a, b)` becomes `((a+b)/4, (a−b)/4)`.
pub fn scaled_to_ambient(s: &[i64]) -> RatVec {
    s.chunks(2)
        .flat_map(|p| [rat(p[0] + p[1], 4), rat(p[0] - p[1], 4)])
        .collect()
}

fn scaled_matrix() -> IntMatrix {
    IntMatrix::from_i64_rows(&LEECH_SCALED.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

fn scaled_solver() -> &'static CoordinateSolver {
    static SOLVER: OnceLock<CoordinateSolver> = OnceLock::new();
    SOLVER.get_or_init(|| CoordinateSolver::new(&scaled_matrix()).expect("Leech basis is nonsingular"))
}

/// Lattice coordinates of a √8-scaled integer vector.
pub fn scaled_to_coords(s: &[i64]) -> Result<IntVec> {
    if s.len() != 24 {
        return Err(Error::Dimension(format!("expected 24 coordinates, got {}", s.len())));
    }
    scaled_solver().solve_int(s)
}

pub fn coords_to_scaled(x: &[i64]) -> Vec<i64> {
    (0..24).map(|j| x.iter().zip(LEECH_SCALED.iter()).map(|(a, row)| a * row[j]).sum()).collect()
}

/// Fixed representatives in √8-scaled coordinates for the types used by the CLI.
pub fn named_vector(n: i64) -> Option<Vec<i64>> {
    let mut v = vec![0i64; 24];
    match n {
        2 => {
            v[0] = 4;
            v[1] = 4;
        }
        3 => {
            v.fill(1);
            v[0] = 5;
        }
        4 => v[0] = 8,
        5 => {
            v.fill(1);
            v[0] = -3;
            v[1] = 5;
            v[2] = 5;
        }
        _ => return None,
    }
    Some(v)
}

/// The Leech lattice in the pair-mapped embedding, checked to be even and
/// unimodular with no vectors of norm 2.
pub fn build_leech() -> Result<Lattice> {
    let rows: Vec<RatVec> = LEECH_SCALED.iter().map(|r| scaled_to_ambient(r)).collect();
    let l = Lattice::new(RatMatrix::from_rows(rows)?)?;
    if !l.is_even() {
        return Err(Error::Verification("Leech constant is not even".into()));
    }
    if !l.squared_determinant().is_one() {
        return Err(Error::Verification("Leech constant is not unimodular".into()));
    }
    let zero = vec![Rational::zero(); 24];
    let short = Enumerator::new(&l)?.points_within(&zero, &rat(2, 1))?;
    if short.len() != 1 {
        return Err(Error::Verification("Leech constant has vectors of norm 2".into()));
    }
    Ok(l)
}

/// `u₁ + u₂ = v` with `‖u₁‖² = 2a`, `‖u₂‖² = 2b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub a: i64,
    pub b: i64,
    pub u1: IntVec,
    pub u2: IntVec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeechVectorType {
    /// Half the norm.
    pub n: i64,
    pub decomposition: Option<Decomposition>,
}

impl fmt::Display for LeechVectorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.decomposition {
            None => write!(f, "{}", self.n),
            Some(d) => write!(f, "{}_{{{},{}}}", self.n, d.a, d.b),
        }
    }
}

/// Candidate labels `(a, b)` for half-norm `n`, in search order (smallest `b`, then smallest `a`).
fn labels(n: i64) -> &'static [(i64, i64)] {
    match n {
        6 => &[(2, 2), (3, 2)],
        8 => &[(2, 2), (3, 2), (4, 2)],
        9 => &[(4, 2), (3, 3)],
        10 => &[(4, 2), (5, 2), (3, 3)],
        11 => &[(5, 2), (4, 3)],
        _ => &[],
    }
}

/// A sublattice `{x ∈ Λ : ⟨x, v⟩ = 0}` together with its basis in Leech coordinates.
#[derive(Clone, Debug)]
pub struct Section {
    pub v: IntVec,
    pub lattice: Lattice,
    /// Basis rows in Leech lattice coordinates.
    pub coeffs: IntMatrix,
    solver: CoordinateSolver,
}

impl Section {
    /// Section coordinates of a Leech vector orthogonal to `v`.
    pub fn coords(&self, x: &[i64]) -> Result<IntVec> {
        self.solver.solve_int(x)
    }

    pub fn coords_rational(&self, x: &ScaledVec) -> Result<ScaledVec> {
        self.solver.solve(x)
    }

    /// The intermediate lattice of index `d` between the section and its dual.
    pub fn glue(&self, d: u64) -> Result<Lattice> {
        self.lattice.glue_lattice(d)
    }
}

#[derive(Clone, Debug)]
pub struct MainDelaunayOptions {
    /// Largest `t` tested for the design strength.
    pub t_max: usize,
    /// Skip the quadratic-time strength computation above this many vertices.
    pub strength_vertex_limit: usize,
}

impl Default for MainDelaunayOptions {
    fn default() -> Self {
        MainDelaunayOptions { t_max: 11, strength_vertex_limit: 20000 }
    }
}

#[derive(Clone, Debug)]
pub struct MainDelaunayRecord {
    pub vector_type: LeechVectorType,
    pub alpha: i64,
    pub d: u64,
    pub n_vertices: usize,
    pub den: BigInt,
    /// `None` when skipped by [`MainDelaunayOptions::strength_vertex_limit`].
    pub s: Option<usize>,
    pub ind: BigInt,
    /// Affine dimension of the vertex set; the section has rank 23.
    pub dim: usize,
    pub section_rank: usize,
    /// The slice of minimal vectors is still inside an empty sphere of the glue lattice.
    pub extends: bool,
    pub verified: bool,
    /// Lattice points on and inside the slice sphere, in glue lattice coordinates.
    pub certificate: EmptinessCertificate,
    /// Full-dimensional in its own lattice: the glue lattice, or the saturated
    /// span of the vertices when `dim < section_rank`.
    pub cell: DelaunayCell,
}

impl MainDelaunayRecord {
    pub fn is_main(&self) -> bool {
        self.dim == self.section_rank
    }

    /// One report line; lower-dimensional cells also carry `dim=`.
    pub fn line(&self) -> String {
        let s = self.s.map(|s| s.to_string()).unwrap_or_else(|| "?".into());
        let dim = if self.is_main() { String::new() } else { format!(" dim={}", self.dim) };
        format!(
            "type={} d={}{} N={} den={} s={} ind={} verified={}",
            self.vector_type, self.d, dim, self.n_vertices, self.den, s, self.ind, self.verified
        )
    }
}

/// The Leech lattice with its Gram matrix in machine integers and a lazily
/// computed list of minimal vectors.
pub struct Leech {
    lattice: Arc<Lattice>,
    gram: Vec<i64>,
    en: Enumerator,
    min: OnceLock<Vec<IntVec>>,
}

impl Leech {
    pub fn new() -> Result<Self> {
        let l = build_leech()?;
        let gram = l.gram().to_int_matrix()?.to_i64_rows()?.concat();
        let en = Enumerator::new(&l)?;
        Ok(Leech { lattice: Arc::new(l), gram, en, min: OnceLock::new() })
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn gram_times(&self, v: &[i64]) -> Vec<i64> {
        (0..24).map(|i| (0..24).map(|j| self.gram[i * 24 + j] * v[j]).sum()).collect()
    }

    pub fn inner(&self, x: &[i64], y: &[i64]) -> i64 {
        x.iter().zip(self.gram_times(y)).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self, x: &[i64]) -> i64 {
        self.inner(x, x)
    }

    /// Installs a precomputed list (for instance from a cache), after checking it.
    pub fn set_min_vectors(&self, mut vs: Vec<IntVec>) -> Result<()> {
        if vs.len() != LEECH_KISSING {
            return Err(Error::Verification(format!("expected {LEECH_KISSING} minimal vectors, got {}", vs.len())));
        }
        if vs.par_iter().any(|v| v.len() != 24 || self.norm(v) != 4) {
            return Err(Error::Verification("cached vector does not have norm 4".into()));
        }
        vs.sort();
        vs.dedup();
        if vs.len() != LEECH_KISSING {
            return Err(Error::Verification("cached minimal vectors are not distinct".into()));
        }
        let _ = self.min.set(vs);
        Ok(())
    }

    pub fn has_min_vectors(&self) -> bool {
        self.min.get().is_some()
    }

    /// All 196560 vectors of norm 4, sorted; enumerated on first use.
    pub fn min_vectors(&self) -> Result<&[IntVec]> {
        if let Some(v) = self.min.get() {
            return Ok(v);
        }
        let (norm, vs) = self.en.shortest_vectors()?;
        if norm != rat(4, 1) || vs.len() != LEECH_KISSING {
            return Err(Error::Verification(format!("minimum {norm} with {} vectors", vs.len())));
        }
        let _ = self.min.set(vs);
        Ok(self.min.get().expect("just set"))
    }

    pub fn classify(&self, v: &[i64]) -> Result<LeechVectorType> {
        if v.len() != 24 {
            return Err(Error::Dimension(format!("expected 24 coordinates, got {}", v.len())));
        }
        let norm = self.norm(v);
        if norm == 0 {
            return Err(Error::ZeroVector);
        }
        if norm % 2 != 0 || norm > 22 {
            return Err(Error::UnsupportedNorm(norm.to_string()));
        }
        let n = norm / 2;
        let g = gcd_slice(v);
        if g > 1 {
            let half: IntVec = v.iter().map(|x| x / 2).collect();
            if !(g == 2 && self.norm(&half) == 4) {
                return Err(Error::NotPrimitive(g.to_string()));
            }
        }
        let labels = labels(n);
        if labels.is_empty() {
            return Ok(LeechVectorType { n, decomposition: None });
        }
        let center: RatVec = v.iter().map(|&x| rat(x, 2)).collect();
        for &(a, b) in labels {
            // u and v − u have norms 2b and 2a exactly when ‖u‖² = 2b and ‖u − v/2‖² = a + b − n/2.
            let bound = Rational::from_integer(BigInt::from(a + b)) - rat(n, 2);
            for (u, _) in self.en.points_within(&center, &bound)? {
                if self.norm(&u) == 2 * b {
                    let u1: IntVec = v.iter().zip(&u).map(|(x, y)| x - y).collect();
                    if self.norm(&u1) != 2 * a {
                        return Err(Error::Verification("decomposition witness has the wrong norm".into()));
                    }
                    return Ok(LeechVectorType { n, decomposition: Some(Decomposition { a, b, u1, u2: u }) });
                }
            }
        }
        Err(Error::Verification(format!("no listed decomposition for a vector of norm {norm}")))
    }

    /// `Λ(v)`: the vectors orthogonal to a primitive `v`.
    pub fn section(&self, v: &[i64]) -> Result<Section> {
        let (lattice, coeffs) = self.lattice.orthogonal_section_coeffs(&[v.to_vec()])?;
        let solver = CoordinateSolver::new(&coeffs)?;
        Ok(Section { v: v.to_vec(), lattice, coeffs, solver })
    }

    /// `{x ∈ Min Λ : ⟨x, v⟩ = α}`, sorted.
    pub fn slice(&self, v: &[i64], alpha: i64) -> Result<Vec<IntVec>> {
        let gv = self.gram_times(v);
        let mut m: Vec<IntVec> = self
            .min_vectors()?
            .par_iter()
            .filter(|x| x.iter().zip(&gv).map(|(a, b)| a * b).sum::<i64>() == alpha)
            .cloned()
            .collect();
        m.sort();
        Ok(m)
    }

    pub fn main_delaunay(&self, v: &[i64], alpha: i64, d: u64, opts: &MainDelaunayOptions) -> Result<MainDelaunayRecord> {
        let vector_type = self.classify(v)?;
        if vector_type.decomposition.as_ref().is_some_and(|dec| dec.u1 == dec.u2) {
            return Err(Error::NotPrimitive("2".into()));
        }
        let section = self.section(v)?;
        let glue = GlueData::new(&section, self.norm(v), d)?;
        let slice = self.slice(v, alpha)?;
        main_delaunay_in(&section, &glue, self.norm(v), vector_type, alpha, &slice, opts)
    }

    /// Every main Delaunay record for `α = 1..‖v‖²/2` and every divisor `d` of `‖v‖²`,
    /// ordered by `(α, d)`. Records whose slice sphere stops being empty are dropped.
    pub fn table1(&self, v: &[i64], alphas: &[i64], opts: &MainDelaunayOptions) -> Result<Vec<MainDelaunayRecord>> {
        let vector_type = self.classify(v)?;
        let norm = self.norm(v);
        let section = self.section(v)?;
        let glues = divisors(norm as u64)
            .into_iter()
            .map(|d| GlueData::new(&section, norm, d))
            .collect::<Result<Vec<_>>>()?;
        let alphas: Vec<i64> = if alphas.is_empty() { (1..=norm / 2).collect() } else { alphas.to_vec() };
        let mut out = Vec::new();
        for alpha in alphas {
            let slice = self.slice(v, alpha)?;
            if slice.is_empty() {
                continue;
            }
            for glue in &glues {
                let rec = main_delaunay_in(&section, glue, norm, vector_type.clone(), alpha, &slice, opts)?;
                if rec.extends {
                    out.push(rec);
                }
            }
        }
        Ok(out)
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

struct GlueData {
    d: u64,
    lattice: Arc<Lattice>,
    /// Section basis in glue coordinates.
    to_glue: RatMatrix,
    en: Enumerator,
}

impl GlueData {
    fn new(section: &Section, norm: i64, d: u64) -> Result<Self> {
        if d == 0 || norm as u64 % d != 0 {
            return Err(Error::NotDivisor(d.to_string(), norm.to_string()));
        }
        let lattice = section.glue(d)?;
        let to_glue = lattice.relative_coeffs(&section.lattice)?;
        let en = Enumerator::new(&lattice)?;
        Ok(GlueData { d, lattice: Arc::new(lattice), to_glue, en })
    }

    fn int_coords(&self, y: &[i64]) -> Result<IntVec> {
        let r = self.to_glue.vec_mul(&crate::rational::ints_to_rats(y));
        crate::rational::rats_to_ints(&r)
    }
}

fn main_delaunay_in(
    section: &Section,
    glue: &GlueData,
    norm: i64,
    vector_type: LeechVectorType,
    alpha: i64,
    slice: &[IntVec],
    opts: &MainDelaunayOptions,
) -> Result<MainDelaunayRecord> {
    if alpha == 0 {
        return Err(Error::InvalidArgument("alpha must be nonzero".into()));
    }
    let x0 = slice.first().ok_or(Error::Empty)?;
    let n = section.lattice.rank();
    let mut verts: Vec<IntVec> = slice
        .par_iter()
        .map(|x| {
            let t: IntVec = x.iter().zip(x0).map(|(a, b)| a - b).collect();
            glue.int_coords(&section.coords(&t)?)
        })
        .collect::<Result<_>>()?;
    verts.sort();
    // The slice lies on the sphere of radius 2 about 0; inside the hyperplane ⟨x, v⟩ = α
    // its center is αv/‖v‖², which becomes p after translating by −x₀.
    let p_num: Vec<i64> = section.v.iter().zip(x0).map(|(a, b)| alpha * a - norm * b).collect();
    let p_sec = section.coords_rational(&ScaledVec { num: p_num, den: norm })?;
    let p = glue.to_glue.vec_mul(&p_sec.to_rats());
    let radius_sq = rat(4, 1) - rat(alpha * alpha, norm);
    let certificate = verify_with(&glue.en, &p, &radius_sq)?;
    let extends = certificate.is_empty() && verts.iter().all(|x| certificate.boundary.binary_search(x).is_ok());
    let (cell, dim, verified) = if !extends {
        let cell = cell_with(&glue.en, &glue.lattice, &p)?;
        let dim = if cell.full_dim { n } else { crate::delaunay::affine_basis(&cell.vertices)?.len() - 1 };
        (cell, dim, false)
    } else {
        let boundary = certificate.boundary.clone();
        let (sphere, dim) = circumsphere(&boundary, glue.lattice.gram())?;
        if dim == n {
            if sphere.center != p || sphere.radius_sq != radius_sq {
                return Err(Error::NotCospherical);
            }
            let cell = DelaunayCell {
                lattice: glue.lattice.clone(),
                center: p.clone(),
                radius_sq: radius_sq.clone(),
                vertices: boundary,
                full_dim: true,
            };
            (cell, dim, true)
        } else {
            (span_cell(&glue.lattice, &boundary, &sphere.center, &sphere.radius_sq)?, dim, true)
        }
    };
    let s = if cell.vertices.len() <= opts.strength_vertex_limit {
        Some(design_strength(&cell, opts.t_max)?)
    } else {
        None
    };
    Ok(MainDelaunayRecord {
        vector_type,
        alpha,
        d: glue.d,
        n_vertices: cell.vertices.len(),
        den: tden(&cell.center),
        s,
        ind: generating_index(&cell.vertices)?,
        dim,
        section_rank: n,
        extends,
        verified,
        certificate,
        cell,
    })
}

/// Re-expresses a lower-dimensional cell (containing the origin) in the saturated
/// lattice of its linear span, where it is full-dimensional.
fn span_cell(l: &Lattice, points: &[IntVec], center: &[Rational], radius_sq: &Rational) -> Result<DelaunayCell> {
    let n = l.rank();
    let m = IntMatrix::from_i64_rows_with_cols(points, n);
    let sat = kernel_integer(&kernel_integer(&m));
    let solver = CoordinateSolver::new(&sat)?;
    let mut vertices: Vec<IntVec> = points.iter().map(|p| solver.solve_int(p)).collect::<Result<_>>()?;
    vertices.sort();
    let c = solver.solve(&ScaledVec::from_rats(center)?)?.to_rats();
    let span = l.from_int_coeffs(&sat)?;
    Ok(DelaunayCell { lattice: Arc::new(span), center: c, radius_sq: radius_sq.clone(), vertices, full_dim: true })
}

/// `r(v)² = 2 − 1/(4‖v‖²)`, the squared covering bound for the dual of the section.
pub fn covering_bound(norm: i64) -> Result<Rational> {
    if norm <= 0 {
        return Err(Error::ZeroVector);
    }
    Ok(rat(2, 1) - rat(1, 4 * norm))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithReport {
    pub dist_sq: Rational,
    pub count: usize,
    /// `dist_sq` equals the supplied bound.
    pub meets_bound: Option<bool>,
}

/// Closest lattice points to `c` and a comparison with an optional squared bound.
pub fn check_smith_point(l: &Lattice, c: &[Rational], bound: Option<&Rational>) -> Result<SmithReport> {
    let (dist_sq, pts) = crate::enumerate::closest_vectors(l, c)?;
    let meets_bound = bound.map(|b| &dist_sq == b);
    Ok(SmithReport { dist_sq, count: pts.len(), meets_bound })
}

/// Largest squared distance to `l` over `samples` random points with denominator `2¹⁰`.
pub fn sample_covering(l: &Lattice, samples: usize, seed: u64) -> Result<Rational> {
    let en = Enumerator::new(l)?;
    let n = l.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<RatVec> = (0..samples)
        .map(|_| (0..n).map(|_| rat(rng.gen_range(0..1024), 1024)).collect())
        .collect();
    let dists = points
        .par_iter()
        .map(|x| en.closest_vectors(x).map(|(d, _)| d))
        .collect::<Result<Vec<_>>>()?;
    Ok(dists.into_iter().max().unwrap_or_else(Rational::zero))
}

/// Leech-derived catalog entries: `leech`, `lambda23`, `o23`, `lambda23dual`.
pub fn leech_catalog(name: &str) -> Result<Option<Lattice>> {
    let l = match name {
        "leech" => build_leech()?,
        "lambda23" | "o23" | "lambda23dual" => {
            let leech = build_leech()?;
            let v = scaled_to_coords(&named_vector(2).expect("type 2"))?;
            let section = leech.orthogonal_section(&v)?;
            match name {
                "lambda23" => section,
                "o23" => section.glue_lattice(2)?,
                _ => section.dual()?,
            }
        }
        _ => return Ok(None),
    };
    Ok(Some(l))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leech() -> Leech {
        Leech::new().unwrap()
    }

    #[test]
    fn constant_is_even_unimodular() {
        let l = build_leech().unwrap();
        assert!(l.is_even());
        assert!(l.squared_determinant().is_one());
        assert_eq!(l.rank(), 24);
    }

    #[test]
    fn scaled_round_trip() {
        for n in [2, 3, 4, 5] {
            let s = named_vector(n).unwrap();
            let x = scaled_to_coords(&s).unwrap();
            assert_eq!(coords_to_scaled(&x), s);
            assert_eq!(leech().norm(&x), 2 * n);
        }
        assert!(scaled_to_coords(&[1; 24]).is_err());
    }

    #[test]
    fn random_vectors_are_even() {
        let le = leech();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let x: Vec<i64> = (0..24).map(|_| rng.gen_range(-3..=3)).collect();
            assert_eq!(le.norm(&x) % 2, 0);
        }
    }

    #[test]
    fn classify_named() {
        let le = leech();
        for n in [2, 3, 4, 5] {
            let x = scaled_to_coords(&named_vector(n).unwrap()).unwrap();
            let t = le.classify(&x).unwrap();
            assert_eq!(t.n, n);
            assert!(t.decomposition.is_none());
        }
    }

    #[test]
    fn classify_decompositions() {
        let le = leech();
        // (8,4,4,0,…) = (4,4,0,…) + (4,0,4,0,…), two minimal vectors.
        let mut s = vec![0i64; 24];
        s[0] = 8;
        s[1] = 4;
        s[2] = 4;
        let x = scaled_to_coords(&s).unwrap();
        let t = le.classify(&x).unwrap();
        assert_eq!(t.to_string(), "6_{2,2}");
        let dec = t.decomposition.unwrap();
        assert_eq!(le.norm(&dec.u1), 4);
        assert_eq!(le.norm(&dec.u2), 4);
        let sum: IntVec = dec.u1.iter().zip(&dec.u2).map(|(a, b)| a + b).collect();
        assert_eq!(sum, x);

        let v2 = scaled_to_coords(&named_vector(2).unwrap()).unwrap();
        let twice: IntVec = v2.iter().map(|a| 2 * a).collect();
        assert_eq!(le.classify(&twice).unwrap().to_string(), "8_{2,2}");
    }

    #[test]
    fn classify_errors() {
        let le = leech();
        let v4 = scaled_to_coords(&named_vector(4).unwrap()).unwrap();
        let big: IntVec = v4.iter().map(|a| 2 * a).collect();
        assert!(matches!(le.classify(&big), Err(Error::UnsupportedNorm(_))));
        let v3 = scaled_to_coords(&named_vector(3).unwrap()).unwrap();
        let t: IntVec = v3.iter().map(|a| 3 * a).collect();
        assert!(le.classify(&t).is_err());
        assert!(matches!(le.classify(&[0; 24]), Err(Error::ZeroVector)));
    }

    #[test]
    fn covering_bounds() {
        assert_eq!(covering_bound(4).unwrap(), rat(31, 16));
        assert_eq!(covering_bound(6).unwrap(), rat(47, 24));
        assert!(covering_bound(0).is_err());
        let mut prev = Rational::zero();
        for n in (2..200).step_by(2) {
            let b = covering_bound(n).unwrap();
            assert!(b < rat(2, 1) && b > prev);
            prev = b;
        }
    }

    #[test]
    fn smith_control() {
        let z = crate::catalog::zn(3).unwrap();
        let r = check_smith_point(&z, &[rat(1, 2), rat(1, 2), rat(1, 2)], Some(&rat(3, 4))).unwrap();
        assert_eq!(r.dist_sq, rat(3, 4));
        assert_eq!(r.count, 8);
        assert_eq!(r.meets_bound, Some(true));
    }

    #[test]
    fn divisor_list() {
        assert_eq!(divisors(6), vec![1, 2, 3, 6]);
        assert_eq!(divisors(4), vec![1, 2, 4]);
    }
}
