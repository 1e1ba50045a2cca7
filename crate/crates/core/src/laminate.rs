//! Stacking layers of a lattice to turn a Delaunay cell into a centrally
//! symmetric one of one dimension more (or, for first-type cells, of the same
//! dimension in an index-2 superlattice).

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::analysis::{perfection_rank, symmetry_kind, tden, SymmetryKind};
use crate::delaunay::{cell_with, DelaunayCell};
use crate::enumerate::Enumerator;
use crate::error::{Error, Result};
use crate::lattice::{lattice_basis_from_generators, Lattice};
use crate::matrix::RatMatrix;
use crate::rational::{int, rat, IntVec, RatVec, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaminateKind {
    /// `r_i ≥ r₀` for every `i`.
    FirstType,
    /// `r_i < r₀` for some `i ∉ {0, 1}`.
    SecondType,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectionComparison {
    pub input: usize,
    pub output: usize,
}

impl PerfectionComparison {
    pub fn holds(&self) -> bool {
        self.output <= self.input
    }
}

#[derive(Clone, Debug)]
pub struct LaminateResult {
    pub kind: LaminateKind,
    /// `(i, r_i²)` for every index examined, including the mirror `1 − i`.
    pub radii: Vec<(i64, Rational)>,
    /// Squared distance between consecutive layers; zero for the first type.
    pub delta_s: Rational,
    pub new_lattice: Arc<Lattice>,
    pub new_cell: DelaunayCell,
    /// First type with `tden(c) = 2`: the input was returned unchanged.
    pub already_symmetric: bool,
    pub perfection: Option<PerfectionComparison>,
}

impl LaminateResult {
    /// Input vertices `(v, 0)` and their mirrors `(−v, 1)` all lie on the new cell,
    /// or the input vertices themselves for the first type.
    pub fn contains_input(&self, input: &DelaunayCell) -> bool {
        match self.kind {
            LaminateKind::SecondType => input.vertices.iter().all(|v| {
                let mut low = v.clone();
                low.push(0);
                let mut high: IntVec = v.iter().map(|x| -x).collect();
                high.push(1);
                self.new_cell.vertices.binary_search(&low).is_ok() && self.new_cell.vertices.binary_search(&high).is_ok()
            }),
            LaminateKind::FirstType => {
                let Ok(coeffs) = self.new_lattice.relative_coeffs(&input.lattice) else { return false };
                input.vertices.iter().all(|v| {
                    let w = coeffs.vec_mul(&crate::rational::ints_to_rats(v));
                    crate::rational::rats_to_ints(&w).is_ok_and(|w| self.new_cell.vertices.binary_search(&w).is_ok())
                })
            }
        }
    }
}

/// `(1 − 2i)·c` reduced into the unit cube; the distance to the lattice is unchanged.
fn layer_target(c: &[Rational], i: i64) -> RatVec {
    let f = int(1 - 2 * i);
    c.iter()
        .map(|x| {
            let y = x * &f;
            &y - y.floor()
        })
        .collect()
}

fn layer_radius(en: &Enumerator, c: &[Rational], i: i64) -> Result<Rational> {
    Ok(en.closest_vectors(&layer_target(c, i))?.0)
}

/// `r_i²` for `i = 1 − window, …, window`.
pub fn radii_sequence(cell: &DelaunayCell, window: i64) -> Result<Vec<(i64, Rational)>> {
    let en = Enumerator::new(&cell.lattice)?;
    let mut out = Vec::new();
    for i in 1 - window..=window {
        let r = if i == 0 || i == 1 { cell.radius_sq.clone() } else { layer_radius(&en, &cell.center, i)? };
        out.push((i, r));
    }
    Ok(out)
}

/// `tden(c) ∈ {2, 4}` forces the first type and odd `tden(c)` the second.
pub fn type_matches_tden(tden: &BigInt, kind: LaminateKind) -> bool {
    let two = BigInt::from(2);
    if *tden == two || *tden == BigInt::from(4) {
        kind == LaminateKind::FirstType
    } else if tden.is_odd() {
        kind == LaminateKind::SecondType
    } else {
        true
    }
}

#[derive(Clone, Debug)]
pub struct LaminateOptions {
    /// Compare perfection ranks of the input and output cells.
    pub compare_perfection: bool,
}

impl Default for LaminateOptions {
    fn default() -> Self {
        LaminateOptions { compare_perfection: true }
    }
}

pub fn laminate_extend(cell: &DelaunayCell) -> Result<LaminateResult> {
    laminate_extend_with(cell, &LaminateOptions::default())
}

/// The layer scan alone: type, examined radii and `δ_s` (zero for the first type).
pub fn laminate_kind(cell: &DelaunayCell) -> Result<(LaminateKind, Vec<(i64, Rational)>, Rational)> {
    let (kind, radii, delta) = scan_layers(cell)?;
    Ok((kind, radii, delta.unwrap_or_else(Rational::zero)))
}

fn scan_layers(cell: &DelaunayCell) -> Result<(LaminateKind, Vec<(i64, Rational)>, Option<Rational>)> {
    let en = Enumerator::new(&cell.lattice)?;
    let r0 = cell.radius_sq.clone();
    let t = tden(&cell.center).to_i64().ok_or(Error::Overflow("tden"))?;
    let mut radii = vec![(0, r0.clone()), (1, r0.clone())];
    let mut delta: Option<Rational> = None;
    // (1 − 2i)c mod L only depends on i mod tden, and i ↔ 1 − i gives the mirror point,
    // so i = 2..tden+1 covers every layer; δ_i ≤ r₀²/(i² − i) bounds the rest.
    for i in 2..=t + 1 {
        let w = int(i * i - i);
        if delta.as_ref().is_some_and(|d| &r0 / &w < *d) {
            break;
        }
        let ri = layer_radius(&en, &cell.center, i)?;
        radii.push((i, ri.clone()));
        radii.push((1 - i, ri.clone()));
        if ri < r0 {
            let di = (&r0 - &ri) / &w;
            if delta.as_ref().is_none_or(|d| di > *d) {
                delta = Some(di);
            }
        }
    }
    radii.sort();
    let kind = if delta.is_some() { LaminateKind::SecondType } else { LaminateKind::FirstType };
    Ok((kind, radii, delta))
}

pub fn laminate_extend_with(cell: &DelaunayCell, opts: &LaminateOptions) -> Result<LaminateResult> {
    if !cell.full_dim {
        return Err(Error::NotFullDimensional(crate::delaunay::affine_basis(&cell.vertices)?.len() - 1, cell.dim()));
    }
    let t = tden(&cell.center).to_i64().ok_or(Error::Overflow("tden"))?;
    let (_, radii, delta) = scan_layers(cell)?;
    let result = match delta {
        Some(delta_s) => second_type(cell, radii, delta_s)?,
        None => first_type(cell, radii, t)?,
    };
    let perfection = if opts.compare_perfection && !result.already_symmetric {
        Some(PerfectionComparison {
            input: perfection_rank(cell)?.perfection_rank,
            output: perfection_rank(&result.new_cell)?.perfection_rank,
        })
    } else {
        None
    };
    Ok(LaminateResult { perfection, ..result })
}

/// `L(δ) = L + Z·e` with `e = (2c, 1)` in the ambient space extended by one
/// coordinate of squared length `δ`, and the cell around `c′ = e/2`.
fn second_type(cell: &DelaunayCell, radii: Vec<(i64, Rational)>, delta_s: Rational) -> Result<LaminateResult> {
    let l = &cell.lattice;
    let m = l.ambient_dim();
    let c_amb = l.to_ambient(&cell.center);
    let mut rows: Vec<RatVec> = l
        .basis()
        .to_rows()
        .into_iter()
        .map(|mut r| {
            r.push(Rational::zero());
            r
        })
        .collect();
    let mut e: RatVec = c_amb.iter().map(|x| x * int(2)).collect();
    e.push(int(1));
    rows.push(e);
    let mut metric = RatMatrix::zeros(m + 1, m + 1);
    for i in 0..m {
        for j in 0..m {
            metric[(i, j)] = l.metric()[(i, j)].clone();
        }
    }
    metric[(m, m)] = delta_s.clone();
    let new_lattice = Arc::new(Lattice::with_metric(RatMatrix::from_rows(rows)?, metric)?);
    let n = l.rank();
    let mut c2 = vec![Rational::zero(); n + 1];
    c2[n] = rat(1, 2);
    let en = Enumerator::new(&new_lattice)?;
    let new_cell = cell_with(&en, &new_lattice, &c2)?;
    if new_cell.radius_sq != &cell.radius_sq + &delta_s / int(4) {
        return Err(Error::Verification("laminated cell has an unexpected radius".into()));
    }
    check_symmetric(&new_cell)?;
    Ok(LaminateResult {
        kind: LaminateKind::SecondType,
        radii,
        delta_s,
        new_lattice,
        new_cell,
        already_symmetric: false,
        perfection: None,
    })
}

/// `L(0) = L + Z·2c` and the cell of `c` there.
fn first_type(cell: &DelaunayCell, radii: Vec<(i64, Rational)>, t: i64) -> Result<LaminateResult> {
    if t == 2 {
        return Ok(LaminateResult {
            kind: LaminateKind::FirstType,
            radii,
            delta_s: Rational::zero(),
            new_lattice: cell.lattice.clone(),
            new_cell: cell.clone(),
            already_symmetric: true,
            perfection: None,
        });
    }
    let l = &cell.lattice;
    let n = l.rank();
    let mut gens: Vec<RatVec> = (0..n).map(|i| (0..n).map(|j| int((i == j) as i64)).collect()).collect();
    gens.push(cell.center.iter().map(|x| x * int(2)).collect());
    let coeffs = lattice_basis_from_generators(&RatMatrix::from_rows(gens)?);
    let new_lattice = Arc::new(l.from_coeffs(&coeffs)?);
    let c = new_lattice.coords_of(&l.to_ambient(&cell.center))?;
    let en = Enumerator::new(&new_lattice)?;
    let new_cell = cell_with(&en, &new_lattice, &c)?;
    if new_cell.radius_sq != cell.radius_sq {
        return Err(Error::Verification("superlattice cell has a smaller radius".into()));
    }
    check_symmetric(&new_cell)?;
    Ok(LaminateResult {
        kind: LaminateKind::FirstType,
        radii,
        delta_s: Rational::zero(),
        new_lattice,
        new_cell,
        already_symmetric: false,
        perfection: None,
    })
}

fn check_symmetric(cell: &DelaunayCell) -> Result<()> {
    match symmetry_kind(cell)? {
        SymmetryKind::CentrallySymmetric => Ok(()),
        SymmetryKind::Antisymmetric => Err(Error::Verification("laminated cell is not centrally symmetric".into())),
    }
}
