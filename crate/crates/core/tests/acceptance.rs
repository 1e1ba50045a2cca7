//! One line per acceptance criterion. Criteria 1–7 gate the exit status;
//! criterion 8 is a stretch target and is reported without gating.
//!
//! `DELONE_ALLOW_LARGE=1` adds the long checks: perfection rank of the
//! 47104-vertex cell and the full index-2 scan.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use delone_core::analysis::{
    design_strength_points, index2_scan, lamination_number_upper, perfection_rank, symmetry_kind, tden,
    two_laminations, width_lower_bound_index2, Index2Outcome, SymmetryKind,
};
use delone_core::catalog::{an, e6, e7, zn};
use delone_core::delaunay::{covering_radius, tessellate, DelaunayCell};
use delone_core::enumerate::{closest_vectors, shortest_vectors, vectors_of_norm};
use delone_core::laminate::{type_matches_tden, laminate_extend, laminate_kind, LaminateKind};
use delone_core::lattice::{discriminant_group, Lattice};
use delone_core::leech::{
    covering_bound, named_vector, sample_covering, scaled_to_coords, Leech, MainDelaunayOptions, MainDelaunayRecord,
};
use delone_core::rational::{int, rat, RatVec, Rational};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn allow_large() -> bool {
    std::env::var("DELONE_ALLOW_LARGE").is_ok_and(|v| !v.is_empty() && v != "0")
}

/// The pipeline outputs shared between criteria.
struct Cells {
    v3_552: MainDelaunayRecord,
    v3_552_d3: MainDelaunayRecord,
    v3_11178: MainDelaunayRecord,
    v5_275: MainDelaunayRecord,
    v2_47104: MainDelaunayRecord,
    v2_94208: MainDelaunayRecord,
}

fn vector(n: i64) -> Vec<i64> {
    scaled_to_coords(&named_vector(n).unwrap()).unwrap()
}

fn criterion1(le: &Leech) -> Outcome {
    let l = le.lattice();
    ensure(l.squared_determinant() == int(1), "determinant is not 1")?;
    ensure(l.is_even(), "not even")?;
    let min = le.min_vectors().map_err(e)?;
    let norms: BTreeSet<i64> = min.iter().map(|x| le.norm(x)).collect();
    ensure(norms == BTreeSet::from([4]), format!("minimal norms {norms:?}"))?;
    ensure(min.len() == 196560, format!("|Min| = {}", min.len()))?;
    Ok(format!("det 1, even, min norm 4, |Min| = {}", min.len()))
}

fn criterion2(le: &Leech) -> Outcome {
    let section = le.section(&vector(2)).map_err(e)?;
    let l23 = &section.lattice;
    let n4 = vectors_of_norm(l23, &int(4)).map_err(e)?.len();
    ensure(n4 == 93150, format!("{n4} vectors of norm 4"))?;
    let (m, _) = shortest_vectors(l23).map_err(e)?;
    ensure(m == int(4), format!("section minimum {m}"))?;
    let dual = l23.dual().map_err(e)?;
    let (dm, dmin) = shortest_vectors(&dual).map_err(e)?;
    ensure(dm == int(3) && dmin.len() == 4600, format!("dual minimum {dm} with {} vectors", dmin.len()))?;
    let q = discriminant_group(l23).map_err(e)?;
    ensure(q.is_cyclic() && q.order() == BigInt::from(4), format!("discriminant group {:?}", q))?;
    let o23 = section.glue(2).map_err(e)?;
    ensure(o23.is_integral(), "glue(2) is not integral")?;
    ensure(o23.squared_determinant() == int(1), "glue(2) is not unimodular")?;
    Ok(format!("norm-4 count {n4}; dual min 3 with {}; quotient [4]; glue(2) integral unimodular", dmin.len()))
}

fn ambient_set(cell: &DelaunayCell) -> BTreeSet<RatVec> {
    cell.vertices
        .iter()
        .map(|v| cell.lattice.to_ambient(&v.iter().map(|&x| int(x)).collect::<Vec<_>>()))
        .collect()
}

fn row(r: &MainDelaunayRecord, n: usize, den: i64, s: Option<usize>, ind: Option<i64>) -> Result<(), String> {
    let ok = r.extends
        && r.verified
        && r.n_vertices == n
        && r.den == BigInt::from(den)
        && s.is_none_or(|s| r.s == Some(s))
        && ind.is_none_or(|i| r.ind == BigInt::from(i));
    ensure(ok, format!("unexpected record {}", r.line()))
}

fn criterion3(cells: &Cells) -> Outcome {
    row(&cells.v3_552, 552, 2, Some(5), Some(1))?;
    row(&cells.v3_552_d3, 552, 2, None, Some(3))?;
    ensure(ambient_set(&cells.v3_552.cell) == ambient_set(&cells.v3_552_d3.cell), "d=3 vertex set differs")?;
    row(&cells.v5_275, 275, 5, Some(4), None)?;
    row(&cells.v2_47104, 47104, 4, None, None)?;
    row(&cells.v2_94208, 94208, 2, None, None)?;
    ensure(ambient_set(&cells.v2_47104.cell).is_subset(&ambient_set(&cells.v2_94208.cell)), "47104 not a subset")?;
    for (name, r) in [("552", &cells.v3_552), ("275", &cells.v5_275)] {
        let p = perfection_rank(&r.cell).map_err(e)?;
        ensure(p.perfection_rank == 1, format!("perfection rank of {name} is {}", p.perfection_rank))?;
    }
    let stretch = if allow_large() {
        let p = perfection_rank(&cells.v2_47104.cell).map_err(e)?;
        ensure(p.perfection_rank == 1, format!("perfection rank of 47104 is {}", p.perfection_rank))?;
        "; 47104 perfection rank 1"
    } else {
        "; 47104 perfection rank skipped (DELONE_ALLOW_LARGE)"
    };
    Ok(format!(
        "{} | {} | {} | {} ⊂ {}; perfection rank 1 for 552 and 275{stretch}",
        cells.v3_552.line(),
        cells.v3_552_d3.line(),
        cells.v5_275.line(),
        cells.v2_47104.line(),
        cells.v2_94208.line()
    ))
}

fn schlaefli_cell() -> Result<DelaunayCell, String> {
    let l = Arc::new(e6().map_err(e)?);
    tessellate(&l, &Default::default())
        .map_err(e)?
        .into_iter()
        .find(|c| c.vertices.len() == 27)
        .ok_or_else(|| "no 27-vertex cell in E6".to_string())
}

fn criterion4(cells: &Cells, produced: &mut Vec<(String, DelaunayCell)>) -> Outcome {
    let d27 = schlaefli_cell()?;
    let res = laminate_extend(&d27).map_err(e)?;
    ensure(res.kind == LaminateKind::SecondType, "E6 cell is not second type")?;
    ensure(res.contains_input(&d27), "laminated cell misses input vertices")?;
    let sym = symmetry_kind(&res.new_cell).map_err(e)?;
    ensure(sym == SymmetryKind::CentrallySymmetric, "laminated E6 cell is not centrally symmetric")?;
    let l7 = Arc::new(e7().map_err(e)?);
    let e7_max = tessellate(&l7, &Default::default()).map_err(e)?.into_iter().map(|c| c.vertices.len()).max().unwrap_or(0);
    let n56 = res.new_cell.vertices.len();
    ensure(n56 == e7_max, format!("laminated E6 cell has {n56} vertices, largest E7 cell {e7_max}"))?;
    let p = res.perfection.clone().ok_or("no perfection comparison")?;
    ensure(p.holds(), format!("perfection rank grew {} → {}", p.input, p.output))?;

    let d275 = &cells.v5_275.cell;
    let res2 = laminate_extend(d275).map_err(e)?;
    ensure(res2.kind == LaminateKind::SecondType, "275 cell is not second type")?;
    ensure(res2.contains_input(d275), "laminated 275 cell misses input vertices")?;
    let n552 = res2.new_cell.vertices.len();
    ensure(n552 == 552, format!("laminated 275 cell has {n552} vertices"))?;
    let p2 = res2.perfection.clone().ok_or("no perfection comparison")?;
    ensure(p2.holds(), format!("perfection rank grew {} → {}", p2.input, p2.output))?;

    produced.push(("E6 27".into(), d27));
    produced.push(("E6 → 56".into(), res.new_cell));
    produced.push(("275 → 552".into(), res2.new_cell));
    Ok(format!(
        "E6 27 → {n56} (largest E7 cell {e7_max}), δ_s = {}; 275 → {n552}, δ_s = {}; perfection {}→{} and {}→{}",
        res.delta_s, res2.delta_s, p.input, p.output, p2.input, p2.output
    ))
}

fn criterion5(cells: &Cells, produced: &[(String, DelaunayCell)]) -> Outcome {
    let mut all: Vec<(String, &DelaunayCell)> = vec![
        ("552".into(), &cells.v3_552.cell),
        ("552 d=3".into(), &cells.v3_552_d3.cell),
        ("275".into(), &cells.v5_275.cell),
        ("47104".into(), &cells.v2_47104.cell),
        ("94208".into(), &cells.v2_94208.cell),
    ];
    all.extend(produced.iter().map(|(n, c)| (n.clone(), c)));
    let mut summary = Vec::new();
    let mut exceptions = Vec::new();
    for (name, cell) in all {
        let t = tden(&cell.center);
        let (kind, _, _) = laminate_kind(cell).map_err(e)?;
        if !type_matches_tden(&t, kind) {
            exceptions.push(format!("{name} (tden {t}, {kind:?})"));
        }
        let k = if kind == LaminateKind::FirstType { "I" } else { "II" };
        summary.push(format!("{name}:{t}/{k}"));
    }
    ensure(exceptions.is_empty(), format!("exceptions: {}", exceptions.join(", ")))?;
    Ok(format!("0 exceptions over {} cells [{}]", summary.len(), summary.join(" ")))
}

fn criterion6(le: &Leech) -> Outcome {
    for n in 1..=5 {
        let l = Arc::new(zn(n).map_err(e)?);
        let r = covering_radius(&l, &Default::default()).map_err(e)?;
        ensure(r == rat(n as i64, 4), format!("Z^{n} covering radius² {r}"))?;
    }
    for k in [2, 3] {
        let l = an(k).map_err(e)?;
        let oracle = grid_covering(&l, 12);
        let r = covering_radius(&Arc::new(l), &Default::default()).map_err(e)?;
        ensure(r == oracle, format!("A{k}: {r} vs grid oracle {oracle}"))?;
    }
    let bound = covering_bound(le.norm(&vector(2))).map_err(e)?;
    ensure(bound == rat(31, 16), format!("covering bound {bound}"))?;
    let dual = le.section(&vector(2)).map_err(e)?.lattice.dual().map_err(e)?;
    let samples = 10_000;
    let worst = sample_covering(&dual, samples, 0xc0ffee).map_err(e)?;
    ensure(worst <= bound, format!("sampled distance² {worst} exceeds {bound}"))?;
    Ok(format!("Z^1..Z^5 = n/4; A2 = 2/3, A3 = 1 (grid oracle); bound² = {bound}; {samples} samples of the dual section max {worst}"))
}

fn criterion7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce);
    for _ in 0..100 {
        let b = random_basis(&mut rng, 3, 4);
        let l = Lattice::from_i64_basis(&b).map_err(e)?;
        let x: RatVec = (0..3).map(|_| rat(rng.gen_range(-40..40), rng.gen_range(1..13))).collect();
        let (d, mut pts) = closest_vectors(&l, &x).map_err(e)?;
        pts.sort();
        ensure((d, pts) == cvp_oracle(&b, &l, &x), "CVP disagrees with the box search")?;
    }
    let square = [(1, 0), (-1, 0), (0, 1), (0, -1)];
    let hexagon = [(2, 0), (-2, 0), (1, 1), (1, -1), (-1, 1), (-1, -1)];
    let (os, oh) = (circle_strength(&square, 1, 1, 9), circle_strength(&hexagon, 2, 3, 9));
    let z2 = zn(2).map_err(e)?;
    let a2 = an(2).map_err(e)?;
    let zero = vec![Rational::from_integer(0.into()); 2];
    let sq: Vec<Vec<i64>> = vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]];
    let (_, hex) = shortest_vectors(&a2).map_err(e)?;
    let ls = design_strength_points(&sq, &zero, z2.gram(), 9).map_err(e)?;
    let lh = design_strength_points(&hex, &zero, a2.gram(), 9).map_err(e)?;
    ensure(os == 3 && oh == 5 && ls == 3 && lh == 5, format!("strengths oracle {os}/{oh}, library {ls}/{lh}"))?;

    let d27 = schlaefli_cell()?;
    let a3 = Arc::new(an(3).map_err(e)?);
    let simplex = tessellate(&a3, &Default::default()).map_err(e)?.remove(0);
    let mut conjugations = 0;
    for cell in [&d27, &simplex] {
        let base = perfection_rank(cell).map_err(e)?;
        for _ in 0..25 {
            let (u, uinv) = random_unimodular(&mut rng, cell.dim());
            let other = conjugate(cell, &u, &uinv);
            ensure(perfection_rank(&other).map_err(e)? == base, "perfection rank changed under a basis change")?;
            conjugations += 1;
        }
    }

    let mut cells_checked = 0;
    for l in [zn(3), an(3), zn(4), an(4), e6()] {
        let l = Arc::new(l.map_err(e)?);
        let n = l.rank();
        for c in tessellate(&l, &Default::default()).map_err(e)? {
            ensure(c.verify().map_err(e)?.is_empty(), "a cell failed its emptiness certificate")?;
            if n <= 4 {
                let k = two_laminations(&c).map_err(e)?.len();
                ensure(k <= (1 << (n + 1)) - 2, format!("{k} two-laminations in rank {n}"))?;
            }
            cells_checked += 1;
        }
    }
    Ok(format!(
        "CVP 100/100; strength square 3, hexagon 5; {conjugations} conjugations; {cells_checked} cells self-certified"
    ))
}

/// Reports the lamination bound of D(v₃, 11178). A result of 5 needs the upper
/// bound to be 5 and the index-2 schema to certify every sublattice.
fn criterion8(cells: &Cells) -> Outcome {
    let cell = &cells.v3_11178.cell;
    ensure(cells.v3_11178.n_vertices == 11178, format!("unexpected record {}", cells.v3_11178.line()))?;
    let ub = lamination_number_upper(cell, 4).map_err(e)?;
    let vals: Vec<i64> = cell.vertices.iter().map(|x| x.iter().zip(&ub.functional).map(|(a, b)| a * b).sum()).collect();
    let mut hist = std::collections::BTreeMap::new();
    for v in vals {
        *hist.entry(v).or_insert(0usize) += 1;
    }
    let n = cell.dim();
    let mask = ub.functional.iter().enumerate().fold(0u128, |m, (i, &x)| m | (((x & 1) as u128) << (n - 1 - i)));
    let witness = index2_scan(cell, mask..mask + 1).map_err(e)?;
    let full = if allow_large() {
        format!("; full index-2 scan: {:?}", width_lower_bound_index2(cell).map_err(e)?)
    } else {
        String::new()
    };
    let detail = format!(
        "lamination_number_upper = {} (exact: {}) via functional {:?} with value counts {:?}; index-2 scan at mask {mask}: {:?}{full}",
        ub.value, ub.exact, ub.functional, hist, witness
    );
    if ub.value == 5 && matches!(witness, Index2Outcome::Certified(_)) {
        Ok(detail)
    } else {
        Err(format!("expected lamination number 5; {detail}"))
    }
}

fn main() -> ExitCode {
    let started = Instant::now();
    let mut gating_failures = 0;
    let mut report = |k: usize, gating: bool, out: Outcome, t: Instant| {
        let secs = t.elapsed().as_secs_f64();
        match out {
            Ok(msg) => println!("criterion {k}: PASS ({secs:.1}s) {msg}"),
            Err(msg) => {
                let tag = if gating { "" } else { " [stretch, not gating]" };
                println!("criterion {k}: FAIL{tag} ({secs:.1}s) {msg}");
                if gating {
                    gating_failures += 1;
                }
            }
        }
    };

    let t = Instant::now();
    let le = match Leech::new() {
        Ok(le) => le,
        Err(err) => {
            println!("criterion 1: FAIL build_leech: {err}");
            return ExitCode::FAILURE;
        }
    };
    report(1, true, criterion1(&le), t);
    let t = Instant::now();
    report(2, true, criterion2(&le), t);

    let t = Instant::now();
    let opts = MainDelaunayOptions::default();
    let build = || -> Result<Cells, String> {
        let (v2, v3, v5) = (vector(2), vector(3), vector(5));
        let md = |v: &[i64], a, d| le.main_delaunay(v, a, d, &opts).map_err(e);
        Ok(Cells {
            v3_552: md(&v3, 3, 1)?,
            v3_552_d3: md(&v3, 3, 3)?,
            v3_11178: md(&v3, 2, 1)?,
            v5_275: md(&v5, 4, 1)?,
            v2_47104: md(&v2, 1, 1)?,
            v2_94208: md(&v2, 1, 2)?,
        })
    };
    let cells = match build() {
        Ok(c) => c,
        Err(err) => {
            for k in [3, 4, 5, 8] {
                println!("criterion {k}: FAIL main Delaunay pipeline: {err}");
            }
            return ExitCode::FAILURE;
        }
    };
    report(3, true, criterion3(&cells), t);
    let t = Instant::now();
    let mut produced = Vec::new();
    report(4, true, criterion4(&cells, &mut produced), t);
    let t = Instant::now();
    report(5, true, criterion5(&cells, &produced), t);
    let t = Instant::now();
    report(6, true, criterion6(&le), t);
    let t = Instant::now();
    report(7, true, criterion7(), t);
    let t = Instant::now();
    report(8, false, criterion8(&cells), t);

    println!("acceptance finished in {:.1}s", started.elapsed().as_secs_f64());
    if gating_failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
