mod cache;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use delone_core::analysis::{
    design_strength, index2_scan, lamination_number_upper, perfection_rank, tden, width_lower_bound_index2,
    Index2Outcome,
};
use delone_core::catalog::lattice_by_name;
use delone_core::delaunay::{covering_radius, delaunay_cell, tessellate, DelaunayCell, PolytopeFile, TessellateOptions};
use delone_core::enumerate::{shortest_vectors, vectors_of_norm};
use delone_core::error::Error;
use delone_core::laminate::{laminate_extend_with, LaminateKind, LaminateOptions};
use delone_core::lattice::{discriminant_group, Lattice};
use delone_core::leech::{
    check_smith_point, covering_bound, named_vector, sample_covering, scaled_to_coords, Leech, MainDelaunayOptions,
    LEECH_KISSING,
};
use delone_core::rational::{parse_rational, IntVec, RatVec, Rational};

const EXIT_PRECONDITION: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_IO: u8 = 74;

#[derive(Debug)]
enum CliError {
    Usage(String),
    Data(String),
    Precondition(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
            CliError::Precondition(_) => EXIT_PRECONDITION,
            CliError::Io(_) => EXIT_IO,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Precondition(m) | CliError::Io(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => CliError::Data(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> CliError + '_ {
    move |e| CliError::Io(format!("{}: {e}", path.display()))
}

#[derive(Parser, Debug)]
#[command(name = "delone", version, about = "Exact lattice Delaunay polytopes and Leech lattice sections")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest rank accepted by tessellation and index-2 listing verbs.
    #[arg(long, global = true, default_value_t = 8)]
    max_rank_guard: usize,
    /// Permit computations expected to take hours.
    #[arg(long, global = true)]
    allow_large: bool,
    #[command(subcommand)]
    group: Group,
}

#[derive(Subcommand, Debug)]
enum Group {
    /// Lattice queries. LATTICE is a file path or a catalog name.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Delaunay cells and tessellations.
    #[command(subcommand)]
    Delaunay(DelaunayCmd),
    /// Invariants of a Delaunay polytope file.
    #[command(subcommand)]
    Polytope(PolytopeCmd),
    /// Leech lattice sections and their main Delaunay polytopes.
    #[command(subcommand)]
    Leech(LeechCmd),
}

#[derive(Subcommand, Debug)]
enum LatticeCmd {
    Info { lattice: String },
    Dual {
        lattice: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Min {
        lattice: String,
        /// Also print the vectors.
        #[arg(long)]
        list: bool,
    },
    Norm {
        lattice: String,
        norm: String,
        #[arg(long)]
        list: bool,
    },
    Sublattices { lattice: String },
    Superlattices { lattice: String },
}

#[derive(Subcommand, Debug)]
enum DelaunayCmd {
    /// The Delaunay cell of a point given in lattice coordinates.
    At {
        lattice: String,
        #[arg(required = true, allow_negative_numbers = true)]
        point: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Tessellate {
        lattice: String,
        /// Write one polytope file per class here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    CoveringRadius {
        lattice: String,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum PolytopeCmd {
    Perfrank { polytope: PathBuf },
    Strength {
        polytope: PathBuf,
        #[arg(long, default_value_t = 11)]
        t_max: usize,
    },
    Tden { polytope: PathBuf },
    WidthUpper {
        polytope: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_width: i64,
    },
    /// Index-2 lower-bound scan; `--masks a..b` restricts it to part of the sublattices.
    WidthProof {
        polytope: PathBuf,
        #[arg(long)]
        masks: Option<String>,
    },
    Laminate {
        polytope: PathBuf,
        /// Polytope file for the new cell.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Lattice file for the new lattice; defaults next to the output.
        #[arg(long)]
        lattice_out: Option<PathBuf>,
        #[arg(long)]
        no_perfection: bool,
    },
}

#[derive(Args, Debug, Clone)]
struct VectorArg {
    /// Named vector of type 2, 3, 4 or 5.
    #[arg(long = "type", conflicts_with = "vector")]
    vtype: Option<i64>,
    /// 24 comma-separated integers in √8-scaled coordinates.
    #[arg(long, allow_hyphen_values = true)]
    vector: Option<String>,
}

#[derive(Subcommand, Debug)]
enum LeechCmd {
    Build {
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Classify {
        #[command(flatten)]
        v: VectorArg,
    },
    Section {
        #[command(flatten)]
        v: VectorArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Glue {
        #[command(flatten)]
        v: VectorArg,
        #[arg(short)]
        d: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Table1 {
        #[command(flatten)]
        v: VectorArg,
        /// `auto` or a comma-separated list.
        #[arg(long, default_value = "auto")]
        alpha: String,
        /// Write the lattice and polytope file of every record here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long, default_value_t = 11)]
        t_max: usize,
    },
    SmithCheck {
        #[command(flatten)]
        v: VectorArg,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Comma-separated rational coordinates in the dual section.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
}

struct Ctx {
    max_rank_guard: usize,
    allow_large: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(EXIT_PRECONDITION);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_PRECONDITION);
        }
    }
    let ctx = Ctx { max_rank_guard: cli.max_rank_guard, allow_large: cli.allow_large };
    let result = match cli.group {
        Group::Lattice(c) => lattice_cmd(&ctx, c),
        Group::Delaunay(c) => delaunay_cmd(&ctx, c),
        Group::Polytope(c) => polytope_cmd(&ctx, c),
        Group::Leech(c) => leech_cmd(&ctx, c),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn fmt_vec(v: &[Rational]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn fmt_ints(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn parse_rats(items: &[&str]) -> CliResult<RatVec> {
    items
        .iter()
        .map(|s| parse_rational(s).ok_or_else(|| CliError::Usage(format!("bad rational `{s}`"))))
        .collect()
}

/// A file path when it exists, otherwise a catalog name.
fn load_lattice(source: &str) -> CliResult<Lattice> {
    let path = Path::new(source);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(io_err(path))?;
        return Lattice::from_text(&text).map_err(|e| CliError::Data(format!("{source}: {e}")));
    }
    Ok(lattice_by_name(source)?)
}

fn emit(output: &Option<PathBuf>, text: String) -> CliResult<String> {
    match output {
        Some(p) => {
            fs::write(p, &text).map_err(io_err(p))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn guard(ctx: &Ctx, rank: usize) -> CliResult<()> {
    if rank > ctx.max_rank_guard && !ctx.allow_large {
        return Err(CliError::Precondition(format!(
            "rank {rank} exceeds --max-rank-guard {}; pass --allow-large to override",
            ctx.max_rank_guard
        )));
    }
    Ok(())
}

/// Minimal vectors, memoized under `DELONE_CACHE_DIR` when set.
fn cached_min(name: &str, l: &Lattice, compute: impl FnOnce() -> CliResult<Vec<IntVec>>) -> CliResult<Vec<IntVec>> {
    let Some(dir) = cache::cache_dir() else { return compute() };
    let path = cache::cache_path(&dir, name, l);
    match cache::read_vectors(&path, l) {
        Ok(Some(vs)) => return Ok(vs),
        Ok(None) => {}
        Err(e) => eprintln!("warning: ignoring cache {}: {e}", path.display()),
    }
    let vs = compute()?;
    cache::write_vectors(&path, l, &vs).map_err(io_err(&path))?;
    Ok(vs)
}

fn leech_with_cache() -> CliResult<Leech> {
    let le = Leech::new()?;
    let l = le.lattice().clone();
    let vs = cached_min("leech", &l, || Ok(le.min_vectors()?.to_vec()))?;
    if !le.has_min_vectors() {
        le.set_min_vectors(vs)?;
    }
    Ok(le)
}

fn lattice_cmd(ctx: &Ctx, cmd: LatticeCmd) -> CliResult<String> {
    let mut out = String::new();
    match cmd {
        LatticeCmd::Info { lattice } => {
            let l = load_lattice(&lattice)?;
            let det = l.determinant();
            let _ = writeln!(out, "rank {}", l.rank());
            let _ = writeln!(out, "ambient_dim {}", l.ambient_dim());
            let _ = writeln!(out, "det_sq {}", det.squared);
            if let Some(r) = det.root {
                let _ = writeln!(out, "det {r}");
            }
            let _ = writeln!(out, "integral {}", l.is_integral());
            let _ = writeln!(out, "even {}", l.is_even());
            if l.is_integral() {
                let q = discriminant_group(&l)?;
                let f: Vec<String> = q.invariant_factors.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(out, "discriminant_group [{}]", f.join(","));
            }
            let _ = writeln!(out, "gram");
            for i in 0..l.rank() {
                let _ = writeln!(out, "{}", fmt_vec(l.gram().row(i)));
            }
        }
        LatticeCmd::Dual { lattice, output } => {
            let l = load_lattice(&lattice)?;
            return emit(&output, l.dual()?.to_text());
        }
        LatticeCmd::Min { lattice, list } => {
            let l = load_lattice(&lattice)?;
            let (norm, vs) = if lattice == "leech" {
                (Rational::from_integer(4.into()), leech_with_cache()?.min_vectors()?.to_vec())
            } else {
                shortest_vectors(&l)?
            };
            let _ = writeln!(out, "norm {norm}, count {}", vs.len());
            if list {
                for v in vs {
                    let _ = writeln!(out, "{}", fmt_ints(&v));
                }
            }
        }
        LatticeCmd::Norm { lattice, norm, list } => {
            let l = load_lattice(&lattice)?;
            let q = parse_rats(&[norm.as_str()])?.remove(0);
            let vs = vectors_of_norm(&l, &q)?;
            let _ = writeln!(out, "norm {q}, count {}", vs.len());
            if list {
                for v in vs {
                    let _ = writeln!(out, "{}", fmt_ints(&v));
                }
            }
        }
        LatticeCmd::Sublattices { lattice } => index2_listing(ctx, &lattice, true, &mut out)?,
        LatticeCmd::Superlattices { lattice } => index2_listing(ctx, &lattice, false, &mut out)?,
    }
    Ok(out)
}

/// One line per index-2 neighbour: its mask, squared determinant, integrality and evenness.
fn index2_listing(ctx: &Ctx, source: &str, sub: bool, out: &mut String) -> CliResult<()> {
    let l = load_lattice(source)?;
    guard(ctx, l.rank())?;
    if l.rank() > 64 {
        return Err(CliError::Precondition("rank too large to list index-2 neighbours".into()));
    }
    let iter = if sub { l.index2_sublattices() } else { l.index2_superlattices() };
    for (i, m) in iter.enumerate() {
        let _ = writeln!(
            out,
            "mask={} det_sq={} integral={} even={}",
            i + 1,
            m.squared_determinant(),
            m.is_integral(),
            m.is_even()
        );
    }
    Ok(())
}

fn write_cell(path: &Path, cell: &DelaunayCell, lattice_ref: &str) -> CliResult<()> {
    fs::write(path, PolytopeFile::from_cell(cell, lattice_ref).to_text()).map_err(io_err(path))
}

fn cell_summary(cell: &DelaunayCell) -> String {
    format!(
        "N={} radius_sq={} tden={} center={}",
        cell.vertices.len(),
        cell.radius_sq,
        tden(&cell.center),
        fmt_vec(&cell.center)
    )
}

fn delaunay_cmd(ctx: &Ctx, cmd: DelaunayCmd) -> CliResult<String> {
    let mut out = String::new();
    match cmd {
        DelaunayCmd::At { lattice, point, output } => {
            let l = Arc::new(load_lattice(&lattice)?);
            let items: Vec<&str> = point.iter().flat_map(|p| p.split(',')).filter(|s| !s.is_empty()).collect();
            let x = parse_rats(&items)?;
            if x.len() != l.rank() {
                return Err(CliError::Precondition(format!("point has {} coordinates, lattice rank {}", x.len(), l.rank())));
            }
            let cell = delaunay_cell(&l, &x)?;
            return emit(&output, PolytopeFile::from_cell(&cell, &lattice).to_text());
        }
        DelaunayCmd::Tessellate { lattice, out_dir, seed } => {
            let l = Arc::new(load_lattice(&lattice)?);
            let opts = TessellateOptions { max_rank_guard: guard_value(ctx), seed };
            let cells = tessellate(&l, &opts)?;
            if let Some(dir) = &out_dir {
                fs::create_dir_all(dir).map_err(io_err(dir))?;
            }
            let _ = writeln!(out, "classes {}", cells.len());
            for (i, c) in cells.iter().enumerate() {
                let _ = writeln!(out, "cell {i}: {}", cell_summary(c));
                if let Some(dir) = &out_dir {
                    write_cell(&dir.join(format!("cell-{i}.txt")), c, &lattice_ref(&lattice))?;
                }
            }
        }
        DelaunayCmd::CoveringRadius { lattice, seed } => {
            let l = Arc::new(load_lattice(&lattice)?);
            let opts = TessellateOptions { max_rank_guard: guard_value(ctx), seed };
            let _ = writeln!(out, "covering_radius_sq {}", covering_radius(&l, &opts)?);
        }
    }
    Ok(out)
}

fn guard_value(ctx: &Ctx) -> usize {
    if ctx.allow_large {
        usize::MAX
    } else {
        ctx.max_rank_guard
    }
}

/// How a written polytope file should refer to `source`: catalog names stay as
/// they are, files become absolute paths.
fn lattice_ref(source: &str) -> String {
    let p = Path::new(source);
    if p.is_file() {
        fs::canonicalize(p).map(|a| a.display().to_string()).unwrap_or_else(|_| source.to_string())
    } else {
        source.to_string()
    }
}

/// Reads a polytope file; its lattice reference is resolved relative to the file.
fn load_polytope(path: &Path) -> CliResult<DelaunayCell> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let file = PolytopeFile::parse(&text).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    let rel = path.parent().unwrap_or(Path::new(".")).join(&file.lattice_file);
    let source = if rel.is_file() { rel.display().to_string() } else { file.lattice_file.clone() };
    let l = Arc::new(load_lattice(&source)?);
    Ok(file.into_cell(l)?)
}

fn parse_range(s: &str) -> CliResult<std::ops::Range<u128>> {
    let bad = || CliError::Usage(format!("expected `a..b`, got `{s}`"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: u128 = a.trim().parse().map_err(|_| bad())?;
    let b: u128 = b.trim().parse().map_err(|_| bad())?;
    if a == 0 || b < a {
        return Err(CliError::Usage(format!("mask range `{s}` must satisfy 1 ≤ a ≤ b")));
    }
    Ok(a..b)
}

fn polytope_cmd(ctx: &Ctx, cmd: PolytopeCmd) -> CliResult<String> {
    let mut out = String::new();
    match cmd {
        PolytopeCmd::Perfrank { polytope } => {
            let cell = load_polytope(&polytope)?;
            let p = perfection_rank(&cell)?;
            let _ = writeln!(out, "perfection_rank {}", p.perfection_rank);
            let _ = writeln!(out, "constraint_rank {} of {}", p.constraint_rank, p.dim_quadratics);
            let _ = writeln!(out, "perfect {}", p.is_perfect);
        }
        PolytopeCmd::Strength { polytope, t_max } => {
            let cell = load_polytope(&polytope)?;
            let _ = writeln!(out, "strength {}", design_strength(&cell, t_max)?);
        }
        PolytopeCmd::Tden { polytope } => {
            let cell = load_polytope(&polytope)?;
            let _ = writeln!(out, "tden {}", tden(&cell.center));
        }
        PolytopeCmd::WidthUpper { polytope, max_width } => {
            let cell = load_polytope(&polytope)?;
            let b = lamination_number_upper(&cell, max_width)?;
            let _ = writeln!(out, "lamination_number_upper {}", b.value);
            let _ = writeln!(out, "exact {}", b.exact);
            let _ = writeln!(out, "functional {}", fmt_ints(&b.functional));
        }
        PolytopeCmd::WidthProof { polytope, masks } => {
            let cell = load_polytope(&polytope)?;
            let outcome = match masks {
                Some(r) => index2_scan(&cell, parse_range(&r)?)?,
                None => {
                    guard(ctx, cell.dim())?;
                    width_lower_bound_index2(&cell)?
                }
            };
            match outcome {
                Index2Outcome::Certified(c) => {
                    let _ = writeln!(out, "certified lamination_number >= 5");
                    let _ = writeln!(out, "sublattices {}", c.sublattices);
                    let _ = writeln!(out, "laminations_checked {}", c.laminations_checked);
                    let _ = writeln!(out, "min_other_laminae {}", c.min_other_laminae);
                }
                Index2Outcome::Failed(w) => {
                    let _ = writeln!(out, "failed {w:?}");
                }
            }
        }
        PolytopeCmd::Laminate { polytope, output, lattice_out, no_perfection } => {
            let cell = load_polytope(&polytope)?;
            let res = laminate_extend_with(&cell, &LaminateOptions { compare_perfection: !no_perfection })?;
            let kind = match res.kind {
                LaminateKind::FirstType => "first",
                LaminateKind::SecondType => "second",
            };
            let _ = writeln!(out, "kind {kind}");
            let _ = writeln!(out, "tden {}", tden(&cell.center));
            let _ = writeln!(out, "delta_s {}", res.delta_s);
            for (i, r) in &res.radii {
                let _ = writeln!(out, "r_sq[{i}] {r}");
            }
            let _ = writeln!(out, "already_symmetric {}", res.already_symmetric);
            let _ = writeln!(out, "new_rank {}", res.new_lattice.rank());
            let _ = writeln!(out, "new_vertices {}", res.new_cell.vertices.len());
            let _ = writeln!(out, "new_radius_sq {}", res.new_cell.radius_sq);
            let _ = writeln!(out, "contains_input {}", res.contains_input(&cell));
            if let Some(p) = &res.perfection {
                let _ = writeln!(out, "perfection_rank {} -> {}", p.input, p.output);
            }
            if let Some(poly) = &output {
                let lpath = lattice_out.clone().unwrap_or_else(|| poly.with_extension("lattice"));
                fs::write(&lpath, res.new_lattice.to_text()).map_err(io_err(&lpath))?;
                let lref = relative_ref(poly, &lpath);
                write_cell(poly, &res.new_cell, &lref)?;
            }
        }
    }
    Ok(out)
}

/// `target` as seen from the directory of `from` when they share it, else absolute.
fn relative_ref(from: &Path, target: &Path) -> String {
    let dir = from.parent().unwrap_or(Path::new(""));
    match target.strip_prefix(dir) {
        Ok(r) if !dir.as_os_str().is_empty() => r.display().to_string(),
        _ if target.parent() == Some(Path::new("")) || target.parent().is_none() => target.display().to_string(),
        _ => fs::canonicalize(target).map(|a| a.display().to_string()).unwrap_or_else(|_| target.display().to_string()),
    }
}

fn leech_vector(v: &VectorArg) -> CliResult<IntVec> {
    let scaled = match (&v.vtype, &v.vector) {
        (Some(t), None) => named_vector(*t).ok_or_else(|| {
            CliError::Precondition(format!("no named vector of type {t}; give --vector for other types"))
        })?,
        (None, Some(s)) => s
            .split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|_| CliError::Usage(format!("bad integer `{x}` in --vector"))))
            .collect::<CliResult<Vec<_>>>()?,
        _ => return Err(CliError::Usage("give exactly one of --type or --vector".into())),
    };
    if scaled.len() != 24 {
        return Err(CliError::Precondition(format!("--vector needs 24 entries, got {}", scaled.len())));
    }
    Ok(scaled_to_coords(&scaled)?)
}

fn leech_cmd(ctx: &Ctx, cmd: LeechCmd) -> CliResult<String> {
    let mut out = String::new();
    match cmd {
        LeechCmd::Build { output } => {
            let le = leech_with_cache()?;
            let l = le.lattice();
            let n = le.min_vectors()?.len();
            let _ = writeln!(out, "rank {}", l.rank());
            let _ = writeln!(out, "det_sq {}", l.squared_determinant());
            let _ = writeln!(out, "even {}", l.is_even());
            let _ = writeln!(out, "norm 4, count {n}");
            if n != LEECH_KISSING {
                return Err(CliError::Precondition(format!("found {n} minimal vectors")));
            }
            if let Some(p) = &output {
                fs::write(p, l.to_text()).map_err(io_err(p))?;
            }
        }
        LeechCmd::Classify { v } => {
            let le = Leech::new()?;
            let x = leech_vector(&v)?;
            let t = le.classify(&x)?;
            let _ = writeln!(out, "norm {}", le.norm(&x));
            let _ = writeln!(out, "type {t}");
            if let Some(d) = &t.decomposition {
                let _ = writeln!(out, "u1 {}", fmt_ints(&d.u1));
                let _ = writeln!(out, "u2 {}", fmt_ints(&d.u2));
            }
        }
        LeechCmd::Section { v, output } => {
            let le = Leech::new()?;
            let x = leech_vector(&v)?;
            return emit(&output, le.section(&x)?.lattice.to_text());
        }
        LeechCmd::Glue { v, d, output } => {
            let le = Leech::new()?;
            let x = leech_vector(&v)?;
            return emit(&output, le.section(&x)?.glue(d)?.to_text());
        }
        LeechCmd::Table1 { v, alpha, out_dir, t_max } => {
            let le = leech_with_cache()?;
            let x = leech_vector(&v)?;
            let norm = le.norm(&x);
            let alphas: Vec<i64> = if alpha == "auto" {
                (1..=norm / 2).collect()
            } else {
                alpha
                    .split(',')
                    .map(|a| a.trim().parse::<i64>().map_err(|_| CliError::Usage(format!("bad alpha `{a}`"))))
                    .collect::<CliResult<_>>()?
            };
            // Strength is quadratic in the vertex count; the large cells need --allow-large.
            let limit = if ctx.allow_large { usize::MAX } else { MainDelaunayOptions::default().strength_vertex_limit };
            let opts = MainDelaunayOptions { t_max, strength_vertex_limit: limit };
            if let Some(dir) = &out_dir {
                fs::create_dir_all(dir).map_err(io_err(dir))?;
            }
            for a in alphas {
                eprintln!("alpha {a}: computing");
                let _ = writeln!(out, "# alpha={a}");
                for rec in le.table1(&x, &[a], &opts)? {
                    let _ = writeln!(out, "{}", rec.line());
                    if let Some(dir) = &out_dir {
                        let stem = format!("type{}-alpha{a}-d{}", rec.vector_type.n, rec.d);
                        let lpath = dir.join(format!("{stem}.lattice"));
                        fs::write(&lpath, rec.cell.lattice.to_text()).map_err(io_err(&lpath))?;
                        write_cell(&dir.join(format!("{stem}.poly")), &rec.cell, &format!("{stem}.lattice"))?;
                    }
                }
            }
        }
        LeechCmd::SmithCheck { v, samples, seed, point } => {
            let le = Leech::new()?;
            let x = leech_vector(&v)?;
            let bound = covering_bound(le.norm(&x))?;
            let dual = le.section(&x)?.lattice.dual()?;
            let _ = writeln!(out, "bound_sq {bound}");
            if let Some(p) = point {
                let items: Vec<&str> = p.split(',').collect();
                let c = parse_rats(&items)?;
                if c.len() != dual.rank() {
                    return Err(CliError::Precondition(format!("--point needs {} coordinates", dual.rank())));
                }
                let r = check_smith_point(&dual, &c, Some(&bound))?;
                let _ = writeln!(out, "point_dist_sq {}", r.dist_sq);
                let _ = writeln!(out, "point_closest {}", r.count);
                let _ = writeln!(out, "point_meets_bound {}", r.meets_bound.unwrap_or(false));
            }
            if samples > 0 {
                let worst = sample_covering(&dual, samples, seed)?;
                let _ = writeln!(out, "samples {samples}");
                let _ = writeln!(out, "sampled_max_dist_sq {worst}");
                let _ = writeln!(out, "within_bound {}", worst <= bound);
            }
        }
    }
    Ok(out)
}
