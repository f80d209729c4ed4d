use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use equilat::canonical::is_isomorphic;
use equilat::census::{count_table, to_csv, CensusFilter, CensusOptions, CAP_ENV};
use equilat::cover::{canonical_cover, verify_cover};
use equilat::degree_bound::{
    bounded_degree_map, check_tri_lb, pipeline_report, separation_check, MU_BOUND, SIGMA_BOUND,
};
use equilat::double::conformal_double;
use equilat::parallelogram::decompose;
use equilat::random::{random_surface, DEFAULT_RETRY_LIMIT};
use equilat::subdivide::subdivide;
use equilat::surface::load_surface;
use equilat::translation::{
    detect_structures, face_types, flat_area, is_locally_bounded_tran, period_map, FaceType,
};
use equilat::{Error, GluedSurface};

#[derive(Parser)]
#[command(name = "equilat", version, about = "Surfaces glued from equilateral triangles")]
struct Cli {
    /// Worker threads for parallel commands.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterArg {
    Tran,
    Lb,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a TSF file.
    Validate { input: PathBuf },
    /// Vertex, edge and face counts, genus and degree histogram.
    Stats { input: PathBuf },
    /// k-subdivide a surface.
    Subdivide {
        input: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Conformal double of a surface with boundary.
    Double {
        input: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Orientation-preserving isomorphism test.
    Iso { a: PathBuf, b: PathBuf },
    /// Uniform random connected closed surface.
    Random {
        #[arg(short = 'T')]
        faces: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_RETRY_LIMIT)]
        retry_limit: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Translation structures, periods and the Tran_lb test.
    Tran {
        input: PathBuf,
        /// Fail unless the surface is locally bounded.
        #[arg(long)]
        require_lb: bool,
    },
    /// The bounded-degree map with its certificate.
    DegreeBound {
        input: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Parallelogram decomposition of a translation surface.
    Decompose {
        input: PathBuf,
        /// Which of the six structures to use.
        #[arg(long, default_value_t = 0)]
        structure: usize,
    },
    /// Canonical 6-cover, one TSF per component plus a manifest.
    Cover {
        input: PathBuf,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Count table of all closed surfaces up to a face count.
    Census {
        #[arg(long)]
        tmax: usize,
        #[arg(long, value_enum)]
        filter: Option<FilterArg>,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Raise the face-count cap for this run.
        #[arg(long)]
        max_t: Option<usize>,
    },
}

/// Report lines followed by a single RESULT line. Goes to stderr when stdout
/// carries a surface.
struct Report {
    lines: Vec<String>,
    failures: Vec<String>,
    to_stderr: bool,
}

impl Report {
    fn new() -> Self {
        Self { lines: Vec::new(), failures: Vec::new(), to_stderr: false }
    }

    fn line(&mut self, l: impl Into<String>) {
        self.lines.push(l.into());
    }

    fn check(&mut self, ok: bool, what: impl Display) {
        self.line(format!("{} {what}", if ok { "ok  " } else { "FAIL" }));
        if !ok {
            self.failures.push(what.to_string());
        }
    }

    fn finish(self, summary: impl Display) -> ExitCode {
        let pass = self.failures.is_empty();
        let result = if pass {
            format!("RESULT: pass {summary}")
        } else {
            format!("RESULT: fail {}", self.failures.join("; "))
        };
        let text = self.lines.iter().chain(std::iter::once(&result)).fold(String::new(), |acc, l| acc + l + "\n");
        if self.to_stderr {
            eprint!("{text}");
        } else {
            print!("{text}");
        }
        if pass {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        }
    }
}

#[derive(Debug)]
enum CliError {
    Domain(Error),
    Io(PathBuf, std::io::Error),
}

impl Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Domain(e) => write!(f, "{e}"),
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

type CliResult = Result<ExitCode, CliError>;

fn read(path: &Path) -> Result<GluedSurface, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::Io(path.to_owned(), e))?;
    Ok(load_surface(&bytes)?)
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(path.to_owned(), e))
}

/// Writes to `out`, or prints the surface and moves the report to stderr.
fn emit(s: &GluedSurface, out: Option<&Path>, report: &mut Report) -> Result<(), CliError> {
    match out {
        Some(p) => {
            write(p, &s.to_tsf())?;
            report.line(format!("wrote {}", p.display()));
        }
        None => {
            print!("{}", s.to_tsf());
            report.to_stderr = true;
        }
    }
    Ok(())
}

fn stats_line(s: &GluedSurface) -> Result<String, CliError> {
    let e = s.euler()?;
    let mut l = format!("T={} V={} E={} chi={} g={}", e.faces, e.vertices, e.edges, e.chi, e.genus);
    if e.boundary_components > 0 {
        l.push_str(&format!(" b={}", e.boundary_components));
    }
    Ok(l)
}

fn validate(input: &Path) -> CliResult {
    let s = read(input)?;
    let mut r = Report::new();
    let (_, comps) = s.component_labels();
    let boundary = s.boundary_darts().count();
    r.line(format!("T={} darts={} boundary_darts={} components={comps}", s.face_count(), s.dart_count(), boundary));
    r.line(if boundary == 0 { "closed" } else { "bordered" });
    Ok(r.finish("valid surface"))
}

fn stats(input: &Path) -> CliResult {
    let s = read(input)?;
    let mut r = Report::new();
    r.line(stats_line(&s)?);
    let e = s.euler()?;
    for w in &e.warnings {
        r.check(false, w);
    }
    for (d, n) in s.vertices().histogram() {
        r.line(format!("degree {d}: {n}"));
    }
    Ok(r.finish(format!("genus {}", e.genus)))
}

fn run_subdivide(input: &Path, k: usize, out: Option<&Path>) -> CliResult {
    let fine = subdivide(&read(input)?, k)?;
    let mut r = Report::new();
    emit(&fine, out, &mut r)?;
    r.line(format!("{k}-subdivision with {} faces", fine.face_count()));
    Ok(r.finish(format!("T={}", fine.face_count())))
}

fn run_double(input: &Path, out: Option<&Path>) -> CliResult {
    let s = read(input)?;
    let d = conformal_double(&s)?;
    let mut r = Report::new();
    emit(&d.surface, out, &mut r)?;
    r.line(stats_line(&d.surface)?);
    let h = s.euler()?;
    let g = d.surface.genus()?;
    r.check(g == 2 * h.genus + h.boundary_components as u64 - 1, format!("genus 2h+b-1 = {g}"));
    r.check(d.mirror_is_symmetry(&s), "mirror map is an orientation-reversing symmetry");
    Ok(r.finish(format!("double of genus {g}")))
}

fn iso(a: &Path, b: &Path) -> CliResult {
    let (x, y) = (read(a)?, read(b)?);
    let mut r = Report::new();
    let same = is_isomorphic(&x, &y);
    r.line(if same { "isomorphic" } else { "not isomorphic" });
    r.check(same, "isomorphic");
    Ok(r.finish("isomorphic"))
}

fn run_random(faces: usize, seed: u64, retry_limit: usize, out: Option<&Path>) -> CliResult {
    let s = random_surface(faces, seed, retry_limit)?;
    let mut r = Report::new();
    emit(&s, out, &mut r)?;
    r.line(stats_line(&s)?);
    Ok(r.finish(format!("T={faces} seed={seed}")))
}

fn tran(input: &Path, require_lb: bool) -> CliResult {
    let s = read(input)?;
    let mut r = Report::new();
    r.line(stats_line(&s)?);
    let structures = detect_structures(&s)?;
    r.line(format!("structures: {}", structures.len()));
    if structures.is_empty() {
        let bad: Vec<String> =
            s.vertices().iter().filter(|x| x.degree % 6 != 0).map(|x| format!("{}({})", x.id, x.degree)).collect();
        r.line(format!("vertices with degree not divisible by 6: {}", bad.join(" ")));
        r.check(false, "admits a translation structure");
        return Ok(r.finish(""));
    }
    r.check(structures.len() == 6, "six structures");
    let st = &structures[0];
    let types = face_types(st);
    let a = types.iter().filter(|&&t| t == FaceType::A).count();
    r.line(format!("face types: A={a} B={}", types.len() - a));
    let bipartite = s.pairs().iter().all(|&(x, y)| types[x / 3] != types[y / 3]);
    r.check(bipartite, "every edge joins a Type A and a Type B face");
    let v = s.vertices();
    let pm = period_map(&s, &v, st, 0);
    r.line(format!("periods from vertex 0 ({} generators):", pm.cotree.len()));
    for (d, p) in &pm.cotree {
        r.line(format!("  dart {d}: {p}"));
    }
    r.line(format!("flat area: {}", flat_area(&s)));
    let lb = is_locally_bounded_tran(&s, st)?;
    r.line(format!(
        "Tran_lb: max degree {}, bad potentials {}, bad loops {}",
        lb.max_degree,
        lb.bad_potentials.len(),
        lb.bad_loops.len()
    ));
    if require_lb {
        r.check(lb.passed(), "locally bounded");
    } else {
        r.line(format!("locally bounded: {}", lb.passed()));
    }
    Ok(r.finish(format!("{} structures", structures.len())))
}

fn degree_bound(input: &Path, out: Option<&Path>) -> CliResult {
    let s = read(input)?;
    let run = bounded_degree_map(&s)?;
    let mut r = Report::new();
    emit(&run.output, out, &mut r)?;
    let rep = pipeline_report(&s, &run)?;
    r.line(format!("input:  {}", stats_line(&s)?));
    r.line(format!("output: {}", stats_line(&run.output)?));
    for x in &run.provenance.replacements {
        r.line(format!("replaced fan of degree {} at vertex {} (faces from {})", x.degree(), x.center, x.face_offset));
    }
    r.check(rep.max_degree <= 7, format!("max degree {} <= 7", rep.max_degree));
    r.check(rep.input_genus == rep.output_genus, "genus preserved");
    r.check(rep.sigma() <= SIGMA_BOUND, format!("faces {:.2} T <= {SIGMA_BOUND} T", rep.sigma()));
    r.check(
        rep.mu() <= MU_BOUND,
        format!("|V!=6| = {} <= {MU_BOUND} (|V!=6(S)| + g), ratio {:.3}", rep.output_not_six, rep.mu()),
    );
    r.check(rep.round_trip, "provenance round trip recovers the input");
    let lb = check_tri_lb(&run.output);
    r.check(lb.passed(), "output is a 3-subdivision of a degree <= 7 surface");
    let sep = separation_check(&run.output, lb.coarsening.as_ref());
    r.check(sep.passed(), format!("cone points separated (distance {})", sep.min_distance));
    Ok(r.finish(format!("T={} -> {}", rep.input_faces, rep.output_faces)))
}

fn run_decompose(input: &Path, structure: usize) -> CliResult {
    let s = read(input)?;
    let structures = detect_structures(&s)?;
    let Some(st) = structures.get(structure) else {
        return Err(Error::InvalidParameter(format!(
            "structure {structure} requested, surface has {}",
            structures.len()
        ))
        .into());
    };
    let d = decompose(&s, st)?;
    let v = s.vertices();
    let mut r = Report::new();
    r.line(stats_line(&s)?);
    r.line("face length width triangles corners");
    for f in &d.faces {
        let corners: Vec<String> = f.corners.iter().map(|c| format!("{}({})", c.vertex, v.degree(c.vertex))).collect();
        r.line(format!("{} {} {} {} {}", f.id, f.length, f.width, f.triangles, corners.join(" ")));
    }
    let c = &d.checks;
    r.check(c.axis_directions, "A uses only directions +-1, +-e^(i pi/3)");
    r.check(c.cone_edges_in_a, "axis edges at cone points lie in A");
    r.check(c.vertex_edges_in_a, "+-1 edges at vertices of B lie in A");
    r.check(c.periods_in_3l, "periods between vertices of B lie in 3L");
    r.check(c.lengths_at_least_three, "length and width >= 3");
    r.check(c.cone_corner_per_face, "every face has a cone-point corner");
    r.check(c.face_count_bound, format!("{} faces <= 12(g-1) = {}", d.faces.len(), 12 * (d.genus - 1)));
    r.check(c.tiles, "faces tile S with 2 l w triangles each");
    r.check(d.total_area() == flat_area(&s), format!("total area {}", d.total_area()));
    Ok(r.finish(format!("{} parallelograms", d.faces.len())))
}

fn cover(input: &Path, out_dir: Option<&Path>) -> CliResult {
    let s = read(input)?;
    let c = canonical_cover(&s)?;
    let mut r = Report::new();
    r.line(format!("base: {}", stats_line(&s)?));
    let verified = verify_cover(&s, &c);
    for x in c.ramification.iter().filter(|x| x.index > 1) {
        r.line(format!(
            "branch vertex {} degree {}: {} preimages of index {}",
            x.vertex, x.degree, x.preimages, x.index
        ));
    }
    for (i, k) in c.components.iter().enumerate() {
        let mut l = format!("component {i}: degree {} {}", k.degree, stats_line(&k.surface)?);
        if let Ok(rep) = &verified {
            let cr = &rep.components[i];
            l.push_str(&format!(" RH {} = {}", cr.rh.0, cr.rh.1));
            if let Some(lb) = cr.tran_lb {
                l.push_str(&format!(" Tran_lb {lb}"));
            }
        }
        r.line(l);
    }
    match &verified {
        Ok(rep) => {
            r.check(true, format!("chi(cover) = {} = {}", rep.chi_cover, rep.chi_expected));
            r.check(true, "Riemann-Hurwitz, degrees and structures verified");
        }
        Err(e) => r.check(false, e),
    }
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(|e| CliError::Io(dir.to_owned(), e))?;
        for (i, k) in c.components.iter().enumerate() {
            write(&dir.join(format!("component_{i}.tsf")), &k.surface.to_tsf())?;
        }
        let manifest = r.lines.iter().fold(String::new(), |acc, l| acc + l + "\n");
        write(&dir.join("manifest.txt"), &manifest)?;
        r.line(format!("wrote {} components to {}", c.components.len(), dir.display()));
    }
    Ok(r.finish(format!("{} components", c.components.len())))
}

fn census(jobs: usize, tmax: usize, filter: Option<FilterArg>, out: Option<&Path>, max_t: Option<usize>) -> CliResult {
    let mut opts = CensusOptions { jobs, ..CensusOptions::default() };
    if let Some(m) = max_t {
        opts.cap = m;
    }
    let filter = filter.map(|f| match f {
        FilterArg::Tran => CensusFilter::Tran,
        FilterArg::Lb => CensusFilter::Lb,
    });
    let rows = count_table(tmax, filter, &opts)?;
    let mut r = Report::new();
    r.line(format!("cap {} (override with --max-t or {CAP_ENV})", opts.cap));
    r.line("T genus count tran lb simple max-degree histogram");
    for row in &rows {
        let hist: Vec<String> = row.max_degree_histogram.iter().map(|(d, n)| format!("{d}:{n}")).collect();
        r.line(format!(
            "{} {} {} {} {} {} {}",
            row.t,
            row.genus,
            row.count,
            row.tran_count,
            row.lb_count,
            row.simple_count,
            hist.join(",")
        ));
    }
    let csv = to_csv(&rows);
    match out {
        Some(p) => {
            write(p, &csv)?;
            r.line(format!("wrote {}", p.display()));
        }
        None => r.lines.extend(csv.lines().map(String::from)),
    }
    r.check(rows.iter().all(|x| 4 * x.genus as usize <= x.t + 4), "T >= 4g - 4 on every row");
    Ok(r.finish(format!("{} classes", rows.iter().map(|x| x.count).sum::<usize>())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.jobs.unwrap_or_else(|| CensusOptions::default().jobs);
    let result = match &cli.command {
        Command::Validate { input } => validate(input),
        Command::Stats { input } => stats(input),
        Command::Subdivide { input, k, out } => run_subdivide(input, *k, out.as_deref()),
        Command::Double { input, out } => run_double(input, out.as_deref()),
        Command::Iso { a, b } => iso(a, b),
        Command::Random { faces, seed, retry_limit, out } => run_random(*faces, *seed, *retry_limit, out.as_deref()),
        Command::Tran { input, require_lb } => tran(input, *require_lb),
        Command::DegreeBound { input, out } => degree_bound(input, out.as_deref()),
        Command::Decompose { input, structure } => run_decompose(input, *structure),
        Command::Cover { input, out_dir } => cover(input, out_dir.as_deref()),
        Command::Census { tmax, filter, out, max_t } => census(jobs, *tmax, *filter, out.as_deref(), *max_t),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            println!("RESULT: fail {e}");
            ExitCode::from(2)
        }
    }
}
