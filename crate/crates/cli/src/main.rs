//! `quasifold`: affine extensions of H2, H3 and H4 from E8, D6 and A4.

mod render;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use quasifold_core::affine::{
    decompose_affine_root, fibonacci_rescale, is_kac_moody_extension, search_single_extensions, symmetrise,
    symmetrised_ltp, DEFAULT_ENTRY_BOUND, EXTENSION_NAMES,
};
use quasifold_core::coxeter::{cartan_to_diagram, coxeter_group, to_cartesian};
use quasifold_core::double_ext::{distinct_diagrams, enumerate_double, kernel_trivial};
use quasifold_core::projection::lift_bordered;
use quasifold_core::quasicrystal::{generate_fragment_with, Fragment, OrbitGroup};
use quasifold_core::{
    cartan_matrix, classify, extension_by_name, induce, lift, project, root_system, Axis, BorderedCartan, GoldenRat,
    GroupId, ProjectionMap, RootVector, Subspace, TranslationSpec,
};
use serde::Serialize;
use serde_json::json;

/// `println!` that reports write failures (such as a closed pipe) as errors.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        writeln!(std::io::stdout(), $($arg)*)?
    }};
}

#[derive(Debug, Parser)]
#[command(
    name = "quasifold",
    version,
    about = "Affine extensions of non-crystallographic Coxeter groups by projection"
)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the roots of a root system.
    Roots {
        #[arg(long)]
        group: GroupId,
        /// Also give Cartesian coordinates (H3, H4).
        #[arg(long)]
        cartesian: bool,
        /// Write the roots as CSV with exact entries.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Cartan matrix, Coxeter matrix and order of a group.
    Group {
        #[arg(long)]
        group: GroupId,
    },
    /// Project a source vector (A4, D6, E8) to H2, H3 or H4.
    Project {
        #[arg(long)]
        source: GroupId,
        #[arg(long, default_value = "par")]
        subspace: Subspace,
        #[command(flatten)]
        input: VectorInput,
    },
    /// Lift a vector of H2, H3 or H4 to A4, D6 or E8.
    Lift {
        #[arg(long)]
        target: GroupId,
        #[arg(long, default_value = "par")]
        subspace: Subspace,
        /// Treat the vector as an affine root and print the lifted bordered matrix.
        #[arg(long)]
        bordered: bool,
        #[command(flatten)]
        input: VectorInput,
    },
    /// Search affine single-node extensions of A4, D6 or E8.
    Extend {
        #[arg(long)]
        base: GroupId,
        /// Border entries range over 0, -1, ..., -bound.
        #[arg(long, default_value_t = DEFAULT_ENTRY_BOUND)]
        bound: i64,
    },
    /// Induce an H extension from a standard extension.
    Induce {
        #[arg(long, value_parser = extension_name)]
        ext: String,
        #[arg(long, default_value = "par")]
        subspace: Subspace,
    },
    /// Place an extension in the Fibonacci classification.
    Classify {
        #[arg(long, value_parser = extension_name)]
        ext: String,
        /// Move along the family by this many steps.
        #[arg(long, allow_hyphen_values = true)]
        rescale: Option<i64>,
    },
    /// Symmetrise an extension as A = D S.
    Symmetrise {
        #[arg(long, value_parser = extension_name)]
        ext: String,
        /// Symmetrise the lifted transpose of the (induced) extension instead.
        #[arg(long)]
        ltp: bool,
    },
    /// Enumerate simply-laced affine double extensions.
    Double {
        #[arg(long)]
        base: GroupId,
        /// Group the matrices into diagram classes.
        #[arg(long)]
        diagrams: bool,
    },
    /// Generate a quasicrystal fragment.
    Fragment(FragmentArgs),
    /// Render a fragment JSON file as SVG.
    Render {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Cartesian axes for H3 and H4 fragments, e.g. `0,2`.
        #[arg(long, default_value = "0,1", value_parser = plane)]
        plane: (usize, usize),
        /// Leave out the timestamp comment.
        #[arg(long)]
        no_timestamp: bool,
        /// Plot width in pixels.
        #[arg(long, default_value_t = 600.0)]
        size: f64,
    },
    /// Run the whole pipeline and compare it with the golden manifest.
    ReportAll {
        /// Manifest to use instead of the embedded one.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct VectorInput {
    /// Comma-separated coordinates over the simple roots, e.g. `1,tau,-1/2`.
    #[arg(long, allow_hyphen_values = true)]
    vector: Option<String>,
    /// JSON file holding a root vector or a bare coordinate list.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FragmentArgs {
    #[arg(long, required_unless_present = "ext")]
    group: Option<GroupId>,
    #[arg(long, default_value = "twofold")]
    axis: Axis,
    /// Multiple of the axis vector, e.g. `tau` or `1/2`.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    length: GoldenRat,
    /// Take the translation from a named extension instead.
    #[arg(long, value_parser = extension_name, conflicts_with_all = ["group", "axis", "length"])]
    ext: Option<String>,
    /// Number of translation steps.
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, value_enum, default_value = "rotations")]
    orbit: OrbitArg,
    /// Write the fragment as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the points as CSV with exact entries.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrbitArg {
    Rotations,
    Full,
}

impl From<OrbitArg> for OrbitGroup {
    fn from(o: OrbitArg) -> Self {
        match o {
            OrbitArg::Rotations => OrbitGroup::Rotations,
            OrbitArg::Full => OrbitGroup::Full,
        }
    }
}

fn extension_name(s: &str) -> std::result::Result<String, String> {
    let s = s.trim();
    if EXTENSION_NAMES.contains(&s) {
        Ok(s.to_string())
    } else {
        Err(format!("unknown extension `{s}` (known: {})", EXTENSION_NAMES.join(", ")))
    }
}

fn plane(s: &str) -> std::result::Result<(usize, usize), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => Ok((a.parse().map_err(|e| format!("{e}"))?, b.parse().map_err(|e| format!("{e}"))?)),
        _ => Err(format!("expected two axes like `0,1`, got `{s}`")),
    }
}

/// Bad user input detected after argument parsing.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn parse_vector(group: GroupId, input: &VectorInput) -> Result<RootVector> {
    read_vector(group, input).map_err(|e| Usage(format!("{e:#}")).into())
}

fn read_vector(group: GroupId, input: &VectorInput) -> Result<RootVector> {
    if let Some(text) = &input.vector {
        let coords = text.split(',').map(|x| x.trim().parse()).collect::<std::result::Result<Vec<GoldenRat>, _>>()?;
        return Ok(RootVector::new(group, coords)?);
    }
    let path = input.input.as_ref().context("no vector given")?;
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if let Ok(v) = serde_json::from_str::<RootVector>(&text) {
        if v.group != group {
            bail!("{} holds a {} vector, expected {group}", path.display(), v.group);
        }
        return Ok(v);
    }
    let coords: Vec<GoldenRat> =
        serde_json::from_str(&text).with_context(|| format!("{} is not a root vector", path.display()))?;
    Ok(RootVector::new(group, coords)?)
}

fn emit<T: Serialize>(value: &T) -> Result<()> {
    out!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn csv_row<T: ToString>(cells: impl IntoIterator<Item = T>) -> String {
    cells.into_iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

fn describe(ext: &BorderedCartan) -> String {
    ext.name.clone().unwrap_or_else(|| format!("extension of {}", ext.base))
}

fn cmd_roots(json: bool, group: GroupId, cartesian: bool, csv: Option<PathBuf>) -> Result<()> {
    let roots = root_system(group);
    let cart = |r: &RootVector| -> Result<Vec<GoldenRat>> { Ok(to_cartesian(r)?) };
    if cartesian && !matches!(group, GroupId::H3 | GroupId::H4) {
        bail!("Cartesian coordinates are available for H3 and H4 only");
    }
    if let Some(path) = csv {
        let rank = group.rank();
        let mut header: Vec<String> = (1..=rank).map(|i| format!("c{i}")).collect();
        if cartesian {
            header.extend((1..=rank).map(|i| format!("x{i}")));
        }
        let mut out = csv_row(header) + "\n";
        for r in roots.iter() {
            let mut cells: Vec<String> = r.coords.iter().map(ToString::to_string).collect();
            if cartesian {
                cells.extend(cart(r)?.iter().map(ToString::to_string));
            }
            out += &(csv_row(cells) + "\n");
        }
        write_file(&path, &out)?;
    }
    if json {
        if cartesian {
            let rows = roots
                .iter()
                .map(|r| Ok(json!({ "coords": r.coords, "cartesian": cart(r)? })))
                .collect::<Result<Vec<_>>>()?;
            return emit(&json!({ "group": group, "count": roots.len(), "roots": rows }));
        }
        return emit(&json!({ "group": group, "count": roots.len(), "roots": roots.as_slice() }));
    }
    out!("{group}: {} roots", roots.len());
    for r in roots.iter() {
        if cartesian {
            out!("{r}  cartesian ({})", cart(r)?.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "));
        } else {
            out!("{r}");
        }
    }
    Ok(())
}

fn cmd_group(json: bool, group: GroupId) -> Result<()> {
    let cartan = cartan_matrix(group);
    let diagram = cartan_to_diagram(&cartan)?;
    let (order, rotations, note) = match coxeter_group(group) {
        Ok(w) => (Some(w.order()), Some(w.rotations().count()), None),
        Err(e) => (None, None, Some(e.to_string())),
    };
    if json {
        return emit(&json!({
            "group": group,
            "rank": group.rank(),
            "roots": root_system(group).len(),
            "order": order,
            "rotations": rotations,
            "note": note,
            "cartan": cartan,
            "coxeter_matrix": diagram.coxeter_matrix(),
        }));
    }
    out!("{group}: rank {}, {} roots", group.rank(), root_system(group).len());
    match (order, rotations) {
        (Some(o), Some(r)) => out!("order {o}, rotation subgroup {r}"),
        _ => out!("order not enumerated: {}", note.unwrap_or_default()),
    }
    out!("Cartan matrix:\n{}", cartan.entries);
    out!("Coxeter matrix:");
    for row in diagram.coxeter_matrix() {
        out!("  {}", row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
    }
    Ok(())
}

fn cmd_project(json: bool, source: GroupId, subspace: Subspace, input: &VectorInput) -> Result<()> {
    let map = ProjectionMap::for_source(source, subspace)?;
    let v = parse_vector(source, input)?;
    let image = project(&map, &v)?;
    if json {
        return emit(&json!({ "map": map, "input": v, "image": image }));
    }
    out!("{} -> {} ({subspace}): {v} -> {image}", map.source, map.target);
    Ok(())
}

fn cmd_lift(json: bool, target: GroupId, subspace: Subspace, bordered: bool, input: &VectorInput) -> Result<()> {
    let map = ProjectionMap::for_target(target, subspace)?;
    let v = parse_vector(target, input)?;
    if bordered {
        let m = lift_bordered(&map, &v)?;
        let check = is_kac_moody_extension(&m);
        if json {
            return emit(&json!({ "map": map, "affine_root": v, "matrix": m, "kac_moody": check }));
        }
        out!("lifted bordered matrix of {target} with alpha0 = {v}:\n{}", m.entries);
        out!("det = {}", m.det());
        return Ok(());
    }
    let lifted = lift(&map, &v)?;
    if json {
        return emit(&json!({ "map": map, "input": v, "lift": lifted }));
    }
    out!("{} -> {} ({subspace}): {v} -> {lifted}", map.target, map.source);
    Ok(())
}

fn cmd_extend(json: bool, base: GroupId, bound: i64) -> Result<()> {
    if bound < 1 {
        bail!("--bound must be at least 1");
    }
    let hits = search_single_extensions(base, bound)?;
    let mut records = Vec::new();
    for h in &hits {
        let root = decompose_affine_root(&h.extension)?;
        records.push(json!({
            "name": h.extension.name,
            "orbit_size": h.orbit_size,
            "matrix": h.extension.full(),
            "minus_alpha0": root,
        }));
    }
    if json {
        return emit(&json!({ "base": base, "bound": bound, "extensions": records }));
    }
    out!("{base}: {} extensions with entries down to -{bound}", hits.len());
    for h in &hits {
        out!("\n{} ({} labelled borders)", describe(&h.extension), h.orbit_size);
        out!("{}", h.extension.full().entries);
        out!("-alpha0 = {}", decompose_affine_root(&h.extension)?);
    }
    Ok(())
}

fn cmd_induce(json: bool, name: &str, subspace: Subspace) -> Result<()> {
    let ext = extension_by_name(name)?;
    if !ext.base.is_crystallographic() {
        bail!("{name} is already an H extension; induce from A4=, D6<, D6=, D6> or E8=");
    }
    let map = ProjectionMap::for_source(ext.base, subspace)?;
    let (induced, record) = induce(&ext, &map)?;
    let check = is_kac_moody_extension(&induced.full());
    if json {
        return emit(
            &json!({ "source": name, "map": map, "induced": induced.full(), "record": record, "kac_moody": check }),
        );
    }
    out!("{name} -> {} ({subspace}):\n{}", describe(&induced), induced.full().entries);
    out!("det = {}, Kac-Moody conditions passed: {}", induced.det(), check.passed);
    out!(
        "{} axis, alpha0 = {} * axis vector, |alpha0|^2/|a|^2 = {}",
        record.axis,
        record.translation,
        record.length_sq_ratio
    );
    Ok(())
}

fn cmd_classify(json: bool, name: &str, rescale: Option<i64>) -> Result<()> {
    let ext = extension_by_name(name)?;
    if ext.base.is_crystallographic() {
        bail!("{name} is a crystallographic extension; classify an H extension such as H3<");
    }
    let mut rec = classify(&ext)?;
    if let Some(s) = rescale {
        rec = fibonacci_rescale(&rec, s);
    }
    if json {
        return emit(&rec);
    }
    let frame = if rec.conjugate { " (family data of the Galois conjugate)" } else { "" };
    out!("{}{frame}", rec.name.clone().unwrap_or_else(|| name.to_string()));
    out!("  axis        {}", rec.axis);
    out!("  xy          {}", rec.xy());
    out!("  reference   {}", rec.reference.quadruplet());
    out!("  quadruplet  {}", rec.quadruplet);
    out!("  k           {}", rec.k);
    out!("  (gamma, delta) = ({}, {})", rec.multipliers.0, rec.multipliers.1);
    let fmt = |v: &[GoldenRat]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    out!("  v = ({})", fmt(&rec.v));
    out!("  w = ({})", fmt(&rec.w));
    out!("  alpha0 = {} * axis vector", rec.translation);
    Ok(())
}

fn cmd_symmetrise(json: bool, name: &str, ltp: bool) -> Result<()> {
    let s = if ltp { symmetrised_ltp(name)? } else { symmetrise(&extension_by_name(name)?.full().entries)? };
    if json {
        return emit(&json!({
            "extension": name,
            "lifted_transpose": ltp,
            "symmetrisation": s,
            "non_integral_entries": s.non_integral_entries(),
        }));
    }
    let what = if ltp { format!("lifted transpose of {name}") } else { name.to_string() };
    if !s.exists {
        out!("{what} is not symmetrisable");
        return Ok(());
    }
    out!("{what} = D S");
    out!("D = diag({})", s.d.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "));
    out!("D rational: {}", s.rational);
    out!("S =\n{}", s.s);
    let off = s.non_integral_entries();
    if off.is_empty() {
        out!("S lies in Z[tau]");
    } else {
        out!("S entries outside Z[tau]: {off:?}");
    }
    Ok(())
}

fn cmd_double(json: bool, base: GroupId, diagrams: bool) -> Result<()> {
    let exts = enumerate_double(base)?;
    let mut trivial = 0;
    for e in &exts {
        if kernel_trivial(e)? {
            trivial += 1;
        }
    }
    let classes = diagrams.then(|| distinct_diagrams(&exts));
    if json {
        return emit(&json!({
            "base": base,
            "count": exts.len(),
            "trivial_kernel": trivial,
            "matrices": if diagrams { None } else { Some(&exts) },
            "diagrams": classes,
        }));
    }
    out!("{base}: {} labelled double extensions, {trivial} with trivial projection kernel", exts.len());
    if let Some(classes) = classes {
        out!("{} diagram classes", classes.len());
        for (i, c) in classes.iter().enumerate() {
            let tag = if c.has_disconnected_node { ", disconnected node" } else { "" };
            out!("\nclass {} ({} matrices{tag}):\n{}", i + 1, c.members, c.representative.full.entries);
        }
    }
    Ok(())
}

fn fragment_csv(f: &Fragment) -> Result<String> {
    let group = f.spec.group;
    let cartesian = matches!(group, GroupId::H3 | GroupId::H4) && !f.spec.conjugate;
    let rank = group.rank();
    let mut header = vec!["shell".to_string()];
    header.extend((1..=rank).map(|i| format!("c{i}")));
    if cartesian {
        header.extend((1..=rank).map(|i| format!("x{i}")));
    }
    let mut out = csv_row(header) + "\n";
    for (m, shell) in f.shells.iter().enumerate() {
        for p in shell {
            let mut cells = vec![m.to_string()];
            cells.extend(p.coords.iter().map(ToString::to_string));
            if cartesian {
                cells.extend(to_cartesian(p)?.iter().map(ToString::to_string));
            }
            out += &(csv_row(cells) + "\n");
        }
    }
    Ok(out)
}

fn cmd_fragment(json: bool, args: FragmentArgs) -> Result<()> {
    let spec = match &args.ext {
        Some(name) => {
            let ext = extension_by_name(name)?;
            if ext.base.is_crystallographic() {
                bail!("{name} is a crystallographic extension; use an H extension such as H2=");
            }
            TranslationSpec::from_record(&classify(&ext)?)
        }
        None => TranslationSpec::new(args.group.context("--group is required")?, args.axis, args.length.clone()),
    };
    let f = generate_fragment_with(&spec, args.n, args.orbit.into())?;
    if let Some(path) = &args.out {
        write_file(path, &(serde_json::to_string_pretty(&f)? + "\n"))?;
    }
    if let Some(path) = &args.csv {
        write_file(path, &fragment_csv(&f)?)?;
    }
    if json {
        return emit(
            &json!({ "spec": f.spec, "orbit_group": f.orbit_group, "n": f.n, "cardinalities": f.cardinalities }),
        );
    }
    let frame = if spec.conjugate { ", conjugate frame" } else { "" };
    out!("{} fragment, {} axis, alpha0 = {} * axis vector{frame}", spec.group, spec.axis, spec.length);
    for (m, n) in f.cardinalities.shells.iter().enumerate() {
        out!("  |P({m})| = {n}");
    }
    out!("  |Q({})| = {}", f.n, f.cardinalities.union);
    Ok(())
}

fn cmd_render(json: bool, input: &Path, out: &Path, opts: render::RenderOptions) -> Result<()> {
    let text = fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let fragment: Fragment =
        serde_json::from_str(&text).with_context(|| format!("{} is not a fragment file", input.display()))?;
    let svg = render::render_svg(&fragment, &opts)?;
    write_file(out, &svg)?;
    let counts: Vec<usize> = fragment.shells.iter().map(Vec::len).collect();
    if json {
        return emit(&json!({ "output": out, "shell_points": counts, "points": counts.iter().sum::<usize>() }));
    }
    out!("wrote {} ({} points)", out.display(), counts.iter().sum::<usize>());
    Ok(())
}

/// Returns whether every check passed.
fn cmd_report_all(json: bool, golden: Option<&Path>) -> Result<bool> {
    let manifest = match golden {
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
        None => report::EMBEDDED.to_string(),
    };
    let actual = report::compute()?;
    let records = report::diff(&manifest, &actual)?;
    let pass = records.iter().all(|r| r.pass);
    if json {
        emit(&json!({ "pass": pass, "criteria": records }))?;
        return Ok(pass);
    }
    let total: usize = records.iter().map(|r| r.checks.len()).sum();
    let failed: usize = records.iter().map(|r| r.checks.iter().filter(|c| !c.pass).count()).sum();
    for r in &records {
        let status = if r.pass { "PASS" } else { "FAIL" };
        out!("criterion {:>2}: {status} ({} checks)", r.criterion, r.checks.len());
        for c in r.checks.iter().filter(|c| !c.pass) {
            out!("  FAIL {}", c.id);
            out!("    expected {}", c.expected);
            out!("    actual   {}", c.actual);
            out!("    source   \"{}\"", c.citation);
        }
    }
    out!("{} of {total} checks passed", total - failed);
    Ok(pass)
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain()
        .any(|c| c.downcast_ref::<std::io::Error>().map_or(false, |io| io.kind() == std::io::ErrorKind::BrokenPipe))
}

fn is_usage_error(e: &anyhow::Error) -> bool {
    use quasifold_core::Error as E;
    e.chain().any(|c| {
        c.is::<Usage>()
            || matches!(
                c.downcast_ref::<E>(),
                Some(E::UnknownExtension { .. } | E::UnknownGroup(_) | E::Parse { .. } | E::UnsupportedAxis { .. })
            )
    })
}

fn run(cli: Cli) -> Result<bool> {
    let json = cli.json;
    match cli.command {
        Command::Roots { group, cartesian, csv } => cmd_roots(json, group, cartesian, csv)?,
        Command::Group { group } => cmd_group(json, group)?,
        Command::Project { source, subspace, input } => cmd_project(json, source, subspace, &input)?,
        Command::Lift { target, subspace, bordered, input } => cmd_lift(json, target, subspace, bordered, &input)?,
        Command::Extend { base, bound } => cmd_extend(json, base, bound)?,
        Command::Induce { ext, subspace } => cmd_induce(json, &ext, subspace)?,
        Command::Classify { ext, rescale } => cmd_classify(json, &ext, rescale)?,
        Command::Symmetrise { ext, ltp } => cmd_symmetrise(json, &ext, ltp)?,
        Command::Double { base, diagrams } => cmd_double(json, base, diagrams)?,
        Command::Fragment(args) => cmd_fragment(json, args)?,
        Command::Render { input, out, plane, no_timestamp, size } => {
            let timestamp =
                (!no_timestamp).then(|| SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()));
            cmd_render(json, &input, &out, render::RenderOptions { plane, timestamp, size })?
        }
        Command::ReportAll { golden } => return cmd_report_all(json, golden.as_deref()),
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot set up {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_usage_error(&e) { 2 } else { 1 })
        }
    }
}
