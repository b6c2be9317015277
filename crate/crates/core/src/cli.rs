use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use thermowave::baseline::svd_hos;
use thermowave::datacube::{encode_cube, encode_excitation, flip_y, read_cube, read_excitation, DataCube, FrameWindow};
use thermowave::detector::{detect, fault_map, useful_cube, DetectorConfig, TemporalCombine};
use thermowave::dwt::{catalog_lookup, decompose_with, max_levels, BoundaryMode, SELECTION_CATALOG};
use thermowave::metrics::{snr_csv, snr_improvement_with, RawReference, FAULT_WINDOW_HALF_EXTENT};
use thermowave::phantom::{add_reflective_patch, generate_phantom, GroundTruth, PhantomConfig};
use thermowave::postproc::{excitation_correlation, suppress_in_grid, DEFAULT_CORRELATION_THRESHOLD};
use thermowave::render::{encode_pgm, render_cube, sidecar_path, Scaling};
use thermowave::selection::{basis_scores_csv, rmi_csv, select_basis, select_level, DEFAULT_TAU, RMI_RADIUS};
use thermowave::{Error, Grid, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "thermowave", version, about = "Wavelet subspace defect detection for thermal image sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate the synthetic test-panel cube with its excitation and ground truth
    Phantom(PhantomArgs),
    /// Decompose one frame and dump every sub-band as a single-frame cube
    Dwt(DwtArgs),
    /// Band-pass reconstruction averaged over time
    Detect(DetectArgs),
    /// Sweep the wavelet catalog against the ground truth
    SelectBasis(SelectBasisArgs),
    /// Choose the decomposition depth from the mutual-information profile
    SelectLevel(SelectLevelArgs),
    /// Temporal SVD filtering with skewness and kurtosis maps
    BaselineSvd(BaselineArgs),
    /// Per-fault SNR of raw data and detection map
    Evaluate(EvaluateArgs),
    /// Remove detections that follow the excitation sequence
    Correct(CorrectArgs),
    /// Render a single-frame cube as a 16-bit PGM
    Render(RenderArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Symmetric,
    Periodic,
}

impl From<Mode> for BoundaryMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Symmetric => BoundaryMode::Symmetric,
            Mode::Periodic => BoundaryMode::Periodic,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Combine {
    Mean,
    Median,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RawRef {
    Mean,
    Best,
}

fn parse_pair(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected LO:HI, got '{s}'"))?;
    let lo = a.trim().parse().map_err(|_| format!("'{a}' is not a level"))?;
    let hi = b.trim().parse().map_err(|_| format!("'{b}' is not a level"))?;
    Ok((lo, hi))
}

fn parse_window(s: &str) -> std::result::Result<FrameWindow, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [r, c, h] = parts[..] else {
        return Err(format!("expected ROW:COL:HALF, got '{s}'"));
    };
    let num = |v: &str| v.trim().parse::<usize>().map_err(|_| format!("'{v}' is not a pixel count"));
    Ok(FrameWindow::new(num(r)?, num(c)?, num(h)?))
}

#[derive(Args, Debug)]
struct PhantomArgs {
    /// Pulse length in seconds (0.5, 1, 2, 5 or 10)
    #[arg(long, default_value_t = 5.0)]
    te: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Standard deviation of additive sensor noise
    #[arg(long, default_value_t = 0.12)]
    noise: f64,
    /// Override the frame count implied by --te
    #[arg(long)]
    frames: Option<usize>,
    /// Mirror frames left to right (and the ground truth with them)
    #[arg(long)]
    flip: bool,
    /// Add a reflective patch at ROW:COL:HALF that follows the excitation
    #[arg(long, value_parser = parse_window)]
    foil: Option<FrameWindow>,
    #[arg(long, default_value_t = 2.0)]
    foil_gain: f64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    excitation: Option<PathBuf>,
    #[arg(long)]
    truth: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DwtArgs {
    input: PathBuf,
    #[arg(long, default_value = "rbio6.8")]
    basis: String,
    #[arg(long, default_value_t = 6)]
    levels: usize,
    #[arg(long, default_value_t = 0)]
    frame: usize,
    #[arg(long, value_enum, default_value_t = Mode::Symmetric)]
    mode: Mode,
    /// Directory receiving A<l>.tic and L<l>_{LH,HL,HH}.tic
    #[arg(long)]
    dump_tree: PathBuf,
}

#[derive(Args, Debug, Clone)]
struct DetectorFlags {
    #[arg(long, default_value = "rbio6.8")]
    basis: String,
    #[arg(long, default_value_t = 6)]
    levels: usize,
    /// Detail levels kept, LO:HI
    #[arg(long, value_parser = parse_pair, default_value = "3:6")]
    band: (usize, usize),
    /// Border ignored by the fault map (defaults to the synthesis filter length)
    #[arg(long)]
    margin: Option<usize>,
    #[arg(long, default_value_t = 0.95)]
    quantile: f64,
    #[arg(long, value_enum, default_value_t = Combine::Mean)]
    temporal: Combine,
    #[arg(long, value_enum, default_value_t = Mode::Symmetric)]
    mode: Mode,
}

impl DetectorFlags {
    fn config(&self) -> Result<DetectorConfig> {
        let mut cfg = DetectorConfig::new(&self.basis, self.levels, self.band)?;
        if let Some(m) = self.margin {
            cfg.edge_margin = m;
        }
        cfg.threshold_quantile = self.quantile;
        cfg.temporal = match self.temporal {
            Combine::Mean => TemporalCombine::Mean,
            Combine::Median => TemporalCombine::Median,
        };
        cfg.boundary = self.mode.into();
        Ok(cfg)
    }
}

#[derive(Args, Debug)]
struct DetectArgs {
    #[command(flatten)]
    detector: DetectorFlags,
    #[arg(long = "in")]
    input: PathBuf,
    /// Y_det as a single-frame cube
    #[arg(long)]
    out: Option<PathBuf>,
    /// Thresholded fault map as PGM
    #[arg(long)]
    map: Option<PathBuf>,
    /// Per-frame band-pass reconstructions
    #[arg(long)]
    dump_yr: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SelectBasisArgs {
    #[command(flatten)]
    detector: DetectorFlags,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    truth: PathBuf,
    /// Comma-separated basis names (defaults to the full selection catalog)
    #[arg(long, value_delimiter = ',')]
    catalog: Option<Vec<String>>,
    /// CSV: basis,cost,numerator,denominator
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SelectLevelArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value = "rbio6.8")]
    basis: String,
    /// Deepest level examined (defaults to the deepest the frame allows)
    #[arg(long)]
    lmax: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_TAU)]
    tau: f64,
    #[arg(long, default_value_t = RMI_RADIUS)]
    radius: usize,
    /// CSV: level,m_avg,selected
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BaselineArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Useful singular ranks, LO:HI (rank 1 is background)
    #[arg(long, value_parser = parse_pair, default_value = "2:10")]
    ranks: (usize, usize),
    #[arg(long)]
    skew: Option<PathBuf>,
    #[arg(long)]
    kurt: Option<PathBuf>,
    /// Skewness and kurtosis maps as a two-frame cube
    #[arg(long)]
    out: Option<PathBuf>,
    /// CSV: rank,singular_value,subspace
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EvaluateArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    ydet: PathBuf,
    #[arg(long)]
    truth: PathBuf,
    #[arg(long, default_value_t = FAULT_WINDOW_HALF_EXTENT)]
    half_extent: usize,
    #[arg(long, value_enum, default_value_t = RawRef::Mean)]
    raw_ref: RawRef,
    /// CSV: fault_id,snr_raw_db,snr_wd_db,improvement_db
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CorrectArgs {
    #[arg(long)]
    yr: PathBuf,
    #[arg(long)]
    excitation: PathBuf,
    #[arg(long)]
    ydet: PathBuf,
    #[arg(long, default_value_t = DEFAULT_CORRELATION_THRESHOLD)]
    threshold: f64,
    #[arg(long)]
    out: PathBuf,
    /// Correlation map as a single-frame cube
    #[arg(long)]
    corr_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RenderArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

/// Files produced by a command, written only once everything succeeded.
#[derive(Default)]
struct Outputs(Vec<(PathBuf, Vec<u8>)>);

impl Outputs {
    fn add(&mut self, path: impl AsRef<Path>, bytes: impl Into<Vec<u8>>) {
        self.0.push((path.as_ref().to_path_buf(), bytes.into()));
    }

    fn cube(&mut self, path: impl AsRef<Path>, cube: &DataCube) -> Result<()> {
        self.add(path, encode_cube(cube)?);
        Ok(())
    }

    fn pgm(&mut self, path: impl AsRef<Path>, map: &Grid) {
        let (bytes, scaling) = encode_pgm(map);
        self.add(sidecar_path(path.as_ref()), scaling.to_text());
        self.add(path, bytes);
    }

    fn commit(self) -> Result<()> {
        for (path, bytes) in self.0 {
            fs::write(path, bytes)?;
        }
        Ok(())
    }
}

fn map_cube(map: &Grid, te_s: f64, flipped: bool) -> Result<DataCube> {
    let data = map.as_slice().iter().map(|&v| v as f32).collect();
    DataCube::new(map.rows(), map.cols(), te_s, data, flipped)
}

fn single_frame(path: &Path) -> Result<Grid> {
    let cube = read_cube(path)?;
    if cube.nt() != 1 {
        return Err(Error::Config(format!(
            "{} holds {} frames, expected a single-frame map",
            path.display(),
            cube.nt()
        )));
    }
    Ok(cube.frame(0))
}

fn read_truth(path: &Path) -> Result<GroundTruth> {
    GroundTruth::from_json(&fs::read_to_string(path)?)
}

fn phantom(args: PhantomArgs) -> Result<()> {
    let cfg = PhantomConfig {
        te_s: args.te,
        seed: args.seed,
        noise_sigma: args.noise,
        frames: args.frames,
        ..PhantomConfig::default()
    };
    let p = generate_phantom(&cfg)?;
    let mut cube = p.cube;
    if let Some(patch) = &args.foil {
        cube = add_reflective_patch(&cube, &p.excitation, patch, args.foil_gain, 0.1, args.seed)?;
    }
    let mut truth = p.truth;
    if args.flip {
        cube = flip_y(&cube);
        truth = truth.flipped(cube.ny());
    }
    let mut out = Outputs::default();
    out.cube(&args.out, &cube)?;
    if let Some(path) = &args.excitation {
        out.add(path, encode_excitation(&p.excitation));
    }
    if let Some(path) = &args.truth {
        out.add(path, truth.to_json() + "\n");
    }
    out.commit()
}

fn dwt(args: DwtArgs) -> Result<()> {
    let spec = catalog_lookup(&args.basis)?;
    let cube = read_cube(&args.input)?;
    if args.frame >= cube.nt() {
        return Err(Error::Config(format!("frame {} outside 0..{}", args.frame, cube.nt())));
    }
    let tree = decompose_with(&cube.frame(args.frame), &spec, args.levels, args.mode.into())?;
    let mut out = Outputs::default();
    for l in 1..=tree.levels() {
        out.cube(
            args.dump_tree.join(format!("A{l}.tic")),
            &map_cube(tree.approximation(l), cube.te_s(), cube.flipped_y())?,
        )?;
        let bands = tree.sub_bands(l);
        for (name, g) in [("LH", &bands.lh), ("HL", &bands.hl), ("HH", &bands.hh)] {
            out.cube(args.dump_tree.join(format!("L{l}_{name}.tic")), &map_cube(g, cube.te_s(), cube.flipped_y())?)?;
        }
    }
    fs::create_dir_all(&args.dump_tree)?;
    out.commit()
}

fn detect_cmd(args: DetectArgs) -> Result<()> {
    let cfg = args.detector.config()?;
    let cube = read_cube(&args.input)?;
    cfg.validate(cube.frame_shape())?;
    let det = detect(&cube, &cfg)?;
    let mut out = Outputs::default();
    if let Some(path) = &args.out {
        out.cube(path, &map_cube(&det.values, cube.te_s(), cube.flipped_y())?)?;
    }
    if let Some(path) = &args.map {
        out.pgm(path, &fault_map(&det)?);
    }
    if let Some(path) = &args.dump_yr {
        out.cube(path, &useful_cube(&cube, &cfg)?)?;
    }
    out.commit()?;
    let max = det.values.max_abs();
    println!("basis {} levels {} band {}:{} max|Y_det| {max}", cfg.basis, cfg.levels, cfg.band.0, cfg.band.1);
    Ok(())
}

fn select_basis_cmd(args: SelectBasisArgs) -> Result<()> {
    let cfg = args.detector.config()?;
    let names: Vec<String> = match args.catalog {
        Some(list) => list,
        None => SELECTION_CATALOG.iter().map(|s| s.to_string()).collect(),
    };
    for n in &names {
        catalog_lookup(n)?;
    }
    let cube = read_cube(&args.input)?;
    cfg.validate(cube.frame_shape())?;
    let truth = read_truth(&args.truth)?;
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let (best, scores) = select_basis(&cube, &truth, &refs, &cfg)?;
    let mut out = Outputs::default();
    if let Some(path) = &args.report {
        out.add(path, basis_scores_csv(&scores));
    }
    out.commit()?;
    println!("{best}");
    Ok(())
}

fn select_level_cmd(args: SelectLevelArgs) -> Result<()> {
    let spec = catalog_lookup(&args.basis)?;
    if !(args.tau.is_finite() && args.tau > 0.0) {
        return Err(Error::Config(format!("tau must be positive, got {}", args.tau)));
    }
    let cube = read_cube(&args.input)?;
    let deepest = max_levels(cube.frame_shape(), &spec);
    let lmax = args.lmax.unwrap_or(deepest);
    if lmax > deepest {
        return Err(Error::Level(format!(
            "lmax {lmax} exceeds the {deepest} levels a {}x{} frame allows with {}",
            cube.nx(),
            cube.ny(),
            args.basis
        )));
    }
    let profile = select_level(&cube, &args.basis, lmax, args.radius, args.tau)?;
    let mut out = Outputs::default();
    if let Some(path) = &args.report {
        out.add(path, rmi_csv(&profile));
    }
    out.commit()?;
    println!("{}", profile.selected_level);
    Ok(())
}

fn baseline_cmd(args: BaselineArgs) -> Result<()> {
    let (lo, hi) = args.ranks;
    if lo < 2 || hi < lo {
        return Err(Error::Config(format!("useful ranks {lo}:{hi} must satisfy 2 <= LO <= HI")));
    }
    let cube = read_cube(&args.input)?;
    let (split, maps) = svd_hos(&cube, args.ranks)?;
    let mut out = Outputs::default();
    if let Some(path) = &args.skew {
        out.pgm(path, &maps.skewness);
    }
    if let Some(path) = &args.kurt {
        out.pgm(path, &maps.kurtosis);
    }
    if let Some(path) = &args.out {
        let both = DataCube::from_frames(&[maps.skewness.clone(), maps.kurtosis.clone()], cube.te_s())?;
        out.cube(path, &both)?;
    }
    if let Some(path) = &args.report {
        let mut csv = String::from("rank,singular_value,subspace\n");
        for (i, s) in split.singular_values.iter().enumerate() {
            let rank = i + 1;
            let role = if rank == split.background_rank {
                "background"
            } else if split.useful_ranks.contains(&rank) {
                "useful"
            } else {
                "noise"
            };
            csv.push_str(&format!("{rank},{s},{role}\n"));
        }
        out.add(path, csv);
    }
    out.commit()?;
    if !maps.flagged.is_empty() {
        eprintln!("{} pixels had no temporal variance and were set to 0", maps.flagged.len());
    }
    Ok(())
}

fn evaluate_cmd(args: EvaluateArgs) -> Result<()> {
    let cube = read_cube(&args.input)?;
    let ydet = single_frame(&args.ydet)?;
    let truth = read_truth(&args.truth)?;
    let reference = match args.raw_ref {
        RawRef::Mean => RawReference::MeanFrame,
        RawRef::Best => RawReference::BestFrame,
    };
    let rows = snr_improvement_with(&cube, &ydet, &truth, args.half_extent, reference)?;
    let csv = snr_csv(&rows);
    let mut out = Outputs::default();
    if let Some(path) = &args.report {
        out.add(path, csv.clone());
    }
    out.commit()?;
    print!("{csv}");
    Ok(())
}

fn correct_cmd(args: CorrectArgs) -> Result<()> {
    if !(args.threshold > 0.0 && args.threshold < 1.0) {
        return Err(Error::Config(format!("correlation threshold {} outside (0, 1)", args.threshold)));
    }
    let yr = read_cube(&args.yr)?;
    let excitation = read_excitation(&args.excitation, yr.te_s())?;
    let ydet_cube = read_cube(&args.ydet)?;
    if ydet_cube.nt() != 1 {
        return Err(Error::Config(format!("{} is not a single-frame map", args.ydet.display())));
    }
    let corr = excitation_correlation(&yr, &excitation)?;
    let corrected = suppress_in_grid(&ydet_cube.frame(0), &corr, args.threshold)?;
    let mut out = Outputs::default();
    out.cube(&args.out, &map_cube(&corrected, ydet_cube.te_s(), ydet_cube.flipped_y())?)?;
    if let Some(path) = &args.corr_out {
        out.cube(path, &map_cube(&corr, yr.te_s(), yr.flipped_y())?)?;
    }
    out.commit()?;
    let removed = corr.as_slice().iter().filter(|c| c.abs() >= args.threshold).count();
    println!("suppressed {removed} pixels");
    Ok(())
}

fn render_cmd(args: RenderArgs) -> Result<()> {
    let cube = read_cube(&args.input)?;
    let (bytes, scaling): (Vec<u8>, Scaling) = render_cube(&cube)?;
    let mut out = Outputs::default();
    out.add(sidecar_path(&args.out), scaling.to_text());
    out.add(&args.out, bytes);
    out.commit()
}

fn configure_threads() -> std::result::Result<(), String> {
    let Ok(value) = std::env::var("THERMOWAVE_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("THERMOWAVE_THREADS must be a positive integer, got '{value}'"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

/// Parses `argv`, runs the subcommand and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return EXIT_USAGE;
    }
    let result = match cli.command {
        Command::Phantom(a) => phantom(a),
        Command::Dwt(a) => dwt(a),
        Command::Detect(a) => detect_cmd(a),
        Command::SelectBasis(a) => select_basis_cmd(a),
        Command::SelectLevel(a) => select_level_cmd(a),
        Command::BaselineSvd(a) => baseline_cmd(a),
        Command::Evaluate(a) => evaluate_cmd(a),
        Command::Correct(a) => correct_cmd(a),
        Command::Render(a) => render_cmd(a),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_usage() {
                EXIT_USAGE
            } else {
                EXIT_DATA
            }
        }
    }
}
