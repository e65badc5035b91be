//! Command implementations behind the `pyramid` binary. Each command writes
//! to caller-supplied streams and returns a process exit status, so the
//! commands can be driven directly from tests.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use serde::Serialize;

use pyramid_core::optimize::{
    optimize_ims_default, run_oracle, ClampNote, OracleConfig, ORACLE_MAX_DIM,
};
use pyramid_core::{
    make_ensemble, sweep, symmetric_povm, GridSpec, OracleResult, SweepOutput, SweepRecord,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_FINDING: i32 = 2;

pub const CSV_HEADER: &str = "N,gamma,I_srm,I_ims,delta_I,s_opt,lambda_opt,P_srm,P_ims";

pub const FIGURE1_DIMS: [usize; 11] = [3, 4, 5, 6, 7, 8, 9, 10, 20, 100, 500];
pub const FIGURE1_GAMMA_MIN: f64 = -0.3;
pub const FIGURE1_GAMMA_MAX: f64 = 0.99;
pub const FIGURE1_GAMMA_STEPS: usize = 200;

/// Oracle agreement required by `verify`.
pub const VERIFY_INFO_TOL: f64 = 1e-3;
/// Oracle excess over the family reported as a finding.
pub const VERIFY_EXCESS_TOL: f64 = 1e-4;
pub const VERIFY_SUCCESS_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Figure1,
    Sweep,
    Info,
    Verify,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub dims: Vec<usize>,
    pub gamma_min: f64,
    pub gamma_max: f64,
    pub gamma_steps: usize,
    pub seed: u64,
    pub restarts: usize,
    pub output_path: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn figure1(output_path: impl Into<PathBuf>) -> Self {
        Self {
            command: Command::Figure1,
            dims: FIGURE1_DIMS.to_vec(),
            gamma_min: FIGURE1_GAMMA_MIN,
            gamma_max: FIGURE1_GAMMA_MAX,
            gamma_steps: FIGURE1_GAMMA_STEPS,
            seed: 0,
            restarts: 0,
            output_path: Some(output_path.into()),
            format: Format::Csv,
        }
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.dims.is_empty() {
            bail!("dims: at least one dimension is required");
        }
        if let Some(d) = self.dims.iter().find(|&&d| d < 2) {
            bail!("dims: every dimension must be at least 2, got {d}");
        }
        if !self.gamma_min.is_finite() || !self.gamma_max.is_finite() {
            bail!("gamma_min/gamma_max: bounds must be finite");
        }
        if self.gamma_min > self.gamma_max {
            bail!(
                "gamma_min: {} is greater than gamma_max {}",
                self.gamma_min,
                self.gamma_max
            );
        }
        if self.gamma_min == self.gamma_max && self.gamma_steps != 1 {
            bail!("gamma_steps: must be 1 when gamma_min equals gamma_max");
        }
        if self.gamma_steps == 0 {
            bail!("gamma_steps: must be at least 1");
        }
        Ok(())
    }

    fn grid(&self) -> GridSpec {
        GridSpec {
            gamma_min: self.gamma_min,
            gamma_max: self.gamma_max,
            steps: self.gamma_steps,
        }
    }
}

/// Formats `x` with 12 significant digits in the style of C's `%.12g`.
pub fn fmt_sig(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..DIGITS).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn write_csv<W: Write>(mut w: W, records: &[SweepRecord]) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in records {
        let fields = [
            r.gamma,
            r.i_srm,
            r.i_ims,
            r.delta_i,
            r.s_opt,
            r.lambda_opt,
            r.p_srm,
            r.p_ims,
        ];
        write!(w, "{}", r.dim)?;
        for v in fields {
            write!(w, ",{}", fmt_sig(v))?;
        }
        writeln!(w)?;
    }
    w.flush()
}

#[derive(Debug, Serialize)]
struct SweepMetadata<'a> {
    command: Command,
    dims: &'a [usize],
    gamma_min: f64,
    gamma_max: f64,
    gamma_steps: usize,
    gamma_spacing: &'static str,
    clamp_margin: f64,
    clamped: &'a [ClampNote],
}

#[derive(Debug, Serialize)]
struct SweepJson<'a> {
    metadata: SweepMetadata<'a>,
    records: &'a [SweepRecord],
}

fn metadata<'a>(cfg: &'a RunConfig, out: &'a SweepOutput) -> SweepMetadata<'a> {
    SweepMetadata {
        command: cfg.command,
        dims: &cfg.dims,
        gamma_min: cfg.gamma_min,
        gamma_max: cfg.gamma_max,
        gamma_steps: cfg.gamma_steps,
        gamma_spacing: "uniform",
        clamp_margin: pyramid_core::optimize::GAMMA_CLAMP_MARGIN,
        clamped: &out.clamped,
    }
}

/// Path of the metadata file written next to a CSV output.
pub fn metadata_path(csv: &Path) -> PathBuf {
    let mut name = csv.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

fn create(path: &Path) -> anyhow::Result<BufWriter<File>> {
    let f = File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(BufWriter::new(f))
}

fn run_sweep(cfg: &RunConfig, stdout: &mut dyn Write) -> anyhow::Result<()> {
    cfg.validate()?;
    let out = sweep(&cfg.dims, &cfg.grid())?;
    let meta = metadata(cfg, &out);
    match (cfg.format, &cfg.output_path) {
        (Format::Csv, Some(path)) => {
            write_csv(create(path)?, &out.records)
                .with_context(|| format!("cannot write {}", path.display()))?;
            let meta_path = metadata_path(path);
            let mut w = create(&meta_path)?;
            serde_json::to_writer_pretty(&mut w, &meta)?;
            writeln!(w)?;
            w.flush()?;
        }
        (Format::Csv, None) => write_csv(&mut *stdout, &out.records)?,
        (Format::Json, target) => {
            let doc = SweepJson {
                metadata: meta,
                records: &out.records,
            };
            match target {
                Some(path) => {
                    let mut w = create(path)?;
                    serde_json::to_writer_pretty(&mut w, &doc)?;
                    writeln!(w)?;
                    w.flush()?;
                }
                None => {
                    serde_json::to_writer_pretty(&mut *stdout, &doc)?;
                    writeln!(stdout)?;
                }
            }
        }
    }
    Ok(())
}

fn report(result: anyhow::Result<i32>, stderr: &mut dyn Write) -> i32 {
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            EXIT_ERROR
        }
    }
}

/// Runs the preset sweep (`N = 3..10, 20, 100, 500`, `gamma` in
/// `[-0.3, 0.99]` with 200 points) and writes it as CSV.
pub fn cmd_figure1(output_path: &Path, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cfg = RunConfig::figure1(output_path);
    report(run_sweep(&cfg, stdout).map(|_| EXIT_OK), stderr)
}

pub fn cmd_sweep(cfg: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    report(run_sweep(cfg, stdout).map(|_| EXIT_OK), stderr)
}

/// Everything `info` reports for one `(N, gamma)` point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointInfo {
    pub dim: usize,
    pub gamma: f64,
    pub c: f64,
    pub d: f64,
    pub holevo_chi: f64,
    pub i_srm: f64,
    pub i_ims: f64,
    pub delta_i: f64,
    pub s_opt: f64,
    pub lambda_opt: f64,
    pub edge_cosine: f64,
    pub p_srm: f64,
    pub p_ims: f64,
    pub p_ims_adjusted: f64,
}

pub fn point_info(dim: usize, gamma: f64) -> pyramid_core::Result<PointInfo> {
    let ens = make_ensemble(dim, gamma)?;
    let ims = optimize_ims_default(&ens);
    let ch = ims.channel(&ens);
    let povm = symmetric_povm(dim, ims.s_opt)?;
    Ok(PointInfo {
        dim,
        gamma,
        c: ens.comp_edge(),
        d: ens.comp_flat(),
        holevo_chi: ens.holevo_chi(),
        i_srm: ims.i_srm,
        i_ims: ims.i_ims,
        delta_i: ims.delta_i,
        s_opt: ims.s_opt,
        lambda_opt: ims.lambda_opt,
        edge_cosine: povm.edge_cosine(),
        p_srm: (ens.comp_edge() + ens.comp_flat()).powi(2),
        p_ims: ch.success_probability(),
        p_ims_adjusted: ch.success_probability_adjusted(),
    })
}

pub fn cmd_info(dim: usize, gamma: f64, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let mut run = || -> anyhow::Result<i32> {
        let info = point_info(dim, gamma)?;
        serde_json::to_writer_pretty(&mut *stdout, &info)?;
        writeln!(stdout)?;
        Ok(EXIT_OK)
    };
    report(run(), stderr)
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub dim: usize,
    pub gamma: f64,
    pub restarts: usize,
    pub seed: u64,
    /// Outcome count for the information oracle; `N (N + 1) / 2` when unset.
    pub outcomes: Option<usize>,
    pub complex_mode: bool,
    pub force: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verification {
    pub info: PointInfo,
    pub oracle: OracleResult,
    pub p_oracle: f64,
    pub info_gap: f64,
    pub finding: bool,
}

pub fn verify_point(opts: &VerifyOptions) -> anyhow::Result<Verification> {
    let info = point_info(opts.dim, opts.gamma)?;
    let ens = make_ensemble(opts.dim, opts.gamma)?;
    let mut cfg = OracleConfig::information(opts.dim, opts.restarts, opts.seed);
    cfg.complex_mode = opts.complex_mode;
    if let Some(m) = opts.outcomes {
        cfg.n_outcomes = m;
    }
    let oracle = run_oracle(&ens, &cfg)?;
    let p_oracle = run_oracle(
        &ens,
        &OracleConfig::success(opts.dim, opts.restarts, opts.seed),
    )?
    .i_best;
    let info_gap = oracle.i_best - info.i_ims;
    let finding = info_gap.abs() > VERIFY_INFO_TOL
        || info_gap > VERIFY_EXCESS_TOL
        || p_oracle > info.p_srm + VERIFY_SUCCESS_TOL;
    Ok(Verification {
        info,
        oracle,
        p_oracle,
        info_gap,
        finding,
    })
}

fn write_table(w: &mut dyn Write, v: &Verification) -> io::Result<()> {
    let i = &v.info;
    let o = &v.oracle;
    writeln!(w, "N = {}  gamma = {}", i.dim, fmt_sig(i.gamma))?;
    writeln!(
        w,
        "oracle: {} outcomes, {} restarts, seed {}, {} converged",
        o.n_outcomes, o.restarts, o.seed, o.converged_runs
    )?;
    writeln!(w, "{:<24}{:>20}", "quantity", "value")?;
    let rows = [
        ("holevo_chi", i.holevo_chi),
        ("I_srm", i.i_srm),
        ("I_ims", i.i_ims),
        ("I_oracle", o.i_best),
        ("I_oracle - I_ims", v.info_gap),
        ("s_opt", i.s_opt),
        ("lambda_opt", i.lambda_opt),
        ("P_srm", i.p_srm),
        ("P_ims", i.p_ims),
        ("P_oracle", v.p_oracle),
    ];
    for (name, value) in rows {
        writeln!(w, "{name:<24}{:>20}", fmt_sig(value))?;
    }
    writeln!(
        w,
        "result: {}",
        if v.finding {
            "FINDING (oracle disagrees with the symmetric family or beats the SRM guess rate)"
        } else {
            "agree"
        }
    )
}

pub fn cmd_verify(opts: &VerifyOptions, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let mut run = || -> anyhow::Result<i32> {
        if opts.dim > ORACLE_MAX_DIM && !opts.force {
            bail!(
                "refusing to run the oracle for N = {} (limit {ORACLE_MAX_DIM}); pass --force to override",
                opts.dim
            );
        }
        let v = verify_point(opts)?;
        write_table(stdout, &v)?;
        Ok(if v.finding { EXIT_FINDING } else { EXIT_OK })
    };
    report(run(), stderr)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(-0.0), "0");
        assert_eq!(fmt_sig(1.0), "1");
        assert_eq!(fmt_sig(0.5), "0.5");
        assert_eq!(fmt_sig(2.0 / 3.0), "0.666666666667");
        assert_eq!(fmt_sig(-1.0 / 3.0), "-0.333333333333");
        assert_eq!(fmt_sig(123.456), "123.456");
        assert_eq!(fmt_sig(1.5e-7), "1.5e-07");
        assert_eq!(fmt_sig(1.0 / 3.0 * 1e-5), "3.33333333333e-06");
        assert_eq!(fmt_sig(0.0001234), "0.0001234");
        assert_eq!(fmt_sig(1e15), "1e+15");
        assert_eq!(fmt_sig(0.99999999999999), "1");
    }

    #[test]
    fn config_validation_names_field() {
        let mut cfg = RunConfig::figure1("x.csv");
        cfg.command = Command::Sweep;
        assert!(cfg.validate().is_ok());
        cfg.gamma_min = 0.9;
        cfg.gamma_max = 0.1;
        assert!(cfg
            .validate()
            .unwrap_err()
            .to_string()
            .starts_with("gamma_min"));
        cfg.gamma_max = 0.95;
        cfg.gamma_steps = 0;
        assert!(cfg
            .validate()
            .unwrap_err()
            .to_string()
            .starts_with("gamma_steps"));
        cfg.gamma_steps = 3;
        cfg.dims.clear();
        assert!(cfg.validate().unwrap_err().to_string().starts_with("dims"));
    }

    #[test]
    fn metadata_sits_next_to_csv() {
        assert_eq!(
            metadata_path(Path::new("/tmp/fig.csv")),
            PathBuf::from("/tmp/fig.csv.meta.json")
        );
    }
}
