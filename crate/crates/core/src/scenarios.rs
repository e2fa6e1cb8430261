//! Reproducible scenario runner behind the `hqz` binary.
//!
//! Every scenario runs with zero configuration, writes one table, and judges
//! the result against fixed thresholds.

use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::ball::{
    ball_green_identity_n3, green_calibration_n3, phi_of_m, ratio_limit_scan, AffineBallMap, RatioRow, X_of, Y_of,
};
use crate::error::{Error, Result};
use crate::fd::{fd_audit, FdAudit, FD_STEP};
use crate::functionals::calderon_ratio_estimate;
use crate::laplacian::{disk_green_identity, larmi_ratio_check, GreenResidual};
use crate::planar::{big_k, random_qr_map, random_series, PlanarHarmonicMap, PolarGrid};
use crate::quadrature::QuadratureSpec;
use crate::table::{fmt_f64, write_table, Format, Record};
use crate::theorems::{
    fuzz_search_from, verify_T1, verify_T2_strip, verify_T2_with_k, verify_T3_affine, TheoremReport,
    FUZZ_POSITIVITY_MARGIN,
};

/// Environment variable overriding the first corpus seed.
pub const SEED_ENV: &str = "HQZ_SEED";

/// Dilatation levels of the default corpus.
pub const CORPUS_K: [f64; 4] = [0.0, 0.1, 0.3, 0.5];

/// Shift parameters of the ratio-limit scan, largest first.
pub const RATIO_A: [f64; 4] = [0.2, 0.1, 0.05, 0.01];

/// `m` values of the three-dimensional sharpness family.
pub const SHARPNESS_M: [f64; 6] = [2.0, 5.0, 10.0, 20.0, 50.0, 100.0];

/// Degree of the random series used for the square-function constants.
pub const CALDERON_DEGREE: usize = 16;

/// Margin floor for the positive-real-part corpus.
pub const T2_MARGIN_FLOOR: f64 = -1e-9;

/// Grid on which closed-form Laplacians are compared with finite differences.
pub const AUDIT_GRID: PolarGrid = PolarGrid {
    radial: 8,
    angular: 32,
    r_max: 1.0,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scenario {
    Sharpness3d,
    RatioLimit,
    Strip,
    VerifyT1,
    VerifyT2,
    VerifyT3,
    Fuzz,
    LaplacianAudit,
    GreenAudit,
    CalderonEstimate,
}

impl Scenario {
    pub const ALL: [Scenario; 10] = [
        Scenario::Sharpness3d,
        Scenario::RatioLimit,
        Scenario::Strip,
        Scenario::VerifyT1,
        Scenario::VerifyT2,
        Scenario::VerifyT3,
        Scenario::Fuzz,
        Scenario::LaplacianAudit,
        Scenario::GreenAudit,
        Scenario::CalderonEstimate,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Scenario::Sharpness3d => "reproduce-sharpness-3d",
            Scenario::RatioLimit => "reproduce-ratio-limit",
            Scenario::Strip => "reproduce-strip",
            Scenario::VerifyT1 => "verify-t1",
            Scenario::VerifyT2 => "verify-t2",
            Scenario::VerifyT3 => "verify-t3",
            Scenario::Fuzz => "fuzz",
            Scenario::LaplacianAudit => "laplacian-audit",
            Scenario::GreenAudit => "green-audit",
            Scenario::CalderonEstimate => "calderon-estimate",
        }
    }

    /// Corpus size used when `seeds` is not configured.
    pub fn default_seeds(&self) -> u64 {
        match self {
            Scenario::VerifyT1 | Scenario::CalderonEstimate => 100,
            _ => 200,
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scenario::ALL.into_iter().find(|sc| sc.as_str() == s).ok_or_else(|| {
            let names: Vec<&str> = Scenario::ALL.iter().map(Scenario::as_str).collect();
            Error::ConfigError(format!("unknown scenario {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

/// Everything a scenario run depends on.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub quadrature: QuadratureSpec,
    pub seeds: Option<u64>,
    pub seed: u64,
    pub n: Option<usize>,
    pub k: Option<f64>,
    pub degree: usize,
    pub output_path: Option<PathBuf>,
    pub format: Format,
}

/// Keys accepted by [`RunConfig::set`] (dashes are read as underscores).
pub const CONFIG_KEYS: [&str; 11] = [
    "circle_nodes",
    "radial_nodes",
    "refinement_limit",
    "abs_tol",
    "seeds",
    "seed",
    "n",
    "k",
    "degree",
    "output_path",
    "format",
];

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::ConfigError(format!("invalid value {value:?} for {key}")))
}

impl RunConfig {
    pub fn new(scenario: Scenario) -> Self {
        Self {
            scenario,
            quadrature: QuadratureSpec::default(),
            seeds: None,
            seed: 0,
            n: None,
            k: None,
            degree: 8,
            output_path: None,
            format: Format::Csv,
        }
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim().replace('-', "_");
        let q = &mut self.quadrature;
        match key.as_str() {
            "circle_nodes" => q.circle_nodes = parse(&key, value)?,
            "radial_nodes" => q.radial_nodes = parse(&key, value)?,
            "refinement_limit" => q.refinement_limit = parse(&key, value)?,
            "abs_tol" => q.abs_tol = parse(&key, value)?,
            "seeds" => self.seeds = Some(parse(&key, value)?),
            "seed" => self.seed = parse(&key, value)?,
            "n" => self.n = Some(parse(&key, value)?),
            "k" => self.k = Some(parse(&key, value)?),
            "degree" => self.degree = parse(&key, value)?,
            "output_path" | "out" => self.output_path = Some(PathBuf::from(value.trim())),
            "format" => self.format = value.trim().parse()?,
            other => {
                return Err(Error::ConfigError(format!(
                    "unknown key {other:?}; expected one of {}",
                    CONFIG_KEYS.join(", ")
                )))
            }
        }
        Ok(())
    }

    /// Apply `key = value` lines; blank lines and `#` comments are skipped.
    pub fn apply_config_text(&mut self, text: &str) -> Result<()> {
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::ConfigError(format!("line {}: expected key=value, got {line:?}", lineno + 1)))?;
            self.set(key, value)?;
        }
        Ok(())
    }

    pub fn apply_config_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::ConfigError(format!("cannot read {}: {e}", path.display())))?;
        self.apply_config_text(&text)
    }

    /// Honour [`SEED_ENV`] if set.
    pub fn apply_env(&mut self) -> Result<()> {
        match std::env::var(SEED_ENV) {
            Ok(v) => self.set("seed", &v),
            Err(std::env::VarError::NotPresent) => Ok(()),
            Err(e) => Err(Error::ConfigError(format!("{SEED_ENV}: {e}"))),
        }
    }

    pub fn seeds(&self) -> u64 {
        self.seeds.unwrap_or_else(|| self.scenario.default_seeds())
    }

    pub fn corpus_k(&self) -> Vec<f64> {
        self.k.map_or_else(|| CORPUS_K.to_vec(), |k| vec![k])
    }

    pub fn output_path(&self) -> PathBuf {
        self.output_path
            .clone()
            .unwrap_or_else(|| PathBuf::from(format!("hqz-{}.{}", self.scenario, self.format.extension())))
    }

    pub fn validate(&self) -> Result<()> {
        self.quadrature.validate()?;
        if let Some(k) = self.k {
            if !(0.0..1.0).contains(&k) {
                return Err(Error::ConfigError(format!("k = {k} not in [0, 1)")));
            }
        }
        match (self.scenario, self.n) {
            (Scenario::RatioLimit | Scenario::VerifyT3, Some(n)) if n < 2 => {
                Err(Error::ConfigError(format!("n = {n} must be at least 2")))
            }
            (Scenario::Strip, Some(0)) => Err(Error::ConfigError("n must be at least 1".into())),
            _ => Ok(()),
        }
    }
}

/// Result of one scenario run.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub scenario: Scenario,
    pub pass: bool,
    pub summary: String,
    pub rows: usize,
    pub output: PathBuf,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "{} {}: {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.scenario,
            self.summary
        )
    }
}

struct Verdict {
    pass: bool,
    summary: String,
    rows: usize,
}

fn emit<R: Record>(cfg: &RunConfig, rows: &[R]) -> Result<usize> {
    write_table(&cfg.output_path(), cfg.format, rows)?;
    Ok(rows.len())
}

pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    cfg.validate()?;
    let verdict = match cfg.scenario {
        Scenario::Sharpness3d => sharpness_3d(cfg),
        Scenario::RatioLimit => ratio_limit(cfg),
        Scenario::Strip => strip(cfg),
        Scenario::VerifyT1 => verify_t1(cfg),
        Scenario::VerifyT2 => verify_t2(cfg),
        Scenario::VerifyT3 => verify_t3(cfg),
        Scenario::Fuzz => fuzz(cfg),
        Scenario::LaplacianAudit => laplacian_audit(cfg),
        Scenario::GreenAudit => green_audit(cfg),
        Scenario::CalderonEstimate => calderon_estimate(cfg),
    }?;
    Ok(Outcome {
        scenario: cfg.scenario,
        pass: verdict.pass,
        summary: verdict.summary,
        rows: verdict.rows,
        output: cfg.output_path(),
    })
}

fn strictly_decreasing(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[1] < w[0])
}

fn max_of<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SharpnessRow {
    pub m: f64,
    #[serde(rename = "X")]
    pub x: f64,
    #[serde(rename = "Y")]
    pub y: f64,
    pub phi: f64,
    pub phi_gap: f64,
}

impl Record for SharpnessRow {
    fn header() -> Vec<&'static str> {
        vec!["m", "X", "Y", "phi", "phi_gap"]
    }

    fn fields(&self) -> Vec<String> {
        [self.m, self.x, self.y, self.phi, self.phi_gap].into_iter().map(fmt_f64).collect()
    }
}

pub fn sharpness_rows(q: &QuadratureSpec) -> Result<Vec<SharpnessRow>> {
    SHARPNESS_M
        .iter()
        .map(|&m| {
            let map = AffineBallMap::m_family(m)?;
            let phi = phi_of_m(m)?;
            Ok(SharpnessRow {
                m,
                x: X_of(&map, q)?.value,
                y: Y_of(&map, q)?.value,
                phi,
                phi_gap: (phi - 1.0 / 3.0).abs(),
            })
        })
        .collect()
}

fn sharpness_3d(cfg: &RunConfig) -> Result<Verdict> {
    let rows = sharpness_rows(&cfg.quadrature)?;
    let x_err = max_of(rows.iter().map(|r| (r.x - 1.0 / 3.0).abs()));
    let cross = max_of(rows.iter().map(|r| (r.phi - 2.0 * r.y).abs()));
    let gaps: Vec<f64> = rows.iter().map(|r| r.phi_gap).collect();
    let last = *gaps.last().expect("m list is nonempty");
    let decreasing = strictly_decreasing(&gaps);
    let pass = x_err <= 1e-8 && cross <= 1e-7 && last < 1e-3 && decreasing;
    let summary = format!(
        "max|X-1/3| = {x_err:.1e}, |phi(100)-1/3| = {last:.3e}, max|phi-2Y| = {cross:.1e}, gap decreasing = {decreasing}"
    );
    Ok(Verdict {
        pass,
        summary,
        rows: emit(cfg, &rows)?,
    })
}

fn ratio_limit(cfg: &RunConfig) -> Result<Verdict> {
    let dims: Vec<usize> = cfg.n.map_or_else(|| (2..=8).collect(), |n| vec![n]);
    let mut rows: Vec<RatioRow> = Vec::new();
    let mut pass = true;
    let mut worst = 0.0f64;
    for &n in &dims {
        let scan = ratio_limit_scan(n, &RATIO_A, &cfg.quadrature)?;
        let devs: Vec<f64> = scan.iter().map(|r| r.deviation).collect();
        let last = *devs.last().expect("a list is nonempty");
        worst = worst.max(last);
        pass &= last < 0.05 && strictly_decreasing(&devs);
        rows.extend(scan);
    }
    let a_min = RATIO_A[RATIO_A.len() - 1];
    let summary = format!(
        "n in {:?}: worst |X/Y-(n-1)|/(n-1) at a = {a_min} is {worst:.3e}, deviations decreasing in a = {pass}",
        dims
    );
    Ok(Verdict {
        pass,
        summary,
        rows: emit(cfg, &rows)?,
    })
}

fn strip(cfg: &RunConfig) -> Result<Verdict> {
    let n_max = cfg.n.unwrap_or(64) as u32;
    let rows = (1..=n_max)
        .map(|n| verify_T2_strip(n, &cfg.quadrature))
        .collect::<Result<Vec<_>>>()?;
    let norms: Vec<f64> = rows.iter().map(|r| r.lhs).collect();
    let below_one = norms.iter().all(|&x| x < 1.0);
    let increasing = norms.windows(2).all(|w| w[1] > w[0]);
    let first_err = (norms[0] - 2.0 / PI).abs();
    let gap32 = norms.get(31).map(|x| 1.0 - x);
    let gap_ok = gap32.is_none_or(|g| g < 2.0 / 33.0);
    let pass = below_one && increasing && first_err <= 1e-9 && gap_ok;
    let summary = format!(
        "n = 1..{n_max}: all norms < 1 = {below_one}, increasing = {increasing}, |‖f1‖-2/π| = {first_err:.1e}, 1-‖f32‖ = {}",
        gap32.map_or_else(|| "n/a".to_owned(), |g| format!("{g:.5}"))
    );
    Ok(Verdict {
        pass,
        summary,
        rows: emit(cfg, &rows)?,
    })
}

/// Planar maps for the quasiregular Zygmund check: the corpus maps, with every
/// other one shifted so that `u` changes sign, plus a constant.
pub fn t1_maps(first_seed: u64, count: u64, degree: usize) -> Vec<PlanarHarmonicMap> {
    let mut maps: Vec<PlanarHarmonicMap> = (0..count)
        .map(|i| {
            let k = CORPUS_K[(i % CORPUS_K.len() as u64) as usize];
            let map = random_qr_map(first_seed + i, k, degree, FUZZ_POSITIVITY_MARGIN);
            if i % 2 == 1 {
                let u0 = map.u(Complex64::new(0.0, 0.0));
                map.shifted(-u0)
            } else {
                map
            }
        })
        .collect();
    maps.push(PlanarHarmonicMap::constant(Complex64::new(0.5, 0.0)));
    maps
}

fn verify_t1(cfg: &RunConfig) -> Result<Verdict> {
    let q = &cfg.quadrature;
    let count = cfg.seeds();
    let corpus: Vec<_> = (cfg.seed..cfg.seed + count)
        .map(|s| random_series(s, CALDERON_DEGREE))
        .collect();
    let estimate = calderon_ratio_estimate(&corpus, q)?;
    let c1c2 = estimate.product();
    let rows = t1_maps(cfg.seed, count, cfg.degree)
        .par_iter()
        .map(|map| verify_T1(map, 1.0, c1c2, q))
        .collect::<Result<Vec<TheoremReport>>>()?;
    let violations = rows.iter().filter(|r| !r.holds()).count();
    let empirical = max_of(rows.iter().filter_map(|r| r.param("empirical_constant")));
    let summary = format!(
        "c1 >= {:.4}, c2 >= {:.4}, c1c2 = {c1c2:.4}; {} maps, max empirical constant {empirical:.4}, violations {violations}",
        estimate.c1_lower,
        estimate.c2_lower,
        rows.len()
    );
    Ok(Verdict {
        pass: violations == 0,
        summary,
        rows: emit(cfg, &rows)?,
    })
}

fn verify_t2(cfg: &RunConfig) -> Result<Verdict> {
    let q = &cfg.quadrature;
    let one = PlanarHarmonicMap::constant(Complex64::new(1.0, 0.0));
    let degenerate = verify_T2_with_k(&one, 1.0, 1.0, q)?;
    let degenerate_ok = degenerate.margin == 0.0;
    let mut rows = vec![degenerate];
    for k in cfg.corpus_k() {
        let (_, reports) = fuzz_search_from(cfg.seed, cfg.seeds(), k, cfg.degree, q)?;
        rows.extend(reports);
    }
    let worst = rows.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min);
    let margins_ok = worst >= T2_MARGIN_FLOOR;
    let v_ok = rows
        .iter()
        .all(|r| r.param("v_norm1").is_none_or(|v| v <= r.lhs + 1e-12));
    let pass = degenerate_ok && margins_ok && v_ok;
    let summary = format!(
        "{} reports, worst margin {worst:.3e}, u ≡ 1 margin exactly 0 = {degenerate_ok}, ‖v‖₁ <= ‖f‖₁ = {v_ok}",
        rows.len()
    );
    Ok(Verdict {
        pass,
        summary,
        rows: emit(cfg, &rows)?,
    })
}

fn verify_t3(cfg: &RunConfig) -> Result<Verdict> {
    let q = &cfg.quadrature;
    let dims: Vec<usize> = cfg.n.map_or_else(|| (2..=8).collect(), |n| vec![n]);
    let mut maps = vec![AffineBallMap::unit_shift(3, 0.0)?];
    for &n in &dims {
        for a in RATIO_A {
            maps.push(AffineBallMap::unit_shift(n, a)?);
        }
    }
    for m in SHARPNESS_M {
        maps.push(AffineBallMap::m_family(m)?);
    }
    let rows = maps
        .iter()
        .map(|m| verify_T3_affine(m, q))
        .collect::<Result<Vec<TheoremReport>>>()?;
    let violations = rows.iter().filter(|r| !r.holds()).count();
    let a_min = RATIO_A[RATIO_A.len() - 1];
    let worst_ratio = max_of(
        rows.iter()
            .filter(|r| r.param("a") == Some(a_min) && r.param("c") == Some(1.0))
            .map(|r| (r.lhs / r.rhs - 1.0).abs()),
    );
    let pass = violations == 0 && worst_ratio < 0.05;
    let summary = format!(
        "{} reports, violations {violations}, worst |X/((n-1)Y) - 1| at a = {a_min} is {worst_ratio:.3e}",
        rows.len()
    );
    Ok(Verdict {
        pass,
        summary,
        rows: emit(cfg, &rows)?,
    })
}

/// Sidecar file holding the fuzz summary and its witness map.
pub fn summary_path(output: &Path) -> PathBuf {
    output.with_extension("summary.json")
}

fn fuzz(cfg: &RunConfig) -> Result<Verdict> {
    let k = cfg.k.unwrap_or(0.5);
    let (summary, rows) = fuzz_search_from(cfg.seed, cfg.seeds(), k, cfg.degree, &cfg.quadrature)?;
    let margin_ok = summary.worst_margin.is_none_or(|m| m >= T2_MARGIN_FLOOR);
    let ratio_ok = summary.best_ratio.is_none_or(|r| r <= 1.0 + 1e-9);
    let json = serde_json::to_string_pretty(&summary).map_err(|e| Error::Io(e.to_string()))?;
    std::fs::write(summary_path(&cfg.output_path()), json + "\n")?;
    let text = match (summary.worst_margin, summary.best_ratio, summary.witness_seed) {
        (Some(m), Some(r), Some(s)) => {
            format!("{} seeds at k = {k}: worst margin {m:.3e}, best ratio {r:.6} (seed {s})", summary.seeds)
        }
        _ => format!("empty corpus at k = {k}"),
    };
    Ok(Verdict {
        pass: margin_ok && ratio_ok,
        summary: text,
        rows: emit(cfg, &rows)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AuditRow {
    pub seed: u64,
    pub k: f64,
    #[serde(rename = "K")]
    pub big_k: f64,
    pub points: usize,
    pub checked: usize,
    pub max_rel_abs: f64,
    pub max_rel_ulogu: f64,
    pub max_ratio: f64,
    pub bound: f64,
}

impl Record for AuditRow {
    fn header() -> Vec<&'static str> {
        vec![
            "seed",
            "k",
            "K",
            "points",
            "checked",
            "max_rel_abs",
            "max_rel_ulogu",
            "max_ratio",
            "bound",
        ]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.seed.to_string(),
            fmt_f64(self.k),
            fmt_f64(self.big_k),
            self.points.to_string(),
            self.checked.to_string(),
            fmt_f64(self.max_rel_abs),
            fmt_f64(self.max_rel_ulogu),
            fmt_f64(self.max_ratio),
            fmt_f64(self.bound),
        ]
    }
}

/// Finite-difference and ratio audit of one corpus map. The bound uses the
/// declared dilatation, which dominates `|h'/g'|` everywhere on the disk.
pub fn audit_row(seed: u64, k: f64, degree: usize, q: &QuadratureSpec) -> Result<AuditRow> {
    let map = random_qr_map(seed, k, degree, FUZZ_POSITIVITY_MARGIN);
    let FdAudit {
        points,
        checked,
        max_rel_abs,
        max_rel_ulogu,
        max_ratio,
    } = fd_audit(&map, &AUDIT_GRID, FD_STEP)?;
    let big = big_k(map.k_declared());
    Ok(AuditRow {
        seed,
        k,
        big_k: big,
        points,
        checked,
        max_rel_abs,
        max_rel_ulogu,
        max_ratio: max_ratio.max(larmi_ratio_check(&map, q)?),
        bound: big * big,
    })
}

fn laplacian_audit(cfg: &RunConfig) -> Result<Verdict> {
    let jobs: Vec<(u64, f64)> = cfg
        .corpus_k()
        .into_iter()
        .flat_map(|k| (cfg.seed..cfg.seed + cfg.seeds()).map(move |s| (s, k)))
        .collect();
    let rows = jobs
        .par_iter()
        .map(|&(s, k)| audit_row(s, k, cfg.degree, &cfg.quadrature))
        .collect::<Result<Vec<_>>>()?;
    let rel = max_of(rows.iter().map(|r| r.max_rel_abs.max(r.max_rel_ulogu)));
    let ratio_ok = rows.iter().all(|r| r.max_ratio <= r.bound * (1.0 + 1e-9));
    let worst_ratio = max_of(rows.iter().map(|r| r.max_ratio / r.bound));
    let checked: usize = rows.iter().map(|r| r.checked).sum();
    let pass = rel <= 1e-5 && ratio_ok;
    let summary = format!(
        "{} maps, {checked} grid points compared: max relative FD error {rel:.2e}, max ratio/K² {worst_ratio:.6}",
        rows.len()
    );
    Ok(Verdict {
        pass,
        summary,
        rows: emit(cfg, &rows)?,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GreenRow {
    pub case: String,
    pub r: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub est_error: f64,
    pub tolerance: f64,
}

impl GreenRow {
    fn new(case: String, r: f64, g: GreenResidual, tolerance: f64) -> Self {
        Self {
            case,
            r,
            lhs: g.lhs,
            rhs: g.rhs,
            residual: g.residual,
            est_error: g.est_error,
            tolerance,
        }
    }

    pub fn passes(&self) -> bool {
        self.residual.abs() < self.tolerance
    }
}

impl Record for GreenRow {
    fn header() -> Vec<&'static str> {
        vec!["case", "r", "lhs", "rhs", "residual", "est_error", "tolerance"]
    }

    fn fields(&self) -> Vec<String> {
        let mut out = vec![self.case.clone()];
        out.extend(
            [self.r, self.lhs, self.rhs, self.residual, self.est_error, self.tolerance]
                .into_iter()
                .map(fmt_f64),
        );
        out
    }
}

pub fn green_rows(seed: u64, degree: usize, q: &QuadratureSpec) -> Result<Vec<GreenRow>> {
    let r = 0.9;
    let two_plus_z = PlanarHarmonicMap::analytic(crate::series::ComplexSeries::from_real(&[2.0, 1.0]));
    let fuzz_map = random_qr_map(seed, 0.3, degree, FUZZ_POSITIVITY_MARGIN);
    let constant = PlanarHarmonicMap::constant(Complex64::new(0.7, -0.2));
    Ok(vec![
        GreenRow::new("disk 2+z".into(), r, disk_green_identity(&two_plus_z, r, q)?, 1e-6),
        GreenRow::new(
            format!("disk corpus seed={seed} k=0.3"),
            r,
            disk_green_identity(&fuzz_map, r, q)?,
            1e-6,
        ),
        GreenRow::new("disk constant".into(), r, disk_green_identity(&constant, r, q)?, 1e-15),
        GreenRow::new(
            "ball m=2".into(),
            1.0,
            ball_green_identity_n3(&AffineBallMap::m_family(2.0)?, q)?,
            1e-4,
        ),
        GreenRow::new("ball |x|^2 calibration".into(), 1.0, green_calibration_n3(q)?, 1e-10),
    ])
}

fn green_audit(cfg: &RunConfig) -> Result<Verdict> {
    let rows = green_rows(cfg.seed, cfg.degree, &cfg.quadrature)?;
    let pass = rows.iter().all(GreenRow::passes);
    let parts: Vec<String> = rows.iter().map(|r| format!("{} {:.1e}", r.case, r.residual.abs())).collect();
    Ok(Verdict {
        pass,
        summary: format!("|residual|: {}", parts.join(", ")),
        rows: emit(cfg, &rows)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CalderonTableRow {
    pub seed: u64,
    pub hardy_norm: f64,
    pub square_norm: f64,
    pub forward: f64,
    pub backward: f64,
}

impl Record for CalderonTableRow {
    fn header() -> Vec<&'static str> {
        vec!["seed", "hardy_norm", "square_norm", "forward", "backward"]
    }

    fn fields(&self) -> Vec<String> {
        let mut out = vec![self.seed.to_string()];
        out.extend(
            [self.hardy_norm, self.square_norm, self.forward, self.backward]
                .into_iter()
                .map(fmt_f64),
        );
        out
    }
}

fn calderon_estimate(cfg: &RunConfig) -> Result<Verdict> {
    let seeds: Vec<u64> = (cfg.seed..cfg.seed + cfg.seeds()).collect();
    let corpus: Vec<_> = seeds.iter().map(|&s| random_series(s, CALDERON_DEGREE)).collect();
    let estimate = calderon_ratio_estimate(&corpus, &cfg.quadrature)?;
    let rows: Vec<CalderonTableRow> = seeds
        .iter()
        .zip(&estimate.rows)
        .map(|(&seed, row)| CalderonTableRow {
            seed,
            hardy_norm: row.hardy_norm,
            square_norm: row.square_norm,
            forward: row.forward(),
            backward: row.backward(),
        })
        .collect();
    let finite = [estimate.c1_lower, estimate.c2_lower]
        .iter()
        .all(|c| c.is_finite() && *c > 0.0);
    let summary = format!(
        "{} series of degree {CALDERON_DEGREE}: c1 >= {:.6}, c2 >= {:.6}, product {:.6}",
        rows.len(),
        estimate.c1_lower,
        estimate.c2_lower,
        estimate.product()
    );
    Ok(Verdict {
        pass: finite,
        summary,
        rows: emit(cfg, &rows)?,
    })
}
