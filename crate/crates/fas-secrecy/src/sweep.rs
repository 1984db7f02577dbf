//! Parameter sweeps, deterministic CSV emission and analytical-vs-Monte-Carlo
//! validation reports.

use rayon::prelude::*;

use crate::config::{db_to_linear, dbm_to_watts, LinkBudget, LoadedConfig, SweepAxis};
use crate::error::{Error, Result};
use crate::geometry::PortGrid;
use crate::metrics::{
    asc, asc_asymptotic, derived_avg_snr, see, sop, sop_oracle, Channel, SecrecyScenario,
};
use crate::montecarlo::simulate_metrics;

/// Version line prepended to every CSV and report this tool emits.
pub const CSV_SCHEMA: &str = "# fas-secrecy v1";

/// Stieltjes cells used for the SOP oracle inside sweeps and validation.
pub const DEFAULT_ORACLE_POINTS: usize = 2048;

/// 17-significant-digit, locale-independent float formatting; round-trips
/// through f64 parsing.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// One evaluated sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct PointMetrics {
    pub asc: f64,
    pub asc_err: f64,
    pub asc_asymptotic: f64,
    pub sop_paper: f64,
    pub sop_oracle: f64,
    pub see: f64,
    pub kappa: f64,
    pub jitter_applied: f64,
    pub mvn_flag: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub axis_value: f64,
    pub point: Option<PointMetrics>,
    pub error: Option<String>,
}

/// Rebuild a scenario with the swept axis applied.
pub fn apply_axis(
    base: &SecrecyScenario,
    budget: &LinkBudget,
    axis: SweepAxis,
    value: f64,
) -> Result<SecrecyScenario> {
    let mut s = base.clone();
    match axis {
        SweepAxis::GammaBDb => {
            s.bob.avg_snr = db_to_linear(value);
        }
        SweepAxis::PTxDbm => {
            let p = dbm_to_watts(value);
            s.power.p_tx_w = p;
            s.bob.avg_snr = derived_avg_snr(p, budget.d_b_m, budget.nu, budget.noise_b_w)?;
            s.eve.avg_snr = derived_avg_snr(p, budget.d_e_m, budget.nu, budget.noise_e_w)?;
        }
        SweepAxis::KBPorts => {
            let side = value.sqrt().round() as usize;
            let (w1, w2) = match &base.bob.channel {
                Channel::Fas { grid, .. } => (grid.w1(), grid.w2()),
                _ => {
                    return Err(Error::InvalidParameter(
                        "k_b_ports sweep requires a fluid-antenna Bob".into(),
                    ))
                }
            };
            s.bob.channel = Channel::fas(PortGrid::new(side, side, w1, w2)?)?;
        }
        SweepAxis::WBArea => {
            let (k1, k2) = match &base.bob.channel {
                Channel::Fas { grid, .. } => (grid.k1(), grid.k2()),
                _ => {
                    return Err(Error::InvalidParameter(
                        "w_b_area sweep requires a fluid-antenna Bob".into(),
                    ))
                }
            };
            let w = value.sqrt();
            s.bob.channel = Channel::fas(PortGrid::new(k1, k2, w, w)?)?;
        }
        SweepAxis::DBMeters => {
            s.bob.avg_snr = derived_avg_snr(budget.p_tx_w, value, budget.nu, budget.noise_b_w)?;
        }
    }
    s.validate()?;
    Ok(s)
}

fn eval_point(s: &SecrecyScenario, oracle_points: usize) -> Result<PointMetrics> {
    let a = asc(s)?;
    let asy = asc_asymptotic(s)?;
    let p = sop(s)?;
    let o = sop_oracle(s, oracle_points)?;
    let e = see(s)?;
    Ok(PointMetrics {
        asc: a.value,
        asc_err: a.estimator_error,
        asc_asymptotic: asy.value,
        sop_paper: p.value,
        sop_oracle: o.value,
        see: e.value,
        kappa: s.kappa(),
        jitter_applied: s.bob.channel.jitter_applied().max(s.eve.channel.jitter_applied()),
        mvn_flag: a.diagnostics.mvn_cap_hit
            || asy.diagnostics.mvn_cap_hit
            || p.diagnostics.mvn_cap_hit
            || o.diagnostics.mvn_cap_hit,
    })
}

/// Evaluate every sweep point. Points run concurrently up to `jobs` threads;
/// each point derives its seed as `base seed XOR point index`, so the output
/// is byte-identical for any thread count. Per-point failures land in the
/// error column and the sweep continues.
pub fn run_sweep(cfg: &LoadedConfig, jobs: usize, oracle_points: usize) -> Result<Vec<SweepRow>> {
    let spec = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| Error::InvalidParameter("config has no [sweep] section".into()))?;
    let jobs = jobs.max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;

    let rows: Vec<SweepRow> = pool.install(|| {
        spec.values
            .par_iter()
            .enumerate()
            .map(|(idx, &value)| {
                let built = apply_axis(&cfg.scenario, &cfg.budget, spec.axis, value).map(|mut s| {
                    s.seed = cfg.scenario.seed ^ idx as u64;
                    s
                });
                match built.and_then(|s| eval_point(&s, oracle_points)) {
                    Ok(point) => SweepRow {
                        axis_value: value,
                        point: Some(point),
                        error: None,
                    },
                    Err(e) => SweepRow {
                        axis_value: value,
                        point: None,
                        error: Some(e.to_string()),
                    },
                }
            })
            .collect()
    });
    Ok(rows)
}

pub const SWEEP_COLUMNS: &str = "axis_value,asc,asc_err,asc_asymptotic,sop_paper,sop_oracle,see,kappa,jitter_applied,mvn_flag,error";

/// Render sweep rows as CSV with the versioned header.
pub fn rows_to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::new();
    out.push_str(CSV_SCHEMA);
    out.push('\n');
    out.push_str(SWEEP_COLUMNS);
    out.push('\n');
    for row in rows {
        let nan = f64::NAN;
        let (p, err) = match (&row.point, &row.error) {
            (Some(p), _) => (p.clone(), String::new()),
            (None, e) => (
                PointMetrics {
                    asc: nan,
                    asc_err: nan,
                    asc_asymptotic: nan,
                    sop_paper: nan,
                    sop_oracle: nan,
                    see: nan,
                    kappa: nan,
                    jitter_applied: nan,
                    mvn_flag: false,
                },
                e.clone().unwrap_or_default().replace(',', ";"),
            ),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            fmt17(row.axis_value),
            fmt17(p.asc),
            fmt17(p.asc_err),
            fmt17(p.asc_asymptotic),
            fmt17(p.sop_paper),
            fmt17(p.sop_oracle),
            fmt17(p.see),
            fmt17(p.kappa),
            fmt17(p.jitter_applied),
            u8::from(p.mvn_flag),
            err,
        ));
    }
    out
}

/// One metric line of the validation report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationLine {
    pub analytic: f64,
    pub analytic_err: f64,
    pub mc: f64,
    pub mc_err: f64,
    pub z: f64,
}

fn z_score(analytic: f64, analytic_err: f64, mc: f64, mc_err: f64) -> f64 {
    let denom = (analytic_err * analytic_err + mc_err * mc_err).sqrt().max(1e-15);
    (analytic - mc) / denom
}

/// Side-by-side analytical vs Monte Carlo comparison. The SOP line uses the
/// Stieltjes oracle; the paper-form SOP and its gap are reported alongside.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub trials: usize,
    pub seed: u64,
    pub asc: ValidationLine,
    pub sop: ValidationLine,
    pub see: ValidationLine,
    pub sop_paper: f64,
    pub sop_gap: f64,
    pub mvn_cap_hit: bool,
    pub pass: bool,
}

pub fn validate(cfg: &LoadedConfig, trials: usize, seed: u64) -> Result<ValidationReport> {
    let mut s = cfg.scenario.clone();
    s.seed = seed;
    let a = asc(&s)?;
    let o = sop_oracle(&s, DEFAULT_ORACLE_POINTS)?;
    let e = see(&s)?;
    let p = sop(&s)?;
    let mc = simulate_metrics(&s, trials, seed)?;

    let asc_line = ValidationLine {
        analytic: a.value,
        analytic_err: a.estimator_error,
        mc: mc.asc.mean,
        mc_err: mc.asc.std_error,
        z: z_score(a.value, a.estimator_error, mc.asc.mean, mc.asc.std_error),
    };
    let sop_line = ValidationLine {
        analytic: o.value,
        analytic_err: o.estimator_error,
        mc: mc.sop.mean,
        mc_err: mc.sop.std_error,
        z: z_score(o.value, o.estimator_error, mc.sop.mean, mc.sop.std_error),
    };
    let see_line = ValidationLine {
        analytic: e.value,
        analytic_err: e.estimator_error,
        mc: mc.see.mean,
        mc_err: mc.see.std_error,
        z: z_score(e.value, e.estimator_error, mc.see.mean, mc.see.std_error),
    };
    let pass = asc_line.z.abs() <= 3.0 && sop_line.z.abs() <= 3.0 && see_line.z.abs() <= 3.0;
    Ok(ValidationReport {
        trials,
        seed,
        asc: asc_line,
        sop: sop_line,
        see: see_line,
        sop_paper: p.value,
        sop_gap: p.value - o.value,
        mvn_cap_hit: a.diagnostics.mvn_cap_hit
            || o.diagnostics.mvn_cap_hit
            || p.diagnostics.mvn_cap_hit,
        pass,
    })
}

impl ValidationReport {
    /// Byte-stable text rendering.
    pub fn to_text(&self) -> String {
        let line = |name: &str, l: &ValidationLine| {
            format!(
                "{},{},{},{},{},{}\n",
                name,
                fmt17(l.analytic),
                fmt17(l.analytic_err),
                fmt17(l.mc),
                fmt17(l.mc_err),
                fmt17(l.z),
            )
        };
        let mut out = String::new();
        out.push_str(CSV_SCHEMA);
        out.push_str(" validate\n");
        out.push_str(&format!("trials={} seed={}\n", self.trials, self.seed));
        out.push_str("metric,analytic,analytic_err,mc,mc_err,z\n");
        out.push_str(&line("asc", &self.asc));
        out.push_str(&line("sop", &self.sop));
        out.push_str(&line("see", &self.see));
        out.push_str(&format!(
            "sop_paper={} sop_gap={}\n",
            fmt17(self.sop_paper),
            fmt17(self.sop_gap)
        ));
        out.push_str(&format!("mvn_cap_hit={}\n", u8::from(self.mvn_cap_hit)));
        out.push_str(if self.pass { "result=PASS\n" } else { "result=FAIL\n" });
        out
    }
}
