//! Configuration ingestion: flat TOML-compatible key-value files with dotted
//! sections `bob.*`, `eve.*`, `power.*`, `sweep.*`.
//!
//! Missing keys fall back to the standard simulation defaults (secrecy rate
//! 1 bit, circuit power 20 dBm, activation power 10 dBm, one active port,
//! unit drain efficiency, path-loss exponent 2.1, unit scale parameter,
//! noise -30 dBm at Bob and -20 dBm at Eve, 2x2 ports on 1x1 wavelengths at
//! either node, unit distances, transmit power -27 dBm). All dB and dBm
//! values convert to linear exactly once, here; the core is linear-domain
//! only.

use std::collections::BTreeSet;
use std::path::Path;

use toml::{Table, Value};

use crate::error::{Error, Result};
use crate::geometry::PortGrid;
use crate::marginal::MarginalModel;
use crate::metrics::{derived_avg_snr, Channel, NodeParams, NodeRole, PowerModel, SecrecyScenario};

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

/// Swept parameter. Port counts sweep over square grids; areas over square
/// apertures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    GammaBDb,
    PTxDbm,
    KBPorts,
    WBArea,
    DBMeters,
}

impl SweepAxis {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "gamma_b_db" => Some(Self::GammaBDb),
            "p_tx_dbm" => Some(Self::PTxDbm),
            "k_b_ports" => Some(Self::KBPorts),
            "w_b_area" => Some(Self::WBArea),
            "d_b_meters" => Some(Self::DBMeters),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::GammaBDb => "gamma_b_db",
            Self::PTxDbm => "p_tx_dbm",
            Self::KBPorts => "k_b_ports",
            Self::WBArea => "w_b_area",
            Self::DBMeters => "d_b_meters",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub values: Vec<f64>,
}

/// Link-budget inputs kept around so sweeps can re-derive SNRs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    pub p_tx_w: f64,
    pub nu: f64,
    pub d_b_m: f64,
    pub noise_b_w: f64,
    pub gamma_b_explicit: bool,
    pub d_e_m: f64,
    pub noise_e_w: f64,
    pub gamma_e_explicit: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoadedConfig {
    pub scenario: SecrecyScenario,
    pub budget: LinkBudget,
    pub sweep: Option<SweepSpec>,
    /// Whether the config supplied a seed (mandatory for `validate`).
    pub seed_explicit: bool,
    /// Unknown-key notes collected in lenient mode.
    pub warnings: Vec<String>,
}

pub fn load_config(path: &Path) -> Result<LoadedConfig> {
    let text = std::fs::read_to_string(path)?;
    load_config_str(&text, true)
}

struct Cx<'a> {
    text: &'a str,
    strict: bool,
    warnings: Vec<String>,
}

impl<'a> Cx<'a> {
    fn key_err(&self, section: Option<&str>, key: &str, message: impl Into<String>) -> Error {
        let dotted = match section {
            Some(s) => format!("{s}.{key}"),
            None => key.to_string(),
        };
        Error::Config {
            key: dotted,
            line: find_key_line(self.text, section, key),
            message: message.into(),
        }
    }

    fn unknown(&mut self, section: Option<&str>, key: &str) -> Result<()> {
        if self.strict {
            Err(self.key_err(section, key, "unknown key"))
        } else {
            let dotted = match section {
                Some(s) => format!("{s}.{key}"),
                None => key.to_string(),
            };
            self.warnings.push(format!("ignoring unknown key `{dotted}`"));
            Ok(())
        }
    }
}

fn find_key_line(text: &str, section: Option<&str>, key: &str) -> Option<usize> {
    let mut in_section = section.is_none();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim_start();
        if t.starts_with('[') {
            in_section = match section {
                Some(s) => t.trim_end() == format!("[{s}]"),
                None => false,
            };
            continue;
        }
        if in_section {
            let rest = t.strip_prefix(key);
            if let Some(rest) = rest {
                if rest.trim_start().starts_with('=') {
                    return Some(i + 1);
                }
            }
        }
    }
    None
}

fn check_known(cx: &mut Cx, section: Option<&str>, table: &Table, known: &[&str]) -> Result<()> {
    let known: BTreeSet<&str> = known.iter().copied().collect();
    for key in table.keys() {
        if !known.contains(key.as_str()) {
            cx.unknown(section, key)?;
        }
    }
    Ok(())
}

fn get_f64(cx: &Cx, section: Option<&str>, table: &Table, key: &str) -> Result<Option<f64>> {
    match table.get(key) {
        None => Ok(None),
        Some(Value::Float(f)) => Ok(Some(*f)),
        Some(Value::Integer(i)) => Ok(Some(*i as f64)),
        Some(other) => Err(cx.key_err(
            section,
            key,
            format!("expected a number, got {}", other.type_str()),
        )),
    }
}

fn get_usize(cx: &Cx, section: Option<&str>, table: &Table, key: &str) -> Result<Option<usize>> {
    match table.get(key) {
        None => Ok(None),
        Some(Value::Integer(i)) if *i >= 0 => Ok(Some(*i as usize)),
        Some(other) => Err(cx.key_err(
            section,
            key,
            format!("expected a nonnegative integer, got {other}"),
        )),
    }
}

fn get_u64(cx: &Cx, section: Option<&str>, table: &Table, key: &str) -> Result<Option<u64>> {
    match table.get(key) {
        None => Ok(None),
        Some(Value::Integer(i)) if *i >= 0 => Ok(Some(*i as u64)),
        Some(other) => Err(cx.key_err(
            section,
            key,
            format!("expected a nonnegative integer, got {other}"),
        )),
    }
}

fn get_str<'t>(
    cx: &Cx,
    section: Option<&str>,
    table: &'t Table,
    key: &str,
) -> Result<Option<&'t str>> {
    match table.get(key) {
        None => Ok(None),
        Some(Value::String(s)) => Ok(Some(s.as_str())),
        Some(other) => Err(cx.key_err(
            section,
            key,
            format!("expected a string, got {}", other.type_str()),
        )),
    }
}

fn empty_table() -> Table {
    Table::new()
}

struct NodeDefaults {
    noise_dbm: f64,
    k: (usize, usize),
    w: (f64, f64),
}

struct ParsedNode {
    channel: Channel,
    eta: f64,
    gamma_explicit: Option<f64>,
    distance_m: f64,
    noise_w: f64,
}

fn parse_node(cx: &mut Cx, name: &str, table: &Table, defaults: &NodeDefaults) -> Result<ParsedNode> {
    const KEYS: [&str; 12] = [
        "channel",
        "k1",
        "k2",
        "ports",
        "w1",
        "w2",
        "area",
        "antennas",
        "eta",
        "gamma_db",
        "noise_dbm",
        "distance_m",
    ];
    let section = Some(name);
    check_known(cx, section, table, &KEYS)?;

    let kind = get_str(cx, section, table, "channel")?.unwrap_or("fas");
    let channel = match kind {
        "fas" => {
            if let Some(n) = get_usize(cx, section, table, "antennas")? {
                return Err(cx.key_err(
                    section,
                    "antennas",
                    format!("antennas = {n} only applies to channel = \"mrc\" or \"sc\""),
                ));
            }
            let explicit_k = table.contains_key("k1") || table.contains_key("k2");
            let (k1, k2) = if let Some(ports) = get_usize(cx, section, table, "ports")? {
                if explicit_k {
                    return Err(cx.key_err(
                        section,
                        "ports",
                        "contradictory keys: give either ports or k1/k2, not both",
                    ));
                }
                let side = (ports as f64).sqrt().round() as usize;
                if side * side != ports || ports == 0 {
                    return Err(cx.key_err(
                        section,
                        "ports",
                        format!(
                            "ports = {ports} is not a perfect square; set k1 and k2 explicitly for a k1 x k2 factorization"
                        ),
                    ));
                }
                (side, side)
            } else {
                (
                    get_usize(cx, section, table, "k1")?.unwrap_or(defaults.k.0),
                    get_usize(cx, section, table, "k2")?.unwrap_or(defaults.k.1),
                )
            };
            let explicit_w = table.contains_key("w1") || table.contains_key("w2");
            let (w1, w2) = if let Some(area) = get_f64(cx, section, table, "area")? {
                if explicit_w {
                    return Err(cx.key_err(
                        section,
                        "area",
                        "contradictory keys: give either area or w1/w2, not both",
                    ));
                }
                if !(area >= 0.0) {
                    return Err(cx.key_err(section, "area", "area must be nonnegative"));
                }
                (area.sqrt(), area.sqrt())
            } else {
                (
                    get_f64(cx, section, table, "w1")?.unwrap_or(defaults.w.0),
                    get_f64(cx, section, table, "w2")?.unwrap_or(defaults.w.1),
                )
            };
            let grid = PortGrid::new(k1, k2, w1, w2)
                .map_err(|e| cx.key_err(section, "k1", e.to_string()))?;
            Channel::fas(grid)?
        }
        "mrc" | "sc" => {
            for forbidden in ["k1", "k2", "ports", "w1", "w2", "area"] {
                if table.contains_key(forbidden) {
                    return Err(cx.key_err(
                        section,
                        forbidden,
                        format!("key only applies to channel = \"fas\", not \"{kind}\""),
                    ));
                }
            }
            let n = get_usize(cx, section, table, "antennas")?.unwrap_or(4);
            if kind == "mrc" {
                Channel::mrc(n)?
            } else {
                Channel::sc(n)?
            }
        }
        other => {
            return Err(cx.key_err(
                section,
                "channel",
                format!("unknown channel kind \"{other}\" (expected fas, mrc or sc)"),
            ))
        }
    };

    let eta = get_f64(cx, section, table, "eta")?.unwrap_or(1.0);
    let gamma_db = get_f64(cx, section, table, "gamma_db")?;
    let noise_dbm = get_f64(cx, section, table, "noise_dbm")?;
    let distance_m = get_f64(cx, section, table, "distance_m")?;
    if gamma_db.is_some() && (noise_dbm.is_some() || distance_m.is_some()) {
        return Err(cx.key_err(
            section,
            "gamma_db",
            "contradictory keys: give either gamma_db or the (p_tx, distance, noise) budget",
        ));
    }

    Ok(ParsedNode {
        channel,
        eta,
        gamma_explicit: gamma_db.map(db_to_linear),
        distance_m: distance_m.unwrap_or(1.0),
        noise_w: dbm_to_watts(noise_dbm.unwrap_or(defaults.noise_dbm)),
    })
}

fn parse_sweep(cx: &mut Cx, table: &Table) -> Result<SweepSpec> {
    const KEYS: [&str; 6] = ["axis", "values", "start", "stop", "count", "scale"];
    let section = Some("sweep");
    check_known(cx, section, table, &KEYS)?;

    let axis_name = get_str(cx, section, table, "axis")?
        .ok_or_else(|| cx.key_err(section, "axis", "sweep requires an axis"))?;
    let axis = SweepAxis::parse(axis_name).ok_or_else(|| {
        cx.key_err(
            section,
            "axis",
            format!(
                "unknown axis \"{axis_name}\" (expected gamma_b_db, p_tx_dbm, k_b_ports, w_b_area or d_b_meters)"
            ),
        )
    })?;

    let explicit = table.get("values");
    let ranged = table.contains_key("start") || table.contains_key("stop") || table.contains_key("count");
    let values: Vec<f64> = match (explicit, ranged) {
        (Some(_), true) => {
            return Err(cx.key_err(
                section,
                "values",
                "contradictory keys: give either values or start/stop/count",
            ))
        }
        (Some(Value::Array(arr)), false) => {
            let mut out = Vec::with_capacity(arr.len());
            for v in arr {
                match v {
                    Value::Float(f) => out.push(*f),
                    Value::Integer(i) => out.push(*i as f64),
                    other => {
                        return Err(cx.key_err(
                            section,
                            "values",
                            format!("expected numbers, got {}", other.type_str()),
                        ))
                    }
                }
            }
            out
        }
        (Some(other), false) => {
            return Err(cx.key_err(
                section,
                "values",
                format!("expected an array, got {}", other.type_str()),
            ))
        }
        (None, _) => {
            let start = get_f64(cx, section, table, "start")?
                .ok_or_else(|| cx.key_err(section, "start", "range sweep requires start"))?;
            let stop = get_f64(cx, section, table, "stop")?
                .ok_or_else(|| cx.key_err(section, "stop", "range sweep requires stop"))?;
            let count = get_usize(cx, section, table, "count")?
                .ok_or_else(|| cx.key_err(section, "count", "range sweep requires count"))?;
            if count == 0 {
                return Err(cx.key_err(section, "count", "count must be positive"));
            }
            let scale = get_str(cx, section, table, "scale")?.unwrap_or("linear");
            match scale {
                "linear" => (0..count)
                    .map(|i| {
                        if count == 1 {
                            start
                        } else {
                            start + (stop - start) * i as f64 / (count - 1) as f64
                        }
                    })
                    .collect(),
                "log" => {
                    if !(start > 0.0 && stop > 0.0) {
                        return Err(cx.key_err(
                            section,
                            "scale",
                            "log scale requires positive start and stop",
                        ));
                    }
                    (0..count)
                        .map(|i| {
                            if count == 1 {
                                start
                            } else {
                                (start.ln()
                                    + (stop.ln() - start.ln()) * i as f64 / (count - 1) as f64)
                                    .exp()
                            }
                        })
                        .collect()
                }
                other => {
                    return Err(cx.key_err(
                        section,
                        "scale",
                        format!("unknown scale \"{other}\" (expected linear or log)"),
                    ))
                }
            }
        }
    };

    if values.is_empty() {
        return Err(cx.key_err(section, "values", "sweep values must be nonempty"));
    }
    for &v in &values {
        if !v.is_finite() {
            return Err(cx.key_err(section, "values", format!("non-finite value {v}")));
        }
        match axis {
            SweepAxis::KBPorts => {
                let side = v.sqrt().round();
                if v <= 0.0 || v.fract() != 0.0 || side * side != v {
                    return Err(cx.key_err(
                        section,
                        "values",
                        format!("k_b_ports values must be positive perfect squares, got {v}"),
                    ));
                }
            }
            SweepAxis::WBArea | SweepAxis::DBMeters => {
                if v <= 0.0 {
                    return Err(cx.key_err(
                        section,
                        "values",
                        format!("{} values must be positive, got {v}", axis.name()),
                    ));
                }
            }
            SweepAxis::GammaBDb | SweepAxis::PTxDbm => {}
        }
    }
    Ok(SweepSpec { axis, values })
}

/// Parse and validate a config. Unknown keys are errors in strict mode and
/// collected warnings otherwise.
pub fn load_config_str(text: &str, strict: bool) -> Result<LoadedConfig> {
    let root: Table = text.parse::<Table>().map_err(|e| Error::Config {
        key: "<toml>".into(),
        line: None,
        message: e.to_string(),
    })?;
    let mut cx = Cx {
        text,
        strict,
        warnings: Vec::new(),
    };

    const TOP: [&str; 9] = [
        "seed",
        "quad_order",
        "mvn_tol",
        "secrecy_rate",
        "path_loss_exponent",
        "bob",
        "eve",
        "power",
        "sweep",
    ];
    check_known(&mut cx, None, &root, &TOP)?;

    let section_table = |cx: &Cx, name: &str| -> Result<Table> {
        match root.get(name) {
            None => Ok(empty_table()),
            Some(Value::Table(t)) => Ok(t.clone()),
            Some(other) => Err(cx.key_err(
                None,
                name,
                format!("expected a table, got {}", other.type_str()),
            )),
        }
    };

    let seed = get_u64(&cx, None, &root, "seed")?;
    let quad_order = get_usize(&cx, None, &root, "quad_order")?.unwrap_or(32);
    let mvn_tol = get_f64(&cx, None, &root, "mvn_tol")?.unwrap_or(1e-3);
    let secrecy_rate = get_f64(&cx, None, &root, "secrecy_rate")?.unwrap_or(1.0);
    let nu = get_f64(&cx, None, &root, "path_loss_exponent")?.unwrap_or(2.1);

    let bob_table = section_table(&cx, "bob")?;
    let eve_table = section_table(&cx, "eve")?;
    let power_table = section_table(&cx, "power")?;

    let bob = parse_node(
        &mut cx,
        "bob",
        &bob_table,
        &NodeDefaults {
            noise_dbm: -30.0,
            k: (2, 2),
            w: (1.0, 1.0),
        },
    )?;
    let eve = parse_node(
        &mut cx,
        "eve",
        &eve_table,
        &NodeDefaults {
            noise_dbm: -20.0,
            k: (2, 2),
            w: (1.0, 1.0),
        },
    )?;

    const POWER_KEYS: [&str; 5] = [
        "p_tx_dbm",
        "alpha",
        "p_circuit_dbm",
        "p_activate_dbm",
        "active_ports",
    ];
    check_known(&mut cx, Some("power"), &power_table, &POWER_KEYS)?;
    let p_tx_w = dbm_to_watts(get_f64(&cx, Some("power"), &power_table, "p_tx_dbm")?.unwrap_or(-27.0));
    let alpha = get_f64(&cx, Some("power"), &power_table, "alpha")?.unwrap_or(1.0);
    let p_circuit_w =
        dbm_to_watts(get_f64(&cx, Some("power"), &power_table, "p_circuit_dbm")?.unwrap_or(20.0));
    let p_activate_w =
        dbm_to_watts(get_f64(&cx, Some("power"), &power_table, "p_activate_dbm")?.unwrap_or(10.0));
    let default_active = match &bob.channel {
        Channel::Mrc { antennas } => *antennas,
        _ => 1,
    };
    let active_ports =
        get_usize(&cx, Some("power"), &power_table, "active_ports")?.unwrap_or(default_active);

    let gamma_b = match bob.gamma_explicit {
        Some(g) => g,
        None => derived_avg_snr(p_tx_w, bob.distance_m, nu, bob.noise_w)?,
    };
    let gamma_e = match eve.gamma_explicit {
        Some(g) => g,
        None => derived_avg_snr(p_tx_w, eve.distance_m, nu, eve.noise_w)?,
    };

    let scenario = SecrecyScenario {
        bob: NodeParams::new(
            NodeRole::Bob,
            bob.channel,
            MarginalModel::rayleigh(bob.eta)?,
            gamma_b,
        )?,
        eve: NodeParams::new(
            NodeRole::Eve,
            eve.channel,
            MarginalModel::rayleigh(eve.eta)?,
            gamma_e,
        )?,
        secrecy_rate,
        power: PowerModel {
            p_tx_w,
            alpha,
            p_circuit_w,
            p_activate_w,
            active_ports,
        },
        quad_order,
        mvn_tol,
        seed: seed.unwrap_or(0),
    };
    scenario
        .validate()
        .map_err(|e| Error::InvalidParameter(format!("config produced an invalid scenario: {e}")))?;

    let sweep = match root.get("sweep") {
        None => None,
        Some(Value::Table(t)) => {
            let spec = parse_sweep(&mut cx, t)?;
            match spec.axis {
                SweepAxis::PTxDbm => {
                    if bob.gamma_explicit.is_some() || eve.gamma_explicit.is_some() {
                        return Err(cx.key_err(
                            Some("sweep"),
                            "axis",
                            "p_tx_dbm sweep re-derives SNRs; remove explicit gamma_db keys",
                        ));
                    }
                }
                SweepAxis::DBMeters => {
                    if bob.gamma_explicit.is_some() {
                        return Err(cx.key_err(
                            Some("sweep"),
                            "axis",
                            "d_b_meters sweep re-derives Bob's SNR; remove bob.gamma_db",
                        ));
                    }
                }
                SweepAxis::KBPorts | SweepAxis::WBArea => {
                    if !matches!(scenario.bob.channel, Channel::Fas { .. }) {
                        return Err(cx.key_err(
                            Some("sweep"),
                            "axis",
                            format!("{} sweep requires bob.channel = \"fas\"", spec.axis.name()),
                        ));
                    }
                }
                SweepAxis::GammaBDb => {}
            }
            Some(spec)
        }
        Some(other) => {
            return Err(cx.key_err(
                None,
                "sweep",
                format!("expected a table, got {}", other.type_str()),
            ))
        }
    };

    Ok(LoadedConfig {
        scenario,
        budget: LinkBudget {
            p_tx_w,
            nu,
            d_b_m: bob.distance_m,
            noise_b_w: bob.noise_w,
            gamma_b_explicit: bob.gamma_explicit.is_some(),
            d_e_m: eve.distance_m,
            noise_e_w: eve.noise_w,
            gamma_e_explicit: eve.gamma_explicit.is_some(),
        },
        sweep,
        seed_explicit: seed.is_some(),
        warnings: cx.warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn empty_config_applies_defaults() {
        let cfg = load_config_str("", true).unwrap();
        let s = &cfg.scenario;
        assert_abs_diff_eq!(s.secrecy_rate, 1.0);
        assert_eq!(s.quad_order, 32);
        assert_abs_diff_eq!(s.mvn_tol, 1e-3);
        assert_eq!(s.seed, 0);
        assert!(!cfg.seed_explicit);
        // Derived SNRs: P = -27 dBm over unit distance, noise -30/-20 dBm.
        assert_abs_diff_eq!(s.bob.avg_snr, 1.9952623149688795, epsilon = 1e-12);
        assert_abs_diff_eq!(s.eve.avg_snr, 0.19952623149688797, epsilon = 1e-13);
        assert_abs_diff_eq!(s.kappa(), 10.0, epsilon = 1e-12);
        // 2x2 grids on 1x1 wavelengths at both nodes.
        assert_eq!(s.bob.channel.branch_count(), 4);
        assert_eq!(s.eve.channel.branch_count(), 4);
        // Power totals from the dBm defaults.
        assert_abs_diff_eq!(s.power.total_power(), 0.11000199526231497, epsilon = 1e-15);
        assert_eq!(s.power.active_ports, 1);
    }

    #[test]
    fn gamma_db_sets_linear_snr() {
        let cfg = load_config_str("[bob]\ngamma_db = 10.0\n", true).unwrap();
        assert_abs_diff_eq!(cfg.scenario.bob.avg_snr, 10.0, epsilon = 1e-12);
        assert!(cfg.budget.gamma_b_explicit);
    }

    #[test]
    fn non_square_ports_demand_factorization() {
        let err = load_config_str("[bob]\nports = 5\n", true).unwrap_err();
        match err {
            Error::Config { key, line, message } => {
                assert_eq!(key, "bob.ports");
                assert_eq!(line, Some(2));
                assert!(message.contains("k1 x k2"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
        // Explicit rectangular factorization is fine.
        let cfg = load_config_str("[bob]\nk1 = 1\nk2 = 5\nw2 = 2.0\n", true).unwrap();
        assert_eq!(cfg.scenario.bob.channel.branch_count(), 5);
    }

    #[test]
    fn unknown_keys_strict_vs_lenient() {
        let text = "typo_key = 3\n";
        let err = load_config_str(text, true).unwrap_err();
        match err {
            Error::Config { key, line, .. } => {
                assert_eq!(key, "typo_key");
                assert_eq!(line, Some(1));
            }
            other => panic!("unexpected {other:?}"),
        }
        let cfg = load_config_str(text, false).unwrap();
        assert_eq!(cfg.warnings.len(), 1);
    }

    #[test]
    fn contradictory_snr_keys_rejected() {
        let err =
            load_config_str("[bob]\ngamma_db = 10.0\nnoise_dbm = -30.0\n", true).unwrap_err();
        match err {
            Error::Config { key, .. } => assert_eq!(key, "bob.gamma_db"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn benchmark_channels_parse() {
        let cfg = load_config_str("[bob]\nchannel = \"mrc\"\nantennas = 4\n", true).unwrap();
        assert_eq!(cfg.scenario.bob.channel, Channel::mrc(4).unwrap());
        assert_eq!(cfg.scenario.power.active_ports, 4);

        let cfg = load_config_str("[eve]\nchannel = \"sc\"\nantennas = 2\n", true).unwrap();
        assert_eq!(cfg.scenario.eve.channel, Channel::sc(2).unwrap());

        let err = load_config_str("[bob]\nchannel = \"mrc\"\nk1 = 2\n", true).unwrap_err();
        assert!(matches!(err, Error::Config { .. }));
    }

    #[test]
    fn sweep_specs() {
        let cfg = load_config_str(
            "[sweep]\naxis = \"gamma_b_db\"\nvalues = [0.0, 10.0, 20.0]\n",
            true,
        )
        .unwrap();
        let sw = cfg.sweep.unwrap();
        assert_eq!(sw.axis, SweepAxis::GammaBDb);
        assert_eq!(sw.values, vec![0.0, 10.0, 20.0]);

        let cfg = load_config_str(
            "[sweep]\naxis = \"w_b_area\"\nstart = 1.0\nstop = 100.0\ncount = 3\nscale = \"log\"\n",
            true,
        )
        .unwrap();
        let sw = cfg.sweep.unwrap();
        assert_abs_diff_eq!(sw.values[1], 10.0, epsilon = 1e-12);

        let err = load_config_str(
            "[sweep]\naxis = \"k_b_ports\"\nvalues = [4, 5]\n",
            true,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Config { .. }));

        let err = load_config_str(
            "[bob]\ngamma_db = 3.0\n[sweep]\naxis = \"p_tx_dbm\"\nvalues = [-30.0]\n",
            true,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Config { .. }));
    }

    #[test]
    fn db_conversions() {
        assert_abs_diff_eq!(db_to_linear(10.0), 10.0, epsilon = 1e-12);
        assert_abs_diff_eq!(db_to_linear(0.0), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(dbm_to_watts(30.0), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(dbm_to_watts(-27.0), 1.9952623149688828e-6, epsilon = 1e-20);
    }
}
