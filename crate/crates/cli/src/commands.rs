//! Subcommand bodies. Each returns the text written to stdout.

use std::fmt;
use std::fs;

use cdkernel::deviations::{edge_point, large_deviation, moderate_deviation, oracle_exceedance, tracy_widom, tw2_tail};
use cdkernel::equilibrium::{solve_mrs_with_order, EquilibriumData, DEFAULT_MRS_TOL};
use cdkernel::kernel_asym::AsymptoticKernel;
use cdkernel::oracle::build_recurrence;
use cdkernel::Error;

use crate::config::{ConfigError, Grid, RunConfig};
use crate::formats::{empty_cells, metadata_line, num, scaled_cells, to_json, EquilibriumJson, RecurrenceJson, Table};
use crate::selftest;
use crate::svg::{LinePlot, Series};

pub const DEFAULT_EQ_GRID: &str = "-1.5:1.5:0.01";
pub const DEFAULT_DENSITY_GRID: &str = "-1.2:1.2:0.01";
pub const DEFAULT_GAP_GRID: &str = "0.8:1.4:0.02";
pub const DEFAULT_TW_RANGE: &str = "-6:8:0.1";
pub const DEFAULT_DEV_RANGE: &str = "1:6:0.5";
pub const DEFAULT_GAP_M: usize = 60;
pub const DEFAULT_TW_M: usize = 40;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Numerical(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e.0)
    }
}

trait Context<T> {
    fn ctx(self, what: &str) -> Result<T, CliError>;
}

impl<T> Context<T> for Result<T, Error> {
    fn ctx(self, what: &str) -> Result<T, CliError> {
        self.map_err(|e| CliError::Numerical(format!("{what}: {e}")))
    }
}

fn write_file(path: &str, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Config(format!("cannot write {path}: {e}")))
}

/// Sends `text` to `--out` when given, otherwise returns it for stdout.
fn emit(cfg: &RunConfig, text: String) -> Result<String, CliError> {
    match &cfg.out {
        Some(p) => {
            write_file(p, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn plot(cfg: &RunConfig, p: LinePlot) -> Result<(), CliError> {
    match &cfg.plot {
        Some(path) => write_file(path, &p.render()),
        None => Ok(()),
    }
}

fn grid_or(g: Option<Grid>, default: &str) -> Grid {
    g.unwrap_or_else(|| Grid::parse(default).expect("default grid"))
}

fn equilibrium(cfg: &RunConfig) -> Result<EquilibriumData, CliError> {
    let pot = cfg.build_potential()?;
    let e = solve_mrs_with_order(&pot, DEFAULT_MRS_TOL, None, cfg.quad_order).ctx("equilibrium")?;
    EquilibriumData::build(&pot, e, cfg.quad_order).ctx("equilibrium")
}

fn log10(v: cdkernel::ScaledReal) -> f64 {
    v.ln_abs() / std::f64::consts::LN_10
}

pub fn run(cfg: &RunConfig) -> Result<String, CliError> {
    match cfg.command.as_str() {
        "equilibrium" => cmd_equilibrium(cfg),
        "density" => cmd_density(cfg),
        "kernel" => cmd_kernel(cfg),
        "oracle" => cmd_oracle(cfg),
        "gap" => cmd_gap(cfg),
        "tw" => cmd_tw(cfg),
        "deviations" => cmd_deviations(cfg),
        "selftest" => cmd_selftest(),
        other => Err(CliError::Config(format!("unknown command {other:?}"))),
    }
}

fn cmd_equilibrium(cfg: &RunConfig) -> Result<String, CliError> {
    let eq = equilibrium(cfg)?;
    if let Some(path) = &cfg.table {
        let map = eq.map();
        let mut t = Table::new(&["x", "lambda", "rho", "xi", "eta"]);
        for x in grid_or(cfg.grid, DEFAULT_EQ_GRID).points() {
            let eta = if eq.domain().contains(x) { num(eq.eta(x).ctx("eta")?) } else { String::new() };
            t.push(vec![num(x), num(map.to_outer(x)), num(eq.rho(x)), num(eq.xi(x)), eta]);
        }
        write_file(path, &t.to_csv(&metadata_line(cfg, &[])))?;
    }
    let json = to_json(&EquilibriumJson::from_data(&eq));
    match &cfg.json {
        Some(p) => {
            write_file(p, &json)?;
            Ok(String::new())
        }
        None => emit(cfg, json),
    }
}

fn cmd_density(cfg: &RunConfig) -> Result<String, CliError> {
    let n = cfg.require_n()?;
    let eq = equilibrium(cfg)?;
    let ak = AsymptoticKernel::new(&eq, n, cfg.delta).ctx("asymptotic kernel")?;
    let mut t = Table::new(&["x", "value_mantissa", "value_log2", "regime", "correction_scale"]);
    let mut pts = Vec::new();
    for x in grid_or(cfg.grid, DEFAULT_DENSITY_GRID).points() {
        let d = ak.density(x).ctx(&format!("density at x = {x}"))?;
        let [m, e] = scaled_cells(d.value);
        t.push(vec![num(x), m, e, d.regime.as_str().to_string(), num(d.correction_scale)]);
        pts.push((x, log10(d.value)));
    }
    plot(
        cfg,
        LinePlot {
            title: format!("density, N = {n}"),
            x_label: "x".into(),
            y_label: "log10 K(x,x)".into(),
            series: vec![Series { label: "asymptotic".into(), points: pts }],
        },
    )?;
    emit(cfg, t.to_csv(&metadata_line(cfg, &[("n", n.to_string())])))
}

fn cmd_kernel(cfg: &RunConfig) -> Result<String, CliError> {
    let n = cfg.require_n()?;
    let x = cfg.x.unwrap_or(0.0);
    let eq = equilibrium(cfg)?;
    let ak = AsymptoticKernel::new(&eq, n, cfg.delta).ctx("asymptotic kernel")?;
    let mut t = Table::new(&[
        "y",
        "kernel_mantissa",
        "kernel_log2",
        "regime",
        "branch",
        "correction_scale",
        "k1_mantissa",
        "k1_log2",
        "k2_mantissa",
        "k2_log2",
    ]);
    for y in grid_or(cfg.grid, DEFAULT_DENSITY_GRID).points() {
        let kv = match ak.leading_kernel(x, y) {
            Err(Error::MixedRegime { .. }) => ak.kernel_from_k(x, y),
            r => r,
        }
        .ctx(&format!("kernel at ({x}, {y})"))?;
        let k = ak.k_vector(y).ctx(&format!("k-vector at {y}"))?;
        let [m, e] = scaled_cells(kv.value);
        let [k1m, k1e] = scaled_cells(k.k1);
        let [k2m, k2e] = scaled_cells(k.k2);
        t.push(vec![num(y), m, e, kv.regime.as_str().into(), kv.branch.into(), num(kv.correction_scale), k1m, k1e, k2m, k2e]);
    }
    emit(cfg, t.to_csv(&metadata_line(cfg, &[("n", n.to_string()), ("x", num(x))])))
}

fn cmd_oracle(cfg: &RunConfig) -> Result<String, CliError> {
    let n = cfg.require_n()?;
    let n_max = cfg.n_max.unwrap_or(n as usize);
    let eq = equilibrium(cfg)?;
    let map = eq.map();
    let h = map.half_width();
    let tab = build_recurrence(eq.potential(), n, n_max).ctx("recurrence")?;
    if let Some(p) = &cfg.json {
        write_file(p, &to_json(&RecurrenceJson::from_table(&tab)))?;
    }
    let ak = if cfg.compare { Some(AsymptoticKernel::new(&eq, n, cfg.delta).ctx("asymptotic kernel")?) } else { None };
    let mut header = vec!["x", "lambda", "oracle_mantissa", "oracle_log2"];
    if ak.is_some() {
        header.extend(["asymptotic_mantissa", "asymptotic_log2", "regime", "rel_error"]);
    }
    let mut t = Table::new(&header);
    let (mut exact_pts, mut asym_pts) = (Vec::new(), Vec::new());
    for y in grid_or(cfg.grid, DEFAULT_DENSITY_GRID).points() {
        let (ox, oy) = (map.to_outer(cfg.x.unwrap_or(y)), map.to_outer(y));
        let exact = tab.kernel(ox, oy).ctx(&format!("oracle kernel at {y}"))?.scale(h);
        let [m, e] = scaled_cells(exact);
        let mut row = vec![num(y), num(oy), m, e];
        exact_pts.push((y, log10(exact)));
        if let Some(ak) = &ak {
            let xv = cfg.x.unwrap_or(y);
            let kv = match ak.leading_kernel(xv, y) {
                Err(Error::MixedRegime { .. }) => ak.kernel_from_k(xv, y),
                r => r,
            }
            .ctx(&format!("asymptotic kernel at {y}"))?;
            let [am, ae] = scaled_cells(kv.value);
            let rel = ((kv.value - exact) / exact).to_f64().abs();
            row.extend([am, ae, kv.regime.as_str().to_string(), num(rel)]);
            asym_pts.push((y, log10(kv.value)));
        }
        t.push(row);
    }
    let mut series = vec![Series { label: "oracle".into(), points: exact_pts }];
    if !asym_pts.is_empty() {
        series.push(Series { label: "asymptotic".into(), points: asym_pts });
    }
    plot(cfg, LinePlot { title: format!("kernel, N = {n}"), x_label: "x".into(), y_label: "log10 |K|".into(), series })?;
    let mut extra = vec![("n", n.to_string()), ("n_max", n_max.to_string()), ("oracle_grid", tab.grid_size().to_string())];
    if let Some(x) = cfg.x {
        extra.push(("x", num(x)));
    }
    emit(cfg, t.to_csv(&metadata_line(cfg, &extra)))
}

fn cmd_gap(cfg: &RunConfig) -> Result<String, CliError> {
    let n = cfg.require_n()?;
    let m = cfg.m.unwrap_or(DEFAULT_GAP_M);
    let eq = equilibrium(cfg)?;
    let map = eq.map();
    let tab = build_recurrence(eq.potential(), n, n as usize).ctx("recurrence")?;
    let mut t = Table::new(&["x", "lambda", "probability", "complement_mantissa", "complement_log2", "abs_change"]);
    let mut pts = Vec::new();
    for x in grid_or(cfg.grid, DEFAULT_GAP_GRID).points() {
        let g = tab.gap_probability(map.to_outer(x), f64::INFINITY, m).ctx(&format!("gap probability at {x}"))?;
        let [cm, ce] = scaled_cells(g.complement);
        t.push(vec![num(x), num(map.to_outer(x)), num(g.probability), cm, ce, num(g.abs_change)]);
        pts.push((x, log10(g.complement)));
    }
    plot(
        cfg,
        LinePlot {
            title: format!("largest eigenvalue tail, N = {n}"),
            x_label: "x".into(),
            y_label: "log10 P(max > x)".into(),
            series: vec![Series { label: "oracle".into(), points: pts }],
        },
    )?;
    emit(cfg, t.to_csv(&metadata_line(cfg, &[("n", n.to_string()), ("m", m.to_string())])))
}

fn cmd_tw(cfg: &RunConfig) -> Result<String, CliError> {
    let m = cfg.m.unwrap_or(DEFAULT_TW_M);
    let mut t = Table::new(&["s", "cdf", "complement_mantissa", "complement_log2", "tail_mantissa", "tail_log2"]);
    let (mut comp, mut tail) = (Vec::new(), Vec::new());
    for s in grid_or(cfg.range, DEFAULT_TW_RANGE).points() {
        let tw = tracy_widom(s, m).ctx(&format!("Tracy-Widom at s = {s}"))?;
        let [cm, ce] = scaled_cells(tw.complement);
        let [tm, te] = if s > 0.0 {
            let v = tw2_tail(s).ctx("tail")?;
            tail.push((s, log10(v)));
            scaled_cells(v)
        } else {
            empty_cells()
        };
        comp.push((s, log10(tw.complement)));
        t.push(vec![num(s), num(tw.cdf), cm, ce, tm, te]);
    }
    plot(
        cfg,
        LinePlot {
            title: "Tracy-Widom upper tail".into(),
            x_label: "s".into(),
            y_label: "log10 (1 - F2)".into(),
            series: vec![Series { label: "1 - F2".into(), points: comp }, Series { label: "leading tail".into(), points: tail }],
        },
    )?;
    emit(cfg, t.to_csv(&metadata_line(cfg, &[("m", m.to_string())])))
}

fn cmd_deviations(cfg: &RunConfig) -> Result<String, CliError> {
    let n = cfg.require_n()?;
    let m = cfg.m.unwrap_or(DEFAULT_GAP_M);
    let eq = equilibrium(cfg)?;
    let tab = build_recurrence(eq.potential(), n, n as usize).ctx("recurrence")?;
    let mut t = Table::new(&[
        "s",
        "x",
        "moderate_mantissa",
        "moderate_log2",
        "moderate_error_scale",
        "moderate_valid",
        "large_mantissa",
        "large_log2",
        "large_error_scale",
        "oracle_mantissa",
        "oracle_log2",
    ]);
    let (mut mo, mut la, mut or) = (Vec::new(), Vec::new(), Vec::new());
    for s in grid_or(cfg.range, DEFAULT_DEV_RANGE).points() {
        let x = edge_point(&eq, n, s);
        let md = moderate_deviation(n, s).ctx(&format!("moderate deviation at s = {s}"))?;
        let (lcells, lscale) = match large_deviation(&eq, n, x) {
            Ok(r) => {
                la.push((s, log10(r.value)));
                (scaled_cells(r.value), num(r.error_scale))
            }
            Err(Error::Domain { .. }) => (empty_cells(), String::new()),
            Err(e) => return Err(CliError::Numerical(format!("large deviation at s = {s}: {e}"))),
        };
        let o = oracle_exceedance(&eq, &tab, x, m).ctx(&format!("oracle exceedance at s = {s}"))?;
        mo.push((s, log10(md.value)));
        or.push((s, log10(o.value)));
        let [mm, me] = scaled_cells(md.value);
        let [lm, le] = lcells;
        let [om, oe] = scaled_cells(o.value);
        t.push(vec![num(s), num(x), mm, me, num(md.error_scale), md.regime_valid.to_string(), lm, le, lscale, om, oe]);
    }
    plot(
        cfg,
        LinePlot {
            title: format!("largest eigenvalue deviations, N = {n}"),
            x_label: "s".into(),
            y_label: "log10 probability".into(),
            series: vec![
                Series { label: "oracle".into(), points: or },
                Series { label: "moderate".into(), points: mo },
                Series { label: "large".into(), points: la },
            ],
        },
    )?;
    emit(cfg, t.to_csv(&metadata_line(cfg, &[("n", n.to_string()), ("m", m.to_string())])))
}

fn cmd_selftest() -> Result<String, CliError> {
    let results = selftest::run_all();
    let mut out = String::new();
    for r in &results {
        out.push_str(&r.line());
        out.push('\n');
    }
    let failed: Vec<String> = results.iter().filter(|r| !r.passed).map(|r| r.id.to_string()).collect();
    if failed.is_empty() {
        out.push_str("all criteria passed\n");
        Ok(out)
    } else {
        Err(CliError::Numerical(format!("\n{out}criteria failed: {}", failed.join(", "))))
    }
}
