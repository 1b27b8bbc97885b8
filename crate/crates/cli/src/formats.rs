//! CSV tables with a metadata line, and JSON dumps of the cached objects.

use std::fmt::Write as _;

use cdkernel::equilibrium::EquilibriumData;
use cdkernel::oracle::RecurrenceTable;
use cdkernel::ScaledReal;
use serde::Serialize;

use crate::config::RunConfig;

/// Table written as CSV; every cell is preformatted.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// CSV text, starting with the `#` metadata line.
    pub fn to_csv(&self, meta: &str) -> String {
        let mut s = String::new();
        s.push_str(meta);
        s.push('\n');
        s.push_str(&self.header.join(","));
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.join(","));
            s.push('\n');
        }
        s
    }
}

/// `# key=value ...` line identifying the producing run.
pub fn metadata_line(cfg: &RunConfig, extra: &[(&str, String)]) -> String {
    let mut s = String::from("#");
    let _ = write!(
        s,
        " cdk={} cdkernel={} command={} config_sha256={} quad_order={}",
        env!("CARGO_PKG_VERSION"),
        cdkernel::VERSION,
        cfg.command,
        cfg.hash(),
        cfg.quad_order
    );
    for (k, v) in extra {
        let _ = write!(s, " {k}={v}");
    }
    s
}

pub fn num(x: f64) -> String {
    format!("{x}")
}

/// Mantissa and binary exponent cells of a scaled value.
pub fn scaled_cells(v: ScaledReal) -> [String; 2] {
    [num(v.mantissa()), v.log2_scale().to_string()]
}

pub fn empty_cells<const K: usize>() -> [String; K] {
    std::array::from_fn(|_| String::new())
}

#[derive(Serialize)]
pub struct EquilibriumJson {
    pub potential: String,
    pub a: f64,
    pub b: f64,
    pub residual_norm: f64,
    pub newton_iters: usize,
    pub gamma_plus: f64,
    pub gamma_minus: f64,
    pub lagrange_l: f64,
    pub d_min: f64,
    pub sigma_hat: f64,
    pub quad_order: usize,
    pub g_domain: [f64; 2],
    pub g_coeffs: Vec<f64>,
}

impl EquilibriumJson {
    pub fn from_data(eq: &EquilibriumData) -> Self {
        let e = eq.endpoints();
        let d = eq.g_series().domain();
        EquilibriumJson {
            potential: eq.potential().label().to_string(),
            a: e.a,
            b: e.b,
            residual_norm: e.residual_norm,
            newton_iters: e.newton_iters,
            gamma_plus: eq.gamma_plus(),
            gamma_minus: eq.gamma_minus(),
            lagrange_l: eq.lagrange_l(),
            d_min: eq.d_min(),
            sigma_hat: eq.sigma_hat(),
            quad_order: eq.quad_order(),
            g_domain: [d.0, d.1],
            g_coeffs: eq.g_coeffs().to_vec(),
        }
    }
}

#[derive(Serialize)]
pub struct RecurrenceJson {
    pub potential: String,
    pub n_weight: u32,
    pub n_max: usize,
    pub alphas: Vec<f64>,
    /// `β_0` is the total mass; see `ln_beta0` when it under- or overflows.
    pub betas: Vec<f64>,
    pub ln_beta0: f64,
    pub truncation: [f64; 2],
    pub grid_size: usize,
    pub max_rel_change: f64,
}

impl RecurrenceJson {
    pub fn from_table(t: &RecurrenceTable) -> Self {
        RecurrenceJson {
            potential: t.potential().label().to_string(),
            n_weight: t.n_weight(),
            n_max: t.n_max(),
            alphas: t.alphas().to_vec(),
            betas: t.betas().to_vec(),
            ln_beta0: t.ln_beta0(),
            truncation: [t.truncation().lo(), t.truncation().hi()],
            grid_size: t.grid_size(),
            max_rel_change: t.max_rel_change(),
        }
    }
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
