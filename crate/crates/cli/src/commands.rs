// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use holonomy_core::device::{
    angular_to_ghz, dispersive_shift, CavityParams, FluxBias, QubitWorkingPoint, TransmonParams,
};
use holonomy_core::dynamics::two_loop_dynamics;
use holonomy_core::holonomy::{loop_pair, sweep_pd, SweepTable};
use rayon::prelude::*;

use crate::config::{DeviceConfig, DynamicsConfig, RunConfig, SweepConfig};
use crate::format::{csv_number, report_number};
use crate::{CliError, Command, CommonArgs};

pub const SWEEP_FILE: &str = "sweep.csv";
pub const DYNAMICS_FILE: &str = "dynamics.csv";
const SWEEP_HEADER: &str = "alpha,beta,p_d,p,p_prime,steps";
const DYNAMICS_HEADER: &str = "omega0_tau,p_d_dynamics,p_d_wilson,abs_error,leakage";

type Result<T> = std::result::Result<T, CliError>;

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_path_buf(), source }
}

fn say(out: &mut dyn Write, line: std::fmt::Arguments) -> Result<()> {
    writeln!(out, "{line}").map_err(io_err(Path::new("<stdout>")))
}

pub fn run(command: &Command, out: &mut dyn Write) -> Result<()> {
    let (Command::Device(args) | Command::Sweep(args) | Command::Dynamics(args)) = command;
    let text = fs::read(&args.config).map_err(io_err(&args.config))?;
    let config = RunConfig::parse_bytes(&text)?;
    let body = |out: &mut dyn Write| match command {
        Command::Device(_) => cmd_device(config.require_device()?, out),
        Command::Sweep(_) => {
            let mut sweep = config.require_sweep()?.clone();
            if let Some(n) = args.steps {
                sweep.steps = n as usize;
            }
            cmd_sweep(&sweep, &output_dir(&config, args), out)
        }
        Command::Dynamics(_) => {
            let mut dynamics = config.require_dynamics()?.clone();
            if let Some(n) = args.steps {
                dynamics.steps = n as usize;
            }
            cmd_dynamics(&dynamics, &output_dir(&config, args), out)
        }
    };
    let mut buffer = Vec::new();
    let result = match args.threads {
        None => body(&mut buffer),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k as usize)
            .build()
            .expect("thread pool")
            .install(|| body(&mut buffer)),
    };
    out.write_all(&buffer).map_err(io_err(Path::new("<stdout>")))?;
    result
}

fn output_dir(config: &RunConfig, args: &CommonArgs) -> PathBuf {
    args.out.clone().or_else(|| config.output_dir.clone()).unwrap_or_else(|| PathBuf::from("."))
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(io_err(&path))?;
    Ok(path)
}

pub fn cmd_device(device: &DeviceConfig, out: &mut dyn Write) -> Result<()> {
    let cavity = CavityParams::from_ghz(device.cavity_ghz)?;
    say(out, format_args!("cavity ω_r/2π = {} GHz", report_number(device.cavity_ghz)))?;
    for (k, q) in device.qubits.iter().enumerate() {
        let params = TransmonParams::calibrated(q.e_c_ghz, q.e_j_max_ghz, q.coupling_ghz, FluxBias(0.0))?;
        let point = QubitWorkingPoint::from_device(&params, &cavity, FluxBias(q.flux_bias))?;
        let chi = dispersive_shift(point.g0, point.delta0)?;
        say(out, format_args!("qubit {} (Φ/Φ₀ = {})", k + 1, q.flux_bias))?;
        say(out, format_args!("  ε/2π = {} GHz", report_number(angular_to_ghz(point.eps0))))?;
        say(out, format_args!("  g/2π = {} GHz", report_number(angular_to_ghz(point.g0))))?;
        say(out, format_args!("  Δ/2π = {} GHz", report_number(angular_to_ghz(point.delta0))))?;
        say(out, format_args!("  η = {}", report_number(point.eta)))?;
        say(out, format_args!("  χ/2π = {} GHz", report_number(angular_to_ghz(chi))))?;
    }
    Ok(())
}

pub fn sweep_csv(table: &SweepTable) -> String {
    let mut s = String::from(SWEEP_HEADER);
    s.push('\n');
    for (i, &a) in table.alphas.iter().enumerate() {
        for (j, &b) in table.betas.iter().enumerate() {
            let row = [a, b, table.p_d[i][j], table.p[i][j], table.p_prime[i][j]].map(csv_number);
            s.push_str(&row.join(","));
            s.push_str(&format!(",{}\n", table.steps));
        }
    }
    s
}

pub fn cmd_sweep(sweep: &SweepConfig, dir: &Path, out: &mut dyn Write) -> Result<()> {
    let table = sweep_pd(&sweep.alphas.points(), &sweep.betas.points(), sweep.steps)?;
    let path = write_file(dir, SWEEP_FILE, &sweep_csv(&table))?;
    let (a, b, pd) = table.maximum();
    say(out, format_args!("wrote {}", path.display()))?;
    say(out, format_args!("maximum P_d = {} at α = {}, β = {}", report_number(pd), report_number(a), report_number(b)))
}

/// One line of the dynamics table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DynamicsRow {
    pub omega0_tau: f64,
    pub p_d_dynamics: f64,
    pub p_d_wilson: f64,
    pub abs_error: f64,
    pub leakage: f64,
}

pub fn dynamics_rows(d: &DynamicsConfig) -> Result<Vec<DynamicsRow>> {
    let wilson = loop_pair(d.alpha, d.beta, d.steps)?.p_d;
    d.omega0_tau
        .par_iter()
        .map(|&w| {
            let steps = ((w * d.steps_per_unit).ceil() as usize).max(2);
            let run = two_loop_dynamics(d.alpha, d.beta, w, steps)?;
            Ok(DynamicsRow {
                omega0_tau: w,
                p_d_dynamics: run.p_d,
                p_d_wilson: wilson,
                abs_error: (run.p_d - wilson).abs(),
                leakage: run.leakage,
            })
        })
        .collect()
}

/// Absolute error never grows with Ω₀τ.
pub fn converges(rows: &[DynamicsRow]) -> bool {
    rows.windows(2).all(|w| w[1].abs_error <= w[0].abs_error)
}

pub fn dynamics_csv(rows: &[DynamicsRow]) -> String {
    let mut s = String::from(DYNAMICS_HEADER);
    s.push('\n');
    for r in rows {
        let fields = [r.omega0_tau, r.p_d_dynamics, r.p_d_wilson, r.abs_error, r.leakage].map(csv_number);
        s.push_str(&fields.join(","));
        s.push('\n');
    }
    s
}

pub fn cmd_dynamics(d: &DynamicsConfig, dir: &Path, out: &mut dyn Write) -> Result<()> {
    let rows = dynamics_rows(d)?;
    let path = write_file(dir, DYNAMICS_FILE, &dynamics_csv(&rows))?;
    say(out, format_args!("wrote {}", path.display()))?;
    for r in &rows {
        say(
            out,
            format_args!(
                "Ω₀τ = {}: P_d = {} (holonomy {}), error {}, leakage {}",
                r.omega0_tau,
                report_number(r.p_d_dynamics),
                report_number(r.p_d_wilson),
                report_number(r.abs_error),
                report_number(r.leakage)
            ),
        )?;
    }
    say(out, format_args!("convergence: {}", if converges(&rows) { "PASS" } else { "FAIL" }))
}
