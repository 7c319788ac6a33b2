//! Command-line front end: argument parsing, subcommand dispatch, CSV/JSON
//! emission for the figure data, and the errata report.
//!
//! Exit codes: 0 success, 2 argument error, 3 domain error (for instance a
//! degenerate ground state at zero field), 4 numerical failure.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::entanglement::{
    closed_form_concurrence, thermal_state, wootters_concurrence,
};
use crate::error::Error;
use crate::linalg::herm_eigensolve;
use crate::model::{
    analytic_energies, consistency_report, ground_amplitudes, hamiltonian_spin32,
    hamiltonian_two_qubit, resonance_frequencies, spin32_operators, Mode, ModelParams,
};
use crate::pauli::decompose;
use crate::scan::{
    critical_beta, cu63_temperature, phase_boundary, sweep_pure, sweep_thermal, AxisSpec,
    Convention, GridSpec, DEFAULT_BETA_TOL,
};

#[derive(Debug, Parser)]
#[command(
    name = "qspin",
    about = "Spin-3/2 in quadrupole + Zeeman fields as two fictitious spins: spectra, concurrence, thermal phase diagram",
    version
)]
struct Cli {
    /// Output format for tabular results.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Output path ("-" for stdout).
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Significant digits in CSV output.
    #[arg(long, global = true, default_value_t = 9)]
    digits: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Pauli-product coefficients of a named operator.
    Decompose(DecomposeArgs),
    /// Energy levels: corrected closed form and Jacobi spectrum.
    Spectrum(PointArgs),
    /// Ground-state amplitudes and their concurrence.
    Ground(GroundArgs),
    /// Closed-form ground-state concurrence.
    Concurrence(ConcurrenceArgs),
    /// Thermal (Wootters) concurrence at one parameter point.
    Thermal(ThermalArgs),
    /// Critical inverse temperature over a list of fields.
    Boundary(BoundaryArgs),
    /// Ground-state concurrence surface over (alpha, eta).
    SweepPure(SweepPureArgs),
    /// Thermal concurrence table over (alpha, beta, eta).
    SweepThermal(SweepThermalArgs),
    /// Numerical adjudication of the printed closed forms.
    Report(ReportArgs),
    /// Kelvin estimate for 63Cu from beta and the quadrupole coupling.
    Cu63(Cu63Args),
    /// Run the invariant suite.
    Check,
}

#[derive(Debug, Args)]
struct DecomposeArgs {
    /// Operator name: ix | iy | iz | hq | hx | h.
    #[arg(long)]
    operator: String,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 0.14)]
    eta: f64,
    #[arg(long, default_value_t = Mode::Paper)]
    mode: Mode,
}

#[derive(Debug, Args)]
struct PointArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    eta: f64,
    #[arg(long, default_value_t = Mode::Paper)]
    mode: Mode,
}

#[derive(Debug, Args)]
struct GroundArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    eta: f64,
    /// Quadrupole coupling in MHz; adds dimensional resonance columns.
    #[arg(long)]
    omega_q_mhz: Option<f64>,
}

#[derive(Debug, Args)]
struct ReportArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    eta: f64,
}

#[derive(Debug, Args)]
struct ConcurrenceArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    eta: f64,
    /// Decimal places for the plain-text value.
    #[arg(long, default_value_t = 6)]
    precision: usize,
}

#[derive(Debug, Args)]
struct ThermalArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long, default_value_t = 0.14)]
    eta: f64,
    #[arg(long)]
    beta: f64,
    #[arg(long, default_value_t = Mode::Paper)]
    mode: Mode,
    #[arg(long, default_value_t = 6)]
    precision: usize,
}

#[derive(Debug, Args)]
struct BoundaryArgs {
    /// Field values, comma separated and ascending.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    alpha: Vec<f64>,
    #[arg(long, default_value_t = 0.14)]
    eta: f64,
    #[arg(long, default_value_t = Mode::Paper)]
    mode: Mode,
    /// Bisection tolerance on beta.
    #[arg(long, default_value_t = DEFAULT_BETA_TOL)]
    tol: f64,
    /// fig4: log-spaced alpha in [0.1, 100].
    #[arg(long)]
    preset: Option<BoundaryPreset>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BoundaryPreset {
    Fig4,
}

#[derive(Debug, Args)]
struct SweepPureArgs {
    #[arg(long, default_value_t = 0.05)]
    alpha_min: f64,
    #[arg(long, default_value_t = 5.0)]
    alpha_max: f64,
    #[arg(long, default_value_t = 100)]
    alpha_count: usize,
    #[arg(long, default_value_t = 0.0)]
    eta_min: f64,
    #[arg(long, default_value_t = 1.0)]
    eta_max: f64,
    #[arg(long, default_value_t = 21)]
    eta_count: usize,
    #[arg(long, default_value_t = Mode::Paper)]
    mode: Mode,
    /// fig1: the default grid, alpha in [0.05, 5] x eta in [0, 1].
    #[arg(long)]
    preset: Option<PurePreset>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PurePreset {
    Fig1,
}

#[derive(Debug, Args)]
struct SweepThermalArgs {
    #[arg(long, default_value_t = 0.05)]
    alpha_min: f64,
    #[arg(long, default_value_t = 5.0)]
    alpha_max: f64,
    #[arg(long, default_value_t = 60)]
    alpha_count: usize,
    #[arg(long, default_value_t = 0.05)]
    beta_min: f64,
    #[arg(long, default_value_t = 4.0)]
    beta_max: f64,
    #[arg(long, default_value_t = 60)]
    beta_count: usize,
    /// Fixed asymmetry for the whole sweep (figures 3, 5, 6 use 0.14).
    #[arg(long, default_value_t = 0.14)]
    eta: f64,
    #[arg(long, default_value_t = Mode::Paper)]
    mode: Mode,
    /// fig3: the default (alpha, beta) plane; fig5: C_T(beta) at alpha in
    /// {1,2,3,4}; fig6: C_T(alpha) at beta in {1,2,3,4}.
    #[arg(long)]
    preset: Option<ThermalPreset>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ThermalPreset {
    Fig3,
    Fig5,
    Fig6,
}

/// Entry point used by the binary; returns the process exit code.
pub fn run(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };

    if let Ok(threads) = std::env::var("QSPIN_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }

    match dispatch(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("qspin: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(), Error> {
    let sink = Sink {
        format: cli.format,
        output: cli.output.clone(),
        digits: cli.digits.max(1),
    };
    match &cli.command {
        Command::Decompose(a) => cmd_decompose(a, &sink),
        Command::Spectrum(a) => cmd_spectrum(a, &sink),
        Command::Ground(a) => cmd_ground(a, &sink),
        Command::Concurrence(a) => cmd_concurrence(a, &sink),
        Command::Thermal(a) => cmd_thermal(a, &sink),
        Command::Boundary(a) => cmd_boundary(a, &sink),
        Command::SweepPure(a) => cmd_sweep_pure(a, &sink),
        Command::SweepThermal(a) => cmd_sweep_thermal(a, &sink),
        Command::Report(a) => cmd_report(a, &sink),
        Command::Cu63(a) => cmd_cu63(a, &sink),
        Command::Check => cmd_check(),
    }
}

// ---------------------------------------------------------------------
// Output plumbing
// ---------------------------------------------------------------------

struct Sink {
    format: Format,
    output: Option<PathBuf>,
    digits: usize,
}

impl Sink {
    fn emit(&self, text: &str) -> Result<(), Error> {
        let is_stdout = match &self.output {
            None => true,
            Some(p) => p.as_os_str() == "-",
        };
        let io_err = |e: std::io::Error| Error::InvalidParams {
            reason: format!("cannot write output: {e}"),
        };
        if is_stdout {
            std::io::stdout().write_all(text.as_bytes()).map_err(io_err)
        } else {
            std::fs::write(self.output.as_ref().unwrap(), text).map_err(io_err)
        }
    }

    /// CSV with a header row, '.' decimal separator, newline-terminated
    /// rows; or a JSON array of row objects with the same keys.
    fn table<T: Serialize>(&self, header: &str, rows: &[T]) -> Result<(), Error> {
        match self.format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
                s.push('\n');
                self.emit(&s)
            }
            Format::Csv => {
                let mut s = String::new();
                s.push_str(header);
                s.push('\n');
                for row in rows {
                    let v = serde_json::to_value(row).expect("rows serialize");
                    let obj = v.as_object().expect("row is an object");
                    let mut first = true;
                    for key in header.split(',') {
                        if !first {
                            s.push(',');
                        }
                        first = false;
                        match obj.get(key) {
                            Some(serde_json::Value::Number(n)) => {
                                s.push_str(&fmt_sig(n.as_f64().unwrap(), self.digits));
                            }
                            Some(serde_json::Value::String(t)) => s.push_str(t),
                            Some(serde_json::Value::Null) | None => {}
                            Some(other) => s.push_str(&other.to_string()),
                        }
                    }
                    s.push('\n');
                }
                self.emit(&s)
            }
        }
    }
}

/// printf("%.{sig}g")-style formatting: fixed point in a human range,
/// scientific outside it, trailing zeros trimmed.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sig = sig.max(1);
    let exp = x.abs().log10().floor() as i32;
    if exp >= -4 && exp < sig as i32 {
        let dec = (sig as i32 - 1 - exp).max(0) as usize;
        trim_fixed(format!("{x:.dec$}"))
    } else {
        let s = format!("{:.*e}", sig - 1, x);
        match s.split_once('e') {
            Some((mant, e)) => format!("{}e{}", trim_fixed(mant.to_string()), e),
            None => s,
        }
    }
}

fn trim_fixed(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

// ---------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------

#[derive(Serialize)]
struct CoeffRow {
    first: String,
    second: String,
    re: f64,
    im: f64,
}

fn cmd_decompose(a: &DecomposeArgs, sink: &Sink) -> Result<(), Error> {
    let p = ModelParams::new(a.alpha, a.eta, 0.0, a.mode)?;
    let (ix, iy, iz) = spin32_operators();
    let m = match a.operator.to_ascii_lowercase().as_str() {
        "ix" => ix,
        "iy" => iy,
        "iz" => iz,
        "hq" => hamiltonian_spin32(&ModelParams::new(0.0, a.eta, 0.0, a.mode)?),
        "hx" => ix.scale(a.alpha),
        "h" => match a.mode {
            Mode::Exact => hamiltonian_spin32(&p),
            Mode::Paper => hamiltonian_two_qubit(&p),
        },
        other => {
            return Err(Error::InvalidParams {
                reason: format!("unknown operator `{other}` (expected ix|iy|iz|hq|hx|h)"),
            })
        }
    };
    let coeffs = decompose(&m);
    let rows: Vec<CoeffRow> = coeffs
        .nonzero(1e-12)
        .into_iter()
        .map(|(idx, c)| CoeffRow {
            first: idx.first.to_string(),
            second: idx.second.to_string(),
            re: c.re,
            im: c.im,
        })
        .collect();
    sink.table("first,second,re,im", &rows)
}

#[derive(Serialize)]
struct SpectrumRow {
    level: u32,
    analytic: Option<f64>,
    numeric: f64,
}

fn cmd_spectrum(a: &PointArgs, sink: &Sink) -> Result<(), Error> {
    let p = ModelParams::new(a.alpha, a.eta, 0.0, a.mode)?;
    let numeric = herm_eigensolve(&hamiltonian_two_qubit(&p), crate::linalg::DEFAULT_EIG_TOL)?;
    let analytic = match a.mode {
        Mode::Paper => Some(analytic_energies(&p)?),
        Mode::Exact => None,
    };
    let rows: Vec<SpectrumRow> = (0..4)
        .map(|k| SpectrumRow {
            level: k as u32 + 1,
            analytic: analytic.map(|e| e[k]),
            numeric: numeric.values[k],
        })
        .collect();
    sink.table("level,analytic,numeric", &rows)
}

#[derive(Serialize)]
struct GroundRow {
    a_minus: f64,
    b_plus: f64,
    b_minus: f64,
    a_plus: f64,
    d: f64,
    #[serde(rename = "C")]
    c: f64,
    omega1: f64,
    omega2: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    omega1_mhz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    omega2_mhz: Option<f64>,
}

fn cmd_ground(a: &GroundArgs, sink: &Sink) -> Result<(), Error> {
    let mut p = ModelParams::new(a.alpha, a.eta, 0.0, Mode::Paper)?;
    if let Some(mhz) = a.omega_q_mhz {
        p = p.with_omega_q_mhz(mhz);
    }
    let g = ground_amplitudes(&p)?;
    let c = closed_form_concurrence(&p)?;
    let f = resonance_frequencies(&p);
    let rows = [GroundRow {
        a_minus: g.a_minus,
        b_plus: g.b_plus,
        b_minus: g.b_minus,
        a_plus: g.a_plus,
        d: g.d,
        c,
        omega1: f.omega1,
        omega2: f.omega2,
        omega1_mhz: f.omega1_mhz,
        omega2_mhz: f.omega2_mhz,
    }];
    let header = if a.omega_q_mhz.is_some() {
        "a_minus,b_plus,b_minus,a_plus,d,C,omega1,omega2,omega1_mhz,omega2_mhz"
    } else {
        "a_minus,b_plus,b_minus,a_plus,d,C,omega1,omega2"
    };
    sink.table(header, &rows)
}

fn cmd_concurrence(a: &ConcurrenceArgs, sink: &Sink) -> Result<(), Error> {
    let p = ModelParams::new(a.alpha, a.eta, 0.0, Mode::Paper)?;
    let c = closed_form_concurrence(&p)?;
    match sink.format {
        Format::Json => sink.emit(&format!(
            "{}\n",
            serde_json::json!({"alpha": a.alpha, "eta": a.eta, "C": c})
        )),
        Format::Csv => sink.emit(&format!("{c:.prec$}\n", prec = a.precision)),
    }
}

fn cmd_thermal(a: &ThermalArgs, sink: &Sink) -> Result<(), Error> {
    let p = ModelParams::new(a.alpha, a.eta, a.beta, a.mode)?;
    let w = wootters_concurrence(&thermal_state(&p)?)?;
    match sink.format {
        Format::Json => sink.emit(&format!(
            "{}\n",
            serde_json::json!({
                "alpha": a.alpha, "beta": a.beta, "eta": a.eta,
                "C_T": w.concurrence, "lambdas": w.lambdas,
            })
        )),
        Format::Csv => sink.emit(&format!("{:.prec$}\n", w.concurrence, prec = a.precision)),
    }
}

fn cmd_boundary(a: &BoundaryArgs, sink: &Sink) -> Result<(), Error> {
    let alphas: Vec<f64> = match a.preset {
        Some(BoundaryPreset::Fig4) => {
            // 25 log-spaced fields spanning the published phase diagram.
            let (lo, hi, n) = (0.1f64, 100.0f64, 25usize);
            (0..n)
                .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
                .collect()
        }
        None => a.alpha.clone(),
    };
    if alphas.is_empty() {
        return Err(Error::InvalidParams {
            reason: "no alphas given; pass --alpha a1,a2,... or --preset fig4".into(),
        });
    }
    let b = phase_boundary(&alphas, a.eta, a.mode, a.tol)?;
    for alpha in &b.no_transition {
        eprintln!("qspin: note: no transition inside the beta bracket at alpha = {alpha}; point omitted");
    }
    sink.table("alpha,beta_c,eta", &b.points)
}

fn cmd_sweep_pure(a: &SweepPureArgs, sink: &Sink) -> Result<(), Error> {
    // fig1 is exactly the default grid; the preset exists so figure
    // reproduction is explicit on the command line.
    let _ = a.preset;
    let g = GridSpec {
        alpha: AxisSpec::new(a.alpha_min, a.alpha_max, a.alpha_count),
        beta: AxisSpec::fixed(0.0),
        eta: AxisSpec::new(a.eta_min, a.eta_max, a.eta_count),
        mode: a.mode,
    };
    sink.table("alpha,eta,C", &sweep_pure(&g)?)
}

fn cmd_sweep_thermal(a: &SweepThermalArgs, sink: &Sink) -> Result<(), Error> {
    let g = match a.preset {
        Some(ThermalPreset::Fig5) => GridSpec {
            alpha: AxisSpec::new(1.0, 4.0, 4),
            beta: AxisSpec::new(0.01, 4.0, 200),
            eta: AxisSpec::fixed(0.14),
            mode: a.mode,
        },
        Some(ThermalPreset::Fig6) => GridSpec {
            alpha: AxisSpec::new(0.05, 5.0, 100),
            beta: AxisSpec::new(1.0, 4.0, 4),
            eta: AxisSpec::fixed(0.14),
            mode: a.mode,
        },
        // fig3 is the default plane.
        Some(ThermalPreset::Fig3) | None => GridSpec {
            alpha: AxisSpec::new(a.alpha_min, a.alpha_max, a.alpha_count),
            beta: AxisSpec::new(a.beta_min, a.beta_max, a.beta_count),
            eta: AxisSpec::fixed(a.eta),
            mode: a.mode,
        },
    };
    sink.table("alpha,beta,eta,C_T", &sweep_thermal(&g)?)
}

fn cmd_report(a: &ReportArgs, sink: &Sink) -> Result<(), Error> {
    let p = ModelParams::new(a.alpha, a.eta, 0.0, Mode::Paper)?;
    let r = consistency_report(&p)?;
    match sink.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&r).expect("report serializes");
            s.push('\n');
            sink.emit(&s)
        }
        Format::Csv => {
            let d = sink.digits;
            let fmt4 = |v: &[f64; 4]| {
                v.iter()
                    .map(|x| fmt_sig(*x, d))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let text = format!(
                "hq_eta_coeff_exact = {}\nhq_eta_coeff_printed = {}\n\
                 eq11_printed_energies = {}\nnumeric_energies = {}\n\
                 max_energy_mismatch = {}\neq12_state_overlap = {}\n\
                 eq15_concurrence_mismatch = {}\n",
                fmt_sig(r.hq_eta_coeff_exact, d),
                fmt_sig(r.hq_eta_coeff_printed, d),
                fmt4(&r.eq11_printed_energies),
                fmt4(&r.numeric_energies),
                fmt_sig(r.max_energy_mismatch, d),
                fmt_sig(r.eq12_state_overlap, d),
                fmt_sig(r.eq15_concurrence_mismatch, d),
            );
            sink.emit(&text)
        }
    }
}

#[derive(Debug, Args)]
struct Cu63Args {
    /// Normalized inverse temperature.
    #[arg(long, default_value_t = 0.24)]
    beta: f64,
    /// Quadrupole coupling eQq_zz in MHz.
    #[arg(long, default_value_t = 62.8)]
    eqq_mhz: f64,
}

fn cmd_cu63(a: &Cu63Args, sink: &Sink) -> Result<(), Error> {
    let cyclic = cu63_temperature(a.beta, a.eqq_mhz, Convention::Cyclic)?;
    let angular = cu63_temperature(a.beta, a.eqq_mhz, Convention::Angular)?;
    match sink.format {
        Format::Json => sink.emit(&format!(
            "{}\n",
            serde_json::json!({
                "beta": a.beta, "eqq_mhz": a.eqq_mhz,
                "cyclic_kelvin": cyclic, "angular_kelvin": angular,
            })
        )),
        Format::Csv => {
            let d = sink.digits;
            sink.emit(&format!(
                "convention,temperature_k\ncyclic,{}\nangular,{}\n",
                fmt_sig(cyclic, d),
                fmt_sig(angular, d)
            ))
        }
    }
}

// ---------------------------------------------------------------------
// Invariant suite
// ---------------------------------------------------------------------

fn cmd_check() -> Result<(), Error> {
    let mut failures = 0usize;
    let mut run = |name: &str, result: Result<(), String>| match result {
        Ok(()) => println!("ok   {name}"),
        Err(msg) => {
            failures += 1;
            println!("FAIL {name}: {msg}");
        }
    };

    run("pauli orthonormality Tr(BkBl) = 4 delta", check_orthonormality());
    run("decompose/reconstruct round trip <= 1e-12", check_round_trip());
    run("exact-mode two-qubit H == spin-3/2 H <= 1e-12", check_exact_mode());
    run("paper-mode H(eta) == exact-mode H(eta/2)", check_mode_relation());
    run("[H, sx(x)sx] = 0 <= 1e-14", check_parity_commutes());
    run("analytic energies == Jacobi <= 1e-10, trace sum 0", check_energies());
    run("eigensolver reconstruction <= 1e-9", check_eigensolver());
    run("ground state overlap >= 1 - 1e-9, odd parity", check_ground_state());
    run("Wootters == pure formula <= 1e-9", check_wootters_pure());
    run("local-unitary invariance <= 1e-9", check_local_unitary());
    run("thermal limits: C_T(0) = 0, C_T(inf) -> closed form", check_thermal_limits());
    run("boundary consistency at (1, 0.14)", check_boundary());

    if failures > 0 {
        return Err(Error::CheckFailed { failed: failures });
    }
    Ok(())
}

fn check_orthonormality() -> Result<(), String> {
    use crate::pauli::{basis_element, PauliIndex};
    let all: Vec<_> = PauliIndex::all().map(basis_element).collect();
    for (k, bk) in all.iter().enumerate() {
        for (l, bl) in all.iter().enumerate() {
            let t = (*bk * *bl).trace();
            let expect = if k == l { 4.0 } else { 0.0 };
            if (t.re - expect).abs() > 0.0 || t.im.abs() > 0.0 {
                return Err(format!("pair ({k},{l}) trace {t}"));
            }
        }
    }
    Ok(())
}

fn seeded_hermitian(rng: &mut impl rand::Rng) -> crate::linalg::ComplexMat4 {
    use crate::linalg::{c64, ComplexMat4};
    let raw = ComplexMat4::from_fn(|_, _| {
        c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    (raw + raw.adjoint()).scale(0.5)
}

fn check_round_trip() -> Result<(), String> {
    use crate::pauli::reconstruct;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for i in 0..50 {
        let m = seeded_hermitian(&mut rng);
        let c = decompose(&m);
        let diff = reconstruct(&c).max_abs_diff(&m);
        if diff > 1e-12 {
            return Err(format!("case {i}: diff {diff:e}"));
        }
        if c.max_imag() > 1e-12 {
            return Err(format!("case {i}: imaginary coefficient {:e}", c.max_imag()));
        }
    }
    Ok(())
}

fn check_exact_mode() -> Result<(), String> {
    for i in 0..20 {
        for j in 0..20 {
            let a = 5.0 * i as f64 / 19.0;
            let e = j as f64 / 19.0;
            let p = ModelParams::new(a, e, 0.0, Mode::Exact).unwrap();
            let diff = hamiltonian_two_qubit(&p).max_abs_diff(&hamiltonian_spin32(&p));
            if diff > 1e-12 {
                return Err(format!("alpha={a} eta={e}: diff {diff:e}"));
            }
        }
    }
    Ok(())
}

fn check_mode_relation() -> Result<(), String> {
    for &(a, e) in &[(0.5, 0.2), (1.0, 1.0), (3.7, 0.6)] {
        let paper = hamiltonian_two_qubit(&ModelParams::new(a, e, 0.0, Mode::Paper).unwrap());
        let half = hamiltonian_two_qubit(&ModelParams::new(a, e / 2.0, 0.0, Mode::Exact).unwrap());
        let diff = paper.max_abs_diff(&half);
        if diff > 1e-12 {
            return Err(format!("alpha={a} eta={e}: diff {diff:e}"));
        }
    }
    Ok(())
}

fn check_parity_commutes() -> Result<(), String> {
    use crate::pauli::{basis_element, Pauli, PauliIndex};
    let xx = basis_element(PauliIndex::new(Pauli::X, Pauli::X));
    for &(a, e) in &[(0.0, 0.0), (1.0, 0.14), (2.5, 0.8), (4.9, 1.0)] {
        for mode in [Mode::Paper, Mode::Exact] {
            let h = hamiltonian_two_qubit(&ModelParams::new(a, e, 0.0, mode).unwrap());
            let comm = (h * xx).max_abs_diff(&(xx * h));
            if comm > 1e-14 {
                return Err(format!("alpha={a} eta={e} {mode}: [H,XX] = {comm:e}"));
            }
        }
    }
    Ok(())
}

fn check_energies() -> Result<(), String> {
    for i in 1..=30 {
        for j in 0..=10 {
            let a = 5.0 * i as f64 / 30.0;
            let e = j as f64 / 10.0;
            let p = ModelParams::new(a, e, 0.0, Mode::Paper).unwrap();
            let spec = herm_eigensolve(&hamiltonian_two_qubit(&p), crate::linalg::DEFAULT_EIG_TOL)
                .map_err(|err| err.to_string())?;
            let analytic = analytic_energies(&p).map_err(|err| err.to_string())?;
            for (k, (x, y)) in analytic.iter().zip(spec.values.iter()).enumerate() {
                if (x - y).abs() > 1e-10 {
                    return Err(format!("alpha={a} eta={e} level {k}"));
                }
            }
            if spec.values.iter().sum::<f64>().abs() > 1e-10 {
                return Err(format!("alpha={a} eta={e}: nonzero eigenvalue sum"));
            }
        }
    }
    Ok(())
}

fn check_eigensolver() -> Result<(), String> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
    for i in 0..200 {
        let m = seeded_hermitian(&mut rng);
        let spec = herm_eigensolve(&m, crate::linalg::DEFAULT_EIG_TOL)
            .map_err(|e| format!("case {i}: {e}"))?;
        let diff = spec.reconstruct().max_abs_diff(&m);
        if diff > 1e-9 {
            return Err(format!("case {i}: reconstruction {diff:e}"));
        }
        let tr: f64 = spec.values.iter().sum();
        if (tr - m.trace().re).abs() > 1e-10 {
            return Err(format!("case {i}: trace drift"));
        }
    }
    Ok(())
}

fn check_ground_state() -> Result<(), String> {
    use crate::linalg::c64;
    use crate::pauli::{basis_element, Pauli, PauliIndex};
    let xx = basis_element(PauliIndex::new(Pauli::X, Pauli::X));
    for &(a, e) in &[(0.3, 0.0), (1.0, 0.14), (1.0, 0.5), (4.0, 1.0)] {
        let p = ModelParams::new(a, e, 0.0, Mode::Paper).unwrap();
        let spec = herm_eigensolve(&hamiltonian_two_qubit(&p), crate::linalg::DEFAULT_EIG_TOL)
            .map_err(|err| err.to_string())?;
        let v = spec.vector(0);
        let g = ground_amplitudes(&p).map_err(|err| err.to_string())?.as_vector();
        let overlap: crate::linalg::Complex =
            (0..4).map(|i| v[i].conj() * c64(g[i], 0.0)).sum();
        if overlap.norm() < 1.0 - 1e-9 {
            return Err(format!("alpha={a} eta={e}: overlap {}", overlap.norm()));
        }
        let xv = xx.mul_vec(&v);
        let parity: crate::linalg::Complex = (0..4).map(|i| v[i].conj() * xv[i]).sum();
        if (parity.re + 1.0).abs() > 1e-9 {
            return Err(format!("alpha={a} eta={e}: <XX> = {}", parity.re));
        }
    }
    Ok(())
}

fn check_wootters_pure() -> Result<(), String> {
    use crate::entanglement::DensityMatrix;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    let mut done = 0;
    while done < 200 {
        let mut v = [0.0f64; 4];
        for x in v.iter_mut() {
            *x = rng.gen_range(-1.0..1.0);
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-3 {
            continue;
        }
        for x in v.iter_mut() {
            *x /= norm;
        }
        done += 1;
        let expect = (2.0 * (v[0] * v[3] - v[1] * v[2]).abs()).min(1.0);
        let d = DensityMatrix::pure_state(&v).map_err(|e| e.to_string())?;
        let got = wootters_concurrence(&d)
            .map_err(|e| e.to_string())?
            .concurrence;
        if (got - expect).abs() > 1e-9 {
            return Err(format!("state {v:?}: {got} vs {expect}"));
        }
    }
    Ok(())
}

/// 2x2 unitary from four angles; exactly unitary by construction.
fn unitary2(theta: f64, phi1: f64, phi2: f64, delta: f64) -> crate::linalg::Mat2 {
    use crate::linalg::Complex;
    let phase = |t: f64| Complex::from_polar(1.0, t);
    let (c, s) = (theta.cos(), theta.sin());
    [
        [phase(delta + phi1) * c, phase(delta + phi2) * s],
        [-phase(delta - phi2) * s, phase(delta - phi1) * c],
    ]
}

fn check_local_unitary() -> Result<(), String> {
    use crate::entanglement::DensityMatrix;
    use crate::linalg::kron2;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(19);
    // Moderate beta keeps the states genuinely mixed; nearly pure thermal
    // states make the flip spectrum sqrt(eps)-sensitive to the rounding of
    // the rotated matrix itself.
    for i in 0..25 {
        let p = ModelParams::new(
            rng.gen_range(0.2..3.0),
            rng.gen_range(0.0..1.0),
            rng.gen_range(0.2..2.5),
            Mode::Paper,
        )
        .unwrap();
        let rho = thermal_state(&p).map_err(|e| e.to_string())?;
        let base = wootters_concurrence(&rho).map_err(|e| e.to_string())?.concurrence;

        let mut angles = || rng.gen_range(0.0..std::f64::consts::TAU);
        let u = unitary2(angles(), angles(), angles(), angles());
        let v = unitary2(angles(), angles(), angles(), angles());
        let uv = kron2(&u, &v);
        let rotated = uv * *rho.matrix() * uv.adjoint();
        let rotated = DensityMatrix::new((rotated + rotated.adjoint()).scale(0.5))
            .map_err(|e| e.to_string())?;
        let got = wootters_concurrence(&rotated)
            .map_err(|e| e.to_string())?
            .concurrence;
        if (got - base).abs() > 1e-9 {
            return Err(format!("case {i}: {base} -> {got}"));
        }
    }
    Ok(())
}

fn check_thermal_limits() -> Result<(), String> {
    for &(a, e) in &[(0.5, 0.14), (1.0, 0.5), (2.0, 1.0)] {
        let hot = ModelParams::new(a, e, 0.0, Mode::Paper).unwrap();
        let ct0 = wootters_concurrence(&thermal_state(&hot).map_err(|x| x.to_string())?)
            .map_err(|x| x.to_string())?
            .concurrence;
        if ct0 != 0.0 {
            return Err(format!("C_T(beta=0) = {ct0} at alpha={a}"));
        }
        let cold = ModelParams::new(a, e, 40.0, Mode::Paper).unwrap();
        let ct = wootters_concurrence(&thermal_state(&cold).map_err(|x| x.to_string())?)
            .map_err(|x| x.to_string())?
            .concurrence;
        let pure = closed_form_concurrence(&hot).map_err(|x| x.to_string())?;
        if (ct - pure).abs() > 1e-6 {
            return Err(format!("alpha={a} eta={e}: {ct} vs pure {pure}"));
        }
    }
    Ok(())
}

fn check_boundary() -> Result<(), String> {
    let bc = critical_beta(1.0, 0.14, Mode::Paper, 1e-8).map_err(|e| e.to_string())?;
    if (bc - 0.24).abs() > 0.03 {
        return Err(format!("beta_c(1, 0.14) = {bc}"));
    }
    let ct_at = |beta: f64| -> Result<f64, String> {
        let p = ModelParams::new(1.0, 0.14, beta, Mode::Paper).unwrap();
        Ok(wootters_concurrence(&thermal_state(&p).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?
            .concurrence)
    };
    if ct_at(bc * 0.99)? > 1e-9 {
        return Err("entangled just below beta_c".into());
    }
    if ct_at(bc * 1.01)? <= 1e-9 {
        return Err("separable just above beta_c".into());
    }
    Ok(())
}
