//! Command-line driver.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{ArgGroup, Parser, ValueEnum};
use quditsim_core::backends::DEFAULT_MEMORY_BUDGET;
use quditsim_core::circuit::TraceEvent;
use quditsim_core::{templates, Backend, BackendKind, QuantumCircuit, ValueKind};

use crate::{bench, qasm, render};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum BackendArg {
    Dense,
    #[default]
    Sparse,
}

impl From<BackendArg> for BackendKind {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Dense => BackendKind::Dense,
            BackendArg::Sparse => BackendKind::Sparse,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputType {
    /// Ket labels with values.
    #[default]
    Print,
    /// Basis indices with values.
    State,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputMethod {
    #[default]
    #[value(alias = "amplitude")]
    Amp,
    #[value(alias = "probability")]
    Prob,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Strategy {
    /// Multiply flattened moments last to first, then one matrix-vector product.
    #[default]
    Reverse,
    /// Apply each gate to the state in turn without flattening moments.
    Forward,
}

/// Simulate mixed qubit/qudit circuits.
#[derive(Debug, Parser)]
#[command(name = "quditsim", version)]
#[command(group(ArgGroup::new("source").required(true).args(["input", "template", "bench"])))]
pub struct Cli {
    /// Circuit file in the qudit assembly dialect.
    pub input: Option<PathBuf>,

    /// Built-in circuit: `grover_n2` or `bv:<bits>`.
    #[arg(long)]
    pub template: Option<String>,

    #[arg(long, value_enum, default_value_t)]
    pub backend: BackendArg,

    #[arg(long, value_enum, default_value_t)]
    pub output: OutputType,

    #[arg(long, value_enum, default_value_t)]
    pub method: OutputMethod,

    /// Largest operator, in complex entries, a run may materialise.
    #[arg(long, env = "QUDITSIM_BUDGET", default_value_t = DEFAULT_MEMORY_BUDGET)]
    pub budget: u64,

    #[arg(long, value_enum, default_value_t)]
    pub strategy: Strategy,

    /// Leave out the elapsed-time lines.
    #[arg(long)]
    pub no_time: bool,

    /// Report every moment as it is processed (standard error).
    #[arg(long)]
    pub debug: bool,

    /// Benchmark every `.qasm` file in this directory.
    #[arg(long, value_name = "DIR")]
    pub bench: Option<PathBuf>,

    /// With --bench, also write the table as CSV here.
    #[arg(long, value_name = "PATH", conflicts_with_all = ["input", "template"])]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Qasm {
        path: String,
        #[source]
        source: qasm::QasmError,
    },
    #[error(transparent)]
    Sim(#[from] quditsim_core::Error),
    #[error("unknown template {0:?}, expected grover_n2 or bv:<bits>")]
    Template(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("writing output: {0}")]
    Output(#[source] std::io::Error),
}

pub fn template(name: &str) -> Result<QuantumCircuit, CliError> {
    match name {
        "grover_n2" => Ok(templates::grover_n2()),
        _ => match name.strip_prefix("bv:") {
            Some(bits) => Ok(templates::bernstein_vazirani(bits)?),
            None => Err(CliError::Template(name.into())),
        },
    }
}

impl Cli {
    fn backend_config(&self) -> Backend {
        Backend::new(self.backend.into()).with_budget(self.budget)
    }
}

/// Runs the command, writing results to `out` and diagnostics to `err`.
/// Returns the process exit status.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            // every message already embeds its cause
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let backend = cli.backend_config();
    if let Some(dir) = &cli.bench {
        let rows = bench::run_suite(dir, backend, cli.strategy).map_err(|source| CliError::Io {
            path: dir.display().to_string(),
            source,
        })?;
        out.write_all(bench::text_table(&rows).as_bytes())
            .map_err(CliError::Output)?;
        if let Some(path) = &cli.csv {
            let file = fs::File::create(path).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            bench::write_csv(&rows, file)?;
        }
        return Ok(0);
    }

    let start = Instant::now();
    let mut circuit = match (&cli.input, &cli.template) {
        (Some(path), _) => {
            let shown = path.display().to_string();
            let src = fs::read_to_string(path).map_err(|source| CliError::Io {
                path: shown.clone(),
                source,
            })?;
            qasm::load(&src, backend).map_err(|source| CliError::Qasm { path: shown, source })?
        }
        (None, Some(name)) => {
            let mut qc = template(name)?;
            qc.set_backend(backend);
            qc
        }
        (None, None) => unreachable!("clap requires an input source"),
    };
    let load_secs = start.elapsed().as_secs_f64();

    let mut trace = |e: TraceEvent| {
        if cli.debug {
            let _ = writeln!(err, "{e:?}");
        }
    };
    let start = Instant::now();
    let result = match cli.strategy {
        Strategy::Reverse => circuit.run_traced(&mut trace),
        Strategy::Forward => circuit.execute_forward_traced(&mut trace),
    }?;
    let exec_secs = start.elapsed().as_secs_f64();

    let mut result = result.with_value_kind(match cli.method {
        OutputMethod::Amp => ValueKind::Amplitude,
        OutputMethod::Prob => ValueKind::Probability,
    });
    result.timings.load_secs = load_secs;
    result.timings.exec_secs = exec_secs;

    let mut text = String::new();
    if !cli.no_time {
        text.push_str(&render::render_timings(&result.timings));
        text.push('\n');
    }
    text.push_str(&match cli.output {
        OutputType::Print => render::render_print(&result)?,
        OutputType::State => render::render_state(&result)?,
    });
    out.write_all(text.as_bytes()).map_err(CliError::Output)?;
    Ok(0)
}
