use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;
use sweedler_cli::{default_bound, parse_input, run, CliError, Command, JobSpec, Report};

#[derive(Args, Debug, Default)]
struct Common {
    /// Degree bound for completion (default: $SWEEDLER_BOUND, else 8)
    #[arg(long, global = true)]
    bound: Option<u32>,
    /// Write the JSON report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Process ambiguities in a seeded random order (the report must not change)
    #[arg(long, global = true)]
    shuffle: Option<u64>,
    /// No text summary on stderr
    #[arg(long, global = true)]
    quiet: bool,
    /// Indent the JSON report
    #[arg(long, global = true)]
    pretty: bool,
}

macro_rules! inputs {
    ($name:ident { $($field:ident = $long:literal : $help:literal),* $(,)? }) => {
        #[derive(Args, Debug, Serialize)]
        struct $name {
            $(
                #[arg(long = $long, help = $help)]
                #[serde(rename = $long, skip_serializing_if = "Option::is_none")]
                $field: Option<String>,
            )*
        }
    };
}

inputs!(PresentArgs { a = "A": "source algebra", b = "B": "target algebra or 'same'", prefix = "prefix": "generator prefix", field = "field": "Q or Q[t]/(m)" });
inputs!(ComulArgs { a = "A": "A in F(A,C)", b = "B": "middle algebra", c = "C": "C in F(A,C), 'same' for A", field = "field": "Q or Q[t]/(m)" });
inputs!(CounitArgs { a = "A": "algebra", field = "field": "Q or Q[t]/(m)" });
inputs!(HilbertArgs { a = "A": "source algebra", b = "B": "target algebra or 'same'", dmax = "dmax": "top degree", field = "field": "Q or Q[t]/(m)" });
inputs!(ExtArgs {
    a = "A": "source algebra",
    s = "S": "scalar algebra (default base_field)",
    b = "B": "target algebra or 'same'",
    sigma = "sigma": "tensor sigma[i][s][r] as JSON",
    algebra_map = "algebra_map": "B-coordinates of the image of each basis element (S = k)",
    field = "field": "Q or Q[t]/(m)",
});
inputs!(PolyArgs { p = "p": "monic polynomial in x", field = "field": "Q or Q[t]/(m)" });
inputs!(NoArgs {});
inputs!(ChainArgs {
    dims = "dims": "dimensions of M_0..M_N",
    d = "d": "differentials d_1..d_N as JSON matrices",
    random = "random": "also check this many random complexes",
    seed = "seed": "seed for --random",
    field = "field": "Q or Q[t]/(m)",
});
inputs!(RepArgs { a = "A": "source algebra", b = "B": "target algebra or 'same'", images = "images": "generator images as JSON matrices", field = "field": "Q or Q[t]/(m)" });
inputs!(GaloisArgs { p = "p": "polynomial over Q", field = "field": "number field containing the roots", roots = "roots": "the roots, comma separated", sigma = "sigma": "function [n] -> [n], 1-indexed" });
inputs!(MonoidArgs {
    p = "p": "polynomial over Q",
    field = "field": "number field containing the roots",
    roots = "roots": "the roots, comma separated",
    sigma = "sigma": "first function (omit both for the full table)",
    tau = "tau": "second function",
});
inputs!(LoopArgs { p = "p": "polynomial over Q", z = "Z": "nilpotent matrix as JSON" });
inputs!(DualArgs { a = "A": "algebra to dualize", h = "H": "coalgebra to dualize", field = "field": "Q or Q[t]/(m)" });
inputs!(ConvArgs { h = "H": "coalgebra: grouplike, derivation_pair, matrix_coalgebra(n), dual(A), JSON", b = "B": "algebra", field = "field": "Q or Q[t]/(m)" });
inputs!(MeasArgs { h = "H": "coalgebra", a = "A": "source algebra", b = "B": "target algebra or 'same'", rho = "rho": "one dim B x dim A matrix per basis element of H", field = "field": "Q or Q[t]/(m)" });
inputs!(DArgs {
    a = "A": "source algebra",
    b = "B": "target algebra or 'same'",
    m = "M": "A-module (default regular)",
    n = "N": "B-module (default regular)",
    dmax = "dmax": "top degree",
    field = "field": "Q or Q[t]/(m)",
});
inputs!(TauArgs { a = "A": "source algebra", b = "B": "target algebra or 'same'", m = "M": "A-module", n = "N": "B-module", field = "field": "Q or Q[t]/(m)" });
inputs!(DExtArgs {
    a = "A": "source algebra",
    s = "S": "scalar algebra (default base_field)",
    b = "B": "target algebra or 'same'",
    sigma = "sigma": "tensor sigma[i][s][r] as JSON",
    algebra_map = "algebra_map": "B-coordinates of the image of each basis element (S = k)",
    m = "M": "A-module",
    w = "W": "S-module",
    n = "N": "B-module",
    rho = "rho": "rho(m_p) as dim W x dim N matrices",
    field = "field": "Q or Q[t]/(m)",
});

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Presentation of F(A,B): relations, rewriting rules, η, Δ, ε
    Present(PresentArgs),
    /// Δ_B: F(A,C) → F(A,B)⊗F(B,C) on generators
    Comul(ComulArgs),
    /// ε on the generators of F(A,A) and the counit laws
    Counit(CounitArgs),
    /// Dimension sequence of F(A,B)
    Hilbert(HilbertArgs),
    /// Image of an extension σ: A → S⊗B under F
    MapExtension(ExtArgs),
    /// Dual-basis presentation of F(k[x]/p, k[x]/p)
    Qcalc(PolyArgs),
    /// Compare the dual-basis and matrix presentations
    VerifyQcalc(PolyArgs),
    /// F(k[d]/d², k[d]/d²) against the Pareigis Hopf algebra
    Pareigis(NoArgs),
    /// A chain complex as a comodule over F(k[d]/d², k[d]/d²)
    ChainComodule(ChainArgs),
    /// Measuring coalgebra of a representation of F(A,B)
    RepMeasure(RepArgs),
    /// Vandermonde extension of σ and the Galois test
    Galois(GaloisArgs),
    /// Composition law of Vandermonde extensions
    Monoid(MonoidArgs),
    /// Loop extension σ_Z over the central parameter L
    Loop(LoopArgs),
    /// Dual coalgebra of an algebra, or dual algebra of a coalgebra
    Dual(DualArgs),
    /// Convolution algebra Hom(H, B)
    Convolution(ConvArgs),
    /// Check a measuring H⊗A → B
    VerifyMeasuring(MeasArgs),
    /// Presentation of the module D(M,N) over F(A,B)
    Dmodule(DArgs),
    /// τ: M → D(M,N)⊗N
    Tau(TauArgs),
    /// D of a module extension and the factorization through τ
    DExtension(DExtArgs),
    /// Run a JSON job file ('-' for stdin)
    Run { file: String },
}

#[derive(Parser, Debug)]
#[command(name = "sweedler", version, about = "Universal measuring coalgebras F(A,B) in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    common: Common,
}

fn inputs_of(args: impl Serialize) -> Vec<(String, Value)> {
    match serde_json::to_value(args).expect("arguments serialize") {
        Value::Object(m) => m.into_iter().collect(),
        _ => Vec::new(),
    }
}

fn job_of(cmd: Cmd, common: &Common) -> Result<JobSpec, CliError> {
    let (command, inputs) = match cmd {
        Cmd::Present(a) => (Command::Present, inputs_of(a)),
        Cmd::Comul(a) => (Command::Comul, inputs_of(a)),
        Cmd::Counit(a) => (Command::Counit, inputs_of(a)),
        Cmd::Hilbert(a) => (Command::Hilbert, inputs_of(a)),
        Cmd::MapExtension(a) => (Command::MapExtension, inputs_of(a)),
        Cmd::Qcalc(a) => (Command::Qcalc, inputs_of(a)),
        Cmd::VerifyQcalc(a) => (Command::VerifyQcalc, inputs_of(a)),
        Cmd::Pareigis(a) => (Command::Pareigis, inputs_of(a)),
        Cmd::ChainComodule(a) => (Command::ChainComodule, inputs_of(a)),
        Cmd::RepMeasure(a) => (Command::RepMeasure, inputs_of(a)),
        Cmd::Galois(a) => (Command::Galois, inputs_of(a)),
        Cmd::Monoid(a) => (Command::Monoid, inputs_of(a)),
        Cmd::Loop(a) => (Command::Loop, inputs_of(a)),
        Cmd::Dual(a) => (Command::Dual, inputs_of(a)),
        Cmd::Convolution(a) => (Command::Convolution, inputs_of(a)),
        Cmd::VerifyMeasuring(a) => (Command::VerifyMeasuring, inputs_of(a)),
        Cmd::Dmodule(a) => (Command::Dmodule, inputs_of(a)),
        Cmd::Tau(a) => (Command::Tau, inputs_of(a)),
        Cmd::DExtension(a) => (Command::DExtension, inputs_of(a)),
        Cmd::Run { file } => {
            let text = if file == "-" {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io { path: "stdin".into(), message: e.to_string() })?;
                s
            } else {
                std::fs::read_to_string(&file).map_err(|e| CliError::Io { path: file.clone(), message: e.to_string() })?
            };
            let mut job = parse_input(&text)?;
            apply_common(&mut job, common);
            return Ok(job);
        }
    };
    let bound = match common.bound {
        Some(b) => b,
        None => default_bound()?,
    };
    let mut job = JobSpec::new(command, bound);
    job.inputs = inputs.into_iter().collect();
    apply_common(&mut job, common);
    job.validate()?;
    Ok(job)
}

fn apply_common(job: &mut JobSpec, common: &Common) {
    if let Some(b) = common.bound {
        job.bound = b;
    }
    if common.out.is_some() {
        job.out = common.out.clone();
    }
    if common.shuffle.is_some() {
        job.shuffle = common.shuffle;
    }
    for (on, flag) in [(common.quiet, "quiet"), (common.pretty, "pretty")] {
        if on && !job.has_flag(flag) {
            job.flags.push(flag.to_string());
        }
    }
}

fn emit(job: &JobSpec, report: &Report) -> Result<(), CliError> {
    let mut json = report.to_json(job.has_flag("pretty"));
    json.push('\n');
    match &job.out {
        Some(path) => std::fs::write(path, json).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?,
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(json.as_bytes());
        }
    }
    if !job.has_flag("quiet") {
        eprint!("{}", report.text_summary());
    }
    Ok(())
}

fn main() -> ExitCode {
    let w = Cli::parse();
    let result = job_of(w.cmd, &w.common).and_then(|job| {
        let report = run(&job)?;
        emit(&job, &report)?;
        Ok(report.exit_code())
    });
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
