use std::collections::BTreeMap;
use std::path::PathBuf;

use serde_json::{Map, Value};

use crate::error::CliError;
use crate::inputs::Inputs;

pub const DEFAULT_BOUND: u32 = 8;
pub const BOUND_ENV: &str = "SWEEDLER_BOUND";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Command {
    Present,
    Comul,
    Counit,
    Hilbert,
    MapExtension,
    Qcalc,
    VerifyQcalc,
    Pareigis,
    ChainComodule,
    RepMeasure,
    Galois,
    Monoid,
    Loop,
    Dual,
    Convolution,
    VerifyMeasuring,
    Dmodule,
    Tau,
    DExtension,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Algebra,
    Coalgebra,
    Module,
    Poly,
    Field,
    Scalars,
    Indices,
    Matrix,
    Matrices,
    Tensor,
    Count,
    Text,
}

#[derive(Debug, Clone, Copy)]
pub struct Key {
    pub name: &'static str,
    pub kind: Kind,
    pub required: bool,
}

const fn req(name: &'static str, kind: Kind) -> Key {
    Key { name, kind, required: true }
}

const fn opt(name: &'static str, kind: Kind) -> Key {
    Key { name, kind, required: false }
}

use Kind::*;

const FIELD: Key = opt("field", Field);
const EXT: [Key; 5] = [req("A", Algebra), opt("S", Algebra), opt("B", Algebra), opt("sigma", Tensor), opt("algebra_map", Matrix)];

impl Command {
    pub const ALL: [Command; 19] = [
        Command::Present,
        Command::Comul,
        Command::Counit,
        Command::Hilbert,
        Command::MapExtension,
        Command::Qcalc,
        Command::VerifyQcalc,
        Command::Pareigis,
        Command::ChainComodule,
        Command::RepMeasure,
        Command::Galois,
        Command::Monoid,
        Command::Loop,
        Command::Dual,
        Command::Convolution,
        Command::VerifyMeasuring,
        Command::Dmodule,
        Command::Tau,
        Command::DExtension,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Present => "present",
            Command::Comul => "comul",
            Command::Counit => "counit",
            Command::Hilbert => "hilbert",
            Command::MapExtension => "map-extension",
            Command::Qcalc => "qcalc",
            Command::VerifyQcalc => "verify-qcalc",
            Command::Pareigis => "pareigis",
            Command::ChainComodule => "chain-comodule",
            Command::RepMeasure => "rep-measure",
            Command::Galois => "galois",
            Command::Monoid => "monoid",
            Command::Loop => "loop",
            Command::Dual => "dual",
            Command::Convolution => "convolution",
            Command::VerifyMeasuring => "verify-measuring",
            Command::Dmodule => "dmodule",
            Command::Tau => "tau",
            Command::DExtension => "d-extension",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }

    /// Inputs the command reads; anything else is a schema error.
    pub fn keys(self) -> Vec<Key> {
        let pair = vec![req("A", Algebra), opt("B", Algebra), FIELD];
        let dmod = vec![req("A", Algebra), opt("B", Algebra), opt("M", Module), opt("N", Module), FIELD];
        let vander = vec![req("p", Poly), req("field", Field), req("roots", Scalars)];
        let mut keys = match self {
            Command::Present => vec![req("A", Algebra), opt("B", Algebra), opt("prefix", Text), FIELD],
            Command::Comul => vec![req("A", Algebra), opt("B", Algebra), opt("C", Algebra), FIELD],
            Command::Counit => vec![req("A", Algebra), FIELD],
            Command::Hilbert => [pair, vec![opt("dmax", Count)]].concat(),
            Command::MapExtension => [EXT.to_vec(), vec![FIELD]].concat(),
            Command::Qcalc | Command::VerifyQcalc => vec![req("p", Poly), FIELD],
            Command::Pareigis => vec![],
            Command::ChainComodule => {
                vec![opt("dims", Indices), opt("d", Matrices), opt("random", Count), opt("seed", Count), FIELD]
            }
            Command::RepMeasure => [pair, vec![req("images", Matrices)]].concat(),
            Command::Galois => [vander, vec![req("sigma", Indices)]].concat(),
            Command::Monoid => [vander, vec![opt("sigma", Indices), opt("tau", Indices)]].concat(),
            Command::Loop => vec![req("p", Poly), req("Z", Matrix)],
            Command::Dual => vec![opt("A", Algebra), opt("H", Coalgebra), FIELD],
            Command::Convolution => vec![req("H", Coalgebra), req("B", Algebra), FIELD],
            Command::VerifyMeasuring => vec![req("H", Coalgebra), req("A", Algebra), opt("B", Algebra), req("rho", Matrices), FIELD],
            Command::Dmodule => [dmod, vec![opt("dmax", Count)]].concat(),
            Command::Tau => dmod,
            Command::DExtension => [
                EXT.to_vec(),
                vec![opt("M", Module), req("W", Module), opt("N", Module), req("rho", Matrices), FIELD],
            ]
            .concat(),
        };
        keys.sort_by_key(|k| k.name);
        keys
    }
}

/// One validated invocation. `inputs` holds the raw values as given
/// (strings, or JSON for structured inputs); they are parsed again by `run`.
#[derive(Debug, Clone, PartialEq)]
pub struct JobSpec {
    pub command: Command,
    pub inputs: BTreeMap<String, Value>,
    pub bound: u32,
    pub out: Option<PathBuf>,
    pub flags: Vec<String>,
    /// Ambiguity processing order; `None` is the sorted schedule. Never echoed.
    pub shuffle: Option<u64>,
}

const RESERVED: [&str; 5] = ["command", "bound", "out", "flags", "shuffle"];
pub const FLAGS: [&str; 2] = ["quiet", "pretty"];

/// `SWEEDLER_BOUND` if set, else the default.
pub fn default_bound() -> Result<u32, CliError> {
    match std::env::var(BOUND_ENV) {
        Ok(s) => parse_bound(&s).map_err(|m| CliError::invalid(BOUND_ENV, m)),
        Err(_) => Ok(DEFAULT_BOUND),
    }
}

fn parse_bound(s: &str) -> Result<u32, String> {
    match s.trim().parse::<u32>() {
        Ok(0) => Err("bound must be positive".into()),
        Ok(b) => Ok(b),
        Err(_) => Err(format!("bound must be a positive integer, got '{s}'")),
    }
}

impl JobSpec {
    pub fn new(command: Command, bound: u32) -> Self {
        Self { command, inputs: BTreeMap::new(), bound, out: None, flags: Vec::new(), shuffle: None }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn has_flag(&self, flag: &str) -> bool {
        self.flags.iter().any(|f| f == flag)
    }

    /// Schema checks, then a parse of every input whose meaning does not
    /// depend on other inputs (fields, algebras, polynomials).
    pub fn validate(&self) -> Result<(), CliError> {
        if self.bound == 0 {
            return Err(CliError::invalid("bound", "bound must be positive"));
        }
        let keys = self.command.keys();
        for name in self.inputs.keys() {
            if !keys.iter().any(|k| k.name == name) {
                let valid: Vec<&str> = keys.iter().map(|k| k.name).collect();
                return Err(CliError::Schema(format!(
                    "{}: unknown input '{name}'; accepted inputs: {}",
                    self.command.name(),
                    if valid.is_empty() { "none".to_string() } else { valid.join(", ") }
                )));
            }
        }
        for k in keys.iter().filter(|k| k.required) {
            if !self.inputs.contains_key(k.name) {
                return Err(CliError::Schema(format!("{}: missing required input '{}'", self.command.name(), k.name)));
            }
        }
        for f in &self.flags {
            if !FLAGS.contains(&f.as_str()) {
                return Err(CliError::Schema(format!("unknown flag '{f}'; valid flags: {}", FLAGS.join(", "))));
            }
        }
        let inp = Inputs::new(self)?;
        for k in &keys {
            if !self.inputs.contains_key(k.name) {
                continue;
            }
            match k.kind {
                Kind::Algebra => {
                    inp.algebra_opt(k.name)?;
                }
                Kind::Coalgebra => {
                    inp.coalgebra(k.name)?;
                }
                Kind::Poly => {
                    inp.poly(k.name, &inp.field)?;
                }
                Kind::Count => {
                    inp.count(k.name)?;
                }
                Kind::Indices => {
                    inp.indices(k.name)?;
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// The flat JSON form: reserved keys plus one entry per input.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), self.command.name().into());
        m.insert("bound".into(), self.bound.into());
        if let Some(out) = &self.out {
            m.insert("out".into(), out.display().to_string().into());
        }
        if !self.flags.is_empty() {
            m.insert("flags".into(), self.flags.clone().into());
        }
        if let Some(s) = self.shuffle {
            m.insert("shuffle".into(), s.into());
        }
        for (k, v) in &self.inputs {
            m.insert(k.clone(), v.clone());
        }
        Value::Object(m)
    }
}

/// Parses a job file: a JSON object with `command`, optional `bound`, `out`,
/// `flags`, `shuffle`, and the command's inputs as further keys.
pub fn parse_input(text: &str) -> Result<JobSpec, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::json("job", &e))?;
    let Value::Object(mut obj) = v else {
        return Err(CliError::Schema("job must be a JSON object".into()));
    };
    let command = match obj.remove("command") {
        Some(Value::String(s)) => Command::from_name(&s).ok_or_else(|| {
            let names: Vec<&str> = Command::ALL.iter().map(|c| c.name()).collect();
            CliError::Schema(format!("unknown command '{s}'; valid commands: {}", names.join(", ")))
        })?,
        Some(_) => return Err(CliError::Schema("'command' must be a string".into())),
        None => return Err(CliError::Schema("missing 'command'".into())),
    };
    let bound = match obj.remove("bound") {
        None | Some(Value::Null) => default_bound()?,
        Some(Value::Number(n)) => parse_bound(&n.to_string()).map_err(|m| CliError::invalid("bound", m))?,
        Some(Value::String(s)) => parse_bound(&s).map_err(|m| CliError::invalid("bound", m))?,
        Some(_) => return Err(CliError::invalid("bound", "bound must be a positive integer")),
    };
    let out = match obj.remove("out") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(PathBuf::from(s)),
        Some(_) => return Err(CliError::invalid("out", "must be a path string")),
    };
    let flags = match obj.remove("flags") {
        None | Some(Value::Null) => Vec::new(),
        Some(Value::Array(a)) => a
            .into_iter()
            .map(|f| match f {
                Value::String(s) => Ok(s),
                _ => Err(CliError::invalid("flags", "flags must be strings")),
            })
            .collect::<Result<_, _>>()?,
        Some(_) => return Err(CliError::invalid("flags", "must be an array of strings")),
    };
    let shuffle = match obj.remove("shuffle") {
        None | Some(Value::Null) => None,
        Some(Value::Number(n)) => Some(n.as_u64().ok_or_else(|| CliError::invalid("shuffle", "must be a non-negative integer"))?),
        Some(_) => return Err(CliError::invalid("shuffle", "must be a non-negative integer")),
    };
    debug_assert!(RESERVED.iter().all(|k| !obj.contains_key(*k)));
    let job = JobSpec { command, inputs: obj.into_iter().collect(), bound, out, flags, shuffle };
    job.validate()?;
    Ok(job)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for c in Command::ALL {
            assert_eq!(Command::from_name(c.name()), Some(c));
        }
        assert_eq!(Command::from_name("presentt"), None);
    }

    #[test]
    fn json_position_is_reported() {
        let err = parse_input("{\"command\": \"present\",\n \"A\": }").unwrap_err();
        assert!(matches!(err, CliError::Json { line: 2, column: 7, .. }), "{err:?}");
    }

    #[test]
    fn missing_and_unknown_inputs() {
        let err = parse_input(r#"{"command": "present", "bound": 3}"#).unwrap_err();
        assert_eq!(err.to_string(), "present: missing required input 'A'");
        let err = parse_input(r#"{"command": "pareigis", "A": "dual_numbers"}"#).unwrap_err();
        assert_eq!(err.to_string(), "pareigis: unknown input 'A'; accepted inputs: none");
    }

    #[test]
    fn zero_bound_is_rejected() {
        let err = parse_input(r#"{"command": "pareigis", "bound": 0}"#).unwrap_err();
        assert!(err.to_string().contains("positive"));
    }

    #[test]
    fn job_round_trips() {
        let text = r#"{"command": "present", "A": "quotient_poly(x^2+1)", "B": "same", "bound": 6, "flags": ["quiet"]}"#;
        let job = parse_input(text).unwrap();
        assert_eq!(job.bound, 6);
        assert_eq!(parse_input(&job.to_json().to_string()).unwrap(), job);
    }

    fn sample(kind: Kind, pick: usize) -> Value {
        let pool: &[&str] = match kind {
            Algebra => &["quotient_poly(x^2+1)", "dual_numbers", "base_field", "matrix_algebra(2)"],
            Coalgebra => &["grouplike", "derivation_pair"],
            Poly => &["x^2+1", "x^3-2", "x"],
            Count | Indices => &["1", "2", "3"],
            _ => &["[[1,0],[0,1]]", "1,2", "t"],
        };
        Value::from(pool[pick % pool.len()])
    }

    proptest::proptest! {
        #[test]
        fn any_job_round_trips(
            cmd in 0..Command::ALL.len(),
            bound in 1u32..100,
            picks in proptest::collection::vec((proptest::bool::ANY, 0usize..8), 16),
            quiet in proptest::bool::ANY,
            shuffle in proptest::option::of(0u64..1000),
        ) {
            let command = Command::ALL[cmd];
            let mut job = JobSpec::new(command, bound);
            for (k, (keep, pick)) in command.keys().iter().zip(&picks) {
                if k.required || *keep {
                    job = job.input(k.name, sample(k.kind, *pick));
                }
            }
            if quiet {
                job.flags.push("quiet".into());
            }
            let mut text = job.to_json();
            if let Some(s) = shuffle {
                text["shuffle"] = s.into();
            }
            match parse_input(&text.to_string()) {
                Ok(back) => {
                    proptest::prop_assert_eq!(back.shuffle, shuffle);
                    proptest::prop_assert_eq!(JobSpec { shuffle: None, ..back }, job);
                }
                // only the parsed kinds can reject a sample, never the envelope
                Err(e) => proptest::prop_assert!(matches!(e, CliError::Invalid { .. } | CliError::Syntax { .. }), "{e}"),
            }
        }
    }
}
