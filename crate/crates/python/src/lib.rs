use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use sweedler_cli::{CliError, Command, JobSpec};

fn to_py(e: CliError) -> PyErr {
    match e {
        CliError::Compute(m) => PyRuntimeError::new_err(m),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// Run a flat JSON job, the same format `sweedler run` reads, and return the report as JSON.
#[pyfunction]
fn run_job(job: &str) -> PyResult<String> {
    let spec = sweedler_cli::parse_input(job).map_err(to_py)?;
    Ok(sweedler_cli::run(&spec).map_err(to_py)?.to_json(false))
}

/// `run("present", bound=6, A="dual_numbers", prefix="g")`; values are the CLI's text forms.
#[pyfunction]
#[pyo3(signature = (command, bound = None, **inputs))]
fn run(command: &str, bound: Option<u32>, inputs: Option<&Bound<'_, PyDict>>) -> PyResult<String> {
    let cmd = Command::from_name(command).ok_or_else(|| PyValueError::new_err(format!("unknown command '{command}'")))?;
    let bound = match bound {
        Some(b) => b,
        None => sweedler_cli::default_bound().map_err(to_py)?,
    };
    let mut spec = JobSpec::new(cmd, bound);
    if let Some(d) = inputs {
        for (k, v) in d.iter() {
            let key: String = k.extract()?;
            let text: String = v.str()?.extract()?;
            spec = spec.input(&key, text);
        }
    }
    Ok(sweedler_cli::run(&spec).map_err(to_py)?.to_json(false))
}

#[pyfunction]
fn commands() -> Vec<&'static str> {
    Command::ALL.iter().map(|c| c.name()).collect()
}

#[pymodule]
fn sweedler(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(run_job, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(commands, m)?)?;
    Ok(())
}
