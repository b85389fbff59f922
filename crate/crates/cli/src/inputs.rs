use serde_json::Value;
use sweedler_core::coalg::{dual_coalgebra, CoalgebraJson, FinCoalgebra};
use sweedler_core::exactnum::{FieldSpec, Matrix, Scalar, UniPoly};
use sweedler_core::finalg::{parse_catalog, AlgebraJson, FinAlgebra};
use sweedler_core::modcomod::{FinModule, ModuleJson};
use sweedler_core::text::{parse_field, parse_scalar, parse_unipoly, split_top_level, ParseError};

use crate::error::CliError;
use crate::job::JobSpec;

/// Typed access to a job's raw inputs.
pub struct Inputs<'a> {
    job: &'a JobSpec,
    pub field: FieldSpec,
}

fn syntax(input: &str, text: &str, e: ParseError) -> CliError {
    CliError::Syntax { input: input.to_string(), text: text.to_string(), offset: e.offset, message: e.message }
}

/// Resolves `@path` and JSON-looking strings; plain strings stay strings.
fn resolve(key: &str, v: &Value) -> Result<Value, CliError> {
    match v {
        Value::String(s) => {
            let (src, text) = match s.strip_prefix('@') {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| CliError::Io { path: path.to_string(), message: e.to_string() })?;
                    (path.to_string(), text)
                }
                None => (key.to_string(), s.clone()),
            };
            let t = text.trim_start();
            if t.starts_with('{') || t.starts_with('[') {
                serde_json::from_str(&text).map_err(|e| CliError::json(&src, &e))
            } else {
                Ok(Value::String(text.trim().to_string()))
            }
        }
        other => Ok(other.clone()),
    }
}

fn scalar_value(key: &str, v: &Value, field: &FieldSpec) -> Result<Scalar, CliError> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(CliError::invalid(key, format!("expected a scalar, got {v}"))),
    };
    parse_scalar(&text, field).map_err(|e| syntax(key, &text, e))
}

fn matrix_value(key: &str, v: &Value, field: &FieldSpec) -> Result<Matrix<Scalar>, CliError> {
    let rows = v.as_array().ok_or_else(|| CliError::invalid(key, "expected a matrix (array of rows)"))?;
    let rows: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| CliError::invalid(key, "matrix rows must be arrays"))?
                .iter()
                .map(|x| scalar_value(key, x, field))
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let cols = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != cols) {
        return Err(CliError::invalid(key, "matrix rows have different lengths"));
    }
    Ok(Matrix::from_rows(rows))
}

impl<'a> Inputs<'a> {
    pub fn new(job: &'a JobSpec) -> Result<Self, CliError> {
        let field = match job.inputs.get("field") {
            Some(Value::String(s)) => parse_field(s).map_err(|e| syntax("field", s, e))?,
            Some(v) => return Err(CliError::invalid("field", format!("expected a string like \"Q[t]/(t^2+1)\", got {v}"))),
            None => FieldSpec::Rationals,
        };
        Ok(Self { job, field })
    }

    pub fn has(&self, key: &str) -> bool {
        self.job.inputs.contains_key(key)
    }

    fn get(&self, key: &str) -> Result<Option<Value>, CliError> {
        self.job.inputs.get(key).map(|v| resolve(key, v)).transpose()
    }

    fn need(&self, key: &str) -> Result<Value, CliError> {
        self.get(key)?.ok_or_else(|| CliError::Schema(format!("{}: missing required input '{key}'", self.job.command.name())))
    }

    pub fn text(&self, key: &str) -> Result<Option<String>, CliError> {
        match self.get(key)? {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s)),
            Some(v) => Err(CliError::invalid(key, format!("expected a string, got {v}"))),
        }
    }

    /// `None` when absent or `same`.
    pub fn algebra_opt(&self, key: &str) -> Result<Option<FinAlgebra>, CliError> {
        match self.get(key)? {
            None => Ok(None),
            Some(Value::String(s)) if s == "same" => Ok(None),
            Some(Value::String(s)) => self.algebra_text(key, &s).map(Some),
            Some(v @ Value::Object(_)) => {
                let j: AlgebraJson = serde_json::from_value(v).map_err(|e| CliError::invalid(key, e))?;
                FinAlgebra::from_json(&j).map(Some).map_err(|e| CliError::invalid(key, e))
            }
            Some(v) => Err(CliError::invalid(key, format!("expected a catalog name or algebra JSON, got {v}"))),
        }
    }

    pub fn algebra(&self, key: &str) -> Result<FinAlgebra, CliError> {
        self.algebra_opt(key)?.ok_or_else(|| CliError::invalid(key, "an algebra is required here"))
    }

    /// `same` or absent means `fallback`.
    pub fn algebra_or(&self, key: &str, fallback: &FinAlgebra) -> Result<FinAlgebra, CliError> {
        Ok(self.algebra_opt(key)?.unwrap_or_else(|| fallback.clone()))
    }

    fn algebra_text(&self, key: &str, s: &str) -> Result<FinAlgebra, CliError> {
        // Parsed here so the diagnostic can point into the polynomial.
        if let Some(inner) = s.strip_prefix("quotient_poly(").and_then(|r| r.strip_suffix(')')) {
            let p = parse_unipoly(inner, "x", &self.field).map_err(|e| syntax(&format!("{key} polynomial"), inner, e))?;
            return FinAlgebra::quotient_poly(&p, &self.field).map_err(|e| CliError::invalid(key, e));
        }
        parse_catalog(s, &self.field).map_err(|e| CliError::invalid(key, e))
    }

    pub fn coalgebra(&self, key: &str) -> Result<FinCoalgebra, CliError> {
        match self.need(key)? {
            Value::String(s) => {
                if let Some(inner) = s.strip_prefix("dual(").and_then(|r| r.strip_suffix(')')) {
                    return Ok(dual_coalgebra(&self.algebra_text(key, inner.trim())?));
                }
                FinCoalgebra::parse_catalog(&s, &self.field)
                    .map_err(|e| CliError::invalid(key, format!("{e}, dual(<algebra>)")))
            }
            v @ Value::Object(_) => {
                let j: CoalgebraJson = serde_json::from_value(v).map_err(|e| CliError::invalid(key, e))?;
                FinCoalgebra::from_json(&j).map_err(|e| CliError::invalid(key, e))
            }
            v => Err(CliError::invalid(key, format!("expected a catalog name or coalgebra JSON, got {v}"))),
        }
    }

    /// Module over `a`: `regular` (the default), `zero`, `trivial(n)`,
    /// `standard(n)`, `sum(M, N)`, a list of action matrices, or module JSON.
    pub fn module(&self, key: &str, a: &FinAlgebra) -> Result<FinModule, CliError> {
        match self.get(key)? {
            None => Ok(FinModule::regular(a)),
            Some(v) => self.module_value(key, v, a),
        }
    }

    fn module_value(&self, key: &str, v: Value, a: &FinAlgebra) -> Result<FinModule, CliError> {
        match v {
            Value::String(s) => self.module_text(key, &s, a),
            v @ Value::Array(_) => {
                let action = self.matrices_value(key, &v)?;
                FinModule::new(a.clone(), action).map_err(|e| CliError::invalid(key, e))
            }
            v @ Value::Object(_) => {
                let j: ModuleJson = serde_json::from_value(v).map_err(|e| CliError::invalid(key, e))?;
                FinModule::from_json(a, &j).map_err(|e| CliError::invalid(key, e))
            }
            v => Err(CliError::invalid(key, format!("expected a module, got {v}"))),
        }
    }

    fn module_text(&self, key: &str, s: &str, a: &FinAlgebra) -> Result<FinModule, CliError> {
        let s = s.trim();
        let arg = |name: &str| s.strip_prefix(name).and_then(|r| r.strip_prefix('(')).and_then(|r| r.strip_suffix(')'));
        let size = |t: &str| -> Result<usize, CliError> {
            t.trim().parse::<usize>().map_err(|_| CliError::invalid(key, format!("expected a size, got '{t}'")))
        };
        match s {
            "regular" => return Ok(FinModule::regular(a)),
            "zero" => return Ok(FinModule::zero(a)),
            _ => {}
        }
        if let Some(n) = arg("trivial") {
            return FinModule::trivial(a, size(n)?).map_err(|e| CliError::invalid(key, e));
        }
        if let Some(n) = arg("standard") {
            let m = FinModule::standard(size(n)?, a.field());
            if !m.algebra().same_structure(a) {
                return Err(CliError::invalid(key, "standard(n) needs A = matrix_algebra(n)"));
            }
            return Ok(m);
        }
        if let Some(parts) = arg("sum") {
            let parts = split_top_level(parts, ',');
            let mut it = parts.iter();
            let first = it.next().ok_or_else(|| CliError::invalid(key, "sum() needs summands"))?;
            let part = |t: &str| self.module_value(key, resolve(key, &Value::String(t.to_string()))?, a);
            let mut acc = part(first)?;
            for p in it {
                acc = acc.direct_sum(&part(p)?).map_err(|e| CliError::invalid(key, e))?;
            }
            return Ok(acc);
        }
        Err(CliError::invalid(
            key,
            format!("unknown module '{s}'; valid entries: regular, zero, trivial(n), standard(n), sum(M, N), action matrices, module JSON"),
        ))
    }

    pub fn poly(&self, key: &str, field: &FieldSpec) -> Result<UniPoly, CliError> {
        match self.need(key)? {
            Value::String(s) => parse_unipoly(&s, "x", field).map_err(|e| syntax(key, &s, e)),
            v => Err(CliError::invalid(key, format!("expected a polynomial in x, got {v}"))),
        }
    }

    /// Comma-separated text or a JSON array.
    pub fn scalars(&self, key: &str, field: &FieldSpec) -> Result<Vec<Scalar>, CliError> {
        match self.need(key)? {
            Value::String(s) => split_top_level(&s, ',')
                .into_iter()
                .map(|t| parse_scalar(t, field).map_err(|e| syntax(key, t, e)))
                .collect(),
            Value::Array(a) => a.iter().map(|x| scalar_value(key, x, field)).collect(),
            v => Err(CliError::invalid(key, format!("expected a list of scalars, got {v}"))),
        }
    }

    /// Non-negative integers, comma-separated or as a JSON array.
    pub fn indices(&self, key: &str) -> Result<Option<Vec<usize>>, CliError> {
        let bad = |t: &str| CliError::invalid(key, format!("expected a non-negative integer, got '{t}'"));
        match self.get(key)? {
            None => Ok(None),
            Some(Value::String(s)) => {
                s.split(',').map(|t| t.trim().parse::<usize>().map_err(|_| bad(t))).collect::<Result<_, _>>().map(Some)
            }
            Some(Value::Array(a)) => a
                .iter()
                .map(|x| x.as_u64().map(|n| n as usize).ok_or_else(|| bad(&x.to_string())))
                .collect::<Result<_, _>>()
                .map(Some),
            Some(Value::Number(n)) => n.as_u64().map(|n| Some(vec![n as usize])).ok_or_else(|| bad(&n.to_string())),
            Some(v) => Err(bad(&v.to_string())),
        }
    }

    /// A function `[n] → [n]` written 1-indexed, returned 0-indexed.
    pub fn function(&self, key: &str) -> Result<Option<Vec<usize>>, CliError> {
        match self.indices(key)? {
            None => Ok(None),
            Some(v) if v.contains(&0) => Err(CliError::invalid(key, "function values are 1-indexed")),
            Some(v) => Ok(Some(v.into_iter().map(|j| j - 1).collect())),
        }
    }

    pub fn count(&self, key: &str) -> Result<Option<u64>, CliError> {
        let bad = |t: &str| CliError::invalid(key, format!("expected a non-negative integer, got '{t}'"));
        match self.get(key)? {
            None => Ok(None),
            Some(Value::Number(n)) => n.as_u64().map(Some).ok_or_else(|| bad(&n.to_string())),
            Some(Value::String(s)) => s.trim().parse().map(Some).map_err(|_| bad(&s)),
            Some(v) => Err(bad(&v.to_string())),
        }
    }

    pub fn matrix(&self, key: &str, field: &FieldSpec) -> Result<Matrix<Scalar>, CliError> {
        matrix_value(key, &self.need(key)?, field)
    }

    fn matrices_value(&self, key: &str, v: &Value) -> Result<Vec<Matrix<Scalar>>, CliError> {
        v.as_array()
            .ok_or_else(|| CliError::invalid(key, "expected a list of matrices"))?
            .iter()
            .map(|m| matrix_value(key, m, &self.field))
            .collect()
    }

    pub fn matrices(&self, key: &str) -> Result<Vec<Matrix<Scalar>>, CliError> {
        self.matrices_value(key, &self.need(key)?)
    }

    pub fn matrices_opt(&self, key: &str) -> Result<Option<Vec<Matrix<Scalar>>>, CliError> {
        self.get(key)?.map(|v| self.matrices_value(key, &v)).transpose()
    }

    /// `t[i][s][r]`.
    pub fn tensor(&self, key: &str) -> Result<Vec<Vec<Vec<Scalar>>>, CliError> {
        Ok(self.matrices(key)?.into_iter().map(|m| (0..m.rows()).map(|r| m.row(r).to_vec()).collect()).collect())
    }
}
