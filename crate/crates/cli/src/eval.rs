//! `ellsix eval`: one function at user-supplied arguments.
//!
//! Arguments form a JSON object. Complex values may be given as a number, a pair
//! `[re, im]` or an object `{"re": .., "im": ..}`. Every expression reads the nome
//! `p` (default 0) and, where it is needed, `q` (default 0.5). Subsets are lists of
//! 1-based indices.
//!
//! | expression | arguments |
//! |---|---|
//! | `theta` | `x` |
//! | `pochhammer` | `x`, `k` |
//! | `phi` | `w`, `z`, `a` |
//! | `dwpf` | `lambda`, `w`, `z` |
//! | `pf` | `lambda`, `w`, `z`, `bottom`, `top`, `left`, `right` (sign strings such as `"+-"`) |
//! | `r6j` | `s`, `t`, `u`, `v`, `w`, `z`, `lambda`, optional `method` (default `mcmt`) |
//! | `vnm` | `a`, `b`, `c`, `z`, `bounds` |
//! | `f`, `g`, `g_alt` | `a`, `b`, `c`, `x`, `N`, `u`, `y` |
//! | `weight` | `a`, `b`, `c`, `x`, `N`, `y` |
//! | `gamma` | `a`, `b`, `c`, `x`, `N`, `u` |

use elliptic_sixj::biortho::{f_fn, g_alt_fn, g_fn, gamma, weight, BiorthoParams};
use elliptic_sixj::lattice::{domain_wall_pf, partition_function};
use elliptic_sixj::series::v_box;
use elliptic_sixj::sixj::identities::{vanishes_trivially, Vanishing};
use elliptic_sixj::sixj::{r6j, Method, SixJIndex};
use elliptic_sixj::weight::phi;
use elliptic_sixj::{Boundary, Error, Params, Subset, C64};
use serde_json::{json, Map, Value};

pub const EXPRESSIONS: &[&str] = &[
    "theta",
    "pochhammer",
    "phi",
    "dwpf",
    "pf",
    "r6j",
    "vnm",
    "f",
    "g",
    "g_alt",
    "weight",
    "gamma",
];

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    /// Malformed or out-of-domain arguments.
    #[error("{0}")]
    Usage(String),
    /// A singular or non-finite evaluation.
    #[error("{0}")]
    Numeric(String),
}

impl From<Error> for EvalError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::Capacity { .. } => EvalError::Usage(e.to_string()),
            Error::Singular(_) | Error::Numeric(_) => EvalError::Numeric(e.to_string()),
        }
    }
}

impl EvalError {
    /// The structured record printed for a failed evaluation.
    pub fn record(&self) -> Value {
        match self {
            EvalError::Usage(m) => json!({"error": "usage", "message": m}),
            EvalError::Numeric(m) => json!({"error": "singular", "message": m}),
        }
    }
}

fn usage(msg: impl Into<String>) -> EvalError {
    EvalError::Usage(msg.into())
}

struct Args<'a>(&'a Map<String, Value>);

impl Args<'_> {
    fn get(&self, key: &str) -> Result<&Value, EvalError> {
        self.0
            .get(key)
            .ok_or_else(|| usage(format!("missing argument {key:?}")))
    }

    fn complex_value(key: &str, v: &Value) -> Result<C64, EvalError> {
        let bad = || usage(format!("argument {key:?} is not a complex number"));
        match v {
            Value::Number(n) => Ok(C64::new(n.as_f64().ok_or_else(bad)?, 0.0)),
            Value::Array(a) if a.len() == 2 => Ok(C64::new(
                a[0].as_f64().ok_or_else(bad)?,
                a[1].as_f64().ok_or_else(bad)?,
            )),
            Value::Object(o) => {
                let part = |k: &str| o.get(k).map_or(Some(0.0), Value::as_f64).ok_or_else(bad);
                if o.keys().any(|k| k != "re" && k != "im") {
                    return Err(bad());
                }
                Ok(C64::new(part("re")?, part("im")?))
            }
            _ => Err(bad()),
        }
    }

    fn complex(&self, key: &str) -> Result<C64, EvalError> {
        Self::complex_value(key, self.get(key)?)
    }

    fn complex_or(&self, key: &str, default: C64) -> Result<C64, EvalError> {
        match self.0.get(key) {
            Some(v) => Self::complex_value(key, v),
            None => Ok(default),
        }
    }

    fn vector(&self, key: &str) -> Result<Vec<C64>, EvalError> {
        match self.get(key)? {
            Value::Array(a) => a.iter().map(|v| Self::complex_value(key, v)).collect(),
            _ => Err(usage(format!("argument {key:?} must be a list"))),
        }
    }

    fn int(&self, key: &str) -> Result<i64, EvalError> {
        self.get(key)?
            .as_i64()
            .ok_or_else(|| usage(format!("argument {key:?} must be an integer")))
    }

    fn naturals(&self, key: &str) -> Result<Vec<usize>, EvalError> {
        let bad = || {
            usage(format!(
                "argument {key:?} must be a list of non-negative integers"
            ))
        };
        match self.get(key)? {
            Value::Array(a) => a
                .iter()
                .map(|v| v.as_u64().map(|x| x as usize).ok_or_else(bad))
                .collect(),
            _ => Err(bad()),
        }
    }

    fn subset(&self, key: &str, ambient: usize) -> Result<Subset, EvalError> {
        let idx = self.naturals(key)?;
        if idx.iter().any(|&i| i == 0 || i > ambient) {
            return Err(usage(format!(
                "argument {key:?}: indices must lie in 1..={ambient}"
            )));
        }
        let zero_based: Vec<usize> = idx.iter().map(|i| i - 1).collect();
        Ok(Subset::from_indices(ambient, &zero_based)?)
    }

    fn string(&self, key: &str) -> Result<&str, EvalError> {
        self.get(key)?
            .as_str()
            .ok_or_else(|| usage(format!("argument {key:?} must be a string")))
    }

    fn params(&self) -> Result<Params, EvalError> {
        let p = self.complex_or("p", C64::new(0.0, 0.0))?;
        let q = self.complex_or("q", C64::new(0.5, 0.0))?;
        Ok(Params::new(p, q)?)
    }

    fn biortho(&self) -> Result<BiorthoParams<f64>, EvalError> {
        Ok(BiorthoParams::new(
            self.complex("a")?,
            self.complex("b")?,
            self.complex("c")?,
            self.vector("x")?,
            self.naturals("N")?,
        )?)
    }
}

/// JSON number for a real part: integral values print without a fraction, `-0` as `0`.
fn number(v: f64) -> Value {
    if v.is_finite() && v == v.trunc() && v.abs() < 9.0e15 {
        Value::from(v as i64)
    } else {
        serde_json::Number::from_f64(v).map_or_else(|| Value::from(v.to_string()), Value::Number)
    }
}

fn complex_json(v: C64) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("re".into(), number(v.re));
    m.insert("im".into(), number(v.im));
    m
}

/// Evaluates `expr` and returns the JSON object to print.
pub fn eval(expr: &str, args: &Value) -> Result<Value, EvalError> {
    let Value::Object(map) = args else {
        return Err(usage("arguments must be a JSON object"));
    };
    let a = Args(map);
    let params = a.params()?;
    let value = match expr {
        "theta" => params.theta(a.complex("x")?)?,
        "pochhammer" => params.pochhammer(a.complex("x")?, a.int("k")?)?,
        "phi" => phi(&params, &a.vector("w")?, &a.vector("z")?, a.complex("a")?)?,
        "dwpf" => domain_wall_pf(
            &params,
            a.complex("lambda")?,
            &a.vector("w")?,
            &a.vector("z")?,
        )?,
        "pf" => {
            let b = Boundary::parse(
                a.string("bottom")?,
                a.string("top")?,
                a.string("left")?,
                a.string("right")?,
            )?;
            partition_function(
                &params,
                a.complex("lambda")?,
                &a.vector("w")?,
                &a.vector("z")?,
                &b,
            )?
        }
        "r6j" => return r6j_eval(&a, &params),
        "vnm" => {
            v_box(
                &params,
                a.complex("a")?,
                &a.vector("b")?,
                &a.vector("c")?,
                &a.vector("z")?,
                &a.naturals("bounds")?,
            )?
            .value
        }
        "f" | "g" | "g_alt" => {
            let bp = a.biortho()?;
            let (u, y) = (a.naturals("u")?, a.naturals("y")?);
            match expr {
                "f" => f_fn(&params, &bp, &u, &y)?,
                "g" => g_fn(&params, &bp, &u, &y)?,
                _ => g_alt_fn(&params, &bp, &u, &y)?,
            }
        }
        "weight" => weight(&params, &a.biortho()?, &a.naturals("y")?)?,
        "gamma" => gamma(&params, &a.biortho()?, &a.naturals("u")?)?,
        other => {
            return Err(usage(format!(
                "unknown expression {other:?}; expected one of {}",
                EXPRESSIONS.join(", ")
            )))
        }
    };
    Ok(Value::Object(complex_json(value)))
}

fn r6j_eval(a: &Args, params: &Params) -> Result<Value, EvalError> {
    let (w, z) = (a.vector("w")?, a.vector("z")?);
    let (m, n) = (w.len(), z.len());
    let method: Method = match a.0.get("method") {
        None => Method::Mcmt,
        Some(Value::String(s)) => s
            .parse()
            .map_err(|_| usage(format!("unknown method {s:?}")))?,
        Some(_) => return Err(usage("argument \"method\" must be a string")),
    };
    let idx = SixJIndex::new(
        a.subset("s", m)?,
        a.subset("t", m)?,
        a.subset("u", n)?,
        a.subset("v", n)?,
        w,
        z,
        a.complex("lambda")?,
    )?;
    if vanishes_trivially(params, &idx) == Some(Vanishing::Parity) {
        let mut out = complex_json(C64::new(0.0, 0.0));
        out.insert("reason".into(), Value::from("parity"));
        return Ok(Value::Object(out));
    }
    let mut out = complex_json(r6j(params, &idx, method)?);
    out.insert("method".into(), Value::from(method.name()));
    Ok(Value::Object(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_at_one_vanishes() {
        let v = eval("theta", &json!({"x": 1, "p": 0.1})).unwrap();
        assert_eq!(v.to_string(), r#"{"re":0,"im":0}"#);
    }

    #[test]
    fn complex_argument_forms() {
        let a = json!({"x": [0.5, 0.25], "y": {"re": 0.5, "im": 0.25}, "z": 2});
        let m = a.as_object().unwrap();
        let args = Args(m);
        assert_eq!(args.complex("x").unwrap(), args.complex("y").unwrap());
        assert_eq!(args.complex("z").unwrap(), C64::new(2.0, 0.0));
        assert!(matches!(
            eval("theta", &json!({"x": "one"})),
            Err(EvalError::Usage(_))
        ));
        assert!(matches!(eval("nope", &json!({})), Err(EvalError::Usage(_))));
    }

    #[test]
    fn singular_evaluation_is_numeric() {
        let r = eval("phi", &json!({"w": [1.0], "z": [0.5], "a": 0.3, "q": 0.5}));
        assert!(matches!(r, Err(EvalError::Numeric(_))), "{r:?}");
    }
}
