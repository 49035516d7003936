//! JSON module literals: `{"dims": [..], "arrows": {"a": [[..], ..]}}`.
//!
//! Each arrow matrix has one row per basis vector at the arrow's target and
//! one column per basis vector at its source. Entries are integers or
//! strings such as `"-3/4"`. Arrows left out act by zero.

use serde_json::{json, Map, Value};

use crate::algebra::BoundQuiver;
use crate::error::{Error, Result};
use crate::field::{parse_rational, rational_to_i64, Field, Rational};
use crate::matrix::Matrix;
use crate::rep::Representation;

fn bad(msg: impl Into<String>) -> Error {
    Error::ModuleLiteral(msg.into())
}

fn entry(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(Rational::from_i64)
            .ok_or_else(|| bad(format!("{n} is not an integer"))),
        Value::String(s) => parse_rational(s).ok_or_else(|| bad(format!("{s:?} is not a rational number"))),
        other => Err(bad(format!("unexpected entry {other}"))),
    }
}

pub fn module_from_value(alg: &BoundQuiver, value: &Value) -> Result<Representation<Rational>> {
    let obj = value.as_object().ok_or_else(|| bad("expected an object"))?;
    let dims: Vec<usize> = obj
        .get("dims")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing \"dims\""))?
        .iter()
        .map(|d| {
            d.as_u64()
                .map(|x| x as usize)
                .ok_or_else(|| bad("dims must be natural numbers"))
        })
        .collect::<Result<_>>()?;
    if dims.len() != alg.n() {
        return Err(bad(format!("expected {} dims, got {}", alg.n(), dims.len())));
    }
    let empty = Map::new();
    let given = match obj.get("arrows") {
        None => &empty,
        Some(v) => v.as_object().ok_or_else(|| bad("\"arrows\" must be an object"))?,
    };
    let quiver = alg.quiver();
    for name in given.keys() {
        if quiver.arrow_index(name).is_none() {
            return Err(bad(format!("unknown arrow {name}")));
        }
    }
    let maps = quiver
        .arrows()
        .iter()
        .map(|a| {
            let (rows, cols) = (dims[a.target], dims[a.source]);
            let Some(v) = given.get(&a.name) else {
                return Ok(Matrix::zeros(rows, cols));
            };
            let data = v
                .as_array()
                .ok_or_else(|| bad(format!("arrow {} needs a list of rows", a.name)))?;
            if data.len() != rows {
                return Err(bad(format!("arrow {} needs {rows} rows", a.name)));
            }
            let mut m = Matrix::zeros(rows, cols);
            for (r, row) in data.iter().enumerate() {
                let row = row
                    .as_array()
                    .filter(|x| x.len() == cols)
                    .ok_or_else(|| bad(format!("arrow {} needs rows of length {cols}", a.name)))?;
                for (c, x) in row.iter().enumerate() {
                    m[(r, c)] = entry(x)?;
                }
            }
            Ok(m)
        })
        .collect::<Result<Vec<_>>>()?;
    alg.module(dims, maps)
}

pub fn parse_module(alg: &BoundQuiver, text: &str) -> Result<Representation<Rational>> {
    let value: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    module_from_value(alg, &value)
}

pub fn module_to_value(m: &Representation<Rational>) -> Value {
    let mut arrows = Map::new();
    for (k, a) in m.quiver().arrows().iter().enumerate() {
        let mat = m.arrow_map(k);
        let rows: Vec<Value> = (0..mat.rows())
            .map(|r| {
                Value::Array(
                    (0..mat.cols())
                        .map(|c| {
                            let q = &mat[(r, c)];
                            rational_to_i64(q).map_or_else(|| json!(q.to_string()), |i| json!(i))
                        })
                        .collect(),
                )
            })
            .collect();
        arrows.insert(a.name.clone(), Value::Array(rows));
    }
    json!({ "dims": m.dims(), "arrows": arrows })
}
