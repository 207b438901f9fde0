//! One-shot computations. Each op reads a JSON object and returns the
//! result as JSON.

use doublevec::algebra::{der_bracket, der_exp};
use doublevec::aut::{aut_compose, aut_inverse};
use doublevec::bundles::{transport, AssocElement};
use doublevec::dla::build_double_algebra;
use doublevec::duality::{dual_rep, f_dual, pair};
use doublevec::frames::{frame_eval, frame_transition};
use doublevec::json;
use doublevec::scalar::{Rational, Scalar, ScalarKind};
use serde_json::{json, Value};

use crate::suites::parse_double_module;
use crate::CliError;

pub const OPS: [&str; 11] = [
    "compose",
    "inverse",
    "exp",
    "bracket",
    "fdual",
    "dualrep",
    "pair",
    "frame-eval",
    "frame-transition",
    "transport",
    "dla-build",
];

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    json::field(v, key).map_err(CliError::input)
}

pub fn compute(op: &str, input: &Value, scalar: ScalarKind, tol: f64) -> Result<Value, CliError> {
    if !(tol > 0.0) {
        return Err(CliError::Input(format!("tolerance must be positive, got {tol}")));
    }
    let result = match op {
        "exp" => {
            let x = json::der_from_json::<f64>(get(input, "X")?).map_err(CliError::input)?;
            json::aut_to_json(&der_exp(&x, tol).map_err(CliError::op)?)
        }
        "transport" => transport_op(input)?,
        "dla-build" => dla_build(input)?,
        _ if OPS.contains(&op) => match scalar {
            ScalarKind::Rational => generic::<Rational>(op, input)?,
            ScalarKind::Float => generic::<f64>(op, input)?,
        },
        other => return Err(CliError::Input(format!("unknown op `{other}`; expected one of {}", OPS.join(", ")))),
    };
    Ok(json!({"op": op, "result": result}))
}

fn generic<S: Scalar>(op: &str, input: &Value) -> Result<Value, CliError> {
    let aut = |key: &str| json::aut_from_json::<S>(get(input, key)?).map_err(CliError::input);
    let der = |key: &str| json::der_from_json::<S>(get(input, key)?).map_err(CliError::input);
    let elem = |key: &str| json::element_from_json::<S>(get(input, key)?).map_err(CliError::input);
    let frame = |key: &str| json::frame_from_json::<S>(get(input, key)?).map_err(CliError::input);
    Ok(match op {
        "compose" => json::aut_to_json(&aut_compose(&aut("a")?, &aut("b")?).map_err(CliError::op)?),
        "inverse" => json::aut_to_json(&aut_inverse(&aut("a")?).map_err(CliError::op)?),
        "bracket" => json::der_to_json(&der_bracket(&der("X")?, &der("Y")?).map_err(CliError::op)?),
        "fdual" => json::aut_to_json(&f_dual(&aut("a")?).map_err(CliError::op)?),
        "dualrep" => json::aut_to_json(&dual_rep(&aut("a")?).map_err(CliError::op)?),
        "pair" => pair(&elem("v")?, &elem("w")?).map_err(CliError::op)?.to_json(),
        "frame-eval" => json::element_to_json(&frame_eval(&frame("frame")?, &elem("xi")?).map_err(CliError::op)?),
        "frame-transition" => {
            json::aut_to_json(&frame_transition(&frame("from")?, &frame("to")?).map_err(CliError::op)?)
        }
        _ => unreachable!("dispatched above"),
    })
}

fn transport_op(input: &Value) -> Result<Value, CliError> {
    let b = json::bundle_from_json::<Rational>(get(input, "bundle")?).map_err(CliError::input)?;
    let e = get(input, "element")?;
    let chart = json::usize_of(get(e, "chart")?).map_err(CliError::input)?;
    let value = json::element_from_json::<Rational>(get(e, "value")?).map_err(CliError::input)?;
    let path = get(input, "path")?
        .as_array()
        .ok_or_else(|| CliError::Input("`path` must be a list of charts".into()))?
        .iter()
        .map(|c| json::usize_of(c).map_err(CliError::input))
        .collect::<Result<Vec<_>, _>>()?;
    let out = transport(&b.cocycle, &b.rep, &AssocElement::new(chart, value), &path).map_err(CliError::op)?;
    Ok(json!({"chart": out.chart, "value": json::element_to_json(&out.value)}))
}

fn dla_build(input: &Value) -> Result<Value, CliError> {
    let g1 = json::lie_from_json(get(input, "g1")?).map_err(CliError::input)?;
    let g2 = json::lie_from_json(get(input, "g2")?).map_err(CliError::input)?;
    let module = parse_double_module(input, &g1, &g2)?;
    let c = json::cochain_from_json(get(input, "cochain")?, g1.dim + g2.dim, module.dim()).map_err(CliError::input)?;
    let alg = build_double_algebra(&g1, &g2, &module, &c).map_err(CliError::op)?;
    Ok(json!({
        "n1": alg.n1,
        "n2": alg.n2,
        "core": alg.core,
        "constants": json::lie_to_json(&alg.lie),
        "core_central": alg.core_is_central(),
    }))
}
