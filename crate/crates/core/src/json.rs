//! JSON encodings shared by the library and the command line.
//!
//! Scalars are `"p/q"` strings in exact mode and numbers in float mode.
//! Matrices are row-major nested arrays, bilinear maps `[k][i][j]` arrays.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::algebra::DvsDer;
use crate::aut::DvsAut;
use crate::bilinear::BilinearMap;
use crate::bundles::{CoverGraph, PrincipalCocycle, RepSpec};
use crate::dla::{Cochain, LieAlgebraSpec, ModuleSpec};
use crate::dlg::{DlgElement, DlgSpec};
use crate::dvs::{Dims, DvsElement};
use crate::error::{Error, Result};
use crate::frames::Frame;
use crate::linalg::Matrix;
use crate::scalar::{Rational, Scalar};

fn bad(what: &str, v: &Value) -> Error {
    let mut s = v.to_string();
    if s.len() > 80 {
        s.truncate(80);
        s.push_str("...");
    }
    Error::Input(format!("expected {what}, found {s}"))
}

pub fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Input(format!("missing field `{key}`")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(what, v))
}

pub fn usize_of(v: &Value) -> Result<usize> {
    v.as_u64().map(|n| n as usize).ok_or_else(|| bad("a non-negative integer", v))
}

pub fn vec_to_json<S: Scalar>(v: &[S]) -> Value {
    Value::Array(v.iter().map(S::to_json).collect())
}

pub fn vec_from_json<S: Scalar>(v: &Value) -> Result<Vec<S>> {
    array(v, "a vector")?.iter().map(S::from_json).collect()
}

fn vec_of_len<S: Scalar>(v: &Value, n: usize, what: &str) -> Result<Vec<S>> {
    let out = vec_from_json(v)?;
    if out.len() != n {
        return Err(Error::DimMismatch(format!("{what} has length {}, expected {n}", out.len())));
    }
    Ok(out)
}

pub fn matrix_to_json<S: Scalar>(m: &Matrix<S>) -> Value {
    Value::Array(m.to_rows().iter().map(|r| vec_to_json(r)).collect())
}

/// Parses a `rows × cols` matrix. An empty array is accepted for zero rows.
pub fn matrix_from_json<S: Scalar>(v: &Value, rows: usize, cols: usize) -> Result<Matrix<S>> {
    let rs = array(v, "a matrix")?;
    if rs.len() != rows {
        return Err(Error::DimMismatch(format!("matrix has {} rows, expected {rows}", rs.len())));
    }
    let parsed = rs.iter().map(|r| vec_of_len(r, cols, "matrix row")).collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(parsed, cols)
}

/// A square matrix whose size is read off the outer array.
pub fn square_from_json<S: Scalar>(v: &Value) -> Result<Matrix<S>> {
    let n = array(v, "a square matrix")?.len();
    matrix_from_json(v, n, n)
}

pub fn bilinear_to_json<S: Scalar>(b: &BilinearMap<S>) -> Value {
    let (n0, n1, n2) = b.shape();
    Value::Array(
        (0..n0)
            .map(|k| {
                Value::Array((0..n1).map(|i| Value::Array((0..n2).map(|j| b.get(k, i, j).to_json()).collect())).collect())
            })
            .collect(),
    )
}

pub fn bilinear_from_json<S: Scalar>(v: &Value, d: Dims) -> Result<BilinearMap<S>> {
    let ks = array(v, "a bilinear map")?;
    if ks.len() != d.n0 {
        return Err(Error::DimMismatch(format!("bilinear map has {} components, expected {}", ks.len(), d.n0)));
    }
    let nested = ks
        .iter()
        .map(|k| {
            let is = array(k, "a bilinear map component")?;
            if is.len() != d.n1 {
                return Err(Error::DimMismatch(format!("bilinear component has {} rows, expected {}", is.len(), d.n1)));
            }
            is.iter().map(|r| vec_of_len(r, d.n2, "bilinear row")).collect()
        })
        .collect::<Result<Vec<_>>>()?;
    BilinearMap::from_nested(d.n0, d.n1, d.n2, nested)
}

pub fn dims_to_json(d: Dims) -> Value {
    json!({"n1": d.n1, "n2": d.n2, "n0": d.n0})
}

pub fn dims_from_json(v: &Value) -> Result<Dims> {
    if let Some(s) = v.as_str() {
        return s.parse();
    }
    Ok(Dims::new(usize_of(field(v, "n1")?)?, usize_of(field(v, "n2")?)?, usize_of(field(v, "n0")?)?))
}

pub fn element_to_json<S: Scalar>(e: &DvsElement<S>) -> Value {
    json!({"x": vec_to_json(&e.x), "y": vec_to_json(&e.y), "z": vec_to_json(&e.z)})
}

pub fn element_from_json<S: Scalar>(v: &Value) -> Result<DvsElement<S>> {
    Ok(DvsElement::new(
        vec_from_json(field(v, "x")?)?,
        vec_from_json(field(v, "y")?)?,
        vec_from_json(field(v, "z")?)?,
    ))
}

fn blocks_to_json<S: Scalar>(keys: [&str; 4], a1: &Matrix<S>, a2: &Matrix<S>, a0: &Matrix<S>, mu: &BilinearMap<S>) -> Value {
    let mut m = Map::new();
    m.insert(keys[0].into(), matrix_to_json(a1));
    m.insert(keys[1].into(), matrix_to_json(a2));
    m.insert(keys[2].into(), matrix_to_json(a0));
    m.insert(keys[3].into(), bilinear_to_json(mu));
    Value::Object(m)
}

type Blocks<S> = (Matrix<S>, Matrix<S>, Matrix<S>, BilinearMap<S>);

fn blocks_from_json<S: Scalar>(keys: [&str; 4], v: &Value) -> Result<Blocks<S>> {
    let a1 = square_from_json(field(v, keys[0])?)?;
    let a2 = square_from_json(field(v, keys[1])?)?;
    let a0 = square_from_json(field(v, keys[2])?)?;
    let d = Dims::new(a1.rows(), a2.rows(), a0.rows());
    let mu = bilinear_from_json(field(v, keys[3])?, d)?;
    Ok((a1, a2, a0, mu))
}

const AUT_KEYS: [&str; 4] = ["a1", "a2", "a0", "mu"];
const DER_KEYS: [&str; 4] = ["A1", "A2", "A0", "alpha"];
const FRAME_KEYS: [&str; 4] = ["U", "V", "W", "mu"];

pub fn aut_to_json<S: Scalar>(a: &DvsAut<S>) -> Value {
    blocks_to_json(AUT_KEYS, &a.a1, &a.a2, &a.a0, &a.mu)
}

/// Parses a quadruple. Singular blocks are accepted here; operations that
/// need an inverse report `Singular` themselves.
pub fn aut_from_json<S: Scalar>(v: &Value) -> Result<DvsAut<S>> {
    let (a1, a2, a0, mu) = blocks_from_json(AUT_KEYS, v)?;
    Ok(DvsAut { a1, a2, a0, mu })
}

pub fn der_to_json<S: Scalar>(x: &DvsDer<S>) -> Value {
    blocks_to_json(DER_KEYS, &x.a1, &x.a2, &x.a0, &x.alpha)
}

pub fn der_from_json<S: Scalar>(v: &Value) -> Result<DvsDer<S>> {
    let (a1, a2, a0, alpha) = blocks_from_json(DER_KEYS, v)?;
    DvsDer::new(a1, a2, a0, alpha)
}

pub fn frame_to_json<S: Scalar>(f: &Frame<S>) -> Value {
    blocks_to_json(FRAME_KEYS, &f.u, &f.v, &f.w, &f.mu)
}

pub fn frame_from_json<S: Scalar>(v: &Value) -> Result<Frame<S>> {
    let (u, v2, w, mu) = blocks_from_json(FRAME_KEYS, v)?;
    Frame::new(u, v2, w, mu)
}

/// A bundle file: cover data plus `Aut(ℝ^[n])` transitions keyed `"i,j"`.
#[derive(Debug, Clone)]
pub struct BundleFile<S> {
    pub cocycle: PrincipalCocycle<S>,
    pub rep: RepSpec,
}

fn pairs_from_json(v: &Value, len: usize, what: &str) -> Result<Vec<Vec<usize>>> {
    array(v, what)?
        .iter()
        .map(|p| {
            let idx = array(p, what)?.iter().map(usize_of).collect::<Result<Vec<_>>>()?;
            if idx.len() != len {
                return Err(bad(what, p));
            }
            Ok(idx)
        })
        .collect()
}

fn transition_key(k: &str) -> Result<(usize, usize)> {
    let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| Error::Input(format!("bad transition key `{k}`")));
    match k.split_once(',') {
        Some((i, j)) => Ok((parse(i)?, parse(j)?)),
        None => Err(Error::Input(format!("bad transition key `{k}`"))),
    }
}

pub fn bundle_from_json<S: Scalar>(v: &Value) -> Result<BundleFile<S>> {
    let d = dims_from_json(field(v, "dims")?)?;
    let charts = usize_of(field(v, "charts")?)?;
    let overlaps: Vec<(usize, usize)> =
        pairs_from_json(field(v, "overlaps")?, 2, "an overlap pair")?.iter().map(|p| (p[0], p[1])).collect();
    let triples: Vec<(usize, usize, usize)> = match v.get("triples") {
        Some(t) => pairs_from_json(t, 3, "a triple")?.iter().map(|p| (p[0], p[1], p[2])).collect(),
        None => Vec::new(),
    };
    let cover = CoverGraph::new(charts, &overlaps, &triples)?;
    let group = DlgSpec::aut(d);
    let obj = field(v, "transitions")?.as_object().ok_or_else(|| bad("a transition map", v))?;
    let mut transitions = BTreeMap::new();
    for (k, q) in obj {
        let a = aut_from_json::<S>(q)?;
        if a.dims() != d {
            return Err(Error::DimMismatch(format!("transition {k} has dims {}, bundle has {d}", a.dims())));
        }
        transitions.insert(transition_key(k)?, DlgElement::Aut(a));
    }
    let rep = match v.get("representation").map(|r| r.as_str()) {
        None | Some(Some("aut")) => RepSpec::Identity,
        Some(Some("dual")) => RepSpec::Identity.dual(),
        Some(_) => return Err(Error::Input("representation must be \"aut\" or \"dual\"".into())),
    };
    Ok(BundleFile { cocycle: PrincipalCocycle::new(cover, group, transitions)?, rep })
}

pub fn bundle_to_json<S: Scalar>(b: &BundleFile<S>) -> Result<Value> {
    let pc = &b.cocycle;
    let d = RepSpec::Identity.dims(&pc.group)?;
    let mut transitions = Map::new();
    for (&(i, j), g) in pc.transitions() {
        if i < j {
            let a = g.as_aut().ok_or_else(|| Error::Input("bundle file needs Aut transitions".into()))?;
            transitions.insert(format!("{i},{j}"), aut_to_json(a));
        }
    }
    let rep = match &b.rep {
        RepSpec::Identity => "aut",
        RepSpec::Dual(inner) if **inner == RepSpec::Identity => "dual",
        other => return Err(Error::Input(format!("representation {other:?} has no file encoding"))),
    };
    Ok(json!({
        "dims": dims_to_json(d),
        "charts": pc.cover.charts(),
        "overlaps": pc.cover.overlaps().filter(|(i, j)| i < j).map(|(i, j)| json!([i, j])).collect::<Vec<_>>(),
        "triples": pc.cover.triples().map(|(i, j, k)| json!([i, j, k])).collect::<Vec<_>>(),
        "transitions": transitions,
        "representation": rep,
    }))
}

pub fn lie_to_json(alg: &LieAlgebraSpec) -> Value {
    let n = alg.to_nested();
    Value::Array(
        n.iter()
            .map(|r| Value::Array(r.iter().map(|v| vec_to_json(v)).collect()))
            .collect(),
    )
}

pub fn lie_from_json(v: &Value) -> Result<LieAlgebraSpec> {
    let nested = array(v, "structure constants")?
        .iter()
        .map(|r| array(r, "structure constants")?.iter().map(vec_from_json::<Rational>).collect())
        .collect::<Result<Vec<Vec<Vec<Rational>>>>>()?;
    LieAlgebraSpec::from_nested(nested)
}

/// A module is the list of action matrices, one per generator. `dim` is
/// needed when the algebra is zero-dimensional.
pub fn module_from_json(v: &Value, alg: &LieAlgebraSpec, dim: Option<usize>) -> Result<ModuleSpec> {
    let ms = array(v, "module action matrices")?;
    if ms.len() != alg.dim {
        return Err(Error::DimMismatch(format!("{} action matrices for a {}-dimensional algebra", ms.len(), alg.dim)));
    }
    let m = match (ms.first(), dim) {
        (_, Some(m)) => m,
        (Some(first), None) => array(first, "a matrix")?.len(),
        (None, None) => 0,
    };
    let action = ms.iter().map(|a| matrix_from_json(a, m, m)).collect::<Result<Vec<_>>>()?;
    let module = ModuleSpec::new(m, action)?;
    if !module.is_module_for(alg) {
        return Err(Error::Input("action matrices do not define a module".into()));
    }
    Ok(module)
}

pub fn module_to_json(m: &ModuleSpec) -> Value {
    Value::Array(m.action.iter().map(matrix_to_json).collect())
}

/// `{"degree", "coefficients"}`, coefficients on increasing index tuples
/// with the module index fastest.
pub fn cochain_to_json(c: &Cochain) -> Value {
    json!({"degree": c.degree, "coefficients": vec_to_json(&c.to_coords())})
}

pub fn cochain_from_json(v: &Value, n: usize, m: usize) -> Result<Cochain> {
    let degree = usize_of(field(v, "degree")?)?;
    let coords = vec_from_json::<Rational>(field(v, "coefficients")?)?;
    Cochain::from_coords(degree, n, m, &coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadruple_round_trip() {
        let a = DvsAut::<Rational>::from_scalars(
            Rational::from_i64(2),
            Rational::from_i64(3),
            Rational::from_i64(5),
            Rational::from_ratio(7, 2),
        );
        let v = aut_to_json(&a);
        assert_eq!(v, json!({"a1": [["2"]], "a2": [["3"]], "a0": [["5"]], "mu": [[["7/2"]]]}));
        assert_eq!(aut_from_json::<Rational>(&v).unwrap(), a);
    }

    #[test]
    fn float_quadruple_uses_numbers() {
        let a = DvsAut::<f64>::from_scalars(0.5, 1.0, 2.0, -1.0);
        let v = aut_to_json(&a);
        assert_eq!(v["mu"], json!([[[-1.0]]]));
        assert_eq!(aut_from_json::<f64>(&v).unwrap(), a);
    }

    #[test]
    fn shape_errors() {
        let v = json!({"a1": [["1"]], "a2": [["1"]], "a0": [["1"]], "mu": [[["1", "2"]]]});
        assert!(matches!(aut_from_json::<Rational>(&v), Err(Error::DimMismatch(_))));
        assert!(matches!(aut_from_json::<Rational>(&json!({"a1": 1})), Err(Error::Input(_))));
    }

    #[test]
    fn empty_blocks() {
        let a = DvsAut::<Rational>::identity(Dims::new(2, 0, 1));
        let v = aut_to_json(&a);
        assert_eq!(aut_from_json::<Rational>(&v).unwrap(), a);
    }

    #[test]
    fn dims_forms() {
        assert_eq!(dims_from_json(&json!({"n1": 1, "n2": 2, "n0": 3})).unwrap(), Dims::new(1, 2, 3));
        assert_eq!(dims_from_json(&json!("2,2,1")).unwrap(), Dims::new(2, 2, 1));
    }

    #[test]
    fn bundle_round_trip() {
        let q = aut_to_json(&DvsAut::<Rational>::from_scalars(
            Rational::from_i64(2),
            Rational::from_i64(3),
            Rational::from_i64(5),
            Rational::from_i64(7),
        ));
        let id = aut_to_json(&DvsAut::<Rational>::identity(Dims::new(1, 1, 1)));
        let v = json!({
            "dims": {"n1": 1, "n2": 1, "n0": 1},
            "charts": 3,
            "overlaps": [[0, 1], [1, 2], [0, 2]],
            "triples": [[0, 1, 2]],
            "transitions": {"0,1": id, "1,2": id, "2,0": q},
            "representation": "aut"
        });
        let b = bundle_from_json::<Rational>(&v).unwrap();
        let again = bundle_from_json::<Rational>(&bundle_to_json(&b).unwrap()).unwrap();
        assert_eq!(again.cocycle, b.cocycle);
        assert_eq!(again.rep, RepSpec::Identity);
    }

    #[test]
    fn cochain_round_trip() {
        let c = Cochain::from_coords(2, 3, 1, &[Rational::from_i64(1), Rational::from_i64(0), Rational::from_i64(-2)]).unwrap();
        assert_eq!(cochain_from_json(&cochain_to_json(&c), 3, 1).unwrap(), c);
    }

    #[test]
    fn lie_round_trip() {
        let g = LieAlgebraSpec::sl2();
        assert_eq!(lie_from_json(&lie_to_json(&g)).unwrap(), g);
    }
}
