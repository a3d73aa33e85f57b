//! Instance and graph file formats.
//!
//! Instance JSON:
//! ```json
//! {
//!   "dim": 4,
//!   "Kperp": [ [[1, 2, "1"]], [[1, 3, "1"], [2, 4, "1"]] ],
//!   "components": [ [["1", "0", "0", "0"], ["0", "1", "0", "0"]] ]
//! }
//! ```
//! Exactly one of "K" / "Kperp" must be present: a list of bivectors, each
//! a list of terms `[i, j, coeff]` with 1 <= i < j <= dim. Coefficients
//! are strings "num/den" or bare JSON integers; no float path exists.
//! Optional "components" lists candidate resonance components, each a list
//! of length-dim coordinate vectors.
//!
//! Graph JSON: `{"vertices": n, "edges": [[i, j], ...]}`, 1-based, i < j.

use serde_json::Value;

use resonance_core::multilinear::{Bivector, PairSpec};
use resonance_core::raag::Graph;
use resonance_core::rat::{parse_rat, Rat};
use resonance_core::resonance::SubspaceSpec;

use crate::failure::Failure;

pub struct Instance {
    pub spec: PairSpec,
    pub components: Vec<SubspaceSpec>,
    pub digest: String,
    pub given_side: &'static str,
}

fn parse_coeff(v: &Value) -> Result<Rat, Failure> {
    match v {
        Value::String(s) => {
            parse_rat(s).ok_or_else(|| Failure::parse(format!("bad rational literal {s:?}")))
        }
        Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| Failure::parse(format!("non-integer numeric literal {n}")))?;
            Ok(Rat::from_integer(i.into()))
        }
        other => Err(Failure::parse(format!(
            "expected \"num/den\" string or integer, got {other}"
        ))),
    }
}

fn parse_bivector(n: usize, v: &Value) -> Result<Bivector, Failure> {
    let terms = v
        .as_array()
        .ok_or_else(|| Failure::parse("bivector must be an array of terms".into()))?;
    let mut parsed = Vec::with_capacity(terms.len());
    for t in terms {
        let t = t
            .as_array()
            .filter(|a| a.len() == 3)
            .ok_or_else(|| Failure::parse("bivector term must be [i, j, coeff]".into()))?;
        let i = t[0]
            .as_u64()
            .ok_or_else(|| Failure::parse("term index must be a positive integer".into()))?
            as usize;
        let j = t[1]
            .as_u64()
            .ok_or_else(|| Failure::parse("term index must be a positive integer".into()))?
            as usize;
        if i == 0 || j == 0 || i >= j || j > n {
            return Err(Failure::parse(format!(
                "term indices ({i}, {j}) must satisfy 1 <= i < j <= {n}"
            )));
        }
        parsed.push((i - 1, j - 1, parse_coeff(&t[2])?));
    }
    Bivector::from_terms(n, &parsed).map_err(|e| Failure::parse(e.to_string()))
}

fn parse_vector(n: usize, v: &Value) -> Result<Vec<Rat>, Failure> {
    let entries = v
        .as_array()
        .filter(|a| a.len() == n)
        .ok_or_else(|| Failure::parse(format!("vector must be an array of length {n}")))?;
    entries.iter().map(parse_coeff).collect()
}

pub fn load_instance(path: &str) -> Result<Instance, Failure> {
    let bytes = std::fs::read(path)
        .map_err(|e| Failure::parse(format!("cannot read {path}: {e}")))?;
    let digest = fnv_digest(&bytes);
    let root: Value = serde_json::from_slice(&bytes)
        .map_err(|e| Failure::parse(format!("{path}: {e}")))?;
    let obj = root
        .as_object()
        .ok_or_else(|| Failure::parse("instance must be a JSON object".into()))?;
    let n = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Failure::parse("missing or invalid \"dim\"".into()))? as usize;
    if n == 0 {
        return Err(Failure::parse("\"dim\" must be positive".into()));
    }
    let k = obj.get("K");
    let kperp = obj.get("Kperp");
    let (side, list, given_side) = match (k, kperp) {
        (Some(v), None) => ("K", v, "K"),
        (None, Some(v)) => ("Kperp", v, "Kperp"),
        _ => {
            return Err(Failure::parse(
                "exactly one of \"K\" / \"Kperp\" must be given".into(),
            ))
        }
    };
    let bivs = list
        .as_array()
        .ok_or_else(|| Failure::parse(format!("\"{side}\" must be an array of bivectors")))?
        .iter()
        .map(|b| parse_bivector(n, b))
        .collect::<Result<Vec<_>, _>>()?;
    let spec = if side == "K" {
        PairSpec::from_k(n, bivs)
    } else {
        PairSpec::from_kperp(n, bivs)
    }
    .map_err(|e| Failure::parse(e.to_string()))?;

    let mut components = Vec::new();
    if let Some(comps) = obj.get("components") {
        let comps = comps
            .as_array()
            .ok_or_else(|| Failure::parse("\"components\" must be an array".into()))?;
        for c in comps {
            let vecs = c
                .as_array()
                .ok_or_else(|| Failure::parse("component must be an array of vectors".into()))?
                .iter()
                .map(|v| parse_vector(n, v))
                .collect::<Result<Vec<_>, _>>()?;
            components.push(
                SubspaceSpec::new(n, vecs).map_err(|e| Failure::parse(e.to_string()))?,
            );
        }
    }
    Ok(Instance {
        spec,
        components,
        digest,
        given_side,
    })
}

pub fn load_graph(path: &str) -> Result<(Graph, String), Failure> {
    let bytes = std::fs::read(path)
        .map_err(|e| Failure::parse(format!("cannot read {path}: {e}")))?;
    let digest = fnv_digest(&bytes);
    let root: Value = serde_json::from_slice(&bytes)
        .map_err(|e| Failure::parse(format!("{path}: {e}")))?;
    let obj = root
        .as_object()
        .ok_or_else(|| Failure::parse("graph must be a JSON object".into()))?;
    let n = obj
        .get("vertices")
        .and_then(Value::as_u64)
        .ok_or_else(|| Failure::parse("missing or invalid \"vertices\"".into()))?
        as usize;
    let mut edges = Vec::new();
    if let Some(list) = obj.get("edges") {
        let list = list
            .as_array()
            .ok_or_else(|| Failure::parse("\"edges\" must be an array".into()))?;
        for e in list {
            let e = e
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Failure::parse("edge must be [i, j]".into()))?;
            let i = e[0]
                .as_u64()
                .ok_or_else(|| Failure::parse("edge endpoint must be an integer".into()))?
                as usize;
            let j = e[1]
                .as_u64()
                .ok_or_else(|| Failure::parse("edge endpoint must be an integer".into()))?
                as usize;
            edges.push((i, j));
        }
    }
    let g = Graph::new(n, edges).map_err(|e| Failure::parse(e.to_string()))?;
    Ok((g, digest))
}

/// Components given on the command line: vectors split by ';', entries by ','.
pub fn parse_component_arg(n: usize, arg: &str) -> Result<SubspaceSpec, Failure> {
    let mut basis = Vec::new();
    for chunk in arg.split(';') {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            continue;
        }
        let v: Result<Vec<Rat>, Failure> = chunk
            .split(',')
            .map(|e| {
                parse_rat(e.trim())
                    .ok_or_else(|| Failure::parse(format!("bad rational literal {e:?}")))
            })
            .collect();
        let v = v?;
        if v.len() != n {
            return Err(Failure::parse(format!(
                "component vector has {} entries, expected {n}",
                v.len()
            )));
        }
        basis.push(v);
    }
    SubspaceSpec::new(n, basis).map_err(|e| Failure::parse(e.to_string()))
}

pub fn fnv_digest(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x1000_0000_01b3);
    }
    format!("{h:016x}")
}
