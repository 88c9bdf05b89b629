//! Channel-spec documents: an ordered list of gate, noise and Kraus layers.
//!
//! Qubit indices are 1-based in documents. Layers built only from Pauli gates,
//! Pauli noise and explicit Pauli channels stay in sparse Pauli form, so such
//! specs work at any `n`; anything else composes densely.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::channel::{noise, ChannelModel};
use crate::dense::{c, CMatrix};
use crate::error::{Error, Result};
use crate::pauli::{Pauli1, PauliOperator};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PauliTerm {
    pub pauli: String,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Layer {
    NamedGate {
        named_gate: String,
        qubits: Vec<usize>,
    },
    Noise {
        noise: String,
        strength: f64,
        qubits: Vec<usize>,
    },
    /// Kraus operators on `qubits` (all qubits when omitted); entries are `[re, im]`.
    Kraus {
        kraus: Vec<Vec<Vec<[f64; 2]>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        qubits: Option<Vec<usize>>,
    },
    PauliChannel {
        pauli_channel: Vec<PauliTerm>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelSpecDocument {
    #[serde(default)]
    pub name: String,
    pub n: usize,
    pub build: Vec<Layer>,
}

/// A built channel plus non-fatal findings such as a non-trace-preserving result.
#[derive(Debug, Clone)]
pub struct LoadedChannel {
    pub name: String,
    pub channel: ChannelModel,
    pub warnings: Vec<String>,
}

fn field_err(path: &str, message: impl Into<String>) -> Error {
    Error::validation(path, message)
}

fn get_usize(v: &Value, path: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| field_err(path, "expected a nonnegative integer"))
}

fn get_f64(v: &Value, path: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| field_err(path, "expected a number"))
}

fn get_str<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| field_err(path, "expected a string"))
}

fn get_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| field_err(path, "expected an array"))
}

fn parse_qubits(v: Option<&Value>, path: &str, n: usize) -> Result<Vec<usize>> {
    let v = v.ok_or_else(|| field_err(path, "missing field"))?;
    let arr = get_array(v, path)?;
    if arr.is_empty() {
        return Err(field_err(path, "needs at least one qubit"));
    }
    let mut out = Vec::with_capacity(arr.len());
    for (i, q) in arr.iter().enumerate() {
        let qp = format!("{path}[{i}]");
        let q = get_usize(q, &qp)?;
        if q == 0 || q > n {
            return Err(field_err(&qp, format!("qubit {q} outside 1..={n}")));
        }
        if out.contains(&q) {
            return Err(field_err(&qp, format!("qubit {q} listed twice")));
        }
        out.push(q);
    }
    Ok(out)
}

fn check_keys(obj: &serde_json::Map<String, Value>, path: &str, allowed: &[&str]) -> Result<()> {
    for k in obj.keys() {
        if !allowed.contains(&k.as_str()) {
            return Err(field_err(
                &format!("{path}.{k}"),
                format!("unknown field (expected one of {})", allowed.join(", ")),
            ));
        }
    }
    Ok(())
}

fn parse_layer(v: &Value, path: &str, n: usize) -> Result<Layer> {
    let obj = v.as_object().ok_or_else(|| field_err(path, "expected an object"))?;
    if let Some(g) = obj.get("named_gate") {
        check_keys(obj, path, &["named_gate", "qubits"])?;
        let name = get_str(g, &format!("{path}.named_gate"))?.to_string();
        let qubits = parse_qubits(obj.get("qubits"), &format!("{path}.qubits"), n)?;
        let m = noise::named_gate(&name)
            .ok_or_else(|| field_err(&format!("{path}.named_gate"), format!("unknown gate {name:?}")))?;
        let arity = m.nrows().trailing_zeros() as usize;
        if arity != qubits.len() {
            return Err(field_err(
                &format!("{path}.qubits"),
                format!("{name} acts on {arity} qubit(s), got {}", qubits.len()),
            ));
        }
        return Ok(Layer::NamedGate { named_gate: name, qubits });
    }
    if let Some(kind) = obj.get("noise") {
        check_keys(obj, path, &["noise", "strength", "qubits"])?;
        let name = get_str(kind, &format!("{path}.noise"))?.to_string();
        let sp = format!("{path}.strength");
        let strength = get_f64(obj.get("strength").ok_or_else(|| field_err(&sp, "missing field"))?, &sp)?;
        if !(0.0..=1.0).contains(&strength) {
            return Err(field_err(&sp, format!("must lie in [0, 1], got {strength}")));
        }
        noise::named_noise(&name, strength)
            .map_err(|_| field_err(&format!("{path}.noise"), format!("unknown noise model {name:?}")))?;
        let qubits = parse_qubits(obj.get("qubits"), &format!("{path}.qubits"), n)?;
        return Ok(Layer::Noise { noise: name, strength, qubits });
    }
    if let Some(k) = obj.get("kraus") {
        check_keys(obj, path, &["kraus", "qubits"])?;
        let kp = format!("{path}.kraus");
        let qubits = match obj.get("qubits") {
            Some(_) => Some(parse_qubits(obj.get("qubits"), &format!("{path}.qubits"), n)?),
            None => None,
        };
        let width = qubits.as_ref().map_or(n, |q| q.len());
        let d = 1usize << width;
        let ops = get_array(k, &kp)?;
        if ops.is_empty() {
            return Err(field_err(&kp, "needs at least one operator"));
        }
        let mut kraus = Vec::with_capacity(ops.len());
        for (i, op) in ops.iter().enumerate() {
            let op_path = format!("{kp}[{i}]");
            let rows = get_array(op, &op_path)?;
            if rows.len() != d {
                return Err(field_err(&op_path, format!("expected {d} rows, got {}", rows.len())));
            }
            let mut mat = Vec::with_capacity(d);
            for (r, row) in rows.iter().enumerate() {
                let rp = format!("{op_path}[{r}]");
                let cells = get_array(row, &rp)?;
                if cells.len() != d {
                    return Err(field_err(&rp, format!("expected {d} entries, got {}", cells.len())));
                }
                let mut out_row = Vec::with_capacity(d);
                for (ci, cell) in cells.iter().enumerate() {
                    let cp = format!("{rp}[{ci}]");
                    let pair = get_array(cell, &cp)?;
                    if pair.len() != 2 {
                        return Err(field_err(&cp, "expected [re, im]"));
                    }
                    out_row.push([get_f64(&pair[0], &cp)?, get_f64(&pair[1], &cp)?]);
                }
                mat.push(out_row);
            }
            kraus.push(mat);
        }
        return Ok(Layer::Kraus { kraus, qubits });
    }
    if let Some(terms) = obj.get("pauli_channel") {
        check_keys(obj, path, &["pauli_channel"])?;
        let tp = format!("{path}.pauli_channel");
        let mut out = Vec::new();
        for (i, t) in get_array(terms, &tp)?.iter().enumerate() {
            let ip = format!("{tp}[{i}]");
            let pauli =
                get_str(t.get("pauli").ok_or_else(|| field_err(&ip, "missing pauli"))?, &format!("{ip}.pauli"))?;
            let parsed: PauliOperator =
                pauli.parse().map_err(|e: Error| field_err(&format!("{ip}.pauli"), e.to_string()))?;
            if parsed.n() != n {
                return Err(field_err(
                    &format!("{ip}.pauli"),
                    format!("{pauli} has {} qubits, expected {n}", parsed.n()),
                ));
            }
            let pp = format!("{ip}.probability");
            let probability = get_f64(t.get("probability").ok_or_else(|| field_err(&pp, "missing field"))?, &pp)?;
            if !(0.0..=1.0).contains(&probability) {
                return Err(field_err(&pp, format!("must lie in [0, 1], got {probability}")));
            }
            out.push(PauliTerm { pauli: pauli.to_string(), probability });
        }
        return Ok(Layer::PauliChannel { pauli_channel: out });
    }
    Err(field_err(path, "expected one of named_gate, noise, kraus, pauli_channel"))
}

impl ChannelSpecDocument {
    /// Parses and validates a document with field-level error messages.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s)?;
        let obj = v.as_object().ok_or_else(|| field_err("$", "expected an object"))?;
        check_keys(obj, "$", &["name", "n", "build"])?;
        let name = match obj.get("name") {
            Some(x) => get_str(x, "name")?.to_string(),
            None => String::new(),
        };
        let n = get_usize(obj.get("n").ok_or_else(|| field_err("n", "missing field"))?, "n")?;
        if n == 0 {
            return Err(field_err("n", "need at least one qubit"));
        }
        let build = get_array(obj.get("build").ok_or_else(|| field_err("build", "missing field"))?, "build")?
            .iter()
            .enumerate()
            .map(|(i, l)| parse_layer(l, &format!("build[{i}]"), n))
            .collect::<Result<Vec<_>>>()?;
        Ok(ChannelSpecDocument { name, n, build })
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn build(&self) -> Result<LoadedChannel> {
        let n = self.n;
        let mut channel = ChannelModel::identity(n);
        for (i, layer) in self.build.iter().enumerate() {
            let next = layer_channel(layer, n).map_err(|e| match e {
                Error::Validation { field, message } => {
                    Error::Validation { field: format!("build[{i}].{field}"), message }
                }
                other => other,
            })?;
            channel = channel.then(&next)?;
        }
        let cls = channel.classify();
        let mut warnings = Vec::new();
        if !cls.trace_preserving {
            warnings.push("composed channel is not trace-preserving".to_string());
        }
        if !cls.completely_positive {
            warnings.push("composed channel is not completely positive".to_string());
        }
        Ok(LoadedChannel { name: self.name.clone(), channel, warnings })
    }
}

fn pauli_on(n: usize, q: usize, f: Pauli1) -> PauliOperator {
    PauliOperator::single(n, q, f)
}

fn single_pauli_noise(name: &str, p: f64) -> Option<Vec<(Pauli1, f64)>> {
    match name.to_ascii_lowercase().as_str() {
        "depolarizing" => {
            Some(vec![(Pauli1::I, 1.0 - 0.75 * p), (Pauli1::X, p / 4.0), (Pauli1::Y, p / 4.0), (Pauli1::Z, p / 4.0)])
        }
        "bit_flip" => Some(vec![(Pauli1::I, 1.0 - p), (Pauli1::X, p)]),
        "phase_flip" => Some(vec![(Pauli1::I, 1.0 - p), (Pauli1::Z, p)]),
        _ => None,
    }
}

fn layer_channel(layer: &Layer, n: usize) -> Result<ChannelModel> {
    let zero_based = |qs: &[usize]| qs.iter().map(|q| q - 1).collect::<Vec<_>>();
    match layer {
        Layer::NamedGate { named_gate, qubits } => {
            let qs = zero_based(qubits);
            let pauli = match named_gate.to_ascii_lowercase().as_str() {
                "i" | "id" | "identity" => Some(Pauli1::I),
                "x" => Some(Pauli1::X),
                "y" => Some(Pauli1::Y),
                "z" => Some(Pauli1::Z),
                _ => None,
            };
            if let Some(f) = pauli {
                return ChannelModel::pauli_channel(n, vec![(pauli_on(n, qs[0], f), 1.0)]);
            }
            let m = noise::named_gate(named_gate)
                .ok_or_else(|| Error::validation("named_gate", format!("unknown gate {named_gate:?}")))?;
            ChannelModel::embed_kraus(&[m], &qs, n)
        }
        Layer::Noise { noise: name, strength, qubits } => {
            let mut out = ChannelModel::identity(n);
            for q in zero_based(qubits) {
                let next = match single_pauli_noise(name, *strength) {
                    Some(terms) => ChannelModel::pauli_channel(
                        n,
                        terms.into_iter().map(|(f, v)| (pauli_on(n, q, f), v)).collect(),
                    )?,
                    None => ChannelModel::embed_kraus(&noise::named_noise(name, *strength)?, &[q], n)?,
                };
                out = out.then(&next)?;
            }
            Ok(out)
        }
        Layer::Kraus { kraus, qubits } => {
            let ops: Vec<CMatrix> = kraus
                .iter()
                .map(|m| {
                    let d = m.len();
                    CMatrix::from_fn(d, d, |r, col| c(m[r][col][0], m[r][col][1]))
                })
                .collect();
            let qs = qubits.as_ref().map_or_else(|| (0..n).collect(), |q| zero_based(q));
            ChannelModel::embed_kraus(&ops, &qs, n)
        }
        Layer::PauliChannel { pauli_channel } => {
            let terms = pauli_channel
                .iter()
                .map(|t| Ok((t.pauli.parse::<PauliOperator>()?, t.probability)))
                .collect::<Result<Vec<_>>>()?;
            ChannelModel::pauli_channel(n, terms)
        }
    }
}

pub fn load_channel_document(path: &Path) -> Result<ChannelSpecDocument> {
    let text = fs::read_to_string(path)?;
    ChannelSpecDocument::from_json_str(&text)
}

/// Reads, validates and builds a channel spec.
pub fn load_channel(path: &Path) -> Result<LoadedChannel> {
    load_channel_document(path)?.build()
}

pub fn save_channel(doc: &ChannelSpecDocument, path: &Path) -> Result<()> {
    fs::write(path, doc.to_json_string()?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense;

    #[test]
    fn cnot_spec() {
        let doc = ChannelSpecDocument::from_json_str(
            r#"{"name":"cnot","n":2,"build":[{"named_gate":"CNOT","qubits":[1,2]}]}"#,
        )
        .unwrap();
        let loaded = doc.build().unwrap();
        let cls = loaded.channel.classify();
        assert!(cls.completely_positive && cls.trace_preserving && loaded.warnings.is_empty());
        let u = &loaded.channel.kraus().unwrap()[0];
        assert!(dense::max_abs_diff(u, &noise::cnot()) < 1e-15);
    }

    #[test]
    fn depolarizing_spec() {
        let doc = ChannelSpecDocument::from_json_str(
            r#"{"n":1,"build":[{"noise":"depolarizing","strength":0.3,"qubits":[1]}]}"#,
        )
        .unwrap();
        let chi = doc.build().unwrap().channel.chi().unwrap().diagonal_entries();
        for (got, want) in chi.iter().zip([0.775, 0.075, 0.075, 0.075]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn field_level_errors() {
        let err = ChannelSpecDocument::from_json_str(
            r#"{"n":1,"build":[{"noise":"depolarizing","strength":-0.1,"qubits":[1]}]}"#,
        )
        .unwrap_err();
        assert!(err.to_string().starts_with("build[0].strength"), "{err}");
        let err =
            ChannelSpecDocument::from_json_str(r#"{"n":2,"build":[{"named_gate":"CNOT","qubits":[1]}]}"#).unwrap_err();
        assert!(err.to_string().starts_with("build[0].qubits"), "{err}");
        let err =
            ChannelSpecDocument::from_json_str(r#"{"n":2,"build":[{"named_gate":"H","qubits":[3]}]}"#).unwrap_err();
        assert!(err.to_string().starts_with("build[0].qubits[0]"), "{err}");
        assert!(ChannelSpecDocument::from_json_str(r#"{"n":2,"build":[{"gate":"H"}]}"#).is_err());
    }

    #[test]
    fn kraus_layer_and_non_tp_warning() {
        let doc = ChannelSpecDocument::from_json_str(
            r#"{"n":2,"build":[{"kraus":[[[[0.9,0],[0,0]],[[0,0],[0.9,0]]]],"qubits":[2]}]}"#,
        )
        .unwrap();
        let loaded = doc.build().unwrap();
        assert_eq!(loaded.warnings, vec!["composed channel is not trace-preserving".to_string()]);
    }

    #[test]
    fn pauli_specs_stay_sparse_at_large_n() {
        let doc = ChannelSpecDocument {
            name: "wide".into(),
            n: 40,
            build: vec![
                Layer::Noise { noise: "depolarizing".into(), strength: 0.01, qubits: (1..=40).collect() },
                Layer::NamedGate { named_gate: "X".into(), qubits: vec![7] },
            ],
        };
        let loaded = doc.build().unwrap();
        assert!(loaded.channel.pauli_layers().is_some());
        let back = ChannelSpecDocument::from_json_str(&doc.to_json_string().unwrap()).unwrap();
        assert_eq!(back, doc);
    }
}
