//! Circuit JSON: `{"n_qubits": 2, "layers": [{"label": "rzz-1", "gates":
//! [{"kind": "rzz", "qubits": [0, 1], "param": 0}]}]}`, with `param`
//! omitted for `cz`.

use std::fs;
use std::path::{Path, PathBuf};

use lfqas_core::circuit::Circuit;

#[derive(Debug, thiserror::Error)]
pub enum CircuitFileError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("invalid circuit JSON at `{path}`: {message}")]
    Json { path: String, message: String },
}

pub fn circuit_from_json(text: &str) -> Result<Circuit, CircuitFileError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| CircuitFileError::Json {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })
}

/// Pretty-printed JSON with a trailing newline.
pub fn circuit_to_json(c: &Circuit) -> String {
    let mut s = serde_json::to_string_pretty(c).expect("circuits always serialize");
    s.push('\n');
    s
}

pub fn read_circuit(path: &Path) -> Result<Circuit, CircuitFileError> {
    let text = fs::read_to_string(path).map_err(|source| CircuitFileError::Read { path: path.into(), source })?;
    circuit_from_json(&text)
}

pub fn write_circuit(c: &Circuit, path: &Path) -> Result<(), CircuitFileError> {
    fs::write(path, circuit_to_json(c)).map_err(|source| CircuitFileError::Write { path: path.into(), source })
}
