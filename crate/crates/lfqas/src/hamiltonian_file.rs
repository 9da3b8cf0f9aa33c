//! Plain-text Hamiltonians: one `<coefficient> <Pauli symbols>` term per
//! line, `#` starting a comment, blank lines ignored. Qubit 0 is the
//! leftmost symbol. Repeated strings are summed.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use lfqas_core::pauli::{Hamiltonian, PauliError, PauliString};

#[derive(Debug, thiserror::Error)]
pub enum HamiltonianFileError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: Pauli string has {got} qubits, earlier terms have {expected}")]
    Length { line: usize, expected: usize, got: usize },
    #[error("no terms found")]
    Empty,
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

pub fn parse_hamiltonian(text: &str) -> Result<Hamiltonian, HamiltonianFileError> {
    let mut terms: Vec<(f64, PauliString)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let [coeff, symbols] = fields[..] else {
            return Err(HamiltonianFileError::Parse {
                line,
                message: format!("expected `<coefficient> <Pauli string>`, found {} fields", fields.len()),
            });
        };
        // Accept the typographic minus sign as well as the ASCII one.
        let coeff: f64 = coeff.replace('\u{2212}', "-").parse().map_err(|_| HamiltonianFileError::Parse {
            line,
            message: format!("invalid coefficient {coeff:?}"),
        })?;
        if !coeff.is_finite() {
            return Err(HamiltonianFileError::Parse { line, message: format!("coefficient {coeff} is not finite") });
        }
        let pauli = PauliString::from_text(symbols).map_err(|e| HamiltonianFileError::Parse { line, message: e.to_string() })?;
        if let Some((_, first)) = terms.first() {
            if first.n_qubits() != pauli.n_qubits() {
                return Err(HamiltonianFileError::Length { line, expected: first.n_qubits(), got: pauli.n_qubits() });
            }
        }
        terms.push((coeff, pauli));
    }
    let n = terms.first().map(|t| t.1.n_qubits()).ok_or(HamiltonianFileError::Empty)?;
    let h = Hamiltonian::new(n, terms)?;
    if h.is_empty() {
        return Err(HamiltonianFileError::Empty);
    }
    Ok(h)
}

/// Terms in canonical order with round-trip exact coefficients.
pub fn format_hamiltonian(h: &Hamiltonian) -> String {
    let mut out = format!("# {} qubits, {} terms, l1 norm {}\n", h.n_qubits(), h.len(), h.l1_norm());
    for t in h.terms() {
        writeln!(out, "{:?} {}", t.coeff, t.pauli.symbols()).expect("writing to a String");
    }
    out
}

pub fn read_hamiltonian(path: &Path) -> Result<Hamiltonian, HamiltonianFileError> {
    let text = fs::read_to_string(path).map_err(|source| HamiltonianFileError::Read { path: path.into(), source })?;
    parse_hamiltonian(&text)
}

pub fn write_hamiltonian(h: &Hamiltonian, path: &Path) -> Result<(), HamiltonianFileError> {
    fs::write(path, format_hamiltonian(h)).map_err(|source| HamiltonianFileError::Write { path: path.into(), source })
}
