//! Pauli terms over the alphabet {I, X, Z, ZX}, generators and Clifford conjugation.
//!
//! `ZX` always means the ordered product Z·X. Y is never produced; Y = i·ZX is
//! representable through the coefficient if a caller needs it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::C64;

pub type QubitId = u32;

/// Comparison tolerance for coefficients.
pub const TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PauliError {
    #[error("bad pauli token `{0}`")]
    BadToken(String),
    #[error("qubit ids are 1-based, got 0")]
    ZeroId,
    #[error("qubit {0} appears twice")]
    Repeated(QubitId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PauliOp {
    I,
    X,
    Z,
    ZX,
}

impl PauliOp {
    /// (x, z) exponents with op = Z^z X^x.
    pub fn bits(self) -> (bool, bool) {
        match self {
            PauliOp::I => (false, false),
            PauliOp::X => (true, false),
            PauliOp::Z => (false, true),
            PauliOp::ZX => (true, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => PauliOp::I,
            (true, false) => PauliOp::X,
            (false, true) => PauliOp::Z,
            (true, true) => PauliOp::ZX,
        }
    }

    /// Single-site product: returns (sign, op) with self·rhs = sign·op.
    pub fn site_product(self, rhs: PauliOp) -> (f64, PauliOp) {
        let (x1, z1) = self.bits();
        let (x2, z2) = rhs.bits();
        // Z^z1 X^x1 Z^z2 X^x2 = (-1)^(x1 z2) Z^(z1+z2) X^(x1+x2)
        let sign = if x1 && z2 { -1.0 } else { 1.0 };
        (sign, PauliOp::from_bits(x1 ^ x2, z1 ^ z2))
    }

    pub fn anticommutes(self, rhs: PauliOp) -> bool {
        let (x1, z1) = self.bits();
        let (x2, z2) = rhs.bits();
        (x1 & z2) ^ (z1 & x2)
    }

    pub fn label(self) -> &'static str {
        match self {
            PauliOp::I => "I",
            PauliOp::X => "X",
            PauliOp::Z => "Z",
            PauliOp::ZX => "ZX",
        }
    }

    /// 2x2 matrix, row-major.
    pub fn matrix(self) -> [C64; 4] {
        let o = C64::new(1.0, 0.0);
        let z = C64::new(0.0, 0.0);
        match self {
            PauliOp::I => [o, z, z, o],
            PauliOp::X => [z, o, o, z],
            PauliOp::Z => [o, z, z, -o],
            PauliOp::ZX => [z, o, -o, z],
        }
    }
}

/// coeff · ⊗ ops. Sites absent from `ops` carry I; I is never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliTerm {
    pub coeff: C64,
    ops: BTreeMap<QubitId, PauliOp>,
}

impl PauliTerm {
    pub fn identity() -> Self {
        Self::scalar(C64::new(1.0, 0.0))
    }

    pub fn scalar(coeff: C64) -> Self {
        PauliTerm {
            coeff,
            ops: BTreeMap::new(),
        }
    }

    pub fn new(coeff: C64, ops: impl IntoIterator<Item = (QubitId, PauliOp)>) -> Self {
        let mut t = Self::scalar(coeff);
        for (q, op) in ops {
            t.set(q, op);
        }
        t
    }

    pub fn single(q: QubitId, op: PauliOp) -> Self {
        Self::new(C64::new(1.0, 0.0), [(q, op)])
    }

    /// Z on every qubit of `qs`.
    pub fn z_string<'a>(qs: impl IntoIterator<Item = &'a QubitId>) -> Self {
        Self::new(C64::new(1.0, 0.0), qs.into_iter().map(|&q| (q, PauliOp::Z)))
    }

    pub fn x_string<'a>(qs: impl IntoIterator<Item = &'a QubitId>) -> Self {
        Self::new(C64::new(1.0, 0.0), qs.into_iter().map(|&q| (q, PauliOp::X)))
    }

    pub fn get(&self, q: QubitId) -> PauliOp {
        self.ops.get(&q).copied().unwrap_or(PauliOp::I)
    }

    pub fn set(&mut self, q: QubitId, op: PauliOp) {
        if op == PauliOp::I {
            self.ops.remove(&q);
        } else {
            self.ops.insert(q, op);
        }
    }

    pub fn ops(&self) -> &BTreeMap<QubitId, PauliOp> {
        &self.ops
    }

    pub fn support(&self) -> BTreeSet<QubitId> {
        self.ops.keys().copied().collect()
    }

    pub fn is_identity(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn with_coeff(mut self, coeff: C64) -> Self {
        self.coeff = coeff;
        self
    }

    /// Operator part only, coefficient reset to 1.
    pub fn unit(&self) -> Self {
        PauliTerm {
            coeff: C64::new(1.0, 0.0),
            ops: self.ops.clone(),
        }
    }

    pub fn approx_eq(&self, other: &PauliTerm, tol: f64) -> bool {
        self.ops == other.ops && (self.coeff - other.coeff).norm() <= tol
    }

    /// The ops in text form, e.g. "X1 Z2 ZX3". Identity prints as "I".
    pub fn ops_string(&self) -> String {
        if self.ops.is_empty() {
            return "I".to_string();
        }
        self.ops
            .iter()
            .map(|(q, op)| format!("{}{}", op.label(), q))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Dense 2^n x 2^n matrix over `universe` (first entry is the most significant bit).
    pub fn to_matrix(&self, universe: &[QubitId]) -> Vec<C64> {
        let mut m = vec![self.coeff];
        let mut dim = 1;
        for &q in universe {
            m = kron(&m, dim, &self.get(q).matrix(), 2);
            dim *= 2;
        }
        m
    }
}

impl fmt::Display for PauliTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}{:+}i) {}", self.coeff.re, self.coeff.im, self.ops_string())
    }
}

impl FromStr for PauliTerm {
    type Err = PauliError;

    /// Parses the ops text form with unit coefficient.
    fn from_str(s: &str) -> Result<Self, PauliError> {
        let mut t = PauliTerm::identity();
        if s.trim() == "I" {
            return Ok(t);
        }
        let mut seen = BTreeSet::new();
        for tok in s.split_whitespace() {
            let split = tok
                .find(|c: char| c.is_ascii_digit())
                .ok_or_else(|| PauliError::BadToken(tok.into()))?;
            let (letters, digits) = tok.split_at(split);
            let op = match letters {
                "I" => PauliOp::I,
                "X" => PauliOp::X,
                "Z" => PauliOp::Z,
                "ZX" => PauliOp::ZX,
                _ => return Err(PauliError::BadToken(tok.into())),
            };
            let q: QubitId = digits.parse().map_err(|_| PauliError::BadToken(tok.into()))?;
            if q == 0 {
                return Err(PauliError::ZeroId);
            }
            if !seen.insert(q) {
                return Err(PauliError::Repeated(q));
            }
            t.set(q, op);
        }
        if seen.is_empty() {
            return Err(PauliError::BadToken(s.into()));
        }
        Ok(t)
    }
}

#[derive(Serialize, Deserialize)]
struct PauliTermRepr {
    coeff: Complex64,
    ops: String,
}

impl Serialize for PauliTerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PauliTermRepr {
            coeff: self.coeff,
            ops: self.ops_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PauliTerm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = PauliTermRepr::deserialize(d)?;
        let t: PauliTerm = r.ops.parse().map_err(serde::de::Error::custom)?;
        Ok(t.with_coeff(r.coeff))
    }
}

/// Group product with the phase folded into the coefficient.
pub fn multiply(lhs: &PauliTerm, rhs: &PauliTerm) -> PauliTerm {
    let mut out = PauliTerm::scalar(lhs.coeff * rhs.coeff);
    let sites: BTreeSet<QubitId> = lhs.ops.keys().chain(rhs.ops.keys()).copied().collect();
    for q in sites {
        let (sign, op) = lhs.get(q).site_product(rhs.get(q));
        out.coeff *= sign;
        out.set(q, op);
    }
    out
}

pub fn commutes(k1: &PauliTerm, k2: &PauliTerm) -> bool {
    let anti = k1.ops.iter().filter(|(q, op)| op.anticommutes(k2.get(**q))).count();
    anti % 2 == 0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum CliffordGate {
    H { target: QubitId },
    CZ { control: QubitId, target: QubitId },
    CX { control: QubitId, target: QubitId },
}

impl CliffordGate {
    pub fn qubits(&self) -> Vec<QubitId> {
        match *self {
            CliffordGate::H { target } => vec![target],
            CliffordGate::CZ { control, target } | CliffordGate::CX { control, target } => vec![control, target],
        }
    }

    /// Same gate acting on relabelled qubits.
    pub fn relabel(&self, f: impl Fn(QubitId) -> QubitId) -> CliffordGate {
        match *self {
            CliffordGate::H { target } => CliffordGate::H { target: f(target) },
            CliffordGate::CZ { control, target } => CliffordGate::CZ {
                control: f(control),
                target: f(target),
            },
            CliffordGate::CX { control, target } => CliffordGate::CX {
                control: f(control),
                target: f(target),
            },
        }
    }

    // Images of X_q and Z_q under gate·P·gate†.
    fn image_x(&self, q: QubitId) -> PauliTerm {
        match *self {
            CliffordGate::H { target } if q == target => PauliTerm::single(q, PauliOp::Z),
            CliffordGate::CZ { control, target } if q == control => {
                PauliTerm::new(C64::new(1.0, 0.0), [(q, PauliOp::X), (target, PauliOp::Z)])
            }
            CliffordGate::CZ { control, target } if q == target => {
                PauliTerm::new(C64::new(1.0, 0.0), [(q, PauliOp::X), (control, PauliOp::Z)])
            }
            CliffordGate::CX { control, target } if q == control => {
                PauliTerm::new(C64::new(1.0, 0.0), [(q, PauliOp::X), (target, PauliOp::X)])
            }
            _ => PauliTerm::single(q, PauliOp::X),
        }
    }

    fn image_z(&self, q: QubitId) -> PauliTerm {
        match *self {
            CliffordGate::H { target } if q == target => PauliTerm::single(q, PauliOp::X),
            CliffordGate::CX { control, target } if q == target => {
                PauliTerm::new(C64::new(1.0, 0.0), [(q, PauliOp::Z), (control, PauliOp::Z)])
            }
            _ => PauliTerm::single(q, PauliOp::Z),
        }
    }
}

/// gate · term · gate†.
pub fn conjugate(gate: &CliffordGate, term: &PauliTerm) -> PauliTerm {
    // Conjugation is a homomorphism, so map Z^z X^x site by site in order.
    let mut out = PauliTerm::scalar(term.coeff);
    for (&q, &op) in &term.ops {
        let (x, z) = op.bits();
        if z {
            out = multiply(&out, &gate.image_z(q));
        }
        if x {
            out = multiply(&out, &gate.image_x(q));
        }
    }
    out
}

/// G = a·I + b·K with K = X_qubit ⊗ Z_{N(qubit)}.
#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub a: C64,
    pub b: C64,
    pub qubit: QubitId,
    pub neighborhood: BTreeSet<QubitId>,
}

impl Generator {
    pub fn new(a: C64, b: C64, qubit: QubitId) -> Self {
        Generator {
            a,
            b,
            qubit,
            neighborhood: BTreeSet::new(),
        }
    }

    pub fn stabilizer(&self) -> PauliTerm {
        let mut k = PauliTerm::z_string(&self.neighborhood);
        k.set(self.qubit, PauliOp::X);
        k
    }

    /// a·I + b·K as two terms.
    pub fn terms(&self) -> [PauliTerm; 2] {
        [PauliTerm::scalar(self.a), self.stabilizer().with_coeff(self.b)]
    }

    /// Coefficient c of G†G = 1·(|a|²+|b|²) + c·K.
    pub fn gram_cross(&self) -> C64 {
        self.a.conj() * self.b + self.b.conj() * self.a
    }

    pub fn is_unitary(&self) -> bool {
        self.gram_cross().norm() <= TOL
    }
}

/// Toggle `other` in the neighborhood (CZ is an involution).
pub fn entangle(g: &Generator, other: QubitId) -> Generator {
    assert_ne!(g.qubit, other, "cannot entangle a qubit with itself");
    let mut out = g.clone();
    if !out.neighborhood.remove(&other) {
        out.neighborhood.insert(other);
    }
    out
}

/// Kronecker product of row-major square matrices.
pub fn kron(a: &[C64], da: usize, b: &[C64], db: usize) -> Vec<C64> {
    let d = da * db;
    let mut out = vec![C64::new(0.0, 0.0); d * d];
    for i in 0..da {
        for j in 0..da {
            let aij = a[i * da + j];
            if aij == C64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..db {
                for l in 0..db {
                    out[(i * db + k) * d + j * db + l] = aij * b[k * db + l];
                }
            }
        }
    }
    out
}
