//! Unitary supplements, transfer tensors, the index group and gauges.
//!
//! Per-qubit index alphabet: canonical basis 0↔e00, 1↔e01, 2↔e10, 3↔e11
//! (index = 2·row + col); Pauli basis 0↔I, 1↔X, 2↔Z, 3↔ZX. The "capital" part
//! of an index is its high bit and the "lower" part its low bit. Entries are
//! row-major with qubit 1 as the most significant digit.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::graph::GraphStatePattern;
use crate::pauli::QubitId;
use crate::residual::{labeled_residual, MeasGenerator, ResidualError};
use crate::C64;

pub type Block = [[C64; 4]; 4];

/// Relative tolerance of the slice-proportionality test.
pub const SYMMETRY_TOL: f64 = 1e-10;
/// Allowed change of the vector supplement under a gauge.
pub const GAUGE_TOL: f64 = 1e-12;
/// Largest rank stored densely.
pub const MAX_RANK: usize = 10;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TensorError {
    #[error("gauge changes the vector supplement by {max_deviation:e}")]
    GaugeViolation { max_deviation: f64 },
    #[error("shape mismatch: expected rank {expected}, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("rank {0} exceeds the dense limit")]
    TooLarge(usize),
    #[error("basis mismatch: expected {0}")]
    Basis(&'static str),
    #[error("unmeasured vertices {0} and {1} share an edge")]
    OutputEdge(QubitId, QubitId),
    #[error(transparent)]
    Residual(#[from] ResidualError),
}

fn r(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn real_block(m: [[f64; 4]; 4]) -> Block {
    m.map(|row| row.map(r))
}

/// Canonical → Pauli.
pub fn m_matrix() -> Block {
    real_block([
        [0.5, 0.0, 0.0, 0.5],
        [0.0, 0.5, 0.5, 0.0],
        [0.5, 0.0, 0.0, -0.5],
        [0.0, 0.5, -0.5, 0.0],
    ])
}

/// Pauli → canonical.
pub fn m_inverse() -> Block {
    real_block([
        [1.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 1.0],
        [0.0, 1.0, 0.0, -1.0],
        [1.0, 0.0, -1.0, 0.0],
    ])
}

pub fn fully_symmetric_block() -> Block {
    real_block([
        [0.5, 0.5, 0.5, -0.5],
        [0.5, 0.5, 0.5, -0.5],
        [0.5, -0.5, 0.5, 0.5],
        [0.5, -0.5, 0.5, 0.5],
    ])
}

/// I + (1,0,−1,0)ᵀuᵀ + (0,1,0,1)ᵀvᵀ; leaves the vector supplement unchanged for any u, v.
pub fn shift_block(u: [C64; 4], v: [C64; 4]) -> Block {
    let p = [1.0, 0.0, -1.0, 0.0];
    let q = [0.0, 1.0, 0.0, 1.0];
    let mut b = [[C64::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            b[i][j] = if i == j { r(1.0) } else { r(0.0) } + u[j] * p[i] + v[j] * q[i];
        }
    }
    b
}

/// i∘j: capital part of i, lower part of j.
pub fn circ(i: u8, j: u8) -> u8 {
    assert!(i < 4 && j < 4, "index out of range");
    (i & 2) | (j & 1)
}

fn apply_blocks(n: usize, entries: &[C64], blocks: &[Block]) -> Vec<C64> {
    let mut cur = entries.to_vec();
    for (k, b) in blocks.iter().enumerate() {
        let stride = 1usize << (2 * (n - 1 - k));
        let mut next = vec![C64::new(0.0, 0.0); cur.len()];
        for base in 0..cur.len() {
            if !(base / stride).is_multiple_of(4) {
                continue;
            }
            for (i, row) in b.iter().enumerate() {
                let mut acc = C64::new(0.0, 0.0);
                for (j, m) in row.iter().enumerate() {
                    acc += m * cur[base + j * stride];
                }
                next[base + i * stride] = acc;
            }
        }
        cur = next;
    }
    cur
}

/// Digit of `flat` at position k (0 = most significant).
pub fn digit(n: usize, flat: usize, k: usize) -> u8 {
    ((flat >> (2 * (n - 1 - k))) & 3) as u8
}

pub fn flat_index(digits: &[u8]) -> usize {
    digits.iter().fold(0, |acc, &d| acc * 4 + d as usize)
}

#[derive(Clone, Debug, PartialEq)]
pub struct UnitarySupplement {
    pub n: usize,
    pub entries: Vec<C64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransferTensor {
    pub n: usize,
    pub entries: Vec<C64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VectorSupplement(pub Vec<C64>);

impl UnitarySupplement {
    /// From a 2ⁿ×2ⁿ row-major matrix.
    pub fn from_matrix(n: usize, m: &[C64]) -> Self {
        let d = 1usize << n;
        assert_eq!(m.len(), d * d);
        let mut entries = vec![C64::new(0.0, 0.0); d * d];
        for row in 0..d {
            for col in 0..d {
                let digits: Vec<u8> = (0..n)
                    .map(|k| (2 * ((row >> (n - 1 - k)) & 1) + ((col >> (n - 1 - k)) & 1)) as u8)
                    .collect();
                entries[flat_index(&digits)] = m[row * d + col];
            }
        }
        UnitarySupplement { n, entries }
    }

    pub fn to_matrix(&self) -> Vec<C64> {
        let n = self.n;
        let d = 1usize << n;
        let mut m = vec![C64::new(0.0, 0.0); d * d];
        for (flat, v) in self.entries.iter().enumerate() {
            let (mut row, mut col) = (0, 0);
            for k in 0..n {
                let dg = digit(n, flat, k) as usize;
                row = row * 2 + (dg >> 1);
                col = col * 2 + (dg & 1);
            }
            m[row * d + col] = *v;
        }
        m
    }
}

impl TransferTensor {
    pub fn new(n: usize, entries: Vec<C64>) -> Self {
        assert_eq!(entries.len(), 1usize << (2 * n), "entries must have 4^n values");
        TransferTensor { n, entries }
    }

    pub fn get(&self, digits: &[u8]) -> C64 {
        self.entries[flat_index(digits)]
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

pub fn m_forward(eta: &UnitarySupplement) -> TransferTensor {
    TransferTensor::new(eta.n, apply_blocks(eta.n, &eta.entries, &vec![m_matrix(); eta.n]))
}

pub fn m_backward(t: &TransferTensor) -> UnitarySupplement {
    UnitarySupplement {
        n: t.n,
        entries: apply_blocks(t.n, &t.entries, &vec![m_inverse(); t.n]),
    }
}

/// η|0…0⟩, the first column of the matrix.
pub fn vector_supplement(eta: &UnitarySupplement) -> VectorSupplement {
    let n = eta.n;
    let d = 1usize << n;
    let m = eta.to_matrix();
    VectorSupplement((0..d).map(|row| m[row * d]).collect())
}

impl VectorSupplement {
    pub fn max_deviation(&self, other: &VectorSupplement) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Slice proportionality along the lower bit of every position.
pub fn check_symmetry(t: &TransferTensor) -> bool {
    check_symmetry_tol(t, SYMMETRY_TOL)
}

pub fn check_symmetry_tol(t: &TransferTensor, tol: f64) -> bool {
    let n = t.n;
    for k in 0..n {
        let bit = 1usize << (2 * (n - 1 - k));
        let (u, v): (Vec<C64>, Vec<C64>) = (0..t.entries.len())
            .filter(|f| f & bit == 0)
            .map(|f| (t.entries[f], t.entries[f | bit]))
            .unzip();
        if !proportional(&u, &v, tol) {
            return false;
        }
    }
    true
}

fn proportional(u: &[C64], v: &[C64], tol: f64) -> bool {
    let nu = u.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let nv = v.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let scale = nu.max(nv);
    if scale == 0.0 || nu <= tol * scale || nv <= tol * scale {
        return true;
    }
    let p = (0..u.len())
        .max_by(|&a, &b| u[a].norm().total_cmp(&u[b].norm()))
        .unwrap();
    let lambda = v[p] / u[p];
    let bound = tol * nv.max(lambda.norm() * nu);
    u.iter().zip(v).all(|(a, b)| (b - lambda * a).norm() <= bound)
}

/// T = C[capitals] · ∏_k c⁽ᵏ⁾[lower_k], when it exists.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    /// Indexed by the capital bits, qubit 1 most significant.
    pub capitals: Vec<C64>,
    pub lowers: Vec<[C64; 2]>,
}

pub fn factorize(t: &TransferTensor) -> Option<Factorization> {
    let n = t.n;
    let scale = t.max_abs();
    if scale == 0.0 {
        return Some(Factorization {
            capitals: vec![C64::new(0.0, 0.0); 1 << n],
            lowers: vec![[r(1.0), r(0.0)]; n],
        });
    }
    let p = (0..t.entries.len())
        .max_by(|&a, &b| t.entries[a].norm().total_cmp(&t.entries[b].norm()))
        .unwrap();
    let pd: Vec<u8> = (0..n).map(|k| digit(n, p, k)).collect();
    let lowers: Vec<[C64; 2]> = (0..n)
        .map(|k| {
            let mut d = pd.clone();
            let mut c = [r(0.0); 2];
            for (l, slot) in c.iter_mut().enumerate() {
                d[k] = (pd[k] & 2) | l as u8;
                *slot = t.get(&d) / t.entries[p];
            }
            c
        })
        .collect();
    let capitals: Vec<C64> = (0..1usize << n)
        .map(|caps| {
            let d: Vec<u8> = (0..n)
                .map(|k| (((caps >> (n - 1 - k)) & 1) as u8) << 1 | (pd[k] & 1))
                .collect();
            t.get(&d)
        })
        .collect();
    let f = Factorization { capitals, lowers };
    let ok = t
        .entries
        .iter()
        .enumerate()
        .all(|(flat, v)| (f.value(n, flat) - v).norm() <= SYMMETRY_TOL * scale);
    ok.then_some(f)
}

impl Factorization {
    pub fn value(&self, n: usize, flat: usize) -> C64 {
        let mut caps = 0;
        let mut out = r(1.0);
        for k in 0..n {
            let d = digit(n, flat, k);
            caps = caps * 2 + (d >> 1) as usize;
            out *= self.lowers[k][(d & 1) as usize];
        }
        out * self.capitals[caps]
    }
}

/// Linear map on transfer tensors.
#[derive(Clone, Debug, PartialEq)]
pub enum GaugeTensor {
    Factorized(Vec<Block>),
    Dense { n: usize, matrix: Vec<C64> },
}

impl GaugeTensor {
    pub fn identity(n: usize) -> Self {
        let mut id = [[r(0.0); 4]; 4];
        for (i, row) in id.iter_mut().enumerate() {
            row[i] = r(1.0);
        }
        GaugeTensor::Factorized(vec![id; n])
    }

    pub fn fully_symmetric(n: usize) -> Self {
        GaugeTensor::Factorized(vec![fully_symmetric_block(); n])
    }

    pub fn rank(&self) -> usize {
        match self {
            GaugeTensor::Factorized(b) => b.len(),
            GaugeTensor::Dense { n, .. } => *n,
        }
    }

    pub fn apply(&self, t: &TransferTensor) -> Result<TransferTensor, TensorError> {
        if self.rank() != t.n {
            return Err(TensorError::Shape {
                expected: self.rank(),
                got: t.n,
            });
        }
        Ok(match self {
            GaugeTensor::Factorized(blocks) => TransferTensor::new(t.n, apply_blocks(t.n, &t.entries, blocks)),
            GaugeTensor::Dense { matrix, .. } => {
                let d = t.entries.len();
                let entries = (0..d)
                    .map(|i| (0..d).map(|j| matrix[i * d + j] * t.entries[j]).sum::<C64>())
                    .collect();
                TransferTensor::new(t.n, entries)
            }
        })
    }
}

/// T′ = S·T, rejected when the vector supplement moves by more than 1e-12.
pub fn apply_gauge(s: &GaugeTensor, t: &TransferTensor) -> Result<TransferTensor, TensorError> {
    let out = s.apply(t)?;
    let dev = vector_supplement(&m_backward(&out)).max_deviation(&vector_supplement(&m_backward(t)));
    if dev > GAUGE_TOL {
        return Err(TensorError::GaugeViolation { max_deviation: dev });
    }
    Ok(out)
}

pub fn apply_fully_symmetric(t: &TransferTensor) -> TransferTensor {
    TransferTensor::new(t.n, apply_blocks(t.n, &t.entries, &vec![fully_symmetric_block(); t.n]))
}

#[derive(Serialize, Deserialize)]
struct TensorRepr {
    n: usize,
    basis: String,
    entries: Vec<C64>,
}

fn to_repr(n: usize, basis: &str, entries: &[C64]) -> TensorRepr {
    TensorRepr {
        n,
        basis: basis.into(),
        entries: entries.to_vec(),
    }
}

fn from_repr(r: TensorRepr, basis: &'static str) -> Result<(usize, Vec<C64>), TensorError> {
    if r.basis != basis {
        return Err(TensorError::Basis(basis));
    }
    if r.entries.len() != 1usize << (2 * r.n) {
        return Err(TensorError::Shape {
            expected: 1 << (2 * r.n),
            got: r.entries.len(),
        });
    }
    Ok((r.n, r.entries))
}

impl TransferTensor {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&to_repr(self.n, "pauli", &self.entries)).expect("tensor serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, String> {
        let r: TensorRepr = serde_json::from_str(s).map_err(|e| e.to_string())?;
        let (n, entries) = from_repr(r, "pauli").map_err(|e| e.to_string())?;
        Ok(TransferTensor { n, entries })
    }
}

impl UnitarySupplement {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&to_repr(self.n, "canonical", &self.entries)).expect("tensor serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, String> {
        let r: TensorRepr = serde_json::from_str(s).map_err(|e| e.to_string())?;
        let (n, entries) = from_repr(r, "canonical").map_err(|e| e.to_string())?;
        Ok(UnitarySupplement { n, entries })
    }
}

/// Slot order of a labelled residual tensor.
#[derive(Clone, Debug, PartialEq)]
pub struct SlotLayout {
    /// Measured qubits, one slot each: index 2 when the interactive coefficient
    /// was chosen, 0 otherwise.
    pub measured: Vec<QubitId>,
    /// Unmeasured qubits in ascending order, ordinary Pauli index.
    pub outputs: Vec<QubitId>,
}

/// Transfer tensor of R·∏G′_o with every measured qubit's choice kept as a label.
///
/// Requires the unmeasured qubits to be pairwise non-adjacent, so that each G′_o
/// is a + b·X_o.
pub fn residual_to_tensor(
    pattern: &GraphStatePattern,
    measgens: &[MeasGenerator],
) -> Result<(TransferTensor, SlotLayout), TensorError> {
    let measured: Vec<QubitId> = measgens.iter().map(|m| m.qubit).collect();
    let mset: BTreeSet<QubitId> = measured.iter().copied().collect();
    let outputs: Vec<QubitId> = pattern.ids().into_iter().filter(|q| !mset.contains(q)).collect();
    for &(i, j) in &pattern.edges {
        if !mset.contains(&i) && !mset.contains(&j) {
            return Err(TensorError::OutputEdge(i, j));
        }
    }
    let rank = measured.len() + outputs.len();
    if rank > MAX_RANK {
        return Err(TensorError::TooLarge(rank));
    }
    let coeffs: Vec<(C64, C64)> = outputs
        .iter()
        .map(|q| {
            let v = pattern.vertex(*q).unwrap();
            (v.a, v.b)
        })
        .collect();
    let mut entries = vec![r(0.0); 1usize << (2 * rank)];
    for term in labeled_residual(pattern, measgens)? {
        let mut digits: Vec<u8> = measured
            .iter()
            .map(|q| if term.interactive.contains(q) { 2 } else { 0 })
            .collect();
        let head = digits.len();
        digits.extend(outputs.iter().map(|q| if term.zs.contains(q) { 2 } else { 0 }));
        for lowers in 0usize..(1 << outputs.len()) {
            let mut d = digits.clone();
            let mut c = term.coeff;
            for (k, (a, b)) in coeffs.iter().enumerate() {
                let bit = (lowers >> (outputs.len() - 1 - k)) & 1;
                d[head + k] |= bit as u8;
                c *= if bit == 1 { *b } else { *a };
            }
            entries[flat_index(&d)] += c;
        }
    }
    Ok((TransferTensor::new(rank, entries), SlotLayout { measured, outputs }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn close(a: &[C64], b: &[C64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol)
    }

    fn mat_mul(a: &Block, b: &Block) -> Block {
        let mut o = [[c(0.0, 0.0); 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    o[i][j] += a[i][k] * b[k][j];
                }
            }
        }
        o
    }

    #[test]
    fn m_times_inverse_is_identity() {
        let p = mat_mul(&m_matrix(), &m_inverse());
        let q = mat_mul(&m_inverse(), &m_matrix());
        for i in 0..4 {
            for j in 0..4 {
                let e = if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) };
                assert_eq!(p[i][j], e);
                assert_eq!(q[i][j], e);
            }
        }
    }

    #[test]
    fn single_qubit_example() {
        let (aa, bb, a, b) = (c(0.3, 0.1), c(-0.2, 0.7), c(0.6, 0.0), c(0.0, 0.8));
        let m = [aa * a + bb * a, aa * b + bb * b, aa * b - bb * b, aa * a - bb * a];
        let eta = UnitarySupplement::from_matrix(1, &m);
        let t = m_forward(&eta);
        assert!(close(&t.entries, &[aa * a, aa * b, bb * a, bb * b], 1e-15));
        assert!(close(
            &vector_supplement(&eta).0,
            &[aa * a + bb * a, aa * b - bb * b],
            1e-15
        ));
        assert!(check_symmetry(&t));
    }

    #[test]
    fn identity_circuit_tensor() {
        let (a, b) = (c(0.6, 0.0), c(0.0, 0.8));
        // a·I + b·X
        let eta = UnitarySupplement::from_matrix(1, &[a, b, b, a]);
        assert!(close(&m_forward(&eta).entries, &[a, b, c(0.0, 0.0), c(0.0, 0.0)], 0.0));
        let eta = UnitarySupplement::from_matrix(1, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(vector_supplement(&eta).0, vec![c(1.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn matrix_layout_round_trip() {
        let m: Vec<C64> = (0..16).map(|k| c(k as f64, -(k as f64) / 3.0)).collect();
        let eta = UnitarySupplement::from_matrix(2, &m);
        assert_eq!(eta.to_matrix(), m);
        // row 1 = |01⟩, col 2 = |10⟩: qubit 1 digit 2·0+1, qubit 2 digit 2·1+0.
        assert_eq!(eta.entries[flat_index(&[1, 2])], m[6]);
        assert!(close(&m_backward(&m_forward(&eta)).entries, &eta.entries, 1e-14));
    }

    #[test]
    fn circ_table() {
        let table = [[0, 1, 0, 1], [0, 1, 0, 1], [2, 3, 2, 3], [2, 3, 2, 3]];
        for i in 0..4u8 {
            for j in 0..4u8 {
                assert_eq!(circ(i, j), table[i as usize][j as usize]);
            }
            assert_eq!(circ(i, i), i);
        }
        assert_eq!((circ(0, 3), circ(1, 2), circ(2, 1), circ(3, 0)), (1, 0, 3, 2));
    }

    #[test]
    fn symmetry_examples() {
        let t = TransferTensor::new(1, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(!check_symmetry(&t));
        assert!(factorize(&t).is_none());
        let zero = TransferTensor::new(2, vec![c(0.0, 0.0); 16]);
        assert!(check_symmetry(&zero));
    }

    #[test]
    fn fully_symmetric_rows() {
        let t = [c(0.1, 0.2), c(-0.4, 0.3), c(0.7, 0.0), c(0.2, -0.5)];
        let out = apply_fully_symmetric(&TransferTensor::new(1, t.to_vec()));
        let top = (t[0] + t[1] + t[2] - t[3]) * 0.5;
        let bottom = (t[0] - t[1] + t[2] + t[3]) * 0.5;
        assert!(close(&out.entries, &[top, top, bottom, bottom], 1e-15));
        let sym = TransferTensor::new(1, vec![t[0], t[0], t[2], t[2]]);
        assert!(close(&apply_fully_symmetric(&sym).entries, &sym.entries, 1e-15));
    }

    #[test]
    fn fully_symmetric_on_rx() {
        let th = 0.9_f64;
        let (cc, ss) = ((th / 2.0).cos(), (th / 2.0).sin());
        let t = TransferTensor::new(1, vec![c(cc, 0.0), c(0.0, ss), c(0.0, 0.0), c(0.0, 0.0)]);
        let out = apply_gauge(&GaugeTensor::fully_symmetric(1), &t).unwrap();
        let top = C64::from_polar(0.5, th / 2.0);
        let bottom = C64::from_polar(0.5, -th / 2.0);
        assert!(close(&out.entries, &[top, top, bottom, bottom], 1e-15));
    }

    #[test]
    fn shift_family_contains_fully_symmetric() {
        let u = [-0.5, 0.5, 0.5, -0.5].map(|x| c(x, 0.0));
        let v = [0.5, -0.5, 0.5, -0.5].map(|x| c(x, 0.0));
        assert_eq!(shift_block(u, v), fully_symmetric_block());
    }

    #[test]
    fn gauge_violation_is_reported() {
        let mut bad = [[c(0.0, 0.0); 4]; 4];
        bad[0][0] = c(2.0, 0.0);
        let t = TransferTensor::new(1, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let err = apply_gauge(&GaugeTensor::Factorized(vec![bad]), &t).unwrap_err();
        assert_eq!(err, TensorError::GaugeViolation { max_deviation: 1.0 });
        assert!(matches!(
            apply_gauge(&GaugeTensor::identity(2), &t),
            Err(TensorError::Shape { .. })
        ));
        assert_eq!(apply_gauge(&GaugeTensor::identity(1), &t).unwrap(), t);
    }

    #[test]
    fn dense_gauge_matches_factorized() {
        let s = fully_symmetric_block();
        let mut matrix = vec![c(0.0, 0.0); 256];
        for i in 0..16 {
            for j in 0..16 {
                matrix[i * 16 + j] = s[i / 4][j / 4] * s[i % 4][j % 4];
            }
        }
        let t = TransferTensor::new(2, (0..16).map(|k| c((k as f64).sin(), (k as f64).cos())).collect());
        let dense = GaugeTensor::Dense { n: 2, matrix }.apply(&t).unwrap();
        assert!(close(&dense.entries, &apply_fully_symmetric(&t).entries, 1e-14));
    }

    #[test]
    fn json_round_trip() {
        let t = TransferTensor::new(1, vec![c(1.0, 0.5), c(0.0, 0.0), c(-2.0, 0.0), c(0.0, 1.0)]);
        let s = t.to_json();
        assert_eq!(
            s,
            r#"{"n":1,"basis":"pauli","entries":[[1.0,0.5],[0.0,0.0],[-2.0,0.0],[0.0,1.0]]}"#
        );
        assert_eq!(TransferTensor::from_json(&s).unwrap(), t);
        assert!(UnitarySupplement::from_json(&s).is_err());
    }
}
