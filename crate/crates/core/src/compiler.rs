//! Pauli-rotation circuits to graph-state patterns, residual analysis and resource counts.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};
use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use crate::graph::{
    derive_byproducts, GraphError, GraphStatePattern, MeasurementSpec, Plane, Vertex, VertexRole, NORM_TOL,
};
use crate::pauli::{conjugate, CliffordGate, PauliOp, PauliTerm, QubitId};
use crate::residual::{postselect_generators, residual_output_state, ResidualError};
use crate::simulator::{apply_circuit, fidelity_up_to_phase, StateVector};
use crate::tensor::{digit, flat_index, SlotLayout, TransferTensor, UnitarySupplement};
use crate::C64;

/// Post-compilation check threshold.
pub const SELF_CHECK_TOL: f64 = 1e-9;
/// Patterns up to this many vertices (and logical qubits) are checked after compiling.
pub const SELF_CHECK_MAX_VERTICES: usize = 64;
pub const SELF_CHECK_MAX_QUBITS: u32 = 8;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CompileError {
    #[error("axis `{0}` mixes X and Z")]
    MixedAxis(String),
    #[error("axis `{0}` contains a ZX site")]
    ZxSite(String),
    #[error("axis is empty")]
    EmptyAxis,
    #[error("qubit {0} outside 1..={1}")]
    OutOfRange(QubitId, u32),
    #[error("circuit needs at least one qubit")]
    NoQubits,
    #[error("angle {0} is not finite")]
    BadAngle(f64),
    #[error("clifford gate acts twice on qubit {0}")]
    BadClifford(QubitId),
    #[error("expected {expected} input states, got {got}")]
    InputCount { expected: usize, got: usize },
    #[error("input {0}: |a|^2 + |b|^2 = {1}, expected 1")]
    NotNormalized(usize, f64),
    #[error("circuit json: {0}")]
    Json(String),
    #[error("compiled pattern failed its residual check (fidelity {0})")]
    SelfCheck(f64),
    #[error("transfer tensor is not symmetric")]
    NotSymmetric,
    #[error("transfer tensor shape does not match the slot layout")]
    Layout,
    #[error("residual term for interactive set {0:?} has zero coefficient")]
    Degenerate(Vec<QubitId>),
    #[error("sign pattern inconsistent with any simple graph at interactive set {0:?}")]
    Inconsistent(Vec<QubitId>),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Residual(#[from] ResidualError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// cos θ + i sin θ σ
    Theta,
    /// cos(θ/2) + i sin(θ/2) σ
    HalfTheta,
}

/// cos θ + i sin θ · axis, θ always in the full-angle convention.
#[derive(Clone, Debug, PartialEq)]
pub struct RotationGate {
    pub axis: PauliTerm,
    pub theta: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    pub n: u32,
    pub gates: Vec<RotationGate>,
    /// Applied before the rotations, first entry first.
    pub clifford_prefix: Vec<CliffordGate>,
}

#[derive(Serialize, Deserialize)]
struct GateRepr {
    axis: String,
    theta: f64,
}

#[derive(Serialize, Deserialize)]
struct CircuitRepr {
    n: u32,
    convention: Convention,
    gates: Vec<GateRepr>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    clifford: Vec<CliffordGate>,
}

fn check_qubit(q: QubitId, n: u32) -> Result<(), CompileError> {
    if q == 0 || q > n {
        return Err(CompileError::OutOfRange(q, n));
    }
    Ok(())
}

/// Checks a user-supplied axis: nonempty, pure X or pure Z, inside 1..=n.
pub fn check_axis(axis: &PauliTerm, n: u32) -> Result<(), CompileError> {
    if axis.is_identity() {
        return Err(CompileError::EmptyAxis);
    }
    let ops: BTreeSet<PauliOp> = axis.ops().values().copied().collect();
    if ops.contains(&PauliOp::ZX) {
        return Err(CompileError::ZxSite(axis.ops_string()));
    }
    if ops.len() > 1 {
        return Err(CompileError::MixedAxis(axis.ops_string()));
    }
    for &q in axis.ops().keys() {
        check_qubit(q, n)?;
    }
    Ok(())
}

impl Circuit {
    pub fn new(n: u32) -> Self {
        Circuit {
            n,
            gates: Vec::new(),
            clifford_prefix: Vec::new(),
        }
    }

    /// Appends cos θ + i sin θ · axis (full-angle θ).
    pub fn push(&mut self, axis: &str, theta: f64) -> Result<&mut Self, CompileError> {
        let axis: PauliTerm = axis
            .parse()
            .map_err(|e: crate::pauli::PauliError| CompileError::Json(e.to_string()))?;
        self.gates.push(RotationGate { axis, theta });
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), CompileError> {
        if self.n == 0 {
            return Err(CompileError::NoQubits);
        }
        for g in &self.gates {
            check_axis(&g.axis, self.n)?;
            if !g.theta.is_finite() {
                return Err(CompileError::BadAngle(g.theta));
            }
        }
        for c in &self.clifford_prefix {
            let qs = c.qubits();
            for &q in &qs {
                check_qubit(q, self.n)?;
            }
            if qs.len() == 2 && qs[0] == qs[1] {
                return Err(CompileError::BadClifford(qs[0]));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Circuit, CompileError> {
        let r: CircuitRepr = serde_json::from_str(text).map_err(|e| CompileError::Json(e.to_string()))?;
        let scale = match r.convention {
            Convention::Theta => 1.0,
            Convention::HalfTheta => 0.5,
        };
        let mut gates = Vec::with_capacity(r.gates.len());
        for g in r.gates {
            let axis: PauliTerm = g
                .axis
                .parse()
                .map_err(|e: crate::pauli::PauliError| CompileError::Json(e.to_string()))?;
            gates.push(RotationGate {
                axis,
                theta: g.theta * scale,
            });
        }
        let c = Circuit {
            n: r.n,
            gates,
            clifford_prefix: r.clifford,
        };
        c.validate()?;
        Ok(c)
    }

    /// JSON in the full-angle convention.
    pub fn to_json(&self) -> String {
        let r = CircuitRepr {
            n: self.n,
            convention: Convention::Theta,
            gates: self
                .gates
                .iter()
                .map(|g| GateRepr {
                    axis: g.axis.ops_string(),
                    theta: g.theta,
                })
                .collect(),
            clifford: self.clifford_prefix.clone(),
        };
        serde_json::to_string_pretty(&r).expect("circuit serializes")
    }

    /// Rotations with the Clifford prefix moved behind them: U = C · ∏ R′ with R′ = C†RC.
    /// Axis signs are folded into θ.
    pub fn conjugated_rotations(&self) -> Result<Vec<(PauliTerm, f64)>, CompileError> {
        let mut out = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let mut axis = g.axis.clone();
            for c in self.clifford_prefix.iter().rev() {
                axis = conjugate(c, &axis);
            }
            if axis.ops().values().any(|&op| op == PauliOp::ZX) {
                return Err(CompileError::ZxSite(axis.ops_string()));
            }
            let sign = axis.coeff.re.signum();
            out.push((axis.unit(), g.theta * sign));
        }
        Ok(out)
    }
}

pub fn check_inputs(n: u32, input_coeffs: &[(C64, C64)]) -> Result<(), CompileError> {
    if input_coeffs.len() != n as usize {
        return Err(CompileError::InputCount {
            expected: n as usize,
            got: input_coeffs.len(),
        });
    }
    for (k, (a, b)) in input_coeffs.iter().enumerate() {
        let norm = a.norm_sqr() + b.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(CompileError::NotNormalized(k + 1, norm));
        }
    }
    Ok(())
}

#[derive(Default)]
struct Wire {
    cursor: usize,
    /// XY angle per chain position, from absorbed single-qubit X rotations.
    angles: BTreeMap<usize, f64>,
}

struct Gadget {
    theta: f64,
    sites: Vec<(usize, usize)>,
}

/// Compiles through the fully symmetric gauge.
///
/// Each logical qubit becomes a chain input–middle–output of XY-measured
/// vertices; every chain step applies H·diag(1, e^{−iφ}), so even positions see
/// the logical Z and odd positions the logical X. A single-qubit X rotation is
/// absorbed into an odd position's angle. Every other rotation gets one |+⟩
/// ancilla measured YZ(−2θ) attached to a chain vertex of matching parity on
/// each wire of its support, giving cos θ + i sin θ·σ. Chains grow only when a
/// wire alternates between X- and Z-type gates. The Clifford prefix is moved
/// behind the rotations and kept as `final_clifford` on the outputs.
pub fn compile(circuit: &Circuit, input_coeffs: &[(C64, C64)]) -> Result<GraphStatePattern, CompileError> {
    circuit.validate()?;
    check_inputs(circuit.n, input_coeffs)?;
    let n = circuit.n as usize;
    let mut wires: Vec<Wire> = (0..n).map(|_| Wire::default()).collect();
    let mut gadgets = Vec::new();
    for (axis, theta) in circuit.conjugated_rotations()? {
        let sites: Vec<(usize, usize)> = axis
            .ops()
            .iter()
            .map(|(&q, &op)| (q as usize - 1, if op == PauliOp::X { 1 } else { 0 }))
            .collect();
        if let [(w, 1)] = sites[..] {
            let wire = &mut wires[w];
            if wire.cursor.is_multiple_of(2) {
                wire.cursor += 1;
            }
            *wire.angles.entry(wire.cursor).or_insert(0.0) += 2.0 * theta;
            continue;
        }
        let mut placed = Vec::with_capacity(sites.len());
        for (w, parity) in sites {
            let wire = &mut wires[w];
            if wire.cursor % 2 != parity {
                wire.cursor += 1;
            }
            placed.push((w, wire.cursor));
        }
        gadgets.push(Gadget { theta, sites: placed });
    }

    // Output position: even, at least 2, after every measured angle.
    let lengths: Vec<usize> = wires
        .iter()
        .map(|w| {
            let need = if w.angles.contains_key(&w.cursor) {
                w.cursor + 1
            } else {
                w.cursor
            };
            let last = need.max(2);
            last + last % 2
        })
        .collect();
    let mut base = Vec::with_capacity(n);
    let mut next_id: QubitId = 1;
    for &len in &lengths {
        base.push(next_id);
        next_id += len as QubitId + 1;
    }
    let chain_id = |w: usize, j: usize| base[w] + j as QubitId;

    let mut pattern = GraphStatePattern::default();
    for (w, wire) in wires.iter().enumerate() {
        for j in 0..=lengths[w] {
            let id = chain_id(w, j);
            let measure = (j < lengths[w]).then(|| MeasurementSpec {
                plane: Plane::XY,
                angle: wire.angles.get(&j).copied().unwrap_or(0.0),
                order: 0,
            });
            let v = if j == 0 {
                let (a, b) = input_coeffs[w];
                Vertex {
                    id,
                    role: VertexRole::Input,
                    a,
                    b,
                    measure,
                }
            } else if j == lengths[w] {
                Vertex::plus(id, VertexRole::Output, None)
            } else {
                Vertex::plus(id, VertexRole::Source, measure)
            };
            pattern.vertices.push(v);
            if j > 0 {
                pattern.add_edge(id - 1, id);
            }
        }
    }

    // Ordering constraints: along each chain, and ancilla between the vertex it
    // touches and that vertex's predecessor.
    let mut before: Vec<(QubitId, QubitId)> = Vec::new();
    for (w, &len) in lengths.iter().enumerate() {
        for j in 1..len {
            before.push((chain_id(w, j - 1), chain_id(w, j)));
        }
    }
    for g in &gadgets {
        let id = next_id;
        next_id += 1;
        pattern.vertices.push(Vertex::plus(
            id,
            VertexRole::Source,
            Some(MeasurementSpec {
                plane: Plane::YZ,
                angle: -2.0 * g.theta,
                order: 0,
            }),
        ));
        for &(w, j) in &g.sites {
            pattern.add_edge(id, chain_id(w, j));
            if j > 0 {
                before.push((chain_id(w, j - 1), id));
            }
            if j < lengths[w] {
                before.push((id, chain_id(w, j)));
            }
        }
    }
    let measured: Vec<QubitId> = pattern
        .vertices
        .iter()
        .filter(|v| v.measure.is_some())
        .map(|v| v.id)
        .collect();
    for (round, id) in topological_order(&measured, &before).into_iter().enumerate() {
        pattern.vertex_mut(id).unwrap().measure.as_mut().unwrap().order = round as u32;
    }
    pattern.byproducts = derive_byproducts(&pattern)?;
    pattern.final_clifford = circuit
        .clifford_prefix
        .iter()
        .map(|c| c.relabel(|q| chain_id(q as usize - 1, lengths[q as usize - 1])))
        .collect();
    pattern.validate()?;

    if pattern.vertices.len() <= SELF_CHECK_MAX_VERTICES && circuit.n <= SELF_CHECK_MAX_QUBITS {
        let f = residual_fidelity(&pattern, circuit, input_coeffs)?;
        if f < 1.0 - SELF_CHECK_TOL {
            return Err(CompileError::SelfCheck(f));
        }
    }
    Ok(pattern)
}

/// Kahn's algorithm, smallest id first among ready vertices.
fn topological_order(nodes: &[QubitId], before: &[(QubitId, QubitId)]) -> Vec<QubitId> {
    let mut indeg: BTreeMap<QubitId, usize> = nodes.iter().map(|&v| (v, 0)).collect();
    let mut succ: BTreeMap<QubitId, Vec<QubitId>> = BTreeMap::new();
    for &(a, b) in before {
        succ.entry(a).or_default().push(b);
        *indeg.get_mut(&b).expect("constraint on unmeasured vertex") += 1;
    }
    let mut ready: BinaryHeap<Reverse<QubitId>> = indeg
        .iter()
        .filter(|(_, &d)| d == 0)
        .map(|(&v, _)| Reverse(v))
        .collect();
    let mut out = Vec::with_capacity(nodes.len());
    while let Some(Reverse(v)) = ready.pop() {
        out.push(v);
        for &s in succ.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
            let d = indeg.get_mut(&s).unwrap();
            *d -= 1;
            if *d == 0 {
                ready.push(Reverse(s));
            }
        }
    }
    assert_eq!(out.len(), nodes.len(), "measurement constraints are cyclic");
    out
}

/// Circuit's vector supplement: first column of U·∏(a_k + b_k X_k).
pub fn circuit_vector_supplement(circuit: &Circuit, input_coeffs: &[(C64, C64)]) -> Result<Vec<C64>, CompileError> {
    check_inputs(circuit.n, input_coeffs)?;
    let n = circuit.n as usize;
    let d = 1usize << n;
    let ids: Vec<QubitId> = (1..=circuit.n).collect();
    // columns of U
    let mut u = vec![C64::new(0.0, 0.0); d * d];
    for col in 0..d {
        let s = apply_circuit(&StateVector::basis(&ids, col), circuit).expect("validated circuit");
        for row in 0..d {
            u[row * d + col] = s.amps[row];
        }
    }
    let mut g = vec![C64::new(1.0, 0.0)];
    let mut dim = 1;
    for &(a, b) in input_coeffs {
        g = crate::pauli::kron(&g, dim, &[a, b, b, a], 2);
        dim *= 2;
    }
    let mut eta = vec![C64::new(0.0, 0.0); d * d];
    for i in 0..d {
        for k in 0..d {
            for j in 0..d {
                eta[i * d + j] += u[i * d + k] * g[k * d + j];
            }
        }
    }
    Ok(crate::tensor::vector_supplement(&UnitarySupplement::from_matrix(n, &eta)).0)
}

/// Fidelity between the pattern's all-zero branch, computed through the residual
/// recursion, and the circuit's vector supplement.
pub fn residual_fidelity(
    pattern: &GraphStatePattern,
    circuit: &Circuit,
    input_coeffs: &[(C64, C64)],
) -> Result<f64, CompileError> {
    let (ids, amps) = residual_output_state(pattern, &postselect_generators(pattern))?;
    let mut state = StateVector { ids, amps };
    for c in &pattern.final_clifford {
        state.apply_clifford(c);
    }
    let target = circuit_vector_supplement(circuit, input_coeffs)?;
    let target = StateVector {
        ids: state.ids.clone(),
        amps: target,
    };
    fidelity_up_to_phase(&state, &target).map_err(|e| CompileError::Unsupported(e.to_string()))
}

/// Single-qubit e^{−iθX/2} through the Clifford gauge: a |+⟩ vertex measured
/// YZ(θ), the input measured XY(0), both joined to the output, then H on the output.
pub fn compile_clifford_gauge_rx(theta: f64, input: (C64, C64)) -> Result<GraphStatePattern, CompileError> {
    check_inputs(1, &[input])?;
    let mut p = GraphStatePattern {
        vertices: vec![
            Vertex::plus(
                1,
                VertexRole::Source,
                Some(MeasurementSpec {
                    plane: Plane::YZ,
                    angle: theta,
                    order: 1,
                }),
            ),
            Vertex {
                id: 2,
                role: VertexRole::Input,
                a: input.0,
                b: input.1,
                measure: Some(MeasurementSpec {
                    plane: Plane::XY,
                    angle: 0.0,
                    order: 0,
                }),
            },
            Vertex::plus(3, VertexRole::Output, None),
        ],
        final_clifford: vec![CliffordGate::H { target: 3 }],
        ..Default::default()
    };
    p.add_edge(1, 3);
    p.add_edge(2, 3);
    p.byproducts = derive_byproducts(&p)?;
    Ok(p)
}

/// Graph data read off a labelled residual tensor.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualAnalysis {
    /// Normalized (a, b) per output.
    pub outputs: Vec<(QubitId, C64, C64)>,
    /// B_i / A_i per measured qubit.
    pub interactive_ratio: Vec<(QubitId, C64)>,
    pub edges: BTreeSet<(QubitId, QubitId)>,
}

/// Relative tolerance of the sign tests.
pub const ANALYSIS_TOL: f64 = 1e-9;

/// Reads the graph off a symmetric labelled transfer tensor (see
/// `tensor::residual_to_tensor`). Output coefficients come from the all-idle
/// row, measured–output edges from the Z support of single-interactive terms,
/// measured–measured edges from a −1 in c_ij·c_∅ / (c_i·c_j).
pub fn analyze_residual(t: &TransferTensor, layout: &SlotLayout) -> Result<ResidualAnalysis, CompileError> {
    let m = layout.measured.len();
    let o = layout.outputs.len();
    if t.n != m + o {
        return Err(CompileError::Layout);
    }
    if !crate::tensor::check_symmetry(t) {
        return Err(CompileError::NotSymmetric);
    }
    let scale = t.max_abs();
    let tiny = ANALYSIS_TOL * scale;
    for (flat, v) in t.entries.iter().enumerate() {
        if v.norm() > tiny && (0..m).any(|k| digit(t.n, flat, k) & 1 == 1) {
            return Err(CompileError::Layout);
        }
    }
    let names = |mask: usize| -> Vec<QubitId> {
        (0..m)
            .filter(|k| mask >> k & 1 == 1)
            .map(|k| layout.measured[k])
            .collect()
    };
    let base = vec![0u8; t.n];
    let t0 = t.get(&base);
    if t0.norm() <= tiny {
        return Err(CompileError::Degenerate(Vec::new()));
    }
    let outputs = layout
        .outputs
        .iter()
        .enumerate()
        .map(|(k, &q)| {
            let mut d = base.clone();
            d[m + k] = 1;
            let ratio = t.get(&d) / t0;
            let a = 1.0 / (1.0 + ratio.norm_sqr()).sqrt();
            (q, C64::new(a, 0.0), ratio * a)
        })
        .collect();

    // Per interactive set: the unique output Z support and its coefficient.
    let mut terms: Vec<(BTreeSet<QubitId>, C64)> = Vec::with_capacity(1 << m);
    for mask in 0usize..(1 << m) {
        let mut found = None;
        for caps in 0usize..(1 << o) {
            let mut d: Vec<u8> = (0..m).map(|k| if mask >> k & 1 == 1 { 2 } else { 0 }).collect();
            d.extend((0..o).map(|k| (((caps >> (o - 1 - k)) & 1) as u8) << 1));
            let v = t.entries[flat_index(&d)];
            if v.norm() > tiny {
                if found.is_some() {
                    return Err(CompileError::Inconsistent(names(mask)));
                }
                let zs = (0..o)
                    .filter(|k| caps >> (o - 1 - k) & 1 == 1)
                    .map(|k| layout.outputs[k])
                    .collect();
                found = Some((zs, v));
            }
        }
        terms.push(found.ok_or_else(|| CompileError::Degenerate(names(mask)))?);
    }
    if !terms[0].0.is_empty() {
        return Err(CompileError::Inconsistent(Vec::new()));
    }
    let c0 = terms[0].1;
    let mut edges = BTreeSet::new();
    for i in 0..m {
        for &q in &terms[1 << i].0 {
            edges.insert((layout.measured[i].min(q), layout.measured[i].max(q)));
        }
    }
    let mut adjacent = vec![vec![false; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let s = terms[(1 << i) | (1 << j)].1 * c0 / (terms[1 << i].1 * terms[1 << j].1);
            if (s - 1.0).norm() <= ANALYSIS_TOL {
                continue;
            }
            if (s + 1.0).norm() > ANALYSIS_TOL {
                return Err(CompileError::Inconsistent(names((1 << i) | (1 << j))));
            }
            adjacent[i][j] = true;
            let (a, b) = (layout.measured[i], layout.measured[j]);
            edges.insert((a.min(b), a.max(b)));
        }
    }
    // Every term must follow from the singletons.
    for (mask, (zs, c)) in terms.iter().enumerate() {
        let chosen: Vec<usize> = (0..m).filter(|k| mask >> k & 1 == 1).collect();
        let mut want_zs = BTreeSet::new();
        let mut want = c0;
        let mut inner = 0;
        for (x, &i) in chosen.iter().enumerate() {
            want_zs = want_zs.symmetric_difference(&terms[1 << i].0).copied().collect();
            want *= terms[1 << i].1 / c0;
            inner += chosen[x + 1..].iter().filter(|&&j| adjacent[i][j]).count();
        }
        if inner % 2 == 1 {
            want = -want;
        }
        if &want_zs != zs || (want - c).norm() > ANALYSIS_TOL * c.norm().max(want.norm()) {
            return Err(CompileError::Inconsistent(names(mask)));
        }
    }
    let interactive_ratio = (0..m).map(|i| (layout.measured[i], terms[1 << i].1 / c0)).collect();
    Ok(ResidualAnalysis {
        outputs,
        interactive_ratio,
        edges,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    #[serde(rename = "mcalculus")]
    MCalculus,
    FullySymmetric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algo {
    Qft,
    QaoaCyclic,
    QaoaComplete,
    /// `p` counts the rotation gates.
    Generic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResourceReport {
    pub method: Method,
    pub algo: Algo,
    pub n: u64,
    pub p: Option<u64>,
    pub qubit_count: i64,
    /// Tabulated fully-symmetric value where it differs from the derivation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tabulated_count: Option<i64>,
}

pub fn count_resources(algo: Algo, n: u64, p: Option<u64>, method: Method) -> Result<ResourceReport, CompileError> {
    if n == 0 {
        return Err(CompileError::Unsupported("n must be at least 1".into()));
    }
    let need_p = || match p {
        Some(p) if p >= 1 => Ok(p as i64),
        _ => Err(CompileError::Unsupported(format!("{algo:?} needs p >= 1"))),
    };
    let ni = n as i64;
    let mut tabulated_count = None;
    let qubit_count = match (algo, method) {
        (Algo::Qft, Method::MCalculus) => 5 * ni + 3 * ni * (ni - 1),
        (Algo::Qft, Method::FullySymmetric) => 3 * ni + 3 * ni * (ni - 1) / 2,
        (Algo::QaoaCyclic, Method::MCalculus) => ni * (1 + 7 * need_p()?),
        (Algo::QaoaCyclic, Method::FullySymmetric) => 2 * ni * (1 + need_p()?),
        (Algo::QaoaComplete, Method::MCalculus) => {
            let p = need_p()?;
            ni + 2 * p * ni * (ni - 1) + 3 * p * ni
        }
        (Algo::QaoaComplete, Method::FullySymmetric) => {
            let p = need_p()?;
            // p n² / 2 + n (3p/2 − 2)
            tabulated_count = Some(ni * (p * ni + 3 * p - 4) / 2);
            2 * ni + p * ni * (ni - 1) / 2 + ni * p
        }
        (Algo::Generic, Method::FullySymmetric) => 3 * ni + need_p()?,
        (Algo::Generic, Method::MCalculus) => {
            return Err(CompileError::Unsupported(
                "generic circuits have no M-Calculus count".into(),
            ))
        }
    };
    let p = match algo {
        Algo::Qft => None,
        _ => p,
    };
    Ok(ResourceReport {
        method,
        algo,
        n,
        p,
        qubit_count,
        tabulated_count,
    })
}

/// |+⟩ coefficients, convenient for inputs.
pub fn plus() -> (C64, C64) {
    (C64::new(FRAC_1_SQRT_2, 0.0), C64::new(FRAC_1_SQRT_2, 0.0))
}
