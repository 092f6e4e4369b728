//! Dense statevector oracle for patterns and circuits.
//!
//! Amplitude index: the first id in `ids` is the most significant bit.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::compiler::Circuit;
use crate::graph::{neighborhoods, GraphError, GraphStatePattern, MeasurementSpec};
use crate::pauli::{CliffordGate, PauliOp, PauliTerm, QubitId};
use crate::residual::{MeasGenerator, Residual};
use crate::C64;

/// Vertex limit of `prepare`.
pub const MAX_QUBITS: usize = 12;
/// Live-qubit limit of the lazy executor.
pub const MAX_ACTIVE: usize = 22;
/// Measured-vertex limit for exhaustive branch enumeration.
pub const MAX_BRANCH_QUBITS: usize = 16;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SimError {
    #[error("{0} qubits exceed the limit of {1}")]
    TooLarge(usize, usize),
    #[error("zero state vector")]
    ZeroVector,
    #[error("states live on different qubits")]
    Mismatch,
    #[error("qubit {0} is not in the state")]
    Missing(QubitId),
    #[error("expected {expected} input states, got {got}")]
    InputCount { expected: usize, got: usize },
    #[error("nondeterministic pattern: no byproduct for vertex {0}")]
    NonDeterministic(QubitId),
    #[error("residual is not diagonal (off-diagonal {0:e})")]
    NotDiagonal(f64),
    #[error("axis `{0}` squares to -1")]
    NotInvolutory(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    pub ids: Vec<QubitId>,
    pub amps: Vec<C64>,
}

impl StateVector {
    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn basis(ids: &[QubitId], index: usize) -> Self {
        let mut amps = vec![C64::new(0.0, 0.0); 1 << ids.len()];
        amps[index] = C64::new(1.0, 0.0);
        StateVector {
            ids: ids.to_vec(),
            amps,
        }
    }

    /// ⊗ (a_k|0⟩ + b_k|1⟩).
    pub fn product(ids: &[QubitId], coeffs: &[(C64, C64)]) -> Self {
        let mut s = StateVector {
            ids: Vec::new(),
            amps: vec![C64::new(1.0, 0.0)],
        };
        for (&q, &(a, b)) in ids.iter().zip(coeffs) {
            s.add_qubit(q, a, b);
        }
        s
    }

    fn mask(&self, q: QubitId) -> Result<usize, SimError> {
        let pos = self.ids.iter().position(|&u| u == q).ok_or(SimError::Missing(q))?;
        Ok(1 << (self.n() - 1 - pos))
    }

    /// Appends a qubit as the least significant bit.
    pub fn add_qubit(&mut self, q: QubitId, a: C64, b: C64) {
        self.ids.push(q);
        self.amps = self.amps.iter().flat_map(|&x| [x * a, x * b]).collect();
    }

    pub fn apply_x(&mut self, q: QubitId) -> Result<(), SimError> {
        let m = self.mask(q)?;
        for i in 0..self.amps.len() {
            if i & m == 0 {
                self.amps.swap(i, i | m);
            }
        }
        Ok(())
    }

    pub fn apply_z(&mut self, q: QubitId) -> Result<(), SimError> {
        let m = self.mask(q)?;
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & m != 0 {
                *a = -*a;
            }
        }
        Ok(())
    }

    pub fn apply_h(&mut self, q: QubitId) -> Result<(), SimError> {
        let m = self.mask(q)?;
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for i in 0..self.amps.len() {
            if i & m == 0 {
                let (x, y) = (self.amps[i], self.amps[i | m]);
                self.amps[i] = (x + y) * h;
                self.amps[i | m] = (x - y) * h;
            }
        }
        Ok(())
    }

    pub fn apply_cz(&mut self, p: QubitId, q: QubitId) -> Result<(), SimError> {
        let m = self.mask(p)? | self.mask(q)?;
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & m == m {
                *a = -*a;
            }
        }
        Ok(())
    }

    pub fn apply_cx(&mut self, control: QubitId, target: QubitId) -> Result<(), SimError> {
        let c = self.mask(control)?;
        let t = self.mask(target)?;
        for i in 0..self.amps.len() {
            if i & c != 0 && i & t == 0 {
                self.amps.swap(i, i | t);
            }
        }
        Ok(())
    }

    pub fn try_apply_clifford(&mut self, g: &CliffordGate) -> Result<(), SimError> {
        match *g {
            CliffordGate::H { target } => self.apply_h(target),
            CliffordGate::CZ { control, target } => self.apply_cz(control, target),
            CliffordGate::CX { control, target } => self.apply_cx(control, target),
        }
    }

    /// Panics when a gate qubit is missing.
    pub fn apply_clifford(&mut self, g: &CliffordGate) {
        self.try_apply_clifford(g)
            .expect("clifford gate on a qubit of the state");
    }

    /// Applies coeff · ⊗ ops (Z·X per ZX site, X acting first).
    pub fn apply_pauli(&mut self, t: &PauliTerm) -> Result<(), SimError> {
        for (&q, &op) in t.ops() {
            let (x, z) = op.bits();
            if x {
                self.apply_x(q)?;
            }
            if z {
                self.apply_z(q)?;
            }
        }
        for a in &mut self.amps {
            *a *= t.coeff;
        }
        Ok(())
    }

    /// Contracts ⟨0|[α* + β* X] on `q` and drops the qubit. Not renormalized.
    pub fn project(&mut self, q: QubitId, alpha: C64, beta: C64) -> Result<(), SimError> {
        let m = self.mask(q)?;
        let (ca, cb) = (alpha.conj(), beta.conj());
        let low = m - 1;
        let mut out = Vec::with_capacity(self.amps.len() / 2);
        for r in 0..self.amps.len() / 2 {
            let i = ((r & !low) << 1) | (r & low);
            out.push(ca * self.amps[i] + cb * self.amps[i | m]);
        }
        self.amps = out;
        self.ids.retain(|&u| u != q);
        Ok(())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn normalized(&self) -> Result<StateVector, SimError> {
        let n = self.norm_sqr().sqrt();
        if n == 0.0 {
            return Err(SimError::ZeroVector);
        }
        Ok(StateVector {
            ids: self.ids.clone(),
            amps: self.amps.iter().map(|a| a / n).collect(),
        })
    }

    /// Same state with qubits listed in `ids` order.
    pub fn reorder(&self, ids: &[QubitId]) -> Result<StateVector, SimError> {
        if ids.len() != self.n() {
            return Err(SimError::Mismatch);
        }
        let masks: Vec<usize> = ids.iter().map(|&q| self.mask(q)).collect::<Result<_, _>>()?;
        let n = ids.len();
        let mut amps = vec![C64::new(0.0, 0.0); self.amps.len()];
        for (j, a) in amps.iter_mut().enumerate() {
            let mut src = 0;
            for (k, m) in masks.iter().enumerate() {
                if j >> (n - 1 - k) & 1 == 1 {
                    src |= m;
                }
            }
            *a = self.amps[src];
        }
        Ok(StateVector {
            ids: ids.to_vec(),
            amps,
        })
    }
}

/// |⟨s1|s2⟩| after normalizing both.
pub fn fidelity_up_to_phase(s1: &StateVector, s2: &StateVector) -> Result<f64, SimError> {
    if s1.amps.len() != s2.amps.len() {
        return Err(SimError::Mismatch);
    }
    let (a, b) = (s1.normalized()?, s2.normalized()?);
    Ok(a.amps
        .iter()
        .zip(&b.amps)
        .map(|(x, y)| x.conj() * y)
        .sum::<C64>()
        .norm())
}

/// Applies the Clifford prefix, then each cos θ + i sin θ·σ in order.
pub fn apply_circuit(state: &StateVector, circuit: &Circuit) -> Result<StateVector, SimError> {
    let mut s = state.clone();
    for c in &circuit.clifford_prefix {
        s.try_apply_clifford(c)?;
    }
    for g in &circuit.gates {
        if g.axis.ops().values().any(|&op| op == PauliOp::ZX) {
            return Err(SimError::NotInvolutory(g.axis.ops_string()));
        }
        let mut rotated = s.clone();
        rotated.apply_pauli(&g.axis.unit())?;
        let (c, i_s) = (g.theta.cos(), C64::new(0.0, g.theta.sin()));
        for (a, r) in s.amps.iter_mut().zip(&rotated.amps) {
            *a = *a * c + r * i_s;
        }
    }
    Ok(s)
}

fn input_override(pattern: &GraphStatePattern, inputs: Option<&[(C64, C64)]>) -> Result<GraphStatePattern, SimError> {
    let mut p = pattern.clone();
    if let Some(c) = inputs {
        let expected = p.inputs().len();
        if c.len() != expected {
            return Err(SimError::InputCount { expected, got: c.len() });
        }
        p.set_inputs(c);
    }
    Ok(p)
}

/// ∏CZ_edges ⊗(a_i|0⟩ + b_i|1⟩) over all vertices in ascending id order.
pub fn prepare(pattern: &GraphStatePattern, inputs: Option<&[(C64, C64)]>) -> Result<StateVector, SimError> {
    let p = input_override(pattern, inputs)?;
    if p.vertices.len() > MAX_QUBITS {
        return Err(SimError::TooLarge(p.vertices.len(), MAX_QUBITS));
    }
    let ids = p.ids();
    let coeffs: Vec<(C64, C64)> = ids
        .iter()
        .map(|&q| {
            let v = p.vertex(q).unwrap();
            (v.a, v.b)
        })
        .collect();
    let mut s = StateVector::product(&ids, &coeffs);
    for &(i, j) in &p.edges {
        s.apply_cz(i, j)?;
    }
    Ok(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunMode {
    /// Every measurement projected onto its s = 0 bra.
    PostSelect,
    /// Outcomes drawn with their Born probabilities; s = 1 triggers the byproduct.
    Sample { seed: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct OutcomeRecord {
    pub outcomes: Vec<(QubitId, u8)>,
    /// Branch probability relative to the initial state norm.
    pub probability: f64,
}

/// Measurement engine. Vertices join the state when they or a neighbour are about
/// to be measured, so only a frontier of the pattern is ever held.
#[derive(Clone)]
struct Engine<'a> {
    pattern: &'a GraphStatePattern,
    nb: BTreeMap<QubitId, BTreeSet<QubitId>>,
    state: StateVector,
    present: BTreeSet<QubitId>,
    measured: BTreeSet<QubitId>,
    record: OutcomeRecord,
    /// ‖state‖² of the start, for branch probabilities.
    start_norm: f64,
}

impl<'a> Engine<'a> {
    fn lazy(pattern: &'a GraphStatePattern) -> Self {
        Engine {
            pattern,
            nb: neighborhoods(pattern),
            state: StateVector {
                ids: Vec::new(),
                amps: vec![C64::new(1.0, 0.0)],
            },
            present: BTreeSet::new(),
            measured: BTreeSet::new(),
            record: OutcomeRecord {
                outcomes: Vec::new(),
                probability: 1.0,
            },
            start_norm: 1.0,
        }
    }

    fn prepared(pattern: &'a GraphStatePattern, state: StateVector) -> Self {
        let mut e = Engine::lazy(pattern);
        e.present = state.ids.iter().copied().collect();
        e.start_norm = state.norm_sqr();
        e.state = state;
        e
    }

    fn ensure(&mut self, q: QubitId) -> Result<(), SimError> {
        if self.present.contains(&q) {
            return Ok(());
        }
        if self.measured.contains(&q) {
            return Err(SimError::NonDeterministic(q));
        }
        let v = self.pattern.vertex(q).ok_or(SimError::Missing(q))?;
        if self.state.n() >= MAX_ACTIVE {
            return Err(SimError::TooLarge(self.state.n() + 1, MAX_ACTIVE));
        }
        self.state.add_qubit(q, v.a, v.b);
        self.present.insert(q);
        for &w in &self.nb[&q] {
            if self.present.contains(&w) && w != q {
                self.state.apply_cz(q, w)?;
            }
        }
        Ok(())
    }

    fn ready(&mut self, q: QubitId) -> Result<(), SimError> {
        self.ensure(q)?;
        for w in self.nb[&q].clone() {
            if !self.measured.contains(&w) {
                self.ensure(w)?;
            }
        }
        Ok(())
    }

    /// Projects q onto outcome s; applies the byproduct for s = 1 when asked.
    fn measure(&mut self, q: QubitId, spec: &MeasurementSpec, s: u8, correct: bool) -> Result<(), SimError> {
        self.ready(q)?;
        let (alpha, beta) = spec.bra(s);
        self.state.project(q, alpha, beta)?;
        self.present.remove(&q);
        self.measured.insert(q);
        self.record.outcomes.push((q, s));
        if s == 1 && correct {
            let b = self
                .pattern
                .byproducts
                .iter()
                .find(|b| b.trigger == q)
                .ok_or(SimError::NonDeterministic(q))?;
            for &w in b.correction.ops().keys() {
                self.ensure(w)?;
            }
            self.state.apply_pauli(&b.correction)?;
        }
        Ok(())
    }

    fn finish(mut self) -> Result<(StateVector, OutcomeRecord), SimError> {
        let outputs: Vec<QubitId> = self
            .pattern
            .ids()
            .into_iter()
            .filter(|q| !self.measured.contains(q))
            .collect();
        for &q in &outputs {
            self.ensure(q)?;
        }
        let mut s = self.state.reorder(&outputs)?;
        for c in &self.pattern.final_clifford {
            s.try_apply_clifford(c)?;
        }
        self.record.probability = s.norm_sqr() / self.start_norm;
        Ok((s.normalized()?, self.record))
    }
}

/// Runs the measurements of `pattern` on a prepared `state` holding every vertex.
pub fn run_pattern(
    state: &StateVector,
    pattern: &GraphStatePattern,
    mode: RunMode,
) -> Result<(StateVector, OutcomeRecord), SimError> {
    pattern.validate()?;
    run_engine(Engine::prepared(pattern, state.clone()), pattern, mode)
}

/// Same as `run_pattern` but builds the state lazily, so patterns larger than
/// `MAX_QUBITS` work as long as the live frontier stays small.
pub fn execute(
    pattern: &GraphStatePattern,
    inputs: Option<&[(C64, C64)]>,
    mode: RunMode,
) -> Result<(StateVector, OutcomeRecord), SimError> {
    let p = input_override(pattern, inputs)?;
    p.validate()?;
    run_engine(Engine::lazy(&p), &p, mode)
}

/// Post-selected run, built lazily.
pub fn run_postselected(
    pattern: &GraphStatePattern,
    inputs: Option<&[(C64, C64)]>,
) -> Result<(StateVector, OutcomeRecord), SimError> {
    execute(pattern, inputs, RunMode::PostSelect)
}

fn run_engine(
    mut e: Engine,
    pattern: &GraphStatePattern,
    mode: RunMode,
) -> Result<(StateVector, OutcomeRecord), SimError> {
    let mut rng = match mode {
        RunMode::Sample { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
        RunMode::PostSelect => None,
    };
    for (q, spec) in pattern.measurement_order() {
        let s = match rng.as_mut() {
            None => 0,
            Some(rng) => {
                let mut zero = e.clone();
                zero.measure(q, &spec, 0, false)?;
                let p0 = zero.state.norm_sqr() / e.state.norm_sqr();
                if rng.gen::<f64>() < p0 {
                    e = zero;
                    continue;
                }
                1
            }
        };
        e.measure(q, &spec, s, rng.is_some())?;
    }
    e.finish()
}

/// Every outcome branch with byproducts applied.
pub fn enumerate_branches(
    pattern: &GraphStatePattern,
    inputs: Option<&[(C64, C64)]>,
) -> Result<Vec<(StateVector, OutcomeRecord)>, SimError> {
    let p = input_override(pattern, inputs)?;
    p.validate()?;
    let order = p.measurement_order();
    if order.len() > MAX_BRANCH_QUBITS {
        return Err(SimError::TooLarge(order.len(), MAX_BRANCH_QUBITS));
    }
    let mut out = Vec::with_capacity(1 << order.len());
    let mut stack = vec![(Engine::lazy(&p), 0usize)];
    while let Some((e, k)) = stack.pop() {
        if k == order.len() {
            out.push(e.finish()?);
            continue;
        }
        let (q, spec) = order[k];
        for s in [1u8, 0] {
            let mut next = e.clone();
            next.measure(q, &spec, s, true)?;
            stack.push((next, k + 1));
        }
    }
    Ok(out)
}

/// Residual by direct contraction: R = ⟨γ_M| ∏_{j∈M} G_j |0_M⟩ as a diagonal
/// operator on the unmeasured qubits, expanded in Z strings.
pub fn dense_residual(pattern: &GraphStatePattern, measgens: &[MeasGenerator]) -> Result<Residual, SimError> {
    let ids = pattern.ids();
    if ids.len() > MAX_QUBITS {
        return Err(SimError::TooLarge(ids.len(), MAX_QUBITS));
    }
    let nb = neighborhoods(pattern);
    let measured: BTreeSet<QubitId> = measgens.iter().map(|m| m.qubit).collect();
    let rest: Vec<QubitId> = ids.iter().copied().filter(|q| !measured.contains(q)).collect();
    let u = rest.len();
    let mut diag = vec![C64::new(0.0, 0.0); 1 << u];
    let mut off = 0.0f64;
    for x in 0..1usize << u {
        let mut index = 0;
        for (k, &q) in ids.iter().enumerate() {
            if let Some(p) = rest.iter().position(|&r| r == q) {
                if x >> (u - 1 - p) & 1 == 1 {
                    index |= 1 << (ids.len() - 1 - k);
                }
            }
        }
        let mut s = StateVector::basis(&ids, index);
        for m in measgens {
            let v = pattern.vertex(m.qubit).ok_or(SimError::Missing(m.qubit))?;
            let mut k = s.clone();
            k.apply_pauli(&PauliTerm::z_string(&nb[&m.qubit]))?;
            k.apply_x(m.qubit)?;
            for (a, b) in s.amps.iter_mut().zip(&k.amps) {
                *a = *a * v.a + b * v.b;
            }
        }
        for m in measgens {
            s.project(m.qubit, m.alpha, m.beta)?;
        }
        let s = s.reorder(&rest)?;
        for (y, a) in s.amps.iter().enumerate() {
            if y == x {
                diag[x] = *a;
            } else {
                off = off.max(a.norm());
            }
        }
    }
    if off > 1e-12 {
        return Err(SimError::NotDiagonal(off));
    }
    let mut r = Residual::default();
    let scale = 1.0 / (1usize << u) as f64;
    for smask in 0..1usize << u {
        let c: C64 = diag
            .iter()
            .enumerate()
            .map(|(x, d)| if (x & smask).count_ones() % 2 == 0 { *d } else { -*d })
            .sum::<C64>()
            * scale;
        if c.norm() > 1e-15 {
            let zs = (0..u)
                .filter(|k| smask >> (u - 1 - k) & 1 == 1)
                .map(|k| rest[k])
                .collect();
            r.add(zs, c);
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Plane, Vertex, VertexRole};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn prepare_examples() {
        let mut p = GraphStatePattern {
            vertices: vec![
                Vertex::plus(1, VertexRole::Output, None),
                Vertex::plus(2, VertexRole::Output, None),
            ],
            ..Default::default()
        };
        p.add_edge(1, 2);
        let s = prepare(&p, None).unwrap();
        let want = [c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(-0.5, 0.0)];
        assert!(s.amps.iter().zip(want).all(|(a, b)| (a - b).norm() < 1e-15));
        let one = GraphStatePattern {
            vertices: vec![Vertex {
                id: 1,
                role: VertexRole::Output,
                a: c(0.6, 0.0),
                b: c(0.0, 0.8),
                measure: None,
            }],
            ..Default::default()
        };
        assert_eq!(prepare(&one, None).unwrap().amps, vec![c(0.6, 0.0), c(0.0, 0.8)]);
        let big = GraphStatePattern {
            vertices: (1..=13).map(|i| Vertex::plus(i, VertexRole::Output, None)).collect(),
            ..Default::default()
        };
        assert_eq!(prepare(&big, None), Err(SimError::TooLarge(13, 12)));
    }

    #[test]
    fn xy_zero_on_plus_is_certain() {
        let p = GraphStatePattern {
            vertices: vec![Vertex::plus(
                1,
                VertexRole::Source,
                Some(MeasurementSpec {
                    plane: Plane::XY,
                    angle: 0.0,
                    order: 0,
                }),
            )],
            ..Default::default()
        };
        let mut s = prepare(&p, None).unwrap();
        let (a, b) = p.vertices[0].measure.unwrap().bra(0);
        s.project(1, a, b).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn apply_circuit_examples() {
        let ids = [1];
        let zero = StateVector::basis(&ids, 0);
        let mut circ = Circuit::new(1);
        circ.push("X1", 0.0).unwrap();
        assert_eq!(apply_circuit(&zero, &circ).unwrap(), zero);
        let mut circ = Circuit::new(1);
        circ.push("X1", std::f64::consts::FRAC_PI_2).unwrap();
        let s = apply_circuit(&zero, &circ).unwrap();
        assert!(s.amps[0].norm() < 1e-15 && (s.amps[1] - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn fidelity_examples() {
        let ids = [1, 2];
        let s = StateVector {
            ids: ids.to_vec(),
            amps: vec![c(0.5, 0.1), c(0.2, -0.3), c(0.0, 0.4), c(0.6, 0.0)],
        };
        let ph = C64::from_polar(1.0, 0.77);
        let t = StateVector {
            ids: ids.to_vec(),
            amps: s.amps.iter().map(|a| a * ph).collect(),
        };
        assert!((fidelity_up_to_phase(&s, &t).unwrap() - 1.0).abs() < 1e-12);
        let z = StateVector::basis(&[1], 0);
        let o = StateVector::basis(&[1], 1);
        assert_eq!(fidelity_up_to_phase(&z, &o).unwrap(), 0.0);
        let null = StateVector {
            ids: vec![1],
            amps: vec![c(0.0, 0.0); 2],
        };
        assert_eq!(fidelity_up_to_phase(&z, &null), Err(SimError::ZeroVector));
    }

    #[test]
    fn project_middle_qubit() {
        // |0⟩|1⟩|0⟩ + |1⟩|0⟩|1⟩, project qubit 2 on ⟨1|.
        let mut s = StateVector {
            ids: vec![1, 2, 3],
            amps: vec![c(0.0, 0.0); 8],
        };
        s.amps[0b010] = c(1.0, 0.0);
        s.amps[0b101] = c(1.0, 0.0);
        s.project(2, c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        assert_eq!(s.ids, vec![1, 3]);
        assert_eq!(s.amps, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn reorder_swaps_bits() {
        let s = StateVector {
            ids: vec![1, 2],
            amps: vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        };
        let r = s.reorder(&[2, 1]).unwrap();
        assert_eq!(r.amps[0b10], c(1.0, 0.0));
    }

    #[test]
    fn xy_chain_acts_as_z_rotation() {
        // |+⟩–|+⟩, measuring vertex 1 in XY(θ) leaves H·diag(1, e^{−iθ})|+⟩.
        for k in 0..16 {
            let th = -3.0 + 0.4 * k as f64;
            let mut p = GraphStatePattern {
                vertices: vec![
                    Vertex::plus(
                        1,
                        VertexRole::Source,
                        Some(MeasurementSpec {
                            plane: Plane::XY,
                            angle: th,
                            order: 0,
                        }),
                    ),
                    Vertex::plus(2, VertexRole::Output, None),
                ],
                ..Default::default()
            };
            p.add_edge(1, 2);
            let (out, rec) = run_postselected(&p, None).unwrap();
            assert!((rec.probability - 0.5).abs() < 1e-12);
            let d = C64::from_polar(1.0, -th);
            let want = StateVector {
                ids: vec![2],
                amps: vec![(1.0 + d) * 0.5, (1.0 - d) * 0.5],
            };
            assert!(fidelity_up_to_phase(&out, &want).unwrap() > 1.0 - 1e-12);
        }
    }

    #[test]
    fn lazy_and_prepared_runs_agree() {
        let mut p = GraphStatePattern {
            vertices: vec![
                Vertex {
                    id: 1,
                    role: VertexRole::Input,
                    a: c(0.6, 0.0),
                    b: c(0.0, 0.8),
                    measure: Some(MeasurementSpec {
                        plane: Plane::XY,
                        angle: 0.0,
                        order: 0,
                    }),
                },
                Vertex::plus(
                    2,
                    VertexRole::Source,
                    Some(MeasurementSpec {
                        plane: Plane::XY,
                        angle: 0.9,
                        order: 1,
                    }),
                ),
                Vertex::plus(3, VertexRole::Output, None),
            ],
            ..Default::default()
        };
        p.add_edge(1, 2);
        p.add_edge(2, 3);
        p.byproducts = crate::graph::derive_byproducts(&p).unwrap();
        let full = prepare(&p, None).unwrap();
        let (a, ra) = run_pattern(&full, &p, RunMode::PostSelect).unwrap();
        let (b, rb) = run_postselected(&p, None).unwrap();
        assert!(fidelity_up_to_phase(&a, &b).unwrap() > 1.0 - 1e-12);
        assert!((ra.probability - rb.probability).abs() < 1e-12);
        for seed in 0..8 {
            let (s, rec) = run_pattern(&full, &p, RunMode::Sample { seed }).unwrap();
            assert!(fidelity_up_to_phase(&s, &a).unwrap() > 1.0 - 1e-12);
            assert_eq!(rec.outcomes.len(), 2);
            let again = run_pattern(&full, &p, RunMode::Sample { seed }).unwrap();
            assert_eq!(again.1, rec);
        }
    }

    #[test]
    fn missing_byproduct_is_reported() {
        let mut p = GraphStatePattern {
            vertices: vec![
                Vertex::plus(
                    1,
                    VertexRole::Source,
                    Some(MeasurementSpec {
                        plane: Plane::XY,
                        angle: 0.0,
                        order: 0,
                    }),
                ),
                Vertex::plus(2, VertexRole::Output, None),
            ],
            ..Default::default()
        };
        p.add_edge(1, 2);
        assert_eq!(enumerate_branches(&p, None).unwrap_err(), SimError::NonDeterministic(1));
    }
}
