//! Graph-state patterns: vertices, edges, measurement specs, byproducts, JSON/DOT.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::pauli::{multiply, CliffordGate, Generator, PauliOp, PauliTerm, QubitId, TOL};
use crate::C64;

/// Tolerance on |a|²+|b|² = 1 for vertex coefficients read from files.
pub const NORM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GraphError {
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(QubitId),
    #[error("vertex ids are 1-based, got 0")]
    ZeroId,
    #[error("self-loop on vertex {0}")]
    SelfLoop(QubitId),
    #[error("edge ({0}, {1}) references an unknown vertex")]
    UnknownEdgeEnd(QubitId, QubitId),
    #[error("vertex {0}: input and source vertices need a measurement, outputs must not have one")]
    MeasurementRole(QubitId),
    #[error("vertex {0}: |a|^2 + |b|^2 = {1}, expected 1")]
    NotNormalized(QubitId, f64),
    #[error("measurement order {0} used by more than one vertex")]
    DuplicateOrder(u32),
    #[error("byproduct references unknown or unmeasured vertex {0}")]
    BadByproduct(QubitId),
    #[error("nondeterministic pattern: no byproduct rule applies to vertex {0}")]
    NonDeterministic(QubitId),
    #[error("unknown format `{0}`")]
    UnknownFormat(String),
    #[error("json: {0}")]
    Json(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexRole {
    Input,
    Source,
    Output,
}

impl VertexRole {
    pub fn name(self) -> &'static str {
        match self {
            VertexRole::Input => "input",
            VertexRole::Source => "source",
            VertexRole::Output => "output",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Plane {
    XY,
    YZ,
    XZ,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasurementSpec {
    pub plane: Plane,
    pub angle: f64,
    pub order: u32,
}

impl MeasurementSpec {
    /// Ket coefficients (α, β) of the outcome-`s` bra ⟨0|[α* + β* X].
    pub fn bra(&self, outcome: u8) -> (C64, C64) {
        let t = self.angle;
        let (c, s) = ((t / 2.0).cos(), (t / 2.0).sin());
        let flip = outcome != 0;
        match self.plane {
            // ⟨0|[I + e^{-iθ}X] Z^s / √2
            Plane::XY => {
                let beta = C64::from_polar(FRAC_1_SQRT_2, t);
                (C64::new(FRAC_1_SQRT_2, 0.0), if flip { -beta } else { beta })
            }
            // ⟨0|[cos(θ/2) − i sin(θ/2) X] X^s
            Plane::YZ => {
                if flip {
                    (C64::new(0.0, s), C64::new(c, 0.0))
                } else {
                    (C64::new(c, 0.0), C64::new(0.0, s))
                }
            }
            // ⟨0|[cos(θ/2) + sin(θ/2) X] X^s Z^s
            Plane::XZ => {
                if flip {
                    (C64::new(s, 0.0), C64::new(-c, 0.0))
                } else {
                    (C64::new(c, 0.0), C64::new(s, 0.0))
                }
            }
        }
    }

    /// P with bra(1) = bra(0)·P up to phase, as a unit term on qubit `q`.
    pub fn flip_operator(&self, q: QubitId) -> PauliTerm {
        let op = match self.plane {
            Plane::XY => PauliOp::Z,
            Plane::YZ => PauliOp::X,
            Plane::XZ => PauliOp::ZX,
        };
        PauliTerm::single(q, op)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: QubitId,
    pub role: VertexRole,
    pub a: C64,
    pub b: C64,
    pub measure: Option<MeasurementSpec>,
}

impl Vertex {
    pub fn plus(id: QubitId, role: VertexRole, measure: Option<MeasurementSpec>) -> Self {
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        Vertex {
            id,
            role,
            a: h,
            b: h,
            measure,
        }
    }

    /// K_id is a ±1 eigen-operator of this vertex's generator state.
    pub fn is_eigen_plus(&self) -> bool {
        (self.a - self.b).norm() <= TOL || (self.a + self.b).norm() <= TOL
    }
}

/// Outcome-conditioned correction, applied when `trigger` yields s = 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Byproduct {
    pub trigger: QubitId,
    #[serde(with = "ops_text")]
    pub correction: PauliTerm,
}

mod ops_text {
    use super::PauliTerm;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(t: &PauliTerm, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&t.ops_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<PauliTerm, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

// Edges as [[i, j], ...]; stored with i < j. Repeated pairs are a parse error.
mod edge_list {
    use super::{edge_key, QubitId};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::collections::BTreeSet;

    pub fn serialize<S: Serializer>(e: &BTreeSet<(QubitId, QubitId)>, s: S) -> Result<S::Ok, S::Error> {
        e.iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeSet<(QubitId, QubitId)>, D::Error> {
        let raw = Vec::<[QubitId; 2]>::deserialize(d)?;
        let mut out = BTreeSet::new();
        for [i, j] in raw {
            if !out.insert(edge_key(i, j)) {
                return Err(serde::de::Error::custom(format!("edge ({i}, {j}) listed twice")));
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct GraphStatePattern {
    pub vertices: Vec<Vertex>,
    #[serde(with = "edge_list")]
    pub edges: BTreeSet<(QubitId, QubitId)>,
    #[serde(default)]
    pub byproducts: Vec<Byproduct>,
    /// Clifford gates on output vertices, applied after all measurements.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub final_clifford: Vec<CliffordGate>,
}

fn edge_key(i: QubitId, j: QubitId) -> (QubitId, QubitId) {
    (i.min(j), i.max(j))
}

impl GraphStatePattern {
    pub fn vertex(&self, id: QubitId) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    pub fn vertex_mut(&mut self, id: QubitId) -> Option<&mut Vertex> {
        self.vertices.iter_mut().find(|v| v.id == id)
    }

    pub fn add_edge(&mut self, i: QubitId, j: QubitId) {
        self.edges.insert(edge_key(i, j));
    }

    pub fn has_edge(&self, i: QubitId, j: QubitId) -> bool {
        self.edges.contains(&edge_key(i, j))
    }

    /// Adds the edge if absent, removes it otherwise.
    pub fn toggle_edge(&mut self, i: QubitId, j: QubitId) {
        let k = edge_key(i, j);
        if !self.edges.remove(&k) {
            self.edges.insert(k);
        }
    }

    pub fn ids(&self) -> Vec<QubitId> {
        let mut ids: Vec<_> = self.vertices.iter().map(|v| v.id).collect();
        ids.sort_unstable();
        ids
    }

    pub fn ids_with_role(&self, role: VertexRole) -> Vec<QubitId> {
        let mut ids: Vec<_> = self.vertices.iter().filter(|v| v.role == role).map(|v| v.id).collect();
        ids.sort_unstable();
        ids
    }

    pub fn inputs(&self) -> Vec<QubitId> {
        self.ids_with_role(VertexRole::Input)
    }

    pub fn outputs(&self) -> Vec<QubitId> {
        self.ids_with_role(VertexRole::Output)
    }

    /// Measured vertices sorted by (order, id).
    pub fn measurement_order(&self) -> Vec<(QubitId, MeasurementSpec)> {
        let mut m: Vec<_> = self
            .vertices
            .iter()
            .filter_map(|v| v.measure.map(|s| (v.id, s)))
            .collect();
        m.sort_by_key(|(id, s)| (s.order, *id));
        m
    }

    /// Overwrites the (a, b) of the input vertices in ascending id order.
    pub fn set_inputs(&mut self, coeffs: &[(C64, C64)]) {
        for (id, &(a, b)) in self.inputs().into_iter().zip(coeffs) {
            let v = self.vertex_mut(id).unwrap();
            v.a = a;
            v.b = b;
        }
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        let mut ids = BTreeSet::new();
        let mut orders = BTreeSet::new();
        for v in &self.vertices {
            if v.id == 0 {
                return Err(GraphError::ZeroId);
            }
            if !ids.insert(v.id) {
                return Err(GraphError::DuplicateVertex(v.id));
            }
            if v.measure.is_some() == (v.role == VertexRole::Output) {
                return Err(GraphError::MeasurementRole(v.id));
            }
            let norm = v.a.norm_sqr() + v.b.norm_sqr();
            if (norm - 1.0).abs() > NORM_TOL {
                return Err(GraphError::NotNormalized(v.id, norm));
            }
            if let Some(m) = v.measure {
                if !orders.insert(m.order) {
                    return Err(GraphError::DuplicateOrder(m.order));
                }
            }
        }
        for &(i, j) in &self.edges {
            if i == j {
                return Err(GraphError::SelfLoop(i));
            }
            if !ids.contains(&i) || !ids.contains(&j) {
                return Err(GraphError::UnknownEdgeEnd(i, j));
            }
        }
        for b in &self.byproducts {
            if self.vertex(b.trigger).and_then(|v| v.measure).is_none() {
                return Err(GraphError::BadByproduct(b.trigger));
            }
        }
        Ok(())
    }
}

pub fn neighborhoods(pattern: &GraphStatePattern) -> BTreeMap<QubitId, BTreeSet<QubitId>> {
    let mut nb: BTreeMap<QubitId, BTreeSet<QubitId>> =
        pattern.vertices.iter().map(|v| (v.id, BTreeSet::new())).collect();
    for &(i, j) in &pattern.edges {
        nb.entry(i).or_default().insert(j);
        nb.entry(j).or_default().insert(i);
    }
    nb
}

/// N(i,j) = (N(i) Δ N(j)) \ measured.
pub fn symmetric_neighborhood(
    nb: &BTreeMap<QubitId, BTreeSet<QubitId>>,
    i: QubitId,
    j: QubitId,
    measured: &BTreeSet<QubitId>,
) -> BTreeSet<QubitId> {
    let empty = BTreeSet::new();
    let ni = nb.get(&i).unwrap_or(&empty);
    let nj = nb.get(&j).unwrap_or(&empty);
    ni.symmetric_difference(nj)
        .filter(|q| !measured.contains(q))
        .copied()
        .collect()
}

pub fn build_state(pattern: &GraphStatePattern) -> Result<Vec<Generator>, GraphError> {
    let mut seen = BTreeSet::new();
    for v in &pattern.vertices {
        if !seen.insert(v.id) {
            return Err(GraphError::DuplicateVertex(v.id));
        }
    }
    let nb = neighborhoods(pattern);
    Ok(pattern
        .vertices
        .iter()
        .map(|v| Generator {
            a: v.a,
            b: v.b,
            qubit: v.id,
            neighborhood: nb[&v.id].clone(),
        })
        .collect())
}

/// Derives the outcome-conditioned corrections for every measured vertex.
///
/// The s = 1 bra equals the s = 0 bra times P (Z for XY, X for YZ, ZX for XZ).
/// A stabilizer S built from K_i, K_l or K_i·K_l (l ∈ N(i)) whose product with P
/// is trivial on i turns the s = 1 branch into the s = 0 branch up to the rest of
/// P·S. S must stabilize the state when i is measured: each K used belongs to a
/// vertex with a = ±b, and its support apart from i is still unmeasured.
pub fn derive_byproducts(pattern: &GraphStatePattern) -> Result<Vec<Byproduct>, GraphError> {
    let nb = neighborhoods(pattern);
    let order = pattern.measurement_order();
    let rank: BTreeMap<QubitId, usize> = order.iter().enumerate().map(|(r, (id, _))| (*id, r)).collect();
    let stab = |q: QubitId| {
        let mut k = PauliTerm::z_string(&nb[&q]);
        k.set(q, PauliOp::X);
        k
    };
    let mut out = Vec::new();
    for (t, &(i, spec)) in order.iter().enumerate() {
        let p = spec.flip_operator(i);
        let mut candidates: Vec<(Vec<QubitId>, PauliTerm)> = vec![(vec![i], stab(i))];
        for &l in &nb[&i] {
            candidates.push((vec![l], stab(l)));
        }
        for &l in &nb[&i] {
            candidates.push((vec![i, l], multiply(&stab(i), &stab(l))));
        }
        let found = candidates.into_iter().find_map(|(owners, s)| {
            let ps = multiply(&p, &s);
            if ps.get(i) != PauliOp::I {
                return None;
            }
            if !owners
                .iter()
                .all(|&o| pattern.vertex(o).is_some_and(Vertex::is_eigen_plus))
            {
                return None;
            }
            let later = s
                .support()
                .iter()
                .filter(|&&q| q != i)
                .all(|q| rank.get(q).is_none_or(|&r| r > t));
            later.then(|| ps.unit())
        });
        match found {
            Some(c) => out.push(Byproduct {
                trigger: i,
                correction: c,
            }),
            None => return Err(GraphError::NonDeterministic(i)),
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
}

impl FromStr for Format {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, GraphError> {
        match s {
            "json" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            _ => Err(GraphError::UnknownFormat(s.into())),
        }
    }
}

pub fn export(pattern: &GraphStatePattern, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(pattern).expect("pattern serializes");
            s.push('\n');
            s
        }
        Format::Dot => to_dot(pattern),
    }
}

pub fn import_json(text: &str) -> Result<GraphStatePattern, GraphError> {
    let p: GraphStatePattern = serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
    p.validate()?;
    Ok(p)
}

fn plane_label(m: Option<MeasurementSpec>) -> String {
    match m {
        Some(m) => format!("{:?}({})", m.plane, m.angle),
        None => "-".to_string(),
    }
}

fn to_dot(pattern: &GraphStatePattern) -> String {
    let mut s = String::from("graph pattern {\n");
    if !pattern.vertices.is_empty() {
        s.push_str("  node [style=filled];\n");
    }
    let mut vs: Vec<&Vertex> = pattern.vertices.iter().collect();
    vs.sort_by_key(|v| v.id);
    for v in vs {
        let color = match v.role {
            VertexRole::Input => "lightblue",
            VertexRole::Source => "lightgrey",
            VertexRole::Output => "palegreen",
        };
        let _ = writeln!(
            s,
            "  {} [label=\"{}/{}/{}\", fillcolor={}];",
            v.id,
            v.id,
            v.role.name(),
            plane_label(v.measure),
            color
        );
    }
    for &(i, j) in &pattern.edges {
        let _ = writeln!(s, "  {i} -- {j};");
    }
    s.push_str("}\n");
    s
}
