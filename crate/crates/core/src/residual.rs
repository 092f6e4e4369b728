//! Residual operators left on unmeasured qubits, by recursion and by the graphical rules.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::graph::{build_state, neighborhoods, GraphError, GraphStatePattern, MeasurementSpec};
use crate::pauli::{Generator, QubitId, TOL};
use crate::C64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ResidualError {
    #[error("qubit {0} is not present or already measured")]
    NotPresent(QubitId),
    #[error("qubit {0} is measured twice")]
    MeasuredTwice(QubitId),
    #[error("too many measured qubits for subset enumeration ({0})")]
    TooMany(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// ⟨γ| = ⟨0|[α* + β* X] on `qubit`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasGenerator {
    pub alpha: C64,
    pub beta: C64,
    pub qubit: QubitId,
}

impl MeasGenerator {
    pub fn from_spec(qubit: QubitId, spec: &MeasurementSpec, outcome: u8) -> Self {
        let (alpha, beta) = spec.bra(outcome);
        MeasGenerator { alpha, beta, qubit }
    }
}

/// Measurement generators for the all-zero branch, in the pattern's order.
pub fn postselect_generators(pattern: &GraphStatePattern) -> Vec<MeasGenerator> {
    pattern
        .measurement_order()
        .iter()
        .map(|(q, s)| MeasGenerator::from_spec(*q, s, 0))
        .collect()
}

/// Σ_S c_S Z_S over unmeasured qubits. The key is the Z support.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Residual {
    pub terms: BTreeMap<BTreeSet<QubitId>, C64>,
}

impl Residual {
    pub fn identity() -> Self {
        let mut r = Residual::default();
        r.add(BTreeSet::new(), C64::new(1.0, 0.0));
        r
    }

    pub fn add(&mut self, zs: BTreeSet<QubitId>, c: C64) {
        *self.terms.entry(zs).or_insert(C64::new(0.0, 0.0)) += c;
    }

    pub fn coeff(&self, zs: &BTreeSet<QubitId>) -> C64 {
        self.terms.get(zs).copied().unwrap_or_default()
    }

    /// Termwise comparison; a missing term counts as zero.
    pub fn approx_eq(&self, other: &Residual, tol: f64) -> bool {
        self.terms
            .keys()
            .chain(other.terms.keys())
            .all(|k| (self.coeff(k) - other.coeff(k)).norm() <= tol)
    }

    pub fn max_deviation(&self, other: &Residual) -> f64 {
        self.terms
            .keys()
            .chain(other.terms.keys())
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }

    /// Drops terms with |c| ≤ tol.
    pub fn pruned(&self, tol: f64) -> Residual {
        Residual {
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| c.norm() > tol)
                .map(|(k, c)| (k.clone(), *c))
                .collect(),
        }
    }

    pub fn qubits(&self) -> BTreeSet<QubitId> {
        self.terms.keys().flatten().copied().collect()
    }

    /// Diagonal value on the basis state `bits` over `universe` (first entry most significant).
    pub fn diagonal(&self, universe: &[QubitId], bits: usize) -> C64 {
        let n = universe.len();
        let mut out = C64::new(0.0, 0.0);
        for (zs, c) in &self.terms {
            let ones = zs
                .iter()
                .filter(|q| {
                    let pos = universe
                        .iter()
                        .position(|u| u == *q)
                        .expect("residual qubit outside universe");
                    bits >> (n - 1 - pos) & 1 == 1
                })
                .count();
            out += if ones % 2 == 0 { *c } else { -*c };
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    zs: Vec<QubitId>,
    coeff: C64,
}

impl Serialize for Residual {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.terms
            .iter()
            .map(|(k, c)| TermRepr {
                zs: k.iter().copied().collect(),
                coeff: *c,
            })
            .collect::<Vec<_>>()
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Residual {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let mut r = Residual::default();
        for t in Vec::<TermRepr>::deserialize(d)? {
            r.add(t.zs.into_iter().collect(), t.coeff);
        }
        Ok(r)
    }
}

/// One recursion step: R ← α*a·R′ + β*b·⟨0|X R K|0⟩ for the measured qubit l.
///
/// R′ drops Z_l. In the interactive branch X_l flips the sign of terms holding
/// Z_l, and K_l leaves Z on the unmeasured neighbours of l.
pub fn measure_one(
    state: &[Generator],
    residual: &Residual,
    m: &MeasGenerator,
) -> Result<(Vec<Generator>, Residual), ResidualError> {
    let l = m.qubit;
    let g = state
        .iter()
        .find(|g| g.qubit == l)
        .ok_or(ResidualError::NotPresent(l))?;
    debug_assert!(state
        .iter()
        .all(|h| h.neighborhood.contains(&l) == g.neighborhood.contains(&h.qubit)));
    let idle = m.alpha.conj() * g.a;
    let inter = m.beta.conj() * g.b;
    let mut out = Residual::default();
    for (zs, c) in &residual.terms {
        let mut rest = zs.clone();
        let had = rest.remove(&l);
        out.add(rest.clone(), idle * c);
        let shifted: BTreeSet<QubitId> = rest.symmetric_difference(&g.neighborhood).copied().collect();
        out.add(shifted, if had { -inter * c } else { inter * c });
    }
    let next = state
        .iter()
        .filter(|h| h.qubit != l)
        .map(|h| {
            let mut h = h.clone();
            h.neighborhood.remove(&l);
            h
        })
        .collect();
    Ok((next, out))
}

fn check_distinct(measgens: &[MeasGenerator]) -> Result<(), ResidualError> {
    let mut seen = BTreeSet::new();
    for m in measgens {
        if !seen.insert(m.qubit) {
            return Err(ResidualError::MeasuredTwice(m.qubit));
        }
    }
    Ok(())
}

/// Folds `measure_one` over `measgens`; returns the remaining generators too.
pub fn residual_recursive_with_state(
    pattern: &GraphStatePattern,
    measgens: &[MeasGenerator],
) -> Result<(Vec<Generator>, Residual), ResidualError> {
    check_distinct(measgens)?;
    let mut state = build_state(pattern)?;
    let mut r = Residual::identity();
    for m in measgens {
        (state, r) = measure_one(&state, &r, m)?;
    }
    Ok((state, r))
}

pub fn residual_recursive(pattern: &GraphStatePattern, measgens: &[MeasGenerator]) -> Result<Residual, ResidualError> {
    Ok(residual_recursive_with_state(pattern, measgens)?.1)
}

/// A residual term with its provenance: which measured qubits contributed their
/// interactive coefficient, and the sign from edges among them.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledTerm {
    pub interactive: BTreeSet<QubitId>,
    pub sign: f64,
    pub zs: BTreeSet<QubitId>,
    pub coeff: C64,
}

/// Subset enumeration limit for the graphical rules.
pub const MAX_RULE_QUBITS: usize = 22;

/// Every idle/interactive choice over the measured qubits, built from the rules:
/// coefficients multiply per qubit, the sign is (−1)^(edges inside the
/// interactive set) and the Z support is the symmetric difference of their
/// neighbourhoods minus the measured qubits.
pub fn labeled_residual(
    pattern: &GraphStatePattern,
    measgens: &[MeasGenerator],
) -> Result<Vec<LabeledTerm>, ResidualError> {
    check_distinct(measgens)?;
    let m = measgens.len();
    if m > MAX_RULE_QUBITS {
        return Err(ResidualError::TooMany(m));
    }
    let nb = neighborhoods(pattern);
    let measured: BTreeSet<QubitId> = measgens.iter().map(|g| g.qubit).collect();
    let mut factors = Vec::with_capacity(m);
    for g in measgens {
        let v = pattern.vertex(g.qubit).ok_or(ResidualError::NotPresent(g.qubit))?;
        factors.push((g.alpha.conj() * v.a, g.beta.conj() * v.b));
    }
    let mut out = Vec::with_capacity(1 << m);
    for mask in 0usize..(1 << m) {
        let chosen: Vec<usize> = (0..m).filter(|k| mask >> k & 1 == 1).collect();
        let interactive: BTreeSet<QubitId> = chosen.iter().map(|&k| measgens[k].qubit).collect();
        let mut coeff = C64::new(1.0, 0.0);
        for (k, (idle, inter)) in factors.iter().enumerate() {
            coeff *= if mask >> k & 1 == 1 { *inter } else { *idle };
        }
        let mut edges = 0;
        for (x, &i) in chosen.iter().enumerate() {
            for &j in &chosen[x + 1..] {
                if pattern.has_edge(measgens[i].qubit, measgens[j].qubit) {
                    edges += 1;
                }
            }
        }
        let sign = if edges % 2 == 0 { 1.0 } else { -1.0 };
        let mut zs = BTreeSet::new();
        for q in &interactive {
            zs = zs.symmetric_difference(&nb[q]).copied().collect();
        }
        zs.retain(|q| !measured.contains(q));
        out.push(LabeledTerm {
            interactive,
            sign,
            zs,
            coeff: coeff * sign,
        });
    }
    Ok(out)
}

pub fn residual_by_rules(pattern: &GraphStatePattern, measgens: &[MeasGenerator]) -> Result<Residual, ResidualError> {
    let mut r = Residual::default();
    for t in labeled_residual(pattern, measgens)? {
        r.add(t.zs, t.coeff);
    }
    Ok(r)
}

/// Recursion and graphical rules agree termwise within 1e-12.
pub fn crosscheck(pattern: &GraphStatePattern, measgens: &[MeasGenerator]) -> Result<bool, ResidualError> {
    let a = residual_recursive(pattern, measgens)?;
    let b = residual_by_rules(pattern, measgens)?;
    Ok(a.approx_eq(&b, TOL))
}

/// State of the unmeasured qubits (ascending ids) for this measurement branch:
/// R · ∏ G′_u |0…0⟩ with G′ the generators left after severing measured qubits.
/// Not renormalized.
pub fn residual_output_state(
    pattern: &GraphStatePattern,
    measgens: &[MeasGenerator],
) -> Result<(Vec<QubitId>, Vec<C64>), ResidualError> {
    let (mut left, r) = residual_recursive_with_state(pattern, measgens)?;
    left.sort_by_key(|g| g.qubit);
    let ids: Vec<QubitId> = left.iter().map(|g| g.qubit).collect();
    let n = ids.len();
    let pos = |q: QubitId| n - 1 - ids.iter().position(|&u| u == q).unwrap();
    let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
    amps[0] = C64::new(1.0, 0.0);
    for g in &left {
        let xmask = 1usize << pos(g.qubit);
        let zmask: usize = g.neighborhood.iter().map(|&q| 1usize << pos(q)).sum();
        let mut next = vec![C64::new(0.0, 0.0); amps.len()];
        for (x, amp) in amps.iter().enumerate() {
            next[x] += g.a * amp;
            // X_q Z_N on |x⟩: phase from Z first, then the flip.
            let phase = if (x & zmask).count_ones().is_multiple_of(2) {
                1.0
            } else {
                -1.0
            };
            next[x ^ xmask] += g.b * amp * phase;
        }
        amps = next;
    }
    for (x, amp) in amps.iter_mut().enumerate() {
        *amp *= r.diagonal(&ids, x);
    }
    Ok((ids, amps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Vertex, VertexRole};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn vertex(id: QubitId, a: C64, b: C64) -> Vertex {
        Vertex {
            id,
            role: VertexRole::Output,
            a,
            b,
            measure: None,
        }
    }

    fn set(ids: &[QubitId]) -> BTreeSet<QubitId> {
        ids.iter().copied().collect()
    }

    fn worked_graph(s: bool) -> GraphStatePattern {
        let mut p = GraphStatePattern {
            vertices: vec![
                vertex(1, c(0.6, 0.0), c(0.0, 0.8)),
                vertex(2, c(0.8, 0.0), c(0.6, 0.0)),
                vertex(3, c(1.0, 0.0), c(0.0, 0.0)),
                vertex(4, c(0.28, 0.0), c(0.96, 0.0)),
                vertex(5, c(0.0, 0.6), c(0.8, 0.0)),
            ],
            ..Default::default()
        };
        for (i, j) in [(4, 1), (4, 2), (5, 1), (5, 3)] {
            p.add_edge(i, j);
        }
        if s {
            p.add_edge(4, 5);
        }
        p
    }

    fn worked_meas() -> Vec<MeasGenerator> {
        vec![
            MeasGenerator {
                alpha: c(0.6, 0.0),
                beta: c(0.0, 0.8),
                qubit: 4,
            },
            MeasGenerator {
                alpha: c(0.0, 1.0) * 0.8,
                beta: c(0.6, 0.0),
                qubit: 5,
            },
        ]
    }

    #[test]
    fn single_qubit() {
        let p = GraphStatePattern {
            vertices: vec![vertex(1, c(0.6, 0.0), c(0.8, 0.0))],
            ..Default::default()
        };
        let m = MeasGenerator {
            alpha: c(0.0, 1.0),
            beta: c(0.0, 0.0),
            qubit: 1,
        };
        let r = residual_recursive(&p, &[m]).unwrap();
        assert!((r.coeff(&set(&[])) - c(0.0, -0.6)).norm() < 1e-15);
        let p = GraphStatePattern {
            vertices: vec![vertex(1, c(1.0, 0.0), c(0.0, 0.0))],
            ..Default::default()
        };
        let m = MeasGenerator {
            alpha: c(1.0, 0.0),
            beta: c(0.0, 0.0),
            qubit: 1,
        };
        assert!(residual_recursive(&p, &[m])
            .unwrap()
            .approx_eq(&Residual::identity(), 0.0));
    }

    #[test]
    fn two_measured_closed_form() {
        let ms = worked_meas();
        for s in [false, true] {
            let p = worked_graph(s);
            let f = |q: QubitId, m: &MeasGenerator| {
                let v = p.vertex(q).unwrap();
                (m.alpha.conj() * v.a, m.beta.conj() * v.b)
            };
            let (a4, b4) = f(4, &ms[0]);
            let (a5, b5) = f(5, &ms[1]);
            let sign = if s { -1.0 } else { 1.0 };
            let r = residual_recursive(&p, &ms).unwrap();
            assert!((r.coeff(&set(&[])) - a4 * a5).norm() < 1e-12);
            assert!((r.coeff(&set(&[1, 3])) - a4 * b5).norm() < 1e-12);
            assert!((r.coeff(&set(&[1, 2])) - b4 * a5).norm() < 1e-12);
            assert!((r.coeff(&set(&[2, 3])) - b4 * b5 * sign).norm() < 1e-12);
            assert_eq!(r.pruned(1e-12).terms.len(), 4);
            assert!(crosscheck(&p, &ms).unwrap());
        }
    }

    #[test]
    fn operator_corollary_single() {
        let mut p = GraphStatePattern {
            vertices: vec![vertex(1, c(0.6, 0.0), c(0.8, 0.0)), vertex(2, c(1.0, 0.0), c(0.0, 0.0))],
            ..Default::default()
        };
        p.add_edge(1, 2);
        let m = MeasGenerator {
            alpha: c(0.8, 0.0),
            beta: c(0.6, 0.0),
            qubit: 1,
        };
        let r = residual_by_rules(&p, &[m]).unwrap();
        assert_eq!(r.terms.len(), 2);
        assert!((r.coeff(&set(&[2])) - c(0.48, 0.0)).norm() < 1e-15);
        assert!((r.coeff(&set(&[])) - c(0.48, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn recursion_errors() {
        let p = worked_graph(true);
        let mut ms = worked_meas();
        ms.push(ms[0]);
        assert_eq!(residual_recursive(&p, &ms), Err(ResidualError::MeasuredTwice(4)));
        let m = MeasGenerator {
            alpha: c(1.0, 0.0),
            beta: c(0.0, 0.0),
            qubit: 9,
        };
        assert_eq!(residual_recursive(&p, &[m]), Err(ResidualError::NotPresent(9)));
    }

    #[test]
    fn labeled_signs() {
        let p = worked_graph(true);
        let t = labeled_residual(&p, &worked_meas()).unwrap();
        let both = t.iter().find(|t| t.interactive.len() == 2).unwrap();
        assert_eq!(both.sign, -1.0);
        assert_eq!(both.zs, set(&[2, 3]));
    }

    #[test]
    fn json_form() {
        let mut r = Residual::default();
        r.add(set(&[3, 1]), c(0.5, -0.25));
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"[{"zs":[1,3],"coeff":[0.5,-0.25]}]"#);
        assert_eq!(serde_json::from_str::<Residual>(&s).unwrap(), r);
    }

    #[test]
    fn output_state_of_plus_chain() {
        // |+⟩–|+⟩ measured ⟨+| on vertex 1 teleports H|+⟩ = |0⟩ onto vertex 2.
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut p = GraphStatePattern {
            vertices: vec![vertex(1, c(h, 0.0), c(h, 0.0)), vertex(2, c(h, 0.0), c(h, 0.0))],
            ..Default::default()
        };
        p.add_edge(1, 2);
        let m = MeasGenerator {
            alpha: c(h, 0.0),
            beta: c(h, 0.0),
            qubit: 1,
        };
        let (ids, amps) = residual_output_state(&p, &[m]).unwrap();
        assert_eq!(ids, vec![2]);
        assert!((amps[0] - c(h, 0.0)).norm() < 1e-12 && amps[1].norm() < 1e-12);
    }
}
