#![allow(dead_code)]

use std::collections::BTreeSet;

use gaugeqc::compiler::Circuit;
use gaugeqc::graph::{GraphStatePattern, Vertex, VertexRole};
use gaugeqc::{CliffordGate, PauliOp, PauliTerm, QubitId, C64};
use rand::Rng;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn random_pair<R: Rng>(rng: &mut R) -> (C64, C64) {
    let v: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-3);
    (c(v[0] / n, v[1] / n), c(v[2] / n, v[3] / n))
}

/// Pure-X or pure-Z axis on a random nonempty subset of 1..=n.
pub fn random_axis<R: Rng>(rng: &mut R, n: u32, op: PauliOp) -> String {
    loop {
        let qs: Vec<QubitId> = (1..=n).filter(|_| rng.gen_bool(0.5)).collect();
        if !qs.is_empty() {
            return PauliTerm::new(c(1.0, 0.0), qs.into_iter().map(|q| (q, op))).ops_string();
        }
    }
}

pub fn random_circuit<R: Rng>(rng: &mut R, max_n: u32, max_gates: usize, z_only: bool) -> Circuit {
    let n = rng.gen_range(1..=max_n);
    let mut circ = Circuit::new(n);
    for _ in 0..rng.gen_range(0..=max_gates) {
        let op = if z_only || rng.gen_bool(0.5) {
            PauliOp::Z
        } else {
            PauliOp::X
        };
        let axis = random_axis(rng, n, op);
        circ.push(&axis, rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
            .unwrap();
    }
    circ
}

/// Random vertices with normalized (a, b) and each edge present with probability ½.
pub fn random_graph<R: Rng>(rng: &mut R, n: u32) -> GraphStatePattern {
    let mut p = GraphStatePattern {
        vertices: (1..=n)
            .map(|id| {
                let (a, b) = random_pair(rng);
                Vertex {
                    id,
                    role: VertexRole::Source,
                    a,
                    b,
                    measure: None,
                }
            })
            .collect(),
        ..Default::default()
    };
    for i in 1..=n {
        for j in i + 1..=n {
            if rng.gen_bool(0.5) {
                p.add_edge(i, j);
            }
        }
    }
    p
}

pub fn random_term<R: Rng>(rng: &mut R, n: u32) -> PauliTerm {
    let ops = [PauliOp::I, PauliOp::X, PauliOp::Z, PauliOp::ZX];
    let phase = [c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)][rng.gen_range(0..4)];
    PauliTerm::new(phase, (1..=n).map(|q| (q, ops[rng.gen_range(0..4)])))
}

pub fn random_clifford<R: Rng>(rng: &mut R, n: u32) -> CliffordGate {
    let target = rng.gen_range(1..=n);
    if n == 1 || rng.gen_range(0..3) == 0 {
        return CliffordGate::H { target };
    }
    let mut control = rng.gen_range(1..=n);
    while control == target {
        control = rng.gen_range(1..=n);
    }
    if rng.gen_bool(0.5) {
        CliffordGate::CZ { control, target }
    } else {
        CliffordGate::CX { control, target }
    }
}

/// Dense gate matrices, qubit 1 most significant.
pub fn clifford_matrix(g: &CliffordGate, n: u32) -> Vec<C64> {
    let d = 1usize << n;
    let bit = |q: QubitId| 1usize << (n - q);
    let mut m = vec![c(0.0, 0.0); d * d];
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for col in 0..d {
        match *g {
            CliffordGate::H { target } => {
                let b = bit(target);
                let sign = if col & b != 0 { -h } else { h };
                m[(col & !b) * d + col] += c(h, 0.0);
                m[(col | b) * d + col] += c(sign, 0.0);
            }
            CliffordGate::CZ { control, target } => {
                let both = bit(control) | bit(target);
                m[col * d + col] = c(if col & both == both { -1.0 } else { 1.0 }, 0.0);
            }
            CliffordGate::CX { control, target } => {
                let row = if col & bit(control) != 0 {
                    col ^ bit(target)
                } else {
                    col
                };
                m[row * d + col] = c(1.0, 0.0);
            }
        }
    }
    m
}

pub fn matmul(a: &[C64], b: &[C64], d: usize) -> Vec<C64> {
    let mut out = vec![c(0.0, 0.0); d * d];
    for i in 0..d {
        for k in 0..d {
            let x = a[i * d + k];
            if x == c(0.0, 0.0) {
                continue;
            }
            for j in 0..d {
                out[i * d + j] += x * b[k * d + j];
            }
        }
    }
    out
}

pub fn dagger(a: &[C64], d: usize) -> Vec<C64> {
    let mut out = vec![c(0.0, 0.0); d * d];
    for i in 0..d {
        for j in 0..d {
            out[j * d + i] = a[i * d + j].conj();
        }
    }
    out
}

pub fn matvec(a: &[C64], v: &[C64]) -> Vec<C64> {
    let d = v.len();
    (0..d).map(|i| (0..d).map(|j| a[i * d + j] * v[j]).sum()).collect()
}

pub fn max_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// exp(A) by scaling and squaring of a Taylor series.
pub fn expm(a: &[C64], d: usize) -> Vec<C64> {
    let norm: f64 = a.iter().map(|x| x.norm()).sum();
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm * scale > 0.5 {
        scale *= 0.5;
        squarings += 1;
    }
    let a: Vec<C64> = a.iter().map(|x| x * scale).collect();
    let mut out = vec![c(0.0, 0.0); d * d];
    let mut term = vec![c(0.0, 0.0); d * d];
    for i in 0..d {
        out[i * d + i] = c(1.0, 0.0);
        term[i * d + i] = c(1.0, 0.0);
    }
    for k in 1..30 {
        term = matmul(&term, &a, d).into_iter().map(|x| x / k as f64).collect();
        for (o, t) in out.iter_mut().zip(&term) {
            *o += t;
        }
    }
    for _ in 0..squarings {
        out = matmul(&out, &out, d);
    }
    out
}

pub fn set(ids: &[QubitId]) -> BTreeSet<QubitId> {
    ids.iter().copied().collect()
}
