//! Circuit families for the benchmarks.

use gaugeqc::compiler::Circuit;
use gaugeqc::C64;

/// p layers of ZZ on a ring followed by X mixers.
pub fn qaoa_cyclic(n: u32, p: usize, gamma: f64, beta: f64) -> Circuit {
    let mut c = Circuit::new(n);
    for _ in 0..p {
        for q in 1..=n {
            let next = q % n + 1;
            if next != q {
                c.push(&format!("Z{} Z{}", q.min(next), q.max(next)), gamma)
                    .expect("valid axis");
            }
        }
        for q in 1..=n {
            c.push(&format!("X{q}"), beta).expect("valid axis");
        }
    }
    c
}

/// Phase-only skeleton of the quantum Fourier transform: single Z per qubit plus
/// a ZZ for every pair.
pub fn qft_phases(n: u32) -> Circuit {
    let mut c = Circuit::new(n);
    for i in 1..=n {
        c.push(&format!("Z{i}"), std::f64::consts::FRAC_PI_4)
            .expect("valid axis");
        for j in i + 1..=n {
            let angle = std::f64::consts::PI / f64::from(1u32 << (j - i + 1));
            c.push(&format!("Z{i} Z{j}"), angle).expect("valid axis");
        }
    }
    c
}

pub fn plus_inputs(n: u32) -> Vec<(C64, C64)> {
    vec![gaugeqc::compiler::plus(); n as usize]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gate_counts() {
        assert_eq!(qaoa_cyclic(4, 2, 0.3, 0.2).gates.len(), 16);
        assert_eq!(qaoa_cyclic(1, 1, 0.3, 0.2).gates.len(), 1);
        assert_eq!(qft_phases(4).gates.len(), 4 + 6);
        assert!(qft_phases(3).validate().is_ok());
    }
}
