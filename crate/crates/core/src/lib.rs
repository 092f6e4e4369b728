//! Compiles Pauli-rotation circuits into measurement-based graph-state patterns
//! through transfer-tensor gauges, and verifies them on a dense statevector.

pub mod compiler;
pub mod graph;
pub mod pauli;
pub mod residual;
pub mod simulator;
pub mod tensor;

pub use compiler::{
    analyze_residual, compile, compile_clifford_gauge_rx, count_resources, Algo, Circuit, CompileError, Method,
    ResourceReport, RotationGate,
};
pub use graph::{Byproduct, Format, GraphError, GraphStatePattern, MeasurementSpec, Plane, Vertex, VertexRole};
pub use num_complex::Complex64 as C64;
pub use pauli::{commutes, conjugate, entangle, multiply, CliffordGate, Generator, PauliOp, PauliTerm, QubitId};
pub use residual::{MeasGenerator, Residual, ResidualError};
pub use simulator::{OutcomeRecord, RunMode, SimError, StateVector};
pub use tensor::{GaugeTensor, TensorError, TransferTensor, UnitarySupplement};
