//! Heisenberg-picture simulation of qubit networks.
//!
//! Every qubit `a` is described by a triple of operators
//! `q_a(t) = (q_ax, q_ay, q_az)`, stored as sums of Pauli strings. Gates
//! rewrite the triples of the qubits they touch and leave every other triple
//! untouched, so the description is local by construction. Expectation
//! values are taken in the fixed standard state `|0, ..., 0>`.
//!
//! ```
//! use heisenberg_net::{parse_circuit, run_circuit, ParamEnv};
//!
//! let c = parse_circuit("qubits 2\nparams a\nstep: bellinv 1 2\nstep: rx(a) 1\n").unwrap();
//! let s = run_circuit(&c, &ParamEnv::new().with("a", 0.4)).unwrap();
//! // The rotation is in qubit 1's descriptor but cannot be seen there.
//! assert_eq!(s.bloch_vector(1).unwrap(), [0.0, 0.0, 0.0]);
//! ```

pub mod circuit;
pub mod dense;
pub mod error;
pub mod experiments;
pub mod gates;
pub mod info_flow;
pub mod network;
pub mod parse;
pub mod pauli;
pub mod random;
pub mod report;
pub mod schrodinger;
pub mod selfcheck;

pub use circuit::{AngleExpr, Circuit, Gate, ParamEnv, Step};
pub use error::{Error, Result};
pub use gates::{apply_gate, apply_step, run_circuit, run_until, Backend};
pub use network::{Descriptor, NetworkState};
pub use parse::parse_circuit;
pub use pauli::{PauliLetter, PauliString, PauliSum};
