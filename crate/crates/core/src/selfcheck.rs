//! Per-step consistency checks of one circuit run against the dense and
//! state-vector paths.

use num_complex::Complex64;

use crate::circuit::{Circuit, ParamEnv};
use crate::dense::DenseOperator;
use crate::error::Result;
use crate::gates::{apply_step, backend_discrepancy, step_unitary_dense};
use crate::network::{vacuum_expectation, Descriptor, NetworkState};
use crate::schrodinger::{schrodinger_expectation, StateVector};

/// Worst deviations seen over all steps of a run.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CircuitCheck {
    /// Largest violation of the descriptor algebra relations.
    pub algebra: f64,
    /// Largest entrywise gap between rule-based and dense descriptors.
    pub backend: f64,
    /// Largest gap between descriptor and state-vector expectations.
    pub pictures: f64,
    /// Number of steps in which an untouched qubit's descriptor changed.
    pub locality_violations: usize,
}

impl CircuitCheck {
    pub fn worst(&self) -> f64 {
        self.algebra.max(self.backend).max(self.pictures)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.worst() <= tol && self.locality_violations == 0
    }
}

fn picture_gap(s: &NetworkState, psi: &StateVector) -> Result<f64> {
    let n = s.n_qubits();
    let mut worst: f64 = 0.0;
    for (a, d) in (1..=n).zip(s.descriptors()) {
        let initial = Descriptor::initial(n, a)?;
        for (now, then) in d.components().into_iter().zip(initial.components()) {
            let h = vacuum_expectation(now);
            let v = schrodinger_expectation(psi, then)?;
            worst = worst.max((h - Complex64::new(v, 0.0)).norm());
        }
        worst = worst.max((s.outcome_probability(a)? - psi.probability_one(a)?).abs());
    }
    Ok(worst)
}

/// Run `c` step by step, comparing after every step.
pub fn check_circuit(c: &Circuit, env: &ParamEnv) -> Result<CircuitCheck> {
    let n = c.n_qubits();
    let mut report = CircuitCheck::default();
    let mut s = NetworkState::init(n)?;
    let mut w = DenseOperator::identity(n)?;
    let mut psi = StateVector::standard(n)?;
    for step in c.steps() {
        let next = apply_step(&s, step, env)?;
        let touched = step.touched();
        let moved = (1..=n)
            .filter(|a| !touched.contains(a))
            .any(|a| next.descriptor(a).ok() != s.descriptor(a).ok());
        if moved {
            report.locality_violations += 1;
        }
        let u = step_unitary_dense(step, n, env)?;
        w = u.matmul(&w)?;
        psi = StateVector::from_amplitudes(u.apply(psi.amplitudes())?)?;
        s = next;
        report.algebra = report.algebra.max(s.check_descriptor_algebra().max());
        report.backend = report.backend.max(backend_discrepancy(&s, &w)?);
        report.pictures = report.pictures.max(picture_gap(&s, &psi)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_circuit;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_circuits_pass() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let c = random_circuit(&mut rng, 4, 8).unwrap();
            let r = check_circuit(&c, &ParamEnv::new()).unwrap();
            assert!(r.passes(1e-9), "{r:?}\n{}", c.to_text());
        }
    }

    #[test]
    fn bundled_experiments_pass() {
        let env = ParamEnv::new().with("theta", 0.9).with("phi", 2.3);
        for c in [crate::experiments::epr_circuit(), crate::experiments::teleport_circuit()] {
            assert!(check_circuit(&c, &env).unwrap().passes(1e-9));
        }
    }
}
