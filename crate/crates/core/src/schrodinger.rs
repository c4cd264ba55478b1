//! State-vector simulation, used as an independent check on the
//! descriptor evolution.

use ndarray::Array1;
use num_complex::Complex64;

use crate::circuit::{Circuit, ParamEnv};
use crate::dense::DENSE_CAP;
use crate::error::{Error, Result};
use crate::gates::{run_until, step_unitary_dense};
use crate::network::vacuum_expectation;
use crate::pauli::PauliSum;

/// Imaginary parts of expectation values above this are reported as errors.
pub const IMAG_TOL: f64 = 1e-9;

/// Amplitudes over the computation basis. Basis index bit `n - a` belongs
/// to qubit `a` (qubit 1 is most significant) and is 0 when `sigma_z = +1`,
/// i.e. when the qubit holds the value 1.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Array1<Complex64>,
}

impl StateVector {
    /// The standard state `|0, ..., 0>`.
    pub fn standard(n: usize) -> Result<Self> {
        if n == 0 || n > DENSE_CAP {
            return Err(Error::DenseCapExceeded { n, cap: DENSE_CAP });
        }
        let dim = 1usize << n;
        let mut amps = Array1::zeros(dim);
        amps[dim - 1] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    /// Build from raw amplitudes; the length must be a power of two and the
    /// vector must be normalized within 1e-12.
    pub fn from_amplitudes(amps: Array1<Complex64>) -> Result<Self> {
        let dim = amps.len();
        if !dim.is_power_of_two() || dim < 2 {
            return Err(Error::InvalidInput(format!("{dim} is not a valid state dimension")));
        }
        let n = dim.trailing_zeros() as usize;
        if n > DENSE_CAP {
            return Err(Error::DenseCapExceeded { n, cap: DENSE_CAP });
        }
        let s = Self { n, amps };
        if (s.norm_sqr() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!("state norm^2 is {}", s.norm_sqr())));
        }
        Ok(s)
    }

    /// Build from `(labels, amplitude)` pairs, e.g. `([0, 1], c)` for `c|0>|1>`.
    pub fn from_labeled(n: usize, entries: &[(&[u8], Complex64)]) -> Result<Self> {
        let mut amps = Array1::zeros(1usize << n);
        for (labels, amp) in entries {
            amps[label_index(n, labels)?] += *amp;
        }
        Self::from_amplitudes(amps)
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &Array1<Complex64> {
        &self.amps
    }

    /// Amplitude of the basis state with the given per-qubit values.
    pub fn amplitude(&self, labels: &[u8]) -> Result<Complex64> {
        Ok(self.amps[label_index(self.n, labels)?])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Born-rule probability that qubit `a` holds 1.
    pub fn probability_one(&self, a: usize) -> Result<f64> {
        if a == 0 || a > self.n {
            return Err(Error::QubitOutOfRange { index: a, n: self.n });
        }
        let bit = 1usize << (self.n - a);
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & bit == 0)
            .map(|(_, c)| c.norm_sqr())
            .sum())
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }
}

fn label_index(n: usize, labels: &[u8]) -> Result<usize> {
    if labels.len() != n {
        return Err(Error::DimensionMismatch { left: n, right: labels.len() });
    }
    labels.iter().try_fold(0usize, |idx, &z| match z {
        0 | 1 => Ok((idx << 1) | (1 - z as usize)),
        other => Err(Error::InvalidInput(format!("basis label {other} is not 0 or 1"))),
    })
}

/// State after the first `t` steps, starting from `|0, ..., 0>`.
pub fn evolve_state_until(c: &Circuit, env: &ParamEnv, t: usize) -> Result<StateVector> {
    if t > c.depth() {
        return Err(Error::TimeOutOfRange { t, depth: c.depth() });
    }
    c.check_env(env)?;
    let mut psi = StateVector::standard(c.n_qubits())?;
    for step in &c.steps()[..t] {
        let u = step_unitary_dense(step, c.n_qubits(), env)?;
        psi.amps = u.apply(&psi.amps)?;
    }
    Ok(psi)
}

pub fn evolve_state(c: &Circuit, env: &ParamEnv) -> Result<StateVector> {
    evolve_state_until(c, env, c.depth())
}

/// `<psi| obs |psi>` for an observable on the initial representation.
pub fn schrodinger_expectation(psi: &StateVector, obs: &PauliSum) -> Result<f64> {
    if obs.n_qubits() != psi.n {
        return Err(Error::DimensionMismatch { left: psi.n, right: obs.n_qubits() });
    }
    let m = obs.to_dense()?;
    let v = m.apply(&psi.amps)?;
    let e: Complex64 = psi.amps.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
    if e.im.abs() > IMAG_TOL {
        return Err(Error::Consistency(format!("expectation has imaginary part {}", e.im)));
    }
    Ok(e.re)
}

/// Largest disagreement between the descriptor expectations at the end of
/// the circuit and the state-vector expectations of the initial observables,
/// including the per-qubit Born-rule probabilities.
pub fn cross_check(c: &Circuit, env: &ParamEnv) -> Result<f64> {
    let heis = run_until(c, env, c.depth())?;
    let psi = evolve_state(c, env)?;
    let n = c.n_qubits();
    let mut worst: f64 = 0.0;
    for (a, d) in (1..=n).zip(heis.descriptors()) {
        let initial = crate::network::Descriptor::initial(n, a)?;
        for (now, then) in d.components().into_iter().zip(initial.components()) {
            let h = vacuum_expectation(now);
            let s = schrodinger_expectation(&psi, then)?;
            worst = worst.max((h - Complex64::new(s, 0.0)).norm());
        }
        let p = heis.outcome_probability(a)?;
        worst = worst.max((p - psi.probability_one(a)?).abs());
    }
    Ok(worst)
}

/// True iff `|<psi|chi>| >= 1 - tol`; states of different size are unequal.
pub fn states_equal_up_to_phase(psi: &StateVector, chi: &StateVector, tol: f64) -> bool {
    psi.inner(chi).map(|o| o.norm() >= 1.0 - tol).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_circuit;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn standard_state_and_labels() {
        let psi = StateVector::standard(3).unwrap();
        assert_eq!(psi.amplitude(&[0, 0, 0]).unwrap(), c(1.0, 0.0));
        assert_eq!(psi.amplitudes()[7], c(1.0, 0.0));
        assert_eq!(psi.probability_one(2).unwrap(), 0.0);
        assert!(psi.amplitude(&[0, 2, 0]).is_err());
        assert!(psi.amplitude(&[0, 0]).is_err());
    }

    #[test]
    fn z_expectation_of_standard_state_is_minus_one() {
        let psi = StateVector::standard(1).unwrap();
        let z = PauliSum::parse_real(1, "1*Z").unwrap();
        assert_eq!(schrodinger_expectation(&psi, &z).unwrap(), -1.0);
        let zz = PauliSum::parse_real(2, "1*ZZ").unwrap();
        assert!(matches!(schrodinger_expectation(&psi, &zz), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn bell_inverse_makes_the_singlet_like_pair() {
        let circ = parse_circuit("qubits 2\nstep: bellinv 1 2\n").unwrap();
        let psi = evolve_state(&circ, &ParamEnv::new()).unwrap();
        let s = FRAC_1_SQRT_2;
        let want = StateVector::from_labeled(2, &[(&[0, 0], c(0.0, s)), (&[1, 1], c(0.0, -s))]).unwrap();
        assert!(states_equal_up_to_phase(&psi, &want, 1e-12));
        let zz = PauliSum::parse_real(2, "1*ZZ").unwrap();
        assert!((schrodinger_expectation(&psi, &zz).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn empty_circuit_stays_standard() {
        let circ = parse_circuit("qubits 2\nstep:\n").unwrap();
        let psi = evolve_state(&circ, &ParamEnv::new()).unwrap();
        assert_eq!(psi, StateVector::standard(2).unwrap());
        assert_eq!(cross_check(&circ, &ParamEnv::new()).unwrap(), 0.0);
    }

    #[test]
    fn norm_is_preserved_step_by_step() {
        let circ = parse_circuit(
            "qubits 3\nstep: h 1 ; rn(0,0.6,0.8,1.3) 2\nstep: bell 1 3\nstep: t3 1 2 3\nstep: sqrtnot 2 ; cnot t=1 c=3\n",
        )
        .unwrap();
        for t in 0..=circ.depth() {
            let psi = evolve_state_until(&circ, &ParamEnv::new(), t).unwrap();
            assert!((psi.norm_sqr() - 1.0).abs() < 1e-12);
        }
        assert!(cross_check(&circ, &ParamEnv::new()).unwrap() < 1e-12);
    }

    #[test]
    fn phase_comparison() {
        let psi = StateVector::from_labeled(1, &[(&[0], c(FRAC_1_SQRT_2, 0.0)), (&[1], c(FRAC_1_SQRT_2, 0.0))]).unwrap();
        let rotated = StateVector::from_labeled(1, &[(&[0], c(0.0, FRAC_1_SQRT_2)), (&[1], c(0.0, FRAC_1_SQRT_2))]).unwrap();
        let other = StateVector::from_labeled(1, &[(&[0], c(FRAC_1_SQRT_2, 0.0)), (&[1], c(-FRAC_1_SQRT_2, 0.0))]).unwrap();
        assert!(states_equal_up_to_phase(&psi, &psi, 1e-9));
        assert!(states_equal_up_to_phase(&psi, &rotated, 1e-9));
        assert!(!states_equal_up_to_phase(&psi, &other, 1e-9));
        assert!(!states_equal_up_to_phase(&psi, &StateVector::standard(2).unwrap(), 1e-9));
    }

    #[test]
    fn rejects_unnormalized_amplitudes() {
        assert!(StateVector::from_amplitudes(Array1::from(vec![c(1.0, 0.0), c(1.0, 0.0)])).is_err());
        assert!(StateVector::from_amplitudes(Array1::from(vec![c(1.0, 0.0); 3])).is_err());
    }
}
