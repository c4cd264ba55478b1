//! Where information about a parameter sits at a given time, and whether it
//! can be read from a qubit or set of qubits alone.
//!
//! Dependence is detected numerically: the circuit is re-run with the
//! parameter set to each sample value, and the results are compared.

use std::collections::BTreeSet;
use std::f64::consts::TAU;
use std::fmt;

use crate::circuit::{Circuit, ParamEnv};
use crate::error::{Error, Result};
use crate::gates::run_until;
use crate::network::{vacuum_expectation, NetworkState};
use crate::pauli::{sums_equal, PauliSum};

pub const DEFAULT_SAMPLES: [f64; 4] = [0.7, 1.9, 3.1, 5.3];
pub const DEFAULT_TOL: f64 = 1e-9;
/// Largest subset whose full observable basis is enumerated.
pub const SUBSET_CAP: usize = 4;

/// A parameter plus the values used to probe it.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterProbe {
    param: String,
    samples: Vec<f64>,
    tol: f64,
}

impl ParameterProbe {
    pub fn new(param: &str) -> Self {
        Self {
            param: param.to_string(),
            samples: DEFAULT_SAMPLES.to_vec(),
            tol: DEFAULT_TOL,
        }
    }

    /// Replace the sample set; it needs at least three distinct values in `[0, 2pi)`.
    pub fn with_samples(mut self, samples: Vec<f64>) -> Result<Self> {
        if samples.len() < 3 {
            return Err(Error::InvalidProbe(format!("need at least 3 samples, got {}", samples.len())));
        }
        if let Some(bad) = samples.iter().find(|s| !(0.0..TAU).contains(*s)) {
            return Err(Error::InvalidProbe(format!("sample {bad} outside [0, 2pi)")));
        }
        for (i, a) in samples.iter().enumerate() {
            if samples[..i].contains(a) {
                return Err(Error::InvalidProbe(format!("sample {a} repeated")));
            }
        }
        self.samples = samples;
        Ok(self)
    }

    pub fn with_tol(mut self, tol: f64) -> Result<Self> {
        if tol.is_nan() || tol <= 0.0 {
            return Err(Error::InvalidProbe(format!("tolerance must be positive, got {tol}")));
        }
        self.tol = tol;
        Ok(self)
    }

    pub fn param(&self) -> &str {
        &self.param
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }
}

/// `k` probe values: the first `k` defaults, followed for `k > 4` by
/// evenly spaced points offset away from multiples of `pi / 2`.
pub fn extended_samples(k: usize) -> Vec<f64> {
    let mut out: Vec<f64> = DEFAULT_SAMPLES.iter().copied().take(k).collect();
    let extra = k.saturating_sub(DEFAULT_SAMPLES.len());
    out.extend((0..extra).map(|j| (j as f64 + 0.537) * TAU / extra as f64));
    out
}

/// The network at time `t` for each probe sample.
#[derive(Debug, Clone)]
pub struct SampledStates {
    states: Vec<NetworkState>,
    tol: f64,
}

impl SampledStates {
    pub fn run(c: &Circuit, base: &ParamEnv, probe: &ParameterProbe, t: usize) -> Result<Self> {
        if !c.declares(probe.param()) {
            return Err(Error::UnknownParameter(probe.param().to_string()));
        }
        let states = probe
            .samples()
            .iter()
            .map(|&v| run_until(c, &base.clone().with(probe.param(), v), t))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { states, tol: probe.tol() })
    }

    pub fn states(&self) -> &[NetworkState] {
        &self.states
    }

    /// Whether qubit `a`'s descriptor differs between any two samples.
    pub fn descriptor_depends(&self, a: usize) -> Result<bool> {
        let first = self.states[0].descriptor(a)?;
        for s in &self.states[1..] {
            let d = s.descriptor(a)?;
            for (p, q) in first.components().into_iter().zip(d.components()) {
                if !sums_equal(p, q, self.tol) {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Whether any observable of the subset has a sample-dependent
    /// expectation value.
    pub fn subset_accessible(&self, subset: &[usize]) -> Result<bool> {
        let per_sample = self
            .states
            .iter()
            .map(|s| basis_expectations(s, subset))
            .collect::<Result<Vec<_>>>()?;
        let first = &per_sample[0];
        Ok(per_sample[1..]
            .iter()
            .any(|other| first.iter().zip(other).any(|(x, y)| (x - y).abs() > self.tol)))
    }

    pub fn classify(&self, a: usize) -> Result<Classification> {
        Ok(if !self.descriptor_depends(a)? {
            Classification::NoInfo
        } else if self.subset_accessible(&[a])? {
            Classification::LocallyAccessible
        } else {
            Classification::LocallyInaccessible
        })
    }
}

fn check_subset(s: &NetworkState, subset: &[usize]) -> Result<Vec<usize>> {
    let set: BTreeSet<usize> = subset.iter().copied().collect();
    if set.len() != subset.len() {
        let dup = subset.iter().find(|q| subset.iter().filter(|r| r == q).count() > 1).unwrap();
        return Err(Error::DuplicateQubit(*dup));
    }
    if set.len() > SUBSET_CAP {
        return Err(Error::SubsetCapExceeded { size: set.len(), cap: SUBSET_CAP });
    }
    for &q in &set {
        s.check_qubit(q)?;
    }
    Ok(set.into_iter().collect())
}

/// Expectations of all `4^|S|` products of `{1, q_ax, q_ay, q_az}` over
/// `a` in `S`, in a fixed enumeration order.
pub fn basis_expectations(s: &NetworkState, subset: &[usize]) -> Result<Vec<f64>> {
    let subset = check_subset(s, subset)?;
    let mut elements = vec![PauliSum::identity(s.n_qubits())?];
    for &a in &subset {
        let d = s.descriptor(a)?;
        let mut next = Vec::with_capacity(elements.len() * 4);
        for e in &elements {
            next.push(e.clone());
            for comp in d.components() {
                next.push(e * comp);
            }
        }
        elements = next;
    }
    elements
        .iter()
        .map(|e| {
            let v = vacuum_expectation(e);
            if v.im.abs() > DEFAULT_TOL {
                return Err(Error::Consistency(format!("basis observable has complex expectation {v}")));
            }
            Ok(v.re)
        })
        .collect()
}

pub fn descriptor_depends(c: &Circuit, base: &ParamEnv, probe: &ParameterProbe, a: usize, t: usize) -> Result<bool> {
    SampledStates::run(c, base, probe, t)?.descriptor_depends(a)
}

pub fn subset_accessible(
    c: &Circuit,
    base: &ParamEnv,
    probe: &ParameterProbe,
    subset: &[usize],
    t: usize,
) -> Result<bool> {
    if subset.len() > SUBSET_CAP {
        return Err(Error::SubsetCapExceeded { size: subset.len(), cap: SUBSET_CAP });
    }
    SampledStates::run(c, base, probe, t)?.subset_accessible(subset)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    NoInfo,
    LocallyInaccessible,
    LocallyAccessible,
}

impl Classification {
    pub fn label(self) -> &'static str {
        match self {
            Classification::NoInfo => "NO_INFO",
            Classification::LocallyInaccessible => "LOCALLY_INACCESSIBLE",
            Classification::LocallyAccessible => "LOCALLY_ACCESSIBLE",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InfoFlowReport {
    pub param: String,
    pub time: usize,
    /// Indexed by qubit - 1.
    pub qubits: Vec<Classification>,
    pub subsets: Vec<(Vec<usize>, bool)>,
}

impl InfoFlowReport {
    pub fn classification(&self, a: usize) -> Classification {
        self.qubits[a - 1]
    }

    /// Qubits whose descriptors carry the parameter.
    pub fn carriers(&self) -> Vec<usize> {
        (1..=self.qubits.len())
            .filter(|&a| self.classification(a) != Classification::NoInfo)
            .collect()
    }
}

impl fmt::Display for InfoFlowReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "parameter {} at t={}", self.param, self.time)?;
        for (i, c) in self.qubits.iter().enumerate() {
            writeln!(f, "  Q{}: {c}", i + 1)?;
        }
        for (s, acc) in &self.subsets {
            let names: Vec<String> = s.iter().map(|q| format!("Q{q}")).collect();
            let word = if *acc { "accessible" } else { "not accessible" };
            writeln!(f, "  {{{}}}: {word}", names.join(","))?;
        }
        Ok(())
    }
}

pub fn info_flow_report(
    c: &Circuit,
    base: &ParamEnv,
    probe: &ParameterProbe,
    t: usize,
    extra_subsets: &[Vec<usize>],
) -> Result<InfoFlowReport> {
    let sampled = SampledStates::run(c, base, probe, t)?;
    let qubits = (1..=c.n_qubits())
        .map(|a| sampled.classify(a))
        .collect::<Result<Vec<_>>>()?;
    let subsets = extra_subsets
        .iter()
        .map(|s| Ok((s.clone(), sampled.subset_accessible(s)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(InfoFlowReport {
        param: probe.param().to_string(),
        time: t,
        qubits,
        subsets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_circuit;

    fn rotated_pair() -> Circuit {
        parse_circuit("qubits 3\nparams a b\nstep: bellinv 1 2\nstep: rx(a) 1\nstep: cnot t=3 c=1\n").unwrap()
    }

    #[test]
    fn probe_validation() {
        assert!(ParameterProbe::new("a").with_samples(vec![0.1, 0.2]).is_err());
        assert!(ParameterProbe::new("a").with_samples(vec![0.1, 0.2, 0.1]).is_err());
        assert!(ParameterProbe::new("a").with_samples(vec![0.1, 0.2, 7.0]).is_err());
        assert!(ParameterProbe::new("a").with_tol(0.0).is_err());
        assert!(ParameterProbe::new("a").with_tol(f64::NAN).is_err());
        let p = ParameterProbe::new("a").with_samples(extended_samples(7)).unwrap();
        assert_eq!(&p.samples()[..4], &DEFAULT_SAMPLES);
        assert_eq!(p.samples().len(), 7);
        assert_eq!(extended_samples(3), vec![0.7, 1.9, 3.1]);
        for k in 3..40 {
            assert!(ParameterProbe::new("a").with_samples(extended_samples(k)).is_ok(), "{k}");
        }
    }

    #[test]
    fn entangled_rotation_is_inaccessible_then_recorded() {
        let c = rotated_pair();
        let base = ParamEnv::new().with("b", 0.0);
        let probe = ParameterProbe::new("a");
        let r = info_flow_report(&c, &base, &probe, 2, &[vec![1, 2]]).unwrap();
        assert_eq!(r.qubits, vec![
            Classification::LocallyInaccessible,
            Classification::NoInfo,
            Classification::NoInfo
        ]);
        assert_eq!(r.subsets, vec![(vec![1, 2], true)]);
        assert_eq!(r.carriers(), vec![1]);
        // After the cnot, qubit 3 holds a record of qubit 1 but the pair
        // information is still hidden from qubit 3 alone.
        assert!(descriptor_depends(&c, &base, &probe, 3, 3).unwrap());
        assert!(!subset_accessible(&c, &base, &probe, &[3], 3).unwrap());
    }

    #[test]
    fn unused_parameter_reaches_nowhere() {
        let c = rotated_pair();
        let base = ParamEnv::new().with("a", 0.4);
        let r = info_flow_report(&c, &base, &ParameterProbe::new("b"), 3, &[vec![1, 2, 3]]).unwrap();
        assert!(r.qubits.iter().all(|c| *c == Classification::NoInfo));
        assert!(!r.subsets[0].1);
    }

    #[test]
    fn single_qubit_rotation_is_accessible() {
        let c = parse_circuit("qubits 1\nparams a\nstep: rx(a) 1\n").unwrap();
        let r = info_flow_report(&c, &ParamEnv::new(), &ParameterProbe::new("a"), 1, &[]).unwrap();
        assert_eq!(r.classification(1), Classification::LocallyAccessible);
    }

    #[test]
    fn errors() {
        let c = rotated_pair();
        let base = ParamEnv::new().with("b", 0.0);
        let probe = ParameterProbe::new("a");
        assert_eq!(
            subset_accessible(&c, &base, &probe, &[1, 2, 3, 1, 2], 1).unwrap_err(),
            Error::SubsetCapExceeded { size: 5, cap: SUBSET_CAP }
        );
        assert_eq!(
            subset_accessible(&c, &base, &probe, &[1, 1], 1).unwrap_err(),
            Error::DuplicateQubit(1)
        );
        assert_eq!(
            descriptor_depends(&c, &base, &ParameterProbe::new("zeta"), 1, 1).unwrap_err(),
            Error::UnknownParameter("zeta".into())
        );
        assert_eq!(
            descriptor_depends(&c, &ParamEnv::new(), &probe, 1, 1).unwrap_err(),
            Error::UnboundParameter("b".into())
        );
        assert_eq!(
            descriptor_depends(&c, &base, &probe, 1, 9).unwrap_err(),
            Error::TimeOutOfRange { t: 9, depth: 3 }
        );
    }

    #[test]
    fn basis_has_four_to_the_size_elements() {
        let s = NetworkState::init(3).unwrap();
        let e = basis_expectations(&s, &[1, 3]).unwrap();
        assert_eq!(e.len(), 16);
        // Identity, then x, y, z of qubit 1.
        assert_eq!(&e[..4], &[1.0, 0.0, 0.0, -1.0]);
    }
}
