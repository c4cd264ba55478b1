//! Ready-made experiments: the EPR and teleportation networks, the Bell
//! quantities with the hidden-variable feasibility test, the XOR cypher
//! analogue and the state-vector ambiguity pair.

use std::f64::consts::PI;
use std::fmt;

use crate::circuit::{Circuit, ParamEnv};
use crate::error::{Error, Result};
use crate::gates::{run_until, run_with_backend, Backend};
use crate::network::{vacuum_expectation, NetworkState};
use crate::parse::parse_circuit;
use crate::schrodinger::{evolve_state, states_equal_up_to_phase};

pub const EPR_TEXT: &str = include_str!("../circuits/epr.circ");
pub const TELEPORT_TEXT: &str = include_str!("../circuits/teleport.circ");

/// Tolerance used when deciding how two recorded outcomes are related.
pub const RELATION_TOL: f64 = 1e-9;

pub fn epr_circuit() -> Circuit {
    parse_circuit(EPR_TEXT).expect("bundled EPR circuit parses")
}

pub fn teleport_circuit() -> Circuit {
    parse_circuit(TELEPORT_TEXT).expect("bundled teleportation circuit parses")
}

fn epr_env(theta: f64, phi: f64) -> ParamEnv {
    ParamEnv::new().with("theta", theta).with("phi", phi)
}

fn snapshots(c: &Circuit, env: &ParamEnv, backend: Backend) -> Result<Vec<NetworkState>> {
    match backend {
        Backend::Pauli => crate::gates::run_trajectory(c, env),
        Backend::Dense => (0..=c.depth()).map(|t| run_with_backend(c, env, t, backend)).collect(),
    }
}

#[derive(Debug, Clone)]
pub struct EprResult {
    pub theta: f64,
    pub phi: f64,
    /// Probability that the outcomes recorded in Q1 and Q4 differ.
    pub prob_different: f64,
    /// Network at `t = 0 ..= 4`.
    pub snapshots: Vec<NetworkState>,
}

pub fn run_epr(theta: f64, phi: f64) -> Result<EprResult> {
    run_epr_with(theta, phi, Backend::Pauli)
}

pub fn run_epr_with(theta: f64, phi: f64, backend: Backend) -> Result<EprResult> {
    let snapshots = snapshots(&epr_circuit(), &epr_env(theta, phi), backend)?;
    let prob_different = snapshots[4].outcome_probability(1)?;
    Ok(EprResult { theta, phi, prob_different, snapshots })
}

/// Where an extra copy of Q4's record goes in the five-qubit EPR variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EprVariant {
    /// Q4's record is copied into an ancilla Q5, but Q4 still carries it to Q1.
    Ancilla,
    /// Q4's record is copied into Q5, and Q5 carries it to Q1 instead.
    Relay,
}

/// The EPR network with a fifth qubit that records Q4 after Q4 has
/// recorded Q3.
pub fn epr_variant_circuit(variant: EprVariant) -> Circuit {
    let carrier = match variant {
        EprVariant::Ancilla => 4,
        EprVariant::Relay => 5,
    };
    let text = format!(
        "qubits 5\nparams theta phi\n\
         step: bellinv 2 3\n\
         step: rx(theta) 2 ; rx(phi) 3\n\
         step: cnot t=1 c=2 ; cnot t=4 c=3\n\
         step: cnot t=5 c=4\n\
         step: cnot t=1 c={carrier}\n"
    );
    parse_circuit(&text).expect("EPR variant parses")
}

/// Probability that Q1 ends up holding 1 in the five-qubit variant.
pub fn run_epr_variant(variant: EprVariant, theta: f64, phi: f64, backend: Backend) -> Result<f64> {
    let c = epr_variant_circuit(variant);
    run_with_backend(&c, &epr_env(theta, phi), c.depth(), backend)?.outcome_probability(1)
}

#[derive(Debug, Clone)]
pub struct TeleportResult {
    pub theta: f64,
    /// Bloch vector of Q5 at `t = 4`, before the verification rotation.
    pub bloch_q5: [f64; 3],
    /// Squared length of `bloch_q5`.
    pub purity_q5: f64,
    /// Probability that Q5 holds 0 after it is rotated back by `-theta`.
    pub verify_prob: f64,
    /// Network at `t = 0 ..= 5`.
    pub snapshots: Vec<NetworkState>,
}

pub fn run_teleportation(theta: f64) -> Result<TeleportResult> {
    run_teleportation_with(theta, Backend::Pauli)
}

pub fn run_teleportation_with(theta: f64, backend: Backend) -> Result<TeleportResult> {
    let env = ParamEnv::new().with("theta", theta);
    let snapshots = snapshots(&teleport_circuit(), &env, backend)?;
    let bloch_q5 = snapshots[4].bloch_vector(5)?;
    let purity_q5 = snapshots[4].purity_probe(5)?;
    let verify_prob = 1.0 - snapshots[5].outcome_probability(5)?;
    Ok(TeleportResult { theta, bloch_q5, purity_q5, verify_prob, snapshots })
}

/// `(<q4z q5z>, <q4z><q5z>)` at `t = 1` of the teleportation network.
pub fn entanglement_key(theta: f64) -> Result<(f64, f64)> {
    let s = run_until(&teleport_circuit(), &ParamEnv::new().with("theta", theta), 1)?;
    let (z4, z5) = (&s.descriptor(4)?.z, &s.descriptor(5)?.z);
    let joint = vacuum_expectation(&(z4 * z5)).re;
    let separate = vacuum_expectation(z4).re * vacuum_expectation(z5).re;
    Ok((joint, separate))
}

/// How the outcome `b(theta)` relates to `a(theta)` at equal angles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutcomeRelation {
    Equal,
    Opposite,
}

impl fmt::Display for OutcomeRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutcomeRelation::Equal => "b = a",
            OutcomeRelation::Opposite => "b = 1 - a",
        })
    }
}

#[derive(Debug, Clone)]
pub struct BellCheckResult {
    pub grid: Vec<f64>,
    /// `(theta, <z1(3)>)` over the grid.
    pub marginals_a: Vec<(f64, f64)>,
    /// `(phi, <z4(3)>)` over the grid.
    pub marginals_b: Vec<(f64, f64)>,
    /// `(theta, phi, <z1(3) z4(3)>)` over the grid squared.
    pub correlations: Vec<(f64, f64, f64)>,
    pub relation: OutcomeRelation,
    /// Largest of `mean (a - b)^2` (for `Equal`) or `mean (1 - a - b)^2`
    /// (for `Opposite`) over the grid diagonal, for the chosen relation.
    pub relation_residual: f64,
    /// The angles `2 pi j / 3`.
    pub triple: [f64; 3],
    /// `mean a(theta_i) a(theta_j)` for `(i, j)` in `(0,1), (0,2), (1,2)`.
    pub pair_values: [f64; 3],
    pub lhv: LhvVerdict,
}

impl BellCheckResult {
    pub fn lhv_feasible(&self) -> bool {
        self.lhv.feasible
    }
}

fn epr_at_three(theta: f64, phi: f64) -> Result<NetworkState> {
    run_until(&epr_circuit(), &epr_env(theta, phi), 3)
}

fn correlation(theta: f64, phi: f64) -> Result<(f64, f64, f64)> {
    let s = epr_at_three(theta, phi)?;
    Ok((s.outcome_probability(1)?, s.outcome_probability(4)?, s.pair_correlation(1, 4)?))
}

/// Marginals and correlations of the recorded outcomes at `t = 3` over
/// `grid`, the outcome relation they imply, the resulting `a`-`a` pair
/// means at the `2 pi / 3` triple, and the hidden-variable verdict.
pub fn run_bell_check(grid: &[f64]) -> Result<BellCheckResult> {
    if grid.is_empty() {
        return Err(Error::InvalidInput("angle grid is empty".into()));
    }
    let mut marginals_a = Vec::new();
    let mut marginals_b = Vec::new();
    let mut correlations = Vec::new();
    let (mut equal_res, mut opposite_res): (f64, f64) = (0.0, 0.0);
    for &theta in grid {
        for &phi in grid {
            let (ma, mb, c) = correlation(theta, phi)?;
            correlations.push((theta, phi, c));
            if phi == theta {
                marginals_a.push((theta, ma));
                marginals_b.push((phi, mb));
                equal_res = equal_res.max((ma + mb - 2.0 * c).abs());
                opposite_res = opposite_res.max((1.0 - ma - mb + 2.0 * c).abs());
            }
        }
    }
    let (relation, relation_residual) = if equal_res <= opposite_res {
        (OutcomeRelation::Equal, equal_res)
    } else {
        (OutcomeRelation::Opposite, opposite_res)
    };
    if relation_residual > RELATION_TOL {
        return Err(Error::Consistency(format!(
            "outcomes at equal angles are neither equal nor opposite (residual {relation_residual:e})"
        )));
    }

    let triple = [0.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0];
    let mut pair_values = [0.0; 3];
    for (slot, (i, j)) in pair_values.iter_mut().zip([(0, 1), (0, 2), (1, 2)]) {
        let (ma, _, c) = correlation(triple[i], triple[j])?;
        *slot = match relation {
            OutcomeRelation::Equal => c,
            OutcomeRelation::Opposite => ma - c,
        };
    }
    let marginal = marginals_a.iter().map(|(_, m)| m).sum::<f64>() / marginals_a.len() as f64;
    let lhv = lhv_feasibility_general([marginal; 3], pair_values);
    Ok(BellCheckResult {
        grid: grid.to_vec(),
        marginals_a,
        marginals_b,
        correlations,
        relation,
        relation_residual,
        triple,
        pair_values,
        lhv,
    })
}

/// A deterministic assignment `(a(theta_0), a(theta_1), a(theta_2))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct LhvStrategy(pub [u8; 3]);

impl LhvStrategy {
    pub fn all() -> [LhvStrategy; 8] {
        std::array::from_fn(|s| LhvStrategy([(s >> 2) as u8 & 1, (s >> 1) as u8 & 1, s as u8 & 1]))
    }

    fn ones(self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }
}

impl fmt::Display for LhvStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{}{}{}", self.0[0], self.0[1], self.0[2])
    }
}

/// Weight of a strategy as an affine function `constant + slope * p` of
/// `p = w111`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineWeight {
    pub strategy: LhvStrategy,
    pub constant: f64,
    pub slope: f64,
}

impl fmt::Display for AffineWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.slope > 0.0 { '+' } else { '-' };
        if self.constant == 0.0 && self.slope > 0.0 {
            write!(f, "{} = p", self.strategy)
        } else {
            write!(f, "{} = {} {sign} p", self.strategy, fmt_num(self.constant))
        }
    }
}

fn fmt_num(v: f64) -> String {
    let r = (v * 1e9).round() / 1e9;
    if r == 0.0 {
        "0".into()
    } else {
        format!("{r}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LhvVerdict {
    pub feasible: bool,
    /// Admissible range of `p = w111`; empty when `lower > upper`.
    pub lower: f64,
    pub upper: f64,
    pub weights: Vec<AffineWeight>,
    /// Explanation; for infeasible input, the two weights whose sign
    /// constraints cannot hold together.
    pub certificate: String,
}

const LHV_TOL: f64 = 1e-12;

/// Closed form for equal marginals `m` and equal pair means `c`:
/// `w111 = p`, `w110 = c - p`, `w100 = m - 2c + p`, `w000 = 1 - 3m + 3c - p`.
pub fn lhv_feasibility(marginal: f64, pair_value: f64) -> LhvVerdict {
    let (m, c) = (marginal, pair_value);
    let weights = LhvStrategy::all()
        .into_iter()
        .map(|s| {
            let (constant, slope) = match s.ones() {
                3 => (0.0, 1.0),
                2 => (c, -1.0),
                1 => (m - 2.0 * c, 1.0),
                _ => (1.0 - 3.0 * m + 3.0 * c, -1.0),
            };
            AffineWeight { strategy: s, constant, slope }
        })
        .collect();
    verdict(weights)
}

/// Enumeration over the eight strategies for arbitrary marginals
/// `m[i] = mean a(theta_i)` and pair means `pairs = [c01, c02, c12]`.
/// Each weight follows from inclusion-exclusion over the moments.
pub fn lhv_feasibility_general(m: [f64; 3], pairs: [f64; 3]) -> LhvVerdict {
    let pair = |i: usize, j: usize| match (i.min(j), i.max(j)) {
        (0, 1) => pairs[0],
        (0, 2) => pairs[1],
        _ => pairs[2],
    };
    // Moment of the product of a_i over the set `mask` (bit i set for angle i).
    let moment = |mask: usize| -> Option<f64> {
        let idx: Vec<usize> = (0..3).filter(|i| mask >> i & 1 == 1).collect();
        match idx.len() {
            0 => Some(1.0),
            1 => Some(m[idx[0]]),
            2 => Some(pair(idx[0], idx[1])),
            _ => None,
        }
    };
    let weights = LhvStrategy::all()
        .into_iter()
        .map(|s| {
            let mask = (0..3).filter(|&i| s.0[i] == 1).fold(0, |acc, i| acc | 1 << i);
            let (mut constant, mut slope) = (0.0, 0.0);
            for sup in 0..8usize {
                if sup & mask != mask {
                    continue;
                }
                let sign = if (sup.count_ones() - (mask as u32).count_ones()).is_multiple_of(2) { 1.0 } else { -1.0 };
                match moment(sup) {
                    Some(v) => constant += sign * v,
                    None => slope += sign,
                }
            }
            AffineWeight { strategy: s, constant, slope }
        })
        .collect();
    verdict(weights)
}

fn verdict(weights: Vec<AffineWeight>) -> LhvVerdict {
    let mut lower = (f64::NEG_INFINITY, None);
    let mut upper = (f64::INFINITY, None);
    for w in &weights {
        // constant + slope * p >= 0
        if w.slope > 0.0 {
            let bound = -w.constant / w.slope;
            if bound > lower.0 {
                lower = (bound, Some(*w));
            }
        } else if w.slope < 0.0 {
            let bound = w.constant / -w.slope;
            if bound < upper.0 {
                upper = (bound, Some(*w));
            }
        }
    }
    let feasible = lower.0 <= upper.0 + LHV_TOL && weights.iter().all(|w| w.slope != 0.0 || w.constant >= -LHV_TOL);
    let certificate = match (feasible, lower.1, upper.1) {
        (true, _, _) => format!(
            "feasible: every weight is nonnegative for p = w111 in [{}, {}]",
            fmt_num(lower.0),
            fmt_num(upper.0)
        ),
        (false, Some(lo), Some(hi)) => {
            let hi_text = if hi.constant < 0.0 {
                format!("{hi} < 0 for all p >= 0")
            } else {
                format!("{hi} needs p <= {}", fmt_num(upper.0))
            };
            format!("infeasible: {hi_text}, while {lo} needs p >= {}", fmt_num(lower.0))
        }
        (false, _, _) => "infeasible: a weight is negative independent of p".to_string(),
    };
    LhvVerdict {
        feasible,
        lower: lower.0,
        upper: upper.0,
        weights,
        certificate,
    }
}

fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::InvalidInput(format!("`{other}` is not a bit"))),
        })
        .collect()
}

fn show_bits(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XorDemo {
    pub text: String,
    pub key: String,
    /// `text XOR key`, the cyphertext.
    pub cyphertext: String,
    /// `cyphertext XOR key`.
    pub recovered: String,
}

impl fmt::Display for XorDemo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "text x        = {}", self.text)?;
        writeln!(f, "key r         = {}", self.key)?;
        writeln!(f, "cyphertext y  = x xor r = {}", self.cyphertext)?;
        writeln!(f, "recovered     = y xor r = {}", self.recovered)?;
        writeln!(f, "y was built from x and r; r was chosen independently of x.")?;
        write!(f, "so y is the cyphertext and r the key: the information about x stays with y.")
    }
}

pub fn xor_demo(text: &str, key: &str) -> Result<XorDemo> {
    let x = parse_bits(text)?;
    let r = parse_bits(key)?;
    if x.len() != r.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: r.len() });
    }
    let y: Vec<bool> = x.iter().zip(&r).map(|(a, b)| a ^ b).collect();
    let recovered: Vec<bool> = y.iter().zip(&r).map(|(a, b)| a ^ b).collect();
    if recovered != x {
        return Err(Error::Consistency("xor did not invert".into()));
    }
    Ok(XorDemo {
        text: show_bits(&x),
        key: show_bits(&r),
        cyphertext: show_bits(&y),
        recovered: show_bits(&recovered),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct AmbiguityResult {
    pub theta: f64,
    pub states_match: bool,
    /// `|<psi_A|psi_B>|`.
    pub overlap: f64,
    /// Largest coefficient of the difference between the two variants'
    /// descriptors of the first qubit.
    pub descriptor_gap: f64,
    /// Same for the second qubit.
    pub partner_gap: f64,
}

/// Two networks that entangle a pair and then rotate either the first
/// qubit by `theta` or the second by `-theta`.
pub fn ambiguity_circuits() -> (Circuit, Circuit) {
    let a = parse_circuit("qubits 2\nparams theta\nstep: bellinv 1 2\nstep: rx(theta) 1\n").unwrap();
    let b = parse_circuit("qubits 2\nparams theta\nstep: bellinv 1 2\nstep: rx(-theta) 2\n").unwrap();
    (a, b)
}

/// The two variants reach the same state vector, yet the rotation sits in
/// different qubits' descriptors.
pub fn ambiguity_demo(theta: f64) -> Result<AmbiguityResult> {
    let (ca, cb) = ambiguity_circuits();
    let env = ParamEnv::new().with("theta", theta);
    let (psi_a, psi_b) = (evolve_state(&ca, &env)?, evolve_state(&cb, &env)?);
    let overlap = psi_a.inner(&psi_b)?.norm();
    let (sa, sb) = (run_until(&ca, &env, 2)?, run_until(&cb, &env, 2)?);
    Ok(AmbiguityResult {
        theta,
        states_match: states_equal_up_to_phase(&psi_a, &psi_b, 1e-9),
        overlap,
        descriptor_gap: sa.descriptor(1)?.max_difference(sb.descriptor(1)?),
        partner_gap: sa.descriptor(2)?.max_difference(sb.descriptor(2)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn bundled_circuits_have_the_expected_shape() {
        let e = epr_circuit();
        assert_eq!((e.n_qubits(), e.depth()), (4, 4));
        let t = teleport_circuit();
        assert_eq!((t.n_qubits(), t.depth()), (5, 5));
    }

    #[test]
    fn epr_records_disagree_with_probability_sin_squared() {
        for (theta, phi) in [(0.4, 0.4), (PI, 0.0), (PI / 2.0, 0.0), (1.3, 5.1)] {
            let r = run_epr(theta, phi).unwrap();
            let want = (0.5 * (theta - phi)).sin().powi(2);
            assert!(close(r.prob_different, want, 1e-12), "{theta} {phi}: {}", r.prob_different);
            assert_eq!(r.snapshots.len(), 5);
        }
    }

    #[test]
    fn epr_variants_keep_the_statistics() {
        for (theta, phi) in [(0.3, 2.2), (4.0, 1.0)] {
            let base = run_epr(theta, phi).unwrap().prob_different;
            for v in [EprVariant::Ancilla, EprVariant::Relay] {
                let p = run_epr_variant(v, theta, phi, Backend::Pauli).unwrap();
                assert!(close(p, base, 1e-12), "{v:?}");
            }
        }
    }

    #[test]
    fn teleportation_delivers_the_rotation() {
        for theta in [0.0, 0.3, 2.5, 4.4] {
            let r = run_teleportation(theta).unwrap();
            let want = [0.0, -theta.sin(), -theta.cos()];
            for (got, w) in r.bloch_q5.iter().zip(want) {
                assert!(close(*got, w, 1e-12));
            }
            assert!(close(r.purity_q5, 1.0, 1e-12));
            assert!(close(r.verify_prob, 1.0, 1e-12));
        }
    }

    #[test]
    fn entangled_pair_is_correlated() {
        let (joint, separate) = entanglement_key(0.8).unwrap();
        assert!(close(joint, 1.0, 1e-12));
        assert!(close(separate, 0.0, 1e-12));
    }

    #[test]
    fn lhv_closed_form_examples() {
        let v = lhv_feasibility(0.5, 0.125);
        assert!(!v.feasible);
        assert!(close(v.upper, -0.125, 1e-15));
        assert_eq!(v.lower, 0.0);
        assert!(v.certificate.contains("w000 = -0.125 - p < 0 for all p >= 0"), "{}", v.certificate);
        assert!(v.certificate.contains("w111 = p"), "{}", v.certificate);

        let v = lhv_feasibility(0.5, 0.25);
        assert!(v.feasible);
        assert!(v.lower <= 0.125 && 0.125 <= v.upper);
        let v = lhv_feasibility(0.5, 0.5);
        assert!(v.feasible);
        assert!(close(v.lower, 0.5, 1e-15) && close(v.upper, 0.5, 1e-15));
    }

    #[test]
    fn lhv_general_matches_closed_form() {
        for m in [0.0, 0.2, 0.5, 0.9] {
            for c in [0.0, 0.1, 0.125, 0.3, 0.5] {
                let a = lhv_feasibility(m, c);
                let b = lhv_feasibility_general([m; 3], [c; 3]);
                assert_eq!(a.feasible, b.feasible, "{m} {c}");
                for (x, y) in a.weights.iter().zip(&b.weights) {
                    assert_eq!(x.strategy, y.strategy);
                    assert!(close(x.constant, y.constant, 1e-15) && x.slope == y.slope);
                }
            }
        }
    }

    #[test]
    fn lhv_general_checks_a_known_distribution() {
        // a0 fair coin, a1 = a0, a2 = 1 - a0.
        let v = lhv_feasibility_general([0.5, 0.5, 0.5], [0.5, 0.0, 0.0]);
        assert!(v.feasible);
        assert!(close(v.lower, 0.0, 1e-15) && close(v.upper, 0.0, 1e-15));
    }

    #[test]
    fn bell_check_uses_the_observed_relation() {
        let r = run_bell_check(&[0.0, 1.1, 2.9]).unwrap();
        assert_eq!(r.relation, OutcomeRelation::Equal);
        for (_, m) in r.marginals_a.iter().chain(&r.marginals_b) {
            assert!(close(*m, 0.5, 1e-12));
        }
        for v in r.pair_values {
            assert!(close(v, 0.125, 1e-12));
        }
        assert!(!r.lhv_feasible());
        assert!(run_bell_check(&[]).is_err());
    }

    #[test]
    fn xor_examples() {
        let d = xor_demo("1011", "0110").unwrap();
        assert_eq!((d.cyphertext.as_str(), d.recovered.as_str()), ("1101", "1011"));
        assert_eq!(xor_demo("1011", "0000").unwrap().cyphertext, "1011");
        assert_eq!(xor_demo("1011", "1011").unwrap().cyphertext, "0000");
        assert_eq!(xor_demo("10", "101").unwrap_err(), Error::LengthMismatch { left: 2, right: 3 });
        assert!(xor_demo("12", "10").is_err());
    }

    #[test]
    fn ambiguity_pair() {
        let r = ambiguity_demo(1.0).unwrap();
        assert!(r.states_match);
        assert!(r.overlap >= 1.0 - 1e-12);
        assert!(r.descriptor_gap > 0.1 && r.partner_gap > 0.1);
        let z = ambiguity_demo(0.0).unwrap();
        assert_eq!(z.descriptor_gap, 0.0);
        assert_eq!(z.partner_gap, 0.0);
    }
}
