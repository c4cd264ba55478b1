//! Gate substitution rules, circuit execution, and the dense unitary path.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate, ParamEnv, Step};
use crate::dense::{DenseOperator, Matrix2, DENSE_CAP, SIGMA_X, SIGMA_Y, SIGMA_Z, UNIT};
use crate::error::{Error, Result};
use crate::network::{Component, Descriptor, NetworkState};
use crate::pauli::PauliSum;

type Matrix3 = [[f64; 3]; 3];

const H_AXIS: [f64; 3] = [FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2];

/// Rotation matrix acting on descriptor components for a rotation by
/// `theta` about `axis`: `M = n n^T (1 - cos) + cos 1 + sin E`, with
/// `E_ij = sum_k eps_ijk n_k`.
fn axis_matrix(axis: [f64; 3], theta: f64) -> Matrix3 {
    let (s, c) = theta.sin_cos();
    let [x, y, z] = axis;
    let e = [[0.0, z, -y], [-z, 0.0, x], [y, -x, 0.0]];
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let delta = if i == j { c } else { 0.0 };
            m[i][j] = axis[i] * axis[j] * (1.0 - c) + delta + s * e[i][j];
        }
    }
    m
}

fn rx_matrix(theta: f64) -> Matrix3 {
    let (s, c) = theta.sin_cos();
    [[1.0, 0.0, 0.0], [0.0, c, s], [0.0, -s, c]]
}

fn ry_matrix(theta: f64) -> Matrix3 {
    let (s, c) = theta.sin_cos();
    [[c, 0.0, -s], [0.0, 1.0, 0.0], [s, 0.0, c]]
}

fn rz_matrix(theta: f64) -> Matrix3 {
    let (s, c) = theta.sin_cos();
    [[c, s, 0.0], [-s, c, 0.0], [0.0, 0.0, 1.0]]
}

fn rotate(d: &Descriptor, m: &Matrix3) -> Result<Descriptor> {
    let comps = d.components();
    let n = d.x.n_qubits();
    let mut out = Vec::with_capacity(3);
    for row in m {
        let mut acc = PauliSum::zero(n)?;
        for (&coef, comp) in row.iter().zip(comps) {
            if coef != 0.0 {
                acc = acc.combine(Complex64::new(1.0, 0.0), comp, Complex64::new(coef, 0.0))?;
            }
        }
        out.push(acc);
    }
    let z = out.pop().unwrap();
    let y = out.pop().unwrap();
    let x = out.pop().unwrap();
    Ok(Descriptor::new(x, y, z))
}

/// New descriptors for the qubits touched by `gate`, computed from the
/// descriptors held in `s`.
fn gate_updates(s: &NetworkState, gate: &Gate, env: &ParamEnv) -> Result<Vec<(usize, Descriptor)>> {
    gate.validate(s.n_qubits())?;
    let d = |q: usize| s.descriptor(q);
    let updates = match gate {
        Gate::Id(q) => vec![(*q, d(*q)?.clone())],
        Gate::Not(q) => {
            let a = d(*q)?;
            vec![(*q, Descriptor::new(a.x.clone(), -&a.y, -&a.z))]
        }
        Gate::SqrtNot(q) => {
            let a = d(*q)?;
            vec![(*q, Descriptor::new(a.x.clone(), a.z.clone(), -&a.y))]
        }
        Gate::H(q) => {
            let a = d(*q)?;
            vec![(*q, Descriptor::new(a.z.clone(), -&a.y, a.x.clone()))]
        }
        Gate::Rx(q, angle) => vec![(*q, rotate(d(*q)?, &rx_matrix(angle.eval(env)?))?)],
        Gate::Ry(q, angle) => vec![(*q, rotate(d(*q)?, &ry_matrix(angle.eval(env)?))?)],
        Gate::Rz(q, angle) => vec![(*q, rotate(d(*q)?, &rz_matrix(angle.eval(env)?))?)],
        Gate::Rn { qubit, axis, angle } => {
            vec![(*qubit, rotate(d(*qubit)?, &axis_matrix(*axis, angle.eval(env)?))?)]
        }
        Gate::Cnot { target, control } => {
            let (k, l) = (d(*target)?, d(*control)?);
            vec![
                (*target, Descriptor::new(k.x.clone(), -&(&k.y * &l.z), -&(&k.z * &l.z))),
                (*control, Descriptor::new(&k.x * &l.x, &k.x * &l.y, l.z.clone())),
            ]
        }
        Gate::Bell(kq, lq) => {
            let (k, l) = (d(*kq)?, d(*lq)?);
            vec![
                (*kq, Descriptor::new(k.x.clone(), -&(&k.y * &l.z), -&(&k.z * &l.z))),
                (*lq, Descriptor::new(l.z.clone(), -&(&k.x * &l.y), &k.x * &l.x)),
            ]
        }
        Gate::BellInv(kq, lq) => {
            let (k, l) = (d(*kq)?, d(*lq)?);
            vec![
                (*kq, Descriptor::new(k.x.clone(), -&(&k.y * &l.x), -&(&k.z * &l.x))),
                (*lq, Descriptor::new(&k.x * &l.z, -&(&k.x * &l.y), l.x.clone())),
            ]
        }
        Gate::T3(kq, lq, mq) => {
            let (k, l, m) = (d(*kq)?, d(*lq)?, d(*mq)?);
            let kz_lz = &k.z * &l.z;
            vec![
                (*kq, Descriptor::new(-&(&k.x * &m.x), -&(&k.y * &m.x), k.z.clone())),
                (
                    *lq,
                    Descriptor::new(&(&k.z * &l.x) * &m.z, &(&k.z * &l.y) * &m.z, l.z.clone()),
                ),
                (*mq, Descriptor::new(-&(&l.z * &m.x), &kz_lz * &m.y, -&(&k.z * &m.z))),
            ]
        }
    };
    Ok(updates)
}

/// Apply one gate to `s` without advancing time. Descriptors of qubits the
/// gate does not touch are shared with `s`.
pub fn apply_gate(s: &NetworkState, gate: &Gate, env: &ParamEnv) -> Result<NetworkState> {
    let mut out = s.clone();
    if matches!(gate, Gate::Id(_)) {
        gate.validate(s.n_qubits())?;
        return Ok(out);
    }
    for (q, d) in gate_updates(s, gate, env)? {
        out.replace(q, d);
    }
    Ok(out)
}

/// Apply every gate of `step` against the same time-`t` descriptors, then
/// advance to `t + 1`.
pub fn apply_step(s: &NetworkState, step: &Step, env: &ParamEnv) -> Result<NetworkState> {
    let mut seen = vec![false; s.n_qubits() + 1];
    let mut updates = Vec::new();
    for gate in step.gates() {
        gate.validate(s.n_qubits())?;
        for q in gate.qubits() {
            if std::mem::replace(&mut seen[q], true) {
                return Err(Error::OverlappingGates(q));
            }
        }
        if !matches!(gate, Gate::Id(_)) {
            updates.extend(gate_updates(s, gate, env)?);
        }
    }
    let mut out = s.clone();
    for (q, d) in updates {
        out.replace(q, d);
    }
    out.advance();
    Ok(out)
}

/// Final state of the circuit from the standard initial network.
pub fn run_circuit(c: &Circuit, env: &ParamEnv) -> Result<NetworkState> {
    run_until(c, env, c.depth())
}

/// State after the first `t` steps.
pub fn run_until(c: &Circuit, env: &ParamEnv, t: usize) -> Result<NetworkState> {
    if t > c.depth() {
        return Err(Error::TimeOutOfRange { t, depth: c.depth() });
    }
    c.check_env(env)?;
    let mut s = NetworkState::init(c.n_qubits())?;
    for step in &c.steps()[..t] {
        s = apply_step(&s, step, env)?;
    }
    Ok(s)
}

/// States at `t = 0, 1, ..., depth`.
pub fn run_trajectory(c: &Circuit, env: &ParamEnv) -> Result<Vec<NetworkState>> {
    c.check_env(env)?;
    let mut states = vec![NetworkState::init(c.n_qubits())?];
    for step in c.steps() {
        let next = apply_step(states.last().unwrap(), step, env)?;
        states.push(next);
    }
    Ok(states)
}

fn check_dense(n: usize) -> Result<()> {
    if n > DENSE_CAP {
        return Err(Error::DenseCapExceeded { n, cap: DENSE_CAP });
    }
    Ok(())
}

/// `cos(theta/2) 1 + i sin(theta/2) (n . sigma)`.
fn rotation_2x2(axis: [f64; 3], theta: f64) -> Matrix2 {
    let (s, c) = (theta / 2.0).sin_cos();
    let i_s = Complex64::new(0.0, s);
    let mut m = [[Complex64::new(c, 0.0), Complex64::new(0.0, 0.0)], [Complex64::new(0.0, 0.0), Complex64::new(c, 0.0)]];
    for (w, sigma) in axis.iter().zip([SIGMA_X, SIGMA_Y, SIGMA_Z]) {
        for r in 0..2 {
            for col in 0..2 {
                m[r][col] += i_s * *w * sigma[r][col];
            }
        }
    }
    m
}

/// `(1 +- sigma_z) / 2` on qubit `q`; `value` selects the `+` sign, i.e. the
/// qubit holding 1.
fn projector(q: usize, n: usize, value: bool) -> Result<DenseOperator> {
    let sign = if value { 1.0 } else { -1.0 };
    let mut m = UNIT;
    for (r, row) in m.iter_mut().enumerate() {
        row[r] = (UNIT[r][r] + SIGMA_Z[r][r] * sign) * 0.5;
    }
    DenseOperator::single_qubit(&m, q, n)
}

fn controlled(control: usize, on: &DenseOperator, n: usize) -> Result<DenseOperator> {
    projector(control, n, false)?.add(&projector(control, n, true)?.matmul(on)?)
}

fn cnot_dense(target: usize, control: usize, n: usize) -> Result<DenseOperator> {
    controlled(control, &DenseOperator::single_qubit(&SIGMA_X, target, n)?, n)
}

/// The gate's unitary written on the initial representation, so that
/// `q'(0) = U^dagger q(0) U`.
pub fn gate_unitary_dense(gate: &Gate, n: usize, env: &ParamEnv) -> Result<DenseOperator> {
    check_dense(n)?;
    gate.validate(n)?;
    let single = |m: &Matrix2, q: usize| DenseOperator::single_qubit(m, q, n);
    match gate {
        Gate::Id(_) => DenseOperator::identity(n),
        Gate::Not(q) => single(&SIGMA_X, *q),
        Gate::SqrtNot(q) => single(&rotation_2x2([1.0, 0.0, 0.0], FRAC_PI_2), *q),
        Gate::H(q) => single(&rotation_2x2(H_AXIS, PI), *q),
        Gate::Rx(q, a) => single(&rotation_2x2([1.0, 0.0, 0.0], a.eval(env)?), *q),
        Gate::Ry(q, a) => single(&rotation_2x2([0.0, 1.0, 0.0], a.eval(env)?), *q),
        Gate::Rz(q, a) => single(&rotation_2x2([0.0, 0.0, 1.0], a.eval(env)?), *q),
        Gate::Rn { qubit, axis, angle } => single(&rotation_2x2(*axis, angle.eval(env)?), *qubit),
        Gate::Cnot { target, control } => cnot_dense(*target, *control, n),
        Gate::Bell(k, l) => single(&rotation_2x2(H_AXIS, PI), *l)?.matmul(&cnot_dense(*k, *l, n)?),
        Gate::BellInv(k, l) => cnot_dense(*k, *l, n)?.matmul(&single(&rotation_2x2(H_AXIS, PI), *l)?),
        Gate::T3(k, l, m) => {
            let zk = single(&SIGMA_Z, *k)?;
            let zl = single(&SIGMA_Z, *l)?;
            let cz = controlled(*l, &single(&SIGMA_Z, *m)?, n)?;
            let cx = controlled(*k, &single(&SIGMA_X, *m)?, n)?;
            zk.matmul(&zl)?.matmul(&cz)?.matmul(&cx)
        }
    }
}

/// Product of a step's gate unitaries (they commute, acting on disjoint
/// qubits).
pub fn step_unitary_dense(step: &Step, n: usize, env: &ParamEnv) -> Result<DenseOperator> {
    let mut u = DenseOperator::identity(n)?;
    for gate in step.gates() {
        u = gate_unitary_dense(gate, n, env)?.matmul(&u)?;
    }
    Ok(u)
}

/// Accumulated unitary `W_t = U_t ... U_1`, so that `q(t) = W_t^dagger q(0) W_t`.
pub fn accumulated_unitary(c: &Circuit, env: &ParamEnv, t: usize) -> Result<DenseOperator> {
    check_dense(c.n_qubits())?;
    if t > c.depth() {
        return Err(Error::TimeOutOfRange { t, depth: c.depth() });
    }
    c.check_env(env)?;
    let mut w = DenseOperator::identity(c.n_qubits())?;
    for step in &c.steps()[..t] {
        w = step_unitary_dense(step, c.n_qubits(), env)?.matmul(&w)?;
    }
    Ok(w)
}

/// Dense matrices of every descriptor component of `U^dagger q(0) U`,
/// indexed `[qubit - 1][component]`.
pub fn dense_descriptors(w: &DenseOperator) -> Result<Vec<[DenseOperator; 3]>> {
    let n = w.n_qubits();
    (1..=n)
        .map(|a| {
            let conj = |m: &Matrix2| DenseOperator::single_qubit(m, a, n)?.conjugate_by(w);
            Ok([conj(&SIGMA_X)?, conj(&SIGMA_Y)?, conj(&SIGMA_Z)?])
        })
        .collect()
}

/// Which representation executes a circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    /// Sparse Pauli-sum substitution rules.
    #[default]
    Pauli,
    /// Dense unitary conjugation, converted back to Pauli sums at the end.
    Dense,
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pauli" => Ok(Backend::Pauli),
            "dense" => Ok(Backend::Dense),
            other => Err(Error::InvalidInput(format!("unknown backend `{other}` (expected pauli or dense)"))),
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Pauli => "pauli",
            Backend::Dense => "dense",
        })
    }
}

/// Run the first `t` steps on the chosen backend.
pub fn run_with_backend(c: &Circuit, env: &ParamEnv, t: usize, backend: Backend) -> Result<NetworkState> {
    match backend {
        Backend::Pauli => run_until(c, env, t),
        Backend::Dense => {
            let w = accumulated_unitary(c, env, t)?;
            let descriptors = dense_descriptors(&w)?
                .into_iter()
                .map(|[x, y, z]| {
                    Ok(Descriptor::new(
                        PauliSum::from_dense(&x)?,
                        PauliSum::from_dense(&y)?,
                        PauliSum::from_dense(&z)?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            NetworkState::from_descriptors(t, descriptors)
        }
    }
}

/// Largest entrywise gap between the substitution-rule descriptors and the
/// dense conjugation, over every qubit and component.
pub fn backend_discrepancy(s: &NetworkState, w: &DenseOperator) -> Result<f64> {
    let dense = dense_descriptors(w)?;
    let mut worst: f64 = 0.0;
    for (d, mats) in s.descriptors().zip(&dense) {
        for (u, m) in Component::ALL.iter().zip(mats) {
            worst = worst.max(d.component(*u).to_dense()?.max_abs_diff(m)?);
        }
    }
    Ok(worst)
}
