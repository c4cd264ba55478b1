//! Per-qubit Heisenberg descriptors and expectation queries.
//!
//! The Heisenberg state is always the standard state `|0,...,0>`, the
//! simultaneous eigenstate with every `z_a = 0`. Because `z_a = (1 + q_az)/2`,
//! each `q_az(0) = sigma_z` takes the value `-1` there, so a string of `I`
//! and `Z` letters has expectation `(-1)^(number of Z)`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{PauliLetter, PauliSum, MAX_QUBITS};

/// Tolerance for discarding imaginary parts and clamping probabilities.
pub const CONSISTENCY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    X,
    Y,
    Z,
}

impl Component {
    pub const ALL: [Component; 3] = [Component::X, Component::Y, Component::Z];

    pub fn letter(self) -> PauliLetter {
        match self {
            Component::X => PauliLetter::X,
            Component::Y => PauliLetter::Y,
            Component::Z => PauliLetter::Z,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Component::X => "x",
            Component::Y => "y",
            Component::Z => "z",
        }
    }
}

/// The triple `(q_x, q_y, q_z)` describing one qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct Descriptor {
    pub x: PauliSum,
    pub y: PauliSum,
    pub z: PauliSum,
}

impl Descriptor {
    pub fn new(x: PauliSum, y: PauliSum, z: PauliSum) -> Self {
        Self { x, y, z }
    }

    /// `sigma` on `qubit`, unit elsewhere.
    pub fn initial(n: usize, qubit: usize) -> Result<Self> {
        Ok(Self {
            x: PauliSum::single(n, qubit, PauliLetter::X)?,
            y: PauliSum::single(n, qubit, PauliLetter::Y)?,
            z: PauliSum::single(n, qubit, PauliLetter::Z)?,
        })
    }

    pub fn component(&self, c: Component) -> &PauliSum {
        match c {
            Component::X => &self.x,
            Component::Y => &self.y,
            Component::Z => &self.z,
        }
    }

    pub fn components(&self) -> [&PauliSum; 3] {
        [&self.x, &self.y, &self.z]
    }

    /// Largest coefficient difference over the three components.
    pub fn max_difference(&self, other: &Descriptor) -> f64 {
        Component::ALL
            .iter()
            .map(|&c| (self.component(c) - other.component(c)).max_abs_coeff())
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Descriptors of every qubit at one time step.
///
/// Descriptors are shared behind `Arc`, so a gate that does not touch a
/// qubit hands the very same value on to the next state.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkState {
    n: usize,
    time: usize,
    descriptors: Vec<Arc<Descriptor>>,
}

impl NetworkState {
    /// The network at `t = 0`: `q_a(0) = 1^(a-1) ⊗ sigma ⊗ 1^(n-a)`.
    pub fn init(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::QubitCountOutOfRange(n));
        }
        let descriptors = (1..=n)
            .map(|a| Descriptor::initial(n, a).map(Arc::new))
            .collect::<Result<_>>()?;
        Ok(Self { n, time: 0, descriptors })
    }

    /// Assemble a state from explicit descriptors, e.g. from another backend.
    pub fn from_descriptors(time: usize, descriptors: Vec<Descriptor>) -> Result<Self> {
        let n = descriptors.len();
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::QubitCountOutOfRange(n));
        }
        for d in &descriptors {
            for p in d.components() {
                if p.n_qubits() != n {
                    return Err(Error::LengthMismatch {
                        left: n,
                        right: p.n_qubits(),
                    });
                }
            }
        }
        Ok(Self {
            n,
            time,
            descriptors: descriptors.into_iter().map(Arc::new).collect(),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn time(&self) -> usize {
        self.time
    }

    pub fn check_qubit(&self, a: usize) -> Result<()> {
        if a == 0 || a > self.n {
            return Err(Error::QubitOutOfRange { index: a, n: self.n });
        }
        Ok(())
    }

    pub fn descriptor(&self, a: usize) -> Result<&Descriptor> {
        self.check_qubit(a)?;
        Ok(&self.descriptors[a - 1])
    }

    #[cfg(test)]
    pub(crate) fn descriptor_arc(&self, a: usize) -> &Arc<Descriptor> {
        &self.descriptors[a - 1]
    }

    pub fn descriptors(&self) -> impl Iterator<Item = &Descriptor> {
        self.descriptors.iter().map(|d| d.as_ref())
    }

    pub(crate) fn replace(&mut self, a: usize, d: Descriptor) {
        self.descriptors[a - 1] = Arc::new(d);
    }

    pub(crate) fn advance(&mut self) {
        self.time += 1;
    }

    /// `<p>` in the standard state; `p` must act on this network.
    pub fn expectation(&self, p: &PauliSum) -> Result<Complex64> {
        if p.n_qubits() != self.n {
            return Err(Error::LengthMismatch {
                left: self.n,
                right: p.n_qubits(),
            });
        }
        Ok(vacuum_expectation(p))
    }

    /// `z_a(t) = (1 + q_az(t)) / 2`, the projector for qubit `a` holding 1.
    pub fn z_projector(&self, a: usize) -> Result<PauliSum> {
        let d = self.descriptor(a)?;
        let one = PauliSum::identity(self.n)?;
        Ok(&(&one + &d.z) * 0.5)
    }

    /// `(<q_ax>, <q_ay>, <q_az>)`.
    pub fn bloch_vector(&self, a: usize) -> Result<[f64; 3]> {
        let d = self.descriptor(a)?;
        let mut out = [0.0; 3];
        for (slot, p) in out.iter_mut().zip(d.components()) {
            *slot = real_part(vacuum_expectation(p), "Bloch component")?;
        }
        Ok(out)
    }

    /// Squared Bloch length; 1 certifies that qubit `a` is pure.
    pub fn purity_probe(&self, a: usize) -> Result<f64> {
        let b = self.bloch_vector(a)?;
        Ok(b.iter().map(|v| v * v).sum())
    }

    /// Probability that qubit `a` holds the value 1.
    pub fn outcome_probability(&self, a: usize) -> Result<f64> {
        let p = real_part(vacuum_expectation(&self.z_projector(a)?), "outcome probability")?;
        clamp_probability(p)
    }

    /// `<z_a z_b>`, the probability that both qubits hold 1.
    pub fn pair_correlation(&self, a: usize, b: usize) -> Result<f64> {
        if a == b {
            return Err(Error::SameQubit(a));
        }
        let pa = self.z_projector(a)?;
        let pb = self.z_projector(b)?;
        let p = real_part(vacuum_expectation(&(&pa * &pb)), "pair correlation")?;
        clamp_probability(p)
    }

    /// Evaluate the descriptor algebra relations and report the largest
    /// violating coefficient per relation class.
    pub fn check_descriptor_algebra(&self) -> AlgebraReport {
        let i = Complex64::new(0.0, 1.0);
        let one = PauliSum::identity(self.n).expect("n already validated");
        let mut report = AlgebraReport::default();
        for d in self.descriptors() {
            for (u, v, w) in [(&d.x, &d.y, &d.z), (&d.y, &d.z, &d.x), (&d.z, &d.x, &d.y)] {
                let dev = (&(u * v) - &w.scale(i)).max_abs_coeff();
                report.products = report.products.max(dev);
            }
            for u in d.components() {
                let dev = (&(u * u) - &one).max_abs_coeff();
                report.squares = report.squares.max(dev);
            }
        }
        for a in 0..self.n {
            for b in a + 1..self.n {
                for u in self.descriptors[a].components() {
                    for v in self.descriptors[b].components() {
                        let dev = u.commutator(v).expect("equal lengths").max_abs_coeff();
                        report.commutators = report.commutators.max(dev);
                    }
                }
            }
        }
        report
    }
}

impl fmt::Display for NetworkState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "t = {}", self.time)?;
        for (a, d) in self.descriptors().enumerate() {
            writeln!(f, "  q{}: {}", a + 1, d)?;
        }
        Ok(())
    }
}

/// Largest coefficient deviation in each class of descriptor relations:
/// `q_x q_y = i q_z` (and cyclic), `q_u^2 = 1`, and commutation of
/// components belonging to different qubits.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct AlgebraReport {
    pub products: f64,
    pub squares: f64,
    pub commutators: f64,
}

impl AlgebraReport {
    pub fn max(&self) -> f64 {
        self.products.max(self.squares).max(self.commutators)
    }

    pub fn within(&self, tol: f64) -> bool {
        self.max() <= tol
    }
}

/// `<0,...,0| p |0,...,0>`: only `I`/`Z` strings contribute, each with sign
/// `(-1)^(number of Z)`.
pub fn vacuum_expectation(p: &PauliSum) -> Complex64 {
    p.terms()
        .iter()
        .filter(|(s, _)| s.is_diagonal())
        .map(|(s, c)| if s.z_mask().count_ones() % 2 == 0 { *c } else { -*c })
        .sum()
}

fn real_part(z: Complex64, what: &str) -> Result<f64> {
    if z.im.abs() > CONSISTENCY_TOL {
        return Err(Error::Consistency(format!("{what} has imaginary part {}", z.im)));
    }
    Ok(z.re)
}

fn clamp_probability(p: f64) -> Result<f64> {
    if !(-CONSISTENCY_TOL..=1.0 + CONSISTENCY_TOL).contains(&p) {
        return Err(Error::Consistency(format!("probability {p} outside [0, 1]")));
    }
    Ok(p.clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliString;

    fn sum(n: usize, text: &str) -> PauliSum {
        PauliSum::parse_real(n, text).unwrap()
    }

    #[test]
    fn init_places_sigma_on_each_qubit() {
        let s = NetworkState::init(1).unwrap();
        assert_eq!(s.descriptor(1).unwrap(), &Descriptor::new(sum(1, "X"), sum(1, "Y"), sum(1, "Z")));

        let s = NetworkState::init(2).unwrap();
        assert_eq!(s.descriptor(2).unwrap(), &Descriptor::new(sum(2, "IX"), sum(2, "IY"), sum(2, "IZ")));

        let s = NetworkState::init(4).unwrap();
        let d = s.descriptor(1).unwrap();
        assert_eq!(d.x, sum(4, "XIII"));
        assert_eq!(d.y, sum(4, "YIII"));
        assert_eq!(d.z, sum(4, "ZIII"));
        assert_eq!(s.time(), 0);
    }

    #[test]
    fn init_rejects_bad_sizes() {
        assert!(NetworkState::init(0).is_err());
        assert!(NetworkState::init(MAX_QUBITS + 1).is_err());
    }

    #[test]
    fn standard_state_has_sigma_z_minus_one() {
        assert_eq!(vacuum_expectation(&sum(1, "Z")), Complex64::new(-1.0, 0.0));
        assert_eq!(vacuum_expectation(&sum(1, "X")), Complex64::new(0.0, 0.0));
        assert_eq!(vacuum_expectation(&sum(3, "ZZI + 2*ZZZ")), Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn expectation_checks_length() {
        let s = NetworkState::init(2).unwrap();
        assert!(s.expectation(&sum(3, "ZII")).is_err());
    }

    #[test]
    fn fresh_network_queries() {
        let s = NetworkState::init(3).unwrap();
        assert_eq!(s.z_projector(1).unwrap(), sum(3, "0.5*III + 0.5*ZII"));
        for a in 1..=3 {
            assert_eq!(s.bloch_vector(a).unwrap(), [0.0, 0.0, -1.0]);
            assert_eq!(s.purity_probe(a).unwrap(), 1.0);
            assert_eq!(s.outcome_probability(a).unwrap(), 0.0);
        }
        assert_eq!(s.pair_correlation(1, 3).unwrap(), 0.0);
        assert!(matches!(s.pair_correlation(2, 2), Err(Error::SameQubit(2))));
        assert!(s.bloch_vector(4).is_err());
    }

    #[test]
    fn fresh_network_satisfies_algebra() {
        for n in 1..=5 {
            let r = NetworkState::init(n).unwrap().check_descriptor_algebra();
            assert_eq!(r, AlgebraReport::default());
        }
    }

    #[test]
    fn corrupted_descriptor_is_reported() {
        let mut s = NetworkState::init(2).unwrap();
        let d = s.descriptor(1).unwrap().clone();
        s.replace(1, Descriptor::new(d.y.clone(), d.y.clone(), d.z.clone()));
        let r = s.check_descriptor_algebra();
        assert!(r.products > 0.5, "{r:?}");
    }

    #[test]
    fn imaginary_expectation_is_an_error() {
        let y = PauliString::identity(1).unwrap();
        let bad = PauliSum::from_string(y, Complex64::new(0.0, 1.0));
        let s = NetworkState::from_descriptors(0, vec![Descriptor::new(bad.clone(), bad.clone(), bad)]).unwrap();
        assert!(matches!(s.bloch_vector(1), Err(Error::Consistency(_))));
    }
}
