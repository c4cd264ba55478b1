//! Pauli letters, strings, and finite complex-weighted sums of strings.
//!
//! A [`PauliString`] on `n` qubits stores one letter per qubit as a pair of
//! bit masks (`x`, `z`), with qubit `a` (1-based) at bit `a - 1`:
//! `I = (0,0)`, `X = (1,0)`, `Y = (1,1)`, `Z = (0,1)`. The letter `Y` is the
//! Hermitian `sigma_y`, not the product `XZ`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;

use crate::dense::DenseOperator;
use crate::error::{Error, Result};

/// Largest qubit count representable by a [`PauliString`].
pub const MAX_QUBITS: usize = 64;

/// Coefficients with magnitude below this are dropped after every operation.
pub const PRUNE_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    pub const ALL: [PauliLetter; 4] = [PauliLetter::I, PauliLetter::X, PauliLetter::Y, PauliLetter::Z];

    fn bits(self) -> (bool, bool) {
        match self {
            PauliLetter::I => (false, false),
            PauliLetter::X => (true, false),
            PauliLetter::Y => (true, true),
            PauliLetter::Z => (false, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => PauliLetter::I,
            (true, false) => PauliLetter::X,
            (true, true) => PauliLetter::Y,
            (false, true) => PauliLetter::Z,
        }
    }

    /// Single-qubit product `self * other = phase * out`.
    pub fn product(self, other: Self) -> (Phase, PauliLetter) {
        use PauliLetter::*;
        match (self, other) {
            (I, p) | (p, I) => (Phase::ONE, p),
            (X, X) | (Y, Y) | (Z, Z) => (Phase::ONE, I),
            (X, Y) => (Phase::I, Z),
            (Y, Z) => (Phase::I, X),
            (Z, X) => (Phase::I, Y),
            (Y, X) => (Phase::MINUS_I, Z),
            (Z, Y) => (Phase::MINUS_I, X),
            (X, Z) => (Phase::MINUS_I, Y),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            PauliLetter::I => 'I',
            PauliLetter::X => 'X',
            PauliLetter::Y => 'Y',
            PauliLetter::Z => 'Z',
        }
    }

    // I < X < Y < Z
    fn code(x: bool, z: bool) -> u8 {
        match (x, z) {
            (false, false) => 0,
            (true, false) => 1,
            (true, true) => 2,
            (false, true) => 3,
        }
    }
}

/// A power of `i`: `i^k` for `k` in `0..4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_power(k: u32) -> Self {
        Phase((k % 4) as u8)
    }

    pub fn power(self) -> u8 {
        self.0
    }

    pub fn to_complex(self) -> Complex64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }
}

impl Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

/// Tensor product of `n` Pauli letters, qubit 1 leftmost.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: u8,
    x: u64,
    z: u64,
}

fn mask_for(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl PauliString {
    pub fn identity(n: usize) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::QubitCountOutOfRange(n));
        }
        Ok(Self { n: n as u8, x: 0, z: 0 })
    }

    /// `letter` on `qubit` (1-based), identity elsewhere.
    pub fn single(n: usize, qubit: usize, letter: PauliLetter) -> Result<Self> {
        let mut s = Self::identity(n)?;
        s.set(qubit, letter)?;
        Ok(s)
    }

    pub fn from_letters(letters: &[PauliLetter]) -> Result<Self> {
        let mut s = Self::identity(letters.len())?;
        for (i, &l) in letters.iter().enumerate() {
            s.set(i + 1, l)?;
        }
        Ok(s)
    }

    /// Construct from raw masks; bits above `n` must be clear.
    pub fn from_masks(n: usize, x: u64, z: u64) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::QubitCountOutOfRange(n));
        }
        let m = mask_for(n);
        if x & !m != 0 || z & !m != 0 {
            return Err(Error::InvalidInput(format!("mask bits beyond qubit {n}")));
        }
        Ok(Self { n: n as u8, x, z })
    }

    fn set(&mut self, qubit: usize, letter: PauliLetter) -> Result<()> {
        let n = self.len();
        if qubit == 0 || qubit > n {
            return Err(Error::QubitOutOfRange { index: qubit, n });
        }
        let bit = 1u64 << (qubit - 1);
        let (x, z) = letter.bits();
        self.x = if x { self.x | bit } else { self.x & !bit };
        self.z = if z { self.z | bit } else { self.z & !bit };
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n as usize
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn letter(&self, qubit: usize) -> PauliLetter {
        let bit = 1u64 << (qubit - 1);
        PauliLetter::from_bits(self.x & bit != 0, self.z & bit != 0)
    }

    pub fn letters(&self) -> impl Iterator<Item = PauliLetter> + '_ {
        (1..=self.len()).map(|a| self.letter(a))
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// True when every letter is `I` or `Z`.
    pub fn is_diagonal(&self) -> bool {
        self.x == 0
    }

    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    /// Qubits (1-based) carrying a non-identity letter.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&a| (self.x | self.z) >> (a - 1) & 1 == 1).collect()
    }

    pub fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        ((self.x & other.z) ^ (self.z & other.x)).count_ones().is_multiple_of(2)
    }

    /// `self * other = phase * out`.
    pub fn mul(&self, other: &Self) -> Result<(Phase, PauliString)> {
        if self.n != other.n {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> (Phase, PauliString) {
        let (x1, z1, x2, z2) = (self.x, self.z, other.x, other.z);
        let y1 = x1 & z1;
        let xo1 = x1 & !z1;
        let zo1 = z1 & !x1;
        let y2 = x2 & z2;
        let xo2 = x2 & !z2;
        let zo2 = z2 & !x2;
        // cyclic products (XY, YZ, ZX) pick up +i, anticyclic ones -i
        let plus = (xo1 & y2).count_ones() + (y1 & zo2).count_ones() + (zo1 & xo2).count_ones();
        let minus = (y1 & xo2).count_ones() + (zo1 & y2).count_ones() + (xo1 & zo2).count_ones();
        let phase = Phase::from_power(plus + 3 * minus);
        (
            phase,
            PauliString {
                n: self.n,
                x: x1 ^ x2,
                z: z1 ^ z2,
            },
        )
    }
}

impl Ord for PauliString {
    /// Letter-wise from qubit 1, `I < X < Y < Z`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            let diff = (self.x ^ other.x) | (self.z ^ other.z);
            if diff == 0 {
                return Ordering::Equal;
            }
            let b = diff.trailing_zeros();
            let code = |s: &PauliString| PauliLetter::code(s.x >> b & 1 == 1, s.z >> b & 1 == 1);
            code(self).cmp(&code(other))
        })
    }
}

impl PartialOrd for PauliString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.letters() {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| match c {
                'I' => Ok(PauliLetter::I),
                'X' => Ok(PauliLetter::X),
                'Y' => Ok(PauliLetter::Y),
                'Z' => Ok(PauliLetter::Z),
                other => Err(Error::InvalidInput(format!("not a Pauli letter: {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_letters(&letters)
    }
}

/// A finite complex-weighted sum of equal-length Pauli strings.
///
/// Terms are kept sorted by string, with no repeated string and no
/// coefficient of magnitude below [`PRUNE_THRESHOLD`].
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    n: usize,
    terms: Vec<(PauliString, Complex64)>,
}

/// Collects like terms during a product.
enum Accumulator {
    Dense { n: usize, slots: Vec<Complex64> },
    Sparse { n: usize, map: HashMap<(u64, u64), Complex64> },
}

impl Accumulator {
    fn new(n: usize, expected: usize) -> Self {
        if n <= 8 && expected >= (1usize << (2 * n)) / 16 {
            Accumulator::Dense {
                n,
                slots: vec![Complex64::new(0.0, 0.0); 1usize << (2 * n)],
            }
        } else {
            Accumulator::Sparse {
                n,
                map: HashMap::with_capacity(expected.min(1 << 16)),
            }
        }
    }

    #[inline]
    fn add(&mut self, s: &PauliString, c: Complex64) {
        match self {
            Accumulator::Dense { n, slots } => slots[(s.x | (s.z << *n)) as usize] += c,
            Accumulator::Sparse { map, .. } => *map.entry((s.x, s.z)).or_default() += c,
        }
    }

    fn finish(self) -> PauliSum {
        let (n, mut terms): (usize, Vec<(PauliString, Complex64)>) = match self {
            Accumulator::Dense { n, slots } => {
                let m = mask_for(n);
                let terms = slots
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| c.norm() >= PRUNE_THRESHOLD)
                    .map(|(i, c)| {
                        let i = i as u64;
                        (
                            PauliString {
                                n: n as u8,
                                x: i & m,
                                z: i >> n,
                            },
                            c,
                        )
                    })
                    .collect();
                (n, terms)
            }
            Accumulator::Sparse { n, map } => {
                let terms = map
                    .into_iter()
                    .filter(|(_, c)| c.norm() >= PRUNE_THRESHOLD)
                    .map(|((x, z), c)| (PauliString { n: n as u8, x, z }, c))
                    .collect();
                (n, terms)
            }
        };
        terms.sort_unstable_by_key(|a| a.0);
        PauliSum { n, terms }
    }
}

impl PauliSum {
    pub fn zero(n: usize) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::QubitCountOutOfRange(n));
        }
        Ok(Self { n, terms: Vec::new() })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Ok(Self::from_string(PauliString::identity(n)?, Complex64::new(1.0, 0.0)))
    }

    pub fn from_string(s: PauliString, coeff: Complex64) -> Self {
        let terms = if coeff.norm() >= PRUNE_THRESHOLD {
            vec![(s, coeff)]
        } else {
            Vec::new()
        };
        Self { n: s.len(), terms }
    }

    /// `letter` on `qubit` with unit coefficient.
    pub fn single(n: usize, qubit: usize, letter: PauliLetter) -> Result<Self> {
        Ok(Self::from_string(
            PauliString::single(n, qubit, letter)?,
            Complex64::new(1.0, 0.0),
        ))
    }

    /// Sum of arbitrary terms, collecting like strings and pruning.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PauliString, Complex64)>,
    {
        let mut acc = Accumulator::new(n, 0);
        for (s, c) in terms {
            if s.len() != n {
                return Err(Error::LengthMismatch { left: n, right: s.len() });
            }
            acc.add(&s, c);
        }
        Ok(acc.finish())
    }

    /// Parse a sum written as `coeff*STRING` terms, e.g. `"0.5*II + -0.5*ZI"`.
    /// Coefficients are real; used mainly by fixtures and tests.
    pub fn parse_real(n: usize, text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for part in text.split('+').map(str::trim).filter(|p| !p.is_empty()) {
            let (c, s) = match part.split_once('*') {
                Some((c, s)) => (
                    c.trim()
                        .parse::<f64>()
                        .map_err(|e| Error::InvalidInput(format!("{c}: {e}")))?,
                    s.trim(),
                ),
                None => (1.0, part),
            };
            terms.push((s.parse::<PauliString>()?, Complex64::new(c, 0.0)));
        }
        Self::from_terms(n, terms)
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(PauliString, Complex64)] {
        &self.terms
    }

    pub fn coeff(&self, s: &PauliString) -> Complex64 {
        self.terms
            .binary_search_by(|(t, _)| t.cmp(s))
            .map(|i| self.terms[i].1)
            .unwrap_or_default()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.iter().map(|(_, c)| c.norm()).fold(0.0, f64::max)
    }

    /// All coefficients real within `tol`; every Pauli string is Hermitian,
    /// so this is Hermiticity of the sum.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.terms.iter().all(|(_, c)| c.im.abs() <= tol)
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::LengthMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// Distributive product with like-term collection.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let mut acc = Accumulator::new(self.n, self.len() * other.len());
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                let (phase, u) = s.mul_unchecked(t);
                acc.add(&u, phase.to_complex() * a * b);
            }
        }
        acc.finish()
    }

    /// `alpha * self + beta * other`.
    pub fn combine(&self, alpha: Complex64, other: &Self, beta: Complex64) -> Result<Self> {
        self.check_len(other)?;
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let next = match (self.terms.get(i), other.terms.get(j)) {
                (Some(&(s, a)), Some(&(t, b))) => match s.cmp(&t) {
                    Ordering::Less => {
                        i += 1;
                        (s, alpha * a)
                    }
                    Ordering::Greater => {
                        j += 1;
                        (t, beta * b)
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        (s, alpha * a + beta * b)
                    }
                },
                (Some(&(s, a)), None) => {
                    i += 1;
                    (s, alpha * a)
                }
                (None, Some(&(t, b))) => {
                    j += 1;
                    (t, beta * b)
                }
                (None, None) => unreachable!(),
            };
            if next.1.norm() >= PRUNE_THRESHOLD {
                out.push(next);
            }
        }
        Ok(Self { n: self.n, terms: out })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|&(s, a)| (s, a * c))
                .filter(|(_, a)| a.norm() >= PRUNE_THRESHOLD)
                .collect(),
        }
    }

    /// `self * other - other * self`, computed from anticommuting pairs only.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        let mut acc = Accumulator::new(self.n, self.len() * other.len());
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                if !s.commutes_with(t) {
                    let (phase, u) = s.mul_unchecked(t);
                    acc.add(&u, phase.to_complex() * a * b * 2.0);
                }
            }
        }
        Ok(acc.finish())
    }

    /// Expand into a `2^n x 2^n` matrix using the Eq.-3 single-qubit matrices.
    pub fn to_dense(&self) -> Result<DenseOperator> {
        let n = self.n;
        let mut out = DenseOperator::zeros(n)?;
        let dim = 1usize << n;
        for (s, c) in &self.terms {
            let xi = index_mask(s.x, n);
            let zi = index_mask(s.z, n);
            let base = Phase::from_power(s.y_count()).to_complex() * c;
            for col in 0..dim {
                let row = col ^ xi;
                let sign = if (zi & col).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
                let v = out.get(row, col) + base * sign;
                out.set(row, col, v);
            }
        }
        Ok(out)
    }

    /// Decompose a dense operator: coefficient of `P` is `Tr(P M) / 2^n`.
    pub fn from_dense(m: &DenseOperator) -> Result<Self> {
        let n = m.n_qubits();
        let dim = 1usize << n;
        let mut terms = Vec::new();
        for x in 0..dim as u64 {
            for z in 0..dim as u64 {
                let s = PauliString::from_masks(n, x, z)?;
                let xi = index_mask(x, n);
                let zi = index_mask(z, n);
                let mut tr = Complex64::new(0.0, 0.0);
                for col in 0..dim {
                    let row = col ^ xi;
                    // <col|P|row> has sign from row's z bits
                    let sign = if (zi & row).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
                    tr += m.get(row, col) * sign;
                }
                let c = tr * Phase::from_power(s.y_count()).to_complex() / dim as f64;
                terms.push((s, c));
            }
        }
        Self::from_terms(n, terms)
    }
}

/// Map string bits (qubit `a` at bit `a-1`) to basis-index bits (qubit `a`
/// at bit `n-a`).
fn index_mask(mask: u64, n: usize) -> usize {
    let mut out = 0usize;
    for a in 1..=n {
        if mask >> (a - 1) & 1 == 1 {
            out |= 1 << (n - a);
        }
    }
    out
}

/// Single-qubit product `a * b = phase * out`.
pub fn letter_mul(a: PauliLetter, b: PauliLetter) -> (Phase, PauliLetter) {
    a.product(b)
}

pub fn string_mul(s: &PauliString, t: &PauliString) -> Result<(Phase, PauliString)> {
    s.mul(t)
}

pub fn sum_mul(p: &PauliSum, q: &PauliSum) -> Result<PauliSum> {
    p.try_mul(q)
}

pub fn sum_combine(p: &PauliSum, alpha: Complex64, q: &PauliSum, beta: Complex64) -> Result<PauliSum> {
    p.combine(alpha, q, beta)
}

/// True iff every coefficient of `p - q` has magnitude at most `tol`.
/// Sums of different lengths are never equal.
pub fn sums_equal(p: &PauliSum, q: &PauliSum, tol: f64) -> bool {
    match p.combine(Complex64::new(1.0, 0.0), q, Complex64::new(-1.0, 0.0)) {
        Ok(d) => d.max_abs_coeff() <= tol,
        Err(_) => false,
    }
}

impl Mul for &PauliSum {
    type Output = PauliSum;

    /// Panics on length mismatch; use [`PauliSum::try_mul`] for checked input.
    fn mul(self, rhs: &PauliSum) -> PauliSum {
        assert_eq!(self.n, rhs.n, "pauli sum length mismatch");
        self.mul_unchecked(rhs)
    }
}

impl Add for &PauliSum {
    type Output = PauliSum;
    fn add(self, rhs: &PauliSum) -> PauliSum {
        self.combine(Complex64::new(1.0, 0.0), rhs, Complex64::new(1.0, 0.0))
            .expect("pauli sum length mismatch")
    }
}

impl Sub for &PauliSum {
    type Output = PauliSum;
    fn sub(self, rhs: &PauliSum) -> PauliSum {
        self.combine(Complex64::new(1.0, 0.0), rhs, Complex64::new(-1.0, 0.0))
            .expect("pauli sum length mismatch")
    }
}

impl Neg for &PauliSum {
    type Output = PauliSum;
    fn neg(self) -> PauliSum {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul<f64> for &PauliSum {
    type Output = PauliSum;
    fn mul(self, rhs: f64) -> PauliSum {
        self.scale(Complex64::new(rhs, 0.0))
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.im == 0.0 {
                write!(f, "{}*{}", c.re, s)?;
            } else if c.re == 0.0 {
                write!(f, "{}i*{}", c.im, s)?;
            } else {
                write!(f, "({}{:+}i)*{}", c.re, c.im, s)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::{Matrix2, SIGMA_X, SIGMA_Y, SIGMA_Z, UNIT};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn matrix_of(l: PauliLetter) -> Matrix2 {
        match l {
            PauliLetter::I => UNIT,
            PauliLetter::X => SIGMA_X,
            PauliLetter::Y => SIGMA_Y,
            PauliLetter::Z => SIGMA_Z,
        }
    }

    /// Independent Kronecker-product expansion.
    fn kron_oracle(p: &PauliSum) -> DenseOperator {
        let n = p.n_qubits();
        let mut acc = DenseOperator::zeros(n).unwrap();
        for (s, coeff) in p.terms() {
            let factors: Vec<Matrix2> = s.letters().map(matrix_of).collect();
            let k = DenseOperator::kron_product(&factors).unwrap().scale(*coeff);
            acc = acc.add(&k).unwrap();
        }
        acc
    }

    fn random_string(rng: &mut ChaCha8Rng, n: usize) -> PauliString {
        let letters: Vec<PauliLetter> = (0..n).map(|_| PauliLetter::ALL[rng.gen_range(0..4)]).collect();
        PauliString::from_letters(&letters).unwrap()
    }

    fn random_sum(rng: &mut ChaCha8Rng, n: usize, terms: usize) -> PauliSum {
        let t: Vec<_> = (0..terms)
            .map(|_| (random_string(rng, n), c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))))
            .collect();
        PauliSum::from_terms(n, t).unwrap()
    }

    #[test]
    fn letter_products() {
        assert_eq!(letter_mul(PauliLetter::X, PauliLetter::Y), (Phase::I, PauliLetter::Z));
        assert_eq!(letter_mul(PauliLetter::I, PauliLetter::X), (Phase::ONE, PauliLetter::X));
        assert_eq!(letter_mul(PauliLetter::X, PauliLetter::X), (Phase::ONE, PauliLetter::I));
    }

    #[test]
    fn letter_table_matches_matrices() {
        for a in PauliLetter::ALL {
            for b in PauliLetter::ALL {
                let (ph, out) = a.product(b);
                let lhs = DenseOperator::kron_product(&[matrix_of(a)])
                    .unwrap()
                    .matmul(&DenseOperator::kron_product(&[matrix_of(b)]).unwrap())
                    .unwrap();
                let rhs = DenseOperator::kron_product(&[matrix_of(out)]).unwrap().scale(ph.to_complex());
                assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-15, "{a:?}{b:?}");
            }
        }
    }

    #[test]
    fn string_product_example() {
        // (X⊗Z)(Y⊗Z) = i Z⊗I, checked against the 4x4 dense product
        let (ph, out) = string_mul(&ps("XZ"), &ps("YZ")).unwrap();
        assert_eq!((ph, out), (Phase::I, ps("ZI")));
        let s = PauliSum::from_string(ps("XZ"), c(1.0, 0.0));
        let t = PauliSum::from_string(ps("YZ"), c(1.0, 0.0));
        let dense = kron_oracle(&s).matmul(&kron_oracle(&t)).unwrap();
        let expect = kron_oracle(&PauliSum::from_string(ps("ZI"), c(0.0, 1.0)));
        assert!(dense.max_abs_diff(&expect).unwrap() < 1e-15);
    }

    #[test]
    fn identity_string_is_neutral() {
        let s = ps("XYZ");
        assert_eq!(string_mul(&ps("III"), &s).unwrap(), (Phase::ONE, s));
    }

    #[test]
    fn string_product_matches_letterwise_and_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let s = random_string(&mut rng, 3);
            let t = random_string(&mut rng, 3);
            let (ph, out) = s.mul(&t).unwrap();
            let mut phase = Phase::ONE;
            let mut letters = Vec::new();
            for (a, b) in s.letters().zip(t.letters()) {
                let (p, l) = a.product(b);
                phase = phase * p;
                letters.push(l);
            }
            assert_eq!(ph, phase);
            assert_eq!(out, PauliString::from_letters(&letters).unwrap());
            let lhs = kron_oracle(&PauliSum::from_string(s, c(1.0, 0.0)))
                .matmul(&kron_oracle(&PauliSum::from_string(t, c(1.0, 0.0))))
                .unwrap();
            let rhs = kron_oracle(&PauliSum::from_string(out, ph.to_complex()));
            assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-14);
        }
    }

    #[test]
    fn length_mismatch_is_rejected() {
        assert!(matches!(
            string_mul(&ps("X"), &ps("XX")),
            Err(Error::LengthMismatch { left: 1, right: 2 })
        ));
        let p = PauliSum::identity(1).unwrap();
        let q = PauliSum::identity(2).unwrap();
        assert!(sum_mul(&p, &q).is_err());
        assert!(sum_combine(&p, c(1.0, 0.0), &q, c(1.0, 0.0)).is_err());
        assert!(PauliSum::from_terms(2, [(ps("X"), c(1.0, 0.0))]).is_err());
    }

    #[test]
    fn sum_product_examples() {
        let xi = PauliSum::parse_real(2, "XI").unwrap();
        let iz = PauliSum::parse_real(2, "IZ").unwrap();
        assert_eq!(&xi * &iz, PauliSum::parse_real(2, "XZ").unwrap());
        let yi = PauliSum::parse_real(2, "YI").unwrap();
        let prod = &xi * &yi;
        assert_eq!(prod.terms(), &[(ps("ZI"), c(0.0, 1.0))]);
    }

    #[test]
    fn sum_product_matches_dense_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let p = random_sum(&mut rng, 3, 5);
            let q = random_sum(&mut rng, 3, 5);
            let lhs = kron_oracle(&sum_mul(&p, &q).unwrap());
            let rhs = kron_oracle(&p).matmul(&kron_oracle(&q)).unwrap();
            assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12);
        }
    }

    #[test]
    fn combine_examples() {
        let x = PauliSum::parse_real(1, "X").unwrap();
        let y = PauliSum::parse_real(1, "Y").unwrap();
        let z = PauliSum::parse_real(1, "Z").unwrap();
        assert!(sum_combine(&x, c(1.0, 0.0), &x, c(-1.0, 0.0)).unwrap().is_empty());
        let at = |theta: f64| sum_combine(&y, c(theta.cos(), 0.0), &z, c(theta.sin(), 0.0)).unwrap();
        assert_eq!(at(0.0), y);
        // cos(pi/2) ~ 6e-17 is pruned
        assert_eq!(at(std::f64::consts::FRAC_PI_2), z);
    }

    #[test]
    fn to_dense_examples() {
        let xi = PauliSum::parse_real(2, "XI").unwrap().to_dense().unwrap();
        let expect = DenseOperator::kron_product(&[SIGMA_X, UNIT]).unwrap();
        assert_eq!(xi.max_abs_diff(&expect).unwrap(), 0.0);

        let zero = PauliSum::zero(2).unwrap().to_dense().unwrap();
        assert_eq!(zero.max_abs(), 0.0);

        // projector onto "qubit 1 holds 1", i.e. sigma_z = +1 on qubit 1
        let proj = PauliSum::parse_real(2, "0.5*II + 0.5*ZI").unwrap().to_dense().unwrap();
        let diag: Vec<f64> = (0..4).map(|i| proj.get(i, i).re).collect();
        assert_eq!(diag, vec![1.0, 1.0, 0.0, 0.0]);
        assert_eq!(proj.matmul(&proj).unwrap(), proj);
    }

    #[test]
    fn to_dense_matches_kron_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=4 {
            let p = random_sum(&mut rng, n, 6);
            assert!(p.to_dense().unwrap().max_abs_diff(&kron_oracle(&p)).unwrap() < 1e-14);
        }
    }

    #[test]
    fn from_dense_inverts_to_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=3 {
            let p = random_sum(&mut rng, n, 7);
            let back = PauliSum::from_dense(&p.to_dense().unwrap()).unwrap();
            assert!(sums_equal(&p, &back, 1e-13));
        }
    }

    #[test]
    fn sums_equal_examples() {
        let x = PauliSum::parse_real(1, "X").unwrap();
        assert!(sums_equal(&x, &x, 0.0));
        assert!(!sums_equal(&x, &-&x, 1e-9));
        assert!(!sums_equal(&x, &PauliSum::parse_real(2, "XI").unwrap(), 1.0));
    }

    #[test]
    fn commutator_matches_two_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..20 {
            let p = random_sum(&mut rng, 3, 6);
            let q = random_sum(&mut rng, 3, 6);
            let direct = &(&p * &q) - &(&q * &p);
            assert!(sums_equal(&p.commutator(&q).unwrap(), &direct, 1e-12));
        }
    }

    #[test]
    fn ordering_is_letterwise_from_qubit_one() {
        let mut v = [ps("ZI"), ps("IZ"), ps("XX"), ps("YI"), ps("II")];
        v.sort();
        let shown: Vec<String> = v.iter().map(|s| s.to_string()).collect();
        assert_eq!(shown, ["II", "IZ", "XX", "YI", "ZI"]);
    }

    #[test]
    fn pruning_drops_tiny_coefficients() {
        let p = PauliSum::from_terms(1, [(ps("X"), c(1e-13, 0.0)), (ps("Z"), c(1.0, 0.0))]).unwrap();
        assert_eq!(p.len(), 1);
    }
}
