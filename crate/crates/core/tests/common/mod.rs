#![allow(dead_code)]

use heisenberg_net::network::Component;
use heisenberg_net::pauli::sums_equal;
use heisenberg_net::{Descriptor, PauliString, PauliSum};
use num_complex::Complex64;

/// Build a real-coefficient sum from `(coefficient, "XYZ...")` pairs.
pub fn sum(n: usize, terms: &[(f64, &str)]) -> PauliSum {
    PauliSum::from_terms(
        n,
        terms
            .iter()
            .map(|(c, s)| (s.parse::<PauliString>().unwrap(), Complex64::new(*c, 0.0))),
    )
    .unwrap()
}

pub fn descriptor(n: usize, x: &[(f64, &str)], y: &[(f64, &str)], z: &[(f64, &str)]) -> Descriptor {
    Descriptor::new(sum(n, x), sum(n, y), sum(n, z))
}

/// Components that differ from `want` by more than `tol`, as readable text.
pub fn mismatches(got: &Descriptor, want: &Descriptor, tol: f64) -> Vec<String> {
    Component::ALL
        .iter()
        .filter(|u| !sums_equal(got.component(**u), want.component(**u), tol))
        .map(|u| format!("{}: got {} want {}", u.name(), got.component(*u), want.component(*u)))
        .collect()
}

pub fn assert_descriptor(got: &Descriptor, want: &Descriptor, tol: f64) {
    let bad = mismatches(got, want, tol);
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}
