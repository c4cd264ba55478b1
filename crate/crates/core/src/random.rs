//! Random circuits over the full gate catalog, for equivalence testing.

use std::f64::consts::TAU;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::circuit::{AngleExpr, Circuit, Gate};
use crate::error::Result;

fn random_axis<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.1 {
            return v.map(|x| x / norm);
        }
    }
}

fn random_gate<R: Rng + ?Sized>(rng: &mut R, free: &mut Vec<usize>) -> Gate {
    let arity_max = free.len().min(3);
    let arity = rng.gen_range(1..=arity_max);
    let qs: Vec<usize> = free.drain(..arity).collect();
    let angle = AngleExpr::Const(rng.gen_range(0.0..TAU));
    match (arity, rng.gen_range(0..8)) {
        (1, 0) => Gate::Id(qs[0]),
        (1, 1) => Gate::Not(qs[0]),
        (1, 2) => Gate::SqrtNot(qs[0]),
        (1, 3) => Gate::H(qs[0]),
        (1, 4) => Gate::Rx(qs[0], angle),
        (1, 5) => Gate::Ry(qs[0], angle),
        (1, 6) => Gate::Rz(qs[0], angle),
        (1, _) => Gate::Rn { qubit: qs[0], axis: random_axis(rng), angle },
        (2, k) if k < 3 => Gate::Cnot { target: qs[0], control: qs[1] },
        (2, k) if k < 6 => Gate::Bell(qs[0], qs[1]),
        (2, _) => Gate::BellInv(qs[0], qs[1]),
        _ => Gate::T3(qs[0], qs[1], qs[2]),
    }
}

/// A circuit on `n` qubits with `depth` steps; each step covers a random
/// subset of the qubits with disjoint random gates and constant angles.
pub fn random_circuit<R: Rng + ?Sized>(rng: &mut R, n: usize, depth: usize) -> Result<Circuit> {
    let mut c = Circuit::new(n, &[])?;
    for _ in 0..depth {
        let mut free: Vec<usize> = (1..=n).collect();
        free.shuffle(rng);
        let keep = rng.gen_range(0..=n);
        free.truncate(keep);
        let mut gates = Vec::new();
        while !free.is_empty() {
            gates.push(random_gate(rng, &mut free));
        }
        c.push_step(gates)?;
    }
    Ok(c)
}
