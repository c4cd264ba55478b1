use heisenberg_net::info_flow::{ParameterProbe, SampledStates};
use heisenberg_net::random::random_circuit;
use heisenberg_net::selfcheck::check_circuit;
use heisenberg_net::{
    parse_circuit, run_circuit, AngleExpr, Circuit, Gate, ParamEnv, PauliLetter, PauliString, PauliSum,
};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pauli_string(n: usize) -> impl Strategy<Value = PauliString> {
    prop::collection::vec(prop::sample::select(PauliLetter::ALL.to_vec()), n)
        .prop_map(|letters| PauliString::from_letters(&letters).unwrap())
}

fn string_pair() -> impl Strategy<Value = (PauliString, PauliString)> {
    (1usize..=4).prop_flat_map(|n| (pauli_string(n), pauli_string(n)))
}

fn seeded_circuit(seed: u64, n: usize, depth: usize) -> Circuit {
    random_circuit(&mut ChaCha8Rng::seed_from_u64(seed), n, depth).unwrap()
}

fn as_sum(s: &PauliString) -> PauliSum {
    PauliSum::from_string(*s, Complex64::new(1.0, 0.0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn string_product_matches_matrix_product((s, t) in string_pair()) {
        let (phase, st) = s.mul(&t).unwrap();
        let lhs = as_sum(&st).to_dense().unwrap().scale(phase.to_complex());
        let rhs = as_sum(&s).to_dense().unwrap().matmul(&as_sum(&t).to_dense().unwrap()).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12);
    }

    #[test]
    fn commutation_flag_matches_commutator((s, t) in string_pair()) {
        let comm = as_sum(&s).commutator(&as_sum(&t)).unwrap();
        prop_assert_eq!(s.commutes_with(&t), comm.is_empty());
    }

    #[test]
    fn random_circuits_agree_with_every_oracle(seed in any::<u64>(), n in 1usize..=4, depth in 0usize..=8) {
        let c = seeded_circuit(seed, n, depth);
        let r = check_circuit(&c, &ParamEnv::new()).unwrap();
        prop_assert!(r.passes(1e-9), "{:?}\n{}", r, c.to_text());
    }

    #[test]
    fn gate_order_within_a_step_is_irrelevant(seed in any::<u64>(), n in 2usize..=5, depth in 1usize..=8) {
        let c = seeded_circuit(seed, n, depth);
        let mut reversed = Circuit::new(n, &[]).unwrap();
        for step in c.steps() {
            reversed.push_step(step.gates().iter().rev().cloned().collect()).unwrap();
        }
        let env = ParamEnv::new();
        prop_assert_eq!(run_circuit(&c, &env).unwrap(), run_circuit(&reversed, &env).unwrap());
    }

    #[test]
    fn text_round_trip_preserves_the_run(seed in any::<u64>(), n in 1usize..=4, depth in 0usize..=6) {
        let c = seeded_circuit(seed, n, depth);
        let back = parse_circuit(&c.to_text()).unwrap();
        let env = ParamEnv::new();
        let (s, t) = (run_circuit(&c, &env).unwrap(), run_circuit(&back, &env).unwrap());
        for (a, b) in s.descriptors().zip(t.descriptors()) {
            prop_assert!(a.max_difference(b) < 1e-9);
        }
    }

    /// A parameter entered by a final local rotation shows up in no other
    /// qubit's descriptor, however entangled the network already is.
    #[test]
    fn fresh_parameter_stays_where_it_entered(
        seed in any::<u64>(),
        n in 2usize..=4,
        depth in 0usize..=6,
        at in 1usize..=4,
    ) {
        let at = (at - 1) % n + 1;
        let base = seeded_circuit(seed, n, depth);
        let mut c = Circuit::new(n, &["p"]).unwrap();
        for step in base.steps() {
            c.push_step(step.gates().to_vec()).unwrap();
        }
        c.push_step(vec![Gate::Rx(at, AngleExpr::param("p"))]).unwrap();
        let probe = ParameterProbe::new("p");
        let sampled = SampledStates::run(&c, &ParamEnv::new(), &probe, c.depth()).unwrap();
        for a in (1..=n).filter(|&a| a != at) {
            prop_assert!(!sampled.descriptor_depends(a).unwrap(), "qubit {}", a);
        }
    }
}
