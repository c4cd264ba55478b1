//! Circuit model: angle expressions, parameter bindings, gates, steps.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};

/// An angle in radians: literals, `pi`, parameter names, unary minus,
/// and products/quotients of those.
#[derive(Debug, Clone, PartialEq)]
pub enum AngleExpr {
    Const(f64),
    Pi,
    Param(String),
    Neg(Box<AngleExpr>),
    Mul(Box<AngleExpr>, Box<AngleExpr>),
    Div(Box<AngleExpr>, Box<AngleExpr>),
}

impl AngleExpr {
    pub fn param(name: &str) -> Self {
        AngleExpr::Param(name.to_string())
    }

    pub fn eval(&self, env: &ParamEnv) -> Result<f64> {
        Ok(match self {
            AngleExpr::Const(v) => *v,
            AngleExpr::Pi => PI,
            AngleExpr::Param(name) => env.get(name)?,
            AngleExpr::Neg(e) => -e.eval(env)?,
            AngleExpr::Mul(a, b) => a.eval(env)? * b.eval(env)?,
            AngleExpr::Div(a, b) => a.eval(env)? / b.eval(env)?,
        })
    }

    pub fn params(&self, out: &mut BTreeSet<String>) {
        match self {
            AngleExpr::Const(_) | AngleExpr::Pi => {}
            AngleExpr::Param(name) => {
                out.insert(name.clone());
            }
            AngleExpr::Neg(e) => e.params(out),
            AngleExpr::Mul(a, b) | AngleExpr::Div(a, b) => {
                a.params(out);
                b.params(out);
            }
        }
    }

    pub fn mentions(&self, name: &str) -> bool {
        let mut set = BTreeSet::new();
        self.params(&mut set);
        set.contains(name)
    }
}

impl fmt::Display for AngleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            // `{:?}` keeps a decimal point and round-trips exactly
            AngleExpr::Const(v) => write!(f, "{v:?}"),
            AngleExpr::Pi => write!(f, "pi"),
            AngleExpr::Param(name) => write!(f, "{name}"),
            AngleExpr::Neg(e) => write!(f, "-{e}"),
            AngleExpr::Mul(a, b) => write!(f, "{a}*{b}"),
            AngleExpr::Div(a, b) => write!(f, "{a}/{b}"),
        }
    }
}

/// Parameter name to angle (radians).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParamEnv {
    values: BTreeMap<String, f64>,
}

impl ParamEnv {
    pub fn new() -> Self {
        Self::default()
    }

    /// Bind `name`; binding the same name twice is an error.
    pub fn bind(&mut self, name: &str, value: f64) -> Result<()> {
        if self.values.insert(name.to_string(), value).is_some() {
            return Err(Error::DuplicateBinding(name.to_string()));
        }
        Ok(())
    }

    /// Builder form that overwrites any earlier value.
    pub fn with(mut self, name: &str, value: f64) -> Self {
        self.values.insert(name.to_string(), value);
        self
    }

    pub fn get(&self, name: &str) -> Result<f64> {
        self.values
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnboundParameter(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.values.contains_key(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.values.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// Parse `NAME=VALUE` assignments; values accept angle expressions
    /// without parameters, e.g. `theta=2*pi/3`.
    pub fn from_assignments<'a, I: IntoIterator<Item = &'a str>>(items: I) -> Result<Self> {
        let mut env = ParamEnv::new();
        for item in items {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidInput(format!("expected NAME=VALUE, got `{item}`")))?;
            let expr = crate::parse::parse_angle(value.trim())
                .map_err(|m| Error::InvalidInput(format!("`{item}`: {m}")))?;
            let v = expr.eval(&ParamEnv::new())?;
            env.bind(name.trim(), v)?;
        }
        Ok(env)
    }
}

/// One gate application with the qubits it acts on (1-based).
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    Id(usize),
    Not(usize),
    SqrtNot(usize),
    Cnot { target: usize, control: usize },
    Rx(usize, AngleExpr),
    Ry(usize, AngleExpr),
    Rz(usize, AngleExpr),
    /// Rotation about a unit axis.
    Rn { qubit: usize, axis: [f64; 3], angle: AngleExpr },
    H(usize),
    Bell(usize, usize),
    BellInv(usize, usize),
    /// Teleportation correction on carriers `k`, `l` and output `m`.
    T3(usize, usize, usize),
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::Id(q) | Gate::Not(q) | Gate::SqrtNot(q) | Gate::H(q) => vec![q],
            Gate::Rx(q, _) | Gate::Ry(q, _) | Gate::Rz(q, _) => vec![q],
            Gate::Rn { qubit, .. } => vec![qubit],
            Gate::Cnot { target, control } => vec![target, control],
            Gate::Bell(k, l) | Gate::BellInv(k, l) => vec![k, l],
            Gate::T3(k, l, m) => vec![k, l, m],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gate::Id(_) => "id",
            Gate::Not(_) => "not",
            Gate::SqrtNot(_) => "sqrtnot",
            Gate::Cnot { .. } => "cnot",
            Gate::Rx(..) => "rx",
            Gate::Ry(..) => "ry",
            Gate::Rz(..) => "rz",
            Gate::Rn { .. } => "rn",
            Gate::H(_) => "h",
            Gate::Bell(..) => "bell",
            Gate::BellInv(..) => "bellinv",
            Gate::T3(..) => "t3",
        }
    }

    pub fn angle(&self) -> Option<&AngleExpr> {
        match self {
            Gate::Rx(_, a) | Gate::Ry(_, a) | Gate::Rz(_, a) => Some(a),
            Gate::Rn { angle, .. } => Some(angle),
            _ => None,
        }
    }

    /// Indices in range and pairwise distinct; rotation axes unit length.
    pub fn validate(&self, n: usize) -> Result<()> {
        let qs = self.qubits();
        for (i, &q) in qs.iter().enumerate() {
            if q == 0 || q > n {
                return Err(Error::QubitOutOfRange { index: q, n });
            }
            if qs[..i].contains(&q) {
                return Err(Error::DuplicateQubit(q));
            }
        }
        if let Gate::Rn { axis, .. } = self {
            let norm = axis.iter().map(|v| v * v).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > 1e-12 {
                return Err(Error::AxisNotUnit(norm));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Id(q) | Gate::Not(q) | Gate::SqrtNot(q) | Gate::H(q) => write!(f, "{} {q}", self.name()),
            Gate::Cnot { target, control } => write!(f, "cnot t={target} c={control}"),
            Gate::Rx(q, a) | Gate::Ry(q, a) | Gate::Rz(q, a) => write!(f, "{}({a}) {q}", self.name()),
            Gate::Rn { qubit, axis, angle } => {
                write!(f, "rn({:?},{:?},{:?},{angle}) {qubit}", axis[0], axis[1], axis[2])
            }
            Gate::Bell(k, l) | Gate::BellInv(k, l) => write!(f, "{} {k} {l}", self.name()),
            Gate::T3(k, l, m) => write!(f, "t3 {k} {l} {m}"),
        }
    }
}

/// Gates acting during one time step; their qubit sets are disjoint.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Step {
    gates: Vec<Gate>,
}

impl Step {
    pub fn new(gates: Vec<Gate>, n: usize) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for g in &gates {
            g.validate(n)?;
            for q in g.qubits() {
                if !seen.insert(q) {
                    return Err(Error::OverlappingGates(q));
                }
            }
        }
        Ok(Self { gates })
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn touched(&self) -> BTreeSet<usize> {
        self.gates.iter().flat_map(|g| g.qubits()).collect()
    }
}

/// A schedule of steps on `n` qubits with named angle parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n: usize,
    params: Vec<String>,
    steps: Vec<Step>,
}

impl Circuit {
    pub fn new(n: usize, params: &[&str]) -> Result<Self> {
        if n == 0 || n > crate::pauli::MAX_QUBITS {
            return Err(Error::QubitCountOutOfRange(n));
        }
        let mut seen = BTreeSet::new();
        for p in params {
            if !seen.insert(*p) {
                return Err(Error::InvalidInput(format!("parameter `{p}` declared twice")));
            }
        }
        Ok(Self {
            n,
            params: params.iter().map(|s| s.to_string()).collect(),
            steps: Vec::new(),
        })
    }

    /// Append a step after checking disjointness, ranges and parameters.
    pub fn push_step(&mut self, gates: Vec<Gate>) -> Result<&mut Self> {
        let step = Step::new(gates, self.n)?;
        for g in step.gates() {
            if let Some(a) = g.angle() {
                let mut used = BTreeSet::new();
                a.params(&mut used);
                if let Some(p) = used.into_iter().find(|p| !self.params.contains(p)) {
                    return Err(Error::UnknownParameter(p));
                }
            }
        }
        self.steps.push(step);
        Ok(self)
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn declares(&self, name: &str) -> bool {
        self.params.iter().any(|p| p == name)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn depth(&self) -> usize {
        self.steps.len()
    }

    /// Every declared parameter must be bound.
    pub fn check_env(&self, env: &ParamEnv) -> Result<()> {
        match self.params.iter().find(|p| !env.contains(p)) {
            Some(p) => Err(Error::UnboundParameter(p.clone())),
            None => Ok(()),
        }
    }

    /// Render in the text format accepted by [`crate::parse::parse_circuit`].
    pub fn to_text(&self) -> String {
        let mut out = format!("qubits {}\n", self.n);
        if !self.params.is_empty() {
            out.push_str(&format!("params {}\n", self.params.join(" ")));
        }
        for step in &self.steps {
            let gates: Vec<String> = step.gates().iter().map(|g| g.to_string()).collect();
            if gates.is_empty() {
                out.push_str("step:\n");
            } else {
                out.push_str(&format!("step: {}\n", gates.join(" ; ")));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angle_expressions_evaluate() {
        let env = ParamEnv::new().with("theta", 0.5);
        let e = AngleExpr::Div(
            Box::new(AngleExpr::Mul(Box::new(AngleExpr::Const(2.0)), Box::new(AngleExpr::Pi))),
            Box::new(AngleExpr::Const(3.0)),
        );
        assert!((e.eval(&env).unwrap() - 2.0 * PI / 3.0).abs() < 1e-15);
        let neg = AngleExpr::Neg(Box::new(AngleExpr::param("theta")));
        assert_eq!(neg.eval(&env).unwrap(), -0.5);
        assert!(matches!(
            AngleExpr::param("phi").eval(&env),
            Err(Error::UnboundParameter(p)) if p == "phi"
        ));
    }

    #[test]
    fn duplicate_binding_rejected() {
        let mut env = ParamEnv::new();
        env.bind("a", 1.0).unwrap();
        assert!(matches!(env.bind("a", 2.0), Err(Error::DuplicateBinding(_))));
        assert!(ParamEnv::from_assignments(["a=1", "a=2"]).is_err());
        let env = ParamEnv::from_assignments(["theta=2*pi/3", "phi=-0.5"]).unwrap();
        assert!((env.get("theta").unwrap() - 2.0 * PI / 3.0).abs() < 1e-15);
        assert_eq!(env.get("phi").unwrap(), -0.5);
    }

    #[test]
    fn gate_validation() {
        assert!(Gate::Cnot { target: 1, control: 1 }.validate(2).is_err());
        assert!(Gate::Not(3).validate(2).is_err());
        assert!(Gate::Not(0).validate(2).is_err());
        let bad_axis = Gate::Rn {
            qubit: 1,
            axis: [1.0, 1.0, 0.0],
            angle: AngleExpr::Const(1.0),
        };
        assert!(matches!(bad_axis.validate(1), Err(Error::AxisNotUnit(_))));
    }

    #[test]
    fn steps_must_be_disjoint() {
        let r = Step::new(vec![Gate::Not(1), Gate::Cnot { target: 2, control: 1 }], 2);
        assert!(matches!(r, Err(Error::OverlappingGates(1))));
    }

    #[test]
    fn undeclared_parameter_rejected() {
        let mut c = Circuit::new(1, &["theta"]).unwrap();
        assert!(c.push_step(vec![Gate::Rx(1, AngleExpr::param("theta"))]).is_ok());
        assert!(matches!(
            c.push_step(vec![Gate::Rx(1, AngleExpr::param("phi"))]),
            Err(Error::UnknownParameter(_))
        ));
        assert!(matches!(c.check_env(&ParamEnv::new()), Err(Error::UnboundParameter(_))));
    }
}
