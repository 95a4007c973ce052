//! Gate-level intermediate representation.
//!
//! The compiler lowers everything to the {u3, cx} basis plus barriers and
//! measurements; gate list index 0 executes first. Qubit 0 is the most
//! significant bit of a basis-state index throughout the crate.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    /// Generic single-qubit rotation, OpenQASM u3 convention:
    /// [[cos(t/2), -e^{i l} sin(t/2)], [e^{i p} sin(t/2), e^{i(p+l)} cos(t/2)]]
    U3 {
        qubit: usize,
        theta: f64,
        phi: f64,
        lambda: f64,
    },
    Cx {
        control: usize,
        target: usize,
    },
    Measure {
        qubit: usize,
        clbit: usize,
    },
    Barrier {
        qubits: Vec<usize>,
    },
}

impl Gate {
    pub fn u3(qubit: usize, theta: f64, phi: f64, lambda: f64) -> Gate {
        Gate::U3 {
            qubit,
            theta,
            phi,
            lambda,
        }
    }

    pub fn cx(control: usize, target: usize) -> Gate {
        Gate::Cx { control, target }
    }

    /// Pauli X as a u3.
    pub fn x(qubit: usize) -> Gate {
        Gate::u3(qubit, std::f64::consts::PI, 0.0, std::f64::consts::PI)
    }

    /// Hadamard as a u3.
    pub fn h(qubit: usize) -> Gate {
        Gate::u3(
            qubit,
            std::f64::consts::FRAC_PI_2,
            0.0,
            std::f64::consts::PI,
        )
    }

    /// Phase gate diag(1, e^{i lambda}) as a u3.
    pub fn u1(qubit: usize, lambda: f64) -> Gate {
        Gate::u3(qubit, 0.0, 0.0, lambda)
    }

    /// Qubits the gate acts on (classical bits excluded).
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::U3 { qubit, .. } | Gate::Measure { qubit, .. } => vec![*qubit],
            Gate::Cx { control, target } => vec![*control, *target],
            Gate::Barrier { qubits } => qubits.clone(),
        }
    }
}

/// 2x2 matrix of the OpenQASM u3 gate.
pub fn u3_matrix(theta: f64, phi: f64, lambda: f64) -> [[Complex64; 2]; 2] {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    [
        [
            Complex64::new(c, 0.0),
            -Complex64::from_polar(s, lambda),
        ],
        [
            Complex64::from_polar(s, phi),
            Complex64::from_polar(c, phi + lambda),
        ],
    ]
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub n_qubits: usize,
    pub n_clbits: usize,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize, n_clbits: usize) -> Self {
        Circuit {
            n_qubits,
            n_clbits,
            gates: Vec::new(),
        }
    }

    /// Appends a gate after validating its indices and angles.
    pub fn push(&mut self, gate: Gate) -> Result<()> {
        self.check(&gate)?;
        self.gates.push(gate);
        Ok(())
    }

    fn check(&self, gate: &Gate) -> Result<()> {
        let check_q = |q: usize| {
            if q >= self.n_qubits {
                Err(Error::QubitOutOfRange {
                    index: q,
                    n_qubits: self.n_qubits,
                })
            } else {
                Ok(())
            }
        };
        match gate {
            Gate::U3 {
                qubit,
                theta,
                phi,
                lambda,
            } => {
                check_q(*qubit)?;
                if !(theta.is_finite() && phi.is_finite() && lambda.is_finite()) {
                    return Err(Error::InvalidGate("non-finite u3 angle".into()));
                }
            }
            Gate::Cx { control, target } => {
                check_q(*control)?;
                check_q(*target)?;
                if control == target {
                    return Err(Error::InvalidGate(
                        "cx control and target must differ".into(),
                    ));
                }
            }
            Gate::Measure { qubit, clbit } => {
                check_q(*qubit)?;
                if *clbit >= self.n_clbits {
                    return Err(Error::ClbitOutOfRange {
                        index: *clbit,
                        n_clbits: self.n_clbits,
                    });
                }
            }
            Gate::Barrier { qubits } => {
                if qubits.is_empty() {
                    return Err(Error::InvalidGate("barrier needs at least one qubit".into()));
                }
                for &q in qubits {
                    check_q(q)?;
                }
            }
        }
        Ok(())
    }

    /// Validates every gate (used after bulk construction).
    pub fn validate(&self) -> Result<()> {
        for gate in &self.gates {
            self.check(gate)?;
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }
}
