//! Radial node sets for the projection geometry, with parity-aware
//! validation and the generator schemes studied by the reconstruction.

use crate::chebyshev::eval_u;
use crate::error::{Error, Result};

use std::f64::consts::PI;
use std::fmt;

/// Default absolute tolerance for distinctness and asymmetry checks.
pub const NODE_TOLERANCE: f64 = 1e-10;

/// Threshold below which `U_{2m}(t0)` is treated as zero when validating the
/// free node of the U-zero scheme.
pub const U_ZERO_TOLERANCE: f64 = 1e-10;

/// Parity of the target degree: `Even` reconstructs `n = 2m` from `m + 1`
/// nodes, `Odd` reconstructs `n = 2m - 1` from `m` nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn label(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }

    pub fn from_label(s: &str) -> Option<Parity> {
        match s {
            "even" => Some(Parity::Even),
            "odd" => Some(Parity::Odd),
            _ => None,
        }
    }

    /// Parity of a degree.
    pub fn of_degree(n: usize) -> Parity {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Node-generation scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    Obrechkoff,
    UZeros,
    Equidistant,
    Chebyshev,
    Custom,
}

impl Scheme {
    pub fn label(self) -> &'static str {
        match self {
            Scheme::Obrechkoff => "obrechkoff",
            Scheme::UZeros => "u-zeros",
            Scheme::Equidistant => "equidistant",
            Scheme::Chebyshev => "chebyshev",
            Scheme::Custom => "custom",
        }
    }

    pub fn from_label(s: &str) -> Option<Scheme> {
        match s {
            "obrechkoff" => Some(Scheme::Obrechkoff),
            "u-zeros" => Some(Scheme::UZeros),
            "equidistant" => Some(Scheme::Equidistant),
            "chebyshev" => Some(Scheme::Chebyshev),
            "custom" => Some(Scheme::Custom),
            _ => None,
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// `true` iff no two entries sum to within `tol` of zero. A single entry at
/// zero has no distinct mirror and passes; pairs are what asymmetry forbids.
pub fn check_asymmetric(values: &[f64], tol: f64) -> bool {
    assert!(tol > 0.0);
    for (i, &a) in values.iter().enumerate() {
        for &b in &values[i + 1..] {
            if (a + b).abs() < tol {
                return false;
            }
        }
    }
    true
}

/// A validated set of radial parameters `t_0..`, pairwise distinct,
/// asymmetric, inside `(-1, 1)`, and free of zeros when the parity is odd.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeSet {
    values: Vec<f64>,
    parity: Parity,
    scheme: Scheme,
}

impl NodeSet {
    /// Validates and wraps `values`. Errors name the violated condition.
    pub fn new(values: Vec<f64>, parity: Parity, scheme: Scheme) -> Result<NodeSet> {
        if values.is_empty() {
            return Err(Error::WrongNodeCount {
                expected: 1,
                got: 0,
            });
        }
        for &v in &values {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    context: "node value".to_string(),
                });
            }
            if v.abs() >= 1.0 {
                return Err(Error::NodeOutOfRange { value: v });
            }
            if parity == Parity::Odd && v.abs() < NODE_TOLERANCE {
                return Err(Error::ZeroNodeOddParity {
                    value: v,
                    tolerance: NODE_TOLERANCE,
                });
            }
        }
        for (i, &a) in values.iter().enumerate() {
            for &b in &values[i + 1..] {
                if (a - b).abs() <= NODE_TOLERANCE {
                    return Err(Error::DuplicateNodes {
                        a,
                        b,
                        tolerance: NODE_TOLERANCE,
                    });
                }
                if (a + b).abs() < NODE_TOLERANCE {
                    return Err(Error::SymmetricNodes {
                        a,
                        b,
                        tolerance: NODE_TOLERANCE,
                    });
                }
            }
        }
        Ok(NodeSet {
            values,
            parity,
            scheme,
        })
    }

    /// A user-supplied node set.
    pub fn custom(values: Vec<f64>, parity: Parity) -> Result<NodeSet> {
        NodeSet::new(values, parity, Scheme::Custom)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    /// The harmonic count `m` implied by cardinality and parity:
    /// `m + 1` nodes for even, `m` for odd.
    pub fn harmonic_m(&self) -> usize {
        match self.parity {
            Parity::Even => self.values.len() - 1,
            Parity::Odd => self.values.len(),
        }
    }

    /// The target degree `n` served by this node set.
    pub fn degree(&self) -> usize {
        match self.parity {
            Parity::Even => 2 * self.harmonic_m(),
            Parity::Odd => 2 * self.harmonic_m() - 1,
        }
    }
}

/// `m + 1` equidistant interior points of `(cos(pi/(2m+1)), 1)`:
/// `t_k = L + (k+1)(1-L)/(m+2)` with `L = cos(pi/(2m+1))`. All points sit
/// beyond the largest zero of `U_{2m}`, which makes every block matrix
/// nonsingular by the sign-change bound for Chebyshev expansions.
pub fn nodes_obrechkoff(m: usize) -> NodeSet {
    let lower = (PI / (2 * m + 1) as f64).cos();
    let values = (0..=m)
        .map(|k| lower + (k + 1) as f64 * (1.0 - lower) / (m + 2) as f64)
        .collect();
    NodeSet::new(values, Parity::Even, Scheme::Obrechkoff)
        .expect("generated obrechkoff nodes are valid")
}

/// Odd-parity analog of [`nodes_obrechkoff`]: `m` equidistant interior
/// points of `(cos(pi/(2m)), 1)`, beyond the largest zero of `U_{2m-1}`.
pub fn nodes_obrechkoff_odd(m: usize) -> NodeSet {
    assert!(m >= 1);
    let lower = (PI / (2 * m) as f64).cos();
    let values = (0..m)
        .map(|k| lower + (k + 1) as f64 * (1.0 - lower) / (m + 1) as f64)
        .collect();
    NodeSet::new(values, Parity::Odd, Scheme::Obrechkoff)
        .expect("generated odd obrechkoff nodes are valid")
}

/// `{t0} ∪ {cos(2j*pi/(2m+1)) : j = 1..m}`: the free node `t0` plus the
/// even-indexed zeros of `U_{2m}`. Rejects `t0` at a zero of `U_{2m}`.
pub fn nodes_u_zeros_even(m: usize, t0: f64) -> Result<NodeSet> {
    if !t0.is_finite() || t0.abs() >= 1.0 {
        return Err(Error::NodeOutOfRange { value: t0 });
    }
    let magnitude = eval_u(2 * m, t0).abs();
    if magnitude <= U_ZERO_TOLERANCE {
        return Err(Error::T0AtChebyshevZero {
            t0,
            degree: 2 * m,
            magnitude,
            tolerance: U_ZERO_TOLERANCE,
        });
    }
    let mut values = vec![t0];
    values.extend((1..=m).map(|j| (2.0 * j as f64 * PI / (2 * m + 1) as f64).cos()));
    NodeSet::new(values, Parity::Even, Scheme::UZeros)
}

/// `{cos(2j*pi/(2m+1)) : j = 1..m}`, the odd-parity U-zero scheme. The
/// values are nonzero automatically; asymmetry is re-validated numerically
/// by the constructor rather than assumed.
pub fn nodes_u_zeros_odd(m: usize) -> NodeSet {
    assert!(m >= 1);
    let values = (1..=m)
        .map(|j| (2.0 * j as f64 * PI / (2 * m + 1) as f64).cos())
        .collect();
    NodeSet::new(values, Parity::Odd, Scheme::UZeros)
        .expect("generated u-zero nodes are valid")
}

/// Equidistant test family `t_k = (k+1)/(m+2)`, `k = 0..=m`.
pub fn nodes_equidistant(m: usize) -> NodeSet {
    let values = (0..=m).map(|k| (k + 1) as f64 / (m + 2) as f64).collect();
    NodeSet::new(values, Parity::Even, Scheme::Equidistant)
        .expect("generated equidistant nodes are valid")
}

/// Odd-parity analog of [`nodes_equidistant`]: `t_k = (k+1)/(m+1)`,
/// `k = 0..m-1`.
pub fn nodes_equidistant_odd(m: usize) -> NodeSet {
    assert!(m >= 1);
    let values = (0..m).map(|k| (k + 1) as f64 / (m + 1) as f64).collect();
    NodeSet::new(values, Parity::Odd, Scheme::Equidistant)
        .expect("generated equidistant nodes are valid")
}

/// Chebyshev test family `t_k = cos((k+1)*pi/(2m+4))`, `k = 0..=m`.
pub fn nodes_chebyshev(m: usize) -> NodeSet {
    let values = (0..=m)
        .map(|k| ((k + 1) as f64 * PI / (2 * m + 4) as f64).cos())
        .collect();
    NodeSet::new(values, Parity::Even, Scheme::Chebyshev)
        .expect("generated chebyshev nodes are valid")
}

/// Odd-parity analog of [`nodes_chebyshev`]: `t_k = cos((k+1)*pi/(2m+2))`,
/// `k = 0..m-1`.
pub fn nodes_chebyshev_odd(m: usize) -> NodeSet {
    assert!(m >= 1);
    let values = (0..m)
        .map(|k| ((k + 1) as f64 * PI / (2 * m + 2) as f64).cos())
        .collect();
    NodeSet::new(values, Parity::Odd, Scheme::Chebyshev)
        .expect("generated chebyshev nodes are valid")
}

/// Node set of the given scheme sized for target degree `n`. The U-zero
/// scheme takes the free node `t0` in the even case and ignores it in the
/// odd case.
pub fn nodes_for_degree(scheme: Scheme, n: usize, t0: f64) -> Result<NodeSet> {
    match Parity::of_degree(n) {
        Parity::Even => {
            let m = n / 2;
            match scheme {
                Scheme::Obrechkoff => Ok(nodes_obrechkoff(m)),
                Scheme::UZeros => nodes_u_zeros_even(m, t0),
                Scheme::Equidistant => Ok(nodes_equidistant(m)),
                Scheme::Chebyshev => Ok(nodes_chebyshev(m)),
                Scheme::Custom => Err(Error::Parse {
                    line: 0,
                    message: "custom scheme requires an explicit node file".to_string(),
                }),
            }
        }
        Parity::Odd => {
            let m = n.div_ceil(2);
            match scheme {
                Scheme::Obrechkoff => Ok(nodes_obrechkoff_odd(m)),
                Scheme::UZeros => Ok(nodes_u_zeros_odd(m)),
                Scheme::Equidistant => Ok(nodes_equidistant_odd(m)),
                Scheme::Chebyshev => Ok(nodes_chebyshev_odd(m)),
                Scheme::Custom => Err(Error::Parse {
                    line: 0,
                    message: "custom scheme requires an explicit node file".to_string(),
                }),
            }
        }
    }
}
