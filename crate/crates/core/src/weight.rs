//! Exact arithmetic on the affine weight lattice P = sum Z*Lambda_i + C*delta.
//!
//! A weight is stored as (classical part in fundamental-weight coordinates,
//! level, delta coefficient). The delta coefficient is an exact rational:
//! translation picks up (lambda,lambda)/2 terms that are genuinely
//! non-integral (1/4 in A_1).

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::cartan::RootSystemData;
use crate::Rat;

/// Finite weight in fundamental-weight coordinates over I_0.
pub type FiniteWeight = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineWeight {
    /// <lambda, alpha_i^v> for i in I_0 (0-based storage for 1-based nodes).
    pub classical: Vec<i64>,
    /// <lambda, K>.
    pub level: i64,
    /// Coefficient of delta.
    pub delta: Rat,
}

impl AffineWeight {
    pub fn zero(rank: usize) -> Self {
        AffineWeight {
            classical: vec![0; rank],
            level: 0,
            delta: Rat::from_integer(0),
        }
    }

    /// Embeds a finite weight at level 0 with no delta part.
    pub fn from_classical(classical: FiniteWeight) -> Self {
        AffineWeight {
            classical,
            level: 0,
            delta: Rat::from_integer(0),
        }
    }

    /// ell * Lambda_0.
    pub fn lambda0(rank: usize, ell: i64) -> Self {
        AffineWeight {
            classical: vec![0; rank],
            level: ell,
            delta: Rat::from_integer(0),
        }
    }

    pub fn delta_weight(rank: usize) -> Self {
        AffineWeight {
            classical: vec![0; rank],
            level: 0,
            delta: Rat::from_integer(1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.level == 0 && self.delta == Rat::from_integer(0) && self.classical.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        AffineWeight {
            classical: self.classical.iter().map(|c| c * k).collect(),
            level: self.level * k,
            delta: self.delta * Rat::from_integer(k),
        }
    }

    /// Rendering "a1*w1+a2*w2 + k*L0 + (p/q)*delta" with zero terms dropped.
    pub fn render(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (i, &c) in self.classical.iter().enumerate() {
            if c != 0 {
                parts.push(format!("{}*w{}", c, i + 1));
            }
        }
        if self.level != 0 {
            parts.push(format!("{}*L0", self.level));
        }
        if self.delta != Rat::from_integer(0) {
            if self.delta.is_integer() {
                parts.push(format!("{}*delta", self.delta.to_integer()));
            } else {
                parts.push(format!("({})*delta", self.delta));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }
}

impl fmt::Display for AffineWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl Add for &AffineWeight {
    type Output = AffineWeight;
    fn add(self, rhs: &AffineWeight) -> AffineWeight {
        AffineWeight {
            classical: self
                .classical
                .iter()
                .zip(&rhs.classical)
                .map(|(a, b)| a + b)
                .collect(),
            level: self.level + rhs.level,
            delta: self.delta + rhs.delta,
        }
    }
}

impl Sub for &AffineWeight {
    type Output = AffineWeight;
    fn sub(self, rhs: &AffineWeight) -> AffineWeight {
        AffineWeight {
            classical: self
                .classical
                .iter()
                .zip(&rhs.classical)
                .map(|(a, b)| a - b)
                .collect(),
            level: self.level - rhs.level,
            delta: self.delta - rhs.delta,
        }
    }
}

impl Neg for &AffineWeight {
    type Output = AffineWeight;
    fn neg(self) -> AffineWeight {
        self.scale(-1)
    }
}

/// Simple root alpha_i as an affine weight; alpha_0 = delta - theta.
pub fn simple_root(rs: &RootSystemData, i: usize) -> AffineWeight {
    assert!(i <= rs.rank, "node {i} out of range");
    if i == 0 {
        let theta = rs.theta_weight();
        AffineWeight {
            classical: theta.iter().map(|c| -c).collect(),
            level: 0,
            delta: Rat::from_integer(1),
        }
    } else {
        AffineWeight::from_classical(rs.simple_root_weight(i))
    }
}

/// <lambda, alpha_i^v> for i in I. The i = 0 pairing is
/// level - <classical part, theta^v>.
pub fn pair_coroot(rs: &RootSystemData, lambda: &AffineWeight, i: usize) -> i64 {
    assert!(i <= rs.rank, "node {i} out of range");
    if i == 0 {
        let theta_pair: i64 = (0..rs.rank)
            .map(|j| rs.comarks[j + 1] * lambda.classical[j])
            .sum();
        lambda.level - theta_pair
    } else {
        lambda.classical[i - 1]
    }
}

/// The W-invariant symmetric bilinear form on h*.
pub fn bilinear(rs: &RootSystemData, a: &AffineWeight, b: &AffineWeight) -> Rat {
    rs.finite_form(&a.classical, &b.classical)
        + Rat::from_integer(a.level) * b.delta
        + a.delta * Rat::from_integer(b.level)
}

/// Simple reflection s_i(lambda) = lambda - <lambda, alpha_i^v> alpha_i.
pub fn reflect(rs: &RootSystemData, i: usize, lambda: &AffineWeight) -> AffineWeight {
    let m = pair_coroot(rs, lambda, i);
    let alpha = simple_root(rs, i);
    lambda - &alpha.scale(m)
}

/// Translation t_mu(lambda) = lambda + <lambda,K> mu
///   - ((lambda,mu) + (mu,mu)/2 * <lambda,K>) delta, for mu in P_0.
pub fn translate(rs: &RootSystemData, mu: &FiniteWeight, lambda: &AffineWeight) -> AffineWeight {
    let mu_aff = AffineWeight::from_classical(mu.clone());
    let level = Rat::from_integer(lambda.level);
    let shift = bilinear(rs, lambda, &mu_aff) + rs.finite_form(mu, mu) / Rat::from_integer(2) * level;
    let mut out = lambda + &mu_aff.scale(lambda.level);
    out.delta -= shift;
    out
}
