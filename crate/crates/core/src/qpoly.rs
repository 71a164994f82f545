//! Laurent polynomials in q with integer coefficients and exact rational
//! exponents. Rational exponents arise from the raw delta-shifts of the
//! Demazure side; after normalization only integers remain, and the
//! fermionic side produces integer exponents from the start.

use std::collections::BTreeMap;
use std::fmt;

use crate::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QPoly {
    /// exponent -> nonzero coefficient
    terms: BTreeMap<Rat, i64>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly::default()
    }

    pub fn one() -> Self {
        QPoly::monomial(Rat::from_integer(0), 1)
    }

    pub fn monomial(exp: Rat, coeff: i64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(exp, coeff);
        }
        QPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rat, &i64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &Rat) -> i64 {
        self.terms.get(exp).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, exp: Rat, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(exp).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (&e, &c) in &other.terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        let mut out = QPoly::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &other.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    /// Multiplies by q^shift.
    pub fn shifted(&self, shift: Rat) -> QPoly {
        QPoly {
            terms: self.terms.iter().map(|(&e, &c)| (e + shift, c)).collect(),
        }
    }

    pub fn eval_at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn all_exponents_integral(&self) -> bool {
        self.terms.keys().all(|e| e.is_integer())
    }

    pub fn max_exponent(&self) -> Option<Rat> {
        self.terms.keys().next_back().copied()
    }

    /// Renders as e.g. "q^-2 + 2*q^-1 + 1".
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (&e, &c) in self.terms.iter().rev() {
            let base = if e == Rat::from_integer(0) {
                format!("{c}")
            } else {
                let pow = if e.is_integer() {
                    format!("q^{}", e.to_integer())
                } else {
                    format!("q^({e})")
                };
                match c {
                    1 => pow,
                    -1 => format!("-{pow}"),
                    _ => format!("{c}*{pow}"),
                }
            };
            parts.push(base);
        }
        parts.join(" + ")
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Gaussian binomial [n choose k]_q, expanded exactly over Z.
/// Zero when k < 0 or n < k.
pub fn q_binomial(n: i64, k: i64) -> QPoly {
    if k < 0 || n < k {
        return QPoly::zero();
    }
    let k = k.min(n - k);
    // [n k]_q = prod_{t=1}^{k} (1 - q^{n-k+t}) / (1 - q^t), computed by the
    // Pascal recurrence to stay in Z[q] throughout.
    let n = n as usize;
    let mut row: Vec<QPoly> = vec![QPoly::one()];
    for m in 1..=n {
        let mut next: Vec<QPoly> = Vec::with_capacity(row.len() + 1);
        for j in 0..=m.min(k as usize) {
            // [m j] = [m-1 j-1] + q^j [m-1 j]
            let mut val = QPoly::zero();
            if j >= 1 && j - 1 < row.len() {
                val = val.add(&row[j - 1]);
            }
            if j < row.len() && m - 1 >= j {
                val = val.add(&row[j].shifted(Rat::from_integer(j as i64)));
            }
            next.push(val);
        }
        row = next;
    }
    row[k as usize].clone()
}
