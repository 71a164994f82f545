//! The fermionic form M(nu, mu, q): configurations, vacancy numbers,
//! cocharge, and the full M-side decomposition.
//!
//! In the simply-laced normalization used here (where (alpha_a, alpha_b) is
//! just the Cartan entry):
//!
//!   p_i^(a)  = sum_{j: r_j = a} min(i, l_j)
//!              - sum_{b,j} (alpha_a, alpha_b) min(i,j) m_j^(b)
//!   cc(m)    = 1/2 sum (alpha_a,alpha_b) min(i,j) m_i^(a) m_j^(b)
//!              - sum_{(a,i)} sum_{j: r_j = a} min(i, l_j) m_i^(a)
//!   M        = sum_m q^{cc(m)} prod_{(a,i)} [p_i^(a) + m_i^(a), m_i^(a)]_q
//!
//! summed over configurations with sum_i i m_i^(a) alpha_a = lambda_nu - mu
//! and all vacancy numbers nonnegative (configurations with a negative
//! vacancy number contribute a zero binomial and are pruned during
//! enumeration; the equivalence is unit-tested).

use std::collections::BTreeMap;

use crate::cartan::RootSystemData;
use crate::error::Result;
use crate::groupring::ClassicalDecomposition;
use crate::nu::NuSequence;
use crate::qpoly::{q_binomial, QPoly};
use crate::weight::FiniteWeight;
use crate::Rat;

/// Finitely supported map (a in I_0, i in Z_{>0}) -> m_i^(a) >= 0, stored
/// row-per-node as part multiplicities: rows[a-1][i-1] = m_i^(a).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    pub rows: Vec<Vec<i64>>,
}

impl Configuration {
    pub fn empty(rank: usize) -> Self {
        Configuration {
            rows: vec![Vec::new(); rank],
        }
    }

    pub fn get(&self, a: usize, i: usize) -> i64 {
        self.rows[a - 1].get(i - 1).copied().unwrap_or(0)
    }

    /// Iterates over nonzero entries as (a, i, m).
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.rows.iter().enumerate().flat_map(|(a0, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, &m)| m != 0)
                .map(move |(i0, &m)| (a0 + 1, i0 + 1, m))
        })
    }
}

/// Vacancy number p_i^(a).
pub fn vacancy(rs: &RootSystemData, m: &Configuration, nu: &NuSequence, a: usize, i: usize) -> i64 {
    let i = i as i64;
    let mut p: i64 = nu
        .pairs
        .iter()
        .filter(|&&(r, _)| r == a)
        .map(|&(_, l)| i.min(l))
        .sum();
    for (b, j, mj) in m.entries() {
        p -= rs.cartan[a - 1][b - 1] * i.min(j as i64) * mj;
    }
    p
}

/// Cocharge statistic cc(m).
pub fn cocharge(rs: &RootSystemData, m: &Configuration, nu: &NuSequence) -> i64 {
    let mut twice_quad: i64 = 0;
    for (a, i, ma) in m.entries() {
        for (b, j, mb) in m.entries() {
            twice_quad += rs.cartan[a - 1][b - 1] * (i as i64).min(j as i64) * ma * mb;
        }
    }
    debug_assert_eq!(twice_quad % 2, 0);
    let mut linear: i64 = 0;
    for (a, i, ma) in m.entries() {
        let li: i64 = nu
            .pairs
            .iter()
            .filter(|&&(r, _)| r == a)
            .map(|&(_, l)| (i as i64).min(l))
            .sum();
        linear += li * ma;
    }
    twice_quad / 2 - linear
}

/// Partitions of k as part-multiplicity vectors (index i-1 = multiplicity of
/// part i), in colexicographic order.
fn partitions(k: i64) -> Vec<Vec<i64>> {
    fn rec(remaining: i64, max_part: i64, current: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            let count = remaining / part;
            for c in (1..=count).rev() {
                while current.len() < part as usize {
                    current.push(0);
                }
                current[part as usize - 1] = c;
                rec(remaining - c * part, part - 1, current, out);
                current[part as usize - 1] = 0;
                while current.last() == Some(&0) {
                    current.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(k, k, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// All admissible configurations for (nu, mu): the weight constraint
/// lambda_nu - mu = sum_a k_a alpha_a with k_a in Z_{>=0}, partitions per
/// node, and all vacancy numbers nonnegative.
pub fn enumerate_configs(
    rs: &RootSystemData,
    nu: &NuSequence,
    mu: &FiniteWeight,
) -> Vec<Configuration> {
    enumerate_configs_impl(rs, nu, mu, true)
}

pub(crate) fn enumerate_configs_impl(
    rs: &RootSystemData,
    nu: &NuSequence,
    mu: &FiniteWeight,
    prune_negative_vacancy: bool,
) -> Vec<Configuration> {
    let rank = rs.rank;
    let lambda = nu.top_weight(rank);
    let diff: Vec<i64> = (0..rank).map(|a| lambda[a] - mu[a]).collect();
    let k = rs.weight_to_root(&diff);
    if k.iter().any(|c| !c.is_integer() || *c < Rat::from_integer(0)) {
        return Vec::new();
    }
    let k: Vec<i64> = k.iter().map(|c| c.to_integer()).collect();
    let per_node: Vec<Vec<Vec<i64>>> = k.iter().map(|&ka| partitions(ka)).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; rank];
    'outer: loop {
        let config = Configuration {
            rows: (0..rank).map(|a| per_node[a][idx[a]].clone()).collect(),
        };
        let admissible = !prune_negative_vacancy
            || config
                .rows
                .iter()
                .enumerate()
                .all(|(a0, row)| {
                    (1..=row.len()).all(|i| vacancy(rs, &config, nu, a0 + 1, i) >= 0)
                });
        if admissible {
            out.push(config);
        }
        // odometer over partition choices
        for a in (0..rank).rev() {
            idx[a] += 1;
            if idx[a] < per_node[a].len() {
                continue 'outer;
            }
            idx[a] = 0;
            if a == 0 {
                break 'outer;
            }
        }
        if rank == 0 {
            break;
        }
    }
    out
}

/// The fermionic form M(nu, mu, q).
pub fn fermionic_form(rs: &RootSystemData, nu: &NuSequence, mu: &FiniteWeight) -> QPoly {
    let mut total = QPoly::zero();
    for config in enumerate_configs(rs, nu, mu) {
        let mut term = QPoly::monomial(Rat::from_integer(cocharge(rs, &config, nu)), 1);
        for (a, i, m) in config.entries() {
            let p = vacancy(rs, &config, nu, a, i);
            term = term.mul(&q_binomial(p + m, m));
            if term.is_zero() {
                break;
            }
        }
        total = total.add(&term);
    }
    total
}

/// The full M-side: mu -> M(nu, mu, q) over all dominant mu below lambda_nu.
pub fn mside(rs: &RootSystemData, nu: &NuSequence) -> Result<ClassicalDecomposition> {
    nu.validate(rs)?;
    let mut out = ClassicalDecomposition::default();
    for mu in dominant_weights_below(rs, &nu.top_weight(rs.rank)) {
        let m = fermionic_form(rs, nu, &mu);
        if !m.is_zero() {
            out.coeffs.insert(mu, m);
        }
    }
    Ok(out)
}

/// All dominant mu with lambda - mu in Q_0^+. Uses positivity of the inverse
/// Cartan matrix to bound the root-coordinate box.
pub fn dominant_weights_below(rs: &RootSystemData, lambda: &FiniteWeight) -> Vec<FiniteWeight> {
    let rank = rs.rank;
    let bound = rs.weight_to_root(lambda);
    if bound.iter().any(|c| *c < Rat::from_integer(0)) {
        return Vec::new();
    }
    let bound: Vec<i64> = bound.iter().map(|c| c.floor().to_integer()).collect();
    let mut out = Vec::new();
    let mut k = vec![0i64; rank];
    'outer: loop {
        let mu: Vec<i64> = (0..rank)
            .map(|i| lambda[i] - (0..rank).map(|j| rs.cartan[i][j] * k[j]).sum::<i64>())
            .collect();
        if rs.is_dominant(&mu) {
            out.push(mu);
        }
        for a in (0..rank).rev() {
            k[a] += 1;
            if k[a] <= bound[a] {
                continue 'outer;
            }
            k[a] = 0;
            if a == 0 {
                break 'outer;
            }
        }
        if rank == 0 {
            break;
        }
    }
    out.sort();
    out
}

/// Configurations keyed for golden-file determinism; used by reports.
pub fn config_summary(m: &Configuration) -> BTreeMap<(usize, usize), i64> {
    m.entries().map(|(a, i, v)| ((a, i), v)).collect()
}
