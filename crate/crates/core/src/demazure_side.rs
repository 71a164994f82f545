//! The Demazure side: iterated D_{t_{w_0(w_{r_j})}} with interleaved
//! multiplications by e^{(l_j - l_{j-1}) Lambda_0}, plus the normalization
//! stripping e^{l_p Lambda_0} q^C. The constant C is an output, never an
//! input.

use crate::cartan::RootSystemData;
use crate::error::{Error, Result};
use crate::groupring::{decompose_classical, demazure_extended, CharacterPoly, ClassicalDecomposition};
use crate::nu::NuSequence;
use crate::weight::AffineWeight;
use crate::weyl::{finite_act, longest_element, translation_of, ExtendedWeylElement};
use crate::Rat;

/// The translation element t_{w_0(w_r)}.
pub fn kr_translation(rs: &RootSystemData, r: usize) -> Result<ExtendedWeylElement> {
    if r == 0 || r > rs.rank {
        return Err(Error::Domain(format!("node {r} out of range 1..={}", rs.rank)));
    }
    let w0 = longest_element(rs);
    let mut wr = vec![0i64; rs.rank];
    wr[r - 1] = 1;
    translation_of(rs, &finite_act(rs, &w0, &wr))
}

/// Raw right-hand side of the main character identity:
/// X_1 = D_{t_{w_0(w_{r_1})}}(e^{l_1 Lambda_0}),
/// X_j = D_{t_{w_0(w_{r_j})}}(e^{(l_j - l_{j-1}) Lambda_0} X_{j-1}).
/// `budget` caps the number of monomials of every intermediate polynomial.
pub fn dside_raw(rs: &RootSystemData, nu: &NuSequence, budget: Option<u64>) -> Result<CharacterPoly> {
    nu.validate(rs)?;
    if !nu.levels_sorted() {
        return Err(Error::Precondition(
            "dside requires l_1 <= ... <= l_p; sort nu first (the M-side is reorder-invariant, so sorting is sound for verification)"
                .into(),
        ));
    }
    let mut acc = CharacterPoly::monomial(AffineWeight::zero(rs.rank), 1);
    let mut prev_level = 0i64;
    for &(r, l) in &nu.pairs {
        let shift = AffineWeight::lambda0(rs.rank, l - prev_level);
        acc = acc.mul_monomial(&shift, 1);
        let t = kr_translation(rs, r)?;
        acc = demazure_extended(rs, &t, &acc)?;
        if let Some(b) = budget {
            if acc.num_terms() as u64 > b {
                return Err(Error::BudgetExceeded {
                    budget: b,
                    hint: format!(
                        "intermediate Demazure polynomial reached {} monomials; raise --budget or shrink nu",
                        acc.num_terms()
                    ),
                });
            }
        }
        prev_level = l;
    }
    Ok(acc)
}

/// Normalized Demazure side: strips e^{l_p Lambda_0}, shifts by q^C so the
/// coefficient at lambda_nu becomes exactly q^0 * 1, and decomposes into
/// classical characters. Returns the decomposition and C.
pub fn dside_normalized(
    rs: &RootSystemData,
    nu: &NuSequence,
    budget: Option<u64>,
) -> Result<(ClassicalDecomposition, Rat)> {
    let raw = dside_raw(rs, nu, budget)?;
    let top_level = nu.pairs.last().map_or(0, |&(_, l)| l);
    let lambda_nu = nu.top_weight(rs.rank);
    // Locate the top monomial and its delta exponent.
    let mut top_delta: Option<Rat> = None;
    for (w, &c) in raw.terms() {
        if w.level != top_level {
            return Err(Error::Internal(format!(
                "dside monomial {} has level {}, expected {}",
                w.render(),
                w.level,
                top_level
            )));
        }
        if w.classical == lambda_nu {
            if top_delta.is_some() || c != 1 {
                return Err(Error::Internal(
                    "coefficient at lambda_nu is not a single q-power with coefficient 1".into(),
                ));
            }
            top_delta = Some(w.delta);
        }
    }
    let top_delta = top_delta.ok_or_else(|| {
        Error::Internal("coefficient at lambda_nu is absent from the Demazure side".into())
    })?;
    // raw = e^{l_p Lambda_0} q^C * normalized with q = e^{-delta}: C = -top_delta.
    let c_const = -top_delta;
    let normalized = raw.map_exponents(|w| AffineWeight {
        classical: w.classical.clone(),
        level: 0,
        delta: w.delta - top_delta,
    });
    let dec = decompose_classical(rs, &normalized)?;
    Ok((dec, c_const))
}
