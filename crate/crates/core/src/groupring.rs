//! Sparse exact arithmetic in the group ring Z[P], Demazure operators,
//! classical characters, and decomposition into irreducible characters.
//!
//! A Demazure step is evaluated by the monomial closed form of the
//! divided-difference operator, never by division in the ring: with
//! m = <lambda, alpha_i^v>,
//!   m >= 0  -> sum_{k=0}^{m} e^{lambda - k alpha_i}
//!   m = -1  -> 0
//!   m <= -2 -> -sum_{k=1}^{-m-1} e^{lambda + k alpha_i}

use std::collections::BTreeMap;

use crate::cartan::RootSystemData;
use crate::error::{Error, Result};
use crate::qpoly::QPoly;
use crate::weight::{pair_coroot, simple_root, AffineWeight, FiniteWeight};
use crate::weyl::{decompose_reduced, longest_element, sigma_act, ExtendedWeylElement};
use crate::Rat;

/// Finitely supported map AffineWeight -> integer; an element of Z[P].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CharacterPoly {
    terms: BTreeMap<AffineWeight, i64>,
}

impl CharacterPoly {
    pub fn zero() -> Self {
        CharacterPoly::default()
    }

    pub fn monomial(weight: AffineWeight, coeff: i64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(weight, coeff);
        }
        CharacterPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, weight: &AffineWeight) -> i64 {
        self.terms.get(weight).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AffineWeight, &i64)> {
        self.terms.iter()
    }

    pub fn total_mass(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn add_term(&mut self, weight: AffineWeight, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry(weight) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    pub fn add(&self, other: &CharacterPoly) -> CharacterPoly {
        let mut out = self.clone();
        for (w, &c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &CharacterPoly) -> CharacterPoly {
        let mut out = self.clone();
        for (w, &c) in &other.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    /// Multiplication by the monomial e^shift (times a coefficient).
    pub fn mul_monomial(&self, shift: &AffineWeight, coeff: i64) -> CharacterPoly {
        let mut out = CharacterPoly::zero();
        for (w, &c) in &self.terms {
            out.add_term(w + shift, c * coeff);
        }
        out
    }

    pub fn mul(&self, other: &CharacterPoly) -> CharacterPoly {
        let mut out = CharacterPoly::zero();
        for (w1, &c1) in &self.terms {
            for (w2, &c2) in &other.terms {
                out.add_term(w1 + w2, c1 * c2);
            }
        }
        out
    }

    /// Applies a map to every exponent (must stay injective on support for
    /// coefficient merging to be harmless; merging is handled either way).
    pub fn map_exponents(&self, f: impl Fn(&AffineWeight) -> AffineWeight) -> CharacterPoly {
        let mut out = CharacterPoly::zero();
        for (w, &c) in &self.terms {
            out.add_term(f(w), c);
        }
        out
    }

    /// JSON rendering: list of {"weight": ..., "coeff": ...}.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(w, c)| {
                    serde_json::json!({ "weight": w.render(), "coeff": c })
                })
                .collect(),
        )
    }
}

/// Single Demazure operator D_i, by the monomial closed form.
pub fn demazure_step(rs: &RootSystemData, i: usize, f: &CharacterPoly) -> CharacterPoly {
    let alpha = simple_root(rs, i);
    let mut out = CharacterPoly::zero();
    for (lambda, &c) in f.terms() {
        let m = pair_coroot(rs, lambda, i);
        if m >= 0 {
            let mut w = lambda.clone();
            for _ in 0..=m {
                out.add_term(w.clone(), c);
                w = &w - &alpha;
            }
        } else if m <= -2 {
            let mut w = lambda + &alpha;
            for _ in 1..=(-m - 1) {
                out.add_term(w.clone(), -c);
                w = &w + &alpha;
            }
        }
        // m = -1: the monomial is annihilated
    }
    out
}

/// D_w for an extended element w = w' tau: apply tau first (on exponents),
/// then the Demazure steps along a reduced word of w' from right to left.
pub fn demazure_extended(
    rs: &RootSystemData,
    w: &ExtendedWeylElement,
    f: &CharacterPoly,
) -> Result<CharacterPoly> {
    let (word, sigma) = decompose_reduced(rs, w)?;
    Ok(demazure_word(rs, &word, &sigma, f))
}

/// D_{s_{i_1} ... s_{i_m} sigma}: sigma acts on exponents first, then the
/// single-node operators are applied right to left.
pub fn demazure_word(
    rs: &RootSystemData,
    word: &[usize],
    sigma: &crate::weyl::DiagramAutomorphism,
    f: &CharacterPoly,
) -> CharacterPoly {
    let mut out = if sigma.is_identity() {
        f.clone()
    } else {
        f.map_exponents(|lam| sigma_act(rs, sigma, lam))
    };
    for &i in word.iter().rev() {
        out = demazure_step(rs, i, &out);
    }
    out
}

/// Character of the irreducible g_0-module with dominant highest weight mu,
/// as D_{w_0}(e^mu) over the finite Demazure operators.
pub fn classical_character(rs: &RootSystemData, mu: &FiniteWeight) -> Result<CharacterPoly> {
    if !rs.is_dominant(mu) {
        return Err(Error::Domain(format!("weight {mu:?} is not dominant")));
    }
    let w0 = longest_element(rs);
    let mut out = CharacterPoly::monomial(AffineWeight::from_classical(mu.clone()), 1);
    for &i in w0.word.iter().rev() {
        out = demazure_step(rs, i, &out);
    }
    Ok(out)
}

/// Classical projection cl: zero the delta part of every exponent.
pub fn cl_project(f: &CharacterPoly) -> CharacterPoly {
    f.map_exponents(|w| AffineWeight {
        classical: w.classical.clone(),
        level: w.level,
        delta: Rat::from_integer(0),
    })
}

/// Map dominant FiniteWeight -> Laurent polynomial in q; the coefficients of
/// an expansion into irreducible classical characters.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClassicalDecomposition {
    pub coeffs: BTreeMap<FiniteWeight, QPoly>,
}

impl ClassicalDecomposition {
    /// Reconstructs sum_mu coeff_mu(q) * ch V(mu) as a CharacterPoly
    /// (level 0, q-powers as delta-exponents).
    pub fn reconstruct(&self, rs: &RootSystemData) -> Result<CharacterPoly> {
        let mut out = CharacterPoly::zero();
        for (mu, poly) in &self.coeffs {
            let ch = classical_character(rs, mu)?;
            for (&e, &c) in poly.terms() {
                // q^e = e^{-e delta}
                let shift = AffineWeight {
                    classical: vec![0; rs.rank],
                    level: 0,
                    delta: -e,
                };
                out = out.add(&ch.mul_monomial(&shift, c));
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|(mu, poly)| {
                    let wt = AffineWeight::from_classical(mu.clone());
                    serde_json::json!({
                        "mu": wt.render(),
                        "poly": poly
                            .terms()
                            .map(|(e, c)| serde_json::json!({
                                "exponent": e.to_string(),
                                "coeff": c,
                            }))
                            .collect::<Vec<_>>(),
                    })
                })
                .collect(),
        )
    }
}

/// Greedy peel of a (level-0) W_0-invariant polynomial into irreducible
/// classical characters with Laurent-q coefficients. The q-powers are read
/// off the delta-exponents via q = e^{-delta}.
pub fn decompose_classical(rs: &RootSystemData, f: &CharacterPoly) -> Result<ClassicalDecomposition> {
    let mut rest = f.clone();
    let mut out = ClassicalDecomposition::default();
    while !rest.is_zero() {
        // Maximal surviving classical weight: maximal height, ties by lex.
        let top = rest
            .terms()
            .map(|(w, _)| w.classical.clone())
            .max_by(|a, b| {
                rs.height(a)
                    .cmp(&rs.height(b))
                    .then_with(|| a.cmp(b))
            })
            .expect("nonempty");
        if !rs.is_dominant(&top) {
            return Err(Error::Internal(format!(
                "not a character: leading classical weight {top:?} is not dominant"
            )));
        }
        // Collect its full q-polynomial.
        let mut poly = QPoly::zero();
        for (w, &c) in rest.terms() {
            if w.classical == top {
                if w.level != 0 {
                    return Err(Error::Internal(
                        "decompose_classical expects level-0 input".into(),
                    ));
                }
                poly.add_term(-w.delta, c);
            }
        }
        let ch = classical_character(rs, &top)?;
        for (&e, &c) in poly.terms() {
            let shift = AffineWeight {
                classical: vec![0; rs.rank],
                level: 0,
                delta: -e,
            };
            rest = rest.sub(&ch.mul_monomial(&shift, c));
        }
        if out.coeffs.insert(top.clone(), poly).is_some() {
            return Err(Error::Internal(format!(
                "not a character: weight {top:?} resurfaced after subtraction"
            )));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{root_system, Family};
    use crate::weyl::{finite_act, translation_of, FiniteWeylElement};
    use rand::{Rng, SeedableRng};

    fn mono(classical: Vec<i64>, level: i64, delta: Rat) -> CharacterPoly {
        CharacterPoly::monomial(
            AffineWeight {
                classical,
                level,
                delta,
            },
            1,
        )
    }

    #[test]
    fn demazure_step_closed_form() {
        let rs = root_system(Family::A, 1).unwrap();
        // <lambda, alpha_1^v> = 2
        let f = mono(vec![2], 0, Rat::from_integer(0));
        let got = demazure_step(&rs, 1, &f);
        let mut expect = CharacterPoly::zero();
        for k in [2i64, 0, -2] {
            expect.add_term(AffineWeight::from_classical(vec![k]), 1);
        }
        assert_eq!(got, expect);
        // m = -1 annihilates
        let f = mono(vec![-1], 0, Rat::from_integer(0));
        assert!(demazure_step(&rs, 1, &f).is_zero());
        // m = -3: -e^{lambda+a} - e^{lambda+2a}
        let f = mono(vec![-3], 0, Rat::from_integer(0));
        let got = demazure_step(&rs, 1, &f);
        let mut expect = CharacterPoly::zero();
        expect.add_term(AffineWeight::from_classical(vec![-1]), -1);
        expect.add_term(AffineWeight::from_classical(vec![1]), -1);
        assert_eq!(got, expect);
        // D_1(e^{Lambda_0 + w1}) = e^{Lambda_0+w1} + e^{Lambda_0-w1}
        let f = mono(vec![1], 1, Rat::from_integer(0));
        let got = demazure_step(&rs, 1, &f);
        let mut expect = CharacterPoly::zero();
        expect.add_term(
            AffineWeight {
                classical: vec![1],
                level: 1,
                delta: Rat::from_integer(0),
            },
            1,
        );
        expect.add_term(
            AffineWeight {
                classical: vec![-1],
                level: 1,
                delta: Rat::from_integer(0),
            },
            1,
        );
        assert_eq!(got, expect);
    }

    #[test]
    fn demazure_extended_a1() {
        let rs = root_system(Family::A, 1).unwrap();
        let t = translation_of(&rs, &vec![-1]).unwrap();
        let f = CharacterPoly::monomial(AffineWeight::lambda0(1, 1), 1);
        let got = demazure_extended(&rs, &t, &f).unwrap();
        let mut expect = CharacterPoly::zero();
        expect.add_term(
            AffineWeight {
                classical: vec![1],
                level: 1,
                delta: Rat::new(-1, 4),
            },
            1,
        );
        expect.add_term(
            AffineWeight {
                classical: vec![-1],
                level: 1,
                delta: Rat::new(-1, 4),
            },
            1,
        );
        assert_eq!(got, expect);
        // identity element acts as identity
        let id = crate::weyl::ExtendedWeylElement::identity(1);
        assert_eq!(demazure_extended(&rs, &id, &f).unwrap(), f);
    }

    fn random_poly(rng: &mut impl Rng, rank: usize, nterms: usize) -> CharacterPoly {
        let mut f = CharacterPoly::zero();
        for _ in 0..nterms {
            f.add_term(
                AffineWeight {
                    classical: (0..rank).map(|_| rng.gen_range(-3..=3)).collect(),
                    level: rng.gen_range(0..=2),
                    delta: Rat::from_integer(rng.gen_range(-2..=2)),
                },
                rng.gen_range(-3..=3),
            );
        }
        f
    }

    #[test]
    fn demazure_idempotent() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for (fam, rank) in [(Family::A, 1), (Family::A, 2), (Family::D, 4)] {
            let rs = root_system(fam, rank).unwrap();
            for _ in 0..20 {
                let f = random_poly(&mut rng, rank, 4);
                for i in 0..=rank {
                    let once = demazure_step(&rs, i, &f);
                    let twice = demazure_step(&rs, i, &once);
                    assert_eq!(once, twice);
                }
            }
        }
    }

    #[test]
    fn invariant_factor_rule() {
        // if f is s_i-invariant then D_i(f g) = f D_i(g)
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        for (fam, rank) in [(Family::A, 2), (Family::D, 4)] {
            let rs = root_system(fam, rank).unwrap();
            for _ in 0..10 {
                let g = random_poly(&mut rng, rank, 3);
                for i in 1..=rank {
                    // symmetrize a random monomial to get an s_i-invariant f
                    let raw = random_poly(&mut rng, rank, 2);
                    let f = raw.add(&raw.map_exponents(|w| crate::weight::reflect(&rs, i, w)));
                    let lhs = demazure_step(&rs, i, &f.mul(&g));
                    let rhs = f.mul(&demazure_step(&rs, i, &g));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn reduced_word_independence() {
        // two reduced words of w_0 in A_2: [1,2,1] and [2,1,2]
        let rs = root_system(Family::A, 2).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let f = random_poly(&mut rng, 2, 4);
            let apply = |word: &[usize], f: &CharacterPoly| {
                let mut out = f.clone();
                for &i in word.iter().rev() {
                    out = demazure_step(&rs, i, &out);
                }
                out
            };
            assert_eq!(apply(&[1, 2, 1], &f), apply(&[2, 1, 2], &f));
        }
    }

    #[test]
    fn classical_character_examples() {
        let a1 = root_system(Family::A, 1).unwrap();
        let ch = classical_character(&a1, &vec![2]).unwrap();
        let mut expect = CharacterPoly::zero();
        for k in [2i64, 0, -2] {
            expect.add_term(AffineWeight::from_classical(vec![k]), 1);
        }
        assert_eq!(ch, expect);

        let a2 = root_system(Family::A, 2).unwrap();
        let adj = classical_character(&a2, &vec![1, 1]).unwrap();
        assert_eq!(adj.total_mass(), 8);
        assert_eq!(adj.coeff(&AffineWeight::from_classical(vec![0, 0])), 2);
        assert_eq!(adj.coeff(&AffineWeight::from_classical(vec![1, 1])), 1);

        for rs in [&a1, &a2] {
            let triv = classical_character(rs, &vec![0; rs.rank]).unwrap();
            assert_eq!(
                triv,
                CharacterPoly::monomial(AffineWeight::zero(rs.rank), 1)
            );
        }

        assert!(classical_character(&a1, &vec![-1]).is_err());
    }

    #[test]
    fn classical_character_w0_invariant_and_dimension() {
        for (fam, rank) in [(Family::A, 2), (Family::A, 3), (Family::D, 4)] {
            let rs = root_system(fam, rank).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(37);
            for _ in 0..5 {
                let mu: FiniteWeight = (0..rank).map(|_| rng.gen_range(0..=2)).collect();
                let ch = classical_character(&rs, &mu).unwrap();
                assert_eq!(ch.total_mass(), rs.weyl_dim(&mu));
                // W_0-invariance: invariant under every simple reflection
                for i in 1..=rank {
                    let refl = ch.map_exponents(|w| crate::weight::reflect(&rs, i, w));
                    assert_eq!(refl, ch);
                }
            }
        }
    }

    #[test]
    fn cl_project_examples() {
        let rs = root_system(Family::A, 1).unwrap();
        let f = mono(vec![1], 0, Rat::new(3, 2));
        assert_eq!(cl_project(&f), mono(vec![1], 0, Rat::from_integer(0)));
        let g = f.add(&mono(vec![1], 0, Rat::from_integer(-1)));
        let mut expect = CharacterPoly::zero();
        expect.add_term(AffineWeight::from_classical(vec![1]), 2);
        assert_eq!(cl_project(&g), expect);
        // cl(D_1 f) = D_1(cl f) on level-0 input
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..20 {
            let mut f = CharacterPoly::zero();
            for _ in 0..4 {
                f.add_term(
                    AffineWeight {
                        classical: vec![rng.gen_range(-3..=3)],
                        level: 0,
                        delta: Rat::from_integer(rng.gen_range(-2..=2)),
                    },
                    rng.gen_range(-2..=2),
                );
            }
            assert_eq!(
                cl_project(&demazure_step(&rs, 1, &f)),
                demazure_step(&rs, 1, &cl_project(&f))
            );
        }
    }

    #[test]
    fn decompose_classical_examples() {
        let rs = root_system(Family::A, 1).unwrap();
        let ch1 = classical_character(&rs, &vec![1]).unwrap();
        let d = decompose_classical(&rs, &ch1).unwrap();
        assert_eq!(d.coeffs.len(), 1);
        assert_eq!(d.coeffs[&vec![1]], QPoly::one());

        // ch V(2w1) + q^{-1} e^0
        let ch2 = classical_character(&rs, &vec![2]).unwrap();
        let extra = mono(vec![0], 0, Rat::from_integer(1)); // q^{-1} = e^{delta}
        let f = ch2.add(&extra);
        let d = decompose_classical(&rs, &f).unwrap();
        assert_eq!(d.coeffs.len(), 2);
        assert_eq!(d.coeffs[&vec![2]], QPoly::one());
        assert_eq!(
            d.coeffs[&vec![0]],
            QPoly::monomial(Rat::from_integer(-1), 1)
        );
        // reconstruction round-trips
        assert_eq!(d.reconstruct(&rs).unwrap(), f);
    }

    #[test]
    fn decompose_classical_random_round_trip() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(43);
        for (fam, rank) in [(Family::A, 2), (Family::D, 4)] {
            let rs = root_system(fam, rank).unwrap();
            for _ in 0..5 {
                let mut dec = ClassicalDecomposition::default();
                for _ in 0..3 {
                    let mu: FiniteWeight = (0..rank).map(|_| rng.gen_range(0..=1)).collect();
                    let mut poly = QPoly::zero();
                    for _ in 0..2 {
                        poly.add_term(
                            Rat::from_integer(rng.gen_range(-3..=0)),
                            rng.gen_range(1..=3),
                        );
                    }
                    dec.coeffs.insert(mu, poly);
                }
                dec.coeffs.retain(|_, p| !p.is_zero());
                let f = dec.reconstruct(&rs).unwrap();
                let back = decompose_classical(&rs, &f).unwrap();
                assert_eq!(back, dec);
            }
        }
    }

    #[test]
    fn decompose_classical_rejects_non_characters() {
        let rs = root_system(Family::A, 1).unwrap();
        // a bare non-dominant monomial
        let f = mono(vec![-2], 0, Rat::from_integer(0));
        assert!(decompose_classical(&rs, &f).is_err());
        // dominant top but not W_0-invariant
        let g = mono(vec![2], 0, Rat::from_integer(0));
        assert!(decompose_classical(&rs, &g).is_err());
    }

    #[test]
    fn cl_commutes_with_finite_weyl() {
        // sanity for finite_act used elsewhere
        let rs = root_system(Family::A, 2).unwrap();
        let w = FiniteWeylElement { word: vec![1, 2] };
        let v = finite_act(&rs, &w, &vec![1, 0]);
        assert_eq!(v.len(), 2);
    }
}
