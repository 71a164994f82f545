//! Finite Weyl group W_0, extended affine Weyl group W~ = W_0 x T(M~),
//! and the decomposition of its elements into (reduced affine word, diagram
//! automorphism).
//!
//! Extended elements are kept in the (finite part, translation) normal form,
//! where composition is cheap, and converted to (word, sigma) on demand for
//! Demazure application. In ADE all c_i = 1, so M~ is the whole finite
//! weight lattice.

use crate::cartan::RootSystemData;
use crate::error::{Error, Result};
use crate::weight::{bilinear, reflect, simple_root, translate, AffineWeight, FiniteWeight};
use crate::Rat;

/// Element of W_0 as a word in the simple reflections over I_0,
/// acting left-to-right: act(lambda) = s_{word[0]}(s_{word[1]}(...(lambda))).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteWeylElement {
    pub word: Vec<usize>,
}

impl FiniteWeylElement {
    pub fn identity() -> Self {
        FiniteWeylElement { word: Vec::new() }
    }

    pub fn inverse(&self) -> Self {
        FiniteWeylElement {
            word: self.word.iter().rev().copied().collect(),
        }
    }

    pub fn act(&self, rs: &RootSystemData, lambda: &AffineWeight) -> AffineWeight {
        let mut out = lambda.clone();
        for &i in self.word.iter().rev() {
            out = reflect(rs, i, &out);
        }
        out
    }
}

/// Action on finite weights in fundamental-weight coordinates.
pub fn finite_act(rs: &RootSystemData, w: &FiniteWeylElement, lambda: &FiniteWeight) -> FiniteWeight {
    w.act(rs, &AffineWeight::from_classical(lambda.clone())).classical
}

/// Longest element of W_0, as a reduced word of length |Delta_0^+|.
pub fn longest_element(rs: &RootSystemData) -> FiniteWeylElement {
    // Drag rho to -rho; each step records one letter of a reduced word.
    let mut v: Vec<i64> = vec![1; rs.rank];
    let mut word = Vec::new();
    loop {
        match (0..rs.rank).find(|&i| v[i] > 0) {
            None => break,
            Some(i) => {
                let m = v[i];
                let alpha = rs.simple_root_weight(i + 1);
                for j in 0..rs.rank {
                    v[j] -= m * alpha[j];
                }
                word.push(i + 1);
            }
        }
    }
    debug_assert_eq!(word.len(), rs.positive_roots.len());
    // v ended at -rho via s_{i_m}...s_{i_1}(rho); in left-to-right convention
    // the word of w_0 is the reverse of the recording order.
    word.reverse();
    FiniteWeylElement { word }
}

/// Element of W~ = W_0 x T(M~), acting as finite o t_translation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedWeylElement {
    pub finite: FiniteWeylElement,
    pub translation: FiniteWeight,
}

impl ExtendedWeylElement {
    pub fn identity(rank: usize) -> Self {
        ExtendedWeylElement {
            finite: FiniteWeylElement::identity(),
            translation: vec![0; rank],
        }
    }

    pub fn act(&self, rs: &RootSystemData, lambda: &AffineWeight) -> AffineWeight {
        self.finite.act(rs, &translate(rs, &self.translation, lambda))
    }

    /// Inverse action: t_{-mu} o u^{-1}.
    pub fn act_inverse(&self, rs: &RootSystemData, lambda: &AffineWeight) -> AffineWeight {
        let neg: FiniteWeight = self.translation.iter().map(|c| -c).collect();
        translate(rs, &neg, &self.finite.inverse().act(rs, lambda))
    }
}

/// The pure translation t_mu as an extended Weyl element.
pub fn translation_of(rs: &RootSystemData, mu: &FiniteWeight) -> Result<ExtendedWeylElement> {
    if mu.len() != rs.rank {
        return Err(Error::Domain(format!(
            "translation vector has length {}, expected rank {}",
            mu.len(),
            rs.rank
        )));
    }
    Ok(ExtendedWeylElement {
        finite: FiniteWeylElement::identity(),
        translation: mu.clone(),
    })
}

/// Diagram automorphism sigma in Sigma, with its cached finite part
/// tau_bar in W_0 and translation vector mu_tau, so that
/// sigma = tau_bar o t_{mu_tau}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramAutomorphism {
    /// Node permutation of I = {0,...,n}.
    pub perm: Vec<usize>,
    pub tau_bar: FiniteWeylElement,
    pub mu_tau: FiniteWeight,
}

impl DiagramAutomorphism {
    pub fn identity(rank: usize) -> Self {
        DiagramAutomorphism {
            perm: (0..=rank).collect(),
            tau_bar: FiniteWeylElement::identity(),
            mu_tau: vec![0; rank],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Builds the automorphism from its node permutation. The finite part
    /// tau_bar is solved from its action on the simple roots:
    /// tau_bar(alpha_i) = cl(alpha_{perm(i)}), which is -theta when
    /// perm(i) = 0.
    pub fn from_perm(rs: &RootSystemData, perm: Vec<usize>) -> Result<Self> {
        let n = rs.rank;
        if perm.len() != n + 1 {
            return Err(Error::Domain("permutation length mismatch".into()));
        }
        for (i, &pi) in perm.iter().enumerate() {
            for (j, &pj) in perm.iter().enumerate() {
                if rs.affine_cartan[i][j] != rs.affine_cartan[pi][pj] {
                    return Err(Error::Domain(format!(
                        "node permutation {perm:?} is not a diagram automorphism"
                    )));
                }
            }
        }
        // tau_bar matrix in simple-root coordinates: column i = image of alpha_i.
        let theta = &rs.highest_root;
        let col = |i: usize| -> Vec<i64> {
            let img = perm[i];
            if img == 0 {
                theta.iter().map(|c| -c).collect()
            } else {
                let mut e = vec![0i64; n];
                e[img - 1] = 1;
                e
            }
        };
        let cols: Vec<Vec<i64>> = (1..=n).map(col).collect();
        // Action on weight coordinates: wt -> A * M * A^{-1} * wt.
        let act_wt = |wt: &FiniteWeight| -> FiniteWeight {
            let root = rs.weight_to_root(wt);
            let img_root: Vec<Rat> = (0..n)
                .map(|r| {
                    (0..n)
                        .map(|c| Rat::from_integer(cols[c][r]) * root[c])
                        .sum()
                })
                .collect();
            let img_wt: Vec<Rat> = (0..n)
                .map(|r| {
                    (0..n)
                        .map(|c| Rat::from_integer(rs.cartan[r][c]) * img_root[c])
                        .sum()
                })
                .collect();
            img_wt
                .into_iter()
                .map(|x| {
                    assert!(x.is_integer(), "tau_bar must preserve the weight lattice");
                    x.to_integer()
                })
                .collect()
        };
        // Recover a reduced word from the action on rho.
        let mut v = act_wt(&vec![1; n]);
        let mut word = Vec::new();
        while let Some(i) = (0..n).find(|&i| v[i] < 0) {
            let m = v[i];
            let alpha = rs.simple_root_weight(i + 1);
            for j in 0..n {
                v[j] -= m * alpha[j];
            }
            word.push(i + 1);
        }
        let tau_bar = FiniteWeylElement { word };
        // Sanity: the word reproduces the matrix action on the simple roots.
        for i in 1..=n {
            let expect = rs.root_to_weight(&cols[i - 1]);
            let got = finite_act(rs, &tau_bar, &rs.simple_root_weight(i));
            if got != expect {
                return Err(Error::Internal(format!(
                    "tau_bar word does not match its matrix action at node {i}"
                )));
            }
        }
        // mu_tau = tau_bar^{-1}(w_{perm(0)}), with w_0 = 0.
        let mu_tau = if perm[0] == 0 {
            vec![0; n]
        } else {
            let mut w = vec![0i64; n];
            w[perm[0] - 1] = 1;
            finite_act(rs, &tau_bar.inverse(), &w)
        };
        Ok(DiagramAutomorphism { perm, tau_bar, mu_tau })
    }
}

/// sigma(lambda) = tau_bar(t_{mu_tau}(lambda)).
pub fn sigma_act(rs: &RootSystemData, sigma: &DiagramAutomorphism, lambda: &AffineWeight) -> AffineWeight {
    sigma
        .tau_bar
        .act(rs, &translate(rs, &sigma.mu_tau, lambda))
}

/// Length of t in W~ modulo Sigma: sum over positive roots of |(mu, alpha^v)|
/// plus the finite word length (an upper bound, used as a termination guard).
fn length_bound(rs: &RootSystemData, t: &ExtendedWeylElement) -> usize {
    let mu_aff = AffineWeight::from_classical(t.translation.clone());
    let mut total = 0usize;
    for alpha in &rs.positive_roots {
        let alpha_wt = AffineWeight::from_classical(rs.root_to_weight(alpha));
        let pairing = bilinear(rs, &mu_aff, &alpha_wt);
        debug_assert!(pairing.is_integer());
        total += pairing.to_integer().unsigned_abs() as usize;
    }
    total + t.finite.word.len()
}

/// Result of peeling an extended element into s_{i_k}...s_{i_1} * sigma.
/// The returned word lists i_k first (leftmost factor first); Demazure
/// application consumes it right-to-left.
pub fn decompose_reduced(
    rs: &RootSystemData,
    t: &ExtendedWeylElement,
) -> Result<(Vec<usize>, DiagramAutomorphism)> {
    decompose_reduced_with(rs, t, false)
}

/// Same as `decompose_reduced`, but with a selectable descent strategy
/// (smallest or largest node among available descents). The two strategies
/// generally produce different reduced words for the same element, which is
/// what the reduced-word-independence property tests need.
pub fn decompose_reduced_with(
    rs: &RootSystemData,
    t: &ExtendedWeylElement,
    pick_last: bool,
) -> Result<(Vec<usize>, DiagramAutomorphism)> {
    let n = rs.rank;
    let bound = length_bound(rs, t);
    // rest = s_{j_m} ... s_{j_1} t after m peels; its action is t's action
    // followed by the recorded reflections, its inverse action is the
    // reflections in reverse followed by t^{-1}.
    let mut peeled: Vec<usize> = Vec::new();
    let rest_inv_act = |peeled: &[usize], lambda: &AffineWeight| -> AffineWeight {
        let mut v = lambda.clone();
        for &j in peeled.iter().rev() {
            v = reflect(rs, j, &v);
        }
        t.act_inverse(rs, &v)
    };
    loop {
        if peeled.len() > bound {
            return Err(Error::Internal(
                "reduced-word peel exceeded the length bound".into(),
            ));
        }
        let mut found = None;
        for i in 0..=n {
            let img = rest_inv_act(&peeled, &simple_root(rs, i));
            if is_negative_affine_root(rs, &img) {
                found = Some(i);
                if !pick_last {
                    break;
                }
            }
        }
        match found {
            Some(i) => peeled.push(i),
            None => break,
        }
    }
    // The residue must permute the simple roots; read sigma off it.
    let rest_act = |lambda: &AffineWeight| -> AffineWeight {
        let mut v = t.act(rs, lambda);
        for &j in &peeled {
            v = reflect(rs, j, &v);
        }
        v
    };
    let simples: Vec<AffineWeight> = (0..=n).map(|i| simple_root(rs, i)).collect();
    let mut perm = vec![usize::MAX; n + 1];
    for i in 0..=n {
        let img = rest_act(&simples[i]);
        let j = simples
            .iter()
            .position(|s| *s == img)
            .ok_or_else(|| Error::Internal(format!("residue does not permute simple roots at node {i}")))?;
        perm[i] = j;
    }
    let sigma = DiagramAutomorphism::from_perm(rs, perm)?;
    // Word in leftmost-first order: t = s_{j_1} s_{j_2} ... s_{j_m} sigma.
    Ok((peeled, sigma))
}

/// Negativity test for real affine roots on exact coordinates.
fn is_negative_affine_root(rs: &RootSystemData, root: &AffineWeight) -> bool {
    debug_assert_eq!(root.level, 0);
    debug_assert!(root.delta.is_integer());
    let k = root.delta.to_integer();
    if k != 0 {
        return k < 0;
    }
    // Finite root: negative iff its height is negative.
    rs.height(&root.classical) < Rat::from_integer(0)
}
