//! Type A_n^(1) Kirillov-Reshetikhin crystals B^{r,s} realized as r x s
//! rectangular semistandard tableaux.
//!
//! Conventions (fixed once; the X=M acceptance identities are sensitive to
//! them and pin them down):
//! * Kashiwara tensor rule: e(b (x) b') acts on b iff phi(b) >= eps(b'),
//!   f(b (x) b') acts on b iff phi(b) > eps(b').
//! * A tableau is the tensor product of its boxes taken column by column
//!   right to left, top to bottom within a column (equivalently: the
//!   bottom-to-top, left-to-right column reading word indexes tensor
//!   factors right to left).
//! * Affine operators on a single factor via Schuetzenberger promotion:
//!   e_0 = pr^{-1} o e_1 o pr.
//! * Local energy H is normalized by H(u (x) u) = 0 and changes under e_0
//!   by +1 when e_0 acts on the left factor both before and after R, by -1
//!   when it acts on the right factor in both, and by 0 otherwise.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::cartan::RootSystemData;
use crate::error::{Error, Result};
use crate::groupring::ClassicalDecomposition;
use crate::nu::NuSequence;
use crate::qpoly::QPoly;
use crate::weight::FiniteWeight;
use crate::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Raise,
    Lower,
}

/// Rectangular semistandard tableau with entries in 1..=n+1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RectTableau {
    pub n: usize,
    /// rows[i][j], r rows of length s; rows weakly increase, columns
    /// strictly increase.
    pub rows: Vec<Vec<u8>>,
}

impl RectTableau {
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    /// The classically highest element: row k filled with k.
    pub fn highest(r: usize, s: usize, n: usize) -> Self {
        RectTableau {
            n,
            rows: (1..=r).map(|k| vec![k as u8; s]).collect(),
        }
    }

    pub fn is_semistandard(&self) -> bool {
        let (r, s) = (self.num_rows(), self.num_cols());
        for i in 0..r {
            for j in 0..s {
                let v = self.rows[i][j];
                if v < 1 || v as usize > self.n + 1 {
                    return false;
                }
                if j + 1 < s && self.rows[i][j + 1] < v {
                    return false;
                }
                if i + 1 < r && self.rows[i + 1][j] <= v {
                    return false;
                }
            }
        }
        true
    }

    /// Classical weight in fundamental-weight coordinates: letter counts
    /// c_k give coordinates c_i - c_{i+1}.
    pub fn weight(&self) -> FiniteWeight {
        let mut counts = vec![0i64; self.n + 2];
        for row in &self.rows {
            for &v in row {
                counts[v as usize] += 1;
            }
        }
        (1..=self.n).map(|i| counts[i] - counts[i + 1]).collect()
    }

    /// Box positions in tensor order: columns right to left, top to bottom.
    fn tensor_positions(&self) -> Vec<(usize, usize)> {
        let (r, s) = (self.num_rows(), self.num_cols());
        let mut out = Vec::with_capacity(r * s);
        for j in (0..s).rev() {
            for i in 0..r {
                out.push((i, j));
            }
        }
        out
    }

    /// (eps_i, phi_i) for i in I_0 by the box signature rule.
    fn eps_phi_classical(&self, i: usize) -> (i64, i64) {
        let i = i as u8;
        let mut eps = 0i64;
        let mut plus_stack = 0i64;
        for (r, c) in self.tensor_positions() {
            let v = self.rows[r][c];
            if v == i {
                plus_stack += 1;
            } else if v == i + 1 {
                if plus_stack > 0 {
                    plus_stack -= 1;
                } else {
                    eps += 1;
                }
            }
        }
        (eps, plus_stack)
    }

    /// Classical crystal operator (i in I_0) by the signature rule.
    fn step_classical(&self, i: usize, dir: Direction) -> Option<RectTableau> {
        let iv = i as u8;
        let positions = self.tensor_positions();
        // Uncancelled minus positions (in order) and plus stack of positions.
        let mut minuses: Vec<(usize, usize)> = Vec::new();
        let mut pluses: Vec<(usize, usize)> = Vec::new();
        for &(r, c) in &positions {
            let v = self.rows[r][c];
            if v == iv {
                pluses.push((r, c));
            } else if v == iv + 1 {
                if pluses.pop().is_none() {
                    minuses.push((r, c));
                }
            }
        }
        let target = match dir {
            Direction::Raise => minuses.last().copied()?,
            Direction::Lower => pluses.first().copied()?,
        };
        let mut rows = self.rows.clone();
        rows[target.0][target.1] = match dir {
            Direction::Raise => iv,
            Direction::Lower => iv + 1,
        };
        let out = RectTableau { n: self.n, rows };
        debug_assert!(out.is_semistandard());
        Some(out)
    }

    /// Schuetzenberger promotion on rectangles: remove all n+1's, slide the
    /// holes to the upper left by jeu de taquin, add 1 to every entry, fill
    /// the vacated cells with 1's.
    pub fn promotion(&self) -> RectTableau {
        let (r, s) = (self.num_rows(), self.num_cols());
        let top = (self.n + 1) as u8;
        const HOLE: u8 = 0;
        let mut rows = self.rows.clone();
        // n+1 entries live in the bottom row as a suffix.
        let holes: Vec<usize> = (0..s).filter(|&j| rows[r - 1][j] == top).collect();
        for &j0 in &holes {
            rows[r - 1][j0] = HOLE;
            let (mut i, mut j) = (r - 1, j0);
            loop {
                let above = (i > 0 && rows[i - 1][j] != HOLE).then(|| rows[i - 1][j]);
                let left = (j > 0 && rows[i][j - 1] != HOLE).then(|| rows[i][j - 1]);
                match (above, left) {
                    (None, None) => break,
                    (Some(_), None) => {
                        rows[i][j] = rows[i - 1][j];
                        rows[i - 1][j] = HOLE;
                        i -= 1;
                    }
                    (None, Some(_)) => {
                        rows[i][j] = rows[i][j - 1];
                        rows[i][j - 1] = HOLE;
                        j -= 1;
                    }
                    (Some(a), Some(b)) => {
                        if a >= b {
                            rows[i][j] = a;
                            rows[i - 1][j] = HOLE;
                            i -= 1;
                        } else {
                            rows[i][j] = b;
                            rows[i][j - 1] = HOLE;
                            j -= 1;
                        }
                    }
                }
            }
        }
        for row in rows.iter_mut() {
            for v in row.iter_mut() {
                *v = if *v == HOLE { 1 } else { *v + 1 };
            }
        }
        let out = RectTableau { n: self.n, rows };
        debug_assert!(out.is_semistandard(), "promotion broke semistandardness");
        out
    }

    /// Inverse promotion: pr^n, using pr^{n+1} = id on rectangles.
    pub fn promotion_inverse(&self) -> RectTableau {
        let mut out = self.clone();
        for _ in 0..self.n {
            out = out.promotion();
        }
        out
    }

    /// (eps_i, phi_i) for every i in I (0 handled through promotion).
    pub fn eps_phi(&self, i: usize) -> (i64, i64) {
        if i == 0 {
            self.promotion().eps_phi_classical(1)
        } else {
            self.eps_phi_classical(i)
        }
    }

    /// Crystal operator for any i in I.
    pub fn crystal_step(&self, i: usize, dir: Direction) -> Option<RectTableau> {
        if i == 0 {
            Some(
                self.promotion()
                    .step_classical(1, dir)?
                    .promotion_inverse(),
            )
        } else {
            self.step_classical(i, dir)
        }
    }

    /// Word rendering used by crystal-graph dumps: rows top to bottom,
    /// e.g. "12/23".
    pub fn render(&self) -> String {
        self.rows
            .iter()
            .map(|row| row.iter().map(|v| v.to_string()).collect::<String>())
            .collect::<Vec<_>>()
            .join("/")
    }
}

/// All elements of B^{r,s} over A_n: semistandard rectangular fillings.
pub fn kr_elements(r: usize, s: usize, n: usize) -> Result<Vec<RectTableau>> {
    if r == 0 || r > n {
        return Err(Error::Domain(format!("B^{{r,s}} needs 1 <= r <= n, got r = {r}, n = {n}")));
    }
    // Columns: strictly increasing r-subsets of 1..=n+1, lexicographic.
    let mut columns: Vec<Vec<u8>> = Vec::new();
    let mut cur: Vec<u8> = Vec::new();
    fn gen_cols(start: u8, need: usize, max: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if need == 0 {
            out.push(cur.clone());
            return;
        }
        for v in start..=(max - need as u8 + 1) {
            cur.push(v);
            gen_cols(v + 1, need - 1, max, cur, out);
            cur.pop();
        }
    }
    gen_cols(1, r, (n + 1) as u8, &mut cur, &mut columns);
    // Assemble column lists with entrywise <= between consecutive columns.
    let mut out: Vec<RectTableau> = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn assemble(
        columns: &[Vec<u8>],
        s: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<RectTableau>,
        n: usize,
        r: usize,
    ) {
        if chosen.len() == s {
            let rows: Vec<Vec<u8>> = (0..r)
                .map(|i| chosen.iter().map(|&c| columns[c][i]).collect())
                .collect();
            out.push(RectTableau { n, rows });
            return;
        }
        for c in 0..columns.len() {
            if let Some(&prev) = chosen.last() {
                if !(0..r).all(|i| columns[prev][i] <= columns[c][i]) {
                    continue;
                }
            }
            chosen.push(c);
            assemble(columns, s, chosen, out, n, r);
            chosen.pop();
        }
    }
    assemble(&columns, s, &mut chosen, &mut out, n, r);
    out.sort();
    Ok(out)
}

/// Ordered tensor product; `factors[0]` is the leftmost factor b_p of
/// B^{r_p,l_p} (x) ... (x) B^{r_1,l_1}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorElement {
    pub factors: Vec<RectTableau>,
}

impl TensorElement {
    pub fn weight(&self, rank: usize) -> FiniteWeight {
        let mut wt = vec![0i64; rank];
        for f in &self.factors {
            for (k, c) in f.weight().into_iter().enumerate() {
                wt[k] += c;
            }
        }
        wt
    }

    /// Tensor rule over factor-level (eps, phi) strings. Returns the result
    /// and the index of the factor acted on.
    pub fn step_with_side(&self, i: usize, dir: Direction) -> Option<(TensorElement, usize)> {
        // Uncancelled minuses / pluses as factor indices, in order.
        let mut minuses: Vec<usize> = Vec::new();
        let mut pluses: Vec<usize> = Vec::new();
        for (idx, f) in self.factors.iter().enumerate() {
            let (eps, phi) = f.eps_phi(i);
            for _ in 0..eps {
                if pluses.pop().is_none() {
                    minuses.push(idx);
                }
            }
            for _ in 0..phi {
                pluses.push(idx);
            }
        }
        let idx = match dir {
            Direction::Raise => *minuses.last()?,
            Direction::Lower => *pluses.first()?,
        };
        let new_factor = self.factors[idx]
            .crystal_step(i, dir)
            .expect("signature rule selected an inapplicable factor");
        let mut factors = self.factors.clone();
        factors[idx] = new_factor;
        Some((TensorElement { factors }, idx))
    }

    pub fn crystal_step(&self, i: usize, dir: Direction) -> Option<TensorElement> {
        self.step_with_side(i, dir).map(|(t, _)| t)
    }

    pub fn is_classically_highest(&self, rank: usize) -> bool {
        (1..=rank).all(|i| self.crystal_step(i, Direction::Raise).is_none())
    }

    pub fn render(&self) -> String {
        self.factors
            .iter()
            .map(|f| f.render())
            .collect::<Vec<_>>()
            .join(" (x) ")
    }
}

/// Combinatorial R and local energy H on B_2 (x) B_1, computed by
/// breadth-first propagation from the seed R(u_2 (x) u_1) = u_1 (x) u_2,
/// H(u_2 (x) u_1) = 0 along all affine crystal edges.
#[derive(Debug, Clone)]
pub struct PairCrystal {
    pub n: usize,
    r_map: HashMap<TensorElement, TensorElement>,
    h_map: HashMap<TensorElement, i64>,
}

impl PairCrystal {
    /// shape = (r, s) per factor; `shape2` is the left factor.
    pub fn build(n: usize, shape2: (usize, usize), shape1: (usize, usize)) -> Result<PairCrystal> {
        let left = kr_elements(shape2.0, shape2.1, n)?;
        let right = kr_elements(shape1.0, shape1.1, n)?;
        let total = left.len() * right.len();
        let seed = TensorElement {
            factors: vec![
                RectTableau::highest(shape2.0, shape2.1, n),
                RectTableau::highest(shape1.0, shape1.1, n),
            ],
        };
        let seed_image = TensorElement {
            factors: vec![
                RectTableau::highest(shape1.0, shape1.1, n),
                RectTableau::highest(shape2.0, shape2.1, n),
            ],
        };
        let mut r_map: HashMap<TensorElement, TensorElement> = HashMap::with_capacity(total);
        let mut h_map: HashMap<TensorElement, i64> = HashMap::with_capacity(total);
        r_map.insert(seed.clone(), seed_image);
        h_map.insert(seed.clone(), 0);
        let mut queue = VecDeque::new();
        queue.push_back(seed);
        while let Some(x) = queue.pop_front() {
            let rx = r_map[&x].clone();
            let hx = h_map[&x];
            for i in 0..=n {
                for dir in [Direction::Raise, Direction::Lower] {
                    let Some((y, _)) = x.step_with_side(i, dir) else {
                        continue;
                    };
                    let (ry, side_err) = match rx.step_with_side(i, dir) {
                        Some((ry, _)) => (ry, false),
                        None => (rx.clone(), true),
                    };
                    if side_err {
                        return Err(Error::Internal(format!(
                            "R propagation: operator ({i}, {dir:?}) applies to {} but not to its image {}",
                            x.render(),
                            rx.render()
                        )));
                    }
                    let hy = hx + h_delta(i, dir, &x, &y, &r_map, &rx, &ry)?;
                    match r_map.get(&y) {
                        Some(existing) => {
                            if *existing != ry || h_map[&y] != hy {
                                return Err(Error::Internal(format!(
                                    "R/H propagation inconsistent at {}",
                                    y.render()
                                )));
                            }
                        }
                        None => {
                            r_map.insert(y.clone(), ry);
                            h_map.insert(y.clone(), hy);
                            queue.push_back(y);
                        }
                    }
                }
            }
        }
        if r_map.len() != total {
            return Err(Error::Internal(format!(
                "R propagation reached {} of {} elements; crystal not connected",
                r_map.len(),
                total
            )));
        }
        Ok(PairCrystal { n, r_map, h_map })
    }

    pub fn r_apply(&self, x: &TensorElement) -> Result<&TensorElement> {
        self.r_map
            .get(x)
            .ok_or_else(|| Error::Internal(format!("element {} outside the pair crystal", x.render())))
    }

    pub fn h_value(&self, x: &TensorElement) -> Result<i64> {
        self.h_map
            .get(x)
            .copied()
            .ok_or_else(|| Error::Internal(format!("element {} outside the pair crystal", x.render())))
    }

    pub fn elements(&self) -> impl Iterator<Item = &TensorElement> {
        self.r_map.keys()
    }
}

/// Energy change of H across the edge (x, y = edge applied to x) in
/// raising orientation: H(e_0 z) = H(z) + 1 (left-left), - 1 (right-right),
/// 0 otherwise; classical edges leave H unchanged.
fn h_delta(
    i: usize,
    dir: Direction,
    x: &TensorElement,
    y: &TensorElement,
    _r_map: &HashMap<TensorElement, TensorElement>,
    rx: &TensorElement,
    ry: &TensorElement,
) -> Result<i64> {
    if i != 0 {
        return Ok(0);
    }
    // Orient the edge so that z --e_0--> z' with H(z') = H(z) + delta(z).
    let (z, z_img) = match dir {
        Direction::Raise => (x, rx),
        Direction::Lower => (y, ry),
    };
    let side = z
        .step_with_side(0, Direction::Raise)
        .map(|(_, s)| s)
        .ok_or_else(|| Error::Internal("e_0 edge without raisable endpoint".into()))?;
    let side_img = z_img
        .step_with_side(0, Direction::Raise)
        .map(|(_, s)| s)
        .ok_or_else(|| Error::Internal("e_0 edge without raisable image".into()))?;
    let delta = match (side, side_img) {
        (0, 0) => 1,
        (1, 1) => -1,
        _ => 0,
    };
    Ok(match dir {
        Direction::Raise => delta,
        Direction::Lower => -delta,
    })
}

/// Cache of pair crystals keyed by (left shape, right shape).
#[derive(Default)]
pub struct EnergyCache {
    pairs: HashMap<((usize, usize), (usize, usize)), PairCrystal>,
}

impl EnergyCache {
    pub fn pair(
        &mut self,
        n: usize,
        shape2: (usize, usize),
        shape1: (usize, usize),
    ) -> Result<&PairCrystal> {
        if !self.pairs.contains_key(&(shape2, shape1)) {
            let built = PairCrystal::build(n, shape2, shape1)?;
            self.pairs.insert((shape2, shape1), built);
        }
        Ok(&self.pairs[&(shape2, shape1)])
    }
}

fn shape_of(t: &RectTableau) -> (usize, usize) {
    (t.num_rows(), t.num_cols())
}

/// Tensor energy D: the pairwise sum of local energies, transporting the
/// farther factor adjacent via successive combinatorial R. Intrinsic
/// single-factor terms are omitted (constant per factor in type A, absorbed
/// by the q^{-D(u(B))} normalization).
pub fn energy_d(cache: &mut EnergyCache, n: usize, x: &TensorElement) -> Result<i64> {
    let p = x.factors.len();
    let mut total = 0i64;
    for a in 0..p {
        for b in (a + 1)..p {
            // Move factor b leftward next to factor a.
            let mut carried = x.factors[b].clone();
            for t in ((a + 1)..b).rev() {
                let pairc = cache.pair(n, shape_of(&x.factors[t]), shape_of(&carried))?;
                let pair = TensorElement {
                    factors: vec![x.factors[t].clone(), carried],
                };
                carried = pairc.r_apply(&pair)?.factors[0].clone();
            }
            let pairc = cache.pair(n, shape_of(&x.factors[a]), shape_of(&carried))?;
            let pair = TensorElement {
                factors: vec![x.factors[a].clone(), carried],
            };
            total += pairc.h_value(&pair)?;
        }
    }
    Ok(total)
}

/// The highest-weight tensor element u(B) for a given nu.
pub fn u_of_b(n: usize, nu: &NuSequence) -> TensorElement {
    TensorElement {
        factors: nu
            .pairs
            .iter()
            .rev()
            .map(|&(r, l)| RectTableau::highest(r, l as usize, n))
            .collect(),
    }
}

/// One-dimensional sums X(B, mu, q), normalized by q^{-D(u(B))}:
/// mu -> sum over classically highest b of weight mu of q^{D(b) - D(u(B))}.
pub fn one_dim_sum(
    rs: &RootSystemData,
    nu: &NuSequence,
    budget: Option<u64>,
) -> Result<ClassicalDecomposition> {
    if rs.family != crate::cartan::Family::A {
        return Err(Error::UnsupportedType(format!(
            "one-dimensional sums are implemented for type A only, got {}_{}",
            rs.family, rs.rank
        )));
    }
    nu.validate(rs)?;
    let n = rs.rank;
    let factor_sets: Vec<Vec<RectTableau>> = nu
        .pairs
        .iter()
        .rev()
        .map(|&(r, l)| kr_elements(r, l as usize, n))
        .collect::<Result<_>>()?;
    let total: u64 = factor_sets.iter().map(|f| f.len() as u64).product();
    if let Some(b) = budget {
        if total > b {
            return Err(Error::BudgetExceeded {
                budget: b,
                hint: format!("tensor product has {total} elements; raise --budget or shrink nu"),
            });
        }
    }
    let mut cache = EnergyCache::default();
    let base_energy = if nu.is_empty() {
        0
    } else {
        energy_d(&mut cache, n, &u_of_b(n, nu))?
    };
    let mut out: BTreeMap<FiniteWeight, QPoly> = BTreeMap::new();
    let mut idx = vec![0usize; factor_sets.len()];
    if factor_sets.is_empty() {
        let mut dec = ClassicalDecomposition::default();
        dec.coeffs.insert(vec![0; n], QPoly::one());
        return Ok(dec);
    }
    'outer: loop {
        let element = TensorElement {
            factors: (0..factor_sets.len())
                .map(|k| factor_sets[k][idx[k]].clone())
                .collect(),
        };
        if element.is_classically_highest(n) {
            let mu = element.weight(n);
            let d = energy_d(&mut cache, n, &element)?;
            out.entry(mu)
                .or_insert_with(QPoly::zero)
                .add_term(Rat::from_integer(d - base_energy), 1);
        }
        for k in (0..factor_sets.len()).rev() {
            idx[k] += 1;
            if idx[k] < factor_sets[k].len() {
                continue 'outer;
            }
            idx[k] = 0;
            if k == 0 {
                break 'outer;
            }
        }
    }
    Ok(ClassicalDecomposition { coeffs: out })
}

/// Labeled affine crystal graph of B^{r,s} as an edge list
/// (node = tableau word, edge = (i, lower)).
pub fn crystal_graph_edges(r: usize, s: usize, n: usize) -> Result<Vec<(String, usize, String)>> {
    let mut edges = Vec::new();
    for t in kr_elements(r, s, n)? {
        for i in 0..=n {
            if let Some(img) = t.crystal_step(i, Direction::Lower) {
                edges.push((t.render(), i, img.render()));
            }
        }
    }
    Ok(edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{root_system, Family};
    use crate::fermionic::mside;

    fn tab(n: usize, rows: &[&[u8]]) -> RectTableau {
        RectTableau {
            n,
            rows: rows.iter().map(|r| r.to_vec()).collect(),
        }
    }

    #[test]
    fn kr_elements_examples() {
        let b = kr_elements(1, 1, 1).unwrap();
        assert_eq!(b.len(), 2);
        let b = kr_elements(1, 1, 2).unwrap();
        assert_eq!(b.len(), 3);
        let b = kr_elements(2, 1, 2).unwrap();
        assert_eq!(b.len(), 3);
        assert!(b.contains(&tab(2, &[&[1], &[2]])));
        assert!(b.contains(&tab(2, &[&[1], &[3]])));
        assert!(b.contains(&tab(2, &[&[2], &[3]])));
        assert!(kr_elements(3, 1, 2).is_err());
    }

    #[test]
    fn kr_elements_counts_match_weyl_dim() {
        for n in 1..=3usize {
            let rs = root_system(Family::A, n).unwrap();
            for r in 1..=n {
                for s in 1..=3usize {
                    let mut mu = vec![0i64; n];
                    mu[r - 1] = s as i64;
                    let count = kr_elements(r, s, n).unwrap().len() as i64;
                    assert_eq!(count, rs.weyl_dim(&mu), "B^{{{r},{s}}} over A_{n}");
                    // all semistandard
                    for t in kr_elements(r, s, n).unwrap() {
                        assert!(t.is_semistandard());
                    }
                }
            }
        }
    }

    #[test]
    fn classical_steps() {
        // A_1: e_1([2]) = [1]
        let two = tab(1, &[&[2]]);
        assert_eq!(two.crystal_step(1, Direction::Raise), Some(tab(1, &[&[1]])));
        // A_2: f_2 on column 12 -> 13
        let col12 = tab(2, &[&[1], &[2]]);
        assert_eq!(
            col12.crystal_step(2, Direction::Lower),
            Some(tab(2, &[&[1], &[3]]))
        );
        // column 12 is classically highest
        assert!(col12.crystal_step(1, Direction::Raise).is_none());
        assert!(col12.crystal_step(2, Direction::Raise).is_none());
    }

    #[test]
    fn tensor_rule_example() {
        // A_1 Kashiwara rule: e_1([1] (x) [2]) = null
        let x = TensorElement {
            factors: vec![tab(1, &[&[1]]), tab(1, &[&[2]])],
        };
        assert!(x.crystal_step(1, Direction::Raise).is_none());
        assert!(x.crystal_step(1, Direction::Lower).is_none());
        assert!(x.is_classically_highest(1));
    }

    #[test]
    fn promotion_examples() {
        // A_2 single box: cyclic shift
        assert_eq!(tab(2, &[&[1]]).promotion(), tab(2, &[&[2]]));
        assert_eq!(tab(2, &[&[2]]).promotion(), tab(2, &[&[3]]));
        assert_eq!(tab(2, &[&[3]]).promotion(), tab(2, &[&[1]]));
        // e_0([1]) = [3] in A_2
        assert_eq!(
            tab(2, &[&[1]]).crystal_step(0, Direction::Raise),
            Some(tab(2, &[&[3]]))
        );
        // pr^{n+1} = id on every element of B^{2,1}, B^{2,2} over A_2
        for (r, s) in [(2usize, 1usize), (2, 2), (1, 3)] {
            for t in kr_elements(r, s, 2).unwrap() {
                let mut u = t.clone();
                for _ in 0..3 {
                    u = u.promotion();
                }
                assert_eq!(u, t);
                assert_eq!(t.promotion().promotion_inverse(), t);
            }
        }
    }

    #[test]
    fn crystal_axioms_random_spots() {
        // raise/lower partial inverses and weight bookkeeping
        for (r, s, n) in [(1, 1, 1), (1, 2, 1), (2, 1, 2), (2, 2, 2), (1, 2, 3)] {
            let rs = root_system(Family::A, n).unwrap();
            for t in kr_elements(r, s, n).unwrap() {
                for i in 0..=n {
                    if let Some(down) = t.crystal_step(i, Direction::Lower) {
                        assert_eq!(down.crystal_step(i, Direction::Raise), Some(t.clone()));
                        // wt(f_i b) = wt(b) - cl(alpha_i)
                        let alpha_cl: Vec<i64> = if i == 0 {
                            rs.theta_weight().iter().map(|c| -c).collect()
                        } else {
                            rs.simple_root_weight(i)
                        };
                        let expect: Vec<i64> = t
                            .weight()
                            .iter()
                            .zip(&alpha_cl)
                            .map(|(w, a)| w - a)
                            .collect();
                        assert_eq!(down.weight(), expect);
                    }
                    if let Some(up) = t.crystal_step(i, Direction::Raise) {
                        assert_eq!(up.crystal_step(i, Direction::Lower), Some(t.clone()));
                    }
                }
            }
        }
    }

    #[test]
    fn r_matrix_examples() {
        // identical factors: R = identity
        let pc = PairCrystal::build(1, (1, 1), (1, 1)).unwrap();
        for x in pc.elements().cloned().collect::<Vec<_>>() {
            assert_eq!(pc.r_apply(&x).unwrap(), &x);
        }
        // A_1, B^{1,2} (x) B^{1,1}: R([1,2] (x) [1]) = [2] (x) [1,1]
        let pc = PairCrystal::build(1, (1, 2), (1, 1)).unwrap();
        let x = TensorElement {
            factors: vec![tab(1, &[&[1, 2]]), tab(1, &[&[1]])],
        };
        let expect = TensorElement {
            factors: vec![tab(1, &[&[2]]), tab(1, &[&[1, 1]])],
        };
        assert_eq!(pc.r_apply(&x).unwrap(), &expect);
        // R o R = id
        let back = PairCrystal::build(1, (1, 1), (1, 2)).unwrap();
        for x in pc.elements() {
            let rx = pc.r_apply(x).unwrap();
            assert_eq!(back.r_apply(rx).unwrap(), x);
        }
    }

    #[test]
    fn r_commutes_with_crystal_steps() {
        for (n, s2, s1) in [
            (1usize, (1usize, 1usize), (1usize, 1usize)),
            (1, (1, 2), (1, 1)),
            (2, (1, 1), (1, 2)),
            (2, (2, 1), (1, 1)),
        ] {
            let pc = PairCrystal::build(n, s2, s1).unwrap();
            for x in pc.elements() {
                let rx = pc.r_apply(x).unwrap();
                for i in 0..=n {
                    for dir in [Direction::Raise, Direction::Lower] {
                        let lhs = x.crystal_step(i, dir).map(|y| pc.r_apply(&y).unwrap().clone());
                        let rhs = rx.crystal_step(i, dir);
                        assert_eq!(lhs, rhs, "i = {i}, {dir:?}, x = {}", x.render());
                    }
                }
            }
        }
    }

    #[test]
    fn local_h_examples() {
        let pc = PairCrystal::build(1, (1, 1), (1, 1)).unwrap();
        let uu = TensorElement {
            factors: vec![tab(1, &[&[1]]), tab(1, &[&[1]])],
        };
        assert_eq!(pc.h_value(&uu).unwrap(), 0);
        let singlet = TensorElement {
            factors: vec![tab(1, &[&[1]]), tab(1, &[&[2]])],
        };
        assert_eq!(pc.h_value(&singlet).unwrap(), -1);
    }

    #[test]
    fn local_h_constant_on_classical_components() {
        for (n, s2, s1) in [(2usize, (1usize, 1usize), (1usize, 1usize)), (2, (1, 2), (2, 1))] {
            let pc = PairCrystal::build(n, s2, s1).unwrap();
            for x in pc.elements() {
                for i in 1..=n {
                    if let Some(y) = x.crystal_step(i, Direction::Lower) {
                        assert_eq!(pc.h_value(x).unwrap(), pc.h_value(&y).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn yang_baxter_a1() {
        // (R x 1)(1 x R)(R x 1) = (1 x R)(R x 1)(1 x R) on triples of
        // B^{1,1} and B^{1,2} over A_1.
        let shapes = [(1usize, 1usize), (1, 2)];
        let mut cache = EnergyCache::default();
        for &sa in &shapes {
            for &sb in &shapes {
                for &sc in &shapes {
                    let ea = kr_elements(sa.0, sa.1, 1).unwrap();
                    let eb = kr_elements(sb.0, sb.1, 1).unwrap();
                    let ec = kr_elements(sc.0, sc.1, 1).unwrap();
                    for a in &ea {
                        for b in &eb {
                            for c in &ec {
                                let apply_left = |x: &RectTableau, y: &RectTableau, cache: &mut EnergyCache| {
                                    let pc = cache.pair(1, shape_of(x), shape_of(y)).unwrap();
                                    let out = pc
                                        .r_apply(&TensorElement {
                                            factors: vec![x.clone(), y.clone()],
                                        })
                                        .unwrap();
                                    (out.factors[0].clone(), out.factors[1].clone())
                                };
                                // route 1: R12, R23, R12
                                let (x1, y1) = apply_left(a, b, &mut cache);
                                let (y2, z2) = apply_left(&y1, c, &mut cache);
                                let (x3, y3) = apply_left(&x1, &y2, &mut cache);
                                let lhs = (x3, y3, z2);
                                // route 2: R23, R12, R23
                                let (y4, z4) = apply_left(b, c, &mut cache);
                                let (x5, y5) = apply_left(a, &y4, &mut cache);
                                let (y6, z6) = apply_left(&y5, &z4, &mut cache);
                                let rhs = (x5, y6, z6);
                                assert_eq!(lhs, rhs);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn energy_examples() {
        let mut cache = EnergyCache::default();
        // single factor: D = 0
        for t in kr_elements(1, 2, 1).unwrap() {
            let x = TensorElement { factors: vec![t] };
            assert_eq!(energy_d(&mut cache, 1, &x).unwrap(), 0);
        }
        // A_1, nu = ((1,1),(1,1))
        let nu = NuSequence::new(vec![(1, 1), (1, 1)]);
        let u = u_of_b(1, &nu);
        assert_eq!(energy_d(&mut cache, 1, &u).unwrap(), 0);
        let singlet = TensorElement {
            factors: vec![tab(1, &[&[1]]), tab(1, &[&[2]])],
        };
        assert_eq!(energy_d(&mut cache, 1, &singlet).unwrap(), -1);
    }

    #[test]
    fn one_dim_sum_examples() {
        let a1 = root_system(Family::A, 1).unwrap();
        let x = one_dim_sum(&a1, &NuSequence::new(vec![(1, 1), (1, 1)]), None).unwrap();
        assert_eq!(x.coeffs.len(), 2);
        assert_eq!(x.coeffs[&vec![2]], QPoly::one());
        assert_eq!(x.coeffs[&vec![0]], QPoly::monomial(Rat::from_integer(-1), 1));

        let a2 = root_system(Family::A, 2).unwrap();
        let x = one_dim_sum(&a2, &NuSequence::new(vec![(1, 1), (1, 1)]), None).unwrap();
        assert_eq!(x.coeffs.len(), 2);
        assert_eq!(x.coeffs[&vec![2, 0]], QPoly::one());
        assert_eq!(x.coeffs[&vec![0, 1]], QPoly::monomial(Rat::from_integer(-1), 1));
        // matches the fermionic side
        assert_eq!(x, mside(&a2, &NuSequence::new(vec![(1, 1), (1, 1)])).unwrap());
    }

    #[test]
    fn one_dim_sum_top_coefficient_one() {
        let a2 = root_system(Family::A, 2).unwrap();
        for pairs in [vec![(1usize, 1i64)], vec![(2, 2), (1, 1)], vec![(1, 2), (2, 1)]] {
            let nu = NuSequence::new(pairs);
            let x = one_dim_sum(&a2, &nu, None).unwrap();
            assert_eq!(x.coeffs[&nu.top_weight(2)], QPoly::one());
        }
    }

    #[test]
    fn one_dim_sum_reorder_invariant() {
        let a2 = root_system(Family::A, 2).unwrap();
        let reference = one_dim_sum(&a2, &NuSequence::new(vec![(1, 1), (2, 2), (1, 2)]), None).unwrap();
        let p = [(1usize, 1i64), (2, 2), (1, 2)];
        for perm in [
            [p[0], p[2], p[1]],
            [p[1], p[0], p[2]],
            [p[1], p[2], p[0]],
            [p[2], p[0], p[1]],
            [p[2], p[1], p[0]],
        ] {
            let x = one_dim_sum(&a2, &NuSequence::new(perm.to_vec()), None).unwrap();
            assert_eq!(x, reference);
        }
    }

    #[test]
    fn one_dim_sum_rejects_non_type_a() {
        let d4 = root_system(Family::D, 4).unwrap();
        assert!(matches!(
            one_dim_sum(&d4, &NuSequence::new(vec![(1, 1)]), None),
            Err(Error::UnsupportedType(_))
        ));
    }

    #[test]
    fn budget_enforced() {
        let a2 = root_system(Family::A, 2).unwrap();
        assert!(matches!(
            one_dim_sum(&a2, &NuSequence::new(vec![(1, 1), (1, 1)]), Some(3)),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
