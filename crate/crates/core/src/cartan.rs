//! Static root-system data for the simply-laced finite types A, D, E and
//! their nontwisted affine extensions.
//!
//! Node labeling follows Kac's tables. Finite nodes are 1..=n, the affine
//! node is 0. Explicitly:
//!
//! * `A_n`: path 1 - 2 - ... - n; node 0 attached to 1 and n (double bond
//!   for n = 1).
//! * `D_n`: path 1 - 2 - ... - (n-2) with n-1 and n both attached to n-2;
//!   node 0 attached to 2.
//! * `E_6`: path 1 - 2 - 3 - 4 - 5 with 6 attached to 3; node 0 attached to 6.
//! * `E_7`: path 1 - 2 - 3 - 4 - 5 - 6 with 7 attached to 3; node 0 attached to 1.
//! * `E_8`: path 1 - 2 - 3 - 4 - 5 - 6 - 7 with 8 attached to 5; node 0 attached to 1.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::D => write!(f, "D"),
            Family::E => write!(f, "E"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Family::A),
            "D" | "d" => Ok(Family::D),
            "E" | "e" => Ok(Family::E),
            other => Err(Error::Parse(format!("unknown type family {other:?}"))),
        }
    }
}

/// Root-system data shared by every other module. Immutable after
/// construction.
#[derive(Debug, Clone)]
pub struct RootSystemData {
    pub family: Family,
    pub rank: usize,
    /// Finite Cartan matrix, `cartan[i][j] = a_{ij}`, indices 0-based over I_0.
    pub cartan: Vec<Vec<i64>>,
    /// Affine Cartan matrix over I = {0,...,n}, index 0 = affine node.
    pub affine_cartan: Vec<Vec<i64>>,
    /// Marks (a_0,...,a_n).
    pub marks: Vec<i64>,
    /// Comarks (a_0^v,...,a_n^v). Equal to marks in ADE.
    pub comarks: Vec<i64>,
    /// Positive roots in simple-root coordinates, sorted by height then lex.
    pub positive_roots: Vec<Vec<i64>>,
    /// Highest root in simple-root coordinates.
    pub highest_root: Vec<i64>,
    /// Inverse of the finite Cartan matrix (exact rationals);
    /// converts fundamental-weight coordinates to simple-root coordinates.
    pub inverse_cartan: Vec<Vec<Rat>>,
}

impl RootSystemData {
    /// Highest root in fundamental-weight coordinates.
    pub fn theta_weight(&self) -> Vec<i64> {
        self.root_to_weight(&self.highest_root)
    }

    /// Simple root alpha_i (i in I_0, 1-based) in fundamental-weight coordinates.
    pub fn simple_root_weight(&self, i: usize) -> Vec<i64> {
        (1..=self.rank).map(|j| self.cartan[j - 1][i - 1]).collect()
    }

    /// Convert simple-root coordinates to fundamental-weight coordinates.
    pub fn root_to_weight(&self, root: &[i64]) -> Vec<i64> {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| self.cartan[i][j] * root[j]).sum())
            .collect()
    }

    /// Convert fundamental-weight coordinates to (rational) simple-root coordinates.
    pub fn weight_to_root(&self, wt: &[i64]) -> Vec<Rat> {
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| self.inverse_cartan[i][j] * Rat::from_integer(wt[j]))
                    .sum()
            })
            .collect()
    }

    /// Bilinear form on the finite weight lattice in fundamental-weight
    /// coordinates: (w_i, w_j) equals the (i,j) entry of the inverse Cartan
    /// matrix in the ADE normalization.
    pub fn finite_form(&self, a: &[i64], b: &[i64]) -> Rat {
        let mut acc = Rat::from_integer(0);
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc += self.inverse_cartan[i][j] * Rat::from_integer(a[i] * b[j]);
            }
        }
        acc
    }

    /// Sum of simple-root coordinates of a weight; integral on the root lattice.
    pub fn height(&self, wt: &[i64]) -> Rat {
        self.weight_to_root(wt).into_iter().sum()
    }

    pub fn is_dominant(&self, wt: &[i64]) -> bool {
        wt.iter().all(|&c| c >= 0)
    }

    /// Weyl dimension formula for the irreducible with dominant highest weight mu.
    pub fn weyl_dim(&self, mu: &[i64]) -> i64 {
        let rho: Vec<i64> = vec![1; self.rank];
        let mut dim = Rat::from_integer(1);
        for alpha in &self.positive_roots {
            // (lambda + rho, alpha) with alpha in root coords: since
            // (w_i, alpha_j) = delta_ij in the ADE normalization, this is
            // just the dot product of weight coords with root coords.
            let num: i64 = (0..self.rank).map(|i| (mu[i] + rho[i]) * alpha[i]).sum();
            let den: i64 = alpha.iter().sum();
            dim *= Rat::new(num, den);
        }
        assert!(dim.is_integer(), "Weyl dimension must be integral");
        dim.to_integer()
    }
}

/// Builds the root-system data for the given simply-laced family and rank.
pub fn root_system(family: Family, rank: usize) -> Result<RootSystemData> {
    let ok = match family {
        Family::A => rank >= 1,
        Family::D => rank >= 4,
        Family::E => (6..=8).contains(&rank),
    };
    if !ok {
        return Err(Error::UnsupportedType(format!("{family}_{rank}")));
    }

    // Finite Dynkin edges (1-based node pairs).
    let mut edges: Vec<(usize, usize)> = Vec::new();
    match family {
        Family::A => {
            for i in 1..rank {
                edges.push((i, i + 1));
            }
        }
        Family::D => {
            for i in 1..rank - 2 {
                edges.push((i, i + 1));
            }
            edges.push((rank - 2, rank - 1));
            edges.push((rank - 2, rank));
        }
        Family::E => {
            let chain = rank - 1;
            for i in 1..chain {
                edges.push((i, i + 1));
            }
            let branch = match rank {
                6 => 3,
                7 => 3,
                8 => 5,
                _ => unreachable!(),
            };
            edges.push((branch, rank));
        }
    }

    let mut cartan = vec![vec![0i64; rank]; rank];
    for i in 0..rank {
        cartan[i][i] = 2;
    }
    for &(i, j) in &edges {
        cartan[i - 1][j - 1] = -1;
        cartan[j - 1][i - 1] = -1;
    }

    let positive_roots = positive_roots_by_closure(&cartan);
    let highest_root = positive_roots
        .last()
        .expect("nonempty positive root set")
        .clone();

    // Affine node attachment, Kac labeling.
    let affine_neighbors: Vec<usize> = match family {
        Family::A => {
            if rank == 1 {
                vec![1]
            } else {
                vec![1, rank]
            }
        }
        Family::D => vec![2],
        Family::E => match rank {
            6 => vec![6],
            7 | 8 => vec![1],
            _ => unreachable!(),
        },
    };
    let n1 = rank + 1;
    let mut affine_cartan = vec![vec![0i64; n1]; n1];
    for i in 0..rank {
        for j in 0..rank {
            affine_cartan[i + 1][j + 1] = cartan[i][j];
        }
    }
    affine_cartan[0][0] = 2;
    let bond = if family == Family::A && rank == 1 { -2 } else { -1 };
    for &j in &affine_neighbors {
        affine_cartan[0][j] = bond;
        affine_cartan[j][0] = bond;
    }

    // Marks: a_0 = 1, finite marks are the coordinates of the highest root.
    let mut marks = vec![1i64];
    marks.extend(highest_root.iter().copied());
    let comarks = marks.clone(); // ADE: a_i = a_i^v

    let inverse_cartan = invert_integer_matrix(&cartan)?;

    let data = RootSystemData {
        family,
        rank,
        cartan,
        affine_cartan,
        marks,
        comarks,
        positive_roots,
        highest_root,
        inverse_cartan,
    };
    debug_assert!(check_kernel_relations(&data));
    Ok(data)
}

fn check_kernel_relations(data: &RootSystemData) -> bool {
    let n1 = data.rank + 1;
    for i in 0..n1 {
        let col: i64 = (0..n1).map(|j| data.affine_cartan[i][j] * data.marks[j]).sum();
        let row: i64 = (0..n1)
            .map(|j| data.comarks[j] * data.affine_cartan[j][i])
            .sum();
        if col != 0 || row != 0 {
            return false;
        }
    }
    true
}

/// Generates all positive roots from the simple roots by upward closure,
/// using the root-string condition. Returns them sorted by height then lex.
fn positive_roots_by_closure(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut roots: HashSet<Vec<i64>> = HashSet::new();
    let mut frontier: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        roots.insert(e.clone());
        frontier.push(e);
    }
    while let Some(beta) = frontier.pop() {
        for i in 0..n {
            // <beta, alpha_i^v> = sum_j a_{ij} beta_j
            let pairing: i64 = (0..n).map(|j| cartan[i][j] * beta[j]).sum();
            // p = max k with beta - k*alpha_i a root
            let mut p = 0i64;
            loop {
                let mut down = beta.clone();
                down[i] -= p + 1;
                if down.iter().any(|&c| c < 0) || !roots.contains(&down) {
                    break;
                }
                p += 1;
            }
            if p - pairing > 0 {
                let mut up = beta.clone();
                up[i] += 1;
                if roots.insert(up.clone()) {
                    frontier.push(up);
                }
            }
        }
    }
    let mut out: Vec<Vec<i64>> = roots.into_iter().collect();
    out.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
    out
}

fn invert_integer_matrix(m: &[Vec<i64>]) -> Result<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if j < n {
                        Rat::from_integer(m[i][j])
                    } else {
                        Rat::from_integer(i64::from(j - n == i))
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| a[r][col] != Rat::from_integer(0))
            .ok_or_else(|| Error::Internal("singular Cartan matrix".into()))?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for j in 0..2 * n {
            a[col][j] *= inv;
        }
        for r in 0..n {
            if r != col && a[r][col] != Rat::from_integer(0) {
                let factor = a[r][col];
                for j in 0..2 * n {
                    let sub = factor * a[col][j];
                    a[r][j] -= sub;
                }
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n..].to_vec()).collect())
}
