//! Sequences nu = ((r_1,l_1),...,(r_p,l_p)) of elements of I_0 x Z_{>0},
//! naming a tensor product of Kirillov-Reshetikhin factors.

use crate::cartan::RootSystemData;
use crate::error::{Error, Result};
use crate::weight::FiniteWeight;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NuSequence {
    /// Pairs (r_j, l_j) with r_j in I_0 (1-based) and l_j > 0.
    pub pairs: Vec<(usize, i64)>,
}

impl NuSequence {
    pub fn new(pairs: Vec<(usize, i64)>) -> Self {
        NuSequence { pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn validate(&self, rs: &RootSystemData) -> Result<()> {
        for &(r, l) in &self.pairs {
            if r == 0 || r > rs.rank {
                return Err(Error::Domain(format!(
                    "node {r} out of range 1..={}",
                    rs.rank
                )));
            }
            if l <= 0 {
                return Err(Error::Domain(format!("level {l} must be positive")));
            }
        }
        Ok(())
    }

    pub fn levels_sorted(&self) -> bool {
        self.pairs.windows(2).all(|w| w[0].1 <= w[1].1)
    }

    /// Copy with the levels sorted ascending (sound for M-side comparisons
    /// by reorder invariance).
    pub fn sorted(&self) -> NuSequence {
        let mut pairs = self.pairs.clone();
        pairs.sort_by_key(|&(_, l)| l);
        NuSequence { pairs }
    }

    /// lambda_nu = sum_j l_j * w_{r_j}, in fundamental-weight coordinates.
    pub fn top_weight(&self, rank: usize) -> FiniteWeight {
        let mut wt = vec![0i64; rank];
        for &(r, l) in &self.pairs {
            wt[r - 1] += l;
        }
        wt
    }

    /// Parses the grammar "(r,l);(r,l);..."; whitespace-insensitive.
    pub fn parse(s: &str) -> Result<NuSequence> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Ok(NuSequence::new(Vec::new()));
        }
        let mut pairs = Vec::new();
        for chunk in cleaned.split(';') {
            let inner = chunk
                .strip_prefix('(')
                .and_then(|c| c.strip_suffix(')'))
                .ok_or_else(|| Error::Parse(format!("expected \"(r,l)\", got {chunk:?}")))?;
            let mut it = inner.split(',');
            let (r, l) = match (it.next(), it.next(), it.next()) {
                (Some(r), Some(l), None) => (r, l),
                _ => return Err(Error::Parse(format!("expected \"(r,l)\", got {chunk:?}"))),
            };
            let r: usize = r
                .parse()
                .map_err(|_| Error::Parse(format!("bad node {r:?}")))?;
            let l: i64 = l
                .parse()
                .map_err(|_| Error::Parse(format!("bad level {l:?}")))?;
            pairs.push((r, l));
        }
        Ok(NuSequence::new(pairs))
    }

    pub fn render(&self) -> String {
        self.pairs
            .iter()
            .map(|(r, l)| format!("({r},{l})"))
            .collect::<Vec<_>>()
            .join(";")
    }
}
