use std::fmt;
use std::str::FromStr;

use serde::Serialize;

/// A based map `<n> -> <m>`. `table[i - 1]` is the image of `i`, with `0`
/// standing for the basepoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PointedMap {
    pub n: usize,
    pub m: usize,
    pub table: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub inert: bool,
    pub strongly_inert: bool,
    pub active: bool,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PointedMapError {
    #[error("expected \"n m : a1 .. an\", got {0:?}")]
    Syntax(String),
    #[error("table has {got} entries, expected {expected}")]
    Length { got: usize, expected: usize },
    #[error("image {value} of {point} exceeds {m}")]
    Range { point: usize, value: usize, m: usize },
}

impl PointedMap {
    pub fn new(n: usize, m: usize, table: Vec<usize>) -> Result<Self, PointedMapError> {
        if table.len() != n {
            return Err(PointedMapError::Length { got: table.len(), expected: n });
        }
        if let Some((i, &v)) = table.iter().enumerate().find(|&(_, &v)| v > m) {
            return Err(PointedMapError::Range { point: i + 1, value: v, m });
        }
        Ok(PointedMap { n, m, table })
    }

    pub fn identity(n: usize) -> Self {
        PointedMap { n, m: n, table: (1..=n).collect() }
    }

    /// The image of `i`, with `apply(0) = 0`.
    pub fn apply(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.table[i - 1]
        }
    }

    /// `self o first`.
    pub fn after(&self, first: &PointedMap) -> PointedMap {
        assert_eq!(first.m, self.n, "based maps are not composable");
        PointedMap { n: first.n, m: self.m, table: first.table.iter().map(|&i| self.apply(i)).collect() }
    }

    /// Non-basepoint elements sent to `j`, in increasing order.
    pub fn preimage(&self, j: usize) -> Vec<usize> {
        (1..=self.n).filter(|&i| self.table[i - 1] == j).collect()
    }

    /// Elements sent into any element of `set` (which must avoid the basepoint).
    pub fn preimage_of(&self, set: &[usize]) -> Vec<usize> {
        (1..=self.n).filter(|&i| set.contains(&self.table[i - 1])).collect()
    }

    pub fn classify(&self) -> Classification {
        let singles: Option<Vec<usize>> = (1..=self.m)
            .map(|j| match self.preimage(j).as_slice() {
                [i] => Some(*i),
                _ => None,
            })
            .collect();
        let inert = singles.is_some();
        let strongly_inert = singles.is_some_and(|s| s.windows(2).all(|w| w[0] < w[1]));
        let active = self.table.iter().all(|&v| v != 0);
        Classification { inert, strongly_inert, active }
    }

    pub fn is_active(&self) -> bool {
        self.classify().active
    }

    /// The unique factorization `self = act o inert` with `inert` strongly
    /// inert and `act` active.
    pub fn factorize(&self) -> (PointedMap, PointedMap) {
        let support: Vec<usize> = (1..=self.n).filter(|&i| self.apply(i) != 0).collect();
        let inert = rho(self.n, &support);
        let act = PointedMap { n: support.len(), m: self.m, table: support.iter().map(|&i| self.apply(i)).collect() };
        (inert, act)
    }

    /// Order-preserving identification of `<|set|>` with `set`, followed by
    /// inclusion into `<n>`.
    pub fn inclusion(n: usize, set: &[usize]) -> PointedMap {
        PointedMap { n: set.len(), m: n, table: set.to_vec() }
    }

    pub fn fold(n: usize) -> PointedMap {
        PointedMap { n, m: 1, table: vec![1; n] }
    }

    /// The summand interchange `<n> v <k> -> <k> v <n>`.
    pub fn swap(n: usize, k: usize) -> PointedMap {
        let table = (1..=n).map(|i| k + i).chain(1..=k).collect();
        PointedMap { n: n + k, m: k + n, table }
    }

    /// Wedge sum: `f` on the first summand, `g` shifted on the second.
    pub fn wedge(&self, g: &PointedMap) -> PointedMap {
        let table = self
            .table
            .iter()
            .copied()
            .chain(g.table.iter().map(|&v| if v == 0 { 0 } else { self.m + v }))
            .collect();
        PointedMap { n: self.n + g.n, m: self.m + g.m, table }
    }

    pub fn wedge_all(maps: &[PointedMap]) -> PointedMap {
        maps.iter().fold(PointedMap::identity(0), |acc, f| acc.wedge(f))
    }
}

/// `rho^S: <n> -> <|S|>`, collapsing the complement of `S` and
/// identifying `S` with `1..|S|` in order.
pub fn rho(n: usize, set: &[usize]) -> PointedMap {
    let table = (1..=n)
        .map(|i| set.iter().position(|&s| s == i).map_or(0, |p| p + 1))
        .collect();
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    debug_assert_eq!(sorted, set, "rho expects an increasing subset");
    PointedMap { n, m: set.len(), table }
}

/// All based maps `<n> -> <m>` in lexicographic table order.
pub fn all_maps(n: usize, m: usize) -> Vec<PointedMap> {
    let mut out = Vec::new();
    let mut table = vec![0; n];
    loop {
        out.push(PointedMap { n, m, table: table.clone() });
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if table[i] < m {
                table[i] += 1;
                for t in &mut table[i + 1..] {
                    *t = 0;
                }
                break;
            }
        }
    }
}

/// Active maps `<n> -> <m>` in lexicographic order.
pub fn active_maps(n: usize, m: usize) -> Vec<PointedMap> {
    all_maps(n, m).into_iter().filter(PointedMap::is_active).collect()
}

impl fmt::Display for PointedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} :", self.n, self.m)?;
        for v in &self.table {
            write!(f, " {v}")?;
        }
        Ok(())
    }
}

impl FromStr for PointedMap {
    type Err = PointedMapError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let syntax = || PointedMapError::Syntax(s.to_string());
        let (head, tail) = s.split_once(':').ok_or_else(syntax)?;
        let nums = |t: &str| -> Result<Vec<usize>, PointedMapError> {
            t.split_whitespace().map(|x| x.parse().map_err(|_| syntax())).collect()
        };
        let head = nums(head)?;
        let [n, m] = head[..] else { return Err(syntax()) };
        PointedMap::new(n, m, nums(tail)?)
    }
}
