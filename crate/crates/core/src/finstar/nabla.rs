use serde::Serialize;

use crate::sset::monotone_maps;

/// A poset map `[n] -> [m]` in the simplex category.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MonotoneMap {
    pub n: usize,
    pub m: usize,
    pub table: Vec<usize>,
}

impl MonotoneMap {
    pub fn identity(n: usize) -> Self {
        MonotoneMap { n, m: n, table: (0..=n).collect() }
    }

    /// `self o first`.
    pub fn after(&self, first: &MonotoneMap) -> MonotoneMap {
        MonotoneMap { n: first.n, m: self.m, table: first.table.iter().map(|&i| self.table[i]).collect() }
    }

    /// Inclusion of a subinterval: consecutive values.
    pub fn is_interval_inclusion(&self) -> bool {
        self.table.windows(2).all(|w| w[1] == w[0] + 1)
    }

    /// Preserves minimum and maximum.
    pub fn is_endpoint_preserving(&self) -> bool {
        self.table[0] == 0 && self.table[self.n] == self.m
    }

    pub fn all(n: usize, m: usize) -> Vec<MonotoneMap> {
        monotone_maps(n, m).into_iter().map(|table| MonotoneMap { n, m, table }).collect()
    }
}

/// A poset map `[[n]] -> [[m]]` preserving `-1` and the maximum, where
/// `[[n]] = {-1 < 0 < .. < n}`. `table[x + 1]` is the image of `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct NablaMap {
    pub n: usize,
    pub m: usize,
    pub table: Vec<i64>,
}

impl NablaMap {
    pub fn apply(&self, x: i64) -> i64 {
        self.table[(x + 1) as usize]
    }

    pub fn identity(n: usize) -> Self {
        NablaMap { n, m: n, table: (-1..=n as i64).collect() }
    }

    /// `self o first`.
    pub fn after(&self, first: &NablaMap) -> NablaMap {
        NablaMap { n: first.n, m: self.m, table: first.table.iter().map(|&x| self.apply(x)).collect() }
    }

    pub fn is_valid(&self) -> bool {
        self.table.len() == self.n + 2
            && self.table.windows(2).all(|w| w[0] <= w[1])
            && self.table[0] == -1
            && self.table[self.n + 1] == self.m as i64
    }

    fn preimage_size(&self, y: i64) -> usize {
        self.table.iter().filter(|&&v| v == y).count()
    }

    /// Every non-extremum element of the codomain has exactly one preimage.
    pub fn interior_preimages_unique(&self) -> bool {
        (0..self.m as i64).all(|y| self.preimage_size(y) == 1)
    }

    /// The two extrema of the codomain have singleton preimages.
    pub fn extremal_preimages_singleton(&self) -> bool {
        self.preimage_size(-1) == 1 && self.preimage_size(self.m as i64) == 1
    }

    pub fn all(n: usize, m: usize) -> Vec<NablaMap> {
        // Monotone [n+1] -> [m+1] fixing both ends, shifted down by one.
        monotone_maps(n + 1, m + 1)
            .into_iter()
            .map(|t| NablaMap { n, m, table: t.into_iter().map(|v| v as i64 - 1).collect() })
            .filter(NablaMap::is_valid)
            .collect()
    }
}

/// `phi(u): [[m]] -> [[n]]`, sending `x` (the down-set `{i <= x}`) to the
/// down-set `u^{-1}{i <= x}`, i.e. to the largest `j` with `u(j) <= x`.
pub fn delta_to_nabla(u: &MonotoneMap) -> NablaMap {
    let table = (-1..=u.m as i64)
        .map(|x| {
            (0..=u.n)
                .rev()
                .find(|&j| u.table[j] as i64 <= x)
                .map_or(-1, |j| j as i64)
        })
        .collect();
    NablaMap { n: u.m, m: u.n, table }
}
