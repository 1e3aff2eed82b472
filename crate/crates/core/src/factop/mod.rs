//! The operad of `n`-factorizations, its algebras in a permutative relative
//! category, the relative categories `Fact_n(C)` and the comparison with
//! `C^n`.

mod algebra;
mod category;
mod operad;
mod witness;

pub use algebra::{canonical_pairs, psi, FactAlgebra, FactAlgebraJson, FactMorphism};
pub use category::{enumerate_algebras, FactCategory, FactTower};
pub use operad::FactOperad;
pub use witness::{
    check_pullback_functoriality, counit_zigzag, lax_pasting_check, lax_square, power, segal_witness, FactComparison,
    LaxSquare,
};

/// A subset of `{1, .., n}` as a bitmask: element `i` is bit `i - 1`.
pub type Subset = u32;

pub fn elements(s: Subset) -> Vec<usize> {
    (0..32).filter(|b| s >> b & 1 == 1).map(|b| b as usize + 1).collect()
}

pub fn subset_of(elems: &[usize]) -> Subset {
    elems.iter().fold(0, |acc, &i| acc | 1 << (i - 1))
}

pub fn full(n: usize) -> Subset {
    if n == 0 {
        0
    } else {
        u32::MAX >> (32 - n)
    }
}

pub fn singleton(i: usize) -> Subset {
    1 << (i - 1)
}

/// Sorted, comma-joined elements; the empty set is the empty string.
pub fn subset_key(s: Subset) -> String {
    elements(s).iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

pub fn parse_subset_key(key: &str) -> Option<Subset> {
    if key.trim().is_empty() {
        return Some(0);
    }
    key.split(',')
        .map(|t| t.trim().parse::<usize>().ok().filter(|&i| (1..=32).contains(&i)))
        .try_fold(0, |acc, i| i.map(|i| acc | singleton(i)))
}

/// Smallest element, `None` for the empty set.
pub fn min_element(s: Subset) -> Option<usize> {
    (s != 0).then(|| s.trailing_zeros() as usize + 1)
}

/// Preimage `f^{-1}(s)` of a subset of `m` under a based map `<n> -> <m>`.
pub fn preimage(f: &crate::finstar::PointedMap, s: Subset) -> Subset {
    (1..=f.n).filter(|&i| f.table[i - 1] != 0 && s >> (f.table[i - 1] - 1) & 1 == 1).fold(0, |acc, i| acc | singleton(i))
}

#[cfg(test)]
mod tests;
