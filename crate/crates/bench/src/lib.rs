//! Inputs shared by the benchmarks.

use std::sync::Arc;

use fuzzylie::groups::{catalog, FiniteGroup};
use fuzzylie::topology::GradeLattice;
use fuzzylie::{Carrier, FuzzySet, Grade};

/// A fuzzy set on `n` points whose grades cycle through `k/q`.
pub fn staircase(carrier: &Arc<Carrier>, q: u64, shift: u64) -> FuzzySet {
    let grades = (0..carrier.len() as u64).map(|i| Grade::new((i * 3 + shift) % (q + 1), q).unwrap()).collect();
    FuzzySet::new(carrier.clone(), grades).unwrap()
}

/// Ambient set and generators for a topology on `n` points over `k/q`.
pub fn topology_input(n: usize, q: u64, generators: u64) -> (FuzzySet, Vec<FuzzySet>, GradeLattice) {
    let carrier = Arc::new(Carrier::numbered(n).unwrap());
    let ambient = FuzzySet::ones(carrier.clone());
    let gens = (0..generators).map(|s| staircase(&carrier, q, s)).collect();
    (ambient, gens, GradeLattice::new(q).unwrap())
}

/// Every group in the catalog with every fuzzy subset graded in `{0, 1/2, 1}`
/// on its first few elements, the rest at `1/2`.
pub fn subgroup_inputs() -> Vec<(FiniteGroup, Vec<FuzzySet>)> {
    catalog()
        .into_iter()
        .map(|(_, g)| {
            let n = g.order();
            let sets = (0..3usize.pow(n.min(5) as u32))
                .map(|mut code| {
                    let grades = (0..n)
                        .map(|i| {
                            let k = if i < 5 { code % 3 } else { 1 };
                            if i < 5 {
                                code /= 3;
                            }
                            Grade::new(k as u64, 2).unwrap()
                        })
                        .collect();
                    FuzzySet::new(g.carrier().clone(), grades).unwrap()
                })
                .collect();
            (g, sets)
        })
        .collect()
}
