//! Multigraded Betti numbers through Hochster's formula, and the cohomology
//! dimensions of the moment-angle complex.
//!
//! `β_{i,ω} = dim H̃^{|ω|-i-1}(K|ω)`, so the whole table is one reduced
//! cohomology computation per subset `ω ⊆ [m]`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cochain::reduced_cohomology_of_restriction;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::FieldSpec;
use crate::subset::{subsets_by_size, VertexSubset};

/// Nonzero multigraded Betti numbers `β_{i,ω}`, keyed by `(i, ω)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    field: FieldSpec,
    entries: BTreeMap<(usize, VertexSubset), u64>,
}

/// One row of the JSON form of a [`BettiTable`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub i: usize,
    pub omega: Vec<usize>,
    pub beta: u64,
}

impl BettiTable {
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, i: usize, omega: VertexSubset) -> u64 {
        self.entries.get(&(i, omega)).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of all entries.
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// `Σ_ω β_{i,ω}`.
    pub fn total_in_degree(&self, i: usize) -> u64 {
        self.entries
            .iter()
            .filter(|((j, _), _)| *j == i)
            .map(|(_, &b)| b)
            .sum()
    }

    /// Entries in (|ω|, ω, i) order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, VertexSubset, u64)> + '_ {
        let mut all: Vec<_> = self.entries.iter().map(|(&(i, w), &b)| (i, w, b)).collect();
        all.sort_by_key(|&(i, w, _)| (w.len(), w.0, i));
        all.into_iter()
    }

    pub fn to_entries(&self) -> Vec<BettiEntry> {
        self.iter()
            .map(|(i, w, beta)| BettiEntry {
                i,
                omega: w.to_vec(),
                beta,
            })
            .collect()
    }

    pub fn from_entries(field: FieldSpec, entries: &[BettiEntry]) -> Self {
        BettiTable {
            field,
            entries: entries
                .iter()
                .filter(|e| e.beta > 0)
                .map(|e| {
                    (
                        (e.i, VertexSubset::from_elements(e.omega.iter().copied())),
                        e.beta,
                    )
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_entries()).expect("plain data serialises")
    }
}

/// `β_{i,ω}` for a single `(i, ω)`.
pub fn betti_number(
    k: &SimplicialComplex,
    i: usize,
    omega: VertexSubset,
    field: FieldSpec,
) -> Result<u64> {
    let universe = VertexSubset::full(k.vertex_count());
    if !omega.is_subset(universe) {
        let vertex = omega.difference(universe).iter().next().unwrap_or(0);
        return Err(Error::VertexOutOfRange {
            vertex,
            m: k.vertex_count(),
        });
    }
    let degree = omega.len() as i32 - i as i32 - 1;
    if degree < -1 {
        return Ok(0);
    }
    let h = reduced_cohomology_of_restriction(k, omega, field);
    Ok(h.get(&degree).copied().unwrap_or(0) as u64)
}

fn restriction_row(
    k: &SimplicialComplex,
    omega: VertexSubset,
    field: FieldSpec,
) -> Vec<((usize, VertexSubset), u64)> {
    let n = omega.len() as i32;
    reduced_cohomology_of_restriction(k, omega, field)
        .into_iter()
        .filter(|&(_, d)| d > 0)
        .map(|(q, d)| (((n - q - 1) as usize, omega), d as u64))
        .collect()
}

/// All nonzero `β_{i,ω}`; ω is visited by ascending cardinality, then mask.
pub fn betti_table(k: &SimplicialComplex, field: FieldSpec) -> Result<BettiTable> {
    let m = k.vertex_count();
    if m > k.vertex_cap() {
        return Err(Error::VertexBudgetExceeded {
            requested: m,
            cap: k.vertex_cap(),
        });
    }
    let order = subsets_by_size(m);
    let rows: Vec<_> = order
        .par_iter()
        .map(|&b| restriction_row(k, VertexSubset(b), field))
        .collect();
    Ok(BettiTable {
        field,
        entries: rows.into_iter().flatten().collect(),
    })
}

/// Sequential reference for [`betti_table`].
pub fn betti_table_sequential(k: &SimplicialComplex, field: FieldSpec) -> BettiTable {
    let entries = subsets_by_size(k.vertex_count())
        .into_iter()
        .flat_map(|b| restriction_row(k, VertexSubset(b), field))
        .collect();
    BettiTable { field, entries }
}

/// `dim H^q(Z_K)` evaluated two ways.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZkCohomology {
    /// `Σ_ω dim H̃^{q-|ω|-1}(K|ω)`.
    pub by_subcomplexes: BTreeMap<usize, u64>,
    /// `Σ_ω β_{2|ω|-q, ω}`.
    pub by_betti: BTreeMap<usize, u64>,
}

impl ZkCohomology {
    pub fn agree(&self) -> bool {
        self.by_subcomplexes == self.by_betti
    }

    pub fn total(&self) -> u64 {
        self.by_subcomplexes.values().sum()
    }
}

/// Nonzero cohomology dimensions of the moment-angle complex `Z_K`.
pub fn zk_cohomology(k: &SimplicialComplex, field: FieldSpec) -> Result<ZkCohomology> {
    let m = k.vertex_count();
    if m > k.vertex_cap() {
        return Err(Error::VertexBudgetExceeded {
            requested: m,
            cap: k.vertex_cap(),
        });
    }
    let per_omega: Vec<(VertexSubset, BTreeMap<i32, usize>)> = subsets_by_size(m)
        .par_iter()
        .map(|&b| {
            let w = VertexSubset(b);
            (w, reduced_cohomology_of_restriction(k, w, field))
        })
        .collect();
    let mut by_subcomplexes: BTreeMap<usize, u64> = BTreeMap::new();
    for (w, h) in &per_omega {
        for (&j, &d) in h {
            if d > 0 {
                // j = q - |ω| - 1
                let q = (j + w.len() as i32 + 1) as usize;
                *by_subcomplexes.entry(q).or_default() += d as u64;
            }
        }
    }
    let table = betti_table(k, field)?;
    let mut by_betti: BTreeMap<usize, u64> = BTreeMap::new();
    for q in 0..=2 * m {
        let total: u64 = subsets_by_size(m)
            .into_iter()
            .map(VertexSubset)
            .filter(|w| 2 * w.len() >= q)
            .map(|w| table.get(2 * w.len() - q, w))
            .sum();
        if total > 0 {
            by_betti.insert(q, total);
        }
    }
    Ok(ZkCohomology {
        by_subcomplexes,
        by_betti,
    })
}

/// `dim H^q(Z_K)`, nonzero entries only. Errors if the two routes disagree.
pub fn zk_cohomology_dims(k: &SimplicialComplex, field: FieldSpec) -> Result<BTreeMap<usize, u64>> {
    let zk = zk_cohomology(k, field)?;
    if !zk.agree() {
        let q = zk
            .by_subcomplexes
            .keys()
            .chain(zk.by_betti.keys())
            .copied()
            .find(|q| zk.by_subcomplexes.get(q) != zk.by_betti.get(q))
            .unwrap_or(0);
        return Err(Error::MismatchFound {
            what: "moment-angle cohomology (subcomplex sum vs Betti sum)".into(),
            q,
            colors: Vec::new(),
        });
    }
    Ok(zk.by_subcomplexes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::FieldSpec::Rationals;

    fn vs(v: &[usize]) -> VertexSubset {
        VertexSubset::from_elements(v.iter().copied())
    }

    fn square() -> SimplicialComplex {
        SimplicialComplex::from_facets(4, &[vs(&[1, 2]), vs(&[2, 3]), vs(&[3, 4]), vs(&[1, 4])])
            .unwrap()
    }

    #[test]
    fn single_numbers() {
        let k = square();
        assert_eq!(
            betti_number(&k, 0, VertexSubset::EMPTY, Rationals).unwrap(),
            1
        );
        assert_eq!(
            betti_number(&k, 2, VertexSubset::full(4), Rationals).unwrap(),
            1
        );
        assert_eq!(betti_number(&k, 1, vs(&[1, 3]), Rationals).unwrap(), 1);
        assert_eq!(betti_number(&k, 3, vs(&[1, 3]), Rationals).unwrap(), 0);
        assert!(matches!(
            betti_number(&k, 0, vs(&[7]), Rationals),
            Err(Error::VertexOutOfRange { vertex: 7, m: 4 })
        ));
    }

    #[test]
    fn tables() {
        let b1 = SimplicialComplex::boundary_simplex(1).unwrap();
        let t = betti_table(&b1, Rationals).unwrap();
        let got: Vec<_> = t.iter().collect();
        assert_eq!(got, vec![(0, VertexSubset::EMPTY, 1), (1, vs(&[1, 2]), 1)]);

        let t = betti_table(&square(), Rationals).unwrap();
        let got: Vec<_> = t.iter().collect();
        assert_eq!(
            got,
            vec![
                (0, VertexSubset::EMPTY, 1),
                (1, vs(&[1, 3]), 1),
                (1, vs(&[2, 4]), 1),
                (2, vs(&[1, 2, 3, 4]), 1),
            ]
        );
        assert_eq!(t.total(), 4);

        let simplex = SimplicialComplex::simplex(3).unwrap();
        let t = betti_table(&simplex, Rationals).unwrap();
        assert_eq!(
            t.iter().collect::<Vec<_>>(),
            vec![(0, VertexSubset::EMPTY, 1)]
        );
    }

    #[test]
    fn json_shape() {
        let t = betti_table(&square(), Rationals).unwrap();
        let v = t.to_json();
        assert_eq!(v.as_array().unwrap().len(), 4);
        assert_eq!(
            v[3],
            serde_json::json!({"i": 2, "omega": [1, 2, 3, 4], "beta": 1})
        );
        let back = BettiTable::from_entries(Rationals, &t.to_entries());
        assert_eq!(back, t);
    }

    #[test]
    fn moment_angle() {
        let b1 = SimplicialComplex::boundary_simplex(1).unwrap();
        assert_eq!(
            zk_cohomology_dims(&b1, Rationals).unwrap(),
            BTreeMap::from([(0, 1), (3, 1)])
        );
        assert_eq!(
            zk_cohomology_dims(&square(), Rationals).unwrap(),
            BTreeMap::from([(0, 1), (3, 2), (6, 1)])
        );
        let simplex = SimplicialComplex::simplex(3).unwrap();
        assert_eq!(
            zk_cohomology_dims(&simplex, Rationals).unwrap(),
            BTreeMap::from([(0, 1)])
        );
    }

    #[test]
    fn parallel_matches_sequential() {
        let k = square();
        assert_eq!(
            betti_table(&k, Rationals).unwrap(),
            betti_table_sequential(&k, Rationals)
        );
    }
}
