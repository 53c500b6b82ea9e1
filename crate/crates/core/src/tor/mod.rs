//! The cochain complexes attached to a vertex coloring: the cellular cochains
//! of the quotient `Z_K / S_α`, the cellular cochains of the auxiliary space
//! `X(K, α)`, and the Koszul complex `Λ[t_1..t_r] ⊗ k(K)`, all split by the
//! color set `L ⊆ [r]`.
//!
//! The `L`-pieces of the Koszul complex are infinite dimensional. Its
//! differential preserves the color-weight vector `w ∈ ℕ^r`
//! (`w_i = [i ∈ I] + Σ_{j ∈ α_i} h(j)`), so each piece splits further into
//! finite complexes indexed by `w`, and `Tor_{q,L}` is the sum of their
//! cohomology over all `w` with `supp(w) = L`.

mod checks;
mod koszul;
mod quotient;

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use crate::cochain::CochainComplex;
use crate::coloring::{colors_of, require_nondegenerate, Partition};
use crate::complex::SimplicialComplex;
use crate::error::Result;
use crate::linalg::Matrix;
use crate::subset::{ColorSet, VertexSubset};

pub use checks::{
    psi_iota_checks, verify_tor_agreement, verify_tor_agreement_with_bound, PsiIotaReport,
    TorAgreementRecord, TorAgreementReport,
};
pub use koszul::{
    color_weight, default_weight_bound, koszul_differential, koszul_generators, koszul_piece,
    tor_dims, tor_dims_per_weight, x_cell_coboundary, x_cells, Stabilization, TorEntry, TorTable,
};
pub use quotient::{
    iota_star, quotient_cells, quotient_coboundary, quotient_cochain_complex, quotient_cohomology,
    quotient_cohomology_dims, QuotientCohomology,
};

/// A cell `B_(σ, I)` of `Z_K / S_α`, with `I ∩ I_α(σ) = ∅`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuotientCell {
    pub sigma: VertexSubset,
    pub colors: ColorSet,
}

impl QuotientCell {
    /// `2|σ| + |I|`.
    pub fn dimension(&self) -> usize {
        2 * self.sigma.len() + self.colors.len()
    }
}

/// A weight `h: [m] → ℕ`, stored densely (`values[j - 1] = h(j)`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<u32>);

impl Weight {
    pub fn zero(m: usize) -> Self {
        Weight(vec![0; m])
    }

    /// `1_σ`.
    pub fn indicator(m: usize, sigma: VertexSubset) -> Self {
        Weight((1..=m).map(|j| sigma.contains(j) as u32).collect())
    }

    pub fn get(&self, j: usize) -> u32 {
        self.0[j - 1]
    }

    pub fn support(&self) -> VertexSubset {
        VertexSubset::from_elements(
            self.0
                .iter()
                .enumerate()
                .filter(|(_, &v)| v > 0)
                .map(|(k, _)| k + 1),
        )
    }

    /// `h + δ_j`.
    pub fn bumped(&self, j: usize) -> Self {
        let mut out = self.clone();
        out.0[j - 1] += 1;
        out
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// The monomial generator `t_I v^(σ,h)`; also names the cell `B_(σ,h,I)` of `X(K, α)`.
///
/// Field order gives the basis order inside each degree: σ mask, then `h`, then `I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KoszulGenerator {
    pub sigma: VertexSubset,
    pub h: Weight,
    pub colors: ColorSet,
}

impl KoszulGenerator {
    /// The unit `t_∅ v^(∅,0)`.
    pub fn unit(m: usize) -> Self {
        KoszulGenerator {
            sigma: VertexSubset::EMPTY,
            h: Weight::zero(m),
            colors: ColorSet::EMPTY,
        }
    }

    /// `q = |I|`; the generator sits in cohomological degree `−q`.
    pub fn exterior_degree(&self) -> usize {
        self.colors.len()
    }

    /// Dimension of the cell `B_(σ,h,I)`: `|I| + 2 Σ h`.
    pub fn cell_dimension(&self) -> usize {
        self.colors.len() + 2 * self.h.total() as usize
    }
}

/// A complex together with a nondegenerate partition of its vertices.
#[derive(Clone, Copy, Debug)]
pub struct Colored<'a> {
    pub complex: &'a SimplicialComplex,
    pub partition: &'a Partition,
}

impl<'a> Colored<'a> {
    /// Fails with `DegeneratePartition` (or `PartitionMismatch`) when `α` does not color `K`.
    pub fn new(complex: &'a SimplicialComplex, partition: &'a Partition) -> Result<Self> {
        require_nondegenerate(complex, partition)?;
        Ok(Colored { complex, partition })
    }

    pub fn m(&self) -> usize {
        self.complex.vertex_count()
    }

    pub fn r(&self) -> usize {
        self.partition.block_count()
    }

    pub fn colors_of(&self, sigma: VertexSubset) -> ColorSet {
        colors_of(self.partition, sigma)
    }

    /// `σ_{i}`: the unique vertex of `σ` in block `α_i`.
    pub fn vertex_of_color(&self, sigma: VertexSubset, i: usize) -> Option<usize> {
        sigma.intersection(self.partition.block(i)).iter().next()
    }

    /// `ω^α_L`.
    pub fn omega(&self, l: ColorSet) -> VertexSubset {
        l.iter().fold(VertexSubset::EMPTY, |acc, i| {
            acc.union(self.partition.block(i))
        })
    }
}

/// Sparse linear combination, combined and with zero terms dropped.
pub(crate) fn normalize<G: Ord + Clone>(mut terms: Vec<(G, i64)>) -> Vec<(G, i64)> {
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Vec<(G, i64)> = Vec::with_capacity(terms.len());
    for (g, c) in terms {
        match out.last_mut() {
            Some((last, acc)) if *last == g => *acc += c,
            _ => out.push((g, c)),
        }
    }
    out.retain(|(_, c)| *c != 0);
    out
}

/// Assembles a cochain complex from a graded basis and a coboundary on generators.
///
/// `basis[k]` lists the generators in degree `lo + k`, already in basis order.
pub(crate) fn assemble<G, F>(lo: i32, basis: &[Vec<G>], coboundary: F) -> CochainComplex
where
    G: Clone + Eq + Hash + std::fmt::Debug,
    F: Fn(&G) -> Vec<(G, i64)>,
{
    let index: Vec<HashMap<&G, usize>> = basis
        .iter()
        .map(|gens| gens.iter().enumerate().map(|(i, g)| (g, i)).collect())
        .collect();
    let sizes: Vec<usize> = basis.iter().map(Vec::len).collect();
    let mut d = Vec::with_capacity(basis.len().saturating_sub(1));
    for k in 0..basis.len().saturating_sub(1) {
        let mut mat = Matrix::zeros(sizes[k + 1], sizes[k]);
        for (col, g) in basis[k].iter().enumerate() {
            for (target, c) in coboundary(g) {
                let row = *index[k + 1]
                    .get(&target)
                    .unwrap_or_else(|| panic!("coboundary of {g:?} leaves the piece: {target:?}"));
                mat.add_to(row, col, c);
            }
        }
        d.push(mat);
    }
    let labels = basis
        .iter()
        .map(|gens| gens.iter().map(|g| format!("{g:?}")).collect())
        .collect();
    CochainComplex::new(lo, sizes, d).with_labels(labels)
}

/// Groups `(degree, generator)` pairs into contiguous degree buckets `lo..=hi`.
pub(crate) fn bucket<G: Ord>(
    lo: i32,
    hi: i32,
    gens: impl IntoIterator<Item = (i32, G)>,
) -> Vec<Vec<G>> {
    let mut map: BTreeMap<i32, Vec<G>> = (lo..=hi).map(|q| (q, Vec::new())).collect();
    for (q, g) in gens {
        map.get_mut(&q).expect("degree within range").push(g);
    }
    map.into_values()
        .map(|mut v| {
            v.sort();
            v
        })
        .collect()
}
