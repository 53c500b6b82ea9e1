use std::collections::BTreeMap;

use serde::Serialize;

use super::{assemble, bucket, Colored, KoszulGenerator, QuotientCell};
use crate::betti::betti_table;
use crate::cochain::{cohomology_dims, reduced_cohomology_of_restriction, CochainComplex};
use crate::coloring::{kappa_unchecked, Partition};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::FieldSpec;
use crate::subset::ColorSet;

/// Basis of `C^{*,L}(Z_K/S_α)`: cells `B_(σ, L ∖ I_α(σ))` for faces `σ ⊆ ω_L`.
pub fn quotient_cells(cx: &Colored<'_>, l: ColorSet) -> Vec<QuotientCell> {
    let omega = cx.omega(l);
    cx.complex
        .faces_within(omega)
        .map(|sigma| QuotientCell {
            sigma,
            colors: l.difference(cx.colors_of(sigma)),
        })
        .collect()
}

/// `d B*_(σ,I) = Σ_{i∈I} κ(i,I) Σ_{ω = σ+v ∈ K, v ∈ α_i} B*_(ω, I∖{i})`.
pub fn quotient_coboundary(cx: &Colored<'_>, cell: &QuotientCell) -> Vec<(QuotientCell, i64)> {
    let mut out = Vec::new();
    for i in cell.colors.iter() {
        let sign = kappa_unchecked(i, cell.colors);
        for v in cx.partition.block(i).iter() {
            let omega = cell.sigma.with(v);
            if cx.complex.contains(omega) {
                out.push((
                    QuotientCell {
                        sigma: omega,
                        colors: cell.colors.without(i),
                    },
                    sign,
                ));
            }
        }
    }
    out
}

pub(crate) fn quotient_complex(cx: &Colored<'_>, l: ColorSet) -> CochainComplex {
    let n = l.len() as i32;
    let cells = quotient_cells(cx, l);
    let basis = bucket(
        n,
        2 * n,
        cells.into_iter().map(|c| (c.dimension() as i32, c)),
    );
    assemble(n, &basis, |c| quotient_coboundary(cx, c))
}

/// `C^{*,L}(Z_K/S_α)`, graded by cell dimension (degrees `|L|..=2|L|`).
pub fn quotient_cochain_complex(
    k: &SimplicialComplex,
    alpha: &Partition,
    l: ColorSet,
) -> Result<CochainComplex> {
    let cx = Colored::new(k, alpha)?;
    if let Some(color) = l.iter().find(|&c| c > cx.r()) {
        return Err(Error::ColorOutOfRange { color, r: cx.r() });
    }
    Ok(quotient_complex(&cx, l))
}

/// `ι*_α`: `B*_(σ,h,I) ↦ B*_(σ,I)` when `I ∩ I_α(σ) = ∅` and `h = 1_σ`, otherwise 0.
pub fn iota_star(cx: &Colored<'_>, g: &KoszulGenerator) -> Option<QuotientCell> {
    let disjoint = g.colors.is_disjoint(cx.colors_of(g.sigma));
    let unit_weight = g.sigma.iter().all(|j| g.h.get(j) == 1) && g.h.support() == g.sigma;
    (disjoint && unit_weight).then_some(QuotientCell {
        sigma: g.sigma,
        colors: g.colors,
    })
}

/// `dim H^q(Z_K/S_α)` by three independent routes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientCohomology {
    /// From the cellular complexes `C^{*,L}`.
    pub cellular: BTreeMap<usize, u64>,
    /// `Σ_L dim H̃^{q-|L|-1}(K|ω_L)`.
    pub subcomplexes: BTreeMap<usize, u64>,
    /// `Σ_L β_{|ω_L|+|L|-q, ω_L}`.
    pub betti: BTreeMap<usize, u64>,
}

impl QuotientCohomology {
    pub fn agree(&self) -> bool {
        self.cellular == self.subcomplexes && self.cellular == self.betti
    }
}

pub fn quotient_cohomology(
    k: &SimplicialComplex,
    alpha: &Partition,
    field: FieldSpec,
) -> Result<QuotientCohomology> {
    let cx = Colored::new(k, alpha)?;
    let table = betti_table(k, field)?;
    let mut cellular: BTreeMap<usize, u64> = BTreeMap::new();
    let mut subcomplexes: BTreeMap<usize, u64> = BTreeMap::new();
    let mut betti: BTreeMap<usize, u64> = BTreeMap::new();
    for l in cx.partition.all_colors().subsets() {
        let n = l.len();
        let omega = cx.omega(l);
        for (q, d) in cohomology_dims(&quotient_complex(&cx, l), field)? {
            if d > 0 {
                *cellular.entry(q as usize).or_default() += d as u64;
            }
        }
        for (j, d) in reduced_cohomology_of_restriction(k, omega, field) {
            if d > 0 {
                *subcomplexes.entry((j + n as i32 + 1) as usize).or_default() += d as u64;
            }
        }
        // β_{|ω|+|L|-q, ω} is nonzero only for |ω|+|L|-q in 0..=|ω|
        for q in n..=omega.len() + n {
            let b = table.get(omega.len() + n - q, omega);
            if b > 0 {
                *betti.entry(q).or_default() += b;
            }
        }
    }
    Ok(QuotientCohomology {
        cellular,
        subcomplexes,
        betti,
    })
}

/// Nonzero `dim H^q(Z_K/S_α)`; errors if the three routes disagree.
pub fn quotient_cohomology_dims(
    k: &SimplicialComplex,
    alpha: &Partition,
    field: FieldSpec,
) -> Result<BTreeMap<usize, u64>> {
    let qc = quotient_cohomology(k, alpha, field)?;
    if !qc.agree() {
        let q = qc
            .cellular
            .keys()
            .chain(qc.subcomplexes.keys())
            .chain(qc.betti.keys())
            .copied()
            .find(|q| {
                qc.cellular.get(q) != qc.subcomplexes.get(q)
                    || qc.cellular.get(q) != qc.betti.get(q)
            })
            .unwrap_or(0);
        return Err(Error::MismatchFound {
            what: "quotient cohomology (cellular vs subcomplex vs Betti)".into(),
            q,
            colors: Vec::new(),
        });
    }
    Ok(qc.cellular)
}
