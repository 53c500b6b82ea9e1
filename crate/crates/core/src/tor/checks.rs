use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::koszul::{
    color_weight, default_weight_bound, koszul_differential, koszul_generators, tor_dims,
    x_cell_coboundary, x_cells, TorTable,
};
use super::quotient::{iota_star, quotient_cells, quotient_coboundary, quotient_complex};
use super::{normalize, Colored, KoszulGenerator, QuotientCell};
use crate::cochain::{cohomology_dims, reduced_cohomology_of_restriction};
use crate::coloring::Partition;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::FieldSpec;
use crate::subset::ColorSet;

const MAX_FAILURES: usize = 20;

/// Outcome of the generator-level checks on `ψ_α` and `ι*_α`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PsiIotaReport {
    pub weight_bound: u32,
    /// Cells of `X(K, α)` with all color weights ≤ bound.
    pub cells: usize,
    /// Koszul generators over all `w ∈ {0..bound}^r`.
    pub generators: usize,
    /// Cells and generators coincide and carry matching degree and multidegree.
    pub bijection: bool,
    /// The Koszul differential and the cellular coboundary of `X` agree term by term.
    pub psi_chain_map: bool,
    /// `d∘d = 0` for the cellular coboundary of `X`.
    pub d_squared: bool,
    /// `ι*_α` hits every quotient cell exactly once.
    pub iota_onto: bool,
    /// `d ∘ ι*_α = ι*_α ∘ d` on every cell.
    pub iota_chain_map: bool,
    /// The `w = 1_L` piece is carried isomorphically onto `C^{*,L}(Z_K/S_α)`.
    pub unit_piece_iso: bool,
    pub failures: Vec<String>,
}

impl PsiIotaReport {
    pub fn pass(&self) -> bool {
        self.bijection
            && self.psi_chain_map
            && self.d_squared
            && self.iota_onto
            && self.iota_chain_map
            && self.unit_piece_iso
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < MAX_FAILURES {
            self.failures.push(msg);
        }
    }
}

fn all_weights(r: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut w = vec![0u32; r];
    loop {
        out.push(w.clone());
        let mut k = 0;
        while k < r && w[k] == bound {
            w[k] = 0;
            k += 1;
        }
        if k == r {
            return out;
        }
        w[k] += 1;
    }
}

fn apply_iota(cx: &Colored<'_>, terms: &[(KoszulGenerator, i64)]) -> Vec<(QuotientCell, i64)> {
    normalize(
        terms
            .iter()
            .filter_map(|(g, c)| iota_star(cx, g).map(|cell| (cell, *c)))
            .collect(),
    )
}

/// Generator-by-generator checks of `ψ_α` (Koszul generators ↔ cells of `X(K, α)`)
/// and `ι*_α : C*(X) → C*(Z_K/S_α)`, for all color weights up to `bound`.
pub fn psi_iota_checks(
    k: &SimplicialComplex,
    alpha: &Partition,
    field: FieldSpec,
    bound: u32,
) -> Result<PsiIotaReport> {
    let cx = Colored::new(k, alpha)?;
    let r = cx.r();
    let mut report = PsiIotaReport {
        weight_bound: bound,
        bijection: true,
        psi_chain_map: true,
        d_squared: true,
        iota_onto: true,
        iota_chain_map: true,
        unit_piece_iso: true,
        ..Default::default()
    };

    let cells = x_cells(&cx, bound);
    report.cells = cells.len();
    let mut by_weight: BTreeMap<Vec<u32>, Vec<KoszulGenerator>> = BTreeMap::new();
    for g in &cells {
        by_weight
            .entry(color_weight(&cx, g))
            .or_default()
            .push(g.clone());
    }

    // (a) ψ_α is a bijection preserving degree and multidegree
    for w in all_weights(r, bound) {
        let gens = koszul_generators(&cx, &w);
        report.generators += gens.len();
        let expected = by_weight.get(&w).map(Vec::as_slice).unwrap_or(&[]);
        if gens.as_slice() != expected {
            report.bijection = false;
            report.fail(format!("generators and cells differ at w = {w:?}"));
        }
        let total: u32 = w.iter().sum();
        let support = ColorSet::from_elements((1..=r).filter(|&i| w[i - 1] > 0));
        for g in &gens {
            let dim_ok = g.cell_dimension() as u32 == 2 * total - g.exterior_degree() as u32;
            let mdeg_ok = cx.colors_of(g.sigma).union(g.colors) == support;
            let supp_ok = g.h.support() == g.sigma;
            if !(dim_ok && mdeg_ok && supp_ok) {
                report.bijection = false;
                report.fail(format!("degree or multidegree mismatch for {g:?}"));
            }
        }
    }

    let mut iota_image: BTreeSet<QuotientCell> = BTreeSet::new();
    for g in &cells {
        // (b) ψ_α intertwines the two differentials
        let dx = x_cell_coboundary(&cx, g);
        if koszul_differential(&cx, g) != dx {
            report.psi_chain_map = false;
            report.fail(format!("differentials differ on {g:?}"));
        }
        let mut dd = Vec::new();
        for (t, c) in &dx {
            dd.extend(
                x_cell_coboundary(&cx, t)
                    .into_iter()
                    .map(|(u, e)| (u, e * c)),
            );
        }
        if !normalize(dd).is_empty() {
            report.d_squared = false;
            report.fail(format!("d∘d ≠ 0 on {g:?}"));
        }
        // (c) ι*_α commutes with the coboundaries
        let image = iota_star(&cx, g);
        let lhs = match image {
            Some(cell) => {
                if !iota_image.insert(cell) {
                    report.iota_onto = false;
                    report.fail(format!("ι* hits {cell:?} twice"));
                }
                normalize(quotient_coboundary(&cx, &cell))
            }
            None => Vec::new(),
        };
        if lhs != apply_iota(&cx, &dx) {
            report.iota_chain_map = false;
            report.fail(format!("ι* is not a chain map on {g:?}"));
        }
    }
    let quotient_total: usize = ColorSet::full(r)
        .subsets()
        .map(|l| quotient_cells(&cx, l).len())
        .sum();
    if iota_image.len() != quotient_total {
        report.iota_onto = false;
        report.fail(format!(
            "ι* hits {} of {} quotient cells",
            iota_image.len(),
            quotient_total
        ));
    }

    // the w = 1_L piece maps isomorphically onto C^{*,L}
    for l in ColorSet::full(r).subsets() {
        let w: Vec<u32> = (1..=r).map(|i| l.contains(i) as u32).collect();
        let gens = koszul_generators(&cx, &w);
        let images: BTreeSet<QuotientCell> =
            gens.iter().filter_map(|g| iota_star(&cx, g)).collect();
        let target: BTreeSet<QuotientCell> = quotient_cells(&cx, l).into_iter().collect();
        let koszul_h: Vec<usize> = cohomology_dims(&super::koszul::piece(&cx, &w), field)?
            .into_values()
            .collect();
        // Koszul degree −q sits over cell degree 2|L|−q
        let cell_h: Vec<usize> = cohomology_dims(&quotient_complex(&cx, l), field)?
            .into_values()
            .collect();
        if images.len() != gens.len() || images != target || koszul_h != cell_h {
            report.unit_piece_iso = false;
            report.fail(format!(
                "unit-weight piece for L = {l} is not carried onto the quotient complex"
            ));
        }
    }
    Ok(report)
}

/// One `(L, q)` line of the three-way comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorAgreementRecord {
    #[serde(rename = "L")]
    pub colors: Vec<usize>,
    pub q: usize,
    /// `dim Tor_{q,L}` from the truncated Koszul complex.
    pub tor: u64,
    /// `dim H^{2|L|−q}(C^{*,L}(Z_K/S_α))`.
    pub cellular: u64,
    /// `dim H̃^{|L|−q−1}(K|ω_L)`.
    pub hochster: u64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorAgreementReport {
    pub field: String,
    pub weight_bound: u32,
    pub records: Vec<TorAgreementRecord>,
    /// Every `L` had two empty outer weight shells.
    pub stabilized: bool,
    pub unstable_blocks: Vec<Vec<usize>>,
    pub pass: bool,
}

impl TorAgreementReport {
    pub fn failures(&self) -> impl Iterator<Item = &TorAgreementRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    /// `Err(MismatchFound)` naming the first failing `(q, L)`.
    pub fn into_result(self) -> Result<Self> {
        let failure = self
            .failures()
            .next()
            .map(|rec| (rec.q, rec.colors.clone()));
        match failure {
            Some((q, colors)) => Err(Error::MismatchFound {
                what: "Tor vs cellular vs subcomplex cohomology".into(),
                q,
                colors,
            }),
            None => Ok(self),
        }
    }
}

/// Checks `Tor_{q,L} = H^{2|L|−q}(C^{*,L}) = H̃^{|L|−q−1}(K|ω_L)` for all `L` and `q` at the default weight bound.
pub fn verify_tor_agreement(
    k: &SimplicialComplex,
    alpha: &Partition,
    field: FieldSpec,
) -> Result<TorAgreementReport> {
    verify_tor_agreement_with_bound(k, alpha, field, default_weight_bound(k, alpha))
}

pub fn verify_tor_agreement_with_bound(
    k: &SimplicialComplex,
    alpha: &Partition,
    field: FieldSpec,
    bound: u32,
) -> Result<TorAgreementReport> {
    let cx = Colored::new(k, alpha)?;
    let tor: TorTable = tor_dims(k, alpha, field, bound)?;
    let mut records = Vec::new();
    for l in ColorSet::full(cx.r()).subsets() {
        let n = l.len();
        let cellular = cohomology_dims(&quotient_complex(&cx, l), field)?;
        let hochster = reduced_cohomology_of_restriction(k, cx.omega(l), field);
        for q in 0..=n {
            let t = tor.get(q, l);
            let c = cellular.get(&((2 * n - q) as i32)).copied().unwrap_or(0) as u64;
            let h = hochster
                .get(&(n as i32 - q as i32 - 1))
                .copied()
                .unwrap_or(0) as u64;
            records.push(TorAgreementRecord {
                colors: l.to_vec(),
                q,
                tor: t,
                cellular: c,
                hochster: h,
                pass: t == c && c == h,
            });
        }
    }
    // Tor outside 0..=|L| would be a defect of its own
    for (q, l, d) in tor.iter() {
        if q > l.len() {
            records.push(TorAgreementRecord {
                colors: l.to_vec(),
                q,
                tor: d,
                cellular: 0,
                hochster: 0,
                pass: false,
            });
        }
    }
    let pass = records.iter().all(|r| r.pass);
    Ok(TorAgreementReport {
        field: field.to_string(),
        weight_bound: bound,
        records,
        stabilized: tor.all_stabilized(),
        unstable_blocks: tor
            .unstable_blocks()
            .into_iter()
            .map(|l| l.to_vec())
            .collect(),
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::FieldSpec::{PrimeField, Rationals};
    use crate::subset::VertexSubset;
    use crate::tor::Weight;

    fn vs(v: &[usize]) -> VertexSubset {
        VertexSubset::from_elements(v.iter().copied())
    }

    fn square() -> SimplicialComplex {
        SimplicialComplex::from_facets(4, &[vs(&[1, 2]), vs(&[2, 3]), vs(&[3, 4]), vs(&[1, 4])])
            .unwrap()
    }

    fn bipartition() -> Partition {
        Partition::new(4, vec![vs(&[1, 3]), vs(&[2, 4])]).unwrap()
    }

    #[test]
    fn iota_branches() {
        let (k, a) = (square(), bipartition());
        let cx = Colored::new(&k, &a).unwrap();
        let g = KoszulGenerator {
            sigma: vs(&[1]),
            h: Weight::indicator(4, vs(&[1])),
            colors: ColorSet::singleton(2),
        };
        assert_eq!(
            iota_star(&cx, &g),
            Some(QuotientCell {
                sigma: vs(&[1]),
                colors: ColorSet::singleton(2)
            })
        );
        let heavy = KoszulGenerator {
            h: Weight(vec![2, 0, 0, 0]),
            ..g.clone()
        };
        assert_eq!(iota_star(&cx, &heavy), None);
        let unit = KoszulGenerator::unit(4);
        assert_eq!(unit.cell_dimension(), 0);
        assert!(iota_star(&cx, &unit).is_some());
    }

    #[test]
    fn square_structure() {
        let (k, a) = (square(), bipartition());
        let report = psi_iota_checks(&k, &a, Rationals, 4).unwrap();
        assert!(report.pass(), "{:?}", report.failures);
        assert_eq!(report.cells, report.generators);
        let report = psi_iota_checks(&k, &Partition::trivial(4), PrimeField(2), 3).unwrap();
        assert!(report.pass(), "{:?}", report.failures);
    }

    #[test]
    fn square_tor_agreement() {
        let report = verify_tor_agreement(&square(), &bipartition(), Rationals).unwrap();
        assert!(report.pass && report.stabilized);
        assert_eq!(report.records.len(), 1 + 2 + 2 + 3);
        let top = report
            .records
            .iter()
            .find(|r| r.colors == vec![1, 2] && r.q == 0)
            .unwrap();
        assert_eq!((top.tor, top.cellular, top.hochster), (1, 1, 1));
        assert!(report.into_result().is_ok());
    }

    #[test]
    fn simplex_tor_agreement() {
        let k = SimplicialComplex::simplex(3).unwrap();
        let report = verify_tor_agreement(&k, &Partition::trivial(3), Rationals).unwrap();
        assert!(report.pass);
        let nonzero: Vec<_> = report.records.iter().filter(|r| r.tor > 0).collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!((nonzero[0].q, nonzero[0].colors.len()), (0, 0));
    }

    #[test]
    fn mismatch_is_reported() {
        let report = TorAgreementReport {
            field: "q".into(),
            weight_bound: 1,
            records: vec![TorAgreementRecord {
                colors: vec![1],
                q: 0,
                tor: 1,
                cellular: 0,
                hochster: 0,
                pass: false,
            }],
            stabilized: true,
            unstable_blocks: vec![],
            pass: false,
        };
        assert_eq!(
            report.into_result().unwrap_err(),
            Error::MismatchFound {
                what: "Tor vs cellular vs subcomplex cohomology".into(),
                q: 0,
                colors: vec![1]
            }
        );
    }
}
