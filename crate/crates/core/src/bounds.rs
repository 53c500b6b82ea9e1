//! Both sides of the lower bounds on Betti numbers and on the cohomology of
//! moment-angle complexes, and the joins of boundaries of simplices on which
//! they are attained.

use std::fmt::Write as _;

use serde::Serialize;

use crate::betti::{betti_table, zk_cohomology_dims, BettiTable};
use crate::coloring::{require_nondegenerate, Partition};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::FieldSpec;
use crate::subset::{ColorSet, VertexSubset};

/// Krull dimension of `k(K)`: `dim K + 1`.
pub fn krull_dimension(k: &SimplicialComplex) -> i32 {
    k.dimension() + 1
}

/// `C(n, k)`, zero when `n < 0`, `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> u64 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc * (n as u128 - j) / (j + 1);
    }
    acc as u64
}

/// `2^n`, zero when `n < 0`.
pub fn power_of_two(n: i64) -> u64 {
    if n < 0 {
        0
    } else {
        1u64 << n
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Contribution of one color set `L` to a row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundTerm {
    #[serde(rename = "L")]
    pub colors: Vec<usize>,
    pub omega: Vec<usize>,
    pub value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub index: usize,
    pub lhs: u64,
    pub rhs: u64,
    pub slack: i64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub terms: Vec<BoundTerm>,
}

impl BoundRow {
    fn new(index: usize, lhs: u64, rhs: u64, terms: Vec<BoundTerm>) -> Self {
        BoundRow {
            index,
            lhs,
            rhs,
            slack: lhs as i64 - rhs as i64,
            terms,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub field: String,
    pub rows: Vec<BoundRow>,
    pub verdict: Verdict,
}

impl BoundReport {
    fn new(name: &str, field: FieldSpec, rows: Vec<BoundRow>) -> Self {
        let verdict = if rows.iter().all(|r| r.slack >= 0) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        BoundReport {
            name: name.to_string(),
            field: field.to_string(),
            rows,
            verdict,
        }
    }

    pub fn pass(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// First row with negative slack.
    pub fn first_failure(&self) -> Option<&BoundRow> {
        self.rows.iter().find(|r| r.slack < 0)
    }

    /// Rows agree on `(index, lhs, rhs, slack)`, ignoring decompositions.
    pub fn same_rows(&self, other: &BoundReport) -> bool {
        self.rows.len() == other.rows.len()
            && self
                .rows
                .iter()
                .zip(&other.rows)
                .all(|(a, b)| (a.index, a.lhs, a.rhs, a.slack) == (b.index, b.lhs, b.rhs, b.slack))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} [{}] {:?}", self.name, self.field, self.verdict);
        let _ = writeln!(
            out,
            "{:>6} {:>8} {:>8} {:>8}",
            "index", "lhs", "rhs", "slack"
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:>6} {:>8} {:>8} {:>8}",
                r.index, r.lhs, r.rhs, r.slack
            );
        }
        out
    }

    /// `Err(MismatchFound)` naming the first row with negative slack.
    pub fn into_result(self) -> Result<Self> {
        match self.first_failure().map(|row| row.index) {
            Some(q) => Err(Error::MismatchFound {
                what: format!("{} lower bound", self.name),
                q,
                colors: Vec::new(),
            }),
            None => Ok(self),
        }
    }
}

fn omega(alpha: &Partition, l: ColorSet) -> VertexSubset {
    l.iter()
        .fold(VertexSubset::EMPTY, |acc, i| acc.union(alpha.block(i)))
}

fn main_rows(k: &SimplicialComplex, alpha: &Partition, table: &BettiTable) -> Vec<BoundRow> {
    let r = alpha.block_count();
    let top = r as i64 - k.dimension() as i64 - 1;
    (0..=r)
        .map(|q| {
            let terms: Vec<BoundTerm> = ColorSet::full(r)
                .subsets()
                .map(|l| {
                    let w = omega(alpha, l);
                    BoundTerm {
                        colors: l.to_vec(),
                        omega: w.to_vec(),
                        value: table.get(q + w.len() - l.len(), w),
                    }
                })
                .collect();
            let lhs = terms.iter().map(|t| t.value).sum();
            BoundRow::new(
                q,
                lhs,
                binomial(top, q as i64),
                terms.into_iter().filter(|t| t.value > 0).collect(),
            )
        })
        .collect()
}

/// `Σ_L β_{q+|ω_L|−|L|, ω_L} ≥ C(r − dim K − 1, q)` for `q = 0..=r`, from a precomputed table.
pub fn check_colored_bound_from_table(
    k: &SimplicialComplex,
    alpha: &Partition,
    table: &BettiTable,
) -> Result<BoundReport> {
    require_nondegenerate(k, alpha)?;
    Ok(BoundReport::new(
        "main",
        table.field(),
        main_rows(k, alpha, table),
    ))
}

pub fn check_colored_bound(
    k: &SimplicialComplex,
    alpha: &Partition,
    field: FieldSpec,
) -> Result<BoundReport> {
    require_nondegenerate(k, alpha)?;
    check_colored_bound_from_table(k, alpha, &betti_table(k, field)?)
}

/// `Σ_L Σ_j dim H̃^j(K|ω_L) ≥ 2^{r − dim K − 1}`, the lhs taken as the sum of the main rows.
pub fn check_bound2_from_table(
    k: &SimplicialComplex,
    alpha: &Partition,
    table: &BettiTable,
) -> Result<BoundReport> {
    require_nondegenerate(k, alpha)?;
    let rows = main_rows(k, alpha, table);
    let lhs = rows.iter().map(|r| r.lhs).sum();
    let mut per_l: Vec<BoundTerm> = Vec::new();
    for t in rows.into_iter().flat_map(|r| r.terms) {
        match per_l.iter_mut().find(|p| p.colors == t.colors) {
            Some(p) => p.value += t.value,
            None => per_l.push(t),
        }
    }
    per_l.sort_by_key(|t| (t.colors.len(), t.colors.clone()));
    let r = alpha.block_count() as i64;
    let rhs = power_of_two(r - k.dimension() as i64 - 1);
    Ok(BoundReport::new(
        "bound2",
        table.field(),
        vec![BoundRow::new(0, lhs, rhs, per_l)],
    ))
}

pub fn check_bound2(
    k: &SimplicialComplex,
    alpha: &Partition,
    field: FieldSpec,
) -> Result<BoundReport> {
    require_nondegenerate(k, alpha)?;
    check_bound2_from_table(k, alpha, &betti_table(k, field)?)
}

/// `Σ_ω β_{i,ω} ≥ C(m − dim K − 1, i)` for `i = 0..=m`.
pub fn check_ustinovskii_from_table(k: &SimplicialComplex, table: &BettiTable) -> BoundReport {
    let m = k.vertex_count();
    let top = m as i64 - k.dimension() as i64 - 1;
    let rows = (0..=m)
        .map(|i| {
            BoundRow::new(
                i,
                table.total_in_degree(i),
                binomial(top, i as i64),
                Vec::new(),
            )
        })
        .collect();
    BoundReport::new("ustinovskii", table.field(), rows)
}

pub fn check_ustinovskii(k: &SimplicialComplex, field: FieldSpec) -> Result<BoundReport> {
    Ok(check_ustinovskii_from_table(k, &betti_table(k, field)?))
}

/// `Σ_q dim H^q(Z_K) ≥ 2^{m − dim K − 1}`.
pub fn check_caolu(k: &SimplicialComplex, field: FieldSpec) -> Result<BoundReport> {
    let lhs = zk_cohomology_dims(k, field)?.values().sum();
    let rhs = power_of_two(k.vertex_count() as i64 - k.dimension() as i64 - 1);
    Ok(BoundReport::new(
        "caolu",
        field,
        vec![BoundRow::new(0, lhs, rhs, Vec::new())],
    ))
}

/// The bounds evaluated on `∂Δ^{n_1} * … * ∂Δ^{n_s}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SharpnessReport {
    pub dims: Vec<usize>,
    pub m: usize,
    pub dimension: i32,
    pub caolu: BoundReport,
    pub ustinovskii: BoundReport,
    /// Every slack is zero.
    pub sharp: bool,
}

pub fn sphere_join(dims: &[usize]) -> Result<SimplicialComplex> {
    let (first, rest) = dims
        .split_first()
        .ok_or_else(|| Error::InvalidDimension("at least one dimension is required".into()))?;
    let total: usize = dims.iter().map(|n| n + 1).sum();
    let cap = crate::complex::DEFAULT_MAX_VERTICES;
    if total > cap {
        return Err(Error::VertexBudgetExceeded {
            requested: total,
            cap,
        });
    }
    let mut k = SimplicialComplex::boundary_simplex(*first)?;
    for &n in rest {
        k = k.join(&SimplicialComplex::boundary_simplex(n)?)?;
    }
    Ok(k)
}

pub fn sharpness_suite(dims: &[usize], field: FieldSpec) -> Result<SharpnessReport> {
    let k = sphere_join(dims)?;
    let caolu = check_caolu(&k, field)?;
    let ustinovskii = check_ustinovskii(&k, field)?;
    let sharp = caolu
        .rows
        .iter()
        .chain(&ustinovskii.rows)
        .all(|r| r.slack == 0);
    Ok(SharpnessReport {
        dims: dims.to_vec(),
        m: k.vertex_count(),
        dimension: k.dimension(),
        caolu,
        ustinovskii,
        sharp,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::FieldSpec::{PrimeField, Rationals};

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

    fn points(m: usize) -> SimplicialComplex {
        let f: Vec<_> = (1..=m).map(VertexSubset::singleton).collect();
        SimplicialComplex::from_facets(m, &f).unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial(-1, 0), 0);
        assert_eq!(binomial(60, 30), 118264581564861424);
        assert_eq!(power_of_two(-1), 0);
        assert_eq!(power_of_two(3), 8);
    }

    #[test]
    fn krull() {
        assert_eq!(krull_dimension(&square()), 2);
        assert_eq!(krull_dimension(&SimplicialComplex::simplex(3).unwrap()), 3);
        assert_eq!(krull_dimension(&points(3)), 1);
    }

    #[test]
    fn colored_bound_rows() {
        let rep = check_colored_bound(&square(), &bipartition(), Rationals).unwrap();
        assert_eq!((rep.rows[0].lhs, rep.rows[0].rhs), (4, 1));
        assert_eq!(rep.rows[0].terms.len(), 4);
        assert!(rep.pass());

        let rep = check_colored_bound(&square(), &Partition::trivial(4), Rationals).unwrap();
        assert_eq!(
            (rep.rows[1].lhs, rep.rows[1].rhs, rep.rows[1].slack),
            (2, 2, 0)
        );
        let ust = check_ustinovskii(&square(), Rationals).unwrap();
        assert!(rep.same_rows(&ust));

        let simplex = SimplicialComplex::simplex(3).unwrap();
        let rep = check_colored_bound(&simplex, &Partition::trivial(3), Rationals).unwrap();
        assert_eq!((rep.rows[0].lhs, rep.rows[0].rhs), (1, 1));
        assert!(rep.rows[1..].iter().all(|r| r.lhs == 0 && r.rhs == 0));
    }

    #[test]
    fn bound2_rows() {
        let rep = check_bound2(&square(), &bipartition(), Rationals).unwrap();
        assert_eq!((rep.rows[0].lhs, rep.rows[0].rhs), (4, 1));
        let b1 = SimplicialComplex::boundary_simplex(1).unwrap();
        let rep = check_bound2(&b1, &Partition::trivial(2), Rationals).unwrap();
        assert_eq!((rep.rows[0].lhs, rep.rows[0].slack), (2, 0));
        let simplex = SimplicialComplex::simplex(3).unwrap();
        let rep = check_bound2(&simplex, &Partition::trivial(3), Rationals).unwrap();
        assert_eq!((rep.rows[0].lhs, rep.rows[0].rhs), (1, 1));
    }

    #[test]
    fn ustinovskii_rows() {
        let rep = check_ustinovskii(&square(), Rationals).unwrap();
        let lr: Vec<_> = rep.rows[..3].iter().map(|r| (r.lhs, r.rhs)).collect();
        assert_eq!(lr, vec![(1, 1), (2, 2), (1, 1)]);
        let rep = check_ustinovskii(&points(3), Rationals).unwrap();
        assert_eq!((rep.rows[1].lhs, rep.rows[1].rhs), (3, 2));
    }

    #[test]
    fn caolu_rows() {
        let b1 = SimplicialComplex::boundary_simplex(1).unwrap();
        let rep = check_caolu(&b1, Rationals).unwrap();
        assert_eq!((rep.rows[0].lhs, rep.rows[0].rhs), (2, 2));
        let rep = check_caolu(&square(), PrimeField(3)).unwrap();
        assert_eq!((rep.rows[0].lhs, rep.rows[0].rhs), (4, 4));
    }

    #[test]
    fn sharpness() {
        for (dims, total) in [(vec![1], 2), (vec![1, 1], 4), (vec![2, 1], 4)] {
            let rep = sharpness_suite(&dims, Rationals).unwrap();
            assert!(rep.sharp, "{dims:?}");
            assert_eq!(rep.caolu.rows[0].lhs, total);
        }
        assert_eq!(sharpness_suite(&[2, 1], Rationals).unwrap().m, 5);
        assert!(matches!(
            sharpness_suite(&[], Rationals),
            Err(Error::InvalidDimension(_))
        ));
        assert!(matches!(
            sharpness_suite(&[20, 20], Rationals),
            Err(Error::VertexBudgetExceeded { .. })
        ));
    }

    #[test]
    fn degenerate_rejected() {
        let bad = Partition::new(4, vec![vs(&[1, 2]), vs(&[3, 4])]).unwrap();
        assert!(matches!(
            check_colored_bound(&square(), &bad, Rationals),
            Err(Error::DegeneratePartition { .. })
        ));
    }
}
