//! Combined verification reports for one complex, and the corpus runner built on them.

use rayon::prelude::*;
use serde::Serialize;

use crate::betti::betti_table;
use crate::bounds::{
    check_bound2_from_table, check_caolu, check_colored_bound_from_table,
    check_ustinovskii_from_table, krull_dimension, BoundReport,
};
use crate::coloring::{
    greedy_coloring, minimum_coloring, Partition, MINIMUM_COLORING_MAX_VERTICES,
};
use crate::complex::SimplicialComplex;
use crate::corpus::{builtin_corpus, named_complexes, random_corpus, CorpusMember};
use crate::error::Result;
use crate::linalg::FieldSpec;
use crate::tor::{
    default_weight_bound, quotient_cohomology, verify_tor_agreement_with_bound, QuotientCohomology,
    TorAgreementReport,
};

/// Every check for one `(K, α, field)`.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub field: String,
    pub m: usize,
    pub dimension: i32,
    pub krull_dimension: i32,
    pub blocks: Vec<Vec<usize>>,
    pub r: usize,
    pub tor_agreement: TorAgreementReport,
    pub quotient: QuotientCohomology,
    pub main: BoundReport,
    pub bound2: BoundReport,
    pub ustinovskii: BoundReport,
    pub caolu: BoundReport,
    /// Under the trivial partition, whether the main rows equal the Ustinovskii rows.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trivial_rows_match: Option<bool>,
    pub pass: bool,
    /// `(check, q, L)` of the first failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

impl VerifyReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "field {}  m {}  dim {}  krull {}  r {}\n",
            self.field, self.m, self.dimension, self.krull_dimension, self.r
        );
        out.push_str(&format!(
            "tor_agreement {}  (weight bound {}, stabilized {})\n",
            verdict(self.tor_agreement.pass),
            self.tor_agreement.weight_bound,
            self.tor_agreement.stabilized
        ));
        out.push_str(&format!(
            "quotient routes {}\n",
            verdict(self.quotient.agree())
        ));
        for b in [&self.main, &self.bound2, &self.ustinovskii, &self.caolu] {
            out.push_str(&b.to_text());
        }
        if let Some(m) = self.trivial_rows_match {
            out.push_str(&format!("trivial-partition rows match {}\n", verdict(m)));
        }
        out.push_str(&format!("overall {}\n", verdict(self.pass)));
        if let Some(f) = &self.failure {
            out.push_str(&format!("first failure: {f}\n"));
        }
        out
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

/// Runs the three-way Tor comparison, the quotient cohomology routes and every bound.
pub fn verify_all(
    k: &SimplicialComplex,
    alpha: &Partition,
    field: FieldSpec,
    weight_bound: Option<u32>,
) -> Result<VerifyReport> {
    let bound = weight_bound.unwrap_or_else(|| default_weight_bound(k, alpha));
    let tor_agreement = verify_tor_agreement_with_bound(k, alpha, field, bound)?;
    let quotient = quotient_cohomology(k, alpha, field)?;
    let table = betti_table(k, field)?;
    let main = check_colored_bound_from_table(k, alpha, &table)?;
    let bound2 = check_bound2_from_table(k, alpha, &table)?;
    let ustinovskii = check_ustinovskii_from_table(k, &table);
    let caolu = check_caolu(k, field)?;
    let trivial_rows_match = alpha.is_trivial().then(|| main.same_rows(&ustinovskii));

    let mut failure = None;
    if let Some(rec) = tor_agreement.failures().next() {
        failure = Some(format!(
            "tor_agreement, q = {}, L = {:?}",
            rec.q, rec.colors
        ));
    } else if !quotient.agree() {
        failure = Some("quotient cohomology routes disagree".to_string());
    }
    for b in [&main, &bound2, &ustinovskii, &caolu] {
        if let (None, Some(row)) = (&failure, b.first_failure()) {
            failure = Some(format!("{}, q = {}", b.name, row.index));
        }
    }
    if failure.is_none() && trivial_rows_match == Some(false) {
        failure = Some("main rows differ from ustinovskii rows under the trivial partition".into());
    }
    Ok(VerifyReport {
        field: field.to_string(),
        m: k.vertex_count(),
        dimension: k.dimension(),
        krull_dimension: krull_dimension(k),
        blocks: alpha.blocks().iter().map(|b| b.to_vec()).collect(),
        r: alpha.block_count(),
        tor_agreement,
        quotient,
        main,
        bound2,
        ustinovskii,
        caolu,
        trivial_rows_match,
        pass: failure.is_none(),
        failure,
    })
}

/// Greedy, minimum (when small enough) and trivial partitions, duplicates removed.
pub fn standard_partitions(k: &SimplicialComplex) -> Vec<(&'static str, Partition)> {
    let mut out: Vec<(&'static str, Partition)> = vec![("greedy", greedy_coloring(k))];
    if k.vertex_count() <= MINIMUM_COLORING_MAX_VERTICES {
        if let Ok(p) = minimum_coloring(k) {
            out.push(("minimum", p));
        }
    }
    out.push(("trivial", Partition::trivial(k.vertex_count())));
    let mut seen: Vec<Partition> = Vec::new();
    out.retain(|(_, p)| {
        if seen.contains(p) {
            false
        } else {
            seen.push(p.clone());
            true
        }
    });
    out
}

/// Outcome for one `(partition, field)` pair of a corpus member.
#[derive(Clone, Debug, Serialize)]
pub struct CorpusCheck {
    pub partition: String,
    pub blocks: Vec<Vec<usize>>,
    pub field: String,
    pub pass: bool,
    pub stabilized: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusSummary {
    pub index: usize,
    pub name: String,
    pub m: usize,
    pub dimension: i32,
    pub faces: usize,
    pub checks: Vec<CorpusCheck>,
    pub pass: bool,
}

fn run_member(index: usize, member: &CorpusMember, fields: &[FieldSpec]) -> CorpusSummary {
    let k = &member.complex;
    let mut checks = Vec::new();
    for (name, alpha) in standard_partitions(k) {
        for &field in fields {
            let check = match verify_all(k, &alpha, field, None) {
                Ok(rep) => CorpusCheck {
                    partition: name.to_string(),
                    blocks: rep.blocks.clone(),
                    field: field.to_string(),
                    pass: rep.pass,
                    stabilized: rep.tor_agreement.stabilized,
                    failure: rep.failure,
                },
                Err(e) => CorpusCheck {
                    partition: name.to_string(),
                    blocks: alpha.blocks().iter().map(|b| b.to_vec()).collect(),
                    field: field.to_string(),
                    pass: false,
                    stabilized: false,
                    failure: Some(e.to_string()),
                },
            };
            checks.push(check);
        }
    }
    CorpusSummary {
        index,
        name: member.name.clone(),
        m: k.vertex_count(),
        dimension: k.dimension(),
        faces: k.face_count(),
        pass: checks.iter().all(|c| c.pass),
        checks,
    }
}

/// Verifies every member under the standard partitions and each field; results in input order.
pub fn run_corpus(members: &[CorpusMember], fields: &[FieldSpec]) -> Vec<CorpusSummary> {
    members
        .par_iter()
        .enumerate()
        .map(|(i, member)| run_member(i, member, fields))
        .collect()
}

/// The members used by the `corpus` command: named complexes plus `count` random ones.
pub fn corpus_members(seed: u64, count: usize, max_m: usize) -> Result<Vec<CorpusMember>> {
    if count == crate::corpus::RANDOM_CORPUS_SIZE
        && max_m == crate::corpus::RANDOM_CORPUS_MAX_VERTICES
    {
        return Ok(builtin_corpus(seed));
    }
    let mut out = named_complexes();
    out.extend(random_corpus(seed, count, max_m)?);
    Ok(out)
}
