//! Acceptance suite: one pass/fail line per criterion.
//!
//! Run with `cargo test -p colored-betti --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use colored_betti::betti::{betti_number, betti_table, zk_cohomology};
use colored_betti::bounds::{
    check_bound2_from_table, check_caolu, check_colored_bound_from_table,
    check_ustinovskii_from_table, sharpness_suite,
};
use colored_betti::cochain::reduced_cochain_complex;
use colored_betti::coloring::{kappa, kappa_unchecked, Partition};
use colored_betti::corpus::{
    builtin_corpus, cycle, projective_plane, CorpusMember, DEFAULT_CORPUS_SEED,
};
use colored_betti::report::standard_partitions;
use colored_betti::subset::{ColorSet, VertexSubset};
use colored_betti::tor::{
    default_weight_bound, koszul_piece, psi_iota_checks, quotient_cochain_complex,
    quotient_cohomology, verify_tor_agreement,
};
use colored_betti::{FieldSpec, SimplicialComplex};

const FIELDS: [FieldSpec; 3] = [
    FieldSpec::Rationals,
    FieldSpec::PrimeField(2),
    FieldSpec::PrimeField(3),
];

/// Weight bound for the generator-level checks across the whole corpus. The number of
/// cells of `X(K, α)` grows like `B^{dim K + 1}`, so the default bound is used only on
/// the small named complexes below.
const PSI_WEIGHT_BOUND: u32 = 3;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, summary: String) -> Outcome {
    if failures.is_empty() {
        Outcome {
            pass: true,
            detail: summary,
        }
    } else {
        let shown: Vec<_> = failures.iter().take(5).cloned().collect();
        Outcome {
            pass: false,
            detail: format!("{} failures: {}", failures.len(), shown.join("; ")),
        }
    }
}

fn each_member<F>(corpus: &[CorpusMember], f: F) -> Vec<String>
where
    F: Fn(&CorpusMember) -> Vec<String> + Sync,
{
    corpus.par_iter().flat_map_iter(&f).collect()
}

fn criterion_1(corpus: &[CorpusMember]) -> Outcome {
    let failures = each_member(corpus, |m| {
        FIELDS
            .iter()
            .filter_map(|&f| match zk_cohomology(&m.complex, f) {
                Ok(zk) if zk.agree() => None,
                Ok(zk) => Some(format!(
                    "{} [{f}]: {:?} vs {:?}",
                    m.name, zk.by_subcomplexes, zk.by_betti
                )),
                Err(e) => Some(format!("{} [{f}]: {e}", m.name)),
            })
            .collect()
    });
    outcome(failures, format!("{} complexes x 3 fields", corpus.len()))
}

fn criterion_2(corpus: &[CorpusMember]) -> Outcome {
    let failures = each_member(corpus, |m| {
        let mut out = Vec::new();
        for (name, alpha) in standard_partitions(&m.complex) {
            for f in FIELDS {
                match verify_tor_agreement(&m.complex, &alpha, f) {
                    Ok(rep) if rep.pass && rep.stabilized => {}
                    Ok(rep) => {
                        let bad: Vec<_> = rep.failures().map(|r| (r.q, r.colors.clone())).collect();
                        out.push(format!(
                            "{} {name} [{f}]: mismatches {bad:?}, unstable {:?}",
                            m.name, rep.unstable_blocks
                        ));
                    }
                    Err(e) => out.push(format!("{} {name} [{f}]: {e}", m.name)),
                }
            }
        }
        out
    });
    outcome(
        failures,
        format!(
            "{} complexes x greedy/minimum/trivial x 3 fields, all stabilized",
            corpus.len()
        ),
    )
}

fn criterion_3(corpus: &[CorpusMember]) -> Outcome {
    let failures = each_member(corpus, |m| {
        let mut out = Vec::new();
        for (name, alpha) in standard_partitions(&m.complex) {
            for f in FIELDS {
                match quotient_cohomology(&m.complex, &alpha, f) {
                    Ok(qc) if qc.cellular == qc.betti && qc.cellular == qc.subcomplexes => {}
                    Ok(qc) => out.push(format!(
                        "{} {name} [{f}]: {:?} vs {:?}",
                        m.name, qc.cellular, qc.betti
                    )),
                    Err(e) => out.push(format!("{} {name} [{f}]: {e}", m.name)),
                }
            }
        }
        out
    });
    outcome(failures, format!("{} complexes", corpus.len()))
}

fn criterion_4(corpus: &[CorpusMember]) -> Outcome {
    let failures = each_member(corpus, |m| {
        let mut out = Vec::new();
        let k = &m.complex;
        for f in FIELDS {
            let table = match betti_table(k, f) {
                Ok(t) => t,
                Err(e) => {
                    out.push(format!("{} [{f}]: {e}", m.name));
                    continue;
                }
            };
            let ust = check_ustinovskii_from_table(k, &table);
            for (name, alpha) in standard_partitions(k) {
                let main =
                    check_colored_bound_from_table(k, &alpha, &table).expect("nondegenerate");
                let b2 = check_bound2_from_table(k, &alpha, &table).expect("nondegenerate");
                for rep in [&main, &b2] {
                    if let Some(row) = rep.first_failure() {
                        out.push(format!(
                            "{} {name} [{f}]: {} slack {} at {}",
                            m.name, rep.name, row.slack, row.index
                        ));
                    }
                }
                if alpha.is_trivial() && !main.same_rows(&ust) {
                    out.push(format!(
                        "{} [{f}]: trivial-partition rows differ from ustinovskii rows",
                        m.name
                    ));
                }
            }
        }
        out
    });
    outcome(
        failures,
        format!(
            "{} complexes, main and total bounds, trivial rows cross-checked",
            corpus.len()
        ),
    )
}

/// Non-increasing lists `n_1 ≥ … ≥ n_s ≥ 1` with `Σ (n_i + 1) ≤ budget`.
fn dimension_lists(budget: usize, max_part: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for n in 1..=max_part {
        if n + 1 > budget {
            break;
        }
        out.push(vec![n]);
        for mut rest in dimension_lists(budget - n - 1, n) {
            rest.insert(0, n);
            out.push(rest);
        }
    }
    out
}

fn criterion_5() -> Outcome {
    let mut failures = Vec::new();
    let lists = dimension_lists(8, 7);
    for dims in &lists {
        for f in FIELDS {
            match sharpness_suite(dims, f) {
                Ok(rep) => {
                    let k = colored_betti::bounds::sphere_join(dims).unwrap();
                    let betti_total = betti_table(&k, f).unwrap().total();
                    let expected = 1u64 << (rep.m as i32 - rep.dimension - 1);
                    if !rep.sharp || betti_total != expected || rep.caolu.rows[0].lhs != expected {
                        failures.push(format!(
                            "{dims:?} [{f}]: total {betti_total}, expected {expected}"
                        ));
                    }
                }
                Err(e) => failures.push(format!("{dims:?}: {e}")),
            }
        }
    }
    for (dims, total) in [(vec![1], 2), (vec![1, 1], 4), (vec![2, 1], 4)] {
        let rep = sharpness_suite(&dims, FieldSpec::Rationals).unwrap();
        if rep.caolu.rows[0].lhs != total {
            failures.push(format!(
                "{dims:?}: total {} != {total}",
                rep.caolu.rows[0].lhs
            ));
        }
    }
    outcome(
        failures,
        format!("{} joins with at most 8 vertices, all slack 0", lists.len()),
    )
}

fn d_squared_failures(m: &CorpusMember) -> Vec<String> {
    let k = &m.complex;
    let mut out = Vec::new();
    if reduced_cochain_complex(k).check_d_squared().is_err() {
        out.push(format!("{}: simplicial cochains", m.name));
    }
    for (name, alpha) in standard_partitions(k) {
        let r = alpha.block_count();
        for l in ColorSet::full(r).subsets() {
            let c = quotient_cochain_complex(k, &alpha, l).unwrap();
            if c.check_d_squared().is_err() {
                out.push(format!("{} {name}: quotient complex L = {l}", m.name));
            }
            for s in l.subsets() {
                let w: Vec<u32> = (1..=r)
                    .map(|i| {
                        if s.contains(i) {
                            2
                        } else {
                            l.contains(i) as u32
                        }
                    })
                    .collect();
                if koszul_piece(k, &alpha, &w)
                    .unwrap()
                    .check_d_squared()
                    .is_err()
                {
                    out.push(format!("{} {name}: Koszul piece w = {w:?}", m.name));
                }
            }
        }
    }
    out
}

fn kappa_failures() -> Vec<String> {
    let mut out = Vec::new();
    for r in 1..=8 {
        let all = ColorSet::full(r);
        for l in all.subsets() {
            for l2 in all.difference(l).subsets() {
                for i in l.iter() {
                    let lhs = kappa(i, l.union(l2)).unwrap();
                    let rhs = kappa(i, l).unwrap() * kappa_unchecked(i, l2);
                    if lhs != rhs {
                        out.push(format!("kappa({i}, {l} + {l2})"));
                    }
                }
            }
        }
    }
    out
}

fn criterion_6(corpus: &[CorpusMember]) -> Outcome {
    let mut failures = each_member(corpus, d_squared_failures);
    failures.extend(each_member(corpus, |m| {
        let mut out = Vec::new();
        for (name, alpha) in standard_partitions(&m.complex) {
            match psi_iota_checks(&m.complex, &alpha, FieldSpec::Rationals, PSI_WEIGHT_BOUND) {
                Ok(rep) if rep.pass() => {}
                Ok(rep) => out.push(format!("{} {name}: {:?}", m.name, rep.failures)),
                Err(e) => out.push(format!("{} {name}: {e}", m.name)),
            }
        }
        out
    }));
    let square_blocks = Partition::new(
        4,
        vec![
            VertexSubset::from_elements([1, 3]),
            VertexSubset::from_elements([2, 4]),
        ],
    )
    .unwrap();
    let small: Vec<(&str, SimplicialComplex, Partition)> = vec![
        (
            "boundary-simplex-1",
            SimplicialComplex::boundary_simplex(1).unwrap(),
            Partition::trivial(2),
        ),
        (
            "boundary-simplex-2",
            SimplicialComplex::boundary_simplex(2).unwrap(),
            Partition::trivial(3),
        ),
        ("cycle-4", cycle(4).unwrap(), square_blocks),
        (
            "simplex-2",
            SimplicialComplex::simplex(3).unwrap(),
            Partition::trivial(3),
        ),
    ];
    for (name, k, alpha) in &small {
        let b = default_weight_bound(k, alpha);
        match psi_iota_checks(k, alpha, FieldSpec::PrimeField(2), b) {
            Ok(rep) if rep.pass() => {}
            Ok(rep) => failures.push(format!("{name} at default bound {b}: {:?}", rep.failures)),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    failures.extend(kappa_failures());
    outcome(
        failures,
        format!(
            "d∘d on all complexes; psi/iota at bound {PSI_WEIGHT_BOUND} on the corpus and at the default bound on 4 small complexes; kappa for r ≤ 8"
        ),
    )
}

fn criterion_7() -> Outcome {
    let k = projective_plane();
    let full = VertexSubset::full(6);
    let mut failures = Vec::new();
    let b_f2 = betti_number(&k, 3, full, FieldSpec::PrimeField(2)).unwrap();
    let b_q = betti_number(&k, 3, full, FieldSpec::Rationals).unwrap();
    if (b_f2, b_q) != (1, 0) {
        failures.push(format!("beta_3,[6]: GF(2) {b_f2}, Q {b_q}"));
    }
    let mut tables = Vec::new();
    for f in [FieldSpec::PrimeField(2), FieldSpec::Rationals] {
        let table = betti_table(&k, f).unwrap();
        let ust = check_ustinovskii_from_table(&k, &table);
        let mut reports = vec![ust.clone(), check_caolu(&k, f).unwrap()];
        for (_, alpha) in standard_partitions(&k) {
            let main = check_colored_bound_from_table(&k, &alpha, &table).unwrap();
            if alpha.is_trivial() && !main.same_rows(&ust) {
                failures.push(format!("[{f}] trivial rows differ"));
            }
            reports.push(main);
            reports.push(check_bound2_from_table(&k, &alpha, &table).unwrap());
            let prop = verify_tor_agreement(&k, &alpha, f).unwrap();
            if !prop.pass {
                failures.push(format!("[{f}] three-way Tor comparison fails"));
            }
            tables.push(prop.records);
        }
        for rep in reports {
            if !rep.pass() {
                failures.push(format!("[{f}] {} fails", rep.name));
            }
        }
    }
    if tables.len() == 2 && tables[0] == tables[1] {
        failures.push("Tor tables do not depend on the field".into());
    }
    outcome(
        failures,
        format!("beta_3,[6] = {b_f2} over GF(2), {b_q} over Q; all bounds pass over both"),
    )
}

fn main() -> ExitCode {
    let corpus = builtin_corpus(DEFAULT_CORPUS_SEED);
    let criteria: Vec<(&str, Option<Duration>, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (
            "Hochster / moment-angle routes agree",
            Some(Duration::from_secs(120)),
            Box::new(|| criterion_1(&corpus)),
        ),
        (
            "Tor = cellular = subcomplex cohomology",
            Some(Duration::from_secs(300)),
            Box::new(|| criterion_2(&corpus)),
        ),
        (
            "quotient cohomology equals Betti sum",
            None,
            Box::new(|| criterion_3(&corpus)),
        ),
        (
            "main and total lower bounds hold",
            None,
            Box::new(|| criterion_4(&corpus)),
        ),
        (
            "sharpness on joins of sphere boundaries",
            None,
            Box::new(criterion_5),
        ),
        (
            "structural identities",
            None,
            Box::new(|| criterion_6(&corpus)),
        ),
        (
            "field sensitivity on the projective plane",
            None,
            Box::new(criterion_7),
        ),
    ];
    let mut all = true;
    for (n, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut out = run();
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            if elapsed > *limit {
                out.pass = false;
                out.detail
                    .push_str(&format!("; exceeded {}s", limit.as_secs()));
            }
        }
        all &= out.pass;
        println!(
            "criterion {} [PRIMARY] {name}: {} ({}; {:.2}s)",
            n + 1,
            if out.pass { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
