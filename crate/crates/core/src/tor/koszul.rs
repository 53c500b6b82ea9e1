use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{assemble, bucket, normalize, Colored, KoszulGenerator, Weight};
use crate::cochain::{cohomology_dims, CochainComplex};
use crate::coloring::{kappa_unchecked, Partition};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::FieldSpec;
use crate::subset::{ColorSet, VertexSubset};

/// `w_i = [i ∈ I] + Σ_{j ∈ α_i} h(j)`.
pub fn color_weight(cx: &Colored<'_>, g: &KoszulGenerator) -> Vec<u32> {
    (1..=cx.r())
        .map(|i| {
            let from_h: u32 = cx.partition.block(i).iter().map(|j| g.h.get(j)).sum();
            from_h + g.colors.contains(i) as u32
        })
        .collect()
}

fn support(w: &[u32]) -> ColorSet {
    ColorSet::from_elements((1..=w.len()).filter(|&i| w[i - 1] > 0))
}

/// All generators `t_I v^(σ,h)` of color weight exactly `w`, in basis order.
///
/// For a face σ ⊆ ω_L: colors of L missed by σ must have `w_i = 1` and lie in `I`;
/// a color met by σ with `w_i ≥ 2` is split between `t_i` and `h(σ_i)` in two ways.
pub fn koszul_generators(cx: &Colored<'_>, w: &[u32]) -> Vec<KoszulGenerator> {
    assert_eq!(w.len(), cx.r(), "one weight per color");
    let m = cx.m();
    let l = support(w);
    let mut out = Vec::new();
    for sigma in cx.complex.faces_within(cx.omega(l)) {
        let met = cx.colors_of(sigma);
        let missed = l.difference(met);
        if missed.iter().any(|i| w[i - 1] != 1) {
            continue;
        }
        let mut base = Weight::zero(m);
        let mut free = Vec::new();
        for i in met.iter() {
            let v = cx.vertex_of_color(sigma, i).expect("color met by σ");
            base.0[v - 1] = w[i - 1];
            if w[i - 1] >= 2 {
                free.push((i, v));
            }
        }
        for choice in 0u32..(1 << free.len()) {
            let mut h = base.clone();
            let mut colors = missed;
            for (k, &(i, v)) in free.iter().enumerate() {
                if choice >> k & 1 == 1 {
                    colors = colors.with(i);
                    h.0[v - 1] -= 1;
                }
            }
            out.push(KoszulGenerator { sigma, h, colors });
        }
    }
    out.sort();
    out
}

/// `v_j · v^(σ,h)` in `k(K)`: zero unless `σ ∪ {j}` is a face.
fn multiply(
    cx: &Colored<'_>,
    j: usize,
    sigma: VertexSubset,
    h: &Weight,
) -> Option<(VertexSubset, Weight)> {
    let tau = sigma.with(j);
    cx.complex.contains(tau).then(|| (tau, h.bumped(j)))
}

/// `d_α(t_I ⊗ x) = Σ_{i ∈ I} κ(i, I) t_{I∖i} ⊗ (Σ_{j ∈ α_i} v_j) x`, via the module structure of `k(K)`.
pub fn koszul_differential(cx: &Colored<'_>, g: &KoszulGenerator) -> Vec<(KoszulGenerator, i64)> {
    let mut out = Vec::new();
    for i in g.colors.iter() {
        let sign = kappa_unchecked(i, g.colors);
        for j in cx.partition.block(i).iter() {
            if let Some((sigma, h)) = multiply(cx, j, g.sigma, &g.h) {
                out.push((
                    KoszulGenerator {
                        sigma,
                        h,
                        colors: g.colors.without(i),
                    },
                    sign,
                ));
            }
        }
    }
    normalize(out)
}

pub(crate) fn piece(cx: &Colored<'_>, w: &[u32]) -> CochainComplex {
    let n = support(w).len() as i32;
    let gens = koszul_generators(cx, w);
    let basis = bucket(
        -n,
        0,
        gens.into_iter().map(|g| (-(g.exterior_degree() as i32), g)),
    );
    assemble(-n, &basis, |g| koszul_differential(cx, g))
}

/// The color-weight-`w` summand of `Λ[t_1..t_r] ⊗ k(K)`, in degrees `−|supp w|..=0`.
pub fn koszul_piece(k: &SimplicialComplex, alpha: &Partition, w: &[u32]) -> Result<CochainComplex> {
    let cx = Colored::new(k, alpha)?;
    if w.len() != cx.r() {
        return Err(Error::PartitionMismatch(format!(
            "weight vector has {} entries but the partition has {} colors",
            w.len(),
            cx.r()
        )));
    }
    Ok(piece(&cx, w))
}

/// Every cell `B_(σ,h,I)` of `X(K, α)` with all color weights at most `bound`, by brute force.
pub fn x_cells(cx: &Colored<'_>, bound: u32) -> Vec<KoszulGenerator> {
    let m = cx.m();
    let all = ColorSet::full(cx.r());
    let mut out = Vec::new();
    for &sigma in cx.complex.faces() {
        let verts = sigma.to_vec();
        let mut values = vec![1u32; verts.len()];
        loop {
            let mut h = Weight::zero(m);
            for (&v, &x) in verts.iter().zip(&values) {
                h.0[v - 1] = x;
            }
            let g0 = KoszulGenerator {
                sigma,
                h,
                colors: ColorSet::EMPTY,
            };
            let w = color_weight(cx, &g0);
            if w.iter().all(|&x| x <= bound) {
                for colors in all.subsets() {
                    if colors.iter().all(|i| w[i - 1] < bound) {
                        out.push(KoszulGenerator {
                            colors,
                            ..g0.clone()
                        });
                    }
                }
            }
            // odometer over h ∈ [1, bound]^σ
            let mut k = 0;
            while k < values.len() && values[k] == bound {
                values[k] = 1;
                k += 1;
            }
            if k == values.len() {
                break;
            }
            values[k] += 1;
        }
    }
    out.sort();
    out
}

/// Coboundary of the cochain `B*_(σ,h,I)` on `X(K, α)`:
/// `Σ_{i ∈ I ∩ I_α(σ)} κ(i,I) B*_(σ, h+δ_{σ_i}, I∖i) + Σ_{i ∈ I ∖ I_α(σ)} Σ_{ω = σ+v ∈ K, v ∈ α_i} κ(i,I) B*_(ω, h+δ_v, I∖i)`.
pub fn x_cell_coboundary(cx: &Colored<'_>, g: &KoszulGenerator) -> Vec<(KoszulGenerator, i64)> {
    let met = cx.colors_of(g.sigma);
    let mut out = Vec::new();
    for i in g.colors.iter() {
        let sign = kappa_unchecked(i, g.colors);
        let rest = g.colors.without(i);
        if met.contains(i) {
            let v = cx.vertex_of_color(g.sigma, i).expect("color met by σ");
            out.push((
                KoszulGenerator {
                    sigma: g.sigma,
                    h: g.h.bumped(v),
                    colors: rest,
                },
                sign,
            ));
        } else {
            for v in cx.partition.block(i).iter() {
                let omega = g.sigma.with(v);
                if cx.complex.contains(omega) {
                    out.push((
                        KoszulGenerator {
                            sigma: omega,
                            h: g.h.bumped(v),
                            colors: rest,
                        },
                        sign,
                    ));
                }
            }
        }
    }
    normalize(out)
}

/// `max(1, dim K + r + 2)`.
pub fn default_weight_bound(k: &SimplicialComplex, alpha: &Partition) -> u32 {
    (k.dimension() + alpha.block_count() as i32 + 2).max(1) as u32
}

/// Per-`L` record of how much homology each weight shell contributed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stabilization {
    /// The shells `max w = B−1` and `max w = B` contributed nothing.
    pub stabilized: bool,
    /// Smallest `b` such that no shell beyond `b` contributes, if one exists.
    pub first_stable_bound: Option<u32>,
    /// `shell_totals[b]`: total homology of all pieces with `supp w = L`, `max w = b`.
    pub shell_totals: Vec<u64>,
}

impl Stabilization {
    fn from_shells(shell_totals: Vec<u64>, first_stable_bound: Option<u32>) -> Self {
        let b = shell_totals.len() - 1;
        let stabilized = shell_totals[b] == 0 && (b == 0 || shell_totals[b - 1] == 0);
        Stabilization {
            stabilized,
            first_stable_bound,
            shell_totals,
        }
    }
}

/// `dim Tor_{q,L}` summed over color weights up to the bound; zeros omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorTable {
    weight_bound: u32,
    entries: BTreeMap<(usize, ColorSet), u64>,
    stabilization: BTreeMap<ColorSet, Stabilization>,
}

/// One row of the JSON form of a [`TorTable`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorEntry {
    pub q: usize,
    #[serde(rename = "L")]
    pub colors: Vec<usize>,
    pub dim: u64,
}

#[derive(Serialize)]
struct StabilizationJson<'a> {
    #[serde(rename = "L")]
    colors: Vec<usize>,
    #[serde(flatten)]
    inner: &'a Stabilization,
}

impl TorTable {
    pub fn weight_bound(&self) -> u32 {
        self.weight_bound
    }

    pub fn get(&self, q: usize, l: ColorSet) -> u64 {
        self.entries.get(&(q, l)).copied().unwrap_or(0)
    }

    pub fn total_in_degree(&self, q: usize) -> u64 {
        self.entries
            .iter()
            .filter(|((p, _), _)| *p == q)
            .map(|(_, &d)| d)
            .sum()
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Nonzero entries ordered by `(|L|, L, q)`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, ColorSet, u64)> + '_ {
        let mut all: Vec<_> = self.entries.iter().map(|(&(q, l), &d)| (q, l, d)).collect();
        all.sort_by_key(|&(q, l, _)| (l.len(), l.0, q));
        all.into_iter()
    }

    pub fn stabilization(&self, l: ColorSet) -> Option<&Stabilization> {
        self.stabilization.get(&l)
    }

    pub fn all_stabilized(&self) -> bool {
        self.stabilization.values().all(|s| s.stabilized)
    }

    pub fn unstable_blocks(&self) -> Vec<ColorSet> {
        self.stabilization
            .iter()
            .filter(|(_, s)| !s.stabilized)
            .map(|(&l, _)| l)
            .collect()
    }

    pub fn to_entries(&self) -> Vec<TorEntry> {
        self.iter()
            .map(|(q, l, dim)| TorEntry {
                q,
                colors: l.to_vec(),
                dim,
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let stabilization: Vec<_> = self
            .stabilization
            .iter()
            .map(|(l, s)| StabilizationJson {
                colors: l.to_vec(),
                inner: s,
            })
            .collect();
        serde_json::json!({
            "weight_bound": self.weight_bound,
            "entries": self.to_entries(),
            "stabilization": stabilization,
        })
    }
}

fn check_bound(bound: u32) -> Result<()> {
    if bound == 0 {
        return Err(Error::InvalidDimension(
            "weight bound must be at least 1".into(),
        ));
    }
    Ok(())
}

/// Homology of one piece as `(q, dim)` pairs with `dim > 0`, `q = −degree`.
fn piece_homology(cx: &Colored<'_>, w: &[u32], field: FieldSpec) -> Result<Vec<(usize, u64)>> {
    Ok(cohomology_dims(&piece(cx, w), field)?
        .into_iter()
        .filter(|&(_, d)| d > 0)
        .map(|(deg, d)| ((-deg) as usize, d as u64))
        .collect())
}

fn saturating_pow(base: u32, exp: usize) -> u64 {
    (base as u64).saturating_pow(exp as u32)
}

/// Number of `w` with saturation pattern `S` (`w_i ≥ 2` exactly on `S`) and `max w = b`.
fn shell_count(b: u32, s: usize, l_empty: bool) -> u64 {
    match (s, b) {
        (0, 0) => l_empty as u64,
        (0, 1) => !l_empty as u64,
        (0, _) | (_, 0) | (_, 1) => 0,
        _ => saturating_pow(b - 1, s) - saturating_pow(b - 2, s),
    }
}

/// `Tor_{q,L}` from the Koszul complex, summing all pieces with `supp w = L`, `max w ≤ bound`.
///
/// Pieces whose weights exceed 1 on the same set `S ⊆ L` are isomorphic complexes (the
/// generator sets and matrices depend only on which `w_i` are ≥ 2), so one representative
/// per `(L, S)` is computed and scaled by the number of weights sharing its pattern.
pub fn tor_dims(
    k: &SimplicialComplex,
    alpha: &Partition,
    field: FieldSpec,
    bound: u32,
) -> Result<TorTable> {
    check_bound(bound)?;
    let cx = Colored::new(k, alpha)?;
    let r = cx.r();
    let blocks: Vec<ColorSet> = ColorSet::full(r).subsets().collect();
    let per_block: Vec<Result<(ColorSet, Vec<(usize, u64)>, Stabilization)>> = blocks
        .par_iter()
        .map(|&l| {
            let mut entries: BTreeMap<usize, u64> = BTreeMap::new();
            let mut shells = vec![0u64; bound as usize + 1];
            let mut first_stable = Some(if l.is_empty() { 0 } else { 1 });
            let mut anything = false;
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
                let homology = piece_homology(&cx, &w, field)?;
                let total: u64 = homology.iter().map(|&(_, d)| d).sum();
                if total == 0 {
                    continue;
                }
                anything = true;
                if !s.is_empty() {
                    first_stable = None;
                }
                let count = if s.is_empty() {
                    1
                } else {
                    saturating_pow(bound - 1, s.len())
                };
                for (q, d) in homology {
                    *entries.entry(q).or_default() += d * count;
                }
                for (b, shell) in shells.iter_mut().enumerate() {
                    *shell += total * shell_count(b as u32, s.len(), l.is_empty());
                }
            }
            if !anything {
                first_stable = Some(0);
            }
            let entries = entries.into_iter().filter(|&(_, d)| d > 0).collect();
            Ok((l, entries, Stabilization::from_shells(shells, first_stable)))
        })
        .collect();
    let mut table = TorTable {
        weight_bound: bound,
        entries: BTreeMap::new(),
        stabilization: BTreeMap::new(),
    };
    for item in per_block {
        let (l, entries, stab) = item?;
        for (q, d) in entries {
            table.entries.insert((q, l), d);
        }
        table.stabilization.insert(l, stab);
    }
    Ok(table)
}

/// Reference for [`tor_dims`] that builds every piece `w ∈ {0..bound}^r` literally.
///
/// `first_stable_bound` here only reflects shells up to `bound`.
pub fn tor_dims_per_weight(
    k: &SimplicialComplex,
    alpha: &Partition,
    field: FieldSpec,
    bound: u32,
) -> Result<TorTable> {
    check_bound(bound)?;
    let cx = Colored::new(k, alpha)?;
    let r = cx.r();
    let mut entries: BTreeMap<(usize, ColorSet), u64> = BTreeMap::new();
    let mut shells: BTreeMap<ColorSet, Vec<u64>> = ColorSet::full(r)
        .subsets()
        .map(|l| (l, vec![0; bound as usize + 1]))
        .collect();
    let mut w = vec![0u32; r];
    loop {
        let l = support(&w);
        let max = w.iter().copied().max().unwrap_or(0);
        for (q, d) in piece_homology(&cx, &w, field)? {
            *entries.entry((q, l)).or_default() += d;
            shells.get_mut(&l).expect("all blocks present")[max as usize] += d;
        }
        let mut k = 0;
        while k < r && w[k] == bound {
            w[k] = 0;
            k += 1;
        }
        if k == r {
            break;
        }
        w[k] += 1;
    }
    let stabilization = shells
        .into_iter()
        .map(|(l, s)| {
            let first = s.iter().rposition(|&x| x > 0).unwrap_or(0) as u32;
            (l, Stabilization::from_shells(s, Some(first)))
        })
        .collect();
    Ok(TorTable {
        weight_bound: bound,
        entries,
        stabilization,
    })
}
