//! Seeded random complexes and the fixed corpus used by the `corpus` command and the test suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{SimplicialComplex, DEFAULT_MAX_VERTICES};
use crate::error::{Error, Result};
use crate::subset::VertexSubset;

pub const DEFAULT_CORPUS_SEED: u64 = 20240601;
pub const RANDOM_CORPUS_SIZE: usize = 200;
pub const RANDOM_CORPUS_MAX_VERTICES: usize = 7;

const DENSITIES: [f64; 5] = [0.15, 0.3, 0.45, 0.6, 0.75];

/// Random complex on `[m]`: every subset `S` with `|S| ≥ 2` becomes a facet
/// candidate with probability `density^{|S|−1}`; then downward closure plus all singletons.
///
/// `density = 0` gives `m` isolated points and `density = 1` the full simplex.
pub fn random_complex(m: usize, density: f64, seed: u64) -> Result<SimplicialComplex> {
    if !(2..=DEFAULT_MAX_VERTICES).contains(&m) {
        return Err(Error::VertexOutOfRange {
            vertex: m,
            m: DEFAULT_MAX_VERTICES,
        });
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidDimension(format!(
            "density {density} is not in [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut facets: Vec<VertexSubset> = (1..=m).map(VertexSubset::singleton).collect();
    for mask in 1u32..(1u32 << m) {
        let size = mask.count_ones() as i32;
        if size < 2 {
            continue;
        }
        if rng.gen_bool(density.powi(size - 1)) {
            facets.push(VertexSubset(mask));
        }
    }
    SimplicialComplex::from_facets(m, &facets)
}

/// The cycle on `n ≥ 3` vertices.
pub fn cycle(n: usize) -> Result<SimplicialComplex> {
    if n < 3 {
        return Err(Error::InvalidDimension(format!(
            "a cycle needs at least 3 vertices, got {n}"
        )));
    }
    let edges: Vec<_> = (1..=n)
        .map(|j| VertexSubset::from_elements([j, j % n + 1]))
        .collect();
    SimplicialComplex::from_facets(n, &edges)
}

/// Six-vertex triangulation of the real projective plane.
pub fn projective_plane() -> SimplicialComplex {
    const TRIANGLES: [[usize; 3]; 10] = [
        [1, 2, 3],
        [1, 3, 4],
        [1, 4, 5],
        [1, 5, 6],
        [1, 2, 6],
        [2, 3, 5],
        [2, 4, 5],
        [2, 4, 6],
        [3, 4, 6],
        [3, 5, 6],
    ];
    let facets: Vec<_> = TRIANGLES
        .iter()
        .map(|t| VertexSubset::from_elements(*t))
        .collect();
    SimplicialComplex::from_facets(6, &facets).expect("valid triangulation")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusMember {
    pub name: String,
    pub complex: SimplicialComplex,
}

/// `∂Δ¹, ∂Δ², ∂Δ³`, the 4- and 5-cycles, `Δ²` and the projective plane.
pub fn named_complexes() -> Vec<CorpusMember> {
    let mut out = Vec::new();
    for n in 1..=3 {
        out.push(CorpusMember {
            name: format!("boundary-simplex-{n}"),
            complex: SimplicialComplex::boundary_simplex(n).expect("n ≥ 1"),
        });
    }
    for n in [4, 5] {
        out.push(CorpusMember {
            name: format!("cycle-{n}"),
            complex: cycle(n).expect("n ≥ 3"),
        });
    }
    out.push(CorpusMember {
        name: "simplex-2".into(),
        complex: SimplicialComplex::simplex(3).expect("small"),
    });
    out.push(CorpusMember {
        name: "projective-plane".into(),
        complex: projective_plane(),
    });
    out
}

/// Parameters of the `index`-th random member: `(m, density, seed)`.
pub fn random_member_parameters(seed: u64, index: usize) -> (usize, f64, u64) {
    let m = 2 + index % (RANDOM_CORPUS_MAX_VERTICES - 1);
    let density = DENSITIES[(index / (RANDOM_CORPUS_MAX_VERTICES - 1)) % DENSITIES.len()];
    (m, density, seed.wrapping_add(index as u64))
}

/// `count` random complexes with `2 ≤ m ≤ max_m`.
pub fn random_corpus(seed: u64, count: usize, max_m: usize) -> Result<Vec<CorpusMember>> {
    (0..count)
        .map(|index| {
            let (m, density, s) = random_member_parameters(seed, index);
            let m = m.min(max_m.max(2));
            Ok(CorpusMember {
                name: format!("random-{index}-m{m}-d{density}-s{s}"),
                complex: random_complex(m, density, s)?,
            })
        })
        .collect()
}

/// Named complexes followed by the 200 seeded random complexes on at most 7 vertices.
pub fn builtin_corpus(seed: u64) -> Vec<CorpusMember> {
    let mut out = named_complexes();
    out.extend(
        random_corpus(seed, RANDOM_CORPUS_SIZE, RANDOM_CORPUS_MAX_VERTICES)
            .expect("parameters in range"),
    );
    out
}
