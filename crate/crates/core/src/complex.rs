//! Abstract simplicial complexes on `[m]`, stored with all faces expanded.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::{VertexSubset, MASK_BITS};

/// Default vertex cap. Full-subcomplex enumeration costs `2^m`.
pub const DEFAULT_MAX_VERTICES: usize = 24;

const WARN_VERTICES: usize = 20;

/// A simplicial complex on `[m]` containing `∅` and every singleton.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    m: usize,
    cap: usize,
    facets: Vec<VertexSubset>,
    /// Sorted by (cardinality, mask); `faces[0]` is `∅`.
    faces: Vec<VertexSubset>,
    /// Membership bitmap over all `2^m` masks.
    member: Vec<u64>,
    /// Original vertex labels (1-based) of the vertices `1..=m`.
    labels: Vec<usize>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.faces == other.faces && self.labels == other.labels
    }
}

impl Eq for SimplicialComplex {}

fn check_cap(m: usize, cap: usize) -> Result<()> {
    let cap = cap.min(MASK_BITS - 1);
    if m > cap {
        return Err(Error::VertexBudgetExceeded { requested: m, cap });
    }
    if m > WARN_VERTICES {
        log::warn!("{m} vertices: full-subcomplex enumeration visits 2^{m} subsets");
    }
    Ok(())
}

impl SimplicialComplex {
    /// Builds the downward closure of `facets` under the default vertex cap.
    pub fn from_facets(m: usize, facets: &[VertexSubset]) -> Result<Self> {
        Self::from_facets_capped(m, facets, DEFAULT_MAX_VERTICES)
    }

    pub fn from_facets_capped(m: usize, facets: &[VertexSubset], cap: usize) -> Result<Self> {
        check_cap(m, cap)?;
        if facets.iter().all(|f| f.is_empty()) {
            return Err(Error::EmptyFacetList);
        }
        let universe = VertexSubset::full(m);
        for f in facets {
            if !f.is_subset(universe) {
                let vertex = f.difference(universe).iter().next().unwrap_or(0);
                return Err(Error::VertexOutOfRange { vertex, m });
            }
        }
        let covered = facets.iter().fold(VertexSubset::EMPTY, |a, &f| a.union(f));
        if let Some(vertex) = universe.difference(covered).iter().next() {
            return Err(Error::IsolatedVertexMissing { vertex });
        }
        Ok(Self::closure(m, cap, facets))
    }

    /// Like [`from_facets`](Self::from_facets), but vertices in no facet are
    /// added as isolated points instead of being rejected.
    pub fn from_facets_allow_isolated(
        m: usize,
        facets: &[VertexSubset],
        cap: usize,
    ) -> Result<Self> {
        check_cap(m, cap)?;
        let universe = VertexSubset::full(m);
        for f in facets {
            if !f.is_subset(universe) {
                let vertex = f.difference(universe).iter().next().unwrap_or(0);
                return Err(Error::VertexOutOfRange { vertex, m });
            }
        }
        let mut all: Vec<VertexSubset> = facets.to_vec();
        all.extend((1..=m).map(VertexSubset::singleton));
        if all.is_empty() {
            return Ok(Self::void());
        }
        Ok(Self::closure(m, cap, &all))
    }

    /// The complex `{∅}` on zero vertices.
    pub fn void() -> Self {
        Self::closure(0, DEFAULT_MAX_VERTICES, &[])
    }

    fn closure(m: usize, cap: usize, generators: &[VertexSubset]) -> Self {
        let mut member = vec![0u64; (1usize << m).div_ceil(64)];
        let set = |b: u32, member: &mut Vec<u64>| {
            let was = member[(b / 64) as usize] >> (b % 64) & 1 == 1;
            member[(b / 64) as usize] |= 1 << (b % 64);
            was
        };
        set(0, &mut member);
        for f in generators {
            if set(f.0, &mut member) {
                continue;
            }
            for sub in f.subsets() {
                set(sub.0, &mut member);
            }
        }
        let mut faces: Vec<VertexSubset> = (0..(1u64 << m))
            .map(|b| b as u32)
            .filter(|&b| member[(b / 64) as usize] >> (b % 64) & 1 == 1)
            .map(VertexSubset)
            .collect();
        faces.sort_by_key(|f| (f.len(), f.0));
        let mut out = SimplicialComplex {
            m,
            cap,
            facets: Vec::new(),
            faces,
            member,
            labels: (1..=m).collect(),
        };
        out.facets = out.compute_facets();
        out
    }

    fn compute_facets(&self) -> Vec<VertexSubset> {
        let mut facets: Vec<VertexSubset> = self
            .faces
            .iter()
            .copied()
            .filter(|&f| {
                !f.is_empty()
                    && (1..=self.m)
                        .filter(|&j| !f.contains(j))
                        .all(|j| !self.contains(f.with(j)))
            })
            .collect();
        facets.sort_by_key(|f| f.to_vec());
        facets
    }

    pub fn vertex_count(&self) -> usize {
        self.m
    }

    pub fn vertex_cap(&self) -> usize {
        self.cap
    }

    /// Maximal faces, ordered lexicographically by their vertex lists.
    pub fn facets(&self) -> &[VertexSubset] {
        &self.facets
    }

    /// All faces including `∅`, ordered by (cardinality, mask).
    pub fn faces(&self) -> &[VertexSubset] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Original labels of the vertices; `1..=m` unless this is a full subcomplex.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn contains(&self, sigma: VertexSubset) -> bool {
        let b = sigma.0 as usize;
        if self.m < MASK_BITS && b >> self.m != 0 {
            return false;
        }
        self.member[b / 64] >> (b % 64) & 1 == 1
    }

    /// `max |σ| - 1`; `-1` for `{∅}`.
    pub fn dimension(&self) -> i32 {
        self.faces.last().map_or(-1, |f| f.len() as i32 - 1)
    }

    /// `faces_by_dim()[k]` lists the `(k-1)`-faces, so index 0 holds `∅`.
    pub fn faces_by_dim(&self) -> Vec<Vec<VertexSubset>> {
        let top = (self.dimension() + 1) as usize;
        let mut out = vec![Vec::new(); top + 1];
        for &f in &self.faces {
            out[f.len()].push(f);
        }
        out
    }

    /// Neighbours of `j` in the 1-skeleton.
    pub fn neighbours(&self, j: usize) -> VertexSubset {
        (1..=self.m)
            .filter(|&k| k != j && self.contains(VertexSubset::singleton(j).with(k)))
            .fold(VertexSubset::EMPTY, |a, k| a.with(k))
    }

    /// 1-faces as vertex pairs `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.faces
            .iter()
            .filter(|f| f.len() == 2)
            .map(|f| {
                let mut it = f.iter();
                (it.next().unwrap(), it.next().unwrap())
            })
            .collect()
    }

    /// `K|ω`, re-indexed onto `[|ω|]`; original labels are kept in [`labels`](Self::labels).
    pub fn full_subcomplex(&self, omega: VertexSubset) -> Result<Self> {
        let universe = VertexSubset::full(self.m);
        if !omega.is_subset(universe) {
            let vertex = omega.difference(universe).iter().next().unwrap_or(0);
            return Err(Error::VertexOutOfRange { vertex, m: self.m });
        }
        let verts = omega.to_vec();
        let n = verts.len();
        let compress = |f: VertexSubset| {
            VertexSubset::from_elements(
                verts
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| f.contains(v))
                    .map(|(k, _)| k + 1),
            )
        };
        let generators: Vec<VertexSubset> = self
            .facets
            .iter()
            .map(|&f| compress(f.intersection(omega)))
            .filter(|f| !f.is_empty())
            .collect();
        let mut out = Self::closure(n, self.cap, &generators);
        out.labels = verts.iter().map(|&v| self.labels[v - 1]).collect();
        Ok(out)
    }

    /// Faces of `K|ω` without re-indexing, in (cardinality, mask) order.
    pub fn faces_within(&self, omega: VertexSubset) -> impl Iterator<Item = VertexSubset> + '_ {
        self.faces
            .iter()
            .copied()
            .filter(move |f| f.is_subset(omega))
    }

    /// Boundary of the `n`-simplex: all `n`-element subsets of `[n+1]`.
    pub fn boundary_simplex(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidDimension(format!(
                "boundary of an n-simplex needs n >= 1, got {n}"
            )));
        }
        let m = n + 1;
        let full = VertexSubset::full(m);
        let facets: Vec<_> = (1..=m).map(|j| full.without(j)).collect();
        Self::from_facets(m, &facets)
    }

    /// The full simplex on `[m]`.
    pub fn simplex(m: usize) -> Result<Self> {
        Self::from_facets(m, &[VertexSubset::full(m)])
    }

    /// Join; the vertices of `other` are shifted by `self.vertex_count()`.
    pub fn join(&self, other: &Self) -> Result<Self> {
        let m = self.m + other.m;
        let cap = self.cap.max(other.cap);
        check_cap(m, cap)?;
        let shift = self.m as u32;
        let mut generators =
            Vec::with_capacity(self.facets.len().max(1) * other.facets.len().max(1));
        let left: Vec<VertexSubset> = if self.facets.is_empty() {
            vec![VertexSubset::EMPTY]
        } else {
            self.facets.clone()
        };
        let right: Vec<VertexSubset> = if other.facets.is_empty() {
            vec![VertexSubset::EMPTY]
        } else {
            other.facets.clone()
        };
        for a in &left {
            for b in &right {
                generators.push(VertexSubset(a.0 | (b.0 << shift)));
            }
        }
        let mut out = Self::closure(m, cap, &generators);
        out.labels = self
            .labels
            .iter()
            .copied()
            .chain(other.labels.iter().map(|&l| l + self.m))
            .collect();
        Ok(out)
    }

    /// Applies a vertex relabeling: vertex `j` becomes `perm[j-1]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.m {
            return Err(Error::InvalidDimension(format!(
                "permutation of length {} for {} vertices",
                perm.len(),
                self.m
            )));
        }
        let map = |f: VertexSubset| VertexSubset::from_elements(f.iter().map(|j| perm[j - 1]));
        let facets: Vec<_> = self.facets.iter().map(|&f| map(f)).collect();
        Self::from_facets_capped(self.m, &facets, self.cap)
    }

    /// Parses the line-oriented text format (`m <int>` then `facet ...` lines).
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with(text, DEFAULT_MAX_VERTICES, false)
    }

    pub fn parse_with(text: &str, cap: usize, allow_isolated: bool) -> Result<Self> {
        let mut m: Option<usize> = None;
        let mut facets = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut toks = line.split_whitespace();
            let parse_err = |msg: String| Error::Parse { line: line_no, msg };
            match toks.next() {
                Some("m") => {
                    if m.is_some() {
                        return Err(parse_err("duplicate `m` header".into()));
                    }
                    let v = toks
                        .next()
                        .ok_or_else(|| parse_err("`m` needs a value".into()))?;
                    let v: usize = v
                        .parse()
                        .map_err(|_| parse_err(format!("bad vertex count `{v}`")))?;
                    if toks.next().is_some() {
                        return Err(parse_err("trailing tokens after `m`".into()));
                    }
                    m = Some(v);
                }
                Some("facet") => {
                    let m = m.ok_or_else(|| parse_err("`facet` before `m` header".into()))?;
                    let mut f = VertexSubset::EMPTY;
                    for t in toks {
                        let v: usize = t
                            .parse()
                            .map_err(|_| parse_err(format!("bad vertex `{t}`")))?;
                        if v == 0 || v > m {
                            return Err(Error::VertexOutOfRange { vertex: v, m });
                        }
                        f = f.with(v);
                    }
                    if f.is_empty() {
                        return Err(parse_err("empty facet".into()));
                    }
                    facets.push(f);
                }
                Some(other) => return Err(parse_err(format!("unknown keyword `{other}`"))),
                None => unreachable!(),
            }
        }
        let m = m.ok_or(Error::Parse {
            line: 0,
            msg: "missing `m` header".into(),
        })?;
        check_cap(m, cap)?;
        if allow_isolated {
            Self::from_facets_allow_isolated(m, &facets, cap)
        } else {
            Self::from_facets_capped(m, &facets, cap)
        }
    }

    /// Canonical text form, parseable by [`parse`](Self::parse).
    pub fn to_text(&self) -> String {
        let mut s = format!("m {}\n", self.m);
        for f in &self.facets {
            s.push_str("facet");
            for j in f.iter() {
                write!(s, " {j}").unwrap();
            }
            s.push('\n');
        }
        s
    }
}

/// JSON form of a complex: `{"m": 4, "facets": [[1, 2], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub m: usize,
    pub facets: Vec<Vec<usize>>,
}

impl From<&SimplicialComplex> for ComplexJson {
    fn from(k: &SimplicialComplex) -> Self {
        ComplexJson {
            m: k.m,
            facets: k.facets.iter().map(|f| f.to_vec()).collect(),
        }
    }
}

impl TryFrom<ComplexJson> for SimplicialComplex {
    type Error = Error;

    fn try_from(j: ComplexJson) -> Result<Self> {
        if j.m == 0 && j.facets.is_empty() {
            return Ok(SimplicialComplex::void());
        }
        let mut facets = Vec::with_capacity(j.facets.len());
        for f in &j.facets {
            if let Some(&v) = f.iter().find(|&&v| v == 0 || v > j.m) {
                return Err(Error::VertexOutOfRange { vertex: v, m: j.m });
            }
            facets.push(VertexSubset::from_elements(f.iter().copied()));
        }
        SimplicialComplex::from_facets(j.m, &facets)
    }
}
