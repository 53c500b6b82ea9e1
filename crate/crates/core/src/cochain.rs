//! Finite cochain complexes of free modules and the reduced simplicial cochain complex.

use std::collections::BTreeMap;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::{rank, FieldSpec, Matrix};
use crate::subset::VertexSubset;

/// A cochain complex concentrated in degrees `lo..=hi`.
///
/// `coboundary(q)` maps degree `q` to `q + 1` and has shape
/// `basis_size(q + 1) × basis_size(q)`.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    lo: i32,
    sizes: Vec<usize>,
    d: Vec<Matrix>,
    labels: Option<Vec<Vec<String>>>,
}

impl CochainComplex {
    /// `sizes[k]` is the rank in degree `lo + k`; `d[k]` goes from `lo + k` to `lo + k + 1`.
    pub fn new(lo: i32, sizes: Vec<usize>, d: Vec<Matrix>) -> Self {
        assert!(!sizes.is_empty(), "a complex needs at least one degree");
        assert_eq!(
            d.len() + 1,
            sizes.len(),
            "one coboundary per pair of adjacent degrees"
        );
        for (k, m) in d.iter().enumerate() {
            assert_eq!(m.cols(), sizes[k], "coboundary source size");
            assert_eq!(m.rows(), sizes[k + 1], "coboundary target size");
        }
        CochainComplex {
            lo,
            sizes,
            d,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Self {
        assert_eq!(labels.len(), self.sizes.len());
        self.labels = Some(labels);
        self
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.sizes.len() as i32 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi()
    }

    pub fn basis_size(&self, q: i32) -> usize {
        if q < self.lo || q > self.hi() {
            0
        } else {
            self.sizes[(q - self.lo) as usize]
        }
    }

    /// Coboundary out of degree `q`, or `None` at the top degree / out of range.
    pub fn coboundary(&self, q: i32) -> Option<&Matrix> {
        if q < self.lo {
            return None;
        }
        self.d.get((q - self.lo) as usize)
    }

    pub fn labels(&self, q: i32) -> Option<&[String]> {
        let labels = self.labels.as_ref()?;
        if q < self.lo || q > self.hi() {
            return None;
        }
        Some(&labels[(q - self.lo) as usize])
    }

    pub fn total_size(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Alternating sum of basis sizes.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|q| sign(q) * self.basis_size(q) as i64)
            .sum()
    }

    /// Checks `d_{q+1} ∘ d_q = 0` over the integers.
    pub fn check_d_squared(&self) -> Result<()> {
        self.check_d_squared_in(FieldSpec::Rationals)
    }

    pub fn check_d_squared_in(&self, field: FieldSpec) -> Result<()> {
        for k in 1..self.d.len() {
            if !self.d[k].mul(&self.d[k - 1]).is_zero_in(field) {
                return Err(Error::NotAComplex {
                    degree: self.lo + k as i32 - 1,
                });
            }
        }
        Ok(())
    }
}

fn sign(q: i32) -> i64 {
    if q.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `dim H^q = ker d_q - im d_{q-1}` for every degree of the complex (zeros included).
pub fn cohomology_dims(c: &CochainComplex, field: FieldSpec) -> Result<BTreeMap<i32, usize>> {
    c.check_d_squared_in(field)?;
    let ranks: Vec<usize> = c.d.iter().map(|m| rank(m, field)).collect();
    let mut out = BTreeMap::new();
    for q in c.degrees() {
        let k = (q - c.lo) as usize;
        let kernel = match c.d.get(k) {
            Some(m) => m.cols() - ranks[k],
            None => c.sizes[k],
        };
        let image = if k == 0 { 0 } else { ranks[k - 1] };
        out.insert(q, kernel - image);
    }
    Ok(out)
}

/// Augmented cochain complex of `K`: degree `q` has the `q`-faces as basis, `∅` in degree −1.
///
/// Faces are oriented by ascending vertex labels; inserting vertex `v` at
/// position `p` (0-based) of the larger face contributes sign `(−1)^p`.
pub fn reduced_cochain_complex(k: &SimplicialComplex) -> CochainComplex {
    let by_dim = k.faces_by_dim();
    let index: Vec<BTreeMap<u32, usize>> = by_dim
        .iter()
        .map(|fs| fs.iter().enumerate().map(|(i, f)| (f.0, i)).collect())
        .collect();
    let sizes: Vec<usize> = by_dim.iter().map(Vec::len).collect();
    let m = k.vertex_count();
    let mut d = Vec::with_capacity(sizes.len().saturating_sub(1));
    for s in 0..sizes.len().saturating_sub(1) {
        let mut mat = Matrix::zeros(sizes[s + 1], sizes[s]);
        for (col, &sigma) in by_dim[s].iter().enumerate() {
            for v in 1..=m {
                if sigma.contains(v) {
                    continue;
                }
                let tau = sigma.with(v);
                if let Some(&row) = index[s + 1].get(&tau.0) {
                    let pos = tau.count_below(v);
                    mat.set(row, col, if pos % 2 == 0 { 1 } else { -1 });
                }
            }
        }
        d.push(mat);
    }
    let labels = by_dim
        .iter()
        .map(|fs| fs.iter().map(|f| format!("{f}")).collect())
        .collect();
    CochainComplex::new(-1, sizes, d).with_labels(labels)
}

/// `dim H̃^q(K)` for `q = −1..=dim K`.
pub fn reduced_cohomology_dims(k: &SimplicialComplex, field: FieldSpec) -> BTreeMap<i32, usize> {
    cohomology_dims(&reduced_cochain_complex(k), field)
        .expect("simplicial coboundary squares to zero")
}

/// `dim H̃^q(K|ω)`.
pub fn reduced_cohomology_of_restriction(
    k: &SimplicialComplex,
    omega: VertexSubset,
    field: FieldSpec,
) -> BTreeMap<i32, usize> {
    let sub = k.full_subcomplex(omega).expect("ω ⊆ [m]");
    reduced_cohomology_dims(&sub, field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::FieldSpec::{PrimeField, Rationals};

    fn vs(v: &[usize]) -> VertexSubset {
        VertexSubset::from_elements(v.iter().copied())
    }

    pub(crate) fn rp2() -> SimplicialComplex {
        let tri = [
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
        let facets: Vec<_> = tri.iter().map(|t| vs(t)).collect();
        SimplicialComplex::from_facets(6, &facets).unwrap()
    }

    #[test]
    fn void_complex() {
        let c = reduced_cochain_complex(&SimplicialComplex::void());
        assert_eq!(c.lo(), -1);
        assert_eq!(c.hi(), -1);
        assert_eq!(c.basis_size(-1), 1);
        let h = cohomology_dims(&c, Rationals).unwrap();
        assert_eq!(h, BTreeMap::from([(-1, 1)]));
    }

    #[test]
    fn two_points() {
        let k = SimplicialComplex::from_facets(2, &[vs(&[1]), vs(&[2])]).unwrap();
        let c = reduced_cochain_complex(&k);
        assert_eq!((c.basis_size(-1), c.basis_size(0)), (1, 2));
        assert_eq!(
            c.coboundary(-1).unwrap(),
            &Matrix::from_rows(&[vec![1], vec![1]])
        );
        let h = reduced_cohomology_dims(&k, Rationals);
        assert_eq!(h, BTreeMap::from([(-1, 0), (0, 1)]));
    }

    #[test]
    fn four_cycle_ranks() {
        let k = SimplicialComplex::from_facets(
            4,
            &[vs(&[1, 2]), vs(&[2, 3]), vs(&[3, 4]), vs(&[1, 4])],
        )
        .unwrap();
        let c = reduced_cochain_complex(&k);
        assert_eq!(
            (c.basis_size(-1), c.basis_size(0), c.basis_size(1)),
            (1, 4, 4)
        );
        assert_eq!(rank(c.coboundary(-1).unwrap(), Rationals), 1);
        assert_eq!(rank(c.coboundary(0).unwrap(), Rationals), 3);
        c.check_d_squared().unwrap();
    }

    #[test]
    fn rp2_boundary_ranks() {
        let c = reduced_cochain_complex(&rp2());
        assert_eq!((c.basis_size(1), c.basis_size(2)), (15, 10));
        // ∂₂ is the transpose of the coboundary from edges to triangles
        let boundary2 = c.coboundary(1).unwrap().transpose();
        assert_eq!((boundary2.rows(), boundary2.cols()), (15, 10));
        assert_eq!(rank(&boundary2, Rationals), 10);
        assert_eq!(rank(&boundary2, PrimeField(2)), 9);
        let boundary1 = c.coboundary(0).unwrap().transpose();
        assert_eq!(rank(&boundary1, Rationals), 5);
    }

    #[test]
    fn rp2_cohomology_depends_on_field() {
        let k = rp2();
        let f2 = reduced_cohomology_dims(&k, PrimeField(2));
        assert_eq!((f2[&1], f2[&2]), (1, 1));
        let q = reduced_cohomology_dims(&k, Rationals);
        assert_eq!((q[&1], q[&2]), (0, 0));
    }

    #[test]
    fn broken_complex_is_rejected() {
        let d0 = Matrix::from_rows(&[vec![1]]);
        let d1 = Matrix::from_rows(&[vec![1]]);
        let c = CochainComplex::new(0, vec![1, 1, 1], vec![d0, d1]);
        assert_eq!(
            cohomology_dims(&c, Rationals).unwrap_err(),
            Error::NotAComplex { degree: 0 }
        );
        // 2 · 1 vanishes mod 2
        let c = CochainComplex::new(
            0,
            vec![1, 1, 1],
            vec![Matrix::from_rows(&[vec![2]]), Matrix::from_rows(&[vec![1]])],
        );
        assert!(cohomology_dims(&c, PrimeField(2)).is_ok());
    }
}
