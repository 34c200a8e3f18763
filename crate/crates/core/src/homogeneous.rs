//! Reductive homogeneous-space model: g = m + h with an invariant metric
//! on m, validated at construction.
//!
//! The bases of m and h are kept in the order supplied by the caller: the
//! metric Gram matrix is expressed in exactly that m-basis, so canonical
//! re-echelonization would silently change what the metric means.

use thiserror::Error;

use crate::forms::{skew_defect, BilinearForm};
use crate::lie::{LieAlgebra, Subspace};
use crate::linalg::{vec_add, vec_is_zero, vec_scale, zero_vec, Mat};
use crate::rational::Rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpaceError {
    #[error("basis vector has length {got}, algebra dimension is {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("metric is on {got} dimensions but m has dimension {expected}")]
    MetricDimension { expected: usize, got: usize },
    #[error("m and h do not form a direct-sum complement of the algebra")]
    NotComplementary,
    #[error("[h, m] leaves m at h basis {h_index}, m basis {m_index}")]
    NotAdInvariantComplement { h_index: usize, m_index: usize },
    #[error("metric on m is degenerate")]
    DegenerateMetric,
    #[error("metric is not invariant under the isotropy operator of h basis {h_index}")]
    MetricNotIsotropyInvariant { h_index: usize },
    #[error("vector is not in the isotropy subalgebra h")]
    NotInIsotropy,
}

/// Validated reductive decomposition g = m + h with an Ad(H)-invariant
/// nondegenerate metric on m.
#[derive(Debug, Clone)]
pub struct ReductiveSpace {
    algebra: LieAlgebra,
    m_basis: Mat,
    h_basis: Mat,
    metric: BilinearForm,
    /// Inverse of the column matrix [m-basis | h-basis]; maps a g-vector to
    /// its coordinates over that combined basis.
    coords_map: Mat,
}

impl ReductiveSpace {
    /// Constructs the space and checks all four invariants, returning the
    /// first violated one as a named error.
    pub fn new(
        algebra: LieAlgebra,
        h_basis: Vec<Vec<Rat>>,
        m_basis: Vec<Vec<Rat>>,
        metric: BilinearForm,
    ) -> Result<Self, SpaceError> {
        let dim = algebra.dim();
        for v in h_basis.iter().chain(m_basis.iter()) {
            if v.len() != dim {
                return Err(SpaceError::DimensionMismatch {
                    expected: dim,
                    got: v.len(),
                });
            }
        }
        if metric.dim() != m_basis.len() {
            return Err(SpaceError::MetricDimension {
                expected: m_basis.len(),
                got: metric.dim(),
            });
        }

        // g = m + h as vector spaces.
        if m_basis.len() + h_basis.len() != dim {
            return Err(SpaceError::NotComplementary);
        }
        let m_mat = if m_basis.is_empty() {
            Mat::empty(dim)
        } else {
            Mat::from_rows(m_basis)
        };
        let h_mat = if h_basis.is_empty() {
            Mat::empty(dim)
        } else {
            Mat::from_rows(h_basis)
        };
        let stacked = m_mat.vstack(&h_mat);
        let coords_map = stacked
            .transpose()
            .inverse()
            .ok_or(SpaceError::NotComplementary)?;

        let space = Self {
            algebra,
            m_basis: m_mat,
            h_basis: h_mat,
            metric,
            coords_map,
        };

        // [h, m] subseteq m.
        for h_index in 0..space.h_dim() {
            for m_index in 0..space.m_dim() {
                let w = space
                    .algebra
                    .bracket(space.h_basis.row(h_index), space.m_basis.row(m_index))
                    .expect("validated dimensions");
                if space.m_coords(&w).is_none() {
                    return Err(SpaceError::NotAdInvariantComplement { h_index, m_index });
                }
            }
        }

        // Metric nondegenerate.
        if !space.metric.is_nondegenerate() {
            return Err(SpaceError::DegenerateMetric);
        }

        // Metric invariant under every isotropy operator.
        for h_index in 0..space.h_dim() {
            let op = space.isotropy_operator_of_basis(h_index);
            let report = skew_defect(&op, &space.metric).expect("operator has metric dimension");
            if !report.skew {
                return Err(SpaceError::MetricNotIsotropyInvariant { h_index });
            }
        }

        Ok(space)
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn metric(&self) -> &BilinearForm {
        &self.metric
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn m_dim(&self) -> usize {
        self.m_basis.rows()
    }

    pub fn h_dim(&self) -> usize {
        self.h_basis.rows()
    }

    pub fn m_basis(&self) -> &Mat {
        &self.m_basis
    }

    pub fn h_basis(&self) -> &Mat {
        &self.h_basis
    }

    pub fn m_subspace(&self) -> Subspace {
        let rows: Vec<Vec<Rat>> = self.m_basis.iter_rows().map(<[Rat]>::to_vec).collect();
        Subspace::span(self.dim(), &rows)
    }

    pub fn h_subspace(&self) -> Subspace {
        let rows: Vec<Vec<Rat>> = self.h_basis.iter_rows().map(<[Rat]>::to_vec).collect();
        Subspace::span(self.dim(), &rows)
    }

    /// Coordinates of a g-vector over the combined (m then h) basis.
    fn full_coords(&self, x: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.dim(), "vector has wrong length");
        self.coords_map.apply(x)
    }

    /// Unique decomposition x = x_m + x_h, both returned as g-vectors.
    pub fn project(&self, x: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
        let coords = self.full_coords(x);
        let (mc, hc) = coords.split_at(self.m_dim());
        (self.m_vector(mc), self.h_vector(hc))
    }

    /// m-part of x, expressed in m-basis coordinates.
    pub fn project_m_coords(&self, x: &[Rat]) -> Vec<Rat> {
        let mut coords = self.full_coords(x);
        coords.truncate(self.m_dim());
        coords
    }

    /// m-basis coordinates of x, or None when x has a nonzero h-part.
    pub fn m_coords(&self, x: &[Rat]) -> Option<Vec<Rat>> {
        let coords = self.full_coords(x);
        if coords[self.m_dim()..].iter().all(num_traits::Zero::is_zero) {
            Some(coords[..self.m_dim()].to_vec())
        } else {
            None
        }
    }

    /// h-basis coordinates of x, or None when x has a nonzero m-part.
    pub fn h_coords(&self, x: &[Rat]) -> Option<Vec<Rat>> {
        let coords = self.full_coords(x);
        if coords[..self.m_dim()].iter().all(num_traits::Zero::is_zero) {
            Some(coords[self.m_dim()..].to_vec())
        } else {
            None
        }
    }

    /// g-vector of m-basis coordinates.
    pub fn m_vector(&self, m_coords: &[Rat]) -> Vec<Rat> {
        assert_eq!(m_coords.len(), self.m_dim());
        let mut out = zero_vec(self.dim());
        for (c, row) in m_coords.iter().zip(self.m_basis.iter_rows()) {
            if !num_traits::Zero::is_zero(c) {
                out = vec_add(&out, &vec_scale(row, c));
            }
        }
        out
    }

    /// g-vector of h-basis coordinates.
    pub fn h_vector(&self, h_coords: &[Rat]) -> Vec<Rat> {
        assert_eq!(h_coords.len(), self.h_dim());
        let mut out = zero_vec(self.dim());
        for (c, row) in h_coords.iter().zip(self.h_basis.iter_rows()) {
            if !num_traits::Zero::is_zero(c) {
                out = vec_add(&out, &vec_scale(row, c));
            }
        }
        out
    }

    /// Matrix of X -> [A, X]_m over the m-basis for A given in g coordinates.
    /// Errors when A is not in h.
    pub fn isotropy_operator(&self, a: &[Rat]) -> Result<Mat, SpaceError> {
        if a.len() != self.dim() {
            return Err(SpaceError::DimensionMismatch {
                expected: self.dim(),
                got: a.len(),
            });
        }
        if self.h_coords(a).is_none() {
            return Err(SpaceError::NotInIsotropy);
        }
        Ok(self.ad_restricted_to_m(a))
    }

    fn isotropy_operator_of_basis(&self, h_index: usize) -> Mat {
        self.ad_restricted_to_m(&self.h_basis.row_vec(h_index))
    }

    /// Matrix of X -> [a, X]_m over the m-basis, for any a in g.
    pub(crate) fn ad_restricted_to_m(&self, a: &[Rat]) -> Mat {
        let md = self.m_dim();
        let mut op = Mat::zeros(md, md);
        for j in 0..md {
            let w = self
                .algebra
                .bracket(a, self.m_basis.row(j))
                .expect("validated dimensions");
            let col = self.project_m_coords(&w);
            for (i, v) in col.into_iter().enumerate() {
                op[(i, j)] = v;
            }
        }
        op
    }

    /// A subspace of g re-expressed in m-basis coordinates, or None when it
    /// is not contained in m.
    pub fn subspace_in_m_coords(&self, s: &Subspace) -> Option<Subspace> {
        let mut rows = Vec::new();
        for v in s.basis_vectors() {
            rows.push(self.m_coords(v)?);
        }
        Some(Subspace::span(self.m_dim(), &rows))
    }

    /// <x, y> for m-basis coordinate vectors.
    pub fn metric_eval(&self, x_m: &[Rat], y_m: &[Rat]) -> Rat {
        self.metric.eval(x_m, y_m)
    }

    /// True when x (a g-vector) lies in m.
    pub fn is_in_m(&self, x: &[Rat]) -> bool {
        self.m_coords(x).is_some()
    }
}

/// Convenience check used by tests: x decomposes as claimed.
pub fn projection_splits(space: &ReductiveSpace, x: &[Rat]) -> bool {
    let (xm, xh) = space.project(x);
    vec_is_zero(&crate::linalg::vec_sub(&vec_add(&xm, &xh), x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn term(k: usize, c: i64) -> (usize, Rat) {
        (k, rat(c))
    }

    /// e(2): rotations and translations of the plane.
    /// [r, x] = y, [r, y] = -x, [x, y] = 0.
    fn euclidean2() -> LieAlgebra {
        LieAlgebra::new(
            3,
            vec!["r".into(), "x".into(), "y".into()],
            vec![(0, 1, vec![term(2, 1)]), (0, 2, vec![term(1, -1)])],
        )
        .unwrap()
    }

    fn plane_space() -> ReductiveSpace {
        ReductiveSpace::new(
            euclidean2(),
            vec![vec![rat(1), rat(0), rat(0)]],
            vec![vec![rat(0), rat(1), rat(0)], vec![rat(0), rat(0), rat(1)]],
            BilinearForm::diagonal(&[rat(1), rat(1)]),
        )
        .unwrap()
    }

    #[test]
    fn construction_validates() {
        let space = plane_space();
        assert_eq!(space.m_dim(), 2);
        assert_eq!(space.h_dim(), 1);
    }

    #[test]
    fn rejects_non_complement() {
        let err = ReductiveSpace::new(
            euclidean2(),
            vec![vec![rat(0), rat(1), rat(0)]],
            vec![vec![rat(0), rat(1), rat(0)], vec![rat(0), rat(0), rat(1)]],
            BilinearForm::diagonal(&[rat(1), rat(1)]),
        )
        .unwrap_err();
        assert_eq!(err, SpaceError::NotComplementary);
    }

    #[test]
    fn rejects_non_invariant_complement() {
        // Swapping the roles of r and x: [h, m] contains [x, r] = -y in m,
        // but [x, y] = 0 stays in m, while [r-part...] breaks: use h = {x},
        // m = {r, y}: [x, r] = -y in m, [x, y] = 0. That is invariant, so
        // instead take h = {r}, m = {x, r + y}: [r, x] = y not in span.
        let err = ReductiveSpace::new(
            euclidean2(),
            vec![vec![rat(1), rat(0), rat(0)]],
            vec![vec![rat(0), rat(1), rat(0)], vec![rat(1), rat(0), rat(1)]],
            BilinearForm::diagonal(&[rat(1), rat(1)]),
        )
        .unwrap_err();
        assert_eq!(err, SpaceError::NotAdInvariantComplement { h_index: 0, m_index: 0 });
    }

    #[test]
    fn rejects_degenerate_metric() {
        let err = ReductiveSpace::new(
            euclidean2(),
            vec![vec![rat(1), rat(0), rat(0)]],
            vec![vec![rat(0), rat(1), rat(0)], vec![rat(0), rat(0), rat(1)]],
            BilinearForm::diagonal(&[rat(1), rat(0)]),
        )
        .unwrap_err();
        assert_eq!(err, SpaceError::DegenerateMetric);
    }

    #[test]
    fn rejects_non_isotropy_invariant_metric() {
        // The rotation operator is skew only for proportional diagonal entries.
        let err = ReductiveSpace::new(
            euclidean2(),
            vec![vec![rat(1), rat(0), rat(0)]],
            vec![vec![rat(0), rat(1), rat(0)], vec![rat(0), rat(0), rat(1)]],
            BilinearForm::diagonal(&[rat(1), rat(2)]),
        )
        .unwrap_err();
        assert_eq!(err, SpaceError::MetricNotIsotropyInvariant { h_index: 0 });
    }

    #[test]
    fn projection_is_the_identity_split() {
        let space = plane_space();
        let x = vec![rat(5), rat(-2), rat(7)];
        let (xm, xh) = space.project(&x);
        assert_eq!(xm, vec![rat(0), rat(-2), rat(7)]);
        assert_eq!(xh, vec![rat(5), rat(0), rat(0)]);
        assert!(projection_splits(&space, &x));
        // Idempotent on each factor.
        assert_eq!(space.project(&xm).0, xm);
        assert!(vec_is_zero(&space.project(&xm).1));
    }

    #[test]
    fn isotropy_operator_is_rotation_generator() {
        let space = plane_space();
        let op = space
            .isotropy_operator(&[rat(1), rat(0), rat(0)])
            .unwrap();
        let expected = Mat::from_rows(vec![vec![rat(0), rat(-1)], vec![rat(1), rat(0)]]);
        assert_eq!(op, expected);
        let not_h = space.isotropy_operator(&[rat(1), rat(1), rat(0)]);
        assert_eq!(not_h.unwrap_err(), SpaceError::NotInIsotropy);
    }

    #[test]
    fn zero_isotropy_vector_gives_zero_operator() {
        let space = plane_space();
        let op = space.isotropy_operator(&[rat(0), rat(0), rat(0)]).unwrap();
        assert!(op.is_zero());
    }

    #[test]
    fn operator_respects_brackets() {
        // op([A,B]) = [op(A), op(B)] for basis pairs of h (trivial here since
        // h is one-dimensional, checked for completeness).
        let space = plane_space();
        let a = vec![rat(1), rat(0), rat(0)];
        let bracket = space.algebra().bracket(&a, &a).unwrap();
        let op_bracket = space.ad_restricted_to_m(&bracket);
        assert!(op_bracket.is_zero());
    }

    #[test]
    fn subspace_in_m_coords_requires_containment() {
        let space = plane_space();
        let inside = Subspace::span(3, &[vec![rat(0), rat(1), rat(1)]]);
        let outside = Subspace::span(3, &[vec![rat(1), rat(1), rat(0)]]);
        assert_eq!(space.subspace_in_m_coords(&inside).unwrap().dim(), 1);
        assert!(space.subspace_in_m_coords(&outside).is_none());
    }
}
