//! Exact symmetric bilinear forms: signatures by congruence, restrictions,
//! orthocomplements, and skewness checks for operators.

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::lie::Subspace;
use crate::linalg::{dot, Mat};
use crate::rational::Rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormsError {
    #[error("gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("gram matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("subspace ambient dimension {got} does not match form dimension {expected}")]
    AmbientMismatch { expected: usize, got: usize },
    #[error("operator is {rows}x{cols}, expected {dim}x{dim}")]
    OperatorShape {
        rows: usize,
        cols: usize,
        dim: usize,
    },
}

/// Inertia of a symmetric form. By Sylvester's law this is independent of
/// the basis used to diagonalize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

impl Signature {
    pub fn dim(&self) -> usize {
        self.n_plus + self.n_minus + self.n_zero
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.n_zero == 0
    }

    /// Positive or negative definite. A degenerate form is never definite;
    /// the zero-dimensional form is vacuously definite.
    pub fn is_definite(&self) -> bool {
        self.n_zero == 0 && (self.n_plus == 0 || self.n_minus == 0)
    }

    pub fn as_triple(&self) -> (usize, usize, usize) {
        (self.n_plus, self.n_minus, self.n_zero)
    }
}

/// Symmetric bilinear form given by its exact Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearForm {
    gram: Mat,
}

impl BilinearForm {
    pub fn new(gram: Mat) -> Result<Self, FormsError> {
        if gram.rows() != gram.cols() {
            return Err(FormsError::NotSquare {
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        for i in 0..gram.rows() {
            for j in (i + 1)..gram.cols() {
                if gram[(i, j)] != gram[(j, i)] {
                    return Err(FormsError::NotSymmetric(i, j));
                }
            }
        }
        Ok(Self { gram })
    }

    pub fn diagonal(entries: &[Rat]) -> Self {
        let mut gram = Mat::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            gram[(i, i)] = e.clone();
        }
        Self { gram }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            gram: Mat::zeros(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn gram_row(&self, i: usize) -> &[Rat] {
        self.gram.row(i)
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.gram[(i, j)]
    }

    /// <x, y> for coordinate vectors.
    pub fn eval(&self, x: &[Rat], y: &[Rat]) -> Rat {
        dot(&self.gram.apply(y), x)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.gram.rank() == self.dim()
    }

    /// Inertia by exact symmetric congruence elimination. Zero diagonals are
    /// repaired by a diagonal swap when possible, otherwise by the basis
    /// change e_i -> e_i + e_j against a nonzero off-diagonal entry.
    pub fn signature(&self) -> Signature {
        let n = self.dim();
        let mut g = self.gram.clone();
        let mut sig = Signature {
            n_plus: 0,
            n_minus: 0,
            n_zero: 0,
        };
        for i in 0..n {
            if g[(i, i)].is_zero() {
                if let Some(j) = ((i + 1)..n).find(|&j| !g[(j, j)].is_zero()) {
                    swap_symmetric(&mut g, i, j);
                } else if let Some(j) = ((i + 1)..n).find(|&j| !g[(i, j)].is_zero()) {
                    add_symmetric(&mut g, i, j);
                } else {
                    // Row i is zero on the active block: radical direction.
                    sig.n_zero += 1;
                    continue;
                }
            }
            let pivot = g[(i, i)].clone();
            if pivot > Rat::zero() {
                sig.n_plus += 1;
            } else {
                sig.n_minus += 1;
            }
            for j in (i + 1)..n {
                if g[(j, i)].is_zero() {
                    continue;
                }
                let f = &g[(j, i)] / &pivot;
                // row_j -= f * row_i, then col_j -= f * col_i.
                for c in i..n {
                    let v = &g[(j, c)] - &f * &g[(i, c)];
                    g[(j, c)] = v;
                }
                for r in i..n {
                    let v = &g[(r, j)] - &f * &g[(r, i)];
                    g[(r, j)] = v;
                }
            }
        }
        sig
    }

    /// Gram matrix of the form on the subspace basis.
    pub fn restrict(&self, s: &Subspace) -> Result<BilinearForm, FormsError> {
        if s.ambient_dim() != self.dim() {
            return Err(FormsError::AmbientMismatch {
                expected: self.dim(),
                got: s.ambient_dim(),
            });
        }
        let rows: Vec<Vec<Rat>> = s.basis_vectors().map(<[Rat]>::to_vec).collect();
        let mut gram = Mat::zeros(rows.len(), rows.len());
        for (r, br) in rows.iter().enumerate() {
            let gbr = self.gram.apply(br);
            for (c, bc) in rows.iter().enumerate() {
                gram[(r, c)] = dot(bc, &gbr);
            }
        }
        Ok(BilinearForm { gram })
    }

    /// { x : <x, s> = 0 for all s in S }, an exact kernel computation.
    pub fn orthocomplement(&self, s: &Subspace) -> Result<Subspace, FormsError> {
        if s.ambient_dim() != self.dim() {
            return Err(FormsError::AmbientMismatch {
                expected: self.dim(),
                got: s.ambient_dim(),
            });
        }
        let constraints = s.basis().mul(&self.gram);
        let kernel = constraints.kernel();
        let rows: Vec<Vec<Rat>> = kernel.iter_rows().map(<[Rat]>::to_vec).collect();
        Ok(Subspace::span(self.dim(), &rows))
    }

    /// Congruence transport: the form pulled back along the basis change
    /// with rows of `t` as new basis vectors (gram' = T G T^t).
    pub fn congruence(&self, t: &Mat) -> BilinearForm {
        BilinearForm {
            gram: t.mul(&self.gram).mul(&t.transpose()),
        }
    }
}

/// Checks <Op x, y> + <x, Op y> = 0 on all basis pairs exactly.
pub fn skew_defect(operator: &Mat, form: &BilinearForm) -> Result<SkewReport, FormsError> {
    let dim = form.dim();
    if operator.rows() != dim || operator.cols() != dim {
        return Err(FormsError::OperatorShape {
            rows: operator.rows(),
            cols: operator.cols(),
            dim,
        });
    }
    // Op^t G + G Op = 0 entrywise.
    let defect = operator.transpose().mul(form.gram()).add(&form.gram().mul(operator));
    for i in 0..dim {
        for j in 0..dim {
            if !defect[(i, j)].is_zero() {
                return Ok(SkewReport {
                    skew: false,
                    violation: Some(SkewViolation {
                        pair: (i, j),
                        defect: defect[(i, j)].clone(),
                    }),
                });
            }
        }
    }
    Ok(SkewReport {
        skew: true,
        violation: None,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SkewViolation {
    pub pair: (usize, usize),
    #[serde(with = "crate::rational::rat_string")]
    pub defect: Rat,
}

#[derive(Debug, Clone, Serialize)]
pub struct SkewReport {
    pub skew: bool,
    pub violation: Option<SkewViolation>,
}

fn swap_symmetric(g: &mut Mat, a: usize, b: usize) {
    let n = g.rows();
    for c in 0..n {
        let (x, y) = (g[(a, c)].clone(), g[(b, c)].clone());
        g[(a, c)] = y;
        g[(b, c)] = x;
    }
    for r in 0..n {
        let (x, y) = (g[(r, a)].clone(), g[(r, b)].clone());
        g[(r, a)] = y;
        g[(r, b)] = x;
    }
}

/// Basis change e_a -> e_a + e_b applied symmetrically.
fn add_symmetric(g: &mut Mat, a: usize, b: usize) {
    let n = g.rows();
    for c in 0..n {
        let v = &g[(a, c)] + &g[(b, c)];
        g[(a, c)] = v;
    }
    for r in 0..n {
        let v = &g[(r, a)] + &g[(r, b)];
        g[(r, a)] = v;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn form(rows: &[&[i64]]) -> BilinearForm {
        BilinearForm::new(Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        ))
        .unwrap()
    }

    #[test]
    fn identity_signature() {
        let f = BilinearForm::diagonal(&[rat(1), rat(1), rat(1), rat(1)]);
        assert_eq!(f.signature().as_triple(), (4, 0, 0));
        assert!(f.signature().is_definite());
    }

    #[test]
    fn hyperbolic_plane_signature() {
        let f = form(&[&[0, 1], &[1, 0]]);
        assert_eq!(f.signature().as_triple(), (1, 1, 0));
        assert!(!f.signature().is_definite());
    }

    #[test]
    fn degenerate_block_signature() {
        let f = form(&[&[0, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
        assert_eq!(f.signature().as_triple(), (1, 1, 1));
        assert!(!f.is_nondegenerate());
    }

    #[test]
    fn mixed_diagonal_signature() {
        let f = BilinearForm::diagonal(&[rat(1), rat(-1), rat(-1)]);
        assert_eq!(f.signature().as_triple(), (1, 2, 0));
    }

    #[test]
    fn rejects_asymmetric_gram() {
        let gram = Mat::from_rows(vec![vec![rat(0), rat(1)], vec![rat(2), rat(0)]]);
        assert_eq!(BilinearForm::new(gram).unwrap_err(), FormsError::NotSymmetric(0, 1));
    }

    #[test]
    fn restriction_to_full_space_preserves_signature() {
        let f = form(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 3]]);
        let full = Subspace::full(3);
        let r = f.restrict(&full).unwrap();
        assert_eq!(r.signature(), f.signature());
    }

    #[test]
    fn restriction_of_definite_form_is_definite() {
        let f = BilinearForm::diagonal(&[rat(2), rat(1), rat(3)]);
        let s = Subspace::span(3, &[vec![rat(1), rat(1), rat(0)], vec![rat(0), rat(1), rat(-1)]]);
        assert!(f.restrict(&s).unwrap().signature().is_definite());
    }

    #[test]
    fn orthocomplement_of_zero_is_full() {
        let f = form(&[&[0, 1], &[1, 0]]);
        let c = f.orthocomplement(&Subspace::zero(2)).unwrap();
        assert_eq!(c.dim(), 2);
    }

    #[test]
    fn orthocomplement_dimension_identity() {
        // Nondegenerate form, nondegenerate subspace: dim S + dim S-perp = dim.
        let f = BilinearForm::diagonal(&[rat(1), rat(-1), rat(2), rat(1)]);
        let s = Subspace::span(4, &[vec![rat(1), rat(0), rat(0), rat(0)], vec![rat(0), rat(0), rat(1), rat(0)]]);
        let c = f.orthocomplement(&s).unwrap();
        assert_eq!(s.dim() + c.dim(), 4);
        assert!(s.intersect(&c).is_zero());
    }

    #[test]
    fn orthocomplement_of_null_line_contains_it() {
        let f = form(&[&[0, 1], &[1, 0]]);
        let null_line = Subspace::span(2, &[vec![rat(1), rat(0)]]);
        let c = f.orthocomplement(&null_line).unwrap();
        assert!(c.contains(&[rat(1), rat(0)]));
        assert_eq!(c.dim(), 1);
    }

    #[test]
    fn rotation_generator_is_skew_for_identity_gram() {
        let op = Mat::from_rows(vec![vec![rat(0), rat(-1)], vec![rat(1), rat(0)]]);
        let f = BilinearForm::diagonal(&[rat(1), rat(1)]);
        assert!(skew_defect(&op, &f).unwrap().skew);
    }

    #[test]
    fn zero_operator_is_skew() {
        let f = BilinearForm::diagonal(&[rat(1), rat(-2)]);
        assert!(skew_defect(&Mat::zeros(2, 2), &f).unwrap().skew);
    }

    #[test]
    fn diagonal_operator_is_not_skew() {
        let op = Mat::identity(2);
        let f = BilinearForm::diagonal(&[rat(1), rat(1)]);
        let report = skew_defect(&op, &f).unwrap();
        assert!(!report.skew);
        assert_eq!(report.violation.unwrap().pair, (0, 0));
    }

    #[test]
    fn congruence_preserves_signature() {
        let f = form(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -2]]);
        let t = Mat::from_rows(vec![
            vec![rat(1), rat(2), rat(0)],
            vec![rat(0), rat(1), rat(5)],
            vec![rat(0), rat(0), rat(1)],
        ]);
        assert_eq!(f.congruence(&t).signature(), f.signature());
    }
}
