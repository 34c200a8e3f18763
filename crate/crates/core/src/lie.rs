//! Finite-dimensional real Lie algebras by exact structure constants.
//!
//! An algebra is a basis {b_0, ..., b_{dim-1}} plus a sparse table of
//! brackets [b_i, b_j] = sum_k c^k_{ij} b_k. The table may store any (i, j)
//! keys; a missing mirror (j, i) is completed antisymmetrically, while a
//! stored mirror is kept verbatim so `validate` can catch genuine
//! antisymmetry violations in hand-entered tables.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::forms::BilinearForm;
use crate::linalg::{dot, vec_add, vec_is_zero, vec_scale, zero_vec, Mat};
use crate::rational::Rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LieError {
    #[error("vector has length {got}, algebra dimension is {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("expected {expected} basis names, got {got}")]
    BasisNameCount { expected: usize, got: usize },
    #[error("duplicate basis name {0:?}")]
    DuplicateBasisName(String),
    #[error("duplicate bracket entry for pair ({0}, {1})")]
    DuplicateBracket(usize, usize),
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("subspace ambient dimension {got} does not match algebra dimension {expected}")]
    AmbientMismatch { expected: usize, got: usize },
    #[error("subspace is not closed under the bracket: [b_{0}, b_{1}] leaves the span")]
    NotClosed(usize, usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SemidirectError {
    #[error("expected one action matrix per acting basis element ({expected}), got {got}")]
    ActionCount { expected: usize, got: usize },
    #[error("action matrix {index} is {rows}x{cols}, expected {dim}x{dim}")]
    ActionShape {
        index: usize,
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error(
        "action of acting basis element {acting} violates the derivation identity \
         D[x,y] = [Dx,y] + [x,Dy] at ideal basis pair ({i}, {j})"
    )]
    NotDerivation { acting: usize, i: usize, j: usize },
    #[error(
        "action violates the homomorphism identity rho([a,b]) = [rho(a), rho(b)] \
         at acting basis pair ({a}, {b})"
    )]
    NotHomomorphism { a: usize, b: usize },
    #[error(transparent)]
    Algebra(#[from] LieError),
}

/// Linear subspace of R^ambient, stored as a reduced-echelon row basis so
/// that equal subspaces have identical representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[Vec<Rat>]) -> Self {
        for v in vectors {
            assert_eq!(v.len(), ambient, "span vector has wrong length");
        }
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        Self {
            ambient,
            basis: Mat::from_rows(vectors.to_vec()).row_space(),
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Mat::empty(ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Mat::identity(ambient),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[Rat]> {
        self.basis.iter_rows()
    }

    /// Pivot columns of the reduced basis.
    fn pivots(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dim());
        for row in self.basis.iter_rows() {
            let p = row.iter().position(|x| !x.is_zero()).expect("no zero rows");
            out.push(p);
        }
        out
    }

    /// Coordinates of `v` over the reduced basis, or None when v is outside.
    pub fn coords(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(v.len(), self.ambient, "coords vector has wrong length");
        let pivots = self.pivots();
        let coeffs: Vec<Rat> = pivots.iter().map(|&p| v[p].clone()).collect();
        let mut recon = zero_vec(self.ambient);
        for (c, row) in coeffs.iter().zip(self.basis.iter_rows()) {
            if !c.is_zero() {
                recon = vec_add(&recon, &vec_scale(row, c));
            }
        }
        if recon == v { Some(coeffs) } else { None }
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        Subspace {
            ambient: self.ambient,
            basis: self.basis.vstack(&other.basis).row_space(),
        }
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        // rowspace(B) = { x : K x = 0 } for K a kernel basis of B, so the
        // intersection is the joint kernel.
        let ka = self.basis.kernel();
        let kb = other.basis.kernel();
        Subspace {
            ambient: self.ambient,
            basis: ka.vstack(&kb).kernel(),
        }
    }
}

/// Outcome of the antisymmetry + Jacobi scan. Failures are data, not errors:
/// an invalid table is representable and `validate` is the gate.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub antisymmetry_ok: bool,
    pub jacobi_ok: bool,
    /// First basis pair where c_{ij} != -c_{ji} (or a nonzero diagonal).
    pub antisymmetry_violation: Option<(usize, usize)>,
    /// First basis triple with a nonzero Jacobi cyclic sum.
    pub jacobi_violation: Option<(usize, usize, usize)>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.antisymmetry_ok && self.jacobi_ok
    }
}

/// Result of a nilpotency-step computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Nilpotency {
    /// Smallest s with g^s = 0: a 2-step algebra yields Step(2).
    Step(usize),
    /// Lower central series stabilizes at a nonzero subspace.
    NotNilpotent,
}

#[derive(Debug, Clone)]
pub struct LieAlgebra {
    dim: usize,
    basis_names: Vec<String>,
    table: BTreeMap<(usize, usize), Vec<(usize, Rat)>>,
}

impl LieAlgebra {
    /// Builds an algebra from sparse bracket entries. Entries may be given
    /// for any index pair; listing only i < j is the canonical form.
    pub fn new(
        dim: usize,
        basis_names: Vec<String>,
        entries: Vec<(usize, usize, Vec<(usize, Rat)>)>,
    ) -> Result<Self, LieError> {
        if basis_names.len() != dim {
            return Err(LieError::BasisNameCount {
                expected: dim,
                got: basis_names.len(),
            });
        }
        for (pos, name) in basis_names.iter().enumerate() {
            if basis_names[..pos].contains(name) {
                return Err(LieError::DuplicateBasisName(name.clone()));
            }
        }
        let mut table = BTreeMap::new();
        for (i, j, terms) in entries {
            for &index in [i, j].iter().chain(terms.iter().map(|(k, _)| k)) {
                if index >= dim {
                    return Err(LieError::IndexOutOfRange { index, dim });
                }
            }
            let mut terms: Vec<(usize, Rat)> =
                terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            terms.sort_by_key(|(k, _)| *k);
            if table.insert((i, j), terms).is_some() {
                return Err(LieError::DuplicateBracket(i, j));
            }
        }
        Ok(Self {
            dim,
            basis_names,
            table,
        })
    }

    pub fn abelian(dim: usize, basis_names: Vec<String>) -> Result<Self, LieError> {
        Self::new(dim, basis_names, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn name_index(&self, name: &str) -> Option<usize> {
        self.basis_names.iter().position(|n| n == name)
    }

    /// Stored entries with i < j and the implicit antisymmetric completion
    /// applied, suitable for canonical serialization.
    pub fn canonical_entries(&self) -> Vec<(usize, usize, Vec<(usize, Rat)>)> {
        let mut out: BTreeMap<(usize, usize), Vec<(usize, Rat)>> = BTreeMap::new();
        for (&(i, j), terms) in &self.table {
            if terms.is_empty() || i == j {
                continue;
            }
            if i < j {
                out.entry((i, j)).or_insert_with(|| terms.clone());
            } else {
                out.entry((j, i))
                    .or_insert_with(|| terms.iter().map(|(k, c)| (*k, -c)).collect());
            }
        }
        out.into_iter().map(|((i, j), t)| (i, j, t)).collect()
    }

    /// [b_i, b_j] as a sparse term list, with antisymmetric completion for
    /// pairs whose mirror is the only stored entry.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<(usize, Rat)> {
        if let Some(terms) = self.table.get(&(i, j)) {
            return terms.clone();
        }
        if let Some(terms) = self.table.get(&(j, i)) {
            return terms.iter().map(|(k, c)| (*k, -c)).collect();
        }
        Vec::new()
    }

    /// [b_i, b_j] as a dense coordinate vector.
    pub fn basis_bracket_vec(&self, i: usize, j: usize) -> Vec<Rat> {
        let mut v = zero_vec(self.dim);
        for (k, c) in self.basis_bracket(i, j) {
            v[k] += c;
        }
        v
    }

    /// Bilinear bracket of coordinate vectors.
    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Result<Vec<Rat>, LieError> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(LieError::DimensionMismatch {
                    expected: self.dim,
                    got: v.len(),
                });
            }
        }
        let mut out = zero_vec(self.dim);
        for (&(i, j), terms) in &self.table {
            if terms.is_empty() {
                continue;
            }
            let mut coeff = &x[i] * &y[j];
            // Completion: only add the mirrored contribution when the mirror
            // pair is not stored itself (and the pair is off-diagonal).
            if i != j && !self.table.contains_key(&(j, i)) {
                coeff -= &x[j] * &y[i];
            }
            if coeff.is_zero() {
                continue;
            }
            for (k, c) in terms {
                out[*k] += c * &coeff;
            }
        }
        Ok(out)
    }

    /// Matrix of ad(x): column j holds [x, b_j].
    pub fn ad_matrix(&self, x: &[Rat]) -> Result<Mat, LieError> {
        let mut m = Mat::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let mut unit = zero_vec(self.dim);
            unit[j] = Rat::from_integer(1.into());
            let col = self.bracket(x, &unit)?;
            for (i, value) in col.into_iter().enumerate() {
                m[(i, j)] = value;
            }
        }
        Ok(m)
    }

    /// Exact antisymmetry + Jacobi scan over all basis pairs and triples.
    pub fn validate(&self) -> ValidationReport {
        let mut antisymmetry_violation = None;
        'anti: for (&(i, j), terms) in &self.table {
            if i == j {
                if !terms.is_empty() {
                    antisymmetry_violation = Some((i, j));
                    break 'anti;
                }
                continue;
            }
            if let Some(mirror) = self.table.get(&(j, i)) {
                let mut sum = zero_vec(self.dim);
                for (k, c) in terms.iter().chain(mirror.iter()) {
                    sum[*k] += c;
                }
                if !vec_is_zero(&sum) {
                    antisymmetry_violation = Some((i.min(j), i.max(j)));
                    break 'anti;
                }
            }
        }

        let mut jacobi_violation = None;
        'jac: for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                for k in (j + 1)..self.dim {
                    if !vec_is_zero(&self.jacobi_sum(i, j, k)) {
                        jacobi_violation = Some((i, j, k));
                        break 'jac;
                    }
                }
            }
        }

        ValidationReport {
            antisymmetry_ok: antisymmetry_violation.is_none(),
            jacobi_ok: jacobi_violation.is_none(),
            antisymmetry_violation,
            jacobi_violation,
        }
    }

    /// [[b_i,b_j],b_k] + [[b_j,b_k],b_i] + [[b_k,b_i],b_j]
    fn jacobi_sum(&self, i: usize, j: usize, k: usize) -> Vec<Rat> {
        let mut acc = zero_vec(self.dim);
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            let inner = self.basis_bracket_vec(a, b);
            let mut unit = zero_vec(self.dim);
            unit[c] = Rat::from_integer(1.into());
            acc = vec_add(&acc, &self.bracket(&inner, &unit).expect("dims fixed"));
        }
        acc
    }

    pub fn full_space(&self) -> Subspace {
        Subspace::full(self.dim)
    }

    /// span{ [u, v] : u in basis(U), v in basis(V) } in canonical form.
    pub fn product_subspace(&self, u: &Subspace, v: &Subspace) -> Result<Subspace, LieError> {
        for s in [u, v] {
            if s.ambient_dim() != self.dim {
                return Err(LieError::AmbientMismatch {
                    expected: self.dim,
                    got: s.ambient_dim(),
                });
            }
        }
        let mut gens = Vec::new();
        for bu in u.basis_vectors() {
            for bv in v.basis_vectors() {
                let w = self.bracket(bu, bv)?;
                if !vec_is_zero(&w) {
                    gens.push(w);
                }
            }
        }
        Ok(Subspace::span(self.dim, &gens))
    }

    /// Descending series g^0 = g, g^{s+1} = [g, g^s], listed until the first
    /// repetition (a stabilized term, zero or not, appears once).
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let full = self.full_space();
        let mut series = vec![full.clone()];
        loop {
            let last = series.last().expect("nonempty");
            let next = self
                .product_subspace(&full, last)
                .expect("ambient dims match");
            if &next == last {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn nilpotency_step(&self) -> Nilpotency {
        let series = self.lower_central_series();
        let last = series.last().expect("nonempty");
        if last.is_zero() {
            Nilpotency::Step(series.len() - 1)
        } else {
            Nilpotency::NotNilpotent
        }
    }

    /// B(x, y) = trace(ad x . ad y) on the basis, computed exactly.
    pub fn killing_form(&self) -> BilinearForm {
        let ads: Vec<Mat> = (0..self.dim)
            .map(|i| {
                let mut m = Mat::zeros(self.dim, self.dim);
                for j in 0..self.dim {
                    for (k, c) in self.basis_bracket(i, j) {
                        m[(k, j)] = c;
                    }
                }
                m
            })
            .collect();
        let mut gram = Mat::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for j in i..self.dim {
                let mut tr = Rat::zero();
                for a in 0..self.dim {
                    for b in 0..self.dim {
                        let (x, y) = (&ads[i][(a, b)], &ads[j][(b, a)]);
                        if !x.is_zero() && !y.is_zero() {
                            tr += x * y;
                        }
                    }
                }
                gram[(i, j)] = tr.clone();
                gram[(j, i)] = tr;
            }
        }
        BilinearForm::new(gram).expect("killing gram is symmetric by construction")
    }

    /// Induced algebra on a bracket-closed subspace, with structure constants
    /// over the subspace's reduced basis.
    pub fn restrict_to_subalgebra(&self, s: &Subspace) -> Result<LieAlgebra, LieError> {
        if s.ambient_dim() != self.dim {
            return Err(LieError::AmbientMismatch {
                expected: self.dim,
                got: s.ambient_dim(),
            });
        }
        let basis: Vec<Vec<Rat>> = s.basis_vectors().map(<[Rat]>::to_vec).collect();
        let names = (0..basis.len()).map(|i| format!("s{i}")).collect();
        let mut entries = Vec::new();
        for i in 0..basis.len() {
            for j in (i + 1)..basis.len() {
                let w = self.bracket(&basis[i], &basis[j])?;
                let coords = s.coords(&w).ok_or(LieError::NotClosed(i, j))?;
                let terms: Vec<(usize, Rat)> = coords
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                if !terms.is_empty() {
                    entries.push((i, j, terms));
                }
            }
        }
        LieAlgebra::new(basis.len(), names, entries)
    }

    /// Is `n` an ideal: [g, n] subseteq n.
    pub fn is_ideal(&self, n: &Subspace) -> Result<bool, LieError> {
        let prod = self.product_subspace(&self.full_space(), n)?;
        Ok(n.contains_subspace(&prod))
    }
}

/// Semidirect sum ideal ⋊ acting, where `action[t]` is the matrix by which
/// the t-th acting basis element acts on the ideal. The derivation and
/// homomorphism identities are checked exactly; the result then satisfies
/// the Jacobi identity by construction.
pub fn semidirect_sum(
    ideal: &LieAlgebra,
    acting: &LieAlgebra,
    action: &[Mat],
) -> Result<LieAlgebra, SemidirectError> {
    let di = ideal.dim();
    let da = acting.dim();
    if action.len() != da {
        return Err(SemidirectError::ActionCount {
            expected: da,
            got: action.len(),
        });
    }
    for (index, m) in action.iter().enumerate() {
        if m.rows() != di || m.cols() != di {
            return Err(SemidirectError::ActionShape {
                index,
                rows: m.rows(),
                cols: m.cols(),
                dim: di,
            });
        }
    }

    // Each action matrix must be a derivation of the ideal bracket.
    for (t, d) in action.iter().enumerate() {
        for i in 0..di {
            for j in (i + 1)..di {
                let lhs = d.apply(&ideal.basis_bracket_vec(i, j));
                let di_col: Vec<Rat> = (0..di).map(|r| d[(r, i)].clone()).collect();
                let dj_col: Vec<Rat> = (0..di).map(|r| d[(r, j)].clone()).collect();
                let mut unit_i = zero_vec(di);
                unit_i[i] = Rat::from_integer(1.into());
                let mut unit_j = zero_vec(di);
                unit_j[j] = Rat::from_integer(1.into());
                let rhs = vec_add(
                    &ideal.bracket(&di_col, &unit_j).expect("dims fixed"),
                    &ideal.bracket(&unit_i, &dj_col).expect("dims fixed"),
                );
                if lhs != rhs {
                    return Err(SemidirectError::NotDerivation { acting: t, i, j });
                }
            }
        }
    }

    // The assignment t -> action[t] must be a Lie algebra homomorphism.
    for a in 0..da {
        for b in (a + 1)..da {
            let mut rho_bracket = Mat::zeros(di, di);
            for (k, c) in acting.basis_bracket(a, b) {
                rho_bracket = rho_bracket.add(&action[k].scale(&c));
            }
            let commutator = action[a].mul(&action[b]).add(&action[b].mul(&action[a]).neg());
            if rho_bracket != commutator {
                return Err(SemidirectError::NotHomomorphism { a, b });
            }
        }
    }

    let dim = di + da;
    let mut names = ideal.basis_names().to_vec();
    names.extend(acting.basis_names().iter().cloned());
    let mut entries = Vec::new();
    for (i, j, terms) in ideal.canonical_entries() {
        entries.push((i, j, terms));
    }
    for (a, b, terms) in acting.canonical_entries() {
        entries.push((
            di + a,
            di + b,
            terms.into_iter().map(|(k, c)| (di + k, c)).collect(),
        ));
    }
    // [(x, 0), (0, a)] = -action[a] x.
    for (t, d) in action.iter().enumerate() {
        for i in 0..di {
            let terms: Vec<(usize, Rat)> = (0..di)
                .map(|r| (r, -d[(r, i)].clone()))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            if !terms.is_empty() {
                entries.push((i, di + t, terms));
            }
        }
    }
    Ok(LieAlgebra::new(dim, names, entries)?)
}

/// Checks the associativity identity <[x,y],z> = <x,[y,z]> over all basis
/// triples; an exact pass means the metric is bi-invariant infinitesimally.
pub fn invariance_defect(alg: &LieAlgebra, form: &BilinearForm) -> InvarianceReport {
    assert_eq!(
        form.dim(),
        alg.dim(),
        "bi-invariance check needs a form on the whole algebra"
    );
    let dim = alg.dim();
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let left = dot(&alg.basis_bracket_vec(i, j), form.gram_row(k));
                let right = dot(&alg.basis_bracket_vec(j, k), form.gram_row(i));
                if left != right {
                    return InvarianceReport {
                        invariant: false,
                        violation: Some(InvarianceViolation {
                            triple: (i, j, k),
                            defect: left - right,
                        }),
                    };
                }
            }
        }
    }
    InvarianceReport {
        invariant: true,
        violation: None,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InvarianceViolation {
    pub triple: (usize, usize, usize),
    #[serde(with = "crate::rational::rat_string")]
    pub defect: Rat,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvarianceReport {
    pub invariant: bool,
    pub violation: Option<InvarianceViolation>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn term(k: usize, c: i64) -> (usize, Rat) {
        (k, rat(c))
    }

    /// Heisenberg algebra in 3 dimensions: [x, y] = z.
    fn heisenberg3() -> LieAlgebra {
        LieAlgebra::new(
            3,
            vec!["x".into(), "y".into(), "z".into()],
            vec![(0, 1, vec![term(2, 1)])],
        )
        .unwrap()
    }

    /// sl(2): [h, e] = 2e, [h, f] = -2f, [e, f] = h. Basis order e, f, h.
    fn sl2() -> LieAlgebra {
        LieAlgebra::new(
            3,
            vec!["e".into(), "f".into(), "h".into()],
            vec![
                (0, 1, vec![term(2, 1)]),
                (2, 0, vec![term(0, 2)]),
                (2, 1, vec![term(1, -2)]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn bracket_is_antisymmetric_and_bilinear() {
        let alg = sl2();
        let x = vec![rat(1), rat(2), rat(-1)];
        let y = vec![rat(0), rat(3), rat(5)];
        let xy = alg.bracket(&x, &y).unwrap();
        let yx = alg.bracket(&y, &x).unwrap();
        assert_eq!(xy, vec_scale(&yx, &rat(-1)));
        assert!(vec_is_zero(&alg.bracket(&x, &x).unwrap()));
    }

    #[test]
    fn bracket_rejects_wrong_length() {
        let alg = heisenberg3();
        let err = alg.bracket(&[rat(1)], &[rat(1), rat(0), rat(0)]).unwrap_err();
        assert_eq!(err, LieError::DimensionMismatch { expected: 3, got: 1 });
    }

    #[test]
    fn validate_passes_heisenberg_and_sl2() {
        assert!(heisenberg3().validate().passed());
        assert!(sl2().validate().passed());
    }

    #[test]
    fn validate_flags_stored_antisymmetry_violation() {
        // c^z_{xy} = 1 and c^z_{yx} = 1: both orders stored, not negatives.
        let alg = LieAlgebra::new(
            3,
            vec!["x".into(), "y".into(), "z".into()],
            vec![(0, 1, vec![term(2, 1)]), (1, 0, vec![term(2, 1)])],
        )
        .unwrap();
        let report = alg.validate();
        assert!(!report.antisymmetry_ok);
        assert_eq!(report.antisymmetry_violation, Some((0, 1)));
    }

    #[test]
    fn validate_flags_jacobi_violation() {
        // [x,y] = z and [x,z] = x: the cyclic sum on (x,y,z) is [[z,x],y] = -z.
        let alg = LieAlgebra::new(
            3,
            vec!["x".into(), "y".into(), "z".into()],
            vec![(0, 1, vec![term(2, 1)]), (0, 2, vec![term(0, 1)])],
        )
        .unwrap();
        let report = alg.validate();
        assert!(report.antisymmetry_ok);
        assert!(!report.jacobi_ok);
        assert_eq!(report.jacobi_violation, Some((0, 1, 2)));
    }

    #[test]
    fn heisenberg_series_and_step() {
        let alg = heisenberg3();
        let dims: Vec<usize> = alg.lower_central_series().iter().map(Subspace::dim).collect();
        assert_eq!(dims, vec![3, 1, 0]);
        assert_eq!(alg.nilpotency_step(), Nilpotency::Step(2));
    }

    #[test]
    fn abelian_series_and_step() {
        let alg = LieAlgebra::abelian(4, (0..4).map(|i| format!("a{i}")).collect()).unwrap();
        let dims: Vec<usize> = alg.lower_central_series().iter().map(Subspace::dim).collect();
        assert_eq!(dims, vec![4, 0]);
        assert_eq!(alg.nilpotency_step(), Nilpotency::Step(1));
    }

    #[test]
    fn sl2_is_not_nilpotent() {
        let alg = sl2();
        assert_eq!(alg.nilpotency_step(), Nilpotency::NotNilpotent);
        assert_eq!(alg.lower_central_series().len(), 1);
    }

    #[test]
    fn derived_subspace_of_heisenberg_is_center() {
        let alg = heisenberg3();
        let derived = alg
            .product_subspace(&alg.full_space(), &alg.full_space())
            .unwrap();
        assert_eq!(derived.dim(), 1);
        assert!(derived.contains(&[rat(0), rat(0), rat(1)]));
    }

    #[test]
    fn series_terms_are_descending() {
        for alg in [heisenberg3(), sl2()] {
            let series = alg.lower_central_series();
            for pair in series.windows(2) {
                assert!(pair[0].contains_subspace(&pair[1]));
            }
        }
    }

    #[test]
    fn killing_form_of_abelian_is_zero() {
        let alg = LieAlgebra::abelian(3, (0..3).map(|i| format!("a{i}")).collect()).unwrap();
        assert!(alg.killing_form().gram().is_zero());
    }

    #[test]
    fn killing_form_of_nilpotent_is_zero() {
        assert!(heisenberg3().killing_form().gram().is_zero());
    }

    #[test]
    fn killing_form_of_sl2_has_signature_2_1() {
        let b = sl2().killing_form();
        assert!(b.gram().is_symmetric());
        let sig = b.signature();
        assert_eq!((sig.n_plus, sig.n_minus, sig.n_zero), (2, 1, 0));
    }

    #[test]
    fn killing_form_is_invariant() {
        let alg = sl2();
        let report = invariance_defect(&alg, &alg.killing_form());
        assert!(report.invariant);
    }

    #[test]
    fn semidirect_with_zero_action_is_direct_sum() {
        let ideal = LieAlgebra::abelian(2, vec!["a".into(), "b".into()]).unwrap();
        let acting = heisenberg3();
        let action = vec![Mat::zeros(2, 2); 3];
        let sum = semidirect_sum(&ideal, &acting, &action).unwrap();
        assert_eq!(sum.dim(), 5);
        assert!(sum.validate().passed());
        // Cross brackets vanish.
        for i in 0..2 {
            for j in 2..5 {
                assert!(vec_is_zero(&sum.basis_bracket_vec(i, j)));
            }
        }
    }

    #[test]
    fn semidirect_rejects_non_derivation() {
        let ideal = heisenberg3();
        let acting = LieAlgebra::abelian(1, vec!["t".into()]).unwrap();
        // Scaling only x is not a derivation of [x, y] = z.
        let mut d = Mat::zeros(3, 3);
        d[(0, 0)] = rat(1);
        let err = semidirect_sum(&ideal, &acting, &[d]).unwrap_err();
        assert_eq!(err, SemidirectError::NotDerivation { acting: 0, i: 0, j: 1 });
    }

    #[test]
    fn semidirect_rejects_non_homomorphism() {
        let ideal = LieAlgebra::abelian(2, vec!["a".into(), "b".into()]).unwrap();
        // Abelian acting algebra, but the action matrices do not commute.
        let acting = LieAlgebra::abelian(2, vec!["s".into(), "t".into()]).unwrap();
        let mut d0 = Mat::zeros(2, 2);
        d0[(0, 1)] = rat(1);
        let mut d1 = Mat::zeros(2, 2);
        d1[(1, 0)] = rat(1);
        let err = semidirect_sum(&ideal, &acting, &[d0, d1]).unwrap_err();
        assert_eq!(err, SemidirectError::NotHomomorphism { a: 0, b: 1 });
    }

    #[test]
    fn grading_derivation_acts_on_heisenberg() {
        // x, y weight 1 and z weight 2 defines a derivation of [x,y] = z.
        let ideal = heisenberg3();
        let acting = LieAlgebra::abelian(1, vec!["t".into()]).unwrap();
        let mut d = Mat::zeros(3, 3);
        d[(0, 0)] = rat(1);
        d[(1, 1)] = rat(1);
        d[(2, 2)] = rat(2);
        let sum = semidirect_sum(&ideal, &acting, &[d]).unwrap();
        assert_eq!(sum.dim(), 4);
        assert!(sum.validate().passed());
        // [x, t] = -x.
        assert_eq!(
            sum.basis_bracket_vec(0, 3),
            vec![rat(-1), rat(0), rat(0), rat(0)]
        );
    }

    #[test]
    fn subspace_canonical_form_makes_equality_decidable() {
        let a = Subspace::span(3, &[vec![rat(1), rat(1), rat(0)], vec![rat(0), rat(2), rat(0)]]);
        let b = Subspace::span(3, &[vec![rat(2), rat(0), rat(0)], vec![rat(3), rat(5), rat(0)]]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(!a.contains(&[rat(0), rat(0), rat(1)]));
    }

    #[test]
    fn subspace_intersection_and_sum() {
        let a = Subspace::span(3, &[vec![rat(1), rat(0), rat(0)], vec![rat(0), rat(1), rat(0)]]);
        let b = Subspace::span(3, &[vec![rat(0), rat(1), rat(0)], vec![rat(0), rat(0), rat(1)]]);
        let meet = a.intersect(&b);
        assert_eq!(meet.dim(), 1);
        assert!(meet.contains(&[rat(0), rat(1), rat(0)]));
        assert_eq!(a.sum(&b).dim(), 3);
    }

    #[test]
    fn restrict_to_subalgebra_keeps_structure() {
        let alg = heisenberg3();
        let derived_plus_x = Subspace::span(
            3,
            &[vec![rat(1), rat(0), rat(0)], vec![rat(0), rat(0), rat(1)]],
        );
        let sub = alg.restrict_to_subalgebra(&derived_plus_x).unwrap();
        assert_eq!(sub.dim(), 2);
        assert_eq!(sub.nilpotency_step(), Nilpotency::Step(1));
        // A subspace that is not closed is rejected.
        let open = Subspace::span(3, &[vec![rat(1), rat(0), rat(0)], vec![rat(0), rat(1), rat(0)]]);
        assert!(alg.restrict_to_subalgebra(&open).is_err());
    }
}
