use std::fmt;
use std::sync::Arc;

use crate::fields::linalg::{row_space, Matrix};
use crate::fields::{FieldDescriptor, FieldElement};
use crate::ring::Ring;

use super::Vector;

/// A subspace of `F^n` held as a reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    field: Arc<FieldDescriptor>,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            self.rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        write!(f, "Subspace{rows:?}")
    }
}

impl Subspace {
    pub fn span(field: &Arc<FieldDescriptor>, ambient: usize, vectors: &[Vector]) -> Self {
        let zero = field.zero();
        let rows = row_space(vectors, ambient, &zero);
        let pivots = rows.iter().map(|r| r.iter().position(|x| !x.is_zero()).unwrap()).collect();
        Subspace { ambient, field: field.clone(), rows, pivots }
    }

    pub fn zero(field: &Arc<FieldDescriptor>, ambient: usize) -> Self {
        Self::span(field, ambient, &[])
    }

    pub fn full(field: &Arc<FieldDescriptor>, ambient: usize) -> Self {
        let vs: Vec<Vector> = (0..ambient)
            .map(|i| {
                let mut v = vec![field.zero(); ambient];
                v[i] = field.one();
                v
            })
            .collect();
        Self::span(field, ambient, &vs)
    }

    /// Span of the given coordinate axes.
    pub fn coordinate(field: &Arc<FieldDescriptor>, ambient: usize, axes: &[usize]) -> Self {
        let vs: Vec<Vector> = axes
            .iter()
            .map(|&i| {
                let mut v = vec![field.zero(); ambient];
                v[i] = field.one();
                v
            })
            .collect();
        Self::span(field, ambient, &vs)
    }

    /// Trusted constructor for rows already in reduced echelon form.
    pub(crate) fn from_rref(field: &Arc<FieldDescriptor>, ambient: usize, rows: Vec<Vector>) -> Self {
        let pivots = rows.iter().map(|r| r.iter().position(|x| !x.is_zero()).unwrap()).collect();
        Subspace { ambient, field: field.clone(), rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> &Arc<FieldDescriptor> {
        &self.field
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates in the echelon basis, or `None` outside the subspace.
    pub fn coordinates(&self, v: &[FieldElement]) -> Option<Vector> {
        let c: Vector = self.pivots.iter().map(|&j| v[j].clone()).collect();
        let mut rebuilt = vec![self.field.zero(); self.ambient];
        for (ci, row) in c.iter().zip(&self.rows) {
            if ci.is_zero() {
                continue;
            }
            for (r, x) in rebuilt.iter_mut().zip(row) {
                *r = r.add(&ci.mul(x));
            }
        }
        (rebuilt.as_slice() == v).then_some(c)
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subset_of(&self, o: &Subspace) -> bool {
        self.rows.iter().all(|r| o.contains(r))
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        let mut vs = self.rows.clone();
        vs.extend(o.rows.iter().cloned());
        Subspace::span(&self.field, self.ambient, &vs)
    }

    pub fn as_matrix(&self) -> Matrix<FieldElement> {
        Matrix::from_rows(self.rows.clone(), &self.field.zero())
    }

    /// Every vector of the subspace over a finite field, if at most `cap` of them.
    pub fn elements(&self, cap: u64) -> Option<Vec<Vector>> {
        let q = self.field.order()?;
        let size = q.checked_pow(self.dim() as u32)?;
        if size > cap {
            return None;
        }
        let coeffs = super::enumerate_vectors(&self.field, self.dim(), cap).ok()?;
        Some(
            coeffs
                .into_iter()
                .map(|c| {
                    let mut v = vec![self.field.zero(); self.ambient];
                    for (ci, row) in c.iter().zip(&self.rows) {
                        for (r, x) in v.iter_mut().zip(row) {
                            *r = r.add(&ci.mul(x));
                        }
                    }
                    v
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_is_canonical() {
        let f = FieldDescriptor::prime(5).unwrap();
        let v = |c: &[i64]| c.iter().map(|&x| f.from_int(x)).collect::<Vector>();
        let a = Subspace::span(&f, 3, &[v(&[2, 4, 1]), v(&[0, 0, 3])]);
        let b = Subspace::span(&f, 3, &[v(&[1, 2, 0]), v(&[1, 2, 1])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&v(&[3, 1, 4])));
        assert!(!a.contains(&v(&[0, 1, 0])));
        assert_eq!(a.elements(100).unwrap().len(), 25);
    }
}
