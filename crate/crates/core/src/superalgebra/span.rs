use alloc::vec::Vec;

use super::Vector;
use crate::field::PrimeField;

/// A subspace of `F_p^n` held as a reduced row-echelon basis.
///
/// Rows are nonzero, sorted by strictly increasing pivot column, each pivot
/// is 1 and every other row is zero in that pivot column.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceBasis {
    field: PrimeField,
    dim: usize,
    rows: Vec<Vector>,
}

impl SubspaceBasis {
    /// The zero subspace.
    pub fn new(field: PrimeField, dim: usize) -> Self {
        SubspaceBasis {
            field,
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    fn pivot(v: &Vector) -> Option<usize> {
        v.coords().iter().position(|&c| c != 0)
    }

    /// `v` minus its projection onto the pivot columns.
    pub fn reduce(&self, v: &Vector) -> Vector {
        let f = self.field;
        let mut out = *v;
        for row in &self.rows {
            let p = Self::pivot(row).expect("basis rows are nonzero");
            let c = out.get(p);
            if c != 0 {
                for (o, &r) in out.coords_mut().iter_mut().zip(row.coords()) {
                    *o = f.sub(*o, f.mul(c, r));
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span. Returns whether the rank grew.
    pub fn insert(&mut self, v: &Vector) -> bool {
        debug_assert_eq!(v.dim(), self.dim);
        let f = self.field;
        let mut r = self.reduce(v);
        let Some(p) = Self::pivot(&r) else {
            return false;
        };
        let inv = f.inv(r.get(p)).expect("pivot entry is nonzero");
        for c in r.coords_mut() {
            *c = f.mul(inv, *c);
        }
        for row in &mut self.rows {
            let c = row.get(p);
            if c != 0 {
                for (o, &x) in row.coords_mut().iter_mut().zip(r.coords()) {
                    *o = f.sub(*o, f.mul(c, x));
                }
            }
        }
        let at = self
            .rows
            .iter()
            .position(|row| Self::pivot(row) > Some(p))
            .unwrap_or(self.rows.len());
        self.rows.insert(at, r);
        true
    }

    /// Every vector of the subspace, `p^rank` of them.
    pub fn elements(&self) -> Vec<Vector> {
        let f = self.field;
        let mut out = Vec::with_capacity(usize::from(f.modulus()).pow(self.rank() as u32));
        out.push(Vector::zero(self.dim));
        for row in &self.rows {
            let existing = out.len();
            for a in f.nonzero_elements() {
                for k in 0..existing {
                    let mut v = out[k];
                    for (o, &x) in v.coords_mut().iter_mut().zip(row.coords()) {
                        *o = f.add(*o, f.mul(a, x));
                    }
                    out.push(v);
                }
            }
        }
        out
    }

    /// Whether `self` is contained in `other`.
    pub fn is_subspace_of(&self, other: &SubspaceBasis) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }
}
