//! Complex intuitionistic fuzzy sets on a finite superalgebra carrier.
//!
//! A [`CifSet`] is a total table from the vectors of a [`Superalgebra`] to
//! [`CifDegree`]s, stored in canonical vector-index order. The zero vector
//! always carries [`CifDegree::PINNED`]; tables violating that cannot be
//! built.
//!
//! Set-level operations that take a supremum or infimum (sum, image) do not
//! refuse incomparable families. They compute the componentwise extremum and
//! record the event in [`Diagnostics`].

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::degrees::{CifDegree, Degree};
use crate::error::CifError;
use crate::field::Scalar;
use crate::superalgebra::{GradedMap, Parity, Superalgebra, Vector};

/// Which half of a CIF degree a witness refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Membership,
    NonMembership,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Membership => "membership",
            Side::NonMembership => "non-membership",
        })
    }
}

/// A counterexample to one of the structural predicates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Amplitude and phase order disagree on `(x, y)`.
    Homogeneity { side: Side, x: Vector, y: Vector },
    /// `lambda(x+y) >= lambda(x) ^ lambda(y)` (or its dual) fails.
    Additive { side: Side, x: Vector, y: Vector },
    /// `lambda(alpha x) >= lambda(x)` (or its dual) fails.
    Scalar { side: Side, x: Vector, alpha: Scalar },
    /// The value at `x` is not the meet (join) of its graded parts.
    Graded { side: Side, x: Vector },
    /// `lambda([x,y]) >= lambda(x) v lambda(y)` (or its dual) fails.
    Bracket { side: Side, x: Vector, y: Vector },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Homogeneity { side, x, y } => {
                write!(f, "homogeneity ({side}) fails on x={x}, y={y}")
            }
            Witness::Additive { side, x, y } => {
                write!(f, "additive condition ({side}) fails on x={x}, y={y}")
            }
            Witness::Scalar { side, x, alpha } => {
                write!(f, "scalar condition ({side}) fails on x={x}, alpha={alpha}")
            }
            Witness::Graded { side, x } => {
                write!(f, "graded decomposition ({side}) fails at x={x}")
            }
            Witness::Bracket { side, x, y } => {
                write!(f, "bracket condition ({side}) fails on x={x}, y={y}")
            }
        }
    }
}

/// Outcome of a structural predicate; holds iff there is no witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Report {
    pub witness: Option<Witness>,
}

impl Report {
    pub const PASS: Report = Report { witness: None };

    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }

    fn fail(w: Witness) -> Report {
        Report { witness: Some(w) }
    }
}

/// Side notes attached to results of sup/inf based operations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagnostics {
    /// Set when the operands are not homogeneous with each other.
    pub non_homogeneous: Option<Witness>,
    /// Vectors whose supremum or infimum was not attained by a single
    /// candidate, so the componentwise reading was applied.
    pub non_attained: Vec<Vector>,
}

impl Diagnostics {
    pub fn is_clean(&self) -> bool {
        self.non_homogeneous.is_none() && self.non_attained.is_empty()
    }
}

/// Whether two algebra handles denote the same space.
pub fn same_space(a: &Arc<Superalgebra>, b: &Arc<Superalgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A CIF set: a total table of CIF degrees over an algebra's carrier.
#[derive(Clone, Debug)]
pub struct CifSet {
    algebra: Arc<Superalgebra>,
    table: Vec<CifDegree>,
}

impl PartialEq for CifSet {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.algebra, &other.algebra) && self.table == other.table
    }
}

impl Eq for CifSet {}

impl CifSet {
    /// Every vector gets `default` unless listed in `entries`; the zero
    /// vector is pinned and may only be listed with the pinned value.
    pub fn new<I>(algebra: Arc<Superalgebra>, entries: I, default: CifDegree) -> Result<Self, CifError>
    where
        I: IntoIterator<Item = (Vector, CifDegree)>,
    {
        let mut table = vec![default; algebra.size()];
        let mut seen = vec![false; algebra.size()];
        table[0] = CifDegree::PINNED;
        for (v, d) in entries {
            algebra.vector(v.coords())?;
            let i = algebra.index_of(&v);
            if seen[i] {
                return Err(CifError::DuplicateEntry);
            }
            seen[i] = true;
            if i == 0 && d != CifDegree::PINNED {
                return Err(CifError::ZeroPinViolated);
            }
            table[i] = d;
        }
        Ok(CifSet { algebra, table })
    }

    /// `(TOP; BOTTOM)` at zero and `(BOTTOM; TOP)` everywhere else.
    pub fn trivial(algebra: Arc<Superalgebra>) -> Self {
        let mut table = vec![CifDegree::ABSENT; algebra.size()];
        table[0] = CifDegree::PINNED;
        CifSet { algebra, table }
    }

    /// Builds a set from a full table in canonical index order.
    pub fn from_table(algebra: Arc<Superalgebra>, table: Vec<CifDegree>) -> Result<Self, CifError> {
        if table.len() != algebra.size() {
            return Err(CifError::SpaceMismatch);
        }
        if table[0] != CifDegree::PINNED {
            return Err(CifError::ZeroPinViolated);
        }
        Ok(CifSet { algebra, table })
    }

    /// Table built by `f(index, vector)`. `f` must yield the pinned value at
    /// zero; every operation in this crate does by construction.
    pub(crate) fn from_fn<F>(algebra: Arc<Superalgebra>, mut f: F) -> Self
    where
        F: FnMut(usize, &Vector) -> CifDegree,
    {
        let table: Vec<CifDegree> = algebra.vectors().enumerate().map(|(i, v)| f(i, &v)).collect();
        debug_assert_eq!(table[0], CifDegree::PINNED, "zero pin lost");
        CifSet { algebra, table }
    }

    pub fn algebra(&self) -> &Arc<Superalgebra> {
        &self.algebra
    }

    /// Degrees in canonical vector-index order.
    pub fn table(&self) -> &[CifDegree] {
        &self.table
    }

    #[inline]
    pub fn at(&self, index: usize) -> CifDegree {
        self.table[index]
    }

    pub fn degree(&self, x: &Vector) -> Result<CifDegree, CifError> {
        self.algebra.vector(x.coords())?;
        Ok(self.table[self.algebra.index_of(x)])
    }

    pub fn mem(&self, x: &Vector) -> Degree {
        self.table[self.algebra.index_of(x)].mem()
    }

    pub fn non(&self, x: &Vector) -> Degree {
        self.table[self.algebra.index_of(x)].non()
    }

    pub fn is_trivial(&self) -> bool {
        self.table[1..].iter().all(|&d| d == CifDegree::ABSENT)
    }

    fn require_same_space(&self, other: &CifSet) -> Result<(), CifError> {
        if same_space(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(CifError::SpaceMismatch)
        }
    }

    /// `A ⊆ B`: pointwise lower membership and higher non-membership.
    pub fn subset_of(&self, other: &CifSet) -> Result<bool, CifError> {
        self.require_same_space(other)?;
        Ok(self.table.iter().zip(&other.table).all(|(a, b)| a.below(*b)))
    }

    /// Whether amplitude order and phase order agree on all pairs of values.
    pub fn is_homogeneous(&self) -> Report {
        homogeneity(self, self)
    }

    /// The two-set variant: values of `self` against values of `other`.
    pub fn pair_homogeneous(&self, other: &CifSet) -> Result<Report, CifError> {
        self.require_same_space(other)?;
        Ok(homogeneity(self, other))
    }

    /// Membership superadditive and scalar-monotone, non-membership dually.
    /// Scalar conditions are checked before additive ones.
    pub fn is_cif_subspace(&self) -> Report {
        let alg = &self.algebra;
        let f = alg.field();
        let vs: Vec<Vector> = alg.vectors().collect();
        for (i, x) in vs.iter().enumerate() {
            let dx = self.table[i];
            for alpha in f.elements() {
                let d = self.table[alg.index_of(&alg.scale(alpha, x))];
                if !dx.mem().leq(d.mem()) {
                    return Report::fail(Witness::Scalar {
                        side: Side::Membership,
                        x: *x,
                        alpha,
                    });
                }
                if !d.non().leq(dx.non()) {
                    return Report::fail(Witness::Scalar {
                        side: Side::NonMembership,
                        x: *x,
                        alpha,
                    });
                }
            }
        }
        for (i, x) in vs.iter().enumerate() {
            for (j, y) in vs.iter().enumerate() {
                let d = self.table[alg.index_of(&alg.add(x, y))];
                let floor = self.table[i].intersect(self.table[j]);
                if !floor.mem().leq(d.mem()) {
                    return Report::fail(Witness::Additive {
                        side: Side::Membership,
                        x: *x,
                        y: *y,
                    });
                }
                if !d.non().leq(floor.non()) {
                    return Report::fail(Witness::Additive {
                        side: Side::NonMembership,
                        x: *x,
                        y: *y,
                    });
                }
            }
        }
        Report::PASS
    }

    /// `A = A_0 ⊕ A_1`: every value is the meet (join) of the values at the
    /// even and odd parts.
    pub fn is_z2_graded(&self) -> Report {
        let alg = &self.algebra;
        for (i, x) in alg.vectors().enumerate() {
            let (x0, x1) = alg.graded_split(&x);
            let parts = self.table[alg.index_of(&x0)].intersect(self.table[alg.index_of(&x1)]);
            let d = self.table[i];
            if d.mem() != parts.mem() {
                return Report::fail(Witness::Graded {
                    side: Side::Membership,
                    x,
                });
            }
            if d.non() != parts.non() {
                return Report::fail(Witness::Graded {
                    side: Side::NonMembership,
                    x,
                });
            }
        }
        Report::PASS
    }

    /// Graded CIF subspace whose membership does not drop under brackets.
    pub fn is_cif_ideal(&self) -> Report {
        let sub = self.is_cif_subspace();
        if !sub.holds() {
            return sub;
        }
        let graded = self.is_z2_graded();
        if !graded.holds() {
            return graded;
        }
        let alg = &self.algebra;
        let vs: Vec<Vector> = alg.vectors().collect();
        for (i, x) in vs.iter().enumerate() {
            for (j, y) in vs.iter().enumerate() {
                let d = self.table[alg.index_of(&alg.bracket_unchecked(x, y))];
                let ceiling = self.table[i].unite(self.table[j]);
                if !ceiling.mem().leq(d.mem()) {
                    return Report::fail(Witness::Bracket {
                        side: Side::Membership,
                        x: *x,
                        y: *y,
                    });
                }
                if !d.non().leq(ceiling.non()) {
                    return Report::fail(Witness::Bracket {
                        side: Side::NonMembership,
                        x: *x,
                        y: *y,
                    });
                }
            }
        }
        Report::PASS
    }

    /// Restriction to one parity component, extended by `(BOTTOM; TOP)`.
    pub fn component_extension(&self, parity: Parity) -> CifSet {
        let alg = self.algebra.clone();
        CifSet::from_fn(alg.clone(), |i, x| {
            if alg.in_component(x, parity) {
                self.table[i]
            } else {
                CifDegree::ABSENT
            }
        })
    }

    /// Pointwise membership meet and non-membership join.
    pub fn intersection(&self, other: &CifSet) -> Result<CifSet, CifError> {
        self.require_same_space(other)?;
        Ok(CifSet::from_fn(self.algebra.clone(), |i, _| {
            self.table[i].intersect(other.table[i])
        }))
    }

    /// The CIF sum: sup over `x = a + b` of `A(a) ∧ B(b)`, inf dually.
    pub fn sum(&self, other: &CifSet) -> Result<CifSet, CifError> {
        self.sum_with_diagnostics(other).map(|(s, _)| s)
    }

    pub fn sum_with_diagnostics(&self, other: &CifSet) -> Result<(CifSet, Diagnostics), CifError> {
        self.require_same_space(other)?;
        let alg = self.algebra.clone();
        let mut diag = Diagnostics {
            non_homogeneous: homogeneity(self, other).witness,
            ..Diagnostics::default()
        };
        let vs: Vec<Vector> = alg.vectors().collect();
        let mut candidates = Vec::with_capacity(vs.len());
        let set = CifSet::from_fn(alg.clone(), |_, x| {
            candidates.clear();
            candidates.extend(vs.iter().enumerate().map(|(ia, a)| {
                let ib = alg.index_of(&alg.sub(x, a));
                self.table[ia].intersect(other.table[ib])
            }));
            let (value, attained) = extremum(&candidates);
            if !attained {
                diag.non_attained.push(*x);
            }
            value
        });
        Ok((set, diag))
    }

    /// Whether `A ∩ B` is the trivial set, making `A + B` a direct sum.
    pub fn is_direct_sum(&self, other: &CifSet) -> Result<bool, CifError> {
        Ok(self.intersection(other)?.is_trivial())
    }

    /// `alpha A`: `A(alpha^{-1} x)` for `alpha != 0`, the trivial set for
    /// `alpha = 0`.
    pub fn scale(&self, alpha: Scalar) -> CifSet {
        let alg = self.algebra.clone();
        let f = alg.field();
        match f.inv(alpha % f.modulus()) {
            None => CifSet::trivial(alg),
            Some(inv) => CifSet::from_fn(alg.clone(), |_, x| self.table[alg.index_of(&alg.scale(inv, x))]),
        }
    }

    /// `f(A)`: sup over each fiber, `(BOTTOM; TOP)` off the image.
    pub fn image(&self, map: &GradedMap) -> Result<CifSet, CifError> {
        self.image_with_diagnostics(map).map(|(s, _)| s)
    }

    pub fn image_with_diagnostics(&self, map: &GradedMap) -> Result<(CifSet, Diagnostics), CifError> {
        if !same_space(&self.algebra, map.source()) {
            return Err(CifError::SpaceMismatch);
        }
        let target = map.target().clone();
        let mut fibers: Vec<Vec<CifDegree>> = vec![Vec::new(); target.size()];
        for (ix, iy) in map.index_table().into_iter().enumerate() {
            fibers[iy].push(self.table[ix]);
        }
        let mut diag = Diagnostics::default();
        let set = CifSet::from_fn(target, |iy, y| {
            let fiber = &fibers[iy];
            if fiber.is_empty() {
                return CifDegree::ABSENT;
            }
            let (value, attained) = extremum(fiber);
            if !attained {
                diag.non_attained.push(*y);
            }
            value
        });
        Ok((set, diag))
    }

    /// `f^{-1}(B)`: `B(f(x))`.
    pub fn preimage(&self, map: &GradedMap) -> Result<CifSet, CifError> {
        if !same_space(&self.algebra, map.target()) {
            return Err(CifError::SpaceMismatch);
        }
        let images = map.index_table();
        Ok(CifSet::from_fn(map.source().clone(), |ix, _| self.table[images[ix]]))
    }
}

/// Componentwise sup of memberships and inf of non-memberships, plus
/// whether both were attained by single candidates.
pub(crate) fn extremum(candidates: &[CifDegree]) -> (CifDegree, bool) {
    let value = candidates
        .iter()
        .copied()
        .reduce(CifDegree::unite)
        .expect("nonempty candidate family");
    let mem_attained = candidates.iter().any(|c| c.mem() == value.mem());
    let non_attained = candidates.iter().any(|c| c.non() == value.non());
    (value, mem_attained && non_attained)
}

/// `r_A(x) <= r_B(y)` iff `w_A(x) <= w_B(y)`, on both sides. Only distinct
/// values matter, so the scan runs over value sets with one witness each.
fn homogeneity(a: &CifSet, b: &CifSet) -> Report {
    let alg = &a.algebra;
    for side in [Side::Membership, Side::NonMembership] {
        let pick = |d: CifDegree| match side {
            Side::Membership => d.mem(),
            Side::NonMembership => d.non(),
        };
        let left = distinct_values(&a.table, pick);
        let right = distinct_values(&b.table, pick);
        for &(dx, ix) in &left {
            for &(dy, iy) in &right {
                if (dx.r <= dy.r) != (dx.w <= dy.w) {
                    return Report::fail(Witness::Homogeneity {
                        side,
                        x: alg.vector_at(ix),
                        y: alg.vector_at(iy),
                    });
                }
            }
        }
    }
    Report::PASS
}

fn distinct_values(table: &[CifDegree], pick: impl Fn(CifDegree) -> Degree) -> Vec<(Degree, usize)> {
    let mut out: Vec<(Degree, usize)> = Vec::new();
    for (i, &d) in table.iter().enumerate() {
        let v = pick(d);
        if !out.iter().any(|(w, _)| *w == v) {
            out.push((v, i));
        }
    }
    out
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::superalgebra::tests::h_algebra;
    use crate::superalgebra::MapKind;

    pub(crate) fn deg(rn: u64, rd: u64, wn: u64, wd: u64) -> Degree {
        Degree::from_ratios(rn, rd, wn, wd).unwrap()
    }

    pub(crate) fn cif(mem: Degree, non: Degree) -> CifDegree {
        CifDegree::new(mem, non).unwrap()
    }

    fn v(alg: &Superalgebra, c: &[u8]) -> Vector {
        alg.vector(c).unwrap()
    }

    /// Listed entries, `(BOTTOM; TOP)` elsewhere.
    fn set_on(alg: &Arc<Superalgebra>, entries: &[(&[u8], CifDegree)]) -> CifSet {
        CifSet::new(
            alg.clone(),
            entries.iter().map(|(c, d)| (v(alg, c), *d)),
            CifDegree::ABSENT,
        )
        .unwrap()
    }

    fn line_f3() -> Arc<Superalgebra> {
        let f3 = PrimeField::new(3).unwrap();
        Arc::new(Superalgebra::abelian(f3, vec![Parity::Even]).unwrap())
    }

    #[test]
    fn make_examples() {
        let h = h_algebra();
        let t = CifSet::new(h.clone(), [], CifDegree::ABSENT).unwrap();
        assert_eq!(t, CifSet::trivial(h.clone()));
        assert_eq!(t.at(0), CifDegree::PINNED);

        let d = cif(deg(2, 3, 1, 2), deg(1, 4, 1, 3));
        let a = set_on(&h, &[(&[0, 1], d)]);
        assert_eq!(a.degree(&h.basis(1)).unwrap(), d);
        assert_eq!(a.table().iter().filter(|&&x| x == d).count(), 1);

        assert!(CifDegree::new(deg(3, 4, 0, 1), deg(1, 2, 0, 1)).is_err());
        assert_eq!(
            CifSet::new(h.clone(), [(h.zero(), d)], CifDegree::ABSENT),
            Err(CifError::ZeroPinViolated)
        );
        assert!(CifSet::new(h.clone(), [(h.zero(), CifDegree::PINNED)], CifDegree::ABSENT).is_ok());
        assert_eq!(
            CifSet::new(h.clone(), [(Vector::zero(3), d)], CifDegree::ABSENT),
            Err(CifError::Algebra(crate::error::AlgebraError::DimensionMismatch {
                expected: 2,
                found: 3
            }))
        );
    }

    /// Level-cut set: `TOP` on the crisp subspace spanned by `gens`.
    fn crisp(alg: &Arc<Superalgebra>, gens: &[Vector]) -> CifSet {
        let w = alg.span(gens.iter());
        CifSet::from_fn(alg.clone(), |_, x| {
            if w.contains(x) {
                CifDegree::PINNED
            } else {
                CifDegree::ABSENT
            }
        })
    }

    #[test]
    fn subset_examples() {
        let h = h_algebra();
        let a = set_on(&h, &[(&[0, 1], cif(deg(1, 2, 1, 2), deg(1, 2, 1, 2)))]);
        let t = CifSet::trivial(h.clone());
        assert!(a.subset_of(&a).unwrap());
        assert!(t.subset_of(&a).unwrap());
        assert!(!a.subset_of(&t).unwrap());
        let other = CifSet::trivial(line_f3());
        assert_eq!(a.subset_of(&other), Err(CifError::SpaceMismatch));
    }

    #[test]
    fn homogeneity_examples() {
        let h = h_algebra();
        let diag = CifSet::new(
            h.clone(),
            [
                (h.basis(0), cif(deg(1, 3, 1, 3), deg(1, 2, 1, 2))),
                (h.basis(1), cif(deg(2, 3, 2, 3), deg(1, 4, 1, 4))),
            ],
            CifDegree::ABSENT,
        )
        .unwrap();
        assert!(diag.is_homogeneous().holds());

        // r(x)=1/2, w(x)=1/4 against r(y)=1/3, w(y)=1/3
        let bad = CifSet::new(
            h.clone(),
            [
                (h.basis(0), cif(deg(1, 2, 1, 4), deg(0, 1, 0, 1))),
                (h.basis(1), cif(deg(1, 3, 1, 3), deg(0, 1, 0, 1))),
            ],
            CifDegree::ABSENT,
        )
        .unwrap();
        let r = bad.is_homogeneous();
        assert!(matches!(r.witness, Some(Witness::Homogeneity { .. })));
        assert_eq!(bad.pair_homogeneous(&bad).unwrap(), r);
        assert_eq!(diag.pair_homogeneous(&diag).unwrap(), diag.is_homogeneous());
    }

    #[test]
    fn subspace_examples() {
        let h = h_algebra();
        assert!(CifSet::trivial(h.clone()).is_cif_subspace().holds());
        let w = crisp(&h, &[h.add(&h.basis(0), &h.basis(1))]);
        assert!(w.is_cif_subspace().holds());

        let f = h.basis(1);
        let bad = CifSet::new(
            h.clone(),
            [
                (f, cif(deg(1, 2, 1, 2), deg(1, 2, 1, 2))),
                (h.scale(2, &f), cif(deg(1, 4, 1, 4), deg(1, 2, 1, 2))),
            ],
            CifDegree::ABSENT,
        )
        .unwrap();
        assert_eq!(
            bad.is_cif_subspace().witness,
            Some(Witness::Scalar {
                side: Side::Membership,
                x: f,
                alpha: 2
            })
        );
    }

    /// λ(f)=(2/3,2/3), λ(e)=(1/3,1/3), graded extension elsewhere.
    pub(crate) fn h_non_ideal(h: &Arc<Superalgebra>) -> CifSet {
        let high = cif(deg(2, 3, 2, 3), deg(1, 3, 1, 3));
        let low = cif(deg(1, 3, 1, 3), deg(2, 3, 2, 3));
        CifSet::from_fn(h.clone(), |i, x| {
            if i == 0 {
                CifDegree::PINNED
            } else if x.get(0) == 0 {
                high
            } else {
                low
            }
        })
    }

    #[test]
    fn ideal_examples() {
        let h = h_algebra();
        assert!(CifSet::trivial(h.clone()).is_cif_ideal().holds());

        let a = h_non_ideal(&h);
        assert!(a.is_cif_subspace().holds());
        assert!(a.is_z2_graded().holds());
        let (e, f) = (h.basis(0), h.basis(1));
        let r = a.is_cif_ideal();
        assert!(!r.holds());
        // Exhaustive pair scan in index order hits ([f, f] = e) first.
        assert_eq!(
            r.witness,
            Some(Witness::Bracket {
                side: Side::Membership,
                x: f,
                y: f
            })
        );
        assert_eq!(a.mem(&h.bracket(&f, &f).unwrap()), a.mem(&e));

        // On an abelian algebra every graded subspace is an ideal.
        let f3 = PrimeField::new(3).unwrap();
        let ab = Arc::new(Superalgebra::abelian(f3, vec![Parity::Even, Parity::Odd]).unwrap());
        let on_ab = CifSet::from_table(ab, a.table().to_vec()).unwrap();
        assert!(on_ab.is_cif_ideal().holds());
    }

    #[test]
    fn graded_examples() {
        let h = h_algebra();
        assert!(CifSet::trivial(h.clone()).is_z2_graded().holds());
        let even = crisp(&h, &[h.basis(0)]);
        assert!(even.is_z2_graded().holds());

        let (e, f) = (h.basis(0), h.basis(1));
        let half = cif(deg(1, 2, 1, 2), deg(1, 2, 1, 2));
        let bad = CifSet::new(
            h.clone(),
            [
                (e, half),
                (f, half),
                (h.add(&e, &f), cif(deg(1, 4, 1, 4), deg(1, 2, 1, 2))),
            ],
            CifDegree::ABSENT,
        )
        .unwrap();
        assert!(!bad.is_z2_graded().holds());

        // constant `half` off zero is graded; lowering only e+f breaks it there
        let mut table = vec![half; h.size()];
        table[0] = CifDegree::PINNED;
        table[h.index_of(&h.add(&e, &f))] = cif(deg(1, 4, 1, 4), deg(1, 2, 1, 2));
        let bad_only_at_sum = CifSet::from_table(h.clone(), table).unwrap();
        assert_eq!(
            bad_only_at_sum.is_z2_graded().witness,
            Some(Witness::Graded {
                side: Side::Membership,
                x: h.add(&e, &f)
            })
        );
    }

    #[test]
    fn component_extension_examples() {
        let h = h_algebra();
        let t = CifSet::trivial(h.clone());
        assert_eq!(t.component_extension(Parity::Even), t);
        assert_eq!(t.component_extension(Parity::Odd), t);

        let half = cif(deg(1, 2, 1, 2), deg(1, 2, 1, 2));
        let a = set_on(&h, &[(&[0, 1], half)]);
        assert!(a.component_extension(Parity::Even).is_trivial());
        let odd = a.component_extension(Parity::Odd);
        assert_eq!(odd.degree(&h.basis(1)).unwrap(), half);
        assert_eq!(odd.mem(&h.basis(0)), Degree::BOTTOM);
    }

    /// Independent brute force for the sum: every pair `(a, b)`, grouped by
    /// `a + b`, folded with explicit max/min on each rational component.
    fn brute_sum(a: &CifSet, b: &CifSet) -> Vec<(Degree, Degree)> {
        let alg = a.algebra();
        let n = alg.size();
        let mut best: Vec<Option<(Degree, Degree)>> = vec![None; n];
        for x in alg.vectors() {
            for y in alg.vectors() {
                let s = alg.index_of(&alg.add(&x, &y));
                let (da, db) = (a.degree(&x).unwrap(), b.degree(&y).unwrap());
                let m = Degree::new(da.mem().r.min(db.mem().r), da.mem().w.min(db.mem().w));
                let nn = Degree::new(da.non().r.max(db.non().r), da.non().w.max(db.non().w));
                best[s] = Some(match best[s] {
                    None => (m, nn),
                    Some((bm, bn)) => (
                        Degree::new(bm.r.max(m.r), bm.w.max(m.w)),
                        Degree::new(bn.r.min(nn.r), bn.w.min(nn.w)),
                    ),
                });
            }
        }
        best.into_iter().map(Option::unwrap).collect()
    }

    #[test]
    fn sum_on_line_enumerates_decompositions() {
        let line = line_f3();
        let a = set_on(&line, &[(&[1], cif(deg(1, 2, 1, 2), deg(1, 2, 1, 2)))]);
        let b = set_on(&line, &[(&[2], cif(deg(1, 3, 1, 3), deg(2, 3, 2, 3)))]);
        let s = a.sum(&b).unwrap();
        // Decompositions of 1: (0,1) -> BOTTOM, (1,0) -> (1/2,1/2), (2,2) -> BOTTOM.
        // Decompositions of 2: (0,2) -> (1/3,1/3), (1,1) -> BOTTOM, (2,0) -> BOTTOM.
        assert_eq!(s.at(0), CifDegree::PINNED);
        assert_eq!(s.at(1).mem(), deg(1, 2, 1, 2));
        assert_eq!(s.at(2).mem(), deg(1, 3, 1, 3));
        assert_eq!(s.at(1).non(), deg(1, 2, 1, 2));
        assert_eq!(s.at(2).non(), deg(2, 3, 2, 3));
        let brute = brute_sum(&a, &b);
        for (i, (m, n)) in brute.into_iter().enumerate() {
            assert_eq!((s.at(i).mem(), s.at(i).non()), (m, n));
        }
    }

    #[test]
    fn sum_neutral_and_absorbing() {
        let h = h_algebra();
        let a = h_non_ideal(&h);
        let t = CifSet::trivial(h.clone());
        assert_eq!(a.sum(&t).unwrap(), a);
        let aa = a.sum(&a).unwrap();
        assert!(a.subset_of(&aa).unwrap());
        let (_, diag) = a.sum_with_diagnostics(&t).unwrap();
        assert!(diag.is_clean());
    }

    #[test]
    fn non_homogeneous_sum_is_flagged() {
        let line = line_f3();
        let a = set_on(&line, &[(&[1], cif(deg(1, 2, 1, 4), deg(0, 1, 0, 1)))]);
        let b = set_on(&line, &[(&[1], cif(deg(1, 3, 1, 3), deg(0, 1, 0, 1)))]);
        let (s, diag) = a.sum_with_diagnostics(&b).unwrap();
        assert!(diag.non_homogeneous.is_some());
        // 1 = 1 + 0 gives (1/2,1/4); 1 = 0 + 1 gives (1/3,1/3): no single best
        assert_eq!(s.at(1).mem(), deg(1, 2, 1, 3));
        assert!(diag.non_attained.contains(&line.vector(&[1]).unwrap()));
    }

    #[test]
    fn direct_sum_examples() {
        let h = h_algebra();
        let t = CifSet::trivial(h.clone());
        assert!(t.is_direct_sum(&t).unwrap());
        let a = h_non_ideal(&h);
        let (a0, a1) = (a.component_extension(Parity::Even), a.component_extension(Parity::Odd));
        assert!(a0.is_direct_sum(&a1).unwrap());
        assert!(a0.intersection(&a1).unwrap().is_trivial());
        assert!(!a.is_direct_sum(&a).unwrap());
        // graded: a0 + a1 reproduces a
        assert_eq!(a0.sum(&a1).unwrap(), a);
    }

    #[test]
    fn scalar_action_examples() {
        let h = h_algebra();
        let a = h_non_ideal(&h);
        assert_eq!(a.scale(1), a);
        assert_eq!(a.scale(0), CifSet::trivial(h.clone()));
        let f = h.basis(1);
        let two_a = a.scale(2);
        assert_eq!(two_a.degree(&f).unwrap(), a.degree(&h.scale(2, &f)).unwrap());
        for alpha in 1..3 {
            for beta in 1..3 {
                assert_eq!(a.scale(beta).scale(alpha), a.scale(h.field().mul(alpha, beta)));
            }
        }
    }

    #[test]
    fn intersection_examples() {
        let h = h_algebra();
        let a = h_non_ideal(&h);
        let t = CifSet::trivial(h.clone());
        assert_eq!(a.intersection(&a).unwrap(), a);
        assert_eq!(a.intersection(&t).unwrap(), t);
    }

    #[test]
    fn image_and_preimage_examples() {
        let h = h_algebra();
        let a = h_non_ideal(&h);
        let id = GradedMap::identity(h.clone(), MapKind::Plain);
        assert_eq!(a.image(&id).unwrap(), a);
        assert_eq!(a.preimage(&id).unwrap(), a);

        let zero = GradedMap::scalar(h.clone(), 0, MapKind::Plain);
        let pre = a.preimage(&zero).unwrap();
        assert!(pre.table().iter().all(|&d| d == CifDegree::PINNED));
        let img = a.image(&zero).unwrap();
        assert!(img.is_trivial());

        // phi = diag(2, 1): single entry at f stays at phi(f) = f.
        let phi = GradedMap::new(
            h.clone(),
            h.clone(),
            vec![h.scale(2, &h.basis(0)), h.basis(1)],
            MapKind::AntiHomomorphism,
        )
        .unwrap();
        let d = cif(deg(2, 3, 1, 2), deg(1, 4, 1, 3));
        let single = set_on(&h, &[(&[0, 1], d)]);
        let img = single.image(&phi).unwrap();
        assert_eq!(img.degree(&h.basis(1)).unwrap(), d);
        assert_eq!(img.table().iter().filter(|&&x| x == d).count(), 1);
    }

    #[test]
    fn image_of_non_surjective_map_is_absent_off_range() {
        let h = h_algebra();
        let a = h_non_ideal(&h);
        let proj = GradedMap::new(h.clone(), h.clone(), vec![h.basis(0), h.zero()], MapKind::Plain).unwrap();
        let img = a.image(&proj).unwrap();
        assert_eq!(img.degree(&h.basis(1)).unwrap(), CifDegree::ABSENT);
        // fiber of e is {e + c f}: the best of those values
        assert_eq!(img.mem(&h.basis(0)), deg(1, 3, 1, 3));
    }
}
