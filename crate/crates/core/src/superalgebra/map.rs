use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use super::{Superalgebra, Vector};
use crate::error::AlgebraError;
use crate::field::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapKind {
    Plain,
    /// Grading-preserving with `phi([x,y]) = -[phi(x), phi(y)]`.
    AntiHomomorphism,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapViolation {
    /// The image of basis vector `basis` leaves its parity component.
    Grading { basis: usize },
    /// `phi([b_i, b_j]) != -[phi(b_i), phi(b_j)]`.
    AntiHomomorphism { i: usize, j: usize },
}

impl fmt::Display for MapViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MapViolation::Grading { basis } => {
                write!(f, "grading: image of b{basis} leaves its parity component")
            }
            MapViolation::AntiHomomorphism { i, j } => {
                write!(f, "anti-homomorphism condition fails on (b{i}, b{j})")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapReport {
    pub violations: Vec<MapViolation>,
    pub surjective: bool,
}

impl MapReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A linear map between two algebras over the same field, given by the
/// target coordinates of each source basis image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    source: Arc<Superalgebra>,
    target: Arc<Superalgebra>,
    images: Vec<Vector>,
    kind: MapKind,
}

impl GradedMap {
    pub fn new(
        source: Arc<Superalgebra>,
        target: Arc<Superalgebra>,
        images: Vec<Vector>,
        kind: MapKind,
    ) -> Result<Self, AlgebraError> {
        if source.field() != target.field() {
            return Err(AlgebraError::FieldMismatch);
        }
        if images.len() != source.dim() {
            return Err(AlgebraError::MapShape {
                expected_rows: source.dim(),
                found_rows: images.len(),
            });
        }
        for img in &images {
            target.vector(img.coords())?;
        }
        Ok(GradedMap {
            source,
            target,
            images,
            kind,
        })
    }

    /// `alpha * id` on `alg`.
    pub fn scalar(alg: Arc<Superalgebra>, alpha: Scalar, kind: MapKind) -> Self {
        let images = (0..alg.dim()).map(|i| alg.scale(alpha, &alg.basis(i))).collect();
        GradedMap {
            source: alg.clone(),
            target: alg,
            images,
            kind,
        }
    }

    pub fn identity(alg: Arc<Superalgebra>, kind: MapKind) -> Self {
        GradedMap::scalar(alg, 1, kind)
    }

    pub fn source(&self) -> &Arc<Superalgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Superalgebra> {
        &self.target
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    /// Image of each source basis vector, in target coordinates.
    pub fn images(&self) -> &[Vector] {
        &self.images
    }

    pub fn apply(&self, x: &Vector) -> Result<Vector, AlgebraError> {
        self.source.check(x)?;
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(&self, x: &Vector) -> Vector {
        let t = &self.target;
        x.coords().iter().zip(&self.images).fold(
            t.zero(),
            |acc, (&c, img)| {
                if c == 0 {
                    acc
                } else {
                    t.add(&acc, &t.scale(c, img))
                }
            },
        )
    }

    /// Target index of the image of every source vector, in source index order.
    pub fn index_table(&self) -> Vec<usize> {
        self.source
            .vectors()
            .map(|x| self.target.index_of(&self.apply_unchecked(&x)))
            .collect()
    }

    /// Every source vector mapping to `y`, in index order.
    pub fn fiber(&self, y: &Vector) -> Result<Vec<Vector>, AlgebraError> {
        self.target.check(y)?;
        Ok(self
            .source
            .vectors()
            .filter(|x| self.apply_unchecked(x) == *y)
            .collect())
    }

    pub fn is_surjective(&self) -> bool {
        self.target.span(self.images.iter()).is_full()
    }

    pub fn is_injective(&self) -> bool {
        self.target.span(self.images.iter()).rank() == self.source.dim()
    }

    /// Checks grading preservation and, for anti-homomorphisms, the anti
    /// condition on every basis pair.
    pub fn validate(&self) -> MapReport {
        let (s, t) = (&self.source, &self.target);
        let mut violations = Vec::new();
        for (i, img) in self.images.iter().enumerate() {
            if !t.in_component(img, s.parity(i)) {
                violations.push(MapViolation::Grading { basis: i });
            }
        }
        if self.kind == MapKind::AntiHomomorphism {
            for i in 0..s.dim() {
                for j in 0..s.dim() {
                    let lhs = self.apply_unchecked(&s.bracket_unchecked(&s.basis(i), &s.basis(j)));
                    let rhs = t.neg(&t.bracket_unchecked(&self.images[i], &self.images[j]));
                    if lhs != rhs {
                        violations.push(MapViolation::AntiHomomorphism { i, j });
                    }
                }
            }
        }
        MapReport {
            violations,
            surjective: self.is_surjective(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::superalgebra::tests::h_algebra;
    use crate::superalgebra::Parity;
    use alloc::vec;

    fn diag(alg: &Arc<Superalgebra>, entries: &[Scalar], kind: MapKind) -> GradedMap {
        let images = entries
            .iter()
            .enumerate()
            .map(|(i, &c)| alg.scale(c, &alg.basis(i)))
            .collect();
        GradedMap::new(alg.clone(), alg.clone(), images, kind).unwrap()
    }

    #[test]
    fn identity_on_abelian_is_anti() {
        let f3 = PrimeField::new(3).unwrap();
        let alg = Arc::new(Superalgebra::abelian(f3, vec![Parity::Even, Parity::Odd]).unwrap());
        let id = GradedMap::identity(alg, MapKind::AntiHomomorphism);
        let report = id.validate();
        assert!(report.is_valid());
        assert!(report.surjective);
    }

    #[test]
    fn diag_two_one_is_anti_on_h() {
        let h = h_algebra();
        // phi([f,f]) = 2e and -[phi f, phi f] = -e = 2e.
        let phi = diag(&h, &[2, 1], MapKind::AntiHomomorphism);
        assert!(phi.validate().is_valid());
        // identity is a homomorphism, not an anti-homomorphism, on H
        let id = GradedMap::identity(h.clone(), MapKind::AntiHomomorphism);
        assert_eq!(
            id.validate().violations,
            vec![MapViolation::AntiHomomorphism { i: 1, j: 1 }]
        );
    }

    #[test]
    fn parity_violation_is_reported() {
        let h = h_algebra();
        let phi = GradedMap::new(h.clone(), h.clone(), vec![h.basis(0), h.basis(0)], MapKind::Plain).unwrap();
        let report = phi.validate();
        assert_eq!(report.violations, vec![MapViolation::Grading { basis: 1 }]);
        assert!(!report.surjective);
    }

    #[test]
    fn fibers() {
        let h = h_algebra();
        let id = GradedMap::identity(h.clone(), MapKind::Plain);
        let y = h.vector(&[1, 2]).unwrap();
        assert_eq!(id.fiber(&y).unwrap(), vec![y]);

        let zero = GradedMap::scalar(h.clone(), 0, MapKind::Plain);
        assert_eq!(zero.fiber(&h.zero()).unwrap().len(), 9);
        assert!(zero.fiber(&y).unwrap().is_empty());

        // 2a = 1 mod 3 gives a = 2.
        let phi = diag(&h, &[2, 1], MapKind::Plain);
        assert_eq!(phi.fiber(&h.basis(0)).unwrap(), vec![h.scale(2, &h.basis(0))]);
    }

    #[test]
    fn anti_condition_extends_to_all_vectors() {
        let h = h_algebra();
        let phi = diag(&h, &[2, 2], MapKind::AntiHomomorphism);
        assert!(phi.validate().is_valid());
        for x in h.vectors() {
            for y in h.vectors() {
                let lhs = phi.apply(&h.bracket(&x, &y).unwrap()).unwrap();
                let rhs = h.neg(&h.bracket(&phi.apply(&x).unwrap(), &phi.apply(&y).unwrap()).unwrap());
                assert_eq!(lhs, rhs);
            }
            assert!(phi.fiber(&phi.apply(&x).unwrap()).unwrap().contains(&x));
        }
    }
}
