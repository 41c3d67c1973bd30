//! Finite-dimensional Lie superalgebras over `F_p`.
//!
//! A [`Superalgebra`] is a fixed basis `b_0, ..., b_{n-1}` with a parity per
//! basis vector and structure constants `[b_i, b_j] = sum_k c[i][j][k] b_k`.
//! The carrier is finite (`p^n` vectors), and every vector has a canonical
//! index: its coordinates read as a base-`p` numeral, first coordinate most
//! significant. Index order is therefore lexicographic coordinate order.

mod map;
mod span;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::AlgebraError;
use crate::field::{PrimeField, Scalar};

pub use map::{GradedMap, MapKind, MapReport, MapViolation};
pub use span::SubspaceBasis;

/// Largest supported basis size.
pub const MAX_DIM: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: u8) -> Option<Parity> {
        match bit {
            0 => Some(Parity::Even),
            1 => Some(Parity::Odd),
            _ => None,
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    /// Parity of a bracket of homogeneous elements.
    pub fn combine(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Coordinates relative to an algebra's basis.
///
/// The vector does not carry its field; the owning [`Superalgebra`] checks
/// that coordinates are reduced when the vector is built through it.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Vector {
    dim: u8,
    coords: [Scalar; MAX_DIM],
}

impl Vector {
    pub fn zero(dim: usize) -> Vector {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        Vector {
            dim: dim as u8,
            coords: [0; MAX_DIM],
        }
    }

    /// Builds a vector from raw coordinates without range checks.
    ///
    /// Panics if more than [`MAX_DIM`] coordinates are given.
    pub fn from_coords(coords: &[Scalar]) -> Vector {
        let mut v = Vector::zero(coords.len());
        v.coords[..coords.len()].copy_from_slice(coords);
        v
    }

    /// The `i`-th basis vector of an `dim`-dimensional space.
    pub fn basis(dim: usize, i: usize) -> Vector {
        let mut v = Vector::zero(dim);
        v.coords[i] = 1;
        v
    }

    #[inline]
    pub fn dim(&self) -> usize {
        usize::from(self.dim)
    }

    #[inline]
    pub fn coords(&self) -> &[Scalar] {
        &self.coords[..self.dim()]
    }

    #[inline]
    pub fn get(&self, i: usize) -> Scalar {
        self.coords()[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(|&c| c == 0)
    }

    fn coords_mut(&mut self) -> &mut [Scalar] {
        let n = self.dim();
        &mut self.coords[..n]
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords().iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// A violated superalgebra axiom with its basis witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    /// `c[i][j][k] != 0` although `|b_k| != |b_i| + |b_j|`.
    Grading { i: usize, j: usize, k: usize },
    /// `[b_i, b_j] != -(-1)^{|i||j|} [b_j, b_i]`.
    SkewSymmetry { i: usize, j: usize },
    /// The graded Jacobi sum over `(b_i, b_j, b_k)` is nonzero.
    Jacobi { i: usize, j: usize, k: usize },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AxiomViolation::Grading { i, j, k } => {
                write!(f, "grading: [b{i},b{j}] has a b{k} component of the wrong parity")
            }
            AxiomViolation::SkewSymmetry { i, j } => {
                write!(f, "super skew-symmetry fails on (b{i}, b{j})")
            }
            AxiomViolation::Jacobi { i, j, k } => {
                write!(f, "graded Jacobi identity fails on (b{i}, b{j}, b{k})")
            }
        }
    }
}

/// Outcome of [`Superalgebra::validate`]. Empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<AxiomViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A Z2-graded algebra with bracket structure constants over `F_p`.
///
/// Construction only checks shapes; the Lie superalgebra axioms are
/// checked by [`Superalgebra::validate`], so invalid tables can still be
/// inspected.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Superalgebra {
    field: PrimeField,
    parity: Vec<Parity>,
    /// `structure[(i * n + j) * n + k] = c[i][j][k]`.
    structure: Vec<Scalar>,
    size: usize,
}

impl Superalgebra {
    /// Builds an algebra from a complete `n*n*n` table in `(i, j, k)` order.
    pub fn new(field: PrimeField, parity: Vec<Parity>, structure: Vec<Scalar>) -> Result<Self, AlgebraError> {
        let n = parity.len();
        if n == 0 || n > MAX_DIM {
            return Err(AlgebraError::InvalidDimension(n));
        }
        if structure.len() != n * n * n {
            return Err(AlgebraError::StructureShape {
                expected: n * n * n,
                found: structure.len(),
            });
        }
        if let Some(&c) = structure.iter().find(|&&c| c >= field.modulus()) {
            return Err(AlgebraError::CoefficientOutOfRange {
                value: u32::from(c),
                modulus: field.modulus(),
            });
        }
        let size = usize::from(field.modulus()).pow(n as u32);
        Ok(Superalgebra {
            field,
            parity,
            structure,
            size,
        })
    }

    /// The algebra with every bracket zero.
    pub fn abelian(field: PrimeField, parity: Vec<Parity>) -> Result<Self, AlgebraError> {
        let n = parity.len();
        Superalgebra::new(field, parity, vec![0; n * n * n])
    }

    /// Builds an algebra from brackets given on pairs `i <= j` only; the
    /// remaining entries follow from `[b_j, b_i] = -(-1)^{|i||j|} [b_i, b_j]`.
    pub fn from_upper_triangle<I>(field: PrimeField, parity: Vec<Parity>, brackets: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (usize, usize, Vec<Scalar>)>,
    {
        let mut alg = Superalgebra::abelian(field, parity)?;
        let n = alg.dim();
        for (i, j, coeffs) in brackets {
            let (i, j) = if i <= j { (i, j) } else { (j, i) };
            if j >= n {
                return Err(AlgebraError::IndexOutOfRange { index: j, dim: n });
            }
            if coeffs.len() != n {
                return Err(AlgebraError::DimensionMismatch {
                    expected: n,
                    found: coeffs.len(),
                });
            }
            let both_odd = alg.parity[i].is_odd() && alg.parity[j].is_odd();
            let factor = field.neg(field.sign(both_odd));
            for (k, &c) in coeffs.iter().enumerate() {
                if c >= field.modulus() {
                    return Err(AlgebraError::CoefficientOutOfRange {
                        value: u32::from(c),
                        modulus: field.modulus(),
                    });
                }
                alg.structure[(i * n + j) * n + k] = c;
                if i != j {
                    alg.structure[(j * n + i) * n + k] = field.mul(factor, c);
                }
            }
        }
        Ok(alg)
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    /// Number of vectors in the carrier, `p^n`.
    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parity
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parity[i]
    }

    /// `c[i][j][k]`.
    #[inline]
    pub fn constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        let n = self.dim();
        self.structure[(i * n + j) * n + k]
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.iter().all(|&c| c == 0)
    }

    /// Checked vector construction.
    pub fn vector(&self, coords: &[Scalar]) -> Result<Vector, AlgebraError> {
        if coords.len() != self.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim(),
                found: coords.len(),
            });
        }
        if let Some(&c) = coords.iter().find(|&&c| c >= self.field.modulus()) {
            return Err(AlgebraError::CoefficientOutOfRange {
                value: u32::from(c),
                modulus: self.field.modulus(),
            });
        }
        Ok(Vector::from_coords(coords))
    }

    pub fn zero(&self) -> Vector {
        Vector::zero(self.dim())
    }

    pub fn basis(&self, i: usize) -> Vector {
        Vector::basis(self.dim(), i)
    }

    pub fn check(&self, x: &Vector) -> Result<(), AlgebraError> {
        if x.dim() != self.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim(),
                found: x.dim(),
            });
        }
        Ok(())
    }

    /// Canonical index of a vector in `0..size()`.
    #[inline]
    pub fn index_of(&self, x: &Vector) -> usize {
        let p = usize::from(self.field.modulus());
        x.coords().iter().fold(0, |acc, &c| acc * p + usize::from(c))
    }

    /// Inverse of [`Superalgebra::index_of`].
    #[inline]
    pub fn vector_at(&self, mut index: usize) -> Vector {
        let p = usize::from(self.field.modulus());
        let mut v = self.zero();
        for c in v.coords_mut().iter_mut().rev() {
            *c = (index % p) as Scalar;
            index /= p;
        }
        v
    }

    /// All vectors in index order.
    pub fn vectors(&self) -> impl Iterator<Item = Vector> + '_ {
        (0..self.size).map(move |i| self.vector_at(i))
    }

    pub fn add(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = *x;
        for (o, &b) in out.coords_mut().iter_mut().zip(y.coords()) {
            *o = self.field.add(*o, b);
        }
        out
    }

    pub fn sub(&self, x: &Vector, y: &Vector) -> Vector {
        self.add(x, &self.neg(y))
    }

    pub fn neg(&self, x: &Vector) -> Vector {
        self.scale(self.field.neg(1), x)
    }

    pub fn scale(&self, alpha: Scalar, x: &Vector) -> Vector {
        let mut out = *x;
        for o in out.coords_mut() {
            *o = self.field.mul(alpha, *o);
        }
        out
    }

    /// Bilinear extension of the structure constants: `sum x_i y_j [b_i, b_j]`.
    pub fn bracket(&self, x: &Vector, y: &Vector) -> Result<Vector, AlgebraError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &Vector, y: &Vector) -> Vector {
        let n = self.dim();
        let f = self.field;
        let mut acc = [0u32; MAX_DIM];
        for (i, &xi) in x.coords().iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.coords().iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let w = u32::from(f.mul(xi, yj));
                let row = &self.structure[(i * n + j) * n..(i * n + j + 1) * n];
                for (a, &c) in acc.iter_mut().zip(row) {
                    *a += w * u32::from(c);
                }
            }
        }
        let p = u32::from(f.modulus());
        let mut out = self.zero();
        for (o, a) in out.coords_mut().iter_mut().zip(acc) {
            *o = (a % p) as Scalar;
        }
        out
    }

    /// Splits `x` into its even and odd components.
    pub fn graded_split(&self, x: &Vector) -> (Vector, Vector) {
        let mut even = *x;
        let mut odd = *x;
        for (i, p) in self.parity.iter().enumerate() {
            match p {
                Parity::Even => odd.coords_mut()[i] = 0,
                Parity::Odd => even.coords_mut()[i] = 0,
            }
        }
        (even, odd)
    }

    /// Whether `x` lies in the given parity component. Zero lies in both.
    pub fn in_component(&self, x: &Vector, parity: Parity) -> bool {
        x.coords()
            .iter()
            .zip(&self.parity)
            .all(|(&c, &q)| c == 0 || q == parity)
    }

    /// Checks grading compatibility, super skew-symmetry and the graded
    /// Jacobi identity on basis elements, listing every violation.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        let f = self.field;
        let mut violations = Vec::new();

        for i in 0..n {
            for j in 0..n {
                let expected = self.parity[i].combine(self.parity[j]);
                for k in 0..n {
                    if self.constant(i, j, k) != 0 && self.parity[k] != expected {
                        violations.push(AxiomViolation::Grading { i, j, k });
                    }
                }
            }
        }

        for i in 0..n {
            for j in i..n {
                let s = f.sign(self.parity[i].is_odd() && self.parity[j].is_odd());
                let ok = (0..n).all(|k| f.add(self.constant(i, j, k), f.mul(s, self.constant(j, i, k))) == 0);
                if !ok {
                    violations.push(AxiomViolation::SkewSymmetry { i, j });
                }
            }
        }

        let sign = |a: usize, b: usize| f.sign(self.parity[a].is_odd() && self.parity[b].is_odd());
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (bi, bj, bk) = (self.basis(i), self.basis(j), self.basis(k));
                    let t1 = self.scale(
                        sign(i, k),
                        &self.bracket_unchecked(&bi, &self.bracket_unchecked(&bj, &bk)),
                    );
                    let t2 = self.scale(
                        sign(j, i),
                        &self.bracket_unchecked(&bj, &self.bracket_unchecked(&bk, &bi)),
                    );
                    let t3 = self.scale(
                        sign(k, j),
                        &self.bracket_unchecked(&bk, &self.bracket_unchecked(&bi, &bj)),
                    );
                    if !self.add(&self.add(&t1, &t2), &t3).is_zero() {
                        violations.push(AxiomViolation::Jacobi { i, j, k });
                    }
                }
            }
        }

        ValidationReport { violations }
    }

    /// Reduced row-echelon basis of the span of `gens`.
    pub fn span<'a, I>(&self, gens: I) -> SubspaceBasis
    where
        I: IntoIterator<Item = &'a Vector>,
    {
        let mut basis = SubspaceBasis::new(self.field, self.dim());
        for g in gens {
            basis.insert(g);
        }
        basis
    }
}
