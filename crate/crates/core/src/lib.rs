//! Complex intuitionistic fuzzy (CIF) sets over finite Lie superalgebras.
//!
//! Everything is exact: the ground field is a small prime field, degrees are
//! rationals in `[0, 1]`, and every supremum or infimum ranges over a finite
//! carrier. The crate is `no_std` with `alloc`.
//!
//! ```
//! use std::sync::Arc;
//! use cifsuper_core::{bracket_product, CifDegree, CifSet, Degree, Parity, PrimeField, Superalgebra};
//!
//! let f3 = PrimeField::new(3).unwrap();
//! // e even, f odd, [f, f] = e
//! let h = Arc::new(
//!     Superalgebra::from_upper_triangle(f3, vec![Parity::Even, Parity::Odd], [(1, 1, vec![1, 0])]).unwrap(),
//! );
//! let d = CifDegree::new(Degree::from_ratios(2, 3, 1, 2).unwrap(), Degree::BOTTOM).unwrap();
//! let a = CifSet::new(h.clone(), [(h.basis(1), d), (h.scale(2, &h.basis(1)), d)], CifDegree::ABSENT).unwrap();
//! let p = bracket_product(&a, &a).unwrap();
//! assert_eq!(p.degree(&h.basis(0)).unwrap(), d);
//! ```

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bracket;
pub mod cifset;
pub mod degrees;
pub mod error;
pub mod field;
pub mod superalgebra;
pub mod theoremsuite;

pub use bracket::{
    bracket_graded_parts, bracket_product, bracket_product_oracle, bracket_product_with_diagnostics, LevelCutLadder,
    Rung,
};
pub use cifset::{CifSet, Diagnostics, Report, Side, Witness};
pub use degrees::{family_inf, family_sup, CifDegree, Degree, Extremum, Unit};
pub use error::{AlgebraError, CifError, DegreeError, SuiteError};
pub use field::{PrimeField, Scalar};
pub use superalgebra::{
    AxiomViolation, GradedMap, MapKind, MapReport, MapViolation, Parity, SubspaceBasis, Superalgebra, ValidationReport,
    Vector,
};
