//! Amplitude–phase degrees and their componentwise lattice.
//!
//! A [`Degree`] `(r, w)` stands for `r * e^{i 2 pi w}`; both parts are exact
//! rationals in `[0, 1]`. Degrees are compared componentwise, which is only a
//! partial order, so `Degree` deliberately implements neither `PartialOrd`
//! nor `Ord`. Use [`Degree::leq`] for the order and [`Degree::lex_key`] when a
//! deterministic total order is needed for canonical output.

use alloc::string::ToString;
use core::fmt;
use core::str::FromStr;

use num_rational::Ratio;

use crate::error::DegreeError;

/// An exact rational in `[0, 1]`, always in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Unit(Ratio<u64>);

impl Unit {
    pub const ZERO: Unit = Unit(Ratio::new_raw(0, 1));
    pub const ONE: Unit = Unit(Ratio::new_raw(1, 1));

    pub fn new(numer: u64, denom: u64) -> Result<Unit, DegreeError> {
        if denom == 0 {
            return Err(DegreeError::ZeroDenominator);
        }
        if numer > denom {
            return Err(DegreeError::OutOfUnitInterval);
        }
        Ok(Unit(Ratio::new(numer, denom)))
    }

    pub fn numer(self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(self) -> u64 {
        *self.0.denom()
    }

    /// `self + other <= 1`, computed without overflow.
    pub fn fits_with(self, other: Unit) -> bool {
        let (a, b) = (u128::from(self.numer()), u128::from(self.denom()));
        let (c, d) = (u128::from(other.numer()), u128::from(other.denom()));
        a * d + c * b <= b * d
    }
}

impl fmt::Debug for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Always `num/den`, including `0/1` and `1/1`.
impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

/// Accepts `num/den` in lowest terms with a positive denominator, or a bare
/// integer `0` or `1`.
impl FromStr for Unit {
    type Err = DegreeError;

    fn from_str(s: &str) -> Result<Unit, DegreeError> {
        let malformed = || DegreeError::Malformed(s.to_string());
        let digits = |t: &str| -> Result<u64, DegreeError> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(malformed());
            }
            t.parse().map_err(|_| malformed())
        };
        match s.split_once('/') {
            None => {
                let n = digits(s)?;
                Unit::new(n, 1)
            }
            Some((n, d)) => {
                let (n, d) = (digits(n)?, digits(d)?);
                let u = Unit::new(n, d)?;
                if u.denom() != d {
                    return Err(DegreeError::NotReduced);
                }
                Ok(u)
            }
        }
    }
}

/// An amplitude–phase pair `(r, w)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Degree {
    pub r: Unit,
    pub w: Unit,
}

impl Degree {
    /// `0 e^{i 2 pi 0}`, the least degree.
    pub const BOTTOM: Degree = Degree {
        r: Unit::ZERO,
        w: Unit::ZERO,
    };
    /// `1 e^{i 2 pi}`, the greatest degree.
    pub const TOP: Degree = Degree {
        r: Unit::ONE,
        w: Unit::ONE,
    };

    pub fn new(r: Unit, w: Unit) -> Degree {
        Degree { r, w }
    }

    /// Shorthand for `Degree::new(Unit::new(rn, rd)?, Unit::new(wn, wd)?)`.
    pub fn from_ratios(rn: u64, rd: u64, wn: u64, wd: u64) -> Result<Degree, DegreeError> {
        Ok(Degree::new(Unit::new(rn, rd)?, Unit::new(wn, wd)?))
    }

    /// Componentwise order: `r <= r'` and `w <= w'`.
    #[inline]
    pub fn leq(self, other: Degree) -> bool {
        self.r <= other.r && self.w <= other.w
    }

    #[inline]
    pub fn meet(self, other: Degree) -> Degree {
        Degree {
            r: self.r.min(other.r),
            w: self.w.min(other.w),
        }
    }

    #[inline]
    pub fn join(self, other: Degree) -> Degree {
        Degree {
            r: self.r.max(other.r),
            w: self.w.max(other.w),
        }
    }

    pub fn comparable(self, other: Degree) -> bool {
        self.leq(other) || other.leq(self)
    }

    /// Lexicographic key, a linear extension of the componentwise order.
    pub fn lex_key(self) -> (Unit, Unit) {
        (self.r, self.w)
    }
}

impl fmt::Debug for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.r, self.w)
    }
}

/// Paired membership and non-membership degrees with `mem.r + non.r <= 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct CifDegree {
    mem: Degree,
    non: Degree,
}

impl CifDegree {
    /// `(TOP; BOTTOM)`: full membership, the value pinned at the zero vector.
    pub const PINNED: CifDegree = CifDegree {
        mem: Degree::TOP,
        non: Degree::BOTTOM,
    };
    /// `(BOTTOM; TOP)`: no membership at all.
    pub const ABSENT: CifDegree = CifDegree {
        mem: Degree::BOTTOM,
        non: Degree::TOP,
    };

    pub fn new(mem: Degree, non: Degree) -> Result<CifDegree, DegreeError> {
        if !mem.r.fits_with(non.r) {
            return Err(DegreeError::Budget);
        }
        Ok(CifDegree { mem, non })
    }

    /// For values produced by lattice operations on valid degrees, which
    /// never break the budget.
    pub(crate) fn from_lattice(mem: Degree, non: Degree) -> CifDegree {
        debug_assert!(mem.r.fits_with(non.r), "budget broken: {mem}; {non}");
        CifDegree { mem, non }
    }

    #[inline]
    pub fn mem(self) -> Degree {
        self.mem
    }

    #[inline]
    pub fn non(self) -> Degree {
        self.non
    }

    /// Membership meet, non-membership join.
    #[inline]
    pub fn intersect(self, other: CifDegree) -> CifDegree {
        CifDegree {
            mem: self.mem.meet(other.mem),
            non: self.non.join(other.non),
        }
    }

    /// Membership join, non-membership meet.
    #[inline]
    pub fn unite(self, other: CifDegree) -> CifDegree {
        CifDegree {
            mem: self.mem.join(other.mem),
            non: self.non.meet(other.non),
        }
    }

    /// The subset order on single values: lower membership and higher
    /// non-membership.
    pub fn below(self, other: CifDegree) -> bool {
        self.mem.leq(other.mem) && other.non.leq(self.non)
    }

    pub fn lex_key(self) -> ((Unit, Unit), (Unit, Unit)) {
        (self.mem.lex_key(), self.non.lex_key())
    }
}

impl fmt::Debug for CifDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CifDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.mem, self.non)
    }
}

/// Result of a componentwise supremum or infimum over a finite family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Extremum {
    pub value: Degree,
    /// Whether some member equals `value`, i.e. the family has a greatest
    /// (resp. least) element.
    pub attained: bool,
}

/// Componentwise maximum of a nonempty family. `None` for an empty one.
pub fn family_sup(family: &[Degree]) -> Option<Extremum> {
    let value = family.iter().copied().reduce(Degree::join)?;
    Some(Extremum {
        value,
        attained: family.contains(&value),
    })
}

/// Componentwise minimum of a nonempty family. `None` for an empty one.
pub fn family_inf(family: &[Degree]) -> Option<Extremum> {
    let value = family.iter().copied().reduce(Degree::meet)?;
    Some(Extremum {
        value,
        attained: family.contains(&value),
    })
}
