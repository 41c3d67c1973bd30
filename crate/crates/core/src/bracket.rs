//! The CIF bracket product `[A, B]`.
//!
//! The production path is a level-cut ladder: for each threshold `t` drawn
//! from `{λ_A(a) ∧ λ_B(b)}` the cut is `span{[a, b] : λ_A(a) ≥ t, λ_B(b) ≥ t}`,
//! which by bilinearity is spanned by brackets of basis vectors of the two
//! level sets. `λ_[A,B](x)` is the best threshold whose cut contains `x`.
//! The non-membership side runs the same ladder with the order reversed.
//!
//! [`bracket_product_oracle`] computes the same table by a fixed point over
//! sums and scalar multiples of brackets, without any span routine.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::cifset::{CifSet, Diagnostics, Side, Witness};
use crate::degrees::{CifDegree, Degree, Unit};
use crate::error::CifError;
use crate::superalgebra::{Parity, SubspaceBasis, Superalgebra, Vector};

/// Largest carrier the fixed-point oracle accepts.
pub const ORACLE_MAX_CARRIER: usize = 729;

/// One threshold and its cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rung {
    pub threshold: Degree,
    pub cut: SubspaceBasis,
}

/// Joint amplitude-phase ladder for one side of the product.
///
/// Membership rungs run from the largest threshold down; non-membership
/// rungs from the smallest up. Either way each cut contains the previous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelCutLadder {
    side: Side,
    rungs: Vec<Rung>,
}

impl LevelCutLadder {
    /// `None` when the values of `A` and `B` on this side do not form a
    /// chain, in which case no joint ladder exists.
    pub fn new(a: &CifSet, b: &CifSet, side: Side) -> Result<Option<Self>, CifError> {
        if !crate::cifset::same_space(a.algebra(), b.algebra()) {
            return Err(CifError::SpaceMismatch);
        }
        let pick = pick(side);
        if !is_chain(a, b, pick) {
            return Ok(None);
        }
        let alg = a.algebra();
        let ka: Vec<_> = a.table().iter().map(|&d| pick(d)).collect();
        let kb: Vec<_> = b.table().iter().map(|&d| pick(d)).collect();
        let rungs = match side {
            Side::Membership => build(alg, &lex(&ka), &lex(&kb))
                .into_iter()
                .map(|((r, w), cut)| Rung {
                    threshold: Degree::new(r, w),
                    cut,
                })
                .collect(),
            Side::NonMembership => build(alg, &rev(&lex(&ka)), &rev(&lex(&kb)))
                .into_iter()
                .map(|(Reverse((r, w)), cut)| Rung {
                    threshold: Degree::new(r, w),
                    cut,
                })
                .collect(),
        };
        Ok(Some(LevelCutLadder { side, rungs }))
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn rungs(&self) -> &[Rung] {
        &self.rungs
    }

    /// Threshold of the first rung whose cut contains `x`.
    pub fn locate(&self, x: &Vector) -> Option<Degree> {
        self.rungs.iter().find(|r| r.cut.contains(x)).map(|r| r.threshold)
    }
}

fn pick(side: Side) -> fn(CifDegree) -> Degree {
    match side {
        Side::Membership => CifDegree::mem,
        Side::NonMembership => CifDegree::non,
    }
}

fn is_chain(a: &CifSet, b: &CifSet, pick: fn(CifDegree) -> Degree) -> bool {
    let mut values: Vec<Degree> = Vec::new();
    for &d in a.table().iter().chain(b.table()) {
        let v = pick(d);
        if !values.contains(&v) {
            values.push(v);
        }
    }
    values
        .iter()
        .enumerate()
        .all(|(i, x)| values[i + 1..].iter().all(|y| x.comparable(*y)))
}

fn lex(keys: &[Degree]) -> Vec<(Unit, Unit)> {
    keys.iter().map(|d| d.lex_key()).collect()
}

fn rev<K: Copy>(keys: &[K]) -> Vec<Reverse<K>> {
    keys.iter().map(|&k| Reverse(k)).collect()
}

/// Ladder over a totally ordered key where larger is better. `ka`, `kb` are
/// the per-vector keys of the two operands in index order.
fn build<K: Ord + Copy>(alg: &Superalgebra, ka: &[K], kb: &[K]) -> Vec<(K, SubspaceBasis)> {
    let mut thresholds: Vec<K> = Vec::new();
    let distinct = |keys: &[K]| {
        let mut v: Vec<K> = keys.to_vec();
        v.sort_unstable();
        v.dedup();
        v
    };
    let (da, db) = (distinct(ka), distinct(kb));
    for &x in &da {
        for &y in &db {
            thresholds.push(x.min(y));
        }
    }
    thresholds.sort_unstable_by(|x, y| y.cmp(x));
    thresholds.dedup();

    let order = |keys: &[K]| {
        let mut idx: Vec<usize> = (0..keys.len()).collect();
        idx.sort_by(|&i, &j| keys[j].cmp(&keys[i]));
        idx
    };
    let (oa, ob) = (order(ka), order(kb));
    let (mut pa, mut pb) = (0, 0);
    let mut sa = SubspaceBasis::new(alg.field(), alg.dim());
    let mut sb = sa.clone();
    let mut out = Vec::with_capacity(thresholds.len());
    for t in thresholds {
        while pa < oa.len() && ka[oa[pa]] >= t {
            if !sa.is_full() {
                sa.insert(&alg.vector_at(oa[pa]));
            }
            pa += 1;
        }
        while pb < ob.len() && kb[ob[pb]] >= t {
            if !sb.is_full() {
                sb.insert(&alg.vector_at(ob[pb]));
            }
            pb += 1;
        }
        let mut cut = SubspaceBasis::new(alg.field(), alg.dim());
        for u in sa.rows() {
            for v in sb.rows() {
                cut.insert(&alg.bracket_unchecked(u, v));
            }
        }
        out.push((t, cut));
    }
    out
}

fn locate<K: Copy>(ladder: &[(K, SubspaceBasis)], x: &Vector) -> Option<K> {
    ladder.iter().find(|(_, cut)| cut.contains(x)).map(|(k, _)| *k)
}

/// `[A, B]` by level-cut ladders.
pub fn bracket_product(a: &CifSet, b: &CifSet) -> Result<CifSet, CifError> {
    bracket_product_with_diagnostics(a, b).map(|(s, _)| s)
}

/// As [`bracket_product`], also reporting non-homogeneous operands. When a
/// side's values are not a chain, amplitude and phase are laddered
/// separately and vectors whose combined value matches no single threshold
/// are listed as not attained.
pub fn bracket_product_with_diagnostics(a: &CifSet, b: &CifSet) -> Result<(CifSet, Diagnostics), CifError> {
    let mut diag = Diagnostics {
        non_homogeneous: first_witness(a, b)?,
        ..Diagnostics::default()
    };
    let alg = a.algebra().clone();
    let mem = side_values(a, b, Side::Membership)?;
    let non = side_values(a, b, Side::NonMembership)?;
    let mut attained = Vec::new();
    let set = CifSet::from_fn(alg.clone(), |i, x| {
        let (m, m_ok) = mem[i];
        let (n, n_ok) = non[i];
        if !(m_ok && n_ok) {
            attained.push(*x);
        }
        CifDegree::from_lattice(m, n)
    });
    diag.non_attained = attained;
    Ok((set, diag))
}

fn first_witness(a: &CifSet, b: &CifSet) -> Result<Option<Witness>, CifError> {
    Ok(a.pair_homogeneous(b)?
        .witness
        .or(a.is_homogeneous().witness)
        .or(b.is_homogeneous().witness))
}

/// Per-vector value on one side plus whether it is a single threshold.
fn side_values(a: &CifSet, b: &CifSet, side: Side) -> Result<Vec<(Degree, bool)>, CifError> {
    let alg = a.algebra();
    let (none_r, none_w) = match side {
        Side::Membership => (Unit::ZERO, Unit::ZERO),
        Side::NonMembership => (Unit::ONE, Unit::ONE),
    };
    if let Some(ladder) = LevelCutLadder::new(a, b, side)? {
        return Ok(alg
            .vectors()
            .map(|x| {
                let d = ladder.locate(&x).unwrap_or(Degree::new(none_r, none_w));
                (d, true)
            })
            .collect());
    }
    let pick = pick(side);
    let comp = |set: &CifSet, f: fn(Degree) -> Unit| -> Vec<Unit> { set.table().iter().map(|&d| f(pick(d))).collect() };
    let get_r: fn(Degree) -> Unit = |d| d.r;
    let get_w: fn(Degree) -> Unit = |d| d.w;
    let (ra, rb, wa, wb) = (comp(a, get_r), comp(b, get_r), comp(a, get_w), comp(b, get_w));
    let joint: Vec<Degree> = a
        .table()
        .iter()
        .flat_map(|&da| b.table().iter().map(move |&db| (da, db)))
        .map(|(da, db)| match side {
            Side::Membership => pick(da).meet(pick(db)),
            Side::NonMembership => pick(da).join(pick(db)),
        })
        .collect();
    let values: Vec<Degree> = match side {
        Side::Membership => {
            let lr = build(alg, &ra, &rb);
            let lw = build(alg, &wa, &wb);
            alg.vectors()
                .map(|x| Degree::new(locate(&lr, &x).unwrap_or(none_r), locate(&lw, &x).unwrap_or(none_w)))
                .collect()
        }
        Side::NonMembership => {
            let lr = build(alg, &rev(&ra), &rev(&rb));
            let lw = build(alg, &rev(&wa), &rev(&wb));
            alg.vectors()
                .map(|x| {
                    Degree::new(
                        locate(&lr, &x).map_or(none_r, |Reverse(k)| k),
                        locate(&lw, &x).map_or(none_w, |Reverse(k)| k),
                    )
                })
                .collect()
        }
    };
    let fallback = Degree::new(none_r, none_w);
    Ok(values
        .into_iter()
        .map(|d| (d, d == fallback || joint.contains(&d)))
        .collect())
}

/// `[A, B]` by a fixed point over `α[a, b]` seeds closed under addition.
/// Shares no code with the ladder path.
pub fn bracket_product_oracle(a: &CifSet, b: &CifSet) -> Result<CifSet, CifError> {
    if !crate::cifset::same_space(a.algebra(), b.algebra()) {
        return Err(CifError::SpaceMismatch);
    }
    let alg = a.algebra().clone();
    let size = alg.size();
    if size > ORACLE_MAX_CARRIER {
        return Err(CifError::CarrierTooLarge {
            size,
            cap: ORACLE_MAX_CARRIER,
        });
    }
    let vs: Vec<Vector> = alg.vectors().collect();
    let mut mem = vec![Degree::BOTTOM; size];
    let mut non = vec![Degree::TOP; size];
    for (ia, x) in vs.iter().enumerate() {
        let (ma, na) = (a.at(ia).mem(), a.at(ia).non());
        for (ib, y) in vs.iter().enumerate() {
            let m = ma.meet(b.at(ib).mem());
            let n = na.join(b.at(ib).non());
            let z = alg.bracket_unchecked(x, y);
            for alpha in alg.field().elements() {
                let k = alg.index_of(&alg.scale(alpha, &z));
                mem[k] = mem[k].join(m);
                non[k] = non[k].meet(n);
            }
        }
    }
    mem[0] = Degree::TOP;
    non[0] = Degree::BOTTOM;
    let mut changed = true;
    while changed {
        changed = false;
        for (iu, u) in vs.iter().enumerate() {
            for (iv, v) in vs.iter().enumerate() {
                let k = alg.index_of(&alg.add(u, v));
                let m = mem[k].join(mem[iu].meet(mem[iv]));
                let n = non[k].meet(non[iu].join(non[iv]));
                if m != mem[k] || n != non[k] {
                    mem[k] = m;
                    non[k] = n;
                    changed = true;
                }
            }
        }
    }
    Ok(CifSet::from_fn(alg, |i, _| CifDegree::from_lattice(mem[i], non[i])))
}

/// `([A0,B0] + [A1,B1], [A0,B1] + [A1,B0])` on the component extensions.
pub fn bracket_graded_parts(a: &CifSet, b: &CifSet) -> Result<(CifSet, CifSet), CifError> {
    if !a.is_z2_graded().holds() || !b.is_z2_graded().holds() {
        return Err(CifError::NotGraded);
    }
    let (a0, a1) = (a.component_extension(Parity::Even), a.component_extension(Parity::Odd));
    let (b0, b1) = (b.component_extension(Parity::Even), b.component_extension(Parity::Odd));
    let even = bracket_product(&a0, &b0)?.sum(&bracket_product(&a1, &b1)?)?;
    let odd = bracket_product(&a0, &b1)?.sum(&bracket_product(&a1, &b0)?)?;
    Ok((even, odd))
}
