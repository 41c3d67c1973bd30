//! Seeded generators and the executable theorem catalog.
//!
//! Every generated set draws its values from one shared [`DegreePool`], a
//! strict chain in both amplitude and phase. Any two generated sets are
//! therefore homogeneous with each other, which is the standing assumption
//! behind sums and bracket products.
//!
//! Runs are deterministic: the configuration seed fixes the per-trial seeds,
//! and each trial replays from its own seed alone.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::hash::{Hash, Hasher};
use core::str::FromStr;

use fnv::FnvHasher;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bracket::{bracket_graded_parts, bracket_product};
use crate::cifset::{CifSet, Witness};
use crate::degrees::{CifDegree, Degree};
use crate::error::SuiteError;
use crate::field::{PrimeField, Scalar};
use crate::superalgebra::{GradedMap, MapKind, Parity, SubspaceBasis, Superalgebra, Vector};

pub const DEFAULT_TRIALS_H: usize = 200;
pub const DEFAULT_TRIALS_DIM3: usize = 50;
/// Random matrices tried before falling back to `-id` and `id`.
pub const ANTI_HOM_BUDGET: usize = 256;
/// Reported for `anti-ideal`, which has no definition to check against.
pub const ANTI_IDEAL_NOTE: &str = "unspecified: no definition of the predicate is available";

/// `H` over `F_3`: `e` even, `f` odd, `[f, f] = e`.
pub fn standard_h() -> Superalgebra {
    let f3 = PrimeField::new(3).expect("3 is prime");
    Superalgebra::from_upper_triangle(f3, vec![Parity::Even, Parity::Odd], [(1, 1, vec![1, 0])])
        .expect("well-formed table")
}

/// A 3-dimensional superalgebra over `F_3`: `h` even, `x`, `y` odd,
/// `[h, x] = x`, `[h, y] = -y`, `[x, y] = 0`.
pub fn standard_dim3() -> Superalgebra {
    let f3 = PrimeField::new(3).expect("3 is prime");
    Superalgebra::from_upper_triangle(
        f3,
        vec![Parity::Even, Parity::Odd, Parity::Odd],
        [(0, 1, vec![0, 1, 0]), (0, 2, vec![0, 0, 2])],
    )
    .expect("well-formed table")
}

/// Intermediate degree levels shared by all generated sets.
///
/// Together with `(BOTTOM; TOP)` below and `(TOP; BOTTOM)` above, the levels
/// must form a strict chain: membership strictly rising in both components,
/// non-membership strictly falling in both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreePool {
    chain: Vec<CifDegree>,
}

impl DegreePool {
    pub fn new(levels: &[CifDegree]) -> Result<Self, SuiteError> {
        let mut chain = vec![CifDegree::ABSENT];
        chain.extend(
            levels
                .iter()
                .copied()
                .filter(|&d| d != CifDegree::ABSENT && d != CifDegree::PINNED),
        );
        chain.push(CifDegree::PINNED);
        for w in chain.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let mem_up = lo.mem().r < hi.mem().r && lo.mem().w < hi.mem().w;
            let non_down = hi.non().r < lo.non().r && hi.non().w < lo.non().w;
            if !mem_up {
                return Err(SuiteError::InvalidPool(
                    "membership must rise strictly in both components",
                ));
            }
            if !non_down {
                return Err(SuiteError::InvalidPool(
                    "non-membership must fall strictly in both components",
                ));
            }
        }
        Ok(DegreePool { chain })
    }

    /// The full chain, `(BOTTOM; TOP)` first and `(TOP; BOTTOM)` last.
    pub fn chain(&self) -> &[CifDegree] {
        &self.chain
    }

    fn position(&self, d: CifDegree) -> Option<usize> {
        self.chain.iter().position(|&c| c == d)
    }
}

impl Default for DegreePool {
    fn default() -> Self {
        let d = |a: (u64, u64, u64, u64), b: (u64, u64, u64, u64)| {
            CifDegree::new(
                Degree::from_ratios(a.0, a.1, a.2, a.3).expect("unit rationals"),
                Degree::from_ratios(b.0, b.1, b.2, b.3).expect("unit rationals"),
            )
            .expect("within budget")
        };
        DegreePool::new(&[
            d((1, 4, 1, 3), (2, 3, 1, 2)),
            d((1, 2, 1, 2), (1, 3, 1, 3)),
            d((2, 3, 3, 4), (1, 4, 1, 5)),
        ])
        .expect("default pool is a strict chain")
    }
}

#[derive(Clone, Debug)]
pub struct GenConfig {
    pub seed: u64,
    pub algebra: Arc<Superalgebra>,
    /// Largest number of proper cuts in a generated chain, 2 to 4.
    pub chain_length: usize,
    pub pool: DegreePool,
}

impl GenConfig {
    pub fn new(
        seed: u64,
        algebra: Arc<Superalgebra>,
        chain_length: usize,
        pool: DegreePool,
    ) -> Result<Self, SuiteError> {
        if !(2..=4).contains(&chain_length) {
            return Err(SuiteError::InvalidChainLength(chain_length));
        }
        Ok(GenConfig {
            seed,
            algebra,
            chain_length,
            pool,
        })
    }

    /// Default pool, chain length 3.
    pub fn with_defaults(seed: u64, algebra: Arc<Superalgebra>) -> Self {
        GenConfig {
            seed,
            algebra,
            chain_length: 3,
            pool: DegreePool::default(),
        }
    }
}

/// Which crisp subspaces a level-cut chain is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutKind {
    Subspace,
    Graded,
    Ideal,
}

/// Random objects for one trial.
pub struct Generator<'a> {
    cfg: &'a GenConfig,
    rng: ChaCha8Rng,
}

impl<'a> Generator<'a> {
    pub fn new(cfg: &'a GenConfig, seed: u64) -> Self {
        Generator {
            cfg,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn alg(&self) -> &Arc<Superalgebra> {
        &self.cfg.algebra
    }

    fn random_vector(&mut self) -> Vector {
        let alg = self.cfg.algebra.clone();
        let p = alg.field().modulus();
        let coords: Vec<Scalar> = (0..alg.dim()).map(|_| self.rng.gen_range(0..p)).collect();
        Vector::from_coords(&coords)
    }

    fn random_homogeneous(&mut self) -> Vector {
        let alg = self.cfg.algebra.clone();
        let v = self.random_vector();
        let (v0, v1) = alg.graded_split(&v);
        if self.rng.gen_bool(0.5) {
            v0
        } else {
            v1
        }
    }

    pub fn scalar(&mut self) -> Scalar {
        self.rng.gen_range(0..self.cfg.algebra.field().modulus())
    }

    pub fn nonzero_scalar(&mut self) -> Scalar {
        self.rng.gen_range(1..self.cfg.algebra.field().modulus())
    }

    fn close_ideal(&self, s: &mut SubspaceBasis) {
        let alg = self.alg();
        loop {
            let mut grew = false;
            let rows: Vec<Vector> = s.rows().to_vec();
            for i in 0..alg.dim() {
                for u in &rows {
                    grew |= s.insert(&alg.bracket_unchecked(&alg.basis(i), u));
                }
            }
            if !grew {
                break;
            }
        }
    }

    /// Nested crisp subspaces, outermost first: `W_1 ⊇ W_2 ⊇ … ⊇ W_k`.
    pub fn crisp_chain(&mut self, kind: CutKind, k: usize) -> Vec<SubspaceBasis> {
        let alg = self.cfg.algebra.clone();
        let mut current = SubspaceBasis::new(alg.field(), alg.dim());
        let mut chain = Vec::with_capacity(k);
        for _ in 0..k {
            let extra = self.rng.gen_range(0..=2);
            for _ in 0..extra {
                let v = match kind {
                    CutKind::Subspace => self.random_vector(),
                    CutKind::Graded | CutKind::Ideal => self.random_homogeneous(),
                };
                current.insert(&v);
            }
            if kind == CutKind::Ideal {
                self.close_ideal(&mut current);
            }
            chain.push(current.clone());
        }
        chain.reverse();
        chain
    }

    /// Level-cut set of a random chain: the deepest cut containing `x`
    /// decides its level, `(BOTTOM; TOP)` outside every cut.
    pub fn level_set(&mut self, kind: CutKind) -> CifSet {
        let k = self.rng.gen_range(0..=self.cfg.chain_length);
        let chain = self.crisp_chain(kind, k);
        // levels above ABSENT, sampled without replacement, ascending
        let candidates = &self.cfg.pool.chain()[1..];
        let mut picks: Vec<usize> = (0..candidates.len()).collect();
        for i in (1..picks.len()).rev() {
            let j = self.rng.gen_range(0..=i);
            picks.swap(i, j);
        }
        let mut levels: Vec<usize> = picks.into_iter().take(chain.len()).collect();
        levels.sort_unstable();
        let levels: Vec<CifDegree> = levels.into_iter().map(|i| candidates[i]).collect();
        let chain = &chain[..levels.len()];
        CifSet::from_fn(self.cfg.algebra.clone(), |i, x| {
            if i == 0 {
                return CifDegree::PINNED;
            }
            chain
                .iter()
                .zip(&levels)
                .rev()
                .find(|(w, _)| w.contains(x))
                .map_or(CifDegree::ABSENT, |(_, &d)| d)
        })
    }

    pub fn cif_subspace(&mut self) -> CifSet {
        self.level_set(CutKind::Subspace)
    }

    pub fn graded_subspace(&mut self) -> CifSet {
        self.level_set(CutKind::Graded)
    }

    pub fn cif_ideal(&mut self) -> CifSet {
        self.level_set(CutKind::Ideal)
    }

    /// Two sets of the same kind over the shared pool.
    pub fn pair(&mut self, kind: CutKind) -> (CifSet, CifSet) {
        (self.level_set(kind), self.level_set(kind))
    }

    /// Pool values assigned independently to each nonzero vector.
    pub fn arbitrary_set(&mut self) -> CifSet {
        let chain = self.cfg.pool.chain().to_vec();
        let mut draws: Vec<CifDegree> = (0..self.alg().size())
            .map(|_| chain[self.rng.gen_range(0..chain.len())])
            .collect();
        draws[0] = CifDegree::PINNED;
        CifSet::from_fn(self.cfg.algebra.clone(), |i, _| draws[i])
    }

    /// A random subset of `b`: each value replaced by a pool level at or
    /// below it.
    pub fn shrink(&mut self, b: &CifSet) -> CifSet {
        let pool = self.cfg.pool.clone();
        let draws: Vec<CifDegree> = b
            .table()
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                if i == 0 {
                    return CifDegree::PINNED;
                }
                let top = pool.position(d).expect("generated values come from the pool");
                pool.chain()[self.rng.gen_range(0..=top)]
            })
            .collect();
        CifSet::from_fn(b.algebra().clone(), |i, _| draws[i])
    }

    /// A surjective anti-homomorphism of the configured algebra onto itself.
    pub fn anti_hom(&mut self) -> Result<GradedMap, SuiteError> {
        let alg = self.cfg.algebra.clone();
        let valid = |m: &GradedMap| {
            let r = m.validate();
            r.is_valid() && r.surjective
        };
        for _ in 0..ANTI_HOM_BUDGET {
            let images: Vec<Vector> = (0..alg.dim())
                .map(|i| {
                    let v = self.random_vector();
                    let (v0, v1) = alg.graded_split(&v);
                    match alg.parity(i) {
                        Parity::Even => v0,
                        Parity::Odd => v1,
                    }
                })
                .collect();
            let m = GradedMap::new(alg.clone(), alg.clone(), images, MapKind::AntiHomomorphism)
                .expect("images live in the algebra");
            if valid(&m) {
                return Ok(m);
            }
        }
        let minus = alg.field().neg(1);
        for alpha in [minus, 1] {
            let m = GradedMap::scalar(alg.clone(), alpha, MapKind::AntiHomomorphism);
            if valid(&m) {
                return Ok(m);
            }
        }
        Err(SuiteError::Exhausted)
    }
}

/// Stable theorem identifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    SumSubspace,
    SumIdeal,
    Lem1,
    Lem2,
    Lem3,
    Lem4,
    Lem5,
    Thrm1,
    Thrm2,
    Thrm3,
    Thrm4,
    Thrm9,
    Thrm10,
    Thrm11,
    Thrm15,
    PreimageBracket,
    CorImageBilinear,
    CorPreimageBilinear,
    NegControls,
    /// Predicate without a definition to check against.
    AntiIdeal,
}

impl TheoremId {
    /// Everything with a checkable claim, in catalog order.
    pub const CATALOG: [TheoremId; 19] = [
        TheoremId::SumSubspace,
        TheoremId::SumIdeal,
        TheoremId::Lem1,
        TheoremId::Lem2,
        TheoremId::Lem3,
        TheoremId::Lem4,
        TheoremId::Lem5,
        TheoremId::Thrm1,
        TheoremId::Thrm2,
        TheoremId::Thrm3,
        TheoremId::Thrm4,
        TheoremId::Thrm9,
        TheoremId::Thrm10,
        TheoremId::Thrm11,
        TheoremId::Thrm15,
        TheoremId::PreimageBracket,
        TheoremId::CorImageBilinear,
        TheoremId::CorPreimageBilinear,
        TheoremId::NegControls,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::SumSubspace => "mylemma-1",
            TheoremId::SumIdeal => "sum-ideal",
            TheoremId::Lem1 => "lem-1",
            TheoremId::Lem2 => "lem-2",
            TheoremId::Lem3 => "lem-3",
            TheoremId::Lem4 => "lem-4",
            TheoremId::Lem5 => "lem-5",
            TheoremId::Thrm1 => "thrm-1",
            TheoremId::Thrm2 => "thrm-2",
            TheoremId::Thrm3 => "thrm-3",
            TheoremId::Thrm4 => "thrm-4",
            TheoremId::Thrm9 => "thrm-9",
            TheoremId::Thrm10 => "thrm-10",
            TheoremId::Thrm11 => "thrm-11",
            TheoremId::Thrm15 => "thrm-15",
            TheoremId::PreimageBracket => "preimg-bracket",
            TheoremId::CorImageBilinear => "cor-image-bilinear",
            TheoremId::CorPreimageBilinear => "cor-preimage-bilinear",
            TheoremId::NegControls => "neg-controls",
            TheoremId::AntiIdeal => "anti-ideal",
        }
    }

    /// One-line statement of the checked claim.
    pub fn claim(self) -> &'static str {
        match self {
            TheoremId::SumSubspace => "A + B is a CIF subspace for CIF subspaces A, B",
            TheoremId::SumIdeal => "A + B is a CIF ideal for CIF ideals A, B",
            TheoremId::Lem1 => "A1 ⊆ A2, B1 ⊆ B2 imply [A1,B1] ⊆ [A2,B2]",
            TheoremId::Lem2 => "A1 ⊆ B, A2 ⊆ B imply A1 + A2 ⊆ B for a CIF subspace B",
            TheoremId::Lem3 => "[A,B] is a CIF subspace",
            TheoremId::Lem4 => "[A,B] is a Z2-graded CIF subspace",
            TheoremId::Lem5 => "[A,B] = [B,A] for Z2-graded CIF subspaces",
            TheoremId::Thrm1 => "[A1+A2,B] = [A1,B] + [A2,B]",
            TheoremId::Thrm2 => "[αA,B] = α[A,B]",
            TheoremId::Thrm3 => "[A,B] is a CIF ideal for CIF ideals A, B",
            TheoremId::Thrm4 => "φ([A,B]) ⊆ [φ(A),φ(B)]",
            TheoremId::Thrm9 => "[αA1+βA2,B] = α[A1,B] + β[A2,B]",
            TheoremId::Thrm10 => "φ(αA) = αφ(A)",
            TheoremId::Thrm11 => "φ⁻¹(αB) = αφ⁻¹(B)",
            TheoremId::Thrm15 => "φ⁻¹(A+B) = φ⁻¹(A) + φ⁻¹(B)",
            TheoremId::PreimageBracket => "φ⁻¹([A,B]) ⊆ [φ⁻¹(A),φ⁻¹(B)]",
            TheoremId::CorImageBilinear => "[φ(αA1+βA2),φ(B)] = α[φ(A1),φ(B)] + β[φ(A2),φ(B)]",
            TheoremId::CorPreimageBilinear => "[φ⁻¹(αA1+βA2),φ⁻¹(B)] = α[φ⁻¹(A1),φ⁻¹(B)] + β[φ⁻¹(A2),φ⁻¹(B)]",
            TheoremId::NegControls => "every falsified law fails on some trial",
            TheoremId::AntiIdeal => "anti-CIF ideal predicate",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremId::CATALOG
            .iter()
            .chain(&[TheoremId::AntiIdeal])
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| SuiteError::UnknownTheorem(s.into()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub seed: u64,
    /// FNV-1a digest of the generated inputs.
    pub digest: u64,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub trials: usize,
    /// Sorted by seed.
    pub failures: Vec<Failure>,
    pub note: Option<&'static str>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Per-trial seeds derived from the configuration seed.
pub fn trial_seeds(seed: u64, trials: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).map(|_| rng.next_u64()).collect()
}

pub fn check_theorem(id: TheoremId, cfg: &GenConfig, trials: usize) -> Result<TheoremReport, SuiteError> {
    match id {
        TheoremId::NegControls => return Ok(negative_controls(cfg, trials)?.into_report(trials)),
        TheoremId::AntiIdeal => {
            return Ok(TheoremReport {
                theorem: id,
                trials: 0,
                failures: Vec::new(),
                note: Some(ANTI_IDEAL_NOTE),
            })
        }
        _ => {}
    }
    let mut failures = Vec::new();
    for seed in trial_seeds(cfg.seed, trials) {
        if let Some(f) = run_trial(id, cfg, seed)? {
            failures.push(f);
        }
    }
    failures.sort_by_key(|f| f.seed);
    Ok(TheoremReport {
        theorem: id,
        trials,
        failures,
        note: None,
    })
}

/// Replays one trial. `None` means the claim held.
pub fn run_trial(id: TheoremId, cfg: &GenConfig, seed: u64) -> Result<Option<Failure>, SuiteError> {
    let mut g = Generator::new(cfg, seed);
    let (inputs, witness) = trial(id, &mut g)?;
    Ok(witness.map(|w| Failure {
        seed,
        digest: digest(&inputs),
        witness: w,
    }))
}

fn digest(inputs: &[CifSet]) -> u64 {
    let mut h = FnvHasher::default();
    for s in inputs {
        s.table().hash(&mut h);
    }
    h.finish()
}

/// First index where two tables differ.
fn differ(label: &str, lhs: &CifSet, rhs: &CifSet) -> Option<String> {
    let alg = lhs.algebra();
    lhs.table().iter().zip(rhs.table()).position(|(a, b)| a != b).map(|i| {
        format!(
            "{label}: at {} left {} right {}",
            alg.vector_at(i),
            lhs.at(i),
            rhs.at(i)
        )
    })
}

/// First index where `lhs ⊆ rhs` fails.
fn not_subset(label: &str, lhs: &CifSet, rhs: &CifSet) -> Option<String> {
    let alg = lhs.algebra();
    lhs.table()
        .iter()
        .zip(rhs.table())
        .position(|(a, b)| !a.below(*b))
        .map(|i| {
            format!(
                "{label}: at {} left {} right {}",
                alg.vector_at(i),
                lhs.at(i),
                rhs.at(i)
            )
        })
}

fn witness(label: &str, w: Option<Witness>) -> Option<String> {
    w.map(|w| format!("{label}: {w}"))
}

type Trial = (Vec<CifSet>, Option<String>);

fn trial(id: TheoremId, g: &mut Generator<'_>) -> Result<Trial, SuiteError> {
    use CutKind::{Graded, Ideal, Subspace};
    let br = |a: &CifSet, b: &CifSet| bracket_product(a, b);
    Ok(match id {
        TheoremId::SumSubspace => {
            let (a, b) = g.pair(Subspace);
            let s = a.sum(&b)?;
            let w = witness("A+B", s.is_cif_subspace().witness).or_else(|| not_subset("A ⊆ A+B", &a, &s));
            (vec![a, b], w)
        }
        TheoremId::SumIdeal => {
            let (a, b) = g.pair(Ideal);
            let w = witness("A+B", a.sum(&b)?.is_cif_ideal().witness);
            (vec![a, b], w)
        }
        TheoremId::Lem1 => {
            let (a2, b2) = (g.arbitrary_set(), g.arbitrary_set());
            let (a1, b1) = (g.shrink(&a2), g.shrink(&b2));
            let w = not_subset("[A1,B1] ⊆ [A2,B2]", &br(&a1, &b1)?, &br(&a2, &b2)?);
            (vec![a1, a2, b1, b2], w)
        }
        TheoremId::Lem2 => {
            let b = g.cif_subspace();
            let (a1, a2) = (g.shrink(&b), g.shrink(&b));
            let w = not_subset("A1+A2 ⊆ B", &a1.sum(&a2)?, &b);
            (vec![a1, a2, b], w)
        }
        TheoremId::Lem3 => {
            let (a, b) = g.pair(Subspace);
            let w = witness("[A,B]", br(&a, &b)?.is_cif_subspace().witness);
            (vec![a, b], w)
        }
        TheoremId::Lem4 => {
            let (a, b) = g.pair(Graded);
            let p = br(&a, &b)?;
            let (even, odd) = bracket_graded_parts(&a, &b)?;
            let recombined = even.sum(&odd)?;
            let direct = even.is_direct_sum(&odd)?;
            let w = witness("[A,B]", p.is_cif_subspace().witness)
                .or_else(|| witness("[A,B]", p.is_z2_graded().witness))
                .or_else(|| differ("[A,B]_0 + [A,B]_1 = [A,B]", &recombined, &p))
                .or_else(|| (!direct).then(|| "[A,B]_0 ∩ [A,B]_1 is not trivial".into()));
            (vec![a, b], w)
        }
        TheoremId::Lem5 => {
            let (a, b) = g.pair(Graded);
            let w = differ("[A,B] = [B,A]", &br(&a, &b)?, &br(&b, &a)?);
            (vec![a, b], w)
        }
        TheoremId::Thrm1 => {
            let (a1, a2, b) = (g.arbitrary_set(), g.arbitrary_set(), g.arbitrary_set());
            let s = a1.sum(&a2)?;
            let w = differ("[A1+A2,B]", &br(&s, &b)?, &br(&a1, &b)?.sum(&br(&a2, &b)?)?).or(differ(
                "[B,A1+A2]",
                &br(&b, &s)?,
                &br(&b, &a1)?.sum(&br(&b, &a2)?)?,
            ));
            (vec![a1, a2, b], w)
        }
        TheoremId::Thrm2 => {
            let (a, b) = g.pair(Subspace);
            let alpha = g.scalar();
            let p = br(&a, &b)?.scale(alpha);
            let w = differ(&format!("[{alpha}A,B]"), &br(&a.scale(alpha), &b)?, &p).or(differ(
                &format!("[A,{alpha}B]"),
                &br(&a, &b.scale(alpha))?,
                &p,
            ));
            (vec![a, b], w)
        }
        TheoremId::Thrm9 => {
            let (a1, a2) = g.pair(Subspace);
            let b = g.cif_subspace();
            let (alpha, beta) = (g.scalar(), g.scalar());
            let comb = a1.scale(alpha).sum(&a2.scale(beta))?;
            let w = differ(
                &format!("[{alpha}A1+{beta}A2,B]"),
                &br(&comb, &b)?,
                &br(&a1, &b)?.scale(alpha).sum(&br(&a2, &b)?.scale(beta))?,
            )
            .or(differ(
                &format!("[B,{alpha}A1+{beta}A2]"),
                &br(&b, &comb)?,
                &br(&b, &a1)?.scale(alpha).sum(&br(&b, &a2)?.scale(beta))?,
            ));
            (vec![a1, a2, b], w)
        }
        TheoremId::Thrm3 => {
            let (a, b) = g.pair(Ideal);
            let w = witness("[A,B]", br(&a, &b)?.is_cif_ideal().witness);
            (vec![a, b], w)
        }
        TheoremId::Thrm4 => {
            let (a, b) = g.pair(Ideal);
            let phi = g.anti_hom()?;
            let w = not_subset(
                "φ([A,B]) ⊆ [φ(A),φ(B)]",
                &br(&a, &b)?.image(&phi)?,
                &br(&a.image(&phi)?, &b.image(&phi)?)?,
            );
            (vec![a, b], w)
        }
        TheoremId::PreimageBracket => {
            let (a, b) = g.pair(Ideal);
            let phi = g.anti_hom()?;
            let w = not_subset(
                "φ⁻¹([A,B]) ⊆ [φ⁻¹(A),φ⁻¹(B)]",
                &br(&a, &b)?.preimage(&phi)?,
                &br(&a.preimage(&phi)?, &b.preimage(&phi)?)?,
            );
            (vec![a, b], w)
        }
        TheoremId::Thrm15 => {
            let (a, b) = g.pair(Ideal);
            let phi = g.anti_hom()?;
            let w = differ(
                "φ⁻¹(A+B)",
                &a.sum(&b)?.preimage(&phi)?,
                &a.preimage(&phi)?.sum(&b.preimage(&phi)?)?,
            );
            (vec![a, b], w)
        }
        TheoremId::Thrm11 => {
            let b = g.cif_ideal();
            let phi = g.anti_hom()?;
            let alpha = g.scalar();
            let w = differ(
                &format!("φ⁻¹({alpha}B)"),
                &b.scale(alpha).preimage(&phi)?,
                &b.preimage(&phi)?.scale(alpha),
            );
            (vec![b], w)
        }
        TheoremId::Thrm10 => {
            let a = g.cif_ideal();
            let phi = g.anti_hom()?;
            let alpha = g.scalar();
            let w = differ(
                &format!("φ({alpha}A)"),
                &a.scale(alpha).image(&phi)?,
                &a.image(&phi)?.scale(alpha),
            );
            (vec![a], w)
        }
        TheoremId::CorImageBilinear => {
            let (a1, a2) = g.pair(Subspace);
            let b = g.cif_subspace();
            let phi = g.anti_hom()?;
            let (alpha, beta) = (g.scalar(), g.scalar());
            let comb = a1.scale(alpha).sum(&a2.scale(beta))?;
            let fb = b.image(&phi)?;
            let w = differ(
                &format!("[φ({alpha}A1+{beta}A2),φ(B)]"),
                &br(&comb.image(&phi)?, &fb)?,
                &br(&a1.image(&phi)?, &fb)?
                    .scale(alpha)
                    .sum(&br(&a2.image(&phi)?, &fb)?.scale(beta))?,
            );
            (vec![a1, a2, b], w)
        }
        TheoremId::CorPreimageBilinear => {
            let (a1, a2) = g.pair(Subspace);
            let b = g.cif_subspace();
            let phi = g.anti_hom()?;
            let (alpha, beta) = (g.scalar(), g.scalar());
            let comb = a1.scale(alpha).sum(&a2.scale(beta))?;
            let fb = b.preimage(&phi)?;
            let w = differ(
                &format!("[φ⁻¹({alpha}A1+{beta}A2),φ⁻¹(B)]"),
                &br(&comb.preimage(&phi)?, &fb)?,
                &br(&a1.preimage(&phi)?, &fb)?
                    .scale(alpha)
                    .sum(&br(&a2.preimage(&phi)?, &fb)?.scale(beta))?,
            );
            (vec![a1, a2, b], w)
        }
        TheoremId::NegControls | TheoremId::AntiIdeal => unreachable!("handled by check_theorem"),
    })
}

/// Deliberately false laws; each must fail on some trial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Control {
    /// `[A2,B2] ⊆ [A1,B1]` for `A1 ⊆ A2`, `B1 ⊆ B2`.
    ReversedLem1,
    /// Every generated CIF subspace passes `is_cif_ideal`; trips on the
    /// grading clause.
    SubspaceIsIdeal,
    /// Every graded CIF subspace is an ideal; trips on the bracket clause.
    GradedIsIdeal,
    /// `A + B ⊆ A`.
    SumInsideLeft,
    /// `[0A, B] = [A, B]`.
    ZeroScalarBracket,
}

impl Control {
    pub const ALL: [Control; 5] = [
        Control::ReversedLem1,
        Control::SubspaceIsIdeal,
        Control::GradedIsIdeal,
        Control::SumInsideLeft,
        Control::ZeroScalarBracket,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Control::ReversedLem1 => "reversed-lem-1",
            Control::SubspaceIsIdeal => "subspace-is-ideal",
            Control::GradedIsIdeal => "graded-is-ideal",
            Control::SumInsideLeft => "sum-inside-left",
            Control::ZeroScalarBracket => "zero-scalar-bracket",
        }
    }

    fn trial(self, g: &mut Generator<'_>) -> Result<Trial, SuiteError> {
        Ok(match self {
            Control::ReversedLem1 => {
                let (a2, b2) = (g.arbitrary_set(), g.arbitrary_set());
                let (a1, b1) = (g.shrink(&a2), g.shrink(&b2));
                let w = not_subset(
                    "[A2,B2] ⊆ [A1,B1]",
                    &bracket_product(&a2, &b2)?,
                    &bracket_product(&a1, &b1)?,
                );
                (vec![a1, a2, b1, b2], w)
            }
            Control::SubspaceIsIdeal => {
                let a = g.cif_subspace();
                let w = match a.is_cif_ideal().witness {
                    Some(w @ Witness::Graded { .. }) => Some(format!("A: {w}")),
                    _ => None,
                };
                (vec![a], w)
            }
            Control::GradedIsIdeal => {
                let a = g.graded_subspace();
                let w = match a.is_cif_ideal().witness {
                    Some(w @ Witness::Bracket { .. }) => Some(format!("A: {w}")),
                    _ => None,
                };
                (vec![a], w)
            }
            Control::SumInsideLeft => {
                let (a, b) = g.pair(CutKind::Subspace);
                let w = not_subset("A+B ⊆ A", &a.sum(&b)?, &a);
                (vec![a, b], w)
            }
            Control::ZeroScalarBracket => {
                let (a, b) = g.pair(CutKind::Subspace);
                let w = differ(
                    "[0A,B] = [A,B]",
                    &bracket_product(&a.scale(0), &b)?,
                    &bracket_product(&a, &b)?,
                );
                (vec![a, b], w)
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ControlOutcome {
    pub control: Control,
    /// Trials run until the first failure, or all of them.
    pub trials_run: usize,
    pub first_failure: Option<Failure>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ControlsReport {
    pub outcomes: Vec<ControlOutcome>,
}

impl ControlsReport {
    /// Whether every control failed at least once.
    pub fn all_tripped(&self) -> bool {
        self.outcomes.iter().all(|o| o.first_failure.is_some())
    }

    /// As a theorem report: one failure per control that never tripped.
    pub fn into_report(self, trials: usize) -> TheoremReport {
        let failures = self
            .outcomes
            .iter()
            .filter(|o| o.first_failure.is_none())
            .map(|o| Failure {
                seed: 0,
                digest: 0,
                witness: format!("{} held on all {} trials", o.control.as_str(), o.trials_run),
            })
            .collect();
        TheoremReport {
            theorem: TheoremId::NegControls,
            trials,
            failures,
            note: None,
        }
    }
}

/// Runs each control for up to `trials` trials, stopping at its first failure.
pub fn negative_controls(cfg: &GenConfig, trials: usize) -> Result<ControlsReport, SuiteError> {
    let seeds = trial_seeds(cfg.seed, trials);
    let mut outcomes = Vec::new();
    for control in Control::ALL {
        let mut outcome = ControlOutcome {
            control,
            trials_run: 0,
            first_failure: None,
        };
        for &seed in &seeds {
            outcome.trials_run += 1;
            let mut g = Generator::new(cfg, seed);
            let (inputs, w) = control.trial(&mut g)?;
            if let Some(w) = w {
                outcome.first_failure = Some(Failure {
                    seed,
                    digest: digest(&inputs),
                    witness: w,
                });
                break;
            }
        }
        outcomes.push(outcome);
    }
    Ok(ControlsReport { outcomes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::bracket_product_oracle;

    fn cfg_h(seed: u64) -> GenConfig {
        GenConfig::with_defaults(seed, Arc::new(standard_h()))
    }

    #[test]
    fn standard_algebras_are_valid() {
        assert!(standard_h().validate().is_valid());
        assert!(standard_dim3().validate().is_valid());
    }

    #[test]
    fn pool_validation() {
        let pool = DegreePool::default();
        assert_eq!(pool.chain().len(), 5);
        let flat = CifDegree::new(
            Degree::from_ratios(1, 2, 1, 2).unwrap(),
            Degree::from_ratios(1, 2, 1, 3).unwrap(),
        )
        .unwrap();
        let same_r = CifDegree::new(
            Degree::from_ratios(1, 2, 2, 3).unwrap(),
            Degree::from_ratios(1, 3, 1, 4).unwrap(),
        )
        .unwrap();
        assert!(DegreePool::new(&[flat]).is_ok());
        assert!(matches!(
            DegreePool::new(&[flat, same_r]),
            Err(SuiteError::InvalidPool(_))
        ));
        assert!(GenConfig::new(1, Arc::new(standard_h()), 5, pool).is_err());
    }

    #[test]
    fn generated_objects_pass_their_predicates() {
        for alg in [standard_h(), standard_dim3()] {
            let cfg = GenConfig::with_defaults(3, Arc::new(alg));
            for seed in trial_seeds(11, 40) {
                let mut g = Generator::new(&cfg, seed);
                let s = g.cif_subspace();
                assert!(s.is_cif_subspace().holds() && s.is_homogeneous().holds());
                let gr = g.graded_subspace();
                assert!(gr.is_cif_subspace().holds() && gr.is_z2_graded().holds());
                let i = g.cif_ideal();
                assert!(i.is_cif_ideal().holds());
                let (a, b) = g.pair(CutKind::Ideal);
                assert!(a.pair_homogeneous(&b).unwrap().holds());
                let arb = g.arbitrary_set();
                assert!(arb.is_homogeneous().holds());
                assert!(g.shrink(&arb).subset_of(&arb).unwrap());
                let phi = g.anti_hom().unwrap();
                let r = phi.validate();
                assert!(r.is_valid() && r.surjective);
            }
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let cfg = cfg_h(5);
        let once = Generator::new(&cfg, 99).cif_ideal();
        let again = Generator::new(&cfg, 99).cif_ideal();
        assert_eq!(once, again);
        let r1 = check_theorem(TheoremId::Thrm1, &cfg, 10).unwrap();
        let r2 = check_theorem(TheoremId::Thrm1, &cfg, 10).unwrap();
        assert_eq!(r1, r2);
    }

    #[test]
    fn ids_round_trip() {
        for id in TheoremId::CATALOG.iter().chain(&[TheoremId::AntiIdeal]) {
            assert_eq!(id.as_str().parse::<TheoremId>().unwrap(), *id);
        }
        assert!(matches!(
            "thrm-99".parse::<TheoremId>(),
            Err(SuiteError::UnknownTheorem(_))
        ));
    }

    #[test]
    fn anti_ideal_is_a_stub() {
        let r = check_theorem(TheoremId::AntiIdeal, &cfg_h(1), 10).unwrap();
        assert_eq!(r.trials, 0);
        assert_eq!(r.note, Some(ANTI_IDEAL_NOTE));
    }

    #[test]
    fn lem5_on_abelian_algebra() {
        let f3 = PrimeField::new(3).unwrap();
        let ab = Superalgebra::abelian(f3, vec![Parity::Even, Parity::Odd]).unwrap();
        let cfg = GenConfig::with_defaults(2, Arc::new(ab));
        assert!(check_theorem(TheoremId::Lem5, &cfg, 1).unwrap().passed());
    }

    #[test]
    fn quick_catalog_pass_on_h() {
        let cfg = cfg_h(21);
        for id in TheoremId::CATALOG {
            let r = check_theorem(id, &cfg, 20).unwrap();
            assert!(r.passed(), "{id}: {:?}", r.failures.first());
        }
    }

    #[test]
    fn oracle_agrees_on_generated_pairs() {
        let cfg = GenConfig::with_defaults(8, Arc::new(standard_dim3()));
        for seed in trial_seeds(8, 20) {
            let (a, b) = Generator::new(&cfg, seed).pair(CutKind::Subspace);
            assert_eq!(
                bracket_product(&a, &b).unwrap(),
                bracket_product_oracle(&a, &b).unwrap()
            );
        }
    }
}
