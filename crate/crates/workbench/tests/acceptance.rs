//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! All comparisons are exact (rational equality, table equality, subset
//! order). The only numeric tolerances are wall-clock budgets, pinned below.

use std::panic;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use cifsuper_core::theoremsuite::{
    check_theorem, negative_controls, standard_dim3, standard_h, trial_seeds, CutKind, GenConfig, Generator, TheoremId,
    DEFAULT_TRIALS_DIM3, DEFAULT_TRIALS_H,
};
use cifsuper_core::{
    bracket_product, bracket_product_oracle, CifDegree, CifSet, Degree, Parity, PrimeField, Superalgebra,
};
use cifsuper_workbench::{parse_spec, parse_spec_bytes, serialize};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const ORACLE_PAIRS_H: usize = 500;
const ORACLE_PAIRS_DIM3: usize = 100;
const ORACLE_BUDGET: Duration = Duration::from_secs(60);
const CATALOG_BUDGET: Duration = Duration::from_secs(600);
const CONTROL_TRIALS: usize = 200;
const REMARK_PAIRS: usize = 200;
const FUZZ_CASES: usize = 1000;
const ROUND_TRIPS: usize = 200;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn h() -> Arc<Superalgebra> {
    Arc::new(standard_h())
}

fn dim3() -> Arc<Superalgebra> {
    Arc::new(standard_dim3())
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut mismatches = 0;
    let mut checked = 0;
    for (alg, n, seed) in [(h(), ORACLE_PAIRS_H, 101), (dim3(), ORACLE_PAIRS_DIM3, 102)] {
        let cfg = GenConfig::with_defaults(seed, alg);
        for s in trial_seeds(seed, n) {
            let (a, b) = Generator::new(&cfg, s).pair(CutKind::Subspace);
            assert!(a.pair_homogeneous(&b).unwrap().holds());
            if bracket_product(&a, &b).unwrap() != bracket_product_oracle(&a, &b).unwrap() {
                mismatches += 1;
            }
            checked += 1;
        }
    }
    let took = start.elapsed();
    outcome(
        mismatches == 0 && took < ORACLE_BUDGET,
        format!(
            "{checked} pairs, {mismatches} mismatches, {:.2?} (budget {:?})",
            took, ORACLE_BUDGET
        ),
    )
}

fn theorem_catalog() -> Outcome {
    let start = Instant::now();
    let mut failed = Vec::new();
    for (alg, trials, seed, label) in [
        (h(), DEFAULT_TRIALS_H, 201, "H"),
        (dim3(), DEFAULT_TRIALS_DIM3, 202, "dim3"),
    ] {
        let cfg = GenConfig::with_defaults(seed, alg);
        for id in TheoremId::CATALOG {
            let r = check_theorem(id, &cfg, trials).unwrap();
            if !r.passed() {
                failed.push(format!("{id}@{label}: {}", r.failures[0].witness));
            }
        }
    }
    let took = start.elapsed();
    let detail = format!(
        "{} ids x ({DEFAULT_TRIALS_H} on H + {DEFAULT_TRIALS_DIM3} on dim3), {} failing, {:.2?} (budget {:?}){}",
        TheoremId::CATALOG.len(),
        failed.len(),
        took,
        CATALOG_BUDGET,
        failed.first().map(|f| format!("; first: {f}")).unwrap_or_default()
    );
    outcome(failed.is_empty() && took < CATALOG_BUDGET, detail)
}

fn controls() -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    for (alg, seed, label) in [(h(), 301, "H"), (dim3(), 302, "dim3")] {
        let cfg = GenConfig::with_defaults(seed, alg);
        let r = negative_controls(&cfg, CONTROL_TRIALS).unwrap();
        pass &= r.all_tripped();
        for o in &r.outcomes {
            let at = o
                .first_failure
                .as_ref()
                .map_or("never".to_string(), |_| format!("trial {}", o.trials_run));
            lines.push(format!("{}@{label}: {at}", o.control.as_str()));
        }
    }
    outcome(pass, lines.join(", "))
}

fn remark_bounds() -> Outcome {
    let mut violations = 0;
    let mut checks = 0usize;
    for (alg, seed) in [(h(), 401), (dim3(), 402)] {
        let cfg = GenConfig::with_defaults(seed, alg.clone());
        for (t, s) in trial_seeds(seed, REMARK_PAIRS).into_iter().enumerate() {
            let mut g = Generator::new(&cfg, s);
            let (a, b) = if t % 2 == 0 {
                (g.arbitrary_set(), g.arbitrary_set())
            } else {
                g.pair(CutKind::Subspace)
            };
            let p = bracket_product(&a, &b).unwrap();
            for x in alg.vectors() {
                for y in alg.vectors() {
                    let z = alg.bracket(&x, &y).unwrap();
                    let (dx, dy, dz) = (a.degree(&x).unwrap(), b.degree(&y).unwrap(), p.degree(&z).unwrap());
                    // explicit componentwise min / max on the rationals
                    let lo = Degree::new(dx.mem().r.min(dy.mem().r), dx.mem().w.min(dy.mem().w));
                    let hi = Degree::new(dx.non().r.max(dy.non().r), dx.non().w.max(dy.non().w));
                    let ok = lo.r <= dz.mem().r && lo.w <= dz.mem().w && dz.non().r <= hi.r && dz.non().w <= hi.w;
                    violations += usize::from(!ok);
                    checks += 1;
                }
            }
        }
    }
    outcome(
        violations == 0,
        format!(
            "{} pairs per algebra, {checks} (x, y) checks, {violations} violations",
            REMARK_PAIRS
        ),
    )
}

fn conventions() -> Outcome {
    let mut bad = 0;
    let mut results = 0;
    let mut zero_scalar_bad = 0;
    for (alg, seed) in [(h(), 501), (dim3(), 502)] {
        let cfg = GenConfig::with_defaults(seed, alg.clone());
        for s in trial_seeds(seed, 100) {
            let mut g = Generator::new(&cfg, s);
            let (a, b) = g.pair(CutKind::Ideal);
            let phi = g.anti_hom().unwrap();
            let alpha = g.scalar();
            let outs = [
                bracket_product(&a, &b).unwrap(),
                bracket_product_oracle(&a, &b).unwrap(),
                a.sum(&b).unwrap(),
                a.scale(alpha),
                a.image(&phi).unwrap(),
                a.preimage(&phi).unwrap(),
                a.intersection(&b).unwrap(),
            ];
            for o in &outs {
                results += 1;
                if o.at(0).mem() != Degree::TOP || o.at(0).non() != Degree::BOTTOM {
                    bad += 1;
                }
            }
            if a.scale(0) != CifSet::trivial(alg.clone()) {
                zero_scalar_bad += 1;
            }
        }
    }
    outcome(
        bad == 0 && zero_scalar_bad == 0,
        format!("{results} results, {bad} unpinned at zero, {zero_scalar_bad} nontrivial 0·A"),
    )
}

/// Sets on the 9 vectors of `F_3^2` taking one value `level` on a support
/// pattern and `(BOTTOM; TOP)` elsewhere: all 2^8 patterns.
fn pattern_sets(alg: &Arc<Superalgebra>, level: CifDegree) -> Vec<CifSet> {
    (0u32..256)
        .map(|mask| {
            let table = (0..9)
                .map(|i| match i {
                    0 => CifDegree::PINNED,
                    _ if mask & (1 << (i - 1)) != 0 => level,
                    _ => CifDegree::ABSENT,
                })
                .collect();
            CifSet::from_table(alg.clone(), table).unwrap()
        })
        .collect()
}

fn abelian_degenerate() -> Outcome {
    let f3 = PrimeField::new(3).unwrap();
    let level = CifDegree::new(
        Degree::from_ratios(1, 2, 1, 3).unwrap(),
        Degree::from_ratios(1, 3, 1, 2).unwrap(),
    )
    .unwrap();
    let mut pairs = 0usize;
    let mut bad = 0usize;
    for parity in [[0, 0], [0, 1], [1, 0], [1, 1]] {
        let parity = parity.iter().map(|&b| Parity::from_bit(b).unwrap()).collect();
        let alg = Arc::new(Superalgebra::abelian(f3, parity).unwrap());
        let trivial = CifSet::trivial(alg.clone());
        let sets = pattern_sets(&alg, level);
        for a in &sets {
            for b in &sets {
                pairs += 1;
                if bracket_product(a, b).unwrap() != trivial {
                    bad += 1;
                }
            }
        }
    }
    outcome(
        bad == 0,
        format!("{pairs} pattern pairs over 4 parity assignments, {bad} nontrivial"),
    )
}

fn random_document(rng: &mut StdRng) -> String {
    let p = [2u8, 3, 5][rng.gen_range(0..3)];
    let mut doc = format!("field {p}\n");
    let n_spaces = rng.gen_range(1..=2);
    let mut dims = Vec::new();
    for s in 0..n_spaces {
        let dim = rng.gen_range(1..=3usize);
        let parity: Vec<u8> = (0..dim).map(|_| rng.gen_range(0..2)).collect();
        doc += &format!("space S{s} dim {dim} parity {}\n", join(&parity));
        // [f, f] = e on the first even/odd pair, when present
        let even = parity.iter().position(|&b| b == 0);
        let odd = parity.iter().position(|&b| b == 1);
        if let (Some(e), Some(f), true) = (even, odd, rng.gen_bool(0.5)) {
            let mut c = vec![0u8; dim];
            c[e] = 1;
            doc += &format!("bracket S{s} {f} {f} -> {}\n", join(&c));
        }
        dims.push(dim);
    }
    let units = ["0", "1", "1/2", "1/3", "2/3", "1/4", "3/4", "1/5"];
    let degree = |rng: &mut StdRng| loop {
        let pick = |rng: &mut StdRng| units[rng.gen_range(0..units.len())];
        let (r, w, rh, wh) = (pick(rng), pick(rng), pick(rng), pick(rng));
        let val = |u: &str| u.parse::<cifsuper_core::Unit>().unwrap();
        if val(r).fits_with(val(rh)) {
            return format!("{r} {w} {rh} {wh}");
        }
    };
    for k in 0..rng.gen_range(0..=3) {
        let s = rng.gen_range(0..n_spaces);
        doc += &format!("cifset C{k} on S{s} default {}\n", degree(rng));
        let mut seen = std::collections::HashSet::new();
        for _ in 0..rng.gen_range(0..5) {
            let v: Vec<u8> = (0..dims[s]).map(|_| rng.gen_range(0..p)).collect();
            if v.iter().all(|&c| c == 0) || !seen.insert(v.clone()) {
                continue;
            }
            doc += &format!("entry C{k} {} deg {}\n", join(&v), degree(rng));
        }
    }
    for m in 0..rng.gen_range(0..=2) {
        let s = rng.gen_range(0..n_spaces);
        let dim = dims[s];
        let c = rng.gen_range(0..p);
        let rows: Vec<String> = (0..dim)
            .map(|i| {
                let mut r = vec![0u8; dim];
                r[i] = c;
                join(&r)
            })
            .collect();
        doc += &format!("map M{m} S{s} -> S{s} kind plain rows {}\n", rows.join(" / "));
    }
    doc
}

fn join(v: &[u8]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

fn mutate(rng: &mut StdRng, doc: &str) -> Vec<u8> {
    let mut bytes = doc.as_bytes().to_vec();
    for _ in 0..rng.gen_range(1..=4) {
        if bytes.is_empty() {
            break;
        }
        let i = rng.gen_range(0..bytes.len());
        match rng.gen_range(0..4) {
            0 => bytes[i] = rng.gen(),
            1 => {
                bytes.remove(i);
            }
            2 => bytes.insert(i, b" /#-0123456789\n\xff"[rng.gen_range(0..16)]),
            _ => {
                let j = rng.gen_range(i..bytes.len());
                let chunk = bytes[i..j].to_vec();
                bytes.splice(i..i, chunk);
            }
        }
    }
    bytes
}

fn parser_and_format() -> Outcome {
    let mut rng = StdRng::seed_from_u64(701);
    let mut crashes = 0;
    let mut accepted = 0;
    let prev = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    for i in 0..FUZZ_CASES {
        let input: Vec<u8> = if i % 4 == 0 {
            (0..rng.gen_range(0..200)).map(|_| rng.gen()).collect()
        } else {
            let doc = random_document(&mut rng);
            mutate(&mut rng, &doc)
        };
        match panic::catch_unwind(|| parse_spec_bytes(&input).is_ok()) {
            Ok(ok) => accepted += usize::from(ok),
            Err(_) => crashes += 1,
        }
    }
    panic::set_hook(prev);

    let mut round_trip_bad = 0;
    for _ in 0..ROUND_TRIPS {
        let doc = random_document(&mut rng);
        let ws = parse_spec(&doc).unwrap_or_else(|e| panic!("generated document rejected: {e}\n{doc}"));
        let text = serialize(&ws);
        if parse_spec(&text).as_ref() != Ok(&ws) {
            round_trip_bad += 1;
        }
    }

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.cif");
    std::fs::write(&path, include_str!("data/h.cif")).unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_cifsuper"))
            .args(["compute", "bracket"])
            .arg(&path)
            .args(["--left", "A", "--right", "N", "--format", "json"])
            .output()
            .unwrap()
    };
    let (first, second) = (run(), run());
    let identical = first.status.success() && !first.stdout.is_empty() && first.stdout == second.stdout;

    outcome(
        crashes == 0 && round_trip_bad == 0 && identical,
        format!(
            "{FUZZ_CASES} fuzz cases ({accepted} accepted), {crashes} crashes; {ROUND_TRIPS} round trips, {round_trip_bad} mismatches; JSON identical across runs: {identical}"
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 oracle equivalence", oracle_equivalence),
        ("2 theorem catalog", theorem_catalog),
        ("3 negative controls", controls),
        ("4 remark bounds", remark_bounds),
        ("5 conventions", conventions),
        ("6 abelian degenerate case", abelian_degenerate),
        ("7 parser and format", parser_and_format),
    ];
    let mut all = true;
    for (name, f) in criteria {
        let o = f();
        all &= o.pass;
        println!(
            "criterion {name}: {} ({})",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    if !all {
        std::process::exit(1);
    }
}
