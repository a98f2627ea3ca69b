//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p ssred-core --test acceptance`.

mod common;

use std::collections::{BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ssred_core::exactalg::{spin, FieldSpec, Matrix, Subspace};
use ssred_core::gitoracle::{GroupTable, OracleLimits};
use ssred_core::matrep::{
    composition_series, is_semisimple, iso_class_multiset, verify_witness, Representation, SeedOrder,
};
use ssred_core::ssred::{
    clifford_joint_ss, conjugacy_certificate, is_gcr_over_k, levi_descent, optimal_flag, semisimplify,
};
use ssred_core::Result;

use common::*;

const SEEDS: [u64; 4] = [0, 1, 2, 3];
const RANDOM_PER_GROUP: usize = 200;
const KERNEL_CASES: usize = 10_000;
const MAX_WEIGHT: i64 = 4;
const ORACLE_BUDGET: Duration = Duration::from_secs(300);

#[derive(Clone)]
struct Case {
    label: String,
    rep: Representation,
}

struct Tables(HashMap<(usize, u32), GroupTable>);

impl Tables {
    fn new() -> Self {
        let mut t = HashMap::new();
        for (n, q) in [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (3, 3)] {
            t.insert((n, q), GroupTable::new(n, q, OracleLimits::default()).expect("table fits the default limits"));
        }
        Tables(t)
    }

    fn of(&self, rep: &Representation) -> &GroupTable {
        let FieldSpec::Prime(q) = rep.field() else { panic!("oracle needs a finite field") };
        &self.0[&(rep.n(), q)]
    }
}

/// Outcome of one criterion.
struct Outcome {
    passed: usize,
    total: usize,
    note: String,
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { passed: 0, total: 0, note: String::new(), failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.total += 1;
        if ok {
            self.passed += 1;
        } else {
            self.failures.push(what());
        }
    }

    fn record_result(&mut self, label: &str, r: Result<bool>) {
        match r {
            Ok(ok) => self.record(ok, || label.to_string()),
            Err(e) => self.record(false, || format!("{label}: error {e}")),
        }
    }

    fn ok(&self) -> bool {
        self.failures.is_empty() && self.total > 0
    }
}

fn corpus(tables: &Tables) -> Vec<Case> {
    let mut cases = Vec::new();
    for q in [2, 3] {
        for (i, g) in tables.0[&(2, q)].elements().iter().enumerate() {
            let rep = Representation::new(FieldSpec::Prime(q), vec![g.clone()]).unwrap();
            cases.push(Case { label: format!("GL2(F{q}) element #{i}"), rep });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for (n, q) in [(2, 3), (3, 2)] {
        let elements = tables.0[&(n, q)].elements();
        let field = FieldSpec::Prime(q);
        for i in 0..RANDOM_PER_GROUP {
            let k = rng.gen_range(1..=3);
            let rep = if i % 2 == 0 {
                let gens = (0..k).map(|_| elements.choose(&mut rng).unwrap().clone()).collect();
                Representation::new(field, gens).unwrap()
            } else {
                random_parabolic_rep(&mut rng, field, n, k)
            };
            cases.push(Case { label: format!("random GL{n}(F{q}) #{i} ({k} gens)"), rep });
        }
    }
    cases
}

fn describe(rep: &Representation) -> String {
    rep.generators().iter().map(|g| g.to_string().replace('\n', " ")).collect::<Vec<_>>().join(" ; ")
}

/// Oracle equivalence of the algebraic G-cr test.
fn criterion_1(corpus: &[Case], tables: &Tables) -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    for c in corpus {
        let r = (|| Ok(is_gcr_over_k(&c.rep)?.is_semisimple() == tables.of(&c.rep).oracle_gcr(&c.rep)?))();
        out.record_result(&c.label, r);
    }
    let elapsed = start.elapsed();
    out.record(elapsed < ORACLE_BUDGET, || format!("runtime {elapsed:?} exceeds {ORACLE_BUDGET:?}"));
    out.note = format!("runtime {:.1}s", elapsed.as_secs_f64());
    out
}

/// Exactly one accessible closed orbit.
fn criterion_2(corpus: &[Case], tables: &Tables) -> Outcome {
    let mut out = Outcome::new();
    for c in corpus {
        let r = tables.of(&c.rep).accessible_closed_orbits(&c.rep.generic_tuple()).map(|s| s.len() == 1);
        out.record_result(&c.label, r);
    }
    out
}

/// Semisimplifications for different seeds are conjugate, by certificate and by the oracle.
fn criterion_3(corpus: &[Case], tables: &Tables) -> Outcome {
    let mut out = Outcome::new();
    for c in corpus {
        let r = (|| {
            let results = SEEDS.iter().map(|&s| semisimplify(&c.rep, &SeedOrder::new(s))).collect::<Result<Vec<_>>>()?;
            let table = tables.of(&c.rep);
            let base = results[0].ss_representation().generic_tuple();
            for other in &results[1..] {
                if !conjugacy_certificate(&results[0], other)?.verify() {
                    return Ok(false);
                }
                if !table.same_orbit(&base, &other.ss_representation().generic_tuple())? {
                    return Ok(false);
                }
            }
            Ok(true)
        })();
        out.record_result(&c.label, r);
    }
    out
}

/// Composition factors agree across seeds.
fn criterion_4(corpus: &[Case]) -> Outcome {
    let mut out = Outcome::new();
    for c in corpus {
        let r = (|| {
            let base = iso_class_multiset(&composition_series(&c.rep, &SeedOrder::new(SEEDS[0]))?)?;
            for &s in &SEEDS[1..] {
                let other = iso_class_multiset(&composition_series(&c.rep, &SeedOrder::new(s))?)?;
                if other.total() != base.total() || !base.equivalent(&other)? || !other.equivalent(&base)? {
                    return Ok(false);
                }
            }
            Ok(true)
        })();
        out.record_result(&c.label, r);
    }
    out
}

/// The composition flag is a minimal preserved flag with irreducible factors.
fn criterion_5(corpus: &[Case], tables: &Tables) -> Outcome {
    let mut out = Outcome::new();
    for c in corpus {
        let r = (|| {
            let table = tables.of(&c.rep);
            let preserved = table.preserved_flags(&c.rep.generic_tuple())?;
            for &s in &SEEDS {
                let series = composition_series(&c.rep, &SeedOrder::new(s))?;
                if !preserved.contains(&series.flag) {
                    return Ok(false);
                }
                if preserved.iter().any(|f| f != &series.flag && series.flag.is_refined_by(f)) {
                    return Ok(false);
                }
                for (factor, witness) in series.factors.iter().zip(&series.witnesses) {
                    if !verify_witness(factor, witness) {
                        return Ok(false);
                    }
                    if !tables.of(factor).invariant_subspaces(&factor.generic_tuple())?.is_empty() {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        })();
        out.record_result(&c.label, r);
    }
    out
}

/// Normal pairs `H ◁ M`: `M` semisimple forces `H` semisimple, and both limits along `M`'s flag are closed.
fn criterion_6(corpus: &[Case], tables: &Tables) -> Outcome {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut m_semisimple = 0;
    let mut enlarged = 0;
    for c in corpus {
        let r = (|| {
            let table = tables.of(&c.rep);
            let normalizer = table.normalizer(c.rep.generators())?;
            let extra = rng.gen_range(1..=2);
            let mut gens = c.rep.generators().to_vec();
            gens.extend(normalizer.choose_multiple(&mut rng, extra).cloned());
            let m = Representation::new(c.rep.field(), gens)?;
            if table.generated_subgroup(m.generators())?.len() > table.generated_subgroup(c.rep.generators())?.len() {
                enlarged += 1;
            }
            let m_ss = is_gcr_over_k(&m)?.is_semisimple();
            let h_ss = is_gcr_over_k(&c.rep)?.is_semisimple();
            if m_ss {
                m_semisimple += 1;
                if !h_ss {
                    return Ok(false);
                }
            }
            let joint = clifford_joint_ss(&m, &c.rep, &SeedOrder::new(0))?;
            let lambda = &joint.m.cocharacter;
            if joint.h_limits != lambda.limit_all(c.rep.generators())? {
                return Ok(false);
            }
            let m_lim = joint.m.ss_representation();
            let h_lim = Representation::new(c.rep.field(), joint.h_limits.clone())?;
            Ok(joint.m.semisimple_certificate.verify(&m_lim)?
                && joint.h_certificate.is_semisimple()
                && joint.h_certificate.verify(&h_lim)?
                && table.is_cochar_closed(&m_lim.generic_tuple())?
                && table.is_cochar_closed(&h_lim.generic_tuple())?)
        })();
        out.record_result(&c.label, r);
    }
    out.note = format!("{m_semisimple} with M semisimple, {enlarged} with M strictly larger than H");
    out
}

/// Block-diagonal embeddings: full and per-block verdicts agree.
fn criterion_7(tables: &Tables) -> Outcome {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let layouts: [&[usize]; 5] = [&[1, 1], &[1, 2], &[2, 1], &[1, 1, 1], &[2, 2]];
    let fields = [FieldSpec::Prime(2), FieldSpec::Prime(3), FieldSpec::Rational];
    for i in 0..60 {
        let field = fields[i % 3];
        let sizes = layouts[(i / 3) % layouts.len()];
        let k = rng.gen_range(1..=2);
        let blocks: Vec<Representation> = sizes
            .iter()
            .map(|&d| if rng.gen_bool(0.5) { random_parabolic_rep(&mut rng, field, d, k) } else { random_rep(&mut rng, field, d, k) })
            .collect();
        let gens = (0..k)
            .map(|j| Matrix::block_diagonal(field, &blocks.iter().map(|b| b.generators()[j].clone()).collect::<Vec<_>>()))
            .collect();
        let rep = Representation::new(field, gens).unwrap();
        let label = format!("{field:?} blocks {sizes:?}: {}", describe(&rep));
        let r = (|| {
            let report = levi_descent(&rep, sizes)?;
            let mut ok = report.agrees() && report.full == report.blocks.iter().all(|&b| b);
            if field.is_finite() && rep.n() <= 3 {
                ok &= tables.of(&rep).oracle_gcr(&rep)? == report.full;
                for (b, verdict) in blocks.iter().zip(&report.blocks) {
                    ok &= tables.of(b).oracle_gcr(b)? == *verdict;
                }
            }
            Ok(ok)
        })();
        out.record_result(&label, r);
    }
    out
}

/// Optimal flags: nonempty, normalizer stable, closed limits.
fn criterion_8(corpus: &[Case], tables: &Tables) -> Outcome {
    let mut out = Outcome::new();
    let mut considered = 0;
    for c in corpus {
        if is_gcr_over_k(&c.rep).map(|s| s.is_semisimple()).unwrap_or(false) {
            continue;
        }
        considered += 1;
        let table = tables.of(&c.rep);
        let report = match optimal_flag(&c.rep, MAX_WEIGHT) {
            Ok(r) => r,
            Err(e) => {
                out.record(false, || format!("{}: (a) error {e}", c.label));
                continue;
            }
        };
        out.record(!report.argmax_flags.is_empty(), || format!("{}: (a) empty argmax", c.label));
        let r = (|| {
            let argmax: BTreeSet<_> = report.argmax_flags.iter().cloned().collect();
            for x in table.normalizer(c.rep.generators())? {
                let moved: BTreeSet<_> = argmax.iter().map(|f| f.image(&x)).collect();
                if moved != argmax {
                    return Ok(false);
                }
            }
            Ok(true)
        })();
        out.record_result(&format!("{}: (b) argmax not normalizer-stable", c.label), r);
        for m in report.argmax() {
            let r = (|| {
                let lim = Representation::new(c.rep.field(), m.cocharacter.limit_all(c.rep.generators())?)?;
                let cert = is_semisimple(&lim)?;
                Ok(cert.is_semisimple() && cert.verify(&lim)? && table.is_cochar_closed(&lim.generic_tuple())?)
            })();
            out.record_result(&format!("{}: (c) limit along {:?} not closed", c.label, m.weights), r);
        }
    }
    out.note = format!("{considered} non-semisimple reps, B = {MAX_WEIGHT}");
    out
}

fn rational_case(rows: &[Vec<i64>], check: impl Fn(&Matrix) -> bool) -> Result<bool> {
    let q = FieldSpec::Rational;
    let rep = Representation::from_i64(q, &[rows.to_vec()])?;
    let ss = semisimplify(&rep, &SeedOrder::new(0))?;
    let lim = ss.ss_representation();
    let again = semisimplify(&lim, &SeedOrder::new(1))?;
    let fixed = semisimplify(&lim, &SeedOrder::new(0))?;
    Ok(ss.semisimple_certificate.is_semisimple()
        && ss.semisimple_certificate.verify(&lim)?
        && ss.cocharacter.limit_all(rep.generators())? == ss.ss_generators
        && fixed.ss_generators == ss.ss_generators
        && conjugacy_certificate(&ss, &again)?.verify()
        && check(&ss.ss_generators[0]))
}

/// The rational pipeline on explicit examples.
fn criterion_9() -> Outcome {
    let mut out = Outcome::new();
    let q = FieldSpec::Rational;
    let id2 = Matrix::identity(q, 2);
    out.record_result("2x2 unipotent", rational_case(&[vec![1, 1], vec![0, 1]], |g| g == &id2));
    let id3 = Matrix::identity(q, 3);
    let two = id3.scale(&q.from_i64(2));
    let check = |g: &Matrix| (&(g - &id3) * &(g - &two)).is_zero() && g.trace() == q.from_i64(4) && g != &id3;
    out.record_result("3x3 invariant line", rational_case(&[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 2]], check));
    // A conjugate with large fractions still lands on the same class.
    let r = (|| {
        let g = Matrix::from_rows(
            q,
            3,
            &[
                vec![q.parse_scalar("123456789/1000003")?, q.from_i64(1), q.from_i64(0)],
                vec![q.from_i64(0), q.parse_scalar("-5/7")?, q.from_i64(2)],
                vec![q.from_i64(1), q.from_i64(0), q.parse_scalar("31/3")?],
            ],
        );
        let base = Representation::from_i64(q, &[vec![vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 2]]])?;
        let rep = base.conjugate(&g)?;
        let a = semisimplify(&base, &SeedOrder::new(0))?;
        let b = semisimplify(&rep, &SeedOrder::new(2))?;
        Ok(conjugacy_certificate(&a, &b)?.verify() && b.semisimple_certificate.verify(&b.ss_representation())?)
    })();
    out.record_result("3x3 conjugated by a rational matrix", r);
    out
}

/// Randomized kernel checks.
fn criterion_10() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut counts = [0usize; 3];
    for i in 0..KERNEL_CASES {
        let field = FIELDS[i % FIELDS.len()];
        let n = rng.gen_range(1..=4);

        let cols = rng.gen_range(1..=5);
        let m = random_matrix(&mut rng, field, n, cols);
        let r = m.rref();
        let ok = r.matrix.rref().matrix == r.matrix && Subspace::row_space(&m) == Subspace::row_space(&r.matrix);
        out.record(ok, || format!("rref case {i}: {m}"));
        counts[0] += ok as usize;

        let ops: Vec<Matrix> = (0..rng.gen_range(1..=3)).map(|_| random_matrix(&mut rng, field, n, n)).collect();
        let v = random_matrix(&mut rng, field, 1, n).row(0).to_vec();
        let s = spin(field, n, std::slice::from_ref(&v), &ops);
        let ok = s.contains_vector(&v) && ops.iter().all(|op| s.is_invariant(op));
        out.record(ok, || format!("spin case {i}"));
        counts[1] += ok as usize;

        let lambda = random_cocharacter(&mut rng, field, n);
        let g = random_parabolic(&mut rng, &lambda);
        let h = random_parabolic(&mut rng, &lambda);
        let ok = (|| -> Result<bool> {
            Ok(lambda.limit(&(&g * &h))? == &lambda.limit(&g)? * &lambda.limit(&h)?)
        })()
        .unwrap_or(false);
        out.record(ok, || format!("cLambda case {i}"));
        counts[2] += ok as usize;
    }
    out.note = format!("rref {}/{KERNEL_CASES}, spin {}/{KERNEL_CASES}, cLambda {}/{KERNEL_CASES}", counts[0], counts[1], counts[2]);
    out
}

fn run(number: usize, name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|panic| {
        let msg = panic
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        let mut o = Outcome::new();
        o.record(false, || format!("panicked: {msg}"));
        o
    });
    let tag = if outcome.ok() { "PASS" } else { "FAIL" };
    let note = if outcome.note.is_empty() { String::new() } else { format!("; {}", outcome.note) };
    println!(
        "[{tag}] criterion {number:>2} {name}: {}/{} ({:.1}s{note})",
        outcome.passed,
        outcome.total,
        start.elapsed().as_secs_f64()
    );
    for f in outcome.failures.iter().take(10) {
        println!("       finding: {f}");
    }
    if outcome.failures.len() > 10 {
        println!("       ... {} more", outcome.failures.len() - 10);
    }
    outcome.ok()
}

fn main() {
    let tables = Tables::new();
    let corpus = corpus(&tables);
    println!("corpus: {} representations over F_2 and F_3", corpus.len());
    let results = [
        run(1, "oracle equivalence", || criterion_1(&corpus, &tables)),
        run(2, "rational Hilbert-Mumford", || criterion_2(&corpus, &tables)),
        run(3, "uniqueness up to conjugacy", || criterion_3(&corpus, &tables)),
        run(4, "Jordan-Hoelder", || criterion_4(&corpus)),
        run(5, "minimal parabolic and irreducible factors", || criterion_5(&corpus, &tables)),
        run(6, "normal subgroup descent", || criterion_6(&corpus, &tables)),
        run(7, "Levi ascent and descent", || criterion_7(&tables)),
        run(8, "optimal destabilizing flags", || criterion_8(&corpus, &tables)),
        run(9, "exact rational pipeline", criterion_9),
        run(10, "kernel correctness", criterion_10),
    ];
    let failed = results.iter().filter(|&&ok| !ok).count();
    println!("acceptance: {} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
