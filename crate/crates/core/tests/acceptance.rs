//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Every threshold is an exact count; there are no
//! floating-point tolerances anywhere in the suite.

mod common;

use std::time::Instant;

use gf2sigma::classify::{render_csv, table, TableRow};
use gf2sigma::factorize::factor;
use gf2sigma::mersenne::enumerate;
use gf2sigma::sigma_chain::sigma_prime_power;
use gf2sigma::verify::{algebra, run_campaign, Campaign, LemmaReport, Outcome, Scope, VerdictStatus};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Expected `(p, d, [lambda1..lambda4])`.
const EXPECTED_TABLE: [(u32, u32, [usize; 4]); 13] = [
    (5, 100, [4, 0, 0, 0]),
    (7, 100, [0, 0, 2, 2]),
    (11, 100, [2, 0, 2, 0]),
    (13, 100, [0, 2, 0, 0]),
    (17, 100, [2, 0, 0, 0]),
    (19, 100, [0, 0, 0, 0]),
    (23, 100, [0, 0, 0, 0]),
    (29, 100, [4, 0, 2, 0]),
    (53, 60, [2, 0, 4, 0]),
    (59, 60, [0, 0, 0, 0]),
    (61, 60, [2, 2, 0, 0]),
    (67, 60, [0, 0, 0, 0]),
    (71, 60, [0, 2, 0, 0]),
];
const CENSUS: [(u32, usize); 2] = [(100, 226), (60, 138)];
const CAMPAIGN_PRIMES: [u32; 4] = [5, 7, 11, 13];
const CAMPAIGN_DEGREE: u32 = 40;
const ORACLE_SAMPLES: usize = 2000;
const ORACLE_MAX_DEGREE: u32 = 20;
const RANDOM_TUPLES: usize = 1000;
const GEOMETRIC_MAX_DEGREE: u32 = 40;
const GEOMETRIC_MAX_N: u64 = 30;
const SEED_A: u64 = 0xC0FFEE;
const SEED_B: u64 = 0x5EED_0002;

struct Harness {
    failed: usize,
}

impl Harness {
    fn report(&mut self, id: &str, ok: bool, detail: impl AsRef<str>) {
        if !ok {
            self.failed += 1;
        }
        println!("{} [{id}] {}", if ok { "PASS" } else { "FAIL" }, detail.as_ref());
    }
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
        .install(f)
}

/// Table rows in expected order, one batch per degree bound.
fn full_table(seed: u64) -> Vec<TableRow> {
    let mut rows = Vec::new();
    for d in [100, 60] {
        let primes: Vec<u32> = EXPECTED_TABLE.iter().filter(|r| r.1 == d).map(|r| r.0).collect();
        rows.extend(table(&primes, d, seed, None).expect("table"));
    }
    rows
}

fn campaign(seed: u64) -> Campaign {
    run_campaign(&CAMPAIGN_PRIMES, CAMPAIGN_DEGREE, seed, None).expect("campaign")
}

fn census(h: &mut Harness) {
    for (d, want) in CENSUS {
        let got = enumerate(5, d).expect("enumerate").len();
        h.report("1 census", got == want, format!("5 <= deg <= {d}: {got} Mersenne primes (expected {want})"));
    }
}

fn table_rows(h: &mut Harness, rows: &[TableRow]) {
    for (row, &(p, d, want)) in rows.iter().zip(&EXPECTED_TABLE) {
        let census = CENSUS.iter().find(|c| c.0 == d).unwrap().1;
        let ok = row.p == p && row.d == d && row.lambda == want && row.m_count == census;
        h.report(
            "2 table",
            ok,
            format!("p={p} d={d}: got {:?} of {} (expected {want:?} of {census})", row.lambda, row.m_count),
        );
    }
    if rows.len() != EXPECTED_TABLE.len() {
        h.report("2 table", false, format!("{} rows computed", rows.len()));
    }
}

fn theorem(h: &mut Harness, c: &Campaign) {
    let not_excluded = c.outcomes.iter().filter(|o| !o.record.in_any()).count();
    let holds = c.count(VerdictStatus::Holds);
    let ok = c.is_complete() && c.violations() == 0 && holds == not_excluded;
    h.report(
        "3 theorem",
        ok,
        format!(
            "p in {CAMPAIGN_PRIMES:?}, deg <= {CAMPAIGN_DEGREE}: {} instances, {holds} holds, {} excluded, {} VIOLATED, {} errors",
            c.outcomes.len(),
            c.count(VerdictStatus::Excluded),
            c.violations(),
            c.errors.len()
        ),
    );
}

fn oracle(h: &mut Harness) {
    let irreducibles = common::irreducibles_up_to(ORACLE_MAX_DEGREE / 2);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED_A);
    let mut mismatches = 0;
    for _ in 0..ORACLE_SAMPLES {
        let f = rng.gen_range(1u64..1 << (ORACLE_MAX_DEGREE + 1));
        let got: Vec<(u64, u32)> = factor(&common::to_poly(f), SEED_A)
            .expect("factor")
            .factors()
            .iter()
            .map(|(p, k)| (common::to_bits(p), *k))
            .collect();
        if got != common::trial_factor(f, &irreducibles) {
            mismatches += 1;
            eprintln!("mismatch on {f:#x}");
        }
    }
    h.report(
        "4 factor oracle",
        mismatches == 0,
        format!("{ORACLE_SAMPLES} random polynomials of degree <= {ORACLE_MAX_DEGREE}: {mismatches} mismatches"),
    );
}

fn lemma_lines(h: &mut Harness, label: &str, rep: &LemmaReport) {
    let failures: Vec<&str> = rep.failures().map(|e| e.name).collect();
    let unconditional = rep.entries.iter().filter(|e| e.scope == Scope::Unconditional);
    let checks: usize = unconditional.clone().map(|e| e.instances).sum();
    h.report(
        "5 lemmas",
        failures.is_empty() && checks > 0,
        format!(
            "{label}: {} unconditional identities, {checks} checks, failures: {failures:?}",
            unconditional.count()
        ),
    );
    for e in &rep.entries {
        let outcome = match e.outcome {
            Outcome::Pass => "pass",
            Outcome::Fail => "FAIL",
            Outcome::Vacuous => "vacuous",
        };
        let scope = if e.scope == Scope::Conditional { "conditional" } else { "unconditional" };
        println!("      {:<48} {scope:<13} {outcome:<7} checked={} vacuous={}", e.name, e.instances, e.vacuous);
    }
}

fn lemmas(h: &mut Harness, c: &Campaign) {
    lemma_lines(h, "campaign instances", &c.report);
    println!("      all-Mersenne antecedent held on {} instances", c.all_mersenne_instances());
    let cases: Vec<String> = c.case_counts().iter().map(|(k, v)| format!("{k}={v}")).collect();
    println!("      case tags: {}", cases.join(" "));
    let random = algebra::random_suite(RANDOM_TUPLES, SEED_A).expect("random suite");
    lemma_lines(h, &format!("{RANDOM_TUPLES} random tuples per identity"), &random);
}

fn geometric(h: &mut Harness) {
    let ms = enumerate(2, GEOMETRIC_MAX_DEGREE).expect("enumerate");
    let mut bad = 0;
    for m in &ms {
        let mut m1 = m.poly().clone();
        m1.flip(0);
        for n in 0..=GEOMETRIC_MAX_N {
            let mut top = m.poly().pow(n + 1);
            top.flip(0);
            if &m1 * &sigma_prime_power(m, n).expect("sigma") != top {
                bad += 1;
            }
        }
    }
    h.report(
        "6 geometric",
        bad == 0,
        format!("{} Mersenne primes of degree <= {GEOMETRIC_MAX_DEGREE}, n <= {GEOMETRIC_MAX_N}: {bad} failures", ms.len()),
    );
}

fn main() {
    let mut h = Harness { failed: 0 };
    let start = Instant::now();

    census(&mut h);

    let rows_a = in_pool(1, || full_table(SEED_A));
    table_rows(&mut h, &rows_a);

    let campaign_a = in_pool(1, || campaign(SEED_A));
    theorem(&mut h, &campaign_a);

    oracle(&mut h);
    lemmas(&mut h, &campaign_a);
    geometric(&mut h);

    let rows_b = in_pool(2, || full_table(SEED_B));
    let csv_same = render_csv(&rows_a) == render_csv(&rows_b);
    h.report("7 determinism", csv_same, "table output, seed/threads (0xC0FFEE, 1) vs (0x5EED0002, 2)");
    let lines_a = campaign_a.verdict_lines().expect("verdicts");
    let lines_b = in_pool(2, || campaign(SEED_B)).verdict_lines().expect("verdicts");
    h.report(
        "7 determinism",
        lines_a == lines_b,
        format!("campaign verdict stream ({} bytes), same seed/thread pairs", lines_a.len()),
    );

    println!(
        "acceptance: {} failing line(s), {:.1}s",
        h.failed,
        start.elapsed().as_secs_f64()
    );
    if h.failed > 0 {
        std::process::exit(1);
    }
}
