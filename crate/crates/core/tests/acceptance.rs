//! Acceptance suite: one line per criterion, each with its runtime limit.
//!
//! Runs with a custom harness so the lines appear in `cargo test` output
//! without `--nocapture`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use perfect_codes::codes::DEFAULT_BUDGET;
use perfect_codes::constructions::build_dihedral;
use perfect_codes::perm::Perm;
use perfect_codes::verify::{self, CheckReport};

/// Rows that fail for a mathematical reason rather than a defect: with
/// `f = 1` the subgroup `<R(1)>` is the whole translation group, which is
/// `A` itself and normal in `G`, so the normal-closure obstruction cannot
/// fire (and `A` is in fact a perfect code of the pair).
const UNATTAINABLE: &[&str] = &[
    "agammal:3,1 obstruction",
    "agammal:5,1 obstruction",
    "agammal:7,1 obstruction",
];

/// Independent oracle: tries every one of the `|A|^index` choices of one
/// element per left coset of `A` and tests `XH = HX^-1` with bitmasks.
fn dihedral_brute_force_has_transversal(n: usize) -> bool {
    let spec = build_dihedral(n).unwrap();
    let inst = &spec.instance;
    let elems: Vec<Perm> = inst.g.elements().to_vec();
    assert!(elems.len() <= 64);
    let pos = |p: &Perm| elems.iter().position(|q| q == p).unwrap();
    let h: Vec<&Perm> = inst.h.elements().iter().collect();
    let a: Vec<&Perm> = inst.a.elements().iter().collect();
    let mut left = vec![0u64; elems.len()];
    let mut right = vec![0u64; elems.len()];
    for (i, x) in elems.iter().enumerate() {
        let xi = x.inverse();
        for t in &h {
            left[i] |= 1 << pos(&x.then(t));
            right[i] |= 1 << pos(&t.then(&xi));
        }
    }
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    let mut covered = 0u64;
    for (i, x) in elems.iter().enumerate() {
        if covered >> i & 1 == 1 {
            continue;
        }
        let c: Vec<usize> = a.iter().map(|y| pos(&x.then(y))).collect();
        for &j in &c {
            covered |= 1 << j;
        }
        cosets.push(c);
    }
    let k = cosets.len();
    let radix = a.len();
    let total = radix.pow(k as u32);
    (0..total).any(|code| {
        let (mut l, mut r, mut c) = (0u64, 0u64, code);
        for coset in &cosets {
            let x = coset[c % radix];
            c /= radix;
            l |= left[x];
            r |= right[x];
        }
        l == r
    })
}

struct Outcome {
    passed: bool,
    summary: String,
    unexpected: bool,
}

fn judge(report: &CheckReport, elapsed: Duration, limit: Duration, extra: Option<(bool, String)>) -> Outcome {
    let bad: Vec<&str> = report.failures().map(|r| r.key.as_str()).collect();
    let known: Vec<&str> = bad.iter().copied().filter(|k| UNATTAINABLE.contains(k)).collect();
    let other: Vec<String> = report
        .failures()
        .filter(|r| !UNATTAINABLE.contains(&r.key.as_str()))
        .map(|r| format!("{} [{:?}: {}]", r.key, r.status, r.detail))
        .collect();
    let in_time = elapsed <= limit;
    let (extra_ok, extra_msg) = extra.unwrap_or((true, String::new()));
    let passed = bad.is_empty() && in_time && extra_ok;
    let mut summary = format!("{} rows, {:.1}s of {}s", report.rows.len(), elapsed.as_secs_f64(), limit.as_secs());
    if !extra_msg.is_empty() {
        summary += &format!("; {extra_msg}");
    }
    if !known.is_empty() {
        summary += &format!("; unattainable as stated: {}", known.join(", "));
    }
    if !other.is_empty() {
        summary += &format!("; failing: {}", other.join(", "));
    }
    if !in_time {
        summary += "; over the time limit";
    }
    Outcome { passed, summary, unexpected: !other.is_empty() || !in_time || !extra_ok }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed())
}

fn main() -> ExitCode {
    if std::env::args().any(|a| a == "--list") {
        // keeps `cargo test -- --list` style invocations harmless
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let budget = DEFAULT_BUDGET;
    let secs = Duration::from_secs;
    let mut lines = Vec::new();
    let mut unexpected = false;
    let mut record = |id: usize, title: &str, o: Outcome| {
        let tag = if o.passed { "PASS" } else { "FAIL" };
        let line = format!("criterion {id} [{tag}] {title}: {}", o.summary);
        println!("{line}");
        unexpected |= o.unexpected;
        lines.push(line);
    };

    let (r, t) = timed(|| verify::subgroup_equivalence(budget).unwrap());
    record(1, "subgroup code conditions agree on every subgroup", judge(&r, t, secs(300), None));

    let (r, t) = timed(|| {
        let report = verify::dihedral_counterexamples(&[1, 2, 3, 4, 5], budget).unwrap();
        let brute: Vec<bool> = (1..=5).map(dihedral_brute_force_has_transversal).collect();
        (report, brute)
    });
    let (report, brute) = r;
    let brute_ok = brute.iter().all(|&b| !b);
    record(
        2,
        "dihedral triples satisfy the necessary condition yet have no transversal",
        judge(&report, t, secs(120), Some((brute_ok, format!("brute force over 4^(2n) transversals finds none: {brute_ok}")))),
    );

    let (r, t) = timed(|| verify::field_c2_counterexamples(&[2, 3], &[2], budget).unwrap());
    record(3, "characteristic-two field triples are obstructed", judge(&r, t, secs(600), None));

    let (r, t) = timed(|| verify::agammal_counterexamples(&[(3, 3), (5, 3), (3, 1), (5, 1), (7, 1)], budget).unwrap());
    record(4, "odd-order field triples are obstructed", judge(&r, t, secs(300), None));

    let (r, t) = timed(|| verify::sym_chain_codes(6, budget).unwrap());
    record(5, "chain transversals certify Sym(m) in (Sym(n), Sym(l))", judge(&r, t, secs(180), None));

    let (r, t) = timed(|| verify::intransitive_and_affine(7, &[3, 5, 7], &[5, 7], budget).unwrap());
    record(6, "intransitive, affine and semiregular involution witnesses", judge(&r, t, secs(300), None));

    let (r, t) = timed(|| verify::maximal_survey(&[2, 3, 4, 5, 6], budget).unwrap());
    let stretch = verify::maximal_survey(&[7], budget).map(|r| r.passed()).unwrap_or(false);
    record(
        7,
        "every catalogued maximal subgroup of Sym(n), n <= 6, is a code",
        judge(&r, t, secs(600), Some((true, format!("n = 7 stretch passed: {stretch}")))),
    );

    let (r, t) = timed(|| verify::random_pair_equivalence(200, 2024, budget).unwrap());
    record(8, "connection-set search agrees with transversal search on random pairs", judge(&r, t, secs(600), None));

    if unexpected {
        eprintln!("acceptance: unexpected failures");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
