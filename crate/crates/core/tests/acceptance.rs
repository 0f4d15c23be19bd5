//! Acceptance run. Every test prints one `PASS` or `FAIL` line with the
//! number of exact values matched and the time taken against its bound.
//! The order-15 Steiner run is `#[ignore]`d; run it with
//! `cargo test --release --test acceptance -- --ignored`.

mod support;

use std::io::Write;
use std::sync::{Mutex, OnceLock};
use std::time::{Duration, Instant};

use lsq::census::{Census, CensusOptions, CountKind, SymmetricMethod, Table, TableName};
use lsq::generate::{admissible_autotopism_shapes, GenOptions, gen_symmetric_with_autotopism, shape_representative};
use lsq::verify::{self, Report, VerifyOptions};
use lsq::PropertyFilter;
use num_bigint::BigUint;

/// Largest allowed difference between a computed and a published count.
const TOLERANCE: u32 = 0;

const MINUTE: u64 = 60;
const HOUR: u64 = 3600;

fn census() -> &'static Mutex<Census> {
    static CENSUS: OnceLock<Mutex<Census>> = OnceLock::new();
    CENSUS.get_or_init(|| Mutex::new(Census::new(CensusOptions::default())))
}

/// Compared values of one criterion.
#[derive(Default)]
struct Tally {
    matched: u64,
    mismatches: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn count(&mut self, what: &str, got: &BigUint, want: &BigUint) {
        let diff = if got > want { got - want } else { want - got };
        if diff <= BigUint::from(TOLERANCE) {
            self.matched += 1;
        } else {
            self.mismatches.push(format!("{what}: got {got}, want {want}"));
        }
    }

    fn number(&mut self, what: &str, got: impl Into<BigUint>, want: impl Into<BigUint>) {
        self.count(what, &got.into(), &want.into());
    }

    fn text(&mut self, what: &str, got: &str, want: &str) {
        match (got.parse::<BigUint>(), want.parse::<BigUint>()) {
            (Ok(g), Ok(w)) => self.count(what, &g, &w),
            _ => self.mismatches.push(format!("{what}: got {got:?}, want {want:?}")),
        }
    }

    fn outcome(&mut self, what: &str, r: support::Outcome) {
        match r {
            Ok(k) if k > 0 => {
                self.matched += 1;
                self.notes.push(format!("{what}: {k}"));
            }
            Ok(_) => self.mismatches.push(format!("{what}: no instances")),
            Err(e) => self.mismatches.push(format!("{what}: {e}")),
        }
    }

    fn report(&mut self, what: &str, r: &Report) {
        if r.passed() {
            self.matched += r.checks.len() as u64;
            self.notes.push(format!("{what}: {} checks, {} instances", r.checks.len(), r.instances()));
        } else {
            for c in r.failed() {
                self.mismatches.push(format!("{what}: {} [{}] {}/{}", c.claim, c.instance, c.failures, c.instances));
            }
            for e in &r.errors {
                self.mismatches.push(format!("{what}: {e}"));
            }
            if r.checks.is_empty() {
                self.mismatches.push(format!("{what}: no checks"));
            }
        }
    }

    fn error(&mut self, what: &str, e: impl std::fmt::Display) {
        self.mismatches.push(format!("{what}: {e}"));
    }
}

/// Runs one criterion, prints its line and fails the test if it failed.
fn criterion(name: &str, bound: Duration, body: impl FnOnce(&mut Tally)) {
    let start = Instant::now();
    let mut t = Tally::default();
    body(&mut t);
    let took = start.elapsed();
    let in_time = took <= bound;
    let pass = t.mismatches.is_empty() && t.matched > 0 && in_time;
    let mut line = format!(
        "ACCEPTANCE {} {name}: {} exact, {} wrong, {:.1} s (bound {} s)",
        if pass { "PASS" } else { "FAIL" },
        t.matched,
        t.mismatches.len(),
        took.as_secs_f64(),
        bound.as_secs()
    );
    if !in_time {
        line.push_str(" [over time bound]");
    }
    for m in t.mismatches.iter().take(10) {
        line.push_str(&format!("\n    mismatch {m}"));
    }
    for n in &t.notes {
        line.push_str(&format!("\n    {n}"));
    }
    // Written to the process stderr so the line survives output capture.
    let _ = writeln!(std::io::stderr(), "{line}");
    assert!(pass, "{line}");
}

/// Builds `name` up to `max` and compares it with `want`, one row per order
/// with the table's count columns.
fn table(t: &mut Tally, name: TableName, max: usize, want: &[&[&str]]) {
    table_from(t, name, max, want, &mut census().lock().unwrap());
}

fn table_from(t: &mut Tally, name: TableName, max: usize, want: &[&[&str]], census: &mut Census) {
    let built = Table::build(name, max, census);
    let table = match built {
        Ok(tb) => tb,
        Err(e) => return t.error(name.as_str(), e),
    };
    let cols = table.columns();
    for w in want.iter().filter(|w| w[0].parse::<usize>().unwrap() <= max) {
        match table.rows.iter().find(|r| r[0] == w[0]) {
            None => t.error(&format!("{name} n={}", w[0]), "row missing"),
            Some(r) => {
                for k in 1..w.len() {
                    t.text(&format!("{name} n={} {}", w[0], cols[k]), &r[k], w[k]);
                }
            }
        }
    }
}

// Published rows: order, then the count columns of the CLI table.

const TABSYM: &[&[&str]] = &[
    &["2", "1", "1", "1"],
    &["3", "1", "1", "1"],
    &["4", "2", "2", "4"],
    &["5", "1", "1", "6"],
    &["6", "6", "6", "456"],
    &["7", "7", "7", "6240"],
    &["8", "423", "415", "10936320"],
    &["9", "3460", "3460", "1225566720"],
];

const COMLOOP: &[&[&str]] = &[
    &["2", "1", "1"],
    &["3", "3", "1"],
    &["4", "7", "2"],
    &["5", "11", "1"],
    &["6", "491", "8"],
    &["7", "6381", "17"],
    &["8", "10940111", "2265"],
    &["9", "1225586965", "30583"],
];

const SEMI: &[&[&str]] = &[
    &["2", "1", "1", "1", "2"],
    &["3", "2", "1", "1", "3"],
    &["4", "3", "2", "2", "18"],
    &["5", "4", "2", "2", "120"],
    &["6", "9", "7", "7", "2880"],
    &["7", "41", "33", "28", "140256"],
    &["8", "595", "557", "366", "20782080"],
    &["9", "26620", "26511", "13899", "9569532672"],
];

const DIAG: &[&[&str]] = &[
    &["2", "0", "0", "0", "0"],
    &["3", "2", "1", "1", "3"],
    &["4", "1", "1", "1", "2"],
    &["5", "1", "1", "1", "30"],
    &["6", "0", "0", "0", "0"],
    &["7", "7", "5", "5", "3000"],
    &["8", "2", "2", "2", "20160"],
    &["9", "112", "91", "76", "19571328"],
];

const IDEM: &[&[&str]] = &[
    &["3", "1", "1", "1", "1"],
    &["4", "1", "1", "1", "2"],
    &["6", "0", "0", "0", "0"],
    &["7", "4", "3", "3", "480"],
    &["9", "20", "19", "17", "2274048"],
];

const SEMILOOP: &[&[&str]] = &[
    &["2", "1", "1", "1", "1"],
    &["4", "1", "1", "1", "1"],
    &["5", "1", "1", "1", "2"],
    &["7", "0", "0", "0", "0"],
    &["8", "4", "4", "3", "480"],
    &["10", "20", "20", "18", "2274048"],
];

const TOTSYM: &[&[&str]] = &[
    &["2", "1", "1", "2"],
    &["3", "2", "1", "3"],
    &["4", "2", "2", "16"],
    &["5", "1", "1", "30"],
    &["6", "3", "2", "480"],
    &["7", "3", "3", "1290"],
    &["8", "13", "13", "163200"],
    &["9", "12", "8", "471240"],
    &["10", "139", "139", "386400000"],
    &["11", "65", "65", "2269270080"],
    &["12", "25894", "25888", "12238171545600"],
];

const STS: &[&[&str]] = &[
    &["3", "1", "1"],
    &["7", "1", "30"],
    &["9", "1", "840"],
    &["13", "2", "1197504000"],
    &["15", "80", "60281712691200"],
];

const UNIPSYM: &[&[&str]] = &[
    &["2", "1", "1", "1"],
    &["4", "1", "1", "1"],
    &["6", "1", "1", "1"],
    &["8", "7", "6", "6"],
];

#[test]
fn symmetric_census_to_order_8_by_both_methods() {
    criterion("symmetric squares n<=8, brute and autotopism methods", Duration::from_secs(2 * HOUR), |t| {
        table(t, TableName::Tabsym, 8, TABSYM);
        let mut c = census().lock().unwrap();
        for n in 1..=8 {
            let (brute, auto) = match (c.symmetric_by(n, SymmetricMethod::Brute), c.symmetric_by(n, SymmetricMethod::Autotopism)) {
                (Ok(b), Ok(a)) => (b, a),
                (Err(e), _) | (_, Err(e)) => return t.error(&format!("census n={n}"), e),
            };
            let what = |k: &str| format!("n={n} {k} autotopism vs brute");
            t.count(&what("reduced"), &auto.reduced, &brute.reduced);
            t.count(&what("rrs classes"), &auto.rrs_classes(), &brute.rrs_classes());
            t.count(&what("species"), &auto.species, &brute.species);
            t.count(&what("isomorphism classes"), &auto.isomorphism_classes(), &brute.isomorphism_classes());
            t.count(&what("loops"), &auto.loop_classes(), &brute.loop_classes());
        }
    });
}

#[test]
fn autotopism_shapes_to_order_9() {
    criterion("autotopism shape counts and symmetric totals n<=9", Duration::from_secs(HOUR), |t| {
        let mut c = census().lock().unwrap();
        let (mut squares_match, mut shapes) = (0, 0);
        for n in 2..=9 {
            let s = match c.symmetric_by(n, SymmetricMethod::Autotopism) {
                Ok(s) => s,
                Err(e) => return t.error(&format!("n={n}"), e),
            };
            let listed = admissible_autotopism_shapes(n).unwrap();
            t.number(&format!("n={n} shape rows"), s.shapes.len(), listed.len());
            for sh in &s.shapes {
                let what = format!("n={n} ({}, {}) rrs classes", sh.shape.alpha, sh.shape.gamma);
                t.number(&what, sh.rrs_classes, sh.shape.published);
                shapes += 1;
                squares_match += usize::from(sh.squares == sh.shape.published);
            }
            if n == 9 {
                t.text("n=9 rrs classes", &s.rrs_classes().to_string(), TABSYM[7][1]);
                t.text("n=9 species", &s.species.to_string(), TABSYM[7][2]);
                t.text("n=9 reduced", &s.reduced.to_string(), TABSYM[7][3]);
                t.text("n=9 isomorphism classes", &s.isomorphism_classes().to_string(), COMLOOP[7][1]);
                t.text("n=9 loops", &s.loop_classes().to_string(), COMLOOP[7][2]);
            }
        }
        drop(c);
        // The published zero lies at order 11; that shape alone is enumerated.
        for sh in admissible_autotopism_shapes(11).unwrap().into_iter().filter(|s| s.published == 0) {
            let (a, g) = shape_representative(&sh);
            match gen_symmetric_with_autotopism(11, &a, &g) {
                Ok(v) => t.number(&format!("n=11 ({}, {}) squares", sh.alpha, sh.gamma), v.len(), 0u32),
                Err(e) => t.error("n=11 zero shape", e),
            }
        }
        t.notes.push(format!(
            "published column = rrs classes on {shapes}/{shapes} shapes; = squares with the autotopism on {squares_match}/{shapes}"
        ));
    });
}

#[test]
fn commutative_loops_to_order_8() {
    criterion("symmetric isomorphism classes and commutative loops n<=8", Duration::from_secs(2 * HOUR), |t| {
        table(t, TableName::Comloop, 8, COMLOOP);
    });
}

#[test]
fn semisymmetric_to_order_9() {
    criterion("semisymmetric squares n<=9", Duration::from_secs(HOUR), |t| {
        table(t, TableName::Semi, 9, SEMI);
    });
}

#[test]
fn diagonal_idempotent_reduced_semisymmetric() {
    criterion("diagonal/idempotent n<=9, reduced n<=10 semisymmetric squares", Duration::from_secs(HOUR), |t| {
        table(t, TableName::Diag, 9, DIAG);
        table(t, TableName::Idem, 9, IDEM);
        table(t, TableName::Semiloop, 10, SEMILOOP);
    });
}

#[test]
fn totally_symmetric_to_order_12() {
    criterion("totally symmetric squares n<=12", Duration::from_secs(HOUR), |t| {
        table(t, TableName::Totsym, 12, TOTSYM);
    });
}

#[test]
fn steiner_triple_systems_to_order_13() {
    criterion("idempotent totally symmetric squares n<=13", Duration::from_secs(HOUR), |t| {
        table(t, TableName::Sts, 13, &STS[..4]);
    });
}

#[test]
#[ignore = "extended run, about 20 minutes"]
fn extended_steiner_triple_systems_order_15() {
    criterion("idempotent totally symmetric squares n=15 (extended)", Duration::from_secs(2 * HOUR), |t| {
        // Four screening stages: at depth 1 the run takes hours.
        let gen = GenOptions::default().with_screen_depth(4);
        let mut c = Census::new(CensusOptions { gen, ..CensusOptions::default() });
        table_from(t, TableName::Sts, 15, &STS[4..], &mut c);
    });
}

#[test]
fn unipotent_symmetric_order_8() {
    criterion("reduced unipotent symmetric squares n<=8, derived and direct", Duration::from_secs(HOUR), |t| {
        table(t, TableName::Unipsym, 8, UNIPSYM);
        let filter: PropertyFilter = "symmetric+reduced+unipotent".parse().unwrap();
        let mut c = census().lock().unwrap();
        for n in [2, 4, 6, 8] {
            let (derived, direct) = match (c.derived(n, &filter), c.unipotent_symmetric(n)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return t.error(&format!("n={n}"), e),
            };
            for k in [CountKind::Isomorphism, CountKind::RrsIsotopism, CountKind::Species] {
                match (derived.get(k), direct.get(k)) {
                    (Some(a), Some(b)) => t.count(&format!("n={n} {} derived vs direct", k.as_str()), a, b),
                    _ => t.error(&format!("n={n} {}", k.as_str()), "count missing"),
                }
            }
        }
    });
}

#[test]
fn property_suites() {
    criterion("property suites", Duration::from_secs(10 * MINUTE), |t| {
        t.outcome("action laws and canonical invariance, random cases", support::action_laws(10_000, 0x5eed));
        for n in 1..=4 {
            t.outcome(&format!("orbit oracle n={n}, squares x relations"), support::canonical_forms_match_orbits(n));
            t.outcome(&format!("stabiliser oracle n={n}"), support::stabilisers_match_brute_force(n));
        }
        let opts = VerifyOptions { totally_symmetric_max: 11, ..VerifyOptions::default() };
        for s in [verify::Suite::LemmaObvious, verify::Suite::Autotopism, verify::Suite::Neccon, verify::Suite::TotallySymmetric] {
            t.report(s.as_str(), &verify::run_suite(s, &opts));
        }
    });
}

#[test]
fn fixture_suite() {
    criterion("fixtures", Duration::from_secs(MINUTE), |t| {
        t.report("sade", &verify::verify_sade());
        t.report("fixture pairs", &verify::verify_fixture_pairs());
    });
}

#[test]
fn catalog_determinism() {
    criterion("catalog determinism n<=7", Duration::from_secs(HOUR), |t| {
        for n in 1..=7 {
            t.outcome(&format!("n={n} categories"), support::catalogs_are_deterministic(n));
        }
    });
}
