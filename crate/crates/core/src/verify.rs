//! The verification suite behind `gaussform verify` and `selftest`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::corpus::{curated, fixture, random_braid_link};
use crate::homfly::{homfly, substitute, verify_skein_identities_with};
use crate::invariants::Evaluator;
use crate::linkcode::LinkCode;
use crate::matchcount::Catalog;
use crate::polyalg::{homfly_series, rat};
use crate::surgery::AlphaRule;
use crate::weightcheck::{check_table, sun_basis};

/// One failed check.
#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub check: String,
    pub diagram: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub diagrams: usize,
    pub checks: usize,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn merge(mut self, other: SuiteReport) -> SuiteReport {
        self.diagrams += other.diagrams;
        self.checks += other.checks;
        self.failures.extend(other.failures);
        self
    }

    fn fail(&mut self, check: &str, l: &LinkCode, detail: String) {
        self.failures.push(Failure {
            check: check.to_string(),
            diagram: l.to_string().trim_end().replace('\n', " | "),
            detail,
        });
    }

    pub fn to_json(&self) -> Value {
        json!({
            "diagrams": self.diagrams,
            "checks": self.checks,
            "passed": self.passed(),
            "failures": self.failures.iter().map(|f| json!({
                "check": f.check, "diagram": f.diagram, "detail": f.detail,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} diagrams, {} checks, {} failures\n",
            self.diagrams,
            self.checks,
            self.failures.len()
        );
        for f in &self.failures {
            out.push_str(&format!("FAIL {} on [{}]: {}\n", f.check, f.diagram, f.detail));
        }
        out
    }
}

/// Master oracle, skein identities at every crossing and alpha-choice
/// independence on one diagram.
pub fn check_diagram(cat: &Catalog, l: &LinkCode) -> SuiteReport {
    let mut rep = SuiteReport { diagrams: 1, ..Default::default() };
    let ev = Evaluator::new(cat);
    let report = match ev.all(l) {
        Ok(r) => r,
        Err(e) => {
            rep.checks += 1;
            rep.fail("invariants", l, e.to_string());
            return rep;
        }
    };

    rep.checks += 1;
    match (homfly_series(&report), substitute(&homfly(l))) {
        (Ok(a), Ok(b)) if a == b => {}
        (Ok(a), Ok(b)) => rep.fail("master oracle", l, format!("series {a} but HOMFLY gives {b}")),
        (a, b) => rep.fail("master oracle", l, format!("{:?} / {:?}", a.err(), b.err())),
    }

    rep.checks += 1;
    match ev.with_rule(AlphaRule::ReverseFirstUnder).all(l) {
        Ok(r) if r == report => {}
        Ok(_) => rep.fail("alpha choice", l, "invariants depend on the descending reference".into()),
        Err(e) => rep.fail("alpha choice", l, e.to_string()),
    }

    for a in l.crossing_ids() {
        rep.checks += 1;
        match verify_skein_identities_with(&ev, l, a) {
            Ok(s) if s.all_zero() => {}
            Ok(s) => {
                let bad: Vec<String> =
                    s.values.iter().filter(|(_, v)| *v != rat(0, 1)).map(|(n, v)| format!("{n}={v}")).collect();
                rep.fail("skein identities", l, format!("crossing {a}: {}", bad.join(", ")));
            }
            Err(e) => rep.fail("skein identities", l, e.to_string()),
        }
    }
    rep
}

/// The published values for the six-crossing example knot.
pub fn check_worked_example(cat: &Catalog) -> SuiteReport {
    let k = fixture("six_two");
    let mut rep = SuiteReport { diagrams: 1, checks: 1, ..Default::default() };
    let want = [
        ("v2", rat(-1, 6) + rat(-4, 1)),
        ("v3.1", rat(8, 1)),
        ("v4.1", rat(1, 360) + rat(34, 3)),
        ("v4.2", rat(-1, 360) + rat(38, 3)),
    ];
    match Evaluator::new(cat).all(&k) {
        Ok(r) => {
            let got = [&r.v2[&0], &r.v3_1[&0], &r.v4_1[&0], &r.v4_2[&0]];
            for ((name, w), g) in want.iter().zip(got) {
                if w != g {
                    rep.fail("worked example", &k, format!("{name} = {g}, expected {w}"));
                }
            }
        }
        Err(e) => rep.fail("worked example", &k, e.to_string()),
    }
    rep
}

/// Pure-chord weight table against su(2) and su(3) brute force.
pub fn check_weights() -> SuiteReport {
    let mut rep = SuiteReport::default();
    let empty = LinkCode::empty();
    for n in [2, 3] {
        rep.checks += 1;
        let r = sun_basis(n).orthonormality_residual();
        if r >= 1e-12 {
            rep.fail("su(N) basis", &empty, format!("N={n}: residual {r:e}"));
        }
    }
    for c in check_table(&[2, 3]) {
        rep.checks += 1;
        if c.error() >= 1e-9 || c.numeric.im.abs() >= 1e-9 {
            rep.fail("weight table", &empty, format!("{} at N={}: {} vs {}", c.key, c.n, c.numeric, c.table));
        }
    }
    rep
}

/// `size` random braid closures (at most 8 crossings, 3 components).
pub fn random_corpus(seed: u64, size: usize) -> Vec<LinkCode> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..size).map(|_| random_braid_link(&mut rng, 8, 3)).collect()
}

/// Everything: worked example, weights, and the per-diagram checks on the
/// curated set plus a random corpus.
pub fn run_suite(cat: &Catalog, seed: u64, size: usize) -> SuiteReport {
    let mut corpus: Vec<LinkCode> = curated().into_iter().map(|(_, l)| l).collect();
    corpus.extend(random_corpus(seed, size));
    let per: Vec<SuiteReport> = corpus.par_iter().map(|l| check_diagram(cat, l)).collect();
    per.into_iter().fold(check_worked_example(cat).merge(check_weights()), SuiteReport::merge)
}

/// Fast deterministic checks: worked example, weights, curated diagrams.
pub fn selftest(cat: &Catalog) -> SuiteReport {
    run_suite(cat, 0, 0)
}
