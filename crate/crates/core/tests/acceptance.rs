//! One line per acceptance criterion. Exits nonzero if any fails.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;

use common::goldens::{self, Checks};

const GERMS: u64 = 1000;
const PRODUCTS: u64 = 24;

fn line(ok: &mut bool, n: u8, what: &str, failures: Vec<String>) {
    if failures.is_empty() {
        println!("PASS {n} {what}");
    } else {
        *ok = false;
        println!("FAIL {n} {what}");
        for f in failures.iter().take(5) {
            println!("     {f}");
        }
    }
}

fn checks(ok: &mut bool, n: u8, what: &str, c: Checks) {
    let total = c.0.len();
    line(ok, n, &format!("{what} ({total} checks)"), c.failures());
}

fn main() -> ExitCode {
    let mut ok = true;
    checks(&mut ok, 1, "three-ball example, abstract and polynomial input", goldens::criterion_1());
    checks(&mut ok, 2, "Q-irreducible three-branch polynomial along X", goldens::criterion_2());
    checks(&mut ok, 3, "probe that is a branch of the germ", goldens::criterion_3());
    checks(&mut ok, 4, "class-dependent pair with identical germ data", goldens::criterion_4());
    checks(&mut ok, 5, "Morse point", goldens::criterion_5());

    let mut ran: BTreeMap<&str, usize> = BTreeMap::new();
    let mut failures = Vec::new();
    for seed in 0..GERMS {
        let c = common::case(seed);
        for name in common::PROPERTIES {
            match common::check(&c, name) {
                Ok(true) => *ran.entry(name).or_default() += 1,
                Ok(false) => {}
                Err(e) => failures.push(format!("{name}: {e}")),
            }
        }
    }
    let counts: Vec<String> = common::PROPERTIES.iter().map(|p| format!("{p} {}", ran.get(p).unwrap_or(&0))).collect();
    line(&mut ok, 6, &format!("properties over {GERMS} seeded germs [{}]", counts.join(", ")), failures);

    checks(
        &mut ok,
        7,
        &format!("symbolic cross-check on {} golden and {PRODUCTS} fuzzed polynomials", goldens::GOLDEN_POLYS.len()),
        goldens::criterion_7(PRODUCTS),
    );
    println!(
        "NOTE 8 the gradient inequalities themselves are not numerically measurable; \
         acceptance rests on the exact combinatorial identities above"
    );
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
