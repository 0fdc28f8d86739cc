//! One PASS/FAIL line per acceptance criterion.
//!
//! A FAIL is a reported outcome, not a test failure: some published rows
//! disagree with exact computation and are checked as printed. The target
//! only fails if a check cannot run at all.

use std::time::Instant;

use anyhow::Result;
use cycpres::suites::{self, Tally};
use cycpres_core::abelian::closed_form::LucasSign;
use cycpres_core::subgroup::Budget;

const SHOWN_FAILURES: usize = 6;

fn report(id: u32, title: &str, start: Instant, t: &Tally, notes: &[String]) {
    let status = if t.passed() { "PASS" } else { "FAIL" };
    println!(
        "{status} criterion {id:>2}: {title} ({} / {} checks, {:.1} s)",
        t.passes,
        t.checks_run,
        start.elapsed().as_secs_f64()
    );
    for f in t.failures.iter().take(SHOWN_FAILURES) {
        println!("       {}: expected {}, computed {}", f.check, f.expected, f.computed);
    }
    if t.failures.len() > SHOWN_FAILURES {
        println!("       ... and {} more", t.failures.len() - SHOWN_FAILURES);
    }
    for n in notes.iter().chain(&t.findings) {
        println!("       note: {n}");
    }
}

fn criterion(id: u32, title: &str, f: impl FnOnce() -> Result<(Tally, Vec<String>)>) -> Result<()> {
    let start = Instant::now();
    let (t, notes) = f()?;
    report(id, title, start, &t, &notes);
    Ok(())
}

fn merged(parts: impl IntoIterator<Item = Result<Tally>>) -> Result<Tally> {
    let mut out = Tally::default();
    for p in parts {
        out.merge(p?);
    }
    Ok(out)
}

fn main() -> Result<()> {
    let cap = Budget::default().index_cap;

    criterion(1, "Γ_n(1,l) rows for 6 <= n <= 29 with the five subgroup separations", || {
        Ok((merged([suites::table2_rows(), suites::subgroup_separations(cap)])?, vec![]))
    })?;

    criterion(2, "closed-form orders against the determinant", || {
        let t = merged([suites::lucas(128, LucasSign::Minus), suites::closed_form_sweep(128, 96)])?;
        let corrected = suites::lucas(128, LucasSign::Plus)?;
        let note = format!(
            "with the sign flipped, 3(L_{{n/2}} + 1 + (-1)^{{n/2}}) agrees for {} / {} n",
            corrected.passes, corrected.checks_run
        );
        Ok((t, vec![note]))
    })?;

    criterion(3, "betti by SNF and by polynomial gcd, n <= 64", || Ok((suites::betti(64)?, vec![])))?;

    criterion(4, "girth, C(3)-T(6) and Heawood, n <= 60", || Ok((suites::small_cancellation(60)?, vec![])))?;

    criterion(5, "L-sets, 4 <= n <= 64 with at most two prime factors", || Ok((suites::lsets(64)?, vec![])))?;

    criterion(6, "isomorphism list lies in single orbits", || Ok((suites::orbit_list()?, vec![])))?;

    criterion(7, "abelianisation collisions for n < 100 are the listed families", || {
        Ok((suites::collision_scan(99)?, vec![]))
    })?;

    criterion(8, "colliding pairs for n <= 60 separated as tabulated", || {
        Ok((suites::table3_separations(cap, 60)?, vec![]))
    })?;

    criterion(9, "d(Γ_n(1,n/2-1)^ab) pattern for n <= 200", || {
        let t = suites::dgamma(200);
        let note = format!("{} mismatches with the pattern", t.findings.len());
        Ok((t, vec![note]))
    })?;

    criterion(10, "move invariance, free products, Euler characteristic, transversals", || {
        Ok((suites::properties(40)?, vec![]))
    })?;

    Ok(())
}
