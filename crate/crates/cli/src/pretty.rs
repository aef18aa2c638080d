//! Human-readable summaries on standard error, for `--pretty`.

use std::collections::BTreeMap;

use tensorial_core::verify::{ClaimReport, Summary, Verdict};

use crate::report::{CompatOutput, NuReport, TensorReport};

fn yes_no(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

fn rows(title: &str, entries: &[(&str, String)]) {
    let width = entries.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    eprintln!("{title}");
    for (k, v) in entries {
        eprintln!("  {k:<width$}  {v}");
    }
}

pub fn tensor(r: &TensorReport) {
    let mut entries = vec![
        ("|G|", r.orders.g.to_string()),
        ("|H|", r.orders.h.to_string()),
        ("|eta(G,H)|", r.orders.eta.to_string()),
        ("|G (x) H|", r.orders.tensor.to_string()),
        ("invariants", r.tensor_invariants.to_string()),
        ("distinct g (x) h", r.tensor_set_size.to_string()),
        ("relators", r.relators.total.to_string()),
        ("decomposition", yes_no(r.decomposition.passed()).to_string()),
    ];
    if let Some(b) = &r.trivial_baseline {
        entries.push(("G^ab (x)_Z H^ab", format!("{} ({})", b.invariants, yes_no(b.agrees))));
    }
    rows(&format!("tensor {} (x) {}", r.input.g.label(), r.input.h.label()), &entries);
}

pub fn nu(r: &NuReport) {
    let o = &r.orders;
    let c = &r.checks;
    let mut entries = vec![
        ("|G|", o.group.to_string()),
        ("|nu(G)|", o.nu.to_string()),
        ("|G (x) G|", o.tensor_square.to_string()),
        ("|Delta(G)|", o.delta.to_string()),
        ("|mu(G)|", o.mu.to_string()),
        ("|G'|", o.derived.to_string()),
        ("|nu(G)'|", o.nu_derived.to_string()),
        ("G^ab", r.invariants.abelianization.to_string()),
        ("Delta(G)", r.invariants.delta.to_string()),
        ("mu(G)", r.invariants.mu.to_string()),
    ];
    if let Some(t) = &r.invariants.tensor_square {
        entries.push(("G (x) G", t.to_string()));
    }
    entries.extend([
        ("maps", yes_no(c.maps.passed()).to_string()),
        ("derived decomposition", yes_no(c.derived.passed()).to_string()),
        ("prime sets", yes_no(c.pi.passed()).to_string()),
    ]);
    if let Some(b) = &c.delta_formula {
        entries.push(("Delta formula", format!("{} ({})", b.invariants, yes_no(b.agrees))));
    }
    rows(&format!("nu({})", r.input.label()), &entries);
}

pub fn compat(r: &CompatOutput) {
    rows(
        &format!("compatibility of {} and {}", r.input.g.label(), r.input.h.label()),
        &[
            ("triples", r.triples_checked.to_string()),
            ("failures", r.failure_count.to_string()),
            ("compatible", r.compatible.to_string()),
        ],
    );
}

/// One row per instance with verdict counts, then the totals.
pub fn verify(reports: &[ClaimReport], summary: &Summary) {
    let mut by_instance: BTreeMap<&str, [usize; 3]> = BTreeMap::new();
    for r in reports {
        let counts = by_instance.entry(&r.instance).or_default();
        match r.verdict {
            Verdict::Pass => counts[0] += 1,
            Verdict::Fail => counts[1] += 1,
            Verdict::Skipped => counts[2] += 1,
        }
    }
    let width = by_instance.keys().map(|k| k.len()).max().unwrap_or(8).max(8);
    eprintln!("{:<width$}  {:>5}  {:>5}  {:>7}", "instance", "pass", "fail", "skipped");
    for (instance, [p, f, s]) in &by_instance {
        eprintln!("{instance:<width$}  {p:>5}  {f:>5}  {s:>7}");
    }
    eprintln!("{:<width$}  {:>5}  {:>5}  {:>7}", "total", summary.pass, summary.fail, summary.skipped);
    for r in reports.iter().filter(|r| r.verdict == Verdict::Fail) {
        eprintln!("FAIL {} on {}", r.claim.id(), r.instance);
    }
}
