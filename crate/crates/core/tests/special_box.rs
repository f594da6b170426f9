//! Cross-checks of the classification search: the pruned enumerator against
//! a brute-force scan, golden-file stability, and convention independence.

use std::collections::BTreeSet;

use specialis::monodromy::{for_each_valid_datum, units, MonodromyDatum};
use specialis::special::{
    classification_report, enumerate_special, is_special, shimura_dim,
    shimura_dim_opposite_convention, ReportFormat, SearchBounds,
};

fn bounds(m_max: u64, n_max: usize) -> SearchBounds {
    SearchBounds::new(m_max, n_max, None).unwrap()
}

/// Brute force: visit every valid datum (no pruning whatsoever), apply the
/// criterion, collect canonical forms.
fn brute_force_classes(m_max: u64, n_max: usize) -> BTreeSet<MonodromyDatum> {
    let mut classes = BTreeSet::new();
    for_each_valid_datum(m_max, n_max, |d| {
        if d.branch_count() >= 4 {
            let r = is_special(d).unwrap();
            if r.special {
                classes.insert(r.datum);
            }
        }
    });
    classes
}

#[test]
fn pruned_search_matches_brute_force() {
    let brute = brute_force_classes(20, 8);
    let pruned: BTreeSet<MonodromyDatum> = enumerate_special(&bounds(20, 8))
        .into_iter()
        .map(|r| r.datum)
        .collect();
    assert_eq!(brute, pruned);
    assert_eq!(pruned.len(), 20);
}

#[test]
fn growing_the_box_finds_nothing_new() {
    let reference: Vec<MonodromyDatum> = enumerate_special(&bounds(24, 8))
        .into_iter()
        .map(|r| r.datum)
        .collect();
    let grown: Vec<MonodromyDatum> = enumerate_special(&bounds(36, 10))
        .into_iter()
        .map(|r| r.datum)
        .collect();
    assert_eq!(reference, grown);
}

#[test]
fn dimension_inequality_small_box() {
    for_each_valid_datum(12, 6, |d| {
        let dim = shimura_dim(&d.eigenspace_dims());
        assert!(
            dim + 3 >= d.branch_count() as u64,
            "dimension inequality fails for {d}: dim = {dim}"
        );
    });
}

#[test]
fn criterion_is_convention_independent() {
    for_each_valid_datum(14, 6, |d| {
        let sig = d.eigenspace_dims();
        assert_eq!(shimura_dim(&sig), shimura_dim_opposite_convention(&sig));
    });
}

#[test]
fn verdict_constant_on_unit_orbits() {
    // every unit translate of a special family is special, of a non-special
    // family non-special
    let mut checked = 0u64;
    for_each_valid_datum(10, 6, |d| {
        if d.branch_count() < 4 {
            return;
        }
        let verdict = is_special(d).unwrap().special;
        let m = d.m();
        for u in units(m) {
            let translated: Vec<u64> = d.local_monodromies().iter().map(|&v| v * u % m).collect();
            let t = MonodromyDatum::new(m, translated).unwrap();
            assert_eq!(is_special(&t).unwrap().special, verdict);
        }
        checked += 1;
    });
    assert!(checked > 1000);
}

#[test]
fn golden_twenty_families() {
    let rendered = classification_report(&bounds(24, 8), ReportFormat::Json);
    let golden = include_str!("data/twenty_families.json");
    assert_eq!(rendered, golden, "classification drifted from the golden file");
}

#[test]
fn reports_are_byte_stable() {
    for format in [ReportFormat::Table, ReportFormat::Json, ReportFormat::Csv] {
        let a = classification_report(&bounds(12, 6), format);
        let b = classification_report(&bounds(12, 6), format);
        assert_eq!(a, b);
    }
}
