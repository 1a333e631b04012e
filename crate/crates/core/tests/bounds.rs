mod common;

use bimatch::bounds::{bound_main, bound_mhall};
use bimatch::{applicable_bounds, phi, Bigraph, THEOREM_IDS};
use num_bigint::BigInt;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn applicable_bounds_hold(g in common::graph(5, 6, 3)) {
        let report = applicable_bounds(&g, true).unwrap();
        prop_assert!(report.violations.is_empty(), "{:?}: {:?}", g, report.violations);
        prop_assert_eq!(report.entries.len(), THEOREM_IDS.len());
        for e in &report.entries {
            prop_assert_eq!(e.applicable, e.hypothesis_failures.is_empty() && e.bound.is_some());
        }
    }

    #[test]
    fn dense_graphs_meet_every_applicable_bound(g in common::with_perfect_matching(4, 3)) {
        // Doubling every entry keeps the structure and raises degrees.
        let rows: Vec<Vec<u32>> = g.rows().into_iter().map(|r| r.into_iter().map(|m| 2 * m).collect()).collect();
        let g = Bigraph::from_rows(&rows).unwrap();
        let report = applicable_bounds(&g, true).unwrap();
        prop_assert!(report.violations.is_empty(), "{:?}: {:?}", g, report.violations);
    }

    #[test]
    fn main_bound_agrees_with_hall_when_k_equals_r(n in 1u64..8, k in 1u64..8) {
        prop_assume!(k >= n);
        prop_assert_eq!(bound_main(n, k, k).unwrap(), bound_mhall(n, k).unwrap());
    }
}

#[test]
fn tables_have_one_row_per_theorem() {
    let g = Bigraph::from_rows(&[[2, 1, 0], [1, 2, 1], [0, 1, 2]]).unwrap();
    let report = applicable_bounds(&g, true).unwrap();
    let md = report.to_markdown();
    let csv = report.to_csv();
    assert!(md.starts_with("| theorem | applicable | bound | phi | gap | equality |"));
    assert_eq!(md.lines().count(), THEOREM_IDS.len() + 2);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "theorem,applicable,bound,phi,gap,equality");
    assert_eq!(lines.len(), THEOREM_IDS.len() + 1);
    assert!(lines[1..].iter().all(|l| l.split(',').count() == 6));
    let phi = phi(&g).unwrap().count.to_string();
    assert!(lines[1..].iter().all(|l| l.split(',').nth(3) == Some(phi.as_str())));
}

#[test]
fn phi_can_be_left_out() {
    let g = Bigraph::from_rows(&[[1, 1], [1, 1]]).unwrap();
    let report = applicable_bounds(&g, false).unwrap();
    assert!(report.phi.is_none() && report.violations.is_empty());
    let json = serde_json::to_value(&report).unwrap();
    assert!(json["phi"].is_null());
    let main = report.entries.iter().find(|e| e.theorem == "1.1").unwrap();
    assert_eq!(main.bound, Some(bimatch::Bound::Integer(BigInt::from(2))));
}
