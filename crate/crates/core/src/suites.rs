//! Named verification suites over the built-in fixture corpus. The CLI
//! `verify` command and the acceptance tests both run these.

use crate::conjecture::{
    characterize_sigma2, verify_gpl_usage, verify_prop_33, verify_set, verify_theorem_32,
    verify_three_max_furthermore, DichotomyCase, FamilyMatch, TrichotomyCase,
};
use crate::gc::GcAnalysis;
use crate::geom::{rat, Line, Rat};
use crate::lattices::fixtures::*;
use crate::lattices::{principal_pencils, PencilTriple};
use crate::nodeset::{binomial2, NodeSet};

#[derive(Debug, Clone)]
pub struct Check {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(label: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            label: label.into(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

pub const SUITE_NAMES: [&str; 5] = ["corpus", "theorem32", "prop33", "prop41", "sigma2"];

/// Runs a named suite; None if the name is unknown.
pub fn run_suite(name: &str) -> Option<SuiteReport> {
    match name {
        "corpus" => Some(suite_corpus()),
        "theorem32" => Some(suite_theorem32()),
        "prop33" => Some(suite_prop33()),
        "prop41" => Some(suite_prop41()),
        "sigma2" => Some(suite_sigma2()),
        _ => None,
    }
}

/// The fixture corpus for the whole-set clause sweep: every family, n <= 6.
pub fn corpus() -> Vec<(String, NodeSet)> {
    let mut sets = Vec::new();
    for n in 2..=5 {
        sets.push((format!("chung-yao n={n}"), cy_fixture(n).0));
        sets.push((format!("carnicer-gasca n={n}"), cg_fixture(n).0));
        sets.push((format!("principal n={n}"), NodeSet::pl(n)));
    }
    sets.push(("principal n=6".into(), NodeSet::pl(6)));
    sets.push(("affine gpl n=3".into(), affine_gpl_fixture(3).0));
    sets.push(("y-star".into(), y_star_fixture().0));
    sets.push(("y-bar-star m=1".into(), y_bar_star_fixture(1).0));
    sets.push(("x-star".into(), x_star_fixture().0));
    sets
}

fn suite_corpus() -> SuiteReport {
    let mut checks = Vec::new();
    for (label, set) in corpus() {
        let check = match GcAnalysis::new(set) {
            Ok(an) => match verify_set(&an) {
                Ok(report) => {
                    let failing = report.lines.iter().filter(|l| !l.passes()).count();
                    Check::new(
                        label,
                        report.all_pass,
                        format!("{} node-lines, {} findings", report.lines.len(), failing),
                    )
                }
                Err(e) => Check::new(label, false, e.to_string()),
            },
            Err(e) => Check::new(label, false, e.to_string()),
        };
        checks.push(check);
    }
    SuiteReport {
        name: "corpus".into(),
        checks,
    }
}

/// The >= 10 engineered n-node-line dichotomy fixtures, n in {4, 5}.
pub fn theorem32_fixtures() -> Vec<(String, NodeSet, Line, DichotomyCase)> {
    let mut out = Vec::new();
    let disjoint_params: [Rat; 3] = [rat(1, 3), rat(2, 7), rat(3, 11)];
    let adjacent_params: [Rat; 3] = [rat(1, 3), rat(2, 5), rat(3, 7)];
    for n in [4usize, 5] {
        for (i, t) in disjoint_params.iter().enumerate() {
            let (set, ell, _, _) = cg_with_disjoint_n_node_line(n, t)
                .expect("disjoint fixture parameters are valid");
            out.push((
                format!("disjoint n={n} variant {i}"),
                set,
                ell,
                DichotomyCase::Disjoint,
            ));
        }
        for (i, s) in adjacent_params.iter().enumerate() {
            let (set, ell, _, _) = cg_with_adjacent_n_node_line(n, s)
                .expect("adjacent fixture parameters are valid");
            out.push((
                format!("adjacent n={n} variant {i}"),
                set,
                ell,
                DichotomyCase::Adjacent,
            ));
        }
    }
    out
}

fn suite_theorem32() -> SuiteReport {
    let mut checks = Vec::new();
    for (label, set, ell, expected) in theorem32_fixtures() {
        let n = set.degree();
        let check = match GcAnalysis::new(set).map_err(|e| e.to_string()).and_then(|an| {
            verify_theorem_32(&an, &ell).map_err(|e| e.to_string())
        }) {
            Ok(v) => {
                let want = match expected {
                    DichotomyCase::Disjoint => binomial2(n),
                    DichotomyCase::Adjacent => binomial2(n - 1),
                };
                Check::new(
                    label,
                    v.pass && v.case == expected && v.usage_size == want,
                    format!("|X_l| = {}, identity {}", v.usage_size, v.identity_holds),
                )
            }
            Err(e) => Check::new(label, false, e),
        };
        checks.push(check);
    }
    SuiteReport {
        name: "theorem32".into(),
        checks,
    }
}

fn suite_prop33() -> SuiteReport {
    let mut checks = Vec::new();
    let cases: Vec<(String, NodeSet, Line, TrichotomyCase, usize)> = vec![
        {
            let (set, ell, _, _) = cg_with_disjoint_n_node_line(3, &rat(1, 3)).unwrap();
            ("disjoint case".into(), set, ell, TrichotomyCase::Three, 3)
        },
        {
            let (set, ell, _, _) = cg_with_adjacent_n_node_line(3, &rat(1, 3)).unwrap();
            ("adjacent case".into(), set, ell, TrichotomyCase::One, 1)
        },
        {
            let (set, ell, _) = y_star_fixture();
            ("unused case".into(), set, ell, TrichotomyCase::Zero, 0)
        },
    ];
    for (label, set, ell, expected, want) in cases {
        let check = match GcAnalysis::new(set).map_err(|e| e.to_string()).and_then(|an| {
            verify_prop_33(&an, &ell).map_err(|e| e.to_string())
        }) {
            Ok(v) => Check::new(
                label,
                v.pass && v.case == expected && v.usage_size == want,
                format!("|X_l| = {}", v.usage_size),
            ),
            Err(e) => Check::new(label, false, e),
        };
        checks.push(check);
    }
    SuiteReport {
        name: "prop33".into(),
        checks,
    }
}

fn suite_prop41() -> SuiteReport {
    let mut checks = Vec::new();
    let mut gpl_cases: Vec<(String, NodeSet, PencilTriple)> = (2..=5)
        .map(|n| (format!("principal n={n}"), NodeSet::pl(n), principal_pencils(n)))
        .collect();
    {
        let (set, pencils, _) = affine_gpl_fixture(3);
        gpl_cases.push(("affine gpl n=3".into(), set, pencils));
    }
    {
        let (set, pencils, _) = affine_gpl_fixture(4);
        gpl_cases.push(("affine gpl n=4".into(), set, pencils));
    }
    for (label, set, pencils) in gpl_cases {
        let check = match GcAnalysis::new(set).map_err(|e| e.to_string()).and_then(|an| {
            verify_gpl_usage(&an, &pencils).map_err(|e| e.to_string())
        }) {
            Ok(ok) => Check::new(label, ok, "pencil counts C(m,2), nothing else used"),
            Err(e) => Check::new(label, false, e),
        };
        checks.push(check);
    }
    // the "furthermore" clause: a line through one node of each maximal
    // line of PL_n is unused (through the corner (0,n) and (1,0))
    for n in [3usize, 4, 5] {
        let an = GcAnalysis::new(NodeSet::pl(n)).unwrap();
        let l = Line::new(n as i64, 1, -(n as i64)).unwrap();
        let check = match verify_three_max_furthermore(&an, &l) {
            Ok(unused) => Check::new(
                format!("furthermore n={n}"),
                unused,
                "line meeting all 3 maximal lines at nodes is unused",
            ),
            Err(e) => Check::new(format!("furthermore n={n}"), false, e.to_string()),
        };
        checks.push(check);
    }
    SuiteReport {
        name: "prop41".into(),
        checks,
    }
}

fn suite_sigma2() -> SuiteReport {
    let mut checks = Vec::new();
    let cases: Vec<(String, NodeSet, Line, bool, usize)> = vec![
        {
            let (set, ell, _) = x_star_fixture();
            ("x-star".into(), set, ell, false, 0)
        },
        {
            let (set, ell, _) = y_bar_star_fixture(1);
            ("y-bar-star m=1".into(), set, ell, true, 1)
        },
        {
            let (set, ell, _) = y_bar_star_fixture(2);
            ("y-bar-star m=2".into(), set, ell, true, 2)
        },
        {
            let (set, ell, _) = x_bar_star_fixture(1);
            ("x-bar-star m=1".into(), set, ell, false, 1)
        },
    ];
    for (label, set, ell, is_y_family, want_m) in cases {
        let check = match GcAnalysis::new(set).map_err(|e| e.to_string()).and_then(|an| {
            characterize_sigma2(&an, &ell).map_err(|e| e.to_string())
        }) {
            Ok(FamilyMatch::YBarStar { m, .. }) => Check::new(
                label,
                is_y_family && m == want_m,
                format!("matched Y-family, m = {m}"),
            ),
            Ok(FamilyMatch::XBarStar { m, .. }) => Check::new(
                label,
                !is_y_family && m == want_m,
                format!("matched X-family, m = {m}"),
            ),
            Ok(FamilyMatch::NoMatch(reason)) => Check::new(label, false, reason),
            Err(e) => Check::new(label, false, e),
        };
        checks.push(check);
    }
    SuiteReport {
        name: "sigma2".into(),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_named_suite_passes() {
        for name in SUITE_NAMES {
            let report = run_suite(name).expect("known suite");
            for c in &report.checks {
                assert!(c.pass, "suite {name}, check {}: {}", c.label, c.detail);
            }
        }
        assert!(run_suite("nope").is_none());
    }
}
