//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line (visible with --nocapture).

use gcnlab_core::conjecture::{verify_theorem_32, DichotomyCase};
use gcnlab_core::gc::GcAnalysis;
use gcnlab_core::geom::{intersection_point, rat, rat_int, Line, Point, Rat};
use gcnlab_core::io;
use gcnlab_core::lattices::fixtures::{
    affine_gpl_fixture, cg_fixture, cy_fixture, x_bar_star_fixture, x_star_fixture,
    y_bar_star_fixture, y_star_fixture,
};
use gcnlab_core::lattices::{degenerate_i1_probe, verify_n_minus_1_max, DegenerateProbeParams};
use gcnlab_core::nodeset::{binomial2, space_dimension, NodeSet};
use gcnlab_core::poly::BivariatePolynomial;
use gcnlab_core::reduction::{check_proper, reduce_fully};
use gcnlab_core::suites::{corpus, run_suite, theorem32_fixtures};
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use std::collections::BTreeSet;
use std::time::Instant;

fn criterion(name: &str, findings: &[String]) {
    if findings.is_empty() {
        println!("[pass] {name}");
    } else {
        println!("[FAIL] {name}");
        for f in findings {
            println!("    {f}");
        }
    }
    assert!(findings.is_empty(), "{name}: {findings:?}");
}

fn usage_points(an: &GcAnalysis, l: &Line) -> BTreeSet<Point> {
    an.used_nodes(l)
        .users
        .iter()
        .map(|&i| an.set().node(i).clone())
        .collect()
}

#[test]
fn criterion_01_maximal_line_usage() {
    let mut findings = Vec::new();
    for n in 2..=5usize {
        let sets: Vec<(String, NodeSet)> = vec![
            (format!("chung-yao n={n}"), cy_fixture(n).0),
            (format!("carnicer-gasca n={n}"), cg_fixture(n).0),
            (format!("principal n={n}"), NodeSet::pl(n)),
            (format!("affine gpl n={n}"), affine_gpl_fixture(n).0),
        ];
        for (label, set) in sets {
            let t0 = Instant::now();
            let an = GcAnalysis::new(set).expect("fixture is poised");
            for lam in an.maximal_lines().to_vec() {
                let used = usage_points(&an, &lam);
                let off: BTreeSet<Point> = an
                    .set()
                    .nodes()
                    .iter()
                    .filter(|p| !lam.eval(p).is_zero())
                    .cloned()
                    .collect();
                if used.len() != binomial2(n + 1) || used != off {
                    findings.push(format!(
                        "{label}: maximal line usage {} != C(n+1,2) = {}",
                        used.len(),
                        binomial2(n + 1)
                    ));
                }
            }
            if t0.elapsed().as_secs() >= 10 {
                findings.push(format!("{label}: exceeded 10 s"));
            }
        }
    }
    criterion("1 maximal-line usage count", &findings);
}

#[test]
fn criterion_02_chung_yao_sparsity() {
    let mut findings = Vec::new();
    for n in 2..=5usize {
        let (set, bp) = cy_fixture(n);
        let an = GcAnalysis::new(set).expect("fixture is poised");
        let construction: BTreeSet<Line> = bp.construction_lines.iter().cloned().collect();
        if construction.len() != n + 2 {
            findings.push(format!("n={n}: expected n+2 construction lines"));
        }
        let mut used_lines = BTreeSet::new();
        for nl in an.node_lines().to_vec() {
            let usage = an.used_nodes(&nl.line).users.len();
            if usage > 0 {
                used_lines.insert(nl.line.clone());
            }
            let is_max = nl.node_count == n + 1;
            if !is_max {
                let sigma = an.sigma(&nl.line).unwrap();
                if usage != 0 || sigma > 1 {
                    findings.push(format!(
                        "n={n}: non-maximal line {:?} usage {usage}, sigma {sigma}",
                        nl.line
                    ));
                }
            }
        }
        if used_lines != construction {
            findings.push(format!("n={n}: used lines differ from construction lines"));
        }
    }
    criterion("2 chung-yao sparsity", &findings);
}

#[test]
fn criterion_03_gpl_pencil_counts() {
    use gcnlab_core::conjecture::verify_gpl_usage;
    use gcnlab_core::lattices::principal_pencils;
    let mut findings = Vec::new();
    for n in 2..=6usize {
        let an = GcAnalysis::new(NodeSet::pl(n)).expect("principal lattice is poised");
        match verify_gpl_usage(&an, &principal_pencils(n)) {
            Ok(true) => {}
            Ok(false) => findings.push(format!("principal n={n}: pencil counts off")),
            Err(e) => findings.push(format!("principal n={n}: {e}")),
        }
    }
    let (set, pencils, _) = affine_gpl_fixture(5);
    let an = GcAnalysis::new(set).expect("affine gpl is poised");
    match verify_gpl_usage(&an, &pencils) {
        Ok(true) => {}
        Ok(false) => findings.push("affine gpl n=5: pencil counts off".into()),
        Err(e) => findings.push(format!("affine gpl n=5: {e}")),
    }
    criterion("3 gpl pencil counts", &findings);
}

#[test]
fn criterion_04_theorem_32_dichotomy() {
    let mut findings = Vec::new();
    let fixtures = theorem32_fixtures();
    if fixtures.len() < 10 {
        findings.push(format!("only {} fixtures", fixtures.len()));
    }
    for (label, set, ell, expected) in fixtures {
        let n = set.degree();
        let an = GcAnalysis::new(set).expect("fixture is poised");
        match verify_theorem_32(&an, &ell) {
            Ok(v) => {
                let want = match expected {
                    DichotomyCase::Disjoint => binomial2(n),
                    DichotomyCase::Adjacent => binomial2(n - 1),
                };
                if !(v.pass && v.identity_holds && v.case == expected && v.usage_size == want) {
                    findings.push(format!("{label}: verdict {v:?}"));
                }
            }
            Err(e) => findings.push(format!("{label}: {e}")),
        }
    }
    criterion("4 theorem 3.2 dichotomy", &findings);
}

#[test]
fn criterion_05_prop_33_trichotomy() {
    let report = run_suite("prop33").unwrap();
    let findings: Vec<String> = report
        .checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{}: {}", c.label, c.detail))
        .collect();
    criterion("5 prop 3.3 trichotomy", &findings);
}

#[test]
fn criterion_06_counterexample_families() {
    let mut findings = Vec::new();
    let mut timed = |label: &str, f: &mut dyn FnMut(&mut Vec<String>)| {
        let t0 = Instant::now();
        let mut local = Vec::new();
        f(&mut local);
        if t0.elapsed().as_secs() >= 60 {
            local.push(format!("{label}: exceeded 60 s"));
        }
        findings.extend(local.into_iter().map(|m| format!("{label}: {m}")));
    };
    timed("y-star", &mut |out| {
        let (set, ell, _) = y_star_fixture();
        let an = GcAnalysis::new(set).unwrap();
        if an.set().len() != 10 || an.mu() != 3 {
            out.push(format!("size {} mu {}", an.set().len(), an.mu()));
        }
        if !an.used_nodes(&ell).users.is_empty() {
            out.push("distinguished line is used".into());
        }
    });
    timed("y-bar-star m=1", &mut |out| {
        let (set, ell, _) = y_bar_star_fixture(1);
        let an = GcAnalysis::new(set).unwrap();
        if an.set().len() != 21 || an.set().degree() != 5 {
            out.push(format!("size {} degree {}", an.set().len(), an.set().degree()));
        }
        if an.line_node_count(&ell).unwrap() != 4 || an.sigma(&ell).unwrap() != 2 {
            out.push("distinguished line is not a 4-node sigma=2 line".into());
        }
        if !an.used_nodes(&ell).users.is_empty() {
            out.push("distinguished line is used".into());
        }
    });
    timed("x-star", &mut |out| {
        let (set, ell, _) = x_star_fixture();
        let an = GcAnalysis::new(set.clone()).unwrap();
        if an.set().len() != 21 || an.mu() != 4 {
            out.push(format!("size {} mu {}", an.set().len(), an.mu()));
        }
        if !an.used_nodes(&ell).users.is_empty() {
            out.push("distinguished line is used".into());
        }
        if let Err(e) = verify_n_minus_1_max(&set) {
            out.push(format!("structure check failed: {e}"));
        }
    });
    timed("x-bar-star m=1", &mut |out| {
        let (set, ell, _) = x_bar_star_fixture(1);
        let an = GcAnalysis::new(set).unwrap();
        if an.set().len() != 36 || an.set().degree() != 7 {
            out.push(format!("size {} degree {}", an.set().len(), an.set().degree()));
        }
        if an.line_node_count(&ell).unwrap() != 5 {
            out.push("distinguished line is not a 5-node line".into());
        }
        if !an.used_nodes(&ell).users.is_empty() {
            out.push("distinguished line is used".into());
        }
    });
    criterion("6 counterexample families", &findings);
}

#[test]
fn criterion_07_pappus_collinearity() {
    let mut findings = Vec::new();
    let params = DegenerateProbeParams {
        first_triple: [
            Point::from_ints(0, 0),
            Point::from_ints(2, 1),
            Point::from_ints(6, 3),
        ],
        second_triple: [
            Point::from_ints(1, 5),
            Point::from_ints(3, 9),
            Point::from_ints(4, 11),
        ],
        lambda1_direction: (rat_int(1), rat_int(-2)),
        lambda4_direction: (rat_int(1), rat_int(4)),
    };
    match degenerate_i1_probe(&params) {
        Ok(probe) => {
            if !probe.triple_collinear {
                findings.push("derived triple is not collinear".into());
            }
            if probe.rejection.is_empty() {
                findings.push("constructor accepted the degenerate set".into());
            }
        }
        Err(e) => findings.push(e.to_string()),
    }
    criterion("7 pappus collinearity probe", &findings);
}

#[test]
fn criterion_08_reduction_oracle_equivalence() {
    let mut findings = Vec::new();
    for (label, set) in corpus() {
        let an = GcAnalysis::new(set).expect("fixture is poised");
        for nl in an.node_lines().to_vec() {
            let l = &nl.line;
            let direct = usage_points(&an, l);
            let chain = match reduce_fully(&an, l) {
                Ok(c) => c,
                Err(e) => {
                    findings.push(format!("{label} {l:?}: {e}"));
                    continue;
                }
            };
            let final_an = match GcAnalysis::new(chain.final_set.clone()) {
                Ok(a) => a,
                Err(e) => {
                    findings.push(format!("{label} {l:?}: final set not poised: {e}"));
                    continue;
                }
            };
            if usage_points(&final_an, l) != direct {
                findings.push(format!("{label} {l:?}: usage differs on reduced set"));
            }
            if let Ok(Some(proper)) = check_proper(&an, l) {
                let s = proper.final_line_count();
                let sigma = an.sigma(l).unwrap();
                if direct.len() != binomial2(s)
                    || (s as i64) < sigma
                    || s > nl.node_count
                {
                    findings.push(format!(
                        "{label} {l:?}: proper chain s={s} vs usage {}",
                        direct.len()
                    ));
                }
            }
        }
    }
    criterion("8 reduction oracle equivalence", &findings);
}

#[test]
fn criterion_09_conjecture_clause_sweep() {
    let t0 = Instant::now();
    let report = run_suite("corpus").unwrap();
    let mut findings: Vec<String> = report
        .checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{}: {}", c.label, c.detail))
        .collect();
    if t0.elapsed().as_secs() >= 300 {
        findings.push("corpus sweep exceeded 5 min".into());
    }
    criterion("9 conjecture clause sweep", &findings);
}

fn poly_is_one(p: &BivariatePolynomial) -> bool {
    let mut q = p.clone();
    q.trim();
    q.degree_bound() == 0 && q.coeff(0, 0).is_one()
}

#[test]
fn criterion_10_structural_invariants() {
    let mut findings = Vec::new();
    for (label, set) in corpus() {
        let n = set.degree();
        let an = GcAnalysis::new(set).expect("fixture is poised");
        let maximal = an.maximal_lines().to_vec();
        let mu = an.mu();
        // pairwise intersections are nodes, and no three maximal lines meet
        let mut crossings = BTreeSet::new();
        for i in 0..maximal.len() {
            for j in 0..i {
                match intersection_point(&maximal[i], &maximal[j]) {
                    Some(p) => {
                        if !an.set().nodes().contains(&p) {
                            findings.push(format!("{label}: maximal crossing off the set"));
                        }
                        if !crossings.insert(p) {
                            findings.push(format!("{label}: three concurrent maximal lines"));
                        }
                    }
                    None => findings.push(format!("{label}: parallel maximal lines")),
                }
            }
        }
        if mu > n + 2 {
            findings.push(format!("{label}: mu = {mu} > n+2"));
        }
        let allowed = [3, n.saturating_sub(1), n, n + 1, n + 2];
        if !allowed.contains(&mu) {
            findings.push(format!("{label}: mu = {mu} outside classification"));
        }
        // removing a maximal line keeps mu or drops it by one
        if n >= 3 {
            for lam in &maximal {
                let rest: Vec<Point> = an
                    .set()
                    .nodes()
                    .iter()
                    .filter(|p| !lam.eval(p).is_zero())
                    .cloned()
                    .collect();
                let reduced = NodeSet::new(n - 1, rest).expect("removal keeps cardinality");
                let mu2 = GcAnalysis::new(reduced).expect("removal keeps poisedness").mu();
                if mu2 >= 3 && !(mu2 == mu || mu2 + 1 == mu) {
                    findings.push(format!("{label}: mu {mu} -> {mu2} after removal"));
                }
            }
        }
        // partition of unity
        let mut sum = BivariatePolynomial::zero();
        for i in 0..an.set().len() {
            sum = sum.add(an.fundamental(i));
        }
        if !poly_is_one(&sum) {
            findings.push(format!("{label}: fundamentals do not sum to 1"));
        }
        // 2-node lines carry at most one user
        for nl in an.node_lines().to_vec() {
            if nl.node_count == 2 && an.used_nodes(&nl.line).users.len() > 1 {
                findings.push(format!("{label}: 2-node line with |X_l| > 1"));
            }
        }
    }
    criterion("10 structural invariants", &findings);
}

fn poly_eq(p: &BivariatePolynomial, q: &BivariatePolynomial) -> bool {
    let d = p.degree_bound().max(q.degree_bound());
    for i in 0..=d {
        for j in 0..=d - i {
            if p.coeff(i, j) != q.coeff(i, j) {
                return false;
            }
        }
    }
    true
}

fn runner_1000() -> TestRunner {
    TestRunner::new(Config {
        cases: 1000,
        ..Config::default()
    })
}

#[test]
fn criterion_11_property_suites() {
    let mut findings = Vec::new();

    // multiply/divide by a line round-trips exactly
    let line_strat = (-9i64..=9, -9i64..=9, -9i64..=9)
        .prop_filter("nondegenerate", |(a, b, _)| *a != 0 || *b != 0);
    let poly_strat = (
        0usize..=3,
        proptest::collection::vec((-9i64..=9, 1i64..=9), 15),
    );
    if let Err(e) = runner_1000().run(&(poly_strat, line_strat.clone()), |((d, coeffs), (a, b, c))| {
        let values: Vec<Rat> = coeffs
            .iter()
            .take(space_dimension(d))
            .map(|(p, q)| rat(*p, *q))
            .collect();
        let poly = BivariatePolynomial::from_grlex(d, &values);
        let l = Line::new(a, b, c).unwrap();
        let prod = poly.multiply_by_line(&l);
        match prod.divide_by_line(&l) {
            Ok(back) => prop_assert!(poly_eq(&back, &poly)),
            Err(_) => prop_assert!(poly.is_zero()),
        }
        Ok(())
    }) {
        findings.push(format!("polynomial round trip: {e}"));
    }

    // canonical line form is scale-invariant and idempotent
    let rat_strat = || (-40i64..=40, 1i64..=12);
    if let Err(e) = runner_1000().run(
        &(
            (rat_strat(), rat_strat(), rat_strat())
                .prop_filter("nondegenerate", |((a, _), (b, _), _)| *a != 0 || *b != 0),
            rat_strat().prop_filter("nonzero scale", |(s, _)| *s != 0),
        ),
        |(((a, ad), (b, bd), (c, cd)), (s, sd))| {
            let (a, b, c) = (rat(a, ad), rat(b, bd), rat(c, cd));
            let scale = rat(s, sd);
            let l1 = Line::from_rationals(&a, &b, &c).unwrap();
            let l2 = Line::from_rationals(&(&a * &scale), &(&b * &scale), &(&c * &scale)).unwrap();
            prop_assert_eq!(&l1, &l2);
            let l3 =
                Line::from_bigints(l1.a().clone(), l1.b().clone(), l1.c().clone()).unwrap();
            prop_assert_eq!(&l1, &l3);
            Ok(())
        },
    ) {
        findings.push(format!("canonical form idempotence: {e}"));
    }

    // file serialization round-trips bit-exactly
    let point_strat = (-999i64..=999, 1i64..=50, -999i64..=999, 1i64..=50);
    let set_strat = (
        1usize..=3,
        proptest::collection::vec(point_strat, 10),
        proptest::collection::vec(
            (-9i64..=9, -9i64..=9, -9i64..=9)
                .prop_filter("nondegenerate", |(a, b, _)| *a != 0 || *b != 0),
            0..3,
        ),
    );
    if let Err(e) = runner_1000().run(&set_strat, |(n, raw, raw_lines)| {
        let pts: Vec<Point> = raw
            .iter()
            .take(space_dimension(n))
            .enumerate()
            // index offset keeps the generated nodes pairwise distinct
            .map(|(i, (xn, xd, yn, yd))| {
                Point::new(&rat(*xn, *xd) + &rat_int(2000 * i as i64), rat(*yn, *yd))
            })
            .collect();
        let set = NodeSet::new(n, pts).unwrap();
        let lines: Vec<Line> = raw_lines
            .iter()
            .map(|(a, b, c)| Line::new(*a, *b, *c).unwrap())
            .collect();
        let text = io::node_set_to_string(&set, &lines);
        let (set2, lines2) = io::node_set_from_str(&text).unwrap();
        prop_assert_eq!(&set, &set2);
        prop_assert_eq!(&lines, &lines2);
        prop_assert_eq!(&text, &io::node_set_to_string(&set2, &lines2));
        Ok(())
    }) {
        findings.push(format!("file round trip: {e}"));
    }

    criterion("11 property-based suites", &findings);
}
