//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Known errata in the transcribed tables are reported as FAIL with the
//! evidence that refutes them. The process exits nonzero only when a check
//! fails for any other reason.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use qtree::fixtures::Fixture;
use qtree_core::cospectral::{verify_catalog, EntryOutcome};
use qtree_core::sturm::{
    all_roots_in_open_unit_interval, count_real_roots_with_multiplicity, real_roots,
};
use qtree_core::{
    build_dictionary, canonical_code, closed_form_spectrum, count_by_pendants, direct_spectrum,
    dirichlet_poly, dirichlet_poly_interpolated, enumerate_trees, find_classes, normalize,
    round_trip, BoundaryConfig, CanonicalCode, IntPoly, SpectrumSample, Tree,
};

/// Printed entries that are wrong in the source and match no tree.
const ERRATA: [&str; 3] = ["8,4^6", "8,4^8", "9,5^14"];

struct Line {
    pass: bool,
    expected_fail: bool,
    text: String,
}

fn line(pass: bool, text: String) -> Line {
    Line {
        pass,
        expected_fail: false,
        text,
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn trees(p: usize) -> Vec<(Tree, CanonicalCode)> {
    enumerate_trees(p).trees
}

fn parent_array_codes(p: usize) -> BTreeSet<CanonicalCode> {
    fn go(p: usize, parents: &mut Vec<usize>, out: &mut BTreeSet<CanonicalCode>) {
        let i = parents.len() + 1;
        if i == p {
            let edges = parents.iter().enumerate().map(|(k, &par)| (par, k + 1));
            out.insert(canonical_code(&Tree::new(p, edges).unwrap()));
            return;
        }
        for par in 0..i {
            parents.push(par);
            go(p, parents, out);
            parents.pop();
        }
    }
    let mut out = BTreeSet::new();
    go(p, &mut Vec::new(), &mut out);
    out
}

fn criterion_1() -> Line {
    let start = Instant::now();
    let counts: Vec<usize> = (1..=10).map(|p| enumerate_trees(p).len()).collect();
    let elapsed = start.elapsed();
    let expected = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106];
    let oracle_ok = (1..=10).all(|p| {
        let ours: BTreeSet<CanonicalCode> = trees(p).into_iter().map(|(_, c)| c).collect();
        ours == parent_array_codes(p)
    });
    let buckets: Vec<Vec<(usize, usize)>> = (7..=9)
        .map(|p| count_by_pendants(&enumerate_trees(p)).into_iter().collect())
        .collect();
    let expected_buckets = [
        vec![(2, 1), (3, 3), (4, 4), (5, 2), (6, 1)],
        vec![(2, 1), (3, 4), (4, 8), (5, 6), (6, 3), (7, 1)],
        vec![(2, 1), (3, 5), (4, 14), (5, 14), (6, 9), (7, 3), (8, 1)],
    ];
    let pass = counts == expected
        && oracle_ok
        && buckets == expected_buckets
        && elapsed < Duration::from_secs(5);
    line(
        pass,
        format!(
            "1 enumeration: counts p=1..10 {counts:?} (a reference list starting 1,1,1,1 is indexed from p=0); \
             parent-array oracle {}; buckets p=7,8,9 {}; time {} (< 5s)",
            if oracle_ok { "agrees" } else { "DISAGREES" },
            if buckets == expected_buckets { "match" } else { "DIFFER" },
            secs(elapsed)
        ),
    )
}

/// Cosines of the non-lattice eigenvalues in (0, 2π] from the direct route.
fn direct_cosines(t: &Tree) -> Vec<f64> {
    let s = direct_spectrum(t, &BoundaryConfig::all_dirichlet(t), 1.0, 2.0 * PI).unwrap();
    let mut cs: Vec<f64> = s
        .eigenvalues
        .iter()
        .filter(|e| {
            let k = (e.x / PI).round();
            (e.x - k * PI).abs() > 1e-6
        })
        .map(|e| e.x.cos())
        .collect();
    cs.sort_by(f64::total_cmp);
    cs.dedup_by(|a, b| (*a - *b).abs() < 1e-6);
    cs
}

fn distinct_roots(q: &IntPoly) -> Vec<f64> {
    real_roots(q).into_iter().map(|(x, _)| x).collect()
}

fn same_set(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < tol)
}

fn criterion_2() -> Line {
    let fixture = Fixture::embedded();
    let mut clean = 0;
    let mut matched = 0;
    let mut corrections = Vec::new();
    let mut corrections_ok = true;
    let mut mismatches: Vec<String> = Vec::new();
    let mut refuted = true;
    for p in 3..=9 {
        let table = fixture.table(p);
        let report = verify_catalog(p, &table).unwrap();
        for (entry, outcome) in &report.entries {
            if !entry.flagged {
                clean += 1;
            }
            match outcome {
                EntryOutcome::Matched { .. } => matched += 1,
                EntryOutcome::Corrected {
                    code,
                    computed,
                    oracle_agrees,
                } => {
                    corrections.push(entry.label.clone());
                    let t = code.to_tree().unwrap();
                    corrections_ok &= entry.flagged
                        && *oracle_agrees
                        && computed.has_definite_parity()
                        && same_set(&direct_cosines(&t), &distinct_roots(computed), 1e-7);
                }
                EntryOutcome::Mismatch { nearest } => {
                    mismatches.push(entry.label.clone());
                    let Some((code, computed)) = nearest else {
                        refuted = false;
                        continue;
                    };
                    // the printed polynomial belongs to no tree of its bucket,
                    // by either exact route, and the nearest tree's spectrum
                    // follows the computed polynomial
                    let printed = normalize(&entry.text.parse::<IntPoly>().unwrap()).unwrap();
                    let no_tree = trees(p)
                        .iter()
                        .filter(|(t, _)| t.pendant_count() == entry.p_pen)
                        .all(|(t, _)| {
                            let b = BoundaryConfig::all_dirichlet(t);
                            normalize(&dirichlet_poly(t, &b).unwrap()).unwrap() != printed
                                && normalize(&dirichlet_poly_interpolated(t, &b).unwrap()).unwrap()
                                    != printed
                        });
                    let cos = direct_cosines(&code.to_tree().unwrap());
                    refuted &= no_tree
                        && same_set(&cos, &distinct_roots(computed), 1e-7)
                        && !same_set(&cos, &distinct_roots(printed.as_poly()), 1e-4);
                }
                EntryOutcome::Unresolved => mismatches.push(entry.label.clone()),
            }
        }
    }
    let expected_corrections = ["9,4^5", "9,4^7", "9,4^9", "9,4^11", "9,7^2"];
    let literal =
        clean >= 60 && matched == clean && corrections == expected_corrections && corrections_ok;
    let errata_only =
        mismatches == ERRATA && refuted && clean >= 60 && matched + ERRATA.len() == clean;
    let mut l = line(
        literal,
        format!(
            "2 catalog regression: {matched}/{clean} unflagged entries equal up to a constant; \
             {} flagged entries corrected ({}) with oracle, parity and direct-spectrum agreement: {}",
            corrections.len(),
            corrections.join(" "),
            if corrections_ok && corrections == expected_corrections { "yes" } else { "NO" },
        ),
    );
    if !mismatches.is_empty() {
        l.text.push_str(&format!(
            "; printed entries matching no tree: {} ({})",
            mismatches.join(" "),
            if refuted {
                "each refuted by both exact routes and the direct spectrum of the nearest tree"
            } else {
                "NOT refuted"
            }
        ));
    }
    l.expected_fail =
        !literal && errata_only && corrections_ok && corrections == expected_corrections;
    l
}

fn criterion_3() -> Line {
    let start = Instant::now();
    let small: usize = (3..=8).map(|p| find_classes(p).unwrap().len()).sum();
    let nine = find_classes(9).unwrap();
    let elapsed = start.elapsed();
    let summary: Vec<(usize, usize, String)> = nine
        .iter()
        .map(|c| (c.key.p_pen, c.members.len(), c.key.poly.to_string()))
        .collect();
    let expected = vec![
        (5, 2, "48z^4-22z^2+1".to_string()),
        (6, 3, "6z^3-z".to_string()),
    ];
    line(
        small == 0 && summary == expected && elapsed < Duration::from_secs(10),
        format!(
            "3 cospectrality: {small} classes for 3 <= p <= 8; p=9 classes (p_pen, size, poly) {summary:?}; \
             time {} (< 10s)",
            secs(elapsed)
        ),
    )
}

fn compare(a: &SpectrumSample, b: &SpectrumSample) -> Option<f64> {
    if a.eigenvalues.len() != b.eigenvalues.len() || a.zero_multiplicity != b.zero_multiplicity {
        return None;
    }
    let mut worst: f64 = 0.0;
    for (x, y) in a.eigenvalues.iter().zip(&b.eigenvalues) {
        if x.multiplicity != y.multiplicity {
            return None;
        }
        worst = worst.max((x.x - y.x).abs());
    }
    Some(worst)
}

fn criterion_4() -> Line {
    let x_max = 6.0 * PI;
    let mut cases: Vec<(Tree, BoundaryConfig, String)> = (2..=6)
        .flat_map(trees)
        .map(|(t, c)| {
            let b = BoundaryConfig::all_dirichlet(&t);
            (t, b, c.to_string())
        })
        .collect();
    let tree_count = cases.len();
    let mixed = [
        (Tree::star(3), vec![1]),
        (Tree::path(4), vec![0]),
        (Tree::spider(&[1, 2, 2]), vec![3, 5]),
        (Tree::double_star(2, 2), vec![2]),
        (Tree::path(3), vec![]),
    ];
    for (t, d) in mixed {
        let b = BoundaryConfig::new(&t, d.clone()).unwrap();
        cases.push((t, b, format!("mixed {d:?}")));
    }
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    let mut lattice_exponents = BTreeSet::new();
    for (t, b, name) in &cases {
        let closed = closed_form_spectrum(t, b, 1.0, x_max).unwrap();
        let direct = direct_spectrum(t, b, 1.0, x_max).unwrap();
        lattice_exponents.insert(qtree_core::sine_exponent(t, b));
        match compare(&closed, &direct) {
            Some(d) if d < 1e-7 => worst = worst.max(d),
            _ => failures.push(name.clone()),
        }
    }
    line(
        failures.is_empty() && tree_count == 13,
        format!(
            "4 oracle equivalence: {tree_count} trees p<=6 all-Dirichlet + {} mixed cases (sine exponents {:?}), \
             closed vs direct on (0, 6pi]: max |dx| {worst:.2e} (< 1e-7){}",
            cases.len() - tree_count,
            lattice_exponents,
            if failures.is_empty() { String::new() } else { format!("; FAILED {failures:?}") }
        ),
    )
}

fn criterion_5() -> Line {
    let p3 = Tree::path(3);
    let b3 = BoundaryConfig::all_dirichlet(&p3);
    let mut worst_rel: f64 = 0.0;
    let mut ok = true;
    for s in [
        closed_form_spectrum(&p3, &b3, 1.0, 5.0 * PI).unwrap(),
        direct_spectrum(&p3, &b3, 1.0, 5.0 * PI).unwrap(),
    ] {
        let lambdas = s.lambdas();
        ok &= lambdas.len() >= 10;
        for k in 1..=10.min(lambdas.len()) {
            let exact = (k as f64 * PI / 2.0).powi(2);
            worst_rel = worst_rel.max((lambdas[k - 1] - exact).abs() / exact);
        }
    }
    let p4 = Tree::path(4);
    let b4 = BoundaryConfig::all_dirichlet(&p4);
    let dx = [
        closed_form_spectrum(&p4, &b4, 1.0, PI).unwrap(),
        direct_spectrum(&p4, &b4, 1.0, PI).unwrap(),
    ]
    .iter()
    .map(|s| (s.eigenvalues[0].x - PI / 3.0).abs())
    .fold(0.0, f64::max);
    line(
        ok && worst_rel < 1e-9 && dx < 1e-9,
        format!(
            "5 analytic spot-check: P3 lambda_k = (k pi/2)^2, k=1..10, max rel err {worst_rel:.2e} (< 1e-9); \
             P4 first x = pi/3, |dx| {dx:.2e} (< 1e-9); both routes"
        ),
    )
}

fn criterion_6() -> Line {
    let start = Instant::now();
    let dict = build_dictionary(9).unwrap();
    let mut identity = 0;
    let mut total = 0;
    for p in 3..=8 {
        for (t, code) in trees(p) {
            total += 1;
            if round_trip(&t, 1.0, &dict).unwrap() == vec![code] {
                identity += 1;
            }
        }
    }
    let classes = find_classes(9).unwrap();
    let mut class_ok = 0;
    let mut class_total = 0;
    for class in &classes {
        for code in &class.members {
            class_total += 1;
            let t = code.to_tree().unwrap();
            if round_trip(&t, 1.0, &dict).unwrap() == class.members {
                class_ok += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    line(
        identity == total && total == 46 && class_ok == class_total && class_total == 5 && elapsed < Duration::from_secs(60),
        format!(
            "6 inverse round-trip: {identity}/{total} trees 3<=p<=8 recovered exactly; \
             {class_ok}/{class_total} members of the p=9 classes recover their full class; time {} (< 60s)",
            secs(elapsed)
        ),
    )
}

fn interior_is_bipartite(t: &Tree) -> bool {
    let interior: Vec<usize> = (0..t.vertex_count()).filter(|&v| t.degree(v) > 1).collect();
    let mut color: BTreeMap<usize, bool> = BTreeMap::new();
    for &s in &interior {
        if color.contains_key(&s) {
            continue;
        }
        color.insert(s, false);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in t.neighbors(v) {
                if t.degree(w) == 1 {
                    continue;
                }
                match color.get(&w) {
                    Some(&c) if c == color[&v] => return false,
                    Some(_) => {}
                    None => {
                        color.insert(w, !color[&v]);
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    true
}

fn criterion_7() -> Line {
    let mut checked = 0;
    let mut failures = BTreeSet::new();
    let mut worst_scale: f64 = 0.0;
    for p in 3..=9 {
        for (t, _) in trees(p) {
            checked += 1;
            let b = BoundaryConfig::all_dirichlet(&t);
            let q = dirichlet_poly(&t, &b).unwrap();
            let n = q.degree().unwrap();
            if n != p - t.pendant_count() {
                failures.insert("degree");
            }
            let product: u64 = t
                .degrees()
                .into_iter()
                .filter(|&d| d > 1)
                .map(|d| d as u64)
                .product();
            if q.leading().unwrap().to_string() != product.to_string() {
                failures.insert("leading coefficient");
            }
            if count_real_roots_with_multiplicity(&q) != n {
                failures.insert("real roots");
            }
            if !all_roots_in_open_unit_interval(&q) {
                failures.insert("roots in (-1,1)");
            }
            if q.has_definite_parity() != interior_is_bipartite(&t) {
                failures.insert("parity");
            }
            let unit = closed_form_spectrum(&t, &b, 1.0, 6.0 * PI).unwrap();
            for l in [0.5, 2.0, 3.0] {
                let scaled = closed_form_spectrum(&t, &b, l, 6.0 * PI).unwrap();
                for (a, s) in unit.lambdas().iter().zip(scaled.lambdas()) {
                    worst_scale = worst_scale.max((s - a / (l * l)).abs() / s);
                }
            }
        }
    }
    // the scaling law through the independent direct route
    for t in [Tree::path(4), Tree::star(3), Tree::spider(&[1, 1, 2])] {
        let b = BoundaryConfig::all_dirichlet(&t);
        let unit = direct_spectrum(&t, &b, 1.0, 4.0 * PI).unwrap();
        let scaled = direct_spectrum(&t, &b, 2.0, 4.0 * PI).unwrap();
        for (a, s) in unit.lambdas().iter().zip(scaled.lambdas()) {
            worst_scale = worst_scale.max((s - a / 4.0).abs() / s);
        }
    }
    if worst_scale >= 1e-10 {
        failures.insert("scaling");
    }
    line(
        failures.is_empty() && checked == 93,
        format!(
            "7 properties over {checked} trees 3<=p<=9: degree, leading coefficient, real roots (Sturm), \
             roots in (-1,1), parity vs bipartite interior{}; scaling max rel err {worst_scale:.2e} (< 1e-10)",
            if failures.is_empty() { String::from(" all hold") } else { format!(" FAILED {failures:?}") }
        ),
    )
}

fn main() {
    let criteria: [fn() -> Line; 7] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
    ];
    let mut unexpected = 0;
    println!();
    for c in criteria {
        let l = c();
        let tag = match (l.pass, l.expected_fail) {
            (true, _) => "PASS",
            (false, true) => "FAIL (source errata, see refutation)",
            (false, false) => {
                unexpected += 1;
                "FAIL"
            }
        };
        println!("[{tag}] {}", l.text);
    }
    println!();
    if unexpected > 0 {
        eprintln!("{unexpected} acceptance criteria failed");
        std::process::exit(1);
    }
}
