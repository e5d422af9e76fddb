//! End-to-end acceptance run. Prints one line per item and fails if any blocking item fails.

use std::time::Instant;

use cyclic_pf::checks::{pos_phi_dependence, run_check, CheckParams, CheckReport};
use cyclic_pf::paths::{LabeledPath, PathTuple, Skeleton};

struct Item {
    pass: bool,
    detail: String,
}

fn all_pass(reports: Vec<CheckReport>) -> Item {
    let cases: usize = reports.iter().map(|r| r.cases).sum();
    match reports.iter().find(|r| !r.passed()) {
        Some(r) => Item {
            pass: false,
            detail: r.summary(),
        },
        None => Item {
            pass: true,
            detail: format!("{} runs, {cases} cases", reports.len()),
        },
    }
}

fn run(name: &str, p: CheckParams) -> CheckReport {
    run_check(name, &p).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn golden() -> Item {
    let p = LabeledPath::new(4, 3, vec![-3, -1, -1], vec![3, 2, 4]);
    let q = LabeledPath::new(4, 3, vec![-2, -2, 1], vec![1, 2, 1]);
    let t = PathTuple::with_perm(vec![p, q], vec![1, 0]);
    let valid = t.validate().is_ok();
    let s = t.stats();
    let z = t.skeleton();
    let want = Skeleton::from_triples(vec![
        (1, 3, 3),
        (2, 2, 2),
        (3, 3, 4),
        (1, 2, 1),
        (2, 3, 2),
        (3, 1, 1),
    ]);
    let pass = valid
        && (s.pdinv, s.ldinv, s.stat, s.area) == (7, 3, 8, 14)
        && z == want
        && z.area() == 14
        && z.content() == vec![2, 2, 1, 1];
    Item {
        pass,
        detail: format!(
            "pdinv={} ldinv={} stat={} area={} skeleton={z}",
            s.pdinv, s.ldinv, s.stat, s.area
        ),
    }
}

fn grid() -> Vec<(u32, u32, usize)> {
    let mut v = Vec::new();
    for (m, n) in [(1, 1), (2, 1), (1, 2), (3, 2), (2, 3)] {
        for k in 1..=2 {
            v.push((m, n, k));
        }
    }
    v
}

fn compositional() -> Item {
    all_pass(
        grid()
            .into_iter()
            .map(|(m, n, k)| run("calpha", CheckParams::new(m, n, k)))
            .collect(),
    )
}

fn bijection() -> Item {
    all_pass(
        grid()
            .into_iter()
            .map(|(m, n, k)| run("gamma", CheckParams::new(m, n, k)))
            .collect(),
    )
}

fn switching() -> Item {
    let mut r = Vec::new();
    for (m, n) in [(2, 1), (3, 2)] {
        for name in ["sw", "qsw"] {
            r.push(run(name, CheckParams::new(m, n, 2).area(4).labels(4)));
        }
    }
    all_pass(r)
}

fn nabla_suite() -> Item {
    let mut r = Vec::new();
    for m in 1..=2 {
        for name in ["nabla-n1", "jacobi-trudi", "lw"] {
            r.push(run(name, CheckParams::new(m, 1, 3)));
        }
    }
    all_pass(r)
}

fn main_n1() -> Item {
    let mut r = Vec::new();
    for m in 1..=2 {
        for k in 1..=3 {
            r.push(run(
                "main",
                CheckParams::new(m, 1, k).area(5).labels(k as u32),
            ));
        }
    }
    all_pass(r)
}

fn main_general() -> Item {
    let p = CheckParams::new(3, 2, 2).area(6).labels(4);
    all_pass(vec![run("main", p.clone()), run("wilson", p)])
}

fn properties() -> Item {
    let mut r = Vec::new();
    for (m, n) in [(2, 1), (3, 2), (2, 3)] {
        for k in 1..=3 {
            r.push(run("resheet", CheckParams::new(m, n, k)));
            r.push(run("cycling", CheckParams::new(m, n, k)));
        }
    }
    for (m, n) in [(2, 1), (1, 2), (3, 2), (2, 3)] {
        r.push(run("counts", CheckParams::new(m, n, 2)));
    }
    let mut item = all_pass(r);
    // Not asserted: with three components pos can depend on the connecting permutation.
    for (m, n) in [(2, 1), (3, 2)] {
        let (several, dependent) = pos_phi_dependence(m, n, 3, 3, 3).expect("enumeration");
        item.detail.push_str(&format!("; k=3 at ({m},{n}): pos varies with phi on {dependent}/{several} tuples (not asserted)"));
    }
    item
}

fn positivity() -> Item {
    all_pass(vec![run(
        "positivity",
        CheckParams::new(3, 2, 2).area(6).labels(4),
    )])
}

#[test]
fn acceptance() {
    let items: [(&str, fn() -> Item, bool); 9] = [
        ("golden (4,3) tuple statistics", golden, true),
        ("determinant of H(alpha) vs touch sums", compositional, true),
        ("Gamma/Psi bijection", bijection, true),
        ("switching relations", switching, true),
        ("n=1 nabla oracle", nabla_suite, true),
        ("main identity at n=1", main_n1, true),
        ("main identity at (3,2)", main_general, true),
        ("property batteries", properties, true),
        ("Schur positivity spot check", positivity, false),
    ];
    let mut failed = Vec::new();
    for (i, (label, f, blocking)) in items.iter().enumerate() {
        let start = Instant::now();
        let item = f();
        let verdict = match (item.pass, blocking) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "WARN",
        };
        println!(
            "[{}] {verdict} {label}: {} ({:.1?})",
            i + 1,
            item.detail,
            start.elapsed()
        );
        if !item.pass && *blocking {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failing items: {failed:?}");
}
