//! The ten acceptance criteria, each run at full size with exact equality.
//! Prints one `criterion N: PASS|FAIL` line per criterion and exits nonzero
//! if any fails.

use std::process::ExitCode;
use std::time::Instant;

use mixpf::connection::dglrs_constraint_sum;
use mixpf::oracles::determinant;
use mixpf::verify::{run_suite, Suite, SuiteOptions, SuiteReport};
use mixpf::GaussianRational as Q;

fn run(suite: Suite, opts: &SuiteOptions) -> SuiteReport {
    let start = Instant::now();
    let report = run_suite(suite, opts).expect("suite runs");
    for c in report.cases.iter().filter(|c| !c.pass).take(5) {
        eprintln!(
            "  {suite} {} failed: {} expected {} got {}",
            c.id, c.input, c.expected, c.actual
        );
    }
    eprintln!(
        "  {suite}: {} passed, {} failed in {:.2?} {:?}",
        report.passed,
        report.failed,
        start.elapsed(),
        report.notes
    );
    report
}

fn det_sum(k: usize) -> Q {
    dglrs_constraint_sum(|g| Ok(Q::real(determinant(&g.adjacency()).into())), k).unwrap()
}

fn criteria() -> Vec<(usize, bool)> {
    let opts = SuiteOptions::default();
    let mut out = Vec::new();

    let r = run(Suite::Circles, &opts);
    out.push((1, r.ok() && r.cases.len() == 30));

    let r = run(Suite::Matchings, &opts);
    // 34 simple graphs on at most five vertices (1 + 1 + 2 + 4 + 11 + 34 = 53 with the smaller orders)
    out.push((2, r.ok() && r.cases.len() == 53 + 20));

    let r = run(Suite::Charpoly, &opts);
    out.push((3, r.ok() && r.cases.len() > 100));

    let r = run(Suite::Dglrs, &opts);
    let (one, two) = (det_sum(1), det_sum(2));
    out.push((
        4,
        r.ok() && one == Q::from_integer(16) && two == Q::from_integer(-72),
    ));

    let r = run(Suite::Circuitpoly, &opts);
    out.push((5, r.ok() && r.cases.len() > 50));

    let r = run(Suite::Invariance, &opts);
    out.push((6, r.ok() && r.cases.len() == 50));

    let r = run(Suite::Signs, &opts);
    out.push((7, r.ok() && r.cases.len() == 3));

    let r = run(Suite::Gram, &opts);
    out.push((8, r.ok() && r.cases.len() == 30));

    let r = run(Suite::Rank, &opts);
    out.push((9, r.ok() && r.cases.len() == 6));

    let r = run(Suite::Specialization, &opts);
    out.push((10, r.ok() && r.cases.len() == 20 * 2 + 20 * 3));

    out
}

fn main() -> ExitCode {
    let results = criteria();
    for (n, pass) in &results {
        println!("criterion {n}: {}", if *pass { "PASS" } else { "FAIL" });
    }
    let failed: Vec<usize> = results.iter().filter(|r| !r.1).map(|r| r.0).collect();
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
