use qres::checks::{run_suite, SuiteReport};

fn check(name: &str) -> SuiteReport {
    let rep = run_suite(name).unwrap();
    for f in rep.failures.iter().take(10) {
        eprintln!("{name}: {f}");
    }
    eprintln!(
        "{name}: {}/{} passed, {} skipped",
        rep.passed, rep.total, rep.skipped
    );
    assert!(rep.ok());
    rep
}

#[test]
fn deltaw() {
    assert!(check("deltaw").passed >= 100);
}

#[test]
fn modes() {
    assert!(check("modes").passed >= 100);
}

#[test]
fn noether() {
    assert!(check("noether").passed >= 100);
}

#[test]
fn lattice() {
    check("lattice");
}

#[test]
fn quasihom() {
    check("quasihom");
}

#[test]
fn additivity() {
    assert!(check("additivity").passed >= 50);
}
