use cdkernel_cli::selftest;

fn check(id: u8) {
    let r = selftest::run(id);
    println!("{}", r.line());
    assert!(r.passed, "{}", r.line());
}

macro_rules! criteria {
    ($($name:ident => $id:expr),* $(,)?) => {
        $(#[test] fn $name() { check($id); })*
    };
}

criteria! {
    criterion_01_mrs_endpoints => 1,
    criterion_02_equilibrium_identities => 2,
    criterion_03_oracle_integrity => 3,
    criterion_04_bulk_density_rate => 4,
    criterion_05_edge_convergence => 5,
    criterion_06_sine_kernel_convergence => 6,
    criterion_07_tracy_widom => 7,
    criterion_08_deviations => 8,
    criterion_09_endpoint_stability => 9,
    criterion_10_special_functions => 10,
}
