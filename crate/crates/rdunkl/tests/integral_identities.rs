//! Cross-module checks of the Laplace-transform identities at the desk
//! scale the verification suites run at.

use num_complex::Complex64;
use rdunkl::jack::JackTable;
use rdunkl::laplace::{kadell_check, laplace_power_check, laplace_shift_check, macdonald_check, mehta_check};
use rdunkl::partition::Partition;
use rdunkl::scalar::{rat, rat_int, Prec};

fn p50() -> Prec {
    Prec::from_digits(50)
}

#[test]
fn mehta_three_variables_half_k() {
    let rep = mehta_check(3, &rat(1, 2), 1e-3, p50()).unwrap();
    assert!(rep.pass, "{rep:?}");
}

#[test]
fn macdonald_two_variables_all_weights_up_to_two() {
    let table = JackTable::new(2, rat_int(2), 2).unwrap();
    for lam in [
        Partition::empty(),
        Partition::row(1),
        Partition::row(2),
        Partition::ones(2),
    ] {
        let rep = macdonald_check(2, &rat(1, 2), &rat_int(2), &lam, &table, 1e-4, p50()).unwrap();
        assert!(rep.pass, "lambda={lam}: {rep:?}");
    }
}

#[test]
fn kadell_two_variables_single_box() {
    let table = JackTable::new(2, rat_int(2), 1).unwrap();
    let rep = kadell_check(
        2,
        &rat(1, 2),
        &rat_int(2),
        &rat_int(2),
        &Partition::row(1),
        &table,
        1e-4,
        p50(),
    )
    .unwrap();
    assert!(rep.pass, "{rep:?}");
}

#[test]
fn laplace_power_two_variables_real_and_complex_spectra() {
    for (mu, z) in [
        (rat(17, 10), [Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)]),
        (rat(5, 2), [Complex64::new(1.0, 0.5), Complex64::new(2.0, 0.0)]),
    ] {
        let rep = laplace_power_check(2, &rat(3, 4), &mu, &z, 1e-4, p50()).unwrap();
        assert!(rep.pass, "mu={mu}: {rep:?}");
    }
}

#[test]
fn laplace_shift_consistency_two_variables() {
    let z = [Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)];
    let rep = laplace_shift_check(2, &rat(1, 2), &rat_int(2), 0.5, &z, 1e-4).unwrap();
    assert!(rep.agree, "deviation {}", rep.rel_dev);
}
