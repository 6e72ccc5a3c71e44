//! Shared constructions for unit tests: two classical planar schemes with
//! their standard windows, and a small residue scheme.

use crate::exactnum::{int, ratio, QuadraticNumber, Rational};
use crate::scheme::{CutProjectScheme, EuclideanScheme, ResidueScheme};
use crate::window::{IntervalWindow, ResidueWindow, Window};

pub(crate) fn qn(a: Rational, b: Rational, d: u64) -> QuadraticNumber {
    QuadraticNumber::new(a, b, d).unwrap()
}

/// `a + b*sqrt(d)` with integer coefficients.
pub(crate) fn qi(a: i64, b: i64, d: u64) -> QuadraticNumber {
    qn(int(a), int(b), d)
}

/// Basis `v = (1, 1)`, `w = (sqrt(2), -sqrt(2))`.
pub(crate) fn silver() -> EuclideanScheme {
    EuclideanScheme::new(2, (qi(1, 0, 2), qi(1, 0, 2)), (qi(0, 1, 2), qi(0, -1, 2))).unwrap()
}

/// Basis `v = (1, 1)`, `w = (tau, tau')` with `tau = (1 + sqrt(5))/2`.
pub(crate) fn fibonacci() -> EuclideanScheme {
    EuclideanScheme::new(
        5,
        (qi(1, 0, 5), qi(1, 0, 5)),
        (qn(ratio(1, 2), ratio(1, 2), 5), qn(ratio(1, 2), ratio(-1, 2), 5)),
    )
    .unwrap()
}

pub(crate) fn silver_scheme() -> CutProjectScheme {
    CutProjectScheme::Euclidean(silver())
}

pub(crate) fn fibonacci_scheme() -> CutProjectScheme {
    CutProjectScheme::Euclidean(fibonacci())
}

/// The interval `[-sqrt(2)/2, sqrt(2)/2]`.
pub(crate) fn silver_window() -> Window {
    Window::Intervals(
        IntervalWindow::interval(qn(int(0), ratio(-1, 2), 2), qn(int(0), ratio(1, 2), 2)).unwrap(),
    )
}

/// The interval `[-1, -tau'] = [-1, (sqrt(5) - 1)/2]`.
pub(crate) fn fibonacci_window() -> Window {
    Window::Intervals(
        IntervalWindow::interval(qi(-1, 0, 5), qn(ratio(-1, 2), ratio(1, 2), 5)).unwrap(),
    )
}

pub(crate) fn residue_4_9() -> CutProjectScheme {
    CutProjectScheme::Residue(ResidueScheme::new(vec![4, 9]).unwrap())
}

/// Window of residues coprime to each modulus base (nonzero residues).
pub(crate) fn residue_4_9_window() -> Window {
    Window::Residues(ResidueWindow::coprime_to_all(vec![4, 9]).unwrap())
}
