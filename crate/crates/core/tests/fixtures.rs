//! Values on the built-in spaces: the Y table, η on X, links and labels.

mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use cfcalc::spaces::{self, Fixture};
use cfcalc::{
    enumerate_algebra, half_link, link_transform, omega, parse_term, sullivan_check, Cf, Dyadic,
    FunctionError, Report, SearchBudget, SearchOptions, Simplex, Term, Verdict,
};
use common::int;

const LABELS: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

fn by_label(f: &Cf, fx: &Fixture) -> Vec<Dyadic> {
    let map = f.values_by_label(&fx.labeling).unwrap();
    LABELS.iter().map(|l| map[*l].clone()).collect()
}

fn ints(xs: [i64; 6]) -> Vec<Dyadic> {
    xs.iter().map(|&x| int(x)).collect()
}

fn eval(expr: &str, fx: &Fixture) -> Cf {
    parse_term(expr).unwrap().evaluate(&fx.complex)
}

#[test]
fn y_table_rows() {
    let y = spaces::y_space();
    let rows: [(&str, [i64; 6], i64); 6] = [
        ("1", [1, 1, 1, 1, 1, 1], 0),
        ("L(1)", [0, 1, 2, 1, -1, 0], 0),
        ("L(1)^2", [0, 1, 4, 1, 1, 0], 0),
        ("L(L(1)^2)", [1, 2, 2, 1, 1, 0], 0),
        ("W(L(1)^2)", [-1, -1, 2, 0, 0, 0], 0),
        ("L(1)*(L(1)^2 - L(L(1)^2))", [0, -1, 4, 0, 0, 0], 3),
    ];
    for (expr, values, integral) in rows {
        let f = eval(expr, &y);
        assert_eq!(by_label(&f, &y), ints(values), "{expr}");
        assert_eq!(f.euler_integral(), int(integral), "{expr}");
    }
}

#[test]
fn y_link_characteristics() {
    let y = spaces::y_space();
    let lambda = link_transform(&Cf::indicator(y.complex.clone()));
    assert_eq!(by_label(&lambda, &y), ints([0, 2, 4, 2, -2, 0]));
    assert_eq!(y.complex.euler_characteristic(), 0);
    assert_eq!(spaces::x_space().complex.euler_characteristic(), 2);
    assert_eq!(spaces::figure_eight().complex.euler_characteristic(), -1);
    assert_eq!(
        spaces::figure_eight_plus_point()
            .complex
            .euler_characteristic(),
        0
    );
    assert_eq!(spaces::circle().complex.euler_characteristic(), 0);
    assert_eq!(spaces::sphere().complex.euler_characteristic(), 2);
}

#[test]
fn eta_on_x() {
    let x = spaces::x_space();
    let phi = omega(&Cf::indicator(x.complex.clone()));
    let eta = omega(&phi.mul(&half_link(&phi.mul(&phi).unwrap())).unwrap());
    assert_eq!(eta, eval("W(W(1)*L(W(1)^2))", &x));
    let poles = ["N", "S"].map(|n| Simplex::vertex(x.complex.vertex_by_name(n).unwrap()));
    let minus_three_halves: Dyadic = "-3/2".parse().unwrap();
    for (s, v) in x.complex.simplices().iter().zip(eta.values()) {
        if poles.contains(s) {
            assert_eq!(*v, minus_three_halves);
        } else {
            assert_eq!(*v, int(0), "{:?}", x.complex.simplex_names(s));
        }
    }
    assert_eq!(minus_three_halves.to_string(), "-3/2");
}

#[test]
fn x_poles_see_y() {
    let x = spaces::x_space();
    let y = spaces::y_space();
    let n = x.complex.vertex_by_name("N").unwrap();
    let link = x.complex.link(&Simplex::vertex(n)).unwrap();
    assert_eq!(link.f_vector(), y.complex.f_vector());
    let phi = half_link(&Cf::indicator(x.complex.clone()));
    assert_eq!(phi.values_by_label(&x.labeling).unwrap()["N"], int(0));
}

#[test]
fn suspension_interchanges_operators() {
    let x = spaces::x_space();
    let n = x.complex.vertex_by_name("N").unwrap();
    let y = Arc::new(x.complex.link(&Simplex::vertex(n)).unwrap());
    let one = Cf::indicator(x.complex.clone());
    let phi = omega(&one);
    let xis = [
        one,
        phi.clone(),
        phi.mul(&half_link(&phi.mul(&phi).unwrap())).unwrap(),
    ];
    for xi in xis {
        let restricted = xi.restrict(&y).unwrap();
        assert_eq!(half_link(&xi).restrict(&y).unwrap(), omega(&restricted));
        assert_eq!(omega(&xi).restrict(&y).unwrap(), half_link(&restricted));
    }
}

#[test]
fn support_descends_on_y() {
    let y = spaces::y_space();
    assert_eq!(y.complex.dim(), Some(2));
    let one = Cf::indicator(y.complex.clone());
    assert_eq!(one.support_dimension(), Some(2));
    let phi = half_link(&one);
    assert_eq!(phi.support_dimension(), Some(1));
    assert_eq!(omega(&phi.mul(&phi).unwrap()).support_dimension(), Some(0));
}

#[test]
fn values_by_label_rejects_non_constant() {
    let y = spaces::y_space();
    let dim = Cf::from_fn(y.complex.clone(), |s| int(s.dim() as i64));
    match dim.values_by_label(&y.labeling) {
        Err(FunctionError::NotConstantOnLabel { label, .. }) => assert_eq!(label, "e"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn sullivan_examples() {
    let y = spaces::y_space();
    assert_eq!(
        sullivan_check::<Dyadic>(&y.complex).verdict,
        Verdict::PassWithinBudget
    );
    assert_eq!(
        sullivan_check::<Dyadic>(&spaces::x_space().complex).verdict,
        Verdict::PassWithinBudget
    );
    assert_eq!(
        sullivan_check::<Dyadic>(&spaces::circle().complex).verdict,
        Verdict::PassWithinBudget
    );
    let s8 = spaces::suspended_figure_eight();
    let report: Report = sullivan_check(&s8.complex);
    assert_eq!(report.verdict, Verdict::SullivanViolation);
    assert_eq!(report.witness, Some(Term::half_link(Term::one())));
    match report.detail.as_ref().unwrap() {
        cfcalc::Detail::OddLinkCharacteristic {
            simplex,
            euler_characteristic,
        } => {
            assert_eq!(simplex, &["N".to_string()]);
            assert_eq!(*euler_characteristic, int(-1));
        }
        other => panic!("{other:?}"),
    }
    assert!(report.verify(&s8.complex));
}

#[test]
fn fixtures_validate_and_round_trip() {
    for fx in spaces::all() {
        fx.validate().unwrap();
        let text = cfcalc::io::export_complex(&fx.complex, Some(&fx.labeling));
        let (k, labels) = cfcalc::parse_complex(&text).unwrap();
        assert_eq!(&k, fx.complex.as_ref(), "{}", fx.name);
        assert_eq!(labels.as_ref(), Some(&fx.labeling), "{}", fx.name);
    }
}

/// The coarse integral: per-label value times signed coarse cell count.
fn coarse_integral(f: &Cf, fx: &Fixture) -> Option<Dyadic> {
    let values = f.values_by_label(&fx.labeling).unwrap();
    let mut total = int(0);
    for (label, value) in &values {
        let cells = fx.coarse_cells.get(label)?;
        let signed: i64 = cells
            .iter()
            .map(|c| if c.dim % 2 == 0 { c.count } else { -c.count })
            .sum();
        total = total + value.clone() * int(signed);
    }
    Some(total)
}

#[test]
fn y_coarse_arithmetic() {
    let y = spaces::y_space();
    let phi = half_link(&Cf::indicator(y.complex.clone()));
    // (0 + 1 + 2) − (4·1 + (−1)) + 2·0
    assert_eq!(coarse_integral(&phi, &y), Some(int(0)));
    let counts: BTreeMap<&str, i64> = y
        .coarse_cells
        .iter()
        .map(|(l, cells)| (l.as_str(), cells.iter().map(|c| c.count).sum()))
        .collect();
    assert_eq!(counts["d"], 4);
    assert_eq!(counts["f"], 2);
}

/// Every generated function is constant on labels and its coarse integral
/// matches the simplicial one.
#[test]
fn generated_functions_respect_labels() {
    let budget = SearchBudget::default();
    for fx in spaces::all() {
        let all =
            enumerate_algebra::<Dyadic>(&fx.complex, budget, SearchOptions::default()).unwrap();
        assert!(all.used.functions > 0);
        for g in &all.items {
            if let Some(coarse) = coarse_integral(&g.function, &fx) {
                assert_eq!(
                    coarse,
                    g.function.euler_integral(),
                    "{} {}",
                    fx.name,
                    g.term
                );
            }
        }
    }
}
