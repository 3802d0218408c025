use proptest::prelude::*;
use ratpoints::formula::parse_formula;
use ratpoints::{
    decide_rational_sos_with, find_rational_points, semialgebraic_solve, EngineConfig, Error, SosOptions,
};

fn seq() -> EngineConfig {
    EngineConfig { parallel: false, ..EngineConfig::default() }
}

fn par() -> EngineConfig {
    EngineConfig { parallel: true, ..EngineConfig::default() }
}

const CASES: &[&str] = &[
    "(and (<= (+ (^ y1 2) (^ y2 2)) 1) (>= (+ (* 3 y1) (* 4 y2)) 5))",
    "(and (<= (+ (^ y1 2) (^ y2 2) (^ y3 2)) 1) (>= (+ y1 y2 y3) 1))",
    "(and (<= (+ (^ (- y1 1) 2) (^ y2 2)) 2) (<= (+ (^ (+ y1 1) 2) (^ y2 2)) 2))",
    "(and (= (^ y1 2) 3) (>= y1 0) (<= (^ y2 2) 1))",
    "(< (+ (^ y1 2) (^ y2 2)) 1)",
];

#[test]
fn parallel_and_sequential_agree() {
    for src in CASES {
        let phi = parse_formula(src).unwrap();
        assert_eq!(semialgebraic_solve(&phi, &seq()).unwrap(), semialgebraic_solve(&phi, &par()).unwrap(), "{src}");
        assert_eq!(find_rational_points(&phi, &seq()).unwrap(), find_rational_points(&phi, &par()).unwrap(), "{src}");
    }
}

#[test]
fn tiny_cell_budget_is_reported() {
    let phi = parse_formula(CASES[1]).unwrap();
    for mut cfg in [seq(), par()] {
        cfg.budget.max_cells = 3;
        assert!(matches!(find_rational_points(&phi, &cfg), Err(Error::BudgetExhausted(_))));
    }
}

#[test]
fn sos_without_probe_matches_sequentially() {
    let f = ratpoints::formula::parse_polynomial("x^2 - 2*x*y + 2*y^2").unwrap().poly;
    for engine in [seq(), par()] {
        let opts = SosOptions { prune: true, probe: false, engine };
        let d = decide_rational_sos_with(&f, &opts).unwrap();
        assert!(matches!(d, ratpoints::SOSDecision::SOSOverQ { .. }), "{d:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // disk of radius^2 r around (a, b) cut by a half-plane
    #[test]
    fn disk_cuts_agree(a in -3i64..=3, b in -3i64..=3, r in 1i64..=5, u in -3i64..=3, w in 1i64..=3, c in -6i64..=6) {
        let src = format!(
            "(and (<= (+ (^ (- y1 {a}) 2) (^ (- y2 {b}) 2)) {r}) (>= (+ (* {u} y1) (* {w} y2)) {c}))"
        );
        let phi = parse_formula(&src).unwrap();
        let s = find_rational_points(&phi, &seq()).unwrap();
        let p = find_rational_points(&phi, &par()).unwrap();
        prop_assert_eq!(&s, &p);
        if let Some(pt) = s {
            prop_assert!(phi.evaluate(pt.coords()).unwrap());
        }
    }
}
