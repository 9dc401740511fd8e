use proptest::prelude::*;

use pipedyn_cli::scenario::{NormalizedScenario, ScenarioFile};

fn scenario_text(unit: &str, scale: f64, length: f64, g0: f64, leak_at: f64, two_a: Option<f64>) -> String {
    let p_start = (0.1 * g0 * length + 2e5) / scale;
    let line = match two_a {
        Some(v) => format!(r#"{{"L": {length}, "two_a": {v}}}"#),
        None => format!(r#"{{"L": {length}, "d": 0.7, "lambda_h": 0.012, "v_mean": 8.0}}"#),
    };
    format!(
        r#"{{
            "units": "{unit}",
            "gas": {{"z": 0.9, "R": 500, "T": 280}},
            "line": {line},
            "steady": {{"p_start": {p_start}, "g0": {g0}}},
            "events": {{"leaks": [{{"ell2": {}, "g_ut": {g0}}}]}}
        }}"#,
        leak_at * length
    )
}

proptest! {
    #[test]
    fn normalization_is_idempotent(
        unit in prop_oneof![Just(("Pa", 1.0)), Just(("1e4Pa", 1e4)), Just(("1e-2MPa", 1e4))],
        length in 1e4..2e5f64,
        g0 in 1.0..50.0f64,
        leak_at in 0.05..0.95f64,
        two_a in prop::option::of(0.01..0.5f64),
    ) {
        let text = scenario_text(unit.0, unit.1, length, g0, leak_at, two_a);
        let once = ScenarioFile::parse(&text).unwrap().normalize().unwrap();
        let dumped = serde_json::to_string_pretty(&once).unwrap();
        let twice = ScenarioFile::parse(&dumped).unwrap().normalize().unwrap();
        prop_assert_eq!(&once, &twice);
        let n = NormalizedScenario::load(&text).unwrap();
        let want = (0.1 * g0 * length + 2e5) / unit.1 * unit.1;
        prop_assert!((n.p_start() - want).abs() <= 1e-9 * want);
    }
}
