use std::fs;

use rrd::emit::{emit, overlay_svg, report_csv, Formats};
use rrd::harness::{run_experiment, Estimator, Outcome};
use rrd::ExperimentConfig;

fn small(seed: u64) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::benchmark(1_000.0, 0.1, vec![0, 1, 2], 6);
    cfg.base_seed = seed;
    cfg
}

#[test]
fn repeated_runs_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = small(42);
    for name in ["a", "b"] {
        let report = run_experiment(&cfg).unwrap();
        emit(&report, &tmp.path().join(name), Formats::default()).unwrap();
    }
    for file in [
        "report.csv",
        "replicates.csv",
        "pm_table.csv",
        "estimates_corrected_k2.csv",
        "overlay.svg",
    ] {
        let a = fs::read(tmp.path().join("a").join(file)).unwrap();
        let b = fs::read(tmp.path().join("b").join(file)).unwrap();
        assert_eq!(a, b, "{file}");
    }
}

#[test]
fn replicates_do_not_depend_on_each_other() {
    // replicate r of a long run equals the only replicate of a run that starts there
    let long = run_experiment(&small(9)).unwrap();
    let naive = long.summary(Estimator::Naive).unwrap();
    let mut one = small(9);
    one.replicates = 1;
    let single = run_experiment(&one).unwrap();
    assert_eq!(single.seeds[0], long.seeds[0]);
    assert_eq!(
        single.summary(Estimator::Naive).unwrap().outcomes[0],
        naive.outcomes[0]
    );
    let mut seeds = long.seeds.clone();
    seeds.sort();
    seeds.dedup();
    assert_eq!(seeds.len(), long.seeds.len());
}

#[test]
fn report_csv_round_trips() {
    let report = run_experiment(&small(1)).unwrap();
    let text = report_csv(&report);
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), report.estimators.len());
    for (row, s) in rows.iter().zip(&report.estimators) {
        assert_eq!(&row[0], s.name());
        assert_eq!(row[1].parse::<f64>().unwrap(), s.mean_l2);
        assert_eq!(row[2].parse::<f64>().unwrap(), s.std_l2);
        assert_eq!(row[3].parse::<usize>().unwrap(), s.n_ok);
        assert_eq!(row[4].parse::<usize>().unwrap(), s.n_failed);
        assert_eq!(row[5].parse::<f64>().unwrap(), report.kappa());
        let ok: Vec<f64> = s.outcomes.iter().filter_map(Outcome::value).collect();
        let mean = ok.iter().sum::<f64>() / ok.len() as f64;
        assert!((mean - s.mean_l2).abs() <= 1e-12);
    }
}

#[test]
fn svg_has_a_polyline_per_curve() {
    let mut report = run_experiment(&small(2)).unwrap();
    let svg = overlay_svg(&report);
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(
        svg.matches("<polyline").count(),
        report.estimators.len() + 1
    );
    assert!(svg.contains("data-name=\"truth\""));

    // dropping the corrected columns leaves oracle, naive and the truth
    let keep: Vec<bool> = report
        .estimators
        .iter()
        .map(|s| matches!(s.estimator, Estimator::Oracle | Estimator::Naive))
        .collect();
    let mut it = keep.iter();
    report.estimators.retain(|_| *it.next().unwrap());
    let mut it = keep.iter();
    report.representative.retain(|_| *it.next().unwrap());
    assert_eq!(overlay_svg(&report).matches("<polyline").count(), 3);
    let text = report_csv(&report);
    assert_eq!(text.lines().count(), 3);
    assert!(text.contains("\noracle,") && text.contains("\nnaive,"));
}

#[test]
fn naive_error_does_not_grow_with_horizon() {
    // delta = T^(-1/2) keeps T delta^2 fixed while T doubles
    let run = |horizon: f64| {
        let mut cfg = ExperimentConfig::benchmark(horizon, horizon.powf(-0.5), vec![0], 50);
        cfg.include_oracle = false;
        cfg.base_seed = 123;
        run_experiment(&cfg)
            .unwrap()
            .summary(Estimator::Naive)
            .unwrap()
            .mean_l2
    };
    let (short, long) = (run(2_500.0), run(5_000.0));
    assert!(long <= short, "T=2500: {short:e}, T=5000: {long:e}");
}
