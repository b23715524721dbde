use pgspec_core::bracketing::intersect_domains;
use pgspec_core::cattaneo::{metric_bands, metric_brackets, metric_measure_bound, verify_metric_bracketing};
use pgspec_core::document::parse_domain;
use pgspec_core::fixtures::{self, NAMES};
use pgspec_core::spectra::{grid_multiset, torus_oracle};
use pgspec_core::suite::{run_suite, SuiteConfig};
use pgspec_core::{
    band_sweep, bracket_intervals, total_length_bound, verify_bracketing, DomainEigendata, Execution, Potential,
    SweepOptions,
};

/// Alternative domain for the five-vertex example: the periodic edges are
/// attached on the opposite side.
const ALT_DOMAIN: &str = r#"{
  "vertices": [
    {"base": "v3", "cell": [-1, 0], "name": "w1"},
    {"base": "v3", "cell": [0, -1], "name": "w2"},
    {"base": "v4", "cell": [0, -1], "name": "w3"}
  ],
  "edges": [
    ["v1", "v3"], ["v1", "v4"], ["v2", "v3"], ["v2", "v4"],
    ["v3", "v4"], ["w1", "v4"],
    ["v3", "v5"], ["w2", "v5"],
    ["v4", "v5"], ["w3", "v5"]
  ]
}"#;

#[test]
fn bundled_suites_pass() {
    for name in NAMES {
        let f = fixtures::fixture(name).unwrap();
        let cfg = SuiteConfig { trials: 20, ..Default::default() };
        let r = run_suite(&f.graph, std::slice::from_ref(&f.domain), &cfg).unwrap();
        assert!(r.all_passed(), "{name}\n{}", r.table().to_text());
    }
}

#[test]
fn second_domain_tightens_intersection() {
    let f = fixtures::five_vertex_example();
    let alt = parse_domain(ALT_DOMAIN, &f.graph).unwrap();
    assert_eq!(alt.inner_count(), 3);
    let q = Potential::zeros(5);
    let b = band_sweep(&f.graph, &q, &SweepOptions::default()).unwrap();
    let mut all = Vec::new();
    for dom in [&f.domain, &alt] {
        let e = DomainEigendata::compute(&f.graph, dom, &q).unwrap();
        let br = bracket_intervals(&e).unwrap();
        assert!(verify_bracketing(&b, &br).unwrap().passed());
        all.push(br);
    }
    let isect = intersect_domains(&all).unwrap();
    for ((band, cap), single) in b.intervals().iter().zip(&isect).zip(all[0].caps().unwrap()) {
        assert!(cap.contains(band, 1e-8));
        assert!(single.contains(cap, 1e-12));
    }
}

#[test]
fn random_potentials_on_both_five_vertex_domains() {
    let f = fixtures::five_vertex_example();
    let alt = parse_domain(ALT_DOMAIN, &f.graph).unwrap();
    let mut x = 0.37f64;
    for _ in 0..20 {
        let q: Vec<f64> = (0..5)
            .map(|_| {
                x = (x * 9301.0 + 0.49297).fract();
                4.0 * x - 2.0
            })
            .collect();
        let q = Potential::new(q);
        let b = band_sweep(&f.graph, &q, &SweepOptions { grid: 32, ..Default::default() }).unwrap();
        for dom in [&f.domain, &alt] {
            let e = DomainEigendata::compute(&f.graph, dom, &q).unwrap();
            assert!(verify_bracketing(&b, &bracket_intervals(&e).unwrap()).unwrap().passed());
            assert!(total_length_bound(&e).unwrap().value + 1e-10 >= b.measure().0);
        }
    }
}

#[test]
fn torus_oracle_matches_grid() {
    for name in NAMES {
        let f = fixtures::fixture(name).unwrap();
        for period in [2, 4, 6] {
            let a = torus_oracle(&f.graph, &f.potential, period).unwrap();
            let b = grid_multiset(&f.graph, &f.potential, period, Execution::Sequential).unwrap();
            assert_eq!(a.len(), b.len());
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() <= 1e-8, "{name} N={period}: {x} vs {y}");
            }
        }
    }
}

#[test]
fn sequential_and_parallel_sweeps_agree_bitwise() {
    for name in NAMES {
        let f = fixtures::fixture(name).unwrap();
        let run = |execution| {
            band_sweep(&f.graph, &f.potential, &SweepOptions { keep_table: true, execution, ..Default::default() })
                .unwrap()
        };
        let (s, p) = (run(Execution::Sequential), run(Execution::Parallel));
        assert_eq!(s.bands, p.bands);
        assert_eq!(s.table, p.table);
    }
}

#[test]
fn five_vertex_metric_side() {
    let f = fixtures::five_vertex_example();
    let b = band_sweep(&f.graph, &f.potential, &SweepOptions::default()).unwrap();
    let m = metric_bands(&b).unwrap();
    let e = DomainEigendata::compute(&f.graph, &f.domain, &f.potential).unwrap();
    let rep = verify_metric_bracketing(&m, &metric_brackets(&e).unwrap(), b.flat_tol).unwrap();
    assert!(rep.passed());
    assert_eq!(rep.gaps, vec![1, 4]);
    let bound = total_length_bound(&e).unwrap().value;
    assert!((metric_measure_bound(bound).unwrap() - 2.81).abs() < 0.005);
    assert!((m.band_sum() - 1.80).abs() < 0.01, "{}", m.band_sum());
}
