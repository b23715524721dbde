//! Seeded property suite over a graph and its fundamental domains.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bracketing::{
    bipartite_symmetry_check, bracket_intervals, total_length_bound, verify_bracketing, DomainEigendata, SymmetryCheck,
};
use crate::cattaneo::{metric_bands, metric_brackets, metric_symmetry_check, verify_metric_bracketing, xi_map};
use crate::domain::FundamentalDomain;
use crate::error::Result;
use crate::floquet::{floquet_matrix, Potential};
use crate::graph::{is_bipartite, FundamentalGraph};
use crate::report::{fmt_num, Table};
use crate::spectra::{band_sweep, grid_multiset, torus_oracle, Execution, SweepOptions, TORUS_ORACLE_CAP};

pub const ORACLE_TOL: f64 = 1e-8;
pub const SHIFT_TOL: f64 = 1e-10;
pub const XI_ROUND_TRIP_TOL: f64 = 1e-12;
/// Band endpoints of a bipartite graph mirror about 0 only up to grid resolution.
pub const GRID_SYMMETRY_TOL: f64 = 0.02;
/// Slack for eigenvalue round-off in inequalities that hold exactly.
pub const ROUNDING_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    /// Grid for the randomized bracketing checks.
    pub grid: usize,
    pub execution: Execution,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { seed: 42, trials: 100, grid: 32, execution: Execution::Parallel }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    /// `None` when the check does not apply.
    pub passed: Option<bool>,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct SuiteReport {
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed != Some(false))
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn table(&self) -> Table {
        let mut t = Table::new(["check", "status", "detail"]);
        for c in &self.checks {
            let status = match c.passed {
                Some(true) => "pass",
                Some(false) => "FAIL",
                None => "skip",
            };
            t.push(vec![c.name.clone(), status.into(), c.detail.clone()]);
        }
        t
    }

    fn push(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(CheckResult { name: name.into(), passed: Some(passed), detail });
    }

    fn skip(&mut self, name: &str, detail: String) {
        self.checks.push(CheckResult { name: name.into(), passed: None, detail });
    }
}

fn random_potential(rng: &mut ChaCha8Rng, n: usize) -> Potential {
    Potential::new((0..n).map(|_| rng.random_range(-2.0..=2.0)).collect())
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn symmetry_result(report: &mut SuiteReport, name: &str, check: SymmetryCheck) {
    match check {
        SymmetryCheck::Holds => report.push(name, true, "holds".into()),
        SymmetryCheck::Violated { n, expected, found } => report.push(
            name,
            false,
            format!(
                "band {n}: expected [{}, {}], found [{}, {}]",
                fmt_num(expected.lo),
                fmt_num(expected.hi),
                fmt_num(found.lo),
                fmt_num(found.hi)
            ),
        ),
        SymmetryCheck::Skipped(why) => report.skip(name, why),
    }
}

/// Runs every property check. `domains` may be empty, which skips the
/// domain-based checks.
pub fn run_suite(g: &FundamentalGraph, domains: &[FundamentalDomain], cfg: &SuiteConfig) -> Result<SuiteReport> {
    let nu = g.vertex_count();
    let d = g.dimension();
    let zero = Potential::zeros(nu);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = SuiteReport::default();
    let sweep = |q: &Potential, grid: usize, keep_table: bool| {
        band_sweep(g, q, &SweepOptions { grid, keep_table, execution: cfg.execution, ..Default::default() })
    };

    // Oracle equivalence against the quotient torus.
    let mut worst = 0.0f64;
    let mut ran = Vec::new();
    let oracle_q = random_potential(&mut rng, nu);
    for period in [2usize, 4] {
        if nu * period.pow(d as u32) > TORUS_ORACLE_CAP {
            continue;
        }
        for q in [&zero, &oracle_q] {
            let a = torus_oracle(g, q, period)?;
            let b = grid_multiset(g, q, period, cfg.execution)?;
            worst = worst.max(if a.len() == b.len() { max_abs_diff(&a, &b) } else { f64::INFINITY });
        }
        ran.push(period.to_string());
    }
    if ran.is_empty() {
        report.skip("oracle-equivalence", "torus quotient above size cap".into());
    } else {
        report.push(
            "oracle-equivalence",
            worst <= ORACLE_TOL,
            format!("N={} max deviation {}", ran.join(","), fmt_num(worst)),
        );
    }

    let mut hermitian_ok = true;
    let mut apriori_worst = f64::NEG_INFINITY;
    let mut inclusion_failures = 0usize;
    let mut interlacing_failures = 0usize;
    let mut bound_failures = 0usize;
    let mut shift_worst = 0.0f64;
    for _ in 0..cfg.trials {
        let q = random_potential(&mut rng, nu);
        let theta: Vec<f64> = (0..d).map(|_| rng.random_range(-10.0..10.0)).collect();
        let h = floquet_matrix(g, &q, &theta)?;
        for j in 0..nu {
            for k in 0..nu {
                if h.get(j, k) != h.get(k, j).conj() {
                    hermitian_ok = false;
                }
            }
        }

        let b = sweep(&q, cfg.grid, true)?;
        let qs = q.sorted();
        for row in b.table.as_deref().unwrap_or_default().chunks(nu) {
            for (n, &l) in row.iter().enumerate() {
                apriori_worst = apriori_worst.max((qs[n] - 1.0) - l).max(l - (qs[n] + 1.0));
            }
        }

        for dom in domains {
            let e = DomainEigendata::compute(g, dom, &q)?;
            let br = bracket_intervals(&e)?;
            if !verify_bracketing(&b, &br)?.passed() {
                inclusion_failures += 1;
            }
            let (nu1, nuo) = (e.nu1(), e.nu_o());
            for n in 0..nuo {
                if e.neumann[n] > e.dirichlet[n] + ROUNDING_TOL
                    || e.dirichlet[n] > e.neumann[n + nu1 - nuo] + ROUNDING_TOL
                {
                    interlacing_failures += 1;
                }
            }
            if total_length_bound(&e)?.value + ROUNDING_TOL < b.measure().0 {
                bound_failures += 1;
            }
        }

        let c: f64 = rng.random_range(-1.0..1.0);
        let small = sweep(&q, 8, false)?;
        let shifted = sweep(&q.shifted(c), 8, false)?;
        for (a, s) in small.bands.iter().zip(&shifted.bands) {
            shift_worst = shift_worst
                .max((a.interval.lo + c - s.interval.lo).abs())
                .max((a.interval.hi + c - s.interval.hi).abs());
        }
    }
    let trials = cfg.trials;
    report.push("hermiticity", hermitian_ok, format!("{trials} random (q, θ), exact"));
    report.push(
        "a-priori-bound",
        apriori_worst <= ROUNDING_TOL,
        format!("{trials} potentials, N={}, worst excess {}", cfg.grid, fmt_num(apriori_worst.max(0.0))),
    );
    report.push("shift-covariance", shift_worst <= SHIFT_TOL, format!("max deviation {}", fmt_num(shift_worst)));
    if domains.is_empty() {
        for name in ["bracketing-inclusion", "cauchy-interlacing", "total-length-bound"] {
            report.skip(name, "no domain".into());
        }
    } else {
        let runs = trials * domains.len();
        report.push("bracketing-inclusion", inclusion_failures == 0, format!("{inclusion_failures}/{runs} failures"));
        report.push("cauchy-interlacing", interlacing_failures == 0, format!("{interlacing_failures} violations"));
        report.push("total-length-bound", bound_failures == 0, format!("{bound_failures}/{runs} failures"));
    }

    let mut xi_worst = 0.0f64;
    for _ in 0..1000 {
        let l: f64 = rng.random_range(-1.0..=1.0);
        xi_worst = xi_worst.max((-xi_map(l)?.cos() - l).abs());
    }
    report.push("xi-round-trip", xi_worst <= XI_ROUND_TRIP_TOL, format!("max deviation {}", fmt_num(xi_worst)));

    let base = sweep(&zero, 64, false)?;
    let perron = base.bands[0].interval.lo;
    report.push("perron-minimum", (perron + 1.0).abs() <= ROUNDING_TOL, format!("λ₁(0) = {}", fmt_num(perron)));

    let coarse = sweep(&zero, 32, false)?;
    let refined = coarse.bands.iter().zip(&base.bands).all(|(c, f)| f.interval.contains(&c.interval, ROUNDING_TOL));
    report.push("grid-refinement", refined, "N=32 bands inside N=64 bands".into());

    let metric = metric_bands(&base)?;
    let mut metric_fail = 0;
    for dom in domains {
        let e = DomainEigendata::compute(g, dom, &zero)?;
        let br = metric_brackets(&e)?;
        if !verify_metric_bracketing(&metric, &br, base.flat_tol)?.passed() {
            metric_fail += 1;
        }
    }
    if domains.is_empty() {
        report.skip("metric-inclusion", "no domain".into());
    } else {
        report.push("metric-inclusion", metric_fail == 0, format!("{metric_fail}/{} failures at N=64", domains.len()));
    }

    if is_bipartite(g).is_some() {
        let mut ends: Vec<f64> = base.bands.iter().flat_map(|b| [b.interval.lo, b.interval.hi]).collect();
        let mut mirrored: Vec<f64> = ends.iter().map(|x| -x).collect();
        ends.sort_by(f64::total_cmp);
        mirrored.sort_by(f64::total_cmp);
        let dev = max_abs_diff(&ends, &mirrored);
        report.push(
            "bipartite-spectrum-symmetry",
            dev <= GRID_SYMMETRY_TOL,
            format!("max endpoint deviation {}", fmt_num(dev)),
        );
        for (i, dom) in domains.iter().enumerate() {
            let e = DomainEigendata::compute(g, dom, &zero)?;
            let br = bracket_intervals(&e)?;
            symmetry_result(
                &mut report,
                &format!("bipartite-eta-symmetry[{}]", i + 1),
                bipartite_symmetry_check(g, &zero, &e, &br),
            );
            let mbr = metric_brackets(&e)?;
            symmetry_result(
                &mut report,
                &format!("bipartite-zeta-symmetry[{}]", i + 1),
                metric_symmetry_check(g, &zero, &e, &mbr),
            );
        }
    } else {
        report.skip("bipartite-spectrum-symmetry", "graph is not bipartite".into());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn z2_suite_passes() {
        let f = fixtures::z2_lattice();
        let cfg = SuiteConfig { trials: 5, ..Default::default() };
        let r = run_suite(&f.graph, std::slice::from_ref(&f.domain), &cfg).unwrap();
        assert!(r.all_passed(), "{}", r.table().to_text());
    }
}
