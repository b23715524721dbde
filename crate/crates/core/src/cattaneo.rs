//! Spectra of the equilateral metric graph from discrete data.
//!
//! Edges have unit length and vertices carry Kirchhoff conditions. In the
//! momentum variable `z = √E`, the spectrum on `[0, π]` is the image of the
//! discrete Laplacian spectrum under `ξ(λ) = arccos(−λ)`, plus the Dirichlet
//! flat band `π`. The full spectrum is obtained by reflecting about `π` and
//! repeating with period `2π`.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::bracketing::{
    bracket_intervals, build_report, mirrored_check, spectrum_symmetric, BracketReport, Brackets, DomainEigendata,
    SymmetryCheck, INCLUSION_TOL, SYMMETRY_TOL,
};
use crate::domain::FundamentalDomain;
use crate::error::{Error, Result};
use crate::floquet::Potential;
use crate::graph::{is_bipartite, FundamentalGraph};
use crate::spectra::{detect_flat_bands, Band, BandSpectrum, FlatBand, Interval};

/// Values within this distance outside `[−1, 1]` are clamped.
pub const XI_CLAMP_TOL: f64 = 1e-12;

/// `ξ(λ) = arccos(−λ)`, an increasing bijection `[−1, 1] → [0, π]`.
pub fn xi_map(lambda: f64) -> Result<f64> {
    if lambda.is_nan() || lambda.abs() > 1.0 + XI_CLAMP_TOL {
        return Err(Error::XiDomain(lambda));
    }
    Ok((-lambda.clamp(-1.0, 1.0)).acos())
}

fn xi_interval(iv: &Interval) -> Result<Interval> {
    Ok(Interval::new(xi_map(iv.lo)?, xi_map(iv.hi)?))
}

#[derive(Debug, Clone)]
pub struct MetricSpectrum {
    /// `σ_n(Ω) = ξ(σ_n(Δ))`, one per fundamental vertex.
    pub bands: Vec<Band>,
    /// Flat bands `z_k = ξ(μ_k)` with the discrete band numbers they come from.
    pub flat: Vec<FlatBand>,
    /// The Dirichlet flat band `π`, always present.
    pub dirichlet_flat: f64,
}

impl MetricSpectrum {
    pub fn intervals(&self) -> Vec<Interval> {
        self.bands.iter().map(|b| b.interval).collect()
    }

    /// `Σ |σ_n(Ω)|`.
    pub fn band_sum(&self) -> f64 {
        self.bands.iter().map(|b| b.interval.width()).sum()
    }
}

/// Maps a discrete Laplacian sweep to bands of `Ω` on `[0, π]`.
pub fn metric_bands(b: &BandSpectrum) -> Result<MetricSpectrum> {
    if !b.zero_potential {
        return Err(Error::NonzeroPotential);
    }
    let bands = b
        .bands
        .iter()
        .map(|band| Ok(Band { interval: xi_interval(&band.interval)?, flat: band.flat }))
        .collect::<Result<Vec<_>>>()?;
    // detect_flat_bands rejects a flat band at ±1, so μ_k ≠ 1 below.
    let flat = detect_flat_bands(b, b.flat_tol)?
        .into_iter()
        .map(|f| Ok(FlatBand { value: xi_map(f.value)?, bands: f.bands }))
        .collect::<Result<Vec<_>>>()?;
    Ok(MetricSpectrum { bands, flat, dirichlet_flat: PI })
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnfoldedSpectrum {
    /// Merged, sorted band intervals.
    pub intervals: Vec<Interval>,
    /// Sorted flat points, including `πn`.
    pub flat_points: Vec<f64>,
}

const UNFOLD_TOL: f64 = 1e-12;

/// Unfolds `[0, π]` content to `[0, z_max]`: reflection about `π`, then
/// translation by multiples of `2π`. Non-flat bands become intervals; flat
/// bands and the Dirichlet points `πn` become flat points.
pub fn unfold_spectrum(m: &MetricSpectrum, z_max: f64) -> UnfoldedSpectrum {
    let periods = (z_max / (2.0 * PI)).ceil() as i64 + 1;
    let mut intervals = Vec::new();
    for band in m.bands.iter().filter(|b| !b.flat) {
        let Interval { lo, hi } = band.interval;
        for p in 0..periods {
            let shift = 2.0 * PI * p as f64;
            intervals.push(Interval::new(shift + lo, shift + hi));
            intervals.push(Interval::new(shift + 2.0 * PI - hi, shift + 2.0 * PI - lo));
        }
    }
    intervals.retain(|iv| iv.lo <= z_max + UNFOLD_TOL);
    for iv in intervals.iter_mut() {
        iv.hi = iv.hi.min(z_max);
    }
    intervals.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let mut merged: Vec<Interval> = Vec::new();
    for iv in intervals {
        match merged.last_mut() {
            Some(last) if iv.lo <= last.hi + UNFOLD_TOL => last.hi = last.hi.max(iv.hi),
            _ => merged.push(iv),
        }
    }

    let mut points = Vec::new();
    for f in &m.flat {
        for p in 0..periods {
            let shift = 2.0 * PI * p as f64;
            points.push(shift + f.value);
            points.push(shift + 2.0 * PI - f.value);
        }
    }
    let mut k = 1;
    while PI * k as f64 <= z_max + UNFOLD_TOL {
        points.push(PI * k as f64);
        k += 1;
    }
    points.retain(|&z| z <= z_max + UNFOLD_TOL);
    points.sort_by(f64::total_cmp);
    points.dedup_by(|a, b| (*a - *b).abs() <= UNFOLD_TOL);
    UnfoldedSpectrum { intervals: merged, flat_points: points }
}

/// Brackets `J_n`, `K_n` for `Ω` on `[0, π]`, obtained by applying `ξ` to
/// the first `ν_φ` eigenvalues of the domain operators.
pub fn metric_brackets(e: &DomainEigendata) -> Result<Brackets> {
    if e.sorted_potential.iter().any(|&q| q != 0.0) {
        return Err(Error::NonzeroPotential);
    }
    if let Some(&top) = e.dirichlet.last() {
        if top >= 1.0 {
            return Err(Error::DirichletTop(top));
        }
    }
    let discrete = bracket_intervals(e)?;
    let map = |v: &[Interval]| v.iter().map(xi_interval).collect::<Result<Vec<_>>>();
    Ok(Brackets { j: map(&discrete.j)?, k: map(&discrete.k)? })
}

/// Inclusion check for metric bands. Endpoints are compared in `z`, or
/// equivalently after pulling back through `−cos`, which stays well
/// conditioned near `0` and `π` where `ξ` has infinite slope.
pub fn verify_metric_bracketing(m: &MetricSpectrum, br: &Brackets, flat_tol: f64) -> Result<BracketReport> {
    let le = |a: f64, b: f64| a <= b + INCLUSION_TOL || -a.cos() <= -b.cos() + INCLUSION_TOL;
    build_report(&m.intervals(), br, flat_tol, |cap, band| le(cap.lo, band.lo) && le(band.hi, cap.hi))
}

/// `|σ(Ω)| ≤ (π/√2) · |σ(Δ)|^{1/2}`.
pub fn metric_measure_bound(discrete_sum: f64) -> Result<f64> {
    if discrete_sum < 0.0 || discrete_sum.is_nan() {
        return Err(Error::NegativeInput(discrete_sum));
    }
    Ok(PI / 2f64.sqrt() * discrete_sum.sqrt())
}

/// Checks `K_n = π − J_{ν−n+1}` (reversed) under the same hypotheses as
/// [`crate::bracketing::bipartite_symmetry_check`].
pub fn metric_symmetry_check(g: &FundamentalGraph, q: &Potential, e: &DomainEigendata, br: &Brackets) -> SymmetryCheck {
    if !q.is_zero() {
        return SymmetryCheck::Skipped("nonzero potential".into());
    }
    if is_bipartite(g).is_none() {
        return SymmetryCheck::Skipped("graph is not bipartite".into());
    }
    if !spectrum_symmetric(&e.neumann, 0.0, SYMMETRY_TOL) || !spectrum_symmetric(&e.dirichlet, 0.0, SYMMETRY_TOL) {
        return SymmetryCheck::Skipped("domain spectra are not symmetric".into());
    }
    mirrored_check(br, |z| PI - z)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PiMode {
    Neumann,
    Dirichlet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PiWitness {
    /// Edge amplitudes `c_e` with `Σ_{e ∋ v} c_e = 0` at every constrained vertex.
    IncidenceKernel,
    /// `±sin` alternating across a 2-colouring of the domain graph.
    Bipartite,
}

/// Outcome of testing whether `π` is an eigenvalue of `Ω₁` or `Ω_o`. Only
/// sufficient conditions are tested, so absence is never certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PiCheck {
    CertifiedPresent(PiWitness),
    NotDetected,
}

impl PiCheck {
    pub fn is_present(self) -> bool {
        matches!(self, PiCheck::CertifiedPresent(_))
    }

    pub fn label(self) -> &'static str {
        match self {
            PiCheck::CertifiedPresent(_) => "certified-present",
            PiCheck::NotDetected => "not-detected",
        }
    }
}

/// Singular values at or below this count as zero.
const RANK_TOL: f64 = 1e-10;

/// Tests whether `π` is an eigenvalue of the domain operator in `mode`.
///
/// Eigenfunctions `c_e sin(πt)` vanish at every vertex and satisfy Kirchhoff
/// iff the amplitudes sum to zero at each constrained vertex (all of `V₁`
/// for Neumann, `V_o` for Dirichlet); loops count twice.
pub fn pi_eigenvalue_check(dom: &FundamentalDomain, mode: PiMode) -> PiCheck {
    let constrained: Vec<usize> = match mode {
        PiMode::Neumann => (0..dom.vertex_count()).collect(),
        PiMode::Dirichlet => dom.inner_vertices(),
    };
    let m = dom.edges().len();
    let edges = dom.edges();
    let incidence = DMatrix::from_fn(constrained.len(), m, |r, c| {
        let (a, b) = edges[c];
        f64::from(u8::from(a == constrained[r]) + u8::from(b == constrained[r]))
    });
    let rank = if constrained.is_empty() { 0 } else { incidence.rank(RANK_TOL) };
    if rank < m {
        return PiCheck::CertifiedPresent(PiWitness::IncidenceKernel);
    }
    if mode == PiMode::Neumann && dom.is_bipartite() {
        return PiCheck::CertifiedPresent(PiWitness::Bipartite);
    }
    PiCheck::NotDetected
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{build_domain, DomainVertex};
    use crate::fixtures;
    use crate::graph::tests::edge;
    use crate::spectra::{band_sweep, SweepOptions};

    #[test]
    fn xi_values() {
        assert_eq!(xi_map(-1.0).unwrap(), 0.0);
        assert!((xi_map(1.0).unwrap() - PI).abs() < 1e-15);
        assert!((xi_map(0.0).unwrap() - PI / 2.0).abs() < 1e-15);
        assert!((xi_map(-1.0 / 3f64.sqrt()).unwrap() - 0.9553).abs() < 1e-4);
        assert!((xi_map(0.82).unwrap() - 2.532).abs() < 1e-3);
        assert_eq!(xi_map(1.0 + 1e-13).unwrap(), PI);
        assert!(matches!(xi_map(1.0 + 1e-9), Err(Error::XiDomain(_))));
        assert!(xi_map(f64::NAN).is_err());
    }

    #[test]
    fn z2_metric() {
        let f = fixtures::z2_lattice();
        let b = band_sweep(&f.graph, &f.potential, &SweepOptions { grid: 8, ..Default::default() }).unwrap();
        let m = metric_bands(&b).unwrap();
        assert_eq!(m.bands[0].interval, Interval::new(0.0, PI));
        assert!(m.flat.is_empty());
        let u = unfold_spectrum(&m, 2.0 * PI);
        assert_eq!(u.intervals.len(), 1);
        assert!((u.intervals[0].hi - 2.0 * PI).abs() < 1e-12 && u.intervals[0].lo == 0.0);
        assert_eq!(u.flat_points.len(), 2);
    }

    #[test]
    fn nonzero_potential_rejected() {
        let f = fixtures::z2_lattice();
        let b =
            band_sweep(&f.graph, &Potential::new(vec![0.5]), &SweepOptions { grid: 4, ..Default::default() }).unwrap();
        assert!(matches!(metric_bands(&b), Err(Error::NonzeroPotential)));
    }

    #[test]
    fn empty_unfold() {
        let m = MetricSpectrum { bands: vec![], flat: vec![], dirichlet_flat: PI };
        let u = unfold_spectrum(&m, 3.0 * PI);
        assert!(u.intervals.is_empty());
        assert_eq!(u.flat_points.len(), 3);
        for (k, z) in u.flat_points.iter().enumerate() {
            assert!((z - PI * (k + 1) as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn flat_zero_maps_to_half_pi() {
        let m = MetricSpectrum {
            bands: vec![Band { interval: Interval::point(PI / 2.0), flat: true }],
            flat: vec![FlatBand { value: xi_map(0.0).unwrap(), bands: vec![1] }],
            dirichlet_flat: PI,
        };
        let u = unfold_spectrum(&m, 2.0 * PI);
        assert!(u.intervals.is_empty());
        let want = [PI / 2.0, PI, 1.5 * PI, 2.0 * PI];
        assert_eq!(u.flat_points.len(), 4);
        for (a, b) in u.flat_points.iter().zip(want) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn measure_bound() {
        assert_eq!(metric_measure_bound(0.0).unwrap(), 0.0);
        assert!((metric_measure_bound(1.60).unwrap() - 2.81).abs() < 0.01);
        assert!(metric_measure_bound(-0.1).is_err());
    }

    #[test]
    fn five_vertex_pi_checks() {
        let f = fixtures::five_vertex_example();
        assert!(pi_eigenvalue_check(&f.domain, PiMode::Neumann).is_present());
        assert!(pi_eigenvalue_check(&f.domain, PiMode::Dirichlet).is_present());
    }

    #[test]
    fn single_edge_pi_via_bipartite() {
        let g = FundamentalGraph::new(1, vec!["a".into()], vec![edge(0, 0, &[1])]).unwrap();
        let dom = build_domain(
            &g,
            &[DomainVertex::new(0, vec![1])],
            &[(DomainVertex::new(0, vec![0]), DomainVertex::new(0, vec![1]))],
        )
        .unwrap();
        assert_eq!(pi_eigenvalue_check(&dom, PiMode::Neumann), PiCheck::CertifiedPresent(PiWitness::Bipartite));
    }

    #[test]
    fn dirichlet_top_asserted() {
        let e = DomainEigendata { neumann: vec![-1.0, 1.0], dirichlet: vec![1.0], nu: 1, sorted_potential: vec![0.0] };
        assert!(matches!(metric_brackets(&e), Err(Error::DirichletTop(_))));
    }
}
