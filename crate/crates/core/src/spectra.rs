//! Band sweeps over the quasimomentum torus.
//!
//! The `n`-th band is the range of the `n`-th sorted eigenvalue `λ_n(θ)` of
//! `H(θ)`. The sweep samples `θ` on the uniform grid `{2πk/N}^d` and reports
//! grid extrema, so endpoints are inner approximations of the true bands.
//! With even `N` the corner momenta `{0, π}^d` are sampled exactly.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::eigen::{eigvals_hermitian, eigvals_symmetric};
use crate::error::{Error, Result};
use crate::floquet::{floquet_matrix, Potential};
use crate::graph::{cell_count, cell_of, quotient_torus, FundamentalGraph};

pub const DEFAULT_GRID: usize = 64;
pub const DEFAULT_FLAT_TOL: f64 = 1e-8;
/// Largest torus quotient the brute-force oracle will diagonalize.
pub const TORUS_ORACLE_CAP: usize = 4000;

/// A closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, other: &Interval, tol: f64) -> bool {
        other.lo >= self.lo - tol && other.hi <= self.hi + tol
    }

    /// Intersection; `None` when the intervals are disjoint by more than `tol`.
    /// A gap within `tol` collapses to its midpoint.
    pub fn intersect(&self, other: &Interval, tol: f64) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        if lo <= hi {
            Some(Interval::new(lo, hi))
        } else if lo - hi <= tol {
            Some(Interval::point(0.5 * (lo + hi)))
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Band {
    pub interval: Interval,
    pub flat: bool,
}

/// How the sweep distributes grid points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Rayon data-parallel map; identical to `Sequential` without the `parallel` feature.
    #[default]
    Parallel,
}

#[derive(Debug, Clone, Copy)]
pub struct SweepOptions {
    pub grid: usize,
    pub flat_tol: f64,
    /// Retain `λ_n(θ)` for every grid point.
    pub keep_table: bool,
    pub execution: Execution,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self { grid: DEFAULT_GRID, flat_tol: DEFAULT_FLAT_TOL, keep_table: false, execution: Execution::Parallel }
    }
}

#[derive(Debug, Clone)]
pub struct BandSpectrum {
    pub bands: Vec<Band>,
    pub grid: usize,
    pub dimension: usize,
    pub flat_tol: f64,
    /// True when computed for the pure Laplacian.
    pub zero_potential: bool,
    /// Row-major `N^d × ν` table, rows in grid order (last θ component fastest).
    pub table: Option<Vec<f64>>,
}

impl BandSpectrum {
    pub fn band_count(&self) -> usize {
        self.bands.len()
    }

    pub fn intervals(&self) -> Vec<Interval> {
        self.bands.iter().map(|b| b.interval).collect()
    }

    /// `θ` of grid point `k`.
    pub fn theta(&self, k: usize) -> Vec<f64> {
        grid_theta(k, self.grid, self.dimension)
    }

    /// Sum of band lengths and measure of their union.
    pub fn measure(&self) -> (f64, f64) {
        band_measure(&self.intervals())
    }
}

pub(crate) fn grid_theta(k: usize, grid: usize, dimension: usize) -> Vec<f64> {
    cell_of(k, grid, dimension).into_iter().map(|m| 2.0 * PI * m as f64 / grid as f64).collect()
}

fn check_grid(grid: usize) -> Result<()> {
    if grid < 2 || !grid.is_multiple_of(2) {
        return Err(Error::GridSize(grid));
    }
    Ok(())
}

fn point_eigenvalues(g: &FundamentalGraph, q: &Potential, theta: &[f64]) -> Result<Vec<f64>> {
    eigvals_hermitian(&floquet_matrix(g, q, theta)?)
}

type Extrema = (Vec<f64>, Vec<f64>);

fn fold_extrema(mut acc: Extrema, ev: &[f64]) -> Extrema {
    for (n, &x) in ev.iter().enumerate() {
        acc.0[n] = acc.0[n].min(x);
        acc.1[n] = acc.1[n].max(x);
    }
    acc
}

#[cfg(feature = "parallel")]
fn merge_extrema(mut a: Extrema, b: Extrema) -> Extrema {
    for n in 0..a.0.len() {
        a.0[n] = a.0[n].min(b.0[n]);
        a.1[n] = a.1[n].max(b.1[n]);
    }
    a
}

fn fill_table(g: &FundamentalGraph, q: &Potential, grid: usize, table: &mut [f64], exec: Execution) -> Result<()> {
    let nu = g.vertex_count();
    let d = g.dimension();
    let fill = |(k, row): (usize, &mut [f64])| -> Result<()> {
        row.copy_from_slice(&point_eigenvalues(g, q, &grid_theta(k, grid, d))?);
        Ok(())
    };
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            table.par_chunks_mut(nu).enumerate().try_for_each(fill)
        }
        _ => table.chunks_mut(nu).enumerate().try_for_each(fill),
    }
}

fn sweep_extrema(g: &FundamentalGraph, q: &Potential, grid: usize, exec: Execution) -> Result<Extrema> {
    let nu = g.vertex_count();
    let d = g.dimension();
    let points = cell_count(grid, d);
    let init = || (vec![f64::INFINITY; nu], vec![f64::NEG_INFINITY; nu]);
    let eval = |k: usize| point_eigenvalues(g, q, &grid_theta(k, grid, d));
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            // min/max are exact and order independent, so the reduction is deterministic.
            (0..points)
                .into_par_iter()
                .try_fold(init, |acc, k| Ok(fold_extrema(acc, &eval(k)?)))
                .try_reduce(init, |a, b| Ok(merge_extrema(a, b)))
        }
        _ => (0..points).try_fold(init(), |acc, k| Ok(fold_extrema(acc, &eval(k)?))),
    }
}

/// Samples `λ_n(θ)` on the `N^d` grid and returns per-band extrema.
pub fn band_sweep(g: &FundamentalGraph, q: &Potential, opts: &SweepOptions) -> Result<BandSpectrum> {
    check_grid(opts.grid)?;
    let d = g.dimension();
    if d > 3 {
        return Err(Error::SweepDimension(d));
    }
    q.check_len(g.vertex_count())?;
    let nu = g.vertex_count();
    let (table, (lo, hi)) = if opts.keep_table {
        let mut table = vec![0.0; cell_count(opts.grid, d) * nu];
        fill_table(g, q, opts.grid, &mut table, opts.execution)?;
        let ext = table.chunks(nu).fold((vec![f64::INFINITY; nu], vec![f64::NEG_INFINITY; nu]), fold_extrema);
        (Some(table), ext)
    } else {
        (None, sweep_extrema(g, q, opts.grid, opts.execution)?)
    };
    let bands = lo
        .into_iter()
        .zip(hi)
        .map(|(lo, hi)| Band { interval: Interval::new(lo, hi), flat: hi - lo <= opts.flat_tol })
        .collect();
    Ok(BandSpectrum {
        bands,
        grid: opts.grid,
        dimension: d,
        flat_tol: opts.flat_tol,
        zero_potential: q.is_zero(),
        table,
    })
}

/// A flat band value with the band numbers (1-based) that collapse onto it.
#[derive(Debug, Clone, PartialEq)]
pub struct FlatBand {
    pub value: f64,
    pub bands: Vec<usize>,
}

impl FlatBand {
    pub fn multiplicity(&self) -> usize {
        self.bands.len()
    }
}

/// Bands of width at most `eps`, with equal values merged.
///
/// For the pure Laplacian a flat band at `±1` is impossible and is reported
/// as an error.
pub fn detect_flat_bands(b: &BandSpectrum, eps: f64) -> Result<Vec<FlatBand>> {
    let mut out: Vec<FlatBand> = Vec::new();
    for (n, band) in b.bands.iter().enumerate() {
        let iv = band.interval;
        if iv.width() > eps {
            continue;
        }
        let value = 0.5 * (iv.lo + iv.hi);
        if b.zero_potential && (value.abs() - 1.0).abs() <= eps {
            return Err(Error::FlatAtUnit(value));
        }
        match out.last_mut() {
            Some(last) if (last.value - value).abs() <= eps => last.bands.push(n + 1),
            _ => out.push(FlatBand { value, bands: vec![n + 1] }),
        }
    }
    Ok(out)
}

/// `(Σ |σ_n|, |∪ σ_n|)`.
pub fn band_measure(intervals: &[Interval]) -> (f64, f64) {
    let sum = intervals.iter().map(Interval::width).sum();
    let mut sorted = intervals.to_vec();
    sorted.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let mut union = 0.0;
    let mut current: Option<Interval> = None;
    for iv in sorted {
        current = match current {
            Some(c) if iv.lo <= c.hi => Some(Interval::new(c.lo, c.hi.max(iv.hi))),
            Some(c) => {
                union += c.width();
                Some(iv)
            }
            None => Some(iv),
        };
    }
    if let Some(c) = current {
        union += c.width();
    }
    (sum, union)
}

/// Full spectrum of `Δ + q` on the quotient torus `Γ / (N Z)^d`.
pub fn torus_oracle(g: &FundamentalGraph, q: &Potential, period: usize) -> Result<Vec<f64>> {
    q.check_len(g.vertex_count())?;
    let size = g.vertex_count() * cell_count(period, g.dimension());
    if size > TORUS_ORACLE_CAP {
        return Err(Error::TorusTooLarge(size));
    }
    let t = quotient_torus(g, period)?;
    let deg = t.degrees();
    let mut m = DMatrix::<f64>::zeros(size, size);
    for &(a, b) in &t.edges {
        if a == b {
            m[(a, a)] += 2.0;
        } else {
            m[(a, b)] += 1.0;
            m[(b, a)] += 1.0;
        }
    }
    for a in 0..size {
        for b in 0..size {
            m[(a, b)] *= -1.0 / ((deg[a] * deg[b]) as f64).sqrt();
        }
        m[(a, a)] += q.values()[t.vertices[a].0];
    }
    eigvals_symmetric(&m)
}

/// Sorted union (with multiplicity) of the spectra of `H(θ)` over the grid.
pub fn grid_multiset(g: &FundamentalGraph, q: &Potential, grid: usize, exec: Execution) -> Result<Vec<f64>> {
    let opts = SweepOptions { grid, keep_table: true, execution: exec, ..Default::default() };
    let mut all = band_sweep(g, q, &opts)?.table.unwrap_or_default();
    all.sort_by(f64::total_cmp);
    Ok(all)
}
