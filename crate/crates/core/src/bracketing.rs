//! Neumann/Dirichlet operators on a fundamental domain and the band
//! brackets they produce.
//!
//! With `λ¹` the Neumann eigenvalues (`ν₁` of them), `λᵒ` the Dirichlet
//! eigenvalues (`ν_o`), and `q•` the sorted potential, band `n` satisfies
//! `σ_n ⊂ J_n ∩ K_n` where
//!
//! ```text
//! J_n = [λ¹_n, λᵒ_n]                  n ≤ ν_o
//!       [λ¹_n, q•_n + 1]              n > ν_o
//! K_n = [q•_n − 1, λ¹_{n+ν₁−ν}]         n ≤ ν − ν_o
//!       [λᵒ_{n−ν+ν_o}, λ¹_{n+ν₁−ν}]     n > ν − ν_o
//! ```

use nalgebra::DMatrix;

use crate::domain::FundamentalDomain;
use crate::eigen::eigvals_symmetric;
use crate::error::{Error, Result};
use crate::floquet::Potential;
use crate::graph::{is_bipartite, FundamentalGraph};
use crate::spectra::{BandSpectrum, Interval};

/// Endpoint tolerance for inclusion checks and bracket consistency.
pub const INCLUSION_TOL: f64 = 1e-8;
/// Tolerance for the mirror identity between `J` and `K` brackets.
pub const SYMMETRY_TOL: f64 = 1e-8;
const ORDER_TOL: f64 = 1e-10;

/// Neumann matrix `H₁` in the domain's canonical order (inner vertices first).
pub fn neumann_matrix(dom: &FundamentalDomain, q: &Potential) -> DMatrix<f64> {
    let order = dom.canonical_order();
    let mut pos = vec![0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let n = order.len();
    let deg = dom.degrees();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for &(a, b) in dom.edges() {
        let (i, j) = (pos[a], pos[b]);
        if i == j {
            m[(i, i)] += 2.0;
        } else {
            m[(i, j)] += 1.0;
            m[(j, i)] += 1.0;
        }
    }
    for (i, &a) in order.iter().enumerate() {
        for (j, &b) in order.iter().enumerate() {
            if m[(i, j)] != 0.0 {
                m[(i, j)] *= -1.0 / ((deg[a] * deg[b]) as f64).sqrt();
            }
        }
        m[(i, i)] += q.values()[dom.vertices()[a].base];
    }
    m
}

/// Dirichlet matrix `H_o`: the inner-vertex principal block of `H₁`.
pub fn dirichlet_matrix(dom: &FundamentalDomain, q: &Potential) -> DMatrix<f64> {
    let k = dom.inner_count();
    neumann_matrix(dom, q).view((0, 0), (k, k)).into_owned()
}

/// Sorted Neumann and Dirichlet spectra together with the sizes they are indexed by.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainEigendata {
    pub neumann: Vec<f64>,
    pub dirichlet: Vec<f64>,
    /// `ν`
    pub nu: usize,
    /// `q•`
    pub sorted_potential: Vec<f64>,
}

impl DomainEigendata {
    pub fn compute(g: &FundamentalGraph, dom: &FundamentalDomain, q: &Potential) -> Result<Self> {
        q.check_len(g.vertex_count())?;
        Ok(Self {
            neumann: eigvals_symmetric(&neumann_matrix(dom, q))?,
            dirichlet: eigvals_symmetric(&dirichlet_matrix(dom, q))?,
            nu: g.vertex_count(),
            sorted_potential: q.sorted(),
        })
    }

    /// `ν₁`
    pub fn nu1(&self) -> usize {
        self.neumann.len()
    }

    /// `ν_o`
    pub fn nu_o(&self) -> usize {
        self.dirichlet.len()
    }

    fn check(&self) -> Result<()> {
        if self.sorted_potential.len() != self.nu {
            return Err(Error::Eigendata(format!(
                "{} potential values for ν = {}",
                self.sorted_potential.len(),
                self.nu
            )));
        }
        if self.nu1() < self.nu || self.nu_o() > self.nu {
            return Err(Error::Eigendata(format!(
                "ν₁ = {}, ν_o = {} incompatible with ν = {}",
                self.nu1(),
                self.nu_o(),
                self.nu
            )));
        }
        Ok(())
    }
}

/// Per-band brackets `J_n` and `K_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Brackets {
    pub j: Vec<Interval>,
    pub k: Vec<Interval>,
}

impl Brackets {
    pub fn len(&self) -> usize {
        self.j.len()
    }

    pub fn is_empty(&self) -> bool {
        self.j.is_empty()
    }

    /// `J_n ∩ K_n` for each band.
    pub fn caps(&self) -> Result<Vec<Interval>> {
        self.j
            .iter()
            .zip(&self.k)
            .enumerate()
            .map(|(n, (a, b))| a.intersect(b, INCLUSION_TOL).ok_or(Error::EmptyIntersection(n + 1)))
            .collect()
    }
}

/// Builds `J_n`, `K_n` from domain eigendata.
pub fn bracket_intervals(e: &DomainEigendata) -> Result<Brackets> {
    e.check()?;
    let (nu, nu1, nuo) = (e.nu, e.nu1(), e.nu_o());
    let l1 = |i: usize| e.neumann[i - 1];
    let lo = |i: usize| e.dirichlet[i - 1];
    let qs = |i: usize| e.sorted_potential[i - 1];
    let mut j = Vec::with_capacity(nu);
    let mut k = Vec::with_capacity(nu);
    for n in 1..=nu {
        j.push(if n <= nuo { Interval::new(l1(n), lo(n)) } else { Interval::new(l1(n), qs(n) + 1.0) });
        let top = l1(n + nu1 - nu);
        k.push(if n <= nu - nuo { Interval::new(qs(n) - 1.0, top) } else { Interval::new(lo(n + nuo - nu), top) });
    }
    for (n, iv) in j.iter().chain(&k).enumerate() {
        if iv.lo > iv.hi + ORDER_TOL {
            return Err(Error::InvertedBracket { n: n % nu + 1, lo: iv.lo, hi: iv.hi });
        }
    }
    Ok(Brackets { j, k })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundCase {
    /// `ν ≥ 2ν_o`
    Est2,
    /// `ν < 2ν_o`
    Est3,
}

impl BoundCase {
    pub fn tag(self) -> &'static str {
        match self {
            BoundCase::Est2 => "est-2",
            BoundCase::Est3 => "est-3",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LengthBound {
    pub value: f64,
    pub case: BoundCase,
}

/// Upper bound on the total band length `Σ |σ_n|` from domain eigendata.
pub fn total_length_bound(e: &DomainEigendata) -> Result<LengthBound> {
    e.check()?;
    let (nu, nu1, nuo) = (e.nu, e.nu1(), e.nu_o());
    let l1 = |i: usize| e.neumann[i - 1];
    let lo = |i: usize| e.dirichlet[i - 1];
    if nu >= 2 * nuo {
        let value = (1..=nu - nuo).map(|n| l1(nu1 - (nu - nuo) + n) - l1(n)).sum();
        Ok(LengthBound { value, case: BoundCase::Est2 })
    } else {
        let dir: f64 = (1..=nu - nuo).map(|n| lo(n) - lo(2 * nuo - nu + n)).sum();
        let neu: f64 = (1..=nuo).map(|n| l1(n) - l1(nu1 - nuo + n)).sum();
        Ok(LengthBound { value: dir - neu, case: BoundCase::Est3 })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BracketRow {
    /// 1-based band number.
    pub n: usize,
    pub j: Interval,
    pub k: Interval,
    /// `J_n ∩ K_n`; `None` if empty.
    pub cap: Option<Interval>,
    pub band: Interval,
    pub included: bool,
    /// The bracket itself has width at most the flat tolerance.
    pub flat_forced: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BracketReport {
    pub rows: Vec<BracketRow>,
    /// `n` such that bracket `n` ends strictly below bracket `n + 1`.
    pub gaps: Vec<usize>,
    pub bound: Option<LengthBound>,
}

impl BracketReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.included)
    }

    pub fn forced_flat(&self) -> Vec<usize> {
        self.rows.iter().filter(|r| r.flat_forced).map(|r| r.n).collect()
    }

    pub fn with_bound(mut self, bound: LengthBound) -> Self {
        self.bound = Some(bound);
        self
    }
}

pub(crate) fn build_report(
    bands: &[Interval],
    br: &Brackets,
    flat_tol: f64,
    contains: impl Fn(&Interval, &Interval) -> bool,
) -> Result<BracketReport> {
    if bands.len() != br.len() || br.j.len() != br.k.len() {
        return Err(Error::Eigendata(format!("{} bands against {} brackets", bands.len(), br.len())));
    }
    let rows: Vec<BracketRow> = bands
        .iter()
        .zip(br.j.iter().zip(&br.k))
        .enumerate()
        .map(|(i, (band, (j, k)))| {
            let cap = j.intersect(k, INCLUSION_TOL);
            BracketRow {
                n: i + 1,
                j: *j,
                k: *k,
                cap,
                band: *band,
                included: cap.is_some_and(|c| contains(&c, band)),
                flat_forced: cap.is_some_and(|c| c.width() <= flat_tol),
            }
        })
        .collect();
    let gaps = rows
        .windows(2)
        .filter_map(|w| match (w[0].cap, w[1].cap) {
            (Some(a), Some(b)) if a.hi + INCLUSION_TOL < b.lo => Some(w[0].n),
            _ => None,
        })
        .collect();
    Ok(BracketReport { rows, gaps, bound: None })
}

/// Checks `σ_n ⊂ J_n ∩ K_n` for every band. A failed inclusion is reported,
/// not hidden: see [`BracketReport::passed`].
pub fn verify_bracketing(b: &BandSpectrum, br: &Brackets) -> Result<BracketReport> {
    build_report(&b.intervals(), br, b.flat_tol, |c, band| c.contains(band, INCLUSION_TOL))
}

/// Per-band intersection of `J_n ∩ K_n` over several domains.
pub fn intersect_domains(reports: &[Brackets]) -> Result<Vec<Interval>> {
    let Some(first) = reports.first() else {
        return Ok(Vec::new());
    };
    let mut acc = first.caps()?;
    for br in &reports[1..] {
        if br.len() != acc.len() {
            return Err(Error::Eigendata("brackets for different band counts".into()));
        }
        for (n, (a, c)) in acc.iter_mut().zip(br.caps()?).enumerate() {
            *a = a.intersect(&c, INCLUSION_TOL).ok_or(Error::EmptyIntersection(n + 1))?;
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq)]
pub enum SymmetryCheck {
    Holds,
    Violated { n: usize, expected: Interval, found: Interval },
    Skipped(String),
}

pub(crate) fn spectrum_symmetric(ev: &[f64], center: f64, tol: f64) -> bool {
    let n = ev.len();
    (0..n).all(|i| (ev[i] - center + ev[n - 1 - i] - center).abs() <= tol)
}

/// Checks `K_n = −J_{ν−n+1}` (reversed) when the graph is bipartite, the
/// potential vanishes and both domain spectra are symmetric about 0.
pub fn bipartite_symmetry_check(
    g: &FundamentalGraph,
    q: &Potential,
    e: &DomainEigendata,
    br: &Brackets,
) -> SymmetryCheck {
    if !q.is_zero() {
        return SymmetryCheck::Skipped("nonzero potential".into());
    }
    if is_bipartite(g).is_none() {
        return SymmetryCheck::Skipped("graph is not bipartite".into());
    }
    if !spectrum_symmetric(&e.neumann, 0.0, SYMMETRY_TOL) || !spectrum_symmetric(&e.dirichlet, 0.0, SYMMETRY_TOL) {
        return SymmetryCheck::Skipped("domain spectra are not symmetric".into());
    }
    mirrored_check(br, |x| -x)
}

pub(crate) fn mirrored_check(br: &Brackets, reflect: impl Fn(f64) -> f64) -> SymmetryCheck {
    let nu = br.len();
    for n in 0..nu {
        let j = br.j[nu - 1 - n];
        let expected = Interval::new(reflect(j.hi), reflect(j.lo));
        let found = br.k[n];
        if (expected.lo - found.lo).abs() > SYMMETRY_TOL || (expected.hi - found.hi).abs() > SYMMETRY_TOL {
            return SymmetryCheck::Violated { n: n + 1, expected, found };
        }
    }
    SymmetryCheck::Holds
}
