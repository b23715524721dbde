//! Tabular output: CSV (`,` separator, `.` decimal, LF, 12 significant digits)
//! and an aligned plain-text rendering of the same tables.

use crate::bracketing::BracketReport;
use crate::cattaneo::UnfoldedSpectrum;
use crate::floquet::HermitianMatrix;
use crate::spectra::{BandSpectrum, Interval};

/// Formats a float with 12 significant digits, `%g` style: fixed notation
/// for decimal exponents in `[-5, 12)`, scientific otherwise, trailing zeros
/// trimmed. Both signed zeros print as `0`.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}").to_lowercase();
    }
    let sci = format!("{:.11e}", x);
    let (mant, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    let negative = mant.starts_with('-');
    let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if (-5..12).contains(&exp) {
        if exp >= 0 {
            let split = exp as usize + 1;
            out.push_str(&digits[..split]);
            let frac = digits[split..].trim_end_matches('0');
            if !frac.is_empty() {
                out.push('.');
                out.push_str(frac);
            }
        } else {
            out.push_str("0.");
            out.extend(std::iter::repeat_n('0', (-exp - 1) as usize));
            out.push_str(digits.trim_end_matches('0'));
        }
    } else {
        out.push_str(&digits[..1]);
        let frac = digits[1..].trim_end_matches('0');
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
        out.push_str(&format!("e{exp}"));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Text,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.join(","));
            s.push('\n');
        }
        s
    }

    pub fn to_text(&self) -> String {
        let cols = self.header.len();
        let mut width = vec![0; cols];
        for r in std::iter::once(&self.header).chain(&self.rows) {
            for (w, c) in width.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |r: &[String]| {
            let cells: Vec<String> = r.iter().zip(&width).map(|(c, w)| format!("{c:>w$}")).collect();
            cells.join("  ").trim_end().to_string() + "\n"
        };
        let mut s = line(&self.header);
        for r in &self.rows {
            s.push_str(&line(r));
        }
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }
}

fn flag(b: bool) -> String {
    if b { "1" } else { "0" }.into()
}

fn opt(iv: Option<Interval>) -> [String; 2] {
    match iv {
        Some(iv) => [fmt_num(iv.lo), fmt_num(iv.hi)],
        None => [String::new(), String::new()],
    }
}

/// `n, lambda_minus, lambda_plus, flat`
pub fn bands_table(b: &BandSpectrum) -> Table {
    let mut t = Table::new(["n", "lambda_minus", "lambda_plus", "flat"]);
    for (n, band) in b.bands.iter().enumerate() {
        t.push(vec![(n + 1).to_string(), fmt_num(band.interval.lo), fmt_num(band.interval.hi), flag(band.flat)]);
    }
    t
}

/// One row per grid point: `θ₁..θ_d, λ₁..λ_ν`. Empty if the table was not kept.
pub fn grid_table(b: &BandSpectrum) -> Table {
    let mut header: Vec<String> = (1..=b.dimension).map(|i| format!("theta{i}")).collect();
    header.extend((1..=b.band_count()).map(|n| format!("lambda{n}")));
    let mut t = Table { header, rows: Vec::new() };
    if let Some(table) = &b.table {
        for (k, row) in table.chunks(b.band_count()).enumerate() {
            let mut r: Vec<String> = b.theta(k).into_iter().map(fmt_num).collect();
            r.extend(row.iter().copied().map(fmt_num));
            t.push(r);
        }
    }
    t
}

/// Row-major matrix, each entry as a `re, im` column pair.
pub fn matrix_table(h: &HermitianMatrix) -> Table {
    let n = h.dim();
    let header: Vec<String> = (1..=n).flat_map(|k| [format!("re{k}"), format!("im{k}")]).collect();
    let mut t = Table { header, rows: Vec::new() };
    for j in 0..n {
        t.push((0..n).flat_map(|k| [fmt_num(h.get(j, k).re), fmt_num(h.get(j, k).im)]).collect());
    }
    t
}

/// Per-band bracket rows for one or more domains; `isect` adds the
/// cross-domain intersection columns.
pub fn bracket_table(reports: &[BracketReport], isect: Option<&[Interval]>) -> Table {
    let mut header = vec![
        "domain",
        "n",
        "J_lo",
        "J_hi",
        "K_lo",
        "K_hi",
        "cap_lo",
        "cap_hi",
        "band_lo",
        "band_hi",
        "included",
        "flat_forced",
    ];
    if isect.is_some() {
        header.extend(["isect_lo", "isect_hi"]);
    }
    let mut t = Table::new(header);
    for (d, rep) in reports.iter().enumerate() {
        for r in &rep.rows {
            let mut row = vec![(d + 1).to_string(), r.n.to_string()];
            row.extend([fmt_num(r.j.lo), fmt_num(r.j.hi), fmt_num(r.k.lo), fmt_num(r.k.hi)]);
            row.extend(opt(r.cap));
            row.extend([fmt_num(r.band.lo), fmt_num(r.band.hi), flag(r.included), flag(r.flat_forced)]);
            if let Some(is) = isect {
                row.extend(opt(is.get(r.n - 1).copied()));
            }
            t.push(row);
        }
    }
    t
}

fn join_ids(v: &[usize]) -> String {
    v.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" ")
}

/// `domain, bound, case, passed, gaps, forced_flat`
pub fn bracket_summary_table(reports: &[BracketReport]) -> Table {
    let mut t = Table::new(["domain", "bound", "case", "passed", "gaps", "forced_flat"]);
    for (d, rep) in reports.iter().enumerate() {
        let (bound, case) = match rep.bound {
            Some(b) => (fmt_num(b.value), b.case.tag().to_string()),
            None => (String::new(), String::new()),
        };
        t.push(vec![
            (d + 1).to_string(),
            bound,
            case,
            flag(rep.passed()),
            join_ids(&rep.gaps),
            join_ids(&rep.forced_flat()),
        ]);
    }
    t
}

/// `lo, hi, kind` with `kind` one of `band`, `flat`.
pub fn unfolded_table(u: &UnfoldedSpectrum) -> Table {
    let mut t = Table::new(["lo", "hi", "kind"]);
    for iv in &u.intervals {
        t.push(vec![fmt_num(iv.lo), fmt_num(iv.hi), "band".into()]);
    }
    for &z in &u.flat_points {
        t.push(vec![fmt_num(z), fmt_num(z), "flat".into()]);
    }
    t
}
