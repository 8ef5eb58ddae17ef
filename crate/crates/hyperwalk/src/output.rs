//! CSV tables and the SVG region plot.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use anyhow::Context;
use hyperwalk_core::{BallCensus, BoundarySample, RegionTable};
use serde::Serialize;

#[derive(Serialize)]
struct RegionCsvRow {
    n: u32,
    m: u32,
    margin: f64,
    verdict: bool,
}

#[derive(Serialize)]
struct CensusCsvRow {
    #[serde(rename = "R")]
    radius: f64,
    count: u64,
    log_count: f64,
}

#[derive(Serialize)]
struct HistogramCsvRow {
    bin_center: f64,
    count: u64,
}

fn write_rows<T: Serialize>(writer: impl Write, rows: impl IntoIterator<Item = T>) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

fn create(path: &Path) -> anyhow::Result<std::fs::File> {
    std::fs::File::create(path).with_context(|| format!("cannot write {}", path.display()))
}

/// Columns `n,m,margin,verdict`.
pub fn write_region_csv(table: &RegionTable, writer: impl Write) -> anyhow::Result<()> {
    write_rows(
        writer,
        table.pairs.iter().map(|r| RegionCsvRow {
            n: r.n,
            m: r.m,
            margin: r.margin,
            verdict: r.verdict,
        }),
    )
}

/// Columns `R,count,log_count`.
pub fn write_census_csv(census: &BallCensus, writer: impl Write) -> anyhow::Result<()> {
    write_rows(
        writer,
        census.radius_grid.iter().zip(&census.counts).map(|(&r, &c)| CensusCsvRow {
            radius: r,
            count: c,
            log_count: (c as f64).ln(),
        }),
    )
}

/// Columns `bin_center,count`.
pub fn write_histogram_csv(sample: &BoundarySample, writer: impl Write) -> anyhow::Result<()> {
    write_rows(
        writer,
        sample
            .bin_centers()
            .into_iter()
            .zip(&sample.histogram)
            .map(|(c, &k)| HistogramCsvRow { bin_center: c, count: k }),
    )
}

pub fn save(path: &Path, fill: impl FnOnce(&mut std::fs::File) -> anyhow::Result<()>) -> anyhow::Result<()> {
    let mut file = create(path)?;
    fill(&mut file).with_context(|| format!("writing {}", path.display()))
}

const HOLDS: &str = "#f28e2b";
const INCONCLUSIVE: &str = "#2b5d8a";
const REJECTED: &str = "#9a9a9a";

/// Dot grid with `n` across and `m` up: filled orange where the criterion holds, blue
/// where it is inconclusive, grey rings for non-hyperbolic pairs.
pub fn region_svg(table: &RegionTable) -> String {
    let all = table.pairs.iter().map(|r| (r.n, r.m)).chain(table.rejected.iter().copied());
    let (mut n_lo, mut n_hi, mut m_lo, mut m_hi) = (u32::MAX, 0, u32::MAX, 0);
    for (n, m) in all {
        n_lo = n_lo.min(n);
        n_hi = n_hi.max(n);
        m_lo = m_lo.min(m);
        m_hi = m_hi.max(m);
    }
    if n_lo > n_hi {
        (n_lo, n_hi, m_lo, m_hi) = (0, 0, 0, 0);
    }
    let cell = 12.0;
    let (left, top, bottom, legend) = (50.0, 30.0, 45.0, 190.0);
    let width = left + cell * f64::from(n_hi - n_lo + 1) + legend;
    let height = top + cell * f64::from(m_hi - m_lo + 1) + bottom;
    let x = |n: u32| left + cell * (f64::from(n - n_lo) + 0.5);
    let y = |m: u32| top + cell * (f64::from(m_hi - m) + 0.5);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="10">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{left}" y="18" font-size="12">{} family: criterion by (n, m)</text>"#,
        table.family
    );
    for n in n_lo..=n_hi {
        if n % 5 == 0 || n == n_lo {
            let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{n}</text>"#, x(n), height - bottom + 14.0);
        }
    }
    for m in m_lo..=m_hi {
        if m % 5 == 0 || m == m_lo {
            let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">{m}</text>"#, left - 6.0, y(m) + 3.5);
        }
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">n</text>"#,
        left + cell * f64::from(n_hi - n_lo + 1) / 2.0,
        height - 8.0
    );
    let _ = writeln!(s, r#"<text x="14" y="{}" text-anchor="middle">m</text>"#, top + cell * f64::from(m_hi - m_lo + 1) / 2.0);
    for r in &table.pairs {
        let fill = if r.verdict { HOLDS } else { INCONCLUSIVE };
        let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="4" fill="{fill}"/>"#, x(r.n), y(r.m));
    }
    for &(n, m) in &table.rejected {
        let _ = writeln!(
            s,
            r#"<circle cx="{}" cy="{}" r="3.5" fill="none" stroke="{REJECTED}"/>"#,
            x(n),
            y(m)
        );
    }
    let lx = width - legend + 15.0;
    let entries = [
        (HOLDS, "criterion holds", true),
        (INCONCLUSIVE, "inconclusive (exceptional)", true),
        (REJECTED, "not hyperbolic", false),
    ];
    for (k, (colour, label, filled)) in entries.iter().enumerate() {
        let ly = top + 10.0 + 16.0 * k as f64;
        if *filled {
            let _ = writeln!(s, r#"<circle cx="{lx}" cy="{ly}" r="4" fill="{colour}"/>"#);
        } else {
            let _ = writeln!(s, r#"<circle cx="{lx}" cy="{ly}" r="3.5" fill="none" stroke="{colour}"/>"#);
        }
        let _ = writeln!(s, r#"<text x="{}" y="{}">{label}</text>"#, lx + 10.0, ly + 3.5);
    }
    let _ = writeln!(
        s,
        r#"<text x="{lx}" y="{}">axes: n across, m up</text>"#,
        top + 10.0 + 16.0 * 3.0 + 3.5
    );
    s.push_str("</svg>\n");
    s
}

/// `{(4,6),(6,4)}`.
pub fn pair_set(pairs: &[(u32, u32)]) -> String {
    let inner: Vec<String> = pairs.iter().map(|(n, m)| format!("({n},{m})")).collect();
    format!("{{{}}}", inner.join(","))
}
