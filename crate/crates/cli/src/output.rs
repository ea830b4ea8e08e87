//! Rendering of command results as aligned tables, JSON or CSV.

use anyhow::Context;
use clap::ValueEnum;
use serde::Serialize;

use splinedim::bounds::{upper_bound_hom, SplineSpace};
use splinedim::mesh::{Triangulation, ValidationReport};
use splinedim::ordering::{tilde_slope_counts, Certificate, OrderedStats, SchumakerSearch};
use splinedim::report::BoundReport;

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// Rows of strings under a header, rendered as text or CSV.
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.header.len());
        self.rows.push(cells);
    }

    fn text(&self) -> String {
        let mut widths: Vec<usize> = self.header.iter().map(String::len).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:>w$}"))
                .collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(&self.header);
        for row in &self.rows {
            out.push_str(&line(row));
        }
        out
    }

    fn csv(&self) -> anyhow::Result<String> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(&self.header)?;
        for row in &self.rows {
            writer.write_record(row)?;
        }
        Ok(String::from_utf8(writer.into_inner()?)?)
    }

    fn json(&self) -> anyhow::Result<String> {
        let records: Vec<serde_json::Map<String, serde_json::Value>> = self
            .rows
            .iter()
            .map(|row| {
                self.header
                    .iter()
                    .zip(row)
                    .map(|(h, c)| {
                        let value = c
                            .parse::<i64>()
                            .map(serde_json::Value::from)
                            .unwrap_or_else(|_| serde_json::Value::from(c.clone()));
                        (h.clone(), value)
                    })
                    .collect()
            })
            .collect();
        json(&records)
    }

    pub fn render(&self, format: Format) -> anyhow::Result<String> {
        match format {
            Format::Table => Ok(self.text()),
            Format::Csv => self.csv(),
            Format::Json => self.json(),
        }
    }
}

fn json<T: Serialize + ?Sized>(value: &T) -> anyhow::Result<String> {
    let mut text = serde_json::to_string_pretty(value).context("serializing output")?;
    text.push('\n');
    Ok(text)
}

fn list(values: &[usize]) -> String {
    values
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn optional<T: ToString>(value: Option<T>) -> String {
    value.map_or_else(|| "-".to_string(), |v| v.to_string())
}

pub fn validation(report: &ValidationReport, format: Format) -> anyhow::Result<String> {
    #[derive(Serialize)]
    struct Doc<'a> {
        valid: bool,
        euler_characteristic: i64,
        overlap_checked: bool,
        violations: Vec<Violation<'a>>,
    }
    #[derive(Serialize)]
    struct Violation<'a> {
        invariant: &'a str,
        detail: String,
    }
    let doc = Doc {
        valid: report.is_valid(),
        euler_characteristic: report.euler_characteristic,
        overlap_checked: report.overlap_checked,
        violations: report
            .violations
            .iter()
            .map(|v| Violation {
                invariant: v.name(),
                detail: v.to_string(),
            })
            .collect(),
    };
    match format {
        Format::Json => json(&doc),
        Format::Table => Ok(format!("{report}\n")),
        Format::Csv => {
            let mut table = Table::new(&["invariant", "detail"]);
            for v in &doc.violations {
                table.row(vec![v.invariant.to_string(), v.detail.clone()]);
            }
            table.csv()
        }
    }
}

pub fn stats(tri: &Triangulation, format: Format) -> anyhow::Result<String> {
    #[derive(Serialize)]
    struct Vertex {
        vertex: usize,
        degree: usize,
        slope_count: u32,
    }
    #[derive(Serialize)]
    struct Doc {
        f_vector: splinedim::mesh::FVector,
        interior_vertices: Vec<Vertex>,
    }
    let doc = Doc {
        f_vector: tri.f_vector(),
        interior_vertices: tri
            .interior_vertices()
            .iter()
            .map(|&v| Vertex {
                vertex: v,
                degree: tri.vertex_edges(v).len(),
                slope_count: tri.slope_count(v).expect("interior"),
            })
            .collect(),
    };
    if format == Format::Json {
        return json(&doc);
    }
    let f = doc.f_vector;
    let mut table = Table::new(&["vertex", "degree", "slopes"]);
    for v in &doc.interior_vertices {
        table.row(vec![
            v.vertex.to_string(),
            v.degree.to_string(),
            v.slope_count.to_string(),
        ]);
    }
    match format {
        Format::Csv => table.csv(),
        _ => Ok(format!(
            "f0 = {}, f1 = {}, f2 = {}, interior vertices = {}, interior edges = {}, boundary vertices = {}, boundary edges = {}\n{}",
            f.f0, f.f1, f.f2, f.f0_interior, f.f1_interior, f.f0_boundary, f.f1_boundary,
            table.text()
        )),
    }
}

fn schumaker_status(search: &SchumakerSearch) -> &'static str {
    match search {
        SchumakerSearch::Found(_) => "found",
        SchumakerSearch::NoneExists => "none",
        SchumakerSearch::BudgetExhausted => "unknown",
    }
}

pub fn reports(reports: &[BoundReport], format: Format) -> anyhow::Result<String> {
    if format == Format::Json {
        return json(reports);
    }
    let header = [
        "r",
        "k",
        "lbh",
        "lbs",
        "floor",
        "best_ubh",
        "ubh_ordering",
        "ubs_ordering",
        "oracle",
        "defect",
        "certified",
        "schumaker",
        "best_ordering",
        "ordering",
    ];
    let mut table = Table::new(&header);
    for r in reports {
        table.row(vec![
            r.r.to_string(),
            r.k.to_string(),
            r.lbh.to_string(),
            r.lbs.to_string(),
            r.polynomial_floor.to_string(),
            r.best_ubh.to_string(),
            r.ubh_for_ordering.to_string(),
            optional(r.ubs_for_ordering),
            optional(r.oracle_dim),
            optional(r.homology_defect),
            if r.exactness_certified { "yes" } else { "no" }.to_string(),
            schumaker_status(&r.schumaker).to_string(),
            list(&r.best_ordering),
            list(&r.ordering),
        ]);
    }
    let mut out = table.render(format)?;
    if format == Format::Table {
        for r in reports.iter().filter(|r| !r.zero_tilde_vertices.is_empty()) {
            out.push_str(&format!(
                "note: k = {}: vertices {} see no earlier edge in the reported ordering\n",
                r.k,
                list(&r.zero_tilde_vertices)
            ));
        }
    }
    Ok(out)
}

pub fn certificate(
    r: u32,
    stats: &OrderedStats,
    certificate: &Certificate,
    source: &str,
    format: Format,
) -> anyhow::Result<String> {
    #[derive(Serialize)]
    struct Doc<'a> {
        r: u32,
        certified: bool,
        ordering_source: &'a str,
        ordering: Vec<usize>,
        slope_counts: Vec<u32>,
        tilde_slope_counts: Vec<u32>,
        failing_vertices: &'a [usize],
    }
    let doc = Doc {
        r,
        certified: certificate.holds,
        ordering_source: source,
        ordering: stats.ordering(),
        slope_counts: stats.entries().iter().map(|e| e.slope_count).collect(),
        tilde_slope_counts: stats.tilde_counts(),
        failing_vertices: &certificate.failing_vertices,
    };
    let mut table = Table::new(&["vertex", "t", "t_tilde"]);
    for e in stats.entries() {
        table.row(vec![
            e.vertex.to_string(),
            e.slope_count.to_string(),
            e.tilde_slope_count.to_string(),
        ]);
    }
    match format {
        Format::Json => json(&doc),
        Format::Csv => table.csv(),
        Format::Table => {
            let verdict = if certificate.holds {
                "exactness certified".to_string()
            } else {
                format!(
                    "not certified: vertices {} have t_tilde < t and t_tilde < r + 2",
                    list(&certificate.failing_vertices)
                )
            };
            Ok(format!(
                "{verdict} (r = {r}, ordering from {source})\n{}",
                table.text()
            ))
        }
    }
}

pub fn ordering(
    tri: &Triangulation,
    space: SplineSpace,
    ordering: Option<&[usize]>,
    method: &str,
    format: Format,
) -> anyhow::Result<String> {
    #[derive(Serialize)]
    struct Doc<'a> {
        method: &'a str,
        r: u32,
        k: u32,
        ordering: Option<&'a [usize]>,
        tilde_slope_counts: Option<Vec<u32>>,
        ubh: Option<i64>,
    }
    let (counts, ubh) = match ordering {
        Some(order) => (
            Some(tilde_slope_counts(tri, order)?.tilde_counts()),
            Some(upper_bound_hom(tri, order, space)?),
        ),
        None => (None, None),
    };
    let doc = Doc {
        method,
        r: space.r(),
        k: space.k(),
        ordering,
        tilde_slope_counts: counts,
        ubh,
    };
    match format {
        Format::Json => json(&doc),
        _ => {
            let mut table = Table::new(&["method", "r", "k", "ubh", "ordering"]);
            table.row(vec![
                method.to_string(),
                space.r().to_string(),
                space.k().to_string(),
                optional(doc.ubh),
                doc.ordering.map_or_else(|| "-".to_string(), list),
            ]);
            table.render(format)
        }
    }
}
