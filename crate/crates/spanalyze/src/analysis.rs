//! Temporal machinery: window enumeration, per-window network
//! descriptor series, cumulative expenditure sums, closed-form least
//! squares, and Pearson correlation.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, YearRange};
use crate::error::{Error, Result};
use crate::graph::metrics::{avg_collaborators, connected_components, density};
use crate::graph::ops::boundary_spanning;
use crate::graph::{build_coauthorship, AuthorKeying, BuildFilters, CoauthorshipGraph, GeoContext};
use crate::indicators::{
    entropy_diversity, n_clusters_50, partition_intersections, variance_diversity,
    IntersectionPartition,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowMode {
    Sliding,
    Cumulative,
}

/// Window enumeration: sliding windows of `length` years advancing by
/// `step` from `anchor`, or cumulative windows growing one year at a
/// time from `anchor`. All windows stay within `[anchor, horizon]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowSpec {
    pub mode: WindowMode,
    pub length: u32,
    pub step: u32,
    pub anchor: i32,
    pub horizon: i32,
}

impl WindowSpec {
    pub fn sliding(anchor: i32, horizon: i32, length: u32, step: u32) -> WindowSpec {
        WindowSpec {
            mode: WindowMode::Sliding,
            length,
            step,
            anchor,
            horizon,
        }
    }

    pub fn cumulative(anchor: i32, horizon: i32) -> WindowSpec {
        WindowSpec {
            mode: WindowMode::Cumulative,
            length: 1,
            step: 1,
            anchor,
            horizon,
        }
    }

    pub fn validate(&self, study_period: YearRange) -> Result<()> {
        if self.length < 1 || self.step < 1 {
            return Err(Error::Invalid("window length and step must be >= 1".into()));
        }
        if self.anchor > self.horizon {
            return Err(Error::Invalid(format!(
                "window anchor {} after horizon {}",
                self.anchor, self.horizon
            )));
        }
        if !study_period.contains(self.anchor) || !study_period.contains(self.horizon) {
            return Err(Error::Invalid(format!(
                "windows {}..{} outside study period {}",
                self.anchor, self.horizon, study_period
            )));
        }
        Ok(())
    }

    pub fn windows(&self) -> Vec<YearRange> {
        let mut out = Vec::new();
        match self.mode {
            WindowMode::Sliding => {
                let mut start = self.anchor;
                while start + self.length as i32 - 1 <= self.horizon {
                    out.push(YearRange::new(start, start + self.length as i32 - 1));
                    start += self.step as i32;
                }
            }
            WindowMode::Cumulative => {
                for end in self.anchor..=self.horizon {
                    out.push(YearRange::new(self.anchor, end));
                }
            }
        }
        out
    }
}

/// Descriptor row of one network in one window. Diversity fields are
/// present only for boundary networks with authors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescriptorRow {
    pub network: String,
    pub window: YearRange,
    pub authors: usize,
    pub linkages: usize,
    pub clusters: usize,
    pub max_cluster: usize,
    pub density: f64,
    pub avg_collaborators: f64,
    pub v: Option<f64>,
    pub h: Option<f64>,
    pub nc50: Option<usize>,
    pub empty: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowRow {
    pub window: YearRange,
    pub domains: Vec<DescriptorRow>,
    pub boundary: DescriptorRow,
    pub partition: Option<IntersectionPartition>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowSeries {
    pub spec: WindowSpec,
    pub rows: Vec<WindowRow>,
}

/// Build parameters shared by every window of a series.
pub struct SeriesParams<'a> {
    pub min_copubs: u32,
    pub filters: BuildFilters,
    pub geo_ctx: Option<GeoContext<'a>>,
    pub keying: &'a AuthorKeying,
}

fn descriptor_row(network: &str, graph: &CoauthorshipGraph, for_boundary: bool) -> DescriptorRow {
    let summary = connected_components(graph);
    let n = graph.vertex_count();
    let row_density = if n >= 2 { density(graph).expect("n >= 2") } else { 0.0 };
    DescriptorRow {
        network: network.to_string(),
        window: graph.window(),
        authors: n,
        linkages: graph.edge_count(),
        clusters: summary.count,
        max_cluster: summary.max_size,
        density: row_density,
        avg_collaborators: avg_collaborators(graph),
        v: None,
        h: None,
        nc50: if for_boundary && n > 0 {
            Some(n_clusters_50(&summary).expect("non-empty"))
        } else {
            None
        },
        empty: n == 0,
    }
}

/// Builds one window: per-domain graphs (each labeled with its domain)
/// and the boundary-spanning graph over them.
pub fn build_window_graphs(
    corpus: &Corpus,
    domains: &[(String, BTreeSet<String>)],
    window: YearRange,
    params: &SeriesParams<'_>,
) -> Result<(Vec<(String, CoauthorshipGraph)>, CoauthorshipGraph)> {
    let mut built = Vec::new();
    for (name, pubs) in domains {
        let mut g = build_coauthorship(
            pubs,
            corpus,
            window,
            params.min_copubs,
            params.filters,
            params.geo_ctx,
            params.keying,
        )?;
        g.label_all(name);
        built.push((name.clone(), g));
    }
    let refs: Vec<&CoauthorshipGraph> = built.iter().map(|(_, g)| g).collect();
    let boundary = boundary_spanning(&refs)?;
    Ok((built, boundary))
}

/// Per-window descriptor rows for each domain and the boundary network.
/// Empty windows yield zero rows flagged `empty`, not errors.
pub fn windowed_series(
    corpus: &Corpus,
    domains: &[(String, BTreeSet<String>)],
    spec: &WindowSpec,
    params: &SeriesParams<'_>,
) -> Result<WindowSeries> {
    spec.validate(corpus.study_period())?;
    let domain_order: Vec<String> = domains.iter().map(|(n, _)| n.clone()).collect();
    let mut rows = Vec::new();
    for window in spec.windows() {
        let (built, boundary) = build_window_graphs(corpus, domains, window, params)?;
        let domain_rows: Vec<DescriptorRow> = built
            .iter()
            .map(|(name, g)| descriptor_row(name, g, false))
            .collect();
        let mut boundary_row = descriptor_row("boundary", &boundary, true);
        let partition = if boundary.is_empty() {
            None
        } else {
            let p = partition_intersections(&boundary, &domain_order)?;
            boundary_row.v = Some(variance_diversity(&p));
            boundary_row.h = Some(entropy_diversity(&p));
            Some(p)
        };
        rows.push(WindowRow {
            window,
            domains: domain_rows,
            boundary: boundary_row,
            partition,
        });
    }
    Ok(WindowSeries { spec: *spec, rows })
}

/// Yearly expenditure series with explicitly marked gaps.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RdiSeries {
    pub values: BTreeMap<i32, f64>,
    pub missing: BTreeSet<i32>,
}

impl RdiSeries {
    /// Reads a `year,gerd` CSV with a header; a `:` value marks a
    /// missing year.
    pub fn parse_csv<R: std::io::Read>(reader: R) -> Result<RdiSeries> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut series = RdiSeries::default();
        for (idx, row) in rdr.records().enumerate() {
            let row = row.map_err(|e| Error::parse("<gerd>", idx + 2, e.to_string()))?;
            if row.len() != 2 {
                return Err(Error::parse("<gerd>", idx + 2, "expected year,gerd"));
            }
            let year: i32 = row[0].parse().map_err(|_| {
                Error::parse("<gerd>", idx + 2, format!("invalid year {:?}", &row[0]))
            })?;
            let value = row[1].trim();
            if value == ":" || value.is_empty() {
                series.missing.insert(year);
                continue;
            }
            let value: f64 = value.parse().map_err(|_| {
                Error::parse("<gerd>", idx + 2, format!("invalid value {:?}", value))
            })?;
            if value < 0.0 {
                return Err(Error::parse("<gerd>", idx + 2, "negative expenditure"));
            }
            series.values.insert(year, value);
        }
        Ok(series)
    }

    fn known(&self, year: i32) -> Option<f64> {
        self.values.get(&year).copied()
    }

    /// Linear interpolation between the nearest known neighbors; falls
    /// back to the nearest known value at the series edges.
    fn interpolate(&self, year: i32) -> Option<f64> {
        let before = self.values.range(..year).next_back();
        let after = self.values.range(year + 1..).next();
        match (before, after) {
            (Some((&y0, &v0)), Some((&y1, &v1))) => {
                let t = (year - y0) as f64 / (y1 - y0) as f64;
                Some(v0 + t * (v1 - v0))
            }
            (Some((_, &v)), None) | (None, Some((_, &v))) => Some(v),
            (None, None) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CumulativeGerd {
    pub window: YearRange,
    pub value: f64,
    pub imputed_years: Vec<i32>,
}

/// Cumulative expenditure per window. A year absent from the series is
/// an error unless `impute` is set, in which case it is interpolated
/// linearly and flagged in the output.
pub fn cumulative_gerd(
    series: &RdiSeries,
    windows: &[YearRange],
    impute: bool,
) -> Result<Vec<CumulativeGerd>> {
    let mut out = Vec::new();
    for window in windows {
        let mut total = 0.0;
        let mut imputed_years = Vec::new();
        for year in window.years() {
            match series.known(year) {
                Some(v) => total += v,
                None => {
                    if !impute {
                        return Err(Error::MissingGerdYear { year });
                    }
                    let v = series
                        .interpolate(year)
                        .ok_or(Error::MissingGerdYear { year })?;
                    total += v;
                    imputed_years.push(year);
                }
            }
        }
        out.push(CumulativeGerd {
            window: *window,
            value: total,
            imputed_years,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressionFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub n_points: usize,
}

/// Ordinary least squares on centered data. `r_squared` is defined as 1
/// when the response is constant (zero total sum of squares).
pub fn fit_linear(x: &[f64], y: &[f64]) -> Result<RegressionFit> {
    if x.len() != y.len() {
        return Err(Error::Invalid("x and y lengths differ".into()));
    }
    if x.len() < 2 {
        return Err(Error::TooFewPoints {
            need: 2,
            got: x.len(),
        });
    }
    let n = x.len() as f64;
    let mean_x = x.iter().sum::<f64>() / n;
    let mean_y = y.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (xi, yi) in x.iter().zip(y) {
        sxx += (xi - mean_x) * (xi - mean_x);
        sxy += (xi - mean_x) * (yi - mean_y);
    }
    if sxx == 0.0 {
        return Err(Error::ZeroVariancePredictor);
    }
    let slope = sxy / sxx;
    // Residual mean with fused multiply-add: algebraically equal to
    // mean_y − slope·mean_x but immune to the cancellation that loses
    // small intercepts under steep slopes.
    let intercept = x
        .iter()
        .zip(y)
        .map(|(xi, yi)| (-slope).mul_add(*xi, *yi))
        .sum::<f64>()
        / n;
    let mut ss_res = 0.0;
    let mut ss_tot = 0.0;
    for (xi, yi) in x.iter().zip(y) {
        let fitted = slope * xi + intercept;
        ss_res += (yi - fitted) * (yi - fitted);
        ss_tot += (yi - mean_y) * (yi - mean_y);
    }
    let r_squared = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Ok(RegressionFit {
        slope,
        intercept,
        r_squared,
        n_points: x.len(),
    })
}

/// Sample Pearson correlation; errors on fewer than two points or a
/// constant input.
pub fn correlate(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::Invalid("x and y lengths differ".into()));
    }
    if x.len() < 2 {
        return Err(Error::TooFewPoints {
            need: 2,
            got: x.len(),
        });
    }
    let n = x.len() as f64;
    let mean_x = x.iter().sum::<f64>() / n;
    let mean_y = y.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    let mut sxy = 0.0;
    for (xi, yi) in x.iter().zip(y) {
        sxx += (xi - mean_x) * (xi - mean_x);
        syy += (yi - mean_y) * (yi - mean_y);
        sxy += (xi - mean_x) * (yi - mean_y);
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::ConstantCorrelationInput);
    }
    Ok(sxy / (sxx.sqrt() * syy.sqrt()))
}
