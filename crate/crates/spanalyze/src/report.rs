//! End-to-end report assembly: one deterministic document holding the
//! descriptor tables, partition shares, regression and correlation
//! results, impact series and trace summaries, plus the CSV table and
//! figure-data emission used by the pipeline.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::analysis::{
    correlate, cumulative_gerd, fit_linear, windowed_series, CumulativeGerd, RdiSeries,
    RegressionFit, SeriesParams, WindowSeries, WindowSpec,
};
use crate::corpus::{CleaningReport, Corpus, IngestReport, YearRange};
use crate::delineation::{DomainQuery, ExpansionTrace, QueryMode};
use crate::error::Result;
use crate::graph::{AuthorKeying, BuildFilters, GeoContext};
use crate::indicators::{
    citation_impact_raw, reference_impact, self_citation_rate, ReferenceWeighting,
};
use crate::taxonomy::{
    classify_collaboration, count_contributions, regional_intensity, resolve_affiliations,
    ContributionTable, CountDim, CountScheme, FieldMap, GeoConfig, OrganizationRegistry,
    RegionalIntensityTable,
};

/// One delineated domain with its retrieval result and, for keyword
/// domains, the expansion trace.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DomainResult {
    pub query: DomainQuery,
    pub pubs: BTreeSet<String>,
    pub trace: Option<ExpansionTrace>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CollaborationShares {
    pub publications: usize,
    pub unclassified: usize,
    pub institutional: usize,
    pub regional: usize,
    pub eu: usize,
    pub eu_neighbor: usize,
    pub other_international: usize,
    pub international: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubsetImpact {
    pub publications: usize,
    pub ci: f64,
    pub ci_rel_vs_domain: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ImpactRow {
    pub year: i32,
    pub ci: f64,
    pub ci_rel_vs_collection: Option<f64>,
    pub self_citation_rate: Option<f64>,
    pub national: Option<SubsetImpact>,
    pub european: Option<SubsetImpact>,
    pub international: Option<SubsetImpact>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DomainSection {
    pub mode: QueryMode,
    pub publications: usize,
    pub terms: Vec<String>,
    pub expansion_accepted: Vec<String>,
    pub collaboration: CollaborationShares,
    pub sector_whole: ContributionTable,
    pub sector_normalized: ContributionTable,
    pub frascati_whole: ContributionTable,
    pub regional: Option<RegionalIntensityTable>,
    pub impact: Vec<ImpactRow>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FundingSection {
    pub anchor: i32,
    pub cumulative: Vec<CumulativeGerd>,
    pub n_clusters: Vec<usize>,
    pub pearson_r: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    pub study_period: YearRange,
    pub ingest: IngestReport,
    pub cleaning: CleaningReport,
    pub domains: BTreeMap<String, DomainSection>,
    pub windows: WindowSeries,
    pub fit_h_on_nc50: Option<RegressionFit>,
    pub funding: Option<FundingSection>,
    pub traces: BTreeMap<String, ExpansionTrace>,
}

pub struct ReportInputs<'a> {
    pub corpus: &'a Corpus,
    pub ingest: IngestReport,
    pub cleaning: CleaningReport,
    pub domains: &'a [DomainResult],
    pub registry: &'a OrganizationRegistry,
    pub geo: &'a GeoConfig,
    pub fieldmap: &'a FieldMap,
    pub keying: &'a AuthorKeying,
    pub windows: WindowSpec,
    pub min_copubs: u32,
    pub filters: BuildFilters,
    pub min_contributions: u64,
    pub gerd_national: Option<&'a RdiSeries>,
    pub gerd_regions: Option<&'a BTreeMap<String, f64>>,
    pub funding_anchor: i32,
    pub funding_horizon: i32,
    pub impute_gerd: bool,
    pub reference_weighting: ReferenceWeighting,
}

/// Collaboration-type counts over a publication set; publications that
/// cannot be classified (no home affiliation) are reported, not fatal.
pub fn collaboration_shares(
    pubs: &BTreeSet<String>,
    corpus: &Corpus,
    registry: &OrganizationRegistry,
    geo: &GeoConfig,
) -> CollaborationShares {
    let mut shares = CollaborationShares::default();
    for id in pubs {
        let Some(record) = corpus.get(id) else { continue };
        shares.publications += 1;
        match classify_collaboration(record, registry, geo) {
            Ok(p) => {
                shares.institutional += p.institutional as usize;
                shares.regional += p.regional as usize;
                shares.eu += p.eu as usize;
                shares.eu_neighbor += p.eu_neighbor as usize;
                shares.other_international += p.other_international as usize;
                shares.international += p.international as usize;
            }
            Err(_) => shares.unclassified += 1,
        }
    }
    shares
}

/// Contribution counts of home-country regions over a publication set
/// (whole counting), the input to the regional-intensity table.
pub fn home_region_counts(
    pubs: &BTreeSet<String>,
    corpus: &Corpus,
    registry: &OrganizationRegistry,
    geo: &GeoConfig,
) -> BTreeMap<String, u64> {
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for id in pubs {
        let Some(record) = corpus.get(id) else { continue };
        let regions: BTreeSet<String> = resolve_affiliations(record, registry)
            .into_iter()
            .filter(|a| a.country.as_deref() == Some(geo.home_country.as_str()))
            .filter_map(|a| a.region)
            .collect();
        for region in regions {
            *counts.entry(region).or_insert(0) += 1;
        }
    }
    counts
}

fn subset_impact(
    subset: &BTreeSet<String>,
    domain: &BTreeSet<String>,
    corpus: &Corpus,
    year: i32,
    weighting: ReferenceWeighting,
) -> Option<SubsetImpact> {
    let ci = citation_impact_raw(subset, corpus, year).ok()?;
    let reference = reference_impact(domain, corpus, year, weighting)
        .ok()
        .filter(|r| *r > 0.0)?;
    Some(SubsetImpact {
        publications: subset.len(),
        ci,
        ci_rel_vs_domain: ci / reference,
    })
}

/// Impact series of one domain across the study period: rows for every
/// year with publication history, each with the collection-relative
/// impact and the per-collaboration-type breakdown.
pub fn impact_rows(
    domain: &BTreeSet<String>,
    collection: &BTreeSet<String>,
    corpus: &Corpus,
    registry: &OrganizationRegistry,
    geo: &GeoConfig,
    weighting: ReferenceWeighting,
) -> Vec<ImpactRow> {
    let mut national = BTreeSet::new();
    let mut european = BTreeSet::new();
    let mut international = BTreeSet::new();
    for id in domain {
        let Some(record) = corpus.get(id) else { continue };
        if let Ok(profile) = classify_collaboration(record, registry, geo) {
            if profile.eu {
                european.insert(id.clone());
            }
            if profile.eu_neighbor || profile.other_international {
                international.insert(id.clone());
            }
            if !profile.international {
                national.insert(id.clone());
            }
        }
    }
    let period = corpus.study_period();
    let mut rows = Vec::new();
    for year in period.start + 2..=period.end {
        let Ok(ci) = citation_impact_raw(domain, corpus, year) else {
            continue;
        };
        let ci_rel_vs_collection = reference_impact(collection, corpus, year, weighting)
            .ok()
            .filter(|r| *r > 0.0)
            .map(|r| ci / r);
        rows.push(ImpactRow {
            year,
            ci,
            ci_rel_vs_collection,
            self_citation_rate: self_citation_rate(domain, corpus, year).ok(),
            national: subset_impact(&national, domain, corpus, year, weighting),
            european: subset_impact(&european, domain, corpus, year, weighting),
            international: subset_impact(&international, domain, corpus, year, weighting),
        });
    }
    rows
}

pub fn assemble_report(inputs: &ReportInputs<'_>) -> Result<Report> {
    let corpus = inputs.corpus;
    let collection: BTreeSet<String> = corpus.ids().cloned().collect();

    let mut sections = BTreeMap::new();
    let mut traces = BTreeMap::new();
    for result in inputs.domains {
        let name = result.query.name.clone();
        if let Some(trace) = &result.trace {
            traces.insert(name.clone(), trace.clone());
        }
        let regional = match (&inputs.gerd_regions, result.pubs.is_empty()) {
            (Some(gerd), false) => {
                let counts =
                    home_region_counts(&result.pubs, corpus, inputs.registry, inputs.geo);
                if counts.is_empty() {
                    None
                } else {
                    Some(regional_intensity(&counts, gerd, inputs.min_contributions)?)
                }
            }
            _ => None,
        };
        sections.insert(
            name,
            DomainSection {
                mode: result.query.mode,
                publications: result.pubs.len(),
                terms: result.query.terms.iter().map(|t| t.joined()).collect(),
                expansion_accepted: result
                    .trace
                    .iter()
                    .flat_map(|t| t.rounds.iter())
                    .flat_map(|r| r.accepted.iter())
                    .map(|a| a.keyword.joined())
                    .collect(),
                collaboration: collaboration_shares(
                    &result.pubs,
                    corpus,
                    inputs.registry,
                    inputs.geo,
                ),
                sector_whole: home_sector_table(
                    &result.pubs,
                    corpus,
                    inputs.registry,
                    inputs.geo,
                    CountScheme::Whole,
                ),
                sector_normalized: home_sector_table(
                    &result.pubs,
                    corpus,
                    inputs.registry,
                    inputs.geo,
                    CountScheme::WholeNormalized,
                ),
                frascati_whole: count_contributions(
                    &result.pubs,
                    corpus,
                    CountDim::FrascatiField,
                    CountScheme::Whole,
                    inputs.registry,
                    inputs.fieldmap,
                ),
                regional,
                impact: impact_rows(
                    &result.pubs,
                    &collection,
                    corpus,
                    inputs.registry,
                    inputs.geo,
                    inputs.reference_weighting,
                ),
            },
        );
    }

    let domain_sets: Vec<(String, BTreeSet<String>)> = inputs
        .domains
        .iter()
        .map(|d| (d.query.name.clone(), d.pubs.clone()))
        .collect();
    let params = SeriesParams {
        min_copubs: inputs.min_copubs,
        filters: inputs.filters,
        geo_ctx: Some(GeoContext {
            registry: inputs.registry,
            geo: inputs.geo,
        }),
        keying: inputs.keying,
    };
    let windows = windowed_series(corpus, &domain_sets, &inputs.windows, &params)?;

    // H regressed on N_c,50% over the boundary rows of non-empty windows.
    let points: Vec<(f64, f64)> = windows
        .rows
        .iter()
        .filter_map(|row| {
            let nc50 = row.boundary.nc50? as f64;
            let h = row.boundary.h?;
            Some((nc50, h))
        })
        .collect();
    let fit_h_on_nc50 = if points.len() >= 2 {
        let (x, y): (Vec<f64>, Vec<f64>) = points.into_iter().unzip();
        fit_linear(&x, &y).ok()
    } else {
        None
    };

    let funding = match inputs.gerd_national {
        Some(series) => {
            let spec = WindowSpec::cumulative(inputs.funding_anchor, inputs.funding_horizon);
            spec.validate(corpus.study_period())?;
            let cumulative_windows = spec.windows();
            let cumulative = cumulative_gerd(series, &cumulative_windows, inputs.impute_gerd)?;
            let mut n_clusters = Vec::new();
            for window in &cumulative_windows {
                let (_, boundary) = crate::analysis::build_window_graphs(
                    corpus,
                    &domain_sets,
                    *window,
                    &params,
                )?;
                n_clusters.push(crate::graph::metrics::connected_components(&boundary).count);
            }
            let xs: Vec<f64> = n_clusters.iter().map(|n| *n as f64).collect();
            let ys: Vec<f64> = cumulative.iter().map(|c| c.value).collect();
            let pearson_r = correlate(&xs, &ys).ok();
            Some(FundingSection {
                anchor: inputs.funding_anchor,
                cumulative,
                n_clusters,
                pearson_r,
            })
        }
        None => None,
    };

    Ok(Report {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        study_period: corpus.study_period(),
        ingest: inputs.ingest.clone(),
        cleaning: inputs.cleaning.clone(),
        domains: sections,
        windows,
        fit_h_on_nc50,
        funding,
        traces,
    })
}

/// Sector contributions restricted to home-country organizations, which
/// is the scope of the published organization typology.
pub fn home_sector_table(
    pubs: &BTreeSet<String>,
    corpus: &Corpus,
    registry: &OrganizationRegistry,
    geo: &GeoConfig,
    scheme: CountScheme,
) -> ContributionTable {
    use crate::taxonomy::ContributionRow;
    let mut values: BTreeMap<String, f64> = BTreeMap::new();
    let mut publications = 0usize;
    let mut unresolved = 0usize;
    for id in pubs {
        let Some(record) = corpus.get(id) else { continue };
        publications += 1;
        let sectors: BTreeSet<String> = resolve_affiliations(record, registry)
            .into_iter()
            .filter(|a| a.country.as_deref() == Some(geo.home_country.as_str()))
            .filter_map(|a| a.sector)
            .map(|s| s.label().to_string())
            .collect();
        if sectors.is_empty() {
            unresolved += 1;
            continue;
        }
        let weight = match scheme {
            CountScheme::Whole => 1.0,
            CountScheme::WholeNormalized => 1.0 / sectors.len() as f64,
        };
        for s in sectors {
            *values.entry(s).or_insert(0.0) += weight;
        }
    }
    let mut rows: Vec<ContributionRow> = values
        .into_iter()
        .map(|(entity, value)| ContributionRow {
            entity,
            value,
            share: if publications == 0 {
                0.0
            } else {
                value / publications as f64
            },
        })
        .collect();
    rows.sort_by(|a, b| {
        b.value
            .partial_cmp(&a.value)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| a.entity.cmp(&b.entity))
    });
    ContributionTable {
        dim: CountDim::Sector,
        scheme,
        publications,
        unresolved,
        rows,
    }
}

// ------------------------------------------------------------- CSV output

fn fmt_opt_f64(v: Option<f64>, decimals: usize) -> String {
    v.map(|x| format!("{x:.decimals$}")).unwrap_or_default()
}

/// Descriptor table for one network across the series windows, at the
/// published precision: density three decimals, mean collaborators one,
/// diversity indicators two.
pub fn network_table_csv(series: &WindowSeries, network: &str) -> String {
    let mut out = String::from(
        "window_start,window_end,n,m,n_c,max_cluster,density,avg_collab,v,h,nc50\n",
    );
    for row in &series.rows {
        let descriptor = if network == "boundary" {
            Some(&row.boundary)
        } else {
            row.domains.iter().find(|d| d.network == network)
        };
        let Some(d) = descriptor else { continue };
        out.push_str(&format!(
            "{},{},{},{},{},{},{:.3},{:.1},{},{},{}\n",
            row.window.start,
            row.window.end,
            d.authors,
            d.linkages,
            d.clusters,
            d.max_cluster,
            d.density,
            d.avg_collaborators,
            fmt_opt_f64(d.v, 2),
            fmt_opt_f64(d.h, 2),
            d.nc50.map(|n| n.to_string()).unwrap_or_default(),
        ));
    }
    out
}

/// Figure data: cumulative expenditure against boundary cluster counts.
pub fn funding_csv(funding: &FundingSection) -> String {
    let mut out = String::from("window_start,window_end,cumulative_gerd,n_clusters,imputed_years\n");
    for (c, n) in funding.cumulative.iter().zip(&funding.n_clusters) {
        let imputed: Vec<String> = c.imputed_years.iter().map(|y| y.to_string()).collect();
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            c.window.start,
            c.window.end,
            c.value,
            n,
            imputed.join(";")
        ));
    }
    out
}

/// Figure data: diversity against the 50% cluster count per window.
pub fn diversity_csv(series: &WindowSeries) -> String {
    let mut out = String::from("window_start,window_end,nc50,h\n");
    for row in &series.rows {
        if let (Some(nc50), Some(h)) = (row.boundary.nc50, row.boundary.h) {
            out.push_str(&format!(
                "{},{},{},{:.2}\n",
                row.window.start, row.window.end, nc50, h
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{WindowMode, WindowSpec};
    use crate::corpus::ingest;
    use std::io::Cursor;

    #[test]
    fn empty_corpus_report_is_valid_and_zeroed() {
        let (corpus, ingest_report) = ingest(
            Cursor::new(""),
            Cursor::new(""),
            YearRange::new(2000, 2015),
        )
        .unwrap();
        let (cleaned, cleaning) = crate::corpus::clean_corpus(&corpus, 100);
        let registry = OrganizationRegistry::new();
        let geo = GeoConfig {
            home_country: "EL".into(),
            eu28: ["EL".to_string()].into(),
            eu_neighbors: BTreeSet::new(),
        };
        let fieldmap = FieldMap::default();
        let keying = AuthorKeying::new();
        let domains = vec![
            DomainResult {
                query: DomainQuery::keyword("A", &["alpha beta"], &[]).unwrap(),
                pubs: BTreeSet::new(),
                trace: None,
            },
            DomainResult {
                query: DomainQuery::keyword("B", &["gamma delta"], &[]).unwrap(),
                pubs: BTreeSet::new(),
                trace: None,
            },
        ];
        let inputs = ReportInputs {
            corpus: &cleaned,
            ingest: ingest_report,
            cleaning,
            domains: &domains,
            registry: &registry,
            geo: &geo,
            fieldmap: &fieldmap,
            keying: &keying,
            windows: WindowSpec {
                mode: WindowMode::Sliding,
                length: 6,
                step: 3,
                anchor: 2002,
                horizon: 2013,
            },
            min_copubs: 2,
            filters: BuildFilters::default(),
            min_contributions: 10,
            gerd_national: None,
            gerd_regions: None,
            funding_anchor: 2003,
            funding_horizon: 2013,
            impute_gerd: false,
            reference_weighting: ReferenceWeighting::CategoryWeighted,
        };
        let report = assemble_report(&inputs).unwrap();
        assert_eq!(report.windows.rows.len(), 3);
        assert!(report.windows.rows.iter().all(|r| r.boundary.empty));
        assert!(report.fit_h_on_nc50.is_none());
        assert!(report.funding.is_none());
        let json = serde_json::to_string_pretty(&report).unwrap();
        let again = assemble_report(&inputs).unwrap();
        assert_eq!(json, serde_json::to_string_pretty(&again).unwrap());
    }
}
