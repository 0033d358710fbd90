//! Diversity and impact indicators: intersection partitions of the
//! boundary-spanning network, variance- and entropy-based diversity,
//! the N_c,50% cluster statistic, citation impact, and the intra-domain
//! self-citation rate.
//!
//! Self-citation here is temporal self-reference within a domain (a
//! publication citing another publication of the same domain published
//! the same year or the year before), not author-level self-citation.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::corpus::{count_by_year, Corpus, YearRange};
use crate::error::{Error, Result};
use crate::graph::metrics::ClusterSummary;
use crate::graph::CoauthorshipGraph;

/// Exclusive intersection classes over D domains: one class per domain
/// subset of size ≥ 2, ordered by subset size then by the positions of
/// the members in the given domain order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntersectionPartition {
    pub window: YearRange,
    pub categories: Vec<String>,
    pub counts: Vec<u64>,
    pub fractions: Vec<f64>,
    pub total_authors: u64,
}

/// All domain subsets of size ≥ 2 in canonical order; for three domains
/// A,B,C: A∩B, A∩C, B∩C, A∩B∩C.
pub fn intersection_categories(domains: &[String]) -> Vec<Vec<String>> {
    let d = domains.len();
    let mut subsets: Vec<Vec<String>> = Vec::new();
    for mask in 1u32..(1 << d) {
        if mask.count_ones() >= 2 {
            let members: Vec<String> = (0..d)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| domains[i].clone())
                .collect();
            subsets.push(members);
        }
    }
    subsets.sort_by_key(|s| {
        let positions: Vec<usize> = s
            .iter()
            .map(|m| domains.iter().position(|d| d == m).unwrap())
            .collect();
        (s.len(), positions)
    });
    subsets
}

fn category_label(members: &[String]) -> String {
    members.join("∩")
}

/// Assigns every boundary author to its exact domain-label class and
/// returns the class fractions. Errors on an empty graph, on vertices
/// with fewer than two labels, and on labels outside `domains`.
pub fn partition_intersections(
    boundary: &CoauthorshipGraph,
    domains: &[String],
) -> Result<IntersectionPartition> {
    if boundary.is_empty() {
        return Err(Error::NoBoundaryAuthors);
    }
    let categories = intersection_categories(domains);
    let index: BTreeMap<Vec<String>, usize> = categories
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut sorted = c.clone();
            sorted.sort();
            (sorted, i)
        })
        .collect();
    let mut counts = vec![0u64; categories.len()];
    for (key, info) in boundary.vertices() {
        let labels: Vec<String> = info.domains.iter().cloned().collect();
        if labels.len() < 2 {
            return Err(Error::Invalid(format!(
                "boundary vertex {key} carries fewer than two domain labels"
            )));
        }
        let idx = index.get(&labels).ok_or_else(|| {
            Error::Invalid(format!(
                "vertex {key} labels {labels:?} not a subset of the domain list"
            ))
        })?;
        counts[*idx] += 1;
    }
    let total: u64 = counts.iter().sum();
    let fractions: Vec<f64> = counts.iter().map(|c| *c as f64 / total as f64).collect();
    Ok(IntersectionPartition {
        window: boundary.window(),
        categories: categories.iter().map(|c| category_label(c)).collect(),
        counts,
        fractions,
        total_authors: total,
    })
}

/// Variance-based diversity 1 − Σ p_k².
pub fn variance_diversity(partition: &IntersectionPartition) -> f64 {
    1.0 - partition.fractions.iter().map(|p| p * p).sum::<f64>()
}

/// Entropy-based diversity Σ p_k·log10(1/p_k), with 0·log(1/0) = 0.
pub fn entropy_diversity(partition: &IntersectionPartition) -> f64 {
    partition
        .fractions
        .iter()
        .filter(|p| **p > 0.0)
        .map(|p| p * (1.0 / p).log10())
        .sum()
}

/// Minimal number of largest clusters jointly holding at least half the
/// vertices, computed over the deterministic cluster ordering.
pub fn n_clusters_50(summary: &ClusterSummary) -> Result<usize> {
    let n: usize = summary.sizes.iter().sum();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let needed = n.div_ceil(2);
    let mut covered = 0usize;
    for (i, size) in summary.sizes.iter().enumerate() {
        covered += size;
        if covered >= needed {
            return Ok(i + 1);
        }
    }
    unreachable!("cluster sizes sum to n");
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImpactPoint {
    pub year: i32,
    pub ci: f64,
    pub ci_rel: f64,
    pub self_citation_rate: f64,
}

/// How the per-category reference impacts are averaged into the
/// normalization constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReferenceWeighting
    {
    /// Categories weighted by their publication counts over the two
    /// preceding years.
    CategoryWeighted,
    /// Plain mean over categories.
    Unweighted,
}

/// Citations received in `year` by set publications published in the
/// two preceding years, divided by the number of those publications.
/// Self-citations are included.
pub fn citation_impact_raw(pubs: &BTreeSet<String>, corpus: &Corpus, year: i32) -> Result<f64> {
    let by_year = count_by_year(pubs, corpus);
    let denominator = by_year.get(&(year - 1)).copied().unwrap_or(0)
        + by_year.get(&(year - 2)).copied().unwrap_or(0);
    if denominator == 0 {
        return Err(Error::InsufficientHistory { year });
    }
    let numerator = citations_in_year_to_recent(pubs, corpus, year);
    Ok(numerator as f64 / denominator as f64)
}

fn citations_in_year_to_recent(pubs: &BTreeSet<String>, corpus: &Corpus, year: i32) -> u64 {
    let mut count = 0u64;
    for id in pubs {
        let Some(record) = corpus.get(id) else {
            continue;
        };
        if record.year == year - 1 || record.year == year - 2 {
            count += corpus
                .citations_to(id)
                .filter(|l| l.citing_year == year)
                .count() as u64;
        }
    }
    count
}

/// Reference impact: CI per subject category within the reference set,
/// averaged per `weighting`. Categories without publication history in
/// the two preceding years are skipped.
pub fn reference_impact(
    reference: &BTreeSet<String>,
    corpus: &Corpus,
    year: i32,
    weighting: ReferenceWeighting,
) -> Result<f64> {
    let mut by_category: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for id in reference {
        if let Some(record) = corpus.get(id) {
            for cat in &record.subject_categories {
                by_category
                    .entry(cat.clone())
                    .or_default()
                    .insert(id.clone());
            }
        }
    }
    let mut weighted_sum = 0.0f64;
    let mut weight_total = 0.0f64;
    for ids in by_category.values() {
        let by_year = count_by_year(ids, corpus);
        let denom = by_year.get(&(year - 1)).copied().unwrap_or(0)
            + by_year.get(&(year - 2)).copied().unwrap_or(0);
        if denom == 0 {
            continue;
        }
        let ci = citations_in_year_to_recent(ids, corpus, year) as f64 / denom as f64;
        let w = match weighting {
            ReferenceWeighting::CategoryWeighted => denom as f64,
            ReferenceWeighting::Unweighted => 1.0,
        };
        weighted_sum += w * ci;
        weight_total += w;
    }
    if weight_total == 0.0 {
        return Err(Error::InsufficientHistory { year });
    }
    Ok(weighted_sum / weight_total)
}

/// Full impact point for a publication set against a reference set.
/// `ci_rel` is CI divided by the reference average; when no reference is
/// given the set normalizes against itself (ci_rel = 1 by construction
/// only when categories partition the set; see `reference_impact`).
pub fn citation_impact(
    pubs: &BTreeSet<String>,
    corpus: &Corpus,
    year: i32,
    reference: Option<(&BTreeSet<String>, ReferenceWeighting)>,
) -> Result<ImpactPoint> {
    let ci = citation_impact_raw(pubs, corpus, year)?;
    let reference_mean = match reference {
        Some((reference_set, weighting)) => {
            reference_impact(reference_set, corpus, year, weighting)?
        }
        None => reference_impact(pubs, corpus, year, ReferenceWeighting::CategoryWeighted)?,
    };
    if reference_mean <= 0.0 {
        return Err(Error::Invalid(format!(
            "reference impact for year {year} is not positive"
        )));
    }
    Ok(ImpactPoint {
        year,
        ci,
        ci_rel: ci / reference_mean,
        self_citation_rate: self_citation_rate(pubs, corpus, year)?,
    })
}

/// Fraction of the domain's publications of `year` citing another
/// domain publication published in `year` or `year − 1`.
pub fn self_citation_rate(pubs: &BTreeSet<String>, corpus: &Corpus, year: i32) -> Result<f64> {
    let mut in_year = 0u64;
    let mut self_citing = 0u64;
    for id in pubs {
        let Some(record) = corpus.get(id) else {
            continue;
        };
        if record.year != year {
            continue;
        }
        in_year += 1;
        let cites_recent_domain_pub = corpus.citations_from(id).any(|l| {
            pubs.contains(&l.cited_id)
                && corpus
                    .get(&l.cited_id)
                    .is_some_and(|cited| cited.year == year || cited.year == year - 1)
        });
        if cites_recent_domain_pub {
            self_citing += 1;
        }
    }
    if in_year == 0 {
        return Err(Error::NoPublicationsInYear { year });
    }
    Ok(self_citing as f64 / in_year as f64)
}
