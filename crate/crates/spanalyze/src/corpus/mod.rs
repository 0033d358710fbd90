//! Bibliographic corpus: record ingest, validation, cleaning, and the
//! citation index.
//!
//! Records arrive as line-delimited JSON objects (see `docs/formats.md`
//! for the field table), citation links as headerless CSV lines of
//! `citing_id,cited_id,citing_year`. A [`Corpus`] is immutable once
//! built; every operation on it is a pure read.

pub mod text;

use std::collections::{BTreeMap, BTreeSet};
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use text::{normalize_phrase, normalize_text, normalize_text_with, NormalizerOverrides, TokenList};

/// Inclusive year range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct YearRange {
    pub start: i32,
    pub end: i32,
}

impl YearRange {
    pub fn new(start: i32, end: i32) -> YearRange {
        YearRange { start, end }
    }

    pub fn contains(&self, year: i32) -> bool {
        self.start <= year && year <= self.end
    }

    pub fn years(&self) -> impl Iterator<Item = i32> {
        self.start..=self.end
    }

    pub fn label(&self) -> String {
        format!("{}-{}", self.start, self.end)
    }
}

impl std::fmt::Display for YearRange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}-{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DocType {
    JournalArticle,
    ProceedingsPaper,
}

/// One affiliation of one author on one publication. Every field may be
/// missing in dirty data; country codes are uppercased at ingest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Affiliation {
    pub org: Option<String>,
    pub region: Option<String>,
    pub country: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuthorEntry {
    pub raw_name: String,
    pub affiliations: Vec<Affiliation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicationRecord {
    pub id: String,
    pub year: i32,
    pub doc_type: DocType,
    pub title: String,
    pub abstract_text: String,
    pub keywords: Vec<String>,
    pub authors: Vec<AuthorEntry>,
    pub subject_categories: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CitationLink {
    pub citing_id: String,
    pub cited_id: String,
    pub citing_year: i32,
}

/// Wire format of one record line. `authors[*]` carries at most one
/// affiliation per entry; the in-memory model keeps a list.
#[derive(Debug, Serialize, Deserialize)]
struct RecordLine {
    id: String,
    year: i32,
    #[serde(rename = "type")]
    doc_type: DocType,
    #[serde(default)]
    title: String,
    #[serde(default)]
    r#abstract: String,
    #[serde(default)]
    keywords: Vec<String>,
    authors: Vec<AuthorLine>,
    #[serde(default)]
    subjects: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct AuthorLine {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    org: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    region: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    country: Option<String>,
}

fn validate_country(code: &str) -> Result<String> {
    let up = code.trim().to_uppercase();
    if up.len() == 2 && up.bytes().all(|b| b.is_ascii_uppercase()) {
        Ok(up)
    } else {
        Err(Error::Invalid(format!("invalid country code {code:?}")))
    }
}

impl RecordLine {
    fn into_record(self) -> Result<PublicationRecord> {
        if self.id.trim().is_empty() {
            return Err(Error::Invalid("empty record id".into()));
        }
        if !(1000..=9999).contains(&self.year) {
            return Err(Error::Invalid(format!("year {} is not 4-digit", self.year)));
        }
        if self.authors.is_empty() {
            return Err(Error::Invalid("record has no authors".into()));
        }
        let mut authors = Vec::with_capacity(self.authors.len());
        for a in self.authors {
            if a.name.trim().is_empty() {
                return Err(Error::Invalid("empty author name".into()));
            }
            let mut affiliations = Vec::new();
            if a.org.is_some() || a.region.is_some() || a.country.is_some() {
                let country = a.country.as_deref().map(validate_country).transpose()?;
                affiliations.push(Affiliation {
                    org: a.org.map(|s| s.trim().to_string()).filter(|s| !s.is_empty()),
                    region: a.region.map(|s| s.trim().to_string()).filter(|s| !s.is_empty()),
                    country,
                });
            }
            authors.push(AuthorEntry {
                raw_name: a.name.trim().to_string(),
                affiliations,
            });
        }
        let trim_all = |items: Vec<String>| -> Vec<String> {
            items
                .into_iter()
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect()
        };
        Ok(PublicationRecord {
            id: self.id.trim().to_string(),
            year: self.year,
            doc_type: self.doc_type,
            title: self.title,
            abstract_text: self.r#abstract,
            keywords: trim_all(self.keywords),
            authors,
            subject_categories: trim_all(self.subjects),
        })
    }
}

fn record_to_line(r: &PublicationRecord) -> RecordLine {
    RecordLine {
        id: r.id.clone(),
        year: r.year,
        doc_type: r.doc_type,
        title: r.title.clone(),
        r#abstract: r.abstract_text.clone(),
        keywords: r.keywords.clone(),
        authors: r
            .authors
            .iter()
            .map(|a| {
                let aff = a.affiliations.first();
                AuthorLine {
                    name: a.raw_name.clone(),
                    org: aff.and_then(|f| f.org.clone()),
                    region: aff.and_then(|f| f.region.clone()),
                    country: aff.and_then(|f| f.country.clone()),
                }
            })
            .collect(),
        subjects: r.subject_categories.clone(),
    }
}

/// Per-line ingest problem, reported but non-fatal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineError {
    pub line: usize,
    pub message: String,
}

/// What happened during ingest: counts are over record lines unless noted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestReport {
    pub lines_read: usize,
    pub records_ingested: usize,
    pub dropped_out_of_period: usize,
    pub duplicate_ids: Vec<String>,
    pub record_errors: Vec<LineError>,
    pub links_read: usize,
    pub links_kept: usize,
    pub links_citing_out_of_period: usize,
    pub links_dropped_unresolved: usize,
    pub links_dropped_self: usize,
    pub links_dropped_year_order: usize,
    pub link_errors: Vec<LineError>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CleaningReport {
    pub records_before: usize,
    pub records_after: usize,
    pub removed_ids: Vec<String>,
    pub links_removed: usize,
}

/// Immutable record store plus citation index.
#[derive(Debug, Clone)]
pub struct Corpus {
    records: BTreeMap<String, PublicationRecord>,
    links: Vec<CitationLink>,
    cited_index: BTreeMap<String, Vec<usize>>,
    citing_index: BTreeMap<String, Vec<usize>>,
    study_period: YearRange,
}

impl Corpus {
    pub fn study_period(&self) -> YearRange {
        self.study_period
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&PublicationRecord> {
        self.records.get(id)
    }

    pub fn records(&self) -> impl Iterator<Item = &PublicationRecord> {
        self.records.values()
    }

    pub fn ids(&self) -> impl Iterator<Item = &String> {
        self.records.keys()
    }

    pub fn links(&self) -> &[CitationLink] {
        &self.links
    }

    /// Links whose cited publication is `id`.
    pub fn citations_to(&self, id: &str) -> impl Iterator<Item = &CitationLink> {
        self.cited_index
            .get(id)
            .into_iter()
            .flatten()
            .map(|&i| &self.links[i])
    }

    /// Links whose citing publication is `id`.
    pub fn citations_from(&self, id: &str) -> impl Iterator<Item = &CitationLink> {
        self.citing_index
            .get(id)
            .into_iter()
            .flatten()
            .map(|&i| &self.links[i])
    }

    /// True iff the publication received a citation in its publication
    /// year or the following year.
    pub fn is_cited(&self, record: &PublicationRecord) -> bool {
        self.citations_to(&record.id)
            .any(|l| l.citing_year == record.year || l.citing_year == record.year + 1)
    }

    /// Serializes the record set back to the documented line format,
    /// records in id order. Used to persist pipeline artifacts.
    pub fn write_records<W: std::io::Write>(&self, mut out: W) -> Result<()> {
        for r in self.records.values() {
            let line = serde_json::to_string(&record_to_line(r))
                .map_err(|e| Error::Invalid(format!("serialize record {}: {e}", r.id)))?;
            writeln!(out, "{line}").map_err(|e| Error::io("<records>", e))?;
        }
        Ok(())
    }

    /// Serializes citation links as `citing_id,cited_id,citing_year` lines.
    pub fn write_links<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
        for l in &self.links {
            w.serialize((&l.citing_id, &l.cited_id, l.citing_year))
                .map_err(|e| Error::Invalid(format!("serialize link: {e}")))?;
        }
        w.flush().map_err(|e| Error::io("<links>", e))?;
        Ok(())
    }
}

/// Reads record lines, keeping syntactically valid records inside
/// `period`. Malformed lines and duplicate ids are reported per line and
/// ingest continues; the first occurrence of a duplicated id wins.
pub fn ingest_records<R: BufRead>(source: R, period: YearRange) -> Result<(Corpus, IngestReport)> {
    let mut report = IngestReport::default();
    let mut records = BTreeMap::new();
    for (idx, line) in source.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::io("<records>", e))?;
        if line.trim().is_empty() {
            continue;
        }
        report.lines_read += 1;
        let parsed: std::result::Result<RecordLine, _> = serde_json::from_str(&line);
        let record = match parsed {
            Ok(raw) => match raw.into_record() {
                Ok(r) => r,
                Err(e) => {
                    report.record_errors.push(LineError {
                        line: lineno,
                        message: e.to_string(),
                    });
                    continue;
                }
            },
            Err(e) => {
                report.record_errors.push(LineError {
                    line: lineno,
                    message: format!("malformed record line: {e}"),
                });
                continue;
            }
        };
        if !period.contains(record.year) {
            report.dropped_out_of_period += 1;
            continue;
        }
        if records.contains_key(&record.id) {
            report.record_errors.push(LineError {
                line: lineno,
                message: format!("duplicate id {}", record.id),
            });
            report.duplicate_ids.push(record.id.clone());
            continue;
        }
        records.insert(record.id.clone(), record);
    }
    report.duplicate_ids.sort();
    report.duplicate_ids.dedup();
    report.records_ingested = records.len();
    let corpus = Corpus {
        records,
        links: Vec::new(),
        cited_index: BTreeMap::new(),
        citing_index: BTreeMap::new(),
        study_period: period,
    };
    Ok((corpus, report))
}

/// Reads `citing_id,cited_id,citing_year` lines into the corpus index.
///
/// Links are kept only when the cited id resolves to a record and the
/// citing year does not precede the cited publication. Links whose
/// citing year falls outside the study period are retained (they never
/// affect `is_cited`) but counted.
pub fn ingest_citations<R: std::io::Read>(
    corpus: &mut Corpus,
    source: R,
    report: &mut IngestReport,
) -> Result<()> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(source);
    let mut links: Vec<CitationLink> = Vec::new();
    for (idx, row) in reader.records().enumerate() {
        let lineno = idx + 1;
        let row = match row {
            Ok(r) => r,
            Err(e) => {
                report.link_errors.push(LineError {
                    line: lineno,
                    message: format!("malformed link line: {e}"),
                });
                continue;
            }
        };
        if row.len() == 1 && row.get(0).is_some_and(|f| f.trim().is_empty()) {
            continue;
        }
        report.links_read += 1;
        let (citing_id, cited_id, year_field) = match (row.get(0), row.get(1), row.get(2)) {
            (Some(a), Some(b), Some(c)) if row.len() == 3 => (a, b, c),
            _ => {
                report.link_errors.push(LineError {
                    line: lineno,
                    message: "expected 3 fields: citing_id,cited_id,citing_year".into(),
                });
                continue;
            }
        };
        let citing_year: i32 = match year_field.parse() {
            Ok(y) => y,
            Err(_) => {
                report.link_errors.push(LineError {
                    line: lineno,
                    message: format!("invalid citing_year {year_field:?}"),
                });
                continue;
            }
        };
        if citing_id == cited_id {
            report.links_dropped_self += 1;
            continue;
        }
        let Some(cited) = corpus.records.get(cited_id) else {
            report.links_dropped_unresolved += 1;
            continue;
        };
        if citing_year < cited.year {
            report.links_dropped_year_order += 1;
            continue;
        }
        if !corpus.study_period.contains(citing_year) {
            report.links_citing_out_of_period += 1;
        }
        links.push(CitationLink {
            citing_id: citing_id.to_string(),
            cited_id: cited_id.to_string(),
            citing_year,
        });
    }
    links.sort_by(|a, b| {
        (&a.cited_id, a.citing_year, &a.citing_id).cmp(&(&b.cited_id, b.citing_year, &b.citing_id))
    });
    report.links_kept = links.len();
    corpus.links = links;
    rebuild_indexes(corpus);
    Ok(())
}

fn rebuild_indexes(corpus: &mut Corpus) {
    let mut cited: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    let mut citing: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (i, l) in corpus.links.iter().enumerate() {
        cited.entry(l.cited_id.clone()).or_default().push(i);
        citing.entry(l.citing_id.clone()).or_default().push(i);
    }
    corpus.cited_index = cited;
    corpus.citing_index = citing;
}

/// Convenience: ingest records then citations from two readers.
pub fn ingest<R1: BufRead, R2: std::io::Read>(
    records: R1,
    citations: R2,
    period: YearRange,
) -> Result<(Corpus, IngestReport)> {
    let (mut corpus, mut report) = ingest_records(records, period)?;
    ingest_citations(&mut corpus, citations, &mut report)?;
    Ok((corpus, report))
}

/// Drops records with more than `max_authors` authors, together with the
/// citation links that pointed at them. Idempotent.
pub fn clean_corpus(corpus: &Corpus, max_authors: usize) -> (Corpus, CleaningReport) {
    let mut kept = BTreeMap::new();
    let mut removed_ids = Vec::new();
    for (id, r) in &corpus.records {
        if r.authors.len() > max_authors {
            removed_ids.push(id.clone());
        } else {
            kept.insert(id.clone(), r.clone());
        }
    }
    let links: Vec<CitationLink> = corpus
        .links
        .iter()
        .filter(|l| kept.contains_key(&l.cited_id))
        .cloned()
        .collect();
    let report = CleaningReport {
        records_before: corpus.records.len(),
        records_after: kept.len(),
        links_removed: corpus.links.len() - links.len(),
        removed_ids,
    };
    let mut cleaned = Corpus {
        records: kept,
        links,
        cited_index: BTreeMap::new(),
        citing_index: BTreeMap::new(),
        study_period: corpus.study_period,
    };
    rebuild_indexes(&mut cleaned);
    (cleaned, report)
}

/// Distinct publication ids per year within a set, used by indicator
/// denominators.
pub fn count_by_year(pubs: &BTreeSet<String>, corpus: &Corpus) -> BTreeMap<i32, usize> {
    let mut out = BTreeMap::new();
    for id in pubs {
        if let Some(r) = corpus.get(id) {
            *out.entry(r.year).or_insert(0) += 1;
        }
    }
    out
}
