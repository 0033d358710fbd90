//! Domain delineation: boolean keyword retrieval with equal weight on
//! titles, abstracts and keywords, subject-category retrieval, and the
//! query-expansion workflow that grows a seed term set from keyword
//! co-occurrence.
//!
//! Exclusion phrases act at two levels. At retrieval time a record is an
//! exclusion-rule hit when an exclusion phrase occurs in its title or
//! abstract. At expansion time a candidate keyword containing an
//! exclusion phrase is rejected outright, so an excluded phrase can
//! never enter a term set. Keeping record screening off the keyword
//! field is what lets an excluded keyword still show up as a candidate
//! and be rejected visibly in the trace.
//!
//! ## Candidate threshold, worked example
//!
//! Candidates are keywords counted over the core set, ranked by count
//! descending (ties lexicographic). Scanning from the top, the threshold
//! is the count of the last keyword whose cumulative share of all
//! occurrences is ≤ `cdf_cutoff`; if even the first keyword exceeds the
//! cutoff, the threshold is that keyword's count. Keywords counting
//! strictly below the threshold are discarded. With counts
//! `[10, 5, 3, 1, 1]` (total 20) and cutoff 0.75 the cumulative shares
//! are 0.50, 0.75, 0.90, …; the last rank within the cutoff has count 5,
//! so the survivors are the keywords counting at least 5.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::corpus::{normalize_text, Corpus, PublicationRecord, TokenList};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QueryMode {
    Keyword,
    SubjectCategory,
}

/// One S&T domain definition: either a keyword query (seed terms plus
/// exclusions, stored in normalized token form) or a subject-category
/// filter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainQuery {
    pub name: String,
    pub mode: QueryMode,
    pub terms: Vec<TokenList>,
    pub exclusions: Vec<TokenList>,
    pub subjects: Vec<String>,
}

impl DomainQuery {
    pub fn keyword(
        name: impl Into<String>,
        seed_terms: &[&str],
        exclusions: &[&str],
    ) -> Result<DomainQuery> {
        let terms = normalize_terms(seed_terms.iter().map(|s| s.to_string()));
        let exclusions = normalize_terms(exclusions.iter().map(|s| s.to_string()));
        let q = DomainQuery {
            name: name.into(),
            mode: QueryMode::Keyword,
            terms,
            exclusions,
            subjects: Vec::new(),
        };
        q.validate()?;
        Ok(q)
    }

    pub fn subject_category(
        name: impl Into<String>,
        subjects: Vec<String>,
    ) -> Result<DomainQuery> {
        let q = DomainQuery {
            name: name.into(),
            mode: QueryMode::SubjectCategory,
            terms: Vec::new(),
            exclusions: Vec::new(),
            subjects,
        };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        match self.mode {
            QueryMode::Keyword if self.terms.is_empty() => Err(Error::Invalid(format!(
                "keyword query {} has no seed terms",
                self.name
            ))),
            QueryMode::SubjectCategory if self.subjects.is_empty() => Err(Error::Invalid(
                format!("subject-category query {} has no subjects", self.name),
            )),
            _ => Ok(()),
        }
    }

    pub fn has_term(&self, phrase: &TokenList) -> bool {
        self.terms.iter().any(|t| t == phrase)
    }
}

fn normalize_terms(raw: impl Iterator<Item = String>) -> Vec<TokenList> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for phrase in raw {
        let norm = normalize_text(&phrase);
        if !norm.is_empty() && seen.insert(norm.clone()) {
            out.push(norm);
        }
    }
    out
}

/// Parses a phrase-per-line term file (`#` starts a comment).
pub fn parse_term_file(text: &str) -> Vec<TokenList> {
    normalize_terms(
        text.lines()
            .map(|l| l.split('#').next().unwrap_or("").trim().to_string())
            .filter(|l| !l.is_empty()),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpansionConfig {
    pub cdf_cutoff: f64,
    pub top_k_frequent: usize,
    pub rounds: usize,
}

impl Default for ExpansionConfig {
    fn default() -> Self {
        ExpansionConfig {
            cdf_cutoff: 0.05,
            top_k_frequent: 20,
            rounds: 1,
        }
    }
}

impl ExpansionConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.cdf_cutoff > 0.0 && self.cdf_cutoff < 1.0) {
            return Err(Error::Invalid(format!(
                "cdf_cutoff must be in (0,1), got {}",
                self.cdf_cutoff
            )));
        }
        if self.top_k_frequent == 0 {
            return Err(Error::Invalid("top_k_frequent must be >= 1".into()));
        }
        if self.rounds == 0 {
            return Err(Error::Invalid("rounds must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RejectionReason {
    AlreadyTerm,
    Excluded,
    NoSeedAmongTopKeywords,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AcceptedKeyword {
    pub keyword: TokenList,
    pub count: u64,
    pub justified_by: TokenList,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RejectedKeyword {
    pub keyword: TokenList,
    pub count: u64,
    pub reason: RejectionReason,
}

/// Full record of one expansion round: the surviving candidate list is
/// always exactly the union of `accepted` and `rejected`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundTrace {
    pub round: usize,
    pub core_size: usize,
    pub threshold_count: u64,
    pub candidates: Vec<(TokenList, u64)>,
    pub accepted: Vec<AcceptedKeyword>,
    pub rejected: Vec<RejectedKeyword>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionTrace {
    pub domain: String,
    pub config: ExpansionConfig,
    pub rounds: Vec<RoundTrace>,
}

/// Normalized keyword list of a record, empty keywords dropped.
pub fn normalized_keywords(record: &PublicationRecord) -> Vec<TokenList> {
    record
        .keywords
        .iter()
        .map(|k| normalize_text(k))
        .filter(|k| !k.is_empty())
        .collect()
}

/// True iff the term's token sequence occurs contiguously in the
/// normalized title or abstract, or within any normalized keyword. The
/// three fields carry equal weight: a hit in any one suffices.
pub fn match_publication(record: &PublicationRecord, term: &TokenList) -> bool {
    if term.is_empty() {
        return false;
    }
    if normalize_text(&record.title).contains_phrase(term)
        || normalize_text(&record.abstract_text).contains_phrase(term)
    {
        return true;
    }
    normalized_keywords(record)
        .iter()
        .any(|k| k.contains_phrase(term))
}

/// Record-level exclusion rule: an exclusion phrase occurring in the
/// running text (title or abstract).
pub fn exclusion_hit(record: &PublicationRecord, exclusions: &[TokenList]) -> bool {
    if exclusions.is_empty() {
        return false;
    }
    let title = normalize_text(&record.title);
    let abstract_text = normalize_text(&record.abstract_text);
    exclusions
        .iter()
        .any(|e| title.contains_phrase(e) || abstract_text.contains_phrase(e))
}

/// Retrieves the publication-id set matching a domain query.
pub fn retrieve(corpus: &Corpus, query: &DomainQuery) -> BTreeSet<String> {
    match query.mode {
        QueryMode::Keyword => corpus
            .records()
            .filter(|r| query.terms.iter().any(|t| match_publication(r, t)))
            .filter(|r| !exclusion_hit(r, &query.exclusions))
            .map(|r| r.id.clone())
            .collect(),
        QueryMode::SubjectCategory => {
            let wanted: BTreeSet<&str> = query.subjects.iter().map(|s| s.as_str()).collect();
            corpus
                .records()
                .filter(|r| {
                    r.subject_categories
                        .iter()
                        .any(|s| wanted.contains(s.as_str()))
                })
                .map(|r| r.id.clone())
                .collect()
        }
    }
}

/// Keyword occurrence counts over a record set, ranked by count
/// descending then keyword ascending.
fn ranked_keyword_counts(corpus: &Corpus, ids: &BTreeSet<String>) -> Vec<(TokenList, u64)> {
    let mut counts: BTreeMap<TokenList, u64> = BTreeMap::new();
    for id in ids {
        if let Some(r) = corpus.get(id) {
            for kw in normalized_keywords(r) {
                *counts.entry(kw).or_insert(0) += 1;
            }
        }
    }
    let mut ranked: Vec<(TokenList, u64)> = counts.into_iter().collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    ranked
}

/// Candidate keywords over a core set with the cumulative-share cutoff
/// applied; see the module docs for the worked example.
pub fn candidate_keywords(
    corpus: &Corpus,
    core: &BTreeSet<String>,
    config: &ExpansionConfig,
) -> Result<Vec<(TokenList, u64)>> {
    if core.is_empty() {
        return Err(Error::EmptyCoreSet);
    }
    let ranked = ranked_keyword_counts(corpus, core);
    Ok(apply_cdf_cutoff(ranked, config.cdf_cutoff).0)
}

/// Returns (survivors, threshold count).
fn apply_cdf_cutoff(ranked: Vec<(TokenList, u64)>, cutoff: f64) -> (Vec<(TokenList, u64)>, u64) {
    if ranked.is_empty() {
        return (ranked, 0);
    }
    let total: u64 = ranked.iter().map(|(_, c)| c).sum();
    let mut threshold = ranked[0].1;
    let mut cumulative = 0u64;
    for (_, count) in &ranked {
        cumulative += count;
        if cumulative as f64 / total as f64 <= cutoff {
            threshold = *count;
        } else {
            break;
        }
    }
    let survivors = ranked
        .into_iter()
        .filter(|(_, c)| *c >= threshold)
        .collect();
    (survivors, threshold)
}

fn contains_any_phrase(haystack: &TokenList, phrases: &[TokenList]) -> bool {
    phrases.iter().any(|p| haystack.contains_phrase(p))
}

/// Grows a keyword query by co-occurrence: per round, candidates from
/// the current core set are accepted when a round-start term ranks among
/// the `top_k_frequent` keywords of the candidate's own record set.
/// Deterministic; stops early once a round accepts nothing.
pub fn expand_query(
    corpus: &Corpus,
    query: &DomainQuery,
    config: &ExpansionConfig,
) -> Result<(DomainQuery, ExpansionTrace)> {
    if query.mode != QueryMode::Keyword {
        return Err(Error::Invalid(format!(
            "query {} is not in keyword mode",
            query.name
        )));
    }
    query.validate()?;
    config.validate()?;

    let mut expanded = query.clone();
    let mut trace = ExpansionTrace {
        domain: query.name.clone(),
        config: *config,
        rounds: Vec::new(),
    };

    for round in 1..=config.rounds {
        let core = retrieve(corpus, &expanded);
        if core.is_empty() {
            return Err(Error::EmptyCoreSet);
        }
        let ranked = ranked_keyword_counts(corpus, &core);
        let (candidates, threshold) = apply_cdf_cutoff(ranked, config.cdf_cutoff);

        // Acceptance is judged against the terms the round started with:
        // the seeds in round 1, the accumulated set afterwards.
        let reference_terms = expanded.terms.clone();
        let mut accepted = Vec::new();
        let mut rejected = Vec::new();
        for (keyword, count) in &candidates {
            if reference_terms.contains(keyword) {
                rejected.push(RejectedKeyword {
                    keyword: keyword.clone(),
                    count: *count,
                    reason: RejectionReason::AlreadyTerm,
                });
                continue;
            }
            if contains_any_phrase(keyword, &expanded.exclusions) {
                rejected.push(RejectedKeyword {
                    keyword: keyword.clone(),
                    count: *count,
                    reason: RejectionReason::Excluded,
                });
                continue;
            }
            let carrier_ids: BTreeSet<String> = corpus
                .records()
                .filter(|r| normalized_keywords(r).iter().any(|k| k == keyword))
                .map(|r| r.id.clone())
                .collect();
            let top = ranked_keyword_counts(corpus, &carrier_ids);
            let top_k = &top[..top.len().min(config.top_k_frequent)];
            let justification = reference_terms
                .iter()
                .find(|t| top_k.iter().any(|(kw, _)| kw.contains_phrase(t)));
            match justification {
                Some(term) => {
                    accepted.push(AcceptedKeyword {
                        keyword: keyword.clone(),
                        count: *count,
                        justified_by: term.clone(),
                    });
                    expanded.terms.push(keyword.clone());
                }
                None => rejected.push(RejectedKeyword {
                    keyword: keyword.clone(),
                    count: *count,
                    reason: RejectionReason::NoSeedAmongTopKeywords,
                }),
            }
        }

        let additions = accepted.len();
        trace.rounds.push(RoundTrace {
            round,
            core_size: core.len(),
            threshold_count: threshold,
            candidates,
            accepted,
            rejected,
        });
        if additions == 0 {
            break;
        }
    }

    Ok((expanded, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{ingest_records, YearRange};
    use std::io::Cursor;

    fn corpus_from(records: &[(&str, &str, &[&str])]) -> Corpus {
        // (id, title, keywords)
        let lines: Vec<String> = records
            .iter()
            .map(|(id, title, keywords)| {
                let kws: Vec<String> = keywords.iter().map(|k| format!("\"{k}\"")).collect();
                format!(
                    r#"{{"id":"{id}","year":2010,"type":"journal_article","title":"{title}","abstract":"","keywords":[{}],"authors":[{{"name":"Doe, J."}}],"subjects":[]}}"#,
                    kws.join(",")
                )
            })
            .collect();
        let (corpus, report) =
            ingest_records(Cursor::new(lines.join("\n")), YearRange::new(2000, 2015)).unwrap();
        assert!(report.record_errors.is_empty());
        corpus
    }

    fn record(title: &str, abstract_text: &str, keywords: &[&str]) -> PublicationRecord {
        use crate::corpus::{AuthorEntry, DocType};
        PublicationRecord {
            id: "p".into(),
            year: 2010,
            doc_type: DocType::JournalArticle,
            title: title.into(),
            abstract_text: abstract_text.into(),
            keywords: keywords.iter().map(|s| s.to_string()).collect(),
            authors: vec![AuthorEntry {
                raw_name: "Doe, J.".into(),
                affiliations: vec![],
            }],
            subject_categories: vec![],
        }
    }

    #[test]
    fn match_examples() {
        let term = normalize_text("solar cell");
        let p = record("Hybrid nanorod-polymer solar cells", "", &[]);
        assert!(match_publication(&p, &term));

        let p = record("Turbine control", "field tests of wind turbines", &[]);
        assert!(match_publication(&p, &normalize_text("wind turbine")));

        let p = record("Unrelated", "nothing here", &["other topic"]);
        assert!(!match_publication(&p, &term));
    }

    #[test]
    fn match_within_keyword() {
        let p = record("Unrelated", "", &["dye-sensitized solar cells"]);
        assert!(match_publication(&p, &normalize_text("solar cell")));
    }

    #[test]
    fn retrieve_keyword_and_exclusion() {
        let corpus = corpus_from(&[
            ("a", "Solar cells for buildings", &[] as &[&str]),
            ("b", "Water treatment with solar cells", &[]),
            ("c", "Unrelated work", &["solar cell"]),
            ("d", "Nothing relevant", &[]),
        ]);
        let q = DomainQuery::keyword("RET", &["solar cell"], &["water"]).unwrap();
        let ids = retrieve(&corpus, &q);
        assert_eq!(
            ids.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
            vec!["a", "c"],
            "b is an exclusion-rule hit, d does not match"
        );
    }

    #[test]
    fn retrieve_is_union_minus_exclusion_hits() {
        let corpus = corpus_from(&[
            ("a", "solar cells", &[] as &[&str]),
            ("b", "wind turbines near water", &[]),
            ("c", "wind turbines", &[]),
        ]);
        let q =
            DomainQuery::keyword("RET", &["solar cell", "wind turbine"], &["water"]).unwrap();
        let combined = retrieve(&corpus, &q);

        let mut union: BTreeSet<String> = BTreeSet::new();
        for term in &q.terms {
            let single = DomainQuery {
                name: "single".into(),
                mode: QueryMode::Keyword,
                terms: vec![term.clone()],
                exclusions: vec![],
                subjects: vec![],
            };
            union.extend(retrieve(&corpus, &single));
        }
        let hits: BTreeSet<String> = corpus
            .records()
            .filter(|r| exclusion_hit(r, &q.exclusions))
            .map(|r| r.id.clone())
            .collect();
        let expected: BTreeSet<String> = union.difference(&hits).cloned().collect();
        assert_eq!(combined, expected);
    }

    #[test]
    fn retrieve_subject_mode() {
        let corpus = {
            let lines = [
                r#"{"id":"a","year":2010,"type":"journal_article","title":"t","abstract":"","keywords":[],"authors":[{"name":"Doe, J."}],"subjects":["Computer Science"]}"#,
                r#"{"id":"b","year":2010,"type":"journal_article","title":"t","abstract":"","keywords":[],"authors":[{"name":"Doe, J."}],"subjects":["Electrical and Electronic Engineering"]}"#,
                r#"{"id":"c","year":2010,"type":"journal_article","title":"t","abstract":"","keywords":[],"authors":[{"name":"Doe, J."}],"subjects":["History"]}"#,
            ];
            let (corpus, _) =
                ingest_records(Cursor::new(lines.join("\n")), YearRange::new(2000, 2015))
                    .unwrap();
            corpus
        };
        let q = DomainQuery::subject_category(
            "EECS",
            vec![
                "Electrical and Electronic Engineering".into(),
                "Computer Science".into(),
            ],
        )
        .unwrap();
        let ids = retrieve(&corpus, &q);
        assert_eq!(ids.iter().map(|s| s.as_str()).collect::<Vec<_>>(), vec!["a", "b"]);
    }

    #[test]
    fn empty_retrieval_allowed() {
        let corpus = corpus_from(&[("a", "nothing", &[] as &[&str])]);
        let q = DomainQuery::keyword("X", &["absent phrase"], &[]).unwrap();
        assert!(retrieve(&corpus, &q).is_empty());
    }

    #[test]
    fn cdf_cutoff_worked_example() {
        // counts [10, 5, 3, 1, 1], cutoff 0.75 → threshold 5, survivors  ≥ 5
        let ranked: Vec<(TokenList, u64)> = [("k1", 10u64), ("k2", 5), ("k3", 3), ("k4", 1), ("k5", 1)]
            .iter()
            .map(|(k, c)| (normalize_text(k), *c))
            .collect();
        let (survivors, threshold) = apply_cdf_cutoff(ranked, 0.75);
        assert_eq!(threshold, 5);
        assert_eq!(
            survivors
                .iter()
                .map(|(k, c)| (k.joined(), *c))
                .collect::<Vec<_>>(),
            vec![("k1".to_string(), 10), ("k2".to_string(), 5)]
        );
    }

    #[test]
    fn single_keyword_survives() {
        let corpus = corpus_from(&[("a", "t", &["alpha beta"])]);
        let core: BTreeSet<String> = ["a".to_string()].into();
        let out = candidate_keywords(&corpus, &core, &ExpansionConfig::default()).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].0.joined(), "alpha beta");
    }

    #[test]
    fn equal_counts_all_survive() {
        let corpus = corpus_from(&[
            ("a", "t", &["k1", "k2", "k3"]),
            ("b", "t", &["k1", "k2", "k3"]),
        ]);
        let core: BTreeSet<String> = ["a".to_string(), "b".to_string()].into();
        let out = candidate_keywords(&corpus, &core, &ExpansionConfig::default()).unwrap();
        assert_eq!(out.len(), 3, "equal counts all meet the threshold");
    }

    #[test]
    fn empty_core_is_an_error() {
        let corpus = corpus_from(&[("a", "t", &[] as &[&str])]);
        let err = candidate_keywords(&corpus, &BTreeSet::new(), &ExpansionConfig::default())
            .unwrap_err();
        assert!(matches!(err, Error::EmptyCoreSet));
    }

    fn expansion_corpus() -> Corpus {
        // Core keyword "solar cell"; "dye sensitized" co-occurs strongly and
        // its carrier set is dominated by "solar cell"; "water" is excluded.
        let mut recs: Vec<(String, String, Vec<String>)> = Vec::new();
        for i in 0..6 {
            recs.push((
                format!("s{i}"),
                "solar study".into(),
                vec!["solar cell".into(), "dye sensitized".into()],
            ));
        }
        for i in 0..4 {
            recs.push((
                format!("w{i}"),
                "solar study".into(),
                vec!["solar cell".into(), "water".into()],
            ));
        }
        // Tail below "water" so the cutoff scan has something to discard.
        for i in 0..2 {
            recs.push((
                format!("e{i}"),
                "solar study".into(),
                vec!["solar cell".into(), "efficiency".into()],
            ));
        }
        recs.push(("x0".into(), "other".into(), vec!["unrelated".into()]));
        let lines: Vec<String> = recs
            .iter()
            .map(|(id, title, kws)| {
                let kws: Vec<String> = kws.iter().map(|k| format!("\"{k}\"")).collect();
                format!(
                    r#"{{"id":"{id}","year":2010,"type":"journal_article","title":"{title}","abstract":"","keywords":[{}],"authors":[{{"name":"Doe, J."}}],"subjects":[]}}"#,
                    kws.join(",")
                )
            })
            .collect();
        let (corpus, _) =
            ingest_records(Cursor::new(lines.join("\n")), YearRange::new(2000, 2015)).unwrap();
        corpus
    }

    #[test]
    fn expansion_accepts_cooccurring_and_rejects_excluded() {
        let corpus = expansion_corpus();
        let q = DomainQuery::keyword("RET", &["solar cell"], &["water"]).unwrap();
        let cfg = ExpansionConfig {
            cdf_cutoff: 0.95,
            top_k_frequent: 5,
            rounds: 1,
        };
        let (expanded, trace) = expand_query(&corpus, &q, &cfg).unwrap();
        let terms: Vec<String> = expanded.terms.iter().map(|t| t.joined()).collect();
        assert_eq!(terms, vec!["solar cell", "dye sensitized"]);

        let round = &trace.rounds[0];
        assert_eq!(round.core_size, 12);
        assert_eq!(round.accepted.len(), 1);
        assert_eq!(round.accepted[0].keyword.joined(), "dye sensitized");
        assert_eq!(round.accepted[0].justified_by.joined(), "solar cell");
        assert!(round
            .rejected
            .iter()
            .any(|r| r.keyword.joined() == "water" && r.reason == RejectionReason::Excluded));
        assert_eq!(
            round.candidates.len(),
            round.accepted.len() + round.rejected.len()
        );
    }

    #[test]
    fn expansion_fixed_point_when_closed() {
        let corpus = expansion_corpus();
        let q = DomainQuery::keyword("RET", &["solar cell", "dye sensitized"], &["water"]).unwrap();
        let cfg = ExpansionConfig {
            cdf_cutoff: 0.95,
            top_k_frequent: 5,
            rounds: 3,
        };
        let (expanded, trace) = expand_query(&corpus, &q, &cfg).unwrap();
        assert_eq!(expanded.terms, q.terms);
        assert_eq!(trace.rounds.len(), 1, "stops after the first zero-addition round");
        assert!(trace.rounds[0].accepted.is_empty());
    }

    #[test]
    fn expansion_monotone_and_exclusions_absolute() {
        let corpus = expansion_corpus();
        let q = DomainQuery::keyword("RET", &["solar cell"], &["water"]).unwrap();
        let cfg = ExpansionConfig {
            cdf_cutoff: 0.95,
            top_k_frequent: 5,
            rounds: 2,
        };
        let (expanded, _) = expand_query(&corpus, &q, &cfg).unwrap();
        for t in &q.terms {
            assert!(expanded.has_term(t), "seed terms are never dropped");
        }
        let seed_ids = retrieve(&corpus, &q);
        let expanded_ids = retrieve(&corpus, &expanded);
        assert!(expanded_ids.is_superset(&seed_ids));
        for e in &expanded.exclusions {
            assert!(
                !expanded.terms.iter().any(|t| t.contains_phrase(e)),
                "excluded phrase leaked into terms"
            );
        }
    }

    #[test]
    fn expansion_is_deterministic() {
        let corpus = expansion_corpus();
        let q = DomainQuery::keyword("RET", &["solar cell"], &["water"]).unwrap();
        let cfg = ExpansionConfig {
            cdf_cutoff: 0.95,
            top_k_frequent: 5,
            rounds: 2,
        };
        let (_, t1) = expand_query(&corpus, &q, &cfg).unwrap();
        let (_, t2) = expand_query(&corpus, &q, &cfg).unwrap();
        let j1 = serde_json::to_string(&t1).unwrap();
        let j2 = serde_json::to_string(&t2).unwrap();
        assert_eq!(j1, j2);
    }

    #[test]
    fn term_file_parsing() {
        let terms = parse_term_file("# comment\nsolar cells\n\nWind Turbines # trailing\nsolar cell\n");
        let joined: Vec<String> = terms.iter().map(|t| t.joined()).collect();
        assert_eq!(joined, vec!["solar cell", "wind turbine"]);
    }
}
