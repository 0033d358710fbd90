//! Citation impact and self-citation indicators for one domain:
//! two-year citation impact, the category-weighted relative impact of
//! internationally coauthored work, and the intra-domain self-citation
//! rate.
//!
//!     cargo run -p spanalyze --example impact_indicators

use std::collections::BTreeSet;
use std::io::BufReader;
use std::path::Path;

use spanalyze::cli::config::RunConfig;
use spanalyze::corpus::{clean_corpus, ingest};
use spanalyze::delineation::retrieve;
use spanalyze::indicators::{
    citation_impact_raw, reference_impact, self_citation_rate, ReferenceWeighting,
};
use spanalyze::taxonomy::classify_collaboration;

fn main() -> spanalyze::Result<()> {
    let config =
        RunConfig::load(&Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/run.toml"))?;
    let records = std::fs::File::open(&config.corpus_path).unwrap();
    let citations = std::fs::File::open(config.citations_path.as_ref().unwrap()).unwrap();
    let (corpus, _) = ingest(
        BufReader::new(records),
        BufReader::new(citations),
        config.study_period,
    )?;
    let (corpus, _) = clean_corpus(&corpus, config.max_authors);

    let query = &config.queries[0];
    let pubs = retrieve(&corpus, query);
    let international: BTreeSet<String> = pubs
        .iter()
        .filter(|id| {
            corpus
                .get(id)
                .and_then(|r| classify_collaboration(r, &config.registry, &config.geo).ok())
                .is_some_and(|p| p.international)
        })
        .cloned()
        .collect();
    println!(
        "{}: {} publications, {} internationally coauthored",
        query.name,
        pubs.len(),
        international.len()
    );

    println!("year  CI     CI(intl)  CI_rel(intl)  self-citation");
    for year in config.study_period.start + 2..=config.study_period.end {
        let Ok(ci) = citation_impact_raw(&pubs, &corpus, year) else {
            continue;
        };
        let intl = citation_impact_raw(&international, &corpus, year).ok();
        let reference =
            reference_impact(&pubs, &corpus, year, ReferenceWeighting::CategoryWeighted).ok();
        let ci_rel = match (intl, reference) {
            (Some(ci_intl), Some(r)) if r > 0.0 => Some(ci_intl / r),
            _ => None,
        };
        let selfcite = self_citation_rate(&pubs, &corpus, year).ok();
        println!(
            "{year}  {ci:<5.2}  {:<8}  {:<12}  {}",
            intl.map(|v| format!("{v:.2}")).unwrap_or_else(|| "-".into()),
            ci_rel.map(|v| format!("{v:.2}")).unwrap_or_else(|| "-".into()),
            selfcite.map(|v| format!("{v:.2}")).unwrap_or_else(|| "-".into()),
        );
    }
    Ok(())
}
