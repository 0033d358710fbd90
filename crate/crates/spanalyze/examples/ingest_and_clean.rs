//! Ingest the fixture corpus, apply the author-count cleaning rule, and
//! print the ingest and cleaning reports.
//!
//!     cargo run -p spanalyze --example ingest_and_clean

use std::io::BufReader;
use std::path::Path;

use spanalyze::corpus::{clean_corpus, ingest, YearRange};

fn main() -> spanalyze::Result<()> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let records = std::fs::File::open(fixtures.join("corpus_small.jsonl"))
        .map_err(|e| spanalyze::Error::io("corpus_small.jsonl", e))?;
    let citations = std::fs::File::open(fixtures.join("citations_small.csv"))
        .map_err(|e| spanalyze::Error::io("citations_small.csv", e))?;

    let period = YearRange::new(2000, 2015);
    let (corpus, report) = ingest(BufReader::new(records), BufReader::new(citations), period)?;
    println!("study period        {period}");
    println!("records ingested    {}", report.records_ingested);
    println!("out of period       {}", report.dropped_out_of_period);
    println!("record errors       {}", report.record_errors.len());
    println!("links kept          {}", report.links_kept);
    println!("links out of period {}", report.links_citing_out_of_period);

    let (cleaned, cleaning) = clean_corpus(&corpus, 100);
    println!(
        "cleaning            {} -> {} records ({} removed for >100 authors)",
        cleaning.records_before,
        cleaning.records_after,
        cleaning.removed_ids.len()
    );
    for id in &cleaning.removed_ids {
        let n = corpus.get(id).map(|r| r.authors.len()).unwrap_or(0);
        println!("  removed {id} ({n} authors)");
    }

    let cited = cleaned.records().filter(|r| cleaned.is_cited(r)).count();
    println!(
        "promptly cited      {cited} of {} publications",
        cleaned.len()
    );
    Ok(())
}
