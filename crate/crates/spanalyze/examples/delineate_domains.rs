//! Delineate the three fixture domains (two keyword queries and one
//! subject-category query) and print their sizes and overlaps.
//!
//!     cargo run -p spanalyze --example delineate_domains

use std::collections::BTreeSet;
use std::io::BufReader;
use std::path::Path;

use spanalyze::cli::config::RunConfig;
use spanalyze::corpus::{clean_corpus, ingest};
use spanalyze::delineation::retrieve;

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

    let mut sets: Vec<(String, BTreeSet<String>)> = Vec::new();
    for query in &config.queries {
        let ids = retrieve(&corpus, query);
        println!(
            "{:<5} {:?} mode, {} publications",
            query.name,
            query.mode,
            ids.len()
        );
        if !query.terms.is_empty() {
            println!("      first terms: {}", query.terms[..3.min(query.terms.len())]
                .iter()
                .map(|t| t.joined())
                .collect::<Vec<_>>()
                .join(", "));
        }
        sets.push((query.name.clone(), ids));
    }

    for i in 0..sets.len() {
        for j in (i + 1)..sets.len() {
            let overlap = sets[i].1.intersection(&sets[j].1).count();
            println!("{} ∩ {} = {overlap} publications", sets[i].0, sets[j].0);
        }
    }
    Ok(())
}
