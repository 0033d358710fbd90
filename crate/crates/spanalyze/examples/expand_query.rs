//! Run query expansion on the purpose-built expansion corpus and print
//! the full per-round trace: the candidate ranking with the cumulative
//! cutoff, what was accepted and why, and what was rejected.
//!
//!     cargo run -p spanalyze --example expand_query

use std::io::BufReader;
use std::path::Path;

use spanalyze::corpus::{ingest_records, normalize_text, YearRange};
use spanalyze::delineation::{expand_query, parse_term_file, DomainQuery, ExpansionConfig, QueryMode};

fn main() -> spanalyze::Result<()> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(root.join("fixtures/expansion_corpus.jsonl"))
        .map_err(|e| spanalyze::Error::io("expansion_corpus.jsonl", e))?;
    let (corpus, _) =
        ingest_records(BufReader::new(text.as_bytes()), YearRange::new(2000, 2015))?;
    let exclusions = parse_term_file(
        &std::fs::read_to_string(root.join("../../terms/exclusions.txt"))
            .map_err(|e| spanalyze::Error::io("exclusions.txt", e))?,
    );

    let query = DomainQuery {
        name: "demo".into(),
        mode: QueryMode::Keyword,
        terms: vec![normalize_text("solar cell")],
        exclusions,
        subjects: vec![],
    };
    let config = ExpansionConfig {
        cdf_cutoff: 0.95,
        top_k_frequent: 5,
        rounds: 2,
    };
    let (expanded, trace) = expand_query(&corpus, &query, &config)?;

    for round in &trace.rounds {
        println!("round {}: core {} publications, count threshold {}",
            round.round, round.core_size, round.threshold_count);
        for (keyword, count) in &round.candidates {
            println!("  candidate {:<18} count {count}", keyword.joined());
        }
        for a in &round.accepted {
            println!("  + accepted {:<17} (co-occurs with term {:?})",
                a.keyword.joined(), a.justified_by.joined());
        }
        for r in &round.rejected {
            println!("  - rejected {:<17} ({:?})", r.keyword.joined(), r.reason);
        }
    }
    println!(
        "final term set: {}",
        expanded
            .terms
            .iter()
            .map(|t| t.joined())
            .collect::<Vec<_>>()
            .join(", ")
    );
    Ok(())
}
