//! Compute the sliding-window descriptor series for every domain and
//! the boundary network, and print it as the CSV tables the pipeline
//! emits.
//!
//!     cargo run -p spanalyze --example windowed_series

use std::collections::BTreeSet;
use std::io::BufReader;
use std::path::Path;

use spanalyze::analysis::{windowed_series, SeriesParams};
use spanalyze::cli::config::RunConfig;
use spanalyze::corpus::{clean_corpus, ingest};
use spanalyze::delineation::retrieve;
use spanalyze::report::network_table_csv;

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

    let sets: Vec<(String, BTreeSet<String>)> = config
        .queries
        .iter()
        .map(|q| (q.name.clone(), retrieve(&corpus, q)))
        .collect();
    let params = SeriesParams {
        min_copubs: config.min_copubs,
        filters: config.filters,
        geo_ctx: Some(spanalyze::graph::GeoContext {
            registry: &config.registry,
            geo: &config.geo,
        }),
        keying: &config.keying,
    };
    let series = windowed_series(&corpus, &sets, &config.windows, &params)?;

    for (name, _) in &sets {
        println!("--- {name}");
        print!("{}", network_table_csv(&series, name));
    }
    println!("--- boundary");
    print!("{}", network_table_csv(&series, "boundary"));
    Ok(())
}
