//! Serialize the boundary network to GraphML and DOT and read both back,
//! demonstrating the round-trip contract of the exporters.
//!
//!     cargo run -p spanalyze --example export_graphs

use std::collections::BTreeSet;
use std::io::BufReader;
use std::path::Path;

use spanalyze::analysis::{build_window_graphs, SeriesParams};
use spanalyze::cli::config::RunConfig;
use spanalyze::corpus::{clean_corpus, ingest};
use spanalyze::delineation::retrieve;
use spanalyze::graph::io::{read_dot, read_graphml, write_dot, write_graphml};
use spanalyze::graph::metrics::betweenness;

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
    let window = *config.windows.windows().last().unwrap();
    let (_, boundary) = build_window_graphs(&corpus, &sets, window, &params)?;
    let scores = betweenness(&boundary);

    let mut graphml = Vec::new();
    write_graphml(&boundary, &scores, &mut graphml)?;
    let mut dot = Vec::new();
    write_dot(&boundary, &scores, &mut dot)?;
    println!("graphml: {} bytes, dot: {} bytes", graphml.len(), dot.len());

    let (from_graphml, _) = read_graphml(BufReader::new(graphml.as_slice()))?;
    let (from_dot, _) = read_dot(BufReader::new(dot.as_slice()))?;
    assert_eq!(
        from_graphml.edges().collect::<Vec<_>>(),
        boundary.edges().collect::<Vec<_>>()
    );
    assert_eq!(
        from_dot.edges().collect::<Vec<_>>(),
        boundary.edges().collect::<Vec<_>>()
    );
    println!(
        "round trip ok: {} vertices, {} weighted edges in both formats",
        boundary.vertex_count(),
        boundary.edge_count()
    );

    let preview: Vec<u8> = dot.iter().take(400).copied().collect();
    println!("--- dot preview\n{}", String::from_utf8_lossy(&preview));
    Ok(())
}
