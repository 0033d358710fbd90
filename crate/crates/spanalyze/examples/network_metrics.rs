//! Build one domain's coauthorship graph for the final window and print
//! its descriptors and the most central authors.
//!
//!     cargo run -p spanalyze --example network_metrics

use std::io::BufReader;
use std::path::Path;

use spanalyze::cli::config::RunConfig;
use spanalyze::corpus::{clean_corpus, ingest};
use spanalyze::delineation::retrieve;
use spanalyze::graph::metrics::{avg_collaborators, betweenness, connected_components, density};
use spanalyze::graph::{build_coauthorship, GeoContext};

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
    let window = *config.windows.windows().last().unwrap();
    let graph = build_coauthorship(
        &pubs,
        &corpus,
        window,
        config.min_copubs,
        config.filters,
        Some(GeoContext {
            registry: &config.registry,
            geo: &config.geo,
        }),
        &config.keying,
    )?;

    println!("{} network, window {window}", query.name);
    println!("  authors   {}", graph.vertex_count());
    println!("  linkages  {}", graph.edge_count());
    println!("  density   {:.3}", density(&graph)?);
    println!("  mean collaborators {:.1}", avg_collaborators(&graph));
    let summary = connected_components(&graph);
    println!("  clusters  {} (max {})", summary.count, summary.max_size);

    let scores = betweenness(&graph);
    let mut ranked: Vec<_> = scores.iter().collect();
    ranked.sort_by(|a, b| b.1.partial_cmp(a.1).unwrap().then_with(|| a.0.cmp(b.0)));
    println!("  most central authors:");
    for (key, score) in ranked.iter().take(5) {
        println!("    {key:<22} betweenness {score:.1}");
    }
    Ok(())
}
