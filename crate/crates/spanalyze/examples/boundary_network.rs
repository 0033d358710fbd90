//! Extract the boundary-spanning network of authors active in two or
//! more domains and print its intersection partition and diversity.
//!
//!     cargo run -p spanalyze --example boundary_network

use std::collections::BTreeSet;
use std::io::BufReader;
use std::path::Path;

use spanalyze::analysis::{build_window_graphs, SeriesParams};
use spanalyze::cli::config::RunConfig;
use spanalyze::corpus::{clean_corpus, ingest};
use spanalyze::delineation::retrieve;
use spanalyze::graph::metrics::connected_components;
use spanalyze::indicators::{
    entropy_diversity, n_clusters_50, partition_intersections, variance_diversity,
};

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
    let order: Vec<String> = sets.iter().map(|(n, _)| n.clone()).collect();
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
    println!("boundary-spanning network, window {window}");
    println!("  authors  {}", boundary.vertex_count());
    println!("  linkages {}", boundary.edge_count());

    let summary = connected_components(&boundary);
    println!("  clusters {} with sizes {:?}", summary.count, summary.sizes);
    println!("  n_c,50%  {}", n_clusters_50(&summary)?);

    let partition = partition_intersections(&boundary, &order)?;
    for (category, (count, share)) in partition
        .categories
        .iter()
        .zip(partition.counts.iter().zip(&partition.fractions))
    {
        println!("  {category:<14} {count:>3} authors ({:.0}%)", share * 100.0);
    }
    println!("  V = {:.2}", variance_diversity(&partition));
    println!("  H = {:.2}", entropy_diversity(&partition));
    Ok(())
}
