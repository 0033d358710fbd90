//! Relate network growth to research expenditure: cumulative GERD
//! against boundary cluster counts (Pearson), and the linear fit of the
//! entropy indicator on N_c,50% across sliding windows.
//!
//!     cargo run -p spanalyze --example funding_regression

use std::collections::BTreeSet;
use std::io::BufReader;
use std::path::Path;

use spanalyze::analysis::{
    build_window_graphs, correlate, cumulative_gerd, fit_linear, SeriesParams, WindowSpec,
};
use spanalyze::cli::config::RunConfig;
use spanalyze::corpus::{clean_corpus, ingest};
use spanalyze::delineation::retrieve;
use spanalyze::graph::metrics::connected_components;
use spanalyze::indicators::{entropy_diversity, n_clusters_50, partition_intersections};

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

    // cumulative windows: expenditure vs number of boundary clusters
    let (anchor, horizon, impute) = config.funding.unwrap();
    let spec = WindowSpec::cumulative(anchor, horizon);
    let windows = spec.windows();
    let gerd = cumulative_gerd(config.gerd_national.as_ref().unwrap(), &windows, impute)?;
    let mut clusters = Vec::new();
    for window in &windows {
        let (_, boundary) = build_window_graphs(&corpus, &sets, *window, &params)?;
        clusters.push(connected_components(&boundary).count);
    }
    println!("window      cumulative GERD   boundary clusters");
    for (c, n) in gerd.iter().zip(&clusters) {
        println!("{}   {:>12.0}       {n:>5}", c.window, c.value);
    }
    let xs: Vec<f64> = clusters.iter().map(|n| *n as f64).collect();
    let ys: Vec<f64> = gerd.iter().map(|c| c.value).collect();
    println!("pearson r = {:.3}", correlate(&xs, &ys)?);

    // sliding windows: H regressed on N_c,50%
    let mut nc50 = Vec::new();
    let mut h = Vec::new();
    for window in config.windows.windows() {
        let (_, boundary) = build_window_graphs(&corpus, &sets, window, &params)?;
        let summary = connected_components(&boundary);
        nc50.push(n_clusters_50(&summary)? as f64);
        h.push(entropy_diversity(&partition_intersections(&boundary, &order)?));
    }
    let fit = fit_linear(&nc50, &h)?;
    println!(
        "H on N_c,50%: slope {:.4}, intercept {:.4}, r² {:.3} over {} windows",
        fit.slope, fit.intercept, fit.r_squared, fit.n_points
    );
    Ok(())
}
