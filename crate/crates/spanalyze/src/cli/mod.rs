//! Command-line pipeline: staged commands with persisted artifacts, a
//! run manifest per invocation, and deterministic outputs.
//!
//! Grammar: `spanalyze <command> --config <path> [--window A:B]
//! [--domain NAME] [--net NAME] [--format graphml|dot|csv|json]
//! [--out DIR]`. `SPANALYZE_THREADS` caps internal parallelism. Exit
//! status 0 on success, 2 for a missing upstream artifact, 3 for a
//! config violation, 1 otherwise.

pub mod config;
pub mod manifest;

use std::collections::BTreeSet;
use std::io::BufReader;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::analysis::build_window_graphs;
use crate::corpus::{
    clean_corpus, ingest_citations, ingest_records, CleaningReport, Corpus, IngestReport,
    YearRange,
};
use crate::delineation::{expand_query, retrieve, QueryMode};
use crate::error::{Error, Result};
use crate::graph::io::{read_graphml, write_dot, write_graphml, Scores};
use crate::graph::metrics::betweenness_with_threads;
use crate::graph::CoauthorshipGraph;
use crate::indicators::{
    entropy_diversity, n_clusters_50, partition_intersections, variance_diversity,
};
use crate::report::{
    assemble_report, diversity_csv, funding_csv, network_table_csv, DomainResult, ReportInputs,
};

use config::RunConfig;
use manifest::OutputWriter;

#[derive(Parser)]
#[command(name = "spanalyze", version, about = "Coauthorship-network analysis pipeline")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct CommonArgs {
    /// Run configuration (TOML).
    #[arg(long)]
    config: PathBuf,
    /// Override the configured output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct WindowArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Restrict to one window, e.g. 2008:2013.
    #[arg(long)]
    window: Option<String>,
    /// Restrict to one domain.
    #[arg(long)]
    domain: Option<String>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    Graphml,
    Dot,
    Csv,
    Json,
}

#[derive(clap::Args)]
struct ExportArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Window to export, e.g. 2008:2013 (default: last window).
    #[arg(long)]
    window: Option<String>,
    /// Network to export: a domain name or "boundary".
    #[arg(long, default_value = "boundary")]
    net: String,
    #[arg(long, value_enum)]
    format: ExportFormat,
}

#[derive(Subcommand)]
enum Command {
    /// Ingest and clean the corpus; persist it as an artifact.
    Ingest(CommonArgs),
    /// Delineate domains (retrieval + query expansion).
    Delineate(CommonArgs),
    /// Build per-domain coauthorship graphs per window.
    Network(WindowArgs),
    /// Extract the boundary-spanning network per window.
    Boundary(WindowArgs),
    /// Diversity and impact indicators.
    Indicators(CommonArgs),
    /// Windowed descriptor tables.
    Windows(CommonArgs),
    /// Full report in one invocation.
    Report(CommonArgs),
    /// Re-serialize a persisted graph artifact.
    Export(ExportArgs),
}

/// Entry point shared by the binary and the integration tests. Takes
/// the full argv (program name first) and returns the process exit
/// status; errors print a single machine-parseable line to stderr.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints its own help/usage text
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("spanalyze: error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Ingest(args) => cmd_ingest(&args),
        Command::Delineate(args) => cmd_delineate(&args),
        Command::Network(args) => cmd_network(&args),
        Command::Boundary(args) => cmd_boundary(&args),
        Command::Indicators(args) => cmd_indicators(&args),
        Command::Windows(args) => cmd_windows(&args),
        Command::Report(args) => cmd_report(&args),
        Command::Export(args) => cmd_export(&args),
    }
}

fn thread_cap() -> usize {
    std::env::var("SPANALYZE_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .map(|v| v.clamp(1, 256))
        .unwrap_or(1)
}

fn load_config(args: &CommonArgs) -> Result<RunConfig> {
    let mut cfg = RunConfig::load(&args.config)?;
    if let Some(out) = &args.out {
        cfg.output_dir = out.clone();
    }
    Ok(cfg)
}

fn parse_window(arg: &str) -> Result<YearRange> {
    let (a, b) = arg
        .split_once(':')
        .ok_or_else(|| Error::Invalid(format!("window must be A:B, got {arg:?}")))?;
    let start: i32 = a
        .parse()
        .map_err(|_| Error::Invalid(format!("invalid window start {a:?}")))?;
    let end: i32 = b
        .parse()
        .map_err(|_| Error::Invalid(format!("invalid window end {b:?}")))?;
    Ok(YearRange::new(start, end))
}

fn writer(cfg: &RunConfig, command: &str) -> Result<OutputWriter> {
    OutputWriter::create(&cfg.output_dir, command, &cfg.config_path, &cfg.input_files)
}

// ------------------------------------------------------------- pipeline

fn ingest_inputs(cfg: &RunConfig) -> Result<(Corpus, IngestReport, CleaningReport)> {
    let file = std::fs::File::open(&cfg.corpus_path)
        .map_err(|e| Error::io(cfg.corpus_path.display().to_string(), e))?;
    let (mut corpus, mut report) = ingest_records(BufReader::new(file), cfg.study_period)?;
    if let Some(citations) = &cfg.citations_path {
        let file = std::fs::File::open(citations)
            .map_err(|e| Error::io(citations.display().to_string(), e))?;
        ingest_citations(&mut corpus, BufReader::new(file), &mut report)?;
    }
    let (cleaned, cleaning) = clean_corpus(&corpus, cfg.max_authors);
    Ok((cleaned, report, cleaning))
}

fn delineate_domains(cfg: &RunConfig, corpus: &Corpus) -> Result<Vec<DomainResult>> {
    let mut out = Vec::new();
    for query in &cfg.queries {
        let (query, trace) = match query.mode {
            QueryMode::Keyword if cfg.expansion_enabled => {
                let (expanded, trace) = expand_query(corpus, query, &cfg.expansion)?;
                (expanded, Some(trace))
            }
            _ => (query.clone(), None),
        };
        let pubs = retrieve(corpus, &query);
        out.push(DomainResult { query, pubs, trace });
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct IngestArtifact {
    ingest: IngestReport,
    cleaning: CleaningReport,
}

fn persist_corpus(out: &mut OutputWriter, corpus: &Corpus) -> Result<()> {
    let mut records = Vec::new();
    corpus.write_records(&mut records)?;
    out.write("artifacts/corpus.jsonl", &records)?;
    let mut links = Vec::new();
    corpus.write_links(&mut links)?;
    out.write("artifacts/citations.csv", &links)?;
    Ok(())
}

fn load_corpus_artifact(out: &OutputWriter, cfg: &RunConfig) -> Result<Corpus> {
    let records = out.read_artifact("artifacts/corpus.jsonl", "corpus")?;
    let links = out.read_artifact("artifacts/citations.csv", "corpus")?;
    let (mut corpus, mut report) =
        ingest_records(BufReader::new(records.as_slice()), cfg.study_period)?;
    ingest_citations(&mut corpus, links.as_slice(), &mut report)?;
    Ok(corpus)
}

fn load_domains_artifact(out: &OutputWriter) -> Result<Vec<DomainResult>> {
    let bytes = out.read_artifact("artifacts/domains.json", "domains")?;
    serde_json::from_slice(&bytes)
        .map_err(|e| Error::Invalid(format!("corrupt domains artifact: {e}")))
}

fn to_json(value: &impl Serialize) -> Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value)
        .map_err(|e| Error::Invalid(format!("serialize: {e}")))?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn graph_artifact_name(net: &str, window: YearRange) -> String {
    format!(
        "graphs/{}_{}_{}.graphml",
        net.to_lowercase(),
        window.start,
        window.end
    )
}

fn graphml_bytes(graph: &CoauthorshipGraph, scores: &Scores) -> Result<Vec<u8>> {
    let mut bytes = Vec::new();
    write_graphml(graph, scores, &mut bytes)?;
    Ok(bytes)
}

fn dot_bytes(graph: &CoauthorshipGraph, scores: &Scores) -> Result<Vec<u8>> {
    let mut bytes = Vec::new();
    write_dot(graph, scores, &mut bytes)?;
    Ok(bytes)
}

// -------------------------------------------------------------- commands

fn cmd_ingest(args: &CommonArgs) -> Result<()> {
    let cfg = load_config(args)?;
    let mut out = writer(&cfg, "ingest")?;
    let (corpus, ingest, cleaning) = ingest_inputs(&cfg)?;
    persist_corpus(&mut out, &corpus)?;
    out.write(
        "artifacts/ingest.json",
        &to_json(&IngestArtifact { ingest, cleaning })?,
    )?;
    out.finish()
}

fn cmd_delineate(args: &CommonArgs) -> Result<()> {
    let cfg = load_config(args)?;
    let mut out = writer(&cfg, "delineate")?;
    let corpus = load_corpus_artifact(&out, &cfg)?;
    let domains = delineate_domains(&cfg, &corpus)?;
    out.write("artifacts/domains.json", &to_json(&domains)?)?;
    for d in &domains {
        if let Some(trace) = &d.trace {
            out.write(
                &format!("traces/expansion_{}.json", d.query.name.to_lowercase()),
                &to_json(trace)?,
            )?;
        }
    }
    out.finish()
}

fn series_params<'a>(cfg: &'a RunConfig) -> crate::analysis::SeriesParams<'a> {
    crate::analysis::SeriesParams {
        min_copubs: cfg.min_copubs,
        filters: cfg.filters,
        geo_ctx: Some(crate::graph::GeoContext {
            registry: &cfg.registry,
            geo: &cfg.geo,
        }),
        keying: &cfg.keying,
    }
}

fn selected_windows(cfg: &RunConfig, filter: &Option<String>) -> Result<Vec<YearRange>> {
    match filter {
        Some(arg) => Ok(vec![parse_window(arg)?]),
        None => Ok(cfg.windows.windows()),
    }
}

fn domain_sets(domains: &[DomainResult]) -> Vec<(String, BTreeSet<String>)> {
    domains
        .iter()
        .map(|d| (d.query.name.clone(), d.pubs.clone()))
        .collect()
}

fn cmd_network(args: &WindowArgs) -> Result<()> {
    let cfg = load_config(&args.common)?;
    let mut out = writer(&cfg, "network")?;
    let corpus = load_corpus_artifact(&out, &cfg)?;
    let domains = load_domains_artifact(&out)?;
    let sets = domain_sets(&domains);
    let threads = thread_cap();
    for window in selected_windows(&cfg, &args.window)? {
        let (built, _) = build_window_graphs(&corpus, &sets, window, &series_params(&cfg))?;
        for (name, graph) in &built {
            if let Some(only) = &args.domain {
                if only != name {
                    continue;
                }
            }
            let scores = betweenness_with_threads(graph, threads);
            out.write(&graph_artifact_name(name, window), &graphml_bytes(graph, &scores)?)?;
        }
    }
    out.finish()
}

fn cmd_boundary(args: &WindowArgs) -> Result<()> {
    let cfg = load_config(&args.common)?;
    let mut out = writer(&cfg, "boundary")?;
    let domain_names: Vec<String> = cfg.queries.iter().map(|q| q.name.clone()).collect();
    let threads = thread_cap();
    for window in selected_windows(&cfg, &args.window)? {
        let mut graphs = Vec::new();
        for name in &domain_names {
            let rel = graph_artifact_name(name, window);
            let bytes = out.read_artifact(&rel, "networks")?;
            let (graph, _) = read_graphml(BufReader::new(bytes.as_slice()))?;
            graphs.push(graph);
        }
        let refs: Vec<&CoauthorshipGraph> = graphs.iter().collect();
        let boundary = crate::graph::ops::boundary_spanning(&refs)?;
        let scores = betweenness_with_threads(&boundary, threads);
        out.write(
            &graph_artifact_name("boundary", window),
            &graphml_bytes(&boundary, &scores)?,
        )?;
    }
    out.finish()
}

#[derive(Serialize)]
struct IndicatorRow {
    window: YearRange,
    partition: Option<crate::indicators::IntersectionPartition>,
    v: Option<f64>,
    h: Option<f64>,
    nc50: Option<usize>,
}

#[derive(Serialize)]
struct IndicatorsArtifact {
    windows: Vec<IndicatorRow>,
    impact: std::collections::BTreeMap<String, Vec<crate::report::ImpactRow>>,
}

fn cmd_indicators(args: &CommonArgs) -> Result<()> {
    let cfg = load_config(args)?;
    let mut out = writer(&cfg, "indicators")?;
    let corpus = load_corpus_artifact(&out, &cfg)?;
    let domains = load_domains_artifact(&out)?;
    let sets = domain_sets(&domains);
    let order: Vec<String> = sets.iter().map(|(n, _)| n.clone()).collect();
    let mut rows = Vec::new();
    for window in cfg.windows.windows() {
        let (_, boundary) = build_window_graphs(&corpus, &sets, window, &series_params(&cfg))?;
        let row = if boundary.is_empty() {
            IndicatorRow {
                window,
                partition: None,
                v: None,
                h: None,
                nc50: None,
            }
        } else {
            let partition = partition_intersections(&boundary, &order)?;
            let summary = crate::graph::metrics::connected_components(&boundary);
            IndicatorRow {
                window,
                v: Some(variance_diversity(&partition)),
                h: Some(entropy_diversity(&partition)),
                nc50: Some(n_clusters_50(&summary)?),
                partition: Some(partition),
            }
        };
        rows.push(row);
    }
    let collection: BTreeSet<String> = corpus.ids().cloned().collect();
    let impact = sets
        .iter()
        .map(|(name, pubs)| {
            let series = crate::report::impact_rows(
                pubs,
                &collection,
                &corpus,
                &cfg.registry,
                &cfg.geo,
                cfg.reference_weighting,
            );
            (name.clone(), series)
        })
        .collect();
    out.write(
        "indicators.json",
        &to_json(&IndicatorsArtifact {
            windows: rows,
            impact,
        })?,
    )?;
    out.finish()
}

fn cmd_windows(args: &CommonArgs) -> Result<()> {
    let cfg = load_config(args)?;
    let mut out = writer(&cfg, "windows")?;
    let corpus = load_corpus_artifact(&out, &cfg)?;
    let domains = load_domains_artifact(&out)?;
    let sets = domain_sets(&domains);
    let series =
        crate::analysis::windowed_series(&corpus, &sets, &cfg.windows, &series_params(&cfg))?;
    for (name, _) in &sets {
        out.write(
            &format!("tables/network_{}.csv", name.to_lowercase()),
            network_table_csv(&series, name).as_bytes(),
        )?;
    }
    out.write(
        "tables/network_boundary.csv",
        network_table_csv(&series, "boundary").as_bytes(),
    )?;
    out.write("windows.json", &to_json(&series)?)?;
    out.finish()
}

fn cmd_report(args: &CommonArgs) -> Result<()> {
    let cfg = load_config(args)?;
    let mut out = writer(&cfg, "report")?;
    let (corpus, ingest, cleaning) = ingest_inputs(&cfg)?;
    let domains = delineate_domains(&cfg, &corpus)?;

    let (funding_anchor, funding_horizon, impute) = cfg
        .funding
        .unwrap_or((cfg.study_period.start, cfg.study_period.end, false));
    let inputs = ReportInputs {
        corpus: &corpus,
        ingest,
        cleaning,
        domains: &domains,
        registry: &cfg.registry,
        geo: &cfg.geo,
        fieldmap: &cfg.fieldmap,
        keying: &cfg.keying,
        windows: cfg.windows,
        min_copubs: cfg.min_copubs,
        filters: cfg.filters,
        min_contributions: cfg.min_contribs,
        gerd_national: cfg.funding.is_some().then_some(cfg.gerd_national.as_ref()).flatten(),
        gerd_regions: cfg.gerd_regions.as_ref(),
        funding_anchor,
        funding_horizon,
        impute_gerd: impute,
        reference_weighting: cfg.reference_weighting,
    };
    let report = assemble_report(&inputs)?;

    out.write("report.json", &to_json(&report)?)?;
    for d in &domains {
        out.write(
            &format!("tables/network_{}.csv", d.query.name.to_lowercase()),
            network_table_csv(&report.windows, &d.query.name).as_bytes(),
        )?;
        if let Some(trace) = &d.trace {
            out.write(
                &format!("traces/expansion_{}.json", d.query.name.to_lowercase()),
                &to_json(trace)?,
            )?;
        }
    }
    out.write(
        "tables/network_boundary.csv",
        network_table_csv(&report.windows, "boundary").as_bytes(),
    )?;
    if let Some(funding) = &report.funding {
        out.write("figures/funding_vs_clusters.csv", funding_csv(funding).as_bytes())?;
    }
    out.write(
        "figures/diversity_vs_clusters.csv",
        diversity_csv(&report.windows).as_bytes(),
    )?;

    // Graph exports of the final window's boundary network.
    if let Some(last) = cfg.windows.windows().last() {
        let sets = domain_sets(&domains);
        let (_, boundary) = build_window_graphs(&corpus, &sets, *last, &series_params(&cfg))?;
        if !boundary.is_empty() {
            let scores = betweenness_with_threads(&boundary, thread_cap());
            out.write(
                &graph_artifact_name("boundary", *last),
                &graphml_bytes(&boundary, &scores)?,
            )?;
            out.write(
                &format!("graphs/boundary_{}_{}.dot", last.start, last.end),
                &dot_bytes(&boundary, &scores)?,
            )?;
        }
    }
    out.finish()
}

fn cmd_export(args: &ExportArgs) -> Result<()> {
    let cfg = load_config(&args.common)?;
    let mut out = writer(&cfg, "export")?;
    let window = match &args.window {
        Some(arg) => parse_window(arg)?,
        None => *cfg
            .windows
            .windows()
            .last()
            .ok_or_else(|| Error::Invalid("no windows configured".into()))?,
    };
    let rel = graph_artifact_name(&args.net, window);
    let artifact = if args.net == "boundary" { "boundary" } else { "networks" };
    let bytes = out.read_artifact(&rel, artifact)?;
    let (graph, scores) = read_graphml(BufReader::new(bytes.as_slice()))?;
    let base = format!("export/{}_{}_{}", args.net.to_lowercase(), window.start, window.end);
    match args.format {
        ExportFormat::Graphml => {
            out.write(&format!("{base}.graphml"), &graphml_bytes(&graph, &scores)?)?
        }
        ExportFormat::Dot => out.write(&format!("{base}.dot"), &dot_bytes(&graph, &scores)?)?,
        ExportFormat::Csv => {
            let mut csv = String::from("source,target,weight\n");
            for (a, b, w) in graph.edges() {
                csv.push_str(&format!("\"{}\",\"{}\",{}\n", a.as_str(), b.as_str(), w));
            }
            out.write(&format!("{base}.csv"), csv.as_bytes())?;
        }
        ExportFormat::Json => {
            #[derive(Serialize)]
            struct JsonGraph {
                window: YearRange,
                min_copubs: u32,
                vertices: Vec<JsonVertex>,
                edges: Vec<(String, String, u32)>,
            }
            #[derive(Serialize)]
            struct JsonVertex {
                key: String,
                domains: Vec<String>,
                betweenness: f64,
            }
            let value = JsonGraph {
                window: graph.window(),
                min_copubs: graph.min_copubs(),
                vertices: graph
                    .vertices()
                    .map(|(k, info)| JsonVertex {
                        key: k.to_string(),
                        domains: info.domains.iter().cloned().collect(),
                        betweenness: scores.get(k).copied().unwrap_or(0.0),
                    })
                    .collect(),
                edges: graph
                    .edges()
                    .map(|(a, b, w)| (a.to_string(), b.to_string(), w))
                    .collect(),
            };
            out.write(&format!("{base}.json"), &to_json(&value)?)?;
        }
    }
    out.finish()
}

