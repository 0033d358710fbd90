//! Integration tests pinning the library against the fixture manifest,
//! whose values were recomputed independently from the shipped files.

use std::collections::{BTreeMap, BTreeSet};
use std::io::BufReader;
use std::path::{Path, PathBuf};

use serde_json::Value;

use spanalyze::analysis::{build_window_graphs, RdiSeries, SeriesParams, WindowSpec};
use spanalyze::cli::config::RunConfig;
use spanalyze::corpus::{clean_corpus, ingest, Corpus, IngestReport, YearRange};
use spanalyze::delineation::{expand_query, retrieve, ExpansionConfig, RejectionReason};
use spanalyze::graph::metrics::{betweenness, connected_components};
use spanalyze::graph::AuthorKey;
use spanalyze::indicators::{
    citation_impact_raw, entropy_diversity, n_clusters_50, partition_intersections,
    reference_impact, self_citation_rate, variance_diversity, ReferenceWeighting,
};
use spanalyze::report::{home_region_counts, DomainResult};
use spanalyze::taxonomy::{regional_intensity, IntensityClass};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn manifest() -> Value {
    let bytes = std::fs::read(fixtures().join("manifest.json")).expect("manifest");
    serde_json::from_slice(&bytes).expect("manifest json")
}

struct Fixture {
    config: RunConfig,
    corpus: Corpus,
    ingest_report: IngestReport,
    cleaned: Corpus,
    removed_ids: Vec<String>,
    domains: Vec<DomainResult>,
}

fn load_fixture() -> Fixture {
    let config = RunConfig::load(&fixtures().join("run.toml")).expect("config");
    let records = std::fs::File::open(&config.corpus_path).expect("corpus file");
    let citations =
        std::fs::File::open(config.citations_path.as_ref().expect("citations path"))
            .expect("citations file");
    let (corpus, ingest_report) = ingest(
        BufReader::new(records),
        BufReader::new(citations),
        config.study_period,
    )
    .expect("ingest");
    let (cleaned, cleaning) = clean_corpus(&corpus, config.max_authors);
    let mut domains = Vec::new();
    for query in &config.queries {
        let (query, trace) = if query.mode == spanalyze::delineation::QueryMode::Keyword {
            let (q, t) = expand_query(&cleaned, query, &config.expansion).expect("expand");
            (q, Some(t))
        } else {
            (query.clone(), None)
        };
        let pubs = retrieve(&cleaned, &query);
        domains.push(DomainResult { query, pubs, trace });
    }
    Fixture {
        config,
        corpus,
        ingest_report,
        cleaned,
        removed_ids: cleaning.removed_ids,
        domains,
    }
}

fn series_params<'a>(f: &'a Fixture) -> SeriesParams<'a> {
    SeriesParams {
        min_copubs: f.config.min_copubs,
        filters: f.config.filters,
        geo_ctx: Some(spanalyze::graph::GeoContext {
            registry: &f.config.registry,
            geo: &f.config.geo,
        }),
        keying: &f.config.keying,
    }
}

fn domain_sets(f: &Fixture) -> Vec<(String, BTreeSet<String>)> {
    f.domains
        .iter()
        .map(|d| (d.query.name.clone(), d.pubs.clone()))
        .collect()
}

fn str_list(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn ingest_counts_match_manifest() {
    let f = load_fixture();
    let m = manifest();
    assert_eq!(f.corpus.len() as u64, m["ingest"]["records"].as_u64().unwrap());
    assert!(f.ingest_report.record_errors.is_empty());
    assert_eq!(
        f.ingest_report.links_kept as u64,
        m["ingest"]["links_kept"].as_u64().unwrap()
    );
    assert_eq!(
        f.cleaned.len() as u64,
        m["ingest"]["cleaned_records"].as_u64().unwrap()
    );
    assert_eq!(
        f.cleaned.links().len() as u64,
        m["ingest"]["cleaned_links"].as_u64().unwrap()
    );
    assert_eq!(f.removed_ids, str_list(&m["ingest"]["oversized_ids"]));
    assert_eq!(f.removed_ids.len(), 3, "manifest marks exactly 3 oversized records");
}

#[test]
fn ingest_is_order_independent_on_fixture() {
    let f = load_fixture();
    let text = std::fs::read_to_string(f.config.corpus_path.clone()).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    lines.reverse();
    let reversed = lines.join("\n");
    let citations = std::fs::read(f.config.citations_path.as_ref().unwrap()).unwrap();
    let (corpus2, _) = ingest(
        BufReader::new(reversed.as_bytes()),
        citations.as_slice(),
        f.config.study_period,
    )
    .unwrap();
    let mut a = Vec::new();
    let mut b = Vec::new();
    f.corpus.write_records(&mut a).unwrap();
    corpus2.write_records(&mut b).unwrap();
    assert_eq!(a, b);
    assert_eq!(f.corpus.links(), corpus2.links());
}

#[test]
fn retrieval_matches_manifest_id_sets() {
    let f = load_fixture();
    let m = manifest();
    for d in &f.domains {
        let name = &d.query.name;
        let expected: BTreeSet<String> =
            str_list(&m["retrieval"][name]["ids"]).into_iter().collect();
        assert_eq!(d.pubs, expected, "{name} id set");
    }
    let ret = f.domains.iter().find(|d| d.query.name == "RET").unwrap();
    assert_eq!(ret.pubs.len(), 41);
}

#[test]
fn window_descriptors_match_manifest() {
    let f = load_fixture();
    let m = manifest();
    let sets = domain_sets(&f);
    let order: Vec<String> = sets.iter().map(|(n, _)| n.clone()).collect();
    for window in f.config.windows.windows() {
        let label = format!("{}-{}", window.start, window.end);
        let (built, boundary) =
            build_window_graphs(&f.cleaned, &sets, window, &series_params(&f)).unwrap();
        for (name, graph) in &built {
            let e = &m["windows"][&label][name];
            assert_eq!(graph.vertex_count() as u64, e["n"].as_u64().unwrap(), "{label} {name} n");
            assert_eq!(graph.edge_count() as u64, e["m"].as_u64().unwrap(), "{label} {name} m");
            let summary = connected_components(graph);
            assert_eq!(summary.count as u64, e["clusters"].as_u64().unwrap());
            assert_eq!(summary.max_size as u64, e["max_cluster"].as_u64().unwrap());
            let density = spanalyze::graph::metrics::density(graph).unwrap();
            assert!((density - e["density"].as_f64().unwrap()).abs() < 1e-12);
        }
        let b = &m["windows"][&label]["boundary"];
        assert_eq!(boundary.vertex_count() as u64, b["n"].as_u64().unwrap(), "{label} boundary n");
        assert_eq!(boundary.edge_count() as u64, b["m"].as_u64().unwrap(), "{label} boundary m");
        let summary = connected_components(&boundary);
        let sizes: Vec<u64> = summary.sizes.iter().map(|s| *s as u64).collect();
        let expected_sizes: Vec<u64> = b["cluster_sizes"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_u64().unwrap())
            .collect();
        assert_eq!(sizes, expected_sizes);
        assert_eq!(
            n_clusters_50(&summary).unwrap() as u64,
            b["nc50"].as_u64().unwrap()
        );
        let partition = partition_intersections(&boundary, &order).unwrap();
        let counts: Vec<u64> = b["partition_counts"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_u64().unwrap())
            .collect();
        assert_eq!(partition.counts, counts, "{label} partition");
        assert!((variance_diversity(&partition) - b["v"].as_f64().unwrap()).abs() < 1e-12);
        assert!((entropy_diversity(&partition) - b["h"].as_f64().unwrap()).abs() < 1e-12);
    }
}

#[test]
fn windowed_series_rows_satisfy_internal_identities() {
    let f = load_fixture();
    let sets = domain_sets(&f);
    let series = spanalyze::analysis::windowed_series(
        &f.cleaned,
        &sets,
        &f.config.windows,
        &series_params(&f),
    )
    .unwrap();
    for row in &series.rows {
        for d in row.domains.iter().chain(std::iter::once(&row.boundary)) {
            let n = d.authors as f64;
            let m = d.linkages as f64;
            if d.authors >= 2 {
                assert!((d.density - 2.0 * m / (n * (n - 1.0))).abs() < 1e-12);
            } else {
                assert_eq!(d.density, 0.0);
            }
            if d.authors > 0 {
                assert!((d.avg_collaborators - 2.0 * m / n).abs() < 1e-12);
            } else {
                assert!(d.empty);
            }
        }
    }
}

#[test]
fn cleaning_is_idempotent_on_the_fixture() {
    let f = load_fixture();
    let (once, report1) = clean_corpus(&f.corpus, f.config.max_authors);
    let (twice, report2) = clean_corpus(&once, f.config.max_authors);
    assert_eq!(once.len(), twice.len());
    assert_eq!(report1.records_after, report2.records_before);
    assert!(report2.removed_ids.is_empty());
    assert_eq!(once.links(), twice.links());
}

#[test]
fn final_boundary_diversity_in_published_band() {
    let f = load_fixture();
    let sets = domain_sets(&f);
    let order: Vec<String> = sets.iter().map(|(n, _)| n.clone()).collect();
    let window = *f.config.windows.windows().last().unwrap();
    let (_, boundary) =
        build_window_graphs(&f.cleaned, &sets, window, &series_params(&f)).unwrap();
    let partition = partition_intersections(&boundary, &order).unwrap();
    let v = variance_diversity(&partition);
    assert!((v - 0.52).abs() <= 0.01, "V = {v}");
}

#[test]
fn final_boundary_graph_and_betweenness_match_manifest() {
    let f = load_fixture();
    let m = manifest();
    let sets = domain_sets(&f);
    let window = *f.config.windows.windows().last().unwrap();
    let (_, boundary) =
        build_window_graphs(&f.cleaned, &sets, window, &series_params(&f)).unwrap();

    let bf = &m["boundary_final"];
    let expected_vertices: Vec<(String, Vec<String>)> = bf["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| {
            let pair = v.as_array().unwrap();
            (pair[0].as_str().unwrap().to_string(), str_list(&pair[1]))
        })
        .collect();
    let got_vertices: Vec<(String, Vec<String>)> = boundary
        .vertices()
        .map(|(k, info)| {
            // manifest orders labels by domain position, not lexically
            let mut labels: Vec<String> = info.domains.iter().cloned().collect();
            let order = ["RET", "NNM", "EECS"];
            labels.sort_by_key(|l| order.iter().position(|d| d == l).unwrap());
            (k.to_string(), labels)
        })
        .collect();
    assert_eq!(got_vertices, expected_vertices);

    let expected_edges: Vec<(String, String, u32)> = bf["edges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            let t = e.as_array().unwrap();
            (
                t[0].as_str().unwrap().to_string(),
                t[1].as_str().unwrap().to_string(),
                t[2].as_u64().unwrap() as u32,
            )
        })
        .collect();
    let got_edges: Vec<(String, String, u32)> = boundary
        .edges()
        .map(|(a, b, w)| (a.to_string(), b.to_string(), w))
        .collect();
    assert_eq!(got_edges, expected_edges);

    let scores = betweenness(&boundary);
    for (key, expected) in bf["betweenness"].as_object().unwrap() {
        let got = scores[&AuthorKey(key.clone())];
        assert!(
            (got - expected.as_f64().unwrap()).abs() < 1e-9,
            "betweenness({key}) = {got}, reference {expected}"
        );
    }
}

#[test]
fn final_ret_graph_matches_golden_graphml_and_manifest() {
    let f = load_fixture();
    let m = manifest();
    let sets = domain_sets(&f);
    let window = *f.config.windows.windows().last().unwrap();
    let (built, _) = build_window_graphs(&f.cleaned, &sets, window, &series_params(&f)).unwrap();
    let graph = &built.iter().find(|(n, _)| n == "RET").unwrap().1;

    // structure against the independent recount
    let rf = &m["ret_final"];
    let got_vertices: Vec<String> = graph.vertex_keys().map(|k| k.to_string()).collect();
    assert_eq!(got_vertices, str_list(&rf["vertices"]));
    let got_edges: Vec<(String, String, u32)> = graph
        .edges()
        .map(|(a, b, w)| (a.to_string(), b.to_string(), w))
        .collect();
    let expected_edges: Vec<(String, String, u32)> = rf["edges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            let t = e.as_array().unwrap();
            (
                t[0].as_str().unwrap().to_string(),
                t[1].as_str().unwrap().to_string(),
                t[2].as_u64().unwrap() as u32,
            )
        })
        .collect();
    assert_eq!(got_edges, expected_edges);
    let scores = betweenness(graph);
    for (key, expected) in rf["betweenness"].as_object().unwrap() {
        let got = scores[&AuthorKey(key.clone())];
        assert!((got - expected.as_f64().unwrap()).abs() < 1e-9, "betweenness({key})");
    }

    // bytes against the committed golden export, both directions
    let golden_path = fixtures().join("golden/ret_2008_2013.graphml");
    let golden = std::fs::read(&golden_path).unwrap();
    let mut emitted = Vec::new();
    spanalyze::graph::io::write_graphml(graph, &scores, &mut emitted).unwrap();
    assert_eq!(emitted, golden, "golden GraphML drifted");
    let (reimported, _) =
        spanalyze::graph::io::read_graphml(BufReader::new(golden.as_slice())).unwrap();
    assert_eq!(reimported.window(), graph.window());
    assert_eq!(reimported.min_copubs(), graph.min_copubs());
    assert_eq!(
        reimported
            .vertices()
            .map(|(k, i)| (k.clone(), i.domains.clone()))
            .collect::<Vec<_>>(),
        graph
            .vertices()
            .map(|(k, i)| (k.clone(), i.domains.clone()))
            .collect::<Vec<_>>()
    );
    assert_eq!(
        reimported.edges().collect::<Vec<_>>(),
        graph.edges().collect::<Vec<_>>()
    );
}

#[test]
fn alias_table_folds_the_variant_spelling() {
    let f = load_fixture();
    let alias_text = std::fs::read_to_string(fixtures().join("aliases.txt")).unwrap();
    let line = alias_text
        .lines()
        .find(|l| l.contains('|') && !l.trim_start().starts_with('#'))
        .expect("alias line");
    let (variant, canonical) = line.split_once('|').unwrap();
    let canonical = AuthorKey(canonical.trim().to_string());
    let variant_default_key = spanalyze::graph::AuthorKeying::new().key(variant);

    let sets = domain_sets(&f);
    let first_window = f.config.windows.windows()[0];
    let (built, _) =
        build_window_graphs(&f.cleaned, &sets, first_window, &series_params(&f)).unwrap();
    let ret = &built.iter().find(|(n, _)| n == "RET").unwrap().1;
    assert!(ret.contains_vertex(&canonical), "canonical key present");
    assert!(
        !ret.contains_vertex(&variant_default_key),
        "variant spelling must fold into the canonical key"
    );
    // all three first-window team publications credit the canonical key
    assert_eq!(ret.vertex(&canonical).unwrap().publications.len(), 3);
}

#[test]
fn funding_series_matches_manifest() {
    let f = load_fixture();
    let m = manifest();
    let sets = domain_sets(&f);
    let (anchor, horizon, impute) = f.config.funding.unwrap();
    let spec = WindowSpec::cumulative(anchor, horizon);
    let windows = spec.windows();
    let series: &RdiSeries = f.config.gerd_national.as_ref().unwrap();
    let cumulative = spanalyze::analysis::cumulative_gerd(series, &windows, impute).unwrap();

    let expected_gerd: Vec<f64> = m["funding"]["cumulative_gerd"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    let got_gerd: Vec<f64> = cumulative.iter().map(|c| c.value).collect();
    assert_eq!(got_gerd.len(), expected_gerd.len());
    for (g, e) in got_gerd.iter().zip(&expected_gerd) {
        assert!((g - e).abs() < 1e-9);
    }

    let mut n_clusters = Vec::new();
    for window in &windows {
        let (_, boundary) =
            build_window_graphs(&f.cleaned, &sets, *window, &series_params(&f)).unwrap();
        n_clusters.push(connected_components(&boundary).count as u64);
    }
    let expected_counts: Vec<u64> = m["funding"]["n_clusters"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert_eq!(n_clusters, expected_counts);

    let xs: Vec<f64> = n_clusters.iter().map(|n| *n as f64).collect();
    let r = spanalyze::analysis::correlate(&xs, &got_gerd).unwrap();
    assert!((r - m["funding"]["pearson_r"].as_f64().unwrap()).abs() < 1e-12);
    assert!(r > 0.95, "fixture funding correlation r = {r}");
}

#[test]
fn fit_matches_manifest() {
    let f = load_fixture();
    let m = manifest();
    let sets = domain_sets(&f);
    let order: Vec<String> = sets.iter().map(|(n, _)| n.clone()).collect();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for window in f.config.windows.windows() {
        let (_, boundary) =
            build_window_graphs(&f.cleaned, &sets, window, &series_params(&f)).unwrap();
        let summary = connected_components(&boundary);
        xs.push(n_clusters_50(&summary).unwrap() as f64);
        let partition = partition_intersections(&boundary, &order).unwrap();
        ys.push(entropy_diversity(&partition));
    }
    let fit = spanalyze::analysis::fit_linear(&xs, &ys).unwrap();
    let e = &m["fit_h_on_nc50"];
    assert!((fit.slope - e["slope"].as_f64().unwrap()).abs() < 1e-12);
    assert!((fit.intercept - e["intercept"].as_f64().unwrap()).abs() < 1e-12);
    assert!((fit.r_squared - e["r_squared"].as_f64().unwrap()).abs() < 1e-12);
}

#[test]
fn self_citation_rate_in_published_band() {
    let f = load_fixture();
    let m = manifest();
    let ret = f.domains.iter().find(|d| d.query.name == "RET").unwrap();
    let rate = self_citation_rate(&ret.pubs, &f.cleaned, 2012).unwrap();
    assert!((rate - m["self_citation"]["rate"].as_f64().unwrap()).abs() < 1e-12);
    assert!((rate - 0.22).abs() <= 0.02, "rate = {rate}");
}

#[test]
fn collaborative_impact_exceeds_domain_average() {
    let f = load_fixture();
    let m = manifest();
    let ret = f.domains.iter().find(|d| d.query.name == "RET").unwrap();
    let international: BTreeSet<String> =
        str_list(&m["impact"]["international_pubs"]).into_iter().collect();
    let ci_dom = citation_impact_raw(&ret.pubs, &f.cleaned, 2010).unwrap();
    let ci_int = citation_impact_raw(&international, &f.cleaned, 2010).unwrap();
    let reference =
        reference_impact(&ret.pubs, &f.cleaned, 2010, ReferenceWeighting::CategoryWeighted)
            .unwrap();
    assert!((ci_dom - m["impact"]["ci_domain"].as_f64().unwrap()).abs() < 1e-12);
    assert!((ci_int - m["impact"]["ci_international"].as_f64().unwrap()).abs() < 1e-12);
    let ci_rel = ci_int / reference;
    assert!((ci_rel - m["impact"]["ci_rel_international"].as_f64().unwrap()).abs() < 1e-12);
    assert!(ci_rel > 1.0, "international collaboration must show higher impact");
}

#[test]
fn regional_intensity_matches_manifest() {
    let f = load_fixture();
    let m = manifest();
    let gerd = f.config.gerd_regions.as_ref().unwrap();
    for d in &f.domains {
        let counts = home_region_counts(&d.pubs, &f.cleaned, &f.config.registry, &f.config.geo);
        let expected_counts = m["regional"][&d.query.name]["counts"].as_object().unwrap();
        let got: BTreeMap<String, u64> = counts.clone();
        assert_eq!(got.len(), expected_counts.len(), "{} regions", d.query.name);
        for (region, count) in expected_counts {
            assert_eq!(got[region], count.as_u64().unwrap(), "{region}");
        }
        let table = regional_intensity(&counts, gerd, f.config.min_contribs).unwrap();
        for row in &table.regions {
            let expected = m["regional"][&d.query.name]["classes"][&row.region]
                .as_str()
                .unwrap();
            let got = match row.class {
                IntensityClass::Above => "above",
                IntensityClass::Below => "below",
                IntensityClass::AtAverage => "at_average",
                IntensityClass::Insignificant => "insignificant",
            };
            assert_eq!(got, expected, "{} {}", d.query.name, row.region);
        }
    }
}

#[test]
fn ret_expansion_is_a_fixed_point_under_default_config() {
    let f = load_fixture();
    let ret = f.domains.iter().find(|d| d.query.name == "RET").unwrap();
    let trace = ret.trace.as_ref().unwrap();
    assert_eq!(trace.rounds.len(), 1);
    assert!(trace.rounds[0].accepted.is_empty(), "seed list is closed on this corpus");
    // the expanded query equals the seed list
    let seeds = spanalyze::delineation::parse_term_file(
        &std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../terms/ret.txt"))
            .unwrap(),
    );
    assert_eq!(ret.query.terms, seeds);
}

fn load_expansion_corpus(reversed: bool) -> Corpus {
    let text =
        std::fs::read_to_string(fixtures().join("expansion_corpus.jsonl")).expect("expansion");
    let text = if reversed {
        let mut lines: Vec<&str> = text.lines().collect();
        lines.reverse();
        lines.join("\n")
    } else {
        text
    };
    let (corpus, report) = spanalyze::corpus::ingest_records(
        BufReader::new(text.as_bytes()),
        YearRange::new(2000, 2015),
    )
    .unwrap();
    assert!(report.record_errors.is_empty());
    corpus
}

#[test]
fn designed_expansion_reproduces_the_hand_trace() {
    let m = manifest();
    let corpus = load_expansion_corpus(false);
    let exclusions = std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR")).join("../../terms/exclusions.txt"),
    )
    .unwrap();
    let query = spanalyze::delineation::DomainQuery {
        name: "RET".into(),
        mode: spanalyze::delineation::QueryMode::Keyword,
        terms: vec![spanalyze::corpus::normalize_text("solar cell")],
        exclusions: spanalyze::delineation::parse_term_file(&exclusions),
        subjects: vec![],
    };
    let cfg = ExpansionConfig {
        cdf_cutoff: 0.95,
        top_k_frequent: 5,
        rounds: 2,
    };
    let (expanded, trace) = expand_query(&corpus, &query, &cfg).unwrap();
    let terms: Vec<String> = expanded.terms.iter().map(|t| t.joined()).collect();
    assert_eq!(terms, str_list(&m["expansion"]["final_terms"]));

    let r1 = &trace.rounds[0];
    assert_eq!(r1.core_size as u64, m["expansion"]["trace"][0]["core_size"].as_u64().unwrap());
    assert_eq!(
        r1.threshold_count,
        m["expansion"]["trace"][0]["threshold"].as_u64().unwrap()
    );
    assert_eq!(r1.accepted.len(), 1);
    assert_eq!(r1.accepted[0].keyword.joined(), "dye sensitized");
    assert_eq!(r1.accepted[0].justified_by.joined(), "solar cell");
    assert!(r1
        .rejected
        .iter()
        .any(|r| r.keyword.joined() == "water" && r.reason == RejectionReason::Excluded));

    let r2 = &trace.rounds[1];
    assert_eq!(r2.accepted.len(), 1);
    assert_eq!(r2.accepted[0].keyword.joined(), "redox electrolyte");
    assert_eq!(r2.accepted[0].justified_by.joined(), "dye sensitized");
    assert!(r2.rejected.iter().any(|r| r.keyword.joined() == "efficiency"
        && r.reason == RejectionReason::NoSeedAmongTopKeywords));

    // determinism: repeated runs and permuted input order give a
    // byte-identical trace
    let (_, trace_again) = expand_query(&corpus, &query, &cfg).unwrap();
    assert_eq!(
        serde_json::to_vec(&trace).unwrap(),
        serde_json::to_vec(&trace_again).unwrap()
    );
    let reversed = load_expansion_corpus(true);
    let (_, trace_reversed) = expand_query(&reversed, &query, &cfg).unwrap();
    assert_eq!(
        serde_json::to_vec(&trace).unwrap(),
        serde_json::to_vec(&trace_reversed).unwrap()
    );
}

#[test]
fn sector_shares_match_manifest() {
    let f = load_fixture();
    let m = manifest();
    let ret = f.domains.iter().find(|d| d.query.name == "RET").unwrap();
    let whole = spanalyze::report::home_sector_table(
        &ret.pubs,
        &f.cleaned,
        &f.config.registry,
        &f.config.geo,
        spanalyze::taxonomy::CountScheme::Whole,
    );
    let normalized = spanalyze::report::home_sector_table(
        &ret.pubs,
        &f.cleaned,
        &f.config.registry,
        &f.config.geo,
        spanalyze::taxonomy::CountScheme::WholeNormalized,
    );
    let expected_whole = m["sector_shares_ret"]["whole"].as_object().unwrap();
    for row in &whole.rows {
        let e = expected_whole[&row.entity].as_f64().unwrap();
        assert!((row.value - e).abs() < 1e-9, "{} whole", row.entity);
    }
    assert_eq!(whole.rows.len(), expected_whole.len());
    let expected_norm = m["sector_shares_ret"]["normalized"].as_object().unwrap();
    for row in &normalized.rows {
        let e = expected_norm[&row.entity].as_f64().unwrap();
        assert!((row.value - e).abs() < 1e-9, "{} normalized", row.entity);
    }
}
