//! Run configuration: one TOML file describing inputs, domains, study
//! period, thresholds and window layout. Relative paths resolve against
//! the config file's directory.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::analysis::{RdiSeries, WindowMode, WindowSpec};
use crate::corpus::{NormalizerOverrides, YearRange};
use crate::delineation::{parse_term_file, DomainQuery, ExpansionConfig, QueryMode};
use crate::error::{Error, Result};
use crate::graph::{AuthorKeying, BuildFilters};
use crate::indicators::ReferenceWeighting;
use crate::taxonomy::{parse_regional_gerd, FieldMap, GeoConfig, OrganizationRegistry};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    study: RawStudy,
    paths: RawPaths,
    #[serde(default)]
    domains: Vec<RawDomain>,
    geo: GeoConfig,
    #[serde(default)]
    thresholds: RawThresholds,
    #[serde(default)]
    network: RawNetwork,
    windows: RawWindows,
    #[serde(default)]
    funding: Option<RawFunding>,
    #[serde(default)]
    expansion: RawExpansion,
    #[serde(default)]
    impact: RawImpact,
    output: RawOutput,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStudy {
    period: [i32; 2],
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPaths {
    corpus: String,
    #[serde(default)]
    citations: Option<String>,
    #[serde(default)]
    registry: Option<String>,
    #[serde(default)]
    aliases: Option<String>,
    #[serde(default)]
    fieldmap: Option<String>,
    #[serde(default)]
    gerd_national: Option<String>,
    #[serde(default)]
    gerd_regions: Option<String>,
    #[serde(default)]
    exclusions: Option<String>,
    #[serde(default)]
    normalizer_overrides: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDomain {
    name: String,
    mode: QueryMode,
    #[serde(default)]
    terms: Option<String>,
    #[serde(default)]
    subjects: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawThresholds {
    min_copubs: u32,
    max_authors: usize,
    min_contribs: u64,
}

impl Default for RawThresholds {
    fn default() -> Self {
        RawThresholds {
            min_copubs: 2,
            max_authors: 100,
            min_contribs: 10,
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawNetwork {
    require_international: bool,
    require_cited: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWindows {
    #[serde(default = "default_mode")]
    mode: WindowMode,
    #[serde(default = "default_length")]
    length: u32,
    #[serde(default = "default_step")]
    step: u32,
    anchor: i32,
    horizon: i32,
}

fn default_mode() -> WindowMode {
    WindowMode::Sliding
}
fn default_length() -> u32 {
    6
}
fn default_step() -> u32 {
    1
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFunding {
    anchor: i32,
    horizon: i32,
    #[serde(default)]
    impute_gerd: bool,
}

#[derive(Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawExpansion {
    cdf_cutoff: f64,
    top_k_frequent: usize,
    rounds: usize,
    enabled: bool,
}

impl Default for RawExpansion {
    fn default() -> Self {
        RawExpansion {
            cdf_cutoff: 0.05,
            top_k_frequent: 20,
            rounds: 1,
            enabled: true,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawImpact {
    reference_weighting: ReferenceWeighting,
}

impl Default for RawImpact {
    fn default() -> Self {
        RawImpact {
            reference_weighting: ReferenceWeighting::CategoryWeighted,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    dir: String,
}

/// Fully resolved and validated run configuration.
pub struct RunConfig {
    pub config_path: PathBuf,
    pub study_period: YearRange,
    pub corpus_path: PathBuf,
    pub citations_path: Option<PathBuf>,
    pub queries: Vec<DomainQuery>,
    pub registry: OrganizationRegistry,
    pub geo: GeoConfig,
    pub fieldmap: FieldMap,
    pub keying: AuthorKeying,
    pub overrides: Option<NormalizerOverrides>,
    pub gerd_national: Option<RdiSeries>,
    pub gerd_regions: Option<BTreeMap<String, f64>>,
    pub min_copubs: u32,
    pub max_authors: usize,
    pub min_contribs: u64,
    pub filters: BuildFilters,
    pub windows: WindowSpec,
    pub funding: Option<(i32, i32, bool)>,
    pub expansion: ExpansionConfig,
    pub expansion_enabled: bool,
    pub reference_weighting: ReferenceWeighting,
    pub output_dir: PathBuf,
    /// Input files actually read, config-relative as written, for the
    /// run manifest.
    pub input_files: BTreeMap<String, PathBuf>,
}

fn config_err(field: &str, message: impl Into<String>) -> Error {
    Error::Config {
        field: field.to_string(),
        message: message.into(),
    }
}

fn read_to_string(path: &Path, field: &str) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| config_err(field, format!("{}: {e}", path.display())))
}

impl RunConfig {
    pub fn load(config_path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(config_path)
            .map_err(|e| config_err("config", format!("{}: {e}", config_path.display())))?;
        let raw: RawConfig =
            toml::from_str(&text).map_err(|e| config_err("config", e.to_string()))?;
        let base = config_path.parent().unwrap_or(Path::new("."));
        let mut input_files = BTreeMap::new();
        input_files.insert("config".to_string(), config_path.to_path_buf());

        let resolve = |rel: &str| -> PathBuf { base.join(rel) };
        let mut require = |field: &str, rel: &str| -> Result<PathBuf> {
            let p = resolve(rel);
            if !p.is_file() {
                return Err(config_err(field, format!("file not found: {}", p.display())));
            }
            input_files.insert(field.to_string(), p.clone());
            Ok(p)
        };

        let [start, end] = raw.study.period;
        if start > end {
            return Err(config_err("study.period", "start year after end year"));
        }
        let study_period = YearRange::new(start, end);

        let corpus_path = require("paths.corpus", &raw.paths.corpus)?;
        let citations_path = match &raw.paths.citations {
            Some(rel) => Some(require("paths.citations", rel)?),
            None => None,
        };

        let exclusions = match &raw.paths.exclusions {
            Some(rel) => {
                let p = require("paths.exclusions", rel)?;
                parse_term_file(&read_to_string(&p, "paths.exclusions")?)
            }
            None => Vec::new(),
        };

        if raw.domains.is_empty() {
            return Err(config_err("domains", "at least one domain is required"));
        }
        let mut queries = Vec::new();
        let mut seen = BTreeSet::new();
        for (i, d) in raw.domains.iter().enumerate() {
            let field = format!("domains[{i}]");
            if !seen.insert(d.name.clone()) {
                return Err(config_err(&field, format!("duplicate domain name {}", d.name)));
            }
            let query = match d.mode {
                QueryMode::Keyword => {
                    let rel = d.terms.as_deref().ok_or_else(|| {
                        config_err(&field, "keyword domain needs a terms file")
                    })?;
                    let p = require(&format!("{field}.terms"), rel)?;
                    let terms = parse_term_file(&read_to_string(&p, &field)?);
                    if terms.is_empty() {
                        return Err(config_err(&field, "terms file has no phrases"));
                    }
                    DomainQuery {
                        name: d.name.clone(),
                        mode: QueryMode::Keyword,
                        terms,
                        exclusions: exclusions.clone(),
                        subjects: Vec::new(),
                    }
                }
                QueryMode::SubjectCategory => DomainQuery {
                    name: d.name.clone(),
                    mode: QueryMode::SubjectCategory,
                    terms: Vec::new(),
                    exclusions: Vec::new(),
                    subjects: d.subjects.clone(),
                },
            };
            query
                .validate()
                .map_err(|e| config_err(&field, e.to_string()))?;
            queries.push(query);
        }

        let registry = match &raw.paths.registry {
            Some(rel) => {
                let p = require("paths.registry", rel)?;
                OrganizationRegistry::parse(&read_to_string(&p, "paths.registry")?)
                    .map_err(|e| config_err("paths.registry", e.to_string()))?
            }
            None => OrganizationRegistry::new(),
        };
        let keying = match &raw.paths.aliases {
            Some(rel) => {
                let p = require("paths.aliases", rel)?;
                AuthorKeying::parse(&read_to_string(&p, "paths.aliases")?)
                    .map_err(|e| config_err("paths.aliases", e.to_string()))?
            }
            None => AuthorKeying::new(),
        };
        let fieldmap = match &raw.paths.fieldmap {
            Some(rel) => {
                let p = require("paths.fieldmap", rel)?;
                let file = std::fs::File::open(&p)
                    .map_err(|e| config_err("paths.fieldmap", e.to_string()))?;
                FieldMap::parse_csv(file).map_err(|e| config_err("paths.fieldmap", e.to_string()))?
            }
            None => FieldMap::default(),
        };
        let overrides = match &raw.paths.normalizer_overrides {
            Some(rel) => {
                let p = require("paths.normalizer_overrides", rel)?;
                Some(NormalizerOverrides::parse(&read_to_string(
                    &p,
                    "paths.normalizer_overrides",
                )?))
            }
            None => None,
        };
        let gerd_national = match &raw.paths.gerd_national {
            Some(rel) => {
                let p = require("paths.gerd_national", rel)?;
                let file = std::fs::File::open(&p)
                    .map_err(|e| config_err("paths.gerd_national", e.to_string()))?;
                Some(
                    RdiSeries::parse_csv(file)
                        .map_err(|e| config_err("paths.gerd_national", e.to_string()))?,
                )
            }
            None => None,
        };
        let gerd_regions = match &raw.paths.gerd_regions {
            Some(rel) => {
                let p = require("paths.gerd_regions", rel)?;
                let file = std::fs::File::open(&p)
                    .map_err(|e| config_err("paths.gerd_regions", e.to_string()))?;
                Some(
                    parse_regional_gerd(file)
                        .map_err(|e| config_err("paths.gerd_regions", e.to_string()))?,
                )
            }
            None => None,
        };

        raw.geo
            .validate()
            .map_err(|e| config_err("geo", e.to_string()))?;
        if raw.thresholds.min_copubs == 0 {
            return Err(config_err("thresholds.min_copubs", "must be >= 1"));
        }
        if raw.thresholds.max_authors == 0 {
            return Err(config_err("thresholds.max_authors", "must be >= 1"));
        }

        let windows = WindowSpec {
            mode: raw.windows.mode,
            length: raw.windows.length,
            step: raw.windows.step,
            anchor: raw.windows.anchor,
            horizon: raw.windows.horizon,
        };
        windows
            .validate(study_period)
            .map_err(|e| config_err("windows", e.to_string()))?;

        let funding = match &raw.funding {
            Some(f) => {
                if f.anchor > f.horizon
                    || !study_period.contains(f.anchor)
                    || !study_period.contains(f.horizon)
                {
                    return Err(config_err("funding", "anchor/horizon outside study period"));
                }
                Some((f.anchor, f.horizon, f.impute_gerd))
            }
            None => None,
        };

        let expansion = ExpansionConfig {
            cdf_cutoff: raw.expansion.cdf_cutoff,
            top_k_frequent: raw.expansion.top_k_frequent,
            rounds: raw.expansion.rounds,
        };
        expansion
            .validate()
            .map_err(|e| config_err("expansion", e.to_string()))?;

        Ok(RunConfig {
            config_path: config_path.to_path_buf(),
            study_period,
            corpus_path,
            citations_path,
            queries,
            registry,
            geo: raw.geo,
            fieldmap,
            keying,
            overrides,
            gerd_national,
            gerd_regions,
            min_copubs: raw.thresholds.min_copubs,
            max_authors: raw.thresholds.max_authors,
            min_contribs: raw.thresholds.min_contribs,
            filters: BuildFilters {
                require_international: raw.network.require_international,
                require_cited: raw.network.require_cited,
            },
            windows,
            funding,
            expansion,
            expansion_enabled: raw.expansion.enabled,
            reference_weighting: raw.impact.reference_weighting,
            output_dir: resolve(&raw.output.dir),
            input_files,
        })
    }
}
