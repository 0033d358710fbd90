//! Coauthorship graphs: deterministic author keying, weighted graph
//! construction over a time window, structural metrics, binary graph
//! operations, and GraphML/DOT serialization.
//!
//! Graphs are undirected and simple: no self-loops, one weighted edge
//! per unordered author pair, every edge weight at least the build
//! threshold, and no isolated vertices after construction.

pub mod io;
pub mod metrics;
pub mod ops;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::corpus::text::fold_text;
use crate::corpus::{Corpus, YearRange};
use crate::error::{Error, Result};
use crate::taxonomy::{classify_collaboration, GeoConfig, OrganizationRegistry};

/// Canonical author identity: folded surname plus given-name initials,
/// e.g. `"papadimitriou, ga"`. Deterministic by construction; the alias
/// table overrides the default rule for names it lists.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AuthorKey(pub String);

impl AuthorKey {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl std::fmt::Display for AuthorKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// Raw-name → key alias table applied before the default keying rule.
#[derive(Debug, Clone, Default)]
pub struct AuthorKeying {
    aliases: BTreeMap<String, AuthorKey>,
}

impl AuthorKeying {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parses `raw name|canonical key` lines, `#` comments allowed.
    pub fn parse(text: &str) -> Result<AuthorKeying> {
        let mut aliases = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((name, key)) = line.split_once('|') else {
                return Err(Error::parse("<aliases>", idx + 1, "expected raw name|key"));
            };
            aliases.insert(name.trim().to_string(), AuthorKey(key.trim().to_string()));
        }
        Ok(AuthorKeying { aliases })
    }

    /// Keys a raw author name. `"Surname, Given Names"` takes the part
    /// before the comma as surname; otherwise the last whitespace token
    /// is the surname. Initials are the first letters of the folded
    /// given-name tokens.
    pub fn key(&self, raw_name: &str) -> AuthorKey {
        if let Some(k) = self.aliases.get(raw_name.trim()) {
            return k.clone();
        }
        let trimmed = raw_name.trim();
        let (surname, given) = match trimmed.split_once(',') {
            Some((s, g)) => (s.to_string(), g.to_string()),
            None => match trimmed.rsplit_once(char::is_whitespace) {
                Some((g, s)) => (s.to_string(), g.to_string()),
                None => (trimmed.to_string(), String::new()),
            },
        };
        let surname = fold_text(&surname).joined();
        let initials: String = fold_text(&given)
            .tokens()
            .iter()
            .filter_map(|t| t.chars().next())
            .collect();
        if initials.is_empty() {
            AuthorKey(surname)
        } else {
            AuthorKey(format!("{surname}, {initials}"))
        }
    }
}

/// Vertex attributes: domain labels and the publication ids behind the
/// vertex within the graph's window.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexInfo {
    pub domains: BTreeSet<String>,
    pub publications: BTreeSet<String>,
}

/// Undirected weighted coauthorship graph for one time window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoauthorshipGraph {
    window: YearRange,
    min_copubs: u32,
    vertices: BTreeMap<AuthorKey, VertexInfo>,
    edges: BTreeMap<(AuthorKey, AuthorKey), u32>,
}

impl CoauthorshipGraph {
    pub fn empty(window: YearRange, min_copubs: u32) -> CoauthorshipGraph {
        CoauthorshipGraph {
            window,
            min_copubs,
            vertices: BTreeMap::new(),
            edges: BTreeMap::new(),
        }
    }

    /// Builds a graph from explicit parts, enforcing the structural
    /// invariants: canonical edge ordering, no self-loops, weights at
    /// least `min_copubs`, and endpoints present as vertices.
    pub fn from_parts(
        window: YearRange,
        min_copubs: u32,
        vertices: BTreeMap<AuthorKey, VertexInfo>,
        edges: impl IntoIterator<Item = ((AuthorKey, AuthorKey), u32)>,
    ) -> Result<CoauthorshipGraph> {
        let mut g = CoauthorshipGraph {
            window,
            min_copubs,
            vertices,
            edges: BTreeMap::new(),
        };
        for ((a, b), w) in edges {
            g.insert_edge(a, b, w)?;
        }
        Ok(g)
    }

    fn insert_edge(&mut self, a: AuthorKey, b: AuthorKey, weight: u32) -> Result<()> {
        if a == b {
            return Err(Error::Invalid(format!("self-loop on {a}")));
        }
        if weight < self.min_copubs {
            return Err(Error::Invalid(format!(
                "edge {a} -- {b} weight {weight} below threshold {}",
                self.min_copubs
            )));
        }
        if !self.vertices.contains_key(&a) || !self.vertices.contains_key(&b) {
            return Err(Error::Invalid(format!("edge {a} -- {b} has unknown endpoint")));
        }
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges.insert(key, weight);
        Ok(())
    }

    pub fn window(&self) -> YearRange {
        self.window
    }

    pub fn min_copubs(&self) -> u32 {
        self.min_copubs
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains_vertex(&self, key: &AuthorKey) -> bool {
        self.vertices.contains_key(key)
    }

    pub fn vertex(&self, key: &AuthorKey) -> Option<&VertexInfo> {
        self.vertices.get(key)
    }

    pub fn vertices(&self) -> impl Iterator<Item = (&AuthorKey, &VertexInfo)> {
        self.vertices.iter()
    }

    pub fn vertex_keys(&self) -> impl Iterator<Item = &AuthorKey> {
        self.vertices.keys()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&AuthorKey, &AuthorKey, u32)> {
        self.edges.iter().map(|((a, b), w)| (a, b, *w))
    }

    pub fn weight(&self, a: &AuthorKey, b: &AuthorKey) -> Option<u32> {
        let key = if a < b {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        };
        self.edges.get(&key).copied()
    }

    /// Labels every vertex whose publication set intersects `pubs` with
    /// the domain name.
    pub fn label_domain(&mut self, domain: &str, pubs: &BTreeSet<String>) {
        for info in self.vertices.values_mut() {
            if info.publications.iter().any(|p| pubs.contains(p)) {
                info.domains.insert(domain.to_string());
            }
        }
    }

    /// Labels every vertex unconditionally; used when a whole graph
    /// belongs to a single domain.
    pub fn label_all(&mut self, domain: &str) {
        for info in self.vertices.values_mut() {
            info.domains.insert(domain.to_string());
        }
    }
}

/// Publication filters applied before counting copublications.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildFilters {
    pub require_international: bool,
    pub require_cited: bool,
}

/// Registry and country sets needed when filtering on international
/// collaboration.
#[derive(Clone, Copy)]
pub struct GeoContext<'a> {
    pub registry: &'a OrganizationRegistry,
    pub geo: &'a GeoConfig,
}

/// Builds the coauthorship graph for a publication set over a window.
///
/// Publications are restricted to the window and filters; every
/// unordered pair of distinct author keys on a publication gains weight
/// one; edges below `min_copubs` are dropped and vertices without a
/// surviving edge are removed. Publications that cannot be classified
/// for the international filter are skipped by it.
pub fn build_coauthorship(
    pubs: &BTreeSet<String>,
    corpus: &Corpus,
    window: YearRange,
    min_copubs: u32,
    filters: BuildFilters,
    geo_ctx: Option<GeoContext<'_>>,
    keying: &AuthorKeying,
) -> Result<CoauthorshipGraph> {
    if filters.require_international && geo_ctx.is_none() {
        return Err(Error::Invalid(
            "international filter requires registry and geo config".into(),
        ));
    }
    let mut pair_weights: BTreeMap<(AuthorKey, AuthorKey), u32> = BTreeMap::new();
    let mut author_pubs: BTreeMap<AuthorKey, BTreeSet<String>> = BTreeMap::new();

    for id in pubs {
        let Some(record) = corpus.get(id) else {
            continue;
        };
        if !window.contains(record.year) {
            continue;
        }
        if filters.require_cited && !corpus.is_cited(record) {
            continue;
        }
        if filters.require_international {
            let ctx = geo_ctx.expect("checked above");
            match classify_collaboration(record, ctx.registry, ctx.geo) {
                Ok(profile) if profile.international => {}
                _ => continue,
            }
        }
        let keys: BTreeSet<AuthorKey> = record
            .authors
            .iter()
            .map(|a| keying.key(&a.raw_name))
            .collect();
        for key in &keys {
            author_pubs
                .entry(key.clone())
                .or_default()
                .insert(id.clone());
        }
        let keys: Vec<AuthorKey> = keys.into_iter().collect();
        for i in 0..keys.len() {
            for j in (i + 1)..keys.len() {
                *pair_weights
                    .entry((keys[i].clone(), keys[j].clone()))
                    .or_insert(0) += 1;
            }
        }
    }

    let mut vertices: BTreeMap<AuthorKey, VertexInfo> = BTreeMap::new();
    let surviving: Vec<((AuthorKey, AuthorKey), u32)> = pair_weights
        .into_iter()
        .filter(|(_, w)| *w >= min_copubs)
        .collect();
    for ((a, b), _) in &surviving {
        for key in [a, b] {
            vertices.entry(key.clone()).or_insert_with(|| VertexInfo {
                domains: BTreeSet::new(),
                publications: author_pubs.get(key).cloned().unwrap_or_default(),
            });
        }
    }
    CoauthorshipGraph::from_parts(window, min_copubs, vertices, surviving)
}
