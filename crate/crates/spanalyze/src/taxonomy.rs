//! Affiliation taxonomy: organization classes and sector rollup,
//! collaboration-type classification, contribution counting under whole
//! and whole-normalized schemes, subject-to-field mapping, and regional
//! intensity relative to the national average.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::corpus::{normalize_text, Corpus, PublicationRecord};
use crate::error::{Error, Result};

/// Organization sectors rolled up from the 10-class scheme:
/// HEI = classes 1–3, GRC = 4–6, Health = 7–8, Private = 9–10.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sector {
    Hei,
    Grc,
    Health,
    Private,
}

impl Sector {
    pub fn from_class(class: u8) -> Option<Sector> {
        match class {
            1..=3 => Some(Sector::Hei),
            4..=6 => Some(Sector::Grc),
            7..=8 => Some(Sector::Health),
            9..=10 => Some(Sector::Private),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Sector::Hei => "HEI",
            Sector::Grc => "GRC",
            Sector::Health => "Health",
            Sector::Private => "Private",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrgInfo {
    pub org_class: u8,
    pub region: String,
    pub country: String,
}

impl OrgInfo {
    pub fn sector(&self) -> Sector {
        // org_class is validated on registry load.
        Sector::from_class(self.org_class).expect("validated org_class")
    }
}

/// Registry of known organizations keyed by normalized name.
#[derive(Debug, Clone, Default)]
pub struct OrganizationRegistry {
    entries: BTreeMap<String, OrgInfo>,
}

fn org_key(name: &str) -> String {
    normalize_text(name).joined()
}

impl OrganizationRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, name: &str, info: OrgInfo) -> Result<()> {
        if Sector::from_class(info.org_class).is_none() {
            return Err(Error::Invalid(format!(
                "org class {} out of range 1-10 for {name}",
                info.org_class
            )));
        }
        self.entries.insert(org_key(name), info);
        Ok(())
    }

    pub fn lookup(&self, name: &str) -> Option<&OrgInfo> {
        self.entries.get(&org_key(name))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Parses `org_name|class|region|country` lines, `#` comments allowed.
    pub fn parse(text: &str) -> Result<OrganizationRegistry> {
        let mut reg = OrganizationRegistry::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split('|').map(str::trim).collect();
            if parts.len() != 4 {
                return Err(Error::parse(
                    "<registry>",
                    idx + 1,
                    "expected org_name|class|region|country",
                ));
            }
            let class: u8 = parts[1].parse().map_err(|_| {
                Error::parse("<registry>", idx + 1, format!("invalid class {:?}", parts[1]))
            })?;
            reg.insert(
                parts[0],
                OrgInfo {
                    org_class: class,
                    region: parts[2].to_string(),
                    country: parts[3].to_uppercase(),
                },
            )
            .map_err(|e| Error::parse("<registry>", idx + 1, e.to_string()))?;
        }
        Ok(reg)
    }
}

/// Country-set configuration for collaboration typing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeoConfig {
    pub home_country: String,
    pub eu28: BTreeSet<String>,
    pub eu_neighbors: BTreeSet<String>,
}

impl GeoConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.eu28.is_disjoint(&self.eu_neighbors) {
            return Err(Error::Invalid(
                "eu28 and eu_neighbors overlap".into(),
            ));
        }
        Ok(())
    }
}

/// Possibly co-occurring collaboration flags of one publication.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollaborationProfile {
    pub institutional: bool,
    pub regional: bool,
    pub eu: bool,
    pub eu_neighbor: bool,
    pub other_international: bool,
    pub international: bool,
}

/// One resolved affiliation: record fields win, the registry fills gaps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedAffiliation {
    pub org: Option<String>,
    pub sector: Option<Sector>,
    pub region: Option<String>,
    pub country: Option<String>,
}

pub fn resolve_affiliations(
    record: &PublicationRecord,
    registry: &OrganizationRegistry,
) -> Vec<ResolvedAffiliation> {
    let mut out = Vec::new();
    for author in &record.authors {
        for aff in &author.affiliations {
            let reg = aff.org.as_deref().and_then(|o| registry.lookup(o));
            out.push(ResolvedAffiliation {
                org: aff.org.as_deref().map(org_key),
                sector: reg.map(|r| r.sector()),
                region: aff
                    .region
                    .clone()
                    .or_else(|| reg.map(|r| r.region.clone())),
                country: aff
                    .country
                    .clone()
                    .or_else(|| reg.map(|r| r.country.clone())),
            });
        }
    }
    out
}

/// Classifies a publication's collaboration type from its affiliations.
///
/// Institutional means at least two home-country organizations from
/// different sectors; regional means at least two distinct home regions;
/// the three international flags follow the country sets in `geo`.
/// Affiliations that resolve to nothing contribute to no flag. A
/// publication without any home-country affiliation is outside the
/// collection scope and is an error.
pub fn classify_collaboration(
    record: &PublicationRecord,
    registry: &OrganizationRegistry,
    geo: &GeoConfig,
) -> Result<CollaborationProfile> {
    let resolved = resolve_affiliations(record, registry);
    let home = &geo.home_country;

    let has_home = resolved.iter().any(|r| r.country.as_deref() == Some(home));
    if !has_home {
        return Err(Error::OutsideCollectionScope {
            id: record.id.clone(),
        });
    }

    let mut home_org_sectors: BTreeMap<String, Sector> = BTreeMap::new();
    let mut home_regions: BTreeSet<String> = BTreeSet::new();
    let mut eu = false;
    let mut eu_neighbor = false;
    let mut other_international = false;

    for r in &resolved {
        let Some(country) = r.country.as_deref() else {
            continue;
        };
        if country == home {
            if let (Some(org), Some(sector)) = (r.org.as_ref(), r.sector) {
                home_org_sectors.insert(org.clone(), sector);
            }
            if let Some(region) = &r.region {
                home_regions.insert(region.clone());
            }
        } else if geo.eu28.contains(country) {
            eu = true;
        } else if geo.eu_neighbors.contains(country) {
            eu_neighbor = true;
        } else {
            other_international = true;
        }
    }

    let sectors: BTreeSet<Sector> = home_org_sectors.values().copied().collect();
    let profile = CollaborationProfile {
        institutional: home_org_sectors.len() >= 2 && sectors.len() >= 2,
        regional: home_regions.len() >= 2,
        eu,
        eu_neighbor,
        other_international,
        international: eu || eu_neighbor || other_international,
    };
    Ok(profile)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountDim {
    Organization,
    Region,
    Country,
    Sector,
    FrascatiField,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountScheme {
    Whole,
    WholeNormalized,
}

/// Mapping from subject-category label to a field label; labels absent
/// from the map classify as "unmapped".
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldMap {
    pub map: BTreeMap<String, String>,
}

pub const UNMAPPED_FIELD: &str = "unmapped";

impl FieldMap {
    pub fn field_of(&self, subject: &str) -> String {
        self.map
            .get(subject)
            .cloned()
            .unwrap_or_else(|| UNMAPPED_FIELD.to_string())
    }

    /// Parses a `subject_category,frascati_field` CSV with a header line.
    pub fn parse_csv<R: std::io::Read>(reader: R) -> Result<FieldMap> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut map = BTreeMap::new();
        for (idx, row) in rdr.records().enumerate() {
            let row =
                row.map_err(|e| Error::parse("<fieldmap>", idx + 2, e.to_string()))?;
            if row.len() != 2 {
                return Err(Error::parse(
                    "<fieldmap>",
                    idx + 2,
                    "expected subject_category,frascati_field",
                ));
            }
            map.insert(row[0].to_string(), row[1].to_string());
        }
        Ok(FieldMap { map })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContributionRow {
    pub entity: String,
    pub value: f64,
    pub share: f64,
}

/// Contribution table over one dimension. `unresolved` counts
/// publications that produced no entity for the dimension; those are
/// reported but excluded from shares.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContributionTable {
    pub dim: CountDim,
    pub scheme: CountScheme,
    pub publications: usize,
    pub unresolved: usize,
    pub rows: Vec<ContributionRow>,
}

fn entities_for(
    record: &PublicationRecord,
    dim: CountDim,
    registry: &OrganizationRegistry,
    fields: &FieldMap,
) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    match dim {
        CountDim::Organization | CountDim::Region | CountDim::Country | CountDim::Sector => {
            for r in resolve_affiliations(record, registry) {
                match dim {
                    CountDim::Organization => {
                        if let Some(org) = r.org {
                            out.insert(org);
                        }
                    }
                    CountDim::Region => {
                        if let Some(region) = r.region {
                            out.insert(region);
                        }
                    }
                    CountDim::Country => {
                        if let Some(country) = r.country {
                            out.insert(country);
                        }
                    }
                    CountDim::Sector => {
                        if let Some(sector) = r.sector {
                            out.insert(sector.label().to_string());
                        }
                    }
                    CountDim::FrascatiField => unreachable!(),
                }
            }
        }
        CountDim::FrascatiField => {
            for s in &record.subject_categories {
                out.insert(fields.field_of(s));
            }
        }
    }
    out
}

/// Counts entity contributions over a publication set.
///
/// Whole counting credits each entity once per publication it appears
/// in, so values may sum past the set size; whole-normalized counting
/// splits each publication's unit weight equally over its distinct
/// entities, so values sum to the number of resolvable publications.
/// Shares divide by the set size under both schemes.
pub fn count_contributions(
    pubs: &BTreeSet<String>,
    corpus: &Corpus,
    dim: CountDim,
    scheme: CountScheme,
    registry: &OrganizationRegistry,
    fields: &FieldMap,
) -> ContributionTable {
    let mut values: BTreeMap<String, f64> = BTreeMap::new();
    let mut unresolved = 0usize;
    let mut publications = 0usize;
    for id in pubs {
        let Some(record) = corpus.get(id) else {
            continue;
        };
        publications += 1;
        let entities = entities_for(record, dim, registry, fields);
        if entities.is_empty() {
            unresolved += 1;
            continue;
        }
        match scheme {
            CountScheme::Whole => {
                for e in entities {
                    *values.entry(e).or_insert(0.0) += 1.0;
                }
            }
            CountScheme::WholeNormalized => {
                let w = 1.0 / entities.len() as f64;
                for e in entities {
                    *values.entry(e).or_insert(0.0) += w;
                }
            }
        }
    }
    let mut rows: Vec<ContributionRow> = values
        .into_iter()
        .map(|(entity, value)| ContributionRow {
            entity,
            value,
            share: if publications == 0 {
                0.0
            } else {
                value / publications as f64
            },
        })
        .collect();
    rows.sort_by(|a, b| {
        b.value
            .partial_cmp(&a.value)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| a.entity.cmp(&b.entity))
    });
    ContributionTable {
        dim,
        scheme,
        publications,
        unresolved,
        rows,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntensityClass {
    Above,
    Below,
    AtAverage,
    Insignificant,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionalIntensity {
    pub region: String,
    pub contributions: u64,
    pub gerd: Option<f64>,
    pub ratio: Option<f64>,
    pub class: IntensityClass,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionalIntensityTable {
    pub national_ratio: f64,
    pub min_contributions: u64,
    pub regions: Vec<RegionalIntensity>,
}

/// Classifies each region's contributions-per-expenditure ratio against
/// the national average. Regions under `min_contributions` are
/// insignificant regardless of expenditure; a significant region with
/// no expenditure figure is an error. The national ratio sums over
/// regions with known expenditure.
pub fn regional_intensity(
    contributions: &BTreeMap<String, u64>,
    gerd: &BTreeMap<String, f64>,
    min_contributions: u64,
) -> Result<RegionalIntensityTable> {
    let mut total_contribs = 0u64;
    let mut total_gerd = 0.0f64;
    for (region, contribs) in contributions {
        match gerd.get(region) {
            Some(g) if *g > 0.0 => {
                total_contribs += contribs;
                total_gerd += g;
            }
            Some(_) | None if *contribs >= min_contributions => {
                return Err(Error::MissingGerd {
                    region: region.clone(),
                });
            }
            _ => {}
        }
    }
    if total_gerd <= 0.0 {
        return Err(Error::Invalid(
            "no region with positive GERD and contributions".into(),
        ));
    }
    let national = total_contribs as f64 / total_gerd;

    let mut regions = Vec::new();
    for (region, contribs) in contributions {
        let g = gerd.get(region).copied().filter(|g| *g > 0.0);
        let ratio = g.map(|g| *contribs as f64 / g);
        let class = if *contribs < min_contributions {
            IntensityClass::Insignificant
        } else {
            // g is Some here, or we would have errored above.
            let r = ratio.expect("validated GERD");
            if r > national {
                IntensityClass::Above
            } else if r < national {
                IntensityClass::Below
            } else {
                IntensityClass::AtAverage
            }
        };
        regions.push(RegionalIntensity {
            region: region.clone(),
            contributions: *contribs,
            gerd: g,
            ratio,
            class,
        });
    }
    Ok(RegionalIntensityTable {
        national_ratio: national,
        min_contributions,
        regions,
    })
}

/// Reads a `region,gerd` CSV with a header line.
pub fn parse_regional_gerd<R: std::io::Read>(reader: R) -> Result<BTreeMap<String, f64>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut out = BTreeMap::new();
    for (idx, row) in rdr.records().enumerate() {
        let row = row.map_err(|e| Error::parse("<gerd-regions>", idx + 2, e.to_string()))?;
        if row.len() != 2 {
            return Err(Error::parse("<gerd-regions>", idx + 2, "expected region,gerd"));
        }
        let value: f64 = row[1].parse().map_err(|_| {
            Error::parse("<gerd-regions>", idx + 2, format!("invalid value {:?}", &row[1]))
        })?;
        out.insert(row[0].to_string(), value);
    }
    Ok(out)
}
