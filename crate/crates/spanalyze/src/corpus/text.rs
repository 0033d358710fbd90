//! Text normalization for retrieval: lowercasing, punctuation splitting,
//! and rule-based singularization of plural nouns.
//!
//! Normalization is idempotent: tokenizing the space-joined output of
//! `normalize_text` reproduces it exactly. Singularization is a small
//! deterministic suffix table applied per token until a fixed point is
//! reached, with an exception list for singular words that end in `s`
//! and an override map for irregular plurals. Both lists can be extended
//! through [`NormalizerOverrides`].

use std::collections::BTreeMap;
use std::collections::BTreeSet;

/// Ordered list of lowercase, normalized word tokens.
///
/// Serialized as the space-joined phrase; parsing re-normalizes, which
/// is a no-op on canonical input.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TokenList(pub Vec<String>);

impl serde::Serialize for TokenList {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.joined())
    }
}

impl<'de> serde::Deserialize<'de> for TokenList {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Ok(normalize_text(&s))
    }
}

impl TokenList {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn tokens(&self) -> &[String] {
        &self.0
    }

    /// Joins tokens with single spaces, the canonical text form of a phrase.
    pub fn joined(&self) -> String {
        self.0.join(" ")
    }

    /// True iff `needle` occurs as a contiguous subsequence of `self`.
    pub fn contains_phrase(&self, needle: &TokenList) -> bool {
        if needle.0.is_empty() || needle.0.len() > self.0.len() {
            return false;
        }
        self.0
            .windows(needle.0.len())
            .any(|w| w == needle.0.as_slice())
    }
}

/// Singular words ending in `s` that the suffix rules must not touch.
const EXCEPTIONS: &[&str] = &[
    "analysis",
    "apparatus",
    "basis",
    "bias",
    "class",
    "gas",
    "glass",
    "hypothesis",
    "lens",
    "loss",
    "mass",
    "process",
    "series",
    "species",
    "status",
    "stress",
    "synthesis",
    "thesis",
];

/// Irregular plural → singular pairs applied before the suffix rules.
const OVERRIDES: &[(&str, &str)] = &[
    ("analyses", "analysis"),
    ("gases", "gas"),
    ("hypotheses", "hypothesis"),
    ("lenses", "lens"),
    ("media", "medium"),
    ("spectra", "spectrum"),
    ("syntheses", "synthesis"),
    ("theses", "thesis"),
];

/// User-supplied extensions to the built-in singularization tables.
#[derive(Debug, Clone, Default)]
pub struct NormalizerOverrides {
    pub exceptions: BTreeSet<String>,
    pub replacements: BTreeMap<String, String>,
}

impl NormalizerOverrides {
    /// Parses an override file: one entry per line, `#` comments allowed.
    /// A line `plural -> singular` adds a replacement; a bare word adds an
    /// exception (never singularized).
    pub fn parse(text: &str) -> Self {
        let mut out = NormalizerOverrides::default();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some((from, to)) = line.split_once("->") {
                out.replacements
                    .insert(from.trim().to_lowercase(), to.trim().to_lowercase());
            } else {
                out.exceptions.insert(line.to_lowercase());
            }
        }
        out
    }
}

fn is_exception(token: &str, overrides: Option<&NormalizerOverrides>) -> bool {
    EXCEPTIONS.binary_search(&token).is_ok()
        || overrides.is_some_and(|o| o.exceptions.contains(token))
}

fn replacement(token: &str, overrides: Option<&NormalizerOverrides>) -> Option<String> {
    if let Some(o) = overrides {
        if let Some(r) = o.replacements.get(token) {
            return Some(r.clone());
        }
    }
    OVERRIDES
        .binary_search_by_key(&token, |(from, _)| from)
        .ok()
        .map(|i| OVERRIDES[i].1.to_string())
}

/// One pass of the suffix table. Returns the token unchanged when no rule
/// applies; `singularize` iterates this to a fixed point.
fn singularize_step(token: &str, overrides: Option<&NormalizerOverrides>) -> String {
    if token.len() <= 3 || is_exception(token, overrides) {
        return token.to_string();
    }
    if let Some(r) = replacement(token, overrides) {
        return r;
    }
    if token.ends_with("ss") || token.ends_with("us") || token.ends_with("is") {
        return token.to_string();
    }
    if token.ends_with("sses") {
        return token[..token.len() - 2].to_string();
    }
    if token.ends_with("ies") && token.len() > 4 {
        return format!("{}y", &token[..token.len() - 3]);
    }
    if token.ends_with("ses") {
        return token[..token.len() - 2].to_string();
    }
    if let Some(stem) = token.strip_suffix('s') {
        return stem.to_string();
    }
    token.to_string()
}

fn singularize(token: &str, overrides: Option<&NormalizerOverrides>) -> String {
    let mut current = token.to_string();
    // Iterated to a fixed point so normalization stays idempotent; the
    // round cap guards against cyclic user overrides.
    for _ in 0..16 {
        let next = singularize_step(&current, overrides);
        if next == current {
            return current;
        }
        current = next;
    }
    current
}

/// Lowercases and splits on every non-alphanumeric character without
/// singularizing; for proper names, where suffix rules would mangle
/// surnames ending in `s`.
pub fn fold_text(text: &str) -> TokenList {
    let mut tokens = Vec::new();
    let mut word = String::new();
    for ch in text.chars() {
        if ch.is_alphanumeric() {
            for low in ch.to_lowercase() {
                word.push(low);
            }
        } else if !word.is_empty() {
            tokens.push(std::mem::take(&mut word));
        }
    }
    if !word.is_empty() {
        tokens.push(word);
    }
    TokenList(tokens)
}

/// Lowercases, splits on every non-alphanumeric character, and
/// singularizes each token. Empty input yields an empty list.
pub fn normalize_text(text: &str) -> TokenList {
    normalize_text_with(text, None)
}

pub fn normalize_text_with(text: &str, overrides: Option<&NormalizerOverrides>) -> TokenList {
    let mut tokens = Vec::new();
    let mut word = String::new();
    for ch in text.chars() {
        if ch.is_alphanumeric() {
            for low in ch.to_lowercase() {
                word.push(low);
            }
        } else if !word.is_empty() {
            tokens.push(singularize(&word, overrides));
            word.clear();
        }
    }
    if !word.is_empty() {
        tokens.push(singularize(&word, overrides));
    }
    TokenList(tokens)
}

/// Normalizes a query phrase; identical to `normalize_text` but named for
/// call sites that deal in search terms.
pub fn normalize_phrase(phrase: &str) -> TokenList {
    normalize_text(phrase)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_are_sorted_for_binary_search() {
        let mut ex = EXCEPTIONS.to_vec();
        ex.sort_unstable();
        assert_eq!(ex, EXCEPTIONS);
        let mut ov = OVERRIDES.to_vec();
        ov.sort_unstable_by_key(|(from, _)| *from);
        assert_eq!(ov, OVERRIDES);
    }

    #[test]
    fn singularizes_plain_plurals() {
        assert_eq!(normalize_text("Solar cells").joined(), "solar cell");
        assert_eq!(
            normalize_text("nanoparticles and micelles").joined(),
            "nanoparticle and micelle"
        );
    }

    #[test]
    fn splits_on_punctuation() {
        assert_eq!(
            normalize_text("thin films; Raman spectroscopy").joined(),
            "thin film raman spectroscopy"
        );
        assert_eq!(
            normalize_text("dye-sensitized").tokens(),
            ["dye", "sensitized"]
        );
    }

    #[test]
    fn exception_words_keep_their_s() {
        assert_eq!(normalize_text("glass process gas").joined(), "glass process gas");
        assert_eq!(normalize_text("time series analysis").joined(), "time series analysis");
    }

    #[test]
    fn suffix_rules() {
        assert_eq!(normalize_text("properties").joined(), "property");
        assert_eq!(normalize_text("processes glasses").joined(), "process glass");
        assert_eq!(normalize_text("gases").joined(), "gas");
        assert_eq!(normalize_text("wind turbines").joined(), "wind turbine");
    }

    #[test]
    fn empty_input() {
        assert!(normalize_text("").is_empty());
        assert!(normalize_text(" ;,. ").is_empty());
    }

    #[test]
    fn contains_phrase_matches_contiguously() {
        let hay = normalize_text("hybrid nanorod-polymer solar cells");
        assert!(hay.contains_phrase(&normalize_phrase("solar cell")));
        assert!(hay.contains_phrase(&normalize_phrase("polymer solar")));
        assert!(!hay.contains_phrase(&normalize_phrase("hybrid solar")));
        assert!(!hay.contains_phrase(&TokenList::default()));
    }

    #[test]
    fn overrides_extend_tables() {
        let o = NormalizerOverrides::parse("# comment\nvortices -> vortex\nlotus\n");
        assert_eq!(
            normalize_text_with("vortices lotus", Some(&o)).joined(),
            "vortex lotus"
        );
    }

    #[test]
    fn idempotent_on_samples() {
        for text in [
            "Hybrid nanorod-polymer solar cells!",
            "Gases, glasses & processes",
            "properties of nanocrystalline THIN FILMS",
            "αβγ Ωμέγα 123-abc",
            "series of analyses",
        ] {
            let once = normalize_text(text);
            let twice = normalize_text(&once.joined());
            assert_eq!(once, twice, "not idempotent for {text:?}");
        }
    }
}
