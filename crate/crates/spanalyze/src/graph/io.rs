//! GraphML and DOT serialization of coauthorship graphs.
//!
//! Both writers emit a fixed, deterministic schema (vertices in key
//! order, edges in canonical order) and both readers accept exactly
//! that schema back; round-tripping reproduces the graph's vertex set,
//! domain labels, edge set and weights bit for bit. DOT node size and
//! color encode betweenness and the domain set; those visual attributes
//! are ignored on import.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use crate::corpus::YearRange;
use crate::error::{Error, Result};

use super::{AuthorKey, CoauthorshipGraph, VertexInfo};

/// Betweenness scores keyed by author, as written into exports.
pub type Scores = BTreeMap<AuthorKey, f64>;

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(ch),
        }
    }
    out
}

fn xml_unescape(s: &str) -> String {
    s.replace("&lt;", "<")
        .replace("&gt;", ">")
        .replace("&quot;", "\"")
        .replace("&apos;", "'")
        .replace("&amp;", "&")
}

/// Writes GraphML with node attributes `domains` (semicolon-joined) and
/// `betweenness`, edge attribute `weight`, and graph attributes
/// `window` and `min_copubs`.
pub fn write_graphml<W: Write>(
    graph: &CoauthorshipGraph,
    scores: &Scores,
    mut out: W,
) -> Result<()> {
    let io_err = |e: std::io::Error| Error::io("<graphml>", e);
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).map_err(io_err)?;
    writeln!(
        out,
        r#"<graphml xmlns="http://graphml.graphdrawing.org/xmlns">"#
    )
    .map_err(io_err)?;
    writeln!(
        out,
        r#"  <key id="d0" for="node" attr.name="domains" attr.type="string"/>"#
    )
    .map_err(io_err)?;
    writeln!(
        out,
        r#"  <key id="d1" for="node" attr.name="betweenness" attr.type="double"/>"#
    )
    .map_err(io_err)?;
    writeln!(
        out,
        r#"  <key id="d2" for="edge" attr.name="weight" attr.type="long"/>"#
    )
    .map_err(io_err)?;
    writeln!(
        out,
        r#"  <key id="d3" for="graph" attr.name="window" attr.type="string"/>"#
    )
    .map_err(io_err)?;
    writeln!(
        out,
        r#"  <key id="d4" for="graph" attr.name="min_copubs" attr.type="long"/>"#
    )
    .map_err(io_err)?;
    writeln!(out, r#"  <graph id="G" edgedefault="undirected">"#).map_err(io_err)?;
    writeln!(
        out,
        r#"    <data key="d3">{}</data>"#,
        xml_escape(&graph.window().label())
    )
    .map_err(io_err)?;
    writeln!(out, r#"    <data key="d4">{}</data>"#, graph.min_copubs()).map_err(io_err)?;
    for (key, info) in graph.vertices() {
        let domains: Vec<&str> = info.domains.iter().map(|s| s.as_str()).collect();
        let b = scores.get(key).copied().unwrap_or(0.0);
        writeln!(
            out,
            r#"    <node id="{}"><data key="d0">{}</data><data key="d1">{}</data></node>"#,
            xml_escape(key.as_str()),
            xml_escape(&domains.join(";")),
            b
        )
        .map_err(io_err)?;
    }
    for (a, b, w) in graph.edges() {
        writeln!(
            out,
            r#"    <edge source="{}" target="{}"><data key="d2">{}</data></edge>"#,
            xml_escape(a.as_str()),
            xml_escape(b.as_str()),
            w
        )
        .map_err(io_err)?;
    }
    writeln!(out, "  </graph>").map_err(io_err)?;
    writeln!(out, "</graphml>").map_err(io_err)?;
    Ok(())
}

fn attr_between<'a>(line: &'a str, prefix: &str, suffix: &str) -> Option<&'a str> {
    let start = line.find(prefix)? + prefix.len();
    let rest = &line[start..];
    let end = rest.find(suffix)?;
    Some(&rest[..end])
}

fn parse_window(label: &str) -> Result<YearRange> {
    let (a, b) = label
        .split_once('-')
        .ok_or_else(|| Error::Invalid(format!("invalid window label {label:?}")))?;
    let start: i32 = a
        .trim()
        .parse()
        .map_err(|_| Error::Invalid(format!("invalid window start {a:?}")))?;
    let end: i32 = b
        .trim()
        .parse()
        .map_err(|_| Error::Invalid(format!("invalid window end {b:?}")))?;
    Ok(YearRange::new(start, end))
}

fn parse_domains(field: &str) -> std::collections::BTreeSet<String> {
    field
        .split(';')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

/// Reads a graph written by [`write_graphml`], returning the graph and
/// the stored betweenness scores.
pub fn read_graphml<R: BufRead>(input: R) -> Result<(CoauthorshipGraph, Scores)> {
    let mut window: Option<YearRange> = None;
    let mut min_copubs: u32 = 1;
    let mut vertices: BTreeMap<AuthorKey, VertexInfo> = BTreeMap::new();
    let mut scores: Scores = BTreeMap::new();
    let mut edges: Vec<((AuthorKey, AuthorKey), u32)> = Vec::new();

    for (idx, line) in input.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::io("<graphml>", e))?;
        let line = line.trim();
        if line.starts_with("<node ") {
            let id = attr_between(line, r#"id=""#, "\"")
                .ok_or_else(|| Error::parse("<graphml>", lineno, "node without id"))?;
            let domains = attr_between(line, r#"<data key="d0">"#, "</data>").unwrap_or("");
            let betweenness = attr_between(line, r#"<data key="d1">"#, "</data>")
                .unwrap_or("0")
                .parse::<f64>()
                .map_err(|_| Error::parse("<graphml>", lineno, "invalid betweenness"))?;
            let key = AuthorKey(xml_unescape(id));
            vertices.insert(
                key.clone(),
                VertexInfo {
                    domains: parse_domains(&xml_unescape(domains)),
                    publications: Default::default(),
                },
            );
            scores.insert(key, betweenness);
        } else if line.starts_with("<edge ") {
            let source = attr_between(line, r#"source=""#, "\"")
                .ok_or_else(|| Error::parse("<graphml>", lineno, "edge without source"))?;
            let target = attr_between(line, r#"target=""#, "\"")
                .ok_or_else(|| Error::parse("<graphml>", lineno, "edge without target"))?;
            let weight = attr_between(line, r#"<data key="d2">"#, "</data>")
                .unwrap_or("1")
                .parse::<u32>()
                .map_err(|_| Error::parse("<graphml>", lineno, "invalid weight"))?;
            edges.push((
                (
                    AuthorKey(xml_unescape(source)),
                    AuthorKey(xml_unescape(target)),
                ),
                weight,
            ));
        } else if line.starts_with(r#"<data key="d3">"#) {
            let label = attr_between(line, r#"<data key="d3">"#, "</data>")
                .ok_or_else(|| Error::parse("<graphml>", lineno, "bad window data"))?;
            window = Some(parse_window(&xml_unescape(label))?);
        } else if line.starts_with(r#"<data key="d4">"#) {
            let v = attr_between(line, r#"<data key="d4">"#, "</data>")
                .ok_or_else(|| Error::parse("<graphml>", lineno, "bad min_copubs data"))?;
            min_copubs = v
                .parse()
                .map_err(|_| Error::parse("<graphml>", lineno, "invalid min_copubs"))?;
        }
    }
    let window =
        window.ok_or_else(|| Error::Invalid("graphml missing window attribute".into()))?;
    let graph = CoauthorshipGraph::from_parts(window, min_copubs, vertices, edges)?;
    Ok((graph, scores))
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn dot_unescape(s: &str) -> String {
    s.replace("\\\"", "\"").replace("\\\\", "\\")
}

/// Fixed fill palette; distinct domain-label sets are assigned colors in
/// sorted order, wrapping when exhausted.
const PALETTE: &[&str] = &[
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666",
];

/// Writes DOT. Node width scales with betweenness, fill color encodes
/// the domain-label set, edge pen width scales with weight.
pub fn write_dot<W: Write>(graph: &CoauthorshipGraph, scores: &Scores, mut out: W) -> Result<()> {
    let io_err = |e: std::io::Error| Error::io("<dot>", e);
    let max_b = scores.values().copied().fold(0.0f64, f64::max);
    let label_sets: Vec<String> = {
        let mut sets: Vec<String> = graph
            .vertices()
            .map(|(_, info)| {
                info.domains
                    .iter()
                    .map(|s| s.as_str())
                    .collect::<Vec<_>>()
                    .join(";")
            })
            .collect();
        sets.sort();
        sets.dedup();
        sets
    };
    let color_of = |domains: &str| -> &str {
        match label_sets.iter().position(|s| s == domains) {
            Some(i) => PALETTE[i % PALETTE.len()],
            None => PALETTE[PALETTE.len() - 1],
        }
    };

    writeln!(out, "graph coauthorship {{").map_err(io_err)?;
    writeln!(
        out,
        "  graph [window=\"{}\", min_copubs={}];",
        graph.window().label(),
        graph.min_copubs()
    )
    .map_err(io_err)?;
    writeln!(out, "  node [shape=circle, style=filled];").map_err(io_err)?;
    for (key, info) in graph.vertices() {
        let domains: Vec<&str> = info.domains.iter().map(|s| s.as_str()).collect();
        let domains = domains.join(";");
        let b = scores.get(key).copied().unwrap_or(0.0);
        let width = if max_b > 0.0 {
            0.3 + 0.7 * (b / max_b)
        } else {
            0.3
        };
        writeln!(
            out,
            "  \"{}\" [domains=\"{}\", betweenness={}, width={:.3}, fillcolor=\"{}\"];",
            dot_escape(key.as_str()),
            dot_escape(&domains),
            b,
            width,
            color_of(&domains)
        )
        .map_err(io_err)?;
    }
    for (a, b, w) in graph.edges() {
        writeln!(
            out,
            "  \"{}\" -- \"{}\" [weight={}, penwidth={:.1}];",
            dot_escape(a.as_str()),
            dot_escape(b.as_str()),
            w,
            w as f64
        )
        .map_err(io_err)?;
    }
    writeln!(out, "}}").map_err(io_err)?;
    Ok(())
}

/// Splits a DOT line on the first `"a" -- "b"` pair outside quotes;
/// crude but sufficient for the writer's own output.
fn split_dot_edge(line: &str) -> Option<(String, String, &str)> {
    let line = line.trim().trim_end_matches(';');
    let rest = line.strip_prefix('"')?;
    let mut first = String::new();
    let mut chars = rest.char_indices();
    let mut end = 0;
    let mut escaped = false;
    for (i, ch) in chars.by_ref() {
        if escaped {
            first.push(ch);
            escaped = false;
        } else if ch == '\\' {
            escaped = true;
        } else if ch == '"' {
            end = i;
            break;
        } else {
            first.push(ch);
        }
    }
    let rest = &rest[end + 1..];
    let rest = rest.trim_start();
    let rest = rest.strip_prefix("--")?.trim_start();
    let rest = rest.strip_prefix('"')?;
    let close = find_unescaped_quote(rest)?;
    let second = dot_unescape(&rest[..close]);
    let attrs = rest[close + 1..].trim();
    Some((first, second, attrs))
}

fn find_unescaped_quote(s: &str) -> Option<usize> {
    let mut escaped = false;
    for (i, ch) in s.char_indices() {
        if escaped {
            escaped = false;
        } else if ch == '\\' {
            escaped = true;
        } else if ch == '"' {
            return Some(i);
        }
    }
    None
}

/// Reads a graph written by [`write_dot`].
pub fn read_dot<R: BufRead>(input: R) -> Result<(CoauthorshipGraph, Scores)> {
    let mut window: Option<YearRange> = None;
    let mut min_copubs: u32 = 1;
    let mut vertices: BTreeMap<AuthorKey, VertexInfo> = BTreeMap::new();
    let mut scores: Scores = BTreeMap::new();
    let mut edges: Vec<((AuthorKey, AuthorKey), u32)> = Vec::new();

    for (idx, line) in input.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::io("<dot>", e))?;
        let trimmed = line.trim();
        if trimmed.starts_with("graph [") {
            let label = attr_between(trimmed, "window=\"", "\"")
                .ok_or_else(|| Error::parse("<dot>", lineno, "graph line without window"))?;
            window = Some(parse_window(label)?);
            if let Some(v) = attr_between(trimmed, "min_copubs=", "]") {
                min_copubs = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse("<dot>", lineno, "invalid min_copubs"))?;
            }
        } else if trimmed.starts_with('"') {
            if let Some((a, b, attrs)) = split_dot_edge(trimmed) {
                let weight = attr_between(attrs, "weight=", ",")
                    .or_else(|| attr_between(attrs, "weight=", "]"))
                    .unwrap_or("1")
                    .trim()
                    .parse::<u32>()
                    .map_err(|_| Error::parse("<dot>", lineno, "invalid weight"))?;
                edges.push(((AuthorKey(a), AuthorKey(b)), weight));
            } else {
                // node line: "id" [domains="...", betweenness=..., ...];
                let rest = trimmed.strip_prefix('"').unwrap();
                let close = find_unescaped_quote(rest)
                    .ok_or_else(|| Error::parse("<dot>", lineno, "unterminated node id"))?;
                let key = AuthorKey(dot_unescape(&rest[..close]));
                let attrs = rest[close + 1..].trim();
                let domains = attr_between(attrs, "domains=\"", "\"").unwrap_or("");
                let betweenness = attr_between(attrs, "betweenness=", ",")
                    .or_else(|| attr_between(attrs, "betweenness=", "]"))
                    .unwrap_or("0")
                    .trim()
                    .parse::<f64>()
                    .map_err(|_| Error::parse("<dot>", lineno, "invalid betweenness"))?;
                vertices.insert(
                    key.clone(),
                    VertexInfo {
                        domains: parse_domains(&dot_unescape(domains)),
                        publications: Default::default(),
                    },
                );
                scores.insert(key, betweenness);
            }
        }
    }
    let window = window.ok_or_else(|| Error::Invalid("dot missing window attribute".into()))?;
    let graph = CoauthorshipGraph::from_parts(window, min_copubs, vertices, edges)?;
    Ok((graph, scores))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::metrics::betweenness;
    use crate::graph::testutil::graph_with_domains;

    fn sample() -> CoauthorshipGraph {
        graph_with_domains(
            &[("ael, m", "beta, k", 2), ("beta, k", "gamma \"g\", x", 3)],
            &[
                ("ael, m", &["RET"]),
                ("beta, k", &["NNM", "RET"]),
                ("gamma \"g\", x", &["NNM"]),
            ],
        )
    }

    #[test]
    fn graphml_round_trip() {
        let g = sample();
        let scores = betweenness(&g);
        let mut buf = Vec::new();
        write_graphml(&g, &scores, &mut buf).unwrap();
        let (g2, scores2) = read_graphml(std::io::Cursor::new(&buf)).unwrap();
        assert_eq!(g.window(), g2.window());
        assert_eq!(g.min_copubs(), g2.min_copubs());
        assert_eq!(
            g.vertices()
                .map(|(k, i)| (k.clone(), i.domains.clone()))
                .collect::<Vec<_>>(),
            g2.vertices()
                .map(|(k, i)| (k.clone(), i.domains.clone()))
                .collect::<Vec<_>>()
        );
        assert_eq!(
            g.edges().collect::<Vec<_>>(),
            g2.edges().collect::<Vec<_>>()
        );
        assert_eq!(scores, scores2);
    }

    #[test]
    fn dot_round_trip() {
        let g = sample();
        let scores = betweenness(&g);
        let mut buf = Vec::new();
        write_dot(&g, &scores, &mut buf).unwrap();
        let (g2, scores2) = read_dot(std::io::Cursor::new(&buf)).unwrap();
        assert_eq!(g.window(), g2.window());
        assert_eq!(
            g.vertices()
                .map(|(k, i)| (k.clone(), i.domains.clone()))
                .collect::<Vec<_>>(),
            g2.vertices()
                .map(|(k, i)| (k.clone(), i.domains.clone()))
                .collect::<Vec<_>>()
        );
        assert_eq!(
            g.edges().collect::<Vec<_>>(),
            g2.edges().collect::<Vec<_>>()
        );
        assert_eq!(scores, scores2);
    }

    #[test]
    fn writes_are_deterministic() {
        let g = sample();
        let scores = betweenness(&g);
        let mut a = Vec::new();
        let mut b = Vec::new();
        write_graphml(&g, &scores, &mut a).unwrap();
        write_graphml(&g, &scores, &mut b).unwrap();
        assert_eq!(a, b);
        let mut c = Vec::new();
        let mut d = Vec::new();
        write_dot(&g, &scores, &mut c).unwrap();
        write_dot(&g, &scores, &mut d).unwrap();
        assert_eq!(c, d);
    }
}
