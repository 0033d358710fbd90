#!/usr/bin/env python3
"""Independent recount of every derived fixture value.

Reads only the shipped fixture files, term lists and data tables, and
recomputes retrieval sets, per-window graphs, the boundary-spanning
network, indicators, funding correlations and impact ratios from the
documented rules, writing crates/spanalyze/fixtures/manifest.json.
The Rust test suite asserts the library reproduces these numbers.

Requires networkx (betweenness and components come from it so the graph
math is computed by an implementation unrelated to the library's).
"""

import csv
import json
import math
import os
from collections import defaultdict
from itertools import combinations

import networkx as nx

HERE = os.path.dirname(os.path.abspath(__file__))
ROOT = os.path.normpath(os.path.join(HERE, ".."))
FIXTURES = os.path.join(ROOT, "crates", "spanalyze", "fixtures")

STUDY = (2000, 2015)
SLIDING = [(2002, 2007), (2005, 2010), (2008, 2013)]
FUNDING_YEARS = list(range(2003, 2014))
MIN_COPUBS = 2
MIN_CONTRIBS = 10
EU28 = {"AT", "BE", "BG", "CY", "CZ", "DE", "DK", "EE", "EL", "ES", "FI", "FR",
        "HR", "HU", "IE", "IT", "LT", "LU", "LV", "MT", "NL", "PL", "PT", "RO",
        "SE", "SI", "SK", "UK"}
NEIGHBORS = {"AL", "BA", "ME", "MK", "RS", "XK"}
HOME = "EL"

# ----------------------------------------------------- text normalization

EXCEPTIONS = {"analysis", "apparatus", "basis", "bias", "class", "gas", "glass",
              "hypothesis", "lens", "loss", "mass", "process", "series",
              "species", "status", "stress", "synthesis", "thesis"}
OVERRIDES = {"analyses": "analysis", "gases": "gas", "hypotheses": "hypothesis",
             "lenses": "lens", "media": "medium", "spectra": "spectrum",
             "syntheses": "synthesis", "theses": "thesis"}


def sing_step(t):
    if len(t) <= 3 or t in EXCEPTIONS:
        return t
    if t in OVERRIDES:
        return OVERRIDES[t]
    if t.endswith("ss") or t.endswith("us") or t.endswith("is"):
        return t
    if t.endswith("sses"):
        return t[:-2]
    if t.endswith("ies") and len(t) > 4:
        return t[:-3] + "y"
    if t.endswith("ses"):
        return t[:-2]
    if t.endswith("s"):
        return t[:-1]
    return t


def singularize(t):
    for _ in range(16):
        nxt = sing_step(t)
        if nxt == t:
            return t
        t = nxt
    return t


def tokenize(text, sing=True):
    word, out = "", []
    for ch in text:
        if ch.isalnum():
            word += ch.lower()
        elif word:
            out.append(singularize(word) if sing else word)
            word = ""
    if word:
        out.append(singularize(word) if sing else word)
    return tuple(out)


def contains(tokens, phrase):
    if not phrase or len(phrase) > len(tokens):
        return False
    return any(tokens[i:i + len(phrase)] == phrase
               for i in range(len(tokens) - len(phrase) + 1))


def load_terms(path):
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.split("#")[0].strip()
            if line:
                t = tokenize(line)
                if t and t not in out:
                    out.append(t)
    return out

# ------------------------------------------------------------- load files

records = {}
with open(os.path.join(FIXTURES, "corpus_small.jsonl")) as fh:
    raw_lines = [json.loads(l) for l in fh if l.strip()]
for r in raw_lines:
    assert r["id"] not in records
    records[r["id"]] = r
assert len(records) == 300

links = []
with open(os.path.join(FIXTURES, "citations_small.csv")) as fh:
    for row in csv.reader(fh):
        citing, cited, year = row[0].strip(), row[1].strip(), int(row[2])
        if citing == cited or cited not in records:
            continue
        if year < records[cited]["year"]:
            continue
        links.append((citing, cited, year))

oversized = sorted(r["id"] for r in records.values() if len(r["authors"]) > 100)
cleaned = {rid: r for rid, r in records.items() if len(r["authors"]) <= 100}
clean_links = [l for l in links if l[1] in cleaned]

registry = {}
with open(os.path.join(FIXTURES, "registry.psv")) as fh:
    for line in fh:
        line = line.split("#")[0].strip()
        if not line:
            continue
        name, cls, region, country = [p.strip() for p in line.split("|")]
        registry[" ".join(tokenize(name))] = (int(cls), region, country)

aliases = {}
with open(os.path.join(FIXTURES, "aliases.txt")) as fh:
    for line in fh:
        line = line.split("#")[0].strip()
        if line:
            raw, key = line.split("|")
            aliases[raw.strip()] = key.strip()

# ------------------------------------------------------------- retrieval

ret_terms = load_terms(os.path.join(ROOT, "terms", "ret.txt"))
nnm_terms = load_terms(os.path.join(ROOT, "terms", "nnm.txt"))
exclusions = load_terms(os.path.join(ROOT, "terms", "exclusions.txt"))


def fields_of(r):
    return [tokenize(r["title"]), tokenize(r["abstract"])] + \
        [tokenize(k) for k in r["keywords"]]


def matches(r, terms):
    fields = fields_of(r)
    return any(contains(f, t) for t in terms for f in fields)


def excluded(r):
    text = [tokenize(r["title"]), tokenize(r["abstract"])]
    return any(contains(f, e) for e in exclusions for f in text)


def keyword_retrieve(terms):
    return sorted(rid for rid, r in cleaned.items()
                  if matches(r, terms) and not excluded(r))


domains = {
    "RET": keyword_retrieve(ret_terms),
    "NNM": keyword_retrieve(nnm_terms),
    "EECS": sorted(rid for rid, r in cleaned.items()
                   if set(r["subjects"]) & {"Electrical and Electronic Engineering",
                                            "Computer Science"}),
}
DOMAIN_ORDER = ["RET", "NNM", "EECS"]
assert len(domains["RET"]) == 41, len(domains["RET"])

# --------------------------------------------------------------- keying


def author_key(raw):
    raw = raw.strip()
    if raw in aliases:
        return aliases[raw]
    if "," in raw:
        surname, given = raw.split(",", 1)
    else:
        parts = raw.rsplit(None, 1)
        surname, given = (parts[1], parts[0]) if len(parts) == 2 else (raw, "")
    s = " ".join(tokenize(surname, sing=False))
    initials = "".join(t[0] for t in tokenize(given, sing=False))
    return f"{s}, {initials}" if initials else s

# --------------------------------------------------------- classification

cited_index = defaultdict(list)
citing_index = defaultdict(list)
for citing, cited, year in clean_links:
    cited_index[cited].append((citing, year))
    citing_index[citing].append((cited, year))


def is_cited(r):
    return any(y in (r["year"], r["year"] + 1) for _, y in cited_index[r["id"]])


def resolved_affiliations(r):
    out = []
    for a in r["authors"]:
        if not any(k in a for k in ("org", "region", "country")):
            continue
        org = " ".join(tokenize(a["org"])) if a.get("org") else None
        reg = registry.get(org) if org else None
        region = a.get("region") or (reg[1] if reg else None)
        country = a.get("country") or (reg[2] if reg else None)
        sector = None
        if reg:
            cls = reg[0]
            sector = ("HEI" if cls <= 3 else "GRC" if cls <= 6 else
                      "Health" if cls <= 8 else "Private")
        out.append((org, sector, region, country))
    return out


def is_international(r):
    affs = resolved_affiliations(r)
    countries = {c for _, _, _, c in affs if c}
    if HOME not in countries:
        return None  # outside collection scope; skipped by the filter
    return any(c != HOME for c in countries)

# ------------------------------------------------------------ graph build


def build_graph(pub_ids, window):
    weights = defaultdict(int)
    author_pubs = defaultdict(set)
    for rid in pub_ids:
        r = cleaned[rid]
        if not (window[0] <= r["year"] <= window[1]):
            continue
        if not is_cited(r):
            continue
        if is_international(r) is not True:
            continue
        keys = sorted({author_key(a["name"]) for a in r["authors"]})
        for k in keys:
            author_pubs[k].add(rid)
        for a, b in combinations(keys, 2):
            weights[(a, b)] += 1
    edges = {pair: w for pair, w in weights.items() if w >= MIN_COPUBS}
    vertices = sorted({v for pair in edges for v in pair})
    return vertices, edges


def boundary(graphs):
    appearance = defaultdict(set)
    for name, (vs, _) in graphs.items():
        for v in vs:
            appearance[v].add(name)
    qualifying = {v: names for v, names in appearance.items() if len(names) >= 2}
    edges = {}
    for name, (_, es) in graphs.items():
        for (a, b), w in es.items():
            if a in qualifying and b in qualifying:
                edges[(a, b)] = max(edges.get((a, b), 0), w)
    return qualifying, edges


def nx_graph(vertices, edges):
    g = nx.Graph()
    g.add_nodes_from(vertices)
    for (a, b), w in edges.items():
        g.add_edge(a, b, weight=w)
    return g


def descriptors(vertices, edges):
    n, m = len(vertices), len(edges)
    g = nx_graph(vertices, edges)
    comps = sorted((len(c) for c in nx.connected_components(g)), reverse=True)
    return {
        "n": n,
        "m": m,
        "clusters": len(comps),
        "max_cluster": max(comps) if comps else 0,
        "density": (2.0 * m / (n * (n - 1))) if n >= 2 else 0.0,
        "avg_collaborators": (2.0 * m / n) if n else 0.0,
        "sizes": comps,
    }


def nc50(sizes):
    total = sum(sizes)
    needed = (total + 1) // 2
    got = 0
    for i, s in enumerate(sizes):
        got += s
        if got >= needed:
            return i + 1
    return None


def partition(qualifying):
    cats = [("RET", "NNM"), ("RET", "EECS"), ("NNM", "EECS"), ("RET", "NNM", "EECS")]
    counts = [0] * len(cats)
    for v, names in qualifying.items():
        key = tuple(d for d in DOMAIN_ORDER if d in names)
        counts[cats.index(key)] += 1
    total = sum(counts)
    fractions = [c / total for c in counts]
    v_div = 1.0 - sum(p * p for p in fractions)
    h_div = sum(p * math.log10(1.0 / p) for p in fractions if p > 0)
    return ["∩".join(c) for c in cats], counts, fractions, v_div, h_div

# ------------------------------------------------------------ window sweep

window_report = {}
for window in SLIDING:
    label = f"{window[0]}-{window[1]}"
    graphs = {name: build_graph(ids, window) for name, ids in domains.items()}
    entry = {}
    for name in DOMAIN_ORDER:
        entry[name] = descriptors(*graphs[name])
        del entry[name]["sizes"]
    qualifying, bedges = boundary(graphs)
    b_desc = descriptors(sorted(qualifying), bedges)
    cats, counts, fractions, v_div, h_div = partition(qualifying)
    entry["boundary"] = {
        **{k: v for k, v in b_desc.items() if k != "sizes"},
        "cluster_sizes": b_desc["sizes"],
        "nc50": nc50(b_desc["sizes"]),
        "categories": cats,
        "partition_counts": counts,
        "v": v_div,
        "h": h_div,
    }
    window_report[label] = entry

final = window_report["2008-2013"]["boundary"]
assert final["partition_counts"] == [10, 0, 6, 1], final["partition_counts"]
assert final["cluster_sizes"] == [5, 4, 3, 3, 2], final["cluster_sizes"]
assert abs(final["v"] - 0.52) <= 0.01

# final-window boundary graph dump with betweenness (networkx)
fwindow = SLIDING[-1]
fgraphs = {name: build_graph(ids, fwindow) for name, ids in domains.items()}
fqual, fedges = boundary(fgraphs)
fg = nx_graph(sorted(fqual), fedges)
fbetween = nx.betweenness_centrality(fg, normalized=False)
boundary_final = {
    "window": f"{fwindow[0]}-{fwindow[1]}",
    "vertices": [[v, sorted(fqual[v], key=DOMAIN_ORDER.index)] for v in sorted(fqual)],
    "edges": [[a, b, w] for (a, b), w in sorted(fedges.items())],
    "betweenness": {v: fbetween[v] for v in sorted(fqual)},
}

# final-window RET graph dump with betweenness, for the golden export
ret_vs, ret_es = fgraphs["RET"]
ret_nx = nx_graph(ret_vs, ret_es)
ret_between = nx.betweenness_centrality(ret_nx, normalized=False)
ret_final = {
    "window": f"{fwindow[0]}-{fwindow[1]}",
    "vertices": sorted(ret_vs),
    "edges": [[a, b, w] for (a, b), w in sorted(ret_es.items())],
    "betweenness": {v: ret_between[v] for v in sorted(ret_vs)},
}

# ------------------------------------------------------- funding windows

gerd = {}
with open(os.path.join(ROOT, "data", "gerd_national.csv")) as fh:
    for row in csv.DictReader(fh):
        if row["gerd"].strip() != ":":
            gerd[int(row["year"])] = float(row["gerd"])

n_clusters = []
cumulative = []
for y in FUNDING_YEARS:
    graphs = {name: build_graph(ids, (2003, y)) for name, ids in domains.items()}
    qual, bedges = boundary(graphs)
    g = nx_graph(sorted(qual), bedges)
    n_clusters.append(nx.number_connected_components(g))
    cumulative.append(sum(gerd[x] for x in range(2003, y + 1)))

assert n_clusters == [1, 2, 3, 3, 3, 4, 6, 7, 8, 10, 12], n_clusters


def pearson(xs, ys):
    n = len(xs)
    mx, my = sum(xs) / n, sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    syy = sum((y - my) ** 2 for y in ys)
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    return sxy / math.sqrt(sxx * syy)


r_funding = pearson([float(c) for c in n_clusters], cumulative)
assert r_funding > 0.95, r_funding

# fit H on Nc50 across sliding windows
xs = [float(window_report[f"{a}-{b}"]["boundary"]["nc50"]) for a, b in SLIDING]
ys = [window_report[f"{a}-{b}"]["boundary"]["h"] for a, b in SLIDING]
mx, my = sum(xs) / 3, sum(ys) / 3
sxx = sum((x - mx) ** 2 for x in xs)
sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
slope = sxy / sxx
intercept = my - slope * mx
ss_res = sum((y - (slope * x + intercept)) ** 2 for x, y in zip(xs, ys))
ss_tot = sum((y - my) ** 2 for y in ys)
fit = {"slope": slope, "intercept": intercept,
       "r_squared": 1.0 - ss_res / ss_tot, "n_points": 3}

# ------------------------------------------------- expansion (both corpora)


def keyword_counts(ids, recmap):
    counts = defaultdict(int)
    for rid in ids:
        for k in recmap[rid]["keywords"]:
            t = tokenize(k)
            if t:
                counts[" ".join(t)] += 1
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return ranked


def cdf_survivors(ranked, cutoff):
    if not ranked:
        return [], 0
    total = sum(c for _, c in ranked)
    threshold = ranked[0][1]
    cum = 0
    for _, c in ranked:
        cum += c
        if cum / total <= cutoff:
            threshold = c
        else:
            break
    return [(k, c) for k, c in ranked if c >= threshold], threshold


def retrieve_terms(recmap, terms, exclusions_):
    out = set()
    for rid, r in recmap.items():
        fields = fields_of(r)
        if any(contains(f, t) for t in terms for f in fields):
            text = [tokenize(r["title"]), tokenize(r["abstract"])]
            if not any(contains(f, e) for e in exclusions_ for f in text):
                out.add(rid)
    return out


def expand(recmap, seeds, exclusions_, cutoff, top_k, rounds):
    terms = list(seeds)
    trace = []
    for rnd in range(1, rounds + 1):
        core = retrieve_terms(recmap, terms, exclusions_)
        ranked = keyword_counts(sorted(core), recmap)
        survivors, threshold = cdf_survivors(ranked, cutoff)
        start_terms = list(terms)
        accepted, rejected = [], []
        for kw, count in survivors:
            kw_tokens = tokenize(kw)
            if kw_tokens in start_terms:
                rejected.append([kw, "already_term"])
                continue
            if any(contains(kw_tokens, e) for e in exclusions_):
                rejected.append([kw, "excluded"])
                continue
            carriers = {rid for rid, r in recmap.items()
                        if any(" ".join(tokenize(k)) == kw for k in r["keywords"])}
            top = keyword_counts(sorted(carriers), recmap)[:top_k]
            just = next((t for t in start_terms
                         if any(contains(tokenize(k), t) for k, _ in top)), None)
            if just is not None:
                accepted.append([kw, " ".join(just)])
                terms.append(kw_tokens)
            else:
                rejected.append([kw, "no_seed_among_top_keywords"])
        trace.append({
            "round": rnd, "core_size": len(core), "threshold": threshold,
            "candidates": [[k, c] for k, c in survivors],
            "accepted": accepted, "rejected": rejected,
        })
        if not accepted:
            break
    return [" ".join(t) for t in terms], trace


# RET over the main corpus with default config must be a fixed point.
_, ret_trace = expand(cleaned, ret_terms, exclusions, 0.05, 20, 1)
assert not ret_trace[0]["accepted"], ret_trace[0]["accepted"]

exp_records = {}
with open(os.path.join(FIXTURES, "expansion_corpus.jsonl")) as fh:
    for line in fh:
        r = json.loads(line)
        exp_records[r["id"]] = r
final_terms, exp_trace = expand(
    exp_records, [tokenize("solar cell")], exclusions, 0.95, 5, 2)
assert final_terms == ["solar cell", "dye sensitized", "redox electrolyte"], final_terms
assert exp_trace[0]["core_size"] == 18 and exp_trace[0]["threshold"] == 6
assert any(k == "water" and r == "excluded" for k, r in exp_trace[0]["rejected"])
assert any(k == "efficiency" and r == "no_seed_among_top_keywords"
           for k, r in exp_trace[1]["rejected"])

# ------------------------------------------------- impact & self-citation


def count_by_year(ids):
    out = defaultdict(int)
    for rid in ids:
        out[cleaned[rid]["year"]] += 1
    return out


def ci_raw(ids, year):
    idset = set(ids)
    by_year = count_by_year(ids)
    denom = by_year.get(year - 1, 0) + by_year.get(year - 2, 0)
    num = 0
    for rid in idset:
        r = cleaned[rid]
        if r["year"] in (year - 1, year - 2):
            num += sum(1 for _, y in cited_index[rid] if y == year)
    return num / denom


def reference_ci(ids, year):
    by_cat = defaultdict(set)
    for rid in ids:
        for cat in cleaned[rid]["subjects"]:
            by_cat[cat].add(rid)
    wsum = wtot = 0.0
    for cat_ids in by_cat.values():
        by_year = count_by_year(cat_ids)
        denom = by_year.get(year - 1, 0) + by_year.get(year - 2, 0)
        if denom == 0:
            continue
        num = 0
        for rid in cat_ids:
            r = cleaned[rid]
            if r["year"] in (year - 1, year - 2):
                num += sum(1 for _, y in cited_index[rid] if y == year)
        wsum += denom * (num / denom)
        wtot += denom
    return wsum / wtot


ret_ids = domains["RET"]
international_ret = [rid for rid in ret_ids if is_international(cleaned[rid]) is True]
ci_dom = ci_raw(ret_ids, 2010)
ci_int = ci_raw(international_ret, 2010)
ref = reference_ci(ret_ids, 2010)
ci_rel_int = ci_int / ref
assert ci_rel_int > 1.0, ci_rel_int


def self_citation(ids, year):
    idset = set(ids)
    in_year = [rid for rid in ids if cleaned[rid]["year"] == year]
    count = 0
    for rid in in_year:
        for cited, _ in citing_index[rid]:
            if cited in idset and cleaned[cited]["year"] in (year, year - 1):
                count += 1
                break
    return count / len(in_year)


rate = self_citation(ret_ids, 2012)
assert abs(rate - 2.0 / 9.0) < 1e-12, rate

# ---------------------------------------------------- regional intensity

gerd_regions = {}
with open(os.path.join(ROOT, "data", "gerd_regions_2013.csv")) as fh:
    for row in csv.DictReader(fh):
        gerd_regions[row["region"]] = float(row["gerd"])


def region_counts(ids):
    # home-country regions only; the regional analysis is national
    counts = defaultdict(int)
    for rid in ids:
        regions = {region for _, _, region, c in resolved_affiliations(cleaned[rid])
                   if region and c == HOME}
        for region in regions:
            counts[region] += 1
    return dict(counts)


regional = {}
for name, ids in domains.items():
    counts = region_counts(ids)
    known = {r: c for r, c in counts.items() if r in gerd_regions}
    national = sum(known.values()) / sum(gerd_regions[r] for r in known)
    classes = {}
    for region, c in sorted(counts.items()):
        if c < MIN_CONTRIBS:
            classes[region] = "insignificant"
        else:
            ratio = c / gerd_regions[region]
            classes[region] = ("above" if ratio > national
                               else "below" if ratio < national else "at_average")
    regional[name] = {"counts": dict(sorted(counts.items())),
                      "national_ratio": national, "classes": classes}

# --------------------------------------------------------- sector shares


def sector_shares(ids):
    # national organizations only, matching the published typology scope
    whole = defaultdict(float)
    normalized = defaultdict(float)
    pubs = 0
    for rid in ids:
        sectors = {s for _, s, _, c in resolved_affiliations(cleaned[rid])
                   if s and c == HOME}
        pubs += 1
        if not sectors:
            continue
        for s in sectors:
            whole[s] += 1.0
            normalized[s] += 1.0 / len(sectors)
    return {"publications": pubs,
            "whole": dict(sorted(whole.items())),
            "normalized": dict(sorted(normalized.items()))}


# ---------------------------------------------------------------- output

manifest = {
    "ingest": {
        "records": 300,
        "record_errors": 0,
        "links_kept": len(links),
        "oversized_ids": oversized,
        "cleaned_records": len(cleaned),
        "cleaned_links": len(clean_links),
    },
    "retrieval": {name: {"count": len(ids), "ids": ids}
                  for name, ids in domains.items()},
    "windows": window_report,
    "boundary_final": boundary_final,
    "ret_final": ret_final,
    "funding": {
        "anchor": 2003,
        "years": FUNDING_YEARS,
        "n_clusters": n_clusters,
        "cumulative_gerd": cumulative,
        "pearson_r": r_funding,
    },
    "fit_h_on_nc50": fit,
    "expansion": {
        "seed": "solar cell",
        "cdf_cutoff": 0.95,
        "top_k": 5,
        "rounds": 2,
        "final_terms": final_terms,
        "trace": exp_trace,
    },
    "ret_expansion_fixed_point": True,
    "self_citation": {"domain": "RET", "year": 2012, "rate": rate},
    "impact": {
        "domain": "RET", "year": 2010,
        "ci_domain": ci_dom, "ci_international": ci_int,
        "reference": ref, "ci_rel_international": ci_rel_int,
        "international_pubs": sorted(international_ret),
    },
    "regional": regional,
    "sector_shares_ret": sector_shares(domains["RET"]),
}

out_path = os.path.join(FIXTURES, "manifest.json")
with open(out_path, "w") as fh:
    json.dump(manifest, fh, indent=1, ensure_ascii=False, sort_keys=True)
    fh.write("\n")
print(f"manifest written to {out_path}")
print(f"funding r={r_funding:.4f}  fit slope={slope:.5f}  "
      f"V3={final['v']:.5f}  H3={final['h']:.5f}  self-cite={rate:.4f}  "
      f"ci_rel_int={ci_rel_int:.4f}")
