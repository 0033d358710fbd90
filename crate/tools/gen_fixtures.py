#!/usr/bin/env python3
"""Deterministic fixture generator for the spanalyze test corpus.

Emits into crates/spanalyze/fixtures/:
  corpus_small.jsonl      300 records
  citations_small.csv     citation links
  expansion_corpus.jsonl  purpose-built query-expansion corpus
  registry.psv            organization registry
  aliases.txt             author alias table

The corpus is built from explicit teams so that per-window coauthorship
graphs, the boundary-spanning composition, cumulative cluster growth,
retrieval counts, and impact/self-citation ratios are known by
construction. tools/recount.py recomputes every derived value
independently from the emitted files and writes fixtures/manifest.json.

Sliding windows: 2002-2007, 2005-2010, 2008-2013.
Cumulative funding windows: [2003..y], y = 2003..2013.
Graph filters: min_copubs 2, international + cited required.
"""

import json
import os
import random

HERE = os.path.dirname(os.path.abspath(__file__))
FIXTURES = os.path.normpath(os.path.join(HERE, "..", "crates", "spanalyze", "fixtures"))

rng = random.Random(20160815)

# ------------------------------------------------------------------ names

SYLLABLES = ["pa", "ko", "mi", "la", "ste", "tri", "ni", "va", "do", "ka",
             "le", "zo", "tha", "ma", "ri", "sa", "to", "ve", "ga", "li"]
SUFFIXES = ["dis", "kos", "poulos", "ras", "nis", "tou", "kis", "los"]
FOREIGN_SURNAMES = ["Weber", "Klein", "Braun", "Dupont", "Moreau", "Smith",
                    "Johnson", "Jovanovic", "Petrovic", "Rossi", "Bianchi",
                    "Novak", "Keller", "Lang", "Fischer", "Laurent"]
INITIALS = "ABCDEGHIKLMNPRSTV"

used_surnames = set()


def greek_surname():
    while True:
        name = (rng.choice(SYLLABLES) + rng.choice(SYLLABLES) +
                rng.choice(SUFFIXES)).capitalize()
        if name not in used_surnames:
            used_surnames.add(name)
            return name


foreign_pool = list(FOREIGN_SURNAMES)


def foreign_surname():
    name = foreign_pool.pop(0) if foreign_pool else greek_surname() + "er"
    used_surnames.add(name)
    return name


def canonical_key(raw_name):
    """Mirror of the library's default author-keying rule."""
    raw = raw_name.strip()
    if "," in raw:
        surname, given = raw.split(",", 1)
    else:
        parts = raw.rsplit(None, 1)
        surname, given = (parts[1], parts[0]) if len(parts) == 2 else (raw, "")
    fold = lambda t: " ".join("".join(c.lower() if c.isalnum() else " " for c in t).split())
    s = fold(surname)
    initials = "".join(tok[0] for tok in fold(given).split())
    return f"{s}, {initials}" if initials else s

# ---------------------------------------------------------- organizations

HOME_ORGS = [
    ("National Technical University", 1, "Attica"),
    ("Metropolitan University", 1, "Attica"),
    ("Aegean Institute of Technology", 2, "North Aegean"),
    ("Thermi Research Center", 4, "Central Macedonia"),
    ("Heraklion Materials Institute", 4, "Crete"),
    ("Patras Energy Laboratory", 4, "Western Greece"),
    ("Ioannina Computing Center", 5, "Epirus"),
    ("Kozani Polytechnic", 1, "Western Macedonia"),
    ("Larissa General Hospital", 7, "Thessaly"),
    ("Volos Analytics", 9, "Thessaly"),
    ("Corfu Marine Observatory", 4, "Ionian Islands"),
    ("Kalamata Technical College", 2, "Peloponnese"),
]
FOREIGN_ORGS = [
    ("Berlin Materials Lab", 1, "DE30", "DE"),
    ("Lyon Institute of Photonics", 4, "FR71", "FR"),
    ("Cambridge Systems Group", 1, "UKH1", "UK"),
    ("Belgrade Nanocenter", 4, "RS00", "RS"),
    ("Boston Computation Lab", 1, "US-MA", "US"),
]
ORG_INFO = {n: (c, r, "EL") for n, c, r in HOME_ORGS}
ORG_INFO.update({n: (c, r, cc) for n, c, r, cc in FOREIGN_ORGS})


class Author:
    def __init__(self, surname, org):
        self.surname = surname
        initials = " ".join(f"{rng.choice(INITIALS)}." for _ in range(rng.choice([1, 1, 2])))
        self.name = f"{surname}, {initials}"
        self.org = org

    def entry(self, name_override=None):
        e = {"name": name_override or self.name}
        if self.org:
            cls, region, cc = ORG_INFO[self.org]
            e["org"] = self.org
            e["region"] = region
            e["country"] = cc
        return e


def make_team(size, home_orgs, foreign_org):
    """size members, the last one foreign-affiliated."""
    members = [Author(greek_surname(), home_orgs[i % len(home_orgs)])
               for i in range(size - 1)]
    members.append(Author(foreign_surname(), foreign_org))
    return members

# ------------------------------------------------------------- record store

records = []
citations = []
next_serial = [0]
ext_serial = [0]


def new_id():
    next_serial[0] += 1
    return f"P-{next_serial[0]:04d}"


def add_record(year, title, abstract, keywords, authors, subjects):
    rid = new_id()
    doc_type = "journal_article" if rng.random() < 0.8 else "proceedings_paper"
    records.append({
        "id": rid, "year": year, "type": doc_type, "title": title,
        "abstract": abstract, "keywords": keywords,
        "authors": authors, "subjects": subjects,
    })
    return rid


def cite(cited_id, year):
    ext_serial[0] += 1
    citations.append((f"EXT-{ext_serial[0]:04d}", cited_id, year))

# ------------------------------------------------------------------ teams

# Secondary keywords vary per team so no non-term keyword can tie with
# the leading query term in the expansion counts.
EXTRA_KEYWORDS = [
    "charge transport", "exciton dynamics", "electrode morphology",
    "interface engineering", "carrier lifetime", "tandem architecture",
    "defect passivation", "annealing protocol", "sol-gel route",
    "spray deposition", "band alignment", "grain boundary",
    "dopant profile", "encapsulation method", "roll coating",
]
_extra_serial = [0]


def next_extra():
    kw = EXTRA_KEYWORDS[_extra_serial[0] % len(EXTRA_KEYWORDS)]
    _extra_serial[0] += 1
    return kw


KINDS = {
    "ret_nnm": dict(
        title="Nanostructured electrodes for photovoltaic devices",
        keywords=["solar cell"],
        subjects=["Energy & Fuels", "Physical Chemistry"],
    ),
    "nnm_eecs": dict(
        title="Simulation-aided modeling of nanocomposite coatings",
        keywords=["nanocomposite"],
        subjects=["Computer Science", "Materials Science, Multidisciplinary"],
    ),
    "eecs": dict(
        title="Reliability modeling of microelectronic assemblies",
        keywords=["microelectronic reliability"],
        subjects=["Electrical and Electronic Engineering"],
    ),
    "ret": dict(
        title="Grid integration studies for wind turbines",
        keywords=["wind turbine"],
        subjects=["Energy & Fuels"],
    ),
    "nnm": dict(
        title="Growth of nanocrystalline layers",
        keywords=["nanoparticle"],
        subjects=["Physical Chemistry"],
    ),
}


def team_pub(team, kind, year, seq, name_overrides=None, subset=None):
    spec = KINDS[kind]
    authors = []
    for i, member in enumerate(team):
        if subset is not None and i not in subset:
            continue
        override = (name_overrides or {}).get(i)
        authors.append(member.entry(override))
    keywords = list(spec["keywords"]) + [next_extra()]
    rid = add_record(year, f"{spec['title']} {seq}", "",
                     keywords, authors, list(spec["subjects"]))
    cite(rid, year + 1)
    return rid


# Boundary teams. Publication years confine each team to one sliding
# window: within 2002-2004 (first window only), straddling 2005-2007 and
# 2008-2010 (middle window only), or within 2011-2013 (last window only).
BOUNDARY_TEAMS = [
    ("A1", 4, "ret_nnm", [2002, 2003, 2003],
     ["National Technical University", "Patras Energy Laboratory"], "Berlin Materials Lab"),
    ("A2", 2, "ret_nnm", [2003, 2004],
     ["Heraklion Materials Institute"], "Lyon Institute of Photonics"),
    ("A3", 2, "nnm_eecs", [2004, 2005],
     ["Ioannina Computing Center"], "Boston Computation Lab"),
    ("B1", 4, "ret_nnm", [2005, 2008],
     ["National Technical University", "Kozani Polytechnic"], "Berlin Materials Lab"),
    ("B2", 3, "ret_nnm", [2006, 2009],
     ["Patras Energy Laboratory", "Metropolitan University"], "Belgrade Nanocenter"),
    ("B3", 2, "nnm_eecs", [2007, 2010],
     ["Heraklion Materials Institute"], "Cambridge Systems Group"),
    ("B4", 2, "nnm_eecs", [2005, 2009],
     ["Ioannina Computing Center"], "Boston Computation Lab"),
    ("T1", 5, "ret_nnm", [2011, 2011, 2011],
     ["National Technical University", "Patras Energy Laboratory",
      "Thermi Research Center"], "Berlin Materials Lab"),
    ("T2", 4, "nnm_eecs", [2012, 2012],
     ["Ioannina Computing Center", "Metropolitan University"], "Boston Computation Lab"),
    ("T3", 3, "ret_nnm", [2011, 2012],
     ["Kozani Polytechnic", "Heraklion Materials Institute"], "Lyon Institute of Photonics"),
    ("T4", 3, "ret_nnm", [2012, 2013],
     ["National Technical University", "Thermi Research Center"], "Berlin Materials Lab"),
    ("T5", 2, "nnm_eecs", [2013, 2013],
     ["Heraklion Materials Institute"], "Cambridge Systems Group"),
]

teams = {}
team_pub_ids = {}
alias_lines = []

# T1's three publications overlap on partial author subsets (the
# foreign member and the lead bridge two sub-teams), so its cluster is
# not a clique and carries fractional betweenness.
AUTHOR_SUBSETS = {"T1": [[0, 1, 2, 4], None, [0, 3, 4]]}

for label, size, kind, years, home_orgs, foreign_org in BOUNDARY_TEAMS:
    team = make_team(size, home_orgs, foreign_org)
    teams[label] = (team, kind)
    ids = []
    for i, year in enumerate(years):
        overrides = None
        if label == "A1" and i == 2:
            # Misspelled variant of the first member, resolved by the
            # shipped alias table.
            variant = team[0].name.replace(team[0].surname,
                                           team[0].surname + "-Verikosta")
            overrides = {0: variant}
            alias_lines.append(f"{variant}|{canonical_key(team[0].name)}")
        subset = AUTHOR_SUBSETS.get(label, [None] * len(years))[i]
        ids.append(team_pub(team, kind, year, f"{label}{i + 1}", overrides, subset))
    team_pub_ids[label] = ids

# The triple-domain author: T4's first (home) member also publishes two
# EECS papers with a foreign partner who stays single-domain.
triple = teams["T4"][0][0]
partner = Author(foreign_surname(), "Boston Computation Lab")
for i, year in enumerate([2012, 2013]):
    team_pub([triple, partner], "eecs", year, f"X{i + 1}")

# Single-domain teams fattening the per-domain tables; never boundary.
R1 = make_team(3, ["Patras Energy Laboratory", "Kozani Polytechnic"],
               "Lyon Institute of Photonics")
r1_ids = [team_pub(R1, "ret", y, f"R{i + 1}")
          for i, y in enumerate([2003, 2006, 2009, 2012])]
N1 = make_team(3, ["Heraklion Materials Institute", "Thermi Research Center"],
               "Belgrade Nanocenter")
for i, y in enumerate([2003, 2004, 2006, 2009, 2011, 2012]):
    team_pub(N1, "nnm", y, f"N{i + 1}")
E1 = make_team(3, ["Ioannina Computing Center", "Metropolitan University"],
               "Cambridge Systems Group")
for i, y in enumerate([2003, 2004]):
    team_pub(E1, "eecs", y, f"E{i + 1}")
E2 = make_team(3, ["Ioannina Computing Center", "National Technical University"],
               "Boston Computation Lab")
for i, y in enumerate([2006, 2009, 2011, 2012]):
    team_pub(E2, "eecs", y, f"F{i + 1}")

# ------------------------------------------------- scattered domain records

solo_orgs = [n for n, _, _ in HOME_ORGS]


def solo_author():
    return Author(greek_surname(), rng.choice(solo_orgs))


RET_SOLO_TITLES = [
    ("Biodiesel yields from agricultural residues", ["biodiesel", "transesterification"]),
    ("Hydrogen storage in metal hydride beds", ["hydrogen storage", "metal hydride"]),
    ("Siting methodology for solar collectors", ["solar collector", "siting"]),
    ("Rooftop solar panels in dense districts", ["solar panel", "urban planning"]),
    ("Offshore wind energy resource mapping", ["wind energy", "resource assessment"]),
    ("Lifecycle assessment of biofuel blends", ["biofuel", "lifecycle assessment"]),
    ("Catalysts for hydrogen production pathways", ["hydrogen production", "catalyst"]),
    ("Renewable energy sources for island grids", ["renewable energy source", "island grid"]),
    ("Methanol fuel reformers for marine use", ["methanol fuel", "reformer"]),
    ("Solar thermal storage with phase change", ["solar thermal", "phase change material"]),
    ("Fuel cell stacks under load cycling", ["fuel cell", "load cycling"]),
    ("Green energy cooperatives and adoption", ["green energy", "cooperative"]),
]

# 2008/2009 national publications give the citation-impact denominators.
nat_team = [Author(greek_surname(), "National Technical University"),
            Author(greek_surname(), "Thermi Research Center"),
            Author(greek_surname(), "Metropolitan University")]
ci_national = []
for i, year in enumerate([2008, 2008, 2009, 2009]):
    title, kws = RET_SOLO_TITLES[i]
    rid = add_record(year, title, "", kws,
                     [a.entry() for a in nat_team], ["Energy & Fuels"])
    ci_national.append(rid)

# Extra 2010 citations: international publications draw clearly more.
b1_2008 = team_pub_ids["B1"][1]
b2_2009 = team_pub_ids["B2"][1]
for _ in range(3):
    cite(b1_2008, 2010)
for _ in range(2):
    cite(b2_2009, 2010)
cite(ci_national[0], 2010)

# Six national 2012 publications; exactly two cite a domain publication
# of 2011, fixing the self-citation rate at 2/9 for RET in 2012.
self_cite_2012 = []
for i in range(6):
    title, kws = RET_SOLO_TITLES[4 + i]
    rid = add_record(2012, title, "", kws, [solo_author().entry()], ["Energy & Fuels"])
    self_cite_2012.append(rid)
citations.append((self_cite_2012[0], team_pub_ids["T3"][0], 2012))
citations.append((self_cite_2012[1], team_pub_ids["T1"][0], 2012))

# Eleven more scattered national RET publications.
ret_scatter_years = [2002, 2003, 2004, 2005, 2006, 2007, 2010, 2010, 2013, 2013, 2014]
for i, year in enumerate(ret_scatter_years):
    title, kws = RET_SOLO_TITLES[(2 + i) % len(RET_SOLO_TITLES)]
    add_record(year, title, "", kws, [solo_author().entry()], ["Energy & Fuels"])

NNM_SOLO_TITLES = [
    ("Micelle formation in block copolymers", ["micelle", "block copolymer"]),
    ("Graphene growth on copper foils", ["graphene", "chemical vapor deposition"]),
    ("Quantum dots for photonic emitters", ["quantum dot", "photonic emitter"]),
    ("Monolayer deposition on patterned substrates", ["monolayer", "patterned substrate"]),
    ("Nanowire arrays for sensing electrodes", ["nanowire", "sensing electrode"]),
    ("Mesoporous frameworks for gas capture", ["mesoporous", "gas capture"]),
    ("Electronic structure of layered oxides", ["electronic structure", "layered oxide"]),
    ("Nanotube reinforcement of polymer blends", ["nanotube", "polymer blend"]),
    ("Thin films for protective coatings", ["thin film", "protective coating"]),
]
for i in range(9):
    title, kws = NNM_SOLO_TITLES[i]
    year = [2002, 2004, 2005, 2007, 2008, 2010, 2013, 2014, 2015][i]
    add_record(year, title, "", kws, [solo_author().entry()],
               ["Physical Chemistry"] if i % 2 else ["Materials Science, Multidisciplinary"])

EECS_SOLO_TITLES = [
    "Scheduling heuristics for embedded controllers",
    "Antenna arrays for rural telemetry",
    "Cache-aware compilation for signal processors",
    "Fault detection in distribution feeders",
    "Query planning over federated archives",
    "Low-power converters for microgrids",
    "Formal verification of ladder logic",
    "Spectrum allocation in dense deployments",
    "Incremental parsing for configuration languages",
    "Load forecasting with kernel methods",
    "Routing stability in campus backbones",
    "Error-correcting codes for telemetry links",
]
for i in range(12):
    year = [2002, 2003, 2005, 2006, 2007, 2009, 2010, 2011, 2012, 2013, 2014, 2015][i]
    subject = "Computer Science" if i % 2 == 0 else "Electrical and Electronic Engineering"
    add_record(year, EECS_SOLO_TITLES[i], "", [], [solo_author().entry()], [subject])

# Record matching a seed term but hit by the record-level exclusion rule.
add_record(2010, "Efficient solar cells for desalination plants",
           "Applications to water purification in arid regions are discussed.",
           ["solar cell", "desalination"], [solo_author().entry()], ["Energy & Fuels"])

# ------------------------------------------------------------- oversized

for i, (year, n_authors) in enumerate([(2009, 101), (2011, 105), (2013, 120)]):
    authors = [Author(greek_surname(), "National Technical University").entry()]
    for k in range(n_authors - 1):
        authors.append({"name": f"Collab{i}{k:03d}, M."})
    add_record(year, f"High-throughput measurement campaign {i + 1}",
               "", ["measurement campaign"], authors, ["Clinical Medicine"])

# ---------------------------------------------------------------- filler

filler_pool = [solo_author() for _ in range(60)]
FILLER_TITLES = [
    "Field observations from the southern basin",
    "A longitudinal study of coastal settlements",
    "Dietary patterns in rural communities",
    "Archival records of maritime trade",
    "Hospital admission trends across seasons",
    "Soil composition of olive groves",
    "Counting protocols for migratory birds",
    "Pricing dynamics in local markets",
    "Narrative structure in oral histories",
    "Rainfall variability and crop yields",
    "A catalogue of municipal archives",
    "Morphology of limestone formations",
    "School attendance and seasonal labor",
    "Thermal comfort in vernacular housing",
    "Harvest logistics in mountain villages",
]
FILLER_KEYWORDS = [
    "field survey", "long-term monitoring", "archival source", "seasonal trend",
    "rural community", "olive grove", "migratory bird", "local market",
    "oral history", "crop yield", "municipal archive", "limestone formation",
    "school attendance", "vernacular housing", "coastal settlement",
    "admission trend", "dietary pattern", "harvest logistics",
]
FILLER_SUBJECTS = [["Clinical Medicine"], ["Plant Sciences"], ["Economics"],
                   ["History"], ["Clinical Medicine", "Plant Sciences"], []]

filler_ids = []
while len(records) < 300:
    year = rng.randint(2000, 2015)
    n_authors = rng.choice([1, 1, 1, 2, 2, 3])
    chosen = rng.sample(filler_pool, n_authors)
    authors = []
    for j, a in enumerate(chosen):
        e = a.entry()
        if j > 0 and rng.random() < 0.15:
            e = {"name": a.name}  # affiliation missing in the source data
        authors.append(e)
    title = rng.choice(FILLER_TITLES)
    kws = rng.sample(FILLER_KEYWORDS, rng.choice([1, 2, 2, 3]))
    filler_ids.append(add_record(year, title, "", kws, authors,
                                 rng.choice(FILLER_SUBJECTS)))

# filler citations, some out of period
for _ in range(30):
    target = rng.choice(filler_ids)
    year = next(r["year"] for r in records if r["id"] == target)
    cite(target, min(year + rng.choice([0, 1, 2, 3]), 2015))
early_filler = [r["id"] for r in records if r["id"] in filler_ids and r["year"] <= 2013]
cite(early_filler[0], 2016)
cite(early_filler[1], 2016)

assert len(records) == 300, len(records)

# --------------------------------------------------------------- checks
# Lightweight singularizing matcher mirroring the documented rules; the
# real verification lives in tools/recount.py.

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


def normalize(text):
    word, out = "", []
    for ch in text:
        if ch.isalnum():
            word += ch.lower()
        elif word:
            out.append(singularize(word))
            word = ""
    if word:
        out.append(singularize(word))
    return out


def contains_phrase(tokens, phrase):
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
                tokens = normalize(line)
                if tokens and tokens not in out:
                    out.append(tokens)
    return out


def matches(record, terms):
    fields = [normalize(record["title"]), normalize(record["abstract"])]
    fields += [normalize(k) for k in record["keywords"]]
    return any(contains_phrase(f, t) for t in terms for f in fields)


def excluded(record, exclusions):
    text_fields = [normalize(record["title"]), normalize(record["abstract"])]
    return any(contains_phrase(f, e) for e in exclusions for f in text_fields)


ret_terms = load_terms(os.path.join(HERE, "..", "terms", "ret.txt"))
nnm_terms = load_terms(os.path.join(HERE, "..", "terms", "nnm.txt"))
exclusions = load_terms(os.path.join(HERE, "..", "terms", "exclusions.txt"))

ret_ids = [r["id"] for r in records
           if matches(r, ret_terms) and not excluded(r, exclusions)]
nnm_ids = [r["id"] for r in records
           if matches(r, nnm_terms) and not excluded(r, exclusions)]
eecs_ids = [r["id"] for r in records
            if set(r["subjects"]) & {"Electrical and Electronic Engineering",
                                     "Computer Science"}]
assert len(ret_ids) == 41, f"RET retrieval is {len(ret_ids)}, want 41"
assert len([r for r in records if len(r["authors"]) > 100]) == 3
print(f"RET {len(ret_ids)}  NNM {len(nnm_ids)}  EECS {len(eecs_ids)}")

# --------------------------------------------------------- expansion corpus

exp_records = []


def exp_record(i, keywords):
    author = {"name": f"Expa{i:02d}, E.", "org": "Metropolitan University",
              "region": "Attica", "country": "EL"}
    exp_records.append({
        "id": f"E-{i:04d}", "year": 2010, "type": "journal_article",
        "title": FILLER_TITLES[i % len(FILLER_TITLES)], "abstract": "",
        "keywords": keywords, "authors": [author], "subjects": [],
    })


n = 0
for _ in range(8):
    exp_record(n, ["solar cell", "dye-sensitized"]); n += 1
for _ in range(6):
    exp_record(n, ["solar cell", "water"]); n += 1
for _ in range(4):
    exp_record(n, ["solar cell", "efficiency"]); n += 1
for _ in range(4):
    exp_record(n, ["dye-sensitized", "redox electrolyte"]); n += 1
for _ in range(18):
    exp_record(n, ["efficiency", "control", "network", "sensor", "signal"]); n += 1

# ------------------------------------------------------------------ write

os.makedirs(FIXTURES, exist_ok=True)
order = list(range(len(records)))
rng.shuffle(order)
with open(os.path.join(FIXTURES, "corpus_small.jsonl"), "w") as fh:
    for i in order:
        fh.write(json.dumps(records[i], ensure_ascii=False) + "\n")

cite_order = list(range(len(citations)))
rng.shuffle(cite_order)
with open(os.path.join(FIXTURES, "citations_small.csv"), "w") as fh:
    for i in cite_order:
        citing, cited, year = citations[i]
        fh.write(f"{citing},{cited},{year}\n")

with open(os.path.join(FIXTURES, "expansion_corpus.jsonl"), "w") as fh:
    for r in exp_records:
        fh.write(json.dumps(r, ensure_ascii=False) + "\n")

with open(os.path.join(FIXTURES, "registry.psv"), "w") as fh:
    fh.write("# org_name|class|region|country\n")
    for name in sorted(ORG_INFO):
        cls, region, cc = ORG_INFO[name]
        fh.write(f"{name}|{cls}|{region}|{cc}\n")

with open(os.path.join(FIXTURES, "aliases.txt"), "w") as fh:
    fh.write("# raw name|canonical key\n")
    for line in alias_lines:
        fh.write(line + "\n")

print(f"wrote {len(records)} records, {len(citations)} links, "
      f"{len(exp_records)} expansion records, {len(alias_lines)} aliases")
