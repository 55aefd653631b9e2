#!/usr/bin/env python3
"""Brute-force oracle for the end-to-end fixture.

Reads the raw fixture files (access log, OAI-PMH pages) and the hand-written
reference annotations, recomputes every expected value with straightforward
Python, and writes expected.json. Shares no code with the C++ pipeline.

    fixture_oracle.py [--check]   # --check: fail if expected.json differs
"""

import json
import math
import re
import sys
import xml.etree.ElementTree as ET
from datetime import date, datetime, timedelta, timezone
from pathlib import Path
from urllib.parse import unquote

ROOT = Path(__file__).resolve().parents[2]
FIX = ROOT / "tests" / "fixtures" / "e2e"
ROBOTS = ROOT / "config" / "robots.conf"
OUT = FIX / "expected.json"

LINE = re.compile(
    r'^(\S+) (\S+) (\S+) \[(\d\d)/([A-Z][a-z]{2})/(\d{4}):(\d\d):(\d\d):(\d\d) ([+-])(\d\d)(\d\d)\] '
    r'"([A-Z]+) (\S+)(?: (\S+))?" (\d{3}) (\d+|-) "([^"]*)" "([^"]*)"$')
MONTHS = {m: i + 1 for i, m in enumerate(
    ["Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"])}
PREFIXES = [("/pdf/", "pdf"), ("/ps/", "ps"), ("/e-print/", "source")]
FORMAT_RANK = {"pdf": 0, "ps": 1, "source": 2}
HEP = {"hep-th", "hep-ph", "hep-lat", "hep-ex"}
DAYS_PER_MONTH = 365.2425 / 12


def robot_patterns():
    agents, hosts = [], []
    for line in ROBOTS.read_text().splitlines():
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if body.lower().startswith("host:"):
            hosts.append(body[5:].strip().lower())
        else:
            agents.append(body.lower())
    return agents, hosts


def normalize_id(s):
    s = s.strip()
    for p in ("oai:arxiv.org:", "arxiv:"):
        if s.lower().startswith(p):
            s = s[len(p):]
    s = re.sub(r"v\d+$", "", s)
    m = re.fullmatch(r"([A-Za-z]+(?:-[A-Za-z]+)*)(?:\.[A-Za-z]{2})?/(\d\d)(\d\d)\d{3}", s)
    if m and 1 <= int(m.group(3)) <= 12:
        return f"{m.group(1).lower()}/{s.split('/')[1]}"
    m = re.fullmatch(r"(\d\d)(\d\d)\.\d{4,5}", s)
    if m and 1 <= int(m.group(2)) <= 12:
        return s
    return None


def domain_of(host):
    h = host.lower().rstrip(".")
    if ":" in h or re.fullmatch(r"(\d{1,3})\.(\d{1,3})\.(\d{1,3})\.(\d{1,3})", h):
        return h
    parts = h.split(".")
    return ".".join(parts[-2:]) if len(parts) >= 2 else h


def ingest(path):
    agents, hosts = robot_patterns()
    stats = dict(lines_total=0, lines_malformed=0, robot_hits=0, status_rejected=0, non_fulltext=0,
                 other_skips=0, events_deduped=0, events_emitted=0)
    events = {}
    for line in path.read_text(encoding="utf-8").split("\n")[:-1]:
        stats["lines_total"] += 1
        m = LINE.match(line)
        if not m or m.group(5) not in MONTHS:
            stats["lines_malformed"] += 1
            continue
        (host, _, _, dd, mon, yyyy, hh, mi, ss, sign, zh, zm, method, target, _, status, _, _, agent) = m.groups()
        offset = (1 if sign == "+" else -1) * timedelta(hours=int(zh), minutes=int(zm))
        local = datetime(int(yyyy), MONTHS[mon], int(dd), int(hh), int(mi), int(ss),
                         tzinfo=timezone(offset))
        utc_day = local.astimezone(timezone.utc).date()
        if any(a in agent.lower() for a in agents) or any(h in host.lower() for h in hosts):
            stats["robot_hits"] += 1
            continue
        if status != "200":
            stats["status_rejected"] += 1
            continue
        if method != "GET":
            stats["non_fulltext"] += 1
            continue
        target = re.sub(r"^https?://[^/]+", "", target)
        target = unquote(re.split(r"[?#]", target)[0])
        prefix = next((p for p in PREFIXES if target.startswith(p[0])), None)
        rest = target[len(prefix[0]):].rstrip("/") if prefix else ""
        if not prefix or not rest:
            stats["non_fulltext"] += 1
            continue
        for suffix in (".ps.gz", ".tar.gz", ".pdf", ".ps", ".gz"):
            if rest.endswith(suffix) and len(rest) > len(suffix):
                rest = rest[: -len(suffix)]
                break
        aid = normalize_id(rest)
        if aid is None:
            stats["other_skips"] += 1
            continue
        key = (aid, utc_day.isoformat(), domain_of(host))
        if key in events:
            stats["events_deduped"] += 1
            if FORMAT_RANK[prefix[1]] < FORMAT_RANK[events[key]]:
                events[key] = prefix[1]
            continue
        stats["events_emitted"] += 1
        events[key] = prefix[1]
    return stats, events


def local(tag):
    return tag.rsplit("}", 1)[-1]


def harvest(page):
    root = ET.parse(page).getroot()
    records = [el for el in root.iter() if local(el.tag) == "record"]
    valid, rejected, deleted = {}, [], 0
    for rec in records:
        header = next(el for el in rec if local(el.tag) == "header")
        if header.get("status") == "deleted":
            deleted += 1
            continue
        ident = next(el.text for el in header if local(el.tag) == "identifier")
        aid = normalize_id(ident)
        if aid is None:
            rejected.append(ident)
            continue
        dates = [el.text.strip() for el in rec.iter() if local(el.tag) in ("datestamp", "date")]
        first = min(date.fromisoformat(d[:10]) for d in dates)
        sets = [el.text.strip() for el in header if local(el.tag) == "setSpec"]
        subfield = aid.split("/")[0] if "/" in aid else sets[0].split(":")[-1].lower()
        sources = [el.text.strip() for el in rec.iter() if local(el.tag) == "source"]
        idents = [el.text.strip() for el in rec.iter()
                  if local(el.tag) == "identifier" and not el.text.lower().startswith(("http", "oai:", "doi:"))
                  and normalize_id(el.text) is None]
        jref = (sources + idents)[0] if sources + idents else ""
        creators = [el.text for el in rec.iter() if local(el.tag) == "creator"]
        valid[aid] = dict(first_deposit=first, subfield=subfield, journal_ref_text=jref, authors=creators)
    token = [el.text for el in root.iter() if local(el.tag) == "resumptionToken"]
    return valid, rejected, deleted, (token[0] if token and token[0] else None)


def mean(v):
    return math.fsum(v) / len(v)


def sample_sd(v):
    if len(v) < 2:
        return 0.0
    m = mean(v)
    return math.sqrt(math.fsum((x - m) ** 2 for x in v) / (len(v) - 1))


def pearson(x, y):
    if len(x) < 2:
        return None
    mx, my = mean(x), mean(y)
    sxx = math.fsum((a - mx) ** 2 for a in x)
    syy = math.fsum((b - my) ** 2 for b in y)
    if sxx == 0 or syy == 0:
        return None
    return math.fsum((a - mx) * (b - my) for a, b in zip(x, y)) / math.sqrt(sxx * syy)


def fit(x, y):
    if len(x) < 2:
        return None
    mx, my = mean(x), mean(y)
    sxx = math.fsum((a - mx) ** 2 for a in x)
    if sxx == 0:
        return None
    slope = math.fsum((a - mx) * (b - my) for a, b in zip(x, y)) / sxx
    return {"slope": slope, "intercept": my - slope * mx}


def month_key(d):
    return f"{d.year:04d}-{d.month:02d}"


def main():
    stats, events = ingest(FIX / "logs" / "access.log")
    page1, rej1, del1, tok1 = harvest(FIX / "metadata" / "page1.xml")
    page2, rej2, del2, tok2 = harvest(FIX / "metadata" / "page2.xml")
    articles = {**page1, **page2}
    labels = {a["label"]: a["id"] for a in json.loads((FIX / "annotations" / "articles.json").read_text())}
    refs = json.loads((FIX / "annotations" / "references.json").read_text(encoding="utf-8"))
    jrefs = json.loads((FIX / "annotations" / "journal_refs.json").read_text())

    # Edges from the annotated outcomes, identifier preferred on collapse.
    edges = {}
    for r in refs:
        if r["status"] in ("identifier", "bibliographic"):
            key = (r["citing_id"], r["cited_id"])
            if edges.get(key) != "identifier":
                edges[key] = r["status"]
    status_counts = {s: sum(1 for r in refs if r["status"] == s)
                     for s in ("identifier", "bibliographic", "ambiguous", "unresolved", "self")}

    def days(a, b):
        return (a - b).days

    dep = {aid: a["first_deposit"] for aid, a in articles.items()}
    downloads_by = {}
    for (aid, day, _), _fmt in events.items():
        downloads_by.setdefault(aid, []).append(date.fromisoformat(day))
    inlinks = {}
    for (citing, cited) in edges:
        inlinks.setdefault(cited, []).append(citing)

    def counts(aid, dl_window=None, cite_window=None):
        d = [x for x in downloads_by.get(aid, [])
             if dl_window is None or dl_window[0] <= days(x, dep[aid]) <= dl_window[1]]
        c = [x for x in inlinks.get(aid, [])
             if cite_window is None or (x in dep and cite_window[0] <= days(dep[x], dep[aid]) <= cite_window[1])]
        return len(d), len(c)

    def select(field=None, dl_window=None, quartile="all"):
        rows = []
        for aid in sorted(articles):
            sub = articles[aid]["subfield"]
            if field == "hep" and sub not in HEP:
                continue
            d, c = counts(aid, dl_window)
            rows.append((aid, d, c))
        if quartile != "all":
            ranked = sorted(rows, key=lambda r: (-r[2], r[0]))
            n = len(ranked)
            cuts = [0, -(-n // 4), -(-n // 2), -(-3 * n // 4), n]
            idx = {"top": 0, "upper": 1, "lower": 2, "bottom": 3}[quartile]
            rows = sorted(ranked[cuts[idx]:cuts[idx + 1]])
        return rows

    def correlate(rows):
        dl = [float(r[1]) for r in rows]
        ct = [float(r[2]) for r in rows]
        lx = [math.log(v + 1) for v in dl]
        ly = [math.log(v + 1) for v in ct]
        cells = {}
        for a, b in zip(lx, ly):
            k = f"{math.floor(a / 0.05)} {math.floor(b / 0.05)}"
            cells[k] = cells.get(k, 0) + 1
        return {
            "n": len(rows), "ids": [r[0] for r in rows],
            "downloads": {"sum": math.fsum(dl), "mean": mean(dl) if dl else 0.0, "sd": sample_sd(dl)},
            "citations": {"sum": math.fsum(ct), "mean": mean(ct) if ct else 0.0, "sd": sample_sd(ct)},
            "r": pearson(lx, ly), "fit": fit(lx, ly),
            "ratio": mean(dl) / mean(ct) if ct and mean(ct) > 0 else None,
            "grid": dict(sorted(cells.items())),
        }

    all_rows = select()
    per_article = {aid: {"downloads": d, "citations": c} for aid, d, c in all_rows}

    def histogram(values):
        h = {}
        for v in values:
            h[str(v)] = h.get(str(v), 0) + 1
        return dict(sorted(h.items(), key=lambda kv: int(kv[0])))

    cite_latency_days = histogram(days(dep[c], dep[t]) for (c, t) in edges if c in dep and t in dep)
    dl_cohorts = {}
    for aid in sorted(articles):
        for d in downloads_by.get(aid, []):
            year = str(dep[aid].year)
            b = math.floor(days(d, dep[aid]) / DAYS_PER_MONTH)
            dl_cohorts.setdefault(year, []).append(b)
    dl_cohorts = {y: histogram(v) for y, v in sorted(dl_cohorts.items())}
    deposits = {}
    for aid in articles:
        k = month_key(dep[aid])
        deposits[k] = deposits.get(k, 0) + 1

    # Age profile with a sample larger than any month: every article taken.
    window = (1999, 10)
    first = min(dep.values())
    bars = []
    y, m = first.year, first.month
    while (y, m) < window:
        members = [aid for aid in articles if (dep[aid].year, dep[aid].month) == (y, m)]
        dls = sum(1 for aid in members for d in downloads_by.get(aid, []) if (d.year, d.month) == window)
        cts = sum(1 for aid in members for c in inlinks.get(aid, [])
                  if c in dep and (dep[c].year, dep[c].month) == window)
        bars.append({"month": f"{y:04d}-{m:02d}", "articles": len(members), "downloads": dls, "citations": cts})
        y, m = (y + 1, 1) if m == 12 else (y, m + 1)

    sweep = []
    for cap in (30, 60, 90):
        res = correlate(select(dl_window=(7, cap)))
        sweep.append({"cap": cap, "n": res["n"], "mean_downloads": res["downloads"]["mean"], "r": res["r"]})

    expected = {
        "ingest": stats,
        "events": [{"article": k[0], "day": k[1], "domain": k[2], "format": v} for k, v in sorted(events.items())],
        "events_for_unknown_articles": sum(1 for k in events if k[0] not in articles),
        "harvest": {
            "page1": {"valid": len(page1), "rejected": len(rej1), "deleted": del1, "token": tok1},
            "page2": {"valid": len(page2), "rejected": len(rej2), "deleted": del2, "token": tok2},
        },
        "articles": {aid: {"first_deposit": a["first_deposit"].isoformat(), "subfield": a["subfield"],
                           "journal_ref_text": a["journal_ref_text"]} for aid, a in sorted(articles.items())},
        "labels": labels,
        "journal_refs": {"total": len(jrefs), "parsed": sum(1 for j in jrefs if j["expected"])},
        "references": {"total": len(refs), "tuples": sum(1 for r in refs if r["tuple"]), **status_counts},
        "edges": [{"citing": k[0], "cited": k[1], "method": v,
                   "latency": days(dep[k[0]], dep[k[1]])} for k, v in sorted(edges.items())],
        "edge_counts": {"total": len(edges), "identifier": sum(1 for v in edges.values() if v == "identifier"),
                        "bibliographic": sum(1 for v in edges.values() if v == "bibliographic")},
        "per_article": per_article,
        "correlate_all": correlate(all_rows),
        "hep_ids": [r[0] for r in select(field="hep")],
        "quartiles": {q: [r[0] for r in select(quartile=q)] for q in ("top", "upper", "lower", "bottom")},
        "correlate_top_hep": correlate(select(field="hep", quartile="top")),
        "sweep": sweep,
        "cite_freq": histogram(per_article[a]["citations"] for a in per_article),
        "download_freq": histogram(per_article[a]["downloads"] for a in per_article),
        "cite_latency_days": cite_latency_days,
        "download_latency_cohorts_months": dl_cohorts,
        "deposits_per_month": dict(sorted(deposits.items())),
        "age_profile": {"window": "1999-10", "sample_size": 300, "bars": bars},
    }
    text = json.dumps(expected, indent=1, sort_keys=False, ensure_ascii=False) + "\n"
    if "--check" in sys.argv:
        if not OUT.exists() or OUT.read_text(encoding="utf-8") != text:
            print("expected.json is stale; rerun fixture_oracle.py", file=sys.stderr)
            return 1
        print("expected.json is up to date")
        return 0
    OUT.write_text(text, encoding="utf-8")
    return 0


if __name__ == "__main__":
    sys.exit(main())
