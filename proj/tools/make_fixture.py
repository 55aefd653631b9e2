#!/usr/bin/env python3
"""Writes the end-to-end fixture corpus under tests/fixtures/e2e.

The corpus is committed; this script documents how it was built and can
regenerate it byte-for-byte. Expected values are not computed here; see
tests/oracle/fixture_oracle.py, which reads only the written files and the
hand-written annotations.
"""

import datetime as dt
import json
import random
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "tests" / "fixtures" / "e2e"

# label, id, setSpec, dc:date values, header datestamp, creators, title,
# (element, journal reference) or None
ARTICLES = [
    ("F1", "hep-th/9901001", "physics:hep-th", ["1999-01-05", "1999-02-01"], "2002-06-11",
     ["Witten, Edward"], "Branes and dualities", ("source", "Nucl. Phys. B 550 (1999) 101")),
    ("F2", "hep-th/9902015", "physics:hep-th", ["1999-02-10"], "1999-02-10",
     ["Maldacena, Juan"], "Large N limits", ("identifier", "Phys. Rev. Lett. 83 (1999) 2001")),
    ("F3", "hep-th/9903100", "physics:hep-th", ["1999-03-15"], "2001-01-20",
     ["Polchinski, Joseph"], "Tensionless strings", ("source", "Phys. Rev. D 60 (1999) 046001")),
    ("F4", "hep-ph/9904020", "physics:hep-ph", ["1999-04-12"], "1999-04-12",
     ["Ellis, John", "Nanopoulos, D. V."], "Flipped models revisited", ("source", "Physics Letters B 450 (1999) 22")),
    ("F5", "hep-ph/9905033", "physics:hep-ph", ["1999-05-20", "1999-06-30"], "1999-07-01",
     ["Randall, Lisa"], "Warped hierarchies", ("source", "Phys. Rev. Lett. 83 (1999) 3370")),
    ("F6", "hep-lat/9906007", "physics:hep-lat", ["1999-06-03"], "1999-06-03",
     ["Creutz, Michael"], "Chiral fermions on the lattice", ("source", "Nucl. Phys. Proc. Suppl. 83 (2000) 1")),
    ("F7", "hep-ex/9907012", "physics:hep-ex", ["1999-07-08"], "2000-03-02",
     ["Barate, R."], "Search for neutral Higgs bosons", ("source", "Eur. Phys. J. C 12 (2000) 183")),
    ("F8", "cond-mat/9908044", "physics:cond-mat", ["1999-08-16"], "1999-08-16",
     ["Anderson, P. W."], "Luttinger liquids in two dimensions", ("source", "Phys. Rev. B 61 (2000) 1234")),
    ("F9", "cond-mat/9909055", "physics:cond-mat", ["1999-09-21"], "1999-09-21",
     ["Lee, Patrick A."], "Gauge theory of the pseudogap", ("source", "Phys. Rev. B 61 (2000) 1234")),
    ("F10", "astro-ph/9910066", "physics:astro-ph", ["1999-10-11"], "1999-10-11",
     ["Perlmutter, Saul"], "Supernova cosmology", None),
    ("F11", "gr-qc/9911077", "physics:gr-qc", ["1999-11-30"], "1999-12-02",
     ["Thorne, Kip S."], "Gravitational wave detectors", ("source", "Class. Quant. Grav. 17 (2000) 045")),
    ("F12", "0704.0001", "math", ["2007-04-02", "2008-11-13"], "2008-11-13",
     ["Balázs, C.", "Berger, E. L."], "Diphoton production at hadron colliders", None),
]

# Downloads per article (events after dedup), plus events for an article
# that never appears in the metadata.
DOWNLOADS = {"F1": 25, "F2": 14, "F3": 5, "F4": 16, "F5": 6, "F6": 9, "F7": 8, "F8": 7,
             "F9": 10, "F10": 4, "F11": 6, "F12": 3}
UNKNOWN_ID, UNKNOWN_DATE, UNKNOWN_EVENTS = "hep-th/9912999", "1999-12-06", 4

# citing label, raw reference, annotation. Annotation fields: ids (normalized
# identifiers present), tuple (journal, first author, volume, page, year or
# None when no complete tuple), status, cited label.
REFERENCES = [
    ("F2", "E. Witten, Nucl. Phys. B 550 (1999) 101, hep-th/9901001",
     ["hep-th/9901001"], ("Nucl. Phys. B", "Witten", "550", "101", 1999), "identifier", "F1"),
    ("F3", "E. Witten, Nucl. Phys. B 550 (1999) 101 [hep-th/9901001]",
     ["hep-th/9901001"], ("Nucl. Phys. B", "Witten", "550", "101", 1999), "identifier", "F1"),
    ("F4", "Witten E 1999 Nucl. Phys. B 550 101 (hep-th/9901001)",
     ["hep-th/9901001"], ("Nucl. Phys. B", "Witten", "550", "101", 1999), "identifier", "F1"),
    ("F5", "J. Polchinski, Phys. Rev. D 60 (1999) 046001 [hep-th/9903100]",
     ["hep-th/9903100"], ("Phys. Rev. D", "Polchinski", "60", "046001", 1999), "identifier", "F3"),
    # Identifier names F3, the tuple names F2: the identifier wins.
    ("F6", "J. Maldacena, Phys. Rev. Lett. 83 (1999) 2001; see also hep-th/9903100",
     ["hep-th/9903100"], ("Phys. Rev. Lett.", "Maldacena", "83", "2001", 1999), "identifier", "F3"),
    ("F7", "J. Maldacena, Phys. Rev. Lett. 83 (1999) 2001 [hep-th/9902015]",
     ["hep-th/9902015"], ("Phys. Rev. Lett.", "Maldacena", "83", "2001", 1999), "identifier", "F2"),
    ("F12", "J. Ellis and D. V. Nanopoulos, Physics Letters B 450 (1999) 22, arXiv:hep-ph/9904020",
     ["hep-ph/9904020"], ("Physics Letters B", "Ellis", "450", "22", 1999), "identifier", "F4"),
    ("F10", "K. Thorne, Class. Quant. Grav. 17 (2000) 045, gr-qc/9911077",
     ["gr-qc/9911077"], ("Class. Quant. Grav.", "Thorne", "17", "045", 2000), "identifier", "F11"),
    ("F12", "P. Lee, Phys. Rev. B 61 (2000) 1234, cond-mat/9909055v2",
     ["cond-mat/9909055"], ("Phys. Rev. B", "Lee", "61", "1234", 2000), "identifier", "F9"),
    ("F5", "E. Witten, Nucl. Phys. B 550 (1999) 101",
     [], ("Nucl. Phys. B", "Witten", "550", "101", 1999), "bibliographic", "F1"),
    ("F11", "J. Maldacena, Phys. Rev. Lett. 83, 2001 (1999)",
     [], ("Phys. Rev. Lett.", "Maldacena", "83", "2001", 1999), "bibliographic", "F2"),
    ("F12", "M. Creutz, Nucl. Phys. Proc. Suppl. 83 (2000) 1",
     [], ("Nucl. Phys. Proc. Suppl.", "Creutz", "83", "1", 2000), "bibliographic", "F6"),
    # Journal abbreviation differs from the stored title; matched on author.
    ("F7", "J. Ellis et al., Phys. Lett. B 450 (1999) 22",
     [], ("Phys. Lett. B", "Ellis", "450", "22", 1999), "bibliographic", "F4"),
    # Identifier of an article outside the corpus, so the tuple decides.
    ("F10", "R. Barate et al., Eur. Phys. J. C 12 (2000) 183 [hep-ex/9912345]",
     ["hep-ex/9912345"], ("Eur. Phys. J. C", "Barate", "12", "183", 2000), "bibliographic", "F7"),
    ("F4", "E. Witten, Nucl. Phys. B 550 (1999) 101",
     [], ("Nucl. Phys. B", "Witten", "550", "101", 1999), "bibliographic", "F1"),
    ("F3", "hep-th/9901001",
     ["hep-th/9901001"], None, "identifier", "F1"),
    # F8 and F9 carry the same journal reference.
    ("F11", "P. W. Anderson, Phys. Rev. B 61 (2000) 1234",
     [], ("Phys. Rev. B", "Anderson", "61", "1234", 2000), "ambiguous", None),
    ("F12", "Phys. Rev. B 61, 1234 (2000)",
     [], ("Phys. Rev. B", "", "61", "1234", 2000), "ambiguous", None),
    ("F5", "L. Randall, hep-ph/9905033",
     ["hep-ph/9905033"], None, "self", None),
    ("F8", "S. Weinberg, Phys. Rev. Lett. 80 (1998) 1000",
     [], ("Phys. Rev. Lett.", "Weinberg", "80", "1000", 1998), "unresolved", None),
    ("F9", "J. Doe, hep-th/9712345",
     ["hep-th/9712345"], None, "unresolved", None),
    ("F1", "J. Smith, unpublished",
     [], None, "unresolved", None),
    ("F2", "G. 't Hooft, private communication",
     [], None, "unresolved", None),
    ("F3", "A. Strominger, Phys. Rev. D 60 (1999)",
     [], None, "unresolved", None),
    ("F2", "A. Sen, J. High Energy Phys. 12 (1998) 021",
     [], ("J. High Energy Phys.", "Sen", "12", "021", 1998), "unresolved", None),
    ("F6", "M. Creutz, Nucl. Phys. Proc. Suppl. 83 (2000) 1",
     [], ("Nucl. Phys. Proc. Suppl.", "Creutz", "83", "1", 2000), "self", None),
    ("F3", "Anderson P W 2000 Phys. Rev. B 61 1234",
     [], ("Phys. Rev. B", "Anderson", "61", "1234", 2000), "ambiguous", None),
    ("F9", "E. Witten, Nucl. Phys. B 550 (1998) 101",
     [], ("Nucl. Phys. B", "Witten", "550", "101", 1998), "unresolved", None),
    ("F1", "J. Polchinski, Phys. Rev. D 61 (1999) 046001",
     [], ("Phys. Rev. D", "Polchinski", "61", "046001", 1999), "unresolved", None),
    ("F11", "Maldacena J, Phys. Rev. Lett. 83 (1999) 2001",
     [], ("Phys. Rev. Lett.", "Maldacena", "83", "2001", 1999), "bibliographic", "F2"),
]

# Journal reference strings with the tuple a correct parser must produce.
JOURNAL_REFS = [
    ("Phys. Rev. D 62 (2000) 043007", ("Phys. Rev. D", "62", "043007", 2000)),
    ("Nucl. Phys. B 574, 169 (2000)", ("Nucl. Phys. B", "574", "169", 2000)),
    ("Phys.Rev.D62:043007,2000", ("Phys.Rev.D", "62", "043007", 2000)),
    ("Phys. Lett. B 480 193 (2000)", ("Phys. Lett. B", "480", "193", 2000)),
    ("2000 Phys. Rev. D 62 043007", ("Phys. Rev. D", "62", "043007", 2000)),
    ("JHEP 9905 (1999) 012", ("JHEP", "9905", "012", 1999)),
    ("Class. Quant. Grav. 17 (2000) L17", ("Class. Quant. Grav.", "17", "L17", 2000)),
    ("Astrophys. J. 517 (1999) 565-586", ("Astrophys. J.", "517", "565", 1999)),
    ("Nucl. Phys. Proc. Suppl. 83 (2000) 1-10", ("Nucl. Phys. Proc. Suppl.", "83", "1", 2000)),
    ("Phys. Rev. Lett. 83, 3370 (1999)", ("Phys. Rev. Lett.", "83", "3370", 1999)),
    ("Eur. Phys. J. C 12 (2000) 183.", ("Eur. Phys. J. C", "12", "183", 2000)),
    ("Physics Letters B 450 (1999) 22", ("Physics Letters B", "450", "22", 1999)),
    ("Int. J. Mod. Phys. A 14 (1999) 4595", ("Int. J. Mod. Phys. A", "14", "4595", 1999)),
    ("Mod. Phys. Lett. A14:1523-1530,1999", ("Mod. Phys. Lett. A", "14", "1523", 1999)),
    ("Rev. Mod. Phys. 71 (1999) S96", ("Rev. Mod. Phys.", "71", "S96", 1999)),
    ("Ann. Phys. 281 (2000) 409", ("Ann. Phys.", "281", "409", 2000)),
    ("J. Math. Phys. 40 (1999) 4557-4582", ("J. Math. Phys.", "40", "4557", 1999)),
    ("Submitted to Phys. Rev. D", None),
    ("Proceedings of the Workshop on Strings, 1999", None),
    ("in preparation", None),
]

MONTHS = ["Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"]
BROWSERS = [
    "Mozilla/4.0 (compatible; MSIE 5.5; Windows NT 5.0)",
    "Mozilla/5.0 (X11; U; Linux i686; en-US; rv:1.4) Gecko/20030624",
    "Mozilla/4.7 [en] (X11; I; SunOS 5.8 sun4u)",
    "Lynx/2.8.4rel.1 libwww-FM/2.14",
    "Mozilla/5.0 (Macintosh; U; PPC Mac OS X; en) AppleWebKit/125.2 Safari/125.8",
]
DOMAINS = ["cern.ch", "slac.stanford.edu", "desy.de", "kek.jp", "physics.ox.ac.uk", "fnal.gov",
           "lanl.gov", "mit.edu", "uni-heidelberg.de", "ictp.it"]
OFFSETS = [0, 60, -300, 540, -480]


def fmt_ts(utc: dt.datetime, offset_min: int) -> str:
    local = utc + dt.timedelta(minutes=offset_min)
    sign = "+" if offset_min >= 0 else "-"
    off = abs(offset_min)
    return (f"{local.day:02d}/{MONTHS[local.month - 1]}/{local.year}:{local.hour:02d}:{local.minute:02d}:"
            f"{local.second:02d} {sign}{off // 60:02d}{off % 60:02d}")


def log_line(host, utc, offset, method, path, status, agent, referer="-", size=None):
    size = "-" if status != 200 else str(size or 48213)
    return f'{host} - - [{fmt_ts(utc, offset)}] "{method} {path} HTTP/1.0" {status} {size} "{referer}" "{agent}"'


def fulltext_path(rng, article_id, fmt):
    enc = article_id.replace("/", "%2F")
    if fmt == "pdf":
        return rng.choice([f"/pdf/{article_id}", f"/pdf/{article_id}v1", f"/pdf/{article_id}.pdf",
                           f"/pdf/{enc}", f"http://arxiv.org/pdf/{article_id}", f"/pdf/{article_id}?dl=1"])
    if fmt == "ps":
        return rng.choice([f"/ps/{article_id}", f"/ps/{article_id}.ps.gz", f"/ps/{article_id}v2"])
    return rng.choice([f"/e-print/{article_id}", f"/e-print/{article_id}.tar.gz"])


def build_logs(rng):
    deposits = {a[0]: dt.date.fromisoformat(min(a[3])) for a in ARTICLES}
    ids = {a[0]: a[1] for a in ARTICLES}
    events = []  # (utc datetime, offset, article id, domain, format, host)
    keys = set()

    def add_event(article_id, day, domain=None, offset=None, seconds=None):
        for _ in range(1000):
            d = domain or rng.choice(DOMAINS)
            if (article_id, day, d) not in keys:
                break
        else:
            raise RuntimeError("no free domain")
        keys.add((article_id, day, d))
        secs = seconds if seconds is not None else rng.randrange(86400)
        utc = dt.datetime(day.year, day.month, day.day) + dt.timedelta(seconds=secs)
        off = offset if offset is not None else rng.choice(OFFSETS)
        fmt = rng.choices(["pdf", "ps", "source"], weights=[6, 3, 1])[0]
        host = f"pc{rng.randrange(1, 250)}.{d}"
        events.append((utc, off, article_id, d, fmt, host))

    # F1: same local date, two UTC days, same domain: two events.
    f1 = ids["F1"]
    d0 = deposits["F1"] + dt.timedelta(days=40)
    add_event(f1, d0, "cern.ch", 0, 12 * 3600)
    add_event(f1, d0 + dt.timedelta(days=1), "cern.ch", -300, 4 * 3600 + 1800)

    for label, n in DOWNLOADS.items():
        already = sum(1 for e in events if e[2] == ids[label])
        for k in range(n - already):
            # A few very early downloads so the 7-day floor of the sweep bites.
            latency = rng.randrange(0, 7) if k < 2 else rng.randrange(7, 150)
            add_event(ids[label], deposits[label] + dt.timedelta(days=latency))
    unknown_day = dt.date.fromisoformat(UNKNOWN_DATE)
    for k in range(UNKNOWN_EVENTS):
        add_event(UNKNOWN_ID, unknown_day + dt.timedelta(days=k * 3))

    lines = []  # (utc, text)
    for utc, off, aid, dom, fmt, host in events:
        lines.append((utc, log_line(host, utc, off, "GET", fulltext_path(rng, aid, fmt), 200,
                                    rng.choice(BROWSERS), size=rng.randrange(20000, 900000))))

    # Duplicates of stored keys: other machine in the same domain, other
    # format or zone, same UTC day.
    for utc, off, aid, dom, fmt, host in rng.sample(events, 17):
        day_start = dt.datetime(utc.year, utc.month, utc.day)
        t = day_start + dt.timedelta(seconds=rng.randrange(86400))
        other_fmt = rng.choice(["pdf", "ps", "source"])
        lines.append((t, log_line(f"ws{rng.randrange(1, 99)}.{dom}", t, rng.choice(OFFSETS), "GET",
                                  fulltext_path(rng, aid, other_fmt), 200, rng.choice(BROWSERS))))

    # Cross-midnight duplicate: 23:30 at -0500 is the next UTC day.
    base = next(e for e in events if e[2] == ids["F2"])
    t = dt.datetime(base[0].year, base[0].month, base[0].day, 4, 30)
    lines[-1] = (t, log_line(f"late.{base[3]}", t, -300, "GET", f"/pdf/{ids['F2']}", 200, BROWSERS[0]))

    def when(label, days, hour=10):
        d = deposits[label] + dt.timedelta(days=days)
        return dt.datetime(d.year, d.month, d.day, hour, rng.randrange(60))

    robots = [
        ("crawl-66-249-66-1.googlebot.com", "GET", f"/pdf/{ids['F1']}", 200, BROWSERS[1]),
        ("lj511904.crawl.yahoo.net", "GET", f"/abs/{ids['F2']}", 200, BROWSERS[0]),
        ("msnbot-65-55-1.search.msn.com", "GET", f"/ps/{ids['F4']}", 304, BROWSERS[2]),
        ("baiduspider-1.crawl.baidu.com", "GET", f"/pdf/{ids['F9']}", 200, BROWSERS[3]),
        ("66.249.65.1", "GET", f"/pdf/{ids['F3']}", 200, "Googlebot/2.1 (+http://www.google.com/bot.html)"),
        ("72.30.1.4", "GET", f"/pdf/{ids['F5']}", 404,
         "Mozilla/5.0 (compatible; Yahoo! Slurp; http://help.yahoo.com/help/us/ysearch/slurp)"),
        ("65.55.2.2", "GET", f"/pdf/{ids['F6']}", 200, "msnbot/1.0 (+http://search.msn.com/msnbot.htm)"),
        ("157.55.3.3", "GET", f"/e-print/{ids['F7']}", 200, "Mozilla/5.0 (compatible; bingbot/2.0)"),
        ("209.237.238.1", "GET", "/list/hep-th/new", 200, "ia_archiver"),
        ("220.181.7.1", "GET", f"/pdf/{ids['F8']}", 200, "Baiduspider+(+http://www.baidu.com/search/spider.htm)"),
        ("77.88.5.5", "GET", f"/pdf/{ids['F1']}", 200, "Mozilla/5.0 (compatible; YandexBot/3.0)"),
        ("fetch.example.org", "GET", f"/pdf/{ids['F2']}", 200, "Zealous WebCrawler 0.9"),
    ]
    for i, (host, method, path, status, agent) in enumerate(robots):
        t = when(["F1", "F2", "F4", "F9", "F3", "F5", "F6", "F7", "F1", "F8", "F1", "F2"][i], 20 + i)
        lines.append((t, log_line(host, t, 0, method, path, status, agent)))

    rejected = []
    for status, count in [(304, 6), (404, 5), (206, 3), (500, 2), (301, 1)]:
        for _ in range(count):
            label = rng.choice(list(DOWNLOADS))
            rejected.append((label, f"/pdf/{ids[label]}", status))
    rejected.append(("F4", f"/abs/{ids['F4']}", 404))
    for label, path, status in rejected:
        t = when(label, rng.randrange(5, 120))
        lines.append((t, log_line(f"pc{rng.randrange(1, 250)}.{rng.choice(DOMAINS)}", t, 0, "GET", path, status,
                                  rng.choice(BROWSERS))))

    other = []
    for _ in range(12):
        label = rng.choice(list(DOWNLOADS))
        other.append((label, "GET", f"/abs/{ids[label]}"))
    other += [("F1", "GET", "/list/hep-th/new"), ("F3", "GET", "/list/hep-th/new"),
              ("F4", "GET", "/list/hep-ph/9904"), ("F8", "GET", "/list/cond-mat/new"),
              ("F1", "GET", "/"), ("F5", "GET", "/"), ("F9", "GET", "/"),
              ("F2", "GET", "/find/hep-th?query=branes"), ("F6", "GET", "/find/hep-lat?query=chiral"),
              ("F3", "GET", "/favicon.ico"), ("F7", "GET", "/favicon.ico"),
              ("F1", "POST", f"/pdf/{ids['F1']}"), ("F4", "POST", f"/pdf/{ids['F4']}"),
              ("F2", "HEAD", f"/pdf/{ids['F2']}"), ("F9", "HEAD", f"/ps/{ids['F9']}"),
              ("F6", "GET", "/pdf/"), ("F7", "GET", "/ps/"), ("F11", "GET", "/robots.txt")]
    for label, method, path in other:
        t = when(label, rng.randrange(1, 120))
        lines.append((t, log_line(f"pc{rng.randrange(1, 250)}.{rng.choice(DOMAINS)}", t, 60, method, path, 200,
                                  rng.choice(BROWSERS))))

    for label, path in [("F1", "/pdf/hep-th/99010"), ("F3", "/ps/1234.5678"), ("F5", "/e-print/nonsense")]:
        t = when(label, 30)
        lines.append((t, log_line(f"pc7.{DOMAINS[0]}", t, 0, "GET", path, 200, BROWSERS[1])))

    lines.sort(key=lambda x: x[0])
    text = [l for _, l in lines]
    text.insert(17, "this is not a log line")
    text.insert(88, '128.141.5.9 - - [14/Mar/1999:10:02:')
    text.insert(151, '131.225.1.1 - - [12/Foo/1999:10:02:11 +0000] "GET /pdf/hep-th/9901001 HTTP/1.0" 200 1 "-" "x"')
    assert len(text) == 200, len(text)
    return text


def write_metadata():
    def record(a):
        label, aid, spec, dates, stamp, creators, title, jref = a
        dc = [f"<dc:title>{title}</dc:title>"]
        dc += [f"<dc:creator>{c}</dc:creator>" for c in creators]
        dc += [f"<dc:date>{d}</dc:date>" for d in dates]
        dc.append(f"<dc:identifier>http://arXiv.org/abs/{aid}</dc:identifier>")
        if jref:
            dc.append(f"<dc:{jref[0]}>{jref[1]}</dc:{jref[0]}>")
        return ("<record><header>"
                f"<identifier>oai:arXiv.org:{aid}</identifier><datestamp>{stamp}</datestamp>"
                f"<setSpec>{spec}</setSpec></header><metadata>"
                '<oai_dc:dc xmlns:oai_dc="http://www.openarchives.org/OAI/2.0/oai_dc/" '
                'xmlns:dc="http://purl.org/dc/elements/1.1/">'
                + "".join(dc) + "</oai_dc:dc></metadata></record>")

    rejected = ("<record><header><identifier>oai:arXiv.org:hep-th/99129</identifier>"
                "<datestamp>1999-12-01</datestamp><setSpec>physics:hep-th</setSpec></header><metadata>"
                '<oai_dc:dc xmlns:oai_dc="http://www.openarchives.org/OAI/2.0/oai_dc/" '
                'xmlns:dc="http://purl.org/dc/elements/1.1/"><dc:title>Truncated identifier</dc:title>'
                "<dc:date>1999-12-01</dc:date></oai_dc:dc></metadata></record>")
    deleted = ("<record><header status=\"deleted\"><identifier>oai:arXiv.org:hep-th/9905999</identifier>"
               "<datestamp>2001-01-01</datestamp></header></record>")

    def page(records, token):
        head = ('<?xml version="1.0" encoding="UTF-8"?>\n'
                '<OAI-PMH xmlns="http://www.openarchives.org/OAI/2.0/">\n'
                "<responseDate>2008-12-01T00:00:00Z</responseDate>\n"
                '<request verb="ListRecords" metadataPrefix="oai_dc">http://export.arxiv.org/oai2</request>\n'
                "<ListRecords>\n")
        body = "".join(r + "\n" for r in records)
        tok = (f'<resumptionToken cursor="0" completeListSize="13">{token}</resumptionToken>\n' if token
               else '<resumptionToken cursor="11" completeListSize="13"/>\n')
        return head + body + tok + "</ListRecords>\n</OAI-PMH>\n"

    first = [record(a) for a in ARTICLES[:10]]
    first.insert(6, rejected)
    (OUT / "metadata").mkdir(parents=True, exist_ok=True)
    (OUT / "metadata" / "page1.xml").write_text(page(first, "fixture|11"), encoding="utf-8")
    second = [record(ARTICLES[10]), deleted, record(ARTICLES[11])]
    (OUT / "metadata" / "page2.xml").write_text(page(second, None), encoding="utf-8")


def write_references():
    ids = {a[0]: a[1] for a in ARTICLES}
    refdir = OUT / "references"
    refdir.mkdir(parents=True, exist_ok=True)
    per_file = {}
    annotations = []
    for citing, raw, found, tup, status, cited in REFERENCES:
        cid = ids[citing]
        index = len(per_file.setdefault(cid, []))
        per_file[cid].append(raw)
        annotations.append({
            "citing": citing, "citing_id": cid, "index": index, "raw": raw, "identifiers": found,
            "tuple": None if tup is None else dict(zip(["journal", "first_author", "volume", "page", "year"], tup)),
            "status": status, "cited": cited, "cited_id": ids.get(cited) if cited else None,
        })
    for cid, refs in per_file.items():
        name = cid.replace("/", "_") + ("" if "/" not in cid else ".txt")
        (refdir / name).write_text("\n".join(refs) + "\n", encoding="utf-8")
    return annotations


def main():
    rng = random.Random(20081201)
    write_metadata()
    annotations = write_references()
    (OUT / "logs").mkdir(parents=True, exist_ok=True)
    (OUT / "logs" / "access.log").write_text("\n".join(build_logs(rng)) + "\n", encoding="utf-8")

    ann = OUT / "annotations"
    ann.mkdir(parents=True, exist_ok=True)
    (ann / "articles.json").write_text(json.dumps(
        [{"label": a[0], "id": a[1]} for a in ARTICLES] + [{"label": "UNKNOWN", "id": UNKNOWN_ID}],
        indent=1) + "\n")
    (ann / "references.json").write_text(json.dumps(annotations, indent=1, ensure_ascii=False) + "\n")
    (ann / "journal_refs.json").write_text(json.dumps(
        [{"text": t, "expected": None if e is None else dict(zip(["journal", "volume", "page", "year"], e))}
         for t, e in JOURNAL_REFS], indent=1) + "\n")


if __name__ == "__main__":
    main()
