#!/usr/bin/env python3
"""Independent stats oracle for the fixture corpus.

Reads the planted-endpoint ground truth and recomputes the per-app stats.csv
rows by plain string manipulation, with no code shared with the analyzer.
The committed fixtures/expected_stats.csv is this script's output.
"""

import collections
import os

HERE = os.path.dirname(os.path.abspath(__file__))
FIXTURES = os.path.normpath(os.path.join(HERE, "..", "..", "fixtures"))

# Apps analyzed (dup.app.v1 is dropped by package-id dedup), sorted as the
# runner sorts directories.
APPS = [
    "apache.app", "concat.app", "credential.app", "cycle.app", "damaged.app",
    "dup.app.v2", "embedded.app", "glide.app", "gson.app", "guess.app",
    "httpsurlconnection.app", "httpurlconnection.app", "insecure.app", "ion.app",
    "loopj.app", "moshi.listing", "okhttp.app", "orgjson.app", "retrofit.listing",
    "retrofit.multi", "socket.app", "urlconnection.app", "volley.app",
]

# Hand-tallied smell counts per app (see the fixture sources):
#   embedded.app plants one SQL statement (query value) and one HTML snippet
#   (JSON string); credential.app plants password=, apikey= query leaks plus a
#   concrete username in a Gson model.
LANG_HITS = {"embedded.app": {"sql": 1, "html": 1}}
CRED_LEAKS = {"credential.app": 3}


def split_url(rendered):
    """scheme, authority, path segments, query keys, fragment count."""
    scheme, rest = rendered.split("://", 1)
    fragments = []
    if "#" in rest:
        rest, frag = rest.split("#", 1)
        fragments = [f for f in frag.split("#") if f]
    query_keys = []
    query_count = 0
    if "?" in rest:
        rest, query = rest.split("?", 1)
        for pair in query.split("&"):
            if not pair:
                continue
            query_count += 1
            query_keys.append(pair.split("=", 1)[0])
    parts = rest.split("/")
    authority = parts[0]
    segments = [p for p in parts[1:] if p]
    return scheme, authority, segments, query_keys, query_count, len(fragments)


def load_urls():
    by_app = collections.defaultdict(list)
    path = os.path.join(FIXTURES, "ground_truth_urls.tsv")
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            app, _library, url, _methods = line.split("\t")
            by_app[app].append(url)
    return by_app


def row_for(app, urls):
    schemes = collections.Counter()
    seg_total = 0
    query_total = 0
    fragments_used = 0
    distinct = set()
    for url in urls:
        scheme, authority, segments, qkeys, qcount, fragcount = split_url(url)
        schemes[scheme] += 1
        seg_total += len(segments)
        query_total += qcount
        if fragcount:
            fragments_used += 1
        distinct.add((scheme, authority, tuple(segments), tuple(sorted(qkeys))))
    total = len(urls)
    mean_seg = seg_total / total if total else 0.0
    mean_query = query_total / total if total else 0.0
    langs = LANG_HITS.get(app, {})
    cells = [
        app,
        str(total),
        str(len(distinct)),
        str(schemes.get("http", 0)),
        str(schemes.get("https", 0)),
        str(schemes.get("ws", 0)),
        str(schemes.get("wss", 0)),
        "%.2f" % mean_seg,
        "%.2f" % mean_query,
        str(fragments_used),
        str(langs.get("sql", 0)),
        str(langs.get("js", 0)),
        str(langs.get("html", 0)),
        str(langs.get("bash", 0)),
        str(langs.get("php", 0)),
        str(langs.get("python", 0)),
        str(langs.get("ruby", 0)),
        str(CRED_LEAKS.get(app, 0)),
        "0",
    ]
    return ",".join(cells)


def main():
    by_app = load_urls()
    header = ("appId,totalUrls,distinctUrls,http,https,ws,wss,meanSegments,"
              "meanQueryPairs,fragmentsUsed,sqlHits,jsHits,htmlHits,bashHits,"
              "phpHits,pythonHits,rubyHits,credentialLeaks,partial")
    lines = [header]
    for app in APPS:
        lines.append(row_for(app, by_app.get(app, [])))
    all_urls = [u for app in APPS for u in by_app.get(app, [])]
    total_row = row_for("TOTAL", all_urls)
    # TOTAL smells are the column sums.
    cells = total_row.split(",")
    cells[10] = str(sum(l.get("sql", 0) for l in LANG_HITS.values()))
    cells[12] = str(sum(l.get("html", 0) for l in LANG_HITS.values()))
    cells[17] = str(sum(CRED_LEAKS.values()))
    lines.append(",".join(cells))
    out = os.path.join(FIXTURES, "expected_stats.csv")
    with open(out, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    print("wrote", out)
    print("\n".join(lines))


if __name__ == "__main__":
    main()
