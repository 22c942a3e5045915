#!/usr/bin/env python3
"""Fetch the three public networks used by the real-data acceptance test.

Needs outbound network access.  Downloads each dataset from its public
mirror, converts it to a plain 0-based edge list, verifies the node and
edge counts, and writes data/<name>.edges.

Usage: python scripts/fetch_datasets.py [--dest data/]
"""

import argparse
import io
import re
import sys
import urllib.request
import zipfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from cycletest.graph import load_edge_list  # noqa: E402

EXPECTED = {
    "polbooks": (105, 441),
    "dolphins": (62, 159),
    "road-chesapeake": (39, 170),
}

# candidate URLs per dataset, tried in order
SOURCES = {
    "dolphins": [
        "https://nrvis.com/download/data/soc/soc-dolphins.zip",
        "http://www-personal.umich.edu/~mejn/netdata/dolphins.zip",
    ],
    "road-chesapeake": [
        "https://nrvis.com/download/data/road/road-chesapeake.zip",
    ],
    "polbooks": [
        "https://nrvis.com/download/data/misc/polbooks.zip",
        "http://www-personal.umich.edu/~mejn/netdata/polbooks.zip",
    ],
}


def gml_to_edge_text(gml: str) -> str:
    """Minimal GML edge extractor: pairs of `source N` / `target N`."""
    sources = re.findall(r"\bsource\s+(\d+)", gml)
    targets = re.findall(r"\btarget\s+(\d+)", gml)
    if len(sources) != len(targets) or not sources:
        raise ValueError("could not extract edges from GML")
    return "".join(f"{s} {t}\n" for s, t in zip(sources, targets))


def extract_edges(payload: bytes, url: str) -> bytes:
    if url.endswith(".zip"):
        with zipfile.ZipFile(io.BytesIO(payload)) as zf:
            names = [n for n in zf.namelist()
                     if n.endswith((".mtx", ".edges", ".txt", ".gml"))]
            if not names:
                raise ValueError(f"no usable file inside {url}")
            name = sorted(names)[0]
            data = zf.read(name)
            if name.endswith(".gml"):
                return gml_to_edge_text(data.decode()).encode()
            return data
    return payload


def fetch(name: str, dest: Path) -> bool:
    for url in SOURCES[name]:
        try:
            print(f"  trying {url} ...")
            with urllib.request.urlopen(url, timeout=60) as resp:
                payload = resp.read()
            raw = extract_edges(payload, url)
            graph, report = load_edge_list(raw)
            n_ref, m_ref = EXPECTED[name]
            print(f"  parsed n={report.n} m={report.m} "
                  f"(expected n={n_ref} m={m_ref})")
            if (report.n, report.m) != (n_ref, m_ref):
                print(f"  WARNING: counts differ from the published table; "
                      f"this copy may be a different version of {name}")
            out = dest / f"{name}.edges"
            graph.write_edge_list(out)
            print(f"  wrote {out}")
            return True
        except Exception as e:  # noqa: BLE001 - report and try next mirror
            print(f"  failed: {e}")
    return False


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dest", default=str(Path(__file__).resolve().parent.parent / "data"))
    args = ap.parse_args()
    dest = Path(args.dest)
    dest.mkdir(parents=True, exist_ok=True)
    failures = []
    for name in EXPECTED:
        print(f"fetching {name}")
        if not fetch(name, dest):
            failures.append(name)
    if failures:
        print(f"FAILED to fetch: {', '.join(failures)}; place the files "
              f"manually (see data/README.md)")
        return 1
    print("all datasets ready")
    return 0


if __name__ == "__main__":
    sys.exit(main())
