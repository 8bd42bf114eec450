"""Download the named collection graphs used by the corpus acceptance checks.

Files land in ``$SGDLAYOUT_CORPUS`` (default ``tests/data/suitesparse``) as
plain ``<name>.mtx``. Needs network access to sparse.tamu.edu.

    python3 scripts/fetch_corpus.py [--dest DIR]
"""

from __future__ import annotations

import argparse
import io
import os
import sys
import tarfile
import urllib.request

BASE = "https://sparse.tamu.edu/MM"

DESK = ["HB/1138_bus", "HB/dwt_1005", "Newman/lesmis", "HB/dwt_66", "HB/dwt_307",
        "HB/494_bus", "HB/dwt_361", "Newman/celegans_metabolic", "Pajek/Sandi_authors",
        "Gset/G15"]
LARGE = ["Pajek/USpowerGrid"]


def fetch(group_name: str, dest: str, timeout: float = 60.0) -> str:
    name = group_name.split("/")[1]
    out = os.path.join(dest, f"{name}.mtx")
    if os.path.exists(out):
        return out
    url = f"{BASE}/{group_name}.tar.gz"
    with urllib.request.urlopen(url, timeout=timeout) as resp:
        blob = resp.read()
    with tarfile.open(fileobj=io.BytesIO(blob), mode="r:gz") as tar:
        member = tar.getmember(f"{name}/{name}.mtx")
        data = tar.extractfile(member).read()
    with open(out, "wb") as fh:
        fh.write(data)
    return out


def main(argv=None) -> int:
    default = os.environ.get("SGDLAYOUT_CORPUS",
                             os.path.join(os.path.dirname(__file__), "..", "tests", "data", "suitesparse"))
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--dest", default=default)
    args = ap.parse_args(argv)
    os.makedirs(args.dest, exist_ok=True)
    failed = 0
    for gn in DESK + LARGE:
        try:
            print(fetch(gn, args.dest))
        except OSError as exc:
            failed += 1
            print(f"{gn}: {exc}", file=sys.stderr)
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
