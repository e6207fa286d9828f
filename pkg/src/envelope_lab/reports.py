"""Deterministic JSON reports and a plain text rendering."""

import json
import os
import tempfile

from . import __version__


def make_report(config, checks):
    return {"version": __version__, "config": config, "checks": list(checks)}


def failures(report, strict=False):
    bad = {"fail", "deviation"} if strict else {"fail"}
    return [c for c in report["checks"] if c["status"] in bad]


def to_json(report):
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def to_text(report):
    lines = [f"envelope-lab {report['version']}"]
    width = max((len(c["name"]) for c in report["checks"]), default=0)
    for c in report["checks"]:
        extra = f"  max residual {c['max_residual']}" if "max_residual" in c else ""
        lines.append(
            f"{c['status'].upper():9} {c['name']:{width}}  {c['checked'] - c['failed']}/{c['checked']}{extra}"
        )
    counts = {}
    for c in report["checks"]:
        counts[c["status"]] = counts.get(c["status"], 0) + 1
    lines.append("summary: " + ", ".join(f"{k} {v}" for k, v in sorted(counts.items())))
    return "\n".join(lines) + "\n"


def write_atomic(path, text):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)
