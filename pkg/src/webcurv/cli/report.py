"""JSON reports with a fixed key order."""

import json
import time
from dataclasses import dataclass

from .. import __version__

SCHEMA = "webcurv-report/1"


@dataclass
class Check:
    name: str
    status: str  # pass | fail | skip
    witness: object = None
    wall_time: float = None

    def as_dict(self, timings):
        return {
            "name": self.name,
            "status": self.status,
            "witness": self.witness,
            "wall_time": round(self.wall_time, 4) if timings and self.wall_time is not None else None,
        }


def run_check(name, fn):
    """Run fn() -> (ok, witness) or (status, witness); exceptions become failures."""
    t = time.perf_counter()
    try:
        ok, witness = fn()
        status = ok if isinstance(ok, str) else ("pass" if ok else "fail")
    except Exception as e:  # a crashing check is a failed check
        status, witness = "fail", f"{type(e).__name__}: {e}"
    return Check(name, status, witness, time.perf_counter() - t)


def make_report(target, checks, timings=False, extra=None):
    out = {
        "schema": SCHEMA,
        "tool": "webcurv",
        "version": __version__,
        "target": target,
        "passed": all(c.status != "fail" for c in checks),
        "checks": [c.as_dict(timings) for c in checks],
    }
    if extra is not None:
        out["result"] = extra
    return out


def dumps(report):
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"
