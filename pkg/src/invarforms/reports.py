"""Structured check reports: canonical JSON and aligned text renderings.

Canonical JSON is byte-reproducible for identical inputs and seed: keys are
sorted, scalars are exact rational strings, and the runtime field is
normalized to 0 (measured times appear only in the text rendering).
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

TOOL = "invarforms"
VERSION = "0.1.0"

PASS = "PASS"
FAIL = "FAIL"
WITNESS = "WITNESS"
CERTIFIED_NONEXISTENCE = "CERTIFIED_NONEXISTENCE"
UNKNOWN = "UNKNOWN"

STATUSES = (PASS, FAIL, WITNESS, CERTIFIED_NONEXISTENCE, UNKNOWN)


@dataclass
class CheckRecord:
    name: str
    status: str
    fixture: str
    claim: str
    data: dict = field(default_factory=dict)
    expected: str = PASS            # not serialized; drives exit codes
    runtime_ms: int = 0             # measured; canonical JSON writes 0

    def ok(self) -> bool:
        return self.status == self.expected


@dataclass
class Report:
    suite: str
    seed: int
    records: list[CheckRecord]
    tool: str = TOOL
    version: str = VERSION

    @property
    def input_digest(self) -> str:
        payload = f"{self.tool}:{self.version}:{self.suite}:{self.seed}".encode()
        return hashlib.sha256(payload).hexdigest()

    def all_expected(self) -> bool:
        return all(r.ok() for r in self.records)


def thread_cap() -> int:
    raw = os.environ.get("INVARFORMS_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def parallel_map(fn: Callable, items: Sequence) -> list:
    """Deterministic map; runs on a thread pool when INVARFORMS_THREADS > 1."""
    workers = thread_cap()
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def timed_record(name: str, fixture: str, claim: str, expected: str,
                 fn: Callable[[], tuple[str, dict]]) -> CheckRecord:
    start = time.monotonic()
    try:
        status, data = fn()
    except Exception as exc:
        status, data = FAIL, {"error": f"{type(exc).__name__}: {exc}"}
    ms = int((time.monotonic() - start) * 1000)
    return CheckRecord(name, status, fixture, claim, data, expected, ms)


def _record_obj(r: CheckRecord) -> dict:
    return {
        "name": r.name,
        "status": r.status,
        "fixture": r.fixture,
        "claim": r.claim,
        "data": r.data,
        "runtime_ms": 0,
    }


def emit_report(report: Report, fmt: str = "json") -> str:
    if fmt == "json":
        obj = {
            "tool": report.tool,
            "version": report.version,
            "suite": report.suite,
            "seed": report.seed,
            "input_digest": report.input_digest,
            "records": [_record_obj(r) for r in report.records],
        }
        return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"
    if fmt == "text":
        lines = [f"{report.tool} {report.version}  suite={report.suite} seed={report.seed}",
                 f"digest {report.input_digest}", ""]
        width = max((len(r.name) for r in report.records), default=4)
        for r in report.records:
            mark = "" if r.ok() else f"  (expected {r.expected})"
            lines.append(f"{r.name:<{width}}  {r.status:<24} {r.runtime_ms:>6} ms  "
                         f"[{r.fixture}] {r.claim}{mark}")
        lines.append("")
        good = sum(1 for r in report.records if r.ok())
        lines.append(f"{good}/{len(report.records)} records as expected")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def parse_report_json(text: str) -> Report:
    obj = json.loads(text)
    records = [CheckRecord(o["name"], o["status"], o["fixture"], o["claim"],
                           o["data"], o["status"], o["runtime_ms"])
               for o in obj["records"]]
    return Report(obj["suite"], obj["seed"], records, obj["tool"], obj["version"])
