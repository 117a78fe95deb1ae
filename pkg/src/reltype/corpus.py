"""Regression corpus: a YAML manifest of instances with expected relation types.

Manifest layout::

    field: GF(32003)            # optional default, overrides ring fields
    instances:
      - name: veronese_n2_d2
        ring: QQ[x,y]
        ideal: x^2, x*y, y^2
        base: ""                # optional base ideal (quotient ring)
        expected_rt: 2          # optional
        provenance: literature  # literature | computed | elementary
        conjecture: false       # conjectural expectations never fail a run
        notes: ...
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path
from typing import Sequence

import yaml

from .blowup import gr_presentation, rees_ideal, relation_type
from .field import Field, parse_field
from .groebner import DEFAULT_MAX_DEGREE, DEFAULT_TIMEOUT
from .parse import parse_ideal, parse_ring
from .poly import RingContext

__all__ = [
    "CorpusEntry",
    "CorpusResult",
    "load_manifest",
    "dump_manifest",
    "default_manifest_path",
    "run_entry",
    "run_corpus",
]

PROVENANCES = {"literature", "computed", "elementary"}


class ManifestError(ValueError):
    pass


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    ring: str
    ideal: str
    base: str = ""
    expected_rt: int | None = None
    provenance: str = "computed"
    conjecture: bool = False
    notes: str = ""

    def build(self, field: Field | None = None) -> tuple[RingContext, list]:
        ring = parse_ring(self.ring)
        if field is not None:
            ring = ring.with_field(field)
        if self.base.strip():
            ring = ring.with_base_ideal(parse_ideal(self.base, ring))
        return ring, parse_ideal(self.ideal, ring)


@dataclass
class CorpusResult:
    name: str
    expected_rt: int | None
    rt: int | None
    rt_gr: int | None
    exact: bool
    conjecture: bool
    status: str
    seconds: float
    t_degrees: list = field(default_factory=list)
    bidegrees: list | None = None
    error: str | None = None

    @property
    def failed(self) -> bool:
        return self.status in ("FAIL", "ERROR")


def default_manifest_path() -> Path:
    return Path(str(resources.files("reltype") / "data" / "corpus.yaml"))


def load_manifest(path) -> tuple[list[CorpusEntry], Field | None]:
    text = Path(path).read_text()
    data = yaml.safe_load(text) if text.strip() else None
    if data is None:
        return [], None
    if isinstance(data, list):
        data = {"instances": data}
    if not isinstance(data, dict):
        raise ManifestError("manifest must be a mapping or a list of instances")
    fld = parse_field(data["field"]) if data.get("field") else None
    entries = []
    names = set()
    for i, raw in enumerate(data.get("instances") or []):
        if not isinstance(raw, dict):
            raise ManifestError(f"instance {i} is not a mapping")
        missing = {"name", "ring", "ideal"} - set(raw)
        if missing:
            raise ManifestError(f"instance {i} lacks {sorted(missing)}")
        unknown = set(raw) - set(CorpusEntry.__dataclass_fields__)
        if unknown:
            raise ManifestError(f"instance {raw['name']!r} has unknown keys {sorted(unknown)}")
        e = CorpusEntry(**{k: ("" if v is None else v) if k in ("base", "notes") else v for k, v in raw.items()})
        if not isinstance(e.conjecture, bool):
            raise ManifestError(f"instance {e.name!r}: conjecture must be true or false")
        if e.expected_rt is not None and (not isinstance(e.expected_rt, int) or e.expected_rt < 1):
            raise ManifestError(f"instance {e.name!r}: expected_rt must be a positive integer")
        if e.name in names:
            raise ManifestError(f"duplicate instance name {e.name!r}")
        if e.provenance not in PROVENANCES:
            raise ManifestError(f"instance {e.name!r}: provenance must be one of {sorted(PROVENANCES)}")
        names.add(e.name)
        entries.append(e)
    return entries, fld


def dump_manifest(entries: Sequence[CorpusEntry], field: str | None = None) -> str:
    data = {}
    if field:
        data["field"] = field
    data["instances"] = [{k: v for k, v in asdict(e).items() if v not in ("", None) or k == "ideal"} for e in entries]
    return yaml.safe_dump(data, sort_keys=False, width=1000)


def run_entry(
    entry: CorpusEntry,
    field: Field | None = None,
    max_degree: int | None = DEFAULT_MAX_DEGREE,
    timeout: float | None = DEFAULT_TIMEOUT,
    with_gr: bool = True,
) -> CorpusResult:
    t0 = time.perf_counter()
    try:
        ring, gens = entry.build(field)
        pres = rees_ideal(ring, gens, max_degree=max_degree, timeout=timeout)
        rep = relation_type(pres, max_degree=max_degree, timeout=timeout)
        rt_gr = gr_presentation(pres, max_degree=max_degree, timeout=timeout).rt_gr if with_gr else None
    except Exception as exc:  # reported per instance, never aborts the run
        return CorpusResult(
            entry.name, entry.expected_rt, None, None, False, entry.conjecture,
            "ERROR", time.perf_counter() - t0, error=f"{type(exc).__name__}: {exc}",
        )
    ok = rep.exact and (rt_gr is None or rt_gr == rep.rt)
    if entry.expected_rt is not None:
        ok = ok and rep.rt == entry.expected_rt
    if entry.conjecture:
        status = "CONJ-OK" if ok else "CONJ-NO"
    elif not rep.exact:
        status = "CAPPED"
    else:
        status = "PASS" if ok else "FAIL"
    return CorpusResult(
        entry.name, entry.expected_rt, rep.rt, rt_gr, rep.exact, entry.conjecture, status,
        time.perf_counter() - t0, list(rep.t_degrees),
        None if rep.bidegrees is None else [list(b) for b in rep.bidegrees],
    )


def _run_packed(args):
    return run_entry(*args)


def run_corpus(
    entries: Sequence[CorpusEntry],
    field: Field | None = None,
    *,
    jobs: int = 1,
    max_degree: int | None = DEFAULT_MAX_DEGREE,
    timeout: float | None = DEFAULT_TIMEOUT,
    with_gr: bool = True,
) -> list[CorpusResult]:
    """Evaluate every entry; results keep manifest order."""
    work = [(e, field, max_degree, timeout, with_gr) for e in entries]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_packed, work))
    return [_run_packed(w) for w in work]


def capped_results(results: Sequence[CorpusResult]) -> list[CorpusResult]:
    return [r for r in results if r.status == "CAPPED"]
