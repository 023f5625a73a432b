"""Report records and their two renderings.

Machine output is one JSON object per line. Every object carries
``"schema"`` and ``"type"``; exact quantities are strings ``"p/q"`` (or
``"p"`` for integers held as fractions), never floats. :func:`parse_record`
turns a line back into the record it came from.

Human output is an aligned table per record type; there fractions are shown
as decimals with four digits.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from src.const import SCHEMA_VERSION, STATUS_FAIL, STATUS_PASS


def format_fraction(value: int | Fraction) -> str:
    return str(Fraction(value))


def parse_fraction(text: str) -> Fraction:
    return Fraction(text)


def format_decimal(value: int | Fraction | None) -> str:
    if value is None:
        return "-"
    return f"{float(value):.4f}"


def status_of(verdicts: Mapping[str, bool]) -> str:
    return STATUS_PASS if all(verdicts.values()) else STATUS_FAIL


@dataclass(frozen=True)
class SolveRecord:
    instance: str
    status: str
    n: int | None = None
    m: int | None = None
    g: int | None = None  # None when acyclic
    nu: int | None = None
    fas: int | None = None
    tau: int | None = None
    tau_star: Fraction | None = None
    x_greedy: tuple[int, ...] | None = None
    x_exact: tuple[int, ...] | None = None
    gw_ratio: Fraction | None = None
    bounds: dict[str, Fraction] = field(default_factory=dict)
    verdicts: dict[str, bool] = field(default_factory=dict)
    message: str | None = None


@dataclass(frozen=True)
class RegionRecord:
    instance: str
    node: int | str
    k: int
    phi: int
    claim_bound: Fraction
    tight: bool
    pieces: tuple[int, int, int]  # counts of type 1, 2, 3
    checks: dict[str, bool] = field(default_factory=dict)
    status: str = STATUS_PASS


@dataclass(frozen=True)
class ProofRecord:
    instance: str
    status: str
    n: int | None = None
    g: int | None = None
    nu: int | None = None
    verdicts: dict[str, bool] = field(default_factory=dict)
    message: str | None = None


@dataclass(frozen=True)
class SweepRecord:
    family: str
    n: int
    g: int
    status: str
    instances: int = 0
    skipped: int = 0
    errors: int = 0
    max_tau: int | None = None
    theorem_bound: Fraction | None = None
    max_nu: int | None = None
    packing_bound: Fraction | None = None
    max_gw_ratio: Fraction | None = None


@dataclass(frozen=True)
class OracleRecord:
    instance: str
    status: str
    tau: int | None = None
    brute_tau: int | None = None
    nu: int | None = None
    brute_nu: int | None = None
    message: str | None = None


Record = SolveRecord | RegionRecord | ProofRecord | SweepRecord | OracleRecord


def _frac(value: Fraction | None) -> str | None:
    return None if value is None else format_fraction(value)


def _unfrac(value: str | None) -> Fraction | None:
    return None if value is None else parse_fraction(value)


def _tuple(value: Sequence[int] | None) -> tuple[int, ...] | None:
    return None if value is None else tuple(value)


def record_to_message(record: Record) -> dict[str, Any]:
    """Serialize a record to its JSON shape."""
    base: dict[str, Any] = {"schema": SCHEMA_VERSION}
    if isinstance(record, SolveRecord):
        return base | {
            "type": "solve",
            "instance": record.instance,
            "status": record.status,
            "n": record.n,
            "m": record.m,
            "g": record.g,
            "nu": record.nu,
            "fas": record.fas,
            "tau": record.tau,
            "tau_star": _frac(record.tau_star),
            "x_greedy": None if record.x_greedy is None else list(record.x_greedy),
            "x_exact": None if record.x_exact is None else list(record.x_exact),
            "gw_ratio": _frac(record.gw_ratio),
            "bounds": {k: format_fraction(v) for k, v in record.bounds.items()},
            "verdicts": dict(record.verdicts),
            "message": record.message,
        }
    if isinstance(record, RegionRecord):
        return base | {
            "type": "region",
            "instance": record.instance,
            "node": record.node,
            "k": record.k,
            "phi": record.phi,
            "claim_bound": format_fraction(record.claim_bound),
            "tight": record.tight,
            "pieces": list(record.pieces),
            "checks": dict(record.checks),
            "status": record.status,
        }
    if isinstance(record, ProofRecord):
        return base | {
            "type": "proof",
            "instance": record.instance,
            "status": record.status,
            "n": record.n,
            "g": record.g,
            "nu": record.nu,
            "verdicts": dict(record.verdicts),
            "message": record.message,
        }
    if isinstance(record, SweepRecord):
        return base | {
            "type": "sweep",
            "family": record.family,
            "n": record.n,
            "g": record.g,
            "status": record.status,
            "instances": record.instances,
            "skipped": record.skipped,
            "errors": record.errors,
            "max_tau": record.max_tau,
            "theorem_bound": _frac(record.theorem_bound),
            "max_nu": record.max_nu,
            "packing_bound": _frac(record.packing_bound),
            "max_gw_ratio": _frac(record.max_gw_ratio),
        }
    if isinstance(record, OracleRecord):
        return base | {
            "type": "oracle",
            "instance": record.instance,
            "status": record.status,
            "tau": record.tau,
            "brute_tau": record.brute_tau,
            "nu": record.nu,
            "brute_nu": record.brute_nu,
            "message": record.message,
        }
    raise TypeError(f"Unknown record type: {type(record).__name__}")


def message_to_record(msg: Mapping[str, Any]) -> Record:
    if msg.get("schema") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema {msg.get('schema')!r}")
    kind = msg.get("type")
    if kind == "solve":
        return SolveRecord(
            instance=msg["instance"],
            status=msg["status"],
            n=msg["n"],
            m=msg["m"],
            g=msg["g"],
            nu=msg["nu"],
            fas=msg["fas"],
            tau=msg["tau"],
            tau_star=_unfrac(msg["tau_star"]),
            x_greedy=_tuple(msg["x_greedy"]),
            x_exact=_tuple(msg["x_exact"]),
            gw_ratio=_unfrac(msg["gw_ratio"]),
            bounds={k: parse_fraction(v) for k, v in msg["bounds"].items()},
            verdicts=dict(msg["verdicts"]),
            message=msg["message"],
        )
    if kind == "region":
        t1, t2, t3 = msg["pieces"]
        return RegionRecord(
            instance=msg["instance"],
            node=msg["node"],
            k=msg["k"],
            phi=msg["phi"],
            claim_bound=parse_fraction(msg["claim_bound"]),
            tight=msg["tight"],
            pieces=(t1, t2, t3),
            checks=dict(msg["checks"]),
            status=msg["status"],
        )
    if kind == "proof":
        return ProofRecord(
            instance=msg["instance"],
            status=msg["status"],
            n=msg["n"],
            g=msg["g"],
            nu=msg["nu"],
            verdicts=dict(msg["verdicts"]),
            message=msg["message"],
        )
    if kind == "sweep":
        return SweepRecord(
            family=msg["family"],
            n=msg["n"],
            g=msg["g"],
            status=msg["status"],
            instances=msg["instances"],
            skipped=msg["skipped"],
            errors=msg["errors"],
            max_tau=msg["max_tau"],
            theorem_bound=_unfrac(msg["theorem_bound"]),
            max_nu=msg["max_nu"],
            packing_bound=_unfrac(msg["packing_bound"]),
            max_gw_ratio=_unfrac(msg["max_gw_ratio"]),
        )
    if kind == "oracle":
        return OracleRecord(
            instance=msg["instance"],
            status=msg["status"],
            tau=msg["tau"],
            brute_tau=msg["brute_tau"],
            nu=msg["nu"],
            brute_nu=msg["brute_nu"],
            message=msg["message"],
        )
    raise ValueError(f"unknown record type {kind!r}")


def format_record(record: Record) -> str:
    """One line of the record stream; keys sorted so output is byte-stable."""
    return json.dumps(record_to_message(record), sort_keys=True, ensure_ascii=False)


def parse_record(line: str) -> Record:
    return message_to_record(json.loads(line))


def parse_records(text: str) -> list[Record]:
    return [parse_record(line) for line in text.splitlines() if line.strip()]


# --- Tables -----------------------------------------------------------------


def _cell(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, Fraction):
        return format_decimal(value)
    if isinstance(value, tuple | list):
        return ",".join(str(v) for v in value) or "{}"
    return str(value)


def _align(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> list[str]:
    cells = [list(headers)] + [[_cell(v) for v in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    return ["  ".join(c.ljust(w) for c, w in zip(r, widths, strict=True)).rstrip() for r in cells]


def _failed(checks: Mapping[str, bool]) -> str:
    return ",".join(k for k, ok in checks.items() if not ok) or "-"


_TABLES: dict[type, tuple[tuple[str, ...], Any]] = {
    SolveRecord: (
        ("instance", "status", "n", "m", "g", "nu", "fas", "tau", "tau*", "bound", "ratio",
         "|X|greedy", "|X|exact", "failed"),
        lambda r: (r.instance, r.status, r.n, r.m, r.g, r.nu, r.fas, r.tau, r.tau_star,
                   r.bounds.get("theorem"), r.gw_ratio,
                   None if r.x_greedy is None else len(r.x_greedy),
                   None if r.x_exact is None else len(r.x_exact),
                   r.message or _failed(r.verdicts)),
    ),
    RegionRecord: (
        ("instance", "node", "k", "phi", "claim", "tight", "T1", "T2", "T3", "failed"),
        lambda r: (r.instance, r.node, r.k, r.phi, r.claim_bound, r.tight, *r.pieces,
                   _failed(r.checks)),
    ),
    ProofRecord: (
        ("instance", "status", "n", "g", "nu", "failed"),
        lambda r: (r.instance, r.status, r.n, r.g, r.nu, r.message or _failed(r.verdicts)),
    ),
    SweepRecord: (
        ("family", "n", "g", "status", "runs", "skipped", "errors", "max tau", "bound",
         "max nu", "packing", "max ratio"),
        lambda r: (r.family, r.n, r.g, r.status, r.instances, r.skipped, r.errors, r.max_tau,
                   r.theorem_bound, r.max_nu, r.packing_bound, r.max_gw_ratio),
    ),
    OracleRecord: (
        ("instance", "status", "tau", "brute tau", "nu", "brute nu", "message"),
        lambda r: (r.instance, r.status, r.tau, r.brute_tau, r.nu, r.brute_nu, r.message),
    ),
}


def render_table(records: Iterable[Record]) -> str:
    """Group records by type (first-seen order) and render each group as a table."""
    groups: dict[type, list[Record]] = {}
    for record in records:
        groups.setdefault(type(record), []).append(record)
    blocks = []
    for kind, members in groups.items():
        headers, row = _TABLES[kind]
        blocks.append("\n".join(_align(headers, [row(r) for r in members])))
    return "\n\n".join(blocks) + ("\n" if blocks else "")
