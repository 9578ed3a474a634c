"""Structured run reports: line-delimited records plus a human summary.

A report body is JSON lines: one ``config`` record echoing the full run
configuration (provenance: group, enumeration, sampler family, seeds,
horizons, depths), one ``result`` record per unit of work, and one
closing ``aggregate`` record.  Re-running the same configuration must
reproduce the body bit-exactly, so wall-clock time lives only in the
human summary, never in the body.  Exact rationals are rendered as
"p/q"; floating point appears only in entropy and total-variation
statistics.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .asymptotic import PairVerdict
from .groups import Element, Group


def render_rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def verdict_record(
    verdict: PairVerdict, group: Group | None = None, g0: Element | None = None
) -> dict:
    """Serializable record of a pair verdict: {verdict, k0?, g0?, K, N, profile}."""
    record = {
        "verdict": verdict.verdict,
        "K": verdict.horizon,
        "N": verdict.depth,
        "threshold": render_rational(verdict.threshold),
        "profile": [
            [k, render_rational(value), render_rational(bound)]
            for k, value, bound in verdict.profile
        ],
    }
    if verdict.certificate is not None:
        record["k0"] = verdict.certificate.k0
        record["k0_by_depth"] = [list(pair) for pair in verdict.certificate.k0_by_depth]
    if verdict.refutation_k is not None:
        record["refutation_k"] = verdict.refutation_k
    if g0 is not None:
        if group is None:
            raise ValueError("encoding g0 requires the group")
        record["g0"] = group.encode(g0)
    return record


def _dump(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"))


@dataclass
class RunReport:
    """Outcome of one batch experiment."""

    kind: str
    config: dict[str, str]
    records: list[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    ok: bool = True
    wall_s: float = 0.0

    def body_lines(self) -> list[str]:
        lines = [_dump({"record": "config", "kind": self.kind, **self.config})]
        lines.extend(_dump({"record": "result", **r}) for r in self.records)
        lines.append(_dump({"record": "aggregate", "ok": self.ok, **self.summary}))
        return lines

    def body_text(self) -> str:
        return "\n".join(self.body_lines()) + "\n"

    def summary_text(self) -> str:
        parts = [f"[{self.kind}]", "ok" if self.ok else "EXPECTATION-FAILURES"]
        parts.extend(f"{k}={v}" for k, v in sorted(self.summary.items()))
        parts.append(f"wall={self.wall_s:.2f}s")
        return " ".join(parts)

    def write(self, path) -> None:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(self.body_text())
