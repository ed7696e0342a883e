"""Experiment reports and their machine-readable serializations.

JSON output is bit-stable for a fixed (experiment, params, seed): keys are
sorted, and every float is quantized to 12 significant digits when it enters
the report, so the default shortest-repr float serialization round-trips
byte-identically.  Wall-clock runtime is kept on the object but excluded
from the serialized payload by default so reports stay reproducible.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field

from .field import FieldCtx


def quantize(x):
    """Clamp floats to 12 significant digits; recurse through containers."""
    if isinstance(x, bool) or isinstance(x, int):
        return x
    if isinstance(x, float):
        return float(f"{x:.12g}")
    if isinstance(x, dict):
        return {k: quantize(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [quantize(v) for v in x]
    return x


@dataclass
class Report:
    """One experiment's verdict: parameters, per-assertion records, ratio
    tables where applicable, and the overall pass (hard assertions only)."""

    experiment: str
    ctx: dict
    params: dict
    seed: int | None = None
    assertions: list = field(default_factory=list)
    ratios: list = field(default_factory=list)
    info: dict = field(default_factory=dict)
    runtime_ms: float = 0.0

    @classmethod
    def start(cls, experiment: str, ctx: FieldCtx, params: dict,
              seed: int | None = None) -> "Report":
        return cls(
            experiment=experiment,
            ctx={"p": ctx.p, "n": ctx.n, "q": ctx.q,
                 "modulus": ctx.modulus_str(), "descriptor": ctx.descriptor()},
            params=quantize(dict(params)),
            seed=seed,
        )

    def record(self, claim: str, lhs, rhs, passed: bool, hard: bool = True):
        self.assertions.append(quantize({
            "claim": claim, "lhs": lhs, "rhs": rhs,
            "pass": bool(passed), "hard": bool(hard),
        }))

    def extend(self, assertions):
        for a in assertions:
            self.record(a["claim"], a["lhs"], a["rhs"], a["pass"],
                        hard=a.get("hard", True))

    def add_ratio_row(self, **row):
        self.ratios.append(quantize(row))

    @property
    def overall_pass(self) -> bool:
        return all(a["pass"] for a in self.assertions if a["hard"])

    # -- serialization ---------------------------------------------------------

    def to_obj(self, include_runtime: bool = False) -> dict:
        obj = {
            "experiment": self.experiment,
            "ctx": self.ctx,
            "params": self.params,
            "seed": self.seed,
            "assertions": self.assertions,
            "ratios": self.ratios,
            "info": quantize(self.info),
            "overall_pass": self.overall_pass,
        }
        if include_runtime:
            obj["runtime_ms"] = quantize(self.runtime_ms)
        return obj

    def to_json(self, include_runtime: bool = False) -> str:
        return json.dumps(self.to_obj(include_runtime), sort_keys=True,
                          separators=(",", ": "), indent=1) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        obj = json.loads(text)
        rep = cls(
            experiment=obj["experiment"],
            ctx=obj["ctx"],
            params=obj["params"],
            seed=obj["seed"],
            assertions=obj["assertions"],
            ratios=obj["ratios"],
            info=obj["info"],
            runtime_ms=obj.get("runtime_ms", 0.0),
        )
        return rep

    def to_csv(self) -> str:
        lines = ["experiment,q,kind,claim_or_key,lhs,rhs,pass"]

        def fmt(v):
            if isinstance(v, float):
                return f"{v:.12g}"
            return "" if v is None else str(v).replace(",", ";")

        q = self.ctx["q"]
        for a in self.assertions:
            claim = str(a["claim"]).replace(",", ";")
            lines.append(
                f"{self.experiment},{q},assert,{claim},"
                f"{fmt(a['lhs'])},{fmt(a['rhs'])},{a['pass']}"
            )
        for row in self.ratios:
            for k, v in sorted(row.items()):
                lines.append(f"{self.experiment},{q},ratio,{k},{fmt(v)},,")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        lines = [
            f"experiment: {self.experiment}   ctx: {self.ctx['descriptor']}"
            f"   seed: {self.seed}",
            f"params: {json.dumps(self.params, sort_keys=True)}",
            f"overall: {'PASS' if self.overall_pass else 'FAIL'}"
            f"   ({self.runtime_ms:.0f} ms)",
        ]
        failed = [a for a in self.assertions if not a["pass"]]
        passed = [a for a in self.assertions if a["pass"]]
        for a in failed + passed:
            tag = "ok " if a["pass"] else "FAIL"
            soft = "" if a["hard"] else " [report-only]"
            lines.append(f"  [{tag}] {a['claim']}: lhs={a['lhs']} rhs={a['rhs']}{soft}")
        if self.ratios:
            lines.append("  ratios:")
            for row in self.ratios:
                lines.append("    " + json.dumps(row, sort_keys=True))
        return "\n".join(lines) + "\n"


def emit(report: Report, fmt: str = "text", path: str | None = None,
         include_runtime: bool = False):
    """Write a report as json / csv / text to a path or stdout."""
    if fmt == "json":
        payload = report.to_json(include_runtime)
    elif fmt == "csv":
        payload = report.to_csv()
    elif fmt == "text":
        payload = report.to_text()
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path is None:
        sys.stdout.write(payload)
    else:
        try:
            with open(path, "w") as fh:
                fh.write(payload)
        except OSError as exc:
            raise OSError(f"cannot write report to {path}: {exc}") from exc
