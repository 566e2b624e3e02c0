"""Bundled example operators with their expected verdicts."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .classify import Verdict, classify_gh, classify_gs
from .operator import OperatorSpec, operator_from_json


@dataclass(frozen=True)
class Example:
    name: str
    description: str
    op: OperatorSpec
    xi_max: int
    expected: dict


@dataclass(frozen=True)
class ExampleRow:
    example: Example
    gh: Verdict
    gs: Verdict

    @staticmethod
    def _matches(expected: dict, verdict: Verdict) -> bool:
        answers = expected["answer"]
        if isinstance(answers, str):
            answers = [answers]
        if verdict.answer not in answers:
            return False
        cid = expected.get("condition_id")
        return cid is None or verdict.condition_id == cid

    @property
    def ok(self) -> bool:
        e = self.example.expected
        return self._matches(e["GH"], self.gh) and self._matches(e["GS"], self.gs)

    def to_json(self) -> dict:
        return {
            "name": self.example.name,
            "expected": self.example.expected,
            "actual": {"GH": self.gh.to_json(), "GS": self.gs.to_json()},
            "match": self.ok,
        }


def load_examples() -> list[Example]:
    out = []
    folder = resources.files("vekua") / "examples_data"
    for entry in sorted(folder.iterdir(), key=lambda p: p.name):
        if not entry.name.endswith(".json"):
            continue
        obj = json.loads(entry.read_text(encoding="utf-8"))
        out.append(
            Example(
                obj["name"],
                obj.get("description", ""),
                operator_from_json(obj["operator"]),
                int(obj.get("xi_max", 50)),
                obj["expected"],
            )
        )
    return out


def run_examples(xi_max: int | None = None) -> list[ExampleRow]:
    rows = []
    for ex in load_examples():
        xm = ex.xi_max if xi_max is None else xi_max
        rows.append(ExampleRow(ex, classify_gh(ex.op, xm), classify_gs(ex.op, xm)))
    return rows


def _fmt(expected: dict) -> str:
    a = expected["answer"]
    a = "/".join(a) if isinstance(a, list) else a
    cid = expected.get("condition_id")
    return f"{a}({cid})" if cid else a


def _fmt_v(v: Verdict) -> str:
    return f"{v.answer}({v.condition_id})" if v.condition_id else v.answer


def format_table(rows: list[ExampleRow]) -> str:
    head = f"{'example':<20} {'GH expected':<14} {'GH actual':<14} {'GS expected':<20} {'GS actual':<14} match"
    lines = [head, "-" * len(head)]
    for r in rows:
        e = r.example.expected
        lines.append(
            f"{r.example.name:<20} {_fmt(e['GH']):<14} {_fmt_v(r.gh):<14} "
            f"{_fmt(e['GS']):<20} {_fmt_v(r.gs):<14} {'yes' if r.ok else 'NO'}"
        )
    return "\n".join(lines)
