# File name: lemmas/reports.py

"""Verdicts of the numeric lemma checks."""

from __future__ import annotations

import json
from typing import Any, Iterable, Mapping, Optional

from kakeya_utils import frozen, frozendict

from geometry.scalar import *

#: Prefix of bound names that are lower bounds; every other bound is an upper bound.
LOWER_BOUND_PREFIX = "min_"


def satisfies(name: str, measured: Any, bound: Any) -> bool:
    """Compares one measurement with its bound according to the bound's name."""
    if name.startswith(LOWER_BOUND_PREFIX):
        return measured >= bound
    return measured <= bound


@frozen
class LemmaReport:
    """An immutable verdict of a quantitative check.

    Attributes:
        lemma_id (`str`): name of the checked statement.
        hypotheses_met (`bool`): whether the statement's hypotheses held for the
            inputs; without them no verdict is rendered.
        measured (`~typing.Mapping`\\[`str`, `~typing.Any`]): measured
            quantities, including diagnostics that carry no bound.
        bound (`~typing.Mapping`\\[`str`, `~typing.Any`]): bounds keyed like
            the measured quantity they constrain; names starting with ``min_``
            are lower bounds.
        passed (`bool`): ``True`` iff the hypotheses held and every bounded
            measurement satisfies its bound.
        note (`str`): free-form context, such as the index a check ran at.
    """

    lemma_id: str
    hypotheses_met: bool
    measured: Mapping[str, Any]
    bound: Mapping[str, Any]
    passed: bool
    note: str

    def __init__(
        self,
        lemma_id: str,
        hypotheses_met: bool,
        measured: Mapping[str, Any],
        bound: Mapping[str, Any],
        note: str = "",
    ):
        """Initializes a `LemmaReport`, deriving its verdict.

        Parameters:
            lemma_id: name of the checked statement.
            hypotheses_met: whether the hypotheses held.
            measured: measured quantities.
            bound: bounds on some of the measured quantities.
            note: optional context.
        """
        for name in bound:
            assert name in measured, f"bound '{name}' has no measurement"
        self.lemma_id = lemma_id
        self.hypotheses_met = bool(hypotheses_met)
        self.measured = frozendict(measured)
        self.bound = frozendict(bound)
        self.note = note
        self.passed = self.hypotheses_met and all(
            satisfies(name, self.measured[name], value) for name, value in self.bound.items()
        )

    def violations(self) -> Iterable[str]:
        """Names of the bounded measurements that miss their bounds."""
        return [name for name, value in self.bound.items() if not satisfies(name, self.measured[name], value)]

    @property
    def failed(self) -> bool:
        """Whether this is a genuine failure: hypotheses held but a bound did not."""
        return self.hypotheses_met and not self.passed

    def to_json(self) -> dict:
        return {
            "lemma_id": self.lemma_id,
            "hypotheses_met": self.hypotheses_met,
            "measured": {name: _render(value) for name, value in self.measured.items()},
            "bound": {name: _render(value) for name, value in self.bound.items()},
            "pass": self.passed,
            "note": self.note,
        }

    def __repr__(self) -> str:
        verdict = "PASS" if self.passed else "FAIL" if self.hypotheses_met else "N/A"
        suffix = f" [{self.note}]" if self.note else ""
        return f"{self.lemma_id}: {verdict}{suffix}"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LemmaReport) and self.to_json() == other.to_json()

    def __ne__(self, other: object) -> bool:
        return not self == other

    def __hash__(self) -> int:
        return hash(str(self))


def _render(value: Any) -> Any:
    if hasattr(value, "context"):
        return Precision.of(value).render(value)
    return value


def merge_reports(lemma_id: str, reports: Iterable[LemmaReport], note: str = "") -> LemmaReport:
    """Combines reports of one check at many inputs into a single worst-case report.

    For every bound name the combined report keeps the measurement and bound
    of the input with the smallest slack, so it fails exactly when some input
    fails a bound.

    Parameters:
        lemma_id: identifier of the combined report.
        reports: the reports to combine; an empty collection passes vacuously.
        note: context for the combined report.

    Returns:
        The combined report.
    """
    reports = list(reports)
    if not reports:
        return LemmaReport(lemma_id, True, {}, {}, note or "vacuous")
    hypotheses_met = all(report.hypotheses_met for report in reports)
    measured = {}
    bound = {}
    slack: dict = {}
    for report in reports:
        for name, value in report.bound.items():
            actual = report.measured[name]
            margin = actual - value if name.startswith(LOWER_BOUND_PREFIX) else value - actual
            if name not in slack or margin < slack[name]:
                slack[name] = margin
                measured[name] = actual
                bound[name] = value
    failing = [report for report in reports if not report.passed]
    if failing and not note:
        note = f"{len(failing)} of {len(reports)} failing; first: {failing[0].note}"
    return LemmaReport(lemma_id, hypotheses_met, measured, bound, note or f"{len(reports)} cases")


def reports_to_json(reports: Iterable[LemmaReport], indent: Optional[int] = 2) -> str:
    return json.dumps([report.to_json() for report in reports], indent=indent)
