"""Axiom verdicts shared by the membership, space and crisp-metric checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Optional

# Fuzzy-metric conditions (minimum t-norm) followed by the crisp metric axioms.
FUZZY_AXIOMS = ("KM1", "KM2", "KM3", "KM4", "KM5", "SDP", "FD")
METRIC_AXIOMS = ("D-nonneg", "D-identity", "D-symmetry", "D-triangle")
AXIOM_ORDER = FUZZY_AXIOMS + METRIC_AXIOMS

# What makes a space a fuzzy metric; FD is an extra property, not an axiom.
FUZZY_METRIC_AXIOMS = ("KM1", "KM2", "KM3", "KM4", "KM5", "SDP")


@dataclass(frozen=True)
class AxiomEntry:
    axiom: str
    passed: bool
    witness: Optional[tuple] = None
    detail: str = ""
    resolution: str = "exact"

    def __post_init__(self):
        if self.axiom not in AXIOM_ORDER:
            raise ValueError(f"unknown axiom id {self.axiom!r}")
        if not self.passed and self.witness is None:
            raise ValueError(f"failing {self.axiom} entry needs a witness")

    def to_dict(self) -> dict[str, Any]:
        return {
            "axiom": self.axiom,
            "passed": self.passed,
            "witness": None if self.witness is None else [_plain(w) for w in self.witness],
            "detail": self.detail,
            "resolution": self.resolution,
        }


@dataclass
class AxiomReport:
    """Ordered collection of per-axiom verdicts.

    Entries keep insertion order; :meth:`sorted` gives the canonical
    (axiom, witness) ordering used when reports from independent checks
    are merged.
    """

    entries: list[AxiomEntry] = field(default_factory=list)

    def add(self, axiom: str, passed: bool, witness=None, detail: str = "",
            resolution: str = "exact") -> AxiomEntry:
        entry = AxiomEntry(axiom, bool(passed), None if witness is None else tuple(witness),
                           detail, resolution)
        self.entries.append(entry)
        return entry

    def extend(self, other: "AxiomReport | Iterable[AxiomEntry]") -> None:
        self.entries.extend(other.entries if isinstance(other, AxiomReport) else other)

    def __iter__(self) -> Iterator[AxiomEntry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def for_axiom(self, axiom: str) -> list[AxiomEntry]:
        return [e for e in self.entries if e.axiom == axiom]

    def passed(self, *axioms: str) -> bool:
        """True when every entry (restricted to ``axioms`` if given) passes."""
        pool = self.entries if not axioms else [e for e in self.entries if e.axiom in axioms]
        return all(e.passed for e in pool)

    def verdict(self, axiom: str) -> bool:
        found = self.for_axiom(axiom)
        if not found:
            raise KeyError(f"no entry for {axiom}")
        return all(e.passed for e in found)

    def failures(self) -> list[AxiomEntry]:
        return [e for e in self.entries if not e.passed]

    @property
    def ok(self) -> bool:
        return self.passed()

    def sorted(self) -> "AxiomReport":
        def key(e: AxiomEntry):
            return (AXIOM_ORDER.index(e.axiom), repr(e.witness))
        return AxiomReport(sorted(self.entries, key=key))

    def to_dict(self) -> dict[str, Any]:
        return {"ok": self.ok, "entries": [e.to_dict() for e in self.entries]}

    def __str__(self) -> str:
        lines = []
        for e in self.entries:
            mark = "PASS" if e.passed else "FAIL"
            extra = f" witness={e.witness}" if e.witness is not None else ""
            lines.append(f"[{mark}] {e.axiom:<10} {e.detail}{extra} ({e.resolution})")
        return "\n".join(lines)


@dataclass(frozen=True)
class GridConfig:
    """Sampling density for checks that cannot be decided exactly.

    ``t_samples`` drives per-pair profile checks on black-box memberships,
    ``st_samples`` adds random (t, s) nodes to the KM4 grid.
    """

    t_samples: int = 64
    st_samples: int = 16
    include_breakpoints: bool = True
    seed: int = 0

    def __post_init__(self):
        if self.t_samples < 1 or self.st_samples < 1:
            raise ValueError("grid sample counts must be >= 1")


def _plain(value):
    # numpy scalars and labels into JSON-friendly values
    if hasattr(value, "item"):
        return value.item()
    if isinstance(value, (tuple, list)):
        return [_plain(v) for v in value]
    return value
