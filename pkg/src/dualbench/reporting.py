"""Small verdict/witness containers used by every checker in the package.

Witnesses are always rendered with user-declared element names so a report
can be checked by hand against the input documents.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a single verification; ``witness`` is None iff it passed."""

    passed: bool
    witness: str | None = None

    def __bool__(self):
        return self.passed


PASS = CheckResult(True)


def failed(witness):
    return CheckResult(False, witness)


@dataclass
class DualityReport:
    """Verdict bundle for one natural-map verification.

    ``verdicts`` maps check names to booleans, ``witnesses`` carries one
    rendered counterexample per failed check, ``maps`` holds the natural map
    (and its inverse when it exists) as name-to-name tables.
    """

    mode: str
    obj: str
    verdicts: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    cardinalities: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(self.verdicts.values())

    def record(self, check, result: CheckResult):
        self.verdicts[check] = result.passed
        if not result.passed and result.witness is not None:
            self.witnesses[check] = result.witness

    def to_dict(self):
        return {
            "mode": self.mode,
            "object": self.obj,
            "verdicts": dict(sorted(self.verdicts.items())),
            "witnesses": [
                {"check": k, "witness": w} for k, w in sorted(self.witnesses.items())
            ],
            "cardinalities": dict(sorted(self.cardinalities.items())),
            "maps": {k: dict(sorted(v.items())) for k, v in sorted(self.maps.items())},
            "passed": self.passed,
        }


@dataclass
class AxiomReport:
    """Per-clause verdicts for the lattice-valued algebra axioms."""

    algebra: str
    literal_iv: bool
    clauses: dict = field(default_factory=dict)  # clause tag -> CheckResult

    @property
    def passed(self):
        return all(r.passed for r in self.clauses.values())

    def to_dict(self):
        return {
            "object": self.algebra,
            "literal_iv": self.literal_iv,
            "verdicts": {k: r.passed for k, r in sorted(self.clauses.items())},
            "witnesses": {
                k: r.witness for k, r in sorted(self.clauses.items()) if not r.passed
            },
            "passed": self.passed,
        }
