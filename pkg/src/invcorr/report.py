from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple


@dataclass
class AxiomReport:
    """Every violated axiom with a witness tuple; empty means all axioms hold."""

    violations: list[Violation] = field(default_factory=list)

    def add(self, axiom: str, *witness) -> None:
        self.violations.append(Violation(axiom, tuple(witness)))

    def extend(self, other: "AxiomReport") -> None:
        self.violations.extend(other.violations)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def failed(self) -> set[str]:
        return {v.axiom for v in self.violations}

    def first(self, axiom: str) -> Violation | None:
        for v in self.violations:
            if v.axiom == axiom:
                return v
        return None
