"""Label alphabets: a finite label set, a silent label, and a pairing.

The pairing (an involution on the non-silent labels) drives
synchronization: two edges whose labels are paired can fire together as
a single silent step.  The involution may be partial; unpaired labels
simply never synchronize.
"""

from __future__ import annotations

from dataclasses import dataclass


class ConfigError(ValueError):
    """Ill-formed alphabet configuration."""


@dataclass(frozen=True)
class Alphabet:
    labels: frozenset[str]
    tau: str = "tau"
    pairs: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "labels", frozenset(self.labels))
        object.__setattr__(self, "pairs", tuple(tuple(p) for p in self.pairs))
        if self.tau not in self.labels:
            raise ConfigError(f"silent label {self.tau!r} is not in the label set")
        inv: dict[str, str] = {}
        for a, b in self.pairs:
            for x in (a, b):
                if x not in self.labels:
                    raise ConfigError(f"involution mentions unknown label {x!r}")
                if x == self.tau:
                    raise ConfigError("the silent label cannot be paired")
            if inv.get(a, b) != b or inv.get(b, a) != a:
                raise ConfigError(f"involution is not self-inverse at {a!r}/{b!r}")
            inv[a] = b
            inv[b] = a
        object.__setattr__(self, "_inv", inv)

    def bar(self, label: str) -> str | None:
        """The partner of ``label`` under the involution, if any."""
        return self._inv.get(label)

    def check_label(self, label: str) -> str:
        if label not in self.labels:
            raise ConfigError(f"unknown label {label!r}")
        return label


def make_alphabet(labels, tau="tau", pairs=()) -> Alphabet:
    labels = set(labels) | {tau}
    return Alphabet(frozenset(labels), tau, tuple(pairs))


#: Alphabet used by the bundled fixtures and examples.
DEFAULT_ALPHABET = make_alphabet(
    ["a", "abar", "b", "bbar", "c", "u", "v", "w", "x"],
    pairs=[("a", "abar"), ("b", "bbar")],
)
