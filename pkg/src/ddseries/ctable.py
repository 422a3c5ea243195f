"""Tables of expansion seeds c_{a,b} on the admissible index set.

The index set is I = {(a, b) : b >= 1, b+1 <= a <= 2b}.  Tables are an
input abstraction: the package manipulates any exact table (file-loaded or
synthetic) without claiming knowledge of the true lattice values beyond
what its own identities force.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction

from .series import format_rational, parse_rational


class CTableError(ValueError):
    pass


def in_index_set(a: int, b: int) -> bool:
    return b >= 1 and b + 1 <= a <= 2 * b


class CTable:
    """Immutable sparse map (a, b) -> Fraction over the admissible index set."""

    __slots__ = ("entries", "max_b")

    def __init__(self, entries=None, max_b: int | None = None):
        items = {}
        for (a, b), v in dict(entries or {}).items():
            a, b = int(a), int(b)
            if not in_index_set(a, b):
                raise CTableError(f"index (a={a}, b={b}) outside the admissible set")
            v = Fraction(v)
            if v != 0:
                items[(a, b)] = v
        self.entries = dict(sorted(items.items(), key=lambda kv: (kv[0][1], kv[0][0])))
        bs = [b for (_, b) in self.entries]
        inferred = max(bs) if bs else 0
        self.max_b = inferred if max_b is None else int(max_b)
        if self.max_b < inferred:
            raise CTableError(
                f"max_b={self.max_b} but an entry has b={inferred}"
            )

    def value(self, a: int, b: int) -> Fraction:
        return self.entries.get((a, b), Fraction(0))

    def restricted(self, b_max: int) -> "CTable":
        return CTable(
            {k: v for k, v in self.entries.items() if k[1] <= b_max},
            max_b=min(self.max_b, b_max),
        )

    def with_entry(self, a: int, b: int, value) -> "CTable":
        items = dict(self.entries)
        items[(a, b)] = Fraction(value)
        return CTable(items, max_b=max(self.max_b, b))

    def row_sum(self, b: int) -> Fraction:
        """c_b: sum over a of |c_{a,b}|."""
        return sum(
            (abs(v) for (a2, b2), v in self.entries.items() if b2 == b),
            Fraction(0),
        )

    def __eq__(self, other):
        if not isinstance(other, CTable):
            return NotImplemented
        return self.entries == other.entries and self.max_b == other.max_b

    def __len__(self):
        return len(self.entries)

    def to_dict(self) -> dict:
        return {
            "max_b": self.max_b,
            "entries": [
                {"a": a, "b": b, "value": format_rational(v)}
                for (a, b), v in self.entries.items()
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CTable":
        entries = {}
        for rec in data.get("entries", []):
            a, b = int(rec["a"]), int(rec["b"])
            if not in_index_set(a, b):
                raise CTableError(f"file entry (a={a}, b={b}) outside the admissible set")
            key = (a, b)
            if key in entries:
                raise CTableError(f"duplicate entry for (a={a}, b={b})")
            entries[key] = parse_rational(rec["value"])
        return cls(entries, max_b=int(data["max_b"]))

    @classmethod
    def load(cls, path) -> "CTable":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def save(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=2, sort_keys=True)

    def __repr__(self):
        return f"CTable({len(self.entries)} entries, max_b={self.max_b})"


def random_ctable(seed: int, max_b: int = 5, density: float = 0.6) -> CTable:
    """Seeded random table for property suites.

    Numerators are uniform in [-9, 9], denominators in [1, 4]; an index is
    populated with probability ``density``.  The caller records the seed.
    """
    rng = random.Random(seed)
    entries = {}
    for b in range(1, max_b + 1):
        for a in range(b + 1, 2 * b + 1):
            if rng.random() < density:
                num = rng.randint(-9, 9)
                if num:
                    entries[(a, b)] = Fraction(num, rng.randint(1, 4))
    return CTable(entries, max_b=max_b)
