from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Hashable


def _json_elem(x):
    return list(x) if isinstance(x, tuple) else x


@dataclass
class StructureConstants:
    """Multiplicities ``lambda[C, D, E]`` keyed by class identifiers.

    A class identifier is the canonical least element of the class: a residue
    for partitions of Z_n, a ``(t, k)`` pair for oracles over Z x Z_n.
    ``window`` is ``None`` for finite groups.
    """

    n: int
    classes: dict[Hashable, tuple]
    table: dict[tuple, int]
    window: int | None = None
    notes: dict[str, Any] = field(default_factory=dict)

    def __getitem__(self, key):
        return self.table.get(key, 0)

    def size(self, key) -> int:
        return len(self.classes[key])

    def to_record(self) -> dict:
        keys = sorted(self.classes)
        rec = {
            "n": self.n,
            "classes": [[_json_elem(x) for x in self.classes[k]] for k in keys],
            "structure_constants": [
                {"C": _json_elem(c), "D": _json_elem(d), "E": _json_elem(e), "lambda": lam}
                for (c, d, e), lam in sorted(self.table.items())
            ],
        }
        if self.window is not None:
            rec["window"] = self.window
            rec["product_window"] = 2 * self.window
        rec.update(self.notes)
        return rec
