"""Published reference values shipped with the package (``data/reference_values.csv``)."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources


@dataclass(frozen=True)
class Reference:
    source: str
    d: int
    Z: float | None
    quantity: str
    value: float
    alpha1: float | None
    alpha2: float | None
    beta: float | None
    m: float | None
    M: float | None
    e: float | None
    provenance: str
    text: str  # value exactly as printed, keeps the number of digits

    @property
    def printed_decimals(self) -> int:
        return len(self.text.split(".")[1]) if "." in self.text else 0


def _opt(s: str):
    s = s.strip()
    if not s:
        return None
    return math.inf if s.lower() == "inf" else float(s)


@lru_cache(maxsize=1)
def load() -> tuple[Reference, ...]:
    path = resources.files("heliumd") / "data" / "reference_values.csv"
    out = []
    with path.open(newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            out.append(Reference(
                source=row["source"], d=int(row["d"]), Z=_opt(row["Z"]),
                quantity=row["quantity"], value=float(row["value"]),
                alpha1=_opt(row["alpha1"]), alpha2=_opt(row["alpha2"]), beta=_opt(row["beta"]),
                m=_opt(row["m"]), M=_opt(row["M"]), e=_opt(row["e"]),
                provenance=row["provenance"], text=row["value"].strip(),
            ))
    return tuple(out)


def select(source: str, quantity: str | None = None, d: int | None = None, Z: float | None = None):
    return [
        r for r in load()
        if r.source == source
        and (quantity is None or r.quantity == quantity)
        and (d is None or r.d == d)
        and (Z is None or r.Z == Z)
    ]


def value(source: str, quantity: str, d: int | None = None, Z: float | None = None) -> float:
    rows = select(source, quantity, d, Z)
    if len(rows) != 1:
        raise KeyError(f"expected one reference for {(source, quantity, d, Z)}, found {len(rows)}")
    return rows[0].value
