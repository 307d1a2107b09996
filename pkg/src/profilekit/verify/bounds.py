"""Explicit upper-bound formulas, evaluated in exact integer arithmetic."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from ..errors import InputError

# required parameters and their minimum admissible values
CLASS_PARAMS: dict[str, dict[str, int]] = {
    "ktminor": {"t": 1, "r": 0, "k": 0},
    "treewidth": {"t": 0, "r": 0, "k": 0},
    "minor": {"h": 4, "r": 0, "k": 0},
    "outerplanar": {"r": 0, "k": 0},
    "interval": {"r": 0, "k": 0},
    "chordal": {"r": 0, "k": 0},
    "treelength": {"ell": 1, "r": 0, "k": 0},
    "subdivision": {"s": 1, "r": 0, "k": 0},
    "balls": {"d": 1, "thinness": 1, "r": 1, "k": 0},
    "general_diam": {"r": 0, "k": 0},
    # colouring-number calculators
    "minor_scol": {"h": 4, "r": 0},
    "minor_wcol": {"h": 4, "r": 0},
    "subdivision_wcol": {"s": 1, "r": 0},
    "subdivision_scol": {"s": 1, "r": 0},
}

GATING_CLASSES = frozenset({"treewidth", "outerplanar", "interval", "chordal", "treelength"})


@dataclass(frozen=True)
class BoundQuery:
    class_tag: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        spec = CLASS_PARAMS.get(self.class_tag)
        if spec is None:
            raise InputError(f"unknown class tag {self.class_tag!r}; expected one of {sorted(CLASS_PARAMS)}")
        clean = {}
        for name, low in spec.items():
            if name not in self.params:
                raise InputError(f"class {self.class_tag} needs parameter {name!r}")
            value = self.params[name]
            if isinstance(value, bool) or not isinstance(value, int):
                raise InputError(f"parameter {name} must be an integer, got {value!r}")
            if value < low:
                raise InputError(f"parameter {name}={value} is below the minimum {low} for {self.class_tag}")
            clean[name] = value
        object.__setattr__(self, "params", clean)


def interval_bound(r: int, k: int) -> int:
    return 4 * k * k * r + 8 * k * k + 2 * k * r + 7 * k + 1


def chordal_bound(r: int, k: int) -> int:
    """Sum over at most 2k parts: clique bags (2^k), one-separator parts
    ((r+2) 2^k) and separated interval pieces ((r+1) times the interval count)."""
    return 2 * k * ((r + 3) * 2**k + (r + 1) * interval_bound(r, k))


def treelength_bound(ell: int, r: int, k: int) -> int:
    return 2 * k * (ell + 1) ** k * (1 + (r + 2) + (r + 2) ** 2)


def _ceil_log2(x: int) -> int:
    return (x - 1).bit_length()


def _value(tag: str, p: dict) -> int:
    r = p["r"]
    if tag == "ktminor":
        t, k = p["t"], p["k"]
        return (r + 1) ** (t - 1) * k ** (t - 1)
    if tag == "treewidth":
        t, k = p["t"], p["k"]
        return 2 ** (t + 3) * (r + 1) ** (t + 1) * (t + 1) ** (t + 1) * k
    if tag == "minor":
        h, k = p["h"], p["k"]
        return 4**h * (h - 3) * h ** (2 * (h - 1)) * (r + 1) ** (3 * (h - 1)) * k
    if tag == "outerplanar":
        return 1 + (2 * r + 2) ** 2 * p["k"]
    if tag == "interval":
        return interval_bound(r, p["k"])
    if tag == "chordal":
        return chordal_bound(r, p["k"])
    if tag == "treelength":
        return treelength_bound(p["ell"], r, p["k"])
    if tag == "subdivision":
        s, k = p["s"], p["k"]
        q = s ** (4 * r)
        return 4**r * q * (2 * r + 2) ** (2 * q + 4 * s**4 * (2 * r + 2) + r) * k
    if tag == "balls":
        d, t, k = p["d"], p["thinness"], p["k"]
        return (
            4**d
            * (r + 2) ** (d + t * (2 * r + 1) ** d)
            * t
            * _ceil_log2(r)
            * comb(r + 2 * t + 2, 2 * t + 2)
            * k
        )
    if tag == "general_diam":
        return (r + 2) ** p["k"] - 1
    if tag == "minor_scol":
        h = p["h"]
        return (h - 3) * (h - 1) * (2 * r + 1)
    if tag == "minor_wcol":
        h = p["h"]
        return comb(r + h - 2, h - 2) * (h - 3) * (2 * r + 1)
    if tag == "subdivision_wcol":
        s = p["s"]
        return (4 * s**4 * (2 * r + 2)) ** r
    if tag == "subdivision_scol":
        s = p["s"]
        return s * s + (s * s + 2 * s ** (4 * r)) + 4 * s**4 * (2 * r + 1)
    raise InputError(f"unknown class tag {tag!r}")


def bound_value(q: BoundQuery | str, **params) -> int:
    """Exact value of the bound for ``q``; keyword params build the query from a tag."""
    if isinstance(q, str):
        q = BoundQuery(q, params)
    elif params:
        raise InputError("pass either a BoundQuery or a class tag with parameters")
    return _value(q.class_tag, q.params)
