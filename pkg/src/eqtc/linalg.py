"""Exact linear algebra over Q and F_p on sparse dict vectors.

Vectors are ``dict[key, scalar]`` with zero entries omitted.  Keys only need
to be mutually comparable; elimination always picks the smallest key as the
pivot, so results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable

from .errors import InputError

_SMALL_PRIMES = [q for q in range(2, 98) if all(q % d for d in range(2, int(q**0.5) + 1))]


@dataclass(frozen=True)
class Field:
    """Q (``p == 0``) or the prime field F_p with ``p <= 97``."""

    p: int = 0

    def __post_init__(self):
        if self.p and self.p not in _SMALL_PRIMES:
            raise InputError(f"F_p needs a prime p <= 97, got {self.p}")

    @classmethod
    def parse(cls, text) -> "Field":
        """Accept ``"Q"``, ``"F2"``, ``"F_7"``, ``"GF(3)"`` or a bare prime."""
        if isinstance(text, Field):
            return text
        if isinstance(text, int):
            return cls(text)
        s = str(text).strip().upper().replace("_", "").replace("GF(", "F").rstrip(")")
        if s in ("Q", "0", "QQ"):
            return cls(0)
        if s.startswith("F"):
            s = s[1:]
        try:
            return cls(int(s))
        except ValueError:
            raise InputError(f"unknown field {text!r}; use Q or F<p>") from None

    @property
    def name(self) -> str:
        return "Q" if self.p == 0 else f"F{self.p}"

    def __str__(self):
        return self.name

    @property
    def zero(self):
        return Fraction(0) if self.p == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.p == 0 else 1

    def __call__(self, x):
        """Coerce an int, Fraction or string like ``"-3/4"`` into the field."""
        if self.p == 0:
            return Fraction(x)
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise InputError(f"{x} has no image in F{self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def norm(self, x):
        return x % self.p if self.p else x

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("zero has no inverse")
        return pow(x, -1, self.p) if self.p else 1 / x

    def to_json(self, x):
        """Scalars serialize as ints when integral, else as ``"a/b"`` strings."""
        if self.p:
            return int(x)
        return int(x) if x.denominator == 1 else str(x)


def axpy(field: Field, y: dict, a, x: dict) -> dict:
    """In-place ``y += a * x``; returns ``y``."""
    if not a:
        return y
    for k, v in x.items():
        s = field.norm(y.get(k, 0) + a * v)
        if s:
            y[k] = s
        else:
            y.pop(k, None)
    return y


def scale(field: Field, a, x: dict) -> dict:
    if not a:
        return {}
    return {k: field.norm(a * v) for k, v in x.items()}


class Echelon:
    """Incrementally built row-echelon basis of a subspace.

    Each stored row keeps the combination of inserted vectors that produced
    it, so :meth:`reduce` can express a vector in terms of the inputs.
    """

    def __init__(self, field: Field):
        self.field = field
        self._rows: dict = {}  # pivot key -> (row with pivot entry 1, combination)
        self._order: list = []  # sorted pivot keys

    def __len__(self):
        return len(self._rows)

    @property
    def pivots(self) -> list:
        return list(self._order)

    def reduce(self, vec: dict) -> tuple[dict, dict]:
        """Return ``(residual, combo)`` with ``vec = residual + sum combo[l] * input_l``.

        The residual has no entries at pivot positions; it is empty exactly
        when ``vec`` lies in the span.
        """
        f = self.field
        r = dict(vec)
        combo: dict = {}
        if not r:
            return r, combo
        for piv in self._order:
            c = r.get(piv)
            if c:
                row, rc = self._rows[piv]
                axpy(f, r, f.norm(-c), row)
                axpy(f, combo, c, rc)
        return r, combo

    def add(self, vec: dict, label: Hashable = None) -> bool:
        """Insert ``vec``; returns False (and stores nothing) if it is dependent."""
        f = self.field
        r, combo = self.reduce(vec)
        if not r:
            return False
        combo = scale(f, f.norm(-1), combo)
        combo[label] = f.norm(combo.get(label, 0) + 1)
        if not combo[label]:
            del combo[label]
        piv = min(r)
        inv = f.inv(r[piv])
        self._rows[piv] = (scale(f, inv, r), scale(f, inv, combo))
        self._insert_pivot(piv)
        return True

    def _insert_pivot(self, piv):
        lo, hi = 0, len(self._order)
        while lo < hi:
            mid = (lo + hi) // 2
            if self._order[mid] < piv:
                lo = mid + 1
            else:
                hi = mid
        self._order.insert(lo, piv)

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)[0]

    def basis(self) -> list[dict]:
        return [dict(self._rows[p][0]) for p in self._order]


def rank(field: Field, rows: Iterable[dict]) -> int:
    e = Echelon(field)
    return sum(e.add(r) for r in rows)


def nullspace(field: Field, rows: list[dict], columns: list) -> list[dict]:
    """Basis of ``{x : row . x = 0 for every row}`` over the given column keys.

    Computed from the reduced row echelon form; one basis vector per free
    column, with a 1 in that column.
    """
    f = field
    ech = Echelon(f)
    for r in rows:
        ech.add(r)
    # full back-substitution so every pivot row is zero at every other pivot
    piv_rows = {p: dict(ech._rows[p][0]) for p in ech.pivots}
    for p in reversed(ech.pivots):
        row = piv_rows[p]
        for q in ech.pivots:
            if q != p and p in piv_rows[q]:
                axpy(f, piv_rows[q], f.norm(-piv_rows[q][p]), row)
    pivset = set(piv_rows)
    basis = []
    for c in columns:
        if c in pivset:
            continue
        v = {c: f.one}
        for p, row in piv_rows.items():
            a = row.get(c)
            if a:
                v[p] = f.norm(-a)
        basis.append(v)
    return basis
