"""Finite simplicial complexes on [m] and their reduced cohomology over exact fields.

Vertices are the integers ``1..m``.  Simplices are sorted tuples, and the
order 1 < 2 < ... < m fixes every orientation sign.  A vertex of [m] that lies
in no facet is a *ghost* vertex.

The complex with no facets still contains the empty simplex, so its reduced
cohomology is the field in degree -1.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .errors import InputError, ParseError
from .linalg import Echelon, Field, nullspace


def _antichain(faces: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    sets = {frozenset(f) for f in faces}
    sets.discard(frozenset())
    maximal = [s for s in sets if not any(s < t for t in sets)]
    return tuple(sorted(tuple(sorted(s)) for s in maximal))


@dataclass(frozen=True)
class SimplicialComplex:
    """Abstract simplicial complex on ``[m]`` stored by its facets.

    ``labels`` optionally records what each vertex stands for (the original
    vertex of a full subcomplex, the simplex behind a barycentric vertex,
    an orbit in a quotient).
    """

    m: int
    facets: tuple[tuple[int, ...], ...]
    labels: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.m < 0:
            raise InputError("vertex count m must be non-negative")
        for f in self.facets:
            if not f:
                raise InputError("facets must be nonempty")
            if f[0] < 1 or f[-1] > self.m:
                raise InputError(f"facet {f} is not a subset of [{self.m}]")

    @classmethod
    def from_faces(cls, m: int, faces: Iterable[Iterable[int]], labels=None) -> "SimplicialComplex":
        """Build a complex from any list of faces; non-maximal ones are absorbed."""
        return cls(m, _antichain(faces), labels)

    @classmethod
    def simplex(cls, m: int) -> "SimplicialComplex":
        return cls(m, (tuple(range(1, m + 1)),) if m else ())

    @classmethod
    def boundary_of_simplex(cls, m: int) -> "SimplicialComplex":
        """The boundary of the (m-1)-simplex, a triangulated (m-2)-sphere."""
        return cls.from_faces(m, combinations(range(1, m + 1), m - 1))

    @classmethod
    def cycle(cls, m: int) -> "SimplicialComplex":
        return cls.from_faces(m, [(i, i % m + 1) for i in range(1, m + 1)])

    def label(self, v: int):
        return self.labels[v - 1] if self.labels is not None else v

    @property
    def is_empty(self) -> bool:
        return not self.facets

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for f in self.facets for v in f}))

    @cached_property
    def ghosts(self) -> tuple[int, ...]:
        used = set(self.vertices)
        return tuple(v for v in range(1, self.m + 1) if v not in used)

    @cached_property
    def faces(self) -> frozenset:
        """Every simplex, the empty one included."""
        out = {()}
        for f in self.facets:
            for k in range(1, len(f) + 1):
                out.update(combinations(f, k))
        return frozenset(out)

    @cached_property
    def simplices_by_dim(self) -> dict[int, list[tuple[int, ...]]]:
        out: dict[int, list] = {d: [] for d in range(-1, self.dim + 1)}
        for s in self.faces:
            out[len(s) - 1].append(s)
        for d in out:
            out[d].sort()
        return out

    def __contains__(self, simplex) -> bool:
        return tuple(sorted(simplex)) in self.faces

    def euler_characteristic(self) -> int:
        return sum((-1) ** (len(s) - 1) for s in self.faces if s)

    def f_vector(self) -> list[int]:
        return [len(self.simplices_by_dim[d]) for d in range(0, self.dim + 1)]

    def relabel(self, perm: Sequence[int]) -> "SimplicialComplex":
        """Image of the complex under the vertex map ``v -> perm[v-1]``."""
        return SimplicialComplex.from_faces(self.m, ([perm[v - 1] for v in f] for f in self.facets))

    def to_json(self) -> dict:
        return {"m": self.m, "facets": [list(f) for f in self.facets]}

    def to_text(self) -> str:
        return "; ".join([f"m={self.m}"] + [" ".join(map(str, f)) for f in self.facets])

    def __str__(self):
        return self.to_text()


# -- parsing -----------------------------------------------------------------

_HEADER = re.compile(r"\s*m\s*=\s*(\S*)\s*$")


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def parse_complex(text: str) -> SimplicialComplex:
    """Parse the facet-list format ``m=4; 1 2; 2 3; 3 4; 1 4``.

    The ``m=`` header is optional (m defaults to the largest vertex).  ``#``
    starts a comment running to the end of the line; a single trailing ``;``
    is allowed.
    """
    src = re.sub(r"#[^\n]*", lambda mt: " " * len(mt.group()), text)
    tokens = []
    start = 0
    for i, ch in enumerate(src + ";"):
        if ch == ";":
            tokens.append((start, src[start:i]))
            start = i + 1
    if tokens and not tokens[-1][1].strip():
        tokens.pop()

    m = None
    faces = []
    for idx, (offset, tok) in enumerate(tokens):
        if not tok.strip():
            if idx == 0 and len(tokens) == 1:
                break
            raise ParseError("empty facet", *_position(text, offset))
        head = _HEADER.match(tok)
        if head:
            if idx != 0:
                raise ParseError("header m=<int> must come first", *_position(text, offset))
            try:
                m = int(head.group(1))
            except ValueError:
                raise ParseError(f"bad vertex count {head.group(1)!r}", *_position(text, offset)) from None
            if m < 0:
                raise ParseError("vertex count must be non-negative", *_position(text, offset))
            continue
        face = []
        for mt in re.finditer(r"\S+", tok):
            pos = _position(text, offset + mt.start())
            try:
                v = int(mt.group())
            except ValueError:
                raise ParseError(f"malformed vertex {mt.group()!r}", *pos) from None
            if v < 1:
                raise ParseError(f"vertex {v} < 1", *pos)
            if m is not None and v > m:
                raise ParseError(f"vertex {v} > m={m}", *pos)
            face.append(v)
        faces.append(face)
    if m is None:
        m = max((v for f in faces for v in f), default=0)
    return SimplicialComplex.from_faces(m, faces)


def complex_from_json(data) -> SimplicialComplex:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        faces = [[int(v) for v in f] for f in data["facets"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"complex JSON needs a 'facets' list of integer lists ({exc})") from None
    if any(not f for f in faces):
        raise InputError("empty facet in complex JSON")
    m = data.get("m")
    if m is None:
        m = max((v for f in faces for v in f), default=0)
    for f in faces:
        for v in f:
            if v < 1 or v > m:
                raise InputError(f"vertex {v} outside [1, {m}]")
    return SimplicialComplex.from_faces(int(m), faces)


def load_complex(text: str) -> SimplicialComplex:
    """Dispatch on content: JSON objects go through :func:`complex_from_json`."""
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from None
        return complex_from_json(data.get("complex", data))
    return parse_complex(text)


# -- combinatorics ---------------------------------------------------------------


def full_subcomplex(K: SimplicialComplex, J: Iterable[int]) -> SimplicialComplex:
    """K_J re-indexed over sorted(J); ``labels`` maps new vertices back to K's."""
    J = sorted(set(J))
    if any(v < 1 or v > K.m for v in J):
        raise InputError(f"vertex set {J} is not a subset of [{K.m}]")
    index = {v: i + 1 for i, v in enumerate(J)}
    Jset = set(J)
    faces = ([index[v] for v in f if v in Jset] for f in K.facets)
    return SimplicialComplex.from_faces(len(J), faces, labels=tuple(K.label(v) for v in J))


def path_components(K: SimplicialComplex) -> list[tuple[int, ...]]:
    """Components as sorted vertex tuples, ordered by smallest vertex; ghosts are singletons."""
    parent = list(range(K.m + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f in K.facets:
        for a, b in zip(f, f[1:]):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for v in range(1, K.m + 1):
        groups.setdefault(find(v), []).append(v)
    return sorted(tuple(g) for g in groups.values())


def barycentric_subdivision(K: SimplicialComplex) -> SimplicialComplex:
    """sd K: one vertex per nonempty simplex, one facet per maximal flag.

    Vertices are ordered by (size, lexicographic); the first m are therefore
    the original vertices, and ghost vertices stay ghosts.  ``labels`` holds
    the simplex behind each new vertex.
    """
    simplices = sorted(set(K.faces - {()}) | {(v,) for v in K.ghosts}, key=lambda s: (len(s), s))
    index = {s: i + 1 for i, s in enumerate(simplices)}
    flags = []
    for f in K.facets:
        for order in permutations(f):
            flags.append([index[tuple(sorted(order[: k + 1]))] for k in range(len(order))])
    return SimplicialComplex.from_faces(len(simplices), flags, labels=tuple(simplices))


# -- cohomology ------------------------------------------------------------------


def coboundary(K: SimplicialComplex, sigma: tuple[int, ...]) -> dict:
    """delta of the indicator cochain of ``sigma``: sum over cofacets with sign (-1)^position."""
    out = {}
    for v in range(1, K.m + 1):
        if v in sigma:
            continue
        rho = tuple(sorted(sigma + (v,)))
        if rho in K.faces:
            out[rho] = -1 if rho.index(v) % 2 else 1
    return out


@dataclass
class CohomologyBasis:
    """Reduced cohomology of one complex with chosen cocycle representatives.

    ``ranks[l]`` and ``representatives[l]`` are indexed by degree ``l >= -1``;
    cochains are dicts from simplices to field elements.
    """

    field: Field
    complex: SimplicialComplex
    ranks: dict[int, int]
    representatives: dict[int, list[dict]]
    _coords: dict[int, Echelon] = field(repr=False, default_factory=dict)

    def rank(self, degree: int) -> int:
        return self.ranks.get(degree, 0)

    def nonzero_degrees(self) -> list[int]:
        return [d for d, r in sorted(self.ranks.items()) if r]

    def coordinates(self, degree: int, cocycle: dict) -> list:
        """Coordinates of the class of ``cocycle`` in the representative basis."""
        r = self.rank(degree)
        if r == 0:
            return []
        residual, combo = self._coords[degree].reduce(cocycle)
        if residual:
            raise ValueError("cochain is not a cocycle")
        return [self.field.norm(combo.get(("rep", i), 0)) for i in range(r)]


def _coboundary_rows(K: SimplicialComplex, degree: int) -> list[dict]:
    """Rows of delta^degree, one per (degree+1)-simplex rho: (delta f)(rho) = sum_k (-1)^k f(rho - rho_k)."""
    rows = []
    for rho in K.simplices_by_dim.get(degree + 1, []):
        rows.append({rho[:k] + rho[k + 1 :]: (-1 if k % 2 else 1) for k in range(len(rho))})
    return rows


def reduced_cohomology(K: SimplicialComplex, field: Field | str = Field()) -> CohomologyBasis:
    """Exact reduced cohomology of ``K`` with explicit cocycle representatives."""
    f = Field.parse(field)
    ranks, reps, coords = {}, {}, {}
    for l in range(-1, K.dim + 1):
        cols = K.simplices_by_dim[l]
        rows = [{s: f(c) for s, c in r.items()} for r in _coboundary_rows(K, l)]
        cocycles = nullspace(f, rows, cols)
        ech = Echelon(f)
        for i, s in enumerate(K.simplices_by_dim.get(l - 1, [])):
            ech.add({t: f(c) for t, c in coboundary(K, s).items()}, ("cob", i))
        chosen = []
        for z in cocycles:
            if ech.add(z, ("rep", len(chosen))):
                chosen.append(z)
        ranks[l] = len(chosen)
        reps[l] = chosen
        coords[l] = ech
    return CohomologyBasis(f, K, ranks, reps, coords)


def reduced_betti(K: SimplicialComplex, field: Field | str = Field()) -> dict[int, int]:
    """Nonzero reduced Betti numbers by degree (no representatives)."""
    f = Field.parse(field)
    ranks = {}
    for l in range(-1, K.dim + 2):
        e = Echelon(f)
        for r in _coboundary_rows(K, l):
            e.add({s: f(c) for s, c in r.items()})
        ranks[l] = len(e)
    betti = {l: len(K.simplices_by_dim[l]) - ranks[l] - ranks.get(l - 1, 0) for l in range(-1, K.dim + 1)}
    return {l: b for l, b in betti.items() if b}
