"""Finite simplicial group actions: isotropy, fixed subcomplexes, orbit classes, quotients.

Permutations are one-line tuples: ``p[v - 1]`` is the image of vertex ``v``.
All orbit-class computations work at simplex granularity: under a regular
action every point of an open simplex has the same isotropy, so a G-path
between orbits exists exactly when the barycenters are joined inside the
fixed subcomplex of the source's isotropy group.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from functools import cached_property
from itertools import combinations

from .bounds import Fact
from .errors import BudgetError, InputError, InvalidActionError
from .simplicial import (SimplicialComplex, barycentric_subdivision, complex_from_json,
                         full_subcomplex, path_components)

Perm = tuple[int, ...]
DEFAULT_MAX_ORDER = 10080
MAX_SUBDIVISIONS = 2


def compose(p: Perm, q: Perm) -> Perm:
    """p after q."""
    return tuple(p[v - 1] for v in q)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v - 1] = i + 1
    return tuple(out)


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def cycle_notation(p: Perm) -> str:
    seen, cycles = set(), []
    for start in range(1, len(p) + 1):
        if start in seen or p[start - 1] == start:
            continue
        cyc, v = [], start
        while v not in seen:
            seen.add(v)
            cyc.append(v)
            v = p[v - 1]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"


def _closure(gens, degree: int, max_order: int) -> frozenset:
    e = identity(degree)
    elements = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = compose(g, a)
                if b not in elements:
                    elements.add(b)
                    nxt.append(b)
                    if len(elements) > max_order:
                        raise BudgetError(f"group order exceeds the budget {max_order}")
        frontier = nxt
    return frozenset(elements)


@dataclass(frozen=True)
class PermGroup:
    """A permutation group on [degree] with its full element list."""

    degree: int
    elements: tuple[Perm, ...]
    generators: tuple[Perm, ...] = field(default=(), compare=False)

    @classmethod
    def from_generators(cls, degree: int, gens, max_order: int = DEFAULT_MAX_ORDER) -> "PermGroup":
        gens = tuple(tuple(g) for g in gens)
        elems = _closure(gens, degree, max_order)
        return cls(degree, tuple(sorted(elems)), gens)

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls(degree, (identity(degree),))

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    def __contains__(self, p) -> bool:
        return tuple(p) in self.element_set

    def is_trivial(self) -> bool:
        return self.order == 1

    def name(self) -> str:
        gens = [g for g in (self.generators or self.elements) if g != identity(self.degree)]
        if not gens:
            return "1"
        return "<" + ", ".join(cycle_notation(g) for g in gens) + ">"

    @cached_property
    def subgroups(self) -> list["PermGroup"]:
        """All subgroups, by repeatedly joining a known subgroup with one more element.

        Ordered by (order, sorted elements) for determinism.
        """
        trivial = frozenset({identity(self.degree)})
        found = {trivial: ()}
        queue = [trivial]
        while queue:
            H = queue.pop()
            gens = found[H]
            for g in self.elements:
                if g in H:
                    continue
                new_gens = gens + (g,)
                K = _closure(new_gens, self.degree, self.order)
                if K not in found:
                    found[K] = new_gens
                    queue.append(K)
        subs = [PermGroup(self.degree, tuple(sorted(H)), gens) for H, gens in found.items()]
        subs.sort(key=lambda S: (S.order, S.elements))
        return subs

    def conjugate(self, H: "PermGroup", g: Perm) -> frozenset:
        gi = inverse(g)
        return frozenset(compose(compose(g, h), gi) for h in H.elements)

    def are_conjugate(self, H: "PermGroup", K: "PermGroup") -> bool:
        if H.order != K.order:
            return False
        target = K.element_set
        return any(self.conjugate(H, g) == target for g in self.elements)

    def is_subconjugate(self, H: "PermGroup", K: "PermGroup") -> bool:
        """Some conjugate of H lies inside K."""
        target = K.element_set
        return any(self.conjugate(H, g) <= target for g in self.elements)


def act(g: Perm, simplex) -> tuple[int, ...]:
    return tuple(sorted(g[v - 1] for v in simplex))


@dataclass
class GAction:
    """A finite group acting on a complex by vertex permutations.

    ``subdivisions`` counts the barycentric subdivisions applied to reach a
    regular action; ``original`` is the complex as given.
    """

    group: PermGroup
    complex: SimplicialComplex
    regular: bool
    subdivisions: int = 0
    original: SimplicialComplex | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def act(self, g: Perm, simplex) -> tuple[int, ...]:
        return act(g, simplex)

    def orbit(self, simplex) -> tuple:
        return tuple(sorted({act(g, simplex) for g in self.group.elements}))

    @cached_property
    def simplex_orbits(self) -> list[tuple]:
        """Orbits of nonempty simplices, each sorted, ordered by their (size, lex) smallest member."""
        seen, out = set(), []
        for s in sorted(self.complex.faces - {()}, key=lambda s: (len(s), s)):
            if s in seen:
                continue
            orb = self.orbit(s)
            seen.update(orb)
            out.append(orb)
        return out

    def fixed_vertices(self, H: PermGroup) -> tuple[int, ...]:
        used = set(self.complex.vertices)
        return tuple(v for v in range(1, self.complex.m + 1)
                     if v in used and all(h[v - 1] == v for h in H.elements))


def _is_regular(G: PermGroup, K: SimplicialComplex) -> bool:
    for g in G.elements:
        for s in K.faces:
            if s and act(g, s) == s and any(g[v - 1] != v for v in s):
                return False
    return True


def induced_subdivision_action(G: PermGroup, K: SimplicialComplex) -> tuple[PermGroup, SimplicialComplex]:
    """The action of G on sd K (vertices of sd K are simplices of K)."""
    sd = barycentric_subdivision(K)
    index = {s: i + 1 for i, s in enumerate(sd.labels)}
    gens = []
    for g in G.generators or G.elements:
        gens.append(tuple(index[act(g, s)] for s in sd.labels))
    return PermGroup.from_generators(sd.m, gens, max(G.order, 1)), sd


def _check_permutation(g, m: int) -> Perm:
    try:
        g = tuple(int(v) for v in g)
    except (TypeError, ValueError):
        raise InvalidActionError(f"generator {g!r} is not a list of integers") from None
    if sorted(g) != list(range(1, m + 1)):
        raise InvalidActionError(f"generator {list(g)} is not a permutation of [{m}]")
    return g


def validate_action(gens, K: SimplicialComplex, max_order: int = DEFAULT_MAX_ORDER) -> GAction:
    """Check that ``gens`` act on ``K``; subdivide (at most twice) until the action is regular."""
    gens = [_check_permutation(g, K.m) for g in gens] or [identity(K.m)]
    G = PermGroup.from_generators(K.m, gens, max_order)
    facets = set(K.facets)
    for g in G.elements:
        for f in K.facets:
            img = act(g, f)
            if img not in facets:
                bad = next((s for s in combinations(f, 2) if act(g, s) not in K.faces), f)
                raise InvalidActionError(
                    f"{cycle_notation(g)} maps {list(bad)} to {list(act(g, bad))}, which is not in the complex")
    current_G, current_K, steps = G, K, 0
    while not _is_regular(current_G, current_K):
        if steps == MAX_SUBDIVISIONS:
            raise InvalidActionError(f"action is still irregular after {MAX_SUBDIVISIONS} subdivisions")
        current_G, current_K = induced_subdivision_action(current_G, current_K)
        steps += 1
    return GAction(current_G, current_K, True, steps, K)


def subdivide_action(action: GAction) -> GAction:
    """One more barycentric subdivision of an already valid action."""
    G, K = induced_subdivision_action(action.group, action.complex)
    return GAction(G, K, _is_regular(G, K), action.subdivisions + 1, action.original)


# -- isotropy and fixed sets -----------------------------------------------------


def isotropy(action: GAction, simplex) -> PermGroup:
    """Elements fixing ``simplex`` pointwise."""
    key = ("iso", tuple(simplex))
    if key not in action._cache:
        els = tuple(g for g in action.group.elements if all(g[v - 1] == v for v in simplex))
        action._cache[key] = PermGroup(action.group.degree, els, els)
    return action._cache[key]


def fixed_subcomplex(action: GAction, H: PermGroup) -> SimplicialComplex:
    """Simplices fixed pointwise by H, as a full subcomplex re-indexed over the fixed vertices."""
    return full_subcomplex(action.complex, action.fixed_vertices(H))


def _components_of_fixed(action: GAction, H: PermGroup) -> dict[int, int]:
    """Global vertex -> component id within the fixed subcomplex of H."""
    key = ("comp", H.elements)
    if key not in action._cache:
        J = action.fixed_vertices(H)
        X = full_subcomplex(action.complex, J)
        comp = {}
        for cid, members in enumerate(path_components(X)):
            for v in members:
                comp[J[v - 1]] = cid
        action._cache[key] = comp
    return action._cache[key]


@dataclass(frozen=True)
class GConnectivity:
    connected: bool
    witness: PermGroup | None = None

    def __iter__(self):
        return iter((self.connected, self.witness))

    def __bool__(self):
        return self.connected


def is_g_connected(action: GAction, strict: bool = False) -> GConnectivity:
    """Every fixed set X^H is path-connected; empty fixed sets pass unless ``strict``."""
    for H in action.group.subgroups:
        n = len(set(_components_of_fixed(action, H).values()))
        if n > 1 or (strict and n == 0):
            return GConnectivity(False, H)
    return GConnectivity(True, None)


def nonempty_disconnected_fixed_set(action: GAction) -> PermGroup | None:
    """A subgroup whose fixed set is nonempty and disconnected, if any."""
    for H in action.group.subgroups:
        if len(set(_components_of_fixed(action, H).values())) > 1:
            return H
    return None


def is_free(action: GAction) -> bool:
    return all(isotropy(action, orb[0]).is_trivial() for orb in action.simplex_orbits)


def one_orbit_type(action: GAction) -> bool:
    """All simplex isotropy groups are conjugate."""
    groups = [isotropy(action, orb[0]) for orb in action.simplex_orbits]
    return all(action.group.are_conjugate(groups[0], H) for H in groups[1:])


def orbit_reachable(action: GAction, sigma, tau) -> bool:
    """A G-path runs from O(sigma) to O(tau).

    True iff some g.tau lies in the same component as sigma inside the fixed
    subcomplex of the isotropy group of sigma.
    """
    if not action.regular:
        raise InvalidActionError("orbit reachability needs a regular action")
    sigma, tau = tuple(sorted(sigma)), tuple(sorted(tau))
    comp = _components_of_fixed(action, isotropy(action, sigma))
    target = comp[sigma[0]]
    for g in action.group.elements:
        img = act(g, tau)
        if all(v in comp for v in img) and comp[img[0]] == target:
            return True
    return False


# -- orbit diagram ---------------------------------------------------------------------


@dataclass
class OrbitClass:
    index: int
    representative: tuple[int, ...]
    isotropy: PermGroup
    orbits: list[tuple]
    minimal: bool = False

    @property
    def member_orbit_count(self) -> int:
        return len(self.orbits)


@dataclass
class OrbitDiagram:
    """Orbit classes with the order [O(y)] >= [O(x)] and its Hasse edges (upper, lower)."""

    classes: list[OrbitClass]
    above: set[tuple[int, int]]  # strict relation (i, j): class i > class j
    edges: list[tuple[int, int]]
    complex: SimplicialComplex
    space: str = "X"
    group: str = "G"

    @property
    def minimal(self) -> list[OrbitClass]:
        return [c for c in self.classes if c.minimal]

    def _label(self, v):
        return self.complex.label(v)

    def _simplex_text(self, s) -> str:
        return "{" + ",".join(str(self._label(v)) for v in s) + "}"

    def to_dot(self, judgments=()) -> str:
        lines = [f'digraph "od({self.group} on {self.space})" {{', "  rankdir=TB;"]
        for j in judgments:
            lines.append(f"  // fact: {j}")
        for c in self.classes:
            label = f"class#{c.index}: isotropy={c.isotropy.order}, minimal={'yes' if c.minimal else 'no'}"
            shape = "doublecircle" if c.minimal else "ellipse"
            lines.append(f'  c{c.index} [label="{label}", shape={shape}, '
                         f'tooltip="rep {self._simplex_text(c.representative)}"];')
        for a, b in self.edges:
            lines.append(f"  c{a} -> c{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "space": self.space,
            "group": self.group,
            "classes": [
                {
                    "index": c.index,
                    "representative": [self._label(v) for v in c.representative],
                    "isotropy_order": c.isotropy.order,
                    "isotropy": c.isotropy.name(),
                    "member_orbits": c.member_orbit_count,
                    "minimal": c.minimal,
                }
                for c in self.classes
            ],
            "hasse_edges": [list(e) for e in self.edges],
        }


def orbit_classes(action: GAction, space: str = "X", group: str = "G") -> OrbitDiagram:
    key = ("diagram",)
    if key in action._cache:
        return replace(action._cache[key], space=space, group=group)
    orbits = action.simplex_orbits
    n = len(orbits)
    reach = [[orbit_reachable(action, orbits[i][0], orbits[j][0]) for j in range(n)] for i in range(n)]
    for k in range(n):  # transitive closure; reachability is already transitive, this only guards it
        for i in range(n):
            if reach[i][k]:
                row_k = reach[k]
                row_i = reach[i]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    cls_of = [-1] * n
    groups: list[list[int]] = []
    for i in range(n):
        if cls_of[i] >= 0:
            continue
        members = [j for j in range(n) if reach[i][j] and reach[j][i]]
        for j in members:
            cls_of[j] = len(groups)
        groups.append(members)
    above = {(cls_of[i], cls_of[j]) for i in range(n) for j in range(n)
             if reach[i][j] and cls_of[i] != cls_of[j]}
    for a, b in above:
        if (b, a) in above:
            raise AssertionError("orbit-class relation is not antisymmetric")
    classes = []
    for idx, members in enumerate(groups):
        rep = orbits[members[0]][0]
        minimal = not any(a == idx for a, _ in above)
        classes.append(OrbitClass(idx, rep, isotropy(action, rep), [orbits[j] for j in members], minimal))
    edges = sorted((a, b) for a, b in above
                   if not any((a, c) in above and (c, b) in above for c in range(len(groups))))
    diagram = OrbitDiagram(classes, above, edges, action.complex, space, group)
    action._cache[key] = diagram
    return diagram


def minimal_orbit_classes(action: GAction) -> tuple[int, list[tuple[int, ...]]]:
    mins = orbit_classes(action).minimal
    return len(mins), [c.representative for c in mins]


def invariant_tc_infinite(action: GAction, n: int = 2) -> bool:
    """More than one minimal orbit class forces TC^{G,n} = infinity; False means no conclusion."""
    if n < 2:
        raise InputError("n must be at least 2")
    return minimal_orbit_classes(action)[0] > 1


# -- quotient ------------------------------------------------------------------------


def _quotient_obstruction(action: GAction) -> str | None:
    K, G = action.complex, action.group
    if not action.regular:
        return "action is not regular"
    vorbit = {}
    for v in range(1, K.m + 1):
        if v not in vorbit:
            for g in G.elements:
                vorbit[g[v - 1]] = v
    for s in K.faces:
        if len({vorbit[v] for v in s}) < len(s):
            return f"simplex {list(s)} has two vertices in one orbit"
    by_image: dict[tuple, tuple] = {}
    for orb in action.simplex_orbits:
        img = tuple(sorted(vorbit[v] for v in orb[0]))
        if img in by_image and by_image[img] != orb:
            return f"simplex orbits of {list(orb[0])} and {list(by_image[img][0])} share a vertex image"
        by_image[img] = orb
    return None


def quotient_complex(action: GAction) -> SimplicialComplex:
    """K/G on vertex orbits; subdivides (at most twice) until the orbit map is simplicial and injective on orbits."""
    current = action
    steps = 0
    while (why := _quotient_obstruction(current)) is not None:
        if steps == MAX_SUBDIVISIONS:
            raise InvalidActionError(f"quotient needs more than {MAX_SUBDIVISIONS} subdivisions: {why}")
        current = subdivide_action(current)
        steps += 1
    K, G = current.complex, current.group
    reps = sorted({min(g[v - 1] for g in G.elements) for v in range(1, K.m + 1)})
    index = {r: i + 1 for i, r in enumerate(reps)}
    to_orbit = {}
    for r in reps:
        for g in G.elements:
            to_orbit[g[r - 1]] = index[r]
    labels = tuple(tuple(sorted(K.label(v) for v in range(1, K.m + 1) if to_orbit[v] == index[r]))
                   for r in reps)
    faces = ([to_orbit[v] for v in f] for f in K.facets)
    return SimplicialComplex.from_faces(len(reps), faces, labels=labels)


# -- I/O and fact emission --------------------------------------------------------------


def load_action(data, max_order: int = DEFAULT_MAX_ORDER) -> tuple[GAction, str, str]:
    """Parse ``{"generators": [[...]], "complex": {...}, "space"?, "group"?}``."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise InputError(f"action JSON: {exc}") from None
    if "complex" not in data or "generators" not in data:
        raise InputError("action JSON needs 'generators' and 'complex'")
    K = complex_from_json(data["complex"])
    action = validate_action(data["generators"], K, max_order)
    return action, data.get("space", "X"), data.get("group", "G")


def action_facts(action: GAction, space: str = "X", group: str = "G", strict: bool = False,
                 quotient_name: str | None = None):
    """Judgments about the action for the bounds engine.

    ``quotient_name`` names the orbit space (default ``space/group``), which
    lets a caller identify it with a known space such as S1.
    """
    src = "orbit"
    facts = []
    conn = is_g_connected(action, strict)
    if conn.connected:
        facts.append(Fact("g_connected", (space, group), "every fixed subcomplex is path-connected", src))
    H = nonempty_disconnected_fixed_set(action)
    if H is not None:
        facts.append(Fact("nonempty_disconnected_fixed_set", (space, group, H.name()),
                          f"fixed set of {H.name()} is nonempty and disconnected", src))
    if action.fixed_vertices(action.group):
        facts.append(Fact("fixed_nonempty", (space, group), "the fixed subcomplex of G is nonempty", src))
        facts.append(Fact("fixed_set", (space, group, group, f"{space}^{group}"), "fixed set of the whole group", src))
    if is_free(action):
        facts.append(Fact("free", (space, group), "every simplex has trivial isotropy", src))
    if one_orbit_type(action):
        facts.append(Fact("one_orbit_type", (space, group), "all isotropy groups are conjugate", src))
    count, _ = minimal_orbit_classes(action)
    facts.append(Fact("minimal_orbit_classes", (space, group, count), f"{count} minimal orbit classes", src))
    try:
        quotient_complex(action)
    except InvalidActionError:
        pass
    else:
        Q = quotient_name or f"{space}/{group}"
        facts.append(Fact("quotient", (space, group, Q), "simplicial quotient exists", src))
    return facts
