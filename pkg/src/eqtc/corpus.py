"""Small named complexes and group actions used as fixtures and CLI samples."""

from __future__ import annotations

from dataclasses import dataclass

from .orbit import GAction, validate_action
from .simplicial import SimplicialComplex


@dataclass(frozen=True)
class Entry:
    name: str
    complex: SimplicialComplex
    sphere_dim: int | None = None  # K is a triangulated sphere of this dimension


def _k(m, facets):
    return SimplicialComplex.from_faces(m, facets)


_OCTAHEDRON = [[a, b, c] for a in (1, 2) for b in (3, 4) for c in (5, 6)]
_BIPYRAMID = [[a, b, p] for a, b in ((1, 2), (1, 3), (2, 3)) for p in (4, 5)]
_RP2 = [[1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6],
        [2, 3, 5], [3, 4, 6], [2, 4, 5], [3, 5, 6], [2, 4, 6]]


def complexes() -> list[Entry]:
    """At least 25 complexes with m <= 6, spheres flagged."""
    return [
        Entry("point", _k(1, [[1]])),
        Entry("two_vertices", _k(2, [[1], [2]]), 0),
        Entry("three_vertices", _k(3, [[1], [2], [3]])),
        Entry("ghost_point", _k(2, [[1]])),
        Entry("edge", SimplicialComplex.simplex(2)),
        Entry("triangle", SimplicialComplex.simplex(3)),
        Entry("tetrahedron", SimplicialComplex.simplex(4)),
        Entry("boundary_triangle", SimplicialComplex.boundary_of_simplex(3), 1),
        Entry("path3", _k(3, [[1, 2], [2, 3]])),
        Entry("edge_and_vertex", _k(3, [[1, 2], [3]])),
        Entry("square", SimplicialComplex.cycle(4), 1),
        Entry("pentagon", SimplicialComplex.cycle(5), 1),
        Entry("hexagon", SimplicialComplex.cycle(6), 1),
        Entry("square_with_ghost", _k(5, [[1, 2], [2, 3], [3, 4], [1, 4]])),
        Entry("two_edges", _k(4, [[1, 2], [3, 4]])),
        Entry("three_edges", _k(6, [[1, 2], [3, 4], [5, 6]])),
        Entry("star3", _k(4, [[1, 2], [1, 3], [1, 4]])),
        Entry("circle_with_whisker", _k(4, [[1, 2], [2, 3], [1, 3], [3, 4]])),
        Entry("triangle_and_vertex", _k(4, [[1, 2, 3], [4]])),
        Entry("two_triangles_edge", _k(4, [[1, 2, 3], [2, 3, 4]])),
        Entry("two_triangles_vertex", _k(5, [[1, 2, 3], [3, 4, 5]])),
        Entry("boundary_tetrahedron", SimplicialComplex.boundary_of_simplex(4), 2),
        Entry("bipyramid", _k(5, _BIPYRAMID), 2),
        Entry("octahedron", _k(6, _OCTAHEDRON), 2),
        Entry("boundary_4simplex", SimplicialComplex.boundary_of_simplex(5), 3),
        Entry("k23", _k(5, [[a, b] for a in (1, 2) for b in (3, 4, 5)])),
        Entry("cone_on_square", _k(5, [[1, 2, 5], [2, 3, 5], [3, 4, 5], [1, 4, 5]])),
        Entry("moebius", _k(5, [[1, 2, 3], [2, 3, 4], [3, 4, 5], [1, 4, 5], [1, 2, 5]])),
        Entry("rp2", _k(6, _RP2)),
    ]


def get(name: str) -> SimplicialComplex:
    for e in complexes():
        if e.name == name:
            return e.complex
    raise KeyError(name)


@dataclass(frozen=True)
class ActionFixture:
    name: str
    complex: SimplicialComplex
    generators: tuple
    space: str
    group: str
    quotient_name: str | None = None

    def action(self) -> GAction:
        return validate_action([list(g) for g in self.generators], self.complex)

    def to_json(self) -> dict:
        out = {"complex": self.complex.to_json(), "generators": [list(g) for g in self.generators],
               "space": self.space, "group": self.group}
        if self.quotient_name:
            out["quotient"] = self.quotient_name
        return out


def actions() -> list[ActionFixture]:
    C4, C8 = SimplicialComplex.cycle(4), SimplicialComplex.cycle(8)
    tri = SimplicialComplex.boundary_of_simplex(3)
    octa = _k(6, _OCTAHEDRON)
    return [
        ActionFixture("reflection_square", C4, ((1, 4, 3, 2),), "S1", "Z2"),
        ActionFixture("antipodal_square", C4, ((3, 4, 1, 2),), "S1", "Z2", "S1"),
        ActionFixture("antipodal_octagon", C8, ((5, 6, 7, 8, 1, 2, 3, 4),), "S1", "Z2", "S1"),
        ActionFixture("rotation_square", C4, ((2, 3, 4, 1),), "S1", "Z4", "S1"),
        ActionFixture("rotation_triangle", tri, ((2, 3, 1),), "S1", "Z3", "S1"),
        ActionFixture("reflection_triangle", tri, ((1, 3, 2),), "S1", "Z2"),
        ActionFixture("dihedral_triangle", tri, ((2, 3, 1), (2, 1, 3)), "S1", "S3"),
        ActionFixture("trivial_two_vertices", _k(2, [[1], [2]]), (), "S0", "1"),
        ActionFixture("swap_two_vertices", _k(2, [[1], [2]]), ((2, 1),), "S0", "Z2", "pt"),
        ActionFixture("antipodal_octahedron", octa, ((2, 1, 4, 3, 6, 5),), "S2", "Z2", "RP2"),
        ActionFixture("reflection_octahedron", octa, ((2, 1, 3, 4, 5, 6),), "S2", "Z2"),
    ]


def get_action(name: str) -> ActionFixture:
    for a in actions():
        if a.name == name:
            return a
    raise KeyError(name)
