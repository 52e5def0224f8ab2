"""Judgments for the "full fixture session": every module emission plus user facts exercising all rules."""

from __future__ import annotations

from eqtc.bounds import Bound, Fact, Interval, acat, cat, cat_g, tc
from eqtc.corpus import actions, complexes
from eqtc.errors import BudgetError
from eqtc.moment_angle import profile
from eqtc.orbit import action_facts
from eqtc.ring import build_ring, cup_length_bound, sphere_ring, zcl, zcl_fact


def _user(kind, *args):
    return Fact(kind, args, "fixture", "user")


def _bound(q, lo, hi=float("inf")):
    return Bound(q, Interval(lo, hi), "fixture", "user")


def s3_example() -> list:
    R = sphere_ring(3)
    return [
        _bound(cat_g("S3", "S1"), 2, 2),
        _user("g_connected", "S3", "S1"),
        _user("fixed_nonempty", "S3", "S1"),
    ] + [zcl_fact("S3", n, zcl(R, n)) for n in range(2, 6)]


def moment_angle_judgments(max_ring_dim: int = 36) -> list:
    out = []
    for e in complexes():
        K = e.complex
        space = f"Z[{e.name}]"
        prof = profile(K, "Q", space)
        out += prof.facts()
        R = build_ring(K, "Q")
        out.append(cup_length_bound(space, R))
        if R.dim > max_ring_dim:
            continue
        for n in (2, 3):
            try:
                out.append(zcl_fact(space, n, zcl(R, n, max_tensor_dim=512)))
            except BudgetError:
                break
    return out


def orbit_judgments() -> list:
    out = []
    for a in actions():
        out += action_facts(a.action(), a.name, a.group, quotient_name=a.quotient_name)
    return out


def rule_exercises() -> list:
    """User facts that make every rule R1-R20 fire at least once."""
    out = [_bound(tc("S1", n), n, n) for n in range(2, 6)]
    out += [_bound(cat("S1"), 2, 2), _bound(cat("RP2"), 3, 3), _bound(cat("pt"), 1, 1)]
    out += [_bound(cat(f"S1^{k}"), k + 1, k + 1) for k in range(2, 5)]
    out += [
        _user("free_self_action", "S1"),
        _user("product", "S3", "S1", "S3", "S1", "S3xS3", "S1xS1"),
        _user("completely_normal", "S3xS3"),
        _user("subgroup", "Z2", "S1"),
        _user("fixed_set", "S3", "S1", "Z2", "S1"),
        _user("invariant", "S1", "Z2"),
        _user("cofibration", "antipodal_square", "Z2"),
        _user("cofibration", "antipodal_octagon", "Z2"),
        _user("product", "antipodal_square", "Z2", "antipodal_octagon", "Z2", "T2", "Z2xZ2"),
        _user("acts_by_homomorphisms", "rotation_square", "Z4"),
        _bound(acat("rotation_square", "Z4", "O(1)", 2), 1, 3),
    ]
    return out


def full_fixture_judgments() -> list:
    return s3_example() + moment_angle_judgments() + orbit_judgments() + rule_exercises()
