"""Forward-chaining interval engine for equivariant category and topological complexity.

Judgments come in two flavours: boolean facts (hypotheses such as
"X is G-connected") and numeric bounds ``Quantity in [lo, hi]``.  Rules
R1-R20 turn facts and bounds into tighter bounds.  Every quantity starts at
[1, inf] (unreduced normalization), lower bounds only rise and upper bounds
only fall, so saturation is a monotone fixpoint whose result does not
depend on the order in which rules fire.

Each improvement stores an immutable :class:`Derivation` whose premises are
the facts and the derivations of the bounds it used, so :func:`explain` can
print a proof tree without replaying the computation.
"""

from __future__ import annotations

import json
import math
import random
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import InputError

INF = math.inf
DEFAULT_CEILING = 64
DEFAULT_MAX_N = 5

# quantity kinds, using the names of the facts-file format
CAT = "cat"
CAT_G = "cat_G"
TC = "TC_n"
TC_G = "TC_{G,n}"
TC_INV = "TC^{G,n}"
ACAT = "A-cat_G"
KINDS = (CAT, CAT_G, TC, TC_G, TC_INV, ACAT)

PREDICATES = {
    "g_connected": ("space", "group"),
    "fixed_nonempty": ("space", "group"),
    "free": ("space", "group"),
    "one_orbit_type": ("space", "group"),
    "minimal_orbit_classes": ("space", "group", "count"),
    "nonempty_disconnected_fixed_set": ("space", "group", "subgroup"),
    "fixed_set": ("space", "group", "subgroup", "fixed_space"),
    "subgroup": ("subgroup", "group"),
    "invariant": ("space", "group"),
    "quotient": ("space", "group", "quotient"),
    "product": ("left", "left_group", "right", "right_group", "space", "group"),
    "completely_normal": ("space",),
    "cofibration": ("space", "group"),
    "acts_by_homomorphisms": ("space", "group"),
    "free_self_action": ("group",),
    "torus_cat": ("space", "group", "value"),
    "k_sum_bound": ("space", "group", "value"),
    "zcl": ("space", "n", "value"),
}
_INT_PARAMS = {"count", "value", "n"}

RULES = {
    "R1": ("TC_n(Y) <= TC_{G,n}(Y)", "equivariant TC dominates TC"),
    "R2": ("TC_{G,n}(Y) <= TC_{G,n+1}(Y)", "monotonicity of higher equivariant TC in n"),
    "R3": ("TC_{K,n}(Y^H) <= TC_{G,n}(Y)", "fixed sets of closed subgroups and restriction to subgroups"),
    "R4": ("G-connected => TC_{G,n}(X) <= cat_G(X^n); with X^G nonempty also <= n cat_G(X) - 1",
           "equivariant category bounds equivariant TC"),
    "R5": ("G-connected, X^G nonempty => TC_{G,n}(X) <= n TC_{G,2}(X) - 1", "higher TC from TC_{G,2}"),
    "R6": ("cat_{G1xG2}(X1xX2) <= cat_{G1}(X1) + cat_{G2}(X2) - 1", "product formula for equivariant category"),
    "R7": ("one orbit type => cat_G(X) = cat(X/G)", "one orbit type lemma"),
    "R8": ("G connected acting freely on itself => TC_{G,n}(G) = cat(G^{n-1})", "free action of a group on itself"),
    "R9": ("nonempty disconnected fixed set Y^H => TC_{G,n}(Y) = inf", "fixed-set comparison with disconnected Y^H"),
    "R10": ("more than one minimal orbit class => TC^{G,n}(Y) = inf", "several minimal orbit classes obstruct invariant TC"),
    "R11": ("G acts freely => TC^{G,n}(Y) = TC_n(Y/G)", "free actions reduce invariant TC to the orbit space"),
    "R12": ("TC_n(Y^G) <= TC^{G,n}(Y)", "fixed points bound invariant TC"),
    "R13": ("TC^{G,n}(Y) <= TC^{G,n+1}(Y)", "monotonicity of higher invariant TC in n"),
    "R14": ("cofibrations => TC^{GxK,n}(YxZ) <= TC^{G,n}(Y) + TC^{K,n}(Z) - 1", "product inequality for invariant TC"),
    "R15": ("TC^{G,n}(Y) <= A-cat_{G^n}(Y^n), A = O(y)^n", "orbit-power upper bound"),
    "R16": ("cat_G(X) >= number of minimal orbit classes", "minimal orbit classes bound equivariant category"),
    "R17": ("cat_{T^m}(Z_K) = number of maximal simplices", "moment-angle equivariant category"),
    "R18a": ("ZCL <= TC_n; TC_{T^m,2}(Z_K) <= sum (k_ij + 1)", "moment-angle TC inequality"),
    "R18b": ("ZCL + 1 <= TC_n (enabled by sharp_zcl)", "sharp zero-divisor bound"),
    "R19": ("G-connected topological group, G acting by homomorphisms => TC_{G,2}(X) = cat(X/G)",
            "group acting by homomorphisms"),
    "R20": ("G-connected, X^G nonempty => cat_G(X) <= TC_{G,2}(X)", "equivariant category below TC_{G,2}"),
}


def _fmt(v) -> str:
    return "inf" if v == INF else str(v)


def _parse_value(v):
    if v is None or (isinstance(v, str) and v.strip().lower() in ("inf", "infinity", "oo")):
        return INF
    if isinstance(v, float) and math.isinf(v):
        return INF
    try:
        iv = int(v)
    except (TypeError, ValueError):
        raise InputError(f"bad interval endpoint {v!r}") from None
    if iv < 1:
        raise InputError(f"interval endpoints are at least 1 (unreduced normalization), got {iv}")
    return iv


# -- judgments -----------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Quantity:
    """cat, cat_G, TC_n, TC_{G,n}, TC^{G,n} or A-cat_G of a named space.

    ``A-cat_G`` with ``n`` set stands for the A-category of Y^n under G^n with
    A = O(y)^n, where ``subset`` names the orbit; without ``n`` it is the
    A-category of the space itself.
    """

    kind: str
    space: str
    group: str = "1"
    n: int | None = None
    subset: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown quantity kind {self.kind!r}")
        if self.kind in (TC, TC_G, TC_INV):
            if self.n is None or self.n < 2:
                raise InputError(f"{self.kind} needs n >= 2")
        elif self.kind != ACAT and self.n is not None:
            raise InputError(f"{self.kind} takes no n")
        if self.kind == ACAT and not self.subset:
            raise InputError("A-cat_G needs a subset name")
        if self.kind in (CAT, TC) and self.group != "1":
            raise InputError(f"{self.kind} is non-equivariant; use the G variant")

    def __str__(self):
        k, X, G, n = self.kind, self.space, self.group, self.n
        if k == CAT:
            return f"cat({X})"
        if k == CAT_G:
            return f"cat_{{{G}}}({X})"
        if k == TC:
            return f"TC_{{{n}}}({X})"
        if k == TC_G:
            return f"TC_{{{G},{n}}}({X})"
        if k == TC_INV:
            return f"TC^{{{G},{n}}}({X})"
        sub = f"{G},{n}" if n is not None else G
        return f"Acat_{{{sub}}}[{self.subset}]({X})"

    def to_json(self) -> dict:
        params = {"space": self.space}
        if self.group != "1":
            params["group"] = self.group
        if self.n is not None:
            params["n"] = self.n
        if self.subset is not None:
            params["subset"] = self.subset
        return {"kind": self.kind, "params": params}


def cat(space: str) -> Quantity:
    return Quantity(CAT, space)


def cat_g(space: str, group: str) -> Quantity:
    return Quantity(CAT, space) if group == "1" else Quantity(CAT_G, space, group)


def tc(space: str, n: int) -> Quantity:
    return Quantity(TC, space, "1", n)


def tc_g(space: str, group: str, n: int) -> Quantity:
    return tc(space, n) if group == "1" else Quantity(TC_G, space, group, n)


def tc_inv(space: str, group: str, n: int) -> Quantity:
    return tc(space, n) if group == "1" else Quantity(TC_INV, space, group, n)


def acat(space: str, group: str, subset: str, n: int | None = None) -> Quantity:
    return Quantity(ACAT, space, group, n, subset)


def power(space: str, k: int) -> str:
    """Name of the k-fold product X^k (X itself for k = 1)."""
    return space if k == 1 else f"{space}^{k}"


_QUANTITY = re.compile(
    r"^\s*(?P<kind>TC|cat|Acat)"
    r"(?P<sup>\^\{(?P<supbody>[^}]*)\})?"
    r"(?:_\{(?P<sub>[^}]*)\}|_(?P<subnum>\d+))?"
    r"(?:\[(?P<subset>[^\]]*)\])?"
    r"\((?P<space>.+)\)\s*$"
)


def parse_quantity(text: str) -> Quantity:
    """Inverse of ``str(Quantity)``; also accepts ``TC_2(X)`` without braces."""
    mt = _QUANTITY.match(text)
    if not mt:
        raise InputError(f"cannot parse quantity {text!r}")
    kind, space = mt["kind"], mt["space"]

    def group_n(body: str):
        group, _, n = body.rpartition(",")
        try:
            return group.strip(), int(n)
        except ValueError:
            raise InputError(f"expected '<group>,<n>' in {text!r}") from None

    if kind == "TC":
        if mt["sup"]:
            return tc_inv(space, *group_n(mt["supbody"]))
        sub = mt["sub"] if mt["sub"] is not None else mt["subnum"]
        if sub is None:
            raise InputError(f"TC needs a subscript in {text!r}")
        if "," in sub:
            return tc_g(space, *group_n(sub))
        return tc(space, int(sub))
    if kind == "cat":
        sub = mt["sub"]
        return cat_g(space, sub.strip()) if sub else cat(space)
    sub = mt["sub"] or ""
    if not mt["subset"]:
        raise InputError(f"Acat needs a [subset] in {text!r}")
    if "," in sub:
        g, n = group_n(sub)
        return acat(space, g, mt["subset"], n)
    return acat(space, sub.strip(), mt["subset"])


@dataclass(frozen=True, order=True)
class Interval:
    lo: float = 1
    hi: float = INF

    def meet(self, other: "Interval") -> "Interval":
        return Interval(max(self.lo, other.lo), min(self.hi, other.hi))

    @property
    def is_empty(self) -> bool:
        return self.lo > self.hi

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def is_top(self) -> bool:
        return self.lo <= 1 and self.hi == INF

    def __contains__(self, v) -> bool:
        return self.lo <= v <= self.hi

    def __str__(self):
        if self.is_exact:
            return f"= {_fmt(self.lo)}"
        return f"[{_fmt(self.lo)}, {_fmt(self.hi)}]"

    def to_json(self):
        return [_fmt(self.lo) if self.lo == INF else self.lo, _fmt(self.hi) if self.hi == INF else self.hi]


TOP = Interval()


@dataclass(frozen=True)
class Fact:
    """A boolean judgment ``predicate(args)`` with provenance."""

    kind: str
    args: tuple
    citation: str = ""
    source: str = "user"

    def __post_init__(self):
        params = PREDICATES.get(self.kind)
        if params is None:
            raise InputError(f"unknown fact kind {self.kind!r}")
        if len(self.args) != len(params):
            raise InputError(f"{self.kind} takes {params}, got {self.args}")
        object.__setattr__(self, "args", tuple(
            int(a) if p in _INT_PARAMS else str(a) for p, a in zip(params, self.args)))

    def __str__(self):
        return f"{self.kind}({', '.join(map(str, self.args))})"

    @property
    def params(self) -> dict:
        return dict(zip(PREDICATES[self.kind], self.args))

    def to_json(self) -> dict:
        return {"kind": self.kind, "params": self.params, "flag": True,
                "citation": self.citation, "source": self.source}


@dataclass(frozen=True)
class Bound:
    """A numeric judgment ``quantity in interval`` with provenance."""

    quantity: Quantity
    interval: Interval
    citation: str = ""
    source: str = "user"

    def __str__(self):
        return f"{self.quantity} {self.interval}"

    def to_json(self) -> dict:
        out = self.quantity.to_json()
        out.update(interval=self.interval.to_json(), citation=self.citation, source=self.source)
        return out


@dataclass(frozen=True)
class Derivation:
    """Why ``quantity``'s ``side`` ("lo" or "hi") reached ``value``.

    Leaves have ``rule`` None and a single :class:`Bound` premise.
    """

    quantity: Quantity
    side: str
    value: float
    rule: str | None
    premises: tuple = ()

    def conclusion(self) -> str:
        op = ">=" if self.side == "lo" else "<="
        return f"{self.quantity} {op} {_fmt(self.value)}"

    def size(self) -> int:
        return 1 + sum(p.size() for p in self.premises if isinstance(p, Derivation))

    def rules_used(self) -> list[str]:
        out = [self.rule] if self.rule else []
        for p in self.premises:
            if isinstance(p, Derivation):
                out += p.rules_used()
        return out

    def render(self, indent: str = "") -> list[str]:
        if self.rule is None:
            b = self.premises[0]
            tag = f"asserted by {b.source}" + (f": {b.citation}" if b.citation else "")
            return [f"{indent}{self.conclusion()}  [{tag}]"]
        lines = [f"{indent}{self.conclusion()}  [{self.rule}: {RULES[self.rule][0]}]"]
        for p in self.premises:
            if isinstance(p, Derivation):
                lines += p.render(indent + "  ")
            else:
                cite = f": {p.citation}" if p.citation else ""
                lines.append(f"{indent}  fact {p}  [{p.source}{cite}]")
        return lines

    def to_json(self) -> dict:
        return {
            "conclusion": self.conclusion(),
            "rule": self.rule,
            "premises": [p.to_json() if isinstance(p, Derivation)
                         else {"fact": str(p), "source": p.source, "citation": p.citation}
                         for p in self.premises],
        }


@dataclass
class Explanation:
    quantity: Quantity
    interval: Interval
    lower: Derivation | None
    upper: Derivation | None

    def render(self) -> str:
        lines = [f"{self.quantity} in {self.interval}"]
        if self.lower is None and self.upper is None:
            lines.append("  no information")
        for side, d in (("lower bound", self.lower), ("upper bound", self.upper)):
            if d is not None:
                lines.append(f"  {side}:")
                lines += d.render("    ")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "quantity": str(self.quantity),
            "interval": self.interval.to_json(),
            "lower": self.lower.to_json() if self.lower else None,
            "upper": self.upper.to_json() if self.upper else None,
        }


# -- session ---------------------------------------------------------------------------------


@dataclass(frozen=True)
class _Update:
    quantity: Quantity
    side: str
    value: float
    rule: str
    premises: tuple


class Session:
    """Facts, bounds and the current intervals of one analysis.

    ``max_n`` sets the range n = 2..max_n over which n-indexed rules are
    instantiated (extended by any larger n that appears in the input).
    """

    def __init__(self, ceiling: int = DEFAULT_CEILING, max_n: int = DEFAULT_MAX_N, sharp_zcl: bool = False):
        if ceiling < 1 or max_n < 2:
            raise InputError("ceiling must be >= 1 and max_n >= 2")
        self.ceiling = ceiling
        self.max_n = max_n
        self.sharp_zcl = sharp_zcl
        self.facts: list[Fact] = []
        self.bounds: list[Bound] = []
        self.queries: list[Quantity] = []
        self.intervals: dict[Quantity, Interval] = {}
        self.why: dict[tuple[Quantity, str], Derivation] = {}
        self.inconsistencies: list[str] = []
        self._fact_keys: set = set()

    # -- input --

    def assert_fact(self, fact: Fact | Bound) -> "Session":
        if isinstance(fact, Bound):
            self.bounds.append(fact)
            q, iv = fact.quantity, fact.interval
            leaf_lo = Derivation(q, "lo", iv.lo, None, (fact,))
            leaf_hi = Derivation(q, "hi", iv.hi, None, (fact,))
            if iv.lo > 1:
                self._apply(q, "lo", iv.lo, leaf_lo)
            if iv.hi < INF:
                self._apply(q, "hi", iv.hi, leaf_hi)
            self.intervals.setdefault(q, TOP)
        elif isinstance(fact, Fact):
            key = (fact.kind, fact.args)
            if key not in self._fact_keys:
                self._fact_keys.add(key)
                self.facts.append(fact)
        else:
            raise InputError(f"cannot assert {fact!r}")
        return self

    def extend(self, facts: Iterable) -> "Session":
        for f in facts:
            self.assert_fact(f)
        return self

    def query(self, q: Quantity | str) -> Interval:
        if isinstance(q, str):
            q = parse_quantity(q)
        if q not in self.queries:
            self.queries.append(q)
        return self.interval(q)

    def interval(self, q: Quantity | str) -> Interval:
        if isinstance(q, str):
            q = parse_quantity(q)
        return self.intervals.get(q, TOP)

    # -- state updates --

    def _cap(self, side: str, value):
        if value == INF:
            return INF
        if side == "lo":
            return min(value, self.ceiling)
        return value if value <= self.ceiling else INF

    def _apply(self, q: Quantity, side: str, value, derivation: Derivation) -> bool:
        value = self._cap(side, value)
        cur = self.intervals.get(q, TOP)
        if side == "lo":
            if value <= cur.lo:
                return False
            new = Interval(value, cur.hi)
        else:
            if value >= cur.hi:
                return False
            new = Interval(cur.lo, value)
        if derivation.value != value:
            derivation = Derivation(q, side, value, derivation.rule, derivation.premises)
        self.intervals[q] = new
        self.why[q, side] = derivation
        if new.is_empty and not cur.is_empty:
            self.inconsistencies.append(f"{q}: lower bound {_fmt(new.lo)} exceeds upper bound {_fmt(new.hi)}")
        return True

    def _premise(self, q: Quantity, side: str):
        return self.why.get((q, side))

    # -- inference --

    def ns(self) -> list[int]:
        extra = {q.n for q in list(self.intervals) + self.queries if q.n is not None}
        return sorted(set(range(2, self.max_n + 1)) | extra)

    def pairs(self) -> list[tuple[str, str]]:
        """(space, group) pairs the n-indexed rules are instantiated for."""
        out = set()
        for f in self.facts:
            p = f.params
            if "space" in p and "group" in p:
                out.add((p["space"], p["group"]))
            if f.kind == "fixed_set":
                out.add((p["fixed_space"], "1"))
            if f.kind == "quotient":
                out.add((p["quotient"], "1"))
            if f.kind == "product":
                out.add((p["left"], p["left_group"]))
                out.add((p["right"], p["right_group"]))
            if f.kind == "zcl":
                out.add((p["space"], "1"))
        for q in list(self.intervals) + self.queries:
            out.add((q.space, q.group))
        return sorted(out)

    def facts_of(self, kind: str) -> list[Fact]:
        return [f for f in self.facts if f.kind == kind]

    def has(self, kind: str, *args) -> Fact | None:
        args = tuple(args)
        for f in self.facts:
            if f.kind == kind and f.args == args:
                return f
        return None

    def saturate(self, rng: random.Random | None = None, rules: list[str] | None = None) -> "Session":
        """Apply every rule until nothing changes.

        With ``rng`` the rule order and the order of updates within each
        rule are shuffled; the final intervals are the same either way.
        """
        order = list(rules or _RULE_FUNCS)
        changed = True
        while changed:
            changed = False
            if rng is not None:
                rng.shuffle(order)
            for rid in order:
                if rid == "R18b" and not self.sharp_zcl:
                    continue
                updates = list(_RULE_FUNCS[rid](self))
                if rng is not None:
                    rng.shuffle(updates)
                for u in updates:
                    d = Derivation(u.quantity, u.side, u.value, u.rule, u.premises)
                    changed |= self._apply(u.quantity, u.side, u.value, d)
        return self

    # -- output --

    def explain(self, q: Quantity | str) -> Explanation:
        if isinstance(q, str):
            q = parse_quantity(q)
        return Explanation(q, self.interval(q), self.why.get((q, "lo")), self.why.get((q, "hi")))

    def reported_quantities(self) -> list[Quantity]:
        shown = [q for q, iv in self.intervals.items() if not iv.is_top]
        for q in self.queries:
            if q not in shown:
                shown.append(q)
        return sorted(shown, key=lambda q: (q.space, KINDS.index(q.kind), q.group, q.n or 0, q.subset or ""))

    def _one_line(self, q: Quantity, side: str) -> str:
        d = self.why.get((q, side))
        if d is None:
            return "-"
        if d.rule is None:
            b = d.premises[0]
            return f"asserted ({b.source})"
        parts = []
        for p in d.premises:
            parts.append(p.conclusion() if isinstance(p, Derivation) else str(p))
        return f"{d.rule} from " + "; ".join(parts)

    def report(self, fmt: str = "markdown") -> str:
        rows = [(q, self.interval(q)) for q in self.reported_quantities()]
        if fmt == "json":
            doc = {
                "settings": self.settings(),
                "quantities": [
                    {"quantity": str(q), **q.to_json(), "interval": iv.to_json(),
                     "lower": self._one_line(q, "lo"), "upper": self._one_line(q, "hi")}
                    for q, iv in rows
                ],
                "inconsistencies": list(self.inconsistencies),
            }
            return json.dumps(doc, indent=2) + "\n"
        lines = [
            "# Bounds report",
            "",
            f"ceiling {self.ceiling}, n = 2..{max(self.ns())}, sharp zcl {'on' if self.sharp_zcl else 'off'}",
            "",
            "| quantity | interval | lower bound | upper bound |",
            "|---|---|---|---|",
        ]
        for q, iv in rows:
            lines.append(f"| {q} | {iv} | {self._one_line(q, 'lo')} | {self._one_line(q, 'hi')} |")
        lines += ["", "Inconsistencies: " + ("none" if not self.inconsistencies else "")]
        lines += [f"- {s}" for s in self.inconsistencies]
        return "\n".join(lines) + "\n"

    def settings(self) -> dict:
        return {"ceiling": self.ceiling, "max_n": self.max_n, "sharp_zcl": self.sharp_zcl}

    def to_json(self) -> dict:
        """The asserted (non-derived) judgments; reloading and saturating reproduces the session."""
        return {
            "settings": self.settings(),
            "facts": [f.to_json() for f in self.facts] + [b.to_json() for b in self.bounds],
            "queries": [str(q) for q in self.queries],
        }

    @classmethod
    def from_json(cls, data, **overrides) -> "Session":
        if isinstance(data, str):
            data = json.loads(data)
        if isinstance(data, list):
            data = {"facts": data}
        settings = dict(data.get("settings", {}))
        settings.update({k: v for k, v in overrides.items() if v is not None})
        s = cls(**settings)
        s.extend(load_facts(data.get("facts", [])))
        for q in data.get("queries", []):
            s.query(q)
        return s


def load_facts(entries) -> list[Fact | Bound]:
    """Parse the facts-file list ``[{kind, params, interval | flag, citation}]``."""
    out = []
    for e in entries:
        if not isinstance(e, dict) or "kind" not in e:
            raise InputError(f"fact entry needs a 'kind': {e!r}")
        kind, params = e["kind"], dict(e.get("params", {}))
        cite, source = e.get("citation", ""), e.get("source", "user")
        if kind in KINDS:
            if "interval" not in e:
                raise InputError(f"numeric judgment {kind} needs an interval")
            iv = e["interval"]
            if isinstance(iv, (int, str)):
                iv = [iv, iv]
            lo, hi = _parse_value(iv[0]), _parse_value(iv[1])
            n = params.get("n")
            q = Quantity(kind, params.get("space", ""), params.get("group", "1"),
                         int(n) if n is not None else None, params.get("subset"))
            if not q.space:
                raise InputError(f"{kind} judgment needs a space")
            out.append(Bound(q, Interval(lo, hi), cite, source))
        elif kind in PREDICATES:
            if not e.get("flag", True):
                continue
            try:
                args = tuple(params[p] for p in PREDICATES[kind])
            except KeyError as exc:
                raise InputError(f"{kind} needs parameter {exc}") from None
            out.append(Fact(kind, args, cite, source))
        else:
            raise InputError(f"unknown fact kind {kind!r}")
    return out


# -- rules ---------------------------------------------------------------------------------------


def _le(s: Session, small: Quantity, big: Quantity, rule: str, extra: tuple = ()) -> Iterator[_Update]:
    """small <= big: raise big's lower bound, lower small's upper bound."""
    lo = s.interval(small).lo
    if lo > 1:
        yield _Update(big, "lo", lo, rule, extra + (s._premise(small, "lo"),))
    hi = s.interval(big).hi
    if hi < INF:
        yield _Update(small, "hi", hi, rule, extra + (s._premise(big, "hi"),))


def _eq(s: Session, a: Quantity, b: Quantity, rule: str, extra: tuple = ()) -> Iterator[_Update]:
    yield from _le(s, a, b, rule, extra)
    yield from _le(s, b, a, rule, extra)


def _sum_hi(s: Session, target: Quantity, parts: list[Quantity], rule: str, extra: tuple,
            mult: int = 1) -> Iterator[_Update]:
    """target <= mult * sum(parts) - (len(parts) * mult - 1) style bounds, hi side only."""
    his = [s.interval(p).hi for p in parts]
    if any(h == INF for h in his):
        return
    value = mult * sum(his) - (mult * len(parts) - 1)
    yield _Update(target, "hi", value, rule, extra + tuple(s._premise(p, "hi") for p in parts))


def _groups(s: Session) -> list[tuple[str, str]]:
    return [(X, G) for X, G in s.pairs() if G != "1"]


def rule_r1(s):
    for X, G in _groups(s):
        for n in s.ns():
            yield from _le(s, tc(X, n), tc_g(X, G, n), "R1")


def rule_r2(s):
    for X, G in s.pairs():
        ns = s.ns()
        for n, n1 in zip(ns, ns[1:]):
            if n1 == n + 1:
                yield from _le(s, tc_g(X, G, n), tc_g(X, G, n1), "R2")


def rule_r3(s):
    for f in s.facts_of("fixed_set"):
        Y, G, H, Z = f.args
        for n in s.ns():
            yield from _le(s, tc(Z, n), tc_g(Y, G, n), "R3", (f,))
        for g in s.facts_of("subgroup"):
            K, G2 = g.args
            inv = s.has("invariant", Z, K)
            if G2 == G and inv:
                for n in s.ns():
                    yield from _le(s, tc_g(Z, K, n), tc_g(Y, G, n), "R3", (f, g, inv))
    for g in s.facts_of("subgroup"):
        K, G = g.args
        for Y, G2 in s.pairs():
            if G2 == G:
                for n in s.ns():
                    yield from _le(s, tc_g(Y, K, n), tc_g(Y, G, n), "R3", (g,))


def rule_r4(s):
    for f in s.facts_of("g_connected"):
        X, G = f.args
        fixed = s.has("fixed_nonempty", X, G)
        for n in s.ns():
            target = tc_g(X, G, n)
            big = cat_g(power(X, n), G)
            hi = s.interval(big).hi
            if hi < INF:
                yield _Update(target, "hi", hi, "R4", (f, s._premise(big, "hi")))
            if fixed:
                c = cat_g(X, G)
                hi = s.interval(c).hi
                if hi < INF:
                    yield _Update(target, "hi", n * hi - 1, "R4", (f, fixed, s._premise(c, "hi")))


def rule_r5(s):
    for f in s.facts_of("g_connected"):
        X, G = f.args
        fixed = s.has("fixed_nonempty", X, G)
        if not fixed:
            continue
        two = tc_g(X, G, 2)
        hi = s.interval(two).hi
        if hi == INF:
            continue
        for n in s.ns():
            if n > 2:
                yield _Update(tc_g(X, G, n), "hi", n * hi - 1, "R5", (f, fixed, s._premise(two, "hi")))


def rule_r6(s):
    for f in s.facts_of("product"):
        X1, G1, X2, G2, X, G = f.args
        hyps = [s.has("g_connected", X1, G1), s.has("g_connected", X2, G2),
                s.has("fixed_nonempty", X1, G1), s.has("fixed_nonempty", X2, G2),
                s.has("completely_normal", X)]
        if all(hyps):
            yield from _sum_hi(s, cat_g(X, G), [cat_g(X1, G1), cat_g(X2, G2)], "R6", (f, *hyps))


def rule_r7(s):
    for f in s.facts_of("one_orbit_type"):
        X, G = f.args
        for q in s.facts_of("quotient"):
            if q.args[:2] == (X, G):
                yield from _eq(s, cat_g(X, G), cat(q.args[2]), "R7", (f, q))


def rule_r8(s):
    for f in s.facts_of("free_self_action"):
        (G,) = f.args
        for n in s.ns():
            yield from _eq(s, tc_g(G, G, n), cat(power(G, n - 1)), "R8", (f,))


def rule_r9(s):
    for f in s.facts_of("nonempty_disconnected_fixed_set"):
        Y, G, _ = f.args
        for n in s.ns():
            yield _Update(tc_g(Y, G, n), "lo", INF, "R9", (f,))


def rule_r10(s):
    for f in s.facts_of("minimal_orbit_classes"):
        Y, G, count = f.args
        if count > 1:
            for n in s.ns():
                yield _Update(tc_inv(Y, G, n), "lo", INF, "R10", (f,))


def rule_r11(s):
    for f in s.facts_of("free"):
        Y, G = f.args
        for q in s.facts_of("quotient"):
            if q.args[:2] == (Y, G):
                for n in s.ns():
                    yield from _eq(s, tc_inv(Y, G, n), tc(q.args[2], n), "R11", (f, q))


def rule_r12(s):
    for f in s.facts_of("fixed_set"):
        Y, G, H, Z = f.args
        if H == G:
            for n in s.ns():
                yield from _le(s, tc(Z, n), tc_inv(Y, G, n), "R12", (f,))


def rule_r13(s):
    for X, G in s.pairs():
        ns = s.ns()
        for n, n1 in zip(ns, ns[1:]):
            if n1 == n + 1:
                yield from _le(s, tc_inv(X, G, n), tc_inv(X, G, n1), "R13")


def rule_r14(s):
    for f in s.facts_of("product"):
        Y, G, Z, K, W, GK = f.args
        cy, cz = s.has("cofibration", Y, G), s.has("cofibration", Z, K)
        if cy and cz:
            for n in s.ns():
                yield from _sum_hi(s, tc_inv(W, GK, n), [tc_inv(Y, G, n), tc_inv(Z, K, n)], "R14", (f, cy, cz))


def rule_r15(s):
    for q in list(s.intervals):
        if q.kind == ACAT and q.n is not None:
            hi = s.interval(q).hi
            if hi < INF:
                yield _Update(tc_inv(q.space, q.group, q.n), "hi", hi, "R15", (s._premise(q, "hi"),))


def rule_r16(s):
    for f in s.facts_of("minimal_orbit_classes"):
        X, G, count = f.args
        if count > 1:
            yield _Update(cat_g(X, G), "lo", count, "R16", (f,))


def rule_r17(s):
    for f in s.facts_of("torus_cat"):
        X, G, v = f.args
        yield _Update(cat_g(X, G), "lo", v, "R17", (f,))
        yield _Update(cat_g(X, G), "hi", v, "R17", (f,))


def rule_r18a(s):
    for f in s.facts_of("zcl"):
        X, n, v = f.args
        if v > 1:
            yield _Update(tc(X, n), "lo", v, "R18a", (f,))
    for f in s.facts_of("k_sum_bound"):
        X, G, v = f.args
        yield _Update(tc_g(X, G, 2), "hi", v, "R18a", (f,))


def rule_r18b(s):
    for f in s.facts_of("zcl"):
        X, n, v = f.args
        yield _Update(tc(X, n), "lo", v + 1, "R18b", (f,))


def rule_r19(s):
    for f in s.facts_of("acts_by_homomorphisms"):
        X, G = f.args
        conn = s.has("g_connected", X, G)
        if not conn:
            continue
        for q in s.facts_of("quotient"):
            if q.args[:2] == (X, G):
                yield from _eq(s, tc_g(X, G, 2), cat(q.args[2]), "R19", (f, conn, q))


def rule_r20(s):
    for f in s.facts_of("g_connected"):
        X, G = f.args
        fixed = s.has("fixed_nonempty", X, G)
        if fixed:
            yield from _le(s, cat_g(X, G), tc_g(X, G, 2), "R20", (f, fixed))


_RULE_FUNCS = {
    "R1": rule_r1, "R2": rule_r2, "R3": rule_r3, "R4": rule_r4, "R5": rule_r5,
    "R6": rule_r6, "R7": rule_r7, "R8": rule_r8, "R9": rule_r9, "R10": rule_r10,
    "R11": rule_r11, "R12": rule_r12, "R13": rule_r13, "R14": rule_r14, "R15": rule_r15,
    "R16": rule_r16, "R17": rule_r17, "R18a": rule_r18a, "R18b": rule_r18b, "R19": rule_r19,
    "R20": rule_r20,
}


def saturate(session: Session, **kw) -> Session:
    return session.saturate(**kw)


def explain(session: Session, quantity) -> Explanation:
    return session.explain(quantity)


def report(session: Session, fmt: str = "markdown") -> str:
    return session.report(fmt)


def rule_registry() -> str:
    return "\n".join(f"{rid:5s} {stmt}  -- {anchor}" for rid, (stmt, anchor) in RULES.items()) + "\n"
