"""Finite-category substrate and the canonical norphism constructions.

Finite categories are given by explicit composition tables and validated
eagerly (totality, signatures, identity, associativity), so everything
downstream can assume the laws.  Thin categories come from reachability on a
finite digraph.  On top of any finite category we can put four canonical
norphism structures:

* ``trivial_nategory``   - no norphisms at all,
* ``negation_nategory``  - one norphism per pair negating the whole hom-set,
* ``powerset_nategory``  - norphisms are subsets of hom-sets, actions are
  preimages under pre/post-composition (exact),
* ``weak_nategory``      - same carriers but both actions collapse to the
  empty set (equivariance holds vacuously; identity neutrality fails).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain, combinations
from typing import Hashable, Iterable, Sequence

from .core import (
    CapabilityError,
    Counterexample,
    LawReport,
    NategoryInstance,
    Nor,
    SignatureError,
)

__all__ = [
    "Mor",
    "FiniteCategory",
    "ThinCategory",
    "from_graph_reachability",
    "trivial_nategory",
    "negation_nategory",
    "powerset_nategory",
    "weak_nategory",
    "thin_decomposition_check",
    "parse_category",
    "CategoryFormatError",
    "POWERSET_HOM_CAP",
]

POWERSET_HOM_CAP = 12

NEGATION_TOKEN = "*"


@dataclass(frozen=True)
class Mor:
    """A named morphism with explicit endpoints."""

    name: Hashable
    src: Hashable
    dst: Hashable

    def __repr__(self) -> str:
        return f"Mor({self.name!r}: {self.src!r}->{self.dst!r})"


class FiniteCategory:
    """Explicit objects, hom-lists, identities, and a total composition table."""

    def __init__(
        self,
        objects: Sequence[Hashable],
        morphisms: Sequence[Mor],
        composites: dict[tuple[Mor, Mor], Mor],
        identities: dict[Hashable, Mor],
    ):
        self.objects = tuple(objects)
        self._obj_set = set(self.objects)
        if len(self._obj_set) != len(self.objects):
            raise ValueError("duplicate objects")
        self.morphisms = tuple(morphisms)
        self._hom: dict[tuple, list[Mor]] = {}
        for f in self.morphisms:
            if f.src not in self._obj_set or f.dst not in self._obj_set:
                raise ValueError(f"{f!r} mentions unknown objects")
            self._hom.setdefault((f.src, f.dst), []).append(f)
        self._comp = dict(composites)
        self._ids = dict(identities)
        self._validate()

    # -- construction helpers ----------------------------------------------

    @classmethod
    def build(
        cls,
        objects: Sequence[Hashable],
        arrows: Sequence[tuple[Hashable, Hashable, Hashable]] = (),
        composites: dict[tuple[Hashable, Hashable], Hashable] | None = None,
    ) -> "FiniteCategory":
        """Build from arrow triples ``(name, src, dst)`` and a name-level
        composition table; identities and their composites are added
        automatically.  A composite that lands on an identity is written as
        ``("id", X)``."""
        mors = {name: Mor(name, s, d) for name, s, d in arrows}
        if len(mors) != len(arrows):
            raise ValueError("duplicate morphism names")
        ids: dict[Hashable, Mor] = {}
        for x in objects:
            id_name = ("id", x)
            if id_name in mors:
                raise ValueError(f"reserved name {id_name!r}")
            ids[x] = Mor(id_name, x, x)
            mors[id_name] = ids[x]
        all_mors = list(ids.values()) + [mors[name] for name, _, _ in arrows]
        comp: dict[tuple[Mor, Mor], Mor] = {}
        for f in all_mors:
            comp[(ids[f.src], f)] = f
            comp[(f, ids[f.dst])] = f
        for (fn, gn), hn in (composites or {}).items():
            f, g, h = mors[fn], mors[gn], mors[hn]
            comp[(f, g)] = h
        return cls(objects, all_mors, comp, ids)

    @classmethod
    def one_object(cls, elements: Sequence[Hashable], table: dict) -> "FiniteCategory":
        """A monoid as a one-object category.

        ``elements`` must start with the unit; ``table[(a, b)]`` is the
        product of ``a`` then ``b``.
        """
        unit, rest = elements[0], elements[1:]
        obj = "*"
        ids = {obj: Mor(("id", obj), obj, obj)}
        mors = {e: Mor(e, obj, obj) for e in rest}
        all_mors = [ids[obj]] + [mors[e] for e in rest]

        def as_mor(e):
            return ids[obj] if e == unit else mors[e]

        comp: dict[tuple[Mor, Mor], Mor] = {}
        for a in elements:
            for b in elements:
                comp[(as_mor(a), as_mor(b))] = as_mor(table[(a, b)])
        return cls([obj], all_mors, comp, ids)

    # -- queries -------------------------------------------------------------

    def hom(self, x, y) -> tuple[Mor, ...]:
        return tuple(self._hom.get((x, y), ()))

    def identity(self, x) -> Mor:
        return self._ids[x]

    def compose(self, f: Mor, g: Mor) -> Mor:
        if f.dst != g.src:
            raise SignatureError(f"cannot compose {f!r} with {g!r}")
        return self._comp[(f, g)]

    # -- validation ----------------------------------------------------------

    def _validate(self):
        for x in self.objects:
            i = self._ids.get(x)
            if i is None or i.src != x or i.dst != x or i not in self.morphisms:
                raise ValueError(f"missing or malformed identity at {x!r}")
        for (f, g), h in self._comp.items():
            if f.dst != g.src:
                raise ValueError(f"table entry for non-composable pair {f!r};{g!r}")
            if (h.src, h.dst) != (f.src, g.dst):
                raise ValueError(f"composite {h!r} has wrong signature for {f!r};{g!r}")
        for f in self.morphisms:
            for g in self.morphisms:
                if f.dst == g.src and (f, g) not in self._comp:
                    raise ValueError(f"composition table missing entry {f!r};{g!r}")
        for f in self.morphisms:
            if self._comp[(self._ids[f.src], f)] != f:
                raise ValueError(f"left identity fails at {f!r}")
            if self._comp[(f, self._ids[f.dst])] != f:
                raise ValueError(f"right identity fails at {f!r}")
        for f in self.morphisms:
            for g in self.morphisms:
                if f.dst != g.src:
                    continue
                fg = self._comp[(f, g)]
                for h in self.morphisms:
                    if g.dst != h.src:
                        continue
                    if self._comp[(fg, h)] != self._comp[(f, self._comp[(g, h)])]:
                        raise ValueError(
                            f"associativity fails on {f!r};{g!r};{h!r}"
                        )

    def max_hom_size(self) -> int:
        return max((len(v) for v in self._hom.values()), default=0)


class ThinCategory:
    """At most one morphism per ordered pair; morphisms are the pairs."""

    def __init__(self, vertices: Sequence[Hashable], reachable: set[tuple]):
        self.vertices = tuple(vertices)
        self._reach = set(reachable)
        arrows = []
        composites: dict[tuple[Mor, Mor], Mor] = {}
        pair_mor = {}
        ids = {}
        for x in self.vertices:
            ids[x] = Mor((x, x), x, x)
            pair_mor[(x, x)] = ids[x]
        for x, y in sorted(self._reach, key=str):
            if x == y:
                continue
            m = Mor((x, y), x, y)
            pair_mor[(x, y)] = m
            arrows.append(m)
        all_mors = list(ids.values()) + arrows
        for (x, y), f in pair_mor.items():
            for (y2, z), g in pair_mor.items():
                if y == y2 and (x, z) in pair_mor:
                    composites[(f, g)] = pair_mor[(x, z)]
        self.category = FiniteCategory(self.vertices, all_mors, composites, ids)

    def reachable(self, x, y) -> bool:
        return (x, y) in self._reach

    def hom(self, x, y):
        return self.category.hom(x, y)


def from_graph_reachability(
    vertices: Sequence[Hashable], edges: Iterable[tuple[Hashable, Hashable]]
) -> ThinCategory:
    """Thin category whose hom(X, Y) is nonempty iff a directed path X ~> Y
    exists (reflexively)."""
    verts = tuple(vertices)
    vset = set(verts)
    adj: dict[Hashable, list] = {v: [] for v in verts}
    for a, b in edges:
        if a not in vset or b not in vset:
            raise ValueError(f"edge ({a!r}, {b!r}) mentions unknown vertex")
        adj[a].append(b)
    reach: set[tuple] = set()
    for v in verts:
        seen = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        reach.update((v, u) for u in seen)
    return ThinCategory(verts, reach)


# ---------------------------------------------------------------------------
# canonical constructions


class _FiniteInstance(NategoryInstance):
    def __init__(self, category: FiniteCategory, name: str):
        self.category = category
        self.name = name

    def objects(self):
        return self.category.objects

    def hom(self, x, y):
        return self.category.hom(x, y)

    def identity(self, x):
        return self.category.identity(x)

    def compose(self, f, g):
        return self.category.compose(f, g)

    def mor_ends(self, f):
        return (f.src, f.dst)


class TrivialInstance(_FiniteInstance):
    """No norphisms; all norphism operations have empty domains."""

    def nom(self, x, y):
        return ()

    def incompat(self, n, f):
        raise CapabilityError("trivial construction has no norphisms")

    def ncompose_left(self, f, n):
        raise CapabilityError("trivial construction has no norphisms")

    def ncompose_right(self, n, g):
        raise CapabilityError("trivial construction has no norphisms")


class NegationInstance(_FiniteInstance):
    """One norphism per pair, incompatible with every morphism."""

    def nom(self, x, y):
        return (Nor(NEGATION_TOKEN, x, y),)

    def incompat(self, n, f):
        self._require_parallel(n, f)
        return True

    def ncompose_left(self, f, n):
        self._require_left(f, n)
        return Nor(NEGATION_TOKEN, f.dst, n.dst)

    def ncompose_right(self, n, g):
        self._require_right(n, g)
        return Nor(NEGATION_TOKEN, n.src, g.src)


def _powerset(items: Sequence) -> tuple[frozenset, ...]:
    return tuple(
        frozenset(c)
        for c in chain.from_iterable(
            combinations(items, r) for r in range(len(items) + 1)
        )
    )


class PowersetInstance(_FiniteInstance):
    """Norphisms are subsets of hom-sets; incompatibility is membership.

    The left action is the preimage under pre-composition with ``f``, the
    right action the preimage under post-composition with ``g``.  This
    instance is exact.
    """

    def nom(self, x, y):
        hom = self.category.hom(x, y)
        if len(hom) > POWERSET_HOM_CAP:
            raise CapabilityError(
                f"hom({x!r},{y!r}) has {len(hom)} morphisms; powerset norphism "
                f"enumeration is capped at {POWERSET_HOM_CAP}"
            )
        return tuple(Nor(s, x, y) for s in _powerset(hom))

    def incompat(self, n, f):
        self._require_parallel(n, f)
        return f in n.value

    def ncompose_left(self, f, n):
        self._require_left(f, n)
        members = frozenset(
            g
            for g in self.category.hom(f.dst, n.dst)
            if self.category.compose(f, g) in n.value
        )
        return Nor(members, f.dst, n.dst)

    def ncompose_right(self, n, g):
        self._require_right(n, g)
        members = frozenset(
            f
            for f in self.category.hom(n.src, g.src)
            if self.category.compose(f, g) in n.value
        )
        return Nor(members, n.src, g.src)


class WeakInstance(PowersetInstance):
    """Powerset carriers, but both actions return the empty set."""

    def ncompose_left(self, f, n):
        self._require_left(f, n)
        return Nor(frozenset(), f.dst, n.dst)

    def ncompose_right(self, n, g):
        self._require_right(n, g)
        return Nor(frozenset(), n.src, g.src)


def trivial_nategory(category: FiniteCategory, name: str = "trivial") -> TrivialInstance:
    return TrivialInstance(category, name)


def negation_nategory(category: FiniteCategory, name: str = "negation") -> NegationInstance:
    return NegationInstance(category, name)


def powerset_nategory(category: FiniteCategory, name: str = "powerset") -> PowersetInstance:
    return PowersetInstance(category, name)


def weak_nategory(category: FiniteCategory, name: str = "weak") -> WeakInstance:
    return WeakInstance(category, name)


def thin_decomposition_check(thin: ThinCategory, max_counterexamples: int = 16) -> LawReport:
    """In a thin category, an asserted norphism X ~> Z (empty hom) forces,
    for every Y, hom(X, Y) or hom(Y, Z) to be empty."""
    checked = 0
    violations = 0
    ces: list[Counterexample] = []
    for x in thin.vertices:
        for z in thin.vertices:
            if thin.reachable(x, z):
                continue
            for y in thin.vertices:
                checked += 1
                if thin.reachable(x, y) and thin.reachable(y, z):
                    violations += 1
                    if len(ces) < max_counterexamples:
                        ces.append(
                            Counterexample(
                                objects=(x, y, z),
                                morphisms=(),
                                norphism=Nor(NEGATION_TOKEN, x, z),
                                lhs=True,
                                rhs=False,
                                detail="both legs reachable under an asserted norphism",
                            )
                        )
    return LawReport(
        law="thin-decomposition",
        passed=violations == 0,
        checked=checked,
        violations=violations,
        counterexamples=tuple(ces),
    )


# ---------------------------------------------------------------------------
# plain-text category descriptions


class CategoryFormatError(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def parse_category(text: str) -> FiniteCategory:
    """Parse the plain-text description format.

    One ``objects`` line, then arrow lines ``f: X -> Y``, then composition
    lines ``f;g = h``.  Identities are implicit per object and their
    composites are filled in automatically.
    """
    objects: list = []
    arrows: list[tuple] = []
    composites: dict[tuple, Hashable] = {}
    arrow_names = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("objects"):
            if objects:
                raise CategoryFormatError(line_no, "duplicate objects line")
            objects = line.split()[1:]
            if not objects:
                raise CategoryFormatError(line_no, "objects line lists no objects")
        elif "->" in line and ":" in line:
            name, rest = (part.strip() for part in line.split(":", 1))
            src, _, dst = (part.strip() for part in rest.partition("->"))
            if not name or not src or not dst:
                raise CategoryFormatError(line_no, f"malformed arrow line {raw!r}")
            if name in arrow_names:
                raise CategoryFormatError(line_no, f"duplicate arrow name {name!r}")
            arrow_names.add(name)
            arrows.append((name, src, dst))
        elif "=" in line and ";" in line:
            pair, result = (part.strip() for part in line.split("=", 1))
            fn, _, gn = (part.strip() for part in pair.partition(";"))
            if not fn or not gn or not result:
                raise CategoryFormatError(line_no, f"malformed composition line {raw!r}")
            for nm in (fn, gn):
                if nm not in arrow_names:
                    raise CategoryFormatError(line_no, f"unknown morphism {nm!r}")
            if result.startswith("id_"):
                if result[3:] not in objects:
                    raise CategoryFormatError(line_no, f"unknown identity {result!r}")
                composites[(fn, gn)] = ("id", result[3:])
            elif result in arrow_names:
                composites[(fn, gn)] = result
            else:
                raise CategoryFormatError(line_no, f"unknown morphism {result!r}")
        else:
            raise CategoryFormatError(line_no, f"unrecognized line {raw!r}")
    if not objects:
        raise CategoryFormatError(1, "missing objects line")
    try:
        return FiniteCategory.build(objects, arrows, composites)
    except (ValueError, KeyError) as exc:
        raise CategoryFormatError(0, f"invalid category: {exc}") from exc
