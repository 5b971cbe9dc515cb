"""The nategory contract and its law checkers.

A nategory is a category that, next to each hom-set, carries a nom-set of
"norphisms": negative arrows that exclude morphisms.  The structure is

* an incompatibility relation ``incompat(n, f)`` between a norphism and a
  morphism with the same endpoints,
* a left action ``ncompose_left(f, n)`` turning ``f: X -> Y`` and
  ``n: X ~> Z`` into a norphism ``Y ~> Z``, and
* a right action ``ncompose_right(n, g)`` turning ``n: X ~> Z`` and
  ``g: Y -> Z`` into a norphism ``X ~> Y``.

Soundness of the two actions is the pair of equivariance laws: a composed
norphism may only exclude ``g`` (resp. ``f``) when the original norphism
excludes ``f . g``.  Instances where this holds as an equivalence are called
exact.  The checkers in this module verify those laws, the plain category
laws, and the five action properties (identity neutrality, compatibility
with composition, commutation) that hold in enriched presentations but not
in every instance.

Everything here is instance-agnostic: concrete instances (finite
constructions, the terrain planner, the co-design engine) plug in through
``NategoryInstance``.  Instances with infinite hom-sets expose a bounded,
deterministic sample as their enumeration; they may also provide a native
fast path per law via ``native_law_report``.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Hashable, Iterable, Sequence

__all__ = [
    "SignatureError",
    "CapabilityError",
    "Nor",
    "Counterexample",
    "LawReport",
    "LawScope",
    "NategoryInstance",
    "exclusion_set",
    "check_category_laws",
    "check_equivariance",
    "check_exactness",
    "check_pn_properties",
    "PN_LAWS",
]

PN_LAWS = ("neut-1", "neut-2", "covar", "contravar", "comm")


class SignatureError(ValueError):
    """Raised when arrows are combined with mismatched endpoints."""


class CapabilityError(RuntimeError):
    """Raised when an operation needs an enumeration the instance lacks."""


@dataclass(frozen=True)
class Nor:
    """A norphism value with its declared endpoints."""

    value: Any
    src: Hashable
    dst: Hashable

    def __repr__(self) -> str:
        return f"Nor({self.value!r}, {self.src!r}~>{self.dst!r})"


@dataclass(frozen=True)
class Counterexample:
    """A replayable law violation: the tuple of inputs and both sides."""

    objects: tuple
    morphisms: tuple
    norphism: Any
    lhs: Any
    rhs: Any
    detail: str = ""


@dataclass(frozen=True)
class LawReport:
    law: str
    passed: bool
    checked: int
    violations: int
    counterexamples: tuple[Counterexample, ...]
    note: str = ""

    def __str__(self) -> str:
        status = "pass" if self.passed else "fail"
        return (
            f"[{status}] {self.law}: {self.checked} checked, "
            f"{self.violations} violations"
        )


@dataclass(frozen=True)
class LawScope:
    """Bounds for a law check.

    ``objects`` restricts the object universe, ``triples`` pins the exact
    object triples for the composition laws, ``max_checks`` truncates the
    (deterministic) enumeration for instances whose sampled hom-sets are
    large.  The same scope always yields the same report.
    """

    objects: tuple | None = None
    triples: tuple | None = None
    max_counterexamples: int = 16
    max_checks: int | None = None


_DEFAULT_SCOPE = LawScope()


class NategoryInstance(ABC):
    """Behavioural contract every nategory instance implements.

    Morphism and norphism values are opaque, hashable, and compared
    structurally.  ``hom``/``nom`` must be deterministic; for instances with
    infinite carriers they return the instance's bounded sample and law
    checks are understood relative to it.
    """

    name: str = "nategory"

    @abstractmethod
    def objects(self) -> Sequence[Hashable]: ...

    @abstractmethod
    def hom(self, x, y) -> Sequence: ...

    @abstractmethod
    def nom(self, x, y) -> Sequence[Nor]: ...

    @abstractmethod
    def identity(self, x): ...

    @abstractmethod
    def compose(self, f, g):
        """Diagrammatic composition of ``f: X -> Y`` then ``g: Y -> Z``."""

    @abstractmethod
    def incompat(self, n: Nor, f) -> bool: ...

    @abstractmethod
    def ncompose_left(self, f, n: Nor) -> Nor:
        """Left action: ``f: X -> Y`` acts on ``n: X ~> Z`` giving ``Y ~> Z``."""

    @abstractmethod
    def ncompose_right(self, n: Nor, g) -> Nor:
        """Right action: ``g: Y -> Z`` acts on ``n: X ~> Z`` giving ``X ~> Y``."""

    @abstractmethod
    def mor_ends(self, f) -> tuple[Hashable, Hashable]: ...

    def nor_ends(self, n: Nor) -> tuple[Hashable, Hashable]:
        return (n.src, n.dst)

    def native_law_report(self, law: str, scope: LawScope) -> LawReport | None:
        """Optional fast path for a law; ``None`` means use the generic engine."""
        return None

    # -- shared signature guards -------------------------------------------

    def _require_composable(self, f, g):
        fs, ft = self.mor_ends(f)
        gs, gt = self.mor_ends(g)
        if ft != gs:
            raise SignatureError(
                f"cannot compose {f!r}: {fs}->{ft} with {g!r}: {gs}->{gt}"
            )

    def _require_left(self, f, n: Nor):
        fs, _ = self.mor_ends(f)
        if fs != n.src:
            raise SignatureError(
                f"left action needs a shared source: {f!r} starts at {fs}, "
                f"{n!r} starts at {n.src}"
            )

    def _require_right(self, n: Nor, g):
        _, gt = self.mor_ends(g)
        if gt != n.dst:
            raise SignatureError(
                f"right action needs a shared target: {g!r} ends at {gt}, "
                f"{n!r} ends at {n.dst}"
            )

    def _require_parallel(self, n: Nor, f):
        fs, ft = self.mor_ends(f)
        if (fs, ft) != (n.src, n.dst):
            raise SignatureError(
                f"incompatibility needs parallel arrows: {f!r}: {fs}->{ft} "
                f"vs {n!r}: {n.src}~>{n.dst}"
            )


def exclusion_set(instance: NategoryInstance, n: Nor) -> frozenset:
    """The set of enumerated morphisms a norphism is incompatible with."""
    x, y = instance.nor_ends(n)
    return frozenset(f for f in instance.hom(x, y) if instance.incompat(n, f))


# ---------------------------------------------------------------------------
# generic law engine


class _BudgetExhausted(Exception):
    pass


class _Collector:
    """Accumulates check/violation counts and a bounded counterexample list."""

    def __init__(self, scope: LawScope):
        self.checked = 0
        self.violations = 0
        self.max_ce = scope.max_counterexamples
        self.budget = scope.max_checks
        self.ces: list[Counterexample] = []
        self.truncated = False

    def tick(self):
        if self.budget is not None and self.checked >= self.budget:
            self.truncated = True
            raise _BudgetExhausted()
        self.checked += 1

    def fail(self, ce: Counterexample):
        self.violations += 1
        if len(self.ces) < self.max_ce:
            self.ces.append(ce)

    def report(self, law: str, note: str = "") -> LawReport:
        if self.truncated:
            note = (note + " " if note else "") + "(enumeration truncated at budget)"
        return LawReport(
            law=law,
            passed=self.violations == 0,
            checked=self.checked,
            violations=self.violations,
            counterexamples=tuple(self.ces),
            note=note,
        )


def _scope_objects(instance: NategoryInstance, scope: LawScope) -> tuple:
    return tuple(scope.objects) if scope.objects is not None else tuple(instance.objects())


def _scope_triples(instance, scope) -> Iterable[tuple]:
    if scope.triples is not None:
        return tuple(scope.triples)
    objs = _scope_objects(instance, scope)
    return tuple((x, y, z) for x in objs for y in objs for z in objs)


def check_category_laws(
    instance: NategoryInstance, scope: LawScope = _DEFAULT_SCOPE
) -> LawReport:
    """Identity neutrality and associativity of morphism composition."""
    native = instance.native_law_report("category-laws", scope)
    if native is not None:
        return native
    col = _Collector(scope)
    objs = _scope_objects(instance, scope)
    try:
        for x in objs:
            for y in objs:
                for f in instance.hom(x, y):
                    col.tick()
                    lhs = instance.compose(instance.identity(x), f)
                    rhs = instance.compose(f, instance.identity(y))
                    if lhs != f or rhs != f:
                        col.fail(
                            Counterexample(
                                objects=(x, y),
                                morphisms=(f,),
                                norphism=None,
                                lhs=lhs,
                                rhs=rhs,
                                detail="identity",
                            )
                        )
        for x, y, z in _scope_triples(instance, scope):
            for w in objs:
                for f in instance.hom(x, y):
                    for g in instance.hom(y, z):
                        fg = instance.compose(f, g)
                        for h in instance.hom(z, w):
                            col.tick()
                            lhs = instance.compose(fg, h)
                            rhs = instance.compose(f, instance.compose(g, h))
                            if lhs != rhs:
                                col.fail(
                                    Counterexample(
                                        objects=(x, y, z, w),
                                        morphisms=(f, g, h),
                                        norphism=None,
                                        lhs=lhs,
                                        rhs=rhs,
                                        detail="associativity",
                                    )
                                )
    except _BudgetExhausted:
        pass
    return col.report("category-laws")


def check_equivariance(
    instance: NategoryInstance, scope: LawScope = _DEFAULT_SCOPE
) -> LawReport:
    """Soundness of both actions.

    For each sampled ``f: X -> Y``, ``n: X ~> Z``, ``g: Y -> Z`` checks that
    ``incompat(f * n, g)`` implies ``incompat(n, f . g)`` and that
    ``incompat(n * g, f)`` implies ``incompat(n, f . g)``.
    """
    native = instance.native_law_report("equivariance", scope)
    if native is not None:
        return native
    col = _Collector(scope)
    try:
        _equivariance_generic(instance, scope, col)
    except _BudgetExhausted:
        pass
    return col.report("equivariance")


def _equivariance_generic(instance, scope, col):
    for x, y, z in _scope_triples(instance, scope):
        homs_xy = instance.hom(x, y)
        homs_yz = instance.hom(y, z)
        noms_xz = instance.nom(x, z)
        for f in homs_xy:
            for n in noms_xz:
                left = instance.ncompose_left(f, n)
                for g in homs_yz:
                    col.tick()
                    whole = instance.incompat(n, instance.compose(f, g))
                    if instance.incompat(left, g) and not whole:
                        col.fail(
                            Counterexample(
                                objects=(x, y, z),
                                morphisms=(f, g),
                                norphism=n,
                                lhs=True,
                                rhs=False,
                                detail="left action excludes g but n allows f.g",
                            )
                        )
                    right = instance.ncompose_right(n, g)
                    if instance.incompat(right, f) and not whole:
                        col.fail(
                            Counterexample(
                                objects=(x, y, z),
                                morphisms=(f, g),
                                norphism=n,
                                lhs=True,
                                rhs=False,
                                detail="right action excludes f but n allows f.g",
                            )
                        )


def check_exactness(
    instance: NategoryInstance, scope: LawScope = _DEFAULT_SCOPE
) -> LawReport:
    """Equivariance strengthened to an equivalence.

    Composed norphisms must exclude exactly the preimage of the original
    exclusion set, checked pointwise over the enumerated morphisms.
    Instances with numeric norphism carriers override this with a native
    threshold comparison (see the terrain instance).
    """
    native = instance.native_law_report("exactness", scope)
    if native is not None:
        return native
    col = _Collector(scope)
    try:
        _exactness_generic(instance, scope, col)
    except _BudgetExhausted:
        pass
    return col.report("exactness")


def _exactness_generic(instance, scope, col):
    for x, y, z in _scope_triples(instance, scope):
        homs_xy = instance.hom(x, y)
        homs_yz = instance.hom(y, z)
        noms_xz = instance.nom(x, z)
        for f in homs_xy:
            for n in noms_xz:
                left = instance.ncompose_left(f, n)
                for g in homs_yz:
                    col.tick()
                    whole = instance.incompat(n, instance.compose(f, g))
                    if instance.incompat(left, g) != whole:
                        col.fail(
                            Counterexample(
                                objects=(x, y, z),
                                morphisms=(f, g),
                                norphism=n,
                                lhs=instance.incompat(left, g),
                                rhs=whole,
                                detail="left action not exact",
                            )
                        )
                    right = instance.ncompose_right(n, g)
                    if instance.incompat(right, f) != whole:
                        col.fail(
                            Counterexample(
                                objects=(x, y, z),
                                morphisms=(f, g),
                                norphism=n,
                                lhs=instance.incompat(right, f),
                                rhs=whole,
                                detail="right action not exact",
                            )
                        )


def _norphism_eq(instance, a: Nor, b: Nor) -> bool:
    eq = getattr(instance, "norphism_close", None)
    if eq is not None:
        return eq(a, b)
    return a == b


def check_pn_properties(
    instance: NategoryInstance, scope: LawScope = _DEFAULT_SCOPE
) -> dict[str, LawReport]:
    """The five action properties of enriched presentations, each reported
    separately: neut-1 (id acts neutrally on the left), neut-2 (on the
    right), covar ((f.g) * n = g * (f * n)), contravar
    (n * (g.h) = (n * h) * g), comm (f * (n * h) = (f * n) * h).
    """
    reports: dict[str, LawReport] = {}
    for law in PN_LAWS:
        native = instance.native_law_report(law, scope)
        if native is not None:
            reports[law] = native
    missing = [law for law in PN_LAWS if law not in reports]
    if not missing:
        return reports

    objs = _scope_objects(instance, scope)
    cols = {law: _Collector(scope) for law in missing}

    if "neut-1" in cols or "neut-2" in cols:
        try:
            for x in objs:
                for y in objs:
                    for n in instance.nom(x, y):
                        if "neut-1" in cols:
                            col = cols["neut-1"]
                            col.tick()
                            got = instance.ncompose_left(instance.identity(x), n)
                            if not _norphism_eq(instance, got, n):
                                col.fail(Counterexample((x, y), (), n, got, n))
                        if "neut-2" in cols:
                            col = cols["neut-2"]
                            col.tick()
                            got = instance.ncompose_right(n, instance.identity(y))
                            if not _norphism_eq(instance, got, n):
                                col.fail(Counterexample((x, y), (), n, got, n))
        except _BudgetExhausted:
            pass

    if "covar" in cols:
        col = cols["covar"]
        try:
            for x in objs:
                for y in objs:
                    for z in objs:
                        for u in objs:
                            for f in instance.hom(x, y):
                                for g in instance.hom(y, z):
                                    fg = instance.compose(f, g)
                                    for n in instance.nom(x, u):
                                        col.tick()
                                        lhs = instance.ncompose_left(fg, n)
                                        rhs = instance.ncompose_left(
                                            g, instance.ncompose_left(f, n)
                                        )
                                        if not _norphism_eq(instance, lhs, rhs):
                                            col.fail(
                                                Counterexample(
                                                    (x, y, z, u), (f, g), n, lhs, rhs
                                                )
                                            )
        except _BudgetExhausted:
            pass

    if "contravar" in cols:
        col = cols["contravar"]
        try:
            for x in objs:
                for y in objs:
                    for z in objs:
                        for u in objs:
                            for g in instance.hom(y, z):
                                for h in instance.hom(z, u):
                                    gh = instance.compose(g, h)
                                    for n in instance.nom(x, u):
                                        col.tick()
                                        lhs = instance.ncompose_right(n, gh)
                                        rhs = instance.ncompose_right(
                                            instance.ncompose_right(n, h), g
                                        )
                                        if not _norphism_eq(instance, lhs, rhs):
                                            col.fail(
                                                Counterexample(
                                                    (x, y, z, u), (g, h), n, lhs, rhs
                                                )
                                            )
        except _BudgetExhausted:
            pass

    if "comm" in cols:
        col = cols["comm"]
        try:
            for x in objs:
                for y in objs:
                    for z in objs:
                        for w in objs:
                            for f in instance.hom(x, y):
                                for h in instance.hom(w, z):
                                    for n in instance.nom(x, z):
                                        col.tick()
                                        lhs = instance.ncompose_left(
                                            f, instance.ncompose_right(n, h)
                                        )
                                        rhs = instance.ncompose_right(
                                            instance.ncompose_left(f, n), h
                                        )
                                        if not _norphism_eq(instance, lhs, rhs):
                                            col.fail(
                                                Counterexample(
                                                    (x, y, z, w), (f, h), n, lhs, rhs
                                                )
                                            )
        except _BudgetExhausted:
            pass

    for law in missing:
        reports[law] = cols[law].report(law)
    return {law: reports[law] for law in PN_LAWS}
