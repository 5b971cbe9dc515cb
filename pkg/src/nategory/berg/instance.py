"""The terrain nategory: paths as morphisms, length bounds as norphisms.

Hom-sets are infinite, so an instance carries a deterministic bounded
sample: every simple path with at most ``max_edges`` edges, plus a fixed
set of norphism sample values per domain.  The generic law engine works on
that sample directly; the heavy laws also have native fast paths that run
the packed kernels over the same scope and report identical verdicts.

Exactness here is a threshold comparison: an exclusion set in this
instance is "all paths shorter than v", and two of those agree for every
conceivable length exactly when the thresholds agree as extended reals.
The checker therefore compares the composed bound against the exact value
``n - length``; clamping (nonneg) and flooring (intfloor) lose information
and get flagged, plain subtraction (real) does not.
"""

from __future__ import annotations

import math

import numpy as np

from ..core import CapabilityError, Counterexample, LawReport, LawScope, NategoryInstance, Nor
from . import _kernels
from .domains import (
    DOMAIN_CODES,
    DOMAINS,
    INTFLOOR,
    NONNEG,
    REAL,
    compose_value,
    incompat_value,
    validate_value,
    values_close,
)
from .paths import BergPath, PathSet, concat, trivial_path
from .terrain import TerrainGraph

__all__ = ["DEFAULT_NOR_VALUES", "BergInstance"]

INF = math.inf

DEFAULT_NOR_VALUES = {
    NONNEG: (0.0, 0.75, 1.5, 2.25, 5.0, 10.0, INF),
    REAL: (-2.0, 0.0, 1.5, 4.25, 10.0, INF),
    INTFLOOR: (10.0, 0.0, 1.0, 2.0, 5.0, INF),
}


class BergInstance(NategoryInstance):
    def __init__(
        self,
        graph: TerrainGraph,
        domain: str = NONNEG,
        max_edges: int = 6,
        nor_values=None,
        name: str | None = None,
        backend: str | None = None,
        pathset: PathSet | None = None,
    ):
        if domain not in DOMAINS:
            raise ValueError(f"unknown norphism domain {domain!r}")
        self.graph = graph
        self.domain = domain
        self.max_edges = max_edges
        self.nor_values = tuple(
            float(v) for v in (nor_values if nor_values is not None else DEFAULT_NOR_VALUES[domain])
        )
        for v in self.nor_values:
            validate_value(domain, v)
        self.name = name or f"berg-{domain}"
        self.backend = backend
        if pathset is not None and (pathset.graph is not graph or pathset.max_edges != max_edges):
            raise ValueError("shared pathset does not match graph/max_edges")
        self._paths: PathSet | None = pathset
        self._hom: dict[tuple[int, int], tuple[BergPath, ...]] | None = None

    # -- sampled carriers ----------------------------------------------------

    @property
    def pathset(self) -> PathSet:
        if self._paths is None:
            self._paths = PathSet(self.graph, self.max_edges)
        return self._paths

    def objects(self):
        return tuple(range(self.graph.n))

    def hom(self, x, y):
        if self._hom is None:
            groups: dict[tuple[int, int], list[BergPath]] = {}
            ps = self.pathset
            for i in range(len(ps)):
                p = ps.path(i)
                groups.setdefault((p.src, p.dst), []).append(p)
            self._hom = {k: tuple(v) for k, v in groups.items()}
        return self._hom.get((x, y), ())

    def nom(self, x, y):
        return tuple(Nor(v, x, y) for v in self.nor_values)

    # -- structure -------------------------------------------------------------

    def identity(self, x):
        return trivial_path(x)

    def compose(self, f, g):
        return concat(self.graph, f, g)

    def incompat(self, n, f):
        self._require_parallel(n, f)
        validate_value(self.domain, n.value)
        return incompat_value(n.value, f.length)

    def ncompose_left(self, f, n):
        self._require_left(f, n)
        validate_value(self.domain, n.value)
        return Nor(compose_value(self.domain, n.value, f.length), f.dst, n.dst)

    def ncompose_right(self, n, g):
        self._require_right(n, g)
        validate_value(self.domain, n.value)
        return Nor(compose_value(self.domain, n.value, g.length), n.src, g.src)

    def mor_ends(self, f):
        return (f.src, f.dst)

    def norphism_close(self, a: Nor, b: Nor) -> bool:
        return (
            (a.src, a.dst) == (b.src, b.dst)
            and values_close(self.domain, a.value, b.value)
        )

    # -- native fast paths -------------------------------------------------------

    def native_law_report(self, law: str, scope: LawScope) -> LawReport | None:
        if scope.objects is not None or scope.triples is not None:
            return None  # restricted scopes go through the generic engine
        if law == "equivariance":
            return self._equivariance_report(scope)
        if law == "exactness":
            return self._exactness_report(scope)
        if law in ("covar", "contravar"):
            return self._action_report(law, scope)
        if law == "comm":
            return self._comm_report(scope)
        if law in ("neut-1", "neut-2"):
            return self._neut_report(law, scope)
        return None

    def _note(self, backend: str) -> str:
        t = self.graph.terrain
        return (
            f"backend={backend}; all simple paths <= {self.max_edges} edges on a "
            f"{t.rows}x{t.cols} grid; norphism samples {self.nor_values}"
        )

    def _nvals(self):
        return np.asarray(self.nor_values, dtype=np.float64)

    def _equivariance_report(self, scope) -> LawReport:
        res = _kernels.equivariance_scan(
            self.pathset,
            self._nvals(),
            DOMAIN_CODES[self.domain],
            scope.max_counterexamples,
            self.backend,
        )
        ces = []
        for t, fi, gi, kind in res["ce"]:
            f = self.pathset.path(int(fi))
            g = self.pathset.path(int(gi))
            nv = self.nor_values[int(t)]
            ces.append(
                Counterexample(
                    objects=(f.src, f.dst, g.dst),
                    morphisms=(f, g),
                    norphism=Nor(nv, f.src, g.dst),
                    lhs=True,
                    rhs=False,
                    detail="left action" if kind == 0 else "right action",
                )
            )
        return LawReport(
            "equivariance",
            res["violations"] == 0,
            res["checked"],
            res["violations"],
            tuple(ces),
            note=self._note(res["backend"]),
        )

    def _exactness_report(self, scope) -> LawReport:
        res = _kernels.exactness_scan(
            self.pathset,
            self._nvals(),
            DOMAIN_CODES[self.domain],
            scope.max_counterexamples,
            self.backend,
        )
        ces = []
        for t, fi in res["ce"]:
            f = self.pathset.path(int(fi))
            nv = self.nor_values[int(t)]
            ces.append(
                Counterexample(
                    objects=(f.src, f.dst),
                    morphisms=(f,),
                    norphism=Nor(nv, f.src, f.dst),
                    lhs=compose_value(self.domain, nv, f.length),
                    rhs=nv - f.length,
                    detail="composed bound differs from the exact threshold",
                )
            )
        return LawReport(
            "exactness",
            res["violations"] == 0,
            res["checked"],
            res["violations"],
            tuple(ces),
            note=self._note(res["backend"])
            + "; both actions share the same arithmetic, scanned once",
        )

    def _action_report(self, law: str, scope) -> LawReport:
        law_code = 0 if law == "covar" else 1
        res = _kernels.action_pair_scan(
            self.pathset,
            self._nvals(),
            DOMAIN_CODES[self.domain],
            law_code,
            scope.max_counterexamples,
            self.backend,
        )
        ces = []
        for t, ai, bi in res["ce"]:
            a = self.pathset.path(int(ai))
            b = self.pathset.path(int(bi))
            nv = self.nor_values[int(t)]
            lhs = compose_value(self.domain, nv, a.length + b.length)
            if law == "covar":
                rhs = compose_value(self.domain, compose_value(self.domain, nv, a.length), b.length)
                norphism = Nor(nv, a.src, b.dst)
            else:
                rhs = compose_value(self.domain, compose_value(self.domain, nv, b.length), a.length)
                norphism = Nor(nv, a.src, b.dst)
            ces.append(
                Counterexample(
                    objects=(a.src, a.dst, b.dst),
                    morphisms=(a, b),
                    norphism=norphism,
                    lhs=lhs,
                    rhs=rhs,
                    detail=f"{law}: pushing the concatenation vs iterating",
                )
            )
        return LawReport(
            law,
            res["violations"] == 0,
            res["checked"],
            res["violations"],
            tuple(ces),
            note=self._note(res["backend"]),
        )

    def _comm_report(self, scope) -> LawReport:
        uvals, reps = self.pathset.unique_lengths()
        res = _kernels.comm_scan(
            uvals,
            self._nvals(),
            DOMAIN_CODES[self.domain],
            scope.max_counterexamples,
            self.backend,
        )
        ces = []
        for t, i, j in res["ce"]:
            f = self.pathset.path(int(reps[int(i)]))
            h = self.pathset.path(int(reps[int(j)]))
            nv = self.nor_values[int(t)]
            lhs = compose_value(self.domain, compose_value(self.domain, nv, h.length), f.length)
            rhs = compose_value(self.domain, compose_value(self.domain, nv, f.length), h.length)
            ces.append(
                Counterexample(
                    objects=(f.src, f.dst, h.src, h.dst),
                    morphisms=(f, h),
                    norphism=Nor(nv, f.src, h.dst),
                    lhs=lhs,
                    rhs=rhs,
                    detail="comm: order of the two actions",
                )
            )
        return LawReport(
            "comm",
            res["violations"] == 0,
            res["checked"],
            res["violations"],
            tuple(ces),
            note=self._note(res["backend"]) + "; scanned over distinct path lengths",
        )

    def _neut_report(self, law: str, scope) -> LawReport:
        # identities are the trivial paths, all of length zero, so the check
        # is value-level: pushing a bound past length 0 must not change it
        checked = 0
        ces = []
        viol = 0
        for nv in self.nor_values:
            checked += 1
            got = compose_value(self.domain, nv, 0.0)
            if got != nv:
                viol += 1
                if len(ces) < scope.max_counterexamples:
                    ces.append(
                        Counterexample(
                            objects=(),
                            morphisms=(),
                            norphism=nv,
                            lhs=got,
                            rhs=nv,
                            detail=f"{law}: identity action changed the bound",
                        )
                    )
        return LawReport(
            law,
            viol == 0,
            checked,
            viol,
            tuple(ces),
            note="value-level: every identity is a trivial path of length 0",
        )
