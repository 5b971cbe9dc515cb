"""Finite dialectica objects, the question-pairing product, and the bridge.

An object is a triple of finite sets plus a boolean relation: questions,
answers, and which answers are correct for which questions.  A morphism is
a backward map on questions together with a forward map on answers such
that correct answers are carried to correct answers.  The ``pair_*``
functions implement the monoidal product whose question set is a pair of
function spaces and whose relation is a pointwise disjunction.

The bridge packages a nategory's data in these terms: the hom-object at
``(X, Y)`` is ``<Nom(X,Y), Hom(X,Y), incompat>``, and the candidate
composition morphism has morphism composition as its forward map and the
pair of norphism actions as its backward map.  Its validity is exactly the
two equivariance laws; validity strengthened to equivalences is exactness.

Map tables are index-encoded against each object's element order, so
composition and equality are integer operations and the exhaustive law
scans over tiny objects can run through packed-array kernels (numba with a
numpy fallback).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from typing import Hashable, Sequence

import numpy as np

from ._backend import njit, resolve_backend
from .core import (
    CapabilityError,
    Counterexample,
    LawReport,
    NategoryInstance,
    SignatureError,
)

__all__ = [
    "GObject",
    "GMorphism",
    "is_valid",
    "validity_counterexamples",
    "identity",
    "compose",
    "unit_object",
    "pair_objects",
    "pair_morphisms",
    "PRODUCT_ENTRY_CAP",
    "enumerate_objects",
    "enumerate_morphisms",
    "MorphismUniverse",
    "hom_object",
    "composition_morphism",
    "BridgeReport",
    "materialized_composition_morphism",
]

PRODUCT_ENTRY_CAP = 10**6


@dataclass(frozen=True)
class GObject:
    """Questions, answers, and the set of correct (question, answer) pairs."""

    questions: tuple
    answers: tuple
    holds: frozenset

    def kappa(self, q, a) -> bool:
        return (q, a) in self.holds

    def __repr__(self) -> str:
        return f"GObject(|Q|={len(self.questions)}, |A|={len(self.answers)}, |holds|={len(self.holds)})"


@dataclass(frozen=True)
class GMorphism:
    """Index-encoded map pair between two objects.

    ``backward[k]`` is the source-question index assigned to destination
    question ``k``; ``forward[j]`` the destination-answer index assigned to
    source answer ``j``.
    """

    src: GObject
    dst: GObject
    backward: tuple[int, ...]
    forward: tuple[int, ...]

    def __post_init__(self):
        if len(self.backward) != len(self.dst.questions):
            raise SignatureError("backward table length != destination question count")
        if len(self.forward) != len(self.src.answers):
            raise SignatureError("forward table length != source answer count")
        if any(i >= len(self.src.questions) for i in self.backward):
            raise SignatureError("backward table maps outside source questions")
        if any(j >= len(self.dst.answers) for j in self.forward):
            raise SignatureError("forward table maps outside destination answers")


def is_valid(m: GMorphism) -> bool:
    """Correctness transport: for every destination question and source
    answer, correctness at the pulled-back question implies correctness of
    the pushed-forward answer."""
    src, dst = m.src, m.dst
    for k, q2 in enumerate(dst.questions):
        q1 = src.questions[m.backward[k]]
        for j, a1 in enumerate(src.answers):
            if src.kappa(q1, a1) and not dst.kappa(q2, dst.answers[m.forward[j]]):
                return False
    return True


def validity_counterexamples(m: GMorphism, limit: int = 16) -> list[tuple]:
    out = []
    src, dst = m.src, m.dst
    for k, q2 in enumerate(dst.questions):
        q1 = src.questions[m.backward[k]]
        for j, a1 in enumerate(src.answers):
            if src.kappa(q1, a1) and not dst.kappa(q2, dst.answers[m.forward[j]]):
                out.append((q2, a1))
                if len(out) >= limit:
                    return out
    return out


def identity(o: GObject) -> GMorphism:
    return GMorphism(o, o, tuple(range(len(o.questions))), tuple(range(len(o.answers))))


def compose(r: GMorphism, s: GMorphism) -> GMorphism:
    """Diagrammatic composite of ``r: o1 -> o2`` then ``s: o2 -> o3``:
    questions pull back through ``s`` then ``r``, answers push forward
    through ``r`` then ``s``."""
    if r.dst != s.src:
        raise SignatureError("non-composable dialectica morphisms")
    backward = tuple(r.backward[s.backward[k]] for k in range(len(s.dst.questions)))
    forward = tuple(s.forward[r.forward[j]] for j in range(len(r.src.answers)))
    return GMorphism(r.src, s.dst, backward, forward)


def unit_object() -> GObject:
    """Singleton questions and answers, nothing correct."""
    return GObject((0,), (0,), frozenset())


def _function_tables(n_from: int, n_to: int):
    """All tables for functions from an ``n_from``-element set to an
    ``n_to``-element set, in lexicographic order."""
    return tuple(iproduct(range(n_to), repeat=n_from))


def pair_objects(o1: GObject, o2: GObject, entry_cap: int = PRODUCT_ENTRY_CAP) -> GObject:
    """Monoidal product on objects.

    Questions are pairs (phi: A2 -> Q1, psi: A1 -> Q2) of index tables,
    answers are answer pairs, and a pair answer is correct when either
    component answers the question the other component selected.
    """
    q1, a1 = len(o1.questions), len(o1.answers)
    q2, a2 = len(o2.questions), len(o2.answers)
    n_phi = q1**a2 if a2 else 1
    n_psi = q2**a1 if a1 else 1
    if a2 and q1 == 0:
        n_phi = 0
    if a1 and q2 == 0:
        n_psi = 0
    n_q = n_phi * n_psi
    n_a = a1 * a2
    if n_q * max(n_a, 1) > entry_cap:
        raise CapabilityError(
            f"product object needs {n_q} x {n_a} relation entries, over the cap {entry_cap}"
        )
    phis = _function_tables(a2, q1)
    psis = _function_tables(a1, q2)
    questions = tuple((phi, psi) for phi in phis for psi in psis)
    answers = tuple((x, y) for x in o1.answers for y in o2.answers)
    holds = set()
    for phi, psi in questions:
        for j1, x in enumerate(o1.answers):
            for j2, y in enumerate(o2.answers):
                left = o1.kappa(o1.questions[phi[j2]], x) if phi else False
                right = o2.kappa(o2.questions[psi[j1]], y) if psi else False
                if left or right:
                    holds.add(((phi, psi), (x, y)))
    return GObject(questions, answers, frozenset(holds))


def pair_morphisms(
    r: GMorphism, s: GMorphism, entry_cap: int = PRODUCT_ENTRY_CAP
) -> GMorphism:
    """Monoidal product on morphisms.

    The forward map acts componentwise; the backward map conjugates each
    function-space component by the other factor's forward map.
    """
    src = pair_objects(r.src, s.src, entry_cap)
    dst = pair_objects(r.dst, s.dst, entry_cap)
    a2 = len(s.src.answers)
    a1 = len(r.src.answers)
    a4 = len(s.dst.answers)
    src_qindex = {q: i for i, q in enumerate(src.questions)}
    backward = []
    for phi3, psi4 in dst.questions:
        phi1 = tuple(r.backward[phi3[s.forward[j2]]] for j2 in range(a2))
        psi2 = tuple(s.backward[psi4[r.forward[j1]]] for j1 in range(a1))
        backward.append(src_qindex[(phi1, psi2)])
    forward = tuple(
        r.forward[j1] * a4 + s.forward[j2] for j1 in range(a1) for j2 in range(a2)
    )
    return GMorphism(src, dst, tuple(backward), forward)


# ---------------------------------------------------------------------------
# exhaustive enumeration of tiny objects and morphisms


def enumerate_objects(max_q: int = 2, max_a: int = 2, min_q: int = 0, min_a: int = 0):
    """All objects with question/answer sets of the given sizes (elements
    are 0..n-1) and every boolean relation, in deterministic order."""
    out = []
    for nq in range(min_q, max_q + 1):
        for na in range(min_a, max_a + 1):
            questions = tuple(range(nq))
            answers = tuple(range(na))
            cells = [(q, a) for q in questions for a in answers]
            for bits in range(1 << len(cells)):
                holds = frozenset(c for i, c in enumerate(cells) if (bits >> i) & 1)
                out.append(GObject(questions, answers, holds))
    return tuple(out)


def enumerate_morphisms(src: GObject, dst: GObject) -> tuple[GMorphism, ...]:
    """All valid morphisms between two objects (exhaustive)."""
    out = []
    for backward in _function_tables(len(dst.questions), len(src.questions)):
        for forward in _function_tables(len(src.answers), len(dst.answers)):
            m = GMorphism(src, dst, backward, forward)
            if is_valid(m):
                out.append(m)
    return tuple(out)


def _assoc_loop(n, counts, off3, blocks, max_ce, ce):
    checked = 0
    viol = 0
    nce = 0
    for o1 in range(n):
        for o2 in range(n):
            m12 = counts[o1, o2]
            if m12 == 0:
                continue
            for o3 in range(n):
                m23 = counts[o2, o3]
                if m23 == 0:
                    continue
                off123 = off3[(o1 * n + o2) * n + o3]
                for o4 in range(n):
                    m34 = counts[o3, o4]
                    if m34 == 0:
                        continue
                    m24 = counts[o2, o4]
                    off134 = off3[(o1 * n + o3) * n + o4]
                    off234 = off3[(o2 * n + o3) * n + o4]
                    off124 = off3[(o1 * n + o2) * n + o4]
                    if off134 < 0 or off124 < 0:
                        # only reachable when closure already failed
                        continue
                    for a in range(m12):
                        for b in range(m23):
                            ab = blocks[off123 + a * m23 + b]
                            for c in range(m34):
                                checked += 1
                                r1 = blocks[off134 + ab * m34 + c]
                                bc = blocks[off234 + b * m34 + c]
                                r2 = blocks[off124 + a * m24 + bc]
                                if r1 != r2:
                                    viol += 1
                                    if nce < max_ce:
                                        ce[nce, 0] = o1
                                        ce[nce, 1] = o2
                                        ce[nce, 2] = o3
                                        ce[nce, 3] = o4
                                        ce[nce, 4] = a
                                        ce[nce, 5] = b
                                        ce[nce, 6] = c
                                        nce += 1
    return checked, viol, nce


_assoc_jit = njit(cache=True)(_assoc_loop)


class MorphismUniverse:
    """Every valid morphism between a family of objects, with packed
    composition tables for the exhaustive law scans."""

    def __init__(self, objects: Sequence[GObject]):
        self.objects = tuple(objects)
        n = len(self.objects)
        self.pair_morphisms: dict[tuple[int, int], tuple[GMorphism, ...]] = {}
        for i, oi in enumerate(self.objects):
            for j, oj in enumerate(self.objects):
                self.pair_morphisms[(i, j)] = enumerate_morphisms(oi, oj)
        self.counts = np.zeros((n, n), dtype=np.int32)
        index: dict[tuple[int, int], dict[tuple, int]] = {}
        for (i, j), mors in self.pair_morphisms.items():
            self.counts[i, j] = len(mors)
            index[(i, j)] = {(m.backward, m.forward): a for a, m in enumerate(mors)}
        self.identity_local = np.empty(n, dtype=np.int32)
        for i, o in enumerate(self.objects):
            ident = identity(o)
            self.identity_local[i] = index[(i, i)][(ident.backward, ident.forward)]
        # composition blocks; a composite of valid morphisms must be found
        # among the enumerated valid morphisms (closure under composition)
        self.closure_failures: list[tuple] = []
        self.blocks: dict[tuple[int, int, int], np.ndarray] = {}
        flat: list[np.ndarray] = []
        off3 = np.full(n * n * n, -1, dtype=np.int64)
        offset = 0
        for i in range(n):
            for j in range(n):
                mij = self.pair_morphisms[(i, j)]
                if not mij:
                    continue
                for k in range(n):
                    mjk = self.pair_morphisms[(j, k)]
                    if not mjk:
                        continue
                    block = np.empty((len(mij), len(mjk)), dtype=np.int32)
                    lookup = index[(i, k)]
                    for a, f in enumerate(mij):
                        for b, g in enumerate(mjk):
                            h = compose(f, g)
                            local = lookup.get((h.backward, h.forward))
                            if local is None:
                                self.closure_failures.append((i, j, k, a, b))
                                local = -1
                            block[a, b] = local
                    self.blocks[(i, j, k)] = block
                    off3[(i * n + j) * n + k] = offset
                    flat.append(block.reshape(-1))
                    offset += block.size
        self.flat_blocks = (
            np.concatenate(flat) if flat else np.empty(0, dtype=np.int32)
        )
        self.off3 = off3

    def total_morphisms(self) -> int:
        return int(self.counts.sum())

    def composable_pairs(self):
        """All composable morphism pairs as (i, j, k, a, b), deterministic."""
        n = len(self.objects)
        for i in range(n):
            for j in range(n):
                if self.counts[i, j] == 0:
                    continue
                for k in range(n):
                    for a in range(self.counts[i, j]):
                        for b in range(self.counts[j, k]):
                            yield (i, j, k, a, b)

    def closure_report(self) -> LawReport:
        ces = tuple(
            Counterexample(objects=t[:3], morphisms=t[3:], norphism=None,
                           lhs="composite not a valid morphism", rhs=None)
            for t in self.closure_failures[:16]
        )
        checked = int(self.flat_blocks.size)
        return LawReport(
            law="composition-preserves-validity",
            passed=not self.closure_failures,
            checked=checked,
            violations=len(self.closure_failures),
            counterexamples=ces,
        )

    def unitality_report(self) -> LawReport:
        checked = 0
        viol = 0
        ces = []
        n = len(self.objects)
        for i in range(n):
            for j in range(n):
                mij = self.counts[i, j]
                if mij == 0:
                    continue
                left = self.blocks[(i, i, j)]
                right = self.blocks[(i, j, j)]
                idi = self.identity_local[i]
                idj = self.identity_local[j]
                for a in range(mij):
                    checked += 1
                    if left[idi, a] != a or right[a, idj] != a:
                        viol += 1
                        if len(ces) < 16:
                            ces.append(
                                Counterexample((i, j), (a,), None, left[idi, a], right[a, idj])
                            )
        return LawReport("composition-unital", viol == 0, checked, viol, tuple(ces))

    def associativity_report(self, backend: str | None = None) -> LawReport:
        name = resolve_backend(backend)
        n = len(self.objects)
        max_ce = 16
        ce = np.zeros((max_ce, 7), dtype=np.int64)
        if name == "numba":
            checked, viol, nce = _assoc_jit(
                n, self.counts, self.off3, self.flat_blocks, max_ce, ce
            )
        else:
            checked, viol, nce = self._assoc_numpy(max_ce, ce)
        ces = tuple(
            Counterexample(
                objects=tuple(int(v) for v in ce[t, :4]),
                morphisms=tuple(int(v) for v in ce[t, 4:]),
                norphism=None,
                lhs="(f.g).h",
                rhs="f.(g.h)",
            )
            for t in range(nce)
        )
        return LawReport(
            "composition-associative", viol == 0, int(checked), int(viol), ces,
            note=f"backend={name}",
        )

    def _assoc_numpy(self, max_ce, ce):
        checked = 0
        viol = 0
        nce = 0
        n = len(self.objects)
        for o1 in range(n):
            for o2 in range(n):
                if self.counts[o1, o2] == 0:
                    continue
                for o3 in range(n):
                    if self.counts[o2, o3] == 0:
                        continue
                    c123 = self.blocks[(o1, o2, o3)]
                    for o4 in range(n):
                        m34 = int(self.counts[o3, o4])
                        if m34 == 0:
                            continue
                        c134 = self.blocks.get((o1, o3, o4))
                        c234 = self.blocks[(o2, o3, o4)]
                        c124 = self.blocks.get((o1, o2, o4))
                        if c134 is None or c124 is None:
                            continue
                        lhs = c134[c123][:, :, :]  # (m12, m23, m34)
                        m12 = c123.shape[0]
                        rhs = c124[np.arange(m12)[:, None, None], c234[None, :, :]]
                        checked += lhs.size
                        mism = lhs != rhs
                        bad = int(mism.sum())
                        if bad:
                            viol += bad
                            for a, b, c in np.argwhere(mism):
                                if nce >= max_ce:
                                    break
                                ce[nce] = (o1, o2, o3, o4, a, b, c)
                                nce += 1
        return checked, viol, nce


# ---------------------------------------------------------------------------
# the bridge from nategory instances


def hom_object(instance: NategoryInstance, x, y) -> GObject:
    """Package a nategory's data at one object pair: norphisms as
    questions, morphisms as answers, incompatibility as the relation."""
    noms = tuple(instance.nom(x, y))
    homs = tuple(instance.hom(x, y))
    holds = frozenset((n, f) for n in noms for f in homs if instance.incompat(n, f))
    return GObject(noms, homs, holds)


@dataclass(frozen=True)
class BridgeReport:
    """Validity scan of the candidate composition morphism at one triple.

    ``valid`` is the implication form (the two equivariance laws);
    ``exact`` the equivalence refinement (exactness).
    """

    triple: tuple
    valid: bool
    exact: bool
    checked: int
    valid_counterexamples: tuple[Counterexample, ...]
    exact_counterexamples: tuple[Counterexample, ...]


def composition_morphism(
    instance: NategoryInstance, x, y, z, max_counterexamples: int = 16
) -> tuple[dict, BridgeReport]:
    """Build the candidate composition morphism at a triple and scan its
    validity pointwise.

    The morphism's forward map is composition on answer pairs; its backward
    map sends a norphism ``n`` to the pair of tabulated actions
    ``(g -> n * g, f -> f * n)``.  The source object's question space (a
    function-space product) is never materialized: validity only evaluates
    the backward map at images of actual norphisms.
    """
    homs_xy = tuple(instance.hom(x, y))
    homs_yz = tuple(instance.hom(y, z))
    noms_xz = tuple(instance.nom(x, z))
    forward = {(f, g): instance.compose(f, g) for f in homs_xy for g in homs_yz}
    backward = {
        n: (
            {g: instance.ncompose_right(n, g) for g in homs_yz},
            {f: instance.ncompose_left(f, n) for f in homs_xy},
        )
        for n in noms_xz
    }
    checked = 0
    valid_ces: list[Counterexample] = []
    exact_ces: list[Counterexample] = []
    n_valid = 0
    n_exact = 0
    for n in noms_xz:
        right_tab, left_tab = backward[n]
        for f in homs_xy:
            for g in homs_yz:
                checked += 1
                c_right = instance.incompat(right_tab[g], f)
                c_left = instance.incompat(left_tab[f], g)
                whole = instance.incompat(n, forward[(f, g)])
                if (c_right or c_left) and not whole:
                    n_valid += 1
                    if len(valid_ces) < max_counterexamples:
                        valid_ces.append(
                            Counterexample((x, y, z), (f, g), n, True, whole)
                        )
                if c_right != whole or c_left != whole:
                    n_exact += 1
                    if len(exact_ces) < max_counterexamples:
                        exact_ces.append(
                            Counterexample(
                                (x, y, z), (f, g), n, (c_right, c_left), whole
                            )
                        )
    report = BridgeReport(
        triple=(x, y, z),
        valid=n_valid == 0,
        exact=n_exact == 0,
        checked=checked,
        valid_counterexamples=tuple(valid_ces),
        exact_counterexamples=tuple(exact_ces),
    )
    maps = {"forward": forward, "backward": backward}
    return maps, report


def materialized_composition_morphism(
    instance: NategoryInstance, x, y, z, entry_cap: int = PRODUCT_ENTRY_CAP
) -> GMorphism:
    """The same composition morphism as an explicit ``GMorphism`` whose
    source is the materialized product object.  Only viable for small
    hom/nom sets; used to cross-check the scan against ``is_valid``."""
    src = pair_objects(hom_object(instance, x, y), hom_object(instance, y, z), entry_cap)
    dst = hom_object(instance, x, z)
    homs_xy = tuple(instance.hom(x, y))
    homs_yz = tuple(instance.hom(y, z))
    noms_xy = tuple(instance.nom(x, y))
    noms_yz = tuple(instance.nom(y, z))
    noms_xz = tuple(instance.nom(x, z))
    qindex = {q: i for i, q in enumerate(src.questions)}
    nidx_xy = {n: i for i, n in enumerate(noms_xy)}
    nidx_yz = {n: i for i, n in enumerate(noms_yz)}
    backward = []
    for n in noms_xz:
        phi = tuple(nidx_xy[instance.ncompose_right(n, g)] for g in homs_yz)
        psi = tuple(nidx_yz[instance.ncompose_left(f, n)] for f in homs_xy)
        backward.append(qindex[(phi, psi)])
    hidx_xz = {h: i for i, h in enumerate(dst.answers)}
    fwd = tuple(
        hidx_xz[instance.compose(f, g)] for f in homs_xy for g in homs_yz
    )
    return GMorphism(src, dst, tuple(backward), fwd)
