"""Co-design feasibility engine over finite posets.

A design problem (DP) between posets records which functionality levels are
achievable from which resource levels; it is a monotone boolean relation
(lower the functionality or raise the resources and feasibility survives).
A nesign problem (NP) is the negative counterpart: a monotone infeasibility
relation (raise the functionality or lower the resources and infeasibility
survives).  DPs compose like boolean profunctors; an NP composes with a DP
on either side to yield a new NP.  The no-free-lunch NP encodes that a
process can never output strictly more of a resource than it consumed, and
pushing it through any DP yields impossibility results in the reverse
direction.

Matrix conventions: a DP ``d: P -> Q`` stores ``d.m[i, j] = d(p_i, q_j)``
with ``p`` the functionality and ``q`` the resource; an NP ``n: F ~> R``
stores ``n.m[i, j] = n(f_i, r_j)`` meaning "f_i cannot be produced from
r_j".  All matrices are dense ``bool`` arrays, validated for monotonicity
at construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

import numpy as np

from .core import NategoryInstance, Nor, SignatureError

__all__ = [
    "FinitePoset",
    "DesignProblem",
    "NesignProblem",
    "dp_compose",
    "dp_identity",
    "incompat_dp",
    "np_compose_right",
    "np_compose_left",
    "np_compose_right_witness",
    "no_free_lunch",
    "derived_nps",
    "enumerate_dps",
    "enumerate_nps",
    "CodesignInstance",
    "market_example",
    "parse_codesign",
    "CodesignFormatError",
]


def _bool_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """(a @ b)[i, k] = OR_j a[i, j] AND b[j, k]."""
    if a.size == 0 or b.size == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=bool)
    return (a.astype(np.int64) @ b.astype(np.int64)).astype(bool)


class FinitePoset:
    """Elements plus a reflexive, antisymmetric, transitive order matrix."""

    def __init__(self, name: str, elements: Sequence[Hashable], leq: np.ndarray):
        self.name = name
        self.elements = tuple(elements)
        self._index = {e: i for i, e in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise ValueError(f"poset {name!r} has duplicate elements")
        leq = np.asarray(leq, dtype=bool)
        n = len(self.elements)
        if leq.shape != (n, n):
            raise ValueError(f"poset {name!r}: order matrix shape {leq.shape} != ({n},{n})")
        if not leq.diagonal().all():
            raise ValueError(f"poset {name!r} is not reflexive")
        if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
            raise ValueError(f"poset {name!r} is not antisymmetric")
        if (_bool_matmul(leq, leq) & ~leq).any():
            raise ValueError(f"poset {name!r} is not transitive")
        self.m = leq
        self.m.setflags(write=False)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"FinitePoset({self.name!r}, {len(self)} elements)"

    def index(self, e) -> int:
        return self._index[e]

    def leq(self, a, b) -> bool:
        return bool(self.m[self.index(a), self.index(b)])

    def lt(self, a, b) -> bool:
        return a != b and self.leq(a, b)

    @classmethod
    def chain(cls, name: str, elements: Sequence) -> "FinitePoset":
        """Totally ordered by list position."""
        n = len(elements)
        leq = np.triu(np.ones((n, n), dtype=bool))
        return cls(name, elements, leq)

    @classmethod
    def antichain(cls, name: str, elements: Sequence) -> "FinitePoset":
        n = len(elements)
        return cls(name, elements, np.eye(n, dtype=bool))

    @classmethod
    def from_pairs(
        cls, name: str, elements: Sequence, pairs: Iterable[tuple]
    ) -> "FinitePoset":
        """Reflexive-transitive closure of generator pairs ``a <= b``."""
        n = len(elements)
        index = {e: i for i, e in enumerate(elements)}
        leq = np.eye(n, dtype=bool)
        for a, b in pairs:
            leq[index[a], index[b]] = True
        for _ in range(n):
            closed = _bool_matmul(leq, leq) | leq
            if (closed == leq).all():
                break
            leq = closed
        return cls(name, elements, leq)


def _monotone_dp(src: FinitePoset, dst: FinitePoset, m: np.ndarray) -> bool:
    # d(p, q) and p' <= p and q <= q'  =>  d(p', q')
    closed = _bool_matmul(src.m, _bool_matmul(m, dst.m))
    return bool((closed == m).all())


def _monotone_np(src: FinitePoset, dst: FinitePoset, m: np.ndarray) -> bool:
    # n(f, r) and f <= f' and r' <= r  =>  n(f', r')
    closed = _bool_matmul(src.m.T, _bool_matmul(m, dst.m.T))
    return bool((closed == m).all())


class _Relation:
    kind = "relation"

    def __init__(self, src: FinitePoset, dst: FinitePoset, m, validate=True):
        self.src = src
        self.dst = dst
        m = np.asarray(m, dtype=bool)
        if m.shape != (len(src), len(dst)):
            raise ValueError(
                f"{self.kind} matrix shape {m.shape} does not match "
                f"({len(src)}, {len(dst)})"
            )
        self.m = m
        self.m.setflags(write=False)
        if validate and not self._monotone():
            raise ValueError(f"{self.kind} relation {src.name}->{dst.name} is not monotone")

    def _monotone(self) -> bool:
        raise NotImplementedError

    def __call__(self, a, b) -> bool:
        return bool(self.m[self.src.index(a), self.dst.index(b)])

    def __eq__(self, other):
        if self is other:
            return True
        return (
            type(self) is type(other)
            and self.src is other.src
            and self.dst is other.dst
            and (self.m == other.m).all()
        )

    def __hash__(self):
        h = getattr(self, "_hash", None)
        if h is None:
            h = hash((type(self).__name__, self.src.name, self.dst.name, self.m.tobytes()))
            self._hash = h
        return h

    def __repr__(self):
        return f"{type(self).__name__}({self.src.name}->{self.dst.name}, {int(self.m.sum())} true)"


class DesignProblem(_Relation):
    """Monotone feasibility relation: ``d(p, q)`` means functionality ``p``
    is achievable from resource ``q``."""

    kind = "design problem"

    def _monotone(self):
        return _monotone_dp(self.src, self.dst, self.m)


class NesignProblem(_Relation):
    """Monotone infeasibility relation: ``n(f, r)`` means functionality
    ``f`` cannot be produced from resource ``r``."""

    kind = "nesign problem"

    def _monotone(self):
        return _monotone_np(self.src, self.dst, self.m)


def _require_same(a: FinitePoset, b: FinitePoset, what: str):
    if a is not b and (a.name != b.name or a.elements != b.elements):
        raise SignatureError(f"{what}: poset mismatch ({a.name} vs {b.name})")


def dp_compose(d: DesignProblem, e: DesignProblem) -> DesignProblem:
    """(d . e)(p, r) = OR_q d(p, q) AND e(q, r)."""
    _require_same(d.dst, e.src, "dp_compose")
    return DesignProblem(d.src, e.dst, _bool_matmul(d.m, e.m))


def dp_identity(p: FinitePoset) -> DesignProblem:
    """id(p1, p2) = p1 <= p2."""
    return DesignProblem(p, p, p.m.copy())


def incompat_dp(n: NesignProblem, d: DesignProblem) -> bool:
    """True iff some pair is declared both feasible and infeasible."""
    _require_same(n.src, d.src, "incompat_dp")
    _require_same(n.dst, d.dst, "incompat_dp")
    return bool((n.m & d.m).any())


def np_compose_right(n: NesignProblem, d: DesignProblem) -> NesignProblem:
    """Right action: ``n: P ~> Q`` with ``d: R -> Q`` gives
    ``(n * d)(p, r) = OR_q n(p, q) AND d(r, q)``."""
    _require_same(n.dst, d.dst, "np_compose_right")
    return NesignProblem(n.src, d.src, _bool_matmul(n.m, d.m.T))


def np_compose_left(d: DesignProblem, n: NesignProblem) -> NesignProblem:
    """Left action: ``d: Q -> P`` with ``n: Q ~> R`` gives
    ``(d * n)(p, r) = OR_q d(q, p) AND n(q, r)``."""
    _require_same(d.src, n.src, "np_compose_left")
    return NesignProblem(d.dst, n.dst, _bool_matmul(d.m.T, n.m))


def np_compose_right_witness(n: NesignProblem, d: DesignProblem, p, r):
    """A middle element ``q`` witnessing ``(n * d)(p, r)``, or None."""
    _require_same(n.dst, d.dst, "np_compose_right_witness")
    i = n.src.index(p)
    j = d.src.index(r)
    hits = n.m[i, :] & d.m[j, :]
    for k, hit in enumerate(hits):
        if hit:
            return n.dst.elements[k]
    return None


def no_free_lunch(p: FinitePoset) -> NesignProblem:
    """The NP asserting one can never produce strictly more than one has:
    ``n(q, p) = p < q``."""
    strict = p.m & ~np.eye(len(p), dtype=bool)
    return NesignProblem(p, p, strict.T.copy())


def derived_nps(d: DesignProblem) -> tuple[NesignProblem, NesignProblem]:
    """The two reverse-direction NPs induced by a DP via no-free-lunch:
    ``no_free_lunch(R) * d`` and ``d * no_free_lunch(F)``."""
    n_r = no_free_lunch(d.dst)
    n_f = no_free_lunch(d.src)
    return np_compose_right(n_r, d), np_compose_left(d, n_f)


# ---------------------------------------------------------------------------
# exhaustive enumeration (small posets only) and the nategory instance


def _enumerate_monotone(src: FinitePoset, dst: FinitePoset, predicate) -> tuple:
    rows, cols = len(src), len(dst)
    cells = rows * cols
    out = []
    for bits in range(1 << cells):
        m = np.array(
            [[(bits >> (i * cols + j)) & 1 for j in range(cols)] for i in range(rows)],
            dtype=bool,
        )
        if predicate(src, dst, m):
            out.append(m)
    return tuple(out)


def enumerate_dps(src: FinitePoset, dst: FinitePoset) -> tuple[DesignProblem, ...]:
    """All design problems between two small posets (exhaustive)."""
    if len(src) * len(dst) > 16:
        raise ValueError("poset pair too large for exhaustive DP enumeration")
    return tuple(
        DesignProblem(src, dst, m, validate=False)
        for m in _enumerate_monotone(src, dst, _monotone_dp)
    )


def enumerate_nps(src: FinitePoset, dst: FinitePoset) -> tuple[NesignProblem, ...]:
    """All nesign problems between two small posets (exhaustive)."""
    if len(src) * len(dst) > 16:
        raise ValueError("poset pair too large for exhaustive NP enumeration")
    return tuple(
        NesignProblem(src, dst, m, validate=False)
        for m in _enumerate_monotone(src, dst, _monotone_np)
    )


class CodesignInstance(NategoryInstance):
    """The co-design nategory over a fixed family of small posets.

    Objects are poset names; hom-sets are *all* DPs between the posets and
    nom-sets all NPs, both enumerated exhaustively, so the law checkers run
    to completion.
    """

    def __init__(self, posets: Sequence[FinitePoset], name: str = "codesign"):
        self.name = name
        self._posets = {p.name: p for p in posets}
        if len(self._posets) != len(posets):
            raise ValueError("duplicate poset names")
        self._hom_cache: dict[tuple, tuple] = {}
        self._nom_cache: dict[tuple, tuple] = {}
        # law checkers revisit the same operand pairs many times; results are
        # interned to the enumerated canonical objects so cache lookups and
        # equality tests short-circuit on identity
        self._compose_cache: dict[tuple, DesignProblem] = {}
        self._left_cache: dict[tuple, Nor] = {}
        self._right_cache: dict[tuple, Nor] = {}
        self._incompat_cache: dict[tuple, bool] = {}
        self._canon_dp: dict[tuple, DesignProblem] = {}
        self._canon_nor: dict[tuple, Nor] = {}
        self._identity_cache: dict[str, DesignProblem] = {}

    def poset(self, name) -> FinitePoset:
        return self._posets[name]

    def objects(self):
        return tuple(self._posets)

    def hom(self, x, y):
        key = (x, y)
        if key not in self._hom_cache:
            dps = enumerate_dps(self._posets[x], self._posets[y])
            for d in dps:
                self._canon_dp[(x, y, d.m.tobytes())] = d
            self._hom_cache[key] = dps
        return self._hom_cache[key]

    def nom(self, x, y):
        key = (x, y)
        if key not in self._nom_cache:
            nors = tuple(
                Nor(n, x, y) for n in enumerate_nps(self._posets[x], self._posets[y])
            )
            for nor in nors:
                self._canon_nor[(x, y, nor.value.m.tobytes())] = nor
            self._nom_cache[key] = nors
        return self._nom_cache[key]

    def _intern_dp(self, d: DesignProblem) -> DesignProblem:
        x, y = d.src.name, d.dst.name
        self.hom(x, y)
        return self._canon_dp[(x, y, d.m.tobytes())]

    def _intern_nor(self, rel: NesignProblem) -> Nor:
        x, y = rel.src.name, rel.dst.name
        self.nom(x, y)
        return self._canon_nor[(x, y, rel.m.tobytes())]

    def identity(self, x):
        out = self._identity_cache.get(x)
        if out is None:
            out = self._intern_dp(dp_identity(self._posets[x]))
            self._identity_cache[x] = out
        return out

    def compose(self, f, g):
        self._require_composable(f, g)
        key = (f, g)
        out = self._compose_cache.get(key)
        if out is None:
            out = self._intern_dp(dp_compose(f, g))
            self._compose_cache[key] = out
        return out

    def incompat(self, n, f):
        self._require_parallel(n, f)
        key = (n, f)
        out = self._incompat_cache.get(key)
        if out is None:
            out = incompat_dp(n.value, f)
            self._incompat_cache[key] = out
        return out

    def ncompose_left(self, f, n):
        self._require_left(f, n)
        key = (f, n)
        out = self._left_cache.get(key)
        if out is None:
            out = self._intern_nor(np_compose_left(f, n.value))
            self._left_cache[key] = out
        return out

    def ncompose_right(self, n, g):
        self._require_right(n, g)
        key = (n, g)
        out = self._right_cache.get(key)
        if out is None:
            out = self._intern_nor(np_compose_right(n.value, g))
            self._right_cache[key] = out
        return out

    def mor_ends(self, f):
        return (f.src.name, f.dst.name)


# ---------------------------------------------------------------------------
# worked market example (pears, raisins, CHF), truncated to finite grids


def market_example(
    max_pears: int = 20, max_raisins: int = 20, max_chf: int = 60
) -> dict:
    """Finite-grid market scenario.

    ``d``: raisins can be bought at 10 CHF/kg or more.  ``n``: pears can
    never be bought below 5 CHF/kg.  Composing ``n * d`` produces the NP
    saying how many kilos of pears cannot be obtained from a given amount
    of raisins.
    """
    pears = FinitePoset.chain("pears_kg", tuple(range(max_pears + 1)))
    raisins = FinitePoset.chain("raisins_kg", tuple(range(max_raisins + 1)))
    chf = FinitePoset.chain("chf", tuple(range(max_chf + 1)))

    d_m = np.array(
        [[10 * r <= q for q in chf.elements] for r in raisins.elements], dtype=bool
    )
    d = DesignProblem(raisins, chf, d_m)

    n_m = np.array(
        [[5 * p > q for q in chf.elements] for p in pears.elements], dtype=bool
    )
    n = NesignProblem(pears, chf, n_m)

    return {
        "pears": pears,
        "raisins": raisins,
        "chf": chf,
        "d": d,
        "n": n,
        "n_after_d": np_compose_right(n, d),
    }


# ---------------------------------------------------------------------------
# plain-text descriptions


class CodesignFormatError(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def parse_codesign(text: str) -> dict:
    """Parse poset/DP/NP descriptions.

    Blocks start with ``poset NAME``, ``dp NAME SRC DST`` or
    ``np NAME SRC DST``; poset bodies hold ``element E`` and ``le A B``
    lines, relation bodies hold ``pair A B`` lines.  Returns a dict with
    ``posets``, ``dps`` and ``nps`` maps.
    """
    posets: dict[str, FinitePoset] = {}
    dps: dict[str, DesignProblem] = {}
    nps: dict[str, NesignProblem] = {}
    block = None  # ("poset", name, elements, pairs) | ("dp"/"np", name, src, dst, pairs)

    def close(line_no):
        nonlocal block
        if block is None:
            return
        if block[0] == "poset":
            _, name, elements, pairs = block
            if not elements:
                raise CodesignFormatError(line_no, f"poset {name!r} has no elements")
            try:
                posets[name] = FinitePoset.from_pairs(name, elements, pairs)
            except (ValueError, KeyError) as exc:
                raise CodesignFormatError(line_no, f"invalid poset {name!r}: {exc}") from exc
        else:
            kind, name, src, dst, pairs = block
            for pname in (src, dst):
                if pname not in posets:
                    raise CodesignFormatError(line_no, f"unknown poset {pname!r}")
            sp, dp_ = posets[src], posets[dst]
            m = np.zeros((len(sp), len(dp_)), dtype=bool)
            for a, b in pairs:
                try:
                    m[sp.index(a), dp_.index(b)] = True
                except KeyError as exc:
                    raise CodesignFormatError(line_no, f"unknown element in pair: {exc}") from exc
            cls = DesignProblem if kind == "dp" else NesignProblem
            try:
                target = dps if kind == "dp" else nps
                target[name] = cls(sp, dp_, m)
            except ValueError as exc:
                raise CodesignFormatError(line_no, str(exc)) from exc
        block = None

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        head = words[0]
        if head == "poset":
            close(line_no)
            if len(words) != 2:
                raise CodesignFormatError(line_no, "expected: poset NAME")
            block = ("poset", words[1], [], [])
        elif head in ("dp", "np"):
            close(line_no)
            if len(words) != 4:
                raise CodesignFormatError(line_no, f"expected: {head} NAME SRC DST")
            block = (head, words[1], words[2], words[3], [])
        elif head == "element":
            if block is None or block[0] != "poset":
                raise CodesignFormatError(line_no, "element outside a poset block")
            block[2].extend(words[1:])
        elif head == "le":
            if block is None or block[0] != "poset" or len(words) != 3:
                raise CodesignFormatError(line_no, "expected: le A B inside a poset block")
            block[3].append((words[1], words[2]))
        elif head == "pair":
            if block is None or block[0] == "poset" or len(words) != 3:
                raise CodesignFormatError(line_no, "expected: pair A B inside a dp/np block")
            block[4].append((words[1], words[2]))
        else:
            raise CodesignFormatError(line_no, f"unrecognized line {raw!r}")
    close(len(text.splitlines()) + 1)
    return {"posets": posets, "dps": dps, "nps": nps}
