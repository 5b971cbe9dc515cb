"""Hot numeric scans: law checks over path-length arrays and graph search.

Every kernel exists twice: a scalar loop compiled with numba ``@njit`` and
a vectorized numpy twin.  Both walk the same iteration order (middle node,
then norphism sample, then first leg, then second leg), so reports and
counterexample lists are identical across backends.  Dispatch follows the
``NATEGORY_BACKEND`` environment flag unless an explicit ``backend=`` is
given.

Domain codes: 0 nonneg, 1 real, 2 intfloor (see ``domains``).
"""

from __future__ import annotations

import heapq

import numpy as np

from .._backend import njit, resolve_backend

MAX_CE_DEFAULT = 16
_REL_TOL = 1e-9


# ---------------------------------------------------------------------------
# scalar helpers (numba-compatible)


def _comp(domain, n, length):
    v = n - length
    if domain == 0:
        return v if v > 0.0 else 0.0
    if domain == 2:
        return np.floor(v)
    return v


def _vals_eq(domain, a, b):
    if a == b:
        return True
    if domain == 2:
        return False
    if np.isinf(a) or np.isinf(b):
        return False
    m = 1.0
    if abs(a) > m:
        m = abs(a)
    if abs(b) > m:
        m = abs(b)
    return abs(a - b) <= _REL_TOL * m


_comp_jit = njit(cache=True)(_comp)
_vals_eq_jit = njit(cache=True)(_vals_eq)


def _comp_vec(domain, n, arr):
    v = n - arr
    if domain == 0:
        return np.maximum(v, 0.0)
    if domain == 2:
        return np.floor(v)
    return v


def _vals_eq_vec(domain, a, b):
    eq = a == b
    if domain == 2:
        return eq
    finite = np.isfinite(a) & np.isfinite(b)
    m = np.maximum(1.0, np.maximum(np.abs(a), np.abs(b)))
    near = np.abs(a - b) <= _REL_TOL * m
    return eq | (finite & near)


# ---------------------------------------------------------------------------
# equivariance: incompat(f*n, g) => incompat(n, f.g), and dually


def _equiv_loop(n_nodes, lengths, be_ptr, be_ord, bs_ptr, bs_ord, nvals, domain, max_ce, ce):
    checked = 0
    viol = 0
    nce = 0
    for mid in range(n_nodes):
        for t in range(nvals.shape[0]):
            nv = nvals[t]
            for a in range(be_ptr[mid], be_ptr[mid + 1]):
                fi = be_ord[a]
                lf = lengths[fi]
                left = _comp_jit(domain, nv, lf)
                for b in range(bs_ptr[mid], bs_ptr[mid + 1]):
                    gi = bs_ord[b]
                    lg = lengths[gi]
                    checked += 1
                    whole = lf + lg < nv
                    if lg < left and not whole:
                        viol += 1
                        if nce < max_ce:
                            ce[nce, 0] = t
                            ce[nce, 1] = fi
                            ce[nce, 2] = gi
                            ce[nce, 3] = 0
                            nce += 1
                    right = _comp_jit(domain, nv, lg)
                    if lf < right and not whole:
                        viol += 1
                        if nce < max_ce:
                            ce[nce, 0] = t
                            ce[nce, 1] = fi
                            ce[nce, 2] = gi
                            ce[nce, 3] = 1
                            nce += 1
    return checked, viol, nce


_equiv_jit = njit(cache=True)(_equiv_loop)


def _equiv_numpy(n_nodes, lengths, be_ptr, be_ord, bs_ptr, bs_ord, nvals, domain, max_ce, ce):
    checked = 0
    viol = 0
    nce = 0
    for mid in range(n_nodes):
        fidx = be_ord[be_ptr[mid] : be_ptr[mid + 1]]
        gidx = bs_ord[bs_ptr[mid] : bs_ptr[mid + 1]]
        if len(fidx) == 0 or len(gidx) == 0:
            continue
        lf = lengths[fidx]
        lg = lengths[gidx]
        sums = lf[:, None] + lg[None, :]
        for t in range(len(nvals)):
            nv = nvals[t]
            checked += lf.size * lg.size
            whole = sums < nv
            left = _comp_vec(domain, nv, lf)
            right = _comp_vec(domain, nv, lg)
            viol_l = (lg[None, :] < left[:, None]) & ~whole
            viol_r = (lf[:, None] < right[None, :]) & ~whole
            both = np.stack([viol_l, viol_r], axis=-1)
            bad = int(both.sum())
            if bad:
                viol += bad
                if nce < max_ce:
                    for a, b, kind in np.argwhere(both):
                        if nce >= max_ce:
                            break
                        ce[nce, 0] = t
                        ce[nce, 1] = fidx[a]
                        ce[nce, 2] = gidx[b]
                        ce[nce, 3] = kind
                        nce += 1
    return checked, viol, nce


def equivariance_scan(pathset, nvals, domain_code, max_ce=MAX_CE_DEFAULT, backend=None):
    name = resolve_backend(backend)
    ce = np.zeros((max_ce, 4), dtype=np.int64)
    args = (
        pathset.graph.n,
        pathset.lengths,
        pathset.by_end_indptr,
        pathset.by_end_order,
        pathset.by_start_indptr,
        pathset.by_start_order,
        np.asarray(nvals, dtype=np.float64),
        domain_code,
        max_ce,
        ce,
    )
    fn = _equiv_jit if name == "numba" else _equiv_numpy
    checked, viol, nce = fn(*args)
    return {"checked": int(checked), "violations": int(viol), "ce": ce[:nce], "backend": name}


# ---------------------------------------------------------------------------
# exactness: composed bound must equal the exact value n - length


def _exact_loop(lengths, nvals, domain, max_ce, ce):
    checked = 0
    viol = 0
    nce = 0
    for t in range(nvals.shape[0]):
        nv = nvals[t]
        for fi in range(lengths.shape[0]):
            checked += 1
            got = _comp_jit(domain, nv, lengths[fi])
            want = nv - lengths[fi]
            if got != want:
                viol += 1
                if nce < max_ce:
                    ce[nce, 0] = t
                    ce[nce, 1] = fi
                    nce += 1
    return checked, viol, nce


_exact_jit = njit(cache=True)(_exact_loop)


def _exact_numpy(lengths, nvals, domain, max_ce, ce):
    checked = 0
    viol = 0
    nce = 0
    for t in range(len(nvals)):
        nv = nvals[t]
        checked += lengths.size
        got = _comp_vec(domain, nv, lengths)
        want = nv - lengths
        bad = got != want
        nbad = int(bad.sum())
        if nbad:
            viol += nbad
            if nce < max_ce:
                for (fi,) in np.argwhere(bad):
                    if nce >= max_ce:
                        break
                    ce[nce, 0] = t
                    ce[nce, 1] = fi
                    nce += 1
    return checked, viol, nce


def exactness_scan(pathset, nvals, domain_code, max_ce=MAX_CE_DEFAULT, backend=None):
    name = resolve_backend(backend)
    ce = np.zeros((max_ce, 2), dtype=np.int64)
    fn = _exact_jit if name == "numba" else _exact_numpy
    checked, viol, nce = fn(
        pathset.lengths, np.asarray(nvals, dtype=np.float64), domain_code, max_ce, ce
    )
    return {"checked": int(checked), "violations": int(viol), "ce": ce[:nce], "backend": name}


# ---------------------------------------------------------------------------
# action compatibility over composable pairs: covar (law 0) pushes the
# first leg first, contravar (law 1) pushes the second leg first; both are
# compared against pushing the concatenated length at once


def _pair_loop(n_nodes, lengths, be_ptr, be_ord, bs_ptr, bs_ord, nvals, domain, law, max_ce, ce):
    checked = 0
    viol = 0
    nce = 0
    for mid in range(n_nodes):
        for t in range(nvals.shape[0]):
            nv = nvals[t]
            for a in range(be_ptr[mid], be_ptr[mid + 1]):
                ai = be_ord[a]
                la = lengths[ai]
                for b in range(bs_ptr[mid], bs_ptr[mid + 1]):
                    bi = bs_ord[b]
                    lb = lengths[bi]
                    checked += 1
                    lhs = _comp_jit(domain, nv, la + lb)
                    if law == 0:
                        rhs = _comp_jit(domain, _comp_jit(domain, nv, la), lb)
                    else:
                        rhs = _comp_jit(domain, _comp_jit(domain, nv, lb), la)
                    if not _vals_eq_jit(domain, lhs, rhs):
                        viol += 1
                        if nce < max_ce:
                            ce[nce, 0] = t
                            ce[nce, 1] = ai
                            ce[nce, 2] = bi
                            nce += 1
    return checked, viol, nce


_pair_jit = njit(cache=True)(_pair_loop)


def _pair_numpy(n_nodes, lengths, be_ptr, be_ord, bs_ptr, bs_ord, nvals, domain, law, max_ce, ce):
    checked = 0
    viol = 0
    nce = 0
    for mid in range(n_nodes):
        aidx = be_ord[be_ptr[mid] : be_ptr[mid + 1]]
        bidx = bs_ord[bs_ptr[mid] : bs_ptr[mid + 1]]
        if len(aidx) == 0 or len(bidx) == 0:
            continue
        la = lengths[aidx]
        lb = lengths[bidx]
        sums = la[:, None] + lb[None, :]
        for t in range(len(nvals)):
            nv = nvals[t]
            checked += la.size * lb.size
            lhs = _comp_vec(domain, nv, sums)
            if law == 0:
                inner = _comp_vec(domain, nv, la)
                rhs = _comp2_vec(domain, inner[:, None], lb[None, :])
            else:
                inner = _comp_vec(domain, nv, lb)
                rhs = _comp2_vec(domain, inner[None, :], la[:, None])
            bad = ~_vals_eq_vec(domain, lhs, rhs)
            nbad = int(bad.sum())
            if nbad:
                viol += nbad
                if nce < max_ce:
                    for a, b in np.argwhere(bad):
                        if nce >= max_ce:
                            break
                        ce[nce, 0] = t
                        ce[nce, 1] = aidx[a]
                        ce[nce, 2] = bidx[b]
                        nce += 1
    return checked, viol, nce


def _comp2_vec(domain, n_arr, len_arr):
    v = n_arr - len_arr
    if domain == 0:
        return np.maximum(v, 0.0)
    if domain == 2:
        return np.floor(v)
    return v


def action_pair_scan(pathset, nvals, domain_code, law_code, max_ce=MAX_CE_DEFAULT, backend=None):
    name = resolve_backend(backend)
    ce = np.zeros((max_ce, 3), dtype=np.int64)
    fn = _pair_jit if name == "numba" else _pair_numpy
    checked, viol, nce = fn(
        pathset.graph.n,
        pathset.lengths,
        pathset.by_end_indptr,
        pathset.by_end_order,
        pathset.by_start_indptr,
        pathset.by_start_order,
        np.asarray(nvals, dtype=np.float64),
        domain_code,
        law_code,
        max_ce,
        ce,
    )
    return {"checked": int(checked), "violations": int(viol), "ce": ce[:nce], "backend": name}


# ---------------------------------------------------------------------------
# commutation of the two actions; the value only depends on the two path
# lengths, so the scan runs over distinct lengths


def _comm_loop(uvals, nvals, domain, max_ce, ce):
    checked = 0
    viol = 0
    nce = 0
    for t in range(nvals.shape[0]):
        nv = nvals[t]
        for i in range(uvals.shape[0]):
            for j in range(uvals.shape[0]):
                checked += 1
                lhs = _comp_jit(domain, _comp_jit(domain, nv, uvals[j]), uvals[i])
                rhs = _comp_jit(domain, _comp_jit(domain, nv, uvals[i]), uvals[j])
                if not _vals_eq_jit(domain, lhs, rhs):
                    viol += 1
                    if nce < max_ce:
                        ce[nce, 0] = t
                        ce[nce, 1] = i
                        ce[nce, 2] = j
                        nce += 1
    return checked, viol, nce


_comm_jit = njit(cache=True)(_comm_loop)


def _comm_numpy(uvals, nvals, domain, max_ce, ce):
    checked = 0
    viol = 0
    nce = 0
    for t in range(len(nvals)):
        nv = nvals[t]
        checked += uvals.size * uvals.size
        inner = _comp_vec(domain, nv, uvals)
        m = _comp2_vec(domain, inner[None, :], uvals[:, None])
        bad = ~_vals_eq_vec(domain, m, m.T)
        nbad = int(bad.sum())
        if nbad:
            viol += nbad
            if nce < max_ce:
                for i, j in np.argwhere(bad):
                    if nce >= max_ce:
                        break
                    ce[nce, 0] = t
                    ce[nce, 1] = i
                    ce[nce, 2] = j
                    nce += 1
    return checked, viol, nce


def comm_scan(unique_lengths, nvals, domain_code, max_ce=MAX_CE_DEFAULT, backend=None):
    name = resolve_backend(backend)
    ce = np.zeros((max_ce, 3), dtype=np.int64)
    fn = _comm_jit if name == "numba" else _comm_numpy
    checked, viol, nce = fn(
        np.asarray(unique_lengths, dtype=np.float64),
        np.asarray(nvals, dtype=np.float64),
        domain_code,
        max_ce,
        ce,
    )
    return {"checked": int(checked), "violations": int(viol), "ce": ce[:nce], "backend": name}


# ---------------------------------------------------------------------------
# graph search.  Ties pop by smallest node id; among equal-distance
# predecessors the smallest node id wins, so results are backend-independent.


def _dijkstra_loop(indptr, nbr, w, src, n):
    dist = np.full(n, np.inf)
    parent = np.full(n, -1, dtype=np.int64)
    done = np.zeros(n, dtype=np.uint8)
    cap = nbr.shape[0] + n + 2
    hk = np.empty(cap)
    hn = np.empty(cap, dtype=np.int64)
    dist[src] = 0.0
    hk[0] = 0.0
    hn[0] = src
    size = 1
    while size > 0:
        v0 = hn[0]
        size -= 1
        hk[0] = hk[size]
        hn[0] = hn[size]
        i = 0
        while True:
            l = 2 * i + 1
            r = l + 1
            m = i
            if l < size and (hk[l] < hk[m] or (hk[l] == hk[m] and hn[l] < hn[m])):
                m = l
            if r < size and (hk[r] < hk[m] or (hk[r] == hk[m] and hn[r] < hn[m])):
                m = r
            if m == i:
                break
            hk[i], hk[m] = hk[m], hk[i]
            hn[i], hn[m] = hn[m], hn[i]
            i = m
        if done[v0]:
            continue
        done[v0] = 1
        base = dist[v0]
        for e in range(indptr[v0], indptr[v0 + 1]):
            u = nbr[e]
            nd = base + w[e]
            if nd < dist[u]:
                dist[u] = nd
                parent[u] = v0
                hk[size] = nd
                hn[size] = u
                i = size
                size += 1
                while i > 0:
                    p = (i - 1) // 2
                    if hk[i] < hk[p] or (hk[i] == hk[p] and hn[i] < hn[p]):
                        hk[i], hk[p] = hk[p], hk[i]
                        hn[i], hn[p] = hn[p], hn[i]
                        i = p
                    else:
                        break
            elif nd == dist[u] and v0 < parent[u]:
                parent[u] = v0
    return dist, parent


_dijkstra_jit = njit(cache=True)(_dijkstra_loop)


def _dijkstra_py(indptr, nbr, w, src, n):
    dist = np.full(n, np.inf)
    parent = np.full(n, -1, dtype=np.int64)
    done = np.zeros(n, dtype=bool)
    dist[src] = 0.0
    heap = [(0.0, src)]
    while heap:
        _, v0 = heapq.heappop(heap)
        if done[v0]:
            continue
        done[v0] = True
        base = dist[v0]
        for e in range(indptr[v0], indptr[v0 + 1]):
            u = int(nbr[e])
            nd = base + w[e]
            if nd < dist[u]:
                dist[u] = nd
                parent[u] = v0
                heapq.heappush(heap, (nd, u))
            elif nd == dist[u] and v0 < parent[u]:
                parent[u] = v0
    return dist, parent


def dijkstra(indptr, nbr, w, src, n, backend=None):
    name = resolve_backend(backend)
    fn = _dijkstra_jit if name == "numba" else _dijkstra_py
    return fn(indptr, nbr, w, int(src), int(n))


def _astar_loop(indptr, nbr, w, h, src, goal, n):
    g = np.full(n, np.inf)
    parent = np.full(n, -1, dtype=np.int64)
    done = np.zeros(n, dtype=np.uint8)
    cap = nbr.shape[0] + n + 2
    hk = np.empty(cap)
    hn = np.empty(cap, dtype=np.int64)
    if np.isinf(h[src]):
        return g, parent
    g[src] = 0.0
    hk[0] = h[src]
    hn[0] = src
    size = 1
    while size > 0:
        v0 = hn[0]
        size -= 1
        hk[0] = hk[size]
        hn[0] = hn[size]
        i = 0
        while True:
            l = 2 * i + 1
            r = l + 1
            m = i
            if l < size and (hk[l] < hk[m] or (hk[l] == hk[m] and hn[l] < hn[m])):
                m = l
            if r < size and (hk[r] < hk[m] or (hk[r] == hk[m] and hn[r] < hn[m])):
                m = r
            if m == i:
                break
            hk[i], hk[m] = hk[m], hk[i]
            hn[i], hn[m] = hn[m], hn[i]
            i = m
        if done[v0]:
            continue
        done[v0] = 1
        if v0 == goal:
            break
        base = g[v0]
        for e in range(indptr[v0], indptr[v0 + 1]):
            u = nbr[e]
            if np.isinf(h[u]):
                continue
            nd = base + w[e]
            if nd < g[u]:
                g[u] = nd
                parent[u] = v0
                hk[size] = nd + h[u]
                hn[size] = u
                i = size
                size += 1
                while i > 0:
                    p = (i - 1) // 2
                    if hk[i] < hk[p] or (hk[i] == hk[p] and hn[i] < hn[p]):
                        hk[i], hk[p] = hk[p], hk[i]
                        hn[i], hn[p] = hn[p], hn[i]
                        i = p
                    else:
                        break
            elif nd == g[u] and v0 < parent[u]:
                parent[u] = v0
    return g, parent


_astar_jit = njit(cache=True)(_astar_loop)


def _astar_py(indptr, nbr, w, h, src, goal, n):
    g = np.full(n, np.inf)
    parent = np.full(n, -1, dtype=np.int64)
    done = np.zeros(n, dtype=bool)
    if np.isinf(h[src]):
        return g, parent
    g[src] = 0.0
    heap = [(float(h[src]), src)]
    while heap:
        _, v0 = heapq.heappop(heap)
        if done[v0]:
            continue
        done[v0] = True
        if v0 == goal:
            break
        base = g[v0]
        for e in range(indptr[v0], indptr[v0 + 1]):
            u = int(nbr[e])
            if np.isinf(h[u]):
                continue
            nd = base + w[e]
            if nd < g[u]:
                g[u] = nd
                parent[u] = v0
                heapq.heappush(heap, (float(nd + h[u]), u))
            elif nd == g[u] and v0 < parent[u]:
                parent[u] = v0
    return g, parent


def astar(indptr, nbr, w, h, src, goal, n, backend=None):
    name = resolve_backend(backend)
    fn = _astar_jit if name == "numba" else _astar_py
    return fn(indptr, nbr, w, np.asarray(h, dtype=np.float64), int(src), int(goal), int(n))
