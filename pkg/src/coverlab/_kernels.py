"""Compiled inner loops for the frontier graphs.

Graphs are passed as parallel edge arrays ``src``, ``dst``, ``wt`` over
vertices ``0 .. nv-1``.  Weights are small non-negative integers.
"""

import numpy as np
from numba import njit

INF = np.int64(1) << np.int64(60)


@njit(cache=True)
def reduced_reachable(s, smask):
    """States of the coverage graph reachable from the all-covered state.

    A state is a bitmask over positions 1..s (bit i-1 for position i)
    recording which of the next s positions are already covered.  Returns
    ``(codes, src, dst, wt)`` with vertices numbered in discovery order.
    """
    size = np.int64(1) << np.int64(s)
    index = np.full(size, -1, np.int32)
    full = size - 1
    codes = np.empty(16, np.int64)
    src = np.empty(32, np.int32)
    dst = np.empty(32, np.int32)
    wt = np.empty(32, np.int8)
    nv = 0
    ne = 0
    index[full] = 0
    codes[0] = full
    nv = 1
    head = 0
    while head < nv:
        b = codes[head]
        u = head
        head += 1
        for option in range(2):
            if option == 0:
                if b & 1 == 0:
                    continue
                nxt = b >> 1
                w = 0
            else:
                nxt = (b >> 1) | smask
                w = 1
            if index[nxt] < 0:
                if nv == codes.size:
                    grown = np.empty(codes.size * 2, np.int64)
                    grown[:nv] = codes[:nv]
                    codes = grown
                index[nxt] = nv
                codes[nv] = nxt
                nv += 1
            if ne == src.size:
                g1 = np.empty(src.size * 2, np.int32)
                g2 = np.empty(src.size * 2, np.int32)
                g3 = np.empty(src.size * 2, np.int8)
                g1[:ne] = src[:ne]
                g2[:ne] = dst[:ne]
                g3[:ne] = wt[:ne]
                src, dst, wt = g1, g2, g3
            src[ne] = u
            dst[ne] = index[nxt]
            wt[ne] = w
            ne += 1
    return codes[:nv].copy(), src[:ne].copy(), dst[:ne].copy(), wt[:ne].copy()


@njit(cache=True)
def _relax(D, N, src, dst, wt):
    N[:] = INF
    for e in range(src.size):
        d = D[src[e]]
        if d < INF:
            c = d + wt[e]
            if c < N[dst[e]]:
                N[dst[e]] = c


@njit(cache=True)
def karp_min_mean(nv, src, dst, wt):
    """Minimum cycle mean as ``(num, den)`` by Karp's recurrence.

    D_k(v) is the least weight of a k-edge walk ending at v, starting
    anywhere (a virtual source with zero-weight edges to every vertex).
    The mean is min over v of max over k of (D_n(v) - D_k(v)) / (n - k).
    Two passes keep memory at O(nv): the first finds D_n, the second
    replays D_0 .. D_{n-1}.
    """
    D = np.zeros(nv, np.int64)
    N = np.empty(nv, np.int64)
    for _ in range(nv):
        _relax(D, N, src, dst, wt)
        D, N = N, D
    DN = D.copy()

    best_num = np.full(nv, -1, np.int64)
    best_den = np.ones(nv, np.int64)
    D = np.zeros(nv, np.int64)
    for k in range(nv):
        den = nv - k
        for v in range(nv):
            if DN[v] < INF and D[v] < INF:
                num = DN[v] - D[v]
                if best_num[v] < 0 or num * best_den[v] > best_num[v] * den:
                    best_num[v] = num
                    best_den[v] = den
        _relax(D, N, src, dst, wt)
        D, N = N, D

    num = np.int64(-1)
    den = np.int64(1)
    for v in range(nv):
        if DN[v] < INF and best_num[v] >= 0:
            if num < 0 or best_num[v] * den < num * best_den[v]:
                num = best_num[v]
                den = best_den[v]
    return num, den


@njit(cache=True)
def potentials(nv, src, dst, wt, p, q):
    """Shortest distances from a virtual source under weights q*w - p.

    Returns ``(dist, ok)``; ``ok`` is False if the weights admit a negative
    cycle, i.e. the minimum cycle mean is below p/q.
    """
    dist = np.zeros(nv, np.int64)
    for _ in range(nv + 1):
        changed = False
        for e in range(src.size):
            c = dist[src[e]] + q * wt[e] - p
            if c < dist[dst[e]]:
                dist[dst[e]] = c
                changed = True
        if not changed:
            return dist, True
    return dist, False


@njit(cache=True)
def _bfs_cycle(root, start, adj, adj_edge, dst, limit, stamp, tag, depth, parent):
    """Length of the shortest cycle through ``root`` (0 if none below ``limit``).

    ``parent`` receives the edge used to reach each vertex; the closing
    edge into ``root`` is returned as the second value.
    """
    queue = np.empty(stamp.size, np.int32)
    head = 0
    tail = 0
    queue[tail] = root
    tail += 1
    stamp[root] = tag
    depth[root] = 0
    while head < tail:
        u = queue[head]
        head += 1
        du = depth[u]
        if du + 1 >= limit:
            break
        for j in range(start[u], start[u + 1]):
            v = adj[j]
            if v == root:
                return du + 1, adj_edge[j]
            if stamp[v] != tag:
                stamp[v] = tag
                depth[v] = du + 1
                parent[v] = adj_edge[j]
                queue[tail] = v
                tail += 1
    return 0, -1


@njit(cache=True)
def tight_girth(nv, src, dst, wt, dist, p, q):
    """Shortest cycle using only edges of zero reduced cost.

    Returns ``(length, edges)`` where ``edges`` lists edge ids around the
    cycle starting from its smallest-index root; length 0 if none exists.
    """
    tight = np.zeros(src.size, np.bool_)
    indeg = np.zeros(nv, np.int32)
    outdeg = np.zeros(nv, np.int32)
    for e in range(src.size):
        if dist[src[e]] + q * wt[e] - p == dist[dst[e]]:
            tight[e] = True
            outdeg[src[e]] += 1
            indeg[dst[e]] += 1
    start = np.zeros(nv + 1, np.int32)
    for v in range(nv):
        start[v + 1] = start[v] + outdeg[v]
    fill = start[:-1].copy()
    adj = np.empty(start[nv], np.int32)
    adj_edge = np.empty(start[nv], np.int32)
    for e in range(src.size):
        if tight[e]:
            u = src[e]
            adj[fill[u]] = dst[e]
            adj_edge[fill[u]] = e
            fill[u] += 1

    stamp = np.full(nv, -1, np.int32)
    depth = np.zeros(nv, np.int32)
    parent = np.full(nv, -1, np.int32)
    best = nv + 1
    best_root = -1
    for r in range(nv):
        if indeg[r] == 0 or outdeg[r] == 0:
            continue
        length, _ = _bfs_cycle(r, start, adj, adj_edge, dst, best, stamp, r, depth, parent)
        if length > 0 and length < best:
            best = length
            best_root = r
            if best == 1:
                break
    if best_root < 0:
        return 0, np.empty(0, np.int32)

    stamp[:] = -1
    length, closing = _bfs_cycle(best_root, start, adj, adj_edge, dst, best + 1, stamp, 0, depth, parent)
    edges = np.empty(length, np.int32)
    edges[length - 1] = closing
    v = src[closing]
    i = length - 2
    while v != best_root:
        e = parent[v]
        edges[i] = e
        v = src[e]
        i -= 1
    return length, edges


@njit(cache=True)
def interval_frontier(s, smask, n):
    """Frontier DP for covering positions 1..L by translates of S.

    Walks positions -s+1 .. n.  The state after position m is the set of
    positions m+1 .. m+s already covered (bit i-1 for m+i); a translate
    may be placed at every position, and from position 1 on a position must
    be covered before it is passed.  Returns ``(taus, placed)``: ``taus[L]``
    is the least number of translates covering 1..L for every L <= n, and
    ``placed`` flags, per step, the translate positions of one optimal
    covering of 1..n (step j is position j - s + 1).
    """
    size = np.int64(1) << np.int64(s)
    cost = np.full(size, np.int32(1 << 30), np.int32)
    steps = n + s
    # history: per step, states reached with their parent state and move
    hist_state = np.empty(0, np.int64)
    hist_parent = np.empty(0, np.int64)
    hist_move = np.empty(0, np.int8)
    hist_start = np.zeros(steps + 1, np.int64)
    used = 0

    active = np.zeros(1, np.int64)
    cost[0] = 0
    taus = np.zeros(n + 1, np.int64)
    nxt_cost = np.full(size, np.int32(1 << 30), np.int32)
    parent = np.zeros(size, np.int64)
    move = np.zeros(size, np.int8)
    for step in range(steps):
        pos = step - s + 1
        nxt = np.empty(2 * active.size, np.int64)
        cnt = 0
        for i in range(active.size):
            b = active[i]
            c = cost[b]
            for option in range(2):
                if option == 0:
                    if pos >= 1 and (b & 1) == 0:
                        continue
                    t = b >> 1
                    w = 0
                else:
                    t = (b >> 1) | smask
                    w = 1
                cc = c + w
                if cc < nxt_cost[t]:
                    if nxt_cost[t] == (1 << 30):
                        nxt[cnt] = t
                        cnt += 1
                    nxt_cost[t] = cc
                    parent[t] = b
                    move[t] = w
        for i in range(active.size):
            cost[active[i]] = 1 << 30
        active = nxt[:cnt].copy()
        if used + cnt > hist_state.size:
            cap = max(2 * hist_state.size, used + cnt)
            g1 = np.empty(cap, np.int64)
            g2 = np.empty(cap, np.int64)
            g3 = np.empty(cap, np.int8)
            g1[:used] = hist_state[:used]
            g2[:used] = hist_parent[:used]
            g3[:used] = hist_move[:used]
            hist_state, hist_parent, hist_move = g1, g2, g3
        best = np.int64(1 << 30)
        for i in range(cnt):
            t = active[i]
            cost[t] = nxt_cost[t]
            nxt_cost[t] = 1 << 30
            hist_state[used + i] = t
            hist_parent[used + i] = parent[t]
            hist_move[used + i] = move[t]
            if cost[t] < best:
                best = cost[t]
        hist_start[step + 1] = used + cnt
        used += cnt
        if pos >= 0:
            taus[pos] = best
    if s == 0:
        taus[0] = 0

    # backtrack from a cheapest final state
    placed = np.zeros(steps, np.bool_)
    best = np.int64(1 << 30)
    state = np.int64(0)
    for i in range(active.size):
        if cost[active[i]] < best:
            best = cost[active[i]]
            state = active[i]
    for step in range(steps - 1, -1, -1):
        lo = hist_start[step]
        hi = hist_start[step + 1]
        for j in range(lo, hi):
            if hist_state[j] == state:
                placed[step] = hist_move[j] == 1
                state = hist_parent[j]
                break
    return taus, placed
