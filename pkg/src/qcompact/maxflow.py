"""Maximum flow on small dense bipartite transport networks.

Capacities are floats (probability masses), so we roll our own Dinic solver
instead of reaching for integer-capacity library routines: quantizing masses
to integers would cost more accuracy than the certificates tolerate, and the
graphs here are tiny (a few hundred nodes).
"""

from __future__ import annotations

import numpy as np

#: residual capacities at or below this are treated as saturated
_RESIDUAL_EPS = 1e-15


def transport_flow(p_mass, q_mass, allowed):
    """Maximum mass shippable from P-atoms to Q-atoms along allowed pairs.

    p_mass, q_mass: 1-d arrays of source/sink capacities.
    allowed: boolean matrix, True where the pair (i, j) may carry flow.

    Returns ``(flow, value, reach_p)`` where ``flow`` is the (|P|, |Q|) flow
    matrix, ``value`` the total flow, and ``reach_p`` the boolean mask of
    P-atoms on the source side of a minimum cut (reachable in the final
    residual graph).
    """
    p_mass = np.asarray(p_mass, dtype=float)
    q_mass = np.asarray(q_mass, dtype=float)
    p, q = p_mass.size, q_mass.size
    n = p + q + 2
    src, snk = 0, n - 1

    to: list[int] = []
    cap: list[float] = []
    adj: list[list[int]] = [[] for _ in range(n)]

    def add(u, v, c):
        adj[u].append(len(to))
        to.append(v)
        cap.append(c)
        adj[v].append(len(to))
        to.append(u)
        cap.append(0.0)

    for i in range(p):
        add(src, 1 + i, float(p_mass[i]))
    for j in range(q):
        add(1 + p + j, snk, float(q_mass[j]))
    ii, jj = np.nonzero(allowed)
    mid_edges = []
    for i, j in zip(ii.tolist(), jj.tolist()):
        mid_edges.append((i, j, len(to)))
        add(1 + i, 1 + p + j, 2.0)  # anything > total mass acts as infinity

    total = 0.0
    inf = float("inf")
    while True:
        level = [-1] * n
        level[src] = 0
        queue = [src]
        for u in queue:
            for e in adj[u]:
                v = to[e]
                if cap[e] > _RESIDUAL_EPS and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        if level[snk] < 0:
            break
        it = [0] * n

        def dfs(u, f):
            if u == snk:
                return f
            while it[u] < len(adj[u]):
                e = adj[u][it[u]]
                v = to[e]
                if cap[e] > _RESIDUAL_EPS and level[v] == level[u] + 1:
                    pushed = dfs(v, min(f, cap[e]))
                    if pushed > 0.0:
                        cap[e] -= pushed
                        cap[e ^ 1] += pushed
                        return pushed
                it[u] += 1
            level[u] = -1
            return 0.0

        while True:
            pushed = dfs(src, inf)
            if pushed <= 0.0:
                break
            total += pushed

    flow = np.zeros((p, q))
    for i, j, e in mid_edges:
        flow[i, j] = cap[e ^ 1]

    seen = [False] * n
    seen[src] = True
    queue = [src]
    for u in queue:
        for e in adj[u]:
            v = to[e]
            if cap[e] > _RESIDUAL_EPS and not seen[v]:
                seen[v] = True
                queue.append(v)
    reach_p = np.array([seen[1 + i] for i in range(p)], dtype=bool)
    return flow, total, reach_p
