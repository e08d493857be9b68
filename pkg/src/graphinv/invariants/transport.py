"""Exact 1-Wasserstein distance between small discrete measures.

Solved with a transportation simplex (northwest-corner start, MODI
pivoting) specialized for the tiny dense instances that arise from
neighbourhood measures; the optimum is a basic solution, exact up to
float rounding on the mass updates. Dantzig pivoting is used first and
Bland's rule takes over if an instance ever threatens to cycle.
"""

from __future__ import annotations

from collections import deque

import numpy as np

_EPS = 1e-11


class TransportError(RuntimeError):
    """Transport solver failed to terminate (should not happen on balanced
    inputs)."""


def _northwest_corner(mu: np.ndarray, nu: np.ndarray):
    m, n = len(mu), len(nu)
    a = mu.astype(np.float64).copy()
    b = nu.astype(np.float64).copy()
    basis: list[tuple[int, int]] = []
    flow: dict[tuple[int, int], float] = {}
    i = j = 0
    while True:
        basis.append((i, j))
        f = min(a[i], b[j])
        flow[(i, j)] = f
        a[i] -= f
        b[j] -= f
        if i == m - 1 and j == n - 1:
            break
        if j == n - 1 or (a[i] <= b[j] and i < m - 1):
            i += 1
        else:
            j += 1
    return basis, flow


def _duals(basis, cost, m, n):
    adj: dict[int, list[tuple[int, tuple[int, int]]]] = {k: [] for k in range(m + n)}
    for i, j in basis:
        adj[i].append((m + j, (i, j)))
        adj[m + j].append((i, (i, j)))
    u = np.full(m, np.nan)
    v = np.full(n, np.nan)
    u[0] = 0.0
    queue = deque([0])
    seen = {0}
    while queue:
        node = queue.popleft()
        for nxt, (i, j) in adj[node]:
            if nxt in seen:
                continue
            seen.add(nxt)
            if nxt >= m:
                v[nxt - m] = cost[i, j] - u[i]
            else:
                u[nxt] = cost[i, j] - v[j]
            queue.append(nxt)
    return u, v


def _cycle(basis, entering, m):
    """Unique cycle created by the entering cell: path between its row and
    column nodes through the basis tree, plus the entering cell."""
    i0, j0 = entering
    adj: dict[int, list[tuple[int, tuple[int, int]]]] = {}
    for i, j in basis:
        adj.setdefault(i, []).append((m + j, (i, j)))
        adj.setdefault(m + j, []).append((i, (i, j)))
    start, goal = i0, m + j0
    parent: dict[int, tuple[int, tuple[int, int]]] = {start: (start, entering)}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        if node == goal:
            break
        for nxt, cell in adj.get(node, ()):
            if nxt not in parent:
                parent[nxt] = (node, cell)
                queue.append(nxt)
    path_cells = []
    node = goal
    while node != start:
        node, cell = parent[node]
        path_cells.append(cell)
    return [entering] + path_cells  # alternating +, -, +, ... from entering


def wasserstein_1(mu: np.ndarray, nu: np.ndarray, cost: np.ndarray) -> float:
    """Optimal transport cost between distributions `mu` (m,) and `nu` (n,)
    under the `cost` matrix (m, n). Both distributions must sum to 1."""
    mu = np.asarray(mu, dtype=np.float64)
    nu = np.asarray(nu, dtype=np.float64)
    cost = np.asarray(cost, dtype=np.float64)
    m, n = cost.shape
    if mu.shape != (m,) or nu.shape != (n,):
        raise ValueError("distribution lengths do not match the cost matrix")
    if m == 1:
        return float(cost[0] @ nu)
    if n == 1:
        return float(mu @ cost[:, 0])

    basis, flow = _northwest_corner(mu, nu)
    basis_set = set(basis)
    max_iter = 200 * (m + n)
    bland_after = max_iter // 2
    for iteration in range(max_iter):
        u, v = _duals(basis, cost, m, n)
        reduced = cost - u[:, None] - v[None, :]
        for i, j in basis:
            reduced[i, j] = 0.0
        if iteration < bland_after:
            flat = int(np.argmin(reduced))
            entering = (flat // n, flat % n)
            if reduced[entering] >= -_EPS:
                break
        else:  # Bland: first negative cell in row-major order
            candidates = np.argwhere(reduced < -_EPS)
            if candidates.size == 0:
                break
            entering = (int(candidates[0][0]), int(candidates[0][1]))

        cells = _cycle(basis, entering, m)
        minus = cells[1::2]
        theta = min(flow[c] for c in minus)
        leaving = next(c for c in minus if flow[c] == theta)
        for k, c in enumerate(cells):
            if k % 2 == 0:
                flow[c] = flow.get(c, 0.0) + theta
            else:
                flow[c] -= theta
        basis_set.discard(leaving)
        basis_set.add(entering)
        basis = list(basis_set)
        flow.pop(leaving, None)
        flow.setdefault(entering, 0.0)
    else:
        raise TransportError(f"transportation simplex did not terminate ({m}x{n})")

    return float(sum(cost[c] * f for c, f in flow.items()))
