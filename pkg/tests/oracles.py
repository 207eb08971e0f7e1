"""Independent brute-force oracles used to freeze expected test values.

Everything here is deliberately naive (dense textbook elimination, exhaustive
enumeration, plain DFS) and shares no code with the library paths it checks.
"""

from fractions import Fraction
from itertools import combinations, product


def dense_rank(rows):
    """Textbook dense Gaussian elimination, first nonzero pivot, no heuristics."""
    m = [[Fraction(v) for v in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(m)):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pv = m[rank][col]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col] / pv
                for c in range(ncols):
                    m[r][c] -= f * m[rank][c]
        rank += 1
    return rank


def subset_rank(rows):
    """Rank as the largest linearly independent subset of rows (exhaustive)."""
    best = 0
    indices = range(len(rows))
    for k in range(len(rows), 0, -1):
        for chosen in combinations(indices, k):
            if dense_rank([rows[i] for i in chosen]) == k:
                return k
    return best


def small_integer_kernel(rows, ncols, bound=2):
    """All kernel vectors with coordinates in [-bound, bound], zero excluded."""
    found = []
    for vec in product(range(-bound, bound + 1), repeat=ncols):
        if all(v == 0 for v in vec):
            continue
        if all(sum(Fraction(row[j]) * vec[j] for j in range(ncols)) == 0 for row in rows):
            found.append(vec)
    return found


def dense_homology(boundaries_dense):
    """Homology dims from dense boundary matrices [d_0, ..., d_top].

    d_0 must be a 0-row matrix represented as (0, ncols); every other entry
    is a dense list of rows.
    """
    dims = []
    ranks = []
    ncols_list = []
    for item in boundaries_dense:
        if isinstance(item, tuple):  # (0, ncols) zero-row stub
            ranks.append(0)
            ncols_list.append(item[1])
        else:
            ranks.append(dense_rank(item))
            ncols_list.append(len(item[0]) if item else 0)
    for q in range(len(boundaries_dense)):
        above = ranks[q + 1] if q + 1 < len(boundaries_dense) else 0
        dims.append(ncols_list[q] - ranks[q] - above)
    return dims


def is_tree_dfs(vertex_list, geometric_edges):
    """Tree test by DFS cycle detection plus connectivity.

    ``geometric_edges`` is a list of (u, v) endpoint pairs; loops and
    parallel edges are cycles.  The empty graph is not a tree.
    """
    if not vertex_list:
        return False
    adjacency = {v: [] for v in vertex_list}
    for idx, (u, v) in enumerate(geometric_edges):
        if u == v:
            return False  # a loop is a cycle
        adjacency[u].append((v, idx))
        adjacency[v].append((u, idx))
    seen = {vertex_list[0]}
    stack = [(vertex_list[0], None)]
    while stack:
        node, via = stack.pop()
        for neighbor, idx in adjacency[node]:
            if idx == via:
                continue
            if neighbor in seen:
                return False  # back edge closes a cycle
            seen.add(neighbor)
            stack.append((neighbor, idx))
    return len(seen) == len(vertex_list)


def components_count(vertex_list, geometric_edges):
    parent = {v: v for v in vertex_list}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in geometric_edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    return len({find(v) for v in vertex_list})
