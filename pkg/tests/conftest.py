import math
import random
from itertools import combinations

from hypothesis import HealthCheck, settings, strategies as st

from profilekit.graphcore import Graph

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def floyd_warshall(g: Graph):
    """All-pairs distances, INF when unreachable; independent of the BFS code."""
    n = g.n
    d = [[math.inf] * (n + 1) for _ in range(n + 1)]
    for v in range(1, n + 1):
        d[v][v] = 0
    for u, v in g.edges():
        d[u][v] = d[v][u] = 1
    for k in range(1, n + 1):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return d


def profiles_by_matrix(g, a, r):
    d = floyd_warshall(g)
    return [tuple(d[x][v] if d[x][v] <= r else math.inf for x in a) for v in range(1, g.n + 1)]


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(n, [e for e in combinations(range(1, n + 1), 2) if rng.random() < p])


@st.composite
def graphs(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(1, n + 1), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, keep in zip(pairs, chosen) if keep])


@st.composite
def graph_with_target(draw, min_n=1, max_n=9, max_k=4):
    g = draw(graphs(min_n, max_n))
    k = draw(st.integers(1, min(max_k, g.n)))
    a = draw(st.permutations(list(g.vertices())))[:k]
    r = draw(st.integers(0, 4))
    return g, tuple(a), r
