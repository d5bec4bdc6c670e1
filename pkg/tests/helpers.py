"""Independent reference checks shared by the test modules."""

import random

import networkx as nx

from degseq_forge.graphcore import Graph

# Filled by the acceptance suite and echoed in the terminal summary.
ACCEPTANCE_LINES: list[str] = []


def to_nx(G: Graph) -> nx.Graph:
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges())
    return H


def full_erdos_gallai(d) -> bool:
    """Textbook test: parity plus every l from 1 to n, no shortcuts."""
    d = sorted(d, reverse=True)
    if any(x < 0 for x in d) or sum(d) % 2:
        return False
    n = len(d)
    for l in range(1, n + 1):
        if sum(d[:l]) > l * (l - 1) + sum(min(l, x) for x in d[l:]):
            return False
    return True


def proper_and_equitable(G: Graph, assignment) -> bool:
    if any(assignment[u] == assignment[v] for u, v in G.edges()):
        return False
    counts = {}
    for c in assignment:
        counts[c] = counts.get(c, 0) + 1
    return True if not counts else max(counts.values()) - min(counts.values()) <= 1


def random_bounded_graph(rng: random.Random, n: int, cap: int, tries: int | None = None) -> Graph:
    """Random edges added while both endpoints stay below degree ``cap``."""
    deg = [0] * n
    edges = set()
    if n < 2:
        return Graph(n)
    for _ in range(tries if tries is not None else 3 * n * cap):
        a, b = rng.sample(range(n), 2)
        e = (min(a, b), max(a, b))
        if e in edges or deg[a] >= cap or deg[b] >= cap:
            continue
        edges.add(e)
        deg[a] += 1
        deg[b] += 1
    return Graph(n, edges)


def random_decomposition(rng: random.Random, max_n: int = 16, max_p: int = 3):
    """Host graph with ``p`` edge-disjoint factors (unions of perfect matchings) and leftover edges."""
    from degseq_forge.exchange import FactorDecomposition

    n = rng.choice(range(4, max_n + 1, 2))
    p = rng.randint(0, max_p)
    used: set = set()
    factors = []
    for _ in range(p):
        k = rng.randint(1, 2)
        fac = set()
        for _ in range(k):
            for _ in range(100):
                perm = rng.sample(range(n), n)
                M = {(min(perm[i], perm[i + 1]), max(perm[i], perm[i + 1])) for i in range(0, n, 2)}
                if not M & (used | fac):
                    fac |= M
                    break
            else:
                fac = set()
                break
        if fac and 2 * len(fac) % n == 0:
            used |= fac
            factors.append(frozenset(fac))
    edges = set(used)
    for _ in range(rng.randint(0, 2 * n)):
        a, b = rng.sample(range(n), 2)
        edges.add((min(a, b), max(a, b)))
    return FactorDecomposition(Graph(n, edges), tuple(factors))


def class_of(D, a, b):
    """Edge class from first principles: factor index, -1 leftover, -2 non-edge."""
    e = (min(a, b), max(a, b))
    for i, f in enumerate(D.factors):
        if e in f:
            return i
    return -1 if D.host.has_edge(a, b) else -2


def random_exchange(D, rng: random.Random, tries: int = 50):
    """Random valid exchange found by randomized depth-first search, or ``None``.

    Internal vertices ``x_0..x_{q-1}`` must carry distinct classes towards
    ``u`` with ``class(v, x_{j+1}) = class(x_j, u)`` cyclically.
    """
    from degseq_forge.exchange import ExchangeList

    n = D.n
    qmax = len(D.factors) + 2
    for _ in range(tries):
        u, v = rng.sample(range(n), 2)
        others = [x for x in range(n) if x not in (u, v)]
        rng.shuffle(others)

        def extend(chain, seen):
            last = chain[-1]
            want = class_of(D, last, u)
            if len(chain) >= 2 and class_of(D, v, chain[0]) == want:
                return chain
            if len(chain) == qmax:
                return None
            cand = [y for y in others if y not in chain and class_of(D, v, y) == want and class_of(D, y, u) not in seen]
            rng.shuffle(cand)
            for y in cand[:3]:
                got = extend(chain + [y], seen | {class_of(D, y, u)})
                if got:
                    return got
            return None

        for x0 in others[:4]:
            chain = extend([x0], {class_of(D, x0, u)})
            if chain:
                return ExchangeList(u, v, tuple(chain))
    return None


def class_degrees(D):
    """Per-vertex degree in every class, including leftover."""
    out = []
    for v in range(D.n):
        row = {}
        for w in D.host.adj[v]:
            c = class_of(D, v, w)
            row[c] = row.get(c, 0) + 1
        out.append(row)
    return out
