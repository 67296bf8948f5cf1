"""Rooted undirected graphs: validation, distances, family generators.

Vertices are dense 0-based indices; human-readable names (coordinate
tuples, path positions) live in the optional ``labels`` field only, so
search structures stay flat arrays. ``symmetry`` stores root-fixing
automorphism generators used for orbit reduction; generated families
populate it, hand-built graphs leave it empty. ``transitive_maps``, when
present, holds one automorphism per vertex sending the root there, which
lets the global pebbling number reuse a single rooted computation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    BadParameterError,
    DisconnectedError,
    DuplicateEdgeError,
    RootNotIncludedError,
    RootOutOfRangeError,
    SelfLoopError,
    UnknownFamilyError,
)

Perm = tuple[int, ...]
Edge = tuple[int, int]


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable rooted graph.

    Equality is identity; configurations and weight functions are bound
    to one specific Graph object. Immutability makes instances safely
    shareable across worker processes.
    """

    vertex_count: int
    edges: tuple[Edge, ...]
    root: int
    labels: tuple[str, ...] | None = None
    symmetry: tuple[Perm, ...] = ()
    transitive_maps: tuple[Perm, ...] | None = None

    def __post_init__(self):
        nbrs: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        object.__setattr__(self, "neighbors", tuple(tuple(sorted(a)) for a in nbrs))
        object.__setattr__(self, "_cache", {})

    # The per-instance cache holds distance tables, symmetry closures and
    # warm solvers; it must not travel to worker processes.
    def __getstate__(self):
        state = dict(self.__dict__)
        state.pop("_cache", None)
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self.__dict__["_cache"] = {}

    @property
    def edge_set(self) -> frozenset[Edge]:
        cache = self._cache
        if "edge_set" not in cache:
            cache["edge_set"] = frozenset(self.edges)
        return cache["edge_set"]

    def label(self, v: int) -> str:
        if self.labels is None:
            return str(v)
        return self.labels[v]

    def vertex_by_label(self, text: str) -> int:
        if self.labels is None:
            raise BadParameterError("graph carries no labels")
        return self.labels.index(text)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edge_set


def _check_vertex(g_or_n, v: int) -> None:
    n = g_or_n.vertex_count if isinstance(g_or_n, Graph) else g_or_n
    if not (0 <= v < n):
        raise BadParameterError(f"vertex {v} out of range [0, {n})")


def _is_automorphism(n: int, edge_set: frozenset[Edge], perm: Perm) -> bool:
    if len(perm) != n or sorted(perm) != list(range(n)):
        return False
    for u, v in edge_set:
        a, b = perm[u], perm[v]
        if (min(a, b), max(a, b)) not in edge_set:
            return False
    return True


def build_graph(
    vertex_count: int,
    edges,
    root: int,
    labels=None,
    symmetry: tuple[Perm, ...] = (),
    transitive_maps: tuple[Perm, ...] | None = None,
) -> Graph:
    """Validate and construct a rooted graph.

    Rejects self-loops, duplicate edges, out-of-range roots and
    disconnected inputs. Symmetry permutations must fix the root and map
    the edge set onto itself; this is checked by direct application.
    """
    if vertex_count < 1:
        raise BadParameterError("vertex_count must be at least 1")
    if not (0 <= root < vertex_count):
        raise RootOutOfRangeError(f"root {root} out of range [0, {vertex_count})")

    norm: list[Edge] = []
    seen: set[Edge] = set()
    for u, v in edges:
        _check_vertex(vertex_count, u)
        _check_vertex(vertex_count, v)
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}")
        e = (min(u, v), max(u, v))
        if e in seen:
            raise DuplicateEdgeError(f"duplicate edge {e}")
        seen.add(e)
        norm.append(e)
    norm.sort()

    adj: list[list[int]] = [[] for _ in range(vertex_count)]
    for u, v in norm:
        adj[u].append(v)
        adj[v].append(u)
    reached = {root}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in reached:
                reached.add(y)
                queue.append(y)
    if len(reached) != vertex_count:
        raise DisconnectedError(
            f"graph is disconnected: reached {len(reached)} of {vertex_count} vertices"
        )

    if labels is not None:
        labels = tuple(labels)
        if len(labels) != vertex_count:
            raise BadParameterError("labels length mismatch")

    edge_set = frozenset(norm)
    symmetry = tuple(tuple(p) for p in symmetry)
    for p in symmetry:
        if not _is_automorphism(vertex_count, edge_set, p) or p[root] != root:
            raise BadParameterError(f"stored symmetry {p} is not a root-fixing automorphism")
    if transitive_maps is not None:
        transitive_maps = tuple(tuple(p) for p in transitive_maps)
        if len(transitive_maps) != vertex_count:
            raise BadParameterError("transitive_maps must give one map per vertex")
        for target, p in enumerate(transitive_maps):
            if not _is_automorphism(vertex_count, edge_set, p) or p[root] != target:
                raise BadParameterError(f"map for vertex {target} is not an automorphism sending root there")

    return Graph(vertex_count, tuple(norm), root, labels, symmetry, transitive_maps)


def distances_from(g: Graph, src: int) -> tuple[int, ...]:
    """Breadth-first distances from ``src`` to every vertex."""
    _check_vertex(g, src)
    cache = g._cache
    key = ("dist", src)
    if key in cache:
        return cache[key]
    dist = [-1] * g.vertex_count
    dist[src] = 0
    queue = deque([src])
    while queue:
        x = queue.popleft()
        for y in g.neighbors[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    out = tuple(dist)
    cache[key] = out
    return out


def distance(g: Graph, u: int, v: int) -> int:
    _check_vertex(g, v)
    return distances_from(g, u)[v]


def eccentricity(g: Graph, v: int) -> int:
    return max(distances_from(g, v))


def diameter(g: Graph) -> int:
    cache = g._cache
    if "diameter" not in cache:
        cache["diameter"] = max(eccentricity(g, v) for v in range(g.vertex_count))
    return cache["diameter"]


def shortest_path(g: Graph, src: int, dst: int) -> tuple[int, ...]:
    """One shortest path, deterministic (lowest-id parents)."""
    dist = distances_from(g, dst)
    path = [src]
    x = src
    while x != dst:
        x = min(y for y in g.neighbors[x] if dist[y] == dist[x] - 1)
        path.append(x)
    return tuple(path)


# ---------------------------------------------------------------------------
# family generators
# ---------------------------------------------------------------------------


def _coordinate_label(value: int, n_bits: int) -> str:
    return "(" + ",".join(str((value >> i) & 1) for i in range(n_bits)) + ")"


def _bit_swap_perm(n_bits: int, i: int, j: int, offset: int = 0, total: int | None = None) -> Perm:
    """Vertex permutation induced by swapping coordinate bits i and j."""
    perm = list(range(total if total is not None else (1 << n_bits) + offset))
    for v in range(1 << n_bits):
        bi, bj = (v >> i) & 1, (v >> j) & 1
        if bi != bj:
            perm[offset + v] = offset + (v ^ ((1 << i) | (1 << j)))
    return tuple(perm)


@lru_cache(maxsize=None)
def path_graph(k: int) -> Graph:
    """The path on k+1 vertices rooted at one end.

    Vertex i carries label v_i and sits at distance k-i from the root,
    which is the last index.
    """
    if k < 1:
        raise BadParameterError("path length must be at least 1")
    labels = tuple(f"v_{i}" for i in range(k)) + ("r",)
    return build_graph(k + 1, [(i, i + 1) for i in range(k)], root=k, labels=labels)


@lru_cache(maxsize=None)
def cycle_graph(length: int) -> Graph:
    if length < 3:
        raise BadParameterError("cycle length must be at least 3")
    edges = [(i, (i + 1) % length) for i in range(length)]
    reflection = tuple((-i) % length for i in range(length))
    rotations = tuple(tuple((i + t) % length for i in range(length)) for t in range(length))
    return build_graph(length, edges, root=0, symmetry=(reflection,), transitive_maps=rotations)


@lru_cache(maxsize=None)
def hypercube(n: int) -> Graph:
    """Q_n rooted at the all-zeros vertex; vertex ids are coordinate words."""
    if n < 1:
        raise BadParameterError("hypercube dimension must be at least 1")
    size = 1 << n
    edges = []
    for v in range(size):
        for b in range(n):
            u = v ^ (1 << b)
            if u > v:
                edges.append((v, u))
    labels = tuple(_coordinate_label(v, n) for v in range(size))
    symmetry = tuple(_bit_swap_perm(n, i, i + 1) for i in range(n - 1))
    xor_maps = tuple(tuple(v ^ t for v in range(size)) for t in range(size))
    return build_graph(size, edges, root=0, labels=labels, symmetry=symmetry, transitive_maps=xor_maps)


_LEMMA5_DOUBLE_NAMES = {3: "y_3", 5: "y_2", 6: "y_1"}


@lru_cache(maxsize=None)
def rooted_cube(n: int) -> Graph:
    """A pendant root attached to the all-zeros vertex of Q_{n-1}.

    Cube vertices are labelled by coordinates; the 4-dimensional
    instance instead carries the conventional u/x_i/y_i/z names of its
    figure (u adjacent to the root, z opposite).
    """
    if n < 2:
        raise BadParameterError("rooted cube needs dimension at least 2")
    dim = n - 1
    size = (1 << dim) + 1
    edges = [(0, 1)]
    for v in range(1 << dim):
        for b in range(dim):
            u = v ^ (1 << b)
            if u > v:
                edges.append((1 + v, 1 + u))
    if n == 4:
        cube_labels = []
        for c in range(8):
            ones = bin(c).count("1")
            if ones == 0:
                cube_labels.append("u")
            elif ones == 1:
                cube_labels.append(f"x_{c.bit_length()}")
            elif ones == 2:
                cube_labels.append(_LEMMA5_DOUBLE_NAMES[c])
            else:
                cube_labels.append("z")
        labels = ("r", *cube_labels)
    else:
        labels = ("r",) + tuple(_coordinate_label(v, dim) for v in range(1 << dim))
    symmetry = tuple(_bit_swap_perm(dim, i, i + 1, offset=1, total=size) for i in range(dim - 1))
    return build_graph(size, edges, root=0, labels=labels, symmetry=symmetry)


@lru_cache(maxsize=None)
def lollipop(n: int, m: int | None = None) -> Graph:
    """Path of length n from the root into a bundle of m parallel
    length-2 paths sharing both endpoints.

    Ids: root 0, then v_n .. v_1 along the path, u_0 (far shared
    endpoint), u_1 .. u_m (middles). Defaults to m = 2^(n+1) arms.
    """
    if n < 1:
        raise BadParameterError("path length must be at least 1")
    if m is None:
        m = 1 << (n + 1)
    if m < 1:
        raise BadParameterError("need at least one parallel path")
    v1 = n
    u0 = n + 1
    edges = [(i, i + 1) for i in range(n)]
    for i in range(1, m + 1):
        edges.append((v1, u0 + i))
        edges.append((u0, u0 + i))
    labels = ("r",) + tuple(f"v_{n - i}" for i in range(n)) + ("u_0",) + tuple(f"u_{i}" for i in range(1, m + 1))
    swaps = []
    for i in range(1, m):
        p = list(range(n + m + 2))
        p[u0 + i], p[u0 + i + 1] = p[u0 + i + 1], p[u0 + i]
        swaps.append(tuple(p))
    return build_graph(n + m + 2, edges, root=0, labels=labels, symmetry=tuple(swaps))


_NAMED = {"fig2": lambda: rooted_cube(3), "lemma5": lambda: rooted_cube(4)}


def named_graph(name: str) -> Graph:
    try:
        return _NAMED[name]()
    except KeyError:
        raise UnknownFamilyError(f"unknown named graph {name!r}") from None


_FAMILIES = {
    "path": (path_graph, 1),
    "cycle": (cycle_graph, 1),
    "hypercube": (hypercube, 1),
    "rooted_cube": (rooted_cube, 1),
    "lollipop": (lollipop, (1, 2)),
    "fig2": (lambda: named_graph("fig2"), 0),
    "lemma5": (lambda: named_graph("lemma5"), 0),
}


def generate(family: str, *params: int) -> Graph:
    """Build a graph family instance by name, e.g. generate("lollipop", 1, 4)."""
    if family not in _FAMILIES:
        raise UnknownFamilyError(f"unknown family {family!r}; choose from {sorted(_FAMILIES)}")
    fn, arity = _FAMILIES[family]
    allowed = (arity,) if isinstance(arity, int) else arity
    if len(params) not in allowed:
        raise BadParameterError(f"family {family!r} takes {allowed} parameter(s), got {len(params)}")
    return fn(*params)


def induced_subgraph(g: Graph, vertices, root: int | None = None) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph plus the embedding new-id -> old-id.

    New ids follow the sorted order of the old ids. The subgraph must be
    connected and contain the chosen root.
    """
    if root is None:
        root = g.root
    old_ids = sorted(set(vertices))
    for v in old_ids:
        _check_vertex(g, v)
    if root not in old_ids:
        raise RootNotIncludedError(f"root {root} not in the vertex set")
    back = {old: new for new, old in enumerate(old_ids)}
    edges = [(back[u], back[v]) for u, v in g.edges if u in back and v in back]
    labels = None if g.labels is None else tuple(g.labels[v] for v in old_ids)
    sub = build_graph(len(old_ids), edges, root=back[root], labels=labels)
    return sub, tuple(old_ids)
