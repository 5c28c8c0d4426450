"""
Lazy neighbor oracles for the vertex-transitive families the lab probes.

Every oracle answers ``neighbors(v)`` with a sorted, duplicate-free list and
exposes a canonical ``base`` vertex. Vertex tokens are plain tuples (or
strings for edge-list graphs) so that Python's tuple ordering gives the
total order used for deterministic tie-breaking everywhere else.
"""
import logging
import os
from typing import Any, Dict, Iterable, List, Optional, Set, Tuple

import numpy as np

from .errors import EncodingError, MalformedInputError

logger = logging.getLogger(__name__)

VertexKey = Any


class GraphOracle:
    """Base class: a deterministic neighbor function over canonical tokens."""

    family: str = "abstract"
    degree_bound: int = 0
    canonical_form: str = ""

    @property
    def base(self) -> VertexKey:
        raise NotImplementedError

    def canonical(self, v: Any) -> VertexKey:
        """Coerce a user-supplied token into canonical form or raise EncodingError."""
        raise NotImplementedError

    def neighbors(self, v: VertexKey) -> List[VertexKey]:
        raise NotImplementedError

    def neighbors_within(self, v: VertexKey, radius: int) -> List[VertexKey]:
        """Neighbors needed to materialize a ball of the given radius around ``base``."""
        return self.neighbors(v)

    def _bad(self, v: Any) -> EncodingError:
        return EncodingError(f"{v!r} is not a valid {self.family} vertex; expected {self.canonical_form}")

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.family})"


def _int_tuple(v: Any, length: Optional[int] = None) -> Optional[Tuple[int, ...]]:
    if isinstance(v, (list, tuple)):
        items = tuple(v)
    else:
        return None
    if length is not None and len(items) != length:
        return None
    for x in items:
        if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
            return None
    return tuple(int(x) for x in items)


class ZLattice(GraphOracle):
    """The standard Cayley graph of Z^d."""

    def __init__(self, dim: int):
        if dim < 1:
            raise ValueError(f"lattice dimension must be >= 1, got {dim}")
        self.dim = dim
        self.family = f"z{dim}"
        self.degree_bound = 2 * dim
        self.canonical_form = f"tuple of {dim} integers"

    @property
    def base(self) -> Tuple[int, ...]:
        return (0,) * self.dim

    def canonical(self, v: Any) -> Tuple[int, ...]:
        if self.dim == 1 and isinstance(v, (int, np.integer)) and not isinstance(v, bool):
            return (int(v),)
        t = _int_tuple(v, self.dim)
        if t is None:
            raise self._bad(v)
        return t

    def neighbors(self, v: Tuple[int, ...]) -> List[Tuple[int, ...]]:
        v = self.canonical(v)
        out = []
        for i in range(self.dim):
            for step in (-1, 1):
                w = list(v)
                w[i] += step
                out.append(tuple(w))
        out.sort()
        return out


class Heisenberg(GraphOracle):
    """
    Discrete Heisenberg group with generators x, y.

    (a, b, c) stands for the matrix [[1, a, c], [0, 1, b], [0, 0, 1]]; edges are
    right multiplication by x^{±1} = (±1, 0, 0) and y^{±1} = (0, ±1, 0).
    """

    family = "heisenberg"
    degree_bound = 4
    canonical_form = "integer triple (a, b, c) of the upper unitriangular matrix"

    @property
    def base(self) -> Tuple[int, int, int]:
        return (0, 0, 0)

    @staticmethod
    def multiply(g: Tuple[int, int, int], h: Tuple[int, int, int]) -> Tuple[int, int, int]:
        return (g[0] + h[0], g[1] + h[1], g[2] + h[2] + g[0] * h[1])

    @staticmethod
    def inverse(g: Tuple[int, int, int]) -> Tuple[int, int, int]:
        a, b, c = g
        return (-a, -b, a * b - c)

    @staticmethod
    def to_matrix(g: Tuple[int, int, int]) -> np.ndarray:
        a, b, c = g
        return np.array([[1, a, c], [0, 1, b], [0, 0, 1]], dtype=np.int64)

    def canonical(self, v: Any) -> Tuple[int, int, int]:
        t = _int_tuple(v, 3)
        if t is None:
            raise self._bad(v)
        return t

    def neighbors(self, v: Tuple[int, int, int]) -> List[Tuple[int, int, int]]:
        a, b, c = self.canonical(v)
        return sorted([(a - 1, b, c), (a + 1, b, c), (a, b + 1, c + a), (a, b - 1, c - a)])


class FreeGroup(GraphOracle):
    """Free group on ``rank`` generators; reduced words use letters ±1..±rank."""

    def __init__(self, rank: int):
        if rank < 1:
            raise ValueError(f"free group rank must be >= 1, got {rank}")
        self.rank = rank
        self.family = f"free:{rank}"
        self.degree_bound = 2 * rank
        self.canonical_form = f"reduced word: tuple of nonzero integers in [-{rank}, {rank}]"
        self._letters = [g for g in range(-rank, rank + 1) if g != 0]

    @property
    def base(self) -> Tuple[int, ...]:
        return ()

    def canonical(self, v: Any) -> Tuple[int, ...]:
        t = _int_tuple(v)
        if t is None:
            raise self._bad(v)
        for i, g in enumerate(t):
            if g == 0 or abs(g) > self.rank:
                raise self._bad(v)
            if i and t[i - 1] == -g:
                raise self._bad(v)
        return t

    def neighbors(self, v: Tuple[int, ...]) -> List[Tuple[int, ...]]:
        w = self.canonical(v)
        out = []
        for g in self._letters:
            if w and w[-1] == -g:
                out.append(w[:-1])
            else:
                out.append(w + (g,))
        out.sort()
        return out


class RegularTree(GraphOracle):
    """k-regular tree; a vertex is its path from the root (first step < k, later steps < k-1)."""

    def __init__(self, valence: int):
        if valence < 2:
            raise ValueError(f"tree valence must be >= 2, got {valence}")
        self.valence = valence
        self.family = f"tree:{valence}"
        self.degree_bound = valence
        self.canonical_form = f"tuple path from the root, first entry < {valence}, later entries < {valence - 1}"

    @property
    def base(self) -> Tuple[int, ...]:
        return ()

    def canonical(self, v: Any) -> Tuple[int, ...]:
        t = _int_tuple(v)
        if t is None:
            raise self._bad(v)
        for i, x in enumerate(t):
            bound = self.valence if i == 0 else self.valence - 1
            if not 0 <= x < bound:
                raise self._bad(v)
        return t

    def neighbors(self, v: Tuple[int, ...]) -> List[Tuple[int, ...]]:
        v = self.canonical(v)
        if not v:
            return [(i,) for i in range(self.valence)]
        out = [v[:-1]] + [v + (j,) for j in range(self.valence - 1)]
        out.sort()
        return out


class EdgeListGraph(GraphOracle):
    """
    Finite graph read from a `u v` edge list; out-of-file vertices do not exist.

    Args:
        edges: iterable of (u, v) id pairs
        trust_radius: radius around ``base`` inside which the file is believed
            to agree with the infinite graph it truncates
        source: label used in the family name
    """

    canonical_form = "vertex id string present in the edge list"

    def __init__(self, edges: Iterable[Tuple[str, str]], trust_radius: Optional[int] = None, source: str = "inline"):
        self._adj: Dict[str, Set[str]] = {}
        self._order: List[str] = []
        for u, v in edges:
            u, v = str(u), str(v)
            for x in (u, v):
                if x not in self._adj:
                    self._adj[x] = set()
                    self._order.append(x)
            if u == v:
                logger.warning("ignoring self-loop at %s", u)
                continue
            self._adj[u].add(v)
            self._adj[v].add(u)
        if not self._order:
            raise MalformedInputError(f"edge list {source} is empty")
        self.family = f"edges:{source}"
        self.trust_radius = trust_radius
        self.degree_bound = max(len(n) for n in self._adj.values())
        self._sorted = {k: sorted(n) for k, n in self._adj.items()}

    @classmethod
    def from_file(cls, path: str, trust_radius: Optional[int] = None) -> "EdgeListGraph":
        edges = []
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                text = line.split("#", 1)[0].strip()
                if not text:
                    continue
                parts = text.split()
                if len(parts) != 2:
                    raise MalformedInputError(f"{path}:{lineno}: expected 'u v', got {text!r}")
                edges.append((parts[0], parts[1]))
        return cls(edges, trust_radius=trust_radius, source=os.path.basename(path))

    @property
    def base(self) -> str:
        return self._order[0]

    @property
    def vertex_count(self) -> int:
        return len(self._order)

    def canonical(self, v: Any) -> str:
        key = str(v)
        if key not in self._adj:
            raise self._bad(v)
        return key

    def neighbors(self, v: str) -> List[str]:
        return list(self._sorted[self.canonical(v)])


def parse_family(spec: str) -> GraphOracle:
    """
    Build an oracle from a family spec

    Args:
        spec: one of z<d>, heisenberg, t<k> / tree:<k>, free:<r> / free<r>,
            tiling:<p>,<q> / {p,q}, edges:<path>[@trust_radius]

    Returns:
        The family's oracle
    """
    from .tiling import HyperbolicTiling

    raw = spec.strip()
    name = raw.lower()
    if name.startswith("edges:"):
        path = raw[len("edges:"):]
        trust = None
        if "@" in path:
            path, radius = path.rsplit("@", 1)
            trust = int(radius)
        return EdgeListGraph.from_file(path, trust_radius=trust)
    if name.startswith("z") and name[1:].isdigit():
        return ZLattice(int(name[1:]))
    if name in ("heisenberg", "heis", "h3"):
        return Heisenberg()
    if name.startswith("tree:"):
        return RegularTree(int(name[5:]))
    if name.startswith("t") and name[1:].isdigit():
        return RegularTree(int(name[1:]))
    if name.startswith("free:"):
        return FreeGroup(int(name[5:]))
    if name.startswith("free") and name[4:].isdigit():
        return FreeGroup(int(name[4:]))
    if name.startswith("tiling:") or name.startswith("{"):
        body = name[7:] if name.startswith("tiling:") else name.strip("{}")
        try:
            p, q = (int(x) for x in body.split(","))
        except ValueError:
            raise ValueError(f"tiling spec must look like tiling:p,q, got {spec!r}")
        return HyperbolicTiling(p, q)
    raise ValueError(f"unknown family {spec!r}")


def random_vertex(oracle: GraphOracle, rng: np.random.Generator, steps: int = 12) -> VertexKey:
    """Endpoint of a seeded random walk of the given length from the base vertex."""
    v = oracle.base
    for _ in range(steps):
        nbrs = oracle.neighbors(v)
        v = nbrs[int(rng.integers(len(nbrs)))]
    return v
