"""
Combinatorial {p,q} tilings grown in concentric layers.

Layer 0 is the base vertex. Each new layer is produced from the previous
outer boundary cycle: every boundary vertex receives ``q - degree`` outward
spokes, and each pair of cyclically consecutive spokes closes one p-gon
whose missing vertices become the next boundary. When a face needs exactly
one new vertex the two spoke endpoints are identified. No coordinates are
involved, so the construction is exact for every (p-2)(q-2) >= 4.
"""
import logging
import threading
from typing import Dict, List, Set, Tuple

from networkx.utils import UnionFind

from .errors import EncodingError, SphericalTilingError, TilingConstructionError
from .oracles import GraphOracle, _int_tuple

logger = logging.getLogger(__name__)

TileVertex = Tuple[int, int]


class HyperbolicTiling(GraphOracle):
    """
    Vertex graph of the regular {p,q} tiling (p-gons, q meeting at each vertex).

    Vertices are (layer, index) pairs; ``index`` runs along the layer's
    boundary cycle. Layers are built on demand and guarded by a lock, so the
    oracle can be shared between readers.
    """

    canonical_form = "(layer, index) pair of non-negative integers"

    def __init__(self, p: int, q: int):
        if p < 3 or q < 3:
            raise ValueError(f"{{p,q}} needs p, q >= 3, got {{{p},{q}}}")
        if (p - 2) * (q - 2) < 4:
            raise SphericalTilingError(
                f"{{{p},{q}}} is spherical ((p-2)(q-2) = {(p - 2) * (q - 2)} < 4): finite graph, not supported"
            )
        self.p = p
        self.q = q
        self.family = f"tiling:{p},{q}"
        self.degree_bound = q
        self.euclidean = (p - 2) * (q - 2) == 4
        self._lock = threading.RLock()
        self._adj: Dict[TileVertex, Set[TileVertex]] = {(0, 0): set()}
        self._layer_sizes: List[int] = [1]
        self._boundary: List[TileVertex] = [(0, 0)]
        self._faces: List[Tuple[TileVertex, ...]] = []

    @property
    def base(self) -> TileVertex:
        return (0, 0)

    @property
    def layer_sizes(self) -> List[int]:
        return list(self._layer_sizes)

    @property
    def faces(self) -> List[Tuple[TileVertex, ...]]:
        """Closed faces produced so far, each as its boundary vertex cycle."""
        return list(self._faces)

    def canonical(self, v) -> TileVertex:
        t = _int_tuple(v, 2)
        if t is None or t[0] < 0 or t[1] < 0:
            raise self._bad(v)
        layer, index = t
        self.ensure_layers(layer)
        if index >= self._layer_sizes[layer]:
            raise EncodingError(
                f"{v!r} is not a valid {self.family} vertex: layer {layer} has {self._layer_sizes[layer]} vertices"
            )
        return t

    def neighbors(self, v) -> List[TileVertex]:
        v = self.canonical(v)
        self.ensure_layers(v[0] + 1)
        return sorted(self._adj[v])

    def neighbors_within(self, v, radius: int) -> List[TileVertex]:
        # graph distance from the base is at least the layer, so a ball of
        # radius R never needs layer R + 1
        v = self.canonical(v)
        self.ensure_layers(min(v[0] + 1, radius))
        return sorted(self._adj[v])

    def ensure_layers(self, layers: int):
        with self._lock:
            while len(self._layer_sizes) <= layers:
                self._extend()

    def _extend(self):
        p, q = self.p, self.q
        boundary = self._boundary
        length = len(boundary)
        layer = len(self._layer_sizes)

        spokes: List[int] = []
        for i, b in enumerate(boundary):
            need = q - len(self._adj[b])
            if need < 0:
                raise TilingConstructionError(f"{b} already has degree {len(self._adj[b])} > {q}")
            spokes.extend([i] * need)
        count = len(spokes)
        if count < 2:
            raise TilingConstructionError(f"layer {layer}: only {count} outward spokes, boundary closed up")

        uf = UnionFind(range(count))
        next_id = count
        face_plans = []
        for j in range(count):
            i1 = spokes[j]
            i2 = spokes[(j + 1) % count]
            if length == 1:
                m = 0
            elif j < count - 1:
                m = i2 - i1
            else:
                m = i2 + length - i1
            chain = [boundary[(i1 + t) % length] for t in range(m + 1)]
            k = p - (m + 1)
            if k < 1:
                raise TilingConstructionError(
                    f"layer {layer}: face between spokes {j} and {(j + 1) % count} needs {k} new vertices"
                )
            e1, e2 = j, (j + 1) % count
            if k == 1:
                uf.union(e1, e2)
                seq = [e1]
            else:
                inner = list(range(next_id, next_id + k - 2))
                next_id += k - 2
                seq = [e1] + inner + [e2]
            face_plans.append((chain, seq))

        order: List[int] = []
        for _, seq in face_plans:
            for x in seq[:-1]:
                root = uf[x]
                if not order or order[-1] != root:
                    order.append(root)
        while len(order) > 1 and order[0] == order[-1]:
            order.pop()
        if len(set(order)) != len(order):
            raise TilingConstructionError(f"layer {layer}: new boundary revisits a vertex")

        keys = {root: (layer, idx) for idx, root in enumerate(order)}
        for key in keys.values():
            self._adj[key] = set()

        def link(a: TileVertex, b: TileVertex):
            if a == b:
                raise TilingConstructionError(f"layer {layer}: attempted self-loop at {a}")
            self._adj[a].add(b)
            self._adj[b].add(a)

        for j, i in enumerate(spokes):
            link(boundary[i], keys[uf[j]])
        for chain, seq in face_plans:
            mapped = [keys[uf[x]] for x in seq]
            for a, b in zip(mapped, mapped[1:]):
                link(a, b)
            cycle = list(chain) + list(reversed(mapped))
            deduped = [v for idx, v in enumerate(cycle) if idx == 0 or v != cycle[idx - 1]]
            self._faces.append(tuple(deduped))

        for v in boundary:
            if len(self._adj[v]) != q:
                raise TilingConstructionError(f"{v} closed with degree {len(self._adj[v])}, expected {q}")
        for key in keys.values():
            if len(self._adj[key]) > q:
                raise TilingConstructionError(f"{key} exceeds degree {q}")

        self._boundary = [keys[r] for r in order]
        self._layer_sizes.append(len(order))
        logger.debug("%s: layer %d built with %d vertices", self.family, layer, len(order))


def tiling_layer_extend(p: int, q: int, layers: int):
    """
    Ball of radius ``layers`` around the base of the {p,q} tiling

    Args:
        p: Face size
        q: Vertex degree
        layers: Number of concentric layers (ball radius)

    Returns:
        Ball whose interior vertices all have degree q
    """
    from .ball import materialize_ball

    tiling = HyperbolicTiling(p, q)
    return materialize_ball(tiling, tiling.base, layers)
