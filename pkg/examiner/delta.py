"""
The six-vertex graph Delta on the rays of a cross-examiner, induced label
paths of long paths, and the good-subpath search over them.

Labels are g1, g2, g3 (the rays gamma_i, red) and w1, w2, w3 (the
witnesses, green).
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple, Union

from graphs.ball import Ball
from graphs.errors import MalformedInputError, PreconditionError
from metric.distances import bfs_from
from metric.paths import PathRecord
from separation.components import label_components

from .construct import CrossExaminer
from .validate import ray_extent

logger = logging.getLogger(__name__)

RED = ("g1", "g2", "g3")
GREEN = ("w1", "w2", "w3")
LABELS = RED + GREEN


def is_red(label: str) -> bool:
    return label in RED


@dataclass(frozen=True)
class DeltaGraph:
    edges: FrozenSet[FrozenSet[str]]

    @classmethod
    def from_pairs(cls, pairs: Sequence[Tuple[str, str]]) -> "DeltaGraph":
        for a, b in pairs:
            if a not in LABELS or b not in LABELS or a == b:
                raise MalformedInputError(f"bad Delta edge {a}-{b}")
        return cls(frozenset(frozenset(p) for p in pairs))

    def adjacent(self, a: str, b: str) -> bool:
        return frozenset((a, b)) in self.edges

    def neighbors(self, a: str) -> List[str]:
        return sorted(b for b in LABELS if b != a and self.adjacent(a, b))

    def red_red_edges(self) -> List[Tuple[str, str]]:
        return [tuple(sorted(e)) for e in self.edges if all(is_red(x) for x in e)]

    def is_alternating_cycle(self) -> bool:
        return self == ALTERNATING_CYCLE

    def edge_list(self) -> List[Tuple[str, str]]:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def to_dict(self) -> Dict[str, Any]:
        return {"labels": list(LABELS), "edges": [list(e) for e in self.edge_list()]}


# w_i meets gamma_{i+1} and gamma_{i+2}
ALTERNATING_CYCLE = DeltaGraph.from_pairs(
    [("g1", "w3"), ("w3", "g2"), ("g2", "w1"), ("w1", "g3"), ("g3", "w2"), ("w2", "g1")]
)


@dataclass(frozen=True)
class DeltaPath:
    labels: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        unknown = [x for x in self.labels if x not in LABELS]
        if unknown:
            raise MalformedInputError(f"unknown Delta labels {unknown}")

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def reversed(self) -> "DeltaPath":
        return DeltaPath(tuple(reversed(self.labels)))

    def check_against(self, graph: DeltaGraph) -> "DeltaPath":
        """Raise unless consecutive labels are adjacent in ``graph``."""
        for a, b in zip(self.labels, self.labels[1:]):
            if not graph.adjacent(a, b):
                raise MalformedInputError(f"{a}-{b} is not an edge of Delta")
        return self

    def to_json(self) -> List[str]:
        return list(self.labels)


def ray_map(ce: CrossExaminer) -> Dict[str, PathRecord]:
    return {**{f"g{i}": ce.gamma_(i) for i in (1, 2, 3)}, **{f"w{i}": ce.w_(i) for i in (1, 2, 3)}}


def _ray_neighborhoods(ball: Ball, ce: CrossExaminer, radius: int) -> Dict[str, List[int]]:
    return {label: bfs_from(ball, ball.indices_of(path.vertices), limit=radius) for label, path in ray_map(ce).items()}


def delta_graph(ball: Ball, ce: CrossExaminer, two_sigma: Optional[int] = None) -> DeltaGraph:
    """
    Build Delta from path searches outside N_R(v0)

    X and Y are joined when one component of the shell {R < dc <= extent}
    minus the two_sigma-neighborhoods of the other four rays holds vertices
    of both X and Y. The shell stops where the stored rays stop.
    """
    two_sigma = 2 * ce.sigma if two_sigma is None else two_sigma
    extent = ray_extent(ball, ce)
    from_v0 = bfs_from(ball, [ball.index_of(ce.v0)])
    shell = [ce.R < d <= extent for d in from_v0]
    near = _ray_neighborhoods(ball, ce, two_sigma)
    rays = {label: set(ball.indices_of(path.vertices)) for label, path in ray_map(ce).items()}
    pairs = []
    for a, b in itertools.combinations(LABELS, 2):
        others = [near[x] for x in LABELS if x not in (a, b)]
        keep = [shell[j] and all(t[j] < 0 for t in others) for j in range(len(ball))]
        for comp in label_components(ball, keep):
            members = set(comp)
            if members & rays[a] and members & rays[b]:
                pairs.append((a, b))
                break
    graph = DeltaGraph.from_pairs(pairs)
    if graph.red_red_edges():
        logger.warning("Delta has red-red edges %s", graph.red_red_edges())
    logger.info("Delta edges: %s", graph.edge_list())
    return graph


def induced_delta_path(ball: Ball, p: PathRecord, ce: CrossExaminer, two_sigma: Optional[int] = None) -> DeltaPath:
    """
    Labels of the rays whose two_sigma-neighborhoods p visits, in order

    A label is appended each time p enters the neighborhood of a ray other
    than the last one recorded.

    Raises:
        PreconditionError: p enters N_R(v0), or a vertex of p is within
            two_sigma of two rays at once (details name both)
    """
    two_sigma = 2 * ce.sigma if two_sigma is None else two_sigma
    idx = ball.indices_of(p.vertices)
    from_v0 = bfs_from(ball, [ball.index_of(ce.v0)], limit=ce.R)
    inside = next((j for j in idx if from_v0[j] >= 0), None)
    if inside is not None:
        raise PreconditionError(
            f"p enters N_{ce.R}(v0)",
            {"vertex": ball.vertices[inside], "distance": from_v0[inside]},
        )
    near = _ray_neighborhoods(ball, ce, two_sigma)
    labels: List[str] = []
    for j in idx:
        hits = [x for x in LABELS if near[x][j] >= 0]
        if len(hits) > 1:
            raise PreconditionError(
                f"rays {', '.join(hits)} are not {two_sigma}-separated at {ball.vertices[j]!r}",
                {"vertex": ball.vertices[j], "labels": hits},
            )
        if hits and (not labels or labels[-1] != hits[0]):
            labels.append(hits[0])
    return DeltaPath(tuple(labels))


@dataclass(frozen=True)
class GoodSubpath:
    """Window [start, end] of a label path; pi is (first red, last red, avoided index)."""

    pi: Tuple[int, int, int]
    start: int
    end: int
    labels: Tuple[str, ...]

    def revalidate(self) -> bool:
        a, b, k = self.pi
        return (
            self.labels[0] == f"g{a}"
            and self.labels[-1] == f"g{b}"
            and f"g{k}" in self.labels
            and f"w{k}" not in self.labels
        )

    def to_dict(self) -> Dict[str, Any]:
        return {"pi": list(self.pi), "start": self.start, "end": self.end, "labels": list(self.labels)}


def _window_pi(labels: Sequence[str], i: int, j: int) -> Optional[Tuple[int, int, int]]:
    a, b = labels[i], labels[j]
    if not (is_red(a) and is_red(b)) or a == b:
        return None
    k = ({1, 2, 3} - {int(a[1]), int(b[1])}).pop()
    window = labels[i:j + 1]
    if f"g{k}" in window and f"w{k}" not in window:
        return int(a[1]), int(b[1]), k
    return None


def good_windows(labels: Sequence[str]) -> List[Tuple[int, int]]:
    """Every valid window, by brute force."""
    n = len(labels)
    return [(i, j) for i in range(n) for j in range(i + 1, n) if _window_pi(labels, i, j)]


def find_good_subpath(dp: Union[DeltaPath, Sequence[str]]) -> GoodSubpath:
    """
    Shortest (then earliest) window starting and ending at distinct reds
    that visits the third red and skips the matching green

    Args:
        dp: Label path, or a raw label list (adjacency is not checked)

    Raises:
        PreconditionError: dp does not start at g1, end at g2 and visit g3,
            or no window qualifies
    """
    labels = dp.labels if isinstance(dp, DeltaPath) else DeltaPath(tuple(dp)).labels
    if not labels or labels[0] != "g1" or labels[-1] != "g2" or "g3" not in labels:
        raise PreconditionError("label path must start at g1, end at g2 and visit g3", {"labels": list(labels)})
    n = len(labels)
    for span in range(1, n):
        for i in range(n - span):
            pi = _window_pi(labels, i, i + span)
            if pi:
                return GoodSubpath(pi, i, i + span, tuple(labels[i:i + span + 1]))
    raise PreconditionError("no good subpath; the labels do not form a path in Delta", {"labels": list(labels)})


def delta_walks(graph: DeltaGraph = ALTERNATING_CYCLE, max_edges: int = 12) -> Iterator[Tuple[str, ...]]:
    """Walks from g1 to g2 through g3 with at most ``max_edges`` edges."""

    def extend(walk: List[str]) -> Iterator[Tuple[str, ...]]:
        if walk[-1] == "g2" and "g3" in walk:
            yield tuple(walk)
        if len(walk) > max_edges:
            return
        for nxt in graph.neighbors(walk[-1]):
            walk.append(nxt)
            yield from extend(walk)
            walk.pop()

    yield from extend(["g1"])


@dataclass
class ExhaustiveReport:
    max_edges: int
    checked: int
    counterexamples: List[Tuple[str, ...]]

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> Dict[str, Any]:
        return {
            "max_edges": self.max_edges,
            "checked": self.checked,
            "counterexamples": [list(c) for c in self.counterexamples],
        }


def good_subpath_exhaustive_check(max_edges: int = 12, graph: DeltaGraph = ALTERNATING_CYCLE) -> ExhaustiveReport:
    """
    Run find_good_subpath on every qualifying walk and compare with brute force

    A walk counts as a counterexample when the search fails, its answer does
    not re-validate, or brute force knows a strictly shorter window.
    """
    checked, bad = 0, []
    for walk in delta_walks(graph, max_edges):
        checked += 1
        windows = good_windows(walk)
        try:
            found = find_good_subpath(walk)
        except PreconditionError:
            bad.append(walk)
            continue
        shortest = min(j - i for i, j in windows) if windows else None
        if not found.revalidate() or (found.start, found.end) not in windows or found.end - found.start != shortest:
            bad.append(walk)
    report = ExhaustiveReport(max_edges, checked, bad)
    logger.info("good-subpath check over %d walks (<= %d edges): %d counterexamples", checked, max_edges, len(bad))
    return report
