"""
Graphviz DOT export of balls, complement components and path overlays
"""
import logging
from pathlib import Path
from typing import Any, List, Optional, Sequence, Tuple, Union

import jinja2
import seaborn as sns

from graphs.ball import Ball
from metric.paths import PathRecord
from separation.components import ComponentReport

logger = logging.getLogger(__name__)

PALETTE_SIZE = 12
# fixed palette; component k always gets PALETTE[k % PALETTE_SIZE]
PALETTE = sns.color_palette("husl", PALETTE_SIZE).as_hex()
OVERLAY_COLORS = ["#000000", "#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#8c564b"]
TUBE_COLOR = "#999999"


def _create_env() -> jinja2.Environment:
    template_dir = Path(__file__).parent / "templates"
    return jinja2.Environment(
        loader=jinja2.FileSystemLoader(str(template_dir)),
        trim_blocks=True,
        lstrip_blocks=True,
        autoescape=False,
    )


def component_color(cid: int) -> str:
    return PALETTE[cid % PALETTE_SIZE]


def _quote(v: Any) -> str:
    return str(v).replace("\\", "\\\\").replace('"', '\\"')


def _path_edges(ball: Ball, path: PathRecord, keep: set) -> List[Tuple[int, int]]:
    idx = ball.indices_of(path.vertices)
    return [(a, b) for a, b in zip(idx, idx[1:]) if a in keep and b in keep]


def render_dot(
    ball: Ball,
    components: Sequence[ComponentReport] = (),
    overlays: Sequence[Tuple[str, PathRecord]] = (),
    vertices: Optional[Sequence[int]] = None,
    title: str = "",
) -> str:
    """
    Render a ball, or the subgraph induced on ``vertices``, as DOT text

    Args:
        ball: Materialized ball
        components: Complement components, coloured by id; other vertices
            stay grey
        overlays: Named paths drawn as thick coloured edges (loops, segments)
        vertices: Ball indices to keep; defaults to the whole ball
        title: Graph label

    Returns:
        DOT source; identical inputs give identical text
    """
    keep = sorted(set(range(len(ball)) if vertices is None else vertices))
    kept = set(keep)
    label = {i: c.id for c in components for i in c.members}
    nodes = []
    for i in keep:
        cid = label.get(i, -1)
        nodes.append({
            "index": i,
            "label": _quote(ball.vertices[i]),
            "color": component_color(cid) if cid >= 0 else None,
            "boundary": ball.on_boundary(i),
        })
    edges = [(i, j) for i in keep for j in ball.adjacency[i] if j > i and j in kept]
    overlay_rows = [
        {"name": _quote(name), "color": OVERLAY_COLORS[k % len(OVERLAY_COLORS)], "edges": _path_edges(ball, p, kept)}
        for k, (name, p) in enumerate(overlays)
    ]
    legend = [
        {
            "id": c.id,
            "color": component_color(c.id),
            "text": f"#{c.id} size={c.size} depth={c.max_depth_from_base}" + (" wide" if c.wide else ""),
        }
        for c in components
    ]
    template = _create_env().get_template("graph.dot.j2")
    return template.render(
        name=_quote(ball.family),
        title=_quote(title or repr(ball)),
        tube_color=TUBE_COLOR,
        nodes=nodes,
        edges=edges,
        overlays=overlay_rows,
        legend=legend,
    )


def write_dot(path: Union[str, Path], *args, **kwargs) -> Path:
    path = Path(path)
    path.write_text(render_dot(*args, **kwargs), encoding="utf-8")
    logger.info("DOT written to %s", path)
    return path
