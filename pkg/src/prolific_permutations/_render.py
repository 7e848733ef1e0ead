"""Renders permutation plots, diamond packings and chain graphs as SVG documents."""

from fractions import Fraction
from math import ceil, floor
from typing import Dict, List, Optional, Sequence, Tuple, Union

import jinja2

from prolific_permutations._packing import proof_box, tile_outline
from prolific_permutations._schemas import ChainGraph, Color, DiamondPacking, Permutation, Point, RenderOptions

_JINJA_ENVIRONMENT = jinja2.Environment(
    loader=jinja2.PackageLoader("prolific_permutations", "templates"),
    autoescape=True,
    trim_blocks=True,
    lstrip_blocks=True,
    keep_trailing_newline=True,
)

Number = Union[int, float, Fraction]


def _fmt(value: float) -> str:
    text = f"{value:.3f}".rstrip("0").rstrip(".")
    return "0" if text == "-0" else text


class _Canvas:
    """Maps lattice coordinates to SVG pixels, flipping the y axis."""

    def __init__(self, x_min: int, y_min: int, x_max: int, y_max: int, options: RenderOptions) -> None:
        self.x_min, self.y_min, self.x_max, self.y_max = x_min, y_min, x_max, y_max
        self.options = options

    @property
    def width(self) -> str:
        return _fmt((self.x_max - self.x_min + 2 * self.options.margin) * self.options.scale)

    @property
    def height(self) -> str:
        return _fmt((self.y_max - self.y_min + 2 * self.options.margin) * self.options.scale)

    def x(self, value: Number) -> str:
        return _fmt((float(value) - self.x_min + self.options.margin) * self.options.scale)

    def y(self, value: Number) -> str:
        return _fmt((self.y_max - float(value) + self.options.margin) * self.options.scale)

    def grid_lines(self) -> List[Dict[str, str]]:
        lines = []
        for x in range(self.x_min, self.x_max + 1):
            lines.append({"x1": self.x(x), "y1": self.y(self.y_min), "x2": self.x(x), "y2": self.y(self.y_max)})
        for y in range(self.y_min, self.y_max + 1):
            lines.append({"x1": self.x(self.x_min), "y1": self.y(y), "x2": self.x(self.x_max), "y2": self.y(y)})
        return lines


def _bounding_canvas(coordinates: Sequence[Tuple[Number, Number]], options: RenderOptions) -> _Canvas:
    xs = [coordinate[0] for coordinate in coordinates]
    ys = [coordinate[1] for coordinate in coordinates]
    return _Canvas(floor(min(xs)), floor(min(ys)), ceil(max(xs)), ceil(max(ys)), options)


def _point(canvas: _Canvas, point: Point, fill: str, stroke: str) -> Dict[str, str]:
    return {"cx": canvas.x(point[0]), "cy": canvas.y(point[1]), "fill": fill, "stroke": stroke}


def _shortened_edge(canvas: _Canvas, start: Point, end: Point, trim: float, arrow: bool) -> Dict[str, object]:
    dx, dy = end[0] - start[0], end[1] - start[1]
    length = (dx * dx + dy * dy) ** 0.5
    ux, uy = dx / length * trim, dy / length * trim
    return {
        "x1": canvas.x(start[0] + ux),
        "y1": canvas.y(start[1] + uy),
        "x2": canvas.x(end[0] - ux),
        "y2": canvas.y(end[1] - uy),
        "arrow": arrow,
    }


def _render(canvas: _Canvas, **context: object) -> str:
    options = canvas.options
    context.setdefault("tiles", [])
    context.setdefault("edges", [])
    context.setdefault("arrows", False)
    context.setdefault("proof_box", None)
    return _JINJA_ENVIRONMENT.get_template("figure.svg.j2").render(
        width=canvas.width,
        height=canvas.height,
        options=options,
        grid_lines=canvas.grid_lines() if options.show_grid else [],
        stroke=_fmt(options.stroke_width),
        thin_stroke=_fmt(options.stroke_width / 2),
        radius=_fmt(options.point_radius * options.scale),
        **context,
    )


def _render_permutation(permutation: Permutation, options: RenderOptions) -> str:
    points = permutation.points()
    canvas = _bounding_canvas(points, options)
    return _render(canvas, points=[_point(canvas, point, options.point_fill, options.point_fill) for point in points])


def _render_packing(packing: DiamondPacking, options: RenderOptions) -> str:
    outlines = [tile_outline(packing, index) for index in range(1, packing.n + 1)]
    corners = [vertex for outline in outlines for vertex in outline]
    box = proof_box(packing) if options.show_proof_box else None
    if box is not None:
        corners += [(box.x_min, box.y_min), (box.x_max, box.y_max)]
    canvas = _bounding_canvas(corners, options)

    tiles = [" ".join(f"{canvas.x(x)},{canvas.y(y)}" for x, y in outline) for outline in outlines]
    rectangle = None
    if box is not None:
        rectangle = {
            "x": canvas.x(box.x_min),
            "y": canvas.y(box.y_max),
            "width": _fmt(float(box.x_max - box.x_min) * options.scale),
            "height": _fmt(float(box.y_max - box.y_min) * options.scale),
        }
    points = [_point(canvas, center, options.point_fill, options.point_fill) for center in packing.centers]
    return _render(canvas, tiles=tiles, proof_box=rectangle, points=points)


def _render_chain_graph(graph: ChainGraph, options: RenderOptions) -> str:
    points = graph.permutation.points()
    canvas = _bounding_canvas(points, options)

    rendered_points = []
    for vertex in graph.vertices:
        point = (vertex.position, vertex.value)
        if vertex.color == Color.RED:
            rendered_points.append(_point(canvas, point, options.red, options.red))
        elif vertex.color == Color.BLUE:
            rendered_points.append(_point(canvas, point, "#ffffff", options.blue))
        else:
            rendered_points.append(_point(canvas, point, options.point_fill, options.point_fill))

    trim = options.point_radius * 1.5
    edges = []
    for chain in graph.chains:
        oriented = chain.red_end is not None
        for start, end in zip(chain.path, chain.path[1:]):
            edges.append(_shortened_edge(canvas, points[start - 1], points[end - 1], trim, oriented))
    return _render(canvas, edges=edges, arrows=bool(edges), points=rendered_points)


def render_svg(target: Union[Permutation, DiamondPacking, ChainGraph], options: Optional[RenderOptions] = None) -> str:
    """Renders a permutation plot, a diamond packing or a chain graph as an SVG document.

    The lattice y axis points up. Chain edges are arrows from the red end towards the blue end, red points
    are filled disks, blue points are rings and fixed points stay unmarked. Identical inputs give identical
    documents.

    Args:
        target: What to draw.
        options: Styling. Defaults to :class:`RenderOptions` defaults.

    Returns:
        str: The SVG document.
    """
    options = options or RenderOptions()
    if isinstance(target, DiamondPacking):
        return _render_packing(target, options)
    if isinstance(target, ChainGraph):
        return _render_chain_graph(target, options)
    return _render_permutation(target, options)
