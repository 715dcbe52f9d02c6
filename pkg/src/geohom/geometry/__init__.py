"""Exact geometry: objects, predicates, scenes, the unit grid and SVG output."""
from .objects import (
    ConvexPolygon,
    Disk,
    GeoObject,
    GeometryError,
    Point,
    Polyline,
    Segment,
    Triangle,
    intersects,
)
from .scene import (
    FatReport,
    GridRect,
    Scene,
    SceneFormatError,
    area,
    bounding_box,
    cell_cliques,
    intersection_graph,
    intersection_graph_naive,
    object_rect,
    validate_fat_similarly_sized,
)
from .svg import render_svg

__all__ = [
    "ConvexPolygon",
    "Disk",
    "FatReport",
    "GeoObject",
    "GeometryError",
    "GridRect",
    "Point",
    "Polyline",
    "Scene",
    "SceneFormatError",
    "Segment",
    "Triangle",
    "area",
    "bounding_box",
    "cell_cliques",
    "intersection_graph",
    "intersection_graph_naive",
    "intersects",
    "object_rect",
    "render_svg",
    "validate_fat_similarly_sized",
]
