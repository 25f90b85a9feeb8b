from .jsonio import dump_json, write_mesh_json, write_scene_json
from .svg import write_svg_polar
from .vrml import write_frame_sequence, write_vrml
from .vrml_reader import VrmlSummary, read_vrml

__all__ = [
    "dump_json",
    "write_mesh_json",
    "write_scene_json",
    "write_svg_polar",
    "write_frame_sequence",
    "write_vrml",
    "read_vrml",
    "VrmlSummary",
]
