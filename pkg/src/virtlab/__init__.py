"""virtlab: a virtual antenna laboratory.

Computes dipole/array far fields, polarization ellipses, radiation
patterns and spherical-coordinate geometry, and publishes them as animated
VRML97 worlds, SVG polar plots, JSON data and an HTTP compute API.
"""

from .farfield import (
    AntennaArray,
    DipoleElement,
    PhasorVec,
    PolarizationEllipse,
    array_farfield,
    decompose,
    element_farfield,
    instantaneous_field,
    pattern_factor,
    polarization,
    polarization_map,
)
from .geometry import (
    BLUE,
    GREEN,
    RED,
    Color,
    Polyline,
    SphericalPoint,
    SurfaceMesh,
    UnitTriple,
    Vec3,
    ccs_to_scs,
    coordinate_curve,
    coordinate_surface_mesh,
    scs_to_ccs,
    sphere_cone_intersection,
    standard_triples,
    unit_triple,
    volume_element,
)
from .patterns import (
    AntiResonantLength,
    DipoleCharacteristics,
    MeasurementTrace,
    PatternGrid,
    PlaneCut,
    SphericalGrid,
    characteristics_sweep,
    directivity,
    first_maximum_from_axis,
    input_radiation_resistance,
    main_plane_cuts,
    measurement_sweep,
    pattern_grid,
    pattern_surface,
    radiated_intensity,
)
from .scenarios import ScenarioSpec, build, catalog, parse_config
from .scene import Scene, Viewpoint, arrow_mesh, axes_triad, default_first_octant_viewpoint
from .waves import (
    TerminatedWire,
    WaveComponents,
    reflection_coefficient,
    rotating_phasor_frames,
    standing_current_profile,
    wave_components,
)

__version__ = "0.1.0"
