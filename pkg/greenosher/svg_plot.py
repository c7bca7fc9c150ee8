# Copyright 2024 The planar-greenosher developers
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""SVG 1.1 figures of a body pair

Coordinates are written in body units inside a group that flips the y axis, so
path data can be compared directly against boundary points.
"""

import logging
import xml.etree.ElementTree as ET
from typing import Optional

import numpy as np
from numpy.typing import NDArray

from .body_io import PathType
from .config import Settings, resolve_settings
from .dilation import DilationCertificate, certify
from .green_osher import relative_curvature_radius
from .support_body import SupportBody, boundary_points, scale

logger = logging.getLogger(__name__)

SVG_NS = "http://www.w3.org/2000/svg"
BOUNDARY_SAMPLES = 512
PIXELS = 480


def path_data(points: NDArray[np.float64]) -> str:
    """Closed polyline through the rows of `points`."""
    head = "M{:.15g} {:.15g}".format(*points[0])
    rest = "".join("L{:.15g} {:.15g}".format(x, y) for x, y in points[1:])
    return head + rest + "Z"


def _curve(
    parent: ET.Element, points: NDArray[np.float64], ident: str, color: str, dashed: bool = False
) -> ET.Element:
    attrs = {
        "id": ident,
        "d": path_data(points),
        "fill": "none",
        "stroke": color,
        "stroke-width": "1.5",
        "vector-effect": "non-scaling-stroke",
    }
    if dashed:
        attrs["stroke-dasharray"] = "6 4"
    return ET.SubElement(parent, "path", attrs)


def figure(
    k: SupportBody,
    l: SupportBody,
    certificate: Optional[DilationCertificate] = None,
    rho: bool = False,
    samples: int = BOUNDARY_SAMPLES,
    settings: Optional[Settings] = None,
) -> ET.Element:
    """Build the SVG tree: both boundaries, the origin, and r dL, R dL dashed.

    :param certificate: radii to draw; computed with :py:func:`certify` if
        omitted
    :param rho: add a polar plot of the relative curvature radius to the right
    :param samples: points per boundary
    """
    settings = settings or resolve_settings()
    if certificate is None:
        certificate = certify(k, l, settings=settings)
    pk = boundary_points(k, samples)
    pl = boundary_points(l, samples)
    inner = boundary_points(scale(l, certificate.r), samples)
    outer = boundary_points(scale(l, certificate.R), samples)
    extent = float(np.max(np.abs(np.vstack((pk, pl, outer, np.zeros((1, 2)))))))
    half = 1.1 * extent
    width = 2 * half
    polar: Optional[NDArray[np.float64]] = None
    if rho:
        profile = relative_curvature_radius(k, l, settings=settings)
        stride = max(1, profile.node_count // samples)
        values = profile.values[::stride]
        theta = profile.thetas[::stride]
        # inset of the same size as the main panel
        radius = half / (1.1 * float(np.max(values)))
        polar = np.column_stack(
            (radius * values * np.cos(theta), radius * values * np.sin(theta))
        )
        width *= 2

    root = ET.Element(
        "svg",
        {
            "xmlns": SVG_NS,
            "version": "1.1",
            "width": f"{PIXELS * width / (2 * half):.0f}",
            "height": f"{PIXELS}",
            "viewBox": f"{-half:.15g} {-half:.15g} {width:.15g} {2 * half:.15g}",
        },
    )
    main = ET.SubElement(root, "g", {"id": "bodies", "transform": "scale(1,-1)"})
    _curve(main, pk, "boundary-K", "#1f77b4")
    _curve(main, pl, "boundary-L", "#d62728")
    _curve(main, inner, "inner-L", "#7f7f7f", dashed=True)
    _curve(main, outer, "outer-L", "#7f7f7f", dashed=True)
    ET.SubElement(
        main,
        "circle",
        {"id": "origin", "cx": "0", "cy": "0", "r": f"{0.015 * half:.6g}", "fill": "#000000"},
    )
    if polar is not None:
        inset = ET.SubElement(
            root,
            "g",
            {"id": "rho-inset", "transform": f"translate({2 * half:.15g},0) scale(1,-1)"},
        )
        _curve(inset, polar, "rho", "#2ca02c")
    return root


def write_svg(root: ET.Element, path: PathType) -> None:
    ET.ElementTree(root).write(path, encoding="utf-8", xml_declaration=True)
    logger.info("Wrote %s", path)
