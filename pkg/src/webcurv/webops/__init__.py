"""Curvature, barycenters and polar maps of webs."""

from .barycenter import (Configuration, barycenter_config, barycenter_foliation,
                         barycenter_point, barycenter_web, beta_star_probe, critical_orbits,
                         cross_ratio, j_invariant, j_invariant_quartic, quartic_invariants)
from .curvature import CurvatureReport, check_TT, curvature, eta_triple, pole_order_along
from .polar import (PolarMap, conjugate, ell_polar_map, match_normal_form, moebius_through,
                    polar_fiber, same_map)

__all__ = [
    "Configuration", "barycenter_config", "barycenter_foliation", "barycenter_point",
    "barycenter_web", "beta_star_probe", "critical_orbits", "cross_ratio", "j_invariant",
    "j_invariant_quartic", "quartic_invariants", "CurvatureReport", "check_TT", "curvature",
    "eta_triple", "pole_order_along", "PolarMap", "ell_polar_map", "polar_fiber",
    "conjugate", "match_normal_form", "moebius_through", "same_map",
]
