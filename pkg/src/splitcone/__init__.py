"""Exact polyhedral tools for equidistant circular split networks."""
from .cone import (Facet, Membership, NotInCone, RayTau, TooSmall, all_rays, decompose, facet_incidence,
                   facets, membership, ray_vector, rays_of_face, recover_weights)
from .cry import (CRYMatrix, NotInPolytope, TooLarge, count_lattice_points, cry_vertices, normalized_volume,
                  pedc_vertices, phi, psi)
from .metric import (DissimilarityMatrix, WeightVector, check_equidistant, check_four_point, check_kalmanson,
                     check_metric, distance, full_matrix)
from .netviz import SplitNetworkGraph, build_network, render_network, render_polygon, verify_split_graph
from .splits import (CheckResult, NotCircular, RootTrivial, Split, SplitSystem, canonicalize, complete_system,
                     pairwise_compatible, polygon_diagonals, separates)
from .xdiagram import (InvalidTightSet, TildeMatrix, XDiagram, check_rules, ray_for_tight_set, render_ascii,
                       tilde, xdiagram_of)

__version__ = "0.1.0"
