"""stabglue: exact-arithmetic stability conditions glued along semiorthogonal decompositions.

The package builds concrete models of bounded derived categories of
linearly oriented A_n quivers and of categories of morphisms over them,
constructs stability conditions on glued hearts, deforms them through a
slope-tilting family over a region of the upper half-plane, and verifies
every inequality governing the deformation as an exact or
interval-certified predicate.
"""

__version__ = "0.1.0"
