"""Exact computations with racks and quandles."""

from .alex import (
    LaurentPoly,
    RackRingElement,
    alexander_matrix,
    alexander_polynomial,
    project_quandle,
    project_zero,
    pullback_lift,
    rackring_mul,
)
from .free import enumerate_free, extend_to_rack, free_model
from .homology import (
    homology_groups,
    quandle_chain_complex,
    rack_chain_complex,
    smith_normal_form,
)
from .present import (
    QuandlePresentation,
    associated_group,
    count_colorings,
    group_abelianization,
    import_pd,
    knot_fixture,
    wirtinger,
)
from .racks import (
    AbelianRackModule,
    FiniteRack,
    check_quandle,
    check_rack,
    dihedral_quandle,
    module_to_rack,
    trivial_rack,
)
from .words import Alphabet, Word

__version__ = "0.1.0"
