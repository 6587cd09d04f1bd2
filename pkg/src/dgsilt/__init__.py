"""Exact toolkit for dg path algebras and silting mutation.

Layers:

- :mod:`dgsilt.linalg`: exact rational matrices, cochain complexes, radicals;
- :mod:`dgsilt.quiver`: graded quivers with differentials and their validation;
- :mod:`dgsilt.criteria`: arrow-counting criteria for Ext dimensions, global
  dimension, mutation admissibility, and cycle obstructions;
- :mod:`dgsilt.algebra` and :mod:`dgsilt.engine`: the exact derived-category
  engine (resolutions, Serre twists, mutation, endomorphism algebras) that
  independently cross-checks the criteria;
- :mod:`dgsilt.quiverfile`, :mod:`dgsilt.cli`: text format and batch front end.
"""

from .algebra import (
    BasisElement,
    DgModuleValue,
    FinDimDgAlgebra,
    algebra_from_quiver,
    h0_dimension,
    simple_module,
)
from .criteria import (
    ExtTable,
    MutationVerdict,
    ext_simples,
    ext_table,
    global_dimension,
    mutation_check,
    nu_obstruction_cycle,
    projdim_simple,
)
from .engine import (
    DriWindowReport,
    Generator,
    Morphism,
    Resolution,
    SemifreeModule,
    SiltingPresentation,
    cone,
    dri_window,
    endomorphism_algebra,
    ext_engine,
    fine_mutation_check,
    hom_complex,
    is_d_silting,
    left_approximation,
    minimal_model_quiver,
    mutate,
    projective_summand,
    resolve,
    seed,
    seed_from_quiver,
    semifree_resolution,
    serre_twist,
    silt_order_check,
)
from .linalg import (
    ChainSpaces,
    Matrix,
    algebra_radical,
    cohomology_dims,
    nullspace_basis,
    rank,
)
from .quiver import (
    Arrow,
    DgQuiver,
    Path,
    PathSum,
    Vertex,
    check_d_squared,
    enumerate_paths,
    is_graph_acyclic,
    leibniz,
    subquiver_by_degree,
    validate,
)
from .quiverfile import QuiverDocument, load_quiver, parse, serialize

__version__ = "0.1.0"
