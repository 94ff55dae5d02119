from .catalog import (alternating, baumslag_solitar, catalog, cyclic, dihedral, free,
                      free_abelian, heisenberg, integers, lamplighter, permutation_group,
                      symmetric, trivial)
from .combinators import (combine, direct, enumerate_markings, free_product, generates_semidecide,
                          subgroup_marking)
from .group import (GroupSequence, MarkedGroup, NormalFormTable, SpecError, bit, check_lawful,
                    from_bits)
from .limits import constant_sequence, cyclic_sequence, limit, markings_sequence
from .malcev_rabin import ModelError, MrModel, mr_model

__all__ = [
    "MarkedGroup", "GroupSequence", "NormalFormTable", "SpecError", "bit", "from_bits",
    "check_lawful", "catalog", "trivial", "free_abelian", "integers", "cyclic", "free",
    "baumslag_solitar", "permutation_group", "dihedral", "symmetric", "alternating",
    "heisenberg", "lamplighter", "combine", "direct", "free_product", "subgroup_marking",
    "generates_semidecide", "enumerate_markings", "limit", "constant_sequence",
    "cyclic_sequence", "markings_sequence", "MrModel", "ModelError", "mr_model",
]
