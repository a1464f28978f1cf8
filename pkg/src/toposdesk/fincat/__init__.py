from .category import CategoryError, FinCategory, monoid_one_e
from .presheaf import (NatTrans, Presheaf, PresheafError, SubobjectLattice, Subpresheaf, exists_along,
                       forall_along, heyting_implication, negation, projection, pullback,
                       subobject_lattice)
from .sheaf import Sheafification, is_sheaf, matching_families, plus, sheafify, sheafify_negneg
from .topology import (BooleanCore, ClosedSieves, Sieve, Topology, TopologyError, YonedaVerdict,
                       all_sieves, bits, boolean_core, closed_sieves, from_covering, from_minimal,
                       is_boolean_site, is_dense, is_sieve, is_two_valued, jkappa_covers_literal,
                       jkappa_topology, mask_of, negneg_topology, principal, pullback_sieve,
                       subterminals, trivial_topology, yoneda_check)
