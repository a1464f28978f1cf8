from .lattice import (FinBoolean, FinHeyting, FinPoset, LatticeError, LatticeHom, PreservationVerdict,
                      ResourceError, boolean, chain, check_distributive, check_heyting_preservation,
                      check_residuation, downset_lattice, downset_masks, enumerate_homs, is_isomorphic,
                      powerset, product, upset_masks)
from .catalogue import boolean_catalogue, distributive_lattices, heyting_catalogue, posets, rooted_posets
from .decide import (KripkeModel, NotPropositional, Proved, Refuted, Unknown, batch_eval,
                     classical_models, decide_classical, decide_intuitionistic, evaluate,
                     g4ip_provable, kripke_search)
from .lindenbaum import (BoundedHeyting, Lindenbaum, UndecidedComparison, lindenbaum_boolean,
                         lindenbaum_geometric, lindenbaum_heyting_bounded)
