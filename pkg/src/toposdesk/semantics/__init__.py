from .corpus import formula_corpus, random_formula, random_formulas, sequent_corpus
from .soundness import (Counterexample, RuleInstance, SoundnessReport, TargetMismatch, predicate_instances,
                        predicate_signature, presheaf_targets, propositional_instances, propositional_targets,
                        soundness_suite)
from .structure import (FragmentMismatch, MorphismVerdict, Structure, StructureError, StructureMap,
                        all_valuations, interpret, interpret_batch, is_elementary, is_homomorphism,
                        is_subelementary, leq, sequent_valid, theory_valid)
