"""aptc_verify: step-semantics verification toolkit for APTC process terms.

Subpackages:
- algebra      term language, environments, recursion
- semantics    step transition systems built from the operational rules
- rewriting    axiom-directed rewriting and cluster collapse
- equivalence  step / rooted branching step / bounded pomset bisimulation
- dsl          the .aptc pattern language
- corpus       bundled pattern specifications
"""

__version__ = "0.3.0"
