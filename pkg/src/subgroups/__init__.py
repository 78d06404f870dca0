from src.subgroups.identities import (ClosureResult, identity_residuals, power_bound_check, power_premise_constant,
                                      subgroup_closure_check, subgroup_examples, uniqueness_residual)

__all__ = [
    'ClosureResult', 'identity_residuals', 'power_bound_check', 'power_premise_constant', 'subgroup_closure_check',
    'subgroup_examples', 'uniqueness_residual'
]
