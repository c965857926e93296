"""Exception hierarchy.

Every error carries a short machine-readable ``code`` which the command
line front end reports verbatim.
"""


class CuspError(ValueError):
    code = "invalid_input"


class SingularMatrix(CuspError):
    code = "singular_matrix"


class InvalidSequence(CuspError):
    code = "invalid_sequence"


class NotPositive(CuspError):
    code = "not_positive"


class NotUnimodular(CuspError):
    code = "not_unimodular"


class TraceTooSmall(CuspError):
    code = "trace_too_small"


class NoBlowdownableVertex(CuspError):
    code = "no_blowdownable_vertex"


class SingularIntersectionForm(CuspError):
    code = "singular_intersection_form"


class NotASubgroupLattice(CuspError):
    code = "not_a_subgroup_lattice"


class NotInvariant(CuspError):
    code = "not_invariant"


class OrderNotPrime(CuspError):
    code = "order_not_prime"


class NotInGroup(CuspError):
    code = "not_in_group"


class BEven(CuspError):
    code = "b_even"


class InvalidExponents(CuspError):
    code = "invalid_exponents"
