"""cycloset: exact q-cyclotomic coset enumeration through prime-power towers.

The structured path (`enumerate_cosets`) computes representatives and
sizes of all multiply-by-q orbits on Z/nZ in closed form, one prime-power
tower at a time; the oracle path (`enumerate_naive`) sweeps the whole
ring. `verify` holds the two against each other.
"""

from .arith import (
    CAPACITY,
    CapacityError,
    LadicPrefix,
    PrimePowerQ,
    as_prime_power,
    carmichael,
    factorize,
    is_prime,
    lte_odd,
    lte_two,
    mul_order,
    mulmod,
    phi_digits,
    phi_prefix,
    powmod,
    val,
    val_pow_minus_one,
)
from .cosets import (
    ORACLE_CAP,
    CosetPartition,
    CyclotomicCoset,
    coset_of,
    enumerate_naive,
    leader,
    project,
    size_of,
)
from .system import (
    BranchDescriptor,
    GeneratingSeries,
    Regime,
    SplitKind,
    SplittingTree,
    TreeNode,
    classify,
    component_size,
    degrees,
    digit_complement_S,
    enumerate_branch,
    generating_series,
    lift_representative,
    preimage_decompose,
    splitting_tree,
    transversal_R,
)
from .tower import (
    FactorizationPlan,
    VerificationReport,
    enumerate_cosets,
    factorization_plan,
    lift_partition,
    verify,
    worker_count,
)

__version__ = "0.1.0"

__all__ = [
    "CAPACITY",
    "CapacityError",
    "LadicPrefix",
    "PrimePowerQ",
    "as_prime_power",
    "carmichael",
    "factorize",
    "is_prime",
    "lte_odd",
    "lte_two",
    "mul_order",
    "mulmod",
    "phi_digits",
    "phi_prefix",
    "powmod",
    "val",
    "val_pow_minus_one",
    "ORACLE_CAP",
    "CosetPartition",
    "CyclotomicCoset",
    "coset_of",
    "enumerate_naive",
    "leader",
    "project",
    "size_of",
    "BranchDescriptor",
    "GeneratingSeries",
    "Regime",
    "SplitKind",
    "SplittingTree",
    "TreeNode",
    "classify",
    "component_size",
    "degrees",
    "digit_complement_S",
    "enumerate_branch",
    "generating_series",
    "lift_representative",
    "preimage_decompose",
    "splitting_tree",
    "transversal_R",
    "FactorizationPlan",
    "VerificationReport",
    "enumerate_cosets",
    "factorization_plan",
    "lift_partition",
    "verify",
    "worker_count",
]
