"""Natural density of exponentially S-numbers to arbitrary precision."""

from .census import CensusReport, count_members, empirical_density_check
from .coefficients import (
    CoeffTable,
    M_explicit,
    M_recursive,
    PartitionVector,
    coeff_table,
    enumerate_partitions_min2,
    f_partition,
    f_recursive,
    t_coefficient,
)
from .density import DensityResult, F_S_log_at, density_euler_truncated, density_hybrid
from .errors import BudgetError, ExpDensityError, SetSpecError
from .exponent_set import ExponentSet, VSeq, make_set, u, v_seq
from .numerics import BigReal, PrimeTable, moebius, prime_zeta, prime_zeta_tail, sieve_primes, zeta

__version__ = "0.1.0"
