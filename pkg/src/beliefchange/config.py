from dataclasses import dataclass

from .errors import LimitExceeded


@dataclass(frozen=True)
class Limits:
    """Size caps for the exhaustive parts of the engine.

    ``prop_atoms`` bounds truth-table work, ``clause_atoms`` the Horn clause
    universe, ``representatives`` the finite stand-in for a closed theory,
    ``exhaustive_base`` the subset-lattice scan (larger bases go through the
    hitting-set duality engine), ``infra`` the size of enumerated infra
    families and ``family`` the number of kernels/remainders the duality
    engine may produce before giving up.
    """

    prop_atoms: int = 4
    clause_atoms: int = 4
    representatives: int = 256
    exhaustive_base: int = 20
    infra: int = 4096
    family: int = 100_000


DEFAULT_LIMITS = Limits()


def check_limit(what, value, limit):
    if value > limit:
        raise LimitExceeded(what, value, limit)
