"""Centralized numerical tolerances and resource bounds.

Every truncation length and acceptance threshold used by the evaluators is
derived from one of the fields below, so a single record documents the
numerical contract of a run.  CLI flag ``--tolerance key=value`` overrides
individual fields.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace


@dataclass(frozen=True)
class Tolerances:
    # zeta via Euler-Maclaurin
    zeta_tail: float = 1e-12
    # smoothed two-sided approximate functional equation for primitive L
    afe_eps: float = 1e-9
    # K(s, chi) truncated Gauss-sum series
    kseries_tail: float = 1e-9
    # Mellin transforms of test functions
    mellin_eps: float = 1e-10
    # Euler products (E(S) and friends)
    euler_tail: float = 1e-9
    # functional-equation residual threshold (Prop-style all-characters FE)
    fe_residual: float = 1e-7
    # cross-method agreement for the arithmetic factor T(S)
    t_cross: float = 1e-6
    # identity-suite residual threshold
    identity_residual: float = 1e-5
    # residue extrapolation relative error
    residue_rel: float = 0.02

    def override(self, **kw: float) -> "Tolerances":
        return replace(self, **kw)

    @classmethod
    def field_names(cls) -> list[str]:
        return [f.name for f in fields(cls)]


@dataclass(frozen=True)
class Limits:
    # largest sieve bitmap (entries) sieve_family will allocate
    max_sieve: int = 200_000_000
    # hull computations cap (2^k transformed copies)
    max_hull_k: int = 6
    # fixed block size for deterministic moment reductions
    moment_block: int = 4096


DEFAULT_TOL = Tolerances()
DEFAULT_LIMITS = Limits()
