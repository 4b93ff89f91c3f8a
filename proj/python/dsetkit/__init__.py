"""Exact computations on amenable-group density, finite-sums structures,
polynomial ideals, prime pairs and measure-preserving systems.

Everything is exact: rationals and big integers cross the boundary as
strings (e.g. "49/25").  Group elements, polynomials, sets, systems and
events use the same text grammars as the dsetkit command-line tool.
"""

from ._core import (
    ball,
    banach,
    cesaro,
    correlate,
    coset_ideal,
    density,
    ergodic,
    finite_sums,
    folner_defect,
    goldbach_fq,
    goldbach_int,
    ideal_member,
    invert,
    ip_witness,
    ipstar_falsifier,
    irreducible,
    irreducibles,
    op,
    pigeonhole,
    pp_first_pair,
    pxpx,
    reduce,
    rsets,
    spectrum,
    syndetic,
    tempered,
    visits,
    wm_report,
)

from fractions import Fraction


def rat(s: str) -> Fraction:
    """Convenience: turn an exact rational string from this module into a Fraction."""
    return Fraction(s)


__all__ = [
    "ball",
    "banach",
    "cesaro",
    "correlate",
    "coset_ideal",
    "density",
    "ergodic",
    "finite_sums",
    "folner_defect",
    "goldbach_fq",
    "goldbach_int",
    "ideal_member",
    "invert",
    "ip_witness",
    "ipstar_falsifier",
    "irreducible",
    "irreducibles",
    "op",
    "pigeonhole",
    "pp_first_pair",
    "pxpx",
    "rat",
    "reduce",
    "rsets",
    "spectrum",
    "syndetic",
    "tempered",
    "visits",
    "wm_report",
]
