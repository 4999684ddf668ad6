"""Pinned demonstration instances used by tests, docs, and the acceptance
suite.  All of them are desk-scale and fully enumerable."""

from __future__ import annotations

from .evalset import PairSet
from .inner import make_explicit_code, make_mds_code
from .lrc2 import LrcCode, build_lrc2, make_systematic2
from .lrc3 import Lrc3Code, build_lrc3


def toy2() -> LrcCode:
    """q=5 locality-2 instance: 4 inner rows, two chained pairs, L=2.

    Eight nodes; every node sits on exactly one registered line.
    """
    inner = make_explicit_code(5, [(1, 0), (0, 1), (1, 1), (1, 2)])
    return build_lrc2(inner, PairSet.of([(1, 2), (3, 4)]), L=2)


def toy2_systematic() -> LrcCode:
    """Systematic q=5 instance whose distance meets the locality upper
    bound exactly.

    The parity rows (1,2) and (1,4) are chosen so that no two evaluation
    points are proportional: any two survivors then pin the message, which
    is what pushes the brute-force distance up to the bound.
    """
    inner = make_explicit_code(5, [(1, 0), (0, 1), (1, 2), (1, 4)])
    return make_systematic2(inner, PairSet.of([(1, 2)]), L=2)


def toy3() -> Lrc3Code:
    """q=7 locality-3 instance: 6 Vandermonde rows, all pairs, L=1.

    Rows use the constant-free powers (a, a^2, a^3, a^4) so that the
    sumset spans affinely and the derivative decoder can separate
    constants; the plain (1, a, a^2, a^3) orientation puts every point on
    a hyperplane and is provably undecodable.
    """
    inner = make_mds_code(7, 6, 4, constant_free=True)
    return build_lrc3(inner, PairSet.all_pairs(6), L=1, case="A")


def micro3(q: int = 5) -> Lrc3Code:
    """Two-row locality-3 instance: a 3-point sumset plus one extension.

    Far too small to decode globally (on purpose); its single 4-point line
    makes exhaustive repair checks cheap.
    """
    inner = make_explicit_code(q, [(1, 0), (0, 1)])
    return build_lrc3(inner, PairSet.of([(1, 2)]), L=1, case="A")
