"""The Weil representation of SL(2, Z/2Z) on the 64-dimensional group ring.

The two generator matrices act on rational coordinate vectors indexed by the
64 vectors of the quadratic space: rho_T is diagonal with entries
(-1)^q(alpha), and rho_S has entries (-1)^b(beta, alpha)/8.  Both are kept as
integer numpy matrices with an explicit denominator, so every computation in
this module is exact; there are no tolerance parameters anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

from . import f2geom, linalg
from .f2geom import Subspace


class RationalMatrix:
    """An exact rational matrix stored as integer numpy data over one denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den: int = 1):
        num = np.asarray(num, dtype=np.int64)
        if den < 0:
            num, den = -num, -den
        if den == 0:
            raise ZeroDivisionError
        g = gcd(int(np.gcd.reduce(np.abs(num), axis=None)), den)
        if g > 1:
            num, den = num // g, den // g
        self.num = num
        self.den = den

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(np.eye(n, dtype=np.int64))

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix(self.num @ other.num, self.den * other.den)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalMatrix) and self.den == other.den \
            and np.array_equal(self.num, other.num)

    def __hash__(self):
        return hash((self.num.tobytes(), self.den))

    def trace(self) -> Fraction:
        return Fraction(int(self.num.trace()), self.den)

    def apply(self, vec) -> list[Fraction]:
        v = [Fraction(x) for x in vec]
        return [
            sum((Fraction(int(c)) * x for c, x in zip(row, v)), Fraction(0)) / self.den
            for row in self.num
        ]


@lru_cache(maxsize=None)
def rho_T() -> RationalMatrix:
    diag = [(-1) ** f2geom.q(a) for a in f2geom.SPACE]
    return RationalMatrix(np.diag(diag))


@lru_cache(maxsize=None)
def rho_S() -> RationalMatrix:
    mat = np.array(
        [[(-1) ** f2geom.b(beta, alpha) for alpha in f2geom.SPACE] for beta in f2geom.SPACE],
        dtype=np.int64,
    )
    return RationalMatrix(mat, 8)


def traces() -> dict[str, Fraction]:
    """Traces of the identity, T, S and ST actions."""
    return {
        "E": Fraction(64),
        "T": rho_T().trace(),
        "S": rho_S().trace(),
        "ST": (rho_S() @ rho_T()).trace(),
    }


def character_decomposition() -> tuple[int, int, int]:
    """Multiplicities of the three irreducible characters of SL(2, Z/2Z).

    The group is symmetric of degree 3; conjugacy classes have sizes 1, 3, 2
    with T in the involution class and ST in the 3-cycle class.
    """
    t = traces()
    chi = (t["E"], t["T"], t["ST"])
    table = ((1, 1, 1), (1, -1, 1), (2, 0, -1))
    sizes = (1, 3, 2)
    mult = []
    for row in table:
        m = sum(Fraction(s) * c * v for s, c, v in zip(sizes, chi, row)) / 6
        if m.denominator != 1:
            raise ArithmeticError("character inner product is not integral")
        mult.append(int(m))
    return tuple(mult)


# ---------------------------------------------------------------------------
# invariant vectors


@lru_cache(maxsize=None)
def invariant_subspace() -> tuple[tuple[Fraction, ...], ...]:
    """Canonical basis of the joint fixed space of rho_T and rho_S."""
    ech = linalg.EchelonForm(64)
    t = rho_T()
    s = rho_S()
    eye = np.eye(64, dtype=np.int64)
    for row in (t.num - t.den * eye):
        ech.add_row([int(x) for x in row])
    for row in (s.num - s.den * eye):
        ech.add_row([int(x) for x in row])
    return tuple(tuple(v) for v in ech.nullspace())


def isotropic_sum_vector(iso: Subspace) -> np.ndarray:
    vec = np.zeros(64, dtype=np.int64)
    vec[list(f2geom.span(iso))] = 1
    return vec


def is_invariant(vec) -> bool:
    """Exact membership test for the fixed space of rho_T and rho_S."""
    v = [Fraction(x) for x in vec]
    return rho_T().apply(v) == v and rho_S().apply(v) == v


@lru_cache(maxsize=None)
def singular_vector(subspace: Subspace) -> tuple[int, ...]:
    """The signed invariant vector attached to a maximal totally singular subspace.

    The isotropic kernel plane of the subspace extends to exactly two maximal
    totally isotropic subspaces; the vector is +1 on the first extension, -1
    on the second, and the shared plane cancels, leaving 8 entries of +-1.
    """
    if not f2geom.is_singular(subspace):
        raise ValueError("need a maximal totally singular subspace")
    plane = f2geom.kernel_plane(subspace)
    plus, minus = f2geom.isotropic_plane_extensions(plane)
    vec = [0] * 64
    for x in f2geom.span(plus):
        vec[x] += 1
    for x in f2geom.span(minus):
        vec[x] -= 1
    return tuple(vec)


def permute_coordinates(perm, vec):
    """The action of a point permutation g: e_x -> e_{g(x)} on coordinates."""
    out = [0] * 64
    for x in range(64):
        out[perm[x]] = vec[x]
    return type(vec)(out) if isinstance(vec, tuple) else out


def minus_one_eigenspace(subspace: Subspace) -> tuple[int, tuple[int, ...] | None]:
    """Joint (-1)-eigenspace of the transvections at the subspace's anisotropic vectors.

    Solved combinatorially: the constraints v[t(x)] = -v[x] propagate signs
    along an edge-labelled graph on the 64 points; each sign-consistent
    component without a forced zero contributes one dimension.  Returns the
    dimension together with a spanning vector when the dimension is 1.
    """
    aniso, _ = f2geom.singular_members(subspace)
    perms = [f2geom.transvection(a) for a in aniso]
    assignment: dict[int, int] = {}
    component_vectors = []
    dim = 0
    for start in range(64):
        if start in assignment:
            continue
        comp = {start: 1}
        stack = [start]
        alive = True
        while stack:
            x = stack.pop()
            for p in perms:
                y = p[x]
                want = -comp[x]
                if y == x:
                    alive = False  # v[x] = -v[x] forces zero on the component
                elif y in comp:
                    if comp[y] != want:
                        alive = False
                else:
                    comp[y] = want
                    stack.append(y)
        for x in comp:
            assignment[x] = comp[x]
        if alive:
            dim += 1
            component_vectors.append(comp)
    if dim == 1:
        vec = [0] * 64
        for x, sgn in component_vectors[0].items():
            vec[x] = sgn
        return dim, tuple(vec)
    return dim, None


@lru_cache(maxsize=None)
def space_w_rank() -> int:
    """Rank of the span of the 105 singular-subspace vectors."""
    rows = [singular_vector(v) for v in f2geom.enumerate_singular_subspaces()]
    return linalg.rank(rows, 64)


def fixed_line_dimension() -> int:
    """Dimension of the orthogonal-group-fixed part of the invariant space.

    The group generated by the transvections is transitive on each of the
    three vector types, so its fixed vectors are exactly the type-constant
    ones; those conditions are intersected exactly with the fixed space of
    rho_T and rho_S.
    """
    ech = linalg.EchelonForm(64)
    t, s = rho_T(), rho_S()
    eye = np.eye(64, dtype=np.int64)
    for row in (t.num - t.den * eye):
        ech.add_row([int(x) for x in row])
    for row in (s.num - s.den * eye):
        ech.add_row([int(x) for x in row])
    # v_x = v_y whenever x and y share a type
    anchor = {}
    for x in f2geom.SPACE:
        tt = f2geom.classify(x)
        if tt in anchor:
            row = [0] * 64
            row[anchor[tt]] = 1
            row[x] = -1
            ech.add_row(row)
        else:
            anchor[tt] = x
    return 64 - ech.rank


def triple_sign_identity(v1: Subspace, v2: Subspace, v3: Subspace) -> list[tuple[int, int]]:
    """Sign pairs (s2, s3) with f1 - s2*f2 == s3*f3, f1 fixed canonical."""
    f1 = np.array(singular_vector(v1))
    f2v = np.array(singular_vector(v2))
    f3 = np.array(singular_vector(v3))
    hits = []
    for s2 in (1, -1):
        for s3 in (1, -1):
            if np.array_equal(f1 - s2 * f2v, s3 * f3):
                hits.append((s2, s3))
    return hits
