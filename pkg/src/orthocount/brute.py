"""Brute-force matrix groups over prime fields.

Groups are stored as complete element arrays of shape (N, d, d) with entries
in 0..p-1.  Elements are found by a column-by-column search: column j of g
is the image of e_j, and it must have the right Q-value and the right
bilinear pairings with the columns already chosen.  Because the bilinear
form is non-degenerate this search yields exactly the isometries, so it is a
complete enumeration.  A generator-closure builder is kept as a second,
independent construction.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .degrees import GroupSpec, group_order
from .ffpoly import factor_prime_power

log = logging.getLogger(__name__)

ORDER_LIMIT = 200_000


def _prime(q: int) -> int:
    p, k = factor_prime_power(q)
    if k != 1:
        raise ValueError(f"brute-force groups need a prime field, got q = {q}")
    return p


def _nonsquare(p: int) -> int:
    squares = {x * x % p for x in range(1, p)}
    return min(x for x in range(1, p) if x not in squares)


def inverse_mod(M: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a square matrix over F_p by Gauss-Jordan elimination."""
    d = M.shape[0]
    A = np.concatenate([M.astype(np.int64) % p, np.eye(d, dtype=np.int64)], axis=1)
    for c in range(d):
        piv = next((r for r in range(c, d) if A[r, c]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        A[[c, piv]] = A[[piv, c]]
        A[c] = A[c] * pow(int(A[c, c]), -1, p) % p
        for r in range(d):
            if r != c and A[r, c]:
                A[r] = (A[r] - A[r, c] * A[c]) % p
    return A[:, d:]


def rank_mod(M, p: int) -> int:
    A = [[int(x) % p for x in row] for row in M]
    rows, cols = len(A), len(A[0]) if A else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [x * inv % p for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        r += 1
    return r


def det_mod(M, p: int) -> int:
    A = [[int(x) % p for x in row] for row in M]
    d, det = len(A), 1
    for c in range(d):
        piv = next((i for i in range(c, d) if A[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det = det * A[c][c] % p
        inv = pow(A[c][c], -1, p)
        for i in range(c + 1, d):
            if A[i][c]:
                f = A[i][c] * inv % p
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[c])]
    return det % p


# ---------------------------------------------------------------------------
# forms


@dataclass(frozen=True)
class QuadraticSpace:
    """Q(v) = v^T A v with A upper triangular; B = A + A^T is the polar form."""

    q: int
    n: int
    type: int
    A: tuple

    @property
    def dim(self) -> int:
        return 2 * self.n

    @cached_property
    def matrix(self) -> np.ndarray:
        return np.array(self.A, dtype=np.int64)

    @cached_property
    def gram(self) -> np.ndarray:
        return (self.matrix + self.matrix.T) % self.q

    def Q(self, v) -> int:
        v = np.asarray(v, dtype=np.int64)
        return int(v @ self.matrix @ v % self.q)

    def B(self, u, v) -> int:
        return int(np.asarray(u) @ self.gram @ np.asarray(v) % self.q)


def quadratic_space(n: int, q: int, tau: int) -> QuadraticSpace:
    """x_1 x_2n + ... + x_n x_{n+1}; for minus type the middle hyperbolic pair
    becomes x^2 + xy + y^2 (q = 2) or x^2 - delta y^2 with delta a non-square."""
    p = _prime(q)
    if n < 1 or tau not in (1, -1):
        raise ValueError("need n >= 1 and type +1 or -1")
    d = 2 * n
    A = np.zeros((d, d), dtype=np.int64)
    for i in range(n):
        A[i, d - 1 - i] = 1
    if tau == -1:
        i, j = n - 1, n
        A[i, j] = 0
        if p == 2:
            A[i, i], A[i, j], A[j, j] = 1, 1, 1
        else:
            A[i, i], A[j, j] = 1, (-_nonsquare(p)) % p
    space = QuadraticSpace(q, n, tau, tuple(map(tuple, A.tolist())))
    if rank_mod(space.gram, p) != d:
        raise AssertionError("polar form is degenerate")
    return space


def symplectic_gram(n: int, q: int) -> np.ndarray:
    """[[0, -I], [I, 0]] over F_q."""
    I = np.eye(n, dtype=np.int64)
    Z = np.zeros((n, n), dtype=np.int64)
    return np.block([[Z, -I], [I, Z]]) % q


def swap_middle(n: int, q: int) -> np.ndarray:
    """The coordinate swap of x_n and x_{n+1}; it lies in O+ but not SO+."""
    h = np.eye(2 * n, dtype=np.int64)
    h[[n - 1, n]] = h[[n, n - 1]]
    return h


# ---------------------------------------------------------------------------
# groups


@dataclass
class MatrixGroup:
    spec: GroupSpec
    elements: np.ndarray          # (N, d, d), entries mod p
    gram: np.ndarray              # the preserved bilinear form
    space: QuadraticSpace | None = None
    method: str = "enumerate"

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def p(self) -> int:
        return self.spec.q

    @property
    def dim(self) -> int:
        return self.elements.shape[1]

    @cached_property
    def keys(self) -> set:
        return set(_keys(self.elements))

    def __contains__(self, g) -> bool:
        return _key(np.asarray(g)) in self.keys

    @cached_property
    def inverses(self) -> np.ndarray:
        """g^{-1} = G^{-1} g^T G for every element, G the preserved form."""
        ginv = inverse_mod(self.gram, self.p)
        t = np.transpose(self.elements, (0, 2, 1)).astype(np.int64)
        return (ginv @ t @ self.gram % self.p).astype(np.uint8)

    @cached_property
    def so_mask(self) -> np.ndarray:
        return np.array([_in_so(g, self.p) for g in self.elements], dtype=bool)

    def subgroup(self, mask: np.ndarray, spec: GroupSpec) -> "MatrixGroup":
        return MatrixGroup(spec, self.elements[mask], self.gram, self.space, self.method)


def _key(g: np.ndarray) -> bytes:
    return np.ascontiguousarray(g, dtype=np.uint8).tobytes()


def _keys(arr: np.ndarray) -> list[bytes]:
    flat = np.ascontiguousarray(arr, dtype=np.uint8).reshape(len(arr), -1)
    return [row.tobytes() for row in flat]


def _in_so(g: np.ndarray, p: int) -> bool:
    d = g.shape[0]
    if p == 2:
        return rank_mod((g + np.eye(d, dtype=np.int64)) % 2, 2) % 2 == 0
    return det_mod(g, p) == 1


def _vectors(d: int, p: int) -> np.ndarray:
    return np.array(list(itertools.product(range(p), repeat=d)), dtype=np.int64)


def _enumerate_isometries(gram: np.ndarray, p: int, qvals: np.ndarray | None) -> np.ndarray:
    """All g with g^T gram g = gram (and Q(g e_j) = Q(e_j) when qvals is given).

    ``qvals`` is the diagonal of the quadratic-form matrix, i.e. Q(e_j).
    """
    d = gram.shape[0]
    vecs = _vectors(d, p)
    pair = vecs @ gram @ vecs.T % p                      # B(v, w) for all pairs
    base = []
    for j in range(d):
        if qvals is None:
            base.append(np.ones(len(vecs), dtype=bool))
        else:
            base.append(qvals[1] == qvals[0][j])
    found = []
    cols = [0] * d

    def rec(j, mask):
        idx = np.nonzero(mask)[0]
        for v in idx:
            cols[j] = v
            if j == d - 1:
                found.append(tuple(cols))
                continue
            nxt = base[j + 1].copy()
            for i in range(j + 1):
                nxt &= pair[cols[i]] == gram[i, j + 1]
            rec(j + 1, nxt)

    rec(0, base[0])
    if not found:
        return np.zeros((0, d, d), dtype=np.uint8)
    c = np.array(found)
    return np.transpose(vecs[c], (0, 2, 1)).astype(np.uint8)


def _orthogonal_elements(space: QuadraticSpace) -> np.ndarray:
    p = space.q
    vecs = _vectors(space.dim, p)
    qv = np.einsum("vi,ij,vj->v", vecs, space.matrix, vecs) % p
    qvals = (np.diag(space.matrix) % p, qv)
    return _enumerate_isometries(space.gram, p, qvals)


def _reflections(space: QuadraticSpace) -> list[np.ndarray]:
    """v -> v - B(v,w)/Q(w) w for every w with Q(w) != 0 (transvections for p = 2)."""
    p, d = space.q, space.dim
    out = []
    for w in _vectors(d, p)[1:]:
        qw = space.Q(w)
        if qw:
            M = (np.eye(d, dtype=np.int64)
                 - pow(qw, -1, p) * np.outer(w, w @ space.gram)) % p
            out.append(M)
    return out


def _symplectic_transvections(gram: np.ndarray, p: int) -> list[np.ndarray]:
    """x -> x + c <x, v> v for v != 0, c != 0, with <x, v> = x^T gram v."""
    d = gram.shape[0]
    out = []
    for v in _vectors(d, p)[1:]:
        for c in range(1, p):
            out.append((np.eye(d, dtype=np.int64) + c * np.outer(v, gram @ v)) % p)
    return out


def closure(generators: list[np.ndarray], p: int, limit: int) -> np.ndarray:
    """Breadth-first closure of a generating set (right multiplication)."""
    d = generators[0].shape[0]
    gens = np.array(generators, dtype=np.int64)
    ident = np.eye(d, dtype=np.uint8)[None]
    seen = {_key(ident[0])}
    elements = [ident]
    frontier = ident.astype(np.int64)
    while len(frontier):
        new = []
        for g in gens:
            prod = (frontier @ g % p).astype(np.uint8)
            for k, m in zip(_keys(prod), prod):
                if k not in seen:
                    seen.add(k)
                    new.append(m)
        if len(seen) > limit:
            raise RuntimeError(f"closure exceeded {limit} elements")
        frontier = np.array(new, dtype=np.int64) if new else np.zeros((0, d, d), np.int64)
        if new:
            elements.append(np.array(new, dtype=np.uint8))
    return np.concatenate(elements)


def build_group(spec: GroupSpec, method: str = "enumerate") -> MatrixGroup:
    """All elements of O^tau(2n,q), SO^tau(2n,q) or Sp(2n,q) for prime q.

    ``method`` is "enumerate" (column search) or "closure" (generated by
    reflections or transvections; falls back to enumeration if the
    generators only give a proper subgroup).
    """
    p = _prime(spec.q)
    target = group_order(spec)
    if target > ORDER_LIMIT:
        raise ValueError(f"{spec} has {target} elements, beyond the brute-force limit")
    if method not in ("enumerate", "closure"):
        raise ValueError(f"unknown construction method {method!r}")
    if spec.kind == "Sp":
        gram = symplectic_gram(spec.n, p)
        if method == "closure":
            elems = closure(_symplectic_transvections(gram, p), p, target)
        else:
            elems = _enumerate_isometries(gram, p, None)
        group = MatrixGroup(spec, elems, gram, None, method)
    else:
        space = quadratic_space(spec.n, p, spec.type)
        o_spec = GroupSpec("O", spec.n, spec.q, spec.type)
        o_target = group_order(o_spec)
        used = method
        if method == "closure":
            elems = closure(_reflections(space), p, o_target)
            if len(elems) != o_target:
                log.info("closure for %s stalled at %d of %d elements; enumerating",
                         o_spec, len(elems), o_target)
                elems, used = _orthogonal_elements(space), "enumerate"
        else:
            elems = _orthogonal_elements(space)
        group = MatrixGroup(o_spec, elems, space.gram, space, used)
        if spec.kind == "SO":
            group = group.subgroup(group.so_mask, spec)
    if len(group) != target:
        raise AssertionError(f"{spec}: built {len(group)} elements, expected {target}")
    return group


# ---------------------------------------------------------------------------
# counting


def so_membership(g, space: QuadraticSpace) -> bool:
    """True iff the isometry g lies in SO: det 1 (q odd), rank(g+I) even (q even)."""
    g = np.asarray(g, dtype=np.int64) % space.q
    if not is_orthogonal(g, space):
        raise ValueError("matrix does not preserve the quadratic form")
    return _in_so(g, space.q)


def is_orthogonal(g, space: QuadraticSpace) -> bool:
    g = np.asarray(g, dtype=np.int64)
    p = space.q
    if not np.array_equal(g.T @ space.gram @ g % p, space.gram):
        return False
    qcols = np.einsum("ij,ik,kj->j", g, space.matrix, g) % p
    return bool(np.array_equal(qcols, np.diag(space.matrix) % p))


def _square_is_identity(elems: np.ndarray, p: int) -> np.ndarray:
    e = elems.astype(np.int64)
    sq = e @ e % p
    return (sq == np.eye(e.shape[1], dtype=np.int64)).all(axis=(1, 2))


def count_involutions(group: MatrixGroup, coset: str = "all") -> int:
    """#{g : g^2 = 1} in the group, in SO, or in O \\ SO (identity included)."""
    if coset not in ("all", "SO", "O-minus-SO"):
        raise ValueError(f"unknown coset selector {coset!r}")
    elems = group.elements
    if coset != "all":
        if group.spec.kind != "O":
            raise ValueError("coset selectors need a full orthogonal group")
        elems = elems[group.so_mask if coset == "SO" else ~group.so_mask]
    return int(_square_is_identity(elems, group.p).sum())


def count_twisted_involutions_sp(group: MatrixGroup) -> int:
    """#{g in Sp(2n,q) : y g y^{-1} = g^{-1}} with y = diag(I, -I), q odd."""
    if group.spec.kind != "Sp":
        raise ValueError("expected a symplectic group")
    p, n = group.p, group.spec.n
    if p % 2 == 0:
        raise ValueError("the twisted count is defined here for odd q only")
    y = np.diag([1] * n + [p - 1] * n).astype(np.int64)
    conj = y @ group.elements.astype(np.int64) @ y % p
    return int((conj == group.inverses).all(axis=(1, 2)).sum())


def coset_involutions(o_group: MatrixGroup) -> np.ndarray:
    other = o_group.elements[~o_group.so_mask]
    return other[_square_is_identity(other, o_group.p)]


def sigma_representative(o_group: MatrixGroup) -> np.ndarray:
    """The middle swap for plus type, otherwise the first involution of O \\ SO."""
    spec = o_group.spec
    if spec.type == 1:
        h = swap_middle(spec.n, spec.q)
        if h in o_group:
            return h.astype(np.uint8)
    return coset_involutions(o_group)[0]


def count_sigma_twisted(so_group: MatrixGroup, o_group: MatrixGroup) -> int:
    """#{g in SO : h g h = g^{-1}} for the involution h = sigma_representative."""
    h = sigma_representative(o_group).astype(np.int64)
    conj = h @ so_group.elements.astype(np.int64) @ h % so_group.p
    return int((conj == so_group.inverses).all(axis=(1, 2)).sum())


def check_strongly_sigma_real(so_group: MatrixGroup, o_group: MatrixGroup
                              ) -> tuple[bool, list[np.ndarray]]:
    """Is every g in SO inverted by some involution k in O \\ SO?

    Returns (verdict, elements with no such k).
    """
    if so_group.dim % 4 != 2:
        raise ValueError("strong sigma-reality is checked in dimension 2 mod 4")
    p = so_group.p
    pending = np.arange(len(so_group))
    elems = so_group.elements.astype(np.int64)
    inv = so_group.inverses
    for k in coset_involutions(o_group).astype(np.int64):
        if not len(pending):
            break
        conj = k @ elems[pending] @ k % p
        ok = (conj == inv[pending]).all(axis=(1, 2))
        pending = pending[~ok]
    failures = [so_group.elements[i] for i in pending]
    return not failures, failures
