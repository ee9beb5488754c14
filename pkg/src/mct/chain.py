"""Bounded chain complexes over a prime field: homology, the model-structure
classifiers, both fibration criteria, and verified factorizations.

Everything is exact arithmetic mod p.  Matrices are tuples of row tuples;
an m x n matrix sends F_p^n to F_p^m.  Over a field every module is free and
projective, so the cofibration test is degreewise injectivity alone; the
report records that convention.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field


class ChainError(Exception):
    pass


# -- exact linear algebra over F_p -------------------------------------------

def mat(rows) -> tuple:
    return tuple(tuple(int(x) for x in r) for r in rows)


def zeros(m, n) -> tuple:
    return tuple((0,) * n for _ in range(m))


def eye(n) -> tuple:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(A, B, p, cols=None):
    """A·B mod p.  `cols` pins the column count when B has zero rows (the
    empty tuple cannot carry it)."""
    if not A or not B:
        if cols is None:
            cols = len(B[0]) if B else 0
        return zeros(len(A), cols)
    n, k, m = len(A), len(B), len(B[0])
    return tuple(tuple(sum(A[i][t] * B[t][j] for t in range(k)) % p
                       for j in range(m)) for i in range(n))


def mat_add(A, B, p):
    return tuple(tuple((a + b) % p for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_vec(A, v, p):
    return tuple(sum(A[i][j] * v[j] for j in range(len(v))) % p for i in range(len(A)))


def rref(A, p):
    """Reduced row echelon form; returns (R, pivot columns)."""
    R = [list(r) for r in A]
    rows = len(R)
    cols = len(R[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if R[i][c] % p), None)
        if pivot is None:
            continue
        R[r], R[pivot] = R[pivot], R[r]
        inv = pow(R[r][c], p - 2, p)
        R[r] = [(x * inv) % p for x in R[r]]
        for i in range(rows):
            if i != r and R[i][c] % p:
                f = R[i][c]
                R[i] = [(x - f * y) % p for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return tuple(tuple(row) for row in R), pivots


def rank(A, p) -> int:
    if not A or not A[0]:
        return 0
    return len(rref(A, p)[1])


def kernel_basis(A, p, n_cols=None):
    """Basis (as column vectors) of ker A ⊆ F_p^n."""
    n = n_cols if n_cols is not None else (len(A[0]) if A else 0)
    if not A or not A[0]:
        return [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    R, pivots = rref(A, p)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-R[r][fc]) % p
        basis.append(tuple(v))
    return basis


def solve(A, b, p):
    """One solution x of A x = b, or None."""
    if not A or not A[0]:
        return None if any(x % p for x in b) else ()
    rows, cols = len(A), len(A[0])
    aug = [list(A[i]) + [b[i] % p] for i in range(rows)]
    R, pivots = rref(aug, p)
    if cols in pivots:
        return None
    x = [0] * cols
    for r, pc in enumerate(pivots):
        x[pc] = R[r][cols]
    return tuple(x)


def columns(vs) -> tuple:
    """Matrix whose columns are the given vectors."""
    if not vs:
        return ()
    n = len(vs[0])
    return tuple(tuple(v[i] for v in vs) for i in range(n))


def is_surjective(A, p, n_rows) -> bool:
    return rank(A, p) == n_rows


def is_injective(A, p, n_cols) -> bool:
    return rank(A, p) == n_cols


# -- complexes and maps ---------------------------------------------------------

@dataclass(frozen=True)
class ChainComplex:
    """Nonnegatively graded, zero above the top degree N; d[k]: C_k -> C_{k-1}."""
    p: int
    dims: tuple[int, ...]                 # dims[k] for 0 <= k <= N
    d: tuple[tuple, ...]                  # d[k] is a dims[k-1] x dims[k] matrix; d[0] unused

    def __post_init__(self):
        if self.p < 2 or any(self.p % q == 0 for q in range(2, self.p)):
            raise ChainError(f"{self.p} is not prime")
        N = len(self.dims) - 1
        if len(self.d) != N + 1:
            raise ChainError("need one boundary entry per degree (d[0] ignored)")
        for k in range(1, N + 1):
            A = self.d[k]
            if len(A) != self.dims[k - 1] or any(len(r) != self.dims[k] for r in A):
                raise ChainError(f"boundary {k} has the wrong shape")
        for k in range(2, N + 1):
            sq = mat_mul(self.d[k - 1], self.d[k], self.p)
            if any(any(x % self.p for x in row) for row in sq):
                raise ChainError(f"d∘d != 0 between degrees {k} and {k-2}")

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def dim(self, k: int) -> int:
        return self.dims[k] if 0 <= k <= self.top else 0

    def boundary(self, k: int):
        """d_k as a dims[k-1] x dims[k] matrix (zero outside the range)."""
        if 1 <= k <= self.top:
            return self.d[k]
        return zeros(self.dim(k - 1), self.dim(k))


def complex_from_boundaries(p, boundaries: list) -> ChainComplex:
    """Build from a list [d_1, ..., d_N] plus an explicit dims tuple inferred."""
    if not boundaries:
        raise ChainError("empty complex needs explicit dims; use ChainComplex")
    dims = [len(boundaries[0])]
    for A in boundaries:
        dims.append(len(A[0]) if A else 0)
    d = (None,) + tuple(mat(A) for A in boundaries)
    d = (zeros(0, dims[0]),) + tuple(mat(A) for A in boundaries)
    return ChainComplex(p, tuple(dims), d)


def zero_complex(p, top=0) -> ChainComplex:
    dims = (0,) * (top + 1)
    return ChainComplex(p, dims, tuple(zeros(0, 0) for _ in range(top + 1)))


def disk_complex(p, n, top=None) -> ChainComplex:
    """D^n: the field in degrees n and n-1 with identity boundary; acyclic."""
    if n < 1:
        raise ChainError("disks start at n = 1")
    top = max(top or n, n)
    dims = tuple(1 if k in (n, n - 1) else 0 for k in range(top + 1))
    d = [zeros(dims[k - 1] if k else 0, dims[k]) for k in range(top + 1)]
    d[n] = ((1,),)
    return ChainComplex(p, dims, tuple(d))


@dataclass(frozen=True)
class ChainMap:
    source: ChainComplex
    target: ChainComplex
    maps: tuple[tuple, ...]        # maps[k]: source_k -> target_k

    def __post_init__(self):
        A, B = self.source, self.target
        if A.p != B.p:
            raise ChainError("sources and targets must share the prime")
        if A.top != B.top:
            raise ChainError("pad complexes to a common top degree first")
        for k in range(A.top + 1):
            f = self.maps[k]
            if len(f) != B.dim(k) or any(len(r) != A.dim(k) for r in f):
                raise ChainError(f"component {k} has the wrong shape")
        p = A.p
        for k in range(1, A.top + 1):
            lhs = mat_mul(self.maps[k - 1], A.boundary(k), p, cols=A.dim(k))
            rhs = mat_mul(B.boundary(k), self.maps[k], p, cols=A.dim(k))
            if lhs != rhs:
                raise ChainError(f"not a chain map at degree {k}")

    @property
    def p(self):
        return self.source.p


def identity_map(C: ChainComplex) -> ChainMap:
    return ChainMap(C, C, tuple(eye(C.dim(k)) for k in range(C.top + 1)))


def compose_maps(g: ChainMap, f: ChainMap) -> ChainMap:
    if f.target.dims != g.source.dims or f.target.d != g.source.d:
        raise ChainError("maps are not composable")
    return ChainMap(f.source, g.target,
                    tuple(mat_mul(g.maps[k], f.maps[k], f.p, cols=f.source.dim(k))
                          for k in range(f.source.top + 1)))


# -- homology -------------------------------------------------------------------

def cycles(C: ChainComplex, k: int):
    """Basis of Z_k = ker d_k (all of C_k when k = 0)."""
    return kernel_basis(C.boundary(k), C.p, n_cols=C.dim(k))


def homology(C: ChainComplex, k: int):
    """(dimension, basis of representing cycles) of H_k."""
    if k < 0 or k > C.top:
        return 0, []
    p = C.p
    zk = cycles(C, k)
    rank_b = rank(C.boundary(k + 1), p)
    dim_h = len(zk) - rank_b
    # representatives: extend a basis of B_k by members of Z_k
    boundary_cols = [tuple(col) for col in zip(*C.boundary(k + 1))] \
        if C.dim(k + 1) and C.dim(k) else []
    chosen = []
    current = [c for c in boundary_cols]
    base_rank = rank(columns(current), p) if current else 0
    for z in zk:
        if len(chosen) == dim_h:
            break
        cand = current + [z]
        if rank(columns(cand), p) > base_rank:
            chosen.append(z)
            current = cand
            base_rank += 1
    return dim_h, chosen


def induced_homology_iso(f: ChainMap, k: int) -> bool:
    """Does f induce an isomorphism H_k(source) -> H_k(target)?"""
    p = f.p
    A, B = f.source, f.target
    da, ra = homology(A, k)
    db, rb = homology(B, k)
    if da != db:
        return False
    if da == 0:
        return True
    # images of the chosen source cycles, expressed modulo boundaries of B:
    # injectivity of the induced map suffices when dimensions agree.
    b_cols = [tuple(col) for col in zip(*B.boundary(k + 1))] if B.dim(k + 1) else []
    images = [mat_vec(f.maps[k], z, p) for z in ra]
    base = rank(columns(b_cols), p) if b_cols else 0
    total = rank(columns(b_cols + images), p)
    return total - base == da


# -- classifiers -----------------------------------------------------------------

@dataclass
class MapClassification:
    weak_equivalence: bool
    fibration: bool
    cofibration: bool
    conventions: str = ("fibrations are epi in positive degrees (matching the "
                        "disk lifting criterion); Z_{-1} = 0; cokernels over a "
                        "field are projective")

    def flags(self):
        return (self.weak_equivalence, self.fibration, self.cofibration)


def classify_map(f: ChainMap) -> MapClassification:
    """Quasi-isomorphism, epi in positive degrees, degreewise mono (projective
    cokernel is automatic over a field and recorded in the report).

    A trivial fibration is automatically epi in degree 0 as well: surjectivity
    of H_0 plus surjectivity one degree up forces it.
    """
    p = f.p
    weq = all(induced_homology_iso(f, k) for k in range(f.source.top + 1))
    fib = all(is_surjective(f.maps[k], p, f.target.dim(k))
              for k in range(1, f.source.top + 1))
    cof = all(is_injective(f.maps[k], p, f.source.dim(k))
              for k in range(f.source.top + 1))
    return MapClassification(weq, fib, cof)


def trivial_fibration_pullback_criterion(f: ChainMap) -> bool:
    """Surjectivity of M_n -> Z_{n-1}(M) x_{Z_{n-1}(N)} N_n for every n >= 0.

    Z_{-1} = 0 by convention, so the n = 0 clause is surjectivity of f_0.
    Bounded complexes need the clause one degree above the top as well, where
    both complexes vanish but the top cycles do not.
    """
    p = f.p
    A, B = f.source, f.target
    for n in range(A.top + 2):
        za = cycles(A, n - 1) if n >= 1 else []
        zb = cycles(B, n - 1) if n >= 1 else []
        za_mat = columns(za)       # C_{n-1} x (#za)
        zb_mat = columns(zb)
        # the pullback sits inside Z_{n-1}(M) ⊕ N_n: pairs (z, y) with f(z) = d(y)
        # coordinates: z = za_mat * a, then f_{n-1} za a = d_n^B y
        if n >= 1:
            lhs = mat_mul(f.maps[n - 1], za_mat, p) if za else zeros(B.dim(n - 1), 0)
            rhs = B.boundary(n)
            # kernel of [lhs | -rhs] gives the pullback inside F^{#za} ⊕ N_n
            rows = []
            for i in range(B.dim(n - 1)):
                row = list(lhs[i]) + [(-x) % p for x in rhs[i]]
                rows.append(tuple(row))
            ker = kernel_basis(tuple(rows), p, n_cols=len(za) + B.dim(n))
        else:
            ker = [tuple(v) for v in eye(B.dim(n))]
        # induced map M_n -> pullback: m |-> (coords of d_n m in za, f_n m)
        induced_cols = []
        for j in range(A.dim(n)):
            m_vec = tuple(1 if i == j else 0 for i in range(A.dim(n)))
            if n >= 1:
                dm = mat_vec(A.boundary(n), m_vec, p)
                coeff = solve(za_mat, dm, p)
                if coeff is None:
                    raise ChainError("boundary not a cycle; invalid complex")
                pair = tuple(coeff) + mat_vec(f.maps[n], m_vec, p)
            else:
                pair = mat_vec(f.maps[n], m_vec, p)
            # express the pair in kernel coordinates
            if not ker:
                if any(x % p for x in pair):
                    return False
                induced_cols.append(())
                continue
            coeff = solve(columns(ker), pair, p)
            if coeff is None:
                raise ChainError("induced image escaped the pullback; bug")
            induced_cols.append(coeff)
        pullback_dim = len(ker)
        if rank(columns(induced_cols), p) != pullback_dim:
            return False
    return True


def fibration_disk_criterion(f: ChainMap, up_to_n: int | None = None) -> bool:
    """Right lifting against 0 -> D^n for 1 <= n <= bound, by linear algebra.

    A chain map D^n -> N is an element of N_n; a lift is a preimage under f_n.
    """
    p = f.p
    bound = up_to_n if up_to_n is not None else f.source.top
    for n in range(1, min(bound, f.source.top) + 1):
        for j in range(f.target.dim(n)):
            target = tuple(1 if i == j else 0 for i in range(f.target.dim(n)))
            if solve(f.maps[n], target, p) is None:
                return False
    return True


# -- factorizations ----------------------------------------------------------------

def _cylinder_complex(f: ChainMap):
    """Mapping cylinder Cyl(f)_k = M_k ⊕ N_k ⊕ M_{k-1} with the usual boundary."""
    A, B = f.source, f.target
    p = f.p
    dims = tuple(A.dim(k) + B.dim(k) + A.dim(k - 1) for k in range(A.top + 1))
    boundaries = [zeros(0, dims[0])]
    for k in range(1, A.top + 1):
        rows = dims[k - 1]
        cols = dims[k]
        Amat = A.boundary(k)
        Bmat = B.boundary(k)
        Am1 = A.boundary(k - 1)
        M = [[0] * cols for _ in range(rows)]
        a_k, b_k, s_k = A.dim(k), B.dim(k), A.dim(k - 1)
        a_k1, b_k1, s_k1 = A.dim(k - 1), B.dim(k - 1), A.dim(k - 2)
        # block layout (rows: M_{k-1} | N_{k-1} | M_{k-2}), (cols: M_k | N_k | M_{k-1})
        for i in range(a_k1):
            for j in range(a_k):
                M[i][j] = Amat[i][j] % p
            for j in range(s_k):
                M[i][b_k + a_k + j] = (-1 if i == j else 0) % p
        for i in range(b_k1):
            for j in range(b_k):
                M[a_k1 + i][a_k + j] = Bmat[i][j] % p
            for j in range(s_k):
                M[a_k1 + i][a_k + b_k + j] = f.maps[k - 1][i][j] % p
        for i in range(s_k1):
            for j in range(s_k):
                M[a_k1 + b_k1 + i][a_k + b_k + j] = (-Am1[i][j]) % p
        boundaries.append(mat(M))
    cyl = ChainComplex(p, dims, tuple(boundaries))
    # i: M -> Cyl and proj: Cyl -> N
    i_maps, p_maps = [], []
    for k in range(A.top + 1):
        a_k, b_k, s_k = A.dim(k), B.dim(k), A.dim(k - 1)
        i_rows = [[1 if j == r else 0 for j in range(a_k)] for r in range(a_k)]
        i_rows += [[0] * a_k for _ in range(b_k + s_k)]
        i_maps.append(mat(i_rows))
        pr = [[0] * (a_k + b_k + s_k) for _ in range(b_k)]
        for r in range(b_k):
            for j in range(a_k):
                pr[r][j] = f.maps[k][r][j] % p
            pr[r][a_k + r] = 1
        p_maps.append(mat(pr))
    return cyl, tuple(i_maps), tuple(p_maps)


def _disk_sum_complex(B: ChainComplex):
    """E = ⊕_{n>=1} D^n ⊗ N_n: level k holds a top copy N_k and a bottom copy
    N_{k+1}, with the boundary (a, b) -> (0, a).  Acyclic in every degree.

    Returns (E, eps) where eps: E -> N is the chain map id on top copies and
    the target boundary on bottom copies; eps is epi in positive degrees.
    """
    p = B.p
    dims = tuple(B.dim(k) + B.dim(k + 1) for k in range(B.top + 1))
    boundaries = [zeros(0, dims[0])]
    for k in range(1, B.top + 1):
        rows, cols = dims[k - 1], dims[k]
        M = [[0] * cols for _ in range(rows)]
        # top copy N_k at level k maps identically onto the bottom copy
        # N_k at level k-1 (which sits after the top copy N_{k-1})
        for i in range(B.dim(k)):
            M[B.dim(k - 1) + i][i] = 1
        boundaries.append(mat(M))
    E = ChainComplex(p, dims, tuple(boundaries))
    eps = []
    for k in range(B.top + 1):
        n_top, n_bot = B.dim(k), B.dim(k + 1)
        Bd1 = B.boundary(k + 1)
        rows = [[0] * (n_top + n_bot) for _ in range(B.dim(k))]
        for r in range(B.dim(k)):
            rows[r][r] = 1
            for j in range(n_bot):
                rows[r][n_top + j] = Bd1[r][j] % p
        eps.append(mat(rows))
    return E, tuple(eps)


def _direct_sum(A: ChainComplex, B: ChainComplex):
    p = A.p
    dims = tuple(A.dim(k) + B.dim(k) for k in range(A.top + 1))
    boundaries = [zeros(0, dims[0])]
    for k in range(1, A.top + 1):
        M = [[0] * dims[k] for _ in range(dims[k - 1])]
        for i in range(A.dim(k - 1)):
            for j in range(A.dim(k)):
                M[i][j] = A.boundary(k)[i][j]
        for i in range(B.dim(k - 1)):
            for j in range(B.dim(k)):
                M[A.dim(k - 1) + i][A.dim(k) + j] = B.boundary(k)[i][j]
        boundaries.append(mat(M))
    return ChainComplex(p, dims, tuple(boundaries))


def factor_map(f: ChainMap):
    """Two verified factorizations of f:

    variant "a": cofibration then trivial fibration (mapping cylinder);
    variant "b": trivial cofibration then fibration (inflate by an acyclic
    path complex of the target).

    Both outputs are recertified with classify_map before returning; a failed
    certificate is a construction bug and raises.
    """
    A, B = f.source, f.target
    p = f.p

    cyl, i_maps, p_maps = _cylinder_complex(f)
    i_a = ChainMap(A, cyl, i_maps)
    p_a = ChainMap(cyl, B, p_maps)
    ca, cb = classify_map(i_a), classify_map(p_a)
    if not ca.cofibration:
        raise ChainError("cylinder inclusion failed the cofibration certificate")
    if not (cb.fibration and cb.weak_equivalence):
        raise ChainError("cylinder projection failed the trivial-fibration certificate")
    if compose_maps(p_a, i_a).maps != f.maps:
        raise ChainError("cylinder factorization does not compose to f")

    P, eps = _acyclic_path_complex(B)
    S = _direct_sum(A, P)
    i_maps_b, p_maps_b = [], []
    for k in range(A.top + 1):
        a_k, p_k = A.dim(k), P.dim(k)
        rows = [[1 if j == r else 0 for j in range(a_k)] for r in range(a_k)]
        rows += [[0] * a_k for _ in range(p_k)]
        i_maps_b.append(mat(rows))
        pr = [[0] * (a_k + p_k) for _ in range(B.dim(k))]
        for r in range(B.dim(k)):
            for j in range(a_k):
                pr[r][j] = f.maps[k][r][j] % p
            for j in range(p_k):
                pr[r][a_k + j] = eps[k][r][j] % p
        p_maps_b.append(mat(pr))
    i_b = ChainMap(A, S, tuple(i_maps_b))
    p_b = ChainMap(S, B, tuple(p_maps_b))
    ca2, cb2 = classify_map(i_b), classify_map(p_b)
    if not (ca2.cofibration and ca2.weak_equivalence):
        raise ChainError("path-sum inclusion failed the trivial-cofibration certificate")
    if not cb2.fibration:
        raise ChainError("path-sum projection failed the fibration certificate")
    if compose_maps(p_b, i_b).maps != f.maps:
        raise ChainError("path-sum factorization does not compose to f")
    return {"a": (i_a, p_a), "b": (i_b, p_b)}


def cylinder_connecting_map(f: ChainMap, g: ChainMap, u: ChainMap, v: ChainMap) -> ChainMap:
    """Cyl(f) -> Cyl(g) induced by a square (u, v): f -> g; shows the mapping
    cylinder construction is functorial on squares."""
    if compose_maps(v, f).maps != compose_maps(g, u).maps:
        raise ChainError("square does not commute")
    cyl_f, _, _ = _cylinder_complex(f)
    cyl_g, _, _ = _cylinder_complex(g)
    p = f.p
    maps = []
    for k in range(f.source.top + 1):
        rows = cyl_g.dim(k)
        cols = cyl_f.dim(k)
        M = [[0] * cols for _ in range(rows)]
        a_k, b_k, s_k = f.source.dim(k), f.target.dim(k), f.source.dim(k - 1)
        a2, b2, s2 = g.source.dim(k), g.target.dim(k), g.source.dim(k - 1)
        for i in range(a2):
            for j in range(a_k):
                M[i][j] = u.maps[k][i][j] % p
        for i in range(b2):
            for j in range(b_k):
                M[a2 + i][a_k + j] = v.maps[k][i][j] % p
        for i in range(s2):
            for j in range(s_k):
                M[a2 + b2 + i][a_k + b_k + j] = u.maps[k - 1][i][j] % p
        maps.append(mat(M))
    return ChainMap(cyl_f, cyl_g, tuple(maps))


# -- random generation (seeded; used by the oracle suites) -----------------------

def random_complex(rng: random.Random, p: int, top: int, max_dim: int) -> ChainComplex:
    """Random bounded complex: d is built degreewise so that d∘d = 0 exactly,
    by choosing each boundary with image inside the kernel of the previous."""
    dims = [rng.randrange(max_dim + 1) for _ in range(top + 1)]
    boundaries = [zeros(0, dims[0])]
    prev_kernel = [tuple(1 if i == j else 0 for i in range(dims[0]))
                   for j in range(dims[0])]
    for k in range(1, top + 1):
        cols = dims[k]
        if not prev_kernel or dims[k - 1] == 0:
            B = zeros(dims[k - 1], cols)
            boundaries.append(B)
            prev_kernel = kernel_basis(B, p, n_cols=cols)
            continue
        picks = [[rng.randrange(p) for _ in prev_kernel] for _ in range(cols)]
        colsv = []
        for j in range(cols):
            vec = [0] * dims[k - 1]
            for t, z in enumerate(prev_kernel):
                for i in range(dims[k - 1]):
                    vec[i] = (vec[i] + picks[j][t] * z[i]) % p
            colsv.append(tuple(vec))
        B = columns(colsv)
        if not B:
            B = zeros(dims[k - 1], cols)
        boundaries.append(B)
        prev_kernel = kernel_basis(B, p, n_cols=cols)
    return ChainComplex(p, tuple(dims), tuple(boundaries))


def all_chain_map_space(A: ChainComplex, B: ChainComplex):
    """Basis of the linear space of chain maps A -> B.

    Variables are the entries of every component; the chain condition
    d∘f_k = f_{k-1}∘d is one linear equation per (k, i, j).  Returns
    (variable index, kernel basis) where each basis vector is a flat tuple.
    """
    p = A.p
    var_index: dict[tuple[int, int, int], int] = {}
    for k in range(A.top + 1):
        for i in range(B.dim(k)):
            for j in range(A.dim(k)):
                var_index[(k, i, j)] = len(var_index)
    nvars = len(var_index)
    rows = []
    for k in range(1, A.top + 1):
        dB, dA = B.boundary(k), A.boundary(k)
        for i in range(B.dim(k - 1)):
            for j in range(A.dim(k)):
                row = [0] * nvars
                for t in range(B.dim(k)):
                    row[var_index[(k, t, j)]] = (row[var_index[(k, t, j)]]
                                                 + dB[i][t]) % p
                for s in range(A.dim(k - 1)):
                    row[var_index[(k - 1, i, s)]] = (row[var_index[(k - 1, i, s)]]
                                                     - dA[s][j]) % p
                rows.append(tuple(row))
    basis = kernel_basis(tuple(rows), p, n_cols=nvars)
    return var_index, basis


def _vector_to_chain_map(A, B, var_index, vec) -> ChainMap:
    maps = []
    for k in range(A.top + 1):
        f_k = [[0] * A.dim(k) for _ in range(B.dim(k))]
        for i in range(B.dim(k)):
            for j in range(A.dim(k)):
                f_k[i][j] = vec[var_index[(k, i, j)]] % A.p
        maps.append(mat(f_k))
    return ChainMap(A, B, tuple(maps))


def random_map_between(rng: random.Random, p: int, top: int, max_dim: int) -> ChainMap:
    """A uniformly random chain map between two random complexes."""
    A = random_complex(rng, p, top, max_dim)
    B = random_complex(rng, p, top, max_dim)
    var_index, basis = all_chain_map_space(A, B)
    vec = [0] * len(var_index)
    for z in basis:
        c = rng.randrange(p)
        if c:
            for i, zi in enumerate(z):
                vec[i] = (vec[i] + c * zi) % p
    return _vector_to_chain_map(A, B, var_index, vec)


# -- file format ------------------------------------------------------------------

def parse_chain_file(text: str):
    """`chain p=<prime> N=<top>`, `dim k = n`, `d k = [[...]]`, `map k = [[...]]`.

    Returns (ChainComplex, maps dict by degree or None).
    """
    import ast
    p = top = None
    dims: dict[int, int] = {}
    ds: dict[int, tuple] = {}
    fs: dict[int, tuple] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("chain"):
            parts = dict(tok.split("=") for tok in line.split()[1:])
            p, top = int(parts["p"]), int(parts["N"])
        elif line.startswith("dim"):
            head, val = line.split("=")
            k = int(head.split()[1])
            dims[k] = int(val)
        elif line.startswith("d "):
            head, val = line.split("=", 1)
            ds[int(head.split()[1])] = mat(ast.literal_eval(val.strip()))
        elif line.startswith("map"):
            head, val = line.split("=", 1)
            fs[int(head.split()[1])] = mat(ast.literal_eval(val.strip()))
        else:
            raise ChainError(f"line {lineno}: unknown directive")
    if p is None:
        raise ChainError("missing chain header")
    dim_tuple = tuple(dims.get(k, 0) for k in range(top + 1))
    boundaries = [zeros(0, dim_tuple[0])]
    for k in range(1, top + 1):
        boundaries.append(ds.get(k, zeros(dim_tuple[k - 1], dim_tuple[k])))
    C = ChainComplex(p, dim_tuple, tuple(boundaries))
    maps = tuple(fs.get(k, zeros(0, 0)) for k in range(top + 1)) if fs else None
    return C, maps
