"""K-user MIMO interference channel: problem instances and leakage.

A scenario ``(M x N, d)^K`` has K transmitter/receiver pairs. Transmitter
``j`` uses a precoder ``V_j`` (``M_j x d_j``), receiver ``i`` a decoder
``U_i`` (``N_i x d_i``), and ``H[i][j]`` (``N_i x M_j``) is the channel from
transmitter ``j`` to receiver ``i``. Alignment holds when every cross term
``U_i^H H_ij V_j`` (``i != j``) vanishes; the interference leakage is the
total energy left in those cross terms.
"""
from dataclasses import dataclass
import itertools
import re

import numpy as np

__all__ = [
    "ScenarioSpec", "ChannelSet", "BeamformerSet", "RankDiagnostics",
    "DegenerateInputError", "make_scenario", "parse_scenario",
    "count_variables", "count_equations", "check_feasibility",
    "generate_channels", "encode", "decode", "residuals", "leakage",
    "leakage_normalized", "rank_check", "normalize_columns",
    "random_beamformers", "save_channels", "load_channels",
]

_DEGENERATE_NORM = 1e-12


class DegenerateInputError(ValueError):
    """A beamformer column is (numerically) the zero vector."""


@dataclass(frozen=True)
class ScenarioSpec:
    """Per-user antenna and stream counts of a K-user interference channel."""
    K: int
    M: tuple
    N: tuple
    d: tuple

    def __post_init__(self):
        object.__setattr__(self, "M", tuple(int(v) for v in self.M))
        object.__setattr__(self, "N", tuple(int(v) for v in self.N))
        object.__setattr__(self, "d", tuple(int(v) for v in self.d))
        if self.K < 2:
            raise ValueError(f"need at least 2 users, got K={self.K}")
        if not len(self.M) == len(self.N) == len(self.d) == self.K:
            raise ValueError("M, N and d must each have K entries")
        for i, (m, n, d) in enumerate(zip(self.M, self.N, self.d)):
            if m < 1 or n < 1:
                raise ValueError(f"user {i}: antenna counts must be >= 1")
            if not 1 <= d <= min(m, n):
                raise ValueError(
                    f"user {i}: need 1 <= d <= min(M, N), got d={d}, "
                    f"M={m}, N={n}")

    @property
    def symmetric(self):
        return len(set(self.M)) == len(set(self.N)) == len(set(self.d)) == 1

    @property
    def label(self):
        """Compact name such as ``(5x5,2)^3`` (symmetric case only)."""
        if self.symmetric:
            return f"({self.M[0]}x{self.N[0]},{self.d[0]})^{self.K}"
        return "*".join(f"({m}x{n},{d})" for m, n, d in zip(self.M, self.N, self.d))

    @property
    def tag(self):
        """Filesystem-friendly name, e.g. ``5x5x2x3`` (M x N x d x K)."""
        if self.symmetric:
            return f"{self.M[0]}x{self.N[0]}x{self.d[0]}x{self.K}"
        return "_".join(f"{m}x{n}x{d}" for m, n, d in zip(self.M, self.N, self.d))


def make_scenario(K, M, N, d):
    """Symmetric scenario ``(M x N, d)^K``."""
    if K < 2:
        raise ValueError(f"need at least 2 users, got K={K}")
    return ScenarioSpec(K, (M,) * K, (N,) * K, (d,) * K)


def parse_scenario(text):
    """Parse ``MxNxdxK`` (e.g. ``5x5x2x3``) or ``(5x5,2)^3``."""
    s = text.strip().replace(" ", "")
    m = re.fullmatch(r"(\d+)x(\d+)x(\d+)x(\d+)", s)
    if m is None:
        m = re.fullmatch(r"\((\d+)x(\d+),(\d+)\)\^(\d+)", s)
    if m is None:
        raise ValueError(f"cannot parse scenario {text!r}; expected MxNxdxK")
    M, N, d, K = (int(g) for g in m.groups())
    return make_scenario(K, M, N, d)


def count_variables(spec):
    """Return ``(complex_count, real_count)`` of the decision vector."""
    nc = sum((m + n) * d for m, n, d in zip(spec.M, spec.N, spec.d))
    return nc, 2 * nc


def count_equations(spec):
    """Number of scalar alignment equations, sum of d_i*d_j over i != j."""
    return sum(spec.d[i] * spec.d[j]
               for i, j in itertools.permutations(range(spec.K), 2))


def check_feasibility(spec):
    return count_variables(spec)[0] >= count_equations(spec)


@dataclass
class ChannelSet:
    """K-by-K grid of channel matrices; ``H[i][j]`` has shape ``(N_i, M_j)``."""
    spec: ScenarioSpec
    H: list

    def __post_init__(self):
        s = self.spec
        if len(self.H) != s.K or any(len(row) != s.K for row in self.H):
            raise ValueError("channel grid must be K x K")
        for i, j in itertools.product(range(s.K), repeat=2):
            if np.shape(self.H[i][j]) != (s.N[i], s.M[j]):
                raise ValueError(
                    f"H[{i}][{j}] has shape {np.shape(self.H[i][j])}, "
                    f"expected {(s.N[i], s.M[j])}")

    def __getitem__(self, ij):
        i, j = ij
        return self.H[i][j]

    def equals(self, other):
        return self.spec == other.spec and all(
            np.array_equal(a, b) for ra, rb in zip(self.H, other.H)
            for a, b in zip(ra, rb))


@dataclass
class BeamformerSet:
    """Precoders ``V[i]`` (``M_i x d_i``) and decoders ``U[i]`` (``N_i x d_i``)."""
    V: list
    U: list

    def scaled(self, alpha):
        return BeamformerSet([alpha * v for v in self.V], [alpha * u for u in self.U])

    def equals(self, other):
        return all(np.array_equal(a, b) for a, b in zip(self.V + self.U, other.V + other.U))


@dataclass
class RankDiagnostics:
    per_user_rank: list
    per_user_smallest_singular: list
    satisfied: bool


def generate_channels(spec, seed):
    """I.i.d. CN(0, 1) channels, a pure function of ``(spec, seed)``.

    Real and imaginary parts are independent N(0, 1/2). Matrices are drawn
    in ``(i, j)`` lexicographic order from a single generator.
    """
    rng = np.random.default_rng(seed)
    scale = np.sqrt(0.5)
    H = [[None] * spec.K for _ in range(spec.K)]
    for i, j in itertools.product(range(spec.K), repeat=2):
        shape = (spec.N[i], spec.M[j])
        H[i][j] = scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
    return ChannelSet(spec, H)


def _check_shapes(spec, B):
    if len(B.V) != spec.K or len(B.U) != spec.K:
        raise ValueError(f"expected {spec.K} precoders and decoders")
    for i in range(spec.K):
        if np.shape(B.V[i]) != (spec.M[i], spec.d[i]):
            raise ValueError(f"V[{i}] has shape {np.shape(B.V[i])}, "
                             f"expected {(spec.M[i], spec.d[i])}")
        if np.shape(B.U[i]) != (spec.N[i], spec.d[i]):
            raise ValueError(f"U[{i}] has shape {np.shape(B.U[i])}, "
                             f"expected {(spec.N[i], spec.d[i])}")


def _split(z):
    out = np.empty(2 * z.size)
    out[0::2] = z.real
    out[1::2] = z.imag
    return out


def encode(B, spec):
    """Pack beamformers into the flat real decision vector.

    Layout: ``vec(V_1), ..., vec(V_K), vec(U_1^H), ..., vec(U_K^H)``, each
    ``vec`` stacking columns, and every complex scalar stored as the
    adjacent pair ``(real, imag)``.
    """
    _check_shapes(spec, B)
    parts = [np.asarray(v, dtype=complex).ravel(order="F") for v in B.V]
    parts += [np.asarray(u, dtype=complex).conj().T.ravel(order="F") for u in B.U]
    return _split(np.concatenate(parts))


def decode(x, spec):
    """Inverse of :func:`encode`."""
    x = np.asarray(x, dtype=np.float64)
    n_real = count_variables(spec)[1]
    if x.ndim != 1 or x.shape[0] != n_real:
        raise ValueError(f"decision vector must have length {n_real}, got {x.shape}")
    z = x[0::2] + 1j * x[1::2]
    V, U = [], []
    off = 0
    for m, d in zip(spec.M, spec.d):
        V.append(z[off:off + m * d].reshape((m, d), order="F"))
        off += m * d
    for n, d in zip(spec.N, spec.d):
        uh = z[off:off + n * d].reshape((d, n), order="F")
        U.append(uh.conj().T.copy())
        off += n * d
    return BeamformerSet(V, U)


def residuals(H, B):
    """Stacked ``vec(U_i^H H_ij V_j)`` over ordered pairs ``i != j``.

    Blocks follow lexicographic ``(i, j)`` order with ``i`` outermost.
    """
    spec = H.spec
    _check_shapes(spec, B)
    blocks = [(B.U[i].conj().T @ H.H[i][j] @ B.V[j]).ravel(order="F")
              for i, j in itertools.permutations(range(spec.K), 2)]
    return np.concatenate(blocks)


def leakage(H, B):
    """Interference leakage ``r^H r``."""
    r = residuals(H, B)
    return float(np.vdot(r, r).real)


def normalize_columns(B):
    """Rescale every beamformer column to unit Euclidean norm."""
    def unit(A):
        A = np.asarray(A)
        norms = np.linalg.norm(A, axis=0)
        if np.any(norms < _DEGENERATE_NORM):
            raise DegenerateInputError("beamformer has a zero column")
        return A / norms
    return BeamformerSet([unit(v) for v in B.V], [unit(u) for u in B.U])


def leakage_normalized(H, B):
    """Leakage after unit-normalizing every beamformer column.

    Invariant to any positive rescaling of individual columns, so it cannot
    be lowered by shrinking the beamformers towards zero.
    """
    return leakage(H, normalize_columns(B))


def rank_check(H, B, tol=1e-8):
    """Numerical rank of each direct link ``U_i^H H_ii V_i``.

    A singular value counts when it exceeds ``tol`` times the largest one;
    an all-zero matrix has rank 0.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    spec = H.spec
    _check_shapes(spec, B)
    ranks, smallest = [], []
    for i in range(spec.K):
        s = np.linalg.svd(B.U[i].conj().T @ H.H[i][i] @ B.V[i], compute_uv=False)
        smax = s[0] if s.size else 0.0
        ranks.append(int(np.sum(s > tol * smax)) if smax > 0 else 0)
        smallest.append(float(s[-1]) if s.size else 0.0)
    ok = all(r == d for r, d in zip(ranks, spec.d))
    return RankDiagnostics(ranks, smallest, ok)


def random_beamformers(spec, rng, unit=True):
    """Random complex Gaussian beamformers, optionally with unit columns."""
    def draw(rows, cols):
        return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    B = BeamformerSet([draw(m, d) for m, d in zip(spec.M, spec.d)],
                      [draw(n, d) for n, d in zip(spec.N, spec.d)])
    return normalize_columns(B) if unit else B


def save_channels(H, path):
    """Write a channel dump: header ``K M N d`` then one text line per matrix
    row holding ``re im`` pairs, matrices in ``(i, j)`` lexicographic order.
    Floats are written with ``repr`` so the dump round-trips exactly.
    """
    spec = H.spec
    if not spec.symmetric:
        raise ValueError("channel dumps support symmetric scenarios only")
    lines = [f"{spec.K} {spec.M[0]} {spec.N[0]} {spec.d[0]}"]
    for i, j in itertools.product(range(spec.K), repeat=2):
        for row in H.H[i][j]:
            lines.append(" ".join(f"{float(v.real)!r} {float(v.imag)!r}" for v in row))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_channels(path):
    with open(path) as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    try:
        K, M, N, d = (int(t) for t in lines[0].split())
    except (IndexError, ValueError):
        raise ValueError(f"{path}: bad channel dump header") from None
    spec = make_scenario(K, M, N, d)
    rows = lines[1:]
    if len(rows) != K * K * N:
        raise ValueError(f"{path}: expected {K * K * N} matrix rows, got {len(rows)}")
    H = [[None] * K for _ in range(K)]
    for idx, (i, j) in enumerate(itertools.product(range(K), repeat=2)):
        block = np.array([[float(t) for t in ln.split()]
                          for ln in rows[idx * N:(idx + 1) * N]])
        if block.shape != (N, 2 * M):
            raise ValueError(f"{path}: malformed block for H[{i}][{j}]")
        H[i][j] = block[:, 0::2] + 1j * block[:, 1::2]
    return ChannelSet(spec, H)
