"""Exclusion-process Markov chain and its exact stationary distribution.

States are words over {hole, particle} of length n, encoded as tuples of
0/1 and ordered by their binary value with the leftmost cell most
significant.  Particles enter on the left at rate alpha, hop right at
rate 1, hop left at rate q, and exit on the right at rate beta; every
rate is divided by n + 1 and the diagonal absorbs the remainder.

The transfer-ansatz weight W(X) of a configuration is the sum of path
weights over all bicolored Motzkin paths projecting onto X; the main
checkable statements are that the stationary probability of X equals
W(X) / Z_n, and that at alpha = beta = 1 the weight of the k-particle
sector is a q-Eulerian polynomial.

All linear algebra is exact over Fractions; there is no floating point
anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .paths import HOLE, PARTICLE, path_weight, scheme_asep, theta_fiber
from .polynomials import MultiPoly

MAX_CHAIN_N = 10
MAX_WEIGHT_N = 12


class ParameterOutOfRange(ValueError):
    pass


class NonUniqueStationary(ArithmeticError):
    pass


def all_configurations(n):
    """All 2^n configurations in increasing binary order (leftmost = MSB)."""
    out = []
    for code in range(2**n):
        out.append(tuple((code >> (n - 1 - j)) & 1 for j in range(n)))
    return out


def parse_configuration(text):
    """'OXO' with X = particle, O = hole (case-insensitive; also accepts .#)."""
    word = []
    for ch in text.strip():
        if ch in "Xx#1":
            word.append(PARTICLE)
        elif ch in "Oo.0":
            word.append(HOLE)
        else:
            raise ValueError(f"bad configuration letter {ch!r}")
    return tuple(word)


def format_configuration(config):
    return "".join("X" if c == PARTICLE else "O" for c in config)


@dataclass(frozen=True)
class MarkovChain:
    n: int
    alpha: Fraction
    beta: Fraction
    q: Fraction
    states: tuple
    matrix: tuple  # row-stochastic, matrix[i][j] = P(states[i] -> states[j])


@dataclass(frozen=True)
class StationaryDistribution:
    chain: MarkovChain
    pi: tuple

    def probability(self, config):
        return self.pi[self.chain.states.index(tuple(config))]


def build_chain(n, alpha, beta, q):
    """Transition matrix of the n-cell chain; rows sum to exactly 1."""
    if not 1 <= n <= MAX_CHAIN_N:
        raise ParameterOutOfRange(f"n must be in 1..{MAX_CHAIN_N}")
    alpha, beta, q = Fraction(alpha), Fraction(beta), Fraction(q)
    if not (0 < alpha <= 1 and 0 < beta <= 1 and 0 <= q <= 1):
        raise ParameterOutOfRange("need 0 < alpha, beta <= 1 and 0 <= q <= 1")
    states = all_configurations(n)
    index = {s: i for i, s in enumerate(states)}
    size = 2**n
    denom = Fraction(1, n + 1)
    rows = [[Fraction(0)] * size for _ in range(size)]
    for i, state in enumerate(states):
        for j in range(n - 1):
            if state[j] == PARTICLE and state[j + 1] == HOLE:
                other = state[:j] + (HOLE, PARTICLE) + state[j + 2 :]
                rows[i][index[other]] += denom
            elif state[j] == HOLE and state[j + 1] == PARTICLE:
                other = state[:j] + (PARTICLE, HOLE) + state[j + 2 :]
                rows[i][index[other]] += q * denom
        if state[0] == HOLE:
            rows[i][index[(PARTICLE,) + state[1:]]] += alpha * denom
        if state[-1] == PARTICLE:
            rows[i][index[state[:-1] + (HOLE,)]] += beta * denom
    for i in range(size):
        off = sum(rows[i]) - rows[i][i]
        rows[i][i] = 1 - off
        assert sum(rows[i]) == 1
    return MarkovChain(
        n=n,
        alpha=alpha,
        beta=beta,
        q=q,
        states=tuple(states),
        matrix=tuple(tuple(r) for r in rows),
    )


def _null_space(matrix):
    """Null-space basis of a square matrix over Fractions (Gaussian elimination)."""
    size = len(matrix)
    m = [list(row) for row in matrix]
    pivot_cols = []
    row = 0
    for col in range(size):
        pivot = next((r for r in range(row, size) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        pv = m[row][col]
        m[row] = [x / pv for x in m[row]]
        for r in range(size):
            if r != row and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[row])]
        pivot_cols.append(col)
        row += 1
        if row == size:
            break
    free_cols = [c for c in range(size) if c not in pivot_cols]
    basis = []
    for free in free_cols:
        vec = [Fraction(0)] * size
        vec[free] = Fraction(1)
        for r, col in enumerate(pivot_cols):
            vec[col] = -m[r][free]
        basis.append(vec)
    return basis


def stationary(chain):
    """Exact stationary vector: the one-dimensional null space of P^T - I,
    normalized to sum 1 and re-verified against the chain."""
    size = len(chain.states)
    a = [
        [chain.matrix[j][i] - (1 if i == j else 0) for j in range(size)]
        for i in range(size)
    ]
    basis = _null_space(a)
    if len(basis) != 1:
        raise NonUniqueStationary(f"stationary nullity {len(basis)}, expected 1")
    vec = basis[0]
    total = sum(vec)
    if total == 0:
        raise NonUniqueStationary("degenerate null vector")
    pi = [x / total for x in vec]
    if any(x < 0 for x in pi):
        raise NonUniqueStationary("null vector is not signable to a distribution")
    for j in range(size):
        assert sum(pi[i] * chain.matrix[i][j] for i in range(size)) == pi[j]
    return StationaryDistribution(chain=chain, pi=tuple(pi))


def config_weight_symbolic(config):
    """W(X) at alpha = beta = 1 as a polynomial in q."""
    config = tuple(config)
    if len(config) > MAX_WEIGHT_N:
        raise ValueError(f"configuration longer than {MAX_WEIGHT_N}")
    scheme = scheme_asep(1, 1)
    total = MultiPoly.zero()
    for path in theta_fiber(config):
        total = total + path_weight(path, scheme)
    return total


def config_weight(config, alpha, beta, q):
    """W(X) as an exact rational for rational parameters."""
    config = tuple(config)
    if len(config) > MAX_WEIGHT_N:
        raise ValueError(f"configuration longer than {MAX_WEIGHT_N}")
    scheme = scheme_asep(alpha, beta, Fraction(q))
    total = Fraction(0)
    for path in theta_fiber(config):
        total += path_weight(path, scheme).constant_value()
    return total


def partition_function(n, alpha, beta, q):
    """Z_n: the sum of W(X) over all 2^n configurations."""
    if n > MAX_WEIGHT_N:
        raise ValueError(f"n capped at {MAX_WEIGHT_N}")
    return sum(
        config_weight(cfg, alpha, beta, q) for cfg in all_configurations(n)
    )


def partition_function_symbolic(n):
    if n > MAX_WEIGHT_N:
        raise ValueError(f"n capped at {MAX_WEIGHT_N}")
    total = MultiPoly.zero()
    for cfg in all_configurations(n):
        total = total + config_weight_symbolic(cfg)
    return total


def k_particle_polynomial(n, k):
    """Total ansatz weight of the k-particle sector at alpha = beta = 1."""
    if not 0 <= k <= n <= MAX_CHAIN_N:
        raise ValueError(f"need 0 <= k <= n <= {MAX_CHAIN_N}")
    total = MultiPoly.zero()
    for cfg in all_configurations(n):
        if sum(cfg) == k:
            total = total + config_weight_symbolic(cfg)
    return total


@dataclass(frozen=True)
class AnsatzRow:
    config: str
    pi: Fraction
    weight: Fraction
    ansatz_probability: Fraction
    match: bool


@dataclass(frozen=True)
class AnsatzReport:
    n: int
    alpha: Fraction
    beta: Fraction
    q: Fraction
    z: Fraction
    rows: tuple

    @property
    def all_match(self):
        return all(r.match for r in self.rows)


def verify_matrix_ansatz(n, alpha, beta, q):
    """Exact check of pi(X) = W(X)/Z_n for every configuration."""
    if n > 8:
        raise ValueError("exact solve capped at n = 8")
    chain = build_chain(n, alpha, beta, q)
    dist = stationary(chain)
    weights = [config_weight(cfg, alpha, beta, q) for cfg in chain.states]
    z = sum(weights)
    rows = []
    for cfg, pi, w in zip(chain.states, dist.pi, weights):
        prob = w / z
        rows.append(
            AnsatzRow(
                config=format_configuration(cfg),
                pi=pi,
                weight=w,
                ansatz_probability=prob,
                match=(prob == pi),
            )
        )
    return AnsatzReport(
        n=n, alpha=chain.alpha, beta=chain.beta, q=chain.q, z=z, rows=tuple(rows)
    )
