"""Randomised invariant checks that count violations.

Each battery returns ``(cases, violations, note)``. They are shared by the
acceptance gate and by smaller smoke tests.
"""

from __future__ import annotations

import numpy as np

from kpclust.clustering import AMBIENT, SUPPORT, ExplicitFinite, solve_exact
from kpclust.measures import DiscreteMeasure, cluster_cost, kl_divergence, tv_distance
from kpclust.metric import EuclideanSpace, FiniteSpace, peter_paul_constant
from kpclust.sets import CenterSet, SolutionFamily, directed_hausdorff, hausdorff, same_set

RTOL = 1e-12
LINE, PLANE = EuclideanSpace(1), EuclideanSpace(2)


def _leq(a, b, rtol=RTOL):
    return a <= b + rtol * max(abs(a), abs(b), 1.0)


def _random_set(rng, space, max_size=4, spread=5.0):
    size = int(rng.integers(1, max_size + 1))
    if isinstance(space, FiniteSpace):
        return CenterSet.of(space, rng.choice(len(space), size=min(size, len(space)), replace=False))
    # integer-valued coordinates make coincident points (and equal sets) likely
    pts = rng.integers(-int(spread), int(spread) + 1, size=(size, space.dim)).astype(float)
    if rng.random() < 0.5:
        pts = pts + rng.normal(scale=0.3, size=pts.shape)
    return CenterSet.of(space, list(pts))


def _random_finite_space(rng, s):
    X = rng.normal(size=(s, 3))
    return FiniteSpace.from_coordinates(list(range(s))) if rng.random() < 0.2 else \
        FiniteSpace(tuple(str(i) for i in range(s)), np.linalg.norm(X[:, None] - X[None], axis=2))


def _spaces(rng):
    r = rng.random()
    if r < 0.4:
        return LINE
    if r < 0.8:
        return PLANE
    return _random_finite_space(rng, int(rng.integers(3, 9)))


def hausdorff_axioms(n: int = 2000, seed: int = 1):
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(n):
        sp = _spaces(rng)
        A, B, C = (_random_set(rng, sp) for _ in range(3))
        ab, ba = hausdorff(sp, A, B), hausdorff(sp, B, A)
        bad += ab != ba
        bad += hausdorff(sp, A, A) != 0.0
        bad += (ab == 0.0) != same_set(A, B, atol=0.0)
        bad += ab < 0
        bad += not _leq(hausdorff(sp, A, C), ab + hausdorff(sp, B, C))
    return n, int(bad), "symmetry, identity of indiscernibles, triangle inequality"


def directed_triangle(n: int = 2000, seed: int = 2):
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(n):
        sp = _spaces(rng)
        A, B, C = (_random_set(rng, sp) for _ in range(3))
        lhs = directed_hausdorff(sp, A, C)
        bad += not _leq(lhs, directed_hausdorff(sp, A, B) + directed_hausdorff(sp, B, C))
    return n, int(bad), "one-sided triangle inequality"


PP_CASES = ((1.0, 0.5), (1.5, 0.1), (2.0, 0.5), (2.0, 3.0), (3.0, 1.0), (4.0, 0.05), (2.5, 10.0))


def _triples(rng, n, dim):
    # mix of generic, near-collinear and heavy-tailed configurations
    x1 = rng.standard_cauchy(size=(n, dim))
    x2 = x1 + rng.normal(size=(n, dim)) * rng.exponential(size=(n, 1))
    t = rng.uniform(-0.5, 1.5, size=(n, 1))
    y = np.where(rng.random((n, 1)) < 0.5, x1 + t * (x2 - x1) * 2, rng.normal(scale=10, size=(n, dim)))
    return x1, x2, y


def peter_paul(n: int = 1_000_000, seed: int = 3):
    """``d^p(x',y) <= c d^p(x',x'') + (1+eps) d^p(x'',y)`` on ``n`` triples per (p, eps)."""
    rng = np.random.default_rng(seed)
    bad = 0
    for p, eps in PP_CASES:
        c = peter_paul_constant(p, eps)
        for dim in (1, 2):
            x1, x2, y = _triples(rng, n // 2, dim)
            a = np.linalg.norm(x1 - y, axis=1) ** p
            b = np.linalg.norm(x1 - x2, axis=1) ** p
            d = np.linalg.norm(x2 - y, axis=1) ** p
            rhs = c * b + (1 + eps) * d
            bad += int(np.sum(a > rhs * (1 + 1e-12) + 1e-300))
    return n * len(PP_CASES), bad, f"(p, eps) in {list(PP_CASES)}"


def comparison(n: int = 1_000_000, seed: int = 4):
    """``d^p(x',y) <= 2^(p-1) (d^p(x',x'') + d^p(x'',y))``."""
    rng = np.random.default_rng(seed)
    bad = 0
    ps = (1.0, 1.5, 2.0, 3.0)
    for p in ps:
        x1, x2, y = _triples(rng, n, 2)
        a = np.linalg.norm(x1 - y, axis=1) ** p
        rhs = 2 ** (p - 1) * (np.linalg.norm(x1 - x2, axis=1) ** p + np.linalg.norm(x2 - y, axis=1) ** p)
        bad += int(np.sum(a > rhs * (1 + 1e-12)))
    return n * len(ps), bad, f"p in {list(ps)}"


def _random_measure(rng, space, max_atoms=8, spread=10.0):
    a = int(rng.integers(1, max_atoms + 1))
    if isinstance(space, FiniteSpace):
        atoms = list(rng.choice(len(space), size=min(a, len(space)), replace=False))
    else:
        atoms = list(rng.normal(scale=spread, size=(a, space.dim)))
    w = rng.dirichlet(np.ones(len(atoms)))
    return DiscreteMeasure.of(space, atoms, w, normalize=True)


def integrated_peter_paul(n: int = 1000, seed: int = 5):
    """``W_p(S', mu) <= c * vecdH(S'', S')^p + (1 + eps) W_p(S'', mu)``.

    The directed distance runs from ``S''`` to ``S'``: each ``x''`` needs a
    nearby point of ``S'``, not the other way round.
    """
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(n):
        sp = _spaces(rng)
        mu = _random_measure(rng, sp)
        S1, S2 = _random_set(rng, sp), _random_set(rng, sp)
        p, eps = PP_CASES[int(rng.integers(len(PP_CASES)))]
        c = peter_paul_constant(p, eps)
        lhs = cluster_cost(mu, S1, p)
        rhs = c * directed_hausdorff(sp, S2, S1) ** p + (1 + eps) * cluster_cost(mu, S2, p)
        bad += not _leq(lhs, rhs, 1e-10)
    return n, int(bad), "random sets and measures on lines, planes and finite spaces"


def pinsker(n: int = 100_000, seed: int = 6):
    """``tv(nu, mu) <= sqrt(KL(nu | mu) / 2)``: vectorised, plus a measure-level sample."""
    rng = np.random.default_rng(seed)
    bad = 0
    s = 6
    P = rng.dirichlet(np.full(s, 0.5), size=n)
    Q = rng.dirichlet(np.full(s, 0.5), size=n)
    drop = rng.random((n, s)) < 0.2
    drop[np.arange(n), P.argmax(axis=1)] = False  # keep at least one atom
    P[drop] = 0.0
    P /= P.sum(axis=1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(P > 0, P * np.log(P / Q), 0.0)
    kl = terms.sum(axis=1)
    tv = 0.5 * np.abs(P - Q).sum(axis=1)
    bad += int(np.sum(tv > np.sqrt(np.maximum(kl, 0) / 2) * (1 + 1e-12) + 1e-15))
    bad += int(np.sum(kl < -1e-15))
    m = 1000
    for _ in range(m):
        nu, mu = _random_measure(rng, LINE, 5, 1.0), _random_measure(rng, LINE, 5, 1.0)
        if rng.random() < 0.5:
            mu = DiscreteMeasure.of(LINE, list(nu.atoms), rng.dirichlet(np.ones(len(nu))), normalize=True)
        bad += not _leq(tv_distance(nu, mu), np.sqrt(kl_divergence(nu, mu) / 2))
    return n + m, bad, "random simplex pairs and DiscreteMeasure pairs"


def _instance(rng):
    """Small exactly solvable instance: (mu, R, p)."""
    kind = rng.random()
    p = float(rng.choice([1.0, 2.0]))
    if kind < 0.35:
        mu = _random_measure(rng, LINE, 8)
        R = AMBIENT
    elif kind < 0.55:
        mu = _random_measure(rng, PLANE, 6)
        R = AMBIENT
    elif kind < 0.8:
        mu = _random_measure(rng, PLANE, 8)
        R = SUPPORT
    else:
        sp = _random_finite_space(rng, int(rng.integers(2, 9)))
        mu = _random_measure(rng, sp, 8)
        grid = rng.choice(len(sp), size=int(rng.integers(1, len(sp) + 1)), replace=False)
        R = ExplicitFinite(tuple(sorted(set(map(int, grid)) | {int(mu.atoms[0])})))
    return mu, R, p


def _candidates_in_support(mu, R):
    if R is AMBIENT or R is SUPPORT:
        return len(mu)
    atoms = set(mu.atoms)
    return sum(1 for x in R.points if x in atoms)


def nonsingular_and_full_cardinality(n: int = 1000, seed: int = 7):
    """``k <= #(R & supp mu)`` gives a non-singular problem whose optima all have k points."""
    rng = np.random.default_rng(seed)
    bad_ns = bad_card = 0
    for _ in range(n):
        mu, R, p = _instance(rng)
        kmax = _candidates_in_support(mu, R)
        k = int(rng.integers(1, min(kmax, 4) + 1))
        sol = solve_exact(mu, k, R, p)
        bad_ns += sol.singular
        if not sol.singular:
            bad_card += any(len(S) != k for S in sol.optima)
    return n, int(bad_ns + bad_card), f"non-singular failures {bad_ns}, short optima {bad_card}"


def _scaled(mu, lam):
    sp = mu.space
    return DiscreteMeasure.of(sp, [tuple(lam * np.asarray(a)) for a in mu.atoms], mu.weights)


def _family_close(F, G, rtol=1e-9):
    if len(F) != len(G):
        return False
    for S, T in zip(F, G):
        if len(S) != len(T):
            return False
        a, b = np.array(S.points, dtype=float), np.array(T.points, dtype=float)
        if not np.allclose(a, b, rtol=rtol, atol=rtol * max(1.0, np.abs(a).max())):
            return False
    return True


def scale_equivariance(n: int = 1000, seed: int = 8):
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(n):
        sp = LINE if rng.random() < 0.6 else PLANE
        mu = _random_measure(rng, sp, 6 if sp is PLANE else 9)
        R = AMBIENT if rng.random() < 0.6 else SUPPORT
        p = float(rng.choice([1.0, 2.0]))
        k = int(rng.integers(1, 4))
        lam = float(rng.choice([0.5, 2.0, 3.0, 0.1]))
        a, b = solve_exact(mu, k, R, p), solve_exact(_scaled(mu, lam), k, R, p)
        ok = abs(b.value - lam ** p * a.value) <= 1e-9 * max(b.value, 1e-300) + 1e-12
        rescaled = [CenterSet.of(sp, [tuple(lam * np.asarray(x)) for x in S.points]) for S in a.optima]
        ok &= _family_close(SolutionFamily.of(rescaled), b.optima)
        bad += not ok
    return n, int(bad), "lambda in {0.1, 0.5, 2, 3}; value scales by lambda^p, centers by lambda"


def permutation_invariance(n: int = 1000, seed: int = 9):
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(n):
        mu, R, p = _instance(rng)
        perm = rng.permutation(len(mu))
        nu = DiscreteMeasure.of(mu.space, [mu.atoms[i] for i in perm], [mu.weights[i] for i in perm])
        k = int(rng.integers(1, 4))
        a, b = solve_exact(mu, k, R, p), solve_exact(nu, k, R, p)
        ok = abs(a.value - b.value) <= 1e-12 * max(a.value, 1.0)
        ok &= a.optima.equals(b.optima)
        bad += not ok
    return n, int(bad), "random atom orders"


ALL = {
    "hausdorff metric axioms": hausdorff_axioms,
    "directed Hausdorff triangle": directed_triangle,
    "Peter-Paul inequality": peter_paul,
    "distance comparison 2^(p-1)": comparison,
    "integrated Peter-Paul": integrated_peter_paul,
    "Pinsker bound": pinsker,
    "non-singularity and full cardinality": nonsingular_and_full_cardinality,
    "scale equivariance": scale_equivariance,
    "permutation invariance": permutation_invariance,
}
