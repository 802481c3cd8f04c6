"""Seeded generators for structured skew operators and model tensors.

Used by the test suite, the lemma runner, and the demo scripts to produce
representative instances of each classification case plus the
anticommuting counterexample that the classifier must reject.
"""

from __future__ import annotations

import numpy as np

from .curvature import build_model
from .linalg import Subspace, standard_complex_structure


def quaternion_j() -> np.ndarray:
    """The 4x4 skew orthogonal structure that anticommutes with the standard J.

    Columns: A e1 = e3, A e2 = -e4, A e3 = -e1, A e4 = e2.  Squares to -Id,
    so together with the standard structure it generates a quaternionic
    action; models built from it are almost isotropic but never Kahler.
    """
    a = np.zeros((4, 4))
    a[2, 0] = 1.0
    a[3, 1] = -1.0
    a[0, 2] = -1.0
    a[1, 3] = 1.0
    return a


def holomorphic_plane(j: np.ndarray, v: np.ndarray) -> Subspace:
    """The J-invariant plane span(v, Jv)."""
    return Subspace.span([v, j @ v])


def two_plane_operator(j: np.ndarray, mu1: float, mu2: float, w1: Subspace) -> tuple[np.ndarray, Subspace]:
    """A = J (mu1 P_W1 + mu2 P_W2) with W2 the orthogonal complement of W1."""
    w2 = w1.complement()
    a = j @ (mu1 * w1.projector() + mu2 * w2.projector())
    return a, w2

def plane_operator(j: np.ndarray, w: Subspace) -> np.ndarray:
    """A = J P_W for a holomorphic plane W."""
    return j @ w.projector()


def random_unit(d: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(d)
    return v / np.linalg.norm(v)


def case2_instance(seed: int = 0, spread: float = 0.1) -> dict:
    """A d=4 instance with two distinct holomorphic eigenplanes.

    Draws mu1, mu2 with |mu1 - mu2| and |mu1 + mu2| above ``spread`` (so
    the classification does not collapse to the constant holomorphic case)
    and sets kappa = tau * mu1 * mu2.
    """
    rng = np.random.default_rng(seed)
    j = standard_complex_structure(4)
    while True:
        mu1, mu2 = rng.uniform(0.3, 2.5, size=2) * rng.choice([-1.0, 1.0], size=2)
        if abs(mu1 - mu2) > spread and abs(mu1 + mu2) > spread:
            break
    tau = int(rng.choice([-1, 1]))
    kappa = tau * mu1 * mu2
    w1 = holomorphic_plane(j, random_unit(4, rng))
    a, w2 = two_plane_operator(j, mu1, mu2, w1)
    tensor = build_model(kappa, tau, a)
    return {
        "tensor": tensor, "j": j, "kappa": kappa, "tau": tau,
        "mu1": mu1, "mu2": mu2, "w1": w1, "w2": w2, "skew": a,
    }


def case3_instance(d: int, kappa: float) -> dict:
    """R = kappa (R1 + RJ): constant holomorphic curvature 4 kappa."""
    if kappa == 0:
        raise ValueError("constant holomorphic case requires kappa != 0")
    j = standard_complex_structure(d)
    tau = 1 if kappa > 0 else -1
    a = np.sqrt(abs(kappa)) * j
    tensor = build_model(kappa, tau, a)
    return {"tensor": tensor, "j": j, "kappa": kappa, "tau": tau, "skew": a}


def case4_instance(d: int, c: float, seed: int = 0) -> dict:
    """R = c R_{J P_W} for a random holomorphic plane W (flat case)."""
    if c == 0:
        raise ValueError("flat case with c = 0 is the zero tensor; build it directly")
    rng = np.random.default_rng(seed)
    j = standard_complex_structure(d)
    w = holomorphic_plane(j, random_unit(d, rng))
    tau = 1 if c > 0 else -1
    a = np.sqrt(abs(c)) * plane_operator(j, w)
    tensor = build_model(0.0, tau, a)
    return {"tensor": tensor, "j": j, "c": c, "tau": tau, "w": w, "skew": a}


def quaternion_instance(kappa: float = 1.0, tau: int = 1) -> dict:
    """The anticommuting counterexample: almost isotropic, never Kahler."""
    j = standard_complex_structure(4)
    a = quaternion_j()
    tensor = build_model(kappa, tau, a)
    return {"tensor": tensor, "j": j, "kappa": kappa, "tau": tau, "skew": a}


def block_diagonal_skew(d: int, scales) -> np.ndarray:
    """Skew operator with 2x2 rotation blocks scaled by ``scales``, zero-padded.

    Blocks touch disjoint basis pairs, so recovering the relative block
    signs requires probing mixed directions; entries beyond the blocks
    stay zero, giving a kernel when 2 * len(scales) < d.
    """
    scales = list(scales)
    if 2 * len(scales) > d:
        raise ValueError("too many blocks for the dimension")
    a = np.zeros((d, d))
    for idx, scale in enumerate(scales):
        base = 2 * idx
        a[base + 1, base] = scale
        a[base, base + 1] = -scale
    return a
