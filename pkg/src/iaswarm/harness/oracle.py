"""Closed-form alignment for the (2x2,1)^3 channel.

With three users, two antennas and one stream each, alignment has an
explicit solution: receivers 2 and 3 see the interference from user 1 in
the same direction as that from users 3 and 2 when

    V_2 = H_32^-1 H_31 V_1,    V_3 = H_23^-1 H_21 V_1,

and receiver 1 is aligned when ``V_1`` is an eigenvector of
``H_31^-1 H_32 H_12^-1 H_13 H_23^-1 H_21``. Each decoder is then the unit
vector orthogonal to its (one-dimensional) interference subspace.
"""
import numpy as np

from ..mimo import BeamformerSet

_MAX_COND = 1e12


class ConditioningError(np.linalg.LinAlgError):
    """A channel matrix needed by the construction is (nearly) singular."""


def _inv(h, name):
    if np.linalg.cond(h) > _MAX_COND:
        raise ConditioningError(f"channel {name} is numerically singular")
    return np.linalg.inv(h)


def closed_form_3user(H):
    """Aligned beamformers for a (2x2,1)^3 :class:`~iaswarm.mimo.ChannelSet`.

    All columns of the result have unit norm.
    """
    spec = H.spec
    if spec.K != 3 or set(spec.M) != {2} or set(spec.N) != {2} or set(spec.d) != {1}:
        raise ValueError(f"closed form needs a (2x2,1)^3 scenario, got {spec.label}")
    h = H.H
    E = (_inv(h[2][0], "H31") @ h[2][1] @ _inv(h[0][1], "H12") @ h[0][2]
         @ _inv(h[1][2], "H23") @ h[1][0])
    _, vecs = np.linalg.eig(E)
    v1 = vecs[:, :1]
    V = [v1, _inv(h[2][1], "H32") @ h[2][0] @ v1, _inv(h[1][2], "H23") @ h[1][0] @ v1]
    V = [v / np.linalg.norm(v) for v in V]
    U = []
    for i in range(3):
        others = [h[i][j] @ V[j] for j in range(3) if j != i]
        # the two interference vectors are parallel; the weak left singular
        # direction of their span is orthogonal to both
        left, _, _ = np.linalg.svd(np.hstack(others))
        U.append(left[:, 1:2].copy())
    return BeamformerSet(V, U)
