"""
k-nearest-neighbour estimators of mutual information and conditional mutual
information.

Both use the first Kraskov-Stoegbauer-Grassberger counting scheme with the
max-norm: the radius around every point is the distance to its k-th neighbour
in the joint space, and neighbours strictly inside that radius are counted in
the marginal spaces. The conditional version counts in the (x, z), (y, z) and
z spaces (Frenzel-Pompe). All values are in nats.

The per-point terms are written so that exchanging x and y exchanges two
summands, and they are reduced with an exact sum. The estimates are
therefore exactly symmetric and exactly invariant under a shared
permutation of the rows.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.spatial import cKDTree
from scipy.special import digamma

from entropicpy._typing import Matrix, MatrixInput
from entropicpy.estimators._samples import prepare_samples
from entropicpy.estimators.config import EstimatorConfig
from entropicpy.linalg import EmptyProjection, Projection


def _joint_radii(points: Matrix, k: int, workers: int) -> Matrix:
    distances, _ = cKDTree(points).query(
        points, k=k + 1, p=np.inf, workers=workers
    )
    return distances[:, k]


def _count_inside(points: Matrix, radii: Matrix, workers: int) -> Matrix:
    # Strictly inside: shrink the closed ball by one ulp, then drop the point
    # itself from the count.
    counts = cKDTree(points).query_ball_point(
        points,
        np.nextafter(radii, 0),
        p=np.inf,
        return_length=True,
        workers=workers,
    )
    return np.asarray(counts) - 1


def _mean(terms: Matrix) -> float:
    return math.fsum(terms) / terms.shape[0]


def ksg_mutual_information(
    x: Matrix, y: Matrix, k: int, workers: int = 1
) -> float:
    """
    Mutual information of already prepared samples.
    """
    n = x.shape[0]
    radii = _joint_radii(np.hstack((x, y)), k, workers)
    n_x = _count_inside(x, radii, workers)
    n_y = _count_inside(y, radii, workers)
    return _mean(
        (digamma(k) + digamma(n)) - (digamma(n_x + 1) + digamma(n_y + 1))
    )


def ksg_conditional_mutual_information(
    x: Matrix, y: Matrix, z: Matrix, k: int, workers: int = 1
) -> float:
    """
    Conditional mutual information of already prepared samples.
    """
    radii = _joint_radii(np.hstack((x, y, z)), k, workers)
    psi_z = digamma(_count_inside(z, radii, workers) + 1)
    psi_xz = digamma(_count_inside(np.hstack((x, z)), radii, workers) + 1)
    psi_yz = digamma(_count_inside(np.hstack((y, z)), radii, workers) + 1)
    # Equal counts in a pair cancel exactly.
    return _mean(digamma(k) - ((psi_xz - psi_z) + (psi_yz - psi_z)))


def mutual_information(
    x: MatrixInput, y: MatrixInput, cfg: EstimatorConfig
) -> float:
    """
    Estimates I(x; y) in nats.

    The estimate may be slightly negative for independent samples. It only
    depends on cfg.rng_seed through the tie breaking jitter.

    Args:
        x (MatrixInput): Samples of the first variable (N x m).
        y (MatrixInput): Samples of the second variable (N x p).
        cfg (EstimatorConfig): Estimator settings (knn_k, seed, jitter).

    Returns:
        float: The estimate.

    Raises:
        ShapeError: If x and y have different numbers of rows.
        InsufficientDataError: If N <= knn_k.
    """
    px, py = prepare_samples(cfg, x=x, y=y)
    return ksg_mutual_information(px, py, cfg.knn_k, cfg.n_jobs)


def conditional_mutual_information(
    x: MatrixInput,
    y: MatrixInput,
    z: MatrixInput | Projection,
    cfg: EstimatorConfig,
) -> float:
    """
    Estimates I(x; y | z) in nats.

    Conditioning on EMPTY_PROJECTION gives exactly mutual_information(x, y).

    Args:
        x (MatrixInput): Samples of the first variable (N x m).
        y (MatrixInput): Samples of the second variable (N x p).
        z (MatrixInput | Projection): Conditioning samples or
            EMPTY_PROJECTION.
        cfg (EstimatorConfig): Estimator settings.

    Returns:
        float: The estimate.

    Raises:
        ShapeError: If the row counts differ.
        InsufficientDataError: If N <= knn_k.
    """
    if isinstance(z, EmptyProjection):
        return mutual_information(x, y, cfg)
    px, py, pz = prepare_samples(cfg, x=x, y=y, z=z)
    return ksg_conditional_mutual_information(
        px, py, pz, cfg.knn_k, cfg.n_jobs
    )
