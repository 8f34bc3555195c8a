"""Matrix Lie groups with algebra coordinates.

Algebra elements are coefficient vectors in a fixed basis; every map accepts a
leading batch shape, so `exp` of an (N, dim) array returns N matrices.
"""
import logging
from typing import List, Optional, Sequence

import numpy as np
from scipy import linalg

from cathaul.algebra.groups import Group
from cathaul.exceptions import LogBranch

logger = logging.getLogger(__name__)

PAULI = np.array([
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]]
], dtype=complex)


class MatrixLieGroup(Group):
    """Closed matrix group given by an algebra basis; exp/log fall back to scipy"""

    kind = 'matrix-lie'

    def __init__(self, name: str, basis: Sequence[np.ndarray], field: str = 'real', tol: float = 1e-9):
        basis = np.asarray(basis, dtype=complex if field == 'complex' else float)
        if basis.ndim != 3 or basis.shape[1] != basis.shape[2]:
            raise ValueError(f"Basis of {name} must be a stack of square matrices")
        self.name = name
        self.field = field
        self.basis = basis
        self.dim = basis.shape[0]
        self.n = basis.shape[1]
        self.tol = tol

        flat = basis.reshape(self.dim, -1).T
        if field == 'complex':
            flat = np.vstack([flat.real, flat.imag])
        if np.linalg.matrix_rank(flat) != self.dim:
            raise ValueError(f"Basis of {name} is not linearly independent")
        self._coords = np.linalg.pinv(flat)

    def __repr__(self):
        return f'<MatrixLieGroup {self.name} dim={self.dim}>'

    @property
    def dtype(self):
        return complex if self.field == 'complex' else float

    @property
    def identity(self) -> np.ndarray:
        return np.eye(self.n, dtype=self.dtype)

    def mul(self, a, b):
        return a @ b

    def inv(self, a):
        return np.linalg.inv(a)

    def distance(self, a, b) -> float:
        return float(np.linalg.norm(np.asarray(a) - np.asarray(b)))

    def describe(self, a) -> str:
        return np.array2string(np.asarray(a).ravel(), precision=4, separator=',')

    def hat(self, x) -> np.ndarray:
        """Coordinates (..., dim) to algebra matrices (..., n, n)"""
        return np.tensordot(np.asarray(x, dtype=float), self.basis, axes=([-1], [0]))

    def vee(self, X) -> np.ndarray:
        """Algebra matrices (..., n, n) to coordinates (..., dim)"""
        X = np.asarray(X)
        flat = X.reshape(X.shape[:-2] + (self.n * self.n,))
        if self.field == 'complex':
            flat = np.concatenate([flat.real, flat.imag], axis=-1)
        return flat @ self._coords.T

    def bracket(self, x, y) -> np.ndarray:
        X, Y = self.hat(x), self.hat(y)
        return self.vee(X @ Y - Y @ X)

    def exp(self, x) -> np.ndarray:
        return self.project(linalg.expm(self.hat(x)))

    def log(self, g) -> np.ndarray:
        g = np.asarray(g)
        if g.ndim > 2:
            return np.stack([self.log(item) for item in g])
        X, error = linalg.logm(g, disp=False)
        if not np.all(np.isfinite(X)) or error > 1e-8:
            raise LogBranch(f"{self.name} element has no principal logarithm (estimate error {error:.2e})")
        return self.vee(X)

    def Ad(self, g, x) -> np.ndarray:
        """Coordinates of g X g⁻¹"""
        return self.vee(g @ self.hat(x) @ self.inv(g))

    def project(self, m) -> np.ndarray:
        """Nearest group element; the identity map unless a group has a retraction"""
        return np.asarray(m)

    def membership_residual(self, g) -> float:
        return self.distance(self.project(g), g)

    def sample(self, rng: np.random.Generator, count: int) -> List[np.ndarray]:
        """exp of coordinates uniform in [-1, 1]^dim"""
        return list(self.exp(rng.uniform(-1.0, 1.0, size=(count, self.dim))))


def su2_basis() -> np.ndarray:
    """e_k = -(i/2)σ_k, so that [e_i, e_j] = ε_ijk e_k"""
    return -0.5j * PAULI


def quaternion_matrix(a0, v) -> np.ndarray:
    """a0·I - i v·σ for a real scalar part and vector part (batched)"""
    a0 = np.asarray(a0, dtype=float)
    v = np.asarray(v, dtype=float)
    U = np.empty(a0.shape + (2, 2), dtype=complex)
    U[..., 0, 0] = a0 - 1j * v[..., 2]
    U[..., 0, 1] = -1j * v[..., 0] - v[..., 1]
    U[..., 1, 0] = -1j * v[..., 0] + v[..., 1]
    U[..., 1, 1] = a0 + 1j * v[..., 2]
    return U


def matrix_quaternion(U):
    """Inverse of quaternion_matrix; exact on a0·I - i v·σ, a projection otherwise"""
    U = np.asarray(U)
    a0 = (U[..., 0, 0].real + U[..., 1, 1].real) / 2
    v = np.stack([
        -(U[..., 0, 1].imag + U[..., 1, 0].imag) / 2,
        (U[..., 1, 0].real - U[..., 0, 1].real) / 2,
        (U[..., 1, 1].imag - U[..., 0, 0].imag) / 2
    ], axis=-1)
    return a0, v


class SU2(MatrixLieGroup):
    """SU(2) as unit quaternions; log cut locus at -I"""

    def __init__(self, tol: float = 1e-9):
        super().__init__('SU2', su2_basis(), field='complex', tol=tol)

    def inv(self, a):
        return np.conj(np.swapaxes(a, -1, -2))

    def hat(self, x):
        x = np.asarray(x, dtype=float)
        return quaternion_matrix(np.zeros(x.shape[:-1]), x / 2)

    def vee(self, X):
        _, v = matrix_quaternion(X)
        return 2 * v

    def bracket(self, x, y):
        return np.cross(x, y)

    def exp(self, x):
        x = np.asarray(x, dtype=float)
        angle = np.linalg.norm(x, axis=-1)
        # sin(|x|/2)/|x|, finite at 0
        factor = 0.5 * np.sinc(angle / (2 * np.pi))
        return quaternion_matrix(np.cos(angle / 2), x * factor[..., None])

    def log(self, g):
        a0, v = matrix_quaternion(g)
        norm = np.linalg.norm(v, axis=-1)
        angle = 2 * np.arctan2(norm, a0)
        if np.any(angle >= 2 * np.pi - 1e-9):
            raise LogBranch("SU2 element too close to -I for the principal logarithm")
        small = norm < 1e-12
        factor = np.where(small, 2 / np.where(small, a0, 1.0), angle / np.where(small, 1.0, norm))
        return v * factor[..., None]

    def project(self, m):
        a0, v = matrix_quaternion(m)
        scale = np.sqrt(a0 ** 2 + np.sum(v ** 2, axis=-1))
        return quaternion_matrix(a0 / scale, v / scale[..., None])

    def membership_residual(self, g) -> float:
        g = np.asarray(g)
        unitary = np.linalg.norm(self.inv(g) @ g - np.eye(2))
        return float(unitary + abs(np.linalg.det(g) - 1))

    def rotation(self, g) -> np.ndarray:
        """Rotation matrix R_ij = ½ Re tr(σ_i U σ_j U†); equals Ad(U) in these coordinates"""
        return 0.5 * np.einsum('iab,...bc,jcd,...da->...ij', PAULI, g, PAULI, self.inv(g)).real

    def Ad(self, g, x):
        return np.einsum('...ij,...j->...i', self.rotation(g), x)


def so3_basis() -> np.ndarray:
    """(L_k)_ij = -ε_kij"""
    basis = np.zeros((3, 3, 3))
    for k, i, j in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        basis[k, i, j] = -1.0
        basis[k, j, i] = 1.0
    return basis


class SO3(MatrixLieGroup):
    """Rotations with Rodrigues exp; log cut locus at angle π"""

    def __init__(self, tol: float = 1e-9):
        super().__init__('SO3', so3_basis(), field='real', tol=tol)

    def inv(self, a):
        return np.swapaxes(a, -1, -2)

    def hat(self, x):
        x = np.asarray(x, dtype=float)
        K = np.zeros(x.shape[:-1] + (3, 3))
        K[..., 0, 1] = -x[..., 2]
        K[..., 0, 2] = x[..., 1]
        K[..., 1, 0] = x[..., 2]
        K[..., 1, 2] = -x[..., 0]
        K[..., 2, 0] = -x[..., 1]
        K[..., 2, 1] = x[..., 0]
        return K

    def vee(self, X):
        X = np.asarray(X)
        return np.stack([X[..., 2, 1], X[..., 0, 2], X[..., 1, 0]], axis=-1)

    def bracket(self, x, y):
        return np.cross(x, y)

    def exp(self, x):
        x = np.asarray(x, dtype=float)
        angle = np.linalg.norm(x, axis=-1)[..., None, None]
        K = self.hat(x)
        A = np.sinc(angle / np.pi)
        B = 0.5 * np.sinc(angle / (2 * np.pi)) ** 2
        return np.eye(3) + A * K + B * (K @ K)

    def log(self, g):
        g = np.asarray(g)
        cos = np.clip((np.trace(g, axis1=-2, axis2=-1) - 1) / 2, -1.0, 1.0)
        angle = np.arccos(cos)
        if np.any(np.pi - angle < 1e-6):
            raise LogBranch("SO3 element at rotation angle π has no unique logarithm")
        A = np.sinc(angle / np.pi)
        return self.vee(g - self.inv(g)) / (2 * A[..., None])

    def project(self, m):
        u, _, vt = np.linalg.svd(m)
        flip = np.linalg.det(u @ vt) < 0
        u = u.copy()
        u[..., :, -1] = np.where(flip[..., None], -u[..., :, -1], u[..., :, -1])
        return u @ vt

    def membership_residual(self, g) -> float:
        g = np.asarray(g)
        return float(np.linalg.norm(g.T @ g - np.eye(3)) + abs(np.linalg.det(g) - 1))

    def Ad(self, g, x):
        return np.einsum('...ij,...j->...i', g, x)


class U1(MatrixLieGroup):
    """Unit complex numbers as 1×1 matrices, basis [[i]]"""

    def __init__(self, tol: float = 1e-9):
        super().__init__('U1', [[[1j]]], field='complex', tol=tol)

    def inv(self, a):
        return np.conj(a)

    def exp(self, x):
        x = np.asarray(x, dtype=float)
        return np.exp(1j * x)[..., None]

    def log(self, g):
        angle = np.angle(np.asarray(g)[..., 0, 0])
        if np.any(np.abs(angle) > np.pi - 1e-9):
            raise LogBranch("U1 element at -1 has no principal logarithm")
        return angle[..., None]

    def project(self, m):
        m = np.asarray(m)
        return m / np.abs(m)

    def Ad(self, g, x):
        return np.array(x, dtype=float)

    def bracket(self, x, y):
        return np.zeros(np.broadcast_shapes(np.shape(x), np.shape(y)))


class VectorGroup(MatrixLieGroup):
    """(ℝᵏ, +) embedded as positive diagonal matrices"""

    def __init__(self, k: int, tol: float = 1e-9):
        if k < 1:
            raise ValueError("VectorGroup needs k >= 1")
        basis = np.zeros((k, k, k))
        for i in range(k):
            basis[i, i, i] = 1.0
        super().__init__(f'R{k}', basis, field='real', tol=tol)

    def inv(self, a):
        a = np.asarray(a)
        diag = np.diagonal(a, axis1=-2, axis2=-1)
        return _diag(1.0 / diag)

    def exp(self, x):
        return _diag(np.exp(np.asarray(x, dtype=float)))

    def log(self, g):
        diag = np.diagonal(np.asarray(g), axis1=-2, axis2=-1)
        if np.any(diag <= 0):
            raise LogBranch(f"{self.name} element has a non-positive diagonal entry")
        return np.log(diag)

    def project(self, m):
        return _diag(np.abs(np.diagonal(np.asarray(m), axis1=-2, axis2=-1)))

    def Ad(self, g, x):
        return np.array(x, dtype=float)

    def bracket(self, x, y):
        return np.zeros(np.broadcast_shapes(np.shape(x), np.shape(y)))


def _diag(values: np.ndarray) -> np.ndarray:
    out = np.zeros(values.shape + (values.shape[-1],))
    idx = np.arange(values.shape[-1])
    out[..., idx, idx] = values
    return out


def builtin_lie_group(name: str, k: Optional[int] = None) -> MatrixLieGroup:
    """Lie group by fixture name: SU2, SO3, U1 or Rk"""
    if name == 'SU2':
        return SU2()
    if name == 'SO3':
        return SO3()
    if name == 'U1':
        return U1()
    if name.startswith('R') and name[1:].isdigit():
        return VectorGroup(int(name[1:]))
    if name == 'vector' and k is not None:
        return VectorGroup(k)
    raise ValueError(f"Unknown Lie group {name!r}")
