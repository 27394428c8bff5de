"""Polar decomposition of a rank-deficient matrix and the partial-isometry identities."""

import numpy as np

from polarpert import InstanceSpec, generate, polar_decompose, unitary_extension
from polarpert.numcore import adjoint, spectral_norm

np.set_printoptions(precision=3, suppress=True)

# a 5x4 matrix of rank 2 with singular values between 0.5 and 4
a = generate(InstanceSpec(5, 4, 2, sigma_min=0.5, sigma_max=4.0, seed=1))
p = polar_decompose(a)
print("rank", p.rank, "reduced minimum modulus", round(p.sigma, 4))
print("||A - Q|A||| =", spectral_norm(a - p.q @ p.h))

# Q is a partial isometry: Q*Q and QQ* are the projectors onto N(A)^perp and R(A)
print("||Q*Q - P_N(A)^perp|| =", spectral_norm(adjoint(p.q) @ p.q - p.corange_projector()))
print("||QQ* - P_R(A)||      =", spectral_norm(p.q @ adjoint(p.q) - p.range_projector()))
print("eigenvalues of |A|:", np.linalg.eigvalsh(p.h).round(4))

# a square singular matrix extends Q to a unitary U with A = U|A|
b = generate(InstanceSpec(4, 4, 2, seed=2))
pb = polar_decompose(b)
u = unitary_extension(b, polar=pb).u
print("||U*U - I|| =", spectral_norm(adjoint(u) @ u - np.eye(4)))
print("||B - U|B||| =", spectral_norm(b - u @ pb.h))
