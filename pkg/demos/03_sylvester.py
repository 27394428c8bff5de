"""Solving X S - T X = Y and the norm bound from spectral separation."""

import numpy as np

from polarpert import separation_bound, solve_sylvester
from polarpert.numcore import spectral_norm

rng = np.random.default_rng(3)

# spectrum of T inside [-1, 1], spectrum of S on both sides and outside it
t = np.diag(rng.uniform(-1, 1, 4))
s = np.diag([1.5, -2.0, 3.0])
y = rng.standard_normal((4, 3)) + 1j * rng.standard_normal((4, 3))

delta = separation_bound(s, t)
sol = solve_sylvester(s, t, y)
print("separation", round(delta, 4))
print("residual", sol.residual)
print("||X|| =", round(spectral_norm(sol.x), 4), "<= ||Y||/delta =", round(sol.bound_value, 4))
