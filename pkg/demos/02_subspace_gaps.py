"""Directed gaps, the gap metric and the surjectivity of cross-projections."""

import math

import numpy as np

from polarpert import Subspace, classify_cross_projections, gap_report, projector
from polarpert.numcore import spectral_norm

e = np.eye(3)

# two orthogonal subspaces of different dimension: both gaps are 1
v = Subspace.span(e[:, :1])
w = Subspace.span(e[:, 1:])
print(gap_report(v, w), classify_cross_projections(v, w).value)

# nested subspaces: the gaps differ, and exactly one cross-projection is onto
w = Subspace.span(e[:, :2])
print(gap_report(v, w), classify_cross_projections(v, w).value)

# two lines in the plane at angle pi/6: the gap is sin(pi/6)
th = math.pi / 6
v = Subspace.span(np.array([[1.0], [0.0]]))
w = Subspace.span(np.array([[math.cos(th)], [math.sin(th)]]))
r = gap_report(v, w)
print("gap", r.gap_hat, "||P_V - P_W||", spectral_norm(projector(v) - projector(w)))
