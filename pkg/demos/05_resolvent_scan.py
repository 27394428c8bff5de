"""Angular factor of A - lambda I along a small circle around an eigenvalue."""

import numpy as np

from polarpert import scan_resolvent_angular
from polarpert.perturb import max_consecutive_distance

a = np.diag([1.0, 0.0])
for samples in (16, 32, 64, 128):
    scan = scan_resolvent_angular(a, center=0, radius=0.1, samples=samples)
    print(samples, "samples: max consecutive distance", round(max_consecutive_distance(scan), 6))
# the distance halves with the step: Q(lambda) is continuous on the punctured disc,
# though it winds once around the eigenvalue 0
