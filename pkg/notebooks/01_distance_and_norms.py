# Thompson distance and Schatten norms on small positive definite matrices.
import math

import numpy as np

from thompson_schatten import cone_angle, loewner_scale, schatten_norm, thompson_distance

x = np.diag([2.0, 1.0])
y = np.diag([1.0, 2.0])

# M(x/y) is the smallest t with x <= t*y; the distance is the log of the
# larger of the two scaling factors.
print("M(x/y) =", loewner_scale(x, y))
print("M(y/x) =", loewner_scale(y, x))
print("d_T    =", float(thompson_distance(x, y)), "(ln 2 =", math.log(2), ")")

# Scaling by c moves a matrix |ln c| away from itself.
for c in (0.5, 2.0, 4.0):
    print(f"d_T({c}*x, x) = {float(thompson_distance(c * x, x)):.6f}")

# Schatten norms of the difference, for the usual orders.
delta = x - y
for p in (1, 1.5, 2, 3, math.inf):
    print(f"||x - y||_{p} = {schatten_norm(delta, p):.6f}")

# The trace inner product makes any two PSD matrices meet at most at a right angle.
print("angle(x, y) =", cone_angle(x, y), "degrees")

# Invariance under congruence and inversion.
rng = np.random.default_rng(0)
s = rng.normal(size=(2, 2))
print("d_T(s x s', s y s') =", float(thompson_distance(s @ x @ s.T, s @ y @ s.T)))
print("d_T(inv x, inv y)   =", float(thompson_distance(np.linalg.inv(x), np.linalg.inv(y))))
