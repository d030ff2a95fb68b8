# Every bound on ||X - Y||_p evaluated on two diagonal pairs where the answer
# is known in closed form.
import math

import numpy as np

from thompson_schatten import audit_pair

pairs = {
    "E2": (np.diag([2.0, 1.0]), np.diag([1.0, 2.0])),
    "E3": (np.diag([10.0, 1.0]), np.diag([10 / 1.1, 1.1])),
}

for name, (x, y) in pairs.items():
    print(f"--- {name}")
    for rep in audit_pair(x, y, [1, 2, math.inf]):
        frob = "" if rep.frob is None else f" frob={rep.frob:.6f}"
        print(f"p={rep.p:<4} actual={rep.actual:.6f} t1={rep.t1:.6f} t2={rep.t2:.6f} "
              f"t3={rep.t3:.6f}{frob} corrected={rep.corrected_env_norm:.6f}")

# On E3 the per-index Theorem-2 numbers fall below |delta_1|, while the
# corrected envelope (1 - e^-d) * max(chi_i, nu_{n-i+1}) still holds.
(rep,) = audit_pair(*pairs["E3"], [math.inf])
print("|delta|          ", np.abs(rep.delta_spectrum))
print("theorem 2 claim  ", rep.envelopes["t2"], rep.per_index_flags["t2"])
print("corrected        ", rep.envelopes["corrected"], rep.per_index_flags["corrected"])

# The Frobenius bound is attained for diag(a, b) vs diag(a/alpha, alpha*b).
from thompson_schatten import tight_family

for alpha in (1.01, 1.5, 3.0):
    (rep,) = audit_pair(*tight_family(100.0, 1.0, alpha), [2])
    print(f"alpha={alpha}: actual/frob = {rep.ratio_frob:.12f}, actual/t3 = {rep.ratio_t3:.6f}")
