# Solve X = Q + A' X^-1 A and attach Schatten-norm error bounds to the answer.
import math

import numpy as np

from thompson_schatten import SolverProblem, gen_random_pd, schatten_norm, solve_fixed_point

# Scalar case: x = 1 + 0.25/x has the root (1 + sqrt 2)/2.
x, cert = solve_fixed_point(SolverProblem([[1.0]], [[0.5]]), tol_d=1e-12)
print("scalar solution", x[0, 0], "exact", (1 + math.sqrt(2)) / 2)

rng = np.random.default_rng(5)
q = gen_random_pd(5, 5, 100.0)
a = 0.8 * rng.normal(size=(5, 5)) * math.sqrt(np.linalg.eigvalsh(q)[0]) / 3

x, cert = solve_fixed_point(SolverProblem(q, a), tol_d=1e-6, p_list=[1, 2, math.inf])
print(f"iterations={cert.iterations} rho_hat={cert.rho_hat:.4f} d_gap={cert.d_gap:.3e} [{cert.label}]")

# Compare against a far more accurate reference solution.
ref, _ = solve_fixed_point(SolverProblem(q, a), tol_d=1e-13)
for p, bound in cert.bounds:
    print(f"p={p}: certified {bound:.3e}  measured {schatten_norm(x - ref, p):.3e}")
print(f"p=2 refined: {cert.frobenius_refined:.3e}")
