"""How many stacked future states make the modular orbit exactly linear?

The shift dictionary lifts x_k to z_k = (x_k, ..., x_{k+q}). The lift closes
into a linear system z_{k+1} = A z_k precisely when one coefficient vector
reproduces x_{k+q+1} from the window for every k, over the integers. This
script scans orders exactly and shows the closure appears first at
q = (p-1)/2, with the sparse coefficients (1, -1, 0, ..., 0, 1).

Run: python demos/02_minimal_linear_lifting.py
"""

from fractions import Fraction

from koopman_dh import (
    CompanionSystem,
    DhParams,
    canonical_alpha,
    full_period_system,
    full_period_trajectory,
    hankel_system,
    index_lookup_attack,
    lift_shift,
    minimal_lifting_dimension,
    solve_alpha_exact,
    verify_closing,
)

params = DhParams(23, 5)
p, q_tilde = params.p, params.q_tilde
traj = full_period_trajectory(params)
print(f"p = {p}, generator m = {params.m}, half period q~ = {q_tilde}")

# Exact solvability of the periodic Hankel system, order by order.
print("\norder q -> rank(A), rank(A|b), closes over the integers?")
for q in range(q_tilde + 2):
    result = solve_alpha_exact(hankel_system(traj, q))
    closes = result.solvable and verify_closing(traj, result.solution)
    print(f"  q={q:2d}: {result.rank_a:2d}, {result.rank_augmented:2d}, {closes}")

dim = minimal_lifting_dimension(params)
print(f"\nminimal lifted dimension (brute-force scan): {dim} = (p-1)/2 + 1 = {q_tilde + 1}")

# The closure coefficients are sparse and integer valued.
alpha = canonical_alpha(p, q_tilde)
print(f"closing coefficients at q~: {[int(a) for a in alpha]}")
assert verify_closing(traj, alpha)

# One step below, the residue-only recurrence x_{k+q~} = -x_k (mod p) exists
# but is not linear over the integers, so it is rejected.
near_miss = (-1,) + (0,) * (q_tilde - 1)
print(f"one order below: alpha = {list(near_miss)} holds mod p only -> "
      f"verify_closing = {verify_closing(traj, near_miss)}")

# Iterating the companion matrix reproduces the whole orbit exactly.
system = CompanionSystem(q=q_tilde, alpha=alpha)
z = [Fraction(v) for v in lift_shift(traj, q_tilde, 0)]
for k in range(2 * (p - 1)):
    assert z[0] == traj.value_at(k)
    z = system.step(z)
print("companion iteration reproduces the orbit over two periods, exactly")

# At full length q = p-2 the system is a pure cyclic shift and the initial
# lift lists the whole orbit, so the exponent can simply be looked up.
cyclic = full_period_system(params)
print(f"\nfull-length fallback: dimension {cyclic.dimension}, alpha = (1, 0, ..., 0)")
c = 18
print(f"index lookup attack on c={c}: e = {index_lookup_attack(c, params)}")
