"""Orbits of multiplication mod p, the key exchange built on them, and the
brute-force baselines everything else is measured against.

Run: python demos/01_orbits_and_key_exchange.py
"""

from koopman_dh import (
    DhParams,
    dh_exchange,
    discrete_log_bruteforce,
    euler_criterion,
    find_primitive_root,
    shared_secret_intersection,
    simulate,
)

p = 23
m = find_primitive_root(p)
params = DhParams(p, m)
print(f"modulus p = {p}, smallest generator m = {m}")

# The orbit x_{k+1} = m x_k (mod p) from x_0 = 1 walks every nonzero residue
# exactly once before returning to 1 (one full period of length p - 1).
traj = simulate(m, params, 1, p - 1)
print(f"orbit of {m}: {list(traj.values)}")
assert sorted(traj.values[: p - 1]) == list(range(1, p))
assert traj.values[p - 1] == 1

# A generator is never a quadratic residue: its half-period power is -1.
print(f"euler_criterion({m}, {p}) = {euler_criterion(m, p)} (generators are non-residues)")

# Both parties pick secret exponents; the public values are orbit endpoints.
e, d = 7, 15
transcript = dh_exchange(params, e, d)
print(f"\nsecrets e={e}, d={d}: public c_e={transcript.c_e}, c_d={transcript.c_d}, "
      f"shared secret {transcript.c_ed}")

# Breaking one side is finding how long the orbit ran: a trajectory-length
# question. The brute-force oracle just walks the orbit.
recovered = discrete_log_bruteforce(transcript.c_e, params)
print(f"brute-force walk recovers e = {recovered}")
assert recovered == e

# The shared secret is also the first consistent intersection of the two
# derived orbits (the c_d-orbit indexed by e, the c_e-orbit indexed by d).
result = shared_secret_intersection(transcript.c_e, transcript.c_d, params)
print(f"intersection search: secret={result.secret} at (e={result.e}, d={result.d})")
assert result.secret == transcript.c_ed
print("\nboth brute-force baselines agree with the transcript")
