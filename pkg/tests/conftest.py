from koopman_dh.dynamics import is_prime

PRIMES_TO_61 = [p for p in range(5, 62) if is_prime(p)]
PRIMES_TO_199 = [p for p in range(5, 200) if is_prime(p)]
