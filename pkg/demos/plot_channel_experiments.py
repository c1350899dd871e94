"""
Measuring undetected errors
===========================

Exhaustive counts for short payloads, seeded Monte Carlo for longer ones.
"""

from gccd.channel import BernoulliFlip, UniformReplacement, exhaustive_acceptance, run_monte_carlo
from gccd.codec import BitString
from gccd.scheme import encode

msg = encode(BitString.from_str("1011001101"))
exact = exhaustive_acceptance(msg)
print("exhaustive:", exact.undetected, "of", exact.corruptions, exact.detected_by_stage)
print("p_hat", exact.p_hat, "p1", exact.p1_exact, "bound", exact.bound_2_to_minus_y)

mc = run_monte_carlo(msg, UniformReplacement(seed=1), 20_000)
print(mc.to_json())

# Independent flips are outside the uniform model the bound assumes, and at
# this rate most trials leave the payload untouched, which counts as accepted.
noisy = run_monte_carlo(msg, BernoulliFlip(0.05, seed=1), 20_000)
print("bernoulli model_mismatch:", noisy.model_mismatch, "p_hat", noisy.p_hat)
