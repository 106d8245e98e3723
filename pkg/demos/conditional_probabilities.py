"""What the detectors know: conditional probabilities on the entangled state.

The detectors commute with each other and with the properties they track,
so conditional probabilities among them are well defined even though the
underlying properties are pairwise incompatible.

Run:  python3 demos/conditional_probabilities.py
"""

import numpy as np

from twoslit import fixtures
from twoslit.errors import NonCommutingError
from twoslit.verify import conditional_probability, verify_bundle

bundle = fixtures.fixture_bundle("spin32")
E, G, T, Y, psi = bundle.E, bundle.G, bundle.T, bundle.Y, bundle.psi
eye = np.eye(bundle.space.dim)

print(f"p(T=1)        = {conditional_probability(T, eye, psi):.6f}")
print(f"p(E=1)        = {conditional_probability(E, eye, psi):.6f}")
print(f"p(E=1 | T=1)  = {conditional_probability(E, T, psi):.6f}   "
      "(T fires exactly when the particle passes the first slit)")
print(f"p(T=1 | E=1)  = {conditional_probability(T, E, psi):.6f}")
print(f"p(G=1 | Y=1)  = {conditional_probability(G, Y, psi):.6f}   "
      "(Y reads the incompatible property the same way)")
print(f"p(E=1 | Y=1)  = {conditional_probability(E, Y, psi):.6f}   "
      "(but Y tells us nothing about the slit)")

print("\nconditioning on a non-commuting pair is refused:")
try:
    conditional_probability(E, G, psi)
except NonCommutingError as exc:
    print(f"  NonCommutingError: {exc}")

print("\nfull verification of the stored bundle:")
report = verify_bundle(bundle)
print(f"  {len(report.entries)} checks, all passed: {report.passed}")

# tamper with one matrix entry and watch the projector precondition fail
bundle.G[0, 2] += 1e-3
report = verify_bundle(bundle)
print("\nafter perturbing one entry of G by 1e-3:")
print(f"  passed: {report.passed}; failing checks: {report.failing()}")
