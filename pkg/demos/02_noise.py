"""Generalized amplitude damping acting on qubit B."""

import numpy as np

from gadcsim import amplitude_damping, apply_one_sided, concurrence, gadc, parallel_state, steering_value

ch = gadc(0.7, 0.4)
print("Kraus operators")
for k in ch:
    print(np.round(k, 4))
print("completeness residual", ch.completeness_residual())

# nu = 1 is plain amplitude damping (zero temperature)
print("nu=1 matches ADC:", all(np.array_equal(a, b) for a, b in zip(gadc(1.0, 0.4), amplitude_damping(0.4))))

# entanglement decays as eta drops
st = parallel_state(0.6)
print(" eta    C       S")
for eta in np.linspace(1, 0, 6):
    out = apply_one_sided(gadc(0.7, eta), st)
    print(f"{eta:.1f}  {concurrence(out):.4f}  {steering_value(out).value:.4f}")

# the thermal parameter matters: compare nu at fixed eta
for nu in (1.0, 0.5, 0.0):
    out = apply_one_sided(gadc(nu, 0.5), st)
    print(f"nu={nu}: C={concurrence(out):.4f}")
