"""Input states, concurrence and the steering functional."""

import numpy as np

from gadcsim import antiparallel_state, apply_one_sided, gadc, concurrence, parallel_state, steering_value
from gadcsim.measures import steering_value_oracle

np.set_printoptions(precision=4, suppress=True)

# the two input families, both pure with concurrence 2*alpha*sqrt(1 - alpha^2)
alpha = 0.6
for ctor in (antiparallel_state, parallel_state):
    st = ctor(alpha)
    print(ctor.__name__)
    print(st.matrix.real)
    print("  concurrence", concurrence(st), "expected", 2 * alpha * np.sqrt(1 - alpha**2))

# the Bell state saturates both measures
bell = parallel_state(1 / np.sqrt(2))
res = steering_value(bell)
print("Bell steering", res.value, "= 2*sqrt(2)?", np.isclose(res.value, 2 * np.sqrt(2)))
print("optimal A settings", res.optimal_a0, res.optimal_a1)

# closed form vs brute force over the two Bloch spheres
for a in (0.2, 0.5, 0.8):
    st = parallel_state(a)
    print(f"alpha={a}: analytic {steering_value(st).value:.6f}  oracle {steering_value_oracle(st):.6f}")

# for pure inputs any entanglement is enough to steer
for a in np.linspace(0.05, 0.7, 6):
    st = antiparallel_state(a)
    print(f"alpha={a:.2f}  C={concurrence(st):.3f}  S={steering_value(st).value:.3f}  steerable={steering_value(st).violates}")

# after noise the two measures part ways: entangled but not steerable
noisy = apply_one_sided(gadc(0.5, 0.4), parallel_state(0.6))
print(f"noisy: C={concurrence(noisy):.3f}  S={steering_value(noisy).value:.3f}")
