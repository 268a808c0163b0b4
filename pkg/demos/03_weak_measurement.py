"""Weak measurement before the noise and reversal after it."""

import numpy as np

from gadcsim import baseline, parallel_state, weak_protocol

st = parallel_state(0.3)
nu, eta = 0.9, 0.5

base = baseline(st, nu, eta)
print(f"noise only: C={base.concurrence:.4f} S={base.steering:.4f}")

# w = r = 0 does nothing
print("w=r=0 C:", weak_protocol(st, nu, eta, 0.0, 0.0).concurrence)

# protection costs probability
print("  w     r     C       S      p")
for w in (0.2, 0.5, 0.8):
    for r in (0.3, 0.6, 0.9):
        res = weak_protocol(st, nu, eta, w, r)
        flag = "*" if res.concurrence > base.concurrence else " "
        print(f"{w:.1f}  {r:.1f}  {res.concurrence:.4f}{flag} {res.steering:.4f}  {res.success_probability:.3f}")

# without noise, matched strengths undo each other exactly
res = weak_protocol(st, 1.0, 1.0, 0.5, 0.5)
print("matched w=r, no noise, deviation:", np.max(np.abs(res.state.matrix - st.matrix)))
