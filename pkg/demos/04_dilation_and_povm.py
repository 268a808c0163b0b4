"""Unitary dilations of the GADC, inverse-channel Kraus sets and the resulting POVMs."""

import numpy as np

from gadcsim import (
    antiparallel_state,
    baseline,
    build_dilation,
    closed_form_unitary_one,
    closed_form_unitary_two,
    extract_kraus,
    gadc,
    inverse_channel_kraus,
    povm_elements,
)
from gadcsim.linalg import unitarity_residual
from gadcsim.protocols import inverse_set, povm_case_one, povm_case_two

np.set_printoptions(precision=4, suppress=True)
nu, eta = 0.6, 0.3

# generic construction from the Kraus operators, by basis completion
dil = build_dilation(gadc(nu, eta))
print("built U: 8x8, unitarity residual", unitarity_residual(dil.matrix))

# the two closed-form unitaries are also valid dilations
for ctor in (closed_form_unitary_one, closed_form_unitary_two):
    u = ctor(nu, eta)
    err = max(np.max(np.abs(a - b)) for a, b in zip(extract_kraus(u), gadc(nu, eta)))
    print(ctor.__name__, "unitarity", unitarity_residual(u.matrix), "Kraus error", err)

# inverse channel: Kraus operators read off U^dagger
inv = inverse_channel_kraus(closed_form_unitary_one(nu, eta))
print("inverse Kraus set, completeness residual", inv.completeness_residual())
for m in povm_elements(inv):
    print(m.real)

# selective POVM before (case 1) or after (case 2) the noise, one result per outcome
st = antiparallel_state(0.4)
print("noise only C =", round(baseline(st, nu, eta).concurrence, 4))
for which in ("povm1", "povm2"):
    inv = inverse_set(which, nu, eta)
    for case in (povm_case_one, povm_case_two):
        for res in case(st, nu, eta, inv):
            if res.is_null:
                print(f"{which} {case.__name__} branch {res.branch}: null")
            else:
                print(f"{which} {case.__name__} branch {res.branch}: "
                      f"C={res.concurrence:.4f} S={res.steering:.4f} p={res.success_probability:.3f}")
