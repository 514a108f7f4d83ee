"""Phase portrait of the similarity ODE: nullclines, critical points, and
the two trajectory pieces (special parabola + computed B-D connector).

Reproduces the phase-plane picture for gamma = 1.816, mu = 0.716.
"""

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from ves import connect_bd, critical_points, derived_constants, h_g, h_sp

params = derived_constants(1.816, 0.716)

U = np.linspace(-0.2, 2.2, 600)

# Delta = 0: the sonic parabola H = (U-1)^2
H_sonic = (U - 1.0) ** 2

# F = 0: H = U^2 - k1 U + mu (plus the trivial H = 0 line)
H_f = U**2 - params.k1 * U + params.mu

# G = 0: H = U (U-1)(U-mu) / (U + k2)
H_gc = h_g(U, params)

fig, ax = plt.subplots(figsize=(7, 5.5))
ax.plot(U, h_sp(U, params), "k--", lw=1.2, label=r"special $H=\frac{(\gamma-1)^2}{4}U^2$")
ax.plot(U, H_f, "r-", lw=1.0, label="$F=0$")
ax.plot(U, H_gc, "b-", lw=1.0, label="$G=0$")
ax.plot(U, H_sonic, "g-", lw=1.0, label=r"$\Delta=0$ (sonic)")

# the computed connector from B to D
curve = connect_bd(params)
ax.plot(curve.U, curve.H, "m-", lw=2.0, label="computed B-D connector")

for cp in critical_points(params):
    if cp.location is None:
        continue
    ax.plot(cp.location.U, cp.location.H, "ko", ms=5)
    ax.annotate(cp.label, cp.location, textcoords="offset points",
                xytext=(6, 6), fontsize=11)

ax.set_xlim(-0.2, 2.2)
ax.set_ylim(-0.05, 0.8)
ax.set_xlabel("U")
ax.set_ylabel("H")
ax.legend(loc="upper left", fontsize=8)
ax.set_title(f"phase plane, gamma={params.gamma}, mu={params.mu}")
fig.tight_layout()
fig.savefig("phase_portrait.png", dpi=150)
print("wrote phase_portrait.png")
print("critical points:")
for cp in critical_points(params):
    print(" ", cp.label, cp.location, cp.kind,
          "" if cp.slopes is None else f"slopes {cp.slopes.c1:.6f}, {cp.slopes.c2:.6f}")
