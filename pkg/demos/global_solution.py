"""Assemble the waiting-time solution and look at it in both coordinate
systems: the similarity profile (U, H)(y) across all four branches, and the
physical fields rho, u at a few times straddling the singularity.
"""

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from ves import assemble, boundary, derived_constants, eval_physical
from ves.profile import sample_profile

params = derived_constants(1.816, 0.716)
sol = assemble(params, K=1.0)

print(f"y_D = {sol.y_D:.9f} (sonic),  y_B = {sol.y_B:.9f} (vacuum boundary)")
print(f"beta = {sol.linearization.beta:.6f}; one-sided U-slopes at y_D: "
      f"{sol.expansions['D_right'].linear_coeff_U:.4f} (right) vs "
      f"{sol.expansions['D_left'].linear_coeff_U:.4f} (left)")

# similarity profile; the CSV columns are (y, U, H, branch)
rows = sample_profile(sol, 4000)
fig, axes = plt.subplots(1, 2, figsize=(11, 4.4))
colors = {"CA": "tab:blue", "AE": "tab:orange", "ED": "tab:green", "BD": "tab:red"}
for tag in ("CA", "AE", "ED", "BD"):
    pts = np.array([(y, U, H) for (y, U, H, b) in rows if b == tag])
    order = np.argsort(pts[:, 0])
    axes[0].plot(pts[order, 0], pts[order, 1], color=colors[tag], label=tag)
    axes[1].plot(pts[order, 0], pts[order, 2], color=colors[tag], label=tag)
for ax, name in zip(axes, ("U(y)", "H(y)")):
    ax.axvline(sol.y_D, color="g", lw=0.6, ls=":")
    ax.axvline(sol.y_B, color="r", lw=0.6, ls=":")
    ax.set_xlim(-1.2, 3.0)
    ax.set_xlabel("y")
    ax.set_title(name)
    ax.legend(fontsize=8)
axes[0].set_ylim(-3, 3)
axes[1].set_ylim(-0.05, 1.2)
fig.tight_layout()
fig.savefig("similarity_profile.png", dpi=150)

# physical fields: before (t<0) the boundary waits at x=0; after, it moves
xs = np.linspace(-0.8, 2.0, 800)
fig, axes = plt.subplots(1, 2, figsize=(11, 4.4))
for t in (-1.0, -0.25, 0.25, 1.0):
    rho = []
    u = []
    for x in xs:
        if t < 0 and x < 0:
            rho.append(0.0)
            u.append(0.0)
            continue
        s = eval_physical(sol, t, float(x))
        rho.append(s.rho)
        u.append(s.u)
    axes[0].plot(xs, rho, label=f"t={t}")
    axes[1].plot(xs, u, label=f"t={t}")
    print(f"t={t:+.2f}: b(t) = {boundary(sol, t):+.6f}")
axes[0].set_xlabel("x")
axes[0].set_ylabel("rho")
axes[1].set_xlabel("x")
axes[1].set_ylabel("u")
for ax in axes:
    ax.legend(fontsize=8)
fig.tight_layout()
fig.savefig("physical_fields.png", dpi=150)
print("wrote similarity_profile.png, physical_fields.png")
