# %% [markdown]
# # The band-limited kernel
#
# The kernel of the space of fields whose spatial spectrum lives on the
# sphere |k| = k is a Bessel function of the separation. This script
# evaluates it in a few dimensions and checks it against a brute-force
# average of plane waves over directions.

# %%
import math

import numpy as np

from rkfield import KernelSpec, kernel_eval, sphere_area
from rkfield.kernel import kernel_oracle_quadrature, kernel_matrix

# %% [markdown]
# At zero separation the kernel equals the surface area of the unit sphere.

# %%
for d in range(1, 7):
    spec = KernelSpec(d, 10.0)
    print(d, kernel_eval(spec, np.zeros(d), np.zeros(d)), sphere_area(d))

# %% [markdown]
# In 1-D the kernel is a plain cosine. In 2-D it is 2 pi J0(k rho). In 3-D it
# is 4 pi sinc(k rho).

# %%
rho = np.linspace(0.0, 1.0, 6)
spec2 = KernelSpec.from_frequency(2, 2000.0)
print("k =", spec2.k)
row = kernel_matrix(spec2, np.zeros((1, 2)), np.column_stack([rho, 0 * rho]))[0]
print(np.round(row, 6))

# %% [markdown]
# Quadrature check: average exp(i k theta . (r - r')) over the sphere.

# %%
rng = np.random.default_rng(1)
for d in (1, 2, 3):
    spec = KernelSpec(d, 25.0)
    r, rp = rng.uniform(-1, 1, d), rng.uniform(-1, 1, d)
    re, im = kernel_oracle_quadrature(spec, r, rp, resolution=160)
    print(d, kernel_eval(spec, r, rp), re, abs(im))
