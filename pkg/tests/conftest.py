"""Shared frozen reference values.

Root values were computed ahead of time from the exact rational determinant
polynomials (symbolic arithmetic, then rounded to double precision); the
normalization constant comes from the closed-form Gaussian-moment evaluation.
"""

import math

# couplings of the polynomial classes at d/b = 1, ascending
N1_L0_G = (12.0, 26.0)
N1_L1_G = (25.0 - math.sqrt(89.0), 25.0 + math.sqrt(89.0))
N2_L0_G = (13.874580313012219, 28.206711029386899, 49.918708657600882)

# density normalization for b = d = 1, v1 = -2:  2 sqrt(1810) / (905 pi^{1/4})
NCAL_REF = 2.0 * math.sqrt(1810.0) / (905.0 * math.pi**0.25)
