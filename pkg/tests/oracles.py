"""Frozen reference values for the test suite.

Every constant here was computed with mpmath at 25 significant digits
(scripts inline below each block as comments), then frozen. Tests
compare library output against these literals; `recompute_*` helpers
re-derive a value independently so the freeze itself can be audited
(see test_oracles_self_check in test_zetacore.py).
"""

from __future__ import annotations

# --- critical-line zeros 1..10 --------------------------------------------
# mpmath: [mp.im(mp.zetazero(n)) for n in 1..10] at dps=25
ZEROS_1_10 = (
    14.1347251417346938,
    21.022039638771555,
    25.0108575801456888,
    30.4248761258595132,
    32.9350615877391897,
    37.5861781588256713,
    40.9187190121474952,
    43.3270732809149995,
    48.0051508811671597,
    49.7738324776723022,
)

# mp.im(mp.zetazero(956)) — the zero adjacent to the k=302 boundary hairpin
ZERO_956 = 1368.33019330798589

# --- Riemann-Siegel theta ---------------------------------------------------
# mp.siegeltheta(t) at dps=25
THETA_100 = 87.9721652317872196
THETA_1000 = 2034.54642803803161

# --- point values of zeta and its derivative -------------------------------
# mp.zeta(...) at dps=25
ZETA_HALF = -1.46035450880958681  # zeta(1/2)
ZETA_3 = 1.20205690315959429  # Apery's constant
ZETA_HALF_100I = (2.69261988568132409, -0.0203860296025981618)
DZETA_HALF_25I = (1.2852719698398148, 0.468108870953630832)
ZETA_3_1500I = (0.880414913986812893, -0.0530498301390677674)
ZETA_M25_40I = (-26.9458104960953009, -243.925705833293534)

# --- contour seeds at sigma = 8 ---------------------------------------------
# mp.findroot(Im zeta(8 + it), k*pi/ln 2) at dps=25
SEED_K2 = 9.09402019355145877
SEED_K3 = 13.6348159917078656
SEED_K4 = 18.0824961456078298
SEED_K5 = 22.64677209944419

# --- strip-boundary crossings (Im zeta = 0, Re zeta > 0) --------------------
# mp.findroot(Im zeta(sigma + it), guess) at dps=25
CROSS_S05_K2 = 9.66690805613019214  # bottom of strip 1 at sigma = 0.5
CROSS_S05_K4 = 17.8455995404108608  # strip 1 top / strip 2 bottom
CROSS_S05_K6 = 27.670182217816338  # strip 2 top / strip 3 bottom
CROSS_S2_K2 = 9.40505589612405069  # bottom of strip 1 measured at sigma = 2

# The k=302 boundary contour hairpins around a zero of zeta' near
# (1.15, 1368.30) and crosses sigma = 0.5 between zeros 955 and 956.
# 25-dps arclength continuation + findroot; regression anchor for the
# saddle-aware step cap in the tracer.
CROSS_S05_K302 = 1367.756313792707452


def recompute_zero(n: int) -> float:
    """Independent recomputation of the n-th zero (requires mpmath)."""
    import mpmath as mp

    with mp.workdps(25):
        return float(mp.im(mp.zetazero(n)))


def recompute_zeta(sigma: float, t: float) -> complex:
    """Independent recomputation of zeta(sigma + it) (requires mpmath)."""
    import mpmath as mp

    with mp.workdps(25):
        return complex(mp.zeta(mp.mpc(sigma, t)))


def recompute_theta(t: float) -> float:
    """Independent recomputation of the Riemann-Siegel theta."""
    import mpmath as mp

    with mp.workdps(25):
        return float(mp.siegeltheta(t))
