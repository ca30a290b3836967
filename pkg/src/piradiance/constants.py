"""Physical constants and the reference (k, eta) table for the plotted laws."""

C_LIGHT = 2.99792458e8  # m s^-1
SIGMA = 5.6696e-8  # J m^-2 s^-1 K^-4, Stefan's constant as used for the fits
WIEN_C = 5.8787e10  # s^-1 K^-1, nu_max / T
PLANCK_X_MAX = 2.82144  # quoted root of X = 3 (1 - exp(-X))

# law -> (k [J/K], eta [J s]); the Rayleigh-Jeans row repeats Planck's and is
# display-only: that law has no peak and a divergent energy integral.
TABLE1: dict[str, tuple[float, float]] = {
    "planck": (1.3806e-23, 6.6262e-34),
    "wien-paschen": (1.7963e-23, 9.1670e-34),
    "thiesen": (1.8768e-23, 7.9813e-34),
    "rayleigh": (1.5967e-23, 5.4323e-34),
    "rayleigh-jeans": (1.3806e-23, 6.6262e-34),
}
