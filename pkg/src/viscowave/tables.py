"""Reference result tables bundled for regression comparison.

Three published reference tables are embedded verbatim, each cell tagged
with its original (table, row, column) coordinates, so the `table` commands
are self-auditing: they emit the computed value, the reference value and the
deviation side by side.

Column conventions of the reference source (established by matching all
cells to 4-5 significant figures):

* The column printed as "relative numerical damping error" actually holds
  the wave-velocity error 100*(d/l - A*)/(d/l); the column printed as
  "velocity error" holds the damping error with opposite sign,
  100*(h/l - B*)/B*.  The two reference columns are therefore mapped to the
  computed quantities as

      reference "damping" column  <->  vel_err_pct
      reference "velocity" column <->  -damp_err_pct

* Table 2 and table 3 do not state the physical damping; every cell of
  table 2 matches gamma = 0.1 to within 0.1%, so that value is the default
  for both (a {0.1, 0.01, 0.001} sensitivity sweep is emitted with each
  row).

* One table-1 cell (a=b=10, gamma=0.001, lumped, "damping" column) prints
  5.967 where the formulas give 5.06682: a digit transposition of 5.067.
  It is flagged below and excluded from strict comparisons.

* The table-3 reflection magnitudes do not follow from the closed form at
  all (nor from any plausible variant of it) and contradict direct
  time-domain simulation of the same discretization, which confirms the
  closed form implemented here to within a few percent.  They are kept
  verbatim so the deviation is visible in the reports.
"""

from __future__ import annotations

from typing import Optional

from .core import CONSISTENT, LUMPED, WaveSetting
from .dispersion import dispersion_errors, numerical_wave
from .reflection import reflection_amplitude

GAMMA_SWEEP = (0.1, 0.01, 0.001)

#: Default damping used to reproduce tables 2 and 3 (see module docstring).
TABLE2_GAMMA = 0.1
TABLE3_GAMMA = 0.1

# (a=b, gamma) -> (damping-column cons, lumped, velocity-column cons, lumped),
# columns named as printed in the reference source.
REFERENCE_TABLE_1 = (
    (100, 0.1, 0.01645, 0.04747, 0.01646, 0.1121),
    (100, 0.01, 0.01645, 0.04934, 0.01646, 0.1153),
    (100, 0.001, 0.01645, 0.04936, 0.01669, 0.1158),
    (50, 0.1, 0.06582, 0.1900, 0.06592, 0.4500),
    (50, 0.01, 0.06582, 0.1975, 0.06593, 0.4627),
    (50, 0.001, 0.06582, 0.1976, 0.06592, 0.4628),
    (25, 0.1, 0.2635, 0.7620, 0.2652, 1.825),
    (25, 0.01, 0.2635, 0.7924, 0.2654, 1.878),
    (25, 0.001, 0.2635, 0.7927, 0.2654, 1.878),
    (20, 0.1, 0.4119, 1.193, 0.4161, 2.883),
    (20, 0.01, 0.4121, 1.241, 0.4166, 2.967),
    (20, 0.001, 0.4121, 1.241, 0.4166, 2.968),
    (10, 0.1, 1.657, 4.857, 1.731, 12.68),
    (10, 0.01, 1.660, 5.065, 1.740, 13.10),
    (10, 0.001, 1.660, 5.967, 1.740, 13.10),
)

#: (a, gamma, mass, column) of the transposed-digit cell; reference prints
#: 5.967, the formulas give 5.067.
TABLE1_SUSPECT_CELL = (10, 0.001, "lumped", "damping")

# (a, b) -> (damping-column cons, lumped, velocity-column cons, lumped).
REFERENCE_TABLE_2 = (
    (100, 50, -0.030002, 0.09405, -0.1265, 0.2561),
    (50, 100, 0.1123, 0.1434, 0.2094, 0.3054),
    (50, 25, -0.1195, 0.3772, -0.5021, 1.034),
    (25, 50, 0.4495, 0.574, 0.8419, 1.232),
    (20, 10, -0.7238, 2.403, -2.971, 6.944),
    (10, 20, 2.818, 3.617, 5.453, 8.176),
    (10, 5, -2.566, 10.42, -9.724, 38.43),
    (5, 10, 11.39, 14.93, 24.98, 41.88),
)

# (a=b, alpha, right-region mesh parameter b/alpha) -> |A_re| % (cons, lumped).
REFERENCE_TABLE_3 = (
    (100, 0.5, 200.0, 1.845, 1.845),
    (100, 0.7, 142.9, 1.397, 1.397),
    (100, 0.9, 111.1, 0.5740, 0.5753),
    (100, 1.1, 90.91, 0.6966, 0.6937),
    (100, 1.5, 66.67, 4.868, 4.860),
    (100, 2.0, 50.0, 13.67, 13.65),
    (50, 0.5, 100.0, 3.704, 3.705),
    (50, 0.7, 71.35, 2.798, 2.803),
    (50, 0.9, 55.56, 1.151, 1.163),
    (50, 1.1, 45.45, 1.392, 1.371),
    (50, 1.5, 33.33, 9.605, 9.548),
    (50, 2.0, 25.0, 25.86, 25.72),
    (10, 0.5, 20.0, 19.26, 20.10),
    (10, 0.7, 14.29, 14.39, 15.55),
    (10, 0.9, 11.11, 5.738, 7.542),
    (10, 1.1, 9.091, 6.678, 4.080),
    (10, 1.5, 6.667, 37.51, 33.08),
    (10, 2.0, 5.000, 66.34, 61.66),
)

_MASSES = (("consistent", CONSISTENT), ("lumped", LUMPED))


def _deviation(computed: float, reference: float) -> tuple[float, Optional[float]]:
    dev_abs = computed - reference
    dev_rel = 100.0 * dev_abs / reference if reference != 0.0 else None
    return dev_abs, dev_rel


def _error_row(a: float, b: float, gamma: float, mass_name: str, mass,
               ref_damp_col: float, ref_vel_col: float) -> dict:
    setting = WaveSetting(a=a, b=b, gamma=gamma, mass=mass)
    errors = dispersion_errors(setting)
    wave = numerical_wave(setting)
    # reference columns mapped into the computed conventions (see module docstring)
    ref_vel = ref_damp_col
    ref_damp = -ref_vel_col
    vel_dev_abs, vel_dev_rel = _deviation(errors.vel_err_pct, ref_vel)
    damp_dev_abs, damp_dev_rel = _deviation(errors.damp_err_pct, ref_damp)
    return {
        "a": a,
        "b": b,
        "gamma": gamma,
        "mass": mass_name,
        "d": wave.d,
        "h": wave.h,
        "vel_err_pct": errors.vel_err_pct,
        "ref_vel_err_pct": ref_vel,
        "vel_dev_abs_pp": vel_dev_abs,
        "vel_dev_rel_pct": vel_dev_rel,
        "damp_err_pct": errors.damp_err_pct,
        "ref_damp_err_pct": ref_damp,
        "damp_dev_abs_pp": damp_dev_abs,
        "damp_dev_rel_pct": damp_dev_rel,
    }


def table1_rows() -> list[dict]:
    """Computed vs reference rows of table 1 (unity Courant, stated gamma)."""
    rows = []
    for a, gamma, damp_c, damp_l, vel_c, vel_l in REFERENCE_TABLE_1:
        for mass_name, mass in _MASSES:
            ref_damp_col = damp_c if mass_name == "consistent" else damp_l
            ref_vel_col = vel_c if mass_name == "consistent" else vel_l
            row = _error_row(a, a, gamma, mass_name, mass, ref_damp_col, ref_vel_col)
            row["suspect"] = (a, gamma, mass_name, "damping") == TABLE1_SUSPECT_CELL
            rows.append(row)
    return rows


def _sweep_columns(a: float, b: float, mass) -> dict:
    cols = {}
    for gamma in GAMMA_SWEEP:
        errors = dispersion_errors(WaveSetting(a=a, b=b, gamma=gamma, mass=mass))
        tag = f"{gamma:g}".replace(".", "p")
        cols[f"vel_err_pct_g{tag}"] = errors.vel_err_pct
        cols[f"damp_err_pct_g{tag}"] = errors.damp_err_pct
    return cols


def table2_rows(gamma: float = TABLE2_GAMMA) -> list[dict]:
    """Computed vs reference rows of table 2 (mixed Courant numbers).

    The reference omits gamma; rows carry the full sensitivity sweep next to
    the values at the chosen default.
    """
    rows = []
    for a, b, damp_c, damp_l, vel_c, vel_l in REFERENCE_TABLE_2:
        for mass_name, mass in _MASSES:
            ref_damp_col = damp_c if mass_name == "consistent" else damp_l
            ref_vel_col = vel_c if mass_name == "consistent" else vel_l
            row = _error_row(a, b, gamma, mass_name, mass, ref_damp_col, ref_vel_col)
            row.update(_sweep_columns(a, b, mass))
            rows.append(row)
    return rows


def table3_rows(gamma: float = TABLE3_GAMMA) -> list[dict]:
    """Computed vs reference rows of table 3 (graded-mesh reflection).

    The computed magnitudes follow the interface closed form validated by
    the time-domain simulator; the reference magnitudes deviate from it by
    orders of magnitude (see module docstring) and the deviation columns
    make that visible.
    """
    rows = []
    for a, alpha, right_b, ref_c, ref_l in REFERENCE_TABLE_3:
        for mass_name, mass in _MASSES:
            setting = WaveSetting(a=a, b=a, gamma=gamma, mass=mass, alpha=alpha)
            result = reflection_amplitude(setting)
            reference = ref_c if mass_name == "consistent" else ref_l
            dev_abs, dev_rel = _deviation(result.magnitude_pct, reference)
            row = {
                "a": a,
                "b": a,
                "gamma": gamma,
                "alpha": alpha,
                "right_mesh_parameter": right_b,
                "mass": mass_name,
                "reflection_pct": result.magnitude_pct,
                "ref_reflection_pct": reference,
                "dev_abs_pp": dev_abs,
                "dev_rel_pct": dev_rel,
                "a_re_real": result.a_re.real,
                "a_re_imag": result.a_re.imag,
            }
            for sweep_gamma in GAMMA_SWEEP:
                sweep_setting = WaveSetting(a=a, b=a, gamma=sweep_gamma, mass=mass, alpha=alpha)
                tag = f"{sweep_gamma:g}".replace(".", "p")
                row[f"reflection_pct_g{tag}"] = reflection_amplitude(sweep_setting).magnitude_pct
            rows.append(row)
    return rows


def table_rows(which: int, gamma: Optional[float] = None) -> list[dict]:
    """Rows of reference table 1, 2 or 3 with computed/deviation columns."""
    if which == 1:
        if gamma is not None:
            raise ValueError("table 1 states gamma per row; a gamma override does not apply")
        return table1_rows()
    if which == 2:
        return table2_rows(TABLE2_GAMMA if gamma is None else gamma)
    if which == 3:
        return table3_rows(TABLE3_GAMMA if gamma is None else gamma)
    raise ValueError(f"no such table: {which}; expected 1, 2 or 3")
