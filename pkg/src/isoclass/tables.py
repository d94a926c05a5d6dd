"""Reference data for l = 2: tabulated genus-2 curves and Weil number classes.

Invariants are (I2 : I4 : I6 : I10).  Entries over a quadratic field
Q(a), a^2 = d, are written as pairs (x, y) meaning x + y a.
"""

from .exactmath import quadratic_field
from .genus2glue import IgusaPoint

# name -> (d or None, invariants)
GLUED_CURVES = {
    "C-3": (None, (40, 45, 555, 6)),
    "C-6^1": (None, (92, 108, 4104, 24)),
    "C-6^2": (None, (76, 252, 5160, 24)),
    "C-7": (None, (10840, 2004345, 7846230105, 131736761856)),
    "C-8": (None, (20, -20, -40, 8)),
    "C-15": (None, (20, 225, 1185, -384)),
    "C-20^i": (-1, ((-156, 448), (-17620, 840), (690600, -1793200), (126664, 4527152))),
    "C-4,-7^a": (7, ((8, 20), (-1035, -450), (87246, 33606), (25164, 9504))),
    "C-4,-8": (None, (24, 30, 366, 2)),
}

# (a1, a2) of quartic Weil 2-numbers whose field has no imaginary quadratic subfield
PRIMITIVE_CURVES = {
    (1, -4): (2, ((-36, 36), (-45, 0), (486, -459), (28, -20))),
    (1, -3): (17, ((69, -21), (330, -150), (22416, -5256), (-2792, 680))),
    (1, -1): (41, ((153, -27), (1098, -162), (135432, -21168), (-7944, 1240))),
    (2, -1): (17, ((72, 0), (90, 90), (-3132, 2916), (1152, -128))),
}

# (a1, a2) of quartic Weil 2-numbers whose field contains an imaginary quadratic subfield
V4_SURFACES = {
    (0, -7): ["E-7 x E-7"],
    (0, -6): ["J(C-8)", "E-3 x E-12"],
    (0, -5): ["J(C-3)", "E-3 x E-3", "J(C-15)", "E-15 products"],
    (1, -5): ["E-3 x E-3"],
    (0, -3): ["J(C-20^i)", "J(C-15)", "E-15 products"],
    (0, -2): ["J(C-6^1)", "J(C-6^2)", "E-3 x E-3", "E-3 x E-12"],
    (2, -2): ["E-3 x E-3", "E-4 x E-4"],
    (3, 1): ["J(C-15)", "E-3 x E-3"],
}

WEIL_QUADRATIC_L2 = [(-2, 0, 1), (2, 0, 1), (2, -1, 1), (2, -2, 1)]
WEIL_V4_L2 = sorted(V4_SURFACES)
WEIL_D4_L2 = sorted(PRIMITIVE_CURVES)

# Tabulated glued curves not on the Humbert surface of discriminant 8
OFF_H8 = ("C-15", "C-4,-7^a", "C-4,-8")

CM_J = {-3: 0, -4: 1728, -7: -3375, -8: 8000, -12: 54000}


def _point(entry):
    d, vals = entry
    if d is None:
        return IgusaPoint(*vals)
    K = quadratic_field(d)
    return IgusaPoint(*(K(list(v)) for v in vals))


def glued_curve(name):
    return _point(GLUED_CURVES[name])


def primitive_curve(a1, a2):
    return _point(PRIMITIVE_CURVES[(a1, a2)])


def point_to_json(p):
    out = []
    field = None
    for v in p.values():
        if hasattr(v, "c"):
            field = [str(c) for c in v.field.minpoly]
            out.append([str(c) for c in v.c])
        else:
            out.append(str(v))
    return {"invariants": out, "field": field}
