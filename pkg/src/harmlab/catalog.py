"""Built-in sense-preserving harmonic maps used as a test corpus.

Every entry is sense-preserving on the closed disk ``|z| <= 0.7``.
"""
from __future__ import annotations

from .errors import UnknownCatalogEntry
from .expr import parse_expr
from .series import series_antiderivative, series_from_expr

# Dilatation of "blaschke-dil": a scaled disk automorphism, |omega| <= 0.9.
BLASCHKE_OMEGA = "0.9*(z+0.3)/(1+0.3*z)"

_ENTRIES = {
    "identity": ("z", "0", "constant dilatation 0"),
    "shear": ("z", "z^2/2", "omega = z"),
    "rotor": ("z", "0.5*z", "constant dilatation 0.5"),
    "expmap": ("exp(z)-1", "0.3*z", "omega = 0.3*exp(-z)"),
    "blaschke-dil": ("z", None, f"omega = {BLASCHKE_OMEGA}"),
    "cubic-dil": ("z", "z^2/2+z^4/40", "omega = z + z^3/10"),
    "exp-shear": ("exp(z)-1", "0.9*(z-1)*exp(z)+0.9", "omega = 0.9*z"),
    "exp-rotor": ("exp(z)-1", "0.4*(exp(z)-1)", "constant dilatation 0.4"),
}

# Constant-dilatation entries; everything else has a Type2 Jacobian.
TYPE1_NAMES = ("identity", "rotor", "exp-rotor")
TYPE2_NAMES = tuple(n for n in _ENTRIES if n not in TYPE1_NAMES)


def catalog_names():
    return list(_ENTRIES)


def catalog_description(name):
    return _lookup(name)[2]


def _lookup(name):
    try:
        return _ENTRIES[name]
    except KeyError:
        raise UnknownCatalogEntry(name) from None


def catalog_lookup(name: str):
    """Return ``(h, g)`` for a catalog entry."""
    h_text, g_text, _ = _lookup(name)
    h = parse_expr(h_text)
    if g_text is None:
        # g has no closed form in the grammar (needs a logarithm); the
        # series converges on |z| < 1/0.3 so evaluation is allowed to 0.9.
        g = series_antiderivative(series_from_expr(parse_expr(BLASCHKE_OMEGA), 64, r_max=0.9))
    else:
        g = parse_expr(g_text)
    return h, g
