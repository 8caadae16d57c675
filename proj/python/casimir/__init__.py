"""Thermal Casimir and Casimir-Polder forces from Lifshitz theory.

Materials may be given as dicts or JSON strings in the CLI material schema.
Lengths in nm, frequencies in eV, results in SI units.
"""

import functools
import json

from . import _casimir
from ._casimir import (  # noqa: F401
    ConfigError,
    NumericalError,
    ParseError,
    beta,
    ideal_metal_free_energy,
    ideal_metal_pressure,
    kramers_kronig,
)

_MATERIAL_ARGS = ("material", "material1", "material2", "wall", "eps0", "eps1", "eps2")


def _text(material):
    return material if isinstance(material, str) else json.dumps(material)


def _wrap(fn):
    @functools.wraps(fn)
    def call(*args, **kwargs):
        args = [_text(a) if isinstance(a, dict) else a for a in args]
        for key in _MATERIAL_ARGS:
            if key in kwargs:
                kwargs[key] = _text(kwargs[key])
        return fn(*args, **kwargs)

    return call


eval_eps = _wrap(_casimir.eval_eps)
fresnel = _wrap(_casimir.fresnel)
pressure = _wrap(_casimir.pressure)
free_energy = _wrap(_casimir.free_energy)
entropy = _wrap(_casimir.entropy)
casimir_polder = _wrap(_casimir.casimir_polder)
lateral_force = _wrap(_casimir.lateral_force)
sphere_force = _wrap(_casimir.sphere_force)
repulsion_check = _wrap(_casimir.repulsion_check)


def normalize_material(material):
    """Validated material in canonical JSON form."""
    return json.loads(_casimir.normalize_material(_text(material)))
