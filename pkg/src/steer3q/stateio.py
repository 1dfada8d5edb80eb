"""State-file reading and writing.

Files are a small JSON dialect with explicit re/im pairs (no complex
literals) and a ``format_version`` field:

    {"format_version": 1,
     "kind": "pure_amplitudes" | "density_matrix" | "gsd_params" | "named_family",
     "payload": {...},
     "metadata": "free-form label"}

Payloads:
  pure_amplitudes: {"amplitudes": [[re, im] x 8]}       (norm 1 within tol)
  density_matrix:  {"matrix": [[re, im] x 64]}          (row-major, validated)
  gsd_params:      {"lambdas": [l0..l4], "phi": float}
  named_family:    {"name": str, "params": [floats]}
"""

import json

import numpy as np

from .errors import ParseError, Steer3qError, ValidationError
from .families import gsd_params, gsd_state, make_named
from .qlinalg import DensityMatrix, PureState, pure_state, validate_density

FORMAT_VERSION = 1
KINDS = ("pure_amplitudes", "density_matrix", "gsd_params", "named_family")


def _complex_pairs(raw, count, what):
    if not isinstance(raw, list) or len(raw) != count:
        raise ParseError(f"{what}: expected {count} [re, im] pairs")
    out = np.empty(count, dtype=complex)
    for i, pair in enumerate(raw):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
        ):
            raise ParseError(f"{what}[{i}]: expected [re, im] with numeric entries")
        out[i] = complex(pair[0], pair[1])
    return out


def load_state(path, tol: float = 1e-9):
    """Read a state file; returns (PureState | DensityMatrix, metadata str)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError:
        raise
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not valid JSON ({exc})")
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top level must be an object")
    if doc.get("format_version") != FORMAT_VERSION:
        raise ParseError(f"{path}: format_version must be {FORMAT_VERSION}")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise ParseError(f"{path}: kind must be one of {KINDS}")
    payload = doc.get("payload")
    if not isinstance(payload, dict):
        raise ParseError(f"{path}: payload must be an object")
    metadata = str(doc.get("metadata", ""))
    try:
        if kind == "pure_amplitudes":
            amps = _complex_pairs(payload.get("amplitudes"), 8, "amplitudes")
            nrm = float(np.linalg.norm(amps))
            if abs(nrm - 1.0) > tol:
                raise ValidationError(f"amplitude norm deviates from 1 by {abs(nrm - 1.0):.3e}")
            return pure_state(amps / nrm, 3), metadata
        if kind == "density_matrix":
            flat = _complex_pairs(payload.get("matrix"), 64, "matrix")
            return validate_density(flat.reshape(8, 8), 3), metadata
        if kind == "gsd_params":
            lambdas = payload.get("lambdas")
            if not isinstance(lambdas, list) or len(lambdas) != 5:
                raise ParseError("gsd_params: lambdas must be a list of 5 reals")
            phi = payload.get("phi", 0.0)
            return gsd_state(gsd_params(lambdas, float(phi))), metadata
        name = payload.get("name")
        if not isinstance(name, str):
            raise ParseError("named_family: payload.name must be a string")
        params = payload.get("params", [])
        if not isinstance(params, list):
            raise ParseError("named_family: payload.params must be a list")
        return make_named(name, tuple(params)), metadata
    except Steer3qError:
        raise
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{path}: {exc}")


def state_document(state, metadata: str = "") -> dict:
    """Serializable file document for a state (inverse of `load_state`)."""
    if isinstance(state, PureState):
        return {
            "format_version": FORMAT_VERSION,
            "kind": "pure_amplitudes",
            "payload": {
                "amplitudes": [[float(z.real), float(z.imag)] for z in state.amplitudes]
            },
            "metadata": metadata,
        }
    if isinstance(state, DensityMatrix):
        flat = state.matrix.reshape(-1)
        return {
            "format_version": FORMAT_VERSION,
            "kind": "density_matrix",
            "payload": {"matrix": [[float(z.real), float(z.imag)] for z in flat]},
            "metadata": metadata,
        }
    raise TypeError(f"cannot serialize {type(state).__name__}")
