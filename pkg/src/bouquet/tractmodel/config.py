"""Flat key=value config files and hair export."""
import math

import mpmath as mp

from ..errors import SpecError


def parse_config_text(text):
    """key=value lines; '#' starts a comment; later keys override earlier ones."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, eq, val = line.partition("=")
        if not eq or not key.strip():
            raise SpecError("line %d: expected key=value, got %r" % (lineno, raw))
        out[key.strip()] = val.strip()
    return out


def read_config(path):
    with open(path, encoding="utf-8") as fh:
        return parse_config_text(fh.read())


def model_spec_from_config(cfg):
    """The model part of a config: `model` plus keys prefixed `model.`."""
    if "model" not in cfg:
        raise SpecError("config has no 'model' key")
    spec = {"model": cfg["model"].split(":", 1)[0]}
    for k, v in cfg.items():
        if k.startswith("model."):
            spec[k[len("model."):]] = v
    if ":" in cfg["model"]:
        from .models import parse_spec
        kind, params = parse_spec(cfg["model"])
        spec.update({k: v for k, v in params.items() if k not in spec})
    return spec


def _num(x):
    if isinstance(x, (mp.mpf, mp.mpc)):
        x = mp.mpf(x)
        return float(x) if abs(x) < 1e300 else mp.nstr(x, 17)
    x = float(x)
    return x if math.isfinite(x) else str(x)


def hair_rows(model, hair):
    """[(t, re, im, err), ...]; huge real parts are written as strings."""
    rows = []
    for s in hair.samples:
        v = model.value(s.z)
        if isinstance(v, mp.mpc):
            re, im = _num(v.real), _num(v.imag)
        else:
            re, im = complex(v).real, complex(v).imag
        rows.append([s.t, re, im, _num(s.error_bound)])
    return rows
