"""Escape-time rendering to binary PPM.

Pixels are computed row by row with the same vector length in every row,
so the bytes do not depend on how rows are shared between threads.
"""
import hashlib
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import BouquetError, SpecError
from .tractmodel.address import parse_address
from .tractmodel.dynamics import default_potentials, trace_hair
from .tractmodel.models import build_model

PALETTES = {
    "bands8": [(255, 247, 188), (254, 196, 79), (236, 112, 20), (153, 52, 4),
               (37, 52, 148), (44, 127, 184), (65, 182, 196), (199, 233, 180)],
    "gray": [(v, v, v) for v in range(40, 256, 27)],
}
INTERIOR = (0, 0, 0)
OVERLAY = (255, 255, 255)
# exp(x) overflows a double beyond this
MAX_ESCAPE = 700.0


@dataclass
class RenderConfig:
    model: str = "exp"
    view: str = "plane"
    box: tuple = (-2.0, 6.0, -3.0, 3.0)
    width: int = 800
    height: int = 600
    max_iter: int = 128
    escape_radius: float = 50.0
    palette: str = "bands8"
    overlay_hairs: bool = False
    overlay_tracts: bool = False
    out: str = "render.ppm"
    extra: dict = field(default_factory=dict)

    @classmethod
    def from_mapping(cls, cfg):
        """Build from string key=value pairs (config file plus overrides)."""
        kw = {}
        for k, v in cfg.items():
            if k == "box":
                parts = [float(s) for s in str(v).replace(",", " ").split()] if isinstance(v, str) else list(v)
                if len(parts) != 4:
                    raise SpecError("box needs four numbers: xmin xmax ymin ymax")
                kw["box"] = tuple(parts)
            elif k in ("width", "height", "max_iter"):
                kw[k] = int(v)
            elif k == "escape_radius":
                kw[k] = float(v)
            elif k in ("overlay_hairs", "overlay_tracts"):
                kw[k] = v if isinstance(v, bool) else str(v).strip().lower() in ("1", "true", "yes", "on")
            elif k in ("model", "view", "palette", "out"):
                kw[k] = str(v)
            elif k.startswith("model."):
                kw.setdefault("extra", {})[k] = v
            else:
                raise SpecError("unknown render key %r" % k)
        return cls(**kw)

    def model_spec(self):
        spec = self.model
        params = [k[len("model."):] + "=" + str(v) for k, v in sorted(self.extra.items())]
        if params:
            spec += (":" if ":" not in spec else ",") + ",".join(params)
        return spec


def validate(cfg, model=None):
    if cfg.width <= 0 or cfg.height <= 0:
        raise SpecError("image dimensions must be positive")
    if cfg.max_iter <= 0:
        raise SpecError("max_iter must be positive")
    x0, x1, y0, y1 = cfg.box
    if not (x1 > x0 and y1 > y0):
        raise SpecError("bounding box must have positive width and height")
    if cfg.view not in ("plane", "log"):
        raise SpecError("view must be 'plane' or 'log'")
    if cfg.palette not in PALETTES:
        raise SpecError("unknown palette %r" % cfg.palette)
    if not cfg.escape_radius <= MAX_ESCAPE:
        raise SpecError("escape_radius must not exceed %g" % MAX_ESCAPE)
    if model is not None:
        if cfg.view == "plane" and model.kind != "exp":
            raise SpecError("the plane view is available for the exp model only")
        if not cfg.escape_radius > model.Q:
            raise SpecError("escape_radius must exceed Q = %g" % model.Q)


def _grid_row(cfg, j):
    x0, x1, y0, y1 = cfg.box
    xs = x0 + (np.arange(cfg.width) + 0.5) * ((x1 - x0) / cfg.width)
    y = y1 - (j + 0.5) * ((y1 - y0) / cfg.height)
    return xs + 1j * y


def _exp_row(cfg, model, j):
    """Escape iteration per pixel (max_iter for none); exp model, vectorised."""
    z = _grid_row(cfg, j)
    log_a = math.log(model.params["a"])
    count = np.full(z.shape, cfg.max_iter, dtype=np.int64)
    active = np.ones(z.shape, dtype=bool)
    R = cfg.escape_radius
    for n in range(cfg.max_iter):
        esc = active & (z.real > R)
        count[esc] = n
        active &= ~esc
        if not active.any():
            break
        za = z[active]
        # plane: z -> a e^z; log coordinates: w -> e^w + ln a
        z[active] = np.exp(za + log_a) if cfg.view == "plane" else np.exp(za) + log_a
    return count


def _model_row(cfg, model, j):
    """Escape iteration per pixel under the model map; leaving the tracts never escapes."""
    out = np.full(cfg.width, cfg.max_iter, dtype=np.int64)
    for i, z in enumerate(_grid_row(cfg, j)):
        for n in range(cfg.max_iter):
            if model.re(z) > cfg.escape_radius:
                out[i] = n
                break
            try:
                z, _ = model.forward(z)
            except BouquetError:
                break
    return out


def escape_counts(cfg, model, threads=1):
    row = _exp_row if model.kind == "exp" else _model_row
    with ThreadPoolExecutor(max_workers=max(1, int(threads))) as pool:
        rows = list(pool.map(lambda j: row(cfg, model, j), range(cfg.height)))
    return np.vstack(rows)


def _overlay_points(cfg, model):
    pts = []
    if cfg.overlay_hairs:
        for m in range(-2, 3):
            addr = parse_address("| 0%+d" % m if m else "| 0")
            hair = trace_hair(model, addr, default_potentials(model, 64, 5.0), 40)
            pts += [complex(model.value(s.z)) for s in hair.samples]
    if cfg.overlay_tracts:
        for t in model.tracts.values():
            for m in range(-2, 3):
                pts += [complex(model.value(z)) + 2j * math.pi * m for z in t.boundary_samples(201)]
    if cfg.view == "plane":
        pts = [np.exp(p) for p in pts if p.real < MAX_ESCAPE]
    return pts


def colorize(counts, cfg, overlay=()):
    pal = np.array(PALETTES[cfg.palette], dtype=np.uint8)
    img = pal[counts % len(pal)]
    img[counts >= cfg.max_iter] = INTERIOR
    x0, x1, y0, y1 = cfg.box
    for p in overlay:
        i = int((p.real - x0) / (x1 - x0) * cfg.width)
        j = int((y1 - p.imag) / (y1 - y0) * cfg.height)
        if 0 <= i < cfg.width and 0 <= j < cfg.height:
            img[j, i] = OVERLAY
    return img


def ppm_bytes(img):
    h, w, _ = img.shape
    return b"P6\n%d %d\n255\n" % (w, h) + np.ascontiguousarray(img, dtype=np.uint8).tobytes()


def default_threads():
    try:
        return max(1, int(os.environ.get("BOUQUET_THREADS", "1")))
    except ValueError:
        return 1


def render(cfg, threads=None, write=True):
    """Render `cfg`; returns (image bytes, stats)."""
    validate(cfg)
    model = build_model(cfg.model_spec(), check=False)
    validate(cfg, model)
    threads = default_threads() if threads is None else threads
    counts = escape_counts(cfg, model, threads)
    img = colorize(counts, cfg, _overlay_points(cfg, model))
    data = ppm_bytes(img)
    if write:
        if cfg.out.lower().endswith(".png"):
            from PIL import Image
            Image.fromarray(img).save(cfg.out)
        else:
            with open(cfg.out, "wb") as fh:
                fh.write(data)
    hist = np.bincount(counts.ravel(), minlength=cfg.max_iter + 1)
    stats = {
        "escaping_fraction": float((counts < cfg.max_iter).mean()),
        "histogram": hist.tolist(),
        "palette": cfg.palette,
        "sha256": hashlib.sha256(data).hexdigest(),
        "config": {k: v for k, v in asdict(cfg).items() if k != "extra"},
    }
    return data, stats
