"""bouquet command line: render, trace, verify, constants."""
import argparse
import json
import math
import sys

import mpmath as mp
import numpy as np

from . import contraction
from .errors import AddressParseError, BouquetError
from .render import RenderConfig, default_threads, render
from .tractmodel.address import parse_address
from .tractmodel.config import hair_rows, model_spec_from_config, parse_config_text, read_config
from .tractmodel.dynamics import default_potentials, trace_hair, trace_point
from .tractmodel.models import build_model
from .verify import SUITES, run_suite

HAIR_SCHEMA = "bouquet.hair/1"


class _Encoder(json.JSONEncoder):
    def default(self, o):
        if isinstance(o, complex):
            return [o.real, o.imag]
        if isinstance(o, (mp.mpf, mp.mpc)):
            return mp.nstr(o, 17)
        if isinstance(o, np.generic):
            return o.item()
        if isinstance(o, (set, tuple)):
            return list(o)
        return str(o)


def _clean(x):
    """Replace non-finite floats, which JSON cannot carry."""
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    if isinstance(x, dict):
        return {k: _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    return x


def dumps(obj):
    return json.dumps(_clean(obj), cls=_Encoder, indent=2)


def _emit(obj, path=None):
    text = dumps(obj)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _model_spec(args):
    if getattr(args, "config", None):
        cfg = read_config(args.config)
        if "model" in cfg and not args.model:
            return model_spec_from_config(cfg)
    return args.model


def cmd_render(args):
    cfg = read_config(args.config) if args.config else {}
    cfg.update(parse_config_text("\n".join(args.overrides)))
    if args.model:
        cfg["model"] = args.model
    if args.out:
        cfg["out"] = args.out
    rc = RenderConfig.from_mapping(cfg)
    threads = args.threads if args.threads is not None else default_threads()
    _, stats = render(rc, threads=threads)
    stats["threads"] = threads
    _emit(stats, args.report)
    return 0


def cmd_trace(args):
    model = build_model(_model_spec(args) or "exp")
    addr = parse_address(args.address)
    z, err = trace_point(model, addr, args.depth)
    hair = trace_hair(model, addr, default_potentials(model, args.samples, args.span), args.depth)
    e = model.value(z)
    e = complex(e) if not isinstance(e, mp.mpc) else e
    out = {
        "schema": HAIR_SCHEMA,
        "model": model.kind,
        "params": model.params,
        "address": str(addr),
        "depth": args.depth,
        "endpoint": {"re": e.real, "im": e.imag, "err": err},
        "columns": ["t", "re", "im", "err"],
        "samples": hair_rows(model, hair),
    }
    _emit(out, args.out)
    return 0


def cmd_verify(args):
    suite = args.suite_opt or args.suite
    if suite is None:
        print("error: name a suite (%s)" % ", ".join(SUITES), file=sys.stderr)
        return 2
    if suite not in SUITES:
        print("error: unknown suite %r (choose from %s)" % (suite, ", ".join(SUITES)), file=sys.stderr)
        return 2
    report = run_suite(suite, _model_spec(args))
    _emit(report, args.report)
    if args.report:
        print("%s: %s" % (suite, "pass" if report["passed"] else "FAIL"))
    return 0 if report["passed"] else 1


def cmd_constants(args):
    k = contraction.constants()
    good = contraction.hook_constants_check(k.C2, k.C3, 1000)
    slip = contraction.hook_constants_check(450, 450, 10)
    out = {
        "c": k.c,
        "C": k.C,
        "M": [sum(contraction.M_sum(n)) for n in range(9)],
        "C2": k.C2,
        "C3": k.C3,
        "checks": {
            "canonical": {"passed": good.ok, "family": good.family, "n": good.n, "certificate": good.certificate},
            "C2=C3=450": {"passed": slip.ok, "family": slip.family, "n": slip.n},
        },
    }
    _emit(out, args.report)
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="bouquet", description="Logarithmic tract models, hairs and bouquet diagnostics.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("render", help="escape-time image (binary PPM)")
    r.add_argument("overrides", nargs="*", metavar="key=value", help="config overrides")
    r.add_argument("--config", help="key=value config file")
    r.add_argument("--model")
    r.add_argument("--out")
    r.add_argument("--threads", type=int)
    r.add_argument("--report", help="write stats JSON here instead of stdout")
    r.set_defaults(func=cmd_render)

    t = sub.add_parser("trace", help="trace a hair and print it as JSON")
    t.add_argument("--model")
    t.add_argument("--config")
    t.add_argument("--address", required=True, help='e.g. "0 | 0" or "T0 T1 | T0"')
    t.add_argument("--depth", type=int, default=60)
    t.add_argument("--samples", type=int, default=16)
    t.add_argument("--span", type=float, default=3.0, help="potential range above the endpoint")
    t.add_argument("--out")
    t.set_defaults(func=cmd_trace)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", nargs="?")
    v.add_argument("--suite", dest="suite_opt")
    v.add_argument("--model")
    v.add_argument("--config")
    v.add_argument("--report")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("constants", help="print the contraction constants as JSON")
    c.add_argument("--report")
    c.set_defaults(func=cmd_constants)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AddressParseError as exc:
        print("error: address parse error: %s" % exc, file=sys.stderr)
        return 2
    except (BouquetError, OSError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
