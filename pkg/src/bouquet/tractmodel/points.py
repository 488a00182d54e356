"""Arithmetic on model points.

A point is a complex number, an mpmath mpc when it is too large for a
float, or an Anchored offset from a_k / b_k of the hook sequences.
"""
import cmath
import math

import mpmath as mp

from ..conformal.hook import Anchored
from ..errors import PrecisionError

TWO_PI = 2.0 * math.pi
FLOAT_LIMIT = 1e300
# largest real part whose exponential is still evaluated
EVAL_LIMIT = 1e15


def is_mp(z):
    return isinstance(z, (mp.mpc, mp.mpf))


def demote(z):
    """complex when it fits, mpc otherwise."""
    if is_mp(z):
        z = mp.mpc(z)
        if abs(z.real) < FLOAT_LIMIT and abs(z.imag) < FLOAT_LIMIT:
            return complex(z)
        return z
    return complex(z)


def value(z, seqs=None):
    """The point as a number (mpc when it is huge)."""
    if isinstance(z, Anchored):
        if z.label is None:
            return demote(z.offset)
        return demote(seqs[z.label][z.index] + mp.mpc(z.offset))
    return z


def real_part(z, seqs=None):
    if isinstance(z, Anchored):
        if z.label is None:
            return mp.mpc(z.offset).real if is_mp(z.offset) else complex(z.offset).real
        r = seqs[z.label][z.index] + mp.mpc(z.offset).real
        return float(r) if abs(r) < FLOAT_LIMIT else r
    if is_mp(z):
        r = mp.mpc(z).real
        return float(r) if abs(r) < FLOAT_LIMIT else r
    return complex(z).real


def imag_part(z):
    if isinstance(z, Anchored):
        return float(mp.mpc(z.offset).imag)
    return float(mp.mpc(z).imag) if is_mp(z) else complex(z).imag


def translate(z, c):
    """z + c for a (small) complex c."""
    if c == 0:
        return z
    if isinstance(z, Anchored):
        off = z.offset + c
        return Anchored(z.label, z.index, demote(off) if is_mp(off) else complex(off))
    return demote(z + c) if is_mp(z) else complex(z) + c


def to_complex(z, seqs=None):
    v = value(z, seqs)
    if is_mp(v):
        raise PrecisionError("point with real part %s does not fit a float" % mp.nstr(mp.mpc(v).real, 5))
    return complex(v)


def log_point(z, seqs=None):
    """Principal log of a point of the right half-plane, mpc-aware."""
    if isinstance(z, Anchored) and z.label is not None:
        s = seqs[z.label][z.index]
        return mp.log(s) + mp.log1p(mp.mpc(z.offset) / s)
    v = value(z, seqs)
    if is_mp(v):
        return mp.log(v)
    return cmath.log(v)


def distance(z, w, seqs=None):
    """|z - w|, exact for two points anchored at the same sequence entry."""
    if isinstance(z, Anchored) and isinstance(w, Anchored) and z[:2] == w[:2]:
        d = abs(mp.mpc(z.offset) - mp.mpc(w.offset))
        return float(d) if d == 0 or d > 1e-300 else d
    d = mp.mpc(value(z, seqs)) - mp.mpc(value(w, seqs))
    return float(abs(d)) if abs(d) < FLOAT_LIMIT else math.inf


def finite(z):
    if isinstance(z, Anchored):
        z = z.offset
    if is_mp(z):
        z = mp.mpc(z)
        return mp.isfinite(z.real) and mp.isfinite(z.imag)
    return cmath.isfinite(complex(z))
