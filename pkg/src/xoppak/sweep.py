"""Conjecture sweeps over enumerated pairs.

Each cell is pure: it builds one family at fixed parameters, runs one check
(the reflection invariance of Omega or the involuted-representation
equality), and returns a plain dict of primitives.  Cells can therefore run
in a worker pool, and the aggregate report stays deterministic because the
cell order is fixed by the pair enumeration.
"""
from __future__ import annotations

from multiprocessing import Pool

from . import laguerre as _lag
from . import meixner as _mex
from .classical import LaguerreParams, MeixnerParams
from .exact import DomainError, ParameterError, format_rational, rat
from .pairs import PairSpec, enumerate_pairs


def _poly_strings(p):
    return [format_rational(c) for c in p.coeffs]


def _cell_id(kind, check, pair: PairSpec):
    return {
        "kind": kind,
        "check": check,
        "f1": list(pair.F1.elems),
        "f2": list(pair.F2.elems),
    }


def run_cell(spec: tuple) -> dict:
    """One (check, kind, pair, parameters) cell; everything in the cell
    tuple is a primitive so the pool can ship it between processes."""
    check, kind, f1, f2, a, c, alpha = spec
    pair = PairSpec(f1, f2)
    out = _cell_id(kind, check, pair)
    try:
        if kind == "meixner":
            fam = _mex.MeixnerExcFamily(MeixnerParams(rat(a), rat(c)), pair)
            if check == "invariance":
                rep = _mex.invariance_conjecture(fam)
            else:
                rep = _mex.alt_representation(pair.v, fam)
        else:
            fam = _lag.LaguerreExcFamily(LaguerreParams(rat(alpha)), pair)
            if check == "invariance":
                rep = _lag.invariance_conjecture(fam)
            else:
                rep = _lag.alt_representation(pair.v, fam)
    except (DomainError, ParameterError) as exc:
        out["ok"] = None
        out["skipped"] = str(exc)
        return out
    out["ok"] = bool(rep.matches)
    if not rep.matches:
        out["discrepancy"] = _poly_strings(rep.discrepancy)
        if check == "altrep":
            out["n"] = pair.v
    return out


def sweep_specs(max_elem: int, max_card: int, mex_params=None, lag_params=None):
    """Cell specs for the sweep, ordered by (F1, F2) then kind then check."""
    specs = []
    for pair in enumerate_pairs(max_elem, max_card):
        f1, f2 = pair.F1.elems, pair.F2.elems
        if mex_params is not None:
            a, c = mex_params
            for check in ("invariance", "altrep"):
                specs.append((check, "meixner", f1, f2, str(a), str(c), None))
        if lag_params is not None:
            for check in ("invariance", "altrep"):
                specs.append((check, "laguerre", f1, f2, None, None, str(lag_params)))
    return specs


def run_sweep(max_elem, max_card, mex_params=None, lag_params=None, jobs=1) -> dict:
    """Run every cell and aggregate counts plus counterexample artifacts.

    A counterexample cell carries the full discrepancy polynomial so the
    report alone reproduces the finding; skipped cells record why their
    check's precondition failed.
    """
    specs = sweep_specs(max_elem, max_card, mex_params, lag_params)
    if jobs and jobs > 1 and len(specs) > 1:
        with Pool(processes=jobs) as pool:
            cells = pool.map(run_cell, specs)
    else:
        cells = [run_cell(s) for s in specs]
    counterexamples = [c for c in cells if c["ok"] is False]
    skipped = [c for c in cells if c["ok"] is None]
    return {
        "max_elem": max_elem,
        "max_card": max_card,
        "cells": cells,
        "total": len(cells),
        "passed": sum(1 for c in cells if c["ok"] is True),
        "skipped": len(skipped),
        "counterexamples": counterexamples,
    }
