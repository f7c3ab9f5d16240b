"""Command line front end: construct families, verify identities, sweep
conjectures, and decide admissibility.

Output is machine readable: JSON (schema "xoppak/1", snake_case keys, every
rational a "p/q" string) or CSV for flat summaries.  Exit codes: 0 success,
2 usage or parameter error, 3 internal inconsistency, 4 check failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

import mpmath as mp

from . import laguerre as _lag
from . import meixner as _mex
from .classical import LaguerreParams, MeixnerParams
from .exact import (
    AdmissibilityRefusal,
    DomainError,
    InternalInconsistencyError,
    ParameterError,
    PoleError,
    format_rational,
    rat,
)
from .numerics import collapse, to_mpf
from .pairs import PairSpec, admissibility_witnesses, is_admissible
from .sweep import run_sweep

MEIXNER_CHECKS = (
    "eigen",
    "duality",
    "darboux",
    "altrep",
    "norms",
    "orthogonality",
    "admissible",
)
LAGUERRE_CHECKS = (
    "eigen",
    "darboux",
    "altrep",
    "norms",
    "orthogonality",
    "admissible",
    "nonvanish",
    "limit",
)


class UsageError(Exception):
    """Bad flags or parameters; maps to exit code 2."""


class _RawMeixnerParams:
    """Duck-typed (a, c) holder for the formal Krawtchouk substitution,
    where c = -N + 1 is a nonpositive integer the validated constructor
    would reject."""

    __slots__ = ("a", "c")

    def __init__(self, a, c):
        self.a = rat(a)
        self.c = rat(c)

    def __repr__(self):
        return f"_RawMeixnerParams(a={self.a}, c={self.c})"


class JobSpec:
    """Parsed, validated description of one family job."""

    def __init__(self, kind, f1, f2, a=None, c=None, alpha=None, n_range=None,
                 checks=(), rel_tol=None):
        self.kind = kind
        self.f1 = f1
        self.f2 = f2
        self.a = a
        self.c = c
        self.alpha = alpha
        self.n_range = n_range
        self.checks = checks
        self.rel_tol = rel_tol

    @property
    def pair(self) -> PairSpec:
        if not self.f1 and not self.f2:
            return PairSpec.trivial()
        return PairSpec(self.f1, self.f2)

    def build_family(self):
        pair = self.pair
        if self.kind == "meixner":
            if self.a is None or self.c is None:
                raise UsageError("meixner families need --a and --c")
            return _mex.MeixnerExcFamily(MeixnerParams(self.a, self.c), pair)
        if self.kind == "laguerre":
            if self.alpha is None:
                raise UsageError("laguerre families need --alpha")
            return _lag.LaguerreExcFamily(LaguerreParams(self.alpha), pair)
        if self.kind == "krawtchouk":
            if self.a is None or self.c is None:
                raise UsageError(
                    "krawtchouk families need --a and --c (pass c = -N + 1)"
                )
            if self.a in (rat(0), rat(-1)):
                raise UsageError(f"krawtchouk parameter a must avoid 0 and -1, got {self.a}")
            return _mex.MeixnerExcFamily(_RawMeixnerParams(-self.a, self.c), pair)
        raise UsageError(f"unknown kind {self.kind!r}")


# -- parsing helpers ---------------------------------------------------------

def _parse_rational(text, flag):
    try:
        return rat(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"{flag} expects a rational like 3 or -5/2, got {text!r}: {exc}")


def _parse_set(text, flag):
    if text is None or text.strip() == "":
        return ()
    out = []
    for part in text.split(","):
        part = part.strip()
        try:
            v = int(part)
        except ValueError:
            raise UsageError(f"{flag} expects comma-separated integers, got {part!r}")
        if v < 1:
            raise UsageError(f"{flag} elements must be positive, got {v}")
        out.append(v)
    if len(set(out)) != len(out):
        raise UsageError(f"{flag} elements must be distinct, got {text!r}")
    return tuple(sorted(out))


def _parse_n(text):
    if text is None:
        return None
    if ".." in text:
        lo, _, hi = text.partition("..")
        try:
            lo, hi = int(lo), int(hi)
        except ValueError:
            raise UsageError(f"--n range expects lo..hi integers, got {text!r}")
        if hi < lo:
            raise UsageError(f"--n range is empty: {text!r}")
        return list(range(lo, hi + 1))
    try:
        return [int(text)]
    except ValueError:
        raise UsageError(f"--n expects an integer or lo..hi, got {text!r}")


def _job_from_args(args) -> JobSpec:
    kind = args.kind
    f1 = _parse_set(args.F1, "--F1")
    f2 = _parse_set(args.F2, "--F2")
    a = _parse_rational(args.a, "--a") if args.a is not None else None
    c = _parse_rational(args.c, "--c") if args.c is not None else None
    alpha = _parse_rational(args.alpha, "--alpha") if args.alpha is not None else None
    if kind in ("meixner", "krawtchouk") and a is not None and a in (rat(0),):
        raise UsageError("parameter a must not be 0")
    checks = ()
    if getattr(args, "checks", None):
        checks = tuple(p.strip() for p in args.checks.split(",") if p.strip())
    rel_tol = None
    if getattr(args, "rel_tol", None) is not None:
        rel_tol = _parse_rational(args.rel_tol, "--rel-tol")
    return JobSpec(
        kind=kind,
        f1=f1,
        f2=f2,
        a=a,
        c=c,
        alpha=alpha,
        n_range=_parse_n(getattr(args, "n", None)),
        checks=checks,
        rel_tol=rel_tol,
    )


# -- serialization helpers ---------------------------------------------------

def _poly_strings(p):
    return [format_rational(c) for c in p.coeffs]


def _ratfunc_payload(rf):
    return {"num": _poly_strings(rf.num), "den": _poly_strings(rf.den)}


def _operator_payload(op, variety, eigen_sign):
    keys = (0, 1, 2) if variety == "differential" else (-1, 0, 1)
    terms = {str(k): _ratfunc_payload(op.coeff(k)) for k in keys}
    return {"variety": variety, "eigenvalue_sign": eigen_sign, "terms": terms}


def _job_header(job: JobSpec) -> dict:
    head = {
        "schema": "xoppak/1",
        "kind": job.kind,
        "f1": list(job.f1),
        "f2": list(job.f2),
    }
    for name in ("a", "c", "alpha"):
        val = getattr(job, name)
        if val is not None:
            head[name] = format_rational(val)
    return head


# -- construct ---------------------------------------------------------------

def cmd_construct(job: JobSpec) -> dict:
    fam = job.build_family()
    pair = fam.pair
    u = pair.u
    ns = job.n_range if job.n_range is not None else list(range(u, u + 7))
    members = []
    for n in ns:
        if n < 0:
            raise UsageError(f"--n must be nonnegative, got {n}")
        included = pair.sigma_contains(n)
        if job.kind == "laguerre":
            p = fam.member(n)
        else:
            p = fam.m(n)
        members.append(
            {
                "n": n,
                "included": included,
                "coeffs": _poly_strings(p) if included else [],
            }
        )
    out = _job_header(job)
    out["u"] = u
    out["v"] = pair.v
    out["excluded_degrees"] = [u + f for f in pair.F1]
    out["members"] = members
    out["omega"] = _poly_strings(fam.omega)
    if job.kind == "laguerre":
        op = _lag.operator(fam)
        out["operator"] = _operator_payload(op, "differential", -1)
    else:
        out["lambda"] = _poly_strings(fam.lam)
        op = _mex.operator(fam)
        out["operator"] = _operator_payload(op, "difference", 1)
    return out


# -- verify ------------------------------------------------------------------

def _degrees(job, fam, count=7):
    if job.n_range is not None:
        return [n for n in job.n_range if fam.pair.sigma_contains(n)]
    return [n for n in range(fam.pair.u, fam.pair.u + count)
            if fam.pair.sigma_contains(n)]


def _check_eigen(job, fam):
    bad = []
    ns = _degrees(job, fam)
    for n in ns:
        res = (_lag if job.kind == "laguerre" else _mex).eigen_residual(n, fam)
        if not res.is_zero:
            bad.append({"n": n, "residual": _poly_strings(res)})
    return (
        "pass" if not bad else "fail",
        {"degrees": ns},
        bad or None,
    )


def _check_duality(job, fam):
    vs = fam.pair.sigma_first(4)
    bad = []
    for n in range(4):
        for v in vs:
            if not _mex.duality_check(n, v, fam):
                bad.append({"n": n, "v": v})
    return (
        "pass" if not bad else "fail",
        {"dual_indices": list(range(4)), "members": vs},
        bad or None,
    )


def _check_darboux(job, fam):
    if not fam.pair.F2.elems:
        return "refused", {"reason": "needs a nonempty second set"}, None
    mod = _lag if job.kind == "laguerre" else _mex
    down_ok, up_ok = mod.darboux_identities(fam)
    ns = _degrees(job, fam)[:3]
    inter = {n: mod.darboux_intertwining(fam, n) for n in ns}
    ok = down_ok and up_ok and all(inter.values())
    witness = None
    if not ok:
        witness = {"down": down_ok, "up": up_ok, "intertwining": inter}
    return ("pass" if ok else "fail", {"degrees": ns}, witness)


def _admissible_param(job):
    return job.c if job.kind == "meixner" else job.alpha + 1


def _check_altrep(job, fam):
    mod = _lag if job.kind == "laguerre" else _mex
    v = fam.pair.v
    results, mismatches = [], []
    try:
        for n in range(v, v + 3):
            rep = mod.alt_representation(n, fam)
            const = rep.gamma if job.kind == "laguerre" else rep.beta
            results.append(
                {
                    "n": n,
                    "matches": rep.matches,
                    "constant": format_rational(const) if const is not None else None,
                }
            )
            if not rep.matches:
                mismatches.append({"n": n, "discrepancy": _poly_strings(rep.discrepancy)})
    except DomainError as exc:
        return "refused", {"reason": str(exc)}, None
    if not mismatches:
        return "pass", {"results": results}, None
    if is_admissible(_admissible_param(job), fam.pair):
        return "fail", {"results": results}, mismatches
    # outside admissibility the equality is only conjectural; record evidence
    return "refused", {"results": results, "evidence": mismatches}, None


def _check_norms(job, fam):
    ns = _degrees(job, fam)[:2]
    results, bad = [], []
    try:
        for n in ns:
            if job.kind == "laguerre":
                chk = _lag.norm_formula(n, fam, rel_tol=job.rel_tol)
            else:
                chk = _mex.norm_identity(n, fam, rel_tol=job.rel_tol)
            results.append({"n": n, "rel_err": float(chk.rel_err), "ok": chk.ok})
            if not chk.ok:
                bad.append({"n": n, "rel_err": float(chk.rel_err)})
    except AdmissibilityRefusal as exc:
        return "refused", {"reason": str(exc)}, None
    except PoleError as exc:
        return "pole", {"reason": str(exc)}, None
    return ("pass" if not bad else "fail", {"results": results}, bad or None)


def _check_orthogonality(job, fam):
    if not is_admissible(_admissible_param(job), fam.pair):
        return "refused", {"reason": "weight is not a positive measure"}, None
    tol = to_mpf(job.rel_tol if job.rel_tol is not None else rat(1, 10**7))
    ns = fam.pair.sigma_first(4)
    bad = []
    worst = mp.mpf(0)
    try:
        if job.kind == "laguerre":
            norms = {n: _lag.norm_formula(n, fam).rhs for n in ns}
            for i, n in enumerate(ns):
                for r in ns[i + 1 :]:
                    res = _lag.inner_product(fam, n, r)
                    ratio = (abs(res.value) + res.tail_bound) / mp.sqrt(
                        norms[n] * norms[r]
                    )
                    worst = max(worst, ratio)
                    if ratio >= tol:
                        bad.append({"n": n, "r": r, "ratio": float(ratio)})
        else:
            norms = {n: _mex.norm_identity(n, fam).rhs for n in ns}
            for i, n in enumerate(ns):
                for r in ns[i + 1 :]:
                    res, carrier = _mex.inner_product(fam, n, r, abs_tol=rat(1, 10**30))
                    val = abs(collapse(carrier)) * (
                        abs(to_mpf(res.value)) + to_mpf(res.tail_bound)
                    )
                    ratio = val / mp.sqrt(norms[n] * norms[r])
                    worst = max(worst, ratio)
                    if ratio >= tol:
                        bad.append({"n": n, "r": r, "ratio": float(ratio)})
    except AdmissibilityRefusal as exc:
        return "refused", {"reason": str(exc)}, None
    except PoleError as exc:
        return "pole", {"reason": str(exc)}, None
    detail = {"members": ns, "worst_ratio": float(worst)}
    return ("pass" if not bad else "fail", detail, bad or None)


def _check_admissible(job, fam):
    c_like = _admissible_param(job)
    witnesses = admissibility_witnesses(c_like, fam.pair)
    detail = {"parameter": format_rational(c_like), "admissible": not witnesses}
    if not witnesses:
        return "pass", detail, None
    return "fail", detail, {"witnesses": witnesses}


def _check_nonvanish(job, fam):
    ok = _lag.nonvanishing(fam)
    admissible = is_admissible(job.alpha + 1, fam.pair)
    detail = {"nonvanishing": ok, "admissible": admissible}
    if not admissible:
        return "refused", detail, None
    return ("pass" if ok else "fail", detail, None if ok else detail)


def _check_limit(job, fam):
    ns = _degrees(job, fam)
    if not ns:
        return "refused", {"reason": "no degree in the index set to test"}, None
    n = ns[0]
    rep = _lag.limit_from_meixner(n, fam)
    tol = job.rel_tol if job.rel_tol is not None else rat(1, 100)
    ok = rep.decreasing and rep.final_dev < tol
    detail = {
        "n": n,
        "deviations": [float(d) for d in rep.member_dev],
        "decreasing": rep.decreasing,
    }
    return ("pass" if ok else "fail", detail, None if ok else detail)


_CHECK_FUNCS = {
    "eigen": _check_eigen,
    "duality": _check_duality,
    "darboux": _check_darboux,
    "altrep": _check_altrep,
    "norms": _check_norms,
    "orthogonality": _check_orthogonality,
    "admissible": _check_admissible,
    "nonvanish": _check_nonvanish,
    "limit": _check_limit,
}


def cmd_verify(job: JobSpec) -> dict:
    if job.kind not in ("meixner", "laguerre"):
        raise UsageError("the check suite covers the meixner and laguerre kinds")
    supported = MEIXNER_CHECKS if job.kind == "meixner" else LAGUERRE_CHECKS
    checks = job.checks or supported
    unknown = [c for c in checks if c not in supported]
    if unknown:
        raise UsageError(
            f"unsupported checks for kind {job.kind}: {', '.join(unknown)} "
            f"(supported: {', '.join(supported)})"
        )
    fam = job.build_family()
    report = _job_header(job)
    rows = []
    failed = False
    for name in checks:
        started = time.perf_counter()
        status, detail, witness = _CHECK_FUNCS[name](job, fam)
        rows.append(
            {
                "check": name,
                "status": status,
                "detail": detail,
                "witness": witness,
                "seconds": round(time.perf_counter() - started, 4),
            }
        )
        failed = failed or status == "fail"
    report["checks"] = rows
    report["status"] = "fail" if failed else "pass"
    return report


# -- admissible / sweep ------------------------------------------------------

def cmd_admissible(job: JobSpec) -> dict:
    if job.kind == "meixner":
        if job.c is None:
            raise UsageError("admissible for meixner needs --c")
        c_like = job.c
    elif job.kind == "laguerre":
        if job.alpha is None:
            raise UsageError("admissible for laguerre needs --alpha")
        c_like = job.alpha + 1
    else:
        raise UsageError("admissibility is defined for the meixner and laguerre kinds")
    pair = job.pair
    if pair.is_trivial:
        raise UsageError("admissibility needs a nonempty pair")
    witnesses = admissibility_witnesses(c_like, pair)
    out = _job_header(job)
    out["parameter"] = format_rational(c_like)
    out["admissible"] = not witnesses
    out["witnesses"] = witnesses
    return out


def cmd_sweep(max_elem: int, max_card: int, mex_params, lag_params, jobs: int) -> dict:
    if max_elem < 1 or max_card < 0:
        raise UsageError("sweep bounds must satisfy max_elem >= 1 and max_card >= 0")
    body = run_sweep(
        max_elem,
        max_card,
        mex_params=mex_params,
        lag_params=lag_params,
        jobs=jobs,
    )
    out = {"schema": "xoppak/1"}
    if mex_params is not None:
        out["a"], out["c"] = (format_rational(rat(p)) for p in mex_params)
    if lag_params is not None:
        out["alpha"] = format_rational(rat(lag_params))
    out.update(body)
    return out


# -- output ------------------------------------------------------------------

def _sweep_csv(payload) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["kind", "f1", "f2", "check", "ok", "note"])
    for cell in payload["cells"]:
        note = cell.get("skipped", "")
        if cell["ok"] is False:
            note = "counterexample"
        writer.writerow(
            [
                cell["kind"],
                " ".join(str(v) for v in cell["f1"]),
                " ".join(str(v) for v in cell["f2"]),
                cell["check"],
                {True: "yes", False: "no", None: "skipped"}[cell["ok"]],
                note,
            ]
        )
    return buf.getvalue()


def _verify_csv(payload) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["check", "status", "seconds"])
    for row in payload["checks"]:
        writer.writerow([row["check"], row["status"], row["seconds"]])
    return buf.getvalue()


def _emit(payload, args, verb) -> None:
    fmt = getattr(args, "format", "json")
    if fmt == "csv":
        if verb == "sweep":
            text = _sweep_csv(payload)
        elif verb == "verify":
            text = _verify_csv(payload)
        else:
            raise UsageError(f"csv output is not defined for {verb}")
    else:
        text = json.dumps(payload, indent=2) + "\n"
    out_path = getattr(args, "out", None)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- argument plumbing -------------------------------------------------------

def _add_family_flags(sub, with_checks=False):
    sub.add_argument("--kind", required=True,
                     choices=["meixner", "laguerre", "krawtchouk"])
    sub.add_argument("--F1", default="", help="comma list of positive integers")
    sub.add_argument("--F2", default="", help="comma list of positive integers")
    sub.add_argument("--a", default=None, help="rational like 1/2")
    sub.add_argument("--c", default=None, help="rational like 3 or -7/2")
    sub.add_argument("--alpha", default=None, help="rational like -3/2")
    sub.add_argument("--n", default=None, help="single degree or range lo..hi")
    if with_checks:
        sub.add_argument("--checks", default=None, help="comma list of check names")
        sub.add_argument("--rel-tol", dest="rel_tol", default=None)
    sub.add_argument("--format", choices=["json", "csv"], default="json")
    sub.add_argument("--out", default=None, help="write the report to this path")
    sub.add_argument("--jobs", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xoppak",
        description="Exceptional Meixner and Laguerre families: construct, "
        "verify, sweep, admissible.",
    )
    subs = parser.add_subparsers(dest="verb", required=True)
    _add_family_flags(subs.add_parser("construct"))
    _add_family_flags(subs.add_parser("verify"), with_checks=True)
    _add_family_flags(subs.add_parser("admissible"))
    sw = subs.add_parser("sweep")
    sw.add_argument("max_elem", type=int)
    sw.add_argument("max_card", type=int)
    sw.add_argument("--a", default=None)
    sw.add_argument("--c", default=None)
    sw.add_argument("--alpha", default=None)
    sw.add_argument("--format", choices=["json", "csv"], default="json")
    sw.add_argument("--out", default=None)
    sw.add_argument("--jobs", type=int, default=1)
    return parser


_VALUE_FLAGS = {"--a", "--c", "--alpha", "--rel-tol"}


def _preprocess(argv):
    """Join rational flags with negative values ("--alpha -3/2" would
    otherwise be read as two flags)."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if (tok in _VALUE_FLAGS and nxt is not None
                and nxt.startswith("-") and not nxt.startswith("--")):
            out.append(tok + "=" + nxt)
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_preprocess(list(argv)))
    try:
        if args.verb == "construct":
            payload = cmd_construct(_job_from_args(args))
        elif args.verb == "verify":
            payload = cmd_verify(_job_from_args(args))
        elif args.verb == "admissible":
            payload = cmd_admissible(_job_from_args(args))
        else:
            mex_params = None
            if args.a is not None and args.c is not None:
                mex_params = (
                    _parse_rational(args.a, "--a"),
                    _parse_rational(args.c, "--c"),
                )
            lag_params = None
            if args.alpha is not None:
                lag_params = _parse_rational(args.alpha, "--alpha")
            if mex_params is None and lag_params is None:
                raise UsageError("sweep needs --a/--c, --alpha, or both")
            payload = cmd_sweep(
                args.max_elem, args.max_card, mex_params, lag_params, args.jobs
            )
        _emit(payload, args, args.verb)
    except UsageError as exc:
        print(f"xoppak: {exc}", file=sys.stderr)
        return 2
    except (ParameterError, DomainError) as exc:
        print(f"xoppak: {exc}", file=sys.stderr)
        return 2
    except InternalInconsistencyError as exc:
        print(f"xoppak: internal inconsistency: {exc}", file=sys.stderr)
        return 3
    if args.verb == "verify" and payload["status"] == "fail":
        return 4
    return 0
