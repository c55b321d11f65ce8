"""Command-line front end.

A job is a TOML document with the sections ``[ring]``, ``[automorphism]``,
``[job]`` and optionally ``[expect]``; see the README for the grammar.
"""

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from importlib import resources

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .automorphism import build_automorphism
from .chain_ring import KINDS, RingPresentation, build_ring
from .class_counting import H_size, decompose_U, image_size
from .equivalence import Binomial, H_pairs, equivalence_classes, equivalent, in_B, theta
from .errors import (
    BudgetExceeded,
    HypothesisViolated,
    InconsistencyError,
    ParseError,
    SkewCodesError,
)
from .polycyclic_codes import DEFAULT_BUDGET, verify_isometry
from .skew_poly import SkewPolynomial, in_A_sigma, is_central

COMMANDS = ("info", "central", "equiv", "classes", "count", "verify-paper")
EXAMPLES = ("z8u_equiv", "z8u_count", "f3u3_central", "gr42_theta")

_RING_FIELDS = {"kind": str, "p": int, "m": int, "r": int, "h": list, "e": int,
                "t": int, "w": list, "s": int, "size_bound": int}
_AUT_FIELDS = {"u_image": (str, int, list), "omega_image": (str, int, list), "omega_exponent": int}
_JOB_FIELDS = {"command": str, "n": int, "ell": int, "a": list, "b": list, "f": list,
               "alpha": (str, int)}
_REQUIRED = {
    "info": (),
    "central": (),
    "equiv": ("n", "ell", "a", "b"),
    "classes": ("n", "ell"),
    "count": ("n", "ell"),
    "verify-paper": (),
}


@dataclass
class JobSpec:
    ring: RingPresentation = None
    automorphism: dict = field(default_factory=dict)
    command: str = "info"
    params: dict = field(default_factory=dict)
    expect: dict = field(default_factory=dict)
    name: str = None


def _locate(text, section, key=None):
    """Line number of ``key`` inside ``[section]``, else of the section header."""
    current, header = None, None
    for no, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        m = re.match(r"\[([^\]]+)\]", s)
        if m:
            current = m.group(1).strip()
            if current == section:
                header = no
            continue
        if current == section and key is not None and re.match(rf"{re.escape(key)}\s*=", s):
            return no
    return header


def _check_types(text, section, table, spec):
    for key, value in table.items():
        if key not in spec:
            raise ParseError(f"unknown key in [{section}]", _locate(text, section, key), key)
        kinds = spec[key] if isinstance(spec[key], tuple) else (spec[key],)
        if isinstance(value, bool) or not isinstance(value, kinds):
            names = " or ".join(k.__name__ for k in kinds)
            raise ParseError(f"expected {names}, got {value!r}", _locate(text, section, key), key)


def parse_config(text, name=None):
    """Parse and validate a job document into a :class:`JobSpec`."""
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ParseError(str(exc), getattr(exc, "lineno", None)) from None
    for section in doc:
        if section not in ("ring", "automorphism", "job", "expect"):
            raise ParseError(f"unknown section [{section}]", _locate(text, section))
    jobt = doc.get("job", {})
    _check_types(text, "job", jobt, _JOB_FIELDS)
    command = jobt.get("command", "info")
    if command not in COMMANDS:
        raise ParseError(f"unknown command {command!r}", _locate(text, "job", "command"), "command")
    if "ring" not in doc:
        if command == "verify-paper":
            return JobSpec(command=command, name=name)
        raise ParseError("missing [ring] section", None, "ring")
    ringt = doc["ring"]
    _check_types(text, "ring", ringt, _RING_FIELDS)
    for key in ("kind", "p"):
        if key not in ringt:
            raise ParseError("required field is missing", _locate(text, "ring"), key)
    if ringt["kind"] not in KINDS:
        raise ParseError(f"kind must be one of {KINDS}", _locate(text, "ring", "kind"), "kind")
    kw = dict(ringt)
    for key in ("h", "w"):
        if key in kw:
            kw[key] = tuple(kw[key])
    pres = RingPresentation(**kw)
    try:
        pres.validate()
    except ValueError as exc:
        bad = next((k for k in ringt if k in str(exc).split()), None)
        raise ParseError(str(exc), _locate(text, "ring", bad), bad) from None
    autt = doc.get("automorphism", {})
    _check_types(text, "automorphism", autt, _AUT_FIELDS)
    params = {k: v for k, v in jobt.items() if k != "command"}
    for key in _REQUIRED[command]:
        if key not in params:
            raise ParseError(f"command {command!r} needs this field", _locate(text, "job"), key)
    if command == "central" and "f" not in params and not {"n", "ell", "a"} <= set(params):
        raise ParseError("command 'central' needs f or n, ell and a", _locate(text, "job"), "f")
    for key in ("a", "b"):
        if key in params and len(params[key]) != 2:
            raise ParseError("expected [a_ell, a_0]", _locate(text, "job", key), key)
    return JobSpec(pres, autt, command, params, doc.get("expect", {}), name)


def load_example(name):
    if name not in EXAMPLES:
        raise ParseError(f"unknown example {name!r}; expected one of {EXAMPLES}")
    text = resources.files("skewcodes").joinpath("data", f"{name}.toml").read_text()
    return parse_config(text, name)


def _binomial(R, ell, pair):
    return Binomial(ell, R.element(pair[0]), R.element(pair[1]))


def _pairs_json(R, pairs):
    return [[R.format(x), R.format(y)] for x, y in pairs]


def _cmd_info(R, sigma, job, budget):
    d = decompose_U(R)
    return {
        "ring": R.describe(),
        "size": R.size, "p": R.p, "r": R.r, "e": R.e, "q": R.q,
        "gamma": R.format(R.gamma),
        "units": len(R.units),
        "teichmuller": [R.format(x) for x in R.teichmuller_star],
        "U_orders": d.orders,
        "U_generators": [R.format(g) for g in d.generators],
        "sigma": {
            "order": sigma.order,
            "residue_order": sigma.residue_order,
            "teich_exponent": sigma.teich_exponent,
            "fixed": len(sigma.fixed),
            "fixed_units": len(sigma.fixed_units()),
        },
    }


def _cmd_central(R, sigma, job, budget):
    p = job.params
    if "f" in p:
        f = SkewPolynomial(sigma, p["f"])
    else:
        f = _binomial(R, p["ell"], p["a"]).trinomial(p["n"]).poly(sigma)
    c = is_central(f)
    low = [R.at(x) for x in f.coeffs[:f.degree]]
    return {
        "polynomial": str(f),
        "central": c.central,
        "failed_condition": c.failed_condition,
        "reason": c.reason,
        "in_A_sigma": None if sigma.is_identity else in_A_sigma(low, sigma),
    }


def _cmd_equiv(R, sigma, job, budget):
    p = job.params
    a, b = _binomial(R, p["ell"], p["a"]), _binomial(R, p["ell"], p["b"])
    rep = equivalent(a, b, p["n"], sigma)
    out = rep.to_json()
    if rep.verdict:
        iso = verify_isometry(rep.alpha, a.trinomial(p["n"]), b.trinomial(p["n"]), sigma, budget)
        out["isometry"] = {"verdict": iso.verdict, "mode": iso.mode, "checks": iso.checks}
        if not iso.verdict:
            raise InconsistencyError(f"witness {rep.alpha} does not give an isometry: {iso.witness}")
    return out


def _cmd_classes(R, sigma, job, budget):
    n, ell = job.params["n"], job.params["ell"]
    fu = len(sigma.fixed_units())
    if fu * fu > budget:
        raise BudgetExceeded(f"|B| = {fu * fu} exceeds the budget {budget}")
    classes = equivalence_classes(n, ell, sigma)
    return {
        "B_size": fu * fu,
        "H_size": len(classes[0]),
        "class_count": len(classes),
        "classes": [[b.to_list() for b in c] for c in classes],
    }


def _cmd_count(R, sigma, job, budget):
    n, ell = job.params["n"], job.params["ell"]
    extra = {"H_set": _pairs_json(R, H_pairs(n, ell, sigma))}
    if "alpha" in job.params:
        t = theta(job.params["alpha"], n, ell, sigma)
        extra["theta"] = t.to_list()
        extra["theta_in_B"] = in_B(t, sigma)
    try:
        rep = H_size(n, ell, sigma)
    except HypothesisViolated as exc:
        out = {"image size (hypotheses violated)": image_size(n, ell, sigma),
               "reason": str(exc),
               "image_in_B": all(in_B(Binomial(ell, R.at(x), R.at(y)), sigma)
                                 for x, y in H_pairs(n, ell, sigma))}
        out.update(extra)
        return out, HypothesisViolated.exit_code
    out = rep.to_json()
    out["orders"] = decompose_U(R).orders
    out.update(extra)
    return out, 0 if rep.consistent else InconsistencyError.exit_code


_HANDLERS = {
    "info": _cmd_info,
    "central": _cmd_central,
    "equiv": _cmd_equiv,
    "classes": _cmd_classes,
    "count": _cmd_count,
}


def _find(report, key):
    """First value stored under ``key`` in a nested report (breadth first)."""
    queue = [report]
    while queue:
        d = queue.pop(0)
        if key in d:
            return d[key]
        queue.extend(v for v in d.values() if isinstance(v, dict))
    return None


def _verify_paper(budget):
    checks = []
    for name in EXAMPLES:
        job = load_example(name)
        status, report = execute(job, budget)
        mismatches = {}
        for key, want in job.expect.items():
            got = status if key == "exit" else _find(report, key)
            if got != want:
                mismatches[key] = {"expected": want, "got": got}
        checks.append({"name": name, "passed": not mismatches, "mismatches": mismatches})
    ok = all(c["passed"] for c in checks)
    return 0 if ok else InconsistencyError.exit_code, {"command": "verify-paper", "passed": ok,
                                                       "checks": checks}


def execute(job, budget=DEFAULT_BUDGET):
    """Run a job; returns ``(exit_status, report)`` and never raises library errors."""
    try:
        if job.command == "verify-paper":
            return _verify_paper(budget)
        R = build_ring(job.ring)
        sigma = build_automorphism(R, **job.automorphism)
        out = _HANDLERS[job.command](R, sigma, job, budget)
        status = 0
        if isinstance(out, tuple):
            out, status = out
        return status, {"command": job.command, **out}
    except SkewCodesError as exc:
        return exc.exit_code, {"command": job.command, "error": type(exc).__name__,
                               "message": str(exc)}


def run(job, budget=DEFAULT_BUDGET, as_json=True, quiet=False, stream=None):
    """Execute ``job``, write its report to ``stream`` and return the exit status."""
    stream = stream or sys.stdout
    status, report = execute(job, budget)
    if not quiet:
        if as_json:
            stream.write(json.dumps(report, indent=2) + "\n")
        else:
            stream.write(_render(report))
    return status


def _render(report, indent=""):
    lines = []
    for key, value in report.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_render(value, indent + "  ").rstrip("\n"))
        else:
            lines.append(f"{indent}{key}: {value}")
    return "\n".join(lines) + "\n"


def _pair(text):
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected 'a_ell,a_0'")
    return parts


def build_parser():
    ap = argparse.ArgumentParser(
        prog="skewcodes",
        description="Chain rings, skew polycyclic codes and (n, sigma)-equivalence of trinomials.")
    src = ap.add_mutually_exclusive_group()
    src.add_argument("--config", metavar="PATH", help="job document (TOML)")
    src.add_argument("--example", choices=EXAMPLES, help="use a bundled job document")
    ap.add_argument("--command", choices=COMMANDS, help="override the job command")
    ap.add_argument("--json", action="store_true", help="emit the report as JSON")
    ap.add_argument("--budget", type=int, default=DEFAULT_BUDGET, metavar="N",
                    help=f"enumeration bound (default {DEFAULT_BUDGET})")
    ap.add_argument("--quiet", action="store_true", help="print nothing; exit status only")
    ap.add_argument("--n", type=int)
    ap.add_argument("--ell", type=int)
    ap.add_argument("--a", type=_pair, metavar="A_ELL,A_0")
    ap.add_argument("--b", type=_pair, metavar="B_ELL,B_0")
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.config:
            try:
                with open(args.config, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise ParseError(f"cannot read {args.config}: {exc.strerror}") from None
            job = parse_config(text, args.config)
        elif args.example:
            job = load_example(args.example)
        elif args.command == "verify-paper":
            job = JobSpec(command="verify-paper")
        else:
            raise ParseError("give --config or --example (or --command verify-paper)")
        if args.command:
            job.command = args.command
        for key in ("n", "ell", "a", "b"):
            if getattr(args, key) is not None:
                job.params[key] = getattr(args, key)
        missing = [k for k in _REQUIRED[job.command] if k not in job.params]
        if job.command != "verify-paper" and job.ring is None:
            missing.insert(0, "ring")
        if missing:
            raise ParseError(f"command {job.command!r} is missing {', '.join(missing)}")
    except ParseError as exc:
        if not args.quiet:
            print(f"error: {exc}", file=sys.stderr)
        return ParseError.exit_code
    return run(job, args.budget, args.json, args.quiet)


if __name__ == "__main__":
    sys.exit(main())
