"""Command-line front end.

Group specs are `x`-separated atoms: ``Q8``, ``Cn``, ``Di[k=..,k2=..,k3=..]``
(or a JSON object ``{"type": "D2", "k": 1, "abelian": [3]}``); ring specs
are ``Z/n``, ``Fp``, ``Fp^k``, ``Q``, ``Q(zetad)``.  Exit codes encode the
verdict: 0 star-clean/true, 1 not-star-clean/false, 2 unknown, >2 errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import canonical as canonical_mod
from . import coeff, decide, groupring, groups, witness as witness_mod
from .decide import Budget, Status
from .errors import (
    BudgetError,
    CapacityError,
    CarrierMismatchError,
    CharDividesError,
    DiscrepancyError,
    InvalidParameterError,
    NonUnitError,
    NotInFComponentError,
    ParseError,
    PreconditionError,
    RingSpecError,
)

_ATOM_RE = re.compile(r"^(Q8|C(?P<cn>\d+)|D(?P<dt>[1-5])\[(?P<params>[^\]]*)\])$")


@dataclass
class JobSpec:
    command: str
    group_spec: Optional[str] = None
    ring_spec: Optional[str] = None
    involution: str = "canonical"
    budget: Budget = decide.DEFAULT_BUDGET
    height_bound: int = 8
    output_json: bool = False
    seed: int = 0
    explain: bool = False
    prime: Optional[int] = None
    prop: str = "star-clean"
    element: Optional[str] = None
    list_projections: bool = False
    include_clean: Optional[bool] = None


def parse_group_spec(text: str) -> groups.FiniteGroup | groups.SLCStructure:
    """Parse a group spec string (compact grammar or JSON object)."""
    text = text.strip()
    if text.startswith("{"):
        cfg = json.loads(text)
        if "type" in cfg:
            return groups.build_slc(
                groups.Presentation(cfg["type"]),
                cfg.get("k", 1),
                cfg.get("k2"),
                cfg.get("k3"),
                tuple(cfg.get("abelian", [])),
            )
        return groups.build_abelian(tuple(cfg.get("abelian", [])))
    d_atom = None
    abelian: list[int] = []
    pos = 0
    for atom in text.split("x"):
        m = _ATOM_RE.match(atom.strip())
        if not m:
            raise ParseError(f"unrecognized group atom {atom!r}", position=pos)
        if m.group("cn"):
            abelian.append(int(m.group("cn")))
        else:
            if d_atom is not None:
                raise ParseError("at most one non-abelian atom allowed", position=pos)
            if m.group("dt"):
                params = {}
                raw = m.group("params").strip()
                if raw:
                    for part in raw.split(","):
                        key, _, val = part.partition("=")
                        if key.strip() not in ("k", "k2", "k3") or not val.strip().isdigit():
                            raise ParseError(f"bad parameter {part!r}", position=pos)
                        params[key.strip()] = int(val)
                if "k" not in params:
                    raise ParseError("presentation needs k=...", position=pos)
                d_atom = (groups.Presentation(f"D{m.group('dt')}"), params)
            else:
                d_atom = (groups.Presentation.D2, {"k": 1})
        pos += len(atom) + 1
    if d_atom is None:
        return groups.build_abelian(abelian)
    ptype, params = d_atom
    return groups.build_slc(
        ptype, params["k"], params.get("k2"), params.get("k3"), tuple(abelian)
    )


def parse_ring_spec(text: str) -> coeff.CoefficientRing:
    return coeff.make_ring(text)


def _status_exit(status: Status) -> int:
    return {Status.STAR_CLEAN: 0, Status.NOT_STAR_CLEAN: 1, Status.UNKNOWN: 2}[status]


def _resolve_sigma(spec, gobj, name: str) -> groups.InvolutionMap:
    if name == "classical":
        G = gobj.group if isinstance(gobj, groups.SLCStructure) else gobj
        return groups.classical_involution(G)
    if isinstance(gobj, groups.SLCStructure):
        return groups.canonical_involution(gobj)
    raise PreconditionError(
        "canonical involution needs an SLC presentation; use --involution classical"
    )


def _maybe_explain(report: dict, gobj, ring, job: JobSpec) -> None:
    """Attach canonical forms of the f-parts of any cited elements."""
    if not job.explain or not isinstance(gobj, groups.SLCStructure):
        return
    RG = groupring.GroupRing(gobj.group, ring)
    oms = RG.one() - RG.basis(gobj.s)
    half = ring.half
    forms = {}
    for cert in report.get("certificates", []):
        if "gamma" in cert:
            gamma = RG.from_dict(
                {k: _parse_payload(ring, v) for k, v in cert["gamma"].items()}
            )
            fpart = gamma * oms.scale(half)
            forms["gamma_f_part"] = canonical_mod.decompose_f(gobj, fpart).to_dict()
    if forms:
        report["canonical_forms"] = forms


def _parse_payload(ring: coeff.CoefficientRing, text: str):
    if isinstance(ring, (coeff.ModRing, coeff.FiniteField)) and ring.order is not None:
        if text.isdigit():
            return ring.from_int(int(text))
        raise ParseError(f"cannot parse coefficient {text!r} for {ring!r}")
    from fractions import Fraction

    if isinstance(ring, coeff.RationalField):
        return Fraction(text)
    raise ParseError(f"coefficient parsing not supported for {ring!r}")


def run(job: JobSpec) -> tuple[int, dict]:
    """Execute a job; returns (exit_code, report)."""
    t_start = time.perf_counter()
    report: dict = {"command": job.command, "seed": job.seed}
    budget = Budget(
        full_scan_limit=job.budget.full_scan_limit,
        structure_limit=job.budget.structure_limit,
        sample_count=job.budget.sample_count,
        structure_samples=job.budget.structure_samples,
        low_support_limit=job.budget.low_support_limit,
        z_budget=job.budget.z_budget,
        height_bound=job.height_bound,
        seed=job.seed,
    )

    if job.command == "levels":
        level = coeff.level_classify_prime(job.prime)
        report.update({"prime": job.prime, "level": level.value})
        label = {"2": "Level2", "4": "Level4", "2 or 4": "TwoOrFour"}[level.value]
        report["label"] = label
        return 0, report

    gobj = parse_group_spec(job.group_spec)
    ring = parse_ring_spec(job.ring_spec)
    G = gobj.group if isinstance(gobj, groups.SLCStructure) else gobj
    report["group"] = (
        gobj.spec_string() if isinstance(gobj, groups.SLCStructure) else job.group_spec
    )
    report["ring"] = ring.spec_string()

    if job.command == "decide":
        verdict = decide.decide_star_clean(gobj, ring, budget)
        report["verdict"] = verdict.to_json()
        report["certificates"] = verdict.certificates
        _maybe_explain(report, gobj, ring, job)
        report["timings"] = {"total_s": round(time.perf_counter() - t_start, 6)}
        return _status_exit(verdict.status), report

    if job.command == "brute":
        sigma = _resolve_sigma(job, gobj, job.involution)
        if job.prop == "clean":
            rep = decide.brute_clean(G, ring, budget)
        else:
            rep = decide.brute_star_clean(G, sigma, ring, budget)
        report["involution"] = job.involution
        report["result"] = rep.to_json()
        report["timings"] = {"total_s": round(time.perf_counter() - t_start, 6)}
        if rep.result is True:
            return 0, report
        if rep.result is False:
            return 1, report
        return 2, report

    if job.command == "witness":
        if not isinstance(gobj, groups.SLCStructure):
            raise PreconditionError("witness generation needs an SLC presentation")
        w = witness_mod.generate_witness(gobj, ring, budget.height_bound, budget.z_budget)
        if w is coeff.UNKNOWN:
            report["witness"] = None
            report["outcome"] = "unknown"
            code = 2
        elif w is None:
            report["witness"] = None
            report["outcome"] = "no-witness; necessary conditions hold"
            code = 0
        else:
            report["witness"] = w.to_dict()
            report["outcome"] = "witness-found"
            report["certificates"] = [{"kind": "witness", **w.to_dict()}]
            _maybe_explain(report, gobj, ring, job)
            code = 1
        report["timings"] = {"total_s": round(time.perf_counter() - t_start, 6)}
        return code, report

    if job.command == "lift":
        sigma = _resolve_sigma(job, gobj, job.involution)
        RG = groupring.GroupRing(G, ring)
        rng = np.random.default_rng(job.seed)
        dec = None
        for _ in range(64):
            alpha = RG.random_element(rng)
            dec = decide.element_star_clean(alpha, sigma, budget)
            if dec is not None:
                break
        if dec is None:
            raise PreconditionError("no *-clean decomposition found to lift")
        result = witness_mod.lift_c2(dec, RG, sigma)
        result.decomposition.validate(result.sigma)
        report.update(
            {
                "base_decomposition": dec.to_dict(),
                "lifted": result.decomposition.to_dict(),
                "lifted_group_order": result.group.order,
                "validated": True,
            }
        )
        report["timings"] = {"total_s": round(time.perf_counter() - t_start, 6)}
        return 0, report

    if job.command == "canonical":
        if not isinstance(gobj, groups.SLCStructure):
            raise PreconditionError("canonical forms need an SLC presentation")
        out: dict = {}
        if job.element:
            RG = groupring.GroupRing(G, ring)
            raw = json.loads(job.element)
            alpha = RG.from_dict({k: _parse_payload(ring, v) for k, v in raw.items()})
            form = canonical_mod.decompose_f(gobj, alpha)
            out["form"] = form.to_dict()
            out["symmetric"] = canonical_mod.is_symmetric_f(form)
            out["roundtrip_ok"] = canonical_mod.reassemble(form) == alpha
        if job.list_projections:
            projs = canonical_mod.f_projections(gobj, ring)
            out["f_projections"] = [p.to_dict() for p in projs]
        report["canonical"] = out
        report["timings"] = {"total_s": round(time.perf_counter() - t_start, 6)}
        return 0, report

    if job.command == "crossval":
        sigma = _resolve_sigma(job, gobj, job.involution)
        cr = decide.cross_validate(gobj, sigma, ring, budget, job.include_clean)
        report.update(cr.to_json())
        if cr.theory is not None:
            report["certificates"] = cr.theory.certificates
        _maybe_explain(report, gobj, ring, job)
        report["timings"]["total_s"] = round(time.perf_counter() - t_start, 6)
        if cr.theory is not None and cr.theory.status is not Status.UNKNOWN:
            return _status_exit(cr.theory.status), report
        if cr.brute_star.result is True:
            return 0, report
        if cr.brute_star.result is False:
            return 1, report
        return 2, report

    raise ParseError(f"unknown command {job.command!r}")


def _render_text(report: dict) -> str:
    lines = []
    for key in ("command", "group", "ring", "involution"):
        if key in report and report[key] is not None:
            lines.append(f"{key}: {report[key]}")
    if "label" in report:
        lines.append(f"level: {report['label']}")
    verdict = report.get("verdict") or report.get("theory")
    if verdict:
        lines.append(f"verdict: {verdict['status']}")
        for r in verdict["reasons"]:
            lines.append(f"  reason [{r['citation']}] {r['criterion']}: {r['data']}")
    if "result" in report and isinstance(report["result"], dict):
        rep = report["result"]
        lines.append(f"{rep['property']}: {rep['result']} ({rep['mode']}, tested {rep['tested']})")
        if "counterexample" in rep:
            lines.append(f"  counterexample: {rep['counterexample']}")
    if "brute" in report:
        for prop, rep in report["brute"].items():
            lines.append(
                f"brute {prop}: {rep['result']} ({rep['mode']}, tested {rep['tested']})"
            )
            if "counterexample" in rep:
                lines.append(f"  counterexample: {rep['counterexample']}")
    if "agreement" in report:
        lines.append(f"agreement: {report['agreement']}")
    if "outcome" in report:
        lines.append(f"outcome: {report['outcome']}")
    if "witness" in report and report["witness"]:
        w = report["witness"]
        lines.append(f"witness case: {w['case']}")
        lines.append(f"  gamma: {w['gamma']}")
        lines.append(f"  tau_w: {w['tau_w']}")
    if "canonical" in report:
        lines.append(f"canonical: {json.dumps(report['canonical'], sort_keys=True)}")
    if "lifted" in report:
        lines.append(f"lifted decomposition validated: {report['validated']}")
    return "\n".join(lines)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(3)


def _build_parser() -> _Parser:
    parser = _Parser(prog="starclean", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, group=True, ring=True):
        if group:
            p.add_argument("--group", required=True)
        if ring:
            p.add_argument("--ring", required=True)
        p.add_argument("--json", action="store_true")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--budget", type=int, default=None, help="full-scan cardinality cap")
        p.add_argument("--height-bound", type=int, default=8)
        p.add_argument("--explain", action="store_true")

    p = sub.add_parser("decide", help="theory-side verdict")
    add_common(p)
    p = sub.add_parser("brute", help="exhaustive/sampled scan")
    add_common(p)
    p.add_argument("--involution", choices=["canonical", "classical"], default="canonical")
    p.add_argument("--property", dest="prop", choices=["star-clean", "clean"], default="star-clean")
    p = sub.add_parser("witness", help="construct a non-*-cleanness witness")
    add_common(p)
    p = sub.add_parser("lift", help="lift a random decomposition across x C2")
    add_common(p)
    p.add_argument("--involution", choices=["canonical", "classical"], default="classical")
    p = sub.add_parser("canonical", help="canonical forms on the f-component")
    add_common(p)
    p.add_argument("--element", default=None, help='JSON map {"name": "coeff"}')
    p.add_argument("--list-projections", action="store_true")
    p = sub.add_parser("crossval", help="theory vs brute force")
    add_common(p)
    p.add_argument("--involution", choices=["canonical", "classical"], default="canonical")
    clean_group = p.add_mutually_exclusive_group()
    clean_group.add_argument("--clean", dest="include_clean", action="store_true", default=None)
    clean_group.add_argument("--no-clean", dest="include_clean", action="store_false")
    p = sub.add_parser("levels", help="level of Q(zeta_p) by residue class")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    budget = decide.DEFAULT_BUDGET
    if getattr(args, "budget", None):
        budget = Budget(full_scan_limit=args.budget, seed=args.seed)
    else:
        budget = Budget(seed=args.seed)
    job = JobSpec(
        command=args.command,
        group_spec=getattr(args, "group", None),
        ring_spec=getattr(args, "ring", None),
        involution=getattr(args, "involution", "canonical"),
        budget=budget,
        height_bound=getattr(args, "height_bound", 8),
        output_json=args.json,
        seed=args.seed,
        explain=getattr(args, "explain", False),
        prime=getattr(args, "prime", None),
        prop=getattr(args, "prop", "star-clean"),
        element=getattr(args, "element", None),
        list_projections=getattr(args, "list_projections", False),
        include_clean=getattr(args, "include_clean", None),
    )
    try:
        code, report = run(job)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (CapacityError, BudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (
        PreconditionError,
        InvalidParameterError,
        RingSpecError,
        CharDividesError,
        NonUnitError,
        NotInFComponentError,
        CarrierMismatchError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5
    except DiscrepancyError as exc:
        print(f"DISCREPANCY: {exc}", file=sys.stderr)
        return 6
    if job.output_json:
        print(json.dumps(report, sort_keys=True, indent=2, default=str))
    else:
        print(_render_text(report))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
