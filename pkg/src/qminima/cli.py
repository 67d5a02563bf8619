"""Command-line driver: expansions, gap sweeps and lattice corpora."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from . import forms
from .errors import NotInSpan, ResourceLimit, WrongResidue
from .forms import WeightRecord
from .gaps import constant_term_report, default_precision, vanishing_constant_terms, verify_gap_theorem
from .quadforms import (
    DEFAULT_NODE_BUDGET, GramMatrix, GramParseError, check_even_positive_definite, level,
    membership_report, minima_bound, parse_gram_jsonl, parse_gram_text, theta_series,
    verify_minima_theorem,
)

GENERATORS = ("E_gamma2", "E_04", "E_inf4", "Delta", "j2", "t_h", "T_2h")


@dataclass
class RunConfig:
    command: str
    precision: int | None = None
    weights: tuple[int, int] | None = None
    weight: int | None = None
    generator: str | None = None
    input_path: Path | None = None
    output_path: Path | None = None
    node_budget: int = DEFAULT_NODE_BUDGET
    fmt: str = "text"


def parse_weights(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        lo_i = int(lo)
        hi_i = int(hi) if sep else lo_i
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None
    if lo_i % 2 or hi_i % 2 or lo_i < 2 or hi_i < lo_i:
        raise argparse.ArgumentTypeError(
            f"weights must be even, >= 2 and increasing, got {text!r}")
    return lo_i, hi_i


def _precision(text: str) -> int:
    p = int(text)
    if p < 2:
        raise argparse.ArgumentTypeError("precision must be at least 2")
    return p


def _kv(**fields) -> str:
    def fmt(v):
        if isinstance(v, bool):
            return str(v).lower()
        return str(v)
    return " ".join(f"{k}={fmt(v)}" for k, v in fields.items())


# -- commands ---------------------------------------------------------------

def run_expand(cfg: RunConfig) -> tuple[list[str], bool]:
    P = cfg.precision or 10
    name = cfg.generator
    if name in ("t_h", "T_2h"):
        if cfg.weight is None:
            raise ValueError(f"{name} needs --weight")
        h = WeightRecord(cfg.weight)
        series = forms.t_h(h, P) if name == "t_h" else forms.t2h(h, P)
    else:
        series = {
            "E_gamma2": forms.e_gamma2, "E_04": forms.e04, "E_inf4": forms.e_inf4,
            "Delta": forms.delta, "j2": forms.j2,
        }[name](P)
    if cfg.fmt == "kv":
        lines = [_kv(exponent=n, coefficient=c) for n, c in series.terms()]
    else:
        lines = [f"{n}:{c}" for n, c in series.terms()]
    return lines, True


def _weight_list(cfg: RunConfig) -> list[WeightRecord]:
    lo, hi = cfg.weights or (2, 10)
    return [WeightRecord(h) for h in range(lo, hi + 1, 2)]


def run_verify_gaps(cfg: RunConfig) -> tuple[list[str], bool]:
    lines, ok = [], True
    for h in _weight_list(cfg):
        P = max(cfg.precision or 0, default_precision(h))
        cert = verify_gap_theorem(h, P)
        ok &= cert.satisfied
        lines.append(cert.to_record(cfg.fmt))
    return lines, ok


def run_sweep(cfg: RunConfig) -> tuple[list[str], bool]:
    """Gap certificates plus the constant-term checks for h = 2 mod 4."""
    lines, ok = [], True
    n_sat = n_sharp = 0
    for h in _weight_list(cfg):
        P = max(cfg.precision or 0, default_precision(h))
        cert = verify_gap_theorem(h, P)
        fields = dict(h=h.h, r=h.r, gap=cert.gap_index, satisfied=cert.satisfied,
                      sharp=cert.sharp)
        good = cert.satisfied
        if h.residue == 2:
            vanish = all(c == 0 for c in vanishing_constant_terms(h, P))
            rep = constant_term_report(h)
            nonzero = rep.nonzero and rep.constant_term == rep.signed_sum
            fields.update(vanishing=vanish, nonvanishing=nonzero,
                          constant_term=rep.constant_term, signed_sum=rep.signed_sum)
            good = good and vanish and nonzero
        else:
            fields.update(constant_term_T2h=cert.constant_term)
        n_sat += cert.satisfied
        n_sharp += cert.sharp
        ok &= good
        if cfg.fmt == "kv":
            lines.append(_kv(**fields))
        else:
            extra = "" if h.residue == 0 else (
                f" c0={fields['constant_term']} vanishing={'ok' if fields['vanishing'] else 'FAIL'}")
            lines.append(f"h={h.h} r={h.r} gap={cert.gap_index} "
                         f"{'ok' if good else 'FAIL'}{extra}")
    lines.append(_kv(summary="sweep", weights=len(_weight_list(cfg)),
                     satisfied=n_sat, sharp=n_sharp))
    return lines, ok


def _load_matrices(path: Path) -> list[GramMatrix]:
    text = path.read_text()
    if path.suffix in (".jsonl", ".json"):
        return parse_gram_jsonl(text)
    return parse_gram_text(text)


def run_theta(cfg: RunConfig) -> tuple[list[str], bool]:
    P = cfg.precision or 10
    lines, ok = [], True
    for A in _load_matrices(cfg.input_path):
        cert = check_even_positive_definite(A)
        if not cert:
            lines.append(f"# {A.name} v={A.v} FAIL {cert.reason}")
            ok = False
            continue
        try:
            th = theta_series(A, P, cfg.node_budget)
        except ResourceLimit as exc:
            lines.append(f"# {A.name} v={A.v} FAIL {exc}")
            ok = False
            continue
        lines.append(f"# {A.name} v={A.v}")
        for n, c in enumerate(th.counts):
            lines.append(_kv(name=A.name, n=n, count=c) if cfg.fmt == "kv" else f"{n}:{c}")
    return lines, ok


def check_one_lattice(A: GramMatrix, P: int | None, node_budget: int, fmt: str) -> tuple[str, bool]:
    cert = check_even_positive_definite(A)
    if not cert:
        return (_kv(name=A.name, v=A.v, valid=False, reason=f'"{cert.reason}"') if fmt == "kv"
                else f"v={A.v} FAIL {cert.reason}"), False
    N = level(A)
    if A.v % 4:
        reason = "dimension not divisible by 4"
    elif N not in (1, 2):
        reason = f"level {N} does not divide 2"
    else:
        reason = None
    if reason:
        return (_kv(name=A.name, v=A.v, level=N, valid=False, reason=f'"{reason}"') if fmt == "kv"
                else f"v={A.v} level={N} FAIL {reason}"), False
    try:
        mc = verify_minima_theorem(A, node_budget)
        r = WeightRecord(A.v // 2).r
        rep = membership_report(A, max(P or 0, r + 10), node_budget)
    except (ResourceLimit, NotInSpan) as exc:
        return f"v={A.v} level={N} FAIL {exc}", False
    ok = mc.satisfied and rep.ok
    if fmt == "kv":
        line = _kv(name=A.name, v=A.v, level=N, hypothesis=f'"{mc.hypothesis}"',
                   min=mc.minimum, bound=mc.bound, satisfied=mc.satisfied,
                   member=rep.ok, coordinates=",".join(map(str, rep.coordinates)),
                   precision=rep.precision)
    else:
        line = (f"v={A.v} level={N} min={mc.minimum} bound={mc.bound} "
                f"{'ok' if mc.satisfied else 'FAIL'} member={'ok' if rep.ok else 'FAIL'}")
    return line, ok


def run_check_lattice(cfg: RunConfig) -> tuple[list[str], bool]:
    lines, ok = [], True
    for A in _load_matrices(cfg.input_path):
        line, good = check_one_lattice(A, cfg.precision, cfg.node_budget, cfg.fmt)
        lines.append(line)
        ok &= good
    return lines, ok


COMMANDS = {
    "expand": run_expand,
    "verify-gaps": run_verify_gaps,
    "theta": run_theta,
    "check-lattice": run_check_lattice,
    "sweep": run_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qminima",
        description="Exact q-expansions of level-two modular forms and quadratic minima.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=_precision, default=None,
                        help="coefficients are produced for exponents below this")
    common.add_argument("--output", type=Path, default=None)
    common.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    common.add_argument("--format", choices=("text", "kv"), default="text", dest="fmt")
    sub = p.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("expand", parents=[common], help="print a q-expansion")
    ex.add_argument("generator", choices=GENERATORS)
    ex.add_argument("--weight", type=int, default=None, help="weight for t_h and T_2h")

    helps = {
        "verify-gaps": "one gap certificate per weight",
        "sweep": "gap certificates plus constant-term checks, with a summary line",
        "theta": "representation counts for each Gram matrix in a file",
        "check-lattice": "definiteness, level, minimum, bound and theta membership",
    }
    for name in ("verify-gaps", "sweep"):
        s = sub.add_parser(name, parents=[common], help=helps[name])
        s.add_argument("--weights", type=parse_weights, default=(2, 10), metavar="LO..HI")

    for name in ("theta", "check-lattice"):
        s = sub.add_parser(name, parents=[common], help=helps[name])
        s.add_argument("--input", type=Path, required=True, dest="input_path")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(
        command=args.command, precision=args.precision,
        weights=getattr(args, "weights", None), weight=getattr(args, "weight", None),
        generator=getattr(args, "generator", None),
        input_path=getattr(args, "input_path", None), output_path=args.output,
        node_budget=args.node_budget, fmt=args.fmt,
    )
    try:
        lines, ok = COMMANDS[cfg.command](cfg)
    except GramParseError as exc:
        print(f"{cfg.input_path}: {exc}", file=sys.stderr)
        return 2
    except (WrongResidue, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = "\n".join(lines) + "\n"
    if cfg.output_path:
        cfg.output_path.write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
