"""Command-line front end.

Exit codes: 0 success or Positive, 1 a rigorous NonPositive, 2 Undecided at the
precision cap, 3 usage or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Sequence

from .certify import PrecisionPolicy, certify_dominance, certify_identity, certify_lemma, scan_alpha
from .core.interval import IntervalScalar
from .core.rational import parse_rational
from .core.verdict import State, rational_str
from .errors import CopsonError, Undecided
from .lemmas import IDENTITIES, REGISTRY
from .quadform import certify_psd, copson_form, min_eig_bracket, random_form_minimum
from .sequences import make_family
from .weights import remainder_oracle, weight_value

EXIT_OK, EXIT_NONPOSITIVE, EXIT_UNDECIDED, EXIT_USAGE = 0, 1, 2, 3
_STATE_EXIT = {State.POSITIVE: EXIT_OK, State.NONPOSITIVE: EXIT_NONPOSITIVE, State.UNDECIDED: EXIT_UNDECIDED}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    """Everything that determines a report; echoed verbatim into JSON output."""

    command: str
    family: str | None = None
    alpha: Fraction | None = None
    alpha_hi: Fraction | None = None
    n_lo: int | None = None
    n_hi: int | None = None
    N: int | None = None
    lemma_id: str | None = None
    interval: tuple[Fraction, Fraction] | None = None
    mode: str | None = None
    tol: Fraction | None = None
    steps: int | None = None
    nmax: int | None = None
    trials: int | None = None
    seed: int | None = None
    classical: bool = False
    precision_start: int = 128
    precision_cap: int = 4096
    format: str = "json"
    output: str | None = None

    @property
    def policy(self) -> PrecisionPolicy:
        return PrecisionPolicy(self.precision_start, self.precision_cap)

    def to_json(self) -> dict:
        def enc(v):
            if isinstance(v, Fraction):
                return rational_str(v)
            if isinstance(v, tuple):
                return [enc(x) for x in v]
            return v

        return {k: enc(v) for k, v in asdict(self).items() if v is not None}


# -- argument parsing --------------------------------------------------------


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _n_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        return (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo..hi, got {text!r}") from None


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--precision", type=int, default=128, help="starting precision in bits")
    p.add_argument("--precision-cap", type=int, default=None, help="cap (default $COPSON_PRECISION_CAP or 4096)")
    p.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--output", "-o", default=None, help="write the report here instead of stdout")
    p.add_argument("--timing", action="store_true", help="add wall-clock time (breaks byte-identity)")


def build_parser() -> argparse.ArgumentParser:
    root = _Parser(prog="copson", description="Certified Hardy-Copson weight computations.")
    root.add_argument("--config", help="key=value file whose entries act as default flags")
    sub = root.add_subparsers(dest="command", required=True, parser_class=_Parser)

    w = sub.add_parser("weights", help="tabulate improved and classical weights")
    w.add_argument("--family", required=True)
    w.add_argument("--alpha", type=_rational, required=True)
    w.add_argument("--n", type=_n_range, required=True, help="lo..hi")
    w.add_argument("--classical", action="store_true", help="add classical and margin columns")
    _common(w)

    c = sub.add_parser("certify", help="dominance, lemma and identity certificates")
    csub = c.add_subparsers(dest="what", required=True, parser_class=_Parser)
    d = csub.add_parser("dominance")
    d.add_argument("--family", required=True)
    d.add_argument("--alpha", type=_rational, required=True)
    d.add_argument("--n", type=_n_range, required=True)
    _common(d)
    lm = csub.add_parser("lemma")
    lm.add_argument("--id", required=True, choices=sorted(REGISTRY))
    lm.add_argument("--interval", type=_rational, nargs=2, metavar=("A", "B"))
    lm.add_argument("--alpha", type=_rational, help="parameter for lemma35_gap")
    _common(lm)
    ident = csub.add_parser("identity")
    ident.add_argument("--id", required=True, choices=sorted(IDENTITIES))
    _common(ident)

    q = sub.add_parser("quadform", help="tridiagonal form checks")
    q.add_argument("--family", required=True)
    q.add_argument("--alpha", type=_rational, required=True)
    q.add_argument("--N", type=int, required=True)
    mode = q.add_mutually_exclusive_group(required=True)
    mode.add_argument("--psd", action="store_true")
    mode.add_argument("--mineig", type=_rational, metavar="TOL")
    mode.add_argument("--random", type=int, metavar="TRIALS")
    q.add_argument("--seed", type=int, default=0)
    _common(q)

    s = sub.add_parser("scan", help="dominance verdicts on a uniform alpha grid")
    s.add_argument("--family", required=True)
    s.add_argument("--alpha", type=_rational, nargs=2, required=True, metavar=("LO", "HI"))
    s.add_argument("--steps", type=int, required=True)
    s.add_argument("--nmax", type=int, required=True)
    _common(s)

    o = sub.add_parser("oracle", help="exact regression oracles")
    osub = o.add_subparsers(dest="what", required=True, parser_class=_Parser)
    r = osub.add_parser("remainder")
    r.add_argument("--trials", type=int, default=1000)
    r.add_argument("--seed", type=int, default=0)
    _common(r)
    return root


_FLAG_ONLY = {"classical", "psd", "timing"}


def _config_tokens(path: str) -> list[str]:
    """``key = value`` lines become ``--key value`` tokens; ``#`` starts a comment."""
    tokens: list[str] = []
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise UsageError(f"config line without '=': {raw!r}")
        key, value = key.strip().replace("_", "-"), value.strip()
        if key in _FLAG_ONLY:
            if value.lower() in ("1", "true", "yes"):
                tokens.append(f"--{key}")
            continue
        tokens.append(f"--{key}")
        tokens.extend(value.split())
    return tokens


def _splice_config(argv: list[str]) -> list[str]:
    """Insert config tokens right after the subcommand words so explicit flags win."""
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    if i + 1 >= len(argv):
        raise UsageError("--config needs a path")
    path = argv[i + 1]
    rest = argv[:i] + argv[i + 2 :]
    words = 0
    while words < len(rest) and not rest[words].startswith("-"):
        words += 1
    return rest[:words] + _config_tokens(path) + rest[words:]


# -- commands ----------------------------------------------------------------


def _dump_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _report(cfg: RunConfig, body: dict) -> str:
    return _dump_json({"config": cfg.to_json(), **body})


def _cmd_weights(cfg: RunConfig) -> tuple[int, str]:
    seq = make_family(cfg.family, cfg.n_hi)
    rows = []
    for n in range(cfg.n_lo, cfg.n_hi + 1):
        wv = weight_value(seq, cfg.alpha, n, cfg.precision_start)
        w_lo, w_hi = wv.value.decimal_bounds()
        row = {"n": n, "w_lo": w_lo, "w_hi": w_hi}
        if cfg.classical:
            c_lo, c_hi = wv.classical.decimal_bounds()
            row.update(classical_lo=c_lo, classical_hi=c_hi, margin_lo=wv.margin.decimal_bounds()[0])
        rows.append(row)
    if cfg.format == "json":
        return EXIT_OK, _report(cfg, {"precision_bits": cfg.precision_start, "rows": rows})
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return EXIT_OK, buf.getvalue()


def _cmd_dominance(cfg: RunConfig, jobs: int, timing: bool) -> tuple[int, str]:
    seq = make_family(cfg.family, cfg.n_hi)
    rep = certify_dominance(seq, cfg.alpha, cfg.n_lo, cfg.n_hi, cfg.policy, jobs)
    return _STATE_EXIT[rep.verdict.state], _report(cfg, {"report": rep.to_json(timing)})


def _cmd_lemma(cfg: RunConfig) -> tuple[int, str]:
    params = {"alpha": cfg.alpha} if cfg.alpha is not None else None
    v = certify_lemma(cfg.lemma_id, cfg.interval, cfg.policy, params)
    return _STATE_EXIT[v.state], _report(cfg, {"verdict": v.to_json()})


def _cmd_identity(cfg: RunConfig) -> tuple[int, str]:
    ok = certify_identity(cfg.lemma_id)
    return (EXIT_OK if ok else EXIT_NONPOSITIVE), _report(cfg, {"identity": cfg.lemma_id, "holds": ok})


def _cmd_quadform(cfg: RunConfig) -> tuple[int, str]:
    seq = make_family(cfg.family, cfg.N + 1)
    if cfg.mode == "psd":
        v = certify_psd(lambda p: copson_form(seq, cfg.alpha, cfg.N, p), cfg.policy)
        return _STATE_EXIT[v.state], _report(cfg, {"verdict": v.to_json()})
    form = copson_form(seq, cfg.alpha, cfg.N, cfg.precision_start)
    if cfg.mode == "mineig":
        bracket = min_eig_bracket(form, cfg.tol)
        code = EXIT_NONPOSITIVE if bracket.hi < 0 else EXIT_OK
        return code, _report(cfg, {"min_eigenvalue": bracket.to_json()})
    best = random_form_minimum(form, cfg.trials, cfg.seed)
    if not isinstance(best, IntervalScalar):
        best = IntervalScalar.exact(best, cfg.precision_start)
    code = EXIT_NONPOSITIVE if best.hi < 0 else EXIT_OK
    return code, _report(cfg, {"min_value": best.to_json()})


def _cmd_scan(cfg: RunConfig, jobs: int) -> tuple[int, str]:
    seq = make_family(cfg.family, cfg.nmax)
    rep = scan_alpha(seq, cfg.alpha, cfg.alpha_hi, cfg.steps, cfg.nmax, cfg.policy, jobs)
    # the scan is exploratory: individual failures are data, not errors
    return EXIT_OK, _report(cfg, {"report": rep.to_json()})


def _cmd_oracle(cfg: RunConfig) -> tuple[int, str]:
    bad = remainder_oracle(cfg.trials, cfg.seed)
    return (EXIT_NONPOSITIVE if bad else EXIT_OK), _report(cfg, {"trials": cfg.trials, "nonzero_defects": bad})


def _config_from_args(ns: argparse.Namespace) -> RunConfig:
    cap = ns.precision_cap if ns.precision_cap is not None else PrecisionPolicy.from_env().cap
    command = ns.command if not getattr(ns, "what", None) else f"{ns.command} {ns.what}"
    kw: dict = dict(command=command, precision_start=ns.precision, precision_cap=cap)
    if ns.precision < 16 or cap < ns.precision:
        raise UsageError(f"need 16 <= --precision <= cap, got {ns.precision} and {cap}")
    for name in ("family", "classical", "steps", "nmax", "trials", "seed", "N"):
        if hasattr(ns, name):
            kw[name] = getattr(ns, name)
    if getattr(ns, "n", None):
        kw["n_lo"], kw["n_hi"] = ns.n
    if hasattr(ns, "id"):
        kw["lemma_id"] = ns.id
    if getattr(ns, "interval", None):
        kw["interval"] = tuple(ns.interval)
    alpha = getattr(ns, "alpha", None)
    if isinstance(alpha, list):
        kw["alpha"], kw["alpha_hi"] = alpha
    elif alpha is not None:
        kw["alpha"] = alpha
    if ns.command == "quadform":
        if ns.psd:
            kw["mode"] = "psd"
        elif ns.mineig is not None:
            kw["mode"], kw["tol"] = "mineig", ns.mineig
        else:
            kw["mode"], kw["trials"] = "random", ns.random
        if kw["mode"] != "random":
            kw.pop("seed", None)
    kw["format"] = ns.format or ("csv" if ns.command == "weights" else "json")
    kw["output"] = ns.output
    return RunConfig(**kw)


def _validate(cfg: RunConfig) -> None:
    if cfg.n_lo is not None and not 1 <= cfg.n_lo <= cfg.n_hi:
        raise UsageError(f"bad n range {cfg.n_lo}..{cfg.n_hi}")
    for name in ("N", "steps", "nmax", "trials"):
        v = getattr(cfg, name)
        if v is not None and v < 1:
            raise UsageError(f"--{name} must be positive")
    if cfg.format == "csv" and cfg.command != "weights":
        raise UsageError("csv output is only available for the weights table")


def run_command(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        ns = build_parser().parse_args(_splice_config(argv))
        cfg = _config_from_args(ns)
        _validate(cfg)
        jobs = max(1, ns.jobs)
        if cfg.command == "weights":
            code, text = _cmd_weights(cfg)
        elif cfg.command == "certify dominance":
            code, text = _cmd_dominance(cfg, jobs, ns.timing)
        elif cfg.command == "certify lemma":
            code, text = _cmd_lemma(cfg)
        elif cfg.command == "certify identity":
            code, text = _cmd_identity(cfg)
        elif cfg.command == "quadform":
            code, text = _cmd_quadform(cfg)
        elif cfg.command == "scan":
            code, text = _cmd_scan(cfg, jobs)
        else:
            code, text = _cmd_oracle(cfg)
    except Undecided as exc:
        print(f"copson: undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except (UsageError, CopsonError, ValueError) as exc:
        print(f"copson: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.output:
        with open(cfg.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
