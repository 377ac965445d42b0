"""Command-line interface: ``anyonweave {rep,verify,search,sweep,burau}``.

Exit status is 0 on success, 1 when a check fails and 2 on invalid usage.
"""
from __future__ import annotations

import argparse
import io
import json
import logging
import os
import sys
from typing import Sequence

import numpy as np

from . import __version__
from .burau import (
    BurauSpace,
    braid_relation_residual,
    burau_generator,
    squier_form,
    verify_squier_unitarity,
)
from .errors import AnyonWeaveError, DegenerateBasis, IndefiniteForm, SingularAlpha
from .fusion import (
    FusionSpace,
    braid_word_matrix,
    burau_iso_check,
    signature,
)
from .gates import GATE_NAMES, fibonacci_model, unrolled_model
from .synth import SweepConfig, best_approx, fibonacci_baseline, run_sweep
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("anyonweave")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers


def _fmt(z: complex) -> str:
    z = complex(z)
    re, im = (0.0 if abs(z.real) < 5e-13 else z.real), (0.0 if abs(z.imag) < 5e-13 else z.imag)
    return f"{re:+.6f}{im:+.6f}j"


def _matrix_text(M: np.ndarray) -> str:
    return "\n".join("  [" + "  ".join(_fmt(z) for z in row) + "]" for row in M)


def _matrix_json(M: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def _parse_word(text: str) -> list[int]:
    try:
        word = [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise UsageError(f"bad braid word {text!r}; expected comma-separated signed integers") from None
    if any(g == 0 for g in word):
        raise UsageError("braid letters must be nonzero")
    return word


def _parse_range(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    try:
        if len(parts) == 1:
            a = float(parts[0])
            return a, a, 1.0
        if len(parts) == 3:
            a, b, s = (float(p) for p in parts)
            return a, b, s
    except ValueError:
        pass
    raise UsageError(f"bad alpha range {text!r}; expected start:end:step or a single value")


def _targets(values: Sequence[str] | None) -> tuple[str, ...]:
    out: list[str] = []
    for v in values or ["iX", "iZ", "T"]:
        out.extend(t for t in v.split(",") if t)
    for t in out:
        if t not in GATE_NAMES:
            raise UsageError(f"unknown target {t!r}; choose from {', '.join(GATE_NAMES)}")
    return tuple(out)


def _threads(value: int | None) -> int:
    if value is not None:
        return max(1, value)
    env = os.environ.get("ANYONWEAVE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"ANYONWEAVE_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def read_config(path: str) -> dict[str, str]:
    """Flat ``key = value`` file; ``#`` starts a comment, keys use flag names."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (p.strip() for p in line.split("=", 1))
            out[key.lstrip("-").replace("-", "_")] = value
    return out


def _emit(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# commands


def cmd_rep(args) -> int:
    try:
        space = FusionSpace(args.n, args.k, args.alpha)
    except (AnyonWeaveError, ValueError) as exc:
        raise UsageError(f"invalid space H({args.n},{args.k},{args.alpha}): {exc}") from None
    perm = list(range(space.dim))
    if args.order == "paper":
        perm = perm[::-1]
    words = [space.words[j] for j in perm]
    mats: dict[str, np.ndarray] = {}
    if args.word is not None:
        word = _parse_word(args.word)
        if any(abs(g) > args.n - 1 for g in word):
            raise UsageError(f"word uses a generator outside 1..{args.n - 1}")
        mats[f"word {args.word}"] = braid_word_matrix(space, word)
    gens = [args.gen] if args.gen else ([] if args.word is not None else range(1, args.n))
    for i in gens:
        if not 1 <= i <= args.n - 1:
            raise UsageError(f"generator {i} outside 1..{args.n - 1}")
        mats[f"sigma_{i}"] = space.generator(i)
    mats = {k: M[np.ix_(perm, perm)] for k, M in mats.items()}
    try:
        gram: np.ndarray | None = space.gram[perm]
        sig: tuple[int, int] | None = signature(space)
    except SingularAlpha:
        gram = sig = None
    if args.json:
        payload = {
            "n": args.n, "k": args.k, "alpha": args.alpha, "order": args.order,
            "basis": words,
            "gram": None if gram is None else gram.tolist(),
            "signature": None if sig is None else list(sig),
            "matrices": {k: _matrix_json(M) for k, M in mats.items()},
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
        return EXIT_OK
    buf = io.StringIO()
    buf.write(f"H(n={args.n}, k={args.k}, alpha={args.alpha})  dim={space.dim}  signature={sig or 'undefined'}\n")
    buf.write(f"basis ({args.order} order): {' '.join(words)}\n")
    if args.order == "canonical" and args.n == 3 and args.k == 0:
        buf.write("note: the (v1, v2) convention of the three-strand qubit is the reverse order (--order paper)\n")
    if gram is None:
        buf.write("gram: undefined at this alpha (normalizing dimension vanishes)\n")
    else:
        buf.write("gram: " + " ".join(f"{g:+.6g}" for g in gram) + "\n")
    for name, M in mats.items():
        buf.write(f"{name}:\n{_matrix_text(M)}\n")
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    rep = run_suite(args.suite, seed=args.seed, trials=args.trials)
    if args.out:
        _emit(json.dumps(rep.to_dict(), indent=2) + "\n", args.out)
    worst = max(rep.checks, key=lambda c: c.residual / c.threshold)
    print(f"suite {args.suite}: {len(rep.checks)} checks, "
          f"{'PASS' if rep.passed else 'FAIL'} (worst {worst.name}: {worst.residual:.3e} < {worst.threshold:.0e})")
    for c in rep.failures:
        print(f"  FAILED {c.name}: {c.residual:.3e} >= {c.threshold:.0e}")
    return EXIT_OK if rep.passed else EXIT_FAIL


def _starts(text: str) -> tuple[int, ...]:
    try:
        out = tuple(int(t) for t in text.split(",") if t)
    except ValueError:
        out = ()
    if not out or any(g not in (1, 2) for g in out):
        raise UsageError("--starts takes 1, 2 or 1,2")
    return out


def cmd_search(args) -> int:
    targets = _targets(args.target)
    starts = _starts(args.starts)
    if args.fibonacci:
        model, alpha = fibonacci_model(), None
    else:
        if args.alpha is None:
            raise UsageError("give --alpha or --fibonacci")
        try:
            model, alpha = unrolled_model(args.alpha), args.alpha
        except (IndefiniteForm, SingularAlpha) as exc:
            raise UsageError(str(exc)) from None
    for t in targets:
        r = best_approx(model, t, args.budget, args.metric, starts, args.exact, alpha=alpha)
        print(f"{r.model} {t}: error={r.error:.6e} cost={r.cost} weave={r.weave.format()} "
              f"({r.wall_time:.2f}s, metric={r.metric}, budget={r.budget})")
    return EXIT_OK


def _g(x: float) -> str:
    return f"{x:.12g}"


def cmd_sweep(args) -> int:
    a0, a1, step = _parse_range(args.alpha)
    targets = _targets(args.target)
    try:
        cfg = SweepConfig(
            a0, a1, step, args.budget, targets, args.metric, _threads(args.threads),
            args.refine, _starts(args.starts), args.exact,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = run_sweep(cfg)
    lines = ["alpha,target,metric,budget,error,cost,weave"]
    for r in res.records:
        lines.append(f"{_g(r.alpha)},{r.target},{r.metric},{r.budget},{_g(r.error)},{r.cost},{r.weave.format()}")
    if args.baseline:
        for r in fibonacci_baseline(targets, args.budget, args.metric, cfg.starts, cfg.exact):
            lines.append(f"fibonacci,{r.target},{r.metric},{r.budget},{_g(r.error)},{r.cost},{r.weave.format()}")
    flags = (f"alpha={args.alpha} target={','.join(targets)} budget={args.budget} metric={args.metric} "
             f"baseline={int(args.baseline)} refine={int(args.refine)} starts={args.starts} exact={int(args.exact)}")
    lines.append(f"# skipped {len(res.skipped)} alpha values (indefinite form or singular)")
    lines.append(f"# anyonweave {__version__} seed={args.seed} {flags}")
    _emit("\n".join(lines) + "\n", args.out)
    if not res.records:
        print("error: no alpha in the grid lies in the positive definite window", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_burau(args) -> int:
    if args.alpha is not None:
        space = BurauSpace.from_alpha(args.n, args.alpha)
        label = f"s = i q^alpha, alpha={args.alpha}"
    else:
        s = args.s_modulus * np.exp(1j * args.s_angle)
        space = BurauSpace(args.n, s)
        label = f"s = {args.s_modulus:g} exp({args.s_angle:g} i)"
    if not space.is_unitary_point:
        print(f"error: |s| = {abs(space.s):.6g} is not 1; the Squier form is only Hermitian on the unit circle",
              file=sys.stderr)
        return EXIT_FAIL
    print(f"Burau representation, n={args.n}, {label}, s={_fmt(space.s)}")
    status = EXIT_OK
    for basis in ("E", "f"):
        sp = space.with_basis(basis)
        try:
            G = squier_form(sp)
            gens = [burau_generator(sp, i) for i in range(1, args.n)]
        except DegenerateBasis as exc:
            print(f"warning: {basis}-basis unavailable: {exc}")
            continue
        if args.verbose or basis == args.basis:
            for i, M in enumerate(gens, start=1):
                print(f"sigma_{i} ({basis}-basis):\n{_matrix_text(M)}")
            print(f"Squier form ({basis}-basis):\n{_matrix_text(G)}")
        res = verify_squier_unitarity(sp)
        rel = braid_relation_residual(sp)
        ok = res < 1e-10 and rel < 1e-10
        print(f"{basis}-basis: unitarity residual {res:.3e}, braid relation residual {rel:.3e} "
              f"[{'PASS' if ok else 'FAIL'}]")
        if not ok:
            status = EXIT_FAIL
    if args.check_iso:
        if args.alpha is None:
            raise UsageError("--check-iso needs --alpha")
        try:
            rep = burau_iso_check(args.n, args.alpha)
        except AnyonWeaveError as exc:
            print(f"isomorphism check unavailable: {exc}")
            return EXIT_FAIL
        ok = rep.max_residual < 1e-8 and rep.form_residual < 1e-8 and rep.form_sign == rep.expected_sign != 0
        for i, (lam, r) in enumerate(zip(rep.scalars, rep.residuals), start=1):
            print(f"sigma_{i}: projective residual {r:.3e}, scalar {_fmt(lam)} (|lambda|={abs(lam):.12f})")
        if not rep.form_defined:
            print("pairing: undefined at this alpha (normalization vanishes) [FAIL]")
            return EXIT_FAIL
        print(f"pairing: phi^H G phi = {rep.form_sign:+d} * Squier (expected {rep.expected_sign:+d}), "
              f"residual {rep.form_residual:.3e} [{'PASS' if ok else 'FAIL'}]")
        if not ok:
            status = EXIT_FAIL
    return status


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="anyonweave", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--config", help="key=value file supplying defaults for the subcommand's flags")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("rep", help="print braid generators on H(n, k, alpha)")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--k", type=int, required=True)
    r.add_argument("--alpha", type=float, required=True)
    r.add_argument("--gen", type=int, help="only this generator")
    r.add_argument("--word", help="comma-separated signed letters, e.g. 1,2,-1")
    r.add_argument("--order", choices=["canonical", "paper"], default="canonical",
                   help="basis order; 'paper' reverses the canonical L<R order")
    r.add_argument("--json", action="store_true")
    r.add_argument("--out")
    r.set_defaults(func=cmd_rep)

    v = sub.add_parser("verify", help="run a property suite")
    v.add_argument("--suite", choices=("all",) + SUITES, default="all")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int)
    v.add_argument("--out", help="write the JSON report here")
    v.set_defaults(func=cmd_verify)

    def search_flags(q):
        q.add_argument("--target", action="append", help=f"gate name(s): {', '.join(GATE_NAMES)}")
        q.add_argument("--budget", type=int, default=24)
        q.add_argument("--metric", choices=["opnorm", "trace", "raw"], default="opnorm")
        q.add_argument("--starts", default="1,2", help="allowed first-block generators")
        q.add_argument("--exact", action="store_true", help="only weaves of cost exactly --budget")

    s = sub.add_parser("search", help="best weave for one model")
    s.add_argument("--alpha", type=float)
    s.add_argument("--fibonacci", action="store_true")
    search_flags(s)
    s.set_defaults(func=cmd_search)

    w = sub.add_parser("sweep", help="search over an alpha grid and write CSV")
    w.add_argument("--alpha", required=True, help="start:end:step")
    search_flags(w)
    w.add_argument("--baseline", action="store_true", help="append Fibonacci rows")
    w.add_argument("--refine", action="store_true", help="refine each target's minimum at step/10")
    w.add_argument("--threads", type=int, help="worker threads (default: $ANYONWEAVE_THREADS or CPU count)")
    w.add_argument("--seed", type=int, default=0)
    w.add_argument("--out")
    w.set_defaults(func=cmd_sweep)

    b = sub.add_parser("burau", help="Burau matrices, Squier form and the fusion isomorphism")
    b.add_argument("--n", type=int, required=True)
    grp = b.add_mutually_exclusive_group(required=True)
    grp.add_argument("--s-angle", type=float, help="s = exp(i * angle)")
    grp.add_argument("--alpha", type=float, help="s = i q^alpha")
    b.add_argument("--s-modulus", type=float, default=1.0)
    b.add_argument("--basis", choices=["E", "f"], default="E")
    b.add_argument("--check-iso", action="store_true")
    b.set_defaults(func=cmd_burau)
    return p


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> argparse.Namespace:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return parser.parse_args(argv)
    try:
        conf = read_config(known.config)
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from None
    subs = parser._subparsers._group_actions[0].choices  # type: ignore[union-attr]
    command = next((a for a in argv if a in subs), None)
    if command is None:
        return parser.parse_args(argv)
    sub = subs[command]
    known_flags = {a.dest: a for a in sub._actions}
    defaults, appended = {}, {}
    for key, value in conf.items():
        if key not in known_flags:
            raise UsageError(f"config key {key!r} is not a flag of '{command}'")
        act = known_flags[key]
        if act.nargs == 0:
            defaults[key] = value.lower() in ("1", "true", "yes", "on")
        elif isinstance(act, argparse._AppendAction):
            # an append default would be extended by the flag instead of replaced
            appended[key] = [value]
        else:
            try:
                defaults[key] = act.type(value) if act.type else value
            except ValueError:
                raise UsageError(f"config key {key!r}: bad value {value!r}") from None
        act.required = False
    sub.set_defaults(**defaults)
    args = parser.parse_args(argv)
    for key, value in appended.items():
        if getattr(args, key) is None:
            setattr(args, key, value)
    return args


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = _apply_config(parser, argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        return args.func(args)
    except UsageError as exc:
        print(f"anyonweave: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
