"""Command-line front end.

Exit codes: 0 success or passing check, 1 failing check, 2 usage error,
3 IO or file-format error. Reports go to stdout as JSON; diagnostics go to
stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import builtins, gridio
from .classical import ClassicalPoly, poisson_bracket
from .dynamics import EvolutionJob, NonHermitianHamiltonian, propagate, rule_divergence_report, write_time_series
from .operators import quantum_bracket
from .parser import ParseError, parse, print_canonical
from .quantizer import (
    MixedVariableInput,
    OrderingRule,
    ehrenfest_residual,
    groenewold_candidates,
    groenewold_discrepancy,
    heisenberg_covariance_residual,
    quantize,
    strengthened_rule_residual,
)
from .torus import (
    GridSpec,
    census_count,
    matrix_element_check,
    nullspace_census,
    quantize_grid,
    wigner_inverse,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class IOFailure(Exception):
    pass


def _report(check: str, inputs: dict, result, passed: bool | None = None, metrics: dict | None = None, **extra) -> dict:
    rep = {"check": check, "inputs": inputs, "result": result, "metrics": metrics or {}}
    if passed is not None:
        rep["pass"] = bool(passed)
    rep.update(extra)
    return rep


def _emit(rep: dict, pretty: bool) -> None:
    if pretty:
        for key in ("check", "inputs", "result", "pass", "metrics"):
            if key in rep:
                print(f"{key}: {_human(rep[key])}")
        for key, value in rep.items():
            if key not in ("check", "inputs", "result", "pass", "metrics"):
                print(f"{key}: {_human(value)}")
    else:
        print(json.dumps(rep, sort_keys=True))


def _human(value) -> str:
    if isinstance(value, dict):
        return ", ".join(f"{k}={_human(v)}" for k, v in value.items()) or "-"
    if isinstance(value, list) and len(value) > 12:
        return f"[{len(value)} items] " + json.dumps(value[:12])[:-1] + ", ...]"
    return value if isinstance(value, str) else json.dumps(value)


def _poly(text: str, what: str, dof: int | None = None) -> ClassicalPoly:
    try:
        return parse(text, dof)
    except ParseError as exc:
        raise UsageError(f"{what}: {exc}") from None


def _polys(texts: Sequence[tuple[str, str]]) -> list[ClassicalPoly]:
    parsed = [_poly(t, w) for w, t in texts]
    dof = max(F.dof for F in parsed)
    return [_poly(t, w, dof) for w, t in texts]


def _spec(args) -> GridSpec:
    try:
        return GridSpec(args.n, args.L, args.hbar)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# symbolic commands

def cmd_quantize(args) -> int:
    rule = OrderingRule.parse(args.rule)
    F = _poly(args.expr, "--expr")
    op = quantize(F, rule)
    _emit(_report("quantize", {"expr": print_canonical(F), "rule": rule.value}, print_canonical(op)), args.pretty)
    return EXIT_OK


def cmd_bracket(args) -> int:
    F, G = _polys([("expr1", args.expr1), ("expr2", args.expr2)])
    inputs = {"expr1": print_canonical(F), "expr2": print_canonical(G)}
    if args.poisson:
        result = print_canonical(poisson_bracket(F, G))
        inputs["kind"] = "poisson"
    else:
        rule = OrderingRule.parse(args.rule)
        result = print_canonical(quantum_bracket(quantize(F, rule), quantize(G, rule)))
        inputs.update(kind="quantum", rule=rule.value)
    _emit(_report("bracket", inputs, result), args.pretty)
    return EXIT_OK


def cmd_check_groenewold(args) -> int:
    a, b = groenewold_candidates()
    d = groenewold_discrepancy()
    coeff = d.scalar_part().coefficient(2) if d.is_scalar() else None
    magnitude = None
    if coeff is not None and coeff.is_real() and set(d.scalar_part().terms) == {2}:
        mag = abs(coeff.re)
        magnitude = f"hbar^2/{mag.denominator}" if mag.numerator == 1 else f"{mag}*hbar^2"
    passed = magnitude == "hbar^2/3"
    rep = _report("groenewold", {"candidate_cubic": print_canonical(a), "candidate_mixed": print_canonical(b)},
                  print_canonical(d), passed, magnitude=magnitude)
    _emit(rep, args.pretty)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_check_strengthened(args) -> int:
    rule = OrderingRule.parse(args.rule)
    F1, G1, F2, G2 = _polys([("--f1", args.f1), ("--g1", args.g1), ("--f2", args.f2), ("--g2", args.g2)])
    try:
        r = strengthened_rule_residual(F1, G1, F2, G2, rule)
    except MixedVariableInput as exc:
        raise UsageError(str(exc)) from None
    inputs = {"f1": print_canonical(F1), "g1": print_canonical(G1), "f2": print_canonical(F2),
              "g2": print_canonical(G2), "rule": rule.value}
    _emit(_report("strengthened", inputs, print_canonical(r), r.is_zero()), args.pretty)
    return EXIT_OK if r.is_zero() else EXIT_FAIL


def cmd_check_covariance(args) -> int:
    rule = OrderingRule.parse(args.rule)
    F = _poly(args.expr, "--expr")
    pairs = [heisenberg_covariance_residual(F, rule, i) for i in range(1, F.dof + 1)]
    passed = all(a.is_zero() and b.is_zero() for a, b in pairs)
    result = [[print_canonical(a), print_canonical(b)] for a, b in pairs]
    _emit(_report("covariance", {"expr": print_canonical(F), "rule": rule.value}, result, passed), args.pretty)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_check_ehrenfest(args) -> int:
    rule = OrderingRule.parse(args.rule)
    H = _poly(args.hamiltonian, "--hamiltonian")
    pairs = ehrenfest_residual(H, rule)
    passed = all(a.is_zero() and b.is_zero() for a, b in pairs)
    result = [[print_canonical(a), print_canonical(b)] for a, b in pairs]
    _emit(_report("ehrenfest", {"hamiltonian": print_canonical(H), "rule": rule.value}, result, passed), args.pretty)
    return EXIT_OK if passed else EXIT_FAIL


# grid commands

def _load_or_builtin(path_or_name: str, kind: str, spec: GridSpec | None, resolver):
    path = Path(path_or_name)
    if path.suffix == ".json" or path.exists():
        try:
            return gridio.load(path, kind)
        except OSError as exc:
            raise IOFailure(f"{path}: {exc.strerror or exc}") from None
        except gridio.FormatError as exc:
            raise IOFailure(str(exc)) from None
    if spec is None:
        spec = GridSpec()
    try:
        return resolver(spec, path_or_name)
    except builtins.UnknownBuiltin as exc:
        raise UsageError(str(exc.args[0])) from None


def _write(obj, out: str | None) -> str | None:
    if out is None:
        print(gridio.to_json(obj))
        return None
    try:
        gridio.save(obj, out)
    except OSError as exc:
        raise IOFailure(f"{out}: {exc.strerror or exc}") from None
    return out


def cmd_grid_quantize(args) -> int:
    rule = OrderingRule.parse(args.rule)
    F = _load_or_builtin(args.func, "psfunction", _spec(args), builtins.grid_function)
    A = quantize_grid(F, rule)
    path = _write(A, args.out)
    if path is not None:
        metrics = {"hermiticity_error": A.hermiticity_error(), "max_abs": A.max_abs()}
        _emit(_report("grid quantize", {"func": args.func, "rule": rule.value, **F.spec.to_dict()}, path,
                      metrics=metrics), args.pretty)
    return EXIT_OK


def cmd_grid_wigner(args) -> int:
    A = _load_or_builtin(args.op, "operator", _spec(args), builtins.grid_operator)
    W = wigner_inverse(A)
    path = _write(W, args.out)
    if path is not None:
        re = W.samples.real
        metrics = {"min": float(re.min()), "max": float(re.max()), "max_imag": float(abs(W.samples.imag).max())}
        _emit(_report("grid wigner", {"op": args.op, **A.spec.to_dict()}, path, metrics=metrics), args.pretty)
    return EXIT_OK


def cmd_grid_nullspace(args) -> int:
    spec = _spec(args)
    census = nullspace_census(spec)
    rep = _report("grid nullspace", spec.to_dict(), [list(pair) for pair in census],
                  metrics={"count": len(census), "combinatorial_count": census_count(spec.N)})
    _emit(rep, args.pretty)
    return EXIT_OK


def cmd_grid_matrix_check(args) -> int:
    spec = _spec(args)
    dev = matrix_element_check(spec, args.m, args.s)
    passed = dev < 1e-12
    rep = _report("grid matrix-check", {**spec.to_dict(), "m": args.m, "s": args.s}, dev, passed,
                  metrics={"deviation": dev})
    _emit(rep, args.pretty)
    return EXIT_OK if passed else EXIT_FAIL


# dynamics commands

def _read_config(path: str) -> dict:
    try:
        cfg = json.loads(Path(path).read_text())
    except OSError as exc:
        raise IOFailure(f"{path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise IOFailure(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(cfg, dict):
        raise IOFailure(f"{path}: config must be a JSON object")
    return cfg


def _resolve(entry, kind: str, spec: GridSpec, resolver, base: Path):
    if isinstance(entry, dict) and "file" in entry:
        return _load_or_builtin(str(base / entry["file"]), kind, spec, resolver)
    if isinstance(entry, str):
        try:
            return resolver(spec, entry)
        except builtins.UnknownBuiltin as exc:
            raise IOFailure(str(exc.args[0])) from None
    raise IOFailure(f"cannot interpret {kind} entry {entry!r}")


def job_from_config(cfg: dict, base: Path = Path(".")) -> EvolutionJob:
    """Build an :class:`EvolutionJob` from its JSON description.

    Keys: N, L (optional), hbar, hamiltonian, rule, initial, t_final, dt,
    observables (list; ``"hamiltonian"`` means the quantized Hamiltonian).
    Grid objects are builtin names or ``{"file": path}``.
    """
    try:
        spec = GridSpec(int(cfg.get("N", 64)), cfg.get("L"), float(cfg.get("hbar", 1.0)))
        rule = OrderingRule.parse(cfg.get("rule", "bj"))
        H = _resolve(cfg.get("hamiltonian", "harper"), "psfunction", spec, builtins.grid_function, base)
        psi = _resolve(cfg.get("initial", "harper-packet"), "state", spec, builtins.grid_state, base)
        observables = []
        for entry in cfg.get("observables", ["hamiltonian"]):
            if entry == "hamiltonian":
                observables.append(quantize_grid(H, rule))
            else:
                observables.append(_resolve(entry, "operator", spec, builtins.grid_operator, base))
        return EvolutionJob(spec, H, rule, psi, float(cfg["t_final"]), float(cfg["dt"]), observables)
    except KeyError as exc:
        raise IOFailure(f"config is missing {exc}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, NonHermitianHamiltonian):
            raise
        raise IOFailure(f"bad config: {exc}") from None


def cmd_dyn_run(args) -> int:
    cfg = _read_config(args.config)
    job = job_from_config(cfg, Path(args.config).parent)
    samples = propagate(job)
    out = args.out or cfg.get("output")
    if out is None:
        write_time_series(samples, sys.stdout)
        return EXIT_OK
    try:
        with open(out, "w") as fh:
            write_time_series(samples, fh)
    except OSError as exc:
        raise IOFailure(f"{out}: {exc.strerror or exc}") from None
    norm_err = max(abs(s.norm - 1) for s in samples)
    _emit(_report("dyn run", {"config": args.config}, out, metrics={"samples": len(samples), "max_norm_error": norm_err}),
          args.pretty)
    return EXIT_OK


def cmd_dyn_divergence(args) -> int:
    cfg = _read_config(args.config)
    job = job_from_config(cfg, Path(args.config).parent)
    rep = rule_divergence_report(job.spec, job.H_classical, job.initial, job.t_final, job.dt)
    metrics = {k: rep[k] for k in ("hamiltonian_difference_max", "hamiltonian_difference_norm",
                                   "trajectory_distance_max", "trajectory_distance_final")}
    _emit(_report("dyn divergence", {"config": args.config}, {"times": rep["times"], "distances": rep["distances"]},
                  metrics=metrics), args.pretty)
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .acceptance import run_all

    results = run_all(args.seed, echo=lambda line: print(line, file=sys.stderr))
    passed = all(r.passed for r in results)
    rep = _report("selftest", {"seed": args.seed}, [{"criterion": r.number, "name": r.name, "pass": r.passed,
                                                     "detail": r.detail} for r in results], passed)
    _emit(rep, args.pretty)
    return EXIT_OK if passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable output instead of JSON")

    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--n", type=int, default=64, help="grid size N (even, >= 4)")
    grid.add_argument("--L", type=float, default=None, help="position period (default sqrt(2 pi hbar N))")
    grid.add_argument("--hbar", type=float, default=1.0)

    rule_choices = ["bj", "weyl"]
    ap = argparse.ArgumentParser(prog="bjq", description="Born-Jordan and Weyl quantization checks")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("quantize", parents=[common], help="quantize a polynomial")
    p.add_argument("--rule", choices=rule_choices, default="bj")
    p.add_argument("--expr", required=True)
    p.set_defaults(handler=cmd_quantize)

    p = sub.add_parser("bracket", parents=[common], help="Poisson or quantum bracket of two polynomials")
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--quantum", action="store_true")
    kind.add_argument("--poisson", action="store_true")
    p.add_argument("--rule", choices=rule_choices, default="bj")
    p.add_argument("expr1")
    p.add_argument("expr2")
    p.set_defaults(handler=cmd_bracket)

    check = sub.add_parser("check", help="verification computations").add_subparsers(dest="check", required=True)
    p = check.add_parser("groenewold", parents=[common])
    p.set_defaults(handler=cmd_check_groenewold)
    p = check.add_parser("strengthened", parents=[common])
    for name in ("--f1", "--g1", "--f2", "--g2"):
        p.add_argument(name, default="0")
    p.add_argument("--rule", choices=rule_choices, default="bj")
    p.set_defaults(handler=cmd_check_strengthened)
    p = check.add_parser("covariance", parents=[common])
    p.add_argument("--expr", required=True)
    p.add_argument("--rule", choices=rule_choices, default="bj")
    p.set_defaults(handler=cmd_check_covariance)
    p = check.add_parser("ehrenfest", parents=[common])
    p.add_argument("--hamiltonian", required=True)
    p.add_argument("--rule", choices=rule_choices, default="bj")
    p.set_defaults(handler=cmd_check_ehrenfest)

    gsub = sub.add_parser("grid", help="numeric torus backend").add_subparsers(dest="grid", required=True)
    p = gsub.add_parser("quantize", parents=[common, grid])
    p.add_argument("--rule", choices=rule_choices, default="bj")
    p.add_argument("--func", required=True, help="psfunction file or builtin name")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_grid_quantize)
    p = gsub.add_parser("wigner", parents=[common, grid])
    p.add_argument("--op", required=True, help="operator file or builtin name")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_grid_wigner)
    p = gsub.add_parser("nullspace", parents=[common, grid])
    p.set_defaults(handler=cmd_grid_nullspace)
    p = gsub.add_parser("matrix-check", parents=[common, grid])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.set_defaults(handler=cmd_grid_matrix_check)

    dsub = sub.add_parser("dyn", help="torus dynamics").add_subparsers(dest="dyn", required=True)
    p = dsub.add_parser("run", parents=[common])
    p.add_argument("--config", required=True)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_dyn_run)
    p = dsub.add_parser("divergence", parents=[common])
    p.add_argument("--config", required=True)
    p.set_defaults(handler=cmd_dyn_divergence)

    p = sub.add_parser("selftest", parents=[common], help="run every acceptance criterion")
    p.add_argument("--seed", type=int, default=None, help="overrides BJQ_SEED")
    p.set_defaults(handler=cmd_selftest)
    return ap


def run(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"bjq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IOFailure as exc:
        print(f"bjq: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except NonHermitianHamiltonian as exc:
        print(f"bjq: error: non-Hermitian Hamiltonian: {exc}", file=sys.stderr)
        return EXIT_IO


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
