"""Command-line interface: ``qcapacity <verb> [options]``.

Exit status is 0 on success, 1 on validation errors and 2 on numerical
non-convergence or closed-form disagreement.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import capacity as cap
from . import channels as chn
from . import zoo
from .audit import run_audit
from .errors import QCapacityError, NoSignChange
from .simulate import classical_channel_io, heralded_readout
from .spec_io import load_channel
from .states import basis_projector, check_state, maximally_mixed

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC = 0, 1, 2
CLOSED_FORM_TOL = 1e-8


class UsageError(QCapacityError):
    pass


def fmt(x: float) -> str:
    return f"{x:.12g}"


# --- channel construction from flags ----------------------------------------


def _need(value, flag: str, zoo_name: str):
    if value is None:
        raise UsageError(f"--zoo {zoo_name} requires {flag}")
    return value


def zoo_from_flags(name: str, d, p, gammas, angles) -> tuple[chn.KrausChannel, float | None]:
    """Build a zoo channel from CLI flags; also return its closed-form I(Phi) if known."""
    if name == "identity":
        d = d or 2
        return zoo.identity(d), float(np.log2(d))
    if name == "replacement":
        d = _need(d, "--d", name)
        return zoo.replacement(d, basis_projector(0, d)), cap.cf_replacement(d)
    if name == "erasure":
        d, p = _need(d, "--d", name), _need(p, "--p", name)
        return zoo.erasure(d, p), cap.cf_erasure(d, p)
    if name == "depolarizing":
        d, p = _need(d, "--d", name), _need(p, "--p", name)
        return zoo.depolarizing(d, p), cap.cf_depolarizing(d, p)
    if name == "completely_dephasing":
        d = d or 2
        return zoo.completely_dephasing(d), 0.0
    if name in ("ad_qudit", "ad_qubit"):
        g = _need(gammas, "--gamma", name)
        return zoo.ad_qudit(g), cap.cf_ad_qudit(g)
    if name == "qubit_extreme":
        a = _need(angles, "--angle (twice)", name)
        if len(a) != 2:
            raise UsageError("--zoo qubit_extreme needs exactly two --angle values")
        return zoo.qubit_extreme(*a), cap.cf_qubit_extreme(*a)
    raise UsageError(f"zoo channel {name!r} is not constructible from flags; use --spec")


def channel_from_args(args) -> tuple[chn.KrausChannel, float | None]:
    if args.spec:
        return load_channel(args.spec), None
    if args.zoo:
        return zoo_from_flags(args.zoo, args.d, args.p, args.gamma, args.angle)
    raise UsageError("give either --spec FILE or --zoo NAME")


# --- verbs ------------------------------------------------------------------

UNITS = {"quantum": "qubits", "eao-quantum": "qubits"}


def cmd_capacity(args) -> int:
    ch, closed = channel_from_args(args)
    which = args.which
    out: dict = {"which": which, "log_base": 2, "units": UNITS.get(which, "bits")}
    status = EXIT_OK
    if which == "quantum":
        out["value"] = cap.quantum_capacity(ch)
    elif which == "coh-classical":
        v = cap.coherent_classical_capacity(ch)
        out["value"] = None if isinstance(v, cap.Undefined) else v
        if isinstance(v, cap.Undefined):
            out["undefined"] = v.reason
    elif which == "eao-classical":
        out["value"] = cap.eao_classical_capacity(ch)
    elif which == "eao-quantum":
        out["value"] = cap.eao_quantum_capacity(ch)
    elif which in ("classical", "private", "ea-classical"):
        if which == "classical" and args.restarts:
            rep = cap.classical_capacity_basis_search(ch, args.restarts, args.tol, args.seed)
        elif which == "classical":
            rep = cap.classical_capacity(ch, tol=args.tol)
        elif which == "private":
            rep = cap.private_capacity(ch, restarts=args.restarts or 32, tol=args.tol, seed=args.seed)
        else:
            rep = cap.ea_classical_capacity_search(ch, restarts=args.restarts or 8, tol=args.tol, seed=args.seed)
            out["gap_to_eao"] = rep.extras["gap_to_eao"]
        out.update(
            value=rep.value,
            probs=None if rep.probs is None else [float(x) for x in rep.probs],
            iterations=rep.iterations,
            converged=rep.converged,
            gap=rep.gap,
        )
        if not rep.converged:
            status = EXIT_NUMERIC
    if which == "quantum" and closed is not None:
        diff = abs(out["value"] - closed)
        out["closed_form"] = closed
        out["closed_form_agrees"] = diff <= CLOSED_FORM_TOL
        if diff > CLOSED_FORM_TOL:
            status = EXIT_NUMERIC
    _emit(out, args)
    return status


def _emit(out: dict, args) -> None:
    for k, v in out.items():
        if isinstance(v, float):
            v = fmt(v)
        elif isinstance(v, list) and all(isinstance(x, float) for x in v):
            v = "[" + ", ".join(fmt(x) for x in v) + "]"
        print(f"{k}: {v}")
    if getattr(args, "json", None):
        Path(args.json).write_text(json.dumps(out, indent=2, default=float))


def _axis(n: int, lo: float, hi: float) -> np.ndarray:
    return np.linspace(lo, hi, n)


SWEEPS = {
    # family: (param names, default range, builder, closed form)
    "ad_qubit": (("gamma",), (0.0, 1.0), lambda g: zoo.ad_qubit(g), cap.cf_ad_qubit),
    "ad_qutrit": (("gamma0", "gamma1"), (0.0, 1.0), lambda a, b: zoo.ad_qudit([a, b]), lambda a, b: cap.cf_ad_qudit([a, b])),
    "qubit_extreme": (("a", "b"), (0.0, np.pi / 2), zoo.qubit_extreme, cap.cf_qubit_extreme),
}


def _parse_range(text: str | None, default: tuple[float, float]) -> tuple[float, float]:
    if not text:
        return default
    lo, hi = text.split(":")
    return float(lo), float(hi)


def sweep_rows(family: str, n: int, rng_text: str | None = None, jobs: int = 4):
    """Evaluate I(Phi) on a grid; returns (header, rows, max closed-form deviation)."""
    names, default, build, closed = SWEEPS[family]
    lo, hi = _parse_range(rng_text, default)
    axis = _axis(n, lo, hi)
    if len(names) == 1:
        points = [(x,) for x in axis]
    else:
        points = [(x, y) for x in axis for y in axis]

    def work(pt):
        v = cap.quantum_capacity(build(*pt))
        return v, abs(v - closed(*pt))

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as ex:
        results = list(ex.map(work, points, chunksize=64))
    header = list(names) + ["quantum_capacity_qubits"]
    rows = [list(pt) + [v] for pt, (v, _) in zip(points, results)]
    dev = max(e for _, e in results)
    return header, rows, dev


def write_csv(path, header, rows) -> None:
    lines = [",".join(header)] + [",".join(fmt(float(x)) for x in r) for r in rows]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def cmd_sweep(args) -> int:
    if args.family not in SWEEPS:
        raise UsageError(f"unknown sweep family {args.family!r}; known: {sorted(SWEEPS)}")
    if args.which != "quantum":
        raise UsageError("sweeps evaluate --which quantum only")
    header, rows, dev = sweep_rows(args.family, args.grid, args.range, args.jobs)
    if args.out:
        write_csv(args.out, header, rows)
    else:
        sys.stdout.write(",".join(header) + "\n")
        for r in rows:
            sys.stdout.write(",".join(fmt(float(x)) for x in r) + "\n")
    print(f"# points={len(rows)} max_closed_form_deviation={dev:.3e} (log base 2)", file=sys.stderr)
    return EXIT_OK if dev <= 1e-9 else EXIT_NUMERIC


THRESHOLD_FAMILIES = {
    "depolarizing": lambda d: (lambda p: zoo.depolarizing(d, p), (0.0, 0.5)),
    "erasure": lambda d: (lambda p: zoo.erasure(d, p), (0.0, 1.0)),
    "ad_qubit": lambda d: (zoo.ad_qubit, (0.0, 1.0)),
}


def cmd_threshold(args) -> int:
    if args.family not in THRESHOLD_FAMILIES:
        raise UsageError(f"unknown threshold family {args.family!r}; known: {sorted(THRESHOLD_FAMILIES)}")
    fam, default = THRESHOLD_FAMILIES[args.family](args.d or 2)
    lo, hi = _parse_range(args.range, default)
    try:
        t = cap.zero_capacity_threshold(fam, lo, hi, tol=args.tol)
    except NoSignChange as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    _emit(
        {"family": args.family, "d": args.d or 2, "threshold": t.value, "bracket_lo": t.bracket[0],
         "bracket_hi": t.bracket[1], "residual_abs_I_qubits": t.residual, "iterations": t.iterations},
        args,
    )
    return EXIT_OK


def cmd_audit(args) -> int:
    results = run_audit(args.seed, args.trials)
    for r in results:
        state = "PASS" if r.ok else "FAIL"
        print(f"{state} {r.name}: passed={r.passed} failed={r.failed} worst_excess={r.worst:.3e}")
    return EXIT_OK if all(r.ok for r in results) else EXIT_NUMERIC


def cmd_classify(args) -> int:
    ch, _ = channel_from_args(args)
    c = chn.classify(ch)
    _emit({"d_in": ch.d_in, "d_out": ch.d_out, "n_kraus": ch.n_kraus, **vars(c)}, args)
    return EXIT_OK


NAMED_OBSERVABLES = {
    "Z": np.diag([1.0, -1.0]),
    "X": np.array([[0.0, 1.0], [1.0, 0.0]]),
    "Y": np.array([[0.0, -1j], [1j, 0.0]]),
}


def _matrix_arg(text: str) -> np.ndarray:
    if text in NAMED_OBSERVABLES:
        return NAMED_OBSERVABLES[text].astype(complex)
    arr = np.asarray(json.loads(text))
    if arr.ndim == 3 and arr.shape[-1] == 2:
        return arr[..., 0] + 1j * arr[..., 1]
    return arr.astype(complex)


def cmd_simulate(args) -> int:
    if args.stochastic:
        w = np.asarray(json.loads(args.stochastic), dtype=float)
        p = json.loads(args.input) if args.input else np.full(w.shape[1], 1 / w.shape[1])
        out = classical_channel_io(w, p)
        _emit({"output_distribution": [float(x) for x in out]}, args)
        return EXIT_OK
    ch, _ = channel_from_args(args)
    if args.state == "mixed":
        rho = maximally_mixed(ch.d_in)
    elif args.state == "zero":
        rho = basis_projector(0, ch.d_in)
    else:
        rho = check_state(_matrix_arg(args.state), dim=ch.d_in)
    obs = _matrix_arg(args.observable) if args.observable else np.diag(np.eye(ch.d_out)[0]).astype(complex)
    val, herald = heralded_readout(chn.choi_of(ch), rho, obs)
    direct = float(np.trace(obs @ chn.apply(ch, rho)).real)
    _emit({"heralded_expectation": val, "herald_probability": herald, "direct_expectation": direct}, args)
    return EXIT_OK


# --- parser -----------------------------------------------------------------


def _channel_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--zoo", help="named channel family")
    p.add_argument("--spec", help="channel-spec JSON file")
    p.add_argument("--d", type=int, help="input dimension")
    p.add_argument("--p", type=float, help="family parameter p")
    p.add_argument("--gamma", type=float, action="append", help="damping rate (repeatable)")
    p.add_argument("--angle", type=float, action="append", help="qubit_extreme angle (give twice: a, b)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcapacity", description="Additive capacities of finite-dimensional quantum channels (log base 2).")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("capacity", help="evaluate one capacity")
    _channel_flags(p)
    p.add_argument("--which", default="quantum",
                   choices=["quantum", "classical", "private", "eao-classical", "eao-quantum", "coh-classical", "ea-classical"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--restarts", type=int, default=0)
    p.add_argument("--json", help="also write the report as JSON")
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("sweep", help="evaluate I(Phi) on a parameter grid, write CSV")
    p.add_argument("family", choices=sorted(SWEEPS))
    p.add_argument("--grid", type=int, default=101, help="points per axis")
    p.add_argument("--range", help="lo:hi for every axis")
    p.add_argument("--which", default="quantum")
    p.add_argument("--out", help="CSV path (stdout if omitted)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=4)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("threshold", help="parameter where I(Phi) crosses zero")
    p.add_argument("family", choices=sorted(THRESHOLD_FAMILIES))
    p.add_argument("--d", type=int)
    p.add_argument("--range", help="lo:hi bisection bracket")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--json")
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("audit", help="run the randomized invariant suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=50)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("classify", help="channel class flags")
    _channel_flags(p)
    p.add_argument("--json")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("simulate", help="Choi-state readout or classical-channel emulation")
    _channel_flags(p)
    p.add_argument("--state", default="zero", help="'zero', 'mixed' or a JSON matrix")
    p.add_argument("--observable", help="'Z', 'X', 'Y' or a JSON matrix")
    p.add_argument("--stochastic", help="JSON column-stochastic matrix w[out][in]")
    p.add_argument("--input", help="JSON input distribution for --stochastic")
    p.add_argument("--json")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (QCapacityError, ValueError, KeyError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
