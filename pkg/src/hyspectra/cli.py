"""Command-line surface.

Every subcommand is a thin shell over one library module: it parses
flags, runs the operation under the environment-configured budget, and
prints a deterministic rendering.  Identical flags and seed always give
byte-identical output.  Exit codes: 0 success, 2 usage error, 3 budget
refusal, 4 verification failure, 1 anything else; diagnostics go to
stderr with a stable "error[CODE]:" prefix.

The report-style subcommands additionally accept --plot PATH and render
a static figure next to the delimited output; figures are views of the
same data, never an extra data source.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from fractions import Fraction

import numpy as np

from .adjacency import Variant, build_from_rules, build_recursive, export_structure
from .budget import DEFAULT, Budget, BudgetError, ConvergenceError, from_env
from .chebpoly import AngleFraction, chebyshev_zeros, pell_identity_holds
from .eigenvectors import (
    INTERIOR,
    TOP,
    TOP_PRIME,
    eigenvector_gamma_prime,
    eigenvector_interior,
    eigenvector_top,
    residual,
    stationary_fractions,
    stationary_vector,
)
from .oracle import charpoly_dense, verify_lemma_recursions
from .spectrum import (
    characteristic_factors,
    devils_staircase,
    devils_staircase_left_limit,
    distribution_table,
    expand_characteristic,
    spectrum,
    staircase_jump,
    totient_sum,
    U_NEG_HALF,
)
from .states import MemoryState, all_states, apply_input_sequence
from .walks import (
    WalkConfig,
    empirical_stationary,
    power_iteration_stationary,
    simulate_absorbing,
)

CSV_VERSION = "hyspectra-csv v1"


class _UsageError(Exception):
    """Raised instead of argparse's SystemExit so main() owns the code."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # noqa: D102 - argparse hook
        raise _UsageError(message)


def _fmt(x: float) -> str:
    """Locale-independent float rendering, 17 significant digits."""
    return format(float(x), ".17g")


def _emit(text: str, args: argparse.Namespace) -> None:
    data = text if text.endswith("\n") else text + "\n"
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(data)
        if not args.quiet:
            print(f"wrote {out}", file=sys.stderr)
    else:
        sys.stdout.write(data)


def _note_plot(path: str, args: argparse.Namespace) -> None:
    if not args.quiet:
        print(f"wrote {path}", file=sys.stderr)


def _parse_state(text: str, n: int) -> MemoryState:
    state = MemoryState.from_string(text)
    if state.n != n:
        raise ValueError(f"state {text!r} has length {state.n}, expected --n {n}")
    return state


def _parse_inputs(text: str) -> list[int]:
    deltas = []
    for token in text.split(","):
        token = token.strip()
        if token in ("+1", "1"):
            deltas.append(1)
        elif token == "-1":
            deltas.append(-1)
        else:
            raise ValueError(f"input moves must be +1 or -1, got {token!r}")
    return deltas


def _product_label(product) -> str:
    """Symbolic rendering of a coefficient, e.g. '-u_2/(u_1·u_3)'."""
    if product.is_zero():
        return "0"
    sign = "-" if product.sign < 0 else ""
    num = "·".join(f"u_{i}" for i in product.num) or "1"
    if not product.den:
        return f"{sign}{num}"
    den = "·".join(f"u_{j}" for j in product.den)
    if len(product.den) > 1:
        den = f"({den})"
    return f"{sign}{num}/{den}"


# -- subcommand handlers -------------------------------------------------------


def _cmd_graph(args: argparse.Namespace, budget: Budget) -> tuple[str, int]:
    variant = Variant.parse(args.variant)
    n = args.n
    budget.check("matrix_n", n, "state enumeration")
    if args.inputs is not None:
        if args.state is None:
            raise ValueError("--inputs needs --state to start from")
        start = _parse_state(args.state, n)
        deltas = _parse_inputs(args.inputs)
        trajectory = apply_input_sequence(start, deltas, policy=args.policy)
        if args.format == "json":
            final = trajectory[-1]
            payload = {
                "n": n,
                "policy": args.policy,
                "start": start.as_string(),
                "inputs": deltas,
                "trajectory": [s.as_string() for s in trajectory],
                "final": {
                    "state": final.as_string(),
                    "input": final.input_value(),
                    "area": final.output_area(),
                },
            }
            return json.dumps(payload, indent=2), 0
        return "\n".join(s.as_string() for s in trajectory), 0
    if args.state is not None:
        state = _parse_state(args.state, n)
        succs = sorted(s.as_string() for s in state.successors(variant))
        if args.format == "json":
            payload = {
                "n": n,
                "variant": variant.value,
                "state": state.as_string(),
                "index": state.index,
                "input": state.input_value(),
                "area": state.output_area(),
                "successors": succs,
            }
            return json.dumps(payload, indent=2), 0
        lines = [
            f"state: {state.as_string()}",
            f"index: {state.index}",
            f"input: {state.input_value()}",
            f"area: {state.output_area()}",
            "successors: " + " ".join(succs),
        ]
        return "\n".join(lines), 0
    table = {
        s.as_string(): sorted(t.as_string() for t in s.successors(variant))
        for s in all_states(n)
    }
    if args.format == "json":
        return json.dumps({"n": n, "variant": variant.value, "successors": table}, indent=2), 0
    lines = [f"# n={n} variant={variant.value}"]
    lines += [f"{src}: " + " ".join(dsts) for src, dsts in table.items()]
    return "\n".join(lines), 0


def _cmd_matrix(args: argparse.Namespace, budget: Budget) -> tuple[str, int]:
    variant = Variant.parse(args.variant)
    matrix = build_recursive(args.n, variant, budget)
    if args.plot:
        from . import plots

        plots.save_matrix(matrix, args.plot)
        _note_plot(args.plot, args)
    if args.format == "json":
        payload = {
            "n": matrix.n,
            "variant": matrix.variant.value,
            "order": matrix.order,
            "nnz": matrix.nnz,
            "entries": [[r + 1, c + 1] for r, c in matrix.entries],
        }
        return json.dumps(payload, indent=2), 0
    return export_structure(matrix, format=args.layout), 0


def _cmd_charpoly(args: argparse.Namespace, budget: Budget) -> tuple[str, int]:
    variant = Variant.parse(args.variant)
    factored = characteristic_factors(args.n, variant)
    if args.factored:
        if args.format == "json":
            payload = {
                "n": factored.n,
                "variant": factored.variant.value,
                "factors": [
                    {
                        "kind": f.kind,
                        "index": f.index,
                        "multiplicity": f.multiplicity,
                        "degree": f.degree,
                        "coefficients": f.polynomial().coefficients_json(),
                    }
                    for f in factored.factors
                ],
            }
            return json.dumps(payload, indent=2), 0
        parts = []
        for f in factored.factors:
            base = f"Ũ_{f.index}" if f.kind == U_NEG_HALF else "(2 - λ)"
            parts.append(base if f.multiplicity == 1 else f"{base}^{f.multiplicity}")
        return " · ".join(parts), 0
    poly = expand_characteristic(factored, budget)
    if args.format == "json":
        payload = {
            "n": factored.n,
            "variant": factored.variant.value,
            "degree": poly.degree,
            "coefficients": poly.coefficients_json(),
        }
        return json.dumps(payload, indent=2), 0
    return poly.pretty("λ"), 0


def _spectrum_key(entry) -> tuple[int, int]:
    # the exact eigenvalue 2 of the self-loop variant is keyed 0/1
    return (0, 1) if entry.key is None else (entry.key.r, entry.key.q)


def _cmd_spectrum(args: argparse.Namespace, budget: Budget) -> tuple[str, int]:
    variant = Variant.parse(args.variant)
    table = spectrum(args.n, variant)
    if args.plot:
        from . import plots

        plots.save_spectrum(table, args.plot)
        _note_plot(args.plot, args)
    if args.format == "json":
        payload = {
            "n": table.n,
            "variant": table.variant.value,
            "entries": [
                {
                    "r": _spectrum_key(e)[0],
                    "q": _spectrum_key(e)[1],
                    "eigenvalue": e.eigenvalue(),
                    "multiplicity": e.multiplicity,
                }
                for e in table.entries
            ],
        }
        return json.dumps(payload, indent=2), 0
    if args.format == "csv":
        lines = [f"# {CSV_VERSION} spectrum: r,q,eigenvalue,multiplicity"]
        for e in table.entries:
            r, q = _spectrum_key(e)
            lines.append(f"{r},{q},{_fmt(e.eigenvalue())},{e.multiplicity}")
        return "\n".join(lines), 0
    lines = ["key eigenvalue multiplicity"]
    for e in table.entries:
        r, q = _spectrum_key(e)
        lines.append(f"{r}/{q} {_fmt(e.eigenvalue())} {e.multiplicity}")
    return "\n".join(lines), 0


def _cmd_dist(args: argparse.Namespace, budget: Budget) -> tuple[str, int]:
    variant = Variant.parse(args.variant)
    rows = distribution_table(
        args.n,
        variant,
        points=args.points,
        terms=args.terms,
        guard_denominator=args.guard_q,
        guard_radius=args.guard_radius,
    )
    if args.plot:
        from . import plots

        plots.save_distribution(rows, args.n, args.plot)
        _note_plot(args.plot, args)
    if args.format == "json":
        payload = {
            "n": args.n,
            "variant": variant.value,
            "points": args.points,
            "rows": [
                {
                    "x": row.x,
                    "f_n": float(row.f_n),
                    "f_limit": row.f_limit,
                    "abs_diff": row.diff,
                    "guarded": row.guarded,
                }
                for row in rows
            ],
        }
        return json.dumps(payload, indent=2), 0
    lines = [f"# {CSV_VERSION} dist: x,f_n,f_limit,abs_diff,guarded"]
    for row in rows:
        lines.append(
            f"{_fmt(row.x)},{_fmt(row.f_n)},{_fmt(row.f_limit)},"
            f"{_fmt(row.diff)},{int(row.guarded)}"
        )
    return "\n".join(lines), 0


def _parse_staircase_x(text: str) -> "Fraction | float":
    if "/" in text:
        return Fraction(text)
    try:
        return Fraction(int(text))
    except ValueError:
        return float(text)


def _cmd_staircase(args: argparse.Namespace, budget: Budget) -> tuple[str, int]:
    x = _parse_staircase_x(args.x)
    exact = isinstance(x, Fraction)
    mode = args.mode or ("jump-form" if exact else "floor-series")
    result = devils_staircase(x, mode=mode, terms=args.terms)
    if args.plot:
        from . import plots

        plots.save_staircase(args.plot, terms=args.terms)
        _note_plot(args.plot, args)

    payload: dict = {
        "x": str(x) if exact else x,
        "mode": mode,
        "value": str(result.value) if exact and mode == "jump-form" else float(result.value),
        "float": float(result.value),
        "error_bound": float(result.error_bound),
    }
    if exact:
        payload["jump"] = str(staircase_jump(x))
        payload["left_limit"] = str(devils_staircase_left_limit(x))
    if args.format == "json":
        return json.dumps(payload, indent=2), 0
    lines = [f"x = {payload['x']}", f"mode = {mode}"]
    if exact and mode == "jump-form":
        lines.append(f"value = {payload['value']}")
    lines.append(f"float = {_fmt(payload['float'])}")
    lines.append(f"error_bound = {_fmt(payload['error_bound'])}")
    if exact:
        lines.append(f"jump = {payload['jump']}")
        lines.append(f"left_limit = {payload['left_limit']}")
    return "\n".join(lines), 0


def _cmd_eigvec(args: argparse.Namespace, budget: Budget) -> tuple[str, int]:
    n = args.n
    if args.klass == INTERIOR:
        if args.ell is None:
            raise ValueError("--class interior needs --ell")
        root = AngleFraction(args.r, args.ell + 2)
        prefix = args.prefix if args.prefix is not None else ""
        vector = eigenvector_interior(n, args.ell, root, prefix, budget)
    elif args.klass == TOP:
        root = AngleFraction(args.r, n + 2)
        vector = eigenvector_top(n, root, budget)
    else:
        root = AngleFraction(args.r, n + 1)
        vector = eigenvector_gamma_prime(n, root, budget)
    payload = vector.to_json()
    if args.check:
        matrix = build_recursive(n, vector.variant, budget)
        payload["residual"] = residual(vector, matrix, vector.eigenvalue())
    if args.format == "text":
        lines = [
            f"n = {n}",
            f"class = {vector.class_label()}",
            f"eigenvalue = cos(π·{root}) = {_fmt(vector.eigenvalue())}",
        ]
        if args.check:
            lines.append(f"residual = {_fmt(payload['residual'])}")
        lines.append("state coefficient value")
        for state in all_states(n):
            product = vector.coefficient(state)
            lines.append(
                f"{state.as_string()} {_product_label(product)} "
                f"{_fmt(product.value(root))}"
            )
        return "\n".join(lines), 0
    return json.dumps(payload, indent=2), 0


def _cmd_stationary(args: argparse.Namespace, budget: Budget) -> tuple[str, int]:
    n = args.n
    method = args.method
    exact: "list[Fraction] | None" = None
    if method == "closed-form":
        exact = stationary_fractions(n)
        values = stationary_vector(n)
    elif method == "power":
        values = power_iteration_stationary(n, tol=args.tol, budget=budget)
    else:
        burn_in = args.burn_in if args.burn_in is not None else 10 * (1 << n)
        max_steps = args.max_steps if args.max_steps is not None else burn_in + 4096
        cfg = WalkConfig(
            n=n,
            variant=Variant.GAMMA_PRIME,
            seed=args.seed,
            max_steps=max_steps,
            replications=args.replications,
        )
        values = empirical_stationary(cfg, burn_in=burn_in)
    states = [s.as_string() for s in all_states(n)]
    if args.format == "json":
        payload: dict = {
            "n": n,
            "method": method,
            "probabilities": {s: float(v) for s, v in zip(states, values)},
        }
        if exact is not None:
            payload["exact"] = {s: str(w) for s, w in zip(states, exact)}
        if method == "power":
            payload["tol"] = args.tol
        if method == "empirical":
            payload["seed"] = args.seed
        return json.dumps(payload, indent=2), 0
    if args.format == "csv":
        lines = [f"# {CSV_VERSION} stationary: state,probability"]
        lines += [f"{s},{_fmt(v)}" for s, v in zip(states, values)]
        return "\n".join(lines), 0
    lines = []
    for idx, (s, v) in enumerate(zip(states, values)):
        suffix = f" {exact[idx]}" if exact is not None else ""
        lines.append(f"{s} {_fmt(v)}{suffix}")
    return "\n".join(lines), 0


def _cmd_simulate(args: argparse.Namespace, budget: Budget) -> tuple[str, int]:
    n = args.n
    cfg = WalkConfig(
        n=n,
        variant=Variant.GAMMA,
        seed=args.seed,
        max_steps=args.max_steps,
        replications=args.replications,
    )
    start = _parse_state(args.start, n) if args.start else MemoryState.from_index(0, n)
    samples = simulate_absorbing(cfg, start)
    summary = samples.summary()
    if args.plot:
        from . import plots

        plots.save_termination_histogram(
            samples.steps[~samples.censored], summary["censored_count"], cfg.seed, args.plot
        )
        _note_plot(args.plot, args)
    if args.format == "json":
        payload = {
            "n": n,
            "start": start.as_string(),
            "seed": cfg.seed,
            "max_steps": cfg.max_steps,
            "replications": cfg.replications,
            "summary": summary,
        }
        return json.dumps(payload, indent=2), 0
    if args.format == "csv":
        lines = [f"# {CSV_VERSION} simulate: replication,termination_step,censored"]
        for rep in range(cfg.replications):
            censored = bool(samples.censored[rep])
            step = "" if censored else str(int(samples.steps[rep]))
            lines.append(f"{rep},{step},{int(censored)}")
        return "\n".join(lines), 0
    lines = [f"start = {start.as_string()}"]
    for key in ("mean", "variance", "count", "censored_count", "seed"):
        value = summary[key]
        if isinstance(value, float):
            lines.append(f"{key} = {_fmt(value)}")
        else:
            lines.append(f"{key} = {'none' if value is None else value}")
    return "\n".join(lines), 0


# -- verification suites -------------------------------------------------------


Check = tuple[str, bool, str]


def _suite_structure(n_max: int, budget: Budget) -> list[Check]:
    checks: list[Check] = []
    for variant in (Variant.GAMMA, Variant.GAMMA_PRIME):
        bad = None
        for n in range(1, n_max + 1):
            if build_from_rules(n, variant, budget) != build_recursive(n, variant, budget):
                bad = n
                break
        detail = f"n=1..{n_max}" if bad is None else f"mismatch at n={bad}"
        checks.append((f"structure/rules-vs-recursive[{variant.value}]", bad is None, detail))
    a1 = build_recursive(1, Variant.GAMMA, budget).to_int_rows(budget)
    a2 = build_recursive(2, Variant.GAMMA, budget).to_int_rows(budget)
    fixtures_ok = a1 == [[0, 1], [1, 0]] and a2 == [
        [0, 1, 1, 0],
        [1, 0, 0, 0],
        [0, 0, 0, 1],
        [0, 1, 1, 0],
    ]
    checks.append(("structure/printed-fixtures", fixtures_ok, "level 1 and 2 matrices"))
    edges_ok = True
    for n in range(1, n_max + 1):
        plain = build_recursive(n, Variant.GAMMA, budget).nnz
        looped = build_recursive(n, Variant.GAMMA_PRIME, budget).nnz
        if plain != (1 << (n + 1)) - 2 or looped != (1 << (n + 1)):
            edges_ok = False
            break
    checks.append(("structure/edge-count", edges_ok, f"n=1..{n_max}"))
    return checks


def _suite_charpoly(n_max: int, budget: Budget) -> list[Check]:
    checks: list[Check] = []
    anchors = {
        1: (-1, 0, 1),
        2: (0, 0, -2, 0, 1),
        3: (0, 0, -1, 0, 4, 0, -4, 0, 1),
    }
    zero_level = charpoly_dense(build_recursive(0, Variant.GAMMA, budget), budget)
    checks.append(
        ("charpoly/anchor[n=0]", zero_level.coefficients == (0, -1), "det(A - xI) at level 0")
    )
    for n, coeffs in anchors.items():
        expanded = expand_characteristic(characteristic_factors(n, Variant.GAMMA), budget)
        checks.append((f"charpoly/anchor[n={n}]", expanded.coefficients == coeffs, "frozen"))
    top = min(n_max, 8)
    for variant in (Variant.GAMMA, Variant.GAMMA_PRIME):
        for n in range(1, top + 1):
            expanded = expand_characteristic(characteristic_factors(n, variant), budget)
            dense = charpoly_dense(build_recursive(n, variant, budget), budget)
            ok = expanded == dense
            checks.append(
                (f"charpoly/factored-vs-dense[{variant.value},n={n}]", ok, "exact")
            )
    return checks


def _suite_lemmas(k_max: int, budget: Budget) -> list[Check]:
    checks: list[Check] = []
    for report in verify_lemma_recursions(k_max, budget):
        ok = report["status"] == "pass"
        detail = report["witness"] if report["witness"] else "exact"
        checks.append((f"lemmas/{report['identity']}[k={report['k']}]", ok, detail))
    return checks


def _suite_pell(k_max: int) -> list[Check]:
    checks: list[Check] = []
    for family in ("u", "u-neg-half"):
        bad = next((k for k in range(k_max + 1) if not pell_identity_holds(k, family)), None)
        detail = f"k=0..{k_max}" if bad is None else f"fails at k={bad}"
        checks.append((f"pell/{family}", bad is None, detail))
    return checks


def _suite_staircase(seed: int, samples: int) -> list[Check]:
    rng = random.Random(seed)
    rationals = [
        Fraction(r, q) for q in range(2, 13) for r in range(1, q) if math.gcd(r, q) == 1
    ]
    agreement_ok = True
    jump_ok = True
    witness = ""
    for _ in range(samples):
        x = rng.choice(rationals)
        exact = devils_staircase(x, mode="jump-form")
        series = devils_staircase(x, mode="floor-series", terms=60)
        if abs(exact.value - series.value) > series.error_bound:
            agreement_ok = False
            witness = f"x={x}"
            break
        jump = exact.value - devils_staircase_left_limit(x)
        if jump != staircase_jump(x) or jump != Fraction(1, (1 << x.denominator) - 1):
            jump_ok = False
            witness = f"x={x}"
            break
    checks = [
        ("staircase/series-agreement", agreement_ok, witness or f"{samples} samples"),
        ("staircase/jump-size", jump_ok, witness or "1/(2^q - 1)"),
    ]
    gap = abs(totient_sum(40) - 1)
    checks.append(("staircase/totient-sum", gap <= Fraction(1, 10**10), f"gap {float(gap):.3e}"))
    return checks


def _interior_roots(ell: int) -> list[AngleFraction]:
    return [f for f in chebyshev_zeros(ell + 1) if f.q == ell + 2]


def _suite_eigenvectors(n_max: int, budget: Budget) -> list[Check]:
    checks: list[Check] = []
    fixture = eigenvector_interior(2, 0, AngleFraction(1, 2), "", budget)
    arr = fixture.to_array()
    checks.append(
        ("eigenvectors/fixed-table", list(arr) == [0.0, -1.0, 1.0, 0.0], "n=2, ell=0")
    )
    for n in range(2, min(n_max, 8) + 1):
        plain = build_recursive(n, Variant.GAMMA, budget)
        looped = build_recursive(n, Variant.GAMMA_PRIME, budget)
        worst = 0.0
        for ell in range(0, n - 1):
            for root in _interior_roots(ell):
                for prefix_value in range(1 << (n - ell - 2)):
                    prefix = format(prefix_value, f"0{n - ell - 2}b") if n - ell - 2 else ""
                    vector = eigenvector_interior(n, ell, root, prefix, budget)
                    worst = max(worst, residual(vector, plain, vector.eigenvalue()))
        for root in _interior_roots(n):
            vector = eigenvector_top(n, root, budget)
            worst = max(worst, residual(vector, plain, vector.eigenvalue()))
        for root in _interior_roots(n - 1):
            vector = eigenvector_gamma_prime(n, root, budget)
            worst = max(worst, residual(vector, looped, vector.eigenvalue()))
        checks.append(
            (f"eigenvectors/residuals[n={n}]", worst <= 1e-10, f"worst {worst:.3e}")
        )
    return checks


def _suite_stationary(n_max: int, budget: Budget) -> list[Check]:
    checks: list[Check] = []
    fixture = stationary_fractions(2)
    expected = [Fraction(1, 3), Fraction(1, 6), Fraction(1, 6), Fraction(1, 3)]
    checks.append(("stationary/fixture[n=2]", fixture == expected, "1/3 1/6 1/6 1/3"))
    for n in range(1, min(n_max, 12) + 1):
        closed = stationary_vector(n)
        iterated = power_iteration_stationary(n, tol=1e-15, budget=budget)
        gap = float(np.max(np.abs(closed - iterated)))
        checks.append((f"stationary/closed-vs-power[n={n}]", gap <= 1e-12, f"gap {gap:.3e}"))
    return checks


def _cmd_verify(args: argparse.Namespace, budget: Budget) -> tuple[str, int]:
    suites = {
        "structure": lambda: _suite_structure(args.n_max, budget),
        "charpoly": lambda: _suite_charpoly(args.n_max, budget),
        "lemmas": lambda: _suite_lemmas(args.k_max, budget),
        "pell": lambda: _suite_pell(50),
        "staircase": lambda: _suite_staircase(args.seed, args.samples),
        "eigenvectors": lambda: _suite_eigenvectors(args.n_max, budget),
        "stationary": lambda: _suite_stationary(args.n_max, budget),
    }
    selected = list(suites) if args.suite == "all" else [args.suite]
    checks: list[Check] = []
    for name in selected:
        checks.extend(suites[name]())
    lines = []
    failures = 0
    for name, ok, detail in checks:
        word = "PASS" if ok else "FAIL"
        failures += 0 if ok else 1
        lines.append(f"{word} {name}: {detail}")
    lines.append(
        f"passed {len(checks) - failures}/{len(checks)} checks"
        if failures == 0
        else f"FAILED {failures}/{len(checks)} checks"
    )
    if failures:
        print(f"error[verify]: {failures} of {len(checks)} checks failed", file=sys.stderr)
        return "\n".join(lines), 4
    return "\n".join(lines), 0


# -- parser --------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(
        prog="hyspectra",
        description=(
            "Exact spectra, eigenvectors, eigenvalue distribution, and random "
            "walks of the hierarchical memory-state transition graph."
        ),
        epilog="The self-loop variant's exact eigenvalue 2 is keyed r=0, q=1 in tables.",
    )
    from . import __version__

    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True, metavar="SUBCOMMAND")

    def common(p: argparse.ArgumentParser, formats: "tuple[str, ...] | None") -> None:
        p.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")
        p.add_argument("--quiet", action="store_true", help="suppress notes on stderr")
        if formats:
            p.add_argument(
                "--format", choices=formats, default=formats[0], help="output format"
            )

    p = sub.add_parser("graph", help="transition rules: edges, successors, trajectories")
    p.add_argument("--n", type=int, required=True, help="memory length (number of bits)")
    p.add_argument("--variant", choices=("gamma", "gamma-prime"), default="gamma")
    p.add_argument("--state", help="bit string; restrict output to this state")
    p.add_argument("--inputs", help='comma-separated moves, e.g. "+1,-1,+1"')
    p.add_argument("--policy", choices=("strict", "clip"), default="strict")
    common(p, ("text", "json"))
    p.set_defaults(handler=_cmd_graph)

    p = sub.add_parser("matrix", help="adjacency matrix structure (column = source)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--variant", choices=("gamma", "gamma-prime"), default="gamma")
    p.add_argument(
        "--layout",
        choices=("coordinate-list", "edge-list"),
        default="coordinate-list",
        help="text rendering: 1-based coordinates or state-string edges",
    )
    p.add_argument("--plot", metavar="PATH", help="render the sparsity pattern to PATH")
    common(p, ("text", "json"))
    p.set_defaults(handler=_cmd_matrix)

    p = sub.add_parser("charpoly", help="exact characteristic polynomial")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--variant", choices=("gamma", "gamma-prime"), default="gamma")
    p.add_argument("--factored", action="store_true", help="keep the closed-form factors")
    common(p, ("text", "json"))
    p.set_defaults(handler=_cmd_charpoly)

    p = sub.add_parser("spectrum", help="exact eigenvalue table with multiplicities")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--variant", choices=("gamma", "gamma-prime"), default="gamma")
    p.add_argument("--plot", metavar="PATH", help="render multiplicity stems to PATH")
    common(p, ("csv", "json", "text"))
    p.set_defaults(handler=_cmd_spectrum)

    p = sub.add_parser("dist", help="finite vs limiting eigenvalue distribution table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--variant", choices=("gamma", "gamma-prime"), default="gamma")
    p.add_argument("--points", type=int, default=512, help="grid size over (-1, 1)")
    p.add_argument("--terms", type=int, default=60, help="series terms for the limit")
    p.add_argument("--guard-q", type=int, default=12, help="max denominator guarded")
    p.add_argument("--guard-radius", type=float, default=1e-3)
    p.add_argument("--plot", metavar="PATH", help="render the comparison to PATH")
    common(p, ("csv", "json"))
    p.set_defaults(handler=_cmd_dist)

    p = sub.add_parser("staircase", help="the binary Devil's staircase f")
    p.add_argument("--x", required=True, help='point: "r/q" exact or a float')
    p.add_argument(
        "--mode",
        choices=("jump-form", "floor-series"),
        help="default: jump-form for rationals, floor-series for floats",
    )
    p.add_argument("--terms", type=int, default=60)
    p.add_argument("--plot", metavar="PATH", help="render f on [0, 1] to PATH")
    common(p, ("text", "json"))
    p.set_defaults(handler=_cmd_staircase)

    p = sub.add_parser("eigvec", help="closed-form eigenvector for an exact eigenvalue")
    p.add_argument("--n", type=int, required=True)
    p.add_argument(
        "--class",
        dest="klass",
        choices=(INTERIOR, TOP, TOP_PRIME),
        required=True,
        help="eigenvector family",
    )
    p.add_argument("--r", type=int, required=True, help="numerator of the angle fraction")
    p.add_argument("--ell", type=int, help="interior class: eigenvalue denominator is ell+2")
    p.add_argument("--prefix", help="interior class: leading bits, length n-ell-2")
    p.add_argument("--check", action="store_true", help="include the numeric residual")
    common(p, ("json", "text"))
    p.set_defaults(handler=_cmd_eigvec)

    p = sub.add_parser("stationary", help="stationary distribution of the self-loop chain")
    p.add_argument("--n", type=int, required=True)
    p.add_argument(
        "--method", choices=("closed-form", "power", "empirical"), default="closed-form"
    )
    p.add_argument("--tol", type=float, default=1e-13, help="power iteration stop")
    p.add_argument("--seed", type=int, default=0, help="empirical method only")
    p.add_argument("--replications", type=int, default=4)
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--burn-in", type=int, default=None)
    common(p, ("csv", "json", "text"))
    p.set_defaults(handler=_cmd_stationary)

    p = sub.add_parser("simulate", help="absorbing random walk termination times")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--start", help="bit string start state; default all zeros")
    p.add_argument("--replications", type=int, default=1000)
    p.add_argument("--max-steps", type=int, default=512)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--plot", metavar="PATH", help="render the step histogram to PATH")
    common(p, ("csv", "json", "text"))
    p.set_defaults(handler=_cmd_simulate)

    p = sub.add_parser("verify", help="self-checks; exit 4 if any check fails")
    p.add_argument(
        "--suite",
        choices=(
            "all",
            "structure",
            "charpoly",
            "lemmas",
            "pell",
            "staircase",
            "eigenvectors",
            "stationary",
        ),
        default="all",
    )
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--k-max", type=int, default=5)
    p.add_argument("--seed", type=int, default=20240801)
    p.add_argument("--samples", type=int, default=100, help="staircase sample count")
    common(p, None)
    p.set_defaults(handler=_cmd_verify)

    return parser


def main(argv: "list[str] | None" = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error[usage]: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    try:
        budget = from_env(DEFAULT)
        text, code = args.handler(args, budget)
        _emit(text, args)
        return code
    except _UsageError as exc:
        print(f"error[usage]: {exc}", file=sys.stderr)
        return 2
    except (ValueError, TypeError) as exc:
        print(f"error[usage]: {exc}", file=sys.stderr)
        return 2
    except BudgetError as exc:
        print(f"error[budget]: {exc}", file=sys.stderr)
        return 3
    except ConvergenceError as exc:
        print(f"error[runtime]: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error[runtime]: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
