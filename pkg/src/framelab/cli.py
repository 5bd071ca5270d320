"""Command-line surface: gen | analyze | certify | sweep.

stdout carries machine-readable output (JSON, CSV); human-readable
diagnostics go to stderr and are silenced by --quiet. Exit codes:
0 success, 2 bad parameters or unparsable/incompatible inputs,
3 the analyzed system is not a frame, 4 a certificate bracketing
violation (a theorem contradiction, i.e. a bug).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .certificates import (
    CERTIFICATES,
    PerturbationContext,
    implication_chain,
)
from .errors import FramelabError, NotAFrame, TheoremContradiction
from .frames import canonical_dual, frame_bounds
from .generators import (
    PerturbationSpec,
    gen_exp_localized,
    gen_gabor,
    gen_harmonic,
    gen_onb,
    gen_union_onb,
    perturb,
)
from .hp import INF
from .localization import SchurWeight, check_dual_localization, decay_profile, gramian, schur_norm
from .serialize import (
    certificate_to_json,
    read_frame,
    report_document,
    write_frame,
)

EXIT_OK = 0
EXIT_BAD_PARAMS = 2
EXIT_NOT_A_FRAME = 3
EXIT_BRACKETING = 4

CERT_CHOICES = ("christensen", "mixed", "cc", "schur", "atomic", "all")


def _info(args, msg):
    if not args.quiet:
        print(msg, file=sys.stderr)


def _default_seed() -> int:
    return int(os.environ.get("FRAMELAB_SEED", "0"))


def _parse_p_list(text: str):
    out = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        out.append(INF if token == "inf" else float(token))
    if not out:
        raise ValueError("empty p list")
    return out


def cmd_gen(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    if args.family == "onb":
        frame = gen_onb(args.dim)
    elif args.family == "union":
        frame = gen_union_onb(args.dim, args.copies)
    elif args.family == "harmonic":
        if args.n is None:
            raise ValueError("harmonic needs --n")
        frame = gen_harmonic(args.dim, args.n)
    elif args.family == "gabor":
        frame = gen_gabor(args.dim, args.a, args.b)
    else:  # exp_localized
        if args.n is None:
            raise ValueError("exp_localized needs --n")
        frame = gen_exp_localized(args.dim, args.n, args.decay, seed)
    write_frame(frame, args.out)
    _info(args, f"wrote {frame.size} vectors of dimension {frame.dim} to {args.out}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    frame = read_frame(args.frame)
    try:
        bounds = frame_bounds(frame)
    except NotAFrame as exc:
        print(f"not a frame: {exc}", file=sys.stderr)
        return EXIT_NOT_A_FRAME
    self_loc = {
        f"s{s:g}": schur_norm(gramian(frame), SchurWeight(float(s)), frame.geometry)
        for s in (0, 1, 2)
    }
    dual_loc = check_dual_localization(frame, SchurWeight(0.0), frame.geometry)
    payload = {
        "analysis": {
            "dim": frame.dim,
            "size": frame.size,
            "A": bounds.lower,
            "B": bounds.upper,
            "condition": bounds.condition,
            "self_localization": self_loc,
            "dual_localization": {
                "frame_norm": dual_loc.frame_norm,
                "dual_norm": dual_loc.dual_norm,
            },
        }
    }
    doc = report_document(payload, {"frame": args.frame})
    text = json.dumps(doc, indent=1)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    print(text)
    if args.figures:
        from .plots import decay_profile_figure

        os.makedirs(args.figures, exist_ok=True)
        path = os.path.join(args.figures, "decay_profile.png")
        decay_profile_figure(
            decay_profile(gramian(frame), frame.geometry), path,
            title=frame.label or "Gramian decay profile",
        )
        _info(args, f"wrote {path}")
    _info(args, f"A={bounds.lower:.6g} B={bounds.upper:.6g} "
                f"condition={bounds.condition:.6g}")
    return EXIT_OK


def _build_context(f_path, e_path, g_path) -> PerturbationContext:
    f = read_frame(f_path)
    e = read_frame(e_path)
    g = read_frame(g_path) if g_path else f
    return PerturbationContext(
        reference=f,
        perturbed=e,
        localization_pair=canonical_dual(g),
        geometry=f.geometry,
    )


def _run_certificate(name, ctx, args, seed):
    if name == "christensen":
        return CERTIFICATES["christensen"](ctx)
    if name == "mixed":
        return CERTIFICATES["mixed"](ctx)
    if name == "cc":
        lam = getattr(args, "lam", None)
        mu = getattr(args, "mu", None)
        return CERTIFICATES["cc"](ctx, lam=lam, mu=mu, seed=seed)
    if name == "schur":
        return CERTIFICATES["schur"](ctx)
    p_list = _parse_p_list(getattr(args, "p", None) or "1,2,inf")
    return CERTIFICATES["atomic"](ctx, p_list=p_list, seed=seed)


def cmd_certify(args) -> int:
    ctx = _build_context(args.reference, args.perturbed, args.localization)
    seed = args.seed if args.seed is not None else _default_seed()
    names = [c for c in CERT_CHOICES[:-1]] if args.cert == "all" else [args.cert]
    reports = [_run_certificate(name, ctx, args, seed) for name in names]
    payload = {"certificates": [certificate_to_json(r) for r in reports]}
    if args.eps is not None:
        chain = implication_chain(ctx, args.eps, seed=seed)
        payload["implication_chain"] = {
            "eps": chain.eps,
            "q_i": chain.q_i,
            "q_ii": chain.q_ii,
            "q_iii": chain.q_iii,
            "gamma": chain.gamma,
            "i_holds": chain.i_holds,
            "ii_holds": chain.ii_holds,
            "implication_i_ii_ok": chain.implication_i_ii_ok,
            "implication_ii_iii_ok": chain.implication_ii_iii_ok,
            "sampled_iii_ok": chain.sampled_iii_ok,
        }
    inputs = {"reference": args.reference, "perturbed": args.perturbed}
    if args.localization:
        inputs["localization"] = args.localization
    doc = report_document(payload, inputs)
    text = json.dumps(doc, indent=1)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    print(text)
    for r in reports:
        _info(args, f"{r.certificate_id}: hypothesis_holds={r.hypothesis_holds} "
                    f"bracketing_ok={r.bracketing_ok}")
    if any(r.hypothesis_holds and not r.bracketing_ok for r in reports):
        print("bracketing violation: theorem contradiction (bug)", file=sys.stderr)
        return EXIT_BRACKETING
    return EXIT_OK


SWEEP_CERTS = ("christensen", "mixed", "cc", "schur")
SWEEP_COLUMNS = ("magnitude", "seed", "cert", "hypothesis_holds",
                 "predicted_A", "actual_A", "predicted_B", "actual_B",
                 "bracketing_ok")


def cmd_sweep(args) -> int:
    f = read_frame(args.base)
    g = read_frame(args.localization) if args.localization else f
    pair = canonical_dual(g)
    magnitudes = [float(t) for t in args.magnitudes.split(",") if t.strip()]
    base_seed = args.seed if args.seed is not None else _default_seed()
    rows = []
    violation = False
    for magnitude in magnitudes:
        for seed_index in range(args.seeds):
            seed = base_seed + seed_index
            spec = PerturbationSpec(kind=args.kind, magnitude=magnitude, seed=seed)
            e = perturb(f, spec)
            ctx = PerturbationContext(
                reference=f, perturbed=e, localization_pair=pair,
                geometry=f.geometry,
            )
            for cert in SWEEP_CERTS:
                report = _run_certificate(cert, ctx, args, seed)
                row = {
                    "magnitude": magnitude,
                    "seed": seed,
                    "cert": report.certificate_id,
                    "hypothesis_holds": report.hypothesis_holds,
                    "predicted_A": (report.predicted_bounds.lower
                                    if report.predicted_bounds else ""),
                    "predicted_B": (report.predicted_bounds.upper
                                    if report.predicted_bounds else ""),
                    "actual_A": (report.actual_bounds.lower
                                 if report.actual_bounds else ""),
                    "actual_B": (report.actual_bounds.upper
                                 if report.actual_bounds else ""),
                    "bracketing_ok": report.bracketing_ok,
                }
                rows.append(row)
                if report.hypothesis_holds and not report.bracketing_ok:
                    violation = True
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: repr(v) if isinstance(v, float) else v
                         for k, v in row.items()})
    text = buf.getvalue()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.figures:
        from .plots import sweep_figures

        stem = (os.path.splitext(os.path.basename(args.out))[0]
                if args.out else "sweep")
        written = sweep_figures(rows, args.figures, stem=stem)
        for path in written:
            _info(args, f"wrote {path}")
    if violation:
        print("bracketing violation: theorem contradiction (bug)", file=sys.stderr)
        return EXIT_BRACKETING
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="framelab",
        description="Finite-dimensional frame analysis and perturbation "
                    "certificates.",
    )
    parser.add_argument("--quiet", action="store_true",
                        help="suppress human-readable diagnostics on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a frame file")
    p_gen.add_argument("family",
                       choices=("onb", "union", "harmonic", "gabor",
                                "exp_localized"))
    p_gen.add_argument("--dim", type=int, required=True)
    p_gen.add_argument("--n", type=int, help="number of vectors (harmonic, "
                                             "exp_localized)")
    p_gen.add_argument("--a", type=int, default=1, help="gabor time step")
    p_gen.add_argument("--b", type=int, default=1, help="gabor frequency step")
    p_gen.add_argument("--copies", type=int, default=2,
                       help="number of bases for the union family")
    p_gen.add_argument("--decay", type=float, default=0.5)
    p_gen.add_argument("--seed", type=int)
    p_gen.add_argument("--out", required=True)

    p_an = sub.add_parser("analyze", help="frame bounds and localization")
    p_an.add_argument("frame")
    p_an.add_argument("--out", help="also write the JSON report here")
    p_an.add_argument("--figures", help="directory for rendered figures")

    p_cert = sub.add_parser("certify", help="run perturbation certificates")
    p_cert.add_argument("reference", help="reference frame file (F)")
    p_cert.add_argument("perturbed", help="perturbed system file (E)")
    p_cert.add_argument("localization", nargs="?",
                        help="localization reference file (G); defaults to F")
    p_cert.add_argument("--cert", choices=CERT_CHOICES, default="all")
    p_cert.add_argument("--p", help="comma list of exponents for the atomic "
                                    "certificate, e.g. 1,2,inf")
    p_cert.add_argument("--eps", type=float,
                        help="also evaluate the implication chain at this eps")
    p_cert.add_argument("--lambda", dest="lam", type=float)
    p_cert.add_argument("--mu", type=float)
    p_cert.add_argument("--seed", type=int)
    p_cert.add_argument("--out", help="also write the JSON report here")

    p_sweep = sub.add_parser("sweep", help="perturbation grid, CSV output")
    p_sweep.add_argument("base", help="base frame file (F)")
    p_sweep.add_argument("localization", nargs="?",
                         help="localization reference file (G); defaults to F")
    p_sweep.add_argument("--kind", required=True,
                         choices=("additive_noise", "lattice_jitter",
                                  "quantize", "dual_truncate"))
    p_sweep.add_argument("--magnitudes", required=True,
                         help="comma list of perturbation magnitudes")
    p_sweep.add_argument("--seeds", type=int, default=1,
                         help="number of seeds per magnitude")
    p_sweep.add_argument("--seed", type=int, help="base seed")
    p_sweep.add_argument("--out", help="CSV output path (default stdout)")
    p_sweep.add_argument("--figures",
                         help="directory for figures rendered alongside the CSV")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "gen": cmd_gen,
        "analyze": cmd_analyze,
        "certify": cmd_certify,
        "sweep": cmd_sweep,
    }
    try:
        return handlers[args.command](args)
    except TheoremContradiction as exc:
        print(f"theorem contradiction: {exc}", file=sys.stderr)
        return EXIT_BRACKETING
    except (FramelabError, ValueError, OSError, KeyError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_PARAMS


if __name__ == "__main__":
    sys.exit(main())
