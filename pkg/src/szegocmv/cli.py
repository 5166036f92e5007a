"""Command-line front end.

Exit codes: 0 success, 1 domain or usage error (including I/O), 2 numerical
failure.  With ``--out-dir`` every command writes its outputs together with
the resolved ``config.json``.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import io
from .cmv import band_structure, discriminant_zeros
from .cocycle import lyapunov_estimate
from .core import VerblunskyWord, gap_arc
from .dos import dos_from_zeros, gap_labels
from .ensemble import SingleSiteMeasure, convergence_experiment
from .errors import DomainError, NumericalFailureError
from .ising import IsingChain, leeyang_zeros, read_couplings, zero_free_arc


class UsageError(DomainError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _fmt(theta: float) -> str:
    return f"{theta:.6f}"


def _word(text: str) -> VerblunskyWord:
    return VerblunskyWord.parse(text)


def _schedule(text: str) -> list:
    """``l:r,l:r,...``; a bare ``n`` means a window of n sites (l = n//2)."""
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            if ":" in item:
                l, r = item.split(":")
                out.append((int(l), int(r)))
            else:
                n = int(item)
                if n < 1:
                    raise ValueError
                out.append((n // 2, n - n // 2 - 1))
        except ValueError:
            raise DomainError(f"bad schedule entry {item!r}") from None
    if not out:
        raise DomainError("empty schedule")
    return out


def _config(args) -> dict:
    skip = {"func", "out_dir"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _finish(args, files: dict) -> None:
    """Write ``files`` (name -> text) and config.json into --out-dir."""
    if args.out_dir is None:
        return
    out = Path(args.out_dir)
    for name, text in files.items():
        io.atomic_write(out / name, text)
    io.atomic_write(out / "config.json", io.dumps_json(_config(args)))


def cmd_gap(args) -> None:
    arc = gap_arc(args.alpha)
    text = "()" if arc.is_empty() else "(%s, %s)" % tuple(_fmt(t) for t in arc.arcs[0])
    print(text)
    _finish(args, {"gap.json": io.dumps_json({"arc": arc.to_list(), "alpha": args.alpha})})


def cmd_disc_zeros(args) -> None:
    zs = discriminant_zeros(_word(args.word), method=args.method)
    text = io.csv_text(zs.records())
    sys.stdout.write(text)
    _finish(args, {
        "zeros.csv": text,
        "zeros.svg": io.svg_circle_text([zs], [], ["zeros"]),
    })


def _band_report(bs) -> dict:
    return {
        "spectrum": bs.spectrum.to_list(),
        "gaps": [{"start": g.start, "end": g.end, "closed": g.closed} for g in bs.gaps],
        "zeros": bs.zeros.expanded().tolist(),
    }


def cmd_spectrum(args) -> None:
    bs = band_structure(_word(args.word), grid_size=args.grid)
    for s, e in bs.spectrum.arcs:
        print(f"[{_fmt(s)}, {_fmt(e)}]")
    _finish(args, {
        "spectrum.json": io.dumps_json(_band_report(bs)),
        "spectrum.svg": io.svg_circle_text([bs.zeros], [bs.spectrum], ["spectrum", "zeros"]),
    })


def cmd_random_approx(args) -> None:
    if (args.measure is None) == (args.word is None):
        raise UsageError("random-approx: give exactly one of --measure or --word")
    source = SingleSiteMeasure.parse(args.measure) if args.measure else _word(args.word)
    records = convergence_experiment(source, _schedule(args.schedule), seed=args.seed)
    for rec in records:
        print(f"k={rec['k']} l={rec['l']} r={rec['r']} zeros={rec['zero_count']} "
              f"dist_H={rec['distance']:.6f}")
    _finish(args, {"convergence.json": io.dumps_json({"records": records})})


def cmd_ising_zeros(args) -> None:
    chain = IsingChain(tuple(read_couplings(args.couplings)), args.tau, args.k_B)
    zs = leeyang_zeros(chain, method=args.method)
    text = io.csv_text(zs.records())
    sys.stdout.write(text)
    arc = zero_free_arc(chain)
    _finish(args, {
        "zeros.csv": text,
        "zeros.svg": io.svg_circle_text([zs], [arc], ["zero-free arc", "Lee-Yang zeros"]),
    })


def cmd_lyapunov(args) -> None:
    measure = SingleSiteMeasure.parse(args.measure)
    z = args.radius * np.exp(1j * args.theta)
    est = lyapunov_estimate(measure, z, args.n, args.trials, args.seed)
    print(f"{est.value:.6f} +- {est.std_error:.6f}")
    _finish(args, {"lyapunov.json": io.dumps_json(est._asdict())})


def cmd_gaplabels(args) -> None:
    word = _word(args.word)
    bs = band_structure(word)
    dos = dos_from_zeros([discriminant_zeros(word.repeated(m)) for m in (1, args.repeats)])
    report = gap_labels(bs, dos)
    for g, label in report.gaps:
        print(f"({_fmt(g.start)}, {_fmt(g.end)}) label={label:.6f}")
    text = io.dumps_json(report.to_dict())
    _finish(args, {"gaplabels.json": text})


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="szegocmv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--out-dir", default=None, help="write outputs and config.json here")
        p.set_defaults(func=func)
        return p

    p = add("gap", cmd_gap, "zero-free arc R_alpha")
    p.add_argument("--alpha", type=float, required=True)

    p = add("disc-zeros", cmd_disc_zeros, "zeros of the periodic discriminant (CSV)")
    p.add_argument("--word", required=True, help='comma separated, e.g. "0.6,0.9i"')
    p.add_argument("--method", choices=("auto", "companion", "phase"), default="auto")

    p = add("spectrum", cmd_spectrum, "band structure of a periodic word")
    p.add_argument("--word", required=True)
    p.add_argument("--grid", type=int, default=None)

    p = add("random-approx", cmd_random_approx, "window approximants vs limiting spectrum")
    p.add_argument("--measure", default=None, help='"uniform:a,b" or "atoms:v1,v2"')
    p.add_argument("--word", default=None, help="periodic unit cell instead of a measure")
    p.add_argument("--schedule", required=True, help='"l:r,..." or window sizes "n,..."')
    p.add_argument("--seed", type=int, default=0)

    p = add("ising-zeros", cmd_ising_zeros, "Lee-Yang zeros of a coupling file (CSV)")
    p.add_argument("--couplings", required=True, help="file with one J per line")
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--k-B", dest="k_B", type=float, default=1.0)
    p.add_argument("--method", choices=("auto", "companion", "phase"), default="auto")

    p = add("lyapunov", cmd_lyapunov, "Monte Carlo Lyapunov exponent")
    p.add_argument("--measure", required=True)
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)

    p = add("gaplabels", cmd_gaplabels, "gap labels from the density of states")
    p.add_argument("--word", required=True)
    p.add_argument("--repeats", type=int, default=50)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        args.func(args)
    except NumericalFailureError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except (DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
