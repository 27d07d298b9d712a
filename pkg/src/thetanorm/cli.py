"""Command-line front end.

Exit codes: 0 when every check passes, 1 on a verification failure, 2 on a
usage or input error. Certificates are JSON with sorted keys; rationals are
"p/q" strings.
"""

from __future__ import annotations

import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction

import click

from .circle_core import Configuration, CyclicArrangement, MalformedRanks
from .config_space import canonicalize, counts, forced_zero, lemma7_applies, orbits, type_space
from .cochains import frac_str

__all__ = ["ParseError", "parse_config", "InvariantsReport", "invariants", "run_suite", "main"]


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, ch: str):
        self.skip()
        if self.pos >= len(self.text) or self.text[self.pos].upper() != ch:
            got = self.text[self.pos] if self.pos < len(self.text) else "end of input"
            raise ParseError(f"expected {ch!r}, got {got!r}", self.pos)
        self.pos += 1

    def number(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError("expected a rank", start)
        return int(self.text[start:self.pos])

    def ranks(self) -> tuple[int, ...]:
        self.expect("[")
        out = [self.number()]
        while True:
            self.skip()
            if self.pos < len(self.text) and self.text[self.pos] == ",":
                self.pos += 1
                out.append(self.number())
            else:
                break
        self.expect("]")
        return tuple(out)

    def end(self):
        self.skip()
        if self.pos != len(self.text):
            raise ParseError("trailing input", self.pos)


def parse_config(text: str) -> Configuration:
    """Parse ``X=[...];Y=[...]`` (whitespace-insensitive) into a canonical Configuration."""
    p = _Parser(text)
    p.expect("X")
    p.expect("=")
    xs = p.ranks()
    p.expect(";")
    p.expect("Y")
    p.expect("=")
    y_at = p.pos
    ys = p.ranks()
    p.end()
    if len(xs) != len(ys):
        raise ParseError(f"X has {len(xs)} ranks but Y has {len(ys)}", y_at)
    return canonicalize(Configuration(CyclicArrangement(xs), CyclicArrangement(ys)))


@dataclass(frozen=True)
class InvariantsReport:
    g: int
    h: int

    @property
    def hyperbolic(self) -> bool:
        return self.g >= 2 and self.h >= 2

    @property
    def euler(self) -> int:
        return (2 - 2 * self.g) * (2 - 2 * self.h)

    @staticmethod
    def surface_norm(genus: int) -> int:
        return max(0, 4 * (genus - 1))

    @property
    def simplicial_volume(self) -> int:
        return 24 * (self.g - 1) * (self.h - 1) if self.hyperbolic else 0

    @property
    def volume_pi2(self) -> int | None:
        return 16 * (self.g - 1) * (self.h - 1) if self.hyperbolic else None

    @property
    def milnor_wood(self) -> Fraction | None:
        return Fraction(3, 8) * self.euler if self.hyperbolic else None

    @property
    def bracket(self) -> tuple[int, int]:
        prod = self.surface_norm(self.g) * self.surface_norm(self.h)
        return prod, math.comb(4, 2) * prod

    def checks(self) -> dict:
        sv = self.simplicial_volume
        lo, hi = self.bracket
        prod = self.surface_norm(self.g) * self.surface_norm(self.h)
        out = {
            "product_formula": Fraction(sv) == Fraction(3, 2) * prod,
            "within_bracket": lo <= sv <= hi,
        }
        if self.hyperbolic:
            out["six_euler"] = sv == 6 * self.euler
            out["volume_proportionality"] = Fraction(sv) == Fraction(3, 2) * self.volume_pi2
        return out

    def to_json_obj(self) -> dict:
        lo, hi = self.bracket
        vol = self.volume_pi2
        return {
            "genus": [self.g, self.h],
            "euler_characteristic": self.euler,
            "simplicial_volume": self.simplicial_volume,
            "surface_norms": [self.surface_norm(self.g), self.surface_norm(self.h)],
            "volume": None if vol is None else {"pi2_coefficient": vol,
                                                "float": vol * math.pi ** 2},
            "milnor_wood_bound": None if self.milnor_wood is None else frac_str(self.milnor_wood),
            "product_bracket": [lo, hi],
            "checks": self.checks(),
        }


def invariants(g: int, h: int) -> InvariantsReport:
    if g < 0 or h < 0:
        raise ValueError("genera must be non-negative")
    return InvariantsReport(g, h)


def _emit(obj, out=None):
    text = json.dumps(obj, indent=2, sort_keys=True)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    click.echo(text)


def _config_arg(ctx, param, value):
    if value is None:
        return None
    try:
        return parse_config(value)
    except (ParseError, MalformedRanks) as e:
        raise click.BadParameter(str(e), ctx=ctx, param=param)


def run_suite(name: str, out=None, fault: int | None = None, **opts) -> int:
    """Run a named suite, print its JSON report, return the exit code."""
    from . import suites, theta

    if name != "all" and name not in suites.RUNNERS:
        click.echo(f"unknown suite {name!r}", err=True)
        return 2
    if fault is not None:
        with theta.inject_fault(fault):
            report = suites.run(name, **opts)
    else:
        report = suites.run(name, **opts)
    _emit(report, out)
    return 0 if report["ok"] else 1


@click.group()
@click.option("--jobs", default=1, show_default=True, type=click.IntRange(min=1),
              help="Worker threads for shardable checks.")
@click.pass_context
def main(ctx, jobs):
    """Exact verification of the bounded volume class of H^2 x H^2."""
    ctx.obj = {"jobs": jobs}


@main.group()
def cfg():
    """Configuration types."""


@cfg.command("print")
@click.option("--config", "conf", callback=_config_arg, help='e.g. "X=[0,1,2];Y=[0,2,1]"')
@click.option("--t", "t", type=click.IntRange(1, 6), help="Summarize all types of this length.")
def cfg_print(conf, t):
    """Canonical form and symmetry data of a configuration, or type counts."""
    if conf is None and t is None:
        raise click.UsageError("give --config or --t")
    if conf is not None:
        ts = type_space(conf.t)
        orb = orbits(conf.t, True)
        idx = ts.config_index(conf)
        rep = ts.config(orb.reps[orb.orbit_of[idx]])
        obj = {
            "config": str(conf),
            "counts": list(counts(conf)),
            "forced_zero": forced_zero(conf),
            "orbit_representative": str(rep),
            "orbit_sign": int(orb.sign[idx]),
        }
        if conf.t == 4:
            obj["crossing_criterion"] = lemma7_applies(conf)
        _emit(obj)
    else:
        ts = type_space(t)
        orb = orbits(t, True)
        _emit({"t": t, "factor_types": ts.P, "types": ts.N, "orbits": len(orb.reps),
               "nonforced_orbits": len(orb.basis)})


@main.group("theta")
def theta_group():
    """The cocycle Theta."""


@theta_group.command("eval")
@click.option("--config", "conf", callback=_config_arg, required=True)
def theta_eval(conf):
    """Evaluate Theta by both routes."""
    from .theta import theta_full, theta_reduced

    if conf.t != 5:
        raise click.BadParameter("Theta needs a 5-tuple", param_hint="--config")
    full, red = theta_full(conf), theta_reduced(conf)
    _emit({"config": str(conf), "full": frac_str(full), "reduced": frac_str(red)})
    sys.exit(0 if full == red else 1)


@theta_group.command("norm")
@click.option("--out", type=click.Path(dir_okay=False, writable=True))
def theta_norm(out):
    """Sup norm certificate over all 5-tuple types."""
    from .theta import EXTREMAL, sup_norm, theta_cochain

    cert = sup_norm(theta_cochain())
    _emit(cert.to_json_obj(), out)
    sys.exit(0 if cert.sup_norm == Fraction(2, 3) and EXTREMAL in cert.argmax else 1)


@main.group()
def verify():
    """Individual verification suites."""


@verify.command("cocycle")
@click.option("--sample", type=click.IntRange(min=1), help="Check N seeded random 6-tuple types.")
@click.option("--seed", default=42, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True))
@click.pass_context
def verify_cocycle(ctx, sample, seed, out):
    """delta Theta = 0 on 6-tuple types."""
    sys.exit(run_suite("cocycle", out, sample=sample, seed=seed, jobs=ctx.obj["jobs"]))


@verify.command("class-norm")
@click.option("--seed", default=0, show_default=True)
@click.option("--count", default=100, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True))
def verify_class_norm(seed, count, out):
    """Lower bound on the class norm from the extremal tuple."""
    sys.exit(run_suite("class-norm", out, seed=seed, count=count))


@verify.command("transfer")
@click.option("--seed", default=0, show_default=True)
@click.option("--count", default=50, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True))
def verify_transfer(seed, count, out):
    """The transfer map m."""
    sys.exit(run_suite("transfer", out, seed=seed, count=count))


@main.command("decompose")
@click.option("--input", "inp", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--output", type=click.Path(dir_okay=False, writable=True))
def decompose_cmd(inp, output):
    """Write f = delta(h1 + h2 + h3) for a cocycle given as cochain JSON."""
    from .cochains import Cochain
    from .comparison import decompose

    try:
        with open(inp) as fh:
            f = Cochain.from_json_obj(json.load(fh))
    except (ValueError, KeyError, ParseError, MalformedRanks) as e:
        raise click.BadParameter(f"cannot read cochain: {e}", param_hint="--input")
    rep = decompose(f, raise_on_precondition=False)
    _emit(rep.to_json_obj(), output)
    sys.exit(0 if rep.final else 1)


@main.group()
def surface():
    """Pairings with the genus-2 cycle."""


@surface.command("pair-or")
@click.option("--generators", type=click.Path(exists=True, dir_okay=False))
def surface_pair_or(generators):
    """<Or_xi, z> and its four summands that a1 xi = xi does not kill."""
    from .hyperbolic import fixed_point_orientations, genus2_cycle, load_generators, octagon_group, pair_or

    g = load_generators(generators) if generators else octagon_group()
    z = genus2_cycle(g)
    val = pair_or(z, g)
    claims = fixed_point_orientations(g)
    _emit({"pair_or": val, "fixed_point_orientations": claims, "relator_residual": g.relator_residual,
           "xi": g.xi})
    sys.exit(0 if val == 4 and all(c == 1 for c in claims) else 1)


@surface.command("pair-theta")
@click.option("--generators", type=click.Path(exists=True, dir_okay=False))
def surface_pair_theta(generators):
    """<Theta_xi, z x z> against 16 times the lambda functional."""
    from .hyperbolic import genus2_cycle, load_generators, octagon_group, pair, product_chain
    from .theta import lambda_profile, theta_cochain

    g = load_generators(generators) if generators else octagon_group()
    z = genus2_cycle(g)
    th = theta_cochain()
    val = pair(th, product_chain(z, z), g)
    functional = lambda_profile(th).functional
    _emit({"pair_theta": frac_str(val), "lambda_functional": frac_str(functional)})
    sys.exit(0 if val == 16 * functional == 16 else 1)


@main.command("invariants")
@click.option("--genus", nargs=2, type=click.IntRange(min=0), required=True)
def invariants_cmd(genus):
    """Simplicial volume and related bounds for a product of surfaces."""
    rep = invariants(*genus)
    _emit(rep.to_json_obj())
    sys.exit(0 if all(rep.checks().values()) else 1)


@main.command("suite")
@click.argument("name", type=click.Choice(
    ["norm", "cocycle", "class-norm", "transfer", "decompose", "surface", "all"]))
@click.option("--out", type=click.Path(dir_okay=False, writable=True))
@click.option("--seed", type=int)
@click.option("--count", type=click.IntRange(min=0))
@click.option("--sample", type=click.IntRange(min=1))
@click.option("--inject-fault", "fault", type=click.IntRange(0, 5), hidden=True,
              help="Corrupt one bracket of the 30-term route (negative control).")
@click.pass_context
def suite(ctx, name, out, seed, count, sample, fault):
    """Run a verification suite and emit its JSON report."""
    sys.exit(run_suite(name, out, fault=fault, seed=seed, count=count, sample=sample,
                       jobs=ctx.obj["jobs"]))


if __name__ == "__main__":
    main()
