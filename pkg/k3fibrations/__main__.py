#!/usr/bin/env python3
# -*- coding: utf-8 -*-
import logging
import sys
from dataclasses import dataclass
from typing import Optional, Union
import pandas as pd
from k3fibrations.algebra.exactalg import MPoly, factor_rational, parse_rat
from k3fibrations.models.fibrations import (FibrationClass, build,
                                            reproduce_table)
from k3fibrations.models.heterotic import (check_bundle_weights,
                                           classify_branch, detect_loci)
from k3fibrations.models.identities import (FAILED, SuiteOptions,
                                            run_suite)
from k3fibrations.models.moduli import (InvariantPoint, ParamPoint,
                                        invariants, isomorphic, j30,
                                        wp_normalize)
from k3fibrations.models.weierstrass import (ClassificationError,
                                             DegenerateModelError, WModel,
                                             classify_fibration)
from k3fibrations.utils.cli import parse_args
from k3fibrations.utils.utils import (RunConfig, _get_class_key,
                                      _parse_branch, _process, dumps,
                                      load_point_file, parse_rationals)

logger = logging.getLogger(__name__)

Point = Union[ParamPoint, InvariantPoint]

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

# Coefficient names per class, in the order (a2, a4, a6).
_COEFFICIENT_NAMES = {
    FibrationClass.STANDARD: (None, "f", "g"),
    FibrationClass.ALTERNATE: ("A", "B", None),
    FibrationClass.BFD: (None, "F", "G"),
    FibrationClass.MAXIMAL: ("a", "b", "c"),
}


def get_fibration(fibration: str = "alternate",
                  point: Optional[Point] = None,
                  branch: Union[str, int] = "+",
                  raw: bool = False) -> WModel:
    """Weierstrass model of a fibration class.

    Notes:
    - Any string matching a class's regex (e.g. `std`, `alt`, `max`) can be
      used as the class name.
    - Without a point the model is symbolic in J2..J6 (alpha..zeta with
      ``raw``).

    Parameters:
        fibration (str): `standard`, `alternate`, `bfd` or `maximal`.
        point (ParamPoint or InvariantPoint, optional): where to specialize.
        branch (str or int): sign of a for the standard class.
        raw (bool): use the sextuple model when symbolic.

    Returns:
        WModel: the Weierstrass model.
    """
    cls = FibrationClass(_get_class_key(fibration))
    return build(cls, point, _parse_branch(branch), raw)


def named_coefficients(cls: FibrationClass, m: WModel) -> dict[str, str]:
    names = _COEFFICIENT_NAMES[cls]
    return {n: str(p) for n, p in zip(names, (m.a2, m.a4, m.a6)) if n}


def _t_valuation(p: MPoly, var: str) -> int:
    return min(p.coefficients(var)) if p else -1


@dataclass
class Output:
    payload: Union[dict, list]
    frame: Optional[pd.DataFrame] = None
    lines: Optional[list] = None
    code: int = EXIT_OK


class FibrationRunner:
    """
    Runs one subcommand of the command line interface.

    Args:
        config (RunConfig): seed, sample size, budget and output options.

    Methods:
        build, classify, table, verify, invariants, heterotic: return an
            Output holding the JSON payload, a table and an exit code.
        emit: print or save an Output.
    """

    def __init__(self, config: RunConfig):
        self.config = config

    @staticmethod
    def resolve_point(args) -> Optional[Point]:
        a = getattr(args, "a", None)
        if a is not None and not args.J:
            raise ValueError("--a only applies together with --J")
        if args.J:
            vals = parse_rationals(args.J, 5)
            return InvariantPoint(*vals, a=parse_rat(a) if a else None)
        if args.params:
            return ParamPoint(*parse_rationals(args.params, 6))
        if args.param_file:
            return load_point_file(args.param_file)
        return None

    @staticmethod
    def _invariant_point(point: Optional[Point]) -> InvariantPoint:
        if point is None:
            raise ValueError("Give a point with --J, --params or "
                             "--param-file")
        return invariants(point) if isinstance(point, ParamPoint) else point

    def build(self, args) -> Output:
        point = self.resolve_point(args)
        if args.symbolic == (point is not None):
            raise ValueError("Give either a point or --symbolic")
        cls = FibrationClass(_get_class_key(args.fibration))
        m = get_fibration(cls, point, args.branch, args.raw)
        payload = {"class": str(cls), "label": m.label,
                   "point": None if point is None else point.to_json(),
                   "coefficients": named_coefficients(cls, m)}
        delta = m.discriminant()
        payload["t_valuation"] = _t_valuation(delta, m.chart)
        if not m.parameters:
            shape = factor_rational(delta, m.chart)
            payload["discriminant"] = str(delta)
            payload["factor_shape"] = [list(d) for d in shape.degrees]
            payload["factored"] = str(shape)
        lines = [f"{m.label}: {m}"]
        lines += [f"  {k} = {v}" for k, v in payload["coefficients"].items()]
        lines.append(f"  ord_t(Delta) = {payload['t_valuation']}")
        if "factored" in payload:
            lines.append(f"  Delta = {payload['factored']}")
        return Output(payload, lines=lines)

    def classify(self, args) -> Output:
        cls = FibrationClass(_get_class_key(args.fibration))
        point = self.resolve_point(args)
        if point is None:
            raise ValueError("classify needs a point")
        m = build(cls, point, _parse_branch(args.branch))
        try:
            cfg = classify_fibration(m)
        except (ClassificationError, DegenerateModelError) as err:
            logger.error("%s", err)
            return Output({"class": str(cls), "error": str(err)},
                          lines=[str(err)], code=EXIT_MISMATCH)
        payload = {"class": str(cls), "point": point.to_json(),
                   "model": m.to_json(), "config": cfg.to_json(),
                   "places": [list(p) for p in cfg.places]}
        frame = pd.DataFrame([{"class": str(cls), **cfg.as_row()}])
        return Output(payload, frame)

    def table(self, args) -> Output:
        classes = None
        if args.fibration:
            classes = [FibrationClass(_get_class_key(args.fibration))]
        checks = reproduce_table(classes)
        rows = [c.as_row() for c in checks]
        payload = [{**r, "point": c.point.to_json() if c.point else None}
                   for r, c in zip(rows, checks)]
        bad = [c for c in checks if not c.matches]
        for c in bad:
            logger.error("row (%s, %s) does not match", c.cls,
                         c.expected.locus)
        return Output(payload, pd.DataFrame(rows),
                      code=EXIT_MISMATCH if bad else EXIT_OK)

    def verify(self, args) -> Output:
        opts = SuiteOptions(self.config.points, self.config.seed,
                            self.config.budget)
        reports = run_suite(opts, args.suite)
        failed = [r for r in reports if r.status == FAILED]
        return Output([r.to_json() for r in reports],
                      pd.DataFrame([r.as_row() for r in reports]),
                      code=EXIT_MISMATCH if failed else EXIT_OK)

    def invariants(self, args) -> Output:
        point = self.resolve_point(args)
        J = self._invariant_point(point)
        payload = {"invariants": J.to_json(),
                   "a_squared": str(J.a_squared),
                   "wp_label": str(wp_normalize(J)),
                   "J30": str(j30(J)),
                   "loci": sorted(str(l) for l in detect_loci(J))}
        if args.compare:
            if not isinstance(point, ParamPoint):
                raise ValueError("--compare needs a sextuple (--params)")
            other = ParamPoint(*parse_rationals(args.compare, 6))
            payload["isomorphic"] = isomorphic(point, other).to_json()
        lines = [f"{k}: {v}" for k, v in payload.items()]
        return Output(payload, lines=lines)

    def heterotic(self, args) -> Output:
        J = self._invariant_point(self.resolve_point(args))
        classes = list(FibrationClass)
        if args.fibration:
            classes = [FibrationClass(_get_class_key(args.fibration))]
        sign = _parse_branch(args.branch)
        reports = [classify_branch(cls, J, sign) for cls in classes]
        payload = {"branches": [r.to_json() for r in reports]}
        if args.bundle:
            payload["bundle"] = check_bundle_weights().to_json()
        mismatch = any(r.computed is not None and not r.validated
                       for r in reports)
        return Output(payload, pd.DataFrame([r.as_row() for r in reports]),
                      code=EXIT_MISMATCH if mismatch else EXIT_OK)

    def run(self, args) -> Output:
        return getattr(self, args.command)(args)

    def emit(self, out: Output) -> None:
        if self.config.out:
            data = out.payload if out.frame is None or \
                self.config.out.endswith(".json") else out.frame
            _process(data, filepath=self.config.out)
        elif self.config.format == "json":
            print(dumps(out.payload))
        elif out.frame is not None:
            print(out.frame.to_markdown(index=False))
        else:
            print("\n".join(out.lines or [dumps(out.payload)]))


def _configure_logging(verbosity: int) -> None:
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity,
                                                      logging.DEBUG)
    logging.basicConfig(level=level,
                        format="%(levelname)s %(name)s: %(message)s")


def main(argv=None) -> int:
    args = parse_args(argv)
    try:
        config = RunConfig.from_args(args)
        _configure_logging(config.verbosity)
        runner = FibrationRunner(config)
        out = runner.run(args)
        runner.emit(out)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    return out.code


if __name__ == '__main__':
    sys.exit(main())
