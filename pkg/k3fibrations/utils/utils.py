# -*- coding: utf-8 -*-
import json
import re
from dataclasses import dataclass
from datetime import datetime
from fractions import Fraction
from pathlib import Path
from types import MappingProxyType
from typing import Optional, Union
import pandas as pd
from k3fibrations.algebra.exactalg import parse_rat
from k3fibrations.models.moduli import (INVARIANT_NAMES, PARAM_NAMES,
                                        InvariantPoint, ParamPoint)

__class_input_map = MappingProxyType({
    "standard": r"^(std|standard|e7(-|_)?e7)$",
    "alternate": r"^(alt(ernate)?|so24(-|_)?su2su2)$",
    "bfd": r"^(bfd|base(-|_)?fib(er|re)(-|_)?dual|e8(-|_)?so12)$",
    "maximal": r"^(max(imal)?|so28)$", })


def _get_class_key(name):
    """
    Convert a fibration name to its class key.

    >>> _get_class_key('STD')
    'standard'
    >>> _get_class_key('base-fiber-dual')
    'bfd'
    >>> _get_class_key('so28')
    'maximal'
    """
    name = str(name).strip()

    for key, regex in __class_input_map.items():
        if re.match(regex, name, re.I):
            return key
    raise ValueError(f'Invalid fibration class: {name}')


def parse_rationals(text: str, count: Optional[int] = None
                    ) -> list[Fraction]:
    """Read a comma-separated list such as "1/2,-3,4"."""
    items = [s for s in str(text).replace(" ", "").split(",") if s]
    if count is not None and len(items) != count:
        err_msg = f"Expected {count} comma-separated values, got {len(items)}"
        raise ValueError(err_msg)
    return [parse_rat(s) for s in items]


def _parse_branch(text: Union[str, int]) -> int:
    """'+', '-', '1', '-1' -> +1 or -1."""
    branches = {"+": 1, "+1": 1, "1": 1, "-": -1, "-1": -1}
    key = str(text).strip()
    if key not in branches:
        raise ValueError(f"Invalid branch: {text} (use + or -)")
    return branches[key]


def load_point_file(path: Union[str, Path]
                    ) -> Union[ParamPoint, InvariantPoint]:
    """A JSON object with either alpha..zeta or J2..J6 (and optional a)."""
    path = Path(path).expanduser()
    try:
        obj = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as err:
        err_msg = f"Cannot read parameter file {path}: {err}"
        raise ValueError(err_msg) from err
    if not isinstance(obj, dict):
        raise ValueError(f"{path} must hold a JSON object")
    if set(PARAM_NAMES) <= set(obj):
        return ParamPoint.from_json(obj)
    if set(INVARIANT_NAMES) <= set(obj):
        return InvariantPoint.from_json(obj)
    err_msg = (f"{path} must have the keys {', '.join(PARAM_NAMES)} or "
               f"{', '.join(INVARIANT_NAMES)}")
    raise ValueError(err_msg)


@dataclass(frozen=True)
class RunConfig:
    """Options shared by every subcommand."""
    seed: int = 0
    points: int = 20
    budget: int = 2_000_000
    format: str = "text"
    out: Optional[str] = None
    verbosity: int = 0

    def __post_init__(self):
        if self.points < 1:
            raise ValueError("--points must be positive")
        if self.budget < 1:
            raise ValueError("--budget must be positive")
        if self.format not in ("text", "json"):
            raise ValueError(f"Invalid format: {self.format}")

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        return cls(seed=args.seed, points=args.points, budget=args.budget,
                   format=args.format, out=args.out,
                   verbosity=args.verbose)


def dumps(payload) -> str:
    """Deterministic JSON text."""
    return json.dumps(payload, indent=2, sort_keys=True)


def _save_to_file(data, filename=None, output_dir=None):
    """Save a DataFrame (or a JSON payload, for .json) to a file."""
    if filename is None:
        filename = datetime.now().strftime('%Y_%m_%d-%H%M') + '.csv'
    elif '.' not in filename:
        filename += '.csv'

    # If no output directory is provided, use cwd
    if output_dir is None:
        output_dir = Path.cwd()
    else:
        output_dir = Path(output_dir).expanduser()

    filename = output_dir / filename

    if filename.is_file():
        print('File exists: overwriting...')

    if str(filename).endswith('.json'):
        payload = data.to_dict(orient='records') \
            if isinstance(data, pd.DataFrame) else data
        filename.write_text(dumps(payload) + "\n")
        print(f"File saved to: {filename}")
        return

    if not isinstance(data, pd.DataFrame):
        raise ValueError('Only .json output is available for this command')

    formats = {
        '.txt': lambda filename: data.to_csv(filename, sep='\t',
                                             index=False),
        '.csv': lambda filename: data.to_csv(filename, index=False),
        '.xlsx': lambda filename: data.to_excel(filename, index=False),
        '.md': lambda filename: data.to_markdown(filename, index=False), }

    for ext, func in formats.items():
        if str(filename).endswith(ext):
            func(str(filename))
            print(f"File saved to: {filename}")
            break
    else:
        raise ValueError('Unsupported file extension')


def _process(data, filepath: Optional[str] = None):
    """Optionally save ``data``; ``filepath`` is a filename, path or
    directory."""
    if filepath:
        filepath = Path(filepath).expanduser()

        # If filepath is a directory, append a default file name to it
        if filepath.is_dir():
            filename = datetime.now().strftime('%Y%m%d%H%M') + '.csv'
            filepath = filepath / filename

        _save_to_file(data, filepath.name, filepath.parent)

    return data
