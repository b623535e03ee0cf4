# -*- coding: utf-8 -*-
# ruff: noqa: SIM117
import argparse
import io
import json
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction
from pathlib import Path
from unittest.mock import patch
import pandas as pd
from k3fibrations.__main__ import (EXIT_MISMATCH, EXIT_OK, EXIT_USAGE,
                                   get_fibration, main, named_coefficients)
from k3fibrations.models.fibrations import FibrationClass
from k3fibrations.models.moduli import (InadmissiblePointError,
                                        InvariantPoint, ParamPoint)
from k3fibrations.utils.cli import parse_args
from k3fibrations.utils.utils import (RunConfig, _get_class_key,
                                      _parse_branch, _save_to_file,
                                      load_point_file, parse_rationals)

GENERIC_J = "2/7,-1/3,-8/27,-46/315,1"
GENERIC_A = "346/315"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


class TestGetClassKey(unittest.TestCase):
    def test_class_keys(self):
        test_cases = [
            ('standard', 'standard'),
            ('STD', 'standard'),
            ('e7-e7', 'standard'),
            ('e7e7', 'standard'),
            ('alt', 'alternate'),
            ('Alternate', 'alternate'),
            ('so24_su2su2', 'alternate'),
            ('bfd', 'bfd'),
            ('base-fibre-dual', 'bfd'),
            ('e8-so12', 'bfd'),
            ('max', 'maximal'),
            ('so28', 'maximal'),
            ('elliptic', ValueError),
            ('so32', ValueError),
            (8, ValueError), ]

        for name, expected_key in test_cases:
            with self.subTest(name=name):
                if expected_key is ValueError:
                    with self.assertRaises(ValueError):
                        _get_class_key(name)
                else:
                    self.assertEqual(_get_class_key(name), expected_key)


class TestParsing(unittest.TestCase):
    def test_parse_rationals(self):
        self.assertEqual(parse_rationals("1/2, -3,4"),
                         [Fraction(1, 2), -3, 4])
        with self.assertRaises(ValueError):
            parse_rationals("1,2", 3)
        with self.assertRaises(ValueError):
            parse_rationals("0.5,1")
        with self.assertRaises(ValueError):
            parse_rationals("1e3")

    def test_parse_branch(self):
        for text, sign in (('+', 1), ('1', 1), (1, 1), ('-', -1),
                           ('-1', -1), (-1, -1)):
            with self.subTest(text=text):
                self.assertEqual(_parse_branch(text), sign)
        with self.assertRaises(ValueError):
            _parse_branch('2')

    def test_run_config(self):
        self.assertEqual(RunConfig().points, 20)
        for kwargs in ({'points': 0}, {'budget': 0}, {'format': 'xml'}):
            with self.subTest(**kwargs):
                with self.assertRaises(ValueError):
                    RunConfig(**kwargs)

    def test_parse_args(self):
        args = parse_args(['classify', 'bfd', '--J', '1,1,0,1,1',
                           '--seed', '3', '-vv'])
        self.assertEqual(args.command, 'classify')
        self.assertEqual(args.fibration, 'bfd')
        self.assertEqual(args.seed, 3)
        self.assertEqual(RunConfig.from_args(args).verbosity, 2)

    @patch('argparse.ArgumentParser.parse_args')
    def test_patched_args(self, mock_args):
        mock_args.return_value = argparse.Namespace(command='table',
                                                    fibration='max',
                                                    points=5)
        args = parse_args()
        self.assertEqual(args.command, 'table')
        self.assertEqual(_get_class_key(args.fibration), 'maximal')
        self.assertEqual(args.points, 5)

    def test_exclusive_points(self):
        with redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit):
                parse_args(['invariants', '--J', '1,1,1,3,2',
                            '--params', '1,1,1,1,1,2'])


class TestPointFiles(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def _write(self, name, obj):
        path = self.dir / name
        path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return path

    def test_params(self):
        path = self._write('p.json', {"alpha": "1", "beta": 1, "gamma": 1,
                                      "delta": "1", "epsilon": 1,
                                      "zeta": "2"})
        self.assertEqual(load_point_file(path), ParamPoint(1, 1, 1, 1, 1, 2))

    def test_invariants(self):
        path = self._write('j.json', {"J2": "1", "J3": "1", "J4": "1",
                                      "J5": "3", "J6": "2", "a": "-1"})
        self.assertEqual(load_point_file(str(path)).a, -1)

    def test_bad_files(self):
        cases = [('list.json', [1, 2]), ('keys.json', {"J2": "1"}),
                 ('broken.json', '{"J2": ')]
        for name, obj in cases:
            with self.subTest(name=name):
                with self.assertRaises(ValueError):
                    load_point_file(self._write(name, obj))
        with self.assertRaises(ValueError):
            load_point_file(self.dir / 'missing.json')

    def test_inadmissible_file(self):
        path = self._write('bad.json', {"J2": "1", "J3": "1", "J4": "0",
                                        "J5": "0", "J6": "0"})
        with self.assertRaises(InadmissiblePointError):
            load_point_file(path)


class TestSaveToFile(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.frame = pd.DataFrame({"fibers": ["2III* + 6I1"], "p_X": [16]})

    def tearDown(self):
        self.tmp.cleanup()

    def test_csv_and_json(self):
        with redirect_stdout(io.StringIO()):
            _save_to_file(self.frame, 'rows.csv', self.tmp.name)
            _save_to_file({"ok": True}, 'rows.json', self.tmp.name)
        path = Path(self.tmp.name)
        self.assertEqual(pd.read_csv(path / 'rows.csv')['p_X'][0], 16)
        self.assertEqual(json.loads((path / 'rows.json').read_text()),
                         {"ok": True})

    def test_unsupported(self):
        with self.assertRaises(ValueError):
            _save_to_file(self.frame, 'rows.pdf', self.tmp.name)
        with self.assertRaises(ValueError):
            _save_to_file({"ok": True}, 'rows.csv', self.tmp.name)


class TestGetFibration(unittest.TestCase):
    def test_aliases(self):
        self.assertEqual(get_fibration('e8-so12').label, 'bfd')
        self.assertEqual(get_fibration('std', branch='-').label,
                         'standard (-a)')

    def test_named_coefficients(self):
        m = get_fibration('alt', InvariantPoint(1, 1, 1, 3, 2))
        names = named_coefficients(FibrationClass.ALTERNATE, m)
        self.assertEqual(set(names), {"A", "B"})


class TestMain(unittest.TestCase):
    def test_invariants(self):
        code, out, _ = run('invariants', '--J', '1,1,1,3,2',
                           '--format', 'json')
        self.assertEqual(code, EXIT_OK)
        payload = json.loads(out)
        self.assertEqual(payload["a_squared"], "1")
        self.assertEqual(payload["invariants"]["J5"], "3")

    def test_compare(self):
        code, out, _ = run('invariants', '--params', '1,2,3,5,7,11',
                           '--compare', '9,54,729,3645,7/3,11',
                           '--format', 'json')
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(json.loads(out)["isomorphic"]["equivalent_over_Q"])

    def test_usage_errors(self):
        cases = [('invariants',),
                 ('invariants', '--params', '1,1,1,1,1,2', '--a', '1'),
                 ('invariants', '--J', '1,1,0,0,0'),
                 ('build', 'alternate'),
                 ('build', 'elliptic', '--symbolic'),
                 ('classify', 'bfd', '--J', GENERIC_J, '--points', '0')]
        for argv in cases:
            with self.subTest(argv=argv):
                code, _, err = run(*argv)
                self.assertEqual(code, EXIT_USAGE)
                self.assertIn('error', err)

    def test_build(self):
        code, out, _ = run('build', 'alt', '--J', GENERIC_J,
                           '--format', 'json')
        self.assertEqual(code, EXIT_OK)
        payload = json.loads(out)
        self.assertEqual(payload["class"], "alternate")
        self.assertIn("factor_shape", payload)

    def test_classify(self):
        code, out, _ = run('classify', 'bfd', '--J', GENERIC_J,
                           '--format', 'json')
        self.assertEqual(code, EXIT_OK)
        config = json.loads(out)["config"]
        self.assertEqual((config["picard"], config["euler"]), (16, 24))
        self.assertIn({"type": "II*", "count": 1}, config["fibers"])

    def test_table(self):
        code, out, _ = run('table', '--class', 'bfd', '--format', 'json')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(len(json.loads(out)), 6)

    def test_heterotic(self):
        code, out, _ = run('heterotic', '--J', GENERIC_J, '--a', GENERIC_A,
                           '--bundle', '--format', 'json')
        self.assertEqual(code, EXIT_OK)
        payload = json.loads(out)
        self.assertEqual(len(payload["branches"]), 4)
        self.assertEqual((payload["bundle"]["M"], payload["bundle"]["L"]),
                         (6, 7))

    def test_verify(self):
        code, out, _ = run('verify', 'weights', '--format', 'json')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(len(json.loads(out)), 3)

    def test_verify_failure_exits_nonzero(self):
        code, out, _ = run('verify', 'j30', '--points', '4', '--seed', '1',
                           '--format', 'json')
        self.assertEqual(code, EXIT_MISMATCH)
        statuses = {r["name"]: r["status"] for r in json.loads(out)}
        self.assertEqual(statuses["j30.maximal"], "failed")

    def test_output_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'table.csv'
            code, _, _ = run('table', '--class', 'max', '-o', str(path))
            self.assertEqual(code, EXIT_OK)
            self.assertEqual(len(pd.read_csv(path)), 6)


if __name__ == '__main__':
    unittest.main()
