import contextlib
import io
import os
import tempfile
from unittest import TestCase, mock

from liftcurv import __version__
from liftcurv.cli import EXIT_ERROR, EXIT_FAIL, EXIT_PASS, build_parser, main
from liftcurv.report import load_report
from liftcurv.weyl import MAX_OFFENDERS


class TestCli(TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.env = mock.patch.dict(os.environ)
        self.env.start()
        os.environ.pop('LIFTCURV_SEED', None)

    def tearDown(self):
        self.env.stop()
        self.tmp.cleanup()

    def run_main(self, *argv):
        out = io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(io.StringIO()):
            code = main(list(argv))

        return code, out.getvalue()

    def test_verify_theorem(self):
        """
        Tests that a proven family passes on a flat base
        """
        code, out = self.run_main('verify-theorem', 'thm44', '--samples', '3')
        self.assertEqual(EXIT_PASS, code)
        self.assertIn('PASS', out)

    def test_verify_theorem_fails_off_flat(self):
        """
        Tests that a direct run over a perturbed base exits with a failure
        """
        code, out = self.run_main('verify-theorem', 'thm44', '--base', 'perturbed:0.1', '--samples', '3')
        self.assertEqual(EXIT_FAIL, code)
        self.assertIn('FAIL', out)

    def test_contrapositive(self):
        """
        Tests that the contrapositive mode finds a non-flat lift over a
        perturbed base
        """
        code, out = self.run_main('verify-theorem', 'thm44', '--mode', 'contrapositive', '--samples', '3')
        self.assertEqual(EXIT_PASS, code)
        self.assertIn('perturbed:0.1', out)
        self.assertIn('non-flat', out)

    def test_no_samples(self):
        """
        Tests that a run without sample points exits with an error
        """
        code, out = self.run_main('verify-theorem', 'thm44', '--samples', '0')
        self.assertEqual(EXIT_ERROR, code)
        self.assertIn('no samples', out)

    def test_bad_dimension(self):
        """
        Tests that an invalid dimension is a configuration error
        """
        code, _ = self.run_main('verify-theorem', 'thm44', '--dim', '7')
        self.assertEqual(EXIT_ERROR, code)

    def test_bad_choice(self):
        """
        Tests that argparse rejects unknown families and variants
        """
        with contextlib.redirect_stderr(io.StringIO()):
            self.assertRaises(SystemExit, main, ['verify-theorem', 'thm99'])
            self.assertRaises(SystemExit, main, ['weyl-norm', '--variant', 'misprinted'])

    def test_weyl_norm(self):
        """
        Tests that weyl-norm reports a non-flat lift without failing
        """
        code, out = self.run_main('weyl-norm', '--family', 'sasaki', '--base', 'perturbed:0.3', '--samples', '2')
        self.assertEqual(EXIT_PASS, code)
        self.assertIn('sasaki', out)

    def test_oracle_diff(self):
        """
        Tests oracle agreement and the detection of an injected fault
        """
        argv = ['oracle-diff', '--family', 'sasaki', '--base', 'sphere:1.0', '--samples', '2']
        code, _ = self.run_main(*argv)
        self.assertEqual(EXIT_PASS, code)

        code, out = self.run_main(*argv, '--inject-fault', 'K.YYXY')
        self.assertEqual(EXIT_FAIL, code)
        self.assertIn('K.YYXY', out)

        code, _ = self.run_main(*argv, '--inject-fault', 'K.ZZZZ')
        self.assertEqual(EXIT_ERROR, code)

    def test_offender_limit(self):
        """
        Tests that a failing oracle run keeps at most MAX_OFFENDERS points
        """
        filename = os.path.join(self.tmp.name, 'faulty.json')
        code, _ = self.run_main('oracle-diff', '--family', 'sasaki', '--base', 'sphere:1.0', '--samples', '7',
                                '--inject-fault', 'K.YYXY', '--output', filename)
        self.assertEqual(EXIT_FAIL, code)
        self.assertEqual(MAX_OFFENDERS, len(load_report(filename).runs[0].offenders))

    def test_lemma_rank(self):
        """
        Tests the lemma-rank command and its dimension check
        """
        code, out = self.run_main('lemma-rank', 'lemma2', '--lemma-dim', '3', '--samples', '5')
        self.assertEqual(EXIT_PASS, code)
        self.assertIn('full-rank', out)

        code, _ = self.run_main('lemma-rank', 'lemma1', '--lemma-dim', '1', '--samples', '5')
        self.assertEqual(EXIT_PASS, code)

        code, _ = self.run_main('lemma-rank', 'lemma2', '--lemma-dim', '9')
        self.assertEqual(EXIT_ERROR, code)

    def test_output_and_report(self):
        """
        Tests writing a report and rendering it again
        """
        filename = os.path.join(self.tmp.name, 'report.json')
        code, first = self.run_main('verify-theorem', 'sasaki', '--samples', '2', '--seed', '4',
                                    '--output', filename)
        self.assertEqual(EXIT_PASS, code)

        report = load_report(filename)
        self.assertEqual(4, report.provenance.seed)
        self.assertEqual(__version__, report.provenance.version)
        self.assertEqual(2, report.runs[0].points)

        code, second = self.run_main('report', filename)
        self.assertEqual(EXIT_PASS, code)
        self.assertEqual(first, second)

    def test_report_errors(self):
        """
        Tests that a missing report file exits with an error
        """
        code, _ = self.run_main('report', os.path.join(self.tmp.name, 'missing.json'))
        self.assertEqual(EXIT_ERROR, code)

    def test_seed_environment(self):
        """
        Tests that LIFTCURV_SEED sets the seed and --seed overrides it
        """
        filename = os.path.join(self.tmp.name, 'report.json')
        os.environ['LIFTCURV_SEED'] = '21'
        self.run_main('lemma-rank', 'lemma1', '--samples', '1', '--output', filename)
        self.assertEqual(21, load_report(filename).provenance.seed)

        self.run_main('lemma-rank', 'lemma1', '--samples', '1', '--seed', '2', '--output', filename)
        self.assertEqual(2, load_report(filename).provenance.seed)

    def test_parser(self):
        """
        Tests that the parser knows every subcommand
        """
        parser = build_parser()
        for argv in (['verify-theorem', 'thm42'], ['oracle-diff'], ['weyl-norm'], ['lemma-rank', 'lemma1'],
                     ['report', 'x.json']):
            self.assertTrue(callable(parser.parse_args(argv).func))
