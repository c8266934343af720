import json
import shutil
import tempfile
import unittest

from src import __version__
from src import report
from src.config import RunConfig
from src import exceptions


class TestReport(unittest.TestCase):
    def setUp(self):
        self.location = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.location)

    def test_build(self):
        settings = RunConfig.load(self.location, env={}, overrides={'workers': 4})
        built = report.build('info', {'rank': 8}, settings)
        self.assertEqual(built['command'], 'info')
        self.assertEqual(built['result'], {'rank': 8})
        self.assertEqual(built['version'], __version__)
        self.assertNotIn('workers', built['config'])
        self.assertIn('revision', built)

    def test_render_is_stable(self):
        first = report.render({'b': 1, 'a': {'d': 2, 'c': [3]}})
        second = report.render({'a': {'c': [3], 'd': 2}, 'b': 1})
        self.assertEqual(first, second)
        self.assertEqual(json.loads(first)['a']['d'], 2)

    def test_error(self):
        error = report.error(exceptions.KTooSmallException('k = 1'), 2)
        self.assertEqual(error, {'error': {'type': 'KTooSmallException', 'message': 'k = 1', 'exit_code': 2}})

    def test_revision_outside_checkout(self):
        self.assertIsNone(report.source_revision(self.location))
