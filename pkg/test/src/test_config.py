import json
import os
import shutil
import tempfile
import unittest

from src import config
from src.config import RunConfig
from src import exceptions


class TestRunConfig(unittest.TestCase):
    def setUp(self):
        self.location = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.location)

    def write(self, values):
        with open(RunConfig.config_path(self.location), 'w') as f:
            f.write(values if isinstance(values, str) else json.dumps(values))

    def test_defaults(self):
        settings = RunConfig.load(self.location, env={})
        self.assertEqual(settings, config.DEFAULT_CONFIG)
        self.assertEqual(settings.max_nodes, 10 ** 8)
        self.assertEqual(settings.format, 'text')
        with self.assertRaises(AttributeError):
            settings.missing

    def test_sources(self):
        self.assertEqual(RunConfig.config_path(self.location), os.path.join(self.location, 'hlat.json'))
        settings = RunConfig.load(self.location, env={'HLAT_M_MAX': '3', 'HLAT_MAX_NODES': '11'})
        self.assertEqual((settings.max_nodes, settings.m_max), (11, 8))

    def test_precedence(self):
        self.write({'max_nodes': 500, 'm_max': 6, 'seed': 3})
        settings = RunConfig.load(self.location, env={config.ENV_MAX_NODES: '700'},
                                  overrides={'m_max': 4, 'workers': None})
        self.assertEqual(settings.max_nodes, 700)
        self.assertEqual(settings.m_max, 4)
        self.assertEqual(settings.seed, 3)
        self.assertEqual(settings.workers, 0)

        settings = RunConfig.load(self.location, env={config.ENV_MAX_NODES: '700'}, overrides={'max_nodes': 9})
        self.assertEqual(settings.max_nodes, 9)

    def test_bad_file(self):
        self.write('{"max_nodes": ')
        with self.assertRaises(exceptions.ConfigException):
            RunConfig.load(self.location, env={})
        self.write(['max_nodes'])
        with self.assertRaises(exceptions.ConfigException):
            RunConfig.load(self.location, env={})
        self.write({'max_node': 5})
        with self.assertRaises(exceptions.ConfigException) as context:
            RunConfig.load(self.location, env={})
        self.assertIn('max_node', str(context.exception))

    def test_bad_env(self):
        with self.assertRaises(exceptions.ConfigException):
            RunConfig.load(self.location, env={config.ENV_MAX_NODES: 'many'})

    def test_validate(self):
        for key, value in (('max_nodes', 0), ('m_max', -1), ('rank_guard', '20'), ('workers', -1), ('format', 'xml')):
            with self.assertRaises(exceptions.ConfigException):
                RunConfig.load(self.location, env={}, overrides={key: value})

    def test_budget(self):
        settings = RunConfig.load(self.location, env={}, overrides={'max_nodes': 42})
        budget = settings.budget()
        self.assertEqual(budget.max_nodes, 42)
        self.assertEqual(budget.nodes_used, 0)

    def test_reported(self):
        settings = RunConfig.load(self.location, env={}, overrides={'workers': 8})
        reported = settings.reported()
        self.assertNotIn('workers', reported)
        self.assertEqual(reported['m_max'], 8)
        self.assertEqual(list(reported), sorted(reported))
