import os
import json

from .enumeration import EnumBudget
from .exceptions import ConfigException


CONFIG_FILE = 'hlat.json'

ENV_MAX_NODES = 'HLAT_MAX_NODES'

FORMATS = ('text', 'json')

DEFAULT_CONFIG = {
    'max_nodes': 10 ** 8,
    'm_max': 8,
    'rank_guard': 20,
    'workers': 0,
    'format': 'text',
    'seed': 0
}

# Settings that change how a run is scheduled but never what it computes
SCHEDULING_KEYS = ('workers',)


class RunConfig(dict):
    """
    Settings for one hlat run, readable as attributes.

    Values are layered: DEFAULT_CONFIG, then hlat.json in the working directory,
    then the HLAT_MAX_NODES environment variable, then command line flags.
    """
    def __getattr__(self, item):
        try:
            return self[item]
        except KeyError:
            raise AttributeError(item)

    def __setattr__(self, key, value):
        self[key] = value

    @classmethod
    def load(cls, location, env=None, overrides=None):
        """
        :param location: {string} Directory searched for hlat.json
        :param env: {dict} Environment variables, os.environ by default
        :param overrides: {dict} Command line values; None entries are ignored
        :return: {RunConfig}
        """
        env = os.environ if env is None else env
        config = cls(DEFAULT_CONFIG)
        config.update(cls.read_file(location))
        if env.get(ENV_MAX_NODES):
            try:
                config.max_nodes = int(env[ENV_MAX_NODES])
            except ValueError:
                raise ConfigException('{} must be an integer, got {!r}'.format(ENV_MAX_NODES, env[ENV_MAX_NODES]))
        for key, value in (overrides or {}).items():
            if key in DEFAULT_CONFIG and value is not None:
                config[key] = value
        config.validate()
        return config

    @staticmethod
    def read_file(location):
        path = RunConfig.config_path(location)
        if not os.path.exists(path):
            return {}
        try:
            with open(path) as data:
                values = json.load(data)
        except ValueError as e:
            raise ConfigException('Failed to parse config file {}: {}'.format(path, e))
        if not isinstance(values, dict):
            raise ConfigException('Config file {} must hold a JSON object'.format(path))
        unknown = sorted(set(values) - set(DEFAULT_CONFIG))
        if unknown:
            raise ConfigException('Unknown config keys in {}: {}'.format(path, ', '.join(unknown)))
        return values

    @staticmethod
    def config_path(location):
        return os.path.join(location, CONFIG_FILE)

    def validate(self):
        for key in ('max_nodes', 'm_max', 'rank_guard'):
            if not isinstance(self[key], int) or self[key] < 1:
                raise ConfigException('{} must be a positive integer, got {!r}'.format(key, self[key]))
        for key in ('workers', 'seed'):
            if not isinstance(self[key], int) or self[key] < 0:
                raise ConfigException('{} must be a nonnegative integer, got {!r}'.format(key, self[key]))
        if self.format not in FORMATS:
            raise ConfigException("format must be one of {}, got '{}'".format(', '.join(FORMATS), self.format))

    def budget(self):
        return EnumBudget(self.max_nodes)

    def reported(self):
        """
        The settings echoed into reports
        """
        return {key: value for key, value in sorted(self.items()) if key not in SCHEDULING_KEYS}
