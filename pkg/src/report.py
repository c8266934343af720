"""
JSON reports. Keys are sorted so equal runs produce byte-identical output.
"""

import os
import json

from . import __version__


def source_revision(location=None):
    """
    Commit of the hlat checkout in use, or None outside a git checkout
    """
    try:
        import git
    except ImportError:
        return None
    location = location or os.path.dirname(os.path.abspath(__file__))
    try:
        repo = git.Repo(location, search_parent_directories=True)
        return repo.head.commit.hexsha
    except (git.InvalidGitRepositoryError, git.NoSuchPathError, ValueError):
        return None


def build(command, result, config):
    """
    :param command: {string} Sub-command that produced the result
    :param result: {dict} JSON-ready result data
    :param config: {config.RunConfig}
    :return: {dict}
    """
    return {
        'command': command,
        'result': result,
        'config': config.reported(),
        'version': __version__,
        'revision': source_revision()
    }


def error(exc, exit_code):
    return {
        'error': {
            'type': type(exc).__name__,
            'message': str(exc),
            'exit_code': exit_code
        }
    }


def render(report):
    return json.dumps(report, sort_keys=True, indent=2)
