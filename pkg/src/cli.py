import os
import sys


class HlatCli(object):
    """
    Output side of hlat. Results go to `out` through emit(); levelled
    messages go to `log`, except errors which always go to `err`.

    In machine mode `log` is stderr, so stdout carries nothing but the
    JSON report.
    """
    # level -> colour used by Vt100Cli
    LEVELS = {
        'info': 'cyan',
        'action': 'magenta',
        'warning': 'yellow',
        'error': 'red',
        'debug': 'blue'
    }

    def __init__(self, debug=False, log=None):
        self.out = sys.stdout
        self.log = log or sys.stdout
        self.err = sys.stderr
        self.enable_debug = debug

    def info(self, message):
        self.write('info', message)

    def action(self, message):
        self.write('action', message)

    def warn(self, message):
        self.write('warning', message)

    def error(self, message):
        self.write('error', message, self.err)

    def debug(self, message):
        if self.enable_debug:
            self.write('debug', message)

    def progress(self, done, total, what):
        """
        Debug-level progress line for long loops (class sweeps, det-line trials)
        """
        self.debug('{what}: {done}/{total}'.format(what=what, done=done, total=total))

    def emit(self, text):
        self.out.write(str(text) + os.linesep)
        self.out.flush()

    def write(self, level, message, stream=None):
        stream = stream or self.log
        stream.write(self.prefix(level) + str(message) + os.linesep)
        stream.flush()

    def prefix(self, level):
        return '[{}] '.format(level)


class Vt100Cli(HlatCli):
    COLORS = {
        'red': '\033[31m',
        'yellow': '\033[33m',
        'blue': '\033[34m',
        'magenta': '\033[35m',
        'cyan': '\033[36m'
    }

    END_SEQ = '\033[0m'

    def prefix(self, level):
        color = Vt100Cli.COLORS[HlatCli.LEVELS[level]]
        return '{color}[{level}]{end}{spacing}'.format(color=color, level=level, end=Vt100Cli.END_SEQ,
                                                        spacing=' ' * (8 - len(level)))


def make(debug=False, machine=False):
    """
    :param debug: {bool} Show debug lines
    :param machine: {bool} Results are machine readable; log lines move to stderr, uncoloured
    :return: {HlatCli}
    """
    if machine:
        return HlatCli(debug, sys.stderr)
    if sys.stdout.isatty():
        return Vt100Cli(debug)
    return HlatCli(debug)
