import sys

from .common.logger import Logger
from .cli_report import run


if __name__ == '__main__':
    Logger.setup()
    sys.exit(run())
