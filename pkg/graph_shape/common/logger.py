import json
import logging
import logging.config
import pathlib
from typing import Any, Optional

from .constants import DEFAULT_LOG_FILE, DEFAULT_LOG_LEVEL, DEFAULT_LOG_FORMAT, DEFAULT_LOG_CFG_PATH


SINGLE_CHAR_TO_LEVEL = {
    'D': 'DEBUG',
    'I': 'INFO',
    'W': 'WARNING',
    'E': 'ERROR',
    'C': 'CRITICAL',
}


def single_char_to_level(char: str) -> Any:
    return getattr(logging, SINGLE_CHAR_TO_LEVEL[char.upper()[0]])


class Logger:
    """Common logging setup: basicConfig first, then the json dictConfig if it is present."""

    @staticmethod
    def setup(
        log_file: Optional[str] = DEFAULT_LOG_FILE,
        log_level: str = DEFAULT_LOG_LEVEL,
        log_format: str = DEFAULT_LOG_FORMAT,
        log_cfg: str = DEFAULT_LOG_CFG_PATH,
    ) -> None:
        if log_file:
            logging.basicConfig(filename=log_file, filemode='a', level=single_char_to_level(log_level), format=log_format)
        else:
            logging.basicConfig(level=single_char_to_level(log_level), format=log_format)

        log_cfg_path = pathlib.Path(log_cfg)
        if log_cfg_path.exists() and log_cfg_path.is_file():
            with open(log_cfg_path, 'r') as log_cfg_file:
                data = json.load(log_cfg_file)
                logging.config.dictConfig(data)
