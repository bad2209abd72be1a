from .utils import cached_method, str_fmt_object, fmt_float
from .json_logger import logging_context
