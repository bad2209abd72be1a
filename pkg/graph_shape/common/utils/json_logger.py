import contextlib
import copy
import json
import logging
import threading
import traceback
from datetime import datetime
from logging import LogRecord, Filter
from typing import Any, Dict


class JSONFormatter(logging.Formatter):
    def format(self, record: LogRecord) -> str:
        message_dict: Dict[str, Any] = {
            'level': record.levelname,
            'date': datetime.fromtimestamp(record.created).isoformat(),
            'logger': record.name,
            'module': f'{record.filename}:{record.lineno}',
            'thread': record.threadName,
        }
        if isinstance(record.msg, dict):
            message_dict.update(record.msg)
        else:
            message_dict['message'] = record.getMessage()

        context = getattr(record, 'context', None)
        if isinstance(context, dict):
            message_dict.update(context)
        elif isinstance(context, str):
            message_dict['context'] = context

        if record.exc_info:
            message_dict['exc_info'] = {
                'type': str(record.exc_info[0]),
                'exception': str(record.exc_info[1]),
                'traceback': [
                    line.strip().replace('"', '\'').replace('\n', '')
                    for line in traceback.format_tb(record.exc_info[2])
                ]
            }
        if record.exc_text:
            message_dict['exc_text'] = record.exc_text

        # numpy scalars and arrays end up in context values
        return json.dumps(message_dict, default=str)


class ContextFilter(Filter):
    def filter(self, record: LogRecord) -> bool:
        thread = threading.current_thread()
        if hasattr(thread, 'log_context'):
            record.context = thread.log_context
        return True


@contextlib.contextmanager
def logging_context(**kwargs):
    """Attaches key/values to every record logged by the current thread inside the block."""
    thread = threading.current_thread()
    if not hasattr(thread, 'log_context'):
        thread.log_context = {}
    old_log_context = copy.deepcopy(thread.log_context)

    thread.log_context.update(kwargs)
    try:
        yield
    finally:
        thread.log_context = old_log_context
