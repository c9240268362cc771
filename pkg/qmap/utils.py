import sys
import queue
from datetime import datetime

LEVELS = {'DEBUG': 10, 'INFO': 20, 'WARNING': 30, 'ERROR': 40}

PREFIXES = {
    'DEBUG': '[DEBUG]',
    'INFO': '[INFO]',
    'WARNING': '[WARN]',
    'ERROR': '[ERROR]'
}

_threshold = LEVELS['INFO']


def set_log_level(level):
    """Set the lowest level that reaches the stream"""
    global _threshold
    if level not in LEVELS:
        raise ValueError(f"unknown log level '{level}'")
    _threshold = LEVELS[level]


def format_message(message, level='INFO', now=None):
    """Render one log line as 'HH:MM:SS [LEVEL] message'"""
    timestamp = (now or datetime.now()).strftime('%H:%M:%S')
    prefix = PREFIXES.get(level, PREFIXES['DEBUG'])
    return f"{timestamp} {prefix} {message}"


def log_message(message, level='INFO', stream=None):
    """Append message to the log stream with its level tag"""
    if LEVELS.get(level, LEVELS['DEBUG']) < _threshold:
        return
    stream = stream or sys.stderr
    stream.write(format_message(message, level) + '\n')
    stream.flush()


def _queue_log_message(log_queue, message, level='INFO'):
    """Helper function to queue log messages from worker threads"""
    log_queue.put({'message': message, 'level': level})


def process_log_queue(log_queue, stream=None):
    """Drain queued messages on the calling thread; returns how many were written"""
    count = 0
    try:
        while True:
            message_data = log_queue.get_nowait()
            log_message(message_data['message'], message_data['level'], stream)
            count += 1
    except queue.Empty:
        pass
    return count
