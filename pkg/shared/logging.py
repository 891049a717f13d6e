import logging
from datetime import datetime, timedelta
from pathlib import Path
from .config import config

LOGS_DIR = Path(__file__).parent.parent / 'logs'
LOG_FILE = LOGS_DIR / 'totalreal.log'

_file_handler = None


def _shared_file_handler():
    global _file_handler
    if _file_handler is None:
        LOGS_DIR.mkdir(exist_ok=True)
        _file_handler = logging.FileHandler(LOG_FILE)
        _file_handler.setLevel(logging.DEBUG)
        _file_handler.setFormatter(logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s'))
    return _file_handler


def setup_logger(component_name):
    logger = logging.getLogger(f'totalreal.{component_name}')
    if logger.handlers:
        return logger
    logger.setLevel(logging.DEBUG)
    logger.propagate = False

    # Console handler on stderr; stdout belongs to reports
    console_handler = logging.StreamHandler()
    console_handler.setLevel(getattr(logging, config.log_level().upper(), logging.INFO))

    # Formatter includes component name
    formatter = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')
    console_handler.setFormatter(formatter)

    logger.addHandler(_shared_file_handler())
    logger.addHandler(console_handler)

    return logger


def cleanup_old_logs():
    """Remove log entries older than the retention window from totalreal.log"""
    if not LOG_FILE.exists():
        return

    cutoff_date = datetime.now() - timedelta(days=config.getint('app', 'log_retention_days', 30))
    temp_file = LOGS_DIR / 'totalreal.log.tmp'

    with open(LOG_FILE, 'r') as infile, open(temp_file, 'w') as outfile:
        for line in infile:
            try:
                timestamp_str = line.split(' - ')[0]
                log_date = datetime.strptime(timestamp_str, '%Y-%m-%d %H:%M:%S,%f')
                if log_date >= cutoff_date:
                    outfile.write(line)
            except (ValueError, IndexError):
                # Keep continuation lines (tracebacks, multi-line reports)
                outfile.write(line)

    temp_file.replace(LOG_FILE)
