"""
Logger-Konfiguration
✅ Separate Log-Dateien pro Bereich (algebra, rewriter, checks, uq, cli, errors)
✅ Log-Verzeichnis über AW_LOG_DIR konfigurierbar
"""
import logging
import os
from logging.handlers import RotatingFileHandler

LOG_FORMAT = '%(asctime)s [%(levelname)s] %(name)s: %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'

LOGGERS = {
    'algebra': 'algebra.log',
    'rewriter': 'rewriter.log',
    'checks': 'checks.log',
    'uq': 'uq.log',
    'cli': 'cli.log',
    'errors': 'errors.log',
}


def log_dir() -> str:
    return os.getenv('AW_LOG_DIR', 'logs')


def setup_logger(name: str, log_file: str, level=logging.INFO) -> logging.Logger:
    """
    Erstellt einen Logger mit RotatingFileHandler

    Args:
        name: Name des Loggers
        log_file: Dateiname innerhalb des Log-Verzeichnisses
        level: Log-Level
    """
    directory = log_dir()
    os.makedirs(directory, exist_ok=True)

    logger = logging.getLogger(name)
    logger.setLevel(level)

    # Doppelte Handler vermeiden
    if logger.handlers:
        return logger

    handler = RotatingFileHandler(
        os.path.join(directory, log_file),
        maxBytes=5_000_000,
        backupCount=5,
        encoding='utf-8'
    )
    handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT))
    logger.addHandler(handler)

    return logger


def setup_all_loggers() -> None:
    """Initialisiert alle Logger des Pakets"""
    for name, log_file in LOGGERS.items():
        level = logging.ERROR if name == 'errors' else logging.INFO
        setup_logger(name, log_file, level)
