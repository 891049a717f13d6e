import configparser
import os
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()


class Config:
    def __init__(self, config_path=None):
        self.config = configparser.ConfigParser()
        default_path = Path(__file__).parent.parent / 'config' / 'settings.cfg'
        self.config_path = Path(config_path or os.environ.get('TOTALREAL_CONFIG', default_path))
        self.load()

    def load(self):
        if self.config_path.exists():
            self.config.read(self.config_path)

    def get(self, section, key, fallback=None):
        return self.config.get(section, key, fallback=fallback)

    def getint(self, section, key, fallback=0):
        return self.config.getint(section, key, fallback=fallback)

    def getfloat(self, section, key, fallback=0.0):
        return self.config.getfloat(section, key, fallback=fallback)

    def getboolean(self, section, key, fallback=False):
        return self.config.getboolean(section, key, fallback=fallback)

    def jobs(self):
        """Default worker count: TOTALREAL_JOBS wins over [app] jobs."""
        env = os.environ.get('TOTALREAL_JOBS')
        if env:
            return max(1, int(env))
        return max(1, self.getint('app', 'jobs', 1))

    def log_level(self):
        return os.environ.get('TOTALREAL_LOG_LEVEL') or self.get('app', 'log_level', 'INFO')

# Global config instance
config = Config()
