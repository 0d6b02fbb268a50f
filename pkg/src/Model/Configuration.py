import ctypes
import functools
import logging
import os
import platform
import sqlite3
from pathlib import Path

from src import constants
from src.Model.Singleton import Singleton

HIDDEN_DIR_NAME = '.MUBEntropy'

# Stored setting -> (column type, converter, fallback value)
SETTINGS = {
    'default_base': ('TEXT', str, constants.DEFAULT_LOG_BASE),
    'verify_tol': ('REAL', float, constants.DEFAULT_VERIFY_TOLERANCE),
    'restarts': ('INTEGER', int, constants.DEFAULT_RESTARTS),
    'max_iters': ('INTEGER', int, constants.DEFAULT_MAX_ITERS),
    'step_init': ('REAL', float, constants.DEFAULT_STEP_INIT),
    'converge_tol': ('REAL', float, constants.DEFAULT_CONVERGE_TOL),
    'max_dim': ('INTEGER', int, constants.DEFAULT_MAX_DIM),
    'processes': ('INTEGER', int, constants.DEFAULT_PROCESSES),
}


def set_up_hidden_dir():
    """
    Set up the hidden directory that holds the configuration database.
    :return: Path of the hidden directory.
    """
    path = Path.home().joinpath(HIDDEN_DIR_NAME)

    # Create and hide the hidden directory
    if not os.path.exists(path):
        os.mkdir(path)
        if platform.system() == 'Windows':
            # Hide the directory for Windows machines
            ctypes.windll.kernel32.SetFileAttributesW(str(path), 2)
    return path


class SqlError(Exception):
    pass


class UnknownSettingError(Exception):
    pass


def error_handling(function):
    @functools.wraps(function)
    def wrapper(*args):
        try:
            return function(*args)
        except sqlite3.Error as e:
            logging.error("Configuration database error in %s: %s",
                          function.__name__, e)
            raise SqlError(str(e)) from e
    return wrapper


class Configuration(metaclass=Singleton):
    """
    This Singleton class represents the user configuration: the default
    logarithm base, the default unbiasedness tolerance and the defaults
    of the tightness optimizer. Values live in a sqlite database inside
    the hidden directory ~/.MUBEntropy so they survive between runs of
    the command line tool. Anything not stored falls back to
    src/constants.py.
    Example usage:
    config = Configuration()
    restarts = config.get_setting('restarts')
    """

    def __init__(self, db_file='MUBEntropy.db'):
        hidden_dir = set_up_hidden_dir()
        self.db_file_path = hidden_dir.joinpath(db_file)
        self.set_up_config_db()

    @error_handling
    def set_up_config_db(self):
        """
        Create the CONFIGURATION table inside the SQLite database
        """
        columns = ",\n".join("%s %s" % (name, spec[0])
                             for name, spec in SETTINGS.items())
        connection = sqlite3.connect(self.db_file_path)
        connection.execute("""
                    CREATE TABLE IF NOT EXISTS CONFIGURATION (
                        id INTEGER PRIMARY KEY,
                        %s
                    );
                """ % columns)
        connection.commit()
        connection.close()

    @error_handling
    def get_setting(self, name):
        """
        Get a stored setting, or its constant fallback when unset.
        :param name: one of the keys of SETTINGS.
        :return: the converted value.
        """
        column_type, convert, fallback = self._lookup(name)
        connection = sqlite3.connect(self.db_file_path)
        cursor = connection.cursor()
        cursor.execute("SELECT %s FROM CONFIGURATION WHERE id = 1" % name)
        record = cursor.fetchone()
        connection.close()
        if record is None or record[0] is None:
            return fallback
        return convert(record[0])

    @error_handling
    def update_setting(self, name, value):
        """
        Change a stored setting in the database.
        :param name: one of the keys of SETTINGS.
        :param value: new value; converted with the setting's type.
        """
        column_type, convert, fallback = self._lookup(name)
        try:
            value = convert(value)
        except ValueError as e:
            raise UnknownSettingError(
                "Invalid value %r for %s" % (value, name)) from e
        if name == 'default_base' and value not in ('2', 'e'):
            raise UnknownSettingError("default_base must be '2' or 'e'")

        connection = sqlite3.connect(self.db_file_path)
        cursor = connection.cursor()
        cursor.execute("SELECT COUNT(*) FROM CONFIGURATION;")
        result = cursor.fetchone()
        if result[0] == 0:
            # insert the settings row if there is none
            cursor.execute("INSERT INTO CONFIGURATION (id, %s) VALUES (1, ?);"
                           % name, (value,))
        else:
            cursor.execute("UPDATE CONFIGURATION SET %s = ? WHERE id = 1;"
                           % name, (value,))
        connection.commit()
        connection.close()
        logging.info("Configuration %s set to %r", name, value)

    def get_all_settings(self):
        """
        :return: dict of every setting with stored or fallback value.
        """
        return {name: self.get_setting(name) for name in SETTINGS}

    def set_db_file_path(self, new_path):
        self.db_file_path = new_path
        self.set_up_config_db()

    @staticmethod
    def _lookup(name):
        if name not in SETTINGS:
            raise UnknownSettingError(
                "Unknown setting %r (known: %s)"
                % (name, ", ".join(SETTINGS)))
        return SETTINGS[name]
