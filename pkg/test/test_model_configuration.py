import os
import sqlite3
import pytest

from src import constants
from src.Model.Configuration import Configuration, SqlError, \
    UnknownSettingError


@pytest.fixture(scope="function", autouse=True)
def init_sqlite_config(request, tmp_path):
    configuration = Configuration('TestSqliteConfig.db')
    db_file_path = tmp_path.joinpath('TestSqliteConfig.db')
    configuration.set_db_file_path(db_file_path)
    connection = sqlite3.connect(db_file_path)

    def tear_down():
        connection.close()
        if os.path.isfile(db_file_path):
            os.remove(db_file_path)

    request.addfinalizer(tear_down)
    return connection


def test_if_config_table_exists(init_sqlite_config):
    # Select from sqlite_master the info of Configuration table
    cursor = init_sqlite_config.cursor()
    cursor.execute("SELECT name FROM sqlite_master WHERE type = 'table' "
                   "AND name='CONFIGURATION'")
    record = cursor.fetchone()

    assert record is not None


def test_unset_settings_fall_back_to_constants():
    settings = Configuration().get_all_settings()
    assert settings['default_base'] == constants.DEFAULT_LOG_BASE
    assert settings['restarts'] == constants.DEFAULT_RESTARTS
    assert settings['verify_tol'] == constants.DEFAULT_VERIFY_TOLERANCE
    assert settings['max_dim'] == constants.DEFAULT_MAX_DIM


def test_update_setting(init_sqlite_config):
    configuration = Configuration()
    configuration.update_setting('restarts', '12')
    configuration.update_setting('default_base', 'e')

    # Select the stored values straight from the database
    cursor = init_sqlite_config.cursor()
    cursor.execute("SELECT restarts, default_base FROM CONFIGURATION "
                   "WHERE id = 1")
    record = cursor.fetchone()

    assert record == (12, 'e')
    assert configuration.get_setting('restarts') == 12
    assert configuration.get_setting('default_base') == 'e'


def test_get_setting(init_sqlite_config):
    init_sqlite_config.execute(
        "INSERT INTO configuration (id, step_init) VALUES (1, 0.25);")
    init_sqlite_config.commit()

    assert Configuration().get_setting('step_init') == 0.25


def test_unknown_setting_and_bad_values():
    configuration = Configuration()
    with pytest.raises(UnknownSettingError):
        configuration.get_setting('default_dir')
    with pytest.raises(UnknownSettingError):
        configuration.update_setting('default_base', '10')
    with pytest.raises(UnknownSettingError):
        configuration.update_setting('restarts', 'many')


def test_error_handling(init_sqlite_config):
    configuration = Configuration()
    cursor = init_sqlite_config.cursor()

    # Lock the database to trigger SqlError
    cursor.execute("""PRAGMA locking_mode = EXCLUSIVE;""")
    cursor.execute("""BEGIN EXCLUSIVE;""")
    with pytest.raises(SqlError):
        configuration.get_setting('restarts')
    with pytest.raises(SqlError):
        configuration.update_setting('restarts', 3)
