import os
import sqlite3
import pytest

from src.Model.Configuration import Configuration


class DummyProgress:
    """Stands in for the progress signal; keeps every emitted update."""

    def __init__(self):
        self.updates = []

    def emit(self, progress):
        self.updates.append(progress)


@pytest.fixture(scope="module", autouse=True)
def init_config(request, tmp_path_factory):
    configuration = Configuration('TestConfig.db')
    db_file_path = tmp_path_factory.mktemp('config').joinpath('TestConfig.db')
    configuration.set_db_file_path(db_file_path)
    connection = sqlite3.connect(db_file_path)

    def tear_down():
        connection.close()
        if os.path.isfile(db_file_path):
            os.remove(db_file_path)

    request.addfinalizer(tear_down)
    return connection


@pytest.fixture
def progress():
    return DummyProgress()
