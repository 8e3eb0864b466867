import networkx as nx
import pytest
import structlog

from dcs import gadgets
from dcs import logging as dcs_logging
from dcs.adapters import instance_file


# capture_logs only sees loggers that are not cached yet
structlog.configure(cache_logger_on_first_use=False)


@pytest.fixture(autouse=True)
def appdir(tmp_path, monkeypatch):
    monkeypatch.setattr(dcs_logging, "get_appdir", lambda: tmp_path)
    return tmp_path


@pytest.fixture
def two_by_two():
    return gadgets.gadget_two_by_two()


@pytest.fixture
def threshold():
    return gadgets.gadget_threshold(4, 2)


@pytest.fixture
def shift_congestion():
    return gadgets.gadget_shift_congestion(6, 3)


@pytest.fixture
def hitting_set():
    return gadgets.gadget_hitting_set([{0, 1}, {1, 2}, {2, 3}])


@pytest.fixture
def path3():
    return nx.path_graph(3)


@pytest.fixture
def write_instance(tmp_path):
    def write(instance, name="instance.json"):
        return str(instance_file.write_instance(tmp_path / name, instance))

    return write
