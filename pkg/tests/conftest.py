import pytest

from psrlab import plane

EULER_LOG = {"checked": 0, "failed": []}
CRITERIA: dict[int, str] = {}

_original_post_init = plane.PlaneGraph.__post_init__


def _counted_post_init(self):
    _original_post_init(self)
    for comp in self.components:
        # independent recount: vertices - edges + traced faces, and every dart exactly once
        darts = [d for face in comp.faces for d in face]
        expected = {(u, v) for u, nbrs in comp.rotation.items() for v in nbrs}
        ok = len(comp.vertices) - comp.edge_count + len(comp.faces) == 2
        ok = ok and len(darts) == len(set(darts)) and set(darts) == expected
        EULER_LOG["checked"] += 1
        if not ok:
            EULER_LOG["failed"].append(comp.vertices)
            raise AssertionError(f"Euler check failed for component {comp.vertices}")


plane.PlaneGraph.__post_init__ = _counted_post_init


@pytest.fixture
def record_criterion():
    def record(number: int, passed: bool, detail: str = "") -> None:
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'}" + (f"  {detail}" if detail else "")
        CRITERIA[number] = line
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for k in sorted(CRITERIA):
            terminalreporter.write_line(CRITERIA[k])


def pytest_configure(config):
    config.addinivalue_line("markers", "run_last: run after every other collected test")


def pytest_collection_modifyitems(items):
    # the Euler tally is only meaningful once the rest of the suite has built its plane graphs
    items.sort(key=lambda item: item.get_closest_marker("run_last") is not None)
