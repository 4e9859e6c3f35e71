import fischerlab


def pytest_report_header(config):
    return f"fischerlab kernel backend: {fischerlab.backend_name()}"
