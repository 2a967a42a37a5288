from wavecontrast.engine import TestConfig, TestResult

# dataclasses, not test containers
TestConfig.__test__ = False
TestResult.__test__ = False
