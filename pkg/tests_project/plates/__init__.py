# test app for thermoplate: YAML run configurations live in fixtures/
import os

FIXTURES_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'fixtures')


def fixture(name):
    '''Absolute path of a fixture configuration'''
    return os.path.join(FIXTURES_DIR, name)
