# pytest wiring: the same django setup runtests.py performs
import os
import sys

HERE = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, os.path.join(HERE, 'tests_project'))
sys.path.insert(1, HERE)
os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'tests_project.settings')

import django
django.setup()
