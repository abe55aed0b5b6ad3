"""pytest configuration: put this directory on sys.path, as run_all.py does,
so test modules can import set_sys_path."""


import os
import sys


sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
