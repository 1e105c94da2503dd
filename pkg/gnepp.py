#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Command-line entry point for the GNEPP toolkit.

Usage:
    python gnepp.py solve --builtin ex5.2i --tau0 0.02 --tau-rule fixed
    python gnepp.py verify --builtin ex3.3-limit --point 0,0
    python gnepp.py certify --builtin ex4.6
    python gnepp.py bench --players 3 --dims 2,2,2 --deg 3 --constraint simplex --count 20 --seed 1
    python gnepp.py pop problem.gnep --add-ball 2
"""

import sys

from cli import main

if __name__ == "__main__":
    sys.exit(main())
