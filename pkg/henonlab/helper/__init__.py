# -*- coding: utf-8 -*-
"""Numerical and file helpers shared by the henonlab modules."""

pass
