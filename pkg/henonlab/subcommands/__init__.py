# -*- coding: utf-8 -*-
"""The subcommands of the henonlab executable."""
