# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Version information for edbn."""

VERSION = "0.1.0"

__all__ = ["VERSION"]
