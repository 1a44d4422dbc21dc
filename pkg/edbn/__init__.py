# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later

from core.version import VERSION

__all__ = ["cli_main", "config_file", "logging_setup", "settings"]
__version__ = VERSION
