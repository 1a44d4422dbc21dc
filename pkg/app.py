# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later
"""edbn entry point."""

from __future__ import annotations

import sys

from edbn.cli_main import main as cli_main


def main() -> int:
    return cli_main()


__all__ = ["main"]


if __name__ == "__main__":
    sys.exit(main())
