# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later

# edbn core: tensors, layers, the dual-branch model, optimizer, metrics,
# data ingestion and the staged trainer.
