# SPDX-License-Identifier: Apache-2.0
"""Globally optimal K-ary discrete phase selection for RIS-aided links."""

from ._risopt import *  # noqa: F401,F403
from ._risopt import __doc__, __version__  # noqa: F401
