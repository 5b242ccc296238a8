"""Regenerate desk5_reference.json from the shipped desk5 configuration.

    python3 tests/data/pin_desk5.py
"""

import json
import sys
from pathlib import Path

here = Path(__file__).parent
sys.path.insert(0, str(here.parent))

from conftest import desk5_scores  # noqa: E402

scores, _ = desk5_scores()
(here / "desk5_reference.json").write_text(json.dumps(scores, indent=1, sort_keys=True) + "\n")
print(json.dumps(scores, indent=1, sort_keys=True))
