"""
Root test configuration: puts the repository root on the import path.
"""

import sys
from pathlib import Path

project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))
