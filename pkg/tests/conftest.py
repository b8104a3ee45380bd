import sys
from pathlib import Path

# allow the shared oracle helpers to be imported from test modules
sys.path.insert(0, str(Path(__file__).resolve().parent))
