import sys
from pathlib import Path

# allow running the suite from a source checkout without installing;
# the compiled extension (if built) sits next to the sources
_src = Path(__file__).resolve().parent.parent / "src"
if _src.is_dir() and str(_src) not in sys.path:
    sys.path.insert(0, str(_src))
