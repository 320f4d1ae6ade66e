"""Entry point para ejecutar el CLI sin instalar el paquete."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent / "src"))

from ff_pseudoarc.main import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
