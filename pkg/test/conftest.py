import sys
from pathlib import Path

import pytest
from dotenv import load_dotenv


project_root = Path(__file__).resolve().parent.parent

# Load .env file before running tests
env_file = project_root / ".env"
if env_file.exists():
    load_dotenv(env_file)

# Allow both `import src.` and `import models...` style imports during tests.
sys.path.insert(0, str(project_root))
sys.path.insert(0, str(project_root / "src"))


@pytest.fixture
def output_dir(tmp_path: Path) -> Path:
    """Fresh directory for run artifacts"""
    return tmp_path / "run"
