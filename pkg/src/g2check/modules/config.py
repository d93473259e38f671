import os

from dataclasses import dataclass
from dotenv import load_dotenv
from inspect import getsourcefile
from unipath import Path

source_file = getsourcefile(lambda: 0)
config_file_path = None
if isinstance(source_file, str):
    config_file_path = os.path.abspath(source_file)

if not config_file_path:
    raise Exception("Unable to load environment.")

modules_directory = Path(config_file_path).parent
g2check_directory = modules_directory.parent
project_root_directory = g2check_directory.parent.parent
dotenv_path = os.path.join(project_root_directory, ".env")
load_dotenv(dotenv_path=dotenv_path)


def get_data_directory() -> str:
    data_directory = os.getenv("G2CHECK_DATA_DIR")
    # if a path is not set, write reports to the project root
    if not data_directory or data_directory.strip() == "":
        data_directory = project_root_directory

    # create directory if it doesn't exist
    if not os.path.exists(data_directory):
        os.makedirs(data_directory)

    return str(data_directory)


def _int_setting(name: str, default: int, minimum: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise Exception(f"{name} must be an integer, got {raw!r}")
    if value < minimum:
        raise Exception(f"{name} must be at least {minimum}, got {value}")
    return value


@dataclass
class Settings:
    jobs: int = 1
    search_trials: int = 100000
    refutation_samples: int = 10000
    seed: int = 0


def load_settings() -> Settings:
    """
    Reads the G2CHECK_* environment variables, falling back to the defaults.
    """
    return Settings(
        jobs=_int_setting("G2CHECK_JOBS", 1, -1),
        search_trials=_int_setting("G2CHECK_SEARCH_TRIALS", 100000, 1),
        refutation_samples=_int_setting("G2CHECK_REFUTATION_SAMPLES", 10000, 1),
        seed=_int_setting("G2CHECK_SEED", 0, 0),
    )
