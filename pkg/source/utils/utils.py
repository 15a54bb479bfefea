import os
import json
import yaml
from pathlib import Path


def load_config(config_path: str | os.PathLike) -> dict:
    """
    Load the configuration file.

    Defaults are loaded from the default.yaml file in the same directory as the configuration file.

    Args:
        config_path (str | os.PathLike): Path to the configuration file.

    Returns:
        dict: Configuration file.
    """
    default_config_path = Path(config_path).parent / "default.yaml"
    with open(default_config_path) as f:
        config = yaml.safe_load(f)

    with open(config_path) as f:
        config.update(yaml.safe_load(f) or {})

    Path(config["output_dir"]).mkdir(exist_ok=True, parents=True)

    return config


def format_lattice_vector(vector) -> list:
    return [int(c) for c in vector]


def parse_lattice_vector(value, n: int | None = None) -> tuple[int, ...]:
    """
    Parse a JSON integer array into a lattice vector.

    Args:
        value: Sequence of integers.
        n (int, optional): Expected dimension.

    Returns:
        tuple[int, ...]: The lattice vector.
    """
    if isinstance(value, (str, bytes)) or not hasattr(value, "__iter__"):
        raise ValueError(f"Expected an integer array, got {value!r}.")
    vector = []
    for c in value:
        if isinstance(c, bool) or int(c) != c:
            raise ValueError(f"Lattice vector entries must be integers, got {value!r}.")
        vector.append(int(c))
    if n is not None and len(vector) != n:
        raise ValueError(f"Expected a vector of dimension {n}, got {value!r}.")
    return tuple(vector)


def read_descriptor(path_or_inline: str | os.PathLike | dict) -> dict:
    """
    Read a module family descriptor.

    Accepts a dict, inline JSON, or a path to a JSON or YAML file.

    Args:
        path_or_inline (str | os.PathLike | dict): Descriptor source.

    Returns:
        dict: The descriptor.
    """
    if isinstance(path_or_inline, dict):
        return dict(path_or_inline)

    text = str(path_or_inline).strip()
    if text.startswith("{"):
        return json.loads(text)

    path = Path(text)
    if not path.exists():
        raise ValueError(f"Family descriptor {text} is neither inline JSON nor a file.")
    with open(path) as f:
        if path.suffix in [".yaml", ".yml"]:
            descriptor = yaml.safe_load(f)
        else:
            descriptor = json.load(f)

    if not isinstance(descriptor, dict):
        raise ValueError(f"Family descriptor in {path} is not a mapping.")
    return descriptor


def get_report_path(config: dict, stem: str) -> Path:
    """
    Get the path of a report in the output directory.

    Args:
        config (dict): Configuration file.
        stem (str): Report name without suffix.

    Returns:
        Path: Path to the JSON report, unless an explicit "out" is configured.
    """
    if config.get("out"):
        return Path(config["out"])

    return Path(config["output_dir"]) / "reports" / f"{stem}.json"


def dump_json(payload: dict, path: str | os.PathLike) -> None:
    """
    Write a report deterministically (sorted keys, fixed indentation).
    """
    path = Path(path)
    path.parent.mkdir(exist_ok=True, parents=True)
    with open(path, "w") as f:
        f.write(json.dumps(payload, sort_keys=True, indent=2))
        f.write("\n")
