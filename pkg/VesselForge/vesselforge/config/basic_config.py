# -*- coding: utf-8 -*-
"""Dictionary-backed configuration stored as YAML or JSON."""

import copy
import json
from pathlib import Path
from typing import Any, List, Optional

from ruamel.yaml import YAML

yaml = YAML()
yaml.preserve_quotes = True


def merge_missing(target: dict, defaults: dict) -> dict:
    """Recursively copy keys of ``defaults`` that ``target`` lacks.

    Values already present in ``target`` win; nested mappings are merged.
    """
    for key, value in defaults.items():
        if key not in target:
            target[key] = copy.deepcopy(value)
        elif isinstance(value, dict) and isinstance(target[key], dict):
            merge_missing(target[key], value)
    return target


class BasicConfig(dict):
    """
    Configuration mapping that can be loaded from and saved to a file.

    Unlike a plain dict it knows its file location and can look up nested
    keys by path. Nothing is written unless ``autosave`` is enabled or
    :meth:`save` is called.
    """

    def __init__(
        self,
        path: Optional[str] = None,
        default_content: Optional[dict] = None,
        yaml_format: bool = True,
        autosave: bool = False,
    ) -> None:
        super().__init__()
        self.yaml_format = yaml_format
        self.autosave = autosave
        self.path = Path(path) if path is not None else None
        self.default_content = default_content or {}
        self.load()

    def load(self) -> None:
        """Load data from file, falling back to the default content."""
        self.clear()
        if self.path is not None and self.path.is_file() and self.path.stat().st_size > 0:
            with self.path.open("r", encoding="UTF-8") as f:
                data = yaml.load(f) if self.yaml_format else json.load(f)
            self.update(to_plain(data or {}))
            merge_missing(self, to_plain(self.default_content))
        else:
            self.update(to_plain(copy.deepcopy(self.default_content)))
            if self.autosave:
                self.save()

    def save(self, path: Optional[str] = None) -> None:
        """Save data to ``path`` or to the file the config was loaded from."""
        target = Path(path) if path is not None else self.path
        if target is None:
            raise ValueError("config has no file path")
        target.parent.mkdir(parents=True, exist_ok=True)
        with target.open("w", encoding="UTF-8") as f:
            if self.yaml_format:
                yaml.dump(dict(self), f)
            else:
                json.dump(dict(self), f, ensure_ascii=False, indent=2)

    def __setitem__(self, key, value):
        super().__setitem__(key, value)
        if self.autosave:
            self.save()

    def __delitem__(self, key):
        super().__delitem__(key)
        if self.autosave:
            self.save()

    def get_keys(self, key: List[str], default: Optional[Any] = None) -> Any:
        """
        Get value from config by key path.

        Parameters
        ----------
        key : List[str]
            A list of keys to walk down the nested mappings
        default : Any, optional
            Default value if the key is not found, default None

        Returns
        -------
        Any
            Value from config by key path

        Examples
        --------
        >>> config = BasicConfig(default_content={"mesh": {"N": 24}})
        >>> config.get_keys(["mesh", "N"])
        24
        >>> config.get_keys(["mesh", "missing"], 3)
        3
        """
        result = self
        for k in key[:-1]:
            result = result.get(k, {})
            if not isinstance(result, dict):
                return default
        return result.get(key[-1], default)

    def set_keys(self, key: List[str], value: Any) -> None:
        """Set a nested value, creating intermediate mappings."""
        node = self
        for k in key[:-1]:
            node = node.setdefault(k, {})
        node[key[-1]] = value
        if self.autosave:
            self.save()


def to_plain(data: Any) -> Any:
    """Convert ruamel containers into builtin dicts and lists."""
    if isinstance(data, dict):
        return {str(k): to_plain(v) for k, v in data.items()}
    if isinstance(data, (list, tuple)):
        return [to_plain(v) for v in data]
    return data
