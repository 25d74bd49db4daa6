from pathlib import Path
from typing import Any, TypeVar

from pydantic import BaseModel, ValidationError
from ruamel.yaml import YAML
from ruamel.yaml.error import YAMLError

from cosetmeter.internals.errors import ConfigError

ModelT = TypeVar("ModelT", bound=BaseModel)


def config_error(error: ValidationError) -> ConfigError:
    """
    The first validation failure, keyed by its dotted field path.
    """
    first = error.errors()[0]
    field = ".".join(str(part) for part in first["loc"]) or "config"
    message = first["msg"].removeprefix("Value error, ")
    return ConfigError(field, message)


def validate_model(model: type[ModelT], content: Any) -> ModelT:
    if not isinstance(content, dict):
        raise ConfigError("config", "expected a mapping at the top level")
    try:
        return model.model_validate(content)
    except ValidationError as error:
        raise config_error(error) from None


def load_model(model: type[ModelT], file_path: Path) -> ModelT:
    """
    Load a config file into `model`. `.json` files go through pydantic's JSON
    parser, anything else is read as YAML.
    """
    try:
        with open(file_path, "r", encoding="utf-8") as file:
            text = file.read()
    except UnicodeDecodeError as error:
        raise ConfigError("config", f"not valid UTF-8 at byte {error.start}") from None

    if file_path.suffix == ".json":
        try:
            return model.model_validate_json(text)
        except ValidationError as error:
            raise config_error(error) from None

    try:
        content = YAML(typ="safe", pure=True).load(text)
    except YAMLError as error:
        raise ConfigError("config", f"not valid YAML: {error}") from None
    return validate_model(model, content)
