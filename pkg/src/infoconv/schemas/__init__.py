"""JSON schemas for every document the package reads or writes."""

import json
from functools import lru_cache
from importlib import resources

import jsonschema

from ..errors import ValidationError

CSV_HEADERS = {
    "logic_gates": ["gate", "micro_mi", "macro_mi", "micro_bsyn", "macro_bsyn"],
    "expansion": ["system_id", "kind", "macro_bsyn", "meso_bsyn", "micro_bsyn", "mi_bits", "gain"],
    "scatter": ["system_id", "kind", "macro_bsyn", "gain_macro_minus_micro",
                "change_micro_minus_macro"],
}


@lru_cache(maxsize=None)
def load_schema(name):
    text = resources.files(__name__).joinpath(f"{name}.schema.json").read_text()
    return json.loads(text)


def validate_document(data, name):
    """Raise :class:`ValidationError` unless ``data`` matches schema ``name``."""
    try:
        jsonschema.validate(data, load_schema(name))
    except jsonschema.ValidationError as exc:
        raise ValidationError(f"{name} document invalid: {exc.message}") from exc
