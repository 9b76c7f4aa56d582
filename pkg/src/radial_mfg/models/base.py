"""Base models and utilities."""

from typing import Any, Dict

import numpy as np
from pydantic import BaseModel as PydanticBaseModel
from pydantic import ConfigDict


class BaseModel(PydanticBaseModel):
    """Base model for configuration-like records."""

    model_config = ConfigDict(
        validate_assignment=True, use_enum_values=True, validate_default=True
    )

    def dict_for_export(self) -> Dict[str, Any]:
        """Return a JSON-compatible dictionary for reports and CSV metadata."""
        return self.model_dump(mode="json")


class ArrayModel(PydanticBaseModel):
    """Immutable record that carries numpy arrays."""

    model_config = ConfigDict(
        arbitrary_types_allowed=True,
        frozen=True,
        use_enum_values=True,
        validate_default=True,
    )


def readonly(values: Any) -> np.ndarray:
    """Return a float64 copy of `values` that cannot be written to."""
    array = np.array(values, dtype=float)
    array.setflags(write=False)
    return array
