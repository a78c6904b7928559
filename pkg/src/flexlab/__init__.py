"""flexlab: exact verification workbench for plane cubics, their flexes,
matrix groups over residue rings, and torsion of elliptic curves over
finite and rational function fields."""

from .errors import FlexlabError
from .fields import GF, Field, FieldElem, ZModElem, function_field

__all__ = [
    "FlexlabError",
    "Field",
    "FieldElem",
    "ZModElem",
    "GF",
    "function_field",
]

__version__ = "0.1.0"
