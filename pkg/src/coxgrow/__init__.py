"""Growth series, growth rates and structural maps of Coxeter systems."""

from .coxcore import INF, CoxeterMatrix, GeneratorMap, parse_matrix, serialize_matrix

__all__ = ["INF", "CoxeterMatrix", "GeneratorMap", "parse_matrix", "serialize_matrix"]
__version__ = "0.1.0"
