import logging
from pathlib import Path
from typing import List, Union

import yaml
from pydantic import ValidationError

from src.analysis import InnerProduct
from src.errors import ConfigError, ExpressionError
from src.expr import Expression, parse
from src.models import ConfigFile
from src.orthogonalize import BuildConfig

logger = logging.getLogger(__name__)


class ConfigParser:
    """Loader for YAML config documents (sections space, build, output, compare)"""

    @staticmethod
    def parse_text(text: str, source: str = "<config>") -> ConfigFile:
        """
        Parse a config document

        Args:
            text: YAML text
            source: Name used in error messages

        Returns:
            Validated ConfigFile

        Raises:
            ConfigError: malformed YAML, unknown keys or invalid values
        """
        try:
            data = yaml.safe_load(text)
        except yaml.YAMLError as e:
            raise ConfigError(f"{source}: invalid YAML: {e}") from e
        if not isinstance(data, dict):
            raise ConfigError(f"{source}: expected a mapping with sections space and build")
        try:
            return ConfigFile.model_validate(data)
        except ValidationError as e:
            raise ConfigError(f"{source}: {e}") from e

    @staticmethod
    def load(path: Union[str, Path]) -> ConfigFile:
        """Read and parse a UTF-8 config file; OSError propagates to the caller"""
        path = Path(path)
        try:
            with open(path, "r", encoding="utf-8") as f:
                text = f.read()
        except UnicodeDecodeError as e:
            raise ConfigError(f"{path}: not valid UTF-8: {e}") from e
        config = ConfigParser.parse_text(text, str(path))
        logger.debug(f"Loaded config {path}")
        return config

    @staticmethod
    def expression(text: str, key: str) -> Expression:
        try:
            return parse(text)
        except ExpressionError as e:
            raise ConfigError(f"{key}: {e}") from e

    @staticmethod
    def to_build_config(config: ConfigFile) -> BuildConfig:
        """Turn config sections into the inputs of build_system"""
        space, build = config.space, config.build
        try:
            ip = InnerProduct(
                a=space.a,
                b=space.b,
                weight=ConfigParser.expression(space.weight, "space.weight"),
                quad_tol=space.quad_tol,
                max_subdivisions=space.max_subdivisions,
            )
            return BuildConfig(
                seed=ConfigParser.expression(build.seed, "build.seed"),
                N=build.N,
                h_specs=[ConfigParser.expression(h, f"build.h[{i}]")
                         for i, h in enumerate(build.h_list(), start=1)],
                x0=build.x0,
                ip=ip,
                normalize=build.normalize,
                grid_points=build.grid_points,
            )
        except ValidationError as e:
            raise ConfigError(str(e)) from e

    @staticmethod
    def comparison_basis(config: ConfigFile) -> List[Expression]:
        """Basis for compare-gs; monomials 1, x, ..., x^(N-1) unless given"""
        if config.compare is not None:
            return [ConfigParser.expression(text, f"compare.basis[{i}]")
                    for i, text in enumerate(config.compare.basis, start=1)]
        return [parse("1")] + [parse(f"x^{k}") for k in range(1, config.build.N)]
