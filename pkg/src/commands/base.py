"""
Command Helpers
Shared arguments, config assembly and payload output for subcommands.
"""
import argparse
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Type

from core.exception import ConfigException
from schemas.config import RunConfig, apply_overrides
from services.base import BaseService, run_service

logger = logging.getLogger(__name__)


def json_print(payload: Any) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True, default=str))


def _param(value: str) -> List[str]:
    name, sep, raw = value.partition("=")
    if not sep or not name:
        raise argparse.ArgumentTypeError(f"expected name=value, got {value!r}")
    return [name.strip(), raw.strip()]


def add_common_arguments(parser: argparse.ArgumentParser, carrier: bool = True) -> None:
    """Config file, inline model and the output directory"""
    parser.add_argument("--config", type=Path, default=None, help="TOML or JSON run configuration")
    parser.add_argument("--model", type=str, default=None, choices=["mkdv", "hietarinta", "vkvm", "nikdv"],
                        help="Model kind; overrides model.kind")
    parser.add_argument("--param", type=_param, action="append", default=[], metavar="NAME=VALUE",
                        help="Exact model parameter, e.g. p=2 or alpha=1/3")
    if carrier:
        parser.add_argument("--cos-k", type=str, default=None, help="Rational cos k")
        parser.add_argument("--sin-sign", type=int, default=None, choices=[-1, 1])
        parser.add_argument("--M2", type=str, default=None, help="Scale on m1")
    parser.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
                        help="Override any config key, e.g. simulation.slow_time=3")
    parser.add_argument("--output", type=str, default=None, help="Output directory")
    parser.add_argument("--seed", type=int, default=None)


def flag_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    """Dotted keys set by explicit command-line flags"""
    values: Dict[str, Any] = {}
    if args.model is not None:
        values["model.kind"] = args.model
    for name, raw in args.param:
        values[f"model.params.{name}"] = raw
    for flag, key in (("cos_k", "carrier.cos_k"), ("sin_sign", "carrier.sin_sign"), ("M2", "carrier.M2")):
        value = getattr(args, flag, None)
        if value is not None:
            values[key] = value
    if args.output is not None:
        values["output.directory"] = args.output
    if args.seed is not None:
        values["seed"] = args.seed
    return values


def _set_dotted(data: Dict[str, Any], key: str, value: Any) -> None:
    node = data
    *parents, leaf = key.split(".")
    for part in parents:
        node = node.setdefault(part, {})
    node[leaf] = value


def load_config(args: argparse.Namespace, extra: Optional[Dict[str, Any]] = None) -> RunConfig:
    """
    Config file, then --set overrides, then dedicated flags.

    Raises:
        ConfigException: no model given, or the merged config is invalid
    """
    if args.config is not None:
        config = RunConfig.load(args.config)
        data = config.model_dump(mode="json", exclude_none=True)
    else:
        data = {}
    data = apply_overrides(data, args.overrides)
    for key, value in {**flag_overrides(args), **(extra or {})}.items():
        _set_dotted(data, key, value)
    if "model" not in data or "kind" not in data["model"]:
        raise ConfigException("No model given; pass --config or --model")
    return RunConfig.from_mapping(data)


def run_command(service_class: Type[BaseService], args: argparse.Namespace,
                extra: Optional[Dict[str, Any]] = None) -> int:
    config = load_config(args, extra)
    summary = run_service(service_class(config))
    json_print(summary)
    return 0


__all__ = ["add_common_arguments", "flag_overrides", "json_print", "load_config", "run_command"]
