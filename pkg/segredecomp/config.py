import os
from typing import List
import yaml

from dataclasses import dataclass, field as dataclass_field


@dataclass
class Config:
    shape: List[int] = dataclass_field(default_factory=lambda: [2, 1, 5])
    field: List[int] = dataclass_field(default_factory=lambda: [2, 1])
    seed: int = 0
    parallel: int = 1
    max_reported_mismatches: int = 10
    log_level: str = "WARNING"


config = Config()


def init_config(config_file="segredecomp.yaml"):
    cfg = {}
    # Start over from the defaults on every call
    config.__init__()

    if config_file and os.path.isfile(config_file):
        with open(config_file, "r") as f:
            cfg = yaml.safe_load(f) or {}

    if cfg.get("field"):
        config.field = [int(v) for v in cfg["field"]]
    if cfg.get("shape"):
        config.shape = [int(v) for v in cfg["shape"]]
    if cfg.get("seed") is not None:
        config.seed = int(cfg["seed"])
    if cfg.get("parallel"):
        config.parallel = int(cfg["parallel"])
    if cfg.get("max_reported_mismatches") is not None:
        config.max_reported_mismatches = int(cfg["max_reported_mismatches"])
    if cfg.get("log_level"):
        config.log_level = str(cfg["log_level"]).upper()

    return config


# vim:sw=4:ts=4:et:
