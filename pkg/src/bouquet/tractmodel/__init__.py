from .address import ExternalAddress, TractRef, parse_address, random_address
from .config import hair_rows, model_spec_from_config, parse_config_text, read_config
from .dynamics import (Hair, HairSample, alpha_sequence, default_potentials, forward, initial_diameter,
                       inverse_branch, orbit_escape, preimage_proximity, ray_tail_check, trace_enclosures,
                       trace_hair, trace_point)
from .models import LogModel, build_model, expansion_samples, parse_spec

__all__ = [
    "ExternalAddress", "TractRef", "parse_address", "random_address",
    "hair_rows", "model_spec_from_config", "parse_config_text", "read_config",
    "Hair", "HairSample", "alpha_sequence", "default_potentials", "forward", "initial_diameter",
    "inverse_branch", "orbit_escape", "preimage_proximity", "ray_tail_check", "trace_enclosures",
    "trace_hair", "trace_point",
    "LogModel", "build_model", "expansion_samples", "parse_spec",
]
