from .halfstrip import HalfplaneAutomorphism, HalfstripMap, halfplane_automorphism, halfstrip_map
from .hook import Anchored, BlockCoord, HookMap, HookSequences, hook_geometry, hooked_tract_map
from .numeric import NumericMap, segment_distance
from .vdomain import VMap, VProfile, map_v_to_halfplane, normalize_intervals, v_profile

__all__ = [
    "HalfplaneAutomorphism", "HalfstripMap", "halfplane_automorphism", "halfstrip_map",
    "Anchored", "BlockCoord", "HookMap", "HookSequences", "hook_geometry", "hooked_tract_map",
    "NumericMap", "segment_distance",
    "VMap", "VProfile", "map_v_to_halfplane", "normalize_intervals", "v_profile",
]
