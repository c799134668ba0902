from .snf_translation import (
    Mark,
    OccurrenceMap,
    Slot,
    UcMappingError,
    annotate_ltl_uc,
    map_uc_to_ltl,
    occurrence_sets,
    translate,
)

__all__ = [
    "annotate_ltl_uc",
    "map_uc_to_ltl",
    "Mark",
    "OccurrenceMap",
    "occurrence_sets",
    "Slot",
    "translate",
    "UcMappingError",
]
