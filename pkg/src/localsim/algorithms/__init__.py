"""The distributed procedures, each runnable on the round engine."""

from .approximate import ApproximateOutput, ApproximateResult, approximate
from .color import ColorOutput, ColorResult, color_bounded_degree
from .common import (
    ClusterTooLarge,
    DominationViolation,
    PipelineParams,
    ProcedureError,
    WhpFailure,
    color_palette_size,
    degree_threshold,
    dominate_label_range,
)
from .dominate import DominateOutput, DominateResult, dominate
from .exact import exact_min_coloring
from .partition import PartitionOutput, PartitionResult, partition
from .pipeline import PipelineResult, merge_decompositions, merged_label_bound, pipeline, pipeline_rounds

__all__ = [
    "ApproximateOutput", "ApproximateResult", "approximate",
    "ColorOutput", "ColorResult", "color_bounded_degree",
    "ClusterTooLarge", "DominationViolation", "PipelineParams", "ProcedureError", "WhpFailure",
    "color_palette_size", "degree_threshold", "dominate_label_range",
    "DominateOutput", "DominateResult", "dominate",
    "exact_min_coloring",
    "PartitionOutput", "PartitionResult", "partition",
    "PipelineResult", "merge_decompositions", "merged_label_bound", "pipeline", "pipeline_rounds",
]
