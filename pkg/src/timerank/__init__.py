"""Rank-binned temporal maps with shape classification and a SAX baseline.

The pipeline: parse an item x time table, rank every time point
independently, bin ranks through uneven top-K boundaries, render the map
with one item highlighted against the gray context, and classify each
item's level trajectory against eight temporal shapes.  A symbolic
(SAX-style) encoding with a lower-bound distance is included for
comparison.
"""
from .binning import (
    BinnedMap,
    BinningScheme,
    NullMode,
    RankedColumn,
    bin_of_rank,
    build_binned_map,
    build_scheme,
    format_couples,
    parse_couples,
    parse_map_csv,
    rank_column,
    required_coverage,
)
from .errors import ParseError, SchemeCoverageError, TimerankError, UnknownItemError
from .generator import DEFAULT_BASELINE_COUPLES, GeneratorSpec, baseline_distribution, generate_random_table
from .profiles import (
    ClassifierParams,
    LevelProfile,
    NONE_LABEL,
    Plateau,
    PRIORITY_ORDER,
    ProfileLabels,
    ShapeLabel,
    classify,
    default_lambda_level,
    detect_plateaus,
    item_profile,
    primary_label,
    profile_histogram,
    write_histogram_csv,
)
from .render import RenderStyle, render_map_svg, render_profile_strip, render_unbinned_svg
from .sax import (
    Breakpoints,
    SaxWord,
    equal_frequency_breakpoints,
    equal_width_breakpoints,
    format_breakpoints,
    format_word,
    mindist,
    sax_encode,
    symbol_euclidean,
)
from .table import (
    MISSING_TOKEN,
    TimeTable,
    ValidationReport,
    parse_column_pairs,
    parse_wide_table,
    validate_table,
)

__version__ = "0.1.0"

__all__ = [
    "BinnedMap",
    "BinningScheme",
    "Breakpoints",
    "ClassifierParams",
    "DEFAULT_BASELINE_COUPLES",
    "GeneratorSpec",
    "LevelProfile",
    "MISSING_TOKEN",
    "NONE_LABEL",
    "NullMode",
    "PRIORITY_ORDER",
    "ParseError",
    "Plateau",
    "ProfileLabels",
    "RankedColumn",
    "RenderStyle",
    "SaxWord",
    "SchemeCoverageError",
    "ShapeLabel",
    "TimeTable",
    "TimerankError",
    "UnknownItemError",
    "ValidationReport",
    "baseline_distribution",
    "bin_of_rank",
    "build_binned_map",
    "build_scheme",
    "classify",
    "default_lambda_level",
    "detect_plateaus",
    "equal_frequency_breakpoints",
    "equal_width_breakpoints",
    "format_breakpoints",
    "format_couples",
    "format_word",
    "generate_random_table",
    "item_profile",
    "mindist",
    "parse_column_pairs",
    "parse_couples",
    "parse_map_csv",
    "parse_wide_table",
    "primary_label",
    "profile_histogram",
    "rank_column",
    "render_map_svg",
    "render_profile_strip",
    "render_unbinned_svg",
    "required_coverage",
    "sax_encode",
    "symbol_euclidean",
    "validate_table",
    "write_histogram_csv",
]
