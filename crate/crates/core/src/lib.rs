//! Power-law analysis of network topology degree data.
//!
//! The crate covers the full path from a raw undirected edge list to the two
//! classic degree power laws:
//!
//! * the rank law `d_v = C1 * r_v^R` (degree against decreasing-degree rank), and
//! * the frequency law `f_d = C2 * d^O` (node count against degree),
//!
//! together with the algebra that converts one law's parameters into the
//! other's, log-log least-squares fitting, and synthetic experiments that
//! measure how discretization and measurement noise bias the fitted exponents.

pub mod exponents;
pub mod fit;
pub mod ingest;
pub mod rankfreq;
pub mod synthetic;

pub use exponents::{
    density_law, freq_to_rank_constant, freq_to_rank_exponent, rank_integral,
    rank_to_freq_constant, rank_to_freq_exponent, relative_error, reproduce_tables, DensityLaw,
    ExponentError, ExponentTables, FrequencyLaw, PublishedDatasetRow, RankLaw, TableRow,
    PUBLISHED_DATASETS,
};
pub use fit::{
    apply_filter, fit_frequency_law, fit_loglog, fit_rank_law, frequency_points, rank_points, DegreeAxis, FitError, FitFilter,
    PowerLawFit,
};
pub use ingest::{
    degree_sequence, parse_edge_list, parse_edge_list_str, DegreeSequence, DropCounts, EdgeList,
    IngestError, ParsedEdgeList,
};
pub use rankfreq::{
    frequency_from_ranks, frequency_table, rank_table, ranks_from_frequency, FrequencyTable,
    RankTable, TableError,
};
pub use synthetic::{
    continuous_rank_points, error_propagation_experiment, figure1_continuous, figure1_experiment, figure2_experiment, generate_rank_degree,
    ErrorSimConfig, ErrorSimReport, Figure1, Figure2, Rounding, SynthConfig, SynthError,
};
