//! Conversion of activity-on-node precedence graphs into activity-on-arc
//! (PERT) networks.
//!
//! ```
//! use aoaforge::{convert_text, ConvertOptions};
//!
//! let table = "code,duration,predecessors\na,1,-\nb,1,-\nc,1,a;b\nd,1,b\n";
//! let conversion = convert_text(table, &ConvertOptions::default()).unwrap();
//! assert_eq!(conversion.stats.dummy_arc_count, 1);
//! ```

pub mod aoa;
pub mod cpm;
pub mod document;
pub mod dot;
pub mod generate;
pub mod graph;
pub mod id;
pub mod line_graph;
pub mod samples;
pub mod schedule;

pub use aoa::{
    build_aoa, convert, convert_aon, convert_text, eliminate_z, line_graph_roundtrip_check, verify_equivalence, AoaArc,
    AoaDag, AoaEvent, ArcKind, Conversion, ConvertError, ConvertOptions, DummyRecord, Elimination, EquivalenceReport,
    EventOrigin, Grouping, NetworkStats,
};
pub use cpm::{aon_longest_path, schedule, CpmResult};
pub use document::AoaDocument;
pub use dot::{render_aoa_dot, render_aon_dot};
pub use generate::generate_random_table;
pub use graph::{AonDag, Direction, LevelAssignment, NodeKind, PrecedenceRelation, ValidationReport, Violation};
pub use id::ActivityId;
pub use line_graph::{
    find_delta_configurations, find_z_configurations, is_line_graph, line_graph, partition_bipartites, z_bars,
    BipartitePartition, CompleteBipartite, DeltaConfiguration, ZConfiguration,
};
pub use schedule::{build_aon, emit_table, parse_schedule_table, AugmentPolicy, ScheduleRow, ScheduleTable};
