//! Bounded-degree replacement of triangulated surfaces.

pub mod candidates;
pub mod disk;
pub mod lb;
pub mod pipeline;

pub use candidates::{th_center_candidates, CenterCandidates};
pub use disk::{build_td, build_th, th_report, DiskKind, ThReport, TriangulatedDisk};
pub use lb::{check_tri_lb, separation_check, Coarsening, LbCertificate, SeparationReport};
pub use pipeline::{
    bounded_degree_map, invert, pipeline_report, BoundedDegree, PipelineProvenance, PipelineReport, MU_BOUND, SIGMA_BOUND,
};
