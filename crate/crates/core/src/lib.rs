pub mod complex;
pub mod corpus;
pub mod error;
pub mod intersection;
pub mod reconstruct;
pub mod shells;

pub use complex::{
    canonical_code, euler_characteristic, is_isomorphic, validate_surface, vertex_star,
    CanonicalCode, Edge, Star, SurfaceReport, Triangle, Triangulation, TriangulationFile, VertexId,
};
pub use error::{Error, Result};
pub use intersection::{
    find_intersection_preserving_maps, intersection_matrix, is_induced, same_intersection_matrix,
    IntersectionMatrix, TriangleBijection,
};
pub use reconstruct::{
    extend_map, reconstruct_from_matrix, verify_theorem2, ExceptionalKind, ExtendReport,
    ExtendResult, ReconstructOptions, Reconstruction, Theorem2Report, Witness,
};
pub use shells::{
    classify_shell, is_shell, realize_shell_class, repetition_pattern, shell_around_vertex,
    structural_vertex_list, Shell, ShellClass, StructuralVertexList,
};
