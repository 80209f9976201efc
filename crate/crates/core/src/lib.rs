//! Exact homological invariants of quiver representations, the degeneration
//! order on nilpotent representations of cyclic quivers, and the
//! classification of codimension-two degenerations into `Reg` and `A_r`.
//!
//! ```
//! use quiverdeg::{classify, SingularityType, WindowMultiset};
//!
//! let m = WindowMultiset::from_pairs(2, &[(1, 1), (2, 8)]).unwrap();
//! let nn = WindowMultiset::from_pairs(2, &[(1, 3), (2, 6)]).unwrap();
//! let (kind, _trace) = classify(&m, &nn).unwrap();
//! assert_eq!(kind, SingularityType::A(1));
//! ```

pub mod cyclic;
pub mod degeneration;
pub mod error;
pub mod format;
pub mod hasse;
pub mod linalg;
pub mod quiver;
pub mod scan;
pub mod singularity;

pub use cyclic::{
    canonicalize, decompose_nilpotent, is_nilpotent, multiset_hom_dim, quotient_by_socle, quotient_to_radical, realize,
    reconstruct_from_socle_quotient, residue, socle, to_standard_orientation, top, window_hom_dim, SimpleMultiset,
    Window, WindowMultiset, WindowsFile,
};
pub use degeneration::{
    codim, degenerates, degenerates_with, dim_vectors, enumerate_nilpotent, extension_witness, hom_profile,
    right_hom_profile, HomProfile, TestSet,
};
pub use error::{Error, Result};
pub use format::{read_quiver, read_representation, write_representation, RepFile};
pub use hasse::{hasse, HasseDiagram, HasseEdge};
pub use linalg::{inverse, kernel_basis, quotient_matrices, rank, RatMatrix, Rational};
pub use quiver::{
    cokernel_rep, direct_sum, dual, euler_form, ext1_dim, generic_quotient, hom_basis, hom_dim, orbit_dim, Arrow,
    DimVector, HomElement, Quiver, Representation,
};
pub use scan::{scan, scan_seeded, ScanReport, ScanRow, StuckPair};
pub use singularity::{
    cancel_common, classify, classify_seeded, model_variety_membership, regular_sequence, socle_reduce,
    terminal_classify, top_reduce, ModelVariety, ReductionTrace, SingularityType, Step, TraceStep,
};
