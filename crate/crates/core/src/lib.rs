//! Exact pre-operad calculus on endomorphism pre-operads of
//! finite-dimensional algebras, the associated cohomology, and a
//! certifier for its Gerstenhaber algebra structure.

pub mod cohomology;
pub mod endo;
pub mod error;
pub mod exactfield;
pub mod exactlinalg;
pub mod opcalc;
pub mod oracle;
pub mod report;
pub mod sign;
pub mod verify;

pub use cohomology::{
    build_delta_matrix, compute_cohomology, Cohomology, CohomologyClass, CohomologyReport, DeltaTower, GerstenhaberReport,
};
pub use endo::{load_algebra, AlgebraSpec, Cochain, EndoOperad, ModuleShape, DEFAULT_MEMORY_CAP};
pub use error::{Error, Result};
pub use exactfield::{Field, FieldError, Scalar};
pub use exactlinalg::{quotient_basis, ExactMatrix, Rref, Subspace};
pub use opcalc::{Calculus, Defect, PreOperad, Witness};
pub use sign::Sign;
pub use report::{CheckRecord, Mode, Outcome, Status};
pub use verify::{run_verify, Suite, VerifyConfig, VerifyReport};
