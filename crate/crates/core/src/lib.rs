//! S-spectrum, S-resolvents and the S-functional calculus of quaternionic
//! matrices, computed through the complex adjoint on the slice `C_i` and
//! cross-checked against independent quaternionic routes.

pub mod error;
pub mod quaternion;
pub mod operator;
pub mod eigen;
pub mod spectrum;
pub mod slice;
pub mod catalog;
pub mod contour;
pub mod calculus;
pub mod theorems;

pub use calculus::{calculus_intrinsic, calculus_sided, op_exp, op_log, op_nth_root, CalculusMethod};
pub use error::{Error, ErrorClass, Result};
pub use operator::{CMatrix, ComplexAdjoint, OpExpr, QMatrix, RMatrix, RealRep};
pub use quaternion::{Quaternion, SliceComplex, Sphere};
pub use slice::{AxSymDomain, Kind, StemFunction};
pub use spectrum::{s_spectrum, SphereSet};
pub use theorems::{verify_theorems, Suite, TheoremReport};
