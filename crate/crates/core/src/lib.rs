//! Exact computations for nilcommutative and nil-Poisson algebras.
//!
//! Everything is graded by a multidegree and computed one finite slice at a
//! time over the rationals.

pub mod exact_linalg;
pub mod free_assoc;
pub mod graded;
pub mod par;
pub mod lie_poisson;
pub mod pbw_star;
pub mod nc_forms;
pub mod poisson_dr;
pub mod infinitesimal;
