//! Exact rational linear algebra and cohomology of finite complexes.

mod complex;
mod echelon;
mod elim;
mod scalar;
mod sparse;

pub use complex::{
    cohomology_dims, induced_rank, tower_pro_status, Cochains, ComplexError, ComplexSlice, PeriodicComplex,
    ProStatus, Spot, Tower,
};
pub use echelon::Echelon;
pub use elim::{kernel_basis, rank, rank_of_vectors};
pub use scalar::{ParseScalarError, Scalar};
pub use sparse::{axpy, collect_sparse, scale, SparseMatrix, SparseVec};
