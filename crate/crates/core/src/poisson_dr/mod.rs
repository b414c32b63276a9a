//! Commutative and Poisson differential forms.
//!
//! Kähler forms of (Laurent) free Poisson algebras with `d` and Brylinski's
//! `δ`, the `𝔑` complex, `τ` truncations, the `𝔜` tower and the pieces
//! `P_m(Ω_comm A)`.

mod complexes;
mod forms;

pub use complexes::{
    free_dg_poisson_pieces, n_complex, poisson_forms, tau_truncation, y_complex, y_complex_tower, DgPoissonForms,
    DrError,
};
pub use forms::{CommForm, CommForms, FormMono};
