//! Noncommutative differential forms.
//!
//! [`NcForms`] is the literal `ΩR` of a graded algebra, with the DG
//! commutator filtration, the quotient by graded commutators and the
//! periodic cyclic tower. [`StarForms`] models `Ω_{NC_l}` of a localized
//! `T_{≤l}V` as a star algebra on `V ⊕ dV`.

mod literal;
mod periodic;
mod quotient;
mod star_model;

pub use literal::{
    dg_filtration, dg_truncate, form_window, karoubi_limit_ranks, truncation_complexes, truncation_projection,
    FormKey, NcForms, OmegaOne, Support,
};
pub use periodic::{cc_per_level, cc_per_tower, x_complex};
pub use quotient::{induced_ranks, quotient_complex, quotient_map, QuotientSpace};
pub use star_model::StarForms;
