//! Exact noncommutative normal-ordering engine for the Askey-Wilson algebra.
//!
//! Everything here is exact: coefficients are rationals times integer powers
//! of `v = q^{1/2}` and commuting symbols A1, A2, A3, so confluence,
//! centrality and the isomorphism checks are verified as identities with no
//! tolerance involved.

mod coeff;
mod iso;
mod poly;
mod rewrite;

pub use coeff::{Coeff, CoeffKey};
pub use iso::{apply_iso, Iso};
pub use poly::{NcPoly, Word};
pub use rewrite::{
    casimir, centrality_check, centrality_check_of, defining_relations, RewriteSystem,
};
