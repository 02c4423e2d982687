//! Exact verification engine for left-invariant almost paracontact almost
//! paracomplex Riemannian structures on Lie groups: connection, curvature,
//! Einstein-like and Ricci-like soliton data, all in exact arithmetic.

pub mod classify;
pub mod curvature;
pub mod golden;
pub mod lie;
pub mod linalg;
pub mod manifest;
pub mod pipeline;
pub mod report;
pub mod sampling;
pub mod scalar;
pub mod soliton;
pub mod structure;
pub mod tensor;
pub mod verdict;
