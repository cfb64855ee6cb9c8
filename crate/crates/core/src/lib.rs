//! Dilatations of pseudo-Anosov pure surface braids.
//!
//! * [`pf`]: Gram matrices, certified Perron–Frobenius brackets and the
//!   closed-form spectral radius of Thurston's representation.
//! * [`curves`]: filling multicurve configurations as labeled bipartite
//!   intersection graphs.
//! * [`bounds`]: closed-form entropy bounds and their validity domains.
//! * [`appendix`]: hyperbolic trigonometry and the embedded-graph diameter
//!   bound.
//! * [`harness`]: parameter sweeps, consistency certification and report
//!   rendering.

#![forbid(unsafe_code)]

pub mod appendix;
pub mod bounds;
pub mod curves;
pub mod harness;
pub mod pf;
